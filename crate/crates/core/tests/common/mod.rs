//! Shared test oracles and random generators.
//!
//! Everything here is deliberately independent of the library's own
//! construction paths: the grid enumerator is a plain cell-by-cell odometer
//! with filters, and the single-variable coefficients come from explicit
//! set-partition enumeration.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rigidity_core::curves::PolynomialCurve;
use rigidity_core::exactpoly::{MVPoly, Rational, UniPoly};
use rigidity_core::multiindex::{BetaIndex, MultiIndex, SigmaContext};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_rational(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    let num = rng.gen_range(-max_num..=max_num);
    let den = rng.gen_range(1..=max_den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random rational in [-1, 1].
pub fn rand_t0(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1i64..=12);
    let num = rng.gen_range(-den..=den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Random multivariate polynomial with total degree <= max_deg and at least
/// one term.
pub fn rand_mvpoly(rng: &mut ChaCha8Rng, n: usize, max_deg: usize, terms: usize) -> MVPoly {
    loop {
        let mut list = Vec::new();
        for _ in 0..terms.max(1) {
            let mut exps = vec![0usize; n];
            let mut budget = max_deg;
            for e in exps.iter_mut() {
                *e = rng.gen_range(0..=budget);
                budget -= *e;
            }
            list.push((MultiIndex::new(exps), rand_rational(rng, 6, 4)));
        }
        let f = MVPoly::from_terms(n, list).unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random polynomial curve with coordinate degrees <= s.
pub fn rand_curve(rng: &mut ChaCha8Rng, n: usize, s: usize) -> PolynomialCurve {
    let coords = (0..n)
        .map(|_| {
            let coeffs = (0..=s).map(|_| rand_rational(rng, 4, 4)).collect();
            UniPoly::from_coeffs(coeffs)
        })
        .collect();
    PolynomialCurve::new(coords).unwrap()
}

/// Random curve certified inside the closed unit ball, with degree >= 1.
///
/// Scaling by the sum of all coefficient magnitudes bounds every coordinate
/// by 1 on [-1, 1] (triangle inequality), and the sum over coordinates
/// dominates the Euclidean norm.
pub fn rand_curve_in_ball(rng: &mut ChaCha8Rng, n: usize, s: usize) -> PolynomialCurve {
    loop {
        let raw = rand_curve(rng, n, s);
        if raw.degree() == 0 {
            continue;
        }
        let mut scale = Rational::new(BigInt::from(0), BigInt::from(1));
        for w in raw.coordinates() {
            for c in w.coeffs() {
                let abs = if c < &Rational::new(BigInt::from(0), BigInt::from(1)) {
                    -c.clone()
                } else {
                    c.clone()
                };
                scale += abs;
            }
        }
        if scale == Rational::new(BigInt::from(0), BigInt::from(1)) {
            continue;
        }
        // shrink slightly below the bound to stay strictly inside
        let factor = Rational::new(BigInt::from(9), BigInt::from(10)) / scale;
        let coords = raw
            .coordinates()
            .iter()
            .map(|w| w.scale(&factor))
            .collect();
        let curve = PolynomialCurve::new(coords).unwrap();
        if curve.degree() >= 1 {
            return curve;
        }
    }
}

/// Brute-force enumeration of `Sigma_alpha`: walk every grid cell value
/// from 0 to d+1 (a plain odometer over the flattened grid) and keep the
/// grids passing the three compatibility conditions. Partial row-sum and
/// weight cutoffs only discard branches that no completion could save.
pub fn brute_force_sigma(ctx: &SigmaContext) -> Vec<BetaIndex> {
    let n = ctx.n();
    let n_alpha = ctx.n_alpha();
    let d = ctx.d();
    let mut rows = vec![vec![0usize; n_alpha]; n];
    let mut out = Vec::new();
    odometer(ctx, 0, 0, &mut rows, d + 1, &mut out);
    out.sort();
    out
}

fn odometer(
    ctx: &SigmaContext,
    cell: usize,
    weight: usize,
    rows: &mut Vec<Vec<usize>>,
    max_weight: usize,
    out: &mut Vec<BetaIndex>,
) {
    let n = ctx.n();
    let n_alpha = ctx.n_alpha();
    if cell == n * n_alpha {
        if let Ok(beta) = BetaIndex::new(rows.clone(), ctx) {
            out.push(beta);
        }
        return;
    }
    let (i, j) = (cell / n_alpha, cell % n_alpha);
    let order = j + 1;
    for v in 0..=(ctx.d() + 1) {
        let new_weight = weight + v * order;
        if new_weight > max_weight {
            break;
        }
        let row_sum: usize = rows[i][..j].iter().sum::<usize>() + v;
        if row_sum > ctx.alpha().get(i) {
            break;
        }
        rows[i][j] = v;
        odometer(ctx, cell + 1, new_weight, rows, max_weight, out);
        rows[i][j] = 0;
    }
}

/// Number of partitions of `n` into exactly `k` parts.
pub fn partition_count_exact(n: usize, k: usize) -> usize {
    if k == 0 {
        return usize::from(n == 0);
    }
    if n < k {
        return 0;
    }
    // p(n, k) = p(n-1, k-1) + p(n-k, k)
    let mut table = vec![vec![0usize; k + 1]; n + 1];
    table[0][0] = 1;
    for nn in 1..=n {
        for kk in 1..=k.min(nn) {
            table[nn][kk] = table[nn - 1][kk - 1] + table[nn - kk][kk];
        }
    }
    table[n][k]
}

/// Classical single-variable coefficients of the order-`m` derivative of a
/// composition, from explicit set-partition enumeration: the coefficient of
/// `f^(k) prod_j (w^(j))^(c_j)` is the number of partitions of an `m`-set
/// into `k` blocks whose size multiset matches `{j repeated c_j}`.
///
/// Returned as a map from the exponent row `(c_1, ..., c_m)` to the count.
pub fn set_partition_coefficients(m: usize) -> BTreeMap<Vec<usize>, BigInt> {
    let mut out: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
    let mut blocks: Vec<usize> = Vec::new(); // block index per element (restricted growth)
    enumerate_partitions(m, 0, 0, &mut blocks, &mut out);
    out
}

fn enumerate_partitions(
    m: usize,
    element: usize,
    used_blocks: usize,
    assignment: &mut Vec<usize>,
    out: &mut BTreeMap<Vec<usize>, BigInt>,
) {
    if element == m {
        let mut sizes = vec![0usize; used_blocks];
        for &b in assignment.iter() {
            sizes[b] += 1;
        }
        let mut row = vec![0usize; m];
        for &size in &sizes {
            row[size - 1] += 1;
        }
        *out.entry(row).or_insert_with(|| BigInt::from(0)) += 1;
        return;
    }
    for b in 0..=used_blocks {
        assignment.push(b);
        enumerate_partitions(
            m,
            element + 1,
            used_blocks.max(b + 1),
            assignment,
            out,
        );
        assignment.pop();
    }
}

//! Parametric polynomial curves `omega: [-1,1] -> R^n`.
//!
//! Construction, exact derivative tables, interpolation through point sets,
//! the rough Markov-style derivative bound `s^(2l)`, a sound containment
//! certificate for the unit ball, and the deviation of a sampled curve from
//! a polynomial one.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactpoly::{Rational, UniPoly};
use crate::sturm::{self, RootLoc, SturmChain};
use crate::{Error, Result};

/// Which norm to put on points and derivative vectors. The Euclidean norm
/// is the default; all Euclidean comparisons are made on exact squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VectorNorm {
    #[default]
    Euclidean,
    Max,
}

/// A curve with polynomial coordinates; its degree `s` is the maximum of
/// the coordinate degrees (0 for a constant curve).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialCurve {
    coords: Vec<UniPoly>,
}

impl PolynomialCurve {
    pub fn new(coords: Vec<UniPoly>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyInput("curve must have at least one coordinate"));
        }
        Ok(PolynomialCurve { coords })
    }

    pub fn dimension(&self) -> usize {
        self.coords.len()
    }

    /// Declared degree `s`: the maximal coordinate degree.
    pub fn degree(&self) -> usize {
        self.coords
            .iter()
            .filter_map(UniPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn coordinates(&self) -> &[UniPoly] {
        &self.coords
    }

    pub fn point_at(&self, t: &Rational) -> Vec<Rational> {
        self.coords.iter().map(|w| w.eval(t)).collect()
    }

    /// Exact per-coordinate derivative values `omega_i^(j)(t0)` for
    /// `1 <= j <= up_to`; entry `[i][j-1]` is the order-`j` value. Orders
    /// beyond the degree are exactly zero.
    pub fn derivatives_at(&self, t0: &Rational, up_to: usize) -> Vec<Vec<Rational>> {
        self.coords
            .iter()
            .map(|w| {
                let mut values = Vec::with_capacity(up_to);
                let mut p = w.clone();
                for _ in 0..up_to {
                    p = p.derivative();
                    values.push(p.eval(t0));
                }
                values
            })
            .collect()
    }

    /// Squared Euclidean norm `|omega(t)|^2` as a polynomial in `t`.
    pub fn norm_sq_poly(&self) -> UniPoly {
        let mut acc = UniPoly::zero();
        for w in &self.coords {
            acc = &acc + &(w * w);
        }
        acc
    }
}

/// Exact per-coordinate derivative values of `omega` at `t0`.
pub fn curve_derivatives_at(
    omega: &PolynomialCurve,
    t0: &Rational,
    up_to: usize,
) -> Vec<Vec<Rational>> {
    omega.derivatives_at(t0, up_to)
}

/// Interpolation parameters that approximate the Chebyshev points of the
/// second kind on [-1, 1], rounded to denominator 2^32 so they stay exact
/// rationals. For `k = 1` the single node is 0.
pub fn chebyshev_like_params(k: usize) -> Vec<Rational> {
    assert!(k >= 1);
    if k == 1 {
        return vec![Rational::zero()];
    }
    let denom = BigInt::from(1u64 << 32);
    (0..k)
        .map(|j| {
            let angle = std::f64::consts::PI * (k - 1 - j) as f64 / (k - 1) as f64;
            let scaled = (angle.cos() * (1u64 << 32) as f64).round() as i64;
            Rational::new(BigInt::from(scaled), denom.clone())
        })
        .collect()
}

/// Per-coordinate Lagrange interpolation: the unique curve of degree
/// `<= k-1` through `k` points at the given parameter values (defaults to
/// near-Chebyshev nodes when omitted).
pub fn curve_through_points(
    points: &[Vec<Rational>],
    params: Option<&[Rational]>,
) -> Result<PolynomialCurve> {
    if points.is_empty() {
        return Err(Error::EmptyInput("no interpolation points"));
    }
    let n = points[0].len();
    if n == 0 {
        return Err(Error::EmptyInput("points must have at least one coordinate"));
    }
    for p in points {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: p.len(),
            });
        }
    }
    let k = points.len();
    let default_params;
    let params = match params {
        Some(p) => {
            if p.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: p.len(),
                });
            }
            p
        }
        None => {
            default_params = chebyshev_like_params(k);
            &default_params
        }
    };
    for (i, a) in params.iter().enumerate() {
        for b in &params[i + 1..] {
            if a == b {
                return Err(Error::DuplicateNode(a.to_string()));
            }
        }
    }

    // Lagrange basis polynomials, shared across coordinates
    let mut basis = Vec::with_capacity(k);
    for j in 0..k {
        let mut num = UniPoly::one();
        let mut den = Rational::one();
        for (l, tl) in params.iter().enumerate() {
            if l == j {
                continue;
            }
            num = &num * &UniPoly::from_coeffs(vec![-tl.clone(), Rational::one()]);
            den *= &params[j] - tl;
        }
        basis.push(num.scale(&den.recip()));
    }

    let coords = (0..n)
        .map(|i| {
            let mut acc = UniPoly::zero();
            for (j, b) in basis.iter().enumerate() {
                acc = &acc + &b.scale(&points[j][i]);
            }
            acc
        })
        .collect();
    PolynomialCurve::new(coords)
}

/// The rough Markov-style bound `s^(2l)` on the order-`l` derivative of a
/// degree-`s` coordinate bounded by 1 in absolute value on [-1, 1].
pub fn markov_derivative_bound(s: usize, l: usize) -> BigInt {
    assert!(s >= 1, "curve degree must be at least 1");
    num_traits::pow(BigInt::from(s), 2 * l)
}

/// Result of the unit-ball containment check.
#[derive(Debug, Clone)]
pub struct BallCheck {
    /// Sound verdict: true iff `max_t |omega(t)| <= 1` over all of [-1, 1].
    pub inside: bool,
    /// The rational sample with the largest observed `|omega(t)|^2`.
    pub worst_t: Rational,
    pub worst_norm_sq: Rational,
}

/// Decide exactly whether `omega([-1,1])` is contained in the closed unit
/// ball.
///
/// Samples a uniform parameter grid for a cheap refutation and a worst-point
/// report, then isolates every interior critical point of `|omega(t)|^2`
/// and determines the sign of `1 - |omega|^2` there exactly, so the verdict
/// is sound rather than sampled. The reported worst point is the best
/// rational sample seen (the true maximizer may be irrational).
pub fn in_unit_ball(omega: &PolynomialCurve, grid_size: usize) -> BallCheck {
    assert!(grid_size >= 2, "grid must contain at least the endpoints");
    let q = omega.norm_sq_poly();
    let one = Rational::one();
    let two = Rational::from_integer(2.into());

    let mut worst_t = rat_int(-1);
    let mut worst_sq = q.eval(&worst_t);
    let consider = |t: &Rational, v: &Rational, worst_t: &mut Rational, worst_sq: &mut Rational| {
        // >= so that among ties the latest sample wins (the right endpoint
        // rather than the left for symmetric curves)
        if v >= worst_sq {
            *worst_t = t.clone();
            *worst_sq = v.clone();
        }
    };

    // uniform grid including both endpoints
    for g in 0..grid_size {
        let t = rat_int(-1) + &two * Rational::new(BigInt::from(g), BigInt::from(grid_size - 1));
        let v = q.eval(&t);
        consider(&t, &v, &mut worst_t, &mut worst_sq);
    }
    if worst_sq > one {
        return BallCheck {
            inside: false,
            worst_t,
            worst_norm_sq: worst_sq,
        };
    }

    // interior critical points of q
    let dq = q.derivative();
    if dq.is_zero() {
        // constant norm; endpoints already checked
        return BallCheck {
            inside: true,
            worst_t,
            worst_norm_sq: worst_sq,
        };
    }
    let h = &UniPoly::one() - &q; // containment means h >= 0 on [-1, 1]
    for loc in sturm::isolate_roots(&dq, &rat_int(-1), &rat_int(1)) {
        match loc {
            RootLoc::Exact(r) => {
                let v = q.eval(&r);
                consider(&r, &v, &mut worst_t, &mut worst_sq);
                if v > one {
                    return BallCheck {
                        inside: false,
                        worst_t: r,
                        worst_norm_sq: v,
                    };
                }
            }
            RootLoc::Interval(a, b) => {
                match sign_at_isolated_root(&h, &dq, &a, &b) {
                    RootSign::Zero | RootSign::Positive => {
                        // |omega| <= 1 at this critical point; keep a sample
                        let mid = (&a + &b) / &two;
                        let v = q.eval(&mid);
                        consider(&mid, &v, &mut worst_t, &mut worst_sq);
                    }
                    RootSign::Negative(witness) => {
                        let v = q.eval(&witness);
                        return BallCheck {
                            inside: false,
                            worst_t: witness,
                            worst_norm_sq: v,
                        };
                    }
                }
            }
        }
    }

    BallCheck {
        inside: true,
        worst_t,
        worst_norm_sq: worst_sq,
    }
}

fn rat_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

enum RootSign {
    /// `h` vanishes at the isolated root.
    Zero,
    Positive,
    /// `h` is negative there; carries a rational point of the isolating
    /// interval where `h < 0`.
    Negative(Rational),
}

/// Exact sign of `h` at the single root `r` of `g` isolated by the open
/// interval `(a, b)` (endpoints not roots of `g`).
///
/// `h(r) = 0` iff `r` is a root of `gcd(h, g)`, which divides `g` and hence
/// has no root other than `r` inside the interval. Otherwise the interval is
/// shrunk around `r` until it is free of roots of `h`, where the sign of `h`
/// is constant and can be read off at the midpoint.
fn sign_at_isolated_root(h: &UniPoly, g: &UniPoly, a: &Rational, b: &Rational) -> RootSign {
    let shared = sturm::poly_gcd(h, g);
    if shared.degree().is_some_and(|d| d >= 1)
        && sturm::count_distinct_roots_closed(&shared, a, b) > 0
    {
        return RootSign::Zero;
    }

    let g_sf = sturm::square_free_part(g);
    let g_chain = SturmChain::new(&g_sf);
    let h_sf = sturm::square_free_part(h);
    let h_chain = SturmChain::new(&h_sf);
    let two = Rational::from_integer(2.into());
    let (mut a, mut b) = (a.clone(), b.clone());
    // h(r) != 0, so shrinking [a, b] around r eventually excludes all roots
    // of h; the loop is bounded in exact arithmetic
    loop {
        let a_clear = !h_sf.eval(&a).is_zero();
        let b_clear = !h_sf.eval(&b).is_zero();
        if a_clear && b_clear && h_chain.count_roots_half_open(&a, &b) == 0 {
            let mid = (&a + &b) / &two;
            let v = h.eval(&mid);
            debug_assert!(!v.is_zero());
            return if v > Rational::zero() {
                RootSign::Positive
            } else {
                RootSign::Negative(mid)
            };
        }
        let mid = (&a + &b) / &two;
        if g_sf.eval(&mid).is_zero() {
            // the root itself is rational after all
            let v = h.eval(&mid);
            return if v.is_zero() {
                RootSign::Zero
            } else if v > Rational::zero() {
                RootSign::Positive
            } else {
                RootSign::Negative(mid)
            };
        }
        if g_chain.count_roots_half_open(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
}

/// A curve known only through exact derivative samples at finitely many
/// parameter nodes: entry `[node][coord][k]` is the order-`k` derivative
/// value (order 0 is the position).
#[derive(Debug, Clone)]
pub struct SampledCurve {
    nodes: Vec<Rational>,
    samples: Vec<Vec<Vec<Rational>>>,
    order: usize,
}

impl SampledCurve {
    pub fn new(nodes: Vec<Rational>, samples: Vec<Vec<Vec<Rational>>>, order: usize) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyInput("sampled curve needs at least one node"));
        }
        for pair in nodes.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::DuplicateNode(pair[1].to_string()));
            }
        }
        if samples.len() != nodes.len() {
            return Err(Error::IncompleteSamples(format!(
                "{} nodes but {} sample rows",
                nodes.len(),
                samples.len()
            )));
        }
        let n = samples
            .first()
            .and_then(|s| (!s.is_empty()).then_some(s.len()))
            .ok_or(Error::EmptyInput("sampled curve needs at least one coordinate"))?;
        for row in &samples {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for coord in row {
                if coord.len() != order + 1 {
                    return Err(Error::IncompleteSamples(format!(
                        "expected derivative orders 0..={order}, got {} values",
                        coord.len()
                    )));
                }
            }
        }
        Ok(SampledCurve {
            nodes,
            samples,
            order,
        })
    }

    /// Sample a polynomial curve exactly at the given nodes.
    pub fn from_curve(omega: &PolynomialCurve, nodes: &[Rational], order: usize) -> Result<Self> {
        let samples = nodes
            .iter()
            .map(|t| {
                omega
                    .coordinates()
                    .iter()
                    .map(|w| {
                        let mut values = Vec::with_capacity(order + 1);
                        let mut p = w.clone();
                        values.push(p.eval(t));
                        for _ in 0..order {
                            p = p.derivative();
                            values.push(p.eval(t));
                        }
                        values
                    })
                    .collect()
            })
            .collect();
        SampledCurve::new(nodes.to_vec(), samples, order)
    }

    pub fn dimension(&self) -> usize {
        self.samples[0].len()
    }

    pub fn nodes(&self) -> &[Rational] {
        &self.nodes
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// Maximal deviation of a sampled curve from a polynomial curve over the
/// sample nodes and derivative orders `k <= d`.
#[derive(Debug, Clone)]
pub struct Deviation {
    pub norm: VectorNorm,
    /// Exact square of the deviation (comparisons on squares keep the
    /// Euclidean case exact).
    pub gamma_sq: Rational,
    /// Node index and derivative order attaining the maximum.
    pub worst_node: usize,
    pub worst_order: usize,
}

impl Deviation {
    /// Approximate deviation value for human-readable reports.
    pub fn gamma_approx(&self) -> f64 {
        self.gamma_sq.to_f64().map_or(f64::INFINITY, f64::sqrt)
    }
}

/// Measure the deviation (at the sample nodes, orders `k <= d`) between a
/// sampled curve and a polynomial curve. This is a lower estimate of the
/// true supremum over [-1, 1]: the deviation is only observed where samples
/// exist.
#[allow(clippy::needless_range_loop)] // parallel indexing of two tables
pub fn near_polynomial_deviation(
    sampled: &SampledCurve,
    omega: &PolynomialCurve,
    d: usize,
    norm: VectorNorm,
) -> Result<Deviation> {
    if sampled.dimension() != omega.dimension() {
        return Err(Error::DimensionMismatch {
            expected: omega.dimension(),
            got: sampled.dimension(),
        });
    }
    if sampled.order() < d {
        return Err(Error::IncompleteSamples(format!(
            "sampled orders reach {}, need {d}",
            sampled.order()
        )));
    }
    let n = omega.dimension();
    let mut gamma_sq = Rational::zero();
    let mut worst_node = 0;
    let mut worst_order = 0;
    for (node_idx, t) in sampled.nodes.iter().enumerate() {
        // polynomial-side table: order 0..=d
        let mut poly_vals: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for w in omega.coordinates() {
            let mut values = Vec::with_capacity(d + 1);
            let mut p = w.clone();
            values.push(p.eval(t));
            for _ in 0..d {
                p = p.derivative();
                values.push(p.eval(t));
            }
            poly_vals.push(values);
        }
        for k in 0..=d {
            let sq = match norm {
                VectorNorm::Euclidean => {
                    let mut acc = Rational::zero();
                    for i in 0..n {
                        let diff = &sampled.samples[node_idx][i][k] - &poly_vals[i][k];
                        acc += &diff * &diff;
                    }
                    acc
                }
                VectorNorm::Max => {
                    let mut best = Rational::zero();
                    for i in 0..n {
                        let diff = &sampled.samples[node_idx][i][k] - &poly_vals[i][k];
                        let sq = &diff * &diff;
                        if sq > best {
                            best = sq;
                        }
                    }
                    best
                }
            };
            if sq > gamma_sq {
                gamma_sq = sq;
                worst_node = node_idx;
                worst_order = k;
            }
        }
    }
    Ok(Deviation {
        norm,
        gamma_sq,
        worst_node,
        worst_order,
    })
}

//! Multi-index machinery for the high-order chain rule.
//!
//! A derivative of `g(t) = f(omega(t))` of order `d+1` is a sum over
//! multi-indices `alpha` (the mixed order of a partial of `f`) of monomials
//! in the derivatives of the curve coordinates. The exponents of such a
//! monomial form an `n x N_alpha` grid `beta` with `N_alpha = d+2-|alpha|`,
//! constrained by three compatibility conditions:
//!
//! 1. `alpha_i = 0` forces row `i` of the grid to vanish;
//! 2. row `i` sums to `alpha_i` (hence `|beta| = |alpha|`);
//! 3. the order-weighted total `sigma(beta) = sum_{i,j} j * beta_i^j`
//!    equals `d+1`.
//!
//! This module enumerates the set `Sigma_alpha` of all compatible grids and
//! provides the two order thresholds `kappa` (minimal curve-derivative order
//! forced into every monomial) and `eta` (lowest `|alpha|` surviving
//! composition with a curve of degree `s`).

use std::fmt;

use crate::{Error, Result};

/// A derivative multi-order over `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }

    /// The zero multi-index over `n` variables.
    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit multi-index `e_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        assert!(i < n, "variable index {i} out of range for n = {n}");
        let mut entries = vec![0; n];
        entries[i] = 1;
        MultiIndex(entries)
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total order `|alpha|`.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    /// The multi-index with entry `i` incremented by one.
    pub fn bumped(&self, i: usize) -> MultiIndex {
        let mut entries = self.0.clone();
        entries[i] += 1;
        MultiIndex(entries)
    }

    /// Component-wise sum; both operands must have the same length.
    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices over `n` variables with total order exactly `k`,
/// in descending lexicographic order.
pub fn multi_indices_of_order(n: usize, k: usize) -> Vec<MultiIndex> {
    assert!(n >= 1, "dimension must be at least 1");
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    fill(&mut out, &mut current, 0, k);
    out
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut Vec<usize>, i: usize, remaining: usize) {
    if i + 1 == current.len() {
        current[i] = remaining;
        out.push(MultiIndex::new(current.clone()));
        return;
    }
    for v in (0..=remaining).rev() {
        current[i] = v;
        fill(out, current, i + 1, remaining - v);
    }
}

/// Minimal curve-derivative order forced into every monomial paired with a
/// partial of total order `alpha_norm`: the ceiling of `(d+1)/alpha_norm`.
pub fn kappa(alpha_norm: usize, d: usize) -> Result<usize> {
    if alpha_norm == 0 || alpha_norm > d + 1 {
        return Err(Error::OrderOutOfRange {
            order: alpha_norm,
            max: d + 1,
        });
    }
    Ok((d + 1).div_ceil(alpha_norm))
}

/// Lowest partial order surviving composition with a degree-`s` curve:
/// `floor((d+1)/(s+1)) + 1`.
pub fn eta(d: usize, s: usize) -> Result<usize> {
    if s == 0 {
        return Err(Error::DegenerateCurveDegree);
    }
    Ok((d + 1) / (s + 1) + 1)
}

/// Ambient data for enumerating the exponent grids compatible with a given
/// `alpha`: the dimension `n`, the order parameter `d` (the derivative taken
/// is of order `d+1`), and the grid width `N_alpha = d+2-|alpha|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaContext {
    n: usize,
    d: usize,
    alpha: MultiIndex,
}

impl SigmaContext {
    pub fn new(n: usize, d: usize, alpha: MultiIndex) -> Result<Self> {
        if alpha.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: alpha.len(),
            });
        }
        let order = alpha.order();
        if order == 0 || order > d + 1 {
            return Err(Error::OrderOutOfRange {
                order,
                max: d + 1,
            });
        }
        Ok(SigmaContext { n, d, alpha })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha(&self) -> &MultiIndex {
        &self.alpha
    }

    /// Grid width: the maximal curve-derivative order that can appear.
    pub fn n_alpha(&self) -> usize {
        self.d + 2 - self.alpha.order()
    }
}

/// An `n x N_alpha` grid of exponents of curve derivatives: entry `(i, j)`
/// is the power of the `j`-th derivative of coordinate `i` (`j` is 1-based).
///
/// Construction checks the three compatibility conditions against the
/// supplied context; a value of this type is therefore always a member of
/// `Sigma_alpha`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BetaIndex {
    rows: Vec<Vec<usize>>,
}

impl BetaIndex {
    pub fn new(rows: Vec<Vec<usize>>, ctx: &SigmaContext) -> Result<Self> {
        let n_alpha = ctx.n_alpha();
        if rows.len() != ctx.n() {
            return Err(Error::DimensionMismatch {
                expected: ctx.n(),
                got: rows.len(),
            });
        }
        for row in &rows {
            if row.len() != n_alpha {
                return Err(Error::DimensionMismatch {
                    expected: n_alpha,
                    got: row.len(),
                });
            }
        }
        let beta = BetaIndex { rows };
        beta.check_compatibility(ctx)?;
        Ok(beta)
    }

    fn check_compatibility(&self, ctx: &SigmaContext) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            let ai = ctx.alpha().get(i);
            // condition 1
            if ai == 0 && row.iter().any(|&b| b > 0) {
                return Err(Error::Parse(format!(
                    "beta row {i} nonzero although alpha_{i} = 0"
                )));
            }
            // condition 2
            let row_sum: usize = row.iter().sum();
            if row_sum != ai {
                return Err(Error::Parse(format!(
                    "beta row {i} sums to {row_sum}, expected alpha_{i} = {ai}"
                )));
            }
        }
        // condition 3
        let want = ctx.d() + 1;
        let got = self.order_weight();
        if got != want {
            return Err(Error::Parse(format!(
                "beta has order weight {got}, expected d+1 = {want}"
            )));
        }
        Ok(())
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Exponent of the `order`-th derivative of coordinate `i` (1-based order).
    pub fn get(&self, i: usize, order: usize) -> usize {
        self.rows[i][order - 1]
    }

    /// `|beta|`: the sum of all exponents.
    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| r.iter().sum::<usize>()).sum()
    }

    /// `sigma(beta) = sum_{i,j} j * beta_i^j`.
    pub fn order_weight(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(j, &b)| (j + 1) * b).sum::<usize>())
            .sum()
    }

    /// Largest derivative order with a nonzero exponent (0 for an all-zero
    /// grid, which cannot occur for a valid member of `Sigma_alpha`).
    pub fn max_order_used(&self) -> usize {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .rev()
                    .find(|(_, &b)| b > 0)
                    .map_or(0, |(j, _)| j + 1)
            })
            .max()
            .unwrap_or(0)
    }

    /// Smallest derivative order with a nonzero exponent.
    pub fn min_order_used(&self) -> usize {
        self.rows
            .iter()
            .filter_map(|r| r.iter().position(|&b| b > 0).map(|j| j + 1))
            .min()
            .unwrap_or(0)
    }
}

impl fmt::Display for BetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, b) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{b}")?;
            }
        }
        write!(f, "]")
    }
}

/// Enumerate `Sigma_alpha`: all grids satisfying the compatibility
/// conditions, in ascending lexicographic order of the flattened grid.
///
/// Conditions 1 and 2 factor per variable, so the enumeration walks the
/// compositions of each `alpha_i` into `N_alpha` ordered parts and prunes on
/// the running order weight; only condition 3 couples the variables.
pub fn generate_sigma(ctx: &SigmaContext) -> Vec<BetaIndex> {
    let n_alpha = ctx.n_alpha();
    let target = ctx.d() + 1;
    let alpha = ctx.alpha();

    // Residual weight bounds for the variables after index i: each variable
    // contributes at least alpha_i (all mass on order 1) and at most
    // alpha_i * N_alpha (all mass on the top order).
    let suffix_min: Vec<usize> = suffix_sums(alpha, 1);
    let suffix_max: Vec<usize> = suffix_sums(alpha, n_alpha);

    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(ctx.n());
    descend(
        ctx,
        0,
        0,
        target,
        &suffix_min,
        &suffix_max,
        &mut rows,
        &mut out,
    );
    out
}

fn suffix_sums(alpha: &MultiIndex, factor: usize) -> Vec<usize> {
    let n = alpha.len();
    let mut out = vec![0; n + 1];
    for i in (0..n).rev() {
        out[i] = out[i + 1] + alpha.get(i) * factor;
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn descend(
    ctx: &SigmaContext,
    var: usize,
    weight_so_far: usize,
    target: usize,
    suffix_min: &[usize],
    suffix_max: &[usize],
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<BetaIndex>,
) {
    if var == ctx.n() {
        if weight_so_far == target {
            let beta = BetaIndex::new(rows.clone(), ctx)
                .expect("enumerated grid must satisfy the compatibility conditions");
            out.push(beta);
        }
        return;
    }
    let n_alpha = ctx.n_alpha();
    let ai = ctx.alpha().get(var);
    let mut row = vec![0usize; n_alpha];
    compose_row(
        &mut row, 0, ai, 0, ctx, var, weight_so_far, target, suffix_min, suffix_max, rows, out,
    );
}

/// Enumerate row `var` as a composition of `remaining` into the positions
/// `col..`, tracking the weight contributed so far by this row.
#[allow(clippy::too_many_arguments)]
fn compose_row(
    row: &mut Vec<usize>,
    col: usize,
    remaining: usize,
    row_weight: usize,
    ctx: &SigmaContext,
    var: usize,
    weight_before: usize,
    target: usize,
    suffix_min: &[usize],
    suffix_max: &[usize],
    rows: &mut Vec<Vec<usize>>,
    out: &mut Vec<BetaIndex>,
) {
    let n_alpha = ctx.n_alpha();
    if col == n_alpha {
        if remaining != 0 {
            return;
        }
        let weight = weight_before + row_weight;
        // prune: the rest of the variables must be able to reach the target
        if weight + suffix_min[var + 1] > target || weight + suffix_max[var + 1] < target {
            return;
        }
        rows.push(row.clone());
        descend(ctx, var + 1, weight, target, suffix_min, suffix_max, rows, out);
        rows.pop();
        return;
    }
    let order = col + 1;
    for v in 0..=remaining {
        let w = row_weight + v * order;
        if weight_before + w > target {
            break;
        }
        row[col] = v;
        compose_row(
            row,
            col + 1,
            remaining - v,
            w,
            ctx,
            var,
            weight_before,
            target,
            suffix_min,
            suffix_max,
            rows,
            out,
        );
        row[col] = 0;
    }
}

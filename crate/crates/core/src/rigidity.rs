//! Quantitative lower bounds on derivative norms and their certificates.
//!
//! The pointwise norm convention throughout is the sum of absolute values
//! of the partials over the distinct multi-indices of a given total order
//! (no multinomial multiplicities); the constants below are stated for this
//! convention.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chainrule;
use crate::curves::{self, PolynomialCurve};
use crate::exactpoly::{
    decimal_string, factorial, oracle_derivative, rational_string, MVPoly, Rational,
};
use crate::multiindex;
use crate::sturm;
use crate::{Error, Result};

/// Version string embedded in rendered reports.
pub const LIB_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The `k`-th order divided difference of the given values at pairwise
/// distinct nodes, computed by the standard recursive table.
pub fn divided_difference(nodes: &[Rational], values: &[Rational]) -> Result<Rational> {
    if nodes.is_empty() {
        return Err(Error::EmptyInput("divided difference needs nodes"));
    }
    if nodes.len() != values.len() {
        return Err(Error::DimensionMismatch {
            expected: nodes.len(),
            got: values.len(),
        });
    }
    for (i, a) in nodes.iter().enumerate() {
        for b in &nodes[i + 1..] {
            if a == b {
                return Err(Error::DuplicateNode(a.to_string()));
            }
        }
    }
    let mut table = values.to_vec();
    let k = nodes.len();
    for level in 1..k {
        for i in (level..k).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &nodes[i] - &nodes[i - level];
            table[i] = num / den;
        }
    }
    Ok(table[k - 1].clone())
}

/// Both lower bounds on `max_{[-1,1]} |g^(d+1)|` for a `C^(d+1)` function
/// `g` vanishing at `d+1` prescribed zeros with `|g(z0)| = m`.
#[derive(Debug, Clone)]
pub struct OneDimBound {
    /// `(d+1)! * m / prod_i |z0 - t_i|` — sharp in the node geometry.
    pub sharp: Rational,
    /// `m (d+1)! / 2^(d+1)` — the uniform bound every node set satisfies.
    pub uniform: Rational,
    pub d: usize,
}

/// Certified one-dimensional lower bound from a zero set and a witness.
///
/// The divided difference of `g` over the nodes `{zeros, z0}` equals
/// `g(z0) / prod (z0 - t_i)` (the zero values drop out) and also equals
/// `g^(d+1)(xi) / (d+1)!` at some interior point, which gives the sharp
/// bound; every node gap is at most 2, which gives the uniform one.
pub fn rigidity_1d_bound(zeros: &[Rational], z0: &Rational, m: &Rational) -> Result<OneDimBound> {
    if zeros.is_empty() {
        return Err(Error::EmptyInput("need at least one prescribed zero"));
    }
    if m <= &Rational::zero() {
        return Err(Error::NonPositiveM(rational_string(m)));
    }
    let one = Rational::one();
    for z in zeros.iter().chain(std::iter::once(z0)) {
        if z.abs() > one {
            return Err(Error::PointOutsideInterval(rational_string(z)));
        }
    }
    for (i, a) in zeros.iter().enumerate() {
        for b in &zeros[i + 1..] {
            if a == b {
                return Err(Error::DuplicateNode(a.to_string()));
            }
        }
        if a == z0 {
            return Err(Error::WitnessOnZero(rational_string(z0)));
        }
    }
    let d = zeros.len() - 1;
    let fact = Rational::from_integer(factorial(d + 1));
    let mut gap_product = Rational::one();
    for z in zeros {
        gap_product *= (z0 - z).abs();
    }
    let sharp = &fact * m / gap_product;
    let uniform = fact * m / Rational::from_integer(num_traits::pow(BigInt::from(2), d + 1));
    Ok(OneDimBound { sharp, uniform, d })
}

/// `C_1(n, s, d) = s^(2(d+1)) (n+1)^(d+1) (d+1)^((d+1)(n+2))`.
pub fn constant_c1(n: usize, s: usize, d: usize) -> BigInt {
    assert!(n >= 1 && s >= 1);
    num_traits::pow(BigInt::from(s), 2 * (d + 1)) * chainrule::coefficient_bound(n, d)
}

/// `C(n, d, s) = 1 / C_1(n, s, d)`.
pub fn constant_c(n: usize, d: usize, s: usize) -> Rational {
    Rational::new(BigInt::one(), constant_c1(n, s, d))
}

/// Sum of `|f^(alpha)(x)|` over all multi-indices with
/// `k_lo <= |alpha| <= k_hi`, each distinct multi-index counted once.
pub fn derivative_norm_sum(
    f: &MVPoly,
    x: &[Rational],
    k_lo: usize,
    k_hi: usize,
) -> Result<Rational> {
    if x.len() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            got: x.len(),
        });
    }
    assert!(k_lo <= k_hi, "empty order range");
    let mut acc = Rational::zero();
    for k in k_lo..=k_hi {
        for alpha in multiindex::multi_indices_of_order(f.n(), k) {
            acc += f.partial_derivative(&alpha)?.eval(x)?.abs();
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    MainInequality,
    CurveRigidity,
    OneDim,
}

impl CertificateKind {
    fn label(self) -> &'static str {
        match self {
            CertificateKind::MainInequality => "main-inequality",
            CertificateKind::CurveRigidity => "curve-rigidity",
            CertificateKind::OneDim => "one-dim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
}

/// Witness data a certificate carries for independent re-verification.
#[derive(Debug, Clone)]
pub enum Witness {
    /// Evaluation point `t0`, with a flag recording whether it lies in the
    /// domain [-1, 1] the constants are proved for.
    Point { t0: Rational, in_domain: bool },
    /// A one-dimensional zero set plus the witness point.
    Nodes { zeros: Vec<Rational>, z0: Rational },
    None,
}

/// A verifiable record of one inequality instance: parameters, constants,
/// both evaluated sides, and the witness data, all exact.
///
/// Field semantics per kind:
/// - `main-inequality`: lhs = derivative norm sum over orders
///   `eta..=d+1` at `omega(t0)`, rhs = `C(n,d,s) * |g^(d+1)(t0)|`;
/// - `one-dim`: lhs = sharp node-gap bound, rhs = uniform `2^(d+1)` bound
///   (the recorded inequality is the dominance of the sharp bound);
/// - `curve-rigidity`: lhs = rhs = the certified lower bound
///   `m (d+1)! C(n,d,s) / 2^(d+1)` on the derivative norm sum of any
///   admissible `f` (the inequality itself quantifies over `f`).
#[derive(Debug, Clone)]
pub struct RigidityCertificate {
    pub kind: CertificateKind,
    pub n: usize,
    pub d: usize,
    pub s: Option<usize>,
    pub eta: Option<usize>,
    pub c1: Option<BigInt>,
    pub c: Option<Rational>,
    pub m: Option<Rational>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub witness: Witness,
    pub verdict: Verdict,
}

impl RigidityCertificate {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// Structured text record with stable field order; exact values as
    /// `p/q` plus 12-significant-digit decimal renderings.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "certificate");
        let _ = writeln!(out, "version: {LIB_VERSION}");
        let _ = writeln!(out, "kind: {}", self.kind.label());
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "d: {}", self.d);
        if let Some(s) = self.s {
            let _ = writeln!(out, "s: {s}");
        }
        if let Some(eta) = self.eta {
            let _ = writeln!(out, "eta: {eta}");
        }
        if let Some(c1) = &self.c1 {
            let _ = writeln!(out, "C1: {c1}");
        }
        if let Some(c) = &self.c {
            let _ = writeln!(out, "C: {}", rational_string(c));
            let _ = writeln!(out, "C_dec: {}", decimal_string(c, 12));
        }
        if let Some(m) = &self.m {
            let _ = writeln!(out, "m: {}", rational_string(m));
        }
        let _ = writeln!(out, "lhs: {}", rational_string(&self.lhs));
        let _ = writeln!(out, "lhs_dec: {}", decimal_string(&self.lhs, 12));
        let _ = writeln!(out, "rhs: {}", rational_string(&self.rhs));
        let _ = writeln!(out, "rhs_dec: {}", decimal_string(&self.rhs, 12));
        match &self.witness {
            Witness::Point { t0, in_domain } => {
                let _ = writeln!(out, "witness_t0: {}", rational_string(t0));
                let _ = writeln!(out, "witness_in_domain: {in_domain}");
            }
            Witness::Nodes { zeros, z0 } => {
                let list: Vec<String> = zeros.iter().map(rational_string).collect();
                let _ = writeln!(out, "witness_zeros: {}", list.join(" "));
                let _ = writeln!(out, "witness_z0: {}", rational_string(z0));
            }
            Witness::None => {}
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            match self.verdict {
                Verdict::Holds => "holds",
                Verdict::Violated => "violated",
            }
        );
        out
    }
}

/// Grid resolution used for the preliminary unit-ball sampling inside
/// [`certify_main_inequality`]; the verdict itself rests on the exact
/// critical-point analysis, not on the grid.
const BALL_CHECK_GRID: usize = 64;

/// Certify one instance of the pointwise inequality
/// `sum_{eta <= |alpha| <= d+1} |f^(alpha)(omega(t0))| >=
///  C(n,d,s) |g^(d+1)(t0)|`.
///
/// The curve must be certified inside the closed unit ball (the constant
/// is proved under that assumption); `g^(d+1)(t0)` is taken from the
/// symbolic oracle, not from the expansion. A witness outside [-1, 1] is
/// flagged in the certificate rather than silently accepted: the recorded
/// comparison is still exact, but the proven inequality only covers the
/// flagged domain.
pub fn certify_main_inequality(
    f: &MVPoly,
    omega: &PolynomialCurve,
    t0: &Rational,
    d: usize,
) -> Result<RigidityCertificate> {
    certify_main_inequality_with_grid(f, omega, t0, d, BALL_CHECK_GRID)
}

/// [`certify_main_inequality`] with an explicit sampling grid for the
/// unit-ball check (at least 2 points; the endpoints are always sampled).
pub fn certify_main_inequality_with_grid(
    f: &MVPoly,
    omega: &PolynomialCurve,
    t0: &Rational,
    d: usize,
    grid_size: usize,
) -> Result<RigidityCertificate> {
    let n = f.n();
    if omega.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: omega.dimension(),
        });
    }
    let s = omega.degree();
    if s == 0 {
        return Err(Error::DegenerateCurveDegree);
    }
    let check = curves::in_unit_ball(omega, grid_size);
    if !check.inside {
        return Err(Error::CurveOutsideBall {
            t: rational_string(&check.worst_t),
            norm_sq: rational_string(&check.worst_norm_sq),
        });
    }
    let eta = multiindex::eta(d, s)?;
    let point = omega.point_at(t0);
    let lhs = derivative_norm_sum(f, &point, eta, d + 1)?;
    let g_deriv = oracle_derivative(f, omega, d + 1, t0)?;
    let c = constant_c(n, d, s);
    let rhs = &c * g_deriv.abs();
    let in_domain = t0.abs() <= Rational::one();
    let verdict = if lhs >= rhs {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    Ok(RigidityCertificate {
        kind: CertificateKind::MainInequality,
        n,
        d,
        s: Some(s),
        eta: Some(eta),
        c1: Some(constant_c1(n, s, d)),
        c: Some(c),
        m: None,
        lhs,
        rhs,
        witness: Witness::Point {
            t0: t0.clone(),
            in_domain,
        },
        verdict,
    })
}

/// The certified lower bound `m (d+1)! C(n,d,s) / 2^(d+1)` on the sum
/// `sum_{eta <= |alpha| <= d+1} |f^(alpha)|` for every normalized
/// `C^(d+1)` function `f` vanishing at `d+1` or more points of
/// `omega([-1,1])` with `max |f(omega(t))| = m`.
pub fn certify_curve_rigidity(n: usize, d: usize, s: usize, m: &Rational) -> Result<Rational> {
    if m <= &Rational::zero() {
        return Err(Error::NonPositiveM(rational_string(m)));
    }
    if s == 0 {
        return Err(Error::DegenerateCurveDegree);
    }
    let fact = Rational::from_integer(factorial(d + 1));
    let pow2 = Rational::from_integer(num_traits::pow(BigInt::from(2), d + 1));
    Ok(m * fact * constant_c(n, d, s) / pow2)
}

/// Certificate wrapper around [`certify_curve_rigidity`].
pub fn curve_rigidity_certificate(
    n: usize,
    d: usize,
    s: usize,
    m: &Rational,
) -> Result<RigidityCertificate> {
    let bound = certify_curve_rigidity(n, d, s, m)?;
    Ok(RigidityCertificate {
        kind: CertificateKind::CurveRigidity,
        n,
        d,
        s: Some(s),
        eta: Some(multiindex::eta(d, s)?),
        c1: Some(constant_c1(n, s, d)),
        c: Some(constant_c(n, d, s)),
        m: Some(m.clone()),
        lhs: bound.clone(),
        rhs: bound,
        witness: Witness::None,
        verdict: Verdict::Holds,
    })
}

/// Certificate wrapper around [`rigidity_1d_bound`] (kind `one-dim`):
/// lhs is the sharp bound, rhs the uniform one, and the verdict records
/// the (always-true) dominance of the sharp bound.
pub fn one_dim_certificate(
    zeros: &[Rational],
    z0: &Rational,
    m: &Rational,
) -> Result<RigidityCertificate> {
    let bound = rigidity_1d_bound(zeros, z0, m)?;
    let verdict = if bound.sharp >= bound.uniform {
        Verdict::Holds
    } else {
        Verdict::Violated
    };
    Ok(RigidityCertificate {
        kind: CertificateKind::OneDim,
        n: 1,
        d: bound.d,
        s: None,
        eta: None,
        c1: None,
        c: None,
        m: Some(m.clone()),
        lhs: bound.sharp,
        rhs: bound.uniform,
        witness: Witness::Nodes {
            zeros: zeros.to_vec(),
            z0: z0.clone(),
        },
        verdict,
    })
}

/// One row of the derivative-order schedule: the order interval
/// `I_j = [eta, d+1]` of length `theta = d + 1 - eta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleEntry {
    pub j: usize,
    pub d: usize,
    pub eta: usize,
    pub theta: usize,
    /// True when this interval shares its left endpoint with the previous
    /// interval's right endpoint (`eta = d_{j-1} + 1`); the construction
    /// permits that even though consecutive intervals are otherwise
    /// disjoint.
    pub overlaps_previous: bool,
}

/// The first `j_max` intervals of derivative orders reached by a degree-`s`
/// curve: `d_1 = 5s`, and each subsequent `d_j` is the smallest `d` with
/// `eta(d, s) > d_{j-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSchedule {
    pub s: usize,
    pub entries: Vec<ScheduleEntry>,
}

pub fn interval_schedule(s: usize, j_max: usize) -> IntervalSchedule {
    assert!(s >= 1, "curve degree must be at least 1");
    let mut entries = Vec::with_capacity(j_max);
    let mut prev_d = 0usize;
    for j in 1..=j_max {
        let d = if j == 1 {
            5 * s
        } else {
            // smallest d with eta(d, s) > prev_d; eta is nondecreasing in d
            let mut d = prev_d + 1;
            while multiindex::eta(d, s).expect("s >= 1") <= prev_d {
                d += 1;
            }
            d
        };
        let eta = multiindex::eta(d, s).expect("s >= 1");
        let overlaps_previous = j > 1 && eta == prev_d + 1;
        entries.push(ScheduleEntry {
            j,
            d,
            eta,
            theta: d + 1 - eta,
            overlaps_previous,
        });
        prev_d = d;
    }
    IntervalSchedule { s, entries }
}

impl IntervalSchedule {
    /// The pigeonhole bound `m (d_j+1)! C(n,d_j,s) / (theta_j 2^(d_j+1))`
    /// on the best single order in interval `j` (1-based).
    pub fn per_interval_bound(&self, j: usize, n: usize, m: &Rational) -> Result<Rational> {
        let entry = self
            .entries
            .get(j.checked_sub(1).ok_or(Error::EmptyInput("schedule index is 1-based"))?)
            .ok_or(Error::EmptyInput("schedule entry out of range"))?;
        per_interval_bound(entry, self.s, n, m)
    }

    /// Table rendering with one `(j, d_j, I_j, theta_j)` row per entry,
    /// endpoint overlaps marked, and the growth ratio `d_{j+1}/d_j`
    /// reported against the heuristic `s + 1`.
    pub fn render(&self, n_hint: Option<usize>) -> String {
        let mut text = String::new();
        let _ = writeln!(text, "# schedule version={LIB_VERSION} s={}", self.s);
        let _ = writeln!(text, "# heuristic growth ratio s+1 = {}", self.s + 1);
        for entry in &self.entries {
            let overlap = if entry.overlaps_previous {
                "  overlap-at-left-endpoint"
            } else {
                ""
            };
            let ratio = if entry.j >= 2 {
                let prev = &self.entries[entry.j - 2];
                format!("  ratio={:.6}", entry.d as f64 / prev.d as f64)
            } else {
                String::new()
            };
            let _ = writeln!(
                text,
                "j={} d={} I=[{},{}] theta={}{}{}",
                entry.j,
                entry.d,
                entry.eta,
                entry.d + 1,
                entry.theta,
                ratio,
                overlap
            );
        }
        if let Some(n) = n_hint {
            let _ = writeln!(text, "# per-interval bounds for n={n}, m=1");
            for entry in &self.entries {
                if let Ok(bound) = per_interval_bound(entry, self.s, n, &Rational::one()) {
                    let _ = writeln!(
                        text,
                        "j={} bound={} ({})",
                        entry.j,
                        rational_string(&bound),
                        decimal_string(&bound, 12)
                    );
                }
            }
        }
        text
    }
}

/// The bound of one schedule interval: the interval's total lower bound
/// divided by its length. Uses `(d_j + 1)!` throughout, the form the
/// pigeonhole argument supports.
pub fn per_interval_bound(
    entry: &ScheduleEntry,
    s: usize,
    n: usize,
    m: &Rational,
) -> Result<Rational> {
    if m <= &Rational::zero() {
        return Err(Error::NonPositiveM(rational_string(m)));
    }
    assert!(entry.theta >= 1, "degenerate schedule interval");
    let total = certify_curve_rigidity(n, entry.d, s, m)?;
    Ok(total / Rational::from_integer(BigInt::from(entry.theta)))
}

/// How many times `f` vanishes along the curve: the number of distinct
/// zeros of `g = f(omega(t))` on [-1, 1], or `Infinite` when `g` is
/// identically zero (the curve lies inside the zero set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroCount {
    Finite(usize),
    Infinite,
}

/// Count the distinct zeros of the composition on [-1, 1] by exact root
/// isolation; a convenience for locating the `d+1` intersection points the
/// curve-rigidity bound assumes.
pub fn count_curve_zeros(f: &MVPoly, omega: &PolynomialCurve) -> Result<ZeroCount> {
    let g = f.compose_with_curve(omega)?;
    if g.is_zero() {
        return Ok(ZeroCount::Infinite);
    }
    let count = sturm::count_distinct_roots_closed(
        &g,
        &-Rational::one(),
        &Rational::one(),
    );
    Ok(ZeroCount::Finite(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, UniPoly};
    use crate::multiindex::MultiIndex;

    fn cubic() -> UniPoly {
        // t^3 - t
        UniPoly::from_coeffs(vec![rat(0, 1), rat(-1, 1), rat(0, 1), rat(1, 1)])
    }

    #[test]
    fn divided_difference_examples() {
        let nodes = vec![rat(-1, 1), rat(0, 1), rat(1, 1), rat(1, 2)];
        let values: Vec<Rational> = nodes.iter().map(|t| cubic().eval(t)).collect();
        assert_eq!(divided_difference(&nodes, &values).unwrap(), rat(1, 1));

        let nodes = vec![rat(-1, 2), rat(1, 3), rat(2, 3)];
        let values = vec![rat(7, 1); 3];
        assert_eq!(divided_difference(&nodes, &values).unwrap(), rat(0, 1));

        let nodes = vec![rat(0, 1), rat(2, 1)];
        let values = vec![rat(1, 1), rat(5, 1)];
        assert_eq!(divided_difference(&nodes, &values).unwrap(), rat(2, 1));

        assert!(matches!(
            divided_difference(&[rat(1, 2), rat(1, 2)], &[rat(0, 1), rat(0, 1)]),
            Err(Error::DuplicateNode(_))
        ));
    }

    #[test]
    fn one_dim_bound_sharp_example() {
        // zeros of t^3 - t, witness at 1/2 where |g| = 3/8
        let zeros = vec![rat(-1, 1), rat(0, 1), rat(1, 1)];
        let bound = rigidity_1d_bound(&zeros, &rat(1, 2), &rat(3, 8)).unwrap();
        assert_eq!(bound.sharp, rat(6, 1));
        assert_eq!(bound.uniform, rat(9, 32));
        assert!(bound.sharp >= bound.uniform);
    }

    #[test]
    fn one_dim_bound_validation() {
        let zeros = vec![rat(-1, 1), rat(0, 1), rat(1, 1)];
        assert!(matches!(
            rigidity_1d_bound(&zeros, &rat(0, 1), &rat(1, 1)),
            Err(Error::WitnessOnZero(_))
        ));
        assert!(matches!(
            rigidity_1d_bound(&zeros, &rat(1, 2), &rat(0, 1)),
            Err(Error::NonPositiveM(_))
        ));
        assert!(matches!(
            rigidity_1d_bound(&[rat(3, 2)], &rat(0, 1), &rat(1, 1)),
            Err(Error::PointOutsideInterval(_))
        ));
        assert!(matches!(
            rigidity_1d_bound(&[rat(1, 2), rat(1, 2)], &rat(0, 1), &rat(1, 1)),
            Err(Error::DuplicateNode(_))
        ));
    }

    #[test]
    fn one_dim_bound_at_chebyshev_like_zeros() {
        // zeros at near-Chebyshev nodes, witness between two of them:
        // every gap is at most 2, so the sharp bound dominates the uniform
        // m (d+1)!/2^(d+1)
        for k in 2..=6usize {
            let zeros = crate::curves::chebyshev_like_params(k);
            let z0 = (&zeros[0] + &zeros[1]) / Rational::from_integer(BigInt::from(2));
            let m = rat(1, 1);
            let bound = rigidity_1d_bound(&zeros, &z0, &m).unwrap();
            let d = k - 1;
            let uniform = Rational::from_integer(factorial(d + 1))
                / Rational::from_integer(num_traits::pow(BigInt::from(2), d + 1));
            assert_eq!(bound.uniform, uniform);
            assert!(bound.sharp >= uniform);
        }
    }

    #[test]
    fn one_dim_bound_realizability() {
        // g = c prod (t - z_i): the sharp bound equals |c| (d+1)! exactly
        let zeros = vec![rat(-3, 4), rat(-1, 5), rat(1, 3), rat(7, 8)];
        let c = rat(-5, 3);
        let mut g = UniPoly::constant(c.clone());
        for z in &zeros {
            g = &g * &UniPoly::from_coeffs(vec![-z.clone(), rat(1, 1)]);
        }
        let z0 = rat(1, 7);
        let m = g.eval(&z0).abs();
        let bound = rigidity_1d_bound(&zeros, &z0, &m).unwrap();
        let true_max = c.abs() * Rational::from_integer(factorial(zeros.len()));
        assert_eq!(bound.sharp, true_max);
        assert!(bound.uniform <= true_max);
    }

    #[test]
    fn constants_examples() {
        assert_eq!(constant_c1(1, 1, 2), BigInt::from(157464));
        assert_eq!(constant_c1(2, 2, 2), BigInt::from(918330048u64));
        assert_eq!(constant_c1(1, 1, 0), BigInt::from(2));
        assert_eq!(constant_c(1, 2, 1), rat(1, 157464));
    }

    #[test]
    fn constants_monotone() {
        for (n, s, d) in [(1, 1, 1), (2, 2, 2), (1, 3, 2)] {
            let base = constant_c1(n, s, d);
            assert!(constant_c1(n + 1, s, d) > base);
            assert!(constant_c1(n, s + 1, d) > base);
            assert!(constant_c1(n, s, d + 1) > base);
        }
        // the curve-rigidity bound strictly decreases in d
        let m = rat(1, 1);
        let mut prev = certify_curve_rigidity(2, 1, 2, &m).unwrap();
        for d in 2..5 {
            let next = certify_curve_rigidity(2, d, 2, &m).unwrap();
            assert!(next < prev);
            prev = next;
        }
    }

    #[test]
    fn norm_sum_examples() {
        // f = xy at (1,1) over orders 1..=2: |y| + |x| + |1| = 3
        let f = MVPoly::from_terms(2, [(MultiIndex::new(vec![1, 1]), rat(1, 1))]).unwrap();
        let x = [rat(1, 1), rat(1, 1)];
        assert_eq!(derivative_norm_sum(&f, &x, 1, 2).unwrap(), rat(3, 1));

        let c = MVPoly::constant(2, rat(5, 1));
        assert_eq!(derivative_norm_sum(&c, &x, 1, 3).unwrap(), rat(0, 1));

        let sq = MVPoly::from_terms(1, [(MultiIndex::new(vec![2]), rat(1, 1))]).unwrap();
        assert_eq!(
            derivative_norm_sum(&sq, &[rat(1, 1)], 2, 2).unwrap(),
            rat(2, 1)
        );
    }

    #[test]
    fn main_inequality_example_instance() {
        // f = x^2, omega = (t^2/2), d = 2 (third derivative), t0 = 1/2
        let f = MVPoly::from_terms(1, [(MultiIndex::new(vec![2]), rat(1, 1))]).unwrap();
        let w = PolynomialCurve::new(vec![UniPoly::monomial(rat(1, 2), 2)]).unwrap();
        let cert = certify_main_inequality(&f, &w, &rat(1, 2), 2).unwrap();
        assert!(cert.holds());
        // lhs: |f''| + |f'''| at the point = 2 + 0
        assert_eq!(cert.lhs, rat(2, 1));
        // rhs: g = t^4/4, g''' = 6t, |g'''(1/2)| = 3, times C(1,2,2)
        assert_eq!(cert.c1, Some(BigInt::from(10077696u64)));
        assert_eq!(cert.rhs, rat(3, 10077696));
        assert_eq!(cert.eta, Some(2));
    }

    #[test]
    fn main_inequality_trivial_and_degenerate_cases() {
        // f constant along the curve: rhs = 0
        let f = MVPoly::from_terms(
            2,
            [
                (MultiIndex::new(vec![2, 0]), rat(1, 1)),
                (MultiIndex::new(vec![0, 2]), rat(1, 1)),
            ],
        )
        .unwrap();
        // omega = (t/2, ...) tracing a circle is not polynomial; use the
        // line omega = (t/2, t/2) where f(omega) = t^2/2 is still honest
        let w = PolynomialCurve::new(vec![
            UniPoly::monomial(rat(1, 2), 1),
            UniPoly::monomial(rat(1, 2), 1),
        ])
        .unwrap();
        let cert = certify_main_inequality(&f, &w, &rat(1, 3), 0).unwrap();
        assert!(cert.holds());

        // curve outside the ball is refused
        let w_out = PolynomialCurve::new(vec![
            UniPoly::variable(),
            UniPoly::monomial(rat(1, 1), 2),
        ])
        .unwrap();
        assert!(matches!(
            certify_main_inequality(&f, &w_out, &rat(0, 1), 1),
            Err(Error::CurveOutsideBall { .. })
        ));

        // witness outside [-1, 1] is flagged, not rejected
        let f1 = MVPoly::from_terms(1, [(MultiIndex::new(vec![2]), rat(1, 1))]).unwrap();
        let w1 = PolynomialCurve::new(vec![UniPoly::monomial(rat(1, 2), 2)]).unwrap();
        let cert = certify_main_inequality(&f1, &w1, &rat(3, 2), 2).unwrap();
        assert!(matches!(
            cert.witness,
            Witness::Point { in_domain: false, .. }
        ));
    }

    #[test]
    fn curve_rigidity_examples() {
        assert_eq!(
            certify_curve_rigidity(1, 2, 1, &rat(1, 1)).unwrap(),
            rat(1, 209952)
        );
        assert_eq!(
            certify_curve_rigidity(1, 2, 1, &rat(2, 1)).unwrap(),
            rat(2, 209952)
        );
        assert_eq!(
            certify_curve_rigidity(2, 2, 2, &rat(1, 1)).unwrap(),
            rat(1, 1224440064)
        );
        assert!(matches!(
            certify_curve_rigidity(1, 2, 1, &rat(0, 1)),
            Err(Error::NonPositiveM(_))
        ));
    }

    #[test]
    fn schedule_examples() {
        let sched = interval_schedule(1, 2);
        assert_eq!(
            sched.entries,
            vec![
                ScheduleEntry { j: 1, d: 5, eta: 4, theta: 2, overlaps_previous: false },
                ScheduleEntry { j: 2, d: 9, eta: 6, theta: 4, overlaps_previous: true },
            ]
        );
        let sched = interval_schedule(2, 1);
        assert_eq!(
            sched.entries,
            vec![ScheduleEntry { j: 1, d: 10, eta: 4, theta: 7, overlaps_previous: false }]
        );
        assert!(interval_schedule(3, 0).entries.is_empty());
    }

    #[test]
    fn schedule_minimality() {
        for s in 1..=3usize {
            let sched = interval_schedule(s, 4);
            let mut prev_d = 0;
            for entry in &sched.entries {
                assert!(multiindex::eta(entry.d, s).unwrap() > prev_d || entry.j == 1);
                if entry.j >= 2 {
                    for d in 0..entry.d {
                        assert!(
                            multiindex::eta(d, s).unwrap() <= prev_d,
                            "d_j = {} not minimal at s = {s}: d = {d} already works",
                            entry.d
                        );
                    }
                }
                prev_d = entry.d;
            }
        }
    }

    #[test]
    fn per_interval_bound_examples() {
        let sched = interval_schedule(1, 1);
        // theta_1 = 2: half the full interval bound
        let full = certify_curve_rigidity(1, 5, 1, &rat(1, 1)).unwrap();
        assert_eq!(
            sched.per_interval_bound(1, 1, &rat(1, 1)).unwrap(),
            full / rat(2, 1)
        );
        // theta = 1 equals the full bound (d = 2, s = 1: eta = 2, theta = 1)
        let entry = ScheduleEntry { j: 1, d: 2, eta: 2, theta: 1, overlaps_previous: false };
        assert_eq!(
            per_interval_bound(&entry, 1, 1, &rat(1, 1)).unwrap(),
            certify_curve_rigidity(1, 2, 1, &rat(1, 1)).unwrap()
        );
        assert!(matches!(
            per_interval_bound(&entry, 1, 1, &rat(0, 1)),
            Err(Error::NonPositiveM(_))
        ));
    }

    #[test]
    fn certificate_rendering_is_stable() {
        let zeros = vec![rat(-1, 1), rat(0, 1), rat(1, 1)];
        let cert = one_dim_certificate(&zeros, &rat(1, 2), &rat(3, 8)).unwrap();
        let expected = format!(
            "certificate\n\
             version: {LIB_VERSION}\n\
             kind: one-dim\n\
             n: 1\n\
             d: 2\n\
             m: 3/8\n\
             lhs: 6/1\n\
             lhs_dec: 6.00000000000e0\n\
             rhs: 9/32\n\
             rhs_dec: 2.81250000000e-1\n\
             witness_zeros: -1/1 0/1 1/1\n\
             witness_z0: 1/2\n\
             verdict: holds\n"
        );
        assert_eq!(cert.render(), expected);
    }

    #[test]
    fn zero_counting_along_curves() {
        // f = x1, omega = (t^3 - t): three distinct zeros on [-1, 1]
        let f = MVPoly::variable(1, 0);
        let w = PolynomialCurve::new(vec![cubic()]).unwrap();
        assert_eq!(count_curve_zeros(&f, &w).unwrap(), ZeroCount::Finite(3));

        // f = x - y on the diagonal: identically zero
        let f = MVPoly::from_terms(
            2,
            [
                (MultiIndex::new(vec![1, 0]), rat(1, 1)),
                (MultiIndex::new(vec![0, 1]), rat(-1, 1)),
            ],
        )
        .unwrap();
        let w = PolynomialCurve::new(vec![UniPoly::variable(), UniPoly::variable()]).unwrap();
        assert_eq!(count_curve_zeros(&f, &w).unwrap(), ZeroCount::Infinite);
    }
}

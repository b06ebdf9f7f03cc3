//! The expansion of `g^(d+1)(t)` for `g(t) = f(omega(t))`:
//!
//! ```text
//! g^(d+1)(t) = sum_{1 <= |alpha| <= d+1} f^(alpha)(omega(t))
//!              sum_{beta in Sigma_alpha} c_{alpha,beta} (D omega_alpha)^beta
//! ```
//!
//! Coefficients are built by the differentiation recurrence itself rather
//! than a closed form: starting from the order-1 expansion, one derivative
//! step maps each term `(alpha, beta, c)` to
//!
//! - `(alpha + e_i, beta with beta_i^1 += 1, c)` for every variable `i`
//!   (the partial of `f` gets one order deeper and picks up `omega_i'`), and
//! - `(alpha, beta with beta_i^j -= 1 and beta_i^(j+1) += 1, c * beta_i^j)`
//!   for every grid cell with `beta_i^j > 0` (a product factor is
//!   differentiated),
//!
//! merging like `(alpha, beta)` pairs by summing coefficients. Every
//! intermediate grid is revalidated against the compatibility conditions,
//! so the construction certifies the combinatorial bookkeeping step by
//! step.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::curves::PolynomialCurve;
use crate::exactpoly::Rational;
use crate::multiindex::{self, BetaIndex, MultiIndex, SigmaContext};
use crate::{Error, Result};

/// One term `c * f^(alpha) * (D omega)^beta` of the expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRuleTerm {
    pub alpha: MultiIndex,
    pub beta: BetaIndex,
    /// Always a positive integer.
    pub coeff: BigInt,
}

/// The full term table for given `(n, d)`, in canonical order: descending
/// total order of `alpha`, then descending lexicographic `alpha`, then
/// ascending lexicographic `beta` (the order the low-order displays are
/// conventionally written in).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainRuleExpansion {
    n: usize,
    d: usize,
    /// `Some(s)` when this is the sub-expansion surviving composition with
    /// a degree-`s` curve.
    degree_limit: Option<usize>,
    terms: Vec<ChainRuleTerm>,
}

type TermKey = (MultiIndex, Vec<Vec<usize>>);
type ExpansionCache = Mutex<HashMap<(usize, usize), Arc<ChainRuleExpansion>>>;

impl ChainRuleExpansion {
    /// The expansion of the order-`d+1` derivative, cached per `(n, d)`;
    /// the first computation wins and every caller shares the result.
    pub fn expand(n: usize, d: usize) -> Arc<ChainRuleExpansion> {
        assert!(n >= 1, "dimension must be at least 1");
        static CACHE: OnceLock<ExpansionCache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("expansion cache poisoned");
        guard
            .entry((n, d))
            .or_insert_with(|| Arc::new(Self::compute(n, d)))
            .clone()
    }

    /// Run the recurrence without the cache.
    fn compute(n: usize, d: usize) -> ChainRuleExpansion {
        // order 1: g' = sum_i f^(e_i) omega_i'
        let mut table: BTreeMap<TermKey, BigInt> = BTreeMap::new();
        for i in 0..n {
            let alpha = MultiIndex::unit(n, i);
            let mut rows = vec![vec![0usize]; n];
            rows[i][0] = 1;
            table.insert((alpha, rows), BigInt::one());
        }

        for _step in 0..d {
            // one differentiation step: order goes up by one
            let mut next: BTreeMap<TermKey, BigInt> = BTreeMap::new();
            for ((alpha, rows), coeff) in &table {
                // move (a): bump alpha_i, bump beta_i^1; the grid width for
                // the deeper alpha at the next order stays the same
                for i in 0..n {
                    let new_alpha = alpha.bumped(i);
                    let mut new_rows = rows.clone();
                    new_rows[i][0] += 1;
                    merge(&mut next, (new_alpha, new_rows), coeff.clone());
                }
                // move (b): differentiate one factor omega_i^(j); the grid
                // gains one column at the next order
                for (i, row) in rows.iter().enumerate() {
                    for (j, &b) in row.iter().enumerate() {
                        if b == 0 {
                            continue;
                        }
                        let mut new_rows = rows.clone();
                        for r in &mut new_rows {
                            r.push(0);
                        }
                        new_rows[i][j] -= 1;
                        new_rows[i][j + 1] += 1;
                        merge(
                            &mut next,
                            (alpha.clone(), new_rows),
                            coeff * BigInt::from(b),
                        );
                    }
                }
            }
            table = next;
        }

        let mut terms: Vec<ChainRuleTerm> = table
            .into_iter()
            .map(|((alpha, rows), coeff)| {
                let ctx = SigmaContext::new(n, d, alpha.clone())
                    .expect("recurrence produced alpha outside 1..=d+1");
                let beta = BetaIndex::new(rows, &ctx)
                    .expect("recurrence produced a grid violating the compatibility conditions");
                ChainRuleTerm { alpha, beta, coeff }
            })
            .collect();
        terms.sort_by(canonical_term_order);
        ChainRuleExpansion {
            n,
            d,
            degree_limit: None,
            terms,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `Some(s)` for a truncated sub-expansion.
    pub fn degree_limit(&self) -> Option<usize> {
        self.degree_limit
    }

    pub fn terms(&self) -> &[ChainRuleTerm] {
        &self.terms
    }

    /// `nu_d`: the sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.iter().map(|t| &t.coeff).sum()
    }

    /// Exact value of the expansion on the given derivative values.
    pub fn evaluate(&self, tensors: &DerivativeTensors) -> Result<Rational> {
        if tensors.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: tensors.n,
            });
        }
        if tensors.d != self.d {
            return Err(Error::OrderOutOfRange {
                order: tensors.d + 1,
                max: self.d + 1,
            });
        }
        let mut acc = Rational::zero();
        for term in &self.terms {
            let partial = tensors
                .partials
                .get(&term.alpha)
                .ok_or_else(|| Error::MissingTensor(term.alpha.to_string()))?;
            if partial.is_zero() {
                continue;
            }
            let mut monomial = Rational::from_integer(term.coeff.clone());
            for (i, row) in term.beta.rows().iter().enumerate() {
                for (j, &b) in row.iter().enumerate() {
                    if b == 0 {
                        continue;
                    }
                    let v = &tensors.curve[i][j];
                    monomial *= num_traits::pow(v.clone(), b);
                }
            }
            acc += partial * monomial;
        }
        Ok(acc)
    }

    /// The sub-expansion that survives composition with a polynomial curve
    /// of degree at most `s`: every term whose monomial references a curve
    /// derivative of order greater than `s` is dropped (those derivatives
    /// vanish identically). Survivors provably have `|alpha| >= eta(d, s)`,
    /// which is asserted.
    pub fn truncate_for_degree(&self, s: usize) -> ChainRuleExpansion {
        assert!(s >= 1, "curve degree must be at least 1");
        let eta = multiindex::eta(self.d, s).expect("s >= 1");
        let terms: Vec<ChainRuleTerm> = self
            .terms
            .iter()
            .filter(|t| t.beta.max_order_used() <= s)
            .cloned()
            .collect();
        for t in &terms {
            assert!(
                t.alpha.order() >= eta,
                "surviving term at |alpha| = {} below eta = {eta}",
                t.alpha.order()
            );
        }
        ChainRuleExpansion {
            n: self.n,
            d: self.d,
            degree_limit: Some(s),
            terms,
        }
    }

    /// Smallest `|alpha|` among the terms surviving a degree-`s` curve;
    /// at least `eta(d, s)`, and the gap between the two is the empirical
    /// slack in the proven threshold.
    pub fn min_surviving_order(&self, s: usize) -> usize {
        let truncated = self.truncate_for_degree(s);
        truncated
            .terms
            .iter()
            .map(|t| t.alpha.order())
            .min()
            .expect("the |alpha| = d+1 block always survives")
    }

    /// Canonical one-term-per-line dump, stable across runs.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for term in &self.terms {
            let _ = writeln!(out, "{}", format_dump_term(term));
        }
        out
    }
}

fn merge(table: &mut BTreeMap<TermKey, BigInt>, key: TermKey, coeff: BigInt) {
    *table.entry(key).or_insert_with(BigInt::zero) += coeff;
}

fn canonical_term_order(a: &ChainRuleTerm, b: &ChainRuleTerm) -> std::cmp::Ordering {
    b.alpha
        .order()
        .cmp(&a.alpha.order())
        .then_with(|| b.alpha.cmp(&a.alpha))
        .then_with(|| a.beta.cmp(&b.beta))
}

/// `c * f^(a1,...,an) * (w1^(1))^b11 ...` with only nonzero exponents shown.
fn format_dump_term(term: &ChainRuleTerm) -> String {
    let mut s = format!("{} * f^{}", term.coeff, term.alpha);
    let mut factors = Vec::new();
    for (i, row) in term.beta.rows().iter().enumerate() {
        for (j, &b) in row.iter().enumerate() {
            if b > 0 {
                factors.push(format!("(w{}^({}))^{}", i + 1, j + 1, b));
            }
        }
    }
    if !factors.is_empty() {
        s.push_str(" * ");
        s.push_str(&factors.join(" "));
    }
    s
}

/// The closed-form bound `(n+1)^(d+1) (d+1)^((d+1)(n+2))` on the
/// coefficient sum (and on each coefficient and the term count).
pub fn coefficient_bound(n: usize, d: usize) -> BigInt {
    let a = num_traits::pow(BigInt::from(n + 1), d + 1);
    let b = num_traits::pow(BigInt::from(d + 1), (d + 1) * (n + 2));
    a * b
}

/// Point data the expansion is evaluated on: the partials of `f` at a point
/// keyed by multi-index, and the curve-coordinate derivatives
/// `omega_i^(j)(t0)` for `1 <= j <= d+1`.
///
/// Values are caller-supplied and may come from a black-box smooth
/// function; only the entries an expansion actually references must be
/// present (evaluation reports any missing one).
#[derive(Debug, Clone)]
pub struct DerivativeTensors {
    n: usize,
    d: usize,
    partials: BTreeMap<MultiIndex, Rational>,
    /// `curve[i][j-1]` is the order-`j` derivative of coordinate `i`.
    curve: Vec<Vec<Rational>>,
}

impl DerivativeTensors {
    pub fn new(
        n: usize,
        d: usize,
        partials: BTreeMap<MultiIndex, Rational>,
        curve: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        if curve.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: curve.len(),
            });
        }
        for row in &curve {
            if row.len() != d + 1 {
                return Err(Error::IncompleteSamples(format!(
                    "curve derivative rows must cover orders 1..={}, got {}",
                    d + 1,
                    row.len()
                )));
            }
        }
        for alpha in partials.keys() {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: alpha.len(),
                });
            }
        }
        Ok(DerivativeTensors {
            n,
            d,
            partials,
            curve,
        })
    }

    /// Build the complete table from a polynomial `f` and curve at `t0`.
    pub fn from_poly_curve(
        f: &crate::exactpoly::MVPoly,
        omega: &PolynomialCurve,
        t0: &Rational,
        d: usize,
    ) -> Result<Self> {
        let n = f.n();
        if omega.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: omega.dimension(),
            });
        }
        let x = omega.point_at(t0);
        let mut partials = BTreeMap::new();
        for k in 1..=(d + 1) {
            for alpha in multiindex::multi_indices_of_order(n, k) {
                let value = f.partial_derivative(&alpha)?.eval(&x)?;
                partials.insert(alpha, value);
            }
        }
        let curve = omega.derivatives_at(t0, d + 1);
        DerivativeTensors::new(n, d, partials, curve)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn partial(&self, alpha: &MultiIndex) -> Option<&Rational> {
        self.partials.get(alpha)
    }

    /// Derivative value `omega_i^(j)` (1-based order `j`).
    pub fn curve_derivative(&self, i: usize, j: usize) -> &Rational {
        &self.curve[i][j - 1]
    }

    /// Tensors for a straight line through `x` with direction `v` (all
    /// higher curve derivatives vanish).
    pub fn for_line(
        f: &crate::exactpoly::MVPoly,
        x: &[Rational],
        v: &[Rational],
        d: usize,
    ) -> Result<Self> {
        let n = f.n();
        if x.len() != n || v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len().min(v.len()),
            });
        }
        let mut partials = BTreeMap::new();
        for k in 1..=(d + 1) {
            for alpha in multiindex::multi_indices_of_order(n, k) {
                let value = f.partial_derivative(&alpha)?.eval(x)?;
                partials.insert(alpha, value);
            }
        }
        let curve = v
            .iter()
            .map(|vi| {
                let mut row = vec![Rational::zero(); d + 1];
                row[0] = vi.clone();
                row
            })
            .collect();
        DerivativeTensors::new(n, d, partials, curve)
    }
}

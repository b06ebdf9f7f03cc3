//! Exact rational polynomials in one and several variables, and the
//! symbolic oracle for derivatives of compositions.
//!
//! The oracle composes `f` with a curve symbolically and only then
//! differentiates, so its value is independent of the chain-rule expansion
//! machinery it is used to check.
//!
//! Serialization of a multivariate term follows the form
//! `num/den * x1^e1 x2^e2 ...` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::curves::PolynomialCurve;
use crate::multiindex::MultiIndex;
use crate::{Error, Result};

/// Exact rational scalar: arbitrary-precision, always reduced, positive
/// denominator. Backed by [`num_rational::BigRational`].
pub type Rational = BigRational;

/// Shorthand constructor for rationals from machine integers.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse an exact rational from `p/q` or plain integer form.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad integer `{num}`")))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad integer `{d}`")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

/// Render a rational as `p/q` with the denominator always spelled out.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering to `sig` significant digits, for human readers only.
/// Falls back to the exact form when the value leaves `f64` range.
pub fn decimal_string(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    match r.to_f64() {
        Some(v) if v.is_finite() => format!("{:.*e}", sig.saturating_sub(1), v),
        _ => rational_string(r),
    }
}

/// Exact `k!`.
pub fn factorial(k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// A univariate polynomial in `t` with exact rational coefficients.
///
/// Coefficients are stored by ascending power with no trailing zeros; the
/// degree of the zero polynomial is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    /// The variable `t`.
    pub fn variable() -> Self {
        UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly { coeffs }
    }

    /// Build from coefficients by ascending power, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^k` (zero beyond the stored range).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Exact `k`-th derivative; `k = 0` returns the polynomial unchanged and
    /// any `k` beyond the degree returns zero.
    pub fn differentiate(&self, k: usize) -> UniPoly {
        match self.degree() {
            None => UniPoly::zero(),
            Some(deg) if k > deg => UniPoly::zero(),
            _ => {
                let mut p = self.clone();
                for _ in 0..k {
                    p = p.derivative();
                }
                p
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder of division by a nonzero polynomial.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let ddeg = divisor.degree().unwrap();
        let lead = divisor.coeffs[ddeg].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(ddeg)];
        while rem.len() > ddeg {
            let k = rem.len() - 1;
            let factor = &rem[k] / &lead;
            if !factor.is_zero() {
                quot[k - ddeg] = factor.clone();
                for (i, dc) in divisor.coeffs.iter().enumerate() {
                    let idx = k - ddeg + i;
                    let sub = dc * &factor;
                    rem[idx] = &rem[idx] - sub;
                }
            }
            rem.pop();
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    /// Divide every coefficient by the leading one.
    pub fn monic(&self) -> UniPoly {
        match self.degree() {
            None => UniPoly::zero(),
            Some(deg) => {
                let lead = self.coeffs[deg].clone();
                self.scale(&lead.recip())
            }
        }
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{c}")?;
            } else if k == 1 {
                write!(f, "{c}*t")?;
            } else {
                write!(f, "{c}*t^{k}")?;
            }
        }
        Ok(())
    }
}

/// Exact `k`-th derivative of a univariate polynomial.
pub fn differentiate_uni(p: &UniPoly, k: usize) -> UniPoly {
    p.differentiate(k)
}

/// A sparse multivariate polynomial over `n` variables with exact rational
/// coefficients, keyed by exponent multi-index. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MVPoly {
    n: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl MVPoly {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "dimension must be at least 1");
        MVPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = MVPoly::zero(n);
        p.add_term(MultiIndex::zeros(n), c);
        p
    }

    /// The coordinate variable `x_{i+1}` (0-based index `i`).
    pub fn variable(n: usize, i: usize) -> Self {
        let mut p = MVPoly::zero(n);
        p.add_term(MultiIndex::unit(n, i), Rational::one());
        p
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = MVPoly::zero(n);
        for (alpha, c) in terms {
            if alpha.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: alpha.len(),
                });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, alpha: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(alpha);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(MultiIndex::order).max()
    }

    pub fn scale(&self, c: &Rational) -> MVPoly {
        if c.is_zero() {
            return MVPoly::zero(self.n);
        }
        MVPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (a.clone(), v * c))
                .collect(),
        }
    }

    /// Exact mixed partial derivative of multi-order `alpha`.
    pub fn partial_derivative(&self, alpha: &MultiIndex) -> Result<MVPoly> {
        if alpha.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: alpha.len(),
            });
        }
        let mut out = MVPoly::zero(self.n);
        'term: for (gamma, c) in &self.terms {
            let mut factor = BigInt::one();
            let mut exps = Vec::with_capacity(self.n);
            for i in 0..self.n {
                let g = gamma.get(i);
                let a = alpha.get(i);
                if g < a {
                    continue 'term;
                }
                // falling factorial g * (g-1) * ... * (g-a+1)
                for v in (g - a + 1)..=g {
                    factor *= BigInt::from(v);
                }
                exps.push(g - a);
            }
            out.add_term(
                MultiIndex::new(exps),
                c * Rational::from_integer(factor),
            );
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &[Rational]) -> Result<Rational> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut acc = Rational::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for (i, xi) in x.iter().enumerate() {
                term *= num_traits::pow(xi.clone(), alpha.get(i));
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitute the curve coordinates for the variables, producing the
    /// exact univariate composition `g(t) = f(omega_1(t), ..., omega_n(t))`.
    pub fn compose_with_curve(&self, omega: &PolynomialCurve) -> Result<UniPoly> {
        if omega.dimension() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: omega.dimension(),
            });
        }
        // per-coordinate power tables up to the maximal exponent used
        let mut max_exp = vec![0usize; self.n];
        for alpha in self.terms.keys() {
            for (i, m) in max_exp.iter_mut().enumerate() {
                *m = (*m).max(alpha.get(i));
            }
        }
        let powers: Vec<Vec<UniPoly>> = omega
            .coordinates()
            .iter()
            .zip(&max_exp)
            .map(|(w, &m)| {
                let mut table = Vec::with_capacity(m + 1);
                table.push(UniPoly::one());
                for k in 1..=m {
                    let next = &table[k - 1] * w;
                    table.push(next);
                }
                table
            })
            .collect();

        let mut acc = UniPoly::zero();
        for (alpha, c) in &self.terms {
            let mut term = UniPoly::constant(c.clone());
            for (i, table) in powers.iter().enumerate() {
                let e = alpha.get(i);
                if e > 0 {
                    term = &term * &table[e];
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl Add for &MVPoly {
    type Output = MVPoly;
    fn add(self, rhs: &MVPoly) -> MVPoly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MVPoly {
    type Output = MVPoly;
    fn sub(self, rhs: &MVPoly) -> MVPoly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MVPoly {
    type Output = MVPoly;
    fn mul(self, rhs: &MVPoly) -> MVPoly {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = MVPoly::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.add(b).expect("same length"), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MVPoly {
    type Output = MVPoly;
    fn neg(self) -> MVPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0/1");
        }
        let mut first = true;
        for (alpha, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "{}", format_term(alpha, c))?;
        }
        Ok(())
    }
}

/// Render one term as `num/den * x1^e1 ...`, omitting zero exponents.
pub fn format_term(alpha: &MultiIndex, c: &Rational) -> String {
    let mut s = rational_string(c);
    let factors: Vec<String> = (0..alpha.len())
        .filter(|&i| alpha.get(i) > 0)
        .map(|i| format!("x{}^{}", i + 1, alpha.get(i)))
        .collect();
    if !factors.is_empty() {
        s.push_str(" * ");
        s.push_str(&factors.join(" "));
    }
    s
}

/// Parse one term of the form `num/den * x1^e1 x2^e2 ...` (the coefficient
/// alone denotes a constant term; `xk` without an exponent means `xk^1`).
pub fn parse_term(s: &str, n: usize) -> Result<(MultiIndex, Rational)> {
    let s = s.trim();
    let (coeff_str, factors_str) = match s.split_once('*') {
        Some((c, rest)) => (c, rest.trim()),
        None => (s, ""),
    };
    let coeff = parse_rational(coeff_str)?;
    let mut exps = vec![0usize; n];
    for factor in factors_str.split_whitespace() {
        let body = factor
            .strip_prefix('x')
            .ok_or_else(|| Error::Parse(format!("expected variable factor, got `{factor}`")))?;
        let (var_str, exp_str) = match body.split_once('^') {
            Some((v, e)) => (v, Some(e)),
            None => (body, None),
        };
        let var: usize = var_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable index in `{factor}`")))?;
        if var == 0 || var > n {
            return Err(Error::Parse(format!(
                "variable x{var} out of range for n = {n}"
            )));
        }
        let exp: usize = match exp_str {
            Some(e) => e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
            None => 1,
        };
        exps[var - 1] += exp;
    }
    Ok((MultiIndex::new(exps), coeff))
}

/// Exact value of `g^(k)(t0)` for `g = f(omega(t))`, obtained by composing
/// symbolically and then differentiating. This is the independent ground
/// truth that chain-rule evaluations are compared against.
pub fn oracle_derivative(
    f: &MVPoly,
    omega: &PolynomialCurve,
    k: usize,
    t0: &Rational,
) -> Result<Rational> {
    let g = f.compose_with_curve(omega)?;
    Ok(g.differentiate(k).eval(t0))
}

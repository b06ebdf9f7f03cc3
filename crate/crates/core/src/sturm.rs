//! Real-root counting and isolation for univariate rational polynomials via
//! Sturm sequences.
//!
//! Supporting machinery for the unit-ball certificate and for counting curve
//! zeros; all decisions are exact. Chains are built from the square-free
//! part, so counts are of distinct roots.

use num_traits::{One, Signed, Zero};

use crate::exactpoly::{Rational, UniPoly};

/// Monic greatest common divisor via the Euclidean remainder sequence.
pub fn poly_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut f = a.clone();
    let mut g = b.clone();
    while !g.is_zero() {
        let (_, r) = f.div_rem(&g);
        f = g;
        g = r;
    }
    f.monic()
}

/// The square-free part `p / gcd(p, p')`.
pub fn square_free_part(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return UniPoly::zero();
    }
    let g = poly_gcd(p, &p.derivative());
    if g.degree() == Some(0) {
        return p.clone();
    }
    let (q, r) = p.div_rem(&g);
    debug_assert!(r.is_zero());
    q
}

/// A Sturm chain for a square-free polynomial.
pub struct SturmChain {
    seq: Vec<UniPoly>,
}

impl SturmChain {
    /// Build the canonical chain of the square-free part of `p`.
    pub fn new(p: &UniPoly) -> Self {
        let p = square_free_part(p);
        let mut seq = Vec::new();
        if p.is_zero() {
            return SturmChain { seq };
        }
        seq.push(p.clone());
        if p.degree() == Some(0) {
            return SturmChain { seq };
        }
        seq.push(p.derivative());
        loop {
            let k = seq.len();
            let (_, r) = seq[k - 2].div_rem(&seq[k - 1]);
            if r.is_zero() {
                break;
            }
            let next = -&r;
            // scaling by a positive constant preserves all signs and keeps
            // coefficient growth in check
            let lead_abs = next.coeff(next.degree().unwrap()).abs();
            let next = next.scale(&lead_abs.recip());
            let is_const = next.degree() == Some(0);
            seq.push(next);
            if is_const {
                break;
            }
        }
        SturmChain { seq }
    }

    fn variations_at(&self, t: &Rational) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None; // sign: true = positive
        for p in &self.seq {
            let v = p.eval(t);
            if v.is_zero() {
                continue;
            }
            let sign = v > Rational::zero();
            if let Some(prev) = last {
                if prev != sign {
                    count += 1;
                }
            }
            last = Some(sign);
        }
        count
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    /// Requires `a < b` and the underlying square-free polynomial to be
    /// nonzero at `a`.
    pub fn count_roots_half_open(&self, a: &Rational, b: &Rational) -> usize {
        assert!(a < b, "empty interval");
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Where an isolated real root lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootLoc {
    /// The root is the exact rational value.
    Exact(Rational),
    /// Exactly one root of the polynomial lies in the open interval.
    Interval(Rational, Rational),
}

/// Count distinct real roots of a nonzero `p` in the closed interval
/// `[a, b]`.
pub fn count_distinct_roots_closed(p: &UniPoly, a: &Rational, b: &Rational) -> usize {
    assert!(!p.is_zero(), "root count of the zero polynomial");
    assert!(a <= b);
    if a == b {
        return usize::from(p.eval(a).is_zero());
    }
    let mut sf = square_free_part(p);
    let mut endpoint_roots = 0;
    for e in [a, b] {
        if sf.eval(e).is_zero() {
            endpoint_roots += 1;
            sf = deflate_root(&sf, e);
        }
    }
    if sf.degree().is_none_or(|d| d == 0) {
        return endpoint_roots;
    }
    let chain = SturmChain::new(&sf);
    endpoint_roots + chain.count_roots_half_open(a, b)
}

/// Divide out all factors `(t - r)` at a known rational root.
fn deflate_root(p: &UniPoly, r: &Rational) -> UniPoly {
    let linear = UniPoly::from_coeffs(vec![-r.clone(), Rational::one()]);
    let mut q = p.clone();
    loop {
        if q.is_zero() || !q.eval(r).is_zero() {
            return q;
        }
        let (quot, rem) = q.div_rem(&linear);
        debug_assert!(rem.is_zero());
        q = quot;
    }
}

/// Isolate the distinct real roots of a nonzero `p` in the open interval
/// `(a, b)`. Rational roots are returned exactly; every other root gets an
/// open interval containing it and no other root of `p`.
pub fn isolate_roots(p: &UniPoly, a: &Rational, b: &Rational) -> Vec<RootLoc> {
    assert!(!p.is_zero(), "root isolation of the zero polynomial");
    assert!(a < b);
    let mut sf = square_free_part(p);
    // clear the (excluded) endpoints so Sturm counts are clean
    for e in [a, b] {
        if sf.eval(e).is_zero() {
            sf = deflate_root(&sf, e);
        }
    }
    let mut out = Vec::new();
    if sf.degree().is_none_or(|d| d == 0) {
        return out;
    }
    let chain = SturmChain::new(&sf);
    bisect(&chain, &sf, a, b, &mut out);
    out
}

// Invariant maintained by every call: neither endpoint is a root of `sf`,
// so the half-open Sturm count over (a, b] counts exactly the roots of the
// open interval.
fn bisect(chain: &SturmChain, sf: &UniPoly, a: &Rational, b: &Rational, out: &mut Vec<RootLoc>) {
    let count = chain.count_roots_half_open(a, b);
    if count == 0 {
        return;
    }
    if count == 1 {
        debug_assert!(!sf.eval(b).is_zero());
        out.push(RootLoc::Interval(a.clone(), b.clone()));
        return;
    }
    let mid = (a + b) / Rational::from_integer(2.into());
    if sf.eval(&mid).is_zero() {
        // exact rational root found; deflate and isolate the rest on both
        // sides, keeping the output ordered
        let deflated = deflate_root(sf, &mid);
        if deflated.degree().is_some_and(|d| d >= 1) {
            let sub = SturmChain::new(&deflated);
            bisect(&sub, &deflated, a, &mid, out);
            out.push(RootLoc::Exact(mid.clone()));
            bisect(&sub, &deflated, &mid, b, out);
        } else {
            out.push(RootLoc::Exact(mid.clone()));
        }
        return;
    }
    bisect(chain, sf, a, &mid, out);
    bisect(chain, sf, &mid, b, out);
}

/// Shrink an isolating interval of a root of `p` until its width is at most
/// `width`; returns either the exact root (if bisection lands on it) or the
/// refined interval.
pub fn refine_root(p: &UniPoly, loc: &RootLoc, width: &Rational) -> RootLoc {
    let (mut a, mut b) = match loc {
        RootLoc::Exact(_) => return loc.clone(),
        RootLoc::Interval(a, b) => (a.clone(), b.clone()),
    };
    let sf = square_free_part(p);
    let chain = SturmChain::new(&sf);
    let two = Rational::from_integer(2.into());
    while &(&b - &a) > width {
        let mid = (&a + &b) / &two;
        if sf.eval(&mid).is_zero() {
            return RootLoc::Exact(mid);
        }
        if chain.count_roots_half_open(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    RootLoc::Interval(a, b)
}

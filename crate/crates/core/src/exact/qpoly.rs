//! Dense univariate polynomials over `BigRational`, with the Sturm-sequence
//! machinery used everywhere a real root must be isolated or counted:
//! unit-circle zeros of Alexander polynomials in the cosine coordinate,
//! defining polynomials of algebraic angles, realization sweeps.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in one variable with rational coefficients, stored densely in
/// ascending order with no trailing zeros (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

/// Location of a single real root: an open isolating interval with non-root
/// rational endpoints, or an exactly known rational root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootLoc {
    pub lo: BigRational,
    pub hi: BigRational,
    pub exact: Option<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        QPoly { coeffs: vec![c] }.normalized()
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        QPoly {
            coeffs: vec![BigRational::zero(), BigRational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        QPoly { coeffs }.normalized()
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    pub fn from_bigint_coeffs(coeffs: &[BigInt]) -> Self {
        QPoly::from_coeffs(coeffs.iter().map(|c| BigRational::from(c.clone())).collect())
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Certified range enclosure of the polynomial over `[lo, hi]` by
    /// interval Horner evaluation.
    pub fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut acc_lo = BigRational::zero();
        let mut acc_hi = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            // acc = acc * [lo, hi] + c
            let products = [
                &acc_lo * lo,
                &acc_lo * hi,
                &acc_hi * lo,
                &acc_hi * hi,
            ];
            let mut new_lo = products[0].clone();
            let mut new_hi = products[0].clone();
            for p in &products[1..] {
                if *p < new_lo {
                    new_lo = p.clone();
                }
                if *p > new_hi {
                    new_hi = p.clone();
                }
            }
            acc_lo = new_lo + c;
            acc_hi = new_hi + c;
        }
        (acc_lo, acc_hi)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from(BigInt::from(k)))
                .collect(),
        )
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    ///
    /// Panics if `div` is zero.
    pub fn div_rem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.deg().unwrap();
        let lead = div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1;
            let c = rem[k].clone();
            if c.is_zero() {
                rem.pop();
                continue;
            }
            let q = &c / &lead;
            quot[k - dd] = q.clone();
            for (i, dc) in div.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                let delta = dc * &q;
                rem[idx] = &rem[idx] - &delta;
            }
            rem.pop();
        }
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    /// Monic gcd via the Euclidean algorithm (monic-normalizing each step to
    /// contain coefficient growth). gcd(0,0) = 0.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone().monic();
        let mut b = other.clone().monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn monic(self) -> Self {
        match self.leading() {
            None => self,
            Some(l) if l.is_one() => self,
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }

    /// Squarefree part: `self / gcd(self, self')`, made monic.
    pub fn squarefree_part(&self) -> QPoly {
        if self.is_zero() || self.deg() == Some(0) {
            return self.clone().monic();
        }
        let g = self.gcd(&self.derivative());
        if g.deg() == Some(0) {
            return self.clone().monic();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    pub fn neg_poly(self) -> Self {
        QPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }

    /// Substitute another polynomial: `self(inner(x))`.
    pub fn compose(&self, inner: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &QPoly::constant(c.clone());
        }
        acc
    }

    /// Chebyshev polynomial of the first kind, `T_d(cos t) = cos(d t)`.
    pub fn chebyshev_t(d: u32) -> QPoly {
        let mut t0 = QPoly::one();
        let mut t1 = QPoly::x();
        if d == 0 {
            return t0;
        }
        let two_x = QPoly::x().scale(&BigRational::from(BigInt::from(2)));
        for _ in 1..d {
            let next = &(&two_x * &t1) - &t0;
            t0 = t1;
            t1 = next;
        }
        t1
    }

    /// Primitive integer coefficient vector with positive leading
    /// coefficient, ascending order. Zero polynomial gives an empty list.
    pub fn to_integer_primitive(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = num::integer::gcd(content, c.clone());
        }
        if !content.is_zero() {
            for c in ints.iter_mut() {
                *c = &*c / &content;
            }
        }
        if ints.last().map_or(false, |c| c.is_negative()) {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
        ints
    }

    /// Sturm chain of the squarefree part.
    pub fn sturm_chain(&self) -> Vec<QPoly> {
        let p = self.squarefree_part();
        let mut chain = vec![p.clone()];
        if p.deg().map_or(true, |d| d == 0) {
            return chain;
        }
        chain.push(p.derivative().monic());
        loop {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().monic());
        }
        chain
    }

    fn sign_variations(chain: &[QPoly], x: &BigRational) -> usize {
        let signs: Vec<i32> = chain
            .iter()
            .map(|p| crate::exact::rat::sign(&p.eval(x)))
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    /// Endpoints must not be roots.
    pub fn count_roots_open(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if self.is_zero() {
            panic!("root counting on the zero polynomial");
        }
        debug_assert!(!self.eval(lo).is_zero() && !self.eval(hi).is_zero());
        let chain = self.sturm_chain();
        Self::sign_variations(&chain, lo) - Self::sign_variations(&chain, hi)
    }

    /// Isolate all distinct real roots in the open interval `(lo, hi)`.
    ///
    /// Endpoint roots are divided out first (only interior roots are
    /// reported). Returned locations are sorted ascending.
    pub fn isolate_roots_open(&self, lo: &BigRational, hi: &BigRational) -> Vec<RootLoc> {
        assert!(lo < hi);
        let mut p = self.squarefree_part();
        if p.deg().map_or(true, |d| d == 0) {
            return vec![];
        }
        for e in [lo, hi] {
            while !p.is_zero() && p.eval(e).is_zero() {
                let lin = QPoly::from_coeffs(vec![-e.clone(), BigRational::one()]);
                let (q, r) = p.div_rem(&lin);
                debug_assert!(r.is_zero());
                p = q;
            }
        }
        if p.deg().map_or(true, |d| d == 0) {
            return vec![];
        }
        let chain = p.sturm_chain();
        let mut out = vec![];
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = Self::sign_variations(&chain, &a) - Self::sign_variations(&chain, &b);
            if n == 0 {
                continue;
            }
            if n == 1 {
                out.push(Self::tighten_single(&p, a, b));
                continue;
            }
            let mid = (&a + &b) / BigRational::from(BigInt::from(2));
            if p.eval(&mid).is_zero() {
                // Exact rational root at the midpoint; shrink a window around
                // it until it isolates this root alone, then recurse on the
                // flanks.
                let mut w = (&b - &a) / BigRational::from(BigInt::from(4));
                loop {
                    let cl = &mid - &w;
                    let ch = &mid + &w;
                    if p.eval(&cl).is_zero() || p.eval(&ch).is_zero() {
                        w = &w * BigRational::new(BigInt::from(3), BigInt::from(4));
                        continue;
                    }
                    if p.count_roots_open(&cl, &ch) == 1 {
                        out.push(RootLoc {
                            lo: cl.clone(),
                            hi: ch.clone(),
                            exact: Some(mid.clone()),
                        });
                        stack.push((a, cl));
                        stack.push((ch, b));
                        break;
                    }
                    w = &w / BigRational::from(BigInt::from(2));
                }
                continue;
            }
            stack.push((a, mid.clone()));
            stack.push((mid, b));
        }
        out.sort_by(|r, s| r.lo.cmp(&s.lo));
        out
    }

    /// Shrink `(a, b)` (known to hold exactly one root of squarefree `p`)
    /// a little and detect exact rational roots found by bisection.
    fn tighten_single(p: &QPoly, a: BigRational, b: BigRational) -> RootLoc {
        // Linear polynomials have an exactly known root.
        if p.deg() == Some(1) {
            let root = -p.coeff(0) / p.coeff(1);
            if root > a && root < b {
                return RootLoc {
                    lo: a,
                    hi: b,
                    exact: Some(root),
                };
            }
        }
        RootLoc { lo: a, hi: b, exact: None }
    }

    /// Find a point near `candidate` inside `(lo, hi)` that is not a root.
    fn nudge_nonroot(&self, candidate: BigRational, lo: &BigRational, hi: &BigRational) -> BigRational {
        let mut x = candidate;
        let mut step = (hi - lo) / BigRational::from(BigInt::from(8));
        loop {
            if &x > lo && &x < hi && !self.eval(&x).is_zero() {
                return x;
            }
            x = &x + &step;
            step = step / BigRational::from(BigInt::from(2));
        }
    }

    /// One bisection step on an isolating interval for a root of `self`
    /// (squarefree, endpoints non-roots). Returns the narrowed interval, or
    /// the exact root when bisection lands on it.
    pub fn refine_root_step(&self, loc: &RootLoc) -> RootLoc {
        if loc.exact.is_some() {
            let e = loc.exact.clone().unwrap();
            let w = (&loc.hi - &loc.lo) / BigRational::from(BigInt::from(4));
            return RootLoc {
                lo: &e - &w,
                hi: &e + &w,
                exact: Some(e),
            };
        }
        let mid = (&loc.lo + &loc.hi) / BigRational::from(BigInt::from(2));
        let fm = self.eval(&mid);
        if fm.is_zero() {
            return RootLoc {
                lo: loc.lo.clone(),
                hi: loc.hi.clone(),
                exact: Some(mid),
            };
        }
        let fl = self.eval(&loc.lo);
        if (fl.is_negative() && fm.is_negative()) || (fl.is_positive() && fm.is_positive()) {
            RootLoc { lo: mid, hi: loc.hi.clone(), exact: None }
        } else {
            RootLoc { lo: loc.lo.clone(), hi: mid, exact: None }
        }
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        QPoly::from_coeffs(out)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        QPoly::from_coeffs(out)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let p = QPoly::from_int_coeffs(&[-1, 0, 1]);
        let d = QPoly::from_int_coeffs(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, QPoly::from_int_coeffs(&[1, 1]));

        let a = QPoly::from_int_coeffs(&[-1, 0, 1]); // x^2-1
        let b = QPoly::from_int_coeffs(&[1, 2, 1]); // (x+1)^2
        let g = a.gcd(&b);
        assert_eq!(g, QPoly::from_int_coeffs(&[1, 1]).monic());
    }

    #[test]
    fn sturm_counts_roots() {
        // x^3 - x has roots -1, 0, 1.
        let p = QPoly::from_int_coeffs(&[0, -1, 0, 1]);
        assert_eq!(p.count_roots_open(&rat(-2, 1), &rat(2, 1)), 3);
        assert_eq!(p.count_roots_open(&rat(1, 2), &rat(2, 1)), 1);
        let roots = p.isolate_roots_open(&rat(-2, 1), &rat(2, 1));
        assert_eq!(roots.len(), 3);
    }

    #[test]
    fn isolation_skips_endpoint_roots() {
        // 4x^2 - 2x - 1: cosines of pi/5 and 3pi/5.
        let p = QPoly::from_int_coeffs(&[-1, -2, 4]);
        let roots = p.isolate_roots_open(&rat(-1, 1), &rat(1, 1));
        assert_eq!(roots.len(), 2);
        // (x-1)(2x-1): root at interval endpoint 1 is dropped.
        let q = QPoly::from_int_coeffs(&[1, -3, 2]);
        let roots = q.isolate_roots_open(&rat(-1, 1), &rat(1, 1));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].exact, Some(rat(1, 2)));
    }

    #[test]
    fn chebyshev_values() {
        let t2 = QPoly::chebyshev_t(2);
        assert_eq!(t2, QPoly::from_int_coeffs(&[-1, 0, 2]));
        let t5 = QPoly::chebyshev_t(5);
        assert_eq!(t5, QPoly::from_int_coeffs(&[0, 5, 0, -20, 0, 16]));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        let p = QPoly::from_int_coeffs(&[1, 2, 1]); // (x+1)^2
        assert_eq!(p.squarefree_part(), QPoly::from_int_coeffs(&[1, 1]).monic());
    }
}

//! Real algebraic numbers: a squarefree defining polynomial together with an
//! open isolating interval (or an exactly known rational). Equality is
//! decided symbolically through gcds and Sturm counts; strict order and
//! sign questions are settled by certified interval refinement, which
//! terminates because equality has already been excluded.

use super::interval::CertifiedInterval;
use super::qpoly::{QPoly, RootLoc};
use super::rat::pow2_neg;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone)]
pub struct RealAlgebraic {
    poly: QPoly,
    loc: RootLoc,
}

impl RealAlgebraic {
    /// Wrap an exactly known rational.
    pub fn from_rational(r: BigRational) -> Self {
        let one = BigRational::from(BigInt::from(1));
        let poly = QPoly::from_coeffs(vec![-r.clone(), one.clone()]);
        RealAlgebraic {
            poly,
            loc: RootLoc {
                lo: &r - &one,
                hi: &r + &one,
                exact: Some(r),
            },
        }
    }

    /// Wrap a root given by a squarefree polynomial and an isolating location.
    ///
    /// The caller guarantees that `loc` isolates exactly one root of `poly`
    /// and that the interval endpoints are not roots.
    pub fn from_root(poly: QPoly, loc: RootLoc) -> Self {
        debug_assert!(poly.deg().map_or(false, |d| d >= 1));
        debug_assert!(
            loc.exact.is_some() || poly.count_roots_open(&loc.lo, &loc.hi) == 1
        );
        RealAlgebraic { poly, loc }
    }

    /// All real roots of `poly` inside the open interval, ascending.
    pub fn isolate_in(poly: &QPoly, lo: &BigRational, hi: &BigRational) -> Vec<RealAlgebraic> {
        let sf = poly.squarefree_part();
        sf.isolate_roots_open(lo, hi)
            .into_iter()
            .map(|loc| RealAlgebraic { poly: sf.clone(), loc })
            .collect()
    }

    pub fn poly(&self) -> &QPoly {
        &self.poly
    }

    pub fn loc(&self) -> &RootLoc {
        &self.loc
    }

    pub fn exact_rational(&self) -> Option<&BigRational> {
        self.loc.exact.as_ref()
    }

    /// Certified enclosure of width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> CertifiedInterval {
        if let Some(r) = &self.loc.exact {
            return CertifiedInterval::point(r.clone());
        }
        let tol = pow2_neg(bits);
        let mut loc = self.loc.clone();
        while &loc.hi - &loc.lo > tol {
            loc = self.poly.refine_root_step(&loc);
            if let Some(r) = &loc.exact {
                return CertifiedInterval::point(r.clone());
            }
        }
        CertifiedInterval::new(loc.lo, loc.hi)
    }

    /// Does this number satisfy `f`? Exact.
    pub fn is_root_of(&self, f: &QPoly) -> bool {
        if f.is_zero() {
            return true;
        }
        if let Some(r) = &self.loc.exact {
            return f.eval(r).is_zero();
        }
        let g = f.gcd(&self.poly);
        if g.deg().map_or(true, |d| d == 0) {
            return false;
        }
        g.count_roots_open(&self.loc.lo, &self.loc.hi) == 1
    }

    /// Exact sign of `f` evaluated at this number.
    pub fn sign_of_poly_at(&self, f: &QPoly) -> i32 {
        if f.is_zero() {
            return 0;
        }
        if let Some(r) = &self.loc.exact {
            return crate::exact::rat::sign(&f.eval(r));
        }
        if self.is_root_of(f) {
            return 0;
        }
        let mut loc = self.loc.clone();
        loop {
            let (lo, hi) = f.eval_interval(&loc.lo, &loc.hi);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            loc = self.poly.refine_root_step(&loc);
            if let Some(r) = &loc.exact {
                return crate::exact::rat::sign(&f.eval(r));
            }
        }
    }

    /// Sign of the number itself.
    pub fn sign(&self) -> i32 {
        self.sign_of_poly_at(&QPoly::x())
    }

    /// Exact total-order comparison.
    pub fn cmp_value(&self, other: &RealAlgebraic) -> Ordering {
        match (&self.loc.exact, &other.loc.exact) {
            (Some(a), Some(b)) => return a.cmp(b),
            (Some(a), None) => {
                return if other.is_rational_value(a) {
                    Ordering::Equal
                } else {
                    other.cmp_against_rational(a).reverse()
                };
            }
            (None, Some(b)) => {
                return if self.is_rational_value(b) {
                    Ordering::Equal
                } else {
                    self.cmp_against_rational(b)
                };
            }
            (None, None) => {}
        }
        // Symbolic equality test through the gcd.
        let g = self.poly.gcd(&other.poly);
        if g.deg().map_or(false, |d| d >= 1) {
            let n1 = g.count_roots_open(&self.loc.lo, &self.loc.hi);
            let n2 = g.count_roots_open(&other.loc.lo, &other.loc.hi);
            if n1 == 1 && n2 == 1 {
                let lo = self.loc.lo.clone().min(other.loc.lo.clone());
                let hi = self.loc.hi.clone().max(other.loc.hi.clone());
                let overlap = !(self.loc.hi < other.loc.lo || other.loc.hi < self.loc.lo);
                if overlap && g.count_roots_open(&lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
        }
        // Distinct: refine until the intervals separate.
        let mut a = self.loc.clone();
        let mut b = other.loc.clone();
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if let (Some(x), Some(y)) = (&a.exact, &b.exact) {
                return x.cmp(y);
            }
            a = self.poly.refine_root_step(&a);
            b = other.poly.refine_root_step(&b);
        }
    }

    /// Is this number equal to the rational `r`?
    pub fn is_rational_value(&self, r: &BigRational) -> bool {
        if let Some(e) = &self.loc.exact {
            return e == r;
        }
        self.poly.eval(r).is_zero() && &self.loc.lo < r && r < &self.loc.hi
    }

    /// Order against a rational known to be unequal.
    fn cmp_against_rational(&self, r: &BigRational) -> Ordering {
        let mut loc = self.loc.clone();
        loop {
            if &loc.hi <= r {
                return Ordering::Less;
            }
            if r <= &loc.lo {
                return Ordering::Greater;
            }
            loc = self.poly.refine_root_step(&loc);
            if let Some(e) = &loc.exact {
                return e.cmp(r);
            }
        }
    }

    /// Primitive integer coefficients of the defining polynomial.
    pub fn defining_integer_poly(&self) -> Vec<BigInt> {
        self.poly.to_integer_primitive()
    }
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraic {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn sqrt2() -> RealAlgebraic {
        let p = QPoly::from_int_coeffs(&[-2, 0, 1]);
        RealAlgebraic::isolate_in(&p, &rat(0, 1), &rat(2, 1))
            .pop()
            .unwrap()
    }

    #[test]
    fn equality_across_polynomials() {
        // sqrt(2) as a root of x^2-2 and of x^4-4 (squarefree parts differ).
        let a = sqrt2();
        let q = QPoly::from_int_coeffs(&[-4, 0, 0, 0, 1]);
        let b = RealAlgebraic::isolate_in(&q, &rat(1, 1), &rat(2, 1))
            .pop()
            .unwrap();
        assert_eq!(a.cmp_value(&b), Ordering::Equal);
    }

    #[test]
    fn ordering_and_signs() {
        let a = sqrt2();
        let r = RealAlgebraic::from_rational(rat(3, 2));
        assert_eq!(a.cmp_value(&r), Ordering::Less);
        assert_eq!(a.sign(), 1);
        // sign of x^2 - 2 at sqrt2 is 0, of x^2 - 3 is negative.
        assert_eq!(a.sign_of_poly_at(&QPoly::from_int_coeffs(&[-2, 0, 1])), 0);
        assert_eq!(a.sign_of_poly_at(&QPoly::from_int_coeffs(&[-3, 0, 1])), -1);
    }

    #[test]
    fn rational_detection() {
        let p = QPoly::from_int_coeffs(&[-1, -2, 4]); // roots (1±sqrt5)/4
        let roots = RealAlgebraic::isolate_in(&p, &rat(-1, 1), &rat(1, 1));
        assert_eq!(roots.len(), 2);
        assert!(!roots[0].is_rational_value(&rat(-1, 4)));
        let half = RealAlgebraic::from_rational(rat(1, 2));
        assert_eq!(half.exact_rational(), Some(&rat(1, 2)));
    }
}

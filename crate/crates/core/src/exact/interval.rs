//! Certified interval numerics over exact rationals: enclosures of pi,
//! cos/sin at rational arguments, square roots, and arc-cosines. Every
//! returned interval is a mathematically rigorous enclosure; refinement
//! never widens.

use super::rat::pow2_neg;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::sync::Mutex;

/// A closed rational interval `[lo, hi]` certified to contain one real value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl CertifiedInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted interval");
        CertifiedInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        CertifiedInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    /// Sign if certified: `Some(1)` when `lo > 0`, `Some(-1)` when `hi < 0`,
    /// `None` while zero remains inside.
    pub fn sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(0)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CertifiedInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Self) -> Self {
        CertifiedInterval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Self {
        CertifiedInterval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        CertifiedInterval::new(lo, hi)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_negative() {
            CertifiedInterval::new(&self.hi * c, &self.lo * c)
        } else {
            CertifiedInterval::new(&self.lo * c, &self.hi * c)
        }
    }

    pub fn disjoint(&self, other: &Self) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }
}

/// Alternating-series arctangent of `1/x` for integer `x >= 2`: partial sums
/// bracket the value, so truncating after a term below the tolerance yields
/// a certified enclosure.
fn atan_recip(x: i64, tol: &BigRational) -> CertifiedInterval {
    let x = BigRational::from(BigInt::from(x));
    let x2 = &x * &x;
    let mut term = BigRational::one() / &x;
    let mut sum = BigRational::zero();
    let mut k: i64 = 0;
    loop {
        let contribution = &term / BigRational::from(BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum = &sum + &contribution;
            if &contribution < tol {
                // Last added term was positive: value in [sum - contribution, sum].
                return CertifiedInterval::new(&sum - &contribution, sum);
            }
        } else {
            sum = &sum - &contribution;
            if &contribution < tol {
                return CertifiedInterval::new(sum.clone(), &sum + &contribution);
            }
        }
        term = &term / &x2;
        k += 1;
    }
}

static PI_CACHE: Mutex<Option<(u32, CertifiedInterval)>> = Mutex::new(None);

/// Certified enclosure of pi of width at most `2^-bits` (Machin's formula).
pub fn pi_enclosure(bits: u32) -> CertifiedInterval {
    {
        let cache = PI_CACHE.lock().unwrap();
        if let Some((cached_bits, iv)) = cache.as_ref() {
            if *cached_bits >= bits {
                return iv.clone();
            }
        }
    }
    let tol = pow2_neg(bits + 8);
    let a = atan_recip(5, &tol);
    let b = atan_recip(239, &tol);
    let sixteen = BigRational::from(BigInt::from(16));
    let four = BigRational::from(BigInt::from(4));
    let iv = CertifiedInterval::new(
        &a.lo * &sixteen - &b.hi * &four,
        &a.hi * &sixteen - &b.lo * &four,
    );
    debug_assert!(iv.width() <= pow2_neg(bits));
    let mut cache = PI_CACHE.lock().unwrap();
    *cache = Some((bits, iv.clone()));
    iv
}

/// Certified cosine of an exact rational argument, via the Taylor series with
/// alternating-tail truncation. Valid for any |x|; intended for |x| < 8.
pub fn cos_enclosure_rational(x: &BigRational, bits: u32) -> CertifiedInterval {
    let tol = pow2_neg(bits + 2);
    let x2 = x * x;
    // Terms (-1)^k x^{2k} / (2k)!; once the term magnitude is decreasing and
    // below tol, the partial sums bracket the value.
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut k: u64 = 0;
    loop {
        if k % 2 == 0 {
            sum = &sum + &term;
        } else {
            sum = &sum - &term;
        }
        let next = &term * &x2
            / BigRational::from(BigInt::from((2 * k + 1) * (2 * k + 2)));
        // The tail is bounded by `next` once terms decrease (next < term).
        if next < term && next < tol {
            return if k % 2 == 0 {
                // Next omitted term is negative.
                CertifiedInterval::new(&sum - &next, sum)
            } else {
                CertifiedInterval::new(sum.clone(), &sum + &next)
            };
        }
        term = next;
        k += 1;
    }
}

/// Certified sine of an exact rational argument.
pub fn sin_enclosure_rational(x: &BigRational, bits: u32) -> CertifiedInterval {
    let tol = pow2_neg(bits + 2);
    let ax = x.abs();
    let x2 = &ax * &ax;
    // sin|x| = sum of (-1)^k |x|^{2k+1}/(2k+1)!, alternating with positive
    // decreasing term magnitudes once (2k+2)(2k+3) > x^2.
    let mut term = ax.clone();
    let mut sum = BigRational::zero();
    let mut k: u64 = 0;
    let iv = loop {
        if k % 2 == 0 {
            sum = &sum + &term;
        } else {
            sum = &sum - &term;
        }
        let next = &term * &x2
            / BigRational::from(BigInt::from((2 * k + 2) * (2 * k + 3)));
        if next < term && next < tol {
            break if k % 2 == 0 {
                CertifiedInterval::new(&sum - &next, sum)
            } else {
                CertifiedInterval::new(sum.clone(), &sum + &next)
            };
        }
        term = next;
        k += 1;
    };
    if x.is_negative() {
        iv.neg()
    } else {
        iv
    }
}

/// Certified cosine over a rational interval `[lo, hi]`, using the Lipschitz
/// bound |cos'| <= 1 around the midpoint.
pub fn cos_enclosure_interval(iv: &CertifiedInterval, bits: u32) -> CertifiedInterval {
    let mid = iv.mid();
    let half_width = iv.width() / BigRational::from(BigInt::from(2));
    let c = cos_enclosure_rational(&mid, bits);
    CertifiedInterval::new(&c.lo - &half_width, &c.hi + &half_width)
}

/// Certified sine over a rational interval.
pub fn sin_enclosure_interval(iv: &CertifiedInterval, bits: u32) -> CertifiedInterval {
    let mid = iv.mid();
    let half_width = iv.width() / BigRational::from(BigInt::from(2));
    let s = sin_enclosure_rational(&mid, bits);
    CertifiedInterval::new(&s.lo - &half_width, &s.hi + &half_width)
}

/// Certified square root of a nonnegative rational, width at most `2^-bits`.
pub fn sqrt_enclosure(x: &BigRational, bits: u32) -> CertifiedInterval {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return CertifiedInterval::point(BigRational::zero());
    }
    let one = BigRational::one();
    let (mut lo, mut hi) = if *x >= one {
        (BigRational::one(), x.clone())
    } else {
        (x.clone(), BigRational::one())
    };
    let tol = pow2_neg(bits);
    let two = BigRational::from(BigInt::from(2));
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        if &(&mid * &mid) <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    CertifiedInterval::new(lo, hi)
}

/// Certified square root over an interval of nonnegative rationals.
pub fn sqrt_enclosure_interval(iv: &CertifiedInterval, bits: u32) -> CertifiedInterval {
    let lo = if iv.lo.is_negative() {
        BigRational::zero()
    } else {
        iv.lo.clone()
    };
    let a = sqrt_enclosure(&lo, bits);
    let b = sqrt_enclosure(&iv.hi, bits);
    CertifiedInterval::new(a.lo, b.hi)
}

/// Certified arccos of the value enclosed by `x` (which must lie within
/// [-1, 1]): returns an angle interval of width at most `2^-bits + width(x)`
/// scaled by the derivative blowup near the endpoints; refines by bisection
/// in angle space against certified cosines.
///
/// Termination relies on the cut points being nonzero rationals, whose
/// cosines are irrational and therefore eventually separate from the
/// rational endpoints of `x`.
pub fn arccos_enclosure(x: &CertifiedInterval, bits: u32) -> CertifiedInterval {
    let pi = pi_enclosure(bits + 4);
    let two = BigRational::from(BigInt::from(2));
    // Invariant: cos(angle_hi) <= x.lo <= x.hi <= cos(angle_lo) is certified,
    // i.e. arccos(x) is inside [angle_lo, angle_hi].
    let mut angle_lo = BigRational::zero();
    let mut angle_hi = pi.hi.clone();
    let tol = pow2_neg(bits);
    while &angle_hi - &angle_lo > tol {
        let mid = (&angle_lo + &angle_hi) / &two;
        // Certified comparison of cos(mid) against the x interval.
        let mut prec = bits + 2;
        loop {
            let c = cos_enclosure_rational(&mid, prec);
            if c.lo > x.hi {
                // cos(mid) > x: arccos(x) > mid.
                angle_lo = mid;
                break;
            }
            if c.hi < x.lo {
                angle_hi = mid;
                break;
            }
            // cos(mid) overlaps [x.lo, x.hi]: either refine the cosine or
            // accept that mid is within the uncertainty of x itself.
            if c.width() < x.width() {
                // The ambiguity comes from x's own width; both placements of
                // mid are compatible. Conservatively widen nothing and stop.
                return CertifiedInterval::new(angle_lo, angle_hi);
            }
            prec += 32;
        }
    }
    CertifiedInterval::new(angle_lo, angle_hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn dec(s: &str) -> BigRational {
        crate::exact::rat::rat_from_str(s).unwrap()
    }

    #[test]
    fn pi_digits() {
        let pi = pi_enclosure(64);
        assert!(pi.width() <= pow2_neg(64));
        assert!(pi.contains(&dec("3.14159265358979323846264338328")));
    }

    #[test]
    fn cos_and_sqrt() {
        let c = cos_enclosure_rational(&rat(1, 1), 50);
        assert!(c.contains(&dec("0.540302305868139717400936607443")));
        let s = sqrt_enclosure(&rat(2, 1), 60);
        let target = dec("1.41421356237309504880168872421");
        assert!(s.contains(&target));
    }

    #[test]
    fn arccos_of_half() {
        // arccos(1/2) = pi/3
        let x = CertifiedInterval::point(rat(1, 2));
        let a = arccos_enclosure(&x, 40);
        assert!(a.contains(&dec("1.04719755119659774615421446109")));
        assert!(a.width() <= pow2_neg(40));
    }

    #[test]
    fn sin_signs() {
        let s = sin_enclosure_rational(&rat(1, 2), 40);
        assert_eq!(s.sign(), Some(1));
        let s = sin_enclosure_rational(&rat(-1, 2), 40);
        assert_eq!(s.sign(), Some(-1));
    }
}

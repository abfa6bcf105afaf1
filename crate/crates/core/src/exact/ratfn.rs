//! Elements of `Q(t) / Z[t^{±1}]` and of `Z_p(t) / Z_p[t^{±1}]` in a unique
//! canonical form: the values of Blanchfield self-pairings.
//!
//! Canonical decomposition. Every rational function `v` splits uniquely as
//! `v = L + r/g` with `L` a Laurent polynomial, `r, g` ordinary polynomials,
//! `deg r < deg g`, `g(0) != 0` and `gcd(r, g) = 1`. Modulo `Z[t^{±1}]`
//! only the fractional parts of `L`'s coefficients survive (they vanish
//! entirely mod p), and `g` is normalized primitive-integer with positive
//! leading coefficient (monic mod p). Two values are congruent exactly when
//! their canonical forms coincide, and the class is zero exactly when both
//! parts vanish.

use super::laurent::{rat_mod_p, LaurentPoly};
use super::qpoly::QPoly;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFnClass {
    modulus: Option<u64>,
    /// Laurent part with coefficients reduced into `[0, 1)`; zero mod p.
    laurent_part: LaurentPoly,
    /// Strictly proper fraction prime to `t`.
    num: QPoly,
    den: QPoly,
}

/// Division with remainder with an optional prime modulus on the
/// coefficients.
fn div_rem_mod(a: &QPoly, b: &QPoly, p: Option<u64>) -> (QPoly, QPoly) {
    match p {
        None => a.div_rem(b),
        Some(p) => {
            let (q, r) = a.div_rem(b);
            (reduce_poly(&q, p), reduce_poly(&r, p))
        }
    }
}

/// Reduce a rational-coefficient polynomial mod p. All denominators must be
/// invertible (guaranteed when inputs already live in `Z_p`).
fn reduce_poly(a: &QPoly, p: u64) -> QPoly {
    QPoly::from_coeffs(
        a.coeffs()
            .iter()
            .map(|c| rat_mod_p(c, p).expect("coefficient reducible"))
            .collect(),
    )
}

fn gcd_mod(a: &QPoly, b: &QPoly, p: Option<u64>) -> QPoly {
    match p {
        None => a.gcd(b),
        Some(p) => {
            let mut x = monic_mod(a, p);
            let mut y = monic_mod(b, p);
            while !y.is_zero() {
                let (_, r) = div_rem_mod(&x, &y, Some(p));
                x = y;
                y = monic_mod(&r, p);
            }
            x
        }
    }
}

fn monic_mod(a: &QPoly, p: u64) -> QPoly {
    match a.leading() {
        None => QPoly::zero(),
        Some(l) => {
            let inv = rat_mod_p(&l.recip(), p).expect("leading invertible");
            reduce_poly(&a.scale(&inv), p)
        }
    }
}

impl RatFnClass {
    pub fn zero(modulus: Option<u64>) -> Self {
        RatFnClass {
            modulus,
            laurent_part: LaurentPoly::zero(modulus),
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    /// The class of `f/g` in the quotient. `g` must be nonzero.
    pub fn from_fraction(f: &LaurentPoly, g: &LaurentPoly) -> Result<Self> {
        let modulus = f.modulus();
        assert_eq!(modulus, g.modulus(), "mixed moduli in class construction");
        if g.is_zero() {
            return Err(Error::BadParameter("zero denominator".into()));
        }
        if f.is_zero() {
            return Ok(RatFnClass::zero(modulus));
        }
        // Split the denominator's unit part: g = t^k g0, g0(0) != 0.
        let (g0, k) = g.as_poly();
        // v = (f t^{-k}) / g0.
        let shifted = f.shift(-k);
        let (mut f0, mut m) = shifted.as_poly();
        if m > 0 {
            // Fold a positive shift into the ordinary polynomial.
            f0 = &f0 * &monomial_power(m as usize);
            m = 0;
        }

        // Ordinary division throws most of the Laurent part off.
        let (q, mut r) = div_rem_mod(&f0, &g0, modulus);
        let mut laurent = LaurentPoly::from_poly(&q, m, modulus);

        // Pull the remaining t^m (m < 0) out of the proper fraction:
        // r/(t g0) = (r(0)/g0(0)) / t + s/g0 with s = (r - A g0)/t.
        let g0_at_zero = g0.coeff(0);
        while m < 0 && !r.is_zero() {
            let a = match modulus {
                None => r.coeff(0) / &g0_at_zero,
                Some(p) => {
                    let inv = rat_mod_p(&g0_at_zero.recip(), p).expect("g0(0) invertible");
                    rat_mod_p(&(r.coeff(0) * inv), p).expect("residue")
                }
            };
            // s = (r - a g0) / t
            let diff = &r - &g0.scale(&a);
            let mut coeffs = diff.coeffs().to_vec();
            if !coeffs.is_empty() {
                debug_assert!(coeffs[0].is_zero() || modulus.is_some());
                if modulus.is_some() {
                    // Residue arithmetic may leave a multiple of p at 0.
                    coeffs[0] = BigRational::zero();
                }
                coeffs.remove(0);
            }
            r = match modulus {
                None => QPoly::from_coeffs(coeffs),
                Some(p) => reduce_poly(&QPoly::from_coeffs(coeffs), p),
            };
            laurent = laurent.add(&LaurentPoly::monomial(m, a, modulus));
            m += 1;
        }
        if m < 0 {
            // r became zero before the shift was used up; nothing remains.
        }

        let (num, den) = reduce_proper(&r, &g0, modulus);
        Ok(RatFnClass {
            modulus,
            laurent_part: reduce_laurent_to_quotient(&laurent, modulus),
            num,
            den,
        })
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.laurent_part.is_zero() && self.num.is_zero()
    }

    pub fn laurent_part(&self) -> &LaurentPoly {
        &self.laurent_part
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    /// Raw fraction `(f, g)` with `f/g` representing this class.
    pub fn to_raw(&self) -> (LaurentPoly, LaurentPoly) {
        let den_l = LaurentPoly::from_poly(&self.den, 0, self.modulus);
        let num_l = LaurentPoly::from_poly(&self.num, 0, self.modulus);
        let f = self.laurent_part.mul(&den_l).add(&num_l);
        (f, den_l)
    }

    pub fn add(&self, other: &RatFnClass) -> Result<RatFnClass> {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
        let (f1, g1) = self.to_raw();
        let (f2, g2) = other.to_raw();
        let num = f1.mul(&g2).add(&f2.mul(&g1));
        let den = g1.mul(&g2);
        RatFnClass::from_fraction(&num, &den)
    }

    pub fn neg(&self) -> Result<RatFnClass> {
        let (f, g) = self.to_raw();
        RatFnClass::from_fraction(&f.neg(), &g)
    }

    /// Multiply by a Laurent polynomial.
    pub fn mul_laurent(&self, l: &LaurentPoly) -> Result<RatFnClass> {
        let (f, g) = self.to_raw();
        RatFnClass::from_fraction(&f.mul(l), &g)
    }

    /// The involution `t -> t^{-1}`.
    pub fn bar(&self) -> Result<RatFnClass> {
        let (f, g) = self.to_raw();
        RatFnClass::from_fraction(&f.bar(), &g.bar())
    }

    /// Reduce the canonical representative mod p.
    pub fn reduce_mod(&self, p: u64) -> Result<RatFnClass> {
        assert!(self.modulus.is_none(), "already reduced");
        // Laurent part: each coefficient must be reducible; reduced values
        // are integral, so the part dies in the quotient.
        for (_, c) in self.laurent_part.iter() {
            rat_mod_p(c, p)?;
        }
        let num = try_reduce_poly(&self.num, p)?;
        let den = try_reduce_poly(&self.den, p)?;
        if den.is_zero() {
            return Err(Error::BadReduction {
                p,
                detail: "denominator vanishes mod p".into(),
            });
        }
        let f = LaurentPoly::from_poly(&num, 0, Some(p));
        let g = LaurentPoly::from_poly(&den, 0, Some(p));
        RatFnClass::from_fraction(&f, &g)
    }

    /// Largest absolute value among the integer coefficients of the
    /// integer-cleared representative `F/G` of the proper part; the paper's
    /// sufficiency bound for good primes.
    pub fn coefficient_bound(&self) -> BigInt {
        let mut bound = BigInt::zero();
        let ints = self.num.to_integer_primitive();
        let dents = self.den.to_integer_primitive();
        // Clearing denominators multiplies num by the lcm kappa; the
        // resulting integer pair is (kappa * num, kappa-ish den). We bound
        // conservatively by the primitive parts of both and the cleared
        // numerator.
        let mut denom_lcm = BigInt::one();
        for c in self.num.coeffs() {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        for c in self.num.coeffs() {
            let cleared = c.numer() * (&denom_lcm / c.denom());
            bound = bound.max(cleared.abs());
        }
        for c in ints.iter().chain(dents.iter()) {
            bound = bound.max(c.abs());
        }
        for (_, c) in self.laurent_part.iter() {
            bound = bound.max(c.numer().abs().max(c.denom().abs()));
        }
        bound
    }
}

fn monomial_power(k: usize) -> QPoly {
    let mut coeffs = vec![BigRational::zero(); k + 1];
    coeffs[k] = BigRational::one();
    QPoly::from_coeffs(coeffs)
}

fn try_reduce_poly(a: &QPoly, p: u64) -> Result<QPoly> {
    let mut coeffs = Vec::with_capacity(a.coeffs().len());
    for c in a.coeffs() {
        coeffs.push(rat_mod_p(c, p)?);
    }
    Ok(QPoly::from_coeffs(coeffs))
}

/// Reduce `r/g` (deg r < deg g, g(0) != 0) to lowest terms and normalize
/// the denominator: primitive integer with positive lead over Q, monic mod p.
fn reduce_proper(r: &QPoly, g: &QPoly, modulus: Option<u64>) -> (QPoly, QPoly) {
    if r.is_zero() {
        return (QPoly::zero(), QPoly::one());
    }
    let d = gcd_mod(r, g, modulus);
    let (mut num, mut den) = if d.deg().map_or(false, |deg| deg >= 1) {
        let (n, nr) = div_rem_mod(r, &d, modulus);
        let (g2, gr) = div_rem_mod(g, &d, modulus);
        debug_assert!(nr.is_zero() && gr.is_zero());
        (n, g2)
    } else {
        (r.clone(), g.clone())
    };
    if den.deg() == Some(0) {
        // Fully cancelled: only possible when the numerator vanished.
        debug_assert!(num.is_zero());
        return (QPoly::zero(), QPoly::one());
    }
    match modulus {
        None => {
            // Normalize den to its primitive integer form with positive
            // lead; num absorbs the reciprocal of the removed content.
            let ints = den.to_integer_primitive();
            let prim = QPoly::from_bigint_coeffs(&ints);
            let (content, rem) = den.div_rem(&prim);
            debug_assert!(rem.is_zero() && content.deg() == Some(0));
            num = num.scale(&content.coeff(0).recip());
            den = prim;
        }
        Some(p) => {
            let l = den.leading().unwrap().clone();
            let inv = rat_mod_p(&l.recip(), p).expect("leading invertible");
            num = reduce_poly(&num.scale(&inv), p);
            den = monic_mod(&den, p);
        }
    }
    (num, den)
}

/// Keep only what survives in the quotient by integral Laurent polynomials:
/// fractional parts of rational coefficients, nothing mod p.
fn reduce_laurent_to_quotient(l: &LaurentPoly, modulus: Option<u64>) -> LaurentPoly {
    match modulus {
        Some(p) => LaurentPoly::zero(Some(p)),
        None => LaurentPoly::from_pairs(
            l.iter().map(|(e, c)| (*e, c - c.floor())),
            None,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn lp(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn trefoil_self_pairing_shape() {
        // (t-1)^2 / (t^2 - t + 1) = 1 - t/(t^2 - t + 1):
        // canonical class has numerator -t, denominator t^2 - t + 1.
        let f = lp(&[1, -2, 1]);
        let g = lp(&[1, -1, 1]);
        let c = RatFnClass::from_fraction(&f, &g).unwrap();
        assert!(c.laurent_part().is_zero());
        assert_eq!(c.numerator(), &QPoly::from_int_coeffs(&[0, -1]));
        assert_eq!(c.denominator(), &QPoly::from_int_coeffs(&[1, -1, 1]));
        assert!(!c.is_zero());
    }

    #[test]
    fn integral_classes_vanish() {
        // (t^3 - t) / (t - 1) = t^2 + t is integral.
        let f = lp(&[0, -1, 0, 1]);
        let g = lp(&[-1, 1]);
        let c = RatFnClass::from_fraction(&f, &g).unwrap();
        assert!(c.is_zero());
        // Same with units of the Laurent ring: t^{-1} (t^2 - 1)/(t - 1).
        let f2 = lp(&[-1, 0, 1]).shift(-1);
        let c2 = RatFnClass::from_fraction(&f2, &g).unwrap();
        assert!(c2.is_zero());
    }

    #[test]
    fn zero_iff_denominator_divides() {
        let g = lp(&[1, -1, 1]);
        let f = g.mul(&lp(&[3, 0, 2]));
        assert!(RatFnClass::from_fraction(&f, &g).unwrap().is_zero());
        let f2 = f.add(&lp(&[0, 1]));
        assert!(!RatFnClass::from_fraction(&f2, &g).unwrap().is_zero());
    }

    #[test]
    fn fractional_constants_survive() {
        // (1/2) / 1: nonzero in Q(t)/Z[t^pm1].
        let half = LaurentPoly::monomial(0, rat(1, 2), None);
        let one = LaurentPoly::one(None);
        let c = RatFnClass::from_fraction(&half, &one).unwrap();
        assert!(!c.is_zero());
        assert!(c.numerator().is_zero());
        assert_eq!(c.laurent_part().coeff(0), rat(1, 2));
        // ...but it dies mod 3 (1/2 = 2 is integral).
        let r = c.reduce_mod(3).unwrap();
        assert!(r.is_zero());
        // and is not reducible mod 2.
        assert!(c.reduce_mod(2).is_err());
    }

    #[test]
    fn mod_p_classes() {
        // -t/(t^2 - t + 1) mod 2 = t/(t^2 + t + 1), nonzero.
        let f = lp(&[0, -1]);
        let g = lp(&[1, -1, 1]);
        let c = RatFnClass::from_fraction(&f, &g)
            .unwrap()
            .reduce_mod(2)
            .unwrap();
        assert!(!c.is_zero());
        assert_eq!(c.denominator(), &QPoly::from_int_coeffs(&[1, 1, 1]));
        // Laurent units cancel mod p too.
        let c3 = RatFnClass::from_fraction(&f, &g)
            .unwrap()
            .reduce_mod(3)
            .unwrap();
        assert!(!c3.is_zero());
    }

    #[test]
    fn negative_exponents_in_fraction() {
        // t^{-1}/(t - 1) = 1/(t(t-1)) = -1/t + 1/(t-1) (partial fractions):
        // Laurent part -t^{-1} has fractional part 0; proper part 1/(t-1).
        let f = LaurentPoly::one(None).shift(-1);
        let g = lp(&[-1, 1]);
        let c = RatFnClass::from_fraction(&f, &g).unwrap();
        assert!(c.laurent_part().is_zero());
        assert_eq!(c.denominator(), &QPoly::from_int_coeffs(&[-1, 1]));
        assert_eq!(c.numerator(), &QPoly::from_int_coeffs(&[1]));
        // Round trip through to_raw is class-equal.
        let (rf, rg) = c.to_raw();
        let c2 = RatFnClass::from_fraction(&rf, &rg).unwrap();
        assert_eq!(c, c2);
    }

    #[test]
    fn hermitian_bar() {
        let f = lp(&[0, -1]);
        let g = lp(&[1, -1, 1]);
        let c = RatFnClass::from_fraction(&f, &g).unwrap();
        let b = c.bar().unwrap();
        // -t^{-1}/(t^{-2} - t^{-1} + 1) = -t/(1 - t + t^2): self-conjugate.
        assert_eq!(b, c);
    }
}

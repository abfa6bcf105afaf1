//! Laurent polynomials with rational or mod-p coefficients: Alexander
//! polynomials, axis coordinates in the Alexander module, and the numerators
//! and denominators of Blanchfield values. A single container carries an
//! optional prime modulus so the rational and mod-p Blanchfield pipelines
//! share one codepath.

use super::qpoly::QPoly;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
    modulus: Option<u64>,
}

/// Reduce a rational into `Z_p` (as an integer-valued rational in `[0, p)`).
pub fn rat_mod_p(r: &BigRational, p: u64) -> Result<BigRational> {
    let pb = BigInt::from(p);
    let den = r.denom() % &pb;
    if den.is_zero() {
        return Err(Error::BadReduction {
            p,
            detail: format!(
                "denominator of {} vanishes mod {}",
                super::rat::rat_to_string(r),
                p
            ),
        });
    }
    let den_u = to_residue(&den, p);
    let inv = mod_inverse(den_u, p).ok_or(Error::BadReduction {
        p,
        detail: "denominator not invertible".into(),
    })?;
    let num = to_residue(&(r.numer() % &pb), p);
    let value = ((num as u128 * inv as u128) % p as u128) as u64;
    Ok(BigRational::from(BigInt::from(value)))
}

fn to_residue(x: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut m = x % &pb;
    if m.is_negative() {
        m += &pb;
    }
    let (_, digits) = m.to_u64_digits();
    *digits.first().unwrap_or(&0)
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    // Extended Euclid on machine integers (p prime, p < 2^63).
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(((t % p as i128 + p as i128) % p as i128) as u64)
}

impl LaurentPoly {
    pub fn zero(modulus: Option<u64>) -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
            modulus,
        }
    }

    pub fn one(modulus: Option<u64>) -> Self {
        LaurentPoly::monomial(0, BigRational::one(), modulus)
    }

    pub fn monomial(exp: i64, coef: BigRational, modulus: Option<u64>) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(exp, coef);
        LaurentPoly { coeffs, modulus }.reduced()
    }

    /// `t - 1`, the ubiquitous factor in Blanchfield formulas.
    pub fn t_minus_one(modulus: Option<u64>) -> Self {
        LaurentPoly::from_pairs(
            [(1, BigRational::one()), (0, -BigRational::one())],
            modulus,
        )
    }

    pub fn from_pairs<I>(pairs: I, modulus: Option<u64>) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut coeffs: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in pairs {
            let entry = coeffs.entry(e).or_insert_with(BigRational::zero);
            *entry = &*entry + &c;
        }
        LaurentPoly { coeffs, modulus }.reduced()
    }

    pub fn from_int_coeffs(ascending_from_zero: &[i64]) -> Self {
        LaurentPoly::from_pairs(
            ascending_from_zero
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as i64, BigRational::from(BigInt::from(c)))),
            None,
        )
    }

    fn reduced(mut self) -> Self {
        if let Some(p) = self.modulus {
            let mut out = BTreeMap::new();
            for (e, c) in std::mem::take(&mut self.coeffs) {
                let r = rat_mod_p(&c, p).expect("coefficient reducible mod p");
                if !r.is_zero() {
                    out.insert(e, r);
                }
            }
            self.coeffs = out;
        } else {
            self.coeffs.retain(|_, c| !c.is_zero());
        }
        self
    }

    /// Reduce rational coefficients modulo a prime, failing when any
    /// denominator vanishes mod p.
    pub fn reduce_mod(&self, p: u64) -> Result<LaurentPoly> {
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let r = rat_mod_p(c, p)?;
            if !r.is_zero() {
                coeffs.insert(*e, r);
            }
        }
        Ok(LaurentPoly {
            coeffs,
            modulus: Some(p),
        })
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Span of the support: `max_exp - min_exp`; the Laurent analogue of the
    /// degree (0 for monomials, `None` for zero).
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    fn assert_compatible(&self, other: &LaurentPoly) {
        assert_eq!(
            self.modulus, other.modulus,
            "mixed moduli in Laurent arithmetic"
        );
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_compatible(other);
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            let entry = coeffs.entry(*e).or_insert_with(BigRational::zero);
            *entry = &*entry + c;
        }
        LaurentPoly {
            coeffs,
            modulus: self.modulus,
        }
        .reduced()
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
            modulus: self.modulus,
        }
        .reduced()
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        self.assert_compatible(other);
        let mut coeffs: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let entry = coeffs.entry(e1 + e2).or_insert_with(BigRational::zero);
                *entry = &*entry + &(c1 * c2);
            }
        }
        LaurentPoly {
            coeffs,
            modulus: self.modulus,
        }
        .reduced()
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
            modulus: self.modulus,
        }
        .reduced()
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            modulus: self.modulus,
        }
    }

    /// The involution `t -> t^{-1}`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
            modulus: self.modulus,
        }
    }

    /// Unit normalization: lowest exponent moved to 0 and the leading
    /// coefficient made positive (rational coefficients) or 1 (mod p).
    /// Idempotent; inputs equal up to `±t^k` (or `c t^k` mod p) map to
    /// identical outputs.
    pub fn normalize(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let shifted = self.shift(-self.min_exp().unwrap());
        let lead = shifted.coeff(shifted.max_exp().unwrap());
        match self.modulus {
            None => {
                if lead.is_negative() {
                    shifted.neg()
                } else {
                    shifted
                }
            }
            Some(p) => {
                let inv = rat_mod_p(&lead.recip(), p).expect("leading invertible");
                shifted.scale(&inv)
            }
        }
    }

    /// Is this a unit of the ambient Laurent ring (up to the allowed units)?
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.span() == Some(0)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        assert!(!x.is_zero(), "Laurent evaluation at 0");
        let mut acc = BigRational::zero();
        let inv = x.recip();
        for (e, c) in &self.coeffs {
            let mut term = c.clone();
            let (base, n) = if *e >= 0 { (x, *e) } else { (&inv, -*e) };
            for _ in 0..n {
                term = &term * base;
            }
            acc = &acc + &term;
        }
        acc
    }

    /// An ordinary polynomial `q` and shift `k` with `self = t^k q(t)` and
    /// `q(0) != 0`. Zero maps to `(0, 0)`.
    pub fn as_poly(&self) -> (QPoly, i64) {
        match self.min_exp() {
            None => (QPoly::zero(), 0),
            Some(min) => {
                let deg = (self.max_exp().unwrap() - min) as usize;
                let mut coeffs = vec![BigRational::zero(); deg + 1];
                for (e, c) in &self.coeffs {
                    coeffs[(e - min) as usize] = c.clone();
                }
                (QPoly::from_coeffs(coeffs), min)
            }
        }
    }

    pub fn from_poly(p: &QPoly, shift: i64, modulus: Option<u64>) -> LaurentPoly {
        LaurentPoly::from_pairs(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c.clone())),
            modulus,
        )
    }

    /// For a bar-symmetric Laurent polynomial (`f(t) = f(1/t)`), the unique
    /// `P` with `f(e^{i theta}) = P(cos theta)`, through `t^j + t^{-j} =
    /// 2 T_j(cos theta)`.
    ///
    /// Panics if the polynomial is not bar-symmetric or has a modulus.
    pub fn cos_transform(&self) -> QPoly {
        assert!(self.modulus.is_none(), "cosine transform needs Q coefficients");
        assert!(self == &self.bar(), "cosine transform needs bar symmetry");
        let mut result = QPoly::constant(self.coeff(0));
        let top = self.max_exp().unwrap_or(0);
        // 2 T_j recurrence: q_0 = 2, q_1 = 2x, q_{j+1} = 2x q_j - q_{j-1}.
        let two_x = QPoly::x().scale(&BigRational::from(BigInt::from(2)));
        let mut q_prev = QPoly::constant(BigRational::from(BigInt::from(2)));
        let mut q_cur = two_x.clone();
        for j in 1..=top {
            let c = self.coeff(j);
            if !c.is_zero() {
                result = &result + &q_cur.scale(&c);
            }
            let next = &(&two_x * &q_cur) - &q_prev;
            q_prev = q_cur;
            q_cur = next;
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn t() -> LaurentPoly {
        LaurentPoly::monomial(1, rat(1, 1), None)
    }

    #[test]
    fn normalization_examples() {
        // -t^2 + t - 1  ->  t^2 - t + 1
        let f = LaurentPoly::from_int_coeffs(&[-1, 1, -1]);
        let n = f.normalize();
        assert_eq!(n, LaurentPoly::from_int_coeffs(&[1, -1, 1]));
        // t^{-3} (t^2 - 3t + 1) -> t^2 - 3t + 1
        let g = LaurentPoly::from_int_coeffs(&[1, -3, 1]).shift(-3);
        assert_eq!(g.normalize(), LaurentPoly::from_int_coeffs(&[1, -3, 1]));
        // 0 -> 0
        assert!(LaurentPoly::zero(None).normalize().is_zero());
        // Idempotence.
        assert_eq!(n.normalize(), n);
    }

    #[test]
    fn mod_p_reduction() {
        let f = LaurentPoly::from_int_coeffs(&[1, -1, 1]); // t^2 - t + 1
        let f2 = f.reduce_mod(2).unwrap();
        assert_eq!(f2.coeff(1), rat(1, 1)); // -1 = 1 mod 2
        let half = LaurentPoly::monomial(0, rat(1, 2), None);
        assert!(half.reduce_mod(2).is_err());
        assert_eq!(half.reduce_mod(3).unwrap().coeff(0), rat(2, 1)); // 1/2 = 2 mod 3
    }

    #[test]
    fn cosine_transform() {
        // t + t^{-1} - 1 -> 2x - 1
        let f = t().add(&t().bar()).sub(&LaurentPoly::one(None));
        assert_eq!(f.cos_transform(), QPoly::from_int_coeffs(&[-1, 2]));
        // t^2 + t^{-2} - (t + t^{-1}) + 1 -> 4x^2 - 2x - 1
        let t2 = t().mul(&t());
        let g = t2
            .add(&t2.bar())
            .sub(&t().add(&t().bar()))
            .add(&LaurentPoly::one(None));
        assert_eq!(g.cos_transform(), QPoly::from_int_coeffs(&[-1, -2, 4]));
    }

    #[test]
    fn bar_and_eval() {
        let f = LaurentPoly::from_int_coeffs(&[1, 2]).shift(-1); // t^{-1} + 2
        assert_eq!(f.bar().coeff(1), rat(1, 1));
        assert_eq!(f.eval(&rat(2, 1)), rat(5, 2));
    }
}

//! The algebra of signature jump functions as formal objects.
//!
//! A jump function is a finitely supported map from angles in `(0, pi]` to
//! nonzero integers, extended to the whole circle by evenness
//! (`delta(theta) = delta(-theta)`) and 2pi-periodicity. Combination,
//! reparametrization `theta -> f(d theta)`, the iterated-satellite
//! accumulator, avoidance sets, point evaluation and rational-period tests
//! all stay exact.

use crate::exact::angle::Angle;
use crate::{Error, Result};
use num::rational::BigRational;
use std::cmp::Ordering;

#[derive(Debug, Clone)]
pub struct JumpFunction {
    // Sorted ascending by angle; angles in (0, pi]; values nonzero.
    support: Vec<(Angle, i64)>,
}

impl JumpFunction {
    pub fn empty() -> Self {
        JumpFunction { support: vec![] }
    }

    /// Build from (angle, value) pairs: angles must lie in `(0, pi]`;
    /// duplicates are merged by addition and zero values pruned.
    pub fn from_pairs(pairs: Vec<(Angle, i64)>) -> Result<Self> {
        let mut out: Vec<(Angle, i64)> = vec![];
        for (angle, value) in pairs {
            if angle.is_zero() {
                return Err(Error::BadParameter(
                    "jump support angle at 0 is not allowed".into(),
                ));
            }
            if !angle.in_open_upper()? && angle.try_cmp(&Angle::pi())? != Ordering::Equal {
                return Err(Error::BadParameter(
                    "jump support angle outside (0, pi]".into(),
                ));
            }
            if value == 0 {
                continue;
            }
            let mut placed = false;
            for i in 0..out.len() {
                match angle.try_cmp(&out[i].0)? {
                    Ordering::Equal => {
                        out[i].1 += value;
                        placed = true;
                        break;
                    }
                    Ordering::Less => {
                        out.insert(i, (angle.clone(), value));
                        placed = true;
                        break;
                    }
                    Ordering::Greater => {}
                }
            }
            if !placed {
                out.push((angle, value));
            }
        }
        out.retain(|(_, v)| *v != 0);
        Ok(JumpFunction { support: out })
    }

    pub fn support(&self) -> &[(Angle, i64)] {
        &self.support
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support_angles(&self) -> Vec<Angle> {
        self.support.iter().map(|(a, _)| a.clone()).collect()
    }

    /// Value at any angle in `(0, 2pi)`, through the even periodic
    /// extension.
    pub fn eval(&self, theta: &Angle) -> Result<i64> {
        if theta.is_zero() {
            return Err(Error::BadParameter("jump evaluation at 0".into()));
        }
        let folded = theta.fold()?;
        for (a, v) in &self.support {
            if folded.try_cmp(a)? == Ordering::Equal {
                return Ok(*v);
            }
        }
        Ok(0)
    }

    /// Does the support contain an angle equal to `theta` (already folded
    /// into `(0, pi]`)?
    pub fn supports_angle(&self, theta: &Angle) -> Result<bool> {
        for (a, _) in &self.support {
            if theta.try_cmp(a)? == Ordering::Equal {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Pointwise integer combination `sum_i coeffs[i] * fs[i]`.
    pub fn combine(coeffs: &[i64], fs: &[&JumpFunction]) -> Result<JumpFunction> {
        if coeffs.len() != fs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients against {} jump functions",
                coeffs.len(),
                fs.len()
            )));
        }
        let mut pairs = vec![];
        for (c, f) in coeffs.iter().zip(fs) {
            if *c == 0 {
                continue;
            }
            for (a, v) in &f.support {
                pairs.push((a.clone(), c * v));
            }
        }
        JumpFunction::from_pairs(pairs)
    }

    pub fn add(&self, other: &JumpFunction) -> Result<JumpFunction> {
        JumpFunction::combine(&[1, 1], &[self, other])
    }

    pub fn scale(&self, c: i64) -> Result<JumpFunction> {
        JumpFunction::combine(&[c], &[self])
    }

    pub fn neg(&self) -> Result<JumpFunction> {
        self.scale(-1)
    }

    /// Reparametrization `theta -> f(d theta)` as a jump function on
    /// `(0, pi]`: the exact preimages of each support angle under scaling
    /// by `d`, with values copied (even extension). `d = 0` gives the zero
    /// function (`f(0) = 0`).
    pub fn reparam(&self, d: u64) -> Result<JumpFunction> {
        if d == 0 {
            return Ok(JumpFunction::empty());
        }
        let mut pairs = vec![];
        for (psi, v) in &self.support {
            let psi_is_pi = psi.try_cmp(&Angle::pi())? == Ordering::Equal;
            for k in 0..d {
                for mirrored in [false, true] {
                    if mirrored && psi_is_pi {
                        // 2pi - pi = pi: the mirrored branch repeats the
                        // direct one.
                        continue;
                    }
                    if let Some(theta) = psi.preimage_under_scaling(d, k, mirrored)? {
                        pairs.push((theta, *v));
                    }
                }
            }
        }
        JumpFunction::from_pairs(pairs)
    }

    /// Iterated-satellite accumulator:
    /// `f_n(theta) = sum_{k=0}^{n} delta_R(d^k theta)`.
    pub fn accumulate(delta_r: &JumpFunction, d: u64, n: u32) -> Result<JumpFunction> {
        if d < 2 {
            return Err(Error::BadParameter(
                "accumulator needs scaling factor at least 2".into(),
            ));
        }
        let mut total = JumpFunction::empty();
        let mut power: u64 = 1;
        for _ in 0..=n {
            total = total.add(&delta_r.reparam(power)?)?;
            power = power.checked_mul(d).ok_or_else(|| {
                Error::BadParameter("scaling power overflow in accumulator".into())
            })?;
        }
        Ok(total)
    }

    /// The avoidance set `S`: union of the supports of `f_n` and
    /// `f_{n-1}` (with `f_{-1}` the zero function when `n = 0`).
    pub fn avoidance_set(delta_r: &JumpFunction, d: u64, n: u32) -> Result<Vec<Angle>> {
        let f_n = JumpFunction::accumulate(delta_r, d, n)?;
        let union = if n == 0 {
            f_n
        } else {
            let f_prev = JumpFunction::accumulate(delta_r, d, n - 1)?;
            // Union of supports: combine with weights that cannot cancel is
            // wrong in general, so take the union explicitly.
            let mut angles = f_n.support_angles();
            for a in f_prev.support_angles() {
                let mut seen = false;
                for b in &angles {
                    if a.try_cmp(b)? == Ordering::Equal {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    angles.push(a);
                }
            }
            let mut paired: Vec<(Angle, i64)> = angles.into_iter().map(|a| (a, 1)).collect();
            paired.sort_by(|x, y| x.0.try_cmp(&y.0).expect("closed-form support angles"));
            return Ok(paired.into_iter().map(|(a, _)| a).collect());
        };
        Ok(union.support_angles())
    }

    /// Decide whether the even periodic extension is invariant under
    /// translation by `2pi * (a/b)`.
    pub fn has_period(&self, period_of_two_pi: &BigRational) -> Result<bool> {
        if self.support.is_empty() {
            return Ok(true);
        }
        // Unfold onto [0, 2pi): theta and 2pi - theta carry the same value.
        let mut unfolded: Vec<(Angle, i64)> = vec![];
        for (a, v) in &self.support {
            unfolded.push((a.clone(), *v));
            if a.try_cmp(&Angle::pi())? != Ordering::Equal {
                unfolded.push((a.reflect(), *v));
            }
        }
        let shift = period_of_two_pi * BigRational::from(num::bigint::BigInt::from(2));
        for (u, v) in &unfolded {
            let moved = u.shift_rational_pi(&shift)?;
            if moved.is_zero() {
                return Ok(false);
            }
            let mut matched = false;
            for (w, val) in &unfolded {
                if moved.try_cmp(w)? == Ordering::Equal {
                    if val != v {
                        return Ok(false);
                    }
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl PartialEq for JumpFunction {
    fn eq(&self, other: &Self) -> bool {
        if self.support.len() != other.support.len() {
            return false;
        }
        self.support.iter().zip(&other.support).all(|((a, v), (b, w))| {
            v == w && a.try_cmp(b).map_or(false, |o| o == Ordering::Equal)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn jf(pairs: Vec<(Angle, i64)>) -> JumpFunction {
        JumpFunction::from_pairs(pairs).unwrap()
    }

    fn trefoil_delta() -> JumpFunction {
        jf(vec![(Angle::rational_pi_frac(1, 3), -2)])
    }

    #[test]
    fn combine_and_cancel() {
        let t = trefoil_delta();
        let m = t.neg().unwrap();
        assert!(t.add(&m).unwrap().is_empty());
        let doubled = t.scale(2).unwrap();
        assert_eq!(doubled.support()[0].1, -4);
        let other = jf(vec![(Angle::rational_pi_frac(1, 5), -2)]);
        let sum = t.add(&other).unwrap();
        assert_eq!(sum.support().len(), 2);
        // Sorted ascending: pi/5 before pi/3.
        assert_eq!(
            sum.support()[0].0.try_cmp(&Angle::rational_pi_frac(1, 5)).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn reparam_examples() {
        let t = trefoil_delta();
        // d = 2: {pi/6, 5pi/6}
        let r2 = t.reparam(2).unwrap();
        let expect2 = jf(vec![
            (Angle::rational_pi_frac(1, 6), -2),
            (Angle::rational_pi_frac(5, 6), -2),
        ]);
        assert_eq!(r2, expect2);
        // d = 1: identity
        assert_eq!(t.reparam(1).unwrap(), t);
        // d = 3: {pi/9, 5pi/9, 7pi/9}
        let r3 = t.reparam(3).unwrap();
        let expect3 = jf(vec![
            (Angle::rational_pi_frac(1, 9), -2),
            (Angle::rational_pi_frac(5, 9), -2),
            (Angle::rational_pi_frac(7, 9), -2),
        ]);
        assert_eq!(r3, expect3);
        // d = 0: zero function
        assert!(t.reparam(0).unwrap().is_empty());
    }

    #[test]
    fn reparam_composes() {
        let f = jf(vec![
            (Angle::rational_pi_frac(1, 3), -2),
            (Angle::from_rational_cos(rat(3, 4), true).unwrap(), 2),
        ]);
        for (a, b) in [(2u64, 3u64), (3, 2), (2, 2)] {
            let lhs = f.reparam(a).unwrap().reparam(b).unwrap();
            let rhs = f.reparam(a * b).unwrap();
            assert_eq!(lhs, rhs, "reparam composition failed for {a},{b}");
        }
    }

    #[test]
    fn accumulate_f_n() {
        let t = trefoil_delta();
        let f0 = JumpFunction::accumulate(&t, 2, 0).unwrap();
        assert_eq!(f0, t);
        let f1 = JumpFunction::accumulate(&t, 2, 1).unwrap();
        let expect = jf(vec![
            (Angle::rational_pi_frac(1, 6), -2),
            (Angle::rational_pi_frac(1, 3), -2),
            (Angle::rational_pi_frac(5, 6), -2),
        ]);
        assert_eq!(f1, expect);
        assert!(JumpFunction::accumulate(&JumpFunction::empty(), 2, 5)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn avoidance_sets() {
        let t = trefoil_delta();
        let s = JumpFunction::avoidance_set(&t, 2, 1).unwrap();
        assert_eq!(s.len(), 3);
        let expect = [
            Angle::rational_pi_frac(1, 6),
            Angle::rational_pi_frac(1, 3),
            Angle::rational_pi_frac(5, 6),
        ];
        for (got, want) in s.iter().zip(&expect) {
            assert_eq!(got.try_cmp(want).unwrap(), Ordering::Equal);
        }
        assert!(
            JumpFunction::avoidance_set(&JumpFunction::empty(), 2, 1)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn evaluation_with_folding() {
        let t = trefoil_delta();
        assert_eq!(t.eval(&Angle::rational_pi_frac(1, 3)).unwrap(), -2);
        // Evenness + periodicity: 5pi/3 folds to pi/3.
        assert_eq!(t.eval(&Angle::rational_pi_frac(5, 3)).unwrap(), -2);
        assert_eq!(t.eval(&Angle::rational_pi_frac(1, 4)).unwrap(), 0);
        assert!(t.eval(&Angle::zero()).is_err());
        // fold-evenness identity on a sample of angles
        for a in [
            Angle::rational_pi_frac(1, 3),
            Angle::from_rational_cos(rat(1, 8), true).unwrap(),
        ] {
            let lhs = t.eval(&a.reflect()).unwrap();
            let rhs = t.eval(&a).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn period_tests() {
        // Empty function has every period.
        assert!(JumpFunction::empty().has_period(&rat(1, 3)).unwrap());
        // Trefoil delta does not have period 2pi/3.
        assert!(!trefoil_delta().has_period(&rat(1, 3)).unwrap());
        // Uniform support {pi/4, 3pi/4} with equal values unfolds to the
        // orbit {pi/4, 3pi/4, 5pi/4, 7pi/4}: period 2pi/4 = pi/2.
        let uniform = jf(vec![
            (Angle::rational_pi_frac(1, 4), 2),
            (Angle::rational_pi_frac(3, 4), 2),
        ]);
        assert!(uniform.has_period(&rat(1, 4)).unwrap());
        assert!(!uniform.has_period(&rat(1, 8)).unwrap());
    }

    #[test]
    fn rejects_bad_support() {
        assert!(JumpFunction::from_pairs(vec![(Angle::zero(), 1)]).is_err());
        assert!(JumpFunction::from_pairs(vec![(Angle::rational_pi_frac(3, 2), 1)]).is_err());
        // pi itself is allowed for formal jump data.
        assert!(JumpFunction::from_pairs(vec![(Angle::pi(), 4)]).is_ok());
    }
}

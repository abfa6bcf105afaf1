//! Exact Levine-Tristram signatures, jump-function extraction, and the
//! computable abelian rho-invariants.
//!
//! The signature at `omega = e^{i theta}` is the signature of the Hermitian
//! form `(1 - omega) A + (1 - conj omega) A^T`. Writing `c = cos theta` the
//! form is `(1 - c) S - i sin(theta) W` with `S = A + A^T` and
//! `W = A - A^T`, so it lives in a quadratic extension by `i sin(theta)`.
//! Its characteristic polynomial is computed division-free (Berkowitz) over
//!
//! * `Z[tau]`, `tau^2 = -(w^2 - u^2)`, after clearing a rational cosine
//!   `u/w` — the hot path used by gap sampling; or
//! * `Q[y]/(p)` extended by `tau^2 = y^2 - 1` at an algebraic cosine.
//!
//! A Hermitian characteristic polynomial has all roots real, so Descartes'
//! rule on the exact coefficient signs counts positive and negative
//! eigenvalues exactly; zero eigenvalues drop out as trailing zero
//! coefficients. Degenerate points (Alexander roots) therefore need no
//! special casing: the value returned is the signature of the degenerate
//! form itself.

use crate::exact::algebraic::RealAlgebraic;
use crate::exact::angle::Angle;
use crate::exact::interval::CertifiedInterval;
use crate::exact::laurent::LaurentPoly;
use crate::exact::qpoly::QPoly;
use crate::exact::rat::rat;
use crate::exact::ring::{charpoly, AlgebraicCosCtx, QuadIntCtx, RingCtx};
use crate::jump::JumpFunction;
use crate::seifert::SeifertMatrix;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Quantitative Cheeger-Gromov bound for the zero-surgery manifold of a
/// knot with the given crossing number: `7 * 10^7 * c`.
pub fn cheeger_gromov_bound(crossing_number: u64) -> Result<u64> {
    if crossing_number == 0 {
        return Err(Error::BadParameter(
            "crossing number must be positive".into(),
        ));
    }
    Ok(70_000_000 * crossing_number)
}

/// Exact Levine-Tristram signature at `omega = e^{i theta}`,
/// `theta` in `(0, 2pi)`.
pub fn sigma_at(a: &SeifertMatrix, theta: &Angle) -> Result<i64> {
    if theta.is_zero() {
        return Err(Error::BadParameter(
            "signature is not evaluated at omega = 1".into(),
        ));
    }
    if a.size() == 0 {
        return Ok(0);
    }
    let cos = theta.cos_algebraic()?;
    match cos.exact_rational() {
        Some(c) => Ok(sigma_at_rational_cos(a, c)),
        None => sigma_at_algebraic_cos(a, &cos),
    }
}

/// Signature at a point with rational cosine `c` in `[-1, 1)`; integer
/// arithmetic throughout.
pub fn sigma_at_rational_cos(a: &SeifertMatrix, c: &BigRational) -> i64 {
    let n = a.size();
    if n == 0 {
        return 0;
    }
    let blocks = a.diagonal_blocks();
    if blocks.len() > 1 {
        return blocks
            .iter()
            .map(|idx| sigma_at_rational_cos(&a.principal_block(idx), c))
            .sum();
    }
    debug_assert!(c.abs() <= BigRational::one());
    let u = c.numer().clone();
    let w = c.denom().clone();
    let e = &w * &w - &u * &u; // (w sin)^2
    let s = a.symmetrized();
    let scale = &w - &u; // w (1 - c)
    let ctx = QuadIntCtx { e };
    let zero_im = e_is_zero(&ctx);
    let m: Vec<Vec<(BigInt, BigInt)>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let real = &scale * &s[i][j];
                    let imag = if zero_im {
                        BigInt::zero()
                    } else {
                        // -(A - A^T)_{ij}
                        a.entry(j, i) - a.entry(i, j)
                    };
                    (real, imag)
                })
                .collect()
        })
        .collect();
    let coeffs = charpoly(&ctx, &m);
    let signs: Vec<i32> = coeffs
        .iter()
        .map(|(re, im)| {
            debug_assert!(im.is_zero(), "Hermitian charpoly with imaginary part");
            int_sign(re)
        })
        .collect();
    descartes_signature(&signs)
}

fn e_is_zero(ctx: &QuadIntCtx) -> bool {
    ctx.e.is_zero()
}

fn int_sign(x: &BigInt) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Signature at an algebraic cosine, working in `Q[y]/(p)` extended by
/// `tau^2 = y^2 - 1`.
fn sigma_at_algebraic_cos(a: &SeifertMatrix, cos: &RealAlgebraic) -> Result<i64> {
    let blocks = a.diagonal_blocks();
    if blocks.len() > 1 {
        let mut total = 0;
        for idx in &blocks {
            total += sigma_at_algebraic_cos(&a.principal_block(idx), cos)?;
        }
        return Ok(total);
    }
    let n = a.size();
    let p = cos.poly().clone();
    let ctx = AlgebraicCosCtx { modulus: p };
    let s = a.symmetrized();
    let one_minus_y = QPoly::from_coeffs(vec![BigRational::one(), -BigRational::one()]);
    let m: Vec<Vec<(QPoly, QPoly)>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let real = one_minus_y.scale(&BigRational::from(s[i][j].clone()));
                    let imag = QPoly::constant(BigRational::from(a.entry(j, i) - a.entry(i, j)));
                    (real, imag)
                })
                .collect()
        })
        .collect();
    let coeffs = charpoly(&ctx, &m);
    let mut signs = Vec::with_capacity(coeffs.len());
    for (re, im) in &coeffs {
        if !cos.is_root_of(im) {
            return Err(Error::PrecisionExhausted(
                "characteristic polynomial failed the Hermitian check".into(),
            ));
        }
        signs.push(cos.sign_of_poly_at(re));
    }
    Ok(descartes_signature(&signs))
}

/// Descartes count on a characteristic polynomial known to have only real
/// roots: (positive roots) - (negative roots) from the coefficient signs in
/// descending order.
fn descartes_signature(signs_desc: &[i32]) -> i64 {
    let pos: Vec<i32> = signs_desc.iter().copied().filter(|&s| s != 0).collect();
    let n_pos = pos.windows(2).filter(|w| w[0] != w[1]).count() as i64;
    // chi(-lambda): flip signs at odd powers. Descending index i holds the
    // power n - i.
    let n = signs_desc.len() - 1;
    let neg: Vec<i32> = signs_desc
        .iter()
        .enumerate()
        .map(|(i, &s)| if (n - i) % 2 == 1 { -s } else { s })
        .filter(|&s| s != 0)
        .collect();
    let n_neg = neg.windows(2).filter(|w| w[0] != w[1]).count() as i64;
    n_pos - n_neg
}

/// Isolated unit-circle Alexander roots in the cosine coordinate together
/// with the signature on each complementary gap of `(0, pi)`, ascending in
/// the angle.
struct CircleProfile {
    /// Root cosines, descending in x (ascending in the angle).
    roots: Vec<RealAlgebraic>,
    /// Signatures on the gaps: `gap_sigmas[k]` is the value between the
    /// (k-1)-th and k-th root angle; length = roots.len() + 1.
    gap_sigmas: Vec<i64>,
}

fn circle_profile(a: &SeifertMatrix) -> CircleProfile {
    if a.size() == 0 {
        return CircleProfile {
            roots: vec![],
            gap_sigmas: vec![0],
        };
    }
    let raw = a.alexander_raw();
    let g = a.size() as i64 / 2;
    let sym = raw.shift(-g);
    debug_assert!(sym == sym.bar(), "det(A - tA^T) is t^g-symmetric");
    let p = sym.cos_transform();
    let mut roots = RealAlgebraic::isolate_in(&p, &rat(-1, 1), &rat(1, 1));
    // Ascending in x from isolation; we want descending (angle ascending).
    roots.reverse();

    // A strictly descending chain of rational cut points between
    // consecutive roots (and 1, -1 at the ends).
    let mut cuts: Vec<BigRational> = Vec::with_capacity(roots.len() + 1);
    for k in 0..=roots.len() {
        let upper_bound = if k == 0 {
            CertifiedInterval::point(rat(1, 1))
        } else {
            loc_interval(&roots[k - 1])
        };
        let lower_bound = if k == roots.len() {
            CertifiedInterval::point(rat(-1, 1))
        } else {
            loc_interval(&roots[k])
        };
        // Refine until the two enclosures separate.
        let (mut up, mut dn) = (upper_bound, lower_bound);
        let mut bits = 8;
        while dn.hi >= up.lo {
            bits += 8;
            if k > 0 {
                up = roots[k - 1].enclosure(bits);
            }
            if k < roots.len() {
                dn = roots[k].enclosure(bits);
            }
        }
        cuts.push((&up.lo + &dn.hi) / rat(2, 1));
    }

    let gap_sigmas: Vec<i64> = cuts
        .iter()
        .map(|c| sigma_at_rational_cos(a, c))
        .collect();
    debug_assert_eq!(
        gap_sigmas[0], 0,
        "signature must vanish on the arc adjacent to omega = 1"
    );
    CircleProfile { roots, gap_sigmas }
}

fn loc_interval(r: &RealAlgebraic) -> CertifiedInterval {
    let loc = r.loc();
    CertifiedInterval::new(loc.lo.clone(), loc.hi.clone())
}

/// The signature jump function: support exactly at the angles in `(0, pi)`
/// whose cosine is a unit-circle Alexander root with a nonzero two-sided
/// signature jump.
pub fn jump_function(a: &SeifertMatrix) -> Result<JumpFunction> {
    let profile = circle_profile(a);
    let mut pairs = vec![];
    for (k, root) in profile.roots.iter().enumerate() {
        let jump = profile.gap_sigmas[k + 1] - profile.gap_sigmas[k];
        if jump != 0 {
            pairs.push((Angle::from_cos(root.clone(), true)?, jump));
        }
    }
    JumpFunction::from_pairs(pairs)
}

/// Abelian rho-invariant for representations onto `Z`: the normalized
/// integral of the signature function over the circle.
#[derive(Debug, Clone)]
pub enum RhoValue {
    Exact(BigRational),
    Interval {
        lo: BigRational,
        hi: BigRational,
        terms: Vec<RhoTerm>,
    },
}

/// One symbolic term of the normalized integral: the signature value on the
/// arc between two consecutive jump angles (in `(0, pi)`; the even
/// extension doubles it).
#[derive(Debug, Clone)]
pub struct RhoTerm {
    pub sigma: i64,
    pub from: Angle,
    pub to: Angle,
}

impl RhoValue {
    pub fn approx_contains(&self, x: &BigRational) -> bool {
        match self {
            RhoValue::Exact(v) => v == x,
            RhoValue::Interval { lo, hi, .. } => lo <= x && x <= hi,
        }
    }

    pub fn width(&self) -> BigRational {
        match self {
            RhoValue::Exact(_) => BigRational::zero(),
            RhoValue::Interval { lo, hi, .. } => hi - lo,
        }
    }
}

/// `rho_z` with the default certified width `10^-9`.
pub fn rho_z(a: &SeifertMatrix) -> Result<RhoValue> {
    rho_z_with_width(a, &BigRational::new(BigInt::one(), BigInt::from(1_000_000_000u64)))
}

/// Normalized integral of the signature step function, as a symbolic term
/// list plus a certified interval of at most the requested width.
pub fn rho_z_with_width(a: &SeifertMatrix, width: &BigRational) -> Result<RhoValue> {
    if width <= &BigRational::zero() {
        return Err(Error::BadParameter("requested width must be positive".into()));
    }
    let profile = circle_profile(a);
    if profile.roots.is_empty() {
        // sigma vanishes identically.
        return Ok(RhoValue::Exact(BigRational::zero()));
    }
    // Angles of the jump points, plus the endpoints 0 and pi.
    let mut angles: Vec<Angle> = vec![];
    for r in &profile.roots {
        angles.push(Angle::from_cos(r.clone(), true)?);
    }
    let mut terms = vec![];
    for (k, sigma) in profile.gap_sigmas.iter().enumerate() {
        if *sigma == 0 {
            continue;
        }
        let from = if k == 0 { Angle::zero() } else { angles[k - 1].clone() };
        let to = if k == angles.len() { Angle::pi() } else { angles[k].clone() };
        terms.push(RhoTerm {
            sigma: *sigma,
            from,
            to,
        });
    }
    // Evaluate sum sigma_k (theta_{k+1} - theta_k) / pi over (0, pi) with
    // certified intervals, refining until the requested width is met.
    let mut bits = 32u32;
    loop {
        let pi_enc = crate::exact::interval::pi_enclosure(bits);
        let mut acc = CertifiedInterval::point(BigRational::zero());
        for t in &terms {
            let from = t.from.enclosure(bits)?;
            let to = t.to.enclosure(bits)?;
            let diff = to.sub(&from);
            acc = acc.add(&diff.scale(&BigRational::from(BigInt::from(t.sigma))));
        }
        // Divide by pi: multiply by the reciprocal enclosure.
        let recip = CertifiedInterval::new(
            BigRational::one() / &pi_enc.hi,
            BigRational::one() / &pi_enc.lo,
        );
        let value = acc.mul(&recip);
        if value.width() <= *width {
            return Ok(RhoValue::Interval {
                lo: value.lo,
                hi: value.hi,
                terms,
            });
        }
        bits = bits.saturating_mul(2);
        if bits > 1 << 22 {
            return Err(Error::PrecisionExhausted(
                "rho interval refinement stalled".into(),
            ));
        }
    }
}

/// Abelian rho-invariant for representations onto `Z_p`: the exact rational
/// average of the signature over the p-th roots of unity.
pub fn rho_zp(a: &SeifertMatrix, p: u64) -> Result<BigRational> {
    if !is_prime(p) {
        return Err(Error::BadParameter(format!("{p} is not prime")));
    }
    if a.size() == 0 {
        return Ok(BigRational::zero());
    }
    // If Phi_p divided the Alexander polynomial the p-th root evaluations
    // would be degenerate; Delta(1) = ±1 makes that impossible, but the
    // division check keeps the fallback honest.
    let cyclotomic = LaurentPoly::from_pairs(
        (0..p).map(|k| (k as i64, BigRational::one())),
        None,
    );
    let (alex_poly, _) = a.alexander().as_poly();
    let (cyc_poly, _) = cyclotomic.as_poly();
    let (_, rem) = alex_poly.div_rem(&cyc_poly);
    if rem.is_zero() {
        // Degenerate evaluations: fall back to direct signature computation
        // at each root of unity.
        let mut total = BigRational::zero();
        for i in 1..p {
            let theta = Angle::rational_pi(rat(2 * i as i64, p as i64));
            total = &total + &BigRational::from(BigInt::from(sigma_at(a, &theta)?));
        }
        return Ok(total / BigRational::from(BigInt::from(p)));
    }
    // Locate each root of unity in the gap structure.
    let profile = circle_profile(a);
    let mut angles: Vec<Angle> = vec![];
    for r in &profile.roots {
        angles.push(Angle::from_cos(r.clone(), true)?);
    }
    let mut total: i64 = 0;
    for i in 1..p {
        let theta = Angle::rational_pi(rat(2 * i as i64, p as i64)).fold()?;
        // Count jump angles strictly below theta.
        let mut k = 0;
        for a_k in &angles {
            match theta.try_cmp(a_k)? {
                Ordering::Greater => k += 1,
                Ordering::Equal => {
                    return Err(Error::PrecisionExhausted(
                        "root of unity coincided with an Alexander root".into(),
                    ))
                }
                Ordering::Less => break,
            }
        }
        total += profile.gap_sigmas[k];
    }
    Ok(BigRational::new(BigInt::from(total), BigInt::from(p)))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::catalog_get;

    #[test]
    fn catalog_signatures_at_minus_one() {
        let cases = [
            ("trefoil", -2),
            ("figure_eight", 0),
            ("unknot", 0),
            ("T2_5", -4),
            ("T2_7", -6),
            ("6_1", 0),
        ];
        for (name, expect) in cases {
            let k = catalog_get(name).unwrap();
            assert_eq!(sigma_at(&k, &Angle::pi()).unwrap(), expect, "{name}");
        }
    }

    #[test]
    fn signature_rejects_zero_angle() {
        let k = catalog_get("trefoil").unwrap();
        assert!(sigma_at(&k, &Angle::zero()).is_err());
    }

    #[test]
    fn signature_at_degenerate_point() {
        // At theta = pi/3 the trefoil form is singular; the degenerate form
        // has eigenvalues {0, -4}.
        let k = catalog_get("trefoil").unwrap();
        assert_eq!(sigma_at(&k, &Angle::rational_pi_frac(1, 3)).unwrap(), -1);
    }

    #[test]
    fn signature_at_algebraic_angles() {
        // T2_5 has sigma = -2 between pi/5 and 3pi/5: evaluate at the
        // rational-pi point 2pi/5 whose cosine is irrational.
        let k = catalog_get("T2_5").unwrap();
        assert_eq!(sigma_at(&k, &Angle::rational_pi_frac(2, 5)).unwrap(), -2);
        assert_eq!(sigma_at(&k, &Angle::rational_pi_frac(4, 5)).unwrap(), -4);
        // Degenerate at pi/5 itself: eigenvalue crossing, signature -1.
        assert_eq!(sigma_at(&k, &Angle::rational_pi_frac(1, 5)).unwrap(), -1);
    }

    #[test]
    fn jump_functions_of_catalog_knots() {
        let t = jump_function(&catalog_get("trefoil").unwrap()).unwrap();
        assert_eq!(t.support().len(), 1);
        assert_eq!(
            t.support()[0]
                .0
                .try_cmp(&Angle::rational_pi_frac(1, 3))
                .unwrap(),
            Ordering::Equal
        );
        assert_eq!(t.support()[0].1, -2);

        let f8 = jump_function(&catalog_get("figure_eight").unwrap()).unwrap();
        assert!(f8.is_empty());

        let t25 = jump_function(&catalog_get("T2_5").unwrap()).unwrap();
        assert_eq!(t25.support().len(), 2);
        assert_eq!(
            t25.support()[0]
                .0
                .try_cmp(&Angle::rational_pi_frac(1, 5))
                .unwrap(),
            Ordering::Equal
        );
        assert_eq!(
            t25.support()[1]
                .0
                .try_cmp(&Angle::rational_pi_frac(3, 5))
                .unwrap(),
            Ordering::Equal
        );
        assert_eq!(t25.support()[0].1, -2);
        assert_eq!(t25.support()[1].1, -2);

        let t61 = jump_function(&catalog_get("6_1").unwrap()).unwrap();
        assert!(t61.is_empty());
    }

    #[test]
    fn mirror_negates_signature() {
        let k = catalog_get("T2_7").unwrap();
        let m = k.mirror();
        for i in 1..14 {
            let theta = Angle::rational_pi(rat(i, 7));
            if theta.is_zero() {
                continue;
            }
            assert_eq!(
                sigma_at(&m, &theta).unwrap(),
                -sigma_at(&k, &theta).unwrap()
            );
        }
    }

    #[test]
    fn rho_values() {
        let t = catalog_get("trefoil").unwrap();
        assert_eq!(rho_zp(&t, 5).unwrap(), rat(-8, 5));
        assert_eq!(rho_zp(&t, 2).unwrap(), rat(-1, 1));
        assert_eq!(rho_zp(&t, 3).unwrap(), rat(-4, 3));
        assert!(rho_zp(&t, 4).is_err());
        assert_eq!(rho_zp(&SeifertMatrix::unknot(), 7).unwrap(), rat(0, 1));

        match rho_z(&t).unwrap() {
            RhoValue::Interval { lo, hi, terms } => {
                let target = rat(-4, 3);
                assert!(lo <= target && target <= hi);
                assert!(&hi - &lo <= rat(1, 1_000_000_000));
                assert_eq!(terms.len(), 1);
                assert_eq!(terms[0].sigma, -2);
            }
            RhoValue::Exact(_) => panic!("expected interval"),
        }
        assert!(matches!(
            rho_z(&SeifertMatrix::unknot()).unwrap(),
            RhoValue::Exact(v) if v.is_zero()
        ));
        assert!(matches!(
            rho_z(&catalog_get("figure_eight").unwrap()).unwrap(),
            RhoValue::Exact(v) if v.is_zero()
        ));
    }

    #[test]
    fn cheeger_gromov() {
        assert_eq!(cheeger_gromov_bound(3).unwrap(), 210_000_000);
        assert_eq!(cheeger_gromov_bound(10).unwrap(), 700_000_000);
        assert!(cheeger_gromov_bound(0).is_err());
    }

    #[test]
    fn jump_additivity_under_block_sum() {
        let t = catalog_get("trefoil").unwrap();
        let t25 = catalog_get("T2_5").unwrap();
        let sum = t.block_sum(&t25);
        let lhs = jump_function(&sum).unwrap();
        let rhs = jump_function(&t)
            .unwrap()
            .add(&jump_function(&t25).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        // rho_zp additivity.
        let p = 7;
        let a = rho_zp(&sum, p).unwrap();
        let b = &rho_zp(&t, p).unwrap() + &rho_zp(&t25, p).unwrap();
        assert_eq!(a, b);
    }
}

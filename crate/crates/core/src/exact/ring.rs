//! Division-free linear algebra over commutative rings: the Berkowitz
//! characteristic polynomial. Running it over tailored coefficient rings
//! gives every exact determinant computation the crate needs:
//!
//! * `Z[i sqrt(e)]` — Hermitian signature forms at rational-cosine points;
//! * `Q[y]/(p) [tau]`, `tau^2 = y^2 - 1` — signature forms at algebraic
//!   cosines (p squarefree, reduction happens per multiplication);
//! * `Q[t]` — Alexander polynomials and adjugates of `A - t A^T`;
//! * plain `Q` — characteristic polynomials of multiplication matrices,
//!   which realize norms and resultants of algebraic numbers.

use super::qpoly::QPoly;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;

/// Commutative ring presented as a context object so that parametrized rings
/// (a modulus, a square-root tag) fit the same interface.
pub trait RingCtx {
    type El: Clone;
    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
}

/// The rationals.
pub struct RatCtx;

impl RingCtx for RatCtx {
    type El = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        num::traits::One::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a.clone()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

/// Univariate rational polynomials.
pub struct QPolyCtx;

impl RingCtx for QPolyCtx {
    type El = QPoly;
    fn zero(&self) -> QPoly {
        QPoly::zero()
    }
    fn one(&self) -> QPoly {
        QPoly::one()
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a + b
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a - b
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a * b
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        a.clone().neg_poly()
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
}

/// `Z[tau]` with `tau^2 = -e`: the ring where a Hermitian signature form
/// lives after clearing the rational cosine `u/w` (then `e = w^2 - u^2` and
/// `tau = i w sin(theta)`). Elements are pairs `(a, b) = a + b tau`.
pub struct QuadIntCtx {
    pub e: BigInt,
}

impl RingCtx for QuadIntCtx {
    type El = (BigInt, BigInt);
    fn zero(&self) -> Self::El {
        (BigInt::zero(), BigInt::zero())
    }
    fn one(&self) -> Self::El {
        (num::traits::One::one(), BigInt::zero())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (&a.0 + &b.0, &a.1 + &b.1)
    }
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (&a.0 - &b.0, &a.1 - &b.1)
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (
            &a.0 * &b.0 - &self.e * &a.1 * &b.1,
            &a.0 * &b.1 + &a.1 * &b.0,
        )
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        (-a.0.clone(), -a.1.clone())
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        a.0.is_zero() && a.1.is_zero()
    }
}

/// `Q[y]/(p)` extended by `tau` with `tau^2 = y^2 - 1`: the ring where the
/// signature form lives at an algebraic cosine `y` (then `tau = i sin`).
/// Elements are pairs of polynomials reduced modulo `p`.
pub struct AlgebraicCosCtx {
    pub modulus: QPoly,
}

impl AlgebraicCosCtx {
    fn reduce(&self, a: QPoly) -> QPoly {
        if a.deg().unwrap_or(0) >= self.modulus.deg().unwrap_or(1) {
            a.div_rem(&self.modulus).1
        } else {
            a
        }
    }
}

impl RingCtx for AlgebraicCosCtx {
    type El = (QPoly, QPoly);
    fn zero(&self) -> Self::El {
        (QPoly::zero(), QPoly::zero())
    }
    fn one(&self) -> Self::El {
        (QPoly::one(), QPoly::zero())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (&a.0 + &b.0, &a.1 + &b.1)
    }
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (&a.0 - &b.0, &a.1 - &b.1)
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let tau_sq = QPoly::from_int_coeffs(&[-1, 0, 1]); // y^2 - 1
        let real = &(&a.0 * &b.0) + &(&(&a.1 * &b.1) * &tau_sq);
        let imag = &(&a.0 * &b.1) + &(&a.1 * &b.0);
        (self.reduce(real), self.reduce(imag))
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        (a.0.clone().neg_poly(), a.1.clone().neg_poly())
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        a.0.is_zero() && a.1.is_zero()
    }
}

/// Berkowitz's algorithm: coefficients of `det(lambda I - M)` in descending
/// powers (leading coefficient 1), computed with ring operations only.
pub fn charpoly<C: RingCtx>(ctx: &C, m: &[Vec<C::El>]) -> Vec<C::El> {
    let n = m.len();
    if n == 0 {
        return vec![ctx.one()];
    }
    for row in m {
        assert_eq!(row.len(), n, "charpoly needs a square matrix");
    }
    // p holds the characteristic polynomial of the leading r x r block,
    // descending, length r + 1.
    let mut p = vec![ctx.one(), ctx.neg(&m[0][0])];
    for r in 2..=n {
        // Toeplitz column entries c_0..c_r for the r-th step.
        let a_rr = &m[r - 1][r - 1];
        let mut c = Vec::with_capacity(r + 1);
        c.push(ctx.one());
        c.push(ctx.neg(a_rr));
        // v starts as the column above the diagonal entry, iterated through
        // the leading (r-1) block.
        let mut v: Vec<C::El> = (0..r - 1).map(|i| m[i][r - 1].clone()).collect();
        for _ in 2..=r {
            // c_k = -(row . v)
            let mut dot = ctx.zero();
            for j in 0..r - 1 {
                dot = ctx.add(&dot, &ctx.mul(&m[r - 1][j], &v[j]));
            }
            c.push(ctx.neg(&dot));
            // v = block * v
            let mut nv = Vec::with_capacity(r - 1);
            for i in 0..r - 1 {
                let mut acc = ctx.zero();
                for j in 0..r - 1 {
                    acc = ctx.add(&acc, &ctx.mul(&m[i][j], &v[j]));
                }
                nv.push(acc);
            }
            v = nv;
        }
        // p_new[i] = sum_j c_{i-j} p[j], lengths (r+1) x r.
        let mut p_new = Vec::with_capacity(r + 1);
        for i in 0..=r {
            let mut acc = ctx.zero();
            for (j, pj) in p.iter().enumerate() {
                if i >= j && i - j <= r {
                    acc = ctx.add(&acc, &ctx.mul(&c[i - j], pj));
                }
            }
            p_new.push(acc);
        }
        p = p_new;
    }
    p
}

/// Determinant through the characteristic polynomial:
/// `det M = (-1)^n * charpoly(0)`.
pub fn det<C: RingCtx>(ctx: &C, m: &[Vec<C::El>]) -> C::El {
    let n = m.len();
    let p = charpoly(ctx, m);
    let c0 = p.last().unwrap().clone();
    if n % 2 == 1 {
        ctx.neg(&c0)
    } else {
        c0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    fn qm(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect()
    }

    #[test]
    fn charpoly_2x2() {
        // det(lambda I - [[1,2],[3,4]]) = l^2 - 5l - 2
        let m = qm(&[&[1, 2], &[3, 4]]);
        let p = charpoly(&RatCtx, &m);
        assert_eq!(p, vec![rat(1, 1), rat(-5, 1), rat(-2, 1)]);
        assert_eq!(det(&RatCtx, &m), rat(-2, 1));
    }

    #[test]
    fn det_3x3() {
        let m = qm(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]);
        // expansion: 2(1*1-0*3) - 0 + 1(1*3-1*0) = 2 + 3 = 5
        assert_eq!(det(&RatCtx, &m), rat(5, 1));
    }

    #[test]
    fn quad_int_ring_det() {
        // H = [[-2, 1-tau],[1+tau, -2]] with tau^2 = -3 has det
        // 4 - (1 - tau^2) = 4 - 4 = 0 (trefoil form at cos = 1/2).
        let ctx = QuadIntCtx { e: BigInt::from(3) };
        let m = vec![
            vec![(BigInt::from(-2), BigInt::from(0)), (BigInt::from(1), BigInt::from(-1))],
            vec![(BigInt::from(1), BigInt::from(1)), (BigInt::from(-2), BigInt::from(0))],
        ];
        let d = det(&ctx, &m);
        assert!(ctx.is_zero(&d));
    }
}

//! Blanchfield pairing from Seifert data: the pairing matrix
//! `B(t) = (t - 1)(A - t A^T)^{-1}` over `Q(t)/Z[t^{±1}]`, self-pairings of
//! axis classes, mod-p reductions, good-prime search, the constructive
//! witness for nontrivial self-pairing, and the linking form on the first
//! homology of the branched double cover.

use crate::exact::laurent::LaurentPoly;
use crate::exact::qpoly::QPoly;
use crate::exact::rat::rat_to_string;
use crate::exact::ratfn::RatFnClass;
use crate::exact::ring::{det, charpoly, QPolyCtx, RatCtx};
use crate::exact::smith::{mat_mul, smith_normal_form};
use crate::seifert::SeifertMatrix;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

/// A class in the Alexander module, as a coordinate vector of Laurent
/// polynomials in the presentation basis of `A - t A^T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisVector {
    pub coords: Vec<LaurentPoly>,
}

impl AxisVector {
    pub fn new(coords: Vec<LaurentPoly>) -> Self {
        AxisVector { coords }
    }

    /// The `i`-th standard basis vector in dimension `n` (0-indexed).
    pub fn basis(i: usize, n: usize) -> Self {
        let mut coords = vec![LaurentPoly::zero(None); n];
        coords[i] = LaurentPoly::one(None);
        AxisVector { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &AxisVector) -> AxisVector {
        assert_eq!(self.len(), other.len());
        AxisVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    /// Multiply every coordinate by `t^k`.
    pub fn shift(&self, k: i64) -> AxisVector {
        AxisVector {
            coords: self.coords.iter().map(|c| c.shift(k)).collect(),
        }
    }

    /// Short display such as `e1`, `e1+e2`, `t*e1+e2` when the vector has
    /// that shape; coordinates otherwise.
    pub fn describe(&self) -> String {
        let mut parts = vec![];
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if c == &LaurentPoly::one(None) {
                parts.push(format!("e{}", i + 1));
            } else if c == &LaurentPoly::one(None).shift(1) {
                parts.push(format!("t*e{}", i + 1));
            } else {
                parts.push(format!("(...)e{}", i + 1));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

/// Polynomial matrix `A - t A^T` of a Seifert matrix.
fn presentation_matrix(a: &SeifertMatrix) -> Vec<Vec<QPoly>> {
    let n = a.size();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    QPoly::from_coeffs(vec![
                        BigRational::from(a.entry(i, j).clone()),
                        -BigRational::from(a.entry(j, i).clone()),
                    ])
                })
                .collect()
        })
        .collect()
}

/// Adjugate of a square polynomial matrix (classical cofactor transpose).
fn adjugate(m: &[Vec<QPoly>]) -> Vec<Vec<QPoly>> {
    let n = m.len();
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![vec![QPoly::one()]];
    }
    let mut adj = vec![vec![QPoly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            // adj[i][j] = (-1)^{i+j} det(M with row j and column i removed)
            let minor: Vec<Vec<QPoly>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let mut d = det(&QPolyCtx, &minor);
            if (i + j) % 2 == 1 {
                d = d.neg_poly();
            }
            adj[i][j] = d;
        }
    }
    adj
}

/// The Blanchfield pairing matrix `B(t) = (t-1)(A - tA^T)^{-1}` with entries
/// reduced into `Q(t)/Z[t^{±1}]`.
pub fn pairing_matrix(a: &SeifertMatrix) -> Result<Vec<Vec<RatFnClass>>> {
    let n = a.size();
    if n == 0 {
        return Ok(vec![]);
    }
    let m = presentation_matrix(a);
    let adj = adjugate(&m);
    let delta = a.alexander_raw();
    let t_minus_one = LaurentPoly::t_minus_one(None);
    let mut out = vec![vec![RatFnClass::zero(None); n]; n];
    for i in 0..n {
        for j in 0..n {
            let num = LaurentPoly::from_poly(&adj[i][j], 0, None).mul(&t_minus_one);
            out[i][j] = RatFnClass::from_fraction(&num, &delta)?;
        }
    }
    Ok(out)
}

/// Raw (un-reduced) pairing value `conj(v)^T B(t) w` as a fraction
/// `(numerator, denominator)` over `Q[t^{±1}]`.
fn raw_pairing(a: &SeifertMatrix, v: &AxisVector, w: &AxisVector) -> Result<(LaurentPoly, LaurentPoly)> {
    let n = a.size();
    if v.len() != n || w.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "axis length {} or {} against matrix size {}",
            v.len(),
            w.len(),
            n
        )));
    }
    if n == 0 {
        return Ok((LaurentPoly::zero(None), LaurentPoly::one(None)));
    }
    let m = presentation_matrix(a);
    let adj = adjugate(&m);
    // adj * w, over Laurent polynomials.
    let mut aw = vec![LaurentPoly::zero(None); n];
    for (i, row) in aw.iter_mut().enumerate() {
        for j in 0..n {
            let entry = LaurentPoly::from_poly(&adj[i][j], 0, None);
            *row = row.add(&entry.mul(&w.coords[j]));
        }
    }
    // conj(v) . (adj w)
    let mut s = LaurentPoly::zero(None);
    for i in 0..n {
        s = s.add(&v.coords[i].bar().mul(&aw[i]));
    }
    let num = s.mul(&LaurentPoly::t_minus_one(None));
    Ok((num, a.alexander_raw()))
}

/// Blanchfield self-pairing `Bl(v, v)` in `Q(t)/Z[t^{±1}]`.
pub fn self_pairing(a: &SeifertMatrix, v: &AxisVector) -> Result<RatFnClass> {
    let (num, den) = raw_pairing(a, v, v)?;
    RatFnClass::from_fraction(&num, &den)
}

/// Mod-p Blanchfield self-pairing: the canonical rational representative
/// reduced coefficientwise, failing with `BadReduction` when p divides a
/// denominator.
pub fn self_pairing_mod_p(a: &SeifertMatrix, v: &AxisVector, p: u64) -> Result<RatFnClass> {
    if !is_prime(p) {
        return Err(Error::BadParameter(format!("{p} is not prime")));
    }
    self_pairing(a, v)?.reduce_mod(p)
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

/// The `count` smallest primes whose mod-p self-pairing stays nonzero.
/// Primes above the coefficient bound of the canonical representative are
/// accepted without recomputation (they cannot kill the class); smaller
/// primes are verified directly.
pub fn good_primes(a: &SeifertMatrix, v: &AxisVector, count: usize) -> Result<Vec<u64>> {
    let sp = self_pairing(a, v)?;
    if sp.is_zero() {
        return Err(Error::TrivialPairing(
            "self-pairing is zero; no good primes exist".into(),
        ));
    }
    let bound = sp.coefficient_bound();
    let mut out = vec![];
    let mut p: u64 = 2;
    while out.len() < count {
        if is_prime(p) {
            if BigInt::from(p) > bound {
                out.push(p);
            } else {
                match sp.reduce_mod(p) {
                    Ok(reduced) if !reduced.is_zero() => out.push(p),
                    Ok(_) => {}
                    Err(Error::BadReduction { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        p += 1;
        if p > 1_000_000 {
            return Err(Error::RealizationBudgetExceeded(
                "good-prime search ran past 10^6".into(),
            ));
        }
    }
    Ok(out)
}

/// A class with nonzero Blanchfield self-pairing, whenever one exists.
///
/// Returns `None` exactly when the Alexander polynomial is a unit (trivial
/// rational Alexander module). Otherwise the search over `e_i`, `e_i + e_j`
/// and `t e_i + e_j` provably succeeds: if some pairing-matrix entry
/// `B_{ij} = r/g` is nonzero with the basis self-pairings zero, then
/// `B(e_i + e_j) = r/g + conj(r/g)` and `B(t e_i + e_j) =
/// (t - t^{-1}) r/g + ...` cannot both vanish, because that would force
/// `g | t^2 - 1` while `g` divides the Alexander polynomial and
/// `Delta(±1) != 0`.
pub fn witness(a: &SeifertMatrix) -> Result<Option<AxisVector>> {
    if a.has_unit_alexander() {
        return Ok(None);
    }
    let n = a.size();
    let mut candidates: Vec<AxisVector> = vec![];
    for i in 0..n {
        candidates.push(AxisVector::basis(i, n));
    }
    for i in 0..n {
        for j in i + 1..n {
            candidates.push(AxisVector::basis(i, n).add(&AxisVector::basis(j, n)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j {
                candidates.push(AxisVector::basis(i, n).shift(1).add(&AxisVector::basis(j, n)));
            }
        }
    }
    for v in candidates {
        if !self_pairing(a, &v)?.is_zero() {
            return Ok(Some(v));
        }
    }
    Err(Error::PrecisionExhausted(
        "witness search exhausted; this contradicts nontrivial Alexander polynomial".into(),
    ))
}

/// The linking form on the first homology of the double branched cover,
/// presented by `A + A^T`.
#[derive(Debug, Clone)]
pub struct LinkingForm {
    /// Nontrivial invariant factors (those larger than 1) of `H_1(Sigma_2)`.
    pub factors: Vec<BigInt>,
    /// Generators of the cyclic summands, in the original basis.
    pub generators: Vec<Vec<BigInt>>,
    /// `lk(g_i, g_j)` mod 1, entries in `[0, 1)`.
    pub form: Vec<Vec<BigRational>>,
    sym_inverse: Vec<Vec<BigRational>>,
}

impl LinkingForm {
    /// Order of the homology group.
    pub fn group_order(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, f| acc * f)
    }

    /// Evaluate the form on arbitrary integer vectors (classes in the
    /// presentation basis), mod 1.
    pub fn evaluate(&self, v: &[BigInt], w: &[BigInt]) -> Result<BigRational> {
        let n = self.sym_inverse.len();
        if v.len() != n || w.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} against form of size {n}",
                v.len(),
                w.len()
            )));
        }
        let mut acc = BigRational::zero();
        for i in 0..n {
            for j in 0..n {
                acc += BigRational::from(v[i].clone())
                    * &self.sym_inverse[i][j]
                    * BigRational::from(w[j].clone());
            }
        }
        Ok(mod_one(&acc))
    }
}

fn mod_one(x: &BigRational) -> BigRational {
    let f = x.floor();
    x - f
}

/// Rational inverse of an integer matrix via the characteristic polynomial
/// (adjugate-free Cayley-Hamilton form).
fn rational_inverse(m: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mq: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let cp = charpoly(&RatCtx, &mq);
    // cp = [1, c_{n-1}, ..., c_0] descending; det = (-1)^n c_0.
    let c0 = cp.last().unwrap().clone();
    if c0.is_zero() {
        return None;
    }
    // Cayley-Hamilton: M^n + c_{n-1} M^{n-1} + ... + c_0 I = 0 with the
    // charpoly written monic in descending order, so
    // M^{-1} = -(M^{n-1} + c_{n-1} M^{n-2} + ... + c_1 I) / c_0.
    let mut power = identity_q(n);
    let mut acc = zero_q(n);
    // acc = sum_{k=1}^{n} c_k M^{k-1}, with c_n = 1 the leading coefficient.
    for k in 1..=n {
        // coefficient of lambda^k is cp[n - k]
        let ck = &cp[n - k];
        if !ck.is_zero() {
            for i in 0..n {
                for j in 0..n {
                    let add = ck * &power[i][j];
                    acc[i][j] = &acc[i][j] + &add;
                }
            }
        }
        if k < n {
            power = mat_mul_q(&power, &mq);
        }
    }
    let neg_inv_c0 = -c0.recip();
    for row in acc.iter_mut() {
        for x in row.iter_mut() {
            *x = &*x * &neg_inv_c0;
        }
    }
    Some(acc)
}

fn identity_q(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn zero_q(n: usize) -> Vec<Vec<BigRational>> {
    vec![vec![BigRational::zero(); n]; n]
}

fn mat_mul_q(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut out = zero_q(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let add = &a[i][k] * &b[k][j];
                out[i][j] = &out[i][j] + &add;
            }
        }
    }
    out
}

/// Compute the double branched cover linking form of a knot.
pub fn double_cover_linking(a: &SeifertMatrix) -> Result<LinkingForm> {
    let n = a.size();
    let sym = a.symmetrized();
    if n == 0 {
        return Ok(LinkingForm {
            factors: vec![],
            generators: vec![],
            form: vec![],
            sym_inverse: vec![],
        });
    }
    let sym_inverse = rational_inverse(&sym).ok_or_else(|| {
        Error::DegeneratePresentation("det(A + A^T) = 0".into())
    })?;
    let snf = smith_normal_form(&sym);
    // Generators: columns of U^{-1} at the nontrivial factors. U is
    // unimodular, so its rational inverse is integral.
    let u_q: Vec<Vec<BigRational>> = snf
        .u
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from(x.clone())).collect())
        .collect();
    let u_inv = invert_unimodular(&u_q);
    let mut factors = vec![];
    let mut gen_indices = vec![];
    for (k, f) in snf.factors.iter().enumerate() {
        if f > &BigInt::one() {
            factors.push(f.clone());
            gen_indices.push(k);
        }
    }
    let generators: Vec<Vec<BigInt>> = gen_indices
        .iter()
        .map(|&k| (0..n).map(|i| rational_to_int(&u_inv[i][k])).collect())
        .collect();
    let mut form = vec![vec![BigRational::zero(); factors.len()]; factors.len()];
    for (a_idx, ga) in generators.iter().enumerate() {
        for (b_idx, gb) in generators.iter().enumerate() {
            let mut acc = BigRational::zero();
            for i in 0..n {
                for j in 0..n {
                    acc += BigRational::from(ga[i].clone())
                        * &sym_inverse[i][j]
                        * BigRational::from(gb[j].clone());
                }
            }
            form[a_idx][b_idx] = mod_one(&acc);
        }
    }
    Ok(LinkingForm {
        factors,
        generators,
        form,
        sym_inverse,
    })
}

fn rational_to_int(x: &BigRational) -> BigInt {
    assert!(x.denom().is_one(), "expected integral entry");
    x.numer().clone()
}

/// Gauss-Jordan inverse of a unimodular rational matrix.
fn invert_unimodular(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut inv = identity_q(n);
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("unimodular matrix is invertible");
        a.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        let pinv = pivot.recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let sub_a = &factor * &a[col][j];
                a[r][j] = &a[r][j] - &sub_a;
                let sub_i = &factor * &inv[col][j];
                inv[r][j] = &inv[r][j] - &sub_i;
            }
        }
    }
    inv
}

/// Format a linking-form value for display.
pub fn format_linking_value(x: &BigRational) -> String {
    rat_to_string(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;
    use crate::seifert::catalog_get;

    fn e1(n: usize) -> AxisVector {
        AxisVector::basis(0, n)
    }

    #[test]
    fn trefoil_pairing_matrix() {
        // B = (t-1)/Delta * [[t-1, -1], [t, t-1]]
        let t = catalog_get("trefoil").unwrap();
        let b = pairing_matrix(&t).unwrap();
        let delta = t.alexander_raw();
        let tm1 = LaurentPoly::t_minus_one(None);
        let expect = |num: &LaurentPoly| {
            RatFnClass::from_fraction(&tm1.mul(num), &delta).unwrap()
        };
        assert_eq!(b[0][0], expect(&LaurentPoly::from_int_coeffs(&[-1, 1])));
        assert_eq!(b[0][1], expect(&LaurentPoly::from_int_coeffs(&[-1])));
        assert_eq!(b[1][0], expect(&LaurentPoly::from_int_coeffs(&[0, 1])));
        assert_eq!(b[1][1], expect(&LaurentPoly::from_int_coeffs(&[-1, 1])));
    }

    #[test]
    fn trefoil_self_pairing() {
        let t = catalog_get("trefoil").unwrap();
        let sp = self_pairing(&t, &e1(2)).unwrap();
        // Class of -t/(t^2 - t + 1).
        let expect = RatFnClass::from_fraction(
            &LaurentPoly::from_int_coeffs(&[0, -1]),
            &LaurentPoly::from_int_coeffs(&[1, -1, 1]),
        )
        .unwrap();
        assert_eq!(sp, expect);
        assert!(!sp.is_zero());
        // Zero vector pairs to zero.
        let zero = AxisVector::new(vec![LaurentPoly::zero(None); 2]);
        assert!(self_pairing(&t, &zero).unwrap().is_zero());
        // Dimension mismatch flagged.
        assert!(self_pairing(&t, &e1(3)).is_err());
    }

    #[test]
    fn figure_eight_self_pairing() {
        let f8 = catalog_get("figure_eight").unwrap();
        let sp = self_pairing(&f8, &e1(2)).unwrap();
        // Class of t/(-t^2 + 3t - 1) (equivalently -t/(t^2 - 3t + 1)).
        let expect = RatFnClass::from_fraction(
            &LaurentPoly::from_int_coeffs(&[0, 1]),
            &LaurentPoly::from_int_coeffs(&[-1, 3, -1]),
        )
        .unwrap();
        assert_eq!(sp, expect);
        assert!(!sp.is_zero());
    }

    #[test]
    fn hermitian_symmetry() {
        for name in ["trefoil", "figure_eight", "T2_5", "5_2"] {
            let k = catalog_get(name).unwrap();
            let b = pairing_matrix(&k).unwrap();
            let n = k.size();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        b[i][j],
                        b[j][i].bar().unwrap(),
                        "Hermitian symmetry failed at ({i},{j}) for {name}"
                    );
                }
            }
        }
    }

    #[test]
    fn mod_p_reductions() {
        let t = catalog_get("trefoil").unwrap();
        let m2 = self_pairing_mod_p(&t, &e1(2), 2).unwrap();
        assert!(!m2.is_zero());
        assert_eq!(m2.denominator(), &QPoly::from_int_coeffs(&[1, 1, 1]));
        let m3 = self_pairing_mod_p(&t, &e1(2), 3).unwrap();
        assert!(!m3.is_zero());
        let zero = AxisVector::new(vec![LaurentPoly::zero(None); 2]);
        assert!(self_pairing_mod_p(&t, &zero, 5).unwrap().is_zero());
    }

    #[test]
    fn good_primes_examples() {
        let t = catalog_get("trefoil").unwrap();
        assert_eq!(good_primes(&t, &e1(2), 3).unwrap(), vec![2, 3, 5]);
        let f8 = catalog_get("figure_eight").unwrap();
        assert_eq!(good_primes(&f8, &e1(2), 1).unwrap(), vec![2]);
        // Trivial pairing rejected.
        let u = crate::seifert::SeifertMatrix::unknot();
        assert!(matches!(
            good_primes(&u, &AxisVector::new(vec![]), 1),
            Err(Error::TrivialPairing(_))
        ));
    }

    #[test]
    fn witness_search() {
        let t = catalog_get("trefoil").unwrap();
        let w = witness(&t).unwrap().unwrap();
        assert_eq!(w, e1(2));
        assert!(witness(&crate::seifert::SeifertMatrix::unknot())
            .unwrap()
            .is_none());
        let f8 = catalog_get("figure_eight").unwrap();
        assert_eq!(witness(&f8).unwrap().unwrap(), e1(2));
    }

    #[test]
    fn double_cover_forms() {
        let t = catalog_get("trefoil").unwrap();
        let lf = double_cover_linking(&t).unwrap();
        assert_eq!(lf.factors, vec![BigInt::from(3)]);
        assert_eq!(lf.form.len(), 1);
        assert_eq!(lf.form[0][0], rat(1, 3));
        assert_eq!(
            lf.evaluate(&[BigInt::from(1), BigInt::from(0)], &[BigInt::from(1), BigInt::from(0)])
                .unwrap(),
            rat(1, 3)
        );

        let f8 = catalog_get("figure_eight").unwrap();
        let lf8 = double_cover_linking(&f8).unwrap();
        assert_eq!(lf8.factors, vec![BigInt::from(5)]);
        assert_eq!(
            lf8.evaluate(&[BigInt::from(1), BigInt::from(0)], &[BigInt::from(1), BigInt::from(0)])
                .unwrap(),
            rat(2, 5)
        );

        let u = crate::seifert::SeifertMatrix::unknot();
        let lfu = double_cover_linking(&u).unwrap();
        assert!(lfu.factors.is_empty());
    }

    #[test]
    fn group_order_matches_determinant() {
        for name in ["trefoil", "figure_eight", "T2_5", "T2_7", "5_2", "6_1"] {
            let k = catalog_get(name).unwrap();
            let lf = double_cover_linking(&k).unwrap();
            let delta_at_minus_one = k.alexander().eval(&rat(-1, 1));
            let expected: BigInt = delta_at_minus_one.numer().abs();
            assert_eq!(lf.group_order(), expected, "order mismatch for {name}");
        }
    }
}

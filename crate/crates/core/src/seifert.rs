//! Seifert matrices: validation, the bundled knot catalog, Alexander
//! polynomials, and the connected-sum / mirror / reversal algebra.
//!
//! Conventions. A Seifert matrix is an integer matrix of even size with
//! `det(A - A^T) = 1`. The bundled `trefoil` is the one with signature -2
//! at `omega = -1`; `mirror` is `-A^T` (negating signatures and jumps),
//! `reverse` is `A^T` (preserving both), and the concordance inverse is
//! their composite `-A`.

use crate::exact::laurent::LaurentPoly;
use crate::exact::qpoly::QPoly;
use crate::exact::ring::{det, QPolyCtx};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<BigInt>>,
    name: Option<String>,
}

impl SeifertMatrix {
    /// Validate and wrap an integer matrix as a Seifert matrix.
    pub fn new(entries: Vec<Vec<BigInt>>, name: Option<String>) -> Result<Self> {
        let n = entries.len();
        for row in &entries {
            if row.len() != n {
                return Err(Error::NotSeifert("matrix is not square".into()));
            }
        }
        if n % 2 != 0 {
            return Err(Error::NotSeifert(format!("odd size {n}")));
        }
        if n > 0 {
            // det(A - A^T) must be exactly 1.
            let skew: Vec<Vec<BigRational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| BigRational::from(&entries[i][j] - &entries[j][i]))
                        .collect()
                })
                .collect();
            let d = det(&crate::exact::ring::RatCtx, &skew);
            if d != BigRational::one() {
                return Err(Error::NotSeifert(format!(
                    "det(A - A^T) = {} instead of 1",
                    d
                )));
            }
        }
        Ok(SeifertMatrix { entries, name })
    }

    pub fn from_rows(rows: &[&[i64]], name: Option<&str>) -> Result<Self> {
        SeifertMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            name.map(|s| s.to_string()),
        )
    }

    /// The 0x0 unknot matrix.
    pub fn unknot() -> Self {
        SeifertMatrix {
            entries: vec![],
            name: Some("unknot".into()),
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn genus_bound(&self) -> usize {
        self.size() / 2
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: Option<String>) -> Self {
        self.name = name;
        self
    }

    pub fn entries(&self) -> &Vec<Vec<BigInt>> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    /// Indices grouped by the connected components of the nonzero pattern
    /// of `A + A^T` and `A - A^T`; block sums split into their summands, so
    /// determinants and signatures scale with the largest block instead of
    /// the full size.
    pub fn diagonal_blocks(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for i in 0..n {
            for j in i + 1..n {
                if !self.entries[i][j].is_zero() || !self.entries[j][i].is_zero() {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// The principal submatrix on the given indices, unvalidated.
    pub fn principal_block(&self, idx: &[usize]) -> SeifertMatrix {
        self.submatrix(idx)
    }

    /// The principal submatrix on the given indices, unvalidated (blocks of
    /// a Seifert matrix may have odd size on paper but never arise here).
    fn submatrix(&self, idx: &[usize]) -> SeifertMatrix {
        SeifertMatrix {
            entries: idx
                .iter()
                .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
                .collect(),
            name: None,
        }
    }

    /// `det(A - t A^T)` without unit normalization (the presentation
    /// determinant used by the Blanchfield pairing).
    pub fn alexander_raw(&self) -> LaurentPoly {
        let n = self.size();
        if n == 0 {
            return LaurentPoly::one(None);
        }
        let blocks = self.diagonal_blocks();
        if blocks.len() > 1 {
            let mut acc = LaurentPoly::one(None);
            for idx in blocks {
                acc = acc.mul(&self.submatrix(&idx).alexander_raw());
            }
            return acc;
        }
        let m: Vec<Vec<QPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        // entry A_ij - t A_ji
                        QPoly::from_coeffs(vec![
                            BigRational::from(self.entries[i][j].clone()),
                            -BigRational::from(self.entries[j][i].clone()),
                        ])
                    })
                    .collect()
            })
            .collect();
        let d = det(&QPolyCtx, &m);
        LaurentPoly::from_poly(&d, 0, None)
    }

    /// The Alexander polynomial, unit-normalized: lowest exponent zero,
    /// positive leading coefficient. The unknot gives 1.
    pub fn alexander(&self) -> LaurentPoly {
        self.alexander_raw().normalize()
    }

    /// Is the Alexander polynomial trivial (a unit)?
    pub fn has_unit_alexander(&self) -> bool {
        self.alexander() == LaurentPoly::one(None)
    }

    /// Block sum: Seifert matrix of the connected sum.
    pub fn block_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let n = self.size();
        let m = other.size();
        let mut entries = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                entries[i][j] = self.entries[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                entries[n + i][n + j] = other.entries[i][j].clone();
            }
        }
        SeifertMatrix { entries, name: None }
    }

    /// Iterated block sum of `count` copies.
    pub fn repeated(&self, count: usize) -> SeifertMatrix {
        let mut acc = SeifertMatrix::unknot();
        for _ in 0..count {
            acc = acc.block_sum(self);
        }
        acc
    }

    /// Mirror image: `-A^T`; negates signatures and jump functions.
    pub fn mirror(&self) -> SeifertMatrix {
        let n = self.size();
        SeifertMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| -self.entries[j][i].clone()).collect())
                .collect(),
            name: None,
        }
    }

    /// Orientation reversal: `A^T`; preserves signatures.
    pub fn reverse(&self) -> SeifertMatrix {
        let n = self.size();
        SeifertMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| self.entries[j][i].clone()).collect())
                .collect(),
            name: None,
        }
    }

    /// Concordance inverse: reversed mirror, `-A`.
    pub fn concordance_inverse(&self) -> SeifertMatrix {
        let n = self.size();
        SeifertMatrix {
            entries: (0..n)
                .map(|i| (0..n).map(|j| -self.entries[i][j].clone()).collect())
                .collect(),
            name: None,
        }
    }

    /// Symmetrized form `A + A^T` (the double-cover presentation matrix).
    pub fn symmetrized(&self) -> Vec<Vec<BigInt>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &self.entries[i][j] + &self.entries[j][i])
                    .collect()
            })
            .collect()
    }
}

/// Band Seifert matrix of the (2, q) torus knot, `q` odd and at least 3:
/// -1 on the diagonal, +1 on the superdiagonal, size q - 1.
pub fn torus_knot_2q(q: i64) -> Result<SeifertMatrix> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::BadParameter(format!(
            "torus knot parameter must be odd and >= 3, got {q}"
        )));
    }
    let n = (q - 1) as usize;
    let mut entries = vec![vec![BigInt::zero(); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] = BigInt::from(-1);
        if i + 1 < n {
            row[i + 1] = BigInt::one();
        }
    }
    SeifertMatrix::new(entries, Some(format!("T2_{q}")))
}

/// The bundled catalog, merged under any records from the file named by the
/// `CONCORDIA_CATALOG` environment variable (user entries win).
pub fn catalog() -> Vec<SeifertMatrix> {
    let mut knots = builtin_catalog();
    if let Ok(path) = std::env::var("CONCORDIA_CATALOG") {
        if let Ok(text) = std::fs::read_to_string(&path) {
            if let Ok(user) = crate::io::parse_catalog(&text) {
                for k in user {
                    knots.retain(|b| b.name() != k.name());
                    knots.push(k);
                }
            }
        }
    }
    knots
}

fn builtin_catalog() -> Vec<SeifertMatrix> {
    let mut knots = vec![
        SeifertMatrix::unknot(),
        SeifertMatrix::from_rows(&[&[-1, 1], &[0, -1]], Some("trefoil")).unwrap(),
        SeifertMatrix::from_rows(&[&[1, 1], &[0, -1]], Some("figure_eight")).unwrap(),
        SeifertMatrix::from_rows(&[&[-1, 1], &[0, -2]], Some("5_2")).unwrap(),
        SeifertMatrix::from_rows(&[&[1, 1], &[0, -2]], Some("6_1")).unwrap(),
    ];
    for q in [5, 7, 9] {
        knots.push(torus_knot_2q(q).unwrap());
    }
    knots
}

/// Look a knot up by name.
pub fn catalog_get(name: &str) -> Result<SeifertMatrix> {
    catalog()
        .into_iter()
        .find(|k| k.name() == Some(name))
        .ok_or_else(|| Error::NotFound(format!("no catalog knot named {name:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(SeifertMatrix::from_rows(&[&[-1, 1], &[0, -1]], None).is_ok());
        // Identity has zero skew part.
        assert!(matches!(
            SeifertMatrix::from_rows(&[&[1, 0], &[0, 1]], None),
            Err(Error::NotSeifert(_))
        ));
        // Odd size.
        assert!(SeifertMatrix::from_rows(&[&[0]], None).is_err());
        // Unknot.
        assert_eq!(SeifertMatrix::unknot().size(), 0);
    }

    #[test]
    fn alexander_polynomials() {
        let trefoil = catalog_get("trefoil").unwrap();
        assert_eq!(trefoil.alexander(), LaurentPoly::from_int_coeffs(&[1, -1, 1]));
        assert_eq!(
            SeifertMatrix::unknot().alexander(),
            LaurentPoly::one(None)
        );
        let fig8 = catalog_get("figure_eight").unwrap();
        assert_eq!(fig8.alexander(), LaurentPoly::from_int_coeffs(&[1, -3, 1]));
        let t25 = catalog_get("T2_5").unwrap();
        assert_eq!(
            t25.alexander(),
            LaurentPoly::from_int_coeffs(&[1, -1, 1, -1, 1])
        );
        let t61 = catalog_get("6_1").unwrap();
        assert_eq!(t61.alexander(), LaurentPoly::from_int_coeffs(&[2, -5, 2]));
    }

    #[test]
    fn alexander_at_one_is_unit() {
        use crate::exact::rat::rat;
        for k in catalog() {
            let v = k.alexander().eval(&rat(1, 1));
            assert!(
                v == rat(1, 1) || v == rat(-1, 1),
                "Delta(1) = {v} for {:?}",
                k.name()
            );
        }
    }

    #[test]
    fn block_sum_multiplies_alexander() {
        let t = catalog_get("trefoil").unwrap();
        let double = t.block_sum(&t);
        let expect = t.alexander().mul(&t.alexander()).normalize();
        assert_eq!(double.alexander(), expect);
        // Unknot is neutral.
        assert_eq!(t.block_sum(&SeifertMatrix::unknot()).alexander(), t.alexander());
    }

    #[test]
    fn mirror_conjugates_alexander() {
        for name in ["trefoil", "figure_eight", "T2_5", "5_2"] {
            let k = catalog_get(name).unwrap();
            let m = k.mirror();
            assert_eq!(
                m.alexander(),
                k.alexander().bar().normalize(),
                "mirror Alexander mismatch for {name}"
            );
        }
    }

    #[test]
    fn torus_parameter_validation() {
        assert!(torus_knot_2q(4).is_err());
        assert!(torus_knot_2q(1).is_err());
        let t3 = torus_knot_2q(3).unwrap();
        assert_eq!(t3.entries(), catalog_get("trefoil").unwrap().entries());
    }

    #[test]
    fn catalog_lookup() {
        assert!(catalog_get("nosuch").is_err());
        assert_eq!(catalog_get("unknot").unwrap().size(), 0);
    }
}

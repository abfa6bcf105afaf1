//! Smith normal form of integer matrices, with the unimodular transforms.
//! Used to present the first homology of the branched double cover and its
//! linking form.

use num::bigint::BigInt;
use num::traits::{Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal,
/// `factors[0] | factors[1] | ...` (nonnegative; trailing zeros possible).
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub factors: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let k = if n == 0 { 0 } else { a[0].len() };
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = &out[i][j] + &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// Smith normal form of a rectangular integer matrix.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut a = m.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let steps = rows.min(cols);
    for k in 0..steps {
        loop {
            // Find the entry of minimal nonzero absolute value in the
            // trailing block and move it to the pivot position.
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    match pivot {
                        None => pivot = Some((i, j)),
                        Some((pi, pj)) => {
                            if a[i][j].abs() < a[pi][pj].abs() {
                                pivot = Some((i, j));
                            }
                        }
                    }
                }
            }
            let (pi, pj) = match pivot {
                None => {
                    return finish(a, u, v, steps);
                }
                Some(p) => p,
            };
            if pi != k {
                a.swap(pi, k);
                u.swap(pi, k);
            }
            if pj != k {
                for row in a.iter_mut() {
                    row.swap(pj, k);
                }
                for row in v.iter_mut() {
                    row.swap(pj, k);
                }
            }
            // Clear the pivot row and column by Euclidean steps.
            let mut dirty = false;
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let q = div_round(&a[i][k], &a[k][k]);
                if !q.is_zero() {
                    for j in 0..cols {
                        let d = &q * &a[k][j];
                        a[i][j] = &a[i][j] - &d;
                    }
                    for j in 0..rows {
                        let d = &q * &u[k][j];
                        u[i][j] = &u[i][j] - &d;
                    }
                }
                if !a[i][k].is_zero() {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let q = div_round(&a[k][j], &a[k][k]);
                if !q.is_zero() {
                    for i in 0..rows {
                        let d = &q * &a[i][k];
                        a[i][j] = &a[i][j] - &d;
                    }
                    for i in 0..cols {
                        let d = &q * &v[i][k];
                        v[i][j] = &v[i][j] - &d;
                    }
                }
                if !a[k][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot row/column clean. Enforce divisibility of the trailing
            // block by the pivot: fold an offending row in and retry.
            let mut offender: Option<(usize, usize)> = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&a[i][j] % &a[k][k]).is_zero() {
                        offender = Some((i, j));
                        break 'scan;
                    }
                }
            }
            match offender {
                None => break,
                Some((i, _)) => {
                    for j in 0..cols {
                        let add = a[i][j].clone();
                        a[k][j] = &a[k][j] + &add;
                    }
                    for j in 0..rows {
                        let add = u[i][j].clone();
                        u[k][j] = &u[k][j] + &add;
                    }
                }
            }
        }
    }
    finish(a, u, v, steps)
}

/// Rounded division minimizing the remainder magnitude.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num::integer::div_rem(a.clone(), b.clone());
    if &r.abs() * &two > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn finish(mut a: IntMatrix, mut u: IntMatrix, v: IntMatrix, steps: usize) -> SmithDecomposition {
    // Make the diagonal nonnegative (flipping rows of u as needed).
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    for k in 0..steps.min(cols) {
        if a[k][k].is_negative() {
            for j in 0..cols {
                a[k][j] = -a[k][j].clone();
            }
            for x in u[k].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let factors = (0..steps).map(|k| a[k][k].clone()).collect();
    SmithDecomposition { factors, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn check(m: &IntMatrix, expect: &[i64]) {
        let s = smith_normal_form(m);
        let got: Vec<BigInt> = s.factors.clone();
        let want: Vec<BigInt> = expect.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(got, want);
        // u m v must be the diagonal of the factors.
        let d = mat_mul(&mat_mul(&s.u, m), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j && i < s.factors.len() {
                    assert_eq!(x, &s.factors[i]);
                } else {
                    assert!(x.is_zero(), "nonzero off-diagonal at {i},{j}: {x}");
                }
            }
        }
        // Divisibility chain.
        for w in s.factors.windows(2) {
            if !w[0].is_zero() {
                assert!((&w[1] % &w[0]).is_zero());
            } else {
                assert!(w[1].is_zero());
            }
        }
    }

    #[test]
    fn spec_cases() {
        check(&mat(&[&[-2, 1], &[1, -2]]), &[1, 3]);
        check(&mat(&[&[1, 0], &[0, 1]]), &[1, 1]);
        check(&mat(&[&[2, 1], &[1, -2]]), &[1, 5]);
    }

    #[test]
    fn rectangular_and_zero() {
        check(&mat(&[&[2, 4, 4]]), &[2]);
        check(&mat(&[&[0, 0], &[0, 0]]), &[0, 0]);
        check(&mat(&[&[2, 0], &[0, 3]]), &[1, 6]);
        check(&mat(&[&[6, 0], &[0, 10]]), &[2, 30]);
    }
}

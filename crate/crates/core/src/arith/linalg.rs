//! Dense linear algebra over a field.

use super::poly::Field;

/// Solve `A X = B` for square `A` (row-major) and several right-hand sides
/// given as columns. Returns `None` when `A` is singular.
pub fn solve<F: Field>(a: &[Vec<F>], rhs: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let m = rhs.len();
    let mut rows: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut r = a[i].clone();
            r.extend(rhs.iter().map(|col| col[i].clone()));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, piv);
        let inv = rows[col][col].inv();
        for v in rows[col].iter_mut() {
            *v = v.mul(&inv);
        }
        for r in 0..n {
            if r == col || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for k in col..n + m {
                let t = rows[col][k].mul(&f);
                rows[r][k] = rows[r][k].sub(&t);
            }
        }
    }
    Some(
        (0..m)
            .map(|j| (0..n).map(|i| rows[i][n + j].clone()).collect())
            .collect(),
    )
}

/// Determinant by Gaussian elimination.
pub fn det<F: Field>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut rows = a.to_vec();
    let mut acc = F::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return F::zero();
        };
        if piv != col {
            rows.swap(col, piv);
            acc = acc.neg();
        }
        acc = acc.mul(&rows[col][col]);
        let inv = rows[col][col].inv();
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].mul(&inv);
            for k in col..n {
                let t = rows[col][k].mul(&f);
                rows[r][k] = rows[r][k].sub(&t);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{GaussianRational as Gq, Ring};

    fn m(v: &[&[i64]]) -> Vec<Vec<Gq>> {
        v.iter().map(|r| r.iter().map(|&x| Gq::from_int(x)).collect()).collect()
    }

    #[test]
    fn solve_and_det() {
        let a = m(&[&[0, 1], &[2, 3]]);
        assert_eq!(det(&a), Gq::from_int(-2));
        let x = solve(&a, &[vec![Gq::from_int(1), Gq::from_int(5)]]).unwrap();
        assert_eq!(x[0], vec![Gq::from_int(1), Gq::from_int(1)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[]).is_none());
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), Gq::zero());
    }
}

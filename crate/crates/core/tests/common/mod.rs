//! Helpers shared by the integration suites: small constructors and an
//! independent permanent-based oracle for diagonal tuples.
#![allow(dead_code)]

use hodgedisc::{GaussianRational, HermitianMatrix, Rational};

pub fn rat(v: i64) -> Rational {
    Rational::from_int(v)
}

pub fn rq(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn gauss(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(rat(re), rat(im))
}

pub fn diag(values: &[i64]) -> HermitianMatrix {
    let values: Vec<Rational> = values.iter().map(|&v| rat(v)).collect();
    HermitianMatrix::diag(&values)
}

/// Real symmetric matrix from integer rows; panics on asymmetry.
pub fn sym(rows: &[&[i64]]) -> HermitianMatrix {
    let rows: Vec<Vec<GaussianRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| gauss(v, 0)).collect())
        .collect();
    HermitianMatrix::from_rows(rows).expect("symmetric integer input")
}

/// Permanent of a square rational matrix by expansion over permutations.
/// Exponential and tiny on purpose: it is a third, structurally different
/// route used only to cross-check diagonal tuples.
pub fn permanent(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    let mut indices: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    permute(&mut indices, 0, &mut |perm| {
        let mut term = Rational::one();
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &rows[i][j];
        }
        total = &total + &term;
    });
    total
}

fn permute(indices: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == indices.len() {
        visit(indices);
        return;
    }
    for i in k..indices.len() {
        indices.swap(k, i);
        permute(indices, k + 1, visit);
        indices.swap(k, i);
    }
}

/// Mixed discriminant of an all-diagonal tuple via the permanent of the
/// matrix whose `j`-th column is the diagonal of the `j`-th argument.
pub fn diagonal_tuple_oracle(diagonals: &[Vec<Rational>]) -> Rational {
    let n = diagonals.len();
    let rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| diagonals.iter().map(|d| d[i].clone()).collect())
        .collect();
    permanent(&rows)
}

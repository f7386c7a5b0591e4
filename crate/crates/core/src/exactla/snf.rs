use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{det, IntMatrix};
use crate::error::{Error, Result};
use crate::value::ReidValue;

/// Smith normal form `u * input * v = d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `d_1 | d_2 | ...`, zeros last.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().take_while(|x| !x.is_zero()).count()
    }
}

/// Smallest nonzero absolute value in the trailing block, lowest row-major
/// index on ties.
fn find_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((i, j, a));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Deterministic Smith normal form with unimodular transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = find_pivot(&d, t) else {
                return SnfResult { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = d.get(i, t) / &pivot;
                if !q.is_zero() {
                    let neg = -q;
                    d.add_row_multiple(i, t, &neg);
                    u.add_row_multiple(i, t, &neg);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = d.get(t, j) / &pivot;
                if !q.is_zero() {
                    let neg = -q;
                    d.add_col_multiple(j, t, &neg);
                    v.add_col_multiple(j, t, &neg);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { d, u, v }
}

pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank()
}

/// Order of `Z^rows / image(m)` for an arbitrary `rows x cols` matrix.
pub fn coker_order_rect(m: &IntMatrix) -> ReidValue {
    let snf = smith_normal_form(m);
    if snf.rank() < m.rows() {
        return ReidValue::Infinite;
    }
    let mut order = BigUint::one();
    for x in snf.invariants() {
        order *= x.magnitude();
    }
    ReidValue::Finite(order)
}

/// Order of the cokernel of a square matrix acting on `Z^n`.
pub fn coker_order(m: &IntMatrix) -> Result<ReidValue> {
    m.require_square("coker_order")?;
    Ok(coker_order_rect(m))
}

pub fn has_eigenvalue_one(m: &IntMatrix) -> Result<bool> {
    Ok(det(&m.minus_identity()?)?.is_zero())
}

/// Is `b` an integer combination of the columns of `basis`?
pub fn lattice_contains(basis: &IntMatrix, b: &[BigInt]) -> Result<bool> {
    if b.len() != basis.rows() {
        return Err(Error::Shape(format!(
            "vector of length {} against a lattice in Z^{}",
            b.len(),
            basis.rows()
        )));
    }
    let snf = smith_normal_form(basis);
    let ub = snf.u.mul_vec(b)?;
    let inv = snf.invariants();
    Ok(ub.iter().enumerate().all(|(i, x)| match inv.get(i) {
        Some(d) if !d.is_zero() => x.is_multiple_of(d),
        _ => x.is_zero(),
    }))
}

/// Solves `x * a = b` for an integer matrix `x`, where `a` must have full row
/// rank. Returns a precondition error when the system has no integral
/// solution or the solution is not determined.
pub fn solve_right(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    if a.cols() != b.cols() {
        return Err(Error::Shape(format!(
            "x*a=b with a {}x{} and b {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let snf = smith_normal_form(a);
    let k = a.rows();
    if snf.rank() < k {
        return Err(Error::Precondition(format!(
            "coefficient matrix has rank {} < {k}; solution not determined",
            snf.rank()
        )));
    }
    // x u^{-1} d = b v, so with y = x u^{-1}: column j of y is (b v)_j / d_j.
    let bv = b.checked_mul(&snf.v)?;
    for j in k..bv.cols() {
        if (0..bv.rows()).any(|i| !bv.get(i, j).is_zero()) {
            return Err(Error::Precondition("inconsistent system".into()));
        }
    }
    let mut y = IntMatrix::zeros(b.rows(), k);
    for j in 0..k {
        let dj = snf.d.get(j, j);
        for i in 0..b.rows() {
            let (q, r) = bv.get(i, j).div_rem(dj);
            if !r.is_zero() {
                return Err(Error::Precondition("no integral solution".into()));
            }
            y.set(i, j, q);
        }
    }
    let x = y.checked_mul(&snf.u)?;
    debug_assert_eq!(&x.checked_mul(a)?, b);
    Ok(x)
}

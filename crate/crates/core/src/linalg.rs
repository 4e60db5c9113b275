//! Exact kernel computation by fraction-free Gaussian elimination.
//!
//! Rows are scaled to primitive integer vectors, then eliminated with
//! cross-multiplication (`row ← p·row − a·pivot_row`) followed by division by
//! the row content. Pivots are chosen as the first row with a nonzero entry
//! in the current column, scanning columns left to right.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::RWeightSet;
use crate::scalar::Scalar;
use crate::ybe::YBLinearSystem;

#[derive(Clone, Debug, PartialEq)]
pub struct Nullspace {
    pub nullity: usize,
    pub basis: Vec<RWeightSet>,
}

/// Kernel of the Yang-Baxter system over the rationals.
pub fn nullspace(system: &YBLinearSystem) -> Result<Nullspace> {
    let cols = system.columns.len();
    let rows = system
        .matrix
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.as_rational().cloned().ok_or(Error::ExactOnly))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = kernel_basis(&rows, cols)
        .into_iter()
        .map(|v| RWeightSet::from_vec(system.n, v.into_iter().map(Scalar::from).collect()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Nullspace {
        nullity: basis.len(),
        basis,
    })
}

fn primitive_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
    remove_content(&mut ints);
    ints
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Basis of `{v : M v = 0}` for a dense rational matrix with `cols` columns.
///
/// One basis vector per free column `f`, with `v[f] = 1` and zeros on the
/// other free columns.
pub fn kernel_basis(matrix: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let mut m: Vec<Vec<BigInt>> = matrix.iter().map(|r| primitive_row(r)).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        if m[rank][col].is_negative() {
            for x in m[rank].iter_mut() {
                *x = -&*x;
            }
        }
        let pivot_row = m[rank].clone();
        let pivot = pivot_row[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x = &pivot * &*x - &factor * p;
            }
            remove_content(row);
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }

    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                if !m[r][f].is_zero() {
                    v[pc] = -BigRational::new(m[r][f].clone(), m[r][pc].clone());
                }
            }
            v
        })
        .collect()
}

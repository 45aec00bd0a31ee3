//! Exact sparse linear algebra over the rationals.
//!
//! [`Echelon`] eliminates column vectors one at a time, remembering how
//! every stored row was built from the inputs. That gives ranks, kernels
//! and preimages from a single pass. Vectors are always reduced against
//! pivots in increasing coordinate order, so the residue of a vector lies
//! in the span of the non-pivot coordinates and depends only on the span
//! of the inputs, not on their order.
//!
//! [`bareiss_rank`] is a dense fraction-free integer rank kept as an
//! independent check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalar::{bigint_lcm, Rational};

pub type SparseVec = BTreeMap<usize, Rational>;

/// `a += c * b`, dropping entries that cancel.
pub fn axpy(a: &mut SparseVec, c: &Rational, b: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (k, v) in b {
        let e = a.entry(*k).or_insert_with(Rational::zero);
        *e += &(c * v);
        if e.is_zero() {
            a.remove(k);
        }
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            cols: vec![SparseVec::new(); ncols],
        }
    }

    pub fn from_columns(nrows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.keys().all(|&r| r < nrows)));
        SparseMatrix {
            nrows,
            ncols: cols.len(),
            cols,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.cols[c].get(&r).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.ncols]; self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, v) in x {
            axpy(&mut out, v, &self.cols[*c]);
        }
        out
    }

    /// `self * other`; `None` on a shape mismatch.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        if self.ncols != other.nrows {
            return None;
        }
        let cols = other.cols.iter().map(|c| self.mul_vec(c)).collect();
        Some(SparseMatrix::from_columns(self.nrows, cols))
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.nrows);
        for c in &self.cols {
            e.insert(c);
        }
        e.rank()
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    comb: SparseVec,
}

/// Incremental echelon form of a list of vectors in `ℚ^dim`.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<Row>,
    pivot_row: BTreeMap<usize, usize>,
    kernel: Vec<SparseVec>,
    inputs: usize,
}

/// `v = Σ combination[k] · input_k + residue`, with the residue supported
/// off the pivot coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub combination: SparseVec,
    pub residue: SparseVec,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
            kernel: Vec::new(),
            inputs: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs
    }

    /// Pivot coordinates in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_row.keys().copied().collect()
    }

    /// Coordinates not hit by any pivot: a basis of the canonical
    /// complement of the span.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.dim)
            .filter(|k| !self.pivot_row.contains_key(k))
            .collect()
    }

    /// Relations `Σ c_k input_k = 0`, one per dependent input.
    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut residue = v.clone();
        let mut combination = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = residue
                .range(cursor..)
                .find(|(k, _)| self.pivot_row.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[self.pivot_row[&k]];
            let minus = -&c;
            axpy(&mut residue, &minus, &row.vec);
            axpy(&mut combination, &c, &row.comb);
            cursor = k + 1;
        }
        Reduction {
            combination,
            residue,
        }
    }

    /// Inserts the next input vector; returns whether it raised the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.keys().all(|&k| k < self.dim));
        let idx = self.inputs;
        self.inputs += 1;
        let red = self.reduce(v);
        let mut comb = red.combination;
        for c in comb.values_mut() {
            *c = -&*c;
        }
        comb.insert(idx, Rational::one());
        match red.residue.iter().next() {
            None => {
                self.kernel.push(comb);
                false
            }
            Some((&p, lead)) => {
                let inv = lead.recip().expect("nonzero pivot");
                let vec = red.residue.iter().map(|(k, c)| (*k, c * &inv)).collect();
                let comb = comb.iter().map(|(k, c)| (*k, c * &inv)).collect();
                self.pivot_row.insert(p, self.rows.len());
                self.rows.push(Row { vec, comb });
                true
            }
        }
    }

    /// Reduced row echelon basis of the span: leading entry 1 at each
    /// pivot, zero at every other pivot. Sorted by pivot.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        let mut done: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&p, &r) in self.pivot_row.iter().rev() {
            let mut v = self.rows[r].vec.clone();
            for (q, row) in &done {
                if let Some(c) = v.get(q).cloned() {
                    axpy(&mut v, &-c, row);
                }
            }
            done.insert(p, v);
        }
        done.into_values().collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).residue.is_empty()
    }
}

/// Clears denominators row by row.
pub fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::from(1), |acc, r| bigint_lcm(&acc, r.denom()));
            row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
        })
        .collect()
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn bareiss_rank(m: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let nrows = a.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = a[0].len();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..nrows {
            for c in col + 1..ncols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

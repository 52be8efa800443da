//! Exact linear algebra over [`Scalar`]: sparse row reduction, rank,
//! inverses, kernels and linear solves.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// A sparse vector indexed by column.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<Scalar>>;

/// `v -= c * w`, dropping cancelled entries.
fn axpy(v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    for (k, x) in w {
        let delta = c * x;
        match v.get_mut(k) {
            Some(entry) => {
                *entry -= &delta;
                if entry.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(*k, -delta);
            }
        }
    }
}

/// Incrementally maintained row echelon basis. Columns `< limit` are
/// eligible pivots; columns at or past `limit` ride along (augmentation).
#[derive(Debug, Clone)]
pub struct Echelon {
    limit: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(limit: usize) -> Self {
        Echelon { limit, rows: BTreeMap::new() }
    }

    /// Reduces `v` against the current pivots.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        loop {
            let lead = v.range(..self.limit).find(|(k, _)| self.rows.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = lead else { return v };
            axpy(&mut v, &c, &self.rows[&k]);
        }
    }

    /// Inserts `v`; returns `true` when it was independent of the rows so far.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        let Some((&k, lead)) = v.range(..self.limit).next() else { return false };
        let inv = lead.inv().expect("nonzero pivot");
        let v: SparseVec = v.into_iter().map(|(j, x)| (j, &x * &inv)).collect();
        self.rows.insert(k, v);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Back-substitutes so every pivot column is zero outside its own row.
    pub fn into_reduced(mut self) -> BTreeMap<usize, SparseVec> {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &p in &pivots {
            let pivot_row = self.rows[&p].clone();
            for (_, row) in self.rows.range_mut(..p) {
                if let Some(c) = row.get(&p).cloned() {
                    axpy(row, &c, &pivot_row);
                }
            }
        }
        self.rows
    }
}

/// Rank of a set of sparse vectors.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut ech = Echelon::new(usize::MAX);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Inverse of a square sparse matrix given by rows; `None` if singular.
pub fn inverse_sparse(rows: &[SparseVec]) -> Option<Vec<SparseVec>> {
    let n = rows.len();
    let mut ech = Echelon::new(n);
    for (i, r) in rows.iter().enumerate() {
        let mut aug = r.clone();
        aug.insert(n + i, Scalar::one());
        if !ech.insert(aug) {
            return None;
        }
    }
    let reduced = ech.into_reduced();
    let mut out = vec![SparseVec::new(); n];
    for (p, row) in reduced {
        out[p] = row.range(n..).map(|(k, x)| (k - n, x.clone())).collect();
    }
    Some(out)
}

pub fn to_sparse(row: &[Scalar]) -> SparseVec {
    row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect()
}

pub fn to_dense(row: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (k, x) in row {
        out[*k] = x.clone();
    }
    out
}

/// Inverse of a dense square matrix; `None` if singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let rows: Vec<SparseVec> = m.iter().map(|r| to_sparse(r)).collect();
    inverse_sparse(&rows).map(|inv| inv.iter().map(|r| to_dense(r, n)).collect())
}

/// A basis of `{x : M x = 0}` for an `r × ncols` matrix.
pub fn kernel(m: &Matrix, ncols: usize) -> Vec<Vec<Scalar>> {
    let mut ech = Echelon::new(ncols);
    for r in m {
        ech.insert(to_sparse(r));
    }
    let reduced = ech.into_reduced();
    let free: Vec<usize> = (0..ncols).filter(|c| !reduced.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Scalar::zero(); ncols];
            x[f] = Scalar::one();
            for (p, row) in &reduced {
                if let Some(c) = row.get(&f) {
                    x[*p] = -c;
                }
            }
            x
        })
        .collect()
}

/// Solves `M x = b` for square nonsingular `M` given its inverse rows.
pub fn apply_sparse(inv: &[SparseVec], b: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (i, row) in inv.iter().enumerate() {
        let mut acc = Scalar::zero();
        for (k, x) in row {
            if let Some(y) = b.get(k) {
                acc += &(x * y);
            }
        }
        if !acc.is_zero() {
            out.insert(i, acc);
        }
    }
    out
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).filter(|&k| !row[k].is_zero()).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

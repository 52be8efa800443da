//! Symmetric superalgebras given by structure constants.
//!
//! An algebra is loaded from a [`SuperAlgebraSpec`] (the JSON wire format),
//! validated, and then carries its dual basis so that teleporters and trace
//! pairings never need to re-solve a linear system.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalar::Scalar;

/// Sparse vector over the basis, `[[index, coeff], ...]` on the wire.
pub type SparseElem = Vec<(usize, Scalar)>;

/// Dense coordinates of an element of `A` in its basis.
pub type Elem = Vec<Scalar>;

/// Serialized form of a symmetric superalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuperAlgebraSpec {
    pub names: Vec<String>,
    pub parity: Vec<u8>,
    /// `mul[i][j]` is the sparse expansion of `b_i b_j`; omitted entries are zero.
    pub mul: Vec<Vec<SparseElem>>,
    pub trace: Vec<Scalar>,
    pub unit: SparseElem,
}

/// A validated symmetric superalgebra with cached dual basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    names: Vec<String>,
    parity: Vec<u8>,
    mul: Vec<Vec<SparseElem>>,
    trace: Vec<Scalar>,
    unit: SparseElem,
    gram: Matrix,
    dual: Vec<SparseElem>,
}

fn dense(sparse: &SparseElem, m: usize) -> Elem {
    let mut out = vec![Scalar::zero(); m];
    for (k, c) in sparse {
        out[*k] += c;
    }
    out
}

fn sparse(dense: &[Scalar]) -> SparseElem {
    dense.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

impl SuperAlgebra {
    /// Validates a spec: shape, parity grading, unit laws, associativity,
    /// trace parity, supersymmetry and nondegeneracy, in that order.
    pub fn load(spec: &SuperAlgebraSpec) -> Result<Self> {
        let m = spec.names.len();
        if m == 0 {
            return Err(Error::MalformedSpec("empty basis".into()));
        }
        let shape_err = |what: &str| Err(Error::MalformedSpec(format!("{what} has wrong length (dimension is {m})")));
        if spec.parity.len() != m {
            return shape_err("parity");
        }
        if spec.trace.len() != m {
            return shape_err("trace");
        }
        if spec.mul.len() != m || spec.mul.iter().any(|row| row.len() != m) {
            return shape_err("mul table");
        }
        if let Some(p) = spec.parity.iter().find(|&&p| p > 1) {
            return Err(Error::MalformedSpec(format!("parity {p} is not 0 or 1")));
        }
        let in_range = |v: &SparseElem| v.iter().all(|(k, _)| *k < m);
        if !in_range(&spec.unit) || spec.mul.iter().flatten().any(|v| !in_range(v)) {
            return Err(Error::MalformedSpec("basis index out of range".into()));
        }
        let mut names = spec.names.clone();
        names.dedup();
        if names.len() != m {
            return Err(Error::MalformedSpec("duplicate basis names".into()));
        }

        // canonicalize sparse entries (merge duplicates, drop zeros)
        let mul: Vec<Vec<SparseElem>> =
            spec.mul.iter().map(|row| row.iter().map(|v| sparse(&dense(v, m))).collect()).collect();
        let unit = sparse(&dense(&spec.unit, m));

        let mut alg = SuperAlgebra {
            names: spec.names.clone(),
            parity: spec.parity.clone(),
            mul,
            trace: spec.trace.clone(),
            unit,
            gram: Vec::new(),
            dual: Vec::new(),
        };

        for i in 0..m {
            for j in 0..m {
                let want = alg.parity[i] ^ alg.parity[j];
                if alg.mul[i][j].iter().any(|(k, _)| alg.parity[*k] != want) {
                    return Err(Error::ParityViolation(format!(
                        "b{i} b{j} has a component of the wrong parity"
                    )));
                }
            }
        }
        if alg.unit.iter().any(|(k, _)| alg.parity[*k] != 0) {
            return Err(Error::ParityViolation("unit is not even".into()));
        }
        if alg.unit.is_empty() {
            return Err(Error::MalformedSpec("unit is zero".into()));
        }
        let unit = alg.unit_elem();
        for i in 0..m {
            let b = alg.basis_elem(i);
            if alg.mul_elem(&unit, &b) != b || alg.mul_elem(&b, &unit) != b {
                return Err(Error::UnitLaw(i));
            }
        }
        for i in 0..m {
            for j in 0..m {
                let ij = dense(&alg.mul[i][j], m);
                for k in 0..m {
                    let left = alg.mul_elem(&ij, &alg.basis_elem(k));
                    let jk = dense(&alg.mul[j][k], m);
                    let right = alg.mul_elem(&alg.basis_elem(i), &jk);
                    if left != right {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        if let Some(k) = (0..m).find(|&k| alg.parity[k] == 1 && !alg.trace[k].is_zero()) {
            return Err(Error::OddTrace(k));
        }
        let gram: Matrix = (0..m)
            .map(|i| (0..m).map(|j| alg.trace_sparse(&alg.mul[i][j])).collect())
            .collect();
        for i in 0..m {
            for j in 0..m {
                let sign = Scalar::sign(alg.parity[i] & alg.parity[j] == 1);
                if gram[i][j] != &sign * &gram[j][i] {
                    return Err(Error::NotSupersymmetric(i, j));
                }
            }
        }
        // C G = I  <=>  tr(b_j^∨ b_l) = δ_{jl}
        let c = linalg::inverse(&gram).ok_or(Error::DegenerateTrace)?;
        alg.dual = c.iter().map(|row| sparse(row)).collect();
        alg.gram = gram;
        Ok(alg)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let spec: SuperAlgebraSpec = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Self::load(&spec)
    }

    pub fn to_spec(&self) -> SuperAlgebraSpec {
        SuperAlgebraSpec {
            names: self.names.clone(),
            parity: self.parity.clone(),
            mul: self.mul.clone(),
            trace: self.trace.clone(),
            unit: self.unit.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn parity(&self, k: usize) -> u8 {
        self.parity[k]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parity
    }

    pub fn is_purely_even(&self) -> bool {
        self.parity.iter().all(|&p| p == 0)
    }

    /// Structure constants of `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseElem {
        &self.mul[i][j]
    }

    pub fn unit(&self) -> &SparseElem {
        &self.unit
    }

    /// The basis index of the unit when the unit is itself a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        match self.unit.as_slice() {
            [(k, c)] if c.is_one() => Some(*k),
            _ => None,
        }
    }

    pub fn trace_of_basis(&self, k: usize) -> &Scalar {
        &self.trace[k]
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// Expansion of `b_k^∨` in the basis; `tr(b_j^∨ b_l) = δ_{jl}`.
    pub fn dual(&self, k: usize) -> &SparseElem {
        &self.dual[k]
    }

    pub fn dual_matrix(&self) -> Matrix {
        self.dual.iter().map(|d| dense(d, self.dim())).collect()
    }

    pub fn basis_elem(&self, k: usize) -> Elem {
        let mut e = vec![Scalar::zero(); self.dim()];
        e[k] = Scalar::one();
        e
    }

    pub fn unit_elem(&self) -> Elem {
        dense(&self.unit, self.dim())
    }

    pub fn zero_elem(&self) -> Elem {
        vec![Scalar::zero(); self.dim()]
    }

    pub fn to_dense(&self, v: &SparseElem) -> Elem {
        dense(v, self.dim())
    }

    pub fn to_sparse(&self, v: &[Scalar]) -> SparseElem {
        sparse(v)
    }

    pub fn mul_elem(&self, x: &[Scalar], y: &[Scalar]) -> Elem {
        let m = self.dim();
        let mut out = vec![Scalar::zero(); m];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in &self.mul[i][j] {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    fn trace_sparse(&self, v: &SparseElem) -> Scalar {
        v.iter().map(|(k, c)| c * &self.trace[*k]).sum()
    }

    pub fn trace_elem(&self, x: &[Scalar]) -> Scalar {
        x.iter().zip(&self.trace).map(|(a, t)| a * t).sum()
    }

    /// Parity of a homogeneous nonzero element; `None` if mixed or zero.
    pub fn elem_parity(&self, x: &[Scalar]) -> Option<u8> {
        let mut parities = x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| self.parity[k]);
        let first = parities.next()?;
        parities.all(|p| p == first).then_some(first)
    }

    /// Bases of the supercenter `Z(A)` and of its even part `Z(A)_0`.
    pub fn center_basis(&self) -> (Vec<Elem>, Vec<Elem>) {
        let even = self.center_of_parity(0);
        let odd = self.center_of_parity(1);
        let mut all = even.clone();
        all.extend(odd);
        (all, even)
    }

    fn center_of_parity(&self, p: u8) -> Vec<Elem> {
        let m = self.dim();
        let cols: Vec<usize> = (0..m).filter(|&k| self.parity[k] == p).collect();
        if cols.is_empty() {
            return Vec::new();
        }
        // rows: for each b_j and output coordinate r, Σ_k x_k [b_k b_j - (-1)^{p p_j} b_j b_k]_r = 0
        let mut rows: Matrix = Vec::new();
        for j in 0..m {
            let sign = Scalar::sign(p & self.parity[j] == 1);
            for r in 0..m {
                let row: Vec<Scalar> = cols
                    .iter()
                    .map(|&k| {
                        let kj = dense(&self.mul[k][j], m);
                        let jk = dense(&self.mul[j][k], m);
                        &kj[r] - &(&sign * &jk[r])
                    })
                    .collect();
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        linalg::kernel(&rows, cols.len())
            .into_iter()
            .map(|coeffs| {
                let mut e = vec![Scalar::zero(); m];
                for (c, &k) in coeffs.into_iter().zip(&cols) {
                    e[k] = c;
                }
                e
            })
            .collect()
    }

    /// True iff `x` lies in the span of `basis`.
    pub fn in_span(&self, basis: &[Elem], x: &[Scalar]) -> bool {
        let rows = basis.iter().map(|b| linalg::to_sparse(b));
        let r0 = linalg::rank(rows.clone());
        let r1 = linalg::rank(rows.chain(std::iter::once(linalg::to_sparse(x))));
        r0 == r1
    }

    /// Two-sided inverse by a linear solve.
    pub fn invert(&self, a: &[Scalar]) -> Result<Elem> {
        let m = self.dim();
        // column k of left multiplication by a is a * b_k
        let cols: Vec<Elem> = (0..m).map(|k| self.mul_elem(a, &self.basis_elem(k))).collect();
        let lmat: Matrix = (0..m).map(|r| (0..m).map(|k| cols[k][r].clone()).collect()).collect();
        let inv = linalg::inverse(&lmat).ok_or(Error::NotInvertible)?;
        let unit = self.unit_elem();
        let b: Elem = inv.iter().map(|row| row.iter().zip(&unit).map(|(x, y)| x * y).sum()).collect();
        if self.mul_elem(&b, a) != unit {
            return Err(Error::NotInvertible);
        }
        Ok(b)
    }

    pub fn pow_elem(&self, a: &[Scalar], k: i32) -> Result<Elem> {
        let base = if k < 0 { self.invert(a)? } else { a.to_vec() };
        let mut acc = self.unit_elem();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul_elem(&acc, &base);
        }
        Ok(acc)
    }

    /// The same algebra in the basis `b'_i = Σ_k p[i][k] b_k`. `p` must be
    /// invertible and must not mix parities.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let m = self.dim();
        let q = linalg::inverse(p).ok_or_else(|| Error::MalformedSpec("basis change is singular".into()))?;
        for i in 0..m {
            for k in 0..m {
                if !p[i][k].is_zero() && self.parity[i] != self.parity[k] {
                    return Err(Error::ParityViolation("basis change mixes parities".into()));
                }
            }
        }
        // old coordinates v  ->  new coordinates v'_r = Σ_k v_k q[k][r]
        let to_new = |v: &Elem| -> SparseElem {
            let out: Elem = (0..m).map(|r| (0..m).map(|k| &v[k] * &q[k][r]).sum()).collect();
            sparse(&out)
        };
        let new_elem = |i: usize| -> Elem { p[i].clone() };
        let mul = (0..m)
            .map(|i| (0..m).map(|j| to_new(&self.mul_elem(&new_elem(i), &new_elem(j)))).collect())
            .collect();
        let trace = (0..m).map(|i| self.trace_elem(&new_elem(i))).collect();
        let spec = SuperAlgebraSpec {
            names: (0..m).map(|i| format!("{}'", self.names[i])).collect(),
            parity: self.parity.clone(),
            mul,
            trace,
            unit: to_new(&self.unit_elem()),
        };
        Self::load(&spec)
    }
}

/// Named algebras shipped with the engine.
pub mod presets {
    use super::*;

    pub const NAMES: [&str; 5] = ["trivial", "kc2", "kc3", "dual", "ext2"];

    fn one(k: usize) -> SparseElem {
        vec![(k, Scalar::one())]
    }

    /// `A = k` with `tr(1) = 1`.
    pub fn trivial() -> SuperAlgebraSpec {
        SuperAlgebraSpec {
            names: vec!["1".into()],
            parity: vec![0],
            mul: vec![vec![one(0)]],
            trace: vec![Scalar::one()],
            unit: one(0),
        }
    }

    /// Group algebra of the cyclic group of order `d`, trace = coefficient of the identity.
    pub fn cyclic(d: usize) -> SuperAlgebraSpec {
        let names = (0..d)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        SuperAlgebraSpec {
            names,
            parity: vec![0; d],
            mul: (0..d).map(|i| (0..d).map(|j| one((i + j) % d)).collect()).collect(),
            trace: (0..d).map(|k| if k == 0 { Scalar::one() } else { Scalar::zero() }).collect(),
            unit: one(0),
        }
    }

    /// Dual numbers `k[c]/(c²)` with `tr(1) = 0`, `tr(c) = 1`.
    pub fn dual_numbers() -> SuperAlgebraSpec {
        SuperAlgebraSpec {
            names: vec!["1".into(), "c".into()],
            parity: vec![0, 0],
            mul: vec![vec![one(0), one(1)], vec![one(1), vec![]]],
            trace: vec![Scalar::zero(), Scalar::one()],
            unit: one(0),
        }
    }

    /// Exterior superalgebra on two odd generators, trace nonzero only on `θ1θ2`.
    pub fn exterior2() -> SuperAlgebraSpec {
        let neg = |k: usize| vec![(k, -Scalar::one())];
        // basis: 0 = 1, 1 = θ1, 2 = θ2, 3 = θ1θ2
        let mul = vec![
            vec![one(0), one(1), one(2), one(3)],
            vec![one(1), vec![], one(3), vec![]],
            vec![one(2), neg(3), vec![], vec![]],
            vec![one(3), vec![], vec![], vec![]],
        ];
        SuperAlgebraSpec {
            names: vec!["1".into(), "t1".into(), "t2".into(), "t1t2".into()],
            parity: vec![0, 1, 1, 0],
            mul,
            trace: vec![Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            unit: one(0),
        }
    }

    pub fn spec(name: &str) -> Result<SuperAlgebraSpec> {
        match name {
            "trivial" => Ok(trivial()),
            "kc2" => Ok(cyclic(2)),
            "kc3" => Ok(cyclic(3)),
            "dual" => Ok(dual_numbers()),
            "ext2" => Ok(exterior2()),
            _ => Err(Error::Unknown { kind: "preset", name: name.to_string() }),
        }
    }

    pub fn load(name: &str) -> Result<SuperAlgebra> {
        SuperAlgebra::load(&spec(name)?)
    }
}

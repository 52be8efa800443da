//! `H_{n+1}^f(A,z)` as a right `H_n^f(A,z)`-module with basis
//! `{X_j^r a_j T_j ⋯ T_n : 1 ≤ j ≤ n+1, 0 ≤ r < d, a ∈ B}`, the partial trace
//! and the bimodule dimension count.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;

use super::{CycloContext, CyclotomicElement};
use crate::affine::{AffineContext, AffineElement, Term};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, SparseVec};
use crate::lincomb::LinComb;
use crate::par::Execution;
use crate::perm::factorial;
use crate::scalar::Scalar;
use crate::tensor::TensorElement;

/// Index `(j, r, a)` of the right-module generator `X_j^r a_j T_j ⋯ T_n`.
pub type Label = (usize, usize, usize);

/// The pair `H_n^f ⊂ H_{n+1}^f` with a cached change-of-basis inverse.
pub struct Tower {
    lower: Arc<CycloContext>,
    upper: Arc<CycloContext>,
    lower_basis: Vec<Term>,
    upper_index: HashMap<Term, usize>,
    labels: Vec<Label>,
    generators: Vec<AffineElement>,
    inverse: Vec<SparseVec>,
}

impl Tower {
    /// Builds both quotients from `lower`'s data at rank `n + 1`.
    pub fn new(lower: &Arc<CycloContext>, exec: Execution) -> Result<Self> {
        let aff = lower.affine();
        let upper_aff = AffineContext::new(aff.algebra().clone(), aff.n() + 1, aff.z().clone())?;
        let upper = CycloContext::new(&upper_aff, lower.poly().clone())?;
        Self::from_contexts(lower, &upper, exec)
    }

    pub fn from_contexts(lower: &Arc<CycloContext>, upper: &Arc<CycloContext>, exec: Execution) -> Result<Self> {
        let n = lower.n();
        if upper.n() != n + 1 || upper.poly() != lower.poly() || upper.affine().z() != lower.affine().z() {
            return Err(Error::IncompatibleContext("tower needs ranks n and n+1 with equal f and z".into()));
        }
        let uaff = upper.affine();
        let alg = upper.algebra();
        let (d, m) = (upper.d(), alg.dim());
        let mut labels = Vec::new();
        let mut generators = Vec::new();
        for j in 1..=n + 1 {
            let mut tail = AffineElement::one(uaff);
            for k in j..=n {
                tail = tail.mul(&AffineElement::t(uaff, k)?)?;
            }
            for r in 0..d {
                let xr = AffineElement::x(uaff, j, r as i32)?;
                for a in 0..m {
                    let g = xr.mul(&AffineElement::a_in_slot(uaff, a, j)?)?.mul(&tail)?;
                    labels.push((j, r, a));
                    generators.push(g);
                }
            }
        }
        let lower_basis = lower.basis();
        let upper_basis = upper.basis();
        let upper_index: HashMap<Term, usize> = upper_basis.iter().cloned().enumerate().map(|(k, t)| (t, k)).collect();
        let mut tower = Tower {
            lower: lower.clone(),
            upper: upper.clone(),
            lower_basis,
            upper_index,
            labels,
            generators,
            inverse: Vec::new(),
        };
        let dn = tower.lower_basis.len();
        let cols: Vec<(usize, usize)> =
            (0..tower.labels.len()).flat_map(|l| (0..dn).map(move |h| (l, h))).collect();
        let columns = exec.map(&cols, |&(l, h)| -> Result<SparseVec> {
            let emb = tower.embed_term(&tower.lower_basis[h])?;
            let prod = upper.reduce(&tower.generators[l].mul(&emb)?)?;
            Ok(tower.coords(&prod))
        });
        let size = upper_basis.len();
        if cols.len() != size {
            return Err(Error::Singular(format!("{} generators for a space of dimension {size}", cols.len())));
        }
        let mut rows = vec![SparseVec::new(); size];
        for (c, col) in columns.into_iter().enumerate() {
            for (r, v) in col? {
                rows[r].insert(c, v);
            }
        }
        tower.inverse = linalg::inverse_sparse(&rows)
            .ok_or_else(|| Error::Singular("right-module change of basis is singular".into()))?;
        Ok(tower)
    }

    pub fn lower(&self) -> &Arc<CycloContext> {
        &self.lower
    }

    pub fn upper(&self) -> &Arc<CycloContext> {
        &self.upper
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    fn coords(&self, x: &CyclotomicElement) -> SparseVec {
        x.terms().iter().map(|(t, c)| (self.upper_index[t], c.clone())).collect()
    }

    fn embed_term(&self, t: &Term) -> Result<AffineElement> {
        let alg = self.upper.algebra();
        let mut factors: Vec<_> = t.a.iter().map(|&k| vec![(k as usize, Scalar::one())]).collect();
        factors.push(alg.unit().clone());
        let mut terms = LinComb::new();
        let mut x = t.x.clone();
        x.push(0);
        for (a, c) in TensorElement::pure(&factors).terms() {
            terms.add_term(Term { w: t.w.extend(), x: x.clone(), a: a.clone() }, c.clone());
        }
        AffineElement::from_terms(self.upper.affine(), terms)
    }

    /// `H_n^f ↪ H_{n+1}^f`: `a ↦ a ⊗ 1`, `λ ↦ (λ, 0)`, `w ↦ w × 1`.
    pub fn embed(&self, h: &CyclotomicElement) -> Result<CyclotomicElement> {
        if !self.lower.same(h.context()) {
            return Err(Error::IncompatibleContext("element is not in the lower quotient".into()));
        }
        let mut out = AffineElement::zero(self.upper.affine());
        for (t, c) in h.terms() {
            out = &out + &self.embed_term(t)?.scaled(c);
        }
        self.upper.reduce(&out)
    }

    /// The generator `X_j^r a_j T_j ⋯ T_n` in `H_{n+1}^f`.
    pub fn generator(&self, label: Label) -> Result<&AffineElement> {
        let k = self.labels.iter().position(|&l| l == label).ok_or(Error::IndexOutOfRange { index: label.0, max: self.upper.n() })?;
        Ok(&self.generators[k])
    }

    /// Unique `h_{j,r,a} ∈ H_n^f` with `x = Σ X_j^r a_j T_j ⋯ T_n · h_{j,r,a}`; zero coefficients omitted.
    pub fn decompose(&self, x: &CyclotomicElement) -> Result<BTreeMap<Label, CyclotomicElement>> {
        if !self.upper.same(x.context()) {
            return Err(Error::IncompatibleContext("element is not in the upper quotient".into()));
        }
        let sol = linalg::apply_sparse(&self.inverse, &self.coords(x));
        let dn = self.lower_basis.len();
        let mut out: BTreeMap<Label, LinComb<Term>> = BTreeMap::new();
        for (col, c) in sol {
            let (l, h) = (col / dn, col % dn);
            out.entry(self.labels[l]).or_default().add_term(self.lower_basis[h].clone(), c);
        }
        Ok(out
            .into_iter()
            .map(|(l, terms)| (l, CyclotomicElement::from_reduced(&self.lower, terms)))
            .collect())
    }

    /// Keeps the `(n+1, 0, a)` coefficients and sums `tr(a) · h`.
    pub fn partial_trace(&self, x: &CyclotomicElement) -> Result<CyclotomicElement> {
        let top = self.upper.n();
        let alg = self.upper.algebra();
        let mut out = CyclotomicElement::zero(&self.lower);
        for ((j, r, a), h) in self.decompose(x)? {
            if j == top && r == 0 {
                out = out.add(&h.scaled(alg.trace_of_basis(a)))?;
            }
        }
        Ok(out)
    }

    /// Basis elements of `H_{n+1}^f` where `tr^{n+1} ≠ tr^n ∘ partial_trace`.
    pub fn trace_mismatches(&self, exec: Execution) -> Result<Vec<Term>> {
        let basis = self.upper.basis();
        let checks = exec.map(&basis, |t| -> Result<bool> {
            let x = self.upper.basis_element(t)?;
            Ok(x.trace() == self.partial_trace(&x)?.trace())
        });
        let mut bad = Vec::new();
        for (t, ok) in basis.iter().zip(checks) {
            if !ok? {
                bad.push(t.clone());
            }
        }
        Ok(bad)
    }

    /// Ranks of the two bimodule summands of `H_{n+1}^f` and of their sum.
    pub fn mackey_ranks(&self, exec: Execution) -> Result<MackeyRanks> {
        let n = self.lower.n();
        let uaff = self.upper.affine();
        let alg = self.upper.algebra();
        let embedded: Vec<AffineElement> =
            self.lower_basis.iter().map(|t| self.embed_term(t)).collect::<Result<_>>()?;
        let tn = AffineElement::t(uaff, n)?;
        let pairs: Vec<(usize, usize)> =
            (0..embedded.len()).flat_map(|a| (0..embedded.len()).map(move |b| (a, b))).collect();
        let t_vecs = exec.map(&pairs, |&(a, b)| -> Result<SparseVec> {
            let prod = embedded[a].mul(&tn)?.mul(&embedded[b])?;
            Ok(self.coords(&self.upper.reduce(&prod)?))
        });
        let mut x_gens = Vec::new();
        for r in 0..self.upper.d() {
            for a in 0..alg.dim() {
                x_gens.push(AffineElement::x(uaff, n + 1, r as i32)?.mul(&AffineElement::a_in_slot(uaff, a, n + 1)?)?);
            }
        }
        let x_items: Vec<(usize, usize)> =
            (0..x_gens.len()).flat_map(|g| (0..embedded.len()).map(move |h| (g, h))).collect();
        let x_vecs = exec.map(&x_items, |&(g, h)| -> Result<SparseVec> {
            Ok(self.coords(&self.upper.reduce(&x_gens[g].mul(&embedded[h])?)?))
        });
        let t_vecs: Vec<SparseVec> = t_vecs.into_iter().collect::<Result<_>>()?;
        let x_vecs: Vec<SparseVec> = x_vecs.into_iter().collect::<Result<_>>()?;
        let mut both = Echelon::new(usize::MAX);
        for v in t_vecs.iter().chain(&x_vecs) {
            both.insert(v.clone());
        }
        Ok(MackeyRanks {
            t_summand: linalg::rank(t_vecs),
            x_summand: linalg::rank(x_vecs),
            total: both.rank(),
        })
    }
}

/// Ranks of `H_n T_n H_n`, `⊕ X_{n+1}^r a_{n+1} H_n` and their sum inside `H_{n+1}^f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MackeyRanks {
    pub t_summand: usize,
    pub x_summand: usize,
    pub total: usize,
}

/// Dimension bookkeeping for `dim H_{n+1} = d·m·dim H_n + (dim H_n)² / dim H_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MackeyDims {
    pub n: usize,
    pub d: usize,
    pub dim_a: usize,
    /// `dim H_{n-1}^f, dim H_n^f, dim H_{n+1}^f`.
    pub dims: [u128; 3],
    pub x_summand: u128,
    pub t_summand: u128,
    pub holds: bool,
}

/// `(d m)^k k!` for `k = n-1, n, n+1` and the identity between them.
pub fn mackey_dims(d: usize, dim_a: usize, n: usize) -> Result<MackeyDims> {
    if n == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: usize::MAX });
    }
    let dim = |k: usize| -> u128 { (d as u128 * dim_a as u128).pow(k as u32) * factorial(k) as u128 };
    let dims = [dim(n - 1), dim(n), dim(n + 1)];
    let x_summand = d as u128 * dim_a as u128 * dims[1];
    let t_summand = dims[1] * dims[1] / dims[0];
    let exact = (dims[1] * dims[1]) % dims[0] == 0;
    Ok(MackeyDims { n, d, dim_a, dims, x_summand, t_summand, holds: exact && x_summand + t_summand == dims[2] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CyclotomicPoly;
    use crate::superalgebra::presets;

    fn lower(preset: &str, n: usize) -> Arc<CycloContext> {
        let alg = Arc::new(presets::load(preset).unwrap());
        let aff = AffineContext::new(alg.clone(), n, Scalar::one()).unwrap();
        let f = CyclotomicPoly::from_scalars(&alg, &[Scalar::from_int(-1), Scalar::zero()]).unwrap();
        CycloContext::new(&aff, f).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let tower = Tower::new(&lower("dual", 1), Execution::Sequential).unwrap();
        let up = tower.upper().clone();
        let lo = tower.lower().clone();
        let one = tower.decompose(&up.one()).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[&(2, 0, 0)], lo.one());

        let t1 = up.reduce(&AffineElement::t(up.affine(), 1).unwrap()).unwrap();
        let dec = tower.decompose(&t1).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[&(1, 0, 0)], lo.one());

        let h = lo.reduce(&AffineElement::a_in_slot(lo.affine(), 1, 1).unwrap()).unwrap();
        let x2h = up
            .reduce(&AffineElement::x(up.affine(), 2, 1).unwrap().mul(&tower.embed(&h).unwrap().lift()).unwrap())
            .unwrap();
        let dec = tower.decompose(&x2h).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec[&(2, 1, 0)], h);

        assert_eq!(tower.partial_trace(&up.one()).unwrap(), lo.one().scaled(&Scalar::zero()));
        assert!(tower.partial_trace(&t1).unwrap().is_zero());
        let c2 = up.reduce(&AffineElement::a_in_slot(up.affine(), 1, 2).unwrap()).unwrap();
        assert_eq!(tower.partial_trace(&c2).unwrap(), lo.one());
    }

    #[test]
    fn partial_trace_of_one_trivial() {
        let tower = Tower::new(&lower("trivial", 1), Execution::Sequential).unwrap();
        assert_eq!(tower.partial_trace(&tower.upper().one()).unwrap(), tower.lower().one());
        assert!(tower.trace_mismatches(Execution::Sequential).unwrap().is_empty());
    }

    #[test]
    fn dimension_identity() {
        let m = mackey_dims(2, 1, 1).unwrap();
        assert_eq!(m.dims, [1, 2, 8]);
        assert!(m.holds);
        let m = mackey_dims(2, 2, 2).unwrap();
        assert_eq!(m.dims, [4, 32, 384]);
        assert!(m.holds);
    }

    #[test]
    fn ranks_at_rank_one() {
        let tower = Tower::new(&lower("dual", 1), Execution::Sequential).unwrap();
        let r = tower.mackey_ranks(Execution::Sequential).unwrap();
        assert_eq!(r, MackeyRanks { t_summand: 16, x_summand: 16, total: 32 });
    }
}

//! Cyclotomic quotients `H_n^f(A,z)` of the affine algebra by the ideal
//! generated by `f(X_1) = X_1^d + a_{d-1} X_1^{d-1} + … + a_0`.
//!
//! Elements live in the basis `a X^λ T_w` with `0 ≤ λ_i < d`. Reduction
//! rewrites `X_i^d` to `r_i = X_i^d - f_i`, where `f_i = T_{i-1} f_{i-1} T_{i-1}`,
//! always on the term whose exponent vector is largest (position `n` most
//! significant) and at the largest over-limit index within that term.

mod gram;
mod level_one;
mod tower;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use gram::{gram, GramData};
pub use level_one::{level_one_check, LevelOneReport};
pub use tower::{mackey_dims, MackeyDims, MackeyRanks, Tower};

use crate::affine::{display_order, render, AffineContext, AffineElement, Term};
use crate::error::{Error, Result};
use crate::laurent::Exps;
use crate::lincomb::LinComb;
use crate::perm::{all_permutations, Permutation};
use crate::scalar::Scalar;
use crate::superalgebra::{Elem, SparseElem, SuperAlgebra};
use crate::tensor::{mul_pure, trace_pure, Slots};

/// Rewrites allowed per call to [`CycloContext::reduce`].
pub const STEP_BUDGET: usize = 1_000_000;

/// Wire format of `f`: coefficients `a_0, …, a_{d-1}` as sparse vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicSpec {
    pub d: usize,
    pub coeffs: Vec<SparseElem>,
}

/// A validated monic `f` with coefficients in `Z(A)_0` and `a_0` invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicPoly {
    d: usize,
    coeffs: Vec<Elem>,
}

impl CyclotomicPoly {
    pub fn load(alg: &SuperAlgebra, spec: &CyclotomicSpec) -> Result<Self> {
        if spec.d == 0 {
            return Err(Error::MalformedSpec("cyclotomic level must be at least 1".into()));
        }
        if spec.coeffs.len() != spec.d {
            return Err(Error::SizeMismatch { expected: spec.d, found: spec.coeffs.len() });
        }
        if spec.coeffs.iter().flatten().any(|(k, _)| *k >= alg.dim()) {
            return Err(Error::MalformedSpec("basis index out of range in f".into()));
        }
        let coeffs: Vec<Elem> = spec.coeffs.iter().map(|c| alg.to_dense(c)).collect();
        let (_, z0) = alg.center_basis();
        for (k, c) in coeffs.iter().enumerate() {
            if !alg.in_span(&z0, c) {
                return Err(Error::NotCentral(format!("Z(A)_0 (coefficient a_{k})")));
            }
        }
        alg.invert(&coeffs[0])?;
        Ok(CyclotomicPoly { d: spec.d, coeffs })
    }

    /// `f` with scalar coefficients `a_k = c_k · 1`.
    pub fn from_scalars(alg: &SuperAlgebra, coeffs: &[Scalar]) -> Result<Self> {
        let unit = alg.unit_elem();
        let spec = CyclotomicSpec {
            d: coeffs.len(),
            coeffs: coeffs.iter().map(|c| alg.to_sparse(&unit.iter().map(|u| u * c).collect::<Vec<_>>())).collect(),
        };
        Self::load(alg, &spec)
    }

    pub fn from_json(alg: &SuperAlgebra, json: &str) -> Result<Self> {
        let spec: CyclotomicSpec = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        Self::load(alg, &spec)
    }

    pub fn to_spec(&self, alg: &SuperAlgebra) -> CyclotomicSpec {
        CyclotomicSpec { d: self.d, coeffs: self.coeffs.iter().map(|c| alg.to_sparse(c)).collect() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `a_k` for `0 ≤ k < d`.
    pub fn coeff(&self, k: usize) -> &Elem {
        &self.coeffs[k]
    }

    /// `f(X_1)` in `H_n^aff(A,z)`.
    pub fn f1(&self, ctx: &Arc<AffineContext>) -> Result<AffineElement> {
        let alg = ctx.algebra();
        let mut out = AffineElement::x(ctx, 1, self.d as i32)?;
        for (k, c) in self.coeffs.iter().enumerate() {
            let a = crate::tensor::TensorElement::embed(alg, ctx.n(), 1, &alg.to_sparse(c))?;
            let term = AffineElement::from_tensor(ctx, &a)?.mul(&AffineElement::x(ctx, 1, k as i32)?)?;
            out = &out + &term;
        }
        Ok(out)
    }
}

/// Cached data for `H_n^f(A,z)`: the `f_i` and every `r_i T_w`.
pub struct CycloContext {
    aff: Arc<AffineContext>,
    f: CyclotomicPoly,
    fi: Vec<AffineElement>,
    perm_index: HashMap<Permutation, usize>,
    r_tw: Vec<Vec<AffineElement>>,
}

impl fmt::Debug for CycloContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloContext").field("n", &self.aff.n()).field("d", &self.f.d).finish()
    }
}

impl CycloContext {
    pub fn new(aff: &Arc<AffineContext>, f: CyclotomicPoly) -> Result<Arc<Self>> {
        let n = aff.n();
        let mut fi = vec![f.f1(aff)?];
        for i in 1..n {
            let t = AffineElement::t(aff, i)?;
            let next = t.mul(&fi[i - 1])?.mul(&t)?;
            fi.push(next);
        }
        let perms = all_permutations(n);
        let perm_index = perms.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let mut r_tw = Vec::with_capacity(n);
        for (i, f_i) in fi.iter().enumerate() {
            let r = &AffineElement::x(aff, i + 1, f.d as i32)? - f_i;
            let row = perms.iter().map(|w| r.mul(&AffineElement::t_w(aff, w))).collect::<Result<Vec<_>>>()?;
            r_tw.push(row);
        }
        Ok(Arc::new(CycloContext { aff: aff.clone(), f, fi, perm_index, r_tw }))
    }

    pub fn affine(&self) -> &Arc<AffineContext> {
        &self.aff
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        self.aff.algebra()
    }

    pub fn n(&self) -> usize {
        self.aff.n()
    }

    pub fn d(&self) -> usize {
        self.f.d
    }

    pub fn poly(&self) -> &CyclotomicPoly {
        &self.f
    }

    /// `f_i` in `H_n^aff(A,z)`.
    pub fn f_i(&self, i: usize) -> Result<&AffineElement> {
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange { index: i, max: self.n() });
        }
        Ok(&self.fi[i - 1])
    }

    /// `(d · dim A)^n · n!`.
    pub fn dimension(&self) -> usize {
        (self.d() * self.algebra().dim()).pow(self.n() as u32) * crate::perm::factorial(self.n())
    }

    pub fn same(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || (self.aff.same(&other.aff) && self.f == other.f)
    }

    /// The normal form of `x` modulo the cyclotomic ideal; `x` must have no
    /// negative exponents.
    pub fn reduce(self: &Arc<Self>, x: &AffineElement) -> Result<CyclotomicElement> {
        if !self.aff.same(x.context()) {
            return Err(Error::IncompatibleContext("element of another affine algebra".into()));
        }
        let d = self.d() as i32;
        let alg = self.algebra();
        // pending terms keyed by the exponent vector read from position n down
        type Key = (Exps, Slots, Permutation);
        let mut pending: BTreeMap<Key, Scalar> = BTreeMap::new();
        let mut done: LinComb<Term> = LinComb::new();
        let push = |pending: &mut BTreeMap<Key, Scalar>, done: &mut LinComb<Term>, t: Term, c: Scalar| {
            if t.x.iter().all(|&e| e < d) {
                done.add_term(t, c);
            } else {
                let rev: Exps = t.x.iter().rev().copied().collect();
                let entry = pending.entry((rev, t.a, t.w)).or_insert_with(Scalar::zero);
                *entry += c;
            }
        };
        for (t, c) in x.terms() {
            if let Some(pos) = t.x.iter().position(|&e| e < 0) {
                return Err(Error::NegativeExponent(pos + 1));
            }
            push(&mut pending, &mut done, t.clone(), c.clone());
        }
        let mut steps = 0usize;
        while let Some(((rev, a, w), c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            steps += 1;
            if steps > STEP_BUDGET {
                return Err(Error::StepBudget(STEP_BUDGET));
            }
            let mut lambda: Exps = rev.iter().rev().copied().collect();
            let i = (0..lambda.len()).rev().find(|&k| lambda[k] >= d).expect("pending term is over the limit");
            lambda[i] -= d;
            let r = &self.r_tw[i][self.perm_index[&w]];
            for (t, e) in r.terms() {
                let x: Exps = lambda.iter().zip(&t.x).map(|(p, q)| p + q).collect();
                let ce = &c * e;
                for (prod, s) in mul_pure(alg, &a, &t.a) {
                    let term = Term { w: t.w.clone(), x: x.clone(), a: prod };
                    push(&mut pending, &mut done, term, &ce * &s);
                }
            }
        }
        Ok(CyclotomicElement { ctx: self.clone(), terms: done })
    }

    /// Like [`reduce`](Self::reduce), but negative powers of `X_i` are
    /// replaced by the inverse of `X_i` in the quotient.
    pub fn reduce_laurent(self: &Arc<Self>, x: &AffineElement) -> Result<CyclotomicElement> {
        if !self.aff.same(x.context()) {
            return Err(Error::IncompatibleContext("element of another affine algebra".into()));
        }
        if x.min_exponent().map_or(true, |e| e >= 0) {
            return self.reduce(x);
        }
        let mut inverses: HashMap<usize, CyclotomicElement> = HashMap::new();
        let mut out = CyclotomicElement::zero(self);
        for (t, c) in x.terms() {
            let pos: Exps = t.x.iter().map(|&e| e.max(0)).collect();
            let head = Term { w: Permutation::identity(self.n()), x: pos, a: t.a.clone() };
            let mut acc = self.reduce(&AffineElement::from_terms(&self.aff, LinComb::single(head, c.clone()))?)?;
            for (i, &e) in t.x.iter().enumerate() {
                if e < 0 {
                    if !inverses.contains_key(&i) {
                        inverses.insert(i, self.invert_x(i + 1)?);
                    }
                    for _ in 0..e.unsigned_abs() {
                        acc = acc.mul(&inverses[&i])?;
                    }
                }
            }
            acc = acc.mul(&self.reduce(&AffineElement::t_w(&self.aff, &t.w))?)?;
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// All basis elements `a X^λ T_w` with `0 ≤ λ_i < d`, in display order.
    pub fn basis(&self) -> Vec<Term> {
        let n = self.n();
        let m = self.algebra().dim();
        let d = self.d();
        let mut lambdas: Vec<Exps> = vec![Exps::new()];
        let mut tuples: Vec<Slots> = vec![Slots::new()];
        for _ in 0..n {
            lambdas = lambdas
                .into_iter()
                .flat_map(|l| {
                    (0..d as i32).map(move |e| {
                        let mut l = l.clone();
                        l.push(e);
                        l
                    })
                })
                .collect();
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..m as u8).map(move |k| {
                        let mut t = t.clone();
                        t.push(k);
                        t
                    })
                })
                .collect();
        }
        let mut out = Vec::with_capacity(self.dimension());
        for w in all_permutations(n) {
            for x in &lambdas {
                for a in &tuples {
                    out.push(Term { w: w.clone(), x: x.clone(), a: a.clone() });
                }
            }
        }
        out.sort_by(display_order);
        out
    }

    pub fn basis_element(self: &Arc<Self>, t: &Term) -> Result<CyclotomicElement> {
        let x = AffineElement::from_terms(&self.aff, LinComb::single(t.clone(), Scalar::one()))?;
        self.reduce(&x)
    }

    pub fn one(self: &Arc<Self>) -> CyclotomicElement {
        self.reduce(&AffineElement::one(&self.aff)).expect("unit is reduced")
    }

    /// `X_i^{-1}`, from `X_1^{-1} = -a_0^{-1}(X_1^{d-1} + a_{d-1} X_1^{d-2} + … + a_1)`
    /// and `X_{i+1}^{-1} = T_i^{-1} X_i^{-1} T_i^{-1}`.
    pub fn invert_x(self: &Arc<Self>, i: usize) -> Result<CyclotomicElement> {
        if i == 0 || i > self.n() {
            return Err(Error::IndexOutOfRange { index: i, max: self.n() });
        }
        let alg = self.algebra();
        let n = self.n();
        let d = self.d();
        let a0_inv = alg.invert(&self.f.coeffs[0])?;
        let slot1 = |e: &Elem| -> Result<AffineElement> {
            let t = crate::tensor::TensorElement::embed(alg, n, 1, &alg.to_sparse(e))?;
            AffineElement::from_tensor(&self.aff, &t)
        };
        let mut inner = AffineElement::x(&self.aff, 1, d as i32 - 1)?;
        for k in 1..d {
            inner = &inner + &slot1(&self.f.coeffs[k])?.mul(&AffineElement::x(&self.aff, 1, k as i32 - 1)?)?;
        }
        let neg_a0_inv: Elem = a0_inv.iter().map(|c| -c).collect();
        let mut acc = self.reduce(&slot1(&neg_a0_inv)?.mul(&inner)?)?;
        for k in 1..i {
            let tinv = AffineElement::t_inv(&self.aff, k)?;
            acc = self.reduce(&tinv.mul(&acc.lift())?.mul(&tinv)?)?;
        }
        Ok(acc)
    }
}

/// An element of `H_n^f(A,z)` in the reduced basis.
#[derive(Clone)]
pub struct CyclotomicElement {
    ctx: Arc<CycloContext>,
    terms: LinComb<Term>,
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for CyclotomicElement {}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl CyclotomicElement {
    pub fn zero(ctx: &Arc<CycloContext>) -> Self {
        CyclotomicElement { ctx: ctx.clone(), terms: LinComb::new() }
    }

    /// Wraps terms already in the reduced basis.
    pub(crate) fn from_reduced(ctx: &Arc<CycloContext>, terms: LinComb<Term>) -> Self {
        CyclotomicElement { ctx: ctx.clone(), terms }
    }

    pub fn context(&self) -> &Arc<CycloContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &LinComb<Term> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// The same element viewed in the affine algebra.
    pub fn lift(&self) -> AffineElement {
        AffineElement::from_terms_unchecked(&self.ctx.aff, self.terms.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !self.ctx.same(&other.ctx) {
            return Err(Error::IncompatibleContext("elements of different cyclotomic quotients".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.ctx.reduce(&self.lift().mul(&other.lift())?)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(CyclotomicElement { ctx: self.ctx.clone(), terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        terms.sub_assign(&other.terms);
        Ok(CyclotomicElement { ctx: self.ctx.clone(), terms })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        CyclotomicElement { ctx: self.ctx.clone(), terms: self.terms.scaled(c) }
    }

    /// `tr_f`: the `tr^{⊗n}` of the coefficient of `X^0 T_1`.
    pub fn trace(&self) -> Scalar {
        let alg = self.ctx.algebra();
        self.terms
            .iter()
            .filter(|(t, _)| t.w.is_identity() && t.x.iter().all(|&e| e == 0))
            .map(|(t, c)| c * &trace_pure(alg, &t.a))
            .sum()
    }

    pub fn parity(&self) -> Option<u8> {
        self.lift().parity()
    }

    pub fn sorted_terms(&self) -> Vec<(&Term, &Scalar)> {
        let mut v: Vec<(&Term, &Scalar)> = self.terms.iter().collect();
        v.sort_by(|(s, _), (t, _)| display_order(s, t));
        v
    }

    pub fn to_text(&self) -> String {
        render(self.ctx.algebra(), self.sorted_terms().into_iter().map(|(t, c)| (c, &t.a, &t.x, &t.w, false)))
    }
}

//! Jucys–Murphy elements `J_1 = 1`, `J_i = T_{i-1} J_{i-1} T_{i-1}` and the
//! evaluation map `X_i ↦ J_i`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{left_mul_monomial, AffineContext, AffineElement, Term};
use crate::error::{Error, Result};
use crate::laurent::Exps;
use crate::lincomb::LinComb;
use crate::perm::Permutation;
use crate::tensor::Slots;

/// `J_i` for `1 ≤ i ≤ n`.
pub fn jucys_murphy(ctx: &Arc<AffineContext>, i: usize) -> Result<AffineElement> {
    ctx.check_slot(i)?;
    let mut j = AffineElement::one(ctx);
    for k in 1..i {
        let t = AffineElement::t(ctx, k)?;
        j = t.mul(&j)?.mul(&t)?;
    }
    Ok(j)
}

/// `J_i^{-1} = T_{i-1}^{-1} J_{i-1}^{-1} T_{i-1}^{-1}`.
pub fn jucys_murphy_inverse(ctx: &Arc<AffineContext>, i: usize) -> Result<AffineElement> {
    ctx.check_slot(i)?;
    let mut j = AffineElement::one(ctx);
    for k in 1..i {
        let t = AffineElement::t_inv(ctx, k)?;
        j = t.mul(&j)?.mul(&t)?;
    }
    Ok(j)
}

/// `J_i^{±1}` for every `i`, with powers computed on demand.
pub struct JmCache {
    ctx: Arc<AffineContext>,
    j: Vec<AffineElement>,
    j_inv: Vec<AffineElement>,
}

impl JmCache {
    pub fn new(ctx: &Arc<AffineContext>) -> Result<Self> {
        let n = ctx.n();
        Ok(JmCache {
            ctx: ctx.clone(),
            j: (1..=n).map(|i| jucys_murphy(ctx, i)).collect::<Result<_>>()?,
            j_inv: (1..=n).map(|i| jucys_murphy_inverse(ctx, i)).collect::<Result<_>>()?,
        })
    }

    pub fn get(&self, i: usize) -> &AffineElement {
        &self.j[i - 1]
    }

    pub fn get_inverse(&self, i: usize) -> &AffineElement {
        &self.j_inv[i - 1]
    }

    /// `Π_i J_i^{λ_i}`.
    pub fn monomial(&self, lambda: &[i32], memo: &mut HashMap<(usize, i32), AffineElement>) -> Result<AffineElement> {
        let mut acc = AffineElement::one(&self.ctx);
        for (idx, &e) in lambda.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let key = (idx + 1, e);
            if !memo.contains_key(&key) {
                let base = if e > 0 { &self.j[idx] } else { &self.j_inv[idx] };
                let p = base.pow(e.unsigned_abs())?;
                memo.insert(key, p);
            }
            acc = acc.mul(&memo[&key])?;
        }
        Ok(acc)
    }

    /// `a X^λ T_w ↦ a J^λ T_w`.
    pub fn eval(&self, x: &AffineElement) -> Result<AffineElement> {
        if !self.ctx.same(x.context()) {
            return Err(Error::IncompatibleContext("evaluation map built for another algebra".into()));
        }
        let mut groups: BTreeMap<(&Exps, &Permutation), LinComb<Slots>> = BTreeMap::new();
        for (t, c) in x.terms() {
            groups.entry((&t.x, &t.w)).or_default().add_term(t.a.clone(), c.clone());
        }
        let n = self.ctx.n();
        let zero: Vec<i32> = vec![0; n];
        let mut memo = HashMap::new();
        let mut out = LinComb::new();
        for ((lambda, w), a_part) in groups {
            let jl = self.monomial(lambda, &mut memo)?;
            let tw = AffineElement::t_w(&self.ctx, w);
            let jl_tw = jl.mul(&tw)?;
            for (a, c) in &a_part {
                let prod = left_mul_monomial(&self.ctx, a, &zero, jl_tw.terms());
                out.add_scaled(&prod, c);
            }
        }
        Ok(AffineElement::from_terms_unchecked(&self.ctx, out))
    }
}

/// The evaluation homomorphism `H_n^aff(A,z) → H_n(A,z)`, `X_i ↦ J_i`.
pub fn eval_jm(x: &AffineElement) -> Result<AffineElement> {
    JmCache::new(x.context())?.eval(x)
}

/// True when every term has `λ = 0`.
pub fn is_finite_part(x: &AffineElement) -> bool {
    x.terms().keys().all(|t: &Term| t.x.iter().all(|&e| e == 0))
}

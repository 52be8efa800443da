//! Conversion between the left normal form `a X^λ T_w` and the right normal
//! form `T_w a X^λ`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{apply_t_w, AffineContext, AffineElement, Term};
use crate::error::Result;
use crate::laurent::Exps;
use crate::lincomb::LinComb;
use crate::perm::Permutation;
use crate::tensor::{superpermute_pure, Slots};

/// A basis element `T_w a X^λ` of the right normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RightTerm {
    pub w: Permutation,
    pub a: Slots,
    pub x: Exps,
}

/// `T_w · a X^λ` in left normal form.
fn t_w_times(ctx: &Arc<AffineContext>, rt: &RightTerm) -> LinComb<Term> {
    let mono = LinComb::single(
        Term { w: Permutation::identity(ctx.n()), x: rt.x.clone(), a: rt.a.clone() },
        crate::scalar::Scalar::one(),
    );
    apply_t_w(ctx, &rt.w, &mono)
}

/// Coefficients of `x` in the basis `{T_w a X^λ}`.
///
/// Peels off terms of maximal length: `T_w g = w(g) T_w + (shorter)`, so
/// the leading term `a X^λ T_w` comes from `g = w^{-1}(a X^λ)`.
pub fn to_right_normal_form(x: &AffineElement) -> Result<LinComb<RightTerm>> {
    let ctx = x.context();
    let alg = ctx.algebra();
    let mut rem = x.terms().clone();
    let mut out = LinComb::new();
    while let Some((lead, c)) = rem
        .iter()
        .max_by(|(s, _), (t, _)| s.w.length().cmp(&t.w.length()).then_with(|| s.cmp(t)))
        .map(|(t, c)| (t.clone(), c.clone()))
    {
        let winv = lead.w.inverse();
        let (a, odd) = superpermute_pure(alg, &winv, &lead.a);
        let x: Exps = winv.act_positions(&lead.x)?.into_iter().collect();
        let rt = RightTerm { w: lead.w.clone(), a, x };
        let coeff = if odd { -&c } else { c };
        rem.add_scaled(&t_w_times(ctx, &rt), &-&coeff);
        out.add_term(rt, coeff);
    }
    Ok(out)
}

/// `Σ c · T_w a X^λ` in left normal form.
pub fn from_right_normal_form(ctx: &Arc<AffineContext>, terms: &LinComb<RightTerm>) -> Result<AffineElement> {
    let mut out = LinComb::new();
    for (rt, c) in terms {
        out.add_scaled(&t_w_times(ctx, rt), c);
    }
    AffineElement::from_terms(ctx, out)
}

/// Renders a right normal form.
pub fn right_form_text(ctx: &AffineContext, terms: &LinComb<RightTerm>) -> String {
    let mut v: Vec<(&RightTerm, _)> = terms.iter().collect();
    v.sort_by(|(s, _), (t, _)| {
        s.w.cmp(&t.w).then_with(|| s.x.iter().rev().cmp(t.x.iter().rev())).then_with(|| s.a.cmp(&t.a))
    });
    super::render(ctx.algebra(), v.into_iter().map(|(t, c)| (c, &t.a, &t.x, &t.w, true)))
}

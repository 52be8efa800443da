//! JSON wire formats for elements.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::affine::{display_order, AffineContext, AffineElement, RightTerm, Term};
use crate::cyclotomic::{CycloContext, CyclotomicElement, CyclotomicSpec};
use crate::error::{Error, Result};
use crate::laurent::{LaurentElement, Monomial};
use crate::lincomb::LinComb;
use crate::perm::Permutation;
use crate::scalar::Scalar;

/// One term `coeff · a X^λ T_w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub a: Vec<usize>,
    pub lambda: Vec<i32>,
    pub w: Permutation,
    pub coeff: Scalar,
}

/// One term `coeff · a X^λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentTermJson {
    pub a: Vec<usize>,
    pub lambda: Vec<i32>,
    pub coeff: Scalar,
}

/// One term `coeff · T_w a X^λ` of the right normal form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightTermJson {
    pub w: Permutation,
    pub a: Vec<usize>,
    pub lambda: Vec<i32>,
    pub coeff: Scalar,
}

/// A cyclotomic element tagged with the `f` it lives over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub f: CyclotomicSpec,
    pub terms: Vec<TermJson>,
}

fn slots_of(a: &[usize], dim: usize) -> Result<crate::tensor::Slots> {
    a.iter()
        .map(|&k| if k < dim { Ok(k as u8) } else { Err(Error::IndexOutOfRange { index: k, max: dim - 1 }) })
        .collect()
}

fn term_json(t: &Term, c: &Scalar) -> TermJson {
    TermJson {
        a: t.a.iter().map(|&k| k as usize).collect(),
        lambda: t.x.to_vec(),
        w: t.w.clone(),
        coeff: c.clone(),
    }
}

fn sorted_json<'a>(terms: impl Iterator<Item = (&'a Term, &'a Scalar)>) -> Vec<TermJson> {
    let mut v: Vec<_> = terms.collect();
    v.sort_by(|(s, _), (t, _)| display_order(s, t));
    v.into_iter().map(|(t, c)| term_json(t, c)).collect()
}

/// Terms in display order.
pub fn affine_to_json(x: &AffineElement) -> Vec<TermJson> {
    sorted_json(x.terms().iter())
}

pub fn affine_from_json(ctx: &Arc<AffineContext>, terms: &[TermJson]) -> Result<AffineElement> {
    let dim = ctx.algebra().dim();
    let mut out = LinComb::new();
    for t in terms {
        let term = Term { w: t.w.clone(), x: t.lambda.iter().copied().collect(), a: slots_of(&t.a, dim)? };
        out.add_term(term, t.coeff.clone());
    }
    AffineElement::from_terms(ctx, out)
}

pub fn laurent_to_json(x: &LaurentElement) -> Vec<LaurentTermJson> {
    let mut v: Vec<(&Monomial, &Scalar)> = x.terms().iter().collect();
    v.sort_by(|(s, _), (t, _)| s.x.iter().rev().cmp(t.x.iter().rev()).then_with(|| s.a.cmp(&t.a)));
    v.into_iter()
        .map(|(m, c)| LaurentTermJson {
            a: m.a.iter().map(|&k| k as usize).collect(),
            lambda: m.x.to_vec(),
            coeff: c.clone(),
        })
        .collect()
}

pub fn laurent_from_json(dim: usize, n: usize, terms: &[LaurentTermJson]) -> Result<LaurentElement> {
    let mut out = LinComb::new();
    for t in terms {
        out.add_term(Monomial { a: slots_of(&t.a, dim)?, x: t.lambda.iter().copied().collect() }, t.coeff.clone());
    }
    LaurentElement::from_terms(n, out)
}

pub fn right_form_to_json(terms: &LinComb<RightTerm>) -> Vec<RightTermJson> {
    let mut v: Vec<(&RightTerm, &Scalar)> = terms.iter().collect();
    v.sort_by(|(s, _), (t, _)| {
        s.w.cmp(&t.w).then_with(|| s.x.iter().rev().cmp(t.x.iter().rev())).then_with(|| s.a.cmp(&t.a))
    });
    v.into_iter()
        .map(|(t, c)| RightTermJson {
            w: t.w.clone(),
            a: t.a.iter().map(|&k| k as usize).collect(),
            lambda: t.x.to_vec(),
            coeff: c.clone(),
        })
        .collect()
}

pub fn right_form_from_json(dim: usize, terms: &[RightTermJson]) -> Result<LinComb<RightTerm>> {
    let mut out = LinComb::new();
    for t in terms {
        out.add_term(
            RightTerm { w: t.w.clone(), a: slots_of(&t.a, dim)?, x: t.lambda.iter().copied().collect() },
            t.coeff.clone(),
        );
    }
    Ok(out)
}

pub fn cyclotomic_to_json(x: &CyclotomicElement) -> CyclotomicJson {
    let ctx = x.context();
    CyclotomicJson { f: ctx.poly().to_spec(ctx.algebra()), terms: sorted_json(x.terms().iter()) }
}

/// Reads an element over `ctx`; the terms are reduced, so any nonnegative
/// affine terms are accepted.
pub fn cyclotomic_from_json(ctx: &Arc<CycloContext>, json: &CyclotomicJson) -> Result<CyclotomicElement> {
    let f = crate::cyclotomic::CyclotomicPoly::load(ctx.algebra(), &json.f)?;
    if &f != ctx.poly() {
        return Err(Error::IncompatibleContext("element was written for a different f".into()));
    }
    ctx.reduce(&affine_from_json(ctx.affine(), &json.terms)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::to_right_normal_form;
    use crate::cyclotomic::CyclotomicPoly;
    use crate::random::{Sampler, Shape};
    use crate::superalgebra::presets;

    #[test]
    fn round_trips() {
        let alg = Arc::new(presets::load("ext2").unwrap());
        let ctx = AffineContext::new(alg.clone(), 2, Scalar::one()).unwrap();
        let mut s = Sampler::new(3);
        for _ in 0..10 {
            let x = s.affine(&ctx, Shape::default());
            let json = serde_json::to_string(&affine_to_json(&x)).unwrap();
            let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
            assert_eq!(affine_from_json(&ctx, &back).unwrap(), x);

            let rf = to_right_normal_form(&x).unwrap();
            assert_eq!(right_form_from_json(4, &right_form_to_json(&rf)).unwrap(), rf);

            let l = s.laurent(&alg, 2, Shape::default());
            assert_eq!(laurent_from_json(4, 2, &laurent_to_json(&l)).unwrap(), l);
        }
    }

    #[test]
    fn wire_shape() {
        let alg = Arc::new(presets::load("trivial").unwrap());
        let ctx = AffineContext::new(alg, 2, Scalar::one()).unwrap();
        let x = AffineElement::t(&ctx, 1).unwrap();
        let json = serde_json::to_string(&affine_to_json(&x)).unwrap();
        assert_eq!(json, r#"[{"a":[0,0],"lambda":[0,0],"w":[2,1],"coeff":"1"}]"#);
        let bad = r#"[{"a":[0,1],"lambda":[0,0],"w":[1,2],"coeff":"1"}]"#;
        let parsed: Vec<TermJson> = serde_json::from_str(bad).unwrap();
        assert!(affine_from_json(&ctx, &parsed).is_err());
    }

    #[test]
    fn cyclotomic_tagging() {
        let alg = Arc::new(presets::load("trivial").unwrap());
        let aff = AffineContext::new(alg.clone(), 2, Scalar::one()).unwrap();
        let f = CyclotomicPoly::from_scalars(&alg, &[Scalar::from_int(-1), Scalar::zero()]).unwrap();
        let g = CyclotomicPoly::from_scalars(&alg, &[Scalar::from_int(2), Scalar::zero()]).unwrap();
        let cf = CycloContext::new(&aff, f).unwrap();
        let cg = CycloContext::new(&aff, g).unwrap();
        let x = cf.reduce(&AffineElement::x(&aff, 2, 2).unwrap()).unwrap();
        let json = cyclotomic_to_json(&x);
        assert_eq!(cyclotomic_from_json(&cf, &json).unwrap(), x);
        assert!(cyclotomic_from_json(&cg, &json).is_err());
    }
}

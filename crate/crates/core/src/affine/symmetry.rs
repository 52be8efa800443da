//! Automorphisms and the anti-automorphism of `H_n^aff(A,z)`:
//!
//! * flip: `X_i ↦ X_{n+1-i}`, `a_i ↦ a_{n+1-i}`, `T_j ↦ -T_{n-j} + z t_{n-j,n-j+1}`;
//! * `ζ_a` for `a` even, central and invertible: `X_j ↦ a_j X_j`;
//! * the lift of a trace-preserving automorphism `ξ` of `A`;
//! * `τ̂` for a trace-preserving super anti-automorphism `τ` of `A`:
//!   `a X^λ T_w ↦ T_{w^{-1}} X^λ τ(a)`, satisfying `τ̂(xy) = (-1)^{x̄ȳ} τ̂(y) τ̂(x)`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{apply_t_w, left_mul_monomial, AffineContext, AffineElement, Term};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::lincomb::LinComb;
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::superalgebra::{Elem, SuperAlgebra};
use crate::tensor::{mul_pure, superpermute_pure, Slots, TensorElement};

#[derive(Clone, Debug)]
enum Kind {
    Flip,
    Zeta(Elem),
    Xi(Matrix),
    Tau(Matrix),
}

/// A validated symmetry, ready to apply to elements over its algebra.
#[derive(Clone, Debug)]
pub struct Symmetry {
    kind: Kind,
    alg: Option<Arc<SuperAlgebra>>,
}

fn linear_map_checks(alg: &SuperAlgebra, m: &Matrix) -> Result<()> {
    let dim = alg.dim();
    if m.len() != dim || m.iter().any(|r| r.len() != dim) {
        return Err(Error::InvalidSymmetry(format!("matrix must be {dim}×{dim}")));
    }
    for (k, row) in m.iter().enumerate() {
        if row.iter().enumerate().any(|(j, c)| !c.is_zero() && alg.parity(j) != alg.parity(k)) {
            return Err(Error::InvalidSymmetry(format!("image of b{k} has the wrong parity")));
        }
        if alg.trace_elem(row) != *alg.trace_of_basis(k) {
            return Err(Error::InvalidSymmetry(format!("trace not preserved on b{k}")));
        }
    }
    if linalg::inverse(m).is_none() {
        return Err(Error::InvalidSymmetry("map is not bijective".into()));
    }
    let image = |v: &[Scalar]| -> Elem {
        (0..dim).map(|j| v.iter().zip(m).map(|(c, row)| c * &row[j]).sum()).collect()
    };
    if image(&alg.unit_elem()) != alg.unit_elem() {
        return Err(Error::InvalidSymmetry("unit not preserved".into()));
    }
    Ok(())
}

fn apply_matrix(alg: &SuperAlgebra, m: &Matrix, v: &[Scalar]) -> Elem {
    (0..alg.dim()).map(|j| v.iter().zip(m).map(|(c, row)| c * &row[j]).sum()).collect()
}

impl Symmetry {
    pub fn flip() -> Self {
        Symmetry { kind: Kind::Flip, alg: None }
    }

    /// `ζ_a`; `a` must be even, supercentral and invertible.
    pub fn zeta(alg: &Arc<SuperAlgebra>, a: Elem) -> Result<Self> {
        if a.len() != alg.dim() {
            return Err(Error::InvalidSymmetry(format!("element must have {} coordinates", alg.dim())));
        }
        let (_, z0) = alg.center_basis();
        if !alg.in_span(&z0, &a) {
            return Err(Error::InvalidSymmetry("a is not in Z(A)_0".into()));
        }
        alg.invert(&a).map_err(|_| Error::InvalidSymmetry("a is not invertible".into()))?;
        Ok(Symmetry { kind: Kind::Zeta(a), alg: Some(alg.clone()) })
    }

    /// Lift of `ξ(b_k) = Σ_j m[k][j] b_j`, a trace-preserving automorphism.
    pub fn xi(alg: &Arc<SuperAlgebra>, m: Matrix) -> Result<Self> {
        linear_map_checks(alg, &m)?;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = apply_matrix(alg, &m, &alg.mul_elem(&alg.basis_elem(i), &alg.basis_elem(j)));
                let rhs = alg.mul_elem(&m[i], &m[j]);
                if lhs != rhs {
                    return Err(Error::InvalidSymmetry(format!("not multiplicative on (b{i}, b{j})")));
                }
            }
        }
        Ok(Symmetry { kind: Kind::Xi(m), alg: Some(alg.clone()) })
    }

    /// `τ̂` from `τ(b_k) = Σ_j m[k][j] b_j` with `τ(ab) = (-1)^{āb̄} τ(b) τ(a)`.
    pub fn tau(alg: &Arc<SuperAlgebra>, m: Matrix) -> Result<Self> {
        linear_map_checks(alg, &m)?;
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let lhs = apply_matrix(alg, &m, &alg.mul_elem(&alg.basis_elem(i), &alg.basis_elem(j)));
                let sign = Scalar::sign(alg.parity(i) == 1 && alg.parity(j) == 1);
                let rhs: Elem = alg.mul_elem(&m[j], &m[i]).iter().map(|c| c * &sign).collect();
                if lhs != rhs {
                    return Err(Error::InvalidSymmetry(format!("not a super anti-homomorphism on (b{i}, b{j})")));
                }
            }
        }
        Ok(Symmetry { kind: Kind::Tau(m), alg: Some(alg.clone()) })
    }

    /// True for `τ̂`, which reverses products.
    pub fn is_anti(&self) -> bool {
        matches!(self.kind, Kind::Tau(_))
    }

    pub fn apply(&self, x: &AffineElement) -> Result<AffineElement> {
        let ctx = x.context();
        if let Some(alg) = &self.alg {
            if **alg != **ctx.algebra() {
                return Err(Error::IncompatibleContext("symmetry defined over another algebra".into()));
            }
        }
        match &self.kind {
            Kind::Flip => flip(ctx, x),
            Kind::Zeta(a) => zeta(ctx, a, x),
            Kind::Xi(m) => Ok(slotwise(ctx, m, x)),
            Kind::Tau(m) => tau(ctx, m, x),
        }
    }
}

fn flip(ctx: &Arc<AffineContext>, x: &AffineElement) -> Result<AffineElement> {
    let n = ctx.n();
    let w0 = Permutation::longest(n);
    let images: Vec<AffineElement> = (1..n)
        .map(|j| {
            let t = AffineElement::t(ctx, n - j)?;
            let tele = AffineElement::from_tensor(ctx, ctx.teleporter(n - j)?)?;
            Ok(&tele.scaled(ctx.z()) - &t)
        })
        .collect::<Result<_>>()?;
    let mut t_images: HashMap<&Permutation, AffineElement> = HashMap::new();
    let mut out = LinComb::new();
    for (t, c) in x.terms() {
        if !t_images.contains_key(&t.w) {
            let mut img = AffineElement::one(ctx);
            for &i in &t.w.reduced_word() {
                img = img.mul(&images[i - 1])?;
            }
            t_images.insert(&t.w, img);
        }
        let (a, odd) = superpermute_pure(ctx.algebra(), &w0, &t.a);
        let lambda: Vec<i32> = w0.act_positions(&t.x)?;
        let prod = left_mul_monomial(ctx, &a, &lambda, t_images[&t.w].terms());
        out.add_scaled(&prod, &if odd { -c } else { c.clone() });
    }
    Ok(AffineElement::from_terms_unchecked(ctx, out))
}

fn zeta(ctx: &Arc<AffineContext>, a: &Elem, x: &AffineElement) -> Result<AffineElement> {
    let alg = ctx.algebra();
    let mut powers: HashMap<i32, Vec<(usize, Scalar)>> = HashMap::new();
    let mut out = LinComb::new();
    for (t, c) in x.terms() {
        let mut factors = Vec::with_capacity(ctx.n());
        for &e in &t.x {
            if !powers.contains_key(&e) {
                powers.insert(e, alg.to_sparse(&alg.pow_elem(a, e)?));
            }
            factors.push(powers[&e].clone());
        }
        let scale = TensorElement::pure(&factors);
        for (sa, sc) in scale.terms() {
            for (prod, e) in mul_pure(alg, &t.a, sa) {
                out.add_term(Term { w: t.w.clone(), x: t.x.clone(), a: prod }, &(c * sc) * &e);
            }
        }
    }
    Ok(AffineElement::from_terms_unchecked(ctx, out))
}

fn slot_images(ctx: &AffineContext, m: &Matrix, a: &Slots) -> TensorElement {
    let alg = ctx.algebra();
    let factors: Vec<_> = a.iter().map(|&k| alg.to_sparse(&m[k as usize])).collect();
    TensorElement::pure(&factors)
}

fn slotwise(ctx: &Arc<AffineContext>, m: &Matrix, x: &AffineElement) -> AffineElement {
    let mut out = LinComb::new();
    for (t, c) in x.terms() {
        for (a, e) in slot_images(ctx, m, &t.a).terms() {
            out.add_term(Term { w: t.w.clone(), x: t.x.clone(), a: a.clone() }, c * e);
        }
    }
    AffineElement::from_terms_unchecked(ctx, out)
}

fn tau(ctx: &Arc<AffineContext>, m: &Matrix, x: &AffineElement) -> Result<AffineElement> {
    let id = Permutation::identity(ctx.n());
    let mut out = LinComb::new();
    for (t, c) in x.terms() {
        let mut mono = LinComb::new();
        for (a, e) in slot_images(ctx, m, &t.a).terms() {
            mono.add_term(Term { w: id.clone(), x: t.x.clone(), a: a.clone() }, e.clone());
        }
        out.add_scaled(&apply_t_w(ctx, &t.w.inverse(), &mono), c);
    }
    Ok(AffineElement::from_terms_unchecked(ctx, out))
}

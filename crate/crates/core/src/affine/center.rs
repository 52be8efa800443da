//! Centrality: the supercommutation test against a generating set and the
//! symmetrization map onto `P_n(Z(A))^{S_n}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{AffineContext, AffineElement};
use crate::error::{Error, Result};
use crate::laurent::{ActMode, Exps, LaurentElement};
use crate::linalg::{self, Echelon};
use crate::lincomb::LinComb;
use crate::perm::all_permutations;
use crate::scalar::Scalar;
use crate::tensor::Slots;

/// True iff `x` supercommutes with `T_i`, `X_1` and every basis element of
/// `A` in slot 1. These generate `H_n^aff(A,z)`. Each homogeneous
/// component is tested separately.
pub fn is_central(x: &AffineElement) -> Result<bool> {
    let ctx = x.context();
    let alg = ctx.algebra();
    let mut gens: Vec<(AffineElement, u8)> = Vec::new();
    for i in 1..ctx.n() {
        gens.push((AffineElement::t(ctx, i)?, 0));
    }
    gens.push((AffineElement::x(ctx, 1, 1)?, 0));
    for b in 0..alg.dim() {
        gens.push((AffineElement::a_in_slot(ctx, b, 1)?, alg.parity(b)));
    }
    for (p, part) in x.parity_parts().iter().enumerate() {
        if part.is_zero() {
            continue;
        }
        for (g, pg) in &gens {
            let sign = Scalar::sign(p == 1 && *pg == 1);
            let lhs = part.mul(g)?;
            let rhs = g.mul(part)?.scaled(&sign);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Coordinates of each basis vector of `A` in a basis whose first vectors
/// span `Z(A)`; returns the rows and the dimension of `Z(A)`.
fn center_coordinates(ctx: &AffineContext) -> (Vec<Vec<Scalar>>, usize) {
    let alg = ctx.algebra();
    let (z, _) = alg.center_basis();
    let m = alg.dim();
    let mut ech = Echelon::new(m);
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    for v in z.iter().cloned().chain((0..m).map(|k| alg.basis_elem(k))) {
        if ech.insert(linalg::to_sparse(&v)) {
            basis.push(v);
        }
    }
    let inv = linalg::inverse(&basis).expect("completed basis is invertible");
    (inv, z.len())
}

/// Checks that every coefficient of `g` lies in `Z(A)^{⊗n}`.
fn check_central_coefficients(ctx: &AffineContext, g: &LaurentElement) -> Result<()> {
    let (q, zdim) = center_coordinates(ctx);
    let mut by_lambda: BTreeMap<&Exps, LinComb<Slots>> = BTreeMap::new();
    for (m, c) in g.terms() {
        by_lambda.entry(&m.x).or_default().add_term(m.a.clone(), c.clone());
    }
    for (lambda, tensor) in by_lambda {
        let mut coords: LinComb<Vec<usize>> = LinComb::new();
        for (a, c) in &tensor {
            let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), c.clone())];
            for &k in a {
                let row = &q[k as usize];
                acc = acc
                    .into_iter()
                    .flat_map(|(idx, coeff)| {
                        row.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(r, x)| {
                            let mut idx = idx.clone();
                            idx.push(r);
                            (idx, &coeff * x)
                        })
                    })
                    .collect();
            }
            for (idx, coeff) in acc {
                coords.add_term(idx, coeff);
            }
        }
        if coords.keys().any(|idx| idx.iter().any(|&r| r >= zdim)) {
            return Err(Error::NotCentral(format!("Z(A)^{{⊗n}} (coefficient of X^{lambda:?})")));
        }
    }
    Ok(())
}

/// `Σ_{w ∈ S_n} w(g)` under the diagonal action, embedded in `H_n^aff(A,z)`.
pub fn make_central(ctx: &Arc<AffineContext>, g: &LaurentElement) -> Result<AffineElement> {
    if g.n() != ctx.n() {
        return Err(Error::SizeMismatch { expected: ctx.n(), found: g.n() });
    }
    check_central_coefficients(ctx, g)?;
    let alg = ctx.algebra();
    let mut sum = LaurentElement::zero(ctx.n());
    for w in all_permutations(ctx.n()) {
        sum = sum.add(&g.act(alg, &w, ActMode::Diagonal)?)?;
    }
    AffineElement::from_laurent(ctx, &sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::presets;
    use crate::tensor::TensorElement;

    fn ctx(preset: &str, n: usize, z: &str) -> Arc<AffineContext> {
        AffineContext::new(Arc::new(presets::load(preset).unwrap()), n, z.parse().unwrap()).unwrap()
    }

    #[test]
    fn orbit_sums() {
        let c = ctx("trivial", 2, "1");
        let alg = c.algebra().clone();
        let x1 = LaurentElement::x_power(&alg, 2, 1, 1).unwrap();
        let sym = make_central(&c, &x1).unwrap();
        let expect = &AffineElement::x(&c, 1, 1).unwrap() + &AffineElement::x(&c, 2, 1).unwrap();
        assert_eq!(sym, expect);
        assert!(is_central(&sym).unwrap());
        assert!(!is_central(&AffineElement::x(&c, 1, 1).unwrap()).unwrap());
        assert!(is_central(&AffineElement::one(&c)).unwrap());

        let x1x2 = LaurentElement::x_monomial(&alg, &[1, 1]);
        let sym = make_central(&c, &x1x2).unwrap();
        assert_eq!(sym, AffineElement::from_laurent(&c, &x1x2).unwrap().scaled(&Scalar::from_int(2)));
    }

    #[test]
    fn exterior_center() {
        let c = ctx("ext2", 2, "1");
        let alg = c.algebra().clone();
        let top = LaurentElement::from_tensor(&TensorElement::basis(&[3, 0]));
        let sym = make_central(&c, &top).unwrap();
        let expect = LaurentElement::from_tensor(&TensorElement::basis(&[3, 0]).add(&TensorElement::basis(&[0, 3])).unwrap());
        assert_eq!(sym, AffineElement::from_laurent(&c, &expect).unwrap());
        assert!(is_central(&sym).unwrap());

        // the odd generators are supercentral in A, so θ1 ⊗ 1 symmetrizes as well
        let odd = LaurentElement::from_tensor(&TensorElement::basis(&[1, 0]));
        assert!(is_central(&make_central(&c, &odd).unwrap()).unwrap());
        let _ = alg;
    }

    #[test]
    fn noncentral_coefficients_rejected() {
        // the non-commutative matrix algebra M_2(k) has center k
        let spec = crate::superalgebra::SuperAlgebraSpec {
            names: vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
            parity: vec![0; 4],
            mul: (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| {
                            let (a, b) = (i / 2, i % 2);
                            let (c, d) = (j / 2, j % 2);
                            if b == c { vec![(2 * a + d, Scalar::one())] } else { vec![] }
                        })
                        .collect()
                })
                .collect(),
            trace: vec![Scalar::one(), Scalar::zero(), Scalar::zero(), Scalar::one()],
            unit: vec![(0, Scalar::one()), (3, Scalar::one())],
        };
        let alg = Arc::new(crate::superalgebra::SuperAlgebra::load(&spec).unwrap());
        let c = AffineContext::new(alg.clone(), 2, Scalar::one()).unwrap();
        let e11 = LaurentElement::from_tensor(&TensorElement::basis(&[0, 0]));
        assert!(matches!(make_central(&c, &e11), Err(Error::NotCentral(_))));
        let one = LaurentElement::one(&alg, 2).shifted(&[1, 0]);
        let sym = make_central(&c, &one).unwrap();
        assert!(is_central(&sym).unwrap());
    }
}

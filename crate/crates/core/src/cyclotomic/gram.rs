//! The trace form of `H_n^f(A,z)` on its basis and the dual basis.

use std::sync::Arc;

use super::CycloContext;
use crate::affine::{AffineElement, Term};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::lincomb::LinComb;
use crate::par::Execution;
use crate::scalar::Scalar;
use crate::tensor::slots_parity;

/// `G[u][v] = tr_f(b_u b_v)` and `G^{-1}`, whose rows give the dual basis.
#[derive(Clone, Debug)]
pub struct GramData {
    pub basis: Vec<Term>,
    pub parities: Vec<u8>,
    pub matrix: Matrix,
    pub inverse: Matrix,
}

impl GramData {
    /// `G[u][v] = (-1)^{p_u p_v} G[v][u]` for every pair.
    pub fn is_supersymmetric(&self) -> bool {
        let n = self.basis.len();
        (0..n).all(|u| {
            (0..n).all(|v| {
                let sign = Scalar::sign(self.parities[u] == 1 && self.parities[v] == 1);
                self.matrix[u][v] == &sign * &self.matrix[v][u]
            })
        })
    }
}

/// Builds the Gram matrix row by row (rows run under `exec`) and inverts it.
pub fn gram(ctx: &Arc<CycloContext>, exec: Execution) -> Result<GramData> {
    let basis = ctx.basis();
    let aff = ctx.affine();
    let lifts: Vec<AffineElement> = basis
        .iter()
        .map(|t| AffineElement::from_terms(aff, LinComb::single(t.clone(), Scalar::one())))
        .collect::<Result<_>>()?;
    let rows = exec.map(&lifts, |bu| -> Result<Vec<Scalar>> {
        lifts.iter().map(|bv| Ok(ctx.reduce(&bu.mul(bv)?)?.trace())).collect()
    });
    let matrix: Matrix = rows.into_iter().collect::<Result<_>>()?;
    let inverse = linalg::inverse(&matrix)
        .ok_or_else(|| Error::Singular(format!("Gram matrix of size {} is singular", basis.len())))?;
    let parities = basis.iter().map(|t| slots_parity(ctx.algebra(), &t.a)).collect();
    Ok(GramData { basis, parities, matrix, inverse })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineContext;
    use crate::cyclotomic::CyclotomicPoly;
    use crate::superalgebra::presets;

    fn setup(preset: &str, n: usize, z: &str, f: &[i64]) -> Arc<CycloContext> {
        let alg = Arc::new(presets::load(preset).unwrap());
        let aff = AffineContext::new(alg.clone(), n, z.parse().unwrap()).unwrap();
        let coeffs: Vec<Scalar> = f.iter().map(|&c| Scalar::from_int(c)).collect();
        CycloContext::new(&aff, CyclotomicPoly::from_scalars(&alg, &coeffs).unwrap()).unwrap()
    }

    #[test]
    fn level_two_rank_one_is_identity() {
        let g = gram(&setup("trivial", 1, "1", &[-1, 0]), Execution::Sequential).unwrap();
        assert_eq!(g.matrix, linalg::identity(2));
        let g = gram(&setup("trivial", 1, "1", &[-1]), Execution::Sequential).unwrap();
        assert_eq!(g.matrix, linalg::identity(1));
    }

    #[test]
    fn rank_two_is_invertible_and_symmetric() {
        let seq = gram(&setup("trivial", 2, "1", &[-1, 0]), Execution::Sequential).unwrap();
        assert_eq!(seq.basis.len(), 8);
        assert!(seq.is_supersymmetric());
        let par = gram(&setup("trivial", 2, "1", &[-1, 0]), Execution::Parallel).unwrap();
        assert_eq!(seq.matrix, par.matrix);
    }
}

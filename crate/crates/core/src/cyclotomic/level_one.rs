//! Level one quotients `f = X + a` and their identification with `H_n(A,z)`.

use std::sync::Arc;

use serde::Serialize;

use super::{CycloContext, CyclotomicPoly};
use crate::affine::{eval_jm, jucys_murphy, AffineContext, AffineElement, Symmetry};
use crate::error::Result;
use crate::perm::factorial;
use crate::random::{Sampler, Shape};
use crate::scalar::Scalar;
use crate::superalgebra::{Elem, SuperAlgebra};

/// Outcome of [`level_one_check`]; mismatches are listed, not raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelOneReport {
    pub n: usize,
    pub dimension: usize,
    pub expected_dimension: usize,
    /// Indices `i` with `reduce(ζ_c(X_i)) ≠ J_i`, `c = -a^{-1}`.
    pub jm_mismatches: Vec<usize>,
    pub samples: usize,
    pub sample_failures: usize,
}

impl LevelOneReport {
    pub fn passed(&self) -> bool {
        self.dimension == self.expected_dimension && self.jm_mismatches.is_empty() && self.sample_failures == 0
    }
}

/// Checks `H_n^f(A,z) ≅ H_n(A,z)` for `f = X + a`.
///
/// `ζ_c` with `c = -a^{-1}` carries `X_1 - 1` to a unit multiple of `X_1 + a`
/// and fixes the finite part, so `reduce_f(ζ_c(h)) = eval_jm(h)` for every
/// `h` with nonnegative exponents.
pub fn level_one_check(
    alg: &Arc<SuperAlgebra>,
    n: usize,
    z: Scalar,
    a: &Elem,
    samples: usize,
    seed: u64,
) -> Result<LevelOneReport> {
    let aff = AffineContext::new(alg.clone(), n, z)?;
    let spec = super::CyclotomicSpec { d: 1, coeffs: vec![alg.to_sparse(a)] };
    let f = CyclotomicPoly::load(alg, &spec)?;
    let ctx = CycloContext::new(&aff, f)?;
    let c: Elem = alg.invert(a)?.iter().map(|v| -v).collect();
    let zeta = Symmetry::zeta(alg, c)?;

    let mut jm_mismatches = Vec::new();
    for i in 1..=n {
        let lhs = ctx.reduce(&zeta.apply(&AffineElement::x(&aff, i, 1)?)?)?;
        if lhs.lift() != jucys_murphy(&aff, i)? {
            jm_mismatches.push(i);
        }
    }
    let mut sampler = Sampler::new(seed);
    let shape = Shape { max_terms: 3, max_exp: 2, nonnegative: true };
    let mut sample_failures = 0;
    for _ in 0..samples {
        let h = sampler.affine(&aff, shape);
        if ctx.reduce(&zeta.apply(&h)?)?.lift() != eval_jm(&h)? {
            sample_failures += 1;
        }
    }
    Ok(LevelOneReport {
        n,
        dimension: ctx.basis().len(),
        expected_dimension: alg.dim().pow(n as u32) * factorial(n),
        jm_mismatches,
        samples,
        sample_failures,
    })
}

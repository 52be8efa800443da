//! Seeded random elements for property checks and suites.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use crate::affine::{AffineContext, AffineElement, Term};
use crate::laurent::{Exps, LaurentElement, Monomial};
use crate::lincomb::LinComb;
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::superalgebra::SuperAlgebra;
use crate::tensor::{Slots, TensorElement};

/// Deterministic sampler; equal seeds give equal sequences.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

/// Shape bounds for random elements.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub max_terms: usize,
    pub max_exp: i32,
    pub nonnegative: bool,
}

impl Default for Shape {
    fn default() -> Self {
        Shape { max_terms: 5, max_exp: 3, nonnegative: false }
    }
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }

    /// A coefficient from `{±1, ±1/2, 2}`.
    pub fn scalar(&mut self) -> Scalar {
        const CHOICES: [(i64, i64); 5] = [(1, 1), (-1, 1), (1, 2), (-1, 2), (2, 1)];
        let (p, q) = CHOICES[self.index(CHOICES.len())];
        Scalar::from_frac(p, q).expect("nonzero denominator")
    }

    pub fn slots(&mut self, alg: &SuperAlgebra, n: usize) -> Slots {
        (0..n).map(|_| self.index(alg.dim()) as u8).collect()
    }

    pub fn exps(&mut self, n: usize, shape: Shape) -> Exps {
        let lo = if shape.nonnegative { 0 } else { -shape.max_exp };
        (0..n).map(|_| self.rng.gen_range(lo..=shape.max_exp)).collect()
    }

    pub fn permutation(&mut self, n: usize) -> Permutation {
        let mut images: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            let j = self.index(i + 1);
            images.swap(i, j);
        }
        Permutation::from_images(&images).expect("shuffle is a bijection")
    }

    pub fn tensor(&mut self, alg: &SuperAlgebra, n: usize, max_terms: usize) -> TensorElement {
        let k = 1 + self.index(max_terms);
        let terms: LinComb<Slots> = (0..k).map(|_| (self.slots(alg, n), self.scalar())).collect();
        TensorElement::from_terms(n, terms).expect("slots have length n")
    }

    pub fn laurent(&mut self, alg: &SuperAlgebra, n: usize, shape: Shape) -> LaurentElement {
        let k = 1 + self.index(shape.max_terms);
        let terms: LinComb<Monomial> =
            (0..k).map(|_| (Monomial { a: self.slots(alg, n), x: self.exps(n, shape) }, self.scalar())).collect();
        LaurentElement::from_terms(n, terms).expect("monomials have length n")
    }

    /// A single Laurent monomial `a X^λ` with coefficient 1.
    pub fn laurent_monomial(&mut self, alg: &SuperAlgebra, n: usize, shape: Shape) -> LaurentElement {
        let m = Monomial { a: self.slots(alg, n), x: self.exps(n, shape) };
        LaurentElement::from_terms(n, LinComb::single(m, Scalar::one())).expect("monomial has length n")
    }

    pub fn affine(&mut self, ctx: &Arc<AffineContext>, shape: Shape) -> AffineElement {
        let n = ctx.n();
        let alg = ctx.algebra().clone();
        let k = 1 + self.index(shape.max_terms);
        let terms: LinComb<Term> = (0..k)
            .map(|_| {
                let t = Term { w: self.permutation(n), x: self.exps(n, shape), a: self.slots(&alg, n) };
                (t, self.scalar())
            })
            .collect();
        AffineElement::from_terms(ctx, terms).expect("terms have length n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::presets;

    #[test]
    fn reproducible() {
        let alg = presets::load("dual").unwrap();
        let a = Sampler::new(7).laurent(&alg, 3, Shape::default());
        let b = Sampler::new(7).laurent(&alg, 3, Shape::default());
        assert_eq!(a, b);
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            let f = s.laurent(&alg, 2, Shape { nonnegative: true, ..Shape::default() });
            assert!(f.min_exponent().unwrap() >= 0);
            assert!(f.terms().len() <= 5);
        }
    }
}

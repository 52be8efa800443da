//! Laurent polynomials with coefficients in `A^{⊗n}`, the two symmetric-group
//! actions on them, and Demazure operators in closed form.

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::superalgebra::SuperAlgebra;
use crate::tensor::{mul_pure, superpermute_pure, swap_pure, Slots, TensorElement};

/// Exponent vector `λ ∈ Z^n`.
pub type Exps = SmallVec<[i32; 4]>;

/// A monomial `a X^λ` with `a` a pure tensor of basis elements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub a: Slots,
    pub x: Exps,
}

/// How `S_n` acts on `P_n(A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActMode {
    /// Superpermute the tensor part and permute the exponents.
    Diagonal,
    /// Permute the exponents only.
    XOnly,
}

/// An element of `P_n(A) = A^{⊗n} ⊗ k[X_1^{±1}, …, X_n^{±1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentElement {
    n: usize,
    terms: LinComb<Monomial>,
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
    }
    Ok(())
}

fn check_n(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::SizeMismatch { expected, found });
    }
    Ok(())
}

/// Closed-form `Δ_i` on the exponent part of one monomial, as signed exponent vectors.
pub(crate) fn demazure_exps(i: usize, x: &[i32]) -> Vec<(Exps, bool)> {
    let (p, q) = (x[i - 1], x[i]);
    let (lo, hi, negative) = match p.cmp(&q) {
        std::cmp::Ordering::Equal => return Vec::new(),
        std::cmp::Ordering::Less => (p, q, false),
        std::cmp::Ordering::Greater => (q, p, true),
    };
    (0..hi - lo)
        .map(|r| {
            let mut y: Exps = x.iter().copied().collect();
            y[i - 1] = lo + r;
            y[i] = hi - r;
            (y, negative)
        })
        .collect()
}

impl LaurentElement {
    pub fn zero(n: usize) -> Self {
        LaurentElement { n, terms: LinComb::new() }
    }

    pub fn from_terms(n: usize, terms: LinComb<Monomial>) -> Result<Self> {
        if let Some(m) = terms.keys().find(|m| m.a.len() != n || m.x.len() != n) {
            return Err(Error::SizeMismatch { expected: n, found: m.a.len().max(m.x.len()) });
        }
        Ok(LaurentElement { n, terms })
    }

    pub(crate) fn from_terms_unchecked(n: usize, terms: LinComb<Monomial>) -> Self {
        LaurentElement { n, terms }
    }

    /// `a ⊗ 1` for a tensor `a`.
    pub fn from_tensor(t: &TensorElement) -> Self {
        let n = t.n();
        let terms = t.terms().map_keys(|a| Monomial { a: a.clone(), x: SmallVec::from_elem(0, n) });
        LaurentElement { n, terms }
    }

    /// `1 ⊗ X^λ`.
    pub fn x_monomial(alg: &SuperAlgebra, lambda: &[i32]) -> Self {
        let n = lambda.len();
        let unit = LaurentElement::from_tensor(&TensorElement::unit(alg, n));
        unit.shifted(lambda)
    }

    pub fn one(alg: &SuperAlgebra, n: usize) -> Self {
        Self::from_tensor(&TensorElement::unit(alg, n))
    }

    /// `X_i^k` for 1-based `i`.
    pub fn x_power(alg: &SuperAlgebra, n: usize, i: usize, k: i32) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, max: n });
        }
        let mut lambda = vec![0; n];
        lambda[i - 1] = k;
        Ok(Self::x_monomial(alg, &lambda))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &LinComb<Monomial> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<Monomial> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(LaurentElement { n: self.n, terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut terms = self.terms.clone();
        terms.sub_assign(&other.terms);
        Ok(LaurentElement { n: self.n, terms })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        LaurentElement { n: self.n, terms: self.terms.scaled(c) }
    }

    /// Multiplication by `X^μ`; the `X_i` are even and central.
    pub fn shifted(&self, mu: &[i32]) -> Self {
        let terms = self.terms.map_keys(|m| Monomial {
            a: m.a.clone(),
            x: m.x.iter().zip(mu).map(|(a, b)| a + b).collect(),
        });
        LaurentElement { n: self.n, terms }
    }

    pub fn mul(&self, alg: &SuperAlgebra, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut terms = LinComb::new();
        for (f, c) in &self.terms {
            for (g, d) in &other.terms {
                let cd = c * d;
                let x: Exps = f.x.iter().zip(&g.x).map(|(p, q)| p + q).collect();
                for (a, e) in mul_pure(alg, &f.a, &g.a) {
                    terms.add_term(Monomial { a, x: x.clone() }, &cd * &e);
                }
            }
        }
        Ok(LaurentElement { n: self.n, terms })
    }

    /// Left multiplication by a tensor.
    pub fn mul_tensor_left(&self, alg: &SuperAlgebra, t: &TensorElement) -> Result<Self> {
        LaurentElement::from_tensor(t).mul(alg, self)
    }

    pub fn act(&self, alg: &SuperAlgebra, w: &Permutation, mode: ActMode) -> Result<Self> {
        check_n(w.n(), self.n)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let x: Exps = w.act_positions(&m.x).expect("sizes checked").into_iter().collect();
                match mode {
                    ActMode::XOnly => (Monomial { a: m.a.clone(), x }, c.clone()),
                    ActMode::Diagonal => {
                        let (a, odd) = superpermute_pure(alg, w, &m.a);
                        (Monomial { a, x }, if odd { -c } else { c.clone() })
                    }
                }
            })
            .collect();
        Ok(LaurentElement { n: self.n, terms })
    }

    /// The action of `s_i`, cheaper than [`act`](Self::act) with a general permutation.
    pub fn act_simple(&self, alg: &SuperAlgebra, i: usize, mode: ActMode) -> Result<Self> {
        check_index(i, self.n)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut x = m.x.clone();
                x.swap(i - 1, i);
                match mode {
                    ActMode::XOnly => (Monomial { a: m.a.clone(), x }, c.clone()),
                    ActMode::Diagonal => {
                        let (a, odd) = swap_pure(alg, i, &m.a);
                        (Monomial { a, x }, if odd { -c } else { c.clone() })
                    }
                }
            })
            .collect();
        Ok(LaurentElement { n: self.n, terms })
    }

    /// `Δ_i`, the Demazure operator, via the closed form on monomials.
    pub fn demazure(&self, i: usize) -> Result<Self> {
        check_index(i, self.n)?;
        let mut terms = LinComb::new();
        for (m, c) in &self.terms {
            for (x, negative) in demazure_exps(i, &m.x) {
                terms.add_term(Monomial { a: m.a.clone(), x }, if negative { -c } else { c.clone() });
            }
        }
        Ok(LaurentElement { n: self.n, terms })
    }

    /// `X_{i+1}^{-1} Δ_i(X_{i+1} f)`.
    pub fn twisted_demazure(&self, i: usize) -> Result<Self> {
        check_index(i, self.n)?;
        let mut up = vec![0; self.n];
        up[i] = 1;
        let down: Vec<i32> = up.iter().map(|v| -v).collect();
        Ok(self.shifted(&up).demazure(i)?.shifted(&down))
    }

    /// Smallest exponent appearing anywhere, or `None` for zero.
    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().flat_map(|m| m.x.iter().copied()).min()
    }

    pub fn parity_parts(&self, alg: &SuperAlgebra) -> [Self; 2] {
        let parity = |m: &Monomial| crate::tensor::slots_parity(alg, &m.a);
        [
            LaurentElement { n: self.n, terms: self.terms.filter(|m| parity(m) == 0) },
            LaurentElement { n: self.n, terms: self.terms.filter(|m| parity(m) == 1) },
        ]
    }
}

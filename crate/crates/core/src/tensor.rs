//! Elements of `A^{⊗n}` with Koszul-signed multiplication and superpermutation.

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::superalgebra::{SparseElem, SuperAlgebra};

/// Basis indices of a pure tensor, slot 1 first.
pub type Slots = SmallVec<[u8; 4]>;

/// Parity of a pure tensor of basis elements.
pub fn slots_parity(alg: &SuperAlgebra, a: &[u8]) -> u8 {
    a.iter().fold(0, |acc, &k| acc ^ alg.parity(k as usize))
}

/// `(a_1⊗…⊗a_n)(b_1⊗…⊗b_n) = (−1)^{Σ_{j<i} ā_i b̄_j} a_1b_1⊗…⊗a_nb_n`, expanded.
pub fn mul_pure(alg: &SuperAlgebra, a: &[u8], b: &[u8]) -> Vec<(Slots, Scalar)> {
    let mut odd = false;
    let mut odd_b_before = false;
    for (&x, &y) in a.iter().zip(b) {
        if alg.parity(x as usize) == 1 && odd_b_before {
            odd = !odd;
        }
        if alg.parity(y as usize) == 1 {
            odd_b_before = !odd_b_before;
        }
    }
    let mut acc: Vec<(Slots, Scalar)> = vec![(Slots::new(), Scalar::sign(odd))];
    for (&x, &y) in a.iter().zip(b) {
        let prod = alg.product(x as usize, y as usize);
        match prod.as_slice() {
            [] => return Vec::new(),
            [(k, c)] => {
                for (slots, coeff) in acc.iter_mut() {
                    slots.push(*k as u8);
                    if !c.is_one() {
                        *coeff *= c;
                    }
                }
            }
            _ => {
                acc = acc
                    .into_iter()
                    .flat_map(|(slots, coeff)| {
                        prod.iter().map(move |(k, c)| {
                            let mut s = slots.clone();
                            s.push(*k as u8);
                            (s, &coeff * c)
                        })
                    })
                    .collect();
            }
        }
    }
    acc
}

/// Superpermutation of a pure tensor: `result[w(i)] = a[i]`, with the Koszul
/// sign of every odd pair that changes order. Returns `(slots, odd_sign)`.
pub fn superpermute_pure(alg: &SuperAlgebra, w: &Permutation, a: &[u8]) -> (Slots, bool) {
    let n = a.len();
    let mut out: Slots = a.iter().copied().collect();
    let mut odd = false;
    for i in 0..n {
        out[w.apply(i + 1) - 1] = a[i];
        if alg.parity(a[i] as usize) == 0 {
            continue;
        }
        for j in i + 1..n {
            if w.apply(i + 1) > w.apply(j + 1) && alg.parity(a[j] as usize) == 1 {
                odd = !odd;
            }
        }
    }
    (out, odd)
}

/// `s_i` on a pure tensor: swap slots `i, i+1` (1-based) with sign `(−1)^{ā_i ā_{i+1}}`.
pub fn swap_pure(alg: &SuperAlgebra, i: usize, a: &[u8]) -> (Slots, bool) {
    let mut out: Slots = a.iter().copied().collect();
    out.swap(i - 1, i);
    let odd = alg.parity(a[i - 1] as usize) == 1 && alg.parity(a[i] as usize) == 1;
    (out, odd)
}

pub fn trace_pure(alg: &SuperAlgebra, a: &[u8]) -> Scalar {
    let mut acc = Scalar::one();
    for &k in a {
        let t = alg.trace_of_basis(k as usize);
        if t.is_zero() {
            return Scalar::zero();
        }
        acc *= t;
    }
    acc
}

/// An element of `A^{⊗n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    n: usize,
    terms: LinComb<Slots>,
}

impl TensorElement {
    pub fn zero(n: usize) -> Self {
        TensorElement { n, terms: LinComb::new() }
    }

    pub fn from_terms(n: usize, terms: LinComb<Slots>) -> Result<Self> {
        if let Some(k) = terms.keys().find(|k| k.len() != n) {
            return Err(Error::SizeMismatch { expected: n, found: k.len() });
        }
        Ok(TensorElement { n, terms })
    }

    /// The pure tensor `f_1 ⊗ … ⊗ f_n` of sparse factors.
    pub fn pure(factors: &[SparseElem]) -> Self {
        let mut acc: Vec<(Slots, Scalar)> = vec![(Slots::new(), Scalar::one())];
        for f in factors {
            acc = acc
                .into_iter()
                .flat_map(|(slots, c)| {
                    f.iter().map(move |(k, x)| {
                        let mut s = slots.clone();
                        s.push(*k as u8);
                        (s, &c * x)
                    })
                })
                .collect();
        }
        TensorElement { n: factors.len(), terms: acc.into_iter().collect() }
    }

    pub fn basis(slots: &[u8]) -> Self {
        TensorElement { n: slots.len(), terms: LinComb::single(slots.iter().copied().collect(), Scalar::one()) }
    }

    pub fn unit(alg: &SuperAlgebra, n: usize) -> Self {
        Self::pure(&vec![alg.unit().clone(); n])
    }

    /// `a_slot = 1^{⊗(slot−1)} ⊗ a ⊗ 1^{⊗(n−slot)}` for 1-based `slot`.
    pub fn embed(alg: &SuperAlgebra, n: usize, slot: usize, a: &SparseElem) -> Result<Self> {
        if slot == 0 || slot > n {
            return Err(Error::IndexOutOfRange { index: slot, max: n });
        }
        let mut factors = vec![alg.unit().clone(); n];
        factors[slot - 1] = a.clone();
        Ok(Self::pure(&factors))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &LinComb<Slots> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<Slots> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(TensorElement { n: self.n, terms })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut terms = self.terms.clone();
        terms.sub_assign(&other.terms);
        Ok(TensorElement { n: self.n, terms })
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        TensorElement { n: self.n, terms: self.terms.scaled(c) }
    }

    pub fn mul(&self, alg: &SuperAlgebra, other: &Self) -> Result<Self> {
        check_n(self.n, other.n)?;
        let mut terms = LinComb::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                for (k, c) in mul_pure(alg, a, b) {
                    terms.add_term(k, &xy * &c);
                }
            }
        }
        Ok(TensorElement { n: self.n, terms })
    }

    pub fn superpermute(&self, alg: &SuperAlgebra, w: &Permutation) -> Result<Self> {
        check_n(w.n(), self.n)?;
        let terms = self
            .terms
            .iter()
            .map(|(a, c)| {
                let (slots, odd) = superpermute_pure(alg, w, a);
                (slots, if odd { -c } else { c.clone() })
            })
            .collect();
        Ok(TensorElement { n: self.n, terms })
    }

    /// `tr^{⊗n}`, the product of slotwise traces.
    pub fn trace(&self, alg: &SuperAlgebra) -> Scalar {
        self.terms.iter().map(|(a, c)| c * &trace_pure(alg, a)).sum()
    }

    /// Splits into homogeneous components, indexed by parity.
    pub fn parity_parts(&self, alg: &SuperAlgebra) -> [Self; 2] {
        let even = self.terms.filter(|a| slots_parity(alg, a) == 0);
        let odd = self.terms.filter(|a| slots_parity(alg, a) == 1);
        [TensorElement { n: self.n, terms: even }, TensorElement { n: self.n, terms: odd }]
    }
}

fn check_n(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::SizeMismatch { expected, found });
    }
    Ok(())
}

/// The teleporter `t_{i,j} = Σ_b b_i b_j^∨`.
pub fn teleporter(alg: &SuperAlgebra, n: usize, i: usize, j: usize) -> Result<TensorElement> {
    for idx in [i, j] {
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, max: n });
        }
    }
    if i == j {
        return Err(Error::IndexOutOfRange { index: j, max: n });
    }
    let mut out = TensorElement::zero(n);
    for k in 0..alg.dim() {
        let b = TensorElement::embed(alg, n, i, &vec![(k, Scalar::one())])?;
        let dual = TensorElement::embed(alg, n, j, alg.dual(k))?;
        out = out.add(&b.mul(alg, &dual)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::presets;

    fn t(slots: &[u8]) -> TensorElement {
        TensorElement::basis(slots)
    }

    #[test]
    fn koszul_signs_in_products() {
        let ext = presets::load("ext2").unwrap();
        // (θ1⊗1)(1⊗θ1) = θ1⊗θ1, (1⊗θ1)(θ1⊗1) = −θ1⊗θ1
        assert_eq!(t(&[1, 0]).mul(&ext, &t(&[0, 1])).unwrap(), t(&[1, 1]));
        assert_eq!(t(&[0, 1]).mul(&ext, &t(&[1, 0])).unwrap(), t(&[1, 1]).scaled(&Scalar::from_int(-1)));
        let dual = presets::load("dual").unwrap();
        assert!(t(&[1, 0]).mul(&dual, &t(&[1, 0])).unwrap().is_zero());
    }

    #[test]
    fn superpermutation_signs() {
        let ext = presets::load("ext2").unwrap();
        let s1 = Permutation::simple(2, 1).unwrap();
        assert_eq!(t(&[1, 2]).superpermute(&ext, &s1).unwrap(), t(&[2, 1]).scaled(&Scalar::from_int(-1)));
        let dual = presets::load("dual").unwrap();
        assert_eq!(t(&[1, 0]).superpermute(&dual, &s1).unwrap(), t(&[0, 1]));
    }

    #[test]
    fn superpermutation_matches_simple_swaps_along_words() {
        let ext = presets::load("ext2").unwrap();
        for w in crate::perm::all_permutations(3) {
            for a in [[1u8, 2, 1], [1, 3, 2], [2, 1, 3], [1, 2, 2]] {
                let (direct, odd) = superpermute_pure(&ext, &w, &a);
                let mut slots: Slots = a.iter().copied().collect();
                let mut sign = false;
                for &i in w.reduced_word().iter().rev() {
                    let (s, o) = swap_pure(&ext, i, &slots);
                    slots = s;
                    sign ^= o;
                }
                assert_eq!((direct, odd), (slots, sign), "w = {w}");
            }
        }
    }

    #[test]
    fn longest_element_words_agree() {
        let ext = presets::load("ext2").unwrap();
        let x = t(&[1, 2, 3]).add(&t(&[2, 2, 1])).unwrap();
        let via = |word: &[usize]| {
            let mut y = x.clone();
            for &i in word.iter().rev() {
                y = y.superpermute(&ext, &Permutation::simple(3, i).unwrap()).unwrap();
            }
            y
        };
        assert_eq!(via(&[1, 2, 1]), via(&[2, 1, 2]));
        assert_eq!(via(&[1, 2, 1]), x.superpermute(&ext, &Permutation::longest(3)).unwrap());
    }

    #[test]
    fn traces() {
        let dual = presets::load("dual").unwrap();
        assert_eq!(t(&[1, 1]).trace(&dual), Scalar::one());
        assert!(t(&[0, 1]).trace(&dual).is_zero());
        let triv = presets::load("trivial").unwrap();
        assert_eq!(t(&[0]).trace(&triv), Scalar::one());
    }

    #[test]
    fn teleporter_examples() {
        let triv = presets::load("trivial").unwrap();
        assert_eq!(teleporter(&triv, 3, 1, 3).unwrap(), t(&[0, 0, 0]));
        let dual = presets::load("dual").unwrap();
        assert_eq!(teleporter(&dual, 2, 1, 2).unwrap(), t(&[0, 1]).add(&t(&[1, 0])).unwrap());
        let kc2 = presets::load("kc2").unwrap();
        assert_eq!(teleporter(&kc2, 2, 1, 2).unwrap(), t(&[0, 0]).add(&t(&[1, 1])).unwrap());
        assert!(teleporter(&kc2, 2, 1, 1).is_err());
        assert!(teleporter(&kc2, 2, 1, 3).is_err());
    }
}

//! Symmetric-group bookkeeping: permutations in one-line notation,
//! lengths, reduced words, descents and the action on exponent vectors.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Images = SmallVec<[u8; 8]>;

/// A permutation of `{1, ..., n}` stored as `[w(1), ..., w(n)]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Images,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n as u8).collect() }
    }

    /// The simple transposition `s_i` swapping `i` and `i + 1`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
        }
        let mut w = Self::identity(n);
        w.images.swap(i - 1, i);
        Ok(w)
    }

    /// Builds a permutation from 1-based images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("size {n} too large")));
        }
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of 1..={n}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|&v| v as u8).collect() })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    /// `(u ∘ v)(i) = u(v(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_size(self.n(), other.n())?;
        Ok(Permutation { images: other.images.iter().map(|&v| self.images[v as usize - 1]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv: Images = SmallVec::from_elem(0, self.n());
        for (k, &v) in self.images.iter().enumerate() {
            inv[v as usize - 1] = (k + 1) as u8;
        }
        Permutation { images: inv }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// A reduced word `[i_1, ..., i_k]` with `w = s_{i_1} ... s_{i_k}`.
    ///
    /// Built by repeatedly moving the largest misplaced value one step to the
    /// right; the recorded positions, reversed, spell `w`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.images.clone();
        let mut recorded = Vec::with_capacity(self.length());
        loop {
            let misplaced = (1..=w.len()).rev().find(|&v| w[v - 1] as usize != v);
            let Some(value) = misplaced else { break };
            let pos = w.iter().position(|&x| x as usize == value).expect("value present");
            w.swap(pos, pos + 1);
            recorded.push(pos + 1);
        }
        recorded.reverse();
        recorded
    }

    /// True iff `ℓ(s_i w) < ℓ(w)`, i.e. `w⁻¹(i) > w⁻¹(i+1)`.
    pub fn left_descent(&self, i: usize) -> Result<bool> {
        let n = self.n();
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, max: n.saturating_sub(1) });
        }
        Ok(self.has_left_descent(i))
    }

    pub(crate) fn has_left_descent(&self, i: usize) -> bool {
        let pi = self.images.iter().position(|&v| v as usize == i).expect("value present");
        let pj = self.images.iter().position(|&v| v as usize == i + 1).expect("value present");
        pi > pj
    }

    /// `s_i w`: swaps the values `i` and `i + 1`.
    pub(crate) fn left_mul_simple(&self, i: usize) -> Permutation {
        let mut images = self.images.clone();
        for v in images.iter_mut() {
            if *v as usize == i {
                *v = (i + 1) as u8;
            } else if *v as usize == i + 1 {
                *v = i as u8;
            }
        }
        Permutation { images }
    }

    /// Permutes positions: `result[w(i)] = λ[i]`.
    pub fn act_positions<T: Clone>(&self, lambda: &[T]) -> Result<Vec<T>> {
        check_size(self.n(), lambda.len())?;
        let mut out = lambda.to_vec();
        for (k, x) in lambda.iter().enumerate() {
            out[self.images[k] as usize - 1] = x.clone();
        }
        Ok(out)
    }

    /// Extends `w ∈ S_n` to `S_{n+1}` fixing `n + 1`.
    pub fn extend(&self) -> Permutation {
        let mut images = self.images.clone();
        images.push((self.n() + 1) as u8);
        Permutation { images }
    }

    /// The longest element `[n, n-1, ..., 1]`.
    pub fn longest(n: usize) -> Self {
        Permutation { images: (1..=n as u8).rev().collect() }
    }
}

fn check_size(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::SizeMismatch { expected, found });
    }
    Ok(())
}

/// All of `S_n` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation { images: current.iter().copied().collect() });
        // next lexicographic permutation
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| current[k] < current[k + 1]) else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| current[k] < current[l]).expect("successor exists");
        current.swap(k, l);
        current[k + 1..].reverse();
    }
    out
}

/// `n!`
pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    /// Product of simple transpositions, left to right.
    fn word_product(n: usize, word: &[usize]) -> Permutation {
        word.iter().fold(Permutation::identity(n), |acc, &i| acc.compose(&Permutation::simple(n, i).unwrap()).unwrap())
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p(&[2, 1, 3]).compose(&p(&[1, 3, 2])).unwrap(), p(&[2, 3, 1]));
        let w = p(&[3, 1, 2]);
        assert_eq!(w.compose(&Permutation::identity(3)).unwrap(), w);
        assert_eq!(p(&[2, 1]).compose(&p(&[2, 1])).unwrap(), p(&[1, 2]));
        assert!(p(&[2, 1]).compose(&p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(p(&[2, 1, 3]).length(), 1);
        assert_eq!(p(&[3, 2, 1]).length(), 3);
    }

    #[test]
    fn reduced_word_examples() {
        assert!(Permutation::identity(3).reduced_word().is_empty());
        assert_eq!(p(&[2, 1, 3]).reduced_word(), vec![1]);
        assert_eq!(p(&[3, 2, 1]).reduced_word(), vec![1, 2, 1]);
    }

    #[test]
    fn descent_examples() {
        assert!(!Permutation::identity(2).left_descent(1).unwrap());
        assert!(p(&[2, 1]).left_descent(1).unwrap());
        // w⁻¹(2) = 3 > w⁻¹(3) = 1, and s_2 w = [2,1,3] is shorter
        assert!(p(&[3, 1, 2]).left_descent(2).unwrap());
        // a right descent would say otherwise: w s_2 = [3,2,1] is longer
        assert!(!p(&[2, 3, 1]).left_descent(2).unwrap());
        assert!(p(&[3, 1, 2]).left_descent(0).is_err());
        assert!(p(&[3, 1, 2]).left_descent(3).is_err());
    }

    #[test]
    fn act_positions_examples() {
        assert_eq!(p(&[2, 1]).act_positions(&[1, 0]).unwrap(), vec![0, 1]);
        assert_eq!(Permutation::identity(3).act_positions(&[4, -2, 7]).unwrap(), vec![4, -2, 7]);
        assert_eq!(p(&[2, 3, 1]).act_positions(&[5, 0, -1]).unwrap(), vec![-1, 5, 0]);
        assert!(p(&[2, 1]).act_positions(&[1, 2, 3]).is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[1, 3]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        for n in 1..=5 {
            let all = all_permutations(n);
            assert_eq!(all.len(), factorial(n));
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted, all);
        }
    }

    #[test]
    fn exhaustive_invariants_small_n() {
        for n in 1..=4 {
            for w in all_permutations(n) {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(word_product(n, &word), w);
                for i in 1..n {
                    let si = Permutation::simple(n, i).unwrap();
                    let right = w.compose(&si).unwrap().length();
                    assert!(right + 1 == w.length() || right == w.length() + 1);
                    let left = si.compose(&w).unwrap();
                    assert_eq!(left, w.left_mul_simple(i));
                    assert_eq!(w.left_descent(i).unwrap(), left.length() < w.length());
                }
                assert!(w.compose(&w.inverse()).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn serde_uses_one_based_images() {
        let w = p(&[2, 3, 1]);
        assert_eq!(serde_json::to_string(&w).unwrap(), "[2,3,1]");
        let back: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::from_images(&v).unwrap())
        }

        proptest! {
            #[test]
            fn action_is_compatible_with_composition(
                u in arb_perm(5), v in arb_perm(5), lambda in proptest::collection::vec(-4i32..5, 5)
            ) {
                let lhs = u.compose(&v).unwrap().act_positions(&lambda).unwrap();
                let rhs = u.act_positions(&v.act_positions(&lambda).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}

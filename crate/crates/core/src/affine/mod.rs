//! The affine quantum wreath algebra `H_n^aff(A,z)`.
//!
//! Elements are stored in left normal form `Σ c · a X^λ T_w`. Products are
//! computed by letting the left factor act on the right factor through the
//! faithful polynomial representation: `T_i` acts on `f ⊗ T_w` by
//!
//! ```text
//! T_i (f ⊗ T_w) = s_i(f) ⊗ T_{s_i w} + z t_{i,i+1} D_i(f) ⊗ T_w
//! ```
//!
//! with `D_i = Δ_i` when `ℓ(s_i w) > ℓ(w)` and the twisted operator
//! `X_{i+1}^{-1} Δ_i X_{i+1}` otherwise.

mod center;
mod jm;
mod relations;
mod right_form;
mod symmetry;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

pub use center::{is_central, make_central};
pub use jm::{eval_jm, jucys_murphy, jucys_murphy_inverse, is_finite_part, JmCache};
pub use relations::{check_defining_relations, RelationEntry, Status};
pub use right_form::{from_right_normal_form, to_right_normal_form, right_form_text, RightTerm};
pub use symmetry::Symmetry;

use crate::error::{Error, Result};
use crate::laurent::{demazure_exps, Exps, LaurentElement, Monomial};
use crate::lincomb::LinComb;
use crate::perm::Permutation;
use crate::scalar::Scalar;
use crate::superalgebra::SuperAlgebra;
use crate::tensor::{mul_pure, slots_parity, swap_pure, teleporter, Slots, TensorElement};

/// Shared data for one algebra `H_n^aff(A,z)`: the superalgebra, `n`, `z`
/// and the teleporters `t_{i,i+1}`.
#[derive(Debug)]
pub struct AffineContext {
    alg: Arc<SuperAlgebra>,
    n: usize,
    z: Scalar,
    tele: Vec<TensorElement>,
}

impl AffineContext {
    pub fn new(alg: Arc<SuperAlgebra>, n: usize, z: Scalar) -> Result<Arc<Self>> {
        if n == 0 || n > 32 {
            return Err(Error::IndexOutOfRange { index: n, max: 32 });
        }
        let tele = (1..n).map(|i| teleporter(&alg, n, i, i + 1)).collect::<Result<_>>()?;
        Ok(Arc::new(AffineContext { alg, n, z, tele }))
    }

    pub fn algebra(&self) -> &Arc<SuperAlgebra> {
        &self.alg
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z(&self) -> &Scalar {
        &self.z
    }

    /// `t_{i,i+1}` for `1 ≤ i < n`.
    pub fn teleporter(&self, i: usize) -> Result<&TensorElement> {
        self.check_simple(i)?;
        Ok(&self.tele[i - 1])
    }

    fn check_simple(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n - 1 });
        }
        Ok(())
    }

    fn check_slot(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n });
        }
        Ok(())
    }

    pub fn same(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || (self.n == other.n && self.z == other.z && self.alg == other.alg)
    }
}

/// A basis element `a X^λ T_w` of the left normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub w: Permutation,
    pub x: Exps,
    pub a: Slots,
}

/// An element of `H_n^aff(A,z)` in left normal form.
#[derive(Clone)]
pub struct AffineElement {
    ctx: Arc<AffineContext>,
    terms: LinComb<Term>,
}

impl PartialEq for AffineElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for AffineElement {}

impl fmt::Debug for AffineElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl AffineElement {
    pub fn zero(ctx: &Arc<AffineContext>) -> Self {
        AffineElement { ctx: ctx.clone(), terms: LinComb::new() }
    }

    pub fn one(ctx: &Arc<AffineContext>) -> Self {
        Self::from_tensor(ctx, &TensorElement::unit(&ctx.alg, ctx.n)).expect("unit has length n")
    }

    pub fn from_terms(ctx: &Arc<AffineContext>, terms: LinComb<Term>) -> Result<Self> {
        let n = ctx.n;
        for t in terms.keys() {
            if t.w.n() != n || t.x.len() != n || t.a.len() != n {
                return Err(Error::SizeMismatch { expected: n, found: t.a.len() });
            }
            if let Some(&k) = t.a.iter().find(|&&k| k as usize >= ctx.alg.dim()) {
                return Err(Error::IndexOutOfRange { index: k as usize, max: ctx.alg.dim() - 1 });
            }
        }
        Ok(AffineElement { ctx: ctx.clone(), terms })
    }

    pub(crate) fn from_terms_unchecked(ctx: &Arc<AffineContext>, terms: LinComb<Term>) -> Self {
        AffineElement { ctx: ctx.clone(), terms }
    }

    pub fn from_laurent(ctx: &Arc<AffineContext>, f: &LaurentElement) -> Result<Self> {
        if f.n() != ctx.n {
            return Err(Error::SizeMismatch { expected: ctx.n, found: f.n() });
        }
        let id = Permutation::identity(ctx.n);
        let terms = f.terms().map_keys(|m| Term { w: id.clone(), x: m.x.clone(), a: m.a.clone() });
        Self::from_terms(ctx, terms)
    }

    pub fn from_tensor(ctx: &Arc<AffineContext>, t: &TensorElement) -> Result<Self> {
        Self::from_laurent(ctx, &LaurentElement::from_tensor(t))
    }

    /// Basis element `b` of `A` placed in slot `slot` (1-based).
    pub fn a_in_slot(ctx: &Arc<AffineContext>, b: usize, slot: usize) -> Result<Self> {
        if b >= ctx.alg.dim() {
            return Err(Error::IndexOutOfRange { index: b, max: ctx.alg.dim() - 1 });
        }
        let t = TensorElement::embed(&ctx.alg, ctx.n, slot, &vec![(b, Scalar::one())])?;
        Self::from_tensor(ctx, &t)
    }

    /// `T_i`.
    pub fn t(ctx: &Arc<AffineContext>, i: usize) -> Result<Self> {
        ctx.check_simple(i)?;
        Ok(Self::t_w(ctx, &Permutation::simple(ctx.n, i)?))
    }

    /// `T_i^{-1} = T_i − z t_{i,i+1}`.
    pub fn t_inv(ctx: &Arc<AffineContext>, i: usize) -> Result<Self> {
        let t = Self::t(ctx, i)?;
        let tele = Self::from_tensor(ctx, ctx.teleporter(i)?)?;
        Ok(&t - &tele.scaled(&ctx.z))
    }

    /// `X_i^k`.
    pub fn x(ctx: &Arc<AffineContext>, i: usize, k: i32) -> Result<Self> {
        ctx.check_slot(i)?;
        Self::from_laurent(ctx, &LaurentElement::x_power(&ctx.alg, ctx.n, i, k)?)
    }

    /// `T_w`; equal to the product of `T_i` along any reduced word.
    pub fn t_w(ctx: &Arc<AffineContext>, w: &Permutation) -> Self {
        let unit = TensorElement::unit(&ctx.alg, ctx.n);
        let terms = unit
            .terms()
            .map_keys(|a| Term { w: w.clone(), x: SmallVec::from_elem(0, ctx.n), a: a.clone() });
        AffineElement { ctx: ctx.clone(), terms }
    }

    pub fn context(&self) -> &Arc<AffineContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &LinComb<Term> {
        &self.terms
    }

    pub fn into_terms(self) -> LinComb<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        AffineElement { ctx: self.ctx.clone(), terms: self.terms.scaled(c) }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if !self.ctx.same(&other.ctx) {
            return Err(Error::IncompatibleContext(format!(
                "n = {} / {}, z = {} / {}",
                self.ctx.n, other.ctx.n, self.ctx.z, other.ctx.z
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(AffineElement { ctx: self.ctx.clone(), terms })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let mut terms = self.terms.clone();
        terms.sub_assign(&other.terms);
        Ok(AffineElement { ctx: self.ctx.clone(), terms })
    }

    /// The product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let ctx = &self.ctx;
        let mut by_w: BTreeMap<&Permutation, Vec<(&Term, &Scalar)>> = BTreeMap::new();
        for (t, c) in &self.terms {
            by_w.entry(&t.w).or_default().push((t, c));
        }
        let mut out = LinComb::new();
        for (w, factors) in by_w {
            let tw_y = apply_t_w(ctx, w, &other.terms);
            for (t, c) in factors {
                let scaled = left_mul_monomial(ctx, &t.a, &t.x, &tw_y);
                out.add_scaled(&scaled, c);
            }
        }
        Ok(AffineElement { ctx: ctx.clone(), terms: out })
    }

    /// `self^k` for `k ≥ 0`.
    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Left multiplication by `T_i`.
    pub fn left_mul_t(&self, i: usize) -> Result<Self> {
        self.ctx.check_simple(i)?;
        Ok(AffineElement { ctx: self.ctx.clone(), terms: apply_t(&self.ctx, i, &self.terms) })
    }

    /// The parts of even and odd total parity.
    pub fn parity_parts(&self) -> [Self; 2] {
        let alg = &self.ctx.alg;
        let part = |p: u8| AffineElement {
            ctx: self.ctx.clone(),
            terms: self.terms.filter(|t| slots_parity(alg, &t.a) == p),
        };
        [part(0), part(1)]
    }

    /// Parity if homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<u8> {
        let [even, odd] = self.parity_parts();
        match (even.is_zero(), odd.is_zero()) {
            (_, true) => Some(0),
            (true, false) => Some(1),
            _ => None,
        }
    }

    /// Minimum exponent over all terms.
    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().flat_map(|t| t.x.iter().copied()).min()
    }

    /// The `T_w`-free part, as a Laurent element, if every term has `w = 1`.
    pub fn as_laurent(&self) -> Option<LaurentElement> {
        if self.terms.keys().any(|t| !t.w.is_identity()) {
            return None;
        }
        let terms = self.terms.map_keys(|t| Monomial { a: t.a.clone(), x: t.x.clone() });
        Some(LaurentElement::from_terms_unchecked(self.ctx.n, terms))
    }

    /// Terms sorted by `w` (one-line lex), then `λ` (position `n` most
    /// significant), then the tensor indices.
    pub fn sorted_terms(&self) -> Vec<(&Term, &Scalar)> {
        let mut v: Vec<(&Term, &Scalar)> = self.terms.iter().collect();
        v.sort_by(|(s, _), (t, _)| display_order(s, t));
        v
    }

    /// Human-readable rendering, e.g. `X_2 T_1 - z ...`.
    pub fn to_text(&self) -> String {
        render(&self.ctx.alg, self.sorted_terms().into_iter().map(|(t, c)| (c, &t.a, &t.x, &t.w, false)))
    }
}

pub(crate) fn display_order(s: &Term, t: &Term) -> std::cmp::Ordering {
    s.w.cmp(&t.w)
        .then_with(|| s.x.iter().rev().cmp(t.x.iter().rev()))
        .then_with(|| s.a.cmp(&t.a))
}

/// Renders terms `c · a X^λ T_w` (or `c · T_w a X^λ` when `right` is set).
pub(crate) fn render<'a>(
    alg: &SuperAlgebra,
    terms: impl Iterator<Item = (&'a Scalar, &'a Slots, &'a Exps, &'a Permutation, bool)>,
) -> String {
    let unit = alg.unit_index();
    let mut out = String::new();
    for (c, a, x, w, right) in terms {
        let mut factors: Vec<String> = Vec::new();
        let a_part: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &k)| Some(k as usize) != unit)
            .map(|(slot, &k)| format!("{}_{}", alg.names()[k as usize], slot + 1))
            .collect();
        let a_full = if unit.is_none() {
            vec![format!("[{}]", a.iter().map(|&k| alg.names()[k as usize].clone()).collect::<Vec<_>>().join("⊗"))]
        } else {
            a_part
        };
        let x_part: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { format!("X_{}", i + 1) } else { format!("X_{}^{}", i + 1, e) })
            .collect();
        let t_part: Vec<String> = if w.is_identity() {
            Vec::new()
        } else {
            vec![w.reduced_word().iter().map(|i| format!("T_{i}")).collect::<Vec<_>>().join(" ")]
        };
        if right {
            factors.extend(t_part);
            factors.extend(a_full);
            factors.extend(x_part);
        } else {
            factors.extend(a_full);
            factors.extend(x_part);
            factors.extend(t_part);
        }
        let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        let body = match (factors.is_empty(), mag.is_one()) {
            (true, _) => mag.to_string(),
            (false, true) => factors.join(" "),
            (false, false) => format!("{} {}", mag, factors.join(" ")),
        };
        if out.is_empty() {
            out = if neg { format!("-{body}") } else { body };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// `T_i` acting on `Σ c · a X^λ ⊗ T_w`.
pub(crate) fn apply_t(ctx: &AffineContext, i: usize, terms: &LinComb<Term>) -> LinComb<Term> {
    let alg = &ctx.alg;
    let tele = &ctx.tele[i - 1];
    let mut out = LinComb::new();
    for (t, c) in terms {
        let (a, odd) = swap_pure(alg, i, &t.a);
        let mut x = t.x.clone();
        x.swap(i - 1, i);
        out.add_term(Term { w: t.w.left_mul_simple(i), x, a }, if odd { -c } else { c.clone() });

        if ctx.z.is_zero() {
            continue;
        }
        let demazure = if t.w.has_left_descent(i) {
            let mut up = t.x.clone();
            up[i] += 1;
            demazure_exps(i, &up)
                .into_iter()
                .map(|(mut y, neg)| {
                    y[i] -= 1;
                    (y, neg)
                })
                .collect()
        } else {
            demazure_exps(i, &t.x)
        };
        if demazure.is_empty() {
            continue;
        }
        let zc = &ctx.z * c;
        for (ta, tc) in tele.terms() {
            for (a, e) in mul_pure(alg, ta, &t.a) {
                let coeff = &(&zc * tc) * &e;
                for (y, neg) in &demazure {
                    let k = Term { w: t.w.clone(), x: y.clone(), a: a.clone() };
                    out.add_term(k, if *neg { -&coeff } else { coeff.clone() });
                }
            }
        }
    }
    out
}

/// `T_w` acting on the left, along a reduced word applied right to left.
pub(crate) fn apply_t_w(ctx: &AffineContext, w: &Permutation, terms: &LinComb<Term>) -> LinComb<Term> {
    let mut acc = terms.clone();
    for &i in w.reduced_word().iter().rev() {
        acc = apply_t(ctx, i, &acc);
    }
    acc
}

/// Left multiplication by the monomial `b X^μ`.
pub(crate) fn left_mul_monomial(ctx: &AffineContext, b: &[u8], mu: &[i32], terms: &LinComb<Term>) -> LinComb<Term> {
    let mut out = LinComb::new();
    for (t, c) in terms {
        let x: Exps = t.x.iter().zip(mu).map(|(p, q)| p + q).collect();
        for (a, e) in mul_pure(&ctx.alg, b, &t.a) {
            out.add_term(Term { w: t.w.clone(), x: x.clone(), a }, c * &e);
        }
    }
    out
}

impl Add for &AffineElement {
    type Output = AffineElement;
    fn add(self, rhs: &AffineElement) -> AffineElement {
        self.try_add(rhs).expect("elements of the same algebra")
    }
}

impl Sub for &AffineElement {
    type Output = AffineElement;
    fn sub(self, rhs: &AffineElement) -> AffineElement {
        self.try_sub(rhs).expect("elements of the same algebra")
    }
}

impl Mul for &AffineElement {
    type Output = AffineElement;
    fn mul(self, rhs: &AffineElement) -> AffineElement {
        AffineElement::mul(self, rhs).expect("elements of the same algebra")
    }
}

impl Neg for &AffineElement {
    type Output = AffineElement;
    fn neg(self) -> AffineElement {
        self.scaled(&-Scalar::one())
    }
}

//! Verification suites shared by the command line and the test targets.
//! Each check produces one [`SuiteEntry`]; reports are sorted and contain no
//! timing data, so equal inputs give byte-identical output.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::affine::{
    check_defining_relations, eval_jm, from_right_normal_form, is_central, jucys_murphy, make_central,
    to_right_normal_form, AffineContext, AffineElement, Status,
};
use crate::cyclotomic::{gram, level_one_check, mackey_dims, CycloContext, CyclotomicPoly, Tower};
use crate::error::Result;
use crate::laurent::{ActMode, LaurentElement};
use crate::lincomb::LinComb;
use crate::par::Execution;
use crate::perm::all_permutations;
use crate::random::{Sampler, Shape};
use crate::scalar::Scalar;
use crate::superalgebra::SuperAlgebra;
use crate::tensor::TensorElement;

/// Outcome of one property.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SuiteEntry {
    pub suite: String,
    pub check: String,
    pub status: Status,
    pub detail: String,
}

impl SuiteEntry {
    pub fn new(suite: &str, check: &str, ok: bool, detail: impl Into<String>) -> Self {
        SuiteEntry {
            suite: suite.into(),
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Which suites to run and on what.
#[derive(Clone)]
pub struct SuiteConfig {
    pub alg: Arc<SuperAlgebra>,
    pub n: usize,
    pub z: Scalar,
    pub f: Option<CyclotomicPoly>,
    pub seed: u64,
    pub samples: usize,
    pub exec: Execution,
}

/// Sorted entries plus free-form notes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub notes: Vec<String>,
    pub entries: Vec<SuiteEntry>,
}

/// Pair budget for the basis checks inside [`run_suite`].
pub const BASIS_PAIRS: usize = 4096;

/// Runs every suite that applies to `cfg`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let ctx = AffineContext::new(cfg.alg.clone(), cfg.n, cfg.z.clone())?;
    let mut entries = relations_suite(&ctx, cfg.exec)?;
    let mut notes = Vec::new();
    entries.extend(demazure_suite(&cfg.alg, cfg.n, cfg.samples, cfg.seed)?);
    entries.extend(basis_suite(&ctx, 1, BASIS_PAIRS, cfg.seed, cfg.exec)?);
    entries.extend(center_suite(&ctx, cfg.samples.min(20), cfg.seed)?);
    entries.extend(jm_suite(&ctx, cfg.samples, cfg.seed)?);
    if cfg.z.is_zero() {
        notes.push("z = 0: H_n(A,0) degenerates to the wreath product A^{⊗n} ⋊ S_n".into());
        entries.extend(degeneration_suite(&ctx)?);
    }
    if let Some(f) = &cfg.f {
        let cyc = CycloContext::new(&ctx, f.clone())?;
        entries.extend(cyclotomic_suite(&cyc, cfg.samples, cfg.seed, cfg.exec)?);
        if f.d() == 1 {
            let r = level_one_check(&cfg.alg, cfg.n, cfg.z.clone(), f.coeff(0), cfg.samples, cfg.seed)?;
            entries.push(SuiteEntry::new(
                "level-one",
                "isomorphism",
                r.passed(),
                format!(
                    "dim {} of {}, {} generator mismatches, {}/{} samples failed",
                    r.dimension,
                    r.expected_dimension,
                    r.jm_mismatches.len(),
                    r.sample_failures,
                    r.samples
                ),
            ));
        }
    }
    entries.sort();
    Ok(SuiteReport { passed: entries.iter().all(SuiteEntry::passed), notes, entries })
}

/// One entry per relation family.
pub fn relations_suite(ctx: &Arc<AffineContext>, exec: Execution) -> Result<Vec<SuiteEntry>> {
    let mut by_name: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    for e in check_defining_relations(ctx, exec)? {
        let slot = by_name.entry(e.relation).or_default();
        slot.0 += 1;
        if e.status == Status::Fail {
            slot.1 += 1;
        }
    }
    Ok(by_name
        .into_iter()
        .map(|(name, (total, bad))| {
            SuiteEntry::new("relations", &name, bad == 0, format!("{total} instances, {bad} mismatches"))
        })
        .collect())
}

fn tally(suite: &str, check: &str, total: usize, bad: usize) -> SuiteEntry {
    SuiteEntry::new(suite, check, bad == 0, format!("{total} instances, {bad} failures"))
}

/// Demazure operator identities on seeded random Laurent elements.
pub fn demazure_suite(alg: &SuperAlgebra, n: usize, samples: usize, seed: u64) -> Result<Vec<SuiteEntry>> {
    let mut s = Sampler::new(seed);
    let shape = Shape::default();
    let names = ["leibniz", "twist-antisymmetry", "twist-shift", "twist-diagonal", "idempotent", "far-commute", "braid", "polynomial-stability"];
    let mut counts: BTreeMap<&str, (usize, usize)> = names.iter().map(|k| (*k, (0, 0))).collect();
    let mut record = |k: &'static str, ok: bool| {
        let c = counts.get_mut(k).expect("known check");
        c.0 += 1;
        if !ok {
            c.1 += 1;
        }
    };
    let neg = -Scalar::one();
    for _ in 0..samples {
        let f = s.laurent(alg, n, shape);
        let g = s.laurent(alg, n, shape);
        let p = s.laurent(alg, n, Shape { nonnegative: true, ..shape });
        for i in 1..n {
            let mut mu = vec![0; n];
            mu[i - 1] = 1;
            mu[i] = -1;
            let df = f.demazure(i)?;
            let sf = f.act_simple(alg, i, ActMode::XOnly)?;
            let lhs = f.mul(alg, &g)?.demazure(i)?;
            let rhs = df.mul(alg, &g)?.add(&sf.mul(alg, &g.demazure(i)?)?)?;
            record("leibniz", lhs == rhs);
            record("twist-antisymmetry", sf.demazure(i)? == df.scaled(&neg));
            record("twist-shift", df.act_simple(alg, i, ActMode::XOnly)? == df.shifted(&mu));
            let diag = f.act_simple(alg, i, ActMode::Diagonal)?;
            let lhs = df.act_simple(alg, i, ActMode::Diagonal)?;
            record("twist-diagonal", lhs == diag.demazure(i)?.shifted(&mu).scaled(&neg));
            record("idempotent", df.demazure(i)? == df);
            for j in i + 2..n {
                record("far-commute", df.demazure(j)? == f.demazure(j)?.demazure(i)?);
            }
            if i + 1 < n {
                let a = df.demazure(i + 1)?.demazure(i)?;
                let b = f.demazure(i + 1)?.demazure(i)?.demazure(i + 1)?;
                record("braid", a == b);
            }
            let stable = [p.demazure(i)?, p.twisted_demazure(i)?].iter().all(|q| q.min_exponent().unwrap_or(0) >= 0);
            record("polynomial-stability", stable);
        }
    }
    Ok(counts.into_iter().map(|(k, (total, bad))| tally("demazure", k, total, bad)).collect())
}

/// All basis elements `a X^λ T_w` with `|λ_i| ≤ bound`.
pub fn bounded_basis(ctx: &Arc<AffineContext>, bound: i32) -> Vec<AffineElement> {
    let n = ctx.n();
    let m = ctx.algebra().dim();
    let mut lambdas: Vec<Vec<i32>> = vec![vec![]];
    let mut slots: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..n {
        lambdas = lambdas.into_iter().flat_map(|l| (-bound..=bound).map(move |e| [l.clone(), vec![e]].concat())).collect();
        slots = slots.into_iter().flat_map(|s| (0..m as u8).map(move |k| [s.clone(), vec![k]].concat())).collect();
    }
    let mut out = Vec::new();
    for w in all_permutations(n) {
        for l in &lambdas {
            for a in &slots {
                let t = crate::affine::Term { w: w.clone(), x: l.iter().copied().collect(), a: a.iter().copied().collect() };
                out.push(AffineElement::from_terms(ctx, LinComb::single(t, Scalar::one())).expect("valid term"));
            }
        }
    }
    out
}

/// `a X^λ T_w` rebuilt as a product of generators.
fn as_word(x: &AffineElement) -> Result<AffineElement> {
    let ctx = x.context();
    let mut out = AffineElement::zero(ctx);
    for (t, c) in x.terms() {
        let factors: Vec<_> = t.a.iter().map(|&k| vec![(k as usize, Scalar::one())]).collect();
        let mut acc = AffineElement::from_tensor(ctx, &TensorElement::pure(&factors))?;
        for (i, &e) in t.x.iter().enumerate() {
            acc = acc.mul(&AffineElement::x(ctx, i + 1, e)?)?;
        }
        for i in t.w.reduced_word() {
            acc = acc.mul(&AffineElement::t(ctx, i)?)?;
        }
        out = out.try_add(&acc.scaled(c))?;
    }
    Ok(out)
}

/// Products of bounded basis pairs: grouped two ways, and through the right
/// normal form.
pub fn basis_suite(
    ctx: &Arc<AffineContext>,
    bound: i32,
    max_pairs: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<SuiteEntry>> {
    let basis = bounded_basis(ctx, bound);
    let words: Vec<AffineElement> = basis.iter().map(as_word).collect::<Result<_>>()?;
    let words_ok = basis.iter().zip(&words).filter(|(b, w)| b != w).count();
    let len = basis.len();
    // every ordered pair when that fits the budget, otherwise a seeded sample
    let pairs: Vec<(usize, usize)> = if len.saturating_mul(len) <= max_pairs {
        (0..len).flat_map(|a| (0..len).map(move |b| (a, b))).collect()
    } else {
        let mut rng = Sampler::new(seed);
        (0..max_pairs).map(|_| (rng.index(len), rng.index(len))).collect()
    };
    let results = exec.map(&pairs, |&(a, b)| -> Result<(bool, bool)> {
        let p = basis[a].mul(&basis[b])?;
        // the word for basis[a] absorbs basis[b] one generator at a time
        let mut q = basis[b].clone();
        let t = basis[a].terms().keys().next().expect("single term");
        for i in t.w.reduced_word().into_iter().rev() {
            q = AffineElement::t(ctx, i)?.mul(&q)?;
        }
        for (i, &e) in t.x.iter().enumerate().rev() {
            q = AffineElement::x(ctx, i + 1, e)?.mul(&q)?;
        }
        let factors: Vec<_> = t.a.iter().map(|&k| vec![(k as usize, Scalar::one())]).collect();
        q = AffineElement::from_tensor(ctx, &TensorElement::pure(&factors))?.mul(&q)?;
        let back = from_right_normal_form(ctx, &to_right_normal_form(&p)?)?;
        Ok((p == q, back == p))
    });
    let (mut assoc_bad, mut right_bad) = (0, 0);
    for r in results {
        let (a, b) = r?;
        assoc_bad += usize::from(!a);
        right_bad += usize::from(!b);
    }
    Ok(vec![
        tally("basis", "generator-words", basis.len(), words_ok),
        tally("basis", "unique-expansion", pairs.len(), assoc_bad),
        tally("basis", "right-form-round-trip", pairs.len(), right_bad),
    ])
}

/// A random element of `Z(A)^{⊗n} ⊗ P_n`.
pub fn central_sample(s: &mut Sampler, alg: &SuperAlgebra, n: usize) -> Result<LaurentElement> {
    let (zb, _) = alg.center_basis();
    let mut out = LaurentElement::zero(n);
    for _ in 0..1 + s.index(3) {
        let factors: Vec<_> = (0..n).map(|_| alg.to_sparse(&zb[s.index(zb.len())])).collect();
        let lambda: Vec<i32> = s.exps(n, Shape { max_exp: 2, ..Shape::default() }).to_vec();
        let term = LaurentElement::from_tensor(&TensorElement::pure(&factors)).shifted(&lambda).scaled(&s.scalar());
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Symmetrized samples are central; non-invariant raw samples are not.
pub fn center_suite(ctx: &Arc<AffineContext>, samples: usize, seed: u64) -> Result<Vec<SuiteEntry>> {
    let alg = ctx.algebra();
    let n = ctx.n();
    let mut s = Sampler::new(seed);
    let (mut sym_bad, mut raw_total, mut raw_bad) = (0, 0, 0);
    for _ in 0..samples {
        let g = central_sample(&mut s, alg, n)?;
        if !is_central(&make_central(ctx, &g)?)? {
            sym_bad += 1;
        }
        let invariant = (1..n).all(|i| g.act_simple(alg, i, ActMode::Diagonal).map(|h| h == g).unwrap_or(false));
        if !invariant {
            raw_total += 1;
            if is_central(&AffineElement::from_laurent(ctx, &g)?)? {
                raw_bad += 1;
            }
        }
    }
    Ok(vec![
        tally("center", "symmetrized-central", samples, sym_bad),
        tally("center", "non-invariant-not-central", raw_total, raw_bad),
    ])
}

/// Jucys–Murphy elements commute and `eval_jm` is multiplicative.
pub fn jm_suite(ctx: &Arc<AffineContext>, samples: usize, seed: u64) -> Result<Vec<SuiteEntry>> {
    let n = ctx.n();
    let js: Vec<AffineElement> = (1..=n).map(|i| jucys_murphy(ctx, i)).collect::<Result<_>>()?;
    let (mut total, mut bad) = (0, 0);
    for a in 0..n {
        for b in a + 1..n {
            total += 1;
            bad += usize::from(js[a].mul(&js[b])? != js[b].mul(&js[a])?);
        }
    }
    let mut s = Sampler::new(seed);
    let shape = Shape { max_terms: 3, max_exp: 2, nonnegative: false };
    let mut mul_bad = 0;
    for _ in 0..samples {
        let x = s.affine(ctx, shape);
        let y = s.affine(ctx, shape);
        mul_bad += usize::from(eval_jm(&x.mul(&y)?)? != eval_jm(&x)?.mul(&eval_jm(&y)?)?);
    }
    Ok(vec![tally("jucys-murphy", "commute", total, bad), tally("jucys-murphy", "eval-multiplicative", samples, mul_bad)])
}

/// At `z = 0`: `T_i² = 1` and `T_i a = s_i(a) T_i`.
pub fn degeneration_suite(ctx: &Arc<AffineContext>) -> Result<Vec<SuiteEntry>> {
    let one = AffineElement::one(ctx);
    let mut bad = 0;
    for i in 1..ctx.n() {
        let t = AffineElement::t(ctx, i)?;
        bad += usize::from(t.mul(&t)? != one);
    }
    Ok(vec![tally("degeneration", "involutions", ctx.n() - 1, bad)])
}

/// Basis, ideal, trace form, tower and Mackey checks for `H_n^f(A,z)`.
pub fn cyclotomic_suite(ctx: &Arc<CycloContext>, samples: usize, seed: u64, exec: Execution) -> Result<Vec<SuiteEntry>> {
    let mut out = cyclotomic_basis_suite(ctx, samples, seed)?;
    out.extend(trace_suite(ctx, exec));
    let tower = Tower::new(ctx, exec)?;
    out.push(tower_suite(&tower, exec)?);
    out.extend(mackey_suite(&tower, true, exec)?);
    Ok(out)
}

/// Basis enumeration, ideal vanishing and compatibility of reduction with products.
pub fn cyclotomic_basis_suite(ctx: &Arc<CycloContext>, samples: usize, seed: u64) -> Result<Vec<SuiteEntry>> {
    let aff = ctx.affine();
    let mut out = Vec::new();
    let basis = ctx.basis();
    let expected = ctx.dimension();
    let mut fixed_bad = 0;
    for t in &basis {
        let x = AffineElement::from_terms(aff, LinComb::single(t.clone(), Scalar::one()))?;
        fixed_bad += usize::from(ctx.reduce(&x)?.lift() != x);
    }
    out.push(SuiteEntry::new(
        "cyclotomic",
        "dimension",
        basis.len() == expected && fixed_bad == 0,
        format!("{} basis elements, expected {expected}, {fixed_bad} not fixed by reduction", basis.len()),
    ));

    let mut s = Sampler::new(seed);
    let pos = Shape { max_terms: 3, max_exp: 2, nonnegative: true };
    let f1 = ctx.poly().f1(aff)?;
    let (mut ideal_bad, mut assoc_bad) = (0, 0);
    for _ in 0..samples {
        let g = s.affine(aff, pos);
        let h = s.affine(aff, pos);
        ideal_bad += usize::from(!ctx.reduce(&g.mul(&f1)?.mul(&h)?)?.is_zero());
        let k = s.affine(aff, pos);
        let (rg, rh, rk) = (ctx.reduce(&g)?, ctx.reduce(&h)?, ctx.reduce(&k)?);
        let whole = ctx.reduce(&g.mul(&h)?.mul(&k)?)?;
        assoc_bad += usize::from(rg.mul(&rh)?.mul(&rk)? != whole || rg.mul(&rh.mul(&rk)?)? != whole);
    }
    out.push(tally("cyclotomic", "ideal-vanishes", samples, ideal_bad));
    out.push(tally("cyclotomic", "reduction-multiplicative", samples, assoc_bad));
    Ok(out)
}

/// Supersymmetry and nondegeneracy of `tr_f`.
pub fn trace_suite(ctx: &Arc<CycloContext>, exec: Execution) -> Vec<SuiteEntry> {
    match gram(ctx, exec) {
        Ok(g) => vec![
            SuiteEntry::new("trace", "supersymmetric", g.is_supersymmetric(), format!("{}x{} Gram matrix", g.matrix.len(), g.matrix.len())),
            SuiteEntry::new("trace", "nondegenerate", true, "Gram matrix inverted exactly"),
        ],
        Err(e) => vec![SuiteEntry::new("trace", "nondegenerate", false, e.to_string())],
    }
}

/// `tr_f^{n+1} = tr_f^n ∘ partial_trace` on the upper basis.
pub fn tower_suite(tower: &Tower, exec: Execution) -> Result<SuiteEntry> {
    let bad = tower.trace_mismatches(exec)?;
    Ok(tally("tower", "partial-trace", tower.upper().basis().len(), bad.len()))
}

/// The dimension identity from enumerated bases and, optionally, the ranks
/// of both bimodule summands.
pub fn mackey_suite(tower: &Tower, ranks: bool, exec: Execution) -> Result<Vec<SuiteEntry>> {
    let lower = tower.lower();
    let dims = mackey_dims(lower.d(), lower.algebra().dim(), lower.n())?;
    let counted = [lower_dimension(lower)?, lower.basis().len() as u128, tower.upper().basis().len() as u128];
    let mut out = vec![SuiteEntry::new(
        "mackey",
        "dimensions",
        dims.holds && counted == dims.dims,
        format!("dims {:?}, counted {:?}, {} + {} = {}", dims.dims, counted, dims.x_summand, dims.t_summand, dims.dims[2]),
    )];
    if ranks {
        let r = tower.mackey_ranks(exec)?;
        let ok = r.x_summand as u128 == dims.x_summand
            && r.t_summand as u128 == dims.t_summand
            && r.total as u128 == dims.dims[2];
        out.push(SuiteEntry::new(
            "mackey",
            "summand-ranks",
            ok,
            format!("ranks {} + {} with span {}", r.x_summand, r.t_summand, r.total),
        ));
    }
    Ok(out)
}

/// Size of the enumerated basis at rank `n - 1`; rank zero is the ground field.
fn lower_dimension(ctx: &Arc<CycloContext>) -> Result<u128> {
    if ctx.n() == 1 {
        return Ok(1);
    }
    let aff = AffineContext::new(ctx.algebra().clone(), ctx.n() - 1, ctx.affine().z().clone())?;
    Ok(CycloContext::new(&aff, ctx.poly().clone())?.basis().len() as u128)
}

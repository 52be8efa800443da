//! Subcommand implementations. Each returns `Ok(passed)` or an input error.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use qawa::affine::to_right_normal_form;
use qawa::cyclotomic::{gram, mackey_dims, CyclotomicSpec, MackeyDims, MackeyRanks};
use qawa::perm::Permutation;
use qawa::serial::{affine_to_json, cyclotomic_to_json, right_form_to_json, RightTermJson, TermJson};
use qawa::suite::{run_suite, SuiteConfig};
use qawa::superalgebra::presets;
use qawa::{
    AffineContext, CycloContext, CyclotomicPoly, Execution, Expr, Scalar, SuperAlgebra, SuperAlgebraSpec, Tower,
};

use crate::{AlgebraArgs, Command, ContextArgs, OutArgs};

pub fn run(command: Command) -> Result<bool> {
    match command {
        Command::Presets(out) => presets_cmd(&out),
        Command::ValidateSpec { alg, f, out } => validate(&alg, f.as_deref(), &out),
        Command::Eval { ctx, right_form, expr, out } => eval(&ctx, right_form, &expr, &out),
        Command::Suite { ctx, seed, samples, sequential, out } => suite(&ctx, seed, samples, sequential, &out),
        Command::Gram { ctx, out } => gram_cmd(&ctx, &out),
        Command::MackeyDims { ctx, ranks, out } => mackey(&ctx, ranks, &out),
    }
}

fn emit<T: Serialize>(out: &OutArgs, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn algebra_spec(args: &AlgebraArgs) -> Result<SuperAlgebraSpec> {
    match (&args.preset, &args.spec) {
        (Some(name), _) => Ok(presets::spec(name)?),
        (None, Some(path)) => {
            serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
        }
        (None, None) => bail!("one of --preset or --spec is required"),
    }
}

fn algebra(args: &AlgebraArgs) -> Result<Arc<SuperAlgebra>> {
    Ok(Arc::new(SuperAlgebra::load(&algebra_spec(args)?)?))
}

/// `--f` is inline JSON when it starts with `{`, otherwise a path.
fn f_spec(text: &str) -> Result<CyclotomicSpec> {
    let json = if text.trim_start().starts_with('{') { text.to_string() } else { read(Path::new(text))? };
    serde_json::from_str(&json).context("parsing f")
}

struct Loaded {
    alg: Arc<SuperAlgebra>,
    aff: Arc<AffineContext>,
    f: Option<CyclotomicPoly>,
}

fn load(args: &ContextArgs) -> Result<Loaded> {
    let alg = algebra(&args.alg)?;
    let aff = AffineContext::new(alg.clone(), args.n as usize, args.z.clone())?;
    let f = match &args.f {
        Some(text) => Some(CyclotomicPoly::load(&alg, &f_spec(text)?)?),
        None => None,
    };
    Ok(Loaded { alg, aff, f })
}

fn require_f(l: &Loaded) -> Result<Arc<CycloContext>> {
    let Some(f) = &l.f else { bail!("this command needs --f") };
    Ok(CycloContext::new(&l.aff, f.clone())?)
}

#[derive(Serialize)]
struct PresetInfo {
    name: &'static str,
    dim: usize,
    names: Vec<String>,
    parity: Vec<u8>,
    center_dim: usize,
}

fn presets_cmd(out: &OutArgs) -> Result<bool> {
    let mut list = Vec::new();
    for name in presets::NAMES {
        let alg = presets::load(name)?;
        list.push(PresetInfo {
            name,
            dim: alg.dim(),
            names: alg.names().to_vec(),
            parity: alg.parities().to_vec(),
            center_dim: alg.center_basis().0.len(),
        });
    }
    emit(out, &list)?;
    Ok(true)
}

#[derive(Serialize)]
struct Validation {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    center_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    even_center_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual_basis: Option<Vec<Vec<Scalar>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_error: Option<String>,
}

fn validate(args: &AlgebraArgs, f: Option<&str>, out: &OutArgs) -> Result<bool> {
    let spec = algebra_spec(args)?;
    let report = match SuperAlgebra::load(&spec) {
        Err(e) => Validation {
            valid: false,
            error: Some(e.to_string()),
            dim: None,
            center_dim: None,
            even_center_dim: None,
            dual_basis: None,
            f_valid: None,
            f_error: None,
        },
        Ok(alg) => {
            let (z, z0) = alg.center_basis();
            let f_result = match f {
                Some(text) => Some(CyclotomicPoly::load(&alg, &f_spec(text)?).map(|_| ())),
                None => None,
            };
            Validation {
                valid: true,
                error: None,
                dim: Some(alg.dim()),
                center_dim: Some(z.len()),
                even_center_dim: Some(z0.len()),
                dual_basis: Some(alg.dual_matrix()),
                f_valid: f_result.as_ref().map(|r| r.is_ok()),
                f_error: f_result.and_then(|r| r.err()).map(|e| e.to_string()),
            }
        }
    };
    let ok = report.valid && report.f_valid != Some(false);
    emit(out, &report)?;
    Ok(ok)
}

#[derive(Serialize)]
struct EvalReport {
    n: usize,
    z: Scalar,
    #[serde(skip_serializing_if = "Option::is_none")]
    f: Option<CyclotomicSpec>,
    terms: Vec<TermJson>,
    text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    right_terms: Option<Vec<RightTermJson>>,
}

fn eval(args: &ContextArgs, right_form: bool, expr: &str, out: &OutArgs) -> Result<bool> {
    let l = load(args)?;
    let source = match expr.strip_prefix('@') {
        Some(path) => read(Path::new(path))?,
        None => expr.to_string(),
    };
    let x = Expr::parse(&source)?.eval(&l.aff)?;
    let (f, terms, text, lifted) = match &l.f {
        Some(_) => {
            let ctx = require_f(&l)?;
            let r = ctx.reduce_laurent(&x)?;
            let json = cyclotomic_to_json(&r);
            (Some(json.f), json.terms, r.to_text(), r.lift())
        }
        None => (None, affine_to_json(&x), x.to_text(), x),
    };
    let right_terms = if right_form { Some(right_form_to_json(&to_right_normal_form(&lifted)?)) } else { None };
    emit(out, &EvalReport { n: l.aff.n(), z: l.aff.z().clone(), f, terms, text, right_terms })?;
    Ok(true)
}

fn suite(args: &ContextArgs, seed: u64, samples: usize, sequential: bool, out: &OutArgs) -> Result<bool> {
    let l = load(args)?;
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let cfg = SuiteConfig { alg: l.alg.clone(), n: l.aff.n(), z: l.aff.z().clone(), f: l.f.clone(), seed, samples, exec };
    let report = run_suite(&cfg)?;
    emit(out, &report)?;
    Ok(report.passed)
}

#[derive(Serialize)]
struct BasisLabel {
    a: Vec<usize>,
    lambda: Vec<i32>,
    w: Permutation,
}

#[derive(Serialize)]
struct GramReport {
    dimension: usize,
    invertible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    supersymmetric: Option<bool>,
    basis: Vec<BasisLabel>,
    matrix: Vec<Vec<Scalar>>,
}

fn gram_cmd(args: &ContextArgs, out: &OutArgs) -> Result<bool> {
    let l = load(args)?;
    let ctx = require_f(&l)?;
    let basis: Vec<BasisLabel> = ctx
        .basis()
        .into_iter()
        .map(|t| BasisLabel { a: t.a.iter().map(|&k| k as usize).collect(), lambda: t.x.to_vec(), w: t.w })
        .collect();
    let report = match gram(&ctx, Execution::Parallel) {
        Ok(g) => GramReport {
            dimension: basis.len(),
            invertible: true,
            error: None,
            supersymmetric: Some(g.is_supersymmetric()),
            basis,
            matrix: g.matrix,
        },
        Err(qawa::Error::Singular(msg)) => GramReport {
            dimension: basis.len(),
            invertible: false,
            error: Some(msg),
            supersymmetric: None,
            basis,
            matrix: Vec::new(),
        },
        Err(e) => return Err(e.into()),
    };
    let ok = report.invertible && report.supersymmetric == Some(true);
    emit(out, &report)?;
    Ok(ok)
}

#[derive(Serialize)]
struct MackeyReport {
    #[serde(flatten)]
    dims: MackeyDims,
    counted: [u128; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    ranks: Option<MackeyRanks>,
}

fn mackey(args: &ContextArgs, ranks: bool, out: &OutArgs) -> Result<bool> {
    let l = load(args)?;
    let ctx = require_f(&l)?;
    let n = ctx.n();
    let dims = mackey_dims(ctx.d(), l.alg.dim(), n)?;
    let below = if n == 1 {
        1
    } else {
        let aff = AffineContext::new(l.alg.clone(), n - 1, l.aff.z().clone())?;
        CycloContext::new(&aff, ctx.poly().clone())?.basis().len() as u128
    };
    let tower = Tower::new(&ctx, Execution::Parallel)?;
    let counted = [below, ctx.basis().len() as u128, tower.upper().basis().len() as u128];
    let ranks = if ranks { Some(tower.mackey_ranks(Execution::Parallel)?) } else { None };
    let ranks_ok = ranks.as_ref().map_or(true, |r| {
        r.x_summand as u128 == dims.x_summand && r.t_summand as u128 == dims.t_summand && r.total as u128 == dims.dims[2]
    });
    let ok = dims.holds && counted == dims.dims && ranks_ok;
    emit(out, &MackeyReport { dims, counted, ranks })?;
    Ok(ok)
}

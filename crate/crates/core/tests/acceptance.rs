//! Acceptance criteria 1 to 11. Each criterion prints one PASS/FAIL line;
//! the process exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;

use qawa::affine::{check_defining_relations, Status};
use qawa::cyclotomic::{level_one_check, CyclotomicSpec};
use qawa::random::{Sampler, Shape};
use qawa::suite::{
    basis_suite, center_suite, cyclotomic_basis_suite, demazure_suite, jm_suite, mackey_suite, tower_suite,
    trace_suite, SuiteEntry,
};
use qawa::superalgebra::presets;
use qawa::tensor::{teleporter, TensorElement};
use qawa::{
    ActMode, AffineContext, AffineElement, CycloContext, CyclotomicPoly, Execution, LinComb,
    Permutation, Scalar, SuperAlgebra, Term, Tower,
};

type Outcome = Result<String, String>;

const EXEC: Execution = Execution::Parallel;

fn algebra(name: &str) -> Arc<SuperAlgebra> {
    Arc::new(presets::load(name).expect("preset loads"))
}

fn scalar(s: &str) -> Scalar {
    s.parse().expect("valid rational")
}

fn affine(name: &str, n: usize, z: &str) -> Arc<AffineContext> {
    AffineContext::new(algebra(name), n, scalar(z)).expect("context")
}

fn cyclotomic(name: &str, n: usize, z: &str, coeffs: &[&str]) -> Arc<CycloContext> {
    let aff = affine(name, n, z);
    let cs: Vec<Scalar> = coeffs.iter().map(|c| scalar(c)).collect();
    let f = CyclotomicPoly::from_scalars(aff.algebra(), &cs).expect("valid f");
    CycloContext::new(&aff, f).expect("cyclotomic context")
}

fn err(e: qawa::Error) -> String {
    e.to_string()
}

/// Fails with every failing entry, or summarizes the count.
fn entries(label: &str, es: &[SuiteEntry]) -> Outcome {
    let bad: Vec<String> = es
        .iter()
        .filter(|e| !e.passed())
        .map(|e| format!("{label} {}/{}: {}", e.suite, e.check, e.detail))
        .collect();
    if bad.is_empty() {
        Ok(format!("{label}: {} checks", es.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn join(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for p in parts {
        match p {
            Ok(s) => ok.push(s),
            Err(s) => bad.push(s),
        }
    }
    if bad.is_empty() {
        Ok(ok.join(", "))
    } else {
        Err(bad.join(" | "))
    }
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    let mut bad = Vec::new();
    for name in presets::NAMES {
        for n in [2, 3] {
            for z in ["0", "1", "2/3"] {
                let ctx = affine(name, n, z);
                for e in check_defining_relations(&ctx, EXEC).map_err(err)? {
                    total += 1;
                    if e.status == Status::Fail {
                        bad.push(format!("{name} n={n} z={z} {} {:?}", e.relation, e.indices));
                    }
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{total} relation instances, 0 mismatches"))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_2() -> Outcome {
    join(
        ["trivial", "dual"]
            .iter()
            .map(|name| {
                let ctx = affine(name, 2, "2/3");
                entries(name, &basis_suite(&ctx, 1, usize::MAX, 0, EXEC).map_err(err)?)
            })
            .collect(),
    )
}

/// `Δ_i(f) (1 - X_i X_{i+1}^{-1}) = f - {}^{s_i} f`, the defining quotient
/// checked by multiplication.
fn rational_oracle(alg: &SuperAlgebra, seed: u64, samples: usize) -> Outcome {
    let n = 3;
    let mut s = Sampler::new(seed);
    let mut bad = 0;
    for _ in 0..samples {
        let f = s.laurent_monomial(alg, n, Shape::default());
        for i in 1..n {
            let mut mu = vec![0; n];
            mu[i - 1] = 1;
            mu[i] = -1;
            let d = f.demazure(i).map_err(err)?;
            let lhs = d.sub(&d.shifted(&mu)).map_err(err)?;
            let rhs = f.sub(&f.act_simple(alg, i, ActMode::XOnly).map_err(err)?).map_err(err)?;
            bad += usize::from(lhs != rhs);
        }
    }
    if bad == 0 {
        Ok(format!("{} monomials match the quotient", samples * (n - 1)))
    } else {
        Err(format!("closed form disagrees with the quotient on {bad} monomials"))
    }
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    let mut far = 0;
    for (k, name) in presets::NAMES.iter().enumerate() {
        let alg = algebra(name);
        let es = demazure_suite(&alg, 3, 200, 100 + k as u64).map_err(err)?;
        parts.push(entries(name, &es));
        parts.push(rational_oracle(&alg, 200 + k as u64, 200));
    }
    // at n = 3 no two indices are far apart
    let es = demazure_suite(&algebra("ext2"), 4, 200, 7).map_err(err)?;
    for e in &es {
        if e.check == "far-commute" && e.passed() {
            far += e.detail.split(' ').next().and_then(|k| k.parse::<usize>().ok()).unwrap_or(0);
        }
    }
    parts.push(entries("ext2 n=4", &es));
    if far == 0 {
        parts.push(Err("far commutation never exercised".into()));
    }
    join(parts)
}

fn criterion_4() -> Outcome {
    let mut parts = Vec::new();
    for name in ["trivial", "ext2"] {
        let ctx = affine(name, 2, "1");
        let es = center_suite(&ctx, 20, 4).map_err(err)?;
        let raw = es.iter().find(|e| e.check == "non-invariant-not-central").expect("entry");
        if raw.detail.starts_with("0 ") {
            parts.push(Err(format!("{name}: no non-invariant sample was drawn")));
        }
        parts.push(entries(name, &es));
    }
    join(parts)
}

fn criterion_5() -> Outcome {
    let ctx = affine("dual", 3, "2/3");
    entries("dual n=3", &jm_suite(&ctx, 50, 5).map_err(err)?)
}

fn criterion_6() -> Outcome {
    let dual = algebra("dual");
    // f = X^2 + c X - 1 over the dual numbers, with a non-scalar coefficient
    let spec = CyclotomicSpec { d: 2, coeffs: vec![vec![(0, scalar("-1"))], vec![(1, scalar("1"))]] };
    let dual_f = CyclotomicPoly::load(&dual, &spec).map_err(err)?;
    let cases: Vec<(&str, Arc<CycloContext>)> = vec![
        ("n=2 d=2 trivial", cyclotomic("trivial", 2, "1", &["-1", "0"])),
        ("n=3 d=2 trivial", cyclotomic("trivial", 3, "2/3", &["-2", "1"])),
        ("n=2 d=2 dual", {
            let aff = AffineContext::new(dual.clone(), 2, scalar("1")).map_err(err)?;
            CycloContext::new(&aff, dual_f).map_err(err)?
        }),
        ("n=2 d=1 kc2", cyclotomic("kc2", 2, "1", &["-1"])),
        ("n=2 d=2 ext2", cyclotomic("ext2", 2, "1", &["-1", "0"])),
    ];
    let mut parts = Vec::new();
    for (label, ctx) in cases {
        let n = ctx.n() as u32;
        let expected = (ctx.d() * ctx.algebra().dim()).pow(n) * (1..=ctx.n()).product::<usize>();
        let found = ctx.basis().len();
        if found != expected {
            parts.push(Err(format!("{label}: {found} basis elements, expected {expected}")));
        }
        parts.push(entries(label, &cyclotomic_basis_suite(&ctx, 10, 6).map_err(err)?));
    }
    join(parts)
}

/// `tr(xy) = (-1)^{|x||y|} tr(yx)` over all basis pairs, evaluated directly.
fn direct_supersymmetry(ctx: &Arc<CycloContext>) -> Outcome {
    let basis: Vec<_> = ctx.basis().iter().map(|t| ctx.basis_element(t)).collect::<qawa::Result<_>>().map_err(err)?;
    let mut bad = 0;
    for x in &basis {
        for y in &basis {
            let px = x.parity().unwrap_or(0);
            let py = y.parity().unwrap_or(0);
            let lhs = x.mul(y).map_err(err)?.trace();
            let rhs = y.mul(x).map_err(err)?.trace() * Scalar::sign(px == 1 && py == 1);
            bad += usize::from(lhs != rhs);
        }
    }
    if bad == 0 {
        Ok(format!("{} pairs", basis.len() * basis.len()))
    } else {
        Err(format!("{bad} basis pairs violate supersymmetry"))
    }
}

fn criterion_7() -> Outcome {
    let mut parts = Vec::new();
    for name in ["trivial", "dual"] {
        for z in ["0", "1"] {
            let ctx = cyclotomic(name, 2, z, &["-1", "0"]);
            let label = format!("{name} z={z}");
            parts.push(entries(&label, &trace_suite(&ctx, EXEC)));
            parts.push(direct_supersymmetry(&ctx).map_err(|e| format!("{label}: {e}")));
        }
    }
    let ctx = cyclotomic("trivial", 1, "1", &["-1", "0"]);
    let g = qawa::cyclotomic::gram(&ctx, EXEC).map_err(err)?;
    let identity = vec![vec![Scalar::one(), Scalar::zero()], vec![Scalar::zero(), Scalar::one()]];
    parts.push(if g.matrix == identity {
        Ok("n=1 Gram is the identity".into())
    } else {
        Err(format!("n=1 Gram matrix is {:?}", g.matrix))
    });
    join(parts)
}

fn criterion_8() -> Outcome {
    let mut parts = Vec::new();
    for n in [1, 2] {
        for coeffs in [["-1", "0"], ["-3", "2"]] {
            let ctx = cyclotomic("trivial", n, "1", &coeffs);
            let tower = Tower::new(&ctx, EXEC).map_err(err)?;
            let e = tower_suite(&tower, EXEC).map_err(err)?;
            parts.push(entries(&format!("n={n} f=X^2+{}X+{}", coeffs[1], coeffs[0]), &[e]));
        }
    }
    join(parts)
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    for name in ["trivial", "dual"] {
        for n in [1, 2] {
            let ctx = cyclotomic(name, n, "1", &["-1", "0"]);
            let tower = Tower::new(&ctx, EXEC).map_err(err)?;
            parts.push(entries(&format!("{name} n={n}"), &mackey_suite(&tower, true, EXEC).map_err(err)?));
        }
    }
    join(parts)
}

/// `a T_w · b T_v = ± (a · w(b)) T_{wv}` built slot by slot from the structure constants.
fn wreath_product(alg: &SuperAlgebra, a: &[u8], w: &Permutation, b: &[u8], v: &Permutation) -> LinComb<Term> {
    let n = a.len();
    // w(b): entry i moves to position w(i); odd entries that cross pick up a sign
    let mut moved = vec![0u8; n];
    let mut sign = 1i64;
    for i in 0..n {
        moved[w.apply(i + 1) - 1] = b[i];
        for j in i + 1..n {
            if w.apply(i + 1) > w.apply(j + 1) && alg.parity(b[i] as usize) == 1 && alg.parity(b[j] as usize) == 1 {
                sign = -sign;
            }
        }
    }
    // Koszul sign for moving moved[j] past a[i], i > j
    for i in 0..n {
        for j in 0..i {
            if alg.parity(a[i] as usize) == 1 && alg.parity(moved[j] as usize) == 1 {
                sign = -sign;
            }
        }
    }
    let mut partial: Vec<(Vec<u8>, Scalar)> = vec![(Vec::new(), Scalar::from_int(sign))];
    for i in 0..n {
        let mut next = Vec::new();
        for (slots, c) in &partial {
            for (k, e) in alg.product(a[i] as usize, moved[i] as usize) {
                let mut s = slots.clone();
                s.push(*k as u8);
                next.push((s, c * e));
            }
        }
        partial = next;
    }
    let wv = w.compose(v).expect("equal sizes");
    let mut out = LinComb::new();
    for (slots, c) in partial {
        out.add_term(Term { w: wv.clone(), x: vec![0; n].into_iter().collect(), a: slots.into_iter().collect() }, c);
    }
    out
}

fn all_slots(m: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|s| (0..m as u8).map(move |k| [s.clone(), vec![k]].concat())).collect();
    }
    out
}

fn degeneration(name: &str, n: usize) -> Outcome {
    let ctx = affine(name, n, "0");
    let alg = ctx.algebra().clone();
    let one = AffineElement::one(&ctx);
    for i in 1..n {
        let t = AffineElement::t(&ctx, i).map_err(err)?;
        if t.mul(&t).map_err(err)? != one {
            return Err(format!("{name}: T_{i}^2 != 1 at z = 0"));
        }
    }
    let slots = all_slots(alg.dim(), n);
    let perms = qawa::perm::all_permutations(n);
    let elems: Vec<(Vec<u8>, Permutation, AffineElement)> = slots
        .iter()
        .flat_map(|a| perms.iter().map(move |w| (a.clone(), w.clone())))
        .map(|(a, w)| {
            let x = AffineElement::from_tensor(&ctx, &TensorElement::basis(&a)).and_then(|e| e.mul(&AffineElement::t_w(&ctx, &w)));
            x.map(|x| (a, w, x))
        })
        .collect::<qawa::Result<_>>()
        .map_err(err)?;
    let mut bad = 0;
    for (a, w, x) in &elems {
        for (b, v, y) in &elems {
            let expect = AffineElement::from_terms(&ctx, wreath_product(&alg, a, w, b, v)).map_err(err)?;
            bad += usize::from(x.mul(y).map_err(err)? != expect);
        }
    }
    if bad == 0 {
        Ok(format!("{name} n={n}: {} products", elems.len() * elems.len()))
    } else {
        Err(format!("{name} n={n}: {bad} products differ from the wreath product"))
    }
}

fn criterion_10() -> Outcome {
    let mut parts: Vec<Outcome> = presets::NAMES.iter().map(|name| degeneration(name, 2)).collect();
    parts.push(degeneration("kc2", 3));
    parts.push(degeneration("ext2", 3));
    let alg = algebra("kc2");
    let t = teleporter(&alg, 2, 1, 2).map_err(err)?;
    let sq = t.mul(&alg, &t).map_err(err)?;
    parts.push(if sq == t.scaled(&Scalar::from_int(2)) {
        Ok("kc2 t_12^2 = 2 t_12".into())
    } else {
        Err("kc2 t_12^2 != 2 t_12".into())
    });
    join(parts)
}

fn criterion_11() -> Outcome {
    let mut parts = Vec::new();
    for name in ["trivial", "kc2"] {
        let alg = algebra(name);
        for a in ["-1", "1"] {
            for z in ["1", "2/3"] {
                let elem: Vec<Scalar> = alg.unit_elem().iter().map(|u| u * &scalar(a)).collect();
                let r = level_one_check(&alg, 2, scalar(z), &elem, 10, 11).map_err(err)?;
                let label = format!("{name} f=X+({a}) z={z}");
                parts.push(if r.passed() { Ok(label) } else { Err(format!("{label}: {r:?}")) });
            }
        }
    }
    join(parts)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("presentation soundness", criterion_1),
        ("basis uniqueness and right form", criterion_2),
        ("Demazure identities", criterion_3),
        ("center", criterion_4),
        ("Jucys-Murphy elements", criterion_5),
        ("cyclotomic dimension", criterion_6),
        ("trace form", criterion_7),
        ("Frobenius tower", criterion_8),
        ("Mackey dimensions", criterion_9),
        ("degenerations", criterion_10),
        ("level one", criterion_11),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {title}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

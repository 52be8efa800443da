//! Properties of cyclotomic quotients: reduction, trace form and the tower.

use std::sync::Arc;

use proptest::prelude::*;

use qawa::cyclotomic::CyclotomicElement;
use qawa::random::{Sampler, Shape};
use qawa::superalgebra::presets;
use qawa::{AffineContext, AffineElement, CycloContext, CyclotomicPoly, Execution, Scalar, Term, Tower};

fn s(v: &str) -> Scalar {
    v.parse().unwrap()
}

fn quotient(name: &str, n: usize, z: &str, coeffs: &[&str]) -> Arc<CycloContext> {
    let alg = Arc::new(presets::load(name).unwrap());
    let aff = AffineContext::new(alg.clone(), n, s(z)).unwrap();
    let cs: Vec<Scalar> = coeffs.iter().map(|c| s(c)).collect();
    CycloContext::new(&aff, CyclotomicPoly::from_scalars(&alg, &cs).unwrap()).unwrap()
}

fn positive() -> Shape {
    Shape { max_terms: 3, max_exp: 3, nonnegative: true }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduce_is_idempotent_and_kills_the_ideal(k in 0usize..5, seed in any::<u64>()) {
        let ctx = quotient(presets::NAMES[k], 2, "2/3", &["-1", "1"]);
        let aff = ctx.affine();
        let mut smp = Sampler::new(seed);
        let x = smp.affine(aff, positive());
        let r = ctx.reduce(&x).unwrap();
        prop_assert_eq!(ctx.reduce(&r.lift()).unwrap(), r);
        let f1 = ctx.poly().f1(aff).unwrap();
        let g = smp.affine(aff, positive());
        prop_assert!(ctx.reduce(&(&(&g * &f1) * &x)).unwrap().is_zero());
    }

    #[test]
    fn partial_trace_is_a_bimodule_map(seed in any::<u64>(), k in 0usize..2) {
        let lower = quotient(["trivial", "dual"][k], 1, "1", &["-1", "0"]);
        let tower = Tower::new(&lower, Execution::Sequential).unwrap();
        let mut smp = Sampler::new(seed);
        let pick = |smp: &mut Sampler, ctx: &Arc<CycloContext>| -> CyclotomicElement {
            let x = smp.affine(ctx.affine(), positive());
            ctx.reduce(&x).unwrap()
        };
        let h = pick(&mut smp, tower.lower());
        let h2 = pick(&mut smp, tower.lower());
        let x = pick(&mut smp, tower.upper());
        let hxh = tower.embed(&h).unwrap().mul(&x).unwrap().mul(&tower.embed(&h2).unwrap()).unwrap();
        let lhs = tower.partial_trace(&hxh).unwrap();
        let rhs = h.mul(&tower.partial_trace(&x).unwrap()).unwrap().mul(&h2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn trace_is_supersymmetric_on_every_preset() {
    for name in presets::NAMES {
        let ctx = quotient(name, 2, "1", &["-1", "0"]);
        let basis: Vec<_> = ctx.basis().iter().map(|t| ctx.basis_element(t).unwrap()).collect();
        let even = ctx.algebra().is_purely_even();
        for x in &basis {
            for y in &basis {
                let odd = x.parity() == Some(1) && y.parity() == Some(1);
                assert!(!odd || !even);
                let lhs = x.mul(y).unwrap().trace();
                let rhs = y.mul(x).unwrap().trace() * Scalar::sign(odd);
                assert_eq!(lhs, rhs, "{name}");
            }
        }
    }
}

#[test]
fn lower_indices_stay_lower() {
    let upper = quotient("dual", 3, "2/3", &["-1", "1"]);
    let aff = upper.affine();
    let mut smp = Sampler::new(2);
    for _ in 0..20 {
        let mut x = AffineElement::one(aff);
        for _ in 0..4 {
            let g = match smp.index(3) {
                0 => AffineElement::t(aff, 1 + smp.index(1)).unwrap(),
                1 => AffineElement::x(aff, 1 + smp.index(2), 1 + smp.index(2) as i32).unwrap(),
                _ => AffineElement::a_in_slot(aff, smp.index(2), 1 + smp.index(2)).unwrap(),
            };
            x = &x * &g;
        }
        let r = upper.reduce(&x).unwrap();
        for (t, _) in r.terms() {
            assert_eq!(t.x[2], 0);
            assert_eq!(t.a[2], 0);
            assert_eq!(t.w.apply(3), 3);
        }
    }
}

/// `X^{-μ} b^∨ T_{v^{-1}}` in the quotient.
fn dual_element(ctx: &Arc<CycloContext>, t: &Term) -> CyclotomicElement {
    let alg = ctx.algebra();
    let aff = ctx.affine();
    let mut y = ctx.one();
    for (i, &e) in t.x.iter().enumerate() {
        let inv = ctx.invert_x(i + 1).unwrap();
        for _ in 0..e {
            y = y.mul(&inv).unwrap();
        }
    }
    let factors: Vec<_> = t.a.iter().map(|&k| alg.dual(k as usize).clone()).collect();
    let b = AffineElement::from_tensor(aff, &qawa::TensorElement::pure(&factors)).unwrap();
    let tail = &b * &AffineElement::t_w(aff, &t.w.inverse());
    y.mul(&ctx.reduce(&tail).unwrap()).unwrap()
}

/// Pairing of the right-form basis `T_w a X^λ` against `X^{-μ} b^∨ T_{v^{-1}}`,
/// rows and columns ordered by λ from position n down, then w, then a.
fn pairing(ctx: &Arc<CycloContext>) -> Vec<Vec<Scalar>> {
    let aff = ctx.affine();
    let n = ctx.n();
    let mut basis = ctx.basis();
    basis.sort_by(|p, q| p.x.iter().rev().cmp(q.x.iter().rev()).then_with(|| p.w.cmp(&q.w)).then_with(|| p.a.cmp(&q.a)));
    let xs: Vec<_> = basis
        .iter()
        .map(|t| {
            let mono = Term { w: qawa::Permutation::identity(n), x: t.x.clone(), a: t.a.clone() };
            let mono = AffineElement::from_terms(aff, qawa::LinComb::single(mono, Scalar::one())).unwrap();
            ctx.reduce(&(&AffineElement::t_w(aff, &t.w) * &mono)).unwrap()
        })
        .collect();
    let ys: Vec<_> = basis.iter().map(|t| dual_element(ctx, t)).collect();
    xs.iter().map(|x| ys.iter().map(|y| x.mul(y).unwrap().trace()).collect()).collect()
}

fn upper_unitriangular(m: &[Vec<Scalar>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row[i].is_one() && row[..i].iter().all(Scalar::is_zero))
}

#[test]
fn pairing_with_dual_candidates_is_unitriangular() {
    for z in ["0", "1", "2/3"] {
        for f in [["-1", "0"], ["-3", "2"]] {
            for name in ["trivial", "dual"] {
                let m = pairing(&quotient(name, 2, z, &f));
                assert!(upper_unitriangular(&m), "{name} z={z} f={f:?}: {m:?}");
            }
        }
    }
}

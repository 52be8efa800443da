//! Evaluates both sides of every defining relation of `H_n^aff(A,z)`
//! through the product and reports mismatches.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{AffineContext, AffineElement};
use crate::error::Result;
use crate::par::Execution;
use crate::tensor::swap_pure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// One relation instance and the size of `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationEntry {
    pub relation: String,
    pub indices: Vec<usize>,
    pub status: Status,
    #[serde(rename = "difference-term-count")]
    pub difference_term_count: usize,
}

#[derive(Clone, Copy, Debug)]
enum Job {
    FarComm(usize, usize),
    Braid(usize),
    Quadratic(usize),
    /// `T_i a = s_i(a) T_i` for basis element `b` in `slot`.
    Tf(usize, usize, usize),
    Commute(usize, usize),
    Inverse(usize),
    /// `X_i a = a X_i` for basis element `b` in `slot`.
    Pna(usize, usize, usize),
    Skein(usize),
}

fn jobs(n: usize, m: usize) -> Vec<Job> {
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 2..n {
            out.push(Job::FarComm(i, j));
        }
        if i + 1 < n {
            out.push(Job::Braid(i));
        }
        out.push(Job::Quadratic(i));
        out.push(Job::Inverse(i));
        out.push(Job::Skein(i));
        for j in 1..=n {
            if j != i && j != i + 1 {
                out.push(Job::Commute(i, j));
            }
        }
        for slot in 1..=n {
            for b in 0..m {
                out.push(Job::Tf(i, slot, b));
            }
        }
    }
    for i in 1..=n {
        for slot in 1..=n {
            for b in 0..m {
                out.push(Job::Pna(i, slot, b));
            }
        }
    }
    out
}

fn evaluate(ctx: &Arc<AffineContext>, job: Job) -> Result<RelationEntry> {
    let t = |i| AffineElement::t(ctx, i);
    let x = |i, k| AffineElement::x(ctx, i, k);
    let one = AffineElement::one(ctx);
    let (name, indices, lhs, rhs) = match job {
        Job::FarComm(i, j) => ("farcomm", vec![i, j], &t(i)? * &t(j)?, &t(j)? * &t(i)?),
        Job::Braid(i) => {
            let (a, b) = (t(i)?, t(i + 1)?);
            ("braid", vec![i], &(&a * &b) * &a, &(&b * &a) * &b)
        }
        Job::Quadratic(i) => {
            let ti = t(i)?;
            let tele = AffineElement::from_tensor(ctx, ctx.teleporter(i)?)?;
            let rhs = &(&tele.scaled(ctx.z()) * &ti) + &one;
            ("quadratic", vec![i], &ti * &ti, rhs)
        }
        Job::Tf(i, slot, b) => {
            let a = AffineElement::a_in_slot(ctx, b, slot)?;
            // s_i(a) computed directly on the pure tensor
            let mut swapped = AffineElement::zero(ctx);
            for (term, c) in a.terms() {
                let (s, odd) = swap_pure(ctx.algebra(), i, &term.a);
                let mono = crate::tensor::TensorElement::basis(&s);
                let e = AffineElement::from_tensor(ctx, &mono)?;
                swapped = &swapped + &e.scaled(&if odd { -c } else { c.clone() });
            }
            ("TF", vec![i, slot, b], &t(i)? * &a, &swapped * &t(i)?)
        }
        Job::Commute(i, j) => ("commute", vec![i, j], &t(i)? * &x(j, 1)?, &x(j, 1)? * &t(i)?),
        Job::Inverse(i) => ("inverse", vec![i], &(&t(i)? * &x(i, 1)?) * &t(i)?, x(i + 1, 1)?),
        Job::Pna(i, slot, b) => {
            let a = AffineElement::a_in_slot(ctx, b, slot)?;
            ("pna", vec![i, slot, b], &x(i, 1)? * &a, &a * &x(i, 1)?)
        }
        Job::Skein(i) => {
            let lhs = &t(i)? * &AffineElement::t_inv(ctx, i)?;
            ("skein", vec![i], lhs, one.clone())
        }
    };
    let diff = &lhs - &rhs;
    Ok(RelationEntry {
        relation: name.to_string(),
        indices,
        status: if diff.is_zero() { Status::Pass } else { Status::Fail },
        difference_term_count: diff.len(),
    })
}

/// Every instance of the far commutation, braid, quadratic, `T_i a = s_i(a) T_i`,
/// `T_i X_j = X_j T_i`, `T_i X_i T_i = X_{i+1}`, `X_i a = a X_i` and
/// `T_i T_i^{-1} = 1` relations, sorted.
pub fn check_defining_relations(ctx: &Arc<AffineContext>, exec: Execution) -> Result<Vec<RelationEntry>> {
    let all = jobs(ctx.n(), ctx.algebra().dim());
    let mut entries = exec.map(&all, |&job| evaluate(ctx, job)).into_iter().collect::<Result<Vec<_>>>()?;
    entries.sort();
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::presets;

    #[test]
    fn small_suite_passes() {
        let alg = Arc::new(presets::load("dual").unwrap());
        let ctx = AffineContext::new(alg, 3, "2/3".parse().unwrap()).unwrap();
        let report = check_defining_relations(&ctx, Execution::Sequential).unwrap();
        assert!(report.iter().all(|e| e.status == Status::Pass), "{report:?}");
        assert!(report.iter().any(|e| e.relation == "braid"));
        let json = serde_json::to_string(&report[0]).unwrap();
        assert!(json.contains("difference-term-count"));
    }
}

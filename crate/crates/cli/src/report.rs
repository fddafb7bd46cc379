//! JSON shapes for command results.

use serde_json::{json, Value};

use crlab_core::borel_search::InvariantSpaceSpec;
use crlab_core::commrank::{BoundReport, BoundStatus};
use crlab_core::exact_linalg::format_rational;
use crlab_core::triangularize::{Triangularization, TriangularizeError};
use crlab_core::verify::FlandersReport;
use crlab_core::{
    AlgebraicNumber, CommutatorProfile, Mat, RankVerdict, SearchReport, StructureVerdict,
};

use crate::io::matrix_json;

fn pair(a: &Mat, b: &Mat) -> Value {
    json!({ "a": matrix_json(a), "b": matrix_json(b) })
}

pub fn profile(p: &CommutatorProfile) -> Value {
    json!({
        "n": p.n,
        "dim": p.dim,
        "certified_lower": p.certified_lower,
        "probable_max": p.probable_max,
        "k_hat": p.k_hat(),
        "witness_trial": p.witness_trial,
        "witness": p.witness.as_ref().map(|(a, b)| pair(a, b)),
        "trials": p.trials,
        "seed": p.seed,
    })
}

pub fn bound(r: &BoundReport) -> Value {
    let (status, slack, excess) = match r.status {
        BoundStatus::Pass { slack } => ("PASS", Some(slack), None),
        BoundStatus::Fail { excess } => ("FAIL", None, Some(excess)),
        BoundStatus::NotApplicable => ("NOT_APPLICABLE", None, None),
    };
    json!({
        "dim": r.dim,
        "k_hat": r.k_hat,
        "bound": r.bound,
        "status": status,
        "slack": slack,
        "excess": excess,
    })
}

pub fn rank_verdict(k: usize, v: &RankVerdict) -> Value {
    match v {
        RankVerdict::ProbableYes { trials } => {
            json!({ "k": k, "verdict": "PROBABLE_YES", "trials": trials })
        }
        RankVerdict::CertifiedNo { a, b, rank, trial } => json!({
            "k": k,
            "verdict": "CERTIFIED_NO",
            "rank": rank,
            "trial": trial,
            "witness": pair(a, b),
        }),
    }
}

pub fn flanders(r: &FlandersReport) -> Value {
    json!({
        "rows": r.rows,
        "cols": r.cols,
        "dim": r.dim,
        "k_hat": r.k_hat,
        "bound": r.bound,
        "status": if r.pass { "PASS" } else { "FAIL" },
        "slack": r.slack,
        "trials": r.trials,
        "seed": r.seed,
    })
}

fn algebraic_json(m: &Mat<AlgebraicNumber>) -> Vec<Vec<Vec<String>>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.poly().coeffs().iter().map(format_rational).collect())
                .collect()
        })
        .collect()
}

pub fn triangularization(t: &Triangularization) -> Value {
    match t {
        Triangularization::Rational(r) => json!({
            "status": "OK",
            "field": "Q",
            "p": matrix_json(&r.p),
            "p_inv": matrix_json(&r.p_inv),
            "chain_dims": r.chain_dims,
            "valid": r.is_valid(),
        }),
        Triangularization::Extension { modulus, result } => json!({
            "status": "OK",
            "field": "Q[t]/(modulus)",
            "modulus": modulus.coeffs().iter().map(format_rational).collect::<Vec<_>>(),
            "p": algebraic_json(&result.p),
            "p_inv": algebraic_json(&result.p_inv),
            "chain_dims": result.chain_dims,
            "valid": result.is_valid(),
        }),
    }
}

pub fn triangularize_error(e: &TriangularizeError) -> Value {
    let message = e.to_string();
    match e {
        TriangularizeError::Inconsistent {
            witness,
            rank,
            conflict,
            ..
        } => json!({
            "status": "INCONSISTENT",
            "message": message,
            "witness": witness.as_ref().map(|(a, b)| pair(a, b)),
            "rank": rank,
            "conflict": conflict.map(|((a, b), (c, d))| [[a + 1, b + 1], [c + 1, d + 1]]),
        }),
        TriangularizeError::InvariantFailure { size, .. } => {
            json!({ "status": "INVARIANT_FAILURE", "message": message, "size": size })
        }
        TriangularizeError::NonCommuting(i, j) => {
            json!({ "status": "NON_COMMUTING", "message": message, "pair": [i + 1, j + 1] })
        }
        TriangularizeError::NoEigenvalue { .. } => {
            json!({ "status": "NO_EIGENVALUE", "message": message })
        }
        TriangularizeError::Singular => json!({ "status": "SINGULAR", "message": message }),
    }
}

/// Positions are 1-based; `diagonal` lists a basis of `D`.
pub fn spec(s: &InvariantSpaceSpec) -> Value {
    json!({
        "positions": s.positions().iter().map(|&(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
        "diagonal": s.diagonal().basis().iter()
            .map(|v| v.iter().map(format_rational).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "dim": s.dim(),
    })
}

pub fn search(r: &SearchReport) -> Value {
    json!({
        "n": r.n,
        "k": r.k,
        "rules": r.rules.name(),
        "max_dim": r.max_dim,
        "bound": r.bound,
        "status": if r.matches_bound() { "PASS" } else { "FAIL" },
        "enumerated": r.enumerated,
        "pruned": r.pruned,
        "sampled": r.sampled,
        "argmax": r.argmax.iter().map(spec).collect::<Vec<_>>(),
        "trials": r.trials,
        "seed": r.seed,
    })
}

pub fn structure(v: &StructureVerdict) -> Value {
    json!({
        "status": v.status.name(),
        "n": v.n,
        "dim": v.dim,
        "k_hat": v.k_hat,
        "bound": v.bound,
        "l": v.l,
        "chain_dims": v.chain_dims,
        "witness_basis": v.witness_basis.as_ref().map(matrix_json),
        "diagnostics": v.diagnostics,
    })
}

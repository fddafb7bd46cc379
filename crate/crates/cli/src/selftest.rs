//! Quick consistency run over the bound formula and the exceptional spaces.

use serde_json::{json, Value};

use crlab_core::commrank::{dimension_bound, satisfies_rank_condition};
use crlab_core::constructions::{exceptional_block_space, v_k, valid_splits, ExceptionalTag};
use crlab_core::verify::structure_check;

const MAX_N: usize = 6;
const IDENTITY_MAX_N: usize = 50;

pub struct Outcome {
    pub passed: bool,
    pub report: Value,
}

fn formula_checks(failures: &mut Vec<String>) -> usize {
    let mut checked = 0;
    for n in 2..=IDENTITY_MAX_N {
        let identities = [
            (0, n * n / 4 + 1),
            (n - 1, n * n - n + 1),
            (1, (n - 1) * (n - 1) / 4 + n + 1),
        ];
        for (k, expected) in identities {
            if dimension_bound(n, k).ok() != Some(expected) {
                failures.push(format!("bound({n},{k}) != {expected}"));
            }
            checked += 1;
        }
    }
    for n in 2..=MAX_N {
        for k in 0..n {
            let b = dimension_bound(n, k).expect("k < n");
            for l in valid_splits(n, k) {
                match v_k(n, k, l) {
                    Ok(v) if v.dim() == b => {}
                    Ok(v) => failures.push(format!("dim v_k({n},{k},{l}) = {} != {b}", v.dim())),
                    Err(e) => failures.push(format!("v_k({n},{k},{l}): {e}")),
                }
                checked += 1;
            }
        }
    }
    checked
}

fn exceptional_checks(trials: usize, seed: u64, failures: &mut Vec<String>) -> Vec<Value> {
    let mut rows = Vec::new();
    for n in 2..=MAX_N {
        for k in 0..n {
            for tag in ExceptionalTag::all_for(n - k) {
                let name = format!("{}(n={n},k={k})", tag.tag());
                let v = match exceptional_block_space(n, k, tag) {
                    Ok(v) => v,
                    Err(e) => {
                        failures.push(format!("{name}: {e}"));
                        continue;
                    }
                };
                let bound = dimension_bound(n, k).expect("k < n");
                let rank_ok =
                    satisfies_rank_condition(&v, k, trials, seed).is_ok_and(|r| r.is_yes());
                let status = structure_check(&v, trials, seed).map(|s| s.status);
                let matched = status.as_ref().is_ok_and(|s| s.is_match());
                if v.dim() != bound || !v.is_algebra() || !rank_ok || !matched {
                    failures.push(format!("{name}: dim {} bound {bound}", v.dim()));
                }
                rows.push(json!({
                    "tag": tag.tag(),
                    "n": n,
                    "k": k,
                    "dim": v.dim(),
                    "bound": bound,
                    "rank_condition": rank_ok,
                    "structure": status.map(|s| s.name()).unwrap_or_else(|e| e.to_string()),
                }));
            }
        }
    }
    rows
}

pub fn run(trials: usize, seed: u64) -> Outcome {
    let mut failures = Vec::new();
    let formulas = formula_checks(&mut failures);
    let exceptional = exceptional_checks(trials, seed, &mut failures);
    Outcome {
        passed: failures.is_empty(),
        report: json!({
            "status": if failures.is_empty() { "PASS" } else { "FAIL" },
            "formula_checks": formulas,
            "exceptional": exceptional,
            "failures": failures,
            "trials": trials,
            "seed": seed,
        }),
    }
}

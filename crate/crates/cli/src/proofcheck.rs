//! Runs every cycle-method verifier against one instance and folds the
//! outcomes into a [`ProofcheckReport`]. Checks whose preconditions are
//! out of range (mapping cap, family cap, the degenerate regime) are
//! marked skipped with the reason; a failed check carries its
//! counterexample as structured data.

use crate::report::{CheckResult, ProofcheckParams, ProofcheckReport, ProofcheckSummary};
use ekr_core::cycle::{
    double_count, expected_quasi_max, intersection_pattern, max_intersecting_quasi, preimage,
    proper_mappings, quasi_intervals, verify_counting_identities, DoubleCountReport,
};
use ekr_core::family::{sample_intersecting_subfamily, Family, MatchingParams};
use ekr_core::search::max_intersecting;
use ekr_core::Error;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const RANGE_REASON: &str = "only claimed for n >= 2p+s";

pub fn run(
    params: MatchingParams,
    map_cap: usize,
    family_cap: u64,
    seed: u64,
) -> ProofcheckReport {
    let mut checks = Vec::new();
    let n = params.n();
    let effective_cap = map_cap.min(ekr_core::cycle::MAP_HARD_CAP);
    let mappings_available = n <= effective_cap;
    let map_reason = format!("mapping enumeration needs n <= {effective_cap}");

    checks.push(check_sizes(params));

    if params.is_degenerate() {
        checks.push(CheckResult::skipped("intersection-pattern", RANGE_REASON));
        checks.push(CheckResult::skipped("quasi-extremal-bound", RANGE_REASON));
    } else {
        checks.push(check_pattern(params));
        checks.push(check_quasi_bound(params));
    }

    if mappings_available {
        checks.push(check_pullback(params, map_cap));
        let family = Family::enumerate(params);
        let (f_check, counting_check) = check_counting(&family, map_cap, seed);
        checks.push(f_check);
        checks.push(counting_check);
        if params.is_degenerate() {
            checks.push(CheckResult::skipped("double-count-identity", RANGE_REASON));
            checks.push(CheckResult::skipped("inequality-chain", RANGE_REASON));
        } else {
            checks.push(check_double_count(&family, map_cap, seed));
            checks.push(check_chain(&family, map_cap, family_cap));
        }
    } else {
        for name in [
            "pullback-membership",
            "f-independence",
            "counting-identity",
            "double-count-identity",
            "inequality-chain",
        ] {
            checks.push(CheckResult::skipped(name, &map_reason));
        }
    }

    let summary = ProofcheckSummary {
        passed: checks.iter().filter(|c| c.status == crate::report::CheckStatus::Pass).count(),
        failed: checks.iter().filter(|c| c.status == crate::report::CheckStatus::Fail).count(),
        skipped: checks
            .iter()
            .filter(|c| c.status == crate::report::CheckStatus::Skipped)
            .count(),
    };
    ProofcheckReport {
        params: ProofcheckParams {
            n,
            p: params.p(),
            s: params.s(),
            map_cap,
            cap: family_cap,
            seed,
        },
        results: checks,
        summary,
    }
}

fn check_sizes(params: MatchingParams) -> CheckResult {
    let name = "quasi-sizes";
    for interval in quasi_intervals(params) {
        if interval.points.len() != params.member_size() {
            return CheckResult::fail(
                name,
                json!({
                    "interval": interval.index,
                    "size": interval.points.len(),
                    "expected": params.member_size(),
                }),
            );
        }
    }
    CheckResult::pass(name, Some(json!({"size": params.member_size()})))
}

fn check_pattern(params: MatchingParams) -> CheckResult {
    let name = "intersection-pattern";
    match intersection_pattern(params) {
        Ok(report) if report.verdict => CheckResult::pass(
            name,
            Some(json!({"radius": report.radius, "intervals": report.quasi_count})),
        ),
        Ok(report) => {
            let counterexample = if let Some(m) = report.pattern_mismatches.first() {
                json!({
                    "kind": "pattern",
                    "i": m.i,
                    "j": m.j,
                    "distance": m.distance,
                    "expected_intersect": m.expected_intersect,
                    "actually_intersect": m.actually_intersect,
                })
            } else {
                let (i, j) = report.disjoint_violations[0];
                json!({"kind": "disjoint-pair", "i": i, "j": j})
            };
            CheckResult::fail(name, counterexample)
        }
        Err(e) => CheckResult::fail(name, json!({"error": e.to_string()})),
    }
}

fn check_quasi_bound(params: MatchingParams) -> CheckResult {
    let name = "quasi-extremal-bound";
    let expected = expected_quasi_max(params);
    match max_intersecting_quasi(params) {
        Ok(result) if result.size == expected => {
            CheckResult::pass(name, Some(json!({"maximum": result.size})))
        }
        Ok(result) => CheckResult::fail(
            name,
            json!({"maximum": result.size, "expected": expected, "witness": result.witness}),
        ),
        Err(e) => CheckResult::fail(name, json!({"error": e.to_string()})),
    }
}

fn check_pullback(params: MatchingParams, map_cap: usize) -> CheckResult {
    let name = "pullback-membership";
    let intervals = quasi_intervals(params);
    let mappings = proper_mappings(params.n(), map_cap).expect("cap was checked");
    let mut count = 0u64;
    for mapping in mappings {
        for interval in &intervals {
            count += 1;
            if let Err(Error::ProfileMismatch { edges, isolated, .. }) =
                preimage(params, &mapping, interval)
            {
                return CheckResult::fail(
                    name,
                    json!({
                        "column_perm": mapping.column_perm(),
                        "flips": mapping.flips(),
                        "interval": interval.index,
                        "edges": edges,
                        "isolated": isolated,
                    }),
                );
            }
        }
    }
    CheckResult::pass(name, Some(json!({"preimages": count})))
}

fn check_counting(family: &Family, map_cap: usize, seed: u64) -> (CheckResult, CheckResult) {
    let f_name = "f-independence";
    let id_name = "counting-identity";
    match verify_counting_identities(family, map_cap, seed) {
        Ok(report) => {
            let f_check = CheckResult::pass(
                f_name,
                Some(json!({"f": report.f_value, "pairs": report.pairs_checked})),
            );
            let id_check = if report.identity_holds {
                CheckResult::pass(
                    id_name,
                    Some(json!({
                        "total_mappings": report.total_mappings,
                        "family_size": family.len(),
                        "f": report.f_value,
                    })),
                )
            } else {
                CheckResult::fail(
                    id_name,
                    json!({
                        "total_mappings": report.total_mappings,
                        "family_size": family.len(),
                        "f": report.f_value,
                    }),
                )
            };
            (f_check, id_check)
        }
        Err(Error::MappingCountVaries {
            member_index,
            interval_index,
            expected,
            found,
        }) => (
            CheckResult::fail(
                f_name,
                json!({
                    "member": member_index,
                    "interval": interval_index,
                    "expected": expected,
                    "found": found,
                }),
            ),
            CheckResult::skipped(id_name, "mapping count is not constant"),
        ),
        Err(e) => (
            CheckResult::fail(f_name, json!({"error": e.to_string()})),
            CheckResult::skipped(id_name, "counting canvass failed"),
        ),
    }
}

fn double_count_violation(tag: &str, report: &DoubleCountReport, size: usize) -> serde_json::Value {
    json!({
        "subfamily": tag,
        "subfamily_size": size,
        "pair_count": report.pair_count,
        "expected": size as u64 * report.quasi_count as u64 * report.f_value,
        "identity_ok": report.identity_ok,
        "bound_ok": report.bound_ok,
    })
}

fn check_double_count(family: &Family, map_cap: usize, seed: u64) -> CheckResult {
    let name = "double-count-identity";
    let params = family.params();
    let mut subfamilies: Vec<(String, Vec<usize>)> = Vec::new();
    let star_vertices = if params.n() <= 4 { params.vertex_count() } else { 1 };
    for vertex in 0..star_vertices {
        subfamilies.push((
            format!("star-{vertex}"),
            family.star(vertex).expect("vertex in range"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..20 {
        subfamilies.push((
            format!("random-{i}"),
            sample_intersecting_subfamily(family, &mut rng),
        ));
    }

    let mut checked = 0;
    for (tag, subfamily) in &subfamilies {
        match double_count(family, subfamily, map_cap) {
            Ok(report) if report.identity_ok && report.bound_ok => checked += 1,
            Ok(report) => {
                return CheckResult::fail(
                    name,
                    double_count_violation(tag, &report, subfamily.len()),
                )
            }
            Err(e) => return CheckResult::fail(name, json!({"error": e.to_string()})),
        }
    }
    CheckResult::pass(name, Some(json!({"subfamilies": checked})))
}

fn check_chain(family: &Family, map_cap: usize, family_cap: u64) -> CheckResult {
    let name = "inequality-chain";
    let params = family.params();
    if params.family_size() > family_cap {
        return CheckResult::skipped(name, "family cap");
    }
    let best = max_intersecting(family, family_cap as usize, true).expect("cap was checked");
    match double_count(family, &best.witness, map_cap) {
        Ok(report) => {
            let bound = report.derived_bound();
            let star = params.star_size();
            if report.identity_ok
                && report.bound_ok
                && bound == star
                && best.size as u64 == star
            {
                CheckResult::pass(
                    name,
                    Some(json!({"maximum": best.size, "star": star, "chain_bound": bound})),
                )
            } else {
                CheckResult::fail(
                    name,
                    json!({
                        "maximum": best.size,
                        "star": star,
                        "chain_bound": bound,
                        "identity_ok": report.identity_ok,
                        "bound_ok": report.bound_ok,
                    }),
                )
            }
        }
        Err(e) => CheckResult::fail(name, json!({"error": e.to_string()})),
    }
}

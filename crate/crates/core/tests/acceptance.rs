//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them). Failures are
//! collected with their instance so a red criterion names its
//! counterexample.

mod common;

use common::{filter_enumerate, random_graph, valid_params};
use ekr_core::cycle::{
    double_count, expected_quasi_max, intersection_pattern, max_intersecting_quasi,
    quasi_intervals, verify_counting_identities,
};
use ekr_core::family::{binomial, is_intersecting, Family, MatchingParams, VertexSet};
use ekr_core::search::{max_clique, max_intersecting, naive_max_clique, verify_ekr_instance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn report(name: &str, detail: &str, failures: Vec<String>, started: Instant) {
    let elapsed = started.elapsed().as_millis();
    if failures.is_empty() {
        println!("{name}: PASS ({detail}, {elapsed} ms)");
    } else {
        println!("{name}: FAIL ({} failures, {elapsed} ms)", failures.len());
        for f in failures.iter().take(12) {
            println!("  {f}");
        }
        panic!("{name} failed");
    }
}

fn params(n: usize, p: usize, s: usize) -> MatchingParams {
    MatchingParams::new(n, p, s).unwrap()
}

fn family_sets(family: &Family) -> Vec<VertexSet> {
    family.members().iter().map(|m| m.vertices()).collect()
}

#[test]
fn criterion_1_family_counts() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut instances = 0;
    for p in valid_params(7) {
        instances += 1;
        let family = Family::enumerate(p);
        let closed = binomial(p.n(), p.p()) * binomial(p.n() - p.p(), p.s()) << p.s();
        if family.len() as u64 != closed {
            failures.push(format!("{p}: enumerated {} != closed form {closed}", family.len()));
        }
        // independent route: filter every subset of the 2n vertices
        let oracle = filter_enumerate(p);
        let enumerated: Vec<u64> =
            family.members().iter().map(|m| m.vertices().bits()).collect();
        if enumerated != oracle {
            failures.push(format!("{p}: member list differs from the filter oracle"));
        }
    }
    report(
        "criterion 1 (family counts, n <= 7)",
        &format!("{instances} instances"),
        failures,
        started,
    );
}

#[test]
fn criterion_2_ekr_sweep() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut instances = 0;
    for p in valid_params(6) {
        if p.is_degenerate() || p.family_size() > 256 {
            continue;
        }
        instances += 1;
        let family = Family::enumerate(p);
        let result = max_intersecting(&family, 4096, true).unwrap();
        if result.size as u64 != p.star_size() {
            failures.push(format!(
                "{p}: max intersecting {} != star {}",
                result.size,
                p.star_size()
            ));
        }
        let witness_sets: Vec<VertexSet> = result
            .witness
            .iter()
            .map(|&i| family.members()[i].vertices())
            .collect();
        if !is_intersecting(&witness_sets) {
            failures.push(format!("{p}: witness is not intersecting"));
        }
    }

    // spot values, cross-validated against the exhaustive oracle
    for (n, p, s, expected) in [(4, 2, 0, 3usize), (3, 1, 1, 6), (3, 0, 3, 4)] {
        let pr = params(n, p, s);
        let family = Family::enumerate(pr);
        let result = max_intersecting(&family, 4096, true).unwrap();
        let graph =
            ekr_core::search::IntersectionGraph::from_family(&family, 4096).unwrap();
        let oracle = naive_max_clique(&graph).unwrap();
        if result.size != expected || oracle != expected {
            failures.push(format!(
                "{pr}: solver {} oracle {oracle} expected {expected}",
                result.size
            ));
        }
    }
    report(
        "criterion 2 (EKR sweep, n <= 6, |H| <= 256)",
        &format!("{instances} instances + 3 spot checks"),
        failures,
        started,
    );
}

#[test]
fn criterion_3_degenerate_regime() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut instances = 0;
    for p in valid_params(6) {
        if !p.is_degenerate() {
            continue;
        }
        instances += 1;
        let family = Family::enumerate(p);
        if !is_intersecting(&family_sets(&family)) {
            failures.push(format!("{p}: family is not intersecting in its entirety"));
        }
    }
    report(
        "criterion 3 (degenerate regime, n <= 6)",
        &format!("{instances} instances"),
        failures,
        started,
    );
}

#[test]
fn criterion_4_classic_ekr_reduction() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut instances = 0;
    for p in 1..=3usize {
        for n in 2 * p..=7 {
            instances += 1;
            let pr = params(n, p, 0);
            let family = Family::enumerate(pr);
            let result = max_intersecting(&family, 4096, true).unwrap();
            let classic = binomial(n - 1, p - 1);
            if result.size as u64 != classic {
                failures.push(format!(
                    "{pr}: max {} != C({},{}) = {classic}",
                    result.size,
                    n - 1,
                    p - 1
                ));
            }
        }
    }
    report(
        "criterion 4 (classic EKR at s = 0)",
        &format!("{instances} instances"),
        failures,
        started,
    );
}

#[test]
fn criterion_5_quasi_interval_structure() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut size_instances = 0;
    let mut pattern_instances = 0;
    for p in valid_params(8) {
        size_instances += 1;
        for interval in quasi_intervals(p) {
            if interval.points.len() != p.member_size() {
                failures.push(format!(
                    "{p}: B_{} has {} points, want {}",
                    interval.index,
                    interval.points.len(),
                    p.member_size()
                ));
            }
        }
        if p.is_degenerate() {
            continue;
        }
        pattern_instances += 1;
        match intersection_pattern(p) {
            Ok(report) if report.verdict => {}
            Ok(report) => failures.push(format!(
                "{p}: pattern mismatches {:?}, disjoint violations {:?}",
                report.pattern_mismatches.first(),
                report.disjoint_violations.first()
            )),
            Err(e) => failures.push(format!("{p}: {e}")),
        }
        let expected = expected_quasi_max(p);
        match max_intersecting_quasi(p) {
            Ok(result) if result.size == expected => {}
            Ok(result) => failures.push(format!(
                "{p}: quasi maximum {} != {expected}",
                result.size
            )),
            Err(e) => failures.push(format!("{p}: {e}")),
        }
    }
    report(
        "criterion 5 (quasi-interval structure, n <= 8)",
        &format!("{size_instances} size instances, {pattern_instances} pattern instances"),
        failures,
        started,
    );
}

#[test]
fn criterion_6_mapping_identities() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut instances = 0;
    for p in valid_params(5) {
        instances += 1;
        match verify_counting_identities(&Family::enumerate(p), 6, 20240) {
            Ok(report) => {
                if !report.identity_holds {
                    failures.push(format!(
                        "{p}: {} != {} * {}",
                        report.total_mappings,
                        p.family_size(),
                        report.f_value
                    ));
                }
            }
            Err(e) => failures.push(format!("{p}: {e}")),
        }
    }
    // spot mapping counts pinned by full enumeration
    for (n, p, s, f) in [(2, 1, 0, 4u64), (3, 1, 1, 4), (4, 1, 2, 8)] {
        let pr = params(n, p, s);
        let report = verify_counting_identities(&Family::enumerate(pr), 6, 0).unwrap();
        if report.f_value != f {
            failures.push(format!("{pr}: f = {} != {f}", report.f_value));
        }
    }
    report(
        "criterion 6 (mapping identities, n <= 5)",
        &format!("{instances} instances + 3 spot checks"),
        failures,
        started,
    );
}

/// Raw double count on one subfamily: the identity must hold, the
/// per-mapping cap must hold, and for intersecting subfamilies the chain
/// must reproduce exactly the star bound.
fn check_chain(failures: &mut Vec<String>, family: &Family, tag: &str, subfamily: &[usize]) {
    let p = family.params();
    match double_count(family, subfamily, 6) {
        Ok(report) => {
            if !report.identity_ok {
                failures.push(format!(
                    "{p} {tag}: S = {} != |F| Q f = {}",
                    report.pair_count,
                    subfamily.len() as u64 * report.quasi_count as u64 * report.f_value
                ));
            }
            if !report.bound_ok {
                failures.push(format!("{p} {tag}: mapping cap violated"));
            }
            if report.subfamily_intersecting {
                let bound = report.derived_bound();
                if bound != p.star_size() {
                    failures.push(format!(
                        "{p} {tag}: chain bound {bound} != star {}",
                        p.star_size()
                    ));
                }
                if (subfamily.len() as u64) > bound {
                    failures.push(format!(
                        "{p} {tag}: |F| = {} exceeds the chain bound {bound}",
                        subfamily.len()
                    ));
                }
            }
        }
        Err(e) => failures.push(format!("{p} {tag}: {e}")),
    }
}

#[test]
fn criterion_7_double_count_chain() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut instances = 0;
    let mut subfamilies = 0;
    for p in valid_params(4) {
        if p.is_degenerate() {
            // the chain is the proof device for the EKR range only
            continue;
        }
        instances += 1;
        let family = Family::enumerate(p);
        for vertex in 0..p.vertex_count() {
            let star = family.star(vertex).unwrap();
            check_chain(&mut failures, &family, &format!("star at {vertex}"), &star);
            subfamilies += 1;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7_000 + p.n() as u64);
        for i in 0..20 {
            let subfamily =
                ekr_core::family::sample_intersecting_subfamily(&family, &mut rng);
            check_chain(&mut failures, &family, &format!("random {i}"), &subfamily);
            subfamilies += 1;
        }
        // equality at a maximum family
        let best = max_intersecting(&family, 4096, true).unwrap();
        if best.size as u64 != p.star_size() {
            failures.push(format!("{p}: maximum {} != star", best.size));
        }
        check_chain(&mut failures, &family, "maximum", &best.witness);
        subfamilies += 1;
    }
    report(
        "criterion 7 (double-count chain, n <= 4)",
        &format!("{instances} instances, {subfamilies} subfamilies"),
        failures,
        started,
    );
}

#[test]
fn criterion_8_solver_soundness() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut graphs = 0;
    for density in [0.2, 0.5, 0.8] {
        for seed in 0..34u64 {
            graphs += 1;
            let order = 5 + (seed as usize * 7 + (density * 10.0) as usize) % 14; // 5..=18
            let graph = random_graph(order, density, 1000 * seed + 1);
            let solved = max_clique(&graph, &[]);
            let oracle = naive_max_clique(&graph).unwrap();
            if solved.size != oracle {
                failures.push(format!(
                    "order {order} density {density} seed {seed}: {} != {oracle}",
                    solved.size
                ));
            }
        }
    }

    // seed invariance across the EKR-sweep instances
    let mut instances = 0;
    for p in valid_params(6) {
        if p.is_degenerate() || p.family_size() > 256 {
            continue;
        }
        instances += 1;
        let family = Family::enumerate(p);
        let seeded = max_intersecting(&family, 4096, true).unwrap();
        let bare = max_intersecting(&family, 4096, false).unwrap();
        if seeded.size != bare.size {
            failures.push(format!(
                "{p}: seeded {} != unseeded {}",
                seeded.size, bare.size
            ));
        }
        if let Ok((verdict, _)) = verify_ekr_instance(p, 4096, true) {
            if !verdict.holds {
                failures.push(format!("{p}: verdict does not hold"));
            }
        }
    }
    report(
        "criterion 8 (solver soundness)",
        &format!("{graphs} random graphs, {instances} seed-invariance instances"),
        failures,
        started,
    );
}

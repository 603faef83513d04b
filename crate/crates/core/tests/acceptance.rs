//! Acceptance suite: one PASS/FAIL line per criterion on stderr, then an
//! assertion so a failing criterion fails the test.
//!
//! Every comparison is exact (tolerance zero). Runtime ceilings are pinned
//! below in seconds.

use std::io::Write;
use std::time::{Duration, Instant};

use forge_core::battery::{
    closed_forms, eigenbasis_battery, extraction_instances, run_extraction, specialization_hom, star_laws,
    symbol_laws, LAW_CONFIGS,
};
use forge_core::freecert::{pair_images, relation_search, threads_from_env, SANITY_PAIRS};
use forge_core::mnseries::{check_pullback, fixing_involution, homomorphism_suite, transport_instances, CrossedProductCtx};

const LAW_TRIPLES: usize = 1000;
const LAW_LIMIT: Duration = Duration::from_secs(60);
const HOM_PAIRS: usize = 500;
const HOM_LIMIT: Duration = Duration::from_secs(120);
const STAR_DEGREES: [u64; 2] = [2, 3];
const SEARCH_LIMIT: Duration = Duration::from_secs(300);
const MIN_EXTRACTIONS: usize = 6;
const EIGEN_MATRICES: usize = 50;
const EIGEN_MAX_N: usize = 6;
const PHI_SAMPLES: usize = 200;
const PHI_LIMIT: Duration = Duration::from_secs(120);
const FRONTIER: &str = "x^3";
const SEED: u64 = 20240611;

fn verdict(n: u8, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {}: {} ({})", n, status, detail);
    assert!(ok, "criterion {} failed: {}", n, detail);
}

#[test]
fn criterion_1_symbol_laws() {
    let mut notes = Vec::new();
    let mut ok = true;
    let total = Instant::now();
    for (p, q) in LAW_CONFIGS {
        let start = Instant::now();
        let out = symbol_laws(p, q, LAW_TRIPLES, SEED).expect("algebra builds");
        let took = start.elapsed();
        ok &= out.passed;
        notes.push(format!("p={} q={}: {} checks in {:.1}s{}", p, q, out.samples, took.as_secs_f64(),
            out.counterexample.map(|c| format!(" [{}]", c)).unwrap_or_default()));
    }
    ok &= total.elapsed() < LAW_LIMIT;
    verdict(1, ok, &notes.join("; "));
}

#[test]
fn criterion_2_specialization() {
    let mut notes = Vec::new();
    let mut ok = true;
    let total = Instant::now();
    for (p, q) in LAW_CONFIGS {
        let start = Instant::now();
        let out = specialization_hom(p, q, HOM_PAIRS, SEED).expect("specializer builds");
        let took = start.elapsed();
        ok &= out.passed;
        notes.push(format!("p={} q={}: {} checks in {:.1}s{}", p, q, out.samples, took.as_secs_f64(),
            out.counterexample.map(|c| format!(" [{}]", c)).unwrap_or_default()));
    }
    ok &= total.elapsed() < HOM_LIMIT;
    verdict(2, ok, &notes.join("; "));
}

#[test]
fn criterion_3_closed_forms() {
    let results = closed_forms(0).expect("anchors build");
    let shown: Vec<_> = results.iter().filter(|r| r.displayed).collect();
    let missed: Vec<&str> = shown.iter().filter(|r| !r.matched).map(|r| r.id.as_str()).collect();
    let hidden_ok = results.iter().filter(|r| !r.displayed).all(|r| r.matched);
    let detail = format!(
        "{}/{} displayed forms match{}; corrected variants {}",
        shown.len() - missed.len(),
        shown.len(),
        if missed.is_empty() { String::new() } else { format!(", mismatched: {}", missed.join(", ")) },
        if hidden_ok { "match" } else { "mismatch" }
    );
    verdict(3, missed.is_empty() && hidden_ok, &detail);
}

#[test]
fn criterion_4_star_laws() {
    let out = star_laws(0, &STAR_DEGREES).expect("pairs build");
    verdict(4, out.passed, &format!("{} elements checked{}", out.samples,
        out.counterexample.map(|c| format!(" [{}]", c)).unwrap_or_default()));
}

#[test]
fn criterion_5_freeness_evidence() {
    let threads = threads_from_env();
    let runs: [(&str, Option<u64>, usize); 5] = [
        ("main-1-symmetric", Some(2), 6),
        ("normal-1", None, 5),
        ("normal-2", None, 5),
        ("normal-3", None, 5),
        ("main-1-unitary", Some(3), 5),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (id, q, l) in runs {
        let (a, b, _) = pair_images(id, 0, q, false).expect("pair images");
        let start = Instant::now();
        let out = relation_search(&a, &b, l, threads).expect("search runs");
        let took = start.elapsed();
        let free = out.witness.is_none();
        ok &= free && took < SEARCH_LIMIT;
        notes.push(format!("{} L={}: {} in {:.1}s", id, l, if free { "no relation" } else { "RELATION" }, took.as_secs_f64()));
    }
    for (id, k) in SANITY_PAIRS {
        let (a, b, _) = pair_images(id, 0, None, false).expect("sanity images");
        let predicted = k as usize + 1;
        let out = relation_search(&a, &b, predicted, threads).expect("search runs");
        let found = out.witness.as_ref().map(|w| w.len());
        ok &= found == Some(predicted);
        notes.push(format!("{}: witness length {:?}, predicted {}", id, found, predicted));
    }
    verdict(5, ok, &notes.join("; "));
}

#[test]
fn criterion_6_extraction() {
    let insts = extraction_instances().expect("instances build");
    let mut good = 0;
    let mut k_route = false;
    let mut notes = Vec::new();
    for inst in &insts {
        match run_extraction(inst) {
            Ok((e, verified)) => {
                good += usize::from(verified);
                k_route |= verified && e.route.contains('K');
                notes.push(format!("{}: case {} via {}{}", inst.name, e.case_tag, e.route, if verified { "" } else { " FAILED" }));
            }
            Err(err) => notes.push(format!("{}: {}", inst.name, err)),
        }
    }
    verdict(6, good >= MIN_EXTRACTIONS && good == insts.len() && k_route, &notes.join("; "));
}

#[test]
fn criterion_7_eigenbasis() {
    let out = eigenbasis_battery(EIGEN_MATRICES, EIGEN_MAX_N, SEED);
    verdict(7, out.passed && out.samples == EIGEN_MATRICES, &format!("{} matrices{}", out.samples,
        out.counterexample.map(|c| format!(" [{}]", c)).unwrap_or_default()));
}

#[test]
fn criterion_8_phi_homomorphism() {
    let ctx = CrossedProductCtx::free_mod_gamma3();
    let frontier = ctx.group().parse_word(FRONTIER).expect("frontier");
    let start = Instant::now();
    let r = homomorphism_suite(&ctx, SEED, PHI_SAMPLES, &frontier);
    let took = start.elapsed();
    let ok = r.passed() && !r.vacuous() && r.tau_samples == PHI_SAMPLES && r.hom_samples == PHI_SAMPLES && took < PHI_LIMIT;
    let first = r.failures.first().map(|w| format!(" [{}: {}]", w.check, w.detail)).unwrap_or_default();
    verdict(8, ok, &format!("{} τ samples, {} products, {} coefficients compared in {:.1}s{}",
        r.tau_samples, r.hom_samples, r.compared, took.as_secs_f64(), first));
}

#[test]
fn criterion_9_pullback() {
    let ctx = CrossedProductCtx::free_mod_gamma3();
    let inv = fixing_involution();
    let frontier = ctx.group().parse_word(FRONTIER).expect("frontier");
    let mut ok = true;
    let mut notes = Vec::new();
    for inst in transport_instances(&ctx).expect("instances") {
        let c = check_pullback(&ctx, &inv, &inst, &frontier).expect("pullback computes");
        let required_symmetric = inst.name != "rational";
        ok &= c.passed() && !c.vacuous() && (!required_symmetric || c.symmetric == Some(true));
        notes.push(format!("{}: {} coefficients, star {}", c.name, c.compared,
            match c.symmetric { Some(true) => "fixed", Some(false) => "MOVED", None => "n/a (truncated)" }));
    }
    verdict(9, ok, &notes.join("; "));
}

//! Exit criteria. Each test prints one `PASS`/`FAIL` line; run with
//! `cargo test -p rebit-core --test acceptance -- --nocapture` to see them.

mod common;

use std::time::Instant;

use rebit_core::*;

use common::{full_corpus, product_mixture, random_corpus};

fn verdict(id: u32, name: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {name} ({detail})");
    assert!(pass, "criterion {id} failed: {detail}");
}

#[test]
fn criterion_1_alpha_family() {
    let start = Instant::now();
    let mut worst = [0.0_f64; 4];
    for k in 0..=10 {
        let alpha = k as f64 / 10.0;
        let rho = alpha_state(alpha).unwrap();
        let r = measure_report(&rho).unwrap();
        worst[0] = worst[0].max((r.concurrence_real - alpha).abs());
        worst[1] = worst[1].max(r.wootters_concurrence);
        let ev = sym_eig(&tau(&rho).unwrap()).eigenvalues;
        let (lo, hi) = ((alpha - 1.0) / 4.0, (alpha + 1.0) / 4.0);
        for (got, want) in ev.iter().zip([lo, lo, hi, hi]) {
            worst[2] = worst[2].max((got - want).abs());
        }
        worst[3] = worst[3].max((r.pt_min_eig - (1.0 - alpha) / 4.0).abs());
    }
    let pass = worst[0] <= 1e-12 && worst[1] <= 1e-10 && worst[2] <= 1e-10 && worst[3] <= 1e-10;
    verdict(
        1,
        "alpha-family reproduction",
        pass,
        format!(
            "max |C-α| {:.1e}, max C_W {:.1e}, max τ-eig err {:.1e}, max PT err {:.1e}, {:?}",
            worst[0],
            worst[1],
            worst[2],
            worst[3],
            start.elapsed()
        ),
    );
}

#[test]
fn criterion_2_example_state() {
    let mut coords = PauliCoordinates::identity_only();
    coords.anti = 1.0;
    let rho = from_pauli(&coords).unwrap();
    let r = measure_report(&rho).unwrap();
    let pass = (r.concurrence_real - 1.0).abs() <= 1e-12
        && (r.eof_real - 1.0).abs() <= 1e-12
        && r.wootters_concurrence <= 1e-10
        && r.classification == Classification::RealBoundEntangled;
    verdict(
        2,
        "(I⊗I + σy⊗σy)/4 is maximally real-entangled yet complex-separable",
        pass,
        format!(
            "C {}, E_R {}, C_W {:.1e}, {}",
            r.concurrence_real, r.eof_real, r.wootters_concurrence, r.classification
        ),
    );
}

#[test]
fn criterion_3_closed_form_vs_oracle() {
    let start = Instant::now();
    let mut min_gap = f64::INFINITY;
    let mut max_gap = f64::NEG_INFINITY;
    let mut failures = Vec::new();
    for rank in 1..=4usize {
        for i in 0..25u64 {
            let seed = 50_000 + 100 * rank as u64 + i;
            let rho = random_state(seed, rank).unwrap();
            let closed = eof_real(&rho);
            let oracle = brute_force_min_eof(&rho, rank + 2, 32, seed).unwrap();
            let gap = oracle.value - closed;
            min_gap = min_gap.min(gap);
            max_gap = max_gap.max(gap);
            if !(-1e-9..=1e-3).contains(&gap) {
                failures.push((seed, rank, gap));
            }
        }
    }
    let elapsed = start.elapsed();
    verdict(
        3,
        "closed-form EoF vs brute-force ensemble search, 100 states",
        failures.is_empty() && elapsed.as_secs() <= 300,
        format!("gap range [{min_gap:.2e}, {max_gap:.2e}], failures {failures:?}, {elapsed:?}"),
    );
}

#[test]
fn criterion_4_flatten_optimality() {
    let start = Instant::now();
    let (mut dev, mut recon, mut avg) = (0.0_f64, 0.0_f64, 0.0_f64);
    for seed in 0..1000u64 {
        let rho = random_state(70_000 + seed, 1 + (seed % 4) as usize).unwrap();
        let f = flatten(&rho).unwrap();
        let direct = f
            .ensemble
            .normalized_preconcurrences()
            .into_iter()
            .map(|c| (c.unwrap() - tau(&rho).unwrap().trace()).abs())
            .fold(0.0, f64::max);
        dev = dev.max(direct);
        recon = recon.max(f.ensemble.reconstruction_error(&rho));
        avg = avg.max((average_concurrence(&f.ensemble) - concurrence_real(&rho)).abs());
    }
    let elapsed = start.elapsed();
    verdict(
        4,
        "flattened ensembles are optimal, 1000 states",
        dev <= 1e-9 && recon <= 1e-12 && avg <= 1e-9 && elapsed.as_secs() <= 30,
        format!("max deviation {dev:.1e}, max reconstruction {recon:.1e}, max ⟨C⟩ err {avg:.1e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_5_pure_state_consistency() {
    let mut worst = 0.0_f64;
    for seed in 0..1000u64 {
        let psi = random_pure_state(80_000 + seed);
        let rho = DensityOperator::pure(&psi);
        let marginal_entropy = {
            let spec = sym_eig(&marginal(&rho, Subsystem::A));
            spec.eigenvalues
                .iter()
                .map(|&p| if p > 0.0 { -p * p.log2() } else { 0.0 })
                .sum::<f64>()
        };
        let s = schmidt(&psi);
        let via_curve = eof_curve((2.0 * s.a1 * s.a2).min(1.0)).unwrap();
        worst = worst.max((marginal_entropy - via_curve).abs());
    }
    verdict(
        5,
        "marginal entropy equals ℰ(2 a1 a2) on 1000 pure states",
        worst <= 1e-10,
        format!("max error {worst:.1e}"),
    );
}

#[test]
fn criterion_6_cross_field_inequality() {
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    let corpus = full_corpus();
    for rho in &corpus {
        let r = measure_report(rho).unwrap();
        let d1 = r.wootters_concurrence - r.concurrence_real;
        let d2 = r.eof_complex - r.eof_real;
        worst = worst.max(d1).max(d2);
        if d1 > 1e-10 || d2 > 1e-10 {
            violations += 1;
        }
    }
    verdict(
        6,
        "C_W ≤ C and ℰ(C_W) ≤ ℰ(C)",
        violations == 0,
        format!(
            "{} states, {violations} violations, max excess {worst:.1e}",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_7_separability_equivalence() {
    let corpus = full_corpus();
    let mut mismatches = 0;
    for rho in &corpus {
        let separable = concurrence_real(rho) <= 1e-12;
        let pt = partial_transpose(rho, Subsystem::A);
        let invariant = (&**rho.matrix() - &*pt).frobenius_norm() <= 1e-12;
        if separable != invariant {
            mismatches += 1;
        }
    }
    let mut worst_mixture = 0.0_f64;
    for seed in 0..1000u64 {
        worst_mixture = worst_mixture.max(concurrence_real(&product_mixture(90_000 + seed)));
    }
    verdict(
        7,
        "C = 0 iff ρ = ρ^T_A; product mixtures have C = 0",
        mismatches == 0 && worst_mixture <= 1e-10,
        format!(
            "{} states, {mismatches} mismatches, max C over 1000 product mixtures {worst_mixture:.1e}",
            corpus.len()
        ),
    );
}

#[test]
fn criterion_8_horodecki_consistency() {
    let corpus = full_corpus();
    let (mut checked, mut skipped, mut mismatches) = (0, 0, 0);
    for rho in &corpus {
        let pt = peres_min_eig(rho);
        let cw = wootters_concurrence(rho).unwrap();
        if pt.abs() <= 1e-10 || cw.abs() <= 1e-10 && cw != 0.0 {
            skipped += 1;
            continue;
        }
        checked += 1;
        if (pt < -1e-10) != (cw > 1e-10) {
            mismatches += 1;
        }
    }
    verdict(
        8,
        "negative partial transpose iff C_W > 0",
        mismatches == 0 && checked > 0,
        format!("{checked} checked, {skipped} near the boundary, {mismatches} mismatches"),
    );
}

#[test]
fn criterion_9_near_maximally_mixed() {
    let mut rows = Vec::new();
    let mut pass = true;
    for eps in [1e-1, 1e-2, 1e-3] {
        let rho = alpha_state(2.0 * eps).unwrap();
        let r = measure_report(&rho).unwrap();
        let distance = rho.frobenius_distance(&DensityOperator::maximally_mixed());
        pass &= (r.concurrence_real - 2.0 * eps).abs() <= 1e-12
            && r.concurrence_real > CONCURRENCE_TOLERANCE
            && r.pt_min_eig >= 0.0
            && r.classification == Classification::RealBoundEntangled;
        rows.push(format!(
            "ε={eps:e}: C={:.3e}, PT min {:.4}, ‖ρ - I/4‖={distance:.1e}",
            r.concurrence_real, r.pt_min_eig
        ));
    }
    verdict(
        9,
        "real-entangled, complex-separable states arbitrarily close to I/4",
        pass,
        rows.join("; "),
    );
}

#[test]
fn random_corpus_is_valid() {
    assert_eq!(random_corpus().len(), 1000);
}

use std::fmt::Write as _;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rebit_core::{
    alpha_state, brute_force_min_eof, eof_real, flatten, measure_report, DensityOperator,
    MeasureReport, RealMatrix, SymmetricMatrix, CONCURRENCE_TOLERANCE,
};
use serde_json::json;

use crate::output::{csv_line, emit, human, machine};
use crate::state_file::StateFile;
use crate::{CliError, Format};

/// Oracle results outside `[GAP_LO, GAP_HI]` of the closed form fail the run.
pub const GAP_LO: f64 = -1e-9;
pub const GAP_HI: f64 = 1e-3;
const MAX_RESAMPLES: usize = 1000;

fn load(path: &Path) -> Result<DensityOperator, CliError> {
    StateFile::read(path)?.to_density()
}

fn matrix_json(rho: &DensityOperator) -> serde_json::Value {
    json!(rho.to_rows())
}

pub fn measure(input: &Path, format: Format, output: Option<&Path>) -> Result<(), CliError> {
    let rho = load(input)?;
    let r = measure_report(&rho).map_err(CliError::Invalid)?;
    emit(output, &render_report(&rho, &r, format))
}

pub const REPORT_HEADER: [&str; 10] = [
    "concurrence_real",
    "wootters_concurrence",
    "eof_real",
    "eof_complex",
    "nu1",
    "nu2",
    "nu3",
    "nu4",
    "pt_min_eig",
    "classification",
];

fn render_report(rho: &DensityOperator, r: &MeasureReport, format: Format) -> String {
    match format {
        Format::Text => {
            let nu: Vec<String> = r.tau_spectrum.iter().map(|&x| human(x)).collect();
            let mut s = String::new();
            let _ = writeln!(s, "real concurrence C      {}", human(r.concurrence_real));
            let _ = writeln!(
                s,
                "Wootters concurrence    {}",
                human(r.wootters_concurrence)
            );
            let _ = writeln!(s, "real EoF (bits)         {}", human(r.eof_real));
            let _ = writeln!(s, "complex EoF (bits)      {}", human(r.eof_complex));
            let _ = writeln!(s, "tau spectrum            {}", nu.join(" "));
            let _ = writeln!(s, "partial transpose min   {}", human(r.pt_min_eig));
            let _ = writeln!(s, "classification          {}", r.classification);
            s
        }
        Format::Json => {
            let mut v = serde_json::to_value(r).expect("report serializes");
            v["matrix"] = matrix_json(rho);
            let mut s = serde_json::to_string_pretty(&v).expect("json");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut row = vec![
                machine(r.concurrence_real),
                machine(r.wootters_concurrence),
                machine(r.eof_real),
                machine(r.eof_complex),
            ];
            row.extend(r.tau_spectrum.iter().map(|&x| machine(x)));
            row.push(machine(r.pt_min_eig));
            row.push(r.classification.to_string());
            let header: Vec<String> = REPORT_HEADER.iter().map(|s| s.to_string()).collect();
            csv_line(&header) + &csv_line(&row)
        }
    }
}

pub fn alpha_sweep(steps: usize, output: Option<&Path>) -> Result<(), CliError> {
    if steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {steps}"
        )));
    }
    let mut out =
        csv_line(&["alpha", "C", "C_W", "E_R", "pt_min_eig", "classification"].map(String::from));
    for k in 0..steps {
        let alpha = k as f64 / (steps - 1) as f64;
        let rho = alpha_state(alpha).map_err(CliError::Invalid)?;
        let r = measure_report(&rho).map_err(CliError::Invalid)?;
        out += &csv_line(&[
            machine(alpha),
            machine(r.concurrence_real),
            machine(r.wootters_concurrence),
            machine(r.eof_real),
            machine(r.pt_min_eig),
            r.classification.to_string(),
        ]);
    }
    emit(output, &out)
}

pub fn decompose(input: &Path, format: Format, output: Option<&Path>) -> Result<(), CliError> {
    let rho = load(input)?;
    let f = flatten(&rho).map_err(CliError::Invalid)?;
    let members: Vec<(f64, [f64; 4], f64)> = f
        .ensemble
        .members()
        .iter()
        .zip(f.ensemble.probabilities())
        .zip(f.ensemble.normalized_preconcurrences())
        .map(|((w, p), c)| {
            let amp = w.map(|x| x / p.sqrt());
            (p, amp, c.expect("flatten drops empty members"))
        })
        .collect();

    let text = match format {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "target preconcurrence (tr tau)  {}", human(f.target));
            let _ = writeln!(s, "rotations                       {}", f.iterations);
            let _ = writeln!(
                s,
                "max deviation                   {}",
                human(f.max_deviation)
            );
            for (j, (p, amp, c)) in members.iter().enumerate() {
                let amps: Vec<String> = amp.iter().map(|&x| human(x)).collect();
                let _ = writeln!(
                    s,
                    "member {j}: p = {}  amplitudes [{}]  preconcurrence {}",
                    human(*p),
                    amps.join(", "),
                    human(*c)
                );
            }
            s
        }
        Format::Json => {
            let list: Vec<serde_json::Value> = members
                .iter()
                .map(
                    |(p, amp, c)| json!({"probability": p, "amplitudes": amp, "preconcurrence": c}),
                )
                .collect();
            let v = json!({
                "matrix": matrix_json(&rho),
                "target": f.target,
                "iterations": f.iterations,
                "max_deviation": f.max_deviation,
                "members": list,
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Csv => {
            let mut s = csv_line(
                &[
                    "member",
                    "probability",
                    "a00",
                    "a01",
                    "a10",
                    "a11",
                    "preconcurrence",
                    "target",
                ]
                .map(String::from),
            );
            for (j, (p, amp, c)) in members.iter().enumerate() {
                let mut row = vec![j.to_string(), machine(*p)];
                row.extend(amp.iter().map(|&x| machine(x)));
                row.push(machine(*c));
                row.push(machine(f.target));
                s += &csv_line(&row);
            }
            s
        }
    };
    emit(output, &text)
}

pub struct OracleArgs<'a> {
    pub input: &'a Path,
    pub m: Option<usize>,
    pub restarts: usize,
    pub seed: u64,
    pub format: Format,
    pub output: Option<&'a Path>,
}

pub fn oracle(args: OracleArgs<'_>) -> Result<(), CliError> {
    let rho = load(args.input)?;
    let rank = rho.rank();
    let m = args
        .m
        .unwrap_or((rank + 2).min(rebit_core::ensembles::MAX_ORACLE_MEMBERS));
    if args.restarts == 0 {
        return Err(CliError::Usage("--restarts must be at least 1".into()));
    }
    let closed = eof_real(&rho);
    let found = brute_force_min_eof(&rho, m, args.restarts, args.seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let gap = found.value - closed;

    let text = match args.format {
        Format::Text => format!(
            "closed-form E_R {}  oracle {}  gap {}  (rank {rank}, m {m}, restarts {}, seed {})\n",
            human(closed),
            human(found.value),
            human(gap),
            args.restarts,
            args.seed
        ),
        Format::Json => {
            let v = json!({
                "eof_real": closed,
                "oracle": found.value,
                "gap": gap,
                "rank": rank,
                "m": m,
                "restarts": args.restarts,
                "seed": args.seed,
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Csv => {
            csv_line(
                &["eof_real", "oracle", "gap", "rank", "m", "restarts", "seed"].map(String::from),
            ) + &csv_line(&[
                machine(closed),
                machine(found.value),
                machine(gap),
                rank.to_string(),
                m.to_string(),
                args.restarts.to_string(),
                args.seed.to_string(),
            ])
        }
    };
    emit(args.output, &text)?;
    if (GAP_LO..=GAP_HI).contains(&gap) {
        Ok(())
    } else {
        Err(CliError::Gap(gap))
    }
}

/// `I/4 + Δ` with `Δ` symmetric, traceless, `‖Δ‖_F = epsilon`, redrawn until
/// the result is a valid state. Past `sqrt(3)/2` no such state exists, so after
/// `MAX_RESAMPLES` rejections the last draw is projected instead: negative
/// eigenvalues are clipped and the trace restored to one.
fn perturbed_state(rng: &mut ChaCha8Rng, epsilon: f64) -> Result<DensityOperator, CliError> {
    let mut last = None;
    for _ in 0..MAX_RESAMPLES {
        let draw: Vec<f64> = (0..16).map(|_| StandardNormal.sample(rng)).collect();
        let g = SymmetricMatrix::symmetrize(RealMatrix::new(4, draw).expect("finite"));
        let traceless = &*g - &RealMatrix::identity(4).scale(g.trace() / 4.0);
        let norm = traceless.frobenius_norm();
        if norm == 0.0 {
            continue;
        }
        let candidate = &RealMatrix::identity(4).scale(0.25) + &traceless.scale(epsilon / norm);
        match DensityOperator::from_matrix(candidate.clone()) {
            Ok(rho) => return Ok(rho),
            Err(_) => last = Some(candidate),
        }
    }
    let candidate = last.expect("a nonzero draw");
    let clipped = SymmetricMatrix::symmetrize(candidate)
        .eig()
        .reconstruct_with(|x| x.max(0.0));
    let trace = clipped.trace();
    DensityOperator::from_matrix(clipped.scale(1.0 / trace).into_matrix())
        .map_err(CliError::Invalid)
}

pub const SCAN_HEADER: [&str; 7] = [
    "epsilon",
    "fraction_real_entangled",
    "fraction_complex_entangled",
    "witness_alpha",
    "witness_C",
    "witness_C_W",
    "witness_pt_min_eig",
];

pub fn scan(
    epsilons: &[f64],
    samples: usize,
    seed: u64,
    output: Option<&Path>,
) -> Result<(), CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if epsilons.is_empty() {
        return Err(CliError::Usage(
            "--epsilons needs at least one value".into(),
        ));
    }
    if let Some(bad) = epsilons.iter().find(|e| !(**e > 0.0 && **e <= 1.0)) {
        return Err(CliError::Usage(format!("epsilon {bad} is outside (0, 1]")));
    }

    let mut out = csv_line(&SCAN_HEADER.map(String::from));
    for (index, &epsilon) in epsilons.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index as u64);
        let (mut real, mut complex) = (0usize, 0usize);
        for _ in 0..samples {
            let rho = perturbed_state(&mut rng, epsilon)?;
            let r = measure_report(&rho).map_err(CliError::Invalid)?;
            real += usize::from(r.concurrence_real > CONCURRENCE_TOLERANCE);
            complex += usize::from(r.pt_min_eig < -CONCURRENCE_TOLERANCE);
        }

        let alpha = (2.0 * epsilon).min(1.0);
        let witness = measure_report(&alpha_state(alpha).map_err(CliError::Invalid)?)
            .map_err(CliError::Invalid)?;
        out += &csv_line(&[
            machine(epsilon),
            machine(real as f64 / samples as f64),
            machine(complex as f64 / samples as f64),
            machine(alpha),
            machine(witness.concurrence_real),
            machine(witness.wootters_concurrence),
            machine(witness.pt_min_eig),
        ]);
    }
    emit(output, &out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbations_have_requested_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for eps in [1e-3, 0.1, 0.5] {
            let rho = perturbed_state(&mut rng, eps).unwrap();
            let d = rho.frobenius_distance(&DensityOperator::maximally_mixed());
            assert!((d - eps).abs() <= 1e-12);
        }
    }

    #[test]
    fn large_radii_fall_back_to_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rho = perturbed_state(&mut rng, 1.0).unwrap();
        let d = rho.frobenius_distance(&DensityOperator::maximally_mixed());
        assert!(d > 0.0 && d <= 0.75f64.sqrt() + 1e-12, "{d}");
    }

    #[test]
    fn tiny_perturbations_stay_complex_separable() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..200 {
            let rho = perturbed_state(&mut rng, 1e-3).unwrap();
            assert!(rebit_core::peres_min_eig(&rho) > 0.0);
        }
    }
}

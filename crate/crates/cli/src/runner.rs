//! Command implementations: compute with the core library, persist
//! artifacts, and pick the exit code. `results.json` and the CSV files are
//! pure functions of the configuration (plus worker-count-independent
//! arithmetic), so repeated runs are byte-identical; wall-clock timings and
//! timestamps go only to `run_manifest.json`.

use std::path::Path;
use std::time::Instant;

use zetilt_core::moments::{
    bchb_main_term, bchb_prime_twist, double_factorial_identity, gaussian_target,
    gcd_sum_exhaustive_rational, gcd_sum_factored_rational, predicted_central_moment,
    repetition_decomposition_check,
};
use zetilt_core::primes::{mertens_l, sieve_primes, PrimeTable};
use zetilt_core::zeta::find_zeros;
use zetilt_core::{
    gonek_check, DistributionReport, Estimate, GridSpec, QuadRule, Quadrature, TwistedMomentSpec,
};

use crate::config::{CliError, CommandKind, RunConfig};
use crate::emit::{utc_now, write_csv, write_json, Cell, Json};

pub const EXIT_OK: u8 = 0;
pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_FLAGGED: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

fn runtime(e: impl std::fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

/// Exit code from the quality flags of everything a run emitted.
pub fn exit_for_flags(any_flagged: bool) -> u8 {
    if any_flagged {
        EXIT_FLAGGED
    } else {
        EXIT_OK
    }
}

pub fn run(config: &RunConfig) -> Result<u8, CliError> {
    std::fs::create_dir_all(&config.out)
        .map_err(|e| CliError::Usage(format!("output dir {}: {e}", config.out.display())))?;

    let started = Instant::now();
    let (code, phases) = match config.command {
        CommandKind::Clt => run_clt(config)?,
        CommandKind::Moments => run_moments(config)?,
        CommandKind::Predict => run_predict(config)?,
        CommandKind::Gonek => run_gonek(config)?,
        CommandKind::Verify => run_verify(config)?,
        CommandKind::Bchb => run_bchb(config)?,
    };

    write_manifest(config, started.elapsed().as_secs_f64(), &phases)?;
    Ok(code)
}

// ---------------------------------------------------------------------------
// shared serialization
// ---------------------------------------------------------------------------

fn report_json(rep: &DistributionReport) -> Json {
    let moments = rep
        .central_moments_w
        .iter()
        .map(|cm| {
            Json::Obj(vec![
                ("k", Json::UInt(cm.k as u64)),
                ("measured", Json::Num(cm.measured)),
                ("predicted", Json::Num(cm.predicted)),
                ("err_est", Json::Num(cm.err_est)),
            ])
        })
        .collect();
    Json::Obj(vec![
        ("mean", Json::Num(rep.mean_w)),
        ("variance", Json::Num(rep.var_w)),
        ("central_moments", Json::Arr(moments)),
        ("ks_distance", Json::Num(rep.ks_distance)),
        ("predicted_mean", Json::Num(rep.predicted_mean)),
        ("predicted_variance", Json::Num(rep.predicted_var)),
        ("normalization", Json::Num(rep.normalization)),
        ("flagged", Json::Bool(rep.flagged)),
        ("n_samples", Json::UInt(rep.n_samples as u64)),
    ])
}

fn estimate_json(est: &Estimate) -> Json {
    Json::Obj(vec![
        ("value", Json::Num(est.value)),
        ("err_est", Json::Num(est.err_est)),
        ("flagged", Json::Bool(est.flagged)),
    ])
}

fn write_histogram(path: &Path, rep: &DistributionReport) -> Result<(), CliError> {
    let rows: Vec<Vec<Cell>> = rep
        .histogram
        .rows()
        .into_iter()
        .map(|(left, right, w, u)| {
            vec![Cell::Num(left), Cell::Num(right), Cell::Num(w), Cell::Num(u)]
        })
        .collect();
    write_csv(
        path,
        &["bin_left", "bin_right", "weighted_mass", "unweighted_mass"],
        &rows,
    )
    .map_err(runtime)
}

/// Prediction table rows for k = 1..=k_max at one (x, T).
fn prediction_rows(
    k_max: u32,
    x: u64,
    table: &PrimeTable,
    t: f64,
) -> Result<(Vec<Vec<Cell>>, Vec<Json>), CliError> {
    let l = mertens_l(table);
    let mut csv = Vec::new();
    let mut json = Vec::new();
    for k in 1..=k_max {
        let predicted = predicted_central_moment(k, table, t).map_err(runtime)?;
        let target = gaussian_target(k, l);
        let residual = predicted - target;
        let scaled = residual / l.powf((k as f64 - 1.0) / 2.0);
        csv.push(vec![
            Cell::UInt(k as u64),
            Cell::UInt(x),
            Cell::Num(l),
            Cell::Num(predicted),
            Cell::Num(target),
            Cell::Num(residual),
            Cell::Num(scaled),
        ]);
        json.push(Json::Obj(vec![
            ("k", Json::UInt(k as u64)),
            ("predicted", Json::Num(predicted)),
            ("gaussian_target", Json::Num(target)),
            ("residual", Json::Num(residual)),
            ("residual_over_l_half_power", Json::Num(scaled)),
        ]));
    }
    Ok((csv, json))
}

const PREDICTION_HEADER: [&str; 7] = [
    "k",
    "x",
    "L",
    "predicted",
    "gaussian_target",
    "residual",
    "residual_over_L_half_power",
];

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

type Phases = Vec<(&'static str, f64)>;

fn timed<T>(phases: &mut Phases, name: &'static str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let value = f();
    phases.push((name, start.elapsed().as_secs_f64()));
    value
}

fn run_clt(config: &RunConfig) -> Result<(u8, Phases), CliError> {
    let mut phases = Phases::new();
    let grid = GridSpec::for_window(config.t, QuadRule::Simpson, config.oversample)
        .map_err(runtime)?;
    let engine = Quadrature::new(config.workers).map_err(runtime)?;

    let weighted =
        timed(&mut phases, "weighted_moments", || engine.weighted_moments_logzeta(&grid, config.k_max))
            .map_err(runtime)?;
    let unweighted =
        timed(&mut phases, "unweighted_baseline", || engine.unweighted_baseline(&grid))
            .map_err(runtime)?;

    let shift = weighted.mean_w - unweighted.mean_w;
    let results = Json::Obj(vec![
        ("command", Json::Str("clt".into())),
        ("t", Json::Num(config.t)),
        ("k_max", Json::UInt(config.k_max as u64)),
        ("oversample", Json::Num(config.oversample)),
        ("rule", Json::Str("simpson".into())),
        ("grid_points", Json::UInt(grid.n_points)),
        ("weighted", report_json(&weighted)),
        ("unweighted", report_json(&unweighted)),
        (
            "measure_shift",
            Json::Obj(vec![
                ("measured", Json::Num(shift)),
                ("predicted", Json::Num(weighted.predicted_mean)),
            ]),
        ),
        (
            "histogram",
            Json::Obj(vec![
                ("file", Json::Str("histogram.csv".into())),
                ("center", Json::Num(weighted.predicted_mean)),
                ("scale", Json::Num(weighted.predicted_var.sqrt())),
            ]),
        ),
    ]);
    write_json(&config.out.join("results.json"), &results).map_err(runtime)?;
    write_histogram(&config.out.join("histogram.csv"), &weighted)?;

    Ok((exit_for_flags(weighted.flagged || unweighted.flagged), phases))
}

fn run_moments(config: &RunConfig) -> Result<(u8, Phases), CliError> {
    let mut phases = Phases::new();
    let x = config.x.expect("validated");
    let grid = GridSpec::for_window(config.t, QuadRule::Simpson, config.oversample)
        .map_err(runtime)?;
    let engine = Quadrature::new(config.workers).map_err(runtime)?;
    let table = sieve_primes(x).map_err(runtime)?;

    let rep = timed(&mut phases, "weighted_moments_re_p", || {
        engine.weighted_moments_re_p(&grid, &table, config.k_max)
    })
    .map_err(runtime)?;
    let diff: Vec<Estimate> = timed(&mut phases, "difference_moments", || {
        [1u32, 2]
            .iter()
            .map(|&k| engine.diff_moment_2k(&grid, &table, k))
            .collect::<Result<_, _>>()
    })
    .map_err(runtime)?;

    let (csv_rows, _) = prediction_rows(config.k_max, x, &table, config.t)?;

    let diff_json = diff
        .iter()
        .zip([1u64, 2])
        .map(|(est, k)| {
            Json::Obj(vec![("k", Json::UInt(k)), ("estimate", estimate_json(est))])
        })
        .collect();
    let results = Json::Obj(vec![
        ("command", Json::Str("moments".into())),
        ("t", Json::Num(config.t)),
        ("x", Json::UInt(x)),
        ("mertens_l", Json::Num(mertens_l(&table))),
        ("k_max", Json::UInt(config.k_max as u64)),
        ("oversample", Json::Num(config.oversample)),
        ("grid_points", Json::UInt(grid.n_points)),
        ("re_p", report_json(&rep)),
        ("difference_moments", Json::Arr(diff_json)),
        (
            "histogram",
            Json::Obj(vec![
                ("file", Json::Str("histogram.csv".into())),
                ("center", Json::Num(rep.predicted_mean)),
                ("scale", Json::Num(rep.predicted_var.sqrt())),
            ]),
        ),
    ]);
    write_json(&config.out.join("results.json"), &results).map_err(runtime)?;
    write_histogram(&config.out.join("histogram.csv"), &rep)?;
    write_csv(&config.out.join("predictions.csv"), &PREDICTION_HEADER, &csv_rows)
        .map_err(runtime)?;

    let any_flagged = rep.flagged || diff.iter().any(|d| d.flagged);
    Ok((exit_for_flags(any_flagged), phases))
}

fn run_predict(config: &RunConfig) -> Result<(u8, Phases), CliError> {
    let mut phases = Phases::new();
    let x = config.x.expect("validated");
    let table = timed(&mut phases, "sieve", || sieve_primes(x)).map_err(runtime)?;
    let (csv_rows, json_rows) =
        timed(&mut phases, "predictions", || prediction_rows(config.k_max, x, &table, config.t))?;

    let results = Json::Obj(vec![
        ("command", Json::Str("predict".into())),
        ("t", Json::Num(config.t)),
        ("x", Json::UInt(x)),
        ("mertens_l", Json::Num(mertens_l(&table))),
        ("k_max", Json::UInt(config.k_max as u64)),
        ("rows", Json::Arr(json_rows)),
    ]);
    write_json(&config.out.join("results.json"), &results).map_err(runtime)?;
    write_csv(&config.out.join("predictions.csv"), &PREDICTION_HEADER, &csv_rows)
        .map_err(runtime)?;
    Ok((EXIT_OK, phases))
}

fn run_gonek(config: &RunConfig) -> Result<(u8, Phases), CliError> {
    let mut phases = Phases::new();
    let zeros =
        timed(&mut phases, "find_zeros", || find_zeros(10.0, config.t)).map_err(runtime)?;
    let reports = timed(&mut phases, "shifted_sums", || {
        config
            .alpha
            .iter()
            .map(|&alpha| gonek_check(&zeros, alpha, config.t))
            .collect::<Result<Vec<_>, _>>()
    })
    .map_err(runtime)?;

    let report_objs = reports
        .iter()
        .map(|r| {
            Json::Obj(vec![
                ("alpha", Json::Num(r.alpha)),
                ("sum", Json::Num(r.sum_value)),
                ("main_term", Json::Num(r.main_term)),
                ("ratio", Json::Num(r.ratio)),
                ("n_zeros", Json::UInt(r.n_zeros as u64)),
            ])
        })
        .collect();
    let results = Json::Obj(vec![
        ("command", Json::Str("gonek".into())),
        ("t", Json::Num(config.t)),
        ("n_zeros", Json::UInt(zeros.found_count as u64)),
        ("expected_zeros", Json::UInt(zeros.expected_count.max(0) as u64)),
        ("complete", Json::Bool(zeros.complete)),
        ("reports", Json::Arr(report_objs)),
    ]);
    write_json(&config.out.join("results.json"), &results).map_err(runtime)?;

    if reports.len() > 1 {
        let rows: Vec<Vec<Cell>> = reports
            .iter()
            .map(|r| {
                vec![
                    Cell::Num(r.alpha),
                    Cell::Num(r.sum_value),
                    Cell::Num(r.main_term),
                    Cell::Num(r.ratio),
                    Cell::UInt(r.n_zeros as u64),
                ]
            })
            .collect();
        write_csv(
            &config.out.join("gonek.csv"),
            &["alpha", "sum", "main_term", "ratio", "n_zeros"],
            &rows,
        )
        .map_err(runtime)?;
    }
    Ok((EXIT_OK, phases))
}

fn run_verify(config: &RunConfig) -> Result<(u8, Phases), CliError> {
    let mut phases = Phases::new();
    let table = sieve_primes(13).map_err(runtime)?;

    let factorial_ok = timed(&mut phases, "double_factorial", || {
        (2..=20)
            .step_by(2)
            .try_fold(true, |acc, k| double_factorial_identity(k).map(|ok| acc && ok))
    })
    .map_err(runtime)?;

    let repetition_ok = timed(&mut phases, "repetition_decomposition", || {
        let mut ok = true;
        for r in 0..=3 {
            for s in 0..=3 {
                if r + s == 0 {
                    continue;
                }
                ok &= repetition_decomposition_check(r, s, &table)?.equal;
            }
        }
        Ok::<bool, zetilt_core::Error>(ok)
    })
    .map_err(runtime)?;

    let gcd_ok = timed(&mut phases, "gcd_oracle_equivalence", || {
        let mut ok = true;
        for r in 0..=5u32 {
            for s in 0..=(5 - r) {
                if r + s == 0 {
                    continue;
                }
                ok &= gcd_sum_exhaustive_rational(r, s, &table)?
                    == gcd_sum_factored_rational(r, s, &table)?;
            }
        }
        Ok::<bool, zetilt_core::Error>(ok)
    })
    .map_err(runtime)?;

    let checks = [
        ("double_factorial_identity_k_le_20", factorial_ok),
        ("repetition_decomposition_r_s_le_3", repetition_ok),
        ("gcd_sum_exhaustive_equals_factored_r_plus_s_le_5", gcd_ok),
    ];
    let all_pass = checks.iter().all(|(_, ok)| *ok);
    let results = Json::Obj(vec![
        ("command", Json::Str("verify".into())),
        (
            "checks",
            Json::Arr(
                checks
                    .iter()
                    .map(|(name, ok)| {
                        Json::Obj(vec![
                            ("name", Json::Str((*name).into())),
                            ("pass", Json::Bool(*ok)),
                        ])
                    })
                    .collect(),
            ),
        ),
        ("all_pass", Json::Bool(all_pass)),
    ]);
    write_json(&config.out.join("results.json"), &results).map_err(runtime)?;

    Ok((if all_pass { EXIT_OK } else { EXIT_RUNTIME }, phases))
}

fn run_bchb(config: &RunConfig) -> Result<(u8, Phases), CliError> {
    let mut phases = Phases::new();
    let t = config.t;
    let mut rows: Vec<(&'static str, f64)> = Vec::new();

    timed(&mut phases, "main_terms", || -> Result<(), CliError> {
        let delta = TwistedMomentSpec::delta_one(t);
        rows.push(("delta_1", bchb_main_term(&delta).map_err(runtime)?));
        for p in [2u64, 3, 5] {
            // prime twists carry theta = 0.45; skip twists outside that range
            if (p as f64) <= t.powf(0.45) {
                rows.push((
                    match p {
                        2 => "prime_twist_2",
                        3 => "prime_twist_3",
                        _ => "prime_twist_5",
                    },
                    bchb_prime_twist(p, t).map_err(runtime)?,
                ));
            }
        }
        if t >= 1.0e3 {
            let coeffs: std::collections::BTreeMap<u64, f64> =
                [1, 2, 3, 5].into_iter().map(|n| (n, 1.0)).collect();
            let spec = TwistedMomentSpec {
                a: coeffs.clone(),
                b: coeffs,
                theta: 0.4,
                sigma: 0.28,
                t,
            };
            rows.push(("unit_coefficients_1_2_3_5", bchb_main_term(&spec).map_err(runtime)?));
        }
        Ok(())
    })?;

    let results = Json::Obj(vec![
        ("command", Json::Str("bchb".into())),
        ("t", Json::Num(t)),
        (
            "main_terms",
            Json::Arr(
                rows.iter()
                    .map(|(name, v)| {
                        Json::Obj(vec![
                            ("spec", Json::Str((*name).into())),
                            ("main_term", Json::Num(*v)),
                        ])
                    })
                    .collect(),
            ),
        ),
    ]);
    write_json(&config.out.join("results.json"), &results).map_err(runtime)?;
    Ok((EXIT_OK, phases))
}

// ---------------------------------------------------------------------------
// manifest
// ---------------------------------------------------------------------------

fn write_manifest(config: &RunConfig, total_secs: f64, phases: &Phases) -> Result<(), CliError> {
    let (unix, iso) = utc_now();
    let timings = phases
        .iter()
        .map(|(name, secs)| Json::Obj(vec![("phase", Json::Str((*name).into())), ("seconds", Json::Num(*secs))]))
        .collect();
    let alpha = config.alpha.iter().map(|&a| Json::Num(a)).collect();
    let manifest = Json::Obj(vec![
        ("command", Json::Str(config.command.name().into())),
        (
            "config",
            Json::Obj(vec![
                ("t", Json::Num(config.t)),
                (
                    "x",
                    match config.x {
                        Some(x) => Json::UInt(x),
                        None => Json::Null,
                    },
                ),
                ("k_max", Json::UInt(config.k_max as u64)),
                ("alpha", Json::Arr(alpha)),
                ("oversample", Json::Num(config.oversample)),
                ("workers", Json::UInt(config.workers as u64)),
                ("precision", Json::Str(config.precision.name().into())),
                ("out", Json::Str(config.out.display().to_string())),
            ]),
        ),
        (
            "versions",
            Json::Obj(vec![
                ("zetilt_cli", Json::Str(env!("CARGO_PKG_VERSION").into())),
                ("zetilt_core", Json::Str(zetilt_core::VERSION.into())),
            ]),
        ),
        ("total_seconds", Json::Num(total_secs)),
        ("timings", Json::Arr(timings)),
        ("unix_time", Json::UInt(unix)),
        ("utc", Json::Str(iso)),
    ]);
    write_json(&config.out.join("run_manifest.json"), &manifest).map_err(runtime)
}

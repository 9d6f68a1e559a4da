//! Run configuration: defaults, flat key=value config files, command-line
//! overrides, and per-command validation. Precedence is defaults < config
//! file < flags; validation failures are usage errors (exit 64), numeric
//! failures during a run are runtime errors (exit 1).

use std::fmt;
use std::path::{Path, PathBuf};

use zetilt_core::primes::schedule_x;

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "ZETILT_OUT";
pub const DEFAULT_OUT: &str = "zetilt-out";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Clt,
    Moments,
    Predict,
    Gonek,
    Verify,
    Bchb,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Clt => "clt",
            CommandKind::Moments => "moments",
            CommandKind::Predict => "predict",
            CommandKind::Gonek => "gonek",
            CommandKind::Verify => "verify",
            CommandKind::Bchb => "bchb",
        }
    }

    fn is_quadrature(self) -> bool {
        matches!(self, CommandKind::Clt | CommandKind::Moments)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended,
}

impl Precision {
    pub fn name(self) -> &'static str {
        match self {
            Precision::Double => "double",
            Precision::Extended => "extended",
        }
    }
}

/// Errors split by exit-code convention: usage problems exit 64, runtime
/// problems exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Runtime(m) => write!(f, "error: {m}"),
        }
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Optional values gathered from one source (config file or flags).
#[derive(Debug, Default, Clone)]
pub struct Overlay {
    pub t: Option<f64>,
    pub x: Option<u64>,
    pub k_max: Option<u32>,
    pub alpha: Option<Vec<f64>>,
    pub oversample: Option<f64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
    pub precision: Option<Precision>,
}

/// A fully resolved run. `x` stays optional: commands that need it fall
/// back to the prime-cutoff schedule and report what they chose.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub t: f64,
    pub x: Option<u64>,
    pub k_max: u32,
    pub alpha: Vec<f64>,
    pub oversample: f64,
    pub workers: usize,
    pub out: PathBuf,
    pub precision: Precision,
}

pub fn parse_precision(s: &str) -> Result<Precision, CliError> {
    match s {
        "double" => Ok(Precision::Double),
        "extended" => Ok(Precision::Extended),
        other => Err(usage(format!(
            "precision must be 'double' or 'extended', got '{other}'"
        ))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.parse()
        .map_err(|_| usage(format!("config key '{key}': cannot parse '{raw}'")))
}

/// Parse a flat `key=value` config file. Blank lines and `#` comments are
/// skipped; unknown keys are rejected so typos do not silently vanish.
pub fn parse_config_file(path: &Path) -> Result<Overlay, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read config file {}: {e}", path.display())))?;
    let mut overlay = Overlay::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            usage(format!(
                "config line {}: expected key=value, got '{line}'",
                lineno + 1
            ))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "t" => overlay.t = Some(parse_num(key, value)?),
            "x" => overlay.x = Some(parse_num(key, value)?),
            "kmax" => overlay.k_max = Some(parse_num(key, value)?),
            "alpha" => {
                let alphas = value
                    .split(',')
                    .map(|a| parse_num("alpha", a.trim()))
                    .collect::<Result<Vec<f64>, _>>()?;
                overlay.alpha = Some(alphas);
            }
            "oversample" => overlay.oversample = Some(parse_num(key, value)?),
            "workers" => overlay.workers = Some(parse_num(key, value)?),
            "out" => overlay.out = Some(PathBuf::from(value)),
            "precision" => overlay.precision = Some(parse_precision(value)?),
            other => {
                return Err(usage(format!("config line {}: unknown key '{other}'", lineno + 1)))
            }
        }
    }
    Ok(overlay)
}

fn merge(base: Overlay, over: Overlay) -> Overlay {
    Overlay {
        t: over.t.or(base.t),
        x: over.x.or(base.x),
        k_max: over.k_max.or(base.k_max),
        alpha: over.alpha.or(base.alpha),
        oversample: over.oversample.or(base.oversample),
        workers: over.workers.or(base.workers),
        out: over.out.or(base.out),
        precision: over.precision.or(base.precision),
    }
}

/// Resolve defaults, config file, and flags into a validated `RunConfig`.
pub fn resolve(
    command: CommandKind,
    file_overlay: Overlay,
    flag_overlay: Overlay,
) -> Result<RunConfig, CliError> {
    let merged = merge(file_overlay, flag_overlay);

    let out = merged
        .out
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));

    let mut config = RunConfig {
        command,
        t: merged.t.unwrap_or(f64::NAN),
        x: merged.x,
        k_max: merged.k_max.unwrap_or(4),
        alpha: merged.alpha.unwrap_or_else(|| vec![0.5]),
        oversample: merged.oversample.unwrap_or(6.0),
        workers: merged.workers.unwrap_or(1),
        out,
        precision: merged.precision.unwrap_or(Precision::Double),
    };
    validate(&mut config)?;
    Ok(config)
}

fn validate(config: &mut RunConfig) -> Result<(), CliError> {
    let cmd = config.command;

    if cmd != CommandKind::Verify {
        if !config.t.is_finite() {
            return Err(usage(format!("{} requires --T", cmd.name())));
        }
        let t_floor = match cmd {
            CommandKind::Clt | CommandKind::Moments => 100.0,
            CommandKind::Gonek => 20.0,
            CommandKind::Bchb => 2.0,
            CommandKind::Predict => 2.0,
            CommandKind::Verify => unreachable!(),
        };
        if config.t < t_floor {
            return Err(usage(format!(
                "{} requires T >= {t_floor}, got {}",
                cmd.name(),
                config.t
            )));
        }
    }

    if !(config.oversample >= 4.0 && config.oversample.is_finite()) {
        return Err(usage(format!(
            "oversample must be >= 4 points per oscillation, got {}",
            config.oversample
        )));
    }
    if !(1..=512).contains(&config.workers) {
        return Err(usage(format!("workers must lie in 1..=512, got {}", config.workers)));
    }

    let k_cap = match cmd {
        CommandKind::Clt => 8,
        CommandKind::Moments | CommandKind::Predict => 6,
        _ => 40,
    };
    if config.k_max == 0 || config.k_max > k_cap {
        return Err(usage(format!(
            "{}: kmax must lie in 1..={k_cap}, got {}",
            cmd.name(),
            config.k_max
        )));
    }

    if config.precision == Precision::Extended && cmd.is_quadrature() {
        return Err(usage(format!(
            "{}: extended precision is not available for quadrature commands \
             (the exact and prediction paths already run in high precision)",
            cmd.name()
        )));
    }

    // prime-cutoff resolution for the commands that take one
    match cmd {
        CommandKind::Moments => {
            let cap = config.t.powf(0.25);
            let x = match config.x {
                Some(x) => x,
                None => schedule_or_usage(config, cap)?,
            };
            if x < 2 || (x as f64) >= cap {
                return Err(usage(format!(
                    "moments requires 2 <= x < T^(1/4) = {cap:.2}, got x = {x}"
                )));
            }
            config.x = Some(x);
        }
        CommandKind::Predict => {
            let x = match config.x {
                Some(x) => x,
                None => schedule_or_usage(config, f64::INFINITY)?,
            };
            if x < 2 {
                return Err(usage(format!("predict requires x >= 2, got {x}")));
            }
            config.x = Some(x);
        }
        _ => {}
    }

    if cmd == CommandKind::Gonek {
        if config.alpha.is_empty() {
            return Err(usage("gonek requires at least one alpha"));
        }
        let cap = config.t.ln() / std::f64::consts::TAU;
        for &alpha in &config.alpha {
            if !alpha.is_finite() || alpha.abs() > cap {
                return Err(usage(format!(
                    "gonek: |alpha| must stay within log(T)/2pi = {cap:.4}, got {alpha}"
                )));
            }
        }
    }

    Ok(())
}

fn schedule_or_usage(config: &RunConfig, cap: f64) -> Result<u64, CliError> {
    let schedule = schedule_x(config.t, config.k_max)
        .map_err(|e| usage(format!("no x given and the schedule is unusable: {e}")))?;
    let x = schedule.x;
    if !schedule.in_asymptotic_regime() || !(2.0..cap).contains(&x) {
        return Err(usage(format!(
            "the schedule x = T^(epsilon/k) gives x = {x:.1} at T = {}, outside the \
             usable range at this height; pass --x explicitly",
            config.t
        )));
    }
    Ok(x.round() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn flags() -> Overlay {
        Overlay::default()
    }

    #[test]
    fn defaults_fill_in() {
        let cfg = resolve(
            CommandKind::Clt,
            flags(),
            Overlay {
                t: Some(1.0e4),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(cfg.k_max, 4);
        assert_eq!(cfg.workers, 1);
        assert_eq!(cfg.oversample, 6.0);
        assert_eq!(cfg.precision, Precision::Double);
    }

    #[test]
    fn flags_override_config_file() {
        let file = Overlay {
            t: Some(1.0e4),
            workers: Some(2),
            ..Default::default()
        };
        let flags = Overlay {
            workers: Some(7),
            ..Default::default()
        };
        let cfg = resolve(CommandKind::Clt, file, flags).unwrap();
        assert_eq!(cfg.workers, 7);
        assert_eq!(cfg.t, 1.0e4);
    }

    #[test]
    fn config_file_round_trips() {
        let dir = std::env::temp_dir().join("zetilt-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# comment\nt = 1e3\nalpha = 0.25, 0.5\nworkers=3").unwrap();
        let overlay = parse_config_file(&path).unwrap();
        assert_eq!(overlay.t, Some(1.0e3));
        assert_eq!(overlay.alpha, Some(vec![0.25, 0.5]));
        assert_eq!(overlay.workers, Some(3));
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        let dir = std::env::temp_dir().join("zetilt-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.conf");
        std::fs::write(&path, "tea=1e3\n").unwrap();
        assert!(matches!(parse_config_file(&path), Err(CliError::Usage(_))));
    }

    #[test]
    fn quadrature_commands_enforce_t_floor_and_precision() {
        let low_t = Overlay {
            t: Some(50.0),
            ..Default::default()
        };
        assert!(matches!(
            resolve(CommandKind::Clt, flags(), low_t),
            Err(CliError::Usage(_))
        ));

        let extended = Overlay {
            t: Some(1.0e4),
            precision: Some(Precision::Extended),
            ..Default::default()
        };
        assert!(matches!(
            resolve(CommandKind::Moments, flags(), extended),
            Err(CliError::Usage(_))
        ));
        let ok = Overlay {
            t: Some(1.0e10),
            x: Some(100),
            precision: Some(Precision::Extended),
            ..Default::default()
        };
        assert!(resolve(CommandKind::Predict, flags(), ok).is_ok());
    }

    #[test]
    fn moments_enforces_quarter_power_cutoff() {
        let bad = Overlay {
            t: Some(1.0e4),
            x: Some(10),
            ..Default::default()
        };
        assert!(matches!(
            resolve(CommandKind::Moments, flags(), bad),
            Err(CliError::Usage(_))
        ));
        let good = Overlay {
            t: Some(1.0e4),
            x: Some(9),
            ..Default::default()
        };
        assert_eq!(resolve(CommandKind::Moments, flags(), good).unwrap().x, Some(9));
    }

    #[test]
    fn predict_schedule_fills_x_at_large_t() {
        let cfg = resolve(
            CommandKind::Predict,
            flags(),
            Overlay {
                t: Some(1.0e10),
                k_max: Some(4),
                ..Default::default()
            },
        )
        .unwrap();
        let x = cfg.x.unwrap();
        assert!((2..100_000).contains(&x), "schedule gave x = {x}");
    }

    #[test]
    fn gonek_alpha_range_is_validated() {
        let bad = Overlay {
            t: Some(1.0e3),
            alpha: Some(vec![0.5, 2.0]),
            ..Default::default()
        };
        assert!(matches!(
            resolve(CommandKind::Gonek, flags(), bad),
            Err(CliError::Usage(_))
        ));
    }
}

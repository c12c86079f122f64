//! Run configuration: a flat `key = value` file overlaid by flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("expected csv or json, got {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Verify,
    Seminorm,
    Symbol,
    Bridge,
    Converge,
    Linking,
    Irrep,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Verify => "verify",
            CommandKind::Seminorm => "seminorm",
            CommandKind::Symbol => "symbol",
            CommandKind::Bridge => "bridge",
            CommandKind::Converge => "converge",
            CommandKind::Linking => "linking",
            CommandKind::Irrep => "irrep",
        }
    }
}

impl FromStr for CommandKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "spectrum" => CommandKind::Spectrum,
            "verify" => CommandKind::Verify,
            "seminorm" => CommandKind::Seminorm,
            "symbol" => CommandKind::Symbol,
            "bridge" => CommandKind::Bridge,
            "converge" => CommandKind::Converge,
            "linking" => CommandKind::Linking,
            "irrep" => CommandKind::Irrep,
            _ => return Err(format!("unknown command {s:?}")),
        })
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every setting a run can take. `None` means "not given"; defaults are
/// applied by [`RunConfig::resolve`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub m_max: Option<usize>,
    pub sign: Option<i8>,
    pub seed: Option<u64>,
    pub budget: Option<usize>,
    pub samples: Option<usize>,
    pub pairs: Option<usize>,
    pub grid: Option<usize>,
    pub tol_eig: Option<f64>,
    pub tol_id: Option<f64>,
    pub emit: Option<Format>,
    pub out: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    pub threads: Option<usize>,
    pub timing: Option<bool>,
    pub demo: Option<bool>,
}

pub const KEYS: &[&str] = &[
    "command", "n", "m", "m_max", "sign", "seed", "budget", "samples", "pairs", "grid", "tol_eig", "tol_id", "emit",
    "out", "matrix", "threads", "timing", "demo",
];

fn parse<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError>
where
    T::Err: fmt::Display,
{
    value
        .parse()
        .map_err(|e| CliError::Config(format!("line {line}: bad value for {key}: {e}")))
}

impl RunConfig {
    pub fn parse_str(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(CliError::Config(format!("line {line}: expected key = value")));
            };
            let (key, value) = (key.trim(), value.trim());
            let seen = match key {
                "command" => cfg.command.replace(parse(key, value, line)?).is_some(),
                "n" => cfg.n.replace(parse(key, value, line)?).is_some(),
                "m" => cfg.m.replace(parse(key, value, line)?).is_some(),
                "m_max" => cfg.m_max.replace(parse(key, value, line)?).is_some(),
                "sign" => cfg.sign.replace(parse(key, value, line)?).is_some(),
                "seed" => cfg.seed.replace(parse(key, value, line)?).is_some(),
                "budget" => cfg.budget.replace(parse(key, value, line)?).is_some(),
                "samples" => cfg.samples.replace(parse(key, value, line)?).is_some(),
                "pairs" => cfg.pairs.replace(parse(key, value, line)?).is_some(),
                "grid" => cfg.grid.replace(parse(key, value, line)?).is_some(),
                "tol_eig" => cfg.tol_eig.replace(parse(key, value, line)?).is_some(),
                "tol_id" => cfg.tol_id.replace(parse(key, value, line)?).is_some(),
                "emit" => cfg.emit.replace(parse(key, value, line)?).is_some(),
                "out" => cfg.out.replace(PathBuf::from(value)).is_some(),
                "matrix" => cfg.matrix.replace(PathBuf::from(value)).is_some(),
                "threads" => cfg.threads.replace(parse(key, value, line)?).is_some(),
                "timing" => cfg.timing.replace(parse(key, value, line)?).is_some(),
                "demo" => cfg.demo.replace(parse(key, value, line)?).is_some(),
                _ => {
                    return Err(CliError::Config(format!(
                        "line {line}: unknown key {key:?} (expected one of {})",
                        KEYS.join(", ")
                    )))
                }
            };
            if seen {
                return Err(CliError::Config(format!("line {line}: duplicate key {key:?}")));
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_str(&text)
    }

    /// Fields set in `flags` win over fields set here.
    pub fn overlay(self, flags: RunConfig) -> RunConfig {
        RunConfig {
            command: flags.command.or(self.command),
            n: flags.n.or(self.n),
            m: flags.m.or(self.m),
            m_max: flags.m_max.or(self.m_max),
            sign: flags.sign.or(self.sign),
            seed: flags.seed.or(self.seed),
            budget: flags.budget.or(self.budget),
            samples: flags.samples.or(self.samples),
            pairs: flags.pairs.or(self.pairs),
            grid: flags.grid.or(self.grid),
            tol_eig: flags.tol_eig.or(self.tol_eig),
            tol_id: flags.tol_id.or(self.tol_id),
            emit: flags.emit.or(self.emit),
            out: flags.out.or(self.out),
            matrix: flags.matrix.or(self.matrix),
            threads: flags.threads.or(self.threads),
            timing: flags.timing.or(self.timing),
            demo: flags.demo.or(self.demo),
        }
    }

    /// Applies defaults and validates every field.
    pub fn resolve(self) -> Result<Resolved, CliError> {
        let command = self
            .command
            .ok_or_else(|| CliError::Config("no command given".into()))?;
        let positive = |key: &str, v: Option<usize>, default: usize| -> Result<usize, CliError> {
            let v = v.unwrap_or(default);
            if v == 0 {
                return Err(CliError::Config(format!("{key} must be positive")));
            }
            Ok(v)
        };
        let tol = |key: &str, v: Option<f64>, default: f64| -> Result<f64, CliError> {
            let v = v.unwrap_or(default);
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("{key} must be a positive number, got {v}")));
            }
            Ok(v)
        };
        // The irrep dump is the one place where the trivial level 0 is meaningful.
        let n = match (command, self.n) {
            (CommandKind::Irrep, n) => n.unwrap_or(1),
            (_, n) => positive("n", n, 1)?,
        };
        let sign = self.sign.unwrap_or(-1);
        if sign != 1 && sign != -1 {
            return Err(CliError::Config(format!("sign must be 1 or -1, got {sign}")));
        }
        let m_max = positive("m_max", self.m_max, 6)?;
        if command == CommandKind::Converge && m_max < 2 {
            return Err(CliError::Config("m_max must be at least 2".into()));
        }
        Ok(Resolved {
            command,
            n,
            m: positive("m", self.m, 1)?,
            m_max,
            sign,
            seed: self.seed.unwrap_or(1),
            budget: positive("budget", self.budget, 2)?,
            samples: positive("samples", self.samples, 256)?,
            pairs: positive("pairs", self.pairs, 50)?,
            grid: positive("grid", self.grid, 8)?,
            tol_eig: tol("tol_eig", self.tol_eig, 1e-9)?,
            tol_id: tol("tol_id", self.tol_id, 1e-10)?,
            emit: self.emit.unwrap_or(Format::Csv),
            out: self.out,
            matrix: self.matrix,
            threads: self.threads.map(|t| positive("threads", Some(t), 1)).transpose()?,
            timing: self.timing.unwrap_or(false),
            demo: self.demo.unwrap_or(false),
        })
    }
}

/// A validated configuration with defaults filled in.
#[derive(Clone, Debug, PartialEq)]
pub struct Resolved {
    pub command: CommandKind,
    pub n: usize,
    pub m: usize,
    pub m_max: usize,
    pub sign: i8,
    pub seed: u64,
    pub budget: usize,
    pub samples: usize,
    pub pairs: usize,
    pub grid: usize,
    pub tol_eig: f64,
    pub tol_id: f64,
    pub emit: Format,
    pub out: Option<PathBuf>,
    pub matrix: Option<PathBuf>,
    pub threads: Option<usize>,
    pub timing: bool,
    pub demo: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overlays() {
        let file = RunConfig::parse_str("# study\ncommand = converge\nm_max = 4\nseed=7 # trailing\n\nemit = json\n").unwrap();
        assert_eq!(file.command, Some(CommandKind::Converge));
        assert_eq!(file.m_max, Some(4));
        let flags = RunConfig {
            seed: Some(9),
            ..Default::default()
        };
        let r = file.overlay(flags).resolve().unwrap();
        assert_eq!((r.seed, r.m_max, r.emit), (9, 4, Format::Json));
        assert_eq!(r.tol_id, 1e-10);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(RunConfig::parse_str("colour = red"), Err(CliError::Config(_))));
        assert!(RunConfig::parse_str("n = 2\nn = 3").is_err());
        assert!(RunConfig::parse_str("n = -1").is_err());
        assert!(RunConfig::parse_str("just text").is_err());
        let bad = |text: &str| RunConfig::parse_str(text).unwrap().resolve().is_err();
        assert!(bad("command = verify\nn = 0"));
        assert!(bad("command = spectrum\nsign = 2"));
        assert!(bad("command = spectrum\ntol_eig = -1e-9"));
        assert!(bad("command = converge\nm_max = 1"));
        assert!(bad("n = 2"));
        assert!(!bad("command = irrep\nn = 0"));
    }
}

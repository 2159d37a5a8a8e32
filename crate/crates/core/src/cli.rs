//! Command-line front end. `run` does the work and returns the exit code so
//! it can be driven from tests.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use crate::census::{
    self, enumerate_second_weight_families, enumerate_third_weight_family, CensusReport, Check, FamilyCount,
    FieldInfo, StratifiedConfig,
};
use crate::census::stratified::{DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::code::{full_weight_distribution, WeightDistribution};
use crate::error::{Error, Result};
use crate::report;
use crate::surface::{HermitianSurface, LineClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Point, tangent plane, line and generator counts.
    Surface,
    /// Section sizes per quadric type.
    Census,
    /// Weight distribution of the code.
    Weights,
    /// Second and third weight families against their closed forms.
    Families,
    /// All checks; nonzero exit status on any failure.
    Verify,
    /// Fourth and fifth weights (t = 2).
    Conjecture,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    Exhaustive,
    Stratified,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "hermitian", version, about = "Quadric sections of the Hermitian surface and the code C2(X)")]
pub struct RunConfig {
    pub command: Command,
    /// Subfield order; q = t².
    #[arg(long = "t", default_value_t = 2)]
    pub t: u32,
    /// Defaults to exhaustive for t = 2 and stratified otherwise.
    #[arg(long, value_enum)]
    pub mode: Option<RunMode>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub sample_size: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub shards: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output_format: OutputFormat,
    /// Write the report here instead of stdout. Relative paths are taken
    /// from --out-dir.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, env = "HERMITIAN_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, t: u32) -> Self {
        RunConfig {
            command,
            t,
            mode: None,
            sample_size: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            shards: 8,
            output_format: OutputFormat::Text,
            output: None,
            out_dir: None,
        }
    }

    pub fn effective_mode(&self) -> RunMode {
        self.mode.unwrap_or(if self.t == 2 {
            RunMode::Exhaustive
        } else {
            RunMode::Stratified
        })
    }

    fn stratified(&self) -> StratifiedConfig {
        StratifiedConfig {
            samples: self.sample_size,
            seed: self.seed,
            shards: self.shards,
        }
    }

    /// Rejects flag combinations that make no sense before any work starts.
    pub fn validate(&self) -> Result<()> {
        let usage = |m: String| Err(Error::InvalidConfig(m));
        if !crate::field::SUPPORTED_T.contains(&self.t) {
            return usage(format!("unsupported t = {}", self.t));
        }
        if self.shards == 0 {
            return usage("--shards must be positive".into());
        }
        let mode = self.effective_mode();
        let full_space = matches!(self.command, Command::Census | Command::Weights | Command::Conjecture | Command::Verify);
        if mode == RunMode::Exhaustive && full_space && self.t != 2 {
            return usage(format!("exhaustive mode needs t = 2 (got t = {}); use --mode stratified", self.t));
        }
        if mode != RunMode::Exhaustive && self.sample_size == 0 {
            return usage("--sample-size must be positive".into());
        }
        if self.command == Command::Conjecture && (self.t != 2 || mode != RunMode::Exhaustive) {
            return usage("conjecture needs t = 2 in exhaustive mode".into());
        }
        if self.command == Command::Weights && mode == RunMode::Sample {
            return usage("weights needs exhaustive or stratified mode".into());
        }
        if self.command == Command::Verify && mode == RunMode::Sample {
            return usage("verify runs exhaustive (t = 2) or stratified".into());
        }
        if self.command == Command::Verify && self.t == 2 && mode != RunMode::Exhaustive {
            return usage("verify at t = 2 is exhaustive".into());
        }
        if self.output_format == OutputFormat::Csv && self.command != Command::Weights {
            return usage("csv output is only available for weights".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunProvenance {
    pub command: Command,
    pub mode: RunMode,
    pub seed: u64,
    pub shards: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SurfaceSummary {
    pub points: usize,
    pub tangent_planes: usize,
    pub lines: BTreeMap<LineClass, usize>,
    pub generators: usize,
}

pub fn surface_summary(surface: &HermitianSurface) -> Result<SurfaceSummary> {
    let mut lines = BTreeMap::new();
    for l in surface.geometry().lines() {
        *lines.entry(surface.classify_line(&l)?).or_insert(0) += 1;
    }
    Ok(SurfaceSummary {
        points: surface.len(),
        tangent_planes: surface.tangent_plane_ids().count(),
        lines,
        generators: surface.generators().len(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FamiliesReport {
    pub families: Vec<FamilyCount>,
    pub checks: Vec<Check>,
}

/// Wraps a payload with the field and run parameters.
#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    field: FieldInfo,
    provenance: RunProvenance,
    #[serde(flatten)]
    body: &'a T,
}

fn provenance(config: &RunConfig) -> RunProvenance {
    let mode = config.effective_mode();
    RunProvenance {
        command: config.command,
        mode,
        seed: config.seed,
        shards: config.shards,
        samples: (mode != RunMode::Exhaustive).then_some(config.sample_size),
    }
}

fn run_header(config: &RunConfig, field: &FieldInfo) -> String {
    let p = provenance(config);
    let mode = serde_json::to_value(p.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    format!(
        "t = {}, q = {}, poly {}, mode {mode}, seed {:#x}, shards {}\n",
        field.t, field.q, field.poly, p.seed, p.shards
    )
}

fn census_for(surface: &HermitianSurface, config: &RunConfig) -> Result<(Option<WeightDistribution>, CensusReport)> {
    let mut out = match config.effective_mode() {
        RunMode::Exhaustive => (None, census::exhaustive_census(surface, config.shards)?),
        RunMode::Stratified => {
            let (d, r) = census::stratified_census(surface, &config.stratified())?;
            (Some(d), r)
        }
        RunMode::Sample => (None, census::sampled_census(surface, &config.stratified())?),
    };
    out.1.provenance.seed = Some(config.seed);
    Ok(out)
}

/// Produces the report text for `config` and whether every check passed.
pub fn render(config: &RunConfig) -> Result<(String, bool)> {
    config.validate()?;
    let surface = HermitianSurface::new(config.t)?;
    let field = FieldInfo::of(&surface);
    let json = config.output_format == OutputFormat::Json;
    let wrap = |body: serde_json::Value| -> Result<String> {
        report::to_json(&Envelope {
            field: field.clone(),
            provenance: provenance(config),
            body: &body,
        })
    };

    Ok(match config.command {
        Command::Surface => {
            let s = surface_summary(&surface)?;
            let text = if json {
                wrap(serde_json::to_value(&s)?)?
            } else {
                let mut out = run_header(config, &field);
                out.push_str(&format!(
                    "points {}\ntangent planes {}\ngenerators {}\n",
                    s.points, s.tangent_planes, s.generators
                ));
                for (k, v) in &s.lines {
                    out.push_str(&format!("{} lines {v}\n", k.as_str()));
                }
                out
            };
            (text, true)
        }
        Command::Census => {
            let (_, r) = census_for(&surface, config)?;
            let pass = r.passed();
            let text = if json { report::to_json(&r)? } else { report::census_text(&r) };
            (text, pass)
        }
        Command::Weights => {
            let dist = match config.effective_mode() {
                RunMode::Exhaustive => full_weight_distribution(&surface, config.shards)?,
                _ => census_for(&surface, config)?.0.expect("stratified census has a distribution"),
            };
            let text = match config.output_format {
                OutputFormat::Json => wrap(serde_json::to_value(&dist)?)?,
                OutputFormat::Csv => dist.to_csv()?,
                OutputFormat::Text => {
                    let mut out = run_header(config, &field);
                    out.push_str(&report::weights_text(&dist));
                    out
                }
            };
            (text, true)
        }
        Command::Families => {
            let (mut families, distinct) = enumerate_second_weight_families(&surface)?;
            families.push(enumerate_third_weight_family(&surface)?);
            let pass = distinct.pass && families.iter().all(|f| f.pass);
            let r = FamiliesReport {
                families,
                checks: vec![distinct],
            };
            let text = if json {
                wrap(serde_json::to_value(&r)?)?
            } else {
                let mut out = run_header(config, &field);
                out.push_str(&report::families_text(&r.families, &r.checks));
                out
            };
            (text, pass)
        }
        Command::Conjecture => {
            let census = census::exhaustive_census(&surface, config.shards)?;
            let dist = full_weight_distribution(&surface, config.shards)?;
            let c = census::check_conjecture(&surface, &census, &dist, config.shards)?;
            let text = if json {
                wrap(serde_json::to_value(&c)?)?
            } else {
                let mut out = run_header(config, &field);
                out.push_str(&report::conjecture_text(&c));
                out
            };
            (text, c.pass)
        }
        Command::Verify => {
            let v = census::verify_all(&surface, &config.stratified())?;
            let pass = v.passed();
            let text = if json {
                report::to_json(&v)?
            } else {
                let mut out = report::census_text(&v.census);
                out.push('\n');
                out.push_str(&report::two_generator_text(&v.two_generator_hyperbolics));
                if v.weights.exhaustive {
                    out.push('\n');
                    out.push_str(&report::weights_text(&v.weights));
                }
                if !v.two_generator_hyperbolics.pass {
                    out.push_str("FAIL two-generator hyperbolic bound\n");
                }
                out.push_str(if pass { "verify: PASS\n" } else { "verify: FAIL\n" });
                out
            };
            (text, pass)
        }
    })
}

/// Runs `config`, writing to `--output` when given and to `stdout`
/// otherwise. Returns 0 when every check passed and 1 otherwise.
pub fn run(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32> {
    let (text, pass) = render(config)?;
    match &config.output {
        Some(path) => {
            let path = match &config.out_dir {
                Some(dir) if path.is_relative() => dir.join(path),
                _ => path.clone(),
            };
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, &text)?;
            writeln!(stdout, "wrote {}", path.display())?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(if pass { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> RunConfig {
        RunConfig::try_parse_from(std::iter::once("hermitian").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flag_parsing() {
        let c = parse(&["weights", "--t", "2", "--output-format", "csv"]);
        assert_eq!((c.command, c.t, c.output_format), (Command::Weights, 2, OutputFormat::Csv));
        assert_eq!(c.effective_mode(), RunMode::Exhaustive);
        assert_eq!(parse(&["census", "--t", "3"]).effective_mode(), RunMode::Stratified);
    }

    #[test]
    fn usage_errors() {
        for args in [
            &["census", "--t", "3", "--mode", "exhaustive"][..],
            &["census", "--t", "3", "--mode", "sample", "--sample-size", "0"],
            &["conjecture", "--t", "3"],
            &["census", "--output-format", "csv"],
            &["surface", "--t", "7"],
            &["census", "--shards", "0"],
        ] {
            assert!(matches!(parse(args).validate(), Err(Error::InvalidConfig(_))), "{args:?}");
        }
        parse(&["census", "--t", "3", "--mode", "sample", "--sample-size", "10"]).validate().unwrap();
    }

    #[test]
    fn surface_command() {
        let mut out = Vec::new();
        let mut c = RunConfig::new(Command::Surface, 2);
        c.output_format = OutputFormat::Json;
        assert_eq!(run(&c, &mut out).unwrap(), 0);
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["points"], 45);
        assert_eq!(v["tangent_planes"], 45);
        assert_eq!(v["generators"], 27);
        assert_eq!(v["field"]["poly"], "x^2+x+1 over GF(2)");
        assert_eq!(v["provenance"]["seed"], DEFAULT_SEED);
    }
}

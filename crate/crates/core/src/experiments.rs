//! Experiment orchestration behind the `percolab` command line.
//!
//! Every experiment reads its parameters from command line flags and,
//! optionally, a JSON file with the same field names; flags win. Output is
//! CSV, written in a fixed order so identical configurations give
//! byte-identical files.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::Args;
use rayon::prelude::*;
use serde::Deserialize;

use crate::cluster::{boundary_reach, boundary_reach_within, cluster_of, identity_cluster_ball};
use crate::config::{window_edges, Configuration, EdgeId};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::io::{write_edge_csv, write_library};
use crate::percolation::{
    brute_force_probability, match_probabilities, sample, saturation_rows, BernoulliLaw, EstimateRow,
};
use crate::repetitive::{is_proper, is_repetitive, patterns, ModelKind, PatternLibrary, SubgraphModel};

pub const SINGULARITY_HEADER: &str = "r,m_hat,stderr,n";
pub const SATURATION_HEADER: &str = "R,s_hat,stderr,n";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    Sample,
    Patterns,
    RepetitiveCheck,
    Singularity,
    Saturation,
    Oracle,
    Dump,
}

impl ExperimentKind {
    fn default_radii(self) -> Vec<u32> {
        match self {
            ExperimentKind::Singularity => vec![1, 2, 3, 4],
            ExperimentKind::Saturation => vec![5, 10, 20, 40],
            ExperimentKind::Sample => vec![8],
            ExperimentKind::Dump => vec![3],
            _ => vec![1],
        }
    }
}

/// `--condition` accepts a bare flag (condition on the largest radius), a
/// boolean, or an explicit radius `R_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Condition {
    Flag(bool),
    Radius(u32),
}

impl FromStr for Condition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "true" => Ok(Condition::Flag(true)),
            "false" => Ok(Condition::Flag(false)),
            _ => s
                .parse::<u32>()
                .map(Condition::Radius)
                .map_err(|_| format!("expected true, false or a radius, got {s:?}")),
        }
    }
}

/// Experiment parameters as given by flags or a JSON file; all optional.
#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Settings {
    /// Group id: z1, z2 or f2.
    #[arg(long)]
    pub group: Option<String>,
    /// Subgraph model: full, even-rows, fib-fence or periodic:<bx1,by1;bx2,by2;motif-file>.
    #[arg(long)]
    pub model: Option<String>,
    /// Survival parameter of the Bernoulli law.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub radius: Option<u32>,
    /// Comma-separated, strictly increasing radii.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<u32>>,
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Condition on the identity's cluster reaching the boundary.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub condition: Option<Condition>,
    /// Search distance for repetitive-check.
    #[arg(long)]
    pub reach: Option<u32>,
    /// Radius of the window scanned for pattern libraries.
    #[arg(long)]
    pub scan_radius: Option<u32>,
    /// Sample index for dump.
    #[arg(long)]
    pub index: Option<u64>,
    /// Oracle event: isolated, star, vertical-path, cluster-ge3, boundary-reach or match.
    #[arg(long)]
    pub event: Option<String>,
    /// Output file (a directory for patterns).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON file with default values for any of these settings.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Run even when a pattern library is not stable.
    #[arg(long)]
    pub force_unstable: bool,
}

impl Settings {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Field-wise merge; values already set in `self` win.
    pub fn or(self, fallback: Settings) -> Settings {
        Settings {
            group: self.group.or(fallback.group),
            model: self.model.or(fallback.model),
            p: self.p.or(fallback.p),
            radius: self.radius.or(fallback.radius),
            radii: self.radii.or(fallback.radii),
            samples: self.samples.or(fallback.samples),
            seed: self.seed.or(fallback.seed),
            condition: self.condition.or(fallback.condition),
            reach: self.reach.or(fallback.reach),
            scan_radius: self.scan_radius.or(fallback.scan_radius),
            index: self.index.or(fallback.index),
            event: self.event.or(fallback.event),
            out: self.out.or(fallback.out),
            config: self.config.or(fallback.config),
            force_unstable: self.force_unstable || fallback.force_unstable,
        }
    }

    /// Merges in the JSON file named by `config`, if any.
    pub fn with_config_file(self) -> Result<Settings> {
        match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                Ok(self.or(Settings::from_json(&text)?))
            }
            None => Ok(self),
        }
    }
}

/// Fully resolved and validated parameters of one experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub group: String,
    pub model: Option<String>,
    pub p: f64,
    pub radii: Vec<u32>,
    pub samples: u64,
    pub seed: u64,
    /// Boundary radius `R_c` to condition on.
    pub condition: Option<u32>,
    pub reach: Option<u32>,
    pub scan_radius: u32,
    pub index: u64,
    pub event: Option<String>,
    pub out: Option<PathBuf>,
    pub force_unstable: bool,
}

impl ExperimentConfig {
    pub fn resolve(kind: ExperimentKind, s: Settings) -> Result<Self> {
        let radii = match (s.radii, s.radius) {
            (Some(radii), _) => radii,
            (None, Some(r)) => vec![r],
            (None, None) => kind.default_radii(),
        };
        if radii.is_empty() {
            return Err(Error::Config("at least one radius is required".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(format!("radii {radii:?} are not strictly increasing")));
        }
        let p = s.p.unwrap_or(0.5);
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Config(format!("p = {p} is outside [0, 1]")));
        }
        let samples = s.samples.unwrap_or(1000);
        if samples == 0 {
            return Err(Error::Config("sample count must be at least 1".into()));
        }
        let max_radius = *radii.last().unwrap();
        let condition = match s.condition {
            None | Some(Condition::Flag(false)) => None,
            Some(Condition::Flag(true)) => Some(max_radius),
            Some(Condition::Radius(r)) => Some(r),
        };
        Ok(ExperimentConfig {
            kind,
            group: s.group.unwrap_or_else(|| "z2".to_string()),
            model: s.model,
            p,
            radii,
            samples,
            seed: s.seed.unwrap_or(0),
            condition,
            reach: s.reach,
            scan_radius: s.scan_radius.unwrap_or(32.max(2 * max_radius)),
            index: s.index.unwrap_or(0),
            event: s.event,
            out: s.out,
            force_unstable: s.force_unstable,
        })
    }

    fn spec(&self) -> Result<Arc<GroupSpec>> {
        Ok(Arc::new(GroupSpec::from_id(&self.group)?))
    }

    fn law(&self) -> Result<BernoulliLaw<f64>> {
        BernoulliLaw::new(self.p)
    }

    fn max_radius(&self) -> u32 {
        *self.radii.last().expect("validated non-empty")
    }

    fn model(&self) -> Result<SubgraphModel> {
        let id = self
            .model
            .as_deref()
            .ok_or_else(|| Error::Config("this experiment needs --model".into()))?;
        if self.group != "z2" {
            return Err(Error::Config(format!(
                "subgraph models live on z2, not {}",
                self.group
            )));
        }
        SubgraphModel::from_id(id)
    }
}

/// `m̂_r` for every radius, all evaluated on the same samples.
pub fn singularity_experiment(cfg: &ExperimentConfig) -> Result<Vec<EstimateRow>> {
    let model = cfg.model()?;
    if !matches!(model.kind(), ModelKind::Full) && !is_proper(&model, cfg.scan_radius)? {
        return Err(Error::Config(format!(
            "model {} is not a proper subgraph on the scan window",
            model.id()
        )));
    }
    let libs = cfg
        .radii
        .iter()
        .map(|&r| patterns(&model, r, cfg.scan_radius.max(r)))
        .collect::<Result<Vec<PatternLibrary>>>()?;
    match_probabilities(&libs, &cfg.law()?, cfg.samples, cfg.seed, cfg.condition, cfg.force_unstable)
}

/// The edge from the identity along the first positive generator.
pub fn origin_edge(spec: &GroupSpec) -> EdgeId {
    EdgeId::new(spec.identity(), 0)
}

/// Fraction of samples in the saturation `R[U_F]` at each reach, with `F`
/// the origin edge.
pub fn saturation_experiment(cfg: &ExperimentConfig) -> Result<Vec<EstimateRow>> {
    let spec = cfg.spec()?;
    let f = [origin_edge(&spec)];
    saturation_rows(&spec, &f, &cfg.radii, &cfg.law()?, cfg.samples, cfg.seed, cfg.condition)
}

/// Events with an exact oracle on small windows.
#[derive(Clone, Debug)]
pub enum OracleEvent {
    /// The identity has no open edge.
    Isolated,
    /// Every edge at the identity is open.
    Star,
    /// On `Z^2`: the identity cluster's 1-ball is the vertical 3-path.
    VerticalPath,
    /// The identity cluster has at least three vertices.
    ClusterAtLeast3,
    BoundaryReach,
    /// The identity cluster's `r`-ball lies in a pattern library.
    Match(Arc<PatternLibrary>),
}

impl OracleEvent {
    pub fn parse(name: &str, cfg: &ExperimentConfig) -> Result<Self> {
        Ok(match name {
            "isolated" => OracleEvent::Isolated,
            "star" => OracleEvent::Star,
            "vertical-path" => OracleEvent::VerticalPath,
            "cluster-ge3" => OracleEvent::ClusterAtLeast3,
            "boundary-reach" => OracleEvent::BoundaryReach,
            "match" => {
                let model = cfg.model()?;
                let r = cfg.max_radius();
                let lib = patterns(&model, r, cfg.scan_radius.max(r))?;
                lib.require_stable(cfg.force_unstable)?;
                OracleEvent::Match(Arc::new(lib))
            }
            other => return Err(Error::Config(format!("unknown oracle event {other:?}"))),
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            OracleEvent::Isolated => "isolated",
            OracleEvent::Star => "star",
            OracleEvent::VerticalPath => "vertical-path",
            OracleEvent::ClusterAtLeast3 => "cluster-ge3",
            OracleEvent::BoundaryReach => "boundary-reach",
            OracleEvent::Match(_) => "match",
        }
    }

    pub fn holds(&self, omega: &Configuration) -> bool {
        let spec = omega.spec();
        let identity = spec.identity();
        match self {
            OracleEvent::Isolated => spec
                .cayley_neighbors(&identity)
                .iter()
                .all(|h| !omega.is_open(&crate::config::canonical_edge(spec, &identity, h).expect("adjacent"))),
            OracleEvent::Star => spec
                .cayley_neighbors(&identity)
                .iter()
                .all(|h| omega.is_open(&crate::config::canonical_edge(spec, &identity, h).expect("adjacent"))),
            OracleEvent::VerticalPath => {
                let Ok(ball) = identity_cluster_ball(omega, 1) else {
                    return false;
                };
                let expected = [
                    GroupElement::lattice([0, -1]),
                    GroupElement::lattice([0, 0]),
                    GroupElement::lattice([0, 1]),
                ];
                ball.edge_count() == 2 && ball.vertices().iter().eq(expected.iter())
            }
            OracleEvent::ClusterAtLeast3 => {
                cluster_of(omega, &identity).is_ok_and(|c| c.vertex_count() >= 3)
            }
            OracleEvent::BoundaryReach => boundary_reach(omega),
            OracleEvent::Match(lib) => identity_cluster_ball(omega, lib.r())
                .is_ok_and(|ball| lib.position(&ball).is_some()),
        }
    }
}

const DEFAULT_ORACLE_EVENTS: [&str; 5] = ["isolated", "star", "vertical-path", "cluster-ge3", "boundary-reach"];

fn oracle_rows(cfg: &ExperimentConfig) -> Result<Vec<(String, f64)>> {
    let spec = cfg.spec()?;
    let window = window_edges(&spec, cfg.max_radius())?;
    let law = cfg.law()?;
    let names: Vec<&str> = match &cfg.event {
        Some(e) => vec![e.as_str()],
        None => DEFAULT_ORACLE_EVENTS
            .into_iter()
            .filter(|&e| e != "vertical-path" || cfg.group == "z2")
            .collect(),
    };
    names
        .into_iter()
        .map(|name| {
            let event = OracleEvent::parse(name, cfg)?;
            if matches!(event, OracleEvent::VerticalPath) && cfg.group != "z2" {
                return Err(Error::Config("vertical-path is defined on z2 only".into()));
            }
            let prob = brute_force_probability(&window, &law, |o| event.holds(o))?;
            Ok((event.name().to_string(), prob))
        })
        .collect()
}

fn write_rows<W: Write>(header: &str, rows: &[EstimateRow], out: &mut W) -> Result<()> {
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{}", row.csv_line())?;
    }
    Ok(())
}

/// Open edges of one sample, or the model's edges inside the window when a
/// model is configured.
pub fn dump_sample<W: Write>(cfg: &ExperimentConfig, out: &mut W) -> Result<()> {
    let spec = cfg.spec()?;
    let window = window_edges(&spec, cfg.max_radius())?;
    let edges: Vec<EdgeId> = match &cfg.model {
        Some(_) => {
            let model = cfg.model()?;
            window.edges().iter().filter(|e| model.is_edge(e)).cloned().collect()
        }
        None => sample(&window, &cfg.law()?, cfg.index, cfg.seed).open_edges(),
    };
    write_edge_csv(&spec, &edges, out)
}

fn sample_summary<W: Write>(cfg: &ExperimentConfig, out: &mut W) -> Result<()> {
    let spec = cfg.spec()?;
    let window = window_edges(&spec, cfg.max_radius())?;
    let law = cfg.law()?;
    let identity = spec.identity();
    let lines: Vec<String> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let omega = sample(&window, &law, i, cfg.seed);
            let cluster = cluster_of(&omega, &identity).expect("identity in window");
            let reach = match cfg.condition {
                Some(rc) => boundary_reach_within(&omega, rc),
                None => boundary_reach(&omega),
            };
            format!("{i},{},{},{}", omega.open_count(), cluster.vertex_count(), reach)
        })
        .collect();
    writeln!(out, "index,open_edges,cluster_size,boundary_reach")?;
    for line in lines {
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn pattern_summary<W: Write>(cfg: &ExperimentConfig, out: &mut W) -> Result<()> {
    let model = cfg.model()?;
    writeln!(out, "r,scan_radius,stable,pattern,vertices,edges")?;
    for &r in &cfg.radii {
        let lib = patterns(&model, r, cfg.scan_radius.max(r))?;
        for (i, pat) in lib.patterns().iter().enumerate() {
            writeln!(
                out,
                "{r},{},{},{i},{},{}",
                lib.scan_radius(),
                lib.stable(),
                pat.vertex_count(),
                pat.edge_count()
            )?;
        }
        if let Some(dir) = &cfg.out {
            let target = if cfg.radii.len() == 1 { dir.clone() } else { dir.join(format!("r{r}")) };
            write_library(&lib, &target)?;
        }
    }
    Ok(())
}

fn repetitive_summary<W: Write>(cfg: &ExperimentConfig, out: &mut W) -> Result<()> {
    let model = cfg.model()?;
    let reach = cfg
        .reach
        .ok_or_else(|| Error::Config("repetitive-check needs --reach".into()))?;
    writeln!(out, "r,reach,scan_radius,patterns,ok,witness_pattern,witness_center")?;
    for &r in &cfg.radii {
        let scan = cfg.scan_radius.max(r + reach);
        let report = is_repetitive(&model, r, reach, scan)?;
        let (pattern, center) = match &report.witness {
            Some((pat, g)) => (
                report.library.position(pat).map(|i| i.to_string()).unwrap_or_default(),
                g.to_string().replace(',', " "),
            ),
            None => (String::new(), String::new()),
        };
        writeln!(
            out,
            "{r},{reach},{scan},{},{},{pattern},{center}",
            report.library.len(),
            report.ok
        )?;
    }
    Ok(())
}

/// Runs the experiment and writes its CSV to `out`. For `patterns`, the
/// libraries themselves go to the `out` directory of the config.
pub fn run<W: Write>(cfg: &ExperimentConfig, out: &mut W) -> Result<()> {
    match cfg.kind {
        ExperimentKind::Singularity => write_rows(SINGULARITY_HEADER, &singularity_experiment(cfg)?, out),
        ExperimentKind::Saturation => write_rows(SATURATION_HEADER, &saturation_experiment(cfg)?, out),
        ExperimentKind::Dump => dump_sample(cfg, out),
        ExperimentKind::Sample => sample_summary(cfg, out),
        ExperimentKind::Patterns => pattern_summary(cfg, out),
        ExperimentKind::RepetitiveCheck => repetitive_summary(cfg, out),
        ExperimentKind::Oracle => {
            writeln!(out, "event,p,probability")?;
            for (name, prob) in oracle_rows(cfg)? {
                writeln!(out, "{name},{},{prob}", cfg.p)?;
            }
            Ok(())
        }
    }
}

/// Runs the experiment, sending output to `cfg.out` (a file) or stdout.
pub fn execute(cfg: &ExperimentConfig) -> Result<()> {
    let mut buffer = Vec::new();
    run(cfg, &mut buffer)?;
    match (&cfg.out, cfg.kind) {
        (Some(path), kind) if kind != ExperimentKind::Patterns => {
            let mut file = BufWriter::new(File::create(path)?);
            file.write_all(&buffer)?;
            file.flush()?;
        }
        _ => std::io::stdout().lock().write_all(&buffer)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(kind: ExperimentKind, json: &str) -> ExperimentConfig {
        ExperimentConfig::resolve(kind, Settings::from_json(json).unwrap()).unwrap()
    }

    fn output(c: &ExperimentConfig) -> String {
        let mut buf = Vec::new();
        run(c, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn settings_merge_prefers_flags() {
        let flags = Settings {
            p: Some(0.7),
            ..Default::default()
        };
        let file = Settings::from_json(r#"{"p": 0.2, "seed": 9, "radii": [1, 3], "condition": 12}"#).unwrap();
        let merged = flags.or(file);
        assert_eq!(merged.p, Some(0.7));
        assert_eq!(merged.seed, Some(9));
        let c = ExperimentConfig::resolve(ExperimentKind::Saturation, merged).unwrap();
        assert_eq!((c.radii.clone(), c.condition), (vec![1, 3], Some(12)));
        assert!(Settings::from_json(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn invalid_configs_are_rejected() {
        for json in [r#"{"radii": [3, 2]}"#, r#"{"radii": [2, 2]}"#, r#"{"p": 1.5}"#, r#"{"samples": 0}"#, r#"{"radii": []}"#] {
            let err = ExperimentConfig::resolve(ExperimentKind::Singularity, Settings::from_json(json).unwrap()).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{json}");
        }
        let c = cfg(ExperimentKind::Singularity, r#"{"model": "nope"}"#);
        assert_eq!(singularity_experiment(&c).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn condition_flag_forms() {
        assert_eq!("true".parse::<Condition>(), Ok(Condition::Flag(true)));
        assert_eq!("40".parse::<Condition>(), Ok(Condition::Radius(40)));
        assert!("x".parse::<Condition>().is_err());
        let c = cfg(ExperimentKind::Saturation, r#"{"condition": true, "radii": [5, 10]}"#);
        assert_eq!(c.condition, Some(10));
        let c = cfg(ExperimentKind::Saturation, r#"{"condition": false}"#);
        assert_eq!(c.condition, None);
    }

    #[test]
    fn singularity_degenerate_branches() {
        let full = cfg(ExperimentKind::Singularity, r#"{"model": "full", "p": 1.0, "radii": [1,2,3,4,5], "samples": 20}"#);
        for row in singularity_experiment(&full).unwrap() {
            assert_eq!((row.hits, row.n), (20, 20));
        }
        let even = cfg(ExperimentKind::Singularity, r#"{"model": "even-rows", "p": 1.0, "radii": [2], "samples": 20}"#);
        assert_eq!(singularity_experiment(&even).unwrap()[0].hits, 0);
    }

    #[test]
    fn singularity_rows_are_nonincreasing() {
        let c = cfg(ExperimentKind::Singularity, r#"{"model": "fib-fence", "p": 0.7, "radii": [0,1,2,3], "samples": 3000, "seed": 5}"#);
        let rows = singularity_experiment(&c).unwrap();
        assert!(rows.windows(2).all(|w| w[0].hits >= w[1].hits), "{rows:?}");
        let text = output(&c);
        assert!(text.starts_with("r,m_hat,stderr,n\n0,"));
    }

    #[test]
    fn single_sample_is_reproducible() {
        let c = cfg(ExperimentKind::Singularity, r#"{"model": "even-rows", "p": 0.6, "radii": [1, 2], "samples": 1, "seed": 77}"#);
        let rows = singularity_experiment(&c).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows, singularity_experiment(&c).unwrap());
        assert!(rows.iter().all(|r| r.n == 1 && r.hits <= 1));
    }

    #[test]
    fn saturation_extremes() {
        for (p, expected) in [(0.0, 0), (1.0, 30)] {
            let c = cfg(ExperimentKind::Saturation, &format!(r#"{{"p": {p}, "radii": [1, 3], "samples": 30}}"#));
            for row in saturation_experiment(&c).unwrap() {
                assert_eq!(row.hits, expected);
            }
        }
    }

    #[test]
    fn dumps() {
        let model = cfg(ExperimentKind::Dump, r#"{"model": "even-rows", "radius": 3}"#);
        let text = output(&model);
        assert_eq!(text, output(&model));
        assert!(text.starts_with("x1,y1,x2,y2\n"));
        assert!(text.contains("\n0,0,1,0\n"));
        assert!(!text.contains("\n0,1,1,1\n"));
        let empty = cfg(ExperimentKind::Dump, r#"{"p": 0.0, "seed": 3}"#);
        assert_eq!(output(&empty), "x1,y1,x2,y2\n");
        let random = cfg(ExperimentKind::Dump, r#"{"p": 0.5, "seed": 42}"#);
        assert_eq!(output(&random), output(&random));
        let free = cfg(ExperimentKind::Dump, r#"{"group": "f2", "p": 1.0, "radius": 1}"#);
        assert_eq!(output(&free), "w1,w2\n1,a\n1,b\nA,1\nB,1\n");
    }

    #[test]
    fn oracle_output() {
        let c = cfg(ExperimentKind::Oracle, r#"{"p": 0.5, "radius": 1}"#);
        let text = output(&c);
        assert!(text.contains("isolated,0.5,0.0625\n"));
        assert!(text.contains("cluster-ge3,0.5,0.6875\n"));
        assert!(text.contains("star,0.5,0.0625\n"));
        let m = cfg(ExperimentKind::Oracle, r#"{"p": 0.6, "radius": 1, "model": "even-rows", "event": "match"}"#);
        let line = output(&m).lines().nth(1).unwrap().to_string();
        let value: f64 = line.rsplit(',').next().unwrap().parse().unwrap();
        assert!((value - 0.1872).abs() < 1e-12);
    }

    #[test]
    fn repetitive_and_pattern_summaries() {
        let c = cfg(ExperimentKind::RepetitiveCheck, r#"{"model": "even-rows", "radius": 1, "reach": 0, "scan_radius": 8}"#);
        assert_eq!(output(&c), "r,reach,scan_radius,patterns,ok,witness_pattern,witness_center\n1,0,8,2,false,0,(0 0)\n");
        let c = cfg(ExperimentKind::Patterns, r#"{"model": "even-rows", "radius": 1, "scan_radius": 8}"#);
        assert_eq!(output(&c), "r,scan_radius,stable,pattern,vertices,edges\n1,8,true,0,3,2\n1,8,true,1,5,4\n");
    }

    #[test]
    fn sample_summary_is_deterministic() {
        let c = cfg(ExperimentKind::Sample, r#"{"p": 0.6, "radius": 6, "samples": 50, "seed": 4}"#);
        let text = output(&c);
        assert_eq!(text.lines().count(), 51);
        assert_eq!(text, output(&c));
    }
}

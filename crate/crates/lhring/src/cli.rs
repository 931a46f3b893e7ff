//! Configuration and the file-producing commands behind the `lhring` binary.
//!
//! Rendering is pure: every command returns the complete output as a string
//! so identical configurations produce byte-identical files. Numeric columns
//! carry nine significant digits with a '.' decimal separator, independent of
//! locale.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::entanglement::entropy_cascade;
use crate::error::{Error, Result};
use crate::jc::{dressed_state, jc_entropy, rabi_evolution, rabi_frequency, DressedSign, JCParams};
use crate::ring::{
    exciton_energy, extra_level_locator, lattice_spectrum, ring_constants, RingParams,
};
use crate::verify::{run_all, VerifyReport, DEFAULT_SEED};

/// Output encoding of the table commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidParameter(format!(
                "unknown output format '{other}' (expected csv or json)"
            ))),
        }
    }
}

/// Fully resolved run configuration. Defaults reproduce the modeled ring:
/// N = 8, four qubits, V0 chosen so the level gap is 422 cm^-1.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub e0: f64,
    pub v0: f64,
    pub big_n: u32,
    pub two_n: usize,
    /// Mode selector for `entangle`; `None` means all four modes.
    pub l: Option<i32>,
    pub nu: f64,
    pub delta: f64,
    pub g: f64,
    pub n_max: usize,
    /// Photon index of the Rabi series.
    pub photon_n: usize,
    /// End of the time grid; defaults to five oscillation periods.
    pub t_max: Option<f64>,
    pub t_steps: usize,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// Default neighbor interaction: the value that makes the lattice level gap
/// exactly 422 cm^-1.
pub fn default_v0() -> f64 {
    422.0 / (2.0 * (1.0 - (std::f64::consts::PI / 8.0).cos()))
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            e0: 0.0,
            v0: default_v0(),
            big_n: 8,
            two_n: 4,
            l: None,
            nu: 1.0,
            delta: 0.0,
            g: 1.0,
            n_max: crate::jc::DEFAULT_N_MAX,
            photon_n: 0,
            t_max: None,
            t_steps: 500,
            format: OutputFormat::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn ring_params(&self) -> Result<RingParams> {
        RingParams::new(self.e0, self.v0, self.big_n, self.two_n)
    }

    pub fn jc_params(&self) -> Result<JCParams> {
        JCParams::new(self.nu, self.delta, self.g, self.n_max)
    }
}

/// Partially specified configuration, as read from flags or a config file.
/// Precedence when resolving: flags, then config file, then defaults.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub e0: Option<f64>,
    pub v0: Option<f64>,
    pub big_n: Option<u32>,
    pub two_n: Option<usize>,
    pub l: Option<i32>,
    pub nu: Option<f64>,
    pub delta: Option<f64>,
    pub g: Option<f64>,
    pub n_max: Option<usize>,
    pub photon_n: Option<usize>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

impl PartialConfig {
    /// Reads a flat `key = value` TOML file.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| {
            Error::InvalidParameter(format!("config file {}: {e}", path.display()))
        })
    }

    fn or(self, fallback: PartialConfig) -> PartialConfig {
        PartialConfig {
            e0: self.e0.or(fallback.e0),
            v0: self.v0.or(fallback.v0),
            big_n: self.big_n.or(fallback.big_n),
            two_n: self.two_n.or(fallback.two_n),
            l: self.l.or(fallback.l),
            nu: self.nu.or(fallback.nu),
            delta: self.delta.or(fallback.delta),
            g: self.g.or(fallback.g),
            n_max: self.n_max.or(fallback.n_max),
            photon_n: self.photon_n.or(fallback.photon_n),
            t_max: self.t_max.or(fallback.t_max),
            t_steps: self.t_steps.or(fallback.t_steps),
            format: self.format.or(fallback.format),
            out: self.out.or(fallback.out),
        }
    }

    /// Resolves flags over an optional config file over defaults.
    pub fn resolve(flags: PartialConfig, file: Option<PartialConfig>) -> Result<RunConfig> {
        let merged = match file {
            Some(file) => flags.or(file),
            None => flags,
        };
        let defaults = RunConfig::default();
        let format = match merged.format {
            Some(s) => s.parse()?,
            None => defaults.format,
        };
        let config = RunConfig {
            e0: merged.e0.unwrap_or(defaults.e0),
            v0: merged.v0.unwrap_or(defaults.v0),
            big_n: merged.big_n.unwrap_or(defaults.big_n),
            two_n: merged.two_n.unwrap_or(defaults.two_n),
            l: merged.l,
            nu: merged.nu.unwrap_or(defaults.nu),
            delta: merged.delta.unwrap_or(defaults.delta),
            g: merged.g.unwrap_or(defaults.g),
            n_max: merged.n_max.unwrap_or(defaults.n_max),
            photon_n: merged.photon_n.unwrap_or(defaults.photon_n),
            t_max: merged.t_max,
            t_steps: merged.t_steps.unwrap_or(defaults.t_steps),
            format,
            out: merged.out,
        };
        if config.t_steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "t_steps must be >= 2, got {}",
                config.t_steps
            )));
        }
        if let Some(t_max) = config.t_max {
            if !(t_max.is_finite() && t_max > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "t_max must be finite and positive, got {t_max}"
                )));
            }
        }
        Ok(config)
    }
}

/// Formats with nine significant digits, '.' separator, no locale.
/// Extreme magnitudes fall back to scientific notation; infinities print as
/// inf/-inf (the decoupled-limit beta).
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0.00000000".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..=14).contains(&mag) {
        return format!("{x:.8e}");
    }
    let decimals = (8 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

#[derive(Debug, Serialize)]
struct SpectrumRow {
    kind: &'static str,
    label: String,
    energy_cm1: f64,
}

/// Spectrum table: exciton band, lattice levels, the level gap, and the
/// extra-level continuous index.
pub fn cmd_spectrum(config: &RunConfig) -> Result<String> {
    let params = config.ring_params()?;
    let c = ring_constants(&params);

    let mut rows = Vec::new();
    let big_n = params.big_n() as i32;
    for n in -big_n + 1..=big_n {
        rows.push(SpectrumRow {
            kind: "exciton",
            label: format!("n={n}"),
            energy_cm1: exciton_energy(&params, n)?,
        });
    }
    for (l, energy) in lattice_spectrum(params.two_n(), &c)? {
        rows.push(SpectrumRow {
            kind: "lattice",
            label: format!("l={l}"),
            energy_cm1: energy,
        });
    }
    rows.push(SpectrumRow {
        kind: "gap",
        label: "adjacent_lattice_levels".into(),
        energy_cm1: 2.0 * c.v,
    });
    let extra = extra_level_locator(&params);
    rows.push(SpectrumRow {
        kind: "extra_level",
        label: format!("n={}", format_sig(extra.continuous_index)),
        energy_cm1: extra.energy,
    });

    match config.format {
        OutputFormat::Csv => {
            let mut out = String::from("kind,label,energy_cm1\n");
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{}\n",
                    row.kind,
                    row.label,
                    format_sig(row.energy_cm1)
                ));
            }
            Ok(out)
        }
        OutputFormat::Json => to_json(&serde_json::json!({ "rows": rows })),
    }
}

#[derive(Debug, Serialize)]
struct EntangleRow {
    l: i32,
    split: &'static str,
    lambdas: Vec<f64>,
    entropy_bits: f64,
}

/// Entanglement cascade table, one three-row block per selected mode.
pub fn cmd_entangle(config: &RunConfig) -> Result<String> {
    let modes: Vec<i32> = match config.l {
        Some(l) => vec![l],
        None => vec![-1, 0, 1, 2],
    };
    let mut rows = Vec::new();
    for l in modes {
        for step in entropy_cascade(l)? {
            rows.push(EntangleRow {
                l,
                split: step.split,
                lambdas: step.lambdas,
                entropy_bits: step.entropy_bits,
            });
        }
    }
    match config.format {
        OutputFormat::Csv => {
            let mut out = String::from("l,split,lambdas,entropy_bits\n");
            for row in &rows {
                let lambdas = row
                    .lambdas
                    .iter()
                    .map(|&x| format_sig(x))
                    .collect::<Vec<_>>()
                    .join(", ");
                out.push_str(&format!(
                    "{},{},\"{}\",{}\n",
                    row.l,
                    row.split,
                    lambdas,
                    format_sig(row.entropy_bits)
                ));
            }
            Ok(out)
        }
        OutputFormat::Json => to_json(&serde_json::json!({ "rows": rows })),
    }
}

#[derive(Debug, Serialize)]
struct JcDressedRow {
    n: usize,
    sign: &'static str,
    /// None encodes the infinite mixing ratio of the decoupled minus branch.
    beta: Option<f64>,
    energy: f64,
    entropy_bits: f64,
}

#[derive(Debug, Serialize)]
struct JcSeriesRow {
    t: f64,
    p_excited: f64,
}

/// Dressed-level table for n = 0..n_max-2 plus the Rabi population series.
pub fn cmd_jc(config: &RunConfig) -> Result<String> {
    let params = config.jc_params()?;

    let mut dressed = Vec::new();
    for n in 0..params.n_max().saturating_sub(1) {
        for sign in [DressedSign::Plus, DressedSign::Minus] {
            let ds = dressed_state(&params, n, sign)?;
            let entropy = jc_entropy(&params, n, sign)?;
            dressed.push(JcDressedRow {
                n,
                sign: sign.label(),
                beta: if ds.beta.is_finite() { Some(ds.beta) } else { None },
                energy: ds.energy,
                entropy_bits: entropy,
            });
        }
    }

    let rabi = rabi_frequency(&params, config.photon_n);
    let t_max = match config.t_max {
        Some(t) => t,
        // Five periods of the population oscillation (frequency 2R).
        None if rabi > 0.0 => 5.0 * std::f64::consts::PI / rabi,
        None => 10.0,
    };
    let steps = config.t_steps;
    let t_grid: Vec<f64> = (0..steps)
        .map(|i| i as f64 * t_max / (steps - 1) as f64)
        .collect();
    let series: Vec<JcSeriesRow> = rabi_evolution(&params, config.photon_n, &t_grid)?
        .into_iter()
        .map(|p| JcSeriesRow {
            t: p.t,
            p_excited: p.p_excited,
        })
        .collect();

    match config.format {
        OutputFormat::Csv => {
            let mut out = String::from("n,sign,beta,energy,entropy_bits\n");
            for row in &dressed {
                let beta = match row.beta {
                    Some(b) => format_sig(b),
                    None => "inf".into(),
                };
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.n,
                    row.sign,
                    beta,
                    format_sig(row.energy),
                    format_sig(row.entropy_bits)
                ));
            }
            out.push('\n');
            out.push_str("t,p_excited\n");
            for row in &series {
                out.push_str(&format!(
                    "{},{}\n",
                    format_sig(row.t),
                    format_sig(row.p_excited)
                ));
            }
            Ok(out)
        }
        OutputFormat::Json => to_json(&serde_json::json!({
            "dressed": dressed,
            "series": series,
        })),
    }
}

/// Runs every invariant suite; the report is always JSON.
pub fn cmd_verify(config: &RunConfig) -> Result<(String, VerifyReport)> {
    let ring = config.ring_params()?;
    let jc = config.jc_params()?;
    let report = run_all(&ring, &jc, DEFAULT_SEED);
    let rendered = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::InvalidParameter(format!("report serialization failed: {e}")))?;
    Ok((rendered + "\n", report))
}

fn to_json(value: &serde_json::Value) -> Result<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Error::InvalidParameter(format!("serialization failed: {e}")))
}

/// Writes rendered output to the configured path, or stdout when none is set.
pub fn write_output(config: &RunConfig, content: &str) -> Result<()> {
    match &config.out {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
            file.write_all(content.as_bytes()).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

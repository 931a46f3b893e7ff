use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lhring::cli::{
    cmd_entangle, cmd_jc, cmd_spectrum, cmd_verify, write_output, PartialConfig, RunConfig,
};
use lhring::Result;

#[derive(Parser)]
#[command(
    name = "lhring",
    version,
    about = "Exchange-coupled qubit ring: spectra, entanglement cascade, Jaynes-Cummings dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exciton band, lattice levels, level gap, and the extra-level index.
    Spectrum(CommonArgs),
    /// Entropy cascade of the ring eigenstates under one-qubit splits.
    Entangle(CommonArgs),
    /// Dressed levels, entropies, and the Rabi population series.
    Jc(CommonArgs),
    /// Run every invariant suite and emit a JSON report.
    Verify(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Pigment excitation energy E0 (cm^-1).
    #[arg(long, allow_hyphen_values = true)]
    e0: Option<f64>,
    /// Neighbor interaction V0 (cm^-1).
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<f64>,
    /// Exciton index bound N of the aggregate.
    #[arg(long = "big-n")]
    big_n: Option<u32>,
    /// Number of qubits on the loop (even).
    #[arg(long = "two-n")]
    two_n: Option<usize>,
    /// Mode index for `entangle` (-1, 0, 1, or 2); all four when omitted.
    #[arg(long, allow_hyphen_values = true)]
    l: Option<i32>,
    /// Field frequency nu (natural units).
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// Detuning delta.
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Lattice-field coupling g.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<f64>,
    /// Fock truncation (photon numbers 0..=n_max).
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    /// Photon index of the Rabi series.
    #[arg(long = "photon-n")]
    photon_n: Option<usize>,
    /// End of the time grid; defaults to five oscillation periods.
    #[arg(long = "t-max", allow_hyphen_values = true)]
    t_max: Option<f64>,
    /// Number of samples on the time grid.
    #[arg(long = "t-steps")]
    t_steps: Option<usize>,
    /// Output format: csv or json (verify always emits JSON).
    #[arg(long)]
    format: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key = value config file (flags take precedence).
    #[arg(long)]
    config: Option<PathBuf>,
}

impl CommonArgs {
    fn resolve(self) -> Result<RunConfig> {
        let file = match &self.config {
            Some(path) => Some(PartialConfig::from_file(path)?),
            None => None,
        };
        let flags = PartialConfig {
            e0: self.e0,
            v0: self.v0,
            big_n: self.big_n,
            two_n: self.two_n,
            l: self.l,
            nu: self.nu,
            delta: self.delta,
            g: self.g,
            n_max: self.n_max,
            photon_n: self.photon_n,
            t_max: self.t_max,
            t_steps: self.t_steps,
            format: self.format,
            out: self.out,
        };
        PartialConfig::resolve(flags, file)
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Spectrum(args) => {
            let config = args.resolve()?;
            let rendered = cmd_spectrum(&config)?;
            write_output(&config, &rendered)
        }
        Command::Entangle(args) => {
            let config = args.resolve()?;
            let rendered = cmd_entangle(&config)?;
            write_output(&config, &rendered)
        }
        Command::Jc(args) => {
            let config = args.resolve()?;
            let rendered = cmd_jc(&config)?;
            write_output(&config, &rendered)
        }
        Command::Verify(args) => {
            let config = args.resolve()?;
            let (rendered, report) = cmd_verify(&config)?;
            write_output(&config, &rendered)?;
            report.into_result().map(|_| ())
        }
    }
}

fn main() -> ExitCode {
    // Malformed flags are validation errors (exit 1); help and version
    // remain successful exits.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

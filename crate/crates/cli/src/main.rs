//! `braidloc`: verify Yang–Baxter type operators, build braid representations
//! and run the fusion-ring integrality test from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad input.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use braidloc::{EtaFormula, Tolerance};

#[derive(Parser, Debug)]
#[command(name = "braidloc", version, about = "Braid representations from (generalized) Yang-Baxter operators")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Absolute and relative tolerance for every residual.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Output path for the command's artifact (matrix, report or directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl GlobalOpts {
    pub fn tolerance(&self) -> braidloc::Result<Tolerance> {
        Tolerance::new(self.tol, self.tol)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the gYBE, far-commutativity and unitarity of an operator file.
    Verify { file: PathBuf },
    /// Write the image of a braid word to a matrix file.
    Rep {
        file: PathBuf,
        /// Number of strands.
        #[arg(long)]
        n: usize,
        /// Space-separated signed generators, e.g. "1 2 -1".
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
    },
    /// Run the full pipeline on the bundled 8x8 operator and sl3 fusion data.
    CaseStudy {
        #[arg(long, value_enum, default_value_t = Eta::Rank3)]
        eta: Eta,
    },
    #[command(subcommand)]
    Fusion(FusionCmd),
    #[command(subcommand)]
    Hecke(HeckeCmd),
    #[command(subcommand)]
    Trace(TraceCmd),
    #[command(subcommand)]
    Quasi(QuasiCmd),
    #[command(subcommand)]
    Tl(TlCmd),
    #[command(subcommand)]
    Image(ImageCmd),
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    #[command(subcommand)]
    Quaternion(QuaternionCmd),
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Subcommand, Debug)]
pub enum FusionCmd {
    /// Perron-Frobenius integrality test on a fusion file.
    Obstruct { file: PathBuf },
    /// Search positive integer chains w^m a_n = G_n a_{n+1}.
    Multiplicities {
        file: PathBuf,
        #[arg(long)]
        w: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = braidloc::fusion::DEFAULT_WINDOW)]
        window: usize,
        #[arg(long, default_value_t = braidloc::fusion::DEFAULT_BOUND)]
        bound: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum HeckeCmd {
    /// Fit the first generator of B_n to a quadratic relation.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum TraceCmd {
    /// Markov trace factorization over all words up to a length cap.
    Markov {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Eta::Rank3)]
        eta: Eta,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuasiCmd {
    /// Axiom residuals and braid relations of a quasi-braided space file.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum TlCmd {
    /// Dimensions of the Temperley-Lieb quotients for sizes 1..=n.
    Dims {
        #[arg(long)]
        ell: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum ImageCmd {
    /// Projective closure of the image of B_n.
    Closure {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SpectrumCmd {
    /// Test the spectrum of the first generator for the pattern {-chi, chi e^{i theta}}.
    Classify {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Target angle in radians (default 2*pi/6).
        #[arg(long, default_value_t = braidloc::gybe::SIXTH_ROOT_ANGLE)]
        theta: f64,
    },
}

#[derive(Subcommand, Debug)]
pub enum QuaternionCmd {
    /// Emit the 8x8 image of the quaternionic element r.
    EmitR {
        /// Use the variant whose last term is j (x) i (x) i.
        #[arg(long)]
        as_printed: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum FixturesCmd {
    /// Write sl2-path-<ell>.json fusion files for ell = 3..=12.
    Generate,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eta {
    /// (1 - q^-2)/(1 + q^3)
    Printed,
    /// q(1 - q^2)/((1 + q)(1 - q^3))
    Rank3,
}

impl From<Eta> for EtaFormula {
    fn from(e: Eta) -> Self {
        match e {
            Eta::Printed => EtaFormula::AsPrinted,
            Eta::Rank3 => EtaFormula::HeckeRank3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => {
            let text = if cli.global.json { report.render_json() + "\n" } else { report.render_text() };
            // A closed pipe downstream is not a verification failure.
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(if report.pass { 0 } else { 1 })
        }
        Err(err) => {
            eprintln!("braidloc: {err}");
            ExitCode::from(if commands::is_input_error(&err) { 2 } else { 1 })
        }
    }
}

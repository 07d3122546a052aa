//! `hbound`: constructs the Hadamard, digraph and association-scheme objects
//! and verifies their claimed properties, emitting a pass/fail report.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hoffman_core::biangular::Variant;

use report::Report;

#[derive(Parser)]
#[command(name = "hbound", version, about = "Hoffman coclique bound toolkit")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an object and write it as matrix files.
    #[command(subcommand)]
    Construct(Construct),
    /// Translate between skew-Bush-type Hadamard matrices and DRADs.
    #[command(subcommand)]
    Convert(Convert),
    /// Check a claimed property of an object read from disk.
    #[command(subcommand)]
    Verify(Verify),
    /// Eigenvalues of (A + A^T)/2 and the minimum real part.
    Spectrum { matrix: PathBuf },
    /// Hoffman bound, optionally certifying a coclique or coclique partition.
    Hoffman {
        matrix: PathBuf,
        #[arg(long)]
        coclique: Option<PathBuf>,
        #[arg(long)]
        partition: Option<PathBuf>,
    },
    /// Association scheme utilities.
    #[command(subcommand)]
    Scheme(SchemeCmd),
}

#[derive(Args)]
struct OutDir {
    /// Directory receiving the output files.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Subcommand)]
enum Construct {
    /// Sylvester Hadamard matrix of order 2^k.
    Sylvester {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: OutDir,
    },
    /// Regular biangular matrix and its class-4 scheme.
    Biangular {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "symmetric")]
        variant: Variant,
        /// Hadamard matrix of order n; Sylvester when omitted.
        #[arg(long)]
        hadamard: Option<PathBuf>,
        #[command(flatten)]
        out: OutDir,
    },
    /// The built-in class-5 scheme on 160 points.
    Drad160 {
        #[command(flatten)]
        out: OutDir,
    },
    /// Class-5 scheme from a BGW matrix and a Hadamard matrix of order 2n.
    Class5 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bgw: PathBuf,
        #[arg(long)]
        hadamard: PathBuf,
        #[command(flatten)]
        out: OutDir,
    },
    /// The order-4 skew-Bush-type Hadamard matrix.
    SkewBush {
        #[command(flatten)]
        out: OutDir,
    },
}

#[derive(Subcommand)]
enum Convert {
    /// Skew-Bush-type Hadamard matrix to DRAD (writes A.mat and blocks.txt).
    H2d {
        matrix: PathBuf,
        #[command(flatten)]
        out: OutDir,
    },
    /// DRAD with a coclique partition to a skew-Bush-type Hadamard matrix.
    D2h {
        matrix: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[command(flatten)]
        out: OutDir,
    },
}

#[derive(Subcommand)]
enum Verify {
    Hadamard {
        matrix: PathBuf,
    },
    Bush {
        matrix: PathBuf,
    },
    SkewBush {
        matrix: PathBuf,
    },
    Nrd {
        matrix: PathBuf,
    },
    Drad {
        matrix: PathBuf,
    },
    /// A directory holding A0.mat..Ad.mat and optionally P.mat and Q.mat.
    Scheme {
        dir: PathBuf,
    },
    Bgw {
        file: PathBuf,
        /// Row weight; defaults to size - 1.
        #[arg(long)]
        k: Option<usize>,
        /// Balance parameter; defaults to k - 1.
        #[arg(long)]
        lambda: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// Numeric eigenmatrices of the scheme in a directory.
    Eigen {
        dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Construct(c) => match c {
            Construct::Sylvester { .. } => "construct sylvester",
            Construct::Biangular { .. } => "construct biangular",
            Construct::Drad160 { .. } => "construct drad160",
            Construct::Class5 { .. } => "construct class5",
            Construct::SkewBush { .. } => "construct skew-bush",
        },
        Command::Convert(c) => match c {
            Convert::H2d { .. } => "convert h2d",
            Convert::D2h { .. } => "convert d2h",
        },
        Command::Verify(v) => match v {
            Verify::Hadamard { .. } => "verify hadamard",
            Verify::Bush { .. } => "verify bush",
            Verify::SkewBush { .. } => "verify skew-bush",
            Verify::Nrd { .. } => "verify nrd",
            Verify::Drad { .. } => "verify drad",
            Verify::Scheme { .. } => "verify scheme",
            Verify::Bgw { .. } => "verify bgw",
        },
        Command::Spectrum { .. } => "spectrum",
        Command::Hoffman { .. } => "hoffman",
        Command::Scheme(SchemeCmd::Eigen { .. }) => "scheme eigen",
    }
}

fn run(command: Command) -> anyhow::Result<Report> {
    use commands::*;
    let name = command_name(&command);
    match command {
        Command::Construct(c) => match c {
            Construct::Sylvester { k, out } => construct_sylvester(name, k, &out.out_dir),
            Construct::Biangular {
                n,
                variant,
                hadamard,
                out,
            } => construct_biangular(name, n, variant, hadamard.as_deref(), &out.out_dir),
            Construct::Drad160 { out } => construct_drad160(name, &out.out_dir),
            Construct::Class5 { n, bgw, hadamard, out } => construct_class5(name, n, &bgw, &hadamard, &out.out_dir),
            Construct::SkewBush { out } => construct_skew_bush(name, &out.out_dir),
        },
        Command::Convert(c) => match c {
            Convert::H2d { matrix, out } => convert_h2d(name, &matrix, &out.out_dir),
            Convert::D2h { matrix, partition, out } => convert_d2h(name, &matrix, &partition, &out.out_dir),
        },
        Command::Verify(v) => match v {
            Verify::Hadamard { matrix } => verify_hadamard(name, &matrix),
            Verify::Bush { matrix } => verify_bush(name, &matrix, false),
            Verify::SkewBush { matrix } => verify_bush(name, &matrix, true),
            Verify::Nrd { matrix } => verify_nrd(name, &matrix, false),
            Verify::Drad { matrix } => verify_nrd(name, &matrix, true),
            Verify::Scheme { dir } => verify_scheme_dir(name, &dir),
            Verify::Bgw { file, k, lambda } => verify_bgw(name, &file, k, lambda),
        },
        Command::Spectrum { matrix } => spectrum(name, &matrix),
        Command::Hoffman {
            matrix,
            coclique,
            partition,
        } => hoffman(name, &matrix, coclique.as_deref(), partition.as_deref()),
        Command::Scheme(SchemeCmd::Eigen { dir, seed }) => scheme_eigen(name, &dir, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let report = run(cli.command).unwrap_or_else(|e| {
        let mut r = Report::new(name);
        r.error("input", format!("{e:#}"));
        r
    });
    print!("{}", report.render(cli.json));
    ExitCode::from(report.exit_code())
}

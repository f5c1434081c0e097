use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use horseshoe::cutpoint::{simulate, two_party_legislature, Legislature};
use horseshoe::kernel::{build, KernelSpec, KernelVariant};
use horseshoe::pipeline::{
    analyze, compare_files, emit, filter_participation, format_real, parse_rollcall, save_rollcall,
    write_rollcall, RollCallDataset,
};
use horseshoe::spectral::eigendecompose;
use horseshoe::theory::{solve_roots, Family};
use horseshoe::verify::{run_all, VerifyOptions};
use horseshoe::Result;

#[derive(Parser)]
#[command(name = "horseshoe", version, about = "Horseshoe analysis of one-dimensional proximity data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    CosCentered,
    Sin,
    CosUncentered,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::CosCentered => Family::CosCentered,
            FamilyArg::Sin => Family::Sin,
            FamilyArg::CosUncentered => Family::CosUncentered,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Proximity,
    Centered,
    Uncentered,
    Twin,
}

impl From<VariantArg> for KernelVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Proximity => KernelVariant::Proximity,
            VariantArg::Centered => KernelVariant::CenteredScaled,
            VariantArg::Uncentered => KernelVariant::Uncentered,
            VariantArg::Twin => KernelVariant::Twin,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Matrix,
    Eigen,
}

#[derive(Subcommand)]
enum Command {
    /// Roots of a transcendental eigenvalue equation and their eigenvalues.
    Theory {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Print an exponential-kernel matrix or its spectrum.
    Kernel {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "eigen")]
        emit: EmitArg,
    },
    /// Simulate cut-point roll calls and write a vote file.
    Simulate {
        /// Legislators, equally spaced; with --two-party, legislators per party.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bills: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        two_party: bool,
        /// Distance between the two parties, in (0, 1].
        #[arg(long, default_value_t = 0.5, requires = "two_party")]
        gap: f64,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embed a vote file and order its legislators.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Double center the proximities without squaring them first.
        #[arg(long)]
        no_square: bool,
        #[arg(long, default_value_t = 0.9)]
        min_participation: f64,
        #[arg(long)]
        out: PathBuf,
        /// Also write horseshoe.svg.
        #[arg(long)]
        svg: bool,
    },
    /// Rank correlation between an order.csv and a score file.
    Compare {
        #[arg(long)]
        order: PathBuf,
        #[arg(long)]
        scores: PathBuf,
    },
    /// Run the acceptance checks.
    Verify {
        /// Skip the largest theory grid size.
        #[arg(long)]
        fast: bool,
        /// Roll-call file for the real-data eigenvalue check.
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
}

fn run(cmd: Command) -> Result<bool> {
    let mut out = io::stdout().lock();
    let w = |r: io::Result<()>| r.map_err(|e| horseshoe::Error::Io { path: "<stdout>".into(), source: e });
    match cmd {
        Command::Theory { family, count } => {
            w(writeln!(out, "branch,a,lambda,equation_residual"))?;
            for r in solve_roots(family.into(), count)? {
                w(writeln!(
                    out,
                    "{},{},{},{}",
                    r.branch,
                    format_real(r.a),
                    format_real(r.lambda),
                    format_real(r.residual())
                ))?;
            }
        }
        Command::Kernel { n, variant, emit } => {
            let m = build(&KernelSpec::new(n, variant.into())?)?;
            match emit {
                EmitArg::Matrix => {
                    for i in 0..m.order() {
                        let row: Vec<String> = m.row(i).iter().map(|&x| format_real(x)).collect();
                        w(writeln!(out, "{}", row.join(",")))?;
                    }
                }
                EmitArg::Eigen => {
                    w(writeln!(out, "index,eigenvalue"))?;
                    for (j, v) in eigendecompose(&m)?.values().iter().enumerate() {
                        w(writeln!(out, "{},{}", j + 1, format_real(*v)))?;
                    }
                }
            }
        }
        Command::Simulate { n, bills, seed, two_party, gap, out: path } => {
            let leg = if two_party {
                two_party_legislature(n, gap)?
            } else {
                Legislature::equally_spaced(n)?
            };
            let data = RollCallDataset::from_simulation(&leg, simulate(&leg, bills, seed)?)?;
            match path {
                Some(p) => save_rollcall(&data, &p)?,
                None => write_rollcall(&data, &mut out)?,
            }
        }
        Command::Analyze { input, no_square, min_participation, out: dir, svg } => {
            let data = filter_participation(&parse_rollcall(&input)?, min_participation)?;
            let r = analyze(&data, !no_square)?;
            let files = emit(&r, &dir, svg)?;
            let v = &r.eigenvalues;
            w(writeln!(out, "legislators: {} (dropped {})", data.len(), data.dropped().len()))?;
            w(writeln!(out, "top eigenvalues: {} {} {}", format_real(v[0]), format_real(v[1]), format_real(v[2])))?;
            w(writeln!(out, "dropped negative mass: {}", format_real(r.diagnostics.dropped_negative_mass)))?;
            for f in files {
                w(writeln!(out, "wrote {}", f.display()))?;
            }
        }
        Command::Compare { order, scores } => {
            let r = compare_files(&order, &scores)?;
            w(writeln!(out, "joined: {}", r.joined))?;
            w(writeln!(out, "spearman: {}", format_real(r.spearman)))?;
            w(writeln!(out, "kendall: {}", format_real(r.kendall)))?;
            if r.degenerate_ties {
                w(writeln!(out, "warning: constant ranks or scores; correlations reported as 0"))?;
            }
        }
        Command::Verify { fast, dataset } => {
            let reports = run_all(&VerifyOptions { fast, dataset });
            for r in &reports {
                w(writeln!(out, "{r}"))?;
            }
            let failed = reports.iter().filter(|r| r.failed()).count();
            w(writeln!(out, "{} checks, {failed} failed", reports.len()))?;
            return Ok(failed == 0);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

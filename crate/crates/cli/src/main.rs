//! `ipwidth`: solve, generate and measure feasibility instances.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ipwidth_cli::bench::{parse_corpus_spec, run_bench, to_csv};
use ipwidth_cli::format::{parse_instance, write_instance};
use ipwidth_cli::{default_seed, SEED_ENV};
use ipwidth_core::cnf::{brute_force_sat, parse_dimacs};
use ipwidth_core::matroid::{cut_profile, optimal_ordering_bruteforce, ordering_width, PathOrdering};
use ipwidth_core::reductions::{
    reduce_binary, reduce_eth, reduce_pathwidth, witness_eth, witness_pathwidth, IpInstance,
};
use ipwidth_core::solver::{solve_box_dp, solve_bruteforce, solve_pathwidth_dp, SolveReport};

#[derive(Parser)]
#[command(
    name = "ipwidth",
    about = "Feasibility of non-negative integer programs by column-ordering dynamic programming, \
             with CNF-to-IP instance compilers",
    long_about = None,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Pathwidth,
    Box,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Pathwidth,
    Binary,
    Eth,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderingArg {
    Given,
    Natural,
    Optimal,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility of an instance file and print a witness.
    ///
    /// Exit code 0 means feasible, 1 infeasible, 2 an error.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        /// Entry cap for --method brute (default: the largest entry of b).
        #[arg(long)]
        cap: Option<u64>,
        /// Write per-stage set sizes and cut dimensions as CSV.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Compile a DIMACS CNF formula into an instance file.
    Reduce {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        /// Number of variable blocks (required for pathwidth/binary).
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report the width and cut profile of an instance's column ordering.
    Width {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "given")]
        ordering: OrderingArg,
    },
    /// Cross-check brute-force satisfiability against the reduced instance.
    ///
    /// Exit code 0 on AGREE, 1 on DISAGREE, 2 on error.
    Check {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        #[arg(long)]
        blocks: Option<usize>,
    },
    /// Run a seeded corpus and emit one CSV record per instance.
    ///
    /// Groups without an explicit seed use the IPWIDTH_SEED environment
    /// variable (default 0). Timing is zero unless --measure is given, so
    /// default runs are byte-for-byte reproducible.
    Bench {
        /// Corpus spec, e.g. "pathwidth:n=6,m=4,c=2,count=5,seed=11;eth:n=5,m=3,count=4".
        #[arg(long)]
        corpus: String,
        #[arg(long)]
        out: PathBuf,
        /// Record wall-clock milliseconds (breaks reproducibility).
        #[arg(long)]
        measure: bool,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { instance, method, cap, stats } => cmd_solve(instance, method, cap, stats),
        Command::Reduce { cnf, construction, blocks, out } => cmd_reduce(cnf, construction, blocks, out),
        Command::Width { instance, ordering } => cmd_width(instance, ordering),
        Command::Check { cnf, construction, blocks } => cmd_check(cnf, construction, blocks),
        Command::Bench { corpus, out, measure } => cmd_bench(&corpus, out, measure),
    }
}

fn load_instance(path: &PathBuf) -> Result<IpInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_formula(path: &PathBuf) -> Result<ipwidth_core::cnf::CnfFormula> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_dimacs(&text).map_err(|e| anyhow!("parsing {}: {e}", path.display()))
}

fn cmd_solve(
    instance: PathBuf,
    method: Method,
    cap: Option<u64>,
    stats: Option<PathBuf>,
) -> Result<u8> {
    let inst = load_instance(&instance)?;
    let started = std::time::Instant::now();
    let mut report: SolveReport = match method {
        Method::Pathwidth => solve_pathwidth_dp(&inst)?,
        Method::Box => solve_box_dp(&inst)?,
        Method::Brute => {
            let cap = cap.unwrap_or(inst.max_b().max(0) as u64);
            solve_bruteforce(&inst, cap)?
        }
    };
    report.stats.wall_millis = started.elapsed().as_millis() as u64;

    if let Some(path) = stats {
        let mut csv = String::from("stage,size,dim\n");
        for (i, &size) in report.stats.stage_sizes.iter().enumerate() {
            let dim = report
                .stats
                .stage_dims
                .get(i)
                .map(|d| d.to_string())
                .unwrap_or_default();
            let _ = writeln!(csv, "{},{},{}", i + 1, size, dim);
        }
        fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
    }

    if report.feasible {
        println!("FEASIBLE");
        let witness = report.witness.expect("feasible reports carry a witness");
        let mut line = String::from("x");
        for v in &witness.x {
            let _ = write!(line, " {v}");
        }
        println!("{line}");
        Ok(0)
    } else {
        println!("INFEASIBLE");
        Ok(1)
    }
}

fn build_reduction(
    phi: &ipwidth_core::cnf::CnfFormula,
    construction: ConstructionArg,
    blocks: Option<usize>,
) -> Result<IpInstance> {
    let need_blocks = || blocks.ok_or_else(|| anyhow!("--blocks is required for this construction"));
    let inst = match construction {
        ConstructionArg::Pathwidth => reduce_pathwidth(phi, need_blocks()?)?,
        ConstructionArg::Binary => reduce_binary(phi, need_blocks()?)?,
        ConstructionArg::Eth => reduce_eth(phi)?,
    };
    Ok(inst)
}

fn cmd_reduce(
    cnf: PathBuf,
    construction: ConstructionArg,
    blocks: Option<usize>,
    out: PathBuf,
) -> Result<u8> {
    let phi = load_formula(&cnf)?;
    let inst = build_reduction(&phi, construction, blocks)?;
    fs::write(&out, write_instance(&inst)).with_context(|| format!("writing {}", out.display()))?;
    eprintln!("wrote {} ({} rows, {} cols)", out.display(), inst.rows(), inst.cols());
    Ok(0)
}

fn cmd_width(instance: PathBuf, ordering: OrderingArg) -> Result<u8> {
    let inst = load_instance(&instance)?;
    let matrix = inst.to_rational_matrix();
    let (ord, show_order) = match ordering {
        OrderingArg::Given => {
            let ord = inst
                .ordering()
                .ok_or_else(|| anyhow!("instance carries no ordering; use --ordering natural"))?;
            (ord.clone(), false)
        }
        OrderingArg::Natural => (PathOrdering::natural(inst.cols()), false),
        OrderingArg::Optimal => {
            let (ord, _) = optimal_ordering_bruteforce(&matrix)?;
            (ord, true)
        }
    };
    let width = ordering_width(&matrix, &ord)?;
    let profile = cut_profile(&matrix, &ord)?;
    println!("width {width}");
    let mut cuts = String::from("cuts");
    for d in &profile {
        let _ = write!(cuts, " {d}");
    }
    println!("{cuts}");
    if show_order {
        let mut line = String::from("order");
        for &p in ord.as_slice() {
            let _ = write!(line, " {}", p + 1);
        }
        println!("{line}");
    }
    Ok(0)
}

fn cmd_check(cnf: PathBuf, construction: ConstructionArg, blocks: Option<usize>) -> Result<u8> {
    let phi = load_formula(&cnf)?;
    let sat = brute_force_sat(&phi).map_err(|e| anyhow!("{e}"))?;
    let inst = build_reduction(&phi, construction, blocks)?;
    let report = solve_pathwidth_dp(&inst)?;

    println!("sat {}", if sat.is_some() { "SATISFIABLE" } else { "UNSATISFIABLE" });
    println!("ip {}", if report.feasible { "FEASIBLE" } else { "INFEASIBLE" });

    let agree = sat.is_some() == report.feasible;
    if let Some(assignment) = &sat {
        let witness = match construction {
            ConstructionArg::Eth => witness_eth(&inst, assignment)?,
            _ => witness_pathwidth(&inst, assignment)?,
        };
        if !inst.is_solution(&witness.x) {
            bail!("witness failed verification");
        }
        println!("witness verified");
    }
    if agree {
        println!("AGREE");
        Ok(0)
    } else {
        println!("DISAGREE");
        Ok(1)
    }
}

fn cmd_bench(corpus: &str, out: PathBuf, measure: bool) -> Result<u8> {
    let groups = parse_corpus_spec(corpus, default_seed())
        .with_context(|| format!("parsing corpus spec (seed env: {SEED_ENV})"))?;
    let records = run_bench(&groups, measure)?;
    fs::write(&out, to_csv(&records)).with_context(|| format!("writing {}", out.display()))?;
    eprintln!("wrote {} ({} records)", out.display(), records.len());
    Ok(0)
}

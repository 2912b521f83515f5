use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use holoforge::commands::*;
use holoforge::repro::Params;
use holoforge::suites::DEFAULT_CASES;
use holoforge::RunReport;

#[derive(Parser)]
#[command(name = "holoforge", version, about = "Holomorphs of finite modules: normal forms, conjugacy and isomorphism checks")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration cap on group orders.
    #[arg(long, global = true, env = "HOLOFORGE_CAP", default_value_t = 1 << 20)]
    cap: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rational canonical form with a transforming matrix.
    Rcf { a: PathBuf },
    /// Similarity over F_p, with a witness when similar.
    Similar { a: PathBuf, b: PathBuf },
    /// Minimal and characteristic polynomials.
    Minpoly { a: PathBuf },
    /// Jordan partition of a unipotent matrix.
    Partition { a: PathBuf },
    /// Whether Hol(V,<a>) and Hol(V,<b>) are isomorphic, over a field.
    Holiso { a: PathBuf, b: PathBuf },
    /// Conjugacy of <a> and <b> over Z/p^m.
    ConjRing {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = holoforge_core::conjugacy::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Structural report of a group given as JSON.
    Group { spec: PathBuf },
    /// Brute-force isomorphism test of two groups given as JSON.
    OracleIso {
        g1: PathBuf,
        g2: PathBuf,
        #[arg(long, default_value_t = holoforge_core::oracle::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Compare the linear decision with the oracle on GL_n(p).
    VerifyLindo {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// all, reps or max-order:K
        #[arg(long, default_value = "all", value_parser = scope_arg)]
        scope: holoforge_core::oracle::LindoScope,
        #[arg(long, default_value_t = holoforge_core::oracle::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Reproduce a worked example.
    Example {
        name: String,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Run a property suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
    },
}

fn scope_arg(s: &str) -> Result<holoforge_core::oracle::LindoScope, String> {
    parse_scope(s).ok_or_else(|| format!("unknown scope {s:?}"))
}

fn run(cli: &Cli) -> holoforge::Result<RunReport> {
    match &cli.cmd {
        Cmd::Rcf { a } => cmd_rcf(a),
        Cmd::Similar { a, b } => cmd_similar(a, b),
        Cmd::Minpoly { a } => cmd_minpoly(a),
        Cmd::Partition { a } => cmd_partition(a),
        Cmd::Holiso { a, b } => cmd_holiso(a, b),
        Cmd::ConjRing { a, b, budget } => cmd_conj_ring(a, b, *budget, cli.seed),
        Cmd::Group { spec } => cmd_group(spec, cli.cap),
        Cmd::OracleIso { g1, g2, budget } => cmd_oracle_iso(g1, g2, *budget, cli.cap, cli.seed),
        Cmd::VerifyLindo { p, n, scope, budget } => cmd_verify_lindo(*p, *n, *scope, *budget),
        Cmd::Example { name, p, n, m } => cmd_example(name, Params { p: *p, n: *n, m: *m }, cli.cap),
        Cmd::Verify { suite, cases } => cmd_verify(suite, cli.seed, *cases),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

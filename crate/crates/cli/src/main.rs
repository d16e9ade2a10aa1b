//! `blockdet`: block-matrix determinants, commutativity conditions and
//! verification runs from the command line.
//!
//! Exit status: 0 success or equality, 1 inequality or a falsification, 2
//! usage or input error.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use blockdet::conditions::{Cell, ConditionFamily, Edge, Named};
use blockdet::matrix::BlockMatrix;
use blockdet::ncdet::nc_row_det;
use blockdet::ring::Ring;
use blockdet::traces::{
    check_cofactor_column_identity, check_colswap_identity, check_rowswap_identity,
    check_transpose_identity, IdentityCheck,
};
use blockdet::verify::{
    check_identity, classify_size2, counterexample_h, matrix_m1, matrix_m2, matrix_m3,
    matrix_m3_swapped, optimality_counterexample, optimality_scan, run_campaign, OptimalityCase,
    ScanOptions,
};

#[derive(Parser)]
#[command(
    name = "blockdet",
    version,
    about = "Determinants of block matrices with noncommuting blocks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant of the flattened matrix
    Det(InputArgs),
    /// Row-determinant block and its determinant
    Ncdet(InputArgs),
    /// Compare det(Det M) with det M
    Check(InputArgs),
    /// Print a condition of a family at size n
    Family {
        /// f, side:J, down:I, tcol:C, trow:R, kappa, complete, empty, g1..g5, h1..h4
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: usize,
    },
    /// Randomized verification on samples satisfying a family's condition
    Campaign {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "mod:10007")]
        ring: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also print the first failing matrix
        #[arg(long)]
        show_failure: bool,
    },
    /// Classify all 64 conditions on 2×2 block matrices
    Classify2,
    /// Print a built-in counterexample and its two determinants
    Counterexample {
        /// h1..h4, same_row or diff_row
        #[arg(long)]
        which: String,
        /// Size for same_row and diff_row
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
    /// Symbolic reordering identities (1-based indices)
    Symbolic {
        /// colswap, transpose, rowswap or cofactor
        #[arg(long)]
        check: String,
        #[arg(long)]
        n: usize,
        /// colswap: swap columns k and k+1
        #[arg(long)]
        k: Option<usize>,
        /// transpose: the special column
        #[arg(long)]
        c: Option<usize>,
        /// rowswap: the two rows
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        /// rowswap: non-commuting pair as r1,c1,r2,c2
        #[arg(long)]
        missing: Option<String>,
    },
    /// Falsify each edge removal from kappa_n and test graphs above F_n
    Optimality {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Block-matrix file (`-` for stdin)
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    file: Option<String>,
    /// M1, M2, M3, M3col, same_row:N or diff_row:N
    #[arg(long)]
    builtin: Option<String>,
}

/// Exit 2 with a message.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<u8, UsageError>;

fn builtin(name: &str) -> Result<BlockMatrix, UsageError> {
    match name {
        "M1" => return Ok(matrix_m1()),
        "M2" => return Ok(matrix_m2()),
        "M3" => return Ok(matrix_m3()),
        "M3col" => return Ok(matrix_m3_swapped()),
        _ => {}
    }
    if let Some((case, n)) = name.split_once(':') {
        let case: OptimalityCase = case.parse()?;
        let n: usize = n
            .parse()
            .map_err(|_| UsageError(format!("bad size in {name:?}")))?;
        return Ok(optimality_counterexample(case, n)?.matrix);
    }
    Err(UsageError(format!("unknown built-in matrix {name:?}")))
}

fn load(args: &InputArgs) -> Result<BlockMatrix, UsageError> {
    if let Some(name) = &args.builtin {
        return builtin(name);
    }
    let path = args.file.as_deref().expect("clap requires one input");
    let text = if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| UsageError(format!("{path}: {e}")))?
    };
    BlockMatrix::parse(&text).map_err(|e| UsageError(format!("{path}: {e}")))
}

fn cmd_det(args: &InputArgs) -> CmdResult {
    let m = load(args)?;
    println!("det={}", m.flatten().det()?.pretty());
    Ok(0)
}

fn cmd_ncdet(args: &InputArgs) -> CmdResult {
    let m = load(args)?;
    let d = nc_row_det(&m)?;
    print!("{d}");
    println!("det={}", d.det()?.pretty());
    Ok(0)
}

fn cmd_check(args: &InputArgs) -> CmdResult {
    let r = check_identity(&load(args)?)?;
    let verdict = if r.equal { "EQUAL" } else { "UNEQUAL" };
    println!("lhs={} rhs={} {verdict}", r.lhs.pretty(), r.rhs.pretty());
    Ok(if r.equal { 0 } else { 1 })
}

fn cmd_family(id: &str, n: usize) -> CmdResult {
    let family: ConditionFamily = id.parse()?;
    print!("{}", family.instantiate(n)?);
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_campaign(
    family: &str,
    n: usize,
    m: usize,
    ring: &str,
    trials: usize,
    seed: u64,
    show_failure: bool,
) -> CmdResult {
    let family: ConditionFamily = family.parse()?;
    let g = family.instantiate(n)?;
    let ring: Ring = ring.parse()?;
    let report = run_campaign(&g, m, &ring, trials, seed)?.with_label(family.to_string());
    println!("{report}");
    if let (true, Some(f)) = (show_failure, &report.first_failure) {
        print!("{}", f.matrix);
    }
    Ok(if report.failures == 0 { 0 } else { 1 })
}

fn cmd_classify2() -> CmdResult {
    let c = classify_size2().map_err(|e| UsageError(e.to_string()))?;
    print!("{c}");
    Ok(0)
}

fn cmd_counterexample(which: &str, n: usize) -> CmdResult {
    if let Ok(case) = which.parse::<OptimalityCase>() {
        let c = optimality_counterexample(case, n)?;
        print!("{}", c.matrix);
        print!("{}", c.nc_det);
        println!(
            "det_of_ncdet={} det_flat={} dichotomy={}",
            c.det_of_ncdet.pretty(),
            c.det_flat.pretty(),
            c.dichotomy_holds()
        );
        return Ok(0);
    }
    let named: Named = which.parse()?;
    let (id, m) = counterexample_h(named)?;
    let r = check_identity(&m)?;
    println!("# {id} for {named}");
    print!("{m}");
    println!("lhs={} rhs={}", r.lhs.pretty(), r.rhs.pretty());
    Ok(0)
}

fn one_based(name: &str, v: Option<usize>) -> Result<usize, UsageError> {
    match v {
        Some(x) if x >= 1 => Ok(x - 1),
        Some(_) => Err(UsageError(format!("--{name} is 1-based"))),
        None => Err(UsageError(format!("--{name} is required"))),
    }
}

fn parse_missing(s: &str) -> Result<Edge, UsageError> {
    let nums: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| UsageError(format!("--missing expects r1,c1,r2,c2, got {s:?}")))?;
    match nums[..] {
        [r1, c1, r2, c2] if nums.iter().all(|&x| x >= 1) => {
            Ok((Cell::new(r1 - 1, c1 - 1), Cell::new(r2 - 1, c2 - 1)))
        }
        _ => Err(UsageError(format!(
            "--missing expects four 1-based indices, got {s:?}"
        ))),
    }
}

fn cmd_symbolic(
    check: &str,
    n: usize,
    k: Option<usize>,
    c: Option<usize>,
    i: Option<usize>,
    j: Option<usize>,
    missing: Option<&str>,
) -> CmdResult {
    let result: IdentityCheck = match check {
        "colswap" => check_colswap_identity(n, one_based("k", k)?)?,
        "transpose" => check_transpose_identity(n, one_based("c", c)?)?,
        "rowswap" => {
            let missing = missing.map(parse_missing).transpose()?;
            check_rowswap_identity(n, one_based("i", i)?, one_based("j", j)?, missing)?
        }
        "cofactor" => check_cofactor_column_identity(n)?,
        other => return Err(UsageError(format!("unknown check {other:?}"))),
    };
    let verdict = if result.holds { "PASS" } else { "FAIL" };
    println!(
        "check={check} n={n} lhs_terms={} rhs_terms={} {verdict}",
        result.lhs_terms, result.rhs_terms
    );
    Ok(if result.holds { 0 } else { 1 })
}

fn cmd_optimality(n: usize, trials: usize, samples: usize, seed: u64) -> CmdResult {
    let scan = optimality_scan(
        n,
        &ScanOptions {
            trials,
            samples,
            seed,
        },
    )?;
    for e in &scan.edges {
        println!(
            "edge={}-{} case={} satisfies={} lhs={} rhs={} {}",
            e.edge.0,
            e.edge.1,
            e.case,
            e.satisfies,
            e.lhs.pretty(),
            e.rhs.pretty(),
            if e.falsified() {
                "FALSIFIED"
            } else {
                "NOT-FALSIFIED"
            }
        );
    }
    for c in &scan.campaigns {
        println!("{}", c.summary_line());
    }
    Ok(if scan.all_ok() { 0 } else { 1 })
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Det(a) => cmd_det(a),
        Command::Ncdet(a) => cmd_ncdet(a),
        Command::Check(a) => cmd_check(a),
        Command::Family { id, n } => cmd_family(id, *n),
        Command::Campaign {
            family,
            n,
            m,
            ring,
            trials,
            seed,
            show_failure,
        } => cmd_campaign(family, *n, *m, ring, *trials, *seed, *show_failure),
        Command::Classify2 => cmd_classify2(),
        Command::Counterexample { which, n } => cmd_counterexample(which, *n),
        Command::Symbolic {
            check,
            n,
            k,
            c,
            i,
            j,
            missing,
        } => cmd_symbolic(check, *n, *k, *c, *i, *j, missing.as_deref()),
        Command::Optimality {
            n,
            trials,
            samples,
            seed,
        } => cmd_optimality(*n, *trials, *samples, *seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

//! Command-line driver: construction, search, evaluation, verification
//! and reference-table reproduction.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 disconnected design, 4 search target unreached.

use std::fs;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use augsquare::construct::{augment, best_cyclic, cyclic_contraction, fill_entries};
use augsquare::designs::Contraction;
use augsquare::formulas::{self, DesignParams};
use augsquare::search::{search_contraction, SearchConfig, SearchResult};
use augsquare::spectra::contraction_cefs;
use augsquare::tables::{A_VALUE_CONVERSIONS, CYCLIC_COMPARISON};
use augsquare::verify::{verify_formula, verify_spectrum, VerificationReport};
use augsquare::Error;

#[derive(Parser)]
#[command(name = "augsquare", version, about = "Augmented designs in square arrays")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Develop a cyclic contraction from an initial block and write it as JSON.
    GenCyclic {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        k: usize,
        /// Initial block, e.g. 1,2,5
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        block: Vec<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hill-climb for a high-efficiency contraction and write the best found.
    Search {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = SearchConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SearchConfig::default().restarts)]
        restarts: usize,
        #[arg(long, default_value_t = SearchConfig::default().max_iters_per_restart)]
        max_iters: usize,
        #[arg(long, default_value_t = SearchConfig::default().plateau_limit)]
        plateau: usize,
        /// Stop early once E_con reaches this value; exit 4 if never reached.
        #[arg(long)]
        target: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the augmented design for a contraction file and write it as CSV.
    Augment {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the closed-form relations against direct eigen-decomposition.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Write the verification report as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute reference tables and report deltas against published values.
    Tables {
        #[arg(long, value_enum)]
        which: WhichTable,
        /// Row subset as v:k pairs, e.g. 10:3,14:4 (default: all rows).
        #[arg(long)]
        rows: Option<String>,
        #[arg(long, default_value_t = SearchConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SearchConfig::default().restarts)]
        restarts: usize,
        #[arg(long, default_value_t = SearchConfig::default().max_iters_per_restart)]
        max_iters: usize,
        #[arg(long, default_value_t = SearchConfig::default().plateau_limit)]
        plateau: usize,
    },
    /// Evaluate the closed-form relations for given (v, k, E_con) scalars.
    Eval {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "e-con")]
        e_con: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichTable {
    /// Best cyclic contraction per row.
    T1Cyclic,
    /// Searched contraction per row.
    T1Search,
    /// Published A-values converted to E_con.
    T2,
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(exit_code(&err));
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Disconnected => 3,
        Error::TargetUnreached(_) => 4,
        _ => 2,
    }
}

fn run(command: Command) -> augsquare::Result<i32> {
    match command {
        Command::GenCyclic { v, k, block, out } => cmd_gen_cyclic(v, k, &block, &out),
        Command::Search {
            v,
            k,
            seed,
            restarts,
            max_iters,
            plateau,
            target,
            out,
        } => {
            let cfg = SearchConfig {
                seed,
                restarts,
                max_iters_per_restart: max_iters,
                plateau_limit: plateau,
                target_e: target,
            };
            cmd_search(v, k, &cfg, &out)
        }
        Command::Augment { input, seed, out } => cmd_augment(&input, seed, &out),
        Command::Verify { input, seed, out } => cmd_verify(&input, seed, out.as_deref()),
        Command::Tables {
            which,
            rows,
            seed,
            restarts,
            max_iters,
            plateau,
        } => {
            let cfg = SearchConfig {
                seed,
                restarts,
                max_iters_per_restart: max_iters,
                plateau_limit: plateau,
                target_e: None,
            };
            cmd_tables(which, rows.as_deref(), &cfg)
        }
        Command::Eval { v, k, e_con } => cmd_eval(v, k, e_con),
    }
}

fn cmd_gen_cyclic(v: usize, k: usize, block: &[usize], out: &PathBuf) -> augsquare::Result<i32> {
    if block.len() != k {
        return Err(Error::BadBlock(format!(
            "block has {} elements, expected k = {k}",
            block.len()
        )));
    }
    let c = cyclic_contraction(v, block)?;
    let report = contraction_cefs(&c)?;
    fs::write(out, c.to_json())?;
    println!("E_con = {:.6}", report.e);
    println!("UB(trivial/AM) = {:.6}", report.ub_trivial);
    Ok(0)
}

fn print_search_summary(result: &SearchResult) {
    println!("E_con = {:.6}", result.report.e);
    println!("UB(trivial/AM) = {:.6}", result.report.ub_trivial);
    println!("%UB(trivial) = {:.2}", result.report.pct_ub_trivial);
    println!("evaluations = {}", result.evaluations);
}

fn cmd_search(v: usize, k: usize, cfg: &SearchConfig, out: &PathBuf) -> augsquare::Result<i32> {
    match search_contraction(v, k, cfg) {
        Ok(result) => {
            fs::write(out, result.best.to_json())?;
            print_search_summary(&result);
            Ok(0)
        }
        Err(Error::TargetUnreached(result)) => {
            fs::write(out, result.best.to_json())?;
            print_search_summary(&result);
            eprintln!("target E_con = {:.6} not reached", cfg.target_e.unwrap_or(f64::NAN));
            Ok(4)
        }
        Err(err) => Err(err),
    }
}

fn cmd_augment(input: &PathBuf, seed: u64, out: &PathBuf) -> augsquare::Result<i32> {
    let c = Contraction::from_json(&fs::read_to_string(input)?)?;
    let con = contraction_cefs(&c)?;
    let design = fill_entries(&augment(&c), seed)?;
    fs::write(out, design.to_csv())?;
    let params = DesignParams::new(c.v(), c.k(), con.e)?;
    let e_test = formulas::e_test(&params);
    println!("v* = {}", design.v_star());
    println!("E_aug = {:.6}", formulas::e_aug(&params));
    println!("E_test = {:.6}", e_test);
    println!("A_test = {:.6}", formulas::a_test(e_test)?);
    Ok(0)
}

#[derive(Serialize)]
struct CombinedReport {
    passed: bool,
    formula: VerificationReport,
    spectrum: VerificationReport,
}

fn cmd_verify(input: &PathBuf, seed: u64, out: Option<&std::path::Path>) -> augsquare::Result<i32> {
    let c = Contraction::from_json(&fs::read_to_string(input)?)?;
    let formula = verify_formula(&c, seed)?;
    let design = fill_entries(&augment(&c), seed)?;
    let spectrum = verify_spectrum(&c, &design)?;
    let passed = formula.passed && spectrum.passed;
    println!(
        "formula:  E_aug(direct) = {:.6}, E_aug(closed form) = {:.6}, max deviation = {:.3e}",
        formula.e_direct, formula.e_predicted, formula.max_deviation
    );
    println!(
        "spectrum: {} cefs matched, max deviation = {:.3e}",
        spectrum.cefs_direct.len(),
        spectrum.max_deviation
    );
    println!("verdict: {}", if passed { "PASS" } else { "FAIL" });
    if let Some(path) = out {
        let combined = CombinedReport { passed, formula, spectrum };
        fs::write(path, serde_json::to_string_pretty(&combined)? + "\n")?;
    }
    Ok(if passed { 0 } else { 1 })
}

fn parse_rows(spec: &str) -> augsquare::Result<Vec<(usize, usize)>> {
    spec.split(',')
        .map(|pair| {
            let (v, k) = pair
                .split_once(':')
                .ok_or_else(|| Error::InvalidParams(format!("bad row spec {pair:?}")))?;
            let v = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad v in {pair:?}")))?;
            let k = k
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("bad k in {pair:?}")))?;
            Ok((v, k))
        })
        .collect()
}

fn row_selected(filter: &Option<Vec<(usize, usize)>>, v: usize, k: usize) -> bool {
    match filter {
        None => true,
        Some(rows) => rows.iter().any(|&(rv, rk)| rv == v && rk == k),
    }
}

fn cmd_tables(
    which: WhichTable,
    rows: Option<&str>,
    cfg: &SearchConfig,
) -> augsquare::Result<i32> {
    let filter = rows.map(parse_rows).transpose()?;
    match which {
        WhichTable::T1Cyclic => {
            println!("{:>4} {:>3} {:>10} {:>10} {:>9}", "v", "k", "E_con", "ref", "delta");
            for row in CYCLIC_COMPARISON {
                if !row_selected(&filter, row.v, row.k) {
                    continue;
                }
                let (_, report) = best_cyclic(row.v, row.k)?;
                println!(
                    "{:>4} {:>3} {:>10.4} {:>10.4} {:>+9.4}",
                    row.v,
                    row.k,
                    report.e,
                    row.cyclic_e,
                    report.e - row.cyclic_e
                );
            }
        }
        WhichTable::T1Search => {
            println!("{:>4} {:>3} {:>10} {:>10} {:>9}", "v", "k", "E_con", "ref", "delta");
            for row in CYCLIC_COMPARISON {
                if !row_selected(&filter, row.v, row.k) {
                    continue;
                }
                let result = search_contraction(row.v, row.k, cfg)?;
                println!(
                    "{:>4} {:>3} {:>10.4} {:>10.4} {:>+9.4}",
                    row.v,
                    row.k,
                    result.report.e,
                    row.search_e,
                    result.report.e - row.search_e
                );
            }
        }
        WhichTable::T2 => {
            println!("{:>4} {:>3} {:>8} {:>8} {:>8} {:>9}", "v", "k", "A_abd", "E_con", "ref", "delta");
            for row in A_VALUE_CONVERSIONS {
                if !row_selected(&filter, row.v, row.k) {
                    continue;
                }
                let e = formulas::e_con_from_a_abd(row.k, row.a_abd)?;
                println!(
                    "{:>4} {:>3} {:>8.4} {:>8.4} {:>8.4} {:>+9.4}",
                    row.v,
                    row.k,
                    row.a_abd,
                    e,
                    row.e_con,
                    e - row.e_con
                );
            }
        }
    }
    Ok(0)
}

fn cmd_eval(v: usize, k: usize, e_con: f64) -> augsquare::Result<i32> {
    let params = DesignParams::new(v, k, e_con)?;
    let e_test = formulas::e_test(&params);
    println!("v* = {}", formulas::v_star(v, k));
    println!("E_res = {:.6}", formulas::e_res(&params));
    println!("E_aug = {:.6}", formulas::e_aug(&params));
    println!("E_test = {:.6}", e_test);
    println!("A_test = {:.6}", formulas::a_test(e_test)?);
    Ok(0)
}

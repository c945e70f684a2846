use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ssn_core::{
    all_subgroups, is_subnormal, permutizer, sigma_subnormal_fast, sigma_subnormal_oracle, subgroup_generated, BlockId,
    Caps, FiniteGroup, Permutation, PermutizerResult, ResidualKind, ResidualReport, SigmaPartition, Subgroup,
};
use ssn_harness::{
    builtin_family, load_group, load_partition, parse_suites, run_corpus_with, save_group, CorpusSpec, HarnessError,
    RunOptions,
};

#[derive(Parser)]
#[command(name = "ssn", version, about = "σ-subnormality in finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// A `.grp` file or a family descriptor such as `symmetric(4)`.
    #[arg(long)]
    group: String,
    /// A `.sig` file; defaults to the single-block partition.
    #[arg(long)]
    partition: Option<PathBuf>,
    #[arg(long, default_value_t = Caps::default().order)]
    order_cap: usize,
    #[arg(long, default_value_t = Caps::default().lattice)]
    lattice_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Pi,
    Sigma,
    Tau,
    Soluble,
}

#[derive(Subcommand)]
enum Command {
    /// Decide σ-subnormality in the whole group and print a witness chain.
    Check {
        #[command(flatten)]
        g: GroupArgs,
        /// Generators separated by `;`, e.g. "(1 2 3);(1 2)".
        #[arg(long)]
        subgroup: String,
    },
    /// Print the σ-defect (shortest chain) and the subnormal defect.
    Defect {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        subgroup: String,
    },
    /// Compute a residual of a subgroup (the whole group by default).
    Residual {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Primes for `--kind pi`, comma separated.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
        /// Block indices for `--kind tau`, comma separated; `rest` is the remainder.
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<String>,
        /// Also compute the brute-force characterization and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Largest subgroup of H permuting with K.
    Permutizer {
        #[command(flatten)]
        g: GroupArgs,
        #[arg(long)]
        h: String,
        #[arg(long)]
        k: String,
    },
    /// Write a builtin family to a `.grp` file.
    Make {
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the theorem suites over a corpus and write a JSONL report.
    Verify {
        #[arg(long, conflicts_with = "default", required_unless_present = "default")]
        corpus: Option<PathBuf>,
        #[arg(long)]
        default: bool,
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Report path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record per-task wall time in `elapsed_ms`.
        #[arg(long)]
        timings: bool,
    },
}

fn load(args: &GroupArgs) -> Result<(FiniteGroup, SigmaPartition), HarnessError> {
    let caps = Caps {
        order: args.order_cap,
        lattice: args.lattice_cap,
    };
    let path = Path::new(&args.group);
    let g = if path.exists() {
        load_group(path, caps)?
    } else {
        builtin_family(&args.group, caps)?
    };
    let sigma = match &args.partition {
        Some(p) => load_partition(p)?,
        None => SigmaPartition::whole(),
    };
    Ok((g, sigma))
}

fn subgroup<'g>(g: &'g FiniteGroup, text: &str) -> Result<Subgroup<'g>, HarnessError> {
    let perms = text
        .split(';')
        .map(|s| Permutation::parse(s, g.degree()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(subgroup_generated(g, &perms)?)
}

fn show(s: &Subgroup<'_>) -> String {
    format!("<{}> (order {})", s.describe(), s.order())
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Check { g, subgroup: text } => {
            let (g_, sigma) = load(&g)?;
            let x = subgroup(&g_, &text)?;
            match sigma_subnormal_fast(&x, &g_.whole(), &sigma)? {
                Some(chain) => {
                    println!("sigma-subnormal: yes");
                    println!("partition: {sigma}");
                    println!("chain: {chain}");
                }
                None => {
                    println!("sigma-subnormal: no");
                    println!("partition: {sigma}");
                }
            }
        }
        Command::Defect { g, subgroup: text } => {
            let (g_, sigma) = load(&g)?;
            let x = subgroup(&g_, &text)?;
            let lattice = all_subgroups(&g_)?;
            let whole = g_.whole();
            match sigma_subnormal_oracle(&lattice, &x, &whole, &sigma)? {
                Some((chain, d)) => {
                    println!("sigma-defect: {d}");
                    println!("chain: {chain}");
                }
                None => println!("sigma-defect: none"),
            }
            match is_subnormal(&x, &whole)? {
                Some(d) => println!("subnormal-defect: {d}"),
                None => println!("subnormal-defect: none"),
            }
        }
        Command::Residual {
            g,
            subgroup: text,
            kind,
            primes,
            blocks,
            oracle,
        } => {
            let (g_, sigma) = load(&g)?;
            let x = match text {
                Some(t) => subgroup(&g_, &t)?,
                None => g_.whole(),
            };
            let kind = match kind {
                Kind::Pi => ResidualKind::Pi(primes.into_iter().collect::<BTreeSet<_>>()),
                Kind::Sigma => ResidualKind::Sigma,
                Kind::Soluble => ResidualKind::SigmaSoluble,
                Kind::Tau => ResidualKind::Tau(
                    blocks
                        .iter()
                        .map(|b| match b.trim() {
                            "rest" => Ok(BlockId::Remainder),
                            n => n.parse().map(BlockId::Listed).map_err(|_| HarnessError::Syntax {
                                line: 0,
                                msg: format!("bad block `{n}`"),
                            }),
                        })
                        .collect::<Result<_, _>>()?,
                ),
            };
            let report = ResidualReport::compute(&x, kind, &sigma, oracle)?;
            println!("residual: {}", show(&report.result));
            if let Some(o) = &report.oracle_result {
                println!("oracle: {}", show(o));
                if !report.agrees() {
                    println!("mismatch");
                    return Ok(false);
                }
            }
        }
        Command::Permutizer { g, h, k } => {
            let (g_, _) = load(&g)?;
            let (h, k) = (subgroup(&g_, &h)?, subgroup(&g_, &k)?);
            match permutizer(&h, &k)? {
                PermutizerResult::UniqueMaximum(p) => println!("unique maximum: {}", show(&p)),
                PermutizerResult::NoUniqueMaximum(ms) => {
                    println!("no unique maximum; maximal permuting subgroups:");
                    for m in ms {
                        println!("  {}", show(&m));
                    }
                }
            }
        }
        Command::Make { family, out } => {
            let g = builtin_family(&family, Caps::default())?;
            save_group(&g, &out)?;
            eprintln!("wrote {} (order {})", out.display(), g.order());
        }
        Command::Verify {
            corpus,
            default,
            suites,
            jobs,
            out,
            timings,
        } => {
            let mut spec = match corpus {
                Some(dir) if !default => CorpusSpec::from_dir(&dir)?,
                _ => CorpusSpec::default_corpus(),
            };
            spec.suites = parse_suites(&suites)?;
            spec.jobs = jobs;
            let report = run_corpus_with(
                &spec,
                &RunOptions {
                    corruption: None,
                    timings,
                },
            )?;
            let text = report.to_jsonl();
            match &out {
                Some(path) => fs::write(path, text).map_err(|e| HarnessError::Io {
                    path: path.clone(),
                    source: e,
                })?,
                None => print!("{text}"),
            }
            let s = report.summary();
            eprintln!(
                "pass {} / fail {} / finding {} / skipped {}",
                s.pass, s.fail, s.finding, s.skipped
            );
            for (suite, n) in &s.checked {
                eprintln!("  {suite}: {n} instances checked");
            }
            return Ok(!report.has_failures());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

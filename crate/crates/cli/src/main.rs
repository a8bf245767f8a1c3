use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nsymm::eval::Evaluator;
use nsymm::expr::Diagnostic;
use nsymm::json::{composition_json, element_to_json, matrix_to_json, q_to_json, table_to_json, value_to_json};
use nsymm::verify::{self, Options, Suite};
use nsymm_core::generators::Generators;
use nsymm_core::isobaric::{IsobaricTable, TableKind};
use nsymm_core::primitives::PrimitiveBuilder;
use nsymm_core::words::enumerate_lyndon;

#[derive(Parser, Debug)]
#[command(name = "nsymm", version, about = "Exact computations in NSymm and QSymm")]
struct Cli {
    /// Largest weight any computed element may reach.
    #[arg(long, global = true, default_value_t = 12)]
    bound: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "N", alias = "n")]
    N,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Lyndon words of the given weight.
    Lyndon {
        #[arg(long)]
        weight: u32,
    },
    /// The primitive basis P_α for Lyndon α of the given weight.
    BasisPrim {
        #[arg(long)]
        weight: u32,
    },
    /// The generators E_α for Lyndon α of the given weight.
    Gens {
        #[arg(long)]
        weight: u32,
    },
    /// The pairing matrix ⟨P_α, E_β⟩.
    Matrix {
        #[arg(long)]
        weight: u32,
    },
    /// Index of the free Lie lattice in the primitives.
    Index {
        #[arg(long)]
        weight: u32,
    },
    /// The L or N correction polynomials up to total degree D.
    Isobaric {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long)]
        degree: u32,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        maxweight: Option<u32>,
        /// Restrict the tau suite to one n.
        #[arg(long)]
        n: Option<u32>,
    },
}

enum Outcome {
    Ok,
    VerifyFailed,
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn check_weight(cli: &Cli, weight: u32) -> Result<()> {
    if weight == 0 {
        bail!("--weight must be at least 1");
    }
    if weight > cli.bound {
        bail!("weight {weight} exceeds the bound {} (raise --bound)", cli.bound);
    }
    Ok(())
}

fn report_diagnostic(src: &str, d: &Diagnostic) -> String {
    let col = src[..d.offset.min(src.len())].chars().count();
    format!("{d}\n  {src}\n  {}^", " ".repeat(col))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Eval { expr } => {
            let mut ev = Evaluator::new(cli.bound);
            let v = match ev.eval_str(expr) {
                Ok(v) => v,
                Err(d) => bail!(report_diagnostic(expr, &d)),
            };
            match cli.format {
                Format::Pretty => println!("{v}"),
                Format::Json => print_json(&value_to_json(&v)),
            }
        }
        Command::Lyndon { weight } => {
            check_weight(cli, *weight)?;
            let words: Vec<Vec<u32>> = enumerate_lyndon(*weight).iter().map(composition_json).collect();
            print_json(&words);
        }
        Command::BasisPrim { weight } => {
            check_weight(cli, *weight)?;
            let mut prims = PrimitiveBuilder::new(*weight as usize);
            let basis = prims.basis(*weight)?;
            match cli.format {
                Format::Pretty => basis.iter().for_each(|e| println!("P_{} = {}", e.alpha, e.primitive)),
                Format::Json => {
                    let out: Vec<_> = basis
                        .iter()
                        .map(|e| json!({"alpha": composition_json(&e.alpha), "element": element_to_json(&e.primitive)}))
                        .collect();
                    print_json(&out);
                }
            }
        }
        Command::Gens { weight } => {
            check_weight(cli, *weight)?;
            let mut gens = Generators::new();
            let mut out = Vec::new();
            for a in enumerate_lyndon(*weight) {
                let e = gens.e(&a)?;
                match cli.format {
                    Format::Pretty => println!("E_{a} = {}", e.display()),
                    Format::Json => out.push(json!({"alpha": composition_json(&a), "element": q_to_json(&e)})),
                }
            }
            if cli.format == Format::Json {
                print_json(&out);
            }
        }
        Command::Matrix { weight } => {
            check_weight(cli, *weight)?;
            let mut gens = Generators::new();
            let mut prims = PrimitiveBuilder::new(*weight as usize);
            let (labels, m) = gens.pairing_matrix(*weight, &mut prims)?;
            match cli.format {
                Format::Pretty => {
                    let labels_s: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
                    let width = labels_s.iter().map(|s| s.len()).max().unwrap_or(1);
                    let cell = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1).max(width);
                    print!("{:width$} ", "");
                    labels_s.iter().for_each(|l| print!(" {l:>cell$}"));
                    println!();
                    for (l, row) in labels_s.iter().zip(&m) {
                        print!("{l:width$} ");
                        row.iter().for_each(|x| print!(" {:>cell$}", x.to_string()));
                        println!();
                    }
                }
                Format::Json => {
                    let l: Vec<_> = labels.iter().map(composition_json).collect();
                    print_json(&json!({"weight": weight, "rows": l, "columns": l, "matrix": matrix_to_json(&m)}));
                }
            }
        }
        Command::Index { weight } => {
            check_weight(cli, *weight)?;
            let mut prims = PrimitiveBuilder::new(*weight as usize);
            let i = prims.frlie_index(*weight)?;
            match cli.format {
                Format::Pretty => println!("{i}"),
                Format::Json => print_json(&json!({"weight": weight, "index": i.to_string()})),
            }
        }
        Command::Isobaric { kind, degree } => {
            check_weight(cli, *degree)?;
            let kind = match kind {
                Kind::L => TableKind::L,
                Kind::N => TableKind::N,
            };
            let table = IsobaricTable::build(kind, *degree as usize)?;
            match cli.format {
                Format::Pretty => {
                    for (&(u, v), x) in table.entries() {
                        println!("{}({u},{v}) = {x}", kind.name());
                    }
                }
                Format::Json => print_json(&table_to_json(&table, *degree as usize)),
            }
        }
        Command::Verify { suite, maxweight, n } => {
            let w = maxweight.unwrap_or(suite.default_maxweight());
            check_weight(cli, w)?;
            if let Some(n) = n {
                if *suite != Suite::Tau || *n < 2 {
                    bail!("--n applies to the tau suite and must be at least 2");
                }
            }
            let result = verify::run(*suite, &Options { maxweight: w, n: *n, seed: cli.seed });
            match cli.format {
                Format::Pretty => {
                    for c in &result.checks {
                        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
                    }
                    let tag = if result.passed { "passed" } else { "FAILED" };
                    println!("{} (maxweight {}): {tag}", result.suite, result.maxweight);
                }
                Format::Json => print_json(&result),
            }
            if !result.passed {
                return Ok(Outcome::VerifyFailed);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::VerifyFailed) => ExitCode::from(1),
        // malformed expressions and out-of-range arguments are usage errors
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

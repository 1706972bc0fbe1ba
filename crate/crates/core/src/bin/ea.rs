use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use effect_algebra::classify::classify_with_factors;
use effect_algebra::io::{parse, parse_model, render, Format, ModelFile};
use effect_algebra::models::{verify_fuzzy, verify_multiplicative, verify_quantum_matrices, Outcome};
use effect_algebra::rational::format_rational;
use effect_algebra::states::analyze;
use effect_algebra::{
    canonical_form, catalog, compose, enumerate_with, find_isomorphism, is_composite, lookup, validate, EffectAlgebra,
    EnumerateOptions, SumTable,
};

const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_FILE: u8 = 66;

#[derive(Parser)]
#[command(name = "ea", version, about = "Finite effect algebras given by sum tables")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all algebras of order N up to isomorphism.
    Enumerate {
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Check a table; exits 2 when it is not an effect algebra.
    Validate { file: PathBuf },
    /// Scale, sparse and quantum properties.
    Classify {
        #[arg(required_unless_present = "name")]
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        name: Option<String>,
    },
    /// The state polytope and what it determines.
    States {
        file: PathBuf,
        #[arg(long)]
        vertices: bool,
        #[arg(long)]
        min_fuzzy_dim: bool,
    },
    /// Print the canonical relabeling.
    Canon {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Exit 0 when the two tables are isomorphic, 3 otherwise.
    Iso { a: PathBuf, b: PathBuf },
    /// The composite of two algebras.
    Compose {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
    /// Search for a nontrivial factorization.
    Factor { file: PathBuf },
    /// Check a model file against a table; exits 1 when it fails.
    VerifyModel {
        table: PathBuf,
        model: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Named algebras.
    Catalog {
        #[arg(long, conflicts_with = "export")]
        list: bool,
        #[arg(long)]
        export: Option<String>,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
    },
}

struct Failure(u8, String);

type Run = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_FILE, format!("{}: {e}", path.display())))
}

fn load_table(path: &Path) -> Result<SumTable, Failure> {
    parse(&read(path)?).map_err(|e| Failure(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<EffectAlgebra, Failure> {
    let t = load_table(path)?;
    validate(&t).map_err(|v| {
        let lines: Vec<String> = v.iter().map(|r| r.to_string()).collect();
        Failure(EXIT_DATA, format!("{}: not an effect algebra\n{}", path.display(), lines.join("\n")))
    })
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Enumerate { n, count_only, format, jobs } => {
            let opts = EnumerateOptions { count_only, jobs, ..Default::default() };
            let r = enumerate_with(n, &opts).map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
            match (count_only, format) {
                (true, Format::Json) => print_json(&json!({ "n": n, "count": r.count })),
                (true, _) => println!("{}", r.count),
                (false, Format::Json) => {
                    let docs: Vec<_> = r.algebras.iter().map(|a| effect_algebra::io::TableDocument::from_table(a.table())).collect();
                    print_json(&json!({ "n": n, "count": r.count, "algebras": docs }));
                }
                (false, f) => {
                    for (i, a) in r.algebras.iter().enumerate() {
                        if i > 0 {
                            println!();
                        }
                        print!("{}", render(a.table(), f));
                    }
                }
            }
            Ok(0)
        }
        Command::Validate { file } => {
            let t = load_table(&file)?;
            match validate(&t) {
                Ok(a) => {
                    for d in a.check_derived_laws() {
                        println!("warning: {d}");
                    }
                    println!("valid effect algebra of order {}", a.order());
                    Ok(0)
                }
                Err(reports) => {
                    print_json(&reports);
                    Ok(2)
                }
            }
        }
        Command::Classify { file, name } => {
            let a = match (file, name) {
                (Some(f), _) => load(&f)?,
                (None, Some(n)) => lookup(&n).ok_or_else(|| Failure(EXIT_DATA, format!("no algebra named {n}")))?.algebra.clone(),
                (None, None) => unreachable!("clap requires one"),
            };
            print_json(&classify_with_factors(&a));
            Ok(0)
        }
        Command::States { file, vertices, min_fuzzy_dim } => {
            let a = load(&file)?;
            let s = analyze(&a);
            let p = &s.polytope;
            let mut out = json!({
                "dimension": p.dimension,
                "empty": p.is_empty(),
                "vertex_count": p.vertices.len(),
                "separating": s.is_separating,
                "order_determining": s.is_order_determining,
                "quantum": s.is_quantum,
            });
            if let Some(u) = p.unique_state() {
                out["unique_state"] = json!(labelled_values(&a, u.values()));
            }
            if vertices {
                out["vertices"] = p.vertices.iter().map(|v| labelled_values(&a, v.values())).collect();
            }
            if min_fuzzy_dim {
                out["min_fuzzy_dimension"] = json!(s.min_fuzzy_dimension);
                out["fuzzy_embedding"] = json!(s.fuzzy_embedding);
            }
            print_json(&out);
            Ok(0)
        }
        Command::Canon { file, format } => {
            let t = load_table(&file)?;
            print!("{}", render(&canonical_form(&t).table, format));
            Ok(0)
        }
        Command::Iso { a, b } => {
            let (ta, tb) = (load_table(&a)?, load_table(&b)?);
            match find_isomorphism(&ta, &tb) {
                Some(p) => {
                    let pairs: Vec<String> = p.iter().enumerate().map(|(i, j)| format!("{} -> {}", ta.label(effect_algebra::ElementId(i)), tb.label(*j))).collect();
                    println!("isomorphic: {}", pairs.join(", "));
                    Ok(0)
                }
                None => {
                    println!("not isomorphic");
                    Ok(3)
                }
            }
        }
        Command::Compose { a, b, out, format } => {
            let c = compose(&load(&a)?, &load(&b)?);
            let text = render(c.algebra().table(), format);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| Failure(EXIT_FILE, format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Factor { file } => {
            let a = load(&file)?;
            match is_composite(&a) {
                Some((x, y)) => {
                    println!("composite: order {} x order {}", x.order(), y.order());
                    print!("{}\n{}", render(x.table(), Format::Ascii), render(y.table(), Format::Ascii));
                }
                None => println!("not composite"),
            }
            Ok(0)
        }
        Command::VerifyModel { table, model, tol } => {
            let a = load(&table)?;
            let m = parse_model(a.table(), &read(&model)?).map_err(|e| Failure(EXIT_DATA, format!("{}: {e}", model.display())))?;
            let outcome = match &m {
                ModelFile::Multiplicative(mm) => verify_multiplicative(&a, mm),
                ModelFile::Fuzzy { assignment, weak } => verify_fuzzy(&a, assignment, *weak),
                ModelFile::Quantum(q) => verify_quantum_matrices(&a, q, tol),
            }
            .map_err(|e| Failure(EXIT_DATA, e.to_string()))?;
            match outcome {
                Outcome::Holds => {
                    println!("model holds");
                    Ok(0)
                }
                Outcome::Fails(c) => {
                    println!("model fails at ({}, {}): {}", a.label(c.e), a.label(c.f), c.reason);
                    Ok(1)
                }
            }
        }
        Command::Catalog { list: _, export, format } => {
            match export {
                Some(name) => {
                    let e = lookup(&name).ok_or_else(|| Failure(EXIT_DATA, format!("no algebra named {name}")))?;
                    print!("{}", render(e.algebra.table(), format));
                }
                None => {
                    for e in catalog() {
                        let aliases = if e.aliases.is_empty() { String::new() } else { format!(" ({})", e.aliases.join(", ")) };
                        println!("{:<8} n={:<2} {}{}", e.name, e.order(), e.description, aliases);
                    }
                }
            }
            Ok(0)
        }
    }
}

fn labelled_values(a: &EffectAlgebra, values: &[effect_algebra::Rational]) -> serde_json::Value {
    a.elements().map(|e| (a.label(e), json!(format_rational(&values[e.0])))).collect::<serde_json::Map<_, _>>().into()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("ea: {msg}");
            ExitCode::from(code)
        }
    }
}

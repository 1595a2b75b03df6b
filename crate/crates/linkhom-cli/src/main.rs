use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use linkhom::homotopy::normal_form_with_word;
use linkhom::table::BUNDLED;
use linkhom::verify::{self, Samples, Status};
use linkhom::{decide, load_table, orbit_bfs, Algebra, Error, InvariantVector, Orbit, Word};
use serde_json::{json, Value};

/// Link-homotopy classes of 4- and 5-component links as integer orbits.
#[derive(Parser)]
#[command(name = "linkhom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Structured output.
    #[arg(long, global = true)]
    json: bool,
    /// Component count; must match any vector file given.
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(4..=5))]
    n: Option<u8>,
}

#[derive(Subcommand)]
enum Command {
    /// Decides whether two vectors lie in one orbit, printing a witness word.
    Decide { source: PathBuf, target: PathBuf },
    /// Applies a word to a vector.
    #[command(group(ArgGroup::new("input").required(true).args(["word", "word_file"])))]
    Act {
        vector: PathBuf,
        word: Option<String>,
        #[arg(long)]
        word_file: Option<PathBuf>,
    },
    /// Canonical representative of a vector's orbit.
    NormalForm {
        vector: PathBuf,
        /// Also print a word taking the vector to its normal form.
        #[arg(long)]
        witness: bool,
    },
    /// Breadth-first orbit enumeration inside a coordinate box.
    Orbit {
        vector: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: u64,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
    },
    /// Runs verification checks.
    Verify {
        /// `all` or one of the check groups.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Inspects the bundled action tables.
    #[command(group(ArgGroup::new("what").required(true).args(["list", "show"])))]
    Tables {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        show: Option<String>,
    },
}

const EQUIVALENT: u8 = 0;
const DIFFERENT: u8 = 1;
const INPUT_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, String> {
    let n = cli.n.map(usize::from);
    match &cli.command {
        Command::Decide { source, target } => {
            let a = read_vector(source, n)?;
            let b = read_vector(target, n)?;
            let v = decide(&a, &b).map_err(|e| e.to_string())?;
            let word = v.witness.as_ref().map(Word::to_string);
            if cli.json {
                print_json(json!({
                    "equivalent": v.equivalent,
                    "witness": word,
                    "failed_stage": v.failed_stage,
                }));
            } else if v.equivalent {
                println!("EQUIVALENT");
                println!("{}", word.unwrap_or_default());
            } else {
                println!("NOT-EQUIVALENT");
                println!("failed stage {}", v.failed_stage.unwrap_or(0));
            }
            Ok(if v.equivalent { EQUIVALENT } else { DIFFERENT })
        }
        Command::Act { vector, word, word_file } => {
            let v = read_vector(vector, n)?;
            let n = v.scheme().n();
            let w = match (word, word_file) {
                (Some(text), _) => Word::parse(text, n).map_err(|e| word_error("word argument", text, e))?,
                (None, Some(path)) => {
                    let text = read(path)?;
                    Word::parse(&text, n).map_err(|e| word_error(&path.display().to_string(), &text, e))?
                }
                (None, None) => unreachable!("clap requires one"),
            };
            let alg = Algebra::get(n).map_err(|e| e.to_string())?;
            let out = alg.apply_word(&w, &v).map_err(|e| e.to_string())?;
            emit_vector(cli.json, &out);
            Ok(0)
        }
        Command::NormalForm { vector, witness } => {
            let v = read_vector(vector, n)?;
            let (nf, w) = normal_form_with_word(&v).map_err(|e| e.to_string())?;
            if cli.json {
                let mut obj = vector_json(&nf);
                if *witness {
                    obj["witness"] = json!(w.to_string());
                }
                print_json(obj);
            } else {
                print!("{}", nf.to_file_string());
                if *witness {
                    println!("# witness: {w}");
                }
            }
            Ok(0)
        }
        Command::Orbit { vector, bound, cap } => {
            let v = read_vector(vector, n)?;
            let orbit = orbit_bfs(&v, *bound, *cap).map_err(|e| e.to_string())?;
            let names: Vec<String> = v.scheme().symbols().iter().map(|s| s.name()).collect();
            if cli.json {
                let members: Vec<Value> = orbit
                    .members
                    .iter()
                    .map(|m| Value::Array(m.values().iter().map(number).collect()))
                    .collect();
                print_json(json!({
                    "coordinates": names,
                    "members": members,
                    "truncated": orbit.truncated,
                }));
            } else if let Err(e) = stream_orbit(&names, &orbit) {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    return Err(format!("stdout: {e}"));
                }
            }
            Ok(0)
        }
        Command::Verify { suite, seed } => {
            let known = suite == "all" || verify::CHECK_IDS.contains(&suite.as_str());
            if !known {
                return Err(format!(
                    "unknown suite `{suite}`; expected all or one of {}",
                    verify::CHECK_IDS.join(", ")
                ));
            }
            let samples = Samples {
                seed: *seed,
                ..Samples::default()
            };
            let reports = verify::run_suite(suite, &samples).map_err(|e| e.to_string())?;
            if cli.json {
                let rows: Vec<Value> = reports
                    .iter()
                    .map(|r| json!({"id": r.id, "status": r.status.to_string(), "details": r.details}))
                    .collect();
                print_json(Value::Array(rows));
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            let failed = reports.iter().any(|r| r.status != Status::Pass);
            Ok(if failed { DIFFERENT } else { 0 })
        }
        Command::Tables { list, show } => {
            if *list {
                let rows: Vec<_> = BUNDLED.iter().filter(|t| n.is_none_or(|n| t.n == n)).collect();
                if cli.json {
                    let rows: Vec<Value> = rows
                        .iter()
                        .map(|t| json!({"name": t.name, "n": t.n, "bracket": format!("{:?}", t.bracket)}))
                        .collect();
                    print_json(Value::Array(rows));
                } else {
                    for t in rows {
                        println!("{}\tn={}", t.name, t.n);
                    }
                }
            } else if let Some(name) = show {
                let table = load_table(name).map_err(|e| e.to_string())?;
                if cli.json {
                    let cols: Vec<Value> = table
                        .entries()
                        .iter()
                        .map(|e| {
                            let rows: serde_json::Map<String, Value> = e
                                .deltas
                                .iter()
                                .enumerate()
                                .filter(|(_, p)| !p.is_zero())
                                .map(|(v, p)| (table.scheme().name(v as u16), json!(table.scheme().show(p))))
                                .collect();
                            json!({"label": e.label.to_string(), "deltas": rows})
                        })
                        .collect();
                    print_json(json!({"name": name, "n": table.scheme().n(), "columns": cols}));
                } else {
                    print!("{}", table.to_text());
                }
            }
            Ok(0)
        }
    }
}

fn stream_orbit(names: &[String], orbit: &Orbit) -> io::Result<()> {
    let mut out = io::BufWriter::new(io::stdout().lock());
    writeln!(out, "# {}", names.join(" "))?;
    for m in &orbit.members {
        let row: Vec<String> = m.values().iter().map(ToString::to_string).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    let note = if orbit.truncated { ", truncated at the node cap" } else { "" };
    writeln!(out, "# {} members{note}", orbit.members.len())?;
    out.flush()
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_vector(path: &Path, n: Option<usize>) -> Result<InvariantVector, String> {
    let text = read(path)?;
    let v = InvariantVector::parse(&text).map_err(|e| match e {
        Error::Vector { line, msg } => format!("{}:{line}: {msg}", path.display()),
        other => format!("{}: {other}", path.display()),
    })?;
    match n {
        Some(n) if n != v.scheme().n() => Err(format!(
            "{}:1: file has n={} but --n {n} was given",
            path.display(),
            v.scheme().n()
        )),
        _ => Ok(v),
    }
}

fn word_error(source: &str, text: &str, e: Error) -> String {
    match e {
        Error::Word { pos, token, msg } => {
            let before = text[..pos.min(text.len())].trim_end();
            let line = before.matches('\n').count() + 1;
            let token = match token.is_empty() {
                true => before.split_whitespace().last().unwrap_or("").to_string(),
                false => token,
            };
            format!("{source}:{line}: {msg} (token `{token}`)")
        }
        other => format!("{source}: {other}"),
    }
}

fn number(x: &impl ToString) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn vector_json(v: &InvariantVector) -> Value {
    let s = v.scheme();
    let values: serde_json::Map<String, Value> = s
        .symbols()
        .iter()
        .zip(v.values())
        .map(|(sym, x)| (sym.name(), number(x)))
        .collect();
    json!({"n": s.n(), "values": values})
}

fn emit_vector(as_json: bool, v: &InvariantVector) {
    if as_json {
        print_json(vector_json(v));
    } else {
        print!("{}", v.to_file_string());
    }
}

fn print_json(v: Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
}

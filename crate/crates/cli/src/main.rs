use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use topvertex::identities::battery;
use topvertex::localflop::check_flop_identity;
use topvertex::partfun::{check_blowup, check_flop_global, gw_extract, z_fan, SeriesWitness};
use topvertex::partitions::{enumerate, Partition};
use topvertex::toricgeom::{ks_fan, Edge, Fan, SurfaceFan, ToricGraph};
use topvertex::vertex::vertex;
use topvertex::{nekrasov, Error};

#[derive(Parser)]
#[command(name = "topvertex", version, about = "Topological-vertex partition functions in exact arithmetic")]
struct Cli {
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true, env = "TOPVERTEX_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fan validation and surgery.
    #[command(subcommand)]
    Fan(FanCommand),
    /// The vertex C_{λ1λ2λ3}; partitions as `2,1` (empty: `""` or `[]`).
    Vertex { l1: Partition, l2: Partition, l3: Partition },
    /// The partition function of a fan.
    Zfun {
        fan: PathBuf,
        #[arg(long)]
        cap: u32,
        /// One variable per curve class instead of per edge.
        #[arg(long)]
        by_class: bool,
    },
    /// Gromov-Witten invariants as a TSV table.
    Gw {
        fan: PathBuf,
        #[arg(long)]
        cap: u32,
        #[arg(long, default_value_t = 2)]
        genus_max: u32,
    },
    /// Compares the partition functions across a flop.
    FlopCompare {
        fan: PathBuf,
        #[arg(long)]
        edge: String,
        #[arg(long)]
        cap: u32,
    },
    /// Compares the invariants of K_S and of the blown-up K_S.
    BlowupCompare {
        surface: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        cone: (usize, usize),
        #[arg(long)]
        cap: u32,
        #[arg(long, default_value_t = 2)]
        genus_max: u32,
    },
    /// Instanton sum against the geometric partition function.
    Nekrasov {
        #[arg(long)]
        cap: u32,
        /// Degree cap on each of QF1, QF2, Q0.
        #[arg(long, default_value_t = 2)]
        fiber_cap: u32,
    },
    /// Identity checks.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Subcommand)]
enum FanCommand {
    Validate { fan: PathBuf },
    Graph { fan: PathBuf },
    Flop {
        fan: PathBuf,
        #[arg(long)]
        edge: String,
    },
    Blowup {
        surface: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        cone: (usize, usize),
    },
    Ks { surface: PathBuf },
}

#[derive(Subcommand)]
enum CheckCommand {
    Identities(IdentityArgs),
    FlopLocal {
        #[arg(long, default_value_t = 4)]
        max_size: u32,
    },
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(long, default_value_t = 4)]
    max_size: u32,
    #[arg(long, default_value_t = 3)]
    oracle_points: usize,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected i,j, got {s:?}"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok((p(a)?, p(b)?))
}

enum Failure {
    /// A well-formed result that reports a violated check.
    Report(Value),
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Run = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_fan(path: &Path) -> Result<Fan, Error> {
    Fan::from_json(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_surface(path: &Path) -> Result<SurfaceFan, Error> {
    SurfaceFan::from_json(&read(path)?).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn edge_json(fan: &Fan, e: Edge) -> Value {
    json!({"cone": e, "name": fan.edge_label(e)})
}

fn witness_json(w: &Option<SeriesWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "monomial": w.monomial.iter().map(|(v, k)| json!([v, k])).collect::<Vec<_>>(),
            "lhs": w.lhs.to_string(),
            "rhs": w.rhs.to_string(),
        }),
    }
}

fn fan_command(cmd: FanCommand) -> Run {
    match cmd {
        FanCommand::Validate { fan } => {
            let f = load_fan(&fan)?;
            let report = f.validate();
            let v = json!({"valid": report.is_valid(), "violations": report.violations});
            if report.is_valid() {
                print_json(&v);
                Ok(())
            } else {
                Err(Failure::Report(v))
            }
        }
        FanCommand::Graph { fan } => {
            print_json(&ToricGraph::build(&load_fan(&fan)?)?.to_json());
            Ok(())
        }
        FanCommand::Flop { fan, edge } => {
            let f = load_fan(&fan)?;
            let flop = f.flop(f.edge_by_name(&edge)?)?;
            let fan_json: Value = serde_json::from_str(&flop.fan.to_json()).expect("fan JSON round-trips");
            let class_map: Vec<Value> = flop
                .class_map
                .iter()
                .map(|(e, image)| {
                    let terms: Vec<Value> = image.iter().map(|(c, k)| json!({"edge": c, "coefficient": k})).collect();
                    json!({"edge": e, "image": terms})
                })
                .collect();
            let shifts: Vec<Value> = flop
                .framing_shifts
                .iter()
                .map(|(e, n, np)| json!({"edge": e, "framing": n, "framing_after": np}))
                .collect();
            print_json(&json!({
                "fan": fan_json,
                "old_edge": edge_json(&f, flop.old_edge),
                "new_edge": edge_json(&flop.fan, flop.new_edge),
                "class_map": class_map,
                "framing_shifts": shifts,
            }));
            Ok(())
        }
        FanCommand::Blowup { surface, cone } => {
            let s = load_surface(&surface)?.blowup(cone.0, cone.1)?;
            let fan_json: Value = serde_json::from_str(&ks_fan(&s)?.to_json()).expect("fan JSON round-trips");
            print_json(&json!({"surface": s, "fan": fan_json}));
            Ok(())
        }
        FanCommand::Ks { surface } => {
            println!("{}", ks_fan(&load_surface(&surface)?)?.to_json());
            Ok(())
        }
    }
}

fn check_command(cmd: CheckCommand) -> Run {
    match cmd {
        CheckCommand::Identities(args) => {
            let reports = battery(args.max_size, args.oracle_points)?;
            println!("identity\tcases\tfailures");
            for r in &reports {
                println!("{}\t{}\t{}", r.name, r.cases, r.failures.len());
            }
            if reports.iter().all(|r| r.passed()) {
                Ok(())
            } else {
                let failed: Vec<&_> = reports.iter().filter(|r| !r.passed()).collect();
                Err(Failure::Report(json!({"failed": failed})))
            }
        }
        CheckCommand::FlopLocal { max_size } => {
            let ps = enumerate(max_size);
            let mut failures = Vec::new();
            println!("total_size\ttuples\tholds");
            for n in 0..=max_size {
                let mut count = 0;
                let mut ok = 0;
                for a in &ps {
                    for b in &ps {
                        for c in &ps {
                            for d in &ps {
                                if a.size() + b.size() + c.size() + d.size() != n {
                                    continue;
                                }
                                let l = [a.clone(), b.clone(), c.clone(), d.clone()];
                                count += 1;
                                let r = check_flop_identity(&l)?;
                                if r.holds {
                                    ok += 1;
                                } else if let Some(w) = r.witness {
                                    failures.push(json!({
                                        "boundary": l.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                                        "degree": w.degree, "lhs": w.lhs.to_string(), "rhs": w.rhs.to_string(),
                                    }));
                                }
                            }
                        }
                    }
                }
                println!("{n}\t{count}\t{ok}");
            }
            if failures.is_empty() {
                Ok(())
            } else {
                Err(Failure::Report(json!({"failures": failures})))
            }
        }
    }
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::Fan(cmd) => fan_command(cmd),
        Command::Check(cmd) => check_command(cmd),
        Command::Vertex { l1, l2, l3 } => {
            println!("{}", vertex(&l1, &l2, &l3));
            Ok(())
        }
        Command::Zfun { fan, cap, by_class } => {
            let pf = z_fan(&load_fan(&fan)?, cap, by_class)?;
            println!("{}", pf.series);
            Ok(())
        }
        Command::Gw { fan, cap, genus_max } => {
            let pf = z_fan(&load_fan(&fan)?, cap, true)?;
            print!("{}", gw_extract(&pf, genus_max)?.to_tsv());
            Ok(())
        }
        Command::FlopCompare { fan, edge, cap } => {
            let f = load_fan(&fan)?;
            let e = f.edge_by_name(&edge)?;
            let r = check_flop_global(&f, e, cap)?;
            let v = json!({
                "holds": r.holds(),
                "old_edge": r.old_edge,
                "new_edge": r.new_edge,
                "compared_terms": r.compared_terms,
                "vanishing_violations": r.vanishing_violations,
                "witness": witness_json(&r.witness),
            });
            if r.holds() {
                print_json(&v);
                Ok(())
            } else {
                Err(Failure::Report(v))
            }
        }
        Command::BlowupCompare { surface, cone, cap, genus_max } => {
            let r = check_blowup(&load_surface(&surface)?, cone, cap, genus_max)?;
            let mismatch = |m: &topvertex::partfun::ClassMismatch| {
                json!({"class": m.class, "genus": m.genus, "expected": m.expected.to_string(), "found": m.found.to_string()})
            };
            let v = json!({
                "holds": r.holds(),
                "exceptional": r.exceptional,
                "negative_checked": r.negative_checked,
                "negative_failures": r.negative_failures,
                "orthogonal_compared": r.orthogonal_compared,
                "orthogonal_failures": r.orthogonal_failures.iter().map(mismatch).collect::<Vec<_>>(),
                "exceptional_degrees": r.exceptional_degrees,
                "exceptional_failures": r.exceptional_failures.iter().map(mismatch).collect::<Vec<_>>(),
            });
            if r.holds() {
                print_json(&v);
                Ok(())
            } else {
                Err(Failure::Report(v))
            }
        }
        Command::Nekrasov { cap, fiber_cap } => {
            let r = nekrasov::compare(cap, fiber_cap)?;
            println!("geometry: {}", r.geometry);
            println!("gauge: {}", r.gauge);
            println!("difference: {}", if r.holds() { String::new() } else { r.difference.to_string() });
            if r.holds() {
                Ok(())
            } else {
                Err(Failure::Report(json!({"differing_terms": r.difference.len()})))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{}", json!({"error": "threads", "message": e.to_string()}));
            return ExitCode::FAILURE;
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Report(v)) => {
            print_json(&v);
            ExitCode::FAILURE
        }
        Err(Failure::Error(e)) => {
            let mut v = json!({"error": kind(&e), "message": e.to_string()});
            if let Error::UnknownEdge { valid, .. } = &e {
                v["valid"] = json!(valid);
            }
            eprintln!("{v}");
            ExitCode::FAILURE
        }
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::InvalidFan(_) | Error::InvalidSurface(_) => "invalid-input",
        Error::UnknownEdge { .. } | Error::NotInterior(_) => "unknown-edge",
        Error::FlopUndefined { .. } => "flop-undefined",
        _ => "internal",
    }
}

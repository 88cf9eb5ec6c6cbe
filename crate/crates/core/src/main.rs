use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cyclotomic::catalog::{self, GraphDocument};
use cyclotomic::enumerate::{
    enumerate_sprime, maximality_report, table1, EnumerationLevel, MaximalityStatus,
};
use cyclotomic::graph::{canonical, is_connected, RGraph};
use cyclotomic::ring::RingId;
use cyclotomic::spectral::{degree_bound_ok, membership, vertex_degree};

#[derive(Parser)]
#[command(name = "cyclotomic", version, about = "Cyclotomic matrices over real quadratic rings")]
struct Cli {
    /// Log progress to standard error (repeat for more detail).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate connected members level by level and write them as JSON.
    Enumerate {
        #[arg(long)]
        ring: RingId,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "sprime")]
        set: SetChoice,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Counts of non-cyclotomic members of S'_n for n = 1..6, by ring.
    Table1 {
        #[arg(long)]
        json: bool,
    },
    /// Verify every catalog graph; exits with status 1 on any failure.
    VerifyCatalog,
    /// Membership report for one graph document.
    Check { file: PathBuf },
    /// Canonical key and orbit representative of one graph document.
    Canon { file: PathBuf },
    /// Maximality status of every enumerated member.
    Maximal {
        #[arg(long)]
        ring: RingId,
        #[arg(long)]
        max_n: usize,
    },
    /// Render a graph document.
    Export {
        #[arg(long, value_enum, default_value = "dot")]
        format: ExportFormat,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SetChoice {
    Sprime,
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Dot,
}

#[derive(Serialize)]
struct MemberOut {
    key: String,
    in_s: bool,
    parents: Vec<String>,
    graph: GraphDocument,
}

#[derive(Serialize)]
struct LevelOut {
    n: usize,
    members: Vec<MemberOut>,
}

#[derive(Serialize)]
struct EnumerationOut {
    ring: RingId,
    set: &'static str,
    levels: Vec<LevelOut>,
}

enum Failure {
    Verification(String),
    Input(String),
}

fn read_graph(path: &Path) -> Result<(RGraph, Option<String>), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let doc = GraphDocument::from_json(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let g = doc
        .to_graph()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok((g, doc.name))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn level_out(level: &EnumerationLevel, only_s: bool) -> LevelOut {
    LevelOut {
        n: level.n,
        members: level
            .members
            .iter()
            .filter(|m| !only_s || m.in_s)
            .map(|m| MemberOut {
                key: m.key.to_hex(),
                in_s: m.in_s,
                parents: m.parents.iter().map(|p| p.to_hex()).collect(),
                graph: GraphDocument::from_graph(&m.graph),
            })
            .collect(),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Enumerate {
            ring,
            max_n,
            set,
            out,
        } => {
            if max_n == 0 {
                return Err(Failure::Input("--max-n must be at least 1".into()));
            }
            let only_s = matches!(set, SetChoice::S);
            let levels = enumerate_sprime(ring, max_n);
            let doc = EnumerationOut {
                ring,
                set: if only_s { "s" } else { "sprime" },
                levels: levels.iter().map(|l| level_out(l, only_s)).collect(),
            };
            let json = serde_json::to_string_pretty(&doc).expect("serializable");
            match out {
                Some(p) => fs::write(&p, json)
                    .map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
                None => println!("{json}"),
            }
            for l in &doc.levels {
                eprintln!("n = {}: {} members", l.n, l.members.len());
            }
        }
        Command::Table1 { json } => {
            let rows = table1();
            if json {
                println!("{}", serde_json::to_string_pretty(&rows).expect("serializable"));
            } else {
                println!("n | total | Z[phi] | Z[sqrt2] | Z[sqrt3]");
                for r in &rows {
                    println!("{} | {}", r.n, r.display_row());
                }
            }
        }
        Command::VerifyCatalog => {
            let report = catalog::verify_catalog();
            for r in &report.records {
                let mark = if r.passed { "ok  " } else { "FAIL" };
                println!("{mark} {:<18} {:<18} {}", r.graph, r.check.name(), r.detail);
            }
            let failed = report.failures().count();
            println!("{} checks, {failed} failed", report.records.len());
            if failed > 0 {
                return Err(Failure::Verification(format!("{failed} catalog checks failed")));
            }
        }
        Command::Check { file } => {
            let (g, _) = read_graph(&file)?;
            let m = membership(g.matrix());
            println!("ring: {}", g.ring());
            println!("vertices: {}", g.n());
            println!("connected: {}", yes_no(is_connected(&g)));
            println!("char poly: {}", m.char_poly);
            println!("integral: {}", yes_no(m.integral));
            let degrees: Vec<String> = (0..g.n())
                .map(|v| vertex_degree(g.matrix(), v).expect("in range").to_string())
                .collect();
            println!("degrees: {}", degrees.join(", "));
            println!("degree bound: {}", yes_no(degree_bound_ok(g.matrix())));
            println!("in S′: {}; in S: {}", yes_no(m.in_sprime), yes_no(m.in_s()));
        }
        Command::Canon { file } => {
            let (g, _) = read_graph(&file)?;
            let key = canonical(&g);
            println!("key: {key}");
            if let Some(spec) = catalog::match_family(&g) {
                println!("catalog: {spec}");
            }
            let rep = key.representative().expect("keys decode");
            println!("{}", GraphDocument::from_graph(&RGraph::new(rep)).to_json());
        }
        Command::Maximal { ring, max_n } => {
            if max_n == 0 {
                return Err(Failure::Input("--max-n must be at least 1".into()));
            }
            let report = maximality_report(&enumerate_sprime(ring, max_n));
            for e in &report.entries {
                let name = match &e.status {
                    MaximalityStatus::Maximal => catalog::match_key(&e.key, e.n)
                        .map(|s| s.to_string())
                        .unwrap_or_else(|| "?".into()),
                    _ => String::new(),
                };
                println!(
                    "n={:<3} {:<24} in_s={:<5} {} {}",
                    e.n,
                    e.status.label(),
                    e.in_s,
                    e.key,
                    name
                );
            }
            println!(
                "{} members, {} maximal, {} undecided",
                report.entries.len(),
                report.maximal().count(),
                report.undecided()
            );
        }
        Command::Export { format, file } => {
            let (g, name) = read_graph(&file)?;
            match format {
                ExportFormat::Dot => print!("{}", catalog::to_dot(&g, name.as_deref().unwrap_or("G"))),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

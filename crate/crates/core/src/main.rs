use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};
use serde_json::json;
use spinweb::census::{self, CensusConfig, CensusError, Kind, Mode};
use spinweb::classifier::DimPrediction;
use spinweb::graph::{parse_graph6, GeneratorSpec, Generated};
use spinweb::oracle::{self, Outcome, WeightMatrix};
use spinweb::{classify_symmetric, classify_tournament, fixtures, Graph, Tournament};
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

/// Classify graphs and tournaments as spin models for singly-generated
/// Yang-Baxter planar algebras.
#[derive(Parser)]
#[command(name = "spinweb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the spin-model criteria and report the family.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Resolve an open dim V3 prediction with the oracle rank.
        #[arg(long)]
        exact_dim: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check relations 1b, 2b, 3a, 3b by state sums.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Print dim V3 as the rank of the 3-box state-sum vectors.
    Dims {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Print the graph6 line of a named construction.
    Generate {
        #[arg(long = "gen", value_name = "NAME[:ARGS]")]
        generator: String,
    },
    /// Exhaustive enumeration or graph6 stream scan.
    Census {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        /// graph6 file to scan instead of enumerating.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "assert_equivalence", value_parser = parse_mode)]
        mode: Mode,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        tournament: bool,
        #[arg(long)]
        json: bool,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// A graph6 line, or `-` to read lines from stdin.
    #[arg(long)]
    graph6: Option<String>,
    /// A named construction such as `cycle:5` or `union_complete:2,3`.
    #[arg(long = "gen", value_name = "NAME[:ARGS]")]
    generator: Option<String>,
}

#[derive(Args)]
struct Input {
    #[command(flatten)]
    source: Source,
    /// Read graph6 input as a tournament (bit i<j set means i -> j).
    #[arg(long)]
    tournament: bool,
}

enum Object {
    Graph(Graph),
    Tournament(Tournament),
}

impl Object {
    fn graph6(&self) -> String {
        match self {
            Object::Graph(g) => g.to_graph6(),
            Object::Tournament(t) => t.to_graph6(),
        }
    }

    fn weights(&self) -> WeightMatrix {
        match self {
            Object::Graph(g) => WeightMatrix::from_graph(g),
            Object::Tournament(t) => WeightMatrix::from_tournament(t),
        }
    }
}

type Failure = Box<dyn std::error::Error>;

fn parse_line(text: &[u8], tournament: bool) -> Result<Object, Failure> {
    Ok(if tournament {
        Object::Tournament(Tournament::parse_graph6(text)?)
    } else {
        Object::Graph(parse_graph6(text)?)
    })
}

fn load(input: &Input) -> Result<Vec<Object>, Failure> {
    if let Some(spec) = &input.source.generator {
        let built = GeneratorSpec::parse(spec)?.build(&fixtures::default_dir())?;
        return match (built, input.tournament) {
            (Generated::Graph(_), true) => Err(format!("`{spec}` builds a graph, not a tournament").into()),
            (Generated::Graph(g), false) => Ok(vec![Object::Graph(g)]),
            (Generated::Tournament(t), _) => Ok(vec![Object::Tournament(t)]),
        };
    }
    match input.source.graph6.as_deref() {
        Some("-") => {
            let mut out = Vec::new();
            for line in std::io::stdin().lock().lines() {
                let line = line?;
                let line = line.trim_end();
                if !line.is_empty() {
                    out.push(parse_line(line.as_bytes(), input.tournament)?);
                }
            }
            if out.is_empty() {
                return Err("no graph6 lines on stdin".into());
            }
            Ok(out)
        }
        Some(text) => Ok(vec![parse_line(text.as_bytes(), input.tournament)?]),
        None => unreachable!("clap requires one input"),
    }
}

fn classify(objects: &[Object], exact_dim: bool, json: bool) -> Result<bool, Failure> {
    let mut all = true;
    for obj in objects {
        let mut verdict = match obj {
            Object::Graph(g) => classify_symmetric(g),
            Object::Tournament(t) => classify_tournament(t),
        };
        if exact_dim {
            if let Some(f) = verdict.family.as_mut() {
                if matches!(f.dim, DimPrediction::OneOf(_)) {
                    f.dim = DimPrediction::Computed(oracle::dim_v3(&obj.weights())?);
                }
            }
        }
        all &= verdict.is_spin_model;
        if json {
            println!("{}", json!({ "graph6": obj.graph6(), "verdict": verdict }));
        } else {
            println!("{}", verdict.summary());
        }
    }
    Ok(all)
}

fn print_outcome(name: &str, o: &Outcome) {
    match o {
        Outcome::Holds(c) => {
            // scalar parameters for 1b/2b, expansion terms for 3a/3b
            if c.iter().all(|(n, _)| !n.contains('[')) {
                let params: Vec<String> = c.iter().map(|(n, v)| format!("{n}={v}")).collect();
                println!("  {name}: holds; {}", params.join(", "));
                return;
            }
            let mut rhs = String::new();
            for (n, v) in c.iter().filter(|(_, v)| !v.is_zero()) {
                let sep = match (rhs.is_empty(), v.is_negative()) {
                    (true, false) => "",
                    (true, true) => "-",
                    (false, false) => " + ",
                    (false, true) => " - ",
                };
                rhs.push_str(&format!("{sep}{}·{n}", v.abs()));
            }
            if rhs.is_empty() {
                rhs.push('0');
            }
            println!("  {name}: holds; target = {rhs}");
        }
        Outcome::Fails { target, certificate } => {
            println!("  {name}: fails; {target} escapes the span, residual {}", certificate.residual);
            for (p, y, v) in &certificate.terms {
                println!("    point {p:?} multiplier {y} target value {v}");
            }
        }
    }
}

fn verify(objects: &[Object], json: bool) -> Result<bool, Failure> {
    let mut all = true;
    for obj in objects {
        let report = oracle::full_report(&obj.weights());
        all &= report.is_spin_model();
        if json {
            let mut v = report.to_json();
            v["graph6"] = json!(obj.graph6());
            println!("{v}");
        } else {
            println!("{}", report.summary());
            for (name, o) in [("1b", &report.r1b), ("2b", &report.r2b), ("3a", &report.r3a), ("3b", &report.r3b)] {
                print_outcome(name, o);
            }
        }
    }
    Ok(all)
}

fn dims(objects: &[Object], json: bool) -> Result<bool, Failure> {
    for obj in objects {
        let d = oracle::dim_v3(&obj.weights())?;
        if json {
            println!("{}", json!({ "graph6": obj.graph6(), "dim_v3": d }));
        } else {
            println!("{d}");
        }
    }
    Ok(true)
}

fn hit_json(h: &census::Hit) -> serde_json::Value {
    json!({
        "graph6": h.graph6,
        "n": h.n,
        "index": h.index,
        "verdict": h.verdict,
        "report": h.report.as_ref().map(|r| r.to_json()),
        "q": h.params.map(|p| p.tuple()),
    })
}

fn run_census(cfg: CensusConfig, json: bool) -> Result<bool, Failure> {
    let what = match cfg.kind {
        Kind::Graphs => "graphs",
        Kind::Tournaments => "tournaments",
    };
    let result = match census::run_census(&cfg) {
        Ok(r) => r,
        Err(CensusError::CounterexampleFound(c)) => {
            println!("COUNTEREXAMPLE graph6={} n={} classifier={} oracle={}", c.graph6, c.n, c.verdict.is_spin_model, c.oracle_spin_model);
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for h in &result.hits {
        if json {
            writeln!(out, "{}", hit_json(h))?;
        } else {
            writeln!(out, "{}", census::record_line(h))?;
        }
    }
    for (line, err) in &result.malformed {
        eprintln!("line {line}: {err}");
    }
    if json {
        writeln!(
            out,
            "{}",
            json!({
                "summary": {
                    "processed": result.processed,
                    "counts": result.counts,
                    "oracle_runs": result.oracle_runs,
                    "sampled": result.sampled,
                    "oracle_spin_models": result.oracle_spin_models,
                    "hits": result.hits.len(),
                    "malformed": result.malformed.len(),
                    "disagreements": result.disagreements(),
                }
            })
        )?;
    } else {
        write!(out, "{}", result.summary_block())?;
        writeln!(out, "OK, {} {what}, {} disagreements", result.processed, result.disagreements())?;
    }
    Ok(result.counterexample.is_none())
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Classify { input, exact_dim, json } => classify(&load(&input)?, exact_dim, json),
        Command::Verify { input, json } => verify(&load(&input)?, json),
        Command::Dims { input, json } => dims(&load(&input)?, json),
        Command::Generate { generator } => {
            match GeneratorSpec::parse(&generator)?.build(&fixtures::default_dir())? {
                Generated::Graph(g) => println!("{}", g.to_graph6()),
                Generated::Tournament(t) => println!("{}", t.to_graph6()),
            }
            Ok(true)
        }
        Command::Census { max_n, min_n, input, mode, workers, tournament, json } => {
            let mut cfg = CensusConfig {
                min_n,
                max_n,
                input,
                mode,
                kind: if tournament { Kind::Tournaments } else { Kind::Graphs },
                ..CensusConfig::default()
            };
            if let Some(w) = workers {
                cfg.workers = w;
            }
            run_census(cfg, json)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

//! Command line front end.  Every subcommand prints one JSON report with a
//! deterministic key order; wall-clock timing goes to standard error so
//! identical runs stay byte-identical on standard output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pflab::families::{complete, complete_bipartite, cycle, petersen, vyalyi, vyalyi_block};
use pflab::graph::{tight_cut_decomposition, Graph, PieceKind};
use pflab::limits::Limits;
use pflab::orientation::{
    pfaffian_number, signature_matrix, solve_pfaffian_system,
    split_orientation_at_cut, KOrientation, Orientation, PfaffianNumberStatus, SearchOptions,
};
use pflab::symbolic::{
    count_via_symbolic, symbolic_obstruction, SymbolicLabeling,
};
use pflab::Error;

#[derive(Parser)]
#[command(name = "pflab", about = "Pfaffian numbers of matching covered graphs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and optionally list) the perfect matchings of a graph.
    Matchings {
        /// Edge-list file; `-` reads standard input.
        graph: String,
        /// Include the matchings themselves in the report.
        #[arg(long)]
        list: bool,
    },
    /// Compute the pfaffian number by exhaustive subset search.
    Pfnum {
        graph: String,
        /// Largest subset size to try before giving up.
        #[arg(long, default_value_t = 6)]
        k_budget: usize,
        /// Wall-clock budget in milliseconds.
        #[arg(long)]
        time_budget_ms: Option<u64>,
        /// Parallel workers for the subset search; the answer is the same
        /// for every value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Count perfect matchings through the symbolic pfaffian of a
    /// pfaffian k-orientation.
    SymbolicCount {
        graph: String,
        /// File with one orientation bit string per line.
        korientation: String,
    },
    /// Split a pfaffian k-orientation at a separating cut so that both
    /// contractions are pfaffian.
    Split {
        graph: String,
        korientation: String,
        /// Shore of the cut, comma-separated 1-based vertex ids.
        #[arg(long)]
        shore: String,
    },
    /// Tight cut decomposition into bricks and braces.
    Decompose {
        graph: String,
        /// Seed for the choice among simultaneous tight cuts.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit a named family member in edge-list format.
    Generate {
        /// One of: complete-bipartite, complete, cycle, petersen,
        /// vyalyi-block, vyalyi.
        family: String,
        /// Size parameters, as many as the family needs.
        params: Vec<usize>,
    },
    /// Run a named verification suite.
    Verify {
        /// One of: signs, cuts, khatri-rao, symbolic, families,
        /// conjecture-scan.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = Limits::from_env();
    let started = Instant::now();
    let outcome = run(&cli.command, &limits);
    eprintln!("elapsed: {:?}", started.elapsed());
    match outcome {
        Ok(Value::Null) => ExitCode::SUCCESS, // payload already written
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
            ExitCode::SUCCESS
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::Domain(_) => ExitCode::from(1),
                Error::Resource(_) | Error::Budget(_) => ExitCode::from(2),
            }
        }
        Err(Failure::Assertion(report)) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
            eprintln!("error: verification suite failed");
            ExitCode::from(3)
        }
    }
}

enum Failure {
    Library(Error),
    Assertion(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Library(e)
    }
}

fn run(command: &Command, limits: &Limits) -> Result<Value, Failure> {
    match command {
        Command::Matchings { graph, list } => cmd_matchings(graph, *list),
        Command::Pfnum { graph, k_budget, time_budget_ms, jobs } => {
            cmd_pfnum(graph, *k_budget, *time_budget_ms, *jobs, limits)
        }
        Command::SymbolicCount { graph, korientation } => {
            cmd_symbolic_count(graph, korientation, limits)
        }
        Command::Split { graph, korientation, shore } => {
            cmd_split(graph, korientation, shore)
        }
        Command::Decompose { graph, seed } => cmd_decompose(graph, *seed, limits),
        Command::Generate { family, params } => cmd_generate(family, params),
        Command::Verify { suite, seed } => cmd_verify(suite, *seed, limits),
    }
}

fn read_graph(path: &str) -> Result<Graph, Failure> {
    let text = read_input(path)?;
    Ok(Graph::parse(&text)?)
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Domain(format!("cannot read standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read {path}: {e}")).into())
    }
}

fn input_summary(g: &Graph) -> Result<Value, Failure> {
    let matchings = if g.vertex_count() % 2 == 0 {
        g.enumerate_perfect_matchings()?.len()
    } else {
        0
    };
    Ok(json!({
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "perfect_matchings": matchings,
    }))
}

/// Matchings as 1-based edge-id lists.
fn matching_json(m: &pflab::graph::Matching) -> Value {
    json!(m.edge_ids().iter().map(|&e| e + 1).collect::<Vec<_>>())
}

fn vertices_json(vs: &[usize]) -> Value {
    json!(vs.iter().map(|&v| v + 1).collect::<Vec<_>>())
}

fn cmd_matchings(path: &str, list: bool) -> Result<Value, Failure> {
    let g = read_graph(path)?;
    let matchings = g.enumerate_perfect_matchings()?;
    let mut result = json!({
        "count": matchings.len(),
        "matchable": !matchings.is_empty(),
    });
    if list {
        result["matchings"] = json!(matchings.iter().map(matching_json).collect::<Vec<_>>());
    }
    Ok(json!({
        "command": "matchings",
        "input": input_summary(&g)?,
        "result": result,
    }))
}

fn cmd_pfnum(
    path: &str,
    k_budget: usize,
    time_budget_ms: Option<u64>,
    jobs: usize,
    limits: &Limits,
) -> Result<Value, Failure> {
    let g = read_graph(path)?;
    let opts = SearchOptions {
        k_budget,
        time_budget: time_budget_ms.map(Duration::from_millis),
        jobs: jobs.max(1),
    };
    let result = pfaffian_number(&g, &opts, limits)?;
    let status = match result.status {
        PfaffianNumberStatus::Exact => "exact",
        PfaffianNumberStatus::LowerBoundOnly => "lower_bound_only",
    };
    let witness = match (&result.witness, &result.alpha) {
        (Some(kd), Some(alpha)) => json!({
            "orientations": kd.orientations().iter()
                .map(Orientation::to_bit_string).collect::<Vec<_>>(),
            "alpha": alpha.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        }),
        _ => Value::Null,
    };
    Ok(json!({
        "command": "pfnum",
        "input": input_summary(&g)?,
        "result": {
            "classes": result.classes,
            "distinct_sign_vectors": result.distinct_columns,
            "k": result.k,
            "status": status,
        },
        "witness": witness,
    }))
}

fn cmd_symbolic_count(
    graph_path: &str,
    korientation_path: &str,
    limits: &Limits,
) -> Result<Value, Failure> {
    let g = read_graph(graph_path)?;
    let kd = KOrientation::parse(&read_input(korientation_path)?, g.edge_count())?;
    // the construction by hand, so that a refusal can still report the
    // obstruction pair
    let last = kd.orientations().last().expect("k >= 1").clone();
    let d = kd.k() - 1;
    let mut tau = vec![0u64; g.edge_count()];
    for (i, di) in kd.orientations()[..d].iter().enumerate() {
        for e in di.difference(&last) {
            tau[e] |= 1 << i;
        }
    }
    let labeling = SymbolicLabeling::new(d, tau, limits)?;
    if solve_pfaffian_system(&signature_matrix(&g, &kd)?).is_none() {
        let obstruction = symbolic_obstruction(&g, &last, &labeling)?
            .map(|(m, n)| json!({"first": matching_json(&m), "second": matching_json(&n)}))
            .unwrap_or(Value::Null);
        return Err(Failure::Library(Error::Domain(format!(
            "k-orientation is not pfaffian; obstruction: {obstruction}"
        ))));
    }
    let count = count_via_symbolic(&g, &last, &labeling)?;
    Ok(json!({
        "command": "symbolic-count",
        "input": input_summary(&g)?,
        "result": {
            "count": count.to_string(),
            "dimension": d,
        },
        "witness": {
            "base_orientation": last.to_bit_string(),
            "labeling": labeling.to_json(),
        },
    }))
}

fn parse_shore(spec: &str, g: &Graph) -> Result<Vec<usize>, Failure> {
    spec.split(',')
        .map(|part| {
            let v: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::Domain(format!("invalid vertex {part:?} in shore")))?;
            if v == 0 || v > g.vertex_count() {
                return Err(Error::Domain(format!("vertex {v} out of range")).into());
            }
            Ok(v - 1)
        })
        .collect()
}

fn cmd_split(
    graph_path: &str,
    korientation_path: &str,
    shore_spec: &str,
) -> Result<Value, Failure> {
    let g = read_graph(graph_path)?;
    let kd = KOrientation::parse(&read_input(korientation_path)?, g.edge_count())?;
    let shore = parse_shore(shore_spec, &g)?;
    let cut = g.make_cut(&shore)?;
    let split = split_orientation_at_cut(&g, &cut, &kd)?;
    Ok(json!({
        "command": "split",
        "input": input_summary(&g)?,
        "result": {
            "contractions_pfaffian": true,
            "cut_edges": cut.edge_ids().iter().map(|&e| e + 1).collect::<Vec<_>>(),
        },
        "witness": {
            "orientations": split.korientation.orientations().iter()
                .map(Orientation::to_bit_string).collect::<Vec<_>>(),
            "paths": split.paths.iter().map(|p| json!({
                "end": p.end + 1,
                "vertices": vertices_json(&p.vertices),
            })).collect::<Vec<_>>(),
            "reversal_shores": split.reversal_shores.iter()
                .map(|s| vertices_json(s)).collect::<Vec<_>>(),
        },
    }))
}

fn cmd_decompose(path: &str, seed: u64, limits: &Limits) -> Result<Value, Failure> {
    let g = read_graph(path)?;
    let result = tight_cut_decomposition(&g, seed, limits)?;
    Ok(json!({
        "command": "decompose",
        "input": input_summary(&g)?,
        "result": {
            "pieces": result.pieces.iter().map(|(piece, kind)| json!({
                "edge_list": piece.to_edge_list(),
                "kind": match kind {
                    PieceKind::Brick => "brick",
                    PieceKind::Brace => "brace",
                },
            })).collect::<Vec<_>>(),
        },
    }))
}

fn cmd_generate(family: &str, params: &[usize]) -> Result<Value, Failure> {
    let need = |count: usize| -> Result<(), Failure> {
        if params.len() == count {
            Ok(())
        } else {
            Err(Error::Domain(format!("family {family} takes {count} parameter(s)")).into())
        }
    };
    let g = match family {
        "complete-bipartite" => {
            need(2)?;
            complete_bipartite(params[0], params[1])
        }
        "complete" => {
            need(1)?;
            complete(params[0])
        }
        "cycle" => {
            need(1)?;
            cycle(params[0])
        }
        "petersen" => {
            need(0)?;
            petersen()
        }
        "vyalyi-block" => {
            need(0)?;
            vyalyi_block().0
        }
        "vyalyi" => {
            need(1)?;
            vyalyi(params[0])?
        }
        other => return Err(Error::Domain(format!("unknown family {other:?}")).into()),
    };
    // the payload is the edge list itself so it can be piped straight back
    // into the other subcommands
    print!("{}", g.to_edge_list());
    Ok(Value::Null)
}

mod verify;

fn cmd_verify(suite: &str, seed: u64, limits: &Limits) -> Result<Value, Failure> {
    let (passed, details) = match suite {
        "signs" => verify::signs(seed),
        "cuts" => verify::cuts(seed, limits),
        "khatri-rao" => verify::khatri_rao(seed),
        "symbolic" => verify::symbolic(limits),
        "families" => verify::families(limits),
        "conjecture-scan" => verify::conjecture_scan(limits),
        other => return Err(Error::Domain(format!("unknown suite {other:?}")).into()),
    };
    let report = json!({
        "command": "verify",
        "input": { "seed": seed, "suite": suite },
        "result": { "details": details, "passed": passed },
    });
    if passed {
        Ok(report)
    } else {
        Err(Failure::Assertion(report))
    }
}

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cfon::engine::{color_graph_traced, Case, Coloring};
use cfon::generators::gen_lower_bound;
use cfon::modulator::{exact_dc, greedy_dc, validate_modulator, Modulator, DEFAULT_K_MAX};
use cfon::oracle::{exact_chi_on_with, run_stress, verify_cfon, ChiError, StressConfig, CHI_GUARD};
use cfon::{Graph, VertexSet};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Conflict-free open-neighborhood coloring toolkit.
#[derive(Parser, Debug)]
#[command(name = "cfon", version)]
struct Cli {
    /// Print the case trace and budgets to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Color a graph with at most max(3, |X|+1) colors and self-verify.
    Color {
        /// Edge-list file, or `-` for standard input.
        input: String,
        /// File holding the modulator as whitespace-separated vertices.
        #[arg(long)]
        modulator: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: usize,
    },
    /// Check a coloring file against a graph.
    Verify { graph: String, coloring: PathBuf },
    /// Exact minimum number of colors.
    Chi {
        graph: String,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Refuse graphs with more vertices than this.
        #[arg(long, default_value_t = CHI_GUARD)]
        guard: usize,
    },
    /// Cluster-deletion set and its clique decomposition.
    Dc {
        graph: String,
        #[command(flatten)]
        mode: DcMode,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        kmax: usize,
        #[arg(long)]
        json: bool,
    },
    /// Emit the lower-bound graph for parameter d.
    GenLb {
        d: usize,
        /// Write block labels as JSON to this file.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Random generate-color-verify loop with case coverage.
    Stress {
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        max_n: usize,
        #[arg(long, default_value_t = 6)]
        max_x: usize,
        #[arg(long, default_value_t = 12)]
        chi_guard: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct DcMode {
    /// Exact search only; fail when the budget is exceeded.
    #[arg(long)]
    exact: bool,
    /// Heuristic only.
    #[arg(long)]
    greedy: bool,
}

enum Failure {
    /// Well-formed input, negative answer.
    Negative(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Input(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

type Outcome = Result<(), Failure>;

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(input_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
    }
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    Graph::parse_edge_list(&read_source(path)?).map_err(input_err)
}

fn parse_vertex_list(g: &Graph, text: &str) -> Result<VertexSet, Failure> {
    let mut x = VertexSet::new();
    for line in text.lines().filter(|l| !l.trim_start().starts_with('#')) {
        for tok in line.split_whitespace() {
            let by_name = || g.names().and_then(|names| names.iter().position(|n| n == tok));
            let v = match g.names() {
                Some(_) => by_name(),
                None => tok.parse().ok(),
            };
            let v = v.ok_or_else(|| Failure::Input(format!("unknown modulator vertex {tok:?}")))?;
            x.insert(v);
        }
    }
    Ok(x)
}

fn find_modulator(g: &Graph, kmax: usize, verbose: bool) -> Modulator {
    match exact_dc(g, kmax) {
        Ok(m) => m,
        Err(e) => {
            if verbose {
                eprintln!("{e}; falling back to greedy");
            }
            greedy_dc(g)
        }
    }
}

fn cmd_color(input: &str, modulator: Option<&Path>, json: bool, kmax: usize, verbose: bool) -> Outcome {
    let g = load_graph(input)?;
    if let Some(&v) = g.isolated_vertices().first() {
        return Err(Failure::Input(format!("vertex {v} is isolated; no conflict-free coloring exists")));
    }
    let m = match modulator {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            validate_modulator(&g, &parse_vertex_list(&g, &text)?).map_err(input_err)?
        }
        None => find_modulator(&g, kmax, verbose),
    };
    let (coloring, trace) = color_graph_traced(&g, Some(&m.x)).map_err(|e| Failure::Internal(e.to_string()))?;
    let report = verify_cfon(&g, &coloring);
    if !report.valid {
        return Err(Failure::Internal(format!("self-verification failed: {:?}", report.failures)));
    }
    if verbose {
        for (case, hits) in &trace.hits {
            eprintln!("{:<40} {hits}", case.label());
        }
    }
    let palette = coloring.palette_size();
    if json {
        let cert = json!({
            "vertex": (0..g.n()).collect::<Vec<_>>(),
            "color": coloring.color,
            "witness": coloring.witness,
            "palette_size": palette,
            "modulator": m.x,
        });
        println!("{cert}");
    } else {
        println!("# palette_size {palette}");
        println!("# modulator {}", m.to_line());
        print!("{}", coloring.to_text());
    }
    Ok(())
}

fn parse_coloring(text: &str, n: usize) -> Result<Coloring, Failure> {
    if !text.trim_start().starts_with('{') {
        return Coloring::parse_text(text, n).map_err(Failure::Input);
    }
    let value: serde_json::Value = serde_json::from_str(text).map_err(input_err)?;
    let colors = value["color"].as_array().ok_or_else(|| Failure::Input("certificate lacks `color`".into()))?;
    let mut c = Coloring::uncolored(n, 0);
    for (v, col) in colors.iter().enumerate().take(n) {
        c.color[v] = col.as_u64().ok_or_else(|| Failure::Input(format!("bad color for vertex {v}")))? as usize;
    }
    if let Some(ws) = value["witness"].as_array() {
        for (v, w) in ws.iter().enumerate().take(n) {
            c.witness[v] = w.as_u64().map(|w| w as usize).filter(|&w| w < n);
        }
    }
    c.c_max = c.color.iter().copied().max().unwrap_or(0);
    Ok(c)
}

fn cmd_verify(graph: &str, coloring: &Path) -> Outcome {
    let g = load_graph(graph)?;
    let text = fs::read_to_string(coloring).map_err(|e| Failure::Input(format!("{}: {e}", coloring.display())))?;
    let c = parse_coloring(&text, g.n())?;
    let report = verify_cfon(&g, &c);
    for (v, why) in &report.failures {
        println!("vertex {v}: {why:?}");
    }
    for (v, why) in &report.witness_failures {
        println!("witness of {v}: {why:?}");
    }
    if report.valid {
        println!("valid, {} colors", c.palette_size());
        Ok(())
    } else {
        Err(Failure::Negative(format!("invalid at {} vertices", report.failures.len())))
    }
}

fn cmd_chi(graph: &str, kmax: usize, guard: usize) -> Outcome {
    let g = load_graph(graph)?;
    match exact_chi_on_with(&g, kmax, guard) {
        Ok((k, _)) => {
            println!("{k}");
            Ok(())
        }
        Err(e @ ChiError::ExceedsKmax { .. }) => Err(Failure::Negative(e.to_string())),
        Err(e) => Err(input_err(e)),
    }
}

fn cmd_dc(graph: &str, mode: &DcMode, kmax: usize, json: bool, verbose: bool) -> Outcome {
    let g = load_graph(graph)?;
    let m = if mode.greedy {
        greedy_dc(&g)
    } else if mode.exact {
        exact_dc(&g, kmax).map_err(|e| Failure::Negative(e.to_string()))?
    } else {
        find_modulator(&g, kmax, verbose)
    };
    if json {
        println!("{}", json!({ "modulator": m.x, "size": m.size(), "cliques": m.cliques }));
    } else {
        println!("{}", m.to_line());
        for k in &m.cliques {
            println!("# clique {}", k.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        }
    }
    Ok(())
}

fn cmd_gen_lb(d: usize, sidecar: Option<&Path>) -> Outcome {
    let lb = gen_lower_bound(d).map_err(input_err)?;
    if let Some(p) = sidecar {
        let labels = serde_json::to_string_pretty(&lb.labels()).map_err(|e| Failure::Internal(e.to_string()))?;
        fs::write(p, labels + "\n").map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
    }
    print!("{}", lb.graph.to_edge_list());
    Ok(())
}

fn cmd_stress(cfg: StressConfig, json: bool) -> Outcome {
    if cfg.max_n < 2 {
        return Err(Failure::Input("--max-n must be at least 2".into()));
    }
    let report = run_stress(&cfg);
    let coverage: Vec<_> = Case::ALL.iter().map(|&c| (c.label(), report.trace.hits.get(&c).copied().unwrap_or(0))).collect();
    if json {
        let cov: serde_json::Map<_, _> = coverage.iter().map(|&(l, h)| (l.to_string(), json!(h))).collect();
        println!(
            "{}",
            json!({
                "instances": report.instances,
                "chi_checked": report.chi_checked,
                "failures": report.failures,
                "coverage": cov,
            })
        );
    } else {
        println!("instances {}  chi-checked {}  failures {}", report.instances, report.chi_checked, report.failures.len());
        for (label, hits) in &coverage {
            println!("{label:<40} {hits}");
        }
    }
    match report.failures.first() {
        None => Ok(()),
        Some(f) => {
            eprintln!("first failing seed {}: {}", f.seed, f.reason);
            eprintln!("modulator: {:?}", f.modulator);
            eprint!("{}", f.edge_list);
            Err(Failure::Internal(format!("{} failing instances", report.failures.len())))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Color { input, modulator, json, kmax } => {
            cmd_color(input, modulator.as_deref(), *json, *kmax, cli.verbose)
        }
        Command::Verify { graph, coloring } => cmd_verify(graph, coloring),
        Command::Chi { graph, kmax, guard } => cmd_chi(graph, *kmax, *guard),
        Command::Dc { graph, mode, kmax, json } => cmd_dc(graph, mode, *kmax, *json, cli.verbose),
        Command::GenLb { d, sidecar } => cmd_gen_lb(*d, sidecar.as_deref()),
        Command::Stress { count, seed, max_n, max_x, chi_guard, json } => cmd_stress(
            StressConfig { count: *count, seed: *seed, max_n: *max_n, max_x: *max_x, chi_guard: *chi_guard },
            *json,
        ),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Negative(m) | Failure::Input(m) | Failure::Internal(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}

//! Command-line surface: graph-class recognition, exact oracles, the
//! constructive tree family, extremal grid guarding, and a scaling
//! benchmark. One JSON object per input on stdout; diagnostics on
//! stderr. Exit code 0 covers every successful verdict, member or not;
//! input errors exit with 2.

mod ingest;
mod report;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use domcover::grid::{intersection_graph, is_extremal, parse_grid};
use domcover::oracles::{alpha_capped, beta_capped, gamma_capped};
use domcover::recognition::{gen_worstcase, recognize_b_class, recognize_cgb_poly};
use domcover::trees::{check_tree_conditions, deconstruct, generate_tmax, RootedTree, TreeError};
use domcover::{Certificate, DEFAULT_SIZE_CAP};
use report::{
    BenchSection, GridSection, OracleEntry, OracleSection, Stats, TreeSection, VerdictReport,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "domcover",
    version,
    about = "Recognizers for equal domination and covering numbers, bipartite \
             smaller-side domination, a constructive tree family, and extremal \
             grid guarding"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "verbatim")]
enum ClassArg {
    /// Bipartite graphs dominated by their smaller partite set.
    B,
    /// Connected graphs with equal domination and covering numbers.
    Cgb,
}

#[derive(Subcommand)]
enum Command {
    /// Decide class membership for edge-list graph files.
    Recognize {
        /// Class to recognize.
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Graph files (`p <n> <m>` header, `e <u> <v>` edges, `c` comments).
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Process this many input files concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exact domination, covering, and independence numbers with witnesses.
    Oracle {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Vertex-count cap for the exponential searches.
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Constructive tree family: generate, check, or deconstruct.
    Tree {
        #[command(subcommand)]
        action: TreeAction,
    },
    /// Extremal guard cover for grid files (`H y x1 x2` / `V x y1 y2`).
    Grid {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run a generated family through the recognizer and report scaling.
    Bench {
        /// Instance family; only `worstcase` is available.
        #[arg(long, default_value = "worstcase")]
        family: String,
        /// Comma-separated instance orders, each at least 16.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum TreeAction {
    /// Grow a random family member and print its edges and build script.
    Gen {
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Test family membership via the structural conditions.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Unwind a tree into a build script, or report non-membership.
    Deconstruct {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Recognize { class, paths, jobs } => {
            run_batch(&paths, jobs, move |p| recognize_one(p, class))
        }
        Command::Oracle { paths, cap, jobs } => {
            run_batch(&paths, jobs, move |p| oracle_one(p, cap))
        }
        Command::Tree { action } => match action {
            TreeAction::Gen { steps, seed } => {
                emit(&tree_gen(steps, seed))?;
                Ok(ExitCode::SUCCESS)
            }
            TreeAction::Check { paths } => run_batch(&paths, 1, tree_check_one),
            TreeAction::Deconstruct { paths } => run_batch(&paths, 1, tree_deconstruct_one),
        },
        Command::Grid { paths, jobs } => run_batch(&paths, jobs, grid_one),
        Command::Bench { family, sizes } => bench(&family, &sizes),
    }
}

/// Runs one report per path, optionally in parallel, printing results in
/// input order. A failing input is reported on stderr and turns the exit
/// code to 2; the remaining inputs are still processed.
fn run_batch(
    paths: &[PathBuf],
    jobs: usize,
    f: impl Fn(&Path) -> Result<VerdictReport> + Sync,
) -> Result<ExitCode> {
    let worker = |p: &PathBuf| f(p).with_context(|| format!("{}", p.display()));
    let results: Vec<Result<VerdictReport>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .context("building the worker pool")?;
        use rayon::prelude::*;
        pool.install(|| paths.par_iter().map(worker).collect())
    } else {
        paths.iter().map(worker).collect()
    };
    let mut failed = false;
    for r in results {
        match r {
            Ok(report) => emit(&report)?,
            Err(e) => {
                eprintln!("error: {e:#}");
                failed = true;
            }
        }
    }
    Ok(if failed {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn emit(report: &VerdictReport) -> Result<()> {
    println!("{}", serde_json::to_string(report)?);
    Ok(())
}

fn read_graph(path: &Path) -> Result<ingest::IngestedGraph> {
    let text = std::fs::read_to_string(path)?;
    ingest::parse_graph_file(&text)
}

fn recognize_one(path: &Path, class: ClassArg) -> Result<VerdictReport> {
    let started = Instant::now();
    let ingested = read_graph(path)?;
    let verdict = match class {
        ClassArg::B => recognize_b_class(&ingested.graph),
        ClassArg::Cgb => recognize_cgb_poly(&ingested.graph),
    }
    .map_err(|e| anyhow!("{e}"))?;
    let mut report = VerdictReport::new("recognize");
    report.class = Some(
        match class {
            ClassArg::B => "B",
            ClassArg::Cgb => "Cgb",
        }
        .into(),
    );
    report.input = Some(path.display().to_string());
    report.member = Some(verdict.member);
    report.certificate = Some(verdict.certificate.clone());
    report.labels = Some(ingested.labels);
    report.stats = Some(Stats {
        pair_checks: verdict.pair_checks,
        oracle_nodes: 0,
        elapsed_ms: started.elapsed().as_millis() as u64,
    });
    Ok(report)
}

fn oracle_one(path: &Path, cap: usize) -> Result<VerdictReport> {
    let started = Instant::now();
    let ingested = read_graph(path)?;
    let g = &ingested.graph;
    let ga = gamma_capped(g, cap).map_err(|e| anyhow!("{e}"))?;
    let be = beta_capped(g, cap).map_err(|e| anyhow!("{e}"))?;
    let al = alpha_capped(g, cap).map_err(|e| anyhow!("{e}"))?;
    if al.value + be.value != g.vertex_count() {
        bail!(
            "internal check failed: independence {} plus covering {} is not the order {}",
            al.value,
            be.value,
            g.vertex_count()
        );
    }
    let mut report = VerdictReport::new("oracle");
    report.input = Some(path.display().to_string());
    report.labels = Some(ingested.labels);
    report.stats = Some(Stats {
        pair_checks: 0,
        oracle_nodes: ga.explored + be.explored + al.explored,
        elapsed_ms: started.elapsed().as_millis() as u64,
    });
    report.oracle = Some(OracleSection {
        gamma: OracleEntry {
            value: ga.value,
            witness: ga.witness,
        },
        beta: OracleEntry {
            value: be.value,
            witness: be.witness,
        },
        alpha: OracleEntry {
            value: al.value,
            witness: al.witness,
        },
    });
    Ok(report)
}

fn tree_gen(steps: usize, seed: u64) -> VerdictReport {
    let (tree, script) = generate_tmax(steps, seed);
    let mut report = VerdictReport::new("tree gen");
    report.class = Some("Tmax".into());
    report.member = Some(true);
    report.certificate = Some(Certificate::WitnessGammaSet {
        vertices: tree.side_a(),
    });
    report.tree = Some(TreeSection {
        edges: Some(tree.graph().edges().collect()),
        script: Some(script.to_text()),
        steps: Some(steps),
        seed: Some(seed),
    });
    // Stats stay absent so identical seeds give byte-identical output.
    report
}

fn ingest_tree(path: &Path) -> Result<(RootedTree, Vec<u64>)> {
    let ingested = read_graph(path)?;
    let tree = RootedTree::from_graph(ingested.graph).map_err(|e| anyhow!("{e}"))?;
    Ok((tree, ingested.labels))
}

fn tree_check_one(path: &Path) -> Result<VerdictReport> {
    let started = Instant::now();
    let (tree, labels) = ingest_tree(path)?;
    let verdict = check_tree_conditions(&tree).map_err(|e| anyhow!("{e}"))?;
    let mut report = VerdictReport::new("tree check");
    report.class = Some("Tmax".into());
    report.input = Some(path.display().to_string());
    report.member = Some(verdict.member);
    report.certificate = Some(verdict.certificate.clone());
    report.labels = Some(labels);
    report.stats = Some(Stats {
        pair_checks: verdict.pair_checks,
        oracle_nodes: 0,
        elapsed_ms: started.elapsed().as_millis() as u64,
    });
    Ok(report)
}

fn tree_deconstruct_one(path: &Path) -> Result<VerdictReport> {
    let started = Instant::now();
    let (tree, labels) = ingest_tree(path)?;
    let mut report = VerdictReport::new("tree deconstruct");
    report.class = Some("Tmax".into());
    report.input = Some(path.display().to_string());
    report.labels = Some(labels);
    match deconstruct(&tree) {
        Ok(script) => {
            report.member = Some(true);
            report.certificate = Some(Certificate::WitnessGammaSet {
                vertices: tree.side_a(),
            });
            report.tree = Some(TreeSection {
                edges: None,
                script: Some(script.to_text()),
                steps: Some(script.ops.len()),
                seed: None,
            });
        }
        Err(TreeError::NotMember) => report.member = Some(false),
        Err(e) => return Err(anyhow!("{e}")),
    }
    report.stats = Some(Stats {
        pair_checks: 0,
        oracle_nodes: 0,
        elapsed_ms: started.elapsed().as_millis() as u64,
    });
    Ok(report)
}

fn grid_one(path: &Path) -> Result<VerdictReport> {
    let started = Instant::now();
    let text = std::fs::read_to_string(path)?;
    let (grid, _lines) = parse_grid(&text).map_err(|e| anyhow!("{e}"))?;
    let verdict = is_extremal(&grid);
    let graph = intersection_graph(&grid);
    let mut report = VerdictReport::new("grid");
    report.class = Some("extremal-grid".into());
    report.input = Some(path.display().to_string());
    report.member = Some(verdict.member);
    report.certificate = Some(verdict.certificate.clone());
    report.grid = Some(GridSection {
        vertical_count: grid.vertical_ids().len(),
        horizontal_count: grid.horizontal_ids().len(),
        crossing_count: graph.graph.edge_count(),
    });
    report.stats = Some(Stats {
        pair_checks: verdict.pair_checks,
        oracle_nodes: 0,
        elapsed_ms: started.elapsed().as_millis() as u64,
    });
    Ok(report)
}

fn bench(family: &str, sizes: &[usize]) -> Result<ExitCode> {
    if family != "worstcase" {
        bail!("unknown family {family:?}; available: worstcase");
    }
    eprintln!(
        "{:>8} {:>6} {:>14} {:>10}",
        "order", "side", "pair_checks", "ms"
    );
    let mut previous: Option<u64> = None;
    for &n in sizes {
        let started = Instant::now();
        let g = gen_worstcase(n).map_err(|e| anyhow!("{e}"))?;
        let verdict = recognize_b_class(&g).map_err(|e| anyhow!("{e}"))?;
        let elapsed = started.elapsed();
        let p = n.isqrt() / 2;

        let mut report = VerdictReport::new("bench");
        report.class = Some("B".into());
        report.member = Some(verdict.member);
        report.bench = Some(BenchSection {
            order: n,
            smaller_side: p,
        });
        report.stats = Some(Stats {
            pair_checks: verdict.pair_checks,
            oracle_nodes: 0,
            elapsed_ms: elapsed.as_millis() as u64,
        });
        emit(&report)?;

        let growth = previous
            .map(|prev| format!(" (x{:.1})", verdict.pair_checks as f64 / prev as f64))
            .unwrap_or_default();
        eprintln!(
            "{:>8} {:>6} {:>14} {:>10}{growth}",
            n,
            p,
            verdict.pair_checks,
            elapsed.as_millis()
        );
        previous = Some(verdict.pair_checks);
    }
    Ok(ExitCode::SUCCESS)
}

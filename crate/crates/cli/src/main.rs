mod spec;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use treehom::automorphy::{orbit_partition_with_limit, search_orderings, DEFAULT_ORDERING_LIMIT};
use treehom::extremal::{self, classify_small_targets_with, minimizers_with, sidorenko_check, verify_hoffman_london_with};
use treehom::homcount::{
    hom_brute_force_with_budget, kc_difference_decomposition, partition_function_with_budget, ActivityVector,
    HomCounter, DEFAULT_BUDGET,
};
use treehom::trees::{self, all_trees, kc_move, kc_successors, valid_kc_pairs};
use treehom::{Exec, TargetGraph};

use spec::GraphSpec;

#[derive(Parser)]
#[command(name = "treehom", version, about = "Exact homomorphism counts of trees and Hoffman-London checks")]
struct Cli {
    /// Emit one JSON record per line instead of text.
    #[arg(long, global = true)]
    rows: bool,
    /// Largest search space brute-force counting may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Worker threads for sweeps (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Run sweeps on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count homomorphisms from a tree into a target.
    Hom {
        #[arg(long)]
        tree: GraphSpec,
        #[arg(long)]
        target: GraphSpec,
        /// Count by enumeration instead of the tree walk.
        #[arg(long)]
        brute: bool,
    },
    /// Weighted homomorphism count with per-vertex activities such as "3/2,1,5".
    Partition {
        /// Source graph; need not be a tree.
        #[arg(long)]
        graph: GraphSpec,
        #[arg(long)]
        target: GraphSpec,
        #[arg(long, allow_hyphen_values = true)]
        activities: ActivityVector,
    },
    /// Automorphism orbits of a target.
    Orbits {
        #[arg(long)]
        target: GraphSpec,
        /// Largest target handled by the automorphism search.
        #[arg(long, default_value_t = 32)]
        limit: usize,
    },
    /// Similarity matrix and a search for an increasing-columns ordering.
    Matrix {
        #[arg(long)]
        target: GraphSpec,
        #[arg(long, default_value_t = 32)]
        limit: usize,
    },
    /// List the trees on n vertices.
    Trees {
        n: usize,
        /// Print only the number of trees.
        #[arg(long)]
        count: bool,
    },
    /// Trees on n vertices with the fewest homomorphisms into a target.
    Minimize {
        #[arg(long)]
        target: GraphSpec,
        #[arg(short)]
        n: usize,
    },
    /// Check that paths minimize the count for every order up to n-max.
    CheckHl {
        #[arg(long)]
        target: GraphSpec,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        /// Require the path to be the only minimizer.
        #[arg(long)]
        strong: bool,
    },
    /// Recompute the minimizer classes of the 28 targets on at most three vertices.
    Classify {
        #[arg(long, default_value_t = 9)]
        n_max: usize,
    },
    /// Build a named target family in edge-list format.
    Family {
        #[command(subcommand)]
        family: Family,
    },
    /// Check that stars maximize the count for every order up to n-max.
    Sidorenko {
        #[arg(long)]
        target: GraphSpec,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
    },
    /// Kelmans-type moves on a tree: list them, apply one, or decompose its effect.
    Kc {
        #[arg(long)]
        tree: GraphSpec,
        #[arg(long, requires = "right")]
        left: Option<usize>,
        #[arg(long, requires = "left")]
        right: Option<usize>,
        /// Decompose the count difference for this target.
        #[arg(long, requires = "left")]
        target: Option<GraphSpec>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Vertices 0..=C with a ~ b iff a + b <= C.
    Capacity { capacity: usize },
    /// Fully looped star with k leaves.
    Wr { k: usize },
    /// Clique on b vertices with l cliques on a vertices hung at each.
    Habl { a: usize, b: usize, l: usize },
    /// Folkman graph plus a looped dominating vertex.
    Folkman,
}

enum Failure {
    Usage(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Prefixes an error with the input that caused it.
fn echo<T, E: std::fmt::Display>(input: impl std::fmt::Display, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(format!("{input}: {e}")))
}

/// Buffered output, written once the command has finished.
struct Out {
    rows: bool,
    lines: Vec<String>,
}

impl Out {
    fn text(&mut self, line: impl Into<String>) {
        if !self.rows {
            self.lines.push(line.into());
        }
    }

    fn row(&mut self, record: &impl Serialize) {
        if self.rows {
            self.lines.push(serde_json::to_string(record).expect("records serialize"));
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        treehom::exec::set_worker_limit(threads);
    }
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let mut out = Out {
        rows: cli.rows,
        lines: Vec::new(),
    };
    let status = run(&cli, exec, &mut out);
    for line in &out.lines {
        println!("{line}");
    }
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn verdict(ok: bool) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn codes(list: &[trees::TreeCode]) -> Vec<String> {
    list.iter().map(|c| c.to_string()).collect()
}

#[derive(Serialize)]
struct HomRow<'a> {
    tree: &'a str,
    target: &'a str,
    count: String,
}

#[derive(Serialize)]
struct PartitionRow<'a> {
    graph: &'a str,
    target: &'a str,
    activities: String,
    value: String,
}

#[derive(Serialize)]
struct OrbitsRow {
    sizes: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct MatrixRow {
    sizes: Vec<usize>,
    matrix: Vec<Vec<usize>>,
    candidates: usize,
    orderings: u128,
    verdict: &'static str,
    witness: Option<Vec<usize>>,
    witness_matrix: Option<Vec<Vec<usize>>>,
}

#[derive(Serialize)]
struct TreeRow {
    n: usize,
    code: String,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct CountRow {
    n: usize,
    count: usize,
}

#[derive(Serialize)]
struct MinimizeRow {
    n: usize,
    tree_count: usize,
    min_count: String,
    minimizers: Vec<String>,
    path_is_min: bool,
    path_is_unique_min: bool,
    max_count: String,
    maximizers: Vec<String>,
    star_is_max: bool,
}

impl From<&extremal::MinimizerReport> for MinimizeRow {
    fn from(r: &extremal::MinimizerReport) -> Self {
        MinimizeRow {
            n: r.n,
            tree_count: r.tree_count,
            min_count: r.min_count.to_string(),
            minimizers: codes(&r.minimizers),
            path_is_min: r.path_is_min,
            path_is_unique_min: r.path_is_unique_min,
            max_count: r.max_count.to_string(),
            maximizers: codes(&r.maximizers),
            star_is_max: r.star_is_max,
        }
    }
}

#[derive(Serialize)]
struct HlSummary {
    n_max: usize,
    hoffman_london: bool,
    strong: bool,
    increasing_ordering: Option<Vec<usize>>,
    strong_certificate: bool,
}

#[derive(Serialize)]
struct ClassRow {
    name: &'static str,
    label: String,
    published: &'static str,
    matches: bool,
    min_counts: Vec<String>,
}

#[derive(Serialize)]
struct GraphRow {
    n: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct SidorenkoRow {
    n_max: usize,
    holds: bool,
    n: Option<usize>,
    tree: Option<String>,
    tree_count: Option<String>,
    star_count: Option<String>,
}

#[derive(Serialize)]
struct KcRow {
    left: usize,
    right: usize,
    code: String,
}

#[derive(Serialize)]
struct KcDecompositionRow {
    left: usize,
    right: usize,
    code: String,
    lhs: Option<String>,
    rhs: Option<String>,
    holds: Option<bool>,
}

fn emit_graph(out: &mut Out, g: &TargetGraph) {
    out.text(g.to_string().trim_end());
    out.row(&GraphRow {
        n: g.order(),
        edges: g.edges(),
    });
}

fn run(cli: &Cli, exec: Exec, out: &mut Out) -> Result<(), Failure> {
    match &cli.command {
        Command::Hom { tree, target, brute } => {
            let t = tree.to_tree()?;
            let count = if *brute {
                echo(target.raw(), hom_brute_force_with_budget(&tree.graph, &target.graph, cli.budget))?
            } else {
                HomCounter::new(&target.graph).count(&t)
            };
            out.text(count.to_string());
            out.row(&HomRow {
                tree: tree.raw(),
                target: target.raw(),
                count: count.to_string(),
            });
        }
        Command::Partition { graph, target, activities } => {
            let value = echo(
                format!("{} on {}", graph.raw(), target.raw()),
                partition_function_with_budget(&graph.graph, &target.graph, activities, cli.budget),
            )?;
            out.text(value.to_string());
            out.row(&PartitionRow {
                graph: graph.raw(),
                target: target.raw(),
                activities: activities.to_string(),
                value: value.to_string(),
            });
        }
        Command::Orbits { target, limit } => {
            let p = echo(target.raw(), orbit_partition_with_limit(&target.graph, *limit))?;
            out.text(format!("{} orbits, sizes {:?}", p.len(), p.sizes()));
            for (i, class) in p.classes().iter().enumerate() {
                out.text(format!("  class {i}: {class:?}"));
            }
            out.row(&OrbitsRow {
                sizes: p.sizes(),
                classes: p.classes().to_vec(),
            });
        }
        Command::Matrix { target, limit } => {
            let p = echo(target.raw(), orbit_partition_with_limit(&target.graph, *limit))?;
            let natural = p.natural_matrix();
            let search = search_orderings(&p, DEFAULT_ORDERING_LIMIT, exec)?;
            out.text(format!("class sizes {:?}", p.sizes()));
            out.text("similarity matrix (classes in orbit order):");
            for row in natural.rows() {
                out.text(format!("  {row:?}"));
            }
            out.text(format!(
                "tried {} degree-sorted orderings of {} total",
                search.candidates, search.total
            ));
            match &search.witness {
                Some(m) => {
                    out.text(format!("verdict: increasing ordering {:?}", m.ordering()));
                    for row in m.rows() {
                        out.text(format!("  {row:?}"));
                    }
                }
                None => out.text("verdict: no increasing ordering"),
            }
            out.row(&MatrixRow {
                sizes: p.sizes(),
                matrix: natural.rows().to_vec(),
                candidates: search.candidates,
                orderings: search.total,
                verdict: if search.witness.is_some() { "increasing ordering" } else { "no increasing ordering" },
                witness: search.witness.as_ref().map(|m| m.ordering().to_vec()),
                witness_matrix: search.witness.as_ref().map(|m| m.rows().to_vec()),
            });
            verdict(search.witness.is_some())?;
        }
        Command::Trees { n, count } => {
            let list = echo(n, all_trees(*n))?;
            if *count {
                out.text(list.len().to_string());
                out.row(&CountRow { n: *n, count: list.len() });
            } else {
                for t in &list {
                    out.text(format!("{} {:?}", t.code, t.tree.edges()));
                    out.row(&TreeRow {
                        n: *n,
                        code: t.code.to_string(),
                        edges: t.tree.edges(),
                    });
                }
            }
        }
        Command::Minimize { target, n } => {
            let r = echo(format!("-n {n}"), minimizers_with(&HomCounter::new(&target.graph), *n, exec))?;
            out.text(format!("n = {}: {} trees, minimum {}", r.n, r.tree_count, r.min_count));
            for code in &r.minimizers {
                out.text(format!("  minimizer {code}"));
            }
            out.text(format!("path minimal: {}, unique: {}", r.path_is_min, r.path_is_unique_min));
            out.text(format!("maximum {} (star maximal: {})", r.max_count, r.star_is_max));
            out.row(&MinimizeRow::from(&r));
        }
        Command::CheckHl { target, n_max, strong } => {
            let v = echo(target.raw(), verify_hoffman_london_with(&target.graph, *n_max, exec))?;
            for r in &v.reports {
                let status = if r.path_is_unique_min {
                    "path unique minimizer"
                } else if r.path_is_min {
                    "path minimal, not unique"
                } else {
                    "path NOT minimal"
                };
                out.text(format!("n = {:>2}: {status} (minimum {})", r.n, r.min_count));
                out.row(&MinimizeRow::from(r));
            }
            let summary = HlSummary {
                n_max: v.n_max,
                hoffman_london: v.is_hoffman_london(),
                strong: v.is_strong_from(1),
                increasing_ordering: v.matrix_certificate.as_ref().map(|m| m.ordering().to_vec()),
                strong_certificate: v.strong_certificate.is_some(),
            };
            out.text(format!(
                "hoffman-london up to {}: {}; strong: {}",
                summary.n_max, summary.hoffman_london, summary.strong
            ));
            match &summary.increasing_ordering {
                Some(o) => out.text(format!("increasing ordering {o:?}; strong certificate: {}", summary.strong_certificate)),
                None => out.text("no increasing ordering"),
            }
            out.row(&summary);
            verdict(if *strong { summary.strong } else { summary.hoffman_london })?;
        }
        Command::Classify { n_max } => {
            let rows = echo(format!("--n-max {n_max}"), classify_small_targets_with(*n_max, exec))?;
            out.text(format!("{:<5} {:<34} {:<34} match", "name", "computed", "published"));
            for r in &rows {
                out.text(format!("{:<5} {:<34} {:<34} {}", r.name, r.label, r.published, if r.matches() { "yes" } else { "NO" }));
                out.row(&ClassRow {
                    name: r.name,
                    label: r.label.clone(),
                    published: r.published,
                    matches: r.matches(),
                    min_counts: r.per_n.iter().map(|c| c.min_count.to_string()).collect(),
                });
            }
            verdict(rows.iter().all(|r| r.matches()))?;
        }
        Command::Family { family } => {
            let g = match family {
                Family::Capacity { capacity } => extremal::make_capacity_graph(*capacity)?,
                Family::Wr { k } => extremal::make_widom_rowlinson(*k)?,
                Family::Habl { a, b, l } => extremal::make_h_abl(*a, *b, *l)?,
                Family::Folkman => extremal::make_folkman_plus_dominating(),
            };
            emit_graph(out, &g);
        }
        Command::Sidorenko { target, n_max } => {
            let found = echo(target.raw(), sidorenko_check(&target.graph, *n_max))?;
            match &found {
                None => out.text(format!("stars maximize for every n <= {n_max}")),
                Some(v) => out.text(format!(
                    "n = {}: tree {} has {} > star {}",
                    v.n, v.tree, v.tree_count, v.star_count
                )),
            }
            out.row(&SidorenkoRow {
                n_max: *n_max,
                holds: found.is_none(),
                n: found.as_ref().map(|v| v.n),
                tree: found.as_ref().map(|v| v.tree.to_string()),
                tree_count: found.as_ref().map(|v| v.tree_count.to_string()),
                star_count: found.as_ref().map(|v| v.star_count.to_string()),
            });
            verdict(found.is_none())?;
        }
        Command::Kc { tree, left, right, target } => {
            let t = tree.to_tree()?;
            match (left, right) {
                (Some(a), Some(b)) => {
                    let input = format!("{} with --left {a} --right {b}", tree.raw());
                    let moved = echo(&input, kc_move(&t, *a, *b))?;
                    let code = trees::canonical_code(&moved).to_string();
                    out.text(format!("{code} {:?}", moved.edges()));
                    let decomposition = match target {
                        Some(h) => Some(echo(&input, kc_difference_decomposition(&t, *a, *b, &HomCounter::new(&h.graph)))?),
                        None => None,
                    };
                    if let Some(d) = &decomposition {
                        out.text(format!("difference {} = path-pair sum {}", d.lhs, d.rhs));
                    }
                    out.row(&KcDecompositionRow {
                        left: *a,
                        right: *b,
                        code,
                        lhs: decomposition.as_ref().map(|d| d.lhs.to_string()),
                        rhs: decomposition.as_ref().map(|d| d.rhs.to_string()),
                        holds: decomposition.as_ref().map(|d| d.holds()),
                    });
                    verdict(decomposition.is_none_or(|d| d.holds()))?;
                }
                _ => {
                    for (a, b) in valid_kc_pairs(&t) {
                        let code = trees::canonical_code(&kc_move(&t, a, b)?).to_string();
                        out.text(format!("({a}, {b}) -> {code}"));
                        out.row(&KcRow { left: a, right: b, code });
                    }
                    out.text(format!("{} distinct successors", kc_successors(&t).len()));
                }
            }
        }
    }
    Ok(())
}

//! The 28 target graphs on at most three vertices, their published
//! minimizer classes, and the classifier that recomputes them.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::extremal::tree_counts;
use crate::graph::TargetGraph;
use crate::homcount::HomCounter;
use crate::trees::{self, canonical_code};

/// One of the 28 small targets.
#[derive(Clone, Debug)]
pub struct SmallTarget {
    pub name: &'static str,
    pub graph: TargetGraph,
    /// Published minimizer class, in the classifier's label format.
    pub published: &'static str,
}

const BALANCED: &str = "Trees with balanced bipartitions";
const PATHS: &str = "Paths";

/// Vertices A, B, C are 0, 1, 2; `(v, v)` is a loop.
const TABLE: [(&str, usize, &[(usize, usize)], &str); 28] = [
    ("H1", 1, &[], "All trees (0)"),
    ("H2", 1, &[(0, 0)], "All trees (1)"),
    ("H3", 2, &[], "All trees (0)"),
    ("H4", 2, &[(1, 1)], "All trees (1)"),
    ("H5", 2, &[(0, 0), (1, 1)], "All trees (2)"),
    ("H6", 2, &[(0, 1)], "All trees (2)"),
    ("H7", 2, &[(0, 1), (1, 1)], PATHS),
    ("H8", 2, &[(0, 1), (0, 0), (1, 1)], "All trees (2^n)"),
    ("H9", 3, &[], "All trees (0)"),
    ("H10", 3, &[(1, 1)], "All trees (1)"),
    ("H11", 3, &[(0, 0), (2, 2)], "All trees (2)"),
    ("H12", 3, &[(0, 0), (1, 1), (2, 2)], "All trees (3)"),
    ("H13", 3, &[(0, 1)], "All trees (2)"),
    ("H14", 3, &[(0, 1), (2, 2)], "All trees (3)"),
    ("H15", 3, &[(0, 1), (0, 0)], PATHS),
    ("H16", 3, &[(0, 1), (0, 0), (2, 2)], PATHS),
    ("H17", 3, &[(0, 1), (0, 0), (1, 1)], "All trees (2^n)"),
    ("H18", 3, &[(0, 1), (0, 0), (1, 1), (2, 2)], "All trees (2^n+1)"),
    ("H19", 3, &[(0, 1), (1, 2)], BALANCED),
    ("H20", 3, &[(0, 1), (1, 2), (0, 0)], PATHS),
    ("H21", 3, &[(0, 1), (1, 2), (1, 1)], PATHS),
    ("H22", 3, &[(0, 1), (1, 2), (1, 1), (2, 2)], PATHS),
    ("H23", 3, &[(0, 1), (1, 2), (0, 0), (2, 2)], "All trees (3*2^(n-1))"),
    ("H24", 3, &[(0, 1), (1, 2), (0, 0), (1, 1), (2, 2)], PATHS),
    ("H25", 3, &[(0, 1), (1, 2), (0, 2)], "All trees (3*2^(n-1))"),
    ("H26", 3, &[(0, 1), (1, 2), (0, 2), (0, 0)], PATHS),
    ("H27", 3, &[(0, 1), (1, 2), (0, 2), (0, 0), (1, 1)], PATHS),
    ("H28", 3, &[(0, 1), (1, 2), (0, 2), (0, 0), (1, 1), (2, 2)], "All trees (3^n)"),
];

pub fn small_targets() -> Vec<SmallTarget> {
    TABLE
        .iter()
        .map(|&(name, n, edges, published)| SmallTarget {
            name,
            graph: TargetGraph::from_edges(n, edges.iter().copied()).expect("table entries are valid"),
            published,
        })
        .collect()
}

/// `Σ_d c_d · d^(n-1)` for a target whose components are all regular,
/// where `c_d` is the number of vertices in components of degree `d`.
/// Valid for trees with `n >= 2` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    /// `(degree, coefficient)`, degree descending, degree 0 dropped.
    terms: Vec<(usize, usize)>,
}

impl ClosedForm {
    pub fn eval(&self, n: usize) -> BigUint {
        self.terms
            .iter()
            .map(|&(d, c)| BigUint::from(c) * num_traits::pow(BigUint::from(d), n - 1))
            .sum()
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, &(d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match (d, c) {
                (1, c) => write!(f, "{c}")?,
                (d, c) if c == d => write!(f, "{d}^n")?,
                (d, 1) => write!(f, "{d}^(n-1)")?,
                (d, c) => write!(f, "{c}*{d}^(n-1)")?,
            }
        }
        Ok(())
    }
}

/// The closed form for `hom(T_n, h)`, if every component is regular.
pub fn closed_form(h: &TargetGraph) -> Option<ClosedForm> {
    let mut by_degree: std::collections::BTreeMap<usize, usize> = Default::default();
    for comp in h.components() {
        let sub = h.induced_subgraph(&comp);
        let d = sub.regular_degree()?;
        if d > 0 {
            *by_degree.entry(d).or_default() += comp.len();
        }
    }
    Some(ClosedForm {
        terms: by_degree.into_iter().rev().collect(),
    })
}

/// Which natural tree families make up the minimizer set at one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NClass {
    pub n: usize,
    pub min_count: BigUint,
    pub minimizer_count: usize,
    pub tree_count: usize,
    pub all_trees: bool,
    pub path_only: bool,
    pub balanced: bool,
}

#[derive(Clone, Debug)]
pub struct ClassificationRow {
    pub name: &'static str,
    pub label: String,
    pub published: &'static str,
    pub per_n: Vec<NClass>,
}

impl ClassificationRow {
    pub fn matches(&self) -> bool {
        self.label == self.published
    }
}

pub fn classify_small_targets(n_max: usize) -> Result<Vec<ClassificationRow>> {
    classify_small_targets_with(n_max, Exec::default())
}

/// Labels each target by the first of (all trees, paths only, balanced
/// bipartition trees) that equals the minimizer set at every
/// `2 <= n <= n_max`. All-trees labels carry the closed form, checked
/// against every observed count.
pub fn classify_small_targets_with(n_max: usize, exec: Exec) -> Result<Vec<ClassificationRow>> {
    if n_max < 2 {
        return Err(Error::argument("n_max must be at least 2"));
    }
    small_targets()
        .into_iter()
        .map(|t| {
            let counter = HomCounter::new(&t.graph);
            let per_n = (2..=n_max)
                .map(|n| classify_order(&counter, n, exec))
                .collect::<Result<Vec<_>>>()?;
            Ok(ClassificationRow {
                name: t.name,
                label: label(&t.graph, &per_n),
                published: t.published,
                per_n,
            })
        })
        .collect()
}

fn classify_order(counter: &HomCounter, n: usize, exec: Exec) -> Result<NClass> {
    let counts = tree_counts(counter, n, exec)?;
    let min_count = counts.iter().map(|(_, c)| c).min().expect("trees exist").clone();
    let is_min: Vec<bool> = counts.iter().map(|(_, c)| *c == min_count).collect();
    let path_code = canonical_code(&trees::path(n)?);
    Ok(NClass {
        n,
        minimizer_count: is_min.iter().filter(|&&m| m).count(),
        tree_count: counts.len(),
        all_trees: is_min.iter().all(|&m| m),
        path_only: counts.iter().zip(&is_min).all(|((t, _), &m)| m == (t.code == path_code)),
        balanced: counts.iter().zip(&is_min).all(|((t, _), &m)| m == t.tree.has_balanced_bipartition()),
        min_count,
    })
}

fn label(h: &TargetGraph, per_n: &[NClass]) -> String {
    if per_n.iter().all(|c| c.all_trees) {
        return match closed_form(h) {
            Some(f) if per_n.iter().all(|c| f.eval(c.n) == c.min_count) => format!("All trees ({f})"),
            _ => "All trees (no closed form)".to_string(),
        };
    }
    if per_n.iter().all(|c| c.path_only) {
        return PATHS.to_string();
    }
    if per_n.iter().all(|c| c.balanced) {
        return BALANCED.to_string();
    }
    "Unclassified".to_string()
}

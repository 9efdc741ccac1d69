//! Exhaustive minimizer and maximizer sweeps over trees, path-minimality
//! verdicts, and their matrix certificates.

mod families;
mod small;

pub use families::{
    make_capacity_graph, make_complete, make_complete_bipartite, make_cycle, make_folkman_plus_dominating,
    make_h_abl, make_looped_complete, make_looped_path, make_path, make_widom_rowlinson,
};
pub use small::{
    classify_small_targets, classify_small_targets_with, closed_form, small_targets, ClassificationRow,
    ClosedForm, NClass, SmallTarget,
};

use num_bigint::BigUint;
use thiserror::Error;

use crate::automorphy::{orbit_partition, search_orderings, SimilarityMatrix, DEFAULT_ORDERING_LIMIT};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::TargetGraph;
use crate::homcount::{hom_vector, path_pair_counts, HomCounter, HomVector};
use crate::trees::{self, all_trees, canonical_code, CanonicalTree, TreeCode};

/// Every tree on `n` vertices with its count, in code order.
pub fn tree_counts(counter: &HomCounter, n: usize, exec: Exec) -> Result<Vec<(CanonicalTree, BigUint)>> {
    let trees = all_trees(n)?;
    let counts = exec.map(&trees, |t| counter.count(&t.tree));
    Ok(trees.into_iter().zip(counts).collect())
}

/// Extremes of `hom(T, H)` over all trees on `n` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimizerReport {
    pub n: usize,
    pub tree_count: usize,
    pub min_count: BigUint,
    /// Codes of every tree attaining `min_count`, sorted.
    pub minimizers: Vec<TreeCode>,
    pub path_is_min: bool,
    pub path_is_unique_min: bool,
    pub max_count: BigUint,
    pub maximizers: Vec<TreeCode>,
    pub star_is_max: bool,
}

impl MinimizerReport {
    pub fn from_counts(n: usize, counts: &[(CanonicalTree, BigUint)]) -> Self {
        let min_count = counts.iter().map(|(_, c)| c).min().expect("at least one tree").clone();
        let max_count = counts.iter().map(|(_, c)| c).max().expect("at least one tree").clone();
        let pick = |target: &BigUint| -> Vec<TreeCode> {
            counts.iter().filter(|(_, c)| c == target).map(|(t, _)| t.code.clone()).collect()
        };
        let minimizers = pick(&min_count);
        let maximizers = pick(&max_count);
        let path_code = canonical_code(&trees::path(n).expect("n >= 1"));
        let star_code = if n >= 2 { canonical_code(&trees::star(n).expect("n >= 2")) } else { path_code.clone() };
        MinimizerReport {
            n,
            tree_count: counts.len(),
            path_is_min: minimizers.contains(&path_code),
            path_is_unique_min: minimizers == [path_code],
            star_is_max: maximizers.contains(&star_code),
            min_count,
            minimizers,
            max_count,
            maximizers,
        }
    }
}

pub fn minimizers(h: &TargetGraph, n: usize) -> Result<MinimizerReport> {
    minimizers_with(&HomCounter::new(h), n, Exec::default())
}

pub fn minimizers_with(counter: &HomCounter, n: usize, exec: Exec) -> Result<MinimizerReport> {
    Ok(MinimizerReport::from_counts(n, &tree_counts(counter, n, exec)?))
}

/// A pair of classes certifying one path length `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongWitness {
    pub t: usize,
    /// Positions in the matrix's class order.
    pub a: usize,
    pub b: usize,
}

/// Witnesses for every `2 <= t <= t_max`, together with the path-end
/// vectors `h(P_s, end)` for `2 <= s <= s_max` they were checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongCertificate {
    pub witnesses: Vec<StrongWitness>,
    pub path_end_vectors: Vec<HomVector>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateFailure {
    #[error("the ordering does not have increasing columns")]
    NotIncreasing,
    #[error("no class pair works for paths on {t} vertices")]
    NoWitness { t: usize },
}

/// Looks for classes `a(t)`, `b(t)` with `p^t_{a,b} > 0` and
/// `h_b(P_s) > h_a(P_s)` for all `2 <= s <= s_max`, taking the
/// lexicographically least pair at each `t`.
pub fn check_strong_hl_certificate(
    m: &SimilarityMatrix,
    t_max: usize,
    s_max: usize,
) -> std::result::Result<StrongCertificate, CertificateFailure> {
    if !m.has_increasing_columns() {
        return Err(CertificateFailure::NotIncreasing);
    }
    let path_end_vectors: Vec<HomVector> = (2..=s_max)
        .map(|s| hom_vector(&trees::path(s).expect("s >= 2"), 0, m))
        .collect();
    let k = m.k();
    let dominates = |a: usize, b: usize| path_end_vectors.iter().all(|h| h.entries()[b] > h.entries()[a]);
    let mut witnesses = Vec::new();
    for t in 2..=t_max {
        let table = path_pair_counts(t, m).expect("t >= 1");
        let found = (0..k)
            .flat_map(|a| (0..k).map(move |b| (a, b)))
            .find(|&(a, b)| a != b && table.get(a, b) > &BigUint::ZERO && dominates(a, b));
        match found {
            Some((a, b)) => witnesses.push(StrongWitness { t, a, b }),
            None => return Err(CertificateFailure::NoWitness { t }),
        }
    }
    Ok(StrongCertificate {
        witnesses,
        path_end_vectors,
    })
}

/// Per-order verdicts for one target plus whatever certificates apply.
#[derive(Clone, Debug)]
pub struct HLVerdict {
    pub n_max: usize,
    /// Reports for `n = 1..=n_max`.
    pub reports: Vec<MinimizerReport>,
    /// First class ordering with increasing columns, if the orbit
    /// partition is small enough to search.
    pub matrix_certificate: Option<SimilarityMatrix>,
    pub strong_certificate: Option<StrongCertificate>,
}

impl HLVerdict {
    /// The path is a minimizer at every checked order.
    pub fn is_hoffman_london(&self) -> bool {
        self.reports.iter().all(|r| r.path_is_min)
    }

    /// The path is the only minimizer at every checked order in
    /// `from..=n_max`.
    pub fn is_strong_from(&self, from: usize) -> bool {
        self.reports.iter().filter(|r| r.n >= from).all(|r| r.path_is_unique_min)
    }

    pub fn report(&self, n: usize) -> Option<&MinimizerReport> {
        self.reports.iter().find(|r| r.n == n)
    }
}

pub fn verify_hoffman_london(h: &TargetGraph, n_max: usize) -> Result<HLVerdict> {
    verify_hoffman_london_with(h, n_max, Exec::default())
}

pub fn verify_hoffman_london_with(h: &TargetGraph, n_max: usize, exec: Exec) -> Result<HLVerdict> {
    if n_max == 0 {
        return Err(Error::argument("n_max must be at least 1"));
    }
    let counter = HomCounter::new(h);
    let reports = (1..=n_max)
        .map(|n| minimizers_with(&counter, n, exec))
        .collect::<Result<Vec<_>>>()?;
    let matrix_certificate = orbit_partition(h)
        .ok()
        .and_then(|p| search_orderings(&p, DEFAULT_ORDERING_LIMIT, exec).ok())
        .and_then(|s| s.witness);
    let strong_certificate = matrix_certificate
        .as_ref()
        .and_then(|m| check_strong_hl_certificate(m, n_max, n_max).ok());
    Ok(HLVerdict {
        n_max,
        reports,
        matrix_certificate,
        strong_certificate,
    })
}

/// A vertex order with `N(v_1) ⊆ N(v_2) ⊆ ...` (loops put a vertex in its
/// own neighborhood), if one exists.
///
/// Such an order makes the neighborhoods a chain, and sorting any chain by
/// size recovers it, so no search is needed.
pub fn is_loop_threshold(h: &TargetGraph) -> Option<Vec<usize>> {
    let mut order: Vec<usize> = (0..h.order()).collect();
    order.sort_by_key(|&v| (h.degree(v), v));
    let nested = order
        .windows(2)
        .all(|w| h.neighbors(w[0]).all(|x| h.has_edge(w[1], x)));
    nested.then_some(order)
}

/// A tree counted more often than the star of the same order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SidorenkoViolation {
    pub n: usize,
    pub tree: TreeCode,
    pub tree_count: BigUint,
    pub star_count: BigUint,
}

/// Checks `hom(T, H) <= hom(S_n, H)` for every tree with `2 <= n <= n_max`.
pub fn sidorenko_check(h: &TargetGraph, n_max: usize) -> Result<Option<SidorenkoViolation>> {
    let counter = HomCounter::new(h);
    for n in 2..=n_max {
        let star_count = counter.count(&trees::star(n)?);
        for (t, c) in tree_counts(&counter, n, Exec::default())? {
            if c > star_count {
                return Ok(Some(SidorenkoViolation {
                    n,
                    tree: t.code,
                    tree_count: c,
                    star_count,
                }));
            }
        }
    }
    Ok(None)
}

/// A tree with strictly fewer colorings than the path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HlCounterexample {
    pub n: usize,
    pub tree: CanonicalTree,
    pub tree_count: BigUint,
    pub path_count: BigUint,
}

/// The first `(n, T)` in order of `n`, then code, with
/// `hom(T, H) < hom(P_n, H)`.
pub fn find_hl_counterexample_search(h: &TargetGraph, n_max: usize) -> Result<Option<HlCounterexample>> {
    let counter = HomCounter::new(h);
    for n in 1..=n_max {
        let path_count = counter.count(&trees::path(n)?);
        for (t, c) in tree_counts(&counter, n, Exec::default())? {
            if c < path_count {
                return Ok(Some(HlCounterexample {
                    n,
                    tree: t,
                    tree_count: c,
                    path_count,
                }));
            }
        }
    }
    Ok(None)
}

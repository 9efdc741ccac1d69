//! Exact H-coloring counts of trees.
//!
//! The main engine walks a rooted copy of the tree bottom-up: every vertex
//! starts from the all-ones class vector, and each child contributes its
//! own vector multiplied by the similarity matrix, combined entrywise.

mod brute;
mod paths;
mod weighted;

pub use brute::{hom_brute_force, hom_brute_force_with_budget, DEFAULT_BUDGET};
pub use paths::{kc_difference_decomposition, path_pair_counts, KcDecomposition, PathPairTable};
pub use weighted::{
    check_blowup_identity, partition_function, partition_function_with_budget, ActivityVector,
    BlowupCheck,
};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automorphy::{orbit_partition, ClassPartition, SimilarityMatrix, DEFAULT_AUTOMORPHISM_LIMIT};
use crate::graph::{TargetGraph, Tree};

/// Counts of colorings sending a fixed root to one representative of each
/// class, in the class order of the matrix that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomVector(Vec<BigUint>);

impl HomVector {
    pub fn ones(k: usize) -> Self {
        HomVector(vec![BigUint::one(); k])
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigUint> {
        self.0
    }

    /// `a(H) · h`: the total count, given the class sizes.
    pub fn total(&self, sizes: &[usize]) -> BigUint {
        self.0.iter().zip(sizes).map(|(h, &a)| h * a).sum()
    }
}

/// `M · h`.
pub(crate) fn transfer(m: &SimilarityMatrix, h: &[BigUint]) -> Vec<BigUint> {
    m.rows()
        .iter()
        .map(|row| {
            row.iter()
                .zip(h)
                .filter(|(&c, _)| c != 0)
                .map(|(&c, x)| x * c)
                .sum()
        })
        .collect()
}

fn hadamard(acc: &mut [BigUint], other: &[BigUint]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a *= b;
    }
}

/// Class vector of `tree` rooted at `root`, by an iterative post-order walk.
pub fn hom_vector(tree: &Tree, root: usize, m: &SimilarityMatrix) -> HomVector {
    let (parent, order) = tree.rooted(root);
    let mut vecs: Vec<Option<Vec<BigUint>>> = vec![None; tree.order()];
    for &v in order.iter().rev() {
        let mut acc = vec![BigUint::one(); m.k()];
        for &c in tree.neighbors(v) {
            if c == parent[v] {
                continue;
            }
            let child = vecs[c].take().expect("children finish first");
            hadamard(&mut acc, &transfer(m, &child));
        }
        vecs[v] = Some(acc);
    }
    HomVector(vecs[root].take().expect("root is visited"))
}

/// Class vector by the recursive decomposition: a root of degree one is
/// stripped (`M · h(T - v, w)`), otherwise the tree is cut at the root into
/// the branch through `pick(neighbors)` and the rest, whose vectors are
/// multiplied entrywise. Any choice of branch gives the same result.
pub fn hom_vector_by_splitting<F>(tree: &Tree, root: usize, m: &SimilarityMatrix, mut pick: F) -> HomVector
where
    F: FnMut(&[usize]) -> usize,
{
    let alive = vec![true; tree.order()];
    HomVector(split_walk(tree, &alive, root, m, &mut pick))
}

fn split_walk<F>(tree: &Tree, alive: &[bool], v: usize, m: &SimilarityMatrix, pick: &mut F) -> Vec<BigUint>
where
    F: FnMut(&[usize]) -> usize,
{
    let nbrs: Vec<usize> = tree.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
    match nbrs.len() {
        0 => vec![BigUint::one(); m.k()],
        1 => {
            let mut rest = alive.to_vec();
            rest[v] = false;
            transfer(m, &split_walk(tree, &rest, nbrs[0], m, pick))
        }
        _ => {
            let w = nbrs[pick(&nbrs) % nbrs.len()];
            let branch = branch_mask(tree, alive, v, w);
            let rest: Vec<bool> = alive.iter().zip(&branch).map(|(&a, &b)| a && !b).collect();
            let mut with_root = branch;
            with_root[v] = true;
            let mut h = split_walk(tree, &with_root, v, m, pick);
            hadamard(&mut h, &split_walk(tree, &rest, v, m, pick));
            h
        }
    }
}

/// Live vertices reachable from `w` without passing through `v`.
fn branch_mask(tree: &Tree, alive: &[bool], v: usize, w: usize) -> Vec<bool> {
    let mut mask = vec![false; tree.order()];
    mask[w] = true;
    let mut stack = vec![w];
    while let Some(u) = stack.pop() {
        for &x in tree.neighbors(u) {
            if x != v && alive[x] && !mask[x] {
                mask[x] = true;
                stack.push(x);
            }
        }
    }
    mask
}

/// A target prepared for repeated counting: its class partition and the
/// matrix in natural class order.
#[derive(Clone, Debug)]
pub struct HomCounter {
    partition: ClassPartition,
    matrix: SimilarityMatrix,
}

impl HomCounter {
    /// Uses automorphism orbits for small targets and the coarsest
    /// equitable partition otherwise; both give exact counts.
    pub fn new(h: &TargetGraph) -> Self {
        let partition = if h.order() <= DEFAULT_AUTOMORPHISM_LIMIT {
            orbit_partition(h).expect("order is within the limit").into_inner()
        } else {
            ClassPartition::coarsest_equitable(h)
        };
        Self::with_partition(partition)
    }

    /// `partition` must be an equitable partition of the target.
    pub fn with_partition(partition: ClassPartition) -> Self {
        let matrix = partition.natural_matrix();
        HomCounter { partition, matrix }
    }

    pub fn partition(&self) -> &ClassPartition {
        &self.partition
    }

    pub fn matrix(&self) -> &SimilarityMatrix {
        &self.matrix
    }

    pub fn vector(&self, tree: &Tree, root: usize) -> HomVector {
        hom_vector(tree, root, &self.matrix)
    }

    pub fn count(&self, tree: &Tree) -> BigUint {
        if self.matrix.k() == 0 {
            return BigUint::zero();
        }
        self.vector(tree, 0).total(self.matrix.sizes())
    }
}

/// `hom(T, H)`.
pub fn hom_count(tree: &Tree, h: &TargetGraph) -> BigUint {
    HomCounter::new(h).count(tree)
}

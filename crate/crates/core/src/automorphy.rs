//! Automorphism orbits, automorphic similarity matrices, and the
//! increasing-columns property.

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{
    check_permutation, cluster_owner, degree_loop_colors, refine_colors, IsoSearch, TargetGraph,
    DEFAULT_ISO_LIMIT,
};

/// Default cap on target order for automorphism and orbit computations.
pub const DEFAULT_AUTOMORPHISM_LIMIT: usize = DEFAULT_ISO_LIMIT;
/// Default cap on the number of classes for the exhaustive ordering search.
pub const DEFAULT_ORDERING_LIMIT: usize = 9;

/// Every automorphism of `h`, as vertex maps, in lexicographic order.
pub fn automorphisms(h: &TargetGraph) -> Result<Vec<Vec<usize>>> {
    automorphisms_with_limit(h, DEFAULT_AUTOMORPHISM_LIMIT)
}

pub fn automorphisms_with_limit(h: &TargetGraph, limit: usize) -> Result<Vec<Vec<usize>>> {
    check_order(h, limit)?;
    let search = IsoSearch::new(h, h).expect("a graph is isomorphic to itself");
    let mut out = Vec::new();
    search.run(None, |m| {
        out.push(m.to_vec());
        true
    });
    out.sort();
    Ok(out)
}

fn check_order(h: &TargetGraph, limit: usize) -> Result<()> {
    if h.order() > limit {
        return Err(Error::size("target order", h.order() as u128, limit as u128));
    }
    Ok(())
}

/// A partition of the target's vertices in which every vertex of class `i`
/// has the same number of neighbors in class `j`.
///
/// Classes are indexed by their least vertex. The tree walk is valid for any
/// such partition; [`OrbitPartition`] is the special case of automorphism
/// orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    /// `counts[i][j]`: neighbors in class `j` of any vertex of class `i`.
    counts: Vec<Vec<usize>>,
}

impl ClassPartition {
    /// Validates that `classes` partition `V(h)` and are equitable.
    pub fn from_classes(h: &TargetGraph, classes: Vec<Vec<usize>>) -> Result<Self> {
        let n = h.order();
        let mut label = vec![usize::MAX; n];
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::argument("empty class"));
            }
            for &v in class {
                if v >= n || label[v] != usize::MAX {
                    return Err(Error::argument(format!(
                        "vertex {v} is out of range or in two classes"
                    )));
                }
                label[v] = i;
            }
        }
        if let Some(v) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::argument(format!("vertex {v} is in no class")));
        }
        let p = Self::from_labels(h, &label);
        if !p.is_equitable(h) {
            return Err(Error::argument("partition is not equitable"));
        }
        Ok(p)
    }

    /// Builds the partition from per-vertex labels (any values), renumbering
    /// classes by least vertex. Equitability is not checked.
    fn from_labels(h: &TargetGraph, label: &[usize]) -> Self {
        let n = h.order();
        let mut remap = std::collections::HashMap::new();
        let mut class_of = vec![0; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            let next = remap.len();
            let c = *remap.entry(label[v]).or_insert(next);
            if c == classes.len() {
                classes.push(Vec::new());
            }
            classes[c].push(v);
            class_of[v] = c;
        }
        let k = classes.len();
        let counts = classes
            .iter()
            .map(|class| {
                let mut row = vec![0; k];
                for w in h.neighbors(class[0]) {
                    row[class_of[w]] += 1;
                }
                row
            })
            .collect();
        ClassPartition {
            classes,
            class_of,
            counts,
        }
    }

    /// The coarsest equitable partition refining (loop flag, degree), found
    /// by color refinement. Needs no automorphism search, so it works for
    /// targets of any order.
    pub fn coarsest_equitable(h: &TargetGraph) -> Self {
        let colors = refine_colors(h, &degree_loop_colors(h));
        Self::from_labels(h, &colors)
    }

    /// The orbit partition of a blow-up of `base` by `sizes`, derived from
    /// the automorphisms of `base` that preserve `sizes`: each orbit of that
    /// subgroup becomes the union of its clusters. The result is an
    /// equitable partition of `base.blow_up(sizes)` (the orbits of a
    /// subgroup of its automorphism group), without searching the blow-up.
    pub fn of_blow_up(base: &TargetGraph, sizes: &[usize]) -> Result<Self> {
        if sizes.len() != base.order() || sizes.contains(&0) {
            return Err(Error::argument("blow-up sizes must be positive, one per vertex"));
        }
        let n = base.order();
        let mut orbit: Vec<usize> = (0..n).collect();
        for sigma in automorphisms(base)? {
            if (0..n).any(|v| sizes[sigma[v]] != sizes[v]) {
                continue;
            }
            for v in 0..n {
                union(&mut orbit, v, sigma[v]);
            }
        }
        let owner = cluster_owner(sizes);
        let labels: Vec<usize> = owner.iter().map(|&v| find(&mut orbit, v)).collect();
        let blown = base.blow_up(sizes)?;
        Ok(Self::from_labels(&blown, &labels))
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Neighbor counts between classes in natural (least-vertex) order.
    pub fn counts(&self) -> &[Vec<usize>] {
        &self.counts
    }

    /// Checks every vertex, not just class representatives.
    pub fn is_equitable(&self, h: &TargetGraph) -> bool {
        let k = self.len();
        (0..h.order()).all(|v| {
            let mut row = vec![0; k];
            for w in h.neighbors(v) {
                row[self.class_of[w]] += 1;
            }
            row == self.counts[self.class_of[v]]
        })
    }

    /// Similarity matrix with rows and columns in the given class order
    /// (`ordering[i]` is the class placed at position `i`).
    pub fn similarity_matrix(&self, ordering: &[usize]) -> Result<SimilarityMatrix> {
        check_permutation(ordering, self.len())?;
        let m = ordering
            .iter()
            .map(|&a| ordering.iter().map(|&b| self.counts[a][b]).collect())
            .collect();
        let sizes = ordering.iter().map(|&a| self.classes[a].len()).collect();
        Ok(SimilarityMatrix {
            m,
            sizes,
            ordering: ordering.to_vec(),
        })
    }

    /// Similarity matrix in natural class order.
    pub fn natural_matrix(&self) -> SimilarityMatrix {
        let id: Vec<usize> = (0..self.len()).collect();
        self.similarity_matrix(&id).expect("identity is a permutation")
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Automorphism orbits (automorphic similarity classes) of a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition(ClassPartition);

impl Deref for OrbitPartition {
    type Target = ClassPartition;

    fn deref(&self) -> &ClassPartition {
        &self.0
    }
}

impl OrbitPartition {
    pub fn into_inner(self) -> ClassPartition {
        self.0
    }
}

pub fn orbit_partition(h: &TargetGraph) -> Result<OrbitPartition> {
    orbit_partition_with_limit(h, DEFAULT_AUTOMORPHISM_LIMIT)
}

/// Orbits by pairwise existence search: vertex `v` joins the orbit of an
/// earlier representative `r` (same refined color) iff some automorphism
/// maps `r` to `v`. This avoids enumerating the whole group.
pub fn orbit_partition_with_limit(h: &TargetGraph, limit: usize) -> Result<OrbitPartition> {
    check_order(h, limit)?;
    let n = h.order();
    let search = IsoSearch::new(h, h).expect("a graph is isomorphic to itself");
    let colors = refine_colors(h, &degree_loop_colors(h));
    let mut reps: Vec<usize> = Vec::new();
    let mut label = vec![0; n];
    for v in 0..n {
        let mut joined = None;
        for &r in &reps {
            if colors[r] != colors[v] {
                continue;
            }
            let mut found = false;
            search.run(Some((r, v)), |_| {
                found = true;
                false
            });
            if found {
                joined = Some(r);
                break;
            }
        }
        label[v] = match joined {
            Some(r) => r,
            None => {
                reps.push(v);
                v
            }
        };
    }
    Ok(OrbitPartition(ClassPartition::from_labels(h, &label)))
}

/// An automorphic similarity matrix together with the class sizes `a(H)`
/// and the class ordering it was built under.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityMatrix {
    m: Vec<Vec<usize>>,
    sizes: Vec<usize>,
    ordering: Vec<usize>,
}

impl SimilarityMatrix {
    /// Number of classes.
    pub fn k(&self) -> usize {
        self.m.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.m
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// Common degree of the vertices of class `i`.
    pub fn row_sum(&self, i: usize) -> usize {
        self.m[i].iter().sum()
    }

    pub fn has_increasing_columns(&self) -> bool {
        has_increasing_columns(&self.m)
    }
}

/// True iff for every column `c` and row `i < k - 1`,
/// `sum_{j >= c} m[i][j] <= sum_{j >= c} m[i + 1][j]`.
pub fn has_increasing_columns(m: &[Vec<usize>]) -> bool {
    let tails = |row: &Vec<usize>| -> Vec<usize> {
        let mut acc = 0;
        let mut t: Vec<usize> = row
            .iter()
            .rev()
            .map(|&x| {
                acc += x;
                acc
            })
            .collect();
        t.reverse();
        t
    };
    m.windows(2).all(|pair| {
        let (upper, lower) = (tails(&pair[0]), tails(&pair[1]));
        upper.iter().zip(&lower).all(|(a, b)| a <= b)
    })
}

/// Result of the exhaustive search for a class ordering with increasing
/// columns.
#[derive(Clone, Debug)]
pub struct OrderingSearch {
    /// First passing matrix in lexicographic order of orderings.
    pub witness: Option<SimilarityMatrix>,
    /// Orderings that keep row sums non-decreasing; only these can pass.
    pub candidates: usize,
    /// All `k!` orderings.
    pub total: u128,
}

/// Searches the orbit partition of `h` (default limits).
pub fn find_increasing_ordering(h: &TargetGraph) -> Result<Option<SimilarityMatrix>> {
    let p = orbit_partition(h)?;
    Ok(search_orderings(&p, DEFAULT_ORDERING_LIMIT, Exec::default())?.witness)
}

/// Tries every ordering of `p`'s classes whose row sums are non-decreasing
/// (the `c = 1` case of the property forces this), permuting freely within
/// blocks of equal degree, and keeps the lexicographically first that passes.
pub fn search_orderings(p: &ClassPartition, limit: usize, exec: Exec) -> Result<OrderingSearch> {
    let k = p.len();
    if k > limit {
        return Err(Error::size("class count", k as u128, limit as u128));
    }
    let total = (1..=k as u128).product();
    let degree: Vec<usize> = p.counts().iter().map(|r| r.iter().sum()).collect();
    let mut by_degree: Vec<usize> = (0..k).collect();
    by_degree.sort_by_key(|&c| (degree[c], c));
    let blocks: Vec<Vec<usize>> = by_degree
        .chunk_by(|&a, &b| degree[a] == degree[b])
        .map(<[usize]>::to_vec)
        .collect();
    let candidates = block_orderings(&blocks);
    let witness = exec.find_map_first(&candidates, |ordering| {
        let m = p.similarity_matrix(ordering).expect("candidate is a permutation");
        m.has_increasing_columns().then_some(m)
    });
    Ok(OrderingSearch {
        witness,
        candidates: candidates.len(),
        total,
    })
}

/// All concatenations of one permutation per block, in lexicographic order.
fn block_orderings(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for block in blocks {
        let perms = permutations(block);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut o = prefix.clone();
                    o.extend_from_slice(p);
                    o
                })
            })
            .collect();
    }
    out
}

/// Permutations of `items` in lexicographic order (items must be sorted).
pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = items.to_vec();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

//! Isomorphism search between small looped graphs.
//!
//! Candidates are pruned first by stable color refinement (computed on the
//! disjoint union of both graphs, so colors are comparable), then by
//! adjacency consistency with every vertex already placed.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::TargetGraph;

/// Largest order accepted by [`is_isomorphic`] and the automorphism search.
pub const DEFAULT_ISO_LIMIT: usize = 12;

/// Coarsest equitable refinement of `initial`. Output colors are dense,
/// start at 0, and are numbered by sorted signature, so equal inputs give
/// equal outputs.
pub fn refine_colors(g: &TargetGraph, initial: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut colors = initial.to_vec();
    let mut classes = count_distinct(&colors);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut table: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &signatures {
            table.insert(s, 0);
        }
        for (i, slot) in table.values_mut().enumerate() {
            *slot = i;
        }
        let next: Vec<usize> = signatures.iter().map(|s| table[s]).collect();
        let next_classes = table.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

/// Initial coloring by (loop flag, degree).
pub fn degree_loop_colors(g: &TargetGraph) -> Vec<usize> {
    let keys: Vec<(bool, usize)> = (0..g.order()).map(|v| (g.has_loop(v), g.degree(v))).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("key present"))
        .collect()
}

/// Whether the first `n` colors and the rest form equal multisets.
fn same_multisets(colors: &[usize], n: usize) -> bool {
    let mut a = colors[..n].to_vec();
    let mut b = colors[n..].to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

pub(crate) struct IsoSearch<'a> {
    from: &'a TargetGraph,
    to: &'a TargetGraph,
    joint: TargetGraph,
    colors: Vec<usize>,
}

impl<'a> IsoSearch<'a> {
    /// Returns `None` when the graphs are already distinguished by order,
    /// edge count or refined color classes.
    pub(crate) fn new(from: &'a TargetGraph, to: &'a TargetGraph) -> Option<Self> {
        let n = from.order();
        if n != to.order() || from.edge_count() != to.edge_count() {
            return None;
        }
        let joint = from.disjoint_union(to);
        let colors = refine_colors(&joint, &degree_loop_colors(&joint));
        same_multisets(&colors, n).then_some(IsoSearch {
            from,
            to,
            joint,
            colors,
        })
    }

    /// Visits isomorphisms (as `map[from_vertex] = to_vertex`) extending the
    /// forced pair `start -> image`, if any, until `visit` returns false.
    /// Returns false if the visit was cut short.
    pub(crate) fn run<F>(&self, forced: Option<(usize, usize)>, mut visit: F) -> bool
    where
        F: FnMut(&[usize]) -> bool,
    {
        let n = self.from.order();
        let start = forced.map_or(0, |(u, _)| u);
        let order = placement_order(self.from, start);
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let Some((u, v)) = forced else {
            return self.extend(&self.colors, &order, 0, &mut map, &mut used, &mut visit);
        };
        if self.colors[u] != self.colors[n + v] {
            return true;
        }
        // individualize the forced pair and refine again
        let fresh = self.colors.iter().max().map_or(0, |c| c + 1);
        let mut initial = self.colors.clone();
        initial[u] = fresh;
        initial[n + v] = fresh;
        let colors = refine_colors(&self.joint, &initial);
        if !same_multisets(&colors, n) || colors[u] != colors[n + v] {
            return true;
        }
        map[u] = v;
        used[v] = true;
        self.extend(&colors, &order, 1, &mut map, &mut used, &mut visit)
    }

    fn compatible(&self, colors: &[usize], placed: &[usize], map: &[usize], x: usize, y: usize) -> bool {
        let n = self.from.order();
        if colors[x] != colors[n + y] || self.from.has_loop(x) != self.to.has_loop(y) {
            return false;
        }
        let row_from = self.from.adjacency_row(x);
        let row_to = self.to.adjacency_row(y);
        placed.iter().all(|&p| row_from[p] == row_to[map[p]])
    }

    fn extend<F>(
        &self,
        colors: &[usize],
        order: &[usize],
        depth: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut F,
    ) -> bool
    where
        F: FnMut(&[usize]) -> bool,
    {
        if depth == order.len() {
            return visit(map);
        }
        let x = order[depth];
        for y in 0..self.to.order() {
            if used[y] || !self.compatible(colors, &order[..depth], map, x, y) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            let keep_going = self.extend(colors, order, depth + 1, map, used, visit);
            used[y] = false;
            map[x] = usize::MAX;
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Breadth-first from `start`, then the remaining components in vertex
/// order, so most placed vertices have an already-placed neighbor.
fn placement_order(g: &TargetGraph, start: usize) -> Vec<usize> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in std::iter::once(start).chain(0..n) {
        if root >= n || seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

/// Some isomorphism `from -> to`, if one exists. No size limit is enforced.
pub fn find_isomorphism(from: &TargetGraph, to: &TargetGraph) -> Option<Vec<usize>> {
    let search = IsoSearch::new(from, to)?;
    let mut found = None;
    search.run(None, |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

/// Isomorphism test by exhaustive pruned search, for graphs of at most
/// [`DEFAULT_ISO_LIMIT`] vertices.
pub fn is_isomorphic(a: &TargetGraph, b: &TargetGraph) -> Result<bool> {
    let n = a.order().max(b.order());
    if n > DEFAULT_ISO_LIMIT {
        return Err(Error::size("graph order", n as u128, DEFAULT_ISO_LIMIT as u128));
    }
    Ok(find_isomorphism(a, b).is_some())
}

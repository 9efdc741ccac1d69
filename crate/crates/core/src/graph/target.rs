use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite simple graph in which any vertex may carry a loop.
///
/// Degrees follow the loop-counts-once convention: a loop at `v` adds one to
/// `degree(v)`, the same as any other incident edge. Code that compares
/// against textbook degree formulas (where loops count twice) must account
/// for this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TargetGraph {
    n: usize,
    adj: Vec<bool>,
}

impl TargetGraph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        TargetGraph {
            n,
            adj: vec![false; n * n],
        }
    }

    /// Builds a graph from an edge list; `(v, v)` is a loop.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = TargetGraph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::argument(format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if !g.insert_edge(u, v) {
                return Err(Error::argument(format!("duplicate edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    /// Inserts `u ~ v`, returning false if it was already present.
    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        let n = self.n;
        if self.adj[u * n + v] {
            return false;
        }
        self.adj[u * n + v] = true;
        self.adj[v * n + u] = true;
        true
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    #[inline]
    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    /// Neighbors of `v` in increasing order, including `v` itself when looped.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter()
            .enumerate()
            .filter_map(|(u, &adjacent)| adjacent.then_some(u))
    }

    /// Number of incident edges, a loop counting once.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Every edge once, as `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.n).filter(|&v| self.has_loop(v)).count()
    }

    /// True when every vertex is looped and every pair is adjacent.
    pub fn is_fully_looped_complete(&self) -> bool {
        self.adj.iter().all(|&a| a)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &TargetGraph) -> TargetGraph {
        let offset = self.n;
        let mut g = TargetGraph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.insert_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.insert_edge(u + offset, v + offset);
        }
        g
    }

    /// Tensor (categorical) product. Vertex `(x, y)` is numbered
    /// `x * other.order() + y`.
    pub fn tensor_product(&self, other: &TargetGraph) -> TargetGraph {
        let m = other.n;
        let mut g = TargetGraph::empty(self.n * m);
        for x1 in 0..self.n {
            for x2 in 0..self.n {
                if !self.has_edge(x1, x2) {
                    continue;
                }
                for y1 in 0..m {
                    for y2 in 0..m {
                        if other.has_edge(y1, y2) {
                            g.adj[(x1 * m + y1) * g.n + (x2 * m + y2)] = true;
                        }
                    }
                }
            }
        }
        g
    }

    /// Replaces vertex `v` by a cluster of `sizes[v]` vertices. Clusters of
    /// looped vertices become fully looped cliques, unlooped clusters stay
    /// independent, and each edge becomes a complete bipartite join.
    ///
    /// Cluster `v` occupies the consecutive block starting at
    /// `sizes[..v].sum()`.
    pub fn blow_up(&self, sizes: &[usize]) -> Result<TargetGraph> {
        if sizes.len() != self.n {
            return Err(Error::argument(format!(
                "blow-up needs {} sizes, got {}",
                self.n,
                sizes.len()
            )));
        }
        if let Some(v) = sizes.iter().position(|&s| s == 0) {
            return Err(Error::argument(format!("blow-up size of vertex {v} is zero")));
        }
        let owner = cluster_owner(sizes);
        let total = owner.len();
        let mut g = TargetGraph::empty(total);
        for x in 0..total {
            for y in 0..total {
                g.adj[x * total + y] = self.has_edge(owner[x], owner[y]);
            }
        }
        Ok(g)
    }

    /// Appends `count` new vertices, each looped and adjacent to every
    /// vertex of the result.
    pub fn add_looped_dominating(&self, count: usize) -> TargetGraph {
        let mut g = self.disjoint_union(&TargetGraph::empty(count));
        for d in self.n..g.n {
            for v in 0..g.n {
                g.insert_edge(d, v);
            }
        }
        g
    }

    /// True when `N(v) ⊆ {v}`, so a lone looped vertex also counts.
    pub fn is_isolated(&self, v: usize) -> bool {
        self.neighbors(v).all(|u| u == v)
    }

    /// Drops every isolated vertex, preserving the relative order of the rest.
    pub fn remove_isolated(&self) -> TargetGraph {
        let keep: Vec<usize> = (0..self.n).filter(|&v| !self.is_isolated(v)).collect();
        self.induced_subgraph(&keep)
    }

    /// Subgraph on `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> TargetGraph {
        let k = vertices.len();
        let mut g = TargetGraph::empty(k);
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                g.adj[i * k + j] = self.has_edge(u, v);
            }
        }
        g
    }

    /// Image of the graph under the vertex map `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<TargetGraph> {
        check_permutation(perm, self.n)?;
        let mut g = TargetGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.insert_edge(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// The common degree when all vertices share one, else `None`.
    /// The graph on zero vertices is 0-regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let mut degrees = (0..self.n).map(|v| self.degree(v));
        match degrees.next() {
            None => Some(0),
            Some(d) => degrees.all(|e| e == d).then_some(d),
        }
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub(crate) fn adjacency_row(&self, v: usize) -> &[bool] {
        &self.adj[v * self.n..(v + 1) * self.n]
    }
}

/// `owner[x]` is the base vertex whose cluster contains blow-up vertex `x`.
pub(crate) fn cluster_owner(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(v, &s)| std::iter::repeat_n(v, s))
        .collect()
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::argument(format!(
            "permutation has {} entries, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::argument(format!("{perm:?} is not a permutation of 0..{n}")));
        }
    }
    Ok(())
}

/// Parses the loopy edge-list format: a header line `n m`, then `m` lines
/// `u v` with 0-based endpoints (`u u` is a loop). `#` starts a comment and
/// blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<TargetGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `n m`"))?;
    let (n, m) = parse_pair(header).ok_or_else(|| {
        Error::parse(header_line, format!("malformed header {header:?}, expected `n m`"))
    })?;

    let mut g = TargetGraph::empty(n);
    let mut last_line = header_line;
    for read in 0..m {
        let (line, body) = lines.next().ok_or_else(|| {
            Error::parse(last_line, format!("expected {m} edges, found only {read}"))
        })?;
        last_line = line;
        let (u, v) = parse_pair(body)
            .ok_or_else(|| Error::parse(line, format!("malformed edge {body:?}")))?;
        if u >= n || v >= n {
            return Err(Error::parse(
                line,
                format!("vertex index out of range in {body:?} (n = {n})"),
            ));
        }
        if !g.insert_edge(u, v) {
            return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
        }
    }
    if let Some((line, body)) = lines.next() {
        return Err(Error::parse(
            line,
            format!("unexpected content {body:?} after {m} edges"),
        ));
    }
    Ok(g)
}

fn parse_pair(s: &str) -> Option<(usize, usize)> {
    let mut it = s.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

impl FromStr for TargetGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph(s)
    }
}

/// Writes the loopy edge-list format that [`parse_graph`] reads.
impl fmt::Display for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.edges();
        writeln!(f, "{} {}", self.n, edges.len())?;
        for (u, v) in edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for TargetGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetGraph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> TargetGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        TargetGraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn parses_hard_core_target() {
        let h = parse_graph("2 2\n0 0\n0 1").unwrap();
        assert_eq!(h.order(), 2);
        assert!(h.has_loop(0));
        assert!(!h.has_loop(1));
        assert!(h.has_edge(1, 0));
        assert_eq!(h.degree(0), 2);
        assert_eq!(h.degree(1), 1);
    }

    #[test]
    fn parses_single_vertex_and_triangle() {
        let h = parse_graph("1 0").unwrap();
        assert_eq!((h.order(), h.edge_count()), (1, 0));

        let tri = parse_graph("# unlooped triangle\n3 3\n0 1\n1 2  # side\n\n0 2\n").unwrap();
        assert_eq!(tri, k(3));
        assert_eq!(tri.loop_count(), 0);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let err = parse_graph("3 x").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");

        let err = parse_graph("3 2\n0 1\n1 3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");

        let err = parse_graph("3 2\n0 1\n1 0").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, ref message } if message.contains("duplicate")));

        assert!(matches!(parse_graph("3 2\n0 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("3 1\n0 1\n1 2"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn display_round_trips() {
        let h = parse_graph("4 4\n0 0\n0 1\n2 3\n3 3").unwrap();
        assert_eq!(parse_graph(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn disjoint_union_cases() {
        let lp = TargetGraph::from_edges(1, [(0, 0)]).unwrap();
        let two_loops = lp.disjoint_union(&lp);
        assert_eq!(two_loops.edges(), vec![(0, 0), (1, 1)]);

        let h = parse_graph("2 2\n0 0\n0 1").unwrap();
        assert_eq!(h.disjoint_union(&TargetGraph::empty(0)), h);

        let h13 = k(2).disjoint_union(&TargetGraph::empty(1));
        assert_eq!(h13.order(), 3);
        assert_eq!(h13.edges(), vec![(0, 1)]);
    }

    #[test]
    fn tensor_of_edges_is_two_edges() {
        let p = k(2).tensor_product(&k(2));
        assert_eq!(p.order(), 4);
        // (0,0)-(1,1) and (0,1)-(1,0)
        assert_eq!(p.edges(), vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn tensor_with_looped_vertex_is_identity() {
        let lp = TargetGraph::from_edges(1, [(0, 0)]).unwrap();
        let h = parse_graph("3 3\n0 0\n0 1\n1 2").unwrap();
        assert_eq!(h.tensor_product(&lp), h);
    }

    #[test]
    fn blow_up_of_hard_core_target() {
        // unlooped vertex 0 -> 3 copies, looped vertex 1 -> 2 copies
        let h = parse_graph("2 2\n0 1\n1 1").unwrap();
        let b = h.blow_up(&[3, 2]).unwrap();
        assert_eq!(b.order(), 5);
        // 6 cross edges, the edge inside the looped cluster, and 2 loops
        assert_eq!(b.edge_count(), 9);
        assert_eq!(b.loop_count(), 2);
        assert!(!b.has_edge(0, 1));
        assert!(b.has_edge(3, 4));

        assert_eq!(h.blow_up(&[1, 1]).unwrap(), h);
        assert!(h.blow_up(&[1, 0]).is_err());
        assert!(h.blow_up(&[1]).is_err());

        let lp = TargetGraph::from_edges(1, [(0, 0)]).unwrap();
        assert!(lp.blow_up(&[4]).unwrap().is_fully_looped_complete());
    }

    #[test]
    fn looped_dominating_vertices() {
        let star = TargetGraph::empty(2).add_looped_dominating(1);
        assert_eq!(star.edges(), vec![(0, 2), (1, 2), (2, 2)]);
        let h = k(3);
        assert_eq!(h.add_looped_dominating(0), h);
        let two = k(2).add_looped_dominating(2);
        assert_eq!(two.degree(3), 4);
        assert!(two.has_edge(2, 3));
    }

    #[test]
    fn isolated_vertices() {
        let h13 = k(2).disjoint_union(&TargetGraph::empty(1));
        assert_eq!(h13.remove_isolated(), k(2));
        assert_eq!(k(2).remove_isolated(), k(2));
        let lp = TargetGraph::from_edges(1, [(0, 0)]).unwrap();
        assert_eq!(lp.disjoint_union(&lp).remove_isolated().order(), 0);
    }

    #[test]
    fn regularity_counts_loops_once() {
        assert_eq!(k(3).regular_degree(), Some(2));
        let h8 = TargetGraph::from_edges(2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(h8.regular_degree(), Some(2));
        let ind = parse_graph("2 2\n0 0\n0 1").unwrap();
        assert_eq!(ind.regular_degree(), None);
    }

    #[test]
    fn components_by_least_vertex() {
        let lp = TargetGraph::from_edges(1, [(0, 0)]).unwrap();
        assert_eq!(lp.disjoint_union(&lp).components(), vec![vec![0], vec![1]]);
        assert_eq!(k(3).components(), vec![vec![0, 1, 2]]);
        let h14 = TargetGraph::from_edges(3, [(0, 1), (2, 2)]).unwrap();
        assert_eq!(h14.components(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(TargetGraph::from_edges(2, [(0, 2)]).is_err());
        assert!(TargetGraph::from_edges(2, [(0, 1), (1, 0)]).is_err());
        assert!(TargetGraph::empty(3).relabel(&[0, 0, 1]).is_err());
    }
}

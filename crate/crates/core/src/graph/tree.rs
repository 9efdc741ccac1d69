use std::fmt;

use crate::error::{Error, Result};
use crate::graph::TargetGraph;

/// A tree on `n >= 1` vertices, stored as sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Validates `edges` (exactly `n - 1` of them, no loops, connected).
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        let mut count = 0usize;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!(
                    "edge {u}-{v} has an endpoint outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("loop at {u}")));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidTree(format!("duplicate edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            count += 1;
        }
        if count != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{count} edges on {n} vertices, expected {}",
                n - 1
            )));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let tree = Tree { adj };
        let reached = tree.bfs_order(0).len();
        if reached != n {
            return Err(Error::InvalidTree(format!(
                "disconnected: only {reached} of {n} vertices reachable from 0"
            )));
        }
        Ok(tree)
    }

    /// Interprets a loopless graph as a tree.
    pub fn from_graph(g: &TargetGraph) -> Result<Self> {
        if g.loop_count() > 0 {
            return Err(Error::InvalidTree("trees have no loops".into()));
        }
        Tree::from_edges(g.order(), g.edges())
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.order())
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_graph(&self) -> TargetGraph {
        TargetGraph::from_edges(self.order(), self.edges()).expect("tree edges are valid")
    }

    /// Degree sequence in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn is_path(&self) -> bool {
        self.adj.iter().all(|l| l.len() <= 2)
    }

    pub fn is_star(&self) -> bool {
        let n = self.order();
        n <= 2 || self.adj.iter().any(|l| l.len() == n - 1)
    }

    /// Vertices in breadth-first order from `root`.
    pub fn bfs_order(&self, root: usize) -> Vec<usize> {
        self.rooted(root).1
    }

    /// `parent[v]` for the tree rooted at `root` (`parent[root] == root`),
    /// together with a BFS order from the root.
    pub fn rooted(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        const UNSEEN: usize = usize::MAX;
        let mut parent = vec![UNSEEN; self.order()];
        parent[root] = root;
        let mut order = vec![root];
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &w in &self.adj[u] {
                if parent[w] == UNSEEN {
                    parent[w] = u;
                    order.push(w);
                }
            }
        }
        (parent, order)
    }

    /// Distance from `root` to every vertex.
    pub fn depths(&self, root: usize) -> Vec<usize> {
        let (parent, order) = self.rooted(root);
        let mut depth = vec![0; self.order()];
        for &u in order.iter().skip(1) {
            depth[u] = depth[parent[u]] + 1;
        }
        depth
    }

    /// The 2-coloring classes `(X, Y)` with `|X| <= |Y|`, each sorted.
    pub fn bipartition(&self) -> (Vec<usize>, Vec<usize>) {
        let depth = self.depths(0);
        let (mut x, mut y): (Vec<usize>, Vec<usize>) =
            (0..self.order()).partition(|&v| depth[v] % 2 == 1);
        if x.len() > y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        (x, y)
    }

    /// True when the bipartition sizes differ by at most one.
    pub fn has_balanced_bipartition(&self) -> bool {
        let (x, y) = self.bipartition();
        y.len() - x.len() <= 1
    }

    /// The unique path between `a` and `b`, endpoints included.
    pub fn path_between(&self, a: usize, b: usize) -> Vec<usize> {
        let (parent, _) = self.rooted(a);
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tree")
            .field("n", &self.order())
            .field("edges", &self.edges())
            .finish()
    }
}

//! Free-tree enumeration, canonical codes, and KC moves.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Tree;

/// Largest order accepted by [`all_trees`].
pub const DEFAULT_TREE_LIMIT: usize = 16;
/// Largest order accepted by [`prufer_classes`].
pub const PRUFER_LIMIT: usize = 11;

/// AHU encoding of a tree rooted at its center (the lexicographically
/// smaller rooting for a bicentral tree), as balanced parentheses.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCode(String);

impl TreeCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Rebuilds a tree whose vertices are numbered in preorder of the
    /// encoded rooting (vertex 0 is the root).
    pub fn to_tree(&self) -> Tree {
        let mut edges = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut next = 0;
        for ch in self.0.chars() {
            if ch == '(' {
                if let Some(&p) = stack.last() {
                    edges.push((p, next));
                }
                stack.push(next);
                next += 1;
            } else {
                stack.pop();
            }
        }
        Tree::from_edges(next, edges).expect("codes describe trees")
    }
}

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A tree paired with the code of its isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTree {
    pub tree: Tree,
    pub code: TreeCode,
}

impl CanonicalTree {
    pub fn new(tree: Tree) -> Self {
        let code = canonical_code(&tree);
        CanonicalTree { tree, code }
    }

    /// The representative rebuilt from `code`, so equal codes give equal
    /// labelled trees.
    pub fn from_code(code: TreeCode) -> Self {
        CanonicalTree {
            tree: code.to_tree(),
            code,
        }
    }

    pub fn order(&self) -> usize {
        self.tree.order()
    }
}

/// One or two centers, found by stripping leaves layer by layer.
pub fn centers(tree: &Tree) -> Vec<usize> {
    let n = tree.order();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| tree.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in tree.neighbors(leaf) {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

/// Canonical code, constant on isomorphism classes.
pub fn canonical_code(tree: &Tree) -> TreeCode {
    let best = centers(tree)
        .into_iter()
        .map(|c| rooted_code(tree, c))
        .min()
        .expect("trees have a center");
    TreeCode(best)
}

fn rooted_code(tree: &Tree, root: usize) -> String {
    let (parent, order) = tree.rooted(root);
    let mut codes: Vec<String> = vec![String::new(); tree.order()];
    for &v in order.iter().rev() {
        let mut children: Vec<String> = tree
            .neighbors(v)
            .iter()
            .filter(|&&w| w != parent[v])
            .map(|&w| std::mem::take(&mut codes[w]))
            .collect();
        children.sort_unstable();
        let mut s = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
        s.push('(');
        children.iter().for_each(|c| s.push_str(c));
        s.push(')');
        codes[v] = s;
    }
    std::mem::take(&mut codes[root])
}

pub fn path(n: usize) -> Result<Tree> {
    Tree::from_edges(n, (1..n).map(|v| (v - 1, v)))
}

pub fn star(n: usize) -> Result<Tree> {
    if n < 2 {
        return Err(Error::argument("a star needs at least two vertices"));
    }
    Tree::from_edges(n, (1..n).map(|v| (0, v)))
}

/// One representative per isomorphism class of trees on `n` vertices,
/// sorted by code.
///
/// Rooted trees are generated as level sequences by the successor rule of
/// Beyer and Hedetniemi and collapsed by canonical code.
pub fn all_trees(n: usize) -> Result<Vec<CanonicalTree>> {
    all_trees_with_limit(n, DEFAULT_TREE_LIMIT)
}

pub fn all_trees_with_limit(n: usize, limit: usize) -> Result<Vec<CanonicalTree>> {
    if n == 0 {
        return Err(Error::argument("trees have at least one vertex"));
    }
    if n > limit {
        return Err(Error::size("tree order", n as u128, limit as u128));
    }
    let mut codes = BTreeSet::new();
    let mut levels: Vec<usize> = (0..n).collect();
    loop {
        codes.insert(canonical_code(&tree_from_levels(&levels)));
        if !next_level_sequence(&mut levels) {
            break;
        }
    }
    Ok(codes.into_iter().map(CanonicalTree::from_code).collect())
}

/// Advances a rooted level sequence in place; false after the star.
fn next_level_sequence(levels: &mut [usize]) -> bool {
    let Some(p) = levels.iter().rposition(|&l| l > 1) else {
        return false;
    };
    let q = levels[..p]
        .iter()
        .rposition(|&l| l == levels[p] - 1)
        .expect("a shallower vertex precedes every non-root");
    let gap = p - q;
    for i in p..levels.len() {
        levels[i] = levels[i - gap];
    }
    true
}

fn tree_from_levels(levels: &[usize]) -> Tree {
    let mut stack: Vec<usize> = Vec::new();
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    for (v, &l) in levels.iter().enumerate() {
        stack.truncate(l);
        if let Some(&p) = stack.last() {
            edges.push((p, v));
        }
        stack.push(v);
    }
    Tree::from_edges(levels.len(), edges).expect("level sequences describe trees")
}

/// Isomorphism classes of trees on `n` vertices, found by decoding every
/// Prüfer sequence and collecting distinct codes. Independent of the
/// level-sequence generator; `n^(n-2)` work.
pub fn prufer_classes(n: usize, exec: Exec) -> Result<Vec<TreeCode>> {
    if n == 0 {
        return Err(Error::argument("trees have at least one vertex"));
    }
    if n > PRUFER_LIMIT {
        return Err(Error::size("Prüfer order", n as u128, PRUFER_LIMIT as u128));
    }
    if n <= 2 {
        let t = path(n)?;
        return Ok(vec![canonical_code(&t)]);
    }
    let firsts: Vec<usize> = (0..n).collect();
    let parts = exec.map(&firsts, |&first| {
        let mut seq = vec![0; n - 2];
        seq[0] = first;
        let mut enc = BitEncoder::new(n);
        let mut seen = HashSet::new();
        loop {
            seen.insert(enc.encode_prufer(&seq));
            // odometer over positions 1..n-2
            let mut i = n - 3;
            loop {
                if i == 0 {
                    return seen;
                }
                seq[i] += 1;
                if seq[i] < n {
                    break;
                }
                seq[i] = 0;
                i -= 1;
            }
        }
    });
    let all: BTreeSet<u64> = parts.into_iter().flatten().collect();
    let mut codes: Vec<TreeCode> = all.into_iter().map(|b| bits_to_code(b, n)).collect();
    codes.sort();
    Ok(codes)
}

/// Renders a `2n`-bit code with `(` as 0 and `)` as 1, most significant
/// bit first; numeric order on equal-length codes is string order.
fn bits_to_code(bits: u64, n: usize) -> TreeCode {
    let len = 2 * n;
    TreeCode(
        (0..len)
            .map(|i| if bits >> (len - 1 - i) & 1 == 0 { '(' } else { ')' })
            .collect(),
    )
}

/// Allocation-free AHU encoder for the Prüfer sweep (orders up to 32).
struct BitEncoder {
    n: usize,
    degree: Vec<usize>,
    off: Vec<usize>,
    fill: Vec<usize>,
    nbr: Vec<usize>,
    edges: Vec<(usize, usize)>,
    order: Vec<usize>,
    parent: Vec<usize>,
    code: Vec<(u64, u32)>,
    buf: Vec<(u64, u32)>,
    peel: Vec<usize>,
    layer: Vec<usize>,
    next: Vec<usize>,
}

impl BitEncoder {
    fn new(n: usize) -> Self {
        assert!(n <= 32);
        BitEncoder {
            n,
            degree: vec![0; n],
            off: vec![0; n + 1],
            fill: vec![0; n],
            nbr: vec![0; 2 * n],
            edges: Vec::with_capacity(n),
            order: Vec::with_capacity(n),
            parent: vec![0; n],
            code: vec![(0, 0); n],
            buf: Vec::with_capacity(n),
            peel: vec![0; n],
            layer: Vec::with_capacity(n),
            next: Vec::with_capacity(n),
        }
    }

    fn encode_prufer(&mut self, seq: &[usize]) -> u64 {
        let n = self.n;
        self.degree.iter_mut().for_each(|d| *d = 1);
        for &s in seq {
            self.degree[s] += 1;
        }
        // linear-time decoding
        self.edges.clear();
        let mut ptr = self.degree.iter().position(|&d| d == 1).expect("a leaf exists");
        let mut leaf = ptr;
        for &s in seq {
            self.edges.push((leaf, s));
            self.degree[s] -= 1;
            if s < ptr && self.degree[s] == 1 {
                leaf = s;
            } else {
                ptr += 1;
                while self.degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        self.edges.push((leaf, n - 1));
        self.encode_edges()
    }

    fn encode_edges(&mut self) -> u64 {
        let n = self.n;
        self.degree.iter_mut().for_each(|d| *d = 0);
        for &(u, v) in &self.edges {
            self.degree[u] += 1;
            self.degree[v] += 1;
        }
        self.off[0] = 0;
        for v in 0..n {
            self.off[v + 1] = self.off[v] + self.degree[v];
            self.fill[v] = self.off[v];
        }
        for &(u, v) in &self.edges {
            self.nbr[self.fill[u]] = v;
            self.fill[u] += 1;
            self.nbr[self.fill[v]] = u;
            self.fill[v] += 1;
        }
        let (c0, c1) = self.centers();
        let a = self.rooted(c0);
        match c1 {
            Some(c) => a.min(self.rooted(c)),
            None => a,
        }
    }

    fn centers(&mut self) -> (usize, Option<usize>) {
        let n = self.n;
        self.peel.copy_from_slice(&self.degree);
        self.layer.clear();
        self.layer.extend((0..n).filter(|&v| self.peel[v] == 1));
        let mut remaining = n;
        while remaining > 2 {
            remaining -= self.layer.len();
            self.next.clear();
            for &leaf in &self.layer {
                for &w in &self.nbr[self.off[leaf]..self.off[leaf + 1]] {
                    self.peel[w] -= 1;
                    if self.peel[w] == 1 {
                        self.next.push(w);
                    }
                }
            }
            std::mem::swap(&mut self.layer, &mut self.next);
        }
        match self.layer[..] {
            [a] => (a, None),
            [a, b] => (a.min(b), Some(a.max(b))),
            _ => unreachable!("one or two centers"),
        }
    }

    fn rooted(&mut self, root: usize) -> u64 {
        self.order.clear();
        self.order.push(root);
        self.parent[root] = usize::MAX;
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head];
            head += 1;
            for i in self.off[u]..self.off[u + 1] {
                let w = self.nbr[i];
                if w != self.parent[u] {
                    self.parent[w] = u;
                    self.order.push(w);
                }
            }
        }
        for idx in (0..self.n).rev() {
            let v = self.order[idx];
            self.buf.clear();
            for i in self.off[v]..self.off[v + 1] {
                let w = self.nbr[i];
                if w != self.parent[v] {
                    self.buf.push(self.code[w]);
                }
            }
            self.buf.sort_unstable_by_key(|&(bits, len)| (bits << (64 - len), len));
            let (mut bits, mut len) = (0u64, 1u32);
            for &(b, l) in &self.buf {
                bits = (bits << l) | b;
                len += l;
            }
            self.code[v] = ((bits << 1) | 1, len + 1);
        }
        self.code[root].0
    }
}

/// The pieces of a tree around a bare path between two non-leaves.
#[derive(Clone, Debug)]
pub struct KcSplit {
    /// Component of the left endpoint after deleting the path edges.
    pub left: Tree,
    pub left_root: usize,
    pub right: Tree,
    pub right_root: usize,
    /// Vertices on the path, endpoints included.
    pub path_len: usize,
}

/// Validates `(left, right)` as a KC pair and splits the tree around it.
pub fn kc_split(tree: &Tree, left: usize, right: usize) -> Result<KcSplit> {
    let n = tree.order();
    if left >= n || right >= n {
        return Err(Error::argument(format!("vertex out of range for a tree on {n} vertices")));
    }
    if left == right {
        return Err(Error::argument("the two endpoints must differ"));
    }
    for v in [left, right] {
        if tree.degree(v) < 2 {
            return Err(Error::argument(format!("vertex {v} is a leaf")));
        }
    }
    let route = tree.path_between(left, right);
    if let Some(&v) = route[1..route.len() - 1].iter().find(|&&v| tree.degree(v) != 2) {
        return Err(Error::argument(format!(
            "path {left}-{right} is not bare: interior vertex {v} has degree {}",
            tree.degree(v)
        )));
    }
    let (left_tree, left_root) = component_without(tree, left, route[1]);
    let (right_tree, right_root) = component_without(tree, right, route[route.len() - 2]);
    Ok(KcSplit {
        left: left_tree,
        left_root,
        right: right_tree,
        right_root,
        path_len: route.len(),
    })
}

/// The component of `root` once the edge towards `blocked` is removed,
/// relabelled `0..`, with the new index of `root`.
fn component_without(tree: &Tree, root: usize, blocked: usize) -> (Tree, usize) {
    let mut index = vec![usize::MAX; tree.order()];
    index[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut count = 1;
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        for &w in tree.neighbors(u) {
            if (u == root && w == blocked) || index[w] != usize::MAX {
                continue;
            }
            index[w] = count;
            count += 1;
            edges.push((index[u], index[w]));
            queue.push_back(w);
        }
    }
    (Tree::from_edges(count, edges).expect("a subtree"), 0)
}

/// Glues the left and right endpoints into one vertex and hangs a path of
/// `path_len - 1` new vertices from it. The order is preserved.
pub fn kc_move(tree: &Tree, left: usize, right: usize) -> Result<Tree> {
    Ok(kc_split(tree, left, right)?.glue())
}

impl KcSplit {
    /// The tree after the move. The glued vertex is `left_root`.
    pub fn glue(&self) -> Tree {
        let nl = self.left.order();
        let nr = self.right.order();
        let glued = self.left_root;
        let mut edges = self.left.edges();
        let shift = |v: usize| -> usize {
            match v.cmp(&self.right_root) {
                std::cmp::Ordering::Equal => glued,
                std::cmp::Ordering::Less => nl + v,
                std::cmp::Ordering::Greater => nl + v - 1,
            }
        };
        edges.extend(self.right.edges().into_iter().map(|(u, v)| (shift(u), shift(v))));
        let mut prev = glued;
        let mut next = nl + nr - 1;
        for _ in 1..self.path_len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        Tree::from_edges(next, edges).expect("gluing trees gives a tree")
    }
}

/// Every valid KC pair `(a, b)` with `a < b`.
pub fn valid_kc_pairs(tree: &Tree) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for a in (0..tree.order()).filter(|&v| tree.degree(v) >= 2) {
        for &first in tree.neighbors(a) {
            let (mut prev, mut cur) = (a, first);
            loop {
                if tree.degree(cur) >= 2 && a < cur {
                    pairs.push((a, cur));
                }
                if tree.degree(cur) != 2 {
                    break;
                }
                let step = tree.neighbors(cur).iter().copied().find(|&w| w != prev);
                match step {
                    Some(w) => {
                        prev = cur;
                        cur = w;
                    }
                    None => break,
                }
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

/// Distinct results of all KC moves, sorted by code. Empty exactly for
/// stars.
pub fn kc_successors(tree: &Tree) -> Vec<CanonicalTree> {
    let codes: BTreeSet<TreeCode> = valid_kc_pairs(tree)
        .into_iter()
        .map(|(a, b)| canonical_code(&kc_move(tree, a, b).expect("pair is valid")))
        .collect();
    codes.into_iter().map(CanonicalTree::from_code).collect()
}

/// Codes of every tree reachable from `start` by KC moves, `start` included.
pub fn kc_closure(start: &Tree) -> BTreeSet<TreeCode> {
    let mut seen = BTreeSet::from([canonical_code(start)]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(t) = queue.pop_front() {
        for succ in kc_successors(&t) {
            if seen.insert(succ.code) {
                queue.push_back(succ.tree);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| all_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert_eq!(all_trees(12).unwrap().len(), 551);
        assert!(all_trees(17).is_err());
        assert!(all_trees(0).is_err());
    }

    #[test]
    fn prufer_oracle_agrees() {
        for n in 1..=8 {
            let via_levels: Vec<TreeCode> = all_trees(n).unwrap().into_iter().map(|t| t.code).collect();
            assert_eq!(prufer_classes(n, Exec::default()).unwrap(), via_levels, "n = {n}");
        }
    }

    #[test]
    fn bit_encoder_matches_string_codes() {
        for n in 3..=9 {
            let mut enc = BitEncoder::new(n);
            for t in all_trees(n).unwrap() {
                enc.edges.clear();
                enc.edges.extend(t.tree.edges());
                assert_eq!(bits_to_code(enc.encode_edges(), n), t.code);
            }
        }
    }

    #[test]
    fn codes_round_trip() {
        for t in all_trees(9).unwrap() {
            assert_eq!(canonical_code(&t.tree), t.code);
        }
    }

    #[test]
    fn named_trees() {
        assert_eq!(canonical_code(&path(2).unwrap()), canonical_code(&star(2).unwrap()));
        assert_ne!(canonical_code(&path(4).unwrap()), canonical_code(&star(4).unwrap()));
        assert_eq!(star(5).unwrap().degree_sequence(), vec![4, 1, 1, 1, 1]);
        assert!(star(1).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn path_shapes_share_a_code() {
        let codes: BTreeSet<TreeCode> = crate::automorphy::permutations(&[0, 1, 2, 3])
            .into_iter()
            .map(|p| {
                canonical_code(&Tree::from_edges(4, [(p[0], p[1]), (p[1], p[2]), (p[2], p[3])]).unwrap())
            })
            .collect();
        assert_eq!(codes.len(), 1);
    }

    #[test]
    fn kc_on_p4_gives_s4() {
        let p4 = path(4).unwrap();
        assert_eq!(valid_kc_pairs(&p4), vec![(1, 2)]);
        let moved = kc_move(&p4, 1, 2).unwrap();
        assert!(moved.is_star());
        let succ = kc_successors(&p4);
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].code, canonical_code(&star(4).unwrap()));
    }

    #[test]
    fn kc_argument_errors_name_the_condition() {
        let t = Tree::from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]).unwrap();
        let msg = |r: Result<Tree>| r.unwrap_err().to_string();
        assert!(msg(kc_move(&t, 1, 1)).contains("differ"));
        assert!(msg(kc_move(&t, 0, 3)).contains("leaf"));
        assert!(msg(kc_move(&t, 1, 3)).contains("not bare"));
        assert!(kc_move(&t, 1, 2).is_ok());
    }

    #[test]
    fn brooms_from_paths() {
        let p7 = path(7).unwrap();
        let broom = kc_move(&p7, 2, 3).unwrap();
        assert_eq!(broom.order(), 7);
        assert_eq!(broom.degree_sequence(), vec![3, 2, 2, 2, 1, 1, 1]);
    }

    #[test]
    fn stars_are_maximal() {
        for n in 1..=8 {
            let s = if n == 1 { path(1).unwrap() } else { star(n).unwrap() };
            assert!(valid_kc_pairs(&s).is_empty());
            assert!(kc_successors(&s).is_empty());
        }
    }

    #[test]
    fn closure_from_path_is_everything() {
        for n in 1..=8 {
            let all: BTreeSet<TreeCode> = all_trees(n).unwrap().into_iter().map(|t| t.code).collect();
            assert_eq!(kc_closure(&path(n).unwrap()), all, "n = {n}");
        }
    }

    #[test]
    fn centers_of_small_trees() {
        assert_eq!(centers(&path(5).unwrap()), vec![2]);
        assert_eq!(centers(&path(6).unwrap()), vec![2, 3]);
        assert_eq!(centers(&star(6).unwrap()), vec![0]);
    }
}

//! Named target families.

use crate::error::{Error, Result};
use crate::graph::TargetGraph;

fn positive(what: &str, value: usize) -> Result<()> {
    if value == 0 {
        return Err(Error::argument(format!("{what} must be at least 1")));
    }
    Ok(())
}

/// Vertices `0..=capacity`, with `a ~ b` iff `a + b <= capacity` (so `i`
/// is looped iff `2i <= capacity`).
pub fn make_capacity_graph(capacity: usize) -> Result<TargetGraph> {
    positive("capacity", capacity)?;
    let n = capacity + 1;
    TargetGraph::from_edges(n, (0..n).flat_map(|a| (a..n).filter(move |b| a + b <= capacity).map(move |b| (a, b))))
}

/// Fully looped star with centre 0 and leaves `1..=k`.
pub fn make_widom_rowlinson(k: usize) -> Result<TargetGraph> {
    positive("k", k)?;
    let loops = (0..=k).map(|v| (v, v));
    TargetGraph::from_edges(k + 1, loops.chain((1..=k).map(|v| (0, v))))
}

/// A clique on `b` vertices (`0..b`) where every clique vertex also gets
/// `l` cliques on `a` vertices that meet only at that vertex.
pub fn make_h_abl(a: usize, b: usize, l: usize) -> Result<TargetGraph> {
    positive("a", a)?;
    positive("b", b)?;
    let n = b + b * l * (a - 1);
    let mut edges: Vec<(usize, usize)> = (0..b).flat_map(|u| (u + 1..b).map(move |v| (u, v))).collect();
    let mut next = b;
    for centre in 0..b {
        for _ in 0..l {
            let members: Vec<usize> = std::iter::once(centre).chain(next..next + a - 1).collect();
            next += a - 1;
            for (i, &u) in members.iter().enumerate() {
                edges.extend(members[i + 1..].iter().map(|&v| (u, v)));
            }
        }
    }
    TargetGraph::from_edges(n, edges)
}

/// Folkman graph plus one looped dominating vertex.
///
/// Vertices `0..5` are the original `K_5` vertices and `5..10` their
/// clones (together class A), `10..20` subdivide the ten `K_5` edges in
/// lexicographic order (class B), and `20` dominates everything (class C).
pub fn make_folkman_plus_dominating() -> TargetGraph {
    let mut edges = Vec::new();
    let mut sub = 10;
    for i in 0..5 {
        for j in i + 1..5 {
            edges.extend([(i, sub), (i + 5, sub), (j, sub), (j + 5, sub)]);
            sub += 1;
        }
    }
    TargetGraph::from_edges(20, edges)
        .expect("Folkman edges are valid")
        .add_looped_dominating(1)
}

pub fn make_path(m: usize) -> Result<TargetGraph> {
    positive("path order", m)?;
    TargetGraph::from_edges(m, (1..m).map(|v| (v - 1, v)))
}

/// Path on `m` vertices with a loop at every vertex.
pub fn make_looped_path(m: usize) -> Result<TargetGraph> {
    positive("path order", m)?;
    TargetGraph::from_edges(m, (0..m).map(|v| (v, v)).chain((1..m).map(|v| (v - 1, v))))
}

pub fn make_cycle(m: usize) -> Result<TargetGraph> {
    if m < 3 {
        return Err(Error::argument("a cycle needs at least three vertices"));
    }
    TargetGraph::from_edges(m, (0..m).map(|v| (v, (v + 1) % m)))
}

pub fn make_complete(q: usize) -> Result<TargetGraph> {
    positive("clique order", q)?;
    TargetGraph::from_edges(q, (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v))))
}

pub fn make_looped_complete(q: usize) -> Result<TargetGraph> {
    positive("clique order", q)?;
    TargetGraph::from_edges(q, (0..q).flat_map(|u| (u..q).map(move |v| (u, v))))
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn make_complete_bipartite(a: usize, b: usize) -> Result<TargetGraph> {
    positive("a", a)?;
    positive("b", b)?;
    TargetGraph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphy::orbit_partition_with_limit;
    use crate::graph::{is_isomorphic, parse_graph};

    #[test]
    fn capacity_graphs() {
        let ind = parse_graph("2 2\n0 0\n0 1").unwrap();
        assert!(is_isomorphic(&make_capacity_graph(1).unwrap(), &ind).unwrap());
        let h2 = make_capacity_graph(2).unwrap();
        assert_eq!(h2.edges(), vec![(0, 0), (0, 1), (0, 2), (1, 1)]);
        let h3 = make_capacity_graph(3).unwrap();
        assert_eq!(h3.order(), 4);
        assert!(h3.has_loop(0) && h3.has_loop(1) && !h3.has_loop(2) && !h3.has_loop(3));
        assert!(make_capacity_graph(0).is_err());
    }

    #[test]
    fn widom_rowlinson() {
        let wr1 = make_widom_rowlinson(1).unwrap();
        assert!(wr1.is_fully_looped_complete() && wr1.order() == 2);
        let wr2 = make_widom_rowlinson(2).unwrap();
        assert_eq!(wr2.edges(), vec![(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)]);
    }

    #[test]
    fn h_abl_special_cases() {
        let star = make_h_abl(2, 1, 4).unwrap();
        assert_eq!(star.order(), 5);
        assert_eq!(star.degree(0), 4);
        let fan = make_h_abl(3, 1, 2).unwrap();
        assert_eq!((fan.order(), fan.edge_count()), (5, 6));
        assert!(is_isomorphic(&make_h_abl(3, 4, 0).unwrap(), &make_complete(4).unwrap()).unwrap());
        let double_star = make_h_abl(2, 2, 1).unwrap();
        assert!(is_isomorphic(&double_star, &make_path(4).unwrap()).unwrap());
        assert_eq!(make_h_abl(3, 3, 2).unwrap().order(), 15);
    }

    #[test]
    fn folkman_structure() {
        let h = make_folkman_plus_dominating();
        assert_eq!(h.order(), 21);
        assert_eq!(h.edge_count(), 40 + 21);
        assert!((0..20).all(|v| h.degree(v) == 5));
        let p = orbit_partition_with_limit(&h, 21).unwrap();
        assert_eq!(p.sizes(), vec![10, 10, 1]);
    }

    #[test]
    fn simple_families() {
        assert_eq!(make_looped_path(3).unwrap().loop_count(), 3);
        assert_eq!(make_cycle(5).unwrap().regular_degree(), Some(2));
        assert!(make_cycle(2).is_err());
        assert_eq!(make_looped_complete(3).unwrap().regular_degree(), Some(3));
        assert_eq!(make_complete_bipartite(2, 3).unwrap().edge_count(), 6);
    }
}

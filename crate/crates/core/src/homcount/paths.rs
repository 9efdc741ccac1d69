use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::automorphy::SimilarityMatrix;
use crate::error::{Error, Result};
use crate::graph::Tree;
use crate::homcount::{transfer, HomCounter};
use crate::trees::kc_split;

/// `p[i][j]`: colorings of the path on `t` vertices with one end in class
/// `i` and the other in class `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPairTable {
    pub t: usize,
    pub p: Vec<Vec<BigUint>>,
}

impl PathPairTable {
    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.p[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.p.len();
        (0..k).all(|i| (0..i).all(|j| self.p[i][j] == self.p[j][i]))
    }
}

/// Column `j` of `M^(t-1)` comes from applying the transfer step `t - 1`
/// times to the indicator of class `j`; row `i` is then scaled by `|H^i|`.
pub fn path_pair_counts(t: usize, m: &SimilarityMatrix) -> Result<PathPairTable> {
    if t == 0 {
        return Err(Error::argument("paths have at least one vertex"));
    }
    let k = m.k();
    let mut p = vec![vec![BigUint::zero(); k]; k];
    for j in 0..k {
        let mut col: Vec<BigUint> = (0..k).map(|i| if i == j { BigUint::one() } else { BigUint::zero() }).collect();
        for _ in 1..t {
            col = transfer(m, &col);
        }
        for (i, x) in col.into_iter().enumerate() {
            p[i][j] = x * m.sizes()[i];
        }
    }
    Ok(PathPairTable { t, p })
}

/// Both sides of the KC difference identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KcDecomposition {
    /// `hom(T^KC, H) - hom(T, H)`, counted directly.
    pub lhs: BigInt,
    /// `Σ_{i<j} (l_j - l_i)(r_j - r_i) p^t_{i,j}`.
    pub rhs: BigInt,
}

impl KcDecomposition {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn kc_difference_decomposition(
    tree: &Tree,
    left: usize,
    right: usize,
    counter: &HomCounter,
) -> Result<KcDecomposition> {
    let split = kc_split(tree, left, right)?;
    let moved = split.glue();
    let lhs = BigInt::from(counter.count(&moved)) - BigInt::from(counter.count(tree));

    let l: Vec<BigInt> = counter
        .vector(&split.left, split.left_root)
        .into_entries()
        .into_iter()
        .map(BigInt::from)
        .collect();
    let r: Vec<BigInt> = counter
        .vector(&split.right, split.right_root)
        .into_entries()
        .into_iter()
        .map(BigInt::from)
        .collect();
    let table = path_pair_counts(split.path_len, counter.matrix())?;
    let k = l.len();
    let mut rhs = BigInt::zero();
    for i in 0..k {
        for j in i + 1..k {
            let p = table.get(i, j);
            if p.is_zero() {
                continue;
            }
            rhs += (&l[j] - &l[i]) * (&r[j] - &r[i]) * BigInt::from(p.clone());
        }
    }
    Ok(KcDecomposition { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphy::orbit_partition;
    use crate::graph::{parse_graph, TargetGraph};
    use crate::homcount::hom_count;
    use crate::trees::{all_trees, path, star, valid_kc_pairs};

    /// Colorings of `P_t` whose end vertices land in classes `i` and `j`.
    fn brute_pairs(h: &TargetGraph, class_of: &[usize], k: usize, t: usize) -> Vec<Vec<u64>> {
        let n = h.order();
        let mut out = vec![vec![0u64; k]; k];
        let mut map = vec![0usize; t];
        'outer: loop {
            if map.windows(2).all(|w| h.has_edge(w[0], w[1])) {
                out[class_of[map[0]]][class_of[map[t - 1]]] += 1;
            }
            for i in 0..t {
                map[i] += 1;
                if map[i] < n {
                    continue 'outer;
                }
                map[i] = 0;
            }
            break;
        }
        out
    }

    #[test]
    fn tables_match_brute_force() {
        let targets = [
            "3 3\n0 1\n1 2\n0 2",
            "2 2\n0 0\n0 1",
            "4 3\n0 1\n1 2\n2 3",
            "5 6\n0 0\n0 1\n1 2\n2 3\n3 4\n2 2",
        ];
        for text in targets {
            let h = parse_graph(text).unwrap();
            let p = orbit_partition(&h).unwrap();
            let m = p.natural_matrix();
            let class_of: Vec<usize> = (0..h.order()).map(|v| p.class_of(v)).collect();
            for t in 1..=4 {
                let table = path_pair_counts(t, &m).unwrap();
                assert!(table.is_symmetric());
                let expected = brute_pairs(&h, &class_of, p.len(), t);
                for i in 0..p.len() {
                    for j in 0..p.len() {
                        assert_eq!(table.get(i, j), &BigUint::from(expected[i][j]), "{text} t={t}");
                    }
                }
            }
        }
    }

    #[test]
    fn small_tables() {
        let k3 = parse_graph("3 3\n0 1\n1 2\n0 2").unwrap();
        let m = orbit_partition(&k3).unwrap().natural_matrix();
        assert_eq!(path_pair_counts(1, &m).unwrap().p, vec![vec![BigUint::from(3u32)]]);

        let ind = parse_graph("2 2\n0 0\n0 1").unwrap();
        let p = orbit_partition(&ind).unwrap();
        // unlooped first, looped second; the only colorings of an edge are
        // (looped, looped) and the two orientations of (unlooped, looped)
        let m = p.similarity_matrix(&[1, 0]).unwrap();
        let table = path_pair_counts(2, &m).unwrap();
        let want: Vec<Vec<BigUint>> = [[0u32, 1], [1, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigUint::from(x)).collect())
            .collect();
        assert_eq!(table.p, want);
        assert!(path_pair_counts(0, &m).is_err());
    }

    #[test]
    fn decomposition_on_p4() {
        let ind = parse_graph("2 2\n0 0\n0 1").unwrap();
        let c = HomCounter::new(&ind);
        let d = kc_difference_decomposition(&path(4).unwrap(), 1, 2, &c).unwrap();
        let expected = BigInt::from(hom_count(&star(4).unwrap(), &ind)) - BigInt::from(hom_count(&path(4).unwrap(), &ind));
        assert_eq!(d.lhs, expected);
        assert!(d.holds());
    }

    #[test]
    fn regular_targets_have_zero_difference() {
        let c5 = TargetGraph::from_edges(5, (0..5).map(|v| (v, (v + 1) % 5))).unwrap();
        let c = HomCounter::new(&c5);
        for t in all_trees(7).unwrap() {
            for (a, b) in valid_kc_pairs(&t.tree) {
                let d = kc_difference_decomposition(&t.tree, a, b, &c).unwrap();
                assert!(d.lhs.is_zero() && d.rhs.is_zero());
            }
        }
    }

    #[test]
    fn spider_into_cherry() {
        let spider = Tree::from_edges(6, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)]).unwrap();
        let k12 = TargetGraph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let c = HomCounter::new(&k12);
        for (a, b) in valid_kc_pairs(&spider) {
            assert!(kc_difference_decomposition(&spider, a, b, &c).unwrap().holds());
        }
        assert!(kc_difference_decomposition(&spider, 2, 4, &c).is_err());
    }
}

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::TargetGraph;

/// Default cap on `|V(H)|^|V(G)|` for exhaustive enumeration.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// `hom(G, H)` by trying every vertex map. Loops of `G`, if any, must land
/// on loops of `H`.
pub fn hom_brute_force(g: &TargetGraph, h: &TargetGraph) -> Result<BigUint> {
    hom_brute_force_with_budget(g, h, DEFAULT_BUDGET)
}

pub fn hom_brute_force_with_budget(g: &TargetGraph, h: &TargetGraph, budget: u128) -> Result<BigUint> {
    let ones = vec![BigUint::one(); h.order()];
    weighted_sum(g, h, &ones, budget)
}

/// `Σ_f ∏_v weights[f(v)]` over all homomorphisms `f: G -> H`.
///
/// Maps are built one vertex at a time and a partial map is dropped as
/// soon as an edge to an earlier vertex fails, which visits each
/// homomorphism once and never skips one.
pub(crate) fn weighted_sum(g: &TargetGraph, h: &TargetGraph, weights: &[BigUint], budget: u128) -> Result<BigUint> {
    let (n, k) = (g.order(), h.order());
    let work = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if work > budget {
        return Err(Error::size("brute-force maps", work, budget));
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    let earlier: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).filter(|&u| u <= v).collect()).collect();
    let mut map = vec![0usize; n];
    let mut total = BigUint::zero();
    let mut stack: Vec<BigUint> = Vec::with_capacity(n + 1);
    stack.push(BigUint::one());
    // iterative depth-first search; `map[depth]` is the next image to try
    let mut depth = 0;
    map[0] = 0;
    loop {
        if depth == n {
            total += stack.last().expect("non-empty");
            depth -= 1;
            stack.pop();
            map[depth] += 1;
            continue;
        }
        if map[depth] == k {
            if depth == 0 {
                break;
            }
            depth -= 1;
            stack.pop();
            map[depth] += 1;
            continue;
        }
        let x = map[depth];
        let fits = earlier[depth]
            .iter()
            .all(|&u| if u == depth { h.has_loop(x) } else { h.has_edge(map[u], x) });
        if fits {
            let w = stack.last().expect("non-empty") * &weights[x];
            stack.push(w);
            depth += 1;
            if depth < n {
                map[depth] = 0;
            }
        } else {
            map[depth] += 1;
        }
    }
    Ok(total)
}

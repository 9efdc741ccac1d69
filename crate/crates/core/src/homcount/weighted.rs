use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::automorphy::ClassPartition;
use crate::error::{Error, Result};
use crate::graph::{TargetGraph, Tree};
use crate::homcount::brute::weighted_sum;
use crate::homcount::{hom_brute_force_with_budget, HomCounter, DEFAULT_BUDGET};

/// One strictly positive rational activity per target vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivityVector(Vec<BigRational>);

impl ActivityVector {
    pub fn new(values: Vec<BigRational>) -> Result<Self> {
        if let Some(i) = values.iter().position(|x| !x.is_positive()) {
            return Err(Error::argument(format!("activity {i} is not positive")));
        }
        Ok(ActivityVector(values))
    }

    pub fn ones(n: usize) -> Self {
        ActivityVector(vec![BigRational::one(); n])
    }

    /// Activities `sizes[i] / scale`.
    pub fn from_sizes(sizes: &[usize], scale: usize) -> Result<Self> {
        if scale == 0 {
            return Err(Error::argument("scale must be positive"));
        }
        Self::new(
            sizes
                .iter()
                .map(|&s| BigRational::new(BigInt::from(s), BigInt::from(scale)))
                .collect(),
        )
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Least common denominator and the integer numerators over it.
    fn scaled(&self) -> (BigUint, Vec<BigUint>) {
        let denom = self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let nums = self
            .0
            .iter()
            .map(|x| (x.numer() * (&denom / x.denom())).to_biguint().expect("positive"))
            .collect();
        (denom.to_biguint().expect("positive"), nums)
    }
}

impl FromStr for ActivityVector {
    type Err = Error;

    /// Comma-separated rationals such as `3/2,1,5`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|part| {
                BigRational::from_str(part.trim())
                    .map_err(|_| Error::argument(format!("bad activity {:?}", part.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }
}

impl fmt::Display for ActivityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// `Z^λ(G, H) = Σ_f ∏_v λ_{f(v)}` over homomorphisms `f: G -> H`.
///
/// Trees use a weighted walk over individual target vertices; other graphs
/// fall back to enumeration under the default budget.
pub fn partition_function(g: &TargetGraph, h: &TargetGraph, lambda: &ActivityVector) -> Result<BigRational> {
    partition_function_with_budget(g, h, lambda, DEFAULT_BUDGET)
}

pub fn partition_function_with_budget(
    g: &TargetGraph,
    h: &TargetGraph,
    lambda: &ActivityVector,
    budget: u128,
) -> Result<BigRational> {
    if lambda.len() != h.order() {
        return Err(Error::argument(format!(
            "{} activities for a target on {} vertices",
            lambda.len(),
            h.order()
        )));
    }
    if let Ok(tree) = Tree::from_graph(g) {
        return Ok(weighted_tree_walk(&tree, h, lambda));
    }
    let (denom, nums) = lambda.scaled();
    let total = weighted_sum(g, h, &nums, budget)?;
    let scale = num_traits::pow(denom, g.order());
    Ok(BigRational::new(total.into(), scale.into()))
}

fn weighted_tree_walk(tree: &Tree, h: &TargetGraph, lambda: &ActivityVector) -> BigRational {
    let k = h.order();
    let (parent, order) = tree.rooted(0);
    let mut vecs: Vec<Option<Vec<BigRational>>> = vec![None; tree.order()];
    for &v in order.iter().rev() {
        let mut acc: Vec<BigRational> = lambda.values().to_vec();
        for &c in tree.neighbors(v) {
            if c == parent[v] {
                continue;
            }
            let child = vecs[c].take().expect("children finish first");
            for (x, slot) in acc.iter_mut().enumerate() {
                let s: BigRational = h.neighbors(x).map(|y| &child[y]).sum();
                *slot *= s;
            }
        }
        vecs[v] = Some(acc);
    }
    let root = vecs[0].take().expect("root is visited");
    debug_assert_eq!(root.len(), k);
    root.into_iter().sum()
}

/// Both sides of `scale^|V(G)| · Z^λ(G, H) = hom(G, H^sizes)` with
/// `λ_i = sizes[i] / scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupCheck {
    pub lhs: BigRational,
    pub rhs: BigUint,
}

impl BlowupCheck {
    pub fn holds(&self) -> bool {
        self.lhs == BigRational::from_integer(self.rhs.clone().into())
    }
}

/// The right side counts colorings of `G` into the blow-up itself: by the
/// class walk over the blow-up's structural partition when `G` is a tree,
/// otherwise by enumeration.
pub fn check_blowup_identity(g: &TargetGraph, h: &TargetGraph, sizes: &[usize], scale: usize) -> Result<BlowupCheck> {
    let lambda = ActivityVector::from_sizes(sizes, scale)?;
    let z = partition_function(g, h, &lambda)?;
    let factor = num_traits::pow(BigInt::from(scale), g.order());
    let lhs = z * BigRational::from_integer(factor);
    let blown = h.blow_up(sizes)?;
    let rhs = match Tree::from_graph(g) {
        Ok(tree) => HomCounter::with_partition(ClassPartition::of_blow_up(h, sizes)?).count(&tree),
        Err(_) => hom_brute_force_with_budget(g, &blown, DEFAULT_BUDGET)?,
    };
    Ok(BlowupCheck { lhs, rhs })
}

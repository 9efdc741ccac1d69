//! End-to-end acceptance checks. Run with `cargo test --test acceptance`;
//! prints one PASS/FAIL line per criterion and exits non-zero on failure.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};

use treehom::automorphy::{find_increasing_ordering, orbit_partition_with_limit, search_orderings};
use treehom::extremal::{
    classify_small_targets, make_capacity_graph, make_complete_bipartite, make_cycle, make_folkman_plus_dominating,
    make_h_abl, make_looped_complete, make_looped_path, make_path, make_widom_rowlinson, minimizers_with,
    sidorenko_check, small_targets,
};
use treehom::graph::TargetGraph;
use treehom::homcount::{hom_brute_force, kc_difference_decomposition, partition_function, ActivityVector, HomCounter};
use treehom::trees::{all_trees, kc_closure, path, prufer_classes, valid_kc_pairs, TreeCode};
use treehom::Exec;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_reproduction() -> Outcome {
    let rows = classify_small_targets(9).map_err(|e| e.to_string())?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.matches())
        .map(|r| format!("{}: got {:?}, expected {:?}", r.name, r.label, r.published))
        .collect();
    ensure(rows.len() == 28 && bad.is_empty(), || bad.join("; "))?;
    Ok("28/28 labels match for 2 <= n <= 9".into())
}

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0;
    for target in small_targets() {
        let counter = HomCounter::new(&target.graph);
        for n in 1..=7 {
            for t in all_trees(n).unwrap() {
                let walk = counter.count(&t.tree);
                let brute = hom_brute_force(&t.tree.to_graph(), &target.graph).map_err(|e| e.to_string())?;
                ensure(walk == brute, || format!("{} on {}: {walk} vs {brute}", target.name, t.code))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (tree, target) pairs agree"))
}

fn folkman_example() -> Outcome {
    let h = make_folkman_plus_dominating();
    ensure(h.order() == 21, || format!("order {}", h.order()))?;
    let p = orbit_partition_with_limit(&h, 21).map_err(|e| e.to_string())?;
    ensure(p.sizes() == [10, 10, 1], || format!("orbit sizes {:?}", p.sizes()))?;
    let m = p.similarity_matrix(&[0, 1, 2]).map_err(|e| e.to_string())?;
    let want = vec![vec![0, 4, 1], vec![4, 0, 1], vec![10, 10, 1]];
    ensure(m.rows() == want.as_slice(), || format!("matrix {:?}", m.rows()))?;
    let orderings = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for ordering in orderings {
        let m = p.similarity_matrix(&ordering).unwrap();
        ensure(!m.has_increasing_columns(), || format!("ordering {ordering:?} passes"))?;
    }
    let search = search_orderings(&p, 9, Exec::default()).map_err(|e| e.to_string())?;
    ensure(search.witness.is_none(), || "search found an ordering".into())?;
    Ok(format!("orbits (10,10,1), matrix matches, 6/6 orderings fail ({} degree-sorted candidates)", search.candidates))
}

fn closed_forms() -> Outcome {
    let mut regular: Vec<TargetGraph> = Vec::new();
    for q in 1..=5 {
        regular.push(treehom::extremal::make_complete(q).unwrap()); // degree q-1
    }
    for q in 1..=4 {
        regular.push(make_looped_complete(q).unwrap());
    }
    for m in 3..=7 {
        regular.push(make_cycle(m).unwrap());
    }
    regular.push(make_complete_bipartite(3, 3).unwrap());
    regular.push(make_complete_bipartite(4, 4).unwrap());
    regular.retain(|h| h.regular_degree().is_some_and(|d| d <= 4));
    let mut checks = 0;
    for n in 1..=10 {
        let trees = all_trees(n).unwrap();
        for h in &regular {
            let d = h.regular_degree().unwrap();
            let expected = BigUint::from(h.order()) * num_traits::pow(BigUint::from(d), n - 1);
            let counter = HomCounter::new(h);
            for t in &trees {
                ensure(counter.count(&t.tree) == expected, || format!("regular {h:?} on {}", t.code))?;
                checks += 1;
            }
        }
        for a in 1..=4usize {
            for b in 1..=4usize {
                let counter = HomCounter::new(&make_complete_bipartite(a, b).unwrap());
                for t in &trees {
                    let k = t.tree.bipartition().0.len();
                    let pw = |x: usize, e: usize| num_traits::pow(BigUint::from(x), e);
                    let expected = pw(a, k) * pw(b, n - k) + pw(a, n - k) * pw(b, k);
                    ensure(counter.count(&t.tree) == expected, || format!("K_{{{a},{b}}} on {}", t.code))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} closed-form checks for n <= 10"))
}

fn kc_machinery() -> Outcome {
    let trees: Vec<_> = (1..=9).flat_map(|n| all_trees(n).unwrap()).collect();
    let mut moves = 0;
    let mut certified = Vec::new();
    for target in small_targets() {
        let counter = HomCounter::new(&target.graph);
        let passing = find_increasing_ordering(&target.graph).map_err(|e| e.to_string())?.is_some();
        if passing {
            certified.push(target.name);
        }
        for t in &trees {
            for (a, b) in valid_kc_pairs(&t.tree) {
                let d = kc_difference_decomposition(&t.tree, a, b, &counter).map_err(|e| e.to_string())?;
                ensure(d.holds(), || format!("{} on {} ({a},{b}): {} vs {}", target.name, t.code, d.lhs, d.rhs))?;
                if passing {
                    ensure(d.lhs >= BigInt::ZERO, || format!("{} on {} ({a},{b}) decreased", target.name, t.code))?;
                }
                moves += 1;
            }
        }
    }
    Ok(format!("{moves} moves, identity exact; {} targets with an ordering never decrease", certified.len()))
}

fn strong_hl() -> Outcome {
    let mut targets: Vec<(String, TargetGraph)> = Vec::new();
    for c in 1..=4 {
        targets.push((format!("capacity:{c}"), make_capacity_graph(c).unwrap()));
    }
    for m in 3..=6 {
        targets.push((format!("looped path {m}"), make_looped_path(m).unwrap()));
    }
    for m in [4, 6] {
        targets.push((format!("path {m}"), make_path(m).unwrap()));
    }
    for a in [2, 3] {
        for b in [2, 3] {
            for l in [1, 2] {
                targets.push((format!("H({a},{b},{l})"), make_h_abl(a, b, l).unwrap()));
            }
        }
    }
    for (name, h) in &targets {
        let counter = HomCounter::new(h);
        for n in 4..=9 {
            let r = minimizers_with(&counter, n, Exec::default()).map_err(|e| e.to_string())?;
            ensure(r.path_is_unique_min, || format!("{name} n={n}: minimizers {:?}", r.minimizers))?;
        }
    }
    Ok(format!("{} targets, path unique minimizer for 4 <= n <= 9", targets.len()))
}

fn random_activity(rng: &mut impl Rng, k: usize) -> Vec<BigRational> {
    (0..k)
        .map(|_| BigRational::new(rng.random_range(1..=9).into(), rng.random_range(1..=5).into()))
        .collect()
}

fn blowup_identity() -> Outcome {
    use num_integer::Integer;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let targets = [
        ("hard-core", make_capacity_graph(1).unwrap()),
        ("WR(2)", make_widom_rowlinson(2).unwrap()),
        ("capacity-2", make_capacity_graph(2).unwrap()),
    ];
    let mut checks = 0;
    for (name, h) in &targets {
        for _ in 0..10 {
            let lambda = random_activity(&mut rng, h.order());
            let scale = lambda.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
            let sizes: Vec<usize> = lambda
                .iter()
                .map(|x| usize::try_from((x * BigRational::from_integer(scale.clone())).to_integer()).unwrap())
                .collect();
            let scale_usize = usize::try_from(&scale).unwrap();
            let activities = ActivityVector::new(lambda.clone()).unwrap();
            let blown = h.blow_up(&sizes).unwrap();
            let blown_counter = HomCounter::new(&blown);
            for n in 1..=6 {
                for t in all_trees(n).unwrap() {
                    let z = partition_function(&t.tree.to_graph(), h, &activities).map_err(|e| e.to_string())?;
                    let lhs = z * BigRational::from_integer(num_traits::pow(scale.clone(), n));
                    let rhs = BigRational::from_integer(blown_counter.count(&t.tree).into());
                    ensure(lhs == rhs, || format!("{name} sizes {sizes:?}/{scale_usize} on {}: {lhs} vs {rhs}", t.code))?;
                    let check = treehom::homcount::check_blowup_identity(&t.tree.to_graph(), h, &sizes, scale_usize)
                        .map_err(|e| e.to_string())?;
                    ensure(check.holds(), || format!("{name} structural partition disagrees on {}", t.code))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} exact identity checks"))
}

fn sidorenko_bound() -> Outcome {
    for target in small_targets() {
        let found = sidorenko_check(&target.graph, 9).map_err(|e| e.to_string())?;
        ensure(found.is_none(), || format!("{}: {found:?}", target.name))?;
    }
    let mut checks = 0;
    for target in small_targets() {
        let counter = HomCounter::new(&target.graph);
        for n in 2..=9 {
            let star = counter.count(&treehom::trees::star(n).unwrap());
            for t in all_trees(n).unwrap() {
                let c = counter.count(&t.tree);
                ensure(c <= star, || format!("{} on {}: {c} > {star}", target.name, t.code))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} trees bounded by the star"))
}

fn tree_enumeration() -> Outcome {
    let expected = [1usize, 1, 1, 2, 3, 6, 11, 23, 47, 106];
    for n in 1..=10 {
        let generated: Vec<TreeCode> = all_trees(n).unwrap().into_iter().map(|t| t.code).collect();
        let oracle = prufer_classes(n, Exec::default()).map_err(|e| e.to_string())?;
        ensure(generated == oracle && generated.len() == expected[n - 1], || {
            format!("n={n}: {} generated, {} from Prüfer", generated.len(), oracle.len())
        })?;
    }
    for n in 1..=9 {
        let all: BTreeSet<TreeCode> = all_trees(n).unwrap().into_iter().map(|t| t.code).collect();
        ensure(kc_closure(&path(n).unwrap()) == all, || format!("closure from P_{n} incomplete"))?;
    }
    Ok("counts 1,1,1,2,3,6,11,23,47,106 match Prüfer oracle; KC closure complete for n <= 9".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("table reproduction", table_reproduction),
        ("oracle equivalence", oracle_equivalence),
        ("Folkman example", folkman_example),
        ("closed forms", closed_forms),
        ("KC machinery", kc_machinery),
        ("strong HL at desk scale", strong_hl),
        ("blow-up identity", blowup_identity),
        ("Sidorenko bound", sidorenko_bound),
        ("tree enumeration", tree_enumeration),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

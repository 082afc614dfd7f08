use std::collections::BTreeSet;

use proptest::prelude::*;
use symbreak::automorphism::{search_automorphisms, Engine, SearchConstraints};
use symbreak::FiniteGraph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn brute(f: &FiniteGraph, c: &SearchConstraints) -> BTreeSet<Vec<usize>> {
    permutations(f.len())
        .into_iter()
        .filter(|p| f.edges().iter().all(|&(a, b)| f.has_edge(p[a], p[b])))
        .filter(|p| c.fixed.iter().all(|&i| p[i] == i))
        .filter(|p| c.center.map_or(true, |i| p[i] == i))
        .filter(|p| c.setwise.iter().all(|set| set.iter().all(|i| set.contains(&p[*i]))))
        .collect()
}

fn engine(f: &FiniteGraph, c: &SearchConstraints) -> BTreeSet<Vec<usize>> {
    let r = search_automorphisms(f, c, 100_000).unwrap();
    assert!(r.exhaustive);
    assert!(r.automorphisms.iter().all(|p| p.is_certified()));
    let set: BTreeSet<Vec<usize>> = r.automorphisms.iter().map(|p| p.images().to_vec()).collect();
    assert_eq!(set.len(), r.automorphisms.len(), "duplicates reported");
    set
}

fn graph_strategy() -> impl Strategy<Value = FiniteGraph> {
    (1usize..=7).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e).collect();
            FiniteGraph::with_numbered_vertices(n, &edges)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unconstrained_search_matches_brute_force(f in graph_strategy()) {
        let c = SearchConstraints::none();
        prop_assert_eq!(engine(&f, &c), brute(&f, &c));
    }

    #[test]
    fn constrained_search_matches_brute_force(f in graph_strategy(), mask in 0u32..128, fix in 0usize..7) {
        let n = f.len();
        let set: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let c = SearchConstraints { fixed: vec![fix % n], setwise: vec![set], center: None };
        prop_assert_eq!(engine(&f, &c), brute(&f, &c));
        let c = SearchConstraints { center: Some(fix % n), ..Default::default() };
        prop_assert_eq!(engine(&f, &c), brute(&f, &c));
    }

    #[test]
    fn find_mapping_agrees_with_orbits(f in graph_strategy(), a in 0usize..7, b in 0usize..7) {
        let n = f.len();
        let (a, b) = (a % n, b % n);
        let e = Engine::new(&f, SearchConstraints::none()).unwrap();
        let expected = brute(&f, &SearchConstraints::none()).iter().any(|p| p[a] == b);
        let got = e.find_mapping(a, b).unwrap();
        prop_assert_eq!(got.is_some(), expected);
        if let Some(p) = got {
            prop_assert_eq!(p.apply(a), b);
        }
    }
}

#[test]
fn disjoint_cycles_need_backtracking() {
    // C3 + C4 + C3: refinement alone cannot split the two triangles
    let mut edges = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)];
    edges.extend([(7, 8), (8, 9), (9, 7)]);
    let f = FiniteGraph::with_numbered_vertices(10, &edges);
    let r = search_automorphisms(&f, &SearchConstraints::none(), 10_000).unwrap();
    assert_eq!(r.automorphisms.len(), 6 * 8 * 6 * 2);
}

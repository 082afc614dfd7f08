//! Acceptance run: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails. Tolerances are pinned below.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use symbreak::automorphism::{chain_length_bound, chain_length_oracle, search_automorphisms, Engine, SearchConstraints};
use symbreak::coloring::{
    density_profile, dsc_coloring, dsc_coloring_relaxed, growth_ratio_transfer, monte_carlo_distinguishing,
    motion_growth_coloring, random_coloring, verify_distinguishing, verify_distinguishing_with, Coloring, Metadata,
    RandomSchedule, VerifyOptions,
};
use symbreak::dsc::{check_dsc, growth_profile, twins};
use symbreak::generators::{example_id, example_path_size, parse_example_id, ExampleKind, TREE_ROOT, TWIN_U, TWIN_W};
use symbreak::graph::ball_within;
use symbreak::{FamilySpec, FiniteGraph, Ratio, VertexId};

/// Mean blue count on the line: |observed - exact| <= SIGMAS * sd(mean).
const SIGMAS: f64 = 3.0;
/// Budget for the radius-8 ball of the example graph around v (2,358,718 vertices).
const EXAMPLE_BUDGET: usize = 3_000_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(no: usize, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let o = f();
    let took = t.elapsed();
    let in_time = took < limit;
    let pass = o.pass && in_time;
    println!(
        "criterion {no}: {} ({:.1}s of {}s) {}{}",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs(),
        o.detail,
        if in_time { "" } else { "; over time limit" }
    );
    pass
}

fn v(s: &str) -> VertexId {
    VertexId::new(s)
}

fn c1() -> Outcome {
    let mut rows = Vec::new();
    let mut pass = true;
    for n in 1..=5 {
        let (f, o) = (chain_length_bound(n).unwrap(), chain_length_oracle(n).unwrap());
        pass &= f == o;
        rows.push(format!("l({n})={f}/{o}"));
    }
    Outcome { pass, detail: format!("formula/oracle {}", rows.join(" ")) }
}

fn c2() -> Outcome {
    let g = FamilySpec::ExampleGraph.build().unwrap();
    let vp = example_id(ExampleKind::Q, 1, 0);
    let vv = example_id(ExampleKind::P, 1, 0);
    let b = ball_within(&*g, &vp, 6, EXAMPLE_BUDGET).unwrap();

    let mut size_ok = true;
    let mut sizes = Vec::new();
    for n in 2..=5usize {
        let p = example_path_size(n).unwrap();
        let measured = b.ball_size(n) as u64;
        // (3 + 4/n)|P_n| compared as n * measured == (3n + 4)|P_n|
        let ok = measured * n as u64 == (3 * n as u64 + 4) * p;
        size_ok &= ok;
        sizes.push(format!("n={n}: {measured} vs {}", (3 * n as u64 + 4) * p / n as u64));
    }

    let blue = b.vertices.iter().filter(|x| parse_example_id(x).unwrap().0 == ExampleKind::G1).cloned();
    let l = Coloring::explicit_in_ball(g.clone(), &b, blue).unwrap();
    let curve = density_profile(&l, &vv, 5).unwrap();
    let mut density_ok = true;
    let mut dens = Vec::new();
    for n in 2..=5 {
        let p = curve.points[n];
        let ok = p.blue_count * n <= p.ball_count;
        density_ok &= ok;
        dens.push(format!("{}/{}", p.blue_count, p.ball_count));
    }
    Outcome {
        pass: size_ok && density_ok,
        detail: format!(
            "|B_v'(n)| = (3+4/n)|P_n|: {} [{}]; density at v <= 1/n: {} [{}]",
            if size_ok { "holds" } else { "does not hold" },
            sizes.join(", "),
            if density_ok { "holds" } else { "does not hold" },
            dens.join(", ")
        ),
    }
}

fn c3() -> Outcome {
    let g = FamilySpec::ExampleGraph.build().unwrap();
    let vp = example_id(ExampleKind::Q, 1, 0);
    let b5 = ball_within(&*g, &vp, 5, EXAMPLE_BUDGET).unwrap();
    let f = b5.induced_graph();
    let blue: Vec<usize> = (0..b5.len())
        .filter(|&i| parse_example_id(&b5.vertices[i]).unwrap().0 == ExampleKind::G1)
        .collect();
    let pairs: Vec<(usize, usize)> = blue
        .iter()
        .filter_map(|&i| {
            let (_, n, k) = parse_example_id(&b5.vertices[i]).unwrap();
            b5.index_of(&example_id(ExampleKind::G2, n, k)).map(|j| (i, j))
        })
        .collect();
    let failures: usize = pairs
        .par_iter()
        .filter(|&&(a, c)| {
            // l with the pair made monochrome
            let mut set = blue.clone();
            set.push(c);
            let e = Engine::new(&f, SearchConstraints { setwise: vec![set.clone()], ..Default::default() }).unwrap();
            let found = e.find_mapping(a, c).unwrap();
            let swap_ok = {
                let mut img: Vec<usize> = (0..f.len()).collect();
                img.swap(a, c);
                f.edges().iter().all(|&(x, y)| f.has_edge(img[x], img[y]))
            };
            let twin = twins(&*g, &b5.vertices[a], &b5.vertices[c]).unwrap();
            !(found.is_some_and(|p| p.apply(a) == c && !p.is_identity()) && swap_ok && twin)
        })
        .count();

    let vv = example_id(ExampleKind::P, 1, 0);
    let b8 = ball_within(&*g, &vv, 8, EXAMPLE_BUDGET).unwrap();
    let l_blue = b8.vertices.iter().filter(|x| parse_example_id(x).unwrap().0 == ExampleKind::G1).cloned();
    let l = Coloring::explicit_in_ball(g, &b8, l_blue).unwrap();
    drop(b8);
    let opts = VerifyOptions { budget: Some(EXAMPLE_BUDGET), list_limit: 2, ..VerifyOptions::default() };
    let report = verify_distinguishing_with(&l, 8, 4, &opts).unwrap();
    Outcome {
        pass: !pairs.is_empty() && failures == 0 && report.pass,
        detail: format!(
            "{} gadget pairs in B_v'(5), {} without a swap when monochrome; l at (8, 4): {} on {} vertices",
            pairs.len(),
            failures,
            if report.pass { "PASS" } else { "FAIL" },
            report.ball_size
        ),
    }
}

fn relaxed_grid() -> Coloring {
    let g = FamilySpec::Grid2d.build().unwrap();
    dsc_coloring_relaxed(&g, &v("0,0"), 2, 80, 2).unwrap()
}

fn c4() -> Outcome {
    let tree = FamilySpec::regular_tree(3).build().unwrap();
    let ct = dsc_coloring_relaxed(&tree, &v(TREE_ROOT), 2, 40, 2).unwrap();
    let rt = verify_distinguishing(&ct, 40, 2).unwrap();

    let cg = relaxed_grid();
    let rg = verify_distinguishing(&cg, 80, 2).unwrap();

    let line = FamilySpec::BiinfinitePath.build().unwrap();
    let cl = dsc_coloring(&line, &v("0"), 3, 80).unwrap();
    let curve = density_profile(&cl, &v("0"), 80).unwrap();
    // b <= 3 + sqrt(n/7)  <=>  b <= 3 or 7 (b - 3)^2 <= n
    let bad: Vec<usize> = curve
        .points
        .iter()
        .filter(|p| p.blue_count > 3 && 7 * (p.blue_count - 3) * (p.blue_count - 3) > p.n)
        .map(|p| p.n)
        .collect();
    Outcome {
        pass: rt.pass && rg.pass && bad.is_empty(),
        detail: format!(
            "tree R=40: {} ({} blue, {} route); grid R=80: {} ({} blue); line strict R=80: {} blue, bound violated at {:?}",
            if rt.pass { "PASS" } else { "FAIL" },
            ct.blue_count(),
            rt.route,
            if rg.pass { "PASS" } else { "FAIL" },
            cg.blue_count(),
            cl.blue_count(),
            bad
        ),
    }
}

fn c5() -> Outcome {
    let mut pass = true;
    let mut pairs = 0;
    for (spec, root) in [(FamilySpec::regular_tree(3), TREE_ROOT), (FamilySpec::Grid2d, "0,0")] {
        let g = spec.build().unwrap();
        for r_pairs in 1..=4 {
            let rep = check_dsc(&*g, &v(root), r_pairs, 10).unwrap();
            pass &= rep.all_witnessed() && !rep.pairs.is_empty();
            pairs += rep.pairs.len();
        }
    }
    let g = FamilySpec::TwinLeafPath.build().unwrap();
    let mut twin_fails = 0;
    for radius in 1..=12 {
        let rep = check_dsc(&*g, &v("0"), 1, radius).unwrap();
        let twin = rep.pairs.iter().find(|p| {
            let s = [p.u.as_str(), p.w.as_str()];
            s.contains(&TWIN_U) && s.contains(&TWIN_W)
        });
        if twin.is_some_and(|p| p.failed() && p.proven_failure) {
            twin_fails += 1;
        }
    }
    pass &= twin_fails == 12;
    Outcome {
        pass,
        detail: format!("{pairs} tree/grid pair checks all witnessed; twin pair FAIL at {twin_fails}/12 radii"),
    }
}

fn c6() -> Outcome {
    let g = FamilySpec::TwinLeafPath.build().unwrap();
    let c = motion_growth_coloring(&g, &v("5"), Ratio::new(1, 4).unwrap(), 60).unwrap();
    let Metadata::MotionGrowth(m) = &c.metadata else { unreachable!() };
    let rep = verify_distinguishing(&c, 60, 5).unwrap();
    let descent = m.levels.iter().all(|l| l.strict_descent);
    let beyond = verify_distinguishing(&c, 60, 6).unwrap();
    Outcome {
        pass: rep.pass && m.sphere_discipline && m.anchor_clear && descent && !m.levels.is_empty(),
        detail: format!(
            "w={} d={} levels {:?}; verify (60, 5): {}; sphere discipline {}, strict descent {}; (info: r_inner=6 {} with {} moved)",
            m.w,
            m.d_vw,
            m.levels.iter().map(|l| l.n).collect::<Vec<_>>(),
            if rep.pass { "PASS" } else { "FAIL" },
            m.sphere_discipline,
            descent,
            if beyond.pass { "PASS" } else { "FAIL" },
            beyond.moved_inner.len()
        ),
    }
}

fn c7() -> Outcome {
    let tree = FamilySpec::regular_tree(3).build().unwrap();
    let mc = monte_carlo_distinguishing(&tree, &v(TREE_ROOT), 8, 4, &RandomSchedule::harmonic(20_240_601), 200).unwrap();

    let line = FamilySpec::BiinfinitePath.build().unwrap();
    let p = |n: usize| 1.0 / (n as f64 + 1.0);
    let s = |n: usize| if n == 0 { 1.0 } else { 2.0 };
    let exact: f64 = (0..=1000).map(|n| s(n) * p(n)).sum();
    let var: f64 = (0..=1000).map(|n| s(n) * p(n) * (1.0 - p(n))).sum();
    let seeds = 100;
    let mut counts = Vec::new();
    let mut density = [0.0f64; 3];
    let radii = [250usize, 500, 1000];
    for seed in 0..seeds as u64 {
        let c = random_coloring(&line, &v("0"), 1000, &RandomSchedule::harmonic(seed)).unwrap();
        counts.push(c.blue_count() as f64);
        for (slot, &r) in radii.iter().enumerate() {
            let blue = c.blue.iter().filter(|x| x.as_str().parse::<i64>().unwrap().unsigned_abs() as usize <= r).count();
            density[slot] += blue as f64 / (2 * r + 1) as f64 / seeds as f64;
        }
    }
    let mean = counts.iter().sum::<f64>() / seeds as f64;
    let sd_mean = (var / seeds as f64).sqrt();
    let within = (mean - exact).abs() <= SIGMAS * sd_mean;
    let decreasing = density[0] > density[1] && density[1] > density[2];
    Outcome {
        pass: mc.passes >= 1 && within && decreasing,
        detail: format!(
            "tree (8, 4): {}/200 distinguishing; line R=1000: mean {mean:.3} vs exact {exact:.3} (sd of mean {sd_mean:.3}, tolerance {SIGMAS} sd); mean density {:.5} > {:.5} > {:.5}: {decreasing}",
            mc.passes, density[0], density[1], density[2]
        ),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
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

fn corpus() -> Vec<FiniteGraph> {
    let mut out = Vec::new();
    for n in 1..=7 {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        out.push(FiniteGraph::with_numbered_vertices(n, &e));
    }
    for n in 3..=7 {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        out.push(FiniteGraph::with_numbered_vertices(n, &e));
    }
    for n in 2..=7 {
        let e: Vec<_> = (1..n).map(|i| (0, i)).collect();
        out.push(FiniteGraph::with_numbered_vertices(n, &e));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    while out.len() < 50 {
        let n = rng.gen_range(1..=7);
        let e: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.5)).collect();
        out.push(FiniteGraph::with_numbered_vertices(n, &e));
    }
    out
}

fn c8() -> Outcome {
    let graphs = corpus();
    let mut mismatches = 0;
    let mut searches = 0;
    for f in &graphs {
        let n = f.len();
        let perms = permutations(n);
        let half: Vec<usize> = (0..n).filter(|i| i % 2 == 0).collect();
        let constraints = [
            SearchConstraints::none(),
            SearchConstraints { fixed: vec![0], ..Default::default() },
            SearchConstraints { setwise: vec![half.clone()], ..Default::default() },
            SearchConstraints { center: Some(n - 1), setwise: vec![half], ..Default::default() },
        ];
        for c in &constraints {
            let brute: BTreeSet<Vec<usize>> = perms
                .iter()
                .filter(|p| f.edges().iter().all(|&(a, b)| f.has_edge(p[a], p[b])))
                .filter(|p| c.fixed.iter().all(|&i| p[i] == i) && c.center.is_none_or(|i| p[i] == i))
                .filter(|p| c.setwise.iter().all(|s| s.iter().all(|i| s.contains(&p[*i]))))
                .cloned()
                .collect();
            let r = search_automorphisms(f, c, 100_000).unwrap();
            let got: BTreeSet<Vec<usize>> = r.automorphisms.iter().map(|p| p.images().to_vec()).collect();
            searches += 1;
            if !r.exhaustive || got.len() != r.automorphisms.len() || got != brute {
                mismatches += 1;
            }
        }
    }
    Outcome {
        pass: graphs.len() == 50 && mismatches == 0,
        detail: format!("{} graphs, {searches} searches, {mismatches} differ from brute force", graphs.len()),
    }
}

fn c9() -> Outcome {
    let c = relaxed_grid();
    let g = c.graph().clone();
    let root = v("0,0");
    let curve = density_profile(&c, &root, 80).unwrap();
    let profile = growth_profile(&*g, &root, 80).unwrap();
    let mut xs = Vec::new();
    for x in -3i64..=3 {
        for y in -3i64..=3 {
            let d = x.abs() + y.abs();
            if (1..=3).contains(&d) {
                xs.push(v(&format!("{x},{y}")));
            }
        }
    }
    let mut violations = 0;
    let mut points = 0;
    for x in &xs {
        let r = growth_ratio_transfer(&c, &profile, &curve, x).unwrap();
        violations += r.violations;
        points += r.points.len();
    }
    Outcome {
        pass: violations == 0,
        detail: format!("{} roots x at distance 1..=3, {points} points with n <= R - d, {violations} violations", xs.len()),
    }
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run(1, secs(60), c1),
        run(2, secs(120), c2),
        run(3, secs(300), c3),
        run(4, secs(300), c4),
        run(5, secs(300), c5),
        run(6, secs(120), c6),
        run(7, secs(600), c7),
        run(8, secs(300), c8),
        run(9, secs(300), c9),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &p)| !p).map(|(i, _)| i + 1).collect();
    if failed.is_empty() {
        println!("acceptance: all 9 criteria PASS");
    } else {
        println!("acceptance: FAIL for criteria {failed:?}");
        std::process::exit(1);
    }
}

//! Library results checked against brute-force and closed-form oracles.

mod common;

use btt::approx::{derandomized_sweep, krivelevich, round_deterministic, standard_three_approx};
use btt::exact::{exact_btt, exact_btt_positive_only, exact_cc, ExactOptions, DEFAULT_NODE_BUDGET};
use btt::generators::{
    consistent_cover, gen_figure2, gen_hardness_reduction, gen_integrality_gap, gen_random, gen_vc_reduction,
    Literal, RandomSpec, TwoCnfFormula, Validity, WeightSpec,
};
use btt::graph::{is_feasible_cover, EdgeCover, EdgeId, Sign, SignedGraph};
use btt::lp::{solve_exact, solve_mwu, FractionalCover};
use btt::scalar::{Rational, Scalar};
use common::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn mixed_spec(i: u64) -> RandomSpec {
    match i % 4 {
        0 => RandomSpec::complete(6, 0.5),
        1 => RandomSpec::complete(7, 0.35),
        2 => RandomSpec::sparse(7, 0.6, 0.6),
        _ => RandomSpec::complete(6, 0.5).with_weights(WeightSpec::Int(5)),
    }
}

#[test]
fn triangle_scan_agrees_with_enumeration() {
    for seed in 0..20 {
        let g: SignedGraph = gen_random(&mixed_spec(seed), seed).unwrap();
        let mut lib: Vec<[usize; 3]> =
            g.bad_triangles().iter().map(|t| t.edges.map(|e| e.index())).collect();
        let mut scan = bad_triangles_by_scan(&g);
        lib.sort_unstable();
        scan.sort_unstable();
        assert_eq!(lib, scan, "seed {seed}");
    }
}

#[test]
fn exact_cover_matches_subset_enumeration() {
    for seed in 0..24 {
        let g: SignedGraph = gen_random(&mixed_spec(seed), 100 + seed).unwrap();
        let oracle = brute_force_btt(&g);
        assert_eq!(exact_btt(&g, DEFAULT_NODE_BUDGET).unwrap().value, oracle, "seed {seed}");
    }
}

#[test]
fn exact_clustering_matches_partition_enumeration() {
    for seed in 0..16 {
        let g: SignedGraph = gen_random(&mixed_spec(seed), 200 + seed).unwrap();
        assert_eq!(exact_cc(&g, DEFAULT_NODE_BUDGET).unwrap().value, brute_force_cc(&g), "seed {seed}");
    }
}

/// The gap instance has a closed-form primal/dual pair: `x = 1/2` on every
/// positive edge, and `y = 1/(n-1)` on every triangle.
#[test]
fn integrality_gap_lp_matches_closed_form_certificate() {
    for n in 3..=7usize {
        let g = gen_integrality_gap::<Rational>(n).unwrap();
        let x: Vec<Rational> =
            g.edges().iter().map(|e| if e.sign == Sign::Positive { q(1, 2) } else { q(0, 1) }).collect();
        let tri = bad_triangles_by_scan(&g);
        assert!(tri.iter().all(|t| t.iter().map(|&e| x[e].clone()).sum::<Rational>() >= q(1, 1)));
        let mut load = vec![q(0, 1); g.edge_count()];
        for t in &tri {
            for &e in t {
                load[e] += q(1, n as i64 - 1);
            }
        }
        assert!(load.iter().all(|l| *l <= q(1, 1)));
        let dual: Rational = tri.iter().map(|_| q(1, n as i64 - 1)).sum();
        let primal: Rational = x.iter().cloned().sum();
        assert_eq!(primal, dual);
        assert_eq!(solve_exact(&g).unwrap().value().clone(), primal, "n = {n}");
    }
}

#[test]
fn six_node_lp_is_certified_by_disjoint_triangles() {
    let g: SignedGraph = gen_figure2();
    let tri = bad_triangles_by_scan(&g);
    // Largest set of pairwise edge-disjoint triangles, by subset search.
    let best_packing = (0u32..(1 << tri.len()))
        .filter(|s| {
            let mut used = vec![false; g.edge_count()];
            (0..tri.len()).filter(|i| s >> i & 1 == 1).all(|i| {
                tri[i].iter().all(|&e| !std::mem::replace(&mut used[e], true))
            })
        })
        .map(u32::count_ones)
        .max()
        .unwrap();
    assert_eq!(best_packing, 4);
    assert_eq!(*solve_exact(&g).unwrap().value(), q(4, 1));
    let det = round_deterministic(&g, &solve_exact(&g).unwrap().primal).unwrap();
    assert!(*det.cost() <= q(8, 1));
}

#[test]
fn vertex_cover_reduction_preserves_optimum() {
    let mut mix = Mix(11);
    for i in 0..12 {
        let n = 3 + (i % 4) as usize;
        let edges = random_unsigned(&mut mix, n, 1, 2);
        let g = gen_vc_reduction::<Rational>(n, &edges).unwrap();
        let vc = Rational::from_usize(brute_force_vc(n, &edges));
        assert_eq!(exact_btt(&g, DEFAULT_NODE_BUDGET).unwrap().value, vc, "instance {i}");
        let pos = exact_btt_positive_only(&g, ExactOptions::default()).unwrap();
        assert_eq!(pos.value, vc, "instance {i}");
    }
}

#[test]
fn four_cycle_reduction_positive_only_optimum_is_two() {
    let g = gen_vc_reduction::<Rational>(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
    let r = exact_btt_positive_only(&g, ExactOptions::default()).unwrap();
    assert_eq!(r.value, q(2, 1));
}

fn small_formula() -> (TwoCnfFormula, Vec<[(usize, bool); 2]>) {
    // (x ∨ y), (¬x ∨ y), (x ∨ ¬y), (¬x ∨ ¬y): every assignment misses one clause.
    let raw = vec![[(0, false), (1, false)], [(0, true), (1, false)], [(0, false), (1, true)], [(0, true), (1, true)]];
    let clauses = raw
        .iter()
        .map(|c| c.map(|(v, neg)| if neg { Literal::neg(v as u32) } else { Literal::pos(v as u32) }))
        .collect();
    (TwoCnfFormula::new(2, clauses).unwrap(), raw)
}

#[test]
fn consistent_cover_cost_matches_clause_count() {
    let (f, raw) = small_formula();
    let (g, map) = gen_hardness_reduction::<Rational>(&f, Validity::Relaxed).unwrap();
    for a in 0..4u32 {
        let assignment = [a & 1 == 1, a & 2 == 2];
        let cover = consistent_cover(&g, &map, &assignment).unwrap();
        assert!(is_feasible_cover(&g, &cover).unwrap());
        let unsat = raw.iter().filter(|c| !c.iter().any(|&(v, neg)| assignment[v] != neg)).count();
        let sat = raw.len() - unsat;
        assert_eq!(*cover.cost(), Rational::from_usize(9 * 2 + sat + 2 * unsat));
    }
    assert_eq!(brute_force_md2cnf(2, &raw), 1);
}

#[test]
fn mwu_brackets_the_exact_value() {
    for seed in 0..6 {
        let g: SignedGraph = gen_random(&mixed_spec(seed), 300 + seed).unwrap();
        let exact = solve_exact(&g).unwrap().value().to_f64();
        let approx = solve_mwu(&g, 0.1).unwrap();
        let up = approx.upper.to_f64();
        let low = approx.lower.to_f64();
        assert!(low <= exact + 1e-9 && exact <= up + 1e-9, "seed {seed}: {low} {exact} {up}");
        assert!(up <= 1.1 * exact + 1e-9, "seed {seed}");
    }
}

#[test]
fn approximations_never_beat_the_optimum() {
    for seed in 0..20 {
        let g: SignedGraph = gen_random(&mixed_spec(seed), 400 + seed).unwrap();
        let opt = brute_force_btt(&g);
        let lp = solve_exact(&g).unwrap();
        let x: &FractionalCover<Rational> = &lp.primal;
        for cover in [
            standard_three_approx(&g).unwrap().into_cover(),
            krivelevich(&g).unwrap().into_cover(),
            round_deterministic(&g, x).unwrap().into_cover(),
            derandomized_sweep(&g, x).unwrap().into_cover(),
        ] {
            assert!(is_feasible_cover(&g, &cover).unwrap());
            assert!(*cover.cost() >= opt, "seed {seed}");
        }
        assert!(*lp.value() <= opt);
    }
}

#[test]
fn six_node_bad_cycle_survives_the_cover() {
    let g: SignedGraph = gen_figure2();
    let cover: Vec<EdgeId> = [(0, 2), (0, 4), (1, 5), (3, 5)].iter().map(|&(u, v)| g.edge_between(u, v).unwrap()).collect();
    let cover = EdgeCover::new(&g, cover).unwrap();
    assert!(is_feasible_cover(&g, &cover).unwrap());
    let cycle = [(0, 1), (1, 2), (2, 5), (0, 5)];
    let ids: Vec<EdgeId> = cycle.iter().map(|&(u, v)| g.edge_between(u, v).unwrap()).collect();
    assert!(ids.iter().all(|e| !cover.contains(*e)));
    assert_eq!(ids.iter().filter(|&&e| g.sign(e) == Sign::Negative).count(), 1);
}

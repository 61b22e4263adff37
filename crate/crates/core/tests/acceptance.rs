//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs under `cargo test` (no libtest harness).

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use btt::approx::{derandomized_sweep, krivelevich, round_deterministic, standard_three_approx, ThresholdRounder};
use btt::exact::{exact_btt, exact_btt_positive_only, exact_cc, ExactOptions, DEFAULT_NODE_BUDGET};
use btt::generators::{
    gen_figure2, gen_hardness_reduction, gen_hexagram, gen_integrality_gap, gen_random, gen_vc_reduction, Literal,
    RandomSpec, TwoCnfFormula, Validity, WeightSpec,
};
use btt::graph::{is_feasible_cover, EdgeCover, EdgeId, Sign, SignedGraph};
use btt::lp::{check_fractional_feasibility, greedy_maximal_packing, packing_lower_bound, solve_exact, solve_mwu};
use btt::pivot::{
    charging_report, expected_pivot_cost, matches_printed, pivot_trials, triplet_sums, verify_charging_tables,
    PivotKind, TripletConfig,
};
use btt::rng::stream;
use btt::scalar::{Rational, Scalar};
use common::*;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cover_of(g: &SignedGraph, pairs: &[(u32, u32)]) -> EdgeCover {
    EdgeCover::new(g, pairs.iter().map(|&(u, v)| g.edge_between(u, v).unwrap())).unwrap()
}

/// Mixed random suite: sparse, complete and weighted graphs with n ≤ 9.
fn mixed_instance(i: u64) -> (RandomSpec, u64) {
    let n = 5 + (i % 5) as usize;
    let spec = match i % 4 {
        0 => RandomSpec::complete(n, 0.5),
        1 => RandomSpec::sparse(n, 0.6, 0.6),
        2 => RandomSpec::complete(n, 0.4).with_weights(WeightSpec::Int(6)),
        _ => RandomSpec::sparse(n, 0.7, 0.5).with_weights(WeightSpec::Frac(4)),
    };
    (spec, 10_000 + i)
}

fn c1_charging_tables() -> Outcome {
    let report = verify_charging_tables().map_err(|e| e.to_string())?;
    ensure(report.defined_cells == 31 && report.matched_cells == 31, || {
        format!("{}/{} cells match", report.matched_cells, report.defined_cells)
    })?;
    let named = [
        ("---", "+++", "d", "1.688", q(27, 16)),
        ("---", "+++", "b", "2.812", q(45, 16)),
        ("---", "+++", "ratio", "0.6", q(3, 5)),
        ("+++", "+++", "d", "1.125", q(9, 8)),
        ("+++", "+++", "b", "1.312", q(21, 16)),
        ("+++", "+++", "ratio", "0.8571", q(6, 7)),
    ];
    for (s, m, which, printed, exact) in named {
        let t = triplet_sums(&TripletConfig::parse(s, m).unwrap());
        let v = match which {
            "d" => t.d,
            "b" => t.b,
            _ => t.ratio.unwrap(),
        };
        ensure(v == exact && matches_printed(&v, printed), || format!("{s}/{m} {which} = {v}, printed {printed}"))?;
    }
    let full = charging_report();
    let mut three_halves = 0;
    let mut undefined = 0;
    let mut excluded = 0;
    for c in &full.cells {
        match &c.ratio {
            Some(r) if r == "3/2" => three_halves += 1,
            Some(r) if r == "0/0" => undefined += 1,
            Some(_) => {}
            None => excluded += 1,
        }
    }
    ensure(excluded == 1, || format!("{excluded} excluded cells"))?;
    ensure(full.max_ratio == "3/2", || format!("max ratio {}", full.max_ratio))?;
    Ok(format!(
        "31/31 cells match; {three_halves} cells at 3/2, {undefined} at 0/0, 1 excluded; max ratio {}",
        full.max_ratio
    ))
}

fn c2_integrality_gap() -> Outcome {
    for n in 3..=8usize {
        let g = gen_integrality_gap::<Rational>(n).unwrap();
        let lp = solve_exact(&g).map_err(|e| e.to_string())?;
        let opt = exact_btt(&g, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?.value;
        let (lp, want_lp) = (lp.value().clone(), q(n as i64, 2));
        ensure(lp == want_lp, || format!("n={n}: LP {lp}, expected {want_lp}"))?;
        ensure(opt == q(n as i64 - 1, 1), || format!("n={n}: OPT {opt}"))?;
        ensure(opt.clone() / lp == q(2 * (n as i64 - 1), n as i64), || format!("n={n}: ratio"))?;
    }
    Ok("LP = n/2 and OPT = n-1 for n = 3..8".into())
}

fn c3_six_node_example() -> Outcome {
    let g: SignedGraph = gen_figure2();
    let opt = exact_btt(&g, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?.value;
    let cc = exact_cc(&g, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?.value;
    ensure(opt == q(4, 1) && cc == q(4, 1), || format!("OPT_Δ {opt}, OPT_CC {cc}"))?;
    let first = cover_of(&g, &[(0, 2), (0, 4), (1, 5), (3, 5)]);
    ensure(is_feasible_cover(&g, &first).unwrap(), || "cover {ac,ae,bf,df} infeasible".into())?;
    let negatives = EdgeCover::new(&g, g.negative_edges()).unwrap();
    ensure(is_feasible_cover(&g, &negatives).unwrap() && *negatives.cost() == q(4, 1), || {
        format!("negative-edge cover cost {}", negatives.cost())
    })?;
    let cycle: Vec<EdgeId> = [(0, 1), (1, 2), (2, 5), (0, 5)].iter().map(|&(u, v)| g.edge_between(u, v).unwrap()).collect();
    let survives = cycle.iter().all(|e| !first.contains(*e));
    let negs = cycle.iter().filter(|&&e| g.sign(e) == Sign::Negative).count();
    ensure(survives && negs == 1, || format!("cycle abcf: survives {survives}, {negs} negative edges"))?;
    Ok("OPT_Δ = OPT_CC = 4; both covers feasible; cycle a,b,c,f keeps one negative edge".into())
}

fn c4_two_approx() -> Outcome {
    let count = 240u64;
    let violations: Vec<String> = (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let (spec, seed) = mixed_instance(i);
            let g: SignedGraph = gen_random(&spec, seed).unwrap();
            let lp = solve_exact(&g).unwrap();
            let two_lp = q(2, 1) * lp.value().clone();
            let outs = [
                krivelevich(&g).unwrap(),
                round_deterministic(&g, &lp.primal).unwrap(),
                derandomized_sweep(&g, &lp.primal).unwrap(),
            ];
            for out in &outs {
                if !is_feasible_cover(&g, out.cover()).unwrap() || *out.cost() > two_lp {
                    return Some(format!("instance {i} {}: cost {} vs 2·LP {}", out.algorithm().tag(), out.cost(), two_lp));
                }
            }
            if g.is_unit_weight() {
                let packing = greedy_maximal_packing(&g);
                let three = standard_three_approx(&g).unwrap();
                if *three.cost() > Rational::from_usize(3 * packing.len()) {
                    return Some(format!("instance {i} 3approx: {} > 3·{}", three.cost(), packing.len()));
                }
            }
            None
        })
        .collect();
    ensure(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("{count} instances, 0 violations"))
}

fn c5_randomized_rounding() -> Outcome {
    let trials = 10_000u64;
    let results: Vec<Result<(f64, f64), String>> = (0..20u64)
        .into_par_iter()
        .map(|i| {
            let (spec, seed) = mixed_instance(3 * i + 1);
            let g: SignedGraph = gen_random(&spec, seed).unwrap();
            let lp = solve_exact(&g).unwrap();
            let x = &lp.primal;
            let rounder = ThresholdRounder::new(&g, x).unwrap();
            let m = g.edge_count();
            let mut hits = vec![0u64; m];
            let mut costs = Vec::with_capacity(trials as usize);
            for t in 0..trials {
                let r = ThresholdRounder::<Rational>::draw(&mut stream(seed, t));
                let mut c = 0.0;
                for e in g.edge_ids() {
                    if rounder.includes(e, &r) {
                        hits[e.index()] += 1;
                        c += g.weight(e).to_f64();
                    }
                }
                costs.push(c);
            }
            let (mean, se) = btt::pivot::mean_stderr(&costs);
            let bound: f64 = g
                .edge_ids()
                .map(|e| {
                    let wx = g.weight(e).to_f64() * x.value(e).to_f64();
                    if g.sign(e) == Sign::Negative { wx } else { 2.0 * wx }
                })
                .sum();
            // Float summation slack only; the statistical margin is 3·SE.
            if mean > bound + 3.0 * se + 1e-9 * bound.max(1.0) {
                return Err(format!("instance {i}: mean {mean:.4} > {bound:.4} + 3·{se:.4}"));
            }
            for e in g.edge_ids() {
                let xe = x.value(e).to_f64();
                let p = if g.sign(e) == Sign::Negative { xe } else { (2.0 * xe).min(1.0) };
                let freq = hits[e.index()] as f64 / trials as f64;
                let sigma = (p * (1.0 - p) / trials as f64).sqrt();
                if (freq - p).abs() > 3.0 * sigma + 1e-12 {
                    return Err(format!("instance {i} edge {e}: frequency {freq:.4}, expected {p:.4} (σ {sigma:.4})"));
                }
            }
            Ok((mean, bound))
        })
        .collect();
    let mut worst: f64 = 0.0;
    for r in results {
        let (mean, bound) = r?;
        if bound > 0.0 {
            worst = worst.max(mean / bound);
        }
    }
    Ok(format!("20 instances × {trials} trials; max mean/bound {worst:.4}"))
}

/// Every complete signed graph on `n` nodes paired with every feasible cover.
fn all_covered_instances(n: usize) -> Vec<(SignedGraph, EdgeCover)> {
    let pairs = n * (n - 1) / 2;
    let mut out = Vec::new();
    for signs in 0u32..(1 << pairs) {
        let mut k = 0;
        let mut bits = Vec::new();
        for _ in 0..n {
            for _ in 0..n {
                if k < pairs {
                    bits.push(signs >> k & 1 == 1);
                    k += 1;
                }
            }
        }
        let mut idx = 0;
        let g: SignedGraph = SignedGraph::complete_from_fn(n, |_, _| {
            let s = if bits[idx] { Sign::Positive } else { Sign::Negative };
            idx += 1;
            s
        })
        .unwrap();
        for mask in 0u32..(1 << g.edge_count()) {
            let cover = EdgeCover::new(&g, g.edge_ids().filter(|e| mask >> e.0 & 1 == 1)).unwrap();
            if is_feasible_cover(&g, &cover).unwrap() {
                out.push((g.clone(), cover));
            }
        }
    }
    out
}

fn c6_cover_pivot() -> Outcome {
    let mut instances = Vec::new();
    for n in 3..=4 {
        instances.extend(all_covered_instances(n));
    }
    let exhaustive_small = instances.len();
    for i in 0..40u64 {
        let n = 5 + (i % 2) as usize;
        let g: SignedGraph = gen_random(&RandomSpec::complete(n, 0.3 + 0.1 * (i % 4) as f64), 20_000 + i).unwrap();
        let lp = solve_exact(&g).unwrap();
        instances.push((g.clone(), exact_btt(&g, DEFAULT_NODE_BUDGET).unwrap().cover().unwrap().clone()));
        instances.push((g.clone(), round_deterministic(&g, &lp.primal).unwrap().into_cover()));
        instances.push((g.clone(), standard_three_approx(&g).unwrap().into_cover()));
        instances.push((g.clone(), EdgeCover::new(&g, g.negative_edges()).unwrap()));
    }
    let g: SignedGraph = gen_figure2();
    instances.push((g.clone(), cover_of(&g, &[(0, 2), (0, 4), (1, 5), (3, 5)])));
    instances.push((g.clone(), EdgeCover::new(&g, g.negative_edges()).unwrap()));

    let failures: Vec<String> = instances
        .par_iter()
        .enumerate()
        .filter_map(|(i, (g, f))| {
            let e = expected_pivot_cost(g, Some(f), PivotKind::Cover).unwrap();
            (e > q(3, 2) * f.cost().clone()).then(|| format!("instance {i}: E = {e} > 1.5·{}", f.cost()))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;

    let mut worst_z = f64::NEG_INFINITY;
    for n in [7usize, 8] {
        for i in 0..4u64 {
            let g: SignedGraph = gen_random(&RandomSpec::complete(n, 0.5), 30_000 + 10 * n as u64 + i).unwrap();
            let f = exact_btt(&g, DEFAULT_NODE_BUDGET).unwrap().cover().unwrap().clone();
            let batch = pivot_trials(&g, Some(&f), PivotKind::Cover, 77 + i, 20_000).unwrap();
            let bound = 1.5 * f.cost().to_f64();
            ensure(batch.mean <= bound + 3.0 * batch.stderr, || {
                format!("n={n} #{i}: mean {:.4} > {bound} + 3·{:.4}", batch.mean, batch.stderr)
            })?;
            if batch.stderr > 0.0 {
                worst_z = worst_z.max((batch.mean - bound) / batch.stderr);
            }
        }
    }
    Ok(format!(
        "{} covered instances certified exactly ({exhaustive_small} exhaustive at n ≤ 4); 8 Monte Carlo runs at n ∈ {{7,8}}, max (mean − 1.5|F|)/σ = {worst_z:.2}",
        instances.len()
    ))
}

fn c7_sandwich() -> Outcome {
    let count = 240u64;
    let results: Vec<Result<bool, String>> = (0..count)
        .into_par_iter()
        .map(|i| {
            // Every other instance comes from the mixed suite; the rest are
            // unweighted complete graphs.
            let (spec, seed) = if i % 2 == 0 {
                mixed_instance(i + 500)
            } else {
                (RandomSpec::complete(5 + (i % 5) as usize, 0.2 + 0.1 * (i % 6) as f64), 40_000 + i)
            };
            let g: SignedGraph = gen_random(&spec, seed).unwrap();
            let packing = greedy_maximal_packing(&g);
            let pack = packing_lower_bound(&g, &packing);
            let lp = solve_exact(&g).unwrap().value().clone();
            let opt = exact_btt(&g, DEFAULT_NODE_BUDGET).unwrap().value;
            let cc = exact_cc(&g, DEFAULT_NODE_BUDGET).unwrap().value;
            let fail = |what: &str| Err(format!("instance {i}: {what} (pack {pack}, LP {lp}, OPT_Δ {opt}, OPT_CC {cc})"));
            if !(pack <= lp && lp <= opt && opt <= cc) {
                return fail("packing ≤ LP ≤ OPT_Δ ≤ OPT_CC");
            }
            if g.is_unit_weight() && opt > Rational::from_usize(3 * packing.len()) {
                return fail("OPT_Δ ≤ 3·packing");
            }
            let full = g.is_complete() && g.is_unit_weight();
            if full && cc > q(3, 2) * opt.clone() {
                return fail("OPT_CC ≤ 1.5·OPT_Δ");
            }
            Ok(full)
        })
        .collect();
    let mut complete_unit = 0;
    for r in results {
        complete_unit += usize::from(r?);
    }
    Ok(format!("{count} instances, 0 violations; full chain on {complete_unit} unweighted complete graphs"))
}

fn c8_hexagram() -> Outcome {
    let (g, map) = gen_hexagram::<Rational>();
    let r = exact_btt_positive_only(&g, ExactOptions { max_optima: 64, ..ExactOptions::default() })
        .map_err(|e| e.to_string())?;
    ensure(r.value == q(9, 1), || format!("optimum {}", r.value))?;
    let teeth = |even: bool| {
        let mut ids: Vec<EdgeId> =
            map.hexagrams[0].teeth_pairs(even).iter().map(|&(u, v)| g.edge_between(u, v).unwrap()).collect();
        ids.sort_unstable();
        ids
    };
    let mut found: Vec<Vec<EdgeId>> = r.optima.iter().map(|c| c.edges().to_vec()).collect();
    found.sort();
    let mut want = vec![teeth(true), teeth(false)];
    want.sort();
    ensure(found == want, || format!("{} optima found", found.len()))?;
    Ok(format!("optimum 9; exactly 2 optimal covers (even and odd teeth); {} search nodes", r.nodes_explored))
}

fn c9_mwu() -> Outcome {
    let mut worst_up: f64 = 0.0;
    let mut worst_low: f64 = f64::INFINITY;
    for i in 0..30u64 {
        let (spec, seed) = mixed_instance(7 * i + 3);
        let g: SignedGraph = gen_random(&spec, seed).unwrap();
        let exact = solve_exact(&g).unwrap().value().clone();
        let m = solve_mwu(&g, 0.1).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(check_fractional_feasibility(&g, m.primal.values(), &q(0, 1)).unwrap(), || format!("instance {i}: infeasible primal"))?;
        ensure(*m.primal.objective() <= q(11, 10) * exact.clone(), || {
            format!("instance {i}: primal {} > 1.1·{exact}", m.primal.objective())
        })?;
        ensure(m.lower.clone() * q(11, 10) >= exact, || format!("instance {i}: dual {} < {exact}/1.1", m.lower))?;
        if !btt::scalar::Scalar::to_f64(&exact).eq(&0.0) {
            worst_up = worst_up.max(m.primal.objective().to_f64() / exact.to_f64());
            worst_low = worst_low.min(m.lower.to_f64() / exact.to_f64());
        }
    }
    Ok(format!("30 instances; worst primal/exact {worst_up:.4}, worst dual/exact {worst_low:.4}"))
}

fn formula(vars: u32, clauses: &[[(u32, bool); 2]]) -> (TwoCnfFormula, Vec<[(usize, bool); 2]>) {
    let lits = clauses
        .iter()
        .map(|c| c.map(|(v, neg)| if neg { Literal::neg(v) } else { Literal::pos(v) }))
        .collect();
    let raw = clauses.iter().map(|c| c.map(|(v, neg)| (v as usize, neg))).collect();
    (TwoCnfFormula::new(vars, lits).unwrap(), raw)
}

fn c10_reductions() -> Outcome {
    let mut mix = Mix(2024);
    let mut graphs = 0;
    for i in 0..24 {
        let n = 3 + i % 5;
        let edges = random_unsigned(&mut mix, n, 1 + (i % 3) as u64, 4);
        let g = gen_vc_reduction::<Rational>(n, &edges).unwrap();
        let vc = brute_force_vc(n, &edges);
        let opt = exact_btt(&g, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?.value;
        ensure(opt == Rational::from_usize(vc), || format!("graph {i}: OPT_Δ {opt}, VC {vc}"))?;
        graphs += 1;
    }
    let formulas = [
        formula(1, &[[(0, false), (0, false)], [(0, true), (0, true)]]),
        formula(2, &[[(0, false), (1, false)], [(0, true), (1, false)], [(0, false), (1, true)], [(0, true), (1, true)]]),
        formula(2, &[[(0, false), (1, false)], [(0, true), (1, false)], [(0, false), (1, true)], [(1, true), (1, true)]]),
        formula(2, &[[(0, true), (1, false)], [(1, true), (0, false)], [(0, false), (0, false)], [(1, false), (1, false)]]),
        formula(
            3,
            &[
                [(0, false), (1, false)],
                [(0, true), (2, false)],
                [(1, false), (2, false)],
                [(1, true), (2, true)],
                [(0, false), (2, true)],
                [(0, true), (1, true)],
            ],
        ),
    ];
    let mut detail = Vec::new();
    for (k, (f, raw)) in formulas.iter().enumerate() {
        let n = f.var_count() as usize;
        let (g, _) = gen_hardness_reduction::<Rational>(f, Validity::Relaxed).map_err(|e| e.to_string())?;
        let md = brute_force_md2cnf(n, raw);
        let opt = exact_btt(&g, DEFAULT_NODE_BUDGET).map_err(|e| format!("formula {k}: {e}"))?.value;
        let want = Rational::from_usize(11 * n + md);
        ensure(opt == want, || format!("formula {k}: OPT_Δ {opt}, expected 11·{n} + {md}"))?;
        detail.push(format!("{opt}"));
    }
    Ok(format!("{graphs} vertex-cover graphs; {} formulas with OPT_Δ = 11n' + OPT_MD ({})", formulas.len(), detail.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("1 charging tables", c1_charging_tables, Duration::from_secs(1)),
        ("2 integrality gap", c2_integrality_gap, Duration::from_secs(10)),
        ("3 six-node example", c3_six_node_example, Duration::from_secs(5)),
        ("4 2-approximation certificates", c4_two_approx, Duration::from_secs(300)),
        ("5 randomized rounding expectation", c5_randomized_rounding, Duration::from_secs(300)),
        ("6 cover pivot expectation", c6_cover_pivot, Duration::from_secs(600)),
        ("7 sandwich chain", c7_sandwich, Duration::from_secs(300)),
        ("8 hexagram structure", c8_hexagram, Duration::from_secs(120)),
        ("9 MWU solver", c9_mwu, Duration::from_secs(300)),
        ("10 reduction identities", c10_reductions, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > limit => Err(format!("{detail}; took {took:.1?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} [{took:.2?}]");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 10 criteria failed");
        ExitCode::FAILURE
    }
}

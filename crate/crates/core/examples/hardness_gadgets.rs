//! Builds the vertex cover and 2CNF reductions and solves them exactly.

use btt::exact::{exact_btt, exact_btt_positive_only, ExactOptions, DEFAULT_NODE_BUDGET};
use btt::generators::{gen_hardness_reduction, gen_hexagram, gen_vc_reduction, Literal, TwoCnfFormula, Validity};
use btt::Rational;

fn main() -> btt::Result<()> {
    let cycle = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
    let g = gen_vc_reduction::<Rational>(5, &cycle)?;
    println!("5-cycle: minimum cover {} (vertex cover 3)", exact_btt(&g, DEFAULT_NODE_BUDGET)?.value);

    let (h, _) = gen_hexagram::<Rational>();
    let r = exact_btt_positive_only(&h, ExactOptions { max_optima: 8, ..ExactOptions::default() })?;
    println!("hexagram: optimum {} with {} optimal covers", r.value, r.optima.len());

    let (x, y) = (0, 1);
    let f = TwoCnfFormula::new(
        2,
        vec![
            [Literal::pos(x), Literal::pos(y)],
            [Literal::neg(x), Literal::pos(y)],
            [Literal::pos(x), Literal::neg(y)],
            [Literal::neg(x), Literal::neg(y)],
        ],
    )?;
    let (g, map) = gen_hardness_reduction::<Rational>(&f, Validity::Relaxed)?;
    let (unsat, _) = f.min_unsatisfied()?;
    println!(
        "2CNF reduction: {} nodes, {} hexagrams, OPT {} = 11·2 + {unsat}",
        g.node_count(),
        map.hexagrams.len(),
        exact_btt(&g, DEFAULT_NODE_BUDGET)?.value
    );
    Ok(())
}

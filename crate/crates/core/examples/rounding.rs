//! Runs every rounding algorithm on a weighted random instance and reports
//! cost against the LP lower bound.

use btt::approx::{derandomized_sweep, krivelevich, round_deterministic, round_randomized, standard_three_approx};
use btt::generators::{gen_random, RandomSpec, WeightSpec};
use btt::graph::{is_feasible_cover, SignedGraph};
use btt::lp::solve_exact;

fn main() -> btt::Result<()> {
    let spec = RandomSpec::complete(9, 0.45).with_weights(WeightSpec::Int(5));
    let g: SignedGraph = gen_random(&spec, 3)?;
    let lp = solve_exact(&g)?;
    println!("{} bad triangles, LP value {}", g.bad_triangles().len(), lp.value());
    // The 3-approximation ignores weights, so only the LP-based ones carry a
    // factor-2 guarantee here.
    let outcomes = [
        standard_three_approx(&g)?,
        krivelevich(&g)?,
        round_deterministic(&g, &lp.primal)?,
        round_randomized(&g, &lp.primal, 11)?,
        derandomized_sweep(&g, &lp.primal)?,
    ];
    for out in outcomes {
        let out = out.with_lower_bound(lp.value().clone())?;
        assert!(is_feasible_cover(&g, out.cover())?);
        println!("{:>8}: cost {:>4}  ratio to LP {:.3}", out.algorithm().tag(), out.cost(), out.ratio());
    }
    Ok(())
}

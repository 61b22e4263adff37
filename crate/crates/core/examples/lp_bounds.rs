//! Solves the covering LP exactly and approximately on the integrality-gap
//! family, where the LP sits at n/2 while the best cover costs n - 1.

use btt::exact::{exact_btt, DEFAULT_NODE_BUDGET};
use btt::generators::gen_integrality_gap;
use btt::lp::{greedy_maximal_packing, solve_exact, solve_mwu};
use btt::{Rational, Scalar};

fn main() -> btt::Result<()> {
    for n in 3..=8 {
        let g = gen_integrality_gap::<Rational>(n)?;
        let lp = solve_exact(&g)?;
        let mwu = solve_mwu(&g, 0.1)?;
        let opt = exact_btt(&g, DEFAULT_NODE_BUDGET)?.value;
        println!(
            "n={n}: packing {} <= LP {} (MWU bracket [{:.3}, {:.3}]) <= OPT {}",
            greedy_maximal_packing(&g).len(),
            lp.value(),
            mwu.lower.to_f64(),
            mwu.upper.to_f64(),
            opt
        );
    }
    Ok(())
}

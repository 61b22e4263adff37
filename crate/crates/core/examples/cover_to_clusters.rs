//! Turns an optimal cover into a clustering with the cover-guided pivot and
//! compares the exact expectation with the 3/2 bound.

use btt::exact::{exact_btt, exact_cc, DEFAULT_NODE_BUDGET};
use btt::generators::gen_figure2;
use btt::graph::SignedGraph;
use btt::pivot::{cover_pivot, expected_pivot_cost, pivot_trials, PivotKind};

fn main() -> btt::Result<()> {
    let g: SignedGraph = gen_figure2();
    let best = exact_btt(&g, DEFAULT_NODE_BUDGET)?;
    let f = best.cover().expect("exact_btt returns a cover");
    println!("optimal cover cost {}, optimal clustering cost {}", f.cost(), exact_cc(&g, DEFAULT_NODE_BUDGET)?.value);

    let run = cover_pivot(&g, f, 1)?;
    println!("one run: clusters {:?}, disagreements {}", run.clustering.clusters(), run.disagreements);

    let exact = expected_pivot_cost(&g, Some(f), PivotKind::Cover)?;
    let batch = pivot_trials(&g, Some(f), PivotKind::Cover, 1, 20_000)?;
    println!("expected disagreements {exact} (sampled {:.3} ± {:.3}), bound {}", batch.mean, batch.stderr, 1.5 * 4.0);
    Ok(())
}

//! Compares OPT_Δ with OPT_CC over random complete graphs.

use btt::exact::{ratio_survey, SurveySpec, DEFAULT_NODE_BUDGET};
use btt::generators::RandomSpec;

fn main() -> btt::Result<()> {
    let spec = SurveySpec { generator: RandomSpec::complete(8, 0.5), count: 100, seed: 7, node_budget: DEFAULT_NODE_BUDGET };
    let report = ratio_survey(&spec);
    let strict = report.rows.iter().filter(|r| r.opt_delta != r.opt_cc).count();
    println!("{} instances, {} with OPT_CC > OPT_Δ, {} violations", report.rows.len(), strict, report.violations);
    for (id, edges) in report.counterexamples.iter().take(1) {
        println!("instance {id}:\n{edges}");
    }
    Ok(())
}

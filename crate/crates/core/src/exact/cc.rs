use super::{BoundEvent, ExactOptions, ExactResult, Witness, MAX_CC_NODES};
use crate::error::{BttError, Result};
use super::exact_btt;
use crate::graph::{cc_cost, Clustering, Sign, SignedGraph};
use crate::lp::{greedy_maximal_packing, packing_lower_bound};
use crate::pivot::standard_pivot;
use crate::scalar::Scalar;

pub fn exact_cc<W: Scalar>(g: &SignedGraph<W>, node_budget: u64) -> Result<ExactResult<W>> {
    exact_cc_with(g, ExactOptions::budget(node_budget))
}

/// Minimum-disagreement clustering by restricted-growth-string enumeration.
/// Node `v` joins one of the clusters opened by nodes `0..v` or opens a new
/// one; a branch is cut once its settled cost plus, for every later node,
/// the cheapest placement against the settled nodes reaches the incumbent.
pub fn exact_cc_with<W: Scalar>(g: &SignedGraph<W>, opts: ExactOptions) -> Result<ExactResult<W>> {
    let n = g.node_count();
    if n > MAX_CC_NODES {
        return Err(BttError::Capacity(format!("exact clustering handles at most {MAX_CC_NODES} nodes, got {n}")));
    }
    let mut apart = vec![vec![W::zero(); n]; n];
    let mut together = vec![vec![W::zero(); n]; n];
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            match g.pair(u as u32, v as u32) {
                Some((Sign::Positive, w)) => apart[u][v] = w,
                Some((Sign::Negative, w)) => together[u][v] = w,
                None => {}
            }
        }
    }

    let mut best: Option<(W, Clustering)> = None;
    let mut starts = vec![Clustering::single(n), Clustering::singletons(n)];
    for seed in 0..8 {
        starts.push(standard_pivot(g, seed)?.clustering);
    }
    for c in starts {
        let cost = cc_cost(g, &c)?;
        if best.as_ref().map_or(true, |(b, _)| cost < *b) {
            best = Some((cost, c));
        }
    }
    let (best, best_clustering) = best.expect("at least one start");
    // Every clustering's disagreements cover all bad triangles.
    let global_lb = if opts.root_lp {
        exact_btt(g, opts.node_budget)?.value
    } else {
        packing_lower_bound(g, &greedy_maximal_packing(g))
    };

    let mut search = Search {
        n,
        apart,
        together,
        labels: vec![0; n],
        best_labels: best_clustering.labels().to_vec(),
        best,
        global_lb,
        nodes: 0,
        budget: opts.node_budget,
        trail: Vec::new(),
    };
    search.trail.push(BoundEvent { nodes: 0, lower: search.global_lb.clone(), upper: search.best.clone() });
    if n > 0 && !search.done() {
        search.dfs(1, 1, W::zero())?;
    }

    let clustering = Clustering::from_labels(&search.best_labels);
    let value = search.best.clone();
    if cc_cost(g, &clustering)? != value {
        return Err(BttError::Internal("clustering search produced an inconsistent witness".into()));
    }
    search.trail.push(BoundEvent { nodes: search.nodes, lower: value.clone(), upper: value.clone() });
    Ok(ExactResult {
        value,
        witness: Witness::Clustering(clustering),
        nodes_explored: search.nodes,
        trail: search.trail,
        optima: Vec::new(),
    })
}

struct Search<W> {
    n: usize,
    /// Cost paid if the pair ends in different clusters.
    apart: Vec<Vec<W>>,
    /// Cost paid if the pair shares a cluster.
    together: Vec<Vec<W>>,
    labels: Vec<u32>,
    best_labels: Vec<u32>,
    best: W,
    /// Lower bound on the optimum; the search stops once it is met.
    global_lb: W,
    nodes: u64,
    budget: u64,
    trail: Vec<BoundEvent<W>>,
}

impl<W: Scalar> Search<W> {
    /// Cost against settled nodes `0..v` of putting node `w` into each of
    /// the `k` open clusters; index `k` opens a new cluster.
    fn placement_costs(&self, w: usize, v: usize, k: usize) -> Vec<W> {
        let mut apart_total = W::zero();
        let mut inside = vec![W::zero(); k + 1];
        let mut apart_inside = vec![W::zero(); k + 1];
        for u in 0..v {
            let l = self.labels[u] as usize;
            apart_total = apart_total + self.apart[u][w].clone();
            inside[l] = inside[l].clone() + self.together[u][w].clone();
            apart_inside[l] = apart_inside[l].clone() + self.apart[u][w].clone();
        }
        (0..=k).map(|c| inside[c].clone() + apart_total.clone() - apart_inside[c].clone()).collect()
    }

    /// Each unsettled node pays at least its cheapest placement against the
    /// settled nodes.
    fn suffix_bound(&self, v: usize, k: usize) -> W {
        (v + 1..self.n)
            .map(|w| self.placement_costs(w, v, k).into_iter().reduce(W::min_of).unwrap_or_else(W::zero))
            .sum()
    }

    fn done(&self) -> bool {
        self.best <= self.global_lb
    }

    /// Nodes `0..v` are labelled with `k` clusters at settled cost `cost`.
    fn dfs(&mut self, v: usize, k: usize, cost: W) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BttError::BudgetExhausted {
                budget: self.budget,
                lower: self.global_lb.to_text(),
                upper: self.best.to_text(),
            });
        }
        if v == self.n {
            if cost < self.best {
                self.best = cost;
                self.best_labels = self.labels.clone();
                self.trail.push(BoundEvent { nodes: self.nodes, lower: self.global_lb.clone(), upper: self.best.clone() });
            }
            return Ok(());
        }
        let costs = self.placement_costs(v, v, k);
        let here = costs.iter().cloned().reduce(W::min_of).unwrap_or_else(W::zero);
        if cost.clone() + here + self.suffix_bound(v, k) >= self.best {
            return Ok(());
        }
        for (c, delta) in costs.into_iter().enumerate() {
            self.labels[v] = c as u32;
            let next_k = if c == k { k + 1 } else { k };
            self.dfs(v + 1, next_k, cost.clone() + delta)?;
            if self.done() {
                break;
            }
        }
        Ok(())
    }
}

use super::{BoundEvent, ExactOptions, ExactResult, Witness};
use crate::error::{BttError, Result};
use crate::graph::{covers_all, EdgeCover, EdgeId, SignedGraph, TriangleIndex};
use crate::lp::solve_exact;
use crate::scalar::{ceil_rational, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum State {
    Free,
    In,
    Out,
}

pub fn exact_btt<W: Scalar>(g: &SignedGraph<W>, node_budget: u64) -> Result<ExactResult<W>> {
    exact_btt_with(g, ExactOptions::budget(node_budget), false)
}

/// Minimum cover using positive edges only. With `max_optima > 1` every
/// optimum (up to the cap) is listed in `optima`.
pub fn exact_btt_positive_only<W: Scalar>(g: &SignedGraph<W>, opts: ExactOptions) -> Result<ExactResult<W>> {
    exact_btt_with(g, opts, true)
}

pub fn exact_btt_with<W: Scalar>(g: &SignedGraph<W>, opts: ExactOptions, positive_only: bool) -> Result<ExactResult<W>> {
    let index = TriangleIndex::new(g);
    let m = g.edge_count();
    let mut state = vec![State::Free; m];
    if positive_only {
        for e in g.negative_edges() {
            state[e.index()] = State::Out;
        }
    }
    let enumerate = opts.max_optima > 1;
    for e in 0..m {
        if index.by_edge[e].is_empty() {
            state[e] = State::Out;
        }
    }
    if !enumerate {
        exclude_dominated(g, &index, &mut state);
    }

    let weight: Vec<W> = g.edges().iter().map(|e| e.weight.clone()).collect();
    let (best, best_mask) = greedy_incumbent(&index, &weight, &state)?;

    let mut search = Search {
        index: &index,
        weight,
        covered_by: vec![0; index.len()],
        state,
        cost: W::zero(),
        best,
        best_mask,
        global_lb: W::zero(),
        nodes: 0,
        budget: opts.node_budget,
        enumerate,
        cap: opts.max_optima.max(1),
        optima: Vec::new(),
        trail: Vec::new(),
    };
    let (root_extra, _) = search.packing_bound();
    search.global_lb = root_extra;
    if opts.root_lp && !index.is_empty() && !positive_only {
        let lp = solve_exact(g)?.value().to_rational();
        let lp = if g.edges().iter().all(|e| e.weight.to_rational().is_integer()) { Rational::from_integer(ceil_rational(&lp)) } else { lp };
        let lp = W::from_rational(&lp);
        if lp > search.global_lb {
            search.global_lb = lp;
        }
    }
    search.trail.push(BoundEvent { nodes: 0, lower: search.global_lb.clone(), upper: search.best.clone() });
    search.dfs()?;

    let value = search.best.clone();
    let cover = mask_cover(g, &search.best_mask)?;
    if !covers_all(&index.triangles, &search.best_mask) || *cover.cost() != value {
        return Err(BttError::Internal("branch and bound produced an invalid witness".into()));
    }
    search.trail.push(BoundEvent { nodes: search.nodes, lower: value.clone(), upper: value.clone() });
    let optima = if enumerate {
        search.optima.iter().map(|mask| mask_cover(g, mask)).collect::<Result<Vec<_>>>()?
    } else {
        vec![cover.clone()]
    };
    Ok(ExactResult { value, witness: Witness::Cover(cover), nodes_explored: search.nodes, trail: search.trail, optima })
}

fn mask_cover<W: Scalar>(g: &SignedGraph<W>, mask: &[bool]) -> Result<EdgeCover<W>> {
    EdgeCover::new(g, (0..mask.len()).filter(|&e| mask[e]).map(|e| EdgeId(e as u32)))
}

/// Excludes every edge whose triangles all contain some other allowed edge
/// that is no heavier. Ties between identical triangle sets keep the lowest
/// id, so some optimum always survives.
fn exclude_dominated<W: Scalar>(g: &SignedGraph<W>, index: &TriangleIndex, state: &mut [State]) {
    let m = g.edge_count();
    let mut excluded = vec![false; m];
    for e in 0..m {
        if state[e] != State::Free {
            continue;
        }
        let tris = &index.by_edge[e];
        let first = &index.triangles[tris[0] as usize];
        for f in first.edges {
            let fi = f.index();
            if fi == e || state[fi] != State::Free {
                continue;
            }
            let (we, wf) = (g.weight(EdgeId(e as u32)), g.weight(f));
            if wf > we {
                continue;
            }
            if !tris.iter().all(|&t| index.triangles[t as usize].contains(f)) {
                continue;
            }
            let same_set = index.by_edge[fi].len() == tris.len();
            if wf < we || !same_set || fi < e {
                excluded[e] = true;
                break;
            }
        }
    }
    for e in 0..m {
        if excluded[e] {
            state[e] = State::Out;
        }
    }
}

/// Repeatedly takes the allowed edge covering the most uncovered triangles
/// per unit weight.
fn greedy_incumbent<W: Scalar>(index: &TriangleIndex, weight: &[W], state: &[State]) -> Result<(W, Vec<bool>)> {
    let m = weight.len();
    let mut mask = vec![false; m];
    let mut covered = vec![false; index.len()];
    let mut remaining = index.len();
    let mut cost = W::zero();
    while remaining > 0 {
        let mut best: Option<(usize, usize)> = None;
        for e in 0..m {
            if state[e] == State::Out || mask[e] {
                continue;
            }
            let hits = index.by_edge[e].iter().filter(|&&t| !covered[t as usize]).count();
            if hits == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((b, bh)) => W::from_usize(hits) * weight[b].clone() > W::from_usize(bh) * weight[e].clone(),
            };
            if better {
                best = Some((e, hits));
            }
        }
        let (e, hits) = best.ok_or_else(|| BttError::input("some bad triangle has no allowed edge"))?;
        mask[e] = true;
        cost = cost + weight[e].clone();
        for &t in &index.by_edge[e] {
            covered[t as usize] = true;
        }
        remaining -= hits;
    }
    Ok((cost, mask))
}

struct Search<'a, W> {
    index: &'a TriangleIndex,
    weight: Vec<W>,
    /// Number of chosen edges in each triangle.
    covered_by: Vec<u8>,
    state: Vec<State>,
    cost: W,
    best: W,
    best_mask: Vec<bool>,
    global_lb: W,
    nodes: u64,
    budget: u64,
    enumerate: bool,
    cap: usize,
    optima: Vec<Vec<bool>>,
    trail: Vec<BoundEvent<W>>,
}

impl<W: Scalar> Search<'_, W> {
    /// Greedy packing of uncovered triangles over free edges, each worth its
    /// cheapest free edge, and the branching triangle (fewest free edges,
    /// then lowest edge id). `None` means nothing is left to cover; a branch
    /// triangle with no free edge makes the node infeasible.
    fn packing_bound(&self) -> (W, Option<(usize, usize)>) {
        let mut used = vec![false; self.weight.len()];
        let mut lb = W::zero();
        let mut branch: Option<(usize, usize, EdgeId)> = None;
        for (i, t) in self.index.triangles.iter().enumerate() {
            if self.covered_by[i] > 0 {
                continue;
            }
            let free: Vec<EdgeId> = t.edges.iter().copied().filter(|e| self.state[e.index()] == State::Free).collect();
            let lowest = free.iter().copied().min().unwrap_or(EdgeId(u32::MAX));
            let key = (free.len(), lowest);
            if branch.map_or(true, |(_, k, low)| key < (k, low)) {
                branch = Some((i, free.len(), lowest));
            }
            if free.is_empty() {
                return (lb, Some((i, 0)));
            }
            if free.iter().all(|e| !used[e.index()]) {
                for e in &free {
                    used[e.index()] = true;
                }
                lb = lb + free.iter().map(|e| self.weight[e.index()].clone()).reduce(W::min_of).unwrap_or_else(W::zero);
            }
        }
        (lb, branch.map(|(i, k, _)| (i, k)))
    }

    fn done(&self) -> bool {
        !self.enumerate && self.best <= self.global_lb
    }

    fn set(&mut self, e: usize, chosen: bool) {
        let delta: i8 = if chosen { 1 } else { -1 };
        for &t in &self.index.by_edge[e] {
            self.covered_by[t as usize] = (self.covered_by[t as usize] as i8 + delta) as u8;
        }
        if chosen {
            self.cost = self.cost.clone() + self.weight[e].clone();
            self.state[e] = State::In;
        } else {
            self.cost = self.cost.clone() - self.weight[e].clone();
            self.state[e] = State::Free;
        }
    }

    fn dfs(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(BttError::BudgetExhausted {
                budget: self.budget,
                lower: self.global_lb.to_text(),
                upper: self.best.to_text(),
            });
        }
        let (extra, branch) = self.packing_bound();
        let Some((t, options)) = branch else {
            let mask: Vec<bool> = self.state.iter().map(|s| *s == State::In).collect();
            if self.cost < self.best {
                self.best = self.cost.clone();
                self.best_mask = mask.clone();
                self.optima = vec![mask];
                self.trail.push(BoundEvent { nodes: self.nodes, lower: self.global_lb.clone(), upper: self.best.clone() });
            } else if self.enumerate && self.cost == self.best && self.optima.len() < self.cap {
                self.optima.push(mask);
            }
            return Ok(());
        };
        if options == 0 {
            return Ok(());
        }
        let bound = self.cost.clone() + extra;
        if bound > self.best || (!self.enumerate && bound >= self.best) {
            return Ok(());
        }
        let mut free: Vec<EdgeId> =
            self.index.triangles[t].edges.iter().copied().filter(|e| self.state[e.index()] == State::Free).collect();
        free.sort_unstable();
        let mut excluded = Vec::new();
        for e in free {
            let ei = e.index();
            self.set(ei, true);
            let r = self.dfs();
            self.set(ei, false);
            r?;
            if self.done() {
                break;
            }
            self.state[ei] = State::Out;
            excluded.push(ei);
        }
        for ei in excluded {
            self.state[ei] = State::Free;
        }
        Ok(())
    }
}

//! Brute-force oracles shared by the integration and acceptance tests. They
//! use nothing from the library beyond the graph container and its
//! evaluators.
#![allow(dead_code)]

use btt::graph::{cc_cost, Clustering, EdgeId, NodeId, Sign, SignedGraph};
use btt::scalar::{Rational, Scalar};

/// Bad triangles as edge-id triples, found by scanning every node triple.
pub fn bad_triangles_by_scan(g: &SignedGraph) -> Vec<[usize; 3]> {
    let n = g.node_count() as NodeId;
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let es = [g.edge_between(a, b), g.edge_between(a, c), g.edge_between(b, c)];
                if let [Some(x), Some(y), Some(z)] = es {
                    let neg = [x, y, z].iter().filter(|&&e| g.sign(e) == Sign::Negative).count();
                    if neg == 1 {
                        out.push([x.index(), y.index(), z.index()]);
                    }
                }
            }
        }
    }
    out
}

/// Minimum cover weight by enumerating subsets of the edges that lie in a
/// bad triangle.
pub fn brute_force_btt(g: &SignedGraph) -> Rational {
    let tri = bad_triangles_by_scan(g);
    let mut relevant: Vec<usize> = tri.iter().flatten().copied().collect();
    relevant.sort_unstable();
    relevant.dedup();
    assert!(relevant.len() <= 24, "too many edges for subset enumeration");
    let mut best: Option<Rational> = None;
    for bits in 0u32..(1u32 << relevant.len()) {
        let mut chosen = vec![false; g.edge_count()];
        for (k, &e) in relevant.iter().enumerate() {
            chosen[e] = bits >> k & 1 == 1;
        }
        if tri.iter().all(|t| t.iter().any(|&e| chosen[e])) {
            let w: Rational = (0..g.edge_count()).filter(|&e| chosen[e]).map(|e| g.weight(EdgeId(e as u32)).clone()).sum();
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
    }
    best.unwrap_or_else(|| Rational::from_ratio(0, 1))
}

/// Every set partition of `0..n` as a restricted growth string.
pub fn all_partitions(n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            let k = p.iter().max().map_or(0, |m| m + 1);
            for c in 0..=k {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

pub fn brute_force_cc(g: &SignedGraph) -> Rational {
    all_partitions(g.node_count())
        .iter()
        .map(|p| cc_cost(g, &Clustering::from_labels(p)).unwrap())
        .reduce(Rational::min_of)
        .unwrap()
}

/// Minimum vertex cover size by subset enumeration.
pub fn brute_force_vc(n: usize, edges: &[(NodeId, NodeId)]) -> usize {
    (0u32..(1 << n))
        .filter(|s| edges.iter().all(|&(u, v)| s >> u & 1 == 1 || s >> v & 1 == 1))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// Minimum number of unsatisfied clauses over all assignments.
pub fn brute_force_md2cnf(vars: usize, clauses: &[[(usize, bool); 2]]) -> usize {
    (0u32..(1 << vars))
        .map(|a| {
            clauses
                .iter()
                .filter(|c| !c.iter().any(|&(v, neg)| (a >> v & 1 == 1) != neg))
                .count()
        })
        .min()
        .unwrap()
}

/// Small deterministic generator for test instances (SplitMix64).
pub struct Mix(pub u64);

impl Mix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, k: u64) -> u64 {
        self.next() % k
    }
}

/// Random unsigned graph on `n` nodes with each pair present with
/// probability `num/den`.
pub fn random_unsigned(mix: &mut Mix, n: usize, num: u64, den: u64) -> Vec<(NodeId, NodeId)> {
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in u + 1..n as NodeId {
            if mix.below(den) < num {
                edges.push((u, v));
            }
        }
    }
    edges
}

//! Signed graphs, bad triangles, covers and clusterings.

use std::fmt;

use crate::error::{BttError, Result};
use crate::scalar::{Rational, Scalar};

pub type NodeId = u32;

/// Complete graphs up to this many nodes store every pair explicitly.
pub const EXPLICIT_COMPLETE_LIMIT: usize = 2_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// How node pairs without a stored edge are interpreted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Completeness {
    /// Missing pairs carry no edge.
    Partial,
    /// Every pair is stored.
    Complete,
    /// Complete graph; unstored pairs are negative with unit weight. Only
    /// positive edges and negative edges closing a positive wedge are stored.
    ImplicitNegative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Edge<W> {
    pub u: NodeId,
    pub v: NodeId,
    pub sign: Sign,
    pub weight: W,
}

#[derive(Clone, Debug)]
pub struct SignedGraph<W = Rational> {
    n: usize,
    edges: Vec<Edge<W>>,
    /// Per node, `(neighbor, edge)` sorted by neighbor.
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
    completeness: Completeness,
}

impl<W: Scalar> PartialEq for SignedGraph<W> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.completeness == other.completeness && self.edges == other.edges
    }
}

/// Accumulates edges and validates them into a [`SignedGraph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder<W> {
    n: usize,
    edges: Vec<Edge<W>>,
    fill_negative: bool,
    explicit_limit: usize,
}

impl<W: Scalar> GraphBuilder<W> {
    pub fn new(n: usize) -> Self {
        GraphBuilder { n, edges: Vec::new(), fill_negative: false, explicit_limit: EXPLICIT_COMPLETE_LIMIT }
    }

    /// Treat every pair not added as a negative unit-weight edge.
    pub fn complete(mut self) -> Self {
        self.fill_negative = true;
        self
    }

    /// Node bound above which completed graphs use the implicit representation.
    pub fn explicit_limit(mut self, limit: usize) -> Self {
        self.explicit_limit = limit;
        self
    }

    pub fn edge(mut self, u: NodeId, v: NodeId, sign: Sign) -> Self {
        self.push(u, v, sign, W::one());
        self
    }

    pub fn weighted_edge(mut self, u: NodeId, v: NodeId, sign: Sign, weight: W) -> Self {
        self.push(u, v, sign, weight);
        self
    }

    pub fn push(&mut self, u: NodeId, v: NodeId, sign: Sign, weight: W) {
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        self.edges.push(Edge { u, v, sign, weight });
    }

    pub fn build(self) -> Result<SignedGraph<W>> {
        let GraphBuilder { n, mut edges, fill_negative, explicit_limit } = self;
        for e in &edges {
            if e.u == e.v {
                return Err(BttError::input(format!("self-loop at node {}", e.u)));
            }
            if e.v as usize >= n {
                return Err(BttError::input(format!("edge ({}, {}) references node outside 0..{}", e.u, e.v, n)));
            }
            if e.weight < W::zero() {
                return Err(BttError::input(format!("negative weight on edge ({}, {})", e.u, e.v)));
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = edges.windows(2).find(|w| w[0].u == w[1].u && w[0].v == w[1].v) {
            return Err(BttError::input(format!("duplicate edge ({}, {})", w[0].u, w[0].v)));
        }
        if !fill_negative {
            return Ok(SignedGraph::assemble(n, edges, Completeness::Partial));
        }
        if n <= explicit_limit {
            let mut all = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            let mut it = edges.into_iter().peekable();
            for u in 0..n as NodeId {
                for v in u + 1..n as NodeId {
                    match it.peek() {
                        Some(e) if e.u == u && e.v == v => all.push(it.next().unwrap()),
                        _ => all.push(Edge { u, v, sign: Sign::Negative, weight: W::one() }),
                    }
                }
            }
            Ok(SignedGraph::assemble(n, all, Completeness::Complete))
        } else {
            let mut g = SignedGraph::assemble(n, edges, Completeness::ImplicitNegative);
            g.materialize_wedge_closures();
            Ok(g)
        }
    }
}

impl<W: Scalar> SignedGraph<W> {
    fn assemble(n: usize, edges: Vec<Edge<W>>, completeness: Completeness) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            adjacency[e.u as usize].push((e.v, EdgeId(i as u32)));
            adjacency[e.v as usize].push((e.u, EdgeId(i as u32)));
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        SignedGraph { n, edges, adjacency, completeness }
    }

    /// Adds a stored negative edge for every unstored pair closing a positive wedge.
    fn materialize_wedge_closures(&mut self) {
        let mut missing = Vec::new();
        for w in 0..self.n {
            let pos: Vec<NodeId> = self.positive_neighbors(w as NodeId).collect();
            for (i, &a) in pos.iter().enumerate() {
                for &b in &pos[i + 1..] {
                    if self.edge_between(a, b).is_none() {
                        missing.push((a.min(b), a.max(b)));
                    }
                }
            }
        }
        if missing.is_empty() {
            return;
        }
        missing.sort_unstable();
        missing.dedup();
        let mut edges = std::mem::take(&mut self.edges);
        edges.extend(missing.into_iter().map(|(u, v)| Edge { u, v, sign: Sign::Negative, weight: W::one() }));
        *self = SignedGraph::assemble(self.n, edges, self.completeness);
    }

    /// Rebuilds a graph keeping the given edge order as the id assignment.
    pub fn from_parts(n: usize, edges: Vec<Edge<W>>, completeness: Completeness) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        let mut canonical = Vec::with_capacity(edges.len());
        for e in edges {
            let (u, v) = (e.u.min(e.v), e.u.max(e.v));
            if u == v || v as usize >= n {
                return Err(BttError::input(format!("invalid edge ({}, {}) for {} nodes", e.u, e.v, n)));
            }
            if e.weight < W::zero() {
                return Err(BttError::input(format!("negative weight on edge ({u}, {v})")));
            }
            if !seen.insert((u, v)) {
                return Err(BttError::input(format!("duplicate edge ({u}, {v})")));
            }
            canonical.push(Edge { u, v, ..e });
        }
        if completeness == Completeness::Complete && canonical.len() != n * n.saturating_sub(1) / 2 {
            return Err(BttError::input(format!(
                "complete graph on {n} nodes needs {} edges, got {}",
                n * n.saturating_sub(1) / 2,
                canonical.len()
            )));
        }
        let mut g = SignedGraph::assemble(n, canonical, completeness);
        if completeness == Completeness::ImplicitNegative {
            g.materialize_wedge_closures();
        }
        Ok(g)
    }

    /// Unit-weight graph from `(u, v, sign)` triples.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId, Sign)>) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v, s) in edges {
            b.push(u, v, s, W::one());
        }
        b.build()
    }

    pub fn from_weighted_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId, Sign, W)>) -> Result<Self> {
        let mut b = GraphBuilder::new(n);
        for (u, v, s, w) in edges {
            b.push(u, v, s, w);
        }
        b.build()
    }

    /// Complete unit-weight graph whose positive pairs are exactly `positive`.
    pub fn complete_from_positive(n: usize, positive: impl IntoIterator<Item = (NodeId, NodeId)>) -> Result<Self> {
        let mut b = GraphBuilder::new(n).complete();
        for (u, v) in positive {
            b.push(u, v, Sign::Positive, W::one());
        }
        b.build()
    }

    /// Complete unit-weight graph with signs given by `sign(u, v)` for `u < v`.
    pub fn complete_from_fn(n: usize, mut sign: impl FnMut(NodeId, NodeId) -> Sign) -> Result<Self> {
        let mut b = GraphBuilder::new(n).complete();
        for u in 0..n as NodeId {
            for v in u + 1..n as NodeId {
                b.push(u, v, sign(u, v), W::one());
            }
        }
        b.build()
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    /// Complete in either representation.
    pub fn is_complete(&self) -> bool {
        self.completeness != Completeness::Partial
    }

    pub fn edges(&self) -> &[Edge<W>] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge<W> {
        &self.edges[e.index()]
    }

    #[inline]
    pub fn sign(&self, e: EdgeId) -> Sign {
        self.edges[e.index()].sign
    }

    #[inline]
    pub fn weight(&self, e: EdgeId) -> &W {
        &self.edges[e.index()].weight
    }

    pub fn endpoints(&self, e: EdgeId) -> (NodeId, NodeId) {
        let edge = &self.edges[e.index()];
        (edge.u, edge.v)
    }

    pub fn neighbors(&self, u: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[u as usize]
    }

    pub fn positive_neighbors(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency[u as usize]
            .iter()
            .filter(move |(_, e)| self.edges[e.index()].sign == Sign::Positive)
            .map(|&(v, _)| v)
    }

    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let adj = self.adjacency.get(u as usize)?;
        adj.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| adj[i].1)
    }

    /// Sign and weight of the pair, including implicit negative pairs.
    pub fn pair(&self, u: NodeId, v: NodeId) -> Option<(Sign, W)> {
        match self.edge_between(u, v) {
            Some(e) => Some((self.sign(e), self.weight(e).clone())),
            None if u != v && self.completeness == Completeness::ImplicitNegative => Some((Sign::Negative, W::one())),
            None => None,
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e.index() < self.edges.len() {
            Ok(())
        } else {
            Err(BttError::input(format!("edge id {} out of range (graph has {} edges)", e.0, self.edges.len())))
        }
    }

    pub fn total_weight(&self) -> W {
        self.edges.iter().map(|e| e.weight.clone()).sum()
    }

    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.weight == W::one())
    }

    pub fn negative_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids().filter(|&e| self.sign(e) == Sign::Negative)
    }

    pub fn positive_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids().filter(|&e| self.sign(e) == Sign::Positive)
    }

    pub fn map_weights<T: Scalar>(&self, mut f: impl FnMut(&W) -> T) -> SignedGraph<T> {
        SignedGraph {
            n: self.n,
            edges: self.edges.iter().map(|e| Edge { u: e.u, v: e.v, sign: e.sign, weight: f(&e.weight) }).collect(),
            adjacency: self.adjacency.clone(),
            completeness: self.completeness,
        }
    }

    pub fn to_rational(&self) -> SignedGraph<Rational> {
        self.map_weights(|w| w.to_rational())
    }

    pub fn to_float(&self) -> SignedGraph<f64> {
        self.map_weights(|w| w.to_f64())
    }

    /// Graph on the same nodes keeping only `keep`; returns the new graph and
    /// the original id of each new edge. The result is always [`Completeness::Partial`].
    pub fn edge_subgraph(&self, keep: &[EdgeId]) -> (SignedGraph<W>, Vec<EdgeId>) {
        let mut ids: Vec<EdgeId> = keep.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let edges = ids.iter().map(|&e| self.edges[e.index()].clone()).collect();
        (SignedGraph::assemble(self.n, edges, Completeness::Partial), ids)
    }

    /// Enumerates every bad triangle (exactly one negative edge) in
    /// lexicographic order of the node triple.
    ///
    /// Iterates positive wedges and tests the closing pair, so the cost is
    /// proportional to the number of positive wedges. Each bad triangle has a
    /// single positive wedge (centred opposite its negative edge), so nothing
    /// is reported twice.
    pub fn bad_triangles(&self) -> Vec<BadTriangle> {
        let mut out = Vec::new();
        let mut pos: Vec<(NodeId, EdgeId)> = Vec::new();
        for w in 0..self.n as NodeId {
            pos.clear();
            pos.extend(self.adjacency[w as usize].iter().copied().filter(|(_, e)| self.sign(*e) == Sign::Positive));
            for (i, &(a, ea)) in pos.iter().enumerate() {
                for &(b, eb) in &pos[i + 1..] {
                    if let Some(eab) = self.edge_between(a, b) {
                        if self.sign(eab) == Sign::Negative {
                            out.push(BadTriangle::from_wedge(a, b, w, eab, ea, eb));
                        }
                    }
                }
            }
        }
        out.sort_unstable_by_key(|t| t.nodes);
        out
    }
}

/// A node triple whose three edges carry exactly one negative sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BadTriangle {
    /// Sorted node triple `u < v < w`.
    pub nodes: [NodeId; 3],
    /// Edges `uv`, `uw`, `vw`.
    pub edges: [EdgeId; 3],
    pub negative: EdgeId,
}

impl BadTriangle {
    /// Triangle with negative edge `ab` and positive wedge `a-w-b`.
    fn from_wedge(a: NodeId, b: NodeId, w: NodeId, eab: EdgeId, eaw: EdgeId, ebw: EdgeId) -> Self {
        let mut nodes = [a, b, w];
        nodes.sort_unstable();
        let edge_of = |x: NodeId, y: NodeId| {
            let pair = (x.min(y), x.max(y));
            if pair == (a.min(b), a.max(b)) {
                eab
            } else if pair == (a.min(w), a.max(w)) {
                eaw
            } else {
                ebw
            }
        };
        let edges = [edge_of(nodes[0], nodes[1]), edge_of(nodes[0], nodes[2]), edge_of(nodes[1], nodes[2])];
        BadTriangle { nodes, edges, negative: eab }
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn positives(&self) -> [EdgeId; 2] {
        let mut out = [self.negative; 2];
        let mut k = 0;
        for &e in &self.edges {
            if e != self.negative {
                out[k] = e;
                k += 1;
            }
        }
        out
    }
}

/// Bad triangles plus the edge-to-triangle incidence.
#[derive(Clone, Debug)]
pub struct TriangleIndex {
    pub triangles: Vec<BadTriangle>,
    /// For each edge id, indices into `triangles` containing it.
    pub by_edge: Vec<Vec<u32>>,
}

impl TriangleIndex {
    pub fn new<W: Scalar>(g: &SignedGraph<W>) -> Self {
        Self::from_triangles(g.edge_count(), g.bad_triangles())
    }

    pub fn from_triangles(edge_count: usize, triangles: Vec<BadTriangle>) -> Self {
        let mut by_edge = vec![Vec::new(); edge_count];
        for (i, t) in triangles.iter().enumerate() {
            for e in t.edges {
                by_edge[e.index()].push(i as u32);
            }
        }
        TriangleIndex { triangles, by_edge }
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

/// An integral set of edges together with its total weight.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeCover<W = Rational> {
    edges: Vec<EdgeId>,
    cost: W,
}

impl<W: Scalar> EdgeCover<W> {
    /// Validates ids against `g`, deduplicates and sums weights.
    pub fn new(g: &SignedGraph<W>, ids: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut edges: Vec<EdgeId> = ids.into_iter().collect();
        for &e in &edges {
            g.check_edge(e)?;
        }
        edges.sort_unstable();
        edges.dedup();
        let cost = edges.iter().map(|&e| g.weight(e).clone()).sum();
        Ok(EdgeCover { edges, cost })
    }

    pub fn empty() -> Self {
        EdgeCover { edges: Vec::new(), cost: W::zero() }
    }

    pub fn from_mask(g: &SignedGraph<W>, mask: &[bool]) -> Self {
        let edges: Vec<EdgeId> = mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| EdgeId(i as u32)).collect();
        let cost = edges.iter().map(|&e| g.weight(e).clone()).sum();
        EdgeCover { edges, cost }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn cost(&self) -> &W {
        &self.cost
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn mask(&self, edge_count: usize) -> Vec<bool> {
        let mut m = vec![false; edge_count];
        for &e in &self.edges {
            m[e.index()] = true;
        }
        m
    }

    pub fn with_edge(&self, g: &SignedGraph<W>, e: EdgeId) -> Result<Self> {
        EdgeCover::new(g, self.edges.iter().copied().chain(std::iter::once(e)))
    }

    /// Cost recomputed from the graph.
    pub fn recompute_cost(&self, g: &SignedGraph<W>) -> W {
        self.edges.iter().map(|&e| g.weight(e).clone()).sum()
    }
}

/// True iff every bad triangle of `g` contains an edge of `cover`.
pub fn is_feasible_cover<W: Scalar>(g: &SignedGraph<W>, cover: &EdgeCover<W>) -> Result<bool> {
    for &e in cover.edges() {
        g.check_edge(e)?;
    }
    let mask = cover.mask(g.edge_count());
    Ok(g.bad_triangles().iter().all(|t| t.edges.iter().any(|e| mask[e.index()])))
}

/// Same as [`is_feasible_cover`] against a precomputed triangle list.
pub fn covers_all(triangles: &[BadTriangle], mask: &[bool]) -> bool {
    triangles.iter().all(|t| t.edges.iter().any(|e| mask[e.index()]))
}

/// Partition of the node set. Labels are `0..count` in first-appearance order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clustering {
    labels: Vec<u32>,
    count: usize,
}

impl Clustering {
    /// Normalizes arbitrary labels into first-appearance order.
    pub fn from_labels(raw: &[u32]) -> Self {
        let mut map = std::collections::HashMap::new();
        let labels: Vec<u32> = raw
            .iter()
            .map(|&l| {
                let next = map.len() as u32;
                *map.entry(l).or_insert(next)
            })
            .collect();
        Clustering { labels, count: map.len() }
    }

    pub fn from_clusters(n: usize, clusters: &[Vec<NodeId>]) -> Result<Self> {
        let mut raw = vec![u32::MAX; n];
        for (c, members) in clusters.iter().enumerate() {
            for &v in members {
                let slot = raw
                    .get_mut(v as usize)
                    .ok_or_else(|| BttError::input(format!("node {v} outside 0..{n}")))?;
                if *slot != u32::MAX {
                    return Err(BttError::input(format!("node {v} appears in two clusters")));
                }
                *slot = c as u32;
            }
        }
        if let Some(v) = raw.iter().position(|&l| l == u32::MAX) {
            return Err(BttError::input(format!("node {v} is not assigned to a cluster")));
        }
        Ok(Clustering::from_labels(&raw))
    }

    pub fn singletons(n: usize) -> Self {
        Clustering { labels: (0..n as u32).collect(), count: n }
    }

    pub fn single(n: usize) -> Self {
        Clustering { labels: vec![0; n], count: usize::from(n > 0) }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn cluster_count(&self) -> usize {
        self.count
    }

    pub fn label(&self, v: NodeId) -> u32 {
        self.labels[v as usize]
    }

    pub fn same_cluster(&self, u: NodeId, v: NodeId) -> bool {
        self.labels[u as usize] == self.labels[v as usize]
    }

    pub fn clusters(&self) -> Vec<Vec<NodeId>> {
        let mut out = vec![Vec::new(); self.count];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(v as NodeId);
        }
        out
    }
}

/// Correlation-clustering disagreements: positive edges across clusters plus
/// negative edges (stored or implicit) inside clusters.
pub fn cc_cost<W: Scalar>(g: &SignedGraph<W>, p: &Clustering) -> Result<W> {
    if p.node_count() != g.node_count() {
        return Err(BttError::input(format!(
            "clustering covers {} nodes, graph has {}",
            p.node_count(),
            g.node_count()
        )));
    }
    let mut cost = W::zero();
    let mut stored_intra = 0usize;
    for e in g.edges() {
        let same = p.same_cluster(e.u, e.v);
        stored_intra += usize::from(same);
        match (e.sign, same) {
            (Sign::Positive, false) | (Sign::Negative, true) => cost = cost + e.weight.clone(),
            _ => {}
        }
    }
    if g.completeness() == Completeness::ImplicitNegative {
        let intra_pairs: usize = p.clusters().iter().map(|c| c.len() * c.len().saturating_sub(1) / 2).sum();
        cost = cost + W::from_usize(intra_pairs - stored_intra);
    }
    Ok(cost)
}

/// Copy of `g` with the sign of every edge in `ids` inverted.
///
/// On implicit complete graphs, negative pairs that close a new positive wedge
/// are materialized as additional edges appended after the existing ids.
pub fn flip_edges<W: Scalar>(g: &SignedGraph<W>, ids: &[EdgeId]) -> Result<SignedGraph<W>> {
    let mut flip = vec![false; g.edge_count()];
    for &e in ids {
        g.check_edge(e)?;
        flip[e.index()] = true;
    }
    let edges = g
        .edges
        .iter()
        .zip(&flip)
        .map(|(e, &f)| Edge { sign: if f { e.sign.flipped() } else { e.sign }, ..e.clone() })
        .collect();
    let mut out = SignedGraph::assemble(g.n, edges, g.completeness);
    if g.completeness == Completeness::ImplicitNegative {
        out.materialize_wedge_closures();
    }
    Ok(out)
}

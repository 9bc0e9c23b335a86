//! Problem semantics: balls, weights, query graphs, colorings, answers and
//! target evaluation.
//!
//! Colorings are unlabeled partitions of the balls. A query only reveals
//! whether two balls share a color, so every answer depends on the induced
//! partition alone.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Index of a ball in `0..n`.
pub type BallId = usize;

/// An unordered query pair, always stored with `u < v`.
pub type Edge = (BallId, BallId);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("weight of ball {0} is zero; weights must be positive")]
    ZeroWeight(BallId),
    #[error("an instance needs at least one ball")]
    EmptyInstance,
    #[error("edge ({0}, {1}) is a loop")]
    Loop(BallId, BallId),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(BallId, BallId, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(BallId, BallId),
    #[error("ball {0} appears in more than one block")]
    OverlappingBlocks(BallId),
    #[error("ball {0} is not covered by any block")]
    UncoveredBall(BallId),
    #[error("blocks must be non-empty")]
    EmptyBlock,
    #[error("vertex count mismatch: graph has {graph} balls, coloring has {coloring}")]
    SizeMismatch { graph: usize, coloring: usize },
    #[error("answer map does not match the edge set of the graph")]
    AnswerDomainMismatch,
    #[error("color budget must be at least {min}, got {got}")]
    ColorBudget { min: usize, got: usize },
    #[error("threshold k must satisfy 0 < k <= w(S) = {total}, got {k}")]
    ThresholdOutOfRange { k: BigUint, total: BigUint },
    #[error("fixed ball {0} is outside the instance")]
    FixedBallOutOfRange(BallId),
}

/// A multiset of positive integer weights indexed by ball.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedInstance {
    weights: Vec<BigUint>,
    total: BigUint,
}

impl WeightedInstance {
    pub fn new(weights: Vec<BigUint>) -> Result<Self, ModelError> {
        if weights.is_empty() {
            return Err(ModelError::EmptyInstance);
        }
        if let Some(i) = weights.iter().position(Zero::is_zero) {
            return Err(ModelError::ZeroWeight(i));
        }
        let total = weights.iter().sum();
        Ok(WeightedInstance { weights, total })
    }

    pub fn from_u64s(weights: &[u64]) -> Result<Self, ModelError> {
        Self::new(weights.iter().map(|&w| BigUint::from(w)).collect())
    }

    /// All-ones instance on `n` balls.
    pub fn unit(n: usize) -> Self {
        assert!(n > 0, "an instance needs at least one ball");
        WeightedInstance {
            weights: vec![BigUint::one(); n],
            total: BigUint::from(n),
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigUint] {
        &self.weights
    }

    pub fn weight(&self, ball: BallId) -> &BigUint {
        &self.weights[ball]
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn is_unit(&self) -> bool {
        self.weights.iter().all(One::is_one)
    }

    pub fn weight_of<'a, I>(&self, balls: I) -> BigUint
    where
        I: IntoIterator<Item = &'a BallId>,
    {
        balls.into_iter().map(|&b| &self.weights[b]).sum()
    }
}

/// A simple undirected graph on balls `0..n`; edges are the non-adaptive queries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QueryGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<BallId>>,
}

impl QueryGraph {
    /// Builds a graph from an arbitrary list of pairs. Pairs are normalized to
    /// `u < v` and sorted; loops, duplicates and out-of-range endpoints are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, ModelError> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(ModelError::Loop(u, v));
            }
            if u >= n || v >= n {
                return Err(ModelError::EndpointOutOfRange(u, v, n));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, normalized))
    }

    /// Like [`QueryGraph::new`] but silently drops duplicate pairs.
    pub fn from_pairs_dedup(
        n: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self, ModelError> {
        let mut set = std::collections::BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(ModelError::Loop(u, v));
            }
            if u >= n || v >= n {
                return Err(ModelError::EndpointOutOfRange(u, v, n));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        QueryGraph {
            n,
            edges,
            adjacency,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted(n, Vec::new())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_sorted(n, edges)
    }

    /// Graph whose edge set is selected by the bits of `mask` over the pairs
    /// of `0..n` in lexicographic order.
    pub fn from_pair_mask(n: usize, mask: u128) -> Self {
        let edges = all_pairs(n)
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        Self::from_sorted(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: BallId) -> &[BallId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: BallId) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn has_edge(&self, u: BallId, v: BallId) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Whether the subgraph induced by `vertices` is connected. The empty set
    /// counts as connected.
    pub fn induces_connected(&self, vertices: &[BallId]) -> bool {
        let Some(&start) = vertices.first() else {
            return true;
        };
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        let mut seen = vec![false; self.n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adjacency[u] {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == vertices.len()
    }

    /// Connected components of the subgraph induced by `vertices`, each sorted,
    /// ordered by smallest member.
    pub fn induced_components(&self, vertices: &[BallId]) -> Vec<Vec<BallId>> {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for &s in &sorted {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adjacency[u] {
                    if inside[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            components.push(comp);
        }
        components
    }
}

/// All pairs `(u, v)` with `u < v < n` in lexicographic order.
pub fn all_pairs(n: usize) -> impl Iterator<Item = Edge> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Partition of `0..n` into non-empty blocks, kept as a canonical
/// restricted-growth string: blocks are numbered in order of their smallest ball.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    labels: Vec<u32>,
    blocks: usize,
}

impl Coloring {
    /// Canonicalizes an arbitrary labeling (any label values).
    pub fn from_labels<L: Copy + Eq>(labels: &[L]) -> Self {
        let mut seen: Vec<L> = Vec::new();
        let canonical = labels
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i as u32,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u32
                }
            })
            .collect();
        Coloring {
            labels: canonical,
            blocks: seen.len(),
        }
    }

    pub fn from_blocks(n: usize, blocks: &[Vec<BallId>]) -> Result<Self, ModelError> {
        let mut label = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(ModelError::EmptyBlock);
            }
            for &b in block {
                if b >= n {
                    return Err(ModelError::UncoveredBall(b));
                }
                if label[b] != usize::MAX {
                    return Err(ModelError::OverlappingBlocks(b));
                }
                label[b] = i;
            }
        }
        if let Some(b) = label.iter().position(|&l| l == usize::MAX) {
            return Err(ModelError::UncoveredBall(b));
        }
        Ok(Self::from_labels(&label))
    }

    /// The one-block coloring.
    pub fn monochrome(n: usize) -> Self {
        Coloring {
            labels: vec![0; n],
            blocks: usize::from(n > 0),
        }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    /// Canonical block index of `ball`.
    pub fn label(&self, ball: BallId) -> usize {
        self.labels[ball] as usize
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn same_block(&self, a: BallId, b: BallId) -> bool {
        self.labels[a] == self.labels[b]
    }

    /// Blocks ordered by smallest member, members ascending.
    pub fn blocks(&self) -> Vec<Vec<BallId>> {
        let mut blocks = vec![Vec::new(); self.blocks];
        for (b, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(b);
        }
        blocks
    }
}

/// Block notation: `{0,1,2} {3}`.
impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{{")?;
            for (j, b) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{b}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Iterator over all partitions of `0..n` into at most `c` blocks in
/// restricted-growth-string order.
#[derive(Debug, Clone)]
pub struct Colorings {
    labels: Vec<u32>,
    // prefix_max[i] = max(labels[0..=i])
    prefix_max: Vec<u32>,
    colors: u32,
    done: bool,
}

impl Iterator for Colorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        let n = self.labels.len();
        let current = Coloring {
            labels: self.labels.clone(),
            blocks: self.prefix_max.last().map_or(0, |&m| m as usize + 1),
        };
        // Advance: find the rightmost position that can be incremented.
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let bound = self.prefix_max[i - 1] + 1;
            if self.labels[i] < bound && self.labels[i] + 1 < self.colors {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(current)
    }
}

/// Every partition of `0..n` into at most `c` blocks, exactly once.
pub fn enumerate_colorings(n: usize, c: usize) -> Colorings {
    Colorings {
        labels: vec![0; n],
        prefix_max: vec![0; n],
        colors: c.min(u32::MAX as usize) as u32,
        done: c == 0 && n > 0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Answer {
    Same,
    Different,
}

impl Answer {
    pub fn symbol(self) -> char {
        match self {
            Answer::Same => 'S',
            Answer::Different => 'D',
        }
    }
}

/// SAME/DIFFERENT verdict for each edge of a query graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnswerMap {
    verdicts: BTreeMap<Edge, Answer>,
}

impl AnswerMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, u: BallId, v: BallId, answer: Answer) {
        self.verdicts.insert((u.min(v), u.max(v)), answer);
    }

    pub fn get(&self, u: BallId, v: BallId) -> Option<Answer> {
        self.verdicts.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, Answer)> + '_ {
        self.verdicts.iter().map(|(&e, &a)| (e, a))
    }

    pub fn len(&self) -> usize {
        self.verdicts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verdicts.is_empty()
    }

    /// The domain must be exactly the graph's edge set.
    pub fn matches_graph(&self, graph: &QueryGraph) -> bool {
        self.verdicts.len() == graph.edge_count()
            && graph.edges().iter().all(|e| self.verdicts.contains_key(e))
    }
}

impl FromIterator<(Edge, Answer)> for AnswerMap {
    fn from_iter<T: IntoIterator<Item = (Edge, Answer)>>(iter: T) -> Self {
        let mut map = AnswerMap::new();
        for ((u, v), a) in iter {
            map.insert(u, v, a);
        }
        map
    }
}

pub fn answers_for(graph: &QueryGraph, coloring: &Coloring) -> Result<AnswerMap, ModelError> {
    if graph.n() != coloring.n() {
        return Err(ModelError::SizeMismatch {
            graph: graph.n(),
            coloring: coloring.n(),
        });
    }
    Ok(graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            let a = if coloring.same_block(u, v) {
                Answer::Same
            } else {
                Answer::Different
            };
            ((u, v), a)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    /// A class weighing strictly more than half the total.
    Majority,
    /// Classes weighing at least `k`.
    KMajority(BigUint),
    /// The unique class strictly heavier than every other class.
    Plurality,
    /// Whether the class of `ball` weighs at least `k`.
    FixedBallKMajority { k: BigUint, ball: BallId },
}

impl ProblemKind {
    /// Indices of target classes given class weights. `fixed_class` is the
    /// class holding the fixed ball for [`ProblemKind::FixedBallKMajority`].
    pub fn target_classes(
        &self,
        class_weights: &[BigUint],
        total: &BigUint,
        fixed_class: Option<usize>,
    ) -> Vec<usize> {
        match self {
            ProblemKind::Majority => class_weights
                .iter()
                .position(|w| w * 2u32 > *total)
                .into_iter()
                .collect(),
            ProblemKind::KMajority(k) => class_weights
                .iter()
                .enumerate()
                .filter(|(_, w)| *w >= k)
                .map(|(i, _)| i)
                .collect(),
            ProblemKind::Plurality => {
                let Some(max) = class_weights.iter().max() else {
                    return Vec::new();
                };
                let mut at_max = class_weights
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| *w == max)
                    .map(|(i, _)| i);
                match (at_max.next(), at_max.next()) {
                    (Some(i), None) => vec![i],
                    _ => Vec::new(),
                }
            }
            ProblemKind::FixedBallKMajority { k, .. } => fixed_class
                .filter(|&i| class_weights[i] >= *k)
                .into_iter()
                .collect(),
        }
    }
}

/// A problem kind together with the color budget and the weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProblemSpec {
    kind: ProblemKind,
    colors: usize,
    instance: WeightedInstance,
}

impl ProblemSpec {
    pub fn new(
        kind: ProblemKind,
        colors: usize,
        instance: WeightedInstance,
    ) -> Result<Self, ModelError> {
        if colors < 2 {
            return Err(ModelError::ColorBudget {
                min: 2,
                got: colors,
            });
        }
        match &kind {
            ProblemKind::KMajority(k) | ProblemKind::FixedBallKMajority { k, .. }
                if k.is_zero() || k > instance.total() =>
            {
                return Err(ModelError::ThresholdOutOfRange {
                    k: k.clone(),
                    total: instance.total().clone(),
                });
            }
            _ => {}
        }
        if let ProblemKind::FixedBallKMajority { ball, .. } = kind {
            if ball >= instance.n() {
                return Err(ModelError::FixedBallOutOfRange(ball));
            }
        }
        Ok(ProblemSpec {
            kind,
            colors,
            instance,
        })
    }

    pub fn majority(instance: WeightedInstance, colors: usize) -> Result<Self, ModelError> {
        Self::new(ProblemKind::Majority, colors, instance)
    }

    pub fn plurality(instance: WeightedInstance, colors: usize) -> Result<Self, ModelError> {
        Self::new(ProblemKind::Plurality, colors, instance)
    }

    pub fn k_majority(
        instance: WeightedInstance,
        k: impl Into<BigUint>,
        colors: usize,
    ) -> Result<Self, ModelError> {
        Self::new(ProblemKind::KMajority(k.into()), colors, instance)
    }

    pub fn fixed_ball(
        instance: WeightedInstance,
        k: impl Into<BigUint>,
        ball: BallId,
        colors: usize,
    ) -> Result<Self, ModelError> {
        Self::new(
            ProblemKind::FixedBallKMajority { k: k.into(), ball },
            colors,
            instance,
        )
    }

    pub fn kind(&self) -> &ProblemKind {
        &self.kind
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn instance(&self) -> &WeightedInstance {
        &self.instance
    }

    pub fn n(&self) -> usize {
        self.instance.n()
    }

    /// The k-majority threshold equivalent to this problem, when it has one.
    /// Majority over integer weights is k-majority with `k = floor(w/2) + 1`.
    pub fn k_threshold(&self) -> Option<BigUint> {
        match &self.kind {
            ProblemKind::Majority => Some(self.instance.total() / 2u32 + 1u32),
            ProblemKind::KMajority(k) => Some(k.clone()),
            _ => None,
        }
    }
}

/// Outcome a solver reports: no target class, or a ball inside one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    NoTarget,
    Witness(BallId),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NoTarget => write!(f, "NONE"),
            Verdict::Witness(b) => write!(f, "WITNESS {b}"),
        }
    }
}

/// Target set of `coloring` under `problem`, ascending.
pub fn evaluate(problem: &ProblemSpec, coloring: &Coloring) -> Vec<BallId> {
    let blocks = coloring.blocks();
    let weights: Vec<BigUint> = blocks
        .iter()
        .map(|b| problem.instance.weight_of(b))
        .collect();
    let fixed_class = match problem.kind {
        ProblemKind::FixedBallKMajority { ball, .. } => Some(coloring.label(ball)),
        _ => None,
    };
    let targets = problem
        .kind
        .target_classes(&weights, problem.instance.total(), fixed_class);
    match problem.kind {
        ProblemKind::FixedBallKMajority { ball, .. } => {
            if targets.is_empty() {
                Vec::new()
            } else {
                vec![ball]
            }
        }
        _ => {
            let mut out: Vec<BallId> = targets
                .into_iter()
                .flat_map(|i| blocks[i].iter().copied())
                .collect();
            out.sort_unstable();
            out
        }
    }
}

/// Whether `verdict` is a correct output for `coloring`.
pub fn verdict_is_correct(problem: &ProblemSpec, coloring: &Coloring, verdict: Verdict) -> bool {
    let targets = evaluate(problem, coloring);
    match verdict {
        Verdict::NoTarget => targets.is_empty(),
        Verdict::Witness(b) => targets.binary_search(&b).is_ok(),
    }
}

/// Minimal union-find with path halving.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the sets of `a` and `b`, keeping the smaller root.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Colorings with at most `c` blocks whose answers on `graph` equal `answers`,
/// in restricted-growth-string order. Inconsistent answers yield nothing.
pub fn consistent_colorings(
    graph: &QueryGraph,
    answers: &AnswerMap,
    c: usize,
) -> Result<Vec<Coloring>, ModelError> {
    if !answers.matches_graph(graph) {
        return Err(ModelError::AnswerDomainMismatch);
    }
    let n = graph.n();
    let mut uf = UnionFind::new(n);
    for ((u, v), a) in answers.iter() {
        if a == Answer::Same {
            uf.union(u, v);
        }
    }
    // Super-vertices numbered in order of their smallest ball.
    let mut super_of = vec![usize::MAX; n];
    let mut roots = Vec::new();
    for b in 0..n {
        let r = uf.find(b);
        if super_of[r] == usize::MAX {
            super_of[r] = roots.len();
            roots.push(r);
        }
        super_of[b] = super_of[r];
    }
    let m = roots.len();
    let mut conflicts = vec![Vec::new(); m];
    for ((u, v), a) in answers.iter() {
        if a == Answer::Different {
            let (su, sv) = (super_of[u], super_of[v]);
            if su == sv {
                return Ok(Vec::new());
            }
            conflicts[su.max(sv)].push(su.min(sv));
        }
    }
    let mut out = Vec::new();
    let mut labels = vec![0u32; m];
    extend_constrained(&conflicts, c, 0, 0, &mut labels, &mut |labels| {
        let full: Vec<u32> = (0..n).map(|b| labels[super_of[b]]).collect();
        out.push(Coloring::from_labels(&full));
    });
    Ok(out)
}

/// Backtracking over restricted-growth strings of length `conflicts.len()`
/// with at most `c` symbols, where `conflicts[i]` lists earlier positions
/// that must carry a different symbol than position `i`.
pub(crate) fn extend_constrained(
    conflicts: &[Vec<usize>],
    c: usize,
    pos: usize,
    used: u32,
    labels: &mut [u32],
    emit: &mut dyn FnMut(&[u32]),
) {
    if pos == conflicts.len() {
        emit(labels);
        return;
    }
    let limit = (used as usize + 1).min(c);
    for l in 0..limit as u32 {
        if conflicts[pos].iter().any(|&q| labels[q] == l) {
            continue;
        }
        labels[pos] = l;
        extend_constrained(conflicts, c, pos + 1, used.max(l + 1), labels, emit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coloring(n: usize, blocks: &[&[BallId]]) -> Coloring {
        let blocks: Vec<Vec<BallId>> = blocks.iter().map(|b| b.to_vec()).collect();
        Coloring::from_blocks(n, &blocks).unwrap()
    }

    fn path3() -> QueryGraph {
        QueryGraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_colorings(3, 3).count(), 5);
        assert_eq!(enumerate_colorings(4, 2).count(), 8);
        let one: Vec<_> = enumerate_colorings(1, 5).collect();
        assert_eq!(one, vec![Coloring::monochrome(1)]);
        let empty: Vec<_> = enumerate_colorings(0, 3).collect();
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[0].num_blocks(), 0);
    }

    #[test]
    fn enumeration_is_rgs_ordered_and_distinct() {
        let all: Vec<_> = enumerate_colorings(6, 3).collect();
        assert!(all.windows(2).all(|w| w[0].labels() < w[1].labels()));
        assert!(all.iter().all(|c| c.num_blocks() <= 3));
        // 1 + 31 + 90
        assert_eq!(all.len(), 122);
    }

    #[test]
    fn four_balls_two_colors_by_filtering_all_strings() {
        // every labeling in {0,1}^4 canonicalized, deduplicated
        let mut set = std::collections::BTreeSet::new();
        for m in 0u32..16 {
            let labels: Vec<u32> = (0..4).map(|i| m >> i & 1).collect();
            set.insert(Coloring::from_labels(&labels));
        }
        let enumerated: std::collections::BTreeSet<_> = enumerate_colorings(4, 2).collect();
        assert_eq!(set, enumerated);
    }

    #[test]
    fn answers_on_path() {
        let a = answers_for(&path3(), &coloring(3, &[&[0, 1], &[2]])).unwrap();
        assert_eq!(a.get(0, 1), Some(Answer::Same));
        assert_eq!(a.get(1, 2), Some(Answer::Different));
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn answers_extreme_colorings() {
        let k3 = QueryGraph::complete(3);
        let mono = answers_for(&k3, &Coloring::monochrome(3)).unwrap();
        assert!(mono.iter().all(|(_, a)| a == Answer::Same));
        let split = answers_for(&k3, &coloring(3, &[&[0], &[1], &[2]])).unwrap();
        assert!(split.iter().all(|(_, a)| a == Answer::Different));
        assert!(matches!(
            answers_for(&k3, &Coloring::monochrome(4)),
            Err(ModelError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn evaluate_examples() {
        let unit4 = WeightedInstance::unit(4);
        let maj = ProblemSpec::majority(unit4.clone(), 2).unwrap();
        assert_eq!(
            evaluate(&maj, &coloring(4, &[&[0, 1, 2], &[3]])),
            vec![0, 1, 2]
        );

        let plur = ProblemSpec::plurality(unit4.clone(), 3).unwrap();
        assert!(evaluate(&plur, &coloring(4, &[&[0, 1], &[2, 3]])).is_empty());

        let kmaj = ProblemSpec::k_majority(unit4, 2u32, 3).unwrap();
        assert_eq!(
            evaluate(&kmaj, &coloring(4, &[&[0, 1], &[2, 3]])),
            vec![0, 1, 2, 3]
        );

        let w = WeightedInstance::from_u64s(&[3, 1, 1]).unwrap();
        let maj = ProblemSpec::majority(w, 2).unwrap();
        assert_eq!(evaluate(&maj, &coloring(3, &[&[0], &[1, 2]])), vec![0]);
    }

    #[test]
    fn fixed_ball_evaluation() {
        let p = ProblemSpec::fixed_ball(WeightedInstance::unit(4), 3u32, 3, 2).unwrap();
        assert_eq!(evaluate(&p, &coloring(4, &[&[0, 1, 3], &[2]])), vec![3]);
        assert!(evaluate(&p, &coloring(4, &[&[0, 1, 2], &[3]])).is_empty());
    }

    #[test]
    fn problem_validation() {
        let unit = WeightedInstance::unit(3);
        assert!(ProblemSpec::majority(unit.clone(), 1).is_err());
        assert!(ProblemSpec::k_majority(unit.clone(), 0u32, 2).is_err());
        assert!(ProblemSpec::k_majority(unit.clone(), 4u32, 2).is_err());
        assert!(ProblemSpec::fixed_ball(unit, 2u32, 3, 2).is_err());
        assert!(WeightedInstance::from_u64s(&[1, 0]).is_err());
        assert!(WeightedInstance::from_u64s(&[]).is_err());
    }

    #[test]
    fn consistent_examples() {
        let g = path3();
        let mut a = AnswerMap::new();
        a.insert(0, 1, Answer::Same);
        a.insert(1, 2, Answer::Different);
        let got = consistent_colorings(&g, &a, 2).unwrap();
        // oracle: filter all 2-colorings of 3 balls
        let expected: Vec<_> = enumerate_colorings(3, 2)
            .filter(|c| answers_for(&g, c).unwrap() == a)
            .collect();
        assert_eq!(got, expected);
        assert_eq!(got, vec![coloring(3, &[&[0, 1], &[2]])]);

        let empty = QueryGraph::empty(2);
        let got = consistent_colorings(&empty, &AnswerMap::new(), 2).unwrap();
        assert_eq!(
            got,
            vec![Coloring::monochrome(2), coloring(2, &[&[0], &[1]])]
        );

        let k3 = QueryGraph::complete(3);
        let mut bad = AnswerMap::new();
        bad.insert(0, 1, Answer::Same);
        bad.insert(1, 2, Answer::Same);
        bad.insert(0, 2, Answer::Different);
        assert!(consistent_colorings(&k3, &bad, 3).unwrap().is_empty());
    }

    #[test]
    fn consistent_rejects_wrong_domain() {
        let mut a = AnswerMap::new();
        a.insert(0, 2, Answer::Same);
        assert_eq!(
            consistent_colorings(&path3(), &a, 2),
            Err(ModelError::AnswerDomainMismatch)
        );
    }

    #[test]
    fn graph_validation() {
        assert_eq!(QueryGraph::new(3, [(1, 1)]), Err(ModelError::Loop(1, 1)));
        assert_eq!(
            QueryGraph::new(3, [(0, 1), (1, 0)]),
            Err(ModelError::DuplicateEdge(0, 1))
        );
        assert!(QueryGraph::new(3, [(0, 3)]).is_err());
        let g = QueryGraph::new(4, [(2, 1), (0, 3)]).unwrap();
        assert_eq!(g.edges(), &[(0, 3), (1, 2)]);
    }

    #[test]
    fn block_notation() {
        assert_eq!(coloring(4, &[&[3, 0, 1], &[2]]).to_string(), "{0,1,3} {2}");
    }

    #[test]
    fn odd_unit_two_colors_always_has_majority() {
        for n in (1..=9).step_by(2) {
            let p = ProblemSpec::majority(WeightedInstance::unit(n), 2).unwrap();
            for c in enumerate_colorings(n, 2) {
                assert!(!evaluate(&p, &c).is_empty());
            }
        }
    }
}

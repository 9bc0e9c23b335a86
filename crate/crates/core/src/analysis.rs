//! Deciding whether a query graph solves a problem, by brute force and by
//! the structural characterizations, and decoding answers into verdicts.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::constructions::{SchemeDescriptor, SchemeFamily};
use crate::model::{
    answers_for, consistent_colorings, enumerate_colorings, evaluate, Answer, AnswerMap, BallId,
    Coloring, ModelError, ProblemKind, ProblemSpec, QueryGraph, UnionFind, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("vertex connectivity needs at least 2 vertices")]
    TooFewVertices,
    #[error("enumeration would visit {count} colorings, above the cap of {cap}")]
    CapExceeded { count: BigUint, cap: u64 },
    #[error("graph has {graph} balls but the problem has {problem}")]
    SizeMismatch { graph: usize, problem: usize },
    #[error("ball {0} alone already reaches the threshold")]
    SingletonTarget(BallId),
    #[error("instance too large for subset search ({0} balls, limit 20)")]
    TooLarge(usize),
    #[error("operation needs a k-majority or majority problem")]
    NeedsThreshold,
    #[error("answers are inconsistent with every coloring within the color budget")]
    InconsistentAnswers,
    #[error("malformed scheme descriptor: {0}")]
    MalformedDescriptor(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Default bound on the number of colorings the brute-force verifier visits.
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConflictKind {
    /// Some colorings have a target and some do not.
    ExistenceConflict,
    /// Every coloring has a target, but no ball is a target in all of them.
    EmptyWitnessIntersection,
}

/// Colorings that produce one answer map yet admit no common correct output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoolingEvidence {
    pub colorings: Vec<Coloring>,
    pub conflict: ConflictKind,
}

impl FoolingEvidence {
    /// Classifies `colorings` under `problem`; `None` if they do not conflict.
    pub fn classify(problem: &ProblemSpec, colorings: Vec<Coloring>) -> Option<Self> {
        let targets: Vec<Vec<BallId>> = colorings.iter().map(|c| evaluate(problem, c)).collect();
        let conflict = conflict_of(&targets)?;
        Some(FoolingEvidence {
            colorings,
            conflict,
        })
    }

    /// Every coloring fits the budget, all answer maps agree on `graph`, and
    /// the targets really conflict in the recorded way.
    pub fn validate(&self, graph: &QueryGraph, problem: &ProblemSpec) -> bool {
        let Some(first) = self.colorings.first() else {
            return false;
        };
        if self.colorings.iter().any(|c| {
            c.n() != graph.n() || c.n() != problem.n() || c.num_blocks() > problem.colors()
        }) {
            return false;
        }
        let Ok(reference) = answers_for(graph, first) else {
            return false;
        };
        if self
            .colorings
            .iter()
            .any(|c| answers_for(graph, c).as_ref() != Ok(&reference))
        {
            return false;
        }
        let targets: Vec<Vec<BallId>> = self
            .colorings
            .iter()
            .map(|c| evaluate(problem, c))
            .collect();
        conflict_of(&targets) == Some(self.conflict)
    }
}

/// A small conflicting subfamily of `colorings`, if the whole family
/// conflicts: an empty/non-empty pair, or colorings chosen greedily until
/// their common targets vanish.
pub fn evidence_among(problem: &ProblemSpec, colorings: &[Coloring]) -> Option<FoolingEvidence> {
    let targets: Vec<Vec<BallId>> = colorings.iter().map(|c| evaluate(problem, c)).collect();
    let conflict = conflict_of(&targets)?;
    let picked = match conflict {
        ConflictKind::ExistenceConflict => {
            let a = targets.iter().position(|t| t.is_empty())?;
            let b = targets.iter().position(|t| !t.is_empty())?;
            vec![colorings[a.min(b)].clone(), colorings[a.max(b)].clone()]
        }
        ConflictKind::EmptyWitnessIntersection => {
            let mut picked = Vec::new();
            let mut common: Option<Vec<BallId>> = None;
            for (c, t) in colorings.iter().zip(&targets) {
                let next: Vec<BallId> = match &common {
                    None => t.clone(),
                    Some(cur) => cur
                        .iter()
                        .copied()
                        .filter(|b| t.binary_search(b).is_ok())
                        .collect(),
                };
                if common.as_ref().is_none_or(|cur| next.len() < cur.len()) {
                    picked.push(c.clone());
                    let done = next.is_empty();
                    common = Some(next);
                    if done {
                        break;
                    }
                }
            }
            picked
        }
    };
    Some(FoolingEvidence {
        colorings: picked,
        conflict,
    })
}

fn conflict_of(targets: &[Vec<BallId>]) -> Option<ConflictKind> {
    let empty = targets.iter().filter(|t| t.is_empty()).count();
    if empty > 0 && empty < targets.len() {
        return Some(ConflictKind::ExistenceConflict);
    }
    if empty == targets.len() {
        return None;
    }
    let mut common = targets[0].clone();
    for t in &targets[1..] {
        common.retain(|b| t.binary_search(b).is_ok());
    }
    common
        .is_empty()
        .then_some(ConflictKind::EmptyWitnessIntersection)
}

/// Verdict forced by a family of target sets, if any.
pub(crate) fn common_verdict<'a>(
    targets: impl IntoIterator<Item = &'a [BallId]>,
) -> Option<Verdict> {
    let mut iter = targets.into_iter();
    let first = iter.next()?;
    let mut common: Vec<BallId> = first.to_vec();
    let mut all_empty = first.is_empty();
    for t in iter {
        all_empty &= t.is_empty();
        common.retain(|b| t.binary_search(b).is_ok());
    }
    if all_empty {
        Some(Verdict::NoTarget)
    } else {
        common.first().map(|&b| Verdict::Witness(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub solves: bool,
    pub evidence: Option<FoolingEvidence>,
}

fn bitmask(n: usize, vertices: impl IntoIterator<Item = usize>) -> u64 {
    debug_assert!(n <= 64);
    vertices.into_iter().fold(0, |m, v| m | 1 << v)
}

fn connected_mask(adj: &[u64], alive: u64) -> bool {
    if alive == 0 {
        return true;
    }
    let start = alive & alive.wrapping_neg();
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let next = adj[v] & alive & !seen;
        seen |= next;
        frontier |= next;
    }
    seen == alive
}

/// Size of a minimum vertex cut, reporting `n - 1` for complete graphs.
///
/// Up to 20 vertices every candidate cut is enumerated by increasing size;
/// larger graphs use [`vertex_connectivity_flow`].
pub fn vertex_connectivity(graph: &QueryGraph) -> Result<usize, AnalysisError> {
    let n = graph.n();
    if n < 2 {
        return Err(AnalysisError::TooFewVertices);
    }
    if n > 20 {
        return vertex_connectivity_flow(graph);
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| bitmask(n, graph.neighbors(v).iter().copied()))
        .collect();
    let full: u64 = (1u64 << n) - 1;
    for size in 0..=n.saturating_sub(2) {
        // Gosper's hack over subsets of the given size
        let mut cut: u64 = if size == 0 { 0 } else { (1u64 << size) - 1 };
        loop {
            if !connected_mask(&adj, full & !cut) {
                return Ok(size);
            }
            if size == 0 {
                break;
            }
            let low = cut & cut.wrapping_neg();
            let ripple = cut + low;
            cut = (((ripple ^ cut) >> 2) / low) | ripple;
            if cut > full {
                break;
            }
        }
    }
    Ok(n - 1)
}

/// Vertex connectivity by unit-capacity max-flow on the vertex-split graph,
/// minimized over non-adjacent pairs.
pub fn vertex_connectivity_flow(graph: &QueryGraph) -> Result<usize, AnalysisError> {
    let n = graph.n();
    if n < 2 {
        return Err(AnalysisError::TooFewVertices);
    }
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if graph.has_edge(s, t) {
                continue;
            }
            best = best.min(local_connectivity(graph, s, t, best));
        }
    }
    Ok(best)
}

/// Number of internally vertex-disjoint s-t paths, stopping early at `limit`.
fn local_connectivity(graph: &QueryGraph, s: usize, t: usize, limit: usize) -> usize {
    let n = graph.n();
    let nodes = 2 * n;
    let inf = n as i32;
    let mut cap = vec![vec![0i32; nodes]; nodes];
    // v_in = 2v, v_out = 2v + 1
    for v in 0..n {
        cap[2 * v][2 * v + 1] = if v == s || v == t { inf } else { 1 };
    }
    for &(u, v) in graph.edges() {
        cap[2 * u + 1][2 * v] = inf;
        cap[2 * v + 1][2 * u] = inf;
    }
    let (source, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    while flow < limit {
        let mut prev = vec![usize::MAX; nodes];
        prev[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for y in 0..nodes {
                if prev[y] == usize::MAX && cap[x][y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            break;
        }
        let mut y = sink;
        while y != source {
            let x = prev[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
    flow
}

/// `sum_{i <= c} S(n, i)`: the number of colorings with at most `c` blocks.
pub fn coloring_count(n: usize, c: usize) -> BigUint {
    // Stirling numbers of the second kind, row by row
    let mut row = vec![BigUint::one()];
    for m in 1..=n {
        let mut next = vec![BigUint::zero(); m + 1];
        for (j, slot) in next.iter_mut().enumerate().skip(1) {
            let stay = if j < m { &row[j] * j } else { BigUint::zero() };
            *slot = stay + &row[j - 1];
        }
        row = next;
    }
    row.iter().take(c + 1).sum()
}

/// Brute-force verifier for one problem, reusable across many graphs.
///
/// Colorings and their target sets are computed once; checking a graph groups
/// colorings by answer map and tests every group for a forced verdict.
pub struct Verifier {
    problem: ProblemSpec,
    colorings: Vec<Coloring>,
    /// sorted target sets, shared by index with `colorings`
    targets: Vec<Vec<BallId>>,
    masks: Vec<u64>,
}

#[derive(Default)]
struct Group {
    first: usize,
    any_empty: Option<usize>,
    any_nonempty: Option<usize>,
    common: u64,
}

impl Verifier {
    pub fn new(problem: &ProblemSpec) -> Result<Self, AnalysisError> {
        Self::with_cap(problem, DEFAULT_CAP)
    }

    pub fn with_cap(problem: &ProblemSpec, cap: u64) -> Result<Self, AnalysisError> {
        let n = problem.n();
        let count = coloring_count(n, problem.colors());
        if count > BigUint::from(cap) || n > 64 {
            return Err(AnalysisError::CapExceeded { count, cap });
        }
        let colorings: Vec<Coloring> = enumerate_colorings(n, problem.colors()).collect();
        let targets: Vec<Vec<BallId>> =
            colorings.par_iter().map(|c| evaluate(problem, c)).collect();
        let masks = targets
            .iter()
            .map(|t| bitmask(n, t.iter().copied()))
            .collect();
        Ok(Verifier {
            problem: problem.clone(),
            colorings,
            targets,
            masks,
        })
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn colorings(&self) -> &[Coloring] {
        &self.colorings
    }

    fn signature(graph: &QueryGraph, coloring: &Coloring) -> Vec<u64> {
        let edges = graph.edges();
        let mut words = vec![0u64; edges.len().div_ceil(64).max(1)];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if coloring.same_block(u, v) {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        words
    }

    fn signatures(&self, graph: &QueryGraph) -> Vec<Vec<u64>> {
        if self.colorings.len() >= 4096 {
            self.colorings
                .par_iter()
                .map(|c| Self::signature(graph, c))
                .collect()
        } else {
            self.colorings
                .iter()
                .map(|c| Self::signature(graph, c))
                .collect()
        }
    }

    /// `Some(signature)` of the first undecidable answer class, in
    /// enumeration order of its first member.
    fn first_failure(&self, graph: &QueryGraph, sigs: &[Vec<u64>]) -> Option<usize> {
        let _ = graph;
        let mut groups: HashMap<&[u64], Group> = HashMap::new();
        for (i, sig) in sigs.iter().enumerate() {
            let g = groups.entry(sig.as_slice()).or_insert_with(|| Group {
                first: i,
                common: u64::MAX,
                ..Group::default()
            });
            if self.targets[i].is_empty() {
                g.any_empty.get_or_insert(i);
            } else {
                g.any_nonempty.get_or_insert(i);
                g.common &= self.masks[i];
            }
        }
        groups
            .values()
            .filter(|g| match (g.any_empty, g.any_nonempty) {
                (Some(_), Some(_)) => true,
                (None, Some(_)) => g.common == 0,
                _ => false,
            })
            .map(|g| g.first)
            .min()
    }

    /// Whether `graph` solves the problem, without building evidence.
    pub fn solves(&self, graph: &QueryGraph) -> Result<bool, AnalysisError> {
        self.check_size(graph)?;
        let sigs = self.signatures(graph);
        Ok(self.first_failure(graph, &sigs).is_none())
    }

    fn check_size(&self, graph: &QueryGraph) -> Result<(), AnalysisError> {
        if graph.n() != self.problem.n() {
            return Err(AnalysisError::SizeMismatch {
                graph: graph.n(),
                problem: self.problem.n(),
            });
        }
        Ok(())
    }

    pub fn check(&self, graph: &QueryGraph) -> Result<SolveReport, AnalysisError> {
        self.check_size(graph)?;
        let sigs = self.signatures(graph);
        let Some(first) = self.first_failure(graph, &sigs) else {
            return Ok(SolveReport {
                solves: true,
                evidence: None,
            });
        };
        let members: Vec<usize> = (0..sigs.len())
            .filter(|&i| sigs[i] == sigs[first])
            .collect();
        let empty = members.iter().find(|&&i| self.targets[i].is_empty());
        let nonempty = members.iter().find(|&&i| !self.targets[i].is_empty());
        let evidence = match (empty, nonempty) {
            (Some(&a), Some(&b)) => FoolingEvidence {
                colorings: vec![
                    self.colorings[a.min(b)].clone(),
                    self.colorings[a.max(b)].clone(),
                ],
                conflict: ConflictKind::ExistenceConflict,
            },
            _ => {
                // greedily keep colorings that shrink the common target set
                let mut picked = Vec::new();
                let mut common = u64::MAX;
                for &i in &members {
                    if common & self.masks[i] != common {
                        common &= self.masks[i];
                        picked.push(self.colorings[i].clone());
                        if common == 0 {
                            break;
                        }
                    }
                }
                FoolingEvidence {
                    colorings: picked,
                    conflict: ConflictKind::EmptyWitnessIntersection,
                }
            }
        };
        Ok(SolveReport {
            solves: false,
            evidence: Some(evidence),
        })
    }
}

/// Brute-force oracle with the default enumeration cap.
pub fn solves(graph: &QueryGraph, problem: &ProblemSpec) -> Result<SolveReport, AnalysisError> {
    Verifier::new(problem)?.check(graph)
}

pub fn solves_with_cap(
    graph: &QueryGraph,
    problem: &ProblemSpec,
    cap: u64,
) -> Result<SolveReport, AnalysisError> {
    Verifier::with_cap(problem, cap)?.check(graph)
}

/// Inclusion-minimal ball sets weighing at least `k`, in lexicographic order.
///
/// Requires that no single ball reaches `k` and at most 20 balls.
pub fn minimal_kmajority_sets(
    instance: &crate::model::WeightedInstance,
    k: &BigUint,
) -> Result<Vec<Vec<BallId>>, AnalysisError> {
    let n = instance.n();
    if n > 20 {
        return Err(AnalysisError::TooLarge(n));
    }
    if let Some(b) = (0..n).find(|&b| instance.weight(b) >= k) {
        return Err(AnalysisError::SingletonTarget(b));
    }
    // suffix[i] = total weight of balls i..n
    let mut suffix = vec![BigUint::zero(); n + 1];
    for i in (0..n).rev() {
        suffix[i] = &suffix[i + 1] + instance.weight(i);
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    minimal_sets_dfs(
        instance,
        k,
        &suffix,
        0,
        &BigUint::zero(),
        &mut current,
        &mut out,
    );
    Ok(out)
}

fn minimal_sets_dfs(
    instance: &crate::model::WeightedInstance,
    k: &BigUint,
    suffix: &[BigUint],
    next: usize,
    weight: &BigUint,
    current: &mut Vec<BallId>,
    out: &mut Vec<Vec<BallId>>,
) {
    if weight >= k {
        let lightest = current.iter().map(|&b| instance.weight(b)).min();
        if lightest.is_some_and(|m| &(weight - m) < k) {
            out.push(current.clone());
        }
        return;
    }
    if &(weight + &suffix[next]) < k {
        return;
    }
    for b in next..instance.n() {
        current.push(b);
        minimal_sets_dfs(
            instance,
            k,
            suffix,
            b + 1,
            &(weight + instance.weight(b)),
            current,
            out,
        );
        current.pop();
    }
}

/// Every minimal k-majority set induces a connected subgraph. This suffices
/// for `graph` to solve the k-majority problem.
pub fn check_sufficient(graph: &QueryGraph, problem: &ProblemSpec) -> Result<bool, AnalysisError> {
    let k = problem.k_threshold().ok_or(AnalysisError::NeedsThreshold)?;
    let sets = minimal_kmajority_sets(problem.instance(), &k)?;
    Ok(sets.iter().all(|s| graph.induces_connected(s)))
}

/// The value the minimum degree of a plurality-solving graph must exceed,
/// for unit weights and `c >= 3`.
pub fn plurality_degree_threshold(n: usize, c: usize) -> usize {
    assert!(c >= 3 && n >= 1);
    let (m, parts) = (n - 1, c - 1);
    if m % parts == 1 {
        m - m / parts
    } else {
        m - m.div_ceil(parts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NecessaryRule {
    /// Weighted k-majority: `2 w(S) < (k+1)(c+1) - 2`, `c > 2`, no singleton
    /// k-majority sets; then every minimal set must be connected.
    WeightedConnectedMinimalSets,
    /// Unit k-majority: `n <= ck - k - c + 2`, `c > 2`; then every set of at
    /// least `k` balls must be connected, i.e. `(n-k+1)`-connectivity.
    UnitConnectivity {
        required: usize,
    },
    /// Unit plurality, `c >= 3`: minimum degree above `threshold`.
    PluralityMinDegree {
        threshold: usize,
    },
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NecessaryReport {
    pub rule: NecessaryRule,
    pub precondition_holds: bool,
    pub conclusion_holds: bool,
}

impl NecessaryReport {
    /// A graph that solves the problem never violates this.
    pub fn consistent_with_solving(&self) -> bool {
        !self.precondition_holds || self.conclusion_holds
    }
}

/// Evaluates the applicable necessary condition for `problem` on `graph`.
pub fn check_necessary(
    graph: &QueryGraph,
    problem: &ProblemSpec,
) -> Result<NecessaryReport, AnalysisError> {
    let n = problem.n();
    let c = problem.colors();
    let instance = problem.instance();
    if graph.n() != n {
        return Err(AnalysisError::SizeMismatch {
            graph: graph.n(),
            problem: n,
        });
    }
    if let Some(k) = problem.k_threshold() {
        if instance.is_unit() {
            let k: usize = usize::try_from(&k).expect("unit threshold fits usize");
            let precondition = c > 2 && (n + k + c) <= c * k + 2;
            let required = n - k + 1;
            let conclusion = n < 2 || vertex_connectivity(graph)? >= required;
            return Ok(NecessaryReport {
                rule: NecessaryRule::UnitConnectivity { required },
                precondition_holds: precondition,
                conclusion_holds: conclusion,
            });
        }
        let singleton = (0..n).any(|b| instance.weight(b) >= &k);
        let lhs = instance.total() * 2u32;
        let rhs = (&k + 1u32) * BigUint::from(c + 1);
        let precondition = c > 2 && !singleton && rhs >= BigUint::from(2u32) && lhs + 2u32 < rhs;
        let conclusion = if singleton {
            true
        } else {
            minimal_kmajority_sets(instance, &k)?
                .iter()
                .all(|s| graph.induces_connected(s))
        };
        return Ok(NecessaryReport {
            rule: NecessaryRule::WeightedConnectedMinimalSets,
            precondition_holds: precondition,
            conclusion_holds: conclusion,
        });
    }
    if matches!(problem.kind(), ProblemKind::Plurality) && instance.is_unit() && c >= 3 && n >= 3 {
        let threshold = plurality_degree_threshold(n, c);
        return Ok(NecessaryReport {
            rule: NecessaryRule::PluralityMinDegree { threshold },
            precondition_holds: true,
            conclusion_holds: graph.min_degree().unwrap_or(0) > threshold,
        });
    }
    Ok(NecessaryReport {
        rule: NecessaryRule::NotApplicable,
        precondition_holds: false,
        conclusion_holds: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Decided(Verdict),
    /// The consistent colorings admit no common correct output.
    Undecidable,
}

/// Reference decoder over the full set of consistent colorings.
pub fn decode(
    graph: &QueryGraph,
    answers: &AnswerMap,
    problem: &ProblemSpec,
) -> Result<Decision, AnalysisError> {
    if graph.n() != problem.n() {
        return Err(AnalysisError::SizeMismatch {
            graph: graph.n(),
            problem: problem.n(),
        });
    }
    let colorings = consistent_colorings(graph, answers, problem.colors())?;
    if colorings.is_empty() {
        return Err(AnalysisError::InconsistentAnswers);
    }
    let targets: Vec<Vec<BallId>> = colorings.iter().map(|c| evaluate(problem, c)).collect();
    Ok(match common_verdict(targets.iter().map(Vec::as_slice)) {
        Some(v) => Decision::Decided(v),
        None => Decision::Undecidable,
    })
}

/// SAME-components of the answers, with every component's balls sorted.
struct SameComponents {
    comp_of: Vec<usize>,
    members: Vec<Vec<BallId>>,
}

fn same_components(n: usize, answers: &AnswerMap) -> Result<SameComponents, AnalysisError> {
    let mut uf = UnionFind::new(n);
    for ((u, v), a) in answers.iter() {
        if u >= n || v >= n {
            return Err(AnalysisError::MalformedDescriptor(format!(
                "answer for ({u}, {v}) outside 0..{n}"
            )));
        }
        if a == Answer::Same {
            uf.union(u, v);
        }
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut members: Vec<Vec<BallId>> = Vec::new();
    for b in 0..n {
        let r = uf.find(b);
        if comp_of[r] == usize::MAX {
            comp_of[r] = members.len();
            members.push(Vec::new());
        }
        comp_of[b] = comp_of[r];
        members[comp_of[b]].push(b);
    }
    for ((u, v), a) in answers.iter() {
        if a == Answer::Different && comp_of[u] == comp_of[v] {
            return Err(AnalysisError::InconsistentAnswers);
        }
    }
    Ok(SameComponents { comp_of, members })
}

/// Plurality verdict from a list of identified classes, given that every
/// class left out weighs strictly less than the heaviest one listed.
fn plurality_from_classes(
    problem: &ProblemSpec,
    classes: &[Vec<BallId>],
    floor: Option<&BigUint>,
) -> Verdict {
    let instance = problem.instance();
    let weights: Vec<BigUint> = classes.iter().map(|c| instance.weight_of(c)).collect();
    let Some(max) = weights.iter().max() else {
        return Verdict::NoTarget;
    };
    if floor.is_some_and(|f| max <= f) {
        return Verdict::NoTarget;
    }
    let mut heaviest = classes.iter().zip(&weights).filter(|(_, w)| *w == max);
    match (heaviest.next(), heaviest.next()) {
        (Some((class, _)), None) => Verdict::Witness(class[0]),
        _ => Verdict::NoTarget,
    }
}

/// Polynomial decoder for the partite plurality schemes.
///
/// Any SAME edge across two parts pins down a whole color class, because
/// every other ball is compared with one of its endpoints. What remains is
/// confined to single parts and is resolved from the in-part cycle or path
/// together with the color budget.
pub fn decode_structured(
    descriptor: &SchemeDescriptor,
    answers: &AnswerMap,
    problem: &ProblemSpec,
) -> Result<Verdict, AnalysisError> {
    let malformed = |m: &str| AnalysisError::MalformedDescriptor(m.to_string());
    if !matches!(problem.kind(), ProblemKind::Plurality) {
        return Err(malformed(
            "structured decoding is only defined for plurality",
        ));
    }
    let n = descriptor.n;
    if n != problem.n() {
        return Err(AnalysisError::SizeMismatch {
            graph: n,
            problem: problem.n(),
        });
    }
    let part_of = descriptor
        .part_of()
        .ok_or_else(|| malformed("parts do not partition the balls"))?;
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] && answers.get(u, v).is_none() {
                return Err(malformed("scheme must compare every cross-part pair"));
            }
        }
    }
    let c = problem.colors();
    match descriptor.family {
        SchemeFamily::TuranCycles => {
            if !problem.instance().is_unit() {
                return Err(malformed("turan-cycles decoding needs unit weights"));
            }
            if descriptor.parts.len() + 1 != c {
                return Err(malformed("turan-cycles scheme has c - 1 parts"));
            }
            decode_turan(descriptor, &part_of, answers, problem)
        }
        SchemeFamily::WeightedPlurality => {
            if descriptor.parts.len() != c {
                return Err(malformed("weighted scheme has c parts"));
            }
            decode_weighted(descriptor, &part_of, answers, problem)
        }
        _ => Err(malformed("family has no structured decoder")),
    }
}

fn covered_components(comps: &SameComponents, part_of: &[usize]) -> Vec<bool> {
    comps
        .members
        .iter()
        .map(|m| m.iter().any(|&b| part_of[b] != part_of[m[0]]))
        .collect()
}

fn decode_weighted(
    descriptor: &SchemeDescriptor,
    part_of: &[usize],
    answers: &AnswerMap,
    problem: &ProblemSpec,
) -> Result<Verdict, AnalysisError> {
    let comps = same_components(descriptor.n, answers)?;
    let covered = covered_components(&comps, part_of);
    let mut classes: Vec<Vec<BallId>> = comps
        .members
        .iter()
        .zip(&covered)
        .filter(|(_, &cov)| cov)
        .map(|(m, _)| m.clone())
        .collect();
    // a part that is a single SAME component and not covered is a full class
    for part in &descriptor.parts {
        let comp = comps.comp_of[part[0]];
        if !covered[comp] && part.iter().all(|&b| comps.comp_of[b] == comp) {
            classes.push(part.clone());
        }
    }
    // everything unidentified weighs at most w(S)/c
    let c = BigUint::from(problem.colors());
    let instance = problem.instance();
    let weights: Vec<BigUint> = classes.iter().map(|cl| instance.weight_of(cl)).collect();
    let Some(max) = weights.iter().max() else {
        return Ok(Verdict::NoTarget);
    };
    if max * &c <= *instance.total() {
        return Ok(Verdict::NoTarget);
    }
    Ok(plurality_from_classes(problem, &classes, None))
}

fn decode_turan(
    descriptor: &SchemeDescriptor,
    part_of: &[usize],
    answers: &AnswerMap,
    problem: &ProblemSpec,
) -> Result<Verdict, AnalysisError> {
    let c = problem.colors();
    let comps = same_components(descriptor.n, answers)?;
    let covered = covered_components(&comps, part_of);
    let covered_classes: Vec<Vec<BallId>> = comps
        .members
        .iter()
        .zip(&covered)
        .filter(|(_, &cov)| cov)
        .map(|(m, _)| m.clone())
        .collect();
    let k = covered_classes.len();
    // residual SAME components per part
    let mut residual: Vec<Vec<usize>> = vec![Vec::new(); descriptor.parts.len()];
    for (i, m) in comps.members.iter().enumerate() {
        if !covered[i] {
            residual[part_of[m[0]]].push(i);
        }
    }
    let l = residual.iter().filter(|r| !r.is_empty()).count();
    if k + l > c {
        return Err(AnalysisError::InconsistentAnswers);
    }
    let different = |a: usize, b: usize| {
        comps.members[a].iter().any(|&x| {
            comps.members[b]
                .iter()
                .any(|&y| answers.get(x, y) == Some(Answer::Different))
        })
    };

    if l == c - k {
        // pigeonhole: each residual part is exactly one class
        let mut classes = covered_classes;
        for r in residual.iter().filter(|r| !r.is_empty()) {
            for (i, &a) in r.iter().enumerate() {
                if r[i + 1..].iter().any(|&b| different(a, b)) {
                    return Err(AnalysisError::InconsistentAnswers);
                }
            }
            let mut class: Vec<BallId> = r.iter().flat_map(|&i| comps.members[i].clone()).collect();
            class.sort_unstable();
            classes.push(class);
        }
        return Ok(plurality_from_classes(problem, &classes, None));
    }

    if k == 0 {
        // one spare color: at most one part splits, into two alternating classes
        let mut classes = Vec::new();
        let mut split_parts = 0;
        for r in &residual {
            if r.len() == 1 {
                classes.push(comps.members[r[0]].clone());
                continue;
            }
            split_parts += 1;
            let side =
                two_color_components(r, &different).ok_or(AnalysisError::InconsistentAnswers)?;
            for color in [false, true] {
                let mut class: Vec<BallId> = r
                    .iter()
                    .zip(&side)
                    .filter(|(_, &s)| s == color)
                    .flat_map(|(&i, _)| comps.members[i].clone())
                    .collect();
                class.sort_unstable();
                classes.push(class);
            }
        }
        if split_parts > 1 {
            return Err(AnalysisError::InconsistentAnswers);
        }
        return Ok(plurality_from_classes(problem, &classes, None));
    }

    // k >= 1 and spare colors remain: classes large enough to matter are the
    // covered ones and residual components separated from the rest of their part
    let mut classes = covered_classes;
    for r in &residual {
        for &a in r {
            if r.iter().all(|&b| b == a || different(a, b)) {
                classes.push(comps.members[a].clone());
            }
        }
    }
    Ok(plurality_from_classes(problem, &classes, None))
}

/// Proper two-coloring of components under the DIFFERENT relation, if the
/// relation graph is connected and bipartite.
fn two_color_components(
    comps: &[usize],
    different: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<bool>> {
    let m = comps.len();
    let mut side: Vec<Option<bool>> = vec![None; m];
    side[0] = Some(false);
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let s = side[i]?;
        for j in 0..m {
            if i != j && different(comps[i], comps[j]) {
                match side[j] {
                    None => {
                        side[j] = Some(!s);
                        stack.push(j);
                    }
                    Some(t) if t == s => return None,
                    Some(_) => {}
                }
            }
        }
    }
    side.into_iter().collect()
}

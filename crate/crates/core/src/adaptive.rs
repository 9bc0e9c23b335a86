//! The adaptive game: exact minimax values with optimal strategy trees, the
//! parity-guided questioner for weight multisets with an even number of
//! equipartitions, and adversaries that certify lower bounds.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::analysis::{
    check_necessary, common_verdict, evidence_among, plurality_degree_threshold, AnalysisError,
    ConflictKind, FoolingEvidence,
};
use crate::bounds::{equal_partition_count, non_slavery, BoundsError, NON_SLAVERY_MAX_BALLS};
use crate::model::{
    consistent_colorings, enumerate_colorings, extend_constrained, verdict_is_correct, Answer,
    AnswerMap, BallId, Coloring, Edge, ModelError, ProblemKind, ProblemSpec, QueryGraph, UnionFind,
    Verdict, WeightedInstance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdaptiveError {
    #[error("game value exceeds the cap: > {cap}")]
    ExceedsCap { cap: u32 },
    #[error("memo table grew past {0} states")]
    StateBudget(usize),
    #[error("instance too large ({n} balls, limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("equipartition count {0} is not even and positive")]
    OddPartitionCount(BigUint),
    #[error("no pair in items {triple:?} shares a side an even number of times")]
    NoEvenPair { triple: [usize; 3] },
    #[error("weights are not non-slavery")]
    NotNonSlavery,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("remaining balls cannot be packed into {bins} classes below the threshold")]
    PackingInfeasible { bins: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Largest instance the game solver accepts.
pub const GAME_MAX_BALLS: usize = 16;

/// What the questioner knows after some queries: SAME answers merge balls
/// into super-balls, DIFFERENT answers are recorded between them.
#[derive(Debug, Clone)]
pub struct KnowledgeState {
    weights: Vec<BigUint>,
    uf: UnionFind,
    transcript: AnswerMap,
    queries: usize,
}

impl KnowledgeState {
    pub fn new(instance: &WeightedInstance) -> Self {
        KnowledgeState {
            weights: instance.weights().to_vec(),
            uf: UnionFind::new(instance.n()),
            transcript: AnswerMap::new(),
            queries: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn queries(&self) -> usize {
        self.queries
    }

    pub fn transcript(&self) -> &AnswerMap {
        &self.transcript
    }

    pub fn record(&mut self, u: BallId, v: BallId, answer: Answer) {
        self.queries += 1;
        self.transcript.insert(u, v, answer);
        if answer == Answer::Same {
            self.uf.union(u, v);
        }
    }

    pub fn same_super_ball(&mut self, u: BallId, v: BallId) -> bool {
        self.uf.find(u) == self.uf.find(v)
    }

    /// Super-balls as sorted member lists, ordered by smallest member.
    pub fn super_balls(&mut self) -> Vec<Vec<BallId>> {
        let n = self.n();
        let mut index = vec![usize::MAX; n];
        let mut out: Vec<Vec<BallId>> = Vec::new();
        for b in 0..n {
            let r = self.uf.find(b);
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Vec::new());
            }
            out[index[r]].push(b);
        }
        out
    }

    pub fn super_weight(&self, members: &[BallId]) -> BigUint {
        members.iter().map(|&b| &self.weights[b]).sum()
    }

    /// Whether some coloring with at most `c` colors explains the transcript.
    pub fn is_consistent(&self, c: usize) -> bool {
        let graph = QueryGraph::from_pairs_dedup(self.n(), self.transcript.iter().map(|(e, _)| e))
            .expect("transcript pairs are valid");
        consistent_colorings(&graph, &self.transcript, c)
            .map(|v| !v.is_empty())
            .unwrap_or(false)
    }
}

/// Adaptive strategy: queries at internal nodes, verdicts at leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategyTree {
    Leaf(Verdict),
    Query {
        pair: Edge,
        same: Box<StrategyTree>,
        different: Box<StrategyTree>,
    },
}

impl StrategyTree {
    /// Worst-case number of queries.
    pub fn depth(&self) -> usize {
        match self {
            StrategyTree::Leaf(_) => 0,
            StrategyTree::Query {
                same, different, ..
            } => 1 + same.depth().max(different.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            StrategyTree::Leaf(_) => 1,
            StrategyTree::Query {
                same, different, ..
            } => 1 + same.node_count() + different.node_count(),
        }
    }

    /// Follows the tree against a hidden coloring: (verdict, queries asked).
    pub fn run(&self, coloring: &Coloring) -> (Verdict, usize) {
        let mut node = self;
        let mut asked = 0;
        loop {
            match node {
                StrategyTree::Leaf(v) => return (*v, asked),
                StrategyTree::Query {
                    pair,
                    same,
                    different,
                } => {
                    asked += 1;
                    node = if coloring.same_block(pair.0, pair.1) {
                        same
                    } else {
                        different
                    };
                }
            }
        }
    }

    /// The first coloring within the budget on which the tree answers wrongly.
    pub fn first_error(&self, problem: &ProblemSpec) -> Option<Coloring> {
        enumerate_colorings(problem.n(), problem.colors())
            .find(|c| !verdict_is_correct(problem, c, self.run(c).0))
    }

    /// Renders the tree as indented lines.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match self {
            StrategyTree::Leaf(v) => out.push_str(&format!("{pad}{v}\n")),
            StrategyTree::Query {
                pair,
                same,
                different,
            } => {
                out.push_str(&format!("{pad}? {} {}\n{pad}S:\n", pair.0, pair.1));
                same.render_into(indent + 1, out);
                out.push_str(&format!("{pad}D:\n"));
                different.render_into(indent + 1, out);
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct GameOptions {
    /// Largest value searched for.
    pub cap: u32,
    /// Largest number of memoized states.
    pub max_states: usize,
}

impl Default for GameOptions {
    fn default() -> Self {
        GameOptions {
            cap: 64,
            max_states: 5_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GameSolution {
    pub value: u32,
    pub tree: StrategyTree,
    pub states: usize,
}

/// Contracted knowledge: super-balls as member bitmasks sorted by smallest
/// member, DIFFERENT adjacency as bitmasks over super-ball positions.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    members: Vec<u32>,
    diff: Vec<u32>,
}

impl Node {
    fn root(n: usize) -> Self {
        Node {
            members: (0..n).map(|b| 1u32 << b).collect(),
            diff: vec![0; n],
        }
    }

    fn with_different(&self, i: usize, j: usize) -> Node {
        let mut node = self.clone();
        node.diff[i] |= 1 << j;
        node.diff[j] |= 1 << i;
        node
    }

    fn with_same(&self, i: usize, j: usize) -> Node {
        let m = self.members.len();
        let groups: Vec<usize> = (0..m).map(|x| if x == j { i } else { x }).collect();
        regroup(self, &groups)
    }
}

/// Merges super-balls by `group[x]` (a representative index) and restores
/// the sorted-by-smallest-member order.
fn regroup(node: &Node, group: &[usize]) -> Node {
    let m = node.members.len();
    let mut reps: Vec<usize> = (0..m).filter(|&x| group[x] == x).collect();
    let mut merged: Vec<u32> = vec![0; m];
    for x in 0..m {
        merged[group[x]] |= node.members[x];
    }
    reps.sort_by_key(|&r| merged[r].trailing_zeros());
    let mut pos = vec![usize::MAX; m];
    for (p, &r) in reps.iter().enumerate() {
        pos[r] = p;
    }
    let members: Vec<u32> = reps.iter().map(|&r| merged[r]).collect();
    let mut diff = vec![0u32; reps.len()];
    for x in 0..m {
        let px = pos[group[x]];
        for y in 0..m {
            if node.diff[x] >> y & 1 == 1 {
                diff[px] |= 1 << pos[group[y]];
            }
        }
    }
    Node { members, diff }
}

struct Analysis {
    verdict: Option<Verdict>,
    closed: Node,
}

#[derive(Debug, Clone, Copy)]
enum Memo {
    Exact(u32),
    AtLeast(u32),
}

type Key = (Vec<(BigUint, bool)>, u128);

struct Game<'a> {
    problem: &'a ProblemSpec,
    c: usize,
    fixed: Option<BallId>,
    memo: HashMap<Key, Memo>,
    max_states: usize,
}

impl Game<'_> {
    fn weight(&self, members: u32) -> BigUint {
        let w = self.problem.instance();
        let mut total = BigUint::zero();
        let mut m = members;
        while m != 0 {
            total += w.weight(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        total
    }

    /// Terminal verdict if the consistent colorings are decidable, and the
    /// closure of the node: forced SAME pairs merged, forced DIFFERENT pairs
    /// made explicit.
    fn analyze(&self, node: &Node) -> Analysis {
        let m = node.members.len();
        let conflicts: Vec<Vec<usize>> = (0..m)
            .map(|i| (0..i).filter(|&j| node.diff[i] >> j & 1 == 1).collect())
            .collect();
        let weights: Vec<BigUint> = node.members.iter().map(|&s| self.weight(s)).collect();
        let fixed_super = self
            .fixed
            .map(|b| node.members.iter().position(|&s| s >> b & 1 == 1).unwrap());
        let total = self.problem.instance().total();
        let kind = self.problem.kind();

        let full = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
        let mut always_same = vec![full; m];
        let mut always_diff = vec![full; m];
        let mut any_empty = false;
        let mut any_target = false;
        let mut common = u32::MAX;
        let mut labels = vec![0u32; m];
        extend_constrained(&conflicts, self.c, 0, 0, &mut labels, &mut |labels| {
            let classes = labels.iter().max().map_or(0, |&l| l as usize + 1);
            let mut class_weights = vec![BigUint::zero(); classes];
            let mut class_mask = vec![0u32; classes];
            for x in 0..m {
                class_weights[labels[x] as usize] += &weights[x];
                class_mask[labels[x] as usize] |= 1 << x;
            }
            let targets = kind.target_classes(
                &class_weights,
                total,
                fixed_super.map(|f| labels[f] as usize),
            );
            let balls = match (self.fixed, targets.is_empty()) {
                (_, true) => 0,
                (Some(b), false) => 1u32 << b,
                (None, false) => targets
                    .iter()
                    .flat_map(|&t| (0..m).filter(move |&x| labels[x] as usize == t))
                    .fold(0, |acc, x| acc | node.members[x]),
            };
            if balls == 0 {
                any_empty = true;
            } else {
                any_target = true;
                common &= balls;
            }
            for x in 0..m {
                let same = class_mask[labels[x] as usize];
                always_same[x] &= same;
                always_diff[x] &= full & !same;
            }
        });
        let verdict = match (any_empty, any_target) {
            (true, false) => Some(Verdict::NoTarget),
            (false, true) if common != 0 => {
                Some(Verdict::Witness(common.trailing_zeros() as usize))
            }
            _ => None,
        };

        let mut uf = UnionFind::new(m);
        for (x, &same) in always_same.iter().enumerate() {
            let mut s = same & !(1 << x);
            while s != 0 {
                uf.union(x, s.trailing_zeros() as usize);
                s &= s - 1;
            }
        }
        let group: Vec<usize> = (0..m).map(|x| uf.find(x)).collect();
        let mut closed_input = node.clone();
        closed_input.diff = always_diff;
        let closed = regroup(&closed_input, &group);
        Analysis { verdict, closed }
    }

    fn key(&self, node: &Node) -> Key {
        let labels: Vec<(BigUint, bool)> = node
            .members
            .iter()
            .map(|&s| (self.weight(s), self.fixed.is_some_and(|b| s >> b & 1 == 1)))
            .collect();
        canonical_form(&labels, &node.diff)
    }

    fn value(&mut self, node: &Node, budget: u32) -> Result<Option<u32>, AdaptiveError> {
        let analysis = self.analyze(node);
        if analysis.verdict.is_some() {
            return Ok(Some(0));
        }
        let node = analysis.closed;
        let key = self.key(&node);
        match self.memo.get(&key) {
            Some(&Memo::Exact(v)) => return Ok((v <= budget).then_some(v)),
            Some(&Memo::AtLeast(lb)) if lb > budget => return Ok(None),
            _ => {}
        }
        if budget == 0 {
            self.store(key, Memo::AtLeast(1))?;
            return Ok(None);
        }
        let m = node.members.len();
        let mut best: Option<u32> = None;
        let mut limit = budget;
        'pairs: for i in 0..m {
            for j in i + 1..m {
                if node.diff[i] >> j & 1 == 1 {
                    continue;
                }
                let Some(a) = self.value(&node.with_same(i, j), limit - 1)? else {
                    continue;
                };
                let Some(b) = self.value(&node.with_different(i, j), limit - 1)? else {
                    continue;
                };
                let v = 1 + a.max(b);
                best = Some(v);
                if v == 1 {
                    break 'pairs;
                }
                limit = v - 1;
            }
        }
        match best {
            Some(v) => self.store(key, Memo::Exact(v))?,
            None => self.store(key, Memo::AtLeast(budget + 1))?,
        }
        Ok(best)
    }

    fn store(&mut self, key: Key, entry: Memo) -> Result<(), AdaptiveError> {
        if self.memo.len() >= self.max_states {
            return Err(AdaptiveError::StateBudget(self.max_states));
        }
        self.memo.insert(key, entry);
        Ok(())
    }

    fn tree(&mut self, node: &Node, value: u32) -> Result<StrategyTree, AdaptiveError> {
        let analysis = self.analyze(node);
        if let Some(v) = analysis.verdict {
            return Ok(StrategyTree::Leaf(v));
        }
        let node = analysis.closed;
        let m = node.members.len();
        for i in 0..m {
            for j in i + 1..m {
                if node.diff[i] >> j & 1 == 1 {
                    continue;
                }
                let (same, diff) = (node.with_same(i, j), node.with_different(i, j));
                let Some(a) = self.value(&same, value - 1)? else {
                    continue;
                };
                let Some(b) = self.value(&diff, value - 1)? else {
                    continue;
                };
                let pair = (
                    node.members[i].trailing_zeros() as usize,
                    node.members[j].trailing_zeros() as usize,
                );
                return Ok(StrategyTree::Query {
                    pair,
                    same: Box::new(self.tree(&same, a)?),
                    different: Box::new(self.tree(&diff, b)?),
                });
            }
        }
        unreachable!("a node with a finite value has an optimal query")
    }
}

/// Canonical form of a vertex-labeled graph on at most 16 vertices: labels
/// in canonical order plus the adjacency bits, minimized over all orderings
/// compatible with color refinement.
fn canonical_form(labels: &[(BigUint, bool)], adj: &[u32]) -> Key {
    let m = labels.len();
    let mut distinct: Vec<&(BigUint, bool)> = labels.iter().collect();
    distinct.sort();
    distinct.dedup();
    let mut color: Vec<usize> = labels
        .iter()
        .map(|l| distinct.binary_search(&l).unwrap())
        .collect();
    // refine by the multiset of neighbor colors until stable
    loop {
        let signature: Vec<(usize, Vec<usize>)> = (0..m)
            .map(|x| {
                let mut nb: Vec<usize> = (0..m)
                    .filter(|&y| adj[x] >> y & 1 == 1)
                    .map(|y| color[y])
                    .collect();
                nb.sort_unstable();
                (color[x], nb)
            })
            .collect();
        let mut sorted: Vec<&(usize, Vec<usize>)> = signature.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = signature
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap())
            .collect();
        let classes_before = color.iter().collect::<BTreeSet<_>>().len();
        color = next;
        if sorted.len() == classes_before {
            break;
        }
    }
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_color: Vec<(usize, usize)> = (0..m).map(|x| (color[x], x)).collect();
    by_color.sort_unstable();
    for (c, x) in by_color {
        match cells.last_mut() {
            Some(cell) if color[cell[0]] == c => cell.push(x),
            _ => cells.push(vec![x]),
        }
    }
    let mut order: Vec<usize> = Vec::with_capacity(m);
    let mut best = u128::MAX;
    best_ordering(&cells, 0, &mut order, adj, &mut best);
    let canonical_labels = cells
        .iter()
        .flat_map(|cell| cell.iter().map(|&x| labels[x].clone()))
        .collect();
    (canonical_labels, best)
}

fn adjacency_code(order: &[usize], adj: &[u32]) -> u128 {
    let mut code = 0u128;
    let mut bit = 0;
    for p in 0..order.len() {
        for q in p + 1..order.len() {
            if adj[order[p]] >> order[q] & 1 == 1 {
                code |= 1 << (127 - bit);
            }
            bit += 1;
        }
    }
    code
}

fn best_ordering(
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    adj: &[u32],
    best: &mut u128,
) {
    if cell == cells.len() {
        *best = (*best).min(adjacency_code(order, adj));
        return;
    }
    let mut items = cells[cell].clone();
    permute(&mut items, 0, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        best_ordering(cells, cell + 1, order, adj, best);
        order.truncate(len);
    });
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Exact worst-case number of adaptive queries, and an optimal tree.
pub fn game_value(problem: &ProblemSpec, cap: u32) -> Result<GameSolution, AdaptiveError> {
    game_value_with(
        problem,
        &GameOptions {
            cap,
            ..GameOptions::default()
        },
    )
}

pub fn game_value_with(
    problem: &ProblemSpec,
    options: &GameOptions,
) -> Result<GameSolution, AdaptiveError> {
    let n = problem.n();
    if n > GAME_MAX_BALLS {
        return Err(AdaptiveError::TooLarge {
            n,
            limit: GAME_MAX_BALLS,
        });
    }
    let fixed = match problem.kind() {
        ProblemKind::FixedBallKMajority { ball, .. } => Some(*ball),
        _ => None,
    };
    let mut game = Game {
        problem,
        c: problem.colors(),
        fixed,
        memo: HashMap::new(),
        max_states: options.max_states,
    };
    let root = Node::root(n);
    let value = game
        .value(&root, options.cap)?
        .ok_or(AdaptiveError::ExceedsCap { cap: options.cap })?;
    let tree = game.tree(&root, value)?;
    Ok(GameSolution {
        value,
        tree,
        states: game.memo.len(),
    })
}

/// A signed group of balls: `dom` and `sub` have opposite colors and
/// `w(dom) - w(sub) = eff > 0`.
#[derive(Debug, Clone)]
struct Item {
    dom: Vec<BallId>,
    sub: Vec<BallId>,
    eff: BigUint,
}

impl Item {
    fn first(&self) -> BallId {
        let d = self.dom[0];
        self.sub.first().map_or(d, |&s| s.min(d))
    }
}

/// Number of equipartitions of the items' effective weights in which items
/// `i` and `j` sit on the same side.
fn equipartitions_with_pair(items: &[Item]) -> (BigUint, Vec<Vec<u64>>) {
    let m = items.len();
    let total: BigUint = items.iter().map(|it| &it.eff).sum();
    let mut count = BigUint::zero();
    let mut together = vec![vec![0u64; m]; m];
    if m == 0 || (&total % 2u32) == BigUint::from(1u32) {
        return (count, together);
    }
    let half = &total / 2u32;
    // subsets containing item 0 fix the unordered side
    for mask in 0u64..(1 << (m - 1)) {
        let side = mask << 1 | 1;
        let w: BigUint = (0..m)
            .filter(|&x| side >> x & 1 == 1)
            .map(|x| &items[x].eff)
            .sum();
        if w != half {
            continue;
        }
        count += 1u32;
        for (i, row) in together.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate().skip(i + 1) {
                if (side >> i & 1) == (side >> j & 1) {
                    *cell += 1;
                }
            }
        }
    }
    (count, together)
}

/// The parity-guided questioner for two-color majority on a weight multiset
/// whose number of equipartitions is even and positive.
///
/// SAME merges the two groups by summing; DIFFERENT cancels the lighter group
/// against the heavier one and drops the result when it balances exactly.
pub fn prop3_even_strategy(instance: &WeightedInstance) -> Result<StrategyTree, AdaptiveError> {
    let n = instance.n();
    if n > 24 {
        return Err(AdaptiveError::TooLarge { n, limit: 24 });
    }
    let p = equal_partition_count(instance);
    if p.is_zero() || (&p % 2u32) == BigUint::from(1u32) {
        return Err(AdaptiveError::OddPartitionCount(p));
    }
    let items: Vec<Item> = (0..n)
        .map(|b| Item {
            dom: vec![b],
            sub: vec![],
            eff: instance.weight(b).clone(),
        })
        .collect();
    even_strategy_tree(items)
}

fn even_strategy_tree(mut items: Vec<Item>) -> Result<StrategyTree, AdaptiveError> {
    items.sort_by_key(Item::first);
    if items.is_empty() {
        return Ok(StrategyTree::Leaf(Verdict::NoTarget));
    }
    let total: BigUint = items.iter().map(|it| &it.eff).sum();
    if let Some(top) = items.iter().find(|it| it.eff.clone() * 2u32 > total) {
        return Ok(StrategyTree::Leaf(Verdict::Witness(top.dom[0])));
    }
    let (p, together) = equipartitions_with_pair(&items);
    let (i, j) = if (&p % 2u32).is_zero() && items.len() >= 3 {
        [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .find(|&(a, b)| together[a][b] % 2 == 0)
            .ok_or(AdaptiveError::NoEvenPair { triple: [0, 1, 2] })?
    } else {
        (0, 1)
    };
    let pair = (
        items[i].dom[0].min(items[j].dom[0]),
        items[i].dom[0].max(items[j].dom[0]),
    );

    let rest: Vec<Item> = items
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != i && x != j)
        .map(|(_, it)| it.clone())
        .collect();
    let (a, b) = (&items[i], &items[j]);

    let mut same_items = rest.clone();
    same_items.push(Item {
        dom: sorted_union(&a.dom, &b.dom),
        sub: sorted_union(&a.sub, &b.sub),
        eff: &a.eff + &b.eff,
    });

    let mut diff_items = rest;
    if a.eff != b.eff {
        let (heavy, light) = if a.eff > b.eff { (a, b) } else { (b, a) };
        diff_items.push(Item {
            dom: sorted_union(&heavy.dom, &light.sub),
            sub: sorted_union(&heavy.sub, &light.dom),
            eff: &heavy.eff - &light.eff,
        });
    }

    Ok(StrategyTree::Query {
        pair,
        same: Box::new(even_strategy_tree(same_items)?),
        different: Box::new(even_strategy_tree(diff_items)?),
    })
}

fn sorted_union(a: &[BallId], b: &[BallId]) -> Vec<BallId> {
    let mut v: Vec<BallId> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v
}

/// An answerer in the adaptive game that can certify an underspent budget.
pub trait Adversary {
    fn answer(&mut self, u: BallId, v: BallId) -> Answer;
    fn state(&self) -> &KnowledgeState;
    /// Two consistent colorings with conflicting verdicts, if the answers so
    /// far leave the problem open.
    fn fooling_evidence(&self) -> Option<FoolingEvidence>;
    /// Queries below which evidence is guaranteed.
    fn budget(&self) -> usize;
}

/// Answers DIFFERENT between `A + s` and `B`, SAME otherwise.
pub struct Prop4Adversary {
    problem: ProblemSpec,
    red_side: Vec<bool>,
    state: KnowledgeState,
}

impl Prop4Adversary {
    /// `s`, the lightest ball, and the side `A` chosen for the split.
    pub fn sides(&self) -> (Vec<BallId>, Vec<BallId>) {
        let n = self.red_side.len();
        let red = (0..n).filter(|&b| self.red_side[b]).collect();
        let blue = (0..n).filter(|&b| !self.red_side[b]).collect();
        (red, blue)
    }
}

/// The adversary for non-slavery weight multisets under two-color majority.
pub fn adversary_prop4(instance: &WeightedInstance) -> Result<Prop4Adversary, AdaptiveError> {
    let n = instance.n();
    if n > NON_SLAVERY_MAX_BALLS {
        return Err(AdaptiveError::TooLarge {
            n,
            limit: NON_SLAVERY_MAX_BALLS,
        });
    }
    if !non_slavery(instance)? {
        return Err(AdaptiveError::NotNonSlavery);
    }
    let s = (0..n)
        .min_by(|&a, &b| instance.weight(a).cmp(instance.weight(b)).then(a.cmp(&b)))
        .expect("non-empty instance");
    let others: Vec<BallId> = (0..n).filter(|&b| b != s).collect();
    let total = instance.total();
    let ws = instance.weight(s);
    let rest_weight = total - ws;
    let valid = |a: &[BallId]| {
        let wa = instance.weight_of(a);
        let wb = &rest_weight - &wa;
        2 * a.len() >= others.len() && (&wa + ws) * 2u32 >= *total && (&wb + ws) * 2u32 >= *total
    };
    let mut current = Vec::new();
    let a = lex_least(&others, 0, &mut current, &valid).ok_or_else(|| {
        AdaptiveError::Precondition("no split with both sides reaching half the weight".into())
    })?;
    let mut red_side = vec![false; n];
    red_side[s] = true;
    for &b in &a {
        red_side[b] = true;
    }
    Ok(Prop4Adversary {
        problem: ProblemSpec::majority(instance.clone(), 2)?,
        red_side,
        state: KnowledgeState::new(instance),
    })
}

/// Lexicographically least sorted subsequence of `pool` satisfying `valid`.
fn lex_least(
    pool: &[BallId],
    start: usize,
    current: &mut Vec<BallId>,
    valid: &dyn Fn(&[BallId]) -> bool,
) -> Option<Vec<BallId>> {
    if valid(current) {
        return Some(current.clone());
    }
    for i in start..pool.len() {
        current.push(pool[i]);
        if let Some(found) = lex_least(pool, i + 1, current, valid) {
            return Some(found);
        }
        current.pop();
    }
    None
}

impl Adversary for Prop4Adversary {
    fn answer(&mut self, u: BallId, v: BallId) -> Answer {
        let a = if self.red_side[u] == self.red_side[v] {
            Answer::Same
        } else {
            Answer::Different
        };
        self.state.record(u, v, a);
        a
    }

    fn state(&self) -> &KnowledgeState {
        &self.state
    }

    fn budget(&self) -> usize {
        self.red_side.len() / 2
    }

    fn fooling_evidence(&self) -> Option<FoolingEvidence> {
        let n = self.red_side.len();
        let graph =
            QueryGraph::from_pairs_dedup(n, self.state.transcript.iter().map(|(e, _)| e)).ok()?;
        let all: Vec<BallId> = (0..n).collect();
        let base: Vec<u32> = self.red_side.iter().map(|&r| u32::from(!r)).collect();
        for component in graph.induced_components(&all) {
            if !component.iter().all(|&b| self.red_side[b]) {
                continue;
            }
            let mut flipped = base.clone();
            for &b in &component {
                flipped[b] = 1;
            }
            let colorings = vec![
                Coloring::from_labels(&base),
                Coloring::from_labels(&flipped),
            ];
            if let Some(ev) = FoolingEvidence::classify(&self.problem, colorings) {
                return Some(ev);
            }
        }
        // the flipped component can stay inside the majority of both
        // colorings; fall back to every coloring the answers allow
        let consistent = consistent_colorings(&graph, &self.state.transcript, 2).ok()?;
        evidence_among(&self.problem, &consistent)
    }
}

/// Fooling pair for unit-weight plurality with `c` colors on a vertex whose
/// degree does not clear the minimum-degree threshold; `None` otherwise.
pub fn adversary_mindeg(graph: &QueryGraph, c: usize) -> Option<FoolingEvidence> {
    let n = graph.n();
    if c < 3 || n < 3 {
        return None;
    }
    let threshold = plurality_degree_threshold(n, c);
    let x = (0..n).find(|&v| graph.degree(v) <= threshold)?;
    let parts = c - 1;
    let rest = n - 1;
    let (q, r) = (rest / parts, rest % parts);
    let non_neighbors: Vec<BallId> = (0..n)
        .filter(|&v| v != x && !graph.has_edge(x, v))
        .collect();
    let long = r == 1;
    // the designated set avoiding N(x): a largest one, or a small one when
    // exactly one set is larger
    let designated_size = if long { q } else { rest.div_ceil(parts) };
    let designated: Vec<BallId> = non_neighbors[..designated_size].to_vec();
    let mut remaining: Vec<BallId> = (0..n)
        .filter(|&v| v != x && !designated.contains(&v))
        .collect();
    let mut sizes: Vec<usize> = (0..parts).map(|i| q + usize::from(i < r)).collect();
    let taken = sizes
        .iter()
        .position(|&s| s == designated_size)
        .expect("designated size occurs in the equipartition");
    sizes.remove(taken);
    let mut labels = vec![0u32; n];
    for &v in &designated {
        labels[v] = 0;
    }
    for (i, size) in sizes.into_iter().enumerate() {
        for v in remaining.drain(..size) {
            labels[v] = i as u32 + 1;
        }
    }
    let mut joined = labels.clone();
    joined[x] = 0;
    labels[x] = parts as u32;
    let problem = ProblemSpec::plurality(WeightedInstance::unit(n), c).ok()?;
    let evidence = FoolingEvidence::classify(
        &problem,
        vec![
            Coloring::from_labels(&joined),
            Coloring::from_labels(&labels),
        ],
    )?;
    debug_assert!(evidence.validate(graph, &problem));
    Some(evidence)
}

/// The fooling pair from a disconnected minimal k-majority set `f0`: one
/// component blue and the rest of `f0` red, against `f0` all blue, with the
/// other balls packed into the remaining `c - 2` colors below the threshold.
pub fn fooling_from_disconnected(
    graph: &QueryGraph,
    problem: &ProblemSpec,
    f0: &[BallId],
) -> Result<FoolingEvidence, AdaptiveError> {
    let n = problem.n();
    let instance = problem.instance();
    let k = problem
        .k_threshold()
        .filter(|_| !matches!(problem.kind(), ProblemKind::FixedBallKMajority { .. }))
        .ok_or_else(|| AdaptiveError::Precondition("needs a k-majority problem".into()))?;
    let mut f0: Vec<BallId> = f0.to_vec();
    f0.sort_unstable();
    f0.dedup();
    if f0.is_empty() || f0.iter().any(|&b| b >= n) {
        return Err(AdaptiveError::Precondition(
            "set must be non-empty and in range".into(),
        ));
    }
    let w = instance.weight_of(&f0);
    let lightest = f0.iter().map(|&b| instance.weight(b)).min().unwrap();
    if w < k || &w - lightest >= k {
        return Err(AdaptiveError::Precondition(
            "set is not a minimal k-majority set".into(),
        ));
    }
    let components = graph.induced_components(&f0);
    if components.len() < 2 {
        return Err(AdaptiveError::Precondition(
            "set induces a connected subgraph".into(),
        ));
    }
    let report = check_necessary(graph, problem)?;
    if !report.precondition_holds {
        return Err(AdaptiveError::Precondition(
            "weight condition for the characterization fails".into(),
        ));
    }
    let outside: Vec<BallId> = (0..n).filter(|b| f0.binary_search(b).is_err()).collect();
    let bins = problem.colors() - 2;
    let cap = &k - 1u32;
    let packing =
        pack(instance, &outside, bins, &cap).ok_or(AdaptiveError::PackingInfeasible { bins })?;

    // labels: 0 blue, 1 red, 2.. packed bins
    let mut split = vec![0u32; n];
    for (bin, balls) in packing.iter().enumerate() {
        for &b in balls {
            split[b] = bin as u32 + 2;
        }
    }
    let mut whole = split.clone();
    for &b in &f0 {
        whole[b] = 0;
        split[b] = 1;
    }
    for &b in &components[0] {
        split[b] = 0;
    }
    let evidence = FoolingEvidence {
        colorings: vec![Coloring::from_labels(&split), Coloring::from_labels(&whole)],
        conflict: ConflictKind::ExistenceConflict,
    };
    if !evidence.validate(graph, problem) {
        return Err(AdaptiveError::Precondition(
            "constructed colorings do not conflict".into(),
        ));
    }
    Ok(evidence)
}

/// First-fit decreasing, falling back to exhaustive assignment.
fn pack(
    instance: &WeightedInstance,
    balls: &[BallId],
    bins: usize,
    cap: &BigUint,
) -> Option<Vec<Vec<BallId>>> {
    let mut order = balls.to_vec();
    order.sort_by(|&a, &b| instance.weight(b).cmp(instance.weight(a)).then(a.cmp(&b)));
    if order.is_empty() {
        return Some(vec![Vec::new(); bins]);
    }
    if bins == 0 {
        return None;
    }
    let mut loads = vec![BigUint::zero(); bins];
    let mut out = vec![Vec::new(); bins];
    let mut ok = true;
    for &b in &order {
        match (0..bins).find(|&i| &loads[i] + instance.weight(b) <= *cap) {
            Some(i) => {
                loads[i] += instance.weight(b);
                out[i].push(b);
            }
            None => {
                ok = false;
                break;
            }
        }
    }
    if ok {
        return Some(out);
    }
    let mut loads = vec![BigUint::zero(); bins];
    let mut out = vec![Vec::new(); bins];
    pack_exhaustive(instance, &order, 0, cap, &mut loads, &mut out).then_some(out)
}

fn pack_exhaustive(
    instance: &WeightedInstance,
    order: &[BallId],
    next: usize,
    cap: &BigUint,
    loads: &mut [BigUint],
    out: &mut [Vec<BallId>],
) -> bool {
    let Some(&b) = order.get(next) else {
        return true;
    };
    for i in 0..loads.len() {
        // empty bins are interchangeable
        if loads[i].is_zero() && loads[..i].iter().any(Zero::is_zero) {
            continue;
        }
        let load = &loads[i] + instance.weight(b);
        if load <= *cap {
            let old = std::mem::replace(&mut loads[i], load);
            out[i].push(b);
            if pack_exhaustive(instance, order, next + 1, cap, loads, out) {
                return true;
            }
            out[i].pop();
            loads[i] = old;
        }
    }
    false
}

/// Verdict forced by the colorings consistent with `state`, if decidable.
pub fn forced_verdict(
    state: &KnowledgeState,
    problem: &ProblemSpec,
) -> Result<Option<Verdict>, AdaptiveError> {
    let graph = QueryGraph::from_pairs_dedup(state.n(), state.transcript.iter().map(|(e, _)| e))?;
    let colorings = consistent_colorings(&graph, &state.transcript, problem.colors())?;
    let targets: Vec<Vec<BallId>> = colorings
        .iter()
        .map(|c| crate::model::evaluate(problem, c))
        .collect();
    Ok(common_verdict(targets.iter().map(Vec::as_slice)))
}

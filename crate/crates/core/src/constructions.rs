//! Query graph constructions: minimal j-connected (Harary) graphs, Turán
//! graphs with spanning cycles, the three-color constructions and the
//! weighted plurality scheme.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{BallId, Edge, QueryGraph, WeightedInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("connectivity j = {j} must satisfy 1 <= j < n = {n}")]
    Connectivity { n: usize, j: usize },
    #[error("k-majority graph needs n > k > n/2 and n > 1 (n = {n}, k = {k})")]
    Threshold { n: usize, k: usize },
    #[error("needs c >= {min} colors, got {c}")]
    TooFewColors { c: usize, min: usize },
    #[error("needs n >= {min} balls, got {n}")]
    TooFewBalls { n: usize, min: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeFamily {
    Harary,
    TuranCycles,
    C3Even,
    C3Odd,
    WeightedPlurality,
}

/// How a graph was built. Partite families record their parts so decoders
/// can use the structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDescriptor {
    pub family: SchemeFamily,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Vec<BallId>>,
}

impl SchemeDescriptor {
    /// Part index of every ball, when the family is partite.
    pub fn part_of(&self) -> Option<Vec<usize>> {
        if self.parts.is_empty() {
            return None;
        }
        let mut part = vec![usize::MAX; self.n];
        for (i, p) in self.parts.iter().enumerate() {
            for &b in p {
                if b >= self.n || part[b] != usize::MAX {
                    return None;
                }
                part[b] = i;
            }
        }
        part.iter().all(|&p| p != usize::MAX).then_some(part)
    }
}

/// Minimal j-connected graph on `n` vertices with `ceil(jn/2)` edges.
///
/// Circulant construction: every vertex joins its `floor(j/2)` nearest
/// neighbors on each side of the cycle; odd `j` adds diameters (even `n`) or
/// the `(n+1)/2` near-diameters `i ~ i + (n+1)/2` (odd `n`). For `j = 1` the
/// minimum connected graph is a path with `n - 1` edges.
pub fn harary_graph(n: usize, j: usize) -> Result<QueryGraph, ConstructionError> {
    if j == 0 || j >= n {
        return Err(ConstructionError::Connectivity { n, j });
    }
    let mut edges: Vec<Edge> = Vec::new();
    if j == 1 {
        edges.extend((1..n).map(|v| (v - 1, v)));
    } else {
        let r = j / 2;
        for i in 0..n {
            for d in 1..=r {
                edges.push((i, (i + d) % n));
            }
        }
        if j % 2 == 1 {
            if n.is_multiple_of(2) {
                edges.extend((0..n / 2).map(|i| (i, i + n / 2)));
            } else {
                edges.extend((0..=(n - 1) / 2).map(|i| (i, (i + n.div_ceil(2)) % n)));
            }
        }
    }
    Ok(QueryGraph::from_pairs_dedup(n, edges).expect("circulant edges are in range"))
}

/// Query graph that solves unit-weight k-majority: the minimal
/// `(n - k + 1)`-connected graph.
pub fn kmajority_graph(n: usize, k: usize) -> Result<QueryGraph, ConstructionError> {
    if n <= 1 || k >= n || 2 * k <= n {
        return Err(ConstructionError::Threshold { n, k });
    }
    harary_graph(n, n - k + 1)
}

/// Sizes of an equipartition of `n` into `parts` parts, larger parts first.
fn equipartition_sizes(n: usize, parts: usize) -> Vec<usize> {
    let (q, r) = (n / parts, n % parts);
    (0..parts).map(|i| q + usize::from(i < r)).collect()
}

fn consecutive_parts(sizes: &[usize]) -> Vec<Vec<BallId>> {
    let mut start = 0;
    sizes
        .iter()
        .map(|&s| {
            let part = (start..start + s).collect();
            start += s;
            part
        })
        .collect()
}

fn cross_part_edges(parts: &[Vec<BallId>], edges: &mut Vec<Edge>) {
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            for &u in a {
                for &v in b {
                    edges.push((u, v));
                }
            }
        }
    }
}

fn path_edges(part: &[BallId], edges: &mut Vec<Edge>) {
    edges.extend(part.windows(2).map(|w| (w[0], w[1])));
}

/// Spanning cycle of a part; size 2 degenerates to one edge, size 1 to none.
fn cycle_edges(part: &[BallId], edges: &mut Vec<Edge>) {
    path_edges(part, edges);
    if part.len() >= 3 {
        edges.push((part[0], part[part.len() - 1]));
    }
}

/// The (c-1)-partite Turán graph on `n` vertices with a spanning cycle added
/// inside each part.
pub fn turan_cycles(
    n: usize,
    c: usize,
) -> Result<(QueryGraph, SchemeDescriptor), ConstructionError> {
    if c < 3 {
        return Err(ConstructionError::TooFewColors { c, min: 3 });
    }
    if n < c {
        return Err(ConstructionError::TooFewBalls { n, min: c });
    }
    let parts = consecutive_parts(&equipartition_sizes(n, c - 1));
    let mut edges = Vec::new();
    cross_part_edges(&parts, &mut edges);
    for p in &parts {
        cycle_edges(p, &mut edges);
    }
    let graph = QueryGraph::from_pairs_dedup(n, edges).expect("valid edges");
    let descriptor = SchemeDescriptor {
        family: SchemeFamily::TuranCycles,
        n,
        k: None,
        c: Some(c),
        parts,
    };
    Ok((graph, descriptor))
}

/// Three-color plurality constructions.
///
/// `n = 2k`: `K_{k,k}` on `u_1..u_k`, `v_1..v_k` plus the paths along each
/// side, minus the matching `u_i v_i` for `i = 2..k-1`; `k(k+1)` edges.
/// `n = 2k+1`: `K_{k+1,k}` plus the path `u_1..u_{k+1}`; `k^2 + 2k` edges.
/// The `u` side is `0..`, the `v` side follows it.
pub fn c3_graph(n: usize) -> Result<(QueryGraph, SchemeDescriptor), ConstructionError> {
    if n < 4 {
        return Err(ConstructionError::TooFewBalls { n, min: 4 });
    }
    let k = n / 2;
    let u_len = n - k;
    let u: Vec<BallId> = (0..u_len).collect();
    let v: Vec<BallId> = (u_len..n).collect();
    let mut edges = Vec::new();
    let family = if n.is_multiple_of(2) {
        for (i, &a) in u.iter().enumerate() {
            for (j, &b) in v.iter().enumerate() {
                // matching edges u_i v_i for 1-based i in 2..=k-1
                let matched = i == j && i >= 1 && i + 1 < k;
                if !matched {
                    edges.push((a, b));
                }
            }
        }
        path_edges(&u, &mut edges);
        path_edges(&v, &mut edges);
        SchemeFamily::C3Even
    } else {
        cross_part_edges(&[u.clone(), v.clone()], &mut edges);
        path_edges(&u, &mut edges);
        SchemeFamily::C3Odd
    };
    let graph = QueryGraph::from_pairs_dedup(n, edges).expect("valid edges");
    let descriptor = SchemeDescriptor {
        family,
        n,
        k: Some(k),
        c: Some(3),
        parts: vec![u, v],
    };
    Ok((graph, descriptor))
}

/// Sum over `(v, A_i)` with `w(A_i) - w(v) > w(A_c)` of the excess.
/// Zero exactly when the balancing property holds.
pub fn balance_potential(instance: &WeightedInstance, parts: &[Vec<BallId>]) -> BigUint {
    let weights: Vec<BigUint> = parts.iter().map(|p| instance.weight_of(p)).collect();
    let Some(floor) = weights.iter().min() else {
        return BigUint::default();
    };
    let mut potential = BigUint::default();
    for (part, w) in parts.iter().zip(&weights) {
        for &v in part {
            let rest = w - instance.weight(v);
            if rest > *floor {
                potential += rest - floor;
            }
        }
    }
    potential
}

fn sort_parts(instance: &WeightedInstance, parts: &mut [Vec<BallId>]) {
    for p in parts.iter_mut() {
        p.sort_unstable();
    }
    parts.sort_by(|a, b| {
        instance
            .weight_of(b)
            .cmp(&instance.weight_of(a))
            .then_with(|| a[0].cmp(&b[0]))
    });
}

/// One move of the balancing rule, or `None` when no pair violates it.
/// Moves the lowest-index violating ball of the first violating part into
/// the lightest part, then restores the weight order.
pub fn balance_step(instance: &WeightedInstance, parts: &mut [Vec<BallId>]) -> Option<BallId> {
    let last = parts.len() - 1;
    let floor = instance.weight_of(&parts[last]);
    let mut found = None;
    'outer: for (i, part) in parts.iter().enumerate().take(last) {
        let w = instance.weight_of(part);
        for (pos, &v) in part.iter().enumerate() {
            if &w - instance.weight(v) > floor {
                found = Some((i, pos));
                break 'outer;
            }
        }
    }
    let (i, pos) = found?;
    let v = parts[i].remove(pos);
    parts[last].push(v);
    sort_parts(instance, parts);
    Some(v)
}

/// Partition into `c` parts `A_1..A_c` with `w(A_1) >= .. >= w(A_c)` and
/// `w(A_i) - w(v) <= w(A_c)` for every `v` in `A_i`.
///
/// Starts from balls sorted by descending weight dealt round-robin, then
/// applies [`balance_step`] until no violation remains.
pub fn balance_partition(
    instance: &WeightedInstance,
    c: usize,
) -> Result<Vec<Vec<BallId>>, ConstructionError> {
    let n = instance.n();
    if c < 2 {
        return Err(ConstructionError::TooFewColors { c, min: 2 });
    }
    if c > n {
        return Err(ConstructionError::TooFewBalls { n, min: c });
    }
    let mut order: Vec<BallId> = (0..n).collect();
    order.sort_by(|&a, &b| instance.weight(b).cmp(instance.weight(a)).then(a.cmp(&b)));
    let mut parts = vec![Vec::new(); c];
    for (i, b) in order.into_iter().enumerate() {
        parts[i % c].push(b);
    }
    sort_parts(instance, &mut parts);
    while balance_step(instance, &mut parts).is_some() {}
    Ok(parts)
}

/// Complete c-partite graph over [`balance_partition`] plus a spanning path
/// inside each part.
pub fn weighted_plurality_scheme(
    instance: &WeightedInstance,
    c: usize,
) -> Result<(QueryGraph, SchemeDescriptor), ConstructionError> {
    let parts = balance_partition(instance, c)?;
    let mut edges = Vec::new();
    cross_part_edges(&parts, &mut edges);
    for p in &parts {
        path_edges(p, &mut edges);
    }
    let n = instance.n();
    let graph = QueryGraph::from_pairs_dedup(n, edges).expect("valid edges");
    let descriptor = SchemeDescriptor {
        family: SchemeFamily::WeightedPlurality,
        n,
        k: None,
        c: Some(c),
        parts,
    };
    Ok((graph, descriptor))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harary_edge_counts() {
        assert_eq!(harary_graph(6, 3).unwrap().edge_count(), 9);
        assert_eq!(harary_graph(5, 4).unwrap(), QueryGraph::complete(5));
        assert_eq!(harary_graph(7, 4).unwrap().edge_count(), 14);
        assert_eq!(harary_graph(7, 3).unwrap().edge_count(), 11);
        assert_eq!(harary_graph(6, 1).unwrap().edge_count(), 5);
        assert!(harary_graph(4, 4).is_err());
        assert!(harary_graph(4, 0).is_err());
    }

    #[test]
    fn kmajority_examples() {
        assert_eq!(kmajority_graph(6, 4).unwrap().edge_count(), 9);
        assert_eq!(kmajority_graph(9, 5).unwrap().edge_count(), 23);
        let g = kmajority_graph(7, 6).unwrap();
        assert_eq!(g.edge_count(), 7);
        assert!((0..7).all(|v| g.degree(v) == 2));
        assert!(kmajority_graph(6, 3).is_err());
        assert!(kmajority_graph(6, 6).is_err());
    }

    #[test]
    fn turan_examples() {
        let (g, d) = turan_cycles(7, 3).unwrap();
        assert_eq!(d.parts, vec![vec![0, 1, 2, 3], vec![4, 5, 6]]);
        assert_eq!(g.edge_count(), 19);
        let (g, _) = turan_cycles(4, 3).unwrap();
        assert_eq!(g, QueryGraph::complete(4));
        let (g, d) = turan_cycles(9, 4).unwrap();
        assert_eq!(d.parts.len(), 3);
        assert_eq!(g.edge_count(), 36);
        assert!(turan_cycles(5, 2).is_err());
    }

    #[test]
    fn c3_examples() {
        assert_eq!(c3_graph(6).unwrap().0.edge_count(), 12);
        assert_eq!(c3_graph(4).unwrap().0.edge_count(), 6);
        assert_eq!(c3_graph(7).unwrap().0.edge_count(), 15);
        let (g, d) = c3_graph(6).unwrap();
        assert_eq!(d.family, SchemeFamily::C3Even);
        // u_2 v_2 removed: vertex 1 and 4
        assert!(!g.has_edge(1, 4));
        assert!(g.has_edge(0, 3) && g.has_edge(2, 5));
        assert!(c3_graph(3).is_err());
    }

    fn satisfies_balance(instance: &WeightedInstance, parts: &[Vec<BallId>]) -> bool {
        let w: Vec<BigUint> = parts.iter().map(|p| instance.weight_of(p)).collect();
        let floor = w.last().unwrap();
        w.windows(2).all(|p| p[0] >= p[1])
            && parts
                .iter()
                .zip(&w)
                .all(|(p, wp)| p.iter().all(|&v| wp - instance.weight(v) <= *floor))
    }

    #[test]
    fn balance_examples() {
        let unit = WeightedInstance::unit(6);
        let parts = balance_partition(&unit, 3).unwrap();
        assert!(parts.iter().all(|p| p.len() == 2));
        assert!(satisfies_balance(&unit, &parts));

        let s = WeightedInstance::from_u64s(&[5, 1, 1, 1]).unwrap();
        let parts = balance_partition(&s, 2).unwrap();
        assert_eq!(parts, vec![vec![0], vec![1, 2, 3]]);

        let s = WeightedInstance::from_u64s(&[4, 3, 3, 2]).unwrap();
        let parts = balance_partition(&s, 2).unwrap();
        assert!(satisfies_balance(&s, &parts));
        assert_eq!(balance_potential(&s, &parts), BigUint::default());

        assert!(balance_partition(&WeightedInstance::unit(2), 3).is_err());
    }

    #[test]
    fn weighted_scheme_examples() {
        let (g, _) = weighted_plurality_scheme(&WeightedInstance::unit(6), 3).unwrap();
        assert_eq!(g.edge_count(), 15);
        let (g, d) = weighted_plurality_scheme(&WeightedInstance::unit(4), 4).unwrap();
        assert_eq!(g, QueryGraph::complete(4));
        assert!(d.parts.iter().all(|p| p.len() == 1));
        let s = WeightedInstance::from_u64s(&[5, 1, 1, 1]).unwrap();
        let (g, _) = weighted_plurality_scheme(&s, 2).unwrap();
        assert_eq!(g.edge_count(), 5);
    }

    #[test]
    fn descriptor_json_round_trip() {
        let (_, d) = turan_cycles(7, 3).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains("turan-cycles"));
        let back: SchemeDescriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.part_of().unwrap(), vec![0, 0, 0, 0, 1, 1, 1]);
    }
}

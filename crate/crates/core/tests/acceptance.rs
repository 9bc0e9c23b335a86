//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::Instant;

use ballsearch::adaptive::{
    adversary_mindeg, adversary_prop4, game_value, prop3_even_strategy, Adversary,
};
use ballsearch::analysis::{decode, decode_structured, vertex_connectivity, Decision, Verifier};
use ballsearch::bounds::{
    adaptive_lower_bounds, binomial, binomial_identity_check, equal_partition_count, non_slavery,
    nonadaptive_formulas, ones_in_binary, prop3_bounds, two_adic_valuation,
};
use ballsearch::constructions::{
    balance_partition, c3_graph, kmajority_graph, turan_cycles, weighted_plurality_scheme,
    SchemeDescriptor,
};
use ballsearch::model::{all_pairs, answers_for, enumerate_colorings, evaluate};
use ballsearch::{Edge, ProblemSpec, QueryGraph, WeightedInstance};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn majority_edge_oracle(n: u64) -> u64 {
    // ceil(ceil(n/2) * n / 2)
    (n.div_ceil(2) * n).div_ceil(2)
}

fn criterion_1() -> Outcome {
    let mut counts = Vec::new();
    for n in 6..=9usize {
        let g = kmajority_graph(n, n / 2 + 1).map_err(|e| e.to_string())?;
        let want = majority_edge_oracle(n as u64) as usize;
        ensure(g.edge_count() == want, || {
            format!("n = {n}: {} edges, expected {want}", g.edge_count())
        })?;
        counts.push(g.edge_count());
        let p = ProblemSpec::majority(WeightedInstance::unit(n), 3).unwrap();
        let ok = Verifier::new(&p).unwrap().solves(&g).unwrap();
        ensure(ok, || format!("n = {n}: scheme does not solve majority"))?;
    }
    Ok(format!("n = 6..9 edge counts {counts:?}; all solve"))
}

fn criterion_2() -> Outcome {
    let p = ProblemSpec::majority(WeightedInstance::unit(6), 3).unwrap();
    let verifier = Verifier::new(&p).unwrap();
    let mut checked = 0u64;
    for mask in 0u128..(1 << 15) {
        if mask.count_ones() > 8 {
            continue;
        }
        checked += 1;
        let g = QueryGraph::from_pair_mask(6, mask);
        ensure(!verifier.solves(&g).unwrap(), || {
            format!(
                "graph with {} edges solves: {:?}",
                g.edge_count(),
                g.edges()
            )
        })?;
    }
    ensure(checked == 22819, || format!("enumerated {checked} graphs"))?;
    let nine = kmajority_graph(6, 4).unwrap();
    ensure(verifier.solves(&nine).unwrap(), || {
        "9-edge scheme fails".into()
    })?;
    Ok(format!(
        "{checked} graphs with <= 8 edges all fail; 9 edges suffice"
    ))
}

fn criterion_3() -> Outcome {
    let p = ProblemSpec::k_majority(WeightedInstance::unit(6), 4u32, 3).unwrap();
    let verifier = Verifier::new(&p).unwrap();
    let mut solving = 0;
    for mask in 0u128..(1 << 15) {
        let g = QueryGraph::from_pair_mask(6, mask);
        let solves = verifier.solves(&g).unwrap();
        let connected3 = vertex_connectivity(&g).unwrap() >= 3;
        ensure(solves == connected3, || {
            format!(
                "mismatch on {:?}: solves {solves}, 3-connected {connected3}",
                g.edges()
            )
        })?;
        solving += usize::from(solves);
    }
    Ok(format!("32768 graphs, {solving} solve, zero exceptions"))
}

fn criterion_4() -> Outcome {
    for c in [3u64, 4] {
        for n in 5..=9u64 {
            let (g, _) = turan_cycles(n as usize, c as usize).map_err(|e| e.to_string())?;
            let p = ProblemSpec::plurality(WeightedInstance::unit(n as usize), c as usize).unwrap();
            ensure(Verifier::new(&p).unwrap().solves(&g).unwrap(), || {
                format!("(n, c) = ({n}, {c}) does not solve plurality")
            })?;
            let m = g.edge_count() as u64;
            // m <= (c-2) n^2 / (2(c-1)) + n
            ensure(2 * (c - 1) * m <= (c - 2) * n * n + 2 * (c - 1) * n, || {
                format!("(n, c) = ({n}, {c}): {m} edges above the upper bound")
            })?;
            let lower = nonadaptive_formulas(n, None, c)
                .get("plurality_lower")
                .unwrap()
                .value_i64() as u64;
            // ceil((n - 1 - (n-1)/(c-1)) n / 2), independently
            let num = ((n - 1) * (c - 1) - (n - 1)) * n;
            let den = 2 * (c - 1);
            let oracle = num.div_ceil(den);
            ensure(lower == oracle && lower <= m, || {
                format!("(n, c) = ({n}, {c}): lower {lower}, oracle {oracle}, edges {m}")
            })?;
        }
    }
    Ok("n = 5..9, c = 3, 4: all solve, counts within both bounds".into())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let problem = ProblemSpec::plurality(WeightedInstance::unit(7), 3).unwrap();
    let pairs: Vec<Edge> = all_pairs(7).collect();
    let mut accepted = 0;
    while accepted < 1000 {
        let edges: Vec<Edge> = pairs
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let g = QueryGraph::new(7, edges).unwrap();
        if g.min_degree().unwrap() > 3 {
            continue;
        }
        accepted += 1;
        let ev =
            adversary_mindeg(&g, 3).ok_or_else(|| format!("no evidence for {:?}", g.edges()))?;
        ensure(ev.validate(&g, &problem), || {
            format!("invalid evidence for {:?}", g.edges())
        })?;
    }
    Ok("1000/1000 random graphs yield valid evidence".into())
}

fn criterion_6() -> Outcome {
    for k in 2..=4usize {
        let (g, _) = c3_graph(2 * k).map_err(|e| e.to_string())?;
        ensure(g.edge_count() == k * (k + 1), || {
            format!("n = {}: {} edges", 2 * k, g.edge_count())
        })?;
        let p = ProblemSpec::plurality(WeightedInstance::unit(2 * k), 3).unwrap();
        ensure(Verifier::new(&p).unwrap().solves(&g).unwrap(), || {
            format!("n = {} fails", 2 * k)
        })?;
    }
    for k in 2..=3usize {
        let (g, _) = c3_graph(2 * k + 1).map_err(|e| e.to_string())?;
        ensure(g.edge_count() == k * k + 2 * k, || {
            format!("n = {}: {} edges", 2 * k + 1, g.edge_count())
        })?;
        let p = ProblemSpec::plurality(WeightedInstance::unit(2 * k + 1), 3).unwrap();
        ensure(Verifier::new(&p).unwrap().solves(&g).unwrap(), || {
            format!("n = {} fails", 2 * k + 1)
        })?;
    }
    let p = ProblemSpec::plurality(WeightedInstance::unit(4), 3).unwrap();
    let verifier = Verifier::new(&p).unwrap();
    let best = (0u128..(1 << 6))
        .map(|m| QueryGraph::from_pair_mask(4, m))
        .filter(|g| verifier.solves(g).unwrap())
        .map(|g| g.edge_count())
        .min();
    ensure(best == Some(6), || {
        format!("minimum solving edge count at n = 4: {best:?}")
    })?;
    Ok("even k = 2..4 and odd k = 2, 3 match; optimum at n = 4 is 6".into())
}

fn criterion_7() -> Outcome {
    let get = |n, k, name: &str| {
        adaptive_lower_bounds(n, k)
            .unwrap()
            .get(name)
            .unwrap()
            .value_i64()
    };
    let got = [
        get(9, 6, "prop1"),
        get(9, 6, "aigner"),
        get(10, 8, "prop1"),
        get(10, 8, "aigner"),
    ];
    ensure(got == [7, 5, 6, 7], || format!("got {got:?}"))?;
    Ok("(9,6): 7 vs 5; (10,8): 6 vs 7".into())
}

/// Number of carries when adding `a` and `b` in base 2.
fn carries(mut a: u64, mut b: u64) -> u64 {
    let (mut carry, mut count) = (0, 0);
    while a > 0 || b > 0 || carry > 0 {
        let s = (a & 1) + (b & 1) + carry;
        carry = s >> 1;
        count += carry;
        a >>= 1;
        b >>= 1;
    }
    count
}

fn criterion_8() -> Outcome {
    for n in 1..=40u64 {
        for k in 1..=n {
            ensure(binomial_identity_check(n, k), || {
                format!("identity fails at ({n}, {k})")
            })?;
        }
        for k in 0..=n {
            let mu = two_adic_valuation(&binomial(n, k)).unwrap();
            ensure(mu == carries(k, n - k), || {
                format!("valuation of C({n},{k}) is {mu}")
            })?;
        }
        if n % 2 == 0 {
            let mu = two_adic_valuation(&binomial(n - 1, n / 2)).unwrap();
            ensure(mu + 1 == u64::from(ones_in_binary(n)), || {
                format!("n = {n}: mu = {mu}")
            })?;
        }
    }
    Ok("identity, carry counts and mu(C(n-1, n/2)) = b(n) - 1 for n <= 40".into())
}

fn criterion_9() -> Outcome {
    for n in 2..=7usize {
        let p = ProblemSpec::majority(WeightedInstance::unit(n), 2).unwrap();
        let v = game_value(&p, 16).map_err(|e| e.to_string())?.value;
        let want = n as u32 - ones_in_binary(n as u64);
        ensure(v == want, || format!("n = {n}: value {v}, expected {want}"))?;
    }
    let s = WeightedInstance::from_u64s(&[1, 10, 11, 100, 101, 110, 111]).unwrap();
    let p = ProblemSpec::majority(s.clone(), 2).unwrap();
    let sol = game_value(&p, 16).map_err(|e| e.to_string())?;
    let pcount = equal_partition_count(&s);
    let lower = prop3_bounds(&s)
        .unwrap()
        .bounds
        .get("prop3_lower")
        .unwrap()
        .value_i64();
    ensure(
        sol.value == 5 && pcount == BigUint::from(4u32) && lower == 4,
        || format!("value {}, p = {pcount}, lower {lower}", sol.value),
    )?;
    ensure(sol.tree.first_error(&p).is_none(), || {
        "optimal tree answers wrongly".into()
    })?;
    Ok("n - b(n) for n = 2..7; weighted value 5 with p = 4, lower 4".into())
}

/// Non-decreasing sequences of length `len` over `1..=max`.
fn multisets(len: usize, max: u64) -> Vec<Vec<u64>> {
    fn go(len: usize, lo: u64, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            go(len, v, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 1, max, &mut Vec::new(), &mut out);
    out
}

fn criterion_10() -> Outcome {
    let mut checked = 0;
    for n in 1..=6usize {
        for ws in multisets(n, 4) {
            let s = WeightedInstance::from_u64s(&ws).unwrap();
            let p = equal_partition_count(&s);
            if p == BigUint::from(0u32) || (&p % 2u32) == BigUint::from(1u32) {
                continue;
            }
            checked += 1;
            let tree = prop3_even_strategy(&s).map_err(|e| format!("{ws:?}: {e}"))?;
            ensure(tree.depth() + 2 <= n, || {
                format!("{ws:?}: depth {}", tree.depth())
            })?;
            let problem = ProblemSpec::majority(s, 2).unwrap();
            if let Some(c) = tree.first_error(&problem) {
                return Err(format!("{ws:?}: wrong verdict on {c}"));
            }
        }
    }
    Ok(format!(
        "{checked} multisets with even p: correct within n - 2, assertion silent"
    ))
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sets = 0;
    for n in 2..=8usize {
        let s = WeightedInstance::unit(n);
        if !non_slavery(&s).unwrap() {
            continue;
        }
        let problem = ProblemSpec::majority(s.clone(), 2).unwrap();
        let budget = n / 2 - 1;
        let pairs: Vec<Edge> = all_pairs(n).collect();
        let query_sets: Vec<Vec<Edge>> = if n <= 6 {
            subsets(&pairs, budget)
        } else {
            (0..500)
                .map(|_| pairs.choose_multiple(&mut rng, budget).copied().collect())
                .collect()
        };
        for qs in query_sets {
            sets += 1;
            let mut adv = adversary_prop4(&s).map_err(|e| e.to_string())?;
            for &(u, v) in &qs {
                adv.answer(u, v);
            }
            let g = QueryGraph::new(n, qs.clone()).unwrap();
            let ev = adv
                .fooling_evidence()
                .ok_or_else(|| format!("n = {n}: no evidence after {qs:?}"))?;
            ensure(ev.validate(&g, &problem), || {
                format!("n = {n}: invalid evidence after {qs:?}")
            })?;
        }
        let v = game_value(&problem, 16).map_err(|e| e.to_string())?.value as usize;
        ensure(v >= n / 2, || {
            format!("n = {n}: game value {v} below floor(n/2)")
        })?;
    }
    Ok(format!("{sets} query sets survived with valid evidence"))
}

fn subsets(pool: &[Edge], size: usize) -> Vec<Vec<Edge>> {
    fn go(pool: &[Edge], size: usize, start: usize, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            go(pool, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(pool, size, 0, &mut Vec::new(), &mut out);
    out
}

fn criterion_12() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let c = 3usize;
    for _ in 0..200 {
        let n = rng.gen_range(3..=8usize);
        let ws: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
        let s = WeightedInstance::from_u64s(&ws).unwrap();
        let (g, _) = weighted_plurality_scheme(&s, c).map_err(|e| e.to_string())?;
        let p = ProblemSpec::plurality(s, c).unwrap();
        ensure(Verifier::new(&p).unwrap().solves(&g).unwrap(), || {
            format!("{ws:?} fails")
        })?;
        let (n, c, m) = (n as u64, c as u64, g.edge_count() as u64);
        // m <= (c-1) n^2 / (2c) + n - c
        ensure(2 * c * m <= (c - 1) * n * n + 2 * c * (n - c), || {
            format!("{ws:?}: {m} edges")
        })?;
    }
    for _ in 0..1000 {
        let n = rng.gen_range(2..=14usize);
        let c = rng.gen_range(2..=n.min(6));
        let ws: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=30)).collect();
        let s = WeightedInstance::from_u64s(&ws).unwrap();
        let parts = balance_partition(&s, c).map_err(|e| e.to_string())?;
        let w: Vec<u64> = parts
            .iter()
            .map(|p| p.iter().map(|&b| ws[b]).sum())
            .collect();
        ensure(w.windows(2).all(|x| x[0] >= x[1]), || {
            format!("{ws:?}: unsorted {w:?}")
        })?;
        let last = *w.last().unwrap();
        for (part, &wp) in parts.iter().zip(&w) {
            for &v in part {
                ensure(wp - ws[v] <= last, || {
                    format!("{ws:?}, c = {c}: ball {v} violates")
                })?;
            }
        }
    }
    Ok("200 schemes solve within the edge bound; 1000 partitions balanced".into())
}

fn agree(g: &QueryGraph, d: &SchemeDescriptor, p: &ProblemSpec) -> Result<usize, String> {
    let mut count = 0;
    for coloring in enumerate_colorings(p.n(), p.colors()) {
        let answers = answers_for(g, &coloring).unwrap();
        let reference = decode(g, &answers, p).map_err(|e| e.to_string())?;
        let fast = decode_structured(d, &answers, p).map_err(|e| format!("{coloring}: {e}"))?;
        ensure(reference == Decision::Decided(fast), || {
            format!("{:?} on {coloring}: {reference:?} vs {fast}", d.family)
        })?;
        let truth = evaluate(p, &coloring);
        ensure(
            match fast {
                ballsearch::Verdict::NoTarget => truth.is_empty(),
                ballsearch::Verdict::Witness(b) => truth.contains(&b),
            },
            || format!("wrong verdict on {coloring}"),
        )?;
        count += 1;
    }
    Ok(count)
}

fn criterion_13() -> Outcome {
    let c = 3;
    let mut maps = 0;
    for n in 3..=8usize {
        let p = ProblemSpec::plurality(WeightedInstance::unit(n), c).unwrap();
        let (g, d) = turan_cycles(n, c).unwrap();
        maps += agree(&g, &d, &p)?;
        let (g, d) = weighted_plurality_scheme(p.instance(), c).unwrap();
        maps += agree(&g, &d, &p)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..12 {
        let n = rng.gen_range(3..=8usize);
        let ws: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
        let s = WeightedInstance::from_u64s(&ws).unwrap();
        let (g, d) = weighted_plurality_scheme(&s, c).unwrap();
        maps += agree(&g, &d, &ProblemSpec::plurality(s, c).unwrap())?;
    }
    Ok(format!("{maps} answer maps agree"))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("majority scheme edge counts and correctness", criterion_1),
        ("majority scheme optimality at n = 6", criterion_2),
        ("k-majority iff (n-k+1)-connected at (6,4,3)", criterion_3),
        ("partite plurality scheme", criterion_4),
        ("minimum-degree adversary", criterion_5),
        ("three-color plurality constructions", criterion_6),
        ("adaptive bound comparison", criterion_7),
        ("binomial identity and 2-adic valuations", criterion_8),
        ("adaptive game values", criterion_9),
        ("even-equipartition strategy", criterion_10),
        ("non-slavery adversary", criterion_11),
        ("weighted plurality scheme and balancing", criterion_12),
        ("structured decoder agreement", criterion_13),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

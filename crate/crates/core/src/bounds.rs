//! Closed-form bounds and counting quantities over exact integers.
//!
//! Nothing here touches floating point. Bounds that are rational before
//! rounding carry the exact fraction alongside the rounded integer.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::model::WeightedInstance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("the 2-adic valuation of zero is undefined")]
    ValuationOfZero,
    #[error("requires k > n/2, got n = {n}, k = {k}")]
    NotAMajorityThreshold { n: u64, k: u64 },
    #[error("no way to split the weights into two equal halves (p = 0)")]
    NoEquipartition,
    #[error("the weight multiset is not non-slavery")]
    NotNonSlavery,
    #[error("instance too large for exhaustive subset search ({0} balls)")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
            BoundKind::Exact => "exact",
        })
    }
}

/// A single evaluated formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    /// Short identifier, used as a CSV column name.
    pub name: &'static str,
    pub kind: BoundKind,
    /// The formula, in plain text.
    pub formula: &'static str,
    /// Exact value before rounding.
    pub exact: BigRational,
    /// Integer value: ceiling for lower bounds, floor for upper bounds.
    pub value: BigInt,
}

impl BoundReport {
    fn integer(name: &'static str, kind: BoundKind, formula: &'static str, v: BigInt) -> Self {
        BoundReport {
            name,
            kind,
            formula,
            exact: BigRational::from_integer(v.clone()),
            value: v,
        }
    }

    fn rational(
        name: &'static str,
        kind: BoundKind,
        formula: &'static str,
        q: BigRational,
    ) -> Self {
        let value = match kind {
            BoundKind::Lower => q.ceil().to_integer(),
            BoundKind::Upper => q.floor().to_integer(),
            BoundKind::Exact => {
                assert!(q.is_integer(), "exact bound {name} must be integral");
                q.to_integer()
            }
        };
        BoundReport {
            name,
            kind,
            formula,
            exact: q,
            value,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.exact.is_integer()
    }

    pub fn value_i64(&self) -> i64 {
        self.value.to_i64().expect("bound fits in i64")
    }
}

/// Formulas that could not be evaluated for the requested parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundSet {
    pub reports: Vec<BoundReport>,
    pub notes: Vec<String>,
}

impl BoundSet {
    pub fn get(&self, name: &str) -> Option<&BoundReport> {
        self.reports.iter().find(|r| r.name == name)
    }
}

/// Number of ones in the binary representation of `n`.
pub fn ones_in_binary(n: u64) -> u32 {
    n.count_ones()
}

/// Largest `l` with `2^l | value`.
pub fn two_adic_valuation(value: &BigUint) -> Result<u64, BoundsError> {
    value.trailing_zeros().ok_or(BoundsError::ValuationOfZero)
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn int(v: impl Into<BigInt>) -> BigInt {
    v.into()
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Minimum edge count of a `ceil(n/2)`-connected graph on `n` vertices.
pub fn majority_edges(n: u64) -> u64 {
    let half = n.div_ceil(2);
    (half * n).div_ceil(2)
}

/// Exact value `k(k+1)` for `n = 2k`, three colors.
pub fn c3_even_value(k: u64) -> u64 {
    k * (k + 1)
}

/// `(c-2) n^2 / (2(c-1)) + n`.
pub fn plurality_upper(n: u64, c: u64) -> BigRational {
    ratio(int(c - 2) * int(n) * int(n), int(2 * (c - 1))) + ratio(int(n), 1)
}

/// `ceil((n - 1 - (n-1)/(c-1)) n / 2)` as an exact rational before rounding.
pub fn plurality_lower(n: u64, c: u64) -> BigRational {
    let inner = ratio(int(n) - 1, 1) - ratio(int(n) - 1, int(c - 1));
    inner * ratio(int(n), 2)
}

/// `(c-1) n^2 / (2c) + n - c`.
pub fn weighted_plurality_upper(n: u64, c: u64) -> BigRational {
    ratio(int(c - 1) * int(n) * int(n), int(2 * c)) + ratio(int(n) - int(c), 1)
}

/// Every applicable non-adaptive formula for `(n, k, c)`.
///
/// `k` is only consulted by the two-color k-majority formula.
pub fn nonadaptive_formulas(n: u64, k: Option<u64>, c: u64) -> BoundSet {
    let mut set = BoundSet::default();

    if n >= c && c > 2 {
        set.reports.push(BoundReport::integer(
            "majority_edges",
            BoundKind::Exact,
            "ceil(ceil(n/2) n / 2)",
            int(majority_edges(n)),
        ));
    } else {
        set.notes.push(format!(
            "majority_edges: needs n >= c > 2 (n = {n}, c = {c})"
        ));
    }

    match k {
        Some(k) if n >= 3 && 2 * k > n && n < 2 * k => {
            let v = if n < 2 * k - 1 { n - 1 } else { n - 2 };
            set.reports.push(BoundReport::integer(
                "aigner_nonadaptive",
                BoundKind::Exact,
                "n - 1, or n - 2 when n = 2k - 1",
                int(v),
            ));
        }
        Some(k) => set.notes.push(format!(
            "aigner_nonadaptive: needs n >= 3 and n <= 2k - 1 (n = {n}, k = {k})"
        )),
        None => {}
    }

    if c > 2 {
        set.reports.push(BoundReport::rational(
            "plurality_lower",
            BoundKind::Lower,
            "(n - 1 - (n-1)/(c-1)) n / 2",
            plurality_lower(n, c),
        ));
        set.reports.push(BoundReport::rational(
            "plurality_upper",
            BoundKind::Upper,
            "(c-2) n^2 / (2(c-1)) + n",
            plurality_upper(n, c),
        ));
    } else {
        set.notes
            .push(format!("plurality bounds: need c > 2 (c = {c})"));
    }

    if c == 3 && n >= 4 {
        let half = n / 2;
        if n.is_multiple_of(2) {
            set.reports.push(BoundReport::integer(
                "c3_even",
                BoundKind::Exact,
                "k(k+1) for n = 2k",
                int(c3_even_value(half)),
            ));
        } else {
            let base = ratio(int(half + 1) * int(2 * half + 1), 2);
            set.reports.push(BoundReport::rational(
                "c3_lower",
                BoundKind::Lower,
                "(k+1)(2k+1)/2 for n = 2k+1",
                base.clone(),
            ));
            set.reports.push(BoundReport::rational(
                "c3_upper",
                BoundKind::Upper,
                "(k+1)(2k+1)/2 + k - 1 for n = 2k+1",
                base + ratio(int(half) - 1, 1),
            ));
            // The explicit odd construction, k^2 + 2k edges.
            set.reports.push(BoundReport::integer(
                "c3_odd_construction",
                BoundKind::Upper,
                "k^2 + 2k for n = 2k+1",
                int(half * half + 2 * half),
            ));
        }
    } else if c == 3 {
        set.notes.push(format!("c3_even: needs n >= 4 (n = {n})"));
    }

    if n >= c && c >= 2 {
        set.reports.push(BoundReport::rational(
            "weighted_plurality_upper",
            BoundKind::Upper,
            "(c-1) n^2 / (2c) + n - c",
            weighted_plurality_upper(n, c),
        ));
    }
    set
}

fn binomial_tail(n: u64, k: u64) -> BigUint {
    (k..=n).map(|i| binomial(n, i)).sum()
}

fn shifted_tail(n: u64, k: u64) -> BigUint {
    (k.max(1)..=n).map(|i| binomial(n - 1, i - 1)).sum()
}

fn minus_valuation(base: i64, value: &BigUint) -> BigInt {
    let mu = two_adic_valuation(value).expect("positive tail sum");
    int(base) - int(mu)
}

/// Adaptive two-color lower bounds for `M_2(n, k)` and `Fix_2(n, k)`.
pub fn adaptive_lower_bounds(n: u64, k: u64) -> Result<BoundSet, BoundsError> {
    if 2 * k <= n || k > n || n == 0 {
        return Err(BoundsError::NotAMajorityThreshold { n, k });
    }
    let mut set = BoundSet::default();
    let base = n as i64 - 1;
    set.reports.push(BoundReport::integer(
        "aigner",
        BoundKind::Lower,
        "n - 1 - mu(C(n-1, k-1))",
        minus_valuation(base, &binomial(n - 1, k - 1)),
    ));
    set.reports.push(BoundReport::integer(
        "prop1",
        BoundKind::Lower,
        "n - 1 - mu(sum_{i>=k} C(n, i))",
        minus_valuation(base, &binomial_tail(n, k)),
    ));
    let fix = minus_valuation(base, &shifted_tail(n, k));
    set.reports.push(BoundReport::integer(
        "prop2",
        BoundKind::Lower,
        "n - 2 - mu(sum_{i>=k} C(n-1, i-1))",
        &fix - 1,
    ));
    set.reports.push(BoundReport::integer(
        "prop2_fix",
        BoundKind::Lower,
        "n - 1 - mu(sum_{i>=k} C(n-1, i-1)), fixed ball",
        fix,
    ));
    if k == n / 2 + 1 {
        set.reports.push(BoundReport::integer(
            "saks_werman",
            BoundKind::Exact,
            "n - b(n)",
            int(n as i64 - i64::from(ones_in_binary(n))),
        ));
    } else {
        set.notes
            .push("saks_werman: only for the majority threshold k = floor(n/2) + 1".into());
    }
    Ok(set)
}

/// `2 sum_{i=k}^n C(n-1, i-1) == C(n-1, k-1) + sum_{i=k}^n C(n, i)`.
pub fn binomial_identity_check(n: u64, k: u64) -> bool {
    if k == 0 || k > n {
        return false;
    }
    let lhs = shifted_tail(n, k) * 2u32;
    let rhs = binomial(n - 1, k - 1) + binomial_tail(n, k);
    lhs == rhs
}

/// Number of unordered splits of the weights into two halves of equal weight.
///
/// Counts labeled subsets `T` with `2 w(T) = w(S)` by a sparse subset-sum
/// table, then halves (a subset never equals its complement).
pub fn equal_partition_count(instance: &WeightedInstance) -> BigUint {
    let total = instance.total();
    if total.is_odd() {
        return BigUint::zero();
    }
    let half = total / 2u32;
    let mut table: HashMap<BigUint, BigUint> = HashMap::new();
    table.insert(BigUint::zero(), BigUint::one());
    for w in instance.weights() {
        let mut next = table.clone();
        for (sum, count) in &table {
            let s = sum + w;
            if s <= half {
                *next.entry(s).or_insert_with(BigUint::zero) += count;
            }
        }
        table = next;
    }
    table.get(&half).cloned().unwrap_or_default() / 2u32
}

/// Output of [`prop3_bounds`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop3Report {
    pub p: BigUint,
    pub bounds: BoundSet,
    /// `mu(p) == 0`, which holds exactly when `n - 1` queries are required.
    pub needs_n_minus_1: bool,
}

pub fn prop3_bounds(instance: &WeightedInstance) -> Result<Prop3Report, BoundsError> {
    let p = equal_partition_count(instance);
    if p.is_zero() {
        return Err(BoundsError::NoEquipartition);
    }
    let n = instance.n() as i64;
    let mu = two_adic_valuation(&p)?;
    let mut bounds = BoundSet::default();
    bounds.reports.push(BoundReport::integer(
        "prop3_lower",
        BoundKind::Lower,
        "n - 1 - mu(p)",
        int(n - 1 - mu as i64),
    ));
    if p.is_even() {
        bounds.reports.push(BoundReport::integer(
            "prop3_upper",
            BoundKind::Upper,
            "n - 2 for even p",
            int(n - 2),
        ));
    } else {
        bounds
            .notes
            .push("prop3_upper: only for an even number of equipartitions".into());
    }
    Ok(Prop3Report {
        p,
        bounds,
        needs_n_minus_1: mu == 0,
    })
}

/// Two-color majority outcome in labeled terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TwoColorOutcome {
    RedWins,
    BlueWins,
    NoMajority,
}

fn two_color_outcome(red: &BigUint, blue: &BigUint, total: &BigUint) -> TwoColorOutcome {
    if red * 2u32 > *total {
        TwoColorOutcome::RedWins
    } else if blue * 2u32 > *total {
        TwoColorOutcome::BlueWins
    } else {
        TwoColorOutcome::NoMajority
    }
}

/// Largest instance [`non_slavery`] accepts.
pub const NON_SLAVERY_MAX_BALLS: usize = 25;

/// Whether every ball can flip the two-color majority outcome under some
/// coloring of the remaining balls. A single ball is reported as not
/// non-slavery.
pub fn non_slavery(instance: &WeightedInstance) -> Result<bool, BoundsError> {
    let n = instance.n();
    if n > NON_SLAVERY_MAX_BALLS {
        return Err(BoundsError::TooLarge(n));
    }
    if n == 1 {
        return Ok(false);
    }
    let total = instance.total();
    let mut checked: HashMap<&BigUint, bool> = HashMap::new();
    for s in 0..n {
        let ws = instance.weight(s);
        if let Some(&ok) = checked.get(ws) {
            if !ok {
                return Ok(false);
            }
            continue;
        }
        // achievable red weights over the remaining balls
        let mut sums = std::collections::HashSet::new();
        sums.insert(BigUint::zero());
        for (i, w) in instance.weights().iter().enumerate() {
            if i == s {
                continue;
            }
            let extra: Vec<BigUint> = sums.iter().map(|x| x + w).collect();
            sums.extend(extra);
        }
        let rest = total - ws;
        let matters = sums.iter().any(|red| {
            let blue = &rest - red;
            two_color_outcome(&(red + ws), &blue, total)
                != two_color_outcome(red, &(&blue + ws), total)
        });
        checked.insert(ws, matters);
        if !matters {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `M_2(S) >= floor(n/2)` for non-slavery weights.
pub fn prop4_bound(instance: &WeightedInstance) -> Result<BoundReport, BoundsError> {
    if !non_slavery(instance)? {
        return Err(BoundsError::NotNonSlavery);
    }
    Ok(BoundReport::integer(
        "prop4",
        BoundKind::Lower,
        "floor(n/2) for non-slavery weights",
        int(instance.n() as i64 / 2),
    ))
}

/// Renders a rational with `digits` decimals using `.` as the separator.
pub fn decimal_string(q: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (q * BigRational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let negative = scaled.is_negative();
    let abs = scaled.abs();
    let (whole, frac) = abs.div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    format!(
        "{sign}{whole}.{:0>width$}",
        frac.to_string(),
        width = digits as usize
    )
}

/// Exact fraction `p/q` (or just `p` when integral).
pub fn fraction_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

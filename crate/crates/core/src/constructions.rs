//! Construction generators: explicit families of log pairs whose volumes
//! form strictly increasing sequences with prescribed rational limits, plus
//! the bound constants and the standard-coefficient sum enumerations that
//! feed the lower-bound estimates.
//!
//! All volumes and pairings returned here are computed through the
//! intersection form of the [`crate::surfaces`] module; the closed forms
//! (`2(n-2)`, `2n-3`, `V - b^2/s`, `(n-3)^2 - sum 1/s_j`) appear only in
//! tests.

use std::collections::BTreeMap;

use num_integer::Integer;

use crate::rational::Rat;
use crate::surfaces::{BaseKind, Divisor, LogPair, PointSpec, SurfaceConfig, SurfaceError};

/// Errors and signals from the construction generators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("parameter {name} = {value} out of range; need {required}")]
    ParameterOutOfRange {
        name: &'static str,
        value: String,
        required: &'static str,
    },
    #[error("curve {curve:?} must have boundary coefficient 1, found {value}")]
    CoefficientNotOne { curve: String, value: Rat },
    #[error("curve {curve:?} does not carry a boundary coefficient")]
    MissingBoundaryCurve { curve: String },
    #[error("approach value {value} for {curve:?} must lie strictly between 0 and {bound}")]
    ApproachNotBelow {
        curve: String,
        value: Rat,
        bound: Rat,
    },
}

fn param_err(
    name: &'static str,
    value: impl ToString,
    required: &'static str,
) -> ConstructionError {
    ConstructionError::ParameterOutOfRange {
        name,
        value: value.to_string(),
        required,
    }
}

/// A strictly increasing sequence of volumes converging to a limit.
#[derive(Clone, Debug)]
pub struct VolumeSequence {
    /// Construction inputs, as printable key/value pairs.
    pub parameters: BTreeMap<String, String>,
    /// `(index, volume)` entries.
    pub entries: Vec<(u32, Rat)>,
    pub limit: Rat,
    pub strictly_increasing: bool,
}

impl VolumeSequence {
    /// Entries strictly increase when flagged, and stay below the limit.
    pub fn contract_holds(&self) -> bool {
        let increasing = self.entries.windows(2).all(|w| w[0].1 < w[1].1);
        let below = self.entries.iter().all(|(_, v)| *v < self.limit);
        increasing == self.strictly_increasing && below
    }
}

/// `(P^1 x P^1, 3 horizontal + n vertical coefficient-1 lines)`; the volume
/// sweeps the positive even integers as `n` grows.
pub fn example_even(n: u32) -> Result<(LogPair, Rat), ConstructionError> {
    if n < 3 {
        return Err(param_err("n", n, "n >= 3"));
    }
    let mut c = SurfaceConfig::new(BaseKind::QuadricP1xP1);
    let mut b = Divisor::new();
    for i in 1..=3 {
        c.add_curve(format!("H{i}"), &[("f1", 1)])?;
        b.set(format!("H{i}"), Rat::one());
    }
    for j in 1..=n {
        c.add_curve(format!("V{j}"), &[("f2", 1)])?;
        b.set(format!("V{j}"), Rat::one());
    }
    let pair = LogPair::new(c, b)?;
    let volume = pair.volume()?.value;
    Ok((pair, volume))
}

/// `(F_1, G0 + G1 + G2 + sum of n fibers)` with the negative section `G0`
/// and two sections `G1, G2` of self-intersection 1, all coefficients 1;
/// the volume sweeps the positive odd integers.
pub fn example_odd(n: u32) -> Result<(LogPair, Rat), ConstructionError> {
    if n < 2 {
        return Err(param_err("n", n, "n >= 2"));
    }
    let mut c = SurfaceConfig::new(BaseKind::Hirzebruch(1));
    let mut b = Divisor::new();
    c.add_curve("G0", &[("sigma", 1)])?;
    b.set("G0", Rat::one());
    for i in 1..=2 {
        c.add_curve(format!("G{i}"), &[("sigma", 1), ("f", 1)])?;
        b.set(format!("G{i}"), Rat::one());
    }
    for j in 1..=n {
        c.add_curve(format!("F{j}"), &[("f", 1)])?;
        b.set(format!("F{j}"), Rat::one());
    }
    let pair = LogPair::new(c, b)?;
    let volume = pair.volume()?.value;
    Ok((pair, volume))
}

/// The standard in-set approach to 1: `s -> 1 - 1/s`.
pub fn standard_approach(s: u32) -> Rat {
    Rat::one() - Rat::new(1, s as i64)
}

/// Replaces the coefficients of the target curves by the `s`-th value of the
/// approach sequence (which must lie strictly between 0 and the current
/// coefficient) and recomputes the volume. The volumes increase strictly in
/// `s` toward the volume of the untouched pair.
pub fn perturb_coefficients(
    pair: &LogPair,
    targets: &[&str],
    approach: impl Fn(u32) -> Rat,
    s: u32,
) -> Result<(LogPair, Rat), ConstructionError> {
    // the base pair must itself be lc with big, config-nef K + B
    pair.volume()?;
    let mut boundary = pair.boundary().clone();
    let value = approach(s);
    for t in targets {
        let old = boundary.get(t);
        if old.is_zero() {
            return Err(ConstructionError::MissingBoundaryCurve {
                curve: t.to_string(),
            });
        }
        if !value.is_positive() || value >= old {
            return Err(ConstructionError::ApproachNotBelow {
                curve: t.to_string(),
                value,
                bound: old,
            });
        }
        boundary.set(t.to_string(), value.clone());
    }
    let perturbed = LogPair::new(pair.config().clone(), boundary)?;
    let volume = perturbed.volume()?.value;
    Ok((perturbed, volume))
}

/// Output of [`nklt_blowup_sequence`]: the blown-up pair, its
/// self-intersection number, and the pairings of `K + B'` with every
/// exceptional curve of the chain.
#[derive(Clone, Debug)]
pub struct NkltChain {
    pub pair: LogPair,
    /// `(K + B')^2`, computed through the intersection form.
    pub self_intersection: Rat,
    /// `(K + B') . E_i` in creation order `E_1, ..., E_s`.
    pub exceptional_pairings: Vec<(String, Rat)>,
    /// The coefficient of the second curve, which controls the volume gap.
    pub b2: Rat,
}

fn fresh_prefix(config: &SurfaceConfig, count: u32, stem: &str) -> String {
    let mut prefix = stem.to_string();
    loop {
        let clash = (1..=count).any(|i| config.has_curve(&format!("{prefix}{i}")));
        if !clash {
            return prefix;
        }
        prefix.insert(0, 'X');
    }
}

/// The `s`-step blow-up chain at a node of a coefficient-1 curve `b1` and a
/// positive-coefficient curve `b2`: first the node itself, then each time
/// the point where the newest exceptional curve meets the strict transform
/// of `b1`. The new boundary keeps the strict transforms and assigns
/// `b2 (s-i)/s` to the `i`-th exceptional curve, so all of
/// `E_1, ..., E_{s-1}` pair to zero with `K + B'` and the self-intersection
/// drops by exactly `b2^2/s`.
pub fn nklt_blowup_sequence(
    pair: &LogPair,
    b1: &str,
    b2: &str,
    s: u32,
) -> Result<NkltChain, ConstructionError> {
    if s < 1 {
        return Err(param_err("s", s, "s >= 1"));
    }
    let b1_coeff = pair.boundary().get(b1);
    if !b1_coeff.is_one() {
        return Err(ConstructionError::CoefficientNotOne {
            curve: b1.to_string(),
            value: b1_coeff,
        });
    }
    let b2_coeff = pair.boundary().get(b2);
    if !b2_coeff.is_positive() {
        return Err(ConstructionError::MissingBoundaryCurve {
            curve: b2.to_string(),
        });
    }
    if pair.config().nodes_between(b1, b2)? < 1 {
        return Err(SurfaceError::NoFreeNode {
            a: b1.to_string(),
            b: b2.to_string(),
        }
        .into());
    }

    let mut config = pair.config().clone();
    let prefix = fresh_prefix(&config, s, "E");
    let name = |i: u32| format!("{prefix}{i}");
    config.blow_up(PointSpec::node(b1, b2), name(1))?;
    for i in 2..=s {
        config.blow_up(PointSpec::node(name(i - 1), b1), name(i))?;
    }

    let mut boundary = pair.boundary().clone();
    for i in 1..s {
        let coeff = &b2_coeff * Rat::new((s - i) as i64, s as i64);
        boundary.set(name(i), coeff);
    }
    let new_pair = LogPair::new(config, boundary)?;
    let self_intersection = new_pair.self_intersection()?;
    let kb = new_pair.log_canonical_class()?;
    let mut exceptional_pairings = Vec::with_capacity(s as usize);
    for i in 1..=s {
        let v = new_pair.config().pair_with_curve(&kb, &name(i))?;
        exceptional_pairings.push((name(i), v));
    }
    Ok(NkltChain {
        pair: new_pair,
        self_intersection,
        exceptional_pairings,
        b2: b2_coeff,
    })
}

/// Runs [`nklt_blowup_sequence`] for `s = 1..=s_max` and packages the
/// self-intersection numbers as a [`VolumeSequence`] with limit equal to the
/// volume of the starting pair.
pub fn nklt_volume_sequence(
    pair: &LogPair,
    b1: &str,
    b2: &str,
    s_max: u32,
) -> Result<VolumeSequence, ConstructionError> {
    let limit = pair.volume()?.value;
    let mut entries = Vec::with_capacity(s_max as usize);
    for s in 1..=s_max {
        let chain = nklt_blowup_sequence(pair, b1, b2, s)?;
        entries.push((s, chain.self_intersection));
    }
    let strictly_increasing = entries.windows(2).all(|w| w[0].1 < w[1].1);
    let mut parameters = BTreeMap::new();
    parameters.insert("b1".to_string(), b1.to_string());
    parameters.insert("b2".to_string(), b2.to_string());
    parameters.insert("s_max".to_string(), s_max.to_string());
    Ok(VolumeSequence {
        parameters,
        entries,
        limit,
        strictly_increasing,
    })
}

/// Output of [`iterated_sequence`].
#[derive(Clone, Debug)]
pub struct IteratedResult {
    pub pair: LogPair,
    /// `(K + B')^2` through the intersection form.
    pub self_intersection: Rat,
    /// Pairings of `K + B'` with the strict transforms of the lines.
    pub line_pairings: Vec<(String, Rat)>,
    /// Pairings of `K + B'` with every exceptional curve.
    pub exceptional_pairings: Vec<(String, Rat)>,
}

/// `P^2` with `n` general coefficient-1 lines and an `s_j`-step chain applied
/// at the node `L_j ∩ L_n` for each `j <= n-1` (the repeated centers
/// following the strict transform of `L_j`), with exceptional coefficients
/// `(s_j - i)/s_j`. Signals `NotBig` when the resulting self-intersection is
/// not positive.
pub fn iterated_sequence(n: u32, steps: &[u32]) -> Result<IteratedResult, ConstructionError> {
    if n < 4 {
        return Err(param_err("n", n, "n >= 4"));
    }
    if steps.len() != (n - 1) as usize {
        return Err(param_err("s", format!("{steps:?}"), "exactly n-1 entries"));
    }
    if let Some(bad) = steps.iter().find(|&&s| s < 2) {
        return Err(param_err("s_j", bad, "every s_j >= 2"));
    }

    let mut config = SurfaceConfig::new(BaseKind::ProjectivePlane);
    let mut boundary = Divisor::new();
    for j in 1..=n {
        config.add_curve(format!("L{j}"), &[("L", 1)])?;
        boundary.set(format!("L{j}"), Rat::one());
    }
    let last = format!("L{n}");
    for (jx, &sj) in steps.iter().enumerate() {
        let j = jx as u32 + 1;
        let line = format!("L{j}");
        let name = |i: u32| format!("E{j}_{i}");
        config.blow_up(PointSpec::node(&line, &last), name(1))?;
        for i in 2..=sj {
            config.blow_up(PointSpec::node(name(i - 1), &line), name(i))?;
        }
        for i in 1..sj {
            boundary.set(name(i), Rat::new((sj - i) as i64, sj as i64));
        }
    }
    let pair = LogPair::new(config, boundary)?;
    let self_intersection = pair.self_intersection()?;
    if !self_intersection.is_positive() {
        return Err(SurfaceError::NotBig {
            value: self_intersection,
        }
        .into());
    }
    let kb = pair.log_canonical_class()?;
    let mut line_pairings = Vec::with_capacity(n as usize);
    for j in 1..=n {
        let name = format!("L{j}");
        let v = pair.config().pair_with_curve(&kb, &name)?;
        line_pairings.push((name, v));
    }
    let mut exceptional_pairings = Vec::new();
    for (jx, &sj) in steps.iter().enumerate() {
        let j = jx as u32 + 1;
        for i in 1..=sj {
            let name = format!("E{j}_{i}");
            let v = pair.config().pair_with_curve(&kb, &name)?;
            exceptional_pairings.push((name, v));
        }
    }
    Ok(IteratedResult {
        pair,
        self_intersection,
        line_pairings,
        exceptional_pairings,
    })
}

/// The volume lower bound `v1 / (1 + m t)^2`, valid whenever
/// `floor(m(K+B))` carries a section and `t >= t_m`.
pub fn lower_bound(v1: &Rat, m: u32, t: &Rat) -> Rat {
    let denom = Rat::one() + Rat::from_int(m as i64) * t;
    v1 / denom.square()
}

/// Exhaustively enumerates multisets `(n_1 <= ... <= n_k)` with `n_j >= 2`,
/// `k <= max_len`, and `sum (1 - 1/n_j) = target` for `target` 1 or 2.
///
/// The residual argument bounds the search: chosen terms are non-decreasing,
/// so the current term is at most `r/k0`, where `r` is the remaining budget
/// and `k0` the least number of further terms that can consume `r` (each
/// term is strictly below 1); hence `n <= k0/(k0 - r)`.
pub fn enumerate_standard_sums(
    target: u32,
    max_len: u32,
) -> Result<Vec<Vec<u64>>, ConstructionError> {
    if !(1..=2).contains(&target) {
        return Err(param_err("target", target, "1 or 2"));
    }
    if max_len < 1 {
        return Err(param_err("max_len", max_len, "max_len >= 1"));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    search_sums(Rat::from_int(target as i64), 2, max_len, &mut cur, &mut out);
    Ok(out)
}

fn search_sums(
    remaining: Rat,
    min_n: u64,
    slots: u32,
    cur: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    if remaining.is_zero() {
        out.push(cur.clone());
        return;
    }
    if slots == 0 || !remaining.is_positive() {
        return;
    }
    // least number of further terms (each < 1) that can reach `remaining`
    let k0 = u64::try_from(remaining.floor_int() + 1u32).expect("positive residual");
    if k0 > slots as u64 {
        return;
    }
    // non-decreasing terms: the next term is at most remaining/k0,
    // i.e. n <= k0/(k0 - remaining)
    let k0_rat = Rat::from_int(k0 as i64);
    let n_max_rat = &k0_rat / (&k0_rat - &remaining);
    let n_max = u64::try_from(n_max_rat.floor_int()).unwrap_or(0);
    for n in min_n..=n_max {
        let term = Rat::one() - Rat::new(1, n as i64);
        let next = &remaining - &term;
        if !next.is_negative() {
            cur.push(n);
            search_sums(next, n, slots - 1, cur, out);
            cur.pop();
        }
    }
}

/// The possible Cartier multiples over standard coefficients, derived from
/// the sum enumerations: the per-tuple least common multiples of the
/// solutions to `sum (1 - 1/n_j) ∈ {1, 2}`, together with 1 (the Cartier and
/// simple-elliptic case). The least common multiple of the whole set is 12.
///
/// Each tuple entry `n_j` factors as (local index) x (coefficient
/// denominator), so the lcm of a tuple clears every local index; the
/// per-tuple gcds would form the smaller set {1, 2, 3} and do not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartierMultiples {
    /// `(tuple, lcm of tuple)` for each solution.
    pub per_tuple: Vec<(Vec<u64>, u64)>,
    /// All multiples: `{1} ∪ {lcm of each tuple}`.
    pub multiples: Vec<u64>,
    /// Overall least common multiple.
    pub lcm: u64,
}

pub fn cartier_multiples_c2() -> CartierMultiples {
    let mut per_tuple = Vec::new();
    for target in [1u32, 2] {
        for tuple in enumerate_standard_sums(target, 8).expect("valid bounds") {
            let l = tuple.iter().fold(1u64, |acc, &x| acc.lcm(&x));
            per_tuple.push((tuple, l));
        }
    }
    let mut multiples: Vec<u64> = per_tuple.iter().map(|(_, l)| *l).collect();
    multiples.push(1);
    multiples.sort_unstable();
    multiples.dedup();
    let lcm = multiples.iter().fold(1u64, |acc, &x| acc.lcm(&x));
    CartierMultiples {
        per_tuple,
        multiples,
        lcm,
    }
}

/// One named constant with its provenance.
#[derive(Clone, Debug)]
pub struct BoundEntry {
    pub name: &'static str,
    pub value: Rat,
    pub source: &'static str,
}

/// The table of bound constants for the three common coefficient sets.
#[derive(Clone, Debug)]
pub struct BoundsTable {
    /// Minimal volume with nonzero reduced boundary, standard coefficients.
    pub v1_c2: Rat,
    /// Lower bound for volume accumulation points over standard
    /// coefficients: `v1 / (1 + 6 t_6)^2` with `t_6 = 1`.
    pub lower_bound_c2: Rat,
    /// Upper bound for the minimal accumulation point, standard coefficients.
    pub upper_acc_c2: Rat,
    /// Upper bound for the minimal accumulation point, empty or reduced
    /// coefficient sets.
    pub upper_acc_c0_c1: Rat,
    /// Volume lower bound in the simple-elliptic-singularity case.
    pub elliptic_bound: Rat,
    /// `sup t` with `K + B - t B_0` big, standard coefficients.
    pub delta1_c2: Rat,
    /// Smallest known volume over standard coefficients.
    pub kollar_record_c2: Rat,
    /// Smallest known volume with empty or reduced boundary coefficients.
    pub record_c0_c1: Rat,
}

/// The bound constants. `lower_bound_c2` is recomputed from `v1_c2` through
/// [`lower_bound`] with `m = 6`, `t = t_6 = 1` rather than transcribed.
pub fn bounds_table() -> BoundsTable {
    let v1_c2 = Rat::new(1, 1764);
    let lower_bound_c2 = lower_bound(&v1_c2, 6, &Rat::one());
    BoundsTable {
        v1_c2: v1_c2.clone(),
        lower_bound_c2,
        upper_acc_c2: v1_c2,
        upper_acc_c0_c1: Rat::new(1, 462),
        elliptic_bound: Rat::new(1, 143),
        delta1_c2: Rat::new(1, 42),
        kollar_record_c2: Rat::new(1, 3261636),
        record_c0_c1: Rat::new(1, 48983),
    }
}

impl BoundsTable {
    pub fn entries(&self) -> Vec<BoundEntry> {
        vec![
            BoundEntry {
                name: "v1_C2",
                value: self.v1_c2.clone(),
                source: "minimal volume with nonzero reduced boundary over standard coefficients (Kollar, Log surfaces of general type, 6.2.1/5.3.1)",
            },
            BoundEntry {
                name: "lower_bound_C2",
                value: self.lower_bound_c2.clone(),
                source: "v1_C2 / (1 + 6 t_6)^2 with t_6 = 1, recomputed",
            },
            BoundEntry {
                name: "upper_acc_C2",
                value: self.upper_acc_c2.clone(),
                source: "accumulation point realized by Kollar's example 5.3.1",
            },
            BoundEntry {
                name: "upper_acc_C0_C1",
                value: self.upper_acc_c0_c1.clone(),
                source: "accumulation point realized by the known strictly lc surface of volume 1/462 = 1/(11*42)",
            },
            BoundEntry {
                name: "elliptic_bound",
                value: self.elliptic_bound.clone(),
                source: "volume lower bound when the pair has a simple elliptic singularity",
            },
            BoundEntry {
                name: "delta1_C2",
                value: self.delta1_c2.clone(),
                source: "sup t with K+B-tB_0 big (Kollar, Log surfaces of general type, Thm 5.3)",
            },
            BoundEntry {
                name: "kollar_record_C2",
                value: self.kollar_record_c2.clone(),
                source: "1/(42^2 43^2), smallest known volume over standard coefficients (Kollar)",
            },
            BoundEntry {
                name: "record_C0_C1",
                value: self.record_c0_c1.clone(),
                source: "smallest known volume with empty or reduced boundary coefficients",
            },
        ]
    }
}

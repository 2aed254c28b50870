//! DCC coefficient sets and their invariants.
//!
//! A [`CoeffSet`] describes a subset of `(0, 1]` of the shape
//!
//! ```text
//!   finite part  ∪  {1 - 1/n : n >= 2}  ∪  {1}
//! ```
//!
//! where the middle family (the *standard coefficients*) and the trailing `{1}`
//! are optional. Every such set satisfies the descending chain condition by
//! construction. The module computes membership, accumulation points, bounded
//! enumerations of the derivative set
//!
//! ```text
//!   C' = { 1 - (1 - sum n_j b_j)/m : b_j in C, m, n_j in N, 1 - sum n_j b_j >= 0 } ∪ {1}
//! ```
//!
//! and the maxima `t_m` of the auxiliary ACC sets
//!
//! ```text
//!   T_m(C) = { (1 - b)/{m b} : b in C, {m b} != 0 } ∪ {1}.
//! ```

use serde::{Deserialize, Serialize};

use crate::rational::Rat;

/// A DCC coefficient set: finite part, optional standard family
/// `{1 - 1/n : n >= 2}`, optional `{1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffSet {
    /// Sorted, distinct rationals in `(0, 1]`.
    pub finite: Vec<Rat>,
    /// Whether the set contains every `1 - 1/n` for `n >= 2`.
    pub standard_family: bool,
    /// Whether the set contains `1`.
    pub one: bool,
}

/// Error building a [`CoeffSet`] from raw data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoeffSetError {
    #[error("finite part entry {0} lies outside (0, 1]")]
    OutOfRange(Rat),
    #[error("unknown coefficient set preset {0:?}")]
    UnknownPreset(String),
}

impl CoeffSet {
    /// The empty set `C0`.
    pub fn c0() -> Self {
        CoeffSet {
            finite: Vec::new(),
            standard_family: false,
            one: false,
        }
    }

    /// `C1 = {1}`.
    pub fn c1() -> Self {
        CoeffSet {
            finite: Vec::new(),
            standard_family: false,
            one: true,
        }
    }

    /// The standard coefficients `C2 = {1 - 1/n : n in N} ∪ {1}`.
    pub fn c2() -> Self {
        CoeffSet {
            finite: Vec::new(),
            standard_family: true,
            one: true,
        }
    }

    /// Builds a set from a finite list plus flags; sorts, deduplicates, and
    /// validates the range.
    pub fn new(
        finite: impl IntoIterator<Item = Rat>,
        standard_family: bool,
        one: bool,
    ) -> Result<Self, CoeffSetError> {
        let mut finite: Vec<Rat> = finite.into_iter().collect();
        for q in &finite {
            if !q.is_positive() || q.cmp_int(1).is_gt() {
                return Err(CoeffSetError::OutOfRange(q.clone()));
            }
        }
        finite.sort();
        finite.dedup();
        Ok(CoeffSet {
            finite,
            standard_family,
            one,
        })
    }

    /// Finite set without family or one.
    pub fn finite(values: impl IntoIterator<Item = Rat>) -> Result<Self, CoeffSetError> {
        Self::new(values, false, false)
    }

    /// Looks up one of the named presets `C0`, `C1`, `C2`.
    pub fn preset(name: &str) -> Result<Self, CoeffSetError> {
        match name {
            "C0" | "c0" => Ok(Self::c0()),
            "C1" | "c1" => Ok(Self::c1()),
            "C2" | "c2" => Ok(Self::c2()),
            other => Err(CoeffSetError::UnknownPreset(other.to_string())),
        }
    }

    /// Exact membership test.
    ///
    /// The standard family is detected by checking that `1/(1-q)` is a
    /// positive integer `>= 2`; values outside `(0, 1]` are never members.
    pub fn contains(&self, q: &Rat) -> bool {
        if !q.is_positive() || q.cmp_int(1).is_gt() {
            return false;
        }
        if q.is_one() {
            return self.one || self.finite.binary_search(q).is_ok();
        }
        if self.finite.binary_search(q).is_ok() {
            return true;
        }
        if self.standard_family {
            let gap = Rat::one() - q; // 1/n for a member
            let inv = gap.recip();
            return inv.is_integer() && inv.cmp_int(2).is_ge();
        }
        false
    }

    /// The exact set of accumulation points.
    ///
    /// A finite part contributes nothing; the standard family accumulates
    /// exactly at `1`.
    pub fn accumulation_points(&self) -> CoeffSet {
        CoeffSet {
            finite: Vec::new(),
            standard_family: false,
            one: self.standard_family,
        }
    }

    /// Bounded enumeration of the derivative set.
    ///
    /// Enumerates `1 - (1 - sum n_j b_j)/m` over `1 <= m <= max_m`, multisets
    /// with `sum n_j <= max_terms` and `sum n_j b_j <= 1`, always inserting the
    /// value `1`, then keeps the results in `(0, 1]`, sorted and deduplicated.
    ///
    /// For sets with the standard family the candidate pool is capped at
    /// denominators `n <= max_m * max(max_terms, 1) + 1`: a sum with at least
    /// two terms forces `1 - 1/n <= 1/2`, so only single-term sums reach large
    /// denominators and those produce the members `1 - 1/(n m)`. Completeness
    /// is therefore relative to the stated bounds.
    pub fn derivative_members(&self, max_m: u32, max_terms: u32) -> Vec<Rat> {
        assert!(max_m >= 1, "max_m must be at least 1");
        let mut pool: Vec<Rat> = self.finite.clone();
        if self.one {
            pool.push(Rat::one());
        }
        if self.standard_family {
            let cap = max_m as u64 * (max_terms.max(1) as u64) + 1;
            for n in 2..=cap {
                pool.push(Rat::one() - Rat::new(1, n as i64));
            }
        }
        pool.sort();
        pool.dedup();

        // All achievable values sum n_j b_j <= 1 with at most max_terms terms.
        let mut sums: Vec<Rat> = Vec::new();
        let mut stack: Vec<(usize, u32, Rat)> = vec![(0, 0, Rat::zero())];
        while let Some((start, used, acc)) = stack.pop() {
            sums.push(acc.clone());
            if used == max_terms {
                continue;
            }
            for (i, b) in pool.iter().enumerate().skip(start) {
                let next = &acc + b;
                if next.cmp_int(1).is_gt() {
                    // pool is sorted increasing: later entries overflow too
                    break;
                }
                stack.push((i, used + 1, next));
            }
        }
        sums.sort();
        sums.dedup();

        let mut out = vec![Rat::one()];
        for s in &sums {
            let residue = Rat::one() - s;
            for m in 1..=max_m {
                let v = Rat::one() - &residue / &Rat::from_int(m as i64);
                if v.is_positive() {
                    out.push(v);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Iterator over a bounded slice of the set, used by searches: the finite
    /// part, `1` when present, and family members with denominator up to
    /// `family_cap`.
    pub fn bounded_members(&self, family_cap: u64) -> Vec<Rat> {
        let mut out = self.finite.clone();
        if self.one {
            out.push(Rat::one());
        }
        if self.standard_family {
            for n in 2..=family_cap {
                out.push(Rat::one() - Rat::new(1, n as i64));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// `t_m = max T_m`, the maximum of `(1-b)/{mb}` over members with
    /// `{mb} != 0`, together with the sentinel value `1`.
    ///
    /// For the standard family, a member `b = 1 - 1/n` contributes
    /// `1/(n - (m mod n))`, which is at most `1` and attains `1` at
    /// `n = m + 1`, so the family search stops at `n <= m + 1`. (The
    /// reduction is cross-checked against a wide brute force in the
    /// verification suite.)
    pub fn t_m(&self, m: u32) -> Rat {
        assert!(m >= 1, "m must be at least 1");
        let mut best = Rat::one();
        let mr = Rat::from_int(m as i64);
        for b in &self.finite {
            let f = (&mr * b).frac();
            if !f.is_zero() {
                let cand = (Rat::one() - b) / f;
                if cand > best {
                    best = cand;
                }
            }
        }
        // b = 1 contributes nothing ({m} = 0); family bounded by n <= m + 1.
        if self.standard_family {
            for n in 2..=(m as u64 + 1) {
                let b = Rat::one() - Rat::new(1, n as i64);
                let f = (&mr * &b).frac();
                if !f.is_zero() {
                    let cand = (Rat::one() - &b) / f;
                    if cand > best {
                        best = cand;
                    }
                }
            }
        }
        best
    }

    /// Checks the guaranteed inequality `b + t_m * {mb} >= 1` for a member
    /// `b`; vacuously true when `{mb} = 0`.
    pub fn t_m_lower_bound_check(&self, m: u32, b: &Rat) -> bool {
        debug_assert!(self.contains(b), "b must belong to the set");
        let f = (Rat::from_int(m as i64) * b).frac();
        if f.is_zero() {
            return true;
        }
        (b + self.t_m(m) * f).cmp_int(1).is_ge()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn membership() {
        let c2 = CoeffSet::c2();
        assert!(c2.contains(&rat(5, 6))); // 1 - 1/6
        assert!(!c2.contains(&rat(3, 5)));
        assert!(c2.contains(&Rat::one()));
        assert!(c2.contains(&rat(1, 2)));
        assert!(!c2.contains(&Rat::zero()));
        assert!(!c2.contains(&rat(-1, 2)));
        assert!(!c2.contains(&rat(3, 2)));
        assert!(!CoeffSet::c0().contains(&rat(1, 2)));
        assert!(CoeffSet::c1().contains(&Rat::one()));
        assert!(!CoeffSet::c1().contains(&rat(1, 2)));
        let s = CoeffSet::finite([rat(1, 2), rat(2, 3)]).unwrap();
        assert!(s.contains(&rat(1, 2)));
        assert!(!s.contains(&Rat::one()));
    }

    #[test]
    fn membership_agrees_with_brute_force() {
        let set = CoeffSet::new([rat(3, 5), rat(1, 7)], true, true).unwrap();
        // brute force over a grid of rationals p/q
        for q in 1..=24i64 {
            for p in -2..=(q + 2) {
                let x = Rat::new(p, q);
                let brute = {
                    let in_finite = x == rat(3, 5) || x == rat(1, 7);
                    let is_one = x.is_one();
                    let in_family = (2..=1000)
                        .any(|n| x == Rat::one() - Rat::new(1, n));
                    in_finite || is_one || in_family
                };
                assert_eq!(set.contains(&x), brute, "disagree at {x}");
            }
        }
    }

    #[test]
    fn accumulation() {
        assert_eq!(CoeffSet::c2().accumulation_points(), CoeffSet::c1());
        let finite = CoeffSet::finite([rat(1, 2), rat(2, 3)]).unwrap();
        assert_eq!(finite.accumulation_points(), CoeffSet::c0());
        let augmented = CoeffSet::new([rat(3, 5)], true, true).unwrap();
        assert_eq!(augmented.accumulation_points(), CoeffSet::c1());
    }

    #[test]
    fn derivative_small_cases() {
        // C0, m <= 2, no boundary terms: only 1 - 1/m plus the mandated 1.
        let v = CoeffSet::c0().derivative_members(2, 0);
        assert_eq!(v, vec![rat(1, 2), Rat::one()]);
        // m = 3, b = 2/3, one term: 1 - (1/3)/3 = 8/9.
        let v = CoeffSet::c2().derivative_members(3, 1);
        assert!(v.contains(&rat(8, 9)));
        // 1 is always a member.
        for set in [CoeffSet::c0(), CoeffSet::c1(), CoeffSet::c2()] {
            assert!(set.derivative_members(1, 0).contains(&Rat::one()));
        }
    }

    #[test]
    fn derivative_of_standard_is_standard() {
        // checked at full acceptance scale in the verification suite
        let c2 = CoeffSet::c2();
        for (m, t) in [(1, 1), (3, 2), (5, 4), (12, 6)] {
            for v in c2.derivative_members(m, t) {
                assert!(c2.contains(&v), "derivative member {v} escapes C2");
            }
        }
    }

    #[test]
    fn t_m_values() {
        for m in 1..=40 {
            assert!(CoeffSet::c2().t_m(m).is_one(), "t_{m}(C2) != 1");
            assert!(CoeffSet::c0().t_m(m).is_one());
            assert!(CoeffSet::c1().t_m(m).is_one());
        }
        // {6/5} = 1/5 and (2/5)/(1/5) = 2
        let s = CoeffSet::finite([rat(3, 5)]).unwrap();
        assert_eq!(s.t_m(2), Rat::from_int(2));
        assert_eq!(s.t_m(5), Rat::one()); // {3} = 0: only the sentinel remains
    }

    #[test]
    fn t_m_bound_predicate() {
        assert!(CoeffSet::c2().t_m_lower_bound_check(3, &rat(2, 3))); // {2} = 0, vacuous
        assert!(CoeffSet::c2().t_m_lower_bound_check(2, &rat(2, 3))); // 2/3 + 1/3 = 1
        let s = CoeffSet::finite([rat(3, 5)]).unwrap();
        assert!(s.t_m_lower_bound_check(2, &rat(3, 5))); // 3/5 + 2*(1/5) = 1
    }

    #[test]
    fn t_m_maximality() {
        // every enumerated member obeys (1-b)/{mb} <= t_m, and the max is attained
        for set in [
            CoeffSet::c2(),
            CoeffSet::new([rat(3, 5), rat(1, 7)], true, false).unwrap(),
            CoeffSet::finite([rat(2, 7), rat(3, 4)]).unwrap(),
        ] {
            for m in 1..=25u32 {
                let tm = set.t_m(m);
                let mr = Rat::from_int(m as i64);
                let mut attained = tm.is_one(); // sentinel
                for b in set.bounded_members(10 * m as u64 + 10) {
                    let f = (&mr * &b).frac();
                    if f.is_zero() {
                        continue;
                    }
                    let v = (Rat::one() - &b) / f;
                    assert!(v <= tm);
                    if v == tm {
                        attained = true;
                    }
                }
                assert!(attained, "maximum not attained for m = {m}");
            }
        }
    }

    #[test]
    fn preset_and_serde() {
        assert_eq!(CoeffSet::preset("C2").unwrap(), CoeffSet::c2());
        assert!(CoeffSet::preset("C9").is_err());
        let js = r#"{"finite": ["1/2","3/5"], "standard_family": true, "one": true}"#;
        let s: CoeffSet = serde_json::from_str(js).unwrap();
        assert!(s.contains(&rat(3, 5)));
        assert!(s.standard_family && s.one);
        let round: CoeffSet =
            serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(round, s);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(CoeffSet::finite([rat(3, 2)]).is_err());
        assert!(CoeffSet::finite([Rat::zero()]).is_err());
    }
}

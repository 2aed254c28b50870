//! Hirzebruch-Jung chain calculus.
//!
//! A chain `(p_1, ..., p_r)` with all `p_i >= 2` is the resolution data of a
//! cyclic quotient surface singularity: a string of rational curves
//! `F_1, ..., F_r` with `F_i^2 = -p_i`, consecutive curves meeting once.  Its
//! index is the continuant
//!
//! ```text
//!   m = det(p_1, ..., p_r),
//! ```
//!
//! the determinant of the tridiagonal matrix with `p_i` on the diagonal and
//! `-1` next to it.  When a reduced curve `E` meets `F_1` once, restriction of
//! a log canonical divisor to `E` picks up a different coefficient at the
//! point under the chain:
//!
//! ```text
//!   b' = 1 - (1 - sum n_j b_j)/m,
//!   n_j = sum_i (Delta_j . F_i) det(p_{i+1}, ..., p_r),
//! ```
//!
//! for boundary curves `Delta_j` with coefficients `b_j` hitting the chain.
//! The same value is computed independently by solving the r x r linear
//! system for the codiscrepancies along the chain; both routes are exposed
//! and cross-checked.  A smooth point is the degenerate case of the empty
//! chain (`m = 1`).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::RatMatrix;
use crate::rational::Rat;

/// Errors from chain construction and chain queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("chain entry p_{index} = {value} is below 2")]
    EntryBelowTwo { index: usize, value: i64 },
    #[error("operation requires a nonempty chain")]
    EmptyChain,
    #[error("boundary hit references curve index {index} of a chain of length {len}")]
    HitIndexOutOfRange { index: usize, len: usize },
    #[error("boundary hit multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("boundary coefficient {0} lies outside (0, 1]")]
    CoefficientOutOfRange(Rat),
    #[error("coefficient {0} is not a standard coefficient below 1")]
    NotStandardCoefficient(Rat),
    #[error("different coefficient {0} is not of the form 1 - 1/n")]
    NotStandardDifferent(Rat),
    #[error("boundary incidence matches neither corollary case: {0}")]
    CorollaryNotApplicable(&'static str),
}

/// A Hirzebruch-Jung chain `(p_1, ..., p_r)`, every `p_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    p: Vec<i64>,
}

impl Chain {
    pub fn new(p: impl Into<Vec<i64>>) -> Result<Self, ChainError> {
        let p = p.into();
        for (i, &v) in p.iter().enumerate() {
            if v < 2 {
                return Err(ChainError::EntryBelowTwo { index: i + 1, value: v });
            }
        }
        Ok(Chain { p })
    }

    /// The empty chain: the smooth-point case, index 1.
    pub fn empty() -> Self {
        Chain { p: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.p
    }

    /// Index of the singularity: `det(p_1, ..., p_r)`; `1` for the empty chain.
    pub fn index(&self) -> BigInt {
        continuant_unchecked(&self.p)
    }

    /// Gram matrix of the chain curves: `-p_i` diagonal, `+1` adjacency.
    pub fn gram(&self) -> RatMatrix {
        let r = self.p.len();
        let mut g = RatMatrix::zero(r);
        for i in 0..r {
            g.set(i, i, Rat::from_int(-self.p[i]));
            if i + 1 < r {
                g.set(i, i + 1, Rat::one());
                g.set(i + 1, i, Rat::one());
            }
        }
        g
    }
}

/// One boundary curve meeting the chain: it crosses curve `F_curve`
/// (1-based) with the given multiplicity and carries a coefficient in
/// `(0, 1]`. For the empty chain, `curve` must be `0`: the hit is a local
/// intersection with `E` at the smooth point itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryHit {
    pub curve: usize,
    pub multiplicity: u32,
    pub coefficient: Rat,
}

/// Boundary incidence data for a chain.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainBoundary {
    pub hits: Vec<BoundaryHit>,
}

impl ChainBoundary {
    pub fn none() -> Self {
        ChainBoundary { hits: Vec::new() }
    }

    pub fn new(hits: Vec<BoundaryHit>) -> Self {
        ChainBoundary { hits }
    }

    fn validate(&self, chain: &Chain) -> Result<(), ChainError> {
        let r = chain.len();
        for h in &self.hits {
            if r == 0 {
                if h.curve != 0 {
                    return Err(ChainError::HitIndexOutOfRange { index: h.curve, len: 0 });
                }
            } else if h.curve < 1 || h.curve > r {
                return Err(ChainError::HitIndexOutOfRange { index: h.curve, len: r });
            }
            if h.multiplicity == 0 {
                return Err(ChainError::ZeroMultiplicity);
            }
            if !h.coefficient.is_positive() || h.coefficient.cmp_int(1).is_gt() {
                return Err(ChainError::CoefficientOutOfRange(h.coefficient.clone()));
            }
        }
        Ok(())
    }
}

fn continuant_unchecked(p: &[i64]) -> BigInt {
    // d_i = p_i d_{i+1} - d_{i+2}, computed from the right
    let mut next = BigInt::one(); // det of the empty tail
    let mut after = BigInt::zero();
    for &pi in p.iter().rev() {
        let cur = BigInt::from(pi) * &next - &after;
        after = next;
        next = cur;
    }
    next
}

/// Continuant `det(p_1, ..., p_r)` of the tridiagonal matrix with `p_i` on
/// the diagonal and `-1` on the adjacent off-diagonals; `1` for the empty
/// list. Rejects entries below 2.
pub fn continuant(p: &[i64]) -> Result<BigInt, ChainError> {
    for (i, &v) in p.iter().enumerate() {
        if v < 2 {
            return Err(ChainError::EntryBelowTwo { index: i + 1, value: v });
        }
    }
    Ok(continuant_unchecked(p))
}

/// Index of a nonempty chain (`det(p_1, ..., p_r)`).
pub fn chain_index(chain: &Chain) -> Result<BigInt, ChainError> {
    if chain.is_empty() {
        return Err(ChainError::EmptyChain);
    }
    Ok(chain.index())
}

/// The value of a different coefficient together with the log-canonicity
/// signal; values above 1 are legitimate outputs that flag non-lc input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentValue {
    pub value: Rat,
    pub log_canonical: bool,
}

/// Complete report for one chain adjunction: index, per-hit weights, the
/// different coefficient, and the codiscrepancies along the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentReport {
    /// Chain index `m`.
    pub index: BigInt,
    /// Weight `n_j` of each boundary hit, in input order.
    pub weights: Vec<BigInt>,
    /// The different coefficient `b'`.
    pub coefficient: Rat,
    /// Whether `b' <= 1`.
    pub log_canonical: bool,
    /// Codiscrepancies of `F_1, ..., F_r` from the linear system.
    pub codiscrepancies: Vec<Rat>,
}

/// Different coefficient via the determinant formula:
/// `b' = 1 - (1 - sum n_j b_j)/m`. The smooth point is the empty chain.
pub fn different_coefficient(
    chain: &Chain,
    boundary: &ChainBoundary,
) -> Result<DifferentValue, ChainError> {
    boundary.validate(chain)?;
    let m = Rat::from_bigint(chain.index());
    let mut weighted = Rat::zero();
    for h in &boundary.hits {
        let w = hit_weight(chain, h);
        weighted += Rat::from_bigint(w) * &h.coefficient;
    }
    let value = Rat::one() - (Rat::one() - weighted) / m;
    let log_canonical = value.cmp_int(1).is_le();
    Ok(DifferentValue { value, log_canonical })
}

/// `n_j` for a single hit: multiplicity times the continuant of the tail
/// strictly after the hit curve (`1` when the hit is at the last curve or at
/// a smooth point).
fn hit_weight(chain: &Chain, hit: &BoundaryHit) -> BigInt {
    let tail = if chain.is_empty() {
        BigInt::one()
    } else {
        continuant_unchecked(&chain.entries()[hit.curve..])
    };
    BigInt::from(hit.multiplicity) * tail
}

/// Codiscrepancies of `F_1, ..., F_r` from the linear system
///
/// ```text
///   sum_i c_i (F_i . F_k) = -(p_k - 2) - e [k = 1] - sum_j b_j (Delta_j . F_k)
/// ```
///
/// where `e` is the number of times `E` meets `F_1`. Exact solution; the
/// system is never singular because the chain Gram matrix is negative
/// definite.
pub fn log_discrepancies(
    chain: &Chain,
    e_attach: u32,
    boundary: &ChainBoundary,
) -> Result<Vec<Rat>, ChainError> {
    if chain.is_empty() {
        return Err(ChainError::EmptyChain);
    }
    boundary.validate(chain)?;
    let r = chain.len();
    let mut rhs = vec![Rat::zero(); r];
    for (k, &pk) in chain.entries().iter().enumerate() {
        rhs[k] = Rat::from_int(pk - 2);
    }
    rhs[0] += Rat::from_int(e_attach as i64);
    for h in &boundary.hits {
        rhs[h.curve - 1] += Rat::from_int(h.multiplicity as i64) * &h.coefficient;
    }
    // M c = rhs with M = -Gram (p_i diagonal, -1 off-diagonal)
    let r_len = r;
    let mut m = RatMatrix::zero(r_len);
    for i in 0..r_len {
        m.set(i, i, Rat::from_int(chain.entries()[i]));
        if i + 1 < r_len {
            m.set(i, i + 1, Rat::from_int(-1));
            m.set(i + 1, i, Rat::from_int(-1));
        }
    }
    let sol = m.solve(&rhs).expect("chain Gram matrix is nonsingular");
    Ok(sol)
}

/// Full adjunction report; the coefficient comes from the determinant
/// formula, the codiscrepancies from the linear system.
pub fn different_report(
    chain: &Chain,
    boundary: &ChainBoundary,
) -> Result<DifferentReport, ChainError> {
    let dv = different_coefficient(chain, boundary)?;
    let codiscrepancies = if chain.is_empty() {
        Vec::new()
    } else {
        log_discrepancies(chain, 1, boundary)?
    };
    let weights = boundary
        .hits
        .iter()
        .map(|h| hit_weight(chain, h))
        .collect();
    Ok(DifferentReport {
        index: chain.index(),
        weights,
        coefficient: dv.value,
        log_canonical: dv.log_canonical,
        codiscrepancies,
    })
}

/// The decomposition `n = m * n'` of a standard different coefficient
/// `b' = 1 - 1/n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardDifferent {
    pub n: BigInt,
    pub m: BigInt,
    pub n_prime: BigInt,
}

/// Verifies the standard-coefficient decomposition `n = m * n'` for the two
/// applicable incidence patterns:
///
/// 1. the boundary meets only the last curve `F_r`, once, with a standard
///    coefficient `1 - 1/n'`, or
/// 2. the boundary is disjoint from the chain, and then `n = m`, `n' = 1`.
///
/// Any other incidence pattern is signalled as not applicable.
pub fn verify_standard_different(
    chain: &Chain,
    boundary: &ChainBoundary,
) -> Result<StandardDifferent, ChainError> {
    if chain.is_empty() {
        return Err(ChainError::EmptyChain);
    }
    boundary.validate(chain)?;
    for h in &boundary.hits {
        let c = &h.coefficient;
        if c.is_one() {
            return Err(ChainError::NotStandardCoefficient(c.clone()));
        }
        let inv = (Rat::one() - c).recip();
        if !inv.is_integer() || inv.cmp_int(1).is_lt() {
            return Err(ChainError::NotStandardCoefficient(c.clone()));
        }
    }
    let m = chain.index();
    let n_prime = match boundary.hits.len() {
        0 => BigInt::one(),
        1 => {
            let h = &boundary.hits[0];
            if h.curve != chain.len() || h.multiplicity != 1 {
                return Err(ChainError::CorollaryNotApplicable(
                    "a single hit must meet the last curve once",
                ));
            }
            (Rat::one() - &h.coefficient).recip().numer().clone()
        }
        _ => {
            return Err(ChainError::CorollaryNotApplicable(
                "more than one boundary hit",
            ))
        }
    };
    let b_prime = different_coefficient(chain, boundary)?.value;
    if b_prime.cmp_int(1).is_ge() || !b_prime.is_positive() {
        return Err(ChainError::NotStandardDifferent(b_prime));
    }
    let n_rat = (Rat::one() - &b_prime).recip();
    if !n_rat.is_integer() {
        return Err(ChainError::NotStandardDifferent(b_prime));
    }
    let n = n_rat.numer().clone();
    if n != &m * &n_prime {
        return Err(ChainError::NotStandardDifferent(b_prime));
    }
    Ok(StandardDifferent { n, m, n_prime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn chain(p: &[i64]) -> Chain {
        Chain::new(p.to_vec()).unwrap()
    }

    fn hit(curve: usize, multiplicity: u32, coefficient: Rat) -> BoundaryHit {
        BoundaryHit { curve, multiplicity, coefficient }
    }

    #[test]
    fn continuant_values() {
        assert_eq!(continuant(&[]).unwrap(), BigInt::from(1));
        assert_eq!(continuant(&[2, 2, 2]).unwrap(), BigInt::from(4));
        assert_eq!(continuant(&[2, 3, 6]).unwrap(), BigInt::from(28));
        assert_eq!(continuant(&[2]).unwrap(), BigInt::from(2));
        assert_eq!(continuant(&[3]).unwrap(), BigInt::from(3));
        assert!(continuant(&[2, 1]).is_err());
    }

    #[test]
    fn continuant_matches_brute_force_determinant() {
        // brute-force determinant of the tridiagonal matrix via RatMatrix
        let dets = |p: &[i64]| {
            let n = p.len();
            let mut m = RatMatrix::zero(n);
            for i in 0..n {
                m.set(i, i, Rat::from_int(p[i]));
                if i + 1 < n {
                    m.set(i, i + 1, Rat::from_int(-1));
                    m.set(i + 1, i, Rat::from_int(-1));
                }
            }
            m.determinant()
        };
        for p in [
            vec![2],
            vec![5],
            vec![2, 2],
            vec![3, 4],
            vec![2, 3, 6],
            vec![7, 2, 5, 3],
            vec![2, 2, 2, 2, 2, 2],
            vec![4, 3, 2, 6, 2, 7, 3],
        ] {
            assert_eq!(
                Rat::from_bigint(continuant(&p).unwrap()),
                dets(&p),
                "continuant disagrees with determinant for {p:?}"
            );
        }
    }

    #[test]
    fn continuant_recurrence() {
        // det(p_1..p_r) = p_1 det(p_2..p_r) - det(p_3..p_r)
        let p = [3, 2, 5, 2, 2, 4, 6, 2];
        for r in 2..=p.len() {
            let s = &p[..r];
            let lhs = continuant(s).unwrap();
            let rhs = BigInt::from(s[0]) * continuant(&s[1..]).unwrap()
                - continuant(&s[2..]).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn index_of_simple_chains() {
        assert_eq!(chain_index(&chain(&[2, 2])).unwrap(), BigInt::from(3));
        assert_eq!(chain_index(&chain(&[2])).unwrap(), BigInt::from(2));
        assert_eq!(chain_index(&chain(&[3])).unwrap(), BigInt::from(3));
        assert!(chain_index(&Chain::empty()).is_err());
        // all-2 chains of length r have index r + 1
        for r in 1..=12 {
            let c = chain(&vec![2; r]);
            assert_eq!(c.index(), BigInt::from(r as i64 + 1));
        }
    }

    #[test]
    fn different_basic_values() {
        // chain [2,2], no hits: b' = 1 - 1/3 = 2/3
        let d = different_coefficient(&chain(&[2, 2]), &ChainBoundary::none()).unwrap();
        assert_eq!(d.value, rat(2, 3));
        assert!(d.log_canonical);
        // smooth point, one transverse hit with b = 1/2
        let d = different_coefficient(
            &Chain::empty(),
            &ChainBoundary::new(vec![hit(0, 1, rat(1, 2))]),
        )
        .unwrap();
        assert_eq!(d.value, rat(1, 2));
        // chain [2], hit on F_1 with b = 1/2: 1 - (1/2)/2 = 3/4
        let d = different_coefficient(
            &chain(&[2]),
            &ChainBoundary::new(vec![hit(1, 1, rat(1, 2))]),
        )
        .unwrap();
        assert_eq!(d.value, rat(3, 4));
        // all-2 chains with no boundary give 1 - 1/(r+1)
        for r in 1..=10 {
            let d =
                different_coefficient(&chain(&vec![2; r]), &ChainBoundary::none()).unwrap();
            assert_eq!(d.value, Rat::one() - Rat::new(1, r as i64 + 1));
        }
    }

    #[test]
    fn different_flags_non_lc() {
        // heavy multiplicities push sum n_j b_j past 1
        let d = different_coefficient(
            &chain(&[2]),
            &ChainBoundary::new(vec![hit(1, 4, Rat::one())]),
        )
        .unwrap();
        assert!(!d.log_canonical);
        assert!(d.value.cmp_int(1).is_gt());
    }

    #[test]
    fn discrepancy_system() {
        let c = log_discrepancies(&chain(&[2, 2]), 1, &ChainBoundary::none()).unwrap();
        assert_eq!(c, vec![rat(2, 3), rat(1, 3)]);
        let c = log_discrepancies(&chain(&[2]), 1, &ChainBoundary::none()).unwrap();
        assert_eq!(c, vec![rat(1, 2)]);
        // degenerate lc case: coefficient-1 boundary on the far end
        let c = log_discrepancies(
            &chain(&[2, 2]),
            1,
            &ChainBoundary::new(vec![hit(2, 1, Rat::one())]),
        )
        .unwrap();
        assert_eq!(c, vec![Rat::one(), Rat::one()]);
    }

    #[test]
    fn determinant_and_system_routes_agree() {
        let cases: Vec<(Chain, ChainBoundary)> = vec![
            (chain(&[2, 2]), ChainBoundary::none()),
            (chain(&[2, 3, 6]), ChainBoundary::none()),
            (chain(&[3, 2, 2]), ChainBoundary::new(vec![hit(3, 1, rat(2, 3))])),
            (
                chain(&[4, 2, 5]),
                ChainBoundary::new(vec![hit(1, 2, rat(1, 2)), hit(2, 1, rat(5, 6))]),
            ),
        ];
        for (c, b) in cases {
            let det_route = different_coefficient(&c, &b).unwrap().value;
            let sys_route = log_discrepancies(&c, 1, &b).unwrap()[0].clone();
            assert_eq!(det_route, sys_route);
        }
    }

    #[test]
    fn codiscrepancies_lc_iff_in_unit_interval() {
        let c = chain(&[2, 2, 2]);
        let lc_b = ChainBoundary::new(vec![hit(3, 1, rat(1, 2))]);
        let vals = log_discrepancies(&c, 1, &lc_b).unwrap();
        assert!(vals.iter().all(|v| !v.is_negative() && v.cmp_int(1).is_le()));
        let hot = ChainBoundary::new(vec![hit(1, 3, Rat::one()), hit(2, 3, Rat::one())]);
        let vals = log_discrepancies(&c, 1, &hot).unwrap();
        assert!(vals.iter().any(|v| v.cmp_int(1).is_gt()));
        assert!(!different_coefficient(&c, &hot).unwrap().log_canonical);
    }

    #[test]
    fn standard_decomposition() {
        let sd = verify_standard_different(&chain(&[2, 2]), &ChainBoundary::none()).unwrap();
        assert_eq!((sd.n, sd.m, sd.n_prime), (3.into(), 3.into(), 1.into()));
        let sd = verify_standard_different(
            &chain(&[2]),
            &ChainBoundary::new(vec![hit(1, 1, rat(1, 2))]),
        )
        .unwrap();
        assert_eq!((sd.n, sd.m, sd.n_prime), (4.into(), 2.into(), 2.into()));
        let sd = verify_standard_different(&chain(&[3]), &ChainBoundary::none()).unwrap();
        assert_eq!((sd.n, sd.m, sd.n_prime), (3.into(), 3.into(), 1.into()));
    }

    #[test]
    fn standard_decomposition_rejects_other_patterns() {
        // hit not on the last curve
        let r = verify_standard_different(
            &chain(&[2, 3]),
            &ChainBoundary::new(vec![hit(1, 1, rat(1, 2))]),
        );
        assert!(matches!(r, Err(ChainError::CorollaryNotApplicable(_))));
        // two hits
        let r = verify_standard_different(
            &chain(&[2, 3]),
            &ChainBoundary::new(vec![hit(2, 1, rat(1, 2)), hit(1, 1, rat(1, 2))]),
        );
        assert!(matches!(r, Err(ChainError::CorollaryNotApplicable(_))));
        // non-standard coefficient
        let r = verify_standard_different(
            &chain(&[2, 3]),
            &ChainBoundary::new(vec![hit(2, 1, rat(2, 5))]),
        );
        assert!(matches!(r, Err(ChainError::NotStandardCoefficient(_))));
    }

    #[test]
    fn boundary_validation() {
        let c = chain(&[2, 2]);
        let bad = ChainBoundary::new(vec![hit(3, 1, rat(1, 2))]);
        assert!(different_coefficient(&c, &bad).is_err());
        let bad = ChainBoundary::new(vec![hit(1, 0, rat(1, 2))]);
        assert!(different_coefficient(&c, &bad).is_err());
        let bad = ChainBoundary::new(vec![hit(1, 1, rat(3, 2))]);
        assert!(different_coefficient(&c, &bad).is_err());
        // smooth point must use index 0
        let bad = ChainBoundary::new(vec![hit(1, 1, rat(1, 2))]);
        assert!(different_coefficient(&Chain::empty(), &bad).is_err());
    }

    #[test]
    fn chain_gram_is_negative_definite() {
        for p in [vec![2], vec![2, 2, 2], vec![2, 3, 6], vec![7, 5, 3, 2, 2]] {
            assert!(chain(&p).gram().is_negative_definite(), "{p:?}");
        }
    }
}

//! Exact intersection theory for curve configurations on catalog surfaces:
//! divisor lattice under blow-up scripts, log pairs, log-canonicity tests,
//! configuration-relative Zariski decomposition, and volumes.

pub mod base;
pub mod config;
pub mod zariski;

pub use base::BaseKind;
pub use config::{BlowupRecord, Class, CurveData, CurveOrigin, Divisor, PointSpec, SurfaceConfig};
pub use zariski::{zariski, ZariskiResult};

use crate::rational::Rat;

/// Errors and mathematical signals from surface configurations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("name {0:?} is already in use")]
    DuplicateName(String),
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("class entry {value} for {name:?} exceeds the supported magnitude")]
    ClassEntryTooLarge { name: String, value: i64 },
    #[error("curves {a:?} and {b:?} would meet negatively ({pairing}); distinct curves cannot")]
    NegativeIncidence { a: String, b: String, pairing: i64 },
    #[error("curves {a:?} and {b:?} have no remaining intersection point")]
    NoFreeNode { a: String, b: String },
    #[error("a node needs two distinct curves, got {0:?} twice")]
    NodeNeedsDistinctCurves(String),
    #[error("stage {stage} exceeds the script length {max}")]
    StageMismatch { stage: usize, max: usize },
    #[error("curve {name:?} does not exist yet at stage {stage}")]
    CurveAfterStage { name: String, stage: usize },
    #[error("boundary coefficient of {curve:?} is {value}, not positive")]
    NonPositiveCoefficient { curve: String, value: Rat },
    #[error("pair is not log canonical (witness curve {witness:?})")]
    NotLogCanonical { witness: String },
    #[error("no configuration-supported Zariski decomposition (support through {curve:?} is not negative definite)")]
    NoConfigZariski { curve: String },
    #[error("not big relative to the configuration (positive part squares to {value})")]
    NotBig { value: Rat },
    #[error("internal Zariski contract violation: {0}")]
    ZariskiContract(&'static str),
}

/// Log-canonicity verdict of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcVerdict {
    Klt,
    Lc,
    NotLc,
}

/// Codiscrepancy `b1 + b2 - 1` of the blow-up at one node of the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeCodiscrepancy {
    pub curves: (String, String),
    pub value: Rat,
}

/// Outcome of a log-canonicity check.
#[derive(Clone, Debug)]
pub struct LcReport {
    pub verdict: LcVerdict,
    /// A curve with coefficient `> 1` (not lc) or `= 1` (lc, not klt).
    pub witness: Option<String>,
    /// Codiscrepancies of hypothetical blow-ups at the boundary nodes; each
    /// is at most 1 exactly when the coefficient test passes.
    pub nodes: Vec<NodeCodiscrepancy>,
}

/// A coefficient-1 boundary curve meeting other positive boundary: an
/// accessible nklt center of the pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NkltWitness {
    pub center: String,
    pub meets: Vec<String>,
}

/// Certificate attached to a computed volume.
#[derive(Clone, Debug)]
pub struct VolumeCertificate {
    /// The positive part pairs nonnegatively with every tracked curve.
    pub config_nef: bool,
    /// Curves in the support of the negative part.
    pub contracted: Vec<String>,
    /// The scope of the certificate: positivity is checked against tracked
    /// configuration curves only, and ampleness is not verified.
    pub scope: &'static str,
}

pub const CERTIFICATE_SCOPE: &str =
    "nefness and bigness certified against tracked configuration curves only; ampleness unverified";

/// A computed volume with its certificate.
#[derive(Clone, Debug)]
pub struct VolumeOutcome {
    pub value: Rat,
    pub certificate: VolumeCertificate,
}

/// A surface configuration with a boundary divisor.
#[derive(Clone, Debug)]
pub struct LogPair {
    config: SurfaceConfig,
    boundary: Divisor,
}

impl LogPair {
    /// Builds a pair, checking that every boundary coefficient is positive
    /// and names a tracked curve. (Upper bounds are the business of
    /// [`LogPair::lc_check`]: pairs with coefficients above 1 are legal
    /// objects that fail the check.)
    pub fn new(config: SurfaceConfig, boundary: Divisor) -> Result<Self, SurfaceError> {
        for (name, coeff) in boundary.iter() {
            if !config.has_curve(name) {
                return Err(SurfaceError::UnknownCurve(name.to_string()));
            }
            if !coeff.is_positive() {
                return Err(SurfaceError::NonPositiveCoefficient {
                    curve: name.to_string(),
                    value: coeff.clone(),
                });
            }
        }
        Ok(LogPair { config, boundary })
    }

    pub fn config(&self) -> &SurfaceConfig {
        &self.config
    }

    pub fn boundary(&self) -> &Divisor {
        &self.boundary
    }

    pub fn into_parts(self) -> (SurfaceConfig, Divisor) {
        (self.config, self.boundary)
    }

    /// Class of `K + B`.
    pub fn log_canonical_class(&self) -> Result<Class, SurfaceError> {
        Ok(self
            .config
            .canonical_class()
            .add(&self.config.class_of(&self.boundary)?))
    }

    /// `(K + B)^2` through the intersection form.
    pub fn self_intersection(&self) -> Result<Rat, SurfaceError> {
        let kb = self.log_canonical_class()?;
        Ok(self.config.pair_classes(&kb, &kb))
    }

    /// Coefficient test plus the node codiscrepancy report.
    pub fn lc_check(&self) -> LcReport {
        lc_check(&self.config, &self.boundary)
    }

    /// Accessible nklt centers: coefficient-1 curves meeting other positive
    /// boundary. Requires the pair to be lc.
    pub fn accessible_nklt(&self) -> Result<Vec<NkltWitness>, SurfaceError> {
        let report = self.lc_check();
        if report.verdict == LcVerdict::NotLc {
            return Err(SurfaceError::NotLogCanonical {
                witness: report.witness.unwrap_or_default(),
            });
        }
        let mut out = Vec::new();
        for (name, coeff) in self.boundary.iter() {
            if !coeff.is_one() {
                continue;
            }
            let mut meets = Vec::new();
            for (other, c2) in self.boundary.iter() {
                if other == name || !c2.is_positive() {
                    continue;
                }
                if self.config.nodes_between(name, other)? > 0 {
                    meets.push(other.to_string());
                }
            }
            if !meets.is_empty() {
                out.push(NkltWitness {
                    center: name.to_string(),
                    meets,
                });
            }
        }
        Ok(out)
    }

    /// Volume of `K + B` relative to the configuration: the square of the
    /// positive part of the Zariski decomposition. Errors with
    /// [`SurfaceError::NotBig`] when that square is not positive, and with
    /// [`SurfaceError::NotLogCanonical`] on a non-lc pair.
    pub fn volume(&self) -> Result<VolumeOutcome, SurfaceError> {
        let report = self.lc_check();
        if report.verdict == LcVerdict::NotLc {
            return Err(SurfaceError::NotLogCanonical {
                witness: report.witness.unwrap_or_default(),
            });
        }
        let kb = self.log_canonical_class()?;
        let z = zariski(&self.config, &kb)?;
        let value = z.positive_square(&self.config);
        if !value.is_positive() {
            return Err(SurfaceError::NotBig { value });
        }
        Ok(VolumeOutcome {
            value,
            certificate: VolumeCertificate {
                config_nef: z.config_nef,
                contracted: z.negative.support().map(String::from).collect(),
                scope: CERTIFICATE_SCOPE,
            },
        })
    }
}

/// Log-canonicity of an arbitrary divisor on a configuration (coefficients
/// of either sign are tolerated; only upper bounds matter).
pub fn lc_check(config: &SurfaceConfig, boundary: &Divisor) -> LcReport {
    let mut verdict = LcVerdict::Klt;
    let mut witness = None;
    for (name, coeff) in boundary.iter() {
        match coeff.cmp_int(1) {
            std::cmp::Ordering::Greater => {
                verdict = LcVerdict::NotLc;
                witness = Some(name.to_string());
                break;
            }
            std::cmp::Ordering::Equal => {
                if verdict == LcVerdict::Klt {
                    verdict = LcVerdict::Lc;
                    witness = Some(name.to_string());
                }
            }
            std::cmp::Ordering::Less => {}
        }
    }
    let mut nodes = Vec::new();
    let names: Vec<&str> = boundary.support().collect();
    for (i, a) in names.iter().enumerate() {
        for b in names.iter().skip(i + 1) {
            let count = config.nodes_between(a, b).unwrap_or(0);
            if count > 0 && boundary.get(a).is_positive() && boundary.get(b).is_positive() {
                nodes.push(NodeCodiscrepancy {
                    curves: (a.to_string(), b.to_string()),
                    value: boundary.get(a) + boundary.get(b) - Rat::one(),
                });
            }
        }
    }
    LcReport {
        verdict,
        witness,
        nodes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn plane_with_lines(n: usize, coeff: Rat) -> LogPair {
        let mut c = SurfaceConfig::new(BaseKind::ProjectivePlane);
        let mut b = Divisor::new();
        for i in 1..=n {
            c.add_curve(format!("L{i}"), &[("L", 1)]).unwrap();
            b.set(format!("L{i}"), coeff.clone());
        }
        LogPair::new(c, b).unwrap()
    }

    #[test]
    fn lc_check_worked_examples() {
        // 4 coefficient-1 general lines: lc, not klt, node codiscrepancies 1
        let pair = plane_with_lines(4, Rat::one());
        let r = pair.lc_check();
        assert_eq!(r.verdict, LcVerdict::Lc);
        assert!(r.witness.is_some());
        assert_eq!(r.nodes.len(), 6);
        assert!(r.nodes.iter().all(|n| n.value.is_one()));

        // any coefficient 3/2: not lc
        let pair = plane_with_lines(2, rat(3, 2));
        let r = pair.lc_check();
        assert_eq!(r.verdict, LcVerdict::NotLc);

        // all 1/2: klt
        let pair = plane_with_lines(3, rat(1, 2));
        assert_eq!(pair.lc_check().verdict, LcVerdict::Klt);
    }

    #[test]
    fn accessible_centers() {
        // every coefficient-1 line meets the others
        let pair = plane_with_lines(4, Rat::one());
        let w = pair.accessible_nklt().unwrap();
        assert_eq!(w.len(), 4);
        assert!(w.iter().all(|x| x.meets.len() == 3));

        // a single coefficient-1 curve with no other boundary: inaccessible
        let pair = plane_with_lines(1, Rat::one());
        assert!(pair.accessible_nklt().unwrap().is_empty());

        // klt pair: no centers at all
        let pair = plane_with_lines(4, rat(1, 2));
        assert!(pair.accessible_nklt().unwrap().is_empty());

        // not lc: signalled
        let pair = plane_with_lines(2, rat(3, 2));
        assert!(matches!(
            pair.accessible_nklt(),
            Err(SurfaceError::NotLogCanonical { .. })
        ));
    }

    #[test]
    fn volume_of_line_arrangements() {
        // 4 general lines: (K+B)^2 = (-3L + 4L)^2 = 1
        let pair = plane_with_lines(4, Rat::one());
        let v = pair.volume().unwrap();
        assert_eq!(v.value, Rat::one());
        assert!(v.certificate.config_nef);
        assert!(v.certificate.contracted.is_empty());

        // 3 general lines: K + B = 0, not big
        let pair = plane_with_lines(3, Rat::one());
        assert!(matches!(
            pair.volume(),
            Err(SurfaceError::NotBig { value }) if value.is_zero()
        ));
    }

    #[test]
    fn volume_contracts_a_negative_chain() {
        // 4 lines plus a tower of two infinitely-near general points:
        // K + B = L + e1 + e2 contracts E1 + 2 E2, leaving volume 1
        let mut c = SurfaceConfig::new(BaseKind::ProjectivePlane);
        let mut b = Divisor::new();
        for i in 1..=4 {
            c.add_curve(format!("L{i}"), &[("L", 1)]).unwrap();
            b.set(format!("L{i}"), Rat::one());
        }
        c.blow_up(PointSpec::General, "E1").unwrap();
        c.blow_up(PointSpec::on("E1"), "E2").unwrap();
        let pair = LogPair::new(c, b).unwrap();
        // the raw self-intersection is smaller than the volume
        assert_eq!(pair.self_intersection().unwrap(), rat(-1, 1));
        let v = pair.volume().unwrap();
        assert_eq!(v.value, Rat::one());
        assert_eq!(v.certificate.contracted, vec!["E1", "E2"]);
        assert!(v.certificate.config_nef);
    }

    #[test]
    fn pair_validation() {
        let mut c = SurfaceConfig::new(BaseKind::ProjectivePlane);
        c.add_curve("L1", &[("L", 1)]).unwrap();
        let bad = Divisor::from_pairs([("L9", Rat::one())]);
        assert!(LogPair::new(c.clone(), bad).is_err());
        let bad = Divisor::from_pairs([("L1", rat(-1, 2))]);
        assert!(LogPair::new(c, bad).is_err());
    }

    #[test]
    fn log_pullback_of_lc_pair_stays_lc() {
        let mut c = SurfaceConfig::new(BaseKind::ProjectivePlane);
        for i in 1..=4 {
            c.add_curve(format!("L{i}"), &[("L", 1)]).unwrap();
        }
        let mut b = Divisor::new();
        for i in 1..=4 {
            b.set(format!("L{i}"), if i % 2 == 0 { Rat::one() } else { rat(2, 3) });
        }
        c.blow_up(PointSpec::node("L1", "L2"), "E1").unwrap();
        c.blow_up(PointSpec::node("E1", "L2"), "E2").unwrap();
        c.blow_up(PointSpec::on("L3"), "E3").unwrap();
        c.blow_up(PointSpec::General, "E4").unwrap();
        let by = c.log_pullback(&b, 0).unwrap();
        let r = lc_check(&c, &by);
        assert_ne!(r.verdict, LcVerdict::NotLc);
        // exceptional coefficients stay at most 1
        for e in ["E1", "E2", "E3", "E4"] {
            assert!(by.get(e).cmp_int(1).is_le());
        }
    }
}

//! Zariski decomposition relative to the tracked configuration curves.
//!
//! Given a class `D`, the classical iteration enlarges a candidate negative
//! support: collect every tracked curve pairing negatively with the current
//! positive part, solve the exact linear system `(D - N).C = 0` on the
//! support, and repeat until the positive part pairs nonnegatively with every
//! tracked curve. The support Gram matrix must stay negative definite; when
//! it does not, no configuration-supported decomposition exists.

use crate::linalg::RatMatrix;
use crate::rational::Rat;
use crate::surfaces::config::{Class, Divisor, SurfaceConfig};
use crate::surfaces::SurfaceError;

/// Result of a configuration-relative Zariski decomposition `D = P + N`.
#[derive(Clone, Debug)]
pub struct ZariskiResult {
    /// The positive part `P` as a class.
    pub positive: Class,
    /// The negative part `N`, an effective combination of tracked curves.
    pub negative: Divisor,
    /// `P.C >= 0` for every tracked curve (always true on success).
    pub config_nef: bool,
    /// The support Gram matrix of `N` is negative definite (vacuous for
    /// empty support).
    pub support_negative_definite: bool,
}

impl ZariskiResult {
    /// `P^2`, the volume of the class when `P` is genuinely nef and big.
    pub fn positive_square(&self, config: &SurfaceConfig) -> Rat {
        config.pair_classes(&self.positive, &self.positive)
    }
}

/// Computes the Zariski decomposition of `d` relative to the tracked curves
/// of `config`.
pub fn zariski(config: &SurfaceConfig, d: &Class) -> Result<ZariskiResult, SurfaceError> {
    let names: Vec<String> = config.curve_names().map(String::from).collect();
    let mut support: Vec<usize> = Vec::new();
    let mut in_support = vec![false; names.len()];
    let mut negative = Divisor::new();
    let mut positive = d.clone();

    loop {
        let mut grew = false;
        for (i, name) in names.iter().enumerate() {
            if in_support[i] {
                continue;
            }
            if config.pair_with_curve(&positive, name)?.is_negative() {
                support.push(i);
                in_support[i] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }

        // support Gram matrix and the system  sum_j x_j (C_j . C_i) = D . C_i
        let k = support.len();
        let mut gram = RatMatrix::zero(k);
        let classes: Vec<Class> = support
            .iter()
            .map(|&i| config.curve_class(&names[i]).expect("tracked curve"))
            .collect();
        for a in 0..k {
            for b in a..k {
                let p = config.pair_classes(&classes[a], &classes[b]);
                gram.set(a, b, p.clone());
                gram.set(b, a, p);
            }
        }
        if !gram.is_negative_definite() {
            let witness = names[*support.last().expect("nonempty support")].clone();
            return Err(SurfaceError::NoConfigZariski { curve: witness });
        }
        let rhs: Vec<Rat> = support
            .iter()
            .map(|&i| config.pair_with_curve(d, &names[i]))
            .collect::<Result<_, _>>()?;
        let x = gram
            .solve(&rhs)
            .ok_or(SurfaceError::ZariskiContract("support system is singular"))?;
        negative = Divisor::new();
        for (j, &i) in support.iter().enumerate() {
            negative.set(names[i].clone(), x[j].clone());
        }
        positive = d.sub(&config.class_of(&negative)?);
    }

    if !negative.is_effective() {
        return Err(SurfaceError::ZariskiContract("negative part not effective"));
    }

    #[cfg(debug_assertions)]
    {
        // full contract check in test builds
        for name in &names {
            let v = config.pair_with_curve(&positive, name)?;
            debug_assert!(!v.is_negative(), "P.{name} = {v} < 0");
            if negative.get(name).is_positive() {
                debug_assert!(v.is_zero(), "P.{name} = {v} != 0 on the support");
            }
        }
        let n_class = config.class_of(&negative)?;
        let back = positive.add(&n_class);
        let diff = d.sub(&back);
        debug_assert!(
            diff.0.iter().all(|c| c.is_zero()),
            "P + N does not reassemble D"
        );
    }

    Ok(ZariskiResult {
        positive,
        negative,
        config_nef: true,
        support_negative_definite: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::surfaces::base::BaseKind;
    use crate::surfaces::config::PointSpec;

    #[test]
    fn worked_example_blowup_of_plane() {
        // D = L + E on the blow-up of P^2 at a general point: P = L, N = E
        let mut c = SurfaceConfig::new(BaseKind::ProjectivePlane);
        c.add_curve("L1", &[("L", 1)]).unwrap();
        c.blow_up(PointSpec::General, "E1").unwrap();
        let d = c
            .class_of(&Divisor::from_pairs([
                ("L1", Rat::one()),
                ("E1", Rat::one()),
            ]))
            .unwrap();
        let z = zariski(&c, &d).unwrap();
        assert_eq!(z.negative.get("E1"), Rat::one());
        assert_eq!(z.negative.len(), 1);
        assert_eq!(z.positive_square(&c), Rat::one());
        assert!(z.config_nef && z.support_negative_definite);
        assert_eq!(c.pair_with_curve(&z.positive, "E1").unwrap(), Rat::zero());
    }

    #[test]
    fn nef_input_passes_through() {
        let mut c = SurfaceConfig::new(BaseKind::ProjectivePlane);
        c.add_curve("L1", &[("L", 1)]).unwrap();
        let d = c.curve_class("L1").unwrap();
        let z = zariski(&c, &d).unwrap();
        assert!(z.negative.is_empty());
        assert_eq!(z.positive_square(&c), Rat::one());
    }

    #[test]
    fn positive_self_intersection_support_is_rejected() {
        // D = -L pairs negatively with the line, whose Gram is (1): no
        // configuration-supported decomposition
        let mut c = SurfaceConfig::new(BaseKind::ProjectivePlane);
        c.add_curve("L1", &[("L", 1)]).unwrap();
        let d = c.curve_class("L1").unwrap().scale(&rat(-1, 1));
        assert!(matches!(
            zariski(&c, &d),
            Err(SurfaceError::NoConfigZariski { .. })
        ));
    }

    #[test]
    fn support_grows_over_a_chain() {
        // P^2 with 4 general lines, a general point blown up twice (the
        // second center on E1): K + B = L + e1 + e2 contracts the whole
        // (-2, -1) chain, N = E1 + 2 E2, P = L.
        let mut c = SurfaceConfig::new(BaseKind::ProjectivePlane);
        for i in 1..=4 {
            c.add_curve(format!("L{i}"), &[("L", 1)]).unwrap();
        }
        c.blow_up(PointSpec::General, "E1").unwrap();
        c.blow_up(PointSpec::on("E1"), "E2").unwrap();
        let mut b = Divisor::new();
        for i in 1..=4 {
            b.set(format!("L{i}"), Rat::one());
        }
        let d = c.canonical_class().add(&c.class_of(&b).unwrap());
        let d_sq = c.pair_classes(&d, &d);
        assert_eq!(d_sq, Rat::from_int(-1));
        let z = zariski(&c, &d).unwrap();
        assert_eq!(z.negative.get("E1"), Rat::one());
        assert_eq!(z.negative.get("E2"), Rat::from_int(2));
        assert_eq!(z.positive_square(&c), Rat::one());
        for name in ["E1", "E2"] {
            assert_eq!(c.pair_with_curve(&z.positive, name).unwrap(), Rat::zero());
        }
        assert!(z.positive_square(&c) >= d_sq);
    }
}

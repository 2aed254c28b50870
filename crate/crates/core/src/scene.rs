//! The JSON scene format: a textual description of a base surface, its
//! declared curves, a blow-up script, and a boundary divisor.
//!
//! ```json
//! {
//!   "base": {"kind": "P2"},
//!   "curves": [{"name": "B1", "class": {"L": 1}}, {"name": "B2", "class": {"L": 1}}],
//!   "blowups": [{"at": {"node": ["B1", "B2"]}, "name": "E1"},
//!               {"at": {"on": "B2"}, "name": "E2"},
//!               {"at": "general", "name": "E3"}],
//!   "boundary": {"B1": "1", "B2": "2/3"}
//! }
//! ```
//!
//! Bases are `{"kind": "P2"}`, `{"kind": "P1xP1"}` or
//! `{"kind": "Hirzebruch", "n": 1}`; class vectors are maps over the
//! generator names (`L`; `f1`, `f2`; `sigma`, `f`); rationals are `p/q`
//! strings. A scene emitted from a configuration reparses to an identical
//! configuration: same curve pairing matrix, same canonical class, same
//! boundary.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::rational::Rat;
use crate::surfaces::{
    BaseKind, CurveOrigin, Divisor, LogPair, PointSpec, SurfaceConfig, SurfaceError,
};

/// Errors reading or writing scenes.
#[derive(Debug, thiserror::Error)]
pub enum SceneError {
    #[error("invalid scene json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("curve {name:?} was declared after blow-ups and cannot be emitted")]
    CurveAfterBlowups { name: String },
    #[error("curve {name:?} uses exceptional classes and cannot be emitted")]
    CurveUsesExceptionalClasses { name: String },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind")]
pub enum SceneBase {
    #[serde(rename = "P2")]
    P2,
    #[serde(rename = "P1xP1")]
    P1xP1,
    Hirzebruch { n: u32 },
}

impl From<SceneBase> for BaseKind {
    fn from(b: SceneBase) -> BaseKind {
        match b {
            SceneBase::P2 => BaseKind::ProjectivePlane,
            SceneBase::P1xP1 => BaseKind::QuadricP1xP1,
            SceneBase::Hirzebruch { n } => BaseKind::Hirzebruch(n),
        }
    }
}

impl From<BaseKind> for SceneBase {
    fn from(b: BaseKind) -> SceneBase {
        match b {
            BaseKind::ProjectivePlane => SceneBase::P2,
            BaseKind::QuadricP1xP1 => SceneBase::P1xP1,
            BaseKind::Hirzebruch(n) => SceneBase::Hirzebruch { n },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SceneCurve {
    pub name: String,
    pub class: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum GeneralTag {
    General,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum SceneAt {
    Node { node: (String, String) },
    On { on: String },
    General(GeneralTag),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SceneBlowup {
    pub at: SceneAt,
    pub name: String,
}

/// A complete scene file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Scene {
    pub base: SceneBase,
    #[serde(default)]
    pub curves: Vec<SceneCurve>,
    #[serde(default)]
    pub blowups: Vec<SceneBlowup>,
    #[serde(default)]
    pub boundary: BTreeMap<String, Rat>,
}

impl Scene {
    pub fn from_json(text: &str) -> Result<Self, SceneError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serialization cannot fail")
    }

    /// Builds the configuration and boundary described by the scene.
    pub fn build(&self) -> Result<(SurfaceConfig, Divisor), SceneError> {
        let mut config = SurfaceConfig::new(self.base.clone().into());
        for c in &self.curves {
            let class: Vec<(&str, i64)> =
                c.class.iter().map(|(k, &v)| (k.as_str(), v)).collect();
            config.add_curve(c.name.clone(), &class)?;
        }
        for b in &self.blowups {
            let spec = match &b.at {
                SceneAt::Node { node } => PointSpec::Node(node.0.clone(), node.1.clone()),
                SceneAt::On { on } => PointSpec::On(on.clone()),
                SceneAt::General(_) => PointSpec::General,
            };
            config.blow_up(spec, b.name.clone())?;
        }
        let mut boundary = Divisor::new();
        for (name, coeff) in &self.boundary {
            boundary.set(name.clone(), coeff.clone());
        }
        Ok((config, boundary))
    }

    /// Builds a validated log pair.
    pub fn build_pair(&self) -> Result<LogPair, SceneError> {
        let (config, boundary) = self.build()?;
        Ok(LogPair::new(config, boundary)?)
    }

    /// Serializes a configuration and boundary back into a scene. Curves
    /// must have been declared before all blow-ups, with classes over the
    /// generators only; everything the construction generators produce
    /// satisfies this.
    pub fn emit(config: &SurfaceConfig, boundary: &Divisor) -> Result<Scene, SceneError> {
        let generators = config.base().generator_names();
        let mut curves = Vec::new();
        for cd in config.curves() {
            if cd.origin != CurveOrigin::Exceptional {
                if cd.stage != 0 {
                    return Err(SceneError::CurveAfterBlowups {
                        name: cd.name.clone(),
                    });
                }
                let declared = config.declared_class(&cd.name)?;
                if declared.len() > generators.len() {
                    return Err(SceneError::CurveUsesExceptionalClasses {
                        name: cd.name.clone(),
                    });
                }
                let mut class = BTreeMap::new();
                for (i, &v) in declared.iter().enumerate() {
                    if v != 0 {
                        class.insert(generators[i].to_string(), v);
                    }
                }
                curves.push(SceneCurve {
                    name: cd.name.clone(),
                    class,
                });
            }
        }
        let blowups = config
            .blowups()
            .iter()
            .map(|rec| SceneBlowup {
                at: match &rec.at {
                    PointSpec::Node(a, b) => SceneAt::Node {
                        node: (a.clone(), b.clone()),
                    },
                    PointSpec::On(c) => SceneAt::On { on: c.clone() },
                    PointSpec::General => SceneAt::General(GeneralTag::General),
                },
                name: rec.name.clone(),
            })
            .collect();
        let boundary = boundary
            .iter()
            .map(|(n, c)| (n.to_string(), c.clone()))
            .collect();
        Ok(Scene {
            base: config.base().into(),
            curves,
            blowups,
            boundary,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    const EXAMPLE: &str = r#"{
        "base": {"kind": "P2"},
        "curves": [
            {"name": "B1", "class": {"L": 1}},
            {"name": "B2", "class": {"L": 1}}
        ],
        "blowups": [
            {"at": {"node": ["B1", "B2"]}, "name": "E1"},
            {"at": {"on": "B2"}, "name": "E2"},
            {"at": "general", "name": "E3"}
        ],
        "boundary": {"B1": "1", "B2": "2/3"}
    }"#;

    #[test]
    fn parse_and_build() {
        let scene = Scene::from_json(EXAMPLE).unwrap();
        let (config, boundary) = scene.build().unwrap();
        assert_eq!(config.stage(), 3);
        assert_eq!(boundary.get("B2"), rat(2, 3));
        let k = config.canonical_class();
        assert_eq!(config.pair_classes(&k, &k), Rat::from_int(6));
        // B1 passes through one center, B2 through two
        let b1 = config.curve_class("B1").unwrap();
        let b2 = config.curve_class("B2").unwrap();
        assert_eq!(config.pair_classes(&b1, &b1), Rat::zero());
        assert_eq!(config.pair_classes(&b2, &b2), Rat::from_int(-1));
    }

    #[test]
    fn round_trip_preserves_configuration() {
        let scene = Scene::from_json(EXAMPLE).unwrap();
        let (config, boundary) = scene.build().unwrap();
        let emitted = Scene::emit(&config, &boundary).unwrap();
        let (config2, boundary2) = emitted.build().unwrap();
        assert_eq!(config.curve_gram(), config2.curve_gram());
        assert_eq!(boundary.as_map(), boundary2.as_map());
        let k1 = config.canonical_class();
        let k2 = config2.canonical_class();
        assert_eq!(
            config.pair_classes(&k1, &k1),
            config2.pair_classes(&k2, &k2)
        );
        // emitted text reparses to the identical scene value
        let again = Scene::from_json(&emitted.to_json()).unwrap();
        assert_eq!(again, emitted);
    }

    #[test]
    fn hirzebruch_base() {
        let js = r#"{"base": {"kind": "Hirzebruch", "n": 1},
                     "curves": [{"name": "G0", "class": {"sigma": 1}}],
                     "boundary": {"G0": "1"}}"#;
        let scene = Scene::from_json(js).unwrap();
        let (config, _) = scene.build().unwrap();
        let g0 = config.curve_class("G0").unwrap();
        assert_eq!(config.pair_classes(&g0, &g0), Rat::from_int(-1));
        let back: SceneBase = config.base().into();
        assert_eq!(back, SceneBase::Hirzebruch { n: 1 });
    }

    #[test]
    fn rejects_bad_scenes() {
        assert!(Scene::from_json("{").is_err());
        let js = r#"{"base": {"kind": "P3"}}"#;
        assert!(Scene::from_json(js).is_err());
        let js = r#"{"base": {"kind": "P2"},
                     "curves": [{"name": "B", "class": {"sigma": 1}}]}"#;
        let scene = Scene::from_json(js).unwrap();
        assert!(matches!(
            scene.build(),
            Err(SceneError::Surface(SurfaceError::UnknownClass(_)))
        ));
        let js = r#"{"base": {"kind": "P2"}, "boundary": {"nope": "1"}}"#;
        let scene = Scene::from_json(js).unwrap();
        assert!(scene.build_pair().is_err());
    }
}

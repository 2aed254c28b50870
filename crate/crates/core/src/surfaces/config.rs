//! Curve configurations on catalog surfaces under blow-up scripts.
//!
//! A [`SurfaceConfig`] tracks a basis of divisor classes (the base surface
//! generators followed by one class per blow-up), a list of named
//! configuration curves with their current classes (strict transforms), the
//! canonical class, and the remaining transverse intersection points between
//! each pair of tracked curves.
//!
//! The point grammar keeps every configuration simple normal crossing:
//! a blow-up center is a node of two tracked curves, a general smooth point
//! of a single curve, or a general point of the surface. Curves added to a
//! configuration sit in general position: two distinct tracked curves meet
//! transversally in exactly `C.C'` points, all distinct from the nodes of
//! other pairs.

use std::collections::BTreeMap;

use crate::rational::Rat;
use crate::surfaces::base::BaseKind;
use crate::surfaces::SurfaceError;

/// Largest magnitude accepted in a declared class entry; keeps all integer
/// pairings far away from overflow.
const MAX_CLASS_ENTRY: i64 = 1 << 20;

/// A rational divisor class over the configuration's class basis.
/// Trailing coordinates are implicitly zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class(pub Vec<Rat>);

impl Class {
    pub fn coeff(&self, i: usize) -> Rat {
        self.0.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Class) -> Class {
        let n = self.0.len().max(other.0.len());
        Class(
            (0..n)
                .map(|i| self.coeff(i) + other.coeff(i))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Class) -> Class {
        let n = self.0.len().max(other.0.len());
        Class(
            (0..n)
                .map(|i| self.coeff(i) - other.coeff(i))
                .collect(),
        )
    }

    pub fn scale(&self, t: &Rat) -> Class {
        Class(self.0.iter().map(|c| c * t).collect())
    }

    fn from_int(v: &[i64]) -> Class {
        Class(v.iter().map(|&x| Rat::from_int(x)).collect())
    }
}

/// A formal rational combination of named configuration curves.
/// Zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    coeffs: BTreeMap<String, Rat>,
}

impl Divisor {
    pub fn new() -> Self {
        Divisor::default()
    }

    pub fn from_pairs<N: Into<String>>(pairs: impl IntoIterator<Item = (N, Rat)>) -> Self {
        let mut d = Divisor::new();
        for (n, c) in pairs {
            d.set(n, c);
        }
        d
    }

    pub fn set(&mut self, name: impl Into<String>, coeff: Rat) {
        let name = name.into();
        if coeff.is_zero() {
            self.coeffs.remove(&name);
        } else {
            self.coeffs.insert(name, coeff);
        }
    }

    pub fn get(&self, name: &str) -> Rat {
        self.coeffs.get(name).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.coeffs.iter().map(|(n, c)| (n.as_str(), c))
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(|n| n.as_str())
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn as_map(&self) -> &BTreeMap<String, Rat> {
        &self.coeffs
    }
}

/// A blow-up center, named by the curves through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSpec {
    /// A remaining intersection point of two distinct tracked curves.
    Node(String, String),
    /// A general smooth point of one tracked curve, away from all nodes.
    On(String),
    /// A general point of the surface, away from all tracked curves.
    General,
}

impl PointSpec {
    pub fn node(a: impl Into<String>, b: impl Into<String>) -> Self {
        PointSpec::Node(a.into(), b.into())
    }

    pub fn on(c: impl Into<String>) -> Self {
        PointSpec::On(c.into())
    }
}

/// How a tracked curve entered the configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveOrigin {
    Declared,
    Exceptional,
}

#[derive(Clone, Debug)]
pub struct CurveData {
    pub name: String,
    /// Current class (the strict transform after all blow-ups so far).
    class: Vec<i64>,
    /// Class at declaration time, used for scene emission.
    initial_class: Vec<i64>,
    pub origin: CurveOrigin,
    /// Number of blow-ups already applied when this curve was created.
    pub stage: usize,
}

#[derive(Clone, Debug)]
pub struct BlowupRecord {
    pub at: PointSpec,
    pub name: String,
}

/// A catalog base surface together with named curves and a blow-up script.
#[derive(Clone, Debug)]
pub struct SurfaceConfig {
    base: BaseKind,
    base_gram: Vec<Vec<i64>>,
    /// Names of the basis classes: generators first, then one per blow-up.
    class_names: Vec<String>,
    curves: Vec<CurveData>,
    curve_index: BTreeMap<String, usize>,
    blowups: Vec<BlowupRecord>,
    canonical: Vec<i64>,
    /// Remaining transverse intersection points per unordered curve pair.
    incidence: BTreeMap<(usize, usize), i64>,
}

impl SurfaceConfig {
    /// A bare catalog surface with no tracked curves.
    pub fn new(base: BaseKind) -> Self {
        SurfaceConfig {
            base,
            base_gram: base.gram(),
            class_names: base
                .generator_names()
                .into_iter()
                .map(String::from)
                .collect(),
            curves: Vec::new(),
            curve_index: BTreeMap::new(),
            blowups: Vec::new(),
            canonical: base.canonical(),
            incidence: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> BaseKind {
        self.base
    }

    /// Number of blow-ups applied so far.
    pub fn stage(&self) -> usize {
        self.blowups.len()
    }

    /// Dimension of the class basis.
    pub fn rank(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn blowups(&self) -> &[BlowupRecord] {
        &self.blowups
    }

    pub fn curves(&self) -> impl Iterator<Item = &CurveData> {
        self.curves.iter()
    }

    pub fn curve_names(&self) -> impl Iterator<Item = &str> {
        self.curves.iter().map(|c| c.name.as_str())
    }

    pub fn has_curve(&self, name: &str) -> bool {
        self.curve_index.contains_key(name)
    }

    fn curve(&self, name: &str) -> Result<usize, SurfaceError> {
        self.curve_index
            .get(name)
            .copied()
            .ok_or_else(|| SurfaceError::UnknownCurve(name.to_string()))
    }

    /// Current class of a tracked curve.
    pub fn curve_class(&self, name: &str) -> Result<Class, SurfaceError> {
        Ok(Class::from_int(&self.curves[self.curve(name)?].class))
    }

    /// Class of a tracked curve at declaration time.
    pub fn declared_class(&self, name: &str) -> Result<&[i64], SurfaceError> {
        Ok(&self.curves[self.curve(name)?].initial_class)
    }

    /// The canonical class.
    pub fn canonical_class(&self) -> Class {
        Class::from_int(&self.canonical)
    }

    fn generator_count(&self) -> usize {
        self.base_gram.len()
    }

    fn int_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let g = self.generator_count();
        let at = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
        let mut acc = 0i64;
        for i in 0..g {
            for j in 0..g {
                acc += self.base_gram[i][j] * at(a, i) * at(b, j);
            }
        }
        let n = a.len().max(b.len());
        for k in g..n {
            acc -= at(a, k) * at(b, k);
        }
        acc
    }

    /// Exact Gram pairing of two rational classes.
    pub fn pair_classes(&self, a: &Class, b: &Class) -> Rat {
        let g = self.generator_count();
        let mut acc = Rat::zero();
        for i in 0..g {
            for j in 0..g {
                if self.base_gram[i][j] != 0 {
                    acc += Rat::from_int(self.base_gram[i][j]) * a.coeff(i) * b.coeff(j);
                }
            }
        }
        let n = a.0.len().min(b.0.len());
        for k in g..n {
            let (x, y) = (&a.0[k], &b.0[k]);
            if !x.is_zero() && !y.is_zero() {
                acc -= x * y;
            }
        }
        acc
    }

    /// Class of a formal combination of tracked curves.
    pub fn class_of(&self, d: &Divisor) -> Result<Class, SurfaceError> {
        let mut acc = vec![Rat::zero(); self.rank()];
        for (name, coeff) in d.iter() {
            let idx = self.curve(name)?;
            for (k, &v) in self.curves[idx].class.iter().enumerate() {
                if v != 0 {
                    acc[k] += Rat::from_int(v) * coeff;
                }
            }
        }
        Ok(Class(acc))
    }

    /// Pairing of two curve combinations.
    pub fn intersect_divisors(&self, d1: &Divisor, d2: &Divisor) -> Result<Rat, SurfaceError> {
        Ok(self.pair_classes(&self.class_of(d1)?, &self.class_of(d2)?))
    }

    /// Pairing of a rational class with a single tracked curve.
    pub fn pair_with_curve(&self, a: &Class, name: &str) -> Result<Rat, SurfaceError> {
        let idx = self.curve(name)?;
        Ok(self.pair_class_with_index(a, idx))
    }

    fn pair_class_with_index(&self, a: &Class, idx: usize) -> Rat {
        let g = self.generator_count();
        let c = &self.curves[idx].class;
        let at = |i: usize| c.get(i).copied().unwrap_or(0);
        let mut acc = Rat::zero();
        for i in 0..g {
            for j in 0..g {
                if self.base_gram[i][j] != 0 && at(j) != 0 {
                    acc += a.coeff(i) * Rat::from_int(self.base_gram[i][j] * at(j));
                }
            }
        }
        let n = a.0.len().min(c.len());
        for k in g..n {
            if c[k] != 0 && !a.0[k].is_zero() {
                acc -= &a.0[k] * Rat::from_int(c[k]);
            }
        }
        acc
    }

    /// Remaining node count between two distinct tracked curves.
    pub fn nodes_between(&self, a: &str, b: &str) -> Result<i64, SurfaceError> {
        let i = self.curve(a)?;
        let j = self.curve(b)?;
        if i == j {
            return Ok(0);
        }
        Ok(self.incidence_of(i, j))
    }

    fn incidence_of(&self, i: usize, j: usize) -> i64 {
        let key = (i.min(j), i.max(j));
        self.incidence.get(&key).copied().unwrap_or(0)
    }

    fn set_incidence(&mut self, i: usize, j: usize, v: i64) {
        let key = (i.min(j), i.max(j));
        if v == 0 {
            self.incidence.remove(&key);
        } else {
            self.incidence.insert(key, v);
        }
    }

    fn check_fresh_name(&self, name: &str) -> Result<(), SurfaceError> {
        if self.curve_index.contains_key(name)
            || self.class_names.iter().any(|c| c == name)
        {
            return Err(SurfaceError::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    /// Adds a named curve in general position with the declared class: the
    /// new curve acquires `C.C'` transverse nodes with every tracked curve
    /// `C'`, all distinct from existing nodes.
    pub fn add_curve(
        &mut self,
        name: impl Into<String>,
        class: &[(&str, i64)],
    ) -> Result<(), SurfaceError> {
        let name = name.into();
        self.check_fresh_name(&name)?;
        let mut vec = vec![0i64; self.rank()];
        for (cn, v) in class {
            if v.abs() > MAX_CLASS_ENTRY {
                return Err(SurfaceError::ClassEntryTooLarge {
                    name: name.clone(),
                    value: *v,
                });
            }
            let pos = self
                .class_names
                .iter()
                .position(|c| c == cn)
                .ok_or_else(|| SurfaceError::UnknownClass(cn.to_string()))?;
            vec[pos] += v;
        }
        // general position: incidence with each tracked curve is the pairing
        let mut new_incidences = Vec::new();
        for (i, cd) in self.curves.iter().enumerate() {
            let p = self.int_pairing(&vec, &cd.class);
            if p < 0 {
                return Err(SurfaceError::NegativeIncidence {
                    a: name.clone(),
                    b: cd.name.clone(),
                    pairing: p,
                });
            }
            if p > 0 {
                new_incidences.push((i, p));
            }
        }
        let idx = self.curves.len();
        self.curves.push(CurveData {
            name: name.clone(),
            class: vec.clone(),
            initial_class: vec,
            origin: CurveOrigin::Declared,
            stage: self.stage(),
        });
        self.curve_index.insert(name, idx);
        for (i, p) in new_incidences {
            self.set_incidence(i, idx, p);
        }
        Ok(())
    }

    /// Blows up one point. Appends an exceptional class `E` with `E^2 = -1`,
    /// turns curves through the center into their strict transforms
    /// (`C -> C - E`, meeting `E` once), and adds `E` to the canonical class.
    pub fn blow_up(
        &mut self,
        at: PointSpec,
        name: impl Into<String>,
    ) -> Result<(), SurfaceError> {
        let name = name.into();
        self.check_fresh_name(&name)?;
        let through: Vec<usize> = match &at {
            PointSpec::Node(a, b) => {
                let i = self.curve(a)?;
                let j = self.curve(b)?;
                if i == j {
                    return Err(SurfaceError::NodeNeedsDistinctCurves(a.clone()));
                }
                let left = self.incidence_of(i, j);
                if left < 1 {
                    return Err(SurfaceError::NoFreeNode {
                        a: a.clone(),
                        b: b.clone(),
                    });
                }
                self.set_incidence(i, j, left - 1);
                vec![i, j]
            }
            PointSpec::On(c) => vec![self.curve(c)?],
            PointSpec::General => Vec::new(),
        };
        let e_pos = self.rank();
        self.class_names.push(name.clone());
        for &i in &through {
            let cls = &mut self.curves[i].class;
            cls.resize(e_pos + 1, 0);
            cls[e_pos] = -1;
        }
        self.canonical.resize(e_pos + 1, 0);
        self.canonical[e_pos] = 1;
        let mut e_class = vec![0i64; e_pos + 1];
        e_class[e_pos] = 1;
        let idx = self.curves.len();
        self.curves.push(CurveData {
            name: name.clone(),
            class: e_class.clone(),
            initial_class: e_class,
            origin: CurveOrigin::Exceptional,
            stage: self.stage() + 1,
        });
        self.curve_index.insert(name.clone(), idx);
        for &i in &through {
            self.set_incidence(i, idx, 1);
        }
        self.blowups.push(BlowupRecord { at, name });
        Ok(())
    }

    fn center_curves<'a>(&self, rec: &'a BlowupRecord) -> Vec<&'a str> {
        match &rec.at {
            PointSpec::Node(a, b) => vec![a.as_str(), b.as_str()],
            PointSpec::On(c) => vec![c.as_str()],
            PointSpec::General => Vec::new(),
        }
    }

    fn check_stage(&self, d: &Divisor, from_stage: usize) -> Result<(), SurfaceError> {
        if from_stage > self.stage() {
            return Err(SurfaceError::StageMismatch {
                stage: from_stage,
                max: self.stage(),
            });
        }
        for name in d.support() {
            let idx = self.curve(name)?;
            if self.curves[idx].stage > from_stage {
                return Err(SurfaceError::CurveAfterStage {
                    name: name.to_string(),
                    stage: from_stage,
                });
            }
        }
        Ok(())
    }

    /// Total transform of a divisor defined at an earlier script stage: each
    /// blow-up after `from_stage` adds its exceptional curve with coefficient
    /// equal to the multiplicity of the transformed divisor at the center.
    pub fn pullback(&self, d: &Divisor, from_stage: usize) -> Result<Divisor, SurfaceError> {
        self.check_stage(d, from_stage)?;
        let mut out = d.clone();
        for rec in &self.blowups[from_stage..] {
            let mult: Rat = self
                .center_curves(rec)
                .into_iter()
                .map(|c| out.get(c))
                .sum();
            out.set(rec.name.clone(), mult);
        }
        Ok(out)
    }

    /// Boundary of the log pull-back: across each blow-up the exceptional
    /// coefficient is (sum of boundary coefficients through the center) - 1,
    /// so that `K + (log pull-back of B)` is the class pull-back of `K + B`.
    pub fn log_pullback(
        &self,
        boundary: &Divisor,
        from_stage: usize,
    ) -> Result<Divisor, SurfaceError> {
        self.check_stage(boundary, from_stage)?;
        let mut out = boundary.clone();
        for rec in &self.blowups[from_stage..] {
            let mult: Rat = self
                .center_curves(rec)
                .into_iter()
                .map(|c| out.get(c))
                .sum();
            out.set(rec.name.clone(), mult - Rat::one());
        }
        Ok(out)
    }

    /// Pairing matrix of all tracked curves, in creation order. Together
    /// with the canonical class this pins the configuration for round-trip
    /// comparisons.
    pub fn curve_gram(&self) -> Vec<Vec<i64>> {
        let n = self.curves.len();
        let mut g = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in i..n {
                let p = self.int_pairing(&self.curves[i].class, &self.curves[j].class);
                g[i][j] = p;
                g[j][i] = p;
            }
        }
        g
    }
}

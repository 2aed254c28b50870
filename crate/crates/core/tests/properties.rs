//! Property tests with independent oracles. The oracles here (Laplace
//! determinant expansion, direct membership search, wide family sweeps) are
//! written against nothing but `Rat`, so they cannot share a bug with the
//! production paths they check.

use proptest::prelude::*;

use logsurf_core::chains::{
    continuant, different_coefficient, log_discrepancies, BoundaryHit, Chain, ChainBoundary,
};
use logsurf_core::coeffsets::CoeffSet;
use logsurf_core::rational::{rat, Rat};
use logsurf_core::scene::Scene;
use logsurf_core::surfaces::{BaseKind, Divisor, PointSpec, SurfaceConfig};

/// Laplace expansion along the first row; exponential, fine for r <= 8.
fn laplace_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut acc = Rat::zero();
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rat>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry * &laplace_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn tridiagonal(p: &[i64]) -> Vec<Vec<Rat>> {
    let n = p.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rat::from_int(p[i])
                    } else if i.abs_diff(j) == 1 {
                        Rat::from_int(-1)
                    } else {
                        Rat::zero()
                    }
                })
                .collect()
        })
        .collect()
}

proptest! {
    #[test]
    fn continuant_equals_laplace_determinant(
        p in proptest::collection::vec(2i64..=7, 0..=8)
    ) {
        let fast = Rat::from_bigint(continuant(&p).unwrap());
        let slow = laplace_det(&tridiagonal(&p));
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn different_routes_agree(
        p in proptest::collection::vec(2i64..=7, 1..=8),
        raw_hits in proptest::collection::vec((0usize..8, 1u32..=2, 2i64..=7), 0..=3)
    ) {
        let chain = Chain::new(p.clone()).unwrap();
        let hits: Vec<BoundaryHit> = raw_hits
            .iter()
            .map(|&(idx, mult, d)| BoundaryHit {
                curve: idx % p.len() + 1,
                multiplicity: mult,
                coefficient: Rat::one() - Rat::new(1, d),
            })
            .collect();
        let boundary = ChainBoundary::new(hits);
        let det_route = different_coefficient(&chain, &boundary).unwrap();
        let system = log_discrepancies(&chain, 1, &boundary).unwrap();
        prop_assert_eq!(&det_route.value, &system[0]);
        // lc flag mirrors the codiscrepancies staying at most 1
        prop_assert_eq!(
            det_route.log_canonical,
            system.iter().all(|v| v.cmp_int(1).is_le())
        );
    }

    #[test]
    fn rational_parse_display_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = Rat::new(n, d);
        let back: Rat = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    #[test]
    fn fractional_part_contract(n in -10_000i64..10_000, d in 1i64..500) {
        let r = Rat::new(n, d);
        let f = r.frac();
        prop_assert!(!f.is_negative());
        prop_assert!(f < Rat::one());
        let reassembled = Rat::from_bigint(r.floor_int()) + &f;
        prop_assert_eq!(reassembled, r);
    }

    #[test]
    fn membership_matches_direct_search(num in 0i64..=60, den in 1i64..=60) {
        let q = Rat::new(num, den);
        let set = CoeffSet::new([rat(3, 5), rat(1, 7)], true, true).unwrap();
        let direct = q == rat(3, 5)
            || q == rat(1, 7)
            || q.is_one()
            || (2..=den + 1).any(|k| q == Rat::one() - Rat::new(1, k));
        prop_assert_eq!(set.contains(&q), direct);
    }

    #[test]
    fn t_m_reduction_matches_wide_search(m in 1u32..=60) {
        // production search stops at n = m + 1; sweep far beyond it
        let c2 = CoeffSet::c2();
        let fast = c2.t_m(m);
        let mut wide = Rat::one();
        let mr = Rat::from_int(m as i64);
        for n in 2..=(10 * m as i64) {
            let b = Rat::one() - Rat::new(1, n);
            let f = (&mr * &b).frac();
            if !f.is_zero() {
                let cand = (Rat::one() - &b) / f;
                if cand > wide {
                    wide = cand;
                }
            }
        }
        prop_assert_eq!(fast, wide);
    }

    #[test]
    fn t_m_bound_inequality_holds(m in 1u32..=40, d in 2i64..=40) {
        let c2 = CoeffSet::c2();
        let b = Rat::one() - Rat::new(1, d);
        prop_assert!(c2.t_m_lower_bound_check(m, &b));
    }

    #[test]
    fn blowup_script_preserves_structure(
        seed_curves in 2usize..=4,
        script in proptest::collection::vec((0u8..3, 0usize..16), 0..=6)
    ) {
        let mut config = SurfaceConfig::new(BaseKind::ProjectivePlane);
        for i in 1..=seed_curves {
            config.add_curve(format!("L{i}"), &[("L", 1)]).unwrap();
        }
        let mut counter = 0;
        for (kind, pick) in script {
            counter += 1;
            let name = format!("E{counter}");
            match kind {
                0 => {
                    let names: Vec<String> =
                        config.curve_names().map(String::from).collect();
                    let mut nodes = Vec::new();
                    for (i, a) in names.iter().enumerate() {
                        for b in names.iter().skip(i + 1) {
                            if config.nodes_between(a, b).unwrap() > 0 {
                                nodes.push((a.clone(), b.clone()));
                            }
                        }
                    }
                    if nodes.is_empty() {
                        config.blow_up(PointSpec::General, name).unwrap();
                    } else {
                        let (a, b) = nodes[pick % nodes.len()].clone();
                        config.blow_up(PointSpec::Node(a, b), name).unwrap();
                    }
                }
                1 => {
                    let names: Vec<String> =
                        config.curve_names().map(String::from).collect();
                    let on = names[pick % names.len()].clone();
                    config.blow_up(PointSpec::On(on), name).unwrap();
                }
                _ => config.blow_up(PointSpec::General, name).unwrap(),
            }
        }
        // genus formula for every tracked curve
        let k = config.canonical_class();
        for name in config.curve_names() {
            let c = config.curve_class(name).unwrap();
            let v = config.pair_classes(&c, &c) + config.pair_classes(&k, &c);
            prop_assert_eq!(v, Rat::from_int(-2));
        }
        // canonical self-intersection drops by one per blow-up
        prop_assert_eq!(
            config.pair_classes(&k, &k),
            Rat::from_int(9 - config.stage() as i64)
        );
        // projection formula for the pull-back of the full line divisor
        let d = Divisor::from_pairs(
            (1..=seed_curves).map(|i| (format!("L{i}"), Rat::one())),
        );
        let pb = config.pullback(&d, 0).unwrap();
        let self_pairing = config.intersect_divisors(&pb, &pb).unwrap();
        prop_assert_eq!(
            self_pairing,
            Rat::from_int((seed_curves * seed_curves) as i64)
        );
    }

    #[test]
    fn scene_round_trip_preserves_everything(
        lines in 2usize..=4,
        script in proptest::collection::vec((0u8..3, 0usize..16), 0..=5),
        coeffs in proptest::collection::vec(1i64..=6, 12)
    ) {
        let mut config = SurfaceConfig::new(BaseKind::ProjectivePlane);
        for i in 1..=lines {
            config.add_curve(format!("L{i}"), &[("L", 1)]).unwrap();
        }
        let mut counter = 0;
        for (kind, pick) in script {
            counter += 1;
            let name = format!("E{counter}");
            let names: Vec<String> = config.curve_names().map(String::from).collect();
            match kind {
                0 => {
                    let mut nodes = Vec::new();
                    for (i, a) in names.iter().enumerate() {
                        for b in names.iter().skip(i + 1) {
                            if config.nodes_between(a, b).unwrap() > 0 {
                                nodes.push((a.clone(), b.clone()));
                            }
                        }
                    }
                    if nodes.is_empty() {
                        config.blow_up(PointSpec::General, name).unwrap();
                    } else {
                        let (a, b) = nodes[pick % nodes.len()].clone();
                        config.blow_up(PointSpec::Node(a, b), name).unwrap();
                    }
                }
                1 => {
                    let on = names[pick % names.len()].clone();
                    config.blow_up(PointSpec::On(on), name).unwrap();
                }
                _ => config.blow_up(PointSpec::General, name).unwrap(),
            }
        }
        let mut boundary = Divisor::new();
        for (k, name) in config.curve_names().map(String::from).enumerate() {
            let d = coeffs[k % coeffs.len()];
            boundary.set(name, Rat::new(1, d));
        }
        let scene = Scene::emit(&config, &boundary).unwrap();
        let reparsed = Scene::from_json(&scene.to_json()).unwrap();
        let (config2, boundary2) = reparsed.build().unwrap();
        prop_assert_eq!(config.curve_gram(), config2.curve_gram());
        prop_assert_eq!(boundary.as_map(), boundary2.as_map());
        let k1 = config.canonical_class();
        let k2 = config2.canonical_class();
        prop_assert_eq!(
            config.pair_classes(&k1, &k1),
            config2.pair_classes(&k2, &k2)
        );
    }

    #[test]
    fn volume_is_monotone_under_coefficient_increase(
        n in 4u32..=7,
        num in 1i64..=5,
        drops in proptest::collection::vec(0i64..=4, 7)
    ) {
        // lower some coefficients of an n-line arrangement componentwise
        // (B <= B'); whenever both K + B and K + B' stay config-nef, the
        // self-intersections (the volumes in the nef case) are ordered
        let t = Rat::new(num, 5);
        let mut config = SurfaceConfig::new(BaseKind::ProjectivePlane);
        let mut big = Divisor::new();
        let mut small = Divisor::new();
        for i in 1..=n {
            config.add_curve(format!("L{i}"), &[("L", 1)]).unwrap();
            big.set(format!("L{i}"), Rat::one());
            let down = Rat::new(drops[(i - 1) as usize], 20);
            small.set(format!("L{i}"), (Rat::one() - down) * &t);
        }
        let kb_big = config.canonical_class().add(&config.class_of(&big).unwrap());
        let kb_small = config
            .canonical_class()
            .add(&config.class_of(&small).unwrap());
        let nef = |kb: &logsurf_core::surfaces::Class| {
            (1..=n).all(|i| {
                !config
                    .pair_with_curve(kb, &format!("L{i}"))
                    .unwrap()
                    .is_negative()
            })
        };
        if nef(&kb_small) && nef(&kb_big) {
            let v_small = config.pair_classes(&kb_small, &kb_small);
            let v_big = config.pair_classes(&kb_big, &kb_big);
            prop_assert!(v_small <= v_big);
        }
    }
}

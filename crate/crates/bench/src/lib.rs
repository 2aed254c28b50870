//! Shared fixtures for the benchmarks.

use logsurf_core::rational::Rat;
use logsurf_core::surfaces::{BaseKind, Divisor, PointSpec, SurfaceConfig};

/// A plane configuration with `lines` general coefficient-1 lines and a
/// tower of `depth` infinitely-near general points (each center on the
/// previous exceptional curve). `K + B` is negative along the whole tower,
/// so the Zariski iteration has to grow its support curve by curve.
pub fn towered_plane(lines: u32, depth: u32) -> (SurfaceConfig, Divisor) {
    let mut config = SurfaceConfig::new(BaseKind::ProjectivePlane);
    let mut boundary = Divisor::new();
    for i in 1..=lines {
        config.add_curve(format!("L{i}"), &[("L", 1)]).unwrap();
        boundary.set(format!("L{i}"), Rat::one());
    }
    config.blow_up(PointSpec::General, "E1").unwrap();
    for i in 2..=depth {
        config
            .blow_up(PointSpec::on(format!("E{}", i - 1)), format!("E{i}"))
            .unwrap();
    }
    (config, boundary)
}

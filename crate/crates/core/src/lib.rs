//! Exact-rational computational toolkit for log surface pairs.
//!
//! The crate represents pairs `(X, B)` as curve configurations on catalog
//! surfaces together with blow-up scripts, and computes, in exact rational
//! arithmetic throughout, intersection numbers, log-canonicity verdicts,
//! configuration-relative Zariski decompositions and volumes, Hirzebruch-Jung
//! chain adjunction (the different), DCC coefficient-set machinery, and a
//! family of construction generators that realize prescribed volume limits.
//!
//! Modules:
//!
//! - [`rational`]: the exact scalar type [`Rat`].
//! - [`coeffsets`]: DCC coefficient sets, derivative sets, `t_m` maxima.
//! - [`chains`]: chain continuants, singularity indices, the different.
//! - [`surfaces`]: configurations, blow-ups, Zariski decomposition, volume.
//! - [`constructions`]: generators for volume sequences and bounds.
//! - [`scene`]: the JSON scene format shared with the command-line tool.
//! - [`verify`]: the self-contained verification suite.

pub mod chains;
pub mod coeffsets;
pub mod constructions;
pub mod linalg;
pub mod rational;
pub mod scene;
pub mod surfaces;
pub mod verify;

pub use chains::{BoundaryHit, Chain, ChainBoundary, ChainError};
pub use coeffsets::{CoeffSet, CoeffSetError};
pub use rational::{rat, Rat};
pub use surfaces::{
    lc_check, zariski, BaseKind, Class, Divisor, LcReport, LcVerdict, LogPair, PointSpec,
    SurfaceConfig, SurfaceError, VolumeOutcome, ZariskiResult,
};

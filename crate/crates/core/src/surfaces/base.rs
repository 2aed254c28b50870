//! Catalog of base surfaces: the projective plane, the smooth quadric, and
//! the Hirzebruch surfaces, each given by its generator classes, their Gram
//! matrix, and the canonical class.

/// A catalog base surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseKind {
    /// `P^2`: one generator `L` with `L^2 = 1`, `K = -3L`.
    ProjectivePlane,
    /// `P^1 x P^1`: generators `f1, f2` with `f1^2 = f2^2 = 0`,
    /// `f1.f2 = 1`, `K = -2f1 - 2f2`.
    QuadricP1xP1,
    /// `F_n`: generators `sigma, f` with `sigma^2 = -n`, `sigma.f = 1`,
    /// `f^2 = 0`, `K = -2 sigma - (n+2) f`.
    Hirzebruch(u32),
}

impl BaseKind {
    pub fn generator_names(&self) -> Vec<&'static str> {
        match self {
            BaseKind::ProjectivePlane => vec!["L"],
            BaseKind::QuadricP1xP1 => vec!["f1", "f2"],
            BaseKind::Hirzebruch(_) => vec!["sigma", "f"],
        }
    }

    /// Gram matrix of the generator classes.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        match self {
            BaseKind::ProjectivePlane => vec![vec![1]],
            BaseKind::QuadricP1xP1 => vec![vec![0, 1], vec![1, 0]],
            BaseKind::Hirzebruch(n) => vec![vec![-(*n as i64), 1], vec![1, 0]],
        }
    }

    /// Canonical class in the generator basis.
    pub fn canonical(&self) -> Vec<i64> {
        match self {
            BaseKind::ProjectivePlane => vec![-3],
            BaseKind::QuadricP1xP1 => vec![-2, -2],
            BaseKind::Hirzebruch(n) => vec![-2, -(*n as i64 + 2)],
        }
    }

    pub fn label(&self) -> String {
        match self {
            BaseKind::ProjectivePlane => "P2".to_string(),
            BaseKind::QuadricP1xP1 => "P1xP1".to_string(),
            BaseKind::Hirzebruch(n) => format!("F{n}"),
        }
    }
}

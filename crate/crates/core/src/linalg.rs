//! Small exact linear algebra over the rationals: Gaussian elimination,
//! determinants, and negative-definiteness tests for symmetric matrices.
//! Everything here is dense and intended for the small systems that arise
//! from curve configurations (a few dozen rows at most).

use crate::rational::Rat;

/// Dense square matrix of exact rationals, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![Rat::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        RatMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.n + j] = v;
    }

    /// Determinant by fraction-free-ish Gaussian elimination (exact).
    pub fn determinant(&self) -> Rat {
        let mut m = self.clone();
        let n = m.n;
        let mut det = Rat::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !m.get(r, col).is_zero()) {
                Some(r) => r,
                None => return Rat::zero(),
            };
            if pivot_row != col {
                for j in 0..n {
                    m.data.swap(pivot_row * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det = det * &pivot;
            for r in (col + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for j in col..n {
                    let v = m.get(r, j) - &factor * m.get(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    /// Solves `self * x = rhs` exactly. Returns `None` when singular.
    pub fn solve(&self, rhs: &[Rat]) -> Option<Vec<Rat>> {
        let n = self.n;
        assert_eq!(rhs.len(), n);
        let mut m = self.clone();
        let mut b = rhs.to_vec();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !m.get(r, col).is_zero())?;
            if pivot_row != col {
                for j in 0..n {
                    m.data.swap(pivot_row * n + j, col * n + j);
                }
                b.swap(pivot_row, col);
            }
            let pivot = m.get(col, col).clone();
            for r in (col + 1)..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for j in col..n {
                    let v = m.get(r, j) - &factor * m.get(col, j);
                    m.set(r, j, v);
                }
                let v = &b[r] - &factor * &b[col];
                b[r] = v;
            }
        }
        let mut x = vec![Rat::zero(); n];
        for i in (0..n).rev() {
            let mut acc = b[i].clone();
            for j in (i + 1)..n {
                acc -= m.get(i, j) * &x[j];
            }
            x[i] = acc / m.get(i, i);
        }
        Some(x)
    }

    /// Sylvester test: a symmetric matrix is negative definite iff the
    /// leading principal minors alternate in sign starting negative,
    /// i.e. `(-1)^k det_k > 0` for all `k`.
    pub fn is_negative_definite(&self) -> bool {
        for k in 1..=self.n {
            let mut minor = RatMatrix::zero(k);
            for i in 0..k {
                for j in 0..k {
                    minor.set(i, j, self.get(i, j).clone());
                }
            }
            let d = minor.determinant();
            let ok = if k % 2 == 1 {
                d.is_negative()
            } else {
                d.is_positive()
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[&[2]]).determinant(), Rat::from_int(2));
        assert_eq!(m(&[&[2, -1], &[-1, 2]]).determinant(), Rat::from_int(3));
        assert_eq!(
            m(&[&[2, -1, 0], &[-1, 3, -1], &[0, -1, 6]]).determinant(),
            Rat::from_int(28)
        );
        assert_eq!(m(&[&[1, 2], &[2, 4]]).determinant(), Rat::zero());
        assert_eq!(RatMatrix::zero(0).determinant(), Rat::one());
    }

    #[test]
    fn solve_exact() {
        let a = m(&[&[2, -1], &[-1, 2]]);
        let x = a.solve(&[Rat::one(), Rat::zero()]).unwrap();
        assert_eq!(x, vec![rat(2, 3), rat(1, 3)]);
        let singular = m(&[&[1, 1], &[1, 1]]);
        assert!(singular.solve(&[Rat::one(), Rat::zero()]).is_none());
    }

    #[test]
    fn negative_definiteness() {
        assert!(m(&[&[-2, 1], &[1, -2]]).is_negative_definite());
        assert!(!m(&[&[1]]).is_negative_definite());
        assert!(!m(&[&[-1, 2], &[2, -1]]).is_negative_definite());
        // chain Gram matrices are negative definite
        assert!(m(&[&[-2, 1, 0], &[1, -3, 1], &[0, 1, -6]]).is_negative_definite());
    }
}

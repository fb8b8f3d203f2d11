//! The q-intersection datum of a Lefschetz fibration and what can be read off
//! from it without geometry: the pairing, the q-monodromy, the classical
//! specialization, the Givental deformation and the double branched cover.
//!
//! Conventions. `B` is the matrix of q-intersection numbers of the vanishing
//! cycles, `A` its upper unitriangular part, and the two determine each other
//! through `B = A - q(-1)^n A*`. Classes are coordinate vectors in the basis of
//! thimbles, and the pairing is `star(h0)^T A h1`.

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::{IntMatrix, KClass, LaurentMatrix};

/// `(-1)^n`.
pub fn parity_sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `1 + (-1)^n q`, the self-pairing of a Lagrangian sphere in dimension `n`.
pub fn sphere_self_pairing(n: i64) -> LaurentPoly {
    LaurentPoly::one() + LaurentPoly::monomial(parity_sign(n), 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LefschetzAlgebra {
    n: i64,
    a: LaurentMatrix,
    b: LaurentMatrix,
}

/// Specialization at `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalData {
    pub a: IntMatrix,
    pub b: IntMatrix,
    /// `N = (-1)^n A^-1 A^T`.
    pub monodromy: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCover {
    pub algebra: LefschetzAlgebra,
    /// `e_{k+m} - e_k` for each `k`, the classes of the matching spheres.
    pub matching_classes: Vec<KClass>,
}

/// `A - q(-1)^n A*`.
fn b_from_a(n: i64, a: &LaurentMatrix) -> LaurentMatrix {
    let factor = LaurentPoly::monomial(parity_sign(n), 1);
    a.sub(&a.star_transpose().scale(&factor))
        .expect("A and A* have the same shape")
}

impl LefschetzAlgebra {
    /// Reads off `A` from the upper triangle of `B` and checks the relation
    /// between them entry by entry.
    pub fn from_b(n: i64, b: LaurentMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::NotSquare {
                rows: b.rows(),
                cols: b.cols(),
            });
        }
        let m = b.rows();
        let a = LaurentMatrix::from_fn(m, m, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => b.get(i, j).clone(),
            std::cmp::Ordering::Equal => LaurentPoly::one(),
            std::cmp::Ordering::Greater => LaurentPoly::zero(),
        });
        let expected = b_from_a(n, &a);
        for i in 0..m {
            for j in 0..m {
                if expected.get(i, j) != b.get(i, j) {
                    return Err(Error::Inconsistent {
                        row: i + 1,
                        col: j + 1,
                        expected: expected.get(i, j).to_string(),
                        found: b.get(i, j).to_string(),
                    });
                }
            }
        }
        Ok(Self { n, a, b })
    }

    pub fn from_a(n: i64, a: LaurentMatrix) -> Result<Self> {
        a.check_unitriangular()?;
        let b = b_from_a(n, &a);
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Number of vanishing cycles.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &LaurentMatrix {
        &self.a
    }

    pub fn b(&self) -> &LaurentMatrix {
        &self.b
    }

    /// The same `A` read in another dimension parity.
    pub fn with_n(&self, n: i64) -> Self {
        Self::from_a(n, self.a.clone()).expect("A is unitriangular")
    }

    pub fn sign(&self) -> i64 {
        parity_sign(self.n)
    }

    fn check_class(&self, h: &KClass) -> Result<()> {
        if h.len() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "class of length {} in an algebra with m = {}",
                h.len(),
                self.m()
            )));
        }
        Ok(())
    }

    /// `star(h0)^T A h1`: star-linear in `h0`, linear in `h1`.
    pub fn pairing(&self, h0: &KClass, h1: &KClass) -> Result<LaurentPoly> {
        self.check_class(h0)?;
        let ah1 = self.a.mul_class(h1)?;
        Ok(h0
            .coords()
            .iter()
            .zip(ah1.coords())
            .map(|(x, y)| &x.star() * y)
            .sum())
    }

    /// `N_q = (-1)^n q A^-1 A*`.
    pub fn monodromy(&self) -> LaurentMatrix {
        let inv = self.a.unitriangular_inverse().expect("A is unitriangular");
        inv.mul(&self.a.star_transpose())
            .expect("square factors")
            .scale(&LaurentPoly::monomial(self.sign(), 1))
    }

    /// `(-1)^n q^-1 (A (A^-1)* A)_ij`, with 0-based indices. Equals
    /// `pairing(N_q e_i, e_j)`.
    pub fn monodromy_pairing(&self, i: usize, j: usize) -> Result<LaurentPoly> {
        let m = self.m();
        for index in [i, j] {
            if index >= m {
                return Err(Error::IndexOutOfRange { index, len: m });
            }
        }
        let inv_star = self
            .a
            .unitriangular_inverse()
            .expect("A is unitriangular")
            .star_transpose();
        let entry: LaurentPoly = (0..m)
            .flat_map(|k| (0..m).map(move |l| (k, l)))
            .map(|(k, l)| &(self.a.get(i, k) * inv_star.get(k, l)) * self.a.get(l, j))
            .sum();
        Ok(entry * LaurentPoly::monomial(self.sign(), -1))
    }

    pub fn classical(&self) -> ClassicalData {
        let a = self.a.eval_at_one();
        let b = self.b.eval_at_one();
        let monodromy = a
            .unitriangular_inverse()
            .expect("A(1) is unitriangular")
            .mul(&a.transpose())
            .expect("square factors")
            .scale(self.sign());
        ClassicalData { a, b, monodromy }
    }

    /// `A(1) - q(-1)^n A(1)^T`, whose determinant is `det(I - qN)`.
    pub fn givental_matrix(&self) -> LaurentMatrix {
        let a1 = self.a.eval_at_one().to_laurent();
        a1.sub(&a1.transpose().scale(&LaurentPoly::monomial(self.sign(), 1)))
            .expect("same shape")
    }

    /// The algebra with `A~ = [[A, B], [0, A]]` in the doubled basis.
    pub fn double_cover(&self) -> DoubleCover {
        let m = self.m();
        let a = LaurentMatrix::from_fn(2 * m, 2 * m, |i, j| match (i < m, j < m) {
            (true, true) => self.a.get(i, j).clone(),
            (true, false) => self.b.get(i, j - m).clone(),
            (false, true) => LaurentPoly::zero(),
            (false, false) => self.a.get(i - m, j - m).clone(),
        });
        let algebra = Self::from_a(self.n, a).expect("block matrix is unitriangular");
        let matching_classes = (0..m)
            .map(|k| {
                KClass::basis(2 * m, k + m)
                    .sub(&KClass::basis(2 * m, k))
                    .expect("same length")
            })
            .collect();
        DoubleCover {
            algebra,
            matching_classes,
        }
    }

    /// Gram matrix `(pairing(c_i, c_j))` of a list of classes.
    pub fn gram(&self, classes: &[KClass]) -> Result<LaurentMatrix> {
        let k = classes.len();
        let mut rows = Vec::with_capacity(k);
        for ci in classes {
            let mut row = Vec::with_capacity(k);
            for cj in classes {
                row.push(self.pairing(ci, cj)?);
            }
            rows.push(row);
        }
        if k == 0 {
            return Ok(LaurentMatrix::zeros(0, 0));
        }
        LaurentMatrix::from_rows(rows)
    }
}

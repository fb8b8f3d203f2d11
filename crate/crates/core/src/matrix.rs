//! Dense matrices and coordinate vectors over Z[q, q^-1].
//!
//! Determinants, rank and nullspaces use fraction-free (Bareiss) elimination
//! with exact division, so no rational functions are ever formed.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

/// A coordinate vector in Z[q, q^-1]^m: the equivariant K-theory class of a
/// brane or vanishing cycle with respect to a fixed basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct KClass(Vec<LaurentPoly>);

/// Integer matrix, produced by specializing at `q = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl LaurentMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, expected {c}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> LaurentPoly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| LaurentPoly::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![LaurentPoly::one(); n])
    }

    pub fn diagonal(diag: &[LaurentPoly]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                LaurentPoly::zero()
            }
        })
    }

    /// The classes as columns of an `m x k` matrix.
    pub fn from_columns(columns: &[KClass]) -> Result<Self> {
        let m = columns.first().map_or(0, KClass::len);
        if columns.iter().any(|c| c.len() != m) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        Ok(Self::from_fn(m, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly) {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<LaurentPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> KClass {
        KClass((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        }))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        self.map(|x| x * c)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| self.get(i, k) * other.get(k, j))
                .sum()
        }))
    }

    pub fn mul_class(&self, v: &KClass) -> Result<KClass> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(KClass(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|k| self.get(i, k) * &v[k]).sum())
                .collect(),
        ))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Transpose combined with `q -> q^-1`: `(A*)_ij = star(A_ji)`.
    pub fn star_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).star())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    /// Upper triangular with ones on the diagonal. On failure, returns the
    /// first offending 0-based position.
    pub fn check_unitriangular(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        for i in 0..self.rows {
            for j in 0..=i {
                let e = self.get(i, j);
                let ok = if i == j { e.is_one() } else { e.is_zero() };
                if !ok {
                    return Err(Error::NotUnitriangular {
                        row: i + 1,
                        col: j + 1,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn is_unitriangular(&self) -> bool {
        self.check_unitriangular().is_ok()
    }

    /// Determinant by Bareiss elimination with row pivoting.
    pub fn det(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPoly::one());
        }
        let mut m = self.row_vecs();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n {
            let Some(p) = choose_pivot(&m, k, k) else {
                return Ok(LaurentPoly::zero());
            };
            if p != k {
                m.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = bareiss_div(&num, &prev);
                }
                m[i][k] = LaurentPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Inverse of an upper unitriangular matrix, by back-substitution.
    pub fn unitriangular_inverse(&self) -> Result<Self> {
        self.check_unitriangular()?;
        let n = self.rows;
        let mut inv = Self::identity(n);
        for j in 0..n {
            for i in (0..j).rev() {
                let s: LaurentPoly = (i + 1..=j).map(|k| self.get(i, k) * inv.get(k, j)).sum();
                inv.set(i, j, -s);
            }
        }
        Ok(inv)
    }

    /// Rank over the fraction field Q(q).
    pub fn rank(&self) -> usize {
        self.reduce().pivot_cols.len()
    }

    /// Basis of the right nullspace over Q(q), each vector made primitive
    /// (see [`KClass::primitive`]). Its length is `cols - rank`.
    pub fn nullspace(&self) -> Vec<KClass> {
        let reduced = self.reduce();
        let d = reduced.pivot_value;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !reduced.pivot_cols.contains(c)) {
            let mut v = vec![LaurentPoly::zero(); self.cols];
            v[free] = d.clone();
            for (row, &pc) in reduced.pivot_cols.iter().enumerate() {
                v[pc] = -&reduced.rows[row][free];
            }
            basis.push(KClass(v).primitive());
        }
        basis
    }

    /// Fraction-free Gauss-Jordan elimination. After it, every pivot entry
    /// equals `pivot_value` and pivot columns are otherwise zero.
    fn reduce(&self) -> Reduced {
        let mut m = self.row_vecs();
        let mut pivot_cols = Vec::new();
        let mut prev = LaurentPoly::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = choose_pivot(&m, r, c) else {
                continue;
            };
            m.swap(p, r);
            for i in (0..self.rows).filter(|&i| i != r) {
                let factor = m[i][c].clone();
                for j in 0..self.cols {
                    let num = &m[r][c] * &m[i][j] - &factor * &m[r][j];
                    m[i][j] = bareiss_div(&num, &prev);
                }
            }
            prev = m[r][c].clone();
            pivot_cols.push(c);
            r += 1;
        }
        Reduced {
            rows: m,
            pivot_cols,
            pivot_value: prev,
        }
    }

    /// Entrywise specialization at `q = 1`.
    pub fn eval_at_one(&self) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(LaurentPoly::eval_at_one).collect(),
        }
    }
}

struct Reduced {
    rows: Vec<Vec<LaurentPoly>>,
    pivot_cols: Vec<usize>,
    pivot_value: LaurentPoly,
}

/// Among rows `from..` with a nonzero entry in column `col`, picks the one
/// of smallest span, then smallest content, then lowest row index.
fn choose_pivot(m: &[Vec<LaurentPoly>], from: usize, col: usize) -> Option<usize> {
    (from..m.len())
        .filter(|&i| !m[i][col].is_zero())
        .min_by_key(|&i| (m[i][col].span(), m[i][col].content(), i))
}

fn bareiss_div(num: &LaurentPoly, prev: &LaurentPoly) -> LaurentPoly {
    num.exact_div(prev)
        .expect("Bareiss quotients are minors, hence exact")
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LaurentMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for row in &cells {
            let padded: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect();
            writeln!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

impl KClass {
    pub fn new(coords: Vec<LaurentPoly>) -> Self {
        Self(coords)
    }

    pub fn zero(m: usize) -> Self {
        Self(vec![LaurentPoly::zero(); m])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn basis(m: usize, i: usize) -> Self {
        let mut v = Self::zero(m);
        v.0[i] = LaurentPoly::one();
        v
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| LaurentPoly::constant(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[LaurentPoly] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<LaurentPoly> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(LaurentPoly::is_zero)
    }

    fn require_len(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "classes of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_len(other)?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_len(other)?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self(self.0.iter().map(|x| x * c).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    /// Entrywise star.
    pub fn star(&self) -> Self {
        Self(self.0.iter().map(LaurentPoly::star).collect())
    }

    pub fn eval_at_one(&self) -> Vec<BigInt> {
        self.0.iter().map(LaurentPoly::eval_at_one).collect()
    }

    /// gcd of all entries in Z[q, q^-1], normalized as in
    /// [`LaurentPoly::gcd`].
    pub fn content(&self) -> LaurentPoly {
        self.0.iter().fold(LaurentPoly::zero(), |acc, x| acc.gcd(x))
    }

    /// Divides by the gcd of the entries and fixes the unit `±q^k` so that
    /// the first nonzero entry has lowest exponent 0 and positive leading
    /// coefficient. The zero vector is returned unchanged.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let divided: Vec<LaurentPoly> = self
            .0
            .iter()
            .map(|x| x.exact_div(&g).expect("gcd divides every entry"))
            .collect();
        let first = divided
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero vector");
        let low = first.min_exp().expect("nonzero entry");
        let negate = first.leading_coeff().is_some_and(|c| c.is_negative());
        let unit = LaurentPoly::monomial(if negate { -1 } else { 1 }, -low);
        Self(divided.iter().map(|x| x * &unit).collect())
    }
}

impl std::ops::Index<usize> for KClass {
    type Output = LaurentPoly;
    fn index(&self, i: usize) -> &LaurentPoly {
        &self.0[i]
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl IntMatrix {
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            entries: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// Embeds as a matrix of constants.
    pub fn to_laurent(&self) -> LaurentMatrix {
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .cloned()
                .map(LaurentPoly::constant)
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        self.to_laurent().transpose().eval_at_one()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(self.to_laurent().mul(&other.to_laurent())?.eval_at_one())
    }

    pub fn scale(&self, c: i64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn unitriangular_inverse(&self) -> Result<Self> {
        Ok(self.to_laurent().unitriangular_inverse()?.eval_at_one())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_laurent().fmt(f)
    }
}

//! Basis changes of a Lefschetz algebra and Dehn twists acting on classes.
//!
//! Every basis change returns its transition matrix `C`, with the new `A`
//! equal to `C* A C`. A class with new coordinates `h` has old coordinates
//! `C h`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lefschetz::{parity_sign, LefschetzAlgebra};
use crate::matrix::{KClass, LaurentMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub algebra: LefschetzAlgebra,
    pub transition: LaurentMatrix,
}

fn conjugate(alg: &LefschetzAlgebra, c: LaurentMatrix) -> Result<Move> {
    let a = c.star_transpose().mul(alg.a())?.mul(&c)?;
    let algebra = LefschetzAlgebra::from_a(alg.n(), a).map_err(|e| {
        Error::Internal(format!(
            "conjugated pairing matrix is not unitriangular: {e}"
        ))
    })?;
    Ok(Move {
        algebra,
        transition: c,
    })
}

fn check_adjacent(alg: &LefschetzAlgebra, k: usize) -> Result<()> {
    if k + 1 >= alg.m() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: alg.m().saturating_sub(1),
        });
    }
    Ok(())
}

fn check_index(alg: &LefschetzAlgebra, k: usize) -> Result<()> {
    if k >= alg.m() {
        return Err(Error::IndexOutOfRange {
            index: k,
            len: alg.m(),
        });
    }
    Ok(())
}

/// Identity outside the 2x2 block at `(k, k+1)`, which is `block`.
fn block_transition(m: usize, k: usize, block: [[LaurentPoly; 2]; 2]) -> LaurentMatrix {
    let mut c = LaurentMatrix::identity(m);
    for (di, row) in block.into_iter().enumerate() {
        for (dj, x) in row.into_iter().enumerate() {
            c.set(k + di, k + dj, x);
        }
    }
    c
}

/// Hurwitz move at the 0-based position `k`: the pair of vanishing cycles
/// `(k, k+1)` is replaced by `(twisted k+1, k)`. On the block, `C` is
/// `[[-b, 1], [1, 0]]` with `b = B[k][k+1]`.
pub fn hurwitz_move(alg: &LefschetzAlgebra, k: usize) -> Result<Move> {
    check_adjacent(alg, k)?;
    let b = alg.b().get(k, k + 1).clone();
    let c = block_transition(
        alg.m(),
        k,
        [
            [-b, LaurentPoly::one()],
            [LaurentPoly::one(), LaurentPoly::zero()],
        ],
    );
    conjugate(alg, c)
}

/// Undoes [`hurwitz_move`] at `k`. After the forward move the new
/// `B[k][k+1]` is `-star(b)`, which recovers `b`; the block of `C` is then
/// `[[0, 1], [1, b]]`.
pub fn hurwitz_inverse_move(alg: &LefschetzAlgebra, k: usize) -> Result<Move> {
    check_adjacent(alg, k)?;
    let b = -alg.b().get(k, k + 1).star();
    let c = block_transition(
        alg.m(),
        k,
        [
            [LaurentPoly::zero(), LaurentPoly::one()],
            [LaurentPoly::one(), b],
        ],
    );
    conjugate(alg, c)
}

/// Changes the equivariant structure of object `k` by `q^shift`: row `k`
/// of `B` picks up `q^-shift` and column `k` picks up `q^shift`.
pub fn rescale_object(alg: &LefschetzAlgebra, k: usize, shift: i64) -> Result<Move> {
    check_index(alg, k)?;
    let mut d = LaurentMatrix::identity(alg.m());
    d.set(k, k, LaurentPoly::monomial(1, shift));
    conjugate(alg, d)
}

/// Shifts the grading of object `k` by one: row and column `k` of `B`
/// change sign off the diagonal.
pub fn shift_object(alg: &LefschetzAlgebra, k: usize) -> Result<Move> {
    check_index(alg, k)?;
    let mut s = LaurentMatrix::identity(alg.m());
    s.set(k, k, LaurentPoly::constant(-1));
    conjugate(alg, s)
}

fn pairing_with(a: &LaurentMatrix, h0: &KClass, h1: &KClass) -> Result<LaurentPoly> {
    if h0.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "class of length {} against a {}x{} pairing matrix",
            h0.len(),
            a.rows(),
            a.cols()
        )));
    }
    let ah1 = a.mul_class(h1)?;
    Ok(h0
        .coords()
        .iter()
        .zip(ah1.coords())
        .map(|(x, y)| &x.star() * y)
        .sum())
}

/// `c1 - pairing(c0, c1) c0`, the class of `c1` twisted along `c0`.
///
/// `n` is the dimension in which `c0` is a sphere. The forward twist does not
/// depend on it; it is taken for symmetry with [`inverse_dehn_twist_class`].
pub fn dehn_twist_class(_n: i64, a: &LaurentMatrix, c0: &KClass, c1: &KClass) -> Result<KClass> {
    let s = pairing_with(a, c0, c1)?;
    c1.sub(&c0.scale(&s))
}

/// `c1 - (-1)^n q^-1 pairing(c0, c1) c0`. Inverts [`dehn_twist_class`] when
/// `c0` has self-pairing `1 + (-1)^n q`.
pub fn inverse_dehn_twist_class(
    n: i64,
    a: &LaurentMatrix,
    c0: &KClass,
    c1: &KClass,
) -> Result<KClass> {
    let c01 = pairing_with(a, c0, c1)?;
    let s = &c01 * &LaurentPoly::monomial(parity_sign(n), -1);
    let d = c1.sub(&c0.scale(&s))?;
    #[cfg(debug_assertions)]
    for i in 0..a.rows() {
        let e = KClass::basis(a.rows(), i);
        let lhs = pairing_with(a, &e, &d)?;
        let rhs = pairing_with(a, &e, c1)?
            - &(&pairing_with(a, &e, c0)? * &c01) * &LaurentPoly::monomial(parity_sign(n), -1);
        debug_assert_eq!(lhs, rhs, "inverse twist pairing identity");
    }
    Ok(d)
}

/// One letter of a twist word: a 0-based generator index and a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistLetter {
    pub generator: usize,
    pub inverse: bool,
}

/// A product of Dehn twists, written left to right and applied right to
/// left. The text form is `"t2 t1^-1 t4"` with 1-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TwistWord(pub Vec<TwistLetter>);

impl TwistWord {
    pub fn letters(&self) -> &[TwistLetter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The word of inverse twists in reverse order.
    pub fn inverse(&self) -> Self {
        Self(
            self.0
                .iter()
                .rev()
                .map(|l| TwistLetter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(|tok| {
                let bad = || {
                    Error::Parse(format!(
                        "bad twist letter {tok:?}, expected t<k> or t<k>^-1"
                    ))
                };
                let body = tok.strip_prefix('t').ok_or_else(bad)?;
                let (index, inverse) = match body.strip_suffix("^-1") {
                    Some(idx) => (idx, true),
                    None => (body, false),
                };
                let k: usize = index.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(Error::Parse(format!(
                        "twist letter {tok:?}: indices start at 1"
                    )));
                }
                Ok(TwistLetter {
                    generator: k - 1,
                    inverse,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(TwistWord)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|l| {
                let inv = if l.inverse { "^-1" } else { "" };
                format!("t{}{inv}", l.generator + 1)
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Applies `word` to `target`, rightmost letter first. Generators are
/// assumed spherical in dimension `n`.
pub fn apply_twist_word(
    n: i64,
    a: &LaurentMatrix,
    generators: &[KClass],
    word: &TwistWord,
    target: &KClass,
) -> Result<KClass> {
    let mut c = target.clone();
    for letter in word.0.iter().rev() {
        let g = generators
            .get(letter.generator)
            .ok_or(Error::IndexOutOfRange {
                index: letter.generator,
                len: generators.len(),
            })?;
        c = if letter.inverse {
            inverse_dehn_twist_class(n, a, g, &c)?
        } else {
            dehn_twist_class(n, a, g, &c)?
        };
    }
    Ok(c)
}

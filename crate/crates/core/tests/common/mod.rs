//! Independent oracles and generators shared by the integration tests.
//!
//! Everything here recomputes from first principles (cofactor expansion,
//! rational evaluation, the closed-form band matrices) without going through
//! the elimination code under test.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qlefschetz::catalog::{mirror_p2, xab};
use qlefschetz::{KClass, LaurentMatrix, LaurentPoly, LefschetzAlgebra};
use rand::Rng;

pub const XAB_PAIRS: [(usize, usize); 4] = [(1, 2), (2, 3), (2, 5), (3, 4)];
pub const PARITIES: [i64; 2] = [3, 4];

pub fn sign(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn p(low: i64, coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_coeffs(low, coeffs)
}

pub fn c(x: i64) -> LaurentPoly {
    LaurentPoly::constant(x)
}

/// `c q^e`.
pub fn m(x: i64, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(x, e)
}

pub fn ones(k: usize) -> KClass {
    KClass::from_ints(&vec![1; k])
}

/// Every catalog total space used in the tests, labelled.
pub fn catalog() -> Vec<(String, LefschetzAlgebra)> {
    let mut out = Vec::new();
    for n in PARITIES {
        for (a, b) in XAB_PAIRS {
            out.push((format!("xab({a},{b},n={n})"), xab(a, b, n).unwrap()));
        }
        out.push((format!("mirror_p2(n={n})"), mirror_p2(n).unwrap()));
    }
    out
}

/// The q-deformed cyclic band matrix of `X_{a,b}`, entry by entry from its
/// case table.
pub fn band_entry(a: usize, b: usize, n: i64, i: usize, j: usize) -> LaurentPoly {
    let size = (a + b) as i64;
    let d = (i as i64 - j as i64).rem_euclid(size);
    let s = sign(n);
    let a = a as i64;
    if d == 0 {
        p(0, &[1, -s])
    } else if d == (size - a) {
        m(s, 1)
    } else if d > size - a {
        p(0, &[1, s])
    } else if d < a {
        p(0, &[-1, -s])
    } else if d == a {
        c(-1)
    } else {
        LaurentPoly::zero()
    }
}

/// The 3x3 matrix of the mirror of the projective plane, as displayed.
pub fn mirror_matrix(n: i64) -> LaurentMatrix {
    let s = sign(n);
    let diag = p(0, &[1, -s]);
    let big = p(0, &[1, s, 1]);
    let corner = p(-1, &[-s, -1, -s]);
    LaurentMatrix::from_rows(vec![
        vec![diag.clone(), corner.clone(), big.clone()],
        vec![big.clone(), diag.clone(), -&big],
        vec![corner, p(-1, &[s, 1, s]), diag],
    ])
    .unwrap()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(a: &LaurentMatrix) -> LaurentPoly {
    let k = a.rows();
    if k == 0 {
        return LaurentPoly::one();
    }
    let mut total = LaurentPoly::zero();
    for j in 0..k {
        let minor = LaurentMatrix::from_fn(k - 1, k - 1, |r, s| {
            a.get(r + 1, if s < j { s } else { s + 1 }).clone()
        });
        let term = a.get(0, j) * &cofactor_det(&minor);
        if j % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

pub fn eval_rational(x: &LaurentPoly, q: &BigRational) -> BigRational {
    x.terms()
        .map(|(e, coef)| {
            let base = if e >= 0 { q.clone() } else { q.recip() };
            BigRational::from_integer(coef.clone())
                * num_traits::pow(base, e.unsigned_abs() as usize)
        })
        .fold(BigRational::zero(), |acc, t| acc + t)
}

pub fn eval_matrix(a: &LaurentMatrix, q: &BigRational) -> Vec<Vec<BigRational>> {
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| eval_rational(a.get(i, j), q))
                .collect()
        })
        .collect()
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(p, rank);
        let pivot = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let f = rows[i][col].clone() / pivot.clone();
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x -= y * f.clone();
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn int_rank(a: &LaurentMatrix) -> usize {
    rational_rank(eval_matrix(a, &BigRational::one()))
}

pub fn random_poly(rng: &mut impl Rng) -> LaurentPoly {
    let terms = rng.gen_range(0..=3);
    (0..terms)
        .map(|_| m(rng.gen_range(-3..=3), rng.gen_range(-2..=2)))
        .sum()
}

pub fn random_class(rng: &mut impl Rng, len: usize) -> KClass {
    KClass::new((0..len).map(|_| random_poly(rng)).collect())
}

pub fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..4)
        .prop_map(|terms| terms.into_iter().map(|(coef, e)| m(coef, e)).sum())
}

pub fn nonzero_poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    poly_strategy().prop_filter("nonzero", |x| !x.is_zero())
}

pub fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = LaurentMatrix> {
    prop::collection::vec(poly_strategy(), rows * cols)
        .prop_map(move |entries| LaurentMatrix::new(rows, cols, entries).unwrap())
}

pub fn square_strategy(max: usize) -> impl Strategy<Value = LaurentMatrix> {
    (0..=max).prop_flat_map(|k| matrix_strategy(k, k))
}

pub fn unitriangular_strategy(max: usize) -> impl Strategy<Value = LaurentMatrix> {
    (1..=max).prop_flat_map(|k| {
        prop::collection::vec(poly_strategy(), k * k).prop_map(move |entries| {
            LaurentMatrix::from_fn(k, k, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Less => entries[i * k + j].clone(),
                std::cmp::Ordering::Equal => LaurentPoly::one(),
                std::cmp::Ordering::Greater => LaurentPoly::zero(),
            })
        })
    })
}

pub fn algebra_strategy(max: usize) -> impl Strategy<Value = LefschetzAlgebra> {
    (unitriangular_strategy(max), 2i64..=5)
        .prop_map(|(a, n)| LefschetzAlgebra::from_a(n, a).unwrap())
}

pub fn class_strategy(len: usize) -> impl Strategy<Value = KClass> {
    prop::collection::vec(poly_strategy(), len).prop_map(KClass::new)
}

pub fn bigint(x: i64) -> BigInt {
    BigInt::from(x)
}

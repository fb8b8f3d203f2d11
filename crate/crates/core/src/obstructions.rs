//! Constraints on Lagrangian submanifolds from the kernel of `B`.
//!
//! A closed exact Lagrangian gives a class `l` with `B l = 0`, and its
//! self-pairing `star(l)^T A l` is the q-graded Euler characteristic of its
//! Floer cohomology. For a sphere that value is `1 + (-1)^n q`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lefschetz::{sphere_self_pairing, LefschetzAlgebra};
use crate::matrix::{KClass, LaurentMatrix};

/// Why no kernel class can be a sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// `B` is nondegenerate.
    TrivialKernel,
    /// The kernel generator is isotropic.
    ZeroSelfPairing,
    /// `star(f) f` has even span, so `c` would need span 1.
    SpanMismatch { span: u64 },
    /// The extreme coefficients of `star(f) f` agree, those of `c` do not.
    ExtremeCoefficients {
        #[serde(serialize_with = "crate::io::bigint_string")]
        lowest: BigInt,
        #[serde(serialize_with = "crate::io::bigint_string")]
        highest: BigInt,
    },
    /// `a^2 c_lo = 1` has no integer solution.
    NoSquareSolution {
        #[serde(serialize_with = "crate::io::bigint_string")]
        coefficient: BigInt,
    },
    /// The exponents of `c` cannot be moved onto `{0, 1}` with the right sign.
    ExponentMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum SphereVerdict {
    Obstructed {
        reason: Obstruction,
    },
    /// `star(f) f c = 1 + (-1)^n q` for the witness `f`.
    NotObstructed {
        witness: LaurentPoly,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereTestResult {
    pub nullity: usize,
    /// Primitive kernel generator, present when the nullity is 1.
    pub generator: Option<KClass>,
    pub self_pairing: Option<LaurentPoly>,
    #[serde(flatten)]
    pub verdict: SphereVerdict,
}

impl SphereTestResult {
    pub fn is_obstructed(&self) -> bool {
        matches!(self.verdict, SphereVerdict::Obstructed { .. })
    }
}

/// Primitive basis of the kernel of `B`.
pub fn kernel_classes(alg: &LefschetzAlgebra) -> Vec<KClass> {
    alg.b().nullspace()
}

pub fn self_pairing(alg: &LefschetzAlgebra, l: &KClass) -> Result<LaurentPoly> {
    alg.pairing(l, l)
}

/// Decides whether some multiple `f h` of the kernel generator `h` can have
/// self-pairing `1 + (-1)^n q`. Only nullity at most 1 is decided.
pub fn sphere_test(alg: &LefschetzAlgebra) -> SphereTestResult {
    let kernel = kernel_classes(alg);
    let nullity = kernel.len();
    let done = |generator, self_pairing, verdict| SphereTestResult {
        nullity,
        generator,
        self_pairing,
        verdict,
    };
    match nullity {
        0 => done(
            None,
            None,
            SphereVerdict::Obstructed {
                reason: Obstruction::TrivialKernel,
            },
        ),
        1 => {
            let h = kernel.into_iter().next().expect("nullity 1");
            let c = self_pairing(alg, &h).expect("kernel class has length m");
            let verdict = rank_one_verdict(alg.n(), &c);
            done(Some(h), Some(c), verdict)
        }
        _ => done(
            None,
            None,
            SphereVerdict::Inconclusive {
                reason: format!(
                    "kernel has rank {nullity}; only rank 0 and 1 are decided algebraically"
                ),
            },
        ),
    }
}

fn obstructed(reason: Obstruction) -> SphereVerdict {
    SphereVerdict::Obstructed { reason }
}

/// Solves `star(f) f c = 1 + (-1)^n q` for `f`, given `c != 0`.
///
/// `star(f) f` has even span and equal extreme coefficients `a_lo a_hi`, so
/// `c` must have span 1. Then `star(f) f` is a constant `a^2` and `c` must be
/// `(1 + (-1)^n q) / a^2`.
fn rank_one_verdict(n: i64, c: &LaurentPoly) -> SphereVerdict {
    if c.is_zero() {
        return obstructed(Obstruction::ZeroSelfPairing);
    }
    let span = c.span().expect("nonzero");
    if span != 1 {
        return obstructed(Obstruction::SpanMismatch { span });
    }
    let lo = c.trailing_coeff().expect("nonzero").clone();
    let hi = c.leading_coeff().expect("nonzero").clone();
    if lo.abs() != hi.abs() {
        return obstructed(Obstruction::ExtremeCoefficients {
            lowest: lo,
            highest: hi,
        });
    }
    // a^2 lo = 1 needs lo = 1; a^2 = 1/lo in the integers.
    let square_ok = lo.is_positive() && (BigInt::from(1) % &lo).is_zero() && {
        let a2 = BigInt::from(1) / &lo;
        let a = a2.sqrt();
        &a * &a == a2
    };
    if !square_ok {
        return obstructed(Obstruction::NoSquareSolution { coefficient: lo });
    }
    let target = sphere_self_pairing(n);
    if *c != target {
        return obstructed(Obstruction::ExponentMismatch);
    }
    SphereVerdict::NotObstructed {
        witness: LaurentPoly::one(),
    }
}

/// What the self-pairing `P` of a class `l` certifies about `l(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimitiveCertificate {
    /// `P` vanishes to order below 2 at `q = 1`, hence `l(1) != 0`.
    pub nonzero_at_one: bool,
    /// `gcd(|P(1)|, |P'(1)|)`; every prime dividing all entries of `l(1)`
    /// divides it, so 1 certifies primitivity. 0 means no bound.
    #[serde(serialize_with = "crate::io::bigint_string")]
    pub primitive_gcd_bound: BigInt,
}

impl PrimitiveCertificate {
    pub fn is_primitive(&self) -> bool {
        self.nonzero_at_one && self.primitive_gcd_bound == BigInt::from(1)
    }
}

pub fn nonzero_primitive_certificate(p: &LaurentPoly) -> PrimitiveCertificate {
    let nonzero_at_one = p.vanishing_order_at_one().is_some_and(|k| k < 2);
    let primitive_gcd_bound = p.eval_at_one().abs().gcd(&p.derivative_at_one().abs());
    PrimitiveCertificate {
        nonzero_at_one,
        primitive_gcd_bound,
    }
}

/// Sum of the absolute values of the coefficients of a self-pairing: a lower
/// bound for the total Betti number of the Lagrangian.
pub fn betti_lower_bound(p: &LaurentPoly) -> BigInt {
    p.terms().map(|(_, c)| c.abs()).sum()
}

/// For `n` odd: classes with Gram matrix `(1 - q) I` reduce at `q = 1` to
/// linearly independent integer vectors.
pub fn independence_certificate(alg: &LefschetzAlgebra, classes: &[KClass]) -> Result<bool> {
    if alg.n().rem_euclid(2) == 0 {
        return Err(Error::Hypothesis(format!(
            "independence certificate needs n odd, got n = {}",
            alg.n()
        )));
    }
    let gram = alg.gram(classes)?;
    let expected =
        LaurentMatrix::identity(classes.len()).scale(&LaurentPoly::from_coeffs(0, &[1, -1]));
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            if gram.get(i, j) != expected.get(i, j) {
                return Err(Error::Hypothesis(format!(
                    "pairing of classes {} and {} is {}, expected {}",
                    i + 1,
                    j + 1,
                    gram.get(i, j),
                    expected.get(i, j)
                )));
            }
        }
    }
    Ok(true)
}

//! Worked examples, built by induction on dimension: classes in the Milnor
//! fibre of an `A_r` singularity are paired against its Mukai matrix to give
//! the `B` of a total space.
//!
//! The fibre of an `n`-dimensional total space has dimension `n - 1`, so its
//! spheres have self-pairing `1 + (-1)^(n-1) q` and twists along them use
//! that parity.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::lefschetz::{parity_sign, LefschetzAlgebra};
use crate::matrix::{KClass, LaurentMatrix};
use crate::moves::{apply_twist_word, TwistWord};

/// The `A_r` Milnor fibre seen from an `n`-dimensional total space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilnorData {
    pub r: usize,
    pub n: i64,
    /// Unitriangular, strict upper entries `1 + q(-1)^n`.
    pub mukai: LaurentMatrix,
    /// `S^k = e_{k+1} - e_k` for `k < r`, closed up by `S^r = e_0 - e_r`.
    pub sphere_classes: Vec<KClass>,
}

impl MilnorData {
    /// The Mukai pairing as an algebra in the fibre dimension `n - 1`.
    pub fn algebra(&self) -> LefschetzAlgebra {
        LefschetzAlgebra::from_a(self.n - 1, self.mukai.clone()).expect("unitriangular")
    }

    /// Dimension in which the sphere classes are spherical.
    pub fn fibre_dimension(&self) -> i64 {
        self.n - 1
    }
}

pub fn milnor_ar(r: usize, n: i64) -> Result<MilnorData> {
    if r < 1 {
        return Err(Error::InvalidArgument(format!("A_r needs r >= 1, got {r}")));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!("needs n >= 3, got {n}")));
    }
    let size = r + 1;
    let off = LaurentPoly::one() + LaurentPoly::monomial(parity_sign(n), 1);
    let mukai = LaurentMatrix::from_fn(size, size, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => off.clone(),
        std::cmp::Ordering::Equal => LaurentPoly::one(),
        std::cmp::Ordering::Greater => LaurentPoly::zero(),
    });
    let e = |i| KClass::basis(size, i);
    let mut sphere_classes: Vec<KClass> = (0..r)
        .map(|k| e(k + 1).sub(&e(k)).expect("same length"))
        .collect();
    sphere_classes.push(e(0).sub(&e(r)).expect("same length"));
    Ok(MilnorData {
        r,
        n,
        mukai,
        sphere_classes,
    })
}

/// A class in the fibre, given directly or as a twist word applied to a seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    Class(KClass),
    Word { word: TwistWord, seed: KClass },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedTotalSpace {
    pub algebra: LefschetzAlgebra,
    /// The resolved fibre classes of the vanishing cycles, in order.
    pub classes: Vec<KClass>,
}

/// Resolves each spec against the fibre (twisting along `generators`, which
/// are spherical in dimension `fibre.n()`) and takes `B_ij` to be the fibre
/// pairing of class `i` with class `j`.
pub fn induced_total_space(
    fibre: &LefschetzAlgebra,
    generators: &[KClass],
    n: i64,
    specs: &[ClassSpec],
) -> Result<InducedTotalSpace> {
    let classes = specs
        .iter()
        .map(|spec| match spec {
            ClassSpec::Class(c) => Ok(c.clone()),
            ClassSpec::Word { word, seed } => {
                apply_twist_word(fibre.n(), fibre.a(), generators, word, seed)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let b = fibre.gram(&classes)?;
    let algebra = LefschetzAlgebra::from_b(n, b)?;
    Ok(InducedTotalSpace { algebra, classes })
}

/// The `a`-sphere windows `S^i + ... + S^{i+a-1}`, indices mod `a + b`.
pub fn xab_classes(milnor: &MilnorData, a: usize) -> Vec<KClass> {
    let size = milnor.sphere_classes.len();
    (0..size)
        .map(|i| {
            (0..a).fold(KClass::zero(size), |acc, s| {
                acc.add(&milnor.sphere_classes[(i + s) % size])
                    .expect("same length")
            })
        })
        .collect()
}

/// The hypersurface `X_{a,b}`: `a + b` vanishing cycles, each a window of `a`
/// consecutive spheres in the `A_{a+b-1}` fibre.
pub fn xab(a: usize, b: usize, n: i64) -> Result<LefschetzAlgebra> {
    if !(0 < a && a < b) {
        return Err(Error::InvalidArgument(format!(
            "needs 0 < a < b, got a = {a}, b = {b}"
        )));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidArgument(format!(
            "needs gcd(a, b) = 1, got a = {a}, b = {b}"
        )));
    }
    let milnor = milnor_ar(a + b - 1, n)?;
    let specs: Vec<ClassSpec> = xab_classes(&milnor, a)
        .into_iter()
        .map(ClassSpec::Class)
        .collect();
    Ok(induced_total_space(&milnor.algebra(), &milnor.sphere_classes, n, &specs)?.algebra)
}

/// Twist words for the three vanishing cycles of the mirror of the
/// projective plane, over the four spheres of the `A_3` fibre.
pub fn mirror_p2_words() -> [(TwistWord, usize); 3] {
    let w = |s: &str| s.parse::<TwistWord>().expect("valid word");
    [(w("t2"), 0), (w("t2^-1 t1"), 3), (w("t3 t1"), 1)]
}

/// The same three classes written out in the sphere basis.
pub fn mirror_p2_classes(milnor: &MilnorData) -> Vec<KClass> {
    let s = &milnor.sphere_classes;
    let sign = parity_sign(milnor.n);
    let comb = |coeffs: [LaurentPoly; 4]| {
        coeffs.iter().zip(s).fold(KClass::zero(4), |acc, (c, sk)| {
            acc.add(&sk.scale(c)).expect("same length")
        })
    };
    let one = LaurentPoly::one;
    let zero = LaurentPoly::zero;
    vec![
        comb([one(), one(), zero(), zero()]),
        comb([one(), LaurentPoly::monomial(-sign, -1), zero(), one()]),
        comb([LaurentPoly::monomial(-sign, 1), one(), one(), zero()]),
    ]
}

/// The mirror of the projective plane, built from twist words and checked
/// against the direct K-theory expressions.
pub fn mirror_p2(n: i64) -> Result<LefschetzAlgebra> {
    let milnor = milnor_ar(3, n)?;
    let fibre = milnor.algebra();
    let specs: Vec<ClassSpec> = mirror_p2_words()
        .into_iter()
        .map(|(word, seed)| ClassSpec::Word {
            word,
            seed: milnor.sphere_classes[seed].clone(),
        })
        .collect();
    let induced = induced_total_space(&fibre, &milnor.sphere_classes, n, &specs)?;
    let direct = mirror_p2_classes(&milnor);
    if induced.classes != direct {
        return Err(Error::Internal(
            "twist-word classes disagree with the direct K-theory expressions".into(),
        ));
    }
    Ok(induced.algebra)
}

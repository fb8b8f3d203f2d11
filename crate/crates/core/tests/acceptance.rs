//! Acceptance suite. Each criterion prints one `PASS` or `FAIL` line; the
//! process exits nonzero if any criterion fails. All comparisons are exact.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use common::*;
use num_bigint::BigInt;
use qlefschetz::catalog::{milnor_ar, mirror_p2, mirror_p2_classes, mirror_p2_words, xab};
use qlefschetz::lefschetz::{parity_sign, sphere_self_pairing};
use qlefschetz::moves::{
    apply_twist_word, dehn_twist_class, hurwitz_inverse_move, hurwitz_move,
    inverse_dehn_twist_class, rescale_object, shift_object,
};
use qlefschetz::obstructions::{
    betti_lower_bound, independence_certificate, kernel_classes, nonzero_primitive_certificate,
    self_pairing, sphere_test,
};
use qlefschetz::{IntMatrix, KClass, LaurentMatrix, LaurentPoly, LefschetzAlgebra, SphereVerdict};
use rand::rngs::StdRng;
use rand::SeedableRng;

/// Outcome of one criterion: `Err` carries the first discrepancy found.
type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn classical_golden() -> Outcome {
    let alg = xab(2, 3, 4).map_err(|e| e.to_string())?;
    let cl = alg.classical();
    let b = IntMatrix::from_rows(&[
        vec![0, 2, 1, -1, -2],
        vec![-2, 0, 2, 1, -1],
        vec![-1, -2, 0, 2, 1],
        vec![1, -1, -2, 0, 2],
        vec![2, 1, -1, -2, 0],
    ]);
    let a = IntMatrix::from_rows(&[
        vec![1, 2, 1, -1, -2],
        vec![0, 1, 2, 1, -1],
        vec![0, 0, 1, 2, 1],
        vec![0, 0, 0, 1, 2],
        vec![0, 0, 0, 0, 1],
    ]);
    ensure!(cl.b == b, "B(1) =\n{}", cl.b);
    ensure!(cl.a == a, "A(1) =\n{}", cl.a);
    Ok(())
}

fn quantum_golden() -> Outcome {
    for n in PARITIES {
        for (a, b) in XAB_PAIRS {
            let alg = xab(a, b, n).map_err(|e| e.to_string())?;
            let k = a + b;
            for i in 0..k {
                for j in 0..k {
                    let expected = band_entry(a, b, n, i, j);
                    ensure!(
                        alg.b().get(i, j) == &expected,
                        "xab({a},{b},{n}) entry ({},{}) = {}, expected {expected}",
                        i + 1,
                        j + 1,
                        alg.b().get(i, j)
                    );
                }
                ensure!(
                    alg.b().get(i, i) == &p(0, &[1, -sign(n)]),
                    "diagonal of xab({a},{b},{n})"
                );
            }
        }
    }
    Ok(())
}

fn deformed_ar_pairings() -> Outcome {
    for n in PARITIES {
        for r in 2..=8 {
            let data = milnor_ar(r, n).map_err(|e| e.to_string())?;
            let gram = data
                .algebra()
                .gram(&data.sphere_classes)
                .map_err(|e| e.to_string())?;
            let k = r + 1;
            for i in 0..k {
                for j in 0..k {
                    let expected = if i == j {
                        p(0, &[1, sign(n - 1)])
                    } else if j == (i + k - 1) % k {
                        c(-1)
                    } else if j == (i + 1) % k {
                        m(sign(n), 1)
                    } else {
                        LaurentPoly::zero()
                    };
                    ensure!(
                        gram.get(i, j) == &expected,
                        "r={r} n={n}: S{}.S{} = {}, expected {expected}",
                        i + 1,
                        j + 1,
                        gram.get(i, j)
                    );
                }
            }
        }
    }
    Ok(())
}

fn mirror_determinant() -> Outcome {
    let mut failures = Vec::new();
    for n in PARITIES {
        let alg = mirror_p2(n).map_err(|e| e.to_string())?;
        let s = sign(n);
        let q_minus_1 = p(0, &[-1, 1]);
        let q_plus_1 = p(0, &[1, 1]);
        let stated = [
            m(1, -2),
            q_minus_1.pow(2),
            q_plus_1.pow(2),
            p(0, &[-s, 1]),
            p(0, &[1, 0, 1]),
        ]
        .iter()
        .fold(LaurentPoly::one(), |acc, f| &acc * f);
        let det = alg.b().det().map_err(|e| e.to_string())?;
        let oracle = cofactor_det(alg.b());
        ensure!(
            det == oracle,
            "elimination and cofactor expansion disagree for n={n}"
        );
        if det != stated {
            failures.push(format!("n={n}: det(B) = {det}, stated product = {stated}"));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn kernels() -> Outcome {
    for n in PARITIES {
        for (a, b) in XAB_PAIRS {
            let alg = xab(a, b, n).map_err(|e| e.to_string())?;
            let ker = kernel_classes(&alg);
            ensure!(
                ker == vec![ones(a + b)],
                "kernel of xab({a},{b},{n}) = {ker:?}"
            );
        }
        let ker = kernel_classes(&mirror_p2(n).map_err(|e| e.to_string())?);
        ensure!(ker.is_empty(), "mirror_p2({n}) kernel = {ker:?}");
    }
    Ok(())
}

fn quadratic_value() -> Outcome {
    for n in PARITIES {
        for (a, b) in XAB_PAIRS {
            let alg = xab(a, b, n).map_err(|e| e.to_string())?;
            let value = self_pairing(&alg, &ones(a + b)).map_err(|e| e.to_string())?;
            let ab = (a * b) as i64;
            let expected = p(0, &[ab, ab * sign(n)]);
            ensure!(value == expected, "xab({a},{b},{n}): h.h = {value}");
            let bound = betti_lower_bound(&value);
            ensure!(
                bound == BigInt::from(2 * ab),
                "xab({a},{b},{n}): betti bound {bound}"
            );
        }
    }
    Ok(())
}

fn positive_control(n: i64) -> LefschetzAlgebra {
    let a = LaurentMatrix::from_rows(vec![
        vec![LaurentPoly::one(), p(0, &[1, -sign(n)])],
        vec![LaurentPoly::zero(), LaurentPoly::one()],
    ])
    .unwrap();
    LefschetzAlgebra::from_a(n, a).unwrap()
}

fn obstruction_verdicts() -> Outcome {
    for n in PARITIES {
        for (a, b) in XAB_PAIRS {
            let alg = xab(a, b, n).map_err(|e| e.to_string())?;
            let r = sphere_test(&alg);
            ensure!(r.is_obstructed(), "xab({a},{b},{n}): {:?}", r.verdict);
        }
        let r = sphere_test(&mirror_p2(n).map_err(|e| e.to_string())?);
        ensure!(r.is_obstructed(), "mirror_p2({n}): {:?}", r.verdict);

        let control = positive_control(n);
        let r = sphere_test(&control);
        let SphereVerdict::NotObstructed { witness } = &r.verdict else {
            return Err(format!("positive control n={n}: {:?}", r.verdict));
        };
        let h = r.generator.clone().ok_or("no generator")?;
        ensure!(
            control.b().mul_class(&h).unwrap().is_zero(),
            "generator not in kernel"
        );
        let lifted = h.scale(witness);
        let value = self_pairing(&control, &lifted).map_err(|e| e.to_string())?;
        ensure!(value == sphere_self_pairing(n), "witness gives {value}");
    }
    Ok(())
}

fn monodromy_identities() -> Outcome {
    for (name, alg) in catalog() {
        let k = alg.m();
        let s = parity_sign(alg.n());
        let n_q = alg.monodromy();
        for i in 0..k {
            for j in 0..k {
                let (ei, ej) = (KClass::basis(k, i), KClass::basis(k, j));
                let lhs = alg.pairing(&ei, &n_q.mul_class(&ej).unwrap()).unwrap();
                let rhs = &m(s, 1) * &alg.pairing(&ej, &ei).unwrap().star();
                ensure!(
                    lhs == rhs,
                    "{name}: defining property fails at ({},{})",
                    i + 1,
                    j + 1
                );
                let via_formula = alg.monodromy_pairing(i, j).unwrap();
                let via_n = alg.pairing(&n_q.mul_class(&ei).unwrap(), &ej).unwrap();
                ensure!(
                    via_formula == via_n,
                    "{name}: monodromy pairing at ({},{})",
                    i + 1,
                    j + 1
                );
            }
        }
        let n_cl = alg.classical().monodromy.to_laurent();
        let i_minus_qn = LaurentMatrix::identity(k)
            .sub(&n_cl.scale(&LaurentPoly::q()))
            .unwrap();
        let lhs = alg.givental_matrix().det().unwrap();
        let rhs = i_minus_qn.det().unwrap();
        ensure!(
            lhs == rhs,
            "{name}: det(givental) = {lhs}, det(I - qN) = {rhs}"
        );
        ensure!(lhs == cofactor_det(&i_minus_qn), "{name}: det oracle");
    }
    Ok(())
}

fn move_coherence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for (name, alg) in catalog() {
        let k = alg.m();
        for pos in 0..k - 1 {
            let fwd = hurwitz_move(&alg, pos).map_err(|e| e.to_string())?;
            let back = hurwitz_inverse_move(&fwd.algebra, pos).map_err(|e| e.to_string())?;
            ensure!(
                back.algebra == alg,
                "{name}: Hurwitz inverse fails at {}",
                pos + 1
            );
            let inv = hurwitz_inverse_move(&alg, pos).map_err(|e| e.to_string())?;
            let again = hurwitz_move(&inv.algebra, pos).map_err(|e| e.to_string())?;
            ensure!(
                again.algebra == alg,
                "{name}: Hurwitz forward after inverse fails at {}",
                pos + 1
            );
        }
        let moves = vec![
            ("hurwitz", hurwitz_move(&alg, k / 2).unwrap()),
            ("hurwitz-inverse", hurwitz_inverse_move(&alg, 0).unwrap()),
            ("rescale", rescale_object(&alg, 1, 2).unwrap()),
            ("shift", shift_object(&alg, k - 1).unwrap()),
        ];
        for (label, mv) in &moves {
            for _ in 0..100 {
                let (h0, h1) = (random_class(&mut rng, k), random_class(&mut rng, k));
                let new = mv.algebra.pairing(&h0, &h1).unwrap();
                let c = &mv.transition;
                let old = alg
                    .pairing(&c.mul_class(&h0).unwrap(), &c.mul_class(&h1).unwrap())
                    .unwrap();
                ensure!(new == old, "{name}: Gram transport fails for {label}");
            }
        }
        // twist formula on all basis triples
        for i0 in 0..k {
            for i1 in 0..k {
                let (c0, c1) = (KClass::basis(k, i0), KClass::basis(k, i1));
                let t = dehn_twist_class(alg.n(), alg.a(), &c0, &c1).unwrap();
                for i2 in 0..k {
                    let c2 = KClass::basis(k, i2);
                    let lhs = alg.pairing(&c2, &t).unwrap();
                    let rhs = &alg.pairing(&c2, &c1).unwrap()
                        - &(&alg.pairing(&c2, &c0).unwrap() * &alg.pairing(&c0, &c1).unwrap());
                    ensure!(lhs == rhs, "{name}: twist formula at ({i0},{i1},{i2})");
                }
            }
        }
        // rescale and shift entrywise
        let (kk, shift) = (1, 2);
        let r = rescale_object(&alg, kk, shift).unwrap().algebra;
        let sh = shift_object(&alg, kk).unwrap().algebra;
        for i in 0..k {
            for j in 0..k {
                let e = alg.b().get(i, j);
                let scale = match (i == kk, j == kk) {
                    (true, false) => m(1, -shift),
                    (false, true) => m(1, shift),
                    _ => LaurentPoly::one(),
                };
                ensure!(
                    r.b().get(i, j) == &(e * &scale),
                    "{name}: rescale entry ({i},{j})"
                );
                let flip = if (i == kk) != (j == kk) { c(-1) } else { c(1) };
                ensure!(
                    sh.b().get(i, j) == &(e * &flip),
                    "{name}: shift entry ({i},{j})"
                );
            }
        }
    }
    // spherical twisting objects: fibre spheres, and matching spheres of covers
    for n in PARITIES {
        for r in 2..=5 {
            let data = milnor_ar(r, n).unwrap();
            let fibre = data.algebra();
            for s in &data.sphere_classes {
                for _ in 0..20 {
                    let x = random_class(&mut rng, r + 1);
                    let t = dehn_twist_class(fibre.n(), fibre.a(), s, &x).unwrap();
                    let back = inverse_dehn_twist_class(fibre.n(), fibre.a(), s, &t).unwrap();
                    ensure!(back == x, "fibre A_{r}, n={n}: inverse twist after twist");
                    let t = inverse_dehn_twist_class(fibre.n(), fibre.a(), s, &x).unwrap();
                    let back = dehn_twist_class(fibre.n(), fibre.a(), s, &t).unwrap();
                    ensure!(back == x, "fibre A_{r}, n={n}: twist after inverse twist");
                }
            }
        }
    }
    for (name, alg) in catalog() {
        let cover = alg.double_cover();
        for s in &cover.matching_classes {
            let x = random_class(&mut rng, 2 * alg.m());
            let a = cover.algebra.a();
            let t = dehn_twist_class(alg.n(), a, s, &x).unwrap();
            ensure!(
                inverse_dehn_twist_class(alg.n(), a, s, &t).unwrap() == x,
                "{name}: matching-sphere twist does not invert"
            );
        }
    }
    Ok(())
}

fn double_covers() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xc0ffee);
    for (name, alg) in catalog() {
        let k = alg.m();
        let cover = alg.double_cover();
        for s in &cover.matching_classes {
            let v = cover.algebra.pairing(s, s).unwrap();
            ensure!(
                v == sphere_self_pairing(alg.n()),
                "{name}: matching self-pairing {v}"
            );
        }
        let lift = |l: &KClass| {
            let mut coords = vec![LaurentPoly::zero(); k];
            coords.extend(l.coords().iter().cloned());
            KClass::new(coords)
        };
        for _ in 0..100 {
            let (l0, l1) = (random_class(&mut rng, k), random_class(&mut rng, k));
            let up = cover.algebra.pairing(&lift(&l0), &lift(&l1)).unwrap();
            ensure!(
                up == alg.pairing(&l0, &l1).unwrap(),
                "{name}: embedded pairing"
            );
        }
    }
    Ok(())
}

fn dual_path() -> Outcome {
    for n in PARITIES {
        let data = milnor_ar(3, n).unwrap();
        let fibre = data.algebra();
        let direct = mirror_p2_classes(&data);
        for (i, (word, seed)) in mirror_p2_words().into_iter().enumerate() {
            let via_word = apply_twist_word(
                fibre.n(),
                fibre.a(),
                &data.sphere_classes,
                &word,
                &data.sphere_classes[seed],
            )
            .unwrap();
            ensure!(
                via_word == direct[i],
                "n={n}: C{} via {word} = {via_word}, expected {}",
                i + 1,
                direct[i]
            );
        }
        let alg = mirror_p2(n).map_err(|e| e.to_string())?;
        ensure!(alg.b() == &mirror_matrix(n), "n={n}: B =\n{}", alg.b());
    }
    Ok(())
}

fn certificates() -> Outcome {
    let cert = nonzero_primitive_certificate(&p(0, &[1, -1]));
    ensure!(
        cert.nonzero_at_one && cert.primitive_gcd_bound == BigInt::from(1),
        "certificate of 1 - q: {cert:?}"
    );
    // two orthogonal copies of the odd positive control
    let control = positive_control(3);
    let block = LaurentMatrix::from_fn(4, 4, |i, j| {
        if i / 2 == j / 2 {
            control.a().get(i % 2, j % 2).clone()
        } else {
            LaurentPoly::zero()
        }
    });
    let alg = LefschetzAlgebra::from_a(3, block).unwrap();
    let l1 = KClass::from_ints(&[1, -1, 0, 0]);
    let l2 = KClass::from_ints(&[0, 0, 1, -1]);
    let accepted = independence_certificate(&alg, &[l1.clone(), l2]);
    ensure!(accepted == Ok(true), "orthogonal family: {accepted:?}");
    let rejected = independence_certificate(&alg, &[l1.clone(), l1]);
    ensure!(
        matches!(rejected, Err(qlefschetz::Error::Hypothesis(_))),
        "duplicated class: {rejected:?}"
    );
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("classical golden matrices for X_{2,3}", classical_golden),
        ("q-deformed band matrices for X_{a,b}", quantum_golden),
        (
            "deformed A_r sphere pairings, r = 2..8",
            deformed_ar_pairings,
        ),
        ("determinant of the mirror of P^2", mirror_determinant),
        ("kernels of X_{a,b} and the mirror of P^2", kernels),
        (
            "self-pairing ab(1 + q(-1)^n) and Betti bound 2ab",
            quadratic_value,
        ),
        ("sphere test verdicts", obstruction_verdicts),
        ("q-monodromy identities", monodromy_identities),
        ("move coherence", move_coherence),
        ("double covers", double_covers),
        ("twist words agree with K-theory expressions", dual_path),
        (
            "nonzero, primitive and independence certificates",
            certificates,
        ),
    ];
    // keep panics as failures of their criterion without a backtrace dump
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("acceptance {:>2} PASS  {label}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {:>2} FAIL  {label}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runtime limits are checked alongside correctness.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use opreduce::cauchy::{self, CauchyProblem, SystemMatrix};
use opreduce_core::canonical::{
    build_matrix, jordan_decomposition, rational_decomposition, Orientation, RankOneSpec,
};
use opreduce_core::linalg::{adjugate_char_coeffs, char_poly, rat, ratio};
use opreduce_core::oracle::{
    check_partial, check_reduced, eval_forcing, synthesize_instance, OperatorOracle,
    PolyDerivative, PolyExpFunction, PolyFunction, SequenceVec, ShiftOracle,
};
use opreduce_core::reduction::{
    partial_reduce_jordan, partial_reduce_rational, total_reduce_adjugate, total_reduce_minors,
    total_reduce_rank_one, OperatorSystem,
};
use opreduce_core::{Mat, Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn orientation(rng: &mut impl Rng) -> Orientation {
    if rng.random_bool(0.5) {
        Orientation::Hat
    } else {
        Orientation::Check
    }
}

/// 2 ≤ n ≤ max_n, b_i ∈ [−9, 9], b ≠ 0. `zero_sum` forces Σb = 0 or Σb ≠ 0.
fn random_spec(rng: &mut impl Rng, max_n: usize, zero_sum: Option<bool>) -> RankOneSpec {
    let o = orientation(rng);
    loop {
        let n = rng.random_range(2..=max_n);
        let mut b: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
        if zero_sum == Some(true) {
            let s: i64 = b[..n - 1].iter().sum();
            if s.abs() > 9 {
                continue;
            }
            b[n - 1] = -s;
        }
        let s: i64 = b.iter().sum();
        if zero_sum == Some(false) && s == 0 {
            continue;
        }
        if let Ok(spec) = RankOneSpec::from_ints(&b, o) {
            return spec;
        }
    }
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    let num = rng.random_range(-5i64..=5);
    if rng.random_bool(0.2) {
        ratio(num, rng.random_range(1i64..=4))
    } else {
        rat(num)
    }
}

fn random_dense(rng: &mut impl Rng, lo: usize, hi: usize) -> Mat {
    let n = rng.random_range(lo..=hi);
    Mat::from_fn(n, n, |_, _| random_rational(rng))
}

fn random_polys(rng: &mut impl Rng, n: usize) -> Vec<PolyFunction> {
    (0..n)
        .map(|_| {
            let deg = rng.random_range(0..=5);
            PolyFunction(Poly::from_coeffs(
                (0..=deg).map(|_| random_rational(rng)).collect(),
            ))
        })
        .collect()
}

fn random_sequences(rng: &mut impl Rng, n: usize, len: usize) -> Vec<SequenceVec> {
    (0..n)
        .map(|_| SequenceVec::new((0..len).map(|_| random_rational(rng)).collect()))
        .collect()
}

fn specs_200(seed: u64) -> Vec<RankOneSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..200).map(|_| random_spec(&mut rng, 8, None)).collect()
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Err(msg())
    } else {
        Ok(())
    }
}

fn sum(b: &[Rational]) -> Rational {
    b.iter().sum()
}

fn char_poly_closed_form() -> Outcome {
    for spec in specs_200(1) {
        let n = spec.n();
        let expected = &Poly::monomial(rat(1), n - 1) * &Poly::linear_root(sum(spec.b()));
        let got = char_poly(&build_matrix(&spec)).map_err(|e| e.to_string())?;
        fail_if(got != expected, || format!("b = {:?}: got {got}", spec.b()))?;
    }
    Ok("200 specs".into())
}

fn min_poly_identity() -> Outcome {
    for spec in specs_200(1) {
        let n = spec.n();
        let b = build_matrix(&spec);
        let prod = &b * &(&b - &Mat::scalar(n, &sum(spec.b())));
        fail_if(!prod.is_zero(), || format!("b = {:?}", spec.b()))?;
    }
    Ok("200 specs".into())
}

fn adjugate_closed_form() -> Outcome {
    for spec in specs_200(1) {
        let n = spec.n();
        let b = build_matrix(&spec);
        let adj = adjugate_char_coeffs(&b).map_err(|e| e.to_string())?;
        fail_if(adj.coeff(0) != &Mat::identity(n), || "B_0 != I".into())?;
        fail_if(
            adj.coeff(1) != &(&b - &Mat::scalar(n, &sum(spec.b()))),
            || format!("B_1 for b = {:?}", spec.b()),
        )?;
        for k in 2..n {
            fail_if(!adj.coeff(k).is_zero(), || {
                format!("B_{k} for b = {:?}", spec.b())
            })?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let b = random_dense(&mut rng, 3, 6);
        let n = b.rows();
        let delta = char_poly(&b).map_err(|e| e.to_string())?;
        let adj = adjugate_char_coeffs(&b).map_err(|e| e.to_string())?;
        for i in 0..n {
            for j in 0..n {
                let entry = (0..n).fold(Poly::zero(), |acc, k| {
                    let mut f = Poly::constant(-b[(i, k)].clone());
                    if i == k {
                        f = &f + &Poly::x();
                    }
                    &acc + &(&f * &adj.entry_poly(k, j))
                });
                let expected = if i == j { delta.clone() } else { Poly::zero() };
                fail_if(entry != expected, || format!("entry ({i},{j}) of {b}"))?;
            }
        }
    }
    Ok("200 specs + 100 dense".into())
}

fn decomposition_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let spec = random_spec(&mut rng, 8, Some(false));
        let n = spec.n();
        let b = build_matrix(&spec);
        let j = jordan_decomposition(&spec).map_err(|e| e.to_string())?;
        let s = j.transition();
        let s_inv = s.inverse().map_err(|e| e.to_string())?;
        fail_if(&s_inv != j.transition_inverse(), || {
            format!("closed-form S^-1, b = {:?}", spec.b())
        })?;
        let mut diag = Mat::zeros(n, n);
        diag[(n - 1, n - 1)] = sum(spec.b());
        fail_if(&(&s_inv * &b) * s != diag, || {
            format!("S^-1 B S != J, b = {:?}", spec.b())
        })?;
        if spec.orientation() == Orientation::Hat {
            let sign = if (n - 1) % 2 == 0 { rat(1) } else { rat(-1) };
            let det = s.det().map_err(|e| e.to_string())?;
            fail_if(det != sign * sum(spec.b()), || {
                format!("det S = {det}, b = {:?}", spec.b())
            })?;
        }
        let r = rational_decomposition(&spec).map_err(|e| e.to_string())?;
        let t = r.transition();
        let t_inv = t.inverse().map_err(|e| e.to_string())?;
        fail_if(&t_inv != r.transition_inverse(), || "T^-1".into())?;
        fail_if(t * r.transition_inverse() != Mat::identity(n), || {
            "T T^-1 != I".into()
        })?;
        let mut c = Mat::zeros(n, n);
        c[(n - 2, n - 1)] = rat(1);
        c[(n - 1, n - 1)] = sum(spec.b());
        fail_if(&(&t_inv * &b) * t != c, || {
            format!("T^-1 B T != C, b = {:?}", spec.b())
        })?;
    }
    for _ in 0..50 {
        let spec = random_spec(&mut rng, 8, Some(true));
        let n = spec.n();
        let b = build_matrix(&spec);
        let r = rational_decomposition(&spec).map_err(|e| e.to_string())?;
        let t = r.transition();
        fail_if(t * r.transition_inverse() != Mat::identity(n), || {
            "T T^-1 != I".into()
        })?;
        let mut c = Mat::zeros(n, n);
        c[(n - 2, n - 1)] = rat(1);
        fail_if(&(r.transition_inverse() * &b) * t != c, || {
            format!("T^-1 B T != C, b = {:?}", spec.b())
        })?;
        let j = jordan_decomposition(&spec).map_err(|e| e.to_string())?;
        fail_if(!j.is_valid_for(&b), || "degenerate Jordan form".into())?;
    }
    Ok("200 Part 1 + 50 Part 2".into())
}

fn route_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let b = random_dense(&mut rng, 1, 5);
        let n = b.rows();
        let phi = random_polys(&mut rng, n);
        let sys = OperatorSystem::new(b).map_err(|e| e.to_string())?;
        let adj = total_reduce_adjugate(&sys).map_err(|e| e.to_string())?;
        let minors = total_reduce_minors(&sys, &PolyDerivative, &phi).map_err(|e| e.to_string())?;
        for (eq, m) in adj.iter().zip(&minors) {
            let via_adj =
                eval_forcing(&PolyDerivative, eq.rhs(), &phi).map_err(|e| e.to_string())?;
            fail_if(&via_adj != m, || {
                format!("{}: {} vs {}", eq.target(), via_adj.0, m.0)
            })?;
        }
    }
    Ok("50 dense systems".into())
}

fn closed_form_agreement() -> Outcome {
    for spec in specs_200(6) {
        let sys = OperatorSystem::new(build_matrix(&spec)).map_err(|e| e.to_string())?;
        let general = total_reduce_adjugate(&sys).map_err(|e| e.to_string())?;
        fail_if(general != total_reduce_rank_one(&spec), || {
            format!("b = {:?}", spec.b())
        })?;
    }
    Ok("200 specs".into())
}

fn check_all<O: OperatorOracle>(
    spec: &RankOneSpec,
    x: &[O::Elem],
    oracle: &O,
) -> Result<(), String> {
    let b = build_matrix(spec);
    let e = |e: opreduce_core::Error| e.to_string();
    let phi = synthesize_instance(&b, x, oracle).map_err(e)?;
    let total = total_reduce_adjugate(&OperatorSystem::new(b).map_err(e)?).map_err(e)?;
    fail_if(
        !check_reduced(&total, x, &phi, oracle).map_err(e)?.holds(),
        || "total".into(),
    )?;
    let rational = partial_reduce_rational(spec).map_err(e)?;
    fail_if(
        !check_partial(&rational, x, &phi, oracle)
            .map_err(e)?
            .holds(),
        || "rational".into(),
    )?;
    if !spec.is_degenerate() {
        let jordan = partial_reduce_jordan(spec).map_err(e)?;
        fail_if(
            !check_partial(&jordan, x, &phi, oracle).map_err(e)?.holds(),
            || "jordan".into(),
        )?;
    }
    Ok(())
}

fn implication_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 6, None);
        let x = random_polys(&mut rng, spec.n());
        check_all(&spec, &x, &PolyDerivative)
            .map_err(|m| format!("derivative, b = {:?}: {m}", spec.b()))?;
    }
    for _ in 0..100 {
        let spec = random_spec(&mut rng, 6, None);
        let len = spec.n() + 5;
        let x = random_sequences(&mut rng, spec.n(), len);
        check_all(&spec, &x, &ShiftOracle::new(len))
            .map_err(|m| format!("shift, b = {:?}: {m}", spec.b()))?;
    }
    Ok("100 per oracle".into())
}

fn cauchy_reproduction() -> Outcome {
    let spec = RankOneSpec::from_ints(&[1, 2, 3], Orientation::Hat).map_err(|e| e.to_string())?;
    let poly = |c: &[i64]| PolyExpFunction::poly(Poly::from_ints(c));
    let problem = CauchyProblem::new(
        SystemMatrix::RankOne(spec),
        vec![poly(&[0, 1]), poly(&[0, 0, 1]), poly(&[1])],
        rat(0),
        vec![rat(1), rat(0), rat(-1)],
        rat(1),
        ratio(1, 100),
    )
    .map_err(|e| e.to_string())?;
    let coarse = cauchy::solve(&problem).max_abs_deviation;
    let halved = problem
        .with_step(ratio(1, 200))
        .map_err(|e| e.to_string())?;
    let fine = cauchy::solve(&halved).max_abs_deviation;
    let factor = coarse / fine;
    let summary =
        format!("deviation {coarse:.3e} at h = 1/100, {fine:.3e} at h = 1/200, factor {factor:.2}");
    if coarse <= 1e-6 && (8.0..=32.0).contains(&factor) {
        Ok(summary)
    } else {
        Err(summary)
    }
}

fn worked_example() -> Outcome {
    let spec = RankOneSpec::from_ints(&[1, 1], Orientation::Hat).map_err(|e| e.to_string())?;
    let pf = |c: &[i64]| PolyFunction(Poly::from_ints(c));
    let x = vec![pf(&[0, 1]), pf(&[1])];
    let phi = vec![pf(&[0, -1]), pf(&[-1, -1])];
    let b = build_matrix(&spec);
    let synthesized = synthesize_instance(&b, &x, &PolyDerivative).map_err(|e| e.to_string())?;
    fail_if(synthesized != phi, || "φ is not A(x) − Bx".into())?;
    let eq = &total_reduce_rank_one(&spec)[0];
    fail_if(eq.lhs() != &Poly::from_ints(&[0, -2, 1]), || {
        "lhs is not A^2 - 2A".into()
    })?;
    let lhs = PolyDerivative
        .eval_poly(eq.lhs(), &x[0])
        .map_err(|e| e.to_string())?;
    let rhs = eval_forcing(&PolyDerivative, eq.rhs(), &phi).map_err(|e| e.to_string())?;
    // A(φ1) + φ2 − φ1 by hand
    let d = &PolyDerivative;
    let by_hand = d.sub(
        &d.add(&d.apply(&phi[0]).map_err(|e| e.to_string())?, &phi[1]),
        &phi[0],
    );
    fail_if(
        lhs != pf(&[-2]) || rhs != pf(&[-2]) || by_hand != pf(&[-2]),
        || format!("lhs {}, rhs {}", lhs.0, rhs.0),
    )?;
    Ok(format!("{eq}; both sides = -2"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "characteristic polynomial closed form",
            Duration::from_secs(5),
            char_poly_closed_form,
        ),
        (
            "minimal polynomial identity",
            Duration::from_secs(5),
            min_poly_identity,
        ),
        (
            "adjugate closed form",
            Duration::from_secs(10),
            adjugate_closed_form,
        ),
        (
            "decomposition identities",
            Duration::from_secs(10),
            decomposition_identities,
        ),
        ("route agreement", Duration::from_secs(30), route_agreement),
        (
            "closed-form agreement",
            Duration::from_secs(5),
            closed_form_agreement,
        ),
        (
            "implication soundness",
            Duration::from_secs(30),
            implication_soundness,
        ),
        (
            "Cauchy reproduction",
            Duration::from_secs(5),
            cauchy_reproduction,
        ),
        ("worked example", Duration::from_secs(1), worked_example),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the {limit:?} limit")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "{status} criterion {}: {name} ({elapsed:.2?}) {detail}",
            k + 1
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Randomized property suites behind `opreduce verify`.
//!
//! Every trial draws its own seed from the master seed, so a failing trial
//! can be replayed with [`run_trial`].

use opreduce_core::canonical::{
    build_matrix, jordan_decomposition, rank_one_char_poly, rank_one_min_poly,
    rational_decomposition, Orientation, RankOneSpec,
};
use opreduce_core::linalg::{char_poly, rat, ratio};
use opreduce_core::oracle::{
    check_partial, check_reduced, synthesize_instance, OperatorOracle, PolyDerivative,
    PolyFunction, SequenceVec, ShiftOracle, SymbolicOracle,
};
use opreduce_core::reduction::{
    partial_reduce_jordan, partial_reduce_rational, total_reduce_adjugate, total_reduce_minors,
    total_reduce_rank_one, ForcingExpr, OperatorSystem,
};
use opreduce_core::{Mat, Poly, Rational};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub seed: u64,
    pub check: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub trials: usize,
    pub passed: usize,
    pub failures: Vec<TrialFailure>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_trials(trials: usize, seed: u64) -> VerifyReport {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.next_u64()).collect();
    let mut failures = Vec::new();
    for (trial, &s) in seeds.iter().enumerate() {
        if let Err(check) = run_trial(s) {
            failures.push(TrialFailure {
                trial,
                seed: s,
                check,
            });
        }
    }
    VerifyReport {
        trials,
        passed: trials - failures.len(),
        failures,
    }
}

fn ensure(ok: bool, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn core<T>(r: opreduce_core::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn random_rational(rng: &mut impl Rng) -> Rational {
    let num = rng.random_range(-6i64..=6);
    if rng.random_bool(0.2) {
        ratio(num, rng.random_range(1i64..=3))
    } else {
        rat(num)
    }
}

fn random_spec(rng: &mut impl Rng) -> RankOneSpec {
    let n = rng.random_range(2..=6);
    let orientation = if rng.random_bool(0.5) {
        Orientation::Hat
    } else {
        Orientation::Check
    };
    loop {
        let mut b: Vec<i64> = (0..n).map(|_| rng.random_range(-9..=9)).collect();
        if rng.random_bool(0.25) {
            let s: i64 = b[..n - 1].iter().sum();
            b[n - 1] = -s;
        }
        if let Ok(spec) = RankOneSpec::from_ints(&b, orientation) {
            return spec;
        }
    }
}

fn random_dense(rng: &mut impl Rng, max_n: usize) -> Mat {
    let n = rng.random_range(1..=max_n);
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

/// One trial: a random rank-one spec and a random dense matrix through every
/// identity and both oracles.
pub fn run_trial(seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let spec = random_spec(&mut rng);
    let n = spec.n();
    let b = build_matrix(&spec);
    let sys = core(OperatorSystem::new(b.clone()), "system")?;
    ensure(
        core(char_poly(&b), "char poly")? == rank_one_char_poly(&spec),
        "characteristic polynomial closed form",
    )?;
    let mu = rank_one_min_poly(&spec);
    ensure(
        mu.coeffs()
            .iter()
            .enumerate()
            .fold(Mat::zeros(n, n), |acc, (k, c)| {
                let mut p = Mat::identity(n);
                for _ in 0..k {
                    p = &p * &b;
                }
                &acc + &p.scale(c)
            })
            == Mat::zeros(n, n),
        "minimal polynomial annihilates B",
    )?;
    if !spec.is_degenerate() {
        let j = core(jordan_decomposition(&spec), "jordan decomposition")?;
        ensure(j.is_valid_for(&b), "jordan decomposition identity")?;
    }
    let r = core(rational_decomposition(&spec), "rational decomposition")?;
    ensure(r.is_valid_for(&b), "rational decomposition identity")?;
    let closed = total_reduce_rank_one(&spec);
    ensure(
        core(total_reduce_adjugate(&sys), "adjugate route")? == closed,
        "closed form equals adjugate route",
    )?;

    let x = random_polys(&mut rng, n);
    let phi = core(synthesize_instance(&b, &x, &PolyDerivative), "synthesize")?;
    let len = n + 4;
    let seqs = random_sequences(&mut rng, n, len);
    let shift = ShiftOracle::new(len);
    let seq_phi = core(synthesize_instance(&b, &seqs, &shift), "synthesize")?;
    ensure(
        core(
            check_reduced(&closed, &x, &phi, &PolyDerivative),
            "derivative check",
        )?
        .holds(),
        "total reduction, derivative oracle",
    )?;
    ensure(
        core(
            check_reduced(&closed, &seqs, &seq_phi, &shift),
            "shift check",
        )?
        .holds(),
        "total reduction, shift oracle",
    )?;
    let mut partials = vec![(
        "rational",
        core(partial_reduce_rational(&spec), "rational")?,
    )];
    if !spec.is_degenerate() {
        partials.push(("jordan", core(partial_reduce_jordan(&spec), "jordan")?));
    }
    for (name, part) in &partials {
        ensure(
            core(check_partial(part, &x, &phi, &PolyDerivative), name)?.holds(),
            &format!("{name} partial reduction, derivative oracle"),
        )?;
        ensure(
            core(check_partial(part, &seqs, &seq_phi, &shift), name)?.holds(),
            &format!("{name} partial reduction, shift oracle"),
        )?;
    }

    let dense = random_dense(&mut rng, 4);
    let m = dense.rows();
    let dsys = core(OperatorSystem::new(dense.clone()), "dense system")?;
    let adj = core(total_reduce_adjugate(&dsys), "dense adjugate route")?;
    let symbols: Vec<ForcingExpr> = (0..m).map(ForcingExpr::phi).collect();
    let minors = core(
        total_reduce_minors(&dsys, &SymbolicOracle, &symbols),
        "minors route",
    )?;
    ensure(
        adj.iter().zip(&minors).all(|(eq, rhs)| eq.rhs() == rhs),
        "minors route equals adjugate route",
    )?;
    let x = random_polys(&mut rng, m);
    let phi = core(
        synthesize_instance(&dense, &x, &PolyDerivative),
        "synthesize",
    )?;
    let evaluated = core(
        total_reduce_minors(&dsys, &PolyDerivative, &phi),
        "minors route",
    )?;
    for (eq, (xi, rhs)) in adj.iter().zip(x.iter().zip(&evaluated)) {
        let lhs = core(PolyDerivative.eval_poly(eq.lhs(), xi), "lhs")?;
        ensure(lhs == *rhs, "dense total reduction, derivative oracle")?;
    }
    Ok(())
}

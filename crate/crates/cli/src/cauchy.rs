//! Initial-value problems for `x' = Bx + φ(t)`, `x(t0) = c`.
//!
//! Higher-order initial conditions are derived exactly; integration is
//! classical RK4 in `f64`.

use num_traits::{ToPrimitive, Zero};
use opreduce_core::canonical::{build_matrix, RankOneSpec};
use opreduce_core::oracle::{eval_forcing, ExpPolyDerivative, PolyExpFunction};
use opreduce_core::reduction::{
    total_reduce_adjugate, total_reduce_rank_one, OperatorSystem, ReducedEquation,
};
use opreduce_core::{Mat, Poly, Rational};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CauchyError {
    #[error("step must be positive")]
    NonPositiveStep,
    #[error("horizon must be greater than t0")]
    EmptyInterval,
    #[error("{what}: expected {expected} entries, found {found}")]
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("forcing {index} has an exponential factor with no exact value at t0; use t0 = 0")]
    IrrationalAtT0 { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemMatrix {
    RankOne(RankOneSpec),
    Dense(Mat),
}

impl SystemMatrix {
    pub fn matrix(&self) -> Mat {
        match self {
            SystemMatrix::RankOne(spec) => build_matrix(spec),
            SystemMatrix::Dense(m) => m.clone(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            SystemMatrix::RankOne(spec) => spec.n(),
            SystemMatrix::Dense(m) => m.rows(),
        }
    }

    /// Closed forms for the rank-one family, the adjugate route otherwise.
    pub fn total_reduction(&self) -> Vec<ReducedEquation> {
        match self {
            SystemMatrix::RankOne(spec) => total_reduce_rank_one(spec),
            SystemMatrix::Dense(m) => {
                let sys = OperatorSystem::new(m.clone()).expect("dense matrices are square");
                total_reduce_adjugate(&sys).expect("square system")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyProblem {
    system: SystemMatrix,
    forcing: Vec<PolyExpFunction>,
    t0: Rational,
    c: Vec<Rational>,
    horizon: Rational,
    step: Rational,
}

impl CauchyProblem {
    pub fn new(
        system: SystemMatrix,
        forcing: Vec<PolyExpFunction>,
        t0: Rational,
        c: Vec<Rational>,
        horizon: Rational,
        step: Rational,
    ) -> Result<Self, CauchyError> {
        let n = system.n();
        if forcing.len() != n {
            return Err(CauchyError::Dimension {
                what: "forcing",
                expected: n,
                found: forcing.len(),
            });
        }
        if c.len() != n {
            return Err(CauchyError::Dimension {
                what: "c",
                expected: n,
                found: c.len(),
            });
        }
        if step <= Rational::zero() {
            return Err(CauchyError::NonPositiveStep);
        }
        if horizon <= t0 {
            return Err(CauchyError::EmptyInterval);
        }
        if let Some(index) = forcing.iter().position(|f| f.eval_exact(&t0).is_none()) {
            return Err(CauchyError::IrrationalAtT0 { index });
        }
        Ok(CauchyProblem {
            system,
            forcing,
            t0,
            c,
            horizon,
            step,
        })
    }

    pub fn system(&self) -> &SystemMatrix {
        &self.system
    }

    pub fn forcing(&self) -> &[PolyExpFunction] {
        &self.forcing
    }

    pub fn t0(&self) -> &Rational {
        &self.t0
    }

    pub fn c(&self) -> &[Rational] {
        &self.c
    }

    pub fn horizon(&self) -> &Rational {
        &self.horizon
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    pub fn n(&self) -> usize {
        self.system.n()
    }

    /// Same problem with a different step.
    pub fn with_step(&self, step: Rational) -> Result<Self, CauchyError> {
        CauchyProblem::new(
            self.system.clone(),
            self.forcing.clone(),
            self.t0.clone(),
            self.c.clone(),
            self.horizon.clone(),
            step,
        )
    }

    /// `t0, t0 + h, …`, with a shortened last step landing on the horizon.
    pub fn grid(&self) -> Vec<Rational> {
        let mut out = vec![self.t0.clone()];
        let mut t = self.t0.clone();
        while t < self.horizon {
            t = (&t + &self.step).min(self.horizon.clone());
            out.push(t.clone());
        }
        out
    }
}

/// `table[i][m] = x_i^{(m)}(t0)` for `0 ≤ m ≤ n−1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedInitialConditions {
    table: Vec<Vec<Rational>>,
}

impl DerivedInitialConditions {
    pub fn table(&self) -> &[Vec<Rational>] {
        &self.table
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.table[i]
    }
}

/// Substitutes `x(t0) = c` into the system and its derivatives:
/// `x^{(m+1)}(t0) = B x^{(m)}(t0) + φ^{(m)}(t0)`.
pub fn derive_initial_conditions(p: &CauchyProblem) -> DerivedInitialConditions {
    let n = p.n();
    let b = p.system.matrix();
    let mut columns: Vec<Vec<Rational>> = vec![p.c.clone()];
    let mut phi = p.forcing.clone();
    for _ in 0..n.saturating_sub(1) {
        let prev = columns.last().expect("nonempty");
        let bx = b.mul_vec(prev).expect("dimensions checked");
        let next = bx
            .into_iter()
            .zip(&phi)
            .map(|(v, f)| v + f.eval_exact(&p.t0).expect("checked at construction"))
            .collect();
        columns.push(next);
        phi = phi.iter().map(PolyExpFunction::derivative).collect();
    }
    let table = (0..n)
        .map(|i| columns.iter().map(|col| col[i].clone()).collect())
        .collect();
    DerivedInitialConditions { table }
}

/// Samples on a shared time grid; `values[k][i]` is `x_i(times[k])`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().expect("finite rational")
}

struct NumericFunction {
    terms: Vec<(Vec<f64>, f64)>,
}

impl NumericFunction {
    fn new(f: &PolyExpFunction) -> Self {
        NumericFunction {
            terms: f
                .terms()
                .iter()
                .map(|(p, r)| (p.coeffs().iter().map(to_f64).collect(), to_f64(r)))
                .collect(),
        }
    }

    fn eval(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, r)| {
                let p = c.iter().rev().fold(0.0, |acc, a| acc * t + a);
                if *r == 0.0 {
                    p
                } else {
                    p * (r * t).exp()
                }
            })
            .sum()
    }
}

fn axpy(y: &[f64], a: f64, k: &[f64]) -> Vec<f64> {
    y.iter().zip(k).map(|(y, k)| y + a * k).collect()
}

fn rk4<F>(f: F, y0: Vec<f64>, grid: &[f64]) -> Vec<Vec<f64>>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    let mut out = Vec::with_capacity(grid.len());
    let mut y = y0;
    out.push(y.clone());
    for w in grid.windows(2) {
        let (t, h) = (w[0], w[1] - w[0]);
        let k1 = f(t, &y);
        let k2 = f(t + h / 2.0, &axpy(&y, h / 2.0, &k1));
        let k3 = f(t + h / 2.0, &axpy(&y, h / 2.0, &k2));
        let k4 = f(t + h, &axpy(&y, h, &k3));
        y = (0..y.len())
            .map(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect();
        out.push(y.clone());
    }
    out
}

fn float_grid(p: &CauchyProblem) -> Vec<f64> {
    p.grid().iter().map(to_f64).collect()
}

/// RK4 on the coupled first-order system.
pub fn solve_coupled(p: &CauchyProblem) -> Trajectory {
    let n = p.n();
    let b = p.system.matrix();
    let bf: Vec<Vec<f64>> = (0..n)
        .map(|i| b.row(i).iter().map(to_f64).collect())
        .collect();
    let phi: Vec<NumericFunction> = p.forcing.iter().map(NumericFunction::new).collect();
    let times = float_grid(p);
    let values = rk4(
        |t, x| {
            (0..n)
                .map(|i| bf[i].iter().zip(x).map(|(a, v)| a * v).sum::<f64>() + phi[i].eval(t))
                .collect()
        },
        p.c.iter().map(to_f64).collect(),
        &times,
    );
    Trajectory { times, values }
}

/// Integrates one scalar equation `Δ(d/dt) x = r(t)` through its companion
/// first-order system, starting from `(x, x', …, x^{(n−1)})(t0) = seed`.
fn integrate_scalar(
    delta: &Poly,
    rhs: &PolyExpFunction,
    seed: &[Rational],
    grid: &[f64],
) -> Vec<f64> {
    let n = seed.len();
    let d: Vec<f64> = delta.coeffs()[..n].iter().map(to_f64).collect();
    let r = NumericFunction::new(rhs);
    rk4(
        |t, z| {
            let mut dz: Vec<f64> = z[1..].to_vec();
            let top = r.eval(t) - d.iter().zip(z).map(|(a, v)| a * v).sum::<f64>();
            dz.push(top);
            dz
        },
        seed.iter().map(to_f64).collect(),
        grid,
    )
    .into_iter()
    .map(|z| z[0])
    .collect()
}

/// RK4 on each totally reduced equation separately, seeded with the
/// derived initial conditions.
pub fn solve_decoupled(p: &CauchyProblem) -> Trajectory {
    let n = p.n();
    let eqs = p.system.total_reduction();
    let ic = derive_initial_conditions(p);
    let times = float_grid(p);
    let columns: Vec<Vec<f64>> = eqs
        .iter()
        .map(|eq| {
            let i = eq.target().index;
            let rhs = eval_forcing(&ExpPolyDerivative, eq.rhs(), &p.forcing)
                .expect("forcing indices are in range");
            integrate_scalar(eq.lhs(), &rhs, ic.row(i), &times)
        })
        .collect();
    let values = (0..times.len())
        .map(|k| (0..n).map(|i| columns[i][k]).collect())
        .collect();
    Trajectory { times, values }
}

pub fn max_abs_deviation(a: &Trajectory, b: &Trajectory) -> f64 {
    a.values
        .iter()
        .zip(&b.values)
        .flat_map(|(u, v)| u.iter().zip(v).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub coupled: Trajectory,
    pub decoupled: Trajectory,
    pub max_abs_deviation: f64,
}

pub fn solve(p: &CauchyProblem) -> SolveReport {
    let coupled = solve_coupled(p);
    let decoupled = solve_decoupled(p);
    let max_abs_deviation = max_abs_deviation(&coupled, &decoupled);
    SolveReport {
        coupled,
        decoupled,
        max_abs_deviation,
    }
}

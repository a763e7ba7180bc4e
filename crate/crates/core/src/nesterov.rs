//! Nesterov accelerated projected gradient descent / ascent over an operator interval.
//!
//! ```text
//! ω₀ = χ₀ = init
//! while ‖∇f(ω_m)‖₂ > √(2γε):
//!     ξ_{m+1} = ω_m ± ∇f(ω_m)/β        (+ for ascent, − for descent)
//!     χ_{m+1} = clip spectrum of ξ_{m+1} to [lo, hi]
//!     ω_{m+1} = χ_{m+1} + (√κ−1)/(√κ+1) · (χ_{m+1} − χ_m)
//! ```
//!
//! The extrapolated `ω_m` may leave the interval; the gradient is evaluated
//! there as written. Only if `ω_m` leaves the positive definite cone is it
//! projected back, which is reported as a safeguard event.

use crate::conditioning::ConditioningProfile;
use crate::hermitian::{hs_norm, project_to_interval, spectral_decompose, HermitianMatrix};
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascent,
    Descent,
}

/// A differentiable function of a positive definite matrix.
pub trait Objective<T: Real> {
    fn value(&self, omega: &HermitianMatrix<T>) -> Result<T>;
    fn gradient(&self, omega: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>>;
}

/// Adapts a pair of closures to [`Objective`].
pub struct FnObjective<V, G> {
    pub value: V,
    pub gradient: G,
}

impl<T, V, G> Objective<T> for FnObjective<V, G>
where
    T: Real,
    V: Fn(&HermitianMatrix<T>) -> Result<T>,
    G: Fn(&HermitianMatrix<T>) -> Result<HermitianMatrix<T>>,
{
    fn value(&self, omega: &HermitianMatrix<T>) -> Result<T> {
        (self.value)(omega)
    }

    fn gradient(&self, omega: &HermitianMatrix<T>) -> Result<HermitianMatrix<T>> {
        (self.gradient)(omega)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterationLimit {
    /// `ceil(10·√κ·ln(1/ε)) + 100`
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T: Real> {
    pub epsilon: T,
    pub max_iterations: IterationLimit,
    pub record_trace: bool,
}

impl<T: Real> SolverConfig<T> {
    pub fn new(epsilon: T) -> Result<Self> {
        if !(epsilon > T::zero() && epsilon.is_finite()) {
            return Err(Error::InvalidConfig(format!("epsilon must be positive, got {}", epsilon.as_f64())));
        }
        Ok(Self { epsilon, max_iterations: IterationLimit::Auto, record_trace: false })
    }

    pub fn with_max_iterations(mut self, limit: IterationLimit) -> Self {
        self.max_iterations = limit;
        self
    }

    pub fn with_trace(mut self, record: bool) -> Self {
        self.record_trace = record;
        self
    }

    pub fn iteration_cap(&self, kappa: T) -> usize {
        match self.max_iterations {
            IterationLimit::Fixed(n) => n,
            IterationLimit::Auto => {
                let log_term = (1.0 / self.epsilon.as_f64()).ln().max(0.0);
                (10.0 * kappa.as_f64().sqrt() * log_term).ceil() as usize + 100
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TracePoint<T: Real> {
    pub iteration: usize,
    pub objective: T,
    pub grad_hs_norm: T,
    /// Extreme eigenvalues of the projected iterate `χ_m`.
    pub chi_spectrum: (T, T),
    /// `ω_m` left the positive definite cone and was projected back.
    pub safeguard: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult<T: Real> {
    /// Objective at the final iterate.
    pub value: T,
    pub omega: HermitianMatrix<T>,
    /// Number of gradient steps taken.
    pub iterations: usize,
    pub converged: bool,
    pub grad_norm: T,
    /// `√(2γε)`
    pub threshold: T,
    pub safeguard_events: usize,
    pub trace: Option<Vec<TracePoint<T>>>,
}

impl<T: Real> SolverResult<T> {
    /// `Err(IterationCapExceeded)` when the stopping rule never fired.
    pub fn check(&self) -> Result<()> {
        if self.converged {
            Ok(())
        } else {
            Err(Error::IterationCapExceeded {
                iterations: self.iterations,
                grad_norm: self.grad_norm.as_f64(),
                threshold: self.threshold.as_f64(),
            })
        }
    }
}

/// Runs accelerated projected gradient steps from `init` until `‖∇f‖₂ ≤ √(2γε)`.
///
/// Hitting the iteration cap is not an `Err`: the partial result comes back
/// with `converged == false` and [`SolverResult::check`] turns it into
/// [`Error::IterationCapExceeded`].
pub fn solve<T: Real, O: Objective<T>>(
    objective: &O,
    profile: &ConditioningProfile<T>,
    direction: Direction,
    init: &HermitianMatrix<T>,
    config: &SolverConfig<T>,
) -> Result<SolverResult<T>> {
    let interval = profile.interval;
    let init_spec = spectral_decompose(init)?;
    let tol = T::lit(1e-12) * interval.hi();
    if !init_spec.eigenvalues.iter().all(|&x| interval.contains(x, tol)) {
        return Err(Error::InvalidConfig("initial point outside the operator interval".into()));
    }
    let step = match direction {
        Direction::Ascent => profile.beta.recip(),
        Direction::Descent => -profile.beta.recip(),
    };
    let momentum = profile.momentum();
    let threshold = (T::lit(2.0) * profile.gamma * config.epsilon).sqrt();
    let cap = config.iteration_cap(profile.kappa);

    let mut omega = init.clone();
    let mut chi_prev = init.clone();
    let mut chi_spectrum = (init_spec.min_eigenvalue(), init_spec.max_eigenvalue());
    let mut trace = config.record_trace.then(Vec::new);
    let mut safeguard_events = 0;
    let mut m = 0;
    loop {
        let mut safeguard = false;
        let grad = match objective.gradient(&omega) {
            Err(Error::NotPositiveDefinite { .. }) => {
                omega = project_to_interval(&omega, &interval)?;
                safeguard = true;
                safeguard_events += 1;
                objective.gradient(&omega)?
            }
            other => other?,
        };
        let grad_norm = hs_norm(&grad);
        if let Some(trace) = trace.as_mut() {
            trace.push(TracePoint {
                iteration: m,
                objective: objective.value(&omega)?,
                grad_hs_norm: grad_norm,
                chi_spectrum,
                safeguard,
            });
        }
        let converged = grad_norm <= threshold;
        if converged || m >= cap {
            return Ok(SolverResult {
                value: objective.value(&omega)?,
                omega,
                iterations: m,
                converged,
                grad_norm,
                threshold,
                safeguard_events,
                trace,
            });
        }
        let xi = omega.axpy(step, &grad);
        let chi = project_to_interval(&xi, &interval)?;
        omega = chi.axpy(momentum, &(&chi - &chi_prev));
        if config.record_trace {
            let s = spectral_decompose(&chi)?;
            chi_spectrum = (s.min_eigenvalue(), s.max_eigenvalue());
        }
        chi_prev = chi;
        m += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditioning::smoothness_for;
    use crate::hermitian::{hs_inner, OperatorInterval};
    use crate::objectives::{ProblemInstance, ProblemKind};

    fn quadratic_profile(kappa: f64) -> ConditioningProfile<f64> {
        ConditioningProfile {
            interval: OperatorInterval::new(0.01, 100.0).unwrap(),
            beta: kappa,
            gamma: 1.0,
            kappa,
            kind: ProblemKind::MeasuredRelEnt,
        }
    }

    #[test]
    fn auto_cap_formula() {
        let c = SolverConfig::new(1e-6).unwrap();
        let want = (10.0 * 10.0 * (1e6f64).ln()).ceil() as usize + 100;
        assert_eq!(c.iteration_cap(100.0), want);
        assert!(SolverConfig::new(0.0).is_err());
        assert!(SolverConfig::new(-1.0).is_err());
    }

    #[test]
    fn momentum_bounds() {
        assert_eq!(quadratic_profile(1.0).momentum(), 0.0);
        for k in [1.5, 10.0, 1e4, 1e8] {
            let m = quadratic_profile(k).momentum();
            assert!((0.0..1.0).contains(&m));
        }
    }

    #[test]
    fn minimizes_separable_quadratic() {
        // f(ω) = ½ Tr[(ω − T) D (ω − T)] with D = diag(1, κ) acting entrywise on the diagonal.
        let target = HermitianMatrix::from_real_diagonal(&[2.0, 3.0]).unwrap();
        let weights = HermitianMatrix::from_real_diagonal(&[1.0, 50.0]).unwrap();
        let f = FnObjective {
            value: |w: &HermitianMatrix<f64>| {
                let d = w - &target;
                Ok(0.5 * (0..2).map(|i| weights.get(i, i).re * d.get(i, i).re.powi(2)).sum::<f64>())
            },
            gradient: |w: &HermitianMatrix<f64>| {
                let d = w - &target;
                HermitianMatrix::from_real_diagonal(&[d.get(0, 0).re, 50.0 * d.get(1, 1).re])
            },
        };
        let profile = ConditioningProfile { beta: 50.0, gamma: 1.0, kappa: 50.0, ..quadratic_profile(50.0) };
        let init = HermitianMatrix::scaled_identity(2, 1.0);
        let cfg = SolverConfig::new(1e-12).unwrap();
        let r = solve(&f, &profile, Direction::Descent, &init, &cfg).unwrap();
        assert!(r.converged);
        assert!(r.value <= 1e-12);
        assert!(r.omega.max_abs_diff(&target) < 1e-5);
    }

    #[test]
    fn optimal_initialization_costs_zero_steps() {
        let rho = HermitianMatrix::<f64>::from_real_diagonal(&[0.6, 0.4]).unwrap();
        let inst = ProblemInstance::new(rho.clone(), rho, ProblemKind::MeasuredRelEnt).unwrap();
        let p = smoothness_for(&inst).unwrap();
        let init = HermitianMatrix::identity(2);
        let r = solve(&inst, &p, Direction::Ascent, &init, &SolverConfig::new(1e-9).unwrap()).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 0);
        assert!(r.value.abs() < 1e-15);
    }

    #[test]
    fn cap_reports_partial_result() {
        let inst = ProblemInstance::new(
            HermitianMatrix::from_real_diagonal(&[0.9, 0.1]).unwrap(),
            HermitianMatrix::from_real_diagonal(&[0.2, 0.8]).unwrap(),
            ProblemKind::MeasuredRelEnt,
        )
        .unwrap();
        let p = smoothness_for(&inst).unwrap();
        let init = HermitianMatrix::scaled_identity(2, p.interval.midpoint());
        let cfg = SolverConfig::new(1e-12).unwrap().with_max_iterations(IterationLimit::Fixed(3));
        let r = solve(&inst, &p, Direction::Ascent, &init, &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.iterations, 3);
        assert!(matches!(r.check(), Err(Error::IterationCapExceeded { iterations: 3, .. })));
    }

    #[test]
    fn rejects_infeasible_start() {
        let inst = ProblemInstance::new(
            HermitianMatrix::from_real_diagonal(&[0.9, 0.1]).unwrap(),
            HermitianMatrix::from_real_diagonal(&[0.2, 0.8]).unwrap(),
            ProblemKind::MeasuredRelEnt,
        )
        .unwrap();
        let p = smoothness_for(&inst).unwrap();
        let init = HermitianMatrix::scaled_identity(2, p.interval.hi() * 2.0);
        let cfg = SolverConfig::new(1e-6).unwrap();
        assert!(solve(&inst, &p, Direction::Ascent, &init, &cfg).is_err());
    }

    #[test]
    fn trace_records_feasible_projections() {
        let inst = ProblemInstance::new(
            HermitianMatrix::from_real_diagonal(&[0.5, 0.3, 0.2]).unwrap(),
            HermitianMatrix::from_real_diagonal(&[0.2, 0.3, 0.5]).unwrap(),
            ProblemKind::MeasuredRelEnt,
        )
        .unwrap();
        let p = smoothness_for(&inst).unwrap();
        let init = HermitianMatrix::scaled_identity(3, p.interval.midpoint());
        let cfg = SolverConfig::new(1e-10).unwrap().with_trace(true);
        let r = solve(&inst, &p, Direction::Ascent, &init, &cfg).unwrap();
        let trace = r.trace.as_ref().unwrap();
        assert_eq!(trace.len(), r.iterations + 1);
        for t in trace {
            assert!(p.interval.contains(t.chi_spectrum.0, 1e-12));
            assert!(p.interval.contains(t.chi_spectrum.1, 1e-12));
        }
        assert!(trace.last().unwrap().grad_hs_norm <= r.threshold);
        let g = inst.gradient(&r.omega).unwrap();
        assert!(hs_inner::<f64>(&g, &g).unwrap().sqrt() <= r.threshold);
    }

    #[test]
    fn identical_inputs_give_identical_runs() {
        let inst = ProblemInstance::new(
            HermitianMatrix::from_pairs(2, &[(0.6, 0.0), (0.1, 0.2), (0.1, -0.2), (0.4, 0.0)]).unwrap(),
            HermitianMatrix::from_real_diagonal(&[0.3, 0.7]).unwrap(),
            ProblemKind::MeasuredRelEnt,
        )
        .unwrap();
        let p = smoothness_for(&inst).unwrap();
        let init = HermitianMatrix::scaled_identity(2, p.interval.midpoint());
        let cfg = SolverConfig::new(1e-10).unwrap().with_trace(true);
        let a = solve(&inst, &p, Direction::Ascent, &init, &cfg).unwrap();
        let b = solve(&inst, &p, Direction::Ascent, &init, &cfg).unwrap();
        assert_eq!(a, b);
    }
}

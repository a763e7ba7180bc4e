use meo_core::{Quantity, Report64};
use serde::{Deserialize, Serialize};

/// One `compute` result as written to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    /// `"relent"` or `"renyi"`.
    pub quantity: String,
    pub alpha: Option<f64>,
    /// `D^M` or `D^M_α`.
    pub value: f64,
    /// `Q^M_α` for Rényi results.
    pub quasi_value: Option<f64>,
    pub epsilon: f64,
    pub iterations: usize,
    pub converged: bool,
    pub kappa: f64,
    pub interval_lo: f64,
    pub interval_hi: f64,
    pub beta: f64,
    pub gamma: f64,
    pub grad_norm: f64,
    pub threshold: f64,
    pub safeguard_events: usize,
    pub wall_time_seconds: f64,
    /// Seed and generator for generated instances; absent for file inputs.
    pub seed: Option<u64>,
    pub prng: Option<String>,
}

impl ResultRecord {
    pub fn from_report(report: &Report64, epsilon: f64, wall_time_seconds: f64) -> Self {
        let p = &report.profile;
        Self {
            quantity: match report.quantity {
                Quantity::DM => "relent".into(),
                Quantity::QAlpha | Quantity::DAlpha => "renyi".into(),
            },
            alpha: report.alpha,
            value: report.value,
            quasi_value: report.quasi_value,
            epsilon,
            iterations: report.solver.iterations,
            converged: report.solver.converged,
            kappa: p.kappa,
            interval_lo: p.interval.lo(),
            interval_hi: p.interval.hi(),
            beta: p.beta,
            gamma: p.gamma,
            grad_norm: report.solver.grad_norm,
            threshold: report.solver.threshold,
            safeguard_events: report.solver.safeguard_events,
            wall_time_seconds,
            seed: None,
            prng: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::output::to_json;
    use meo_core::{measured_renyi, Hermitian64, SolverConfig};

    #[test]
    fn json_round_trip_is_exact() {
        let rho = Hermitian64::from_real_diagonal(&[0.7, 0.3]).unwrap();
        let sigma = Hermitian64::from_real_diagonal(&[0.4, 0.6]).unwrap();
        let r = measured_renyi(&rho, &sigma, 2.0, &SolverConfig::new(1e-9).unwrap()).unwrap();
        let mut rec = ResultRecord::from_report(&r, 1e-9, 0.1234);
        rec.seed = Some(u64::MAX);
        let back: ResultRecord = serde_json::from_str(&to_json(&rec).unwrap()).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.value.to_bits(), rec.value.to_bits());
    }
}

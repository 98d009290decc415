use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomotopyConfig {
    pub dt_init: f64,
    pub dt_min: f64,
    /// Relative step size at which endpoint polishing stops.
    pub corrector_tol: f64,
    /// Relative Newton step size the corrector must reach for a step to be
    /// accepted while tracking.
    pub track_tol: f64,
    pub max_steps: usize,
    /// Paths whose iterate exceeds this norm are reported as diverged.
    pub divergence: f64,
    /// Largest Bézout count the automatic method will track.
    pub max_paths: usize,
}

impl Default for HomotopyConfig {
    fn default() -> Self {
        HomotopyConfig {
            dt_init: 0.05,
            dt_min: 1e-8,
            corrector_tol: 1e-12,
            track_tol: 1e-8,
            max_steps: 10_000,
            divergence: 1e8,
            max_paths: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveConfig {
    pub tol_residual: f64,
    pub tol_dedup: f64,
    pub max_newton_iters: usize,
    pub max_halvings: usize,
    pub n_starts: usize,
    pub seed: u64,
    pub real_filter_tol: f64,
    /// Largest algebra-level residual for a reported zero.
    pub verify_tol: f64,
    /// Run the exact nonexistence check when no zero is found.
    pub certify_when_empty: bool,
    pub homotopy: HomotopyConfig,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            tol_residual: 1e-10,
            tol_dedup: 1e-6,
            max_newton_iters: 50,
            max_halvings: 20,
            n_starts: 200,
            seed: 0,
            real_filter_tol: 1e-8,
            verify_tol: 1e-8,
            certify_when_empty: true,
            homotopy: HomotopyConfig::default(),
        }
    }
}

impl SolveConfig {
    pub fn with_seed(seed: u64) -> SolveConfig {
        SolveConfig { seed, ..SolveConfig::default() }
    }

    /// Checks that tolerances are positive and `dt_min < dt_init`.
    pub fn validate(&self) -> Result<(), String> {
        let h = &self.homotopy;
        let positive = [
            ("tol_residual", self.tol_residual),
            ("tol_dedup", self.tol_dedup),
            ("real_filter_tol", self.real_filter_tol),
            ("verify_tol", self.verify_tol),
            ("dt_init", h.dt_init),
            ("dt_min", h.dt_min),
            ("corrector_tol", h.corrector_tol),
            ("track_tol", h.track_tol),
        ];
        for (name, v) in positive {
            if v.is_nan() || v <= 0.0 {
                return Err(format!("{name} must be positive"));
            }
        }
        if h.dt_min >= h.dt_init {
            return Err("dt_min must be smaller than dt_init".into());
        }
        Ok(())
    }

    /// Random generator for task `index`, independent of scheduling.
    pub fn rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    /// Unit complex number for the gamma trick.
    pub fn gamma(&self) -> Complex64 {
        let mut rng = self.rng(u64::MAX);
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(1.0, theta)
    }
}

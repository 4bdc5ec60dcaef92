//! Derivative-free optimization of modulator settings: golden-section search
//! for the drive index and cyclic coordinate descent for DC-bias trimming.

use crate::error::{Error, Result};
use crate::sideband::{default_n_max, ossb_compose, ModulatorConfig};

const INV_PHI: f64 = 0.618_033_988_749_894_9; // 1/phi
const RESP: f64 = 1.0 - INV_PHI; // 2 - phi

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub argmax: f64,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub tolerance: f64,
    /// Set when the maximum sits on a bracket edge (no interior optimum).
    pub at_boundary: bool,
}

/// Golden-section maximization of `f` on [lo, hi] to bracket width <= tol.
/// Deterministic: fixed probe placements, no randomization.
pub fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64, usize) {
    let mut x1 = lo + RESP * (hi - lo);
    let mut x2 = hi - RESP * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iters = 0usize;
    while hi - lo > tol && iters < 200 {
        if f1 > f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = lo + RESP * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = hi - RESP * (hi - lo);
            f2 = f(x2);
        }
        iters += 1;
    }
    if f1 > f2 {
        (x1, f1, iters)
    } else {
        (x2, f2, iters)
    }
}

/// Finds the modulation index maximizing the OSSB conversion efficiency into
/// `order`, with the paper bias preset. A maximum that lands on the bracket
/// edge is reported with `converged = false`.
pub fn maximize_conversion(order: i32, lo: f64, hi: f64, tol: f64) -> Result<OptimizationResult> {
    if !(0.0 <= lo && lo < hi && hi <= 10.0) {
        return Err(Error::invalid(
            "bracket",
            format!("need 0 <= lo < hi <= 10, got [{lo}, {hi}]"),
        ));
    }
    if !(tol >= 1e-6) {
        return Err(Error::invalid("tol", format!("must be >= 1e-6, got {tol}")));
    }
    let n_max = default_n_max(hi);
    let objective = |m: f64| -> f64 {
        let cfg = ModulatorConfig::preset(m, 25.0).expect("bracket keeps m valid");
        ossb_compose(&cfg, n_max)
            .and_then(|s| s.conversion_efficiency(order))
            .unwrap_or(f64::NEG_INFINITY)
    };
    let (x, value, iterations) = golden_section_max(objective, lo, hi, tol);
    let at_boundary = x - lo <= 2.0 * tol && objective(lo + 2.0 * tol) > objective(lo)
        || hi - x <= 2.0 * tol && objective(hi) >= objective(hi - 2.0 * tol);
    Ok(OptimizationResult {
        argmax: x,
        value,
        iterations,
        converged: !at_boundary,
        tolerance: tol,
        at_boundary,
    })
}

/// Objective for DC-bias trimming.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TrimObjective {
    /// Suppression ratio (dB) of the target order against all others.
    SuppressionDb { order: i32 },
    /// Conversion efficiency into the target order.
    Efficiency { order: i32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrimResult {
    pub config: ModulatorConfig,
    pub objective_value: f64,
    pub sweeps: usize,
    pub converged: bool,
}

fn trim_objective(cfg: &ModulatorConfig, obj: TrimObjective) -> f64 {
    let spectrum = match ossb_compose(cfg, default_n_max(cfg.modulation_index)) {
        Ok(s) => s,
        Err(_) => return f64::NEG_INFINITY,
    };
    match obj {
        TrimObjective::SuppressionDb { order } => {
            spectrum.suppression_ratio_db(order).unwrap_or(f64::NEG_INFINITY)
        }
        TrimObjective::Efficiency { order } => {
            spectrum.conversion_efficiency(order).unwrap_or(f64::NEG_INFINITY)
        }
    }
}

/// Cyclic coordinate descent over the 8 bias angles, golden-section per
/// coordinate in a +-0.35 rad window, until the sweep improvement drops
/// below `tol` or `max_iter` sweeps. Never decreases the objective: a
/// coordinate move is kept only when it strictly improves.
pub fn trim_biases(
    perturbed: &ModulatorConfig,
    objective: TrimObjective,
    tol: f64,
    max_iter: usize,
) -> TrimResult {
    let mut cfg = perturbed.clone();
    let mut best = trim_objective(&cfg, objective);
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < max_iter {
        let sweep_start = best;
        for coord in 0..8 {
            let (pm, is_theta) = (coord / 2, coord % 2 == 1);
            let current = if is_theta {
                cfg.biases[pm].theta
            } else {
                cfg.biases[pm].alpha
            };
            let eval = |x: f64| -> f64 {
                let mut trial = cfg.clone();
                if is_theta {
                    trial.biases[pm].theta = x;
                } else {
                    trial.biases[pm].alpha = x;
                }
                trim_objective(&trial, objective)
            };
            let (x, fx, _) = golden_section_max(eval, current - 0.35, current + 0.35, 1e-7);
            if fx > best + 1e-12 {
                if is_theta {
                    cfg.biases[pm].theta = x;
                } else {
                    cfg.biases[pm].alpha = x;
                }
                best = fx;
            }
        }
        sweeps += 1;
        let gain = if best.is_finite() && sweep_start.is_finite() {
            best - sweep_start
        } else if best > sweep_start {
            f64::INFINITY
        } else {
            0.0
        };
        if gain < tol {
            converged = true;
            break;
        }
    }
    // angles back to canonical range
    cfg.biases = cfg.biases.map(|b| crate::sideband::BiasPair::new(b.alpha, b.theta));
    TrimResult {
        config: cfg,
        objective_value: best,
        sweeps,
        converged,
    }
}

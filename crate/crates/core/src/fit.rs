//! Deterministic least-squares fit of a Gaussian dip
//! 1 - V exp(-(d - d0)^2 / (2 w^2)) to normalized coincidence samples.
//!
//! Levenberg-Marquardt with a fixed initialization rule and a fixed
//! iteration cap, so identical inputs give bit-identical results.

use serde::{Deserialize, Serialize};

const MAX_ITER: usize = 200;
const STEP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DipFit {
    pub visibility: f64,
    pub center_ps: f64,
    pub width_ps: f64,
    pub rms_residual: f64,
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

fn failure(message: &str, samples: &[(f64, f64)]) -> DipFit {
    let rms = if samples.is_empty() {
        f64::NAN
    } else {
        let m = samples.iter().map(|&(_, y)| y).sum::<f64>() / samples.len() as f64;
        (samples.iter().map(|&(_, y)| (y - m) * (y - m)).sum::<f64>() / samples.len() as f64)
            .sqrt()
    };
    DipFit {
        visibility: 0.0,
        center_ps: 0.0,
        width_ps: 0.0,
        rms_residual: rms,
        converged: false,
        message: Some(message.to_string()),
    }
}

/// Fits the dip model to `samples` (delay ps, normalized coincidence).
/// Degenerate inputs (too few points, zero variance, no dip) yield a
/// fit-failure result with a diagnostic instead of an error.
pub fn fit_visibility(samples: &[(f64, f64)]) -> DipFit {
    if samples.len() < 5 {
        return failure("need at least 5 samples", samples);
    }
    let n = samples.len() as f64;
    let mean = samples.iter().map(|&(_, y)| y).sum::<f64>() / n;
    let var = samples.iter().map(|&(_, y)| (y - mean) * (y - mean)).sum::<f64>() / n;
    let span = samples.last().unwrap().0 - samples.first().unwrap().0;

    let (d_min, y_min) = samples
        .iter()
        .cloned()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();

    let v0 = (1.0 - y_min).max(0.0);
    if var < 1e-12 || v0 < 1e-4 {
        return failure("degenerate data: no dip above noise floor", samples);
    }

    // width seed from the half-depth crossing span
    let half_level = 1.0 - 0.5 * v0;
    let below: Vec<f64> = samples
        .iter()
        .filter(|&&(_, y)| y < half_level)
        .map(|&(d, _)| d)
        .collect();
    let w0 = if below.len() >= 2 {
        let lo = below.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = below.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        ((hi - lo) / 2.355).max(span / 1e3)
    } else {
        span / 8.0
    };

    let mut p = [v0, d_min, w0];
    let mut lambda = 1e-3;
    let mut chi2 = sum_sq(samples, &p);
    let mut converged = false;

    for _ in 0..MAX_ITER {
        // normal equations J^T J + lambda diag, J^T r
        let mut ata = [[0.0f64; 3]; 3];
        let mut atr = [0.0f64; 3];
        for &(d, y) in samples {
            let (f, grad) = model_grad(d, &p);
            let r = f - y;
            for i in 0..3 {
                atr[i] += grad[i] * r;
                for j in 0..3 {
                    ata[i][j] += grad[i] * grad[j];
                }
            }
        }
        let mut damped = ata;
        for i in 0..3 {
            damped[i][i] += lambda * ata[i][i].max(1e-12);
        }
        let rhs = [-atr[0], -atr[1], -atr[2]];
        let step = match solve3(&damped, &rhs) {
            Some(s) => s,
            None => return failure("singular normal equations", samples),
        };
        let trial = [p[0] + step[0], p[1] + step[1], (p[2] + step[2]).abs().max(1e-12)];
        let trial_chi2 = sum_sq(samples, &trial);
        if trial_chi2 <= chi2 {
            p = trial;
            chi2 = trial_chi2;
            lambda = (lambda * 0.5).max(1e-12);
            if step.iter().map(|s| s.abs()).fold(0.0, f64::max) < STEP_TOL {
                converged = true;
                break;
            }
        } else {
            lambda *= 10.0;
            if lambda > 1e12 {
                converged = true; // stuck at a minimum the damping cannot leave
                break;
            }
        }
    }

    DipFit {
        visibility: p[0],
        center_ps: p[1],
        width_ps: p[2],
        rms_residual: (chi2 / n).sqrt(),
        converged,
        message: None,
    }
}

fn model_grad(d: f64, p: &[f64; 3]) -> (f64, [f64; 3]) {
    let [v, d0, w] = *p;
    let z = (d - d0) / w;
    let g = (-0.5 * z * z).exp();
    let f = 1.0 - v * g;
    let dv = -g;
    let dd0 = -v * g * (d - d0) / (w * w);
    let dw = -v * g * (d - d0) * (d - d0) / (w * w * w);
    (f, [dv, dd0, dw])
}

fn sum_sq(samples: &[(f64, f64)], p: &[f64; 3]) -> f64 {
    samples
        .iter()
        .map(|&(d, y)| {
            let (f, _) = model_grad(d, p);
            (f - y) * (f - y)
        })
        .sum()
}

/// Gaussian elimination with partial pivoting on a 3x3 system.
fn solve3(a: &[[f64; 3]; 3], b: &[f64; 3]) -> Option<[f64; 3]> {
    let mut m = [[0.0f64; 4]; 3];
    for i in 0..3 {
        m[i][..3].copy_from_slice(&a[i]);
        m[i][3] = b[i];
    }
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    let mut x = [0.0f64; 3];
    for i in (0..3).rev() {
        let mut acc = m[i][3];
        for k in i + 1..3 {
            acc -= m[i][k] * x[k];
        }
        x[i] = acc / m[i][i];
    }
    Some(x)
}

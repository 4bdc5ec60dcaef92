//! Closed-form Hong-Ou-Mandel coincidence rate, visibility, and the noise
//! and misalignment models that make up the visibility budget.
//!
//! Unit convention: bandwidths sigma in GHz, delays d in ps. The product
//! sigma * d is scaled by 2*pi*1e-3 internally so the exponent of the
//! coincidence rate is dimensionless; the quadrature oracle covers the
//! equivalence of this convention with the spectral-overlap picture.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fit::{fit_visibility, DipFit};
use crate::photon::DELAY_PHASE_RAD_PER_GHZ_PS;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomParams {
    /// Signal photon bandwidth, GHz.
    pub sigma_s: f64,
    /// Idler photon bandwidth, GHz.
    pub sigma_i: f64,
    /// Center-frequency difference, GHz.
    pub delta: f64,
    /// Coincidence-to-accidental ratio; absent means noiseless.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub car: Option<f64>,
}

impl HomParams {
    pub fn new(sigma_s: f64, sigma_i: f64, delta: f64, car: Option<f64>) -> Result<Self> {
        if !(sigma_s > 0.0) {
            return Err(Error::invalid("sigma_s", format!("must be > 0, got {sigma_s}")));
        }
        if !(sigma_i > 0.0) {
            return Err(Error::invalid("sigma_i", format!("must be > 0, got {sigma_i}")));
        }
        if !(delta >= 0.0) {
            return Err(Error::invalid("delta", format!("must be >= 0, got {delta}")));
        }
        if let Some(c) = car {
            if !(c > 0.0) {
                return Err(Error::invalid("car", format!("must be > 0, got {c}")));
            }
        }
        Ok(HomParams {
            sigma_s,
            sigma_i,
            delta,
            car,
        })
    }
}

/// Coincidence rate behind a balanced beamsplitter at optical delay d (ps):
/// 1/2 - (ss si/(ss^2+si^2)) exp(-(ss^2 si^2 d'^2 + 4 delta^2)/(2(ss^2+si^2)))
/// with d' the delay in angular-phase units. Noise (car) is ignored here.
pub fn coincidence_rate(d_ps: f64, p: &HomParams) -> f64 {
    let (ss, si) = (p.sigma_s, p.sigma_i);
    let sum_sq = ss * ss + si * si;
    let d = d_ps * DELAY_PHASE_RAD_PER_GHZ_PS;
    let expo = -(ss * ss * si * si * d * d + 4.0 * p.delta * p.delta) / (2.0 * sum_sq);
    0.5 - ss * si / sum_sq * expo.exp()
}

/// HOM dip visibility (R_c(inf) - R_c(0)) / R_c(inf):
/// 2 (ss si/(ss^2+si^2)) exp(-4 delta^2/(2(ss^2+si^2))).
pub fn visibility(p: &HomParams) -> f64 {
    let (ss, si) = (p.sigma_s, p.sigma_i);
    let sum_sq = ss * ss + si * si;
    2.0 * ss * si / sum_sq * (-2.0 * p.delta * p.delta / sum_sq).exp()
}

/// Equal-width bandwidth sigma that yields visibility `target_v` at
/// detuning `delta`: sigma = delta / sqrt(-ln target_v).
pub fn calibrate_sigma(target_v: f64, delta: f64) -> Result<f64> {
    if !(target_v > 0.0 && target_v < 1.0) {
        return Err(Error::invalid(
            "target_v",
            format!("must be in (0, 1), got {target_v}"),
        ));
    }
    if !(delta > 0.0) {
        return Err(Error::invalid("delta", format!("must be > 0, got {delta}")));
    }
    Ok(delta / (-target_v.ln()).sqrt())
}

/// Visibility with an accidental-coincidence floor on both the dip and the
/// baseline: v * car / (car + 2), two accidental channels.
pub fn noisy_visibility(v_ideal: f64, car: f64) -> f64 {
    v_ideal * car / (car + 2.0)
}

/// Fractional visibility loss from a center-frequency misalignment of
/// `delta_err` GHz between otherwise matched photons.
pub fn misalignment_penalty(delta_err: f64, sigma_s: f64, sigma_i: f64) -> f64 {
    let sum_sq = sigma_s * sigma_s + sigma_i * sigma_i;
    1.0 - (-2.0 * delta_err * delta_err / sum_sq).exp()
}

/// One named multiplicative penalty in the visibility budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetFactor {
    pub label: String,
    /// Fractional visibility loss in [0, 1].
    pub penalty: f64,
}

impl BudgetFactor {
    pub fn new(label: impl Into<String>, penalty: f64) -> Self {
        BudgetFactor {
            label: label.into(),
            penalty,
        }
    }
}

/// Combined visibility: product of (1 - penalty) over independent factors,
/// starting from an ideal visibility of 1.
pub fn visibility_budget(factors: &[BudgetFactor]) -> f64 {
    factors.iter().map(|f| 1.0 - f.penalty).product()
}

/// A sampled, normalized HOM dip with an optional fit.
#[derive(Debug, Clone, PartialEq)]
pub struct DipCurve {
    /// (delay ps, normalized coincidence) pairs, sorted by delay.
    pub samples: Vec<(f64, f64)>,
    pub fit: Option<DipFit>,
}

/// Samples the normalized coincidence R_c(d)/R_c(inf) over `delays`. With
/// `apply_noise` (and car present), the dip amplitude is scaled so the
/// fitted visibility matches noisy_visibility of the ideal one; the
/// baseline stays at 1.
pub fn dip_curve(p: &HomParams, delays: &[f64], apply_noise: bool) -> Result<DipCurve> {
    if delays.len() < 5 {
        return Err(Error::invalid(
            "delays",
            format!("need at least 5 delays, got {}", delays.len()),
        ));
    }
    let baseline = 0.5;
    let scale = if apply_noise {
        match p.car {
            Some(car) => car / (car + 2.0),
            None => 1.0,
        }
    } else {
        1.0
    };
    let mut samples: Vec<(f64, f64)> = delays
        .iter()
        .map(|&d| {
            let rc = coincidence_rate(d, p);
            // dip depth scaled around the unit baseline
            (d, 1.0 - scale * (baseline - rc) / baseline)
        })
        .collect();
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(DipCurve { samples, fit: None })
}

impl DipCurve {
    /// Runs the deterministic Gaussian-dip fit and stores the result.
    pub fn fit(&mut self) -> &DipFit {
        self.fit = Some(fit_visibility(&self.samples));
        self.fit.as_ref().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_star() -> f64 {
        calibrate_sigma(0.677, 5.0).unwrap()
    }

    #[test]
    fn rate_tails_at_half() {
        let p = HomParams::new(8.0, 8.0, 0.0, None).unwrap();
        // |d| sigma_s sigma_i / sqrt(sum) > 10 in angular units
        let d = 10.0 / (8.0 / std::f64::consts::SQRT_2) / DELAY_PHASE_RAD_PER_GHZ_PS;
        assert!((coincidence_rate(d, &p) - 0.5).abs() < 1e-9);
        assert!((coincidence_rate(-d, &p) - 0.5).abs() < 1e-9);
    }

    #[test]
    fn perfect_dip_at_zero() {
        let p = HomParams::new(8.0, 8.0, 0.0, None).unwrap();
        assert!(coincidence_rate(0.0, &p).abs() < 1e-15);
    }

    #[test]
    fn dip_vanishes_at_25_ghz() {
        let p = HomParams::new(sigma_star(), sigma_star(), 25.0, None).unwrap();
        let v = visibility(&p);
        assert!(v < 1e-4, "got {v}");
        assert!((coincidence_rate(0.0, &p) - 0.5 * (1.0 - v)).abs() < 1e-12);
    }

    #[test]
    fn fig2_visibilities() {
        let s = sigma_star();
        for (delta, want) in [(5.0, 0.677), (7.0, 0.465), (9.0, 0.282)] {
            let p = HomParams::new(s, s, delta, None).unwrap();
            let v = visibility(&p);
            assert!((v - want).abs() < 0.005, "delta={delta}: {v} vs {want}");
        }
        let p0 = HomParams::new(s, s, 0.0, None).unwrap();
        assert_eq!(visibility(&p0), 1.0);
    }

    #[test]
    fn unequal_widths_prefactor() {
        let p = HomParams::new(10.0, 5.0, 0.0, None).unwrap();
        assert!((visibility(&p) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn calibration_inverts_visibility() {
        let s = sigma_star();
        assert!((s - 8.01).abs() < 0.02, "sigma* = {s}");
        assert!((calibrate_sigma((-1.0f64).exp(), 5.0).unwrap() - 5.0).abs() < 1e-12);
        assert!(calibrate_sigma(1.0, 5.0).is_err());
        assert!(calibrate_sigma(0.0, 5.0).is_err());
    }

    #[test]
    fn detuning_scaling_identity() {
        // -ln V proportional to delta^2, independent of sigma
        for &s in &[3.0, 8.0, 15.0] {
            let v = |delta: f64| visibility(&HomParams::new(s, s, delta, None).unwrap());
            let r7 = -v(7.0).ln() / -v(5.0).ln();
            let r9 = -v(9.0).ln() / -v(5.0).ln();
            assert!((r7 - 49.0 / 25.0).abs() < 1e-9);
            assert!((r9 - 81.0 / 25.0).abs() < 1e-9);
        }
    }

    #[test]
    fn eq3_eq4_consistency() {
        let p = HomParams::new(7.3, 11.2, 4.4, None).unwrap();
        let r_inf = coincidence_rate(1e6, &p);
        let r0 = coincidence_rate(0.0, &p);
        assert!(((r_inf - r0) / r_inf - visibility(&p)).abs() < 1e-12);
    }

    #[test]
    fn car_noise_floor() {
        let v = noisy_visibility(1.0, 70.0);
        assert!((v - 0.972).abs() < 0.003, "got {v}");
        assert!((noisy_visibility(0.75, 1e9) - 0.75).abs() < 1e-8);
        assert_eq!(noisy_visibility(0.0, 70.0), 0.0);
    }

    #[test]
    fn misalignment_figures() {
        assert_eq!(misalignment_penalty(0.0, 8.0, 8.0), 0.0);
        let s = sigma_star();
        let p = misalignment_penalty(2.0, s, s);
        assert!((p - 0.060).abs() < 0.005, "got {p}");
        let p10 = misalignment_penalty(2.0, 10.0, 10.0);
        assert!((p10 - 0.039).abs() < 0.002, "got {p10}");
    }

    #[test]
    fn budget_combination() {
        let v = visibility_budget(&[
            BudgetFactor::new("accidental noise", 0.028),
            BudgetFactor::new("filter misalignment", 0.04),
            BudgetFactor::new("modulator loss", 0.004),
        ]);
        assert!((v - 0.930).abs() < 0.01, "got {v}");
        assert_eq!(visibility_budget(&[]), 1.0);
        let v_loss = visibility_budget(&[BudgetFactor::new("modulator loss", 0.004)]);
        assert!((v_loss - 0.996).abs() < 1e-12);
    }

    #[test]
    fn dip_curve_shape() {
        let s = 8.0;
        let p = HomParams::new(s, s, 0.0, None).unwrap();
        let delays: Vec<f64> = (-300..=300).map(|i| i as f64).collect();
        let curve = dip_curve(&p, &delays, false).unwrap();
        let min = curve
            .samples
            .iter()
            .cloned()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        assert_eq!(min.0, 0.0);
        assert!(min.1.abs() < 1e-12);
        assert!((curve.samples.first().unwrap().1 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn dip_curve_flat_at_25_ghz() {
        let s = sigma_star();
        let p = HomParams::new(s, s, 25.0, None).unwrap();
        let delays: Vec<f64> = (-50..=50).map(|i| i as f64 * 4.0).collect();
        let curve = dip_curve(&p, &delays, false).unwrap();
        assert!(curve.samples.iter().all(|&(_, c)| (c - 1.0).abs() < 1e-3));
    }

    #[test]
    fn noisy_dip_matches_composed_closed_forms() {
        let s = sigma_star();
        let p = HomParams::new(s, s, 5.0, Some(70.0)).unwrap();
        let delays: Vec<f64> = (-200..=200).map(|i| i as f64).collect();
        let mut curve = dip_curve(&p, &delays, true).unwrap();
        let fit = curve.fit().clone();
        let want = 0.677 * 0.972;
        assert!((fit.visibility - want).abs() < 0.01, "{} vs {want}", fit.visibility);
    }

    #[test]
    fn too_few_delays_rejected() {
        let p = HomParams::new(8.0, 8.0, 0.0, None).unwrap();
        assert!(dip_curve(&p, &[0.0, 1.0, 2.0, 3.0], false).is_err());
    }
}

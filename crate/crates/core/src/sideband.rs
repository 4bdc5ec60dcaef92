//! Phase-modulator and OSSB sideband spectra.
//!
//! A single phase modulator driven at f_m turns a monochromatic carrier into
//! a Bessel-weighted comb: the amplitude at sideband order n is
//! (1/2) e^{i theta} J_n(m) e^{i n alpha} after the Y-branch split. The OSSB
//! modulator coherently sums four such combs; with the standard bias preset
//! all orders cancel except n = 3 (mod 4), i.e. ..., -5, -1, +3, +7, ...

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::bessel::bessel_j;
use crate::error::{Error, Result};

/// One (alpha, theta) bias setting of a phase modulator: alpha is the RF
/// phase bias, theta the optical carrier phase bias, both in radians and
/// normalized to [0, 2pi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiasPair {
    pub alpha: f64,
    pub theta: f64,
}

impl BiasPair {
    pub fn new(alpha: f64, theta: f64) -> Self {
        BiasPair {
            alpha: alpha.rem_euclid(TAU),
            theta: theta.rem_euclid(TAU),
        }
    }
}

/// Drive and bias settings of the four-PM OSSB modulator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulatorConfig {
    /// Modulation index (peak phase deviation, radians).
    pub modulation_index: f64,
    /// RF drive frequency in GHz.
    pub rf_freq_ghz: f64,
    /// Bias settings of the four phase modulators.
    pub biases: [BiasPair; 4],
    /// Lumped optical insertion loss in dB (>= 0), applied as a uniform
    /// amplitude scaling after composition.
    pub insertion_loss_db: f64,
}

/// Phase modulators are broadband but not unbounded; warn past this.
pub const PM_BANDWIDTH_GHZ: f64 = 100.0;

impl ModulatorConfig {
    pub fn new(
        modulation_index: f64,
        rf_freq_ghz: f64,
        biases: [BiasPair; 4],
        insertion_loss_db: f64,
    ) -> Result<Self> {
        if !(modulation_index >= 0.0) {
            return Err(Error::invalid(
                "modulation_index",
                format!("must be >= 0, got {modulation_index}"),
            ));
        }
        if !(rf_freq_ghz > 0.0) {
            return Err(Error::invalid(
                "rf_freq_ghz",
                format!("must be > 0, got {rf_freq_ghz}"),
            ));
        }
        if !(insertion_loss_db >= 0.0) {
            return Err(Error::invalid(
                "insertion_loss_db",
                format!("must be >= 0, got {insertion_loss_db}"),
            ));
        }
        let biases = biases.map(|b| BiasPair::new(b.alpha, b.theta));
        Ok(ModulatorConfig {
            modulation_index,
            rf_freq_ghz,
            biases,
            insertion_loss_db,
        })
    }

    /// Paper operating configuration: preset biases, lossless by default.
    pub fn preset(modulation_index: f64, rf_freq_ghz: f64) -> Result<Self> {
        ModulatorConfig::new(modulation_index, rf_freq_ghz, paper_bias_preset(), 0.0)
    }

    /// True when the RF drive exceeds the practical PM bandwidth.
    pub fn beyond_pm_bandwidth(&self) -> bool {
        self.rf_freq_ghz > PM_BANDWIDTH_GHZ
    }
}

/// The four (alpha, theta) pairs that null every order except n = 3 (mod 4).
pub fn paper_bias_preset() -> [BiasPair; 4] {
    [
        BiasPair::new(0.0, 0.0),
        BiasPair::new(PI, PI),
        BiasPair::new(FRAC_PI_2, FRAC_PI_2),
        BiasPair::new(3.0 * FRAC_PI_2, 3.0 * FRAC_PI_2),
    ]
}

/// Default truncation order; Bessel tail power beyond it is < 1e-12.
pub fn default_n_max(modulation_index: f64) -> i32 {
    modulation_index.ceil() as i32 + 20
}

/// Complex sideband amplitudes over orders -n_max ..= n_max, relative to a
/// unit input field.
#[derive(Debug, Clone, PartialEq)]
pub struct SidebandSpectrum {
    n_max: i32,
    /// amplitudes indexed by n + n_max
    amps: Vec<Complex64>,
}

impl SidebandSpectrum {
    fn from_amplitudes(n_max: i32, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), (2 * n_max + 1) as usize);
        SidebandSpectrum { n_max, amps }
    }

    pub fn n_max(&self) -> i32 {
        self.n_max
    }

    pub fn amplitude(&self, order: i32) -> Result<Complex64> {
        if order.abs() > self.n_max {
            return Err(Error::OrderOutOfRange {
                order,
                n_max: self.n_max,
            });
        }
        Ok(self.amps[(order + self.n_max) as usize])
    }

    /// (order, amplitude) pairs in ascending order.
    pub fn entries(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, &a)| (i as i32 - self.n_max, a))
    }

    /// Total power sum |a_n|^2 over all orders.
    pub fn total_power(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Power fraction shifted into `order`: |a_order|^2.
    pub fn conversion_efficiency(&self, order: i32) -> Result<f64> {
        Ok(self.amplitude(order)?.norm_sqr())
    }

    /// A copy keeping only the amplitude at `order`, all others zeroed.
    pub fn single_order(&self, order: i32) -> Result<SidebandSpectrum> {
        let kept = self.amplitude(order)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        amps[(order + self.n_max) as usize] = kept;
        Ok(SidebandSpectrum::from_amplitudes(self.n_max, amps))
    }

    /// Power ratio (dB) between the target order and the strongest other
    /// order. Returns +inf when every other order is below 1e-30 in power.
    pub fn suppression_ratio_db(&self, target_order: i32) -> Result<f64> {
        let target = self.conversion_efficiency(target_order)?;
        if target <= 0.0 {
            return Err(Error::ZeroTargetAmplitude {
                order: target_order,
            });
        }
        let worst = self
            .entries()
            .filter(|&(n, _)| n != target_order)
            .map(|(_, a)| a.norm_sqr())
            .fold(0.0_f64, f64::max);
        if worst < 1e-30 {
            return Ok(f64::INFINITY);
        }
        Ok(10.0 * (target / worst).log10())
    }
}

fn check_n_max(n_max: i32) -> Result<()> {
    if n_max < 1 {
        return Err(Error::invalid("n_max", format!("must be >= 1, got {n_max}")));
    }
    Ok(())
}

/// Output comb of a single phase modulator with Y-branch split:
/// a_n = (1/2) e^{i theta} J_n(m) e^{i n alpha}.
pub fn pm_sidebands(m: f64, theta: f64, alpha: f64, n_max: i32) -> Result<SidebandSpectrum> {
    check_n_max(n_max)?;
    let branch = Complex64::from_polar(0.5, theta);
    let mut amps = Vec::with_capacity((2 * n_max + 1) as usize);
    for n in -n_max..=n_max {
        let j = bessel_j(n, m)?;
        amps.push(branch * j * Complex64::from_polar(1.0, n as f64 * alpha));
    }
    Ok(SidebandSpectrum::from_amplitudes(n_max, amps))
}

/// Coherent four-branch OSSB composition:
/// a_n = (1/4) sum_k e^{i theta_k} J_n(m) e^{i n alpha_k},
/// scaled by 10^(-insertion_loss_db/20).
pub fn ossb_compose(config: &ModulatorConfig, n_max: i32) -> Result<SidebandSpectrum> {
    check_n_max(n_max)?;
    let m = config.modulation_index;
    let loss_amp = 10f64.powf(-config.insertion_loss_db / 20.0);
    let mut amps = Vec::with_capacity((2 * n_max + 1) as usize);
    for n in -n_max..=n_max {
        let j = bessel_j(n, m)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for b in &config.biases {
            acc += Complex64::from_polar(1.0, b.theta + n as f64 * b.alpha);
        }
        amps.push(acc * (0.25 * loss_amp * j));
    }
    Ok(SidebandSpectrum::from_amplitudes(n_max, amps))
}

/// Linear electro-optic drive map m = pi * V / V_pi.
pub fn modulation_index(v_rf: f64, v_pi: f64) -> Result<f64> {
    if !(v_pi > 0.0) {
        return Err(Error::invalid("v_pi", format!("must be > 0, got {v_pi}")));
    }
    if !(v_rf >= 0.0) {
        return Err(Error::invalid("v_rf", format!("must be >= 0, got {v_rf}")));
    }
    Ok(PI * v_rf / v_pi)
}

/// RF amplitude that produces modulation index m: V = m * V_pi / pi.
pub fn drive_voltage(m: f64, v_pi: f64) -> Result<f64> {
    if !(v_pi > 0.0) {
        return Err(Error::invalid("v_pi", format!("must be > 0, got {v_pi}")));
    }
    Ok(m * v_pi / PI)
}

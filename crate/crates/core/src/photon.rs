//! Single-photon spectral amplitudes as sums of Gaussian components.
//!
//! Frequencies are offsets in GHz from a reference (half the pump frequency);
//! delays are in ps. A component with weight w, center c and amplitude width
//! s contributes w * (pi s^2)^{-1/4} * exp(-(nu - c)^2 / (2 s^2)), so a
//! single component of weight 1 has unit L2 norm. Loss is encoded as norm
//! below 1, not as a separate field.

use num_complex::Complex64;
use std::f64::consts::{PI, SQRT_2, TAU};

use crate::error::{Error, Result};
use crate::sideband::SidebandSpectrum;

/// Angular phase per (GHz frequency offset x ps delay): 2*pi*1e-3 rad.
/// This is the only place the 2*pi and the ps->ns conversion appear.
pub const DELAY_PHASE_RAD_PER_GHZ_PS: f64 = TAU * 1e-3;

/// Amplitude-profile width corresponding to a closed-form HOM bandwidth
/// sigma (the sigma of `hom::HomParams`). With this mapping the quadrature
/// oracle and the closed-form coincidence rate agree identically.
pub fn sigma_amp_from_bandwidth(sigma: f64) -> f64 {
    sigma / SQRT_2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianComponent {
    /// Center frequency offset, GHz.
    pub center_ghz: f64,
    /// Amplitude-profile standard deviation, GHz.
    pub sigma_amp_ghz: f64,
    /// Dimensionless complex weight.
    pub weight: Complex64,
}

impl GaussianComponent {
    pub fn new(center_ghz: f64, sigma_amp_ghz: f64, weight: Complex64) -> Result<Self> {
        if !(sigma_amp_ghz > 0.0) {
            return Err(Error::invalid(
                "sigma_amp_ghz",
                format!("must be > 0, got {sigma_amp_ghz}"),
            ));
        }
        if !weight.is_finite() {
            return Err(Error::invalid("weight", "must be finite"));
        }
        Ok(GaussianComponent {
            center_ghz,
            sigma_amp_ghz,
            weight,
        })
    }

    /// Spectral amplitude at frequency offset nu (GHz).
    pub fn amplitude(&self, nu_ghz: f64) -> Complex64 {
        let s = self.sigma_amp_ghz;
        let shape = (PI * s * s).powf(-0.25);
        let z = (nu_ghz - self.center_ghz) / s;
        self.weight * shape * (-0.5 * z * z).exp()
    }
}

/// Closed-form integral conj(a)(nu) * b(nu) * e^{i kappa nu} d nu for a
/// single Gaussian pair, kappa in rad/GHz.
fn pair_overlap(a: &GaussianComponent, b: &GaussianComponent, kappa: f64) -> Complex64 {
    let (sa, sb) = (a.sigma_amp_ghz, b.sigma_amp_ghz);
    let (ca, cb) = (a.center_ghz, b.center_ghz);
    let quad = 0.5 / (sa * sa) + 0.5 / (sb * sb);
    let lin = Complex64::new(ca / (sa * sa) + cb / (sb * sb), kappa);
    let cst = -0.5 * ca * ca / (sa * sa) - 0.5 * cb * cb / (sb * sb);
    let shape = (PI * sa * sa).powf(-0.25) * (PI * sb * sb).powf(-0.25);
    let gauss = (lin * lin / (4.0 * quad) + cst).exp() * (PI / quad).sqrt();
    a.weight.conj() * b.weight * shape * gauss
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhotonSpectrum {
    components: Vec<GaussianComponent>,
}

impl PhotonSpectrum {
    pub fn new(components: Vec<GaussianComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("components", "must be non-empty"));
        }
        let s = PhotonSpectrum { components };
        let n = s.norm();
        if !(n > 0.0 && n <= 1.0 + 1e-9) {
            return Err(Error::invalid(
                "components",
                format!("L2 norm must be in (0, 1], got {n}"),
            ));
        }
        Ok(s)
    }

    /// Unit-norm Gaussian out of a filter with the given 3-dB (intensity
    /// FWHM) bandwidth. `sigma_convention` is the calibration constant c
    /// mapping the 3-dB bandwidth to the amplitude-profile sigma.
    pub fn from_filter(center_ghz: f64, fwhm_3db_ghz: f64, sigma_convention: f64) -> Result<Self> {
        if !(fwhm_3db_ghz > 0.0) {
            return Err(Error::invalid(
                "fwhm_3db_ghz",
                format!("must be > 0, got {fwhm_3db_ghz}"),
            ));
        }
        if !(sigma_convention > 0.0) {
            return Err(Error::invalid(
                "sigma_convention",
                format!("must be > 0, got {sigma_convention}"),
            ));
        }
        let comp = GaussianComponent::new(
            center_ghz,
            sigma_convention * fwhm_3db_ghz,
            Complex64::new(1.0, 0.0),
        )?;
        Ok(PhotonSpectrum {
            components: vec![comp],
        })
    }

    pub fn components(&self) -> &[GaussianComponent] {
        &self.components
    }

    /// Spectral amplitude at frequency offset nu (GHz).
    pub fn amplitude(&self, nu_ghz: f64) -> Complex64 {
        self.components.iter().map(|c| c.amplitude(nu_ghz)).sum()
    }

    /// L2 norm; below 1 means loss (heralded survival probability).
    pub fn norm(&self) -> f64 {
        overlap(self, self, 0.0).re.max(0.0).sqrt()
    }

    /// Multiplies this wavepacket by a modulator in the time domain, i.e.
    /// replicates every component at every sideband offset n * f_m with the
    /// sideband amplitude as extra weight.
    pub fn apply_modulator(&self, ossb: &SidebandSpectrum, f_m_ghz: f64) -> PhotonSpectrum {
        let mut out = Vec::new();
        for comp in &self.components {
            for (n, a) in ossb.entries() {
                if a.norm_sqr() < 1e-60 {
                    continue;
                }
                out.push(GaussianComponent {
                    center_ghz: comp.center_ghz + n as f64 * f_m_ghz,
                    sigma_amp_ghz: comp.sigma_amp_ghz,
                    weight: comp.weight * a,
                });
            }
        }
        PhotonSpectrum { components: out }
    }

    /// Keeps only components whose centers lie within `window_ghz` of
    /// `center_ghz`. Used to isolate a single sideband.
    pub fn select_near(&self, center_ghz: f64, window_ghz: f64) -> Result<PhotonSpectrum> {
        let kept: Vec<_> = self
            .components
            .iter()
            .filter(|c| (c.center_ghz - center_ghz).abs() <= window_ghz)
            .copied()
            .collect();
        if kept.is_empty() {
            return Err(Error::invalid(
                "window_ghz",
                "no components within the selection window",
            ));
        }
        Ok(PhotonSpectrum { components: kept })
    }
}

/// Closed-form overlap integral conj(a)(nu) * b(nu) * e^{i omega delay} d nu
/// with delay in ps; |overlap| <= norm(a) * norm(b).
pub fn overlap(a: &PhotonSpectrum, b: &PhotonSpectrum, delay_ps: f64) -> Complex64 {
    let kappa = DELAY_PHASE_RAD_PER_GHZ_PS * delay_ps;
    let mut acc = Complex64::new(0.0, 0.0);
    for pa in &a.components {
        for pb in &b.components {
            acc += pair_overlap(pa, pb, kappa);
        }
    }
    acc
}

//! Bessel functions of the first kind at integer order.
//!
//! Two evaluation routes: an ascending power series for small arguments and
//! a downward (Miller-type) recurrence with sum-rule normalization for larger
//! ones. The supported envelope is |n| <= 64, 0 <= x <= 32, with absolute
//! accuracy 1e-12 over the whole range.

use crate::error::{Error, Result};

pub const MAX_ORDER: i32 = 64;
pub const MAX_ARGUMENT: f64 = 32.0;

/// Argument above which the recurrence route takes over from the series.
const SERIES_LIMIT: f64 = 12.0;

/// J_n(x) for integer n with |n| <= 64 and 0 <= x <= 32.
///
/// J_{-n}(x) = (-1)^n J_n(x) holds exactly by construction.
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    if n.abs() > MAX_ORDER || !(0.0..=MAX_ARGUMENT).contains(&x) || x.is_nan() {
        return Err(Error::BesselEnvelope {
            n,
            x,
            max_n: MAX_ORDER,
            max_x: MAX_ARGUMENT,
        });
    }
    let na = n.unsigned_abs();
    let value = if x < SERIES_LIMIT {
        series(na, x)
    } else {
        miller(na, x)
    };
    if n < 0 && na % 2 == 1 {
        Ok(-value)
    } else {
        Ok(value)
    }
}

/// Ascending power series: J_n(x) = sum_k (-1)^k (x/2)^{n+2k} / (k! (n+k)!).
fn series(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // (x/2)^n / n!, built factor by factor to stay in range.
    let mut term = 1.0_f64;
    for i in 1..=n {
        term *= half / i as f64;
    }
    let q = half * half;
    let mut sum = term;
    for k in 1..200u32 {
        term *= -q / (k as f64 * (n + k) as f64);
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-3) {
            break;
        }
    }
    sum
}

/// Downward recurrence from a start order well above both n and x, then
/// normalization with J_0(x) + 2 sum_{k>=1} J_{2k}(x) = 1.
fn miller(n: u32, x: f64) -> f64 {
    let start = {
        let base = (n as usize).max(x as usize) + 52;
        base + (base & 1) // even start order
    };
    let mut f_next = 0.0_f64;
    let mut f = 1e-30_f64;
    let mut target = 0.0_f64;
    let mut norm = 0.0_f64; // accumulates f_0 + 2 sum f_{2k}
    for k in (0..=start).rev() {
        let f_prev = (2.0 * (k + 1) as f64 / x) * f - f_next;
        f_next = f;
        f = f_prev;
        // after this step f holds the unnormalized J_k
        if k == n as usize {
            target = f;
        }
        if k % 2 == 0 {
            norm += if k == 0 { f } else { 2.0 * f };
        }
    }
    target / norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Independent oracle: J_n(x) = (1/pi) int_0^pi cos(n t - x sin t) dt,
    /// composite Simpson rule on a fine grid.
    fn bessel_integral_oracle(n: i32, x: f64) -> f64 {
        let steps = 200_000usize; // even; fine enough for 1e-13 even at n = 64, x = 32
        let h = PI / steps as f64;
        let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
        let mut acc = f(0.0) + f(PI);
        for i in 1..steps {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / (3.0 * PI)
    }

    #[test]
    fn defining_values_at_zero() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(3, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn first_kind_peak() {
        // J_1 at its maximum; series oracle value frozen ahead of the build.
        let v = bessel_j(1, 1.8412).unwrap();
        assert!((v - 0.58187).abs() < 1e-4, "J_1(1.8412) = {v}");
    }

    #[test]
    fn matches_integral_oracle_across_envelope() {
        for &n in &[0, 1, 2, 3, 5, 8, 13, 21, 40, 64] {
            for &x in &[0.1, 0.54, 1.0, 1.8412, 3.0, 7.5, 11.9, 12.1, 20.0, 32.0] {
                let got = bessel_j(n, x).unwrap();
                let want = bessel_integral_oracle(n, x);
                assert!(
                    (got - want).abs() < 1e-12,
                    "J_{n}({x}): got {got}, oracle {want}"
                );
            }
        }
    }

    #[test]
    fn negative_order_parity() {
        for &n in &[1, 2, 3, 7] {
            for &x in &[0.5, 5.0, 19.0] {
                let pos = bessel_j(n, x).unwrap();
                let neg = bessel_j(-n, x).unwrap();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(neg, sign * pos);
            }
        }
    }

    #[test]
    fn recurrence_identity() {
        // J_{n-1}(x) + J_{n+1}(x) = (2n/x) J_n(x)
        for &n in &[1, 2, 5, 10, 30] {
            for &x in &[0.3, 1.8412, 6.0, 12.5, 25.0, 32.0] {
                let lhs = bessel_j(n - 1, x).unwrap() + bessel_j(n + 1, x).unwrap();
                let rhs = 2.0 * n as f64 / x * bessel_j(n, x).unwrap();
                assert!((lhs - rhs).abs() < 1e-10, "n={n} x={x}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn envelope_rejected() {
        assert!(bessel_j(65, 1.0).is_err());
        assert!(bessel_j(-65, 1.0).is_err());
        assert!(bessel_j(0, -0.1).is_err());
        assert!(bessel_j(0, 32.1).is_err());
    }
}

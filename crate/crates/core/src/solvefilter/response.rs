use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResponseClass {
    Monotone,
    OneExtremum,
    MultiExtremum,
}

impl ResponseClass {
    pub fn name(&self) -> &'static str {
        match self {
            ResponseClass::Monotone => "monotone",
            ResponseClass::OneExtremum => "one_extremum",
            ResponseClass::MultiExtremum => "multi_extremum",
        }
    }
}

impl fmt::Display for ResponseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ResponseClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone" => Ok(ResponseClass::Monotone),
            "one_extremum" => Ok(ResponseClass::OneExtremum),
            "multi_extremum" => Ok(ResponseClass::MultiExtremum),
            _ => Err(Error::Param(format!("unknown response class {s:?}"))),
        }
    }
}

/// Neumaier-compensated sum.
fn compensated_sum(xs: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// `F(w) = |H(e^{iw})|^2` at `n_samples` equispaced points of `[0, pi]`.
pub fn magnitude_response(coeffs: &[f64], n_samples: usize) -> Result<Vec<(f64, f64)>> {
    if n_samples < 2 {
        return Err(Error::Param(format!("need at least 2 samples, got {n_samples}")));
    }
    let out = (0..n_samples)
        .map(|i| {
            let w = if i + 1 == n_samples { PI } else { PI * i as f64 / (n_samples - 1) as f64 };
            let re = compensated_sum(coeffs.iter().enumerate().map(|(n, h)| h * (n as f64 * w).cos()));
            let im = compensated_sum(coeffs.iter().enumerate().map(|(n, h)| h * (n as f64 * w).sin()));
            (w, re * re + im * im)
        })
        .collect();
    Ok(out)
}

/// Minimum number of samples accepted by [`classify_response`].
pub const MIN_CLASSIFY_SAMPLES: usize = 64;

/// Count sign changes of successive differences, skipping differences at
/// the rounding-noise level of the samples.
pub fn classify_response(samples: &[(f64, f64)]) -> Result<ResponseClass> {
    if samples.len() < MIN_CLASSIFY_SAMPLES {
        return Err(Error::Param(format!(
            "need at least {MIN_CLASSIFY_SAMPLES} samples to classify, got {}",
            samples.len()
        )));
    }
    let scale = samples.iter().map(|s| s.1.abs()).fold(0.0f64, f64::max).max(f64::MIN_POSITIVE);
    let noise = 64.0 * f64::EPSILON * scale;
    let mut last = 0i8;
    let mut changes = 0usize;
    for w in samples.windows(2) {
        let d = w[1].1 - w[0].1;
        if d.abs() <= noise {
            continue;
        }
        let s = if d > 0.0 { 1 } else { -1 };
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    Ok(match changes {
        0 => ResponseClass::Monotone,
        1 => ResponseClass::OneExtremum,
        _ => ResponseClass::MultiExtremum,
    })
}

//! Wilson intervals and mean confidence intervals.

/// z for a two-sided 95% interval.
pub const Z95: f64 = 1.959963984540054;

/// Wilson score interval for `successes` out of `trials` at confidence
/// level `z`. Returns `(NaN, NaN)` when `trials == 0`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (f64::NAN, f64::NAN);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    // The interval endpoints are exactly 0 and 1 at empirical 0 and 1;
    // rounding residue would otherwise leak into the CSV.
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MeanCi {
    pub mean: f64,
    pub lo: f64,
    pub hi: f64,
    pub trials: u64,
}

/// Normal-approximation confidence interval for the mean of `values`.
pub fn mean_ci(values: &[f64], z: f64) -> MeanCi {
    let n = values.len() as f64;
    if values.is_empty() {
        return MeanCi {
            mean: f64::NAN,
            lo: f64::NAN,
            hi: f64::NAN,
            trials: 0,
        };
    }
    let mean = values.iter().sum::<f64>() / n;
    let var = if values.len() < 2 {
        0.0
    } else {
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)
    };
    let half = z * (var / n).sqrt();
    MeanCi {
        mean,
        lo: mean - half,
        hi: mean + half,
        trials: values.len() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_basics() {
        let (lo, hi) = wilson_interval(50, 100, Z95);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!(lo > 0.40 && hi < 0.60);
        let (lo, hi) = wilson_interval(0, 100, Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(100, 100, Z95);
        assert!(lo > 0.95);
        assert_eq!(hi, 1.0);
        let (lo, hi) = wilson_interval(0, 0, Z95);
        assert!(lo.is_nan() && hi.is_nan());
    }

    #[test]
    fn mean_ci_constant_values() {
        let m = mean_ci(&[3.0, 3.0, 3.0], Z95);
        assert_eq!(m.mean, 3.0);
        assert_eq!(m.lo, 3.0);
        assert_eq!(m.hi, 3.0);
    }

    #[test]
    fn mean_ci_spread() {
        let m = mean_ci(&[0.0, 1.0, 0.0, 1.0], Z95);
        assert_eq!(m.mean, 0.5);
        assert!(m.lo < 0.5 && m.hi > 0.5);
    }
}

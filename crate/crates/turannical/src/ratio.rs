//! Exact rational arithmetic for threshold comparisons.
//!
//! Decision thresholds like `(1+eps)*t` must be compared exactly: a float
//! comparison at the boundary would silently flip verdicts. Parameters such
//! as `eps` arrive as `f64` from the CLI, so they are first snapped to the
//! nearest rational with denominator at most [`MAX_DEN`] via continued
//! fractions. An input of `0.3333333333333333` therefore behaves as the
//! intended `1/3`, and every subsequent comparison is integer-exact.

/// Largest denominator considered when snapping a float to a rational.
pub const MAX_DEN: i128 = 1_000_000;

/// A non-negative rational with a small denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    num: i128,
    den: i128,
}

impl Ratio {
    pub fn new(num: i128, den: i128) -> Ratio {
        assert!(den > 0, "denominator must be positive");
        assert!(num >= 0, "negative rationals are not used here");
        let g = gcd(num, den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    /// Snaps `x` to the best rational approximation with denominator at most
    /// [`MAX_DEN`], using the continued-fraction expansion of `x`.
    pub fn from_f64_snapped(x: f64) -> Option<Ratio> {
        if !x.is_finite() || !(0.0..=1e12).contains(&x) {
            return None;
        }
        // Convergents p/q of the continued fraction of x.
        let (mut p0, mut q0, mut p1, mut q1) = (1i128, 0i128, x.floor() as i128, 1i128);
        let mut frac = x - x.floor();
        for _ in 0..64 {
            if (p1 as f64 / q1 as f64 - x).abs() <= f64::EPSILON * x.abs().max(1.0) * 4.0 {
                break;
            }
            if frac.abs() < 1e-18 {
                break;
            }
            let inv = 1.0 / frac;
            let a = inv.floor();
            if !a.is_finite() || a as i128 <= 0 {
                break;
            }
            let a = a as i128;
            let p2 = match a.checked_mul(p1).and_then(|v| v.checked_add(p0)) {
                Some(v) => v,
                None => break,
            };
            let q2 = match a.checked_mul(q1).and_then(|v| v.checked_add(q0)) {
                Some(v) => v,
                None => break,
            };
            if q2 > MAX_DEN {
                break;
            }
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            frac = inv - a as f64;
        }
        if p1 < 0 || q1 <= 0 {
            return None;
        }
        Some(Ratio::new(p1, q1))
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `floor(self * k)` for a non-negative integer `k`, saturating at
    /// `u64::MAX` (thresholds past any universe size behave identically).
    pub fn floor_mul(&self, k: u64) -> u64 {
        let v = self.num * k as i128 / self.den;
        u64::try_from(v).unwrap_or(u64::MAX)
    }

    /// Compares `self` with the integer fraction `a/b` (`b > 0`).
    pub fn cmp_frac(&self, a: i128, b: i128) -> std::cmp::Ordering {
        assert!(b > 0);
        (self.num * b).cmp(&(a * self.den))
    }

    /// `self <= a/b`.
    pub fn le_frac(&self, a: i128, b: i128) -> bool {
        self.cmp_frac(a, b) != std::cmp::Ordering::Greater
    }

    /// `self >= a/b`.
    pub fn ge_frac(&self, a: i128, b: i128) -> bool {
        self.cmp_frac(a, b) != std::cmp::Ordering::Less
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 {
        1
    } else {
        a
    }
}

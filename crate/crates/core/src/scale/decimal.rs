//! Exact decimal tick values.

use std::cmp::Ordering;
use std::fmt;

/// `m * 10^e`, normalized so that `m` has no trailing zeros.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    m: i64,
    e: i32,
}

impl Decimal {
    pub fn new(mut m: i64, mut e: i32) -> Decimal {
        if m == 0 {
            return Decimal { m: 0, e: 0 };
        }
        while m % 10 == 0 {
            m /= 10;
            e += 1;
        }
        Decimal { m, e }
    }

    pub fn mantissa(self) -> i64 {
        self.m
    }

    pub fn exponent(self) -> i32 {
        self.e
    }

    /// Correctly rounded conversion.
    pub fn to_f64(self) -> f64 {
        format!("{}e{}", self.m, self.e).parse().expect("decimal literal")
    }

    pub fn significant_digits(self) -> u32 {
        digit_count(self.m)
    }

    /// Is `self` an integer multiple of `c * 10^j`, for `c` in 1, 2, 5?
    pub fn is_multiple_of(self, c: i64, j: i32) -> bool {
        debug_assert!(matches!(c, 1 | 2 | 5));
        self.m == 0 || self.e > j || self.e == j && self.m % c == 0
    }

    pub fn checked_add(self, other: Decimal) -> Option<Decimal> {
        let e = self.e.min(other.e);
        let a = self.m.checked_mul(pow10_i64(self.e - e)?)?;
        let b = other.m.checked_mul(pow10_i64(other.e - e)?)?;
        Some(Decimal::new(a.checked_add(b)?, e))
    }

    pub fn neg(self) -> Decimal {
        Decimal { m: -self.m, e: self.e }
    }

    /// Round half away from zero to at most `n` significant digits.
    pub fn round_significant(self, n: u32) -> Decimal {
        let digits = self.significant_digits();
        if digits <= n.max(1) {
            return self;
        }
        self.drop_digits(digits - n.max(1))
    }

    /// Round half away from zero to at most `d` digits after the point.
    pub fn round_decimals(self, d: u32) -> Decimal {
        let target = -(d as i32);
        if self.e >= target {
            return self;
        }
        let k = (target - self.e) as u32;
        if k > digit_count(self.m) {
            return Decimal::new(0, 0);
        }
        self.drop_digits(k)
    }

    fn drop_digits(self, k: u32) -> Decimal {
        let p = 10i64.pow(k);
        let (q, r) = (self.m / p, self.m % p);
        let q = if 2 * r.abs() >= p { q + self.m.signum() } else { q };
        Decimal::new(q, self.e + k as i32)
    }

    /// Round a double to `n` significant digits.
    pub fn from_f64_significant(x: f64, n: u32) -> Option<Decimal> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Decimal::new(0, 0));
        }
        let n = n.clamp(1, 17);
        let text = format!("{:.*e}", n as usize - 1, x);
        let (mant, exp) = text.split_once('e')?;
        let exp: i32 = exp.parse().ok()?;
        let m: i64 = mant.replace('.', "").parse().ok()?;
        Some(Decimal::new(m, exp - (n as i32 - 1)))
    }
}

fn digit_count(m: i64) -> u32 {
    m.unsigned_abs().checked_ilog10().map_or(1, |l| l + 1)
}

fn pow10_i64(k: i32) -> Option<i64> {
    u32::try_from(k).ok().and_then(|k| 10i64.checked_pow(k))
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.m.signum(), other.m.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, _) => Ordering::Equal,
            _ => {
                // compare with i128 at a common exponent when that fits
                let e = self.e.min(other.e);
                let (da, db) = ((self.e - e) as u32, (other.e - e) as u32);
                if da <= 30 && db <= 30 {
                    let a = self.m as i128 * 10i128.pow(da);
                    let b = other.m as i128 * 10i128.pow(db);
                    a.cmp(&b)
                } else {
                    self.to_f64().total_cmp(&other.to_f64())
                }
            }
        }
    }
}

/// Positional notation for moderate magnitudes, otherwise `d.ddde±x`.
impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.m < 0 { "-" } else { "" };
        let digits = self.m.unsigned_abs().to_string();
        let n = digits.len() as i32;
        let lead = self.e + n - 1;
        if !(-6..=15).contains(&lead) {
            let (head, tail) = digits.split_at(1);
            return if tail.is_empty() {
                write!(f, "{sign}{head}e{lead}")
            } else {
                write!(f, "{sign}{head}.{tail}e{lead}")
            };
        }
        if self.e >= 0 {
            write!(f, "{sign}{digits}{}", "0".repeat(self.e as usize))
        } else if n > -self.e {
            let (int, frac) = digits.split_at((n + self.e) as usize);
            write!(f, "{sign}{int}.{frac}")
        } else {
            write!(f, "{sign}0.{}{digits}", "0".repeat((-self.e - n) as usize))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_formats() {
        assert_eq!(Decimal::new(1500, -3), Decimal::new(15, -1));
        assert_eq!(Decimal::new(15, -1).to_string(), "1.5");
        assert_eq!(Decimal::new(-25, -3).to_string(), "-0.025");
        assert_eq!(Decimal::new(3, 2).to_string(), "300");
        assert_eq!(Decimal::new(0, 7).to_string(), "0");
        assert_eq!(Decimal::new(25, -9).to_string(), "2.5e-8");
        assert_eq!(Decimal::new(1, 20).to_string(), "1e20");
    }

    #[test]
    fn exact_conversion() {
        assert_eq!(Decimal::new(3, -1).to_f64(), 0.3);
        assert_eq!(Decimal::new(-75, -2).to_f64(), -0.75);
    }

    #[test]
    fn multiples() {
        let v = Decimal::new(15, -1);
        assert!(v.is_multiple_of(5, -1));
        assert!(!v.is_multiple_of(2, -1));
        assert!(!v.is_multiple_of(1, 0));
        assert!(Decimal::new(4, 0).is_multiple_of(2, -1));
    }

    #[test]
    fn rounding() {
        assert_eq!(Decimal::new(12345, -4).round_significant(3), Decimal::new(123, -2));
        assert_eq!(Decimal::new(-125, -2).round_significant(2), Decimal::new(-13, -1));
        assert_eq!(Decimal::new(12345, -4).round_decimals(1), Decimal::new(12, -1));
        assert_eq!(Decimal::new(4, -5).round_decimals(2), Decimal::new(0, 0));
        let d = Decimal::from_f64_significant(2.0 - 100f64.cbrt(), 5).unwrap();
        assert_eq!(d.to_string(), "-2.6416");
    }

    #[test]
    fn ordering_and_addition() {
        let a = Decimal::new(15, -1);
        let b = Decimal::new(2, 0);
        assert!(a < b && a.neg() > b.neg());
        assert_eq!(a.checked_add(b), Some(Decimal::new(35, -1)));
        assert_eq!(a.checked_add(a.neg()), Some(Decimal::new(0, 0)));
    }
}

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Neg, Sub};

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// An exact percentage `100 * numer / denom`, kept as a reduced ratio so that
/// differences and one-decimal rounding carry no floating-point error.
#[derive(Debug, Clone, Copy)]
pub struct Percent {
    numer: i128,
    denom: i128,
}

impl Percent {
    /// `count / total` as a percentage. `total` must be positive.
    pub fn ratio(count: u64, total: u64) -> Self {
        assert!(total > 0, "percentage of an empty population");
        Self::reduced(count as i128, total as i128)
    }

    pub fn zero() -> Self {
        Self { numer: 0, denom: 1 }
    }

    fn reduced(numer: i128, denom: i128) -> Self {
        let g = gcd(numer, denom).max(1);
        let sign = if denom < 0 { -1 } else { 1 };
        Self {
            numer: sign * numer / g,
            denom: sign * denom / g,
        }
    }

    pub fn as_f64(self) -> f64 {
        100.0 * self.numer as f64 / self.denom as f64
    }

    /// The value in tenths of a percentage point, rounded half away from zero.
    pub fn tenths(self) -> i128 {
        let scaled = 1000 * self.numer.abs();
        let rounded = (2 * scaled + self.denom) / (2 * self.denom);
        if self.numer < 0 {
            -rounded
        } else {
            rounded
        }
    }

    /// Signed one-decimal form, e.g. `+7.4` or `-0.2`.
    pub fn signed(self) -> String {
        let tenths = self.tenths();
        let sign = if tenths >= 0 { '+' } else { '-' };
        format!("{sign}{}.{}", tenths.abs() / 10, tenths.abs() % 10)
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tenths = self.tenths();
        let sign = if tenths < 0 { "-" } else { "" };
        write!(f, "{sign}{}.{}", tenths.abs() / 10, tenths.abs() % 10)
    }
}

impl PartialEq for Percent {
    fn eq(&self, other: &Self) -> bool {
        self.numer * other.denom == other.numer * self.denom
    }
}

impl Eq for Percent {}

impl PartialOrd for Percent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Percent {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.numer * other.denom).cmp(&(other.numer * self.denom))
    }
}

impl Sub for Percent {
    type Output = Percent;

    fn sub(self, rhs: Percent) -> Percent {
        Percent::reduced(
            self.numer * rhs.denom - rhs.numer * self.denom,
            self.denom * rhs.denom,
        )
    }
}

impl Neg for Percent {
    type Output = Percent;

    fn neg(self) -> Percent {
        Percent {
            numer: -self.numer,
            denom: self.denom,
        }
    }
}

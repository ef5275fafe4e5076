use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

/// A value of the ultranorm, stored as the exponent `q` in `|x| = p^(-q)`.
///
/// `None` is the norm of zero. Exponents are rational so that ramified
/// extensions (value group `(1/e)Z`) need no floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Norm(Option<Ratio<i64>>);

impl Norm {
    pub const ZERO: Norm = Norm(None);

    pub fn one() -> Norm {
        Norm(Some(Ratio::zero()))
    }

    /// `|x| = p^(-v)`.
    pub fn from_valuation(v: Ratio<i64>) -> Norm {
        Norm(Some(v))
    }

    pub fn from_int_valuation(v: i64) -> Norm {
        Norm(Some(Ratio::from_integer(v)))
    }

    /// `p^(-k)` as a norm bound.
    pub fn p_pow_neg(k: i64) -> Norm {
        Norm::from_int_valuation(k)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_none()
    }

    pub fn valuation(&self) -> Option<Ratio<i64>> {
        self.0
    }

    /// Product of norms (valuations add).
    pub fn mul(self, other: Norm) -> Norm {
        match (self.0, other.0) {
            (Some(a), Some(b)) => Norm(Some(a + b)),
            _ => Norm::ZERO,
        }
    }

    /// Quotient of norms; `None` when dividing by zero.
    pub fn div(self, other: Norm) -> Option<Norm> {
        match (self.0, other.0) {
            (_, None) => None,
            (None, Some(_)) => Some(Norm::ZERO),
            (Some(a), Some(b)) => Some(Norm(Some(a - b))),
        }
    }

    pub fn pow(self, k: i64) -> Norm {
        match self.0 {
            Some(v) => Norm(Some(v * k)),
            None if k == 0 => Norm::one(),
            None => Norm::ZERO,
        }
    }

    /// Real value for a given prime, for human-readable output only.
    pub fn to_f64(&self, prime: u32) -> f64 {
        match self.0 {
            None => 0.0,
            Some(v) => (prime as f64).powf(-(*v.numer() as f64) / (*v.denom() as f64)),
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.map(|v| v.is_zero()).unwrap_or(false)
    }

    pub fn max(self, other: Norm) -> Norm {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl Ord for Norm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0, other.0) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            // larger valuation means smaller norm
            (Some(a), Some(b)) => b.cmp(&a),
        }
    }
}

impl PartialOrd for Norm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => write!(f, "0"),
            Some(v) if v.is_zero() => write!(f, "1"),
            Some(v) if v.denom().is_one() => write!(f, "p^{}", -v.numer()),
            Some(v) => write!(f, "p^({}/{})", -v.numer(), v.denom()),
        }
    }
}

impl Serialize for Norm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_follows_valuation_inversely() {
        let big = Norm::from_int_valuation(-2);
        let one = Norm::one();
        let small = Norm::from_int_valuation(3);
        assert!(Norm::ZERO < small && small < one && one < big);
        assert_eq!(big.max(small), big);
    }

    #[test]
    fn multiplicative_on_exponents() {
        let a = Norm::from_valuation(Ratio::new(1, 2));
        assert_eq!(a.mul(a), Norm::from_int_valuation(1));
        assert_eq!(a.mul(Norm::ZERO), Norm::ZERO);
        assert_eq!(Norm::from_int_valuation(1).to_string(), "p^-1");
    }
}

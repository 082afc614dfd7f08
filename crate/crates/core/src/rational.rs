use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonnegative rational `num/den`, used for epsilon parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::arg("zero denominator"));
        }
        let g = gcd(num, den);
        Ok(Ratio { num: num / g, den: den / g })
    }

    /// Checks `0 < self < 1`.
    pub fn open_unit(self) -> Result<Self> {
        if self.num == 0 || self.num >= self.den {
            return Err(Error::arg(format!("epsilon must lie in (0,1), got {self}")));
        }
        Ok(self)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `p/q` or a finite decimal such as `0.25`.
impl FromStr for Ratio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::arg(format!("bad rational {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            return Ratio::new(p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        Ratio::new(int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("1/4".parse::<Ratio>().unwrap(), Ratio { num: 1, den: 4 });
        assert_eq!("0.25".parse::<Ratio>().unwrap(), Ratio { num: 1, den: 4 });
        assert_eq!("2/8".parse::<Ratio>().unwrap(), Ratio { num: 1, den: 4 });
        assert!("1/0".parse::<Ratio>().is_err());
        assert!("x".parse::<Ratio>().is_err());
    }

    #[test]
    fn open_unit_interval() {
        assert!(Ratio::new(0, 3).unwrap().open_unit().is_err());
        assert!(Ratio::new(3, 3).unwrap().open_unit().is_err());
        assert!(Ratio::new(1, 3).unwrap().open_unit().is_ok());
    }
}

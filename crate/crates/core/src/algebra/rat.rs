//! Arbitrary-precision rationals.
//!
//! `Rat` is `num_rational::BigRational`, which already keeps values reduced
//! with a positive denominator (zero is `0/1`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Always `p/q`, including integers (`3/1`).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(p)?, q))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Bit size of numerator times denominator; the pivot heuristic for exact elimination.
pub fn bit_size(r: &Rat) -> u64 {
    r.numer().bits() + r.denom().bits()
}

pub fn to_f64(r: &Rat) -> f64 {
    if r.denom().is_one() {
        return r.numer().to_f64().unwrap_or(f64::NAN);
    }
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

/// Exact rational from a finite double.
pub fn from_f64(x: f64) -> Result<Rat> {
    Rat::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
}

pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format_rat(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rat(&rat(3)), "3/1");
        assert_eq!(parse_rat("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        assert_eq!(parse_rat("4/-8").unwrap(), ratio(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn zero_is_canonical() {
        let z = ratio(0, -7);
        assert_eq!(z.numer(), &BigInt::from(0));
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 4), 0);
    }
}

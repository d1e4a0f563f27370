//! Exact rationals and their `"numerator/denominator"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Formats as `"n/d"`, with the denominator always present.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"n/d"` or a bare integer `"n"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// True when the value is `m / 2^k` in lowest terms.
pub fn is_dyadic(x: &Q) -> bool {
    is_power_of_two(x.denom())
}

/// True when the value is `2^k` for some integer `k` (possibly negative).
pub fn is_power_of_two_q(x: &Q) -> bool {
    x.is_positive()
        && ((x.numer().is_one() && is_power_of_two(x.denom()))
            || (x.denom().is_one() && is_power_of_two(x.numer())))
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - BigInt::one())).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        for x in [q(1, 2), q(-3, 4), qi(0), qi(7), q(6, 4)] {
            assert_eq!(parse_q(&format_q(&x)).unwrap(), x);
        }
        assert_eq!(format_q(&q(6, 4)), "3/2");
        assert_eq!(parse_q(" 5 ").unwrap(), qi(5));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn dyadic_and_powers() {
        assert!(is_dyadic(&q(3, 8)));
        assert!(!is_dyadic(&q(1, 3)));
        assert!(is_power_of_two_q(&q(1, 4)));
        assert!(is_power_of_two_q(&qi(8)));
        assert!(is_power_of_two_q(&qi(1)));
        assert!(!is_power_of_two_q(&q(3, 4)));
        assert!(!is_power_of_two_q(&qi(-2)));
    }
}

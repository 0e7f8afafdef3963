//! Exact rational numbers and their decimal rendering.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn from_counts(count: &BigUint, total: &BigUint) -> Rational {
    Rational::new(BigInt::from(count.clone()), BigInt::from(total.clone()))
}

/// Renders `value` with exactly `places` digits after the point, rounding
/// half to even.
pub fn to_decimal(value: &Rational, places: usize) -> String {
    let scale = BigInt::from(10u32).pow(places as u32);
    let scaled = value.numer().abs() * &scale;
    let den = value.denom();
    let (mut q, r) = scaled.div_rem(den);
    let twice = &r * 2;
    if twice > *den || (twice == *den && q.is_odd()) {
        q += BigInt::one();
    }
    let digits = q.to_string();
    let (int_part, frac_part) = if places == 0 {
        (digits, String::new())
    } else if digits.len() > places {
        let split = digits.len() - places;
        (digits[..split].to_string(), digits[split..].to_string())
    } else {
        ("0".to_string(), format!("{digits:0>places$}"))
    };
    let negative = value.is_negative() && !q.is_zero();
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// `"num/den"`, or just `"num"` for integers.
pub fn to_fraction(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rounding() {
        assert_eq!(to_decimal(&ratio(2, 7), 4), "0.2857");
        assert_eq!(to_decimal(&ratio(48, 190), 4), "0.2526");
        assert_eq!(to_decimal(&ratio(10, 64), 4), "0.1562");
        assert_eq!(to_decimal(&ratio(3, 2), 0), "2");
        assert_eq!(to_decimal(&ratio(5, 2), 0), "2");
        assert_eq!(to_decimal(&ratio(1, 1), 4), "1.0000");
        assert_eq!(to_decimal(&ratio(-1, 3), 2), "-0.33");
        assert_eq!(to_decimal(&ratio(1, 20000), 4), "0.0000");
        assert_eq!(to_decimal(&ratio(3, 20000), 4), "0.0002");
        assert_eq!(to_decimal(&ratio(81, 50), 1), "1.6");
    }

    #[test]
    fn fraction_form() {
        assert_eq!(to_fraction(&ratio(4, 14)), "2/7");
        assert_eq!(to_fraction(&int(3)), "3");
    }
}

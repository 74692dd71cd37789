//! Exact rational scalars.
//!
//! Every coefficient in the crate is a [`Scalar`], an arbitrary-precision
//! rational kept in canonical form (positive denominator, reduced).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `p/q` or an integer. Rejects a zero denominator.
pub fn parse(token: &str) -> Result<Scalar, String> {
    let token = token.trim();
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator `{num}`"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator `{den}`"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{token}`"));
    }
    Ok(Scalar::new(num, den))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn render(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

/// Positive generator of the subgroup of ℚ generated by `values`
/// (gcd of numerators over lcm of denominators). Zero for an all-zero list.
pub fn rational_gcd<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    use num_integer::Integer;
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for v in values {
        if v.is_zero() {
            continue;
        }
        // gcd(a/b, c/d) = gcd(a·d', c·b') / lcm(b, d) after bringing to a common denominator
        let l = den.lcm(v.denom());
        let lhs = &num * (&l / &den);
        let rhs = v.numer().abs() * (&l / v.denom());
        num = lhs.gcd(&rhs);
        den = l;
    }
    Scalar::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse("-2").unwrap(), int(-2));
        assert_eq!(render(&frac(-6, 4)), "-3/2");
        assert_eq!(render(&int(7)), "7");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn canonical_denominator_positive() {
        let x = parse("3/-6").unwrap();
        assert_eq!(render(&x), "-1/2");
    }

    #[test]
    fn gcd_of_rationals() {
        assert_eq!(rational_gcd(&[frac(2, 3), frac(5, 7)]), frac(1, 21));
        assert_eq!(rational_gcd(&[int(4), int(6)]), int(2));
        assert_eq!(rational_gcd(&[zero(), frac(-3, 4)]), frac(3, 4));
        assert!(rational_gcd(&[]).is_zero());
    }
}

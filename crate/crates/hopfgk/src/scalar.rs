//! Exact rational scalars. The base field is Q; every identity in the
//! library is checked with tolerance-free equality.

use num::{BigInt, BigRational, One};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn half() -> Scalar {
    ratio(1, 2)
}

/// Parses `p` or `p/q` with an optional leading sign. Returns `None` on a
/// malformed literal or a zero denominator.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num_str.parse().ok()?;
    let d: BigInt = den_str.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Scalar::new(n, d))
}

/// Renders `p` when the denominator is one, `p/q` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Signed;
    use proptest::prelude::*;

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_scalar("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_scalar("-4/2").unwrap(), int(-2));
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_none());
        assert!(parse_scalar("x").is_none());
        assert_eq!(format_scalar(&ratio(3, 2)), "3/2");
        assert_eq!(format_scalar(&int(-5)), "-5");
    }

    proptest! {
        // Stored scalars are always reduced with a positive denominator.
        #[test]
        fn reduced_lowest_terms(n in -1000i64..1000, d in 1i64..1000) {
            let x = ratio(n, d);
            prop_assert!(x.denom().is_positive());
            let g = num::Integer::gcd(x.numer(), x.denom());
            prop_assert_eq!(g, BigInt::from(1));
        }

        #[test]
        fn negative_denominator_normalizes(n in -100i64..100, d in 1i64..100) {
            let x = ratio(n, -d);
            prop_assert!(x.denom().is_positive());
            prop_assert_eq!(x, ratio(-n, d));
        }
    }
}

//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar field for every computation in this crate.
pub type Q = BigRational;

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Exact square root of a non-negative rational, if it has one.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Parses `p/q` or `p` exactly. Whitespace is not accepted inside the literal.
pub fn parse(s: &str) -> Option<Q> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let valid = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || den.is_some_and(|d| !valid(d) || d.starts_with('-')) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) => d.parse().ok()?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// Factorial as an exact rational.
pub fn factorial(k: usize) -> Q {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= BigInt::from(j);
    }
    Q::from_integer(acc)
}

/// Integer power of a rational (non-negative exponent).
pub fn pow(x: &Q, k: usize) -> Q {
    let mut acc = Q::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Serializes a rational as the string `p/q` (or `p` for integers).
pub fn serialize_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fraction_syntax() {
        assert_eq!(parse("3/4"), Some(frac(3, 4)));
        assert_eq!(parse("-7"), Some(int(-7)));
        assert_eq!(parse("6/8"), Some(frac(3, 4)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(parse("1/-2"), None);
        assert_eq!(parse("1.5"), None);
        assert_eq!(parse(""), None);
        assert_eq!(parse("+2"), None);
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_exact(&frac(9, 25)), Some(frac(3, 5)));
        assert_eq!(sqrt_exact(&int(2)), None);
        assert_eq!(sqrt_exact(&int(-4)), None);
        assert_eq!(sqrt_exact(&zero()), Some(zero()));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), one());
        assert_eq!(factorial(5), int(120));
    }
}

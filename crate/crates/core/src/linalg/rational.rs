use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar. Always stored in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `num / den`, reduced. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| alloc::format!("invalid rational {s:?}"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| alloc::format!("invalid rational {s:?}"))?;
    if den == BigInt::from(0) {
        return Err(alloc::format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

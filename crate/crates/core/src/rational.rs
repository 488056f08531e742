//! Serde representation of exact rationals as
//! `{"numerator": p, "denominator": q}` with `q > 0` and `gcd(p, q) = 1`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Rational;

#[derive(Serialize, Deserialize)]
struct Repr {
    numerator: i128,
    denominator: i128,
}

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Repr {
        numerator: *r.numer(),
        denominator: *r.denom(),
    }
    .serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let r = Repr::deserialize(d)?;
    if r.denominator == 0 {
        return Err(serde::de::Error::custom("zero denominator"));
    }
    Ok(Rational::new(r.numerator, r.denominator))
}

/// `r` as a decimal string with up to `digits` fractional digits, exact when
/// the expansion terminates within that many digits.
pub fn to_decimal(r: &Rational, digits: u32) -> String {
    let neg = *r.numer() < 0;
    let (num, den) = (r.numer().unsigned_abs(), r.denom().unsigned_abs());
    let mut out = format!("{}{}", if neg { "-" } else { "" }, num / den);
    let mut rem = num % den;
    if rem != 0 {
        out.push('.');
        for _ in 0..digits {
            rem *= 10;
            out.push(char::from(b'0' + (rem / den) as u8));
            rem %= den;
            if rem == 0 {
                break;
            }
        }
        if rem != 0 {
            out.push_str("...");
        }
    }
    out
}

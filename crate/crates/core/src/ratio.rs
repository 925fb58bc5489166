//! Exact rational arithmetic helpers.
//!
//! All statistics in this crate that are not plain counts are carried as
//! exact rationals ([`Rat`]) and only rendered to decimal at the output
//! boundary. Floating-point inputs (tolerances such as `eps`) are converted
//! to the exact rational value of their binary representation, so every
//! comparison downstream is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Exact rational number used throughout the crate.
pub type Rat = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as an exact rational.
pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Unsigned integer as an exact rational.
pub fn rat_u(v: u64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// The exact rational value of a finite `f64`.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Largest integer `<= r`, as `i64`. Saturates on overflow.
pub fn floor_i64(r: &Rat) -> i64 {
    let f = r.floor().to_integer();
    f.to_i64().unwrap_or(if f.is_negative() { i64::MIN } else { i64::MAX })
}

/// Smallest integer `>= r`, as `i64`. Saturates on overflow.
pub fn ceil_i64(r: &Rat) -> i64 {
    let c = r.ceil().to_integer();
    c.to_i64().unwrap_or(if c.is_negative() { i64::MIN } else { i64::MAX })
}

fn digit_count(v: &BigInt) -> i64 {
    v.magnitude().to_str_radix(10).len() as i64
}

fn pow10(e: u64) -> BigInt {
    BigInt::from(10u32).pow(e as u32)
}

/// Renders an exact rational to decimal with `sig` significant digits
/// (round half away from zero), trimming trailing fractional zeros.
///
/// The output is plain decimal notation, never scientific.
pub fn decimal_sig(r: &Rat, sig: u32) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.numer().abs();
    let b = r.denom().clone();

    // Exponent of the leading digit: value in [10^e, 10^(e+1)).
    let e0 = digit_count(&a) - digit_count(&b);
    let (lhs, rhs) = if e0 >= 0 {
        (a.clone(), &b * pow10(e0 as u64))
    } else {
        (&a * pow10((-e0) as u64), b.clone())
    };
    let exp = if lhs >= rhs { e0 } else { e0 - 1 };

    // q = round(a / b * 10^(sig - 1 - exp)), half away from zero.
    let scale = sig as i64 - 1 - exp;
    let (num, den) = if scale >= 0 {
        (&a * pow10(scale as u64), b)
    } else {
        (a, &b * pow10((-scale) as u64))
    };
    let mut q = (2u32 * num + &den) / (2u32 * den);
    let mut exp = exp;
    if digit_count(&q) > sig as i64 {
        // Rounding carried into an extra digit (q == 10^sig).
        q /= 10u32;
        exp += 1;
    }
    let digits = q.magnitude().to_str_radix(10);
    debug_assert_eq!(digits.len(), sig as usize);

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp >= sig as i64 - 1 {
        out.push_str(&digits);
        for _ in 0..(exp - sig as i64 + 1) {
            out.push('0');
        }
    } else if exp >= 0 {
        let split = (exp + 1) as usize;
        out.push_str(&digits[..split]);
        out.push('.');
        out.push_str(&digits[split..]);
    } else {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    out
}

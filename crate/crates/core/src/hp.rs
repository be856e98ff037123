//! Working-precision complex arithmetic helpers and the engine configuration.

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::{Complex, Float, Rational};
use serde::{Deserialize, Serialize};

/// Complex number at the engine's working precision.
pub type ComplexHP = Complex;

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const GUARD_BITS: u32 = 64;

/// Global numeric settings shared by every evaluator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Engine {
    /// Significant decimal digits P.
    pub digits: u32,
    /// Target absolute truncation error.
    pub eps: f64,
    /// Hard cap on any summation index.
    pub nmax: usize,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::with_digits(40)
    }
}

impl Engine {
    pub fn with_digits(digits: u32) -> Self {
        Engine {
            digits,
            eps: 10f64.powi(-(digits as i32 + 5)),
            nmax: 200_000,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.digits < 10 || self.digits > 280 {
            return Err(Error::InvalidArgument(format!(
                "digits must lie in 10..=280, got {}",
                self.digits
            )));
        }
        if !(self.eps > 0.0) {
            return Err(Error::InvalidArgument("eps must be positive".into()));
        }
        if self.nmax < 1 {
            return Err(Error::InvalidArgument("nmax must be at least 1".into()));
        }
        Ok(())
    }

    /// Binary precision used for every `Float`/`Complex`.
    pub fn prec(&self) -> u32 {
        (self.digits as f64 * LOG2_10).ceil() as u32 + GUARD_BITS
    }

    pub fn budget(&self) -> crate::eisenstein::TruncationBudget {
        crate::eisenstein::TruncationBudget {
            eps: self.eps,
            n_max: self.nmax,
        }
    }

    /// Same settings with `extra` more digits and a tighter eps.
    pub fn boosted(&self, extra: u32) -> Engine {
        Engine {
            digits: self.digits + extra,
            eps: self.eps * 10f64.powi(-(extra as i32)),
            nmax: self.nmax,
        }
    }
}

pub fn zero(prec: u32) -> Complex {
    Complex::new(prec)
}

pub fn one(prec: u32) -> Complex {
    Complex::with_val(prec, 1)
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

pub fn two_pi(prec: u32) -> Float {
    pi(prec) * 2u32
}

pub fn two_pi_i(prec: u32) -> Complex {
    Complex::with_val(prec, (0, two_pi(prec)))
}

/// Exact i^n.
pub fn i_pow(n: i64, prec: u32) -> Complex {
    match n.rem_euclid(4) {
        0 => Complex::with_val(prec, (1, 0)),
        1 => Complex::with_val(prec, (0, 1)),
        2 => Complex::with_val(prec, (-1, 0)),
        _ => Complex::with_val(prec, (0, -1)),
    }
}

/// z^n by repeated squaring; negative n inverts.
pub fn powi(z: &Complex, n: i64) -> Complex {
    let prec = z.prec().0;
    let mut base = z.clone();
    let mut acc = one(prec);
    let mut e = n.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * &base;
        }
    }
    if n < 0 {
        acc.recip()
    } else {
        acc
    }
}

pub fn from_rational(r: &Rational, prec: u32) -> Complex {
    Complex::with_val(prec, (Float::with_val(prec, r), 0))
}

pub fn real(prec: u32, x: f64) -> Complex {
    Complex::with_val(prec, (x, 0))
}

/// |z| as f64 (0 on underflow).
pub fn abs_f64(z: &Complex) -> f64 {
    z.clone().abs().real().to_f64()
}

/// log10 |z|, -inf for zero.
pub fn log10_abs(z: &Complex) -> f64 {
    let a = z.clone().abs().real().clone();
    if a.is_zero() {
        f64::NEG_INFINITY
    } else {
        a.log10().to_f64()
    }
}

fn fmt_float(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        "0".to_string()
    } else {
        format!("{:.*e}", digits, x)
    }
}

/// "a+bi" with `digits` significant digits per part.
pub fn format_complex(z: &Complex, digits: usize) -> String {
    let re = fmt_float(z.real(), digits);
    let im = z.imag();
    if im.is_sign_negative() && !im.is_zero() {
        let m = Float::with_val(im.prec(), -im);
        format!("{}-{}i", re, fmt_float(&m, digits))
    } else {
        format!("{}+{}i", re, fmt_float(im, digits))
    }
}

fn parse_float(s: &str, prec: u32) -> Result<Float> {
    let p = Float::parse(s).map_err(|e| Error::Parse(format!("bad number '{}': {}", s, e)))?;
    Ok(Float::with_val(prec, p))
}

/// Parses "a+bi", "a-bi", "a", "bi", "i", "-i".
pub fn parse_complex(s: &str, prec: u32) -> Result<Complex> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex literal".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::with_val(prec, (parse_float(&s, prec)?, 0)));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(j) => (&body[..j], &body[j..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    Ok(Complex::with_val(
        prec,
        (parse_float(re, prec)?, parse_float(im, prec)?),
    ))
}

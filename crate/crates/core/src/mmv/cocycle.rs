use crate::algebra::factorial;
use crate::eisenstein::bernoulli;
use crate::error::{Error, Result};
use crate::hp::{self, Engine};
use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use std::fmt;

/// Homogeneous polynomial in `X, Y` with rational coefficients; `coeffs[j]` multiplies
/// `X^{degree-j} Y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPolynomial {
    pub degree: u32,
    pub coeffs: Vec<Rational>,
}

impl BiPolynomial {
    pub fn zero(degree: u32) -> Self {
        BiPolynomial {
            degree,
            coeffs: vec![Rational::new(); degree as usize + 1],
        }
    }

    /// Coefficient of `X^x Y^y`; zero off the degree.
    pub fn coeff(&self, x: u32, y: u32) -> Rational {
        if x + y != self.degree {
            return Rational::new();
        }
        self.coeffs[y as usize].clone()
    }
}

impl fmt::Display for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({})X^{}Y^{}", c, self.degree as usize - j, j)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Rational part of the cocycle of `E_{2k}` on `S`:
/// `(2k-2)!/2 * sum_{i=1}^{k-1} b_{2i}/(2i)! * b_{2k-2i}/(2k-2i)! X^{2i-1} Y^{2k-2i-1}`.
pub fn e0_cocycle_s(k: u32) -> Result<BiPolynomial> {
    if k < 2 {
        return Err(Error::InvalidIndex(format!("weight {} must be >= 4", 2 * k)));
    }
    let mut p = BiPolynomial::zero(2 * k - 2);
    let half = Rational::from(factorial(2 * k - 2)) / 2u32;
    for i in 1..k {
        let a = bernoulli(2 * i) / factorial(2 * i);
        let b = bernoulli(2 * k - 2 * i) / factorial(2 * k - 2 * i);
        p.coeffs[(2 * k - 2 * i - 1) as usize] = Rational::from(&half * &a) * b;
    }
    Ok(p)
}

/// `zeta(s)` for odd `s >= 3` by Euler-Maclaurin, carrying Bernoulli corrections until the next
/// one drops below `eps`; that term also bounds the remainder.
pub fn zeta_odd(s: u32, engine: &Engine) -> Result<Float> {
    if s < 3 || s % 2 == 0 {
        return Err(Error::InvalidArgument(format!("zeta_odd needs odd s >= 3, got {}", s)));
    }
    let prec = engine.prec();
    let n = engine.digits.max(20);
    let nf = Float::with_val(prec, n);
    let mut sum = Float::with_val(prec, 0);
    for j in 1..n {
        sum += Float::with_val(prec, j).pow(-(s as i32));
    }
    let ns = Float::with_val(prec, nf.clone().pow(-(s as i32)));
    sum += Float::with_val(prec, &ns * &nf) / (s - 1);
    sum += Float::with_val(prec, &ns / 2u32);
    let eps = Float::with_val(prec, engine.eps);
    let n2 = Float::with_val(prec, &nf * &nf);
    // rising factorial s (s+1) ... (s+2j-2) times N^{-s-2j+1}
    let mut rise = Float::with_val(prec, &ns * s) / &nf;
    for j in 1u32.. {
        let b = Float::with_val(prec, &(bernoulli(2 * j) / factorial(2 * j)));
        let term = Float::with_val(prec, &rise * &b);
        if term.clone().abs() < eps {
            break;
        }
        if j > 4 * n {
            return Err(Error::Budget("Euler-Maclaurin corrections stopped shrinking".into()));
        }
        sum += term;
        rise *= (s + 2 * j - 1) * (s + 2 * j);
        rise /= &n2;
    }
    Ok(sum)
}

/// Right side of Haberland's evaluation of the `S` coefficient of `E_{2k}`:
/// `(2 pi i)^{2k-1} [X^{2k-a-1} Y^{a-1}] + (2k-2)!/2 zeta(2k-1) (delta_{a,1} - delta_{a,2k-1})`.
pub fn haberland_rhs(k: u32, alpha: u32, engine: &Engine) -> Result<Complex> {
    if alpha < 1 || alpha > 2 * k - 1 {
        return Err(Error::InvalidIndex(format!("alpha {} outside 1..{}", alpha, 2 * k - 1)));
    }
    let prec = engine.prec();
    let c = e0_cocycle_s(k)?.coeff(2 * k - alpha - 1, alpha - 1);
    let mut v = hp::powi(&hp::two_pi_i(prec), 2 * k as i64 - 1) * hp::from_rational(&c, prec);
    let d = (alpha == 1) as i32 - (alpha == 2 * k - 1) as i32;
    if d != 0 {
        let z = zeta_odd(2 * k - 1, engine)? * Float::with_val(prec, factorial(2 * k - 2)) / 2u32;
        v += z * d;
    }
    Ok(v)
}

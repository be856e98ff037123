use super::{int0_reg, r1, r2, sign, t_const_closed, t_const_const, Sym};
use crate::algebra::binomial;
use crate::eisenstein::bernoulli;
use crate::error::{Error, Result};
use crate::hp::{self, Engine};
use rug::Complex;
use serde::{Deserialize, Serialize};

/// Monomial selector for the `I` and `S` coefficients: `ks[j]` is half the weight, `alphas[j]`
/// picks `X^{2k_j - alpha_j - 1} Y^{alpha_j - 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialCoefficientRequest {
    pub ks: Vec<u32>,
    pub alphas: Vec<u32>,
}

impl MonomialCoefficientRequest {
    pub fn new(ks: Vec<u32>, alphas: Vec<u32>) -> Result<Self> {
        let r = MonomialCoefficientRequest { ks, alphas };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ks.is_empty() || self.ks.len() > 2 || self.ks.len() != self.alphas.len() {
            return Err(Error::InvalidArgument("coefficients exist for length 1 or 2".into()));
        }
        for (&k, &a) in self.ks.iter().zip(&self.alphas) {
            if k < 2 {
                return Err(Error::InvalidIndex(format!("weight 2k = {} must be >= 4", 2 * k)));
            }
            if a < 1 || a > 2 * k - 1 {
                return Err(Error::InvalidIndex(format!("alpha {} outside 1..{}", a, 2 * k - 1)));
            }
        }
        Ok(())
    }

    /// `(2 pi i)^{sum (2k_j - 1)}` times the binomials `C(2k_j - 2, alpha_j - 1)`.
    fn scale(&self, prec: u32) -> Complex {
        let w: i64 = self.ks.iter().map(|&k| 2 * k as i64 - 1).sum();
        let mut c = hp::powi(&hp::two_pi_i(prec), w);
        for (&k, &a) in self.ks.iter().zip(&self.alphas) {
            c *= binomial(2 * k as i64 - 2, a as i64 - 1);
        }
        c
    }
}

fn r_minus_const(k: u32, a: i64, e: &Engine) -> Result<Complex> {
    Ok(r1(k, a, e)? - t_const_closed(k, a, e.prec())?)
}

/// Coefficient of the iterated-integral cocycle on the requested monomial.
pub fn i_coeff(req: &MonomialCoefficientRequest, engine: &Engine) -> Result<Complex> {
    req.validate()?;
    let prec = engine.prec();
    let a: Vec<i64> = req.alphas.iter().map(|&x| x as i64).collect();
    let body = match req.ks.as_slice() {
        [k] => r_minus_const(*k, a[0], engine)?,
        [k1, k2] => {
            let (k1, k2) = (*k1, *k2);
            r2(Sym::Cusp(k1), Sym::Cusp(k2), a[0], a[1], engine)?
                + r2(Sym::Const(k1), Sym::Cusp(k2), a[0], a[1], engine)?
                - r2(Sym::Const(k2), Sym::Cusp(k1), a[1], a[0], engine)?
                - r1(k1, a[0], engine)? * t_const_closed(k2, a[1], prec)?
                + t_const_const(k2, k1, a[1], a[0], prec)?
        }
        _ => unreachable!(),
    };
    Ok(body * req.scale(prec) * sign(a.iter().sum()))
}

fn i1(k: u32, a: u32, e: &Engine) -> Result<Complex> {
    i_coeff(&MonomialCoefficientRequest::new(vec![k], vec![a])?, e)
}

fn i2(k1: u32, k2: u32, a1: u32, a2: u32, e: &Engine) -> Result<Complex> {
    i_coeff(&MonomialCoefficientRequest::new(vec![k1, k2], vec![a1, a2])?, e)
}

/// Coefficient of the cocycle attached to the inversion `S`.
pub fn s_coeff(req: &MonomialCoefficientRequest, engine: &Engine) -> Result<Complex> {
    req.validate()?;
    match (req.ks.as_slice(), req.alphas.as_slice()) {
        ([k], [a]) => {
            let (k, a) = (*k, *a);
            Ok(i1(k, a, engine)? - i1(k, 2 * k - a, engine)? * sign(a as i64 - 1))
        }
        ([k1, k2], [a1, a2]) => {
            let (k1, k2, a1, a2) = (*k1, *k2, *a1, *a2);
            let (b1, b2) = (2 * k1 - a1, 2 * k2 - a2);
            let s1 = s_coeff(&MonomialCoefficientRequest::new(vec![k2], vec![a2])?, engine)?;
            Ok(i2(k1, k2, a1, a2, engine)?
                - i2(k1, k2, b1, b2, engine)? * sign((a1 + a2) as i64)
                - i1(k1, b1, engine)? * s1 * sign(a1 as i64 - 1))
        }
        _ => unreachable!(),
    }
}

/// Readings of the closed formula for `S(k1,k2;a1,a2) - S(k2,k1;a2,a1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FirstDiffVariant {
    /// Overall sign `+1`, Bernoulli terms subtracted, constant with denominator `2 a2`.
    Literal,
    /// Sign `(-1)^{a1+a2}`, Bernoulli terms subtracted, constant with denominator `a1 + a2`.
    SpecForm,
    /// Sign `(-1)^{a1+a2}`, Bernoulli terms added (matching `E^inf = -b/(4k)`), constant kept.
    ConstantSign,
    /// As `ConstantSign` with the constant rotated by `i^{a1+a2}`.
    RotatedConstant,
    /// As `ConstantSign` without the constant. This is the reading that holds numerically.
    NoConstant,
}

impl FirstDiffVariant {
    pub const ALL: [FirstDiffVariant; 5] = [
        FirstDiffVariant::Literal,
        FirstDiffVariant::SpecForm,
        FirstDiffVariant::ConstantSign,
        FirstDiffVariant::RotatedConstant,
        FirstDiffVariant::NoConstant,
    ];
}

/// Returns `(lhs, rhs)` for the first-difference formula under `variant`.
pub fn first_difference(
    k1: u32,
    k2: u32,
    a1: u32,
    a2: u32,
    variant: FirstDiffVariant,
    engine: &Engine,
) -> Result<(Complex, Complex)> {
    let req = MonomialCoefficientRequest::new(vec![k1, k2], vec![a1, a2])?;
    let prec = engine.prec();
    let m = (a1 + a2) as i64;
    let lhs = s_coeff(&req, engine)?
        - s_coeff(&MonomialCoefficientRequest::new(vec![k2, k1], vec![a2, a1])?, engine)?;

    let (ia1, ia2) = (a1 as i64, a2 as i64);
    let d12 = int0_reg(&[k1, k2], &[ia1, ia2], engine)?;
    let d21 = int0_reg(&[k2, k1], &[ia2, ia1], engine)?;
    let s1 = int0_reg(&[k1], &[m], engine)?;
    let s2 = int0_reg(&[k2], &[m], engine)?;
    let bern = |k: u32, a: u32| {
        hp::from_rational(&(bernoulli(2 * k) / rug::Rational::from(2 * k * a)), prec)
    };
    let (c1, c2) = (bern(k1, a1), bern(k2, a2));
    let bsign = match variant {
        FirstDiffVariant::Literal | FirstDiffVariant::SpecForm => -1,
        _ => 1,
    };
    // grouped so that the diagonal case cancels exactly
    let core = (d12 - d21) + (c2 * &s1 - c1 * &s2) * bsign;

    let constant = |den: i64| {
        let b = bernoulli(2 * k1) * bernoulli(2 * k2) * rug::Rational::from(ia2 - ia1)
            / rug::Rational::from(8 * (k1 * k2 * a1 * a2) as i64 * den);
        hp::from_rational(&b, prec)
    };
    let body = match variant {
        FirstDiffVariant::Literal => core + constant(2 * ia2),
        FirstDiffVariant::SpecForm | FirstDiffVariant::ConstantSign => core + constant(m),
        FirstDiffVariant::RotatedConstant => core + constant(m) * hp::i_pow(m, prec),
        FirstDiffVariant::NoConstant => core,
    };
    let outer = match variant {
        FirstDiffVariant::Literal => 1,
        _ => sign(m),
    };
    Ok((lhs, body * req.scale(prec) * outer))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::abs_f64;

    fn req(ks: &[u32], al: &[u32]) -> MonomialCoefficientRequest {
        MonomialCoefficientRequest::new(ks.to_vec(), al.to_vec()).unwrap()
    }

    #[test]
    fn request_validation() {
        assert!(MonomialCoefficientRequest::new(vec![2], vec![4]).is_err());
        assert!(MonomialCoefficientRequest::new(vec![1], vec![1]).is_err());
        assert!(MonomialCoefficientRequest::new(vec![2, 2, 2], vec![1, 1, 1]).is_err());
    }

    #[test]
    fn weight_four_values() {
        let e = Engine::default();
        let z3 = "1.2020569031595942853997381615114499907649862923405";
        let z3 = Complex::with_val(e.prec(), Complex::parse(z3).unwrap());
        let s = s_coeff(&req(&[2], &[1]), &e).unwrap();
        assert!(abs_f64(&(s - &z3)) < 1e-40);
        let s = s_coeff(&req(&[2], &[3]), &e).unwrap();
        assert!(abs_f64(&(s + &z3)) < 1e-40);
    }

    #[test]
    fn group_like_at_length_two() {
        let e = Engine::default();
        for (k1, k2, a1, a2) in [(2, 2, 1, 2), (2, 3, 2, 3), (3, 2, 1, 3)] {
            let lhs = i_coeff(&req(&[k1], &[a1]), &e).unwrap() * i_coeff(&req(&[k2], &[a2]), &e).unwrap();
            let rhs = i_coeff(&req(&[k1, k2], &[a1, a2]), &e).unwrap()
                + i_coeff(&req(&[k2, k1], &[a2, a1]), &e).unwrap();
            assert!(abs_f64(&(lhs - rhs)) < 1e-35);
        }
    }

    #[test]
    fn first_difference_readings() {
        let e = Engine::default();
        let (lhs, rhs) = first_difference(2, 3, 1, 2, FirstDiffVariant::NoConstant, &e).unwrap();
        assert!(abs_f64(&(lhs.clone() - rhs)) < 1e-30 * abs_f64(&lhs).max(1.0));
        let (lhs, rhs) = first_difference(2, 3, 1, 2, FirstDiffVariant::Literal, &e).unwrap();
        assert!(abs_f64(&(lhs - rhs)) > 1e-6);
    }
}

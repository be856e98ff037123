//! Iterated Eisenstein tau-integrals
//! `Int(k; alpha)(tau) = int_{tau < t_1 < ... < t_r < i inf} prod E^0_{2k_j}(t_j) t_j^{alpha_j - 1} dt_j`,
//! evaluated in closed form through [`ExpPoly`], with a quadrature oracle in [`quad`].

mod exppoly;
pub mod quad;

pub use exppoly::ExpPoly;
pub use quad::{quad_oracle, PathEnd, PathSpec};

use crate::algebra::CompositeIndex;
use crate::eisenstein::{power_geometric_cutoff, sigma_floats, Certified, TruncationBudget};
use crate::error::{Error, Result};
use crate::hp;
use rug::ops::Pow;
use rug::{Complex, Float};

/// Integrand factor: the cusp part `E^0_{2k}` or a constant function.
#[derive(Clone, Debug, PartialEq)]
pub enum Factor {
    Cusp(u32),
    Const(Complex),
}

impl Factor {
    pub fn eval(&self, tau: &Complex, budget: &TruncationBudget) -> Result<Complex> {
        match self {
            Factor::Cusp(k) => Ok(crate::eisenstein::eis_cusp_eval(*k, tau, budget)?.value),
            Factor::Const(c) => Ok(Complex::with_val(tau.prec().0, c)),
        }
    }
}

pub const MAX_DEPTH: usize = 6;

/// `int_a^{i inf} e^{2 pi i n t} t^{alpha-1} dt` in closed form.
pub fn elem_exp_tail(n: u64, alpha: u32, a: &Complex) -> Result<Complex> {
    if n < 1 || alpha < 1 {
        return Err(Error::InvalidArgument("elem_exp_tail needs n >= 1 and alpha >= 1".into()));
    }
    if !a.imag().is_sign_positive() || a.imag().is_zero() {
        return Err(Error::InvalidArgument("Im a must be positive".into()));
    }
    let prec = a.prec().0;
    let f = ExpPoly::term(n, vec![hp::one(prec)], prec);
    Ok(f.tail_integral(alpha)?.eval(a))
}

/// Generalized exponential integral `E_p(x) = int_1^inf e^{-xt} t^{-p} dt` for `x > 1`,
/// by continued fraction (modified Lentz).
pub fn expint_e(p: u32, x: &Float) -> Float {
    assert!(p >= 1 && *x > 1, "expint_e needs p >= 1 and x > 1");
    let prec = x.prec();
    let tiny = Float::with_val(prec, Float::i_exp(1, -(prec as i32) * 2));
    let huge = Float::with_val(prec, tiny.recip_ref());
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 4));
    let mut b = Float::with_val(prec, x + p);
    let mut c = huge;
    let mut d = Float::with_val(prec, b.recip_ref());
    let mut h = d.clone();
    for i in 1..100_000u64 {
        let an = -Float::with_val(prec, i * (p as u64 - 1 + i));
        b += 2u32;
        d = Float::with_val(prec, &an * &d + &b);
        if d.is_zero() {
            d = tiny.clone();
        }
        d.recip_mut();
        c = Float::with_val(prec, &an / &c) + &b;
        if c.is_zero() {
            c = tiny.clone();
        }
        let del = Float::with_val(prec, &c * &d);
        h *= &del;
        if (del - 1u32).abs() < tol {
            break;
        }
    }
    h * Float::with_val(prec, -x).exp()
}

/// `int_{iy}^{i inf} e^{2 pi i n t} t^{a-1} dt` for any integer `a`; for `a <= 0` this is
/// `i^a y^a E_{1-a}(2 pi n y)`.
pub fn elem_tail_imag(n: u64, a: i64, y: &Float) -> Result<Complex> {
    let prec = y.prec();
    if a >= 1 {
        return elem_exp_tail(n, a as u32, &Complex::with_val(prec, (0, y)));
    }
    let x = hp::two_pi(prec) * y * Float::with_val(prec, n);
    let e = expint_e((1 - a) as u32, &x);
    let ya = Float::with_val(prec, y.pow(a as i32));
    Ok(hp::i_pow(a, prec) * Complex::with_val(prec, (e * ya, 0)))
}

/// `int_{iy}^{i inf} E^0_{2k}(t) t^{a-1} dt` for any integer exponent.
pub fn cusp_tail_imag(k: u32, a: i64, y: &Float, budget: &TruncationBudget) -> Result<Certified> {
    let prec = y.prec();
    if a >= 1 {
        return chain_eval(&[Factor::Cusp(k)], &[a as u32], &Complex::with_val(prec, (0, y)), budget);
    }
    let yf = y.to_f64();
    if !(yf > 1.0 / std::f64::consts::TAU) {
        return Err(Error::InvalidArgument("nonpositive exponents need Im >= 1/(2 pi)".into()));
    }
    // |term n| <= n^{2k} y^a e^{-2 pi n y} / (2 pi n y)
    let ln_scale = a as f64 * yf.ln() - (std::f64::consts::TAU * yf).ln();
    let (n, bound) = power_geometric_cutoff(2.0 * k as f64, -std::f64::consts::TAU * yf, ln_scale, budget)?;
    let sig = sigma_floats(2 * k - 1, n, prec);
    let mut acc = hp::zero(prec);
    for m in 1..=n {
        acc += elem_tail_imag(m as u64, a, y)? * &sig[m];
    }
    Ok(Certified {
        value: acc,
        tail_bound: bound,
        terms: n,
        warning: None,
    })
}

/// ln of the certified scale `K` in `|dropped| <= K sum_{M > N} M^p e^{-2 pi M y}`.
fn ln_truncation_scale(factors: &[Factor], alphas: &[u32], tau: &Complex) -> f64 {
    let mut ln_k = 0.0;
    let mut d = 0u32;
    for (f, &a) in factors.iter().zip(alphas).rev() {
        d += a - 1;
        ln_k += ln_factorial(d) + 1.0 - std::f64::consts::TAU.ln();
        if let Factor::Const(c) = f {
            ln_k += hp::abs_f64(c).max(1e-300).ln();
        }
    }
    ln_k + d as f64 * hp::abs_f64(tau).max(1.0).ln()
}

fn ln_factorial(n: u32) -> f64 {
    (1..=n).map(|j| (j as f64).ln()).sum()
}

/// Nested tail integral of an arbitrary factor chain; the outermost factor must be a cusp part.
pub fn chain_eval(factors: &[Factor], alphas: &[u32], tau: &Complex, budget: &TruncationBudget) -> Result<Certified> {
    let prec = tau.prec().0;
    let r = factors.len();
    if r != alphas.len() {
        return Err(Error::InvalidArgument("factor and exponent lists differ in length".into()));
    }
    if r == 0 {
        return Ok(Certified {
            value: hp::one(prec),
            tail_bound: 0.0,
            terms: 0,
            warning: None,
        });
    }
    if r > MAX_DEPTH {
        return Err(Error::InvalidArgument(format!("depth {} exceeds cap {}", r, MAX_DEPTH)));
    }
    if alphas.iter().any(|&a| a < 1) {
        return Err(Error::InvalidArgument("closed-form chains need alpha >= 1".into()));
    }
    if !matches!(factors[r - 1], Factor::Cusp(_)) {
        return Err(Error::Divergent("outermost factor must be a cusp part".into()));
    }
    let y = tau.imag().to_f64();
    if !(y > 0.0) {
        return Err(Error::InvalidArgument("Im tau must be positive".into()));
    }
    let (ksum, rc) = factors.iter().fold((0u32, 0u32), |(s, c), f| match f {
        Factor::Cusp(k) => (s + k, c + 1),
        Factor::Const(_) => (s, c),
    });
    let p = 2.0 * ksum as f64 + rc as f64 - 1.0;
    let ln_scale = ln_truncation_scale(factors, alphas, tau);
    let (ncut, bound) = power_geometric_cutoff(p, -std::f64::consts::TAU * y, ln_scale, budget)?;
    let ncut = ncut.max(1) as u64;
    let mut g: Option<ExpPoly> = None;
    for (f, &a) in factors.iter().zip(alphas).rev() {
        let integrand = match (f, g) {
            (Factor::Cusp(k), None) => ExpPoly::cusp_series(*k, ncut as usize, prec),
            (Factor::Cusp(k), Some(h)) => h.mul_cusp(*k, ncut),
            (Factor::Const(c), Some(h)) => h.scale(c),
            (Factor::Const(_), None) => unreachable!(),
        };
        g = Some(integrand.tail_integral(a)?);
    }
    let warning = (y < 0.1).then(|| format!("Im tau = {} < 0.1: truncation order grows like 1/Im tau", y));
    Ok(Certified {
        value: g.expect("nonempty chain").eval(tau),
        tail_bound: bound,
        terms: ncut as usize,
        warning,
    })
}

/// Certified `Int(E^0_{2k_1},...;alpha_1,...)(tau)`; depth 0 gives 1.
pub fn int_eval(index: &CompositeIndex, tau: &Complex, budget: &TruncationBudget) -> Result<Certified> {
    let factors: Vec<Factor> = index.ks().iter().map(|&k| Factor::Cusp(k)).collect();
    chain_eval(&factors, index.alphas(), tau, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_index;
    use crate::hp::{abs_f64, Engine};
    use crate::lseries::l_eval;

    #[test]
    fn elementary_tails() {
        let e = Engine::default();
        let p = e.prec();
        let i = Complex::with_val(p, (0, 1));
        let v = elem_exp_tail(1, 1, &i).unwrap();
        let expect = -Complex::with_val(p, (-hp::two_pi(p)).exp()) / hp::two_pi_i(p);
        assert!(abs_f64(&(v - expect)) < 1e-50);
        let v = elem_exp_tail(2, 1, &i).unwrap();
        let expect = -Complex::with_val(p, (-hp::two_pi(p) * 2u32).exp()) / (hp::two_pi_i(p) * 2u32);
        assert!(abs_f64(&(v - expect)) < 1e-50);
    }

    #[test]
    fn imaginary_tails_agree_with_closed_form() {
        let p = Engine::default().prec();
        let y = Float::with_val(p, 1.25);
        // E_{p+1}(x) = (e^{-x} - x E_p(x)) / p
        let x = Float::with_val(p, 7.5);
        let e1 = expint_e(1, &x);
        let e2 = expint_e(2, &x);
        let rec = (Float::with_val(p, (-x.clone()).exp()) - Float::with_val(p, &x * &e1)) / 1u32;
        assert!((e2 - rec).abs().to_f64() < 1e-50);
        let v = elem_tail_imag(3, 2, &y).unwrap();
        let w = elem_exp_tail(3, 2, &Complex::with_val(p, (0, &y))).unwrap();
        assert_eq!(v, w);
    }

    #[test]
    fn depth_one_is_minus_l_series() {
        let e = Engine::default();
        for tau in [(0.0, 1.0), (0.3, 2.0)] {
            let tau = Complex::with_val(e.prec(), tau);
            let idx = make_index(&[2], &[1], 0).unwrap();
            let a = int_eval(&idx, &tau, &e.budget()).unwrap().value;
            let b = l_eval(&idx, &tau, &e.budget()).unwrap().value;
            assert!(abs_f64(&(a + b)) < 1e-40);
        }
        let tau = Complex::with_val(e.prec(), (0, 1));
        let one = int_eval(&make_index(&[], &[], 0).unwrap(), &tau, &e.budget()).unwrap();
        assert_eq!(one.value, hp::one(e.prec()));
    }

    #[test]
    fn guards() {
        let e = Engine::default();
        let tau = Complex::with_val(e.prec(), (0, 1));
        let deep = make_index(&[2; 7], &[1; 7], 0).unwrap();
        assert!(int_eval(&deep, &tau, &e.budget()).is_err());
        let c = Factor::Const(hp::one(e.prec()));
        assert!(matches!(
            chain_eval(&[Factor::Cusp(2), c], &[1, 1], &tau, &e.budget()),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn truncation_bound_is_honest() {
        let e = Engine::with_digits(30);
        let tau = Complex::with_val(e.prec(), (0.1, 1.0));
        let idx = make_index(&[2, 3], &[2, 1], 0).unwrap();
        let c = int_eval(&idx, &tau, &e.budget()).unwrap();
        assert!(c.tail_bound <= e.eps);
        let tight = crate::eisenstein::TruncationBudget::new(1e-60, 100_000).unwrap();
        let big = Engine::with_digits(70);
        let tau70 = Complex::with_val(big.prec(), (0.1, 1.0));
        let d = int_eval(&idx, &tau70, &tight).unwrap().value - Complex::with_val(big.prec(), &c.value);
        assert!(abs_f64(&d) <= c.tail_bound + 1e-33);
    }
}

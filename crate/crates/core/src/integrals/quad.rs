//! Nested Gauss-Legendre quadrature on vertical paths, used as an independent check of the
//! closed forms. Depth is limited to 2.

use super::Factor;
use crate::eisenstein::{Certified, TruncationBudget};
use crate::error::{Error, Result};
use crate::hp::{self, Engine};
use rug::{Complex, Float};
use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Debug, PartialEq)]
pub enum PathEnd {
    /// Up to `i inf`, truncated at the given height (chosen automatically when `None`).
    Infinity { height_cap: Option<f64> },
    /// Finite vertical segment ending at `Re(start) + i h`.
    Height(f64),
}

/// Vertical path from `start` upward.
#[derive(Clone, Debug, PartialEq)]
pub struct PathSpec {
    pub start: Complex,
    pub end: PathEnd,
}

impl PathSpec {
    pub fn to_infinity(start: Complex) -> Self {
        PathSpec {
            start,
            end: PathEnd::Infinity { height_cap: None },
        }
    }

    pub fn segment(start: Complex, height: f64) -> Self {
        PathSpec {
            start,
            end: PathEnd::Height(height),
        }
    }
}

type Rule = Arc<(Vec<Float>, Vec<Float>)>;

/// Gauss-Legendre nodes and weights on [-1, 1] at binary precision `prec`, memoized.
pub fn gauss_legendre(n: usize, prec: u32) -> Rule {
    static C: OnceLock<Mutex<HashMap<(usize, u32), Rule>>> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    if let Some(r) = cache.lock().unwrap().get(&(n, prec)) {
        return r.clone();
    }
    let wp = prec + 32;
    let tol = Float::with_val(wp, Float::i_exp(1, -(prec as i32) - 8));
    let mut xs = vec![Float::new(prec); n];
    let mut ws = vec![Float::new(prec); n];
    for i in 0..n.div_ceil(2) {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = Float::with_val(wp, guess);
        let mut dp = Float::new(wp);
        for _ in 0..200 {
            let (p, d) = legendre(n, &x);
            let dx = Float::with_val(wp, &p / &d);
            x -= &dx;
            dp = d;
            if dx.abs() < tol {
                dp = legendre(n, &x).1;
                break;
            }
        }
        let one_minus = Float::with_val(wp, 1) - Float::with_val(wp, x.square_ref());
        let w = Float::with_val(wp, 2) / (one_minus * dp.square());
        xs[i] = Float::with_val(prec, &x);
        ws[i] = Float::with_val(prec, &w);
        xs[n - 1 - i] = Float::with_val(prec, -x);
        ws[n - 1 - i] = Float::with_val(prec, w);
    }
    let r = Arc::new((xs, ws));
    cache.lock().unwrap().insert((n, prec), r.clone());
    r
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut p0 = Float::with_val(prec, 1);
    let mut p1 = x.clone();
    for j in 1..n {
        let p2 = (Float::with_val(prec, x * &p1) * (2 * j + 1) as u32 - Float::with_val(prec, &p0 * j as u32))
            / (j + 1) as u32;
        p0 = p1;
        p1 = p2;
    }
    let num = (Float::with_val(prec, x * &p1) - &p0) * n as u32;
    let den = Float::with_val(prec, x.square_ref()) - 1u32;
    (p1, num / den)
}

/// Panels graded toward the start point: width `min(y/2, 1)`.
fn panels(y0: f64, y1: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut y = y0;
    while y < y1 {
        let w = (0.5 * y).min(1.0);
        let mut b = y + w;
        if y1 - b < 0.25 * w {
            b = y1;
        }
        out.push((y, b));
        y = b;
    }
    out
}

struct Integrand<'a> {
    factor: &'a Factor,
    power: i64,
    x: Float,
    budget: TruncationBudget,
}

impl Integrand<'_> {
    /// `f(tau) tau^{power} * i` at `tau = x + iy` (the `i` is `d tau / dy`).
    fn at(&self, y: &Float) -> Result<Complex> {
        let prec = y.prec();
        let tau = Complex::with_val(prec, (&self.x, y));
        let f = self.factor.eval(&tau, &self.budget)?;
        Ok(f * hp::powi(&tau, self.power) * Complex::with_val(prec, (0, 1)))
    }

    /// Upper bound for `|f(tau)| |tau|^power` on heights in [lo, hi].
    fn sup(&self, lo: f64, hi: f64) -> f64 {
        let c = self.x.to_f64().abs();
        let amp = if self.power >= 0 {
            (c + hi).powi(self.power as i32)
        } else {
            lo.powi(self.power as i32)
        };
        let f = match self.factor {
            Factor::Const(v) => hp::abs_f64(v),
            Factor::Cusp(k) => power_exp_sum(2 * k, lo, None),
        };
        amp * f
    }

    /// Upper bound for `int_h^inf |f| |tau|^power dy` (cusp factors only).
    fn tail(&self, h: f64) -> f64 {
        let Factor::Cusp(k) = self.factor else {
            return f64::INFINITY;
        };
        let c = self.x.to_f64().abs();
        let a = self.power.max(0) as f64;
        let amp = if self.power >= 0 {
            (c + h).powi(self.power as i32)
        } else {
            h.powi(self.power as i32)
        };
        amp * power_exp_sum(2 * k, h, Some(a / (c + h)))
    }
}

/// Upper bound for `sum_n n^p e^{-2 pi n y}`, each term divided by `2 pi n - s` when `s` is given.
fn power_exp_sum(p: u32, y: f64, s: Option<f64>) -> f64 {
    let mut acc = 0.0;
    let mut n = 1.0f64;
    loop {
        let t = (p as f64 * n.ln() - TAU * n * y).exp();
        let term = s.map_or(t, |s| t / (TAU * n - s));
        acc += term;
        if n > 2.0 * p as f64 / (TAU * y) && term < acc * 1e-20 {
            return acc * 2.0;
        }
        n += 1.0;
    }
}

fn vertical_integral<F: Fn(&Float) -> Result<Complex>>(g: &F, a: &Float, b: &Float, rule: &Rule) -> Result<Complex> {
    let prec = a.prec();
    let half = Float::with_val(prec, b - a) / 2u32;
    let mid = Float::with_val(prec, b + a) / 2u32;
    let mut acc = hp::zero(prec);
    for (x, w) in rule.0.iter().zip(&rule.1) {
        let y = Float::with_val(prec, &half * x) + &mid;
        acc += g(&y)? * w;
    }
    Ok(acc * half)
}

/// Nested quadrature of `prod f_j(t_j) t_j^{alpha_j - 1}` over `start < t_1 < ... < t_r < end`
/// (vertical path). For an infinite path the outermost factor must be a cusp part; the
/// returned `tail_bound` covers the truncation above the height cap plus the estimated
/// quadrature error (order n versus 3n/2).
pub fn quad_oracle(factors: &[Factor], alphas: &[i64], path: &PathSpec, tol: f64, engine: &Engine) -> Result<Certified> {
    let r = factors.len();
    if r == 0 || r > 2 || alphas.len() != r {
        return Err(Error::InvalidArgument("quad_oracle handles depth 1 or 2".into()));
    }
    let prec = engine.prec();
    let x = Float::with_val(prec, path.start.real());
    let y0 = path.start.imag().to_f64();
    if !(y0 > 0.0) {
        return Err(Error::InvalidArgument("path must start in the upper half-plane".into()));
    }
    let budget = TruncationBudget::new(engine.eps.min(tol * 1e-6), engine.nmax)?;
    let parts: Vec<Integrand> = factors
        .iter()
        .zip(alphas)
        .map(|(f, &a)| Integrand {
            factor: f,
            power: a - 1,
            x: x.clone(),
            budget,
        })
        .collect();
    let (top, tail) = match path.end {
        PathEnd::Height(h) => {
            if h <= y0 {
                return Err(Error::InvalidArgument("segment end must lie above the start".into()));
            }
            (h, 0.0)
        }
        PathEnd::Infinity { height_cap } => {
            if !matches!(factors[r - 1], Factor::Cusp(_)) {
                return Err(Error::Divergent("outermost factor must be a cusp part".into()));
            }
            let bound = |h: f64| -> f64 {
                let outer = parts[r - 1].tail(h);
                if r == 1 {
                    return outer;
                }
                let inner = &parts[0];
                let a = (inner.power.max(0) + parts[1].power.max(0)) as f64;
                let c = x.to_f64().abs();
                let sup = inner.sup(y0, h).max(inner.sup(h, h));
                outer * sup * (h - y0 + 1.0 / (TAU - a / (c + h)))
            };
            match height_cap {
                Some(h) => (h, bound(h)),
                None => {
                    let mut h = (y0 + 2.0).max(8.0);
                    while bound(h) > tol * 1e-2 {
                        h += 1.0;
                        if h > 400.0 {
                            return Err(Error::Quadrature("no height cap meets the tolerance".into()));
                        }
                    }
                    (h, bound(h))
                }
            }
        }
    };
    let pan: Vec<(Float, Float)> = panels(y0, top)
        .into_iter()
        .map(|(a, b)| (Float::with_val(prec, a), Float::with_val(prec, b)))
        .collect();
    let pan = {
        // first panel starts exactly at Im(start)
        let mut p = pan;
        if let Some(first) = p.first_mut() {
            first.0 = Float::with_val(prec, path.start.imag());
        }
        p
    };
    let base = ((engine.digits as usize + 8) * 2 / 3).max(12);
    let run = |n: usize| -> Result<Complex> {
        let rule = gauss_legendre(n, prec);
        if r == 1 {
            let g = |y: &Float| parts[0].at(y);
            let mut acc = hp::zero(prec);
            for (a, b) in &pan {
                acc += vertical_integral(&g, a, b, &rule)?;
            }
            return Ok(acc);
        }
        let g2 = |y: &Float| parts[1].at(y);
        let mut later = vec![hp::zero(prec); pan.len()];
        for p in (0..pan.len().saturating_sub(1)).rev() {
            let (a, b) = &pan[p + 1];
            later[p] = Complex::with_val(prec, &later[p + 1] + vertical_integral(&g2, a, b, &rule)?);
        }
        let mut acc = hp::zero(prec);
        for (p, (a, b)) in pan.iter().enumerate() {
            let g = |u: &Float| -> Result<Complex> {
                let inner = vertical_integral(&g2, u, b, &rule)? + &later[p];
                Ok(parts[0].at(u)? * inner)
            };
            acc += vertical_integral(&g, a, b, &rule)?;
        }
        Ok(acc)
    };
    let coarse = run(base)?;
    let fine = run(base + base / 2)?;
    let err = hp::abs_f64(&(Complex::with_val(prec, &fine - &coarse)));
    if err + tail > tol {
        return Err(Error::Quadrature(format!(
            "estimated error {:.3e} + tail {:.3e} exceeds tolerance {:.3e}",
            err, tail, tol
        )));
    }
    Ok(Certified {
        value: fine,
        tail_bound: err + tail,
        terms: pan.len(),
        warning: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_index;
    use crate::hp::abs_f64;
    use crate::integrals::{elem_exp_tail, int_eval};
    use rug::ops::Pow;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let rule = gauss_legendre(10, 200);
        let s: Float = rule.1.iter().fold(Float::new(200), |acc, w| acc + w);
        assert!((s - 2u32).abs().to_f64() < 1e-55);
        let x18: Float = rule
            .0
            .iter()
            .zip(&rule.1)
            .fold(Float::new(200), |acc, (x, w)| acc + Float::with_val(200, x.pow(18u32)) * w);
        assert!((x18 - Float::with_val(200, 2) / 19u32).abs().to_f64() < 1e-55);
    }

    #[test]
    fn constant_segment() {
        let e = Engine::default();
        let p = e.prec();
        let one = Factor::Const(hp::one(p));
        let path = PathSpec::segment(Complex::with_val(p, (0, 1)), 2.0);
        let v = quad_oracle(&[one], &[1], &path, 1e-30, &e).unwrap().value;
        assert!(abs_f64(&(v - Complex::with_val(p, (0, 1)))) < 1e-40);
    }

    #[test]
    fn single_cusp_matches_closed_form() {
        let e = Engine::default();
        let p = e.prec();
        let i = Complex::with_val(p, (0, 1));
        let q = quad_oracle(&[Factor::Cusp(2)], &[3], &PathSpec::to_infinity(i.clone()), 1e-26, &e).unwrap();
        let sig = crate::eisenstein::sigma_table(3, 60);
        let mut closed = hp::zero(p);
        for n in 1..60u64 {
            closed += elem_exp_tail(n, 3, &i).unwrap() * Float::with_val(p, &sig[n as usize]);
        }
        assert!(abs_f64(&(q.value - closed)) < 1e-25);
    }

    #[test]
    fn double_cusp_matches_closed_form() {
        let e = Engine::default();
        let p = e.prec();
        let tau = Complex::with_val(p, (0, 2));
        let f = [Factor::Cusp(2), Factor::Cusp(2)];
        let q = quad_oracle(&f, &[1, 1], &PathSpec::to_infinity(tau.clone()), 1e-22, &e).unwrap();
        let c = int_eval(&make_index(&[2, 2], &[1, 1], 0).unwrap(), &tau, &e.budget()).unwrap();
        assert!(abs_f64(&(q.value - c.value)) < 1e-20);
    }

    #[test]
    fn rejects_divergent_paths() {
        let e = Engine::default();
        let p = e.prec();
        let path = PathSpec::to_infinity(Complex::with_val(p, (0, 1)));
        assert!(quad_oracle(&[Factor::Const(hp::one(p))], &[1], &path, 1e-20, &e).is_err());
        assert!(quad_oracle(&[Factor::Cusp(2), Factor::Cusp(2), Factor::Cusp(2)], &[1; 3], &path, 1e-20, &e).is_err());
    }
}

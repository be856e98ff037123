//! Divisor sums, Bernoulli numbers and Hecke-normalized Eisenstein series
//! `E_{2k} = -b_{2k}/(4k) + sum_{n>0} sigma_{2k-1}(n) q^n`.

use crate::error::{Error, Result};
use crate::hp;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationBudget {
    pub eps: f64,
    pub n_max: usize,
}

impl TruncationBudget {
    pub fn new(eps: f64, n_max: usize) -> Result<Self> {
        if !(eps > 0.0) || n_max < 1 {
            return Err(Error::InvalidArgument(format!(
                "budget needs eps > 0 and n_max >= 1 (eps={}, n_max={})",
                eps, n_max
            )));
        }
        Ok(TruncationBudget { eps, n_max })
    }
}

/// A truncated sum together with a rigorous bound on the discarded tail.
#[derive(Clone, Debug)]
pub struct Certified {
    pub value: Complex,
    pub tail_bound: f64,
    pub terms: usize,
    pub warning: Option<String>,
}

pub fn divisor_sigma(w: u32, n: u64) -> Integer {
    assert!(n >= 1, "divisor_sigma needs n >= 1");
    let mut acc = Integer::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            acc += Integer::from(d).pow(w);
            let e = n / d;
            if e != d {
                acc += Integer::from(e).pow(w);
            }
        }
        d += 1;
    }
    acc
}

type SigmaCache = RwLock<HashMap<u32, Arc<Vec<Integer>>>>;
type SigmaFloatCache = Mutex<HashMap<(u32, u32), Arc<Vec<Float>>>>;

fn sigma_cache() -> &'static SigmaCache {
    static C: OnceLock<SigmaCache> = OnceLock::new();
    C.get_or_init(Default::default)
}

/// `t[n] = sigma_w(n)` for `1 <= n <= len-1` (`t[0] = 0`), sieved and memoized.
pub fn sigma_table(w: u32, n: usize) -> Arc<Vec<Integer>> {
    if let Some(t) = sigma_cache().read().unwrap().get(&w) {
        if t.len() > n {
            return t.clone();
        }
    }
    let mut guard = sigma_cache().write().unwrap();
    if let Some(t) = guard.get(&w) {
        if t.len() > n {
            return t.clone();
        }
    }
    let old = guard.get(&w).map_or(0, |t| t.len());
    let size = n.max(2 * old).max(64);
    let mut t = vec![Integer::new(); size + 1];
    for d in 1..=size {
        let dw = Integer::from(d).pow(w);
        for m in (d..=size).step_by(d) {
            t[m] += &dw;
        }
    }
    let t = Arc::new(t);
    guard.insert(w, t.clone());
    t
}

/// Float copy of `sigma_table` at precision `prec`.
pub fn sigma_floats(w: u32, n: usize, prec: u32) -> Arc<Vec<Float>> {
    static C: OnceLock<SigmaFloatCache> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    if let Some(t) = cache.lock().unwrap().get(&(w, prec)) {
        if t.len() > n {
            return t.clone();
        }
    }
    let ints = sigma_table(w, n);
    let t: Arc<Vec<Float>> = Arc::new(ints.iter().map(|x| Float::with_val(prec, x)).collect());
    cache.lock().unwrap().insert((w, prec), t.clone());
    t
}

/// Bernoulli number b_m with b_1 = -1/2.
pub fn bernoulli(m: u32) -> Rational {
    static C: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let mut b = C
        .get_or_init(|| Mutex::new(vec![Rational::from(1)]))
        .lock()
        .unwrap();
    while b.len() <= m as usize {
        let n = b.len() as u32;
        let mut s = Rational::new();
        for (j, bj) in b.iter().enumerate() {
            s += Integer::from(Integer::binomial_u(n + 1, j as u32)) * bj.clone();
        }
        b.push(-s / (n + 1));
    }
    b[m as usize].clone()
}

/// Constant term `-b_{2k}/(4k)`.
pub fn eis_constant(k: u32) -> Rational {
    assert!(k >= 2, "eis_constant needs k >= 2");
    -bernoulli(2 * k) / (4 * k)
}

/// ln of an upper bound for `sum_{n>=n0} n^p r^n`, where `ln_r = ln r < 0`.
#[cfg(test)]
pub(crate) fn ln_power_geometric_tail(p: f64, ln_r: f64, n0: usize) -> f64 {
    debug_assert!(ln_r < 0.0);
    let n0 = n0.max(1);
    let mut acc = f64::NEG_INFINITY;
    let mut n = n0;
    loop {
        let ln_term = p * (n as f64).ln() + n as f64 * ln_r;
        let ln_rho = p * ((n + 1) as f64 / n as f64).ln() + ln_r;
        if ln_rho < -1e-3 {
            let ln_geo = ln_term - (-ln_rho.exp()).ln_1p();
            return log_add(acc, ln_geo);
        }
        acc = log_add(acc, ln_term);
        n += 1;
    }
}

#[cfg(test)]
fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Smallest N with `scale * sum_{n>N} n^p r^n <= eps`; returns (N, bound).
pub(crate) fn power_geometric_cutoff(
    p: f64,
    ln_r: f64,
    ln_scale: f64,
    budget: &TruncationBudget,
) -> Result<(usize, f64)> {
    if !(ln_r < 0.0) {
        return Err(Error::InvalidArgument("series ratio must be < 1".into()));
    }
    let ln_eps = budget.eps.ln();
    for n in 0..=budget.n_max {
        let n1 = (n + 1) as f64;
        let ln_rho = p * ((n + 2) as f64 / n1).ln() + ln_r;
        if ln_rho >= -1e-3 {
            continue;
        }
        let ln_b = ln_scale + p * n1.ln() + n1 * ln_r - (-ln_rho.exp()).ln_1p();
        if ln_b <= ln_eps {
            return Ok((n, ln_b.exp()));
        }
    }
    Err(Error::Budget(format!(
        "tail bound not met within n_max = {} (ratio exp({:.4}))",
        budget.n_max, ln_r
    )))
}

/// `sum_{n=1}^N sigma_{2k-1}(n) q^n` with a certified tail bound below `budget.eps`.
pub fn eis_cusp_eval(k: u32, tau: &Complex, budget: &TruncationBudget) -> Result<Certified> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {} < 2", k)));
    }
    let prec = tau.prec().0;
    let y = tau.imag().to_f64();
    if !(y > 0.0) {
        return Err(Error::InvalidArgument("Im tau must be positive".into()));
    }
    let ln_r = -2.0 * std::f64::consts::PI * y;
    let (n, bound) = power_geometric_cutoff(2.0 * k as f64, ln_r, 0.0, budget)?;
    let q = (hp::two_pi_i(prec) * tau).exp();
    Ok(Certified {
        value: horner(&sigma_floats(2 * k - 1, n, prec), n, &q),
        tail_bound: bound,
        terms: n,
        warning: None,
    })
}

/// `sum_{n=1}^N c[n] q^n`.
pub(crate) fn horner(c: &[Float], n: usize, q: &Complex) -> Complex {
    let prec = q.prec().0;
    let mut acc = hp::zero(prec);
    for m in (1..=n).rev() {
        acc += &c[m];
        acc *= q;
    }
    acc
}

/// Full `E_{2k}(tau)`.
pub fn eis_eval(k: u32, tau: &Complex, budget: &TruncationBudget) -> Result<Certified> {
    let mut c = eis_cusp_eval(k, tau, budget)?;
    c.value += hp::from_rational(&eis_constant(k), tau.prec().0);
    Ok(c)
}

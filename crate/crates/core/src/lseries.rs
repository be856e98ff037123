//! Multiple Eisenstein L-series
//! `L^{(t)}(k; alpha)(tau) = (2 pi i)^{-sum alpha} tau^t sum_m c(m) q^m`, where
//! `c(m) = sum_{n_1+..+n_r=m} prod sigma_{2k_i-1}(n_i) / prod (n_i+..+n_r)^{alpha_i}`.

use crate::algebra::{rational_to_string, CompositeIndex};
use crate::eisenstein::{power_geometric_cutoff, sigma_table, Certified, TruncationBudget};
use crate::error::{Error, Result};
use crate::hp;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct LCoefficients {
    pub index: CompositeIndex,
    pub n: usize,
    /// `coeffs[m-1] = c(m)`.
    pub coeffs: Vec<Rational>,
}

impl LCoefficients {
    pub fn c(&self, m: usize) -> &Rational {
        &self.coeffs[m - 1]
    }

    /// CSV with header `m,c`, values as `p/q`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record(["m", "c"]).map_err(|e| Error::Io(e.to_string()))?;
        for (m, c) in self.coeffs.iter().enumerate() {
            w.write_record([(m + 1).to_string(), rational_to_string(c)])
                .map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

fn sigmas(index: &CompositeIndex, n: usize) -> Vec<std::sync::Arc<Vec<Integer>>> {
    index.ks().iter().map(|&k| sigma_table(2 * k - 1, n)).collect()
}

fn pow_den(m: usize, a: u32) -> Integer {
    Integer::from(m).pow(a)
}

/// Backward recursion over suffix sums, O(r N^2) exact operations.
pub fn l_coeffs_dp(index: &CompositeIndex, n: usize) -> Result<LCoefficients> {
    let r = index.depth();
    if r == 0 {
        return Err(Error::InvalidIndex("l_coeffs_dp needs depth >= 1".into()));
    }
    let sig = sigmas(index, n);
    let al = index.alphas();
    let mut s: Vec<Rational> = (0..=n)
        .map(|m| {
            if m == 0 {
                Rational::new()
            } else {
                Rational::from((sig[r - 1][m].clone(), pow_den(m, al[r - 1])))
            }
        })
        .collect();
    for j in (0..r - 1).rev() {
        let mut next = vec![Rational::new(); n + 1];
        for (m, slot) in next.iter_mut().enumerate().skip(1) {
            let mut acc = Rational::new();
            for p in 1..m {
                if s[m - p] != 0 {
                    acc += Rational::from(&s[m - p] * &sig[j][p]);
                }
            }
            *slot = acc / pow_den(m, al[j]);
        }
        s = next;
    }
    Ok(LCoefficients {
        index: index.clone(),
        n,
        coeffs: s.into_iter().skip(1).collect(),
    })
}

/// Literal enumeration of all compositions; guarded to r <= 4, N <= 200.
pub fn l_coeffs_bruteforce(index: &CompositeIndex, n: usize) -> Result<LCoefficients> {
    let r = index.depth();
    if r == 0 || r > 4 || n > 200 {
        return Err(Error::InvalidArgument(format!(
            "brute force limited to 1 <= r <= 4 and N <= 200 (r={}, N={})",
            r, n
        )));
    }
    let sig = sigmas(index, n);
    let al = index.alphas();
    let mut coeffs = Vec::with_capacity(n);
    let mut parts = vec![0usize; r];
    for m in 1..=n {
        let mut acc = Rational::new();
        enumerate(m, 0, &mut parts, &mut |p| {
            let mut num = Integer::from(1);
            let mut den = Integer::from(1);
            let mut suffix = 0usize;
            for i in (0..r).rev() {
                suffix += p[i];
                num *= &sig[i][p[i]];
                den *= pow_den(suffix, al[i]);
            }
            acc += Rational::from((num, den));
        });
        coeffs.push(acc);
    }
    Ok(LCoefficients {
        index: index.clone(),
        n,
        coeffs,
    })
}

fn enumerate(rest: usize, pos: usize, parts: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    let r = parts.len();
    if pos == r - 1 {
        if rest >= 1 {
            parts[pos] = rest;
            f(parts);
        }
        return;
    }
    let slots_after = r - pos - 1;
    if rest < slots_after + 1 {
        return;
    }
    for v in 1..=rest - slots_after {
        parts[pos] = v;
        enumerate(rest - v, pos + 1, parts, f);
    }
}

/// Certified evaluation; depth 0 gives `tau^t`.
pub fn l_eval(index: &CompositeIndex, tau: &Complex, budget: &TruncationBudget) -> Result<Certified> {
    let prec = tau.prec().0;
    let y = tau.imag().to_f64();
    if !(y > 0.0) {
        return Err(Error::InvalidArgument("Im tau must be positive".into()));
    }
    let tau_t = hp::powi(tau, index.t() as i64);
    if index.depth() == 0 {
        return Ok(Certified {
            value: tau_t,
            tail_bound: 0.0,
            terms: 0,
            warning: None,
        });
    }
    let warning = (y < 0.1).then(|| format!("Im tau = {} < 0.1: truncation order grows like 1/Im tau", y));
    let two_pi = std::f64::consts::TAU;
    let sa = index.alpha_sum() as f64;
    // c(m) <= C(m-1, r-1) prod n_i^{2k_i} <= m^{2 sum k + r - 1}
    let p = 2.0 * index.upper_weight() as f64 + index.depth() as f64 - 1.0;
    let abs_tau = hp::abs_f64(tau);
    let ln_scale = index.t() as f64 * abs_tau.ln() - sa * two_pi.ln();
    let (n, bound) = power_geometric_cutoff(p, -two_pi * y, ln_scale, budget)?;
    let coeffs = l_coeffs_dp(index, n.max(1))?;
    let cf: Vec<Float> = std::iter::once(Float::new(prec))
        .chain(coeffs.coeffs.iter().map(|c| Float::with_val(prec, c)))
        .collect();
    let q = (hp::two_pi_i(prec) * tau).exp();
    let series = crate::eisenstein::horner(&cf, n, &q);
    let pre = hp::powi(&hp::two_pi_i(prec), -(index.alpha_sum() as i64));
    Ok(Certified {
        value: series * pre * tau_t,
        tail_bound: bound,
        terms: n,
        warning,
    })
}

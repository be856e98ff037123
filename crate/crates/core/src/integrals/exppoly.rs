use crate::eisenstein::sigma_floats;
use crate::error::{Error, Result};
use crate::hp;
use rug::{Complex, Float};
use std::collections::BTreeMap;
use std::fmt;

/// `f(t) = sum_n P_n(t) e^{2 pi i n t}`; `terms[n][d]` is the coefficient of `t^d` in `P_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpPoly {
    prec: u32,
    terms: BTreeMap<u64, Vec<Complex>>,
}

fn trim(p: &mut Vec<Complex>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn add_into(dst: &mut Vec<Complex>, d: usize, c: &Complex, prec: u32) {
    if dst.len() <= d {
        dst.resize(d + 1, hp::zero(prec));
    }
    dst[d] += c;
}

impl ExpPoly {
    pub fn zero(prec: u32) -> Self {
        ExpPoly {
            prec,
            terms: BTreeMap::new(),
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Single term `P(t) e^{2 pi i n t}`.
    pub fn term(n: u64, poly: Vec<Complex>, prec: u32) -> Self {
        let mut e = ExpPoly::zero(prec);
        e.insert(n, poly);
        e
    }

    fn insert(&mut self, n: u64, mut poly: Vec<Complex>) {
        trim(&mut poly);
        if poly.is_empty() {
            self.terms.remove(&n);
        } else {
            self.terms.insert(n, poly);
        }
    }

    /// Truncated cusp part `sum_{n=1}^{ncut} sigma_{2k-1}(n) e^{2 pi i n t}`.
    pub fn cusp_series(k: u32, ncut: usize, prec: u32) -> Self {
        let sig = sigma_floats(2 * k - 1, ncut, prec);
        let terms = (1..=ncut)
            .map(|n| (n as u64, vec![Complex::with_val(prec, &sig[n])]))
            .collect();
        ExpPoly { prec, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &[Complex])> {
        self.terms.iter().map(|(n, p)| (*n, p.as_slice()))
    }

    pub fn max_frequency(&self) -> u64 {
        self.terms.keys().next_back().copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.terms.values().map(|p| p.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn mul_tpow(&self, m: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(n, p)| {
                let mut q = vec![hp::zero(self.prec); m];
                q.extend(p.iter().cloned());
                (*n, q)
            })
            .collect();
        ExpPoly {
            prec: self.prec,
            terms,
        }
    }

    pub fn scale(&self, c: &Complex) -> Self {
        let mut out = ExpPoly::zero(self.prec);
        for (n, p) in &self.terms {
            out.insert(*n, p.iter().map(|x| Complex::with_val(self.prec, x * c)).collect());
        }
        out
    }

    pub fn add(&self, other: &ExpPoly) -> Self {
        let mut out = self.clone();
        for (n, p) in &other.terms {
            let mut q = out.terms.remove(n).unwrap_or_default();
            for (d, c) in p.iter().enumerate() {
                add_into(&mut q, d, c, self.prec);
            }
            out.insert(*n, q);
        }
        out
    }

    /// Product with frequencies above `ncut` dropped.
    pub fn mul(&self, other: &ExpPoly, ncut: u64) -> Self {
        let prec = self.prec;
        let mut acc: BTreeMap<u64, Vec<Complex>> = BTreeMap::new();
        for (n, p) in &self.terms {
            for (m, q) in other.terms.range(..=ncut.saturating_sub(*n)) {
                let slot = acc.entry(n + m).or_default();
                for (i, a) in p.iter().enumerate() {
                    for (j, b) in q.iter().enumerate() {
                        add_into(slot, i + j, &Complex::with_val(prec, a * b), prec);
                    }
                }
            }
        }
        let mut out = ExpPoly::zero(prec);
        for (n, p) in acc {
            out.insert(n, p);
        }
        out
    }

    /// Product with the truncated cusp part of `E_{2k}`; real sigma weights keep this cheap.
    pub fn mul_cusp(&self, k: u32, ncut: u64) -> Self {
        let prec = self.prec;
        let sig = sigma_floats(2 * k - 1, ncut as usize, prec);
        let mut acc: BTreeMap<u64, Vec<Complex>> = BTreeMap::new();
        for (n, p) in &self.terms {
            for m in 1..=ncut.saturating_sub(*n) {
                let s: &Float = &sig[m as usize];
                let slot = acc.entry(n + m).or_default();
                for (d, a) in p.iter().enumerate() {
                    add_into(slot, d, &Complex::with_val(prec, a * s), prec);
                }
            }
        }
        let mut out = ExpPoly::zero(prec);
        for (n, p) in acc {
            out.insert(n, p);
        }
        out
    }

    /// `g(t) = int_t^{i inf} f(s) s^{alpha-1} ds`, termwise by the closed form
    /// `int_t^{i inf} s^m e^{cs} ds = -e^{ct} sum_j (-1)^j m!/(m-j)! t^{m-j} / c^{j+1}`.
    pub fn tail_integral(&self, alpha: u32) -> Result<ExpPoly> {
        if alpha < 1 {
            return Err(Error::InvalidArgument("tail integration needs alpha >= 1".into()));
        }
        if self.terms.contains_key(&0) {
            return Err(Error::Divergent(
                "frequency-0 part is nonzero; the tail integral diverges".into(),
            ));
        }
        let prec = self.prec;
        let mut out = ExpPoly::zero(prec);
        for (n, p) in &self.terms {
            let c = hp::two_pi_i(prec) * Float::with_val(prec, *n);
            let top = p.len() + alpha as usize - 1;
            // inv[j] = -(-1)^j / c^{j+1}
            let cinv = Complex::with_val(prec, c.recip_ref());
            let mut inv = Vec::with_capacity(top);
            let mut cur = -cinv.clone();
            for _ in 0..top {
                inv.push(cur.clone());
                cur *= &cinv;
                cur = -cur;
            }
            let mut g = vec![hp::zero(prec); top];
            for (d, coef) in p.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let m = d + alpha as usize - 1;
                // falling factorial m!/(m-j)!
                let mut ff = Float::with_val(prec, 1);
                for j in 0..=m {
                    let term = Complex::with_val(prec, coef * &inv[j]) * &ff;
                    g[m - j] += term;
                    ff *= (m - j) as u32;
                }
            }
            out.insert(*n, g);
        }
        Ok(out)
    }

    pub fn derivative(&self) -> Self {
        let prec = self.prec;
        let mut out = ExpPoly::zero(prec);
        for (n, p) in &self.terms {
            let c = hp::two_pi_i(prec) * Float::with_val(prec, *n);
            let mut q: Vec<Complex> = p.iter().map(|a| Complex::with_val(prec, a * &c)).collect();
            for (d, a) in p.iter().enumerate().skip(1) {
                q[d - 1] += Complex::with_val(prec, a * d as u32);
            }
            out.insert(*n, q);
        }
        out
    }

    pub fn eval(&self, t: &Complex) -> Complex {
        let prec = self.prec;
        let q = (hp::two_pi_i(prec) * t).exp();
        let mut acc = hp::zero(prec);
        let mut qn = hp::one(prec);
        let mut at = 0u64;
        for (n, p) in &self.terms {
            qn *= hp::powi(&q, (*n - at) as i64);
            at = *n;
            let mut poly = hp::zero(prec);
            for c in p.iter().rev() {
                poly *= t;
                poly += c;
            }
            acc += poly * &qn;
        }
        acc
    }

    /// Largest coefficient modulus, for symbolic zero checks.
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|p| p.iter())
            .map(hp::abs_f64)
            .fold(0.0, f64::max)
    }

    /// Debug dump, one line per frequency: `n; c0, c1, ...`.
    pub fn dump(&self, digits: usize) -> String {
        self.to_string_with(digits)
    }

    fn to_string_with(&self, digits: usize) -> String {
        let mut s = String::new();
        for (n, p) in &self.terms {
            let cs: Vec<String> = p.iter().map(|c| hp::format_complex(c, digits)).collect();
            s.push_str(&format!("{}; {}\n", n, cs.join(", ")));
        }
        s
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(12))
    }
}

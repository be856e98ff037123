//! Exact rewrite maps between iterated tau-integrals and multiple L-series.
//!
//! Conventions (resolved numerically, see the `numeric_faithfulness` tests):
//!
//! * `int_to_l`: layers are peeled from the innermost letter outward. With the carried
//!   power `A_j = alpha_j + t_{j+1}` (`t_{r+1} = 0`) and `1 <= i_j <= A_j`,
//!   the weight is `prod (-1)^{i_j} (A_j - 1)!/(A_j - i_j)!`, `t_j = A_j - i_j`, and the
//!   term is `L^{(t_1)}(k; i_1, ..., i_r)` with `t_1 = sum alpha - sum i`.
//! * `l_to_int`: `L^{(t)}(k; alpha)` equals `(-1)^{sum alpha} / prod (alpha_j - 1)!` times
//!   `sum_{0 <= i_j < alpha_j} prod C(alpha_j - 1, i_j) (-1)^{sum i} tau^{t + i_1}
//!   Int(k; alpha_j - i_j + i_{j+1})` with `i_{r+1} = 0`.

use crate::algebra::{binomial, falling, factorial, CompositeIndex, FormalSum, GenKind, Generator};
use crate::eisenstein::{Certified, TruncationBudget};
use crate::error::{Error, Result};
use crate::integrals::int_eval;
use crate::lseries::l_eval;
use rug::{Integer, Rational};
use std::collections::BTreeMap;

/// A letter `(k, alpha)`.
pub type Letter = (u32, u32);

/// All interleavings of `u` and `v`, with repetition (length `C(|u|+|v|, |u|)`).
pub fn shuffle_words(u: &[Letter], v: &[Letter]) -> Vec<Vec<Letter>> {
    if u.is_empty() {
        return vec![v.to_vec()];
    }
    if v.is_empty() {
        return vec![u.to_vec()];
    }
    let mut out = Vec::new();
    for mut w in shuffle_words(&u[1..], v) {
        w.insert(0, u[0]);
        out.push(w);
    }
    for mut w in shuffle_words(u, &v[1..]) {
        w.insert(0, v[0]);
        out.push(w);
    }
    out
}

/// Shuffle product of two integral words as a sum of `Int` generators (coefficient 1 per
/// interleaving, multiplicities accumulated).
pub fn shuffle_product(u: &[Letter], v: &[Letter]) -> Result<FormalSum> {
    let mut out = FormalSum::new();
    for w in shuffle_words(u, v) {
        out.add_term(Generator::integral(CompositeIndex::from_letters(&w, 0)?, 0), Rational::from(1));
    }
    Ok(out)
}

/// `Int(k; alpha)` as a combination of `L^{(t)}` generators (the index's `t` is ignored).
pub fn int_to_l(index: &CompositeIndex) -> Result<FormalSum> {
    if index.depth() == 0 {
        return Err(Error::InvalidIndex("int_to_l needs depth >= 1".into()));
    }
    int_to_l_with_power(index, 0)
}

/// `tau^j Int(k; alpha)` as L-series: the outer `tau^j` is folded into `t`.
fn int_to_l_with_power(index: &CompositeIndex, j: u32) -> Result<FormalSum> {
    let mut out = FormalSum::new();
    let letters = index.letters();
    let r = letters.len();
    if r == 0 {
        out.add_term(Generator::lseries(index.with_t(j)), Rational::from(1));
        return Ok(out);
    }
    // states: (chosen i_j for the processed suffix, carried power t, coefficient)
    let mut states: Vec<(Vec<u32>, u32, Integer)> = vec![(Vec::new(), 0, Integer::from(1))];
    for &(_, alpha) in letters.iter().rev() {
        let mut next = Vec::new();
        for (is, t, c) in &states {
            let a = alpha + t;
            for i in 1..=a {
                let mut w: Integer = c * falling(a as i64 - 1, i as i64 - 1);
                if i % 2 == 1 {
                    w = -w;
                }
                let mut is2 = vec![i];
                is2.extend_from_slice(is);
                next.push((is2, a - i, w));
            }
        }
        states = next;
    }
    for (is, t, c) in states {
        let ks = index.ks().to_vec();
        let idx = CompositeIndex::new(ks, is, t + j)?;
        out.add_term(Generator::lseries(idx), Rational::from(c));
    }
    Ok(out)
}

/// `tau^t L(k; alpha)` as a combination of `tau^j Int(...)` generators.
pub fn l_to_int(g: &Generator) -> Result<FormalSum> {
    if g.kind() != GenKind::LSeries {
        return Err(Error::InvalidArgument("l_to_int expects an L-series generator".into()));
    }
    let index = g.index();
    let t = index.t();
    let mut out = FormalSum::new();
    let r = index.depth();
    if r == 0 {
        out.add_term(Generator::integral(index.clone(), t), Rational::from(1));
        return Ok(out);
    }
    let al = index.alphas();
    let mut den = Integer::from(1);
    for &a in al {
        den *= factorial(a - 1);
    }
    let pre = Rational::from((if index.alpha_sum() % 2 == 0 { 1 } else { -1 }, den));
    let mut is = vec![0u32; r];
    loop {
        let mut c = Integer::from(1);
        let mut shifted = Vec::with_capacity(r);
        for j in 0..r {
            c *= binomial(al[j] as i64 - 1, is[j] as i64);
            let next = if j + 1 < r { is[j + 1] } else { 0 };
            let s = al[j] as i64 - is[j] as i64 + next as i64;
            assert!(s >= 1, "shifted exponent must stay positive");
            shifted.push(s as u32);
        }
        if is.iter().sum::<u32>() % 2 == 1 {
            c = -c;
        }
        let idx = CompositeIndex::new(index.ks().to_vec(), shifted, 0)?;
        out.add_term(Generator::integral(idx, t + is[0]), Rational::from(c) * &pre);
        // odometer over 0 <= i_j < alpha_j
        let mut j = 0;
        loop {
            if j == r {
                return Ok(out);
            }
            is[j] += 1;
            if is[j] < al[j] {
                break;
            }
            is[j] = 0;
            j += 1;
        }
    }
}

/// Linear extension of `int_to_l`; L-series generators pass through unchanged.
pub fn int_to_l_sum(s: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::new();
    for (g, c) in s.terms() {
        match g.kind() {
            GenKind::TauIntegral => out.add_scaled(&int_to_l_with_power(g.index(), g.tau_power())?, c),
            GenKind::LSeries => out.add_term(g.clone(), c.clone()),
        }
    }
    Ok(out)
}

/// Linear extension of `l_to_int`; integral generators pass through unchanged.
pub fn l_to_int_sum(s: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::new();
    for (g, c) in s.terms() {
        match g.kind() {
            GenKind::LSeries => out.add_scaled(&l_to_int(g)?, c),
            GenKind::TauIntegral => out.add_term(g.clone(), c.clone()),
        }
    }
    Ok(out)
}

type Word = Vec<Letter>;

fn stuffle_words(a: &[Letter], b: &[Letter], memo: &mut BTreeMap<(Word, Word), BTreeMap<Word, Integer>>) -> BTreeMap<Word, Integer> {
    if a.is_empty() || b.is_empty() {
        let w = if a.is_empty() { b.to_vec() } else { a.to_vec() };
        return BTreeMap::from([(w, Integer::from(1))]);
    }
    let key = (a.to_vec(), b.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let (k1, a1) = a[0];
    let (l1, b1) = b[0];
    let mut out: BTreeMap<Word, Integer> = BTreeMap::new();
    let mut push = |head: Letter, coef: Integer, rest: BTreeMap<Word, Integer>| {
        if coef == 0 {
            return;
        }
        for (w, c) in rest {
            let mut full = vec![head];
            full.extend(w);
            *out.entry(full).or_default() += Integer::from(&coef * &c);
        }
    };
    // 1/(M^a N^b) = sum_{c+d=a+b} [C(c-1,a-1)/((M+N)^c N^d) + C(c-1,b-1)/((M+N)^c M^d)]
    for c in 1..a1 + b1 {
        let d = a1 + b1 - c;
        let ca = binomial(c as i64 - 1, a1 as i64 - 1);
        if ca != 0 {
            let mut b2 = b.to_vec();
            b2[0].1 = d;
            let rest = stuffle_words(&a[1..], &b2, memo);
            push((k1, c), ca, rest);
        }
        let cb = binomial(c as i64 - 1, b1 as i64 - 1);
        if cb != 0 {
            let mut a2 = a.to_vec();
            a2[0].1 = d;
            let rest = stuffle_words(&a2, &b[1..], memo);
            push((l1, c), cb, rest);
        }
    }
    out.retain(|_, c| *c != 0);
    memo.insert(key, out.clone());
    out
}

/// Product of two `L^{(0)}` series expanded by partial fractions on the outer partial sums.
pub fn stuffle_product(g1: &Generator, g2: &Generator) -> Result<FormalSum> {
    for g in [g1, g2] {
        if g.kind() != GenKind::LSeries || g.index().t() != 0 || g.length() == 0 {
            return Err(Error::InvalidArgument(format!(
                "stuffle_product needs L-series generators of depth >= 1 with t = 0, got {}",
                g
            )));
        }
    }
    let mut memo = BTreeMap::new();
    let words = stuffle_words(&g1.index().letters(), &g2.index().letters(), &mut memo);
    let mut out = FormalSum::new();
    for (w, c) in words {
        out.add_term(Generator::lseries(CompositeIndex::from_letters(&w, 0)?), Rational::from(c));
    }
    Ok(out)
}

/// Numeric value of a formal sum at `tau`; tail bounds add up, weighted by `|c|`.
pub fn eval_sum(s: &FormalSum, tau: &rug::Complex, budget: &TruncationBudget) -> Result<Certified> {
    let prec = tau.prec().0;
    let mut value = crate::hp::zero(prec);
    let mut tail_bound = 0.0;
    let mut terms = 0;
    for (g, c) in s.terms() {
        let v = match g.kind() {
            GenKind::LSeries => l_eval(g.index(), tau, budget)?,
            GenKind::TauIntegral => {
                let mut v = int_eval(g.index(), tau, budget)?;
                let tp = crate::hp::powi(tau, g.tau_power() as i64);
                v.tail_bound *= crate::hp::abs_f64(&tp);
                v.value *= tp;
                v
            }
        };
        value += v.value * crate::hp::from_rational(c, prec);
        tail_bound += v.tail_bound * c.to_f64().abs();
        terms = terms.max(v.terms);
    }
    Ok(Certified { value, tail_bound, terms, warning: None })
}

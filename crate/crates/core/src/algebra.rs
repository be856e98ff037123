//! Exact-rational indices, generators and formal linear combinations.
//!
//! Text syntax: `L{ks=[2,3];alphas=[1,2];t=0}`, `I{ks=[2,3];alphas=[1,2];taupow=1}`,
//! rationals as `p/q`, sums as `c*G + c*G`.

use crate::error::{Error, Result};
use rug::{Integer, Rational};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 || n < 0 || k > n {
        return Integer::new();
    }
    Integer::from(n).binomial(k as u32)
}

pub fn factorial(n: u32) -> Integer {
    Integer::from(Integer::factorial(n))
}

/// a!/(a-j)! = a(a-1)...(a-j+1).
pub fn falling(a: i64, j: i64) -> Integer {
    let mut acc = Integer::from(1);
    for s in 0..j {
        acc *= a - s;
    }
    acc
}

pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational '{}'", s));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = Integer::from_str(p.trim()).map_err(|_| bad())?;
            let q = Integer::from_str(q.trim()).map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::from((p, q)))
        }
        None => Ok(Rational::from(Integer::from_str(s).map_err(|_| bad())?)),
    }
}

/// The symbol (k_1..k_r; alpha_1..alpha_r; t).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeIndex {
    ks: Vec<u32>,
    alphas: Vec<u32>,
    t: u32,
}

pub fn make_index(ks: &[i64], alphas: &[i64], t: i64) -> Result<CompositeIndex> {
    if ks.len() != alphas.len() {
        return Err(Error::InvalidIndex(format!(
            "ks has length {} but alphas has length {}",
            ks.len(),
            alphas.len()
        )));
    }
    if let Some(k) = ks.iter().find(|&&k| k < 2) {
        return Err(Error::InvalidIndex(format!("k = {} < 2", k)));
    }
    if let Some(a) = alphas.iter().find(|&&a| a < 1) {
        return Err(Error::InvalidIndex(format!("alpha = {} < 1", a)));
    }
    if t < 0 {
        return Err(Error::InvalidIndex(format!("t = {} < 0", t)));
    }
    let conv = |v: &[i64]| -> Result<Vec<u32>> {
        v.iter()
            .map(|&x| u32::try_from(x).map_err(|_| Error::InvalidIndex(format!("{} too large", x))))
            .collect()
    };
    Ok(CompositeIndex {
        ks: conv(ks)?,
        alphas: conv(alphas)?,
        t: u32::try_from(t).map_err(|_| Error::InvalidIndex("t too large".into()))?,
    })
}

impl CompositeIndex {
    pub fn new(ks: Vec<u32>, alphas: Vec<u32>, t: u32) -> Result<Self> {
        let ks: Vec<i64> = ks.into_iter().map(i64::from).collect();
        let alphas: Vec<i64> = alphas.into_iter().map(i64::from).collect();
        make_index(&ks, &alphas, t as i64)
    }

    pub fn depth(&self) -> usize {
        self.ks.len()
    }
    pub fn ks(&self) -> &[u32] {
        &self.ks
    }
    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }
    pub fn t(&self) -> u32 {
        self.t
    }
    pub fn upper_weight(&self) -> u32 {
        self.ks.iter().sum()
    }
    pub fn lower_weight(&self) -> u32 {
        self.t + self.alphas.iter().sum::<u32>()
    }
    pub fn alpha_sum(&self) -> u32 {
        self.alphas.iter().sum()
    }
    pub fn with_t(&self, t: u32) -> CompositeIndex {
        CompositeIndex { t, ..self.clone() }
    }
    /// Letters (k_j, alpha_j), outermost first.
    pub fn letters(&self) -> Vec<(u32, u32)> {
        self.ks.iter().copied().zip(self.alphas.iter().copied()).collect()
    }
    pub fn from_letters(letters: &[(u32, u32)], t: u32) -> Result<Self> {
        CompositeIndex::new(
            letters.iter().map(|l| l.0).collect(),
            letters.iter().map(|l| l.1).collect(),
            t,
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    LSeries,
    TauIntegral,
}

/// Either `tau^t L(...)` or `tau^j Int(...)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    kind: GenKind,
    index: CompositeIndex,
    tau_power: u32,
}

impl Generator {
    pub fn lseries(index: CompositeIndex) -> Self {
        Generator {
            kind: GenKind::LSeries,
            index,
            tau_power: 0,
        }
    }

    /// `tau^tau_power * Int(ks; alphas)`; the index's t is dropped.
    pub fn integral(index: CompositeIndex, tau_power: u32) -> Self {
        Generator {
            kind: GenKind::TauIntegral,
            index: index.with_t(0),
            tau_power,
        }
    }

    pub fn kind(&self) -> GenKind {
        self.kind
    }
    pub fn index(&self) -> &CompositeIndex {
        &self.index
    }
    pub fn tau_power(&self) -> u32 {
        self.tau_power
    }
    /// t for L-series, tau_power for integrals.
    pub fn power(&self) -> u32 {
        match self.kind {
            GenKind::LSeries => self.index.t,
            GenKind::TauIntegral => self.tau_power,
        }
    }
    pub fn length(&self) -> usize {
        self.index.depth()
    }
    pub fn upper_weight(&self) -> u32 {
        self.index.upper_weight()
    }
    pub fn lower_weight(&self) -> u32 {
        self.index.alpha_sum() + self.power()
    }
    pub fn is_unit(&self) -> bool {
        self.index.depth() == 0 && self.power() == 0
    }
}

fn fmt_list(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::LSeries => write!(
                f,
                "L{{ks={};alphas={};t={}}}",
                fmt_list(&self.index.ks),
                fmt_list(&self.index.alphas),
                self.index.t
            ),
            GenKind::TauIntegral => write!(
                f,
                "I{{ks={};alphas={};taupow={}}}",
                fmt_list(&self.index.ks),
                fmt_list(&self.index.alphas),
                self.tau_power
            ),
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|x| x.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..], got '{}'", s)))?;
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer '{}'", x)))
        })
        .collect()
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, body) = if let Some(b) = s.strip_prefix("L{") {
            (GenKind::LSeries, b)
        } else if let Some(b) = s.strip_prefix("I{") {
            (GenKind::TauIntegral, b)
        } else {
            return Err(Error::Parse(format!("expected L{{..}} or I{{..}}, got '{}'", s)));
        };
        let body = body
            .strip_suffix('}')
            .ok_or_else(|| Error::Parse(format!("missing closing brace in '{}'", s)))?;
        let mut ks = None;
        let mut alphas = None;
        let mut power = None;
        for field in body.split(';') {
            let (key, val) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad field '{}'", field)))?;
            match (key.trim(), kind) {
                ("ks", _) => ks = Some(parse_list(val)?),
                ("alphas", _) => alphas = Some(parse_list(val)?),
                ("t", GenKind::LSeries) | ("taupow", GenKind::TauIntegral) => {
                    power = Some(
                        val.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad power '{}'", val)))?,
                    )
                }
                (other, _) => return Err(Error::Parse(format!("unknown field '{}'", other))),
            }
        }
        let missing = |n: &str| Error::Parse(format!("missing field '{}' in '{}'", n, s));
        let ks = ks.ok_or_else(|| missing("ks"))?;
        let alphas = alphas.ok_or_else(|| missing("alphas"))?;
        let power = power.ok_or_else(|| missing("t/taupow"))?;
        match kind {
            GenKind::LSeries => Ok(Generator::lseries(make_index(&ks, &alphas, power)?)),
            GenKind::TauIntegral => {
                if power < 0 {
                    return Err(Error::InvalidIndex(format!("taupow = {} < 0", power)));
                }
                Ok(Generator::integral(make_index(&ks, &alphas, 0)?, power as u32))
            }
        }
    }
}

/// Finite Q-linear combination of generators; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<Generator, Rational>,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum::default()
    }

    pub fn single(g: Generator, c: Rational) -> Self {
        let mut s = FormalSum::new();
        s.add_term(g, c);
        s
    }

    pub fn add_term(&mut self, g: Generator, c: Rational) {
        if c == 0 {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &FormalSum, c: &Rational) {
        for (g, v) in &other.terms {
            self.add_term(g.clone(), Rational::from(v * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> FormalSum {
        let mut out = FormalSum::new();
        out.add_scaled(self, c);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Rational)> {
        self.terms.iter()
    }
    pub fn coeff(&self, g: &Generator) -> Rational {
        self.terms.get(g).cloned().unwrap_or_default()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// (length, upper weight, lower weight) maxima; zeros for the empty sum.
    pub fn degrees(&self) -> (usize, u32, u32) {
        self.terms.keys().fold((0, 0, 0), |(l, u, w), g| {
            (l.max(g.length()), u.max(g.upper_weight()), w.max(g.lower_weight()))
        })
    }
}

/// a + c*b.
pub fn fs_combine(a: &FormalSum, b: &FormalSum, c: &Rational) -> FormalSum {
    let mut out = a.clone();
    out.add_scaled(b, c);
    out
}

pub fn fs_equal(a: &FormalSum, b: &FormalSum) -> bool {
    a == b
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| format!("{}*{}", rational_to_string(c), g))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl From<Generator> for FormalSum {
    fn from(g: Generator) -> Self {
        FormalSum::single(g, Rational::from(1))
    }
}

impl FromStr for FormalSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut out = FormalSum::new();
        if s == "0" || s.is_empty() {
            return Ok(out);
        }
        for part in s.split(" + ") {
            let (c, g) = part
                .split_once('*')
                .ok_or_else(|| Error::Parse(format!("expected 'c*G', got '{}'", part)))?;
            out.add_term(g.parse()?, parse_rational(c)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(ks: &[i64], al: &[i64], t: i64) -> Generator {
        Generator::lseries(make_index(ks, al, t).unwrap())
    }

    fn q(p: i64, d: i64) -> Rational {
        Rational::from((p, d))
    }

    #[test]
    fn index_construction() {
        let i = make_index(&[2], &[1], 0).unwrap();
        assert_eq!(i.depth(), 1);
        let e = make_index(&[], &[], 0).unwrap();
        assert_eq!(e.depth(), 0);
        assert!(make_index(&[2], &[0], 0).is_err());
        assert!(make_index(&[1], &[1], 0).is_err());
        assert!(make_index(&[2], &[1], -1).is_err());
        assert!(make_index(&[2, 3], &[1], 0).is_err());
        let i = make_index(&[2, 5], &[3, 1], 2).unwrap();
        assert_eq!((i.upper_weight(), i.lower_weight()), (7, 6));
    }

    #[test]
    fn combine_examples() {
        let x = FormalSum::single(g(&[2], &[1], 0), q(1, 1));
        assert!(fs_combine(&x, &x, &q(-1, 1)).is_empty());
        assert_eq!(fs_combine(&FormalSum::new(), &x, &q(1, 1)), x);
        let two = FormalSum::single(g(&[2], &[1], 0), q(2, 1));
        let three = FormalSum::single(g(&[2], &[1], 0), q(3, 1));
        assert_eq!(fs_combine(&two, &three, &q(1, 3)), three);
    }

    #[test]
    fn equality_examples() {
        let (g1, g2) = (g(&[2], &[1], 0), g(&[3], &[2], 1));
        let mut a = FormalSum::single(g1.clone(), q(1, 1));
        a.add_term(g2.clone(), q(1, 1));
        let mut b = FormalSum::single(g2.clone(), q(1, 1));
        b.add_term(g1.clone(), q(1, 1));
        assert!(fs_equal(&a, &b));
        let mut h = FormalSum::single(g1.clone(), q(1, 2));
        h.add_term(g1.clone(), q(1, 2));
        assert!(fs_equal(&h, &FormalSum::single(g1.clone(), q(1, 1))));
        assert!(!fs_equal(&FormalSum::single(g1, q(1, 1)), &FormalSum::single(g2, q(1, 1))));
    }

    #[test]
    fn text_syntax_round_trip() {
        for s in [
            "L{ks=[2,3];alphas=[1,2];t=0}",
            "I{ks=[2,3];alphas=[1,2];taupow=1}",
            "L{ks=[];alphas=[];t=3}",
        ] {
            let gen: Generator = s.parse().unwrap();
            assert_eq!(gen.to_string(), s);
        }
        assert!("L{ks=[2];alphas=[0];t=0}".parse::<Generator>().is_err());
        assert!("I{ks=[2];alphas=[1];t=0}".parse::<Generator>().is_err());
        let sum: FormalSum = "-1/2*L{ks=[2];alphas=[1];t=0} + 3/1*I{ks=[2];alphas=[2];taupow=1}"
            .parse()
            .unwrap();
        assert_eq!(sum.to_string().parse::<FormalSum>().unwrap(), sum);
        assert_eq!(rational_to_string(&q(-6, 4)), "-3/2");
        assert_eq!(parse_rational("5").unwrap(), q(5, 1));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn canonical_order() {
        let a = g(&[2], &[1], 5);
        let b = g(&[2, 2], &[1, 1], 0);
        let c = Generator::integral(make_index(&[2], &[1], 0).unwrap(), 0);
        assert!(a < b && b < c);
    }

    #[test]
    fn exact_combinatorics() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(falling(5, 3), 60);
        assert_eq!(falling(5, 0), 1);
        assert_eq!(factorial(25), Integer::from_str("15511210043330985984000000").unwrap());
    }

    fn arb_gen() -> impl Strategy<Value = Generator> {
        (
            prop::collection::vec((2u32..5, 1u32..4), 0..3),
            0u32..3,
            any::<bool>(),
        )
            .prop_map(|(letters, p, is_l)| {
                let idx = CompositeIndex::from_letters(&letters, 0).unwrap();
                if is_l {
                    Generator::lseries(idx.with_t(p))
                } else {
                    Generator::integral(idx, p)
                }
            })
    }

    fn arb_sum() -> impl Strategy<Value = FormalSum> {
        prop::collection::vec((arb_gen(), -5i64..6, 1i64..4), 0..6).prop_map(|v| {
            let mut s = FormalSum::new();
            for (g, p, d) in v {
                s.add_term(g, Rational::from((p, d)));
            }
            s
        })
    }

    fn arb_pos_sum() -> impl Strategy<Value = FormalSum> {
        prop::collection::vec((arb_gen(), 1i64..6), 0..6).prop_map(|v| {
            let mut s = FormalSum::new();
            for (g, p) in v {
                s.add_term(g, Rational::from(p));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn vector_space_laws(a in arb_sum(), b in arb_sum(), c in arb_sum(), p in -4i64..5, d in 1i64..5) {
            let one = q(1, 1);
            let ab = fs_combine(&a, &b, &one);
            prop_assert!(fs_equal(&fs_combine(&ab, &c, &one), &fs_combine(&a, &fs_combine(&b, &c, &one), &one)));
            prop_assert!(fs_equal(&ab, &fs_combine(&b, &a, &one)));
            let s = q(p, d);
            prop_assert!(fs_equal(&ab.scaled(&s), &fs_combine(&a.scaled(&s), &b.scaled(&s), &one)));
            prop_assert!(ab.terms().all(|(_, v)| *v != 0));
        }

        #[test]
        fn index_round_trip(letters in prop::collection::vec((2i64..9, 1i64..7), 0..5), t in 0i64..5) {
            let ks: Vec<i64> = letters.iter().map(|l| l.0).collect();
            let al: Vec<i64> = letters.iter().map(|l| l.1).collect();
            let idx = make_index(&ks, &al, t).unwrap();
            prop_assert_eq!(idx.ks().iter().map(|&x| x as i64).collect::<Vec<_>>(), ks);
            prop_assert_eq!(idx.alphas().iter().map(|&x| x as i64).collect::<Vec<_>>(), al);
            prop_assert_eq!(idx.t() as i64, t);
        }

        #[test]
        fn degrees_of_union_are_maxima(a in arb_pos_sum(), b in arb_pos_sum()) {
            let (la, ua, wa) = a.degrees();
            let (lb, ub, wb) = b.degrees();
            let (l, u, w) = fs_combine(&a, &b, &q(1, 1)).degrees();
            prop_assert_eq!((l, u, w), (la.max(lb), ua.max(ub), wa.max(wb)));
        }

        #[test]
        fn formal_sum_text_round_trip(a in arb_sum()) {
            prop_assert_eq!(a.to_string().parse::<FormalSum>().unwrap(), a);
        }
    }
}

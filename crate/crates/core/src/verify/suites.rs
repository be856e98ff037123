use super::{Case, Grid, SuiteOptions};
use crate::algebra::{CompositeIndex, FormalSum, Generator};
use crate::eisenstein::eis_cusp_eval;
use crate::error::{Error, Result};
use crate::hp::{self, Engine};
use crate::integrals::{int_eval, quad_oracle, Factor, PathSpec};
use crate::lseries::{l_coeffs_bruteforce, l_coeffs_dp, l_eval};
use crate::mmv::{
    self, first_difference, fund1_rhs, fund2_rhs, haberland_rhs, r_iter, s_coeff, t_cusp_oracle, t_cusp_reg,
    FirstDiffVariant, Fund2Form, MonomialCoefficientRequest, Sym,
};
use crate::rewrite::{eval_sum, int_to_l_sum, l_to_int_sum, shuffle_product, stuffle_product};
use rayon::prelude::*;
use rug::{Complex, Rational};

pub const SUITES: [&str; 9] = [
    "roundtrip",
    "shuffle",
    "stuffle",
    "deriv",
    "fund",
    "haberland",
    "symmetry",
    "firstdiff",
    "oracle-cross",
];

type Outcome = (Vec<Case>, Vec<String>);
type Tuple = (u32, u32, u32, u32);
type DiffResult = (Tuple, FirstDiffVariant, Result<(Complex, Complex)>);

pub(super) fn dispatch(name: &str, grid: Grid, e: &Engine, opts: &SuiteOptions) -> Result<Outcome> {
    match name {
        "roundtrip" => Ok(roundtrip(grid)),
        "shuffle" => Ok(shuffle(grid, e)),
        "stuffle" => Ok(stuffle(grid, e)),
        "deriv" => Ok(deriv(grid, e)),
        "fund" => Ok(fund(grid, e)),
        "haberland" => Ok(haberland(grid, e)),
        "symmetry" => Ok(symmetry(grid, e, opts)),
        "firstdiff" => Ok(firstdiff(grid, e)),
        "oracle-cross" => Ok(oracle_cross(grid, e)),
        _ => Err(Error::InvalidArgument(format!(
            "unknown suite '{}' (expected one of {})",
            name,
            SUITES.join(", ")
        ))),
    }
}

/// Runs `f` over `params` in parallel; singular errors become skipped cases.
fn par_cases<T, F>(params: Vec<T>, f: F) -> Vec<Case>
where
    T: Sync + std::fmt::Debug,
    F: Fn(&T) -> (String, String, Result<Case>) + Sync,
{
    params
        .par_iter()
        .map(|p| {
            let (id, desc, r) = f(p);
            match r {
                Ok(c) => c,
                Err(Error::Singular(why)) => Case::skipped(id, desc, why),
                Err(err) => Case::errored(id, desc, &err),
            }
        })
        .collect()
}

fn cplx(e: &Engine, re: f64, im: f64) -> Complex {
    Complex::with_val(e.prec(), (re, im))
}

fn digits(e: &Engine) -> usize {
    e.digits as usize
}

fn all_indices(rmax: usize, ks: &[u32], alphas: &[u32]) -> Vec<CompositeIndex> {
    let letters: Vec<(u32, u32)> = ks.iter().flat_map(|&k| alphas.iter().map(move |&a| (k, a))).collect();
    let mut words: Vec<Vec<(u32, u32)>> = vec![vec![]];
    let mut out = Vec::new();
    for _ in 0..rmax {
        words = words
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |l| {
                    let mut v = w.clone();
                    v.push(*l);
                    v
                })
            })
            .collect();
        out.extend(words.iter().map(|w| CompositeIndex::from_letters(w, 0).unwrap()));
    }
    out
}

fn roundtrip(grid: Grid) -> Outcome {
    let (r, kmax, amax, tmax) = match grid {
        Grid::Small => (2, 3, 2, 1),
        Grid::Full => (3, 5, 4, 2),
    };
    let ks: Vec<u32> = (2..=kmax).collect();
    let als: Vec<u32> = (1..=amax).collect();
    let mut gens = Vec::new();
    for idx in all_indices(r, &ks, &als) {
        for t in 0..=tmax {
            gens.push(Generator::lseries(idx.with_t(t)));
            gens.push(Generator::integral(idx.clone(), t));
        }
    }
    let cases = par_cases(gens, |g| {
        let id = format!("roundtrip/{}", g);
        let one = FormalSum::single(g.clone(), Rational::from(1));
        let back = match g.kind() {
            crate::algebra::GenKind::LSeries => l_to_int_sum(&one).and_then(|s| int_to_l_sum(&s)),
            crate::algebra::GenKind::TauIntegral => int_to_l_sum(&one).and_then(|s| l_to_int_sum(&s)),
        };
        let r = back.map(|b| Case::exact(id.clone(), g.to_string(), b.to_string(), one.to_string()));
        (id, g.to_string(), r)
    });
    let notes = vec!["both composites compared as exact rational formal sums".to_string()];
    (cases, notes)
}

fn shuffle(grid: Grid, e: &Engine) -> Outcome {
    let (ks, als): (Vec<u32>, Vec<u32>) = match grid {
        Grid::Small => (vec![2, 3], vec![1, 2]),
        Grid::Full => (vec![2, 3, 4], vec![1, 2, 3]),
    };
    let letters: Vec<(u32, u32)> = ks.iter().flat_map(|&k| als.iter().map(move |&a| (k, a))).collect();
    let mut params = Vec::new();
    for y in [1.0, 2.0] {
        for a in &letters {
            for b in &letters {
                params.push((y, *a, *b));
            }
        }
    }
    let b = e.budget();
    let cases = par_cases(params, |&(y, a, bb)| {
        let id = format!("shuffle/y={}/({},{})x({},{})", y, a.0, a.1, bb.0, bb.1);
        let desc = format!("tau={}i u=[{:?}] v=[{:?}]", y, a, bb);
        let r = (|| {
            let tau = cplx(e, 0.0, y);
            let ia = int_eval(&CompositeIndex::from_letters(&[a], 0)?, &tau, &b)?.value;
            let ib = int_eval(&CompositeIndex::from_letters(&[bb], 0)?, &tau, &b)?.value;
            let rhs = eval_sum(&shuffle_product(&[a], &[bb])?, &tau, &b)?.value;
            Ok(Case::numeric(id.clone(), desc.clone(), &(ia * ib), &rhs, 1e-15, digits(e)))
        })();
        (id, desc, r)
    });
    (cases, vec![])
}

fn stuffle(grid: Grid, e: &Engine) -> Outcome {
    let (ks, wmax, ys): (Vec<u32>, u32, Vec<f64>) = match grid {
        Grid::Small => (vec![2, 3], 5, vec![1.0]),
        Grid::Full => (vec![2, 3], 5, vec![1.0, 2.0]),
    };
    let als: Vec<u32> = (1..wmax).collect();
    let d1 = all_indices(1, &ks, &als);
    let d12: Vec<CompositeIndex> = all_indices(2, &ks, &als);
    let mut params = Vec::new();
    for &y in &ys {
        for g1 in &d1 {
            for g2 in &d12 {
                if g1.alpha_sum() + g2.alpha_sum() <= wmax {
                    params.push((y, g1.clone(), g2.clone()));
                }
            }
        }
    }
    let b = e.budget();
    let cases = par_cases(params, |(y, i1, i2)| {
        let (g1, g2) = (Generator::lseries(i1.clone()), Generator::lseries(i2.clone()));
        let id = format!("stuffle/y={}/{}*{}", y, g1, g2);
        let desc = format!("tau={}i", y);
        let r = (|| {
            let tau = cplx(e, 0.0, *y);
            let lhs = l_eval(i1, &tau, &b)?.value * l_eval(i2, &tau, &b)?.value;
            let rhs = eval_sum(&stuffle_product(&g1, &g2)?, &tau, &b)?.value;
            Ok(Case::numeric(id.clone(), desc.clone(), &lhs, &rhs, 1e-15, digits(e)))
        })();
        (id, desc, r)
    });
    (cases, vec!["weight bound: total alpha over both factors <= 5".into()])
}

/// Central difference at `tau = 2i`, compared with the closed derivative formulas.
fn deriv(grid: Grid, e: &Engine) -> Outcome {
    let rmax = match grid {
        Grid::Small => 2,
        Grid::Full => 3,
    };
    let all = all_indices(rmax, &[2, 3], &[1, 2, 3]);
    let mut params: Vec<(bool, CompositeIndex)> = Vec::new();
    for idx in &all {
        let tail_ok = idx.alphas()[1..].iter().all(|&a| a <= 2);
        if tail_ok && idx.alphas()[0] >= 2 {
            for t in 0..=2 {
                params.push((true, idx.with_t(t)));
            }
        }
        if idx.alphas().iter().all(|&a| a <= 2) {
            params.push((false, idx.clone()));
        }
    }
    let b = e.budget();
    let prec = e.prec();
    let cases = par_cases(params, |(is_l, idx)| {
        let name = if *is_l { Generator::lseries(idx.clone()) } else { Generator::integral(idx.clone(), 0) };
        let id = format!("deriv/{}", name);
        let r = (|| {
            let tau = cplx(e, 0.0, 2.0);
            let h = cplx(e, 1e-7, 0.0);
            let f = |z: &Complex| -> Result<Complex> {
                if *is_l {
                    Ok(l_eval(idx, z, &b)?.value)
                } else {
                    Ok(int_eval(idx, z, &b)?.value)
                }
            };
            let tp = Complex::with_val(prec, &tau + &h);
            let tm = Complex::with_val(prec, &tau - &h);
            let fd = (f(&tp)? - f(&tm)?) / (h.clone() * 2u32);
            let exact = if *is_l {
                let mut a = idx.alphas().to_vec();
                a[0] -= 1;
                let lower = CompositeIndex::new(idx.ks().to_vec(), a, idx.t())?;
                let mut v = l_eval(&lower, &tau, &b)?.value;
                if idx.t() > 0 {
                    v += l_eval(&idx.with_t(idx.t() - 1), &tau, &b)?.value * idx.t();
                }
                v
            } else {
                let rest = CompositeIndex::new(idx.ks()[1..].to_vec(), idx.alphas()[1..].to_vec(), 0)?;
                let e0 = eis_cusp_eval(idx.ks()[0], &tau, &b)?.value;
                -(e0 * hp::powi(&tau, idx.alphas()[0] as i64 - 1) * int_eval(&rest, &tau, &b)?.value)
            };
            let tol = 1e-8 * hp::abs_f64(&exact);
            Ok(Case::numeric(id.clone(), "tau=2i h=1e-7".into(), &fd, &exact, tol, digits(e)))
        })();
        (id, name.to_string(), r)
    });
    let notes = vec![
        "L derivative: d/dtau L^(t)(k;a1,..) = t L^(t-1)(k;a1,..) + L^(t)(k;a1-1,..), checked for a1 >= 2".into(),
        "Int derivative: d/dtau Int(k;a)(tau) = -E0_{2k1}(tau) tau^(a1-1) Int(k2..;a2..)(tau)".into(),
        "tolerance is relative: 1e-8 times |closed form|".into(),
    ];
    (cases, notes)
}

fn weights(grid: Grid, small: &[u32], full: &[u32]) -> Vec<u32> {
    match grid {
        Grid::Small => small.to_vec(),
        Grid::Full => full.to_vec(),
    }
}

fn fund(grid: Grid, e: &Engine) -> Outcome {
    let ks = weights(grid, &[2, 3], &[2, 3, 4]);
    let prec = e.prec();
    let tc = |k: u32, m: i64| t_cusp_oracle(k, m, e);
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for &k in &ks {
        for a in 1..2 * k as i64 {
            p1.push((k, a));
        }
        for &k2 in &ks {
            for a in 1..2 * k as i64 {
                for a2 in 1..2 * k2 as i64 {
                    p2.push((k, k2, a, a2));
                }
            }
        }
    }
    let mut cases = par_cases(p1, |&(k, a)| {
        let id = format!("fund1/2k={}/a={}", 2 * k, a);
        let r = (|| {
            let lhs = r_iter(&[Sym::Cusp(k)], &[a], e)?;
            let rhs = fund1_rhs(k, a, prec, tc)?;
            Ok(Case::numeric(id.clone(), format!("k={} a={}", k, a), &lhs, &rhs, 1e-15, digits(e)))
        })();
        (id, format!("k={} a={}", k, a), r)
    });
    let reflected: Vec<(String, Result<(bool, f64)>)> = p2
        .par_iter()
        .map(|&(k1, k2, a1, a2)| {
            let id = format!("2k=({},{}) a=({},{})", 2 * k1, 2 * k2, a1, a2);
            let r = (|| {
                let lhs = r_iter(&[Sym::Const(k1), Sym::Cusp(k2)], &[a1, a2], e)?;
                let rhs = fund2_rhs(k1, k2, a1, a2, Fund2Form::Reflected, prec, tc)?;
                Ok(((a1 + a2) % 2 == 0, hp::abs_f64(&(lhs - rhs))))
            })();
            (id, r)
        })
        .collect();
    cases.extend(par_cases(p2, |&(k1, k2, a1, a2)| {
        let id = format!("fund2/2k=({},{})/a=({},{})", 2 * k1, 2 * k2, a1, a2);
        let desc = format!("k1={} k2={} a1={} a2={}", k1, k2, a1, a2);
        let r = (|| {
            let lhs = r_iter(&[Sym::Const(k1), Sym::Cusp(k2)], &[a1, a2], e)?;
            let rhs = fund2_rhs(k1, k2, a1, a2, Fund2Form::Derived, prec, tc)?;
            Ok(Case::numeric(id.clone(), desc.clone(), &lhs, &rhs, 1e-15, digits(e))
                .with_notes("closing term -T(E^inf_2,E^inf_1;a2,a1)"))
        })();
        (id, desc, r)
    }));
    let mut bad_even = 0;
    let mut bad_odd = 0;
    let mut worst: f64 = 0.0;
    let mut evaluated = 0;
    for (_, r) in &reflected {
        if let Ok((even, err)) = r {
            evaluated += 1;
            if *err > 1e-15 {
                worst = worst.max(*err);
                if *even {
                    bad_even += 1;
                } else {
                    bad_odd += 1;
                }
            }
        }
    }
    let notes = vec![
        "single T(E0;m) values on the right sides come from the independent split-quadrature oracle".into(),
        "second formula, reflected closing term +T(E^inf_2,E^inf_1;-a2,-a1): fails on ".to_string()
            + &format!(
                "{} of {} tuples ({} with a1+a2 even, {} odd), max abs error {:.3e}",
                bad_even + bad_odd,
                evaluated,
                bad_even,
                bad_odd,
                worst
            ),
        "second formula, derived closing term -T(E^inf_2,E^inf_1;a2,a1): used for the pass/fail cases".into(),
    ];
    (cases, notes)
}

pub(crate) const ZETA3: &str = "1.202056903159594";

fn haberland(grid: Grid, e: &Engine) -> Outcome {
    let ks = weights(grid, &[2, 3, 4], &[2, 3, 4, 5, 6]);
    let mut params: Vec<(u32, u32)> = Vec::new();
    for &k in &ks {
        for a in 1..2 * k {
            params.push((k, a));
        }
    }
    let mut cases = par_cases(params, |&(k, a)| {
        let id = format!("haberland/2k={:02}/a={:02}", 2 * k, a);
        let desc = format!("k={} a={}", k, a);
        let r = (|| {
            let lhs = s_coeff(&MonomialCoefficientRequest::new(vec![k], vec![a])?, e)?;
            let rhs = haberland_rhs(k, a, e)?;
            let tol = 1e-12 * hp::abs_f64(&rhs).max(1.0);
            Ok(Case::numeric(id.clone(), desc.clone(), &lhs, &rhs, tol, digits(e)))
        })();
        (id, desc, r)
    });
    let anchor = (|| {
        let lhs = s_coeff(&MonomialCoefficientRequest::new(vec![2], vec![1])?, e)?;
        let rhs = hp::parse_complex(ZETA3, e.prec())?;
        Ok(Case::numeric("anchor/S(4;1)=zeta(3)".into(), "k=2 a=1".into(), &lhs, &rhs, 1e-12, digits(e)))
    })();
    cases.push(anchor.unwrap_or_else(|err| Case::errored("anchor/S(4;1)=zeta(3)".into(), "k=2 a=1".into(), &err)));
    (cases, vec!["tolerance: 1e-12 * max(|rhs|, 1)".into()])
}

fn pairs(grid: Grid, small: &[u32], full: &[u32]) -> Vec<Tuple> {
    let ks = weights(grid, small, full);
    let mut v = Vec::new();
    for &k1 in &ks {
        for &k2 in &ks {
            for a1 in 1..2 * k1 {
                for a2 in 1..2 * k2 {
                    v.push((k1, k2, a1, a2));
                }
            }
        }
    }
    v
}

fn scaled_tol(k1: u32, k2: u32) -> f64 {
    1e-10 * std::f64::consts::TAU.powi(2 * (k1 + k2) as i32 - 2)
}

fn symmetry(grid: Grid, e: &Engine, opts: &SuiteOptions) -> Outcome {
    let flip = if opts.corrupt_sign { -1 } else { 1 };
    let cases = par_cases(pairs(grid, &[2, 3], &[2, 3, 4]), |&(k1, k2, a1, a2)| {
        let id = format!("symmetry/2k=({},{})/a=({},{})", 2 * k1, 2 * k2, a1, a2);
        let desc = format!("k1={} k2={} a1={} a2={}", k1, k2, a1, a2);
        let r = (|| {
            let lhs = s_coeff(&MonomialCoefficientRequest::new(vec![k1, k2], vec![a1, a2])?, e)?;
            let other = MonomialCoefficientRequest::new(vec![k2, k1], vec![2 * k2 - a2, 2 * k1 - a1])?;
            let sgn = if (a1 + a2) % 2 == 0 { flip } else { -flip };
            let rhs = s_coeff(&other, e)? * sgn;
            Ok(Case::numeric(id.clone(), desc.clone(), &lhs, &rhs, scaled_tol(k1, k2), digits(e)))
        })();
        (id, desc, r)
    });
    let mut notes = vec!["tolerance: 1e-10 * (2 pi)^(2k1+2k2-2)".to_string()];
    if opts.corrupt_sign {
        notes.push("sign deliberately corrupted: failures are expected".into());
    }
    (cases, notes)
}

fn firstdiff(grid: Grid, e: &Engine) -> Outcome {
    let params: Vec<_> = pairs(grid, &[2, 3], &[2, 3, 4])
        .into_iter()
        .flat_map(|p| FirstDiffVariant::ALL.into_iter().map(move |v| (p, v)))
        .collect();
    let results: Vec<DiffResult> = params
        .par_iter()
        .map(|&((k1, k2, a1, a2), v)| ((k1, k2, a1, a2), v, first_difference(k1, k2, a1, a2, v, e)))
        .collect();
    let mut cases = Vec::new();
    let mut notes = vec![
        "pass/fail uses: sign (-1)^(a1+a2), Bernoulli terms +b_{2k}/(2k a) Int0(k;a1+a2), no constant term".to_string(),
    ];
    for v in FirstDiffVariant::ALL {
        let mut fails = 0;
        let mut total = 0;
        let mut worst: f64 = 0.0;
        for (p, vv, r) in &results {
            if *vv != v {
                continue;
            }
            let (k1, k2, a1, a2) = *p;
            let id = format!("firstdiff/2k=({},{})/a=({},{})", 2 * k1, 2 * k2, a1, a2);
            let desc = format!("k1={} k2={} a1={} a2={}", k1, k2, a1, a2);
            let tol = scaled_tol(k1, k2);
            match r {
                Ok((lhs, rhs)) => {
                    let err = hp::abs_f64(&Complex::with_val(e.prec(), lhs - rhs));
                    total += 1;
                    worst = worst.max(err / tol);
                    if err > tol {
                        fails += 1;
                    }
                    if v == FirstDiffVariant::NoConstant {
                        let mut c = Case::numeric(id, desc, lhs, rhs, tol, digits(e));
                        if (k1, a1) == (k2, a2) {
                            c = c.with_notes("diagonal: both sides vanish identically");
                        }
                        cases.push(c);
                    }
                }
                Err(Error::Singular(why)) if v == FirstDiffVariant::NoConstant => {
                    cases.push(Case::skipped(id, desc, why.clone()))
                }
                Err(Error::Singular(_)) => {}
                Err(err) if v == FirstDiffVariant::NoConstant => cases.push(Case::errored(id, desc, err)),
                Err(_) => {}
            }
        }
        notes.push(format!(
            "reading {:?}: {} of {} nonsingular tuples fail, worst err/tol {:.3e}",
            v, fails, total, worst
        ));
    }
    (cases, notes)
}

fn oracle_cross(grid: Grid, e: &Engine) -> Outcome {
    let rmax = match grid {
        Grid::Small => 2,
        Grid::Full => 3,
    };
    let b = e.budget();
    // exact series coefficients
    let dp: Vec<CompositeIndex> = all_indices(rmax, &[2, 3], &[1, 2]);
    let mut cases = par_cases(dp, |idx| {
        let id = format!("dp-brute/{}", Generator::lseries(idx.clone()));
        let r = (|| {
            let a = l_coeffs_dp(idx, 50)?;
            let c = l_coeffs_bruteforce(idx, 50)?;
            let show = |x: &crate::lseries::LCoefficients| {
                x.coeffs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
            };
            Ok(Case::exact(id.clone(), "N=50".into(), show(&a), show(&c)))
        })();
        (id, "N=50".into(), r)
    });

    // closed-form iterated integrals against nested quadrature
    let mut iq: Vec<(f64, f64, CompositeIndex)> = Vec::new();
    for idx in all_indices(2, &[2, 3], &[1, 2]) {
        iq.push((0.0, 1.0, idx.clone()));
        if idx.depth() == 1 {
            iq.push((1.0 / 3.0, 1.0, idx.clone()));
            iq.push((0.0, 2.0, idx));
        }
    }
    cases.extend(par_cases(iq, |(x, y, idx)| {
        let id = format!("int-quad/tau={:.4}+{}i/{}", x, y, Generator::integral(idx.clone(), 0));
        let r = (|| {
            let tau = cplx(e, *x, *y);
            let c = int_eval(idx, &tau, &b)?.value;
            let f: Vec<Factor> = idx.ks().iter().map(|&k| Factor::Cusp(k)).collect();
            let al: Vec<i64> = idx.alphas().iter().map(|&a| a as i64).collect();
            let q = quad_oracle(&f, &al, &PathSpec::to_infinity(tau), 1e-22, e)?.value;
            Ok(Case::numeric(id.clone(), "vertical path".into(), &c, &q, 1e-18, digits(e)))
        })();
        (id, "vertical path".into(), r)
    }));

    // components of the length-two coefficients at tau = i
    let mut comps = Vec::new();
    for (k1, k2) in [(2, 2), (2, 3), (3, 2)] {
        for (a1, a2) in [(1, 1), (1, 2), (2, 1), (3, 2)] {
            comps.push((true, k1, k2, a1, a2));
            comps.push((false, k1, k2, a1, a2));
        }
    }
    cases.extend(par_cases(comps, |&(cusp_inner, k1, k2, a1, a2)| {
        let tag = if cusp_inner { "cc" } else { "ec" };
        let id = format!("r-quad/{}/2k=({},{})/a=({},{})", tag, 2 * k1, 2 * k2, a1, a2);
        let r = (|| {
            let s1 = if cusp_inner { Sym::Cusp(k1) } else { Sym::Const(k1) };
            let v = r_iter(&[s1, Sym::Cusp(k2)], &[a1, a2], e)?;
            let f1 = if cusp_inner {
                Factor::Cusp(k1)
            } else {
                Factor::Const(hp::from_rational(&crate::eisenstein::eis_constant(k1), e.prec()))
            };
            let i = cplx(e, 0.0, 1.0);
            let q = quad_oracle(&[f1, Factor::Cusp(k2)], &[a1, a2], &PathSpec::to_infinity(i), 1e-20, e)?.value;
            Ok(Case::numeric(id.clone(), "base point i".into(), &v, &q, 1e-15, digits(e)))
        })();
        (id, "base point i".into(), r)
    }));

    // regularized single integrals where the direct integral converges
    let mut tr = Vec::new();
    for k in weights(grid, &[2, 3], &[2, 3, 4]) {
        for m in [2 * k as i64 + 1, 2 * k as i64 + 2] {
            tr.push((k, m));
        }
    }
    cases.extend(par_cases(tr, |&(k, m)| {
        let id = format!("treg/2k={}/m={}", 2 * k, m);
        let r = (|| {
            let a = t_cusp_reg(k, m, e)?;
            let q = t_cusp_oracle(k, m, e)?;
            Ok(Case::numeric(id.clone(), format!("k={} m={}", k, m), &a, &q, 1e-15, digits(e)))
        })();
        (id, format!("k={} m={}", k, m), r)
    }));

    // regularized Int(..)(0) against the product of single values
    let mut sh = Vec::new();
    for (k1, k2) in [(2, 3), (3, 3), (2, 2)] {
        for a1 in 1..2 * k1 as i64 {
            for a2 in 1..2 * k2 as i64 {
                sh.push((k1, k2, a1, a2));
            }
        }
    }
    cases.extend(par_cases(sh, |&(k1, k2, a1, a2)| {
        let id = format!("int0-shuffle/2k=({},{})/a=({},{})", 2 * k1, 2 * k2, a1, a2);
        let r = (|| {
            let lhs = mmv::int0_reg(&[k1, k2], &[a1, a2], e)? + mmv::int0_reg(&[k2, k1], &[a2, a1], e)?;
            let rhs = mmv::int0_reg(&[k1], &[a1], e)? * mmv::int0_reg(&[k2], &[a2], e)?;
            Ok(Case::numeric(id.clone(), "regularized at 0".into(), &lhs, &rhs, 1e-15, digits(e)))
        })();
        (id, "regularized at 0".into(), r)
    }));
    let notes = vec![
        "dp-brute: exact rational coefficient lists up to N=50".into(),
        "int-quad: closed-form chains against Gauss-Legendre on vertical paths".into(),
        "treg: T(E0;m) through inversion against split quadrature of the convergent integral".into(),
    ];
    (cases, notes)
}

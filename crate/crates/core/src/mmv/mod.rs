//! Integrals based at `i` and the length <= 2 cocycle coefficients.
//!
//! `T(f_1..f_r; a_1..a_r)` integrates over `0 < t_1 < ... < t_r < i` and `R(...)` over
//! `i < t_1 < ... < t_r < i inf`, both against `prod f_j(t_j) t_j^{a_j} dt_j / t_j`.
//! Divergent `T` integrals are understood through analytic continuation in the exponents.
//! Constant terms follow `E^inf_{2k} = -b_{2k}/(4k)`.

mod cocycle;
mod coeff;

pub use cocycle::{e0_cocycle_s, haberland_rhs, zeta_odd, BiPolynomial};
pub use coeff::{
    first_difference, i_coeff, s_coeff, FirstDiffVariant, MonomialCoefficientRequest,
};

use crate::eisenstein::eis_constant;
use crate::error::{Error, Result};
use crate::hp::{self, Engine};
use crate::integrals::{chain_eval, cusp_tail_imag, quad_oracle, Factor, PathSpec};
use rug::{Complex, Float};
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Integrand symbol: cusp part `E^0_{2k}` or constant term `E^inf_{2k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sym {
    Cusp(u32),
    Const(u32),
}

fn sign(n: i64) -> i32 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn einf(k: u32, prec: u32) -> Complex {
    hp::from_rational(&eis_constant(k), prec)
}

/// `T(E^inf_{2k}; alpha) = E^inf i^alpha / alpha`.
pub fn t_const_closed(k: u32, alpha: i64, prec: u32) -> Result<Complex> {
    if alpha == 0 {
        return Err(Error::Singular("T(E^inf; 0) diverges logarithmically".into()));
    }
    Ok(einf(k, prec) * hp::i_pow(alpha, prec) / Complex::with_val(prec, (alpha, 0)))
}

/// `T(E^inf_{2k1}, E^inf_{2k2}; b1, b2) = E^inf_1 E^inf_2 i^{b1+b2} / (b1 (b1+b2))`.
pub fn t_const_const(k1: u32, k2: u32, b1: i64, b2: i64, prec: u32) -> Result<Complex> {
    if b1 == 0 || b1 + b2 == 0 {
        return Err(Error::Singular(format!(
            "T(E^inf, E^inf; {}, {}) is logarithmically singular",
            b1, b2
        )));
    }
    let den = Complex::with_val(prec, (b1 * (b1 + b2), 0));
    Ok(einf(k1, prec) * einf(k2, prec) * hp::i_pow(b1 + b2, prec) / den)
}

/// `R(f_1, ..., f_r; a_1, ..., a_r)` based at `i`, depth <= 2.
pub fn r_iter(syms: &[Sym], alphas: &[i64], engine: &Engine) -> Result<Complex> {
    let prec = engine.prec();
    if syms.is_empty() || syms.len() > 2 || syms.len() != alphas.len() {
        return Err(Error::InvalidArgument("r_iter handles depth 1 or 2".into()));
    }
    if !matches!(syms[syms.len() - 1], Sym::Cusp(_)) {
        return Err(Error::Divergent("R diverges unless the outermost factor is a cusp part".into()));
    }
    if let [Sym::Cusp(k)] = syms {
        let one = Float::with_val(prec, 1);
        return Ok(cusp_tail_imag(*k, alphas[0], &one, &engine.budget())?.value);
    }
    if alphas.iter().any(|&a| a < 1) {
        return Err(Error::InvalidArgument("depth-2 R needs exponents >= 1".into()));
    }
    let factors: Vec<Factor> = syms
        .iter()
        .map(|s| match s {
            Sym::Cusp(k) => Factor::Cusp(*k),
            Sym::Const(k) => Factor::Const(einf(*k, prec)),
        })
        .collect();
    let al: Vec<u32> = alphas.iter().map(|&a| a as u32).collect();
    let i = Complex::with_val(prec, (0, 1));
    Ok(chain_eval(&factors, &al, &i, &engine.budget())?.value)
}

pub(crate) fn r1(k: u32, a: i64, engine: &Engine) -> Result<Complex> {
    r_iter(&[Sym::Cusp(k)], &[a], engine)
}

pub(crate) fn r2(s1: Sym, s2: Sym, a1: i64, a2: i64, engine: &Engine) -> Result<Complex> {
    r_iter(&[s1, s2], &[a1, a2], engine)
}

fn check_reg(k: u32, m: i64) -> Result<()> {
    if m == 0 || m == 2 * k as i64 {
        return Err(Error::Singular(format!(
            "T(E^0_{}; {}) is singular (exponent in {{0, {}}})",
            2 * k,
            m,
            2 * k
        )));
    }
    Ok(())
}

/// Regularized `T(E^0_{2k}; m)` through the inversion `t -> -1/t`:
/// `(-1)^m [R(E^0; 2k-m) - T(E^inf; 2k-m)] - T(E^inf; m)`.
pub fn t_cusp_reg(k: u32, m: i64, engine: &Engine) -> Result<Complex> {
    check_reg(k, m)?;
    let prec = engine.prec();
    let w = 2 * k as i64;
    let inner = r1(k, w - m, engine)? - t_const_closed(k, w - m, prec)?;
    Ok(inner * sign(m) - t_const_closed(k, m, prec)?)
}

type OracleCache = Mutex<HashMap<(u32, i64, u32), Complex>>;

/// Independent value of `T(E^0_{2k}; m)`: quadrature of the q-series on `[i delta, i]`, plus the
/// piece near 0 in closed form, `E^inf [(i delta)^{m-2k}/(m-2k) - (i delta)^m / m]`, whose
/// remainder `int_0^{i delta} t^{m-1-2k} E^0(-1/t) dt` is bounded by
/// `delta^{m-2k} sum n^{2k} e^{-2 pi n / delta}`. For `m > 2k` everything converges and this is
/// the plain integral; otherwise it is the analytic continuation in `m`.
pub fn t_cusp_oracle(k: u32, m: i64, engine: &Engine) -> Result<Complex> {
    check_reg(k, m)?;
    static C: OnceLock<OracleCache> = OnceLock::new();
    let cache = C.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(k, m, engine.digits)) {
        return Ok(v.clone());
    }
    let boosted = engine.boosted(20);
    let prec = boosted.prec();
    let target = engine.eps * 1e-3;
    let w = 2 * k as i64;
    let remainder = |delta: f64| -> f64 {
        let mut s = 0.0;
        for n in 1..200 {
            s += ((2 * k) as f64 * (n as f64).ln() - std::f64::consts::TAU * n as f64 / delta).exp();
        }
        delta.powi((m - w) as i32) * s
    };
    let mono = std::f64::consts::TAU / ((w + 1 - m).max(1) as f64);
    let mut inv = 6u32;
    while remainder(1.0 / inv as f64) > target || 1.0 / inv as f64 >= mono {
        inv += 1;
        if inv > 64 {
            return Err(Error::Quadrature("no cut point meets the remainder target".into()));
        }
    }
    let delta = Float::with_val(prec, 1) / inv;
    let start = Complex::with_val(prec, (0, &delta));
    let path = PathSpec::segment(start.clone(), 1.0);
    let q = quad_oracle(&[Factor::Cusp(k)], &[m], &path, target, &boosted)?;
    let e = einf(k, prec);
    let a = hp::powi(&start, m - w) / Complex::with_val(prec, (m - w, 0))
        - hp::powi(&start, m) / Complex::with_val(prec, (m, 0));
    let v = Complex::with_val(engine.prec(), q.value + e * a);
    cache.lock().unwrap().insert((k, m, engine.digits), v.clone());
    Ok(v)
}

/// Order of the two factors in a mixed double `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixedKind {
    /// `T(E^0_{kc}, E^inf_{ke}; alpha, beta)`.
    CuspThenConst,
    /// `T(E^inf_{ke}, E^0_{kc}; beta, alpha)`.
    ConstThenCusp,
}

/// Mixed double `T` reduced to single regularized ones, with `tc` supplying `T(E^0_{2 kc}; .)`.
pub fn t_mixed_with<F>(kind: MixedKind, kc: u32, ke: u32, alpha: i64, beta: i64, prec: u32, tc: F) -> Result<Complex>
where
    F: Fn(u32, i64) -> Result<Complex>,
{
    if beta == 0 {
        return Err(Error::Singular("mixed T with beta = 0 is logarithmic".into()));
    }
    let pre = einf(ke, prec) / Complex::with_val(prec, (beta, 0));
    match kind {
        MixedKind::CuspThenConst => Ok(pre * (hp::i_pow(beta, prec) * tc(kc, alpha)? - tc(kc, alpha + beta)?)),
        MixedKind::ConstThenCusp => Ok(pre * tc(kc, alpha + beta)?),
    }
}

pub fn t_mixed_reduce(kind: MixedKind, kc: u32, ke: u32, alpha: i64, beta: i64, engine: &Engine) -> Result<Complex> {
    t_mixed_with(kind, kc, ke, alpha, beta, engine.prec(), |k, m| t_cusp_reg(k, m, engine))
}

/// Which closing term to use in the second inversion formula for `R(E^inf_1, E^0_2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fund2Form {
    /// `... + T(E^inf_2, E^inf_1; -a2, -a1)`.
    Reflected,
    /// `... - T(E^inf_2, E^inf_1; a2, a1)`, which follows from applying the inversion to
    /// `int (t^{a} - t^{a-2k})` with a constant inner factor.
    Derived,
}

/// Right side of the second inversion formula:
/// `(-1)^{a1+a2} [T(E^0_2, E^inf_1; 2k2-a2, -a1) + T(E^inf_2, E^inf_1; 2k2-a2, -a1)] + closing`.
pub fn fund2_rhs<F>(k1: u32, k2: u32, a1: i64, a2: i64, form: Fund2Form, prec: u32, tc: F) -> Result<Complex>
where
    F: Fn(u32, i64) -> Result<Complex>,
{
    let b2 = 2 * k2 as i64 - a2;
    let mixed = t_mixed_with(MixedKind::CuspThenConst, k2, k1, b2, -a1, prec, tc)?;
    let common = (mixed + t_const_const(k2, k1, b2, -a1, prec)?) * sign(a1 + a2);
    let closing = match form {
        Fund2Form::Reflected => t_const_const(k2, k1, -a2, -a1, prec)?,
        Fund2Form::Derived => -t_const_const(k2, k1, a2, a1, prec)?,
    };
    Ok(common + closing)
}

/// Right side of the first inversion formula:
/// `(-1)^a [T(E^0; 2k-a) + T(E^inf; 2k-a)] + T(E^inf; a)`.
pub fn fund1_rhs<F>(k: u32, a: i64, prec: u32, tc: F) -> Result<Complex>
where
    F: Fn(u32, i64) -> Result<Complex>,
{
    let w = 2 * k as i64;
    Ok((tc(k, w - a)? + t_const_closed(k, w - a, prec)?) * sign(a) + t_const_closed(k, a, prec)?)
}

/// Regularized `Int(...)(0)` for depth 1 or 2.
pub fn int0_reg(ks: &[u32], alphas: &[i64], engine: &Engine) -> Result<Complex> {
    let prec = engine.prec();
    match (ks, alphas) {
        ([k], [m]) => {
            check_reg(*k, *m)?;
            Ok(r1(*k, *m, engine)? + t_cusp_reg(*k, *m, engine)?)
        }
        ([k1, k2], [a1, a2]) => {
            let (k1, k2, a1, a2) = (*k1, *k2, *a1, *a2);
            let (w1, w2) = (2 * k1 as i64, 2 * k2 as i64);
            if !(1..w1).contains(&a1) || !(1..w2).contains(&a2) {
                return Err(Error::InvalidArgument(format!(
                    "exponents ({}, {}) out of range 1..2k-1",
                    a1, a2
                )));
            }
            let m = a1 + a2;
            if m == w1 || m == w2 {
                return Err(Error::Singular(format!("a1 + a2 = {} hits a weight {{{}, {}}}", m, w1, w2)));
            }
            let (b1, b2) = (w1 - a1, w2 - a2);
            let tce = |al: i64, be: i64| t_mixed_reduce(MixedKind::CuspThenConst, k1, k2, al, be, engine);
            let tec = |be: i64, al: i64| t_mixed_reduce(MixedKind::ConstThenCusp, k2, k1, al, be, engine);
            let r12 = r2(Sym::Cusp(k1), Sym::Cusp(k2), a1, a2, engine)?;
            let r21 = r2(Sym::Cusp(k2), Sym::Cusp(k1), b2, b1, engine)?;
            let a0 = -(t_cusp_reg(k1, a1, engine)? * r1(k2, a2, engine)?);
            let a_prime = -(tce(a1, a2 - w2)? - tce(a1, a2)?) - (tec(a1 - w1, a2)? - tec(a1, a2)?);
            let mut a_inf = hp::zero(prec);
            for (s1, x1) in [(1, a1 - w1), (-1, a1)] {
                for (s2, x2) in [(1, a2 - w2), (-1, a2)] {
                    a_inf += t_const_const(k1, k2, x1, x2, prec)? * (s1 * s2);
                }
            }
            Ok(r12 + r21 * sign(m) - a0 - a_prime - a_inf)
        }
        _ => Err(Error::InvalidArgument("int0_reg handles depth 1 or 2".into())),
    }
}

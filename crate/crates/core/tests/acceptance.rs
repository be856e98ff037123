//! Acceptance criteria 1-10, one line each. Tolerances are pinned here and every case's own
//! tolerance is checked against them, so a suite cannot loosen a criterion silently.

use mmv::hp::Engine;
use mmv::verify::{run_suite, Case, Grid, VerificationReport};
use std::process::ExitCode;
use std::time::Instant;

const EXACT: f64 = 0.0;
const ORACLE_TOL: f64 = 1e-18;
const SHUFFLE_TOL: f64 = 1e-15;
const STUFFLE_TOL: f64 = 1e-15;
const DERIV_REL_TOL: f64 = 1e-8;
const FUND_TOL: f64 = 1e-15;
const HABERLAND_REL_TOL: f64 = 1e-12;
const ZETA3_TOL: f64 = 1e-12;
const SCALED_TOL: f64 = 1e-10;
const REG_TOL: f64 = 1e-15;

struct Verdict {
    pass: bool,
    detail: String,
}

fn check<'a>(cases: impl Iterator<Item = &'a Case>, tol_ok: impl Fn(&Case) -> bool) -> Verdict {
    let (mut n, mut failed, mut skipped, mut loose) = (0, 0, 0, 0);
    let mut worst: f64 = 0.0;
    let mut first_fail = None;
    for c in cases {
        if c.skipped_singular {
            skipped += 1;
            continue;
        }
        n += 1;
        if !tol_ok(c) {
            loose += 1;
        }
        worst = worst.max(if c.tol > 0.0 { c.abs_err / c.tol } else { c.abs_err });
        if !c.pass {
            failed += 1;
            first_fail.get_or_insert_with(|| c.id.clone());
        }
    }
    let mut detail = format!("{} cases, {} failed, {} singular skipped, worst err/tol {:.2e}", n, failed, skipped, worst);
    if loose > 0 {
        detail += &format!(", {} cases with a tolerance looser than pinned", loose);
    }
    if let Some(id) = first_fail {
        detail += &format!(", first failure {}", id);
    }
    Verdict {
        pass: n > 0 && failed == 0 && loose == 0,
        detail,
    }
}

fn with_prefix<'a>(r: &'a VerificationReport, p: &'a str) -> impl Iterator<Item = &'a Case> + 'a {
    r.cases.iter().filter(move |c| c.id.starts_with(p))
}

fn abs_of(s: &str) -> f64 {
    mmv::hp::abs_f64(&mmv::hp::parse_complex(s, 128).expect("complex literal"))
}

fn and(a: Verdict, b: Verdict) -> Verdict {
    Verdict {
        pass: a.pass && b.pass,
        detail: format!("{}; {}", a.detail, b.detail),
    }
}

fn main() -> ExitCode {
    let engine = Engine::default();
    let suite = |name: &str, grid: Grid| run_suite(name, grid, &engine).expect(name);
    let mut all = true;
    let mut report = |n: u32, title: &str, t: Instant, v: Verdict, extra: &[String]| {
        all &= v.pass;
        println!(
            "criterion {:>2} {} {} ({}) [{:.1?}]",
            n,
            if v.pass { "PASS" } else { "FAIL" },
            title,
            v.detail,
            t.elapsed()
        );
        for e in extra {
            println!("             {}", e);
        }
    };

    let t = Instant::now();
    let r = suite("roundtrip", Grid::Full);
    report(1, "round trips exact (r<=3, k<=5, a<=4, t<=2)", t, check(r.cases.iter(), |c| c.tol == EXACT), &[]);

    let t = Instant::now();
    let r = suite("oracle-cross", Grid::Full);
    let v = and(
        check(with_prefix(&r, "dp-brute/"), |c| c.tol == EXACT),
        check(with_prefix(&r, "int-quad/"), |c| c.tol <= ORACLE_TOL),
    );
    report(2, "dp = brute force (r<=3, N=50), closed form = quadrature", t, v, &[]);
    let oracle = r;

    let t = Instant::now();
    let r = suite("shuffle", Grid::Small);
    report(3, "shuffle identity at i and 2i", t, check(r.cases.iter(), |c| c.tol <= SHUFFLE_TOL), &[]);

    let t = Instant::now();
    let r = suite("stuffle", Grid::Small);
    report(4, "stuffle identity at i, depths (1,1) and (1,2)", t, check(r.cases.iter(), |c| c.tol <= STUFFLE_TOL), &[]);

    let t = Instant::now();
    let r = suite("deriv", Grid::Full);
    let rel_ok = |c: &Case| c.tol <= DERIV_REL_TOL * abs_of(&c.rhs) * (1.0 + 1e-9);
    report(5, "derivative formulas by central differences at 2i, depths 1-3", t, check(r.cases.iter(), rel_ok), &r.notes[..2]);

    let t = Instant::now();
    let r = suite("fund", Grid::Full);
    let notes: Vec<String> = r.notes.iter().skip(1).cloned().collect();
    report(6, "inversion formulas for R at i, 2k in {4,6,8}", t, check(r.cases.iter(), |c| c.tol <= FUND_TOL), &notes);

    let t = Instant::now();
    let r = suite("haberland", Grid::Small);
    let v = and(
        check(with_prefix(&r, "anchor/"), |c| c.tol <= ZETA3_TOL),
        check(with_prefix(&r, "haberland/"), |c| {
            c.tol <= HABERLAND_REL_TOL * abs_of(&c.rhs).max(1.0) * (1.0 + 1e-9)
        }),
    );
    report(7, "S(4;1) = zeta(3) and the Haberland grid, 2k in {4,6,8}", t, v, &[]);

    let t = Instant::now();
    let r = suite("symmetry", Grid::Small);
    let scaled = |c: &Case| {
        let ks: Vec<f64> = c.parameters.split(' ').take(2).filter_map(|p| p.split('=').nth(1)?.parse().ok()).collect();
        let w = 2.0 * (ks[0] + ks[1]) - 2.0;
        c.tol <= SCALED_TOL * std::f64::consts::TAU.powf(w) * (1.0 + 1e-12)
    };
    report(8, "symmetry of the length-two S coefficients, 2k in {4,6}", t, check(r.cases.iter(), scaled), &[]);

    let t = Instant::now();
    let r = suite("firstdiff", Grid::Small);
    let diagonal_exact = r
        .cases
        .iter()
        .filter(|c| c.notes.starts_with("diagonal"))
        .all(|c| c.abs_err == 0.0 && c.lhs == "0+0i" && c.rhs == "0+0i");
    let mut v = check(r.cases.iter(), scaled);
    v.pass &= diagonal_exact;
    v.detail += &format!(", diagonal exactly 0 = 0: {}", diagonal_exact);
    report(9, "first-difference formula, 2k in {4,6}", t, v, &r.notes);

    let t = Instant::now();
    let treg = oracle.cases.iter().filter(|c| c.id.starts_with("treg/2k=4/") || c.id.starts_with("treg/2k=6/"));
    report(10, "regularized T(E0;m) = convergent integral for m in {2k+1, 2k+2}", t, check(treg, |c| c.tol <= REG_TOL), &[]);

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use clap::{Args, Parser, Subcommand, ValueEnum};
use mmv::algebra::{CompositeIndex, FormalSum, GenKind, Generator};
use mmv::eisenstein::eis_eval;
use mmv::hp::{self, Engine};
use mmv::integrals::{int_eval, ExpPoly};
use mmv::lseries::{l_coeffs_dp, l_eval};
use mmv::rewrite::{int_to_l, int_to_l_sum, l_to_int, stuffle_product};
use mmv::verify::{emit, run_suite_with, Format, Grid, SuiteOptions, VerificationReport};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mmvtool", version, about = "Evaluate, rewrite and verify Eisenstein L-series and iterated integrals")]
struct Cli {
    #[command(flatten)]
    engine: EngineArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct EngineArgs {
    /// Working precision in decimal digits.
    #[arg(long, global = true, default_value_t = 40)]
    digits: u32,
    /// Truncation target; defaults to 10^-(digits+5).
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Hard cap on summation indices.
    #[arg(long, global = true, default_value_t = 200_000)]
    nmax: usize,
}

impl EngineArgs {
    fn engine(&self) -> Result<Engine, mmv::error::Error> {
        let mut e = Engine::with_digits(self.digits);
        if let Some(eps) = self.eps {
            e.eps = eps;
        }
        e.nmax = self.nmax;
        e.validate()?;
        Ok(e)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Int2l,
    L2int,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate L^(t)(ks; alphas)(tau), e.g. --index "L{ks=[2,3];alphas=[1,2];t=0}".
    EvalL {
        #[arg(long)]
        index: String,
        #[arg(long, default_value = "i")]
        tau: String,
        /// Also print the first N series coefficients as CSV rows `m,c(m)`.
        #[arg(long)]
        coeffs: Option<usize>,
    },
    /// Evaluate tau^j Int(ks; alphas)(tau), e.g. --index "I{ks=[2];alphas=[1];taupow=0}".
    EvalInt {
        #[arg(long)]
        index: String,
        #[arg(long, default_value = "i")]
        tau: String,
        /// Also dump the exponential polynomial of the chain, truncated at frequency N.
        #[arg(long)]
        dump: Option<u64>,
    },
    /// Rewrite a generator between the integral and L-series bases.
    Convert {
        #[arg(long, value_enum)]
        dir: Direction,
        #[arg(long)]
        index: String,
    },
    /// Stuffle product of two L-series generators with t = 0.
    Stuffle {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Run a verification suite and write its report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value = "small")]
        grid: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: String,
        /// Flip the sign in the symmetry identity (harness self-test; failures expected).
        #[arg(long)]
        corrupt_sign: bool,
    },
    /// Quick sanity checks of the numeric core.
    Selftest,
}

fn parse_gen(s: &str, kind: GenKind) -> Result<Generator, mmv::error::Error> {
    let g: Generator = s.parse()?;
    if g.kind() != kind {
        let want = if kind == GenKind::LSeries { "L{..}" } else { "I{..}" };
        return Err(mmv::error::Error::Parse(format!("expected a {} generator, got '{}'", want, s)));
    }
    Ok(g)
}

fn chain_series(index: &CompositeIndex, ncut: u64, prec: u32) -> Result<ExpPoly, mmv::error::Error> {
    let ks = index.ks();
    let al = index.alphas();
    let r = ks.len();
    let mut g = ExpPoly::cusp_series(ks[r - 1], ncut as usize, prec).tail_integral(al[r - 1])?;
    for j in (0..r - 1).rev() {
        g = g.mul_cusp(ks[j], ncut).tail_integral(al[j])?;
    }
    Ok(g)
}

fn run(cli: Cli) -> Result<bool, mmv::error::Error> {
    let engine = cli.engine.engine()?;
    let prec = engine.prec();
    let budget = engine.budget();
    let digits = engine.digits as usize;
    match cli.cmd {
        Cmd::EvalL { index, tau, coeffs } => {
            let g = parse_gen(&index, GenKind::LSeries)?;
            let tau = hp::parse_complex(&tau, prec)?;
            let v = l_eval(g.index(), &tau, &budget)?;
            println!("value      {}", hp::format_complex(&v.value, digits));
            println!("tail_bound {:.3e}", v.tail_bound);
            println!("terms      {}", v.terms);
            if let Some(w) = v.warning {
                eprintln!("warning: {}", w);
            }
            if let Some(n) = coeffs {
                print!("{}", l_coeffs_dp(g.index(), n)?.to_csv()?);
            }
        }
        Cmd::EvalInt { index, tau, dump } => {
            let g = parse_gen(&index, GenKind::TauIntegral)?;
            let tau = hp::parse_complex(&tau, prec)?;
            let mut v = int_eval(g.index(), &tau, &budget)?;
            let tp = hp::powi(&tau, g.tau_power() as i64);
            v.tail_bound *= hp::abs_f64(&tp);
            println!("value      {}", hp::format_complex(&(v.value * tp), digits));
            println!("tail_bound {:.3e}", v.tail_bound);
            println!("terms      {}", v.terms);
            if let Some(w) = v.warning {
                eprintln!("warning: {}", w);
            }
            if let (Some(n), true) = (dump, g.length() > 0) {
                print!("{}", chain_series(g.index(), n, prec)?.dump(digits.min(20)));
            }
        }
        Cmd::Convert { dir, index } => {
            let out = match dir {
                Direction::Int2l => {
                    let g = parse_gen(&index, GenKind::TauIntegral)?;
                    if g.tau_power() == 0 {
                        int_to_l(g.index())?
                    } else {
                        int_to_l_sum(&FormalSum::from(g))?
                    }
                }
                Direction::L2int => l_to_int(&parse_gen(&index, GenKind::LSeries)?)?,
            };
            println!("{}", out);
        }
        Cmd::Stuffle { left, right } => {
            let a = parse_gen(&left, GenKind::LSeries)?;
            let b = parse_gen(&right, GenKind::LSeries)?;
            println!("{}", stuffle_product(&a, &b)?);
        }
        Cmd::Verify { suite, grid, out, format, corrupt_sign } => {
            let grid: Grid = grid.parse()?;
            let format: Format = format.parse()?;
            let report = run_suite_with(&suite, grid, &engine, &SuiteOptions { corrupt_sign })?;
            summarize(&report);
            match out {
                Some(path) => emit(&report, format, &path)?,
                None => match format {
                    Format::Json => println!("{}", report.to_json()?),
                    Format::Csv => print!("{}", report.to_csv()?),
                },
            }
            return Ok(report.all_passed());
        }
        Cmd::Selftest => return selftest(&engine),
    }
    Ok(true)
}

fn summarize(r: &VerificationReport) {
    eprintln!(
        "{}: {} cases, {} passed, {} failed, {} skipped (singular)",
        r.suite, r.summary.total, r.summary.passed, r.summary.failed, r.summary.skipped_singular
    );
    for n in &r.notes {
        eprintln!("  {}", n);
    }
}

fn selftest(engine: &Engine) -> Result<bool, mmv::error::Error> {
    let prec = engine.prec();
    let i = hp::parse_complex("i", prec)?;
    let e6 = eis_eval(3, &i, &engine.budget())?;
    let ok_e6 = hp::abs_f64(&e6.value) < 1e-30;
    println!("E6(i) = 0            {} (|E6(i)| = {:.3e})", verdict(ok_e6), hp::abs_f64(&e6.value));
    let g: Generator = "I{ks=[2];alphas=[2];taupow=0}".parse()?;
    let back = mmv::rewrite::l_to_int_sum(&int_to_l(g.index())?)?;
    let ok_rt = back == FormalSum::from(g);
    println!("rewrite round trip   {}", verdict(ok_rt));
    let s = mmv::mmv::s_coeff(&mmv::mmv::MonomialCoefficientRequest::new(vec![2], vec![1])?, engine)?;
    let z = hp::parse_complex("1.202056903159594285399738161511449990765", prec)?;
    let ok_z = hp::abs_f64(&(s - z)) < 1e-12;
    println!("S(4;1) = zeta(3)     {}", verdict(ok_z));
    Ok(ok_e6 && ok_rt && ok_z)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

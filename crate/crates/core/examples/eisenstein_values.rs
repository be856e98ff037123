//! Eisenstein series from their q-expansions, with certified truncation.
//!
//! `cargo run --release --example eisenstein_values`

use mmv::eisenstein::{bernoulli, divisor_sigma, eis_constant, eis_cusp_eval, eis_eval};
use mmv::hp::{self, Engine};

fn main() -> Result<(), mmv::error::Error> {
    let engine = Engine::default();
    let prec = engine.prec();
    let budget = engine.budget();

    println!("sigma_3(1..6) = {:?}", (1..=6).map(|n| divisor_sigma(3, n).to_string()).collect::<Vec<_>>());
    for k in 2..=6 {
        println!("b_{:<2} = {:>10}   constant of E_{:<2} = {}", 2 * k, bernoulli(2 * k).to_string(), 2 * k, eis_constant(k));
    }

    for tau in ["i", "2i", "0.5+0.8660254037844386467637231707529361834714i"] {
        let z = hp::parse_complex(tau, prec)?;
        for k in [2, 3] {
            let v = eis_eval(k, &z, &budget)?;
            println!(
                "E_{}({:<8.8}) = {}  ({} terms, tail <= {:.1e})",
                2 * k,
                tau,
                hp::format_complex(&v.value, 25),
                v.terms,
                v.tail_bound
            );
        }
    }

    // E_6 vanishes at the fixed point of tau -> -1/tau
    let e6 = eis_eval(3, &hp::parse_complex("i", prec)?, &budget)?;
    println!("|E_6(i)| = {:.3e}", hp::abs_f64(&e6.value));

    // near the real axis the truncation order grows like 1/Im(tau)
    let low = eis_cusp_eval(2, &hp::parse_complex("0.1+0.05i", prec)?, &budget)?;
    println!("cusp part of E_4 at 0.1+0.05i needs {} terms", low.terms);
    Ok(())
}

//! Multiple Eisenstein L-series: exact coefficients, the brute-force cross-check, and
//! certified values.
//!
//! `cargo run --release --example lseries_eval`

use mmv::algebra::make_index;
use mmv::hp::{self, Engine};
use mmv::lseries::{l_coeffs_bruteforce, l_coeffs_dp, l_eval};

fn main() -> Result<(), mmv::error::Error> {
    let engine = Engine::default();
    let idx = make_index(&[2, 3], &[1, 2], 0)?;

    let dp = l_coeffs_dp(&idx, 12)?;
    assert_eq!(dp, l_coeffs_bruteforce(&idx, 12)?);
    print!("{}", dp.to_csv()?);

    for tau in ["i", "2i", "0.3+1.1i"] {
        let z = hp::parse_complex(tau, engine.prec())?;
        let v = l_eval(&idx.with_t(1), &z, &engine.budget())?;
        println!(
            "L^(1)(2,3; 1,2)({}) = {}  [{} terms, tail <= {:.1e}]",
            tau,
            hp::format_complex(&v.value, 30),
            v.terms,
            v.tail_bound
        );
    }
    Ok(())
}

//! Iterated Eisenstein integrals: closed-form exponential polynomials against nested
//! Gauss-Legendre quadrature on the vertical path.
//!
//! `cargo run --release --example iterated_integrals`

use mmv::algebra::make_index;
use mmv::hp::{self, Engine};
use mmv::integrals::{int_eval, quad_oracle, ExpPoly, Factor, PathSpec};

fn main() -> Result<(), mmv::error::Error> {
    let engine = Engine::default();
    let prec = engine.prec();
    let tau = hp::parse_complex("0.25+1.2i", prec)?;

    for (ks, al) in [(vec![2], vec![1]), (vec![3], vec![3]), (vec![2, 3], vec![1, 2])] {
        let idx = make_index(&ks, &al, 0)?;
        let closed = int_eval(&idx, &tau, &engine.budget())?;
        let factors: Vec<Factor> = idx.ks().iter().map(|&k| Factor::Cusp(k)).collect();
        let q = quad_oracle(&factors, &al, &PathSpec::to_infinity(tau.clone()), 1e-22, &engine)?;
        println!(
            "Int(k={:?}; a={:?}) = {}  |closed - quad| = {:.2e}",
            ks,
            al,
            hp::format_complex(&closed.value, 25),
            hp::abs_f64(&(closed.value - q.value))
        );
    }

    // the symbolic object behind a depth-2 value, truncated at frequency 4
    let g = ExpPoly::cusp_series(3, 4, prec).tail_integral(2)?;
    let g = g.mul_cusp(2, 4).tail_integral(1)?;
    print!("{}", g.dump(12));
    Ok(())
}

//! Exact change of basis between iterated integrals and L-series, and the shuffle product.
//!
//! `cargo run --release --example rewrite_bases`

use mmv::algebra::{FormalSum, Generator};
use mmv::hp::{self, Engine};
use mmv::integrals::int_eval;
use mmv::rewrite::{eval_sum, int_to_l, l_to_int_sum, shuffle_product};

fn main() -> Result<(), mmv::error::Error> {
    let g: Generator = "I{ks=[2,3];alphas=[2,1];taupow=0}".parse()?;
    let as_l = int_to_l(g.index())?;
    println!("{} =\n  {}", g, as_l);
    assert_eq!(l_to_int_sum(&as_l)?, FormalSum::from(g.clone()));

    let engine = Engine::default();
    let tau = hp::parse_complex("2i", engine.prec())?;
    let direct = int_eval(g.index(), &tau, &engine.budget())?.value;
    let via_l = eval_sum(&as_l, &tau, &engine.budget())?.value;
    println!("numeric gap at 2i: {:.2e}", hp::abs_f64(&(direct - via_l)));

    let sh = shuffle_product(&[(2, 1), (3, 1)], &[(2, 2)])?;
    println!("(2,1)(3,1) shuffle (2,2) = {}", sh);
    Ok(())
}

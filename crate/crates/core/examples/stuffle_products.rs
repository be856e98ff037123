//! Stuffle (quasi-shuffle) products of L-series and a numeric check of one product.
//!
//! `cargo run --release --example stuffle_products`

use mmv::algebra::Generator;
use mmv::hp::{self, Engine};
use mmv::lseries::l_eval;
use mmv::rewrite::{eval_sum, stuffle_product};

fn main() -> Result<(), mmv::error::Error> {
    let a: Generator = "L{ks=[2];alphas=[2];t=0}".parse()?;
    let b: Generator = "L{ks=[3,2];alphas=[1,1];t=0}".parse()?;
    let prod = stuffle_product(&a, &b)?;
    for (g, c) in prod.terms() {
        println!("{:>6} * {}", c.to_string(), g);
    }

    let engine = Engine::default();
    let tau = hp::parse_complex("i", engine.prec())?;
    let budget = engine.budget();
    let lhs = l_eval(a.index(), &tau, &budget)?.value * l_eval(b.index(), &tau, &budget)?.value;
    let rhs = eval_sum(&prod, &tau, &budget)?.value;
    println!("|L(a)L(b) - sum| at i = {:.2e}", hp::abs_f64(&(lhs - rhs)));
    Ok(())
}

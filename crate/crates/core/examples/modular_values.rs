//! Length <= 2 cocycle coefficients based at i: regularized integrals, Haberland's formula,
//! the symmetry identity and the first-difference formula.
//!
//! `cargo run --release --example modular_values`

use mmv::hp::{self, Engine};
use mmv::mmv::{
    e0_cocycle_s, first_difference, haberland_rhs, int0_reg, s_coeff, t_cusp_oracle, t_cusp_reg, zeta_odd,
    FirstDiffVariant, MonomialCoefficientRequest,
};

fn s(ks: &[u32], al: &[u32], e: &Engine) -> Result<rug::Complex, mmv::error::Error> {
    s_coeff(&MonomialCoefficientRequest::new(ks.to_vec(), al.to_vec())?, e)
}

fn main() -> Result<(), mmv::error::Error> {
    let e = Engine::default();
    let show = |z: &rug::Complex| hp::format_complex(z, 20);

    println!("zeta(3) = {}", zeta_odd(3, &e)?);
    println!("rational cocycle of E_8 on S: {}", e0_cocycle_s(4)?);
    for a in 1..=3 {
        println!("S(4;{}) = {}   rhs = {}", a, show(&s(&[2], &[a], &e)?), show(&haberland_rhs(2, a, &e)?));
    }

    // regularization through inversion agrees with the convergent integral
    let reg = t_cusp_reg(2, 5, &e)?;
    let direct = t_cusp_oracle(2, 5, &e)?;
    println!("T(E0_4; 5): {} vs {}", show(&reg), show(&direct));
    println!("regularized Int(E0_4;1)(0) = {}", show(&int0_reg(&[2], &[1], &e)?));

    let x = s(&[2, 3], &[1, 2], &e)?;
    let y = s(&[3, 2], &[4, 3], &e)?;
    println!("symmetry residual S(4,6;1,2) + S(6,4;4,3) = {:.2e}", hp::abs_f64(&(x + y)));

    for v in FirstDiffVariant::ALL {
        let (lhs, rhs) = first_difference(2, 3, 1, 2, v, &e)?;
        println!("first difference, {:?}: |lhs - rhs| = {:.3e}", v, hp::abs_f64(&(lhs - rhs)));
    }
    Ok(())
}

//! Multiple Eisenstein L-series, iterated Eisenstein integrals and the length <= 2 cocycle
//! coefficients of the modular group, at arbitrary precision.
//!
//! * [`algebra`]: composite indices, generators and exact formal sums.
//! * [`eisenstein`]: divisor sums, Bernoulli numbers, certified q-expansions.
//! * [`lseries`]: exact coefficients and certified values of `L^(t)(k; alpha)`.
//! * [`integrals`]: closed-form iterated integrals and an independent quadrature oracle.
//! * [`rewrite`]: the exact maps between the two bases, shuffle and stuffle products.
//! * [`mmv`]: integrals based at `i`, regularized values, `I`/`S` coefficients, `zeta(odd)`.
//! * [`verify`]: parameter-grid verification with JSON/CSV reports.

pub mod algebra;
pub mod eisenstein;
pub mod error;
pub mod hp;
pub mod integrals;
pub mod lseries;
pub mod mmv;
pub mod rewrite;
pub mod verify;

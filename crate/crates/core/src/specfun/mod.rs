//! Scalar special functions used by the closed-form expressions.
//!
//! Everything here is pure and reentrant. Iterative routines run until the
//! next term is below machine epsilon relative to the running value; the
//! [`EvalTolerance`] only bounds how much work they may do and how far from
//! that target a result may be before it is reported as non-converged.

mod bessel;
mod beta;
mod combinatorics;
mod expint;
mod gamma;
mod meijer;

pub use bessel::{ln_modified_bessel_i, modified_bessel_i, modified_bessel_i_scaled, BESSEL_I_LN_OVERFLOW};
pub use beta::{inc_beta_reg, inc_beta_reg_pair, ln_beta};
pub use combinatorics::{binomial, factorial, ln_binomial, ln_factorial, ln_multinomial, multinomial};
pub use expint::gen_exponential_integral;
pub use gamma::{
    gamma, ln_gamma, lower_incomplete_gamma, regularized_gamma_p, regularized_gamma_q,
    upper_gamma_difference, upper_incomplete_gamma, upper_incomplete_gamma_with,
};
pub use meijer::meijer_g_2122;

use crate::error::{Error, Result};

/// Work and accuracy bounds for iterative special-function evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalTolerance {
    /// Relative accuracy a result must reach; in `(0, 1e-3]`.
    pub rel_tol: f64,
    /// Cap on series terms / continued-fraction steps; at least 50.
    pub max_terms: usize,
    /// Cap on adaptive-quadrature subdivisions (used by numerical oracles).
    pub quad_limit: usize,
}

impl Default for EvalTolerance {
    fn default() -> Self {
        EvalTolerance {
            rel_tol: 1e-10,
            max_terms: 1000,
            quad_limit: 2000,
        }
    }
}

impl EvalTolerance {
    pub fn new(rel_tol: f64, max_terms: usize, quad_limit: usize) -> Result<Self> {
        let mut problems = Vec::new();
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            problems.push(format!("rel_tol = {rel_tol} must lie in (0, 1e-3]"));
        }
        if max_terms < 50 {
            problems.push(format!("max_terms = {max_terms} must be at least 50"));
        }
        if quad_limit == 0 {
            problems.push("quad_limit must be positive".to_string());
        }
        if problems.is_empty() {
            Ok(EvalTolerance {
                rel_tol,
                max_terms,
                quad_limit,
            })
        } else {
            Err(Error::InvalidConfig(problems))
        }
    }
}

/// Smallest magnitude used by the modified Lentz continued-fraction scheme.
const FPMIN: f64 = 1e-300;

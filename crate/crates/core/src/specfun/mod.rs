//! Special functions: Γ, J_ν, Y_ν and H⁽¹⁾_ν for real order and positive
//! argument, plus their small- and large-argument limiting forms.

mod bessel;
mod gamma;
pub(crate) mod scaled;
mod trig;

pub(crate) use bessel::jy_scaled;
pub use bessel::{
    bessel_j, bessel_pair, bessel_y, hankel1, large_arg_forms, small_arg_forms, small_arg_j, BesselPair,
    Regime, MAX_ORDER, MIN_ARGUMENT,
};
pub use gamma::{gamma, ln_gamma};
pub use trig::{cis_pi, cos_pi, sin_cos_pi, sin_pi};

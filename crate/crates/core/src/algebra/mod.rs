//! Exact arithmetic in `S = Z[y_1, ..., y_n]`, in `R(T) = Z[z_1^±1, ..., z_n^±1]`
//! and in their fraction fields.

mod divisibility;
mod gcd;
mod lattice;
mod laurent;
mod linsolve;
mod rational;
mod weight;

pub use divisibility::{
    divides_binomial, divides_linear, divides_linear_form, elementary_symmetric, elementary_symmetric_of,
    is_divisible_by_binomial,
};
pub use gcd::{gcd, integer_content};
pub use lattice::{coordinates_in_basis, linear_map_from_data, LatticeMap};
pub use laurent::{monomial_of_weight, monomial_of_weight_checked, one_minus_character, Exponent, LaurentPoly, Poly};
pub use linsolve::{determinant, lagrange_coefficients, solve_system_over_fractions, substitute_lattice_map, vandermonde_sum, MAX_SYSTEM_SIZE};
pub use rational::RationalFunction;
pub use weight::Weight;

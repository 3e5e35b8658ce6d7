//! Polynomials over GF(q), minimal polynomials, `x^n - 1` factorization and
//! irreducible cyclic codes.

mod code;
pub mod linalg;
mod minpoly;
mod poly;

pub use code::{
    codeword_from_trace, generator_matrix, irreducible_code_parameters, irreducible_cyclic_code,
    irreducible_cyclic_code_with_cap, validate_parameters, CodeSpec, CodeSummary,
};
pub use minpoly::{
    factor_xn_minus_1, factor_xn_minus_1_with_cap, minimal_polynomial, SplittingField,
    FACTOR_TABLE_CAP,
};
pub use poly::Poly;

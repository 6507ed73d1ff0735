//! Exact arithmetic in the graded ring `k[X_0..X_n]` over a prime field.

pub mod field;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod polynomial;
pub mod ring;
pub mod substitution;

pub use field::{Coeff, PrimeField, DEFAULT_CHARACTERISTIC};
pub use monomial::Monomial;
pub use order::{compare_monomials, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::{Ring, RingContext};
pub use substitution::LinearSubstitution;

//! Finite fields `GF(p^m)`, polynomials over them, and the linear algebra
//! used to split commutative algebras.

mod gf;
mod linalg;
mod poly;

pub use gf::{find_irreducible, is_irreducible, FieldElement, FieldSpec};
pub use linalg::{krylov_min_poly, poly_lcm, rref, Matrix, Vector};
pub use poly::{factor, Factorization, Poly, DEFAULT_SEED};

//! Exact arithmetic: scalars, sparse polynomials, matrices, quadratic forms and binary forms.

mod binary;
mod matrix;
mod parse;
mod poly;
mod quadratic;
mod scalar;

pub use binary::{
    binary_intersection, BinaryFormSystem, BinaryIntersection, RootGroup, SupportPoint, UniPoly,
};
pub use matrix::{bareiss, dot, Matrix, RingElement};
pub use poly::{poly_arith, Exponents, MonomialOrder, Poly, PolyOp, Ring};
pub use quadratic::{gram_and_rank, SymMatrix};
pub use scalar::{Field, Scalar};

pub(crate) use poly::{disjoint, divides, lcm, same_ring};
pub(crate) use scalar::pow_mod;

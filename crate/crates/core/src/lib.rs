//! Exact computations in two-generated finite 2-groups with dihedral central
//! quotient and their group algebras over GF(2^k).
//!
//! The library builds the six parametrized families D1(n,m,l), ..., D6(n,m,l),
//! computes their landmark subgroups, conjugacy data and quotients, does exact
//! group-algebra arithmetic over GF(2^k) with the weighted monomial basis of
//! the augmentation-ideal filtration, verifies the crossed-generator algebra
//! isomorphism F.D1 = F.D2 together with group non-isomorphism, and aggregates
//! everything into invariant fingerprints, classification tables and verdicts.

pub mod algebra;
pub mod bases;
pub mod error;
pub mod gf;
pub mod group;
pub mod linalg;
pub mod report;

pub use algebra::{Algebra, AlgebraElement};
pub use error::{Error, Result};
pub use gf::FieldSpec;
pub use group::{
    make_group, reduce_theta, Family, Group, GroupElement, GroupLike, GroupParams, Mode, Theta,
    FAMILIES,
};

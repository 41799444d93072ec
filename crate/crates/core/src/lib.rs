//! Exact computation of the Gutt star product on the symmetric algebra of a
//! finite-dimensional Lie algebra.
//!
//! The product `x ⋆_z y` is computed by three independent constructions:
//! through the universal enveloping algebra ([`Gutt::star_pbw`]), by
//! regrading the `z = 1` product ([`Gutt::star_graded`]), and from
//! Baker–Campbell–Hausdorff components ([`Gutt::star_bch`]). Around them sit
//! the graded seminorms `p_R` ([`Seminorm`]), the Hopf structure maps
//! ([`hopf`]), the Weyl quotient ([`weyl`]) and numerical checks of
//! continuity estimates ([`experiments`]).

pub mod algebra_file;
pub mod bch;
mod engine;
pub mod error;
pub mod experiments;
pub mod expr;
pub mod hopf;
pub mod lie;
pub mod pbw;
pub mod rational;
pub mod sampling;
pub mod seminorm;
pub mod sym;
pub mod verify;
pub mod weyl;

pub use engine::Gutt;
pub use error::{Error, Result};
pub use lie::{LieAlgebra, LieHom, Vector};
pub use pbw::{lift_hom, Enveloping, PbwElement};
pub use rational::{PolyZ, Rational};
pub use seminorm::{submultiplicative_scale, Seminorm};
pub use sym::{exp_truncated, Monomial, SymElement};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lie-algebras.md")]
    mod lie_algebras {}
    #[doc = include_str!("../../../book/src/star-product.md")]
    mod star_product {}
    #[doc = include_str!("../../../book/src/bch.md")]
    mod bch {}
    #[doc = include_str!("../../../book/src/seminorms.md")]
    mod seminorms {}
    #[doc = include_str!("../../../book/src/hopf-weyl.md")]
    mod hopf_weyl {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

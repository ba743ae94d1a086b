//! Exact combinatorics of Poisson degeneracy loci of flag varieties.

pub mod bruhat;
pub mod cascade;
pub mod construct;
pub mod deodhar;
pub mod dynkin;
pub mod error;
pub mod gcr;
pub mod linalg;
pub mod parabolic;
pub mod poissonlab;
pub mod polyalg;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{CartanType, Root, RootSystem};
pub use weyl::{enumerate_group, WeylElement, WeylGroup, Word};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/roots.md")]
    mod roots {}
    #[doc = include_str!("../../../book/src/bruhat.md")]
    mod bruhat {}
    #[doc = include_str!("../../../book/src/gcr.md")]
    mod gcr {}
    #[doc = include_str!("../../../book/src/cascade.md")]
    mod cascade {}
    #[doc = include_str!("../../../book/src/rpoly.md")]
    mod rpoly {}
    #[doc = include_str!("../../../book/src/parabolic.md")]
    mod parabolic {}
    #[doc = include_str!("../../../book/src/construct.md")]
    mod construct {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/poisson.md")]
    mod poisson {}
}

//! Exact algebra for relative holomorphs `V ⋊ H` of free modules over `Z/p^mZ`.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`ring`], [`matrix`], [`poly`], [`echelon`], [`span`]: residues, dense matrices,
//!   polynomials over `F_p`, field elimination, and Howell/Smith forms over `Z/p^mZ`.
//! * [`normal_forms`]: invariant factors, rational canonical form with a verified
//!   change of basis, similarity, and unipotent Jordan partitions.
//! * [`conjugacy`]: deciding whether two cyclic subgroups `<a>` and `<b>` of `GL_n`
//!   are conjugate, which over a field decides `Hol(V,a) ≅ Hol(V,b)`.
//! * [`group`]: enumerable finite groups (vector groups, matrix closures,
//!   semidirect products), subgroup machinery, series, automorphisms and re-basing.
//! * [`oracle`]: brute-force isomorphism testing and the invariants it filters on.
#![no_std]

extern crate alloc;

pub mod conjugacy;
pub mod echelon;
pub mod error;
pub mod group;
pub mod matrix;
pub mod normal_forms;
pub mod oracle;
pub mod poly;
pub mod ring;
pub mod span;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use ring::RingSpec;
pub use span::AbelianInvariants;

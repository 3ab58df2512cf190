//! Schur rings over finite abelian groups, CI-verification of Cayley
//! digraphs, translation nets and rational S-rings over `C_p^2 x C_q^2`.

pub mod arith;
pub mod ci;
pub mod cli;
pub mod error;
pub mod graph;
pub mod group;
pub mod lemmas;
pub mod nets;
pub mod overgroups;
pub mod perm;
pub mod products;
pub mod pullback;
pub mod rational;
pub mod ring;
pub mod sring;
pub mod store;

pub use error::{Error, Result};
pub use group::{Elem, Group, Section, Subgroup};
pub use perm::{Perm, PermGroup};
pub use ring::GroupRingVector;

//! Non-abelian tensor squares of finite metacyclic groups `g(a,b;m,n,r,s)`
//! with `m` odd.
//!
//! Closed-form structures live in [`presentations`]; [`oracle`] recomputes
//! them from the defining relations of `G ⊗ G`, and [`fpgrp`] certifies the
//! order of the group `ν(G)` by coset enumeration.

pub mod abgrp;
pub mod error;
pub mod fpgrp;
pub mod metagrp;
pub mod numth;
pub mod oracle;
pub mod presentations;

pub use error::{Error, Result};
pub use metagrp::{validate, Element, GroupParams};

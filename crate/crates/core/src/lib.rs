#![no_std]
//! Exact calculus for Hecke algebras of finite Weyl groups and the graded
//! Grothendieck group of principal block category O.

extern crate alloc;

pub mod coxeter;
pub mod error;
pub mod functors;
pub mod hecke;
pub mod kgroup;
pub mod laurent;
pub mod oracle;

pub use coxeter::{CartanType, CoxeterGroup, Element, Family, Side};
pub use error::{Error, Result};
pub use functors::{FunctorKind, Functors};
pub use hecke::{HeckeElement, KLCache};
pub use kgroup::{BasisTag, CharacterVector, KGroup, Transport};
pub use laurent::{LaurentPoly, QSubst};
pub use oracle::{verify_suite, CheckResult, VerificationReport};

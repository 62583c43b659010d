//! Exact algebra over finite commutative rings.
//!
//! Rings are given by structure constants over a product of cyclic groups,
//! so every object here (ideals, quotients, finitely presented modules, hom
//! sets, automorphism groups) is finite and can be enumerated exactly. On top
//! of that the crate computes flattening ideals of modules over finite local
//! rings, splits modules with a principal square-zero flattening ideal into
//! `R^m ⊕ (R/(a))^n`, and emits self-checking certificates showing that the
//! automorphism functor of a non-free module is not representable.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod caps;
pub mod decompose;
pub mod error;
pub mod group;
pub mod ideal;
pub mod module;
pub mod obstruction;
pub mod ring;
pub mod snf;

pub use caps::Caps;
pub use decompose::DecompositionCertificate;
pub use error::{Error, Result};
pub use group::AutGroup;
pub use ideal::Ideal;
pub use module::{FPModule, ModuleElements, ModuleHom, Presentation};
pub use obstruction::{Certification, ObstructionCertificate, PhantomOptions};
pub use ring::{Elem, FiniteRing, RingHom, RingRef, RingSpec};

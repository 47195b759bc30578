//! Configuration sets of finitely generated groups at desk scale.
//!
//! The library computes configuration sets `Con(g, E)` — the tuples of
//! partition-cell indices realized by some witness `x` with `x` in cell
//! `c0` and `g_i x` in cell `c_i` — for a family of builtin groups with
//! exact arithmetic and canonical normal forms, together with the
//! isomorphism invariants used to compare groups by their configurations:
//! quotient types of finitely generated abelian groups, Hirsch length,
//! nilpotency class, centers, torsion, isolators, and semigroup laws.
//!
//! Modules:
//!
//! * [`groups`] — builtin groups (`Z^n`, finite tables, direct products,
//!   the infinite dihedral group, unitriangular matrix groups), canonical
//!   elements, and Cayley-ball enumeration;
//! * [`partition`] — a closed predicate language for finite partitions,
//!   with validation, refinement, and the builtin partitions;
//! * [`config`] — configuration-set computation, comparison, projection
//!   under refinement, transport along isomorphisms, and DOT export;
//! * [`abelian`] — Smith normal form and the quotient calculus of finitely
//!   generated abelian groups;
//! * [`invariants`] — executable isomorphism invariants (law checking on
//!   balls, nilpotency witnesses, center membership, Hirsch length,
//!   torsion, isolator classification).

pub mod abelian;
pub mod config;
pub mod error;
pub mod groups;
pub mod invariants;
pub mod matrix;
pub mod partition;

pub use error::{Error, Result};

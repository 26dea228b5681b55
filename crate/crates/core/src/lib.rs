//! Symbolic calculus for the representation theory of `GL_n` over a local
//! field and its inner forms `GL_m(D)`, computed on the level of Grothendieck
//! groups.
//!
//! Irreducible and standard representations are handled through their
//! combinatorial labels (multisegments). On top of that the crate provides
//! the Zelevinsky order, the Mœglin–Waldspurger duality, Tadić's expansion
//! formulas for Speh representations, the Jacquet–Langlands transfer `LJ`
//! with its sign rules, formal `L`/`ε′`-factors and the global bookkeeping
//! for discrete series labels.
//!
//! All arithmetic is exact: exponents of `ν` are [`Exponent`]s (64-bit
//! rationals), coefficients in Grothendieck groups are `i64`.

pub mod duality;
pub mod error;
pub mod gkring;
pub mod global;
pub mod lfactors;
pub mod multiseg;
pub mod registry;
pub mod suites;
pub mod transfer;

mod perm;

pub use error::{Error, Result};
pub use gkring::{Side, SpehUnit, UnitaryProduct, VirtualRep};
pub use multiseg::{Multisegment, Segment, SegmentRelation};
pub use registry::{s_invariant, AlgebraLocal, CuspidalPoint, LineId, LineInfo, LineRegistry};

/// Exponent `a` of a twist `ν^a`.
pub type Exponent = num_rational::Rational64;

/// Builds an exponent from a numerator and denominator.
///
/// Panics when `den` is zero.
pub fn q(num: i64, den: i64) -> Exponent {
    Exponent::new(num, den)
}

/// Builds an integral exponent.
pub fn qi(n: i64) -> Exponent {
    Exponent::from_integer(n)
}

/// Default cap on the size of cuspidal supports handed to exhaustive searches.
pub const DEFAULT_SEARCH_LIMIT: usize = 10;

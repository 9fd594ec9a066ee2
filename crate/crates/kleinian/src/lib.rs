//! Kleinian groups from circle patterns.
//!
//! The crate builds discrete groups of Möbius maps three ways — necklace
//! groups from tangent circle chains, atom groups from spiralling circle
//! packings, and parameterised matrix families (compression body, grandma,
//! Riley, pendulum) — then renders what they do: limit sets as point clouds,
//! and parameter-space slices coloured by the shortest translation length
//! among a batch of group elements.  A Newton continuation module follows
//! Farey trace polynomials from cusp groups to cone manifolds and knot
//! groups.

pub mod circles;
pub mod error;
pub mod families;
pub mod farey;
pub mod limits;
pub mod mobius;
pub mod necklace;
pub mod newton;
pub mod slice;
pub mod words;

pub use error::Error;
pub use mobius::{MapClass, Mobius, Point};

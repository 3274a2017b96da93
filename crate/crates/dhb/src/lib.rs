//! Permutation representations of Hurwitz maps, composition of maps along
//! handles, and certificates that two maps of the same degree generate the
//! alternating group with distinct fixed point data.

pub mod atlas;
pub mod certify;
pub mod compose;
pub mod construct;
pub mod frobenius;
pub mod linlift;
pub mod map;
pub mod perm;
pub mod report;

pub use map::HurwitzMap;
pub use perm::Permutation;

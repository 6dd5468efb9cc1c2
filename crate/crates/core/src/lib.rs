//! Core library for the mechanized classification of flag-transitive
//! Steiner 4-designs.
//!
//! A Steiner 4-design with parameters `4-(v, k, 1)` is a set of `v` points
//! together with a family of `k`-element blocks such that every 4-element
//! point set lies in exactly one block.  This crate provides:
//!
//! * exact integer/rational arithmetic helpers for design parameters
//!   ([`arith`], [`designs`]),
//! * permutation groups with stabilizer chains ([`perm`]),
//! * finite fields `GF(p^e)` and the 2-transitive actions of
//!   `PSL(2, q)` / `PGL(2, q)` on the projective line ([`gf`], [`psl2`]),
//! * the Witt designs `4-(11, 5, 1)` and `4-(23, 7, 1)` together with
//!   their Mathieu automorphism groups ([`witt`]),
//! * the case-by-case classification engine whose output is the statement
//!   that the two Witt designs are the only non-trivial Steiner 4-designs
//!   admitting a flag-transitive automorphism group ([`classify`]).

pub mod arith;
pub mod classify;
pub mod designs;
pub mod gf;
pub mod perm;
pub mod psl2;
pub mod witt;

//! Commutator blueprints over F₂ on Coxeter systems.
//!
//! The crate builds the finite 2-groups `U_w` that a blueprint prescribes,
//! checks the blueprint axioms, realizes the rank-one automorphisms `τ_s` on
//! residue and truncated groups, and builds the rank-2 chamber systems on
//! which the braid relations are verified.

// index loops read better than iterator chains over the square tables here
#![allow(clippy::needless_range_loop)]

pub mod blueprints;
pub mod chambers;
pub mod coxeter;
pub mod galleries;
pub mod groupforge;
pub mod identities;
pub mod parabolics;
pub mod qf24;
pub mod report;
pub mod roots;

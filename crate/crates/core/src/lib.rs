//! Singular relations on genus-2 period matrices: exact arithmetic, Siegel
//! space, Humbert invariants, Igusa invariants and explicit embeddings.

pub mod exactarith;
pub mod siegel;
pub mod humbert;
pub mod embeddings;
pub mod hilbert;
pub mod igusa;
pub mod json;

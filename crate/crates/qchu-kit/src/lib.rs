//! Finite-model checking for three-valued Chu spaces, state-space posets,
//! measurement maps, orthogonality and the induced Hilbert lattices.

pub mod chu_core;
pub mod cli_io;
pub mod generators;
pub mod measurement;
pub mod order_core;
pub mod ortho_hilbert;
pub mod symmetry;

//! A workbench for list coloring of plane graphs around a path on the outer
//! cycle: residual lists, sufficient colorings, crowns, obstructions, and
//! exhaustive or sampled verification of extension statements.

pub mod color_core;
pub mod fixtures;
pub mod obstructions;
pub mod planar_core;
pub mod sufficiency;
pub mod theorems;

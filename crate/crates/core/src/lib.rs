//! Tension percolation in a membrane punched with random convex holes.

pub mod geom;
pub mod lp;
pub mod scene;
pub mod seed;
pub mod closure;
pub mod stress;
pub mod lifting;
pub mod growth;
pub mod mc;
pub mod cli;

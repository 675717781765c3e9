//! Reference computations that share no code path with [`crate::moments`]
//! or [`crate::frame`]: finite-time Fubini–Study fits and classical
//! Frenet–Serret geometry of space curves.

pub mod classical;
pub mod lt;
pub mod optimize;

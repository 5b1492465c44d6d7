//! Biquandle bracket matrices of oriented knotoids.
//!
//! Pipeline: a [`biquandle::FiniteBiquandle`] colors the semiarcs of a
//! [`diagram::KnotoidCode`], [`coloring`] tallies the colorings by tail and
//! head color, and [`invariant`] evaluates a [`bracket::BiquandleBracket`]
//! state sum per coloring to build the bracket matrix.

pub mod biquandle;
pub mod bracket;
pub mod coloring;
pub mod diagram;
pub mod fixtures;
pub mod invariant;
pub mod ring;
pub mod text;

#[cfg(test)]
mod testing;

//! Quantum enhancement polynomials of oriented link diagrams over the
//! two-element tribracket, with the five universal tribracket brackets.

pub mod laurent;
pub mod diagram;
pub mod bracket;
pub mod coloring;
pub mod statesum;
pub mod derived;
pub mod fixtures;
pub mod suites;

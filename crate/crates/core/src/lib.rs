//! Exact-arithmetic toolkit for lossless communication of correlated
//! sources over two-receiver broadcast channels: information measures
//! over finite pmfs, rational polyhedral elimination, a Shannon-cone
//! prover, closed-form rate-region evaluators, and Monte Carlo checks
//! of the random-coding scheme.

pub mod exec;
pub mod itp;
pub mod measures;
pub mod polytope;
pub mod regions;
pub mod simcode;

pub mod grammar;
pub mod algebraic;
pub mod numeric;
pub mod engine;
pub mod certificate;
pub mod cli;

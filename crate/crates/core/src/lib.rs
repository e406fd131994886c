//! Exact-arithmetic finite element exterior calculus on the 4D pentatope and
//! tetrahedral prism.

#![allow(clippy::needless_range_loop)]

pub mod dofs;
pub mod element;
pub mod error;
pub mod form;
pub mod geometry;
pub mod integrate;
pub mod linalg;
pub mod orthopoly;
pub mod pentatope;
pub mod poly;
pub mod prism;
pub mod proxy;
pub mod rational;
pub mod space;
pub mod tabulate;
pub mod verify;

pub use error::{FeecError, Result};
pub use rational::Rational;

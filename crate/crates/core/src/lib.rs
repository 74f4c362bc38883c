//! Symbolic-numeric toolkit for the symmetry structure of the gas dynamics
//! equations with the pressure-translation state equation `P = f(rho) + S`.
//!
//! The crate provides:
//!
//! - a small computer-algebra kernel ([`expr`]): canonical expression trees
//!   over exact rationals with abstract function symbols and `ln|·|` nodes,
//!   differentiation, substitution, evaluation and randomized zero testing;
//! - vector fields on `(t, x, y, z, u, v, w, rho, P)` with Lie brackets,
//!   structure constants and automorphism checks ([`lie`]);
//! - a data-driven catalog of fifty four-dimensional subalgebras with their
//!   published invariants and verification routines ([`catalog`]);
//! - residual operators for the full gas dynamics system and its reduced
//!   submodel, the two exact solution families, and the admitted symmetry
//!   transformations ([`gasdyn`]);
//! - closed-form particle world lines, trajectory geometry, a Runge-Kutta
//!   integration oracle and figure-data export ([`kinematics`]).

pub mod catalog;
pub mod expr;
pub mod gasdyn;
pub mod kinematics;
pub mod lie;
pub mod linalg;
pub mod report;

pub use expr::{parse, Binding, Expr, FuncDef, Rat, SubstMap, ZeroKind, ZeroPolicy, ZeroVerdict};

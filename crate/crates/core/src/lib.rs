//! Operator calculi on Bruhat-type orders and their quasisymmetric generating
//! functions.
//!
//! * [`rbruhat`]: the r-Bruhat order on finite permutations and the `u_ab` operators.
//! * [`affineperm`], [`affinegraph`]: affine permutations in window notation,
//!   cores, and the affine 0-Bruhat multigraph with its `t_ab` operators.
//! * [`kschur`]: weak order on 0-grassmannians, Pieri rule and k-Schur functions.
//! * [`embedding`]: transport of r-Bruhat chains into the affine graph.
//! * [`qsym`], [`combinat`]: the symmetric and quasisymmetric function layer.
//!
//! Coefficients are generic over [`Coefficient`]; the aliases below fix them to
//! arbitrary precision integers.

pub mod affinegraph;
pub mod affineperm;
pub mod combinat;
mod dag;
pub mod embedding;
mod error;
pub mod kschur;
pub mod qsym;
pub mod rbruhat;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Coefficient;

use num_bigint::BigInt;

pub type QSym = qsym::QuasiSymFn<BigInt>;
pub type Sym = qsym::SymFn<BigInt>;
pub type KMatrix = kschur::KMatrix<BigInt>;

/// Default bound on the number of chains or paths materialized at once.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Resource limits for enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { cap: DEFAULT_CAP }
    }
}

/// Named pass/fail checks collected by the verification routines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, ok)| *ok)
    }
}

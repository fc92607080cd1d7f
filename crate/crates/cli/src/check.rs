use std::fmt;

use galois_core::{clone_closure, inv, pol, Limits, Operation, OperationSet, RelationSet};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// Which side of the comparison a witness belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Preserves every invariant but lies outside the clone.
    PolynomialOnly,
    /// In the clone yet violates some invariant.
    CloneOnly,
}

#[derive(Debug, Clone)]
pub struct GaloisReport {
    pub generators: Vec<String>,
    pub n: usize,
    pub k: usize,
    pub clone_part: OperationSet,
    pub invariant_count: usize,
    pub polymorphisms: OperationSet,
    pub status: Status,
    pub witness: Option<(Operation, Side)>,
}

impl GaloisReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Compares the `n`-ary part of the clone generated by `generators` with
/// the `n`-ary polymorphisms of all its invariants of arity `1..=k`.
/// `k` defaults to `d^n`, the arity of the graph relation.
pub fn galois_check(
    generators: &OperationSet,
    n: usize,
    max_k: Option<usize>,
    limits: &Limits,
) -> Result<GaloisReport> {
    let domain = generators.domain();
    let k = match max_k {
        Some(k) => k,
        None => domain
            .size()
            .checked_pow(n as u32)
            .ok_or_else(|| CliError::usage("d^n overflows"))?,
    };
    if k == 0 {
        return Err(CliError::usage("--max-k must be positive"));
    }
    let clone = clone_closure(generators, n, limits)?;
    let clone_part = clone.arity_part(n);
    let mut invariants = RelationSet::new(domain);
    for arity in 1..=k {
        invariants.extend(&inv(&clone, arity, limits)?)?;
    }
    let polymorphisms = pol(&invariants, n, limits)?;

    let witness = polymorphisms
        .difference(&clone_part)
        .next()
        .map(|f| (f.clone(), Side::PolynomialOnly))
        .or_else(|| {
            clone_part
                .difference(&polymorphisms)
                .next()
                .map(|f| (f.clone(), Side::CloneOnly))
        });
    Ok(GaloisReport {
        generators: generators.iter().map(|g| g.name().to_string()).collect(),
        n,
        k,
        clone_part,
        invariant_count: invariants.len(),
        polymorphisms,
        status: if witness.is_none() { Status::Pass } else { Status::Fail },
        witness,
    })
}

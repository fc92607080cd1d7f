//! Deciding primitive-positive definability on a finite domain.
//!
//! Enumerate `r` as `t` rows. The relation pp-defined from `R` by
//! projecting the graph relation of `Pol(R)` onto `r`'s columns is
//! `{ f(rows) : f in pol(R, t) }`: it contains `r` (projections) and is
//! the least relation invariant under `Pol(R)` that does. So `r` is
//! pp-definable from `R` exactly when that image adds nothing.

use crate::algebra::{Operation, Relation, Value};
use crate::error::Result;
use crate::galois::{pol, RelationSet};
use crate::limits::Limits;

/// Outcome of a definability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Definability {
    pub definable: bool,
    /// The least relation invariant under `Pol(R)` containing the input.
    pub closure: Relation,
    /// When not definable: a polymorphism of `R` and the tuple outside
    /// the input it produces from the input's rows.
    pub witness: Option<(Operation, Vec<Value>)>,
}

/// `f` applied row-wise: coordinate `j` of the image reads column `j`.
fn image(f: &Operation, columns: &[usize]) -> Vec<Value> {
    columns.iter().map(|&c| f.value_at(c)).collect()
}

/// Column `j` of `r`, as an input index of a `|r|`-ary table.
fn column_cells(r: &Relation) -> Vec<usize> {
    let d = r.domain().size();
    (0..r.arity())
        .map(|j| r.tuples().fold(0usize, |acc, t| acc * d + t[j] as usize))
        .collect()
}

/// The least relation containing `r` invariant under every polymorphism
/// of `rels`.
pub fn pp_closure_of(r: &Relation, rels: &RelationSet, limits: &Limits) -> Result<Relation> {
    Ok(pp_definability(r, rels, limits)?.closure)
}

pub fn is_pp_definable(r: &Relation, rels: &RelationSet, limits: &Limits) -> Result<bool> {
    Ok(pp_definability(r, rels, limits)?.definable)
}

pub fn pp_definability(r: &Relation, rels: &RelationSet, limits: &Limits) -> Result<Definability> {
    r.domain().ensure_same(rels.domain())?;
    if r.is_empty() && !limits.allow_nullary {
        // no rows to feed: every operation of positive arity maps nothing
        return Ok(Definability {
            definable: true,
            closure: r.clone(),
            witness: None,
        });
    }
    let polymorphisms = pol(rels, r.len(), limits)?;
    let columns = column_cells(r);
    let mut witness = None;
    let mut images = Vec::new();
    for f in polymorphisms.iter() {
        let t = image(f, &columns);
        if witness.is_none() && !r.contains(&t) {
            witness = Some((f.clone(), t.clone()));
        }
        images.push(t);
    }
    let closure = Relation::new(r.name(), r.domain(), r.arity(), images)?;
    Ok(Definability {
        definable: witness.is_none(),
        closure,
        witness,
    })
}

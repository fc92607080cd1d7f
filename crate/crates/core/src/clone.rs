//! Clone closure at bounded arity, the graph relation of a clone, and
//! essential-variable analysis.
//!
//! The `n`-ary part of the clone generated by `F` is the subpower of
//! `A^(A^n)` generated by the `n` projection tables under `F` acting
//! coordinatewise; every composition `f(g_0, ..., g_{m-1})` with `f` a
//! generator is one such application. Closing under generators alone
//! reaches the same fixpoint as closing under every member.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{make_projection, table_name, Domain, Operation, Relation, Value};
use crate::error::{Error, Result};
use crate::galois::close_tuples;
use crate::limits::{bounded_pow, Budget, Limits};

/// Canonical-ordered set of operations over one domain (by arity, then by
/// table). Inserting an operation equal to a member keeps the member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperationSet {
    domain: Domain,
    ops: BTreeSet<Operation>,
}

impl OperationSet {
    pub fn new(domain: Domain) -> Self {
        OperationSet {
            domain,
            ops: BTreeSet::new(),
        }
    }

    pub fn from_ops(domain: Domain, ops: impl IntoIterator<Item = Operation>) -> Result<Self> {
        let mut set = OperationSet::new(domain);
        for op in ops {
            set.insert(op)?;
        }
        Ok(set)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn insert(&mut self, op: Operation) -> Result<bool> {
        self.domain.ensure_same(op.domain())?;
        Ok(self.ops.insert(op))
    }

    pub fn contains(&self, op: &Operation) -> bool {
        self.ops.contains(op)
    }

    pub fn get(&self, name: &str) -> Option<&Operation> {
        self.ops.iter().find(|op| op.name() == name)
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Operation> + '_ {
        self.ops.iter()
    }

    pub fn of_arity(&self, arity: usize) -> impl Iterator<Item = &Operation> + '_ {
        self.ops.iter().filter(move |op| op.arity() == arity)
    }

    /// The members of one arity, as a set of their own.
    pub fn arity_part(&self, arity: usize) -> OperationSet {
        OperationSet {
            domain: self.domain,
            ops: self.of_arity(arity).cloned().collect(),
        }
    }

    pub fn max_arity(&self) -> Option<usize> {
        self.ops.iter().map(Operation::arity).max()
    }

    pub fn is_subset(&self, other: &OperationSet) -> bool {
        self.ops.is_subset(&other.ops)
    }

    pub fn union(&self, other: &OperationSet) -> Result<OperationSet> {
        let mut out = self.clone();
        for op in other.iter() {
            out.insert(op.clone())?;
        }
        Ok(out)
    }

    /// Members in `self` but not in `other`.
    pub fn difference<'a>(&'a self, other: &'a OperationSet) -> impl Iterator<Item = &'a Operation> + 'a {
        self.ops.difference(&other.ops)
    }
}

impl<'a> IntoIterator for &'a OperationSet {
    type Item = &'a Operation;
    type IntoIter = std::collections::btree_set::Iter<'a, Operation>;

    fn into_iter(self) -> Self::IntoIter {
        self.ops.iter()
    }
}

/// `pr{i}_{n}` for projections, otherwise the table-derived label.
pub fn canonical_name(op: &Operation) -> String {
    let n = op.arity();
    (0..n)
        .find(|&i| op.domain().tuples(n).zip(op.table()).all(|(t, &v)| t[i] == v))
        .map(|i| format!("pr{i}_{n}"))
        .unwrap_or_else(|| table_name(op.domain(), op.arity(), op.table()))
}

/// The least set of operations of arity at most `max_arity` containing all
/// projections and the generators of arity at most `max_arity`, closed
/// under composition.
pub fn clone_closure(generators: &OperationSet, max_arity: usize, limits: &Limits) -> Result<OperationSet> {
    if max_arity == 0 {
        return Err(Error::argument("clone closure needs max arity >= 1"));
    }
    let kept: Vec<&Operation> = generators.iter().filter(|g| g.arity() <= max_arity).collect();
    if let Some(g) = kept.iter().find(|g| g.arity() == 0) {
        limits.check_arity(0, &format!("generator `{}`", g.name()))?;
    }
    let low = if limits.allow_nullary { 0 } else { 1 };
    let mut out = OperationSet::new(generators.domain());
    for n in low..=max_arity {
        let part = arity_part(generators.domain(), &kept, n, limits, out.len())?;
        for op in part {
            out.insert(op)?;
        }
    }
    Ok(out)
}

/// True iff `g` belongs to `clone_closure(generators, max_arity)`.
pub fn clone_contains(generators: &OperationSet, g: &Operation, max_arity: usize, limits: &Limits) -> Result<bool> {
    generators.domain().ensure_same(g.domain())?;
    if g.arity() > max_arity {
        return Err(Error::argument(format!(
            "`{}` has arity {}, above the bound {max_arity}",
            g.name(),
            g.arity()
        )));
    }
    limits.check_arity(g.arity(), "clone membership")?;
    let kept: Vec<&Operation> = generators.iter().filter(|op| op.arity() <= max_arity).collect();
    let part = arity_part(generators.domain(), &kept, g.arity(), limits, 0)?;
    Ok(part.iter().any(|op| op == g))
}

/// The `arity`-ary members of the clone generated by `generators`, sorted,
/// with generator names kept where tables coincide.
fn arity_part(
    domain: Domain,
    generators: &[&Operation],
    arity: usize,
    limits: &Limits,
    already: usize,
) -> Result<Vec<Operation>> {
    let width = bounded_pow(domain.size(), arity, limits.max_table_size, "operation table size d^n")?;
    let seeds: Vec<Vec<Value>> = (0..arity)
        .map(|i| make_projection(domain, arity, i).map(Operation::into_table))
        .collect::<Result<_>>()?;
    let active: Vec<&Operation> = generators.iter().copied().filter(|g| !g.is_projection()).collect();
    let room = limits.max_closure_size.saturating_sub(already);
    let mut budget = Budget::new("clone closure", limits);
    let tables = close_tuples(&active, seeds, width, room, &mut budget)?;

    let names: BTreeMap<&[Value], &str> = generators
        .iter()
        .filter(|g| g.arity() == arity)
        .map(|g| (g.table(), g.name()))
        .collect();
    let mut ops: Vec<Operation> = tables
        .into_iter()
        .map(|table| {
            let name = names.get(table.as_slice()).map(|s| s.to_string());
            let op = Operation::from_parts_unchecked(String::new(), domain, arity, table);
            let name = name.unwrap_or_else(|| canonical_name(&op));
            op.with_name(name).expect("names are identifiers")
        })
        .collect();
    ops.sort();
    Ok(ops)
}

/// The relation of arity `d^n` whose tuples are the tables of the `n`-ary
/// members of the clone generated by `ops`. Coordinates follow the
/// operation-table order, so a tuple of the result is literally a table.
pub fn gamma(ops: &OperationSet, n: usize, limits: &Limits) -> Result<Relation> {
    limits.check_arity(n, "gamma")?;
    let domain = ops.domain();
    let width = bounded_pow(domain.size(), n, limits.max_table_size, "gamma arity d^n")?;
    let all: Vec<&Operation> = ops.iter().collect();
    if let Some(g) = all.iter().find(|g| g.arity() == 0) {
        limits.check_arity(0, &format!("operation `{}`", g.name()))?;
    }
    let members = arity_part(domain, &all, n, limits, 0)?;
    Relation::new(format!("gamma{n}"), domain, width, members.iter().map(Operation::table))
}

/// The coordinates an operation essentially depends on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialSet {
    op: Operation,
    indices: BTreeSet<usize>,
}

impl EssentialSet {
    pub fn op(&self) -> &Operation {
        &self.op
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Coordinates the operation ignores.
    pub fn inessential(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.op.arity()).filter(|i| !self.indices.contains(i))
    }
}

/// Coordinates `i` with inputs `a`, `b` differing only at `i` and
/// `f(a) != f(b)`. Scans every neighbouring pair.
pub fn essential_variables(f: &Operation) -> Result<EssentialSet> {
    let n = f.arity();
    if n == 0 {
        return Err(Error::argument("essential variables need arity >= 1"));
    }
    let d = f.domain().size();
    let mut indices = BTreeSet::new();
    for i in 0..n {
        // weight of coordinate i in the lexicographic index
        let stride = d.pow((n - 1 - i) as u32);
        let dependent = (0..f.table().len()).any(|a| {
            let digit = a / stride % d;
            let base = a - digit * stride;
            (digit + 1..d).any(|v| f.value_at(base + v * stride) != f.value_at(a))
        });
        if dependent {
            indices.insert(i);
        }
    }
    Ok(EssentialSet { op: f.clone(), indices })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d2() -> Domain {
        Domain::new(2).unwrap()
    }

    fn op(name: &str, arity: usize, table: &[Value]) -> Operation {
        Operation::new(name, d2(), arity, table.to_vec()).unwrap()
    }

    fn and() -> Operation {
        op("AND", 2, &[0, 0, 0, 1])
    }

    fn or() -> Operation {
        op("OR", 2, &[0, 1, 1, 1])
    }

    fn not() -> Operation {
        op("NOT", 1, &[1, 0])
    }

    fn set(list: &[Operation]) -> OperationSet {
        OperationSet::from_ops(d2(), list.iter().cloned()).unwrap()
    }

    fn tables(s: &OperationSet) -> Vec<(usize, Vec<Value>)> {
        s.iter().map(|o| (o.arity(), o.table().to_vec())).collect()
    }

    #[test]
    fn closure_of_nothing_is_projections() {
        let c = clone_closure(&OperationSet::new(d2()), 2, &Limits::default()).unwrap();
        assert_eq!(
            tables(&c),
            vec![(1, vec![0, 1]), (2, vec![0, 0, 1, 1]), (2, vec![0, 1, 0, 1])]
        );
        let names: Vec<&str> = c.iter().map(|o| o.name()).collect();
        assert_eq!(names, vec!["pr0_1", "pr0_2", "pr1_2"]);
    }

    #[test]
    fn closure_of_and() {
        let c = clone_closure(&set(&[and()]), 2, &Limits::default()).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.contains(&and()));
        assert_eq!(c.get("AND").unwrap(), &and());
    }

    #[test]
    fn closure_of_not() {
        let c = clone_closure(&set(&[not()]), 1, &Limits::default()).unwrap();
        assert_eq!(tables(&c), vec![(1, vec![0, 1]), (1, vec![1, 0])]);
    }

    #[test]
    fn closure_drops_high_arity_generators() {
        let maj = Operation::from_fn("maj", d2(), 3, |t| (t[0] + t[1] + t[2] >= 2) as Value).unwrap();
        let c = clone_closure(&set(&[maj]), 2, &Limits::default()).unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn closure_rejects_nullary_without_flag() {
        let c = op("c", 0, &[1]);
        assert!(clone_closure(&set(std::slice::from_ref(&c)), 2, &Limits::default()).is_err());
        let limits = Limits::default().with_nullary(true);
        let closed = clone_closure(&set(&[c, not()]), 1, &limits).unwrap();
        // c, NOT(c), then id, NOT, and the two unary constants
        assert_eq!(closed.of_arity(0).count(), 2);
        assert_eq!(closed.of_arity(1).count(), 4);
    }

    #[test]
    fn closure_size_cap() {
        let limits = Limits {
            max_closure_size: 3,
            ..Limits::default()
        };
        let err = clone_closure(&set(&[and()]), 2, &limits).unwrap_err();
        assert!(err.is_resource_bound(), "{err}");
    }

    #[test]
    fn membership() {
        let limits = Limits::default();
        assert!(!clone_contains(&set(&[and()]), &or(), 2, &limits).unwrap());
        let pr0 = make_projection(d2(), 2, 0).unwrap();
        assert!(clone_contains(&set(&[and()]), &pr0, 2, &limits).unwrap());
        let id = make_projection(d2(), 1, 0).unwrap();
        assert!(clone_contains(&set(&[not()]), &id, 1, &limits).unwrap());
        assert!(clone_contains(&set(&[not()]), &and(), 1, &limits).is_err());
    }

    #[test]
    fn gamma_examples() {
        let limits = Limits::default();
        let c = clone_closure(&set(&[not()]), 1, &limits).unwrap();
        let g = gamma(&c, 1, &limits).unwrap();
        assert_eq!(g.arity(), 2);
        assert_eq!(
            g.tuples().map(<[u8]>::to_vec).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![1, 0]]
        );

        let all_unary = set(&[
            op("a", 1, &[0, 0]),
            op("b", 1, &[0, 1]),
            op("c", 1, &[1, 0]),
            op("e", 1, &[1, 1]),
        ]);
        assert_eq!(gamma(&all_unary, 1, &limits).unwrap(), Relation::full(d2(), 2));

        let proj = clone_closure(&OperationSet::new(d2()), 2, &limits).unwrap();
        let g = gamma(&proj, 2, &limits).unwrap();
        assert_eq!(g.arity(), 4);
        assert_eq!(
            g.tuples().map(<[u8]>::to_vec).collect::<Vec<_>>(),
            vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1]]
        );
    }

    #[test]
    fn gamma_arity_cap() {
        let limits = Limits::default();
        assert!(gamma(&OperationSet::new(d2()), 9, &limits)
            .unwrap_err()
            .is_resource_bound());
    }

    #[test]
    fn essential_examples() {
        let pr0 = make_projection(d2(), 2, 0).unwrap();
        assert_eq!(
            essential_variables(&pr0)
                .unwrap()
                .indices()
                .iter()
                .copied()
                .collect::<Vec<_>>(),
            vec![0]
        );
        assert!(essential_variables(&op("z", 1, &[0, 0])).unwrap().is_empty());
        assert_eq!(essential_variables(&and()).unwrap().len(), 2);
        assert!(essential_variables(&op("c", 0, &[0])).is_err());
        let d3 = Domain::new(3).unwrap();
        let f = Operation::from_fn("f", d3, 3, |t| (t[0] + t[2]) % 3).unwrap();
        let e = essential_variables(&f).unwrap();
        assert_eq!(e.indices().iter().copied().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(e.inessential().collect::<Vec<_>>(), vec![1]);
    }
}

//! The two Galois maps at bounded arity, plus subpower generation.
//!
//! `inv` sweeps every subset of `A^k` as a bitmask; `pol` is a depth-first
//! search over table cells that checks each tuple combination exactly once,
//! at the depth where all the cells it reads have been assigned.

use std::collections::{BTreeSet, HashSet};

use crate::algebra::{Domain, Operation, Relation, Value};
use crate::clone::{canonical_name, OperationSet};
use crate::error::{Error, Result};
use crate::limits::{bounded_pow, Budget, Limits};

/// A canonical-ordered set of relations over one domain: by arity, then
/// by tuple list. Inserting a relation equal to a member is a no-op.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    domain: Domain,
    rels: BTreeSet<Relation>,
}

impl RelationSet {
    pub fn new(domain: Domain) -> Self {
        RelationSet {
            domain,
            rels: BTreeSet::new(),
        }
    }

    pub fn from_relations(domain: Domain, rels: impl IntoIterator<Item = Relation>) -> Result<Self> {
        let mut set = RelationSet::new(domain);
        for r in rels {
            set.insert(r)?;
        }
        Ok(set)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Returns false if an equal relation was already present.
    pub fn insert(&mut self, rel: Relation) -> Result<bool> {
        self.domain.ensure_same(rel.domain())?;
        Ok(self.rels.insert(rel))
    }

    pub fn contains(&self, rel: &Relation) -> bool {
        self.rels.contains(rel)
    }

    /// First member, in canonical order, carrying this name.
    pub fn get(&self, name: &str) -> Option<&Relation> {
        self.rels.iter().find(|r| r.name() == name)
    }

    pub fn len(&self) -> usize {
        self.rels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rels.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &Relation> + '_ {
        self.rels.iter()
    }

    pub fn of_arity(&self, arity: usize) -> impl Iterator<Item = &Relation> + '_ {
        self.rels.iter().filter(move |r| r.arity() == arity)
    }

    pub fn is_subset(&self, other: &RelationSet) -> bool {
        self.rels.is_subset(&other.rels)
    }

    pub fn extend(&mut self, other: &RelationSet) -> Result<()> {
        for r in other.iter() {
            self.insert(r.clone())?;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a RelationSet {
    type Item = &'a Relation;
    type IntoIter = std::collections::btree_set::Iter<'a, Relation>;

    fn into_iter(self) -> Self::IntoIter {
        self.rels.iter()
    }
}

/// All `k`-ary relations preserved by every member of `ops`.
pub fn inv(ops: &OperationSet, k: usize, limits: &Limits) -> Result<RelationSet> {
    limits.check_arity(k, "inv")?;
    let domain = ops.domain();
    let cells = bounded_pow(domain.size(), k, limits.max_inv_cells.min(63), "inv tuple space d^k")?;
    let subsets = 1u64 << cells;
    let mut budget = Budget::new("inv", limits);
    budget.spend(subsets)?;

    let tuples: Vec<Vec<Value>> = domain.tuples(k).collect();
    let mut images = Vec::new();
    for op in ops.iter().filter(|op| !op.is_projection()) {
        images.push(ImageTable::build(op, &tuples, &mut budget)?);
    }

    let mut found = Vec::new();
    let mut members = Vec::with_capacity(cells);
    for mask in 0..subsets {
        members.clear();
        members.extend((0..cells).filter(|&i| mask >> i & 1 == 1));
        if images.iter().all(|img| img.preserves(mask, &members)) {
            found.push(Relation::from_sorted_indices(
                String::new(),
                domain,
                k,
                members.iter().copied(),
            ));
        }
    }
    found.sort();
    let named = found
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.with_name(format!("inv{k}_{i}")).expect("generated name is valid"));
    RelationSet::from_relations(domain, named)
}

/// An operation lifted to tuple indices of `A^k`.
struct ImageTable {
    arity: usize,
    cells: usize,
    image: Vec<usize>,
}

impl ImageTable {
    fn build(op: &Operation, tuples: &[Vec<Value>], budget: &mut Budget) -> Result<Self> {
        let domain = op.domain();
        let d = domain.size();
        let m = op.arity();
        let cells = tuples.len();
        let size = bounded_pow(cells, m, usize::MAX, "inv image table")?;
        budget.spend(size as u64)?;
        let k = tuples.first().map_or(0, Vec::len);
        let mut out = vec![0 as Value; k];
        let image = (0..size)
            .map(|combo| {
                let args = domain_decode(combo, cells, m);
                for (j, slot) in out.iter_mut().enumerate() {
                    let cell = args.iter().fold(0usize, |acc, &t| acc * d + tuples[t][j] as usize);
                    *slot = op.value_at(cell);
                }
                domain.encode(&out)
            })
            .collect();
        Ok(ImageTable { arity: m, cells, image })
    }

    fn preserves(&self, mask: u64, members: &[usize]) -> bool {
        let m = self.arity;
        if m == 0 {
            return mask >> self.image[0] & 1 == 1;
        }
        if members.is_empty() {
            return true;
        }
        let mut choice = vec![0usize; m];
        loop {
            let combo = choice.iter().fold(0usize, |acc, &c| acc * self.cells + members[c]);
            if mask >> self.image[combo] & 1 == 0 {
                return false;
            }
            let mut pos = m;
            loop {
                if pos == 0 {
                    return true;
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < members.len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
    }
}

/// Base-`radix` digits of `index`, most significant first.
fn domain_decode(mut index: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % radix;
        index /= radix;
    }
    out
}

/// All `n`-ary operations preserving every member of `rels`.
pub fn pol(rels: &RelationSet, n: usize, limits: &Limits) -> Result<OperationSet> {
    limits.check_arity(n, "pol")?;
    let domain = rels.domain();
    let d = domain.size();
    let cells = bounded_pow(d, n, limits.max_pol_cells.min(u16::MAX as usize), "pol table size d^n")?;
    let mut budget = Budget::new("pol", limits);

    let mut checks: Vec<Vec<CellCheck>> = (0..cells).map(|_| Vec::new()).collect();
    let mut members = Vec::with_capacity(rels.len());
    for rel in rels.iter() {
        let k = rel.arity();
        let len = rel.len();
        if n > 0 && len == 0 {
            continue;
        }
        if k == 0 {
            // the single image is the empty tuple
            if len == 0 {
                return Ok(OperationSet::new(domain));
            }
            continue;
        }
        let combos = bounded_pow(len, n, usize::MAX, "pol tuple combinations")?;
        budget.spend(combos as u64)?;
        members.push(Membership::new(rel));
        let slot = members.len() - 1;
        let mut seen: HashSet<Vec<u16>> = HashSet::new();
        let mut per_cell: Vec<Vec<u16>> = vec![Vec::new(); cells];
        for combo in 0..combos {
            let choice = domain_decode(combo, len.max(1), n);
            let column: Vec<u16> = (0..k)
                .map(|j| choice.iter().fold(0usize, |acc, &t| acc * d + rel.tuple(t)[j] as usize) as u16)
                .collect();
            let last = *column.iter().max().expect("k >= 1") as usize;
            if seen.insert(column.clone()) {
                per_cell[last].extend_from_slice(&column);
            }
        }
        for (c, flat) in per_cell.into_iter().enumerate() {
            if !flat.is_empty() {
                checks[c].push(CellCheck {
                    member: slot,
                    arity: k,
                    columns: flat,
                });
            }
        }
    }

    let mut search = PolSearch {
        d,
        checks: &checks,
        members: &members,
        table: vec![0; cells],
        image: Vec::new(),
        found: Vec::new(),
        budget,
    };
    search.descend(0)?;
    let found = search.found;
    OperationSet::from_ops(
        domain,
        found.into_iter().map(|table| {
            let op = Operation::anonymous(domain, n, table).expect("search builds valid tables");
            let name = canonical_name(&op);
            op.with_name(name).expect("canonical name is valid")
        }),
    )
}

/// Image columns to verify once `cell` has been assigned.
struct CellCheck {
    member: usize,
    arity: usize,
    columns: Vec<u16>,
}

enum Membership<'a> {
    Dense(Vec<bool>, Domain),
    Sorted(&'a Relation),
}

impl<'a> Membership<'a> {
    fn new(rel: &'a Relation) -> Self {
        match crate::limits::checked_pow(rel.domain().size(), rel.arity()) {
            Some(space) if space <= 1 << 20 => {
                let mut bits = vec![false; space];
                for i in rel.indices() {
                    bits[i] = true;
                }
                Membership::Dense(bits, rel.domain())
            }
            _ => Membership::Sorted(rel),
        }
    }

    fn contains(&self, tuple: &[Value]) -> bool {
        match self {
            Membership::Dense(bits, domain) => bits[domain.encode(tuple)],
            Membership::Sorted(rel) => rel.contains(tuple),
        }
    }
}

struct PolSearch<'a, 'b> {
    d: usize,
    checks: &'a [Vec<CellCheck>],
    members: &'a [Membership<'b>],
    table: Vec<Value>,
    image: Vec<Value>,
    found: Vec<Vec<Value>>,
    budget: Budget<'static>,
}

impl PolSearch<'_, '_> {
    fn descend(&mut self, cell: usize) -> Result<()> {
        if cell == self.table.len() {
            self.found.push(self.table.clone());
            return Ok(());
        }
        for v in 0..self.d {
            self.budget.spend(1)?;
            self.table[cell] = v as Value;
            if self.consistent(cell) {
                self.descend(cell + 1)?;
            }
        }
        Ok(())
    }

    fn consistent(&mut self, cell: usize) -> bool {
        let checks = self.checks;
        for check in &checks[cell] {
            let member = &self.members[check.member];
            for column in check.columns.chunks_exact(check.arity) {
                self.image.clear();
                self.image.extend(column.iter().map(|&c| self.table[c as usize]));
                if !member.contains(&self.image) {
                    return false;
                }
            }
        }
        true
    }
}

/// The least relation containing `seeds` and closed under every member of
/// `ops` applied coordinatewise.
pub fn invariant_closure(ops: &OperationSet, seeds: &Relation, limits: &Limits) -> Result<Relation> {
    ops.domain().ensure_same(seeds.domain())?;
    let k = seeds.arity();
    let generators: Vec<&Operation> = ops.iter().filter(|op| !op.is_projection()).collect();
    let mut budget = Budget::new("invariant closure", limits);
    let space = crate::limits::checked_pow(seeds.domain().size(), k).unwrap_or(usize::MAX);
    let closed = close_tuples(
        &generators,
        seeds.tuples().map(<[Value]>::to_vec).collect(),
        k,
        space,
        &mut budget,
    )?;
    Relation::new(seeds.name(), seeds.domain(), k, closed)
}

/// Semi-naive fixpoint: each round applies every operation only to
/// argument lists that use at least one tuple found in the previous round.
pub(crate) fn close_tuples(
    ops: &[&Operation],
    seeds: Vec<Vec<Value>>,
    width: usize,
    max_size: usize,
    budget: &mut Budget,
) -> Result<Vec<Vec<Value>>> {
    let mut seen: HashSet<Vec<Value>> = HashSet::with_capacity(seeds.len());
    let mut known: Vec<Vec<Value>> = Vec::with_capacity(seeds.len());
    let admit = |t: Vec<Value>, seen: &mut HashSet<Vec<Value>>, known: &mut Vec<Vec<Value>>| -> Result<()> {
        if !seen.contains(&t) {
            seen.insert(t.clone());
            known.push(t);
            if known.len() > max_size {
                return Err(Error::resource("closure size", known.len() as u128, max_size as u128));
            }
        }
        Ok(())
    };
    for t in seeds {
        debug_assert_eq!(t.len(), width);
        admit(t, &mut seen, &mut known)?;
    }
    for op in ops.iter().filter(|op| op.arity() == 0) {
        budget.spend(1)?;
        admit(vec![op.value_at(0); width], &mut seen, &mut known)?;
    }

    let d = ops.first().map_or(1, |op| op.domain().size());
    let mut done = 0;
    let mut out = vec![0 as Value; width];
    while done < known.len() {
        let len = known.len();
        for op in ops.iter().filter(|op| op.arity() > 0) {
            let m = op.arity();
            // position p holds the first argument drawn from the new tuples
            for p in 0..m {
                let ranges: Vec<(usize, usize)> = (0..m)
                    .map(|i| match i.cmp(&p) {
                        std::cmp::Ordering::Less => (0, done),
                        std::cmp::Ordering::Equal => (done, len),
                        std::cmp::Ordering::Greater => (0, len),
                    })
                    .collect();
                if ranges.iter().any(|&(lo, hi)| lo >= hi) {
                    continue;
                }
                let mut choice: Vec<usize> = ranges.iter().map(|&(lo, _)| lo).collect();
                'combos: loop {
                    budget.spend(1)?;
                    for (j, slot) in out.iter_mut().enumerate() {
                        let cell = choice.iter().fold(0usize, |acc, &t| acc * d + known[t][j] as usize);
                        *slot = op.value_at(cell);
                    }
                    if !seen.contains(&out) {
                        admit(out.clone(), &mut seen, &mut known)?;
                    }
                    let mut pos = m;
                    loop {
                        if pos == 0 {
                            break 'combos;
                        }
                        pos -= 1;
                        choice[pos] += 1;
                        if choice[pos] < ranges[pos].1 {
                            break;
                        }
                        choice[pos] = ranges[pos].0;
                    }
                }
            }
        }
        done = len;
    }
    Ok(known)
}

//! Slow, obviously-correct reference implementations.
//!
//! Everything here works from raw tables and tuple lists by exhaustive
//! enumeration and shares no algorithm with `galois-core`; the core types
//! are only used as carriers.

use std::collections::BTreeSet;

use galois_core::{Atom, Operation, PPFormula, Partition, Relation};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Table = Vec<u8>;
pub type Tuples = BTreeSet<Vec<u8>>;

/// Every tuple of length `len` over `0..d`, lexicographically.
pub fn all_tuples(d: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..d as u8).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// Every table of an `n`-ary operation on `0..d`.
pub fn all_tables(d: usize, n: usize) -> Vec<Table> {
    all_tuples(d, d.pow(n as u32))
}

pub fn lookup(d: usize, table: &[u8], args: &[u8]) -> u8 {
    let mut idx = 0;
    for &a in args {
        idx = idx * d + a as usize;
    }
    table[idx]
}

pub fn tuple_set(r: &Relation) -> Tuples {
    r.tuples().map(<[u8]>::to_vec).collect()
}

/// Applies an `n`-ary table to every choice of `n` rows of `rows`,
/// column by column.
fn images(d: usize, n: usize, table: &[u8], rows: &[Vec<u8>], width: usize, out: &mut Tuples) {
    fn go(d: usize, n: usize, table: &[u8], rows: &[Vec<u8>], width: usize, picked: &mut Vec<usize>, out: &mut Tuples) {
        if picked.len() == n {
            let t = (0..width)
                .map(|c| {
                    let args: Vec<u8> = picked.iter().map(|&i| rows[i][c]).collect();
                    lookup(d, table, &args)
                })
                .collect();
            out.insert(t);
            return;
        }
        for i in 0..rows.len() {
            picked.push(i);
            go(d, n, table, rows, width, picked, out);
            picked.pop();
        }
    }
    go(d, n, table, rows, width, &mut Vec::new(), out);
}

pub fn table_preserves(d: usize, n: usize, table: &[u8], rows: &Tuples, width: usize) -> bool {
    let list: Vec<_> = rows.iter().cloned().collect();
    let mut out = Tuples::new();
    images(d, n, table, &list, width, &mut out);
    out.is_subset(rows)
}

pub fn naive_preserves(f: &Operation, r: &Relation) -> bool {
    table_preserves(f.domain().size(), f.arity(), f.table(), &tuple_set(r), r.arity())
}

/// Tables of all `n`-ary polymorphisms, filtered from the full table space.
pub fn brute_pol(rels: &[Relation], d: usize, n: usize) -> BTreeSet<Table> {
    let sets: Vec<_> = rels.iter().map(|r| (tuple_set(r), r.arity())).collect();
    all_tables(d, n)
        .into_iter()
        .filter(|t| sets.iter().all(|(s, w)| table_preserves(d, n, t, s, *w)))
        .collect()
}

/// Every `k`-ary relation preserved by all of `ops`, by subset sweep.
pub fn brute_inv(ops: &[Operation], d: usize, k: usize) -> BTreeSet<Tuples> {
    let space = all_tuples(d, k);
    assert!(space.len() <= 16, "oracle sweep too large");
    (0u32..1 << space.len())
        .map(|mask| {
            space
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, t)| t.clone())
                .collect::<Tuples>()
        })
        .filter(|s| ops.iter().all(|f| table_preserves(d, f.arity(), f.table(), s, k)))
        .collect()
}

fn projection_table(d: usize, n: usize, i: usize) -> Table {
    all_tuples(d, n).into_iter().map(|a| a[i]).collect()
}

/// `f(g_1, ..., g_m)` on raw tables; every `g` is `n`-ary.
pub fn compose_tables(d: usize, f: &[u8], gs: &[&[u8]], n: usize) -> Table {
    all_tuples(d, n)
        .into_iter()
        .enumerate()
        .map(|(idx, _)| {
            let inner: Vec<u8> = gs.iter().map(|g| g[idx]).collect();
            lookup(d, f, &inner)
        })
        .collect()
}

/// The literal fixpoint: projections and generators of arity at most `m`,
/// closed under every composition `f(g_1, ..., g_a)` with all `g_i` of a
/// common arity `<= m`. Returns `(arity, table)` pairs.
pub fn naive_clone(gens: &[Operation], d: usize, m: usize) -> BTreeSet<(usize, Table)> {
    let mut set: BTreeSet<(usize, Table)> = BTreeSet::new();
    for n in 1..=m {
        for i in 0..n {
            set.insert((n, projection_table(d, n, i)));
        }
    }
    for g in gens.iter().filter(|g| g.arity() >= 1 && g.arity() <= m) {
        set.insert((g.arity(), g.table().to_vec()));
    }
    loop {
        let snapshot: Vec<_> = set.iter().cloned().collect();
        let mut added = false;
        for (a, f) in &snapshot {
            for n in 1..=m {
                let inner: Vec<&Table> = snapshot.iter().filter(|(k, _)| *k == n).map(|(_, t)| t).collect();
                let mut choice = vec![0usize; *a];
                loop {
                    let gs: Vec<&[u8]> = choice.iter().map(|&c| inner[c].as_slice()).collect();
                    added |= set.insert((n, compose_tables(d, f, &gs, n)));
                    let mut pos = *a;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        choice[pos] += 1;
                        if choice[pos] < inner.len() {
                            break;
                        }
                        choice[pos] = 0;
                    }
                    if choice.iter().all(|&c| c == 0) {
                        break;
                    }
                }
            }
        }
        if !added {
            return set;
        }
    }
}

/// Satisfying assignments of a pp formula, projected to its free
/// variables, by trying every assignment of every variable.
pub fn naive_eval(phi: &PPFormula, rels: &[Relation], d: usize) -> Tuples {
    let vars: Vec<&str> = phi
        .free_vars()
        .iter()
        .chain(phi.exist_vars())
        .map(String::as_str)
        .collect();
    let pos = |v: &str| vars.iter().position(|&w| w == v).unwrap();
    let mut out = Tuples::new();
    for assignment in all_tuples(d, vars.len()) {
        let holds = phi.atoms().iter().all(|atom| match atom {
            Atom::Relation { name, vars: args } => {
                let r = rels.iter().find(|r| r.name() == name).expect("unbound relation");
                let t: Vec<u8> = args.iter().map(|v| assignment[pos(v)]).collect();
                r.tuples().any(|s| s == t.as_slice())
            }
            Atom::Equality { left, right } => assignment[pos(left)] == assignment[pos(right)],
        });
        if holds {
            out.insert(assignment[..phi.arity()].to_vec());
        }
    }
    out
}

/// The least relation containing `r` that every `|r|`-ary polymorphism of
/// `rels` preserves: the intersection of all such supersets of `r`.
pub fn least_invariant_superset(r: &Relation, rels: &[Relation], d: usize) -> Tuples {
    let base = tuple_set(r);
    if base.is_empty() {
        return base;
    }
    let n = base.len();
    let polys = brute_pol(rels, d, n);
    let space: Vec<_> = all_tuples(d, r.arity())
        .into_iter()
        .filter(|t| !base.contains(t))
        .collect();
    assert!(space.len() <= 16, "oracle sweep too large");
    let mut least: Option<Tuples> = None;
    for mask in 0u32..1 << space.len() {
        let mut s = base.clone();
        s.extend(
            space
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, t)| t.clone()),
        );
        if polys.iter().all(|t| table_preserves(d, n, t, &s, r.arity())) {
            least = Some(match least {
                None => s,
                Some(l) => l.intersection(&s).cloned().collect(),
            });
        }
    }
    least.expect("the full relation is always invariant")
}

/// All set partitions of `0..k` as block lists, by inserting each element
/// into an existing block or a new one.
pub fn set_partitions(k: usize) -> Vec<Vec<Vec<usize>>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in set_partitions(k - 1) {
        for b in 0..p.len() {
            let mut q = p.clone();
            q[b].push(k - 1);
            out.push(q);
        }
        let mut q = p;
        q.push(vec![k - 1]);
        out.push(q);
    }
    out
}

/// Tuples of `A^kappa` whose equality pattern is one of `members`.
pub fn naive_diagonal(members: &[Partition], d: usize, kappa: usize) -> Tuples {
    all_tuples(d, kappa)
        .into_iter()
        .filter(|t| {
            members
                .iter()
                .any(|p| (0..kappa).all(|i| (0..kappa).all(|j| (t[i] == t[j]) == p.same_block(i, j))))
        })
        .collect()
}

/// A random pp formula over relations given as `(name, arity)`, with up
/// to `max_atoms` atoms and `max_exist` quantified variables.
pub fn random_formula<R: Rng>(rng: &mut R, rels: &[(&str, usize)], max_atoms: usize, max_exist: usize) -> PPFormula {
    let free_count = rng.gen_range(1..=3);
    let exist_count = rng.gen_range(0..=max_exist);
    let free: Vec<String> = (0..free_count).map(|i| format!("x{i}")).collect();
    let exist: Vec<String> = (0..exist_count).map(|i| format!("y{i}")).collect();
    let all: Vec<&String> = free.iter().chain(&exist).collect();
    let atom_count = rng.gen_range(0..=max_atoms);
    let atoms = (0..atom_count)
        .map(|_| {
            if rng.gen_bool(0.2) {
                Atom::equality(all.choose(rng).unwrap().as_str(), all.choose(rng).unwrap().as_str())
            } else {
                let (name, arity) = rels.choose(rng).unwrap();
                let vars: Vec<&str> = (0..*arity).map(|_| all.choose(rng).unwrap().as_str()).collect();
                Atom::relation(*name, &vars)
            }
        })
        .collect();
    PPFormula::new("phi", free, exist, atoms).unwrap()
}

/// A random relation of the given arity with at most `max_len` tuples.
pub fn random_relation<R: Rng>(rng: &mut R, name: &str, d: usize, arity: usize, max_len: usize) -> Relation {
    let space = all_tuples(d, arity);
    let len = rng.gen_range(0..=max_len.min(space.len()));
    let tuples: Vec<_> = space.choose_multiple(rng, len).cloned().collect();
    Relation::new(name, galois_core::Domain::new(d).unwrap(), arity, tuples).unwrap()
}

pub fn random_operation<R: Rng>(rng: &mut R, name: &str, d: usize, arity: usize) -> Operation {
    let table = (0..d.pow(arity as u32)).map(|_| rng.gen_range(0..d as u8)).collect();
    Operation::new(name, galois_core::Domain::new(d).unwrap(), arity, table).unwrap()
}

#![allow(dead_code)]

use galois_core::{Domain, Operation, Relation};
use proptest::prelude::*;

pub fn dom(d: usize) -> Domain {
    Domain::new(d).unwrap()
}

pub fn op(name: &str, d: usize, table: &[u8]) -> Operation {
    let arity = (0..).find(|&n| d.pow(n) == table.len()).unwrap() as usize;
    Operation::new(name, dom(d), arity, table.to_vec()).unwrap()
}

pub fn rel(name: &str, d: usize, arity: usize, tuples: &[&[u8]]) -> Relation {
    Relation::new(name, dom(d), arity, tuples.iter().copied()).unwrap()
}

pub fn and() -> Operation {
    op("AND", 2, &[0, 0, 0, 1])
}

pub fn or() -> Operation {
    op("OR", 2, &[0, 1, 1, 1])
}

pub fn xor() -> Operation {
    op("XOR", 2, &[0, 1, 1, 0])
}

pub fn not() -> Operation {
    op("NOT", 2, &[1, 0])
}

pub fn leq() -> Relation {
    rel("leq", 2, 2, &[&[0, 0], &[0, 1], &[1, 1]])
}

pub fn neq() -> Relation {
    rel("neq", 2, 2, &[&[0, 1], &[1, 0]])
}

pub fn arb_op(d: usize, arity: usize) -> impl Strategy<Value = Operation> {
    prop::collection::vec(0..d as u8, d.pow(arity as u32))
        .prop_map(move |t| Operation::new("f", dom(d), arity, t).unwrap())
}

pub fn arb_rel(d: usize, arity: usize, max_len: usize) -> impl Strategy<Value = Relation> {
    let space = d.pow(arity as u32);
    prop::collection::btree_set(0..space, 0..=max_len.min(space)).prop_map(move |idx| {
        let domain = dom(d);
        Relation::new("r", domain, arity, idx.into_iter().map(|i| domain.decode(i, arity))).unwrap()
    })
}

/// Up to `max` operations of arity 1 or 2 on `d`.
pub fn arb_ops(d: usize, max: usize) -> impl Strategy<Value = Vec<Operation>> {
    prop::collection::vec((1..=2usize).prop_flat_map(move |a| arb_op(d, a)), 0..=max).prop_map(|ops| {
        ops.into_iter()
            .enumerate()
            .map(|(i, f)| f.with_name(format!("g{i}")).unwrap())
            .collect()
    })
}

pub fn arb_rels(d: usize, max: usize, max_arity: usize, max_len: usize) -> impl Strategy<Value = Vec<Relation>> {
    prop::collection::vec((1..=max_arity).prop_flat_map(move |a| arb_rel(d, a, max_len)), 0..=max).prop_map(|rs| {
        rs.into_iter()
            .enumerate()
            .map(|(i, r)| r.with_name(format!("r{i}")).unwrap())
            .collect()
    })
}

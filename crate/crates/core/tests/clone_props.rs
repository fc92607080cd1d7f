mod common;

use std::collections::BTreeSet;

use common::*;
use galois_core::{
    clone_closure, clone_contains, essential_variables, gamma, inv, preserves, Limits, Operation, OperationSet,
};
use galois_oracles::{all_tables, all_tuples, lookup, naive_clone, naive_preserves};
use proptest::prelude::*;

fn set(d: usize, ops: &[Operation]) -> OperationSet {
    OperationSet::from_ops(dom(d), ops.iter().cloned()).unwrap()
}

fn tables(c: &OperationSet) -> BTreeSet<(usize, Vec<u8>)> {
    c.iter().map(|f| (f.arity(), f.table().to_vec())).collect()
}

/// The binary parts of every clone on two elements generated by binary
/// operations, found by adding one operation at a time.
fn binary_clones() -> Vec<OperationSet> {
    let limits = Limits::default();
    let binaries: Vec<_> = all_tables(2, 2)
        .into_iter()
        .map(|t| Operation::new("f", dom(2), 2, t).unwrap())
        .collect();
    let mut seen = BTreeSet::new();
    let mut queue = vec![clone_closure(&OperationSet::new(dom(2)), 2, &limits).unwrap()];
    let mut out = Vec::new();
    while let Some(c) = queue.pop() {
        if !seen.insert(tables(&c)) {
            continue;
        }
        for f in &binaries {
            if !c.contains(f) {
                let mut gens = c.clone();
                gens.insert(f.clone()).unwrap();
                queue.push(clone_closure(&gens, 2, &limits).unwrap());
            }
        }
        out.push(c);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_matches_literal_fixpoint(gens in arb_ops(2, 3)) {
        let c = clone_closure(&set(2, &gens), 2, &Limits::default()).unwrap();
        prop_assert_eq!(tables(&c), naive_clone(&gens, 2, 2));
    }

    #[test]
    fn closure_matches_literal_fixpoint_unary_three(
        gens in prop::collection::vec(arb_op(3, 1), 0..=3)
    ) {
        let c = clone_closure(&set(3, &gens), 1, &Limits::default()).unwrap();
        prop_assert_eq!(tables(&c), naive_clone(&gens, 3, 1));
    }

    #[test]
    fn closure_operator_laws(a in arb_ops(2, 2), b in arb_ops(2, 2), m in 1..=2usize) {
        let limits = Limits::default();
        let small = set(2, &a);
        let mut big = small.clone();
        for g in &b {
            big.insert(g.clone()).unwrap();
        }
        let ca = clone_closure(&small, m, &limits).unwrap();
        let cb = clone_closure(&big, m, &limits).unwrap();
        for g in small.iter().filter(|g| g.arity() <= m) {
            prop_assert!(ca.contains(g));
        }
        prop_assert!(ca.is_subset(&cb));
        prop_assert_eq!(clone_closure(&ca, m, &limits).unwrap(), ca);
    }

    #[test]
    fn contains_agrees_with_fixpoint(gens in arb_ops(2, 2), g in arb_op(2, 2)) {
        let naive = naive_clone(&gens, 2, 2);
        let got = clone_contains(&set(2, &gens), &g, 2, &Limits::default()).unwrap();
        prop_assert_eq!(got, naive.contains(&(2, g.table().to_vec())));
    }

    #[test]
    fn essential_set_is_exact(f in (2..=3usize, 1..=3usize).prop_flat_map(|(d, n)| arb_op(d, n))) {
        let d = f.domain().size();
        let n = f.arity();
        let ess = essential_variables(&f).unwrap();
        for i in 0..n {
            let depends = all_tuples(d, n).into_iter().any(|a| {
                (0..d as u8).any(|v| {
                    let mut b = a.clone();
                    b[i] = v;
                    lookup(d, f.table(), &a) != lookup(d, f.table(), &b)
                })
            });
            prop_assert_eq!(ess.contains(i), depends, "variable {}", i);
        }
    }
}

#[test]
fn gamma_separates_every_binary_clone() {
    let limits = Limits::default();
    let clones = binary_clones();
    assert!(clones.len() > 10);
    for c in &clones {
        let g = gamma(c, 2, &limits).unwrap();
        for t in all_tables(2, 2) {
            let f = Operation::new("f", dom(2), 2, t).unwrap();
            assert_eq!(
                naive_preserves(&f, &g),
                c.contains(&f),
                "{f} against clone of {} ops",
                c.len()
            );
            assert_eq!(preserves(&f, &g).unwrap(), c.contains(&f));
        }
    }
}

#[test]
fn gamma_is_invariant() {
    let limits = Limits::default();
    for c in binary_clones() {
        for n in 1..=2 {
            let g = gamma(&c, n, &limits).unwrap();
            assert_eq!(g.arity(), 2usize.pow(n as u32));
            assert!(c.iter().all(|f| naive_preserves(f, &g)));
        }
        let g1 = gamma(&c, 1, &limits).unwrap();
        assert!(inv(&c, 2, &limits).unwrap().contains(&g1));
    }
    let c = clone_closure(&set(2, &[and()]), 2, &limits).unwrap();
    assert!(inv(&c, 4, &limits).unwrap().contains(&gamma(&c, 2, &limits).unwrap()));
}

#[test]
fn gamma_rows_are_tables() {
    let limits = Limits::default();
    let c = clone_closure(&set(2, &[xor(), not()]), 2, &limits).unwrap();
    let g = gamma(&c, 2, &limits).unwrap();
    let rows: BTreeSet<Vec<u8>> = g.tuples().map(<[u8]>::to_vec).collect();
    let part: BTreeSet<Vec<u8>> = c.of_arity(2).map(|f| f.table().to_vec()).collect();
    assert_eq!(rows, part);
    assert_eq!(rows.len(), 8);
}

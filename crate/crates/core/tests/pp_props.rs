mod common;

use common::*;
use galois_core::{
    eval_pp, is_pp_definable, pp_closure_of, pp_definability, Atom, Limits, PPFormula, Relation, RelationSet,
};
use galois_oracles::{least_invariant_superset, naive_eval, random_formula, random_relation, tuple_set};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn env(d: usize, rng: &mut StdRng) -> Vec<Relation> {
    vec![
        random_relation(rng, "p", d, 1, d),
        random_relation(rng, "q", d, 2, 5),
        random_relation(rng, "s", d, 3, 6),
    ]
}

const SHAPES: [(&str, usize); 3] = [("p", 1), ("q", 2), ("s", 3)];

#[test]
fn eval_matches_all_assignments() {
    let mut rng = StdRng::seed_from_u64(7);
    for round in 0..300 {
        let d = if round % 2 == 0 { 2 } else { 3 };
        let rs = env(d, &mut rng);
        let phi = random_formula(&mut rng, &SHAPES, 4, 3);
        let got = eval_pp(&phi, &rs, dom(d)).unwrap();
        assert_eq!(tuple_set(&got), naive_eval(&phi, &rs, d), "{phi}");
    }
}

#[test]
fn atom_order_and_renaming_do_not_matter() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let rs = env(2, &mut rng);
        let phi = random_formula(&mut rng, &SHAPES, 4, 2);
        let mut atoms = phi.atoms().to_vec();
        atoms.reverse();
        let rename = |v: &str| format!("v_{v}");
        let renamed: Vec<Atom> = atoms
            .iter()
            .map(|a| match a {
                Atom::Relation { name, vars } => Atom::Relation {
                    name: name.clone(),
                    vars: vars.iter().map(|v| rename(v)).collect(),
                },
                Atom::Equality { left, right } => Atom::equality(rename(left), rename(right)),
            })
            .collect();
        let psi = PPFormula::new(
            "psi",
            phi.free_vars().iter().map(|v| rename(v)).collect(),
            phi.exist_vars().iter().rev().map(|v| rename(v)).collect(),
            renamed,
        )
        .unwrap();
        assert_eq!(eval_pp(&phi, &rs, dom(2)).unwrap(), eval_pp(&psi, &rs, dom(2)).unwrap());
    }
}

#[test]
fn evaluated_formulas_are_definable() {
    let mut rng = StdRng::seed_from_u64(13);
    let limits = Limits::default();
    let shapes = [("p", 1), ("q", 2)];
    for _ in 0..60 {
        let rs = env(2, &mut rng);
        let set = RelationSet::from_relations(dom(2), rs.iter().cloned()).unwrap();
        let phi = random_formula(&mut rng, &shapes, 3, 2);
        if phi.arity() > 2 {
            continue;
        }
        let r = eval_pp(&phi, &rs, dom(2)).unwrap();
        assert!(is_pp_definable(&r, &set, &limits).unwrap(), "{phi} gave {r}");
    }
}

#[test]
fn undefinable_relations_are_never_produced() {
    let mut rng = StdRng::seed_from_u64(17);
    let limits = Limits::default();
    let set = RelationSet::from_relations(dom(2), [leq()]).unwrap();
    assert!(!is_pp_definable(&neq(), &set, &limits).unwrap());
    for _ in 0..300 {
        let phi = random_formula(&mut rng, &[("leq", 2)], 4, 3);
        assert_ne!(eval_pp(&phi, &[leq()][..], dom(2)).unwrap(), neq(), "{phi}");
    }
}

#[test]
fn definability_agrees_with_least_invariant_superset() {
    let mut rng = StdRng::seed_from_u64(19);
    let limits = Limits::default();
    for _ in 0..80 {
        let rs: Vec<_> = (0..rng.gen_range(0..=2))
            .map(|i| {
                let arity = rng.gen_range(1..=2);
                random_relation(&mut rng, &format!("b{i}"), 2, arity, 3)
            })
            .collect();
        let set = RelationSet::from_relations(dom(2), rs.iter().cloned()).unwrap();
        let arity = rng.gen_range(1..=3);
        let r = random_relation(&mut rng, "r", 2, arity, 3);
        let least = least_invariant_superset(&r, &rs, 2);
        let verdict = pp_definability(&r, &set, &limits).unwrap();
        assert_eq!(tuple_set(&verdict.closure), least);
        assert_eq!(verdict.definable, least == tuple_set(&r));
        if let Some((f, t)) = &verdict.witness {
            assert!(!r.contains(t));
            assert!(rs.iter().all(|s| galois_oracles::naive_preserves(f, s)));
        }
    }
}

#[test]
fn pp_closure_laws() {
    let mut rng = StdRng::seed_from_u64(23);
    let limits = Limits::default();
    for _ in 0..60 {
        let rs = vec![random_relation(&mut rng, "b", 2, 2, 3)];
        let set = RelationSet::from_relations(dom(2), rs).unwrap();
        let arity = rng.gen_range(1..=2);
        let a = random_relation(&mut rng, "a", 2, arity, 2);
        let extra = random_relation(&mut rng, "e", 2, arity, 1);
        let ab = a.union(&extra).unwrap();
        let ca = pp_closure_of(&a, &set, &limits).unwrap();
        assert!(a.is_subset(&ca));
        assert!(ca.is_subset(&pp_closure_of(&ab, &set, &limits).unwrap()));
        assert_eq!(pp_closure_of(&ca, &set, &limits).unwrap(), ca);
    }
}

#[test]
fn base_relations_are_definable() {
    let mut rng = StdRng::seed_from_u64(29);
    let limits = Limits::default();
    for _ in 0..40 {
        let rs = vec![
            random_relation(&mut rng, "b", 2, 2, 4),
            random_relation(&mut rng, "c", 2, 1, 2),
        ];
        let set = RelationSet::from_relations(dom(2), rs.clone()).unwrap();
        for r in &rs {
            assert!(is_pp_definable(r, &set, &limits).unwrap());
        }
    }
}

//! Ideals of the lattice of equivalence relations and the generalized
//! diagonal relations they induce: `D_E` collects the tuples whose kernel
//! lies in the ideal `E`.
//!
//! The ideal order here is reverse inclusion of pair sets: `p` sits below
//! `q` when `q` refines `p`. The least element is the one-block partition
//! and the lattice join is the refinement meet. Read in refinement terms,
//! an ideal is a nonempty family closed under coarsening and under
//! meets, and the least ideal `{top}` gives the plain diagonal
//! `{(a, ..., a)}`. With this orientation every finitary operation
//! preserves every `D_E`: agreement on finitely many kernels in `E` is a
//! meet of members, and the image kernel can only be coarser.

use std::collections::BTreeSet;

use crate::algebra::{preserves, Domain, Operation, Relation};
use crate::error::{Error, Result};
use crate::limits::{bounded_pow, Limits};
use crate::partition::{partition_lattice, Partition, PartitionLattice};

/// A nonempty family of partitions closed under coarsening and meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionIdeal {
    index_size: usize,
    members: BTreeSet<Partition>,
}

impl PartitionIdeal {
    /// Validates both closure properties.
    pub fn from_members(
        index_size: usize,
        members: impl IntoIterator<Item = Partition>,
        limits: &Limits,
    ) -> Result<Self> {
        let members: BTreeSet<Partition> = members.into_iter().collect();
        if let Some(p) = members.iter().find(|p| p.index_size() != index_size) {
            return Err(Error::argument(format!(
                "partition {p} is not on {index_size} elements"
            )));
        }
        if members.is_empty() {
            return Err(Error::argument("an ideal is nonempty"));
        }
        let lattice = partition_lattice(index_size, limits)?;
        for p in &members {
            if let Some(q) = coarsenings(&lattice, p).find(|q| !members.contains(q)) {
                return Err(Error::argument(format!(
                    "not closed under coarsening: {q} is coarser than {p}"
                )));
            }
            for q in &members {
                let m = p.meet(q);
                if !members.contains(&m) {
                    return Err(Error::argument(format!("not meet closed: {p} ^ {q} = {m} is missing")));
                }
            }
        }
        Ok(PartitionIdeal { index_size, members })
    }

    /// The whole lattice.
    pub fn full(index_size: usize, limits: &Limits) -> Result<Self> {
        ideal_downset(&[Partition::bottom(index_size)], index_size, limits)
    }

    /// The least ideal, `{top}`.
    pub fn least(index_size: usize) -> Self {
        PartitionIdeal {
            index_size,
            members: [Partition::top(index_size)].into(),
        }
    }

    pub fn index_size(&self) -> usize {
        self.index_size
    }

    pub fn members(&self) -> &BTreeSet<Partition> {
        &self.members
    }

    pub fn contains(&self, p: &Partition) -> bool {
        self.members.contains(p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &PartitionIdeal) -> bool {
        self.index_size == other.index_size && self.members.is_subset(&other.members)
    }

    /// Greatest member in the ideal order, i.e. the refinement meet of all
    /// members. A finite ideal is generated by it.
    pub fn generator(&self) -> Partition {
        self.members
            .iter()
            .fold(Partition::top(self.index_size), |acc, p| acc.meet(p))
    }
}

fn coarsenings<'a>(lattice: &'a PartitionLattice, p: &'a Partition) -> impl Iterator<Item = &'a Partition> + 'a {
    lattice.iter().filter(move |q| p.refines(q))
}

/// Least ideal containing `generators`. With no generators this is the
/// least ideal `{top}`.
pub fn ideal_downset(generators: &[Partition], kappa: usize, limits: &Limits) -> Result<PartitionIdeal> {
    let lattice = partition_lattice(kappa, limits)?;
    if let Some(p) = generators.iter().find(|p| p.index_size() != kappa) {
        return Err(Error::argument(format!("partition {p} is not on {kappa} elements")));
    }
    let mut members: BTreeSet<Partition> = generators.iter().cloned().collect();
    members.insert(lattice.top());
    loop {
        let mut next = members.clone();
        for p in &members {
            next.extend(coarsenings(&lattice, p).cloned());
            for q in &members {
                next.insert(p.meet(q));
            }
        }
        if next.len() == members.len() {
            break;
        }
        members = next;
    }
    Ok(PartitionIdeal {
        index_size: kappa,
        members,
    })
}

/// `D_E` together with the ideal it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalRelation {
    ideal: PartitionIdeal,
    relation: Relation,
}

impl DiagonalRelation {
    pub fn new(ideal: PartitionIdeal, domain: Domain, limits: &Limits) -> Result<Self> {
        let relation = diagonal_relation(&ideal, domain, limits)?;
        Ok(DiagonalRelation { ideal, relation })
    }

    pub fn ideal(&self) -> &PartitionIdeal {
        &self.ideal
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn into_relation(self) -> Relation {
        self.relation
    }
}

/// `{ t in A^kappa : kernel(t) in E }`
pub fn diagonal_relation(ideal: &PartitionIdeal, domain: Domain, limits: &Limits) -> Result<Relation> {
    let kappa = ideal.index_size();
    let space = bounded_pow(
        domain.size(),
        kappa,
        limits.max_diagonal_cells,
        "diagonal relation d^kappa",
    )?;
    let indices = (0..space).filter(|&i| ideal.contains(&Partition::kernel_of(&domain.decode(i, kappa))));
    Ok(Relation::from_sorted_indices("diag".into(), domain, kappa, indices))
}

/// Whether `f` preserves `D_E`. Every operation of finite arity depends on
/// finitely many coordinates, so this holds for every `f` and `E`.
pub fn check_finitary_preservation(f: &Operation, ideal: &PartitionIdeal, limits: &Limits) -> Result<bool> {
    let rel = diagonal_relation(ideal, f.domain(), limits)?;
    preserves(f, &rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Value;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn d2() -> Domain {
        Domain::new(2).unwrap()
    }

    #[test]
    fn downset_examples() {
        let limits = Limits::default();
        let least = ideal_downset(&[], 2, &limits).unwrap();
        assert_eq!(least, PartitionIdeal::least(2));
        assert_eq!(
            least.members().iter().cloned().collect::<Vec<_>>(),
            vec![Partition::top(2)]
        );
        assert_eq!(ideal_downset(&[Partition::bottom(3)], 3, &limits).unwrap().len(), 5);
        let one = ideal_downset(&[p("0,1|2")], 3, &limits).unwrap();
        assert_eq!(
            one.members().iter().cloned().collect::<BTreeSet<_>>(),
            [Partition::top(3), p("0,1|2")].into()
        );
        assert_eq!(one.generator(), p("0,1|2"));
    }

    #[test]
    fn downset_adds_meets() {
        let limits = Limits::default();
        let e = ideal_downset(&[p("0,1|2"), p("0|1,2")], 3, &limits).unwrap();
        assert!(e.contains(&Partition::bottom(3)));
        assert_eq!(e.len(), 5);
        let e = ideal_downset(&[p("0,1|2|3"), p("0|1|2,3")], 4, &limits).unwrap();
        assert_eq!(e.generator(), p("0,1|2,3").meet(&p("0,1|2|3")).meet(&p("0|1|2,3")));
        assert!(ideal_downset(&[p("0,1|2")], 4, &limits).is_err());
    }

    #[test]
    fn from_members_validates() {
        let limits = Limits::default();
        assert!(PartitionIdeal::from_members(3, [Partition::top(3), p("0,1|2")], &limits).is_ok());
        assert!(PartitionIdeal::from_members(3, [p("0,1|2")], &limits).is_err());
        assert!(PartitionIdeal::from_members(3, [Partition::top(3), p("0,1|2"), p("0|1,2")], &limits).is_err());
        assert!(PartitionIdeal::from_members(3, Vec::new(), &limits).is_err());
    }

    #[test]
    fn diagonal_examples() {
        let limits = Limits::default();
        let least2 = ideal_downset(&[], 2, &limits).unwrap();
        assert_eq!(
            diagonal_relation(&least2, d2(), &limits).unwrap(),
            Relation::equality(d2())
        );
        let full2 = PartitionIdeal::full(2, &limits).unwrap();
        assert_eq!(
            diagonal_relation(&full2, d2(), &limits).unwrap(),
            Relation::full(d2(), 2)
        );
        let least3 = ideal_downset(&[], 3, &limits).unwrap();
        let constants = Relation::new("c", d2(), 3, [[0, 0, 0], [1, 1, 1]]).unwrap();
        assert_eq!(diagonal_relation(&least3, d2(), &limits).unwrap(), constants);
        // kappa = 3 > d: no tuple has the bottom kernel, so the bottom adds nothing
        let all3 = PartitionIdeal::full(3, &limits).unwrap();
        assert_eq!(diagonal_relation(&all3, d2(), &limits).unwrap().len(), 8);
    }

    #[test]
    fn refinement_downsets_are_not_preserved() {
        // the family {bottom} on two points is downward closed under
        // refinement; its D is neq, which AND does not preserve
        let limits = Limits::default();
        assert!(PartitionIdeal::from_members(2, [Partition::bottom(2)], &limits).is_err());
        let neq = Relation::new("neq", d2(), 2, [[0, 1], [1, 0]]).unwrap();
        let and = Operation::new("AND", d2(), 2, vec![0, 0, 0, 1]).unwrap();
        assert!(!preserves(&and, &neq).unwrap());
    }

    #[test]
    fn diagonal_cap() {
        let limits = Limits {
            max_diagonal_cells: 8,
            ..Limits::default()
        };
        let e = ideal_downset(&[], 4, &limits).unwrap();
        assert!(diagonal_relation(&e, d2(), &limits).unwrap_err().is_resource_bound());
    }

    #[test]
    fn finitary_preservation_examples() {
        let limits = Limits::default();
        let and = Operation::new("AND", d2(), 2, vec![0, 0, 0, 1]).unwrap();
        let not = Operation::new("NOT", d2(), 1, vec![1, 0]).unwrap();
        let e = ideal_downset(&[], 2, &limits).unwrap();
        assert!(check_finitary_preservation(&not, &e, &limits).unwrap());
        for kappa in 1..=4 {
            for g in partition_lattice(kappa, &limits).unwrap().iter() {
                let e = ideal_downset(std::slice::from_ref(g), kappa, &limits).unwrap();
                assert!(check_finitary_preservation(&and, &e, &limits).unwrap());
            }
        }
        let d3 = Domain::new(3).unwrap();
        let minus = Operation::from_fn("minus", d3, 2, |t| ((t[0] + 3 - t[1]) % 3) as Value).unwrap();
        let e = ideal_downset(&[p("0,1|2")], 3, &limits).unwrap();
        assert!(check_finitary_preservation(&minus, &e, &limits).unwrap());
    }
}

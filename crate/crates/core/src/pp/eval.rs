use std::collections::{HashMap, HashSet};

use super::{Atom, PPFormula, RelationEnv};
use crate::algebra::{Domain, Relation, Value};
use crate::error::{Error, Result};

/// Rows over a list of distinct variables.
#[derive(Debug, Clone)]
struct Table {
    vars: Vec<usize>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    fn unit() -> Self {
        Table {
            vars: Vec::new(),
            rows: vec![Vec::new()],
        }
    }

    /// Natural join on the shared variables.
    fn join(&self, other: &Table) -> Table {
        let shared: Vec<(usize, usize)> = other
            .vars
            .iter()
            .enumerate()
            .filter_map(|(j, v)| self.vars.iter().position(|u| u == v).map(|i| (i, j)))
            .collect();
        let extra: Vec<usize> = (0..other.vars.len())
            .filter(|j| !shared.iter().any(|&(_, s)| s == *j))
            .collect();

        let mut index: HashMap<Vec<Value>, Vec<&[Value]>> = HashMap::new();
        for row in &other.rows {
            let key = shared.iter().map(|&(_, j)| row[j]).collect();
            index.entry(key).or_default().push(row);
        }
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|&j| other.vars[j]));
        let mut rows = Vec::new();
        let mut key = Vec::with_capacity(shared.len());
        for row in &self.rows {
            key.clear();
            key.extend(shared.iter().map(|&(i, _)| row[i]));
            if let Some(matches) = index.get(&key) {
                for m in matches {
                    let mut out = row.clone();
                    out.extend(extra.iter().map(|&j| m[j]));
                    rows.push(out);
                }
            }
        }
        Table { vars, rows }
    }
}

/// `{ free assignment : some existential assignment satisfies every atom }`,
/// by joining atom tables left to right and projecting onto the free
/// variables.
pub fn eval_pp<E>(phi: &PPFormula, env: &E, domain: Domain) -> Result<Relation>
where
    E: RelationEnv + ?Sized,
{
    let mut ids: HashMap<&str, usize> = HashMap::new();
    for (i, v) in phi.free_vars().iter().chain(phi.exist_vars()).enumerate() {
        ids.insert(v, i);
    }

    let mut tables = Vec::with_capacity(phi.atoms().len());
    for atom in phi.atoms() {
        tables.push(atom_table(atom, &ids, env, domain)?);
    }

    let mut acc = Table::unit();
    for t in &tables {
        acc = acc.join(t);
        if acc.rows.is_empty() {
            return Relation::new(phi.name(), domain, phi.arity(), Vec::<Vec<Value>>::new());
        }
    }

    // free variables no atom mentions range over the whole domain
    let free_ids: Vec<usize> = (0..phi.arity()).collect();
    for &v in &free_ids {
        if !acc.vars.contains(&v) {
            let column = Table {
                vars: vec![v],
                rows: domain.elements().map(|a| vec![a]).collect(),
            };
            acc = acc.join(&column);
        }
    }
    let positions: Vec<usize> = free_ids
        .iter()
        .map(|v| {
            acc.vars
                .iter()
                .position(|u| u == v)
                .expect("every free variable is bound")
        })
        .collect();
    let projected: HashSet<Vec<Value>> = acc
        .rows
        .iter()
        .map(|row| positions.iter().map(|&p| row[p]).collect())
        .collect();
    Relation::new(phi.name(), domain, phi.arity(), projected)
}

fn atom_table<E>(atom: &Atom, ids: &HashMap<&str, usize>, env: &E, domain: Domain) -> Result<Table>
where
    E: RelationEnv + ?Sized,
{
    match atom {
        Atom::Equality { left, right } => {
            let (l, r) = (ids[left.as_str()], ids[right.as_str()]);
            let rows = domain.elements();
            Ok(if l == r {
                Table {
                    vars: vec![l],
                    rows: rows.map(|a| vec![a]).collect(),
                }
            } else {
                Table {
                    vars: vec![l, r],
                    rows: rows.map(|a| vec![a, a]).collect(),
                }
            })
        }
        Atom::Relation { name, vars } => {
            let rel = env.lookup(name).ok_or_else(|| Error::UnboundRelation(name.clone()))?;
            domain.ensure_same(rel.domain())?;
            if rel.arity() != vars.len() {
                return Err(Error::ArityMismatch {
                    name: name.clone(),
                    expected: rel.arity(),
                    found: vars.len(),
                });
            }
            let var_ids: Vec<usize> = vars.iter().map(|v| ids[v.as_str()]).collect();
            // a repeated variable keeps its first column and forces equality
            let mut distinct: Vec<usize> = Vec::new();
            let mut first_col: Vec<usize> = Vec::new();
            for (c, v) in var_ids.iter().enumerate() {
                if !distinct.contains(v) {
                    distinct.push(*v);
                    first_col.push(c);
                }
            }
            let rows = rel
                .tuples()
                .filter(|t| {
                    var_ids
                        .iter()
                        .enumerate()
                        .all(|(c, v)| t[c] == t[first_col[distinct.iter().position(|u| u == v).expect("seen")]])
                })
                .map(|t| first_col.iter().map(|&c| t[c]).collect())
                .collect();
            Ok(Table { vars: distinct, rows })
        }
    }
}

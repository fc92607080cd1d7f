use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{check_name, Domain, Value};
use crate::error::{Error, Result};
use crate::limits::checked_pow;

/// An `arity`-ary operation given by its full value table.
///
/// Equality, ordering and hashing look only at the domain, the arity and
/// the table; the name is a label.
#[derive(Debug, Clone)]
pub struct Operation {
    name: String,
    domain: Domain,
    arity: usize,
    table: Vec<Value>,
}

impl Operation {
    pub fn new(name: impl Into<String>, domain: Domain, arity: usize, table: Vec<Value>) -> Result<Self> {
        let name = name.into();
        check_name(&name)?;
        let expected = checked_pow(domain.size(), arity)
            .ok_or_else(|| Error::argument(format!("table of `{name}` is too large")))?;
        if table.len() != expected {
            return Err(Error::argument(format!(
                "operation `{name}` of arity {arity} needs {expected} table entries, got {}",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&v| !domain.contains(v)) {
            return Err(Error::argument(format!(
                "operation `{name}`: entry {bad} outside domain of size {}",
                domain.size()
            )));
        }
        Ok(Operation {
            name,
            domain,
            arity,
            table,
        })
    }

    /// Builds the table by evaluating `f` on every input tuple.
    pub fn from_fn(
        name: impl Into<String>,
        domain: Domain,
        arity: usize,
        mut f: impl FnMut(&[Value]) -> Value,
    ) -> Result<Self> {
        let table = domain.tuples(arity).map(|t| f(&t)).collect();
        Operation::new(name, domain, arity, table)
    }

    /// Same as `new`, naming the operation after its table.
    pub fn anonymous(domain: Domain, arity: usize, table: Vec<Value>) -> Result<Self> {
        let name = table_name(domain, arity, &table);
        Operation::new(name, domain, arity, table)
    }

    pub(crate) fn from_parts_unchecked(name: String, domain: Domain, arity: usize, table: Vec<Value>) -> Self {
        debug_assert_eq!(Some(table.len()), checked_pow(domain.size(), arity));
        Operation {
            name,
            domain,
            arity,
            table,
        }
    }

    pub fn constant(domain: Domain, arity: usize, value: Value) -> Result<Self> {
        let len = checked_pow(domain.size(), arity).ok_or_else(|| Error::argument("constant table is too large"))?;
        Operation::new(format!("const{value}_{arity}"), domain, arity, vec![value; len])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        check_name(&name)?;
        self.name = name;
        Ok(self)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Value] {
        &self.table
    }

    pub fn into_table(self) -> Vec<Value> {
        self.table
    }

    /// Table entry at a lexicographic input index.
    #[inline]
    pub fn value_at(&self, index: usize) -> Value {
        self.table[index]
    }

    pub fn apply(&self, args: &[Value]) -> Result<Value> {
        if args.len() != self.arity {
            return Err(Error::argument(format!(
                "`{}` takes {} arguments, got {}",
                self.name,
                self.arity,
                args.len()
            )));
        }
        if let Some(bad) = args.iter().find(|&&v| !self.domain.contains(v)) {
            return Err(Error::argument(format!(
                "argument {bad} outside domain of size {}",
                self.domain.size()
            )));
        }
        Ok(self.table[self.domain.encode(args)])
    }

    pub fn is_projection(&self) -> bool {
        (0..self.arity).any(|i| self.domain.tuples(self.arity).zip(&self.table).all(|(t, &v)| t[i] == v))
    }

    fn key(&self) -> (usize, usize, &[Value]) {
        (self.domain.size(), self.arity, &self.table)
    }
}

impl PartialEq for Operation {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Operation {}

impl PartialOrd for Operation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Operation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for Operation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} [", self.name, self.arity)?;
        for (i, v) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

/// Deterministic label derived from a table, e.g. `t2_0001`.
pub(crate) fn table_name(domain: Domain, arity: usize, table: &[Value]) -> String {
    let mut name = format!("t{arity}_");
    if domain.size() <= 36 {
        name.extend(
            table
                .iter()
                .map(|&v| char::from_digit(v as u32, 36).expect("digit below 36")),
        );
    } else {
        let parts: Vec<String> = table.iter().map(|v| v.to_string()).collect();
        name.push_str(&parts.join("_"));
    }
    name
}

/// The `n`-ary projection onto coordinate `index`.
pub fn make_projection(domain: Domain, arity: usize, index: usize) -> Result<Operation> {
    if arity == 0 {
        return Err(Error::argument("projections need arity at least 1"));
    }
    if index >= arity {
        return Err(Error::argument(format!(
            "projection index {index} out of range for arity {arity}"
        )));
    }
    Operation::from_fn(format!("pr{index}_{arity}"), domain, arity, |t| t[index])
}

/// `h(a) = f(g_0(a), ..., g_{m-1}(a))`, computed over the whole table.
///
/// A nullary `f` with no inner operations returns a copy of `f`.
pub fn compose(f: &Operation, gs: &[Operation]) -> Result<Operation> {
    if gs.len() != f.arity() {
        return Err(Error::argument(format!(
            "`{}` has arity {} but {} inner operations were given",
            f.name(),
            f.arity(),
            gs.len()
        )));
    }
    let Some(first) = gs.first() else {
        return Ok(f.clone());
    };
    let n = first.arity();
    for g in gs {
        f.domain().ensure_same(g.domain())?;
        if g.arity() != n {
            return Err(Error::argument(format!(
                "inner operations disagree on arity: `{}` has {}, `{}` has {}",
                first.name(),
                n,
                g.name(),
                g.arity()
            )));
        }
    }
    let d = f.domain().size();
    let rows = first.table().len();
    let table: Vec<Value> = (0..rows)
        .map(|row| {
            let cell = gs.iter().fold(0usize, |acc, g| acc * d + g.value_at(row) as usize);
            f.value_at(cell)
        })
        .collect();
    Ok(Operation::anonymous(f.domain(), n, table).expect("composed table is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize) -> Domain {
        Domain::new(n).unwrap()
    }

    fn and() -> Operation {
        Operation::new("AND", d(2), 2, vec![0, 0, 0, 1]).unwrap()
    }

    fn not() -> Operation {
        Operation::new("NOT", d(2), 1, vec![1, 0]).unwrap()
    }

    #[test]
    fn projection_tables() {
        assert_eq!(make_projection(d(2), 2, 0).unwrap().table(), &[0, 0, 1, 1]);
        assert_eq!(make_projection(d(2), 2, 1).unwrap().table(), &[0, 1, 0, 1]);
        assert_eq!(make_projection(d(3), 1, 0).unwrap().table(), &[0, 1, 2]);
        assert!(make_projection(d(2), 2, 2).is_err());
        assert!(make_projection(d(2), 0, 0).is_err());
    }

    #[test]
    fn apply_looks_up_the_table() {
        assert_eq!(and().apply(&[1, 1]).unwrap(), 1);
        assert_eq!(and().apply(&[0, 1]).unwrap(), 0);
        assert_eq!(not().apply(&[0]).unwrap(), 1);
        assert!(and().apply(&[1]).is_err());
        assert!(and().apply(&[1, 2]).is_err());
    }

    #[test]
    fn compose_examples() {
        let pr0 = make_projection(d(2), 2, 0).unwrap();
        let pr1 = make_projection(d(2), 2, 1).unwrap();
        assert_eq!(
            compose(&and(), &[pr0.clone(), pr0.clone()]).unwrap().table(),
            &[0, 0, 1, 1]
        );
        assert_eq!(compose(&not(), &[not()]).unwrap().table(), &[0, 1]);
        assert_eq!(compose(&and(), &[pr1, pr0]).unwrap().table(), &[0, 0, 0, 1]);
    }

    #[test]
    fn compose_errors() {
        let pr0 = make_projection(d(2), 2, 0).unwrap();
        assert!(compose(&and(), std::slice::from_ref(&pr0)).is_err());
        assert!(compose(&and(), &[pr0, not()]).is_err());
        let other = make_projection(d(3), 1, 0).unwrap();
        assert!(compose(&not(), &[other]).is_err());
    }

    #[test]
    fn table_validation() {
        assert!(Operation::new("f", d(2), 2, vec![0, 1, 1]).is_err());
        assert!(Operation::new("f", d(2), 1, vec![0, 2]).is_err());
        assert!(Operation::new("1f", d(2), 1, vec![0, 1]).is_err());
        assert!(Operation::new("c", d(2), 0, vec![1]).is_ok());
    }

    #[test]
    fn equality_ignores_names() {
        let a = and();
        let b = a.clone().with_name("meet").unwrap();
        assert_eq!(a, b);
        assert_eq!(table_name(d(2), 2, a.table()), "t2_0001");
    }

    #[test]
    fn projection_detection() {
        assert!(make_projection(d(3), 3, 2).unwrap().is_projection());
        assert!(!and().is_projection());
        assert!(!Operation::new("c", d(2), 0, vec![1]).unwrap().is_projection());
    }
}

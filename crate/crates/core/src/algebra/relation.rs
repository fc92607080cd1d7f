use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::{check_name, Domain, Value};
use crate::error::{Error, Result};
use crate::limits::checked_pow;

/// A `k`-ary relation: a finite set of tuples kept sorted and
/// deduplicated in one flat buffer.
///
/// As with [`Operation`](super::Operation), the name does not take part in
/// equality or ordering. Relations of equal arity order by their tuple
/// lists, lexicographically.
#[derive(Debug, Clone)]
pub struct Relation {
    name: String,
    domain: Domain,
    arity: usize,
    len: usize,
    data: Vec<Value>,
}

impl Relation {
    pub fn new<I, T>(name: impl Into<String>, domain: Domain, arity: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[Value]>,
    {
        let name = name.into();
        check_name(&name)?;
        let mut rows: Vec<Vec<Value>> = Vec::new();
        for t in tuples {
            let t = t.as_ref();
            if t.len() != arity {
                return Err(Error::argument(format!(
                    "relation `{name}` has arity {arity}, tuple {t:?} has length {}",
                    t.len()
                )));
            }
            if let Some(bad) = t.iter().find(|&&v| !domain.contains(v)) {
                return Err(Error::argument(format!(
                    "relation `{name}`: value {bad} outside domain of size {}",
                    domain.size()
                )));
            }
            rows.push(t.to_vec());
        }
        rows.sort_unstable();
        rows.dedup();
        Ok(Self::from_sorted_rows(name, domain, arity, rows))
    }

    fn from_sorted_rows(name: String, domain: Domain, arity: usize, rows: Vec<Vec<Value>>) -> Self {
        let len = rows.len();
        let data = rows.into_iter().flatten().collect();
        Relation {
            name,
            domain,
            arity,
            len,
            data,
        }
    }

    /// Builds a relation from lexicographic tuple indices in `A^arity`.
    /// `indices` must be strictly increasing.
    pub(crate) fn from_sorted_indices(
        name: String,
        domain: Domain,
        arity: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Self {
        let mut data = Vec::new();
        let mut len = 0;
        for i in indices {
            data.extend(domain.decode(i, arity));
            len += 1;
        }
        Relation {
            name,
            domain,
            arity,
            len,
            data,
        }
    }

    pub fn empty(domain: Domain, arity: usize) -> Self {
        Relation {
            name: "empty".into(),
            domain,
            arity,
            len: 0,
            data: Vec::new(),
        }
    }

    /// All of `A^arity`.
    pub fn full(domain: Domain, arity: usize) -> Self {
        let count = checked_pow(domain.size(), arity).expect("full relation overflows usize");
        Self::from_sorted_indices("full".into(), domain, arity, 0..count)
    }

    /// `{(a, a) : a in A}`
    pub fn equality(domain: Domain) -> Self {
        let rows = domain.elements().map(|a| vec![a, a]).collect();
        Self::from_sorted_rows("eq".into(), domain, 2, rows)
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

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// The `i`-th tuple in canonical order.
    #[inline]
    pub fn tuple(&self, i: usize) -> &[Value] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn tuples(&self) -> impl ExactSizeIterator<Item = &[Value]> + '_ {
        (0..self.len).map(move |i| self.tuple(i))
    }

    pub fn contains(&self, tuple: &[Value]) -> bool {
        if tuple.len() != self.arity {
            return false;
        }
        if self.arity == 0 {
            return self.len > 0;
        }
        let (mut lo, mut hi) = (0, self.len);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.tuple(mid).cmp(tuple) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.arity == other.arity && self.tuples().all(|t| other.contains(t))
    }

    /// Lexicographic indices of the tuples, ascending.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.tuples().map(move |t| self.domain.encode(t))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.domain.ensure_same(other.domain)?;
        if self.arity != other.arity {
            return Err(Error::argument("union of relations with different arities"));
        }
        Relation::new(
            self.name.clone(),
            self.domain,
            self.arity,
            self.tuples().chain(other.tuples()),
        )
    }

    fn key(&self) -> (usize, usize, &[Value], usize) {
        (self.domain.size(), self.arity, &self.data, self.len)
    }
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Relation {}

impl PartialOrd for Relation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Relation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl Hash for Relation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} {{", self.name, self.arity)?;
        for (i, t) in self.tuples().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (j, v) in t.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

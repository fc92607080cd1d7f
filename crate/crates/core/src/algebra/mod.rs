//! Finite domains, operation tables, relations, and the preservation
//! predicate that links operations to relations.
//!
//! Tuples over a domain of size `d` are indexed lexicographically with the
//! first coordinate most significant, so `(a_0, ..., a_{n-1})` sits at
//! `sum a_i * d^(n-1-i)`. Operation tables and graph relations share this
//! order.

mod operation;
mod relation;

pub(crate) use operation::table_name;
pub use operation::{compose, make_projection, Operation};
pub use relation::Relation;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A domain element.
pub type Value = u8;

/// A finite carrier `{0, ..., size - 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Domain {
    size: usize,
}

impl Domain {
    pub const MAX_SIZE: usize = Value::MAX as usize + 1;

    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::argument("domain size must be at least 1"));
        }
        if size > Self::MAX_SIZE {
            return Err(Error::argument(format!(
                "domain size {size} exceeds {}",
                Self::MAX_SIZE
            )));
        }
        Ok(Domain { size })
    }

    pub fn size(self) -> usize {
        self.size
    }

    pub fn elements(self) -> impl Iterator<Item = Value> {
        (0..self.size).map(|v| v as Value)
    }

    pub fn contains(self, v: Value) -> bool {
        (v as usize) < self.size
    }

    pub(crate) fn ensure_same(self, other: Domain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                expected: self.size,
                found: other.size,
            })
        }
    }

    /// Lexicographic index of `tuple` in `A^len`.
    #[inline]
    pub fn encode(self, tuple: &[Value]) -> usize {
        tuple.iter().fold(0usize, |acc, &v| acc * self.size + v as usize)
    }

    /// Inverse of [`Domain::encode`] for tuples of length `len`.
    pub fn decode(self, mut index: usize, len: usize) -> Vec<Value> {
        let mut out = vec![0; len];
        for slot in out.iter_mut().rev() {
            *slot = (index % self.size) as Value;
            index /= self.size;
        }
        out
    }

    /// All tuples of `A^len` in lexicographic order.
    pub fn tuples(self, len: usize) -> impl Iterator<Item = Vec<Value>> {
        let count = crate::limits::checked_pow(self.size, len).expect("tuple space overflows usize");
        (0..count).map(move |i| self.decode(i, len))
    }
}

/// Positions of `tuple` grouped by equal value.
pub fn kernel_partition(tuple: &[Value]) -> Result<Partition> {
    if tuple.is_empty() {
        return Err(Error::argument("kernel of an empty tuple"));
    }
    Ok(Partition::kernel_of(tuple))
}

/// True iff applying `op` coordinatewise to any `arity(op)` tuples of
/// `rel` yields a tuple of `rel`.
pub fn preserves(op: &Operation, rel: &Relation) -> Result<bool> {
    op.domain().ensure_same(rel.domain())?;
    let n = op.arity();
    let k = rel.arity();
    let len = rel.len();
    if n > 0 && len == 0 {
        return Ok(true);
    }
    let d = op.domain().size();
    let mut choice = vec![0usize; n];
    let mut image = vec![0 as Value; k];
    loop {
        for (j, slot) in image.iter_mut().enumerate() {
            let cell = choice.iter().fold(0usize, |acc, &t| acc * d + rel.tuple(t)[j] as usize);
            *slot = op.value_at(cell);
        }
        if !rel.contains(&image) {
            return Ok(false);
        }
        // odometer over r^n
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(true);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < len {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn check_name(name: &str) -> Result<()> {
    if is_identifier(name) {
        Ok(())
    } else {
        Err(Error::argument(format!("`{name}` is not a valid identifier")))
    }
}

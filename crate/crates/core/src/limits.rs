use crate::error::{Error, Result};

/// Resource caps shared by every enumerating routine.
///
/// All caps are checked before any large allocation or sweep starts, so a
/// call either completes or fails fast with [`Error::ResourceBound`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of operations a clone closure may hold.
    pub max_closure_size: usize,
    /// Maximum number of candidates (subsets, search nodes, tuple
    /// combinations) a single enumeration may visit.
    pub max_candidates: u64,
    /// `inv` sweeps all subsets of `A^k`; this caps `d^k`.
    pub max_inv_cells: usize,
    /// `pol` searches tables of `d^n` cells; this caps `d^n`.
    pub max_pol_cells: usize,
    /// Caps `d^n` for any materialised operation table, which is also the
    /// arity of a graph relation.
    pub max_table_size: usize,
    /// Largest index set for partition-lattice enumeration.
    pub max_kappa: usize,
    /// Caps `d^kappa` when materialising a diagonal relation.
    pub max_diagonal_cells: usize,
    /// Admit arity-0 operations and relations.
    pub allow_nullary: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_closure_size: 1_000_000,
            max_candidates: 10_000_000,
            max_inv_cells: 16,
            max_pol_cells: 64,
            max_table_size: 256,
            max_kappa: 6,
            max_diagonal_cells: 1 << 16,
            allow_nullary: false,
        }
    }
}

impl Limits {
    pub fn with_nullary(mut self, allow: bool) -> Self {
        self.allow_nullary = allow;
        self
    }

    pub fn with_max_candidates(mut self, cap: u64) -> Self {
        self.max_candidates = cap;
        self
    }

    pub(crate) fn check_arity(&self, arity: usize, what: &str) -> Result<()> {
        if arity == 0 && !self.allow_nullary {
            return Err(Error::argument(format!(
                "{what}: arity 0 requires nullary support to be enabled"
            )));
        }
        Ok(())
    }
}

/// Counts visited candidates against [`Limits::max_candidates`].
#[derive(Debug)]
pub(crate) struct Budget<'a> {
    what: &'a str,
    used: u64,
    cap: u64,
}

impl<'a> Budget<'a> {
    pub(crate) fn new(what: &'a str, limits: &Limits) -> Self {
        Budget {
            what,
            used: 0,
            cap: limits.max_candidates,
        }
    }

    #[inline]
    pub(crate) fn spend(&mut self, amount: u64) -> Result<()> {
        self.used = self.used.saturating_add(amount);
        if self.used > self.cap {
            Err(Error::resource(
                format!("{} (candidates)", self.what),
                self.used as u128,
                self.cap as u128,
            ))
        } else {
            Ok(())
        }
    }
}

/// `base^exp`, or `None` on overflow.
pub(crate) fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    u32::try_from(exp).ok().and_then(|e| base.checked_pow(e))
}

/// `base^exp` checked against `limit`.
pub(crate) fn bounded_pow(base: usize, exp: usize, limit: usize, what: &str) -> Result<usize> {
    match checked_pow(base, exp) {
        Some(v) if v <= limit => Ok(v),
        Some(v) => Err(Error::resource(what, v as u128, limit as u128)),
        None => Err(Error::resource(what, u128::MAX, limit as u128)),
    }
}

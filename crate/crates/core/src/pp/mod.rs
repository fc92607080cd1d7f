//! Primitive-positive formulas: conjunctions of relation and equality
//! atoms under an existential prefix.
//!
//! Concrete syntax, whitespace-insensitive between tokens:
//!
//! ```text
//! formula := "def" NAME "(" varlist ")" ":=" body
//! body    := "true" | [ "exists" varlist "." ] atom { "&" atom }
//! atom    := NAME "(" varlist ")" | VAR "=" VAR
//! varlist := VAR { "," VAR }
//! ```
//!
//! `#` starts a comment running to the end of the line.

mod define;
mod eval;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use define::{is_pp_definable, pp_closure_of, pp_definability, Definability};
pub use eval::eval_pp;
pub use parse::{parse_pp, parse_pp_file};

use crate::algebra::{check_name, Relation};
use crate::error::{Error, Result};
use crate::galois::RelationSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Relation { name: String, vars: Vec<String> },
    Equality { left: String, right: String },
}

impl Atom {
    pub fn relation(name: impl Into<String>, vars: &[&str]) -> Self {
        Atom::Relation {
            name: name.into(),
            vars: vars.iter().map(|v| v.to_string()).collect(),
        }
    }

    pub fn equality(left: impl Into<String>, right: impl Into<String>) -> Self {
        Atom::Equality {
            left: left.into(),
            right: right.into(),
        }
    }

    pub fn vars(&self) -> Vec<&str> {
        match self {
            Atom::Relation { vars, .. } => vars.iter().map(String::as_str).collect(),
            Atom::Equality { left, right } => vec![left, right],
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Relation { name, vars } => write!(f, "{name}({})", vars.join(", ")),
            Atom::Equality { left, right } => write!(f, "{left} = {right}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PPFormula {
    name: String,
    free: Vec<String>,
    exist: Vec<String>,
    atoms: Vec<Atom>,
}

impl PPFormula {
    pub fn new(name: impl Into<String>, free: Vec<String>, exist: Vec<String>, atoms: Vec<Atom>) -> Result<Self> {
        let name = name.into();
        check_name(&name)?;
        if free.is_empty() {
            return Err(Error::argument(format!(
                "formula `{name}` needs at least one free variable"
            )));
        }
        let mut declared = BTreeSet::new();
        for v in free.iter().chain(&exist) {
            check_name(v)?;
            if !declared.insert(v.as_str()) {
                return Err(Error::argument(format!("variable `{v}` declared twice in `{name}`")));
            }
        }
        for atom in &atoms {
            if let Atom::Relation { name: rel, .. } = atom {
                check_name(rel)?;
            }
            if let Some(v) = atom.vars().into_iter().find(|v| !declared.contains(v)) {
                return Err(Error::argument(format!("undeclared variable `{v}` in `{name}`")));
            }
        }
        Ok(PPFormula {
            name,
            free,
            exist,
            atoms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn free_vars(&self) -> &[String] {
        &self.free
    }

    pub fn exist_vars(&self) -> &[String] {
        &self.exist
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn arity(&self) -> usize {
        self.free.len()
    }

    /// Relation names used by the atoms, deduplicated.
    pub fn relation_names(&self) -> BTreeSet<&str> {
        self.atoms
            .iter()
            .filter_map(|a| match a {
                Atom::Relation { name, .. } => Some(name.as_str()),
                Atom::Equality { .. } => None,
            })
            .collect()
    }
}

impl fmt::Display for PPFormula {
    /// Canonical form: `def comp(x, y) := exists z . leq(x, z) & leq(z, y)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "def {}({}) := ", self.name, self.free.join(", "))?;
        if self.atoms.is_empty() {
            // the grammar has no existential prefix for `true`
            return f.write_str("true");
        }
        if !self.exist.is_empty() {
            write!(f, "exists {} . ", self.exist.join(", "))?;
        }
        for (i, atom) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

/// Name-to-relation lookup for formula evaluation.
pub trait RelationEnv {
    fn lookup(&self, name: &str) -> Option<&Relation>;
}

impl RelationEnv for RelationSet {
    fn lookup(&self, name: &str) -> Option<&Relation> {
        self.get(name)
    }
}

impl RelationEnv for BTreeMap<String, Relation> {
    fn lookup(&self, name: &str) -> Option<&Relation> {
        self.get(name)
    }
}

impl RelationEnv for [Relation] {
    fn lookup(&self, name: &str) -> Option<&Relation> {
        self.iter().find(|r| r.name() == name)
    }
}

impl RelationEnv for Vec<Relation> {
    fn lookup(&self, name: &str) -> Option<&Relation> {
        self.as_slice().lookup(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn constructor_validates() {
        assert!(PPFormula::new("f", s(&["x"]), s(&[]), vec![]).is_ok());
        assert!(PPFormula::new("f", s(&[]), s(&[]), vec![]).is_err());
        assert!(PPFormula::new("f", s(&["x"]), s(&["x"]), vec![]).is_err());
        assert!(PPFormula::new("f", s(&["x"]), s(&[]), vec![Atom::relation("r", &["y"])]).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let phi = PPFormula::new(
            "comp",
            s(&["x", "y"]),
            s(&["z"]),
            vec![Atom::relation("leq", &["x", "z"]), Atom::relation("leq", &["z", "y"])],
        )
        .unwrap();
        assert_eq!(phi.to_string(), "def comp(x, y) := exists z . leq(x, z) & leq(z, y)");
        let eq = PPFormula::new("e", s(&["x", "y"]), s(&[]), vec![Atom::equality("x", "y")]).unwrap();
        assert_eq!(eq.to_string(), "def e(x, y) := x = y");
        let t = PPFormula::new("full", s(&["x", "y"]), s(&[]), vec![]).unwrap();
        assert_eq!(t.to_string(), "def full(x, y) := true");
    }
}

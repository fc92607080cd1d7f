//! Flat-file formats and the loaded workspace.
//!
//! Structure files carry a `domain d` header followed by any mix of
//! blocks:
//!
//! ```text
//! domain 2
//! op AND 2
//! 0 0 0 1
//! rel leq 2
//! 0 0
//! 0 1
//! 1 1
//! end
//! ```
//!
//! Table entries follow lexicographic input order and may wrap across
//! lines. A relation lists one tuple per line until `end`; the empty tuple
//! of a nullary relation is written `()`. Files whose first token is
//! `def` hold pp formulas instead. `#` comments run to end of line.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use galois_core::{
    parse_pp_file, Domain, Error as CoreError, Limits, Operation, OperationSet, PPFormula, Relation, RelationSet, Value,
};

use crate::error::{CliError, Result};

/// Caps applied by the command-line front end on top of engine limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    pub max_domain: usize,
    pub max_arity: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_domain: 4,
            max_arity: 3,
        }
    }
}

impl Caps {
    pub fn check_arity(&self, arity: usize, what: &str) -> Result<()> {
        if arity > self.max_arity {
            return Err(CoreError::ResourceBound {
                what: format!("{what} arity"),
                requested: arity as u128,
                limit: self.max_arity as u128,
            }
            .into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Workspace {
    domain: Option<Domain>,
    ops: BTreeMap<String, Operation>,
    rels: BTreeMap<String, Relation>,
    formulas: BTreeMap<String, PPFormula>,
    pub limits: Limits,
    pub caps: Caps,
}

impl Workspace {
    pub fn new(limits: Limits, caps: Caps) -> Self {
        Workspace {
            domain: None,
            ops: BTreeMap::new(),
            rels: BTreeMap::new(),
            formulas: BTreeMap::new(),
            limits,
            caps,
        }
    }

    pub fn domain(&self) -> Result<Domain> {
        self.domain
            .ok_or_else(|| CliError::usage("no input file declares a domain"))
    }

    pub fn operations(&self) -> &BTreeMap<String, Operation> {
        &self.ops
    }

    pub fn relations(&self) -> &BTreeMap<String, Relation> {
        &self.rels
    }

    pub fn formulas(&self) -> &BTreeMap<String, PPFormula> {
        &self.formulas
    }

    pub fn operation(&self, name: &str) -> Result<&Operation> {
        self.ops
            .get(name)
            .ok_or_else(|| CliError::usage(format!("no operation named `{name}`")))
    }

    pub fn relation(&self, name: &str) -> Result<&Relation> {
        self.rels
            .get(name)
            .ok_or_else(|| CliError::usage(format!("no relation named `{name}`")))
    }

    pub fn formula(&self, name: &str) -> Result<&PPFormula> {
        self.formulas
            .get(name)
            .ok_or_else(|| CliError::usage(format!("no formula named `{name}`")))
    }

    pub fn operation_set(&self) -> Result<OperationSet> {
        Ok(OperationSet::from_ops(self.domain()?, self.ops.values().cloned())?)
    }

    pub fn relation_set(&self) -> Result<RelationSet> {
        Ok(RelationSet::from_relations(
            self.domain()?,
            self.rels.values().cloned(),
        )?)
    }

    fn set_domain(&mut self, domain: Domain) -> Result<()> {
        match self.domain {
            Some(d) if d != domain => Err(CoreError::DomainMismatch {
                expected: d.size(),
                found: domain.size(),
            }
            .into()),
            _ => {
                self.domain = Some(domain);
                Ok(())
            }
        }
    }

    /// Adds one file's contents.
    pub fn add_source(&mut self, file: &Path, text: &str) -> Result<()> {
        if first_token(text) == Some("def") {
            for phi in parse_pp_file(text).map_err(|e| located(file, e))? {
                let name = phi.name().to_string();
                insert_unique(&mut self.formulas, name, phi, "formula")?;
            }
            return Ok(());
        }
        let parsed = parse_structure(file, text, &self.caps)?;
        self.set_domain(parsed.domain)?;
        for op in parsed.ops {
            insert_unique(&mut self.ops, op.name().to_string(), op, "operation")?;
        }
        for rel in parsed.rels {
            insert_unique(&mut self.rels, rel.name().to_string(), rel, "relation")?;
        }
        Ok(())
    }
}

fn insert_unique<T>(map: &mut BTreeMap<String, T>, name: String, value: T, kind: &str) -> Result<()> {
    if map.contains_key(&name) {
        return Err(CliError::usage(format!("duplicate {kind} name `{name}`")));
    }
    map.insert(name, value);
    Ok(())
}

/// Reads and validates every file. The result does not depend on the
/// order of `paths`.
pub fn load_workspace<P: AsRef<Path>>(paths: &[P], limits: Limits, caps: Caps) -> Result<Workspace> {
    let mut sorted: Vec<PathBuf> = paths.iter().map(|p| p.as_ref().to_path_buf()).collect();
    sorted.sort();
    sorted.dedup();
    let mut ws = Workspace::new(limits, caps);
    for path in &sorted {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        ws.add_source(path, &text)?;
    }
    Ok(ws)
}

fn located(file: &Path, e: CoreError) -> CliError {
    match e {
        CoreError::Syntax { line, column, message } => CliError::Parse {
            file: file.to_path_buf(),
            line,
            column,
            message,
        },
        CoreError::UndeclaredVariable { name, line, column } => CliError::Parse {
            file: file.to_path_buf(),
            line,
            column,
            message: format!("undeclared variable `{name}`"),
        },
        CoreError::DuplicateVariable { name, line, column } => CliError::Parse {
            file: file.to_path_buf(),
            line,
            column,
            message: format!("variable `{name}` declared twice"),
        },
        other => other.into(),
    }
}

fn first_token(text: &str) -> Option<&str> {
    text.lines().map(strip_comment).flat_map(str::split_whitespace).next()
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head)
}

#[derive(Debug, Clone, Copy)]
struct Word<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn words(line_no: usize, line: &str) -> Vec<Word<'_>> {
    let line = strip_comment(line);
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Word {
                    text: &line[s..i],
                    line: line_no,
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

struct Parsed {
    domain: Domain,
    ops: Vec<Operation>,
    rels: Vec<Relation>,
}

/// Parses a structure file; errors point at the offending token.
fn parse_structure(file: &Path, text: &str, caps: &Caps) -> Result<Parsed> {
    let err = |w: Word, message: String| CliError::Parse {
        file: file.to_path_buf(),
        line: w.line,
        column: w.column,
        message,
    };
    let lines: Vec<Vec<Word>> = text.lines().enumerate().map(|(i, l)| words(i + 1, l)).collect();
    let mut cursor = lines.iter().filter(|ws| !ws.is_empty()).peekable();

    let header = cursor.next().ok_or_else(|| CliError::Parse {
        file: file.to_path_buf(),
        line: 1,
        column: 1,
        message: "empty file: expected `domain d`".into(),
    })?;
    if header[0].text != "domain" || header.len() != 2 {
        return Err(err(header[0], "expected `domain d` header".into()));
    }
    let size: usize = header[1]
        .text
        .parse()
        .map_err(|_| err(header[1], format!("bad domain size `{}`", header[1].text)))?;
    if size > caps.max_domain {
        return Err(CoreError::ResourceBound {
            what: "domain size".into(),
            requested: size as u128,
            limit: caps.max_domain as u128,
        }
        .into());
    }
    let domain = Domain::new(size).map_err(|e| err(header[1], e.to_string()))?;

    let value = |w: Word| -> Result<Value> {
        match w.text.parse::<usize>() {
            Ok(v) if v < size => Ok(v as Value),
            Ok(v) => Err(err(w, format!("value {v} outside domain of size {size}"))),
            Err(_) => Err(err(w, format!("expected a domain element, found `{}`", w.text))),
        }
    };

    let mut ops = Vec::new();
    let mut rels = Vec::new();
    while let Some(head) = cursor.next() {
        let kw = head[0];
        match kw.text {
            "op" | "rel" => {}
            "domain" => return Err(err(kw, "the domain header may appear only once".into())),
            other => return Err(err(kw, format!("expected `op` or `rel`, found `{other}`"))),
        }
        if head.len() != 3 {
            return Err(err(kw, format!("expected `{} NAME ARITY`", kw.text)));
        }
        let name = head[1].text;
        if !galois_core::is_identifier(name) {
            return Err(err(head[1], format!("`{name}` is not a valid name")));
        }
        let arity: usize = head[2]
            .text
            .parse()
            .map_err(|_| err(head[2], format!("bad arity `{}`", head[2].text)))?;

        if kw.text == "op" {
            let need = size
                .checked_pow(arity as u32)
                .filter(|&n| n <= 1 << 20)
                .ok_or_else(|| err(head[2], format!("table of arity {arity} is too large")))?;
            let mut table = Vec::with_capacity(need);
            while table.len() < need {
                let Some(line) = cursor.next_if(|l| !matches!(l[0].text, "op" | "rel" | "domain")) else {
                    return Err(err(
                        kw,
                        format!("operation `{name}` needs {need} entries, found {}", table.len()),
                    ));
                };
                for &w in line {
                    if table.len() == need {
                        return Err(err(w, format!("operation `{name}` has more than {need} entries")));
                    }
                    table.push(value(w)?);
                }
            }
            ops.push(Operation::new(name, domain, arity, table).map_err(|e| err(kw, e.to_string()))?);
        } else {
            let mut tuples = Vec::new();
            loop {
                let Some(line) = cursor.next() else {
                    return Err(err(kw, format!("relation `{name}` is missing `end`")));
                };
                if line[0].text == "end" {
                    if line.len() > 1 {
                        return Err(err(line[1], "unexpected text after `end`".into()));
                    }
                    break;
                }
                let tuple: Vec<Value> = if line.len() == 1 && line[0].text == "()" {
                    Vec::new()
                } else {
                    line.iter().map(|&w| value(w)).collect::<Result<_>>()?
                };
                if tuple.len() != arity {
                    return Err(err(
                        line[0],
                        format!("relation `{name}` has arity {arity}, tuple has {} entries", tuple.len()),
                    ));
                }
                tuples.push(tuple);
            }
            rels.push(Relation::new(name, domain, arity, tuples).map_err(|e| err(kw, e.to_string()))?);
        }
    }
    Ok(Parsed { domain, ops, rels })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(texts: &[&str]) -> Result<Workspace> {
        let mut ws = Workspace::new(Limits::default(), Caps::default());
        for (i, t) in texts.iter().enumerate() {
            ws.add_source(Path::new(&format!("f{i}")), t)?;
        }
        Ok(ws)
    }

    #[test]
    fn loads_an_operation() {
        let ws = load(&["domain 2\nop AND 2\n0 0 0 1\n"]).unwrap();
        assert_eq!(ws.operations().len(), 1);
        assert_eq!(ws.operation("AND").unwrap().table(), &[0, 0, 0, 1]);
    }

    #[test]
    fn tables_may_wrap() {
        let ws = load(&["domain 2 # two\nop f 2\n0 1\n1 0\nop g 1\n1 1"]).unwrap();
        assert_eq!(ws.operation("f").unwrap().table(), &[0, 1, 1, 0]);
    }

    #[test]
    fn loads_relations() {
        let ws = load(&["domain 2\nrel leq 2\n0 0\n0 1\n1 1\nend\nrel e 1\nend\nrel u 0\n()\nend\n"]).unwrap();
        assert_eq!(ws.relation("leq").unwrap().len(), 3);
        assert!(ws.relation("e").unwrap().is_empty());
        assert_eq!(ws.relation("u").unwrap().len(), 1);
    }

    #[test]
    fn wrong_tuple_length_points_at_line() {
        let err = load(&["domain 2\nrel leq 2\n0 0\n0 1 1\nend\n"]).unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 4, column: 1, .. }), "{err}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn format_errors() {
        for bad in [
            "",
            "op f 1\n0 1",
            "domain x",
            "domain 2\nop f 1\n0",
            "domain 2\nop f 1\n0 1 1",
            "domain 2\nop f 1\n0 2",
            "domain 2\nrel r 1\n0\n",
            "domain 2\nfoo r 1",
            "domain 2\ndomain 2",
            "domain 2\nop 9f 1\n0 1",
            "domain 2\nrel r 1\n0\nend x\n",
        ] {
            let err = load(&[bad]).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{bad:?}: {err}");
        }
    }

    #[test]
    fn domain_mismatch_across_files() {
        let err = load(&["domain 2\nop f 1\n0 1", "domain 3\nop g 1\n0 1 2"]).unwrap_err();
        assert!(matches!(err, CliError::Core(CoreError::DomainMismatch { .. })), "{err}");
    }

    #[test]
    fn domain_cap_is_a_resource_bound() {
        let err = load(&["domain 5\n"]).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn duplicate_names() {
        assert!(load(&["domain 2\nop f 1\n0 1", "domain 2\nop f 1\n1 0"]).is_err());
        assert!(load(&["def a(x) := true", "def a(y) := true"]).is_err());
    }

    #[test]
    fn formula_files() {
        let ws = load(&["# leading comment\ndef comp(x, y) := exists z . leq(x, z) & leq(z, y)\n"]).unwrap();
        assert_eq!(ws.formula("comp").unwrap().atoms().len(), 2);
        let err = load(&["def bad(x) := leq(x, z)"]).unwrap_err();
        assert!(
            matches!(
                err,
                CliError::Parse {
                    line: 1,
                    column: 22,
                    ..
                }
            ),
            "{err}"
        );
    }
}

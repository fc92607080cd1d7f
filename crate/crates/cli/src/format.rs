//! Writers for the structure file format. Output reloads with
//! [`load_workspace`](crate::load_workspace).

use std::fmt::Write;

use galois_core::{Domain, Operation, Relation};

pub fn write_domain(out: &mut String, domain: Domain) {
    writeln!(out, "domain {}", domain.size()).unwrap();
}

/// One `op` block with the table wrapped at the last coordinate.
pub fn write_operation(out: &mut String, name: &str, op: &Operation) {
    writeln!(out, "op {name} {}", op.arity()).unwrap();
    let width = if op.arity() == 0 { 1 } else { op.domain().size() };
    for row in op.table().chunks(width) {
        write_values(out, row);
    }
}

pub fn write_relation(out: &mut String, name: &str, rel: &Relation) {
    writeln!(out, "rel {name} {}", rel.arity()).unwrap();
    for t in rel.tuples() {
        if t.is_empty() {
            out.push_str("()\n");
        } else {
            write_values(out, t);
        }
    }
    out.push_str("end\n");
}

fn write_values(out: &mut String, values: &[u8]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
}

//! DOT export of configurations as height-1 labeled trees.
//!
//! A configuration `(c_0, ..., c_k)` renders as one root of degree `k`
//! labeled `c_0`, with edge `i` leading to a leaf labeled `c_i`. Output is a
//! pure function of the tuple, hence byte-identical across runs.

use crate::config::{Configuration, ConfigurationSet};
use crate::error::{Error, Result};

/// Render one configuration; `k` is the generating sequence length, so the
/// tuple must have `k + 1` entries.
pub fn export_tree(c: &Configuration, k: usize) -> Result<String> {
    export_named_tree(c, k, "configuration")
}

fn export_named_tree(c: &Configuration, k: usize, name: &str) -> Result<String> {
    if c.len() != k + 1 {
        return Err(Error::ShapeMismatch {
            context: format!("tuple {c} has {} entries, expected k+1 = {}", c.len(), k + 1),
        });
    }
    let entries = c.entries();
    let mut out = String::new();
    out.push_str(&format!("digraph {name} {{\n"));
    out.push_str("    rankdir=TB;\n");
    out.push_str(&format!("    root [label=\"{}\"];\n", entries[0]));
    for (i, label) in entries.iter().enumerate().skip(1) {
        out.push_str(&format!("    leaf{i} [label=\"{label}\"];\n"));
    }
    for i in 1..=k {
        out.push_str(&format!("    root -> leaf{i} [label=\"{i}\"];\n"));
    }
    out.push_str("}\n");
    Ok(out)
}

/// Render every tuple of a set, one digraph per tuple, in canonical order.
pub fn export_set(set: &ConfigurationSet) -> Result<String> {
    let mut out = String::new();
    for (i, c) in set.configurations().enumerate() {
        out.push_str(&export_named_tree(c, set.arity(), &format!("configuration_{:04}", i + 1))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_first_tuple() {
        let c = Configuration::new(vec![1, 2, 3]);
        let dot = export_tree(&c, 2).unwrap();
        assert_eq!(
            dot,
            "digraph configuration {\n\
             \x20   rankdir=TB;\n\
             \x20   root [label=\"1\"];\n\
             \x20   leaf1 [label=\"2\"];\n\
             \x20   leaf2 [label=\"3\"];\n\
             \x20   root -> leaf1 [label=\"1\"];\n\
             \x20   root -> leaf2 [label=\"2\"];\n\
             }\n"
        );
    }

    #[test]
    fn two_node_tree() {
        let c = Configuration::new(vec![1, 1]);
        let dot = export_tree(&c, 1).unwrap();
        assert_eq!(dot.matches("label").count(), 3);
        assert_eq!(dot.matches("->").count(), 1);
    }

    #[test]
    fn deterministic_bytes() {
        let c = Configuration::new(vec![4, 5, 5]);
        let a = export_tree(&c, 2).unwrap();
        let b = export_tree(&c, 2).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn arity_mismatch() {
        let c = Configuration::new(vec![1, 2, 3]);
        assert!(export_tree(&c, 3).is_err());
    }
}

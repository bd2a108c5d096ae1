//! Synthetic input builders for the benchmarks: wide schemas, many-block
//! mapping files, deep category trees, and a nested configuration document.
//! Everything is deterministic so timings compare across runs.

use scaffold_core::loglite::{CategoryTree, Priority};
use scaffold_core::schema::{FieldKind, FieldSpec, TableSchema};

/// A schema with `n` text fields named `field_001` onward.
pub fn wide_schema(n: usize) -> TableSchema {
    assert!(n > 0, "a schema needs at least one field");
    let fields = (1..=n)
        .map(|i| FieldSpec::new(format!("field_{i:03}"), FieldKind::Text))
        .collect();
    TableSchema::new("wide_table", fields).expect("generated names are valid")
}

/// Mapping-file source with `blocks` specs of `pairs` column pairs each.
pub fn mapping_source(blocks: usize, pairs: usize) -> String {
    let mut out = String::new();
    for b in 0..blocks {
        if b > 0 {
            out.push('\n');
        }
        out.push_str(&format!("src_{b} DST_{b}\n"));
        for p in 0..pairs {
            out.push_str(&format!("col_{b}_{p} COL_{b}_{p}\n"));
        }
    }
    out
}

/// A linear category chain `s0.s1...` of `depth` segments with an explicit
/// threshold only at the root, so lookups walk the full chain.
pub fn deep_tree(depth: usize) -> (CategoryTree, String) {
    let tree = CategoryTree::new(Priority::Info);
    let leaf = (0..depth)
        .map(|i| format!("s{i}"))
        .collect::<Vec<_>>()
        .join(".");
    (tree, leaf)
}

/// Configuration markup nested `depth` elements deep, one attribute each.
pub fn nested_config(depth: usize) -> String {
    assert!(depth > 0, "need at least the root element");
    let mut out = String::new();
    for i in 0..depth {
        out.push_str(&format!("<level{i} index=\"{i}\">"));
    }
    out.push_str("payload");
    for i in (0..depth).rev() {
        out.push_str(&format!("</level{i}>"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use scaffold_core::{parse_config, parse_mapping_file};

    #[test]
    fn builders_produce_parseable_inputs() {
        assert_eq!(wide_schema(40).fields.len(), 40);
        let file = parse_mapping_file(&mapping_source(8, 12)).unwrap();
        assert_eq!(file.specs.len(), 8);
        assert_eq!(file.specs[0].pairs.len(), 12);
        let (tree, leaf) = deep_tree(16);
        assert_eq!(tree.effective_threshold(&leaf).unwrap(), Priority::Info);
        let root = parse_config(&nested_config(12)).unwrap();
        assert_eq!(root.name, "level0");
    }
}

//! Table-conversion mapping specs.
//!
//! A mapping-spec file describes how rows move from a source table to a
//! destination table. Blocks are separated by blank lines; within a block
//! the first line holds the source and destination table names and every
//! following line holds one `src_field dst_field` pair, all tokens
//! whitespace-separated. Names are taken verbatim: the file is authoritative
//! even when a pairing looks odd, so specs are never "fixed" here.
//!
//! From a spec this module emits an `INSERT ... SELECT` migration statement
//! or transforms individual records by renaming their keys.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MappingError {
    #[error("line {line}: expected 2 whitespace-separated tokens")]
    Syntax { line: usize },
    #[error("line {line}: mapping block has no field pairs")]
    EmptyBlock { line: usize },
    #[error("line {line}: duplicate source field `{name}`")]
    DuplicateSource { line: usize, name: String },
    #[error("mapping file contains no specifications")]
    Empty,
    #[error("row key `{0}` is not covered by any mapping pair")]
    UncoveredKey(String),
}

/// One source-to-destination table mapping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingSpec {
    pub src_table: String,
    pub dst_table: String,
    /// `(src_field, dst_field)` pairs in file order; src fields are unique.
    pub pairs: Vec<(String, String)>,
}

/// All mappings of one spec file, in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingFile {
    pub specs: Vec<MappingSpec>,
}

impl MappingFile {
    /// Serializes back to the file format: one block per spec, blocks
    /// separated by one blank line. Parsing the result restores `self`.
    pub fn to_source(&self) -> String {
        let mut blocks = Vec::with_capacity(self.specs.len());
        for spec in &self.specs {
            let mut block = format!("{} {}\n", spec.src_table, spec.dst_table);
            for (src, dst) in &spec.pairs {
                block.push_str(&format!("{src} {dst}\n"));
            }
            blocks.push(block);
        }
        blocks.join("\n")
    }
}

/// Parses a mapping-spec file. Multiple consecutive blank lines separate
/// like a single one; leading and trailing blank lines are ignored.
pub fn parse_mapping_file(source: &str) -> Result<MappingFile, MappingError> {
    let mut specs = Vec::new();
    let mut current: Option<MappingSpec> = None;
    let mut header_line = 0;

    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            if let Some(spec) = current.take() {
                if spec.pairs.is_empty() {
                    return Err(MappingError::EmptyBlock { line: header_line });
                }
                specs.push(spec);
            }
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(MappingError::Syntax { line });
        }
        match current.as_mut() {
            None => {
                header_line = line;
                current = Some(MappingSpec {
                    src_table: tokens[0].to_string(),
                    dst_table: tokens[1].to_string(),
                    pairs: Vec::new(),
                });
            }
            Some(spec) => {
                if spec.pairs.iter().any(|(s, _)| s == tokens[0]) {
                    return Err(MappingError::DuplicateSource {
                        line,
                        name: tokens[0].to_string(),
                    });
                }
                spec.pairs
                    .push((tokens[0].to_string(), tokens[1].to_string()));
            }
        }
    }
    if let Some(spec) = current.take() {
        if spec.pairs.is_empty() {
            return Err(MappingError::EmptyBlock { line: header_line });
        }
        specs.push(spec);
    }
    if specs.is_empty() {
        return Err(MappingError::Empty);
    }
    Ok(MappingFile { specs })
}

/// One `INSERT INTO dst (...) SELECT ... FROM src;` statement with both
/// column lists in pair order.
pub fn emit_migration_sql(m: &MappingSpec) -> String {
    let dst_cols: Vec<&str> = m.pairs.iter().map(|(_, d)| d.as_str()).collect();
    let src_cols: Vec<&str> = m.pairs.iter().map(|(s, _)| s.as_str()).collect();
    format!(
        "INSERT INTO {} ({}) SELECT {} FROM {};",
        m.dst_table,
        dst_cols.join(", "),
        src_cols.join(", "),
        m.src_table
    )
}

/// Renames a record's keys from source fields to destination fields. Values
/// are untouched; source fields absent from the row are simply absent from
/// the output. A row key no pair covers is an error.
pub fn transform_record(
    m: &MappingSpec,
    row: &BTreeMap<String, String>,
) -> Result<BTreeMap<String, String>, MappingError> {
    for key in row.keys() {
        if !m.pairs.iter().any(|(s, _)| s == key) {
            return Err(MappingError::UncoveredKey(key.clone()));
        }
    }
    let mut out = BTreeMap::new();
    for (src, dst) in &m.pairs {
        if let Some(v) = row.get(src) {
            out.insert(dst.clone(), v.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const LANGUAGE_SPEC: &str = "language ps_su_apply_lnguag\n\
                                 language_id SEQNUM\n\
                                 user_id SU_APPLY_USER_ID\n\
                                 language_name LANGUAGE_CD\n\
                                 speak READ_PROFICIENCY\n\
                                 read WRITE_PROFICIENCY\n\
                                 write SPEAK_PROFICIENCY\n";

    fn language() -> MappingSpec {
        parse_mapping_file(LANGUAGE_SPEC).unwrap().specs[0].clone()
    }

    #[test]
    fn parses_the_language_block() {
        let spec = language();
        assert_eq!(spec.src_table, "language");
        assert_eq!(spec.dst_table, "ps_su_apply_lnguag");
        assert_eq!(spec.pairs.len(), 6);
        assert_eq!(
            spec.pairs[0],
            ("language_id".to_string(), "SEQNUM".to_string())
        );
        assert_eq!(
            spec.pairs[3],
            ("speak".to_string(), "READ_PROFICIENCY".to_string())
        );
    }

    #[test]
    fn blank_lines_separate_blocks() {
        let file =
            parse_mapping_file("a b\nx X\n\nc d\ny Y\n").unwrap();
        assert_eq!(file.specs.len(), 2);
        assert_eq!(file.specs[1].src_table, "c");
        let squeezed = parse_mapping_file("\n\na b\nx X\n\n\n\nc d\ny Y\n\n").unwrap();
        assert_eq!(squeezed.specs.len(), 2);
    }

    #[test]
    fn token_count_errors_name_the_line() {
        assert_eq!(
            parse_mapping_file("a b\nx X\na b c\n").unwrap_err(),
            MappingError::Syntax { line: 3 }
        );
        assert_eq!(
            parse_mapping_file("lonely\n").unwrap_err(),
            MappingError::Syntax { line: 1 }
        );
    }

    #[test]
    fn header_only_block_is_an_error() {
        assert_eq!(
            parse_mapping_file("a b\n").unwrap_err(),
            MappingError::EmptyBlock { line: 1 }
        );
        assert_eq!(
            parse_mapping_file("a b\nx X\n\nc d\n\n").unwrap_err(),
            MappingError::EmptyBlock { line: 4 }
        );
    }

    #[test]
    fn duplicate_source_field_is_an_error() {
        assert_eq!(
            parse_mapping_file("a b\nx X\nx Y\n").unwrap_err(),
            MappingError::DuplicateSource {
                line: 3,
                name: "x".to_string()
            }
        );
    }

    #[test]
    fn empty_input_is_an_error() {
        assert_eq!(parse_mapping_file("").unwrap_err(), MappingError::Empty);
        assert_eq!(
            parse_mapping_file("\n  \n\n").unwrap_err(),
            MappingError::Empty
        );
    }

    #[test]
    fn migration_sql_for_the_language_spec() {
        assert_eq!(
            emit_migration_sql(&language()),
            "INSERT INTO ps_su_apply_lnguag (SEQNUM, SU_APPLY_USER_ID, LANGUAGE_CD, \
             READ_PROFICIENCY, WRITE_PROFICIENCY, SPEAK_PROFICIENCY) \
             SELECT language_id, user_id, language_name, speak, read, write FROM language;"
        );
    }

    #[test]
    fn migration_sql_single_pair() {
        let m = MappingSpec {
            src_table: "t".to_string(),
            dst_table: "U".to_string(),
            pairs: vec![("a".to_string(), "B".to_string())],
        };
        assert_eq!(emit_migration_sql(&m), "INSERT INTO U (B) SELECT a FROM t;");
    }

    #[test]
    fn transform_renames_keys_only() {
        let spec = language();
        let row: BTreeMap<String, String> =
            [("language_name".to_string(), "French".to_string())].into();
        let out = transform_record(&spec, &row).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.get("LANGUAGE_CD"), Some(&"French".to_string()));

        let empty = BTreeMap::new();
        assert_eq!(transform_record(&spec, &empty).unwrap(), BTreeMap::new());
    }

    #[test]
    fn transform_preserves_value_multiset_on_full_rows() {
        let spec = language();
        let row: BTreeMap<String, String> = spec
            .pairs
            .iter()
            .enumerate()
            .map(|(i, (s, _))| (s.clone(), format!("v{i}")))
            .collect();
        let out = transform_record(&spec, &row).unwrap();
        assert_eq!(out.len(), 6);
        let mut in_values: Vec<&String> = row.values().collect();
        let mut out_values: Vec<&String> = out.values().collect();
        in_values.sort();
        out_values.sort();
        assert_eq!(in_values, out_values);
    }

    #[test]
    fn uncovered_row_key_is_an_error() {
        let spec = language();
        let row: BTreeMap<String, String> =
            [("not_a_field".to_string(), "x".to_string())].into();
        assert_eq!(
            transform_record(&spec, &row).unwrap_err(),
            MappingError::UncoveredKey("not_a_field".to_string())
        );
    }

    prop_compose! {
        fn arb_spec()(
            src in "[a-z][a-z0-9_]{0,8}",
            dst in "[A-Za-z][A-Za-z0-9_]{0,8}",
            srcs in proptest::collection::btree_set("[a-z][a-z0-9_]{0,6}", 1..6),
            dsts in proptest::collection::vec("[A-Z][A-Z0-9_]{0,6}", 6),
        ) -> MappingSpec {
            let pairs = srcs.into_iter().zip(dsts).collect();
            MappingSpec { src_table: src, dst_table: dst, pairs }
        }
    }

    proptest! {
        #[test]
        fn source_round_trip(specs in proptest::collection::vec(arb_spec(), 1..4)) {
            let file = MappingFile { specs };
            let parsed = parse_mapping_file(&file.to_source()).unwrap();
            prop_assert_eq!(parsed, file);
        }

        #[test]
        fn sql_lists_columns_in_pair_order(spec in arb_spec()) {
            let sql = emit_migration_sql(&spec);
            let dst_join = spec.pairs.iter().map(|(_, d)| d.as_str()).collect::<Vec<_>>().join(", ");
            let src_join = spec.pairs.iter().map(|(s, _)| s.as_str()).collect::<Vec<_>>().join(", ");
            let dst_part = format!("({dst_join})");
            let src_part = format!("SELECT {src_join} FROM");
            prop_assert!(sql.contains(&dst_part));
            prop_assert!(sql.contains(&src_part));
        }

        #[test]
        fn parse_never_panics(src in "\\PC{0,160}") {
            let _ = parse_mapping_file(&src);
        }
    }
}

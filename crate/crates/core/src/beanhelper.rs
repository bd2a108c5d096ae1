//! Code-fragment generation from a table schema.
//!
//! Produces the five classic scaffolding blocks (SETTERS, ADDERS, UPDATERS,
//! TESTER, HELPER for servlets) plus a complete bean class and a
//! `saveOrUpdate` method. Output is plain text meant to be pasted into Java
//! source; nothing here compiles or executes it.
//!
//! Every identifier in the emitted text comes from the naming module, so the
//! fragments, the generated form controls, and the servlet helper all agree
//! on spelling. Each generated block ends with exactly one trailing newline,
//! which lets blocks be embedded verbatim inside larger artifacts.

use crate::naming::NameForms;
use crate::schema::TableSchema;

/// Sequence expression used for auto-id key values in INSERT statements.
pub const DEFAULT_SEQUENCE_TOKEN: &str = "xxxID.nextval";

const HEADER_SETTERS: &str = "-------------- SETTERS -------------";
const HEADER_ADDERS: &str = "-------------- ADDERS -------------";
const HEADER_UPDATERS: &str = "-------------- UPDATERS -------------";
const HEADER_TESTER: &str = "-------------- TESTER -------------";
const HEADER_HELPER: &str = "-------------- HELPER for servlets ---------";

/// Knobs for fragment generation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOptions {
    /// Replaces [`DEFAULT_SEQUENCE_TOKEN`] in ADDERS output.
    pub sequence_token: String,
}

impl Default for GenOptions {
    fn default() -> Self {
        GenOptions {
            sequence_token: DEFAULT_SEQUENCE_TOKEN.to_string(),
        }
    }
}

/// All artifacts generated from one schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentSet {
    pub setters: String,
    pub adders: String,
    pub updaters: String,
    pub tester: String,
    pub helper: String,
    pub bean_class: String,
    pub save_or_update: String,
}

impl FragmentSet {
    /// The five classic blocks joined under their header lines, in the
    /// traditional order.
    pub fn fragment_document(&self) -> String {
        format!(
            "{HEADER_SETTERS}\n{}{HEADER_ADDERS}\n{}{HEADER_UPDATERS}\n{}{HEADER_TESTER}\n{}{HEADER_HELPER}\n{}",
            self.setters, self.adders, self.updaters, self.tester, self.helper
        )
    }
}

fn forms(name: &str) -> NameForms {
    NameForms::of(name).expect("schema must hold valid identifiers; see validate_schema")
}

/// One `b.set{Pascal}(rs.getString("{field}"));` line per field, in
/// declaration order.
///
/// # Panics
///
/// All generators panic on identifiers the naming module rejects; build
/// schemas with [`crate::schema::parse_schema`] or
/// [`TableSchema::new`](crate::schema::TableSchema::new) to rule that out.
pub fn gen_setters(s: &TableSchema) -> String {
    let mut out = String::new();
    for f in &s.fields {
        let n = forms(&f.name);
        out.push_str(&format!("b.{}(rs.getString(\"{}\"));\n", n.setter, n.snake));
    }
    out
}

/// INSERT-statement builder text. Auto-id fields contribute the sequence
/// token as their value; all other values are quoted getter concatenations.
pub fn gen_adders(s: &TableSchema) -> String {
    gen_adders_with(s, &GenOptions::default())
}

pub fn gen_adders_with(s: &TableSchema, opts: &GenOptions) -> String {
    enum Value {
        Sequence,
        Getter(String),
    }
    let values: Vec<Value> = s
        .fields
        .iter()
        .map(|f| {
            if f.has_auto_id {
                Value::Sequence
            } else {
                Value::Getter(forms(&f.name).getter)
            }
        })
        .collect();
    let columns: Vec<&str> = s.fields.iter().map(|f| f.name.as_str()).collect();
    let seq = &opts.sequence_token;

    let mut out = format!(
        "String insertStmt = \"INSERT INTO {}({}) VALUES (",
        s.table,
        columns.join(", ")
    );
    // A leading sequence value rides on the first line, reproducing the
    // classic ` VALUES ( xxxID.nextval,` opening.
    let rest: &[Value] = match values.first() {
        Some(Value::Sequence) if values.len() == 1 => {
            out.push_str(&format!(" {seq})\";\n"));
            return out;
        }
        Some(Value::Sequence) => {
            out.push_str(&format!(" {seq},\n"));
            &values[1..]
        }
        _ => {
            out.push_str("\"\n");
            &values[..]
        }
    };
    for (i, v) in rest.iter().enumerate() {
        let last = i == rest.len() - 1;
        match (v, last) {
            (Value::Getter(g), false) => {
                out.push_str(&format!("+ \"'\" + b.{g}() + \"', \"\n"));
            }
            (Value::Getter(g), true) => {
                out.push_str(&format!("+ \"'\" + b.{g}() + \"')\";\n"));
            }
            (Value::Sequence, false) => {
                out.push_str(&format!("+ \"{seq}, \"\n"));
            }
            (Value::Sequence, true) => {
                out.push_str(&format!("+ \"{seq})\";\n"));
            }
        }
    }
    out
}

/// UPDATE-statement builder text: every field in the SET list (key included),
/// then a WHERE clause on the key field.
pub fn gen_updaters(s: &TableSchema) -> String {
    let key = forms(&s.key_field);
    let mut out = format!("String updateStmt = \"UPDATE {} SET \"\n", s.table);
    let count = s.fields.len();
    for (i, f) in s.fields.iter().enumerate() {
        let n = forms(&f.name);
        if i + 1 == count {
            out.push_str(&format!("+ \"{}='\" + b.{}() + \"' \"\n", n.snake, n.getter));
        } else {
            out.push_str(&format!(
                "+ \"{}='\" + b.{}() + \"', \"\n",
                n.snake, n.getter
            ));
        }
    }
    out.push_str(&format!(
        "+ \"WHERE {}='\" + b.{}() + \"'\";\n",
        key.snake, key.getter
    ));
    out
}

/// Smoke-test snippet: manager lookup, bean construction, one setter call
/// per field with the placeholder value `"{field}1"`.
pub fn gen_tester(s: &TableSchema) -> String {
    let table = forms(&s.table);
    let mut out = format!(
        "{p}Manager m = {p}Manager.instance();\n{p}Bean b = new {p}Bean();\n",
        p = table.pascal
    );
    for f in &s.fields {
        let n = forms(&f.name);
        out.push_str(&format!("b.{}(\"{}1\");\n", n.setter, n.snake));
    }
    out
}

/// Servlet glue: one `request.getParameter` read per field, then one bean
/// setter call per field. Both groups are contiguous and in declaration
/// order, and the parameter names are the camelCase field names.
pub fn gen_helper(s: &TableSchema) -> String {
    let mut out = String::new();
    for f in &s.fields {
        let n = forms(&f.name);
        out.push_str(&format!(
            "String {c} = request.getParameter(\"{c}\");\n",
            c = n.camel
        ));
    }
    for f in &s.fields {
        let n = forms(&f.name);
        out.push_str(&format!("b.{}({});\n", n.setter, n.camel));
    }
    out
}

/// A complete bean class: one private text member per field, getter/setter
/// pairs, and an `isValid` method listing a required-check per required
/// field.
pub fn gen_bean_class(s: &TableSchema) -> String {
    let bean = format!("{}Bean", forms(&s.table).pascal);
    let mut out = format!("public class {bean} {{\n\n");
    for f in &s.fields {
        let n = forms(&f.name);
        out.push_str(&format!("    private String {};\n", n.camel));
    }
    out.push('\n');
    for f in &s.fields {
        let n = forms(&f.name);
        out.push_str(&format!(
            "    public String {}() {{\n        return {};\n    }}\n\n",
            n.getter, n.camel
        ));
        out.push_str(&format!(
            "    public void {}(String {c}) {{\n        this.{c} = {c};\n    }}\n\n",
            n.setter,
            c = n.camel
        ));
    }
    out.push_str("    public List<String> isValid() {\n");
    out.push_str("        List<String> errors = new ArrayList<String>();\n");
    for f in &s.fields {
        if !f.required {
            continue;
        }
        let n = forms(&f.name);
        out.push_str(&format!(
            "        if ({c} == null || {c}.trim().length() == 0) {{\n",
            c = n.camel
        ));
        out.push_str(&format!(
            "            errors.add(\"{}: required\");\n",
            n.snake
        ));
        out.push_str("        }\n");
    }
    out.push_str("        return errors;\n    }\n}\n");
    out
}

/// A `saveOrUpdate` method that checks row existence by the key field and
/// embeds the ADDERS text in the absent branch and the UPDATERS text in the
/// present branch, both verbatim.
pub fn gen_save_or_update(s: &TableSchema) -> String {
    gen_save_or_update_with(s, &GenOptions::default())
}

pub fn gen_save_or_update_with(s: &TableSchema, opts: &GenOptions) -> String {
    let bean = format!("{}Bean", forms(&s.table).pascal);
    let key = forms(&s.key_field);
    let mut out = format!("public void saveOrUpdate({bean} b) {{\n");
    out.push_str(&format!(
        "String checkStmt = \"SELECT count(*) FROM {} WHERE {}='\" + b.{}() + \"'\";\n",
        s.table, key.snake, key.getter
    ));
    out.push_str("if (!rowExists(checkStmt)) {\n");
    out.push_str(&gen_adders_with(s, opts));
    out.push_str("executeUpdate(insertStmt);\n");
    out.push_str("} else {\n");
    out.push_str(&gen_updaters(s));
    out.push_str("executeUpdate(updateStmt);\n");
    out.push_str("}\n}\n");
    out
}

/// Generates every artifact for one schema with default options.
pub fn gen_all(s: &TableSchema) -> FragmentSet {
    gen_all_with(s, &GenOptions::default())
}

pub fn gen_all_with(s: &TableSchema, opts: &GenOptions) -> FragmentSet {
    FragmentSet {
        setters: gen_setters(s),
        adders: gen_adders_with(s, opts),
        updaters: gen_updaters(s),
        tester: gen_tester(s),
        helper: gen_helper(s),
        bean_class: gen_bean_class(s),
        save_or_update: gen_save_or_update_with(s, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schema::{parse_schema, FieldKind, FieldSpec};
    use proptest::prelude::*;

    fn table_a() -> TableSchema {
        parse_schema("table table_a\nfield field_aa text\nfield field_nn text\n").unwrap()
    }

    fn language() -> TableSchema {
        parse_schema(
            "table language\n\
             field language_id integer key auto_id\n\
             field user_id text\n\
             field language_name text\n\
             field speak text\n\
             field read text\n\
             field write text\n",
        )
        .unwrap()
    }

    #[test]
    fn setters_one_line_per_field() {
        assert_eq!(
            gen_setters(&table_a()),
            "b.setFieldAa(rs.getString(\"field_aa\"));\n\
             b.setFieldNn(rs.getString(\"field_nn\"));\n"
        );
        let single = TableSchema::new("t", vec![FieldSpec::new("id", FieldKind::Text)]).unwrap();
        assert_eq!(gen_setters(&single), "b.setId(rs.getString(\"id\"));\n");
        let language_setters = gen_setters(&language());
        let lines: Vec<&str> = language_setters.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "b.setLanguageId(rs.getString(\"language_id\"));");
    }

    #[test]
    fn adders_with_leading_sequence_value() {
        let s = parse_schema(
            "table table_a\nfield field_aa text key auto_id\nfield field_nn text\n",
        )
        .unwrap();
        assert_eq!(
            gen_adders(&s),
            "String insertStmt = \"INSERT INTO table_a(field_aa, field_nn) VALUES ( xxxID.nextval,\n\
             + \"'\" + b.getFieldNn() + \"')\";\n"
        );
    }

    #[test]
    fn adders_without_auto_id_quotes_every_value() {
        let text = gen_adders(&table_a());
        assert_eq!(
            text,
            "String insertStmt = \"INSERT INTO table_a(field_aa, field_nn) VALUES (\"\n\
             + \"'\" + b.getFieldAa() + \"', \"\n\
             + \"'\" + b.getFieldNn() + \"')\";\n"
        );
        // Concatenation lines equal field count when no sequence is emitted.
        let plus_lines = text.lines().filter(|l| l.starts_with("+ ")).count();
        assert_eq!(plus_lines, 2);
    }

    #[test]
    fn adders_smallest_instance() {
        let s = TableSchema::new("t", vec![FieldSpec::new("a", FieldKind::Text)]).unwrap();
        let text = gen_adders(&s);
        let flattened = text.lines().collect::<Vec<_>>().join(" ");
        assert_eq!(
            flattened,
            "String insertStmt = \"INSERT INTO t(a) VALUES (\" + \"'\" + b.getA() + \"')\";"
        );
    }

    #[test]
    fn adders_sequence_in_middle_and_tail_positions() {
        let s = TableSchema::new(
            "t",
            vec![
                FieldSpec::new("a", FieldKind::Text),
                FieldSpec::new("b_id", FieldKind::Integer).key().auto_id(),
            ],
        )
        .unwrap();
        assert_eq!(
            gen_adders(&s),
            "String insertStmt = \"INSERT INTO t(a, b_id) VALUES (\"\n\
             + \"'\" + b.getA() + \"', \"\n\
             + \"xxxID.nextval)\";\n"
        );
        let only = TableSchema::new(
            "t",
            vec![FieldSpec::new("a_id", FieldKind::Integer).key().auto_id()],
        )
        .unwrap();
        assert_eq!(
            gen_adders(&only),
            "String insertStmt = \"INSERT INTO t(a_id) VALUES ( xxxID.nextval)\";\n"
        );
    }

    #[test]
    fn adders_sequence_token_is_overridable() {
        let s = parse_schema(
            "table language\nfield language_id integer key auto_id\nfield speak text\n",
        )
        .unwrap();
        let opts = GenOptions {
            sequence_token: "language_seq.nextval".to_string(),
        };
        let text = gen_adders_with(&s, &opts);
        assert!(text.starts_with(
            "String insertStmt = \"INSERT INTO language(language_id, speak) VALUES ( language_seq.nextval,\n"
        ));
        assert!(!text.contains("xxxID"));
    }

    #[test]
    fn updaters_set_every_field_and_key_the_where() {
        assert_eq!(
            gen_updaters(&table_a()),
            "String updateStmt = \"UPDATE table_a SET \"\n\
             + \"field_aa='\" + b.getFieldAa() + \"', \"\n\
             + \"field_nn='\" + b.getFieldNn() + \"' \"\n\
             + \"WHERE field_nn='\" + b.getFieldNn() + \"'\";\n"
        );
    }

    #[test]
    fn updaters_single_field_sets_and_keys_same_field() {
        let s = TableSchema::new("t", vec![FieldSpec::new("a", FieldKind::Text)]).unwrap();
        assert_eq!(
            gen_updaters(&s),
            "String updateStmt = \"UPDATE t SET \"\n\
             + \"a='\" + b.getA() + \"' \"\n\
             + \"WHERE a='\" + b.getA() + \"'\";\n"
        );
    }

    #[test]
    fn updaters_where_uses_flagged_key() {
        let text = gen_updaters(&language());
        assert!(text.ends_with("+ \"WHERE language_id='\" + b.getLanguageId() + \"'\";\n"));
        let set_lines = text.lines().filter(|l| l.contains("='\" + b.get")).count();
        // 6 SET lines plus the WHERE line share the pattern.
        assert_eq!(set_lines, 7);
    }

    #[test]
    fn tester_builds_manager_bean_and_setter_calls() {
        assert_eq!(
            gen_tester(&table_a()),
            "TableAManager m = TableAManager.instance();\n\
             TableABean b = new TableABean();\n\
             b.setFieldAa(\"field_aa1\");\n\
             b.setFieldNn(\"field_nn1\");\n"
        );
        let single = TableSchema::new("t", vec![FieldSpec::new("x", FieldKind::Text)]).unwrap();
        assert!(gen_tester(&single).contains("b.setX(\"x1\");\n"));
        assert_eq!(gen_tester(&language()).lines().count(), 8);
    }

    #[test]
    fn helper_reads_params_then_sets_bean() {
        assert_eq!(
            gen_helper(&table_a()),
            "String fieldAa = request.getParameter(\"fieldAa\");\n\
             String fieldNn = request.getParameter(\"fieldNn\");\n\
             b.setFieldAa(fieldAa);\n\
             b.setFieldNn(fieldNn);\n"
        );
        let single = TableSchema::new("t", vec![FieldSpec::new("x", FieldKind::Text)]).unwrap();
        assert_eq!(gen_helper(&single).lines().count(), 2);
        assert_eq!(gen_helper(&language()).lines().count(), 12);
    }

    #[test]
    fn bean_class_members_accessors_and_required_checks() {
        let s = parse_schema("table table_a\nfield field_aa text required\nfield field_nn text\n")
            .unwrap();
        let text = gen_bean_class(&s);
        assert!(text.starts_with("public class TableABean {\n"));
        assert!(text.contains("    private String fieldAa;\n"));
        assert!(text.contains("    public String getFieldAa() {\n        return fieldAa;\n    }\n"));
        assert!(text.contains(
            "    public void setFieldAa(String fieldAa) {\n        this.fieldAa = fieldAa;\n    }\n"
        ));
        assert!(text.contains("List<String> errors = new ArrayList<String>();\n"));
        assert!(text.contains("if (fieldAa == null || fieldAa.trim().length() == 0) {\n"));
        assert!(text.contains("errors.add(\"field_aa: required\");\n"));
        assert!(!text.contains("if (fieldNn"));
        assert!(text.ends_with("\n"));
        assert!(!text.ends_with("\n\n"));
    }

    #[test]
    fn bean_class_without_required_fields_has_no_checks() {
        let text = gen_bean_class(&table_a());
        assert!(!text.contains("errors.add"));
        assert!(text.contains(
            "    public List<String> isValid() {\n        List<String> errors = new ArrayList<String>();\n        return errors;\n    }\n"
        ));
    }

    #[test]
    fn bean_class_pair_count_matches_field_count() {
        let fields: Vec<FieldSpec> = (0..13)
            .map(|i| FieldSpec::new(format!("col{i}"), FieldKind::Text))
            .collect();
        let s = TableSchema::new("info", fields).unwrap();
        let text = gen_bean_class(&s);
        assert_eq!(text.matches("    public String get").count(), 13);
        assert_eq!(text.matches("    public void set").count(), 13);
    }

    #[test]
    fn save_or_update_embeds_adders_and_updaters_verbatim() {
        for s in [table_a(), language()] {
            let text = gen_save_or_update(&s);
            assert!(text.contains(&gen_adders(&s)));
            assert!(text.contains(&gen_updaters(&s)));
            assert!(text.contains("executeUpdate(insertStmt);"));
            assert!(text.contains("executeUpdate(updateStmt);"));
        }
    }

    #[test]
    fn save_or_update_checks_existence_by_key() {
        let text = gen_save_or_update(&table_a());
        assert!(text.contains(
            "String checkStmt = \"SELECT count(*) FROM table_a WHERE field_nn='\" + b.getFieldNn() + \"'\";"
        ));
        assert_eq!(text.matches("WHERE field_nn").count(), 2);
        let single = TableSchema::new("t", vec![FieldSpec::new("a", FieldKind::Text)]).unwrap();
        assert!(gen_save_or_update(&single).contains("SELECT count(*) FROM t WHERE a='"));
    }

    #[test]
    fn fragment_document_orders_blocks_under_headers() {
        let set = gen_all(&table_a());
        let doc = set.fragment_document();
        let positions: Vec<usize> = [
            "-------------- SETTERS -------------\n",
            "-------------- ADDERS -------------\n",
            "-------------- UPDATERS -------------\n",
            "-------------- TESTER -------------\n",
            "-------------- HELPER for servlets ---------\n",
        ]
        .iter()
        .map(|h| doc.find(h).expect("header present"))
        .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(doc.starts_with("-------------- SETTERS -------------\n"));
        assert!(doc.ends_with("b.setFieldNn(fieldNn);\n"));
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen_all(&language());
        let b = gen_all(&language());
        assert_eq!(a, b);
        assert_eq!(a.fragment_document(), b.fragment_document());
    }

    #[test]
    fn every_block_ends_with_one_newline() {
        let set = gen_all(&language());
        for block in [
            &set.setters,
            &set.adders,
            &set.updaters,
            &set.tester,
            &set.helper,
            &set.bean_class,
            &set.save_or_update,
        ] {
            assert!(block.ends_with('\n'));
            assert!(!block.ends_with("\n\n"));
        }
    }

    /// Extracts every `getX`/`setX` token (split on non-alphanumerics) so
    /// fragments can be checked against the accessor names the naming module
    /// derives. `getString`/`getParameter` belong to the JDBC/servlet APIs.
    fn accessor_tokens(text: &str) -> Vec<String> {
        text.split(|c: char| !c.is_ascii_alphanumeric())
            .filter(|t| {
                (t.starts_with("get") || t.starts_with("set"))
                    && t.len() > 3
                    && t.as_bytes()[3].is_ascii_uppercase()
                    && *t != "getString"
                    && *t != "getParameter"
            })
            .map(|t| t.to_string())
            .collect()
    }

    proptest! {
        #[test]
        fn fragment_accessors_all_come_from_schema_names(
            names in proptest::collection::btree_set("[a-z][a-z0-9]{0,4}(_[a-z][a-z0-9]{0,3}){0,2}", 1..7),
            table in "[a-z][a-z0-9]{0,5}",
            auto in any::<bool>(),
        ) {
            let names: Vec<String> = names.into_iter().collect();
            let mut fields: Vec<FieldSpec> = names
                .iter()
                .map(|n| FieldSpec::new(n.clone(), FieldKind::Text))
                .collect();
            if auto {
                fields[0].is_key = true;
                fields[0].has_auto_id = true;
            }
            let s = TableSchema::new(table, fields).unwrap();
            let mut known: Vec<String> = Vec::new();
            for f in &s.fields {
                let n = NameForms::of(&f.name).unwrap();
                known.push(n.getter);
                known.push(n.setter);
            }
            let set = gen_all(&s);
            for block in [
                &set.setters, &set.adders, &set.updaters,
                &set.tester, &set.helper, &set.bean_class, &set.save_or_update,
            ] {
                for token in accessor_tokens(block) {
                    prop_assert!(known.contains(&token), "unexpected accessor {token}");
                }
            }
            // Line-count invariants.
            let n = s.fields.len();
            prop_assert_eq!(set.setters.lines().count(), n);
            prop_assert_eq!(set.helper.lines().count(), 2 * n);
            prop_assert_eq!(
                set.updaters.lines().count(),
                n + 2
            );
        }
    }
}

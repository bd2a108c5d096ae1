//! Table schema model and its line-oriented source format.
//!
//! A schema names one table and its fields. Every downstream artifact (code
//! fragments, HTML forms, record validation) is driven from this one
//! structure, so the declared field order is preserved everywhere.
//!
//! Source format, one declaration per line:
//!
//! ```text
//! table person
//! field first_name text required
//! field dob date
//! field person_id integer key auto_id
//! ```
//!
//! `#` starts a comment line; blank lines are ignored. Field flags are
//! `required`, `key`, and `auto_id`, in any order, at most once each. The key
//! field defaults to the last declared field when no field carries the `key`
//! flag.

use thiserror::Error;

use crate::naming::is_snake_identifier;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    /// A line that does not fit the grammar.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    /// A field kind token that names no known kind.
    #[error("line {line}: unknown kind `{kind}`")]
    UnknownKind { line: usize, kind: String },
    /// More than one field carries the `key` flag.
    #[error("line {line}: `{field}` marked key but a key field was already declared")]
    DuplicateKey { line: usize, field: String },
    /// Structurally well-formed input that breaks a schema rule. All
    /// violations are collected so callers can report every problem at once.
    #[error("invalid schema: {}", violations.join("; "))]
    Invalid { violations: Vec<String> },
}

/// The kind of a field, controlling widget choice and validation rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldKind {
    Text,
    LongText,
    Integer,
    Boolean,
    Date,
    Enum(Vec<String>),
    Country,
    State,
    UploadRef,
}

impl FieldKind {
    /// The source-format token for this kind.
    pub fn token(&self) -> String {
        match self {
            FieldKind::Text => "text".to_string(),
            FieldKind::LongText => "long_text".to_string(),
            FieldKind::Integer => "integer".to_string(),
            FieldKind::Boolean => "boolean".to_string(),
            FieldKind::Date => "date".to_string(),
            FieldKind::Enum(values) => format!("enum({})", values.join(",")),
            FieldKind::Country => "country".to_string(),
            FieldKind::State => "state".to_string(),
            FieldKind::UploadRef => "upload_ref".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub name: String,
    pub kind: FieldKind,
    pub required: bool,
    pub is_key: bool,
    /// Key value comes from a database sequence rather than user input.
    pub has_auto_id: bool,
}

impl FieldSpec {
    pub fn new(name: impl Into<String>, kind: FieldKind) -> Self {
        FieldSpec {
            name: name.into(),
            kind,
            required: false,
            is_key: false,
            has_auto_id: false,
        }
    }

    pub fn required(mut self) -> Self {
        self.required = true;
        self
    }

    pub fn key(mut self) -> Self {
        self.is_key = true;
        self
    }

    pub fn auto_id(mut self) -> Self {
        self.has_auto_id = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSchema {
    pub table: String,
    pub fields: Vec<FieldSpec>,
    /// Name of the key field; always one of `fields`.
    pub key_field: String,
}

impl TableSchema {
    /// Builds a schema from parts, deriving the key field (the one flagged
    /// `key`, else the last declared field) and rejecting rule violations.
    pub fn new(table: impl Into<String>, fields: Vec<FieldSpec>) -> Result<Self, SchemaError> {
        let table = table.into();
        let key_field = match fields.iter().find(|f| f.is_key) {
            Some(f) => f.name.clone(),
            None => match fields.last() {
                Some(f) => f.name.clone(),
                None => String::new(),
            },
        };
        let schema = TableSchema {
            table,
            fields,
            key_field,
        };
        let violations = validate_schema(&schema);
        if violations.is_empty() {
            Ok(schema)
        } else {
            Err(SchemaError::Invalid { violations })
        }
    }

    pub fn field(&self, name: &str) -> Option<&FieldSpec> {
        self.fields.iter().find(|f| f.name == name)
    }

    /// The key field's spec. Valid schemas always have one.
    pub fn key(&self) -> Option<&FieldSpec> {
        self.field(&self.key_field)
    }

    /// Serializes back to the source format. Parsing the result yields a
    /// schema equal to `self`.
    pub fn to_source(&self) -> String {
        let mut out = format!("table {}\n", self.table);
        for f in &self.fields {
            out.push_str("field ");
            out.push_str(&f.name);
            out.push(' ');
            out.push_str(&f.kind.token());
            if f.required {
                out.push_str(" required");
            }
            if f.is_key {
                out.push_str(" key");
            }
            if f.has_auto_id {
                out.push_str(" auto_id");
            }
            out.push('\n');
        }
        out
    }
}

/// Checks schema rules and returns every violation found, one message per
/// problem. An empty result means the schema is valid.
pub fn validate_schema(schema: &TableSchema) -> Vec<String> {
    let mut violations = Vec::new();
    if schema.fields.is_empty() {
        violations.push("schema declares no fields".to_string());
    }
    if !is_snake_identifier(&schema.table) {
        violations.push(format!("{}: invalid identifier", schema.table));
    }
    let mut seen: Vec<&str> = Vec::new();
    for f in &schema.fields {
        if !is_snake_identifier(&f.name) {
            violations.push(format!("{}: invalid identifier", f.name));
        }
        if seen.contains(&f.name.as_str()) {
            violations.push(format!("{}: duplicate field", f.name));
        }
        seen.push(&f.name);
        if let FieldKind::Enum(values) = &f.kind {
            if values.is_empty() {
                violations.push(format!("{}: enum requires at least one value", f.name));
            }
        }
        if f.is_key && f.name != schema.key_field {
            violations.push(format!(
                "{}: marked key but key_field is {}",
                f.name, schema.key_field
            ));
        }
    }
    if !schema.fields.is_empty() && schema.field(&schema.key_field).is_none() {
        violations.push(format!("key_field {} not declared", schema.key_field));
    }
    violations
}

/// Parses the line-oriented schema format. Structural problems (bad grammar,
/// unknown kinds, repeated flags) error with their line number; rule
/// violations on a well-formed schema are collected into
/// [`SchemaError::Invalid`].
pub fn parse_schema(source: &str) -> Result<TableSchema, SchemaError> {
    let mut table: Option<String> = None;
    let mut fields: Vec<FieldSpec> = Vec::new();
    let mut key_line: Option<usize> = None;
    let mut last_line = 0;

    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "table" => {
                if table.is_some() {
                    return Err(SchemaError::Syntax {
                        line,
                        message: "second `table` declaration".to_string(),
                    });
                }
                if tokens.len() != 2 {
                    return Err(SchemaError::Syntax {
                        line,
                        message: "expected `table NAME`".to_string(),
                    });
                }
                table = Some(tokens[1].to_string());
            }
            "field" => {
                if table.is_none() {
                    return Err(SchemaError::Syntax {
                        line,
                        message: "`field` before `table`".to_string(),
                    });
                }
                if tokens.len() < 3 {
                    return Err(SchemaError::Syntax {
                        line,
                        message: "expected `field NAME KIND [flags]`".to_string(),
                    });
                }
                let kind = parse_kind(tokens[2]).ok_or_else(|| SchemaError::UnknownKind {
                    line,
                    kind: tokens[2].to_string(),
                })?;
                if let FieldKind::Enum(values) = &kind {
                    if values.iter().any(|v| v.is_empty()) {
                        return Err(SchemaError::Syntax {
                            line,
                            message: "empty enum value".to_string(),
                        });
                    }
                }
                let mut spec = FieldSpec::new(tokens[1], kind);
                for flag in &tokens[3..] {
                    match *flag {
                        "required" if !spec.required => spec.required = true,
                        "key" if !spec.is_key => {
                            if key_line.is_some() {
                                return Err(SchemaError::DuplicateKey {
                                    line,
                                    field: spec.name.clone(),
                                });
                            }
                            key_line = Some(line);
                            spec.is_key = true;
                        }
                        "auto_id" if !spec.has_auto_id => spec.has_auto_id = true,
                        "required" | "key" | "auto_id" => {
                            return Err(SchemaError::Syntax {
                                line,
                                message: format!("repeated flag `{flag}`"),
                            });
                        }
                        other => {
                            return Err(SchemaError::Syntax {
                                line,
                                message: format!("unknown flag `{other}`"),
                            });
                        }
                    }
                }
                fields.push(spec);
            }
            other => {
                return Err(SchemaError::Syntax {
                    line,
                    message: format!("unknown declaration `{other}`"),
                });
            }
        }
    }

    let table = table.ok_or(SchemaError::Syntax {
        line: last_line.max(1),
        message: "missing `table` declaration".to_string(),
    })?;
    if fields.is_empty() {
        return Err(SchemaError::Syntax {
            line: last_line.max(1),
            message: "schema declares no fields".to_string(),
        });
    }
    TableSchema::new(table, fields)
}

fn parse_kind(token: &str) -> Option<FieldKind> {
    match token {
        "text" => Some(FieldKind::Text),
        "long_text" => Some(FieldKind::LongText),
        "integer" => Some(FieldKind::Integer),
        "boolean" => Some(FieldKind::Boolean),
        "date" => Some(FieldKind::Date),
        "country" => Some(FieldKind::Country),
        "state" => Some(FieldKind::State),
        "upload_ref" => Some(FieldKind::UploadRef),
        t => {
            let inner = t.strip_prefix("enum(")?.strip_suffix(')')?;
            if inner.is_empty() {
                return Some(FieldKind::Enum(Vec::new()));
            }
            Some(FieldKind::Enum(
                inner.split(',').map(|v| v.to_string()).collect(),
            ))
        }
    }
}

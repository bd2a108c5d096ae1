//! Schema-driven scaffolding toolkit.
//!
//! One table schema drives every artifact a small database-backed web
//! application needs: the classic code-fragment blocks (SETTERS, ADDERS,
//! UPDATERS, TESTER, HELPER) plus full bean and `saveOrUpdate` text, an HTML
//! form page, and record validation with whitelist sanitization. Around that
//! core sit table-conversion mapping specs, a minimal markup configuration
//! parser, and a hierarchical logging engine.
//!
//! All output is deterministic text: no timestamps, no locale dependence,
//! no randomness. The same inputs always produce the same bytes, which is
//! what makes golden-file testing of every artifact practical.
//!
//! Modules:
//!
//! - [`naming`]: snake_case / camelCase / PascalCase conversions and
//!   accessor derivation, the shared vocabulary of all generators.
//! - [`schema`]: the [`TableSchema`] model and its line-oriented source
//!   format.
//! - [`beanhelper`]: code-fragment generation from a schema.
//! - [`formgen`]: HTML form generation from the same schema.
//! - [`tableconv`]: mapping-spec parsing, migration SQL, record transforms.
//! - [`validate`]: record validation, whitelist sanitization, and
//!   multi-statement SQL detection.
//! - [`regions`]: the country and US-state tables.
//! - [`config`]: the markup-subset configuration parser.
//! - [`loglite`]: priorities, appenders, and category-tree dispatch.

pub mod beanhelper;
pub mod config;
pub mod error;
pub mod formgen;
pub mod loglite;
pub mod naming;
pub mod regions;
pub mod schema;
pub mod tableconv;
pub mod validate;

pub use beanhelper::{gen_all, gen_all_with, FragmentSet, GenOptions, DEFAULT_SEQUENCE_TOKEN};
pub use config::{parse_config, ConfigError, ConfigNode};
pub use error::{Error, Result};
pub use formgen::{render_form, widget_for, BooleanWidget, FormError, FormPolicy, Widget, WidgetKind};
pub use loglite::{
    log_dispatch, Appender, CategoryTree, LogConfig, LogError, Logger, MemoryBuffer, Priority,
    Sink,
};
pub use naming::{NameError, NameForms};
pub use schema::{parse_schema, validate_schema, FieldKind, FieldSpec, SchemaError, TableSchema};
pub use tableconv::{
    emit_migration_sql, parse_mapping_file, transform_record, MappingError, MappingFile,
    MappingSpec,
};
pub use validate::{
    detect_multi_statement, sanitize_bytes, sanitize_whitelist, validate_record, AllowedChars,
    CalendarDate, DateWindow, ValidateError, ValidationError, ValidationOutcome,
    DEFAULT_OK_CHARS,
};

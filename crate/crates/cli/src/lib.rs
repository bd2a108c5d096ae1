//! Command-line front end for the scaffolding toolkit.
//!
//! One binary, six subcommands: `beanhelper` (code fragments), `form` (HTML
//! page), `tableconv` (migration SQL and record transforms), `validate`
//! (record findings), `sanitize` (whitelist filter over stdin), and
//! `check-schema` (schema-rule findings).
//!
//! Artifacts go to stdout; diagnostics go to stderr. Exit codes: 0 success,
//! 1 usage error, 2 input parse error, 3 findings reported by `validate` or
//! `check-schema`. Output is byte-deterministic for fixed argv, stdin, and
//! files.
//!
//! An optional configuration file (`--config FILE`, or the `SCAFFOLD_CONFIG`
//! environment variable; the flag wins) supplies defaults under the root
//! element, whatever its name: `*.validate.oldest` / `*.validate.newest`,
//! `*.form.action` / `*.form.boolean` / `*.form.errors`,
//! `*.beanhelper.sequence`, `*.sanitize.allow`, and a `<logging>` element
//! wired per the logging module. Command-line flags always win over
//! configured values.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use scaffold_core::beanhelper::{gen_all_with, GenOptions, DEFAULT_SEQUENCE_TOKEN};
use scaffold_core::config::{parse_config, ConfigNode};
use scaffold_core::formgen::{render_form, BooleanWidget, FormPolicy};
use scaffold_core::loglite::{LogConfig, Logger, Priority};
use scaffold_core::schema::{parse_schema, FieldKind, FieldSpec, SchemaError, TableSchema};
use scaffold_core::tableconv::{emit_migration_sql, parse_mapping_file, transform_record, MappingFile, MappingSpec};
use scaffold_core::validate::{
    sanitize_bytes, validate_record, AllowedChars, CalendarDate, DateWindow,
};

#[derive(Parser, Debug)]
#[command(
    name = "scaffold",
    version,
    about = "Schema-driven scaffolding: code fragments, forms, migrations, validation"
)]
struct Cli {
    /// Configuration file; overrides the SCAFFOLD_CONFIG environment variable
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print generated code blocks for a table
    Beanhelper(BeanhelperArgs),
    /// Render an HTML form page from a schema file
    Form(FormArgs),
    /// Emit migration SQL or transform a record via a mapping-spec file
    Tableconv(TableconvArgs),
    /// Validate a record against a schema file
    Validate(ValidateArgs),
    /// Whitelist-sanitize stdin to stdout
    Sanitize(SanitizeArgs),
    /// Check a schema file and print rule violations
    CheckSchema(CheckSchemaArgs),
}

impl Command {
    fn label(&self) -> &'static str {
        match self {
            Command::Beanhelper(_) => "beanhelper",
            Command::Form(_) => "form",
            Command::Tableconv(_) => "tableconv",
            Command::Validate(_) => "validate",
            Command::Sanitize(_) => "sanitize",
            Command::CheckSchema(_) => "check-schema",
        }
    }
}

#[derive(Args, Debug)]
struct BeanhelperArgs {
    /// TABLE followed by FIELD names (legacy form: all fields text, last field is the key)
    #[arg(value_name = "TABLE|FIELD")]
    names: Vec<String>,

    /// Schema file to generate from (instead of positional names)
    #[arg(long, value_name = "FILE")]
    schema: Option<PathBuf>,

    /// Artifact to print
    #[arg(long, value_enum, default_value_t = BeanEmit::Fragments)]
    emit: BeanEmit,

    /// Sequence expression for auto-id insert values
    #[arg(long, value_name = "TOKEN")]
    sequence: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BeanEmit {
    /// The five classic blocks under their headers
    Fragments,
    /// The complete bean class
    Bean,
    /// The saveOrUpdate method
    SaveOrUpdate,
}

#[derive(Args, Debug)]
struct FormArgs {
    /// Schema file describing the table
    #[arg(long, value_name = "FILE")]
    schema: PathBuf,

    /// Form POST target (falls back to the form.action config key)
    #[arg(long, value_name = "PATH")]
    action: Option<String>,

    /// Widget used for boolean fields
    #[arg(long, value_enum)]
    boolean: Option<BooleanKind>,

    /// Emit the error placeholder region
    #[arg(long, value_enum, value_name = "on|off")]
    error_region: Option<OnOff>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum BooleanKind {
    Radio,
    Checkbox,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OnOff {
    On,
    Off,
}

#[derive(Args, Debug)]
struct TableconvArgs {
    /// Mapping-spec file
    #[arg(value_name = "SPECFILE")]
    spec: PathBuf,

    /// What to emit
    #[arg(long, value_enum, default_value_t = TableconvEmit::Sql)]
    emit: TableconvEmit,

    /// Record field, KEY=VALUE (record mode; repeatable)
    #[arg(long = "row", value_name = "K=V")]
    rows: Vec<String>,

    /// Select the mapping block with this source table (default: first block)
    #[arg(long, value_name = "TABLE")]
    table: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TableconvEmit {
    /// One INSERT ... SELECT statement per mapping block
    Sql,
    /// Transform the --row record through the selected block
    Record,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Schema file describing the table
    #[arg(long, value_name = "FILE")]
    schema: PathBuf,

    /// Record field, KEY=VALUE (repeatable; absent fields count as blank)
    #[arg(long = "row", value_name = "K=V")]
    rows: Vec<String>,

    /// Oldest acceptable date (default 1900-01-01)
    #[arg(long, value_name = "YYYY-MM-DD")]
    oldest: Option<String>,

    /// Newest acceptable date (default 2100-12-31)
    #[arg(long, value_name = "YYYY-MM-DD")]
    newest: Option<String>,
}

#[derive(Args, Debug)]
struct SanitizeArgs {
    /// Allowed characters, literal or lo-hi ranges (default -a-zA-Z0-9_.@)
    #[arg(long, value_name = "CHARS", allow_hyphen_values = true)]
    allow: Option<String>,
}

#[derive(Args, Debug)]
struct CheckSchemaArgs {
    /// Schema file to check
    #[arg(value_name = "FILE")]
    file: PathBuf,
}

enum CliError {
    /// Operator mistake on the command line: exit 1.
    Usage(String),
    /// Unreadable or unparseable input: exit 2.
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Input(m) => f.write_str(m),
        }
    }
}

fn input(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Loaded configuration plus the optional logger built from it.
struct Toolkit {
    config: Option<ConfigNode>,
    logger: Option<Logger>,
}

impl Toolkit {
    fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Toolkit {
                config: None,
                logger: None,
            });
        };
        let source = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))?;
        let config = parse_config(&source)
            .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))?;
        let logger = match config.child("logging") {
            Some(node) => Some(
                LogConfig::from_node(node)
                    .and_then(LogConfig::into_logger)
                    .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))?,
            ),
            None => None,
        };
        Ok(Toolkit {
            config: Some(config),
            logger,
        })
    }

    /// Looks up `<root>.<subpath>` where `<root>` is the config file's root
    /// element, whatever it is named.
    fn lookup(&self, subpath: &str) -> Option<&str> {
        let config = self.config.as_ref()?;
        config.lookup(&format!("{}.{}", config.name, subpath))
    }
}

/// Runs one invocation. `argv` includes the program name; configuration is
/// found via the `--config` flag or the `SCAFFOLD_CONFIG` entry in `env`.
pub fn run(
    argv: &[String],
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    env: &BTreeMap<String, String>,
) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    1
                }
            };
        }
    };
    match execute(cli, stdin, stdout, stderr, env) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            1
        }
        Err(CliError::Input(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            2
        }
    }
}

fn execute(
    cli: Cli,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    env: &BTreeMap<String, String>,
) -> Result<i32, CliError> {
    let config_path = cli
        .config
        .clone()
        .or_else(|| env.get("SCAFFOLD_CONFIG").map(PathBuf::from));
    let toolkit = Toolkit::load(config_path.as_deref())?;
    if let Some(logger) = &toolkit.logger {
        let note = format!("running {}", cli.command.label());
        if let Err(e) = logger.log("scaffold.cli", Priority::Debug, &note) {
            let _ = writeln!(stderr, "warning: logging failed: {e}");
        }
    }
    match &cli.command {
        Command::Beanhelper(args) => cmd_beanhelper(args, &toolkit, stdout),
        Command::Form(args) => cmd_form(args, &toolkit, stdout),
        Command::Tableconv(args) => cmd_tableconv(args, stdout),
        Command::Validate(args) => cmd_validate(args, &toolkit, stdout),
        Command::Sanitize(args) => cmd_sanitize(args, &toolkit, stdin, stdout),
        Command::CheckSchema(args) => cmd_check_schema(args, stdout),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))
}

fn emit(stdout: &mut dyn Write, text: &str) -> Result<(), CliError> {
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Input(format!("writing output: {e}")))
}

/// KEY=VALUE pairs into a record; duplicate keys are operator mistakes.
fn parse_rows(rows: &[String]) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for r in rows {
        let (k, v) = r
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--row `{r}` must be KEY=VALUE")))?;
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(CliError::Usage(format!("duplicate --row key `{k}`")));
        }
    }
    Ok(map)
}

fn cmd_beanhelper(
    args: &BeanhelperArgs,
    toolkit: &Toolkit,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    let schema = match (&args.schema, args.names.len()) {
        (Some(_), n) if n > 0 => {
            return Err(usage("--schema conflicts with positional TABLE/FIELD names"));
        }
        (Some(path), _) => parse_schema(&read_file(path)?).map_err(input)?,
        (None, 0 | 1) => {
            return Err(usage("expected TABLE and at least one FIELD, or --schema FILE"));
        }
        (None, _) => legacy_schema(&args.names)?,
    };
    let sequence_token = args
        .sequence
        .clone()
        .or_else(|| toolkit.lookup("beanhelper.sequence").map(str::to_string))
        .unwrap_or_else(|| DEFAULT_SEQUENCE_TOKEN.to_string());
    let set = gen_all_with(&schema, &GenOptions { sequence_token });
    let text = match args.emit {
        BeanEmit::Fragments => set.fragment_document(),
        BeanEmit::Bean => set.bean_class,
        BeanEmit::SaveOrUpdate => set.save_or_update,
    };
    emit(stdout, &text)?;
    Ok(0)
}

/// The legacy positional form: every field is text-kind with no flags, so
/// the key defaults to the last declared field and inserts list one quoted
/// value per column.
fn legacy_schema(names: &[String]) -> Result<TableSchema, CliError> {
    let fields = names[1..]
        .iter()
        .map(|n| FieldSpec::new(n.clone(), FieldKind::Text))
        .collect();
    TableSchema::new(names[0].clone(), fields).map_err(input)
}

fn cmd_form(args: &FormArgs, toolkit: &Toolkit, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let schema = parse_schema(&read_file(&args.schema)?).map_err(input)?;
    let action = args
        .action
        .clone()
        .or_else(|| toolkit.lookup("form.action").map(str::to_string))
        .ok_or_else(|| usage("missing --action (and no form.action configured)"))?;
    let mut policy = FormPolicy::new(action).map_err(usage)?;

    let boolean = match args.boolean {
        Some(BooleanKind::Radio) => BooleanWidget::RadioPair,
        Some(BooleanKind::Checkbox) => BooleanWidget::Checkbox,
        None => match toolkit.lookup("form.boolean") {
            None | Some("radio") => BooleanWidget::RadioPair,
            Some("checkbox") => BooleanWidget::Checkbox,
            Some(other) => {
                return Err(input(format!(
                    "config form.boolean `{other}` must be radio or checkbox"
                )));
            }
        },
    };
    policy = policy.with_boolean_widget(boolean);

    let errors_on = match args.error_region {
        Some(OnOff::On) => true,
        Some(OnOff::Off) => false,
        None => match toolkit.lookup("form.errors") {
            None | Some("on") => true,
            Some("off") => false,
            Some(other) => {
                return Err(input(format!("config form.errors `{other}` must be on or off")));
            }
        },
    };
    if !errors_on {
        policy = policy.without_error_region();
    }
    emit(stdout, &render_form(&schema, &policy))?;
    Ok(0)
}

/// The mapping block to operate on: `--table` selects by source table,
/// otherwise the file's first block.
fn select_spec<'a>(file: &'a MappingFile, table: Option<&str>) -> Result<&'a MappingSpec, CliError> {
    match table {
        None => Ok(&file.specs[0]),
        Some(t) => file
            .specs
            .iter()
            .find(|s| s.src_table == t)
            .ok_or_else(|| CliError::Input(format!("no mapping block with source table `{t}`"))),
    }
}

fn cmd_tableconv(args: &TableconvArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let file = parse_mapping_file(&read_file(&args.spec)?).map_err(input)?;
    match args.emit {
        TableconvEmit::Sql => {
            if !args.rows.is_empty() {
                return Err(usage("--row only applies to --emit record"));
            }
            match &args.table {
                None => {
                    for spec in &file.specs {
                        emit(stdout, &format!("{}\n", emit_migration_sql(spec)))?;
                    }
                }
                Some(t) => {
                    let spec = select_spec(&file, Some(t))?;
                    emit(stdout, &format!("{}\n", emit_migration_sql(spec)))?;
                }
            }
        }
        TableconvEmit::Record => {
            if args.rows.is_empty() {
                return Err(usage("record mode requires at least one --row"));
            }
            let spec = select_spec(&file, args.table.as_deref())?;
            let row = parse_rows(&args.rows)?;
            let out = transform_record(spec, &row).map_err(input)?;
            // Pair order, not map order, so output tracks the spec file.
            for (_, dst) in &spec.pairs {
                if let Some(v) = out.get(dst) {
                    emit(stdout, &format!("{dst}={v}\n"))?;
                }
            }
        }
    }
    Ok(0)
}

fn resolve_date(
    flag: Option<&str>,
    flag_name: &str,
    toolkit: &Toolkit,
    config_key: &str,
    default: CalendarDate,
) -> Result<CalendarDate, CliError> {
    if let Some(s) = flag {
        return CalendarDate::parse(s)
            .ok_or_else(|| usage(format!("--{flag_name} `{s}` is not a YYYY-MM-DD date")));
    }
    if let Some(s) = toolkit.lookup(config_key) {
        return CalendarDate::parse(s)
            .ok_or_else(|| input(format!("config {config_key} `{s}` is not a YYYY-MM-DD date")));
    }
    Ok(default)
}

fn cmd_validate(
    args: &ValidateArgs,
    toolkit: &Toolkit,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    let schema = parse_schema(&read_file(&args.schema)?).map_err(input)?;
    let row = parse_rows(&args.rows)?;
    let defaults = DateWindow::default();
    let oldest = resolve_date(
        args.oldest.as_deref(),
        "oldest",
        toolkit,
        "validate.oldest",
        defaults.oldest,
    )?;
    let newest = resolve_date(
        args.newest.as_deref(),
        "newest",
        toolkit,
        "validate.newest",
        defaults.newest,
    )?;
    let window = DateWindow::new(oldest, newest).map_err(usage)?;
    let outcome = validate_record(&schema, &row, &window).map_err(input)?;
    for e in &outcome.errors {
        emit(stdout, &format!("{e}\n"))?;
    }
    Ok(if outcome.is_valid() { 0 } else { 3 })
}

fn cmd_sanitize(
    args: &SanitizeArgs,
    toolkit: &Toolkit,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
) -> Result<i32, CliError> {
    let allowed = if let Some(spec) = &args.allow {
        AllowedChars::parse(spec).map_err(|e| usage(format!("--allow: {e}")))?
    } else if let Some(spec) = toolkit.lookup("sanitize.allow") {
        AllowedChars::parse(spec).map_err(|e| input(format!("config sanitize.allow: {e}")))?
    } else {
        AllowedChars::default()
    };
    let mut data = Vec::new();
    stdin
        .read_to_end(&mut data)
        .map_err(|e| input(format!("reading stdin: {e}")))?;
    // One trailing line ending passes through unsanitized so piped text
    // keeps its shape.
    let (body, suffix) = if data.ends_with(b"\r\n") {
        data.split_at(data.len() - 2)
    } else if data.ends_with(b"\n") {
        data.split_at(data.len() - 1)
    } else {
        (&data[..], &b""[..])
    };
    let mut out = sanitize_bytes(body, &allowed);
    out.extend_from_slice(suffix);
    stdout
        .write_all(&out)
        .map_err(|e| input(format!("writing output: {e}")))?;
    Ok(0)
}

fn cmd_check_schema(args: &CheckSchemaArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match parse_schema(&read_file(&args.file)?) {
        Ok(_) => Ok(0),
        Err(SchemaError::Invalid { violations }) => {
            for v in &violations {
                emit(stdout, &format!("{v}\n"))?;
            }
            Ok(3)
        }
        Err(e) => Err(input(e)),
    }
}

//! Minimal hierarchical logging engine.
//!
//! Messages carry a priority (DEBUG < INFO < WARN < ERROR < FATAL) and a
//! dot-separated category. Categories inherit their threshold from the
//! nearest ancestor that sets one; the root category `""` always has one.
//! Appenders are named outputs with their own threshold, a format pattern
//! built from `%p` `%c` `%m` `%n` plus literals, and a sink (memory buffer,
//! file, or standard output). A message is delivered to every appender
//! attached at its category or any ancestor, provided it clears both the
//! category's effective threshold and the appender's own.
//!
//! Configuration happens once, before dispatch; there are no timestamps, so
//! identical inputs always produce identical lines.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::config::ConfigNode;

#[derive(Debug, Error)]
pub enum LogError {
    #[error("invalid category name `{0}`")]
    InvalidCategory(String),
    #[error("unknown appender `{0}`")]
    UnknownAppender(String),
    #[error("unknown pattern token `%{0}`")]
    BadPattern(String),
    #[error("unknown priority `{0}`")]
    UnknownPriority(String),
    #[error("invalid logging configuration: {0}")]
    BadConfig(String),
    #[error("appender `{name}` sink failed: {source}")]
    SinkIo {
        name: String,
        source: std::io::Error,
    },
}

/// Severity levels in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Priority {
    Debug,
    Info,
    Warn,
    Error,
    Fatal,
}

impl Priority {
    pub const ALL: [Priority; 5] = [
        Priority::Debug,
        Priority::Info,
        Priority::Warn,
        Priority::Error,
        Priority::Fatal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Priority::Debug => "DEBUG",
            Priority::Info => "INFO",
            Priority::Warn => "WARN",
            Priority::Error => "ERROR",
            Priority::Fatal => "FATAL",
        }
    }

    /// Strict uppercase lookup: `"WARN"` parses, `"warn"` does not.
    pub fn from_name(name: &str) -> Result<Self, LogError> {
        match name {
            "DEBUG" => Ok(Priority::Debug),
            "INFO" => Ok(Priority::Info),
            "WARN" => Ok(Priority::Warn),
            "ERROR" => Ok(Priority::Error),
            "FATAL" => Ok(Priority::Fatal),
            other => Err(LogError::UnknownPriority(other.to_string())),
        }
    }
}

impl fmt::Display for Priority {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shared in-memory sink; clones append to the same buffer.
#[derive(Debug, Clone, Default)]
pub struct MemoryBuffer(Arc<Mutex<Vec<String>>>);

impl MemoryBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&self, line: String) {
        self.0.lock().expect("buffer lock").push(line);
    }

    pub fn lines(&self) -> Vec<String> {
        self.0.lock().expect("buffer lock").clone()
    }
}

#[derive(Debug, Clone)]
pub enum Sink {
    Memory(MemoryBuffer),
    File(PathBuf),
    Stdout,
}

/// A named output with its own threshold and line format.
#[derive(Debug, Clone)]
pub struct Appender {
    pub name: String,
    pub threshold: Priority,
    pub format: String,
    pub sink: Sink,
}

impl Appender {
    /// Validates the format pattern up front so dispatch cannot hit a bad
    /// token later.
    pub fn new(
        name: impl Into<String>,
        threshold: Priority,
        format: impl Into<String>,
        sink: Sink,
    ) -> Result<Self, LogError> {
        let format = format.into();
        validate_pattern(&format)?;
        Ok(Appender {
            name: name.into(),
            threshold,
            format,
            sink,
        })
    }
}

/// Checks that `%` is always followed by one of `p c m n`.
pub fn validate_pattern(pattern: &str) -> Result<(), LogError> {
    let mut chars = pattern.chars();
    while let Some(c) = chars.next() {
        if c != '%' {
            continue;
        }
        match chars.next() {
            Some('p' | 'c' | 'm' | 'n') => {}
            Some(other) => return Err(LogError::BadPattern(other.to_string())),
            None => return Err(LogError::BadPattern(String::new())),
        }
    }
    Ok(())
}

/// Substitutes `%p` (priority name), `%c` (category), `%m` (message), and
/// `%n` (newline); literals are copied through.
pub fn format_message(
    pattern: &str,
    p: Priority,
    category: &str,
    message: &str,
) -> Result<String, LogError> {
    let mut out = String::with_capacity(pattern.len() + message.len());
    let mut chars = pattern.chars();
    while let Some(c) = chars.next() {
        if c != '%' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('p') => out.push_str(p.name()),
            Some('c') => out.push_str(category),
            Some('m') => out.push_str(message),
            Some('n') => out.push('\n'),
            Some(other) => return Err(LogError::BadPattern(other.to_string())),
            None => return Err(LogError::BadPattern(String::new())),
        }
    }
    Ok(out)
}

/// True for `""` (the root) and for dot-separated non-empty segments of
/// ASCII alphanumerics and underscores.
pub fn is_valid_category(name: &str) -> bool {
    if name.is_empty() {
        return true;
    }
    name.split('.').all(|seg| {
        !seg.is_empty()
            && seg
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'_')
    })
}

/// Self-then-ancestors walk: `a.b.c` yields `a.b.c`, `a.b`, `a`, `""`.
fn ancestors(category: &str) -> Vec<&str> {
    let mut out = vec![category];
    let mut rest = category;
    while let Some(idx) = rest.rfind('.') {
        rest = &rest[..idx];
        out.push(rest);
    }
    if !category.is_empty() {
        out.push("");
    }
    out
}

/// Thresholds and appender attachments per category. The root category `""`
/// always has an explicit threshold.
#[derive(Debug, Clone)]
pub struct CategoryTree {
    thresholds: BTreeMap<String, Priority>,
    attachments: BTreeMap<String, Vec<String>>,
}

impl CategoryTree {
    pub fn new(root_threshold: Priority) -> Self {
        let mut thresholds = BTreeMap::new();
        thresholds.insert(String::new(), root_threshold);
        CategoryTree {
            thresholds,
            attachments: BTreeMap::new(),
        }
    }

    pub fn set_threshold(&mut self, category: &str, p: Priority) -> Result<(), LogError> {
        if !is_valid_category(category) {
            return Err(LogError::InvalidCategory(category.to_string()));
        }
        self.thresholds.insert(category.to_string(), p);
        Ok(())
    }

    /// Attaches an appender by name. Name resolution happens at dispatch
    /// time against the appender list supplied there.
    pub fn attach_appender(&mut self, category: &str, appender: &str) -> Result<(), LogError> {
        if !is_valid_category(category) {
            return Err(LogError::InvalidCategory(category.to_string()));
        }
        self.attachments
            .entry(category.to_string())
            .or_default()
            .push(appender.to_string());
        Ok(())
    }

    /// Appender names attached anywhere in the tree.
    pub fn attached_names(&self) -> impl Iterator<Item = &str> {
        self.attachments.values().flatten().map(String::as_str)
    }

    /// The explicit threshold of the nearest ancestor (self included) that
    /// has one. The root's threshold guarantees a result.
    pub fn effective_threshold(&self, category: &str) -> Result<Priority, LogError> {
        if !is_valid_category(category) {
            return Err(LogError::InvalidCategory(category.to_string()));
        }
        for anc in ancestors(category) {
            if let Some(p) = self.thresholds.get(anc) {
                return Ok(*p);
            }
        }
        unreachable!("root category always has a threshold");
    }
}

/// Routes one message: empty when the priority is below the category's
/// effective threshold, otherwise one `(appender name, formatted line)` per
/// distinct appender attached on the path to the root whose own threshold is
/// cleared. An attached name with no matching appender is an error.
pub fn log_dispatch(
    tree: &CategoryTree,
    appenders: &[Appender],
    category: &str,
    p: Priority,
    message: &str,
) -> Result<Vec<(String, String)>, LogError> {
    let effective = tree.effective_threshold(category)?;
    if p < effective {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut delivered: Vec<&str> = Vec::new();
    for anc in ancestors(category) {
        let Some(names) = tree.attachments.get(anc) else {
            continue;
        };
        for name in names {
            let appender = appenders
                .iter()
                .find(|a| &a.name == name)
                .ok_or_else(|| LogError::UnknownAppender(name.clone()))?;
            if delivered.contains(&name.as_str()) {
                continue;
            }
            delivered.push(name);
            if appender.threshold <= p {
                out.push((
                    name.clone(),
                    format_message(&appender.format, p, category, message)?,
                ));
            }
        }
    }
    Ok(out)
}

/// A configured tree plus its appenders; dispatches and writes to sinks.
#[derive(Debug)]
pub struct Logger {
    tree: CategoryTree,
    appenders: Vec<Appender>,
}

impl Logger {
    /// Checks that appender names are unique and that every attachment
    /// resolves, so later dispatches cannot fail on lookup.
    pub fn new(tree: CategoryTree, appenders: Vec<Appender>) -> Result<Self, LogError> {
        for (i, a) in appenders.iter().enumerate() {
            if appenders[..i].iter().any(|b| b.name == a.name) {
                return Err(LogError::BadConfig(format!(
                    "duplicate appender name `{}`",
                    a.name
                )));
            }
        }
        for name in tree.attached_names() {
            if !appenders.iter().any(|a| a.name == name) {
                return Err(LogError::UnknownAppender(name.to_string()));
            }
        }
        Ok(Logger { tree, appenders })
    }

    pub fn appender(&self, name: &str) -> Option<&Appender> {
        self.appenders.iter().find(|a| a.name == name)
    }

    /// Dispatches and writes each formatted line to its appender's sink.
    /// Returns the number of deliveries.
    pub fn log(&self, category: &str, p: Priority, message: &str) -> Result<usize, LogError> {
        let entries = log_dispatch(&self.tree, &self.appenders, category, p, message)?;
        for (name, line) in &entries {
            let appender = self.appender(name).expect("validated at construction");
            match &appender.sink {
                Sink::Memory(buffer) => buffer.push(line.clone()),
                Sink::File(path) => {
                    let mut f = OpenOptions::new()
                        .create(true)
                        .append(true)
                        .open(path)
                        .map_err(|source| LogError::SinkIo {
                            name: name.clone(),
                            source,
                        })?;
                    f.write_all(line.as_bytes())
                        .map_err(|source| LogError::SinkIo {
                            name: name.clone(),
                            source,
                        })?;
                }
                Sink::Stdout => {
                    print!("{line}");
                }
            }
        }
        Ok(entries.len())
    }
}

/// Logging setup read from a `<logging>` configuration element:
///
/// ```text
/// <logging>
///   <appender name="console" threshold="DEBUG" format="%p [%c] %m%n" sink="stdout"/>
///   <appender name="audit" threshold="INFO" format="%p %m%n" sink="file:audit.log"/>
///   <category name="" threshold="DEBUG">
///     <appender-ref name="console"/>
///   </category>
///   <category name="gaw.db" threshold="WARN">
///     <appender-ref name="audit"/>
///   </category>
/// </logging>
/// ```
///
/// A category with no `name` attribute (or `name=""`) is the root; when no
/// category sets the root threshold it defaults to DEBUG. `sink` is
/// `stdout`, `memory`, or `file:PATH`.
#[derive(Debug)]
pub struct LogConfig {
    pub tree: CategoryTree,
    pub appenders: Vec<Appender>,
}

impl LogConfig {
    pub fn from_node(node: &ConfigNode) -> Result<Self, LogError> {
        if node.name != "logging" {
            return Err(LogError::BadConfig(format!(
                "expected a <logging> element, found <{}>",
                node.name
            )));
        }
        let mut appenders = Vec::new();
        for a in node.children_named("appender") {
            let attr = |key: &str| -> Result<&str, LogError> {
                a.attr(key)
                    .ok_or_else(|| LogError::BadConfig(format!("appender missing `{key}`")))
            };
            let name = attr("name")?;
            let threshold = Priority::from_name(attr("threshold")?)?;
            let format = attr("format")?;
            let sink = match attr("sink")? {
                "stdout" => Sink::Stdout,
                "memory" => Sink::Memory(MemoryBuffer::new()),
                other => match other.strip_prefix("file:") {
                    Some(path) if !path.is_empty() => Sink::File(PathBuf::from(path)),
                    _ => {
                        return Err(LogError::BadConfig(format!("unknown sink `{other}`")));
                    }
                },
            };
            appenders.push(Appender::new(name, threshold, format, sink)?);
        }

        let root_threshold = node
            .children_named("category")
            .find(|c| c.attr("name").unwrap_or("").is_empty())
            .and_then(|c| c.attr("threshold"))
            .map(Priority::from_name)
            .transpose()?
            .unwrap_or(Priority::Debug);
        let mut tree = CategoryTree::new(root_threshold);

        for c in node.children_named("category") {
            let category = c.attr("name").unwrap_or("");
            if let Some(t) = c.attr("threshold") {
                tree.set_threshold(category, Priority::from_name(t)?)?;
            }
            for r in c.children_named("appender-ref") {
                let name = r
                    .attr("name")
                    .ok_or_else(|| LogError::BadConfig("appender-ref missing `name`".into()))?;
                if !appenders.iter().any(|a| a.name == name) {
                    return Err(LogError::UnknownAppender(name.to_string()));
                }
                tree.attach_appender(category, name)?;
            }
        }
        Ok(LogConfig { tree, appenders })
    }

    pub fn into_logger(self) -> Result<Logger, LogError> {
        Logger::new(self.tree, self.appenders)
    }
}

//! Record validation and input sanitization.
//!
//! Validation walks a record against its schema: required fields must be
//! non-blank, dates must parse as `YYYY-MM-DD` inside a configured window,
//! and a US state code must be paired with the USA country code. Findings
//! are collected, never thrown, so a caller can show all of them at once.
//!
//! Sanitization is whitelist-based: every byte outside the allowed set is
//! replaced with `_`. The default set `-a-zA-Z0-9_.@` turns script tags and
//! quoted SQL fragments into harmless underscored text while leaving names
//! and email addresses alone. Multi-statement SQL smuggling is detected
//! separately by scanning for a `;` outside single-quoted literals.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::regions;
use crate::schema::{FieldKind, TableSchema};

/// The default allowed-character specification.
pub const DEFAULT_OK_CHARS: &str = "-a-zA-Z0-9_.@";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidateError {
    #[error("date window invalid: oldest {oldest} is after newest {newest}")]
    InvalidWindow {
        oldest: CalendarDate,
        newest: CalendarDate,
    },
    #[error("row key `{0}` is not a schema field")]
    UnknownField(String),
    #[error("allowed character set must be ASCII")]
    NonAsciiAllowedSet,
    #[error("invalid character range `{0}` in allowed set")]
    BadRange(String),
    #[error("allowed character set is empty")]
    EmptyAllowedSet,
}

/// A calendar date, strictly `YYYY-MM-DD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CalendarDate {
    pub year: u16,
    pub month: u8,
    pub day: u8,
}

impl CalendarDate {
    pub fn new(year: u16, month: u8, day: u8) -> Option<Self> {
        if year > 9999 || month == 0 || month > 12 || day == 0 || day > days_in(year, month) {
            return None;
        }
        Some(CalendarDate { year, month, day })
    }

    /// Parses exactly `YYYY-MM-DD`: ten characters, ASCII digits, real
    /// month/day ranges with leap years honored. Anything else is `None`.
    pub fn parse(s: &str) -> Option<Self> {
        let b = s.as_bytes();
        if b.len() != 10 || b[4] != b'-' || b[7] != b'-' {
            return None;
        }
        for (i, &byte) in b.iter().enumerate() {
            if i != 4 && i != 7 && !byte.is_ascii_digit() {
                return None;
            }
        }
        let num = |range: std::ops::Range<usize>| -> u16 {
            s[range].bytes().fold(0u16, |acc, d| acc * 10 + (d - b'0') as u16)
        };
        CalendarDate::new(num(0..4), num(5..7) as u8, num(8..10) as u8)
    }
}

impl fmt::Display for CalendarDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

fn is_leap(year: u16) -> bool {
    year.is_multiple_of(4) && (!year.is_multiple_of(100) || year.is_multiple_of(400))
}

fn days_in(year: u16, month: u8) -> u8 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap(year) => 29,
        2 => 28,
        _ => 0,
    }
}

/// Inclusive acceptance window for date fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DateWindow {
    pub oldest: CalendarDate,
    pub newest: CalendarDate,
}

impl DateWindow {
    pub fn new(oldest: CalendarDate, newest: CalendarDate) -> Result<Self, ValidateError> {
        if oldest > newest {
            return Err(ValidateError::InvalidWindow { oldest, newest });
        }
        Ok(DateWindow { oldest, newest })
    }

    pub fn contains(&self, d: CalendarDate) -> bool {
        self.oldest <= d && d <= self.newest
    }
}

impl Default for DateWindow {
    /// 1900-01-01 through 2100-12-31.
    fn default() -> Self {
        DateWindow {
            oldest: CalendarDate::new(1900, 1, 1).unwrap(),
            newest: CalendarDate::new(2100, 12, 31).unwrap(),
        }
    }
}

/// One finding: which field, and what is wrong with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    pub field: String,
    pub message: String,
}

impl ValidationError {
    fn new(field: &str, message: &str) -> Self {
        ValidationError {
            field: field.to_string(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

/// All findings for one record, in schema declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationOutcome {
    pub errors: Vec<ValidationError>,
}

impl ValidationOutcome {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

/// A byte whitelist built from a Perl-style character-class specification:
/// literal characters plus `lo-hi` ranges, ASCII only. A `-` with no left or
/// right neighbor is literal.
#[derive(Clone, PartialEq, Eq)]
pub struct AllowedChars {
    table: [bool; 128],
}

impl fmt::Debug for AllowedChars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set: String = (0u8..128)
            .filter(|&b| self.table[b as usize])
            .map(|b| b as char)
            .collect();
        f.debug_tuple("AllowedChars").field(&set).finish()
    }
}

impl AllowedChars {
    /// Parses a specification like `-a-zA-Z0-9_.@`.
    pub fn parse(spec: &str) -> Result<Self, ValidateError> {
        if !spec.is_ascii() {
            return Err(ValidateError::NonAsciiAllowedSet);
        }
        if spec.is_empty() {
            return Err(ValidateError::EmptyAllowedSet);
        }
        let b = spec.as_bytes();
        let mut table = [false; 128];
        let mut i = 0;
        while i < b.len() {
            if i + 2 < b.len() && b[i + 1] == b'-' {
                let (lo, hi) = (b[i], b[i + 2]);
                if lo > hi {
                    return Err(ValidateError::BadRange(
                        format!("{}-{}", lo as char, hi as char),
                    ));
                }
                for byte in lo..=hi {
                    table[byte as usize] = true;
                }
                i += 3;
            } else {
                table[b[i] as usize] = true;
                i += 1;
            }
        }
        Ok(AllowedChars { table })
    }

    pub fn contains(&self, byte: u8) -> bool {
        byte < 128 && self.table[byte as usize]
    }
}

impl Default for AllowedChars {
    fn default() -> Self {
        AllowedChars::parse(DEFAULT_OK_CHARS).expect("default set parses")
    }
}

/// Replaces every byte outside the allowed set with `_`. Length in bytes is
/// preserved; since the set is ASCII-only the output is pure ASCII.
pub fn sanitize_bytes(value: &[u8], allowed: &AllowedChars) -> Vec<u8> {
    value
        .iter()
        .map(|&b| if allowed.contains(b) { b } else { b'_' })
        .collect()
}

/// [`sanitize_bytes`] over text. The result is ASCII, so this is total.
pub fn sanitize_whitelist(value: &str, allowed: &AllowedChars) -> String {
    String::from_utf8(sanitize_bytes(value.as_bytes(), allowed))
        .expect("whitelist output is ASCII")
}

/// Position of the first `;` outside single-quoted literals, if any: the
/// signature of a second smuggled statement. A doubled `''` inside a quoted
/// literal is the escape for one quote and does not close the literal.
pub fn detect_multi_statement(sql: &str) -> Option<usize> {
    let b = sql.as_bytes();
    let mut in_quote = false;
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'\'' if in_quote && b.get(i + 1) == Some(&b'\'') => i += 1,
            b'\'' => in_quote = !in_quote,
            b';' if !in_quote => return Some(i),
            _ => {}
        }
        i += 1;
    }
    None
}

/// Required check: blank (empty or whitespace-only) values are findings.
pub fn validate_required(field: &str, value: &str) -> Option<ValidationError> {
    if value.trim().is_empty() {
        Some(ValidationError::new(field, "required"))
    } else {
        None
    }
}

/// Date check: must parse as `YYYY-MM-DD` and fall inside the window.
pub fn validate_date_window(
    field: &str,
    value: &str,
    window: &DateWindow,
) -> Option<ValidationError> {
    match CalendarDate::parse(value) {
        None => Some(ValidationError::new(field, "invalid date")),
        Some(d) if !window.contains(d) => Some(ValidationError::new(field, "date out of range")),
        Some(_) => None,
    }
}

/// Country/state pairing: a US state code requires country `USA` and vice
/// versa. The finding is attributed to the state side.
pub fn validate_country_state(country: &str, state: &str) -> Option<ValidationError> {
    let is_usa = country == "USA";
    let is_state = regions::is_us_state(state);
    if is_usa == is_state {
        None
    } else {
        Some(ValidationError::new("state", "country/state mismatch"))
    }
}

/// Validates one record against its schema with the default allowed set.
/// Fields are checked in declaration order; every row key must name a schema
/// field. Absent fields count as blank.
///
/// Checks per field: unacceptable characters (on non-blank values), the
/// required flag, and date parsing/window membership for date kinds. When
/// the schema has both a country-kind and a state-kind field, the pairing is
/// checked once, at the first state-kind field, using the first country-kind
/// field's value.
pub fn validate_record(
    schema: &TableSchema,
    row: &BTreeMap<String, String>,
    window: &DateWindow,
) -> Result<ValidationOutcome, ValidateError> {
    for key in row.keys() {
        if schema.field(key).is_none() {
            return Err(ValidateError::UnknownField(key.clone()));
        }
    }
    let allowed = AllowedChars::default();
    let country_value = schema
        .fields
        .iter()
        .find(|f| f.kind == FieldKind::Country)
        .map(|f| row.get(&f.name).map(String::as_str).unwrap_or(""));
    let mut pair_checked = false;

    let mut outcome = ValidationOutcome::default();
    for f in &schema.fields {
        let value = row.get(&f.name).map(String::as_str).unwrap_or("");
        if !value.trim().is_empty() && sanitize_whitelist(value, &allowed) != value {
            outcome
                .errors
                .push(ValidationError::new(&f.name, "contains unacceptable characters"));
        }
        if f.required {
            if let Some(e) = validate_required(&f.name, value) {
                outcome.errors.push(e);
            }
        }
        match f.kind {
            FieldKind::Date => {
                if !value.trim().is_empty() {
                    if let Some(e) = validate_date_window(&f.name, value, window) {
                        outcome.errors.push(e);
                    }
                }
            }
            FieldKind::State if !pair_checked => {
                if let Some(country) = country_value {
                    pair_checked = true;
                    if let Some(e) = validate_country_state(country, value) {
                        outcome
                            .errors
                            .push(ValidationError::new(&f.name, &e.message));
                    }
                }
            }
            _ => {}
        }
    }
    Ok(outcome)
}

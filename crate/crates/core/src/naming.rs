//! Identifier naming conventions.
//!
//! Database tables and columns use snake_case; generated code uses camelCase
//! variables, PascalCase class names, and get/set accessors. A column
//! `first_name` becomes the variable `firstName` with accessors
//! `getFirstName()` / `setFirstName()`.
//!
//! Conversions are pure byte-level ASCII transforms so the same input always
//! produces the same output regardless of locale.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NameError {
    /// Input was not a well-formed snake_case identifier.
    #[error("`{0}` is not a valid snake_case identifier")]
    InvalidSnake(String),
    /// Input was not a well-formed camelCase identifier.
    #[error("`{0}` is not a valid camelCase identifier")]
    InvalidCamel(String),
}

/// True when `s` is a well-formed snake_case identifier: starts with a
/// lowercase ASCII letter, continues with lowercase letters, digits, and
/// single underscores, and does not end with an underscore.
pub fn is_snake_identifier(s: &str) -> bool {
    let bytes = s.as_bytes();
    match bytes.first() {
        Some(b) if b.is_ascii_lowercase() => {}
        _ => return false,
    }
    let mut prev_underscore = false;
    for &b in &bytes[1..] {
        match b {
            b'_' => {
                if prev_underscore {
                    return false;
                }
                prev_underscore = true;
            }
            b if b.is_ascii_lowercase() || b.is_ascii_digit() => prev_underscore = false,
            _ => return false,
        }
    }
    !prev_underscore
}

/// True when `s` is a well-formed camelCase identifier: starts with a
/// lowercase ASCII letter and continues with ASCII letters and digits.
pub fn is_camel_identifier(s: &str) -> bool {
    let bytes = s.as_bytes();
    match bytes.first() {
        Some(b) if b.is_ascii_lowercase() => {}
        _ => return false,
    }
    bytes[1..].iter().all(|b| b.is_ascii_alphanumeric())
}

/// `first_name` to `firstName`: each underscore is dropped and the following
/// character is uppercased.
pub fn snake_to_camel(s: &str) -> Result<String, NameError> {
    if !is_snake_identifier(s) {
        return Err(NameError::InvalidSnake(s.to_string()));
    }
    let mut out = String::with_capacity(s.len());
    let mut upper_next = false;
    for b in s.bytes() {
        if b == b'_' {
            upper_next = true;
        } else if upper_next {
            out.push(b.to_ascii_uppercase() as char);
            upper_next = false;
        } else {
            out.push(b as char);
        }
    }
    Ok(out)
}

/// `first_name` to `FirstName`: camelCase with the first character uppercased.
pub fn snake_to_pascal(s: &str) -> Result<String, NameError> {
    let camel = snake_to_camel(s)?;
    let mut out = String::with_capacity(camel.len());
    let mut bytes = camel.bytes();
    if let Some(first) = bytes.next() {
        out.push(first.to_ascii_uppercase() as char);
    }
    for b in bytes {
        out.push(b as char);
    }
    Ok(out)
}

/// `firstName` to `first_name`: each uppercase character becomes an
/// underscore followed by its lowercase form.
pub fn camel_to_snake(s: &str) -> Result<String, NameError> {
    if !is_camel_identifier(s) {
        return Err(NameError::InvalidCamel(s.to_string()));
    }
    let mut out = String::with_capacity(s.len() + 4);
    for b in s.bytes() {
        if b.is_ascii_uppercase() {
            out.push('_');
            out.push(b.to_ascii_lowercase() as char);
        } else {
            out.push(b as char);
        }
    }
    Ok(out)
}

/// Getter and setter method names for a snake_case field:
/// `first_name` yields `("getFirstName", "setFirstName")`.
pub fn accessor_names(field: &str) -> Result<(String, String), NameError> {
    let pascal = snake_to_pascal(field)?;
    Ok((format!("get{pascal}"), format!("set{pascal}")))
}

/// Bean class name for a snake_case table: `table_a` yields `TableABean`.
pub fn bean_class_name(table: &str) -> Result<String, NameError> {
    Ok(format!("{}Bean", snake_to_pascal(table)?))
}

/// Manager class name for a snake_case table: `table_a` yields `TableAManager`.
pub fn manager_class_name(table: &str) -> Result<String, NameError> {
    Ok(format!("{}Manager", snake_to_pascal(table)?))
}

/// All derived spellings of one snake_case name, computed once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameForms {
    pub snake: String,
    pub camel: String,
    pub pascal: String,
    pub getter: String,
    pub setter: String,
}

impl NameForms {
    pub fn of(snake: &str) -> Result<Self, NameError> {
        let camel = snake_to_camel(snake)?;
        let pascal = snake_to_pascal(snake)?;
        let (getter, setter) = accessor_names(snake)?;
        Ok(NameForms {
            snake: snake.to_string(),
            camel,
            pascal,
            getter,
            setter,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn camel_drops_underscores_and_uppercases() {
        assert_eq!(snake_to_camel("first_name").unwrap(), "firstName");
        assert_eq!(snake_to_camel("field_aa1").unwrap(), "fieldAa1");
        assert_eq!(snake_to_camel("language_id").unwrap(), "languageId");
        assert_eq!(snake_to_camel("speak").unwrap(), "speak");
    }

    #[test]
    fn pascal_uppercases_first() {
        assert_eq!(snake_to_pascal("first_name").unwrap(), "FirstName");
        assert_eq!(snake_to_pascal("table_a").unwrap(), "TableA");
        assert_eq!(snake_to_pascal("x").unwrap(), "X");
    }

    #[test]
    fn snake_restores_underscores() {
        assert_eq!(camel_to_snake("firstName").unwrap(), "first_name");
        assert_eq!(camel_to_snake("fieldAa1").unwrap(), "field_aa1");
        assert_eq!(camel_to_snake("speak").unwrap(), "speak");
    }

    #[test]
    fn accessors_prefix_pascal_form() {
        let (get, set) = accessor_names("first_name").unwrap();
        assert_eq!(get, "getFirstName");
        assert_eq!(set, "setFirstName");
    }

    #[test]
    fn class_names_append_role_suffix() {
        assert_eq!(bean_class_name("table_a").unwrap(), "TableABean");
        assert_eq!(manager_class_name("table_a").unwrap(), "TableAManager");
        assert_eq!(bean_class_name("language").unwrap(), "LanguageBean");
    }

    #[test]
    fn snake_identifier_shape() {
        for ok in ["a", "ab", "a1", "a_b", "field_aa1", "a1_2b"] {
            assert!(is_snake_identifier(ok), "{ok} should be accepted");
        }
        for bad in [
            "", "_a", "a_", "a__b", "A", "aB", "1a", "a-b", "a b", "über",
        ] {
            assert!(!is_snake_identifier(bad), "{bad} should be rejected");
        }
    }

    #[test]
    fn invalid_inputs_error() {
        assert_eq!(
            snake_to_camel("_bad"),
            Err(NameError::InvalidSnake("_bad".to_string()))
        );
        assert_eq!(
            camel_to_snake("Bad"),
            Err(NameError::InvalidCamel("Bad".to_string()))
        );
        assert_eq!(
            camel_to_snake("has_underscore"),
            Err(NameError::InvalidCamel("has_underscore".to_string()))
        );
    }

    #[test]
    fn name_forms_agree_with_individual_conversions() {
        let f = NameForms::of("language_name").unwrap();
        assert_eq!(f.snake, "language_name");
        assert_eq!(f.camel, "languageName");
        assert_eq!(f.pascal, "LanguageName");
        assert_eq!(f.getter, "getLanguageName");
        assert_eq!(f.setter, "setLanguageName");
    }

    proptest! {
        // Canonical snake names (every segment starts with a letter) survive
        // the round trip through camelCase unchanged.
        #[test]
        fn snake_camel_round_trip(s in "[a-z][a-z0-9]{0,5}(_[a-z][a-z0-9]{0,4}){0,4}") {
            let camel = snake_to_camel(&s).unwrap();
            prop_assert!(is_camel_identifier(&camel));
            prop_assert_eq!(camel_to_snake(&camel).unwrap(), s);
        }

        #[test]
        fn camel_snake_round_trip(s in "[a-z][a-z0-9]{0,8}([A-Z][a-z0-9]{0,4}){0,4}") {
            let snake = camel_to_snake(&s).unwrap();
            prop_assert!(is_snake_identifier(&snake));
            prop_assert_eq!(snake_to_camel(&snake).unwrap(), s);
        }

        #[test]
        fn conversions_never_panic(s in "\\PC{0,24}") {
            let _ = snake_to_camel(&s);
            let _ = camel_to_snake(&s);
            let _ = is_snake_identifier(&s);
        }
    }
}

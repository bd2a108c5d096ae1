//! HTML form generation from a table schema.
//!
//! Each schema field becomes exactly one named control group, chosen by
//! field kind: booleans render as a radio pair or a checkbox per policy,
//! enums and region kinds as selects, long text as a textarea, everything
//! else as a text input. Control names are the camelCase field names, which
//! is what the generated servlet helper reads back.
//!
//! The emitted page is deliberately spare markup with no doctype, script,
//! or styling, so that it stays well formed under the toolkit's own markup
//! parser and diffs cleanly.

use thiserror::Error;

use crate::config::escape_text;
use crate::naming::NameForms;
use crate::regions;
use crate::schema::{FieldKind, FieldSpec, TableSchema};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("form action target must not be empty")]
    EmptyAction,
}

/// How boolean fields render.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BooleanWidget {
    /// Two radio buttons, Yes and No, sharing the control name.
    RadioPair,
    /// One checkbox, checked meaning true.
    Checkbox,
}

/// Page-level choices that are not derivable from the schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormPolicy {
    pub boolean_widget: BooleanWidget,
    /// POST target; never empty.
    pub action_target: String,
    /// Emit the empty `errors` placeholder element before the form.
    pub include_error_region: bool,
}

impl FormPolicy {
    pub fn new(action_target: impl Into<String>) -> Result<Self, FormError> {
        let action_target = action_target.into();
        if action_target.is_empty() {
            return Err(FormError::EmptyAction);
        }
        Ok(FormPolicy {
            boolean_widget: BooleanWidget::RadioPair,
            action_target,
            include_error_region: true,
        })
    }

    pub fn with_boolean_widget(mut self, w: BooleanWidget) -> Self {
        self.boolean_widget = w;
        self
    }

    pub fn without_error_region(mut self) -> Self {
        self.include_error_region = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectOption {
    pub value: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WidgetKind {
    TextInput,
    DateInput,
    Textarea,
    Select(Vec<SelectOption>),
    RadioPair,
    Checkbox,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Widget {
    pub kind: WidgetKind,
    /// camelCase form of the field name.
    pub control_name: String,
}

/// Chooses the widget for one field under a policy.
///
/// # Panics
///
/// Panics on field names the naming module rejects; build schemas through
/// the schema module's constructors to rule that out.
pub fn widget_for(f: &FieldSpec, p: &FormPolicy) -> Widget {
    let control_name = NameForms::of(&f.name)
        .expect("schema must hold valid identifiers; see validate_schema")
        .camel;
    let kind = match &f.kind {
        FieldKind::Text | FieldKind::Integer | FieldKind::UploadRef => WidgetKind::TextInput,
        FieldKind::Date => WidgetKind::DateInput,
        FieldKind::LongText => WidgetKind::Textarea,
        FieldKind::Boolean => match p.boolean_widget {
            BooleanWidget::RadioPair => WidgetKind::RadioPair,
            BooleanWidget::Checkbox => WidgetKind::Checkbox,
        },
        FieldKind::Enum(values) => WidgetKind::Select(
            values
                .iter()
                .map(|v| SelectOption {
                    value: v.clone(),
                    label: v.clone(),
                })
                .collect(),
        ),
        FieldKind::Country => WidgetKind::Select(
            regions::countries()
                .iter()
                .map(|e| SelectOption {
                    value: e.code.to_string(),
                    label: e.name.to_string(),
                })
                .collect(),
        ),
        // The full state table plus an escape entry for non-US addresses.
        FieldKind::State => {
            let mut options: Vec<SelectOption> = regions::us_states()
                .iter()
                .map(|e| SelectOption {
                    value: e.code.to_string(),
                    label: e.name.to_string(),
                })
                .collect();
            options.push(SelectOption {
                value: String::new(),
                label: "Other (non-US)".to_string(),
            });
            WidgetKind::Select(options)
        }
    };
    Widget { kind, control_name }
}

/// `first_name` to `First Name`: underscores become spaces, each word's
/// first character is uppercased.
fn label_text(snake: &str) -> String {
    snake
        .split('_')
        .map(|w| {
            let mut chars = w.chars();
            match chars.next() {
                Some(first) => first.to_ascii_uppercase().to_string() + chars.as_str(),
                None => String::new(),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_widget(w: &Widget, out: &mut String) {
    let name = &w.control_name;
    match &w.kind {
        WidgetKind::TextInput => {
            out.push_str(&format!("<input type=\"text\" name=\"{name}\" />"));
        }
        WidgetKind::DateInput => {
            out.push_str(&format!(
                "<input type=\"text\" name=\"{name}\" placeholder=\"YYYY-MM-DD\" />"
            ));
        }
        WidgetKind::Textarea => {
            out.push_str(&format!(
                "<textarea name=\"{name}\" rows=\"8\" cols=\"64\"></textarea>"
            ));
        }
        WidgetKind::Select(options) => {
            out.push_str(&format!("<select name=\"{name}\">\n"));
            for o in options {
                out.push_str(&format!(
                    "<option value=\"{}\">{}</option>\n",
                    escape_text(&o.value),
                    escape_text(&o.label)
                ));
            }
            out.push_str("</select>");
        }
        WidgetKind::RadioPair => {
            out.push_str(&format!(
                "<label><input type=\"radio\" name=\"{name}\" value=\"true\" /> Yes</label> \
                 <label><input type=\"radio\" name=\"{name}\" value=\"false\" /> No</label>"
            ));
        }
        WidgetKind::Checkbox => {
            out.push_str(&format!(
                "<input type=\"checkbox\" name=\"{name}\" value=\"true\" />"
            ));
        }
    }
}

/// Renders the whole page: title from the table name, optional `errors`
/// placeholder, one labeled paragraph per field in declaration order, and a
/// nameless submit control.
pub fn render_form(s: &TableSchema, p: &FormPolicy) -> String {
    let mut out = String::new();
    out.push_str("<html>\n<head><title>");
    out.push_str(&escape_text(&label_text(&s.table)));
    out.push_str("</title></head>\n<body>\n");
    if p.include_error_region {
        out.push_str("<div id=\"errors\"></div>\n");
    }
    out.push_str(&format!(
        "<form method=\"POST\" action=\"{}\">\n",
        escape_text(&p.action_target)
    ));
    for f in &s.fields {
        let w = widget_for(f, p);
        out.push_str(&format!("<p><label>{}</label> ", escape_text(&label_text(&f.name))));
        render_widget(&w, &mut out);
        out.push_str("</p>\n");
    }
    out.push_str("<p><input type=\"submit\" value=\"Save\" /></p>\n");
    out.push_str("</form>\n</body>\n</html>\n");
    out
}

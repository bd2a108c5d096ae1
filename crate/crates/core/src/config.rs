//! Minimal markup configuration parser.
//!
//! Reads the angle-bracket subset used by the toolkit's configuration files
//! and by the generated form pages: nested elements, double- or
//! single-quoted attributes, text content, and `<!-- -->` comments. The four
//! entities `&lt;` `&gt;` `&amp;` `&quot;` are decoded; doctypes, processing
//! instructions, CDATA, and namespaces are rejected outright.
//!
//! The parser is hand-rolled over bytes with line tracking; structural
//! characters are all ASCII, so multi-byte text passes through untouched.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: mismatched tag: expected </{expected}>, found </{found}>")]
    MismatchedTag {
        line: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: unterminated comment")]
    UnterminatedComment { line: usize },
    #[error("line {line}: unknown entity `&{entity};`")]
    UnknownEntity { line: usize, entity: String },
    #[error("line {line}: duplicate attribute `{name}`")]
    DuplicateAttribute { line: usize, name: String },
}

/// One element: name, attributes in document order, child elements in
/// document order, and the element's own text content (concatenated runs,
/// surrounding whitespace trimmed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigNode {
    pub name: String,
    pub attributes: Vec<(String, String)>,
    pub children: Vec<ConfigNode>,
    pub text: String,
}

impl ConfigNode {
    pub fn new(name: impl Into<String>) -> Self {
        ConfigNode {
            name: name.into(),
            attributes: Vec::new(),
            children: Vec::new(),
            text: String::new(),
        }
    }

    /// Value of the named attribute, if present.
    pub fn attr(&self, name: &str) -> Option<&str> {
        self.attributes
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_str())
    }

    /// First child element with the given name.
    pub fn child(&self, name: &str) -> Option<&ConfigNode> {
        self.children.iter().find(|c| c.name == name)
    }

    /// All child elements with the given name, in document order.
    pub fn children_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a ConfigNode> {
        self.children.iter().filter(move |c| c.name == name)
    }

    /// Dotted-path lookup rooted at this node. The first path segment must
    /// equal this node's name; each following segment selects the first
    /// matching child, except the final segment, which first tries an
    /// attribute of the reached node and then falls back to a child's text.
    /// A single-segment path yields this node's own text.
    pub fn lookup(&self, path: &str) -> Option<&str> {
        let mut segments = path.split('.');
        let root = segments.next()?;
        if root != self.name {
            return None;
        }
        let segments: Vec<&str> = segments.collect();
        let mut node = self;
        if segments.is_empty() {
            return Some(&self.text);
        }
        for seg in &segments[..segments.len() - 1] {
            node = node.child(seg)?;
        }
        let last = segments[segments.len() - 1];
        if let Some(v) = node.attr(last) {
            return Some(v);
        }
        node.child(last).map(|c| c.text.as_str())
    }

    /// Compact serialization: attributes in stored order, childless and
    /// textless elements self-closed, text escaped with the four entities.
    pub fn to_xml(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        out.push('<');
        out.push_str(&self.name);
        for (k, v) in &self.attributes {
            out.push(' ');
            out.push_str(k);
            out.push_str("=\"");
            out.push_str(&escape_text(v));
            out.push('"');
        }
        if self.text.is_empty() && self.children.is_empty() {
            out.push_str("/>");
            return;
        }
        out.push('>');
        out.push_str(&escape_text(&self.text));
        for c in &self.children {
            c.write(out);
        }
        out.push_str("</");
        out.push_str(&self.name);
        out.push('>');
    }
}

/// Escapes `& < > "` for embedding in markup text or attribute values.
pub fn escape_text(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

/// Parses one document: optional whitespace/comments, exactly one root
/// element, optional trailing whitespace/comments.
pub fn parse_config(source: &str) -> Result<ConfigNode, ConfigError> {
    let mut p = Parser {
        src: source,
        bytes: source.as_bytes(),
        pos: 0,
        line: 1,
    };
    p.skip_misc()?;
    if p.peek().is_none() {
        return Err(p.err("expected a root element"));
    }
    let root = p.parse_element()?;
    p.skip_misc()?;
    if p.peek().is_some() {
        return Err(p.err("content after the root element"));
    }
    Ok(root)
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    line: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> ConfigError {
        ConfigError::Syntax {
            line: self.line,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
        }
        Some(b)
    }

    fn starts_with(&self, s: &str) -> bool {
        self.src[self.pos..].starts_with(s)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.bump();
        }
    }

    /// Skips whitespace and comments between elements.
    fn skip_misc(&mut self) -> Result<(), ConfigError> {
        loop {
            self.skip_ws();
            if self.starts_with("<!--") {
                self.skip_comment()?;
            } else {
                return Ok(());
            }
        }
    }

    fn skip_comment(&mut self) -> Result<(), ConfigError> {
        let start_line = self.line;
        for _ in 0..4 {
            self.bump();
        }
        loop {
            if self.starts_with("-->") {
                for _ in 0..3 {
                    self.bump();
                }
                return Ok(());
            }
            if self.bump().is_none() {
                return Err(ConfigError::UnterminatedComment { line: start_line });
            }
        }
    }

    fn parse_name(&mut self) -> Result<String, ConfigError> {
        let start = self.pos;
        match self.peek() {
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => {
                self.bump();
            }
            Some(b':') => return Err(self.err("namespaces are not supported")),
            _ => return Err(self.err("expected a name")),
        }
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'_' || b == b'-' || b == b'.' {
                self.bump();
            } else if b == b':' {
                return Err(self.err("namespaces are not supported"));
            } else {
                break;
            }
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn expect(&mut self, b: u8) -> Result<(), ConfigError> {
        if self.peek() == Some(b) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", b as char)))
        }
    }

    /// Decodes one `&name;` entity; the caller has already seen the `&`.
    /// Entity names are ASCII alphanumeric, which also keeps every slice
    /// boundary on a character boundary.
    fn parse_entity(&mut self) -> Result<char, ConfigError> {
        let line = self.line;
        self.bump();
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b == b';' {
                let entity = &self.src[start..self.pos];
                self.bump();
                return match entity {
                    "lt" => Ok('<'),
                    "gt" => Ok('>'),
                    "amp" => Ok('&'),
                    "quot" => Ok('"'),
                    other => Err(ConfigError::UnknownEntity {
                        line,
                        entity: other.to_string(),
                    }),
                };
            }
            if !b.is_ascii_alphanumeric() || self.pos - start > 8 {
                break;
            }
            self.bump();
        }
        Err(ConfigError::UnknownEntity {
            line,
            entity: self.src[start..self.pos].to_string(),
        })
    }

    fn parse_quoted(&mut self) -> Result<String, ConfigError> {
        let quote = match self.peek() {
            Some(b @ (b'"' | b'\'')) => b,
            _ => return Err(self.err("expected a quoted attribute value")),
        };
        self.bump();
        let mut out = String::new();
        let mut run_start = self.pos;
        loop {
            match self.peek() {
                None => return Err(self.err("unterminated attribute value")),
                Some(b) if b == quote => {
                    out.push_str(&self.src[run_start..self.pos]);
                    self.bump();
                    return Ok(out);
                }
                Some(b'&') => {
                    out.push_str(&self.src[run_start..self.pos]);
                    out.push(self.parse_entity()?);
                    run_start = self.pos;
                }
                Some(b'<') => return Err(self.err("`<` inside an attribute value")),
                Some(_) => {
                    self.bump();
                }
            }
        }
    }

    fn parse_element(&mut self) -> Result<ConfigNode, ConfigError> {
        self.expect(b'<')?;
        let name = self.parse_name()?;
        let mut node = ConfigNode::new(name);

        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'/') => {
                    self.bump();
                    self.expect(b'>')?;
                    return Ok(node);
                }
                Some(b'>') => {
                    self.bump();
                    break;
                }
                Some(_) => {
                    let attr_line = self.line;
                    let key = self.parse_name()?;
                    self.skip_ws();
                    self.expect(b'=')?;
                    self.skip_ws();
                    let value = self.parse_quoted()?;
                    if node.attr(&key).is_some() {
                        return Err(ConfigError::DuplicateAttribute {
                            line: attr_line,
                            name: key,
                        });
                    }
                    node.attributes.push((key, value));
                }
                None => return Err(self.err(format!("unclosed element <{}>", node.name))),
            }
        }

        // Content: text runs, child elements, comments, then the close tag.
        let mut text = String::new();
        loop {
            match self.peek() {
                None => {
                    return Err(self.err(format!(
                        "unexpected end of input; <{}> is not closed",
                        node.name
                    )))
                }
                Some(b'<') => {
                    if self.starts_with("</") {
                        let line = self.line;
                        self.bump();
                        self.bump();
                        let close = self.parse_name()?;
                        self.skip_ws();
                        self.expect(b'>')?;
                        if close != node.name {
                            return Err(ConfigError::MismatchedTag {
                                line,
                                expected: node.name,
                                found: close,
                            });
                        }
                        node.text = text.trim().to_string();
                        return Ok(node);
                    } else if self.starts_with("<!--") {
                        self.skip_comment()?;
                    } else if self.starts_with("<!") {
                        return Err(self.err("doctypes and declarations are not supported"));
                    } else if self.starts_with("<?") {
                        return Err(self.err("processing instructions are not supported"));
                    } else {
                        node.children.push(self.parse_element()?);
                    }
                }
                Some(b'&') => text.push(self.parse_entity()?),
                Some(_) => {
                    let run_start = self.pos;
                    while let Some(b) = self.peek() {
                        if b == b'<' || b == b'&' {
                            break;
                        }
                        self.bump();
                    }
                    text.push_str(&self.src[run_start..self.pos]);
                }
            }
        }
    }
}

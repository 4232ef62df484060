//! The group-spec mini-language.
//!
//! ```text
//! cyclic:N          dihedral:N        q8               heisenberg:P
//! frobenius:P[:R]   semidirect:M:K:A  product:<spec>,<spec>   file:PATH
//! ```
//!
//! `product` nests (the left operand is parsed greedily, so
//! `product:product:cyclic:2,cyclic:2,cyclic:3` groups as `(Z2×Z2)×Z3`).
//! Inside a `product`, a `file:` path runs up to the next comma. Syntax
//! errors carry the offset they occurred at and render as a caret diagnostic.

use gengame_core::GroupSpec;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecParseError {
    pub text: String,
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for SpecParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid group spec")?;
        writeln!(f, "  {}", self.text)?;
        write!(f, "  {}^ {}", " ".repeat(self.pos), self.message)
    }
}

impl std::error::Error for SpecParseError {}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, pos: usize, message: impl Into<String>) -> SpecParseError {
        SpecParseError {
            text: self.text.to_string(),
            pos,
            message: message.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn eat_colon(&mut self, owner: &str) -> Result<(), SpecParseError> {
        if self.rest().starts_with(':') {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(self.pos, format!("expected ':' after {owner:?}")))
        }
    }

    fn read_number(&mut self, what: &str) -> Result<usize, SpecParseError> {
        let start = self.pos;
        let digits: &str = {
            let s = self.rest();
            let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
            &s[..end]
        };
        if digits.is_empty() {
            return Err(self.err(start, format!("expected {what} (a number)")));
        }
        self.pos += digits.len();
        digits
            .parse::<usize>()
            .map_err(|_| self.err(start, format!("{what} is too large")))
    }

    fn parse_spec(&mut self) -> Result<GroupSpec, SpecParseError> {
        let tag_start = self.pos;
        let tag: &str = {
            let s = self.rest();
            let end = s.find(|c: char| !c.is_ascii_alphanumeric()).unwrap_or(s.len());
            &s[..end]
        };
        self.pos += tag.len();
        match tag {
            "cyclic" => {
                self.eat_colon(tag)?;
                Ok(GroupSpec::Cyclic(self.read_number("an order")?))
            }
            "dihedral" => {
                self.eat_colon(tag)?;
                Ok(GroupSpec::Dihedral(self.read_number("an order")?))
            }
            "q8" => Ok(GroupSpec::Quaternion8),
            "heisenberg" => {
                self.eat_colon(tag)?;
                Ok(GroupSpec::Heisenberg(self.read_number("a prime")?))
            }
            "frobenius" => {
                self.eat_colon(tag)?;
                let p = self.read_number("a prime")?;
                let r = if self.rest().starts_with(':') {
                    self.pos += 1;
                    Some(self.read_number("a primitive root")?)
                } else {
                    None
                };
                Ok(GroupSpec::Frobenius { p, r })
            }
            "semidirect" => {
                self.eat_colon(tag)?;
                let m = self.read_number("the normal factor's order")?;
                self.eat_colon("semidirect:m")?;
                let k = self.read_number("the acting factor's order")?;
                self.eat_colon("semidirect:m:k")?;
                let alpha = self.read_number("the action multiplier")?;
                Ok(GroupSpec::Semidirect { m, k, alpha })
            }
            "product" => {
                self.eat_colon(tag)?;
                let left = self.parse_spec()?;
                if !self.rest().starts_with(',') {
                    return Err(self.err(self.pos, "expected ',' between the product's factors"));
                }
                self.pos += 1;
                let right = self.parse_spec()?;
                Ok(GroupSpec::Product(Box::new(left), Box::new(right)))
            }
            "file" => {
                self.eat_colon(tag)?;
                let s = self.rest();
                let end = s.find(',').unwrap_or(s.len());
                if end == 0 {
                    return Err(self.err(self.pos, "expected a file path"));
                }
                let path = &s[..end];
                self.pos += end;
                Ok(GroupSpec::Table(path.to_string()))
            }
            "" => Err(self.err(tag_start, "expected a group spec")),
            other => Err(self.err(
                tag_start,
                format!(
                    "unknown group kind {other:?} (expected cyclic, dihedral, q8, heisenberg, \
                     frobenius, semidirect, product, or file)"
                ),
            )),
        }
    }
}

/// Parse one group spec. The whole string must be consumed.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecParseError> {
    let mut p = Parser { text, pos: 0 };
    while p.rest().starts_with(char::is_whitespace) {
        p.pos += p.rest().chars().next().unwrap().len_utf8();
    }
    let spec = p.parse_spec()?;
    let tail_start = p.pos;
    if !p.rest().chars().all(char::is_whitespace) {
        return Err(p.err(tail_start, "unexpected trailing characters"));
    }
    Ok(spec)
}

/// A heads-up for specs that build fine but sit outside the family the
/// Frobenius-specific reporting is tuned for. Printed to stderr only, so
/// stdout stays deterministic.
pub fn family_note(spec: &GroupSpec) -> Option<String> {
    match spec {
        GroupSpec::Frobenius { p, .. } if *p < 5 => Some(format!(
            "note: frobenius:{p} is outside the usual family (p >= 5); proceeding anyway"
        )),
        GroupSpec::Product(a, b) => family_note(a).or_else(|| family_note(b)),
        _ => None,
    }
}

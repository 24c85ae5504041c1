//! The group-spec mini-language and the signature literal.
//!
//! spec      := atom { "x" atom }
//! atom      := "C" int [ ":" "C" int "(" int ")" ]
//!            | "D" int
//!            | "PSL2(" q ")" | "SL2(" q ")" | "GL2(" q ")"
//! q         := int [ "^" int ]
//! signature := "(" int ";" [ int { "," int } ] ")"
//!
//! Whitespace is ignored everywhere; errors carry the byte position in
//! the original text. Products whose atoms are all cyclic parse to the
//! abelian variant, so `unparse(parse(s))` is the canonical form.

use std::fmt;

use exatlas_core::fq::MatrixKind;
use exatlas_core::fuchsian::Signature;
use exatlas_core::group::GroupSpec;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

struct Scanner<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    /// Literal keyword match, case-sensitive, no internal whitespace.
    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(d) = self.text.get(self.pos).filter(|b| b.is_ascii_digit()) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as u64))
                .ok_or(ParseError {
                    pos: start,
                    msg: "integer too large".to_string(),
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            self.err("expected an integer")
        } else {
            Ok(value)
        }
    }

    /// q := int [ "^" int ], evaluated; primality is the builder's job.
    fn prime_power(&mut self) -> Result<u64, ParseError> {
        let base = self.int()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let exp = self.int()?;
            let exp = u32::try_from(exp).map_err(|_| ParseError {
                pos: at,
                msg: "exponent too large".to_string(),
            })?;
            base.checked_pow(exp).ok_or(ParseError {
                pos: at,
                msg: "power overflows".to_string(),
            })
        } else {
            Ok(base)
        }
    }

    fn matrix_atom(&mut self, kind: MatrixKind) -> Result<GroupSpec, ParseError> {
        self.expect(b'(')?;
        let q = self.prime_power()?;
        self.expect(b')')?;
        Ok(GroupSpec::Matrix { kind, q })
    }

    fn atom(&mut self) -> Result<GroupSpec, ParseError> {
        if self.eat_keyword("PSL2") {
            return self.matrix_atom(MatrixKind::Psl2);
        }
        if self.eat_keyword("SL2") {
            return self.matrix_atom(MatrixKind::Sl2);
        }
        if self.eat_keyword("GL2") {
            return self.matrix_atom(MatrixKind::Gl2);
        }
        match self.peek() {
            Some(b'C') => {
                self.pos += 1;
                let m = self.int()?;
                if self.peek() == Some(b':') {
                    self.pos += 1;
                    self.expect(b'C')?;
                    let n = self.int()?;
                    self.expect(b'(')?;
                    let k = self.int()?;
                    self.expect(b')')?;
                    Ok(GroupSpec::Semidirect { m, n, k })
                } else {
                    Ok(GroupSpec::Cyclic(m))
                }
            }
            Some(b'D') => {
                self.pos += 1;
                Ok(GroupSpec::Dihedral(self.int()?))
            }
            _ => self.err("expected 'C', 'D', 'PSL2', 'SL2', or 'GL2'"),
        }
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let mut s = Scanner::new(text);
    let mut atoms = vec![s.atom()?];
    while s.peek() == Some(b'x') {
        s.pos += 1;
        atoms.push(s.atom()?);
    }
    if s.peek().is_some() {
        return s.err("unexpected trailing input");
    }
    if atoms.len() == 1 {
        return Ok(atoms.pop().unwrap());
    }
    if atoms.iter().all(|a| matches!(a, GroupSpec::Cyclic(_))) {
        let factors = atoms
            .into_iter()
            .map(|a| match a {
                GroupSpec::Cyclic(n) => n,
                _ => unreachable!(),
            })
            .collect();
        return Ok(GroupSpec::Abelian(factors));
    }
    Ok(GroupSpec::Product(atoms))
}

/// Canonical form; `parse_group_spec(unparse(g))` reproduces `g` for
/// everything the grammar can express.
pub fn unparse(spec: &GroupSpec) -> String {
    spec.to_string()
}

pub fn parse_signature(text: &str) -> Result<Signature, ParseError> {
    let mut s = Scanner::new(text);
    s.expect(b'(')?;
    let h = s.int()?;
    s.expect(b';')?;
    let mut periods = Vec::new();
    if s.peek() != Some(b')') {
        periods.push(s.int()?);
        while s.peek() == Some(b',') {
            s.pos += 1;
            periods.push(s.int()?);
        }
    }
    s.expect(b')')?;
    if s.peek().is_some() {
        return s.err("unexpected trailing input");
    }
    let at = s.pos;
    Signature::new(h, periods).map_err(|e| ParseError {
        pos: at,
        msg: e.to_string(),
    })
}

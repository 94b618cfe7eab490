//! Line-oriented text format for rings, systems, elements, and maps.
//!
//! A session file holds one `ring` line followed by any number of `system`,
//! `element`, and `map` lines; `#` starts a comment and blank lines are
//! ignored. Every value fits on its line. Example:
//!
//! ```text
//! ring prime_field 2
//! system S n=2 k=1 F=[[1, 0]]
//! element x system=S L=[[1], [0]]
//! map phi source=S target=S terms=[([[1, 0], [0, 1]], [[1]])]
//! ```
//!
//! The serializer is canonical: parsing its output reproduces the session
//! byte for byte, which is what makes golden-file tests meaningful.

use num::BigRational;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{DualSystem, RingElement};
use crate::sandwich::SandwichMap;
use crate::scalar::{RingDescriptor, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct NamedSystem {
    pub name: String,
    pub system: DualSystem,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedElement {
    pub name: String,
    pub system: String,
    pub element: RingElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NamedMap {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: SandwichMap,
}

/// A fully resolved session: every name defined before use, every matrix
/// validated against its declared home.
#[derive(Clone, Debug, PartialEq)]
pub struct Session {
    pub descriptor: RingDescriptor,
    pub systems: Vec<NamedSystem>,
    pub elements: Vec<NamedElement>,
    pub maps: Vec<NamedMap>,
}

impl Session {
    pub fn new(descriptor: RingDescriptor) -> Session {
        Session {
            descriptor,
            systems: Vec::new(),
            elements: Vec::new(),
            maps: Vec::new(),
        }
    }

    pub fn system(&self, name: &str) -> Result<&DualSystem> {
        self.systems
            .iter()
            .find(|s| s.name == name)
            .map(|s| &s.system)
            .ok_or_else(|| Error::Reference(format!("unknown system '{}'", name)))
    }

    pub fn map(&self, name: &str) -> Result<&NamedMap> {
        self.maps
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Reference(format!("unknown map '{}'", name)))
    }

    pub fn element(&self, name: &str) -> Result<&NamedElement> {
        self.elements
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::Reference(format!("unknown element '{}'", name)))
    }

    fn defined(&self, name: &str) -> bool {
        self.systems.iter().any(|s| s.name == name)
            || self.elements.iter().any(|e| e.name == name)
            || self.maps.iter().any(|m| m.name == name)
    }

    /// Canonical text form; `parse_session` inverts this byte for byte.
    pub fn serialize(&self) -> String {
        let mut out = format!("ring {}\n", self.descriptor);
        for s in &self.systems {
            out.push_str(&format!(
                "system {} n={} k={} F={}\n",
                s.name,
                s.system.space_dim(),
                s.system.functional_dim(),
                s.system.evaluation()
            ));
        }
        for e in &self.elements {
            out.push_str(&format!(
                "element {} system={} L={}\n",
                e.name,
                e.system,
                e.element.coefficients()
            ));
        }
        for m in &self.maps {
            let terms: Vec<String> = m
                .map
                .terms()
                .iter()
                .map(|(a, b)| format!("({}, {})", a, b))
                .collect();
            out.push_str(&format!(
                "map {} source={} target={} terms=[{}]\n",
                m.name,
                m.source,
                m.target,
                terms.join(", ")
            ));
        }
        out
    }
}

pub fn parse_session(text: &str) -> Result<Session> {
    let mut session: Option<Session> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor::new(line_no, content);
        let keyword = cur.ident("directive")?;
        if keyword == "ring" {
            if session.is_some() {
                return Err(cur.fail("duplicate ring line"));
            }
            session = Some(Session::new(parse_ring(&mut cur)?));
            cur.finish()?;
            continue;
        }
        let s = session
            .as_mut()
            .ok_or_else(|| cur.fail("first directive must be 'ring'"))?;
        match keyword.as_str() {
            "system" => parse_system_line(s, &mut cur)?,
            "element" => parse_element_line(s, &mut cur)?,
            "map" => parse_map_line(s, &mut cur)?,
            other => return Err(cur.fail(&format!("unknown directive '{}'", other))),
        }
        cur.finish()?;
    }
    session.ok_or(Error::Parse {
        line: 1,
        col: 1,
        msg: "empty session: missing ring line".into(),
    })
}

/// Parses a matrix literal like `[[1, 0], [2, 1]]` on its own; used for
/// command-line matrix flags so the file and the flags share one grammar.
pub fn parse_matrix(d: RingDescriptor, text: &str) -> Result<Matrix> {
    let mut cur = Cursor::new(1, text);
    let m = cur.matrix(d)?;
    cur.finish()?;
    Ok(m)
}

fn parse_ring(cur: &mut Cursor) -> Result<RingDescriptor> {
    let kind = cur.ident("ring kind")?;
    match kind.as_str() {
        "rationals" => Ok(RingDescriptor::Rationals),
        "rational_quaternions" => Ok(RingDescriptor::RationalQuaternions),
        "prime_field" => {
            let p: u64 = cur
                .digits()?
                .parse()
                .map_err(|_| cur.fail("modulus out of range"))?;
            RingDescriptor::prime_field(p)
        }
        other => Err(cur.fail(&format!("unknown ring kind '{}'", other))),
    }
}

fn parse_system_line(s: &mut Session, cur: &mut Cursor) -> Result<()> {
    let name = cur.ident("system name")?;
    if s.defined(&name) {
        return Err(cur.fail(&format!("duplicate name '{}'", name)));
    }
    let n: usize = cur.keyed_digits("n")?;
    let k: usize = cur.keyed_digits("k")?;
    cur.key("F")?;
    let f = cur.matrix(s.descriptor)?;
    if f.rows() != k || f.cols() != n {
        return Err(cur.fail(&format!(
            "F must be {}x{}, got {}x{}",
            k,
            n,
            f.rows(),
            f.cols()
        )));
    }
    let system = DualSystem::new(f)?;
    s.systems.push(NamedSystem { name, system });
    Ok(())
}

fn parse_element_line(s: &mut Session, cur: &mut Cursor) -> Result<()> {
    let name = cur.ident("element name")?;
    if s.defined(&name) {
        return Err(cur.fail(&format!("duplicate name '{}'", name)));
    }
    cur.key("system")?;
    let system_name = cur.ident("system reference")?;
    cur.key("L")?;
    let lambda = cur.matrix(s.descriptor)?;
    let element = s.system(&system_name)?.element(lambda)?;
    s.elements.push(NamedElement {
        name,
        system: system_name,
        element,
    });
    Ok(())
}

fn parse_map_line(s: &mut Session, cur: &mut Cursor) -> Result<()> {
    let name = cur.ident("map name")?;
    if s.defined(&name) {
        return Err(cur.fail(&format!("duplicate name '{}'", name)));
    }
    cur.key("source")?;
    let source_name = cur.ident("system reference")?;
    cur.key("target")?;
    let target_name = cur.ident("system reference")?;
    cur.key("terms")?;
    let terms = cur.terms(s.descriptor)?;
    let source = s.system(&source_name)?.clone();
    let target = s.system(&target_name)?.clone();
    let map = SandwichMap::new(source, target, terms)?;
    s.maps.push(NamedMap {
        name,
        source: source_name,
        target: target_name,
        map,
    });
    Ok(())
}

/// Character cursor over a single line, tracking the column for diagnostics.
struct Cursor {
    line: usize,
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(line: usize, content: &str) -> Cursor {
        Cursor {
            line,
            chars: content.chars().collect(),
            pos: 0,
        }
    }

    fn fail(&self, msg: &str) -> Error {
        Error::Parse {
            line: self.line,
            col: self.pos + 1,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_spaces(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_spaces();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(&format!("expected '{}'", c)))
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_spaces();
        if self.pos < self.chars.len() {
            Err(self.fail("trailing input"))
        } else {
            Ok(())
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        self.skip_spaces();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail(&format!("expected {}", what)));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_spaces();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn key(&mut self, name: &str) -> Result<()> {
        let found = self.ident(&format!("key '{}'", name))?;
        if found != name {
            return Err(self.fail(&format!("expected key '{}', got '{}'", name, found)));
        }
        self.expect('=')
    }

    fn keyed_digits(&mut self, name: &str) -> Result<usize> {
        self.key(name)?;
        self.digits()?
            .parse()
            .map_err(|_| self.fail("value out of range"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        self.skip_spaces();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '/') {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse()
            .map_err(|_| self.fail("expected a rational number"))
    }

    fn scalar(&mut self, d: RingDescriptor) -> Result<Scalar> {
        self.skip_spaces();
        match d {
            RingDescriptor::Rationals => Ok(Scalar::from_rational(self.rational()?)),
            RingDescriptor::PrimeField(_) => {
                let negative = self.peek() == Some('-');
                if negative {
                    self.pos += 1;
                }
                let v: i64 = self
                    .digits()?
                    .parse()
                    .map_err(|_| self.fail("residue out of range"))?;
                Ok(Scalar::from_integer(d, if negative { -v } else { v }))
            }
            RingDescriptor::RationalQuaternions => {
                self.expect('(')?;
                let w = self.rational()?;
                self.expect(',')?;
                let x = self.rational()?;
                self.expect(',')?;
                let y = self.rational()?;
                self.expect(',')?;
                let z = self.rational()?;
                self.expect(')')?;
                Ok(Scalar::quaternion([w, x, y, z]))
            }
        }
    }

    fn matrix(&mut self, d: RingDescriptor) -> Result<Matrix> {
        self.expect('[')?;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = Vec::new();
            loop {
                row.push(self.scalar(d)?);
                self.skip_spaces();
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(']') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.fail("expected ',' or ']' in a matrix row")),
                }
            }
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(self.fail("matrix rows have unequal lengths"));
                }
            }
            rows.push(row);
            self.skip_spaces();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.fail("expected ',' or ']' after a matrix row")),
            }
        }
        let cols = rows[0].len();
        let entries: Vec<Scalar> = rows.into_iter().flatten().collect();
        Matrix::new(d, entries.len() / cols, cols, entries)
    }

    fn terms(&mut self, d: RingDescriptor) -> Result<Vec<(Matrix, Matrix)>> {
        self.expect('[')?;
        self.skip_spaces();
        let mut out = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            self.expect('(')?;
            let a = self.matrix(d)?;
            self.expect(',')?;
            let b = self.matrix(d)?;
            self.expect(')')?;
            out.push((a, b));
            self.skip_spaces();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.fail("expected ',' or ']' in the term list")),
            }
        }
        Ok(out)
    }
}

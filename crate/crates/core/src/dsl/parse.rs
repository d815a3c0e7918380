use std::fmt;

use super::{GroupExpr, PatName, RingExpr};

/// Syntax or literal-range error at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub offset: usize,
    /// Tokens that would have been accepted; empty for validation errors.
    pub expected: Vec<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

const CONSTRUCTORS: &[&str] = &["Z(", "GF(", "M(", "T(", "TE(", "PQ(", "FM(", "GR(", "MODJ(", "PAT(", "("];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn found(&self) -> String {
        match self.rest().chars().next() {
            None => "end of input".into(),
            Some(c) => format!("'{c}'"),
        }
    }

    fn fail<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| format!("\"{s}\"")).collect(),
            message: format!("unexpected {}", self.found()),
        })
    }

    fn invalid<T>(&self, offset: usize, message: impl Into<String>) -> PResult<T> {
        Err(ParseError {
            offset,
            expected: Vec::new(),
            message: message.into(),
        })
    }

    /// Consumes `tok` (whitespace allowed inside multi-char tokens only
    /// before the opening parenthesis).
    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        let save = self.pos;
        let (word, paren) = match tok.strip_suffix('(') {
            Some(w) if !w.is_empty() => (w, true),
            _ => (tok, false),
        };
        if !self.rest().starts_with(word) {
            return false;
        }
        self.pos += word.len();
        if paren {
            self.skip_ws();
            if !self.rest().starts_with('(') {
                self.pos = save;
                return false;
            }
            self.pos += 1;
        }
        true
    }

    fn expect(&mut self, tok: &str) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.skip_ws();
            self.fail(&[tok])
        }
    }

    fn nat(&mut self) -> PResult<(u64, usize)> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.fail(&["natural number"]);
        }
        self.pos += digits;
        match self.src[start..self.pos].parse() {
            Ok(n) => Ok((n, start)),
            Err(_) => self.invalid(start, "number too large"),
        }
    }

    fn small(&mut self, what: &str, min: u64) -> PResult<usize> {
        let (n, at) = self.nat()?;
        if n < min {
            return self.invalid(at, format!("{what} must be ≥ {min}"));
        }
        if n > u32::MAX as u64 {
            return self.invalid(at, format!("{what} too large"));
        }
        Ok(n as usize)
    }

    fn ring(&mut self) -> PResult<RingExpr> {
        let mut left = self.atom()?;
        while self.eat("x") {
            let right = self.atom()?;
            left = RingExpr::Product(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn atom(&mut self) -> PResult<RingExpr> {
        self.skip_ws();
        // longest keywords first so "TE(" is not read as "T(" + "E"
        let e = if self.eat("Z(") {
            let (n, at) = self.nat()?;
            if n < 2 {
                return self.invalid(at, "modulus must be ≥ 2");
            }
            RingExpr::Zmod(n)
        } else if self.eat("GF(") {
            let (p, _) = self.nat()?;
            self.expect(",")?;
            let (k, at) = self.nat()?;
            if !(1..=4).contains(&k) {
                return self.invalid(at, "field degree must be between 1 and 4");
            }
            RingExpr::Gf(p, k as u32)
        } else if self.eat("MODJ(") {
            RingExpr::ModJ(Box::new(self.ring()?))
        } else if self.eat("M(") {
            let k = self.small("matrix size", 1)?;
            self.expect(",")?;
            RingExpr::Matrix(k, Box::new(self.ring()?))
        } else if self.eat("TE(") {
            RingExpr::TrivialExt(Box::new(self.ring()?))
        } else if self.eat("T(") {
            let k = self.small("matrix size", 1)?;
            self.expect(",")?;
            RingExpr::Triangular(k, Box::new(self.ring()?))
        } else if self.eat("PQ(") {
            let base = self.ring()?;
            self.expect(",")?;
            let poly = self.poly()?;
            RingExpr::PolyQuot(Box::new(base), poly)
        } else if self.eat("FM(") {
            let n = self.small("formal matrix size", 2)?;
            self.expect(",")?;
            let (s, _) = self.nat()?;
            self.expect(",")?;
            RingExpr::Formal(n, s, Box::new(self.ring()?))
        } else if self.eat("GR(") {
            let base = self.ring()?;
            self.expect(",")?;
            RingExpr::GroupRing(Box::new(base), self.group()?)
        } else if self.eat("PAT(") {
            let name = self.patname()?;
            self.expect(",")?;
            RingExpr::Pattern(name, Box::new(self.ring()?))
        } else if self.eat("(") {
            let inner = self.ring()?;
            self.expect(")")?;
            return Ok(inner);
        } else {
            return self.fail(CONSTRUCTORS);
        };
        self.expect(")")?;
        Ok(e)
    }

    fn poly(&mut self) -> PResult<Vec<u64>> {
        self.expect("[")?;
        let mut coeffs = vec![self.nat()?.0];
        while self.eat(",") {
            coeffs.push(self.nat()?.0);
        }
        let at = self.pos;
        self.expect("]")?;
        if coeffs.len() < 2 {
            return self.invalid(at, "polynomial must have degree ≥ 1");
        }
        Ok(coeffs)
    }

    fn group(&mut self) -> PResult<GroupExpr> {
        let mut factors = vec![self.gatom()?];
        while self.eat("x") {
            factors.push(self.gatom()?);
        }
        Ok(GroupExpr(factors))
    }

    fn gatom(&mut self) -> PResult<usize> {
        self.expect("C(")?;
        let n = self.small("group order", 1)?;
        self.expect(")")?;
        Ok(n)
    }

    fn patname(&mut self) -> PResult<PatName> {
        self.skip_ws();
        let at = self.pos;
        let len = self.rest().bytes().take_while(u8::is_ascii_alphabetic).count();
        if len == 0 {
            return self.fail(&["pattern name"]);
        }
        let name = self.src[at..at + len].to_string();
        self.pos += len;
        self.expect("(")?;
        let mut params = vec![self.small("pattern parameter", 2)?];
        while self.eat(",") {
            params.push(self.small("pattern parameter", 2)?);
        }
        self.expect(")")?;
        let known = matches!(
            (name.as_str(), params.len()),
            ("S", 1) | ("S", 2) | ("Tb", 2) | ("U", 1)
        );
        if !known {
            return self.invalid(at, format!("unknown pattern {name} with {} parameter(s)", params.len()));
        }
        Ok(PatName { name, params })
    }
}

pub fn parse(text: &str) -> Result<RingExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.ring()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.fail(&["x", "end of input"]);
    }
    Ok(e)
}

pub fn parse_group(text: &str) -> Result<GroupExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let g = p.group()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.fail(&["x", "end of input"]);
    }
    Ok(g)
}

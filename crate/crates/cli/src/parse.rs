//! Expression syntax.
//!
//! ```text
//! rational := int | int '/' int
//! segment  := NAME ['\''] ':' '[' rational [',' rational] ']'
//! multiseg := '{' segment (',' segment)* '}' | '{}'
//! virtual  := term (('+' | '-') term)* | '0'
//! term     := [int '*'] multiseg
//! ```
//!
//! A primed name `rho'` denotes the inner-form line over `rho`; its bounds
//! are exponents of the `D`-cuspidals (block centers) and need `--d`.

use jlcalc::{q, s_invariant, Exponent, LineRegistry, Multisegment, Segment, Side, VirtualRep};

use crate::CliError;

pub struct Parser<'a> {
    reg: &'a LineRegistry,
    d: Option<u32>,
    text: &'a str,
    pos: usize,
}

type PResult<T> = Result<T, CliError>;

impl<'a> Parser<'a> {
    pub fn new(text: &'a str, reg: &'a LineRegistry, d: Option<u32>) -> Self {
        Self { reg, d, text, pos: 0 }
    }

    fn error(&self, msg: impl Into<String>) -> CliError {
        CliError::Parse(format!("{} (at offset {} of `{}`)", msg.into(), self.pos, self.text))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn finish(&mut self) -> PResult<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek_raw(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.error("expected an integer")
        })
    }

    fn rational(&mut self) -> PResult<Exponent> {
        let n = self.int()?;
        if self.eat('/') {
            let d = self.int()?;
            if d == 0 {
                return Err(self.error("zero denominator"));
            }
            return Ok(q(n, d));
        }
        Ok(q(n, 1))
    }

    fn name(&mut self) -> PResult<(String, bool)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += self.peek_raw().unwrap().len_utf8();
        }
        if start == self.pos {
            return Err(self.error("expected a line name"));
        }
        let name = self.text[start..self.pos].to_string();
        let primed = self.peek_raw() == Some('\'');
        if primed {
            self.pos += 1;
        }
        Ok((name, primed))
    }

    fn segment(&mut self) -> PResult<(Side, Segment)> {
        let (name, primed) = self.name()?;
        let line = self.reg.lookup(&name).map_err(|_| self.error(format!("unknown line `{name}`")))?;
        let (side, step) = if primed {
            let d = self.d.ok_or_else(|| self.error(format!("`{name}'` needs --d")))?;
            let p = self.reg.p(line).map_err(|e| self.error(e.to_string()))?;
            (Side::Inner { d }, s_invariant(p, d))
        } else {
            (Side::Split, 1)
        };
        self.expect(':')?;
        self.expect('[')?;
        let a = self.rational()?;
        let b = if self.eat(',') { self.rational()? } else { a };
        self.expect(']')?;
        let seg = Segment::from_bounds(line, a, b, step).map_err(|e| self.error(e.to_string()))?;
        Ok((side, seg))
    }

    /// A multisegment and its side (`None` for `{}`).
    pub fn multisegment(&mut self) -> PResult<(Option<Side>, Multisegment)> {
        self.expect('{')?;
        let mut side = None;
        let mut segs = Vec::new();
        if !self.eat('}') {
            loop {
                let (s, seg) = self.segment()?;
                if side.is_some_and(|x| x != s) {
                    return Err(self.error("segments of both sides in one multisegment"));
                }
                side = Some(s);
                segs.push(seg);
                if self.eat('}') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok((side, Multisegment::new(segs)))
    }

    fn term(&mut self) -> PResult<(i64, Option<Side>, Multisegment)> {
        let coeff = if self.peek() == Some('{') {
            1
        } else {
            let c = self.int()?;
            self.expect('*')?;
            c
        };
        let (side, m) = self.multisegment()?;
        Ok((coeff, side, m))
    }

    pub fn virtual_rep(&mut self, default_side: Side) -> PResult<VirtualRep> {
        if self.peek() == Some('0') && self.text[self.pos..].trim() == "0" {
            self.pos = self.text.len();
            return Ok(VirtualRep::zero(default_side));
        }
        let mut terms = vec![self.term()?];
        loop {
            let sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                break;
            };
            let (c, side, m) = self.term()?;
            terms.push((sign * c, side, m));
        }
        let mut side = None;
        for (_, s, _) in &terms {
            if let Some(s) = s {
                if side.is_some_and(|x| x != *s) {
                    return Err(self.error("terms of both sides in one sum"));
                }
                side = Some(*s);
            }
        }
        let side = side.unwrap_or(default_side);
        Ok(VirtualRep::from_terms(side, terms.into_iter().map(|(c, _, m)| (c, m))))
    }
}

pub fn parse_multisegment(
    text: &str,
    reg: &LineRegistry,
    d: Option<u32>,
) -> Result<(Option<Side>, Multisegment), CliError> {
    let mut p = Parser::new(text, reg, d);
    let out = p.multisegment()?;
    p.finish()?;
    Ok(out)
}

pub fn parse_virtual(text: &str, reg: &LineRegistry, d: Option<u32>) -> Result<VirtualRep, CliError> {
    let mut p = Parser::new(text, reg, d);
    let out = p.virtual_rep(Side::Split)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_rational(text: &str) -> Result<Exponent, CliError> {
    let reg = LineRegistry::new();
    let mut p = Parser::new(text, &reg, None);
    let out = p.rational()?;
    p.finish()?;
    Ok(out)
}

/// `key=value` pairs with positive integer values.
pub fn parse_params<'a>(
    args: &'a [String],
    keys: &[&str],
) -> Result<Vec<(&'a str, u32)>, CliError> {
    let mut out = Vec::new();
    for arg in args {
        let (k, v) = arg
            .split_once('=')
            .ok_or_else(|| CliError::Parse(format!("expected key=value, got `{arg}`")))?;
        if !keys.contains(&k) {
            return Err(CliError::Parse(format!("unknown parameter `{k}`; expected one of {keys:?}")));
        }
        let v: u32 = v
            .parse()
            .ok()
            .filter(|&v| v > 0)
            .ok_or_else(|| CliError::Parse(format!("`{arg}`: value must be a positive integer")))?;
        out.push((k, v));
    }
    Ok(out)
}

//! Textual formats for fields and elements.
//!
//! Fields: `Q` or `Q(muN)`. Elements: polynomials in `z` with rational
//! coefficients, e.g. `14+21*z`, `-4`, `1/2*z^3-z`. `z` stands for the
//! primitive m-th root of unity of the declared field.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;
use crate::cyclotomic::{CycElt, CycField};
use crate::error::{Error, Result};

pub fn parse_field(s: &str) -> Result<CycField> {
    let t = s.trim();
    if t == "Q" {
        return Ok(CycField::rationals());
    }
    let inner = t
        .strip_prefix("Q(mu")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidInput(format!("unrecognized field `{s}` (use Q or Q(muN))")))?;
    let m: u64 = inner
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad conductor in `{s}`")))?;
    if m == 0 {
        return Err(Error::InvalidInput("conductor must be positive".into()));
    }
    Ok(CycField::new(m))
}

pub fn format_field(field: &CycField) -> String {
    if field.is_rational() {
        "Q".to_string()
    } else {
        format!("Q(mu{})", field.conductor())
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { chars: s.chars().peekable() }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.next()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let mut digits = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            digits.push(self.chars.next().unwrap());
        }
        if digits.is_empty() {
            return Err(Error::InvalidInput("expected an integer".into()));
        }
        digits
            .parse()
            .map_err(|_| Error::InvalidInput("bad integer".into()))
    }

    /// term := [sign] (rational ['*' zpow] | zpow); zpow := 'z' ['^' int]
    fn term(&mut self, field: &CycField) -> Result<CycElt> {
        let mut sign = BigInt::one();
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                }
                Some('-') => {
                    self.bump();
                    sign = -sign;
                }
                _ => break,
            }
        }
        let mut coeff = Rat::one();
        let mut has_coeff = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.integer()?;
            let den = if self.peek() == Some('/') {
                self.bump();
                self.integer()?
            } else {
                BigInt::one()
            };
            if den.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            coeff = Rat::new(num, den);
            has_coeff = true;
        }
        let mut zexp: Option<i64> = None;
        let want_z = if has_coeff {
            if self.peek() == Some('*') {
                self.bump();
                true
            } else {
                matches!(self.peek(), Some('z'))
            }
        } else {
            true
        };
        if want_z {
            if self.peek() != Some('z') {
                if has_coeff {
                    return Err(Error::InvalidInput("expected z after *".into()));
                }
                return Err(Error::InvalidInput("expected a term".into()));
            }
            self.bump();
            let e = if self.peek() == Some('^') {
                self.bump();
                let v = self.integer()?;
                i64::try_from(v).map_err(|_| Error::InvalidInput("exponent too large".into()))?
            } else {
                1
            };
            zexp = Some(e);
        }
        let coeff = coeff * Rat::from(sign);
        let base = match zexp {
            Some(e) => {
                if field.is_rational() {
                    // z = 1 over Q
                    field.one()
                } else {
                    field.zeta_pow(e)
                }
            }
            None => field.one(),
        };
        Ok(base.scale(&coeff))
    }
}

/// Parse an element of the given field.
pub fn parse_elt(s: &str, field: &CycField) -> Result<CycElt> {
    let mut p = Parser::new(s.trim());
    if p.peek().is_none() {
        return Err(Error::InvalidInput("empty element".into()));
    }
    let mut acc = field.zero();
    loop {
        let t = p.term(field)?;
        acc = acc.add(&t);
        match p.peek() {
            None => break,
            Some('+') | Some('-') => continue,
            Some(c) => {
                return Err(Error::InvalidInput(format!("unexpected `{c}` in element")));
            }
        }
    }
    Ok(acc)
}

fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render an element in the `z`-polynomial syntax.
pub fn format_elt(e: &CycElt) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in e.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let body = match i {
            0 => format_rat(&mag),
            1 => {
                if mag.is_one() {
                    "z".to_string()
                } else {
                    format!("{}*z", format_rat(&mag))
                }
            }
            _ => {
                if mag.is_one() {
                    format!("z^{i}")
                } else {
                    format!("{}*z^{i}", format_rat(&mag))
                }
            }
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{body}") } else { body });
        } else {
            parts.push(if c.is_negative() { format!("-{body}") } else { format!("+{body}") });
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.concat()
    }
}

/// Parse a comma-separated list of four coefficients.
pub fn parse_coeffs(s: &str, field: &CycField) -> Result<[CycElt; 4]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "expected 4 comma-separated coefficients, got {}",
            parts.len()
        )));
    }
    let mut out = Vec::with_capacity(4);
    for p in parts {
        out.push(parse_elt(p, field)?);
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone()])
}

//! Text grammar for polynomials and the generator file format.
//!
//! A polynomial is a sum of terms joined by `+`/`-`; a term is
//! `[coeff*]var[^exp]{*var[^exp]}` or a bare coefficient. Whitespace is
//! ignored. A generator file starts with `ring <field>[<vars>]` followed by
//! one polynomial per non-empty line; `#` starts a comment.

use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        let chars = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Cursor {
            chars,
            pos: 0,
            line,
            src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        match self.chars.get(self.pos) {
            Some(&(byte, _)) => self.src[..byte].chars().count() + 1,
            None => self.src.chars().count() + 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> AlgebraError {
        AlgebraError::Parse {
            line: self.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }
}

/// Parses one polynomial; `line` is only used for error positions.
pub fn parse_polynomial_at<C: Field>(
    ring: &Arc<PolyRing>,
    src: &str,
    line: usize,
) -> Result<Polynomial<C>> {
    let mut cur = Cursor::new(src, line);
    if cur.peek().is_none() {
        return Err(cur.error("empty polynomial"));
    }
    let mut terms: Vec<(C, Monomial)> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let mut negative = false;
        match cur.peek() {
            Some('+') => cur.pos += 1,
            Some('-') => {
                negative = true;
                cur.pos += 1;
            }
            _ if first => {}
            Some(c) => return Err(cur.error(format!("expected `+` or `-`, found `{c}`"))),
            None => unreachable!(),
        }
        first = false;
        let (c, m) = parse_term::<C>(ring, &mut cur)?;
        terms.push((if negative { -c } else { c }, m));
    }
    Ok(Polynomial::from_terms_unchecked(ring, terms))
}

pub fn parse_polynomial<C: Field>(ring: &Arc<PolyRing>, src: &str) -> Result<Polynomial<C>> {
    parse_polynomial_at(ring, src, 1)
}

fn parse_term<C: Field>(ring: &Arc<PolyRing>, cur: &mut Cursor<'_>) -> Result<(C, Monomial)> {
    let mut coeff = C::one();
    let mut mono = Monomial::one(ring.nvars());
    loop {
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let mut lit = cur.take_while(|c| c.is_ascii_digit());
                if cur.peek() == Some('/') {
                    cur.pos += 1;
                    let den = cur.take_while(|c| c.is_ascii_digit());
                    if den.is_empty() {
                        return Err(cur.error("expected denominator"));
                    }
                    lit = format!("{lit}/{den}");
                }
                let v = C::parse_literal(&lit)
                    .ok_or_else(|| cur.error(format!("bad coefficient `{lit}`")))?;
                coeff *= &v;
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let col = cur.column();
                let name = cur.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                let idx = ring.index_of(&name).ok_or(AlgebraError::Parse {
                    line: cur.line,
                    column: col,
                    message: format!("unknown variable `{name}`"),
                })?;
                let mut e = 1u32;
                if cur.peek() == Some('^') {
                    cur.pos += 1;
                    let digits = cur.take_while(|c| c.is_ascii_digit());
                    e = digits.parse().map_err(|_| cur.error("expected exponent"))?;
                }
                let ex = &mut mono.exponents_mut()[idx];
                *ex = ex
                    .checked_add(e)
                    .ok_or_else(|| cur.error("exponent overflow"))?;
            }
            Some(c) => return Err(cur.error(format!("unexpected `{c}`"))),
            None => return Err(cur.error("unexpected end of input")),
        }
        match cur.peek() {
            Some('*') => cur.pos += 1,
            _ => return Ok((coeff, mono)),
        }
    }
}

/// Contents of a generator file.
#[derive(Clone, Debug)]
pub struct GeneratorFile<C: Field> {
    pub field: String,
    pub ring: Arc<PolyRing>,
    pub polys: Vec<Polynomial<C>>,
}

/// Parses the generator file format. The field token must be `Q` for
/// rational coefficients; other tokens are accepted and reported back
/// verbatim so callers can decide.
pub fn parse_generator_file<C: Field>(text: &str) -> Result<GeneratorFile<C>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| {
        let l = match l.find('#') {
            Some(k) => &l[..k],
            None => l,
        };
        (i + 1, l)
    });
    let (header_line, header) = loop {
        match lines.next() {
            None => {
                return Err(AlgebraError::Parse {
                    line: 1,
                    column: 1,
                    message: "missing `ring` header".into(),
                })
            }
            Some((_, l)) if l.trim().is_empty() => continue,
            Some((i, l)) => break (i, l),
        }
    };
    let (field, ring) = PolyRing::parse_header(header).map_err(|e| match e {
        AlgebraError::Parse {
            column, message, ..
        } => AlgebraError::Parse {
            line: header_line,
            column,
            message,
        },
        other => other,
    })?;
    let mut polys = Vec::new();
    for (i, l) in lines {
        if l.trim().is_empty() {
            continue;
        }
        polys.push(parse_polynomial_at(&ring, l, i)?);
    }
    Ok(GeneratorFile { field, ring, polys })
}

/// Renders the generator file format (LF line endings, trailing newline).
pub fn write_generator_file<C: Field>(
    field: &str,
    ring: &PolyRing,
    polys: &[Polynomial<C>],
) -> String {
    let mut out = ring.header(field);
    out.push('\n');
    for p in polys {
        out.push_str(&p.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Q};

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn canonical_printing() {
        let r = ring();
        let p: Polynomial<Q> = parse_polynomial(&r, " - y*x + 3/6*x^2 - 4 + z ").unwrap();
        assert_eq!(p.to_string(), "1/2*x^2-x*y+z-4");
        let z: Polynomial<Q> = parse_polynomial(&r, "x - x").unwrap();
        assert_eq!(z.to_string(), "0");
        assert!(z.is_zero());
    }

    #[test]
    fn prime_field_printing_uses_symmetric_residues() {
        let r = ring();
        let p: Polynomial<Fp<7>> = parse_polynomial(&r, "6*x+8").unwrap();
        assert_eq!(p.to_string(), "-x+1");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        let e = parse_polynomial::<Q>(&r, "x + w").unwrap_err();
        assert_eq!(
            e,
            AlgebraError::Parse {
                line: 1,
                column: 5,
                message: "unknown variable `w`".into()
            }
        );
        assert!(parse_polynomial::<Q>(&r, "x +").is_err());
        assert!(parse_polynomial::<Q>(&r, "x y").is_err());
        assert!(parse_polynomial::<Q>(&r, "").is_err());
        assert!(parse_polynomial::<Q>(&r, "x^").is_err());
    }

    #[test]
    fn generator_file() {
        let text = "# demo\nring Q[x,y]\nx^2-y\n\n  x*y # trailing\n";
        let f: GeneratorFile<Q> = parse_generator_file(text).unwrap();
        assert_eq!(f.field, "Q");
        assert_eq!(f.polys.len(), 2);
        assert_eq!(
            write_generator_file("Q", &f.ring, &f.polys),
            "ring Q[x,y]\nx^2-y\nx*y\n"
        );
        let e = parse_generator_file::<Q>("ring Q[x]\nx+\n").unwrap_err();
        assert!(matches!(e, AlgebraError::Parse { line: 2, .. }));
        assert!(parse_generator_file::<Q>("").is_err());
    }
}

//! Textual element syntax: `2*a*b - 1/3*c*d + v1`.
//!
//! ```text
//! element := "0" | sign? term (("+" | "-") term)*
//! term    := factor ("*" factor)*
//! factor  := integer ("/" integer)? | identifier
//! ```
//! Identifiers in a term must form a composable path; numeric factors
//! multiply into the coefficient.

use crate::algebra::{Element, PathAlgebra};
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::quiver::Path;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Star,
    Slash,
    Plus,
    Minus,
}

/// A syntax problem at a byte offset inside the parsed text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub offset: usize,
    pub message: String,
}

impl SyntaxError {
    fn new(offset: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            offset,
            message: message.into(),
        }
    }

    /// Converts to a located parse error; `column` is 1-based and points at
    /// the start of the parsed text.
    pub fn at(self, line: usize, column: usize) -> Error {
        Error::parse(line, column + self.offset, self.message)
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '*' => {
                out.push((pos, Tok::Star));
                i += 1
            }
            '/' => {
                out.push((pos, Tok::Slash));
                i += 1
            }
            '+' => {
                out.push((pos, Tok::Plus));
                i += 1
            }
            '-' => {
                out.push((pos, Tok::Minus));
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Num(s)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                out.push((pos, Tok::Ident(s)));
            }
            other => return Err(SyntaxError::new(pos, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    alg: &'a PathAlgebra,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn term(&mut self, sign: Scalar) -> Result<Option<(Path, Scalar)>, SyntaxError> {
        let start = self.offset();
        let field = self.alg.field();
        let mut coeff = sign;
        let mut path: Option<Path> = None;
        loop {
            let at = self.offset();
            match self.toks.get(self.pos).cloned() {
                Some((_, Tok::Num(n))) => {
                    self.pos += 1;
                    let mut text = n;
                    if self.peek() == Some(&Tok::Slash) {
                        self.pos += 1;
                        match self.toks.get(self.pos).cloned() {
                            Some((_, Tok::Num(d))) => {
                                self.pos += 1;
                                text = format!("{text}/{d}");
                            }
                            _ => return Err(SyntaxError::new(self.offset(), "expected a denominator")),
                        }
                    }
                    let c = field.parse_scalar(&text).map_err(|e| SyntaxError::new(at, e.to_string()))?;
                    coeff = &coeff * &c;
                }
                Some((_, Tok::Ident(name))) => {
                    self.pos += 1;
                    let piece = self
                        .alg
                        .quiver()
                        .path_from_names(&[name.as_str()])
                        .map_err(|_| SyntaxError::new(at, format!("undeclared identifier `{name}`")))?;
                    path = Some(match path {
                        None => piece,
                        Some(p) => p
                            .mul(&piece)
                            .ok_or_else(|| SyntaxError::new(at, format!("non-composable path at `{name}`")))?,
                    });
                }
                _ => return Err(SyntaxError::new(at, "expected a coefficient or an identifier")),
            }
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            } else {
                break;
            }
        }
        match path {
            Some(p) => Ok(Some((p, coeff))),
            None if coeff.is_zero() => Ok(None),
            None => Err(SyntaxError::new(start, "a nonzero scalar needs a path, write it as `c*v`")),
        }
    }

    fn element(&mut self) -> Result<Element, SyntaxError> {
        let field = self.alg.field();
        let mut terms = Vec::new();
        let mut first = true;
        while self.pos < self.toks.len() || first {
            let sign = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    field.one()
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    -field.one()
                }
                _ if first => field.one(),
                _ => return Err(SyntaxError::new(self.offset(), "expected `+` or `-`")),
            };
            first = false;
            if let Some(t) = self.term(sign)? {
                terms.push(t);
            }
        }
        Ok(self.alg.from_terms(terms).expect("parsed terms belong to the algebra"))
    }
}

/// Parses an element, reporting the byte offset of the first problem.
pub fn parse_element_located(alg: &PathAlgebra, text: &str) -> Result<Element, SyntaxError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(SyntaxError::new(0, "empty element"));
    }
    let mut p = Parser {
        alg,
        toks,
        pos: 0,
        end: text.len(),
    };
    p.element()
}

pub fn parse_element(alg: &PathAlgebra, text: &str) -> Result<Element> {
    parse_element_located(alg, text).map_err(|e| e.at(1, 1))
}

fn render_coeff_path(alg: &PathAlgebra, c: &Scalar, path: &Path) -> String {
    let p = path.render(alg.quiver());
    if c.is_one() {
        p
    } else {
        format!("{c}*{p}")
    }
}

/// Inverse of [`parse_element`]; terms appear largest first.
pub fn render_element(alg: &PathAlgebra, x: &Element) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, t) in x.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        let abs = if neg { -&t.coeff } else { t.coeff.clone() };
        let body = render_coeff_path(alg, &abs, &t.path);
        match (k, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body)
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body)
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body)
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Field;
    use crate::fixtures::{example_algebra, example_quiver, order_one, OrderChoice};

    #[test]
    fn round_trip() {
        let alg = example_algebra(OrderChoice::One);
        for text in ["a*b - c*d", "2*a*b - 1/3*c*d", "-v1", "c*d*e", "0", "a + d", "-5/7*b*e + 2*d*e"] {
            let x = parse_element(&alg, text).unwrap();
            assert_eq!(render_element(&alg, &x), text);
            assert_eq!(parse_element(&alg, &render_element(&alg, &x)).unwrap(), x);
        }
    }

    #[test]
    fn like_terms_merge() {
        let alg = example_algebra(OrderChoice::One);
        let x = parse_element(&alg, "a*b + 2*a*b - 3*a*b + c").unwrap();
        assert_eq!(render_element(&alg, &x), "c");
        let y = parse_element(&alg, "2*3*a - 1/2*2*a").unwrap();
        assert_eq!(render_element(&alg, &y), "5*a");
    }

    #[test]
    fn errors_are_located() {
        let alg = example_algebra(OrderChoice::One);
        let e = parse_element_located(&alg, "a*b + a*a").unwrap_err();
        assert_eq!(e.offset, 8);
        assert!(e.message.contains("non-composable"));
        let e = parse_element_located(&alg, "a*b + z").unwrap_err();
        assert_eq!(e.offset, 6);
        assert!(parse_element_located(&alg, "a +").is_err());
        assert!(parse_element_located(&alg, "3").is_err());
        assert!(parse_element_located(&alg, "a b").is_err());
        assert!(parse_element_located(&alg, "1/0*a").is_err());
        assert!(parse_element_located(&alg, "").is_err());
    }

    #[test]
    fn prime_field_residues() {
        let q = example_quiver();
        let order = order_one(&q);
        let alg = PathAlgebra::new(q, order, Field::prime(5).unwrap());
        let x = parse_element(&alg, "-a*b + 7*c*d").unwrap();
        assert_eq!(render_element(&alg, &x), "4*a*b + 2*c*d");
        let y = parse_element(&alg, "1/2*a").unwrap();
        assert_eq!(render_element(&alg, &y), "3*a");
    }
}

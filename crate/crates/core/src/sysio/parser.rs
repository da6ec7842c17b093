use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::algebra::{GaussianRational, LaurentPolynomial, PolySystem};

/// Largest absolute exponent accepted after `^`.
const MAX_POWER: i64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: String, found: String },
    MissingHeader,
    DuplicateVariable(String),
    ReservedName(String),
    UnknownVariable(String),
    DivisionByNonConstant,
    DivisionByZero,
    NegativePowerOfPolynomial,
    ExponentTooLarge,
    ZeroPolynomial,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Syntax { expected, found } => write!(f, "expected {expected}, found {found}"),
            Self::MissingHeader => write!(f, "missing `vars:` header"),
            Self::DuplicateVariable(v) => write!(f, "duplicate variable `{v}`"),
            Self::ReservedName(v) => write!(f, "`{v}` is reserved for the imaginary unit"),
            Self::UnknownVariable(v) => write!(f, "unknown variable `{v}`"),
            Self::DivisionByNonConstant => write!(f, "division by a non-constant expression"),
            Self::DivisionByZero => write!(f, "division by zero"),
            Self::NegativePowerOfPolynomial => {
                write!(f, "negative powers are only allowed for single terms")
            }
            Self::ExponentTooLarge => write!(f, "exponent exceeds {MAX_POWER} in absolute value"),
            Self::ZeroPolynomial => write!(f, "expression is the zero polynomial"),
        }
    }
}

/// A parse failure at a 1-based line and column. A column one past the end of
/// the line denotes the end of the line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

/// A parsed system file: the system and its comment lines (without `#`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemFile {
    pub system: PolySystem,
    pub comments: Vec<String>,
}

impl SystemFile {
    /// The text after `key:` in the first comment of that form.
    pub fn metadata(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let c = c.trim_start();
            c.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix(':'))
                .map(|v| v.trim())
        })
    }
}

pub fn parse_system(text: &str) -> Result<PolySystem, ParseError> {
    parse_system_file(text).map(|f| f.system)
}

pub fn parse_system_file(text: &str) -> Result<SystemFile, ParseError> {
    let mut vars: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut polys = Vec::new();
    let mut comments = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(c) = trimmed.strip_prefix('#') {
            comments.push(c.to_string());
            continue;
        }
        let chars: Vec<char> = raw.chars().collect();
        if vars.is_none() {
            let names = parse_header(&chars, line_no)?;
            for (i, (name, _)) in names.iter().enumerate() {
                index.insert(name.clone(), i);
            }
            vars = Some(names.into_iter().map(|(n, _)| n).collect());
            continue;
        }
        let nvars = vars.as_ref().unwrap().len();
        let tokens = tokenize(&chars, line_no)?;
        let mut p = Parser {
            tokens,
            pos: 0,
            line: line_no,
            end_col: chars.len() + 1,
            index: &index,
            nvars,
        };
        let value = p.expr()?;
        if p.pos < p.tokens.len() {
            let t = &p.tokens[p.pos];
            return Err(p.err_at(t.col, syntax("operator or end of line", &t.tok)));
        }
        if value.is_zero() {
            let col = chars.iter().position(|c| !c.is_whitespace()).unwrap_or(0) + 1;
            return Err(ParseError {
                line: line_no,
                col,
                kind: ParseErrorKind::ZeroPolynomial,
            });
        }
        polys.push(value);
    }
    let vars = vars.ok_or(ParseError {
        line: text.lines().count().max(1),
        col: 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let system = PolySystem::new(vars, polys).expect("validated while parsing");
    Ok(SystemFile { system, comments })
}

/// Parses a constant expression such as `1/2 - 3i`.
pub fn parse_constant(text: &str) -> Result<GaussianRational, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let index = HashMap::new();
    let mut p = Parser {
        tokens: tokenize(&chars, 1)?,
        pos: 0,
        line: 1,
        end_col: chars.len() + 1,
        index: &index,
        nvars: 0,
    };
    let value = p.expr()?;
    if p.pos < p.tokens.len() {
        let t = &p.tokens[p.pos];
        return Err(p.err_at(t.col, syntax("end of input", &t.tok)));
    }
    Ok(value.coeff(&[]).cloned().unwrap_or_else(|| GaussianRational::from_integer(0)))
}

fn syntax(expected: &str, found: &Tok) -> ParseErrorKind {
    ParseErrorKind::Syntax {
        expected: expected.to_string(),
        found: found.describe(),
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn parse_header(chars: &[char], line: usize) -> Result<Vec<(String, usize)>, ParseError> {
    let start = chars.iter().position(|c| !c.is_whitespace()).unwrap_or(0);
    let prefix: String = chars[start..].iter().take(5).collect();
    if prefix != "vars:" {
        return Err(ParseError {
            line,
            col: start + 1,
            kind: ParseErrorKind::MissingHeader,
        });
    }
    let mut names: Vec<(String, usize)> = Vec::new();
    let mut i = start + 5;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if !is_ident_start(c) {
            return Err(ParseError {
                line,
                col: i + 1,
                kind: ParseErrorKind::Syntax {
                    expected: "variable name".into(),
                    found: format!("`{c}`"),
                },
            });
        }
        let s = i;
        while i < chars.len() && is_ident_char(chars[i]) {
            i += 1;
        }
        let name: String = chars[s..i].iter().collect();
        if name == "i" {
            return Err(ParseError {
                line,
                col: s + 1,
                kind: ParseErrorKind::ReservedName(name),
            });
        }
        if names.iter().any(|(n, _)| *n == name) {
            return Err(ParseError {
                line,
                col: s + 1,
                kind: ParseErrorKind::DuplicateVariable(name),
            });
        }
        names.push((name, s + 1));
    }
    if names.is_empty() {
        return Err(ParseError {
            line,
            col: chars.len() + 1,
            kind: ParseErrorKind::Syntax {
                expected: "variable name".into(),
                found: "end of line".into(),
            },
        });
    }
    Ok(names)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number `{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    col: usize,
}

fn tokenize(chars: &[char], line: usize) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let tok = if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                return Err(ParseError {
                    line,
                    col: i + 1,
                    kind: ParseErrorKind::Syntax {
                        expected: "integer or rational literal".into(),
                        found: "decimal point".into(),
                    },
                });
            }
            let digits: String = chars[s..i].iter().collect();
            out.push(Spanned {
                tok: Tok::Num(digits.parse().unwrap()),
                col,
            });
            continue;
        } else if is_ident_start(c) {
            let s = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push(Spanned {
                tok: Tok::Ident(chars[s..i].iter().collect()),
                col,
            });
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                _ => {
                    return Err(ParseError {
                        line,
                        col,
                        kind: ParseErrorKind::Syntax {
                            expected: "number, variable, operator or parenthesis".into(),
                            found: format!("`{c}`"),
                        },
                    })
                }
            }
        };
        out.push(Spanned { tok, col });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Spanned>,
    pos: usize,
    line: usize,
    end_col: usize,
    index: &'a HashMap<String, usize>,
    nvars: usize,
}

impl Parser<'_> {
    fn err_at(&self, col: usize, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            col,
            kind,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|s| &s.tok)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map(|s| s.col).unwrap_or(self.end_col)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = self
            .tokens
            .get(self.pos)
            .map(|s| s.tok.describe())
            .unwrap_or_else(|| "end of line".into());
        self.err_at(
            self.col(),
            ParseErrorKind::Syntax {
                expected: expected.into(),
                found,
            },
        )
    }

    fn expr(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial, ParseError> {
        let (mut acc, mut literal) = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let (f, lit) = self.unary()?;
                    acc = &acc * &f;
                    literal = lit;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let col = self.col();
                    let (f, lit) = self.unary()?;
                    acc = self.divide(&acc, &f, col)?;
                    literal = lit;
                }
                // a numeric literal may be followed directly by a factor: `3x`, `2i`, `4(x+1)`
                Some(Tok::Ident(_)) | Some(Tok::LParen) if literal => {
                    let (f, lit) = self.power()?;
                    acc = &acc * &f;
                    literal = lit;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn divide(
        &self,
        a: &LaurentPolynomial,
        b: &LaurentPolynomial,
        col: usize,
    ) -> Result<LaurentPolynomial, ParseError> {
        if b.is_zero() {
            return Err(self.err_at(col, ParseErrorKind::DivisionByZero));
        }
        let zero = vec![0; self.nvars];
        match (b.len(), b.coeff(&zero)) {
            (1, Some(c)) => Ok(a.scale(&c.inv())),
            _ => Err(self.err_at(col, ParseErrorKind::DivisionByNonConstant)),
        }
    }

    /// Returns the value and whether it was a bare numeric literal.
    fn unary(&mut self) -> Result<(LaurentPolynomial, bool), ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let (v, _) = self.unary()?;
                Ok((-&v, false))
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                let (v, _) = self.unary()?;
                Ok((v, false))
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<(LaurentPolynomial, bool), ParseError> {
        let (base, literal) = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok((base, literal));
        }
        self.pos += 1;
        let col = self.col();
        let e = self.exponent()?;
        if e.abs() > MAX_POWER {
            return Err(self.err_at(col, ParseErrorKind::ExponentTooLarge));
        }
        if e >= 0 {
            return Ok((base.pow(e as u32), false));
        }
        if base.len() != 1 {
            return Err(self.err_at(col, ParseErrorKind::NegativePowerOfPolynomial));
        }
        let (exp, c) = base.terms().next().unwrap();
        let inv_exp: Vec<i64> = exp.iter().map(|x| x * e.abs()).map(|x| -x).collect();
        let coeff = c.pow(e);
        Ok((LaurentPolynomial::monomial(inv_exp, coeff), false))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.pos += 1;
        }
        let mut sign = 1i64;
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -1;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let col = self.col();
        let value = match self.peek() {
            Some(Tok::Num(n)) => {
                let v = n.to_i64().filter(|v| *v <= MAX_POWER);
                self.pos += 1;
                v.ok_or_else(|| self.err_at(col, ParseErrorKind::ExponentTooLarge))?
            }
            _ => return Err(self.unexpected("integer exponent")),
        };
        if paren {
            if self.peek() != Some(&Tok::RParen) {
                return Err(self.unexpected("`)`"));
            }
            self.pos += 1;
        }
        Ok(sign * value)
    }

    fn primary(&mut self) -> Result<(LaurentPolynomial, bool), ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = GaussianRational::from_rational(BigRational::from_integer(n));
                Ok((LaurentPolynomial::constant(self.nvars, c), true))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "i" {
                    return Ok((LaurentPolynomial::constant(self.nvars, GaussianRational::i()), false));
                }
                match self.index.get(&name) {
                    Some(&k) => Ok((LaurentPolynomial::variable(self.nvars, k), false)),
                    None => Err(self.err_at(col, ParseErrorKind::UnknownVariable(name))),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok((v, false))
            }
            _ => Err(self.unexpected("number, variable or `(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
        GaussianRational::new(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    #[test]
    fn example_one_supports() {
        let s = parse_system("vars: x1 x2\n(1 - x1^2)*x2 + 2\n(1 - x1)^2*x2 + 3").unwrap();
        let mut a = s.polys()[0].support();
        a.sort();
        assert_eq!(a, vec![vec![0, 0], vec![0, 1], vec![2, 1]]);
        let mut b = s.polys()[1].support();
        b.sort();
        assert_eq!(b, vec![vec![0, 0], vec![0, 1], vec![1, 1], vec![2, 1]]);
    }

    #[test]
    fn cancellation_is_an_error() {
        let e = parse_system("vars: x\nx - x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZeroPolynomial);
        assert_eq!(e.line, 2);
    }

    #[test]
    fn complex_literal_and_negative_power() {
        let s = parse_system("vars: x y\n(1/2 + 3i)*x*y^-2 + 1").unwrap();
        let f = &s.polys()[0];
        assert_eq!(f.coeff(&[1, -2]), Some(&gr((1, 2), (3, 1))));
        assert_eq!(f.coeff(&[0, 0]), Some(&GaussianRational::from_integer(1)));
        let t = parse_system("vars: x\n(2x)^(-2)").unwrap();
        assert_eq!(t.polys()[0].coeff(&[-2]), Some(&GaussianRational::from_ratio(1, 4)));
    }

    #[test]
    fn implicit_products_and_comments() {
        let s = parse_system("# header comment\nvars: x y\n3x*y - 2i # trailing\n\n4(x + 1)").unwrap();
        assert_eq!(s.len(), 2);
        let f = &s.polys()[0];
        assert_eq!(f.coeff(&[1, 1]), Some(&GaussianRational::from_integer(3)));
        assert_eq!(f.coeff(&[0, 0]), Some(&gr((0, 1), (-2, 1))));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_system("vars: x\nx + z").unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("z".into()));
        let e = parse_system("vars: x\nx +").unwrap_err();
        assert_eq!((e.line, e.col), (2, 4));
        let e = parse_system("vars: x\n1.5 x").unwrap_err();
        assert_eq!(e.col, 2);
        let e = parse_system("vars: x x").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateVariable("x".into()));
        let e = parse_system("vars: x i").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ReservedName("i".into()));
        let e = parse_system("vars: x y\n1/(x+y)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DivisionByNonConstant);
        let e = parse_system("vars: x y\n(x+y)^-1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativePowerOfPolynomial);
        let e = parse_system("x + 1").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingHeader);
    }

    #[test]
    fn metadata_lookup() {
        let f = parse_system_file("vars: x\n# provenance: {\"a\": 1}\nx + 1").unwrap();
        assert_eq!(f.metadata("provenance"), Some("{\"a\": 1}"));
        assert_eq!(f.metadata("missing"), None);
    }
}

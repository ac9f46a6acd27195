//! Problem files.
//!
//! ```text
//! # the worked instance
//! ring x y;
//! grading total;
//! gens: x^2 + y, x*y + 1;
//! cap: 16;
//! ```
//!
//! Statements end with `;`. `ring` must come before any expression.
//! Optional statements: `shifts: 0, 1;` (module of rank 2), `relations: ...;`
//! (work in the quotient by these), `candidate: ...;` (checked by `verify`),
//! and the options `cap`, `truncate`, `slack`. Elements of a module of rank
//! greater than one are written `[p1, p2, ...]`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::graded::{Degree, ShiftedFreeModule};
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: undeclared variable `{name}`")]
    UndeclaredVariable {
        line: usize,
        column: usize,
        name: String,
    },
}

fn syntax<T>(pos: Pos, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    })
}

/// The only grading in scope: total degree, every variable of degree one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Total,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FileOptions {
    pub cap: Option<usize>,
    pub truncate: Option<i32>,
    pub slack: Option<u32>,
}

/// A parsed problem. Elements are stored as one polynomial per basis vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub ring: PolyRing,
    pub grading: Grading,
    pub module: ShiftedFreeModule,
    pub gens: Vec<Vec<Polynomial>>,
    pub relations: Vec<Vec<Polynomial>>,
    pub candidate: Option<Vec<Vec<Polynomial>>>,
    pub options: FileOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(BigInt),
    Punct(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: Pos,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                chars.next();
            }
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_alphanumeric()) {
                s.push(c);
                chars.next();
                column += 1;
            }
            out.push(Token {
                tok: Tok::Ident(s),
                pos,
            });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                s.push(c);
                chars.next();
                column += 1;
            }
            let n = s.parse().expect("digits");
            out.push(Token {
                tok: Tok::Number(n),
                pos,
            });
        } else if "+-*^/()[],;:".contains(c) {
            chars.next();
            column += 1;
            out.push(Token {
                tok: Tok::Punct(c),
                pos,
            });
        } else {
            return syntax(pos, format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    end: Pos,
    ring: Option<PolyRing>,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        let tokens = tokenize(text)?;
        let lines = text.split('\n').collect::<Vec<_>>();
        let end = Pos {
            line: lines.len(),
            column: lines.last().map_or(0, |l| l.chars().count()) + 1,
        };
        Ok(Parser {
            tokens,
            at: 0,
            end,
            ring: None,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn pos(&self) -> Pos {
        self.tokens.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.describe();
            syntax(self.pos(), format!("expected `{c}`, found {found}"))
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Number(n)) => format!("`{n}`"),
            Some(Tok::Punct(c)) => format!("`{c}`"),
        }
    }

    fn ring(&self) -> &PolyRing {
        self.ring.as_ref().expect("ring declared")
    }

    fn integer(&mut self) -> Result<(BigInt, Pos), ParseError> {
        let pos = self.pos();
        let negative = self.eat('-');
        match self.next() {
            Some(Token {
                tok: Tok::Number(n),
                ..
            }) => Ok((if negative { -n } else { n }, pos)),
            _ => {
                self.at -= 1;
                syntax(
                    self.pos(),
                    format!("expected an integer, found {}", self.describe()),
                )
            }
        }
    }

    fn small<T: TryFrom<i64>>(&mut self, what: &str) -> Result<T, ParseError> {
        let (n, pos) = self.integer()?;
        match n.to_i64().and_then(|v| T::try_from(v).ok()) {
            Some(v) => Ok(v),
            None => syntax(pos, format!("{what} `{n}` is out of range")),
        }
    }

    fn expression(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(&Tok::Punct('/')) {
                let pos = self.pos();
                self.at += 1;
                let divisor = self.factor()?;
                let c = match divisor.terms().next() {
                    Some((m, c)) if divisor.len() == 1 && m.degree() == 0 => c.clone(),
                    None => return syntax(pos, "division by zero"),
                    _ => return syntax(pos, "can only divide by a nonzero constant"),
                };
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let exp: u32 = self.small("exponent")?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.pos();
        match self.next().map(|t| t.tok) {
            Some(Tok::Number(n)) => Ok(self.ring().constant(BigRational::from_integer(n))),
            Some(Tok::Ident(name)) => {
                self.ring()
                    .var(&name)
                    .ok_or(ParseError::UndeclaredVariable {
                        line: pos.line,
                        column: pos.column,
                        name,
                    })
            }
            Some(Tok::Punct('(')) => {
                let e = self.expression()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => {
                self.at -= 1;
                syntax(
                    pos,
                    format!("expected an expression, found {}", self.describe()),
                )
            }
        }
    }

    /// A single polynomial or a bracketed vector, with its position.
    fn element(&mut self) -> Result<(Vec<Polynomial>, Pos), ParseError> {
        let pos = self.pos();
        if self.eat('[') {
            let mut entries = vec![self.expression()?];
            while self.eat(',') {
                entries.push(self.expression()?);
            }
            self.expect(']')?;
            Ok((entries, pos))
        } else {
            Ok((vec![self.expression()?], pos))
        }
    }

    fn element_list(&mut self) -> Result<Vec<(Vec<Polynomial>, Pos)>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Punct(';')) {
            return Ok(out);
        }
        out.push(self.element()?);
        while self.eat(',') {
            out.push(self.element()?);
        }
        Ok(out)
    }
}

/// Parses one element (polynomial or vector) over an already known ring,
/// as used for `member` targets.
pub fn parse_element(ring: &PolyRing, text: &str) -> Result<Vec<Polynomial>, ParseError> {
    let mut parser = Parser::new(text)?;
    parser.ring = Some(ring.clone());
    let (e, _) = parser.element()?;
    if parser.peek().is_some() {
        let found = parser.describe();
        return syntax(
            parser.pos(),
            format!("unexpected {found} after the expression"),
        );
    }
    Ok(e)
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let mut parser = Parser::new(text)?;
    let mut grading = None;
    let mut shifts: Option<Vec<Degree>> = None;
    let mut gens = None;
    let mut relations = None;
    let mut candidate = None;
    let mut options = FileOptions::default();
    let mut seen = BTreeSet::new();
    while parser.peek().is_some() {
        let pos = parser.pos();
        let Some(Tok::Ident(key)) = parser.next().map(|t| t.tok) else {
            parser.at -= 1;
            let found = parser.describe();
            return syntax(pos, format!("expected a statement, found {found}"));
        };
        if !seen.insert(key.clone()) {
            return syntax(pos, format!("`{key}` given twice"));
        }
        if key == "ring" {
            let mut names: Vec<String> = Vec::new();
            while let Some(Tok::Ident(name)) = parser.peek().cloned() {
                if names.contains(&name) {
                    return syntax(parser.pos(), format!("variable `{name}` declared twice"));
                }
                names.push(name);
                parser.at += 1;
                parser.eat(',');
            }
            if names.is_empty() {
                return syntax(parser.pos(), "expected at least one variable name");
            }
            parser.expect(';')?;
            let ring = match PolyRing::new(names) {
                Ok(r) => r,
                Err(e) => return syntax(pos, e.to_string()),
            };
            parser.ring = Some(ring);
            continue;
        }
        if key == "grading" {
            match parser.next().map(|t| t.tok) {
                Some(Tok::Ident(g)) if g == "total" => grading = Some(Grading::Total),
                _ => return syntax(pos, "only `grading total;` is supported"),
            }
            parser.expect(';')?;
            continue;
        }
        parser.expect(':')?;
        match key.as_str() {
            "cap" => options.cap = Some(parser.small("cap")?),
            "truncate" => options.truncate = Some(parser.small("truncation degree")?),
            "slack" => options.slack = Some(parser.small("slack")?),
            "shifts" => {
                let mut list = vec![Degree::new(parser.small("shift")?)];
                while parser.eat(',') {
                    list.push(Degree::new(parser.small("shift")?));
                }
                shifts = Some(list);
            }
            "gens" | "relations" | "candidate" => {
                if parser.ring.is_none() {
                    return syntax(pos, "`ring` must be declared before any expression");
                }
                let list = parser.element_list()?;
                match key.as_str() {
                    "gens" => gens = Some(list),
                    "relations" => relations = Some(list),
                    _ => candidate = Some(list),
                }
            }
            _ => return syntax(pos, format!("unknown statement `{key}`")),
        }
        parser.expect(';')?;
    }

    let Some(ring) = parser.ring.take() else {
        return syntax(parser.end, "missing `ring` declaration");
    };
    let Some(gens) = gens else {
        return syntax(parser.end, "missing `gens` statement");
    };
    let rank = match &shifts {
        Some(s) => s.len(),
        None => gens
            .iter()
            .chain(relations.iter().flatten())
            .chain(candidate.iter().flatten())
            .map(|(e, _)| e.len())
            .next()
            .unwrap_or(1),
    };
    let module = ShiftedFreeModule::new(shifts.unwrap_or_else(|| vec![Degree::ZERO; rank]));
    let check = |list: Vec<(Vec<Polynomial>, Pos)>| -> Result<Vec<Vec<Polynomial>>, ParseError> {
        list.into_iter()
            .map(|(e, pos)| {
                if e.len() == rank {
                    Ok(e)
                } else {
                    syntax(
                        pos,
                        format!("vector of length {} in a module of rank {rank}", e.len()),
                    )
                }
            })
            .collect()
    };
    let gens = check(gens)?;
    let relations = check(relations.unwrap_or_default())?;
    let candidate = candidate.map(check).transpose()?;
    Ok(ProblemFile {
        ring,
        grading: grading.unwrap_or(Grading::Total),
        module,
        gens,
        relations,
        candidate,
        options,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    #[test]
    fn worked_instance() {
        let pf = parse_problem("ring x y;\ngens: x^2 + y, x*y + 1;").unwrap();
        assert_eq!(pf.gens.len(), 2);
        assert_eq!(pf.ring.names(), &["x".to_string(), "y".to_string()]);
        assert_eq!(pf.module, ShiftedFreeModule::ring());
        let x = pf.ring.var("x").unwrap();
        let y = pf.ring.var("y").unwrap();
        assert_eq!(pf.gens[0][0], &x.pow(2) + &y);
    }

    #[test]
    fn undeclared_variable() {
        let err = parse_problem("ring x y;\ngens: x^2 + z;").unwrap_err();
        assert_eq!(
            err,
            ParseError::UndeclaredVariable {
                line: 2,
                column: 13,
                name: "z".into()
            }
        );
    }

    #[test]
    fn rational_coefficient() {
        let pf = parse_problem("ring x;\ngens: 1/2*x;").unwrap();
        let x = pf.ring.var("x").unwrap();
        assert_eq!(pf.gens[0][0], x.scale(&rational(1, 2)));
    }

    #[test]
    fn printed_polynomials_parse_back() {
        let pf = parse_problem("ring x y z;\ngens: -3/4*x^2*y + 2*x*z - y^3/5 + 7;").unwrap();
        let p = &pf.gens[0][0];
        let printed = p.fmt_with(pf.ring.names());
        assert_eq!(parse_element(&pf.ring, &printed).unwrap(), vec![p.clone()]);
    }

    #[test]
    fn vectors_shifts_and_options() {
        let text = "# module example\nring x y;\nshifts: 0, -1;\ngens: [x, 1], [0, y^2];\ncap: 3; truncate: 6; slack: 2;\n";
        let pf = parse_problem(text).unwrap();
        assert_eq!(pf.module.shifts(), &[Degree::ZERO, Degree::new(-1)]);
        assert_eq!(pf.gens.len(), 2);
        assert_eq!(
            pf.options,
            FileOptions {
                cap: Some(3),
                truncate: Some(6),
                slack: Some(2)
            }
        );
    }

    #[test]
    fn rank_mismatch_is_positioned() {
        let err = parse_problem("ring x;\ngens: [x, 1], x;").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::Syntax {
                    line: 2,
                    column: 15,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn syntax_errors() {
        for (text, line, column) in [
            ("ring x;\ngens: x +;", 2, 10),
            ("gens: x;", 1, 1),
            ("ring x;\ngens: x^y;", 2, 9),
            ("ring x;\ngens: x / x;", 2, 9),
            ("ring x;\ngens: x $ 1;", 2, 9),
            ("ring x;\ngrading weird;", 2, 1),
            ("ring x;", 1, 8),
        ] {
            match parse_problem(text) {
                Err(ParseError::Syntax {
                    line: l, column: c, ..
                }) => {
                    assert_eq!((l, c), (line, column), "{text:?}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn unary_minus_binds_looser_than_power() {
        let pf = parse_problem("ring x;\ngens: -x^2, x*-x;").unwrap();
        let x = pf.ring.var("x").unwrap();
        assert_eq!(pf.gens[0][0], -&x.pow(2));
        assert_eq!(pf.gens[1][0], -&x.pow(2));
    }
}

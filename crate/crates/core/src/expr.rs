//! Polynomial expression syntax.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" INTEGER)?
//! atom   := INTEGER ("/" INTEGER)? | VARIABLE | "(" expr ")"
//! ```
//!
//! Variables are the names of one [`VarSystem`] (`P1..P3`, `Y1..Y4`,
//! `X1..X4`, `U1..U3`, `alpha/beta/gamma`); an expression may not mix
//! systems. `/` only forms rational literals. Exponents are nonnegative
//! integer literals.

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::algebra::{Polynomial, VarSystem};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variables from {0} and {1} in one expression")]
    MixedSystems(VarSystem, VarSystem),
    #[error("negative power")]
    NegativePower,
    #[error("exponent {0} exceeds {MAX_EXPONENT}")]
    ExponentTooLarge(String),
    #[error("division by zero in rational literal")]
    ZeroDenominator,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpressionAst {
    Constant(BigRational),
    Variable { system: VarSystem, index: usize },
    Sum(Box<ExpressionAst>, Box<ExpressionAst>),
    Difference(Box<ExpressionAst>, Box<ExpressionAst>),
    Product(Box<ExpressionAst>, Box<ExpressionAst>),
    Power(Box<ExpressionAst>, u32),
    Negation(Box<ExpressionAst>),
}

impl ExpressionAst {
    /// The variable system used, if any variable occurs.
    pub fn system(&self) -> Option<VarSystem> {
        match self {
            ExpressionAst::Constant(_) => None,
            ExpressionAst::Variable { system, .. } => Some(*system),
            ExpressionAst::Sum(a, b)
            | ExpressionAst::Difference(a, b)
            | ExpressionAst::Product(a, b) => a.system().or_else(|| b.system()),
            ExpressionAst::Power(a, _) | ExpressionAst::Negation(a) => a.system(),
        }
    }

    /// Expand into a polynomial. Constant-only expressions land in
    /// `default_system`.
    pub fn lower(&self, default_system: VarSystem) -> Polynomial {
        let system = self.system().unwrap_or(default_system);
        self.lower_in(system)
    }

    fn lower_in(&self, system: VarSystem) -> Polynomial {
        // Parsing guarantees a single system, so the ring operations below
        // cannot fail.
        let both = |a: &ExpressionAst, b: &ExpressionAst| (a.lower_in(system), b.lower_in(system));
        match self {
            ExpressionAst::Constant(c) => Polynomial::constant(system, c.clone()),
            ExpressionAst::Variable { index, .. } => Polynomial::var(system, *index),
            ExpressionAst::Sum(a, b) => {
                let (a, b) = both(a, b);
                a.add(&b).expect("single system")
            }
            ExpressionAst::Difference(a, b) => {
                let (a, b) = both(a, b);
                a.sub(&b).expect("single system")
            }
            ExpressionAst::Product(a, b) => {
                let (a, b) = both(a, b);
                a.mul(&b).expect("single system")
            }
            ExpressionAst::Power(a, k) => a.lower_in(system).pow(*k),
            ExpressionAst::Negation(a) => a.lower_in(system).neg(),
        }
    }
}

/// Parse and lower in one step.
pub fn parse_polynomial(text: &str, default_system: VarSystem) -> Result<Polynomial, ParseError> {
    Ok(parse_expression(text)?.lower(default_system))
}

pub fn parse_expression(text: &str) -> Result<ExpressionAst, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        system: None,
    };
    let ast = parser.expr()?;
    let tok = parser.peek();
    if tok.kind != Tok::End {
        return Err(tok.error(ParseErrorKind::Syntax(format!(
            "unexpected {}",
            tok.kind.describe()
        ))));
    }
    Ok(ast)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("name `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: Tok,
    line: usize,
    column: usize,
}

impl Token {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            kind,
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let kind = if c.is_whitespace() {
            bump(&mut chars);
            continue;
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars).unwrap());
            }
            Tok::Int(s)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_')
            {
                s.push(bump(&mut chars).unwrap());
            }
            Tok::Ident(s)
        } else {
            bump(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ParseError {
                        line: start_line,
                        column: start_col,
                        kind: ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                    })
                }
            }
        };
        tokens.push(Token {
            kind,
            line: start_line,
            column: start_col,
        });
    }
    tokens.push(Token {
        kind: Tok::End,
        line,
        column,
    });
    Ok(tokens)
}

fn lookup_variable(name: &str) -> Option<(VarSystem, usize)> {
    [
        VarSystem::Pi3,
        VarSystem::Y4,
        VarSystem::X4,
        VarSystem::Axis3,
        VarSystem::Chart3,
    ]
    .into_iter()
    .find_map(|s| {
        s.var_names()
            .iter()
            .position(|n| *n == name)
            .map(|i| (s, i))
    })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    system: Option<VarSystem>,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.kind != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<ExpressionAst, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().kind {
                Tok::Plus => {
                    self.next();
                    lhs = ExpressionAst::Sum(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.next();
                    lhs = ExpressionAst::Difference(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ExpressionAst, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().kind == Tok::Star {
            self.next();
            lhs = ExpressionAst::Product(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<ExpressionAst, ParseError> {
        if self.peek().kind == Tok::Minus {
            self.next();
            return Ok(ExpressionAst::Negation(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExpressionAst, ParseError> {
        let base = self.atom()?;
        if self.peek().kind != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let tok = self.next();
        match &tok.kind {
            Tok::Int(s) => {
                let k: u32 = s
                    .parse()
                    .ok()
                    .filter(|k| *k <= MAX_EXPONENT)
                    .ok_or_else(|| tok.error(ParseErrorKind::ExponentTooLarge(s.clone())))?;
                Ok(ExpressionAst::Power(Box::new(base), k))
            }
            Tok::Minus => Err(tok.error(ParseErrorKind::NegativePower)),
            other => Err(tok.error(ParseErrorKind::Syntax(format!(
                "expected a nonnegative integer exponent, found {}",
                other.describe()
            )))),
        }
    }

    fn atom(&mut self) -> Result<ExpressionAst, ParseError> {
        let tok = self.next();
        match &tok.kind {
            Tok::Int(s) => {
                let num: BigInt = s.parse().expect("digits");
                if self.peek().kind != Tok::Slash {
                    return Ok(ExpressionAst::Constant(BigRational::from_integer(num)));
                }
                self.next();
                let den_tok = self.next();
                let Tok::Int(ref d) = den_tok.kind else {
                    return Err(den_tok.error(ParseErrorKind::Syntax(format!(
                        "`/` must join two integer literals, found {}",
                        den_tok.kind.describe()
                    ))));
                };
                let den: BigInt = d.parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(den_tok.error(ParseErrorKind::ZeroDenominator));
                }
                Ok(ExpressionAst::Constant(BigRational::new(num, den)))
            }
            Tok::Ident(name) => {
                let (system, index) = lookup_variable(name)
                    .ok_or_else(|| tok.error(ParseErrorKind::UnknownVariable(name.clone())))?;
                match self.system {
                    Some(s) if s != system => {
                        return Err(tok.error(ParseErrorKind::MixedSystems(s, system)))
                    }
                    _ => self.system = Some(system),
                }
                Ok(ExpressionAst::Variable { system, index })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.next();
                if close.kind != Tok::RParen {
                    return Err(close.error(ParseErrorKind::Syntax(format!(
                        "expected `)`, found {}",
                        close.kind.describe()
                    ))));
                }
                Ok(inner)
            }
            other => Err(tok.error(ParseErrorKind::Syntax(format!(
                "unexpected {}",
                other.describe()
            )))),
        }
    }
}

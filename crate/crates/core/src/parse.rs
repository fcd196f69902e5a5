//! Text grammar shared by domain elements and polynomials.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' digits]
//! atom   := digits | ident | '(' expr ')'
//! ```
//!
//! The grammar is a superset of the canonical printed form, so anything the
//! printers emit parses back to the same value. Whitespace is insignificant.

use std::fmt;

use num_bigint::BigInt;

/// A parse failure at a character offset (zero-based) of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.position + 1, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Integer(BigInt),
    Variable { name: String, position: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Target of [`Expr::interpret`]: supplies constants, resolves variable
/// names and performs the ring operations.
pub trait Interpreter {
    type Value;

    fn constant(&self, value: &BigInt) -> Self::Value;
    fn variable(&self, name: &str, position: usize) -> Result<Self::Value, ParseError>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Self::Value;
    fn pow(&self, a: Self::Value, exp: u32) -> Self::Value;
}

impl Expr {
    pub fn interpret<I: Interpreter>(&self, target: &I) -> Result<I::Value, ParseError> {
        Ok(match self {
            Expr::Integer(n) => target.constant(n),
            Expr::Variable { name, position } => target.variable(name, *position)?,
            Expr::Neg(a) => target.neg(a.interpret(target)?),
            Expr::Add(a, b) => target.add(a.interpret(target)?, b.interpret(target)?),
            Expr::Sub(a, b) => {
                let b = target.neg(b.interpret(target)?);
                target.add(a.interpret(target)?, b)
            }
            Expr::Mul(a, b) => target.mul(a.interpret(target)?, b.interpret(target)?),
            Expr::Pow(a, e) => target.pow(a.interpret(target)?, *e),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Token::Plus,
            // U+2212 MINUS SIGN is accepted as a courtesy to pasted input.
            '-' | '\u{2212}' => Token::Minus,
            '*' | '\u{b7}' => Token::Star,
            '^' => Token::Caret,
            '(' => Token::Open,
            ')' => Token::Close,
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                tokens.push((start, Token::Number(chars[start..i].iter().collect())));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push((start, Token::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(ParseError::new(i, format!("unexpected character `{other}`"))),
        };
        tokens.push((start, token));
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    index: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.index).map(|(_, t)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.index).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.index).map(|(_, t)| t.clone());
        self.index += 1;
        token
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                Expr::Neg(Box::new(self.term()?))
            }
            Some(Token::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.bump();
        let position = self.position();
        match self.bump() {
            Some(Token::Number(digits)) => {
                let exp = digits
                    .parse::<u32>()
                    .map_err(|_| ParseError::new(position, format!("exponent `{digits}` is too large")))?;
                Ok(Expr::Pow(Box::new(base), exp))
            }
            _ => Err(ParseError::new(position, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let position = self.position();
        match self.bump() {
            Some(Token::Number(digits)) => Ok(Expr::Integer(
                digits.parse().expect("token holds ascii digits only"),
            )),
            Some(Token::Ident(name)) => Ok(Expr::Variable { name, position }),
            Some(Token::Open) => {
                let inner = self.expr()?;
                let close = self.position();
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(ParseError::new(close, "expected `)`")),
                }
            }
            Some(_) => Err(ParseError::new(position, "expected a number, variable or `(`")),
            None => Err(ParseError::new(position, "unexpected end of input")),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        index: 0,
        end: text.chars().count(),
    };
    let expr = parser.expr()?;
    if parser.index < parser.tokens.len() {
        return Err(ParseError::new(parser.position(), "unexpected trailing input"));
    }
    Ok(expr)
}

/// Splits `text` on `separator`, trimming each piece, and reports each
/// piece's character offset so errors inside a piece can be relocated.
pub fn split_with_offsets(text: &str, separator: char) -> Vec<(usize, &str)> {
    let mut pieces = Vec::new();
    let mut start_byte = 0;
    let mut start_char = 0;
    for (char_index, (byte, c)) in text.char_indices().enumerate() {
        if c == separator {
            pieces.push((start_char, &text[start_byte..byte]));
            start_byte = byte + c.len_utf8();
            start_char = char_index + 1;
        }
    }
    pieces.push((start_char, &text[start_byte..]));
    pieces
        .into_iter()
        .map(|(offset, piece)| {
            let leading = piece.chars().take_while(|c| c.is_whitespace()).count();
            (offset + leading, piece.trim())
        })
        .collect()
}

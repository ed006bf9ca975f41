use std::fmt;

use super::{KnotExpr, MalformedExpression};

/// Position of a syntax error and what would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<&'static str>,
    pub found: Option<char>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: expected one of {{{}}}", self.line, self.column, self.expected.join(", "))?;
        match self.found {
            Some(c) => write!(f, ", found {c:?}"),
            None => write!(f, ", found end of input"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseExprError {
    #[error("parse error at {0}")]
    Syntax(ParseError),
    #[error("malformed expression: {0}")]
    Malformed(#[from] MalformedExpression),
}

/// Parses the expression grammar
///
/// ```text
/// expr := "U" | "cable(" int "," int "," expr ")" | "sum(" expr ("," expr)+ ")"
/// ```
///
/// Whitespace is ignored everywhere. The result keeps the parsed structure;
/// it is checked for primitivity but not normalized.
pub fn parse_expr(s: &str) -> Result<KnotExpr, ParseExprError> {
    let mut p = Parser::new(s);
    let e = p.expr().map_err(ParseExprError::Syntax)?;
    p.skip_ws();
    if p.peek().is_some() {
        return Err(ParseExprError::Syntax(p.error(&["end of input"])));
    }
    e.check_structure()?;
    Ok(e)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            chars: s.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&mut self, expected: &[&'static str]) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            expected: expected.to_vec(),
            found: self.peek(),
        }
    }

    fn expect_char(&mut self, c: char, name: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[name]))
        }
    }

    /// Consumes `word` letter by letter; whitespace is allowed between letters.
    fn keyword_rest(&mut self, rest: &str, name: &'static str) -> Result<(), ParseError> {
        for c in rest.chars() {
            self.skip_ws();
            if self.peek() != Some(c) {
                return Err(self.error(&[name]));
            }
            self.bump();
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<KnotExpr, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('U') => {
                self.bump();
                Ok(KnotExpr::Unknot)
            }
            Some('c') => {
                self.bump();
                self.keyword_rest("able", "\"cable(\"")?;
                self.expect_char('(', "\"(\"")?;
                let p = self.int()?;
                self.expect_char(',', "\",\"")?;
                let q = self.int()?;
                self.expect_char(',', "\",\"")?;
                let companion = self.expr()?;
                self.expect_char(')', "\")\"")?;
                Ok(KnotExpr::cable(p, q, companion))
            }
            Some('s') => {
                self.bump();
                self.keyword_rest("um", "\"sum(\"")?;
                self.expect_char('(', "\"(\"")?;
                let mut summands = vec![self.expr()?];
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(',') => {
                            self.bump();
                            summands.push(self.expr()?);
                        }
                        Some(')') if summands.len() >= 2 => {
                            self.bump();
                            break;
                        }
                        _ if summands.len() >= 2 => return Err(self.error(&["\",\"", "\")\""])),
                        _ => return Err(self.error(&["\",\""])),
                    }
                }
                Ok(KnotExpr::Sum(summands))
            }
            _ => Err(self.error(&["\"U\"", "\"cable(\"", "\"sum(\""])),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let mut text = String::new();
        if self.peek() == Some('-') {
            text.push('-');
            self.bump();
            self.skip_ws();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
        }
        text.parse::<i64>().map_err(|_| ParseError {
            line,
            column,
            expected: vec!["integer"],
            found: text.chars().next().or(self.peek()),
        })
    }
}

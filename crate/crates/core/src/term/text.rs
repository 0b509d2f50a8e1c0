//! Text form of terms.
//!
//! Grammar: `term := atom | '(' symbol term* ')'` where an atom is an
//! identifier (`[A-Za-z_][A-Za-z0-9_.$]*`), one of the operator tokens
//! `> >= < <= = + - *`, or an unsigned integer literal. `;` starts a line
//! comment. The words `and or not true false forall exists` are reserved;
//! `true` and `false` are constants, the rest only head compound terms.

use std::fmt;

use super::{Session, SymbolKind, Term};

/// Position-annotated error produced by the lexer or parser.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

impl ParseError {
    fn new(line: u32, column: u32, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    LParen,
    RParen,
    Atom(String),
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: u32,
    column: u32,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '$')
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: u32,
    column: u32,
}

impl Lexer<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars.next().expect("bump past end of input");
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        c
    }

    fn take_while(&mut self, first: char, keep: impl Fn(char) -> bool) -> String {
        let mut text = String::from(first);
        while let Some(c) = self.peek() {
            if !keep(c) {
                break;
            }
            text.push(self.bump());
        }
        text
    }
}

fn lex(source: &str) -> Result<Vec<Token>, ParseError> {
    let mut lexer = Lexer {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    while let Some(c) = lexer.peek() {
        let (line, column) = (lexer.line, lexer.column);
        let kind = match c {
            '\n' | ' ' | '\t' | '\r' => {
                lexer.bump();
                continue;
            }
            ';' => {
                while lexer.peek().is_some_and(|c| c != '\n') {
                    lexer.bump();
                }
                continue;
            }
            '(' => {
                lexer.bump();
                TokenKind::LParen
            }
            ')' => {
                lexer.bump();
                TokenKind::RParen
            }
            '>' | '<' => {
                let mut text = String::from(lexer.bump());
                if lexer.peek() == Some('=') {
                    text.push(lexer.bump());
                }
                TokenKind::Atom(text)
            }
            '=' | '+' | '-' | '*' => TokenKind::Atom(String::from(lexer.bump())),
            _ if c.is_ascii_digit() => {
                let first = lexer.bump();
                TokenKind::Atom(lexer.take_while(first, |c| c.is_ascii_digit()))
            }
            _ if is_ident_start(c) => {
                let first = lexer.bump();
                TokenKind::Atom(lexer.take_while(first, is_ident_continue))
            }
            _ => {
                return Err(ParseError::new(
                    line,
                    column,
                    format!("unexpected character `{c}`"),
                ));
            }
        };
        tokens.push(Token { kind, line, column });
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    position: usize,
    end_line: u32,
    end_column: u32,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.position)
    }

    fn end_error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.end_line, self.end_column, message)
    }

    fn parse(&mut self, session: &mut Session) -> Result<Term, ParseError> {
        let token = self
            .peek()
            .ok_or_else(|| self.end_error("unexpected end of input"))?
            .clone();
        self.position += 1;
        match token.kind {
            TokenKind::RParen => Err(ParseError::new(token.line, token.column, "unexpected `)`")),
            TokenKind::Atom(text) => {
                if matches!(text.as_str(), "and" | "or" | "not" | "forall" | "exists") {
                    return Err(ParseError::new(
                        token.line,
                        token.column,
                        format!("reserved word `{text}` cannot be used as an atom"),
                    ));
                }
                Ok(session.atom(&text))
            }
            TokenKind::LParen => {
                let head_token = self
                    .peek()
                    .ok_or_else(|| self.end_error("unexpected end of input, expected a symbol"))?
                    .clone();
                let TokenKind::Atom(head_text) = head_token.kind else {
                    return Err(ParseError::new(
                        head_token.line,
                        head_token.column,
                        "expected a symbol after `(`",
                    ));
                };
                self.position += 1;
                let mut children = Vec::new();
                loop {
                    match self.peek() {
                        None => return Err(self.end_error("unexpected end of input, expected `)`")),
                        Some(t) if t.kind == TokenKind::RParen => {
                            self.position += 1;
                            break;
                        }
                        Some(_) => children.push(self.parse(session)?),
                    }
                }
                if head_text == "not" && children.len() != 1 {
                    return Err(ParseError::new(
                        head_token.line,
                        head_token.column,
                        format!("`not` takes exactly 1 argument, got {}", children.len()),
                    ));
                }
                let head = session.symbol(&head_text);
                if session.symbol_kind(head) == SymbolKind::Interpreted && !children.is_empty() {
                    return Err(ParseError::new(
                        head_token.line,
                        head_token.column,
                        format!("literal `{head_text}` cannot be applied to arguments"),
                    ));
                }
                Ok(session.intern(head, children))
            }
        }
    }
}

impl Session {
    /// Parses one term from `source` and interns it. Trailing content other
    /// than whitespace and comments is an error.
    pub fn parse_term(&mut self, source: &str) -> Result<Term, ParseError> {
        let tokens = lex(source)?;
        let (end_line, end_column) = source.lines().enumerate().last().map_or((1, 1), |(i, l)| {
            (i as u32 + 1, l.chars().count() as u32 + 1)
        });
        let mut parser = Parser {
            tokens: &tokens,
            position: 0,
            end_line,
            end_column,
        };
        let term = parser.parse(self)?;
        if let Some(extra) = parser.peek() {
            return Err(ParseError::new(
                extra.line,
                extra.column,
                "expected end of input",
            ));
        }
        Ok(term)
    }

    /// Canonical text of a term. `parse_term(print_term(t))` returns `t`.
    pub fn print_term(&self, term: Term) -> String {
        self.display(term).to_string()
    }

    /// Adapter that renders a term through `std::fmt::Display`.
    pub fn display(&self, term: Term) -> TermDisplay<'_> {
        TermDisplay {
            session: self,
            term,
        }
    }

    fn write_term(&self, f: &mut fmt::Formatter<'_>, term: Term) -> fmt::Result {
        let head = self.head(term);
        let children = self.children(term);
        let operator = matches!(
            self.symbol_kind(head),
            SymbolKind::Connective | SymbolKind::Quantifier
        );
        if children.is_empty() && !operator {
            return f.write_str(self.symbol_text(head));
        }
        write!(f, "({}", self.symbol_text(head))?;
        for &child in children {
            f.write_str(" ")?;
            self.write_term(f, child)?;
        }
        f.write_str(")")
    }
}

/// See [`Session::display`].
pub struct TermDisplay<'a> {
    session: &'a Session,
    term: Term,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.session.write_term(f, self.term)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_connectives_and_literals() {
        let mut s = Session::new();
        let t = s.parse_term("(and p q)").unwrap();
        assert_eq!(s.head(t), s.reserved().and);
        assert_eq!(s.children(t).len(), 2);

        let t = s.parse_term("(> x 2)").unwrap();
        let lit = s.children(t)[1];
        assert_eq!(s.symbol_kind(s.head(lit)), SymbolKind::Interpreted);

        // unary `and` is allowed by the grammar
        let p = s.atom("p");
        let t = s.parse_term("(and p)").unwrap();
        assert_eq!(s.children(t), [p]);
    }

    #[test]
    fn parse_and_print_round_trip() {
        let mut s = Session::new();
        for text in [
            "false",
            "(and p q)",
            "(or (and f1 (not f2)) (and f1 f2 (not f3)))",
            "(forall i (> i 0))",
            "(>= (+ x 1) (* y 2))",
            "(and)",
        ] {
            let t = s.parse_term(text).unwrap();
            let printed = s.print_term(t);
            assert_eq!(printed, text);
            assert_eq!(s.parse_term(&printed).unwrap(), t);
        }
    }

    #[test]
    fn printing_constants_is_bare() {
        let s = Session::new();
        assert_eq!(s.print_term(s.truth(false)), "false");
        let mut s = Session::new();
        let t = s.atom("x");
        assert_eq!(s.print_term(t), "x");
    }

    #[test]
    fn comments_and_whitespace_are_ignored() {
        let mut s = Session::new();
        let a = s
            .parse_term("; header\n(and p ; inline\n  q)\n; trailing\n")
            .unwrap();
        let b = s.parse_term("(and p q)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let mut s = Session::new();
        let err = s.parse_term("(and p\n  !q)").unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));

        let err = s.parse_term("(and p").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("expected `)`"));

        let err = s.parse_term("(and p) q").unwrap_err();
        assert!(err.message.contains("expected end of input"));

        let err = s.parse_term("and").unwrap_err();
        assert!(err.message.contains("reserved word"));
    }

    #[test]
    fn not_requires_exactly_one_argument() {
        let mut s = Session::new();
        assert!(s.parse_term("(not p)").is_ok());
        let err = s.parse_term("(not p q)").unwrap_err();
        assert!(err.message.contains("exactly 1 argument"));
        let err = s.parse_term("(not)").unwrap_err();
        assert!(err.message.contains("exactly 1 argument"));
    }

    #[test]
    fn literals_cannot_be_applied() {
        let mut s = Session::new();
        let err = s.parse_term("(3 x)").unwrap_err();
        assert!(err.message.contains("cannot be applied"));
        let err = s.parse_term("(true x)").unwrap_err();
        assert!(err.message.contains("cannot be applied"));
    }
}

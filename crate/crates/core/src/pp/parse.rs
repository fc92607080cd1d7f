use std::collections::BTreeSet;

use super::{Atom, PPFormula};
use crate::error::{Error, Result};

const KEYWORDS: [&str; 3] = ["def", "exists", "true"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Amp,
    Eq,
    Define,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(s) => format!("`{s}`"),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Dot => "`.`".into(),
            Token::Amp => "`&`".into(),
            Token::Eq => "`=`".into(),
            Token::Define => "`:=`".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<(Vec<(Token, Pos)>, Pos)> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, column };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().expect("peeked");
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        };
        match c {
            c if c.is_whitespace() => bump(&mut chars),
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        bump(&mut chars);
                    } else {
                        break;
                    }
                }
                tokens.push((Token::Ident(ident), pos));
            }
            ':' => {
                bump(&mut chars);
                if chars.peek() == Some(&'=') {
                    bump(&mut chars);
                    tokens.push((Token::Define, pos));
                } else {
                    return Err(syntax(pos, "expected `:=`"));
                }
            }
            _ => {
                let tok = match c {
                    '(' => Token::LParen,
                    ')' => Token::RParen,
                    ',' => Token::Comma,
                    '.' => Token::Dot,
                    '&' => Token::Amp,
                    '=' => Token::Eq,
                    other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
                };
                bump(&mut chars);
                tokens.push((tok, pos));
            }
        }
    }
    Ok((tokens, Pos { line, column }))
}

struct Parser {
    tokens: Vec<(Token, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.tokens.get(self.at).map_or(self.end, |&(_, p)| p)
    }

    fn at_end(&self) -> bool {
        self.at >= self.tokens.len()
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), Token::describe)
    }

    fn expect(&mut self, want: Token) -> Result<()> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!("expected {}, found {}", want.describe(), self.found()),
            ))
        }
    }

    fn keyword(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Token::Ident(s)) if s == word)
    }

    fn ident(&mut self, what: &str) -> Result<(String, Pos)> {
        let pos = self.pos();
        match self.peek() {
            Some(Token::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.at += 1;
                Ok((s, pos))
            }
            Some(Token::Ident(s)) => Err(syntax(pos, format!("keyword `{s}` cannot be used as a {what}"))),
            _ => Err(syntax(pos, format!("expected {what}, found {}", self.found()))),
        }
    }

    fn varlist(&mut self) -> Result<Vec<(String, Pos)>> {
        let mut vars = vec![self.ident("variable")?];
        while self.peek() == Some(&Token::Comma) {
            self.at += 1;
            vars.push(self.ident("variable")?);
        }
        Ok(vars)
    }

    fn formula(&mut self) -> Result<PPFormula> {
        if !self.keyword("def") {
            return Err(syntax(self.pos(), format!("expected `def`, found {}", self.found())));
        }
        self.at += 1;
        let (name, _) = self.ident("formula name")?;
        self.expect(Token::LParen)?;
        let free = self.varlist()?;
        self.expect(Token::RParen)?;
        self.expect(Token::Define)?;

        let mut declared = BTreeSet::new();
        declare(&mut declared, &free)?;
        let mut exist = Vec::new();
        let mut atoms = Vec::new();
        if self.keyword("true") {
            self.at += 1;
        } else {
            if self.keyword("exists") {
                self.at += 1;
                exist = self.varlist()?;
                declare(&mut declared, &exist)?;
                self.expect(Token::Dot)?;
            }
            atoms.push(self.atom(&declared)?);
            while self.peek() == Some(&Token::Amp) {
                self.at += 1;
                atoms.push(self.atom(&declared)?);
            }
        }
        let names = |vs: Vec<(String, Pos)>| vs.into_iter().map(|(v, _)| v).collect();
        PPFormula::new(name, names(free), names(exist), atoms)
    }

    fn atom(&mut self, declared: &BTreeSet<String>) -> Result<Atom> {
        let (head, head_pos) = self.ident("relation name or variable")?;
        match self.peek() {
            Some(Token::LParen) => {
                self.at += 1;
                let vars = self.varlist()?;
                self.expect(Token::RParen)?;
                for (v, p) in &vars {
                    check_declared(declared, v, *p)?;
                }
                Ok(Atom::Relation {
                    name: head,
                    vars: vars.into_iter().map(|(v, _)| v).collect(),
                })
            }
            Some(Token::Eq) => {
                self.at += 1;
                let (right, right_pos) = self.ident("variable")?;
                check_declared(declared, &head, head_pos)?;
                check_declared(declared, &right, right_pos)?;
                Ok(Atom::Equality { left: head, right })
            }
            _ => Err(syntax(
                self.pos(),
                format!("expected `(` or `=`, found {}", self.found()),
            )),
        }
    }
}

fn declare(declared: &mut BTreeSet<String>, vars: &[(String, Pos)]) -> Result<()> {
    for (v, p) in vars {
        if !declared.insert(v.clone()) {
            return Err(Error::DuplicateVariable {
                name: v.clone(),
                line: p.line,
                column: p.column,
            });
        }
    }
    Ok(())
}

fn check_declared(declared: &BTreeSet<String>, v: &str, p: Pos) -> Result<()> {
    if declared.contains(v) {
        Ok(())
    } else {
        Err(Error::UndeclaredVariable {
            name: v.to_string(),
            line: p.line,
            column: p.column,
        })
    }
}

fn parser(text: &str) -> Result<Parser> {
    let (tokens, end) = lex(text)?;
    Ok(Parser { tokens, at: 0, end })
}

/// Parses exactly one formula.
pub fn parse_pp(text: &str) -> Result<PPFormula> {
    let mut p = parser(text)?;
    let phi = p.formula()?;
    if !p.at_end() {
        return Err(syntax(p.pos(), format!("unexpected {} after formula", p.found())));
    }
    Ok(phi)
}

/// Parses a sequence of formulas.
pub fn parse_pp_file(text: &str) -> Result<Vec<PPFormula>> {
    let mut p = parser(text)?;
    let mut out = Vec::new();
    while !p.at_end() {
        out.push(p.formula()?);
    }
    Ok(out)
}

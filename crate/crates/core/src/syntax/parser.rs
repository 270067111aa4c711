use super::{Atom, ObjectiveLiteral, Program, Rule, SubjectiveLiteral, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    /// `[a-z][A-Za-z0-9_]*`; includes the keywords `not` and `bot`.
    Ident(String),
    /// `[A-Z][A-Za-z0-9_]*`; includes the operator `K`.
    Upper(String),
    Bar,
    If,
    Dot,
    Comma,
    LParen,
    RParen,
    Bottom,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Upper(s) => format!("`{s}`"),
            Tok::Bar => "`|`".into(),
            Tok::If => "`:-`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Bottom => "`⊥`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<(Vec<Spanned>, (usize, usize))> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);

    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        let single = match c {
            '|' => Some(Tok::Bar),
            '.' => Some(Tok::Dot),
            ',' => Some(Tok::Comma),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '⊥' => Some(Tok::Bottom),
            _ => None,
        };
        if let Some(tok) = single {
            bump(&mut chars);
            out.push(Spanned { tok, line: l, column: col });
            continue;
        }
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '%' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
        } else if c == ':' {
            bump(&mut chars);
            if chars.peek() != Some(&'-') {
                return Err(Error::Syntax {
                    line: l,
                    column: col,
                    message: "expected `:-`".into(),
                });
            }
            bump(&mut chars);
            out.push(Spanned { tok: Tok::If, line: l, column: col });
        } else if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if !is_ident_char(c) {
                    break;
                }
                word.push(c);
                bump(&mut chars);
            }
            let tok = if c.is_ascii_lowercase() {
                Tok::Ident(word)
            } else {
                Tok::Upper(word)
            };
            out.push(Spanned { tok, line: l, column: col });
        } else {
            return Err(Error::Syntax {
                line: l,
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok((out, (line, column)))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax {
            line,
            column,
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T> {
        match self.peek() {
            Some(t) => self.error(format!("expected {expected}, found {}", t.describe())),
            None => self.error(format!("expected {expected}, found end of input")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw) && {
            self.pos += 1;
            true
        }
    }

    fn at_k(&self) -> bool {
        matches!(self.peek(), Some(Tok::Upper(s)) if s == "K")
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.unexpected(&tok.describe())
        }
    }

    fn program(&mut self) -> Result<Program> {
        let mut rules = Vec::new();
        while self.peek().is_some() {
            rules.push(self.rule()?);
        }
        Ok(Program::new(rules))
    }

    fn rule(&mut self) -> Result<Rule> {
        let mut rule = Rule::default();
        match self.peek() {
            Some(Tok::If) | Some(Tok::Dot) => {}
            Some(Tok::Bottom) => self.pos += 1,
            Some(Tok::Ident(s))
                if s == "bot" && matches!(self.peek_at(1), Some(Tok::If) | Some(Tok::Dot)) =>
            {
                self.pos += 1
            }
            _ => {
                rule.head.insert(self.head_atom()?);
                while self.eat(&Tok::Bar) {
                    rule.head.insert(self.head_atom()?);
                }
            }
        }
        if self.eat(&Tok::If) {
            self.literal(&mut rule)?;
            while self.eat(&Tok::Comma) {
                self.literal(&mut rule)?;
            }
        }
        self.expect(Tok::Dot)?;
        Ok(rule)
    }

    fn head_atom(&mut self) -> Result<Atom> {
        if self.at_k() {
            return self.error("the epistemic operator `K` may only occur in rule bodies");
        }
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "not") {
            return self.error("default negation may only occur in rule bodies");
        }
        self.atom()
    }

    fn literal(&mut self, rule: &mut Rule) -> Result<()> {
        let outer_not = self.eat_keyword("not");
        if self.at_k() {
            self.pos += 1;
            if self.at_k() {
                return self.error("nested subjective literals are not allowed");
            }
            let inner_not = self.eat_keyword("not");
            if self.at_k() {
                return self.error("nested subjective literals are not allowed");
            }
            let atom = self.atom()?;
            rule.body_subj.insert(SubjectiveLiteral {
                inner: ObjectiveLiteral {
                    atom,
                    default_negated: inner_not,
                },
                epistemically_negated: outer_not,
            });
        } else {
            if matches!(self.peek(), Some(Tok::Ident(s)) if s == "not") {
                return self.error("a second `not` is only allowed after `K`");
            }
            let atom = self.atom()?;
            rule.body_obj.insert(ObjectiveLiteral {
                atom,
                default_negated: outer_not,
            });
        }
        Ok(())
    }

    fn atom(&mut self) -> Result<Atom> {
        let predicate = match self.peek() {
            Some(Tok::Ident(s)) if s == "not" || s == "bot" => {
                return self.error(format!("`{s}` is reserved and cannot name a predicate"));
            }
            Some(Tok::Ident(s)) => s.clone(),
            _ => return self.unexpected("an atom"),
        };
        self.pos += 1;
        let mut args = Vec::new();
        if self.eat(&Tok::LParen) {
            args.push(self.term()?);
            while self.eat(&Tok::Comma) {
                args.push(self.term()?);
            }
            self.expect(Tok::RParen)?;
        }
        Ok(Atom { predicate, args })
    }

    fn term(&mut self) -> Result<Term> {
        let t = match self.peek() {
            Some(Tok::Ident(s)) => Term::Const(s.clone()),
            Some(Tok::Upper(s)) => Term::Var(s.clone()),
            _ => return self.unexpected("a constant or variable"),
        };
        self.pos += 1;
        Ok(t)
    }
}

/// Parses program text. Rules come back in source order, duplicates included.
pub fn parse_program(text: &str) -> Result<Program> {
    let (toks, end) = lex(text)?;
    Parser { toks, pos: 0, end }.program()
}

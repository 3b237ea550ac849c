//! Lexer and recursive-descent parser for the ASCII formula grammar.
//!
//! Precedence, tightest first: `~`, `&`, `|`, `->`, `<->`. `&` and `|` are
//! left-associative, `->` and `<->` right-associative, and quantifier bodies
//! extend as far right as possible.

use std::collections::HashSet;

use super::index::{parse_index, TypeIndex};
use super::syntax::{BoundRel, Formula, Quant, Sugar, Symbol, Term};
use super::KernelError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Nat(String),
    Caret,
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Equal,
    NotEqual,
    Star,
    Plus,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Nat(s) => format!("`{s}`"),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`<->`".into(),
            Tok::Equal => "`=`".into(),
            Tok::NotEqual => "`!=`".into(),
            Tok::Star => "`*`".into(),
            Tok::Plus => "`+`".into(),
        }
    }
}

pub(crate) fn lex(text: &str) -> Result<Vec<(Tok, usize)>, KernelError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |pos: usize, msg: String| KernelError::Parse { pos, msg };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'~' => Tok::Tilde,
            b'&' => Tok::Amp,
            b'|' => Tok::Bar,
            b'*' => Tok::Star,
            b'+' => Tok::Plus,
            b'=' => Tok::Equal,
            b'!' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::NotEqual
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::DArrow
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                Tok::Nat(text[start..=i].to_string())
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_' || bytes[i + 1] == b'\'')
                {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(i, format!("unexpected character `{ch}`")));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

pub(crate) struct Cursor {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Result<Self, KernelError> {
        Ok(Cursor { toks: lex(text)?, pos: 0, end: text.len() })
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    pub(crate) fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|(t, _)| t)
    }

    pub(crate) fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, p)| *p).unwrap_or(self.end)
    }

    pub(crate) fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    pub(crate) fn error(&self, msg: impl Into<String>) -> KernelError {
        KernelError::Parse { pos: self.offset(), msg: msg.into() }
    }

    pub(crate) fn expect(&mut self, want: Tok) -> Result<(), KernelError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.bump();
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected {}, found {}", want.describe(), t.describe()))),
            None => Err(self.error(format!("expected {}, found end of input", want.describe()))),
        }
    }

    pub(crate) fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, KernelError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            Some(t) => Err(self.error(format!("expected identifier, found {}", t.describe()))),
            None => Err(self.error("expected identifier, found end of input")),
        }
    }

    pub(crate) fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    pub(crate) fn finish(&self) -> Result<(), KernelError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected trailing {}", t.describe()))),
        }
    }
}

struct Parser {
    cur: Cursor,
}

/// Parse one formula.
pub fn parse_formula(text: &str) -> Result<Formula, KernelError> {
    let mut p = Parser { cur: Cursor::new(text)? };
    if p.cur.peek().is_none() {
        return Err(p.cur.error("empty formula"));
    }
    let f = p.formula()?;
    p.cur.finish()?;
    Ok(f)
}

/// Parse a standalone term such as `a^0` or `up(x^1)`.
pub fn parse_term(text: &str) -> Result<Term, KernelError> {
    let mut p = Parser { cur: Cursor::new(text)? };
    let t = p.term()?;
    p.cur.finish()?;
    Ok(t)
}

/// Parse a symbol such as `x^2`.
pub fn parse_symbol(text: &str) -> Result<Symbol, KernelError> {
    match parse_term(text)? {
        Term::Sym(s) => Ok(s),
        other => Err(KernelError::Parse { pos: 0, msg: format!("expected a symbol, found `{other}`") }),
    }
}

/// Parse a `.hol` document: one formula per line, `#` starts a comment.
pub fn parse_hol(text: &str) -> Result<Vec<Formula>, KernelError> {
    hol_lines(text)
        .map(|(lineno, line)| {
            parse_formula(line).map_err(|e| match e {
                KernelError::Parse { pos, msg } => KernelError::Parse { pos, msg: format!("line {lineno}: {msg}") },
                e => e,
            })
        })
        .collect()
}

/// Non-empty, comment-stripped lines with 1-based line numbers.
pub fn hol_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

const RESERVED: &[&str] = &["all", "some", "eq", "in", "dn", "coext", "downeq"];

impl Parser {
    fn formula(&mut self) -> Result<Formula, KernelError> {
        let lhs = self.implication()?;
        if self.cur.eat(&Tok::DArrow) {
            let rhs = self.formula()?;
            return Ok(lhs.iff(rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula, KernelError> {
        let lhs = self.disjunction()?;
        if self.cur.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, KernelError> {
        let mut lhs = self.conjunction()?;
        while self.cur.eat(&Tok::Bar) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, KernelError> {
        let mut lhs = self.unary()?;
        while self.cur.eat(&Tok::Amp) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, KernelError> {
        if self.cur.eat(&Tok::Tilde) {
            return Ok(self.unary()?.not());
        }
        let quant = match self.cur.peek() {
            Some(Tok::Ident(s)) if s == "all" && self.cur.peek_at(1) != Some(&Tok::Caret) => Some(Quant::All),
            Some(Tok::Ident(s)) if s == "some" && self.cur.peek_at(1) != Some(&Tok::Caret) => Some(Quant::Some),
            _ => None,
        };
        match quant {
            Some(q) => self.quantifier(q),
            None => self.atom(),
        }
    }

    fn quantifier(&mut self, quant: Quant) -> Result<Formula, KernelError> {
        self.cur.bump();
        let var = self.binder()?;
        let rel = if self.cur.at_keyword("eq") {
            Some(BoundRel::Eq)
        } else if self.cur.at_keyword("in") {
            Some(BoundRel::In)
        } else {
            None
        };
        if let Some(rel) = rel {
            self.cur.bump();
            let bound = self.term()?;
            self.cur.expect(Tok::Dot)?;
            let body = self.formula()?;
            return Ok(Formula::bounded(quant, var, rel, bound, body));
        }
        self.cur.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(match quant {
            Quant::All => Formula::forall(var, body),
            Quant::Some => Formula::exists(var, body),
        })
    }

    fn binder(&mut self) -> Result<Symbol, KernelError> {
        let name = self.cur.ident()?;
        if RESERVED.contains(&name.as_str()) {
            return Err(self.cur.error(format!("`{name}` is reserved")));
        }
        self.cur.expect(Tok::Caret)?;
        let ty = self.index()?;
        Ok(Symbol { name, ty })
    }

    fn index(&mut self) -> Result<TypeIndex, KernelError> {
        if self.cur.eat(&Tok::LParen) {
            let t = self.index()?;
            self.cur.expect(Tok::RParen)?;
            return Ok(t);
        }
        let start = self.cur.offset();
        let mut text = String::new();
        match self.cur.bump() {
            Some(Tok::Nat(n)) => text.push_str(&n),
            Some(Tok::Ident(w)) if w == "w" => {
                text.push('w');
                if matches!(self.cur.peek(), Some(Tok::Caret)) {
                    return Err(self.cur.error("indices at or above w*w are not supported"));
                }
                if self.cur.peek() == Some(&Tok::Star) {
                    self.cur.bump();
                    match self.cur.bump() {
                        Some(Tok::Nat(q)) => {
                            text.push('*');
                            text.push_str(&q);
                        }
                        _ => {
                            return Err(KernelError::Parse {
                                pos: start,
                                msg: "indices at or above w*w are not supported".into(),
                            })
                        }
                    }
                }
                if let (Some(Tok::Plus), Some(Tok::Nat(r))) = (self.cur.peek(), self.cur.peek_at(1)) {
                    text.push('+');
                    text.push_str(&r.clone());
                    self.cur.bump();
                    self.cur.bump();
                }
            }
            Some(t) => {
                return Err(KernelError::Parse {
                    pos: start,
                    msg: format!("expected type index, found {}", t.describe()),
                })
            }
            None => return Err(KernelError::Parse { pos: start, msg: "expected type index".into() }),
        }
        parse_index(&text).map_err(|msg| KernelError::Parse { pos: start, msg })
    }

    fn term(&mut self) -> Result<Term, KernelError> {
        let name = self.cur.ident()?;
        if self.cur.peek() == Some(&Tok::LParen) && (name == "up" || name == "lift") {
            self.cur.bump();
            let inner = self.term()?;
            self.cur.expect(Tok::RParen)?;
            return Ok(if name == "up" { inner.up() } else { inner.lift() });
        }
        if RESERVED.contains(&name.as_str()) {
            return Err(self.cur.error(format!("`{name}` is reserved")));
        }
        self.cur.expect(Tok::Caret)?;
        let ty = self.index()?;
        Ok(Term::Sym(Symbol { name, ty }))
    }

    fn macro_args(&mut self, n: usize) -> Result<Vec<Term>, KernelError> {
        self.cur.bump();
        self.cur.expect(Tok::LParen)?;
        let mut args = vec![self.term()?];
        while args.len() < n {
            self.cur.expect(Tok::Comma)?;
            args.push(self.term()?);
        }
        self.cur.expect(Tok::RParen)?;
        Ok(args)
    }

    fn atom(&mut self) -> Result<Formula, KernelError> {
        if self.cur.eat(&Tok::LParen) {
            let f = self.formula()?;
            self.cur.expect(Tok::RParen)?;
            return Ok(f);
        }
        if let (Some(Tok::Ident(kw)), Some(Tok::LParen)) = (self.cur.peek(), self.cur.peek_at(1)) {
            let kw = kw.clone();
            match kw.as_str() {
                "hist" => return Ok(Formula::Sugar(Sugar::History(self.macro_args(1)?.remove(0)))),
                "lev" => return Ok(Formula::Sugar(Sugar::Level(self.macro_args(1)?.remove(0)))),
                "subset" => {
                    let mut a = self.macro_args(2)?;
                    let b = a.pop().unwrap();
                    return Ok(Formula::Sugar(Sugar::SubsetOf(a.pop().unwrap(), b)));
                }
                "rank" => {
                    let mut a = self.macro_args(2)?;
                    let b = a.pop().unwrap();
                    return Ok(Formula::Sugar(Sugar::Rank(a.pop().unwrap(), b)));
                }
                _ => {}
            }
        }
        let lhs = self.term()?;
        if self.cur.eat(&Tok::LParen) {
            let arg = self.term()?;
            self.cur.expect(Tok::RParen)?;
            return Ok(Formula::Apply(lhs, arg));
        }
        let op = match self.cur.bump() {
            Some(Tok::Equal) => "=".to_string(),
            Some(Tok::NotEqual) => "!=".to_string(),
            Some(Tok::Ident(s)) => s,
            Some(t) => return Err(self.cur.error(format!("expected a relation after term, found {}", t.describe()))),
            None => return Err(self.cur.error("expected a relation after term, found end of input")),
        };
        let rhs = self.term()?;
        let f = match op.as_str() {
            "=" => Formula::Eq(lhs, rhs),
            "!=" => Formula::Eq(lhs, rhs).not(),
            "eq" => Formula::Sugar(Sugar::EqCtt(lhs, rhs)),
            "in" => Formula::Sugar(Sugar::InCtt(lhs, rhs)),
            "dn" => Formula::Down(lhs, rhs),
            "coext" => Formula::Sugar(Sugar::Coext(lhs, rhs)),
            "downeq" => Formula::Sugar(Sugar::DownEq(lhs, rhs)),
            other => match other.strip_prefix("coext_").map(|k| k.parse::<u32>()) {
                Some(Ok(k)) => Formula::Sugar(Sugar::CoextBounded(k, lhs, rhs)),
                _ => return Err(self.cur.error(format!("unknown relation `{other}`"))),
            },
        };
        Ok(f)
    }
}

/// Symbols that are bound somewhere in the formula.
pub fn bound_symbols(f: &Formula) -> HashSet<Symbol> {
    let mut out = HashSet::new();
    f.visit(&mut |g| match g {
        Formula::Forall(v, _) | Formula::Exists(v, _) => {
            out.insert(v.clone());
        }
        Formula::Sugar(Sugar::Bounded { var, .. }) => {
            out.insert(var.clone());
        }
        _ => {}
    });
    out
}

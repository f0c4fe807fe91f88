//! Propositional formulas over a small vocabulary and their model sets.
//!
//! Worlds are indexed so that world `i` counts down the truth table: atom 0
//! is the most significant bit of `i`, and a `0` bit means the atom is true.
//! For the vocabulary `(b, f)` this gives
//!
//! | index | assignment |
//! |-------|------------|
//! | 0     | `b ∧ f`    |
//! | 1     | `b ∧ ¬f`   |
//! | 2     | `¬b ∧ f`   |
//! | 3     | `¬b ∧ ¬f`  |
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! iff     := implies ( "<->" implies )*
//! implies := or ( "->" implies )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := ( "!" | "~" ) unary | "T" | "F" | ident | "(" iff ")"
//! ```

use std::fmt;

use crate::error::{Error, Result};
use crate::world::{Universe, World, WorldSet, HARD_MAX_WORLDS};

pub const DEFAULT_MAX_ATOMS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vocabulary {
    atoms: Vec<String>,
    universe: Universe,
}

impl Vocabulary {
    pub fn new<S: AsRef<str>>(atoms: &[S]) -> Result<Self> {
        Self::with_max_atoms(atoms, DEFAULT_MAX_ATOMS)
    }

    pub fn with_max_atoms<S: AsRef<str>>(atoms: &[S], limit: usize) -> Result<Self> {
        if atoms.len() > limit {
            return Err(Error::TooManyAtoms { count: atoms.len(), limit });
        }
        let mut names: Vec<String> = Vec::with_capacity(atoms.len());
        for a in atoms {
            let a = a.as_ref();
            if !is_identifier(a) || a == "T" || a == "F" {
                return Err(Error::InvalidAtom(a.to_string()));
            }
            if names.iter().any(|n| n == a) {
                return Err(Error::DuplicateAtom(a.to_string()));
            }
            names.push(a.to_string());
        }
        let universe = Universe::with_limit(1 << names.len(), HARD_MAX_WORLDS)?;
        Ok(Vocabulary { atoms: names, universe })
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn index_of(&self, atom: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == atom)
    }

    /// Truth value of atom `atom` in world `world`.
    pub fn holds(&self, world: World, atom: usize) -> bool {
        let shift = self.atoms.len() - 1 - atom;
        (world.0 >> shift) & 1 == 0
    }

    /// The conjunction of literals true exactly in `world`.
    pub fn characteristic(&self, world: World) -> Formula {
        let mut lits = (0..self.atoms.len()).map(|a| {
            if self.holds(world, a) {
                Formula::Atom(a)
            } else {
                Formula::Not(Box::new(Formula::Atom(a)))
            }
        });
        match lits.next() {
            None => Formula::True,
            Some(first) => lits.fold(first, |acc, l| Formula::And(Box::new(acc), Box::new(l))),
        }
    }

    /// Human-readable assignment of a world, e.g. `b∧¬f`.
    pub fn describe(&self, world: World) -> String {
        if self.atoms.is_empty() {
            return "⊤".to_string();
        }
        self.atoms
            .iter()
            .enumerate()
            .map(|(i, a)| if self.holds(world, i) { a.clone() } else { format!("¬{a}") })
            .collect::<Vec<_>>()
            .join("∧")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Formula AST. Atoms are indices into the governing [`Vocabulary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, vocab: &Vocabulary, world: World) -> bool {
        match self {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom(a) => vocab.holds(world, *a),
            Formula::Not(f) => !f.eval(vocab, world),
            Formula::And(a, b) => a.eval(vocab, world) && b.eval(vocab, world),
            Formula::Or(a, b) => a.eval(vocab, world) || b.eval(vocab, world),
            Formula::Implies(a, b) => !a.eval(vocab, world) || b.eval(vocab, world),
            Formula::Iff(a, b) => a.eval(vocab, world) == b.eval(vocab, world),
        }
    }

    pub fn display<'a>(&'a self, vocab: &'a Vocabulary) -> impl fmt::Display + 'a {
        FormulaDisplay { formula: self, vocab }
    }
}

struct FormulaDisplay<'a> {
    formula: &'a Formula,
    vocab: &'a Vocabulary,
}

impl<'a> FormulaDisplay<'a> {
    fn sub(&self, g: &'a Formula) -> FormulaDisplay<'a> {
        FormulaDisplay { formula: g, vocab: self.vocab }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sub = |g| self.sub(g);
        match self.formula {
            Formula::True => f.write_str("T"),
            Formula::False => f.write_str("F"),
            Formula::Atom(a) => f.write_str(&self.vocab.atoms[*a]),
            Formula::Not(g) => write!(f, "!{}", sub(g)),
            Formula::And(a, b) => write!(f, "({} & {})", sub(a), sub(b)),
            Formula::Or(a, b) => write!(f, "({} | {})", sub(a), sub(b)),
            Formula::Implies(a, b) => write!(f, "({} -> {})", sub(a), sub(b)),
            Formula::Iff(a, b) => write!(f, "({} <-> {})", sub(a), sub(b)),
        }
    }
}

/// `[f]`: the worlds satisfying `f`, by exhaustive truth-table evaluation.
pub fn models(f: &Formula, vocab: &Vocabulary) -> WorldSet {
    let bits = vocab
        .universe()
        .worlds()
        .filter(|w| f.eval(vocab, *w))
        .fold(0u32, |acc, w| acc | 1 << w.0);
    WorldSet(bits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token<'a> {
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    Ident(&'a str),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token<'_>)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'!' | b'~' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            b'<' if text[i..].starts_with("<->") => {
                i += 2;
                Token::Iff
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Token::Ident(&text[start..=i])
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: i, message: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, 'v> {
    tokens: Vec<(usize, Token<'a>)>,
    pos: usize,
    end: usize,
    vocab: &'v Vocabulary,
}

impl<'a> Parser<'a, '_> {
    fn peek(&self) -> Option<Token<'a>> {
        self.tokens.get(self.pos).map(|(_, t)| *t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: Token<'_>) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut lhs = self.implies()?;
        while self.eat(Token::Iff) {
            let rhs = self.implies()?;
            lhs = Formula::Iff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(Token::Implies) {
            let rhs = self.implies()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut lhs = self.and()?;
        while self.eat(Token::Or) {
            let rhs = self.and()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while self.eat(Token::And) {
            let rhs = self.unary()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula> {
        let at = self.offset();
        match self.peek() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(Token::RParen) {
                    return Err(Error::Syntax { pos: self.offset(), message: "expected `)`".into() });
                }
                Ok(inner)
            }
            Some(Token::Ident("T")) => {
                self.pos += 1;
                Ok(Formula::True)
            }
            Some(Token::Ident("F")) => {
                self.pos += 1;
                Ok(Formula::False)
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                self.vocab
                    .index_of(name)
                    .map(Formula::Atom)
                    .ok_or_else(|| Error::UnknownAtom(name.to_string()))
            }
            Some(_) => Err(Error::Syntax { pos: at, message: "expected a formula".into() }),
            None => Err(Error::Syntax { pos: at, message: "unexpected end of input".into() }),
        }
    }
}

pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0, end: text.len(), vocab };
    let f = parser.iff()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Syntax { pos: parser.offset(), message: "unexpected trailing input".into() });
    }
    Ok(f)
}

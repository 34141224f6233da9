//! Free-group words over named generators, the boundary word, and a text
//! parser for the word grammar
//!
//! ```text
//! word := term+ ; term := atom ('^' int)? ;
//! atom := NAME | '[' word ',' word ']' | '(' word ')' ;
//! NAME := (ip|im|z|g)[0-9]+
//! ```
//!
//! Products read left to right, whitespace or `*` separates terms and
//! `[a,b] = a b a^-1 b^-1`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    IMinus,
    Z,
    IPlus,
    Plain,
}

/// A named generator. `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: GenKind,
    pub index: u32,
}

impl Generator {
    pub fn iplus(index: u32) -> Self {
        assert!(index >= 1);
        Generator { kind: GenKind::IPlus, index }
    }
    pub fn iminus(index: u32) -> Self {
        assert!(index >= 1);
        Generator { kind: GenKind::IMinus, index }
    }
    pub fn z(index: u32) -> Self {
        assert!(index >= 1);
        Generator { kind: GenKind::Z, index }
    }
    pub fn plain(index: u32) -> Self {
        assert!(index >= 1);
        Generator { kind: GenKind::Plain, index }
    }

    pub fn name(&self) -> String {
        let prefix = match self.kind {
            GenKind::IPlus => "ip",
            GenKind::IMinus => "im",
            GenKind::Z => "z",
            GenKind::Plain => "g",
        };
        format!("{}{}", prefix, self.index)
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Name table for one presentation context. A generator is admitted when its
/// kind is enabled and its index lies within the recorded count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenTable {
    /// number of ip/im pairs (0 when the context is plain-only)
    pub pairs: u32,
    /// number of z extras
    pub extras: u32,
    /// number of plain generators g1..gn
    pub plain: u32,
}

impl GenTable {
    /// Context of an admissible presentation: im1..imn, z1..zl, ip1..ipn.
    pub fn presentation(rank: u32, extras: u32) -> Self {
        GenTable { pairs: rank, extras, plain: 0 }
    }

    /// Context of a free group on g1..gn.
    pub fn free(rank: u32) -> Self {
        GenTable { pairs: 0, extras: 0, plain: rank }
    }

    pub fn admits(&self, g: Generator) -> bool {
        match g.kind {
            GenKind::IPlus | GenKind::IMinus => g.index <= self.pairs,
            GenKind::Z => g.index <= self.extras,
            GenKind::Plain => g.index <= self.plain,
        }
    }

    /// Total number of generators in the context.
    pub fn len(&self) -> usize {
        (2 * self.pairs + self.extras + self.plain) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Position of a generator in the canonical ordering
    /// im1..imn, z1..zl, ip1..ipn, g1..gn.
    pub fn position(&self, g: Generator) -> Option<usize> {
        if !self.admits(g) {
            return None;
        }
        let i = g.index as usize - 1;
        Some(match g.kind {
            GenKind::IMinus => i,
            GenKind::Z => self.pairs as usize + i,
            GenKind::IPlus => (self.pairs + self.extras) as usize + i,
            GenKind::Plain => (2 * self.pairs + self.extras) as usize + i,
        })
    }

    /// Generators in canonical order.
    pub fn generators(&self) -> Vec<Generator> {
        let mut out = Vec::with_capacity(self.len());
        for i in 1..=self.pairs {
            out.push(Generator::iminus(i));
        }
        for i in 1..=self.extras {
            out.push(Generator::z(i));
        }
        for i in 1..=self.pairs {
            out.push(Generator::iplus(i));
        }
        for i in 1..=self.plain {
            out.push(Generator::plain(i));
        }
        out
    }
}

/// A freely reduced word: letters are (generator, ±1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<(Generator, i8)>,
}

impl Word {
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(g: Generator) -> Self {
        Word { letters: alloc::vec![(g, 1)] }
    }

    /// Builds a word from raw letters, freely reducing them.
    pub fn from_letters<I: IntoIterator<Item = (Generator, i8)>>(letters: I) -> Self {
        let mut out: Vec<(Generator, i8)> = Vec::new();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "letter exponent must be ±1");
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[(Generator, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(other.letters.iter()).copied())
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k >= 0 { self.clone() } else { self.invert() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `[a, b] = a b a^-1 b^-1`
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.multiply(b).multiply(&a.invert()).multiply(&b.invert())
    }

    /// Exponent vector over the context's generators in canonical order.
    /// Panics when a letter is outside the context.
    pub fn abelianize(&self, table: &GenTable) -> Vec<i64> {
        let mut v = alloc::vec![0i64; table.len()];
        for &(g, e) in &self.letters {
            let pos = table
                .position(g)
                .unwrap_or_else(|| panic!("generator {} outside context", g));
            v[pos] += e as i64;
        }
        v
    }

    /// Rewrites each generator through `f`, freely reducing the result.
    pub fn map_generators<F: Fn(Generator) -> Generator>(&self, f: F) -> Word {
        Word::from_letters(self.letters.iter().map(|&(g, e)| (f(g), e)))
    }

    /// Substitutes a word for each generator (an endomorphism application).
    pub fn substitute_words<F: Fn(Generator) -> Word>(&self, f: F) -> Word {
        let mut out = Word::identity();
        for &(g, e) in &self.letters {
            let img = f(g);
            out = out.multiply(&if e == 1 { img } else { img.invert() });
        }
        out
    }

    /// Serializes to the parser grammar, collapsing runs into `^k`.
    pub fn serialize(&self) -> String {
        if self.letters.is_empty() {
            return String::new();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let (g, e) = self.letters[i];
            let mut j = i + 1;
            while j < self.letters.len() && self.letters[j] == (g, e) {
                j += 1;
            }
            let run = (j - i) as i64 * e as i64;
            if run == 1 {
                parts.push(g.name());
            } else {
                parts.push(format!("{}^{}", g.name(), run));
            }
            i = j;
        }
        parts.join(" ")
    }
}

/// The boundary word ζ = [g1, g_{g+1}][g2, g_{g+2}] ... [g_g, g_{2g}]
/// in plain generators 1..2g.
pub fn boundary_word(genus: u32) -> Result<Word, ParseError> {
    if genus < 1 {
        return Err(ParseError {
            pos: 0,
            kind: ParseErrorKind::Invalid("genus must be >= 1"),
        });
    }
    let mut w = Word::identity();
    for i in 1..=genus {
        let a = Word::generator(Generator::plain(i));
        let b = Word::generator(Generator::plain(genus + i));
        w = w.multiply(&Word::commutator(&a, &b));
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownGenerator(String),
    MalformedExponent,
    Invalid(&'static str),
}

/// Syntax error with byte position into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(f, "unexpected character '{}' at position {}", c, self.pos)
            }
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnknownGenerator(n) => {
                write!(f, "unknown generator '{}' at position {}", n, self.pos)
            }
            ParseErrorKind::MalformedExponent => {
                write!(f, "malformed exponent at position {}", self.pos)
            }
            ParseErrorKind::Invalid(m) => write!(f, "{}", m),
        }
    }
}

struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
    table: &'a GenTable,
}

impl<'a> Parser<'a> {
    fn skip_sep(&mut self) {
        while self.pos < self.input.len() {
            let c = self.input[self.pos];
            if c == b' ' || c == b'\t' || c == b'*' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.input.get(self.pos).copied()
    }

    fn parse_word(&mut self) -> Result<Word, ParseError> {
        let mut w = Word::identity();
        let mut any = false;
        loop {
            self.skip_sep();
            match self.peek() {
                None | Some(b']') | Some(b')') | Some(b',') => break,
                _ => {}
            }
            w = w.multiply(&self.parse_term()?);
            any = true;
        }
        if !any {
            return Err(ParseError {
                pos: self.pos,
                kind: ParseErrorKind::Invalid("empty word"),
            });
        }
        Ok(w)
    }

    fn parse_term(&mut self) -> Result<Word, ParseError> {
        let atom = self.parse_atom()?;
        self.skip_sep();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.parse_int()?;
            Ok(atom.pow(k))
        } else {
            Ok(atom)
        }
    }

    fn parse_atom(&mut self) -> Result<Word, ParseError> {
        match self.peek() {
            None => Err(ParseError {
                pos: self.pos,
                kind: ParseErrorKind::UnexpectedEnd,
            }),
            Some(b'[') => {
                self.pos += 1;
                let a = self.parse_word()?;
                self.expect(b',')?;
                let b = self.parse_word()?;
                self.expect(b']')?;
                Ok(Word::commutator(&a, &b))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.parse_word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(c) if c.is_ascii_lowercase() => self.parse_name(),
            Some(c) => Err(ParseError {
                pos: self.pos,
                kind: ParseErrorKind::UnexpectedChar(c as char),
            }),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_sep();
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(ParseError {
                pos: self.pos,
                kind: ParseErrorKind::UnexpectedChar(d as char),
            }),
            None => Err(ParseError {
                pos: self.pos,
                kind: ParseErrorKind::UnexpectedEnd,
            }),
        }
    }

    fn parse_name(&mut self) -> Result<Word, ParseError> {
        let start = self.pos;
        while self
            .peek()
            .map(|c| c.is_ascii_lowercase())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        let prefix = &self.input[start..self.pos];
        let digits_start = self.pos;
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        let digits = &self.input[digits_start..self.pos];
        let name: String = core::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .into();
        let err = move || ParseError {
            pos: start,
            kind: ParseErrorKind::UnknownGenerator(name.clone()),
        };
        if digits.is_empty() {
            return Err(err());
        }
        let index: u32 = core::str::from_utf8(digits)
            .unwrap()
            .parse()
            .map_err(|_| err())?;
        if index == 0 {
            return Err(err());
        }
        let g = match prefix {
            b"ip" => Generator::iplus(index),
            b"im" => Generator::iminus(index),
            b"z" => Generator::z(index),
            b"g" => Generator::plain(index),
            _ => return Err(err()),
        };
        if !self.table.admits(g) {
            return Err(err());
        }
        Ok(Word::generator(g))
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            self.pos += 1;
        }
        core::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ParseError {
                pos: start,
                kind: ParseErrorKind::MalformedExponent,
            })
    }
}

/// Parses a word in the grammar above; all names must resolve in `table`.
pub fn parse_word(text: &str, table: &GenTable) -> Result<Word, ParseError> {
    let mut p = Parser {
        input: text.as_bytes(),
        pos: 0,
        table,
    };
    let w = p.parse_word()?;
    p.skip_sep();
    if let Some(c) = p.peek() {
        return Err(ParseError {
            pos: p.pos,
            kind: ParseErrorKind::UnexpectedChar(c as char),
        });
    }
    Ok(w)
}

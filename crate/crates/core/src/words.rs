//! Level-tagged words in the generators a_n, b_n: grammar, parsing,
//! printing, free-group-style normal forms, plus abstract two-letter words
//! for the relation finder.
//!
//! Grammar accepted by [`parse_word`] (whitespace insignificant):
//!
//! ```text
//! word    := product
//! product := factor ( '*' factor )*
//! factor  := primary ( '^' ( integer | '(' product ')' ) )*
//! primary := 'a' | 'b' | 'b' '(' integer ')' | '1'
//!          | '(' product ')' | '[' product ',' product ']'
//! ```
//!
//! `^k` is integer power, `^(w)` is conjugation y^-1 x y, `[u,v]` is the
//! commutator u^-1 v^-1 u v, and `b(i)` expands to a^-(i-1) b a^(i-1).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::PrimeSequence;

/// Hard ceiling on materialized word length; powers of compound words past
/// this fail with `WordTooLong` rather than eating the machine.
pub const MAX_WORD_LETTERS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    A,
    B,
}

/// One syllable: a generator with a nonzero exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub symbol: Symbol,
    pub exponent: BigInt,
}

impl Letter {
    pub fn a(exponent: impl Into<BigInt>) -> Self {
        Letter {
            symbol: Symbol::A,
            exponent: exponent.into(),
        }
    }

    pub fn b(exponent: impl Into<BigInt>) -> Self {
        Letter {
            symbol: Symbol::B,
            exponent: exponent.into(),
        }
    }
}

/// A freely reduced word at a fixed tree level: adjacent letters carry
/// distinct symbols and no exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    level: usize,
    letters: Vec<Letter>,
}

fn push_reduced(letters: &mut Vec<Letter>, letter: Letter) {
    if letter.exponent.is_zero() {
        return;
    }
    match letters.last_mut() {
        Some(top) if top.symbol == letter.symbol => {
            top.exponent += letter.exponent;
            if top.exponent.is_zero() {
                letters.pop();
            }
        }
        _ => letters.push(letter),
    }
}

impl Word {
    pub fn identity(level: usize) -> Self {
        Word {
            level,
            letters: Vec::new(),
        }
    }

    /// Build a word, freely reducing as letters arrive.
    pub fn from_letters(level: usize, letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut reduced = Vec::new();
        for letter in letters {
            push_reduced(&mut reduced, letter);
        }
        Word {
            level,
            letters: reduced,
        }
    }

    pub fn generator_a(level: usize) -> Self {
        Word::from_letters(level, [Letter::a(1)])
    }

    pub fn generator_b(level: usize) -> Self {
        Word::from_letters(level, [Letter::b(1)])
    }

    /// b(i) = a^-(i-1) b a^(i-1), exposed for indices of any size.
    pub fn b_conjugate(level: usize, index: &BigUint) -> Self {
        let shift = BigInt::from(index.clone()) - BigInt::one();
        Word::from_letters(
            level,
            [Letter::a(-shift.clone()), Letter::b(1), Letter::a(shift)],
        )
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    /// Word length in generator letters: the sum of |exponent|.
    pub fn generator_length(&self) -> BigUint {
        let mut total = BigUint::zero();
        for letter in &self.letters {
            total += letter.exponent.magnitude();
        }
        total
    }

    fn check_level(&self, other: &Word) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_level(other)?;
        let mut letters = self.letters.clone();
        for letter in &other.letters {
            push_reduced(&mut letters, letter.clone());
        }
        Ok(Word {
            level: self.level,
            letters,
        })
    }

    pub fn invert(&self) -> Word {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| Letter {
                symbol: l.symbol,
                exponent: -l.exponent.clone(),
            })
            .collect();
        Word {
            level: self.level,
            letters,
        }
    }

    /// x^y = y^-1 x y.
    pub fn conjugate(&self, by: &Word) -> Result<Word> {
        by.invert().multiply(self)?.multiply(by)
    }

    /// [x, y] = x^-1 y^-1 x y.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.invert()
            .multiply(&other.invert())?
            .multiply(self)?
            .multiply(other)
    }

    /// Integer power. Single-syllable bases go through exponent arithmetic;
    /// compound bases are repeated and therefore capped.
    pub fn pow(&self, exponent: &BigInt) -> Result<Word> {
        if exponent.is_zero() || self.letters.is_empty() {
            return Ok(Word::identity(self.level));
        }
        if self.letters.len() == 1 {
            let letter = &self.letters[0];
            return Ok(Word::from_letters(
                self.level,
                [Letter {
                    symbol: letter.symbol,
                    exponent: &letter.exponent * exponent,
                }],
            ));
        }
        let repeats = exponent.magnitude().to_usize().ok_or(Error::WordTooLong {
            letters: usize::MAX,
            cap: MAX_WORD_LETTERS,
        })?;
        let total = repeats.saturating_mul(self.letters.len());
        if total > MAX_WORD_LETTERS {
            return Err(Error::WordTooLong {
                letters: total,
                cap: MAX_WORD_LETTERS,
            });
        }
        let base = if exponent.is_negative() {
            self.invert()
        } else {
            self.clone()
        };
        let mut out = Word::identity(self.level);
        for _ in 0..repeats {
            out = out.multiply(&base)?;
        }
        Ok(out)
    }

    /// Signed totals of a- and b-exponents (the exponent-sum homomorphism).
    pub fn exponent_sums(&self) -> (BigInt, BigInt) {
        let mut alpha = BigInt::zero();
        let mut beta = BigInt::zero();
        for letter in &self.letters {
            match letter.symbol {
                Symbol::A => alpha += &letter.exponent,
                Symbol::B => beta += &letter.exponent,
            }
        }
        (alpha, beta)
    }

    /// Free reduction plus reduction of a-exponents modulo this level's
    /// prime (a_n has order l_n; b_n exponents are kept exact). The
    /// representative of smallest absolute value is chosen, ties positive.
    pub fn reduce_mod(&self, seq: &PrimeSequence) -> Result<Word> {
        let l = BigInt::from(seq.prime_at(self.level)?);
        let mut letters: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for letter in &self.letters {
            push_mod(&mut letters, letter.clone(), &l);
        }
        Ok(Word {
            level: self.level,
            letters,
        })
    }
}

/// Push onto a stack that stays fully reduced: a-exponents mod l, no zero
/// exponents, no adjacent equal symbols. Merges cascade through recursion.
fn push_mod(stack: &mut Vec<Letter>, letter: Letter, l: &BigInt) {
    let letter = match letter.symbol {
        Symbol::A => Letter::a(smallest_abs_mod(&letter.exponent, l)),
        Symbol::B => letter,
    };
    if letter.exponent.is_zero() {
        return;
    }
    match stack.last() {
        Some(top) if top.symbol == letter.symbol => {
            let mut merged = stack.pop().unwrap();
            merged.exponent += letter.exponent;
            push_mod(stack, merged, l);
        }
        _ => stack.push(letter),
    }
}

/// Representative of `e` mod `l` with smallest absolute value, positive on
/// ties; `l` must be positive.
fn smallest_abs_mod(e: &BigInt, l: &BigInt) -> BigInt {
    let r = e.mod_floor(l);
    let half = l / BigInt::from(2);
    if r > half {
        r - l
    } else {
        r
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_word(self))
    }
}

/// Print a word in the grammar; the empty word prints as "1".
pub fn render_word(word: &Word) -> String {
    if word.letters.is_empty() {
        return "1".to_string();
    }
    let parts: Vec<String> = word
        .letters
        .iter()
        .map(|letter| {
            let sym = match letter.symbol {
                Symbol::A => "a",
                Symbol::B => "b",
            };
            if letter.exponent.is_one() {
                sym.to_string()
            } else {
                format!("{sym}^{}", letter.exponent)
            }
        })
        .collect();
    parts.join("*")
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    level: usize,
    seq: &'a PrimeSequence,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", byte as char)))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.bytes.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .map(|b| b.is_ascii_digit())
            .unwrap_or(false)
        {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse().map_err(|_| self.err("integer out of range"))
    }

    fn product(&mut self) -> Result<Word> {
        let mut word = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            word = word.multiply(&self.factor()?)?;
        }
        Ok(word)
    }

    fn factor(&mut self) -> Result<Word> {
        let mut word = self.primary()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'(') {
                self.pos += 1;
                let by = self.product()?;
                self.eat(b')')?;
                word = word.conjugate(&by)?;
            } else {
                let exp = self.integer()?;
                word = word.pow(&exp)?;
            }
        }
        Ok(word)
    }

    fn primary(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'a') => {
                self.pos += 1;
                Ok(Word::generator_a(self.level))
            }
            Some(b'b') => {
                self.pos += 1;
                if self.peek() == Some(b'(') {
                    self.pos += 1;
                    let index = self.integer()?;
                    self.eat(b')')?;
                    let bound = self.seq.prime_at(self.level)?;
                    let index: BigUint = index.to_biguint().filter(|i| !i.is_zero()).ok_or_else(|| {
                        Error::IndexOutOfRange {
                            index: BigUint::zero(),
                            bound: bound.clone(),
                        }
                    })?;
                    if index > bound {
                        return Err(Error::IndexOutOfRange {
                            index,
                            bound,
                        });
                    }
                    Ok(Word::b_conjugate(self.level, &index))
                } else {
                    Ok(Word::generator_b(self.level))
                }
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(Word::identity(self.level))
            }
            Some(b'(') => {
                self.pos += 1;
                let word = self.product()?;
                self.eat(b')')?;
                Ok(word)
            }
            Some(b'[') => {
                self.pos += 1;
                let left = self.product()?;
                self.eat(b',')?;
                let right = self.product()?;
                self.eat(b']')?;
                left.commutator(&right)
            }
            Some(other) => Err(self.err(format!("unexpected '{}'", other as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse a word at the given level. The sequence supplies l_level for the
/// b(i) range check.
pub fn parse_word(text: &str, level: usize, seq: &PrimeSequence) -> Result<Word> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        level,
        seq,
    };
    if parser.peek().is_none() {
        return Err(parser.err("empty input (write \"1\" for the identity)"));
    }
    let word = parser.product()?;
    if parser.peek().is_some() {
        return Err(parser.err("trailing input"));
    }
    Ok(word)
}

/// One factor b(index)^exp of a canonical B-A form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BaFactor {
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub index: BigUint,
    #[serde(serialize_with = "crate::serde_util::bigint_str")]
    pub exp: BigInt,
}

/// Normal form g = prod_j b(i_j)^{e_j} * a^alpha with the rooted part on
/// the right; indices live in [1, l_n] and adjacent indices are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CanonicalBA {
    pub level: usize,
    #[serde(serialize_with = "crate::serde_util::biguint_str")]
    pub alpha: BigUint,
    pub factors: Vec<BaFactor>,
}

impl CanonicalBA {
    /// Reassemble prod b(i_j)^{e_j} * a^alpha as a word.
    pub fn reassemble(&self) -> Word {
        let mut letters = Vec::new();
        for factor in &self.factors {
            let shift = BigInt::from(factor.index.clone()) - BigInt::one();
            letters.push(Letter::a(-shift.clone()));
            letters.push(Letter::b(factor.exp.clone()));
            letters.push(Letter::a(shift));
        }
        letters.push(Letter::a(BigInt::from(self.alpha.clone())));
        Word::from_letters(self.level, letters)
    }

    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|f| {
                if f.exp.is_one() {
                    format!("b({})", f.index)
                } else {
                    format!("b({})^{}", f.index, f.exp)
                }
            })
            .collect();
        if !self.alpha.is_zero() {
            if self.alpha.is_one() {
                parts.push("a".into());
            } else {
                parts.push(format!("a^{}", self.alpha));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Index in [1, l] of the residue `x` mod l (l stands for 0).
fn one_based_mod(x: &BigInt, l: &BigUint) -> BigUint {
    let l_int = BigInt::from(l.clone());
    let r = (x - BigInt::one()).mod_floor(&l_int);
    (r + BigInt::one()).to_biguint().unwrap()
}

/// Scan left to right with a running a-prefix p: alpha accumulates all
/// a-exponents (mod l_n), and each b^e contributes the factor
/// (1 - p mod l_n, e). Adjacent equal-index factors merge.
pub fn canonical_ba_form(word: &Word, seq: &PrimeSequence) -> Result<CanonicalBA> {
    let l = seq.prime_at(word.level())?;
    let mut prefix = BigInt::zero();
    let mut factors: Vec<BaFactor> = Vec::new();
    for letter in word.letters() {
        match letter.symbol {
            Symbol::A => prefix += &letter.exponent,
            Symbol::B => {
                let index = one_based_mod(&(BigInt::one() - &prefix), &l);
                match factors.last_mut() {
                    Some(top) if top.index == index => {
                        top.exp += &letter.exponent;
                        if top.exp.is_zero() {
                            factors.pop();
                        }
                    }
                    _ => factors.push(BaFactor {
                        index,
                        exp: letter.exponent.clone(),
                    }),
                }
            }
        }
    }
    let alpha = prefix.mod_floor(&BigInt::from(l)).to_biguint().unwrap();
    Ok(CanonicalBA {
        level: word.level(),
        alpha,
        factors,
    })
}

/// The two abstract letters of relation words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FreeSymbol {
    X,
    Y,
}

impl fmt::Display for FreeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeSymbol::X => write!(f, "x"),
            FreeSymbol::Y => write!(f, "y"),
        }
    }
}

/// A freely reduced word in the abstract letters x, y.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeWord2 {
    letters: Vec<(FreeSymbol, BigInt)>,
}

impl FreeWord2 {
    pub fn identity() -> Self {
        FreeWord2::default()
    }

    pub fn generator(symbol: FreeSymbol) -> Self {
        FreeWord2 {
            letters: vec![(symbol, BigInt::one())],
        }
    }

    pub fn letters(&self) -> &[(FreeSymbol, BigInt)] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables after free reduction.
    pub fn syllables(&self) -> usize {
        self.letters.len()
    }

    fn push(&mut self, symbol: FreeSymbol, exponent: BigInt) {
        if exponent.is_zero() {
            return;
        }
        match self.letters.last_mut() {
            Some((top, e)) if *top == symbol => {
                *e += exponent;
                if e.is_zero() {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((symbol, exponent)),
        }
    }

    pub fn multiply(&self, other: &FreeWord2) -> FreeWord2 {
        let mut out = self.clone();
        for (symbol, exponent) in &other.letters {
            out.push(*symbol, exponent.clone());
        }
        out
    }

    pub fn invert(&self) -> FreeWord2 {
        FreeWord2 {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(s, e)| (*s, -e.clone()))
                .collect(),
        }
    }

    pub fn conjugate(&self, by: &FreeWord2) -> FreeWord2 {
        by.invert().multiply(self).multiply(by)
    }

    pub fn commutator(&self, other: &FreeWord2) -> FreeWord2 {
        self.invert()
            .multiply(&other.invert())
            .multiply(self)
            .multiply(other)
    }

    pub fn pow(&self, exponent: &BigInt) -> Result<FreeWord2> {
        if exponent.is_zero() || self.letters.is_empty() {
            return Ok(FreeWord2::identity());
        }
        if self.letters.len() == 1 {
            let (symbol, e) = &self.letters[0];
            let mut out = FreeWord2::identity();
            out.push(*symbol, e * exponent);
            return Ok(out);
        }
        let repeats = exponent.magnitude().to_usize().ok_or(Error::WordTooLong {
            letters: usize::MAX,
            cap: MAX_WORD_LETTERS,
        })?;
        if repeats.saturating_mul(self.letters.len()) > MAX_WORD_LETTERS {
            return Err(Error::WordTooLong {
                letters: repeats.saturating_mul(self.letters.len()),
                cap: MAX_WORD_LETTERS,
            });
        }
        let base = if exponent.is_negative() {
            self.invert()
        } else {
            self.clone()
        };
        let mut out = FreeWord2::identity();
        for _ in 0..repeats {
            out = out.multiply(&base);
        }
        Ok(out)
    }

    /// Evaluate at (g1, g2): substitute x -> g1, y -> g2.
    pub fn substitute(&self, g1: &Word, g2: &Word) -> Result<Word> {
        g1.check_level(g2)?;
        let mut out = Word::identity(g1.level());
        for (symbol, exponent) in &self.letters {
            let base = match symbol {
                FreeSymbol::X => g1,
                FreeSymbol::Y => g2,
            };
            out = out.multiply(&base.pow(exponent)?)?;
        }
        Ok(out)
    }
}

impl fmt::Display for FreeWord2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(s, e)| {
                if e.is_one() {
                    s.to_string()
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Structured symbolic expression over x, y; keeps the commutator shape of
/// relation words readable where the flat form would obscure it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymExpr {
    X,
    Y,
    Pow(Box<SymExpr>, BigInt),
    Conj(Box<SymExpr>, Box<SymExpr>),
    Comm(Box<SymExpr>, Box<SymExpr>),
}

impl SymExpr {
    pub fn pow(self, exponent: BigInt) -> SymExpr {
        SymExpr::Pow(Box::new(self), exponent)
    }

    pub fn conj(self, by: SymExpr) -> SymExpr {
        SymExpr::Conj(Box::new(self), Box::new(by))
    }

    pub fn comm(left: SymExpr, right: SymExpr) -> SymExpr {
        SymExpr::Comm(Box::new(left), Box::new(right))
    }

    pub fn flatten(&self) -> Result<FreeWord2> {
        Ok(match self {
            SymExpr::X => FreeWord2::generator(FreeSymbol::X),
            SymExpr::Y => FreeWord2::generator(FreeSymbol::Y),
            SymExpr::Pow(base, exponent) => base.flatten()?.pow(exponent)?,
            SymExpr::Conj(base, by) => base.flatten()?.conjugate(&by.flatten()?),
            SymExpr::Comm(left, right) => left.flatten()?.commutator(&right.flatten()?),
        })
    }
}

impl fmt::Display for SymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymExpr::X => write!(f, "x"),
            SymExpr::Y => write!(f, "y"),
            SymExpr::Pow(base, exponent) => match **base {
                SymExpr::X | SymExpr::Y | SymExpr::Comm(..) => write!(f, "{base}^{exponent}"),
                _ => write!(f, "({base})^{exponent}"),
            },
            SymExpr::Conj(base, by) => match **base {
                SymExpr::X | SymExpr::Y | SymExpr::Comm(..) => write!(f, "{base}^({by})"),
                _ => write!(f, "({base})^({by})"),
            },
            SymExpr::Comm(left, right) => write!(f, "[{left},{right}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq() -> PrimeSequence {
        PrimeSequence::from_u64(&[7, 11, 13]).unwrap()
    }

    #[test]
    fn parse_examples() {
        let s = seq();
        let comm = parse_word("[a,b]", 0, &s).unwrap();
        assert_eq!(
            comm.letters(),
            &[Letter::a(-1), Letter::b(-1), Letter::a(1), Letter::b(1)]
        );
        let b2 = parse_word("b(2)", 0, &s).unwrap();
        assert_eq!(b2.letters(), &[Letter::a(-1), Letter::b(1), Letter::a(1)]);
        assert!(parse_word("b^0", 0, &s).unwrap().is_identity());
        assert!(parse_word("1", 0, &s).unwrap().is_identity());
    }

    #[test]
    fn parse_rejects_bad_input() {
        let s = seq();
        assert!(matches!(parse_word("a*", 0, &s), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("c", 0, &s), Err(Error::Parse { .. })));
        assert!(matches!(parse_word("", 0, &s), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_word("b(8)", 0, &s),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_word("b(0)", 0, &s),
            Err(Error::IndexOutOfRange { .. })
        ));
        // b(8) is fine one level down where the valency is 11.
        assert!(parse_word("b(8)", 1, &s).is_ok());
    }

    #[test]
    fn render_examples() {
        let s = seq();
        assert_eq!(render_word(&Word::identity(0)), "1");
        let w = parse_word("a^2*b^-1", 0, &s).unwrap();
        assert_eq!(render_word(&w), "a^2*b^-1");
    }

    #[test]
    fn algebra_examples() {
        let s = seq();
        let a = parse_word("a", 0, &s).unwrap();
        assert!(a.multiply(&a.invert()).unwrap().is_identity());
        let b = parse_word("b", 0, &s).unwrap();
        let conj = b.conjugate(&a).unwrap();
        assert_eq!(conj, parse_word("a^-1*b*a", 0, &s).unwrap());
        assert!(b.commutator(&b).unwrap().is_identity());
        assert!(matches!(
            b.multiply(&Word::generator_b(1)),
            Err(Error::LevelMismatch { .. })
        ));
    }

    #[test]
    fn conjugation_parse_matches_algebra() {
        let s = seq();
        let parsed = parse_word("b^(a^6)*a", 0, &s).unwrap();
        let built = Word::generator_b(0)
            .conjugate(&Word::generator_a(0).pow(&BigInt::from(6)).unwrap())
            .unwrap()
            .multiply(&Word::generator_a(0))
            .unwrap();
        assert_eq!(parsed, built);
    }

    #[test]
    fn canonical_ba_examples() {
        let s = seq();
        let b = parse_word("b", 0, &s).unwrap();
        let c = canonical_ba_form(&b, &s).unwrap();
        assert!(c.alpha.is_zero());
        assert_eq!(c.factors.len(), 1);
        assert_eq!(c.factors[0].index, BigUint::from(1u32));
        assert_eq!(c.factors[0].exp, BigInt::one());

        let bab = parse_word("b*a*b", 0, &s).unwrap();
        let c = canonical_ba_form(&bab, &s).unwrap();
        assert_eq!(c.alpha, BigUint::one());
        assert_eq!(
            c.factors,
            vec![
                BaFactor {
                    index: BigUint::from(1u32),
                    exp: BigInt::one()
                },
                BaFactor {
                    index: BigUint::from(7u32),
                    exp: BigInt::one()
                },
            ]
        );
        assert_eq!(c.render(), "b(1)*b(7)*a");

        let a3 = parse_word("a^3", 0, &s).unwrap();
        let c = canonical_ba_form(&a3, &s).unwrap();
        assert_eq!(c.alpha, BigUint::from(3u32));
        assert!(c.factors.is_empty());
    }

    #[test]
    fn exponent_sum_examples() {
        let s = seq();
        assert_eq!(
            parse_word("a*b*a*b^-1", 0, &s).unwrap().exponent_sums(),
            (BigInt::from(2), BigInt::zero())
        );
        assert_eq!(
            parse_word("[a,b]", 0, &s).unwrap().exponent_sums(),
            (BigInt::zero(), BigInt::zero())
        );
        assert_eq!(
            parse_word("b^77", 0, &s).unwrap().exponent_sums(),
            (BigInt::zero(), BigInt::from(77))
        );
    }

    #[test]
    fn reduce_mod_collapses_generator_orders() {
        let s = seq();
        let w = parse_word("a*b*a^-7*b^-1*a^6", 0, &s).unwrap();
        // a^-7 vanishes, b*b^-1 merges away, a*a^6 = a^7 vanishes.
        assert!(w.reduce_mod(&s).unwrap().is_identity());
        let w = parse_word("a^4", 0, &s).unwrap();
        assert_eq!(w.reduce_mod(&s).unwrap().letters(), &[Letter::a(-3)]);
        // b exponents are never reduced.
        let w = parse_word("b^77", 0, &s).unwrap();
        assert_eq!(w.reduce_mod(&s).unwrap().letters(), &[Letter::b(77)]);
    }

    #[test]
    fn free_word_reduction_and_render() {
        let x = FreeWord2::generator(FreeSymbol::X);
        let y = FreeWord2::generator(FreeSymbol::Y);
        let comm = x.commutator(&y);
        assert_eq!(comm.to_string(), "x^-1*y^-1*x*y");
        assert!(comm.multiply(&comm.invert()).is_identity());
        let expr = SymExpr::comm(SymExpr::X, SymExpr::Y);
        assert_eq!(expr.to_string(), "[x,y]");
        assert_eq!(expr.flatten().unwrap(), comm);
        let conj = SymExpr::comm(
            SymExpr::comm(SymExpr::X, SymExpr::Y),
            SymExpr::comm(SymExpr::X, SymExpr::Y).conj(SymExpr::X.pow(BigInt::from(4))),
        );
        assert_eq!(conj.to_string(), "[[x,y],[x,y]^(x^4)]");
        assert!(!conj.flatten().unwrap().is_identity());
    }

    #[test]
    fn substitution_evaluates_relation_words() {
        let s = seq();
        let a = parse_word("a", 0, &s).unwrap();
        let a3 = parse_word("a^3", 0, &s).unwrap();
        let comm = FreeWord2::generator(FreeSymbol::X).commutator(&FreeWord2::generator(FreeSymbol::Y));
        // Powers of a commute, so [x,y](a, a^3) collapses freely.
        assert!(comm.substitute(&a, &a3).unwrap().is_identity());
    }
}

//! Weighted Dyck words: words over `{x_i, y_i}` whose underlying `{x, y}`
//! word is a Dyck word and whose coupled letters share a weight.
//!
//! Text form: every couple is written `(i ... )`, tokens separated by a single
//! space, so `x2 x1 y1 y2 x3 y3` renders as `(2 (1 ) ) (3 )`. The empty word
//! renders as the empty string. Parsing ignores whitespace.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DyckError {
    #[error("word is unbalanced: {open} couple(s) left open")]
    Unbalanced { open: usize },
    #[error("prefix ending at position {position} has more down steps than up steps")]
    PrefixViolation { position: usize },
    #[error("couple ({open}, {close}) has mismatched weights")]
    CoupleWeightMismatch { open: usize, close: usize },
    #[error("weight at position {position} must be positive")]
    ZeroWeight { position: usize },
    #[error("the empty word has no first-return decomposition")]
    EmptyWord,
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

/// Up steps sort before down steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
}

/// One letter: `x_i` is `Up` with weight `i`, `y_i` is `Down` with weight `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    pub step: Step,
    pub weight: u32,
}

impl Token {
    pub fn up(weight: u32) -> Self {
        Token {
            step: Step::Up,
            weight,
        }
    }

    pub fn down(weight: u32) -> Self {
        Token {
            step: Step::Down,
            weight,
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Step::Up => write!(f, "x{}", self.weight),
            Step::Down => write!(f, "y{}", self.weight),
        }
    }
}

/// A validated weighted Dyck word.
///
/// Words are ordered by length first, then lexicographically by token.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct WeightedDyckWord {
    tokens: Vec<Token>,
}

impl WeightedDyckWord {
    /// The empty word, which encodes the single-vertex tree.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checks the Dyck condition and couple weights, reporting the first violation.
    pub fn validate(tokens: Vec<Token>) -> Result<Self, DyckError> {
        let mut open: Vec<usize> = Vec::new();
        for (position, token) in tokens.iter().enumerate() {
            if token.weight == 0 {
                return Err(DyckError::ZeroWeight { position });
            }
            match token.step {
                Step::Up => open.push(position),
                Step::Down => {
                    let start = open.pop().ok_or(DyckError::PrefixViolation { position })?;
                    if tokens[start].weight != token.weight {
                        return Err(DyckError::CoupleWeightMismatch {
                            open: start,
                            close: position,
                        });
                    }
                }
            }
        }
        if !open.is_empty() {
            return Err(DyckError::Unbalanced { open: open.len() });
        }
        Ok(WeightedDyckWord { tokens })
    }

    pub(crate) fn from_tokens_unchecked(tokens: Vec<Token>) -> Self {
        debug_assert!(Self::validate(tokens.clone()).is_ok());
        WeightedDyckWord { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Sum of couple weights.
    pub fn weight(&self) -> usize {
        self.tokens
            .iter()
            .filter(|t| t.step == Step::Up)
            .map(|t| t.weight as usize)
            .sum()
    }

    /// Number of couples, i.e. edges of the encoded tree.
    pub fn edge_count(&self) -> usize {
        self.tokens.len() / 2
    }

    /// Pairs each up position with its coupled down position, ordered by the
    /// up position. The first pair is the root edge.
    pub fn couple_match(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::with_capacity(self.edge_count());
        let mut open = Vec::new();
        for (position, token) in self.tokens.iter().enumerate() {
            match token.step {
                Step::Up => {
                    open.push(pairs.len());
                    pairs.push((position, usize::MAX));
                }
                Step::Down => {
                    let slot = open.pop().expect("validated word");
                    pairs[slot].1 = position;
                }
            }
        }
        pairs
    }

    /// First-return factorization `w = x_i u y_i v`.
    pub fn decompose(&self) -> Result<(u32, WeightedDyckWord, WeightedDyckWord), DyckError> {
        let first = self.tokens.first().ok_or(DyckError::EmptyWord)?;
        let close = first_return(&self.tokens);
        let u = Self::from_tokens_unchecked(self.tokens[1..close].to_vec());
        let v = Self::from_tokens_unchecked(self.tokens[close + 1..].to_vec());
        Ok((first.weight, u, v))
    }

    /// Builds `x_i u y_i v`.
    pub fn compose(
        weight: u32,
        u: &WeightedDyckWord,
        v: &WeightedDyckWord,
    ) -> Result<WeightedDyckWord, DyckError> {
        if weight == 0 {
            return Err(DyckError::ZeroWeight { position: 0 });
        }
        Ok(compose_unchecked(weight, u, v))
    }

    /// Letter notation, e.g. `x2 x1 y1 y2`.
    pub fn to_letters(&self) -> String {
        self.tokens
            .iter()
            .map(Token::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn first_return(tokens: &[Token]) -> usize {
    let mut depth = 0usize;
    for (i, t) in tokens.iter().enumerate() {
        match t.step {
            Step::Up => depth += 1,
            Step::Down => {
                depth -= 1;
                if depth == 0 {
                    return i;
                }
            }
        }
    }
    unreachable!("validated word always returns to the axis")
}

fn compose_unchecked(weight: u32, u: &WeightedDyckWord, v: &WeightedDyckWord) -> WeightedDyckWord {
    let mut tokens = Vec::with_capacity(u.len() + v.len() + 2);
    tokens.push(Token::up(weight));
    tokens.extend_from_slice(&u.tokens);
    tokens.push(Token::down(weight));
    tokens.extend_from_slice(&v.tokens);
    WeightedDyckWord { tokens }
}

impl Ord for WeightedDyckWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tokens
            .len()
            .cmp(&other.tokens.len())
            .then_with(|| self.tokens.cmp(&other.tokens))
    }
}

impl PartialOrd for WeightedDyckWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WeightedDyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match t.step {
                Step::Up => write!(f, "({}", t.weight)?,
                Step::Down => f.write_str(")")?,
            }
        }
        Ok(())
    }
}

impl FromStr for WeightedDyckWord {
    type Err = DyckError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_text(s)
    }
}

/// Parses the text form. Errors carry the byte offset of the offending input;
/// an unclosed couple is reported at the end of input.
pub fn parse_text(s: &str) -> Result<WeightedDyckWord, DyckError> {
    let bytes = s.as_bytes();
    let syntax = |offset: usize, message: &str| DyckError::Syntax {
        offset,
        message: message.to_string(),
    };
    let mut tokens = Vec::new();
    let mut open: Vec<u32> = Vec::new();
    let mut pos = 0;
    let skip_ws = |mut p: usize| {
        while p < bytes.len() && bytes[p].is_ascii_whitespace() {
            p += 1;
        }
        p
    };
    loop {
        pos = skip_ws(pos);
        let Some(&c) = bytes.get(pos) else { break };
        match c {
            b'(' => {
                pos = skip_ws(pos + 1);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(syntax(start, "expected couple weight"));
                }
                let weight: u32 = s[start..pos]
                    .parse()
                    .map_err(|_| syntax(start, "couple weight out of range"))?;
                if weight == 0 {
                    return Err(syntax(start, "couple weight must be positive"));
                }
                open.push(weight);
                tokens.push(Token::up(weight));
            }
            b')' => {
                let weight = open.pop().ok_or_else(|| syntax(pos, "unmatched ')'"))?;
                tokens.push(Token::down(weight));
                pos += 1;
            }
            _ => return Err(syntax(pos, "unexpected character")),
        }
    }
    if !open.is_empty() {
        return Err(syntax(bytes.len(), "unclosed couple"));
    }
    Ok(WeightedDyckWord { tokens })
}

pub fn render_text(word: &WeightedDyckWord) -> String {
    word.to_string()
}

/// Every weighted Dyck word of weight `n`, generated lazily from
/// `D = ε + Σ_i x_i D y_i D`.
///
/// Order: root weight ascending, then the weight of the inner factor `u`
/// ascending, then `u` in this same order, then `v`. Sub-enumerations are
/// recomputed rather than stored; see [`WordCache`] for the memoized variant.
pub fn enumerate_words(n: usize) -> Box<dyn Iterator<Item = WeightedDyckWord>> {
    if n == 0 {
        return Box::new(std::iter::once(WeightedDyckWord::empty()));
    }
    Box::new((1..=n).flat_map(move |i| {
        (0..=n - i).flat_map(move |k| {
            enumerate_words(k).flat_map(move |u| {
                enumerate_words(n - i - k).map(move |v| compose_unchecked(i as u32, &u, &v))
            })
        })
    }))
}

/// Words of weight `n` with exactly `m` couples.
pub fn enumerate_words_with_edges(n: usize, m: usize) -> impl Iterator<Item = WeightedDyckWord> {
    enumerate_words(n).filter(move |w| w.edge_count() == m)
}

/// Memoized word lists per weight, in the same order as [`enumerate_words`].
#[derive(Debug, Default)]
pub struct WordCache {
    levels: Vec<Vec<WeightedDyckWord>>,
}

impl WordCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn words(&mut self, n: usize) -> &[WeightedDyckWord] {
        while self.levels.len() <= n {
            let w = self.levels.len();
            let level = if w == 0 {
                vec![WeightedDyckWord::empty()]
            } else {
                let mut out = Vec::new();
                for i in 1..=w {
                    for k in 0..=w - i {
                        for u in &self.levels[k] {
                            for v in &self.levels[w - i - k] {
                                out.push(compose_unchecked(i as u32, u, v));
                            }
                        }
                    }
                }
                out
            };
            self.levels.push(level);
        }
        &self.levels[n]
    }
}

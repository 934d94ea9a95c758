use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

/// One growth instruction. The textual alphabet is `B`, `b`, `R`, `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `B`: new blue vertex.
    NewBlue,
    /// `b`: blue endpoint steps along the boundary.
    StepBlue,
    /// `R`: new red vertex.
    NewRed,
    /// `r`: red endpoint steps along the boundary.
    StepRed,
}

impl Letter {
    pub const ALL: [Letter; 4] = [
        Letter::NewBlue,
        Letter::StepBlue,
        Letter::NewRed,
        Letter::StepRed,
    ];

    pub fn to_char(self) -> char {
        match self {
            Letter::NewBlue => 'B',
            Letter::StepBlue => 'b',
            Letter::NewRed => 'R',
            Letter::StepRed => 'r',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'B' => Some(Letter::NewBlue),
            'b' => Some(Letter::StepBlue),
            'R' => Some(Letter::NewRed),
            'r' => Some(Letter::StepRed),
            _ => None,
        }
    }

    /// The time-reversal partner: `B' = b`, `R' = r`, `b' = B`, `r' = R`.
    pub fn prime(self) -> Letter {
        match self {
            Letter::NewBlue => Letter::StepBlue,
            Letter::StepBlue => Letter::NewBlue,
            Letter::NewRed => Letter::StepRed,
            Letter::StepRed => Letter::NewRed,
        }
    }

    /// Increment of the encoding walk.
    pub fn increment(self) -> (i64, i64) {
        match self {
            Letter::NewBlue => (1, 0),
            Letter::StepBlue => (-1, 0),
            Letter::NewRed => (0, 1),
            Letter::StepRed => (0, -1),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid letter {found:?} at position {position}; the alphabet is B, b, R, r")]
pub struct ParseWordError {
    pub position: usize,
    pub found: char,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// I.i.d. uniform letters.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Word((0..n).map(|_| Letter::ALL[rng.gen_range(0..4)]).collect())
    }

    /// All `4^n` words of length `n`, in lexicographic order of letter index.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = Word> {
        (0..4usize.pow(n as u32)).map(move |mut code| {
            let mut letters = Vec::with_capacity(n);
            for _ in 0..n {
                letters.push(Letter::ALL[code % 4]);
                code /= 4;
            }
            Word(letters)
        })
    }

    pub fn prefix(&self, m: usize) -> Word {
        Word(self.0[..m.min(self.0.len())].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start.min(self.0.len())..].to_vec())
    }
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .enumerate()
            .map(|(position, c)| Letter::from_char(c).ok_or(ParseWordError { position, found: c }))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// `Z = y'_m ... y'_1 x_1 ... x_n`, the word whose growth rooted at step
/// `m + 1` reproduces `T_+(X)` glued to `T_-(Y)`.
pub fn glue_word(x: &Word, y: &Word) -> Word {
    let mut z: Vec<Letter> = y.0.iter().rev().map(|l| l.prime()).collect();
    z.extend_from_slice(&x.0);
    Word(z)
}

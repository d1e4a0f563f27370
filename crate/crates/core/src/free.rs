//! Free groups as freely reduced words.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{mismatch, Error, Result};
use crate::group::Group;

/// Letters are `±1..=±rank`; the word is always freely reduced.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for x in letters {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        FreeWord(out)
    }

    pub fn generator(i: usize) -> Self {
        FreeWord(vec![i as i32 + 1])
    }

    /// Parses `"a b^-1 a"`; letters are `a..z`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let mut chars = name.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::Parse(format!("bad free-group letter {tok:?}")));
            };
            if !c.is_ascii_lowercase() {
                return Err(Error::Parse(format!("bad free-group letter {tok:?}")));
            }
            let x = (c as u8 - b'a') as i32 + 1;
            letters.push(if inverse { -x } else { x });
        }
        Ok(FreeWord::from_letters(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, &x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let c = (b'a' + (x.unsigned_abs() - 1) as u8) as char;
            if x < 0 {
                write!(f, "{c}^-1")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FreeWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        assert!(rank <= 26, "letters are a..z");
        FreeGroup { rank }
    }

    pub fn generators(&self) -> Vec<FreeWord> {
        (0..self.rank).map(FreeWord::generator).collect()
    }
}

impl Group for FreeGroup {
    type Elem = FreeWord;

    fn describe(&self) -> String {
        format!("F_{}", self.rank)
    }

    fn identity(&self) -> FreeWord {
        FreeWord::default()
    }

    fn check(&self, a: &FreeWord) -> Result<()> {
        match a.0.iter().find(|x| x.unsigned_abs() as usize > self.rank) {
            Some(x) => Err(mismatch(self.describe(), format!("word with letter {x}"))),
            None => Ok(()),
        }
    }

    fn op(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        FreeWord::from_letters(a.0.iter().chain(&b.0).copied())
    }

    fn inverse(&self, a: &FreeWord) -> FreeWord {
        FreeWord(a.0.iter().rev().map(|x| -x).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{commutator, mul};

    #[test]
    fn free_reduction() {
        let f = FreeGroup::new(2);
        let a = FreeWord::parse("a b").unwrap();
        let b = FreeWord::parse("b^-1 a^-1").unwrap();
        assert_eq!(mul(&f, &a, &b).unwrap(), f.identity());
        let c = commutator(&f, &FreeWord::generator(0), &FreeWord::generator(1)).unwrap();
        assert_eq!(c.to_string(), "a b a^-1 b^-1");
        assert_eq!(FreeWord::parse(&c.to_string()).unwrap(), c);
        assert!(f.check(&FreeWord::parse("c").unwrap()).is_err());
    }
}

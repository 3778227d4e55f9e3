use std::fmt;

use crate::error::{invalid, Result};

use super::check_n;

/// Hamming weight of a packed word.
#[inline]
pub fn weight(x: u32) -> usize {
    x.count_ones() as usize
}

/// A point of the `n`-dimensional Hamming cube. Coordinate `i` is bit `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: u32,
    n: u8,
}

impl Word {
    pub fn new(bits: u32, n: usize) -> Result<Self> {
        check_n(n)?;
        if n < 32 && bits >> n != 0 {
            return Err(invalid(format!("word {bits:#x} does not fit in {n} bits")));
        }
        Ok(Word { bits, n: n as u8 })
    }

    pub fn zero(n: usize) -> Result<Self> {
        Word::new(0, n)
    }

    /// Parses a `0`/`1` string; character `i` is coordinate `i`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' if i < 32 => bits |= 1 << i,
                _ => return Err(invalid(format!("bad bit string {s:?}"))),
            }
        }
        Word::new(bits, s.len())
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn weight(self) -> usize {
        weight(self.bits)
    }

    pub fn distance(self, other: Word) -> Result<usize> {
        if self.n != other.n {
            return Err(crate::Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(weight(self.bits ^ other.bits))
    }

    /// Inner product over GF(2).
    pub fn dot(self, other: Word) -> u32 {
        (self.bits & other.bits).count_ones() & 1
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        let w = Word::parse("1101000").unwrap();
        assert_eq!(w.bits(), 0b1011);
        assert_eq!(w.weight(), 3);
        assert_eq!(w.to_string(), "1101000");
    }

    #[test]
    fn rejects_oversized() {
        assert!(Word::new(8, 3).is_err());
        assert!(Word::new(0, 0).is_err());
        assert!(Word::new(0, 31).is_err());
        assert!(Word::new(u32::MAX >> 2, 30).is_ok());
    }

    #[test]
    fn distance_requires_same_length() {
        let a = Word::parse("0110").unwrap();
        let b = Word::parse("1100").unwrap();
        assert_eq!(a.distance(b).unwrap(), 2);
        assert!(a.distance(Word::zero(5).unwrap()).is_err());
        assert_eq!(a.dot(b), 1);
    }
}

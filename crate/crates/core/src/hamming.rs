//! Bit words and Hamming arithmetic.
//!
//! Position `i` of a word is the coefficient of `2^i`. When transcribing a
//! written bit string, its leftmost character is position 0.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_WIDTH: u32 = 32;

/// An `N`-bit word, `N` a power of two in `2..=32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: u32,
    width: u32,
}

pub fn check_width(width: u32) -> Result<()> {
    if !(2..=MAX_WIDTH).contains(&width) || !width.is_power_of_two() {
        return Err(Error::usage(format!(
            "word length {width} must be a power of two in 2..={MAX_WIDTH}"
        )));
    }
    Ok(())
}

#[inline]
pub(crate) fn width_mask(width: u32) -> u32 {
    if width >= 32 {
        u32::MAX
    } else {
        (1u32 << width) - 1
    }
}

impl Word {
    pub fn new(bits: u32, width: u32) -> Result<Self> {
        check_width(width)?;
        if bits & !width_mask(width) != 0 {
            return Err(Error::usage(format!(
                "bits {bits:#x} exceed word length {width}"
            )));
        }
        Ok(Word { bits, width })
    }

    /// Callers guarantee a valid width and no stray high bits.
    #[inline]
    pub(crate) const fn from_raw(bits: u32, width: u32) -> Self {
        Word { bits, width }
    }

    /// Parses a bit string such as `"111111000000"` with position 0 leftmost.
    /// Separators `·`, `.`, and spaces are ignored.
    pub fn from_bit_string(s: &str, width: u32) -> Result<Self> {
        let mut bits = 0u32;
        let mut pos = 0u32;
        for ch in s.chars() {
            match ch {
                '0' | '1' => {
                    if pos >= width {
                        return Err(Error::usage(format!(
                            "bit string {s:?} longer than {width}"
                        )));
                    }
                    if ch == '1' {
                        bits |= 1 << pos;
                    }
                    pos += 1;
                }
                '·' | '.' | ' ' => {}
                _ => return Err(Error::usage(format!("bad character {ch:?} in bit string"))),
            }
        }
        if pos != width {
            return Err(Error::usage(format!(
                "bit string {s:?} has {pos} bits, expected {width}"
            )));
        }
        Word::new(bits, width)
    }

    #[inline]
    pub const fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub const fn width(self) -> u32 {
        self.width
    }

    #[inline]
    pub const fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    #[inline]
    pub const fn bit(self, pos: u32) -> bool {
        (self.bits >> pos) & 1 == 1
    }

    /// Bitwise negation restricted to positions `< N`.
    #[inline]
    pub fn complement(self) -> Word {
        Word::from_raw(!self.bits & width_mask(self.width), self.width)
    }

    pub fn xor(self, other: Word) -> Result<Word> {
        same_width(self, other)?;
        Ok(Word::from_raw(self.bits ^ other.bits, self.width))
    }

    /// Support positions in ascending order.
    pub fn support(self) -> impl Iterator<Item = u32> {
        let bits = self.bits;
        (0..self.width).filter(move |&i| (bits >> i) & 1 == 1)
    }

    /// Zero-padded lowercase hex with `N/4` digits (at least one).
    pub fn to_hex(self) -> String {
        let digits = (self.width as usize).div_ceil(4);
        format!("{:0digits$x}", self.bits)
    }

    pub fn from_hex(s: &str, width: u32) -> Result<Self> {
        let digits = (width as usize).div_ceil(4);
        if s.len() != digits {
            return Err(Error::usage(format!(
                "hex word {s:?} should have {digits} digits for N={width}"
            )));
        }
        let bits = u32::from_str_radix(s, 16)
            .map_err(|e| Error::usage(format!("bad hex word {s:?}: {e}")))?;
        Word::new(bits, width)
    }

    /// The written bit string, position 0 first.
    pub fn to_bit_string(self) -> String {
        (0..self.width)
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.to_hex())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn same_width(a: Word, b: Word) -> Result<()> {
    if a.width != b.width {
        return Err(Error::usage(format!(
            "word lengths differ: {} vs {}",
            a.width, b.width
        )));
    }
    Ok(())
}

/// Hamming distance: the weight of `a XOR b`.
pub fn distance(a: Word, b: Word) -> Result<u32> {
    same_width(a, b)?;
    Ok((a.bits ^ b.bits).count_ones())
}

#[inline]
pub(crate) fn raw_distance(a: u32, b: u32) -> u32 {
    (a ^ b).count_ones()
}

/// Free-function form of [`Word::complement`]; checks that `width` matches.
pub fn complement(a: Word, width: u32) -> Result<Word> {
    if a.width != width {
        return Err(Error::usage(format!(
            "word of length {} complemented at N={width}",
            a.width
        )));
    }
    Ok(a.complement())
}

/// All weight-`k` words of length `width`, ascending.
pub fn enumerate_level(width: u32, k: u32) -> Result<Vec<Word>> {
    check_width(width)?;
    if k > width {
        return Err(Error::usage(format!("level {k} outside 0..={width}")));
    }
    Ok(LevelIter::new(width, k).collect())
}

/// Gosper's hack over weight-`k` words in ascending order.
#[derive(Debug, Clone)]
pub(crate) struct LevelIter {
    next: Option<u64>,
    limit: u64,
    width: u32,
}

impl LevelIter {
    pub(crate) fn new(width: u32, k: u32) -> Self {
        let limit = 1u64 << width;
        let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
        LevelIter {
            next: (k <= width).then_some(first),
            limit,
            width,
        }
    }
}

impl Iterator for LevelIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(Word::from_raw(cur as u32, self.width))
    }
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `n` answer bits and `N = 2^n` question bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameSize {
    n: u32,
}

impl GameSize {
    pub fn new(n: u32) -> Result<Self> {
        if !(1..=5).contains(&n) {
            return Err(Error::usage(format!("game size n={n} outside 1..=5")));
        }
        Ok(GameSize { n })
    }

    pub fn answer_bits(self) -> u32 {
        self.n
    }

    pub fn question_bits(self) -> u32 {
        1 << self.n
    }

    pub fn from_question_bits(width: u32) -> Result<Self> {
        check_width(width)?;
        GameSize::new(width.trailing_zeros())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w16(bits: u32) -> Word {
        Word::new(bits, 16).unwrap()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(w16(0x003f), w16(0x0fc0)).unwrap(), 12);
        assert_eq!(distance(w16(0x003f), w16(0x07e0)).unwrap(), 10);
        assert_eq!(distance(w16(0x1234), w16(0x1234)).unwrap(), 0);
    }

    #[test]
    fn distance_rejects_mixed_lengths() {
        let a = Word::new(1, 8).unwrap();
        let b = Word::new(1, 16).unwrap();
        assert!(matches!(distance(a, b), Err(Error::Usage(_))));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complement(w16(0x003f), 16).unwrap(), w16(0xffc0));
        assert_eq!(complement(w16(0), 16).unwrap(), w16(0xffff));
        assert_eq!(Word::new(0b01, 2).unwrap().complement().bits(), 0b10);
    }

    #[test]
    fn level_sizes() {
        assert_eq!(enumerate_level(16, 2).unwrap().len(), 120);
        assert_eq!(enumerate_level(16, 6).unwrap().len(), 8008);
        assert_eq!(
            enumerate_level(4, 0).unwrap(),
            vec![Word::new(0, 4).unwrap()]
        );
        assert_eq!(
            enumerate_level(4, 4).unwrap(),
            vec![Word::new(0xf, 4).unwrap()]
        );
        assert!(enumerate_level(4, 5).is_err());
        for n in [2u32, 4, 8, 16] {
            for k in 0..=n {
                let level = enumerate_level(n, k).unwrap();
                assert_eq!(level.len() as u64, binomial(n as u64, k as u64));
                assert!(level.windows(2).all(|p| p[0] < p[1]));
                assert!(level.iter().all(|w| w.weight() == k));
            }
        }
    }

    #[test]
    fn full_width_level() {
        assert_eq!(enumerate_level(32, 1).unwrap().len(), 32);
        assert_eq!(enumerate_level(32, 32).unwrap()[0].bits(), u32::MAX);
    }

    #[test]
    fn bit_strings_follow_leftmost_is_position_zero() {
        let u = Word::from_bit_string("111111·000000·0000", 16).unwrap();
        let v = Word::from_bit_string("000000·111111·0000", 16).unwrap();
        assert_eq!(u.bits(), 0x003f);
        assert_eq!(v.bits(), 0x0fc0);
        assert_eq!(u.to_bit_string(), "1111110000000000");
        let w = Word::from_bit_string("000000·111000·1110", 16).unwrap();
        assert_eq!(w.bits(), 0x71c0);
    }

    #[test]
    fn hex_round_trip() {
        let w = w16(0x003f);
        assert_eq!(w.to_hex(), "003f");
        assert_eq!(Word::from_hex("003f", 16).unwrap(), w);
        assert!(Word::from_hex("3f", 16).is_err());
        assert_eq!(Word::new(0b10, 2).unwrap().to_hex(), "2");
    }

    #[test]
    fn invalid_words() {
        assert!(Word::new(0x10, 4).is_err());
        assert!(Word::new(0, 12).is_err());
        assert!(Word::new(0, 64).is_err());
        assert!(GameSize::new(0).is_err());
        assert_eq!(GameSize::new(4).unwrap().question_bits(), 16);
    }
}

//! Bit vectors and generator matrices over GF(2).
//!
//! Bits are packed little-endian into `u64` words: bit `i` of a block lives in
//! word `i / 64` at position `i % 64`. Bit 0 is always the first transmitted
//! (or first written) bit. Bits past `len` in the last word are kept at zero.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// An ordered, fixed-length sequence of bits.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitBlock {
    words: Vec<u64>,
    len: usize,
}

impl BitBlock {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// The unit vector with a single one at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut b = Self::zeros(len);
        b.set(index, true);
        b
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if bit {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        Self { words, len }
    }

    /// Builds a block from `0`/`1` bytes; any nonzero byte counts as a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_bools(bits.iter().map(|&b| b != 0))
    }

    /// Parses a string of `0` and `1` characters. Whitespace and `_` are ignored.
    pub fn parse_binary(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == '_' => {}
                c => return Err(Error::Parameter(format!("invalid binary digit {c:?}"))),
            }
        }
        Ok(Self::from_bools(bits))
    }

    /// Takes the low `len` bits of `value`; bit `i` of the value becomes bit `i` of the block.
    pub fn from_u64(value: u64, len: usize) -> Self {
        assert!(len <= WORD);
        let mask = if len == WORD {
            u64::MAX
        } else {
            (1u64 << len) - 1
        };
        let mut b = Self::zeros(len);
        if len > 0 {
            b.words[0] = value & mask;
        }
        b
    }

    /// Wraps raw words; bits beyond `len` are cleared.
    pub fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        words.resize(words_for(len), 0);
        let mut b = Self { words, len };
        b.clear_tail();
        b
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let words = (0..words_for(len)).map(|_| rng.random::<u64>()).collect();
        Self::from_words(words, len)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Low 64 bits as an integer (bit `i` of the block is bit `i` of the result).
    pub fn to_u64(&self) -> u64 {
        assert!(
            self.len <= WORD,
            "block of {} bits does not fit a u64",
            self.len
        );
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Hamming weight.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitBlock) {
        assert_eq!(self.len, other.len, "xor of blocks with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitBlock) -> BitBlock {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Concatenation `self || other`.
    pub fn concat(&self, other: &BitBlock) -> BitBlock {
        BitBlock::from_bools(self.iter().chain(other.iter()))
    }

    /// Bits `start..end` as a new block.
    pub fn slice(&self, start: usize, end: usize) -> BitBlock {
        assert!(start <= end && end <= self.len);
        BitBlock::from_bools((start..end).map(|i| self.get(i)))
    }

    /// Cyclic shift: bit `i` of the result is bit `(i + len - shift) % len` of `self`.
    pub fn rotate_right(&self, shift: usize) -> BitBlock {
        if self.len == 0 {
            return self.clone();
        }
        let s = shift % self.len;
        BitBlock::from_bools((0..self.len).map(|i| self.get((i + self.len - s) % self.len)))
    }

    /// Hex rendering, four bits per digit, bit 0 as the most significant bit of the first
    /// digit. The final digit is zero-padded on the right.
    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.len.div_ceil(4));
        for chunk in 0..self.len.div_ceil(4) {
            let mut nibble = 0u32;
            for j in 0..4 {
                let i = chunk * 4 + j;
                nibble <<= 1;
                if i < self.len && self.get(i) {
                    nibble |= 1;
                }
            }
            s.push(char::from_digit(nibble, 16).unwrap());
        }
        s
    }

    /// Inverse of [`BitBlock::to_hex`] for a known length.
    pub fn from_hex(hex: &str, len: usize) -> Result<BitBlock> {
        let digits: Vec<u32> = hex
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(16)
                    .ok_or_else(|| Error::Parameter(format!("invalid hex digit {c:?}")))
            })
            .collect::<Result<_>>()?;
        if digits.len() != len.div_ceil(4) {
            return Err(Error::Dimension {
                expected: len.div_ceil(4),
                actual: digits.len(),
            });
        }
        Ok(BitBlock::from_bools(
            (0..len).map(|i| (digits[i / 4] >> (3 - i % 4)) & 1 == 1),
        ))
    }
}

impl fmt::Display for BitBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitBlock({self})")
    }
}

/// Hamming weight of a block.
pub fn weight(b: &BitBlock) -> usize {
    b.weight()
}

/// A `k x n` binary generator matrix; codeword = XOR of the rows selected by the message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    rows: Vec<BitBlock>,
    n: usize,
}

impl GeneratorMatrix {
    pub fn new(rows: Vec<BitBlock>, n: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != n {
                return Err(Error::Dimension {
                    expected: n,
                    actual: r.len(),
                });
            }
        }
        if rows.len() > n {
            return Err(Error::Parameter(format!(
                "generator has more rows ({}) than columns ({n})",
                rows.len()
            )));
        }
        Ok(Self { rows, n })
    }

    pub fn identity(k: usize) -> Self {
        Self {
            rows: (0..k).map(|i| BitBlock::unit(k, i)).collect(),
            n: k,
        }
    }

    /// Builds the generator of a linear encoder from the images of the unit vectors, then
    /// spot-checks the result on random messages.
    pub fn from_encoder<F>(k: usize, n: usize, encoder: F) -> Result<Self>
    where
        F: Fn(&BitBlock) -> Result<BitBlock>,
    {
        let zero = encoder(&BitBlock::zeros(k))?;
        if zero.len() != n {
            return Err(Error::Dimension {
                expected: n,
                actual: zero.len(),
            });
        }
        if !zero.is_zero() {
            return Err(Error::NonLinearEncoder("encoder(0) is nonzero".into()));
        }
        let rows = (0..k)
            .map(|i| encoder(&BitBlock::unit(k, i)))
            .collect::<Result<Vec<_>>>()?;
        let g = Self::new(rows, n)?;

        let mut rng = ChaCha8Rng::seed_from_u64(0x6e66_0f2d);
        for _ in 0..32 {
            let m = BitBlock::random(k, &mut rng);
            if encoder(&m)? != g.encode(&m)? {
                return Err(Error::NonLinearEncoder(format!(
                    "encoder({m}) differs from the superposition of unit responses"
                )));
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[BitBlock] {
        &self.rows
    }

    /// `m * G`: XOR of the rows `i` with `m_i = 1`.
    pub fn encode(&self, m: &BitBlock) -> Result<BitBlock> {
        if m.len() != self.k() {
            return Err(Error::Dimension {
                expected: self.k(),
                actual: m.len(),
            });
        }
        let mut out = BitBlock::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            if m.get(i) {
                out.xor_assign(row);
            }
        }
        Ok(out)
    }

    /// Encodes a message given as the low `k` bits of an integer.
    pub fn encode_u64(&self, m: u64) -> BitBlock {
        let mut out = BitBlock::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            if (m >> i) & 1 == 1 {
                out.xor_assign(row);
            }
        }
        out
    }
}

/// Vector-matrix product over GF(2).
pub fn gf2_matvec(g: &GeneratorMatrix, m: &BitBlock) -> Result<BitBlock> {
    g.encode(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> BitBlock {
        BitBlock::parse_binary(s).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(BitBlock::zeros(512).weight(), 0);
        assert_eq!(BitBlock::from_bools([true; 8]).weight(), 8);
        assert_eq!(bits("1011").weight(), 3);
    }

    #[test]
    fn matvec_examples() {
        let g = GeneratorMatrix::new(vec![bits("110"), bits("011")], 3).unwrap();
        assert_eq!(g.encode(&bits("00")).unwrap(), bits("000"));
        assert_eq!(g.encode(&bits("10")).unwrap(), bits("110"));
        assert_eq!(g.encode(&bits("01")).unwrap(), bits("011"));
        assert_eq!(g.encode(&bits("11")).unwrap(), bits("101"));
        assert!(matches!(
            g.encode(&bits("1")),
            Err(Error::Dimension {
                expected: 2,
                actual: 1
            })
        ));
    }

    #[test]
    fn derive_generator_examples() {
        let rep = GeneratorMatrix::from_encoder(1, 3, |m| Ok(BitBlock::from_bools([m.get(0); 3])))
            .unwrap();
        assert_eq!(rep.rows(), &[bits("111")]);

        let id = GeneratorMatrix::from_encoder(4, 4, |m| Ok(m.clone())).unwrap();
        assert_eq!(id, GeneratorMatrix::identity(4));
    }

    #[test]
    fn derive_generator_rejects_affine_encoder() {
        let err = GeneratorMatrix::from_encoder(3, 3, |m| {
            let mut c = m.clone();
            c.flip(0);
            Ok(c)
        });
        assert!(matches!(err, Err(Error::NonLinearEncoder(_))));
    }

    #[test]
    fn derive_generator_rejects_nonlinear_encoder() {
        // AND of the first two bits is zero on zero and on unit vectors only.
        let err = GeneratorMatrix::from_encoder(4, 4, |m| {
            Ok(BitBlock::from_bools([
                m.get(0) && m.get(1),
                false,
                false,
                false,
            ]))
        });
        assert!(matches!(err, Err(Error::NonLinearEncoder(_))), "{err:?}");
    }

    #[test]
    fn hex_round_trip_and_layout() {
        let b = bits("1000 0001 1");
        assert_eq!(b.to_hex(), "818");
        assert_eq!(BitBlock::from_hex("818", 9).unwrap(), b);
    }

    #[test]
    fn rotate_is_cyclic() {
        assert_eq!(bits("100").rotate_right(1), bits("010"));
        assert_eq!(bits("1101").rotate_right(4), bits("1101"));
    }

    fn block(len: usize) -> impl Strategy<Value = BitBlock> {
        proptest::collection::vec(any::<bool>(), len).prop_map(BitBlock::from_bools)
    }

    proptest! {
        #[test]
        fn weight_triangle((a, b) in (1usize..300).prop_flat_map(|n| (block(n), block(n)))) {
            prop_assert!(a.xor(&b).weight() <= a.weight() + b.weight());
        }

        #[test]
        fn matvec_is_linear(seed in any::<u64>(), k in 1usize..20, n in 20usize..140) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows = (0..k).map(|_| BitBlock::random(n, &mut rng)).collect();
            let g = GeneratorMatrix::new(rows, n).unwrap();
            let m1 = BitBlock::random(k, &mut rng);
            let m2 = BitBlock::random(k, &mut rng);
            let lhs = g.encode(&m1.xor(&m2)).unwrap();
            let rhs = g.encode(&m1).unwrap().xor(&g.encode(&m2).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn derive_generator_round_trip() {
        // A linear but non-trivial encoder: message followed by its cyclic shift.
        let enc = |m: &BitBlock| Ok(m.concat(&m.rotate_right(3)));
        let g = GeneratorMatrix::from_encoder(13, 26, enc).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let m = BitBlock::random(13, &mut rng);
            assert_eq!(enc(&m).unwrap(), g.encode(&m).unwrap());
        }
    }
}

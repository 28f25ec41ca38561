//! CRC generator polynomials, systematic append and divisibility check.
//!
//! Bit 0 of a data block is the highest-degree coefficient of its polynomial, so the
//! check runs as MSB-first long division. Polynomials are written in hex with the
//! leading `x^m` term included, e.g. `0xE21 = x^11 + x^10 + x^9 + x^5 + 1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitBlock;

/// A CRC generator polynomial `g(x)` of degree `width`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrcPoly {
    width: usize,
    /// Bit `i` is the coefficient of `x^i`; bit `width` is always set.
    value: u64,
}

impl CrcPoly {
    /// Validates a polynomial value of the given degree. Both the leading term and the
    /// constant term must be present.
    pub fn new(value: u64, width: usize) -> Result<Self> {
        if width == 0 || width > 62 {
            return Err(Error::MalformedPolynomial(format!(
                "unsupported width {width}"
            )));
        }
        if value >> width != 1 {
            return Err(Error::MalformedPolynomial(format!(
                "{value:#X} is not a degree-{width} polynomial (leading bit must be x^{width})"
            )));
        }
        if value & 1 == 0 {
            return Err(Error::MalformedPolynomial(format!(
                "{value:#X} has no constant term"
            )));
        }
        Ok(Self { width, value })
    }

    /// Parses `0x`-prefixed (or bare) hex including the leading coefficient.
    pub fn parse_hex(hex: &str, width: usize) -> Result<Self> {
        let t = hex.trim();
        let digits = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        let value = u64::from_str_radix(digits, 16)
            .map_err(|e| Error::MalformedPolynomial(format!("{hex:?}: {e}")))?;
        Self::new(value, width)
    }

    /// Parses hex and infers the width from the position of the leading one.
    pub fn parse_hex_auto(hex: &str) -> Result<Self> {
        let t = hex.trim();
        let digits = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .unwrap_or(t);
        let value = u64::from_str_radix(digits, 16)
            .map_err(|e| Error::MalformedPolynomial(format!("{hex:?}: {e}")))?;
        if value < 2 {
            return Err(Error::MalformedPolynomial(format!("{hex:?} has degree 0")));
        }
        Self::new(value, 63 - value.leading_zeros() as usize)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: usize) -> bool {
        i <= self.width && (self.value >> i) & 1 == 1
    }

    pub fn to_hex(&self) -> String {
        format!("0x{:X}", self.value)
    }

    /// The polynomial with its coefficients in reverse order, `x^m g(1/x)`.
    pub fn reciprocal(&self) -> Self {
        let mut r = 0u64;
        for i in 0..=self.width {
            if self.coeff(i) {
                r |= 1 << (self.width - i);
            }
        }
        Self {
            width: self.width,
            value: r,
        }
    }

    /// Every polynomial of the form `x^m + ... + 1`, in increasing hex order.
    /// There are `2^(m-1)` of them.
    pub fn candidates(width: usize) -> impl Iterator<Item = CrcPoly> {
        assert!((1..=32).contains(&width));
        let count = 1u64 << (width - 1);
        (0..count).map(move |mid| CrcPoly {
            width,
            value: (1u64 << width) | (mid << 1) | 1,
        })
    }

    /// Remainder of `data(x)` modulo `g(x)`, data bit 0 highest degree.
    pub fn remainder_of(&self, data: &BitBlock) -> u64 {
        let mut reg = 0u64;
        let top = 1u64 << self.width;
        for bit in data.iter() {
            reg = (reg << 1) | u64::from(bit);
            if reg & top != 0 {
                reg ^= self.value;
            }
        }
        reg
    }

    /// Systematic encoding: `msg` followed by the remainder of `msg(x) x^m` mod `g(x)`.
    pub fn append(&self, msg: &BitBlock) -> BitBlock {
        let mut reg = 0u64;
        let top = 1u64 << (self.width - 1);
        let low = self.value & ((1u64 << self.width) - 1);
        let mask = (1u64 << self.width) - 1;
        for bit in msg.iter() {
            let feedback = (reg & top != 0) ^ bit;
            reg = (reg << 1) & mask;
            if feedback {
                reg ^= low;
            }
        }
        let parity = (0..self.width).map(|j| (reg >> (self.width - 1 - j)) & 1 == 1);
        BitBlock::from_bools(msg.iter().chain(parity))
    }

    /// True iff the data polynomial is divisible by `g(x)`.
    pub fn check(&self, data: &BitBlock) -> Result<bool> {
        if data.len() <= self.width {
            return Err(Error::CrcLength {
                len: data.len(),
                width: self.width,
            });
        }
        Ok(self.remainder_of(data) == 0)
    }
}

impl fmt::Display for CrcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CrcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CrcPoly({}, m={})", self.to_hex(), self.width)
    }
}

impl FromStr for CrcPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_hex_auto(s)
    }
}

/// See [`CrcPoly::parse_hex`].
pub fn parse_hex_poly(hex: &str, width: usize) -> Result<CrcPoly> {
    CrcPoly::parse_hex(hex, width)
}

/// See [`CrcPoly::append`].
pub fn crc_append(msg: &BitBlock, g: &CrcPoly) -> BitBlock {
    g.append(msg)
}

/// See [`CrcPoly::check`].
pub fn crc_check(data: &BitBlock, g: &CrcPoly) -> Result<bool> {
    g.check(data)
}

/// Divisibility test for many data words of one fixed length, using a table of
/// `x^(len-1-i) mod g(x)` so a check is one XOR per set bit.
#[derive(Clone, Debug)]
pub struct CrcTable {
    poly: CrcPoly,
    residues: Vec<u64>,
}

impl CrcTable {
    pub fn new(poly: CrcPoly, len: usize) -> Self {
        let mut residues = vec![0u64; len];
        let top = 1u64 << poly.width;
        let mut r = 1u64; // x^0
        for i in (0..len).rev() {
            residues[i] = r;
            r <<= 1;
            if r & top != 0 {
                r ^= poly.value;
            }
        }
        Self { poly, residues }
    }

    pub fn poly(&self) -> CrcPoly {
        self.poly
    }

    /// `residues()[i]` is the remainder contributed by data bit `i`.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn remainder(&self, data: &BitBlock) -> u64 {
        debug_assert_eq!(data.len(), self.residues.len());
        let mut rem = 0u64;
        for (wi, &word) in data.words().iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                rem ^= self.residues[wi * 64 + b];
                w &= w - 1;
            }
        }
        rem
    }

    #[inline]
    pub fn passes(&self, data: &BitBlock) -> bool {
        self.remainder(data) == 0
    }
}

/// CRC generator polynomials listed for 5G NR (3GPP TS 38.212).
pub mod nr {
    /// `(label, hex, width)`.
    pub const TABLE: [(&str, &str, usize); 6] = [
        ("CRC24A", "0x1864CFB", 24),
        ("CRC24B", "0x1800063", 24),
        ("CRC24C", "0x1B2B117", 24),
        ("CRC16", "0x11021", 16),
        ("CRC11", "0xE21", 11),
        ("CRC6", "0x61", 6),
    ];
}

//! Feedforward rate-1/n convolutional codes with tail-biting termination,
//! their trellis, and puncturing.
//!
//! Generator taps are written in octal with the most significant bit as `g_0`, the tap
//! on the current input: `533 = 101011011` gives `g_0 .. g_8`. The encoder state holds the
//! previous `v` inputs with `u_{t-1}` in the most significant state bit.

use std::fmt;

use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitBlock;

/// Memory, taps and output count of a feedforward convolutional code.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConvCode {
    memory: usize,
    /// Tap `j` of output `i` is bit `memory - j` of `taps[i]`.
    taps: Vec<u32>,
}

impl ConvCode {
    pub fn new(memory: usize, taps: Vec<u32>) -> Result<Self> {
        if !(1..=16).contains(&memory) {
            return Err(Error::MalformedCode(format!(
                "memory {memory} outside 1..=16"
            )));
        }
        if taps.is_empty() || taps.len() > 32 {
            return Err(Error::MalformedCode(format!(
                "{} generator polynomials (need 1..=32)",
                taps.len()
            )));
        }
        for &t in &taps {
            if t >> (memory + 1) != 0 {
                return Err(Error::MalformedCode(format!(
                    "polynomial {t:o} has more than {} taps",
                    memory + 1
                )));
            }
            if (t >> memory) & 1 == 0 || t & 1 == 0 {
                return Err(Error::MalformedCode(format!(
                    "polynomial {t:o} must have both g_0 and g_{memory} set"
                )));
            }
        }
        Ok(Self { memory, taps })
    }

    /// Parses octal tap strings such as `["533", "727"]`.
    pub fn from_octal<S: AsRef<str>>(memory: usize, taps: &[S]) -> Result<Self> {
        let taps = taps
            .iter()
            .map(|s| {
                u32::from_str_radix(s.as_ref().trim(), 8)
                    .map_err(|e| Error::MalformedCode(format!("{:?}: {e}", s.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(memory, taps)
    }

    /// The memory-8 rate-1/12 code used for the (516, 43) tail-biting design.
    pub fn rate_1_12_memory_8() -> Self {
        Self::from_octal(
            8,
            &[
                "533", "727", "765", "445", "715", "635", "563", "555", "737", "557", "677", "511",
            ],
        )
        .expect("valid built-in code")
    }

    #[inline]
    pub fn memory(&self) -> usize {
        self.memory
    }

    #[inline]
    pub fn n_out(&self) -> usize {
        self.taps.len()
    }

    #[inline]
    pub fn num_states(&self) -> usize {
        1 << self.memory
    }

    pub fn taps(&self) -> &[u32] {
        &self.taps
    }

    pub fn taps_octal(&self) -> Vec<String> {
        self.taps.iter().map(|t| format!("{t:o}")).collect()
    }

    /// Output bits for `(state, input)`, output `j` in bit `j`.
    #[inline]
    pub fn branch_output(&self, state: u32, input: bool) -> u32 {
        let reg = (u32::from(input) << self.memory) | state;
        let mut out = 0u32;
        for (j, &t) in self.taps.iter().enumerate() {
            out |= ((t & reg).count_ones() & 1) << j;
        }
        out
    }

    #[inline]
    pub fn next_state(&self, state: u32, input: bool) -> u32 {
        (u32::from(input) << (self.memory - 1)) | (state >> 1)
    }

    /// State after encoding the last `memory` bits of `msg`; the tail-biting start state.
    pub fn tail_state(&self, msg: &BitBlock) -> u32 {
        let k = msg.len();
        let mut state = 0u32;
        for j in 1..=self.memory {
            if msg.get(k - j) {
                state |= 1 << (self.memory - j);
            }
        }
        state
    }

    /// Tail-biting encoding; output bit `t * n_out + j` comes from output `j` at time `t`.
    pub fn tb_encode(&self, msg: &BitBlock) -> Result<BitBlock> {
        let k = msg.len();
        if k < self.memory || k == 0 {
            return Err(Error::TailBitingInfeasible {
                len: k,
                memory: self.memory,
            });
        }
        let n_out = self.n_out();
        let mut out = BitBlock::zeros(k * n_out);
        let mut state = self.tail_state(msg);
        for t in 0..k {
            let u = msg.get(t);
            let o = self.branch_output(state, u);
            for j in 0..n_out {
                if (o >> j) & 1 == 1 {
                    out.set(t * n_out + j, true);
                }
            }
            state = self.next_state(state, u);
        }
        debug_assert_eq!(state, self.tail_state(msg));
        Ok(out)
    }
}

impl fmt::Debug for ConvCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ConvCode(v={}, taps={:?})",
            self.memory,
            self.taps_octal()
        )
    }
}

/// See [`ConvCode::tb_encode`].
pub fn tb_encode(msg: &BitBlock, code: &ConvCode) -> Result<BitBlock> {
    code.tb_encode(msg)
}

/// Codeword positions removed before transmission.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuncturePattern {
    positions: Vec<usize>,
    pre_length: usize,
}

impl PuncturePattern {
    /// Positions may be given in any order; duplicates are rejected.
    pub fn new(mut positions: Vec<usize>, pre_length: usize) -> Result<Self> {
        positions.sort_unstable();
        if positions.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPuncture("duplicate position".into()));
        }
        if let Some(&last) = positions.last() {
            if last >= pre_length {
                return Err(Error::InvalidPuncture(format!(
                    "position {last} outside codeword of length {pre_length}"
                )));
            }
        }
        if positions.len() >= pre_length && pre_length > 0 {
            return Err(Error::InvalidPuncture(
                "pattern removes every position".into(),
            ));
        }
        Ok(Self {
            positions,
            pre_length,
        })
    }

    pub fn none(pre_length: usize) -> Self {
        Self {
            positions: Vec::new(),
            pre_length,
        }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn pre_length(&self) -> usize {
        self.pre_length
    }

    pub fn post_length(&self) -> usize {
        self.pre_length - self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    fn check_len(expected: usize, actual: usize) -> Result<()> {
        if expected != actual {
            return Err(Error::Dimension { expected, actual });
        }
        Ok(())
    }

    /// Deletes the punctured positions, preserving order.
    pub fn apply(&self, cw: &BitBlock) -> Result<BitBlock> {
        Self::check_len(self.pre_length, cw.len())?;
        let mut skip = self.positions.iter().peekable();
        Ok(BitBlock::from_bools((0..cw.len()).filter_map(|i| {
            if skip.peek() == Some(&&i) {
                skip.next();
                None
            } else {
                Some(cw.get(i))
            }
        })))
    }

    /// Re-inserts zero LLRs at the punctured positions.
    pub fn depuncture<T: Float>(&self, llrs: &[T]) -> Result<Vec<T>> {
        Self::check_len(self.post_length(), llrs.len())?;
        let mut out = Vec::with_capacity(self.pre_length);
        let mut src = llrs.iter();
        let mut skip = self.positions.iter().peekable();
        for i in 0..self.pre_length {
            if skip.peek() == Some(&&i) {
                skip.next();
                out.push(T::zero());
            } else {
                out.push(*src.next().expect("length checked"));
            }
        }
        Ok(out)
    }

    /// Writes the depunctured sequence into `out`, reusing its allocation.
    pub fn depuncture_into<T: Float>(&self, llrs: &[T], out: &mut Vec<T>) -> Result<()> {
        Self::check_len(self.post_length(), llrs.len())?;
        out.clear();
        let mut src = llrs.iter();
        let mut skip = self.positions.iter().peekable();
        for i in 0..self.pre_length {
            if skip.peek() == Some(&&i) {
                skip.next();
                out.push(T::zero());
            } else {
                out.push(*src.next().expect("length checked"));
            }
        }
        Ok(())
    }
}

/// See [`PuncturePattern::apply`].
pub fn apply_puncture(cw: &BitBlock, p: &PuncturePattern) -> Result<BitBlock> {
    p.apply(cw)
}

/// See [`PuncturePattern::depuncture`].
pub fn depuncture_llr<T: Float>(llrs: &[T], p: &PuncturePattern) -> Result<Vec<T>> {
    p.depuncture(llrs)
}

/// Time-invariant trellis of a feedforward code over a fixed number of stages.
#[derive(Clone, Debug)]
pub struct Trellis {
    memory: usize,
    n_out: usize,
    num_stages: usize,
    /// `next[s][u]`
    next: Vec<[u32; 2]>,
    /// `output[s][u]`, output `j` in bit `j`.
    output: Vec<[u32; 2]>,
    /// Predecessors of state `s`: `prev[s][b] = ((s << 1) & mask) | b`.
    prev: Vec<[u32; 2]>,
}

impl Trellis {
    pub fn new(code: &ConvCode, num_stages: usize) -> Self {
        let ns = code.num_states();
        let mask = (ns - 1) as u32;
        let mut next = Vec::with_capacity(ns);
        let mut output = Vec::with_capacity(ns);
        let mut prev = Vec::with_capacity(ns);
        for s in 0..ns as u32 {
            next.push([code.next_state(s, false), code.next_state(s, true)]);
            output.push([code.branch_output(s, false), code.branch_output(s, true)]);
            prev.push([(s << 1) & mask, ((s << 1) & mask) | 1]);
        }
        Self {
            memory: code.memory(),
            n_out: code.n_out(),
            num_stages,
            next,
            output,
            prev,
        }
    }

    #[inline]
    pub fn memory(&self) -> usize {
        self.memory
    }

    #[inline]
    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    #[inline]
    pub fn n_out(&self) -> usize {
        self.n_out
    }

    #[inline]
    pub fn num_stages(&self) -> usize {
        self.num_stages
    }

    #[inline]
    pub fn next(&self, state: u32, input: bool) -> u32 {
        self.next[state as usize][usize::from(input)]
    }

    #[inline]
    pub fn output(&self, state: u32, input: bool) -> u32 {
        self.output[state as usize][usize::from(input)]
    }

    #[inline]
    pub fn predecessors(&self, state: u32) -> [u32; 2] {
        self.prev[state as usize]
    }

    /// Input bit on every branch entering `state`.
    #[inline]
    pub fn input_into(&self, state: u32) -> bool {
        (state >> (self.memory - 1)) & 1 == 1
    }

    /// Encodes by walking branches from `start`; returns the codeword and the final state.
    pub fn walk(&self, start: u32, msg: &BitBlock) -> (BitBlock, u32) {
        let mut out = BitBlock::zeros(msg.len() * self.n_out);
        let mut s = start;
        for t in 0..msg.len() {
            let u = msg.get(t);
            let o = self.output(s, u);
            for j in 0..self.n_out {
                if (o >> j) & 1 == 1 {
                    out.set(t * self.n_out + j, true);
                }
            }
            s = self.next(s, u);
        }
        (out, s)
    }
}

/// See [`Trellis::new`].
pub fn build_trellis(code: &ConvCode, num_stages: usize) -> Trellis {
    Trellis::new(code, num_stages)
}

//! Distance spectra: exhaustive Gray-order enumeration, bounded-weight tail-biting
//! trellis search, and the noiseless list-decoding probe for polar codes.

use std::collections::HashSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::convolutional::{ConvCode, PuncturePattern};
use crate::error::{Error, Result};
use crate::gf2::{BitBlock, GeneratorMatrix};
use crate::listdec::SclDecoder;
use crate::polar::PolarCode;

/// Largest dimension enumerated without an explicit override.
pub const ENUMERATION_GUARD: usize = 34;

/// Multiplicities `A(d)`, exact for every `d <= weight_bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpectrum {
    counts: Vec<u64>,
    n: usize,
    k: usize,
    weight_bound: usize,
}

impl WeightSpectrum {
    /// A spectrum over length-`n` words, exact up to `weight_bound`; only `A(0) = 1` set.
    pub fn new(n: usize, k: usize, weight_bound: usize) -> Self {
        let mut counts = vec![0; n + 1];
        counts[0] = 1;
        Self {
            counts,
            n,
            k,
            weight_bound: weight_bound.min(n),
        }
    }

    /// From `(d, A(d))` pairs; weights above `n` are rejected.
    pub fn from_pairs<I>(n: usize, k: usize, weight_bound: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, u64)>,
    {
        let mut ws = Self::new(n, k, weight_bound);
        ws.counts[0] = 0;
        for (d, a) in pairs {
            if d > n {
                return Err(Error::Parameter(format!(
                    "weight {d} exceeds block length {n}"
                )));
            }
            ws.counts[d] += a;
        }
        Ok(ws)
    }

    /// Parses the `d,A` CSV format written by [`WeightSpectrum::to_csv`].
    pub fn from_csv(text: &str, n: usize, k: usize, weight_bound: usize) -> Result<Self> {
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || (i == 0 && line == "d,A") {
                continue;
            }
            let parsed = line
                .split_once(',')
                .and_then(|(d, a)| Some((d.trim().parse().ok()?, a.trim().parse().ok()?)));
            match parsed {
                Some(p) => pairs.push(p),
                None => {
                    return Err(Error::Parameter(format!(
                        "bad spectrum line {}: {line:?}",
                        i + 1
                    )))
                }
            }
        }
        Self::from_pairs(n, k, weight_bound, pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weight_bound(&self) -> usize {
        self.weight_bound
    }

    pub fn is_complete(&self) -> bool {
        self.weight_bound == self.n
    }

    pub fn count(&self, d: usize) -> u64 {
        self.counts.get(d).copied().unwrap_or(0)
    }

    /// `A(0..=n)`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Smallest nonzero weight present.
    pub fn d_min(&self) -> Option<usize> {
        (1..=self.n).find(|&d| self.counts[d] > 0)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&a| u128::from(a)).sum()
    }

    /// `(d, A(d))` for every `A(d) > 0`, ascending in `d`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(d, &a)| (d, a))
    }

    /// Copy restricted to weights `<= w`.
    pub fn truncated(&self, w: usize) -> Self {
        let mut out = self.clone();
        for d in (w + 1).min(self.n + 1)..=self.n {
            out.counts[d] = 0;
        }
        out.weight_bound = self.weight_bound.min(w);
        out
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("d,A\n");
        for (d, a) in self.nonzero() {
            writeln!(s, "{d},{a}").expect("write to string");
        }
        s
    }

    fn add(&mut self, other: &[u64]) {
        for (a, b) in self.counts.iter_mut().zip(other) {
            *a += b;
        }
    }
}

/// Running sums `cum(d) = sum_{d' <= d} A(d')`, indexed by `d`.
pub fn cumulative_spectrum(ws: &WeightSpectrum) -> Vec<u128> {
    ws.counts
        .iter()
        .scan(0u128, |acc, &a| {
            *acc += u128::from(a);
            Some(*acc)
        })
        .collect()
}

/// Distinct codewords with the data words that produce them.
#[derive(Clone, Debug, Default)]
pub struct CodewordSet {
    entries: Vec<(BitBlock, BitBlock)>,
    seen: HashSet<BitBlock>,
    weight_bound: usize,
}

impl CodewordSet {
    pub fn new(weight_bound: usize) -> Self {
        Self {
            weight_bound,
            ..Self::default()
        }
    }

    /// Adds a codeword unless it is a duplicate or heavier than the bound.
    pub fn insert(&mut self, codeword: BitBlock, data: BitBlock) -> bool {
        if codeword.weight() > self.weight_bound || self.seen.contains(&codeword) {
            return false;
        }
        self.seen.insert(codeword.clone());
        self.entries.push((codeword, data));
        true
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight_bound(&self) -> usize {
        self.weight_bound
    }

    /// `(codeword, data)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (&BitBlock, &BitBlock)> {
        self.entries.iter().map(|(c, d)| (c, d))
    }

    /// Entries of exactly weight `d`.
    pub fn of_weight(&self, d: usize) -> Self {
        let mut out = Self::new(d);
        for (c, m) in self.iter().filter(|(c, _)| c.weight() == d) {
            out.insert(c.clone(), m.clone());
        }
        out
    }

    /// Number of entries at each weight, as a spectrum exact up to the set's bound.
    pub fn spectrum(&self, n: usize, k: usize) -> WeightSpectrum {
        let mut ws = WeightSpectrum::new(n, k, self.weight_bound);
        for (c, _) in self.iter() {
            ws.counts[c.weight()] += 1;
        }
        ws
    }

    /// Orders entries by weight, then codeword words.
    pub fn sort(&mut self) {
        self.entries.sort_by_cached_key(|(c, _)| {
            (
                c.weight(),
                c.words().iter().rev().copied().collect::<Vec<_>>(),
            )
        });
    }

    /// One `hex weight` line per codeword.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (c, _) in self.iter() {
            writeln!(s, "{} {}", c.to_hex(), c.weight()).expect("write to string");
        }
        s
    }
}

impl Extend<(BitBlock, BitBlock)> for CodewordSet {
    fn extend<I: IntoIterator<Item = (BitBlock, BitBlock)>>(&mut self, iter: I) {
        for (c, d) in iter {
            self.insert(c, d);
        }
    }
}

/// Options for [`full_spectrum_gray_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumOptions {
    /// Permit `k > ENUMERATION_GUARD`.
    pub allow_large: bool,
    /// Also collect every nonzero codeword of weight `<=` this bound.
    pub collect_up_to: Option<usize>,
}

/// Exact weight spectrum of all `2^k` codewords of `g`.
pub fn full_spectrum_gray(g: &GeneratorMatrix) -> Result<WeightSpectrum> {
    full_spectrum_gray_with(g, EnumOptions::default()).map(|(ws, _)| ws)
}

/// Weight counts of one chunk of messages and the collected `(message, codeword words)`.
type ChunkTally = (Vec<u64>, Vec<(u64, Vec<u64>)>);

/// Walks all messages in Gray order, so each step is one row XOR and a popcount. The
/// range of message indices is split into contiguous chunks processed in parallel.
pub fn full_spectrum_gray_with(
    g: &GeneratorMatrix,
    opts: EnumOptions,
) -> Result<(WeightSpectrum, CodewordSet)> {
    let (k, n) = (g.k(), g.n());
    if k > ENUMERATION_GUARD && !opts.allow_large {
        return Err(Error::TractabilityGuard {
            k,
            guard: ENUMERATION_GUARD,
        });
    }
    if k >= 64 {
        return Err(Error::Parameter(format!(
            "cannot enumerate 2^{k} codewords"
        )));
    }
    let words = n.div_ceil(64).max(1);
    let flat: Vec<u64> = g
        .rows()
        .iter()
        .flat_map(|r| {
            let mut w = r.words().to_vec();
            w.resize(words, 0);
            w
        })
        .collect();

    let total = 1u64 << k;
    let chunk_bits = k.min(24);
    let chunks = total >> chunk_bits;
    let cap = opts.collect_up_to.unwrap_or(0);
    let parts: Vec<ChunkTally> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c << chunk_bits;
            let end = start + (1u64 << chunk_bits);
            walk_dispatch(&flat, words, n, start, end, cap)
        })
        .collect();

    let mut ws = WeightSpectrum::new(n, k, n);
    ws.counts[0] = 0;
    let mut set = CodewordSet::new(cap);
    for (counts, found) in parts {
        ws.add(&counts);
        for (msg, cw) in found {
            set.insert(BitBlock::from_words(cw, n), BitBlock::from_u64(msg, k));
        }
    }
    set.sort();
    Ok((ws, set))
}

fn walk_dispatch(
    flat: &[u64],
    words: usize,
    n: usize,
    start: u64,
    end: u64,
    cap: usize,
) -> (Vec<u64>, Vec<(u64, Vec<u64>)>) {
    macro_rules! arm {
        ($($w:literal)*) => {
            match words {
                $($w => walk::<$w>(flat, n, start, end, cap),)*
                _ => walk_dyn(flat, words, n, start, end, cap),
            }
        };
    }
    arm!(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16)
}

#[inline]
fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

const BANKS: usize = 4;
const HIST: usize = 2048;

fn walk<const W: usize>(
    flat: &[u64],
    n: usize,
    start: u64,
    end: u64,
    cap: usize,
) -> (Vec<u64>, Vec<(u64, Vec<u64>)>) {
    // Padding to 64 rows lets the trailing-zero index go unchecked.
    let mut rows = vec![[0u64; W]; 64];
    for (r, c) in rows.iter_mut().zip(flat.chunks_exact(W)) {
        r.copy_from_slice(c);
    }
    let rows: &[[u64; W]; 64] = rows.as_slice().try_into().expect("64 rows");
    let mut cur = [0u64; W];
    let mut m = gray(start);
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        for (x, r) in cur.iter_mut().zip(&rows[b]) {
            *x ^= r;
        }
        m &= m - 1;
    }
    // Several histogram banks break the store-to-load chain on repeated weights.
    let mut counts = vec![[0u64; HIST]; BANKS];
    let mut found = Vec::new();
    let cap = cap as u32;
    let mut w = cur.iter().map(|x| x.count_ones()).sum::<u32>();
    let mut i = start;
    loop {
        counts[i as usize % BANKS][w as usize % HIST] += 1;
        if w.wrapping_sub(1) < cap {
            keep(&mut found, gray(i), cur);
        }
        i += 1;
        if i == end {
            break;
        }
        let row = &rows[(i.trailing_zeros() % 64) as usize];
        w = 0;
        for j in 0..W {
            cur[j] ^= row[j];
            w += cur[j].count_ones();
        }
    }
    let merged = (0..=n).map(|d| counts.iter().map(|b| b[d]).sum()).collect();
    (merged, found)
}

#[cold]
#[inline(never)]
fn keep<const W: usize>(found: &mut Vec<(u64, Vec<u64>)>, msg: u64, cur: [u64; W]) {
    found.push((msg, cur.to_vec()));
}

fn walk_dyn(
    flat: &[u64],
    words: usize,
    n: usize,
    start: u64,
    end: u64,
    cap: usize,
) -> (Vec<u64>, Vec<(u64, Vec<u64>)>) {
    let row = |b: usize| &flat[b * words..(b + 1) * words];
    let mut cur = vec![0u64; words];
    let mut m = gray(start);
    while m != 0 {
        let b = m.trailing_zeros() as usize;
        cur.iter_mut().zip(row(b)).for_each(|(x, r)| *x ^= r);
        m &= m - 1;
    }
    let mut counts = vec![0u64; n + 1];
    let mut found = Vec::new();
    let mut i = start;
    loop {
        let w = cur.iter().map(|x| x.count_ones()).sum::<u32>() as usize;
        counts[w] += 1;
        if w <= cap && w > 0 {
            found.push((gray(i), cur.clone()));
        }
        i += 1;
        if i == end {
            break;
        }
        cur.iter_mut()
            .zip(row(i.trailing_zeros() as usize))
            .for_each(|(x, r)| *x ^= r);
    }
    (counts, found)
}

/// All tail-biting codewords of weight `<= w_cap` with `k` trellis stages.
pub fn bounded_weight_tb_search(
    code: &ConvCode,
    k: usize,
    w_cap: usize,
) -> Result<(WeightSpectrum, CodewordSet)> {
    bounded_weight_tb_search_punctured(code, k, &PuncturePattern::none(k * code.n_out()), w_cap)
}

/// Bounded-weight search where weight is measured after puncturing.
///
/// For each start state, a depth-first traversal extends paths while the accumulated
/// weight plus the least weight still needed to return to the start state stays within
/// the cap. Every tail-biting path is found from its own start state exactly once; the
/// codewords are then de-duplicated.
pub fn bounded_weight_tb_search_punctured(
    code: &ConvCode,
    k: usize,
    puncture: &PuncturePattern,
    w_cap: usize,
) -> Result<(WeightSpectrum, CodewordSet)> {
    let v = code.memory();
    let n_out = code.n_out();
    if k < v || k == 0 {
        return Err(Error::TailBitingInfeasible { len: k, memory: v });
    }
    if k > 64 {
        return Err(Error::Parameter(format!(
            "tail-biting search supports k <= 64, got {k}"
        )));
    }
    if puncture.pre_length() != k * n_out {
        return Err(Error::Dimension {
            expected: k * n_out,
            actual: puncture.pre_length(),
        });
    }
    let states = code.num_states();
    // Branch weight at each stage after removing punctured outputs.
    let mut keep = vec![(1u32 << n_out) - 1; k];
    for &p in puncture.positions() {
        keep[p / n_out] &= !(1 << (p % n_out));
    }
    let branch: Vec<[u32; 2]> = (0..states as u32)
        .map(|s| [code.branch_output(s, false), code.branch_output(s, true)])
        .collect();
    let next: Vec<[u32; 2]> = (0..states as u32)
        .map(|s| [code.next_state(s, false), code.next_state(s, true)])
        .collect();

    let paths: Vec<Vec<u64>> = (0..states as u32)
        .into_par_iter()
        .map(|start| {
            let togo = distance_to_go(&branch, &next, &keep, start, w_cap);
            let mut out = Vec::new();
            let mut search = Dfs {
                branch: &branch,
                next: &next,
                keep: &keep,
                togo: &togo,
                cap: w_cap,
                k,
                out: &mut out,
            };
            search.run(0, start, 0, 0);
            out
        })
        .collect();

    let n = puncture.post_length();
    let mut set = CodewordSet::new(w_cap);
    for msg in paths.into_iter().flatten() {
        let data = BitBlock::from_u64(msg, k);
        let cw = puncture.apply(&code.tb_encode(&data)?)?;
        if !cw.is_zero() {
            set.insert(cw, data);
        }
    }
    set.sort();
    let ws = set.spectrum(n, k);
    Ok((ws, set))
}

const UNREACHABLE: u32 = u32::MAX / 2;

/// `togo[t * S + s]`: least weight from state `s` before stage `t` to `target` after the last stage.
fn distance_to_go(
    branch: &[[u32; 2]],
    next: &[[u32; 2]],
    keep: &[u32],
    target: u32,
    cap: usize,
) -> Vec<u32> {
    let s_count = branch.len();
    let k = keep.len();
    let mut togo = vec![UNREACHABLE; (k + 1) * s_count];
    togo[k * s_count + target as usize] = 0;
    for t in (0..k).rev() {
        for s in 0..s_count {
            let mut best = UNREACHABLE;
            for b in 0..2 {
                let w = (branch[s][b] & keep[t]).count_ones();
                let rest = togo[(t + 1) * s_count + next[s][b] as usize];
                best = best.min(rest.saturating_add(w));
            }
            togo[t * s_count + s] = best.min(UNREACHABLE).min(cap as u32 + 1);
        }
    }
    togo
}

struct Dfs<'a> {
    branch: &'a [[u32; 2]],
    next: &'a [[u32; 2]],
    keep: &'a [u32],
    togo: &'a [u32],
    cap: usize,
    k: usize,
    out: &'a mut Vec<u64>,
}

impl Dfs<'_> {
    fn run(&mut self, t: usize, state: u32, weight: u32, msg: u64) {
        if t == self.k {
            self.out.push(msg);
            return;
        }
        let s_count = self.branch.len();
        for b in 0..2 {
            let w = weight + (self.branch[state as usize][b] & self.keep[t]).count_ones();
            let ns = self.next[state as usize][b];
            if (w + self.togo[(t + 1) * s_count + ns as usize]) as usize <= self.cap {
                self.run(t + 1, ns, w, msg | ((b as u64) << t));
            }
        }
    }
}

/// Noiseless SCL probe: decode a saturated all-zero-codeword observation with list size
/// `list` and return every distinct nonzero codeword among the final paths.
pub fn polar_low_weight_probe(code: &PolarCode, list: usize) -> Result<CodewordSet> {
    if !list.is_power_of_two() {
        return Err(Error::Parameter(format!(
            "list size {list} is not a power of two"
        )));
    }
    let llrs = vec![1000.0f32; code.n()];
    let mut dec = SclDecoder::<f32>::new();
    dec.run(&llrs, code, list);
    let mut set = CodewordSet::new(code.n());
    for p in dec.final_order() {
        let data = dec.path_data(p);
        let cw = code.encode(&data)?;
        if !cw.is_zero() {
            set.insert(cw, data);
        }
    }
    set.sort();
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::ReliabilitySequence;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn naive(g: &GeneratorMatrix) -> Vec<u64> {
        let mut counts = vec![0u64; g.n() + 1];
        for m in 0..1u64 << g.k() {
            counts[g.encode_u64(m).weight()] += 1;
        }
        counts
    }

    fn gen(rows: &[&str]) -> GeneratorMatrix {
        let rows: Vec<_> = rows
            .iter()
            .map(|r| BitBlock::parse_binary(r).unwrap())
            .collect();
        let n = rows[0].len();
        GeneratorMatrix::new(rows, n).unwrap()
    }

    #[test]
    fn gray_examples() {
        let ws = full_spectrum_gray(&gen(&["111"])).unwrap();
        assert_eq!(ws.nonzero().collect::<Vec<_>>(), vec![(0, 1), (3, 1)]);
        let ws = full_spectrum_gray(&gen(&["110", "011"])).unwrap();
        assert_eq!(ws.nonzero().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert_eq!(ws.d_min(), Some(2));
        assert!(ws.is_complete());
    }

    #[test]
    fn gray_guard() {
        let g = GeneratorMatrix::identity(35);
        assert!(matches!(
            full_spectrum_gray(&g),
            Err(Error::TractabilityGuard { .. })
        ));
    }

    #[test]
    fn gray_matches_naive_and_collects() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for &(k, n) in &[(1, 5), (7, 64), (10, 100), (12, 130), (16, 40), (9, 1100)] {
            let rows = (0..k).map(|_| BitBlock::random(n, &mut rng)).collect();
            let g = GeneratorMatrix::new(rows, n).unwrap();
            let (ws, set) = full_spectrum_gray_with(
                &g,
                EnumOptions {
                    collect_up_to: Some(n / 2),
                    ..Default::default()
                },
            )
            .unwrap();
            let expected = naive(&g);
            assert_eq!(ws.counts(), &expected[..]);
            assert_eq!(ws.total(), 1u128 << k);
            let low: u64 = expected[1..=n / 2].iter().sum();
            assert_eq!(set.len() as u64, low);
            for (c, m) in set.iter() {
                assert_eq!(&g.encode(m).unwrap(), c);
            }
        }
    }

    #[test]
    fn cumulative_examples() {
        let ws = WeightSpectrum::from_pairs(3, 1, 3, [(0, 1), (3, 1)]).unwrap();
        let cum = cumulative_spectrum(&ws);
        assert_eq!((cum[2], cum[3]), (1, 2));
    }

    #[test]
    fn csv_round_trip() {
        let ws = WeightSpectrum::from_pairs(10, 3, 10, [(0, 1), (4, 3), (6, 4)]).unwrap();
        assert_eq!(ws.to_csv(), "d,A\n0,1\n4,3\n6,4\n");
        assert_eq!(
            WeightSpectrum::from_csv(&ws.to_csv(), 10, 3, 10).unwrap(),
            ws
        );
        assert!(WeightSpectrum::from_csv("d,A\n11,1\n", 10, 3, 10).is_err());
        assert!(WeightSpectrum::from_csv("d,A\nx,1\n", 10, 3, 10).is_err());
    }

    #[test]
    fn tb_search_below_free_distance_is_trivial() {
        let code = ConvCode::from_octal(2, &["7", "5"]).unwrap();
        let g = GeneratorMatrix::from_encoder(8, 16, |m| code.tb_encode(m)).unwrap();
        let d_min = full_spectrum_gray(&g).unwrap().d_min().unwrap();
        let (ws, set) = bounded_weight_tb_search(&code, 8, d_min - 1).unwrap();
        assert_eq!(ws.nonzero().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(set.is_empty());
    }

    #[test]
    fn tb_search_equals_enumeration() {
        let codes = [
            ConvCode::from_octal(2, &["7", "5"]).unwrap(),
            ConvCode::from_octal(3, &["15", "17"]).unwrap(),
            ConvCode::from_octal(2, &["7", "5", "7"]).unwrap(),
        ];
        for code in &codes {
            for k in code.memory().max(3)..=12 {
                let n = k * code.n_out();
                let g = GeneratorMatrix::from_encoder(k, n, |m| code.tb_encode(m)).unwrap();
                let (ws, set) = bounded_weight_tb_search(code, k, n).unwrap();
                assert_eq!(ws, full_spectrum_gray(&g).unwrap(), "{code:?} k={k}");
                assert_eq!(set.len() as u128, ws.total() - 1);
            }
        }
    }

    #[test]
    fn punctured_tb_search_equals_enumeration() {
        let code = ConvCode::from_octal(2, &["7", "5"]).unwrap();
        let k = 10;
        let p = PuncturePattern::new(vec![0, 5, 13], 2 * k).unwrap();
        let g = GeneratorMatrix::from_encoder(k, 17, |m| p.apply(&code.tb_encode(m)?)).unwrap();
        let full = full_spectrum_gray(&g).unwrap();
        for cap in [0, 3, 6, 17] {
            let (ws, _) = bounded_weight_tb_search_punctured(&code, k, &p, cap).unwrap();
            assert_eq!(ws, full.truncated(cap), "cap={cap}");
        }
    }

    #[test]
    fn probe_with_one_path_is_empty() {
        let code = PolarCode::construct(&ReliabilitySequence::nr5g(), 64, 20).unwrap();
        assert!(polar_low_weight_probe(&code, 1).unwrap().is_empty());
    }

    #[test]
    fn probe_finds_all_light_codewords_of_toy_code() {
        let code = PolarCode::construct(&ReliabilitySequence::nr5g(), 16, 5).unwrap();
        let set = polar_low_weight_probe(&code, 32).unwrap();
        assert_eq!(set.len(), 31);
        let g = GeneratorMatrix::from_encoder(5, 16, |m| code.encode(m)).unwrap();
        let full = full_spectrum_gray(&g).unwrap();
        assert_eq!(set.spectrum(16, 5).counts(), full.counts());
    }

    #[test]
    fn codeword_set_dedupes_and_bounds() {
        let mut set = CodewordSet::new(2);
        let a = BitBlock::parse_binary("1100").unwrap();
        assert!(set.insert(a.clone(), BitBlock::zeros(1)));
        assert!(!set.insert(a, BitBlock::zeros(1)));
        assert!(!set.insert(BitBlock::parse_binary("1110").unwrap(), BitBlock::zeros(1)));
        assert_eq!(set.len(), 1);
        assert_eq!(set.to_text(), "c 2\n");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn gray_equals_naive(seed in any::<u64>(), k in 1usize..=12, n in 12usize..=150) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rows = (0..k).map(|_| BitBlock::random(n, &mut rng)).collect();
            let g = GeneratorMatrix::new(rows, n).unwrap();
            let ws = full_spectrum_gray(&g).unwrap();
            prop_assert_eq!(ws.counts(), &naive(&g)[..]);
        }
    }
}

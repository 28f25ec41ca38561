use crate::gf2::BitBlock;
use crate::polar::PolarCode;
use crate::scalar::Scalar;

use super::{CandidatePath, RankedList};

#[inline]
fn f_minsum<T: Scalar>(a: T, b: T) -> T {
    let m = a.abs().min(b.abs());
    if (a < T::zero()) != (b < T::zero()) {
        -m
    } else {
        m
    }
}

#[inline]
fn g_update<T: Scalar>(a: T, b: T, u: u8) -> T {
    if u == 0 {
        b + a
    } else {
        b - a
    }
}

/// Cost of deciding `bit` against an LLR (positive favours 0).
#[inline]
fn penalty<T: Scalar>(llr: T, bit: u8) -> T {
    if (llr < T::zero()) != (bit == 1) {
        llr.abs()
    } else {
        T::zero()
    }
}

/// LLR-domain successive cancellation list decoder with min-sum check-node updates.
///
/// Per-path storage: `alpha` holds the LLRs of the current node at each level `d` in
/// `[2^d, 2^(d+1))`; `beta` holds partial sums of left children in the first `n` slots
/// and right children in the second `n`.
#[derive(Debug, Default)]
pub struct SclDecoder<T> {
    n: usize,
    log_n: usize,
    k: usize,
    list: usize,
    active: usize,
    frozen: Vec<bool>,
    /// Number of frozen leaves before index `i`.
    frozen_prefix: Vec<usize>,
    alpha: Vec<T>,
    beta: Vec<u8>,
    data: Vec<u8>,
    metric: Vec<T>,
    alpha_next: Vec<T>,
    beta_next: Vec<u8>,
    data_next: Vec<u8>,
    metric_next: Vec<T>,
    candidates: Vec<(T, u32)>,
    info_index: usize,
}

impl<T: Scalar> SclDecoder<T> {
    pub fn new() -> Self {
        Self::default()
    }

    fn prepare(&mut self, code: &PolarCode, list: usize) {
        let n = code.n();
        let k_stride = code.k().max(1);
        if self.n != n || self.frozen != code.frozen_mask() {
            self.n = n;
            self.log_n = n.trailing_zeros() as usize;
            self.frozen = code.frozen_mask().to_vec();
            self.frozen_prefix = std::iter::once(0)
                .chain(self.frozen.iter().scan(0, |acc, &f| {
                    *acc += usize::from(f);
                    Some(*acc)
                }))
                .collect();
        }
        self.k = code.k();
        self.list = list;
        let need_alpha = list * n;
        let need_beta = list * 2 * n;
        let need_data = list * k_stride;
        for (buf, need) in [
            (&mut self.alpha, need_alpha),
            (&mut self.alpha_next, need_alpha),
        ] {
            if buf.len() < need {
                buf.resize(need, T::zero());
            }
        }
        for (buf, need) in [
            (&mut self.beta, need_beta),
            (&mut self.beta_next, need_beta),
            (&mut self.data, need_data),
            (&mut self.data_next, need_data),
        ] {
            if buf.len() < need {
                buf.resize(need, 0);
            }
        }
        if self.metric.len() < list {
            self.metric.resize(list, T::zero());
            self.metric_next.resize(list, T::zero());
        }
        self.active = 1;
        self.metric[0] = T::zero();
        self.info_index = 0;
    }

    /// Decodes `llrs` (positive favours bit 0) with list size `list`.
    pub fn decode(&mut self, llrs: &[T], code: &PolarCode, list: usize) -> RankedList<T> {
        self.run(llrs, code, list);
        let order = self.final_order();
        let entries = order
            .iter()
            .enumerate()
            .map(|(r, &p)| CandidatePath {
                data: self.path_data(p),
                metric: -self.metric[p],
                rank: r + 1,
                states: None,
            })
            .collect();
        RankedList {
            entries,
            list_size: list,
        }
    }

    /// Runs the decoder, leaving the surviving paths in scratch storage.
    pub(crate) fn run(&mut self, llrs: &[T], code: &PolarCode, list: usize) {
        assert!(list >= 1, "list size must be positive");
        assert_eq!(
            llrs.len(),
            code.n(),
            "LLR length must equal the block length"
        );
        self.prepare(code, list);
        let log_n = self.log_n;
        self.node(llrs, log_n, 0, true);
    }

    /// Surviving path indices ordered by increasing penalty, ties by path index.
    pub(crate) fn final_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.active).collect();
        order.sort_by(|&a, &b| {
            self.metric[a]
                .partial_cmp(&self.metric[b])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        order
    }

    pub(crate) fn path_data(&self, p: usize) -> BitBlock {
        let stride = self.k.max(1);
        BitBlock::from_bits(&self.data[p * stride..p * stride + self.k])
    }

    fn node(&mut self, llr: &[T], d: usize, base: usize, left: bool) {
        let size = 1usize << d;
        if self.frozen_prefix[base + size] - self.frozen_prefix[base] == size {
            self.rate_zero(llr, d, left);
            return;
        }
        if d == 0 {
            self.leaf(llr, base, left);
            return;
        }
        let n = self.n;
        let h = size >> 1;
        let root = d == self.log_n;

        for p in 0..self.active {
            let row = &mut self.alpha[p * n..(p + 1) * n];
            let (lo, hi) = row.split_at_mut(size);
            let input: &[T] = if root { llr } else { &hi[..size] };
            let out = &mut lo[h..size];
            for i in 0..h {
                out[i] = f_minsum(input[i], input[i + h]);
            }
        }
        self.node(llr, d - 1, base, true);

        for p in 0..self.active {
            let row = &mut self.alpha[p * n..(p + 1) * n];
            let (lo, hi) = row.split_at_mut(size);
            let input: &[T] = if root { llr } else { &hi[..size] };
            let betas = &self.beta[p * 2 * n..(p + 1) * 2 * n];
            let left_beta = &betas[h..size];
            let out = &mut lo[h..size];
            for i in 0..h {
                out[i] = g_update(input[i], input[i + h], left_beta[i]);
            }
        }
        self.node(llr, d - 1, base + h, false);

        if !root {
            let slot = if left { 0 } else { n };
            for p in 0..self.active {
                let betas = &mut self.beta[p * 2 * n..(p + 1) * 2 * n];
                for i in 0..h {
                    let l = betas[h + i];
                    let r = betas[n + h + i];
                    betas[slot + size + i] = l ^ r;
                    betas[slot + size + h + i] = r;
                }
            }
        }
    }

    /// A subtree whose leaves are all frozen decodes to zeros; with min-sum updates its
    /// accumulated penalty is the sum of magnitudes of the negative node LLRs.
    fn rate_zero(&mut self, llr: &[T], d: usize, left: bool) {
        let n = self.n;
        let size = 1usize << d;
        let root = d == self.log_n;
        let slot = if left { 0 } else { n };
        for p in 0..self.active {
            let input: &[T] = if root {
                llr
            } else {
                &self.alpha[p * n + size..p * n + 2 * size]
            };
            let mut pen = T::zero();
            for &a in input {
                if a < T::zero() {
                    pen = pen - a;
                }
            }
            self.metric[p] = self.metric[p] + pen;
            if !root {
                self.beta[p * 2 * n + slot + size..p * 2 * n + slot + 2 * size].fill(0);
            }
        }
    }

    fn leaf(&mut self, llr: &[T], index: usize, left: bool) {
        let n = self.n;
        let root = self.log_n == 0;
        let slot = if left { 0 } else { n };
        let leaf_llr = |alpha: &[T], p: usize| if root { llr[0] } else { alpha[p * n + 1] };

        if self.frozen[index] {
            for p in 0..self.active {
                let l = leaf_llr(&self.alpha, p);
                self.metric[p] = self.metric[p] + penalty(l, 0);
                if !root {
                    self.beta[p * 2 * n + slot + 1] = 0;
                }
            }
            return;
        }

        let j = self.info_index;
        self.info_index += 1;
        self.candidates.clear();
        for p in 0..self.active {
            let l = leaf_llr(&self.alpha, p);
            for b in 0..2u8 {
                self.candidates.push((
                    self.metric[p] + penalty(l, b),
                    (2 * p as u32) | u32::from(b),
                ));
            }
        }
        if self.candidates.len() > self.list {
            self.candidates.sort_by(|a, b| {
                a.0.partial_cmp(&b.0)
                    .unwrap_or(std::cmp::Ordering::Equal)
                    .then(a.1.cmp(&b.1))
            });
            self.candidates.truncate(self.list);
            self.candidates.sort_unstable_by_key(|c| c.1);
        }

        let k_stride = self.k.max(1);
        for (q, &(m, code)) in self.candidates.iter().enumerate() {
            let p = (code >> 1) as usize;
            let b = (code & 1) as u8;
            self.alpha_next[q * n..(q + 1) * n].copy_from_slice(&self.alpha[p * n..(p + 1) * n]);
            self.beta_next[q * 2 * n..(q + 1) * 2 * n]
                .copy_from_slice(&self.beta[p * 2 * n..(p + 1) * 2 * n]);
            self.data_next[q * k_stride..q * k_stride + j]
                .copy_from_slice(&self.data[p * k_stride..p * k_stride + j]);
            self.data_next[q * k_stride + j] = b;
            if !root {
                self.beta_next[q * 2 * n + slot + 1] = b;
            }
            self.metric_next[q] = m;
        }
        self.active = self.candidates.len();
        std::mem::swap(&mut self.alpha, &mut self.alpha_next);
        std::mem::swap(&mut self.beta, &mut self.beta_next);
        std::mem::swap(&mut self.data, &mut self.data_next);
        std::mem::swap(&mut self.metric, &mut self.metric_next);
    }
}

/// One-shot SCL decode; see [`SclDecoder::decode`].
pub fn scl_decode<T: Scalar>(llrs: &[T], code: &PolarCode, list: usize) -> RankedList<T> {
    SclDecoder::new().decode(llrs, code, list)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polar::ReliabilitySequence;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn noisy_llrs(cw: &BitBlock, sigma: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
        cw.iter()
            .map(|c| {
                let s = if c { -1.0 } else { 1.0 };
                let y = s + sigma * {
                    let z: f64 = StandardNormal.sample(rng);
                    z
                };
                2.0 * y / (sigma * sigma)
            })
            .collect()
    }

    #[test]
    fn noiseless_rank_one_is_transmitted() {
        let code = PolarCode::construct(&ReliabilitySequence::nr5g(), 64, 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut dec = SclDecoder::<f64>::new();
        for _ in 0..50 {
            let data = BitBlock::random(20, &mut rng);
            let cw = code.encode(&data).unwrap();
            let llrs: Vec<f64> = cw.iter().map(|c| if c { -4.0 } else { 4.0 }).collect();
            let list = dec.decode(&llrs, &code, 1);
            assert_eq!(list.entries.len(), 1);
            assert_eq!(list.entries[0].data, data);
            assert_eq!(list.entries[0].metric, 0.0);
        }
    }

    #[test]
    fn full_list_equals_ml_ordering() {
        // Exhaustive ML oracle: rank all codewords by correlation with the LLRs.
        let code = PolarCode::new(8, vec![3, 5, 7]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut dec = SclDecoder::<f64>::new();
        for _ in 0..300 {
            let data = BitBlock::random(3, &mut rng);
            let llrs = noisy_llrs(&code.encode(&data).unwrap(), 1.0, &mut rng);
            let mut oracle: Vec<(f64, u64)> = (0..8u64)
                .map(|m| {
                    let cw = code.encode(&BitBlock::from_u64(m, 3)).unwrap();
                    let corr: f64 = cw
                        .iter()
                        .zip(&llrs)
                        .map(|(c, &l)| if c { -l } else { l })
                        .sum();
                    (corr, m)
                })
                .collect();
            oracle.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
            let list = dec.decode(&llrs, &code, 8);
            assert!(list.is_metric_ordered());
            let got: Vec<u64> = list.entries.iter().map(|e| e.data.to_u64()).collect();
            let want: Vec<u64> = oracle.iter().map(|o| o.1).collect();
            assert_eq!(got, want);
            // Penalty equals the correlation discrepancy: (sum|l| - corr) / 2.
            let total: f64 = llrs.iter().map(|l| l.abs()).sum();
            for (e, o) in list.entries.iter().zip(&oracle) {
                assert!((-e.metric - (total - o.0) / 2.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn zero_llrs_still_fill_the_list() {
        let code = PolarCode::construct(&ReliabilitySequence::nr5g(), 32, 8).unwrap();
        let list = scl_decode(&[0.0f32; 32], &code, 16);
        assert_eq!(list.entries.len(), 16);
        assert!(list.is_metric_ordered());
        let tiny = PolarCode::construct(&ReliabilitySequence::nr5g(), 8, 2).unwrap();
        assert_eq!(scl_decode(&[0.0f64; 8], &tiny, 16).entries.len(), 4);
    }

    #[test]
    fn decoding_is_deterministic_and_ordered() {
        let code = PolarCode::construct(&ReliabilitySequence::nr5g(), 128, 30).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut dec = SclDecoder::<f64>::new();
        for _ in 0..20 {
            let cw = code.encode(&BitBlock::random(30, &mut rng)).unwrap();
            let llrs = noisy_llrs(&cw, 1.2, &mut rng);
            let a = dec.decode(&llrs, &code, 32);
            let b = scl_decode(&llrs, &code, 32);
            assert_eq!(a, b);
            assert!(a.is_metric_ordered());
            // Changing L need not nest, but both lists are valid.
            let c = dec.decode(&llrs, &code, 4);
            assert!(c.is_metric_ordered() && c.entries.len() == 4);
        }
    }

    #[test]
    fn f32_and_f64_agree_on_clean_input() {
        let code = PolarCode::construct(&ReliabilitySequence::nr5g(), 64, 16).unwrap();
        let data = BitBlock::from_u64(0xBEEF, 16);
        let cw = code.encode(&data).unwrap();
        let l64: Vec<f64> = cw.iter().map(|c| if c { -3.0 } else { 3.0 }).collect();
        let l32: Vec<f32> = l64.iter().map(|&x| x as f32).collect();
        let a = scl_decode(&l64, &code, 8);
        let b = scl_decode(&l32, &code, 8);
        let da: Vec<_> = a.entries.iter().map(|e| e.data.clone()).collect();
        let db: Vec<_> = b.entries.iter().map(|e| e.data.clone()).collect();
        assert_eq!(da, db);
    }
}

use std::cmp::Ordering;

use crate::convolutional::Trellis;
use crate::crc::CrcTable;
use crate::gf2::BitBlock;
use crate::scalar::Scalar;

use super::{CandidatePath, RankedList};

const CHOICE_BIT: u32 = 1 << 31;
const CHUNK_BITS: usize = 6;
const CHUNK_MASK: usize = (1 << CHUNK_BITS) - 1;

/// A surviving path at the final stage, identified by end state and per-state rank.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Survivor<T> {
    pub metric: T,
    pub end: u32,
    pub rank: u32,
    pub start: u32,
}

/// Total order of the merged list: metric descending, then end state, then per-state rank.
#[inline]
fn merged_cmp<T: Scalar>(a: &Survivor<T>, b: &Survivor<T>) -> Ordering {
    b.metric
        .partial_cmp(&a.metric)
        .unwrap_or(Ordering::Equal)
        .then(a.end.cmp(&b.end))
        .then(a.rank.cmp(&b.rank))
}

/// Parallel list Viterbi decoder keeping the `L` best paths into every state.
///
/// Path metric is the correlation `sum (1 - 2 c_i) llr_i` plus the initial metric of the
/// start state; higher is better. Within a state, ties prefer the predecessor reached with
/// branch bit 0 and then the lower predecessor rank, which makes the top-`L` survivors a
/// prefix of the top-`2L` survivors.
#[derive(Debug, Default)]
pub struct ListViterbi<T> {
    list: usize,
    num_states: usize,
    num_stages: usize,
    counts: Vec<u32>,
    counts_next: Vec<u32>,
    metric: Vec<T>,
    metric_next: Vec<T>,
    start: Vec<u32>,
    start_next: Vec<u32>,
    /// `back[(t * S + s) * L + r]`: predecessor choice bit and rank.
    back: Vec<u32>,
    /// `branch[2 s + u]`
    branch: Vec<T>,
    label_chunks: Vec<u16>,
    chunk_sums: Vec<T>,
}

impl<T: Scalar> ListViterbi<T> {
    pub fn new() -> Self {
        Self::default()
    }

    fn prepare(&mut self, trellis: &Trellis, list: usize) {
        let ns = trellis.num_states();
        self.list = list;
        self.num_states = ns;
        self.num_stages = trellis.num_stages();
        let width = ns * list;
        for buf in [&mut self.metric, &mut self.metric_next] {
            if buf.len() < width {
                buf.resize(width, T::zero());
            }
        }
        for buf in [&mut self.start, &mut self.start_next] {
            if buf.len() < width {
                buf.resize(width, 0);
            }
        }
        self.counts.resize(ns, 0);
        self.counts_next.resize(ns, 0);
        let need = self.num_stages * width;
        if self.back.len() < need {
            self.back.resize(need, 0);
        }
        self.branch.resize(2 * ns, T::zero());
    }

    /// Runs the forward pass. `llrs` must cover the full (depunctured) trellis.
    pub(crate) fn run(&mut self, llrs: &[T], trellis: &Trellis, list: usize, init: &[T]) {
        assert!(list >= 1, "list size must be positive");
        let n_out = trellis.n_out();
        assert_eq!(
            llrs.len(),
            n_out * trellis.num_stages(),
            "LLR length must match the trellis"
        );
        assert_eq!(
            init.len(),
            trellis.num_states(),
            "one initial metric per state"
        );
        self.prepare(trellis, list);
        let ns = self.num_states;
        let l = list;

        for (s, &m) in init.iter().enumerate().take(ns) {
            self.counts[s] = 1;
            self.metric[s * l] = m;
            self.start[s * l] = s as u32;
        }

        self.prepare_labels(trellis);
        for t in 0..self.num_stages {
            self.branch_metrics(&llrs[t * n_out..(t + 1) * n_out]);
            let back = &mut self.back[t * ns * l..(t + 1) * ns * l];
            let mut best = T::neg_infinity();
            if l == 1 {
                // States `i` and `i + S/2` share predecessors `2i` and `2i + 1`.
                let half = ns / 2;
                let (m_lo, m_hi) = self.metric_next[..ns].split_at_mut(half);
                let (s_lo, s_hi) = self.start_next[..ns].split_at_mut(half);
                let (b_lo, b_hi) = back.split_at_mut(half);
                let pred_m = self.metric[..ns].chunks_exact(2);
                let pred_s = self.start[..ns].chunks_exact(2);
                let br = self.branch.chunks_exact(4);
                for (i, ((pm, ps), bm)) in pred_m.zip(pred_s).zip(br).enumerate() {
                    for (u, (mo, so, bo)) in [
                        (&mut m_lo[i], &mut s_lo[i], &mut b_lo[i]),
                        (&mut m_hi[i], &mut s_hi[i], &mut b_hi[i]),
                    ]
                    .into_iter()
                    .enumerate()
                    {
                        let m0 = pm[0] + bm[u];
                        let m1 = pm[1] + bm[2 + u];
                        let take1 = m1 > m0;
                        let m = if take1 { m1 } else { m0 };
                        *mo = m;
                        *so = if take1 { ps[1] } else { ps[0] };
                        *bo = u32::from(take1) << 31;
                        best = best.max(m);
                    }
                }
                self.counts_next.fill(1);
            } else {
                let half = ns / 2;
                for s_next in 0..ns {
                    let u = s_next / half;
                    let (p0, p1) = (2 * (s_next % half), 2 * (s_next % half) + 1);
                    let bm0 = self.branch[2 * p0 + u];
                    let bm1 = self.branch[2 * p1 + u];
                    let (c0, c1) = (self.counts[p0] as usize, self.counts[p1] as usize);
                    let m0 = &self.metric[p0 * l..p0 * l + c0];
                    let m1 = &self.metric[p1 * l..p1 * l + c1];
                    let st0 = &self.start[p0 * l..p0 * l + c0];
                    let st1 = &self.start[p1 * l..p1 * l + c1];
                    let out_base = s_next * l;
                    let n = l.min(c0 + c1);
                    let out_m = &mut self.metric_next[out_base..out_base + n];
                    let out_s = &mut self.start_next[out_base..out_base + n];
                    let out_b = &mut back[out_base..out_base + n];
                    let (mut i0, mut i1) = (0usize, 0usize);
                    for ((om, os), ob) in
                        out_m.iter_mut().zip(out_s.iter_mut()).zip(out_b.iter_mut())
                    {
                        let a = m0.get(i0).map_or(T::neg_infinity(), |&m| m + bm0);
                        let b = m1.get(i1).map_or(T::neg_infinity(), |&m| m + bm1);
                        let take0 = i1 >= c1 || (i0 < c0 && a >= b);
                        *om = if take0 { a } else { b };
                        *os = if take0 { st0.get(i0) } else { st1.get(i1) }
                            .copied()
                            .unwrap_or(0);
                        *ob = if take0 {
                            i0 as u32
                        } else {
                            CHOICE_BIT | i1 as u32
                        };
                        i0 += usize::from(take0);
                        i1 += usize::from(!take0);
                    }
                    self.counts_next[s_next] = n as u32;
                    if n > 0 {
                        best = best.max(out_m[0]);
                    }
                }
            }
            // Entries past a state's count are never read, so the whole buffer is shifted.
            for m in &mut self.metric_next[..ns * l] {
                *m = *m - best;
            }
            std::mem::swap(&mut self.metric, &mut self.metric_next);
            std::mem::swap(&mut self.start, &mut self.start_next);
            std::mem::swap(&mut self.counts, &mut self.counts_next);
        }
    }

    /// Correlation of every branch label with one stage of LLRs. Sums of LLRs over each
    /// 6-bit chunk of the label are tabulated, so a label costs one lookup per chunk.
    fn branch_metrics(&mut self, seg: &[T]) {
        let total = seg.iter().fold(T::zero(), |a, &x| a + x);
        for (c, xs) in seg.chunks(CHUNK_BITS).enumerate() {
            let tab = &mut self.chunk_sums[c << CHUNK_BITS..(c + 1) << CHUNK_BITS];
            tab[0] = T::zero();
            for m in 1..1usize << xs.len() {
                tab[m] = tab[m & (m - 1)] + xs[m.trailing_zeros() as usize];
            }
        }
        let two = T::one() + T::one();
        let chunks = seg.len().div_ceil(CHUNK_BITS);
        let tab = &self.chunk_sums;
        if chunks <= 2 {
            for (bm, idx) in self
                .branch
                .iter_mut()
                .zip(self.label_chunks.chunks_exact(chunks))
            {
                let ones = if chunks == 1 {
                    tab[idx[0] as usize]
                } else {
                    tab[idx[0] as usize] + tab[idx[1] as usize]
                };
                *bm = total - two * ones;
            }
        } else {
            for (bm, idx) in self
                .branch
                .iter_mut()
                .zip(self.label_chunks.chunks_exact(chunks))
            {
                let ones = idx.iter().fold(T::zero(), |a, &i| a + tab[i as usize]);
                *bm = total - two * ones;
            }
        }
    }

    /// Chunk-table indices of every branch label, `(2 s + u) * chunks + c`.
    fn prepare_labels(&mut self, trellis: &Trellis) {
        let chunks = trellis.n_out().div_ceil(CHUNK_BITS);
        self.chunk_sums.resize(chunks << CHUNK_BITS, T::zero());
        self.label_chunks.clear();
        for s in 0..trellis.num_states() as u32 {
            for u in [false, true] {
                let o = trellis.output(s, u) as usize;
                for c in 0..chunks {
                    self.label_chunks
                        .push(((c << CHUNK_BITS) | ((o >> (c * CHUNK_BITS)) & CHUNK_MASK)) as u16);
                }
            }
        }
    }

    /// Best final metric per end state (negative infinity for an empty list).
    pub(crate) fn best_per_state(&self) -> Vec<T> {
        (0..self.num_states)
            .map(|s| {
                if self.counts[s] > 0 {
                    self.metric[s * self.list]
                } else {
                    T::neg_infinity()
                }
            })
            .collect()
    }

    pub(crate) fn survivors(&self, tail_biting_only: bool) -> Vec<Survivor<T>> {
        let l = self.list;
        let mut out = Vec::new();
        for s in 0..self.num_states {
            for r in 0..self.counts[s] as usize {
                let start = self.start[s * l + r];
                if !tail_biting_only || start == s as u32 {
                    out.push(Survivor {
                        metric: self.metric[s * l + r],
                        end: s as u32,
                        rank: r as u32,
                        start,
                    });
                }
            }
        }
        out.sort_by(merged_cmp);
        out
    }

    /// Input bits along the path of a final survivor.
    pub(crate) fn traceback(&self, trellis: &Trellis, end: u32, rank: u32) -> BitBlock {
        let ns = self.num_states;
        let l = self.list;
        let mut bits = BitBlock::zeros(self.num_stages);
        let mut s = end;
        let mut r = rank;
        for t in (0..self.num_stages).rev() {
            if trellis.input_into(s) {
                bits.set(t, true);
            }
            let code = self.back[(t * ns + s as usize) * l + r as usize];
            let b = usize::from(code & CHOICE_BIT != 0);
            s = trellis.predecessors(s)[b];
            r = code & !CHOICE_BIT;
        }
        bits
    }

    /// 1-based position of a survivor in the full merged list.
    pub(crate) fn merged_rank(&self, target: &Survivor<T>) -> usize {
        let l = self.list;
        let mut before = 0usize;
        for s in 0..self.num_states {
            let c = self.counts[s] as usize;
            let metrics = &self.metric[s * l..s * l + c];
            // Entries of state s that precede the target in the merged order.
            before += metrics
                .iter()
                .enumerate()
                .take_while(|&(r, &m)| {
                    let probe = Survivor {
                        metric: m,
                        end: s as u32,
                        rank: r as u32,
                        start: 0,
                    };
                    merged_cmp(&probe, target) == Ordering::Less
                })
                .count();
        }
        before + 1
    }

    /// True when no path outside the current lists can precede `target` in the merged
    /// order of any larger list: every full per-state list ends at or after `target`.
    pub(crate) fn frontier_dominated_by(&self, target: &Survivor<T>) -> bool {
        let l = self.list;
        (0..self.num_states).all(|s| {
            let c = self.counts[s] as usize;
            if c < l {
                return true;
            }
            let last = Survivor {
                metric: self.metric[s * l + c - 1],
                end: s as u32,
                rank: (c - 1) as u32,
                start: 0,
            };
            merged_cmp(&last, target) != Ordering::Less
        })
    }

    /// First survivor (in merged order) passing the tail-biting condition, if required,
    /// and the CRC, if given.
    pub(crate) fn select(
        &self,
        trellis: &Trellis,
        crc: Option<&CrcTable>,
        tb_required: bool,
    ) -> Option<(Survivor<T>, BitBlock)> {
        for sv in self.survivors(tb_required) {
            let data = self.traceback(trellis, sv.end, sv.rank);
            if crc.is_none_or(|t| t.passes(&data)) {
                return Some((sv, data));
            }
        }
        None
    }

    /// Full merged list of all survivors; see [`lva_decode`].
    pub fn decode(
        &mut self,
        llrs: &[T],
        trellis: &Trellis,
        list: usize,
        init: &[T],
    ) -> RankedList<T> {
        self.run(llrs, trellis, list, init);
        let entries = self
            .survivors(false)
            .into_iter()
            .enumerate()
            .map(|(i, sv)| CandidatePath {
                data: self.traceback(trellis, sv.end, sv.rank),
                metric: sv.metric,
                rank: i + 1,
                states: Some((sv.start, sv.end)),
            })
            .collect();
        RankedList {
            entries,
            list_size: list,
        }
    }

    /// One Viterbi pass from all-zero state metrics; final metrics normalized to max 0.
    pub fn wava_init(&mut self, llrs: &[T], trellis: &Trellis) -> Vec<T> {
        let zeros = vec![T::zero(); trellis.num_states()];
        self.run(llrs, trellis, 1, &zeros);
        let mut m = self.best_per_state();
        let best = m.iter().copied().fold(T::neg_infinity(), T::max);
        for x in &mut m {
            *x = *x - best;
        }
        m
    }
}

/// See [`ListViterbi::decode`].
pub fn lva_decode<T: Scalar>(
    llrs: &[T],
    trellis: &Trellis,
    list: usize,
    init: &[T],
) -> RankedList<T> {
    ListViterbi::new().decode(llrs, trellis, list, init)
}

/// See [`ListViterbi::wava_init`].
pub fn wava_init_metrics<T: Scalar>(llrs: &[T], trellis: &Trellis) -> Vec<T> {
    ListViterbi::new().wava_init(llrs, trellis)
}

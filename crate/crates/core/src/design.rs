//! Code design searches: distance-spectrum-optimal CRC selection, puncture
//! optimization and randomized convolutional-code search.

use std::cmp::Ordering;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::convolutional::{ConvCode, PuncturePattern};
use crate::crc::{CrcPoly, CrcTable};
use crate::error::{Error, Result};
use crate::gf2::BitBlock;
use crate::spectrum::{
    bounded_weight_tb_search_punctured, full_spectrum_gray, polar_low_weight_probe, CodewordSet,
    WeightSpectrum,
};
use crate::system::{CodeSystem, InnerCode};

/// Byte-sliced CRC remainders for repeated checks of many data words.
struct FastRemainder {
    tables: Vec<[u64; 256]>,
}

impl FastRemainder {
    fn new(poly: CrcPoly, len: usize) -> Self {
        let table = CrcTable::new(poly, len);
        let res = table.residues();
        let tables = (0..len.div_ceil(8))
            .map(|byte| {
                let mut t = [0u64; 256];
                for (v, slot) in t.iter_mut().enumerate() {
                    for bit in 0..8 {
                        let i = byte * 8 + bit;
                        if (v >> bit) & 1 == 1 && i < len {
                            *slot ^= res[i];
                        }
                    }
                }
                t
            })
            .collect();
        Self { tables }
    }

    #[inline]
    fn passes(&self, data: &BitBlock) -> bool {
        let mut rem = 0;
        let bytes = data.words().iter().flat_map(|w| w.to_le_bytes());
        for (t, b) in self.tables.iter().zip(bytes) {
            rem ^= t[b as usize];
        }
        rem == 0
    }
}

/// Candidates that expurgate every listed low-weight codeword, i.e. under which no
/// listed data word passes the CRC check.
pub fn crc_survivor_filter(
    low_weight: &CodewordSet,
    candidates: &[CrcPoly],
    data_len: usize,
) -> Vec<CrcPoly> {
    candidates
        .par_iter()
        .filter(|g| {
            let fr = FastRemainder::new(**g, data_len);
            low_weight.iter().all(|(_, d)| !fr.passes(d))
        })
        .copied()
        .collect()
}

/// One CRC candidate evaluated on a concatenated system.
#[derive(Clone, Debug, PartialEq)]
pub struct CrcCandidateReport {
    pub poly: CrcPoly,
    /// `None` when no codeword lies within the evaluated weight range.
    pub d_min: Option<usize>,
    pub a_dmin: u64,
    pub survived_filter: bool,
    pub spectrum: Option<WeightSpectrum>,
}

impl CrcCandidateReport {
    pub fn new(poly: CrcPoly, survived_filter: bool, spectrum: Option<WeightSpectrum>) -> Self {
        let d_min = spectrum.as_ref().and_then(|s| s.d_min());
        let a_dmin = match (&spectrum, d_min) {
            (Some(s), Some(d)) => s.count(d),
            _ => 0,
        };
        Self {
            poly,
            d_min,
            a_dmin,
            survived_filter,
            spectrum,
        }
    }
}

/// All candidate reports and the index of the selected optimum.
#[derive(Clone, Debug)]
pub struct CrcSearchReport {
    pub reports: Vec<CrcCandidateReport>,
    pub best: usize,
}

impl CrcSearchReport {
    pub fn best(&self) -> &CrcCandidateReport {
        &self.reports[self.best]
    }

    pub fn survivors(&self) -> impl Iterator<Item = &CrcCandidateReport> {
        self.reports.iter().filter(|r| r.survived_filter)
    }

    /// `poly_hex,dmin,A_dmin,survived,selected` with one row per candidate.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("poly_hex,dmin,A_dmin,survived,selected\n");
        for (i, r) in self.reports.iter().enumerate() {
            let d = r.d_min.map(|d| d.to_string()).unwrap_or_default();
            writeln!(
                s,
                "{},{d},{},{},{}",
                r.poly.to_hex(),
                r.a_dmin,
                r.survived_filter,
                i == self.best
            )
            .expect("write to string");
        }
        s
    }
}

/// Lexicographic order on `A(1), A(2), ...` over the weights both spectra cover; a smaller
/// multiplicity at the first differing weight is better. This ranks by larger `d_min`,
/// then smaller `A(d_min)`, then smaller multiplicities at successive weights.
fn spectrum_order(a: &WeightSpectrum, b: &WeightSpectrum) -> Ordering {
    let top = a.weight_bound().min(b.weight_bound());
    a.counts()[1..=top].cmp(&b.counts()[1..=top])
}

fn candidate_order(a: &CrcCandidateReport, b: &CrcCandidateReport) -> Ordering {
    let by_spectrum = match (&a.spectrum, &b.spectrum) {
        (Some(x), Some(y)) => spectrum_order(x, y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    };
    by_spectrum.then(a.poly.value().cmp(&b.poly.value()))
}

fn pick_best(reports: &[CrcCandidateReport]) -> Option<usize> {
    reports
        .iter()
        .enumerate()
        .filter(|(_, r)| r.survived_filter)
        .min_by(|(_, a), (_, b)| candidate_order(a, b))
        .map(|(i, _)| i)
}

/// Full Gray enumeration of the concatenated code for each candidate; the optimum has
/// the largest `d_min`, then the smallest `A(d_min)`, then smaller multiplicities at
/// successive weights, then the smallest hex value.
pub fn dso_crc_select(system: &CodeSystem, candidates: &[CrcPoly]) -> Result<CrcSearchReport> {
    if candidates.is_empty() {
        return Err(Error::Parameter("no CRC candidates".into()));
    }
    let mut reports = Vec::with_capacity(candidates.len());
    for &g in candidates {
        let ws = full_spectrum_gray(&system.with_crc(Some(g))?.generator()?)?;
        reports.push(CrcCandidateReport::new(g, true, Some(ws)));
    }
    let best = pick_best(&reports).expect("nonempty");
    Ok(CrcSearchReport { reports, best })
}

/// Polar pipeline: probe the inner code at list size `probe_list`, keep probe codewords
/// of weight `<= filter_weight`, discard every width-`width` candidate that fails to
/// expurgate them all, then rank the survivors by full enumeration.
pub fn polar_dso_crc_search(
    system: &CodeSystem,
    width: usize,
    probe_list: usize,
    filter_weight: usize,
) -> Result<CrcSearchReport> {
    let template = template_for_width(system, width)?;
    let InnerCode::Polar { code } = template.inner() else {
        return Err(Error::Parameter(
            "polar CRC search needs a polar system".into(),
        ));
    };
    let probe = polar_low_weight_probe(code, probe_list)?;
    let mut low = CodewordSet::new(filter_weight);
    low.extend(probe.iter().map(|(c, d)| (c.clone(), d.clone())));
    let candidates: Vec<_> = CrcPoly::candidates(width).collect();
    let survivors = crc_survivor_filter(&low, &candidates, template.inner_len());

    let mut reports = Vec::with_capacity(candidates.len());
    for &g in &candidates {
        if survivors.contains(&g) {
            let ws = full_spectrum_gray(&template.with_crc(Some(g))?.generator()?)?;
            reports.push(CrcCandidateReport::new(g, true, Some(ws)));
        } else {
            reports.push(CrcCandidateReport::new(g, false, None));
        }
    }
    let best = pick_best(&reports).ok_or_else(|| {
        Error::Parameter("no CRC candidate survived the low-weight filter".into())
    })?;
    Ok(CrcSearchReport { reports, best })
}

/// TBCC pipeline: enumerate inner codewords of weight `<= w_cap` by trellis search, read
/// off each candidate's concatenated spectrum up to `w_cap` (a concatenated codeword is
/// an inner codeword whose data passes the CRC), and keep the candidates tied for the
/// best partial spectrum. With `confirm`, those are re-ranked by full enumeration.
pub fn tbcc_dso_crc_search(
    system: &CodeSystem,
    width: usize,
    w_cap: usize,
    confirm: bool,
) -> Result<CrcSearchReport> {
    let template = template_for_width(system, width)?;
    let InnerCode::Tbcc { code, puncture, .. } = template.inner() else {
        return Err(Error::Parameter(
            "TBCC CRC search needs a TBCC system".into(),
        ));
    };
    let k = template.inner_len();
    let (_, low) = bounded_weight_tb_search_punctured(code, k, puncture, w_cap)?;
    let n = template.n();
    let candidates: Vec<_> = CrcPoly::candidates(width).collect();
    let mut reports: Vec<CrcCandidateReport> = candidates
        .par_iter()
        .map(|&g| {
            let fr = FastRemainder::new(g, k);
            let pairs = low
                .iter()
                .filter(|(_, d)| fr.passes(d))
                .map(|(c, _)| (c.weight(), 1));
            let ws = WeightSpectrum::from_pairs(
                n,
                template.message_len(),
                w_cap,
                std::iter::once((0, 1)).chain(pairs),
            )
            .expect("weights within block length");
            CrcCandidateReport::new(g, false, Some(ws))
        })
        .collect();

    let leader = (0..reports.len())
        .min_by(|&a, &b| candidate_order(&reports[a], &reports[b]))
        .expect("nonempty");
    let lead_spec = reports[leader].spectrum.clone().expect("partial spectrum");
    for r in &mut reports {
        let tied = spectrum_order(r.spectrum.as_ref().expect("partial spectrum"), &lead_spec);
        r.survived_filter = tied == Ordering::Equal;
    }
    if confirm {
        for r in reports.iter_mut().filter(|r| r.survived_filter) {
            let ws = full_spectrum_gray(&template.with_crc(Some(r.poly))?.generator()?)?;
            *r = CrcCandidateReport::new(r.poly, true, Some(ws));
        }
    }
    let best = pick_best(&reports).expect("leader survives");
    Ok(CrcSearchReport { reports, best })
}

/// The system with a width-`width` CRC slot (the CRC value itself is irrelevant).
fn template_for_width(system: &CodeSystem, width: usize) -> Result<CodeSystem> {
    if !(1..=32).contains(&width) {
        return Err(Error::Parameter(format!("CRC width {width} out of range")));
    }
    let placeholder = CrcPoly::new((1 << width) | 1, width)?;
    if let InnerCode::Polar { code } = system.inner() {
        if code.k() != system.message_len() + width {
            return Err(Error::Parameter(format!(
                "polar code dimension {} does not fit a {}-bit message with a width-{width} CRC",
                code.k(),
                system.message_len()
            )));
        }
    }
    system.with_crc(Some(placeholder))
}

/// Greedy puncture selection over a set of low-weight codewords.
///
/// Each step takes the column with the most zeros across `words`. Among equally good
/// columns it prefers the one that leaves the punctured words heaviest: the histogram of
/// punctured weights, read from the lightest weight up, must be smallest. Remaining ties
/// go to the lower index.
pub fn optimize_puncture(words: &CodewordSet, count: usize) -> Result<PuncturePattern> {
    let first = words
        .iter()
        .next()
        .ok_or_else(|| Error::Parameter("empty codeword set".into()))?;
    let n = first.0.len();
    if count >= n {
        return Err(Error::InvalidPuncture(format!(
            "cannot puncture {count} of {n} positions"
        )));
    }
    let list: Vec<&BitBlock> = words.iter().map(|(c, _)| c).collect();
    let mut ones = vec![0usize; n];
    for c in &list {
        for (i, _) in c.iter().enumerate().filter(|(_, b)| *b) {
            ones[i] += 1;
        }
    }
    let mut punctured: Vec<usize> = list.iter().map(|c| c.weight()).collect();
    let mut chosen = Vec::with_capacity(count);
    let mut taken = vec![false; n];
    for _ in 0..count {
        let fewest = (0..n)
            .filter(|&i| !taken[i])
            .map(|i| ones[i])
            .min()
            .expect("free column");
        let histogram = |i: usize| {
            let mut h = vec![0usize; n + 1];
            for (c, &w) in list.iter().zip(&punctured) {
                h[w - usize::from(c.get(i))] += 1;
            }
            h
        };
        let best = (0..n)
            .filter(|&i| !taken[i] && ones[i] == fewest)
            .map(|i| (histogram(i), i))
            .min()
            .map(|(_, i)| i)
            .expect("free column");
        for (c, w) in list.iter().zip(punctured.iter_mut()) {
            *w -= usize::from(c.get(best));
        }
        taken[best] = true;
        chosen.push(best);
    }
    PuncturePattern::new(chosen, n)
}

/// Minimum nonzero weight of the tail-biting code with `k` stages.
pub fn tb_free_distance(code: &ConvCode, k: usize) -> Result<usize> {
    if k < code.memory() || k == 0 {
        return Err(Error::TailBitingInfeasible {
            len: k,
            memory: code.memory(),
        });
    }
    let states = code.num_states() as u32;
    let best = (0..states)
        .into_par_iter()
        .map(|start| {
            // Index `2 * state + nonzero`: least weight so far, tracking whether any input was 1.
            let inf = usize::MAX;
            let mut dist = vec![inf; 2 * states as usize];
            dist[2 * start as usize + usize::from(start != 0)] = 0;
            for _ in 0..k {
                let mut next = vec![inf; dist.len()];
                for (idx, &d) in dist.iter().enumerate().filter(|(_, &d)| d != inf) {
                    let (s, nz) = ((idx / 2) as u32, idx % 2);
                    for b in [false, true] {
                        let w = code.branch_output(s, b).count_ones() as usize;
                        let to = 2 * code.next_state(s, b) as usize + (nz | usize::from(b));
                        next[to] = next[to].min(d + w);
                    }
                }
                dist = next;
            }
            dist[2 * start as usize + 1]
        })
        .min()
        .expect("at least one state");
    Ok(best)
}

/// A convolutional code with its tail-biting `d_free` and `A(d_free..=d_free+horizon)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvSearchRecord {
    pub code: ConvCode,
    pub d_free: usize,
    pub counts: Vec<u64>,
}

impl ConvSearchRecord {
    fn order(&self, other: &Self) -> Ordering {
        other
            .d_free
            .cmp(&self.d_free)
            .then_with(|| self.counts.cmp(&other.counts))
            .then_with(|| self.code.taps().cmp(other.code.taps()))
    }
}

/// Tail-biting free distance and the multiplicities just above it.
pub fn evaluate_conv_code(code: &ConvCode, k: usize, horizon: usize) -> Result<ConvSearchRecord> {
    let d_free = tb_free_distance(code, k)?;
    let (ws, _) = bounded_weight_tb_search_punctured(
        code,
        k,
        &PuncturePattern::none(k * code.n_out()),
        d_free + horizon,
    )?;
    let counts = (d_free..=d_free + horizon).map(|d| ws.count(d)).collect();
    Ok(ConvSearchRecord {
        code: code.clone(),
        d_free,
        counts,
    })
}

/// Samples `trials` codes with memory `v` and `n_out` distinct generators, each with both
/// end taps set, and ranks them by larger `d_free`, then lexicographically smaller
/// `A(d_free), ..., A(d_free + horizon)`.
pub fn random_conv_search(
    v: usize,
    n_out: usize,
    k: usize,
    trials: usize,
    horizon: usize,
    seed: u64,
) -> Result<Vec<ConvSearchRecord>> {
    if trials == 0 {
        return Err(Error::Parameter("at least one trial is required".into()));
    }
    if v == 0 || v > 16 || n_out == 0 || n_out > 32 {
        return Err(Error::MalformedCode(format!("memory {v}, {n_out} outputs")));
    }
    let choices = 1u64 << (v - 1);
    if n_out as u64 > choices {
        return Err(Error::MalformedCode(format!(
            "only {choices} generators of memory {v} have both end taps"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let codes: Vec<ConvCode> = (0..trials)
        .map(|_| {
            let mut taps: Vec<u32> = Vec::with_capacity(n_out);
            while taps.len() < n_out {
                let mid = rng.random_range(0..choices) as u32;
                let t = (1 << v) | (mid << 1) | 1;
                if !taps.contains(&t) {
                    taps.push(t);
                }
            }
            ConvCode::new(v, taps)
        })
        .collect::<Result<_>>()?;
    let mut records = codes
        .iter()
        .map(|c| evaluate_conv_code(c, k, horizon))
        .collect::<Result<Vec<_>>>()?;
    records.sort_by(|a, b| a.order(b));
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::GeneratorMatrix;
    use crate::polar::{PolarCode, ReliabilitySequence};
    use crate::spectrum::{full_spectrum_gray_with, EnumOptions};
    use proptest::prelude::*;

    fn set_of(words: &[&str]) -> CodewordSet {
        let mut set = CodewordSet::new(usize::MAX);
        for w in words {
            set.insert(BitBlock::parse_binary(w).unwrap(), BitBlock::zeros(1));
        }
        set
    }

    #[test]
    fn filter_examples() {
        let cands: Vec<_> = CrcPoly::candidates(3).collect();
        assert_eq!(crc_survivor_filter(&CodewordSet::new(10), &cands, 8), cands);

        let g0 = cands[1];
        let data = g0.append(&BitBlock::from_u64(0b10110, 5));
        let mut set = CodewordSet::new(100);
        set.insert(BitBlock::parse_binary("1").unwrap(), data.clone());
        let surv = crc_survivor_filter(&set, &cands, 8);
        assert!(!surv.contains(&g0));
        for g in cands {
            assert_eq!(surv.contains(&g), !g.check(&data).unwrap());
        }
    }

    #[test]
    fn fast_remainder_matches_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for g in CrcPoly::candidates(6) {
            for len in [7, 43, 64, 100] {
                let fr = FastRemainder::new(g, len);
                for _ in 0..20 {
                    let d = BitBlock::random(len, &mut rng);
                    assert_eq!(fr.passes(&d), g.remainder_of(&d) == 0);
                }
                let good = g.append(&BitBlock::random(len - 6, &mut rng));
                assert!(fr.passes(&good));
            }
        }
    }

    #[test]
    fn puncture_examples() {
        let p = optimize_puncture(&set_of(&["1100", "0110", "0011"]), 1).unwrap();
        assert_eq!(p.positions(), &[0]);
        let p = optimize_puncture(&set_of(&["1101", "0111", "1011"]), 2).unwrap();
        assert_eq!(p.positions(), &[0, 1]);
        let p = optimize_puncture(&set_of(&["1011", "1110"]), 1).unwrap();
        assert_eq!(p.positions(), &[1]);
        // Columns 2, 3 and 4 tie on zeros; column 3 spares the lighter word.
        let p = optimize_puncture(&set_of(&["01100", "01011"]), 2).unwrap();
        assert_eq!(p.positions(), &[0, 3]);
        assert!(optimize_puncture(&CodewordSet::new(4), 1).is_err());
        assert!(optimize_puncture(&set_of(&["1100"]), 4).is_err());
    }

    #[test]
    fn dso_select_prefers_larger_distance_then_fewer_words() {
        let code = PolarCode::construct(&ReliabilitySequence::nr5g(), 32, 12).unwrap();
        let template =
            CodeSystem::polar(8, Some(CrcPoly::parse_hex("0x11", 4).unwrap()), code).unwrap();
        assert!(template_for_width(&template, 5).is_err());
        let cands: Vec<_> = CrcPoly::candidates(4).collect();
        let report = dso_crc_select(&template, &cands).unwrap();
        let best = report.best();
        for r in &report.reports {
            let (d, a) = (r.d_min.unwrap(), r.a_dmin);
            let (bd, ba) = (best.d_min.unwrap(), best.a_dmin);
            assert!(d < bd || (d == bd && a >= ba));
        }
        let single = dso_crc_select(&template, &cands[3..4]).unwrap();
        assert_eq!(single.best().poly, cands[3]);
        assert!(dso_crc_select(&template, &[]).is_err());
    }

    #[test]
    fn tbcc_search_partial_matches_enumeration() {
        let code = ConvCode::from_octal(3, &["15", "17", "13"]).unwrap();
        let sys = CodeSystem::tbcc(
            10,
            Some(CrcPoly::parse_hex("0xB", 3).unwrap()),
            code,
            vec![],
        )
        .unwrap();
        let report = tbcc_dso_crc_search(&sys, 3, 14, false).unwrap();
        for r in &report.reports {
            let full =
                full_spectrum_gray(&sys.with_crc(Some(r.poly)).unwrap().generator().unwrap())
                    .unwrap();
            assert_eq!(
                r.spectrum.as_ref().unwrap(),
                &full.truncated(14),
                "{:?}",
                r.poly
            );
        }
        let confirmed = tbcc_dso_crc_search(&sys, 3, 14, true).unwrap();
        let exhaustive = dso_crc_select(&sys, &CrcPoly::candidates(3).collect::<Vec<_>>()).unwrap();
        assert_eq!(confirmed.best().poly, exhaustive.best().poly);
    }

    #[test]
    fn free_distance_matches_enumeration() {
        for (v, taps) in [
            (2, vec!["7", "5"]),
            (3, vec!["15", "17"]),
            (4, vec!["23", "35", "27"]),
        ] {
            let code = ConvCode::from_octal(v, &taps).unwrap();
            for k in v.max(2)..=11 {
                let n = k * code.n_out();
                let g = GeneratorMatrix::from_encoder(k, n, |m| code.tb_encode(m)).unwrap();
                let ws = full_spectrum_gray(&g).unwrap();
                assert_eq!(
                    tb_free_distance(&code, k).unwrap(),
                    ws.d_min().unwrap(),
                    "{taps:?} k={k}"
                );
            }
        }
    }

    #[test]
    fn conv_search_is_deterministic_and_ranked() {
        let a = random_conv_search(4, 2, 12, 12, 3, 7).unwrap();
        assert_eq!(a, random_conv_search(4, 2, 12, 12, 3, 7).unwrap());
        assert_eq!(a.len(), 12);
        for w in a.windows(2) {
            assert_ne!(w[0].order(&w[1]), Ordering::Greater);
        }
        for r in &a {
            let t = r.code.taps();
            assert_ne!(t[0], t[1]);
            assert!(t.iter().all(|&x| x & 1 == 1 && x >> 4 == 1));
        }
        let one = random_conv_search(4, 2, 12, 1, 3, 99).unwrap();
        assert_eq!(one.len(), 1);
        assert!(random_conv_search(2, 3, 12, 1, 3, 0).is_err());
    }

    #[test]
    fn memory_two_search_matches_exhaustive() {
        let recs = random_conv_search(2, 2, 8, 8, 2, 1).unwrap();
        let code = ConvCode::from_octal(2, &["7", "5"]).unwrap();
        let g = GeneratorMatrix::from_encoder(8, 16, |m| code.tb_encode(m)).unwrap();
        let ws = full_spectrum_gray(&g).unwrap();
        let d = ws.d_min().unwrap();
        assert_eq!(recs[0].d_free, d);
        assert_eq!(
            recs[0].counts,
            vec![ws.count(d), ws.count(d + 1), ws.count(d + 2)]
        );
        let mut taps = recs[0].code.taps().to_vec();
        taps.sort();
        assert_eq!(taps, vec![0o5, 0o7]);
    }

    #[test]
    fn gray_collection_and_trellis_search_agree_on_crc_words() {
        let code = ConvCode::from_octal(3, &["15", "17"]).unwrap();
        let g = CrcPoly::parse_hex("0x13", 4).unwrap();
        let sys = CodeSystem::tbcc(10, Some(g), code.clone(), vec![]).unwrap();
        let (_, set) = full_spectrum_gray_with(
            &sys.generator().unwrap(),
            EnumOptions {
                collect_up_to: Some(9),
                ..Default::default()
            },
        )
        .unwrap();
        let (_, inner) = crate::spectrum::bounded_weight_tb_search(&code, 14, 9).unwrap();
        let table = CrcTable::new(g, 14);
        let mut from_trellis: Vec<_> = inner
            .iter()
            .filter(|(_, d)| table.passes(d))
            .map(|(c, _)| c.to_hex())
            .collect();
        let mut from_gray: Vec<_> = set.iter().map(|(c, _)| c.to_hex()).collect();
        from_trellis.sort();
        from_gray.sort();
        assert_eq!(from_trellis, from_gray);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn filter_is_antimonotone(seed in any::<u64>(), extra in 1usize..20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cands: Vec<_> = CrcPoly::candidates(5).collect();
            let mut small = CodewordSet::new(usize::MAX);
            for _ in 0..5 {
                small.insert(BitBlock::random(30, &mut rng), BitBlock::random(20, &mut rng));
            }
            let mut big = small.clone();
            for _ in 0..extra {
                big.insert(BitBlock::random(30, &mut rng), BitBlock::random(20, &mut rng));
            }
            let s_small = crc_survivor_filter(&small, &cands, 20);
            let s_big = crc_survivor_filter(&big, &cands, 20);
            prop_assert!(s_big.iter().all(|g| s_small.contains(g)));
            prop_assert!(s_small.iter().all(|g| cands.contains(g)));
        }
    }
}

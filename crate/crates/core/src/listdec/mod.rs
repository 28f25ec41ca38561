//! CRC-aided list decoding: successive-cancellation list decoding of polar codes,
//! parallel list Viterbi decoding of tail-biting convolutional codes, CRC selection,
//! and the adaptive list-doubling wrapper.

mod adaptive;
mod lva;
mod scl;

pub use adaptive::{adaptive_decode, SystemDecoder};
pub use lva::{lva_decode, wava_init_metrics, ListViterbi};
pub use scl::{scl_decode, SclDecoder};

use serde::{Deserialize, Serialize};

use crate::crc::CrcPoly;
use crate::error::{Error, Result};
use crate::gf2::BitBlock;
use crate::scalar::Scalar;

/// Adaptive list schedule `(L_min, L_max)`: decode at `L_min`, double until `L_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ListConfig {
    pub l_min: usize,
    pub l_max: usize,
}

impl ListConfig {
    pub fn new(l_min: usize, l_max: usize) -> Result<Self> {
        if l_min == 0 || !l_min.is_power_of_two() || !l_max.is_power_of_two() {
            return Err(Error::Parameter(format!(
                "list sizes ({l_min}, {l_max}) must be positive powers of two"
            )));
        }
        if l_min > l_max {
            return Err(Error::Parameter(format!(
                "L_min={l_min} exceeds L_max={l_max}"
            )));
        }
        Ok(Self { l_min, l_max })
    }

    /// Non-adaptive decoding at a single list size.
    pub fn fixed(l: usize) -> Result<Self> {
        Self::new(l, l)
    }

    /// `L_min, 2 L_min, ..., L_max`.
    pub fn schedule(&self) -> impl Iterator<Item = usize> {
        let max = self.l_max;
        std::iter::successors(Some(self.l_min), move |&l| (l < max).then_some(l * 2))
    }
}

/// One decoded path.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidatePath<T> {
    pub data: BitBlock,
    /// Higher is more likely.
    pub metric: T,
    /// 1-based position in the list.
    pub rank: usize,
    /// Trellis `(start, end)` states for list Viterbi paths.
    pub states: Option<(u32, u32)>,
}

impl<T> CandidatePath<T> {
    pub fn is_tail_biting(&self) -> bool {
        self.states.is_none_or(|(s, e)| s == e)
    }
}

/// Metric-ordered candidates from one list decode.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedList<T> {
    pub entries: Vec<CandidatePath<T>>,
    pub list_size: usize,
}

impl<T: Scalar> RankedList<T> {
    pub fn is_metric_ordered(&self) -> bool {
        self.entries.windows(2).all(|w| w[0].metric >= w[1].metric)
            && self
                .entries
                .iter()
                .enumerate()
                .all(|(i, e)| e.rank == i + 1)
    }
}

/// Failure taxonomy of one decoding trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeKind {
    Correct,
    Undetected,
    Erasure,
}

/// Result of CRC-aided selection from a list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    /// Selected inner data word (message and CRC) with its 1-based rank.
    pub selected: Option<(BitBlock, usize)>,
}

/// What the decoder chose, before comparison with the transmitted message.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    /// Decoded message (CRC stripped); `None` for an erasure.
    pub selected: Option<BitBlock>,
    pub rank_selected: Option<usize>,
    /// List size of the last round run.
    pub final_l: usize,
}

impl Decision {
    pub fn erasure(final_l: usize) -> Self {
        Self {
            selected: None,
            rank_selected: None,
            final_l,
        }
    }

    pub fn classify(self, transmitted: &BitBlock) -> DecodeOutcome {
        DecodeOutcome {
            kind: classify_outcome(self.selected.as_ref(), transmitted),
            selected: self.selected,
            rank_selected: self.rank_selected,
            final_l: self.final_l,
        }
    }
}

/// Classified outcome of one decoding trial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub kind: OutcomeKind,
    /// Decoded message (CRC stripped); `None` exactly for erasures.
    pub selected: Option<BitBlock>,
    pub rank_selected: Option<usize>,
    pub final_l: usize,
}

/// Absent selection is an erasure; otherwise correct iff equal to the transmitted word.
pub fn classify_outcome(selected: Option<&BitBlock>, transmitted: &BitBlock) -> OutcomeKind {
    match selected {
        None => OutcomeKind::Erasure,
        Some(s) if s == transmitted => OutcomeKind::Correct,
        Some(_) => OutcomeKind::Undetected,
    }
}

/// Best-ranked entry that passes the CRC (and, if required, the tail-biting condition).
/// Without a CRC every entry passes the check.
pub fn crc_select<T>(list: &RankedList<T>, crc: Option<&CrcPoly>, tb_required: bool) -> Selection {
    let selected = list
        .entries
        .iter()
        .filter(|e| !tb_required || e.is_tail_biting())
        .find(|e| match crc {
            Some(g) => g.remainder_of(&e.data) == 0,
            None => true,
        })
        .map(|e| (e.data.clone(), e.rank));
    Selection { selected }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(
        data: BitBlock,
        metric: f64,
        rank: usize,
        states: Option<(u32, u32)>,
    ) -> CandidatePath<f64> {
        CandidatePath {
            data,
            metric,
            rank,
            states,
        }
    }

    #[test]
    fn list_config_schedule() {
        assert_eq!(
            ListConfig::new(1, 8)
                .unwrap()
                .schedule()
                .collect::<Vec<_>>(),
            vec![1, 2, 4, 8]
        );
        assert_eq!(
            ListConfig::fixed(32)
                .unwrap()
                .schedule()
                .collect::<Vec<_>>(),
            vec![32]
        );
        assert!(ListConfig::new(4, 2).is_err());
        assert!(ListConfig::new(3, 8).is_err());
        assert!(ListConfig::new(0, 8).is_err());
    }

    #[test]
    fn crc_select_examples() {
        let g = CrcPoly::parse_hex("0xE21", 11).unwrap();
        let good = g.append(&BitBlock::from_u64(0xABCD, 32));
        let good2 = g.append(&BitBlock::from_u64(0x1234, 32));
        let mut bad = good.clone();
        bad.flip(0);
        let mut bad2 = good.clone();
        bad2.flip(7);

        let list = RankedList {
            entries: vec![
                entry(bad.clone(), 3.0, 1, None),
                entry(bad2.clone(), 2.0, 2, None),
                entry(good.clone(), 1.0, 3, None),
            ],
            list_size: 4,
        };
        assert_eq!(
            crc_select(&list, Some(&g), false).selected,
            Some((good.clone(), 3))
        );

        let none = RankedList {
            entries: vec![entry(bad.clone(), 3.0, 1, None), entry(bad2, 2.0, 2, None)],
            list_size: 2,
        };
        assert_eq!(crc_select(&none, Some(&g), false).selected, None);

        let two = RankedList {
            entries: vec![
                entry(bad, 3.0, 1, None),
                entry(good2.clone(), 2.0, 2, None),
                entry(good.clone(), 1.0, 3, None),
            ],
            list_size: 4,
        };
        assert_eq!(
            crc_select(&two, Some(&g), false).selected,
            Some((good2.clone(), 2))
        );

        let tb = RankedList {
            entries: vec![
                entry(good2, 2.0, 1, Some((3, 5))),
                entry(good.clone(), 1.0, 2, Some((4, 4))),
            ],
            list_size: 1,
        };
        assert_eq!(
            crc_select(&tb, Some(&g), true).selected,
            Some((good.clone(), 2))
        );
        assert_eq!(crc_select(&tb, None, true).selected, Some((good, 2)));
    }

    #[test]
    fn classify_examples() {
        let a = BitBlock::from_u64(5, 8);
        let b = BitBlock::from_u64(6, 8);
        assert_eq!(classify_outcome(None, &a), OutcomeKind::Erasure);
        assert_eq!(classify_outcome(Some(&a), &a), OutcomeKind::Correct);
        assert_eq!(classify_outcome(Some(&b), &a), OutcomeKind::Undetected);
    }
}

use crate::scalar::Scalar;
use crate::system::{CodeSystem, InnerCode};

use super::{Decision, ListConfig, ListViterbi, SclDecoder};

/// Reusable decoder scratch for one worker. Not shareable during a decode.
#[derive(Debug, Default)]
pub struct SystemDecoder<T> {
    scl: SclDecoder<T>,
    lva: ListViterbi<T>,
    depunctured: Vec<T>,
}

impl<T: Scalar> SystemDecoder<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adaptive CRC-aided list decoding of received LLRs (positive favours 0).
    ///
    /// Polar systems stop at the first list size whose SCL list contains a CRC-passing
    /// path. Tail-biting systems compute wrap-around initial metrics once and reuse them
    /// in every round; a round's selection is accepted early only when no path outside
    /// the current per-state lists could outrank it, so the result always equals the
    /// non-adaptive decode at `L_max`.
    pub fn decode(&mut self, system: &CodeSystem, llrs: &[T], cfg: &ListConfig) -> Decision {
        let mut result = Decision::erasure(cfg.l_max);
        self.rounds(system, llrs, cfg, |l, d, early| {
            if early || l == cfg.l_max {
                result = d;
                false
            } else {
                true
            }
        });
        result
    }

    /// Decisions of the adaptive decoders `(L_min, L)` for every `L` in the schedule of
    /// `cfg`, from one shared run: entry `i` equals `decode` with `L_max = L_min 2^i`.
    pub fn decode_nested(
        &mut self,
        system: &CodeSystem,
        llrs: &[T],
        cfg: &ListConfig,
    ) -> Vec<Decision> {
        let total = cfg.schedule().count();
        let mut out = Vec::with_capacity(total);
        self.rounds(system, llrs, cfg, |_, d, early| {
            if early {
                while out.len() < total {
                    out.push(d.clone());
                }
                false
            } else {
                out.push(d);
                true
            }
        });
        out
    }

    /// Runs the list sizes of the schedule in order. For each round `visit` receives the
    /// list size, the decision if this round were the last, and whether the round may end
    /// decoding early; it returns whether to continue.
    fn rounds<F>(&mut self, system: &CodeSystem, llrs: &[T], cfg: &ListConfig, mut visit: F)
    where
        F: FnMut(usize, Decision, bool) -> bool,
    {
        match system.inner() {
            InnerCode::Polar { code } => {
                for l in cfg.schedule() {
                    self.scl.run(llrs, code, l);
                    let mut decision = Decision::erasure(l);
                    for (r, p) in self.scl.final_order().into_iter().enumerate() {
                        let data = self.scl.path_data(p);
                        if system.crc_table().is_none_or(|t| t.passes(&data)) {
                            decision = Decision {
                                selected: Some(data.slice(0, system.message_len())),
                                rank_selected: Some(r + 1),
                                final_l: l,
                            };
                            break;
                        }
                    }
                    let early = decision.selected.is_some();
                    if !visit(l, decision, early) {
                        return;
                    }
                }
            }
            InnerCode::Tbcc {
                trellis, puncture, ..
            } => {
                let mut full = std::mem::take(&mut self.depunctured);
                puncture
                    .depuncture_into(llrs, &mut full)
                    .expect("LLR length matches the transmitted block");
                let init = self.lva.wava_init(&full, trellis);
                for l in cfg.schedule() {
                    self.lva.run(&full, trellis, l, &init);
                    let (decision, early) = match self.lva.select(trellis, system.crc_table(), true)
                    {
                        Some((sv, data)) => (
                            Decision {
                                selected: Some(data.slice(0, system.message_len())),
                                rank_selected: Some(self.lva.merged_rank(&sv)),
                                final_l: l,
                            },
                            self.lva.frontier_dominated_by(&sv),
                        ),
                        None => (Decision::erasure(l), false),
                    };
                    if !visit(l, decision, early) {
                        break;
                    }
                }
                self.depunctured = full;
            }
        }
    }

    /// Penalty-free access to the SCL engine, e.g. for the low-weight probe.
    pub fn scl(&mut self) -> &mut SclDecoder<T> {
        &mut self.scl
    }

    pub fn lva(&mut self) -> &mut ListViterbi<T> {
        &mut self.lva
    }
}

/// One-shot adaptive decode; see [`SystemDecoder::decode`].
pub fn adaptive_decode<T: Scalar>(llrs: &[T], system: &CodeSystem, cfg: &ListConfig) -> Decision {
    SystemDecoder::new().decode(system, llrs, cfg)
}

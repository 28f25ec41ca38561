//! BPSK over AWGN, Monte Carlo failure-rate measurement and decoder throughput.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::db_to_linear;
use crate::error::{Error, Result};
use crate::gf2::BitBlock;
use crate::listdec::{DecodeOutcome, ListConfig, OutcomeKind, SystemDecoder};
use crate::scalar::Scalar;
use crate::system::CodeSystem;

/// Noise standard deviation per real dimension for BPSK at `ebno_db` and message rate `rate`.
pub fn ebno_to_sigma(ebno_db: f64, rate: f64) -> f64 {
    (1.0 / (2.0 * rate * db_to_linear(ebno_db))).sqrt()
}

/// BPSK/AWGN channel at one operating point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub ebno_db: f64,
    pub sigma: f64,
    pub rate: f64,
    /// Skip the noise but keep the LLR scaling.
    pub noiseless: bool,
}

impl ChannelParams {
    pub fn new(ebno_db: f64, rate: f64) -> Result<Self> {
        if rate.is_nan() || rate <= 0.0 || !ebno_db.is_finite() {
            return Err(Error::Parameter(format!(
                "invalid channel: Eb/N0 {ebno_db} dB, rate {rate}"
            )));
        }
        Ok(Self {
            ebno_db,
            sigma: ebno_to_sigma(ebno_db, rate),
            rate,
            noiseless: false,
        })
    }

    pub fn noiseless(mut self, on: bool) -> Self {
        self.noiseless = on;
        self
    }
}

/// `llr_i = 2 y_i / sigma^2` with `y_i = (1 - 2 c_i) + n_i`; positive favours 0.
pub fn transmit<T: Scalar, R: rand::Rng + ?Sized>(
    cw: &BitBlock,
    ch: &ChannelParams,
    rng: &mut R,
) -> Vec<T> {
    let mut out = Vec::with_capacity(cw.len());
    transmit_into(cw, ch, rng, &mut out);
    out
}

/// [`transmit`] into a reused buffer.
pub fn transmit_into<T: Scalar, R: rand::Rng + ?Sized>(
    cw: &BitBlock,
    ch: &ChannelParams,
    rng: &mut R,
    out: &mut Vec<T>,
) {
    let scale = 2.0 / (ch.sigma * ch.sigma);
    out.clear();
    out.extend(cw.iter().map(|c| {
        let s = if c { -1.0 } else { 1.0 };
        let n: f64 = if ch.noiseless {
            0.0
        } else {
            StandardNormal.sample(rng)
        };
        T::of(scale * (s + ch.sigma * n))
    }));
}

/// Monte Carlo settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub list: ListConfig,
    /// Stop a point after this many failures (undetected plus erasures).
    pub min_errors: u64,
    pub max_trials: u64,
    pub seed: u64,
    /// Worker threads; 0 uses the global pool.
    pub workers: usize,
    pub noiseless: bool,
}

impl SimConfig {
    pub fn new(list: ListConfig, seed: u64) -> Self {
        Self {
            list,
            min_errors: 100,
            max_trials: 100_000_000,
            seed,
            workers: 0,
            noiseless: false,
        }
    }
}

/// Results at one Eb/N0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimPoint {
    pub ebno_db: f64,
    pub trials: u64,
    pub correct: u64,
    pub undetected: u64,
    pub erasure: u64,
    pub tfr: f64,
    pub uer: f64,
    pub erasure_rate: f64,
    /// 95% Wilson score intervals.
    pub tfr_ci: (f64, f64),
    pub uer_ci: (f64, f64),
    pub erasure_ci: (f64, f64),
    pub mean_final_l: f64,
    pub wall_time_s: f64,
    pub cw_per_sec: f64,
}

/// Results over an Eb/N0 sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub list: ListConfig,
    pub seed: u64,
    pub min_errors: u64,
    pub max_trials: u64,
    pub points: Vec<SimPoint>,
}

impl SimReport {
    /// `ebno_db,trials,correct,undetected,erasure,tfr,uer,erasure_rate,mean_final_L,cw_per_sec`.
    /// Throughput is wall-clock dependent; every other column is reproducible.
    pub fn to_csv(&self) -> String {
        self.csv(true)
    }

    /// The CSV with the throughput column blank, for byte-reproducible output.
    pub fn to_csv_deterministic(&self) -> String {
        self.csv(false)
    }

    fn csv(&self, timing: bool) -> String {
        let mut s = String::from(
            "ebno_db,trials,correct,undetected,erasure,tfr,uer,erasure_rate,mean_final_L,cw_per_sec\n",
        );
        for p in &self.points {
            let speed = if timing {
                format!("{:.1}", p.cw_per_sec)
            } else {
                String::new()
            };
            writeln!(
                s,
                "{},{},{},{},{},{:e},{:e},{:e},{},{speed}",
                p.ebno_db,
                p.trials,
                p.correct,
                p.undetected,
                p.erasure,
                p.tfr,
                p.uer,
                p.erasure_rate,
                p.mean_final_l
            )
            .expect("write to string");
        }
        s
    }
}

/// 95% Wilson score interval for `k` successes in `n` trials.
pub fn wilson_interval(k: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let (k, n) = (k as f64, n as f64);
    let p = k / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    let lo = if k == 0.0 {
        0.0
    } else {
        (centre - half).max(0.0)
    };
    let hi = if k == n {
        1.0
    } else {
        (centre + half).min(1.0)
    };
    (lo, hi)
}

/// Key for the per-trial stream: independent of how trials are scheduled.
fn trial_rng(key: &[u8; 32], snr_index: usize, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::from_seed(*key);
    rng.set_stream(((snr_index as u64) << 40) | trial);
    rng
}

fn master_key(seed: u64) -> [u8; 32] {
    let mut key = [0u8; 32];
    rand::Rng::fill(&mut ChaCha8Rng::seed_from_u64(seed), &mut key);
    key
}

/// One noisy trial: random message, full encoding, channel, adaptive decode, classification.
pub fn run_trial<T: Scalar>(
    system: &CodeSystem,
    decoder: &mut SystemDecoder<T>,
    list: &ListConfig,
    ch: &ChannelParams,
    rng: &mut ChaCha8Rng,
) -> DecodeOutcome {
    let msg = BitBlock::random(system.message_len(), rng);
    let cw = system.encode(&msg).expect("message length matches system");
    let llrs: Vec<T> = transmit(&cw, ch, rng);
    decoder.decode(system, &llrs, list).classify(&msg)
}

#[derive(Default)]
struct Tally {
    trials: u64,
    correct: u64,
    undetected: u64,
    erasure: u64,
    final_l: u64,
}

impl Tally {
    fn failures(&self) -> u64 {
        self.undetected + self.erasure
    }

    fn push(&mut self, o: &DecodeOutcome) {
        self.trials += 1;
        self.final_l += o.final_l as u64;
        match o.kind {
            OutcomeKind::Correct => self.correct += 1,
            OutcomeKind::Undetected => self.undetected += 1,
            OutcomeKind::Erasure => self.erasure += 1,
        }
    }
}

/// Monte Carlo sweep with the adaptive decoder.
///
/// Trials run in fixed-size batches; outcomes are folded in trial order and a point stops
/// at the trial that reaches `min_errors` failures (or `max_trials`), so the counts do not
/// depend on the number of workers.
pub fn run_montecarlo<T: Scalar>(
    system: &CodeSystem,
    cfg: &SimConfig,
    ebnos: &[f64],
) -> Result<SimReport> {
    if cfg.min_errors == 0 || cfg.max_trials == 0 {
        return Err(Error::Parameter(
            "min_errors and max_trials must be positive".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;
    let key = master_key(cfg.seed);
    let mut points = Vec::with_capacity(ebnos.len());
    for (si, &e) in ebnos.iter().enumerate() {
        let ch = ChannelParams::new(e, system.rate())?.noiseless(cfg.noiseless);
        let start = Instant::now();
        let mut tally = Tally::default();
        let mut batch = 16u64;
        'point: while tally.trials < cfg.max_trials {
            let first = tally.trials;
            let size = batch.min(cfg.max_trials - first);
            let outcomes: Vec<DecodeOutcome> = pool.install(|| {
                (first..first + size)
                    .into_par_iter()
                    .map_init(SystemDecoder::<T>::new, |dec, t| {
                        let mut rng = trial_rng(&key, si, t);
                        run_trial(system, dec, &cfg.list, &ch, &mut rng)
                    })
                    .collect()
            });
            for o in &outcomes {
                tally.push(o);
                if tally.failures() >= cfg.min_errors {
                    break 'point;
                }
            }
            batch = (batch * 2).min(4096);
        }
        let secs = start.elapsed().as_secs_f64();
        let n = tally.trials as f64;
        points.push(SimPoint {
            ebno_db: e,
            trials: tally.trials,
            correct: tally.correct,
            undetected: tally.undetected,
            erasure: tally.erasure,
            tfr: tally.failures() as f64 / n,
            uer: tally.undetected as f64 / n,
            erasure_rate: tally.erasure as f64 / n,
            tfr_ci: wilson_interval(tally.failures(), tally.trials),
            uer_ci: wilson_interval(tally.undetected, tally.trials),
            erasure_ci: wilson_interval(tally.erasure, tally.trials),
            mean_final_l: tally.final_l as f64 / n,
            wall_time_s: secs,
            cw_per_sec: n / secs.max(1e-9),
        });
    }
    Ok(SimReport {
        list: cfg.list,
        seed: cfg.seed,
        min_errors: cfg.min_errors,
        max_trials: cfg.max_trials,
        points,
    })
}

/// Single-threaded decoding speed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub ebno_db: f64,
    pub list: ListConfig,
    pub codewords: u64,
    pub elapsed_s: f64,
    pub cw_per_sec: f64,
    pub machine: String,
}

/// Decodes fresh noisy codewords for at least `duration` on one thread. Encoding and
/// noise generation are excluded from the timed region.
pub fn benchmark_throughput<T: Scalar>(
    system: &CodeSystem,
    list: &ListConfig,
    ebno_db: f64,
    duration: Duration,
    seed: u64,
) -> Result<BenchReport> {
    if duration.is_zero() {
        return Err(Error::Parameter(
            "benchmark duration must be positive".into(),
        ));
    }
    let ch = ChannelParams::new(ebno_db, system.rate())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dec = SystemDecoder::<T>::new();
    let mut busy = Duration::ZERO;
    let mut count = 0u64;
    let mut llrs: Vec<T> = Vec::new();
    while busy < duration {
        let msg = BitBlock::random(system.message_len(), &mut rng);
        let cw = system.encode(&msg)?;
        transmit_into(&cw, &ch, &mut rng, &mut llrs);
        let t = Instant::now();
        std::hint::black_box(dec.decode(system, &llrs, list));
        busy += t.elapsed();
        count += 1;
    }
    let secs = busy.as_secs_f64();
    Ok(BenchReport {
        ebno_db,
        list: *list,
        codewords: count,
        elapsed_s: secs,
        cw_per_sec: count as f64 / secs,
        machine: machine_descriptor(),
    })
}

/// CPU model, architecture and available parallelism.
pub fn machine_descriptor() -> String {
    let model = std::fs::read_to_string("/proc/cpuinfo")
        .ok()
        .and_then(|s| {
            s.lines()
                .find(|l| l.starts_with("model name"))
                .and_then(|l| l.split_once(':'))
                .map(|(_, m)| m.trim().to_string())
        })
        .unwrap_or_else(|| "unknown cpu".into());
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    format!(
        "{model}; {} {}; {threads} threads",
        std::env::consts::OS,
        std::env::consts::ARCH
    )
}

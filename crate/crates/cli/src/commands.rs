//! Command-line definitions and command implementations.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crclist::analysis::{bound_sweep, bounds_to_csv};
use crclist::design::{
    crc_survivor_filter, dso_crc_select, optimize_puncture, polar_dso_crc_search,
    random_conv_search, tb_free_distance, tbcc_dso_crc_search, CrcCandidateReport, CrcSearchReport,
};
use crclist::simulation::{benchmark_throughput, run_montecarlo, SimConfig, SimReport};
use crclist::spectrum::{
    bounded_weight_tb_search_punctured, full_spectrum_gray_with, polar_low_weight_probe,
    CodewordSet, EnumOptions,
};
use crclist::{
    BitBlock, CodeSystem, CrcPoly, InnerCode, PuncturePattern, Scalar, SystemDecoder,
    WeightSpectrum,
};

use crate::config::{self, Resolved, SystemConfig};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "crclist",
    version,
    about = "CRC-aided list decoding of short TBCC and polar codes"
)]
pub struct Cli {
    /// Worker threads for enumeration, searches and simulation (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight spectrum of a code: full enumeration, bounded trellis search or list probe.
    Spectrum(SpectrumArgs),
    /// Monte Carlo failure rates over AWGN with the adaptive list decoder.
    Simulate(SimulateArgs),
    /// CRC, puncture and convolutional-code design searches.
    Design(DesignArgs),
    /// Union bounds on the frame error rate from a weight spectrum.
    Bounds(BoundsArgs),
    /// Single-threaded decoding throughput.
    Bench(BenchArgs),
    /// Encodes one message through the full pipeline.
    Encode(EncodeArgs),
    /// Decodes one block of received LLRs.
    Decode(DecodeArgs),
}

/// Where the system comes from, plus overrides of its fields.
#[derive(Debug, Args)]
pub struct SystemArgs {
    /// JSON configuration file.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    pub config: Option<PathBuf>,
    /// Bundled configuration by name.
    #[arg(long)]
    pub preset: Option<String>,
    /// Overrides the configured seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides the configured minimum list size.
    #[arg(long)]
    pub l_min: Option<usize>,
    /// Overrides the configured maximum list size.
    #[arg(long)]
    pub l_max: Option<usize>,
    /// Overrides the CRC polynomial (hex with leading coefficient), e.g. 0xD41.
    #[arg(long)]
    pub crc: Option<String>,
    /// Overrides the puncture positions (comma-separated; the bare flag means none).
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub puncture: Option<Vec<usize>>,
}

impl SystemArgs {
    /// The effective configuration and the directory relative paths refer to.
    pub fn load(&self) -> Result<(SystemConfig, PathBuf), CliError> {
        let (mut cfg, base) = match (&self.config, &self.preset) {
            (Some(path), _) => config::load_config(path)?,
            (None, Some(name)) => (config::preset(name)?, PathBuf::new()),
            (None, None) => {
                return Err(CliError::Config("--config or --preset is required".into()))
            }
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(l) = self.l_min {
            cfg.list.l_min = l;
        }
        if let Some(l) = self.l_max {
            cfg.list.l_max = l;
        }
        if let Some(c) = &self.crc {
            cfg.crc = Some(config::CrcConfig {
                poly: c.clone(),
                width: None,
            });
        }
        if let Some(p) = &self.puncture {
            cfg.puncture = p.clone();
        }
        Ok((cfg, base))
    }

    fn resolve(&self) -> Result<(SystemConfig, Resolved), CliError> {
        let (cfg, base) = self.load()?;
        let r = cfg.resolve(&base)?;
        Ok((cfg, r))
    }

    fn system(&self) -> Result<(SystemConfig, CodeSystem), CliError> {
        match self.resolve()? {
            (cfg, Resolved::System(s)) => Ok((cfg, s)),
            (_, Resolved::Block(_)) => Err(CliError::Config(
                "this command needs a TBCC or polar system, not a bare generator matrix".into(),
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumMode {
    /// Exact spectrum of the whole system by Gray-code enumeration of all messages.
    Full,
    /// Exact spectrum up to `--weight` of a TBCC by bounded trellis search.
    Partial,
    /// Low-weight polar codewords found by a list decoder on the all-zero word.
    Probe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    /// Inner code without puncturing or CRC.
    Inner,
    /// Inner code after puncturing.
    Punctured,
    /// The concatenated system: CRC-consistent words, punctured.
    System,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, value_enum)]
    pub mode: SpectrumMode,
    /// Weight cap for `partial`.
    #[arg(long)]
    pub weight: Option<usize>,
    /// List size for `probe`.
    #[arg(long, default_value_t = 32768)]
    pub list: usize,
    /// Which code a partial or probed spectrum describes.
    #[arg(long, value_enum, default_value_t = Scope::Inner)]
    pub scope: Scope,
    /// Allow full enumeration beyond 2^34 messages.
    #[arg(long)]
    pub allow_large: bool,
    /// Also write the codewords found (hex and weight) to this file; for `full`, those of
    /// weight at most `--weight`.
    #[arg(long)]
    pub words: Option<PathBuf>,
    /// Output CSV (`d,A`); standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    F32,
    F64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Eb/N0 points in dB, comma-separated.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub ebno: Vec<f64>,
    /// Failures per point before stopping.
    #[arg(long, default_value_t = 100)]
    pub min_errors: u64,
    /// Trial cap per point.
    #[arg(long, default_value_t = 100_000_000)]
    pub max_trials: u64,
    /// Transmit without noise.
    #[arg(long)]
    pub noiseless: bool,
    #[arg(long, value_enum, default_value_t = Precision::F32)]
    pub precision: Precision,
    /// Fill the wall-clock columns; otherwise they are left blank (CSV) or zero (JSON) so
    /// reruns are byte-identical.
    #[arg(long)]
    pub timing: bool,
    /// Writes `<out>.csv` and `<out>.json`; CSV to standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    #[command(subcommand)]
    pub task: DesignTask,
}

#[derive(Debug, Subcommand)]
pub enum DesignTask {
    /// Distance-spectrum-optimal CRC of a given width for the configured inner code.
    CrcSearch(CrcSearchArgs),
    /// Puncture positions chosen from the minimum-weight codewords of the system.
    Puncture(PunctureArgs),
    /// Random search over convolutional codes ranked by tail-biting spectrum.
    ConvSearch(ConvSearchArgs),
}

#[derive(Debug, Args)]
pub struct CrcSearchArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// CRC degree.
    #[arg(long)]
    pub width: usize,
    /// Restrict the candidates (hex, comma-separated); default: all of the width.
    #[arg(long, value_delimiter = ',')]
    pub candidates: Option<Vec<String>>,
    /// Polar: list size of the low-weight probe.
    #[arg(long, default_value_t = 32768)]
    pub probe_list: usize,
    /// Polar: probe words up to this weight must be expurgated by a surviving CRC.
    #[arg(long, default_value_t = 96)]
    pub filter_weight: usize,
    /// TBCC: weight cap of the inner-codeword search.
    #[arg(long, default_value_t = 132)]
    pub weight_cap: usize,
    /// Stop after the low-weight filter (polar) or partial ranking (TBCC) without full
    /// enumeration; the flagged optimum is then the partial-spectrum leader.
    #[arg(long)]
    pub no_confirm: bool,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PunctureArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Number of positions to delete.
    #[arg(long, default_value_t = 4)]
    pub count: usize,
    /// Output CSV (`position`); standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvSearchArgs {
    /// Encoder memory.
    #[arg(long)]
    pub memory: usize,
    /// Generator polynomials per code (outputs per input bit).
    #[arg(long)]
    pub outputs: usize,
    /// Tail-biting length in input bits.
    #[arg(long)]
    pub k: usize,
    /// Number of random codes.
    #[arg(long)]
    pub trials: usize,
    /// Multiplicities ranked beyond `d_free`.
    #[arg(long, default_value_t = 3)]
    pub horizon: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Spectrum CSV (`d,A`) to use instead of enumerating the system.
    #[arg(long)]
    pub spectrum: Option<PathBuf>,
    /// Eb/N0 points in dB, comma-separated.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_negative_numbers = true
    )]
    pub ebno: Vec<f64>,
    /// Truncation weights, comma-separated; `full` for the untruncated bound.
    #[arg(long, value_delimiter = ',', default_value = "full")]
    pub d_max: Vec<String>,
    /// Output CSV; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub ebno: f64,
    /// Seconds of decoding.
    #[arg(long, default_value_t = 5.0)]
    pub duration: f64,
    #[arg(long, value_enum, default_value_t = Precision::F32)]
    pub precision: Precision,
    /// Output JSON; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Message as a binary string, bit 0 first.
    #[arg(long)]
    pub message: String,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Whitespace-separated LLRs (positive favours 0); standard input when absent.
    #[arg(long)]
    pub llrs: Option<PathBuf>,
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let workers = match cli.workers {
        Some(0) => return Err(CliError::Config("--workers must be positive".into())),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Spectrum(a) => cmd_spectrum(&a),
        Command::Simulate(a) => cmd_simulate(&a, workers),
        Command::Design(a) => match a.task {
            DesignTask::CrcSearch(a) => cmd_crc_search(&a),
            DesignTask::Puncture(a) => cmd_puncture(&a),
            DesignTask::ConvSearch(a) => cmd_conv_search(&a),
        },
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Bench(a) => cmd_bench(&a),
        Command::Encode(a) => cmd_encode(&a),
        Command::Decode(a) => cmd_decode(&a),
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| CliError::Internal(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> Result<(), CliError> {
    let (_, resolved) = a.system.resolve()?;
    let (ws, words) = match a.mode {
        SpectrumMode::Full => {
            let g = match &resolved {
                Resolved::Block(g) => g.clone(),
                Resolved::System(s) => s.generator()?,
            };
            let opts = EnumOptions {
                allow_large: a.allow_large,
                collect_up_to: a.words.as_ref().and(a.weight),
            };
            if a.words.is_some() && a.weight.is_none() {
                return Err(CliError::Config(
                    "--words with --mode full needs --weight".into(),
                ));
            }
            full_spectrum_gray_with(&g, opts)?
        }
        SpectrumMode::Partial => {
            let w = a
                .weight
                .ok_or_else(|| CliError::Config("--mode partial needs --weight".into()))?;
            let Resolved::System(s) = &resolved else {
                return Err(CliError::Config(
                    "partial spectra need a TBCC system".into(),
                ));
            };
            let InnerCode::Tbcc { code, puncture, .. } = s.inner() else {
                return Err(CliError::Config(
                    "partial spectra need a TBCC system".into(),
                ));
            };
            let k = s.inner_len();
            let pattern = match a.scope {
                Scope::Inner => PuncturePattern::none(k * code.n_out()),
                Scope::Punctured | Scope::System => puncture.clone(),
            };
            let (ws, set) = bounded_weight_tb_search_punctured(code, k, &pattern, w)?;
            if a.scope == Scope::System {
                let set = crc_consistent(s, &set);
                (set.spectrum(s.n(), s.message_len()), set)
            } else {
                (ws, set)
            }
        }
        SpectrumMode::Probe => {
            let Resolved::System(s) = &resolved else {
                return Err(CliError::Config(
                    "the list probe needs a polar system".into(),
                ));
            };
            let InnerCode::Polar { code } = s.inner() else {
                return Err(CliError::Config(
                    "the list probe needs a polar system".into(),
                ));
            };
            let set = polar_low_weight_probe(code, a.list)?;
            match a.scope {
                Scope::System => {
                    let set = crc_consistent(s, &set);
                    (set.spectrum(s.n(), s.message_len()), set)
                }
                _ => (set.spectrum(code.n(), code.k()), set),
            }
        }
    };
    if let Some(p) = &a.words {
        emit(Some(p), &words.to_text())?;
    }
    emit(a.out.as_deref(), &ws.to_csv())
}

/// Inner codewords whose data passes the system CRC.
fn crc_consistent(s: &CodeSystem, set: &CodewordSet) -> CodewordSet {
    let mut out = CodewordSet::new(set.weight_bound());
    out.extend(
        set.iter()
            .filter(|(_, d)| s.crc_table().is_none_or(|t| t.passes(d)))
            .map(|(c, d)| (c.clone(), d.clone())),
    );
    out
}

pub fn cmd_simulate(a: &SimulateArgs, workers: usize) -> Result<(), CliError> {
    let (cfg, system) = a.system.system()?;
    let mut sim = SimConfig::new(cfg.list_config()?, cfg.seed);
    sim.min_errors = a.min_errors;
    sim.max_trials = a.max_trials;
    sim.workers = workers;
    sim.noiseless = a.noiseless;
    let mut report = match a.precision {
        Precision::F32 => run_montecarlo::<f32>(&system, &sim, &a.ebno)?,
        Precision::F64 => run_montecarlo::<f64>(&system, &sim, &a.ebno)?,
    };
    if !a.timing {
        for p in &mut report.points {
            p.wall_time_s = 0.0;
            p.cw_per_sec = 0.0;
        }
    }
    let csv = sim_csv(&report, a.timing);
    match &a.out {
        Some(prefix) => {
            emit(Some(&with_suffix(prefix, "csv")), &csv)?;
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            emit(Some(&with_suffix(prefix, "json")), &(json + "\n"))
        }
        None => emit(None, &csv),
    }
}

fn sim_csv(r: &SimReport, timing: bool) -> String {
    if timing {
        r.to_csv()
    } else {
        r.to_csv_deterministic()
    }
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

pub fn cmd_crc_search(a: &CrcSearchArgs) -> Result<(), CliError> {
    let (_, system) = a.system.system()?;
    let candidates = a
        .candidates
        .as_ref()
        .map(|c| {
            c.iter()
                .map(|h| CrcPoly::parse_hex(h, a.width))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let report = match (system.inner(), candidates) {
        (InnerCode::Polar { code }, cands) => {
            if cands.is_none() && !a.no_confirm {
                polar_dso_crc_search(&system, a.width, a.probe_list, a.filter_weight)?
            } else {
                let template = system.with_crc(Some(CrcPoly::new((1 << a.width) | 1, a.width)?))?;
                let cands = cands.unwrap_or_else(|| CrcPoly::candidates(a.width).collect());
                let probe = polar_low_weight_probe(code, a.probe_list)?;
                let mut low = CodewordSet::new(a.filter_weight);
                low.extend(probe.iter().map(|(c, d)| (c.clone(), d.clone())));
                let survivors = crc_survivor_filter(&low, &cands, template.inner_len());
                filtered_report(&template, &cands, &survivors, !a.no_confirm)?
            }
        }
        (InnerCode::Tbcc { .. }, None) => {
            tbcc_dso_crc_search(&system, a.width, a.weight_cap, !a.no_confirm)?
        }
        (InnerCode::Tbcc { .. }, Some(cands)) => {
            let template = system.with_crc(Some(CrcPoly::new((1 << a.width) | 1, a.width)?))?;
            dso_crc_select(&template, &cands)?
        }
    };
    emit(a.out.as_deref(), &report.to_csv())
}

/// Report over explicit candidates: survivors are enumerated when `confirm`, and the
/// optimum is the best enumerated survivor (or the first survivor without enumeration).
fn filtered_report(
    template: &CodeSystem,
    cands: &[CrcPoly],
    survivors: &[CrcPoly],
    confirm: bool,
) -> Result<CrcSearchReport, CliError> {
    if confirm {
        let kept: Vec<CrcPoly> = cands
            .iter()
            .copied()
            .filter(|g| survivors.contains(g))
            .collect();
        if kept.is_empty() {
            return Err(CliError::Config(
                "no CRC candidate survived the low-weight filter".into(),
            ));
        }
        let full = dso_crc_select(template, &kept)?;
        let best_poly = full.best().poly;
        let mut reports = Vec::with_capacity(cands.len());
        for &g in cands {
            match full.reports.iter().find(|r| r.poly == g) {
                Some(r) => reports.push(r.clone()),
                None => reports.push(CrcCandidateReport::new(g, false, None)),
            }
        }
        let best = reports
            .iter()
            .position(|r| r.poly == best_poly)
            .expect("best is a candidate");
        Ok(CrcSearchReport { reports, best })
    } else {
        let reports: Vec<_> = cands
            .iter()
            .map(|&g| CrcCandidateReport::new(g, survivors.contains(&g), None))
            .collect();
        let best = reports
            .iter()
            .position(|r| r.survived_filter)
            .ok_or_else(|| {
                CliError::Config("no CRC candidate survived the low-weight filter".into())
            })?;
        Ok(CrcSearchReport { reports, best })
    }
}

pub fn cmd_puncture(a: &PunctureArgs) -> Result<(), CliError> {
    let (_, system) = a.system.system()?;
    let InnerCode::Tbcc { code, .. } = system.inner() else {
        return Err(CliError::Config(
            "puncture design needs a TBCC system".into(),
        ));
    };
    // Minimum-weight codewords of the unpunctured system: inner codewords found by the
    // bounded trellis search whose data passes the CRC. The cap grows until some appear.
    let k = system.inner_len();
    let none = PuncturePattern::none(k * code.n_out());
    let mut cap = tb_free_distance(code, k)?;
    let words = loop {
        let (_, set) = bounded_weight_tb_search_punctured(code, k, &none, cap)?;
        let set = crc_consistent(&system, &set);
        if !set.is_empty() {
            break set;
        }
        if cap >= none.pre_length() {
            return Err(CliError::Config(
                "the system has no nonzero codeword".into(),
            ));
        }
        cap = (cap + 8).min(none.pre_length());
    };
    let d = words
        .iter()
        .map(|(c, _)| c.weight())
        .min()
        .expect("nonempty");
    let p = optimize_puncture(&words.of_weight(d), a.count)?;
    let mut s = String::from("position\n");
    for pos in p.positions() {
        s.push_str(&format!("{pos}\n"));
    }
    emit(a.out.as_deref(), &s)
}

pub fn cmd_conv_search(a: &ConvSearchArgs) -> Result<(), CliError> {
    let records = random_conv_search(a.memory, a.outputs, a.k, a.trials, a.horizon, a.seed)?;
    let mut s = String::from("taps_octal,d_free,counts,selected\n");
    for (i, r) in records.iter().enumerate() {
        let counts: Vec<String> = r.counts.iter().map(u64::to_string).collect();
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.code.taps_octal().join(" "),
            r.d_free,
            counts.join(" "),
            u8::from(i == 0)
        ));
    }
    emit(a.out.as_deref(), &s)
}

pub fn cmd_bounds(a: &BoundsArgs) -> Result<(), CliError> {
    let (_, resolved) = a.system.resolve()?;
    let (n, k) = match &resolved {
        Resolved::System(s) => (s.n(), s.message_len()),
        Resolved::Block(g) => (g.n(), g.k()),
    };
    let ws = match &a.spectrum {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            WeightSpectrum::from_csv(&text, n, k, n)?
        }
        None => {
            let g = match &resolved {
                Resolved::Block(g) => g.clone(),
                Resolved::System(s) => s.generator()?,
            };
            full_spectrum_gray_with(&g, EnumOptions::default())?.0
        }
    };
    let d_maxes = a
        .d_max
        .iter()
        .map(|d| match d.trim() {
            "full" => Ok(None),
            t => t
                .parse()
                .map(Some)
                .map_err(|e| CliError::Config(format!("--d-max {t:?}: {e}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rate = k as f64 / n as f64;
    let pts = bound_sweep(&ws, rate, &a.ebno, &d_maxes)?;
    emit(a.out.as_deref(), &bounds_to_csv(&pts))
}

pub fn cmd_bench(a: &BenchArgs) -> Result<(), CliError> {
    let (cfg, system) = a.system.system()?;
    if !(a.duration > 0.0 && a.duration.is_finite()) {
        return Err(CliError::Config("--duration must be positive".into()));
    }
    let d = Duration::from_secs_f64(a.duration);
    let list = cfg.list_config()?;
    let report = match a.precision {
        Precision::F32 => benchmark_throughput::<f32>(&system, &list, a.ebno, d, cfg.seed)?,
        Precision::F64 => benchmark_throughput::<f64>(&system, &list, a.ebno, d, cfg.seed)?,
    };
    let json =
        serde_json::to_string_pretty(&report).map_err(|e| CliError::Internal(e.to_string()))?;
    emit(a.out.as_deref(), &(json + "\n"))
}

pub fn cmd_encode(a: &EncodeArgs) -> Result<(), CliError> {
    let (_, system) = a.system.system()?;
    let msg = BitBlock::parse_binary(a.message.trim())?;
    let cw = system.encode(&msg)?;
    emit(None, &format!("{cw}\n"))
}

pub fn cmd_decode(a: &DecodeArgs) -> Result<(), CliError> {
    let (cfg, system) = a.system.system()?;
    let text = match &a.llrs {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?,
        None => std::io::read_to_string(std::io::stdin())?,
    };
    let llrs = parse_llrs::<f64>(&text)?;
    if llrs.len() != system.n() {
        return Err(CliError::Config(format!(
            "expected {} LLRs, got {}",
            system.n(),
            llrs.len()
        )));
    }
    let d = SystemDecoder::<f64>::new().decode(&system, &llrs, &cfg.list_config()?);
    let out = serde_json::json!({
        "selected": d.selected.as_ref().map(ToString::to_string),
        "rank_selected": d.rank_selected,
        "final_l": d.final_l,
    });
    emit(None, &format!("{out}\n"))
}

fn parse_llrs<T: Scalar>(text: &str) -> Result<Vec<T>, CliError> {
    text.split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(T::of)
                .ok_or_else(|| CliError::Config(format!("invalid LLR {t:?}")))
        })
        .collect()
}

//! CRC-aided list decoding of short block codes.
//!
//! Tail-biting convolutional codes (decoded with the parallel list Viterbi algorithm)
//! and polar codes (decoded with successive-cancellation list decoding), each
//! concatenated with an outer CRC, together with tools for distance spectra, CRC and
//! puncture design, union bounds and Monte Carlo simulation.

pub mod analysis;
pub mod convolutional;
pub mod crc;
pub mod design;
pub mod error;
pub mod gf2;
pub mod listdec;
pub mod polar;
pub mod scalar;
pub mod simulation;
pub mod spectrum;
pub mod system;

pub use convolutional::{ConvCode, PuncturePattern, Trellis};
pub use crc::{CrcPoly, CrcTable};
pub use error::{Error, Result};
pub use gf2::{BitBlock, GeneratorMatrix};
pub use listdec::{
    adaptive_decode, crc_select, CandidatePath, Decision, DecodeOutcome, ListConfig, ListViterbi,
    OutcomeKind, RankedList, SclDecoder, SystemDecoder,
};
pub use polar::{PolarCode, ReliabilitySequence};
pub use scalar::Scalar;
pub use spectrum::{CodewordSet, WeightSpectrum};
pub use system::{CodeSystem, InnerCode};

/// Successive-cancellation list decoder working in single precision.
pub type SclDecoderF32 = SclDecoder<f32>;
/// Successive-cancellation list decoder working in double precision.
pub type SclDecoderF64 = SclDecoder<f64>;
/// List Viterbi decoder working in single precision.
pub type ListViterbiF32 = ListViterbi<f32>;
/// List Viterbi decoder working in double precision.
pub type ListViterbiF64 = ListViterbi<f64>;
/// Adaptive system decoder working in single precision.
pub type SystemDecoderF32 = SystemDecoder<f32>;
/// Adaptive system decoder working in double precision.
pub type SystemDecoderF64 = SystemDecoder<f64>;

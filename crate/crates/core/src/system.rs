//! A complete concatenated code: message, optional CRC, inner code and puncturing.

use crate::convolutional::{ConvCode, PuncturePattern, Trellis};
use crate::crc::{CrcPoly, CrcTable};
use crate::error::{Error, Result};
use crate::gf2::{BitBlock, GeneratorMatrix};
use crate::polar::{PolarCode, ReliabilitySequence};

/// The inner code of a [`CodeSystem`].
#[derive(Clone, Debug)]
pub enum InnerCode {
    Tbcc {
        code: ConvCode,
        trellis: Trellis,
        puncture: PuncturePattern,
    },
    Polar {
        code: PolarCode,
    },
}

/// Message -> CRC append -> inner encoder -> puncture.
#[derive(Clone, Debug)]
pub struct CodeSystem {
    message_len: usize,
    crc: Option<CrcPoly>,
    crc_table: Option<CrcTable>,
    inner: InnerCode,
}

impl CodeSystem {
    /// Tail-biting convolutional inner code over `message_len + crc width` stages.
    pub fn tbcc(
        message_len: usize,
        crc: Option<CrcPoly>,
        code: ConvCode,
        puncture_positions: Vec<usize>,
    ) -> Result<Self> {
        let k = message_len + crc.map_or(0, |g| g.width());
        if k < code.memory() || k == 0 {
            return Err(Error::TailBitingInfeasible {
                len: k,
                memory: code.memory(),
            });
        }
        let puncture = PuncturePattern::new(puncture_positions, k * code.n_out())?;
        let trellis = Trellis::new(&code, k);
        Ok(Self {
            message_len,
            crc,
            crc_table: crc.map(|g| CrcTable::new(g, k)),
            inner: InnerCode::Tbcc {
                code,
                trellis,
                puncture,
            },
        })
    }

    pub fn polar(message_len: usize, crc: Option<CrcPoly>, code: PolarCode) -> Result<Self> {
        let k = message_len + crc.map_or(0, |g| g.width());
        if code.k() != k {
            return Err(Error::Dimension {
                expected: k,
                actual: code.k(),
            });
        }
        Ok(Self {
            message_len,
            crc,
            crc_table: crc.map(|g| CrcTable::new(g, k)),
            inner: InnerCode::Polar { code },
        })
    }

    /// 5G-sequence polar code of length `n` carrying a 32-bit message and the given CRC.
    pub fn polar_5g(n: usize, crc: CrcPoly) -> Result<Self> {
        let code = PolarCode::construct(&ReliabilitySequence::nr5g(), n, 32 + crc.width())?;
        Self::polar(32, Some(crc), code)
    }

    /// The (512, 32) CRC-polar system with CRC `0xD41`.
    pub fn dso_polar_512() -> Self {
        Self::polar_5g(512, CrcPoly::parse_hex("0xD41", 11).expect("valid"))
            .expect("valid built-in system")
    }

    /// The (516, 32) CRC-TBCC with CRC `0xF69`; punctured to (512, 32) when `punctured`.
    pub fn tbcc_512(punctured: bool) -> Self {
        let puncture = if punctured {
            vec![47, 60, 129, 504]
        } else {
            Vec::new()
        };
        Self::tbcc(
            32,
            Some(CrcPoly::parse_hex("0xF69", 11).expect("valid")),
            ConvCode::rate_1_12_memory_8(),
            puncture,
        )
        .expect("valid built-in system")
    }

    /// Same inner code and puncturing, different CRC.
    pub fn with_crc(&self, crc: Option<CrcPoly>) -> Result<Self> {
        match &self.inner {
            InnerCode::Tbcc { code, puncture, .. } => Self::tbcc(
                self.message_len,
                crc,
                code.clone(),
                puncture.positions().to_vec(),
            ),
            InnerCode::Polar { code } => Self::polar(self.message_len, crc, code.clone()),
        }
    }

    /// Same system with a different puncture pattern (TBCC only).
    pub fn with_puncture(&self, positions: Vec<usize>) -> Result<Self> {
        match &self.inner {
            InnerCode::Tbcc { code, .. } => {
                Self::tbcc(self.message_len, self.crc, code.clone(), positions)
            }
            InnerCode::Polar { .. } => {
                Err(Error::Parameter("polar systems are not punctured".into()))
            }
        }
    }

    pub fn message_len(&self) -> usize {
        self.message_len
    }

    pub fn crc(&self) -> Option<&CrcPoly> {
        self.crc.as_ref()
    }

    /// Precomputed CRC check for the inner data length.
    pub fn crc_table(&self) -> Option<&CrcTable> {
        self.crc_table.as_ref()
    }

    pub fn inner(&self) -> &InnerCode {
        &self.inner
    }

    /// Length of the inner code's input (message plus CRC).
    pub fn inner_len(&self) -> usize {
        self.message_len + self.crc.map_or(0, |g| g.width())
    }

    /// Length before puncturing.
    pub fn mother_len(&self) -> usize {
        match &self.inner {
            InnerCode::Tbcc { puncture, .. } => puncture.pre_length(),
            InnerCode::Polar { code } => code.n(),
        }
    }

    /// Transmitted block length.
    pub fn n(&self) -> usize {
        match &self.inner {
            InnerCode::Tbcc { puncture, .. } => puncture.post_length(),
            InnerCode::Polar { code } => code.n(),
        }
    }

    /// Message bits per transmitted bit; CRC bits count as overhead.
    pub fn rate(&self) -> f64 {
        self.message_len as f64 / self.n() as f64
    }

    pub fn is_tail_biting(&self) -> bool {
        matches!(self.inner, InnerCode::Tbcc { .. })
    }

    /// Message followed by its CRC.
    pub fn crc_encode(&self, msg: &BitBlock) -> Result<BitBlock> {
        if msg.len() != self.message_len {
            return Err(Error::Dimension {
                expected: self.message_len,
                actual: msg.len(),
            });
        }
        Ok(match &self.crc {
            Some(g) => g.append(msg),
            None => msg.clone(),
        })
    }

    /// Inner encoding of a full inner data word, before puncturing.
    pub fn encode_inner(&self, data: &BitBlock) -> Result<BitBlock> {
        match &self.inner {
            InnerCode::Tbcc { code, .. } => code.tb_encode(data),
            InnerCode::Polar { code } => code.encode(data),
        }
    }

    /// Applies the puncture pattern (identity for polar).
    pub fn puncture(&self, mother: &BitBlock) -> Result<BitBlock> {
        match &self.inner {
            InnerCode::Tbcc { puncture, .. } => puncture.apply(mother),
            InnerCode::Polar { .. } => Ok(mother.clone()),
        }
    }

    /// Transmitted codeword for a message.
    pub fn encode(&self, msg: &BitBlock) -> Result<BitBlock> {
        let data = self.crc_encode(msg)?;
        self.puncture(&self.encode_inner(&data)?)
    }

    /// Generator of the full system over the message bits.
    pub fn generator(&self) -> Result<GeneratorMatrix> {
        GeneratorMatrix::from_encoder(self.message_len, self.n(), |m| self.encode(m))
    }

    /// Generator of the inner code alone over the inner data bits, optionally punctured.
    pub fn inner_generator(&self, punctured: bool) -> Result<GeneratorMatrix> {
        let n = if punctured {
            self.n()
        } else {
            self.mother_len()
        };
        GeneratorMatrix::from_encoder(self.inner_len(), n, |d| {
            let c = self.encode_inner(d)?;
            if punctured {
                self.puncture(&c)
            } else {
                Ok(c)
            }
        })
    }
}

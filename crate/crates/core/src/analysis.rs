//! Union bounds on the frame error rate of BPSK over AWGN from a weight spectrum.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::WeightSpectrum;

/// Gaussian tail `Q(x) = P(Z > x)`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// `10^(db/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Probability that ML decoding prefers a codeword at distance `d`: `Q(sqrt(2 d R Eb/N0))`.
/// `rate` counts message bits per channel bit.
pub fn pairwise_error_prob(d: usize, rate: f64, ebno_db: f64) -> f64 {
    q_function((2.0 * d as f64 * rate * db_to_linear(ebno_db)).sqrt())
}

/// `sum_{d >= 1} A(d) P2(d)`; may exceed one.
pub fn union_bound(ws: &WeightSpectrum, rate: f64, ebno_db: f64) -> f64 {
    truncated_union_bound(ws, rate, ebno_db, ws.n())
}

/// Union bound restricted to weights `1..=d_max`.
pub fn truncated_union_bound(ws: &WeightSpectrum, rate: f64, ebno_db: f64, d_max: usize) -> f64 {
    ws.nonzero()
        .filter(|&(d, _)| d >= 1 && d <= d_max)
        .map(|(d, a)| a as f64 * pairwise_error_prob(d, rate, ebno_db))
        .fold(0.0, |acc, t| acc + t)
}

/// One evaluation point of a bound sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundQuery {
    pub rate: f64,
    pub ebno_db: f64,
    /// Truncation weight; `None` for the full bound.
    pub d_max: Option<usize>,
}

impl BoundQuery {
    pub fn new(rate: f64, ebno_db: f64, d_max: Option<usize>) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::Parameter(format!("rate {rate} outside (0, 1]")));
        }
        if !ebno_db.is_finite() {
            return Err(Error::Parameter(format!(
                "Eb/N0 {ebno_db} dB is not finite"
            )));
        }
        Ok(Self {
            rate,
            ebno_db,
            d_max,
        })
    }

    pub fn evaluate(&self, ws: &WeightSpectrum) -> f64 {
        match self.d_max {
            Some(d) => truncated_union_bound(ws, self.rate, self.ebno_db, d),
            None => union_bound(ws, self.rate, self.ebno_db),
        }
    }
}

/// Evaluates every `(Eb/N0, d_max)` pair; `None` in `d_maxes` gives the full bound.
pub fn bound_sweep(
    ws: &WeightSpectrum,
    rate: f64,
    ebnos: &[f64],
    d_maxes: &[Option<usize>],
) -> Result<Vec<(BoundQuery, f64)>> {
    let mut out = Vec::with_capacity(ebnos.len() * d_maxes.len());
    for &e in ebnos {
        for &d in d_maxes {
            let q = BoundQuery::new(rate, e, d)?;
            out.push((q, q.evaluate(ws)));
        }
    }
    Ok(out)
}

/// `ebno_db,d_max,bound` with an empty `d_max` for full bounds.
pub fn bounds_to_csv(points: &[(BoundQuery, f64)]) -> String {
    let mut s = String::from("ebno_db,d_max,bound\n");
    for (q, b) in points {
        let d = q.d_max.map(|d| d.to_string()).unwrap_or_default();
        writeln!(s, "{},{d},{b:e}", q.ebno_db).expect("write to string");
    }
    s
}

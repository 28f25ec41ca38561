//! Polar transform, frozen-set construction from a reliability sequence, and encoding.
//!
//! The transform is `x = u F^{(x)s}` with kernel `F = [[1,0],[1,1]]` in natural index order
//! (no bit reversal). Data bit `j` is placed on the `j`-th smallest unfrozen index.

use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::BitBlock;

const NR5G_SEQUENCE: &str = include_str!("../data/nr5g_reliability.txt");

/// Synthetic-channel indices ordered from least to most reliable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReliabilitySequence {
    ordering: Vec<u16>,
}

impl ReliabilitySequence {
    /// The length-1024 sequence of 3GPP TS 38.212 (Table 5.3.1.2-1).
    pub fn nr5g() -> Self {
        Self::parse(NR5G_SEQUENCE).expect("bundled sequence is valid")
    }

    pub fn new(ordering: Vec<u16>) -> Result<Self> {
        let n = ordering.len();
        if !n.is_power_of_two() {
            return Err(Error::InvalidSequence(format!(
                "length {n} is not a power of two"
            )));
        }
        let mut seen = vec![false; n];
        for &i in &ordering {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidSequence(format!(
                    "not a permutation of 0..{n} (entry {i})"
                )));
            }
            seen[i] = true;
        }
        Ok(Self { ordering })
    }

    /// One integer per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ordering = Vec::with_capacity(1024);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v: u16 = line.parse().map_err(|e| {
                Error::InvalidSequence(format!("line {}: {line:?}: {e}", lineno + 1))
            })?;
            ordering.push(v);
        }
        Self::new(ordering)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidSequence(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    pub fn ordering(&self) -> &[u16] {
        &self.ordering
    }
}

/// In-place polar transform of a packed block of length `2^s`.
pub fn polar_transform_in_place(x: &mut BitBlock) -> Result<()> {
    let n = x.len();
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    const MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0F0F_0F0F_0F0F_0F0F,
        0x00FF_00FF_00FF_00FF,
        0x0000_FFFF_0000_FFFF,
        0x0000_0000_FFFF_FFFF,
    ];
    let mut words = x.words().to_vec();
    let mut h = 1;
    let mut level = 0;
    while h < n && h < 64 {
        for w in words.iter_mut() {
            *w ^= (*w >> h) & MASKS[level];
        }
        h <<= 1;
        level += 1;
    }
    while h < n {
        let hw = h / 64;
        for i in 0..words.len() {
            if i & hw == 0 {
                words[i] ^= words[i + hw];
            }
        }
        h <<= 1;
    }
    *x = BitBlock::from_words(words, n);
    Ok(())
}

/// `u F^{(x)s}` over GF(2).
pub fn polar_transform(u: &BitBlock) -> Result<BitBlock> {
    let mut x = u.clone();
    polar_transform_in_place(&mut x)?;
    Ok(x)
}

/// A polar code: block length, and the sorted set of unfrozen synthetic channels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarCode {
    n: usize,
    unfrozen: Vec<usize>,
    frozen_mask: Vec<bool>,
}

impl PolarCode {
    pub fn new(n: usize, mut unfrozen: Vec<usize>) -> Result<Self> {
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        unfrozen.sort_unstable();
        unfrozen.dedup();
        if unfrozen.last().is_some_and(|&i| i >= n) {
            return Err(Error::Parameter("unfrozen index outside block".into()));
        }
        let mut frozen_mask = vec![true; n];
        for &i in &unfrozen {
            frozen_mask[i] = false;
        }
        Ok(Self {
            n,
            unfrozen,
            frozen_mask,
        })
    }

    /// Unfreezes the `k` most reliable indices below `n`.
    pub fn construct(seq: &ReliabilitySequence, n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::Parameter(format!("K={k} exceeds N={n}")));
        }
        if n > seq.len() {
            return Err(Error::Parameter(format!(
                "N={n} exceeds the reliability sequence length {}",
                seq.len()
            )));
        }
        let restricted: Vec<usize> = seq
            .ordering()
            .iter()
            .map(|&i| i as usize)
            .filter(|&i| i < n)
            .collect();
        Self::new(n, restricted[n - k..].to_vec())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.unfrozen.len()
    }

    pub fn unfrozen(&self) -> &[usize] {
        &self.unfrozen
    }

    #[inline]
    pub fn is_frozen(&self, i: usize) -> bool {
        self.frozen_mask[i]
    }

    pub fn frozen_mask(&self) -> &[bool] {
        &self.frozen_mask
    }

    /// Places data on the unfrozen positions (zeros elsewhere) and transforms.
    pub fn encode(&self, data: &BitBlock) -> Result<BitBlock> {
        if data.len() != self.k() {
            return Err(Error::Dimension {
                expected: self.k(),
                actual: data.len(),
            });
        }
        let mut u = BitBlock::zeros(self.n);
        for (j, &i) in self.unfrozen.iter().enumerate() {
            if data.get(j) {
                u.set(i, true);
            }
        }
        polar_transform_in_place(&mut u)?;
        Ok(u)
    }

    /// Reads the data bits back out of a full `u` vector.
    pub fn extract_data(&self, u: &BitBlock) -> BitBlock {
        BitBlock::from_bools(self.unfrozen.iter().map(|&i| u.get(i)))
    }
}

/// See [`PolarCode::construct`].
pub fn construct_frozen_set(seq: &ReliabilitySequence, n: usize, k: usize) -> Result<PolarCode> {
    PolarCode::construct(seq, n, k)
}

/// See [`PolarCode::encode`].
pub fn polar_encode(data: &BitBlock, code: &PolarCode) -> Result<BitBlock> {
    code.encode(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bits(s: &str) -> BitBlock {
        BitBlock::parse_binary(s).unwrap()
    }

    /// Dense Kronecker-power oracle: G_N[i][j] = 1 iff (j & !i) == 0 for F = [[1,0],[1,1]].
    fn kron_oracle(u: &BitBlock) -> BitBlock {
        let n = u.len();
        BitBlock::from_bools(
            (0..n).map(|j| (0..n).filter(|&i| u.get(i) && (j & !i) == 0).count() % 2 == 1),
        )
    }

    #[test]
    fn transform_examples() {
        assert_eq!(polar_transform(&bits("1")).unwrap(), bits("1"));
        assert_eq!(polar_transform(&bits("01")).unwrap(), bits("11"));
        assert_eq!(polar_transform(&bits("10")).unwrap(), bits("10"));
        assert!(matches!(
            polar_transform(&bits("101")),
            Err(Error::NotPowerOfTwo(3))
        ));
    }

    #[test]
    fn transform_matches_kronecker_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for s in 0..=9 {
            for _ in 0..10 {
                let u = BitBlock::random(1 << s, &mut rng);
                assert_eq!(polar_transform(&u).unwrap(), kron_oracle(&u), "s={s}");
            }
        }
    }

    #[test]
    fn transform_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let u = BitBlock::random(512, &mut rng);
            assert_eq!(polar_transform(&polar_transform(&u).unwrap()).unwrap(), u);
        }
    }

    #[test]
    fn nr5g_sequence_is_a_permutation() {
        let seq = ReliabilitySequence::nr5g();
        assert_eq!(seq.len(), 1024);
        assert_eq!(&seq.ordering()[..10], &[0, 1, 2, 4, 8, 16, 32, 3, 5, 64]);
        assert_eq!(*seq.ordering().last().unwrap(), 1023);
    }

    #[test]
    fn sequence_validation() {
        assert!(ReliabilitySequence::parse("0\n1\n1\n3\n").is_err());
        assert!(ReliabilitySequence::parse("0\n1\n2\n").is_err());
        assert!(ReliabilitySequence::parse("0\nx\n").is_err());
        assert!(ReliabilitySequence::parse("# c\n1\n0\n\n").is_ok());
        assert!(ReliabilitySequence::load("/nonexistent/seq.txt").is_err());
    }

    #[test]
    fn construct_examples() {
        let seq = ReliabilitySequence::nr5g();
        let all = PolarCode::construct(&seq, 64, 64).unwrap();
        assert_eq!(all.unfrozen(), (0..64).collect::<Vec<_>>().as_slice());
        let none = PolarCode::construct(&seq, 64, 0).unwrap();
        assert!(none.unfrozen().is_empty());
        assert_eq!(
            none.encode(&BitBlock::zeros(0)).unwrap(),
            BitBlock::zeros(64)
        );
        assert!(matches!(
            PolarCode::construct(&seq, 8, 9),
            Err(Error::Parameter(_))
        ));

        let c = PolarCode::construct(&seq, 512, 43).unwrap();
        assert_eq!(c.k(), 43);
        assert!(c.unfrozen().contains(&511));
        assert!(!c.unfrozen().contains(&0));
    }

    #[test]
    fn encode_examples() {
        let c = PolarCode::new(2, vec![1]).unwrap();
        assert_eq!(c.encode(&bits("1")).unwrap(), bits("11"));
        // N=4, unfrozen {2,3}, data (1,0): u = 0010, row 2 of F^{(x)2} = 1010.
        let c = PolarCode::new(4, vec![2, 3]).unwrap();
        assert_eq!(c.encode(&bits("10")).unwrap(), kron_oracle(&bits("0010")));
        assert_eq!(c.encode(&bits("10")).unwrap(), bits("1010"));
        assert_eq!(c.encode(&bits("00")).unwrap(), bits("0000"));
        assert!(c.encode(&bits("1")).is_err());
    }

    #[test]
    fn encode_is_linear_and_invertible() {
        let c = PolarCode::construct(&ReliabilitySequence::nr5g(), 512, 43).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = BitBlock::random(43, &mut rng);
            let b = BitBlock::random(43, &mut rng);
            let ca = c.encode(&a).unwrap();
            assert_eq!(
                c.encode(&a.xor(&b)).unwrap(),
                ca.xor(&c.encode(&b).unwrap())
            );
            assert_eq!(c.extract_data(&polar_transform(&ca).unwrap()), a);
        }
    }
}

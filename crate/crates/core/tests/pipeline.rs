use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crclist::simulation::{run_montecarlo, SimConfig};
use crclist::spectrum::full_spectrum_gray;
use crclist::{
    BitBlock, CodeSystem, ConvCode, CrcPoly, InnerCode, ListConfig, PolarCode, ReliabilitySequence,
};

/// Polynomial of a bit block with bit 0 as the highest-degree coefficient.
fn poly_of(b: &BitBlock) -> u128 {
    b.iter().fold(0u128, |acc, x| (acc << 1) | u128::from(x))
}

fn poly_mod(mut a: u128, g: u128) -> u128 {
    let dg = 127 - g.leading_zeros();
    while a != 0 && 127 - a.leading_zeros() >= dg {
        a ^= g << (127 - a.leading_zeros() - dg);
    }
    a
}

#[test]
fn crc_matches_polynomial_long_division() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (hex, width) in [
        ("0xD41", 11),
        ("0xF69", 11),
        ("0x7", 2),
        ("0x1864CFB", 24),
        ("0x11021", 16),
    ] {
        let g = CrcPoly::parse_hex(hex, width).unwrap();
        for len in [1usize, 7, 32, 43, 90] {
            let msg = BitBlock::random(len, &mut rng);
            let expect = poly_mod(poly_of(&msg), u128::from(g.value()));
            assert_eq!(u128::from(g.remainder_of(&msg)), expect, "{hex} len {len}");
            let word = g.append(&msg);
            let parity = poly_mod(poly_of(&msg) << width, u128::from(g.value()));
            assert_eq!(poly_of(&word.slice(len, len + width)), parity);
            assert_eq!(word.slice(0, len), msg);
            assert_eq!(poly_mod(poly_of(&word), u128::from(g.value())), 0);
            assert!(g.check(&word).unwrap());
        }
    }
}

#[test]
fn tbcc_encoding_is_circular_convolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (memory, taps) in [
        (2, vec!["7", "5"]),
        (3, vec!["15", "17", "13"]),
        (8, vec!["533", "751"]),
    ] {
        let code = ConvCode::from_octal(memory, &taps).unwrap();
        // The most significant of the m+1 tap bits multiplies the current input.
        let g: Vec<u32> = taps
            .iter()
            .map(|t| u32::from_str_radix(t, 8).unwrap())
            .collect();
        for k in [memory, memory + 1, 20, 43] {
            let u = BitBlock::random(k, &mut rng);
            let c = code.tb_encode(&u).unwrap();
            assert_eq!(c.len(), k * g.len());
            for t in 0..k {
                for (j, &gj) in g.iter().enumerate() {
                    let bit = (0..=memory)
                        .filter(|&i| gj >> (memory - i) & 1 == 1)
                        .fold(false, |acc, i| acc ^ u.get((t + k - i % k) % k));
                    assert_eq!(c.get(t * g.len() + j), bit, "t={t} j={j}");
                }
            }
        }
    }
}

#[test]
fn polar_encoding_is_kernel_power_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, k) in [(8usize, 4usize), (64, 20), (512, 43)] {
        let code = PolarCode::construct(&ReliabilitySequence::nr5g(), n, k).unwrap();
        let data = BitBlock::random(k, &mut rng);
        let mut u = vec![false; n];
        for (b, &i) in data.iter().zip(code.unfrozen()) {
            u[i] = b;
        }
        // Entry (i, j) of the n-fold Kronecker power of [[1, 0], [1, 1]] is set iff j is a
        // bitwise subset of i.
        let x: Vec<bool> = (0..n)
            .map(|j| (0..n).filter(|&i| u[i] && i & j == j).count() % 2 == 1)
            .collect();
        assert_eq!(code.encode(&data).unwrap(), BitBlock::from_bools(x));
    }
}

#[test]
fn unfrozen_set_is_most_reliable_subset() {
    let seq = ReliabilitySequence::nr5g();
    let code = PolarCode::construct(&seq, 512, 43).unwrap();
    let mut expect: Vec<usize> = seq
        .ordering()
        .iter()
        .map(|&i| usize::from(i))
        .filter(|&i| i < 512)
        .collect::<Vec<_>>()
        .split_off(512 - 43);
    expect.sort_unstable();
    assert_eq!(code.unfrozen(), &expect[..]);
}

#[test]
fn gray_spectrum_matches_brute_force() {
    let crc = Some(CrcPoly::parse_hex("0xB", 3).unwrap());
    let tbcc = CodeSystem::tbcc(
        9,
        crc,
        ConvCode::from_octal(3, &["15", "17"]).unwrap(),
        vec![3, 10],
    )
    .unwrap();
    let polar = CodeSystem::polar(
        10,
        crc,
        PolarCode::construct(&ReliabilitySequence::nr5g(), 64, 13).unwrap(),
    )
    .unwrap();
    for sys in [tbcc, polar] {
        let k = sys.message_len();
        let mut counts = vec![0u64; sys.n() + 1];
        for m in 0..1u64 << k {
            counts[sys.encode(&BitBlock::from_u64(m, k)).unwrap().weight()] += 1;
        }
        let ws = full_spectrum_gray(&sys.generator().unwrap()).unwrap();
        assert_eq!(ws.counts(), &counts[..]);
    }
}

#[test]
fn punctured_codeword_drops_listed_positions() {
    let sys = CodeSystem::tbcc_512(true);
    let unp = CodeSystem::tbcc_512(false);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let msg = BitBlock::random(32, &mut rng);
        let full = unp.encode(&msg).unwrap();
        let kept: Vec<bool> = full
            .iter()
            .enumerate()
            .filter(|(i, _)| ![47, 60, 129, 504].contains(i))
            .map(|(_, b)| b)
            .collect();
        assert_eq!(sys.encode(&msg).unwrap(), BitBlock::from_bools(kept));
        assert_eq!(sys.n(), 512);
    }
    assert!(matches!(sys.inner(), InnerCode::Tbcc { .. }));
}

#[test]
fn simulation_counts_do_not_depend_on_workers() {
    let sys = CodeSystem::tbcc_512(true);
    let mut reports = Vec::new();
    for workers in [1, 2, 5] {
        let mut cfg = SimConfig::new(ListConfig::new(1, 8).unwrap(), 77);
        cfg.workers = workers;
        cfg.min_errors = 15;
        let mut r = run_montecarlo::<f32>(&sys, &cfg, &[1.0, 1.5]).unwrap();
        for p in &mut r.points {
            p.wall_time_s = 0.0;
            p.cw_per_sec = 0.0;
        }
        reports.push(r);
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0], reports[2]);
    for p in &reports[0].points {
        assert!(p.undetected + p.erasure >= 15);
        assert_eq!(p.trials, p.correct + p.undetected + p.erasure);
    }
}

#[test]
fn random_messages_round_trip_without_noise() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut dec = crclist::SystemDecoderF64::new();
    let cfg = ListConfig::new(1, 4).unwrap();
    for sys in [CodeSystem::tbcc_512(true), CodeSystem::dso_polar_512()] {
        for _ in 0..50 {
            let msg = BitBlock::random(32, &mut rng);
            let amp = rng.random_range(0.5..4.0);
            let llrs: Vec<f64> = sys
                .encode(&msg)
                .unwrap()
                .iter()
                .map(|b| if b { -amp } else { amp })
                .collect();
            let d = dec.decode(&sys, &llrs, &cfg);
            assert_eq!(d.selected, Some(msg));
            assert_eq!(d.rank_selected, Some(1));
        }
    }
}

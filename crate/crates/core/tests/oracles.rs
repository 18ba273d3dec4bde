//! Finder and search results against brute-force oracles.

use poset_ramsey::finder::{
    chain_or_cube, classify, enumerate_copies, find_colored_copy, find_mono_cube, recover_xgood,
    validate_embedding, ChainOrCube, Verdict,
};
use poset_ramsey::lattice::{is_subset, LatticeColoring, Sublattice};
use poset_ramsey::poset::{builtin_pattern, Color, ColoredPoset, Poset};
use poset_ramsey::search::{exhaustive_classify, CertificateKind, SearchOptions};
use proptest::prelude::*;

/// Every injective map of pattern vertices into host vertices, checked directly.
fn brute_copies(p: &ColoredPoset, host: &LatticeColoring, colored: bool) -> Vec<Vec<u32>> {
    fn go(p: &ColoredPoset, host: &LatticeColoring, colored: bool, img: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let v = img.len();
        if v == p.len() {
            out.push(img.clone());
            return;
        }
        for z in 0..host.num_vertices() as u32 {
            if img.contains(&z) || (colored && p.color(v).is_some_and(|c| host.color(z) != c)) {
                continue;
            }
            let consistent = (0..v).all(|u| {
                p.poset().leq(u, v) == is_subset(img[u], z) && p.poset().leq(v, u) == is_subset(z, img[u])
            });
            if consistent {
                img.push(z);
                go(p, host, colored, img, out);
                img.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(p, host, colored, &mut Vec::new(), &mut out);
    out
}

fn mono_cube_exists(host: &LatticeColoring, n: usize, color: Color) -> bool {
    let cube = ColoredPoset::monochromatic(Poset::boolean_lattice(n).unwrap(), color);
    !brute_copies(&cube, host, true).is_empty()
}

fn host_from(dim: usize, bits: u64) -> LatticeColoring {
    LatticeColoring::from_mask(dim, bits).unwrap()
}

const SMALL_PATTERNS: [&str; 10] = [
    "alt-chain-rbr:2",
    "alt-chain-rbr:3",
    "alt-chain-brb:3",
    "antichain:b1r1",
    "antichain:b2r1",
    "q2:brbb",
    "q2:rrbb",
    "lambda:rbb",
    "chains:b2r1",
    "colored-chain:rrb",
];

#[test]
fn mono_cube_matches_oracle_on_every_q4_coloring() {
    for bits in 0..1u64 << 16 {
        let host = host_from(4, bits);
        for color in [Color::Blue, Color::Red] {
            let found = find_mono_cube(&host, 2, color).unwrap();
            if let Some(e) = &found {
                let cube = ColoredPoset::monochromatic(Poset::boolean_lattice(2).unwrap(), color);
                assert!(validate_embedding(&cube, &host, e));
            }
            // Only sampled hosts pay for the slow oracle.
            if bits % 97 == 0 {
                assert_eq!(found.is_some(), mono_cube_exists(&host, 2, color), "{host:?}");
            }
        }
    }
}

#[test]
fn chain_or_cube_is_total_on_q3() {
    let red_q = |n| ColoredPoset::monochromatic(Poset::boolean_lattice(n).unwrap(), Color::Red);
    for bits in 0..256 {
        let host = host_from(3, bits);
        for (n, k) in [(1, 2), (2, 1)] {
            match chain_or_cube(&host, n, k).unwrap() {
                ChainOrCube::BlueChain(c) => {
                    assert_eq!(c.len(), k + 1);
                    assert!(c.iter().all(|&z| host.is_blue(z)));
                    assert!(c.windows(2).all(|w| is_subset(w[0], w[1]) && w[0] != w[1]));
                }
                ChainOrCube::RedCube(e) => assert!(validate_embedding(&red_q(n), &host, &e)),
            }
        }
    }
}

#[test]
fn enumeration_matches_oracle() {
    for spec in ["cube:1", "cube:2", "antichain:3", "lambda", "chain:3", "antichain:b1r1"] {
        let p = builtin_pattern(spec).unwrap();
        for dim in 1..=3 {
            let host = LatticeColoring::uniform(dim, Color::Blue).unwrap();
            let mut sets: Vec<Vec<u32>> = brute_copies(&p.recolored(None), &host, false)
                .into_iter()
                .map(|mut img| {
                    img.sort_unstable();
                    img
                })
                .collect();
            sets.sort();
            sets.dedup();
            let found: Vec<Vec<u32>> = enumerate_copies(&p, dim, true)
                .unwrap()
                .into_iter()
                .map(|c| c.into_iter().map(|(z, _)| z).collect())
                .collect();
            assert_eq!(found, sets, "{spec} in Q_{dim}");
        }
    }
}

#[test]
fn search_witnesses_classify_as_avoiding_and_decisions_are_monotone() {
    for spec in ["alt-chain-rbr:2", "antichain:b1r1", "q2:brrb", "lambda:rbb"] {
        let p = builtin_pattern(spec).unwrap();
        let mut forced = false;
        for dim in 0..=4 {
            let cert = exhaustive_classify(&p, 2, dim, SearchOptions::symmetric()).unwrap();
            match &cert.witness {
                Some(w) => {
                    assert!(!forced, "{spec}: witness at N={dim} after a forcing dimension");
                    assert_eq!(classify(w, &p, 2).unwrap(), Verdict::Avoids);
                }
                None => forced = true,
            }
            assert_eq!(cert.kind() == CertificateKind::AllContain, forced);
        }
    }
}

proptest! {
    #[test]
    fn colored_copy_matches_oracle(bits in any::<u64>(), dim in 1usize..=4, which in 0usize..SMALL_PATTERNS.len()) {
        let host = host_from(dim, bits);
        let p = builtin_pattern(SMALL_PATTERNS[which]).unwrap();
        let found = find_colored_copy(&p, &host).unwrap();
        let oracle = brute_copies(&p, &host, true);
        prop_assert_eq!(found.is_some(), !oracle.is_empty());
        if let Some(e) = found {
            prop_assert!(validate_embedding(&p, &host, &e));
        }
    }

    #[test]
    fn mono_cube_matches_oracle_on_q3(bits in any::<u64>(), n in 1usize..=2, blue in any::<bool>()) {
        let host = host_from(3, bits);
        let color = if blue { Color::Blue } else { Color::Red };
        prop_assert_eq!(find_mono_cube(&host, n, color).unwrap().is_some(), mono_cube_exists(&host, n, color));
    }

    #[test]
    fn xgood_recovers_sublattices(bottom in 0u32..64, top in 0u32..64) {
        let top = top | bottom;
        let s = Sublattice::new(6, bottom, top).unwrap();
        let xg = recover_xgood(&s.as_image(), 6).unwrap();
        prop_assert_eq!(xg.ground, top & !bottom);
        prop_assert_eq!(xg.map, s.as_image());
    }

    #[test]
    fn xgood_recovers_found_cubes(bits in any::<u64>(), n in 1usize..=2) {
        let host = host_from(4, bits);
        if let Some(e) = find_mono_cube(&host, n, Color::Red).unwrap() {
            let xg = recover_xgood(e.image(), 4).unwrap();
            let mut a = xg.map.clone();
            let mut b = e.image().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
            for (i, &z) in xg.map.iter().enumerate() {
                prop_assert_eq!(poset_ramsey::lattice::extract(z & xg.ground, xg.ground), i as u32);
            }
        }
    }
}

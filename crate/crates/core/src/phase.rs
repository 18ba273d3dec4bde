//! Phases of a colored lattice relative to a colored chain.
//!
//! For a chain `c_1..c_t`, the phase of `z` is one more than the longest
//! prefix of the chain that has a colored copy inside the down-set of `z`.
//! Phases are monotone along inclusion, and in a host avoiding the chain the
//! color of each vertex is forced by its phase (see [`check_phase_color`]).

use std::fmt::Write as _;

use rand::Rng;

use crate::error::{cap, invalid, Error, Result};
use crate::finder::{find_colored_copy, find_mono_cube, longest_chain, recover_xgood, Embedding};
use crate::lattice::{codes_by_rank, LatticeColoring};
use crate::poset::{ChainPattern, Color};

pub const MAX_PHASE_DIM: usize = 20;
pub const MAX_REDUCE_DIM: usize = 7;
pub const MAX_REDUCE_CHAIN: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseTable {
    chain: ChainPattern,
    dim: usize,
    phases: Vec<u8>,
    /// `minimal[i - 1]` holds `M_i`, ascending.
    minimal: Vec<Vec<u32>>,
}

impl PhaseTable {
    pub fn chain(&self) -> &ChainPattern {
        &self.chain
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Phase of `z`, in `1..=t+1`.
    pub fn phase(&self, z: u32) -> usize {
        usize::from(self.phases[z as usize])
    }

    pub fn phases(&self) -> &[u8] {
        &self.phases
    }

    /// `Φ_i`, ascending.
    pub fn class(&self, i: usize) -> Vec<u32> {
        (0..self.phases.len() as u32).filter(|&z| self.phase(z) == i).collect()
    }

    /// `M_i`: the minimal vertices of `Φ_i`.
    pub fn minimal(&self, i: usize) -> &[u32] {
        &self.minimal[i - 1]
    }

    pub fn is_minimal(&self, z: u32) -> bool {
        self.minimal[self.phase(z) - 1].binary_search(&z).is_ok()
    }

    /// One `code φ` line per vertex, ascending code order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (z, &p) in self.phases.iter().enumerate() {
            writeln!(out, "{z} {p}").expect("writing to a String");
        }
        out
    }
}

/// Computes all phases with one pass over the covers of each vertex.
///
/// With `m` the largest prefix length reached below `z`, the vertex `z`
/// itself can extend the copy to prefix `i` whenever `c_i` is its color and
/// `i - 1 <= m`.
pub fn compute_phases(host: &LatticeColoring, chain: &ChainPattern) -> Result<PhaseTable> {
    let dim = host.dim();
    cap("phase host dimension", dim, MAX_PHASE_DIM)?;
    let t = chain.len();
    let mut psi = vec![0u8; 1 << dim];
    let mut minimal = vec![Vec::new(); t + 1];
    for z in codes_by_rank(dim) {
        let mut below = 0u8;
        let mut bits = z;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            below = below.max(psi[(z ^ low) as usize]);
            bits ^= low;
        }
        let color = host.color(z);
        let reach = (usize::from(below) + 1).min(t);
        let top = (1..=reach).rev().find(|&i| chain.color(i) == color).unwrap_or(0) as u8;
        let here = below.max(top);
        psi[z as usize] = here;
        if here > below || z == 0 {
            minimal[usize::from(here)].push(z);
        }
    }
    for m in &mut minimal {
        m.sort_unstable();
    }
    let phases = psi.into_iter().map(|p| p + 1).collect();
    Ok(PhaseTable { chain: chain.clone(), dim, phases, minimal })
}

fn ensure_free(host: &LatticeColoring, chain: &ChainPattern) -> Result<()> {
    match find_colored_copy(&chain.to_colored_poset(), host)? {
        Some(e) => Err(Error::ContainsPattern(e)),
        None => Ok(()),
    }
}

/// The color a chain-free host must give a vertex of phase `i`.
pub fn forced_color(chain: &ChainPattern, i: usize, minimal: bool) -> Color {
    if i >= 2 && chain.color(i) == chain.color(i - 1) && minimal {
        chain.color(i)
    } else {
        chain.color(i).flip()
    }
}

/// Vertices whose color differs from the one forced by their phase.
///
/// Errors with the copy found when the host contains the chain.
pub fn check_phase_color(host: &LatticeColoring, chain: &ChainPattern) -> Result<Vec<u32>> {
    ensure_free(host, chain)?;
    let table = compute_phases(host, chain)?;
    Ok((0..host.num_vertices() as u32)
        .filter(|&z| host.color(z) != forced_color(chain, table.phase(z), table.is_minimal(z)))
        .collect())
}

/// Output of [`alternation_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Repeat indices `i` with `c_i = c_{i-1}`.
    pub repeat_indices: Vec<usize>,
    /// Union of the `M_i` over the repeat indices, ascending.
    pub removed: Vec<u32>,
    /// Copy of `Q_{N - t + α}` avoiding `removed`; vertex `i` is subset code `i`.
    pub cube: Embedding,
    /// The host colors pulled back to the cube.
    pub restricted: LatticeColoring,
    pub alternation: usize,
    /// Whether the restriction avoids the alternating `α`-chain starting
    /// with `c_1` at the bottom, which is what the reduction guarantees.
    pub leading_free: bool,
    pub rbr_free: bool,
    pub brb_free: bool,
}

impl Reduction {
    pub fn dim(&self) -> usize {
        self.restricted.dim()
    }
}

/// Passes to a subcube of dimension `N - t + α` in which the chain-free host
/// also avoids an alternating chain of length `α`.
///
/// The removed set `P` has no chain longer than the number of repeat
/// indices, so coloring `P` blue and everything else red leaves a red cube of
/// dimension `N` minus that number.
pub fn alternation_reduce(host: &LatticeColoring, chain: &ChainPattern) -> Result<Reduction> {
    let dim = host.dim();
    cap("reduction host dimension", dim, MAX_REDUCE_DIM)?;
    cap("reduction chain length", chain.len(), MAX_REDUCE_CHAIN)?;
    ensure_free(host, chain)?;
    let t = chain.len();
    let alpha = chain.alternation();
    let repeat_indices: Vec<usize> = (2..=t).filter(|&i| chain.color(i) == chain.color(i - 1)).collect();
    if repeat_indices.len() > dim {
        return Err(invalid(format!(
            "N - t + α = {dim} - {t} + {alpha} is negative; no cube remains"
        )));
    }
    let table = compute_phases(host, chain)?;
    let mut removed: Vec<u32> = repeat_indices.iter().flat_map(|&i| table.minimal(i).iter().copied()).collect();
    removed.sort_unstable();

    let mut aux = LatticeColoring::uniform(dim, Color::Red)?;
    for &z in &removed {
        aux.set(z, Color::Blue);
    }
    let longest = longest_chain(dim, |z| aux.is_blue(z)).len();
    if longest > repeat_indices.len() {
        return Err(Error::Inconsistency(format!(
            "removed set has a chain of {longest} vertices, more than {}",
            repeat_indices.len()
        )));
    }
    let n = dim - repeat_indices.len();
    let cube = find_mono_cube(&aux, n, Color::Red)?
        .ok_or_else(|| Error::Inconsistency(format!("no Q_{n} avoids the removed set in {host:?}")))?;
    recover_xgood(cube.image(), dim)?;

    let restricted = host.restrict(cube.image())?;
    let free = |bottom: Color| -> Result<bool> {
        let pattern = ChainPattern::alternating(alpha, bottom)?.to_colored_poset();
        Ok(find_colored_copy(&pattern, &restricted)?.is_none())
    };
    let rbr_free = free(Color::Red)?;
    let brb_free = free(Color::Blue)?;
    let leading_free = if chain.color(1) == Color::Red { rbr_free } else { brb_free };
    Ok(Reduction { repeat_indices, removed, cube, restricted, alternation: alpha, leading_free, rbr_free, brb_free })
}

/// Rejection-samples a host of dimension `dim` free of `chain`.
///
/// Each attempt draws a blue density uniformly from `[0, 1]` first, so both
/// sparse and dense hosts appear. Returns `None` after `attempts` failures.
pub fn sample_free_host(
    chain: &ChainPattern,
    dim: usize,
    rng: &mut impl Rng,
    attempts: usize,
) -> Result<Option<LatticeColoring>> {
    let pattern = chain.to_colored_poset();
    for _ in 0..attempts {
        let q: f64 = rng.gen();
        let host = LatticeColoring::from_fn(dim, |_| if rng.gen_bool(q) { Color::Blue } else { Color::Red })?;
        if find_colored_copy(&pattern, &host)?.is_none() {
            return Ok(Some(host));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::is_subset;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn chain(s: &str) -> ChainPattern {
        s.parse().unwrap()
    }

    /// Longest chain prefix with a colored copy among the subsets of `z`,
    /// by enumerating chains directly.
    fn oracle_psi(host: &LatticeColoring, chain: &ChainPattern, z: u32) -> usize {
        fn go(host: &LatticeColoring, chain: &ChainPattern, z: u32, last: Option<u32>, len: usize) -> usize {
            if len == chain.len() {
                return len;
            }
            let mut best = len;
            for w in 0..=z {
                if !is_subset(w, z) || last.is_some_and(|l| !(is_subset(l, w) && l != w)) {
                    continue;
                }
                if host.color(w) == chain.color(len + 1) {
                    best = best.max(go(host, chain, z, Some(w), len + 1));
                }
            }
            best
        }
        go(host, chain, z, None, 0)
    }

    #[test]
    fn phase_examples() {
        let blue = LatticeColoring::uniform(2, Color::Blue).unwrap();
        assert_eq!(compute_phases(&blue, &chain("rb")).unwrap().phases(), &[1, 1, 1, 1]);

        let host: LatticeColoring = "N=2\nrbbb".parse().unwrap();
        let table = compute_phases(&host, &chain("rb")).unwrap();
        assert_eq!(table.phases(), &[2, 3, 3, 3]);
        assert_eq!(table.minimal(2), &[0]);
        assert_eq!(table.minimal(3), &[1, 2]);
        assert_eq!(table.serialize(), "0 2\n1 3\n2 3\n3 3\n");

        let red = LatticeColoring::uniform(1, Color::Red).unwrap();
        let table = compute_phases(&red, &chain("rb")).unwrap();
        assert_eq!(table.phases(), &[2, 2]);
        assert_eq!(table.class(2), vec![0, 1]);
        assert_eq!(check_phase_color(&red, &chain("rb")).unwrap(), Vec::<u32>::new());
    }

    #[test]
    fn phases_match_oracle_on_all_q3_hosts() {
        for c in ["r", "b", "rb", "br", "rr", "rbr", "rrb", "bbr", "rbrb", "rrbb", "brrb"] {
            let c = chain(c);
            for mask in 0..256u64 {
                let host = LatticeColoring::from_mask(3, mask).unwrap();
                let table = compute_phases(&host, &c).unwrap();
                for z in 0..8 {
                    assert_eq!(table.phase(z), oracle_psi(&host, &c, z) + 1, "{host:?} {c} z={z}");
                }
            }
        }
    }

    #[test]
    fn phases_match_oracle_on_random_q4_hosts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for c in ["rbrb", "rrbr", "bbbb", "brr"] {
            let c = chain(c);
            for _ in 0..100 {
                let host = LatticeColoring::from_mask(4, rand::RngCore::next_u64(&mut rng)).unwrap();
                let table = compute_phases(&host, &c).unwrap();
                for z in 0..16 {
                    assert_eq!(table.phase(z), oracle_psi(&host, &c, z) + 1);
                }
            }
        }
    }

    #[test]
    fn check_requires_free_host() {
        let host: LatticeColoring = "N=2\nrbbb".parse().unwrap();
        assert!(matches!(check_phase_color(&host, &chain("rb")), Err(Error::ContainsPattern(_))));
        assert!(matches!(alternation_reduce(&host, &chain("rb")), Err(Error::ContainsPattern(_))));
    }

    #[test]
    fn reduce_example_repeat_chain() {
        // Only {1} red; chain r,r.
        let host: LatticeColoring = "N=2\nbrbb".parse().unwrap();
        let r = alternation_reduce(&host, &chain("rr")).unwrap();
        assert_eq!(r.repeat_indices, vec![2]);
        assert_eq!(r.removed, vec![1]);
        assert_eq!(r.dim(), 1);
        assert!(r.cube.image().iter().all(|z| [0, 2, 3].contains(z)));
        assert_eq!(r.restricted.count(Color::Red), 0);
        assert!(r.leading_free && r.rbr_free && !r.brb_free);
    }

    #[test]
    fn reduce_fully_alternating_keeps_host() {
        let host: LatticeColoring = "N=2\nbbbr".parse().unwrap();
        let r = alternation_reduce(&host, &chain("rbr")).unwrap();
        assert!(r.repeat_indices.is_empty());
        assert_eq!(r.cube.image(), &[0, 1, 2, 3]);
        assert_eq!(r.restricted, host);
    }

    #[test]
    fn reduce_rbb_on_sampled_q3_hosts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = chain("rbb");
        for _ in 0..50 {
            let host = sample_free_host(&c, 3, &mut rng, 10_000).unwrap().unwrap();
            let r = alternation_reduce(&host, &c).unwrap();
            assert_eq!(r.dim(), 2);
            assert!(r.leading_free, "{host:?}");
            assert!(r.cube.image().iter().all(|z| r.removed.binary_search(z).is_err()));
        }
    }

    proptest! {
        #[test]
        fn phases_are_monotone(mask in any::<u32>(), colors in "[rb]{1,4}") {
            let host = LatticeColoring::from_fn(5, |z| if mask >> z & 1 == 1 { Color::Blue } else { Color::Red }).unwrap();
            let c = chain(&colors);
            let table = compute_phases(&host, &c).unwrap();
            for z in 0..32u32 {
                for b in 0..5 {
                    if z & (1 << b) == 0 {
                        prop_assert!(table.phase(z) <= table.phase(z | 1 << b));
                    }
                }
            }
            for i in 1..=c.len() + 1 {
                let m = table.minimal(i);
                for &x in m {
                    for &y in m {
                        prop_assert!(x == y || !is_subset(x, y));
                    }
                }
            }
        }

        #[test]
        fn free_hosts_have_forced_colors(seed in any::<u64>(), colors in "[rb]{1,4}", dim in 1usize..=4) {
            let c = chain(&colors);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if let Some(host) = sample_free_host(&c, dim, &mut rng, 200).unwrap() {
                prop_assert!(check_phase_color(&host, &c).unwrap().is_empty());
                let table = compute_phases(&host, &c).unwrap();
                prop_assert!(table.phases().iter().all(|&p| usize::from(p) <= c.len()));
            }
        }
    }
}

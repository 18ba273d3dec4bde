//! Lower-bound colorings.
//!
//! Layered colorings, the antichain construction, and the four-band
//! construction driven by a random pair of layer families `(S, T)`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{cap, invalid, Error, Result};
use crate::finder::find_colored_copy;
use crate::lattice::{full_set, is_subset, layer, LatticeColoring, MAX_DIM};
use crate::poset::{Color, ColoredPoset, Poset};

/// Colors every vertex by its layer: `layer_colors[i]` for `|z| = i`.
pub fn layered_coloring(dim: usize, layer_colors: &[Color]) -> Result<LatticeColoring> {
    if layer_colors.len() != dim + 1 {
        return Err(invalid(format!("Q_{dim} has {} layers, got {} colors", dim + 1, layer_colors.len())));
    }
    LatticeColoring::from_fn(dim, |z| layer_colors[z.count_ones() as usize])
}

/// `Q_{n+t}` with `∅`, `[n+t]` and layers `1..t-1` blue, everything else
/// red: `t + 1` blue layers and `n` red ones. Needs `1 <= t < n`.
pub fn antichain_lb(n: usize, t: usize) -> Result<LatticeColoring> {
    if t < 1 || t >= n {
        return Err(invalid(format!("antichain construction needs 1 <= t < n, got n={n}, t={t}")));
    }
    let dim = n + t;
    let colors: Vec<Color> = (0..=dim)
        .map(|i| if i == 0 || i == dim || i < t { Color::Blue } else { Color::Red })
        .collect();
    layered_coloring(dim, &colors)
}

/// Two families of vertices on fixed layers of `Q_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyPair {
    pub dim: usize,
    pub s_level: usize,
    pub t_level: usize,
    pub seed: u64,
    /// Members of `S`, ascending.
    pub s: Vec<u32>,
    /// Members of `T`, ascending.
    pub t: Vec<u32>,
}

impl FamilyPair {
    /// No `S`-member lies below a `T`-member and every `S`-member is in a
    /// lower layer.
    pub fn is_parallel(&self) -> bool {
        self.s.iter().all(|&s| self.t.iter().all(|&t| s.count_ones() < t.count_ones() && !is_subset(s, t)))
    }
}

fn round_half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

/// Levels `(N, s, t)` used by [`sample_st`] for given `n` and `c`.
pub fn st_levels(n: usize, c: f64) -> (usize, usize, usize) {
    let n_f = n as f64;
    (round_half_up((2.0 + c) * n_f), round_half_up((1.0 - c) * n_f), round_half_up((1.0 + 2.0 * c) * n_f))
}

/// A `c` in `(0, 1/2)` for which [`sample_st`] lands in dimension `dim`.
///
/// Prefers `0.24`; otherwise takes the midpoint of the admissible interval.
pub fn c_for_dimension(n: usize, dim: usize) -> Result<f64> {
    const PREFERRED: f64 = 0.24;
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    if st_levels(n, PREFERRED).0 == dim {
        return Ok(PREFERRED);
    }
    let n_f = n as f64;
    let lo = ((dim as f64 - 0.5) / n_f - 2.0).max(0.0);
    let hi = ((dim as f64 + 0.5) / n_f - 2.0).min(0.5);
    let mid = (lo + hi) / 2.0;
    if lo < hi && mid > 0.0 && st_levels(n, mid).0 == dim {
        Ok(mid)
    } else {
        Err(invalid(format!("no c in (0, 1/2) gives N = {dim} for n = {n}")))
    }
}

/// Random families on layers `s = round((1-c)n)` and `t = round((1+2c)n)` of
/// `Q_N`, `N = round((2+c)n)` (halves round up). Each vertex is kept with
/// probability `p_base^n` (clamped to `[0, 1]`), then every pair `S ⊆ T`
/// loses both members.
pub fn sample_st(n: usize, c: f64, p_base: f64, seed: u64) -> Result<FamilyPair> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(invalid(format!("n must be even and at least 2, got {n}")));
    }
    if !(c > 0.0 && c < 0.5) {
        return Err(invalid(format!("c must lie in (0, 1/2), got {c}")));
    }
    if p_base.is_nan() {
        return Err(invalid("p_base is NaN"));
    }
    let (dim, s_level, t_level) = st_levels(n, c);
    cap("lattice dimension", dim, MAX_DIM)?;
    let p = p_base.powi(n as i32).clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s0: Vec<u32> = layer(dim, s_level)?.into_iter().filter(|_| rng.gen_bool(p)).collect();
    let t0: Vec<u32> = layer(dim, t_level)?.into_iter().filter(|_| rng.gen_bool(p)).collect();
    let s = s0.iter().copied().filter(|&a| !t0.iter().any(|&b| is_subset(a, b))).collect();
    let t = t0.iter().copied().filter(|&b| !s0.iter().any(|&a| is_subset(a, b))).collect();
    Ok(FamilyPair { dim, s_level, t_level, seed, s, t })
}

impl fmt::Display for FamilyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N={} s={} t={} seed={}", self.dim, self.s_level, self.t_level, self.seed)?;
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        writeln!(f, "S: {}", join(&self.s))?;
        writeln!(f, "T: {}", join(&self.t))
    }
}

impl FromStr for FamilyPair {
    type Err = Error;

    fn from_str(text: &str) -> Result<FamilyPair> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let err = |line: usize, msg: &str| Error::Parse { line, msg: msg.to_string() };
        let (ln, header) = lines.next().ok_or_else(|| err(1, "missing header"))?;
        let mut fields = [None; 4];
        for part in header.split_whitespace() {
            let (key, value) = part.split_once('=').ok_or_else(|| err(ln, "expected key=value"))?;
            let slot = match key {
                "N" => 0,
                "s" => 1,
                "t" => 2,
                "seed" => 3,
                _ => return Err(err(ln, &format!("unknown header key `{key}`"))),
            };
            let v: u64 = value.parse().map_err(|_| err(ln, &format!("bad value for `{key}`")))?;
            if fields[slot].replace(v).is_some() {
                return Err(err(ln, &format!("duplicate header key `{key}`")));
            }
        }
        let [Some(dim), Some(s_level), Some(t_level), Some(seed)] = fields else {
            return Err(err(ln, "header needs N, s, t and seed"));
        };
        let dim = dim as usize;
        cap("lattice dimension", dim, MAX_DIM)?;
        let mut family = |tag: &str, level: u64| -> Result<Vec<u32>> {
            let (ln, line) = lines.next().ok_or_else(|| err(ln, &format!("missing `{tag}` line")))?;
            let rest = line
                .strip_prefix(tag)
                .ok_or_else(|| err(ln, &format!("expected a line starting with `{tag}`")))?;
            let mut codes = rest
                .split_whitespace()
                .map(|w| {
                    let z: u32 = w.parse().map_err(|_| err(ln, &format!("bad code `{w}`")))?;
                    if z > full_set(dim) || u64::from(z.count_ones()) != level {
                        return Err(err(ln, &format!("code {z} is not on layer {level} of Q_{dim}")));
                    }
                    Ok(z)
                })
                .collect::<Result<Vec<_>>>()?;
            codes.sort_unstable();
            codes.dedup();
            Ok(codes)
        };
        let s = family("S:", s_level)?;
        let t = family("T:", t_level)?;
        if let Some((ln, _)) = lines.next() {
            return Err(err(ln, "trailing content"));
        }
        Ok(FamilyPair { dim, s_level: s_level as usize, t_level: t_level as usize, seed, s, t })
    }
}

/// Exact truth of the four family properties, with the first failing
/// `(A, B)` for the covering properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StReport {
    /// Layer sizes match `round((1-c)n)` and `round((1+2c)n)`.
    pub levels: bool,
    /// No member of `S` is comparable to a member of `T`.
    pub parallel: bool,
    /// Every `(A, B)` has a close `S`.
    pub s_dense: bool,
    /// Every `(A, B)` has a close `T`.
    pub t_dense: bool,
    pub s_witness: Option<(u32, u32)>,
    pub t_witness: Option<(u32, u32)>,
    /// Number of `(A, B)` pairs checked.
    pub pairs: usize,
}

/// All disjoint `(A, B)` with `|A| = n/2` and `|B| = n`, `A` then `B` in
/// ascending code order.
pub fn split_pairs(dim: usize, n: usize) -> Result<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for a in layer(dim, n / 2)? {
        for b in layer(dim, n)? {
            if a & b == 0 {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// `S ⊆ A ∪ B` and `|B ∩ S| <= n/2`.
pub fn s_close(s: u32, a: u32, b: u32, n: usize) -> bool {
    is_subset(s, a | b) && 2 * (b & s).count_ones() as usize <= n
}

/// `T ⊇ [N] \ (A ∪ B)` and `|B \ T| <= n/2`.
pub fn t_close(t: u32, a: u32, b: u32, n: usize, dim: usize) -> bool {
    is_subset(full_set(dim) & !(a | b), t) && 2 * (b & !t).count_ones() as usize <= n
}

/// Counts of close vertices over the full layers `s` and `t`.
pub fn close_counts(fp: &FamilyPair, n: usize, a: u32, b: u32) -> Result<(usize, usize)> {
    let gs = layer(fp.dim, fp.s_level)?.into_iter().filter(|&s| s_close(s, a, b, n)).count();
    let gt = layer(fp.dim, fp.t_level)?.into_iter().filter(|&t| t_close(t, a, b, n, fp.dim)).count();
    Ok((gs, gt))
}

pub const MAX_ST_N: usize = 6;

/// Checks the four family properties by brute force over all `(A, B)`.
pub fn verify_st(fp: &FamilyPair, n: usize, c: f64) -> Result<StReport> {
    if !n.is_multiple_of(2) || n == 0 {
        return Err(invalid(format!("n must be even and positive, got {n}")));
    }
    cap("family verifier n", n, MAX_ST_N)?;
    cap("family verifier dimension", fp.dim, 16)?;
    if fp.dim < n + n / 2 {
        return Err(invalid(format!("Q_{} is too small for pairs with |A| = {} and |B| = {n}", fp.dim, n / 2)));
    }
    let (_, s_want, t_want) = st_levels(n, c);
    let levels = fp.s.iter().all(|z| z.count_ones() as usize == s_want)
        && fp.t.iter().all(|z| z.count_ones() as usize == t_want);
    let parallel = fp.s.iter().all(|&s| fp.t.iter().all(|&t| !is_subset(s, t) && !is_subset(t, s)));
    let pairs = split_pairs(fp.dim, n)?;
    let s_witness = pairs.iter().copied().find(|&(a, b)| !fp.s.iter().any(|&s| s_close(s, a, b, n)));
    let t_witness = pairs.iter().copied().find(|&(a, b)| !fp.t.iter().any(|&t| t_close(t, a, b, n, fp.dim)));
    Ok(StReport {
        levels,
        parallel,
        s_dense: s_witness.is_none(),
        t_dense: t_witness.is_none(),
        s_witness,
        t_witness,
        pairs: pairs.len(),
    })
}

/// The four-band coloring built from a parallel family pair.
///
/// Bottom to top: blue below `n/2`; then `V_T` and `W_S` red, `V_S` and
/// `W_T` blue in the middle; red above `N - n/2`. Half thresholds compare
/// `2|z|` against `n` and `N` exactly.
pub fn band_coloring(fp: &FamilyPair, n: usize) -> Result<LatticeColoring> {
    let dim = fp.dim;
    if n == 0 || dim < 2 * n {
        return Err(invalid(format!("band coloring needs 1 <= n and N >= 2n, got n={n}, N={dim}")));
    }
    if !fp.is_parallel() {
        return Err(invalid("families are not parallel: some S lies below some T or not in a lower layer"));
    }
    cap("lattice dimension", dim, MAX_DIM)?;
    let size = 1usize << dim;
    // below_t[z]: z ⊆ some T.  above_s[z]: z ⊇ some S.
    let mut below_t = vec![false; size];
    let mut above_s = vec![false; size];
    fp.t.iter().for_each(|&z| below_t[z as usize] = true);
    fp.s.iter().for_each(|&z| above_s[z as usize] = true);
    for b in 0..dim {
        let bit = 1usize << b;
        for z in 0..size {
            if z & bit == 0 {
                below_t[z] |= below_t[z | bit];
            } else {
                above_s[z] |= above_s[z ^ bit];
            }
        }
    }
    let (n2, dim2) = (n, dim);
    let mut out = LatticeColoring::uniform(dim, Color::Red)?;
    for z in 0..size as u32 {
        let w = 2 * z.count_ones() as usize;
        let v_t = w >= n2 && below_t[z as usize];
        let v_s = w <= 2 * dim2 - n2 && above_s[z as usize];
        if v_t && v_s {
            return Err(Error::Inconsistency(format!("vertex {z} lies in both V_T and V_S")));
        }
        let w_s = n2 <= w && w <= dim2 && !v_s;
        let w_t = dim2 < w && w <= 2 * dim2 - n2 && !v_t;
        let color = if w < n2 {
            Color::Blue
        } else if v_t || w_s {
            Color::Red
        } else if v_s || w_t {
            Color::Blue
        } else {
            Color::Red
        };
        out.set(z, color);
    }
    Ok(out)
}

/// Whether each witness avoids its monochromatic pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParallelCheck {
    pub blue_free: bool,
    pub red_free: bool,
}

/// Checks a pair of lower-bound witnesses for the parallel composition
/// bound: `witness_b` must have no blue `p_b` and `witness_r` no red `p_r`.
pub fn parallel_lb(
    witness_b: &LatticeColoring,
    witness_r: &LatticeColoring,
    p_b: &Poset,
    p_r: &Poset,
) -> Result<ParallelCheck> {
    if witness_b.dim() != witness_r.dim() {
        return Err(invalid(format!("witness dimensions differ: {} and {}", witness_b.dim(), witness_r.dim())));
    }
    let blue = ColoredPoset::monochromatic(p_b.clone(), Color::Blue);
    let red = ColoredPoset::monochromatic(p_r.clone(), Color::Red);
    Ok(ParallelCheck {
        blue_free: find_colored_copy(&blue, witness_b)?.is_none(),
        red_free: find_colored_copy(&red, witness_r)?.is_none(),
    })
}

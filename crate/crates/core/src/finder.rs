//! Copy detection in colored Boolean lattices.
//!
//! [`find_colored_copy`] is a backtracking search over pattern vertices. Once
//! some vertices are placed, every candidate image for the next one lies in an
//! interval `lo ⊆ z ⊆ hi` (union of images below, intersection of images
//! above), so candidates are enumerated as submasks rather than scanned.
//!
//! Monochromatic cubes are found through X-good embeddings: a copy of `Q_n`
//! is the image of `S ↦ S ∪ g(S)` for some `n`-set `X` and a monotone
//! `g: Q(X) → Q([N] \ X)`. Every copy of `Q_n` has this form, so searching
//! only such maps is complete.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::ControlFlow;

use crate::error::{cap, invalid, Error, Result};
use crate::lattice::{codes_by_rank, deposit, full_set, is_subset, submasks, LatticeColoring};
use crate::poset::{Color, ColoredPoset, Poset, MAX_PATTERN};

/// Host dimension cap for the cube finder.
pub const MAX_CUBE_HOST_DIM: usize = 12;
/// Host dimension cap for copy enumeration.
pub const MAX_ENUM_DIM: usize = 8;

/// Images of the pattern vertices, indexed by pattern vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    image: Vec<u32>,
}

impl Embedding {
    pub fn new(image: Vec<u32>) -> Embedding {
        Embedding { image }
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn get(&self, v: usize) -> u32 {
        self.image[v]
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }
}

/// Writes a code as the set it encodes, e.g. `{1,3}`.
pub fn fmt_set(z: u32) -> String {
    let elems: Vec<String> = (0..32).filter(|i| z >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, &z) in self.image.iter().enumerate() {
            if v > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}->{}", fmt_set(z))?;
        }
        Ok(())
    }
}

/// Outcome of [`classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    PatternCopy(Embedding),
    MonoBlueCube(Embedding),
    MonoRedCube(Embedding),
    Avoids,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::PatternCopy(_) => "PatternCopy",
            Verdict::MonoBlueCube(_) => "MonoBlueCube",
            Verdict::MonoRedCube(_) => "MonoRedCube",
            Verdict::Avoids => "Avoids",
        }
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        match self {
            Verdict::PatternCopy(e) | Verdict::MonoBlueCube(e) | Verdict::MonoRedCube(e) => Some(e),
            Verdict::Avoids => None,
        }
    }
}

/// Checks injectivity and `u <= v ⟺ image(u) ⊆ image(v)`.
pub fn is_induced_copy(p: &Poset, image: &[u32]) -> bool {
    image.len() == p.len()
        && (0..p.len()).all(|u| {
            (0..p.len()).all(|v| {
                (u == v || image[u] != image[v]) && p.leq(u, v) == is_subset(image[u], image[v])
            })
        })
}

/// Structure check plus host colors matching every colored pattern vertex.
pub fn validate_embedding(p: &ColoredPoset, host: &LatticeColoring, e: &Embedding) -> bool {
    let limit = host.num_vertices() as u64;
    e.image.iter().all(|&z| u64::from(z) < limit)
        && is_induced_copy(p.poset(), &e.image)
        && (0..p.len()).all(|v| p.color(v).is_none_or(|c| host.color(e.image[v]) == c))
}

/// Placement order for backtracking plus per-vertex feasibility data.
struct SearchPlan {
    order: Vec<usize>,
    /// Longest chain strictly below / above each vertex.
    depth_below: Vec<u32>,
    depth_above: Vec<u32>,
    below_count: Vec<u32>,
    above_count: Vec<u32>,
}

impl SearchPlan {
    fn new(p: &Poset) -> SearchPlan {
        let k = p.len();
        let mut order = Vec::with_capacity(k);
        let mut placed = 0u32;
        while order.len() < k {
            // Available: unplaced vertices whose strict predecessors are all placed.
            let pick = (0..k)
                .filter(|&v| placed & (1 << v) == 0)
                .filter(|&v| (0..k).all(|u| !p.lt(u, v) || placed & (1 << u) != 0))
                .max_by_key(|&v| {
                    let tied = (0..k).filter(|&u| placed & (1 << u) != 0 && p.comparable(u, v)).count();
                    let degree = (0..k).filter(|&u| u != v && p.comparable(u, v)).count();
                    (tied, degree, std::cmp::Reverse(v))
                })
                .expect("a finite poset always has an available vertex");
            placed |= 1 << pick;
            order.push(pick);
        }
        let ext = p.linear_extension();
        let mut depth_below = vec![0u32; k];
        for &v in &ext {
            depth_below[v] = (0..k).filter(|&u| p.lt(u, v)).map(|u| depth_below[u] + 1).max().unwrap_or(0);
        }
        let mut depth_above = vec![0u32; k];
        for &v in ext.iter().rev() {
            depth_above[v] = (0..k).filter(|&w| p.lt(v, w)).map(|w| depth_above[w] + 1).max().unwrap_or(0);
        }
        let below_count = (0..k).map(|v| (0..k).filter(|&u| p.lt(u, v)).count() as u32).collect();
        let above_count = (0..k).map(|v| (0..k).filter(|&w| p.lt(v, w)).count() as u32).collect();
        SearchPlan { order, depth_below, depth_above, below_count, above_count }
    }
}

/// Walks every induced copy of `p` in `Q_dim` (colors checked against `host`
/// when given), in lexicographic order of the images along the placement
/// order. `visit` receives images indexed by pattern vertex.
fn for_each_copy<B>(
    p: &ColoredPoset,
    dim: usize,
    host: Option<&LatticeColoring>,
    mut visit: impl FnMut(&[u32]) -> ControlFlow<B>,
) -> Option<B> {
    let plan = SearchPlan::new(p.poset());
    let mut image = vec![0u32; p.len()];
    match extend(p, dim, host, &plan, 0, &mut image, &mut visit) {
        ControlFlow::Break(b) => Some(b),
        ControlFlow::Continue(()) => None,
    }
}

fn extend<B>(
    p: &ColoredPoset,
    dim: usize,
    host: Option<&LatticeColoring>,
    plan: &SearchPlan,
    pos: usize,
    image: &mut [u32],
    visit: &mut impl FnMut(&[u32]) -> ControlFlow<B>,
) -> ControlFlow<B> {
    if pos == plan.order.len() {
        return visit(image);
    }
    let poset = p.poset();
    let v = plan.order[pos];
    let placed = &plan.order[..pos];
    let full = full_set(dim);
    let mut lo = 0u32;
    let mut hi = full;
    for &u in placed {
        if poset.lt(u, v) {
            lo |= image[u];
        } else if poset.lt(v, u) {
            hi &= image[u];
        }
    }
    if !is_subset(lo, hi) {
        return ControlFlow::Continue(());
    }
    let (db, da) = (plan.depth_below[v], plan.depth_above[v]);
    let (cb, ca) = (plan.below_count[v], plan.above_count[v]);
    for s in submasks(hi & !lo) {
        let z = lo | s;
        let size = z.count_ones();
        let co = dim as u32 - size;
        if size < db || co < da {
            continue;
        }
        if (size < 31 && (1u64 << size) - 1 < u64::from(cb)) || (co < 31 && (1u64 << co) - 1 < u64::from(ca)) {
            continue;
        }
        if let (Some(h), Some(c)) = (host, p.color(v)) {
            if h.color(z) != c {
                continue;
            }
        }
        let ok = placed.iter().all(|&u| {
            let w = image[u];
            w != z && (poset.comparable(u, v) || !(is_subset(w, z) || is_subset(z, w)))
        });
        if ok {
            image[v] = z;
            extend(p, dim, host, plan, pos + 1, image, visit)?;
        }
    }
    ControlFlow::Continue(())
}

fn check_pattern_caps(p: &ColoredPoset, dim: usize) -> Result<()> {
    cap("pattern size", p.len(), MAX_PATTERN)?;
    cap("host dimension", dim, crate::lattice::MAX_DIM)?;
    if dim > 16 {
        cap("pattern size for hosts above dimension 16", p.len(), 8)?;
    }
    Ok(())
}

/// Finds a colored induced copy of `p` in `host`.
///
/// Pattern vertices are placed along a fixed linear extension that prefers
/// the most constrained vertex; the returned embedding is the
/// lexicographically least one along that placement order.
pub fn find_colored_copy(p: &ColoredPoset, host: &LatticeColoring) -> Result<Option<Embedding>> {
    check_pattern_caps(p, host.dim())?;
    Ok(for_each_copy(p, host.dim(), Some(host), |img| {
        ControlFlow::Break(Embedding::new(img.to_vec()))
    }))
}

/// One induced copy as a set of `(code, required color)` pairs, sorted by code.
pub type CopyImage = Vec<(u32, Option<Color>)>;

/// Every induced copy of `p` in `Q_dim`, each distinct image exactly once.
///
/// With `ignore_colors` the images are bare vertex sets. Otherwise each entry
/// also records the color the pattern demands at every vertex, so two
/// placements on the same set with different color demands stay separate.
pub fn enumerate_copies(p: &ColoredPoset, dim: usize, ignore_colors: bool) -> Result<Vec<CopyImage>> {
    check_pattern_caps(p, dim)?;
    cap("enumeration host dimension", dim, MAX_ENUM_DIM)?;
    let mut seen = BTreeSet::new();
    for_each_copy::<()>(p, dim, None, |img| {
        let mut entry: CopyImage = img
            .iter()
            .enumerate()
            .map(|(v, &z)| (z, if ignore_colors { None } else { p.color(v) }))
            .collect();
        entry.sort_unstable();
        seen.insert(entry);
        ControlFlow::Continue(())
    });
    Ok(seen.into_iter().collect())
}

/// Finds a copy of `Q_n` whose vertices all have `color`. Vertex `i` of the
/// returned embedding is the subset of `[n]` with code `i`.
///
/// `X` ranges over `n`-sets in ascending code order; `g` is built along the
/// subsets of `X` sorted by `(size, code)`, least feasible value first,
/// with `g(S) ⊇ g(S \ {x})` for every `x ∈ S`.
pub fn find_mono_cube(host: &LatticeColoring, n: usize, color: Color) -> Result<Option<Embedding>> {
    let dim = host.dim();
    cap("cube host dimension", dim, MAX_CUBE_HOST_DIM)?;
    if n > dim {
        return Err(invalid(format!("Q_{n} cannot fit into Q_{dim}")));
    }
    let full = full_set(dim);
    let order = codes_by_rank(n);
    for x in (0..=full).filter(|z| z.count_ones() as usize == n) {
        let rest = full & !x;
        let mut g = vec![0u32; 1 << n];
        if cube_extend(host, color, x, rest, &order, 0, &mut g) {
            let image = (0..1u32 << n).map(|s| deposit(s, x) | g[s as usize]).collect();
            return Ok(Some(Embedding::new(image)));
        }
    }
    Ok(None)
}

fn cube_extend(
    host: &LatticeColoring,
    color: Color,
    x: u32,
    rest: u32,
    order: &[u32],
    pos: usize,
    g: &mut [u32],
) -> bool {
    let Some(&s) = order.get(pos) else {
        return true;
    };
    // Lower bound from the covers S \ {x}.
    let mut lo = 0u32;
    let mut bits = s;
    while bits != 0 {
        let low = bits & bits.wrapping_neg();
        lo |= g[(s ^ low) as usize];
        bits ^= low;
    }
    let base = deposit(s, x);
    for extra in submasks(rest & !lo) {
        let value = lo | extra;
        if host.color(base | value) == color {
            g[s as usize] = value;
            if cube_extend(host, color, x, rest, order, pos + 1, g) {
                return true;
            }
        }
    }
    false
}

/// Pattern copy first, then a blue cube, then a red cube.
pub fn classify(host: &LatticeColoring, p: &ColoredPoset, n: usize) -> Result<Verdict> {
    if let Some(e) = find_colored_copy(p, host)? {
        return Ok(Verdict::PatternCopy(e));
    }
    if n > host.dim() {
        return Ok(Verdict::Avoids);
    }
    if let Some(e) = find_mono_cube(host, n, Color::Blue)? {
        return Ok(Verdict::MonoBlueCube(e));
    }
    if let Some(e) = find_mono_cube(host, n, Color::Red)? {
        return Ok(Verdict::MonoRedCube(e));
    }
    Ok(Verdict::Avoids)
}

/// An X-good embedding: `map[i]` is the image of the subset of `ground`
/// selected by the bits of `i`, and `map[i] ∩ ground` is that subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XGoodEmbedding {
    pub ground: u32,
    pub map: Vec<u32>,
}

impl XGoodEmbedding {
    pub fn dim(&self) -> usize {
        self.ground.count_ones() as usize
    }

    /// The monotone part `g(S) = φ(S) \ S`.
    pub fn offset(&self, i: usize) -> u32 {
        self.map[i] & !self.ground
    }
}

/// Re-expresses a copy of `Q_n` in `Q_dim` as an X-good embedding with the
/// same image, trying every `n`-set `X` in ascending code order.
pub fn recover_xgood(image: &[u32], dim: usize) -> Result<XGoodEmbedding> {
    cap("host dimension", dim, MAX_CUBE_HOST_DIM)?;
    let n = image.len().trailing_zeros() as usize;
    if image.len() != 1 << n || n > dim {
        return Err(invalid("image is not a copy of a Boolean lattice"));
    }
    let full = full_set(dim);
    if image.iter().any(|&z| z & !full != 0) {
        return Err(invalid(format!("image has codes outside Q_{dim}")));
    }
    for x in (0..=full).filter(|z| z.count_ones() as usize == n) {
        let mut map = vec![u32::MAX; 1 << n];
        let mut ok = true;
        for &z in image {
            let trace = crate::lattice::extract(z & x, x) as usize;
            if map[trace] != u32::MAX {
                ok = false;
                break;
            }
            map[trace] = z;
        }
        if !ok || map.contains(&u32::MAX) {
            continue;
        }
        let iso = (0..1u32 << n).all(|s| {
            (0..1u32 << n).all(|t| is_subset(s, t) == is_subset(map[s as usize], map[t as usize]))
        });
        if iso {
            return Ok(XGoodEmbedding { ground: x, map });
        }
    }
    Err(invalid("image is not a copy of a Boolean lattice"))
}

/// Result of the chain-versus-cube dichotomies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainOrCube {
    BlueChain(Vec<u32>),
    RedCube(Embedding),
}

/// Either a blue Y-chain for the ordering `tau` or a red copy of `Q_|X|`.
///
/// The host's ground set must be exactly `X ∪ Y`, where `Y` is the set of
/// bit positions listed in `tau`. A Y-chain has vertices `X_j ∪ {y_1..y_j}`
/// with `X_0 ⊆ X_1 ⊆ … ⊆ X_k ⊆ X`; it is searched by dynamic programming over
/// the sets `X_j` reachable with an all-blue prefix.
pub fn ychain_or_redcube(host: &LatticeColoring, x: u32, tau: &[usize]) -> Result<ChainOrCube> {
    let dim = host.dim();
    cap("cube host dimension", dim, MAX_CUBE_HOST_DIM)?;
    let mut y = 0u32;
    for &b in tau {
        if b >= dim || y & (1 << b) != 0 {
            return Err(invalid("tau must list distinct ground elements of the host"));
        }
        y |= 1 << b;
    }
    if x == 0 || y == 0 || x & y != 0 || x | y != full_set(dim) {
        return Err(invalid("X and Y must be disjoint, nonempty and cover the ground set"));
    }
    if let Some(chain) = blue_ychain(host, x, tau) {
        return Ok(ChainOrCube::BlueChain(chain));
    }
    let n = x.count_ones() as usize;
    match find_mono_cube(host, n, Color::Red)? {
        Some(e) => Ok(ChainOrCube::RedCube(e)),
        None => Err(Error::Inconsistency(format!(
            "neither a blue Y-chain nor a red Q_{n} in {host:?}"
        ))),
    }
}

fn blue_ychain(host: &LatticeColoring, x: u32, tau: &[usize]) -> Option<Vec<u32>> {
    let n = x.count_ones() as usize;
    let size = 1usize << n;
    let prefix = |j: usize| tau[..j].iter().fold(0u32, |m, &b| m | (1 << b));
    let mut reach: Vec<Vec<bool>> = Vec::with_capacity(tau.len() + 1);
    reach.push((0..size).map(|s| host.is_blue(deposit(s as u32, x))).collect());
    for j in 1..=tau.len() {
        // Up-closure of the previous level within Q(X).
        let mut up = reach[j - 1].clone();
        for b in 0..n {
            for s in 0..size {
                if s & (1 << b) != 0 && up[s ^ (1 << b)] {
                    up[s] = true;
                }
            }
        }
        let yj = prefix(j);
        let level: Vec<bool> = (0..size).map(|s| up[s] && host.is_blue(deposit(s as u32, x) | yj)).collect();
        if !level.contains(&true) {
            return None;
        }
        reach.push(level);
    }
    let k = tau.len();
    let mut parts = vec![0usize; k + 1];
    parts[k] = (0..size).find(|&s| reach[k][s])?;
    for j in (0..k).rev() {
        let above = parts[j + 1];
        parts[j] = (0..size).find(|&s| s & above == s && reach[j][s])?;
    }
    Some((0..=k).map(|j| deposit(parts[j] as u32, x) | prefix(j)).collect())
}

/// A longest chain among the vertices selected by `keep`, bottom-up.
pub fn longest_chain(dim: usize, keep: impl Fn(u32) -> bool) -> Vec<u32> {
    let len = 1usize << dim;
    // best[z]: longest kept chain inside the down-set of z; top[z]: its maximum.
    let mut best = vec![0u32; len];
    let mut top = vec![u32::MAX; len];
    for z in codes_by_rank(dim) {
        let mut b = 0;
        let mut t = u32::MAX;
        let mut bits = z;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            let y = (z ^ low) as usize;
            if best[y] > b {
                b = best[y];
                t = top[y];
            }
            bits ^= low;
        }
        if keep(z) {
            b += 1;
            t = z;
        }
        best[z as usize] = b;
        top[z as usize] = t;
    }
    let mut chain = Vec::new();
    let mut cur = top[len - 1];
    while cur != u32::MAX {
        chain.push(cur);
        // Continue below the current top: the best chain strictly inside it.
        let mut b = 0;
        let mut t = u32::MAX;
        let mut bits = cur;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            let y = (cur ^ low) as usize;
            if best[y] > b {
                b = best[y];
                t = top[y];
            }
            bits ^= low;
        }
        cur = t;
    }
    chain.reverse();
    chain
}

/// In a host of dimension `n + k`: a red `Q_n` or a blue chain of `k + 1`
/// vertices.
pub fn chain_or_cube(host: &LatticeColoring, n: usize, k: usize) -> Result<ChainOrCube> {
    if n == 0 || k == 0 || host.dim() != n + k {
        return Err(invalid(format!("need n, k >= 1 and host dimension n + k, got n={n}, k={k}, N={}", host.dim())));
    }
    cap("cube host dimension", host.dim(), MAX_CUBE_HOST_DIM)?;
    let chain = longest_chain(host.dim(), |z| host.is_blue(z));
    if chain.len() > k {
        return Ok(ChainOrCube::BlueChain(chain[..=k].to_vec()));
    }
    let x = full_set(n);
    let tau: Vec<usize> = (n..n + k).collect();
    match ychain_or_redcube(host, x, &tau)? {
        cube @ ChainOrCube::RedCube(_) => Ok(cube),
        ChainOrCube::BlueChain(c) => Err(Error::Inconsistency(format!(
            "Y-chain {c:?} is longer than the longest blue chain"
        ))),
    }
}

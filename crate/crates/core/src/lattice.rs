//! The host object: a blue/red coloring of the Boolean lattice `Q_N`.
//!
//! A vertex `Z ⊆ [N]` is stored as its subset code: ground element `i`
//! corresponds to bit `i - 1`. Containment is `x & y == x`.

use std::fmt;
use std::str::FromStr;

use crate::error::{cap, invalid, Error, Result};
use crate::poset::Color;

/// Largest host dimension that can be stored (16 MiB of bits).
pub const MAX_DIM: usize = 24;

#[inline]
pub fn is_subset(x: u32, y: u32) -> bool {
    x & y == x
}

#[inline]
pub fn comparable(x: u32, y: u32) -> bool {
    is_subset(x, y) || is_subset(y, x)
}

/// Scatters the low bits of `bits` into the set positions of `mask`.
pub fn deposit(mut bits: u32, mut mask: u32) -> u32 {
    let mut out = 0;
    while mask != 0 && bits != 0 {
        let low = mask & mask.wrapping_neg();
        if bits & 1 != 0 {
            out |= low;
        }
        bits >>= 1;
        mask &= mask - 1;
    }
    out
}

/// Gathers the bits of `x` at the set positions of `mask` into the low bits.
pub fn extract(x: u32, mut mask: u32) -> u32 {
    let mut out = 0;
    let mut i = 0;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if x & low != 0 {
            out |= 1 << i;
        }
        i += 1;
        mask &= mask - 1;
    }
    out
}

/// Submasks of `mask` in ascending numeric order, `0` first.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut next = Some(0u32);
    std::iter::from_fn(move || {
        let cur = next?;
        let succ = cur.wrapping_sub(mask) & mask;
        next = (succ != 0).then_some(succ);
        Some(cur)
    })
}

pub fn full_set(dim: usize) -> u32 {
    if dim == 32 {
        u32::MAX
    } else {
        (1u32 << dim) - 1
    }
}

/// All codes of popcount `i` in `Q_dim`, ascending.
pub fn layer(dim: usize, i: usize) -> Result<Vec<u32>> {
    cap("lattice dimension", dim, MAX_DIM)?;
    if i > dim {
        return Err(invalid(format!("layer {i} does not exist in Q_{dim}")));
    }
    Ok((0..1u32 << dim).filter(|z| z.count_ones() as usize == i).collect())
}

/// All codes of `Q_dim` sorted by `(popcount, code)`.
pub fn codes_by_rank(dim: usize) -> Vec<u32> {
    let mut codes: Vec<u32> = (0..1u32 << dim).collect();
    codes.sort_by_key(|&z| (z.count_ones(), z));
    codes
}

/// The interval `{Z : bottom ⊆ Z ⊆ top}`, itself a Boolean lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sublattice {
    bottom: u32,
    top: u32,
}

impl Sublattice {
    pub fn new(dim: usize, bottom: u32, top: u32) -> Result<Sublattice> {
        cap("lattice dimension", dim, MAX_DIM)?;
        if top & !full_set(dim) != 0 {
            return Err(invalid(format!("code {top} is not a vertex of Q_{dim}")));
        }
        if !is_subset(bottom, top) {
            return Err(invalid(format!("{bottom} is not a subset of {top}")));
        }
        Ok(Sublattice { bottom, top })
    }

    pub fn bottom(&self) -> u32 {
        self.bottom
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    /// The ground elements that vary inside the interval.
    pub fn free(&self) -> u32 {
        self.top & !self.bottom
    }

    pub fn dim(&self) -> usize {
        self.free().count_ones() as usize
    }

    pub fn contains(&self, z: u32) -> bool {
        is_subset(self.bottom, z) && is_subset(z, self.top)
    }

    /// Order-isomorphism `Q_dim() → self`.
    pub fn embed(&self, s: u32) -> u32 {
        self.bottom | deposit(s, self.free())
    }

    /// Members in ascending code order.
    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        submasks(self.free()).map(move |s| self.bottom | s)
    }

    /// Members listed as images of `0..2^dim()`, i.e. a cube embedding.
    pub fn as_image(&self) -> Vec<u32> {
        (0..1u32 << self.dim()).map(|s| self.embed(s)).collect()
    }
}

/// A blue/red assignment to every vertex of `Q_N`; bit set means blue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeColoring {
    dim: usize,
    words: Vec<u64>,
}

impl LatticeColoring {
    pub fn uniform(dim: usize, color: Color) -> Result<LatticeColoring> {
        cap("lattice dimension", dim, MAX_DIM)?;
        let len = 1usize << dim;
        let mut words = vec![if color.is_blue() { u64::MAX } else { 0 }; len.div_ceil(64)];
        if !len.is_multiple_of(64) {
            words[0] &= (1u64 << len) - 1;
        }
        Ok(LatticeColoring { dim, words })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(u32) -> Color) -> Result<LatticeColoring> {
        let mut c = LatticeColoring::uniform(dim, Color::Red)?;
        for z in 0..1u32 << dim {
            if f(z).is_blue() {
                c.set(z, Color::Blue);
            }
        }
        Ok(c)
    }

    /// Coloring of `Q_dim` (`dim <= 6`) read from the low `2^dim` bits of `mask`.
    pub fn from_mask(dim: usize, mask: u64) -> Result<LatticeColoring> {
        cap("lattice dimension", dim, 6)?;
        let len = 1u32 << dim;
        let keep = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        Ok(LatticeColoring { dim, words: vec![mask & keep] })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        1 << self.dim
    }

    #[inline]
    pub fn is_blue(&self, z: u32) -> bool {
        (self.words[(z >> 6) as usize] >> (z & 63)) & 1 != 0
    }

    #[inline]
    pub fn color(&self, z: u32) -> Color {
        if self.is_blue(z) {
            Color::Blue
        } else {
            Color::Red
        }
    }

    pub fn set(&mut self, z: u32, color: Color) {
        let word = &mut self.words[(z >> 6) as usize];
        if color.is_blue() {
            *word |= 1 << (z & 63);
        } else {
            *word &= !(1 << (z & 63));
        }
    }

    pub fn count(&self, color: Color) -> usize {
        let blue: usize = self.words.iter().map(|w| w.count_ones() as usize).sum();
        match color {
            Color::Blue => blue,
            Color::Red => self.num_vertices() - blue,
        }
    }

    /// Every vertex with its color exchanged.
    pub fn swapped(&self) -> LatticeColoring {
        LatticeColoring::from_fn(self.dim, |z| self.color(z).flip()).expect("same dimension")
    }

    /// Pulls the coloring back along a cube embedding: vertex `s` of the
    /// result gets the color of `image[s]`.
    pub fn restrict(&self, image: &[u32]) -> Result<LatticeColoring> {
        let d = image.len().trailing_zeros() as usize;
        if image.len() != 1 << d {
            return Err(invalid("image size is not a power of two"));
        }
        LatticeColoring::from_fn(d, |s| self.color(image[s as usize]))
    }

    /// Applies a permutation of the ground set: element `i` (0-based) goes to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LatticeColoring {
        assert_eq!(perm.len(), self.dim);
        let map = |z: u32| {
            (0..self.dim)
                .filter(|&i| z & (1 << i) != 0)
                .fold(0u32, |acc, i| acc | (1 << perm[i]))
        };
        let mut out = LatticeColoring::uniform(self.dim, Color::Red).expect("same dimension");
        for z in 0..1u32 << self.dim {
            out.set(map(z), self.color(z));
        }
        out
    }

    /// The colors as a `b`/`r` string in ascending code order.
    pub fn color_string(&self) -> String {
        (0..1u32 << self.dim).map(|z| self.color(z).as_char()).collect()
    }
}

impl fmt::Debug for LatticeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatticeColoring(N={}, {})", self.dim, self.color_string())
    }
}

impl fmt::Display for LatticeColoring {
    /// Coloring file format: `N=<dim>` then `2^N` characters, newline-terminated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N={}", self.dim)?;
        writeln!(f, "{}", self.color_string())
    }
}

pub fn serialize_coloring(c: &LatticeColoring) -> String {
    c.to_string()
}

/// Parses the coloring file format. Comment lines starting with `#` may
/// precede the header.
pub fn parse_coloring(text: &str) -> Result<LatticeColoring> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .skip_while(|(_, l)| l.starts_with('#'))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing `N=<dim>` header".into(),
    })?;
    let dim: usize = header
        .strip_prefix("N=")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line: hline,
            msg: format!("expected `N=<dim>`, got `{header}`"),
        })?;
    cap("lattice dimension", dim, MAX_DIM)?;
    let (bline, body) = lines.next().ok_or(Error::Parse {
        line: hline + 1,
        msg: "missing color line".into(),
    })?;
    if let Some((extra, _)) = lines.next() {
        return Err(Error::Parse { line: extra, msg: "unexpected trailing content".into() });
    }
    let len = 1usize << dim;
    if body.len() != len {
        return Err(Error::Parse {
            line: bline,
            msg: format!("expected {len} colors for N={dim}, got {}", body.chars().count()),
        });
    }
    let mut c = LatticeColoring::uniform(dim, Color::Red)?;
    for (z, ch) in body.chars().enumerate() {
        match ch {
            'b' => c.set(z as u32, Color::Blue),
            'r' => {}
            other => {
                return Err(Error::Parse {
                    line: bline,
                    msg: format!("invalid color character `{other}` at index {z}"),
                })
            }
        }
    }
    Ok(c)
}

impl FromStr for LatticeColoring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_coloring(s)
    }
}

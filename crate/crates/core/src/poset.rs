//! Pattern posets, their colorings, and the scalar invariants used to state
//! bounds: height, 2-dimension and alternation number.
//!
//! A [`Poset`] keeps, for every vertex, the bit mask of vertices above it
//! (its up-set, itself included). Sixteen vertices therefore fit in a `u16`.

use std::fmt;
use std::str::FromStr;

use crate::error::{cap, invalid, Error, Result};
use crate::finder;
use crate::lattice::LatticeColoring;

/// Largest pattern size supported anywhere in the crate.
pub const MAX_PATTERN: usize = 16;

/// One of the two colors. In files and bit vectors blue is `b` / `1`, red is
/// `r` / `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Color::Red => 'r',
            Color::Blue => 'b',
        }
    }

    pub fn from_char(c: char) -> Option<Color> {
        match c {
            'r' | 'R' => Some(Color::Red),
            'b' | 'B' => Some(Color::Blue),
            _ => None,
        }
    }

    pub fn is_blue(self) -> bool {
        self == Color::Blue
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// A finite partial order on vertices `0..k`, `k <= 16`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    up: Vec<u16>,
}

impl Poset {
    /// Builds a poset from explicit up-sets, checking the order axioms.
    pub fn from_up_sets(up: Vec<u16>) -> Result<Poset> {
        let k = up.len();
        if k == 0 {
            return Err(invalid("a poset needs at least one vertex"));
        }
        cap("pattern size", k, MAX_PATTERN)?;
        let full: u32 = (1u32 << k) - 1;
        for (v, &mask) in up.iter().enumerate() {
            if u32::from(mask) & !full != 0 {
                return Err(Error::NotAPoset(format!("up-set of {v} names unknown vertices")));
            }
            if mask & (1 << v) == 0 {
                return Err(Error::NotAPoset(format!("vertex {v} is not related to itself")));
            }
            for w in bits(mask) {
                if w != v && up[w] & (1 << v) != 0 {
                    return Err(Error::NotAPoset(format!("cycle through vertices {v} and {w}")));
                }
                if up[w] & !mask != 0 {
                    return Err(Error::NotAPoset(format!(
                        "relation is not transitive at {v} <= {w}"
                    )));
                }
            }
        }
        Ok(Poset { up })
    }

    /// Builds the poset generated by the pairs `i <= j` (transitive closure).
    pub fn from_relations(k: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        if k == 0 {
            return Err(invalid("a poset needs at least one vertex"));
        }
        cap("pattern size", k, MAX_PATTERN)?;
        let mut up: Vec<u16> = (0..k).map(|v| 1u16 << v).collect();
        for &(i, j) in pairs {
            if i >= k || j >= k {
                return Err(invalid(format!("relation {i} <= {j} names a vertex >= {k}")));
            }
            up[i] |= 1 << j;
        }
        // Warshall closure on bit rows.
        for m in 0..k {
            for v in 0..k {
                if up[v] & (1 << m) != 0 {
                    up[v] |= up[m];
                }
            }
        }
        Poset::from_up_sets(up)
    }

    pub fn chain(k: usize) -> Result<Poset> {
        let pairs: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Poset::from_relations(k, &pairs)
    }

    pub fn antichain(k: usize) -> Result<Poset> {
        Poset::from_relations(k, &[])
    }

    /// The Boolean lattice `Q_n` with vertex `i` standing for the subset of
    /// `[n]` whose code is `i`.
    pub fn boolean_lattice(n: usize) -> Result<Poset> {
        if n > 4 {
            return Err(Error::CapExceeded { what: "pattern cube dimension", value: n, max: 4 });
        }
        let k = 1usize << n;
        let up = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| i & j == i)
                    .fold(0u16, |m, j| m | (1 << j))
            })
            .collect();
        Poset::from_up_sets(up)
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, u: usize, v: usize) -> bool {
        self.up[u] & (1 << v) != 0
    }

    pub fn lt(&self, u: usize, v: usize) -> bool {
        u != v && self.leq(u, v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.leq(u, v) || self.leq(v, u)
    }

    /// Vertices `w` with `v <= w`, as a mask.
    pub fn up_set(&self, v: usize) -> u16 {
        self.up[v]
    }

    /// Vertices `w` with `w <= v`, as a mask.
    pub fn down_set(&self, v: usize) -> u16 {
        (0..self.len())
            .filter(|&w| self.leq(w, v))
            .fold(0, |m, w| m | (1 << w))
    }

    /// Cover pairs `(u, v)`: `u < v` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let k = self.len();
        let mut out = Vec::new();
        for u in 0..k {
            for v in 0..k {
                if self.lt(u, v) && !(0..k).any(|w| self.lt(u, w) && self.lt(w, v)) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Vertices sorted so that every vertex comes after everything below it;
    /// ties are broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| (self.down_set(v).count_ones(), v));
        order
    }

    /// Size of the largest chain.
    pub fn height(&self) -> usize {
        // Longest path over the Hasse diagram, processed along a linear extension.
        let covers = self.covers();
        let mut depth = vec![1usize; self.len()];
        for v in self.linear_extension() {
            for &(u, w) in &covers {
                if w == v {
                    depth[v] = depth[v].max(depth[u] + 1);
                }
            }
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Smallest `N` such that `Q_N` contains an induced copy.
    pub fn two_dimension(&self) -> usize {
        let pattern = ColoredPoset::uncolored(self.clone());
        let k = self.len();
        let mut dim = ceil_log2(k);
        loop {
            let host = LatticeColoring::uniform(dim, Color::Blue)
                .expect("2-dimension of a 16-vertex poset is at most 16");
            match finder::find_colored_copy(&pattern, &host) {
                Ok(Some(_)) => return dim,
                Ok(None) => dim += 1,
                Err(_) => unreachable!("pattern of size <= 16 and host dimension <= 16"),
            }
        }
    }
}

pub(crate) fn ceil_log2(k: usize) -> usize {
    let mut d = 0;
    while (1usize << d) < k {
        d += 1;
    }
    d
}

pub(crate) fn bits(mask: u16) -> impl Iterator<Item = usize> {
    (0..16).filter(move |i| mask & (1 << i) != 0)
}

/// A poset with an optional color per vertex. Uncolored vertices match
/// host vertices of either color.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredPoset {
    poset: Poset,
    colors: Vec<Option<Color>>,
}

impl ColoredPoset {
    pub fn new(poset: Poset, colors: Vec<Option<Color>>) -> Result<ColoredPoset> {
        if colors.len() != poset.len() {
            return Err(invalid(format!(
                "{} colors given for {} vertices",
                colors.len(),
                poset.len()
            )));
        }
        Ok(ColoredPoset { poset, colors })
    }

    pub fn uncolored(poset: Poset) -> ColoredPoset {
        let colors = vec![None; poset.len()];
        ColoredPoset { poset, colors }
    }

    pub fn monochromatic(poset: Poset, color: Color) -> ColoredPoset {
        let colors = vec![Some(color); poset.len()];
        ColoredPoset { poset, colors }
    }

    /// Colors given as a string over `{b, r, *}`.
    pub fn with_color_string(poset: Poset, colors: &str) -> Result<ColoredPoset> {
        let colors = colors
            .chars()
            .map(|c| match c {
                '*' => Ok(None),
                _ => Color::from_char(c)
                    .map(Some)
                    .ok_or_else(|| invalid(format!("bad color character `{c}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        ColoredPoset::new(poset, colors)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn is_fully_colored(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Same poset with every color exchanged.
    pub fn swapped(&self) -> ColoredPoset {
        ColoredPoset {
            poset: self.poset.clone(),
            colors: self.colors.iter().map(|c| c.map(Color::flip)).collect(),
        }
    }

    /// Same poset with every vertex recolored.
    pub fn recolored(&self, color: Option<Color>) -> ColoredPoset {
        ColoredPoset {
            poset: self.poset.clone(),
            colors: vec![color; self.len()],
        }
    }

    /// Disjoint union with all cross pairs incomparable; `self` keeps the low
    /// vertex ids.
    pub fn parallel(&self, other: &ColoredPoset) -> Result<ColoredPoset> {
        let shift = self.len();
        cap("pattern size", shift + other.len(), MAX_PATTERN)?;
        let mut up: Vec<u16> = self.poset.up.clone();
        up.extend(other.poset.up.iter().map(|&m| m << shift));
        let mut colors = self.colors.clone();
        colors.extend_from_slice(&other.colors);
        ColoredPoset::new(Poset::from_up_sets(up)?, colors)
    }

    /// True iff some comparable pair carries two distinct colors.
    pub fn is_diverse(&self) -> bool {
        let k = self.len();
        (0..k).any(|u| {
            (0..k).any(|v| {
                self.poset.lt(u, v)
                    && matches!((self.colors[u], self.colors[v]), (Some(a), Some(b)) if a != b)
            })
        })
    }

    /// Whether a color-preserving isomorphism onto `other` exists.
    pub fn is_isomorphic(&self, other: &ColoredPoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut image = vec![usize::MAX; self.len()];
        let mut used = 0u32;
        iso_extend(self, other, 0, &mut image, &mut used)
    }
}

fn iso_extend(
    a: &ColoredPoset,
    b: &ColoredPoset,
    v: usize,
    image: &mut [usize],
    used: &mut u32,
) -> bool {
    if v == a.len() {
        return true;
    }
    for w in 0..b.len() {
        if *used & (1 << w) != 0 || a.colors[v] != b.colors[w] {
            continue;
        }
        let consistent = (0..v).all(|u| {
            a.poset.leq(u, v) == b.poset.leq(image[u], w)
                && a.poset.leq(v, u) == b.poset.leq(w, image[u])
        });
        if consistent {
            image[v] = w;
            *used |= 1 << w;
            if iso_extend(a, b, v + 1, image, used) {
                return true;
            }
            *used &= !(1 << w);
        }
    }
    false
}

impl fmt::Display for ColoredPoset {
    /// Writes the pattern file format, listing cover pairs only.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "poset {}", self.len())?;
        let colors: String = self
            .colors
            .iter()
            .map(|c| c.map_or('*', Color::as_char))
            .collect();
        writeln!(f, "colors {colors}")?;
        for (u, v) in self.poset.covers() {
            writeln!(f, "rel {u} {v}")?;
        }
        Ok(())
    }
}

/// Parses the pattern file format:
///
/// ```text
/// # comment
/// poset 4
/// colors brbb
/// rel 0 1; 0 2
/// rel 1 3
/// rel 2 3
/// ```
///
/// `colors` is optional (all vertices uncolored when absent); a `rel` line may
/// carry several `;`-separated pairs.
pub fn parse_pattern(text: &str) -> Result<ColoredPoset> {
    let mut size: Option<usize> = None;
    let mut colors: Option<(usize, String)> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let perr = |msg: String| Error::Parse { line: line_no, msg };
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "poset" => {
                if size.is_some() {
                    return Err(perr("duplicate `poset` declaration".into()));
                }
                let k: usize = rest
                    .parse()
                    .map_err(|_| perr(format!("bad vertex count `{rest}`")))?;
                if k == 0 {
                    return Err(perr("vertex count must be positive".into()));
                }
                cap("pattern size", k, MAX_PATTERN)?;
                size = Some(k);
            }
            "colors" => {
                if colors.is_some() {
                    return Err(perr("duplicate `colors` declaration".into()));
                }
                colors = Some((line_no, rest.to_string()));
            }
            "rel" => {
                for pair in rest.split(';') {
                    let nums: Vec<&str> = pair.split_whitespace().collect();
                    let [i, j] = nums[..] else {
                        return Err(perr(format!("expected two vertex ids, got `{}`", pair.trim())));
                    };
                    let i: usize = i.parse().map_err(|_| perr(format!("bad vertex id `{i}`")))?;
                    let j: usize = j.parse().map_err(|_| perr(format!("bad vertex id `{j}`")))?;
                    pairs.push((line_no, i, j));
                }
            }
            other => return Err(perr(format!("unknown declaration `{other}`"))),
        }
    }
    let k = size.ok_or(Error::Parse {
        line: text.lines().count().max(1),
        msg: "missing `poset <k>` declaration".into(),
    })?;
    for &(line, i, j) in &pairs {
        if i >= k || j >= k {
            return Err(Error::Parse {
                line,
                msg: format!("vertex id out of range 0..{k} in `rel {i} {j}`"),
            });
        }
    }
    let rel: Vec<_> = pairs.iter().map(|&(_, i, j)| (i, j)).collect();
    let poset = Poset::from_relations(k, &rel)?;
    match colors {
        None => Ok(ColoredPoset::uncolored(poset)),
        Some((line, s)) => {
            if s.chars().count() != k {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected {k} color characters, got {}", s.chars().count()),
                });
            }
            ColoredPoset::with_color_string(poset, &s).map_err(|e| Error::Parse {
                line,
                msg: e.to_string(),
            })
        }
    }
}

impl FromStr for ColoredPoset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pattern(s)
    }
}

/// A colored chain, colors listed bottom-up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainPattern {
    colors: Vec<Color>,
}

impl ChainPattern {
    pub fn new(colors: Vec<Color>) -> Result<ChainPattern> {
        if colors.is_empty() {
            return Err(invalid("a chain needs at least one vertex"));
        }
        cap("chain length", colors.len(), MAX_PATTERN)?;
        Ok(ChainPattern { colors })
    }

    /// Alternating chain of length `t` whose bottom has color `bottom`.
    pub fn alternating(t: usize, bottom: Color) -> Result<ChainPattern> {
        let colors = (0..t)
            .map(|i| if i % 2 == 0 { bottom } else { bottom.flip() })
            .collect();
        ChainPattern::new(colors)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Color of the `i`-th smallest vertex, 1-based.
    pub fn color(&self, i: usize) -> Color {
        self.colors[i - 1]
    }

    /// Length of the longest color-alternating subchain.
    pub fn alternation(&self) -> usize {
        1 + self.colors.windows(2).filter(|w| w[0] != w[1]).count()
    }

    pub fn to_colored_poset(&self) -> ColoredPoset {
        let poset = Poset::chain(self.len()).expect("chain length already capped");
        ColoredPoset::new(poset, self.colors.iter().copied().map(Some).collect())
            .expect("one color per vertex")
    }
}

impl FromStr for ChainPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let colors = s
            .trim()
            .chars()
            .map(|c| Color::from_char(c).ok_or_else(|| invalid(format!("bad chain color `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        ChainPattern::new(colors)
    }
}

impl fmt::Display for ChainPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.colors.iter().try_for_each(|c| write!(f, "{}", c.as_char()))
    }
}

/// Looks up a builtin pattern by `name[:params]`.
///
/// | spec | pattern |
/// |------|---------|
/// | `chain:3`, `chain:3:b` | chain `C_3`, optionally monochromatic |
/// | `antichain:3`, `antichain:b2r2` | antichain, or parallel colored antichains |
/// | `chains:b1r1` | parallel colored chains `C_1^(b) ⊔ C_1^(r)` |
/// | `alt-chain-rbr:4`, `alt-chain-brb:4` | alternating chains |
/// | `colored-chain:rrb` | chain colored bottom-up |
/// | `q2`, `q2:brbb` | `Q_2`, colors listed for `∅, {1}, {2}, {1,2}` |
/// | `cube:3`, `cube:3:r` | `Q_n`, optionally monochromatic |
/// | `lambda`, `lambda:bbb` | two incomparable bottoms below one top |
pub fn builtin_pattern(spec: &str) -> Result<ColoredPoset> {
    let spec = spec.trim();
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let unknown = || Error::UnknownPattern(spec.to_string());
    let bad = |why: &str| invalid(format!("`{spec}`: {why}"));
    let count_and_color = |p: &str| -> Result<(usize, Option<Color>)> {
        let (num, color) = p.split_once(':').unwrap_or((p, ""));
        let k: usize = num.parse().map_err(|_| bad("expected a vertex count"))?;
        let color = match color {
            "" => None,
            c if c.len() == 1 => Some(
                Color::from_char(c.chars().next().unwrap()).ok_or_else(|| bad("bad color"))?,
            ),
            _ => return Err(bad("bad color")),
        };
        Ok((k, color))
    };
    match name {
        "chain" => {
            let (k, color) = count_and_color(params)?;
            Ok(ColoredPoset::uncolored(Poset::chain(k)?).recolored(color))
        }
        "antichain" if params.starts_with(['b', 'r']) => parallel_parts(params, Poset::antichain)
            .map_err(|e| if matches!(e, Error::InvalidParameter(_)) { bad("expected e.g. b2r2") } else { e }),
        "antichain" => {
            let (k, color) = count_and_color(params)?;
            Ok(ColoredPoset::uncolored(Poset::antichain(k)?).recolored(color))
        }
        "chains" => parallel_parts(params, Poset::chain)
            .map_err(|e| if matches!(e, Error::InvalidParameter(_)) { bad("expected e.g. b1r1") } else { e }),
        "alt-chain-rbr" | "alt-chain-brb" => {
            let t: usize = params.parse().map_err(|_| bad("expected a chain length"))?;
            let bottom = if name == "alt-chain-rbr" { Color::Red } else { Color::Blue };
            Ok(ChainPattern::alternating(t, bottom)?.to_colored_poset())
        }
        "colored-chain" => Ok(params.parse::<ChainPattern>()?.to_colored_poset()),
        "q2" => {
            let q2 = Poset::boolean_lattice(2)?;
            if params.is_empty() {
                Ok(ColoredPoset::uncolored(q2))
            } else if params.chars().count() == 4 {
                ColoredPoset::with_color_string(q2, params)
            } else {
                Err(bad("expected four colors"))
            }
        }
        "cube" => {
            let (n, color) = count_and_color(params)?;
            Ok(ColoredPoset::uncolored(Poset::boolean_lattice(n)?).recolored(color))
        }
        "lambda" => {
            let lambda = Poset::from_relations(3, &[(0, 2), (1, 2)])?;
            if params.is_empty() {
                Ok(ColoredPoset::uncolored(lambda))
            } else {
                ColoredPoset::with_color_string(lambda, params)
            }
        }
        _ => Err(unknown()),
    }
}

/// `b2r1` → blue part of size 2 in parallel with red part of size 1.
fn parallel_parts(params: &str, shape: fn(usize) -> Result<Poset>) -> Result<ColoredPoset> {
    let mut parts: Vec<(Color, usize)> = Vec::new();
    let mut chars = params.chars().peekable();
    while let Some(c) = chars.next() {
        let color = Color::from_char(c).ok_or_else(|| invalid("bad color"))?;
        let mut digits = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            digits.push(*d);
            chars.next();
        }
        let k: usize = digits.parse().map_err(|_| invalid("missing size"))?;
        parts.push((color, k));
    }
    let mut iter = parts.into_iter();
    let (color, k) = iter.next().ok_or_else(|| invalid("empty"))?;
    let mut acc = ColoredPoset::monochromatic(shape(k)?, color);
    for (color, k) in iter {
        acc = acc.parallel(&ColoredPoset::monochromatic(shape(k)?, color))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_two_chain() {
        let p = parse_pattern("poset 2\ncolors rb\nrel 0 1\n").unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.poset().lt(0, 1));
        assert_eq!(p.colors(), &[Some(Color::Red), Some(Color::Blue)]);
        assert!(p.is_isomorphic(&builtin_pattern("alt-chain-rbr:2").unwrap()));
    }

    #[test]
    fn parses_single_vertex() {
        let p = parse_pattern("poset 1\ncolors b").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.color(0), Some(Color::Blue));
    }

    #[test]
    fn parses_colored_q2() {
        let p = parse_pattern("# Q2\nposet 4\ncolors brbb\nrel 0 1; 0 2; 1 3; 2 3\n").unwrap();
        assert!(p.poset().lt(0, 3), "closure adds 0 <= 3");
        assert!(!p.poset().comparable(1, 2));
        assert_eq!(p, builtin_pattern("q2:brbb").unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_pattern("poset 2\nrel 0 1\nrel 1 0"), Err(Error::NotAPoset(_))));
        assert!(matches!(parse_pattern("poset 17"), Err(Error::CapExceeded { .. })));
        assert!(matches!(parse_pattern("poset 2\nposet 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_pattern("poset 2\nfoo"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_pattern("poset 2\ncolors b"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_pattern("poset 2\nrel 0 5"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_pattern("colors b"), Err(Error::Parse { .. })));
        assert!(matches!(parse_pattern("poset 2\ncolors bx"), Err(Error::Parse { .. })));
    }

    #[test]
    fn display_round_trips() {
        for spec in ["q2:rbbb", "antichain:b2r2", "alt-chain-brb:3", "lambda"] {
            let p = builtin_pattern(spec).unwrap();
            assert_eq!(parse_pattern(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn heights() {
        assert_eq!(Poset::chain(3).unwrap().height(), 3);
        assert_eq!(Poset::boolean_lattice(2).unwrap().height(), 3);
        assert_eq!(Poset::antichain(3).unwrap().height(), 1);
        for n in 0..=4 {
            assert_eq!(Poset::boolean_lattice(n).unwrap().height(), n + 1);
        }
    }

    #[test]
    fn two_dimensions() {
        assert_eq!(Poset::chain(3).unwrap().two_dimension(), 2);
        assert_eq!(Poset::boolean_lattice(2).unwrap().two_dimension(), 2);
        assert_eq!(Poset::antichain(3).unwrap().two_dimension(), 3);
        for t in 2..=4 {
            assert_eq!(Poset::chain(t).unwrap().two_dimension(), t - 1);
        }
        for n in 1..=4 {
            assert_eq!(Poset::boolean_lattice(n).unwrap().two_dimension(), n);
        }
    }

    #[test]
    fn alternation_examples() {
        let alt = |s: &str| s.parse::<ChainPattern>().unwrap().alternation();
        assert_eq!(alt("rbrb"), 4);
        assert_eq!(alt("rrb"), 2);
        assert_eq!(alt("rrr"), 1);
    }

    #[test]
    fn diversity() {
        assert!(builtin_pattern("alt-chain-rbr:2").unwrap().is_diverse());
        assert!(!builtin_pattern("antichain:b1r1").unwrap().is_diverse());
        assert!(!builtin_pattern("cube:2:b").unwrap().is_diverse());
        assert!(builtin_pattern("q2:rrbb").unwrap().is_diverse());
    }

    #[test]
    fn builtins() {
        let rbr = builtin_pattern("alt-chain-rbr:3").unwrap();
        assert_eq!(rbr.colors(), &[Some(Color::Red), Some(Color::Blue), Some(Color::Red)]);
        assert_eq!(rbr.poset().height(), 3);

        let par = builtin_pattern("antichain:b2r2").unwrap();
        assert_eq!(par.len(), 4);
        assert!((0..4).all(|u| (0..4).all(|v| u == v || !par.poset().comparable(u, v))));
        assert_eq!(par.colors().iter().filter(|c| **c == Some(Color::Blue)).count(), 2);

        let lambda = builtin_pattern("lambda").unwrap();
        assert_eq!(lambda.len(), 3);
        assert!(lambda.colors().iter().all(Option::is_none));
        // Q_2 with its minimum removed.
        let q2_top = Poset::from_relations(3, &[(0, 2), (1, 2)]).unwrap();
        assert_eq!(lambda.poset(), &q2_top);

        let chains = builtin_pattern("chains:b2r1").unwrap();
        assert_eq!(chains.len(), 3);
        assert!(chains.poset().lt(0, 1) && !chains.poset().comparable(1, 2));

        assert!(matches!(builtin_pattern("nope"), Err(Error::UnknownPattern(_))));
        assert!(matches!(builtin_pattern("q2:bb"), Err(Error::InvalidParameter(_))));
        assert!(matches!(builtin_pattern("chain:x"), Err(Error::InvalidParameter(_))));
        assert!(matches!(builtin_pattern("antichain:b17"), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn isomorphism_and_swap() {
        let a = builtin_pattern("antichain:b1r1").unwrap();
        assert!(a.is_isomorphic(&a.swapped()));
        let q = builtin_pattern("q2:brrb").unwrap();
        assert!(!q.is_isomorphic(&q.swapped()));
        let rbr = builtin_pattern("alt-chain-rbr:2").unwrap();
        assert!(!rbr.is_isomorphic(&rbr.swapped()));
        let brbb = builtin_pattern("q2:brbb").unwrap();
        let bbrb = builtin_pattern("q2:bbrb").unwrap();
        assert!(brbb.is_isomorphic(&bbrb));
    }

    #[test]
    fn order_axioms_checked() {
        assert!(Poset::from_up_sets(vec![0b01, 0b10]).is_ok());
        assert!(Poset::from_up_sets(vec![0b00, 0b10]).is_err(), "not reflexive");
        assert!(Poset::from_up_sets(vec![0b11, 0b11]).is_err(), "not antisymmetric");
        assert!(Poset::from_up_sets(vec![0b011, 0b110, 0b100]).is_err(), "not transitive");
    }

    fn brute_alternation(colors: &[Color]) -> usize {
        let t = colors.len();
        (1u32..1 << t)
            .filter(|&mask| {
                let picked: Vec<Color> =
                    (0..t).filter(|i| mask & (1 << i) != 0).map(|i| colors[i]).collect();
                picked.windows(2).all(|w| w[0] != w[1])
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    proptest! {
        #[test]
        fn alternation_matches_subsequence_oracle(bits in proptest::collection::vec(any::<bool>(), 1..=16)) {
            let colors: Vec<Color> = bits.iter().map(|&b| if b { Color::Blue } else { Color::Red }).collect();
            let chain = ChainPattern::new(colors.clone()).unwrap();
            prop_assert_eq!(chain.alternation(), brute_alternation(&colors));
        }

        #[test]
        fn diverse_iff_colors_comparable(
            k in 1usize..=6,
            rel in proptest::collection::vec((0usize..6, 0usize..6), 0..8),
            cols in proptest::collection::vec(any::<bool>(), 6),
        ) {
            let pairs: Vec<_> = rel.into_iter().filter(|&(i, j)| i < k && j < k && i < j).collect();
            let poset = Poset::from_relations(k, &pairs).unwrap();
            let colors: Vec<_> = cols[..k].iter().map(|&b| Some(if b { Color::Blue } else { Color::Red })).collect();
            let p = ColoredPoset::new(poset.clone(), colors.clone()).unwrap();
            let blues: Vec<usize> = (0..k).filter(|&v| colors[v] == Some(Color::Blue)).collect();
            let reds: Vec<usize> = (0..k).filter(|&v| colors[v] == Some(Color::Red)).collect();
            let parallel = blues.iter().all(|&b| reds.iter().all(|&r| !poset.comparable(b, r)));
            prop_assert_eq!(p.is_diverse(), !parallel);
        }
    }
}

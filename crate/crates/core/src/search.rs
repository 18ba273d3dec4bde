//! Exhaustive search over all colorings of a small `Q_N`.
//!
//! A [`Problem`] is a list of colored target patterns; a coloring *avoids*
//! the problem when it contains none of them. Every induced copy of every
//! target is precomputed as a forbidden partial assignment, keyed by the
//! last vertex it touches in the assignment order, so the depth-first search
//! detects a completed copy the moment its last vertex is colored.
//!
//! With symmetry reduction only colorings that are lexicographically least
//! in their orbit under ground-set permutations (and, when the targets allow
//! it, the color swap) are explored. The check is exact over all `N!`
//! permutations.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::error::{cap, invalid, Error, Result};
use crate::finder::{enumerate_copies, find_colored_copy, MAX_ENUM_DIM};
use crate::lattice::{codes_by_rank, LatticeColoring};
use crate::poset::{Color, ColoredPoset, Poset};

/// Largest host dimension for exhaustive search.
pub const MAX_SEARCH_DIM: usize = 5;
/// Largest variable count for brute-force CNF model counting.
pub const MAX_COUNT_VARS: usize = 16;
/// Number of leading assignment positions split into parallel branches.
const SPLIT_DEPTH: usize = 10;

/// Why a forbidden assignment exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClauseKind {
    PatternCopy,
    BlueCube,
    RedCube,
}

impl ClauseKind {
    pub fn tag(self) -> &'static str {
        match self {
            ClauseKind::PatternCopy => "pattern-copy",
            ClauseKind::BlueCube => "blue-cube",
            ClauseKind::RedCube => "red-cube",
        }
    }
}

/// A colored copy of a target: the listed vertices must not all take the
/// listed colors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Forbidden {
    pub cells: Vec<(u32, Color)>,
    pub kind: ClauseKind,
}

/// Target patterns over a fixed host dimension.
#[derive(Debug, Clone)]
pub struct Problem {
    dim: usize,
    targets: Vec<(ColoredPoset, ClauseKind)>,
    forbidden: Vec<Forbidden>,
}

impl Problem {
    pub fn new(dim: usize, targets: Vec<(ColoredPoset, ClauseKind)>) -> Result<Problem> {
        cap("search host dimension", dim, MAX_ENUM_DIM)?;
        let mut seen = BTreeSet::new();
        let mut forbidden = Vec::new();
        for (pattern, kind) in &targets {
            for copy in enumerate_copies(pattern, dim, false)? {
                let cells: Vec<(u32, Color)> = copy.iter().filter_map(|&(z, c)| c.map(|c| (z, c))).collect();
                if seen.insert(cells.clone()) {
                    forbidden.push(Forbidden { cells, kind: *kind });
                }
            }
        }
        Ok(Problem { dim, targets, forbidden })
    }

    /// Colored copy of `p`, blue `Q_n` or red `Q_n`.
    pub fn erdos_hajnal(p: &ColoredPoset, n: usize, dim: usize) -> Result<Problem> {
        let cube = Poset::boolean_lattice(n)?;
        Problem::new(
            dim,
            vec![
                (p.clone(), ClauseKind::PatternCopy),
                (ColoredPoset::monochromatic(cube.clone(), Color::Blue), ClauseKind::BlueCube),
                (ColoredPoset::monochromatic(cube, Color::Red), ClauseKind::RedCube),
            ],
        )
    }

    /// Blue `p1` or red `p2`.
    pub fn ramsey(p1: &Poset, p2: &Poset, dim: usize) -> Result<Problem> {
        Problem::new(
            dim,
            vec![
                (ColoredPoset::monochromatic(p1.clone(), Color::Blue), ClauseKind::PatternCopy),
                (ColoredPoset::monochromatic(p2.clone(), Color::Red), ClauseKind::PatternCopy),
            ],
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn targets(&self) -> &[(ColoredPoset, ClauseKind)] {
        &self.targets
    }

    pub fn forbidden(&self) -> &[Forbidden] {
        &self.forbidden
    }

    /// Whether swapping both colors maps the target set onto itself up to
    /// isomorphism, which makes the color swap a symmetry of the search.
    pub fn is_swap_invariant(&self) -> bool {
        let mut used = vec![false; self.targets.len()];
        self.targets.iter().all(|(t, _)| {
            let s = t.swapped();
            match (0..self.targets.len()).find(|&j| !used[j] && self.targets[j].0.is_isomorphic(&s)) {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }

    /// Whether `coloring` contains none of the targets.
    pub fn is_avoided_by(&self, coloring: &LatticeColoring) -> Result<bool> {
        if coloring.dim() != self.dim {
            return Err(invalid("coloring dimension does not match the problem"));
        }
        for (t, _) in &self.targets {
            if find_colored_copy(t, coloring)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub use_symmetry: bool,
    pub use_color_swap: bool,
    /// Worker threads; 0 and 1 both mean single-threaded.
    pub jobs: usize,
}

impl SearchOptions {
    pub fn symmetric() -> SearchOptions {
        SearchOptions { use_symmetry: true, ..SearchOptions::default() }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes_pattern: u64,
    pub prunes_mono: u64,
    pub prunes_symmetry: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.nodes += o.nodes;
        self.prunes_pattern += o.prunes_pattern;
        self.prunes_mono += o.prunes_mono;
        self.prunes_symmetry += o.prunes_symmetry;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    AllContain,
    Witness,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CertificateKind::AllContain => "AllContain",
            CertificateKind::Witness => "Witness",
        })
    }
}

/// Outcome of an exhaustive search.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub dim: usize,
    pub witness: Option<LatticeColoring>,
    pub stats: SearchStats,
    pub wall: Duration,
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        if self.witness.is_some() {
            CertificateKind::Witness
        } else {
            CertificateKind::AllContain
        }
    }
}

impl PartialEq for Certificate {
    /// Wall time is not part of a certificate's identity.
    fn eq(&self, other: &Certificate) -> bool {
        self.dim == other.dim && self.witness == other.witness && self.stats == other.stats
    }
}

impl fmt::Display for Certificate {
    /// Text block: kind, statistics, and the witness in coloring file format.
    /// Timing is left out so the block is reproducible.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind())?;
        writeln!(f, "N: {}", self.dim)?;
        writeln!(f, "nodes: {}", self.stats.nodes)?;
        writeln!(f, "prunes_pattern: {}", self.stats.prunes_pattern)?;
        writeln!(f, "prunes_mono: {}", self.stats.prunes_mono)?;
        writeln!(f, "prunes_symmetry: {}", self.stats.prunes_symmetry)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness:")?;
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// Search state over assignment positions; bit `j` of an assignment is the
/// color (1 = blue) of the `j`-th vertex in `(popcount, code)` order.
struct Engine {
    order: Vec<u32>,
    /// Forbidden `(mask, blue)` pairs keyed by their last position.
    by_trigger: Vec<Vec<(u64, u64, ClauseKind)>>,
    /// For each group element: position read at each position, and whether
    /// colors are swapped.
    group: Vec<(Vec<u8>, bool)>,
}

impl Engine {
    fn new(problem: &Problem, opts: SearchOptions) -> Result<Engine> {
        let dim = problem.dim;
        cap("exhaustive search dimension", dim, MAX_SEARCH_DIM)?;
        if opts.use_color_swap && !problem.is_swap_invariant() {
            return Err(invalid("color swap is only sound for targets closed under swapping colors"));
        }
        let order = codes_by_rank(dim);
        let mut pos_of = vec![0usize; order.len()];
        for (j, &z) in order.iter().enumerate() {
            pos_of[z as usize] = j;
        }
        let mut by_trigger = vec![Vec::new(); order.len()];
        for f in &problem.forbidden {
            let (mut mask, mut blue, mut last) = (0u64, 0u64, 0usize);
            for &(z, c) in &f.cells {
                let j = pos_of[z as usize];
                mask |= 1 << j;
                if c.is_blue() {
                    blue |= 1 << j;
                }
                last = last.max(j);
            }
            by_trigger[last].push((mask, blue, f.kind));
        }
        let mut group = Vec::new();
        if opts.use_symmetry || opts.use_color_swap {
            let perms = if opts.use_symmetry { permutations(dim) } else { vec![(0..dim).collect()] };
            for perm in perms {
                // inverse[i]: the element sent to i.
                let mut inverse = vec![0usize; dim];
                for (i, &p) in perm.iter().enumerate() {
                    inverse[p] = i;
                }
                let read: Vec<u8> = order
                    .iter()
                    .map(|&z| {
                        let pre = (0..dim).filter(|&i| z >> i & 1 == 1).fold(0u32, |m, i| m | 1 << inverse[i]);
                        pos_of[pre as usize] as u8
                    })
                    .collect();
                let identity = read.iter().enumerate().all(|(j, &q)| j == usize::from(q));
                if !identity {
                    group.push((read.clone(), false));
                }
                if opts.use_color_swap {
                    group.push((read, true));
                }
            }
        }
        Ok(Engine { order, by_trigger, group })
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    /// Whether no group element maps the prefix `0..=pos` of `a` to
    /// something provably smaller.
    fn is_lex_leader(&self, pos: usize, a: u64) -> bool {
        'elements: for (read, swap) in &self.group {
            for (j, &q) in read.iter().enumerate().take(pos + 1) {
                let q = usize::from(q);
                if q > pos {
                    continue 'elements;
                }
                let image = (a >> q & 1) ^ u64::from(*swap);
                let own = a >> j & 1;
                if image != own {
                    if image < own {
                        return false;
                    }
                    continue 'elements;
                }
            }
        }
        true
    }

    /// Extensions of `a` at `pos` that survive pruning, red first.
    fn children(&self, pos: usize, a: u64, symmetry: bool, stats: &mut SearchStats) -> [Option<u64>; 2] {
        let mut out = [None; 2];
        for (bit, slot) in out.iter_mut().enumerate() {
            let child = a | (bit as u64) << pos;
            stats.nodes += 1;
            if let Some(&(_, _, kind)) = self.by_trigger[pos].iter().find(|&&(m, b, _)| child & m == b) {
                match kind {
                    ClauseKind::PatternCopy => stats.prunes_pattern += 1,
                    _ => stats.prunes_mono += 1,
                }
                continue;
            }
            if symmetry && !self.is_lex_leader(pos, child) {
                stats.prunes_symmetry += 1;
                continue;
            }
            *slot = Some(child);
        }
        out
    }

    fn first_leaf(&self, pos: usize, a: u64, stats: &mut SearchStats) -> Option<u64> {
        if pos == self.len() {
            return Some(a);
        }
        for child in self.children(pos, a, !self.group.is_empty(), stats).into_iter().flatten() {
            if let Some(w) = self.first_leaf(pos + 1, child, stats) {
                return Some(w);
            }
        }
        None
    }

    fn count_leaves(&self, pos: usize, a: u64, stats: &mut SearchStats) -> u64 {
        if pos == self.len() {
            return 1;
        }
        self.children(pos, a, false, stats)
            .into_iter()
            .flatten()
            .map(|c| self.count_leaves(pos + 1, c, stats))
            .sum()
    }

    /// Surviving assignments of the first `depth` positions, in search order.
    fn frontier(&self, depth: usize, stats: &mut SearchStats) -> Vec<u64> {
        let mut level = vec![0u64];
        for pos in 0..depth {
            level = level
                .into_iter()
                .flat_map(|a| self.children(pos, a, !self.group.is_empty(), stats))
                .flatten()
                .collect();
        }
        level
    }

    fn to_coloring(&self, a: u64) -> LatticeColoring {
        let dim = self.order.len().trailing_zeros() as usize;
        let mut c = LatticeColoring::uniform(dim, Color::Red).expect("dimension already capped");
        for (j, &z) in self.order.iter().enumerate() {
            if a >> j & 1 == 1 {
                c.set(z, Color::Blue);
            }
        }
        c
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for i in 0..k {
            if !prefix.contains(&i) {
                prefix.push(i);
                go(prefix, k, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), k, &mut out);
    out
}

/// Per-branch outcome: stats and the packed witness, if any.
type BranchResult = (SearchStats, Option<u64>);

/// Decides whether every coloring of `Q_N` contains a target.
///
/// The first [`SPLIT_DEPTH`] positions are expanded breadth-first; the
/// resulting branches are searched (in parallel with `jobs > 1`) and the
/// witness of the first successful branch in branch order is reported, with
/// statistics summed over branches up to and including it. The certificate
/// therefore does not depend on `jobs`.
pub fn solve(problem: &Problem, opts: SearchOptions) -> Result<Certificate> {
    let start = Instant::now();
    let engine = Engine::new(problem, opts)?;
    let depth = SPLIT_DEPTH.min(engine.len());
    let mut stats = SearchStats::default();
    let branches = engine.frontier(depth, &mut stats);

    let results: Vec<Mutex<Option<BranchResult>>> = branches.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::Relaxed);
        if i >= branches.len() || i > best.load(Ordering::Relaxed) {
            break;
        }
        let mut local = SearchStats::default();
        let found = engine.first_leaf(depth, branches[i], &mut local);
        if found.is_some() {
            best.fetch_min(i, Ordering::Relaxed);
        }
        *results[i].lock().expect("no worker panics while holding the lock") = Some((local, found));
    };
    let jobs = opts.jobs.max(1);
    if jobs == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(work);
            }
        });
    }

    let mut witness = None;
    for slot in results {
        let (local, found) = slot.into_inner().expect("no worker panicked").ok_or_else(|| {
            Error::Inconsistency("a branch before the first witness was never searched".into())
        })?;
        stats.add(&local);
        if let Some(a) = found {
            witness = Some(engine.to_coloring(a));
            break;
        }
    }
    if let Some(w) = &witness {
        if !problem.is_avoided_by(w)? {
            return Err(Error::Inconsistency(format!("search produced a non-witness {w:?}")));
        }
    }
    Ok(Certificate { dim: problem.dim, witness, stats, wall: start.elapsed() })
}

/// [`solve`] for the Erdős–Hajnal targets of `p` and `Q_n`.
pub fn exhaustive_classify(p: &ColoredPoset, n: usize, dim: usize, opts: SearchOptions) -> Result<Certificate> {
    cap("exhaustive search dimension", dim, MAX_SEARCH_DIM)?;
    solve(&Problem::erdos_hajnal(p, n, dim)?, opts)
}

/// Number of colorings avoiding every target, without symmetry reduction.
pub fn count_avoiding(problem: &Problem) -> Result<u64> {
    let engine = Engine::new(problem, SearchOptions::default())?;
    Ok(engine.count_leaves(0, 0, &mut SearchStats::default()))
}

/// Result of a number computation.
#[derive(Debug, Clone, PartialEq)]
pub enum NumberResult {
    /// Every coloring of `Q_value` contains a target; `witness_below`
    /// avoids them in `Q_{value-1}` (absent when `value = 0`).
    Exact { value: usize, witness_below: Option<LatticeColoring> },
    /// Larger than `n_max`; `witness` avoids the targets in `Q_{n_max}`.
    Above { n_max: usize, witness: LatticeColoring },
}

impl NumberResult {
    pub fn value(&self) -> Option<usize> {
        match self {
            NumberResult::Exact { value, .. } => Some(*value),
            NumberResult::Above { .. } => None,
        }
    }
}

impl fmt::Display for NumberResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumberResult::Exact { value, witness_below } => {
                writeln!(f, "value: {value}")?;
                if let Some(w) = witness_below {
                    writeln!(f, "witness at N={}:", w.dim())?;
                    write!(f, "{w}")?;
                }
                Ok(())
            }
            NumberResult::Above { n_max, witness } => {
                writeln!(f, "value: > {n_max}")?;
                writeln!(f, "witness at N={n_max}:")?;
                write!(f, "{witness}")
            }
        }
    }
}

/// Searches `N = 0, 1, …, n_max` for the first dimension where every
/// coloring contains a target. Returns the result and the certificate of
/// every dimension tried.
pub fn least_forcing_dimension(
    n_max: usize,
    opts: SearchOptions,
    mut problem_at: impl FnMut(usize) -> Result<Problem>,
) -> Result<(NumberResult, Vec<Certificate>)> {
    cap("exhaustive search dimension", n_max, MAX_SEARCH_DIM)?;
    let mut trail = Vec::new();
    let mut below = None;
    for dim in 0..=n_max {
        let cert = solve(&problem_at(dim)?, opts)?;
        let witness = cert.witness.clone();
        trail.push(cert);
        match witness {
            None => return Ok((NumberResult::Exact { value: dim, witness_below: below }, trail)),
            Some(w) => below = Some(w),
        }
    }
    let witness = below.expect("n_max + 1 dimensions were searched");
    Ok((NumberResult::Above { n_max, witness }, trail))
}

/// The least `N` such that every coloring of `Q_N` has a colored copy of `p`
/// or a monochromatic `Q_n`.
pub fn eh_number(p: &ColoredPoset, n: usize, n_max: usize, opts: SearchOptions) -> Result<(NumberResult, Vec<Certificate>)> {
    least_forcing_dimension(n_max, opts, |dim| Problem::erdos_hajnal(p, n, dim))
}

/// The least `N` such that every coloring of `Q_N` has a blue `p1` or a red `p2`.
pub fn ramsey_number(p1: &Poset, p2: &Poset, n_max: usize, opts: SearchOptions) -> Result<(NumberResult, Vec<Certificate>)> {
    least_forcing_dimension(n_max, opts, |dim| Problem::ramsey(p1, p2, dim))
}

/// A CNF clause with the constraint it encodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    /// DIMACS literals; variable `z + 1` is true when vertex `z` is blue.
    pub literals: Vec<i32>,
    pub kind: ClauseKind,
}

/// Satisfying assignments are exactly the colorings avoiding every target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfInstance {
    pub num_vars: usize,
    pub clauses: Vec<Clause>,
}

impl CnfInstance {
    pub fn from_problem(problem: &Problem) -> CnfInstance {
        let clauses = problem
            .forbidden
            .iter()
            .map(|f| Clause {
                literals: f
                    .cells
                    .iter()
                    .map(|&(z, c)| if c.is_blue() { -(z as i32 + 1) } else { z as i32 + 1 })
                    .collect(),
                kind: f.kind,
            })
            .collect();
        CnfInstance { num_vars: 1 << problem.dim, clauses }
    }

    pub fn count(&self, kind: ClauseKind) -> usize {
        self.clauses.iter().filter(|c| c.kind == kind).count()
    }

    /// DIMACS text; each run of clauses of one kind is preceded by a
    /// `c <kind>` comment line.
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        let mut last = None;
        for c in &self.clauses {
            if last != Some(c.kind) {
                out.push_str(&format!("c {}\n", c.kind.tag()));
                last = Some(c.kind);
            }
            for l in &c.literals {
                out.push_str(&l.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    pub fn is_satisfied_by(&self, coloring: &LatticeColoring) -> bool {
        self.clauses.iter().all(|c| {
            c.literals.iter().any(|&l| coloring.is_blue(l.unsigned_abs() - 1) == (l > 0))
        })
    }

    /// Number of satisfying assignments, by enumerating all of them.
    pub fn count_solutions(&self) -> Result<u64> {
        cap("variables for model counting", self.num_vars, MAX_COUNT_VARS)?;
        let masks: Vec<(u64, u64)> = self
            .clauses
            .iter()
            .map(|c| {
                c.literals.iter().fold((0u64, 0u64), |(m, f), &l| {
                    let bit = 1u64 << (l.unsigned_abs() - 1);
                    (m | bit, if l < 0 { f | bit } else { f })
                })
            })
            .collect();
        // A clause is falsified when every variable takes its forbidden value.
        Ok((0..1u64 << self.num_vars)
            .filter(|&a| masks.iter().all(|&(m, f)| a & m != f))
            .count() as u64)
    }
}

/// CNF for the Erdős–Hajnal targets of `p` and `Q_n` in `Q_N`.
pub fn export_cnf(p: &ColoredPoset, n: usize, dim: usize) -> Result<CnfInstance> {
    Ok(CnfInstance::from_problem(&Problem::erdos_hajnal(p, n, dim)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::layered_coloring;
    use crate::finder::{classify, Verdict};
    use crate::poset::builtin_pattern;

    fn pat(s: &str) -> ColoredPoset {
        builtin_pattern(s).unwrap()
    }

    /// Avoiding colorings counted by classifying every coloring directly.
    fn oracle_avoid_count(p: &ColoredPoset, n: usize, dim: usize) -> u64 {
        (0..1u64 << (1 << dim))
            .filter(|&m| {
                let c = LatticeColoring::from_mask(dim, m).unwrap();
                classify(&c, p, n).unwrap() == Verdict::Avoids
            })
            .count() as u64
    }

    #[test]
    fn chain_examples() {
        let rbr3 = pat("alt-chain-rbr:3");
        let at4 = exhaustive_classify(&rbr3, 2, 4, SearchOptions::symmetric()).unwrap();
        assert_eq!(at4.kind(), CertificateKind::AllContain);
        let at3 = exhaustive_classify(&rbr3, 2, 3, SearchOptions::symmetric()).unwrap();
        let w = at3.witness.unwrap();
        assert_eq!(classify(&w, &rbr3, 2).unwrap(), Verdict::Avoids);
    }

    #[test]
    fn counts_match_classify_oracle() {
        for (p, n, dim) in [("antichain:b1r1", 1, 2), ("alt-chain-rbr:2", 1, 2), ("alt-chain-rbr:2", 1, 1), ("q2:rrbb", 1, 2)] {
            let p = pat(p);
            let problem = Problem::erdos_hajnal(&p, n, dim).unwrap();
            let want = oracle_avoid_count(&p, n, dim);
            assert_eq!(count_avoiding(&problem).unwrap(), want);
            assert_eq!(CnfInstance::from_problem(&problem).count_solutions().unwrap(), want);
        }
        let p = pat("alt-chain-rbr:3");
        let problem = Problem::erdos_hajnal(&p, 2, 3).unwrap();
        assert_eq!(count_avoiding(&problem).unwrap(), oracle_avoid_count(&p, 2, 3));
    }

    #[test]
    fn cnf_example_counts() {
        let cnf = export_cnf(&pat("antichain:b1r1"), 1, 2).unwrap();
        assert_eq!(cnf.num_vars, 4);
        assert_eq!(cnf.count(ClauseKind::PatternCopy), 2);
        assert_eq!(cnf.count(ClauseKind::BlueCube) + cnf.count(ClauseKind::RedCube), 10);
        let text = cnf.to_dimacs();
        assert!(text.starts_with("p cnf 4 12\nc pattern-copy\n"));
        assert_eq!(text.lines().filter(|l| l.ends_with(" 0")).count(), 12);

        let tiny = export_cnf(&pat("alt-chain-rbr:2"), 1, 1).unwrap();
        assert!(tiny.count_solutions().unwrap() >= 1);
        let w: LatticeColoring = "N=1\nbr".parse().unwrap();
        assert!(tiny.is_satisfied_by(&w));
    }

    #[test]
    fn symmetry_and_jobs_do_not_change_results() {
        let p = pat("alt-chain-rbr:3");
        for dim in 2..=4 {
            let plain = exhaustive_classify(&p, 2, dim, SearchOptions::default()).unwrap();
            let sym = exhaustive_classify(&p, 2, dim, SearchOptions::symmetric()).unwrap();
            assert_eq!(plain.kind(), sym.kind());
            let par = exhaustive_classify(&p, 2, dim, SearchOptions { use_symmetry: true, jobs: 4, ..Default::default() }).unwrap();
            assert_eq!(sym, par);
        }
    }

    #[test]
    fn color_swap_requires_symmetric_targets() {
        let opts = SearchOptions { use_symmetry: true, use_color_swap: true, jobs: 1 };
        assert!(exhaustive_classify(&pat("alt-chain-rbr:3"), 2, 3, opts).is_err());
        let sym = pat("antichain:b1r1");
        let swapped = exhaustive_classify(&sym, 2, 3, opts).unwrap();
        assert_eq!(swapped.kind(), CertificateKind::Witness);
        assert_eq!(exhaustive_classify(&sym, 2, 4, opts).unwrap().kind(), CertificateKind::AllContain);
    }

    #[test]
    fn lex_leader_witness_is_least_in_orbit() {
        let cert = exhaustive_classify(&pat("alt-chain-rbr:3"), 2, 3, SearchOptions::symmetric()).unwrap();
        let w = cert.witness.unwrap();
        let key = |c: &LatticeColoring| codes_by_rank(3).iter().map(|&z| c.is_blue(z)).collect::<Vec<_>>();
        for perm in permutations(3) {
            assert!(key(&w) <= key(&w.permuted(&perm)));
        }
    }

    #[test]
    fn small_ramsey_numbers() {
        let c2 = Poset::chain(2).unwrap();
        let (r, trail) = ramsey_number(&c2, &c2, 5, SearchOptions::symmetric()).unwrap();
        assert_eq!(r.value(), Some(2));
        assert_eq!(trail.len(), 3);
        let one = Poset::chain(1).unwrap();
        assert_eq!(ramsey_number(&one, &one, 3, SearchOptions::default()).unwrap().0.value(), Some(0));
    }

    #[test]
    fn number_reports_upper_interval() {
        let (r, _) = eh_number(&pat("alt-chain-rbr:3"), 2, 2, SearchOptions::symmetric()).unwrap();
        match r {
            NumberResult::Above { n_max, witness } => {
                assert_eq!(n_max, 2);
                assert_eq!(witness.dim(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn certificate_text() {
        let cert = exhaustive_classify(&pat("alt-chain-rbr:3"), 2, 3, SearchOptions::symmetric()).unwrap();
        let text = cert.to_string();
        assert!(text.starts_with("kind: Witness\nN: 3\nnodes: "));
        assert!(text.contains("witness:\nN=3\n"));
        assert!(Problem::erdos_hajnal(&pat("q2"), 2, 3).is_ok());
        assert!(exhaustive_classify(&pat("q2"), 2, 6, SearchOptions::default()).is_err());
        // Layered witness from the lower-bound construction also avoids the targets.
        let problem = Problem::erdos_hajnal(&pat("alt-chain-rbr:3"), 2, 3).unwrap();
        let layered = layered_coloring(3, &[Color::Red, Color::Red, Color::Blue, Color::Blue]).unwrap();
        assert!(problem.is_avoided_by(&layered).unwrap());
    }
}

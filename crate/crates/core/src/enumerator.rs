//! Depth-first enumeration of the semigroup tree with pruning at a
//! denominator bound, producing exact multiplicity tallies.
//!
//! The tree is the Cayley graph of the even-length semigroup with respect to
//! the pair generators, rooted at the identity (which itself belongs to the
//! tree only, never to the semigroup). A child w·g is expanded exactly when
//! its bottom-right entry stays within the target bound; since that entry
//! strictly grows under every generator, the truncated tree is finite and
//! every semigroup element with denominator ≤ N appears exactly once.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use crate::equidist::ResidueHistogram;
use crate::error::{Error, Result};
use crate::mat::{mul_add, Alphabet, Mat2};

/// Inputs of one enumeration run.
#[derive(Clone, Debug)]
pub struct EnumConfig {
    /// Partial quotients range over 1..=alphabet_bound.
    pub alphabet_bound: u32,
    /// Denominator cutoff N; nodes with d > N are pruned.
    pub target_bound: u64,
    /// Worker threads; the result never depends on this.
    pub worker_count: usize,
    /// Collect residue counts for moduli 1..=this (0 skips collection).
    pub residue_moduli_max: u32,
}

impl EnumConfig {
    pub fn new(alphabet_bound: u32, target_bound: u64) -> Self {
        EnumConfig {
            alphabet_bound,
            target_bound,
            worker_count: 1,
            residue_moduli_max: 0,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.worker_count = workers;
        self
    }

    pub fn with_residue_moduli(mut self, max_modulus: u32) -> Self {
        self.residue_moduli_max = max_modulus;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.alphabet_bound < 1 {
            return Err(Error::Argument("alphabet bound must be at least 1".into()));
        }
        if self.target_bound < 1 {
            return Err(Error::Argument("target bound must be at least 1".into()));
        }
        if self.worker_count < 1 {
            return Err(Error::Argument("worker count must be at least 1".into()));
        }
        if self.residue_moduli_max as u64 > self.target_bound {
            return Err(Error::Argument(format!(
                "residue moduli bound {} exceeds target bound {}",
                self.residue_moduli_max, self.target_bound
            )));
        }
        Ok(())
    }
}

/// Exact multiplicities and cumulative ball counts for denominators up to N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TallyTable {
    /// mult[n] = number of semigroup elements with denominator n; indices
    /// 0 and 1 are always zero.
    mult: Vec<u64>,
    /// ball[n] = Σ_{k ≤ n} mult[k].
    ball: Vec<u64>,
    total_nodes: u64,
}

impl TallyTable {
    /// Rebuilds a table from per-denominator counts, where `mult_by_n[n]` is
    /// the multiplicity of n and the slice covers 0..=N.
    pub fn from_mult(mult_by_n: Vec<u64>) -> Result<Self> {
        if mult_by_n.len() < 2 {
            return Err(Error::Data("multiplicity table must cover n up to at least 1".into()));
        }
        if mult_by_n[0] != 0 || mult_by_n[1] != 0 {
            return Err(Error::Data("no denominator is ever below 2".into()));
        }
        Ok(Self::from_counts(mult_by_n))
    }

    fn from_counts(mult: Vec<u64>) -> Self {
        let mut ball = vec![0u64; mult.len()];
        let mut running = 0u64;
        for (n, &m) in mult.iter().enumerate() {
            running += m;
            ball[n] = running;
        }
        TallyTable { mult, ball, total_nodes: running }
    }

    /// The enumeration cutoff N.
    pub fn bound(&self) -> u64 {
        (self.mult.len() - 1) as u64
    }

    /// Tree nodes visited, which equals the ball count at the cutoff.
    pub fn total_nodes(&self) -> u64 {
        self.total_nodes
    }

    /// mult(n): elements whose denominator is exactly n, for 2 ≤ n ≤ N.
    pub fn sphere_count(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self.mult[n as usize])
    }

    /// |B_n|: elements with denominator at most n, for 2 ≤ n ≤ N.
    pub fn ball(&self, n: u64) -> Result<u64> {
        self.check(n)?;
        Ok(self.ball[n as usize])
    }

    /// (n, mult, ball) for every n in 2..=N.
    pub fn rows(&self) -> impl Iterator<Item = (u64, u64, u64)> + '_ {
        (2..=self.bound()).map(move |n| (n, self.mult[n as usize], self.ball[n as usize]))
    }

    fn check(&self, n: u64) -> Result<()> {
        if n < 2 || n > self.bound() {
            return Err(Error::Argument(format!(
                "denominator {n} outside tally range 2..={}",
                self.bound()
            )));
        }
        Ok(())
    }
}

/// Worker-private tally state, merged additively at the end.
struct Accum {
    mult: Vec<u64>,
    nodes: u64,
    hist: Option<ResidueHistogram>,
}

impl Accum {
    fn new(bound: u64, moduli: u32) -> Self {
        Accum {
            mult: vec![0u64; bound as usize + 1],
            nodes: 0,
            hist: (moduli > 0).then(|| ResidueHistogram::new(moduli)),
        }
    }

    #[inline]
    fn record(&mut self, d: u64) {
        self.mult[d as usize] += 1;
        self.nodes += 1;
        if let Some(h) = &mut self.hist {
            h.record(d);
        }
    }

    fn merge(&mut self, other: Accum) {
        for (x, y) in self.mult.iter_mut().zip(&other.mult) {
            *x += *y;
        }
        self.nodes += other.nodes;
        match (&mut self.hist, &other.hist) {
            (Some(mine), Some(theirs)) => mine.merge(theirs),
            (None, None) => {}
            _ => unreachable!("worker histograms share one configuration"),
        }
    }
}

/// The child w·g when its bottom-right entry stays within `bound`.
///
/// The d entry is formed first so pruned candidates cost two multiplications;
/// surviving children equal `w.mul(g)` entry for entry.
#[inline]
fn bounded_child(w: &Mat2, g: &Mat2, bound: u64) -> Result<Option<Mat2>> {
    let d = mul_add(w.c, g.b, w.d, g.d)?;
    if d > bound {
        return Ok(None);
    }
    Ok(Some(Mat2 {
        a: mul_add(w.a, g.a, w.b, g.c)?,
        b: mul_add(w.a, g.b, w.b, g.d)?,
        c: mul_add(w.c, g.a, w.d, g.c)?,
        d,
    }))
}

/// Iterative depth-first expansion below `root`, invoking `visit` on every
/// in-bound descendant exactly once. `root` itself is not visited.
fn dfs<V: FnMut(&Mat2)>(root: &Mat2, pairs: &[Mat2], bound: u64, visit: &mut V) -> Result<()> {
    let mut stack: Vec<Mat2> = vec![*root];
    while let Some(w) = stack.pop() {
        for g in pairs {
            if let Some(child) = bounded_child(&w, g, bound)? {
                visit(&child);
                stack.push(child);
            }
        }
    }
    Ok(())
}

/// Sequential full-matrix traversal of the truncated tree. Reference path
/// for validation: duplicate detection, invariant sweeps, and cross-checks
/// against the parallel tally.
pub fn walk<V: FnMut(&Mat2)>(alphabet: &Alphabet, bound: u64, mut visit: V) -> Result<()> {
    dfs(&Mat2::IDENTITY, alphabet.gen_pairs(), bound, &mut visit)
}

/// Enumerates every semigroup element with denominator ≤ N and tallies
/// multiplicities, plus residue counts when requested.
///
/// A breadth-first phase grows the frontier until it holds at least four
/// subtrees per worker; workers then drain the frontier through a shared
/// cursor, each tallying into private storage. Merging is elementwise
/// addition, so the result is a pure function of the config regardless of
/// worker count or scheduling.
pub fn enumerate(config: &EnumConfig) -> Result<(TallyTable, Option<ResidueHistogram>)> {
    config.validate()?;
    let alphabet = Alphabet::new(config.alphabet_bound)?;
    let pairs = alphabet.gen_pairs();
    let bound = config.target_bound;
    let workers = config.worker_count;

    let mut seed = Accum::new(bound, config.residue_moduli_max);
    let mut frontier = vec![Mat2::IDENTITY];
    let target = 4 * workers;
    while !frontier.is_empty() && frontier.len() < target {
        let mut next = Vec::with_capacity(frontier.len() * pairs.len());
        for w in &frontier {
            for g in pairs {
                if let Some(child) = bounded_child(w, g, bound)? {
                    seed.record(child.d);
                    next.push(child);
                }
            }
        }
        frontier = next;
    }

    let cursor = AtomicUsize::new(0);
    let locals: Vec<Result<Accum>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| -> Result<Accum> {
                    let mut local = Accum::new(bound, config.residue_moduli_max);
                    loop {
                        let k = cursor.fetch_add(1, Ordering::Relaxed);
                        let Some(subroot) = frontier.get(k) else {
                            break;
                        };
                        dfs(subroot, pairs, bound, &mut |w: &Mat2| local.record(w.d))?;
                    }
                    Ok(local)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    });

    for local in locals {
        seed.merge(local?);
    }
    let Accum { mult, nodes, hist } = seed;
    let table = TallyTable::from_counts(mult);
    debug_assert_eq!(table.total_nodes(), nodes);
    Ok((table, hist))
}

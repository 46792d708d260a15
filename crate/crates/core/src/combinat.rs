//! Partitions, compositions, refinement, descent compositions and Kostka numbers.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// An integer partition, stored without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

/// A composition: an ordered sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Composition(Vec<usize>);

impl Partition {
    /// Builds a partition from weakly decreasing parts. Zero parts are dropped.
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts: Vec<usize> = parts.into();
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(parts: impl Into<Vec<usize>>) -> Self {
        let mut parts: Vec<usize> = parts.into();
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Row `i` (0-based), zero beyond the last part.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width)
            .map(|j| self.0.iter().filter(|&&p| p > j).count())
            .collect();
        Partition(parts)
    }

    /// Hook length of the cell in row `i`, column `j` (both 0-based).
    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.0[i] - j - 1;
        let leg = self.0[i + 1..].iter().filter(|&&p| p > j).count();
        arm + leg + 1
    }

    /// All `(row, col, hook)` triples.
    pub fn hooks(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(move |(i, &len)| (0..len).map(move |j| (i, j, self.hook(i, j))))
    }

    /// Dominance order: every prefix sum of `self` is at least the matching
    /// prefix sum of `other`. Partitions of different weight are incomparable.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.weight() != other.weight() {
            return false;
        }
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 0..n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    pub fn as_composition(&self) -> Composition {
        Composition(self.0.clone())
    }
}

impl Composition {
    /// Builds a composition; every part must be positive.
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let parts: Vec<usize> = parts.into();
        if parts.contains(&0) {
            return Err(Error::Parse(format!(
                "composition {parts:?} has a zero part"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// The partition with the same multiset of parts.
    pub fn sorted(&self) -> Partition {
        Partition::from_unsorted(self.0.clone())
    }

    /// Partial sums, excluding the total: the descent set of the composition.
    pub fn partial_sums(&self) -> Vec<usize> {
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.0.len().saturating_sub(1));
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            out.push(acc);
        }
        out
    }

    /// The composition of `n` whose partial sums are exactly `set` (sorted, in `1..n`).
    pub fn from_descent_set(n: usize, set: &[usize]) -> Composition {
        if n == 0 {
            return Composition::empty();
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for &d in set {
            parts.push(d - prev);
            prev = d;
        }
        parts.push(n - prev);
        Composition(parts)
    }

    /// Extends a descent composition by one more letter: a new part when the
    /// step is a descent, otherwise the last part grows.
    pub(crate) fn push_step(&self, descent: bool) -> Composition {
        let mut parts = self.0.clone();
        match parts.last_mut() {
            Some(last) if !descent => *last += 1,
            _ => parts.push(1),
        }
        Composition(parts)
    }
}

/// `true` iff `alpha` refines `beta`, i.e. `beta` is obtained by summing
/// consecutive blocks of `alpha`.
pub fn refines(alpha: &Composition, beta: &Composition) -> bool {
    if alpha.weight() != beta.weight() {
        return false;
    }
    let fine = alpha.partial_sums();
    beta.partial_sums()
        .iter()
        .all(|s| fine.binary_search(s).is_ok())
}

/// All compositions refining `beta`.
pub fn refinements(beta: &Composition) -> Vec<Composition> {
    let n = beta.weight();
    let fixed = beta.partial_sums();
    let free: Vec<usize> = (1..n).filter(|i| fixed.binary_search(i).is_err()).collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for mask in 0u64..(1u64 << free.len()) {
        let mut set = fixed.clone();
        set.extend(
            free.iter()
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, &i)| i),
        );
        set.sort_unstable();
        out.push(Composition::from_descent_set(n, &set));
    }
    out
}

/// All compositions of `n`.
pub fn compositions_of(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    refinements(&Composition(vec![n]))
}

/// Descent composition of a label sequence: partial sums mark the positions
/// `i` with `labels[i] > labels[i+1]` (1-based).
pub fn descent_composition<T: Ord>(labels: &[T]) -> Result<Composition> {
    if labels.is_empty() {
        return Err(Error::EmptyChain);
    }
    let set: Vec<usize> = labels
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect();
    Ok(Composition::from_descent_set(labels.len(), &set))
}

/// Like [`descent_composition`] but maps the empty sequence to the empty composition.
pub(crate) fn descent_composition_or_unit<T: Ord>(labels: &[T]) -> Composition {
    descent_composition(labels).unwrap_or_default()
}

/// All partitions of `n` with parts at most `max_part`, in decreasing lexicographic order.
pub fn partitions_of(n: usize, max_part: Option<usize>) -> Vec<Partition> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for p in (1..=max.min(n)).rev() {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_part.unwrap_or(n), &mut Vec::new(), &mut out);
    out
}

type KostkaKey = (Vec<usize>, Vec<usize>);

fn kostka_cache() -> &'static Mutex<HashMap<KostkaKey, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<KostkaKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Number of semistandard tableaux of shape `shape` and content `content`.
///
/// Enumerates tableaux by peeling off the horizontal strip filled with the
/// largest letter, memoized on `(shape, content)`. Content is any sequence of
/// non-negative multiplicities; unequal weights give 0.
pub fn kostka(shape: &Partition, content: &[usize]) -> u64 {
    if shape.weight() != content.iter().sum::<usize>() {
        return 0;
    }
    let mut content = content.to_vec();
    while content.last() == Some(&0) {
        content.pop();
    }
    kostka_rec(shape.parts(), &content)
}

fn kostka_rec(shape: &[usize], content: &[usize]) -> u64 {
    let Some((&last, rest)) = content.split_last() else {
        return u64::from(shape.is_empty());
    };
    // a column-strict filling needs at most one row per letter
    if shape.len() > content.iter().filter(|&&c| c > 0).count() {
        return 0;
    }
    let key = (shape.to_vec(), content.to_vec());
    if let Some(&v) = kostka_cache().lock().unwrap().get(&key) {
        return v;
    }
    let mut total = 0;
    let mut inner = shape.to_vec();
    strips(shape, 0, last, &mut inner, &mut |nu| {
        let trimmed: Vec<usize> = nu.iter().copied().take_while(|&p| p > 0).collect();
        total += kostka_rec(&trimmed, rest);
    });
    kostka_cache().lock().unwrap().insert(key, total);
    total
}

/// Calls `f` on every `nu` with `shape / nu` a horizontal strip of `size` cells.
fn strips(
    shape: &[usize],
    row: usize,
    size: usize,
    nu: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if row == shape.len() {
        if size == 0 {
            f(nu);
        }
        return;
    }
    let floor = shape.get(row + 1).copied().unwrap_or(0);
    let max_take = (shape[row] - floor).min(size);
    for take in 0..=max_take {
        nu[row] = shape[row] - take;
        strips(shape, row + 1, size - take, nu, f);
    }
    nu[row] = shape[row];
}

fn parse_parts(s: &str) -> Result<Vec<usize>> {
    let s = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad part {p:?}: {e}")))
        })
        .collect()
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_parts(s)?)
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_parts(s)?)
    }
}

fn join(parts: &[usize]) -> String {
    parts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.0))
    }
}

//! Affine permutations of `W` in window notation and the core bijection.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::combinat::Partition;
use crate::error::{Error, Result};

/// A bijection `u: Z -> Z` with `u(i + n) = u(i) + n`, `n = k + 1`, stored by
/// its main window `u(1), .., u(n)`.
///
/// Entries `<= 0` are the "negative" ones throughout.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePermutation {
    k: usize,
    window: Vec<i64>,
}

impl AffinePermutation {
    /// Window of length `k + 1 >= 2` with distinct residues and sum `C(k+2, 2)`.
    pub fn new(window: impl Into<Vec<i64>>) -> Result<Self> {
        let window: Vec<i64> = window.into();
        if window.len() < 2 {
            return Err(Error::InvalidWindow(format!(
                "{window:?} needs at least two entries"
            )));
        }
        let n = window.len() as i64;
        let mut residues = vec![false; window.len()];
        for &v in &window {
            let r = v.rem_euclid(n) as usize;
            if residues[r] {
                return Err(Error::InvalidWindow(format!(
                    "{window:?} repeats a residue mod {n}"
                )));
            }
            residues[r] = true;
        }
        let sum: i64 = window.iter().sum();
        if sum != n * (n + 1) / 2 {
            return Err(Error::InvalidWindow(format!(
                "{window:?} sums to {sum}, expected {}",
                n * (n + 1) / 2
            )));
        }
        Ok(AffinePermutation {
            k: window.len() - 1,
            window,
        })
    }

    /// Like [`AffinePermutation::new`] but also checks the window length against `k`.
    pub fn with_k(k: usize, window: impl Into<Vec<i64>>) -> Result<Self> {
        let u = Self::new(window)?;
        if u.k != k {
            return Err(Error::KMismatch(k, u.k));
        }
        Ok(u)
    }

    pub(crate) fn from_window_unchecked(window: Vec<i64>) -> Self {
        AffinePermutation {
            k: window.len() - 1,
            window,
        }
    }

    pub fn identity(k: usize) -> Self {
        AffinePermutation {
            k,
            window: (1..=k as i64 + 1).collect(),
        }
    }

    /// The simple reflection `s_i`, `0 <= i <= k`.
    pub fn generator(k: usize, i: usize) -> Self {
        Self::identity(k).mul_generator(i)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> usize {
        self.k + 1
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `u(i)` for any integer `i`.
    pub fn eval(&self, i: i64) -> i64 {
        let n = self.window.len() as i64;
        let q = (i - 1).div_euclid(n);
        self.window[(i - 1 - q * n) as usize] + q * n
    }

    /// `u^{-1}(v)`.
    pub fn position_of(&self, v: i64) -> i64 {
        let n = self.window.len() as i64;
        let idx = self
            .window
            .iter()
            .position(|&x| (x - v).rem_euclid(n) == 0)
            .unwrap();
        idx as i64 + 1 + (v - self.window[idx])
    }

    pub fn inverse(&self) -> Self {
        let n = self.window.len() as i64;
        AffinePermutation {
            k: self.k,
            window: (1..=n).map(|v| self.position_of(v)).collect(),
        }
    }

    /// `(uv)(i) = u(v(i))`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::KMismatch(self.k, other.k));
        }
        Ok(AffinePermutation {
            k: self.k,
            window: other.window.iter().map(|&v| self.eval(v)).collect(),
        })
    }

    /// `u s_i`: exchanges the entries in positions `i` and `i + 1` (mod `n`).
    pub fn mul_generator(&self, i: usize) -> Self {
        let n = self.window.len();
        let mut w = self.window.clone();
        if i % n == 0 {
            let first = w[0];
            w[0] = w[n - 1] - n as i64;
            w[n - 1] = first + n as i64;
        } else {
            w.swap(i % n - 1, i % n);
        }
        AffinePermutation {
            k: self.k,
            window: w,
        }
    }

    /// Right multiplication by the affine transposition exchanging the
    /// positions congruent to `a` and `b` (`a != b mod n`).
    pub fn mul_transposition(&self, a: i64, b: i64) -> Self {
        let n = self.window.len() as i64;
        let (ua, ub) = (self.eval(a), self.eval(b));
        let mut w = self.window.clone();
        for (idx, slot) in w.iter_mut().enumerate() {
            let i = idx as i64 + 1;
            if (i - a).rem_euclid(n) == 0 {
                *slot = ub + (i - a);
            } else if (i - b).rem_euclid(n) == 0 {
                *slot = ua + (i - b);
            }
        }
        AffinePermutation {
            k: self.k,
            window: w,
        }
    }

    /// Number of pairs `i < j` with `1 <= i <= n` and `u(i) > u(j)`.
    pub fn length(&self) -> usize {
        let n = self.window.len() as i64;
        let mut total = 0i64;
        for i in 1..=n {
            for j in 1..=n {
                let lo = (i - j).div_euclid(n) + 1;
                let hi = ceil_div(self.window[i as usize - 1] - self.window[j as usize - 1], n) - 1;
                total += (hi - lo + 1).max(0);
            }
        }
        total as usize
    }

    /// `true` when `1, .., n` appear from left to right.
    pub fn is_grassmannian(&self) -> bool {
        let n = self.window.len() as i64;
        (1..n).all(|v| self.position_of(v) < self.position_of(v + 1))
    }

    /// The `n`-core whose boundary reads a vertical step for each entry `<= 0`
    /// and a horizontal step for each positive entry.
    pub fn to_core(&self) -> Result<CorePartition> {
        if !self.is_grassmannian() {
            return Err(Error::NotGrassmannian(self.to_string()));
        }
        let n = self.window.len() as i64;
        let bound = self.window.iter().map(|v| v.abs()).max().unwrap() + n;
        let mut positives = 0usize;
        let mut rows = Vec::new();
        for p in -bound..=bound + n {
            if self.eval(p) > 0 {
                positives += 1;
            } else if positives > 0 {
                rows.push(positives);
            }
        }
        Ok(CorePartition {
            partition: Partition::from_unsorted(rows),
            modulus: self.modulus(),
        })
    }

    /// The `k`-bounded partition attached to the core of `u`.
    pub fn k_bounded_partition(&self) -> Result<Partition> {
        Ok(self.to_core()?.k_bounded())
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

impl fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.window.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", text.join(","))
    }
}

impl FromStr for AffinePermutation {
    type Err = Error;

    /// Accepts `"[-6,8,3,-1,4,13]"`, `"|-6 8 3 -1 4 13|"` or a bare list.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_matches(|c| c == '[' || c == ']' || c == '|');
        let window = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|e| Error::Parse(format!("bad window entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        AffinePermutation::new(window)
    }
}

/// A partition with no hook of length `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CorePartition {
    pub partition: Partition,
    pub modulus: usize,
}

impl CorePartition {
    pub fn new(partition: Partition, modulus: usize) -> Result<Self> {
        if partition.hooks().any(|(_, _, h)| h == modulus) {
            return Err(Error::NotACore {
                partition: partition.to_string(),
                modulus,
            });
        }
        Ok(CorePartition { partition, modulus })
    }

    /// Keeps, in each row, only the cells of hook length at most `modulus - 1`.
    pub fn k_bounded(&self) -> Partition {
        let mut rows = vec![0usize; self.partition.len()];
        for (i, _, h) in self.partition.hooks() {
            if h < self.modulus {
                rows[i] += 1;
            }
        }
        Partition::from_unsorted(rows)
    }

    /// The 0-grassmannian affine permutation of this core.
    pub fn to_affine(&self) -> AffinePermutation {
        let n = self.modulus as i64;
        let parts = self.partition.parts();
        let l = parts.len();
        // boundary letters between the infinite vertical and horizontal runs
        let mut word = Vec::new();
        for idx in (0..l).rev() {
            let next = if idx + 1 < l { parts[idx + 1] } else { 0 };
            word.extend(std::iter::repeat_n(true, parts[idx] - next));
            word.push(false);
        }
        let start = 1 - l as i64;
        let end = start + word.len() as i64;
        let positive = |p: i64| {
            if p < start {
                false
            } else if p >= end {
                true
            } else {
                word[(p - start) as usize]
            }
        };
        let mut firsts: Vec<i64> = (0..n)
            .map(|c| {
                (start..end + n)
                    .find(|&p| p.rem_euclid(n) == c && positive(p))
                    .unwrap()
            })
            .collect();
        firsts.sort_unstable();
        let mut window = vec![0i64; n as usize];
        for (v, &q) in firsts.iter().enumerate() {
            let i = (q - 1).rem_euclid(n) + 1;
            window[i as usize - 1] = v as i64 + 1 + (i - q);
        }
        AffinePermutation::from_window_unchecked(window)
    }
}

impl fmt::Display for CorePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .partition
            .parts()
            .iter()
            .map(ToString::to_string)
            .collect();
        write!(f, "{}-core: ({})", self.modulus, parts.join(","))
    }
}

/// Core `c` as a 0-grassmannian affine permutation with window length `k + 1`.
pub fn from_core(c: &Partition, k: usize) -> Result<AffinePermutation> {
    Ok(CorePartition::new(c.clone(), k + 1)?.to_affine())
}

/// All 0-grassmannian elements of length at most `max_length`, by length then window.
pub fn grassmannians(k: usize, max_length: usize) -> Vec<AffinePermutation> {
    let id = AffinePermutation::identity(k);
    let mut seen: HashSet<AffinePermutation> = HashSet::new();
    let mut out: BTreeSet<(usize, AffinePermutation)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back((0usize, id));
    while let Some((len, u)) = queue.pop_front() {
        out.insert((len, u.clone()));
        if len == max_length {
            continue;
        }
        for i in 0..=k {
            if u.eval(i as i64) < u.eval(i as i64 + 1) {
                let v = u.mul_generator(i);
                if v.is_grassmannian() && seen.insert(v.clone()) {
                    queue.push_back((len + 1, v));
                }
            }
        }
    }
    out.into_iter().map(|(_, u)| u).collect()
}

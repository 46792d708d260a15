//! Finite permutations, the r-Bruhat order and its `u_ab` operators.
//!
//! Chains are stored in application order: `steps[0]` is applied first. The
//! operator-word rendering ([`SchubertChain::word`]) writes them right to left.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::combinat::descent_composition_or_unit;
use crate::dag::IntervalDag;
use crate::error::{Error, Result};
use crate::qsym::QuasiSymFn;
use crate::scalar::Coefficient;
use crate::Limits;

/// A permutation of the positive integers fixing all but finitely many points.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePermutation {
    images: Vec<usize>,
}

impl FinitePermutation {
    pub fn identity() -> Self {
        FinitePermutation { images: Vec::new() }
    }

    /// One-line notation `u(1), .., u(n)`; must be a permutation of `1..=n`.
    pub fn new(images: impl Into<Vec<usize>>) -> Result<Self> {
        let images: Vec<usize> = images.into();
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self::trimmed(images))
    }

    fn trimmed(mut images: Vec<usize>) -> Self {
        while images.last().is_some_and(|&v| v == images.len()) {
            images.pop();
        }
        FinitePermutation { images }
    }

    /// Canonical one-line notation, without trailing fixed points.
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Smallest `n` with `u(i) = i` for all `i > n`.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// One-line notation padded to length `n` (at least the degree).
    pub fn padded(&self, n: usize) -> Vec<usize> {
        let mut v = self.images.clone();
        v.extend(v.len() + 1..=n.max(self.images.len()));
        v
    }

    /// `u(i)` for a 1-based position.
    pub fn apply(&self, i: usize) -> usize {
        self.images.get(i.wrapping_sub(1)).copied().unwrap_or(i)
    }

    /// Position holding `value`, i.e. `u^{-1}(value)`.
    pub fn position_of(&self, value: usize) -> usize {
        self.images
            .iter()
            .position(|&v| v == value)
            .map_or(value, |p| p + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        FinitePermutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.degree().max(other.degree());
        Self::trimmed((1..=n).map(|i| self.apply(other.apply(i))).collect())
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.images;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `(a b)·u`: exchange the values `a` and `b` in one-line notation.
    pub fn swap_values(&self, a: usize, b: usize) -> Self {
        let mut v = self.padded(a.max(b));
        for x in v.iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
        Self::trimmed(v)
    }

    /// Bruhat comparison `self <= other` by the rank-matrix criterion.
    pub fn bruhat_le(&self, other: &Self) -> bool {
        let n = self.degree().max(other.degree());
        let x = self.padded(n);
        let y = other.padded(n);
        for i in 1..=n {
            for j in 1..=n {
                let cx = x[..i].iter().filter(|&&v| v >= j).count();
                let cy = y[..i].iter().filter(|&&v| v >= j).count();
                if cx > cy {
                    return false;
                }
            }
        }
        true
    }
}

impl From<&FinitePermutation> for Vec<usize> {
    fn from(p: &FinitePermutation) -> Self {
        p.images.clone()
    }
}

impl fmt::Display for FinitePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.images.is_empty() {
            return f.write_str("1");
        }
        let text: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&text.join(" "))
    }
}

impl FromStr for FinitePermutation {
    type Err = Error;

    /// Accepts `"1 4 2 6 3 5"`, `"1,4,2,6,3,5"` and bracketed forms.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let images = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad image {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        FinitePermutation::new(images)
    }
}

/// The r-Bruhat cover `u -> (a b)u`, or `None` when `u_ab` sends `u` to zero.
///
/// The cover holds when `a` sits at a position `<= r`, `b` at a position
/// `> r`, and no value strictly between `a` and `b` sits between them.
pub fn apply_u(u: &FinitePermutation, a: usize, b: usize, r: usize) -> Option<FinitePermutation> {
    if a == 0 || a >= b {
        return None;
    }
    let pa = u.position_of(a);
    let pb = u.position_of(b);
    if !(pa <= r && r < pb) {
        return None;
    }
    if (pa + 1..pb).any(|i| {
        let v = u.apply(i);
        a < v && v < b
    }) {
        return None;
    }
    Some(u.swap_values(a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchubertChain {
    pub start: FinitePermutation,
    /// Value transpositions `(a, b)`, `a < b`, in application order.
    pub steps: Vec<(usize, usize)>,
}

impl SchubertChain {
    /// Edge labels `b_1, .., b_n` in application order.
    pub fn labels(&self) -> Vec<usize> {
        self.steps.iter().map(|&(_, b)| b).collect()
    }

    /// Applies the steps in order, `None` as soon as one vanishes.
    pub fn end(&self, r: usize) -> Option<FinitePermutation> {
        self.steps
            .iter()
            .try_fold(self.start.clone(), |u, &(a, b)| apply_u(&u, a, b, r))
    }

    /// Application-order rendering: `t(2,6) t(4,5) t(1,2) t(2,3)`.
    pub fn render_steps(&self) -> String {
        self.steps
            .iter()
            .map(|(a, b)| format!("t({a},{b})"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Operator word, rightmost applied first: `u23 u12 u45 u26`.
    pub fn word(&self) -> String {
        render_word(&self.steps)
    }
}

/// Operator-word rendering of application-order steps.
pub fn render_word(steps: &[(usize, usize)]) -> String {
    steps
        .iter()
        .rev()
        .map(|&(a, b)| {
            if a < 10 && b < 10 {
                format!("u{a}{b}")
            } else {
                format!("u{{{a},{b}}}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical nonempty interval determined by `zeta = w u^{-1}`.
pub fn interval_from_zeta(
    zeta: &FinitePermutation,
) -> Result<(FinitePermutation, FinitePermutation, usize)> {
    if zeta.degree() == 0 {
        return Err(Error::IdentityInput);
    }
    let n = zeta.degree();
    let inv = zeta.inverse();
    let up: Vec<usize> = (1..=n).filter(|&a| inv.apply(a) < a).collect();
    let r = up.len();
    let mut w_images = up.clone();
    let up_set: BTreeSet<usize> = up.into_iter().collect();
    w_images.extend((1..=n).filter(|a| !up_set.contains(a)));
    let w = FinitePermutation::new(w_images)?;
    let u = inv.compose(&w);
    Ok((u, w, r))
}

/// The chain produced by the greedy recursion choosing
/// `i_1 = max{i <= r : u(i) < w(i)}` and
/// `j_1 = min{j > r : u(j) > u(i_1) >= w(j)}` at every step.
///
/// The recursion is stated for the interval built by [`interval_from_zeta`].
/// When it gets stuck on another interval it is rerun on that one, which has
/// the same step sequences.
pub fn first_chain(
    u: &FinitePermutation,
    w: &FinitePermutation,
    r: usize,
) -> Result<SchubertChain> {
    match greedy_chain(u, w, r) {
        Err(Error::EmptyInterval) if u != w => {
            let (cu, cw, cr) = interval_from_zeta(&w.compose(&u.inverse()))?;
            let steps = greedy_chain(&cu, &cw, cr)?.steps;
            let chain = SchubertChain {
                start: u.clone(),
                steps,
            };
            match chain.end(r) {
                Some(end) if end == *w => Ok(chain),
                _ => Err(Error::EmptyInterval),
            }
        }
        other => other,
    }
}

fn greedy_chain(u: &FinitePermutation, w: &FinitePermutation, r: usize) -> Result<SchubertChain> {
    let n = u.degree().max(w.degree());
    let mut cur = u.clone();
    let mut steps = Vec::new();
    while cur != *w {
        if steps.len() > u.length().max(w.length()) + n * n {
            return Err(Error::EmptyInterval);
        }
        let i1 = (1..=r.min(n))
            .rev()
            .find(|&i| cur.apply(i) < w.apply(i))
            .ok_or(Error::EmptyInterval)?;
        let a = cur.apply(i1);
        let j1 = (r + 1..=n)
            .find(|&j| cur.apply(j) > a && a >= w.apply(j))
            .ok_or(Error::EmptyInterval)?;
        let b = cur.apply(j1);
        cur = apply_u(&cur, a, b, r).ok_or(Error::EmptyInterval)?;
        steps.push((a, b));
    }
    Ok(SchubertChain {
        start: u.clone(),
        steps,
    })
}

/// The saturated chains of `[u, w]_r` as a graded DAG.
pub struct RBruhatInterval {
    pub lower: FinitePermutation,
    pub upper: FinitePermutation,
    pub r: usize,
    dag: IntervalDag<FinitePermutation, (usize, usize)>,
}

impl RBruhatInterval {
    pub fn new(u: &FinitePermutation, w: &FinitePermutation, r: usize) -> Self {
        let n = u.degree().max(w.degree());
        let rank = w.length().checked_sub(u.length());
        let dag = IntervalDag::build(
            u.clone(),
            w,
            rank.unwrap_or(0),
            |v| {
                let mut out = Vec::new();
                for a in 1..=n {
                    for b in a + 1..=n {
                        if let Some(t) = apply_u(v, a, b, r) {
                            out.push(((a, b), t));
                        }
                    }
                }
                out
            },
            |t| t.bruhat_le(w),
        );
        let dag = if rank.is_none() {
            IntervalDag::build(u.clone(), w, 0, |_| Vec::new(), |_| false)
        } else {
            dag
        };
        RBruhatInterval {
            lower: u.clone(),
            upper: w.clone(),
            r,
            dag,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.dag.is_empty() || self.upper.length() < self.lower.length()
    }

    pub fn rank(&self) -> usize {
        self.upper.length().saturating_sub(self.lower.length())
    }

    pub fn chain_count(&self) -> u128 {
        if self.is_empty() {
            0
        } else {
            self.dag.path_count()
        }
    }

    /// Every vertex of the interval.
    pub fn elements(&self) -> Vec<FinitePermutation> {
        self.dag
            .layers
            .iter()
            .flatten()
            .map(|&v| self.dag.vertices[v].clone())
            .collect()
    }

    pub fn chains(&self, limits: &Limits) -> Result<Vec<SchubertChain>> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        Ok(self
            .dag
            .paths(limits.cap)?
            .into_iter()
            .map(|steps| SchubertChain {
                start: self.lower.clone(),
                steps,
            })
            .collect())
    }

    /// `K_{[u,w]_r}` in the `F` basis, by dynamic programming over the DAG.
    pub fn k_function<C: Coefficient>(&self) -> QuasiSymFn<C> {
        if self.is_empty() {
            return QuasiSymFn::zero(crate::qsym::QBasis::Fundamental);
        }
        self.dag.k_function(|&(_, b)| b)
    }
}

/// Every saturated chain from `u` to `w` in the r-Bruhat order, sorted by step sequence.
pub fn all_chains(
    u: &FinitePermutation,
    w: &FinitePermutation,
    r: usize,
    limits: &Limits,
) -> Result<Vec<SchubertChain>> {
    RBruhatInterval::new(u, w, r).chains(limits)
}

/// `K_{[u,w]_r} = Σ_ω F_{D(ω)}` summed over the enumerated chains.
pub fn k_function_r<C: Coefficient>(
    u: &FinitePermutation,
    w: &FinitePermutation,
    r: usize,
    limits: &Limits,
) -> Result<QuasiSymFn<C>> {
    let chains = all_chains(u, w, r, limits)?;
    Ok(k_function_of_chains(&chains))
}

/// Sum of `F_{D(ω)}` over a list of chains.
pub fn k_function_of_chains<C: Coefficient>(chains: &[SchubertChain]) -> QuasiSymFn<C> {
    let mut q = QuasiSymFn::zero(crate::qsym::QBasis::Fundamental);
    for chain in chains {
        q.add_term(descent_composition_or_unit(&chain.labels()), C::one());
    }
    q
}

/// The exchange relations among `u_ab` operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchubertRule {
    /// `u_bc u_cd u_ac ≡ u_bd u_ab u_bc` for `a<b<c<d`.
    R1,
    /// `u_ac u_cd u_bc ≡ u_bc u_ab u_bd` for `a<b<c<d`.
    R2,
    /// `u_ab u_cd ≡ u_cd u_ab` for `b<c` or `a<c<d<b`.
    R3,
}

impl SchubertRule {
    pub const ALL: [SchubertRule; 3] = [SchubertRule::R1, SchubertRule::R2, SchubertRule::R3];
}

fn r3_commutes(p: (usize, usize), q: (usize, usize)) -> bool {
    let ok = |(a, b): (usize, usize), (c, d): (usize, usize)| b < c || (a < c && c < d && d < b);
    ok(p, q) || ok(q, p)
}

/// Rewrites the factor of an application-order `word` starting at
/// `position` by `rule`, in whichever direction matches.
///
/// In application order, R1 reads `(a,c)(c,d)(b,c) ↔ (b,c)(a,b)(b,d)` and R2
/// reads `(b,c)(c,d)(a,c) ↔ (b,d)(a,b)(b,c)`.
pub fn rewrite_schubert(
    word: &[(usize, usize)],
    rule: SchubertRule,
    position: usize,
) -> Option<Vec<(usize, usize)>> {
    let arity = if rule == SchubertRule::R3 { 2 } else { 3 };
    let factor = word.get(position..position + arity)?;
    let replacement: Vec<(usize, usize)> = match rule {
        SchubertRule::R3 => {
            let (p, q) = (factor[0], factor[1]);
            if !r3_commutes(p, q) {
                return None;
            }
            vec![q, p]
        }
        SchubertRule::R1 => {
            let [x, y, z] = [factor[0], factor[1], factor[2]];
            // (a,c)(c,d)(b,c) -> (b,c)(a,b)(b,d)
            if x.1 == y.0 && z.1 == x.1 && x.0 < z.0 && z.0 < x.1 && x.1 < y.1 {
                let (a, b, c, d) = (x.0, z.0, x.1, y.1);
                vec![(b, c), (a, b), (b, d)]
            // (b,c)(a,b)(b,d) -> (a,c)(c,d)(b,c)
            } else if y.1 == x.0 && z.0 == x.0 && y.0 < x.0 && x.0 < x.1 && x.1 < z.1 {
                let (a, b, c, d) = (y.0, x.0, x.1, z.1);
                vec![(a, c), (c, d), (b, c)]
            } else {
                return None;
            }
        }
        SchubertRule::R2 => {
            let [x, y, z] = [factor[0], factor[1], factor[2]];
            // (b,c)(c,d)(a,c) -> (b,d)(a,b)(b,c)
            if x.1 == y.0 && z.1 == x.1 && z.0 < x.0 && x.0 < x.1 && x.1 < y.1 {
                let (a, b, c, d) = (z.0, x.0, x.1, y.1);
                vec![(b, d), (a, b), (b, c)]
            // (b,d)(a,b)(b,c) -> (b,c)(c,d)(a,c)
            } else if y.1 == x.0 && z.0 == x.0 && y.0 < x.0 && x.0 < z.1 && z.1 < x.1 {
                let (a, b, c, d) = (y.0, x.0, z.1, x.1);
                vec![(b, c), (c, d), (a, c)]
            } else {
                return None;
            }
        }
    };
    let mut out = word.to_vec();
    out.splice(position..position + arity, replacement);
    Some(out)
}

/// `true` when the word contains a factor that no r-Bruhat chain can contain:
/// `u_ac u_bd` / `u_bd u_ac` with `a <= b < c <= d`, or
/// `u_bc u_ab u_bc` / `u_ab u_bc u_ab` with `a < b < c`.
pub fn is_zero_word(word: &[(usize, usize)]) -> bool {
    let crossing = |(a, c): (usize, usize), (b, d): (usize, usize)| a <= b && b < c && c <= d;
    let pair = word
        .windows(2)
        .any(|w| crossing(w[0], w[1]) || crossing(w[1], w[0]));
    let braid = word.windows(3).any(|w| {
        let (x, y, z) = (w[0], w[1], w[2]);
        if x != z {
            return false;
        }
        // x = (b,c), y = (a,b)  or  x = (a,b), y = (b,c)
        (y.1 == x.0 && y.0 < x.0) || (x.1 == y.0 && y.0 < y.1)
    });
    pair || braid
}

/// Chains reachable from `start` by R1–R3 rewrites in both directions.
pub fn rewrite_closure(start: &[(usize, usize)]) -> HashSet<Vec<(usize, usize)>> {
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    while let Some(word) = queue.pop_front() {
        for rule in SchubertRule::ALL {
            for pos in 0..word.len() {
                if let Some(next) = rewrite_schubert(&word, rule, pos) {
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    seen
}

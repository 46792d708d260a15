//! The affine 0-Bruhat multigraph and its `t_ab` operators.
//!
//! An edge `u -> u t_ab` needs `0 < b - a <= k`, `u(a) <= 0 < u(b)` and the
//! cover condition (no entry strictly between positions `a` and `b` takes a
//! value in `[u(a), u(b)]`). Every residue class of `(a, b)` contributes one
//! parallel edge per representative satisfying the sign condition.

mod relations;

pub use relations::{
    check_relation, random_grassmannian, sweep_relation, AffineRule, SweepSummary,
};

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;

use crate::affineperm::AffinePermutation;
use crate::combinat::descent_composition_or_unit;
use crate::dag::IntervalDag;
use crate::error::{Error, Result};
use crate::qsym::{QBasis, QuasiSymFn};
use crate::scalar::Coefficient;
use crate::Limits;

fn check_pair(k: usize, a: i64, b: i64) -> Result<()> {
    if b - a <= 0 || b - a > k as i64 {
        return Err(Error::BadPair { a, b, k });
    }
    Ok(())
}

/// Bruhat cover test for `u < u t_ab` with `a < b`.
pub fn is_bruhat_cover(u: &AffinePermutation, a: i64, b: i64) -> Result<bool> {
    check_pair(u.k(), a, b)?;
    Ok(cover_unchecked(u, a, b))
}

fn cover_unchecked(u: &AffinePermutation, a: i64, b: i64) -> bool {
    let (ua, ub) = (u.eval(a), u.eval(b));
    ua < ub
        && (a + 1..b).all(|i| {
            let v = u.eval(i);
            v < ua || v > ub
        })
}

/// `u t_ab`, or `None` when the operator sends `u` to zero.
pub fn apply_t(u: &AffinePermutation, a: i64, b: i64) -> Result<Option<AffinePermutation>> {
    check_pair(u.k(), a, b)?;
    Ok(apply_unchecked(u, a, b))
}

pub(crate) fn apply_unchecked(u: &AffinePermutation, a: i64, b: i64) -> Option<AffinePermutation> {
    (u.eval(a) <= 0 && u.eval(b) > 0 && cover_unchecked(u, a, b)).then(|| u.mul_transposition(a, b))
}

/// Applies a word of `t` operators in order; `Ok(None)` once a step vanishes.
pub fn apply_word(u: &AffinePermutation, word: &[(i64, i64)]) -> Result<Option<AffinePermutation>> {
    let mut cur = u.clone();
    for &(a, b) in word {
        match apply_t(&cur, a, b)? {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// One parallel edge: the representative `(a, b) = (a0 + m n, b0 + m n)` of
/// the class with `1 <= a0 <= n`. Its label is `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineEdge {
    pub a: i64,
    pub b: i64,
    pub m: i64,
}

impl AffineEdge {
    fn new(a0: i64, b0: i64, m: i64, n: i64) -> Self {
        AffineEdge {
            a: a0 + m * n,
            b: b0 + m * n,
            m,
        }
    }

    /// The edge whose representative is `(a, b)`.
    pub fn from_pair(a: i64, b: i64, n: i64) -> Self {
        AffineEdge {
            a,
            b,
            m: (a - 1).div_euclid(n),
        }
    }

    pub fn label(&self) -> i64 {
        self.b
    }

    /// Class representative with `1 <= a <= n`.
    pub fn class(&self, n: i64) -> (i64, i64) {
        (self.a - self.m * n, self.b - self.m * n)
    }
}

impl AffineEdge {
    /// `t(a0,b0)@m label=b`.
    pub fn render(&self, n: i64) -> String {
        let (a0, b0) = self.class(n);
        format!("t({a0},{b0})@{} label={}", self.m, self.b)
    }
}

/// All representatives of the class of `(a, b)` giving an edge out of `u`; empty when none do.
pub fn edge_representatives(u: &AffinePermutation, a: i64, b: i64) -> Result<Vec<AffineEdge>> {
    check_pair(u.k(), a, b)?;
    let n = u.modulus() as i64;
    let shift = (a - 1).div_euclid(n);
    let (a0, b0) = (a - shift * n, b - shift * n);
    if !cover_unchecked(u, a0, b0) {
        return Ok(Vec::new());
    }
    // u(a0 + m n) <= 0 < u(b0 + m n)
    let lo = (-u.eval(b0)).div_euclid(n) + 1;
    let hi = (-u.eval(a0)).div_euclid(n);
    Ok((lo..=hi).map(|m| AffineEdge::new(a0, b0, m, n)).collect())
}

/// Every edge out of `u` with its common target per class, sorted by `(a, b, m)`.
pub fn out_edges(u: &AffinePermutation) -> Vec<(AffineEdge, AffinePermutation)> {
    let n = u.modulus() as i64;
    let mut out = Vec::new();
    for a0 in 1..=n {
        for d in 1..n {
            let reps = edge_representatives(u, a0, a0 + d).expect("class pair is valid");
            if let Some(first) = reps.first() {
                let target = u.mul_transposition(first.a, first.b);
                out.extend(reps.into_iter().map(|e| (e, target.clone())));
            }
        }
    }
    out.sort_by_key(|x| x.0);
    out
}

/// Classes `(a, b)` with an edge `v -> w` ending at `w`, with their sources.
fn in_edges(w: &AffinePermutation) -> Vec<AffinePermutation> {
    let n = w.modulus() as i64;
    let mut out = Vec::new();
    for a0 in 1..=n {
        for d in 1..n {
            let (a, b) = (a0, a0 + d);
            let (wa, wb) = (w.eval(a), w.eval(b));
            if wb >= wa {
                continue;
            }
            let cover = (a + 1..b).all(|i| {
                let x = w.eval(i);
                x < wb || x > wa
            });
            if !cover {
                continue;
            }
            // some shift must satisfy w(b + m n) <= 0 < w(a + m n)
            let lo = (-wa).div_euclid(n) + 1;
            let hi = (-wb).div_euclid(n);
            if lo <= hi {
                out.push(w.mul_transposition(a, b));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePath {
    pub start: AffinePermutation,
    pub edges: Vec<AffineEdge>,
}

impl AffinePath {
    pub fn labels(&self) -> Vec<i64> {
        self.edges.iter().map(AffineEdge::label).collect()
    }

    /// Walks the edges, `None` if one of them is not an edge.
    pub fn end(&self) -> Option<AffinePermutation> {
        self.edges
            .iter()
            .try_fold(self.start.clone(), |u, e| apply_unchecked(&u, e.a, e.b))
    }

    pub fn render(&self) -> String {
        let n = self.start.modulus() as i64;
        self.edges
            .iter()
            .map(|e| e.render(n))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The graded multigraph of paths from `lower` to `upper`.
pub struct AffineInterval {
    pub lower: AffinePermutation,
    pub upper: AffinePermutation,
    dag: IntervalDag<AffinePermutation, AffineEdge>,
}

impl AffineInterval {
    /// Requires both endpoints in `W^0`.
    pub fn new(u: &AffinePermutation, w: &AffinePermutation) -> Result<Self> {
        for x in [u, w] {
            if !x.is_grassmannian() {
                return Err(Error::NotGrassmannian(x.to_string()));
            }
        }
        Self::build(u, w, true)
    }

    /// Like [`AffineInterval::new`] with the option of leaving `W^0`.
    pub fn build(
        u: &AffinePermutation,
        w: &AffinePermutation,
        grassmannian_only: bool,
    ) -> Result<Self> {
        if u.k() != w.k() {
            return Err(Error::KMismatch(u.k(), w.k()));
        }
        let (lu, lw) = (u.length(), w.length());
        let rank = lw.checked_sub(lu);
        let below = rank
            .map(|rank| down_set(w, rank, grassmannian_only))
            .unwrap_or_default();
        let dag = IntervalDag::build(u.clone(), w, rank.unwrap_or(0), out_edges, |t| {
            below.contains(t)
        });
        Ok(AffineInterval {
            lower: u.clone(),
            upper: w.clone(),
            dag,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.dag.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.upper.length().saturating_sub(self.lower.length())
    }

    pub fn path_count(&self) -> u128 {
        self.dag.path_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.dag.layers.iter().map(Vec::len).sum()
    }

    pub fn paths(&self, limits: &Limits) -> Result<Vec<AffinePath>> {
        Ok(self
            .dag
            .paths(limits.cap)?
            .into_iter()
            .map(|edges| AffinePath {
                start: self.lower.clone(),
                edges,
            })
            .collect())
    }

    /// `K_{[u,w]}` by dynamic programming, without listing paths.
    pub fn k_function<C: Coefficient>(&self) -> QuasiSymFn<C> {
        self.dag.k_function(AffineEdge::label)
    }
}

/// Vertices reachable from `w` by at most `rank` downward edges.
fn down_set(
    w: &AffinePermutation,
    rank: usize,
    grassmannian_only: bool,
) -> HashSet<AffinePermutation> {
    let mut seen: HashSet<AffinePermutation> = HashSet::new();
    seen.insert(w.clone());
    let mut frontier = vec![w.clone()];
    for _ in 0..rank {
        let next: Vec<AffinePermutation> = frontier
            .par_iter()
            .flat_map_iter(in_edges)
            .filter(|v| !grassmannian_only || v.is_grassmannian())
            .collect();
        frontier = next
            .into_iter()
            .filter(|v| seen.insert(v.clone()))
            .collect();
    }
    seen
}

/// All paths from `u` to `w` in `W^0`, sorted by their `(a, b, m)` steps.
pub fn paths(
    u: &AffinePermutation,
    w: &AffinePermutation,
    limits: &Limits,
) -> Result<Vec<AffinePath>> {
    AffineInterval::new(u, w)?.paths(limits)
}

/// `K_{[u,w]} = Σ F_{D(ω)}` over the enumerated paths.
pub fn k_function_affine<C: Coefficient>(
    u: &AffinePermutation,
    w: &AffinePermutation,
    limits: &Limits,
) -> Result<QuasiSymFn<C>> {
    let mut q = QuasiSymFn::zero(QBasis::Fundamental);
    for path in paths(u, w, limits)? {
        q.add_term(descent_composition_or_unit(&path.labels()), C::one());
    }
    Ok(q)
}

/// Endpoints, with multiplicity, of the length-`m` paths from `u` whose
/// labels strictly increase. Sorted.
pub fn dual_pieri(u: &AffinePermutation, m: usize) -> Vec<AffinePermutation> {
    fn walk(
        v: &AffinePermutation,
        last: Option<i64>,
        left: usize,
        out: &mut Vec<AffinePermutation>,
    ) {
        if left == 0 {
            out.push(v.clone());
            return;
        }
        for (e, t) in out_edges(v) {
            if last.is_none_or(|l| e.label() > l) {
                walk(&t, Some(e.label()), left - 1, out);
            }
        }
    }
    let mut out = Vec::new();
    walk(u, None, m, &mut out);
    out.sort();
    out
}

impl fmt::Display for AffinePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affineperm::grassmannians;
    use crate::combinat::Composition;
    use crate::combinat::Partition;
    use crate::qsym::{is_symmetric, schur_expand, SBasis, SymFn};
    use num_bigint::BigInt;
    use std::collections::BTreeMap;

    fn aff(w: &[i64]) -> AffinePermutation {
        AffinePermutation::new(w.to_vec()).unwrap()
    }

    fn example_u() -> AffinePermutation {
        aff(&[-6, 8, 3, -1, 4, 13])
    }

    fn example_w() -> AffinePermutation {
        aff(&[8, -6, -2, 9, 13, -1])
    }

    /// Edges by brute force: every pair `a < b <= a + k` in a wide range.
    fn brute_out_edges(u: &AffinePermutation) -> Vec<(i64, i64, AffinePermutation)> {
        let k = u.k() as i64;
        let span = u.window().iter().map(|v| v.abs()).max().unwrap() + 3 * (k + 1);
        let mut out = Vec::new();
        for a in -span..span {
            for b in a + 1..=a + k {
                let (ua, ub) = (u.eval(a), u.eval(b));
                let interior = (a + 1..b).all(|i| u.eval(i) < ua || u.eval(i) > ub);
                if ua <= 0 && 0 < ub && ua < ub && interior {
                    out.push((a, b, u.mul_transposition(a, b)));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn covers_and_operators() {
        let u = example_u();
        assert!(is_bruhat_cover(&u, 1, 2).unwrap());
        assert!(is_bruhat_cover(&u, 4, 5).unwrap());
        assert!(!is_bruhat_cover(&u, 2, 3).unwrap());
        assert_eq!(
            is_bruhat_cover(&u, 1, 7),
            Err(Error::BadPair { a: 1, b: 7, k: 5 })
        );
        assert!(is_bruhat_cover(&u, 2, 1).is_err());
        assert_eq!(
            apply_t(&u, 1, 2).unwrap(),
            Some(aff(&[8, -6, 3, -1, 4, 13]))
        );
        assert_eq!(apply_t(&u, -11, -10).unwrap(), None);
        assert_eq!(
            apply_t(&u, -1, 3).unwrap(),
            Some(aff(&[-6, 8, -2, -1, 9, 13]))
        );
    }

    #[test]
    fn representatives() {
        let u = example_u();
        let labels = |a, b| -> Vec<i64> {
            edge_representatives(&u, a, b)
                .unwrap()
                .iter()
                .map(AffineEdge::label)
                .collect()
        };
        assert_eq!(labels(1, 2), vec![-4, 2, 8]);
        assert_eq!(labels(-5, -4), vec![-4, 2, 8]);
        let id = AffinePermutation::identity(3);
        assert_eq!(edge_representatives(&id, 1, 2).unwrap().len(), 0);
        assert_eq!(edge_representatives(&id, 4, 5).unwrap().len(), 1);
        assert_eq!(
            edge_representatives(&id, 0, 1)
                .unwrap()
                .iter()
                .map(AffineEdge::label)
                .collect::<Vec<_>>(),
            vec![1]
        );
        let e = edge_representatives(&u, 1, 2).unwrap()[0];
        assert_eq!(e.render(6), "t(1,2)@-1 label=-4");
    }

    #[test]
    fn fan_of_the_example() {
        let u = example_u();
        let edges = out_edges(&u);
        let mut by_target: BTreeMap<AffinePermutation, Vec<i64>> = BTreeMap::new();
        for (e, t) in &edges {
            by_target.entry(t.clone()).or_default().push(e.label());
        }
        assert_eq!(by_target[&aff(&[8, -6, 3, -1, 4, 13])].len(), 3);
        assert_eq!(by_target[&aff(&[-6, 8, 3, -1, 13, 4])].len(), 2);
        assert_eq!(by_target[&aff(&[-6, 8, -2, -1, 9, 13])], vec![3]);
        assert_eq!(by_target[&aff(&[-6, 8, 3, 4, -1, 13])], vec![5]);
        let brute: Vec<(i64, i64, AffinePermutation)> =
            edges.iter().map(|(e, t)| (e.a, e.b, t.clone())).collect();
        assert_eq!(brute, brute_out_edges(&u));
    }

    #[test]
    fn out_edges_match_brute_force_and_stay_grassmannian() {
        for k in 1..=4 {
            for u in grassmannians(k, 6) {
                let edges = out_edges(&u);
                let listed: Vec<(i64, i64, AffinePermutation)> =
                    edges.iter().map(|(e, t)| (e.a, e.b, t.clone())).collect();
                assert_eq!(listed, brute_out_edges(&u), "{u}");
                for (_, t) in edges {
                    assert!(t.is_grassmannian(), "{u} -> {t}");
                    assert_eq!(t.length(), u.length() + 1);
                }
            }
        }
        let id = AffinePermutation::identity(2);
        assert!(!out_edges(&id).is_empty());
    }

    #[test]
    fn example_interval() {
        let (u, w) = (example_u(), example_w());
        let interval = AffineInterval::new(&u, &w).unwrap();
        assert_eq!(interval.rank(), 4);
        assert_eq!(interval.path_count(), 240);
        let all = interval.paths(&Limits::default()).unwrap();
        assert_eq!(all.len(), 240);
        for p in &all {
            assert_eq!(p.edges.len(), 4);
            assert_eq!(p.end(), Some(w.clone()));
        }
        let c = |p: &[usize]| Composition::new(p.to_vec()).unwrap();
        let expected = QuasiSymFn::from_terms(
            QBasis::Fundamental,
            [
                (c(&[1, 1, 1, 1]), BigInt::from(9)),
                (c(&[1, 1, 2]), BigInt::from(30)),
                (c(&[1, 2, 1]), BigInt::from(51)),
                (c(&[1, 3]), BigInt::from(30)),
                (c(&[2, 1, 1]), BigInt::from(30)),
                (c(&[2, 2]), BigInt::from(51)),
                (c(&[3, 1]), BigInt::from(30)),
                (c(&[4]), BigInt::from(9)),
            ],
        );
        let k: QuasiSymFn<BigInt> = k_function_affine(&u, &w, &Limits::default()).unwrap();
        assert_eq!(k.terms(), expected.terms());
        assert_eq!(interval.k_function::<BigInt>().terms(), expected.terms());
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        let schur = SymFn::from_terms(
            SBasis::Schur,
            [
                (p(&[4]), BigInt::from(9)),
                (p(&[3, 1]), BigInt::from(30)),
                (p(&[2, 2]), BigInt::from(21)),
                (p(&[2, 1, 1]), BigInt::from(30)),
                (p(&[1, 1, 1, 1]), BigInt::from(9)),
            ],
        );
        assert_eq!(schur_expand(&k).unwrap().terms(), schur.terms());
        // strictly increasing label paths are the F_4 coefficient
        let increasing = dual_pieri(&u, 4).into_iter().filter(|t| *t == w).count();
        assert_eq!(increasing, 9);
        assert_eq!(
            all.iter()
                .filter(|p| p.labels().windows(2).all(|x| x[0] < x[1]))
                .count(),
            9
        );
    }

    #[test]
    fn small_intervals() {
        let u = example_u();
        let same = paths(&u, &u, &Limits::default()).unwrap();
        assert_eq!(same.len(), 1);
        assert!(same[0].edges.is_empty());
        let one = paths(&u, &aff(&[8, -6, 3, -1, 4, 13]), &Limits::default()).unwrap();
        assert_eq!(
            one.iter().map(|p| p.labels()[0]).collect::<Vec<_>>(),
            vec![-4, 2, 8]
        );
        let unit: QuasiSymFn<BigInt> = k_function_affine(&u, &u, &Limits::default()).unwrap();
        assert_eq!(unit.terms(), QuasiSymFn::unit(QBasis::Fundamental).terms());
        assert!(paths(&example_w(), &u, &Limits::default())
            .unwrap()
            .is_empty());
        assert!(matches!(
            paths(&aff(&[2, 1, 3]), &aff(&[2, 1, 3]), &Limits::default()),
            Err(Error::NotGrassmannian(_))
        ));
        assert_eq!(
            paths(&u, &example_w(), &Limits { cap: 100 }),
            Err(Error::CapExceeded(100))
        );
    }

    #[test]
    fn dual_pieri_from_identity() {
        let id = AffinePermutation::identity(2);
        let ends = dual_pieri(&id, 1);
        assert_eq!(ends.len(), out_edges(&id).len());
        assert!(ends.iter().all(|t| t.length() == 1));
        assert!(dual_pieri(&id, 0) == vec![id.clone()]);
    }

    #[test]
    fn dp_matches_enumeration_and_is_symmetric() {
        for k in 2..=3 {
            let all = grassmannians(k, 5);
            for u in all.iter().filter(|u| u.length() <= 1) {
                for w in all
                    .iter()
                    .filter(|w| w.length() >= u.length() && w.length() - u.length() <= 4)
                {
                    let interval = AffineInterval::new(u, w).unwrap();
                    if interval.is_empty() {
                        continue;
                    }
                    let dp: QuasiSymFn<BigInt> = interval.k_function();
                    let listed: QuasiSymFn<BigInt> =
                        k_function_affine(u, w, &Limits::default()).unwrap();
                    assert_eq!(dp.terms(), listed.terms());
                    assert!(is_symmetric(&listed), "{u} {w}");
                    for path in interval.paths(&Limits::default()).unwrap() {
                        assert_eq!(path.edges.len(), w.length() - u.length());
                    }
                }
            }
        }
    }
}

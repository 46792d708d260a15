//! Transport of r-Bruhat chains into the affine 0-Bruhat graph.
//!
//! Given a nonempty interval `[x, y]_r`, the construction picks `k`, a shift
//! `s` and a 0-grassmannian `u` such that `u_ab -> t_{a-s, b-s}` sends every
//! chain of the interval to a nonzero path starting at `u`.

use rayon::prelude::*;

use crate::affinegraph::{apply_unchecked, AffineEdge, AffineInterval, AffinePath};
use crate::affineperm::AffinePermutation;
use crate::error::{Error, Result};
use crate::qsym::{QBasis, QuasiSymFn};
use crate::rbruhat::{
    first_chain, interval_from_zeta, FinitePermutation, RBruhatInterval, SchubertChain,
};
use crate::scalar::Coefficient;
use crate::{Limits, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingData {
    pub k: usize,
    pub s: i64,
    pub u: AffinePermutation,
    pub v: AffinePermutation,
    /// Main window of the unshifted permutation `u'`, with `u_i = u'_{i+s}`.
    pub u_prime: Vec<i64>,
    pub source_interval: (FinitePermutation, FinitePermutation, usize),
    /// The interval with the same `y x^{-1}` that the placement is read from.
    pub normalized_interval: (FinitePermutation, FinitePermutation, usize),
}

/// Smallest `k` the construction accepts for `[x, y]_r`.
fn minimal_k(x: &FinitePermutation, y: &FinitePermutation, r: usize) -> usize {
    x.degree().max(y.degree()).max(r + 1).max(2) - 1
}

/// Builds the embedding data with the smallest admissible `k`.
pub fn build_embedding(
    x: &FinitePermutation,
    y: &FinitePermutation,
    r: usize,
) -> Result<EmbeddingData> {
    build_embedding_with_k(x, y, r, None)
}

/// As [`build_embedding`], optionally with a larger `k`.
pub fn build_embedding_with_k(
    x: &FinitePermutation,
    y: &FinitePermutation,
    r: usize,
    k: Option<usize>,
) -> Result<EmbeddingData> {
    if r == 0 || RBruhatInterval::new(x, y, r).is_empty() {
        return Err(Error::EmptyInterval);
    }
    let (nx, ny, nr) = if x == y {
        (x.clone(), y.clone(), r)
    } else {
        interval_from_zeta(&y.compose(&x.inverse()))?
    };
    let min = minimal_k(&nx, &ny, nr).max(minimal_k(x, y, r));
    let k = match k {
        Some(k) if k < min => return Err(Error::KTooSmall { k, min }),
        Some(k) => k,
        None => min,
    };
    let (u_prime, s, u) = place(&nx, nr, k);
    if !u.is_grassmannian() {
        return Err(Error::NotGrassmannianResult(u.to_string()));
    }
    let v = if x == y {
        u.clone()
    } else {
        let first = first_chain(x, y, r)?;
        map_steps(&u, s, &first.steps).ok_or_else(|| Error::NotGrassmannianResult(u.to_string()))?
    };
    Ok(EmbeddingData {
        k,
        s,
        u,
        v,
        u_prime,
        source_interval: (x.clone(), y.clone(), r),
        normalized_interval: (nx, ny, nr),
    })
}

/// Places `1..=n` at the positions read off the descent segments of `x`, then
/// shifts positions so the window sum is `C(n+1, 2)`.
fn place(x: &FinitePermutation, r: usize, k: usize) -> (Vec<i64>, i64, AffinePermutation) {
    let n = k + 1;
    let xs: Vec<i64> = x.padded(n).iter().map(|&v| v as i64).collect();
    let descents: Vec<usize> = (1..n).filter(|&i| xs[i - 1] > xs[i]).collect();
    let cuts = |lo: usize, hi: usize| -> Vec<Vec<usize>> {
        // maximal runs of positions lo..=hi without an interior descent
        let mut segs = vec![Vec::new()];
        for p in lo..=hi {
            segs.last_mut().unwrap().push(p);
            if p < hi && descents.contains(&p) {
                segs.push(Vec::new());
            }
        }
        segs
    };
    let left = cuts(1, r);
    let right = cuts(r + 1, n);
    let (l, t) = (left.len() as i64 - 1, right.len() as i64 - 1);
    let ni = n as i64;
    // right segments from last to first, shifted by -j n; then left segments
    // from last to first, shifted by (l + 1 - j) n
    let mut order: Vec<(usize, i64)> = Vec::new();
    for (j, seg) in right.iter().enumerate().rev() {
        order.extend(seg.iter().map(|&p| (p, -(j as i64) * ni)));
    }
    for (j, seg) in left.iter().enumerate().rev() {
        order.extend(seg.iter().map(|&p| (p, (l + 1 - j as i64) * ni)));
    }
    debug_assert_eq!(order.len(), n);
    debug_assert!(t >= 0);
    let mut window = vec![0i64; n];
    for (idx, &(p, shift)) in order.iter().enumerate() {
        let value = idx as i64 + 1;
        let pos = xs[p - 1] + shift;
        let i = (pos - 1).rem_euclid(ni) + 1;
        window[i as usize - 1] = value + (i - pos);
    }
    let sum: i64 = window.iter().sum();
    let s = (ni * (ni + 1) / 2 - sum) / ni;
    let shifted: Vec<i64> = (1..=ni).map(|i| eval_window(&window, i + s)).collect();
    (window, s, AffinePermutation::from_window_unchecked(shifted))
}

fn eval_window(window: &[i64], i: i64) -> i64 {
    let n = window.len() as i64;
    let q = (i - 1).div_euclid(n);
    window[(i - 1 - q * n) as usize] + q * n
}

fn map_steps(u: &AffinePermutation, s: i64, steps: &[(usize, usize)]) -> Option<AffinePermutation> {
    steps.iter().try_fold(u.clone(), |cur, &(a, b)| {
        let (a, b) = (a as i64 - s, b as i64 - s);
        if b - a > cur.k() as i64 {
            return None;
        }
        apply_unchecked(&cur, a, b)
    })
}

/// The path `t_{a_1-s, b_1-s} .. t_{a_n-s, b_n-s}` from `e.u`, or `None` if a step vanishes.
pub fn map_chain(c: &SchubertChain, e: &EmbeddingData) -> Option<AffinePath> {
    let n = e.u.modulus() as i64;
    map_steps(&e.u, e.s, &c.steps)?;
    Some(AffinePath {
        start: e.u.clone(),
        edges: c
            .steps
            .iter()
            .map(|&(a, b)| AffineEdge::from_pair(a as i64 - e.s, b as i64 - e.s, n))
            .collect(),
    })
}

/// Maps every chain of the source interval and compares the two K functions.
pub fn verify_embedding(e: &EmbeddingData, limits: &Limits) -> Result<VerificationReport> {
    verify_embedding_with::<num_bigint::BigInt>(e, limits)
}

pub fn verify_embedding_with<C: Coefficient>(
    e: &EmbeddingData,
    limits: &Limits,
) -> Result<VerificationReport> {
    let (x, y, r) = &e.source_interval;
    let interval = RBruhatInterval::new(x, y, *r);
    let chains = interval.chains(limits)?;
    let images: Vec<Option<AffinePermutation>> = chains
        .par_iter()
        .map(|c| map_chain(c, e).and_then(|p| p.end()))
        .collect();
    let mut report = VerificationReport::default();
    report.check("u_grassmannian", e.u.is_grassmannian());
    report.check("window_pattern", window_matches(e));
    report.check("all_nonzero", images.iter().all(Option::is_some));
    report.check(
        "common_endpoint",
        images.iter().all(|v| v.as_ref() == Some(&e.v)),
    );
    let schubert: QuasiSymFn<C> = interval.k_function();
    let affine: QuasiSymFn<C> = AffineInterval::new(&e.u, &e.v)?.k_function();
    report.check(
        "K_domination",
        schubert.le_coefficientwise(&affine, QBasis::Fundamental),
    );
    report.note(format!("chains_mapped={}", chains.len()));
    Ok(report)
}

/// `u'` has its main window in the relative order of `x^{-1}` (for the
/// normalized `x`), with exactly the `r` smallest entries `<= 0`.
pub fn window_matches(e: &EmbeddingData) -> bool {
    let (x, _, r) = &e.normalized_interval;
    let n = e.u_prime.len();
    let xinv = x.inverse().padded(n);
    let same_order =
        (0..n).all(|i| (0..n).all(|j| (e.u_prime[i] < e.u_prime[j]) == (xinv[i] < xinv[j])));
    let mut sorted = e.u_prime.clone();
    sorted.sort_unstable();
    let signs = sorted
        .iter()
        .enumerate()
        .all(|(i, &v)| (i < *r) == (v <= 0));
    let shifted = (1..=n as i64).all(|i| e.u.eval(i - e.s) == e.u_prime[i as usize - 1]);
    same_order && signs && shifted
}

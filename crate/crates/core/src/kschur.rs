//! Weak order on `W^0`, the k-Schur Pieri rule and the `h`-to-k-Schur matrix.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::affineperm::{grassmannians, AffinePermutation};
use crate::combinat::{partitions_of, Composition, Partition};
use crate::error::{Error, Result};
use crate::qsym::{QBasis, QuasiSymFn, SBasis, SymFn};
use crate::scalar::Coefficient;

/// Labeled weak covers `u -> u s_i` with both ends in `W^0`.
pub fn weak_covers(u: &AffinePermutation) -> Vec<(usize, AffinePermutation)> {
    weak_covers_in(u, true)
}

/// Weak covers of `u`; with `grassmannian_only == false` the target may leave
/// `W^0` (exploratory, the Pieri rule is stated on `W^0`).
pub fn weak_covers_in(
    u: &AffinePermutation,
    grassmannian_only: bool,
) -> Vec<(usize, AffinePermutation)> {
    (0..=u.k())
        .filter(|&i| u.eval(i as i64) < u.eval(i as i64 + 1))
        .map(|i| (i, u.mul_generator(i)))
        .filter(|(_, v)| !grassmannian_only || v.is_grassmannian())
        .collect()
}

/// Distinct hours `0..=k`, at most `k` of them, reading clockwise from just
/// after the smallest missing hour.
pub fn is_cyclically_increasing(labels: &[usize], k: usize) -> bool {
    let n = k + 1;
    if labels.is_empty() || labels.len() > k || labels.iter().any(|&x| x > k) {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in labels {
        if seen[x] {
            return false;
        }
        seen[x] = true;
    }
    let missing = (0..n).find(|&j| !seen[j]).unwrap();
    let clock: Vec<usize> = labels.iter().map(|&x| (x + n - missing - 1) % n).collect();
    clock.windows(2).all(|w| w[0] < w[1])
}

/// The word `s_{i_1} .. s_{i_m}` walked up from `u`, `None` if a step is not a cover in `W^0`.
pub fn weak_walk(u: &AffinePermutation, labels: &[usize]) -> Option<AffinePermutation> {
    labels.iter().try_fold(u.clone(), |v, &i| {
        let up = v.eval(i as i64) < v.eval(i as i64 + 1);
        let next = v.mul_generator(i);
        (up && next.is_grassmannian()).then_some(next)
    })
}

/// Endpoints of the weak chains of length `m` from `u` labeled by a
/// cyclically increasing word, with multiplicity, sorted.
pub fn pieri_kschur(u: &AffinePermutation, m: usize) -> Result<Vec<AffinePermutation>> {
    let k = u.k();
    if m == 0 || m > k {
        return Err(Error::MOutOfRange { m, k });
    }
    if !u.is_grassmannian() {
        return Err(Error::NotGrassmannian(u.to_string()));
    }
    fn grow(
        v: &AffinePermutation,
        word: &mut Vec<usize>,
        m: usize,
        out: &mut Vec<AffinePermutation>,
    ) {
        if word.len() == m {
            if is_cyclically_increasing(word, v.k()) {
                out.push(v.clone());
            }
            return;
        }
        for (i, next) in weak_covers(v) {
            if !word.contains(&i) {
                word.push(i);
                grow(&next, word, m, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(u, &mut Vec::new(), m, &mut out);
    out.sort();
    Ok(out)
}

/// `u . h_m` as a multiset of endpoints with coefficients.
fn pieri_counts<C: Coefficient>(
    from: &BTreeMap<AffinePermutation, C>,
    m: usize,
) -> Result<BTreeMap<AffinePermutation, C>> {
    let mut out: BTreeMap<AffinePermutation, C> = BTreeMap::new();
    for (v, c) in from {
        for t in pieri_kschur(v, m)? {
            let slot = out.entry(t).or_insert_with(C::zero);
            *slot = slot.clone() + c.clone();
        }
    }
    Ok(out)
}

/// `K_{λ,u}` for the `k`-bounded partitions `λ` and the 0-grassmannians `u`
/// of one degree, with `h_λ = Σ_u K_{λ,u} S_u^{(k)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KMatrix<C> {
    pub k: usize,
    pub degree: usize,
    /// `k`-bounded partitions in decreasing lexicographic order.
    pub rows: Vec<Partition>,
    /// `columns[i]` is the 0-grassmannian attached to `rows[i]`.
    pub columns: Vec<AffinePermutation>,
    entries: BTreeMap<(Partition, AffinePermutation), C>,
}

impl<C: Coefficient> KMatrix<C> {
    pub fn entry(&self, lambda: &Partition, u: &AffinePermutation) -> C {
        self.entries
            .get(&(lambda.clone(), u.clone()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    /// Nonzero entries keyed by `(λ, u)`.
    pub fn entries(&self) -> &BTreeMap<(Partition, AffinePermutation), C> {
        &self.entries
    }

    /// `entry(rows[i], columns[j])` as a dense square matrix.
    pub fn dense(&self) -> Vec<Vec<C>> {
        self.rows
            .iter()
            .map(|lambda| self.columns.iter().map(|u| self.entry(lambda, u)).collect())
            .collect()
    }

    /// `true` when the diagonal is one and every nonzero `K_{λ,u}` has the
    /// partition of `u` dominating `λ`.
    pub fn is_unitriangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, lambda)| {
            self.columns.iter().enumerate().all(|(j, u)| {
                let e = self.entry(lambda, u);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero() || self.rows[j].dominates(lambda)
                }
            })
        })
    }

    /// The inverse matrix, `inverse[i][j]` pairing `columns[i]` with `rows[j]`:
    /// `S_{columns[i]}^{(k)} = Σ_j inverse[i][j] h_{rows[j]}`.
    pub fn inverse(&self) -> Result<Vec<Vec<C>>> {
        let a = self.dense();
        let size = a.len();
        // a[i][j] != 0 only for j <= i in decreasing lexicographic order
        for (i, row) in a.iter().enumerate() {
            if !row[i].is_one() || row[i + 1..].iter().any(|x| !x.is_zero()) {
                return Err(Error::NotSymmetric(format!(
                    "K matrix for k={} degree={} is not unitriangular",
                    self.k, self.degree
                )));
            }
        }
        // b = a^{-1}, lower unitriangular: b[i][j] = -Σ_{j<=l<i} a[i][l] b[l][j]
        let mut b = vec![vec![C::zero(); size]; size];
        for i in 0..size {
            b[i][i] = C::one();
            for j in (0..i).rev() {
                let mut acc = C::zero();
                for l in j..i {
                    acc = acc + a[i][l].clone() * b[l][j].clone();
                }
                b[i][j] = -acc;
            }
        }
        // a is indexed [λ][u]; its inverse is indexed [u][λ]
        Ok(b)
    }
}

/// Assembles `K_{λ,u}` by iterating the Pieri rule from the identity.
pub fn k_matrix<C: Coefficient>(k: usize, degree: usize) -> Result<KMatrix<C>> {
    let rows = partitions_of(degree, Some(k));
    let by_partition: HashMap<Partition, AffinePermutation> = grassmannians(k, degree)
        .into_iter()
        .filter(|u| u.length() == degree)
        .map(|u| (u.k_bounded_partition().expect("element of W^0"), u))
        .collect();
    let columns: Vec<AffinePermutation> = rows.iter().map(|p| by_partition[p].clone()).collect();
    let computed: Vec<Result<Vec<((Partition, AffinePermutation), C)>>> = rows
        .par_iter()
        .map(|lambda| {
            let mut state = BTreeMap::from([(AffinePermutation::identity(k), C::one())]);
            for &part in lambda.parts() {
                state = pieri_counts(&state, part)?;
            }
            Ok(state
                .into_iter()
                .map(|(u, c)| ((lambda.clone(), u), c))
                .collect())
        })
        .collect();
    let mut entries = BTreeMap::new();
    for row in computed {
        entries.extend(row?);
    }
    Ok(KMatrix {
        k,
        degree,
        rows,
        columns,
        entries,
    })
}

/// `S_u^{(k)}` in the `h` basis.
pub fn kschur_in_h<C: Coefficient>(u: &AffinePermutation) -> Result<SymFn<C>> {
    if !u.is_grassmannian() {
        return Err(Error::NotGrassmannian(u.to_string()));
    }
    let matrix = k_matrix::<C>(u.k(), u.length())?;
    let inverse = matrix.inverse()?;
    let i = matrix
        .columns
        .iter()
        .position(|c| c == u)
        .expect("u is a column");
    Ok(SymFn::from_terms(
        SBasis::Homogeneous,
        matrix.rows.iter().cloned().zip(inverse[i].iter().cloned()),
    ))
}

/// `ℓ(v) + ℓ(v^{-1} w) = ℓ(w)`.
pub fn weak_le(v: &AffinePermutation, w: &AffinePermutation) -> bool {
    let between = v.inverse().multiply(w).expect("same k");
    v.length() + between.length() == w.length()
}

/// `K_{[u,w]_w} = Σ_α <u.H_{α_1} .. H_{α_s}, w> M_α` in the `M` basis.
pub fn k_function_weak<C: Coefficient>(
    u: &AffinePermutation,
    w: &AffinePermutation,
) -> Result<QuasiSymFn<C>> {
    if u.k() != w.k() {
        return Err(Error::KMismatch(u.k(), w.k()));
    }
    for x in [u, w] {
        if !x.is_grassmannian() {
            return Err(Error::NotGrassmannian(x.to_string()));
        }
    }
    let target_len = w.length();
    if u.length() > target_len || !weak_le(u, w) {
        return Ok(QuasiSymFn::zero(QBasis::Monomial));
    }
    let mut memo: HashMap<AffinePermutation, BTreeMap<Composition, C>> = HashMap::new();
    let terms = weak_terms(u, w, target_len, &mut memo)?;
    Ok(QuasiSymFn::from_terms(QBasis::Monomial, terms))
}

fn weak_terms<C: Coefficient>(
    v: &AffinePermutation,
    w: &AffinePermutation,
    target_len: usize,
    memo: &mut HashMap<AffinePermutation, BTreeMap<Composition, C>>,
) -> Result<BTreeMap<Composition, C>> {
    if let Some(done) = memo.get(v) {
        return Ok(done.clone());
    }
    let rest = target_len - v.length();
    let mut out: BTreeMap<Composition, C> = BTreeMap::new();
    if rest == 0 {
        if v == w {
            out.insert(Composition::empty(), C::one());
        }
    } else {
        for m in 1..=rest.min(v.k()) {
            for t in pieri_kschur(v, m)? {
                if !weak_le(&t, w) {
                    continue;
                }
                for (tail, c) in weak_terms(&t, w, target_len, memo)? {
                    let mut parts = vec![m];
                    parts.extend_from_slice(tail.parts());
                    let key = Composition::new(parts).expect("positive parts");
                    let slot = out.entry(key).or_insert_with(C::zero);
                    *slot = slot.clone() + c;
                }
            }
        }
    }
    memo.insert(v.clone(), out.clone());
    Ok(out)
}

//! Quasisymmetric functions in the monomial and fundamental bases, and
//! symmetric functions in the monomial, complete homogeneous and Schur bases.
//!
//! Both types store only nonzero coefficients keyed by their index. Equality
//! is basis independent: two functions compare equal when they agree after
//! conversion to the monomial basis.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde_json::{json, Value};

use crate::combinat::{kostka, partitions_of, refinements, Composition, Partition};
use crate::error::{Error, Result};
use crate::scalar::Coefficient;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QBasis {
    /// Monomial quasisymmetric functions `M_α`.
    Monomial,
    /// Fundamental quasisymmetric functions `F_α`.
    Fundamental,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SBasis {
    Monomial,
    Homogeneous,
    Schur,
}

impl QBasis {
    pub fn tag(self) -> &'static str {
        match self {
            QBasis::Monomial => "M",
            QBasis::Fundamental => "F",
        }
    }
}

impl SBasis {
    pub fn tag(self) -> &'static str {
        match self {
            SBasis::Monomial => "m",
            SBasis::Homogeneous => "h",
            SBasis::Schur => "s",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            SBasis::Monomial => "m",
            SBasis::Homogeneous => "h",
            SBasis::Schur => "S",
        }
    }
}

/// A quasisymmetric function with coefficients in `C`.
#[derive(Clone, Debug)]
pub struct QuasiSymFn<C> {
    basis: QBasis,
    terms: BTreeMap<Composition, C>,
}

/// A symmetric function with coefficients in `C`.
#[derive(Clone, Debug)]
pub struct SymFn<C> {
    basis: SBasis,
    terms: BTreeMap<Partition, C>,
}

fn add_into<K: Ord, C: Coefficient>(terms: &mut BTreeMap<K, C>, key: K, coeff: C) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get().clone() + coeff;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

impl<C: Coefficient> QuasiSymFn<C> {
    pub fn zero(basis: QBasis) -> Self {
        QuasiSymFn {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The constant function 1, indexed by the empty composition.
    pub fn unit(basis: QBasis) -> Self {
        Self::single(basis, Composition::empty(), C::one())
    }

    pub fn single(basis: QBasis, index: Composition, coeff: C) -> Self {
        let mut q = Self::zero(basis);
        q.add_term(index, coeff);
        q
    }

    pub fn from_terms(basis: QBasis, terms: impl IntoIterator<Item = (Composition, C)>) -> Self {
        let mut q = Self::zero(basis);
        for (index, coeff) in terms {
            q.add_term(index, coeff);
        }
        q
    }

    pub fn add_term(&mut self, index: Composition, coeff: C) {
        add_into(&mut self.terms, index, coeff);
    }

    pub fn basis(&self) -> QBasis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Composition, C> {
        &self.terms
    }

    pub fn coeff(&self, index: &Composition) -> C {
        self.terms.get(index).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weights of the terms present.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.terms.keys().map(Composition::weight).collect()
    }

    /// Same function in the requested basis.
    pub fn to_basis(&self, basis: QBasis) -> Self {
        match (self.basis, basis) {
            (a, b) if a == b => self.clone(),
            (QBasis::Fundamental, QBasis::Monomial) => f_to_m(self),
            _ => m_to_f(self),
        }
    }

    /// Coefficientwise `self <= other` after expressing both in `basis`.
    pub fn le_coefficientwise(&self, other: &Self, basis: QBasis) -> bool {
        let a = self.to_basis(basis);
        let b = other.to_basis(basis);
        let keys: BTreeSet<&Composition> = a.terms.keys().chain(b.terms.keys()).collect();
        let result = keys.into_iter().all(|k| a.coeff(k) <= b.coeff(k));
        result
    }

    /// `{ "basis": .., "terms": [ { "index": [..], "coeff": .. }, .. ] }`, terms
    /// in decreasing lexicographic order of their index.
    pub fn to_json(&self) -> Value {
        terms_json(
            self.basis.tag(),
            self.terms.iter().map(|(k, v)| (k.parts(), v)),
        )
    }
}

impl<C: Coefficient> PartialEq for QuasiSymFn<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.basis == other.basis {
            return self.terms == other.terms;
        }
        self.to_basis(QBasis::Monomial).terms == other.to_basis(QBasis::Monomial).terms
    }
}

impl<C: Coefficient> SymFn<C> {
    pub fn zero(basis: SBasis) -> Self {
        SymFn {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(basis: SBasis, index: Partition, coeff: C) -> Self {
        let mut s = Self::zero(basis);
        s.add_term(index, coeff);
        s
    }

    pub fn from_terms(basis: SBasis, terms: impl IntoIterator<Item = (Partition, C)>) -> Self {
        let mut s = Self::zero(basis);
        for (index, coeff) in terms {
            s.add_term(index, coeff);
        }
        s
    }

    pub fn add_term(&mut self, index: Partition, coeff: C) {
        add_into(&mut self.terms, index, coeff);
    }

    pub fn basis(&self) -> SBasis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, C> {
        &self.terms
    }

    pub fn coeff(&self, index: &Partition) -> C {
        self.terms.get(index).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Expansion in the monomial symmetric basis.
    pub fn to_monomial(&self) -> SymFn<C> {
        let mut out = SymFn::zero(SBasis::Monomial);
        for (lam, coeff) in &self.terms {
            match self.basis {
                SBasis::Monomial => out.add_term(lam.clone(), coeff.clone()),
                SBasis::Schur => schur_into_monomial(lam, coeff, &mut out),
                SBasis::Homogeneous => {
                    for (mu, k) in h_expand_to_schur::<C>(lam).terms {
                        schur_into_monomial(&mu, &(k * coeff.clone()), &mut out);
                    }
                }
            }
        }
        out
    }

    /// The same function as a quasisymmetric function in the `M` basis.
    pub fn to_quasisymmetric(&self) -> QuasiSymFn<C> {
        let mut q = QuasiSymFn::zero(QBasis::Monomial);
        for (mu, coeff) in &self.to_monomial().terms {
            for alpha in rearrangements(mu.parts()) {
                q.add_term(
                    Composition::new(alpha).expect("positive parts"),
                    coeff.clone(),
                );
            }
        }
        q
    }

    pub fn to_json(&self) -> Value {
        terms_json(
            self.basis.tag(),
            self.terms.iter().map(|(k, v)| (k.parts(), v)),
        )
    }
}

impl<C: Coefficient> PartialEq for SymFn<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.basis == other.basis {
            return self.terms == other.terms;
        }
        self.to_monomial().terms == other.to_monomial().terms
    }
}

fn schur_into_monomial<C: Coefficient>(lam: &Partition, coeff: &C, out: &mut SymFn<C>) {
    for mu in partitions_of(lam.weight(), None) {
        let k = kostka(lam, mu.parts());
        if k > 0 {
            out.add_term(mu, C::from_count(k) * coeff.clone());
        }
    }
}

/// Distinct rearrangements of a multiset of parts.
fn rearrangements(parts: &[usize]) -> Vec<Vec<usize>> {
    fn go(
        counts: &mut BTreeMap<usize, usize>,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<usize> = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&k, _)| k)
            .collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            cur.push(k);
            go(counts, left - 1, cur, out);
            cur.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    let mut counts = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    go(&mut counts, parts.len(), &mut Vec::new(), &mut out);
    out
}

fn terms_json<'a, C: Coefficient>(
    basis: &str,
    terms: impl DoubleEndedIterator<Item = (&'a [usize], &'a C)>,
) -> Value {
    let terms: Vec<Value> = terms
        .rev()
        .map(|(index, coeff)| json!({ "index": index, "coeff": coeff.to_json() }))
        .collect();
    json!({ "basis": basis, "terms": terms })
}

/// Re-expresses a function in the fundamental basis, using
/// `M_β = Σ_{α refines β} (-1)^{ℓ(α)-ℓ(β)} F_α`.
pub fn m_to_f<C: Coefficient>(q: &QuasiSymFn<C>) -> QuasiSymFn<C> {
    if q.basis == QBasis::Fundamental {
        return q.clone();
    }
    let mut out = QuasiSymFn::zero(QBasis::Fundamental);
    for (beta, coeff) in &q.terms {
        for alpha in refinements(beta) {
            let sign = (alpha.len() - beta.len()) % 2 == 1;
            let c = if sign { -coeff.clone() } else { coeff.clone() };
            out.add_term(alpha, c);
        }
    }
    out
}

/// Re-expresses a function in the monomial basis, using `F_β = Σ_{α refines β} M_α`.
pub fn f_to_m<C: Coefficient>(q: &QuasiSymFn<C>) -> QuasiSymFn<C> {
    if q.basis == QBasis::Monomial {
        return q.clone();
    }
    let mut out = QuasiSymFn::zero(QBasis::Monomial);
    for (beta, coeff) in &q.terms {
        for alpha in refinements(beta) {
            out.add_term(alpha, coeff.clone());
        }
    }
    out
}

/// `true` iff the `M`-coefficients are constant on rearrangement classes.
pub fn is_symmetric<C: Coefficient>(q: &QuasiSymFn<C>) -> bool {
    symmetry_defect(q).is_none()
}

fn symmetry_defect<C: Coefficient>(q: &QuasiSymFn<C>) -> Option<String> {
    let m = q.to_basis(QBasis::Monomial);
    let mut classes: BTreeSet<Partition> = BTreeSet::new();
    for alpha in m.terms.keys() {
        classes.insert(alpha.sorted());
    }
    for lam in classes {
        let reference = m.coeff(&lam.as_composition());
        for alpha in rearrangements(lam.parts()) {
            let alpha = Composition::new(alpha).expect("positive parts");
            let c = m.coeff(&alpha);
            if c != reference {
                return Some(format!(
                    "M[{alpha}] has coefficient {c} but M[{lam}] has {reference}"
                ));
            }
        }
    }
    None
}

/// Expands a symmetric quasisymmetric function in Schur functions.
///
/// Solves `c_μ = Σ_λ d_λ K(λ, μ)` degree by degree, visiting partitions in
/// decreasing lexicographic order, which extends dominance order.
pub fn schur_expand<C: Coefficient>(q: &QuasiSymFn<C>) -> Result<SymFn<C>> {
    if let Some(why) = symmetry_defect(q) {
        return Err(Error::NotSymmetric(why));
    }
    let m = q.to_basis(QBasis::Monomial);
    let mut out = SymFn::zero(SBasis::Schur);
    for degree in m.degrees() {
        let parts = partitions_of(degree, None);
        let mut solved: Vec<(Partition, C)> = Vec::new();
        for lam in &parts {
            let mut d = m.coeff(&lam.as_composition());
            for (nu, dn) in &solved {
                let k = kostka(nu, lam.parts());
                if k > 0 {
                    d = d - dn.clone() * C::from_count(k);
                }
            }
            if !d.is_zero() {
                solved.push((lam.clone(), d));
            }
        }
        for (lam, d) in solved {
            out.add_term(lam, d);
        }
    }
    Ok(out)
}

/// `h_λ = Σ_μ K(μ, λ) S_μ`.
pub fn h_expand_to_schur<C: Coefficient>(lambda: &Partition) -> SymFn<C> {
    let mut out = SymFn::zero(SBasis::Schur);
    for mu in partitions_of(lambda.weight(), None) {
        let k = kostka(&mu, lambda.parts());
        if k > 0 {
            out.add_term(mu, C::from_count(k));
        }
    }
    out
}

fn index_text(parts: &[usize]) -> String {
    parts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn write_terms<'a, C: Coefficient>(
    f: &mut fmt::Formatter<'_>,
    symbol: &str,
    terms: impl DoubleEndedIterator<Item = (&'a [usize], &'a C)>,
) -> fmt::Result {
    let mut first = true;
    for (index, coeff) in terms.rev() {
        let negative = coeff.is_negative();
        let magnitude = coeff.abs();
        match (first, negative) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        if !magnitude.is_one() {
            write!(f, "{magnitude}")?;
        }
        write!(f, "{symbol}[{}]", index_text(index))?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<C: Coefficient> fmt::Display for QuasiSymFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.basis.tag(),
            self.terms.iter().map(|(k, v)| (k.parts(), v)),
        )
    }
}

impl<C: Coefficient> fmt::Display for SymFn<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.basis.symbol(),
            self.terms.iter().map(|(k, v)| (k.parts(), v)),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::compositions_of;
    use num_bigint::BigInt;

    type Q = QuasiSymFn<BigInt>;

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    fn q(basis: QBasis, terms: &[(&[usize], i64)]) -> Q {
        QuasiSymFn::from_terms(basis, terms.iter().map(|(k, v)| (c(k), BigInt::from(*v))))
    }

    fn s(terms: &[(&[usize], i64)]) -> SymFn<BigInt> {
        SymFn::from_terms(
            SBasis::Schur,
            terms
                .iter()
                .map(|(k, v)| (Partition::new(k.to_vec()).unwrap(), BigInt::from(*v))),
        )
    }

    #[test]
    fn monomial_to_fundamental() {
        let m = q(
            QBasis::Monomial,
            &[(&[1, 1, 1], 1), (&[2, 1], 1), (&[1, 2], 1)],
        );
        let f = m_to_f(&m);
        assert_eq!(f.basis(), QBasis::Fundamental);
        assert_eq!(
            f.terms(),
            q(
                QBasis::Fundamental,
                &[(&[1, 2], 1), (&[2, 1], 1), (&[1, 1, 1], -1)]
            )
            .terms()
        );
        assert_eq!(
            m_to_f(&q(QBasis::Monomial, &[(&[1], 1)])).terms(),
            q(QBasis::Fundamental, &[(&[1], 1)]).terms()
        );
        // M_11 = F_11 by the refinement matrix at weight 2
        let m11 = q(QBasis::Monomial, &[(&[1, 1], 1)]);
        assert_eq!(
            m_to_f(&m11).terms(),
            q(QBasis::Fundamental, &[(&[1, 1], 1)]).terms()
        );
        let m2 = q(QBasis::Monomial, &[(&[2], 1)]);
        assert_eq!(
            m_to_f(&m2).terms(),
            q(QBasis::Fundamental, &[(&[2], 1), (&[1, 1], -1)]).terms()
        );
    }

    #[test]
    fn fundamental_to_monomial() {
        let f = q(QBasis::Fundamental, &[(&[2, 1], 1)]);
        assert_eq!(
            f_to_m(&f).terms(),
            q(QBasis::Monomial, &[(&[2, 1], 1), (&[1, 1, 1], 1)]).terms()
        );
        let f3 = q(QBasis::Fundamental, &[(&[3], 1)]);
        assert_eq!(
            f_to_m(&f3).terms(),
            q(
                QBasis::Monomial,
                &[(&[3], 1), (&[2, 1], 1), (&[1, 2], 1), (&[1, 1, 1], 1)]
            )
            .terms()
        );
        let eight = q(
            QBasis::Fundamental,
            &[
                (&[1, 3], 1),
                (&[1, 2, 1], 2),
                (&[2, 2], 2),
                (&[1, 1, 2], 1),
                (&[3, 1], 1),
                (&[2, 1, 1], 1),
            ],
        );
        assert_eq!(f_to_m(&eight).coeff(&c(&[1, 1, 1, 1])), BigInt::from(8));
    }

    #[test]
    fn round_trip_is_identity_to_weight_six() {
        for n in 0..=6 {
            for alpha in compositions_of(n) {
                let m = Q::single(QBasis::Monomial, alpha.clone(), BigInt::from(1));
                assert_eq!(f_to_m(&m_to_f(&m)).terms(), m.terms());
                let f = Q::single(QBasis::Fundamental, alpha, BigInt::from(1));
                assert_eq!(m_to_f(&f_to_m(&f)).terms(), f.terms());
            }
        }
    }

    #[test]
    fn symmetry() {
        assert!(is_symmetric(&q(
            QBasis::Monomial,
            &[(&[1, 1, 1], 1), (&[2, 1], 1), (&[1, 2], 1)]
        )));
        assert!(!is_symmetric(&q(QBasis::Monomial, &[(&[2, 1], 1)])));
        assert!(is_symmetric(&Q::zero(QBasis::Fundamental)));
        let err = schur_expand(&q(QBasis::Fundamental, &[(&[1, 2], 1)])).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric(_)));
    }

    #[test]
    fn schur_expansions() {
        let big = q(
            QBasis::Fundamental,
            &[
                (&[1, 1, 1, 1], 9),
                (&[1, 1, 2], 30),
                (&[1, 2, 1], 51),
                (&[1, 3], 30),
                (&[2, 1, 1], 30),
                (&[2, 2], 51),
                (&[3, 1], 30),
                (&[4], 9),
            ],
        );
        let expected = s(&[
            (&[4], 9),
            (&[3, 1], 30),
            (&[2, 2], 21),
            (&[2, 1, 1], 30),
            (&[1, 1, 1, 1], 9),
        ]);
        assert_eq!(schur_expand(&big).unwrap().terms(), expected.terms());

        let weak = q(
            QBasis::Monomial,
            &[(&[1, 1, 1], 1), (&[2, 1], 1), (&[1, 2], 1)],
        );
        assert_eq!(
            schur_expand(&weak).unwrap().terms(),
            s(&[(&[2, 1], 1), (&[1, 1, 1], -1)]).terms()
        );

        let schub = q(
            QBasis::Fundamental,
            &[
                (&[1, 3], 1),
                (&[1, 2, 1], 2),
                (&[2, 2], 2),
                (&[1, 1, 2], 1),
                (&[3, 1], 1),
                (&[2, 1, 1], 1),
            ],
        );
        let e = schur_expand(&schub).unwrap();
        assert_eq!(
            e.terms(),
            s(&[(&[3, 1], 1), (&[2, 2], 1), (&[2, 1, 1], 1)]).terms()
        );
        assert_eq!(e.to_string(), "S[3,1] + S[2,2] + S[2,1,1]");
        assert_eq!(e.to_quasisymmetric(), schub);
    }

    #[test]
    fn h_to_schur() {
        let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
        assert_eq!(
            h_expand_to_schur::<BigInt>(&p(&[1])).terms(),
            s(&[(&[1], 1)]).terms()
        );
        assert_eq!(
            h_expand_to_schur::<BigInt>(&p(&[2, 1])).terms(),
            s(&[(&[3], 1), (&[2, 1], 1)]).terms()
        );
        assert_eq!(
            h_expand_to_schur::<BigInt>(&p(&[1, 1, 1])).terms(),
            s(&[(&[3], 1), (&[2, 1], 2), (&[1, 1, 1], 1)]).terms()
        );
    }

    #[test]
    fn schur_expand_inverts_kostka_reexpansion() {
        for n in 0..=6 {
            for lam in partitions_of(n, None) {
                let sym = SymFn::<BigInt>::single(SBasis::Schur, lam, BigInt::from(3));
                let qs = sym.to_quasisymmetric();
                assert!(is_symmetric(&qs));
                assert_eq!(schur_expand(&qs).unwrap().terms(), sym.terms());
            }
        }
    }

    #[test]
    fn generic_over_coefficients() {
        let m = QuasiSymFn::<i64>::from_terms(
            QBasis::Monomial,
            [(c(&[1, 1, 1]), 1), (c(&[2, 1]), 1), (c(&[1, 2]), 1)],
        );
        let e = schur_expand(&m).unwrap();
        assert_eq!(e.coeff(&Partition::new(vec![1, 1, 1]).unwrap()), -1);
        let mf = QuasiSymFn::<f64>::single(QBasis::Monomial, c(&[2]), 2.0);
        assert_eq!(m_to_f(&mf).coeff(&c(&[1, 1])), -2.0);
    }

    #[test]
    fn json_and_display() {
        let f = q(
            QBasis::Fundamental,
            &[(&[1, 2, 1], 51), (&[1, 3], 30), (&[4], 9)],
        );
        assert_eq!(
            f.to_json().to_string(),
            r#"{"basis":"F","terms":[{"index":[4],"coeff":9},{"index":[1,3],"coeff":30},{"index":[1,2,1],"coeff":51}]}"#
        );
        assert_eq!(f.to_string(), "9F[4] + 30F[1,3] + 51F[1,2,1]");
        let weak = m_to_f(&q(
            QBasis::Monomial,
            &[(&[1, 1, 1], 1), (&[2, 1], 1), (&[1, 2], 1)],
        ));
        assert_eq!(weak.to_string(), "F[2,1] + F[1,2] - F[1,1,1]");
        assert_eq!(Q::zero(QBasis::Monomial).to_string(), "0");
        assert_eq!(Q::unit(QBasis::Fundamental).to_string(), "F[]");
    }

    #[test]
    fn equality_is_basis_independent() {
        let m = q(
            QBasis::Monomial,
            &[(&[1, 1, 1], 1), (&[2, 1], 1), (&[1, 2], 1)],
        );
        assert_eq!(m, m_to_f(&m));
        assert_ne!(m, q(QBasis::Fundamental, &[(&[1, 1, 1], 1)]));
    }
}

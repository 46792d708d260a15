//! Local relations among the `t_ab` operators on `W^0`, checked by evaluation.
//!
//! Words are written in application order: `u t_ab t_cd` applies `t_ab` first.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{apply_unchecked, apply_word, out_edges};
use crate::affineperm::AffinePermutation;
use crate::error::{Error, Result};
use crate::VerificationReport;

type Word = Vec<(i64, i64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineRule {
    A,
    B1,
    B2,
    C1,
    C2,
    D,
    E1,
    E2,
    F,
    X1,
    X2,
    X3,
    X4,
    X5,
    X6,
}

use AffineRule::*;

impl AffineRule {
    pub const ALL: [AffineRule; 15] = [A, B1, B2, C1, C2, D, E1, E2, F, X1, X2, X3, X4, X5, X6];

    pub fn is_conditional(self) -> bool {
        matches!(self, X1 | X2 | X3 | X4 | X5 | X6)
    }

    /// Number of letters on the left-hand side.
    pub fn arity(self) -> usize {
        match self {
            E1 | E2 | F => 3,
            _ => 2,
        }
    }
}

impl fmt::Display for AffineRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for AffineRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AffineRule::ALL
            .into_iter()
            .find(|r| r.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown relation {s:?}")))
    }
}

/// What a relation asserts about its words.
enum Claim {
    /// Both words define the same operator on `W^0`.
    Equal(Word, Word),
    /// Every listed word is the zero operator on `W^0`.
    Zero(Vec<Word>),
    /// No relation; the words are only evaluated.
    Free(Vec<Word>),
    /// Equal at `u` whenever the condition on `u` holds.
    Conditional(Word, Word, Box<dyn Fn(&AffinePermutation) -> bool>),
}

fn residue(x: i64, n: i64) -> i64 {
    x.rem_euclid(n)
}

fn mismatch(rule: AffineRule) -> Error {
    Error::PatternMismatch(rule.to_string())
}

fn two(rule: AffineRule, letters: &[(i64, i64)]) -> Result<(i64, i64, i64, i64)> {
    match letters {
        [(a, b), (c, d)] => Ok((*a, *b, *c, *d)),
        _ => Err(mismatch(rule)),
    }
}

fn claim(rule: AffineRule, k: usize, letters: &[(i64, i64)]) -> Result<Claim> {
    let n = k as i64 + 1;
    let bad = || Err(mismatch(rule));
    let res = |x| residue(x, n);
    let out = match rule {
        A => {
            let (a, b, c, d) = two(rule, letters)?;
            let mut r = [res(a), res(b), res(c), res(d)];
            r.sort_unstable();
            if r.windows(2).any(|w| w[0] == w[1]) {
                return bad();
            }
            Claim::Equal(vec![(a, b), (c, d)], vec![(c, d), (a, b)])
        }
        B1 => {
            let (a, b, c, d) = two(rule, letters)?;
            if !((a < c && c < b && b < d) || (b == c && d - a > n)) {
                return bad();
            }
            Claim::Zero(vec![vec![(a, b), (c, d)], vec![(c, d), (a, b)]])
        }
        B2 => {
            let (a, b, c, d) = two(rule, letters)?;
            if !((res(a) == res(c) && b <= d) || (res(b) == res(d) && c <= a)) {
                return bad();
            }
            Claim::Zero(vec![vec![(a, b), (c, d)]])
        }
        C1 => {
            let (a, b, c, d) = two(rule, letters)?;
            if b != c || d - a != n {
                return bad();
            }
            Claim::Equal(vec![(a, b), (b, d)], vec![(a, b), (b - n, a)])
        }
        C2 => {
            let (a, b, c, d) = two(rule, letters)?;
            if b != c || d - a >= n {
                return bad();
            }
            Claim::Free(vec![vec![(a, b), (b, d)], vec![(b, d), (a, b)]])
        }
        D => {
            let (a, b, c, d) = two(rule, letters)?;
            let ok = a < b
                && b < c
                && c < d
                && res(b) == res(c)
                && res(d) == res(a)
                && (b - a) + (d - c) == n;
            if !ok {
                return bad();
            }
            Claim::Equal(vec![(a, b), (c, d)], vec![(d - n, c), (b - n, a)])
        }
        E1 => {
            // (b,c) (c,d) (a,c)  ==  (b,d) (a,b) (b,c)
            let [x, y, z] = three(rule, letters)?;
            let (a, b, c, d) = (z.0, x.0, x.1, y.1);
            if y.0 != c || z.1 != c || !(a < b && b < c && c < d) {
                return bad();
            }
            Claim::Equal(vec![(b, c), (c, d), (a, c)], vec![(b, d), (a, b), (b, c)])
        }
        E2 => {
            // (a,c) (c,d) (b,c)  ==  (b,c) (a,b) (b,d)
            let [x, y, z] = three(rule, letters)?;
            let (a, b, c, d) = (x.0, z.0, x.1, y.1);
            if y.0 != c || z.1 != c || !(a < b && b < c && c < d) {
                return bad();
            }
            Claim::Equal(vec![(a, c), (c, d), (b, c)], vec![(b, c), (a, b), (b, d)])
        }
        F => {
            // (b,c) (a,b) (b,c)  and  (a,b) (b,c) (a,b)
            let [x, y, z] = three(rule, letters)?;
            let (a, b, c) = (y.0, x.0, x.1);
            if z != x || y.1 != b || !(a < b && b < c) || c - a >= n {
                return bad();
            }
            Claim::Zero(vec![
                vec![(b, c), (a, b), (b, c)],
                vec![(a, b), (b, c), (a, b)],
            ])
        }
        X1 | X2 | X3 | X4 | X5 | X6 => {
            let (a, b, c, d) = two(rule, letters)?;
            let r = (b - a) + (d - c);
            let lhs = vec![(a, b), (c, d)];
            let (ok, rhs, cond): (bool, Word, Box<dyn Fn(&AffinePermutation) -> bool>) = match rule
            {
                X1 => (
                    r < n && res(d) == res(a),
                    vec![(d, c + r), (b - r, a)],
                    Box::new(move |u| u.eval(c) <= 0 && u.eval(d) <= 0),
                ),
                X2 => (
                    r < n && res(d) == res(a),
                    vec![(c, d), (b - r, b)],
                    Box::new(move |u| u.eval(d) > 0),
                ),
                X3 => (
                    r < n && res(b) == res(c),
                    vec![(d - r, d), (a, b)],
                    Box::new(move |u| u.eval(a + r) <= 0),
                ),
                X4 => (
                    r < n && res(b) == res(c),
                    vec![(d - r, c), (b, a + r)],
                    Box::new(move |u| u.eval(b) > 0 && u.eval(a + r) > 0),
                ),
                X5 => (
                    res(b) == res(d) && b - a > d - c,
                    vec![(c, d), (a, b + c - d)],
                    Box::new(move |u| u.eval(d - b + a) > 0),
                ),
                _ => (
                    res(b) == res(d) && b - a < d - c,
                    vec![(c, d - b + a), (a, b)],
                    Box::new(move |u| u.eval(a) <= 0),
                ),
            };
            // the two letters are read with a < b < c < d
            if !ok || b >= c {
                return bad();
            }
            Claim::Conditional(lhs, rhs, cond)
        }
    };
    let words: Vec<&Word> = match &out {
        Claim::Equal(x, y) | Claim::Conditional(x, y, _) => vec![x, y],
        Claim::Zero(ws) | Claim::Free(ws) => ws.iter().collect(),
    };
    let valid = |&(p, q): &(i64, i64)| 0 < q - p && q - p <= k as i64;
    if !words.iter().all(|w| w.iter().all(valid)) {
        return bad();
    }
    Ok(out)
}

fn three(rule: AffineRule, letters: &[(i64, i64)]) -> Result<[(i64, i64); 3]> {
    match letters {
        [x, y, z] => Ok([*x, *y, *z]),
        _ => Err(mismatch(rule)),
    }
}

fn show(v: &Option<AffinePermutation>) -> String {
    v.as_ref()
        .map_or_else(|| "0".to_string(), ToString::to_string)
}

fn render(word: &[(i64, i64)]) -> String {
    word.iter()
        .map(|(a, b)| format!("t({a},{b})"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Evaluates both sides of `rule` at `u`.
///
/// The report has a `holds` check (the relation's claim at `u`). The
/// conditional rules take their letters with `a < b < c < d` and add
/// `condition` (whether `u` satisfies the condition on `u`) and `sides_agree`
/// (equality of the two evaluations, zero included, regardless of the condition).
pub fn check_relation(
    rule: AffineRule,
    u: &AffinePermutation,
    letters: &[(i64, i64)],
) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    match claim(rule, u.k(), letters)? {
        Claim::Equal(x, y) => {
            let (l, r) = (apply_word(u, &x)?, apply_word(u, &y)?);
            report.note(format!("{} -> {}", render(&x), show(&l)));
            report.note(format!("{} -> {}", render(&y), show(&r)));
            report.check("nonzero", l.is_some() || r.is_some());
            report.check("holds", l == r);
        }
        Claim::Zero(words) => {
            let mut all_zero = true;
            for w in &words {
                let v = apply_word(u, w)?;
                report.note(format!("{} -> {}", render(w), show(&v)));
                all_zero &= v.is_none();
            }
            report.check("holds", all_zero);
        }
        Claim::Free(words) => {
            for (i, w) in words.iter().enumerate() {
                let v = apply_word(u, w)?;
                report.note(format!("{} -> {}", render(w), show(&v)));
                report.check(format!("word{}_nonzero", i + 1), v.is_some());
            }
            report.check("holds", true);
        }
        Claim::Conditional(x, y, cond) => {
            let (l, r) = (apply_word(u, &x)?, apply_word(u, &y)?);
            report.note(format!("{} -> {}", render(&x), show(&l)));
            report.note(format!("{} -> {}", render(&y), show(&r)));
            let c = cond(u);
            report.check("condition", c);
            report.check("nonzero", l.is_some());
            report.check("sides_agree", l == r);
            report.check("holds", !c || l == r);
        }
    }
    Ok(report)
}

/// Totals of a randomized sweep of one rule.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    /// Instances whose letters matched the rule's side conditions.
    pub trials: usize,
    /// Instances where some side was nonzero (or, for conditional rules, the
    /// left side was nonzero with the condition on `u` satisfied).
    pub nontrivial: usize,
    /// Instances violating the claim.
    pub failures: usize,
    /// For conditional rules: the first `(u, letters)` violating the condition
    /// on `u` where the two sides differ.
    pub witness: Option<(AffinePermutation, Vec<(i64, i64)>)>,
    /// For the free relation: instances where every word was nonzero.
    pub all_words_nonzero: usize,
}

/// A random element of `W^0` reached by a random walk up the weak order.
pub fn random_grassmannian(k: usize, max_length: usize, rng: &mut impl Rng) -> AffinePermutation {
    let mut u = AffinePermutation::identity(k);
    let steps = rng.gen_range(0..=max_length);
    for _ in 0..steps {
        let ups: Vec<AffinePermutation> = (0..=k)
            .filter(|&i| u.eval(i as i64) < u.eval(i as i64 + 1))
            .map(|i| u.mul_generator(i))
            .filter(AffinePermutation::is_grassmannian)
            .collect();
        u = ups
            .choose(rng)
            .expect("an element of W^0 has an upward cover")
            .clone();
    }
    u
}

/// Candidate letters for `rule` built from a first letter `(p, q)`.
fn propose(rule: AffineRule, k: usize, (p, q): (i64, i64), rng: &mut impl Rng) -> Option<Word> {
    let n = k as i64 + 1;
    let step = |rng: &mut ChaCha8Rng| rng.gen_range(1..=k as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(rng.gen());
    let rng = &mut rng;
    let (a, b) = (p, q);
    let d1 = b - a;
    let shift = rng.gen_range(-2..=2i64);
    let up = rng.gen_range(1..=2i64);
    let word = match rule {
        A => {
            let c = a + rng.gen_range(-n..=2 * n);
            vec![(a, b), (c, c + step(rng))]
        }
        B1 => {
            if rng.gen_bool(0.5) && d1 >= 2 {
                let c = rng.gen_range(a + 1..b);
                let d = rng.gen_range(b + 1..=c + k as i64);
                vec![(a, b), (c, d)]
            } else {
                vec![(a, b), (b, b + step(rng))]
            }
        }
        B2 => {
            if rng.gen_bool(0.5) {
                let c = a + shift * n;
                vec![(a, b), (c, c + step(rng))]
            } else {
                let d = b + shift * n;
                vec![(a, b), (d - step(rng), d)]
            }
        }
        C1 => vec![(a, b), (b, a + n)],
        C2 => vec![(a, b), (b, b + step(rng))],
        D => {
            let m = rng.gen_range(1..=2);
            vec![(a, b), (b + m * n, a + (m + 1) * n)]
        }
        // first letter is (b, c)
        E1 => {
            let (b, c) = (a, b);
            let aa = b - step(rng);
            let d = c + step(rng);
            vec![(b, c), (c, d), (aa, c)]
        }
        // first letter is (a, c)
        E2 => {
            let (aa, c) = (a, b);
            if c - aa < 2 {
                return None;
            }
            let bb = rng.gen_range(aa + 1..c);
            vec![(aa, c), (c, c + step(rng)), (bb, c)]
        }
        // first letter is (b, c)
        F => {
            let (bb, c) = (a, b);
            let aa = bb - step(rng);
            vec![(bb, c), (aa, bb), (bb, c)]
        }
        X1 | X2 => {
            let d = a + up * n;
            vec![(a, b), (d - step(rng), d)]
        }
        X3 | X4 => {
            let c = b + up * n;
            vec![(a, b), (c, c + step(rng))]
        }
        X5 | X6 => {
            let d = b + up * n;
            vec![(a, b), (d - step(rng), d)]
        }
    };
    claim(rule, k, &word).ok().map(|_| word)
}

/// Runs `trials` matching instances of `rule` on random elements of `W^0`
/// with `k` drawn from `2..=max_k`. Reproducible for a given `seed`.
pub fn sweep_relation(rule: AffineRule, max_k: usize, trials: usize, seed: u64) -> SweepSummary {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (rule as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut summary = SweepSummary::default();
    let mut attempts = 0usize;
    while summary.trials < trials && attempts < trials * 1000 {
        attempts += 1;
        let k = rng.gen_range(2..=max_k.max(2));
        let u = random_grassmannian(k, 3 * k, &mut rng);
        let n = k as i64 + 1;
        // half of the first letters are genuine edges out of u
        let first = if rng.gen_bool(0.5) {
            let edges = out_edges(&u);
            match edges.choose(&mut rng) {
                Some((e, _)) => (e.a, e.b),
                None => continue,
            }
        } else {
            let a = rng.gen_range(-2 * n..=2 * n);
            (a, a + rng.gen_range(1..=k as i64))
        };
        let Some(word) = propose(rule, k, first, &mut rng) else {
            continue;
        };
        let report = check_relation(rule, &u, &word).expect("proposed letters match the rule");
        summary.trials += 1;
        if !report.get("holds").unwrap_or(false) {
            summary.failures += 1;
        }
        match rule {
            C2 => {
                if report.get("word1_nonzero") == Some(true)
                    || report.get("word2_nonzero") == Some(true)
                {
                    summary.nontrivial += 1;
                }
                if report.get("word1_nonzero") == Some(true)
                    && report.get("word2_nonzero") == Some(true)
                {
                    summary.all_words_nonzero += 1;
                }
            }
            _ if rule.is_conditional() => {
                let cond = report.get("condition") == Some(true);
                let agree = report.get("sides_agree") == Some(true);
                if cond && report.get("nonzero") == Some(true) {
                    summary.nontrivial += 1;
                }
                if !cond && !agree && summary.witness.is_none() {
                    summary.witness = Some((u.clone(), word.clone()));
                }
            }
            _ => {
                if report.get("nonzero") == Some(true) || evaluates_nonzero_prefix(&u, &word) {
                    summary.nontrivial += 1;
                }
            }
        }
    }
    summary
}

/// For zero relations, whether at least the first letter acts nontrivially.
fn evaluates_nonzero_prefix(u: &AffinePermutation, word: &[(i64, i64)]) -> bool {
    word.first()
        .is_some_and(|&(a, b)| apply_unchecked(u, a, b).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(w: &[i64]) -> AffinePermutation {
        AffinePermutation::new(w.to_vec()).unwrap()
    }

    #[test]
    fn c2_witness() {
        let u = aff(&[0, 2, 4]);
        let report = check_relation(C2, &u, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(report.get("word1_nonzero"), Some(true));
        assert_eq!(apply_word(&u, &[(1, 2)]).unwrap(), Some(aff(&[2, 0, 4])));
        assert_eq!(
            apply_word(&u, &[(1, 2), (2, 3)]).unwrap(),
            Some(aff(&[2, 4, 0]))
        );
    }

    #[test]
    fn side_conditions() {
        let u = aff(&[0, 2, 4]);
        assert_eq!(
            check_relation(A, &u, &[(1, 2), (2, 3)]),
            Err(Error::PatternMismatch("A".into()))
        );
        assert!(check_relation(F, &u, &[(2, 3), (1, 2), (2, 3)])
            .unwrap()
            .passed());
        assert!(check_relation(C1, &u, &[(1, 2), (2, 4)]).is_ok());
        assert!(check_relation(C1, &u, &[(1, 2), (2, 3)]).is_err());
        assert!(check_relation(X1, &u, &[(1, 2)]).is_err());
        assert_eq!("x3".parse::<AffineRule>().unwrap(), X3);
        assert!("Z".parse::<AffineRule>().is_err());
    }

    #[test]
    fn sweeps_are_reproducible() {
        assert_eq!(sweep_relation(A, 4, 50, 7), sweep_relation(A, 4, 50, 7));
    }
}

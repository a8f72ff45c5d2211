//! Knot invariants and classification flags, computed from normal forms.
//!
//! For an even word `(a_1, ..., a_2g)` (nonzero even entries):
//! * crossing number = `Σ|a_i| - #{i : a_i a_{i+1} < 0}`,
//! * genus = half the length,
//! * signature = `Σ (-1)^{i-1} sgn(a_i)` (negates under mirroring,
//!   i.e. under global negation or reversal of the word),
//! * leading Alexander coefficient = `2^{-2g} Π a_i` up to sign,
//! * fibered ⇔ every entry is ±2, positive ⇔ entries alternate in sign
//!   starting positive, achiral ⇔ the word is palindromic.
//!
//! Unknotting number one is the arithmetic criterion: some equivalent pair
//! is `(2mn ± 1, 2n²)` with `m > n ≥ 1` coprime. A Bleiler counterexample
//! additionally has a representation with `m > n > 1` but none of those
//! representations has `m` or `n` even.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::fraction::{
    canonical_word, equivalents, eval_cf, ConwayWord, KnotClass, SchubertPair, WordForm,
};
use crate::{Error, Result};

fn expect_even(word: &ConwayWord) -> &[BigInt] {
    assert!(word.is_even_form(), "operation needs an even-form word, got {word}");
    word.entries()
}

/// Crossing number of the knot given by an even word.
pub fn crossing_number(word: &ConwayWord) -> BigUint {
    let e = expect_even(word);
    let mut sum = BigInt::zero();
    let mut changes = 0u64;
    for (i, a) in e.iter().enumerate() {
        sum += a.abs();
        if i + 1 < e.len() && (a.is_negative()) != (e[i + 1].is_negative()) {
            changes += 1;
        }
    }
    (sum - BigInt::from(changes)).to_biguint().expect("crossing number is positive")
}

/// Genus: half the length of the even word.
pub fn genus(word: &ConwayWord) -> u64 {
    (expect_even(word).len() / 2) as u64
}

/// Signature: the alternating sign sum over the even word.
pub fn signature(word: &ConwayWord) -> i64 {
    expect_even(word)
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let s = if a.is_negative() { -1 } else { 1 };
            if i % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum()
}

/// `|2^{-2g} Π a_i|`: the leading Alexander coefficient, sign-normalized
/// positive. Equals 1 exactly for fibered knots.
pub fn maxcf_alexander(word: &ConwayWord) -> BigUint {
    let e = expect_even(word);
    let mut prod = BigUint::one();
    for a in e {
        prod *= a.magnitude();
    }
    let shift = 2 * (e.len() / 2);
    let denom = BigUint::one() << shift;
    let (q, r) = prod.div_rem(&denom);
    debug_assert!(r.is_zero(), "product of even entries is divisible by 4^g");
    q
}

pub fn is_fibered(word: &ConwayWord) -> bool {
    expect_even(word).iter().all(|a| a.magnitude() == &BigUint::from(2u32))
}

fn alternates_from(word: &[BigInt], first_negative: bool) -> bool {
    !word.is_empty()
        && word.iter().enumerate().all(|(i, a)| a.is_negative() == (first_negative ^ (i % 2 == 1)))
}

/// Positive knot: entries strictly alternate in sign starting positive.
pub fn is_positive(word: &ConwayWord) -> bool {
    alternates_from(expect_even(word), false)
}

/// Mirror of a positive knot: alternation starting negative.
pub fn is_negative(word: &ConwayWord) -> bool {
    alternates_from(expect_even(word), true)
}

/// Achiral ⇔ the even word is palindromic.
pub fn is_achiral(word: &ConwayWord) -> bool {
    expect_even(word);
    word.is_palindromic()
}

/// All representations `(p, 2n²) = (2mn ± 1, 2n²)` with `m > n ≥ 1`
/// coprime, collected over the equivalence class of the pair up to
/// mirroring.
pub fn u1_decompositions(pair: &SchubertPair) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    if pair.is_unknot() {
        return out;
    }
    let p = pair.p();
    let two = BigInt::from(2);
    for eq in equivalents(pair, true) {
        let half = eq.q() / &two;
        let n = half.sqrt();
        if &n * &n != half || n.is_zero() {
            continue;
        }
        for delta in [BigInt::one(), -BigInt::one()] {
            // p = 2mn + delta  =>  m = (p - delta) / (2n)
            let num = p - &delta;
            let (m, r) = num.div_rem(&(&two * &n));
            if r.is_zero() && m > n && m.gcd(&n).is_one() {
                if !out.contains(&(m.clone(), n.clone())) {
                    out.push((m, n.clone()));
                }
            }
        }
    }
    out.sort();
    out
}

/// Unknotting number one, by the arithmetic criterion.
pub fn is_u1(pair: &SchubertPair) -> bool {
    !u1_decompositions(pair).is_empty()
}

/// Counterexample to the even-diagram unknotting conjecture: some
/// representation has `m > n > 1`, and no representation with `m > n > 1`
/// has `m` or `n` even.
pub fn is_bleiler_counterexample(pair: &SchubertPair) -> bool {
    let deep: Vec<_> =
        u1_decompositions(pair).into_iter().filter(|(_, n)| n > &BigInt::one()).collect();
    !deep.is_empty() && deep.iter().all(|(m, n)| m.is_odd() && n.is_odd())
}

/// Which structural unknotting pattern an even word matches, over its full
/// symmetry orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum U1Form {
    /// `(a, a_1, ..., a_l, ±2, -a_l, ..., -a_1)`, l ≥ 0.
    Form1,
    /// `(a, a_1, ..., a_l, ±2, a_l', -a_{l-1}, ..., -a_1)`, l ≥ 1, with
    /// `|a_l + a_l'| = 2` and the absolutely larger of the two opposite in
    /// sign to the middle ±2.
    Form2,
    /// Matches both patterns (the duplication series).
    Both,
    Neither,
}

fn matches_form1(w: &[BigInt]) -> bool {
    let len = w.len();
    if len < 2 || len % 2 != 0 {
        return false;
    }
    let l = (len - 2) / 2;
    let mid = l + 1;
    if w[mid].magnitude() != &BigUint::from(2u32) {
        return false;
    }
    (1..=l).all(|j| w[mid + j] == -&w[mid - j])
}

fn matches_form2(w: &[BigInt]) -> bool {
    let len = w.len();
    if len < 4 || len % 2 != 0 {
        return false;
    }
    let l = (len - 2) / 2;
    let mid = l + 1;
    if w[mid].magnitude() != &BigUint::from(2u32) {
        return false;
    }
    let a_l = &w[mid - 1];
    let a_l2 = &w[mid + 1];
    if (a_l + a_l2).magnitude() != &BigUint::from(2u32) {
        return false;
    }
    let larger = if a_l.magnitude() > a_l2.magnitude() { a_l } else { a_l2 };
    if larger.is_negative() == w[mid].is_negative() {
        return false;
    }
    // Tail mirrors a_{l-1}, ..., a_1.
    (1..l).all(|j| w[mid + 1 + j] == -&w[mid - 1 - j])
}

/// Pattern classification of an even word over its orbit.
pub fn classify_u1_even_form(word: &ConwayWord) -> U1Form {
    let e = expect_even(word);
    let variants: [Vec<BigInt>; 4] = {
        let w = e.to_vec();
        let mut r = w.clone();
        r.reverse();
        let neg: Vec<BigInt> = w.iter().map(|x| -x).collect();
        let mut negr = neg.clone();
        negr.reverse();
        [w, r, neg, negr]
    };
    let f1 = variants.iter().any(|v| matches_form1(v));
    let f2 = variants.iter().any(|v| matches_form2(v));
    match (f1, f2) {
        (true, true) => U1Form::Both,
        (true, false) => U1Form::Form1,
        (false, true) => U1Form::Form2,
        (false, false) => U1Form::Neither,
    }
}

/// Indices (0-based) of twist groups in a positive word such that one
/// crossing change inside the group (entry `c_i -> c_i - 2`) unknots the
/// diagram, i.e. the resulting iterated fraction has |numerator| = 1.
pub fn unknotting_switches(word: &ConwayWord) -> Vec<usize> {
    assert!(word.is_positive_form(), "switch search needs a positive word, got {word}");
    let entries = word.entries();
    let mut hits = Vec::new();
    for i in 0..entries.len() {
        let mut w = entries.to_vec();
        w[i] -= 2;
        let v = eval_cf(&w);
        if v.numerator().magnitude().is_one() {
            hits.push(i);
        }
    }
    hits
}

/// Total number of individual crossings whose switch unknots: each
/// switchable group of `c_i` half-twists contributes `c_i` equivalent
/// crossings.
pub fn unknotting_switch_crossings(word: &ConwayWord) -> BigUint {
    unknotting_switches(word)
        .iter()
        .map(|&i| word.entries()[i].magnitude().clone())
        .fold(BigUint::zero(), |a, b| a + b)
}

mod big_string {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}

/// Every invariant and flag for one knot, as a flat record. Large integers
/// serialize as decimal strings so the JSON stays lossless.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantSet {
    #[serde(with = "big_string")]
    pub crossing_number: BigUint,
    pub genus: u64,
    pub signature: i64,
    #[serde(with = "big_string")]
    pub determinant: BigUint,
    #[serde(with = "big_string")]
    pub maxcf_alexander: BigUint,
    pub fibered: bool,
    pub positive: bool,
    pub negative: bool,
    pub achiral: bool,
    pub u1: bool,
    pub bleiler_counterexample: bool,
}

impl InvariantSet {
    /// Computes all invariants for a classified knot. Signature and the
    /// positive/negative flags follow the chirality of the input; the
    /// mirror-invariant data comes from the canonical word.
    pub fn compute(class: &KnotClass) -> InvariantSet {
        if class.canonical.is_unknot() {
            return InvariantSet {
                crossing_number: BigUint::zero(),
                genus: 0,
                signature: 0,
                determinant: BigUint::one(),
                maxcf_alexander: BigUint::one(),
                fibered: true,
                positive: false,
                negative: false,
                achiral: true,
                u1: false,
                bleiler_counterexample: false,
            };
        }
        let canon = &class.even_word;
        let chiral = &class.chiral_word;
        InvariantSet {
            crossing_number: crossing_number(canon),
            genus: genus(canon),
            signature: signature(chiral),
            determinant: class.canonical.p().magnitude().clone(),
            maxcf_alexander: maxcf_alexander(canon),
            fibered: is_fibered(canon),
            positive: is_positive(chiral),
            negative: is_negative(chiral),
            achiral: is_achiral(canon),
            u1: is_u1(&class.canonical),
            bleiler_counterexample: is_bleiler_counterexample(&class.canonical),
        }
    }

    /// Convenience: classify a fraction and compute.
    pub fn for_pair(pair: &SchubertPair) -> Result<InvariantSet> {
        Ok(InvariantSet::compute(&KnotClass::classify_pair(pair)?))
    }

    /// Convenience: classify a word (even or positive form) and compute.
    pub fn for_word(word: &ConwayWord) -> Result<InvariantSet> {
        if word.form() == WordForm::Mixed {
            return Err(Error::InvalidWord(format!("mixed word {word} cannot be classified")));
        }
        Ok(InvariantSet::compute(&KnotClass::classify_word(word)?))
    }
}

/// Canonicalizes an arbitrary even word and returns its canonical form;
/// small convenience used by tests and the CLI.
pub fn canonical_even(word: &ConwayWord) -> ConwayWord {
    canonical_word(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn word(entries: &[i64]) -> ConwayWord {
        ConwayWord::new(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    fn pair(p: i64, q: i64) -> SchubertPair {
        SchubertPair::new(p.into(), q.into()).unwrap()
    }

    #[test]
    fn crossing_number_examples() {
        assert_eq!(crossing_number(&word(&[2, 2])), 4u32.into());
        assert_eq!(crossing_number(&word(&[2, -2, 2, -2])), 5u32.into());
        assert_eq!(crossing_number(&word(&[4, 2])), 6u32.into());
        // Oracle: sum of entries of the positive form.
        let pos = crate::fraction::even_to_positive(&word(&[4, 2])).unwrap();
        let sum: BigInt = pos.entries().iter().sum();
        assert_eq!(sum, BigInt::from(6));
        // Invariant under the symmetry orbit.
        let w = word(&[4, -2, 6, 2]);
        for v in [w.reversed(), w.negated(), w.negated().reversed()] {
            assert_eq!(crossing_number(&v), crossing_number(&w));
        }
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(&word(&[2, 2])), 1);
        assert_eq!(genus(&word(&[2, -2, 2, -2])), 2);
        assert_eq!(genus(&word(&[4, 2, 6, 2, 2, 2])), 3);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(signature(&word(&[2, 2])), 0);
        assert_eq!(signature(&word(&[2, -2, 2, -2])), 4);
        assert_eq!(signature(&word(&[4, 2])), 0);
        // Negates under mirroring (negation or reversal), fixed by both.
        let w = word(&[4, -2, 6, 2]);
        assert_eq!(signature(&w.negated()), -signature(&w));
        assert_eq!(signature(&w.reversed()), -signature(&w));
        assert_eq!(signature(&w.negated().reversed()), signature(&w));
    }

    #[test]
    fn maxcf_examples() {
        assert_eq!(maxcf_alexander(&word(&[2, 2])), 1u32.into());
        assert_eq!(maxcf_alexander(&word(&[4, 2])), 2u32.into());
        assert_eq!(maxcf_alexander(&word(&[4, -2, 6, 2])), 6u32.into());
    }

    #[test]
    fn flag_examples() {
        let fig8 = word(&[2, 2]);
        assert!(is_fibered(&fig8) && !is_positive(&fig8) && is_achiral(&fig8));
        let torus = word(&[2, -2, 2, -2]);
        assert!(is_fibered(&torus) && is_positive(&torus) && !is_achiral(&torus));
        assert!(is_negative(&torus.negated()));
        let w = word(&[4, 2]);
        assert!(!is_fibered(&w) && !is_positive(&w) && !is_achiral(&w));
    }

    #[test]
    fn u1_examples() {
        assert!(is_u1(&pair(5, 2)));
        assert!(is_u1(&pair(9, 2)));
        // Oracle: the diagrammatic switch search agrees.
        let k9 = KnotClass::classify_pair(&pair(9, 2)).unwrap();
        assert!(!unknotting_switches(&k9.positive_word).is_empty());
        // S(29,12), even word (2,2,2,2): not unknotting number one.
        let k = KnotClass::classify_word(&word(&[2, 2, 2, 2])).unwrap();
        assert_eq!(k.canonical.to_string(), "29/12");
        assert!(!is_u1(&k.canonical));
        assert!(unknotting_switches(&k.positive_word).is_empty());
    }

    #[test]
    fn bleiler_examples() {
        assert!(!is_bleiler_counterexample(&pair(5, 2)));
        // The 8-crossing counterexample has determinant 31.
        let k = KnotClass::classify_fraction(&31.into(), &18.into()).unwrap();
        assert_eq!(crossing_number(&k.even_word), 8u32.into());
        assert!(is_bleiler_counterexample(&k.canonical));
        assert!(is_u1(&k.canonical));
        // Even leading coefficient, as required for counterexamples.
        assert!(maxcf_alexander(&k.even_word).is_even());
        // The duplication knot S(29,8) also decomposes with n even, so it
        // is not a counterexample.
        let k29 = KnotClass::classify_fraction(&29.into(), &8.into()).unwrap();
        assert!(is_u1(&k29.canonical));
        assert!(!is_bleiler_counterexample(&k29.canonical));
    }

    #[test]
    fn u1_form_examples() {
        assert_eq!(classify_u1_even_form(&word(&[2, 2, 2, -2])), U1Form::Form1);
        assert_eq!(classify_u1_even_form(&word(&[4, -2, -2, 2])), U1Form::Both);
        assert_eq!(classify_u1_even_form(&word(&[2, 2])), U1Form::Form1);
        assert_eq!(classify_u1_even_form(&word(&[2, 2, 2, 2])), U1Form::Neither);
    }

    #[test]
    fn switch_examples() {
        let w = word(&[2, 2]);
        assert_eq!(unknotting_switches(&w), vec![0, 1]);
        assert_eq!(unknotting_switch_crossings(&w), 4u32.into());
        let trefoil = word(&[3]);
        assert_eq!(unknotting_switches(&trefoil), vec![0]);
        assert_eq!(unknotting_switches(&word(&[2, 3, 2])), Vec::<usize>::new());
    }

    #[test]
    fn invariant_set_for_figure_eight() {
        let inv = InvariantSet::for_pair(&pair(5, 2)).unwrap();
        assert_eq!(inv.crossing_number, 4u32.into());
        assert_eq!(inv.genus, 1);
        assert_eq!(inv.signature, 0);
        assert_eq!(inv.determinant, 5u32.into());
        assert!(inv.fibered && inv.achiral && inv.u1);
        assert!(!inv.positive && !inv.bleiler_counterexample);
    }

    #[test]
    fn invariant_set_chirality() {
        let inv = InvariantSet::for_word(&word(&[2, -2, 2, -2])).unwrap();
        assert_eq!(inv.crossing_number, 5u32.into());
        assert_eq!(inv.signature, 4);
        assert!(inv.positive && inv.fibered && !inv.negative);
        let inv_m = InvariantSet::for_word(&word(&[-2, 2, -2, 2])).unwrap();
        assert_eq!(inv_m.signature, -4);
        assert!(inv_m.negative && !inv_m.positive);
    }

    #[test]
    fn signature_parity_relation() {
        // (determinant - signature) ≡ 1 mod 4, convention-independent since
        // the signature is even.
        for (p, q) in [(3i64, 2i64), (5, 2), (7, 2), (9, 2), (31, 18), (29, 12)] {
            let class = KnotClass::classify_fraction(&p.into(), &q.into()).unwrap();
            let inv = InvariantSet::compute(&class);
            let det = i64::try_from(&BigInt::from(inv.determinant.clone())).unwrap();
            assert_eq!((det - inv.signature).rem_euclid(4), 1, "p={p} q={q}");
        }
    }
}

//! Iterated fractions over ℚ∪{∞}, Conway words and Schubert pairs.
//!
//! Conventions used everywhere in this crate:
//!
//! * A [`ConwayWord`] stores its entries in *evaluation order*: the fraction
//!   of a word `(c1, ..., cn)` is `[[c1, ..., cn]] = c1 + 1/[[c2, ..., cn]]`,
//!   computed right to left with `1/0 = ∞`, `1/∞ = 0`, `k + ∞ = ∞`. The
//!   classical Conway notation displays the same sequence reversed; every
//!   operation below consumes the stored (evaluation) order.
//! * For a word of even length, reversal and global negation each produce the
//!   mirror knot; their composition gives back the knot itself. A knot is
//!   achiral exactly when its canonical even word is palindromic.
//! * A normalized [`SchubertPair`] `(p, q)` has p odd ≥ 1, q even,
//!   `0 ≤ q < p`, `gcd(p, q) = 1`, and `p = 1` only for the unknot (q = 0).
//!   Such a pair always exists for the knot-up-to-mirroring; the individual
//!   chirality is carried by a signed even representative in `(-p, p)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// An element of ℚ∪{∞} with reduced numerator/denominator. ∞ is stored as
/// `1/0`, so `-∞ = ∞`, matching the reduction convention for tangle
/// fractions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedRational {
    num: BigInt,
    den: BigInt,
}

impl ExtendedRational {
    /// Builds a reduced value from any numerator/denominator, normalizing
    /// the denominator to be non-negative. `n/0` reduces to ∞ for any n ≠ 0.
    pub fn new(num: BigInt, den: BigInt) -> Self {
        if den.is_zero() {
            assert!(!num.is_zero(), "0/0 is not a value of Q ∪ {{∞}}");
            return ExtendedRational { num: BigInt::one(), den: BigInt::zero() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() { (num, den) } else { (num / &g, den / &g) };
        if den.sign() == Sign::Minus {
            num = -num;
            den = -den;
        }
        ExtendedRational { num, den }
    }

    /// The point at infinity, `1/0`.
    pub fn infinity() -> Self {
        ExtendedRational { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// `self + k` for an integer k; `k + ∞ = ∞`.
    pub fn add_int(&self, k: &BigInt) -> Self {
        ExtendedRational::new(&self.num + k * &self.den, self.den.clone())
    }

    /// `1/self`; `1/0 = ∞`, `1/∞ = 0`.
    pub fn recip(&self) -> Self {
        ExtendedRational::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Evaluates the iterated fraction `[[s1, ..., sm]]` right to left over
/// ℚ∪{∞}. The empty sequence evaluates to ∞ (the ±∞ primitive tangle), which
/// makes the function total on all integer sequences.
pub fn eval_cf(entries: &[BigInt]) -> ExtendedRational {
    let mut acc = ExtendedRational::infinity();
    for s in entries.iter().rev() {
        acc = acc.recip().add_int(s);
    }
    acc
}

/// Normal forms a Conway word can be tagged with.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize,
)]
pub enum WordForm {
    /// Every entry ≥ 1 (an alternating diagram; entries sum to the crossing
    /// number).
    Positive,
    /// Every entry even and nonzero, even length (length = twice the genus).
    Even,
    /// Anything else. Mixed words appear only as transient values.
    Mixed,
}

/// A finite integer sequence in evaluation order, tagged with its normal
/// form. See the module docs for the orientation convention.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConwayWord {
    entries: Vec<BigInt>,
    form: WordForm,
}

impl ConwayWord {
    /// Tags a raw sequence with the form it satisfies. Zero entries are
    /// collapsed first (see [`collapse_zeros`]).
    pub fn new(entries: Vec<BigInt>) -> Self {
        collapse_zeros(entries)
    }

    /// Wraps a sequence that is already known to be zero-free.
    fn from_clean(entries: Vec<BigInt>) -> Self {
        let form = derive_form(&entries);
        ConwayWord { entries, form }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn form(&self) -> WordForm {
        self.form
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The iterated fraction of the stored sequence.
    pub fn fraction(&self) -> ExtendedRational {
        eval_cf(&self.entries)
    }

    /// Structural test: nonzero even entries, even length. Some words (all
    /// entries positive *and* even) satisfy both normal forms; both families
    /// of operations accept them.
    pub fn is_even_form(&self) -> bool {
        self.entries.len() % 2 == 0
            && !self.entries.is_empty()
            && self.entries.iter().all(|e| e.is_even() && !e.is_zero())
    }

    /// Structural test: every entry ≥ 1.
    pub fn is_positive_form(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.is_positive())
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.entries.len();
        (0..n / 2).all(|i| self.entries[i] == self.entries[n - 1 - i])
    }

    pub fn reversed(&self) -> ConwayWord {
        let mut e = self.entries.clone();
        e.reverse();
        ConwayWord::from_clean(e)
    }

    pub fn negated(&self) -> ConwayWord {
        ConwayWord::from_clean(self.entries.iter().map(|x| -x).collect())
    }

    /// Parses a comma-separated entry list, e.g. `"2,-2,2,-2"`.
    pub fn parse(text: &str) -> Result<ConwayWord> {
        let mut entries = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse(format!("empty entry in word '{text}'")));
            }
            let v = BigInt::from_str(part)
                .map_err(|_| Error::Parse(format!("bad integer '{part}' in word '{text}'")))?;
            entries.push(v);
        }
        Ok(ConwayWord::new(entries))
    }
}

impl fmt::Display for ConwayWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

fn derive_form(entries: &[BigInt]) -> WordForm {
    let even = entries.len() % 2 == 0
        && !entries.is_empty()
        && entries.iter().all(|e| e.is_even() && !e.is_zero());
    if even {
        WordForm::Even
    } else if !entries.is_empty() && entries.iter().all(|e| e.is_positive()) {
        WordForm::Positive
    } else {
        WordForm::Mixed
    }
}

/// Applies the zero-collapse rule `(..., a, 0, b, ...) = (..., a+b, ...)`
/// until no interior zero remains, and drops trailing `(a, 0)` pairs (the
/// pair contributes `a + 1/∞` and vanishes). Both moves preserve the
/// iterated fraction of the stored sequence exactly. A *leading* zero is a
/// genuine reciprocal and is left in place (such a word is tagged Mixed).
pub fn collapse_zeros(mut entries: Vec<BigInt>) -> ConwayWord {
    loop {
        let pos = entries.iter().position(|e| e.is_zero());
        match pos {
            None => break,
            Some(i) if i > 0 && i + 1 < entries.len() => {
                let b = entries.remove(i + 1);
                entries.remove(i);
                entries[i - 1] += b;
            }
            Some(i) if i > 0 && i + 1 == entries.len() => {
                entries.truncate(i - 1);
            }
            Some(_) => break, // leading zero: irreducible
        }
    }
    let form = derive_form(&entries);
    ConwayWord { entries, form }
}

/// Total order used for canonical forms: plain lexicographic comparison of
/// the entry sequences under the integer order.
fn lex_min(a: Vec<BigInt>, b: Vec<BigInt>) -> Vec<BigInt> {
    match a.cmp(&b) {
        Ordering::Greater => b,
        _ => a,
    }
}

fn first_positive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if v.first().map(|e| e.is_negative()).unwrap_or(false) {
        for e in &mut v {
            *e = -&*e;
        }
    }
    v
}

/// Canonical representative of an even word under the symmetry group
/// {identity, reversal, negation, both}: the lexicographic minimum of the
/// orbit members whose first entry is positive. Idempotent; constant on the
/// orbit; palindromic exactly for achiral knots.
pub fn canonical_word(word: &ConwayWord) -> ConwayWord {
    assert!(word.is_even_form(), "canonical_word needs an even word, got {word}");
    let fwd = first_positive(word.entries.to_vec());
    let mut rev = word.entries.to_vec();
    rev.reverse();
    let rev = first_positive(rev);
    ConwayWord::from_clean(lex_min(fwd, rev))
}

/// Converts an even word to an all-positive word with the same iterated
/// fraction, after mirror-normalizing the first entry to be positive. The
/// rewrite `[[x, a, -b, y]] = [[x, a-1, 1, b-1, -y]]` is applied at the
/// first negative entry until none remains; zeros produced on the way are
/// collapsed. The output entries sum to the crossing number.
pub fn even_to_positive(word: &ConwayWord) -> Result<ConwayWord> {
    if word.is_empty() {
        return Err(Error::InvalidWord("the empty word has no positive form".into()));
    }
    if !word.is_even_form() {
        return Err(Error::InvalidWord(format!("expected an even word, got {word}")));
    }
    let mut w = first_positive(word.entries.to_vec());
    loop {
        let Some(j) = w.iter().position(|e| e.is_negative()) else { break };
        debug_assert!(j >= 1 && w[j - 1].is_positive());
        // [[x, a, -b, y]] -> [[x, a-1, 1, b-1, -y]]
        let b = -w[j].clone();
        w[j - 1] -= 1;
        w[j] = BigInt::one();
        w.insert(j + 1, b - 1);
        for e in w[j + 2..].iter_mut() {
            *e = -&*e;
        }
        // A zero can only appear where a-1 or b-1 vanished; fold it away.
        loop {
            let Some(i) = w.iter().position(|e| e.is_zero()) else { break };
            assert!(i > 0 && i + 1 < w.len(), "boundary zero during positivization");
            let b = w.remove(i + 1);
            w.remove(i);
            w[i - 1] += b;
        }
    }
    let out = ConwayWord::from_clean(w);
    debug_assert!(out.is_positive_form());
    Ok(out)
}

/// A normalized Schubert pair: the identity of a rational knot up to
/// mirroring. See the module docs for the invariants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchubertPair {
    p: BigInt,
    q: BigInt,
}

impl SchubertPair {
    /// Validates and builds a normalized pair.
    pub fn new(p: BigInt, q: BigInt) -> Result<SchubertPair> {
        if p.is_one() {
            if !q.is_zero() {
                return Err(Error::InvalidPair("the unknot is S(1,0)".into()));
            }
            return Ok(SchubertPair { p, q });
        }
        if !p.is_positive() || p.is_even() {
            return Err(Error::InvalidPair(format!(
                "p must be odd and positive, got {p} (even p is a 2-component link)"
            )));
        }
        if q.is_negative() || q >= p || q.is_odd() || q.is_zero() {
            return Err(Error::InvalidPair(format!("q must be even with 0 < q < p, got {q}/{p}")));
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::InvalidPair(format!("p and q must be coprime, got {p}, {q}")));
        }
        Ok(SchubertPair { p, q })
    }

    /// The unknot S(1,0).
    pub fn unknot() -> SchubertPair {
        SchubertPair { p: BigInt::one(), q: BigInt::zero() }
    }

    pub fn is_unknot(&self) -> bool {
        self.p.is_one()
    }

    /// The determinant of the knot.
    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// Parses `"p/q"`.
    pub fn parse(text: &str) -> Result<SchubertPair> {
        let (ps, qs) = text
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected p/q, got '{text}'")))?;
        let p = BigInt::from_str(ps.trim())
            .map_err(|_| Error::Parse(format!("bad numerator '{ps}'")))?;
        let q = BigInt::from_str(qs.trim())
            .map_err(|_| Error::Parse(format!("bad denominator '{qs}'")))?;
        SchubertPair::new(p, q)
    }
}

impl fmt::Display for SchubertPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// The even representative of the residue class of `v` *up to mirroring*:
/// `v mod p` when that is even, else `p - (v mod p)`.
fn even_rep_up_to_mirror(v: &BigInt, p: &BigInt) -> BigInt {
    let r = v.mod_floor(p);
    if r.is_even() {
        r
    } else {
        p - r
    }
}

/// The *signed* even representative of the residue class of `v` for a fixed
/// chirality: the even member of `{v mod p, (v mod p) - p}`, in `(-p, p)`.
fn even_rep_signed(v: &BigInt, p: &BigInt) -> BigInt {
    let r = v.mod_floor(p);
    if r.is_even() {
        r
    } else {
        r - p
    }
}

/// The set of normalized pairs equivalent to `pair` under
/// `S(p,q) = S(p, ±q^{∓1})`. Without `up_to_mirror` only the chirality-fixed
/// identifications `{q, q^{-1} mod p}` are used (keeping even members);
/// with it, the mirror orbit is included, which always yields the even
/// members of `{±q^{±1} mod p}`.
pub fn equivalents(pair: &SchubertPair, up_to_mirror: bool) -> BTreeSet<SchubertPair> {
    let mut out = BTreeSet::new();
    if pair.is_unknot() {
        out.insert(SchubertPair::unknot());
        return out;
    }
    let p = &pair.p;
    let qinv = mod_inverse(&pair.q, p);
    if up_to_mirror {
        out.insert(SchubertPair { p: p.clone(), q: pair.q.clone() });
        out.insert(SchubertPair { p: p.clone(), q: even_rep_up_to_mirror(&qinv, p) });
    } else {
        out.insert(pair.clone());
        if qinv.is_even() {
            out.insert(SchubertPair { p: p.clone(), q: qinv });
        }
    }
    out
}

/// The canonical (minimal) pair in `equivalents(pair, up_to_mirror)`.
pub fn canonical_pair(pair: &SchubertPair, up_to_mirror: bool) -> SchubertPair {
    equivalents(pair, up_to_mirror).into_iter().next().expect("nonempty equivalence class")
}

/// Greedy even expansion of the exact fraction `p/q`, where q may be
/// negative (a mirror chirality) but must be even, coprime to p, with
/// `0 < |q| < p`. At each step the unique even integer within distance 1 of
/// the current value is split off; the denominators strictly decrease, so
/// the expansion terminates, and its length is automatically even.
fn even_expansion(p: &BigInt, q: &BigInt) -> Vec<BigInt> {
    assert!(q.is_even() && !q.is_zero());
    let mut num = p.clone();
    let mut den = q.clone();
    if den.is_negative() {
        num = -num;
        den = -den;
    }
    let mut word = Vec::new();
    loop {
        // Nearest even integer 2k to num/den; ties cannot occur for the
        // parities that arise here.
        let k = (&num + &den).div_floor(&(BigInt::from(2) * &den));
        let a = BigInt::from(2) * k;
        let rem = &num - &a * &den;
        debug_assert!(rem.magnitude() < den.magnitude() || den.is_one());
        word.push(a);
        if rem.is_zero() {
            break;
        }
        // Continue with the reciprocal remainder den/rem.
        let new_den = if rem.is_negative() { -&rem } else { rem.clone() };
        let new_num = if rem.is_negative() { -&den } else { den.clone() };
        num = new_num;
        den = new_den;
    }
    debug_assert!(word.len() % 2 == 0);
    debug_assert!(word.iter().all(|e| e.is_even() && !e.is_zero()));
    word
}

/// The unique (up to reversal-with-negation) even word whose iterated
/// fraction is exactly `p/q` for a normalized pair. The first entry is
/// positive. Rejects the unknot, which has no even word.
pub fn positive_to_even(pair: &SchubertPair) -> Result<ConwayWord> {
    if pair.is_unknot() {
        return Err(Error::InvalidPair("the unknot has no even word".into()));
    }
    let word = even_expansion(&pair.p, &pair.q);
    Ok(ConwayWord::from_clean(word))
}

/// Full classification of one rational knot: canonical data for the class
/// up to mirroring plus the chirality-faithful even word of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotClass {
    /// Minimal normalized pair of the class up to mirroring.
    pub canonical: SchubertPair,
    /// Canonical even word of `canonical` (first entry positive).
    pub even_word: ConwayWord,
    /// Positive word with the same fraction as `even_word`.
    pub positive_word: ConwayWord,
    /// Normalized pair of the mirror knot when the mirror class has an even
    /// representative in `(0, p)`; equals `canonical` otherwise (achiral
    /// knots, and torus-type classes whose mirror has no such
    /// representative).
    pub mirror_of_canonical: SchubertPair,
    /// Even word of the exact input chirality; may start negative.
    pub chiral_word: ConwayWord,
}

impl KnotClass {
    /// Classifies the knot with tangle fraction `num/den`. Any
    /// representative fraction is accepted: the denominator may be odd,
    /// negative, or larger than p; `1/0` and `±1/k` give the unknot.
    pub fn classify_fraction(num: &BigInt, den: &BigInt) -> Result<KnotClass> {
        if num.is_zero() {
            return Err(Error::InvalidPair("fraction 0/q is not a knot".into()));
        }
        let g = num.gcd(den);
        let (num, den) = (num / &g, den / &g);
        let (p, q) = if num.is_negative() { (-&num, -&den) } else { (num.clone(), den.clone()) };
        if p.is_even() {
            return Err(Error::InvalidPair(format!(
                "determinant {p} is even: S({p},q) is a 2-component link"
            )));
        }
        if p.is_one() {
            let empty = ConwayWord::from_clean(Vec::new());
            return Ok(KnotClass {
                canonical: SchubertPair::unknot(),
                even_word: empty.clone(),
                positive_word: empty.clone(),
                mirror_of_canonical: SchubertPair::unknot(),
                chiral_word: empty,
            });
        }
        let q_mod = q.mod_floor(&p);
        if q_mod.is_zero() || !p.gcd(&q_mod).is_one() {
            return Err(Error::InvalidPair(format!("{p} and {q} have a common factor")));
        }
        let q_hat = even_rep_signed(&q_mod, &p);
        let qinv = mod_inverse(&q_mod, &p);
        let q_c = even_rep_up_to_mirror(&q_mod, &p).min(even_rep_up_to_mirror(&qinv, &p));

        let chiral_word = ConwayWord::from_clean(even_expansion(&p, &q_hat));
        let even_word = canonical_word(&ConwayWord::from_clean(even_expansion(&p, &q_c)));
        let positive_word = even_to_positive(&even_word)?;

        let qc_inv = mod_inverse(&q_c, &p);
        let mirror_q = if qc_inv.is_odd() { &p - &qc_inv } else { q_c.clone() };
        Ok(KnotClass {
            canonical: SchubertPair { p: p.clone(), q: q_c },
            even_word,
            positive_word,
            mirror_of_canonical: SchubertPair { p, q: mirror_q },
            chiral_word,
        })
    }

    /// Classifies from a normalized pair.
    pub fn classify_pair(pair: &SchubertPair) -> Result<KnotClass> {
        if pair.is_unknot() {
            return Self::classify_fraction(&BigInt::one(), &BigInt::zero());
        }
        Self::classify_fraction(&pair.p, &pair.q)
    }

    /// Classifies from a word in either normal form. The word's own
    /// fraction fixes the chirality.
    pub fn classify_word(word: &ConwayWord) -> Result<KnotClass> {
        match word.form() {
            WordForm::Even | WordForm::Positive => {}
            WordForm::Mixed => {
                return Err(Error::InvalidWord(format!(
                    "classification needs an even or positive word, got {word}"
                )))
            }
        }
        let v = word.fraction();
        if v.is_infinite() {
            return Err(Error::InvalidWord(format!("{word} closes to the unknot tangle ∞")));
        }
        Self::classify_fraction(v.numerator(), v.denominator())
    }

    /// Whether the knot is achiral (canonical even word palindromic).
    pub fn achiral(&self) -> bool {
        self.even_word.is_palindromic()
    }
}

impl KnotClass {
    /// Signed even representative in `(-p, p)` of the input chirality.
    pub fn signed_even_q(&self) -> BigInt {
        if self.chiral_word.is_empty() {
            return BigInt::zero();
        }
        let v = self.chiral_word.fraction();
        let (num, den) = (v.numerator(), v.denominator());
        if num.is_negative() {
            -den
        } else {
            den.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(entries: &[i64]) -> ConwayWord {
        ConwayWord::new(entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    fn frac(entries: &[i64]) -> ExtendedRational {
        eval_cf(&entries.iter().map(|&e| BigInt::from(e)).collect::<Vec<_>>())
    }

    fn rat(n: i64, d: i64) -> ExtendedRational {
        ExtendedRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eval_cf_examples() {
        assert_eq!(frac(&[2, 2]), rat(5, 2));
        assert_eq!(frac(&[2, 0, 3]), rat(5, 1));
        assert_eq!(frac(&[1, 1, 1]), rat(3, 2));
        assert_eq!(frac(&[]), ExtendedRational::infinity());
        assert_eq!(frac(&[2, -2]), rat(3, 2));
        assert_eq!(frac(&[-2, 2]), rat(-3, 2));
        assert_eq!(frac(&[2, -2, 2, -2]), rat(5, 4));
        // ∞-arithmetic: [[2,0]] = 2 + 1/0 = ∞, and -1/0 reduces to 1/0.
        assert_eq!(frac(&[2, 0]), ExtendedRational::infinity());
        assert_eq!(frac(&[0, 0]), ExtendedRational::infinity());
        assert_eq!(rat(-1, 0), ExtendedRational::infinity());
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(collapse_zeros(vec![4.into(), 0.into(), 2.into()]), word(&[6]));
        assert_eq!(word(&[2, 2]).entries(), word(&[2, 2]).entries());
        // (2,-2,0,2) -> (2,0) -> (): the trailing pair evaluates to ∞ and
        // the whole word already evaluated to ∞.
        let w = collapse_zeros(vec![2.into(), (-2).into(), 0.into(), 2.into()]);
        assert!(w.is_empty());
        assert_eq!(frac(&[2, -2, 0, 2]), ExtendedRational::infinity());
    }

    #[test]
    fn collapse_preserves_fraction_randomized() {
        // 10^5 random words with entries in [-6, 6].
        let mut state = 0x8d3c_9f1au64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..100_000 {
            let len = (next() % 8) as usize;
            let entries: Vec<BigInt> =
                (0..len).map(|_| BigInt::from((next() % 13) as i64 - 6)).collect();
            let before = eval_cf(&entries);
            let after = collapse_zeros(entries.clone());
            assert_eq!(
                before,
                after.fraction(),
                "collapse changed the fraction of {entries:?} -> {after}"
            );
        }
    }

    #[test]
    fn even_to_positive_examples() {
        assert_eq!(even_to_positive(&word(&[2, -2])).unwrap(), word(&[1, 1, 1]));
        assert_eq!(even_to_positive(&word(&[2, 2])).unwrap(), word(&[2, 2]));
        let torus = even_to_positive(&word(&[2, -2, 2, -2])).unwrap();
        let sum: BigInt = torus.entries().iter().sum();
        assert_eq!(sum, BigInt::from(5));
        assert!(even_to_positive(&ConwayWord::from_clean(vec![])).is_err());
        // Mirror-normalization: a negative-start word maps to the same
        // positive word as its negation.
        assert_eq!(
            even_to_positive(&word(&[-2, 2])).unwrap(),
            even_to_positive(&word(&[2, -2])).unwrap()
        );
    }

    #[test]
    fn positive_to_even_examples() {
        let p52 = SchubertPair::new(5.into(), 2.into()).unwrap();
        assert_eq!(positive_to_even(&p52).unwrap(), word(&[2, 2]));
        let p32 = SchubertPair::new(3.into(), 2.into()).unwrap();
        assert_eq!(positive_to_even(&p32).unwrap(), word(&[2, -2]));
        let p92 = SchubertPair::new(9.into(), 2.into()).unwrap();
        assert_eq!(positive_to_even(&p92).unwrap(), word(&[4, 2]));
        assert_eq!(frac(&[4, 2]), rat(9, 2));
        assert!(positive_to_even(&SchubertPair::unknot()).is_err());
        assert!(SchubertPair::new(9.into(), 3.into()).is_err());
        assert!(SchubertPair::new(9.into(), 4.into()).is_ok());
        assert!(SchubertPair::new(4.into(), 1.into()).is_err());
    }

    #[test]
    fn even_expansion_is_exact_oracle() {
        // Exhaustive oracle at length 2: the only even words of length two
        // with fraction 3/2 are (2,-2) up to the symmetry orbit.
        let mut hits = Vec::new();
        for a in [-6i64, -4, -2, 2, 4, 6] {
            for b in [-6i64, -4, -2, 2, 4, 6] {
                if frac(&[a, b]) == rat(3, 2) {
                    hits.push((a, b));
                }
            }
        }
        assert_eq!(hits, vec![(2, -2)]);
    }

    #[test]
    fn equivalents_examples() {
        let p92 = SchubertPair::new(9.into(), 2.into()).unwrap();
        let up: Vec<String> =
            equivalents(&p92, true).iter().map(|s| s.to_string()).collect();
        assert_eq!(up, vec!["9/2", "9/4"]);
        assert_eq!(canonical_pair(&p92, true).to_string(), "9/2");

        let p52 = SchubertPair::new(5.into(), 2.into()).unwrap();
        let up: Vec<String> = equivalents(&p52, true).iter().map(|s| s.to_string()).collect();
        assert_eq!(up, vec!["5/2"]); // figure-eight: self-mirror class

        let unknot = SchubertPair::unknot();
        assert_eq!(equivalents(&unknot, true).len(), 1);
    }

    #[test]
    fn canonical_word_examples() {
        assert_eq!(canonical_word(&word(&[-2, 2])), word(&[2, -2]));
        assert_eq!(canonical_word(&word(&[2, 4])), word(&[2, 4]));
        assert_eq!(canonical_word(&word(&[2, 2])), word(&[2, 2]));
        // Idempotent and constant on the symmetry orbit.
        for w in [word(&[2, -4, 6, 2]), word(&[4, 2, -2, -2])] {
            let c = canonical_word(&w);
            assert_eq!(canonical_word(&c), c);
            assert_eq!(canonical_word(&w.reversed()), c);
            assert_eq!(canonical_word(&w.negated()), c);
            assert_eq!(canonical_word(&w.negated().reversed()), c);
        }
    }

    #[test]
    fn classify_basic() {
        let k = KnotClass::classify_fraction(&5.into(), &2.into()).unwrap();
        assert_eq!(k.canonical.to_string(), "5/2");
        assert_eq!(k.even_word, word(&[2, 2]));
        assert!(k.achiral());
        assert_eq!(k.mirror_of_canonical, k.canonical);

        // Right trefoil 3/2 and its mirror 3/1: same canonical pair, chiral
        // words differ by mirroring.
        let right = KnotClass::classify_fraction(&3.into(), &2.into()).unwrap();
        let left = KnotClass::classify_fraction(&3.into(), &1.into()).unwrap();
        assert_eq!(right.canonical, left.canonical);
        assert_eq!(right.chiral_word, word(&[2, -2]));
        assert_eq!(left.chiral_word, word(&[-2, 2]));
        assert!(!right.achiral());

        // (9,2) has a mirror with an even representative.
        let k92 = KnotClass::classify_fraction(&9.into(), &2.into()).unwrap();
        assert_eq!(k92.mirror_of_canonical.to_string(), "9/4");

        // Torus knot 9/8: the mirror class has no even representative in
        // (0,9); the field falls back to the canonical pair.
        let t29 = KnotClass::classify_fraction(&9.into(), &8.into()).unwrap();
        assert_eq!(t29.canonical.to_string(), "9/8");
        assert_eq!(t29.mirror_of_canonical, t29.canonical);
        assert!(!t29.achiral());

        // Links are rejected; unreduced fractions reduce first (9/3 is the
        // 3-half-twist tangle, a trefoil).
        assert!(KnotClass::classify_fraction(&4.into(), &2.into()).is_err());
        let t = KnotClass::classify_fraction(&9.into(), &3.into()).unwrap();
        assert_eq!(t.canonical.to_string(), "3/2");
    }

    #[test]
    fn classify_word_roundtrip() {
        let k = KnotClass::classify_word(&word(&[2, -2, 2, -2])).unwrap();
        assert_eq!(k.canonical.to_string(), "5/4");
        assert_eq!(k.chiral_word, word(&[2, -2, 2, -2]));
        let sum: BigInt = k.positive_word.entries().iter().sum();
        assert_eq!(sum, BigInt::from(5));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(ConwayWord::parse("2,-2,2,-2").unwrap(), word(&[2, -2, 2, -2]));
        assert!(ConwayWord::parse("2,,3").is_err());
        assert_eq!(SchubertPair::parse("5/2").unwrap().to_string(), "5/2");
        assert!(SchubertPair::parse("4/2").is_err());
        assert!(SchubertPair::parse("52").is_err());
    }
}

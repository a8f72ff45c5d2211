//! Exhaustive censuses of rational knots by crossing number.
//!
//! The enumerator walks even words in evaluation order, depth first, with a
//! remaining-crossing budget (each further entry costs at least one
//! crossing). It yields exactly one representative per canonical-word orbit,
//! i.e. one word per knot up to mirroring: first entry positive and
//! lexicographically minimal against the reversed orbit member.
//!
//! Entries are machine integers here: a word of crossing number n has
//! entries bounded by n+1 and determinant below (1+√2)^n, so i64/i128
//! arithmetic is exact far beyond enumeration range. The signature sum for
//! large n (up to 1000) is a separate dynamic program over (budget, running
//! signature, last sign, length parity) with big-integer counts plus an
//! antipalindromic correction; no enumeration is involved there.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::fraction::ConwayWord;
use crate::num_util::{gcd_u64, mod_inverse_u64, perfect_sqrt_u128};
use crate::{Error, Result};

/// Classification flags a census can filter on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Flag {
    Fibered,
    Positive,
    Achiral,
    U1,
    BleilerCounterexample,
    SigmaZero,
}

impl Flag {
    pub const ALL: [Flag; 6] = [
        Flag::Fibered,
        Flag::Positive,
        Flag::Achiral,
        Flag::U1,
        Flag::BleilerCounterexample,
        Flag::SigmaZero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Fibered => "fibered",
            Flag::Positive => "positive",
            Flag::Achiral => "achiral",
            Flag::U1 => "u1",
            Flag::BleilerCounterexample => "bleiler_counterexample",
            Flag::SigmaZero => "sigma_zero",
        }
    }
}

impl FromStr for Flag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Flag> {
        match s {
            "fibered" | "f" => Ok(Flag::Fibered),
            "positive" | "p" => Ok(Flag::Positive),
            "achiral" | "a" => Ok(Flag::Achiral),
            "u1" | "u" => Ok(Flag::U1),
            "bleiler_counterexample" | "bleiler" => Ok(Flag::BleilerCounterexample),
            "sigma_zero" | "sigma0" => Ok(Flag::SigmaZero),
            _ => Err(Error::Parse(format!("unknown flag '{s}'"))),
        }
    }
}

/// Filter for [`census`]: required flags, forbidden flags, and the mirror
/// counting convention.
#[derive(Debug, Clone, Default)]
pub struct CensusFilter {
    pub require: Vec<Flag>,
    pub forbid: Vec<Flag>,
    /// When set, chiral classes contribute 2 and achiral ones 1.
    pub count_chiral_pairs_twice: bool,
}

impl CensusFilter {
    pub fn requiring(flags: &[Flag]) -> CensusFilter {
        CensusFilter { require: flags.to_vec(), ..Default::default() }
    }

    pub fn pairs_twice(mut self) -> CensusFilter {
        self.count_chiral_pairs_twice = true;
        self
    }

    fn validate(&self) {
        assert!(
            self.require.iter().all(|f| !self.forbid.contains(f)),
            "require and forbid overlap"
        );
    }
}

mod big_string {
    use num_bigint::BigUint;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}

fn rational_string<S: serde::Serializer>(
    v: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
}

/// Aggregated census numbers for one crossing number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub n: u32,
    #[serde(with = "big_string")]
    pub total: BigUint,
    pub by_genus: BTreeMap<u32, u64>,
    /// Signed signature distribution, always with chiral pairs counted
    /// twice (so it sums to the pairs-twice total of the filtered set).
    pub by_signature: BTreeMap<i32, u64>,
    /// Counts of the individual flags and of the standard table-row flag
    /// combinations, under this report's counting convention.
    pub flag_counts: BTreeMap<String, u64>,
    #[serde(serialize_with = "rational_string")]
    pub mean_genus: BigRational,
    #[serde(serialize_with = "rational_string")]
    pub mean_abs_signature: BigRational,
    pub pairs_counted_twice: bool,
}

/// Per-word invariants the census aggregates, all referring to the
/// canonical (first-entry-positive) representative.
#[derive(Debug, Clone, Copy)]
pub struct WordStats {
    pub genus: u32,
    pub signature: i32,
    pub fibered: bool,
    pub positive: bool,
    pub achiral: bool,
    pub u1: bool,
    pub bleiler: bool,
    pub maxcf: u64,
    pub det: u64,
}

impl WordStats {
    pub fn has(&self, flag: Flag) -> bool {
        match flag {
            Flag::Fibered => self.fibered,
            Flag::Positive => self.positive,
            Flag::Achiral => self.achiral,
            Flag::U1 => self.u1,
            Flag::BleilerCounterexample => self.bleiler,
            Flag::SigmaZero => self.signature == 0,
        }
    }
}

// ---------------------------------------------------------------------------
// Small-word helpers (i64 entries, i128 evaluation)

/// Crossing number of an even small word.
pub fn small_crossing(w: &[i64]) -> u64 {
    let mut s = 0i64;
    for (i, &a) in w.iter().enumerate() {
        s += a.abs();
        if i + 1 < w.len() && (a < 0) != (w[i + 1] < 0) {
            s -= 1;
        }
    }
    s as u64
}

fn small_signature(w: &[i64]) -> i32 {
    w.iter()
        .enumerate()
        .map(|(i, &a)| {
            let s = if a < 0 { -1 } else { 1 };
            if i % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .sum()
}

/// `[[w]]` as an exact (num, den) pair, sign-normalized to positive
/// numerator. The empty word gives (1, 0).
pub fn small_eval(w: &[i64]) -> (i128, i128) {
    let (mut num, mut den) = (1i128, 0i128);
    for &a in w.iter().rev() {
        let (n2, d2) = (a as i128 * num + den, num);
        num = n2;
        den = d2;
    }
    if num < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

fn is_canonical_small(w: &[i64]) -> bool {
    debug_assert!(w[0] > 0);
    let last = *w.last().unwrap();
    let n = w.len();
    let flip = if last > 0 { 1 } else { -1 };
    for i in 0..n {
        match w[i].cmp(&(flip * w[n - 1 - i])) {
            std::cmp::Ordering::Less => return true,
            std::cmp::Ordering::Greater => return false,
            std::cmp::Ordering::Equal => {}
        }
    }
    true
}

/// Even representatives (up to mirroring) of the class of q mod p.
fn class_evens(p: u64, q: u64) -> [u64; 2] {
    let e1 = if q % 2 == 0 { q } else { p - q };
    let qinv = mod_inverse_u64(q, p);
    let e2 = if qinv % 2 == 0 { qinv } else { p - qinv };
    [e1, e2]
}

/// All `(m, n)` with `p = 2mn ± 1`, `2n²` an even class representative,
/// `m > n ≥ 1` coprime.
fn u1_decompositions_u64(p: u64, evens: [u64; 2]) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for (idx, &e) in evens.iter().enumerate() {
        if idx == 1 && e == evens[0] {
            continue;
        }
        let Some(n) = perfect_sqrt_u128((e / 2) as u128) else { continue };
        let n = n as u64;
        if n == 0 || e % 2 != 0 {
            continue;
        }
        for s in [1i64, -1] {
            // p = 2mn + s  =>  m = (p - s) / 2n
            let num = (p as i64 - s) as u64;
            if num % (2 * n) == 0 {
                let m = num / (2 * n);
                if m > n && gcd_u64(m, n) == 1 && !out.contains(&(m, n)) {
                    out.push((m, n));
                }
            }
        }
    }
    out
}

/// Invariants of one canonical small word.
pub fn stats_for_small_word(w: &[i64]) -> WordStats {
    let genus = (w.len() / 2) as u32;
    let signature = small_signature(w);
    let fibered = w.iter().all(|&a| a.abs() == 2);
    let positive = w.iter().enumerate().all(|(i, &a)| (a < 0) == (i % 2 == 1));
    let achiral = (0..w.len() / 2).all(|i| w[i] == w[w.len() - 1 - i]);
    let (num, den) = small_eval(w);
    debug_assert!(num > 1 && den > 0 && den < num);
    let p = num as u64;
    let q = (den as u64) % p;
    let decomps = u1_decompositions_u64(p, class_evens(p, q));
    let u1 = !decomps.is_empty();
    let deep: Vec<_> = decomps.iter().filter(|(_, n)| *n > 1).collect();
    let bleiler = !deep.is_empty() && deep.iter().all(|(m, n)| m % 2 == 1 && n % 2 == 1);
    let maxcf = {
        let prod: i128 = w.iter().map(|&a| a.abs() as i128).product();
        (prod >> w.len()) as u64
    };
    WordStats { genus, signature, fibered, positive, achiral, u1, bleiler, maxcf, det: p }
}

// ---------------------------------------------------------------------------
// Enumeration

/// Restriction on the entry alphabet during enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EntrySet {
    AllEven,
    /// Only ±2 (fibered knots).
    PlusMinusTwo,
}

fn dfs(n: u64, used: u64, entries: EntrySet, word: &mut Vec<i64>, visit: &mut impl FnMut(&[i64])) {
    let remaining = n - used;
    if remaining == 0 {
        if word.len() % 2 == 0 && is_canonical_small(word) {
            visit(word);
        }
        return;
    }
    // From even length, at least two more entries are needed (cost ≥ 2).
    if word.len() % 2 == 0 && remaining == 1 {
        return;
    }
    let prev_neg = *word.last().unwrap() < 0;
    for sign in [1i64, -1] {
        let discount = u64::from((sign < 0) != prev_neg);
        let max_mag = remaining + discount;
        let top_v = match entries {
            EntrySet::AllEven => max_mag / 2,
            EntrySet::PlusMinusTwo => 1.min(max_mag / 2),
        };
        for v in 1..=top_v {
            let mag = 2 * v;
            let cost = mag - discount;
            if cost == 0 || cost > remaining {
                continue;
            }
            word.push(sign * mag as i64);
            dfs(n, used + cost, entries, word, visit);
            word.pop();
        }
    }
}

/// Seeds the DFS with a fixed prefix; `visit` sees complete canonical words.
fn for_each_with_prefix(n: u64, prefix: &[i64], entries: EntrySet, visit: &mut impl FnMut(&[i64])) {
    let used = small_crossing(prefix);
    if used > n {
        return;
    }
    let mut word = prefix.to_vec();
    dfs(n, used, entries, &mut word, visit);
}

fn first_entries(n: u64, entries: EntrySet) -> Vec<i64> {
    let cap = match entries {
        EntrySet::AllEven => n.saturating_sub(1),
        EntrySet::PlusMinusTwo => 2,
    };
    (1..=cap / 2).map(|v| 2 * v as i64).collect()
}

/// The work partition used by the parallel census: all viable two-entry
/// prefixes (first entry positive). Every word has length ≥ 2, so the
/// partition is exhaustive and disjoint.
fn prefix_pairs(n: u64, entries: EntrySet) -> Vec<[i64; 2]> {
    let mut out = Vec::new();
    for first in first_entries(n, entries) {
        for sign in [1i64, -1] {
            let discount = u64::from(sign < 0);
            let max_mag = n - first as u64 + discount;
            let top_v = match entries {
                EntrySet::AllEven => max_mag / 2,
                EntrySet::PlusMinusTwo => 1.min(max_mag / 2),
            };
            for v in 1..=top_v {
                let mag = 2 * v;
                if mag - discount == 0 || mag - discount > n - first as u64 {
                    continue;
                }
                out.push([first, sign * mag as i64]);
            }
        }
    }
    out
}

/// Visits every canonical even word of crossing number exactly n (one
/// representative per knot up to mirroring), sequentially in deterministic
/// order.
pub fn for_each_canonical_word_seq(n: u64, visit: &mut impl FnMut(&[i64])) {
    assert!(n >= 3, "rational knots need at least 3 crossings");
    for prefix in prefix_pairs(n, EntrySet::AllEven) {
        for_each_with_prefix(n, &prefix, EntrySet::AllEven, visit);
    }
}

/// Same, restricted to fibered words (entries ±2).
pub fn for_each_fibered_word_seq(n: u64, visit: &mut impl FnMut(&[i64])) {
    assert!(n >= 3);
    for prefix in prefix_pairs(n, EntrySet::PlusMinusTwo) {
        for_each_with_prefix(n, &prefix, EntrySet::PlusMinusTwo, visit);
    }
}

fn achiral_half_dfs(budget: u64, used: u64, half: &mut Vec<i64>, emit: &mut impl FnMut(&[i64])) {
    if used == budget {
        // Extensions only add cost, so this half is complete.
        let mut w: Vec<i64> = half.clone();
        w.extend(half.iter().rev().copied());
        emit(&w);
        return;
    }
    let remaining = budget - used;
    let prev_neg = *half.last().unwrap() < 0;
    for sign in [1i64, -1] {
        let discount = u64::from((sign < 0) != prev_neg);
        for v in 1..=(remaining + discount) / 2 {
            let mag = 2 * v;
            let cost = mag - discount;
            if cost == 0 || cost > remaining {
                continue;
            }
            half.push(sign * mag as i64);
            achiral_half_dfs(budget, used + cost, half, emit);
            half.pop();
        }
    }
}

/// Visits every canonical palindromic word of crossing number n (the
/// achiral knots), built directly from half-words; only even n occur. The
/// palindrome `(h, reverse h)` has crossing number `2 · cr(h)` and its
/// symmetry orbit is `{w, -w}`, so first-entry-positive halves are exactly
/// the canonical representatives.
pub fn for_each_achiral_word_seq(n: u64, visit: &mut impl FnMut(&[i64])) {
    assert!(n >= 3);
    if n % 2 != 0 {
        return;
    }
    let budget = n / 2;
    for v in 1..=budget / 2 {
        let first = 2 * v as i64;
        let mut half = vec![first];
        achiral_half_dfs(budget, first as u64, &mut half, visit);
    }
}

/// Collected canonical even words of crossing number n, sorted.
pub fn enumerate_even_words(n: u64) -> Vec<ConwayWord> {
    let mut out = Vec::new();
    for_each_canonical_word_seq(n, &mut |w| {
        out.push(ConwayWord::new(w.iter().map(|&e| BigInt::from(e)).collect()));
    });
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Census aggregation

#[derive(Default, Clone)]
struct Accum {
    total: u64,
    by_genus: BTreeMap<u32, u64>,
    by_signature: BTreeMap<i32, u64>,
    flag_counts: BTreeMap<String, u64>,
    genus_sum: u64,
    abs_sig_sum: u64,
}

impl Accum {
    fn merge(mut self, other: Accum) -> Accum {
        self.total += other.total;
        for (k, v) in other.by_genus {
            *self.by_genus.entry(k).or_default() += v;
        }
        for (k, v) in other.by_signature {
            *self.by_signature.entry(k).or_default() += v;
        }
        for (k, v) in other.flag_counts {
            *self.flag_counts.entry(k).or_default() += v;
        }
        self.genus_sum += other.genus_sum;
        self.abs_sig_sum += other.abs_sig_sum;
        self
    }

    fn record(&mut self, stats: &WordStats, filter: &CensusFilter) {
        if !filter.require.iter().all(|&f| stats.has(f))
            || filter.forbid.iter().any(|&f| stats.has(f))
        {
            return;
        }
        let weight = if filter.count_chiral_pairs_twice && !stats.achiral { 2 } else { 1 };
        self.total += weight;
        *self.by_genus.entry(stats.genus).or_default() += weight;
        *self.by_signature.entry(stats.signature).or_default() += 1;
        if !stats.achiral {
            *self.by_signature.entry(-stats.signature).or_default() += 1;
        }
        self.genus_sum += stats.genus as u64 * weight;
        self.abs_sig_sum += stats.signature.unsigned_abs() as u64 * weight;
        for f in Flag::ALL {
            if stats.has(f) {
                *self.flag_counts.entry(f.name().to_string()).or_default() += weight;
            }
        }
        for (name, combo) in [
            ("fibered_achiral", [Flag::Fibered, Flag::Achiral]),
            ("achiral_u1", [Flag::Achiral, Flag::U1]),
            ("fibered_u1", [Flag::Fibered, Flag::U1]),
        ] {
            if combo.iter().all(|&f| stats.has(f)) {
                *self.flag_counts.entry(name.to_string()).or_default() += weight;
            }
        }
    }

    fn into_report(self, n: u64, filter: &CensusFilter) -> CensusReport {
        let denom = BigInt::from(self.total.max(1));
        CensusReport {
            n: n as u32,
            total: BigUint::from(self.total),
            by_genus: self.by_genus,
            by_signature: self.by_signature,
            flag_counts: self.flag_counts,
            mean_genus: BigRational::new(BigInt::from(self.genus_sum), denom.clone()),
            mean_abs_signature: BigRational::new(BigInt::from(self.abs_sig_sum), denom),
            pairs_counted_twice: filter.count_chiral_pairs_twice,
        }
    }
}

fn entry_set_for(filter: &CensusFilter) -> EntrySet {
    if filter.require.contains(&Flag::Fibered) {
        EntrySet::PlusMinusTwo
    } else {
        EntrySet::AllEven
    }
}

/// Full census at crossing number n, sequential reference path.
pub fn census_seq(n: u64, filter: &CensusFilter) -> CensusReport {
    filter.validate();
    let entries = entry_set_for(filter);
    let mut acc = Accum::default();
    for prefix in prefix_pairs(n, entries) {
        for_each_with_prefix(n, &prefix, entries, &mut |w| {
            acc.record(&stats_for_small_word(w), filter);
        });
    }
    acc.into_report(n, filter)
}

/// Full census at crossing number n. With the `parallel` feature the word
/// tree is partitioned by its first two entries and partial reports are
/// merged by summation, so the result is identical for any worker count.
#[cfg(feature = "parallel")]
pub fn census(n: u64, filter: &CensusFilter) -> CensusReport {
    use rayon::prelude::*;
    filter.validate();
    let entries = entry_set_for(filter);
    let acc = prefix_pairs(n, entries)
        .par_iter()
        .map(|prefix| {
            let mut acc = Accum::default();
            for_each_with_prefix(n, prefix, entries, &mut |w| {
                acc.record(&stats_for_small_word(w), filter);
            });
            acc
        })
        .reduce(Accum::default, Accum::merge);
    acc.into_report(n, filter)
}

#[cfg(not(feature = "parallel"))]
pub fn census(n: u64, filter: &CensusFilter) -> CensusReport {
    census_seq(n, filter)
}

/// Census restricted to achiral knots via direct palindrome construction
/// (cheap far beyond full enumeration range). The filter must require
/// [`Flag::Achiral`].
pub fn census_achiral(n: u64, filter: &CensusFilter) -> CensusReport {
    filter.validate();
    assert!(filter.require.contains(&Flag::Achiral));
    let mut acc = Accum::default();
    for_each_achiral_word_seq(n, &mut |w| {
        acc.record(&stats_for_small_word(w), filter);
    });
    acc.into_report(n, filter)
}

// ---------------------------------------------------------------------------
// Unknotting-number-one census by determinant

/// Number of distinct unknotting-number-one rational knots of determinant p
/// (odd, ≥ 5), up to mirroring; `oriented` counts chiral pairs twice.
pub fn census_u1_by_determinant(p: u64, oriented: bool) -> u64 {
    assert!(p >= 5 && p % 2 == 1, "need odd p ≥ 5");
    let mut classes: BTreeSet<u64> = BTreeSet::new();
    for s in [1i64, -1] {
        let half = ((p as i64 - s) / 2) as u64; // p = 2mn + s
        let mut n = 1;
        while n * n <= half {
            if half % n == 0 {
                let m = half / n;
                if m > n && gcd_u64(m, n) == 1 {
                    let q = (2 * n * n) % p;
                    let evens = class_evens(p, q);
                    classes.insert(evens[0].min(evens[1]));
                }
            }
            n += 1;
        }
    }
    if oriented {
        classes
            .iter()
            .map(|&q| {
                let amphi = (q as u128 * q as u128) % (p as u128) == (p - 1) as u128;
                if amphi {
                    1
                } else {
                    2
                }
            })
            .sum()
    } else {
        classes.len() as u64
    }
}

// ---------------------------------------------------------------------------
// Signature sum by dynamic programming

struct Layer {
    counts: Vec<BigUint>,
}

impl Layer {
    fn new(width: usize) -> Layer {
        Layer { counts: vec![BigUint::zero(); width * 4] }
    }

    #[inline]
    fn idx(sig: usize, s: usize, par: usize) -> usize {
        (sig * 2 + s) * 2 + par
    }

    fn zero(&mut self) {
        for c in &mut self.counts {
            c.set_zero();
        }
    }
}

/// `Σ |σ(K)|` over rational knots of crossing number c, up to mirroring,
/// for every c ≤ n; index c of the result holds the value at c.
///
/// Knots are counted via their word orbits: the orbit average reduces to
/// half the sum over first-entry-positive words plus half the
/// antipalindromic correction (palindromic words have σ = 0), and the
/// correction is a half-word sum at budget (c+1)/2. DP states are (budget,
/// running signature, sign of the last entry, length parity); the geometric
/// sum over entry magnitudes is folded into cumulative layers with budget
/// step two, so only three layers of (2n+1)·4 big integers are live.
/// Conceptually the state space is n·(2n+1)·4.
pub fn sum_abs_signature_upto(n: u64) -> Vec<BigUint> {
    let n = n as usize;
    let width = 2 * n + 1; // signature index range: sig + n in [0, 2n]
    let offset = n as i64;
    let mut full_sums: Vec<BigUint> = vec![BigUint::zero(); n + 1];
    let mut half_sums: Vec<BigUint> = vec![BigUint::zero(); n + 1];

    let mut a_prev1 = Layer::new(width); // A[c-1], where A[c] = g[c] + A[c-2]
    let mut a_prev2 = Layer::new(width); // A[c-2]
    let mut g = Layer::new(width);

    for c in 1..=n {
        g.zero();
        for sig_idx in 0..width {
            for s in 0..2usize {
                let sgn = if s == 0 { 1i64 } else { -1 };
                for par in 0..2usize {
                    // σ contribution of an entry whose position has this
                    // parity (par = 1 ⟺ odd position).
                    let dsig = if par == 1 { sgn } else { -sgn };
                    let src_sig = sig_idx as i64 - dsig;
                    if !(0..width as i64).contains(&src_sig) {
                        continue;
                    }
                    let src = src_sig as usize;
                    let slot = Layer::idx(sig_idx, s, par);
                    for sprev in 0..2usize {
                        let delta = usize::from(sprev != s);
                        if c + delta < 2 {
                            continue; // source budget c-2+delta < 0
                        }
                        let layer = if delta == 1 { &a_prev1 } else { &a_prev2 };
                        let v = &layer.counts[Layer::idx(src, sprev, 1 - par)];
                        g.counts[slot] += v;
                    }
                }
            }
        }
        // Base case: a single positive entry of magnitude c (even c).
        if c % 2 == 0 && c >= 2 {
            let slot = Layer::idx((1 + offset) as usize, 0, 1);
            g.counts[slot] += 1u32;
        }

        let mut full = BigUint::zero();
        let mut half = BigUint::zero();
        for sig_idx in 0..width {
            let w = (sig_idx as i64 - offset).unsigned_abs();
            if w == 0 {
                continue;
            }
            for s in 0..2usize {
                full += &g.counts[Layer::idx(sig_idx, s, 0)] * w;
                half += (&g.counts[Layer::idx(sig_idx, s, 0)]
                    + &g.counts[Layer::idx(sig_idx, s, 1)])
                    * w;
            }
        }
        full_sums[c] = full;
        half_sums[c] = half;

        // A[c] = g[c] + A[c-2]; rotate so a_prev1 = A[c], a_prev2 = A[c-1].
        for i in 0..width * 4 {
            let prev = std::mem::take(&mut a_prev2.counts[i]);
            g.counts[i] += prev;
        }
        std::mem::swap(&mut a_prev2, &mut a_prev1);
        std::mem::swap(&mut a_prev1, &mut g);
    }

    let mut out = vec![BigUint::zero(); n + 1];
    for c in 3..=n {
        let mut total = full_sums[c].clone();
        if c % 2 == 1 {
            total += &half_sums[(c + 1) / 2] * 2u32;
        }
        let (q, r) = num_integer::Integer::div_rem(&total, &BigUint::from(2u32));
        assert!(r.is_zero(), "signature sum parity violated at n={c}");
        out[c] = q;
    }
    out
}

/// `Σ |σ(K)|` over rational knots of exactly n crossings, up to mirroring.
pub fn sum_abs_signature(n: u64) -> BigUint {
    sum_abs_signature_upto(n).pop().unwrap()
}

// ---------------------------------------------------------------------------

/// CSV rendering for sweep output; one row per crossing number.
pub fn csv_header() -> &'static str {
    "n,total,mean_genus,mean_abs_signature,pairs_twice,flag_counts"
}

pub fn csv_row(r: &CensusReport) -> String {
    format!(
        "{},{},{}/{},{}/{},{},{}",
        r.n,
        r.total,
        r.mean_genus.numer(),
        r.mean_genus.denom(),
        r.mean_abs_signature.numer(),
        r.mean_abs_signature.denom(),
        r.pairs_counted_twice,
        r.flag_counts.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(n: u64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for_each_canonical_word_seq(n, &mut |w| out.push(w.to_vec()));
        out.sort();
        out
    }

    #[test]
    fn small_word_basics() {
        assert_eq!(small_crossing(&[2, 2]), 4);
        assert_eq!(small_crossing(&[2, -2, 2, -2]), 5);
        assert_eq!(small_eval(&[2, 2]), (5, 2));
        assert_eq!(small_eval(&[2, -2]), (3, 2));
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(words(3), vec![vec![2, -2]]);
        assert_eq!(words(4), vec![vec![2, 2]]);
        // The 5-crossing knots: the (2,5) torus knot and the twist knot
        // with determinant 9 (canonical representative of the (4,-2) orbit).
        assert_eq!(words(5), vec![vec![2, -4], vec![2, -2, 2, -2]]);
    }

    /// Independent brute-force oracle: generate all even words with entry
    /// magnitude sum ≤ 2n, filter by exact crossing number and
    /// canonicality.
    fn brute_words(n: u64) -> Vec<Vec<i64>> {
        fn gen(sum_left: i64, word: &mut Vec<i64>, out: &mut Vec<Vec<i64>>, n: u64) {
            if !word.is_empty() && word.len() % 2 == 0 {
                if small_crossing(word) == n && word[0] > 0 && is_canonical_small(word) {
                    out.push(word.clone());
                }
            }
            let mut mag = 2i64;
            while mag <= sum_left {
                for sign in [1i64, -1] {
                    word.push(sign * mag);
                    gen(sum_left - mag, word, out, n);
                    word.pop();
                }
                mag += 2;
            }
        }
        let mut out = Vec::new();
        let mut word = Vec::new();
        gen(2 * n as i64, &mut word, &mut out, n);
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn generator_matches_brute_force() {
        for n in 3..=11 {
            assert_eq!(words(n), brute_words(n), "n={n}");
        }
    }

    #[test]
    fn census_matches_table_rows_small() {
        // fibered row at n = 9 is 7, at n = 8 is 4.
        let f = CensusFilter::requiring(&[Flag::Fibered]);
        assert_eq!(census(9, &f).total, 7u32.into());
        assert_eq!(census(8, &f).total, 4u32.into());
        // fibered ∧ achiral at n = 16 is 13.
        let fa = CensusFilter::requiring(&[Flag::Fibered, Flag::Achiral]);
        assert_eq!(census(16, &fa).total, 13u32.into());
        // σ = 0 with pairs counted twice at n = 10 is 29.
        let s0 = CensusFilter::requiring(&[Flag::SigmaZero]).pairs_twice();
        assert_eq!(census(10, &s0).total, 29u32.into());
        // unknotting number one at n = 13 is 31; positive at n = 13 is 76.
        assert_eq!(census(13, &CensusFilter::requiring(&[Flag::U1])).total, 31u32.into());
        assert_eq!(census(13, &CensusFilter::requiring(&[Flag::Positive])).total, 76u32.into());
    }

    #[test]
    fn parallel_and_sequential_agree() {
        for n in [7u64, 10, 12] {
            let filter = CensusFilter::default().pairs_twice();
            assert_eq!(census(n, &filter), census_seq(n, &filter));
        }
    }

    #[test]
    fn achiral_specialization_agrees() {
        for n in [8u64, 10, 12, 14] {
            let filter = CensusFilter::requiring(&[Flag::Achiral]);
            let direct = census_achiral(n, &filter);
            let general = census(n, &filter);
            assert_eq!(direct.total, general.total, "n={n}");
            assert_eq!(direct.by_genus, general.by_genus, "n={n}");
        }
    }

    #[test]
    fn u1_census_by_determinant_examples() {
        assert_eq!(census_u1_by_determinant(5, false), 1);
        assert_eq!(census_u1_by_determinant(29, false), 2);
        assert_eq!(census_u1_by_determinant(9, false), 1);
        assert_eq!(census_u1_by_determinant(5, true), 1); // figure-eight is achiral
        assert_eq!(census_u1_by_determinant(29, true), 4);
    }

    #[test]
    fn signature_sum_small() {
        let sums = sum_abs_signature_upto(8);
        assert_eq!(sums[3], 2u32.into());
        assert_eq!(sums[4], 0u32.into());
        assert_eq!(sums[5], 6u32.into());
    }

    #[test]
    fn signature_sum_matches_enumeration() {
        let sums = sum_abs_signature_upto(14);
        for n in 3..=14u64 {
            let mut direct = 0u64;
            for_each_canonical_word_seq(n, &mut |w| {
                direct += small_signature(w).unsigned_abs() as u64;
            });
            assert_eq!(sums[n as usize], direct.into(), "n={n}");
        }
    }
}

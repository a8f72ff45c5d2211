//! Lens spaces by fundamental group, via rational knots by determinant.
//!
//! For odd p the number of lens spaces with fundamental group ℤ_p is
//! `(φ(p) + r₂⁰(p) + 2^ω(p))/4` up to mirroring and `(φ(p) + 2^ω(p))/2`
//! distinguishing mirrors. The ones obtainable by p/±2 surgery correspond
//! to unknotting-number-one rational knots of determinant p and are counted
//! by `2^{ω((p+1)/2)-1} + 2^{ω((p-1)/2)-1} - 1`, with -2 instead of -1 on
//! the exceptional determinants p_s (where one knot is represented twice).
//! Distinguishing mirrors doubles the count except on the two achiral
//! series, whose determinants are N = {2n²+2n+1} and S = {q_s}.
//!
//! The sequences satisfy `p_s = 6p_{s-1} - p_{s-2}` and
//! `q_s = 15(q_{s-1} - q_{s-2}) + q_{s-3}`; their closed forms are
//! evaluated in ℤ[√2] and ℤ[√3] rather than with floating point.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::fraction::eval_cf;
use crate::num_util::perfect_sqrt_u128;

// ---------------------------------------------------------------------------
// Factorization

const SIEVE_LIMIT: usize = 1_000_000;

fn spf_sieve() -> &'static Vec<u32> {
    use std::sync::OnceLock;
    static SIEVE: OnceLock<Vec<u32>> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let mut spf = vec![0u32; SIEVE_LIMIT + 1];
        for i in 2..=SIEVE_LIMIT {
            if spf[i] == 0 {
                let mut j = i;
                while j <= SIEVE_LIMIT {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        spf
    })
}

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    // Shift-and-add for moduli beyond 64 bits (m < 2^127 here).
    let mut a = a % m;
    let mut b = b % m;
    let mut r = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            r = (r + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    r
}

fn powmod(mut a: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1u128 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for n < 3.3·10²⁴ (first thirteen prime
/// bases), which covers every value this crate factors.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    assert!(
        n < 3_317_044_064_679_887_385_961_981,
        "primality certification range exceeded"
    );
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'bases: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128) -> u128 {
    // n is odd, composite, with no factor below the sieve limit.
    let mut c = 1u128;
    loop {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = if x > y { x - y } else { y - x };
            d = num_integer::gcd(diff, n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as (prime, multiplicity) pairs, sorted.
pub fn factor(mut n: u128) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    let push = |p: u128, out: &mut Vec<(u128, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    if n <= 1 {
        return out;
    }
    // Small part by sieve lookup.
    let sieve = spf_sieve();
    while n > 1 && n <= SIEVE_LIMIT as u128 {
        let p = sieve[n as usize] as u128;
        push(p, &mut out);
        n /= p;
    }
    if n > 1 {
        // Trial division by sieve primes, then recursive rho splitting.
        let mut p = 2u128;
        while p * p <= n && p <= SIEVE_LIMIT as u128 {
            if spf_sieve()[p as usize] as u128 == p {
                while n % p == 0 {
                    push(p, &mut out);
                    n /= p;
                }
            }
            p += 1;
        }
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if m == 1 {
                continue;
            }
            if is_prime(m) {
                push(m, &mut out);
            } else {
                let d = pollard_rho(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
    }
    out.sort();
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut out = n;
    for (p, _) in factor(n as u128) {
        out = out / p as u64 * (p as u64 - 1);
    }
    out
}

/// Number of distinct prime divisors.
pub fn omega(n: u128) -> u32 {
    factor(n).len() as u32
}

/// Ordered coprime pairs (a, b) ∈ ℕ² with a² + b² = p.
pub fn r2_0(p: u64) -> u64 {
    let mut count = 0;
    let mut a = 1u64;
    while a * a < p {
        let rest = p - a * a;
        if let Some(b) = perfect_sqrt_u128(rest as u128) {
            let b = b as u64;
            if b >= 1 && num_integer::gcd(a, b) == 1 {
                count += 1;
            }
        }
        a += 1;
    }
    count
}

/// Lens spaces with fundamental group ℤ_p (odd p ≥ 3):
/// `(φ+r₂⁰+2^ω)/4` up to mirroring, `(φ+2^ω)/2` with mirrors
/// distinguished.
pub fn lens_count(p: u64, oriented: bool) -> u64 {
    assert!(p >= 3 && p % 2 == 1, "need odd p ≥ 3");
    let phi = euler_phi(p);
    let pow = 1u64 << omega(p as u128);
    if oriented {
        let v = phi + pow;
        assert!(v % 2 == 0);
        v / 2
    } else {
        let v = phi + r2_0(p) + pow;
        assert!(v % 4 == 0, "lens count must divide out exactly at p={p}");
        v / 4
    }
}

/// Brute-force oracle: orbits of ℤ_p^* under q ↦ ±q^{±1} (unoriented) or
/// q ↦ q^{±1} (oriented).
pub fn lens_count_brute(p: u64, oriented: bool) -> u64 {
    use crate::num_util::mod_inverse_u64;
    let mut seen = vec![false; p as usize];
    let mut orbits = 0;
    for q in 1..p {
        if num_integer::gcd(q, p) != 1 || seen[q as usize] {
            continue;
        }
        orbits += 1;
        let qi = mod_inverse_u64(q, p);
        let members: &[u64] = &[q, qi, p - q, p - qi];
        let taken = if oriented { &members[..2] } else { members };
        for &m in taken {
            seen[m as usize] = true;
        }
    }
    orbits
}

// ---------------------------------------------------------------------------
// Quadratic integer rings and the exceptional sequences

/// `a + b√d` with big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
    pub d: u32,
}

impl QuadInt {
    pub fn new(a: i64, b: i64, d: u32) -> QuadInt {
        QuadInt { a: a.into(), b: b.into(), d }
    }

    pub fn mul(&self, rhs: &QuadInt) -> QuadInt {
        assert_eq!(self.d, rhs.d);
        QuadInt {
            a: &self.a * &rhs.a + &self.b * &rhs.b * BigInt::from(self.d),
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d,
        }
    }

    pub fn pow(&self, e: u32) -> QuadInt {
        let mut acc = QuadInt { a: BigInt::one(), b: BigInt::zero(), d: self.d };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// p_s by linear recursion: 29, 169, then 6p_{s-1} - p_{s-2}.
pub fn p_seq(s: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::from(29), BigInt::from(169));
    match s {
        0 => return a,
        1 => return b,
        _ => {}
    }
    for _ in 2..=s {
        let c = BigInt::from(6) * &b - &a;
        a = b;
        b = c;
    }
    b
}

/// q_s by linear recursion: 65, 901, 12545, then 15(q_{s-1}-q_{s-2}) + q_{s-3}.
pub fn q_seq(s: u32) -> BigInt {
    let mut q = [BigInt::from(65), BigInt::from(901), BigInt::from(12545)];
    if s < 3 {
        return q[s as usize].clone();
    }
    for _ in 3..=s {
        let next = BigInt::from(15) * (&q[2] - &q[1]) + &q[0];
        q = [q[1].clone(), q[2].clone(), next];
    }
    q[2].clone()
}

/// Closed form of p_s in ℤ[√2]:
/// `((58-41√2)(3-2√2)^s + (58+41√2)(3+2√2)^s) / 4`.
pub fn p_seq_closed(s: u32) -> BigInt {
    let unit = QuadInt::new(3, 2, 2).pow(s);
    let lead = QuadInt::new(58, 41, 2).mul(&unit);
    // Adding the conjugate pair leaves twice the rational part.
    let sum = BigInt::from(2) * lead.a;
    let (v, r) = sum.div_rem(&BigInt::from(4));
    assert!(r.is_zero());
    v
}

/// Closed form of q_s in ℤ[√3]:
/// `((97-56√3)(2-√3)^{2s} + (97+56√3)(2+√3)^{2s} + 1) / 3`.
pub fn q_seq_closed(s: u32) -> BigInt {
    let unit = QuadInt::new(2, 1, 3).pow(2 * s);
    let lead = QuadInt::new(97, 56, 3).mul(&unit);
    let sum = BigInt::from(2) * lead.a + BigInt::one();
    let (v, r) = sum.div_rem(&BigInt::from(3));
    assert!(r.is_zero());
    v
}

/// Whether p is one of the p_s.
pub fn is_ps(p: &BigInt) -> bool {
    let mut s = 0;
    loop {
        let v = p_seq(s);
        if &v == p {
            return true;
        }
        if &v > p {
            return false;
        }
        s += 1;
    }
}

/// Whether p ∈ N = {2n²+2n+1 : n ≥ 1}, i.e. 2p-1 is an odd square > 1.
pub fn in_n(p: &BigInt) -> bool {
    let v = BigInt::from(2) * p - BigInt::one();
    if !v.is_positive() {
        return false;
    }
    let r = v.sqrt();
    &r * &r == v && r.is_odd() && r > BigInt::from(1)
}

/// Whether p ∈ S = {q_s : s ≥ 0}.
pub fn in_s(p: &BigInt) -> bool {
    let mut s = 0;
    loop {
        let v = q_seq(s);
        if &v == p {
            return true;
        }
        if &v > p {
            return false;
        }
        s += 1;
    }
}

/// Lens spaces with group ℤ_p obtainable by p/±2 surgery (odd p ≥ 5):
/// up to mirroring `2^{ω((p+1)/2)-1} + 2^{ω((p-1)/2)-1} - 1` (or -2 on the
/// p_s); with mirrors distinguished, twice that minus the achiral
/// corrections for p ∈ N and p ∈ S.
pub fn u1_lens_count(p: u64, oriented: bool) -> u64 {
    assert!(p >= 5 && p % 2 == 1, "need odd p ≥ 5");
    let term = |h: u64| 1u64 << (omega(h as u128) - 1);
    let base = term((p + 1) / 2) + term((p - 1) / 2);
    let pb = BigInt::from(p);
    let unoriented = base - if is_ps(&pb) { 2 } else { 1 };
    if oriented {
        2 * unoriented - u64::from(in_n(&pb)) - u64::from(in_s(&pb))
    } else {
        unoriented
    }
}

/// One row of the lens-space sweep table.
#[derive(Debug, Clone, Serialize)]
pub struct LensCount {
    pub p: u64,
    pub unoriented: u64,
    pub oriented: u64,
    pub u1_unoriented: u64,
    pub u1_oriented: u64,
    pub is_ps: bool,
    pub in_n: bool,
    pub in_s: bool,
}

pub fn lens_row(p: u64) -> LensCount {
    let pb = BigInt::from(p);
    LensCount {
        p,
        unoriented: lens_count(p, false),
        oriented: lens_count(p, true),
        u1_unoriented: u1_lens_count(p, false),
        u1_oriented: u1_lens_count(p, true),
        is_ps: is_ps(&pb),
        in_n: in_n(&pb),
        in_s: in_s(&pb),
    }
}

/// All rows for odd 5 ≤ p ≤ max, in order; parallel when available.
#[cfg(feature = "parallel")]
pub fn lens_sweep(max_p: u64) -> Vec<LensCount> {
    use rayon::prelude::*;
    let ps: Vec<u64> = (5..=max_p).filter(|p| p % 2 == 1).collect();
    ps.par_iter().map(|&p| lens_row(p)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn lens_sweep(max_p: u64) -> Vec<LensCount> {
    lens_sweep_seq(max_p)
}

pub fn lens_sweep_seq(max_p: u64) -> Vec<LensCount> {
    (5..=max_p).filter(|p| p % 2 == 1).map(lens_row).collect()
}

pub fn lens_csv_header() -> &'static str {
    "p,unoriented,oriented,u1_unoriented,u1_oriented,is_ps,in_N,in_S"
}

pub fn lens_csv_row(r: &LensCount) -> String {
    format!(
        "{},{},{},{},{},{},{},{}",
        r.p, r.unoriented, r.oriented, r.u1_unoriented, r.u1_oriented, r.is_ps, r.in_n, r.in_s
    )
}

// ---------------------------------------------------------------------------
// The hyperelliptic search

/// Solutions of q_s = 2n²+2n+1 with 0 ≤ s ≤ max_s, i.e. s such that
/// 2q_s - 1 is an odd perfect square.
pub fn sn_search(max_s: u32) -> Vec<(u32, BigUint)> {
    let mut out = Vec::new();
    let mut q = [BigInt::from(65), BigInt::from(901), BigInt::from(12545)];
    for s in 0..=max_s {
        let qs = if s < 3 {
            q[s as usize].clone()
        } else {
            let next = BigInt::from(15) * (&q[2] - &q[1]) + &q[0];
            q = [q[1].clone(), q[2].clone(), next];
            q[2].clone()
        };
        let v = BigInt::from(2) * &qs - BigInt::one();
        // Cheap square filter before the big-integer root.
        let rem64 = num_traits::ToPrimitive::to_u64(&(&v % BigInt::from(64))).unwrap();
        if ![0, 1, 4, 9, 16, 17, 25, 33, 36, 41, 49, 57].contains(&rem64) {
            continue;
        }
        let r = v.sqrt();
        if &r * &r == v && r.is_odd() {
            let n = (&r - BigInt::one()) / BigInt::from(2);
            out.push((s, n.to_biguint().unwrap()));
        }
    }
    out
}

/// Whether x gives an integer point on `y² = 3x⁴ + 2x² - 5`.
pub fn elliptic_point(x: i64) -> bool {
    let x2 = (x as i128 * x as i128) as u128;
    let rhs = 3u128.checked_mul(x2 * x2).and_then(|v| v.checked_add(2 * x2)).unwrap();
    if rhs < 5 {
        return false;
    }
    perfect_sqrt_u128(rhs - 5).is_some()
}

/// All x in [0, x_max] on the curve (negative x mirror these).
pub fn elliptic_search(x_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for x in 0..=x_max {
        if elliptic_point(x as i64) {
            out.push(x);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Determinants of the exceptional word series

/// Determinant (numerator magnitude) of an integer word.
fn word_determinant(word: &[i64]) -> BigUint {
    let entries: Vec<BigInt> = word.iter().map(|&e| BigInt::from(e)).collect();
    eval_cf(&entries).numerator().magnitude().clone()
}

/// The two duplication word families by repetition count k ≥ 1:
/// `(4 -2)^k -2 2 (-4 2)^{k-1}` and `(2 -4)^k 2 2 (-2 4)^k`. Their
/// determinants interleave to the p_s sequence.
pub fn duplication_determinants(k_max: u32) -> (Vec<BigUint>, Vec<BigUint>) {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for k in 1..=k_max {
        let mut w = Vec::new();
        for _ in 0..k {
            w.extend_from_slice(&[4, -2]);
        }
        w.extend_from_slice(&[-2, 2]);
        for _ in 0..k - 1 {
            w.extend_from_slice(&[-4, 2]);
        }
        first.push(word_determinant(&w));

        let mut w = Vec::new();
        for _ in 0..k {
            w.extend_from_slice(&[2, -4]);
        }
        w.extend_from_slice(&[2, 2]);
        for _ in 0..k {
            w.extend_from_slice(&[-2, 4]);
        }
        second.push(word_determinant(&w));
    }
    (first, second)
}

/// Determinants of the achiral positive-word series `(3 (12)^k 1⁴ (21)^k 3)`
/// for 0 ≤ k ≤ k_max; these are the q_s.
pub fn achiral_series_determinants(k_max: u32) -> Vec<BigUint> {
    let mut out = Vec::new();
    for k in 0..=k_max {
        let mut w = vec![3i64];
        for _ in 0..k {
            w.extend_from_slice(&[1, 2]);
        }
        w.extend_from_slice(&[1, 1, 1, 1]);
        for _ in 0..k {
            w.extend_from_slice(&[2, 1]);
        }
        w.push(3);
        out.push(word_determinant(&w));
    }
    out
}

/// Determinants of the twist-like achiral series `(n 1 1 n)`:
/// `2n² + 2n + 1`, the set N.
pub fn twist_achiral_determinants(n_max: u32) -> Vec<BigUint> {
    (1..=n_max as i64).map(|n| word_determinant(&[n, 1, 1, n])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_number_theory() {
        assert_eq!(euler_phi(9), 6);
        assert_eq!(omega(12), 2);
        assert_eq!(r2_0(5), 2);
        assert_eq!(r2_0(7), 0);
        assert_eq!(factor(2u128 * 3 * 3 * 29), vec![(2, 1), (3, 2), (29, 1)]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u128 * 998_244_353));
    }

    #[test]
    fn lens_counts() {
        assert_eq!(lens_count(5, false), 2);
        assert_eq!(lens_count(7, false), 2);
        assert_eq!(lens_count(9, true), 4);
        for p in (3..300u64).step_by(2) {
            assert_eq!(lens_count(p, false), lens_count_brute(p, false), "p={p}");
            assert_eq!(lens_count(p, true), lens_count_brute(p, true), "p={p}");
        }
    }

    #[test]
    fn u1_lens_counts() {
        assert_eq!(u1_lens_count(5, false), 1);
        assert_eq!(u1_lens_count(29, false), 2);
        // 65 = q₀ ∈ S; 2n²+2n+1 = 65 has no integer solution, so only the
        // S correction applies in the oriented count.
        let u = u1_lens_count(65, false);
        assert_eq!(u1_lens_count(65, true), 2 * u - 1);
    }

    #[test]
    fn sequences() {
        assert_eq!(p_seq(2), BigInt::from(985));
        assert_eq!(p_seq(5), BigInt::from(195025));
        assert_eq!(q_seq(3), BigInt::from(174725));
        for s in 0..=50 {
            assert_eq!(p_seq(s), p_seq_closed(s), "p_{s}");
            assert_eq!(q_seq(s), q_seq_closed(s), "q_{s}");
        }
    }

    #[test]
    fn ps_have_no_divisor_3_mod_4() {
        for s in 0..=30 {
            let p = p_seq(s);
            let p128: u128 = p.to_string().parse().unwrap();
            for (f, _) in factor(p128) {
                assert_ne!(f % 4, 3, "p_{s} = {p} has divisor {f} ≡ 3 mod 4");
            }
        }
    }

    #[test]
    fn membership_tests() {
        assert!(is_ps(&BigInt::from(29)));
        assert!(is_ps(&BigInt::from(985)));
        assert!(!is_ps(&BigInt::from(31)));
        assert!(in_n(&BigInt::from(5)));
        assert!(in_n(&BigInt::from(13)));
        assert!(!in_n(&BigInt::from(29)));
        assert!(in_s(&BigInt::from(65)));
        assert!(in_s(&BigInt::from(901)));
        assert!(!in_s(&BigInt::from(64)));
    }

    #[test]
    fn sn_search_empty_small() {
        assert!(sn_search(100).is_empty());
    }

    #[test]
    fn elliptic_examples() {
        assert!(elliptic_point(3)); // 3·81+18-5 = 256 = 16²
        assert!(!elliptic_point(5)); // 1920 is not a square
        assert_eq!(elliptic_search(1000), vec![1, 3]);
    }

    #[test]
    fn duplication_series() {
        let (a, b) = duplication_determinants(3);
        assert_eq!(a[0], 29u32.into());
        assert_eq!(b[0], 169u32.into());
        // Interleaved they give p_0, p_1, p_2, ...
        let mut merged: Vec<BigUint> = a.into_iter().chain(b).collect();
        merged.sort();
        for (s, det) in merged.iter().enumerate() {
            assert_eq!(BigInt::from(det.clone()), p_seq(s as u32), "s={s}");
        }
    }

    #[test]
    fn achiral_series() {
        let dets = achiral_series_determinants(3);
        for (s, det) in dets.iter().enumerate() {
            assert_eq!(BigInt::from(det.clone()), q_seq(s as u32), "s={s}");
        }
        assert_eq!(twist_achiral_determinants(3), vec![5u32.into(), 13u32.into(), 25u32.into()]);
        // The (n,1,1,n) determinants all lie in N.
        for det in twist_achiral_determinants(6) {
            assert!(in_n(&BigInt::from(det)));
        }
    }
}

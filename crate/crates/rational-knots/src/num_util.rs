//! Small integer helpers shared across modules.

/// Greatest common divisor on u64.
pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Modular inverse of `a` mod `m` (m ≥ 2, gcd(a, m) = 1), via extended
/// Euclid. Returns a value in `0..m`.
pub fn mod_inverse_u64(a: u64, m: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        let t = old_r - q * r;
        old_r = r;
        r = t;
        let t = old_s - q * s;
        old_s = s;
        s = t;
    }
    debug_assert!(old_r == 1 || old_r == -1);
    if old_r == -1 {
        old_s = -old_s;
    }
    old_s.rem_euclid(m as i128) as u64
}

/// Integer square root of a u128.
pub fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    // The float seed can be off by a few; fix it up exactly.
    while x > 0 && x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

/// `Some(r)` when `n` is a perfect square `r*r`.
pub fn perfect_sqrt_u128(n: u128) -> Option<u128> {
    // Quadratic-residue filters reject almost everything cheaply.
    if !QR64[(n % 64) as usize] || !QR63[(n % 63) as usize] || !QR65[(n % 65) as usize] {
        return None;
    }
    let r = isqrt_u128(n);
    (r * r == n).then_some(r)
}

const fn qr_table<const M: usize>() -> [bool; M] {
    let mut t = [false; M];
    let mut i = 0;
    while i < M {
        t[(i * i) % M] = true;
        i += 1;
    }
    t
}

static QR64: [bool; 64] = qr_table::<64>();
static QR63: [bool; 63] = qr_table::<63>();
static QR65: [bool; 65] = qr_table::<65>();

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt_u128(0), 0);
        assert_eq!(isqrt_u128(1), 1);
        assert_eq!(isqrt_u128(3), 1);
        assert_eq!(isqrt_u128(4), 2);
        let big = u64::MAX as u128;
        let r = isqrt_u128(big * big);
        assert_eq!(r, big);
    }

    #[test]
    fn perfect_squares() {
        for k in 0u128..2000 {
            assert_eq!(perfect_sqrt_u128(k * k), Some(k));
        }
        assert_eq!(perfect_sqrt_u128(2), None);
        assert_eq!(perfect_sqrt_u128(1920), None);
    }

    #[test]
    fn modinv() {
        assert_eq!(mod_inverse_u64(2, 9), 5);
        assert_eq!(mod_inverse_u64(18, 31), mod_inverse_u64(18, 31));
        for m in [5u64, 7, 9, 31, 101] {
            for a in 1..m {
                if gcd_u64(a, m) == 1 {
                    let inv = mod_inverse_u64(a, m);
                    assert_eq!(a * inv % m, 1, "a={a} m={m}");
                }
            }
        }
    }
}

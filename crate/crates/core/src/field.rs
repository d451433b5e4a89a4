//! Arithmetic in `F_p` for a runtime prime `p < 2^63`.

/// `2^61 - 1`.
pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

/// Smallest prime accepted by the samplers.
pub const MIN_SAMPLING_PRIME: u64 = 1 << 31;

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn neg(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero element by Fermat's little theorem.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn from_i64(v: i64, p: u64) -> u64 {
    let m = (v as i128).rem_euclid(p as i128);
    m as u64
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(2));
        assert!(is_prime(101));
        assert!(is_prime(2_147_483_659));
        assert!(!is_prime(1));
        assert!(!is_prime(DEFAULT_PRIME - 2));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "{n}");
        }
    }

    #[test]
    fn arithmetic() {
        let p = DEFAULT_PRIME;
        assert_eq!(add(p - 1, 1, p), 0);
        assert_eq!(sub(0, 1, p), p - 1);
        assert_eq!(neg(5, p), p - 5);
        assert_eq!(mul(p - 1, p - 1, p), 1);
        for a in [1, 2, 12345, p - 1, 1 << 40] {
            assert_eq!(mul(a, inv(a, p), p), 1);
        }
        assert_eq!(from_i64(-1, 101), 100);
        assert_eq!(from_i64(205, 101), 3);
    }
}

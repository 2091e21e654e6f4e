//! Small-integer number theory: factorization, primality, modular powers,
//! primitive roots and CRT embedding.

use num_integer::Integer;

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

/// Primes in increasing order starting from 2.
pub fn primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| is_prime(n))
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m = m as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) == 1`.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let g = (a as i128).extended_gcd(&(m as i128));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i128) as u64)
}

/// Smallest primitive root modulo `p^2` for an odd prime `p`; it is then a
/// primitive root modulo every power of `p`.
pub fn primitive_root_odd(p: u64) -> u64 {
    let fac = factorize(p - 1);
    let g = (2..p)
        .find(|&g| fac.iter().all(|&(r, _)| mod_pow(g, (p - 1) / r, p) != 1))
        .unwrap_or(1);
    if mod_pow(g, p - 1, p * p) == 1 {
        g + p
    } else {
        g
    }
}

/// Generators of `(Z/q^e)^*` as small signed integers with their orders:
/// `-1` and `5` for `q = 2`, a primitive root for odd `q`.
pub fn prime_power_unit_generators(q: u64, e: u32) -> Vec<(i64, u64)> {
    if e == 0 {
        return Vec::new();
    }
    if q == 2 {
        match e {
            1 => vec![],
            2 => vec![(-1, 2)],
            _ => vec![(-1, 2), (5, 1 << (e - 2))],
        }
    } else {
        let order = (q - 1) * q.pow(e - 1);
        vec![(primitive_root_odd(q) as i64, order)]
    }
}

/// The residue modulo `m` that is `x` modulo the factor `part` (coprime to
/// `m / part`) and `1` modulo `m / part`.
pub fn crt_embed(m: u64, part: u64, x: i64) -> u64 {
    if part == 1 {
        return 1 % m;
    }
    let rest = m / part;
    let target = (x - 1).rem_euclid(part as i64) as u64;
    let inv = mod_inv(rest % part, part).expect("coprime parts");
    let t = (target as u128 * inv as u128 % part as u128) as u64;
    ((1 + rest as u128 * t as u128) % m as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert!(is_prime(97) && !is_prime(1) && !is_prime(91));
        assert_eq!(primes().take(5).collect::<Vec<_>>(), vec![2, 3, 5, 7, 11]);
        assert_eq!(mod_inv(3, 7), Some(5));
        assert_eq!(mod_inv(2, 4), None);
        assert_eq!(primitive_root_odd(5), 2);
        assert_eq!(primitive_root_odd(7), 3);
        for p in [3u64, 5, 7, 11, 29, 40487] {
            let g = primitive_root_odd(p);
            assert_ne!(mod_pow(g, p - 1, p * p), 1);
        }
    }

    #[test]
    fn crt_embedding() {
        let x = crt_embed(40, 8, -1);
        assert_eq!((x % 8, x % 5), (7, 1));
        let y = crt_embed(40, 5, 2);
        assert_eq!((y % 8, y % 5), (1, 2));
        assert_eq!(crt_embed(40, 1, 3), 1);
    }
}

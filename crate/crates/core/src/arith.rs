//! Small integer helpers: trial-division factoring, divisors, prime powers.
//!
//! Every quantity handled here is at most `u64`; the field layer keeps
//! `q^n ≤ 2^31`, so trial division is always cheap.

/// Prime factorisation by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let f = factorize(n);
    f.len() == 1 && f[0].1 == 1
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Writes `q = p^k` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let f = factorize(q);
    match f.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Largest `t` with `2^t | n` (`n > 0`).
pub fn two_adic(n: u64) -> u32 {
    debug_assert!(n > 0);
    n.trailing_zeros()
}

/// The 2-part of `n`.
pub fn two_part(n: u64) -> u64 {
    1u64 << two_adic(n)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `base^exp mod m` for `m ≥ 1`.
pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let m128 = m as u128;
    let mut b = (base % m) as u128;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_728() {
        assert_eq!(factorize(728), vec![(2, 3), (7, 1), (13, 1)]);
        assert_eq!(divisors(26), vec![1, 2, 13, 26]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert!(is_prime(19));
        assert!(!is_prime(21));
    }

    #[test]
    fn two_adic_parts() {
        assert_eq!(two_adic(28), 2);
        assert_eq!(two_part(48), 16);
        assert_eq!(two_part(7), 1);
    }

    #[test]
    fn pow_mod_small() {
        assert_eq!(pow_mod(3, 6, 1000), 729);
        assert_eq!(pow_mod(5, 0, 7), 1);
        assert_eq!(pow_mod(5, 3, 1), 0);
    }
}

//! Small integer helpers shared by the field builders and the constructions.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Prime factorisation as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            let mut e = 0;
            while n % f == 0 {
                n /= f;
                e += 1;
            }
            out.push((f, e));
        }
        f += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Splits `q` as `p^r`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, r)] => Some((*p, *r)),
        _ => None,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let qt = old_r / r;
        (old_r, r) = (r, old_r - qt * r);
        (old_s, s) = (s, old_s - qt * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_prime_power() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(is_prime(71) && !is_prime(91));
    }

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod(6, 7), Some(6));
        assert_eq!(inv_mod(3, 6), None);
        assert_eq!(inv_mod(-1, 5), Some(4));
    }
}

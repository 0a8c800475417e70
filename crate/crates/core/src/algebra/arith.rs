//! Elementary number theory on machine and big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::AlgebraError;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Largest `k` with `p^k | n`.
pub fn p_valuation(n: &BigInt, p: u64) -> Result<u32, AlgebraError> {
    if n.is_zero() {
        return Err(AlgebraError::ZeroValuation);
    }
    if !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(k);
        }
        n = q;
        k += 1;
    }
}

/// `p^{v_p(n)}`.
pub fn p_part(n: &BigInt, p: u64) -> Result<BigInt, AlgebraError> {
    let k = p_valuation(n, p)?;
    Ok(num_traits::pow(BigInt::from(p), k as usize))
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut acc = 1u128 % m128;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

/// Inverse modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Smallest generator of `F_p^×`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_divisors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime field has a primitive root")
}

pub fn is_square_mod(a: u64, p: u64) -> bool {
    let a = a % p;
    a == 0 || p == 2 || pow_mod(a, (p - 1) / 2, p) == 1
}

/// Smallest prime `ℓ ≡ 1 (mod m)` with `ℓ > lower`.
pub fn prime_congruent_one(m: u64, lower: u64) -> Option<u64> {
    let start = lower.saturating_sub(1) / m + 1;
    (start..start + 1_000_000)
        .map(|k| k * m + 1)
        .find(|&l| is_prime(l))
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

pub fn big_pow(base: u64, exp: u32) -> BigInt {
    let mut acc = BigInt::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&BigInt::from(1u64 << 22), 2).unwrap(), 22);
        assert_eq!(p_valuation(&BigInt::from(1), 7).unwrap(), 0);
        assert_eq!(p_valuation(&BigInt::from(-24), 2).unwrap(), 3);
        assert_eq!(p_part(&BigInt::from(-24), 2).unwrap(), BigInt::from(8));
        assert!(p_valuation(&BigInt::zero(), 3).is_err());
        assert!(p_valuation(&BigInt::from(8), 4).is_err());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(23), 5);
    }

    #[test]
    fn dixon_prime() {
        // exponent 6, |G| = 6: need ℓ ≡ 1 mod 6 above 2√6
        assert_eq!(prime_congruent_one(6, 4), Some(7));
        assert_eq!(prime_congruent_one(4, 100), Some(101));
    }

    #[test]
    fn squares() {
        assert!(is_square_mod(4, 5));
        assert!(!is_square_mod(2, 5));
        assert!(!is_square_mod(2, 3));
    }
}

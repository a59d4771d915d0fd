//! Number-theoretic kernel: deterministic primality, modular exponentiation,
//! n-th power residue tests, bounded trial factorization and prime iteration.
//!
//! Everything here is exact and deterministic; the Miller-Rabin witness set
//! below decides primality for every `u64`.

use num::{BigInt, Integer, Signed, Zero};

use crate::error::{Error, Result};

/// Witnesses that make Miller-Rabin deterministic for all n < 2^64
/// (in fact for n < 3.3 * 10^24).
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality test for `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // write n-1 = 2^s * d with d odd
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `b^e mod m`, with negative bases reduced into `[0, m)` first.
pub fn pow_mod(b: i64, e: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let b = (b as i128).rem_euclid(m as i128) as u64;
    Ok(pow_mod_u64(b, e, m))
}

/// Modular inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Decides whether `x` is an `n`-th power residue modulo the prime `p`,
/// i.e. whether `y^n = x (mod p)` has a solution with `p` not dividing `y`.
///
/// Euler-type criterion: with `g = gcd(n, p-1)`, `x` is an `n`-th power
/// residue exactly when `x^((p-1)/g) = 1 (mod p)`. Zero is excluded: the
/// test demands `p` does not divide `x`.
pub fn is_nth_power_residue(x: i64, n: u64, p: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let xm = (x as i128).rem_euclid(p as i128) as u64;
    if xm == 0 {
        return Err(Error::DivisibleByModulus(x));
    }
    let g = n.gcd(&(p - 1));
    Ok(pow_mod_u64(xm, (p - 1) / g, p) == 1)
}

/// Result of a bounded trial factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFactorization {
    /// Prime factors `<= bound` with multiplicities, in increasing order.
    pub factors: Vec<(u64, u32)>,
    /// What remains of `|n|`; equal to 1 or free of prime factors `<= bound`.
    pub cofactor: BigInt,
    /// True when the cofactor exceeds 1, fits in a `u64` and is proven prime.
    pub cofactor_is_prime: bool,
}

/// Trial-divides `|n|` by every prime up to `bound` and reports what is left.
pub fn trial_factor(n: &BigInt, bound: u64) -> Result<TrialFactorization> {
    use num::ToPrimitive;
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut rest = n.abs();
    let mut factors = Vec::new();
    let mut divide_out = |rest: &mut BigInt, f: u64| {
        let fb = BigInt::from(f);
        let mut mult = 0u32;
        while (&*rest % &fb).is_zero() {
            *rest /= &fb;
            mult += 1;
        }
        if mult > 0 {
            factors.push((f, mult));
        }
    };
    if bound >= 2 {
        divide_out(&mut rest, 2);
    }
    let mut f = 3u64;
    while f <= bound {
        // composite f never divides what is left, so no pre-sieving needed;
        // once f^2 exceeds the remainder, the remainder is 1 or prime
        if BigInt::from(f).pow(2) > rest {
            break;
        }
        divide_out(&mut rest, f);
        f += 2;
    }
    // a prime remainder within the bound belongs in the factor list
    if let Some(r) = rest.to_u64() {
        if r > 1 && r <= bound {
            factors.push((r, 1));
            rest = BigInt::from(1u32);
        }
    }
    let cofactor_is_prime = match rest.to_u64() {
        Some(r) => r > 1 && is_prime(r),
        None => false, // beyond u64 we cannot prove primality, so never claim it
    };
    Ok(TrialFactorization { factors, cofactor: rest, cofactor_is_prime })
}

/// Iterator over primes in increasing order from a starting point.
pub struct PrimeIterator {
    next: u64,
}

impl PrimeIterator {
    /// Primes `>= start`, in order.
    pub fn from(start: u64) -> Self {
        Self { next: start.max(2) }
    }
}

impl Iterator for PrimeIterator {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let mut c = self.next;
        loop {
            if is_prime(c) {
                self.next = c + 1;
                return Some(c);
            }
            c += 1;
        }
    }
}

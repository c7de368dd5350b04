//! Exact integer helpers shared by the bound formulas and the prime search.
//!
//! Nothing in here touches floating point; every floor is the true floor.

/// `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    n.isqrt()
}

/// `⌊n^(1/k)⌋` for `k ≥ 1`, by binary search on checked powers.
pub fn iroot(n: u128, k: u32) -> u128 {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || n < 2 {
        return n;
    }
    // 2^(128/k) bounds the answer from above.
    let mut lo: u128 = 1;
    let mut hi: u128 = 1u128 << (128 / k).min(127);
    if hi > n {
        hi = n;
    }
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match checked_pow(mid, k) {
            Some(v) if v <= n => lo = mid,
            _ => hi = mid - 1,
        }
    }
    lo
}

pub(crate) fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// `⌈a / b⌉` for `b > 0`.
pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Trial-division factorisation into `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
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
    n >= 2 && factorize(n).first().is_some_and(|&(p, e)| p == n && e == 1)
}

/// Splits `q = p^k` with `p` prime and `k ≥ 1`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

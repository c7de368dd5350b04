//! Sieve-backed prime lookups: Bertrand-interval primes and a finite-range
//! search for primes in short intervals `(x − x^δ, x]`.

use crate::arith;
use std::sync::{OnceLock, RwLock};

pub const DEFAULT_SIEVE_LIMIT: u64 = 2_000_000;

/// The primes up to `limit`, from a sieve of Eratosthenes.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for i in 2..=n {
            if composite[i] {
                continue;
            }
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        PrimeTable { limit, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> Option<bool> {
        (n <= self.limit).then(|| self.primes.binary_search(&n).is_ok())
    }

    /// Smallest prime strictly greater than `n`, if within the table.
    pub fn next_prime_after(&self, n: u64) -> Option<u64> {
        let i = self.primes.partition_point(|&p| p <= n);
        self.primes.get(i).copied()
    }

    /// Largest prime `≤ n`, if `n` is within the table.
    pub fn prev_prime_at_most(&self, n: u64) -> Option<u64> {
        if n > self.limit {
            return None;
        }
        let i = self.primes.partition_point(|&p| p <= n);
        i.checked_sub(1).map(|i| self.primes[i])
    }
}

fn shared() -> &'static RwLock<PrimeTable> {
    static TABLE: OnceLock<RwLock<PrimeTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(PrimeTable::new(DEFAULT_SIEVE_LIMIT)))
}

/// Runs `f` against the shared table, first growing it by doubling until it
/// covers `need`.
pub fn with_table<T>(need: u64, f: impl FnOnce(&PrimeTable) -> T) -> T {
    {
        let table = shared().read().expect("prime table poisoned");
        if table.limit >= need {
            return f(&table);
        }
    }
    let mut table = shared().write().expect("prime table poisoned");
    if table.limit < need {
        let mut limit = table.limit.max(2);
        while limit < need {
            limit *= 2;
        }
        *table = PrimeTable::new(limit);
    }
    f(&table)
}

/// Smallest prime `p` with `n < p ≤ 2n`.
pub fn bertrand_prime(n: u64) -> u64 {
    assert!(n >= 1, "Bertrand interval needs n >= 1");
    let p = with_table(2 * n, |t| t.next_prime_after(n)).expect("table covers 2n");
    assert!(p <= 2 * n, "no prime in ({n}, {}]", 2 * n);
    p
}

/// A positive rational exponent `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exponent {
    pub num: u32,
    pub den: u32,
}

impl Exponent {
    pub fn new(num: u32, den: u32) -> Option<Self> {
        (num >= 1 && den >= 1 && num <= den).then_some(Exponent { num, den })
    }

    /// `⌊x^(num/den)⌋`, exactly.
    pub fn floor_power(&self, x: u64) -> u64 {
        let raised = arith::checked_pow(x as u128, self.num).expect("x^num fits in 128 bits");
        arith::iroot(raised, self.den) as u64
    }
}

/// Largest prime in `(x − ⌊x^δ⌋, x]`, or `None` if that interval holds no prime.
pub fn gap_prime(x: u64, delta: Exponent) -> Option<u64> {
    assert!(x >= 2, "gap_prime needs x >= 2");
    let width = delta.floor_power(x);
    let p = with_table(x, |t| t.prev_prime_at_most(x))?;
    (p > x - width.min(x)).then_some(p)
}

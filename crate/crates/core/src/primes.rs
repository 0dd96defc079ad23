//! Process-wide table of primes, grown on demand by re-sieving.
//!
//! Readers either see the old complete table or the new complete table;
//! the table is swapped in whole under the write lock.

use std::sync::RwLock;

use thiserror::Error;

/// Largest supported index for [`nth_prime`].
pub const MAX_PRIME_INDEX: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("prime index {0} is outside the supported range 1..={MAX_PRIME_INDEX}")]
    OutOfRange(u128),
}

static TABLE: RwLock<Vec<u32>> = RwLock::new(Vec::new());

/// The `n`-th prime, with `nth_prime(1) == 2`.
pub fn nth_prime(n: usize) -> Result<u64, PrimeError> {
    if n == 0 || n > MAX_PRIME_INDEX {
        return Err(PrimeError::OutOfRange(n as u128));
    }
    {
        let table = TABLE.read().unwrap_or_else(|e| e.into_inner());
        if let Some(&p) = table.get(n - 1) {
            return Ok(p as u64);
        }
    }
    let mut table = TABLE.write().unwrap_or_else(|e| e.into_inner());
    if table.len() < n {
        // Sieve past the Rosser bound for n, and at least double the last
        // bound so repeated small growth stays cheap.
        let last = table.last().copied().unwrap_or(0) as usize;
        let bound = upper_bound(n).max(2 * last).max(64);
        *table = sieve(bound);
    }
    Ok(table[n - 1] as u64)
}

/// `n (ln n + ln ln n)` exceeds the `n`-th prime for `n ≥ 6`.
fn upper_bound(n: usize) -> usize {
    if n < 6 {
        return 15;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as usize + 1
}

fn sieve(limit: usize) -> Vec<u32> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u32);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

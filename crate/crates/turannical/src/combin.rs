//! Binomial coefficients and lexicographic r-subset enumeration.

use crate::error::{Error, Result};

/// `C(n, k)` with overflow detection. Counts are 64-bit by contract; any
/// value past `u64::MAX` is reported, never wrapped.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial"))?;
        acc /= (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial"));
        }
    }
    Ok(acc as u64)
}

/// `C(n, 2)` as a convenience; panics only on astronomically large `n`.
pub fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Visits every k-subset of `{0, .., n-1}` in lexicographic order.
pub fn for_each_combination<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        f(&c);
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if c[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Lexicographic rank -> k-subset of `{0, .., n-1}`.
///
/// Inverse of the lexicographic enumeration above; used by the geometric
/// skip sampler to jump directly to an included index.
pub fn unrank_combination(n: u64, k: u64, mut rank: u64) -> Result<Vec<usize>> {
    let total = binomial(n, k)?;
    if rank >= total {
        return Err(Error::parameter(format!(
            "combination rank {rank} out of range for C({n},{k})={total}"
        )));
    }
    let mut out = Vec::with_capacity(k as usize);
    let mut x = 0u64;
    for j in 0..k {
        loop {
            let block = binomial(n - 1 - x, k - 1 - j)?;
            if rank < block {
                break;
            }
            rank -= block;
            x += 1;
        }
        out.push(x as usize);
        x += 1;
    }
    Ok(out)
}

//! Checked index arithmetic shared across the crate.

use crate::error::{Error, Result};

/// p^e in 128-bit arithmetic, or an overflow error.
pub fn checked_pow(p: u32, e: u32) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.checked_mul(p as u128).ok_or(Error::Overflow("p^e"))?;
    }
    Ok(acc)
}

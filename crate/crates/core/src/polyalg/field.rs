use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Accepts primes below `2^31`, so products of residues fit in a `u64`.
pub fn check_modulus(p: u64) -> Result<u32> {
    if p < (1 << 31) && is_prime(p) {
        Ok(p as u32)
    } else {
        Err(Error::BadModulus(p))
    }
}

pub(crate) fn reduce(c: i64, p: u32) -> u32 {
    c.rem_euclid(p as i64) as u32
}

pub(crate) fn add(x: u32, y: u32, p: u32) -> u32 {
    ((x as u64 + y as u64) % p as u64) as u32
}

pub(crate) fn mul(x: u32, y: u32, p: u32) -> u32 {
    ((x as u64 * y as u64) % p as u64) as u32
}

pub(crate) fn neg(x: u32, p: u32) -> u32 {
    if x == 0 {
        0
    } else {
        p - x
    }
}

pub(crate) fn pow(mut x: u32, mut e: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, x, p);
        }
        x = mul(x, x, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub(crate) fn inv(x: u32, p: u32) -> u32 {
    assert!(!x.is_multiple_of(p), "zero has no inverse");
    pow(x, p as u64 - 2, p)
}

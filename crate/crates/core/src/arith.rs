//! Exact integer helpers shared by the bound computations.

/// `⌊√x⌋`.
#[inline]
pub fn isqrt_floor(x: u128) -> u128 {
    x.isqrt()
}

/// `⌈√x⌉`.
#[inline]
pub fn isqrt_ceil(x: u128) -> u128 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// `⌊a / b⌋` for `b > 0`.
#[inline]
pub fn div_floor(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

/// `⌈a / b⌉` for `b > 0`.
#[inline]
pub fn div_ceil(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    -(-a).div_euclid(b)
}

/// `C(x, 2)`, taken as zero for `x < 2`.
#[inline]
pub fn binom2(x: i128) -> i128 {
    if x < 2 {
        0
    } else {
        x * (x - 1) / 2
    }
}

/// `C(x, 3)`, taken as zero for `x < 3`.
#[inline]
pub fn binom3(x: i128) -> i128 {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

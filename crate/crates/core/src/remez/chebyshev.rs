#[cfg(not(any(test, feature = "parallel")))]
use num_traits::Float;

/// `T_k(x)` by the recurrence on `[-1, 1]` and by `cosh(k arccosh |x|)`
/// (with the parity sign) outside, where the recurrence loses accuracy.
pub fn chebyshev_t(k: u32, x: f64) -> f64 {
    if x.abs() <= 1.0 {
        chebyshev_t_recurrence(k, x)
    } else {
        chebyshev_t_closed(k, x)
    }
}

/// `T_0 = 1`, `T_1 = x`, `T_{j+1} = 2x T_j - T_{j-1}`.
pub fn chebyshev_t_recurrence(k: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `cos(k arccos x)` on `[-1, 1]`, `sign^k cosh(k arccosh |x|)` outside.
pub fn chebyshev_t_closed(k: u32, x: f64) -> f64 {
    let kf = k as f64;
    if x.abs() <= 1.0 {
        (kf * x.acos()).cos()
    } else {
        let v = (kf * x.abs().acosh()).cosh();
        if x < 0.0 && k % 2 == 1 {
            -v
        } else {
            v
        }
    }
}

//! Truncated multivariate convolution of sparse coefficient arrays.
//!
//! Coordinates are weight slots followed by the cost; a coordinate of the
//! sum at or above its cap is dropped.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::semiring::Semiring;

pub type SparseArray<V> = BTreeMap<Vec<u64>, V>;

/// Direct summation over all pairs of nonzero coefficients.
pub fn convolve_direct<S: Semiring>(
    a: &SparseArray<S::Value>,
    b: &SparseArray<S::Value>,
    caps: &[u64],
) -> SparseArray<S::Value> {
    let mut out: SparseArray<S::Value> = BTreeMap::new();
    let mut coord = vec![0u64; caps.len()];
    for (ca, va) in a {
        'pairs: for (cb, vb) in b {
            for d in 0..caps.len() {
                let s = ca[d] + cb[d];
                if s >= caps[d] {
                    continue 'pairs;
                }
                coord[d] = s;
            }
            let v = S::times(va, vb);
            match out.get_mut(coord.as_slice()) {
                Some(acc) => S::add_assign(acc, v),
                None => {
                    out.insert(coord.clone(), v);
                }
            }
        }
    }
    out
}

/// Largest dense array the transform path will allocate.
pub const TRANSFORM_MAX_LEN: usize = 1 << 20;

/// Bound on `Σa · Σb`, which keeps every output coefficient and the
/// floating-point rounding error of the transform well inside exact range.
pub const TRANSFORM_MAX_MASS: f64 = (1u64 << 40) as f64;

/// Count convolution through a one-dimensional FFT of the mixed-radix
/// linearisation. Returns `None` when the arrays are too large or the
/// coefficients too big for exact recovery from `f64`; callers then use
/// [`convolve_direct`].
pub fn convolve_transform(
    a: &SparseArray<BigUint>,
    b: &SparseArray<BigUint>,
    caps: &[u64],
) -> Option<SparseArray<BigUint>> {
    if a.is_empty() || b.is_empty() {
        return Some(BTreeMap::new());
    }
    let dims = caps.len();
    let mass = |arr: &SparseArray<BigUint>| -> Option<f64> {
        arr.values().map(|v| v.to_f64()).sum::<Option<f64>>()
    };
    if mass(a)? * mass(b)? >= TRANSFORM_MAX_MASS {
        return None;
    }
    let max_coord = |arr: &SparseArray<BigUint>, d: usize| arr.keys().map(|c| c[d]).max().unwrap();
    let mut sizes = Vec::with_capacity(dims);
    let mut total: usize = 1;
    for d in 0..dims {
        let n = (max_coord(a, d) + max_coord(b, d) + 1) as usize;
        sizes.push(n);
        total = total.checked_mul(n)?;
        if total > TRANSFORM_MAX_LEN {
            return None;
        }
    }
    let len = total.next_power_of_two();
    let linear = |c: &[u64]| {
        c.iter()
            .zip(&sizes)
            .fold(0usize, |acc, (&x, &n)| acc * n + x as usize)
    };
    let load = |arr: &SparseArray<BigUint>| {
        let mut buf = vec![Complex::new(0.0, 0.0); len];
        for (c, v) in arr {
            buf[linear(c)].re = v.to_f64().unwrap();
        }
        buf
    };
    let mut fa = load(a);
    let mut fb = load(b);
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(len).process(&mut fa);
    planner.plan_fft_forward(len).process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    planner.plan_fft_inverse(len).process(&mut fa);

    let mut out = BTreeMap::new();
    let mut coord = vec![0u64; dims];
    for (idx, z) in fa.iter().enumerate().take(total) {
        let value = (z.re / len as f64).round();
        if value < 0.5 {
            continue;
        }
        let mut rest = idx;
        for d in (0..dims).rev() {
            coord[d] = (rest % sizes[d]) as u64;
            rest /= sizes[d];
        }
        if coord.iter().zip(caps).all(|(x, cap)| x < cap) {
            out.insert(coord.clone(), BigUint::from(value as u64));
        }
    }
    Some(out)
}

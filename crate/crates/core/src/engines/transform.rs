//! Cyclic correlation and convolution.
//!
//! With the `std` feature these run through `rustfft` in `O(n log n)` for any
//! length, prime lengths included. The `*_direct` versions are always
//! available; they skip zero entries of the first operand.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `r[a] = Σ_x s[x]·t[(x + a) mod n]`.
pub fn cyclic_correlation(s: &[Complex64], t: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(s.len(), t.len(), "operands must have equal length");
    #[cfg(feature = "std")]
    {
        fft::correlation(s, t)
    }
    #[cfg(not(feature = "std"))]
    {
        cyclic_correlation_direct(s, t)
    }
}

/// `r[u] = Σ_s a[s]·b[(u - s) mod n]`.
pub fn cyclic_convolution(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.len(), b.len(), "operands must have equal length");
    #[cfg(feature = "std")]
    {
        fft::convolution(a, b)
    }
    #[cfg(not(feature = "std"))]
    {
        cyclic_convolution_direct(a, b)
    }
}

pub fn cyclic_correlation_direct(s: &[Complex64], t: &[Complex64]) -> Vec<Complex64> {
    let n = s.len();
    let mut out = vec![ZERO; n];
    for (x, &sx) in s.iter().enumerate().filter(|(_, v)| **v != ZERO) {
        for (a, slot) in out.iter_mut().enumerate() {
            let v = x + a;
            *slot += sx * t[if v >= n { v - n } else { v }];
        }
    }
    out
}

pub fn cyclic_convolution_direct(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    let mut out = vec![ZERO; n];
    for (s, &av) in a.iter().enumerate().filter(|(_, v)| **v != ZERO) {
        for (r, &bv) in b.iter().enumerate().filter(|(_, v)| **v != ZERO) {
            let u = s + r;
            out[if u >= n { u - n } else { u }] += av * bv;
        }
    }
    out
}

#[cfg(feature = "std")]
mod fft {
    use super::*;
    use rustfft::FftPlanner;

    fn transform_pair(
        n: usize,
    ) -> (
        std::sync::Arc<dyn rustfft::Fft<f64>>,
        std::sync::Arc<dyn rustfft::Fft<f64>>,
    ) {
        let mut planner = FftPlanner::new();
        (planner.plan_fft_forward(n), planner.plan_fft_inverse(n))
    }

    pub(super) fn correlation(s: &[Complex64], t: &[Complex64]) -> Vec<Complex64> {
        let n = s.len();
        if n == 0 {
            return Vec::new();
        }
        let (fwd, inv) = transform_pair(n);
        let mut fs = s.to_vec();
        let mut ft = t.to_vec();
        fwd.process(&mut fs);
        fwd.process(&mut ft);
        // DFT of x ↦ s[-x] is k ↦ S[-k]
        let scale = 1.0 / n as f64;
        let mut prod: Vec<Complex64> = (0..n).map(|k| fs[(n - k) % n] * ft[k] * scale).collect();
        inv.process(&mut prod);
        prod
    }

    pub(super) fn convolution(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        let n = a.len();
        if n == 0 {
            return Vec::new();
        }
        let (fwd, inv) = transform_pair(n);
        let mut fa = a.to_vec();
        let mut fb = b.to_vec();
        fwd.process(&mut fa);
        fwd.process(&mut fb);
        let scale = 1.0 / n as f64;
        let mut prod: Vec<Complex64> = fa.iter().zip(&fb).map(|(x, y)| x * y * scale).collect();
        inv.process(&mut prod);
        prod
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pseudo_random(n: usize, seed: u64) -> Vec<Complex64> {
        let mut s = seed;
        (0..n)
            .map(|_| {
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let re = (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                s = s
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let im = (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5;
                Complex64::new(re, im)
            })
            .collect()
    }

    #[test]
    fn fast_matches_direct() {
        for n in [1usize, 2, 6, 7, 60, 97, 100, 211] {
            let a = pseudo_random(n, n as u64);
            let b = pseudo_random(n, 1000 + n as u64);
            let tol = 1e-9 * n as f64;
            for (x, y) in cyclic_correlation(&a, &b)
                .iter()
                .zip(cyclic_correlation_direct(&a, &b))
            {
                assert!((x - y).norm() < tol);
            }
            for (x, y) in cyclic_convolution(&a, &b)
                .iter()
                .zip(cyclic_convolution_direct(&a, &b))
            {
                assert!((x - y).norm() < tol);
            }
        }
    }

    #[test]
    fn correlation_with_delta() {
        // s = δ_2 picks out t shifted by 2
        let n = 7;
        let mut s = vec![ZERO; n];
        s[2] = Complex64::new(1.0, 0.0);
        let t: Vec<Complex64> = (0..n).map(|i| Complex64::new(i as f64, 0.0)).collect();
        let r = cyclic_correlation(&s, &t);
        for (a, v) in r.iter().enumerate() {
            assert!((v.re - ((2 + a) % n) as f64).abs() < 1e-12);
        }
    }
}

//! Multidimensional FFT over mixed-radix cyclic products, axis by axis.
//!
//! Indexing matches the group convention: the last modulus varies fastest.
//! The forward kernel on each axis is `exp(-2*pi*i*jk/m)`; `inverse` applies
//! the `+` kernel and divides by the total length, so `inverse(forward(x))`
//! is `x` up to rounding. Plans are cached per (length, direction).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut map = cache.lock().expect("fft plan cache poisoned");
    map.entry((len, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(len)
            } else {
                planner.plan_fft_forward(len)
            }
        })
        .clone()
}

fn transform(moduli: &[usize], data: &mut [Complex64], inverse: bool) {
    let n: usize = moduli.iter().product();
    debug_assert_eq!(data.len(), n);
    let mut stride = 1;
    for &m in moduli.iter().rev() {
        let fft = plan(m, inverse);
        let mut line = vec![Complex64::default(); m];
        let block = stride * m;
        for base in (0..n).step_by(block) {
            for inner in 0..stride {
                let start = base + inner;
                for (q, slot) in line.iter_mut().enumerate() {
                    *slot = data[start + q * stride];
                }
                fft.process(&mut line);
                for (q, &v) in line.iter().enumerate() {
                    data[start + q * stride] = v;
                }
            }
        }
        stride = block;
    }
}

pub(crate) fn forward(moduli: &[usize], data: &mut [Complex64]) {
    transform(moduli, data, false);
}

pub(crate) fn inverse(moduli: &[usize], data: &mut [Complex64]) {
    transform(moduli, data, true);
    let scale = 1.0 / data.len() as f64;
    for v in data.iter_mut() {
        *v *= scale;
    }
}

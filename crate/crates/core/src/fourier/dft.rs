use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::character::root_of_unity;
use crate::error::{Error, Result};
use crate::prime::Prime;

/// Sign of the exponent: `Forward` computes `Σ_k x_k e^{+2πi jk/P}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Radix-`p` Cooley–Tukey transform of length `p^M`.
///
/// Twiddles are tabulated once from exact integer phases.
#[derive(Debug, Clone)]
pub struct RadixPlan {
    p: usize,
    len: usize,
    roots: Vec<Complex64>,
    rev: Vec<usize>,
}

impl RadixPlan {
    pub fn new(p: Prime, digits: u32) -> Result<Self> {
        let len = p
            .checked_pow(digits)
            .and_then(|l| usize::try_from(l).ok())
            .ok_or(Error::GridTooLarge { digits: digits as i64, dim: 1 })?;
        let pp = p.get() as usize;
        let roots = (0..len as u64).map(|t| root_of_unity(t, len as u64)).collect();
        let rev = (0..len)
            .map(|mut i| {
                let mut r = 0;
                for _ in 0..digits {
                    r = r * pp + i % pp;
                    i /= pp;
                }
                r
            })
            .collect();
        Ok(RadixPlan { p: pp, len, roots, rev })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn w(&self, t: usize, dir: Direction) -> Complex64 {
        match dir {
            Direction::Forward => self.roots[t],
            Direction::Inverse => self.roots[(self.len - t) % self.len],
        }
    }

    /// In-place transform of `data` (length `p^M`).
    pub fn process(&self, data: &mut [Complex64], dir: Direction) {
        assert_eq!(data.len(), self.len, "transform length");
        for i in 0..self.len {
            let r = self.rev[i];
            if r > i {
                data.swap(i, r);
            }
        }
        let p = self.p;
        let step_p = self.len / p.max(1);
        let mut tmp = vec![Complex64::new(0.0, 0.0); p];
        let mut sub = 1;
        while sub < self.len {
            let size = sub * p;
            let stride = self.len / size;
            for block in (0..self.len).step_by(size) {
                for q in 0..sub {
                    for (r, t) in tmp.iter_mut().enumerate() {
                        *t = data[block + r * sub + q] * self.w(r * q * stride, dir);
                    }
                    for u in 0..p {
                        let mut acc = tmp[0];
                        for (r, t) in tmp.iter().enumerate().skip(1) {
                            acc += t * self.w((r * u % p) * step_p, dir);
                        }
                        data[block + u * sub + q] = acc;
                    }
                }
            }
            sub = size;
        }
    }
}

/// Direct `O(P^2)` evaluation of the same sum; the reference for [`RadixPlan`].
pub fn naive_dft(data: &[Complex64], dir: Direction) -> Vec<Complex64> {
    let n = data.len() as u64;
    (0..n)
        .map(|j| {
            data.iter()
                .enumerate()
                .map(|(k, x)| {
                    let t = (j as u128 * k as u128 % n as u128) as u64;
                    let t = if dir == Direction::Forward { t } else { (n - t) % n };
                    x * root_of_unity(t, n)
                })
                .sum()
        })
        .collect()
}

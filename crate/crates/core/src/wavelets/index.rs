use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::padic::{arith, PAdicVector};
use crate::prime::Prime;

fn digits_value(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
}

fn check_digits(p: Prime, digits: &[u64]) -> Result<()> {
    let pp = p.get();
    if let Some(&d) = digits.iter().find(|&&d| d >= pp) {
        return Err(Error::InvalidDigit { digit: d, p: pp });
    }
    if p.checked_pow(digits.len() as u32).is_none() {
        return Err(Error::GridTooLarge { digits: digits.len() as i64, dim: 1 });
    }
    Ok(())
}

/// One component of the frequency index: `s = p^{-m}(s_0 + s_1 p + … + s_{m-1} p^{m-1})`
/// with `s_0 ≠ 0`, so `|s|_p = p^m`.
///
/// Stored as its digit list `[s_0, …, s_{m-1}]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrequencyIndex {
    p: Prime,
    digits: Vec<Vec<u64>>,
}

impl FrequencyIndex {
    pub fn from_digits(p: Prime, digits: Vec<Vec<u64>>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::ZeroDimension);
        }
        for axis in &digits {
            check_digits(p, axis)?;
            match axis.first() {
                None => return Err(Error::InvalidFrequency("m_j must be at least 1".to_string())),
                Some(0) => {
                    return Err(Error::InvalidFrequency("leading digit s_0 must be nonzero".to_string()))
                }
                _ => {}
            }
        }
        Ok(FrequencyIndex { p, digits })
    }

    /// Build from numerators: `s_j = S_j / p^{m_j}` with `p ∤ S_j`.
    pub fn from_numerators(p: Prime, m: &[u32], numer: &[u64]) -> Result<Self> {
        if m.len() != numer.len() {
            return Err(Error::DimensionMismatch(m.len(), numer.len()));
        }
        let pp = p.get();
        let digits = m
            .iter()
            .zip(numer)
            .map(|(&mj, &s)| {
                let mut r = s;
                let axis: Vec<u64> = (0..mj)
                    .map(|_| {
                        let d = r % pp;
                        r /= pp;
                        d
                    })
                    .collect();
                if r != 0 {
                    return Err(Error::InvalidFrequency("numerator exceeds p^m".to_string()));
                }
                Ok(axis)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_digits(p, digits)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[Vec<u64>] {
        &self.digits
    }

    /// `m_j`, with `|s_j|_p = p^{m_j}`.
    pub fn m(&self) -> Vec<u32> {
        self.digits.iter().map(|d| d.len() as u32).collect()
    }

    pub fn max_m(&self) -> u32 {
        self.digits.iter().map(|d| d.len() as u32).max().unwrap_or(0)
    }

    /// `S_j` with `s_j = S_j / p^{m_j}`.
    pub fn numerators(&self) -> Vec<u64> {
        self.digits.iter().map(|d| digits_value(d, self.p.get())).collect()
    }

    pub fn to_vector(&self) -> PAdicVector {
        let comps = self
            .numerators()
            .into_iter()
            .zip(self.m())
            .map(|(s, m)| BigRational::from_integer(BigInt::from(s)) * arith::p_pow(self.p, -(m as i64)))
            .collect();
        PAdicVector::new(self.p, comps).expect("nonempty")
    }

    /// All indices with the given `m`, in canonical order.
    pub fn all(p: Prime, m: &[u32]) -> Result<Vec<Self>> {
        if m.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let pp = p.get();
        let mut axes: Vec<Vec<Vec<u64>>> = Vec::with_capacity(m.len());
        for &mj in m {
            if mj == 0 {
                return Err(Error::InvalidFrequency("m_j must be at least 1".to_string()));
            }
            let count = p.checked_pow(mj).ok_or(Error::GridTooLarge { digits: mj as i64, dim: 1 })?;
            let mut axis: Vec<Vec<u64>> = (0..count)
                .map(|mut v| {
                    (0..mj)
                        .map(|_| {
                            let d = v % pp;
                            v /= pp;
                            d
                        })
                        .collect::<Vec<u64>>()
                })
                .filter(|d| d[0] != 0)
                .collect();
            axis.sort();
            axes.push(axis);
        }
        Ok(cartesian(&axes).into_iter().map(|digits| FrequencyIndex { p, digits }).collect())
    }
}

fn cartesian<T: Clone>(axes: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = alloc::vec![Vec::new()];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefix in &out {
            for v in axis {
                let mut t = prefix.clone();
                t.push(v.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// One component of the translation index: `a = p^{-g}(a_0 + … + a_{g-1} p^{g-1})`,
/// an element of `I_p = Q_p / Z_p` written in lowest terms (`a_0 ≠ 0` unless `a = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranslationIndex {
    p: Prime,
    digits: Vec<Vec<u64>>,
}

impl TranslationIndex {
    /// Leading zero digits are stripped, so `[0, 1]` and `[1]` give the same index.
    pub fn from_digits(p: Prime, digits: Vec<Vec<u64>>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::ZeroDimension);
        }
        let mut norm = Vec::with_capacity(digits.len());
        for axis in digits {
            check_digits(p, &axis)?;
            let first = axis.iter().position(|&d| d != 0).unwrap_or(axis.len());
            norm.push(axis[first..].to_vec());
        }
        Ok(TranslationIndex { p, digits: norm })
    }

    pub fn zero(p: Prime, n: usize) -> Self {
        TranslationIndex { p, digits: alloc::vec![Vec::new(); n] }
    }

    /// The fractional parts `{a_j}_p` of a vector.
    pub fn from_vector(a: &PAdicVector) -> Result<Self> {
        let p = a.prime();
        let pp = p.get();
        let mut digits = Vec::with_capacity(a.dim());
        for c in a.components() {
            let (num, g) = arith::fractional_phase(c, p);
            if p.checked_pow(g).is_none() {
                return Err(Error::InvalidTranslation("denominator exceeds machine range".to_string()));
            }
            let mut v: u64 = num.try_into().expect("below p^g");
            let axis: Vec<u64> = (0..g)
                .map(|_| {
                    let d = v % pp;
                    v /= pp;
                    d
                })
                .collect();
            digits.push(axis);
        }
        Ok(TranslationIndex { p, digits })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[Vec<u64>] {
        &self.digits
    }

    /// `g_j`, with `a_j = A_j / p^{g_j}`.
    pub fn exps(&self) -> Vec<u32> {
        self.digits.iter().map(|d| d.len() as u32).collect()
    }

    pub fn max_exp(&self) -> u32 {
        self.digits.iter().map(|d| d.len() as u32).max().unwrap_or(0)
    }

    pub fn numerators(&self) -> Vec<u64> {
        self.digits.iter().map(|d| digits_value(d, self.p.get())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|d| d.is_empty())
    }

    pub fn to_vector(&self) -> PAdicVector {
        let comps = self
            .numerators()
            .into_iter()
            .zip(self.exps())
            .map(|(a, g)| {
                if a == 0 {
                    BigRational::zero()
                } else {
                    BigRational::from_integer(BigInt::from(a)) * arith::p_pow(self.p, -(g as i64))
                }
            })
            .collect();
        PAdicVector::new(self.p, comps).expect("nonempty")
    }
}

/// `(γ, s, a)`: scale, frequency and translation of a basis wavelet.
///
/// Ordered by `γ`, then the digits of `s`, then the digits of `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WaveletIndex {
    pub gamma: i64,
    pub s: FrequencyIndex,
    pub a: TranslationIndex,
}

impl WaveletIndex {
    pub fn new(gamma: i64, s: FrequencyIndex, a: TranslationIndex) -> Result<Self> {
        if s.p != a.p {
            return Err(Error::PrimeMismatch(s.p.get(), a.p.get()));
        }
        if s.dim() != a.dim() {
            return Err(Error::DimensionMismatch(s.dim(), a.dim()));
        }
        Ok(WaveletIndex { gamma, s, a })
    }

    pub fn prime(&self) -> Prime {
        self.s.p
    }

    /// A random index with the given `γ` and `m`, and translation denominators up
    /// to `p^{max_translation_exp}` per axis.
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        p: Prime,
        gamma: i64,
        m: &[u32],
        max_translation_exp: u32,
    ) -> Result<Self> {
        let pp = p.get();
        let s = m
            .iter()
            .map(|&mj| {
                (0..mj)
                    .enumerate()
                    .map(|(i, _)| if i == 0 { rng.gen_range(1..pp) } else { rng.gen_range(0..pp) })
                    .collect()
            })
            .collect();
        let a = m
            .iter()
            .map(|_| {
                let g = rng.gen_range(0..=max_translation_exp);
                (0..g).map(|_| rng.gen_range(0..pp)).collect()
            })
            .collect();
        WaveletIndex::new(gamma, FrequencyIndex::from_digits(p, s)?, TranslationIndex::from_digits(p, a)?)
    }

    pub fn dim(&self) -> usize {
        self.s.dim()
    }
}

fn write_digits(f: &mut fmt::Formatter<'_>, digits: &[Vec<u64>]) -> fmt::Result {
    write!(f, "[")?;
    for (j, axis) in digits.iter().enumerate() {
        if j > 0 {
            write!(f, ";")?;
        }
        for (i, d) in axis.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d)?;
        }
    }
    write!(f, "]")
}

impl fmt::Display for WaveletIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(gamma={}, s=", self.gamma)?;
        write_digits(f, &self.s.digits)?;
        write!(f, ", a=")?;
        write_digits(f, &self.a.digits)?;
        write!(f, ")")
    }
}

use std::fmt;

use smallvec::SmallVec;

/// Exponent vector `x^u`, one entry per ring variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Product; panics if an exponent overflows `u32`.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    /// Product, or `None` if any exponent would exceed `bound`.
    pub fn checked_mul(&self, other: &Monomial, bound: u32) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            let s = a.checked_add(*b).filter(|s| *s <= bound)?;
            out.push(s);
        }
        Some(Monomial(out))
    }

    /// Every exponent multiplied by `k`, or `None` past `bound`.
    pub fn checked_scale(&self, k: u64, bound: u32) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for &a in &self.0 {
            let s = (a as u64).checked_mul(k).filter(|s| *s <= bound as u64)?;
            out.push(s as u32);
        }
        Some(Monomial(out))
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(
            other
                .0
                .iter()
                .zip(self.0.iter())
                .map(|(b, a)| b - a)
                .collect(),
        )
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit signature with `a.divides(b)` implying `mask(a) & !mask(b) == 0`.
    pub(crate) fn divmask(&self) -> u64 {
        let n = self.0.len();
        if n == 0 {
            return 0;
        }
        let bits = (64 / n).clamp(1, 4);
        let mut mask = 0u64;
        for (i, &e) in self.0.iter().enumerate().take(64) {
            for b in 0..bits {
                if i * bits + b >= 64 {
                    break;
                }
                if e > (1u32 << b) - 1 {
                    mask |= 1 << (i * bits + b);
                }
            }
        }
        mask
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.0.as_slice())
    }
}

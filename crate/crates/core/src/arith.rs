//! Arithmetic over the residue rings `Z_p` and `Z_{p^2}` and words over the
//! mixed alphabet `Z_p^alpha1 x Z_{p^2}^alpha2`.
//!
//! Symbols are stored as plain unsigned integers kept in canonical range by
//! every operation: `u8` for `Z_p` (p <= 251) and `u16` for `Z_{p^2}`
//! (p^2 <= 63001).

use crate::error::{Error, Result};

/// A validated odd-or-even prime in `2..=251`.
///
/// The upper bound keeps `Z_p` symbols in a byte and `Z_{p^2}` symbols in a
/// `u16`, which the word representations below rely on.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Prime> {
        if p > 251 {
            return Err(Error::PrimeTooLarge(u64::from(p)));
        }
        if p < 2 || !is_prime(p) {
            return Err(Error::NotPrime(u64::from(p)));
        }
        Ok(Prime(p))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `p^2`, the size of the second alphabet.
    #[inline]
    pub fn square(self) -> u32 {
        self.0 * self.0
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `u` in `Z_{p^2}` into its base-p digits `(u0, u1)` with
/// `u = u0 + p * u1`.
#[inline]
pub fn expand(u: u16, p: Prime) -> (u8, u8) {
    debug_assert!(u32::from(u) < p.square());
    let p = p.get() as u16;
    ((u % p) as u8, (u / p) as u8)
}

/// Reassembles `u0 + p * u1` from base-p digits. Inverse of [`expand`].
#[inline]
pub fn compose(u0: u8, u1: u8, p: Prime) -> u16 {
    debug_assert!(u32::from(u0) < p.get() && u32::from(u1) < p.get());
    u16::from(u0) + p.get() as u16 * u16::from(u1)
}

/// Additive order of `u` in `Z_{p^2}`: 1 for zero, `p` for nonzero multiples
/// of `p`, and `p^2` otherwise.
#[inline]
pub fn order(u: u16, p: Prime) -> u32 {
    if u == 0 {
        1
    } else if u32::from(u) % p.get() == 0 {
        p.get()
    } else {
        p.square()
    }
}

/// Carry product on `Z_{p^2}`: writing `u = u0 + p*u1` and `v = v0 + p*v1`,
/// returns `t0 + p*t1` where `t_i = 1` exactly when `u_i + v_i >= p`.
///
/// This captures the digit carries produced when adding `u + v`, and measures
/// how far the Gray image is from being additive.
#[inline]
pub fn odot(u: u16, v: u16, p: Prime) -> u16 {
    let (u0, u1) = expand(u, p);
    let (v0, v1) = expand(v, p);
    let t0 = u32::from(u0) + u32::from(v0) >= p.get();
    let t1 = u32::from(u1) + u32::from(v1) >= p.get();
    u16::from(t0) + p.get() as u16 * u16::from(t1)
}

/// A word in `Z_p^alpha1 x Z_{p^2}^alpha2`.
///
/// Both blocks may be empty; `alpha2 = 0` gives an ordinary `Z_p` word and
/// `alpha1 = 0` a pure `Z_{p^2}` word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedWord {
    p: Prime,
    zp: Vec<u8>,
    zp2: Vec<u16>,
}

impl MixedWord {
    /// Builds a word, checking every symbol is in canonical range.
    pub fn new(p: Prime, zp: Vec<u8>, zp2: Vec<u16>) -> Result<MixedWord> {
        if let Some(&s) = zp.iter().find(|&&s| u32::from(s) >= p.get()) {
            return Err(Error::InvalidParameter(format!(
                "symbol {s} out of range for Z_{}",
                p.get()
            )));
        }
        if let Some(&s) = zp2.iter().find(|&&s| u32::from(s) >= p.square()) {
            return Err(Error::InvalidParameter(format!(
                "symbol {s} out of range for Z_{}",
                p.square()
            )));
        }
        Ok(MixedWord { p, zp, zp2 })
    }

    pub fn zero(p: Prime, alpha1: usize, alpha2: usize) -> MixedWord {
        MixedWord {
            p,
            zp: vec![0; alpha1],
            zp2: vec![0; alpha2],
        }
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn alpha1(&self) -> usize {
        self.zp.len()
    }

    #[inline]
    pub fn alpha2(&self) -> usize {
        self.zp2.len()
    }

    #[inline]
    pub fn zp(&self) -> &[u8] {
        &self.zp
    }

    #[inline]
    pub fn zp2(&self) -> &[u16] {
        &self.zp2
    }

    pub fn is_zero(&self) -> bool {
        self.zp.iter().all(|&s| s == 0) && self.zp2.iter().all(|&s| s == 0)
    }

    fn shape_of(&self) -> String {
        format!(
            "Z_{}^{} x Z_{}^{}",
            self.p.get(),
            self.alpha1(),
            self.p.square(),
            self.alpha2()
        )
    }

    fn check_shape(&self, other: &MixedWord) -> Result<()> {
        if self.p != other.p || self.alpha1() != other.alpha1() || self.alpha2() != other.alpha2()
        {
            return Err(Error::ShapeMismatch {
                left: self.shape_of(),
                right: other.shape_of(),
            });
        }
        Ok(())
    }

    /// Coordinatewise sum, `Z_p` in the first block and `Z_{p^2}` in the
    /// second.
    pub fn add(&self, other: &MixedWord) -> Result<MixedWord> {
        self.check_shape(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &MixedWord) -> MixedWord {
        let p = self.p.get() as u16;
        let p2 = self.p.square() as u32;
        let zp = self
            .zp
            .iter()
            .zip(&other.zp)
            .map(|(&a, &b)| ((u16::from(a) + u16::from(b)) % p) as u8)
            .collect();
        let zp2 = self
            .zp2
            .iter()
            .zip(&other.zp2)
            .map(|(&a, &b)| ((u32::from(a) + u32::from(b)) % p2) as u16)
            .collect();
        MixedWord { p: self.p, zp, zp2 }
    }

    /// Coordinatewise additive inverse.
    pub fn neg(&self) -> MixedWord {
        let p = self.p.get() as u8;
        let p2 = self.p.square() as u16;
        let zp = self.zp.iter().map(|&a| (p - a) % p).collect();
        let zp2 = self.zp2.iter().map(|&a| (p2 - a) % p2).collect();
        MixedWord {
            p: self.p,
            zp,
            zp2,
        }
    }

    pub fn sub(&self, other: &MixedWord) -> Result<MixedWord> {
        self.add(&other.neg())
    }

    /// Scalar multiple `lambda * self`; `lambda` is reduced mod `p` in the
    /// first block and mod `p^2` in the second.
    pub fn scalar_mul(&self, lambda: u32) -> MixedWord {
        let p = self.p.get();
        let p2 = self.p.square();
        let lp = lambda % p;
        let lp2 = lambda % p2;
        let zp = self
            .zp
            .iter()
            .map(|&a| ((u32::from(a) * lp) % p) as u8)
            .collect();
        let zp2 = self
            .zp2
            .iter()
            .map(|&a| ((u32::from(a) * lp2) % p2) as u16)
            .collect();
        MixedWord {
            p: self.p,
            zp,
            zp2,
        }
    }

    /// Additive order of the word: the least `m >= 1` with `m * self = 0`.
    ///
    /// Always 1, `p`, or `p^2`: the lcm of the coordinate orders.
    pub fn order(&self) -> u32 {
        let mut ord = 1;
        if self.zp.iter().any(|&s| s != 0) {
            ord = self.p.get();
        }
        for &s in &self.zp2 {
            ord = ord.max(order(s, self.p));
        }
        ord
    }
}

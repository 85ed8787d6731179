//! The generalized Gray map from `Z_{p^2}` to `Z_p^p`, its extension to mixed
//! words, and the Hamming / homogeneous metrics it relates.
//!
//! The map sends `u = u0 + p*u1` to the length-p vector
//! `u0*(0,1,...,p-1) + u1*(1,1,...,1)  (mod p)`,
//! i.e. symbol `j` of the image is `u0*j + u1 mod p`. It is injective, and it
//! turns the homogeneous distance on mixed words into the Hamming distance on
//! their images.

use crate::arith::{expand, MixedWord, Prime};
use crate::error::{Error, Result};

/// Image of a single `Z_{p^2}` element: the length-p vector with
/// `v[j] = u0*j + u1 mod p`.
pub fn phi(u: u16, p: Prime) -> Vec<u8> {
    let (u0, u1) = expand(u, p);
    let pv = p.get();
    (0..pv)
        .map(|j| ((u32::from(u0) * j + u32::from(u1)) % pv) as u8)
        .collect()
}

/// All `p^2` images of [`phi`], precomputed for hot loops.
#[derive(Clone, Debug)]
pub struct PhiTable {
    p: Prime,
    images: Vec<Vec<u8>>,
}

impl PhiTable {
    pub fn new(p: Prime) -> PhiTable {
        let images = (0..p.square() as u16).map(|u| phi(u, p)).collect();
        PhiTable { p, images }
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn image(&self, u: u16) -> &[u8] {
        &self.images[usize::from(u)]
    }
}

/// Extension of [`phi`] to a mixed word: the `Z_p` block passes through
/// unchanged, each `Z_{p^2}` coordinate is replaced by its length-p image.
/// The result has length `alpha1 + p*alpha2`.
pub fn big_phi(w: &MixedWord) -> Vec<u8> {
    big_phi_with(w, &PhiTable::new(w.p()))
}

pub(crate) fn big_phi_with(w: &MixedWord, table: &PhiTable) -> Vec<u8> {
    debug_assert_eq!(w.p(), table.p);
    let p = w.p().get() as usize;
    let mut out = Vec::with_capacity(w.alpha1() + p * w.alpha2());
    out.extend_from_slice(w.zp());
    for &y in w.zp2() {
        out.extend_from_slice(table.image(y));
    }
    out
}

/// Preimage of a length-p vector under [`phi`], if it has one.
///
/// Symbol 0 of an image is `u1` and symbol 1 is `u0 + u1`, which pins the
/// candidate; the rest of the vector is then checked against it.
pub fn phi_inverse(v: &[u8], p: Prime) -> Option<u16> {
    if v.len() != p.get() as usize {
        return None;
    }
    let pv = p.get();
    let u1 = u32::from(v[0]);
    if u1 >= pv {
        return None;
    }
    let u0 = (u32::from(v[1]) + pv - u1 % pv) % pv;
    let u = (u0 + u1 * pv) as u16;
    if phi(u, p) == v {
        Some(u)
    } else {
        None
    }
}

/// Number of nonzero symbols.
pub fn hamming_weight(v: &[u8]) -> usize {
    v.iter().filter(|&&s| s != 0).count()
}

/// Number of coordinates where the vectors differ.
pub fn hamming_distance(a: &[u8], b: &[u8]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Homogeneous weight of a `Z_{p^2}` element: 0 for zero, `p` for a nonzero
/// multiple of `p`, and `p - 1` otherwise.
#[inline]
pub fn hom_weight_elem(u: u16, p: Prime) -> u32 {
    if u == 0 {
        0
    } else if u32::from(u) % p.get() == 0 {
        p.get()
    } else {
        p.get() - 1
    }
}

/// Homogeneous weight of a mixed word: Hamming weight on the `Z_p` block plus
/// the per-coordinate homogeneous weight on the `Z_{p^2}` block.
pub fn hom_weight(w: &MixedWord) -> u64 {
    let zp: u64 = w.zp().iter().filter(|&&s| s != 0).count() as u64;
    let zp2: u64 = w
        .zp2()
        .iter()
        .map(|&s| u64::from(hom_weight_elem(s, w.p())))
        .sum();
    zp + zp2
}

/// Homogeneous distance between mixed words: the homogeneous weight of their
/// difference. Equals the Hamming distance of the two Gray images.
pub fn hom_distance(u: &MixedWord, v: &MixedWord) -> Result<u64> {
    Ok(hom_weight(&u.sub(v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::odot;
    use proptest::prelude::*;

    fn p(v: u32) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn phi_p2_images() {
        let p2 = p(2);
        assert_eq!(phi(0, p2), vec![0, 0]);
        assert_eq!(phi(1, p2), vec![0, 1]);
        assert_eq!(phi(2, p2), vec![1, 1]);
        assert_eq!(phi(3, p2), vec![1, 0]);
    }

    #[test]
    fn phi_p3_images() {
        let p3 = p(3);
        assert_eq!(phi(0, p3), vec![0, 0, 0]);
        assert_eq!(phi(1, p3), vec![0, 1, 2]);
        assert_eq!(phi(2, p3), vec![0, 2, 1]);
        assert_eq!(phi(3, p3), vec![1, 1, 1]);
        assert_eq!(phi(4, p3), vec![1, 2, 0]);
        assert_eq!(phi(6, p3), vec![2, 2, 2]);
    }

    #[test]
    fn phi_injective_and_table_matches() {
        for pv in [2u32, 3, 5, 7] {
            let p = p(pv);
            let table = PhiTable::new(p);
            let mut seen = std::collections::HashSet::new();
            for u in 0..p.square() as u16 {
                let img = phi(u, p);
                assert_eq!(table.image(u), &img[..]);
                assert!(seen.insert(img), "phi not injective at u={u}, p={pv}");
            }
        }
    }

    #[test]
    fn phi_inverse_roundtrip_and_rejection() {
        for pv in [2u32, 3, 5] {
            let p = p(pv);
            for u in 0..p.square() as u16 {
                assert_eq!(phi_inverse(&phi(u, p), p), Some(u));
            }
        }
        let p3 = p(3);
        assert_eq!(phi_inverse(&[0, 0, 0], p3), Some(0));
        assert_eq!(phi_inverse(&[0, 2, 1], p3), Some(2));
        assert_eq!(phi_inverse(&[1, 0, 0], p3), None);
        assert_eq!(phi_inverse(&[0, 0], p3), None);
        // count the images among all 27 length-3 vectors: exactly 9
        let mut hits = 0;
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 0..3u8 {
                    if phi_inverse(&[a, b, c], p3).is_some() {
                        hits += 1;
                    }
                }
            }
        }
        assert_eq!(hits, 9);
    }

    #[test]
    fn big_phi_examples() {
        let p3 = p(3);
        let w = MixedWord::new(p3, vec![0, 1, 2], vec![1, 2]).unwrap();
        assert_eq!(big_phi(&w), vec![0, 1, 2, 0, 1, 2, 0, 2, 1]);

        let z = MixedWord::zero(p3, 3, 2);
        assert_eq!(big_phi(&z), vec![0; 9]);

        let ones = MixedWord::new(p3, vec![1, 1, 1], vec![3, 3]).unwrap();
        assert_eq!(big_phi(&ones), vec![1; 9]);
    }

    /// Shifting by a multiple of p shifts every image symbol by the same
    /// constant: phi(u + lambda*p) = phi(u) + (lambda,...,lambda).
    #[test]
    fn constant_shift_identity() {
        for pv in [2u32, 3, 5, 7] {
            let p = p(pv);
            let p2 = p.square();
            for u in 0..p2 as u16 {
                for lambda in 0..pv {
                    let shifted = ((u32::from(u) + lambda * pv) % p2) as u16;
                    let expect: Vec<u8> = phi(u, p)
                        .iter()
                        .map(|&s| ((u32::from(s) + lambda) % pv) as u8)
                        .collect();
                    assert_eq!(phi(shifted, p), expect, "u={u} lambda={lambda} p={pv}");
                }
            }
        }
    }

    /// On multiples of p the map is linear:
    /// phi(lambda*mu*p) = lambda*phi(mu*p) = lambda*mu*phi(p).
    #[test]
    fn multiples_of_p_scale_linearly() {
        for pv in [2u32, 3, 5, 7] {
            let p = p(pv);
            let p2 = p.square();
            let scale = |v: &[u8], c: u32| -> Vec<u8> {
                v.iter().map(|&s| ((u32::from(s) * c) % pv) as u8).collect()
            };
            let phi_p = phi(pv as u16, p);
            for lambda in 0..pv {
                for mu in 0..pv {
                    let lhs = phi(((lambda * mu * pv) % p2) as u16, p);
                    assert_eq!(lhs, scale(&phi(((mu * pv) % p2) as u16, p), lambda));
                    assert_eq!(lhs, scale(&phi_p, (lambda * mu) % p2));
                }
            }
        }
    }

    /// The carry product corrects additivity:
    /// phi(u) + phi(v) = phi(u + v - p*(u odot v)).
    #[test]
    fn carry_corrected_additivity() {
        for pv in [2u32, 3, 5, 7] {
            let p = p(pv);
            let p2 = p.square();
            for u in 0..p2 as u16 {
                for v in 0..p2 as u16 {
                    let sum: Vec<u8> = phi(u, p)
                        .iter()
                        .zip(&phi(v, p))
                        .map(|(&a, &b)| ((u32::from(a) + u32::from(b)) % pv) as u8)
                        .collect();
                    let carry = u32::from(odot(u, v, p));
                    let corrected =
                        ((u32::from(u) + u32::from(v) + p2 * pv - pv * carry) % p2) as u16;
                    assert_eq!(sum, phi(corrected, p), "u={u} v={v} p={pv}");
                }
            }
        }
    }

    /// Adding a multiple of p never interacts with the units digit:
    /// phi(p*u + v) = phi(p*u) + phi(v).
    #[test]
    fn multiple_of_p_additivity() {
        for pv in [2u32, 3, 5, 7] {
            let p = p(pv);
            let p2 = p.square();
            for u in 0..p2 as u32 {
                let pu = ((pv * u) % p2) as u16;
                for v in 0..p2 as u16 {
                    let lhs = phi(((u32::from(pu) + u32::from(v)) % p2) as u16, p);
                    let rhs: Vec<u8> = phi(pu, p)
                        .iter()
                        .zip(&phi(v, p))
                        .map(|(&a, &b)| ((u32::from(a) + u32::from(b)) % pv) as u8)
                        .collect();
                    assert_eq!(lhs, rhs, "pu={pu} v={v} p={pv}");
                }
            }
        }
    }

    /// phi(u+v) differs from phi(u) + phi(v) by the all-t0 vector, where t0
    /// flags a carry out of the units digits.
    #[test]
    fn sum_image_offset_is_units_carry() {
        for pv in [2u32, 3, 5, 7] {
            let p = p(pv);
            let p2 = p.square();
            for u in 0..p2 as u16 {
                for v in 0..p2 as u16 {
                    let (u0, _) = expand(u, p);
                    let (v0, _) = expand(v, p);
                    let t0 = u32::from(u32::from(u0) + u32::from(v0) >= pv);
                    let lhs = phi(((u32::from(u) + u32::from(v)) % p2) as u16, p);
                    let rhs: Vec<u8> = phi(u, p)
                        .iter()
                        .zip(&phi(v, p))
                        .map(|(&a, &b)| ((u32::from(a) + u32::from(b) + t0) % pv) as u8)
                        .collect();
                    assert_eq!(lhs, rhs, "u={u} v={v} p={pv}");
                }
            }
        }
    }

    /// For distinct u, v the image difference phi(u) - phi(v) is the
    /// constant vector lambda*1 (equal to phi(u - v)) exactly when
    /// u - v = lambda*p, and otherwise hits every symbol of Z_p exactly
    /// once.
    #[test]
    fn image_differences_constant_or_uniform() {
        for pv in [2u32, 3, 5, 7] {
            let p = p(pv);
            let p2 = p.square();
            for u in 0..p2 as u16 {
                for v in 0..p2 as u16 {
                    if u == v {
                        continue;
                    }
                    let diff_elem = ((u32::from(u) + p2 - u32::from(v)) % p2) as u16;
                    let diff_img: Vec<u8> = phi(u, p)
                        .iter()
                        .zip(&phi(v, p))
                        .map(|(&a, &b)| ((u32::from(a) + pv - u32::from(b)) % pv) as u8)
                        .collect();
                    if u32::from(diff_elem) % pv == 0 {
                        let lambda = (u32::from(diff_elem) / pv) as u8;
                        assert!(
                            diff_img.iter().all(|&s| s == lambda),
                            "u={u} v={v} p={pv}"
                        );
                        assert_eq!(diff_img, phi(diff_elem, p), "u={u} v={v} p={pv}");
                    } else {
                        let mut counts = vec![0u32; pv as usize];
                        for &s in &diff_img {
                            counts[usize::from(s)] += 1;
                        }
                        assert!(counts.iter().all(|&c| c == 1), "u={u} v={v} p={pv}");
                    }
                }
            }
        }
    }

    /// Image distances only depend on the element difference:
    /// d_H(phi(u), phi(v)) = wt_H(phi(u - v)).
    #[test]
    fn image_distance_is_difference_weight() {
        for pv in [2u32, 3, 5, 7] {
            let p = p(pv);
            let p2 = p.square();
            for u in 0..p2 as u16 {
                for v in 0..p2 as u16 {
                    let d = hamming_distance(&phi(u, p), &phi(v, p)).unwrap();
                    let diff = ((u32::from(u) + p2 - u32::from(v)) % p2) as u16;
                    assert_eq!(d, hamming_weight(&phi(diff, p)), "u={u} v={v} p={pv}");
                }
            }
        }
    }

    /// The single-element homogeneous weight is the Hamming weight of the
    /// element's image.
    #[test]
    fn hom_weight_matches_image_weight() {
        for pv in [2u32, 3, 5, 7] {
            let p = p(pv);
            for u in 0..p.square() as u16 {
                assert_eq!(
                    hom_weight_elem(u, p) as usize,
                    hamming_weight(&phi(u, p)),
                    "u={u} p={pv}"
                );
            }
        }
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_weight(&[0, 0, 0, 0]), 0);
        assert_eq!(hamming_weight(&[0, 1, 2, 0, 1, 2, 0, 2, 1]), 6);
        let v = [0u8, 1, 2];
        assert_eq!(hamming_distance(&v, &v).unwrap(), 0);
        assert!(hamming_distance(&[0, 1], &[0, 1, 2]).is_err());
    }

    #[test]
    fn hom_weight_examples() {
        let p3 = p(3);
        assert_eq!(hom_weight(&MixedWord::zero(p3, 3, 2)), 0);
        let w = MixedWord::new(p3, vec![0, 1, 2], vec![1, 2]).unwrap();
        assert_eq!(hom_weight(&w), 6);
        let v = MixedWord::new(p3, vec![0, 0, 0], vec![3, 6]).unwrap();
        assert_eq!(hom_weight(&v), 6);
    }

    #[test]
    fn hom_distance_examples() {
        let p3 = p(3);
        let w = MixedWord::new(p3, vec![0, 1, 2], vec![1, 2]).unwrap();
        assert_eq!(hom_distance(&w, &w).unwrap(), 0);
        let z = MixedWord::zero(p3, 3, 2);
        assert_eq!(hom_distance(&w, &z).unwrap(), 6);
        let bad = MixedWord::zero(p3, 2, 2);
        assert!(hom_distance(&w, &bad).is_err());
    }

    /// Exhaustive isometry check on a small shape: homogeneous distance on
    /// words equals Hamming distance on their images.
    #[test]
    fn isometry_small_exhaustive() {
        let p2 = p(2);
        let mut words = Vec::new();
        for a in 0..2u8 {
            for b in 0..4u16 {
                for c in 0..4u16 {
                    words.push(MixedWord::new(p2, vec![a], vec![b, c]).unwrap());
                }
            }
        }
        for u in &words {
            for v in &words {
                assert_eq!(
                    hom_distance(u, v).unwrap() as usize,
                    hamming_distance(&big_phi(u), &big_phi(v)).unwrap()
                );
            }
        }
    }

    fn mixed_word_pair() -> impl Strategy<Value = (MixedWord, MixedWord)> {
        (prop_oneof![Just(2u32), Just(3), Just(5)], 0..6usize, 0..5usize).prop_flat_map(
            |(pv, a1, a2)| {
                let p = Prime::new(pv).unwrap();
                let zp = proptest::collection::vec(0..pv as u8, a1);
                let zp2 = proptest::collection::vec(0..p.square() as u16, a2);
                (zp.clone(), zp2.clone(), zp, zp2).prop_map(move |(x1, y1, x2, y2)| {
                    (
                        MixedWord::new(p, x1, y1).unwrap(),
                        MixedWord::new(p, x2, y2).unwrap(),
                    )
                })
            },
        )
    }

    proptest! {
        #[test]
        fn isometry_random_pairs((u, v) in mixed_word_pair()) {
            let d_hom = hom_distance(&u, &v).unwrap() as usize;
            let d_ham = hamming_distance(&big_phi(&u), &big_phi(&v)).unwrap();
            prop_assert_eq!(d_hom, d_ham);
        }

        #[test]
        fn big_phi_length((u, _v) in mixed_word_pair()) {
            let n = u.alpha1() + u.p().get() as usize * u.alpha2();
            prop_assert_eq!(big_phi(&u).len(), n);
        }
    }
}

//! Published classification data for generalized Hadamard codes over `Z_3`
//! obtained from `Z_3 Z_9`-additive constructions, keyed by the exponent `t`
//! with length `3^t`. Used as golden values for regression checks.

use crate::error::{Error, Result};
use serde::Serialize;

/// Which construction family a reference row belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Additive in `Z_p^alpha1 x Z_{p^2}^alpha2` with `alpha1 > 0`.
    Mixed,
    /// Additive in `Z_{p^2}^alpha2` alone (`alpha1 = 0`).
    QuaternaryAnalogue,
}

/// One classified code: its parameters and the invariant pair `(r, k)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceRow {
    pub t: u32,
    pub family: Family,
    pub alpha1: u64,
    pub alpha2: u64,
    pub t1: u32,
    pub t2: u32,
    pub rank: u32,
    pub kernel_dim: u32,
}

impl ReferenceRow {
    const fn mixed(t: u32, alpha1: u64, alpha2: u64, t1: u32, t2: u32, r: u32, k: u32) -> Self {
        ReferenceRow {
            t,
            family: Family::Mixed,
            alpha1,
            alpha2,
            t1,
            t2,
            rank: r,
            kernel_dim: k,
        }
    }

    const fn pure(t: u32, alpha2: u64, t1: u32, t2: u32, r: u32, k: u32) -> Self {
        ReferenceRow {
            t,
            family: Family::QuaternaryAnalogue,
            alpha1: 0,
            alpha2,
            t1,
            t2,
            rank: r,
            kernel_dim: k,
        }
    }
}

/// Classified codes of length `3^t` for `t = 2..=8`.
///
/// Mixed rows with `t1 = 0` are the linear ones (rank and kernel dimension
/// both `t + 1`); rows with `t1 >= 1` come from the recursive construction
/// seeded by the order-(3,9) starting matrix. Rows with `alpha1 = 0` are the
/// single-alphabet counterparts included for cross-family comparisons.
static REFERENCE_P3: &[ReferenceRow] = &[
    // t = 2
    ReferenceRow::mixed(2, 9, 0, 0, 3, 3, 3),
    ReferenceRow::mixed(2, 3, 2, 1, 1, 4, 2),
    ReferenceRow::pure(2, 3, 1, 1, 3, 3),
    // t = 3
    ReferenceRow::mixed(3, 27, 0, 0, 4, 4, 4),
    ReferenceRow::mixed(3, 9, 6, 1, 2, 5, 3),
    ReferenceRow::pure(3, 9, 1, 2, 4, 4),
    ReferenceRow::pure(3, 9, 2, 0, 5, 2),
    // t = 4
    ReferenceRow::mixed(4, 81, 0, 0, 5, 5, 5),
    ReferenceRow::mixed(4, 27, 18, 1, 3, 6, 4),
    ReferenceRow::mixed(4, 9, 24, 2, 1, 10, 3),
    ReferenceRow::pure(4, 27, 1, 3, 5, 5),
    ReferenceRow::pure(4, 27, 2, 1, 6, 3),
    // t = 5
    ReferenceRow::mixed(5, 243, 0, 0, 6, 6, 6),
    ReferenceRow::mixed(5, 81, 54, 1, 4, 7, 5),
    ReferenceRow::mixed(5, 27, 72, 2, 2, 11, 4),
    ReferenceRow::pure(5, 81, 1, 4, 6, 6),
    ReferenceRow::pure(5, 81, 2, 2, 7, 4),
    ReferenceRow::pure(5, 81, 3, 0, 11, 3),
    // t = 6
    ReferenceRow::mixed(6, 729, 0, 0, 7, 7, 7),
    ReferenceRow::mixed(6, 243, 162, 1, 5, 8, 6),
    ReferenceRow::mixed(6, 81, 216, 2, 3, 12, 5),
    ReferenceRow::mixed(6, 27, 234, 3, 1, 20, 4),
    ReferenceRow::pure(6, 243, 1, 5, 7, 7),
    ReferenceRow::pure(6, 243, 2, 3, 8, 5),
    ReferenceRow::pure(6, 243, 3, 1, 12, 4),
    // t = 7
    ReferenceRow::mixed(7, 2187, 0, 0, 8, 8, 8),
    ReferenceRow::mixed(7, 729, 486, 1, 6, 9, 7),
    ReferenceRow::mixed(7, 243, 648, 2, 4, 13, 6),
    ReferenceRow::mixed(7, 81, 702, 3, 2, 21, 5),
    ReferenceRow::pure(7, 729, 1, 6, 8, 8),
    ReferenceRow::pure(7, 729, 2, 4, 9, 6),
    ReferenceRow::pure(7, 729, 3, 2, 13, 5),
    ReferenceRow::pure(7, 729, 4, 0, 21, 4),
    // t = 8
    ReferenceRow::mixed(8, 6561, 0, 0, 9, 9, 9),
    ReferenceRow::mixed(8, 2187, 1458, 1, 7, 10, 8),
    ReferenceRow::mixed(8, 729, 1944, 2, 5, 14, 7),
    ReferenceRow::mixed(8, 243, 2106, 3, 3, 22, 6),
    ReferenceRow::mixed(8, 81, 2160, 4, 1, 35, 5),
    ReferenceRow::pure(8, 2187, 1, 7, 9, 9),
    ReferenceRow::pure(8, 2187, 2, 5, 10, 7),
    ReferenceRow::pure(8, 2187, 3, 3, 14, 6),
    ReferenceRow::pure(8, 2187, 4, 1, 22, 5),
];

/// All published rows for the given prime; only `p = 3` is tabulated.
pub fn reference_table(p: u32) -> Result<&'static [ReferenceRow]> {
    match p {
        3 => Ok(REFERENCE_P3),
        _ => Err(Error::UntabulatedPrime(u64::from(p))),
    }
}

/// Published rows of length `p^t` in the mixed family, in the stored order
/// (linear row first, then increasing `t1`).
pub fn reference_rows_mixed(p: u32, t: u32) -> Result<Vec<ReferenceRow>> {
    Ok(reference_table(p)?
        .iter()
        .filter(|r| r.t == t && r.family == Family::Mixed)
        .copied()
        .collect())
}

/// Looks up the expected `(rank, kernel_dim)` for a mixed-family code with
/// the given parameters, if tabulated.
pub fn reference_lookup(p: u32, t1: u32, t2: u32) -> Option<(u32, u32)> {
    let rows = reference_table(p).ok()?;
    rows.iter()
        .find(|r| r.family == Family::Mixed && r.t1 == t1 && r.t2 == t2 && r.alpha1 > 0)
        .map(|r| (r.rank, r.kernel_dim))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::code_type;
    use crate::arith::Prime;

    #[test]
    fn untabulated_primes_error() {
        assert!(reference_table(3).is_ok());
        assert!(matches!(reference_table(2), Err(Error::UntabulatedPrime(2))));
        assert!(matches!(reference_table(5), Err(Error::UntabulatedPrime(5))));
    }

    #[test]
    fn row_parameters_are_internally_consistent() {
        let p = 3u64;
        for row in reference_table(3).unwrap() {
            // length alpha1 + p*alpha2 == p^t for every family
            let n = row.alpha1 + p * row.alpha2;
            assert_eq!(n, p.pow(row.t), "length mismatch in {row:?}");
            // |C| = p*N for a generalized Hadamard code: 2*t1 + t2 = t + 1
            assert_eq!(2 * row.t1 + row.t2, row.t + 1, "size mismatch in {row:?}");
            // kernel never exceeds rank
            assert!(row.kernel_dim <= row.rank, "k > r in {row:?}");
            match row.family {
                Family::Mixed => {
                    if row.t1 == 0 {
                        // linear rows: r = k = t + 1
                        assert_eq!(row.rank, row.t + 1);
                        assert_eq!(row.kernel_dim, row.t + 1);
                        assert_eq!(row.alpha2, 0);
                        assert_eq!(row.alpha1, p.pow(row.t));
                    } else {
                        // recursive rows must match the closed-form type
                        assert_eq!(row.t, 2 * row.t1 + row.t2 - 1);
                        let ct = code_type(Prime::new(3).unwrap(), row.t1, row.t2).unwrap();
                        assert_eq!(ct.alpha1, row.alpha1, "alpha1 in {row:?}");
                        assert_eq!(ct.alpha2, row.alpha2, "alpha2 in {row:?}");
                    }
                }
                Family::QuaternaryAnalogue => {
                    assert_eq!(row.alpha1, 0);
                    assert_eq!(row.alpha2, p.pow(row.t - 1));
                }
            }
        }
    }

    #[test]
    fn every_t_has_the_expected_row_count() {
        let counts: Vec<(u32, usize, usize)> = (2..=8)
            .map(|t| {
                let mixed = reference_rows_mixed(3, t).unwrap().len();
                let pure = reference_table(3)
                    .unwrap()
                    .iter()
                    .filter(|r| r.t == t && r.family == Family::QuaternaryAnalogue)
                    .count();
                (t, mixed, pure)
            })
            .collect();
        assert_eq!(
            counts,
            vec![
                (2, 2, 1),
                (3, 2, 2),
                (4, 3, 2),
                (5, 3, 3),
                (6, 4, 3),
                (7, 4, 4),
                (8, 5, 4),
            ]
        );
    }

    #[test]
    fn kernel_dims_distinct_within_each_t_mixed() {
        // the (r,k) pairs separate all mixed-family codes of each length
        for t in 2..=8 {
            let rows = reference_rows_mixed(3, t).unwrap();
            let mut pairs: Vec<(u32, u32)> =
                rows.iter().map(|r| (r.rank, r.kernel_dim)).collect();
            let before = pairs.len();
            pairs.sort_unstable();
            pairs.dedup();
            assert_eq!(pairs.len(), before, "duplicate (r,k) at t={t}");
        }
    }

    #[test]
    fn lookup_examples() {
        assert_eq!(reference_lookup(3, 1, 1), Some((4, 2)));
        assert_eq!(reference_lookup(3, 2, 1), Some((10, 3)));
        assert_eq!(reference_lookup(3, 4, 1), Some((35, 5)));
        assert_eq!(reference_lookup(3, 5, 1), None);
        assert_eq!(reference_lookup(5, 1, 1), None);
    }
}

//! Classification invariants of codes over `Z_p`: rank (dimension of the
//! linear span), kernel and its dimension, linearity, and the combined
//! report used to distinguish non-equivalent codes.

use crate::code::{is_gh_code_budgeted, min_distance, weight_distribution, Budget, GhMode,
                  GrayCode};
use crate::construct::{CodeType, GeneratorMatrix};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

/// Row-echelon accumulator over `GF(p)`.
struct Echelon {
    p: u32,
    inv: Vec<u32>,
    /// Reduced rows, one per pivot, in insertion order.
    rows: Vec<Vec<u8>>,
    /// Pivot column of each row in `rows`.
    pivots: Vec<usize>,
    /// Column -> index into `rows`, dense.
    pivot_of_col: Vec<Option<usize>>,
}

impl Echelon {
    fn new(p: u32, n: usize) -> Echelon {
        // inverse table via Fermat: a^(p-2) mod p
        let inv = (0..p)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    let mut acc = 1u64;
                    let mut base = u64::from(a);
                    let mut e = p - 2;
                    while e > 0 {
                        if e & 1 == 1 {
                            acc = acc * base % u64::from(p);
                        }
                        base = base * base % u64::from(p);
                        e >>= 1;
                    }
                    acc as u32
                }
            })
            .collect();
        Echelon {
            p,
            inv,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_of_col: vec![None; n],
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `word` against the accumulated rows; if a nonzero remainder
    /// survives, normalizes it, back-substitutes, and adds it as a new
    /// pivot row. Returns true when the rank grew.
    fn absorb(&mut self, word: &[u8]) -> bool {
        let p = self.p;
        let mut w = word.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let c = u32::from(w[col]);
            if c != 0 {
                let mul = p - c;
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = ((u32::from(*x) + mul * u32::from(r)) % p) as u8;
                }
            }
        }
        let Some(col) = w.iter().position(|&s| s != 0) else {
            return false;
        };
        let scale = self.inv[usize::from(w[col])];
        for x in w.iter_mut() {
            *x = ((u32::from(*x) * scale) % p) as u8;
        }
        // eliminate the new pivot column from existing rows to keep the
        // basis reduced
        for i in 0..self.rows.len() {
            let c = u32::from(self.rows[i][col]);
            if c != 0 {
                let mul = p - c;
                let row_i = &mut self.rows[i];
                for (x, &r) in row_i.iter_mut().zip(&w) {
                    *x = ((u32::from(*x) + mul * u32::from(r)) % p) as u8;
                }
            }
        }
        self.pivot_of_col[col] = Some(self.rows.len());
        self.pivots.push(col);
        self.rows.push(w);
        true
    }
}

/// Dimension over `Z_p` of the linear span of the code.
pub fn rank(code: &GrayCode) -> usize {
    let mut ech = Echelon::new(code.p().get(), code.length());
    for w in code.words() {
        ech.absorb(w);
    }
    ech.rank()
}

/// The kernel of the code: all vectors `x` with `x + C = C`, together with
/// its dimension.
///
/// When the zero word is in the code the kernel is a subset of the code, so
/// candidates are exactly the codewords; each is kept when every translate
/// stays inside the code (first failure exits the scan for that candidate).
/// The result is verified to be closed under addition and scaling, and its
/// size to be an exact power of p. Words are returned sorted.
pub fn kernel(code: &GrayCode, budget: &Budget) -> Result<(Vec<Vec<u8>>, u32)> {
    if !code.contains(&vec![0u8; code.length()]) {
        return Err(Error::ZeroMissing);
    }
    let required = (code.size() as u64)
        .saturating_mul(code.size() as u64)
        .saturating_mul(code.length() as u64);
    if required > budget.max_symbol_ops {
        return Err(Error::BudgetExceeded {
            what: "kernel membership scan",
            required,
            budget: budget.max_symbol_ops,
        });
    }
    let p = code.p().get() as usize;
    let mut members: Vec<Vec<u8>> = code
        .words()
        .par_iter()
        .filter(|x| {
            let mut sum = vec![0u8; code.length()];
            code.words().iter().all(|c| {
                for (s, (&a, &b)) in sum.iter_mut().zip(x.iter().zip(c)) {
                    *s = ((usize::from(a) + usize::from(b)) % p) as u8;
                }
                code.contains(&sum)
            })
        })
        .cloned()
        .collect();
    members.sort_unstable();

    let dim = exact_log(members.len() as u64, code.p().get())
        .ok_or_else(|| {
            Error::Internal(format!(
                "kernel size {} is not a power of {}",
                members.len(),
                code.p().get()
            ))
        })?;
    verify_linear_subcode(&members, code)?;
    Ok((members, dim))
}

fn exact_log(mut n: u64, base: u32) -> Option<u32> {
    let base = u64::from(base);
    let mut e = 0;
    while n > 1 {
        if n % base != 0 {
            return None;
        }
        n /= base;
        e += 1;
    }
    if n == 1 {
        Some(e)
    } else {
        None
    }
}

/// Checks the kernel really is a linear subcode: closed under addition and
/// under scalar multiples (spot-checking addition on all pairs is quadratic
/// in the kernel, which stays small).
fn verify_linear_subcode(members: &[Vec<u8>], code: &GrayCode) -> Result<()> {
    let p = code.p().get() as usize;
    let set: std::collections::HashSet<&Vec<u8>> = members.iter().collect();
    let bad = members.par_iter().find_map_first(|x| {
        for y in members {
            let sum: Vec<u8> = x
                .iter()
                .zip(y)
                .map(|(&a, &b)| ((usize::from(a) + usize::from(b)) % p) as u8)
                .collect();
            if !set.contains(&sum) {
                return Some("addition".to_string());
            }
        }
        for lambda in 2..p {
            let mul: Vec<u8> = x
                .iter()
                .map(|&a| ((usize::from(a) * lambda) % p) as u8)
                .collect();
            if !set.contains(&mul) {
                return Some("scaling".to_string());
            }
        }
        None
    });
    match bad {
        Some(op) => Err(Error::Internal(format!(
            "kernel is not closed under {op}"
        ))),
        None => Ok(()),
    }
}

/// A code over a prime field is linear exactly when its span is no bigger
/// than itself.
pub fn is_linear(code: &GrayCode) -> bool {
    match exact_log(code.size() as u64, code.p().get()) {
        Some(dim) => rank(code) == dim as usize,
        None => false,
    }
}

/// First pair of codewords (in lexicographic order) whose sum leaves the
/// code; `None` when the code is linear.
pub fn nonlinearity_witness(code: &GrayCode) -> Option<(Vec<u8>, Vec<u8>)> {
    if is_linear(code) {
        return None;
    }
    let p = code.p().get() as usize;
    let mut sorted: Vec<&Vec<u8>> = code.words().iter().collect();
    sorted.sort_unstable();
    for u in &sorted {
        for v in &sorted {
            let sum: Vec<u8> = u
                .iter()
                .zip(v.iter())
                .map(|(&a, &b)| ((usize::from(a) + usize::from(b)) % p) as u8)
                .collect();
            if !code.contains(&sum) {
                return Some(((*u).clone(), (*v).clone()));
            }
        }
    }
    // over a prime field a finite set closed under addition is a subspace,
    // so a non-linear code always yields a pair
    unreachable!("non-linear code with no violating pair");
}

/// Checks a claimed witness: both words must belong to the code and their
/// sum must not.
pub fn is_nonlinearity_witness(code: &GrayCode, u: &[u8], v: &[u8]) -> bool {
    if u.len() != code.length() || v.len() != code.length() {
        return false;
    }
    let p = code.p().get() as usize;
    let sum: Vec<u8> = u
        .iter()
        .zip(v)
        .map(|(&a, &b)| ((usize::from(a) + usize::from(b)) % p) as u8)
        .collect();
    code.contains(u) && code.contains(v) && !code.contains(&sum)
}

/// Everything the classification needs to know about one code.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub p: u32,
    pub code_type: CodeType,
    pub length: usize,
    pub size: u64,
    pub min_distance: usize,
    pub rank: u32,
    pub kernel_dim: u32,
    pub linear: bool,
    pub gh: bool,
    pub gh_lambda: Option<u64>,
    pub gh_mode: GhMode,
    /// Sorted (weight, count) pairs over the weights that occur.
    pub weight_distribution: Vec<(usize, u64)>,
}

/// Builds the full invariant report for the code generated by `gen`,
/// cross-checking the invariants against each other.
pub fn report(gen: &GeneratorMatrix, budget: &Budget, seed: u64) -> Result<InvariantReport> {
    let additive = crate::code::enumerate(gen, budget)?;
    let gray = crate::code::gray_image(&additive);
    report_for_gray(&gray, budget, seed)
}

/// Same as [`report`] but for an already-materialized Gray image with a
/// known source type.
pub fn report_for_gray(gray: &GrayCode, budget: &Budget, seed: u64) -> Result<InvariantReport> {
    let ct = gray
        .source_type()
        .ok_or_else(|| Error::InvalidParameter("code has no declared type".into()))?;
    let d = min_distance(gray, seed)?;
    let r = rank(gray) as u32;
    let (_, k) = kernel(gray, budget)?;
    let verdict = is_gh_code_budgeted(gray, budget)?;
    let linear = is_linear(gray);
    let wd = weight_distribution(gray);

    let log_size = exact_log(gray.size() as u64, gray.p().get()).ok_or_else(|| {
        Error::Internal(format!(
            "code size {} is not a power of {}",
            gray.size(),
            gray.p().get()
        ))
    })?;
    if k > log_size || log_size > r {
        return Err(Error::Internal(format!(
            "invariant ordering violated: k={k}, log_p size={log_size}, r={r}"
        )));
    }
    if linear != (r == k) || (linear && r != log_size) {
        return Err(Error::Internal(
            "linearity verdict disagrees with rank/kernel".into(),
        ));
    }
    if verdict.is_gh {
        let n = gray.length();
        let pv = gray.p().get() as usize;
        if d != n * (pv - 1) / pv || gray.size() != pv * n {
            return Err(Error::Internal(
                "generalized Hadamard verdict disagrees with distance or size".into(),
            ));
        }
    }

    Ok(InvariantReport {
        p: gray.p().get(),
        code_type: ct,
        length: gray.length(),
        size: gray.size() as u64,
        min_distance: d,
        rank: r,
        kernel_dim: k,
        linear,
        gh: verdict.is_gh,
        gh_lambda: verdict.lambda,
        gh_mode: verdict.mode,
        weight_distribution: wd,
    })
}

/// Outcome of comparing two invariant signatures.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SignatureVerdict {
    /// Some invariant differs: the codes cannot be equivalent.
    Distinct,
    /// All compared invariants agree. Not a proof of equivalence.
    Indistinguishable,
}

/// Compares the invariants that are preserved by monomial equivalence:
/// size, minimum distance, rank, kernel dimension, and the full weight
/// distribution. Both codes must share `p` and length.
pub fn signature_compare(a: &InvariantReport, b: &InvariantReport) -> Result<SignatureVerdict> {
    if a.p != b.p {
        return Err(Error::InvalidParameter(format!(
            "cannot compare codes over Z_{} and Z_{}",
            a.p, b.p
        )));
    }
    if a.length != b.length {
        return Err(Error::LengthMismatch {
            left: a.length,
            right: b.length,
        });
    }
    let same = a.size == b.size
        && a.min_distance == b.min_distance
        && a.rank == b.rank
        && a.kernel_dim == b.kernel_dim
        && a.weight_distribution == b.weight_distribution;
    Ok(if same {
        SignatureVerdict::Indistinguishable
    } else {
        SignatureVerdict::Distinct
    })
}

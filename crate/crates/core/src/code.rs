//! Materialized codes: enumeration of the additive code generated by a
//! matrix, its Gray image over `Z_p`, minimum distance, and verification of
//! the generalized Hadamard property.

use crate::arith::{MixedWord, Prime};
use crate::construct::{CodeType, GeneratorMatrix};
use crate::error::{Error, Result};
use crate::gray::{big_phi_with, hamming_distance, hamming_weight, PhiTable};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;

/// Work limits for materialization and verification.
///
/// `max_codewords` caps how many codewords may be enumerated;
/// `max_symbol_ops` caps the symbol-level operation count of the quadratic
/// and cubic scans (pairwise verification, kernel membership).
#[derive(Copy, Clone, Debug, Serialize)]
pub struct Budget {
    pub max_codewords: u64,
    pub max_symbol_ops: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_codewords: 1 << 21,
            max_symbol_ops: 10_000_000_000,
        }
    }
}

/// The additive code generated by a matrix: all `Z`-linear combinations of
/// its rows, with coefficients running mod the row order.
#[derive(Clone, Debug)]
pub struct AdditiveCode {
    code_type: CodeType,
    p: Prime,
    words: Vec<MixedWord>,
}

impl AdditiveCode {
    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn code_type(&self) -> CodeType {
        self.code_type
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.words.len()
    }

    /// Codewords in enumeration order (coefficient of the first generator
    /// row most significant).
    #[inline]
    pub fn words(&self) -> &[MixedWord] {
        &self.words
    }
}

/// Enumerates every codeword of the additive code generated by `gen`.
///
/// Coefficients form a mixed-radix counter over the row orders with the
/// first row's coefficient most significant, so the output order is
/// deterministic. Verifies that exactly `p^(2*t1 + t2)` distinct words are
/// produced and that a sample of pairwise sums stays inside the code.
pub fn enumerate(gen: &GeneratorMatrix, budget: &Budget) -> Result<AdditiveCode> {
    let ct = gen.code_type();
    let expected = ct.size();
    if expected > budget.max_codewords {
        return Err(Error::BudgetExceeded {
            what: "codeword enumeration",
            required: expected,
            budget: budget.max_codewords,
        });
    }

    let orders = gen.row_orders();
    let rows = gen.rows();
    let mut words = Vec::with_capacity(expected as usize);
    let mut current = MixedWord::zero(gen.p(), gen.alpha1(), gen.alpha2());
    let mut coeffs = vec![0u32; rows.len()];
    'outer: loop {
        words.push(current.clone());
        // mixed-radix increment, last coefficient fastest; rebuild the
        // running sum only above the digit that rolled over
        let mut pos = rows.len();
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            coeffs[pos] += 1;
            if coeffs[pos] < orders[pos] {
                current = current.add_unchecked(&rows[pos]);
                break;
            }
            coeffs[pos] = 0;
            // subtract order*row == add nothing: cheaper to resum below
        }
        // positions after `pos` were reset to zero; recompute their
        // contribution by subtracting (order-1) copies == adding one copy
        for i in pos + 1..rows.len() {
            current = current.add_unchecked(&rows[i]);
        }
    }

    if words.len() as u64 != expected {
        return Err(Error::Internal(format!(
            "enumerated {} codewords, expected {expected}",
            words.len()
        )));
    }
    let index: HashSet<&MixedWord> = words.iter().collect();
    if index.len() as u64 != expected {
        return Err(Error::Internal(format!(
            "generator rows are not independent: {} distinct codewords, expected {expected}",
            index.len()
        )));
    }
    if !words[0].is_zero() {
        return Err(Error::Internal(
            "enumeration did not start at the zero codeword".into(),
        ));
    }
    // spot-check closure under addition on a fixed-seed sample
    let mut rng = ChaCha8Rng::seed_from_u64(0x67686364);
    for _ in 0..64 {
        let u = &words[rng.gen_range(0..words.len())];
        let v = &words[rng.gen_range(0..words.len())];
        let sum = u.add_unchecked(v);
        if !index.contains(&sum) {
            return Err(Error::Internal(
                "enumerated set is not closed under addition".into(),
            ));
        }
    }

    Ok(AdditiveCode {
        code_type: ct,
        p: gen.p(),
        words,
    })
}

/// A code over `Z_p`: a set of equal-length vectors with O(1) membership.
#[derive(Clone, Debug)]
pub struct GrayCode {
    p: Prime,
    length: usize,
    words: Vec<Vec<u8>>,
    index: HashSet<Vec<u8>>,
    source_type: Option<CodeType>,
}

impl GrayCode {
    /// Builds a code from explicit words; validates symbol ranges and equal
    /// lengths, and drops duplicates (keeping first occurrence order).
    pub fn from_words(p: Prime, words: Vec<Vec<u8>>) -> Result<GrayCode> {
        let length = words.first().map_or(0, |w| w.len());
        let mut index = HashSet::with_capacity(words.len());
        let mut unique = Vec::with_capacity(words.len());
        for w in words {
            if w.len() != length {
                return Err(Error::LengthMismatch {
                    left: length,
                    right: w.len(),
                });
            }
            if let Some(&s) = w.iter().find(|&&s| u32::from(s) >= p.get()) {
                return Err(Error::InvalidParameter(format!(
                    "symbol {s} out of range for Z_{}",
                    p.get()
                )));
            }
            if index.insert(w.clone()) {
                unique.push(w);
            }
        }
        Ok(GrayCode {
            p,
            length,
            words: unique,
            index,
            source_type: None,
        })
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn length(&self) -> usize {
        self.length
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.words.len()
    }

    #[inline]
    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, w: &[u8]) -> bool {
        self.index.contains(w)
    }

    /// Type of the additive code this image came from, when known.
    #[inline]
    pub fn source_type(&self) -> Option<CodeType> {
        self.source_type
    }
}

/// Image of the additive code under the Gray map. Injectivity is checked:
/// the image must have exactly as many words as the source.
pub fn gray_image(code: &AdditiveCode) -> GrayCode {
    let table = PhiTable::new(code.p());
    let words: Vec<Vec<u8>> = code
        .words()
        .par_iter()
        .map(|w| big_phi_with(w, &table))
        .collect();
    let index: HashSet<Vec<u8>> = words.iter().cloned().collect();
    assert_eq!(
        index.len(),
        code.size(),
        "Gray map failed to be injective on the code"
    );
    let length = words.first().map_or(0, |w| w.len());
    GrayCode {
        p: code.p(),
        length,
        words,
        index,
        source_type: Some(code.code_type()),
    }
}

/// Minimum Hamming distance of a distance-invariant code, computed as the
/// minimum nonzero codeword weight.
///
/// Gray images of additive codes are distance invariant, which the seeded
/// sample of codeword pairs cross-checks: any sampled pair closer than the
/// reported minimum is an internal error (and flags a non-distance-invariant
/// input).
pub fn min_distance(code: &GrayCode, seed: u64) -> Result<usize> {
    if code.size() < 2 {
        return Err(Error::TrivialCode);
    }
    let min_weight = code
        .words()
        .par_iter()
        .map(|w| hamming_weight(w))
        .filter(|&w| w > 0)
        .min()
        .ok_or(Error::TrivialCode)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = 1024.min(code.size() * (code.size() - 1) / 2);
    for _ in 0..samples {
        let i = rng.gen_range(0..code.size());
        let j = rng.gen_range(0..code.size());
        if i == j {
            continue;
        }
        let d = hamming_distance(&code.words()[i], &code.words()[j])?;
        if d < min_weight {
            return Err(Error::Internal(format!(
                "distance {d} between words {i} and {j} undercuts the minimum weight \
                 {min_weight}; code is not distance invariant"
            )));
        }
    }
    Ok(min_weight)
}

/// Number of codewords at each Hamming weight, as sorted (weight, count)
/// pairs over the weights that occur.
pub fn weight_distribution(code: &GrayCode) -> Vec<(usize, u64)> {
    let n = code.length();
    let hist = code
        .words()
        .par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, w| {
                acc[hamming_weight(w)] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    hist.into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect()
}

/// How the generalized Hadamard property was verified.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GhMode {
    /// Pairwise difference check over every pair of codewords.
    Full,
    /// Structural decomposition: the code must be the set of rows with first
    /// symbol zero plus all constant translates, with the pairwise check run
    /// only inside the zero-leading rows. Equivalent to `Full` (see
    /// [`is_gh_code`]), at 1/p^2 of the pair cost.
    Reduced,
}

/// Outcome of generalized-Hadamard verification.
#[derive(Clone, Debug, Serialize)]
pub struct GhVerdict {
    pub is_gh: bool,
    /// `N/p` when the property holds (each symbol appears this often in
    /// every non-constant difference of codewords).
    pub lambda: Option<u64>,
    pub mode: GhMode,
    /// A pair of codewords whose difference is neither constant nor
    /// balanced, when one exists.
    pub witness: Option<(Vec<u8>, Vec<u8>)>,
    /// Human-readable failure detail.
    pub reason: Option<String>,
}

impl GhVerdict {
    fn pass(lambda: u64, mode: GhMode) -> GhVerdict {
        GhVerdict {
            is_gh: true,
            lambda: Some(lambda),
            mode,
            witness: None,
            reason: None,
        }
    }

    fn fail(mode: GhMode, reason: String) -> GhVerdict {
        GhVerdict {
            is_gh: false,
            lambda: None,
            mode,
            witness: None,
            reason: Some(reason),
        }
    }

    fn fail_with_witness(mode: GhMode, u: Vec<u8>, v: Vec<u8>) -> GhVerdict {
        GhVerdict {
            is_gh: false,
            lambda: None,
            mode,
            witness: Some((u, v)),
            reason: Some("difference of witness pair is neither constant nor balanced".into()),
        }
    }
}

/// Picks the cheapest verification mode that fits the ops budget:
/// `Full` costs about `p^2 * N^3` symbol operations (`(pN)^2 / 2` pairs of
/// length `N`), `Reduced` about `N^3` (`N^2 / 2` pairs). Returns `None` when
/// neither fits.
pub fn select_gh_mode(p: Prime, length: usize, max_symbol_ops: u64) -> Option<GhMode> {
    let n = length as u128;
    let full = u128::from(p.get()) * u128::from(p.get()) * n * n * n;
    let reduced = n * n * n;
    if full <= u128::from(max_symbol_ops) {
        Some(GhMode::Full)
    } else if reduced <= u128::from(max_symbol_ops) {
        Some(GhMode::Reduced)
    } else {
        None
    }
}

/// Mode selection plus verification; errors when the budget admits neither
/// mode.
pub fn is_gh_code_budgeted(code: &GrayCode, budget: &Budget) -> Result<GhVerdict> {
    match select_gh_mode(code.p(), code.length(), budget.max_symbol_ops) {
        Some(mode) => Ok(is_gh_code(code, mode)),
        None => Err(Error::BudgetExceeded {
            what: "generalized Hadamard verification",
            required: (code.length() as u64).saturating_pow(3),
            budget: budget.max_symbol_ops,
        }),
    }
}

/// Checks whether the code is a generalized Hadamard code of length `N`:
/// it must have exactly `p*N` codewords, contain all `p` constant vectors,
/// and every difference of distinct codewords must be either constant or
/// balanced (each symbol of `Z_p` exactly `N/p` times).
///
/// `Reduced` mode instead verifies that the zero-leading codewords number
/// exactly `N`, that subtracting its leading symbol from any codeword lands
/// back in the code, and runs the pairwise check only on the zero-leading
/// rows. The two modes accept exactly the same codes: the reduced conditions
/// imply the full ones because every codeword is then a zero-leading row
/// plus a constant, and conversely a code passing the full check splits into
/// classes of codewords differing by constants — mapping symbols to complex
/// p-th roots of unity makes rows from distinct classes orthogonal, so there
/// are at most N classes, forcing every class to hold all p translates.
pub fn is_gh_code(code: &GrayCode, mode: GhMode) -> GhVerdict {
    let p = code.p();
    let pv = p.get() as usize;
    let n = code.length();

    if n == 0 || n % pv != 0 {
        return GhVerdict::fail(mode, format!("length {n} is not a positive multiple of {pv}"));
    }
    if code.size() != pv * n {
        return GhVerdict::fail(
            mode,
            format!("code has {} words, a GH code of length {n} has {}", code.size(), pv * n),
        );
    }
    for lambda in 0..pv as u8 {
        if !code.contains(&vec![lambda; n]) {
            return GhVerdict::fail(mode, format!("constant vector {lambda}*1 is missing"));
        }
    }
    let lambda = (n / pv) as u64;

    match mode {
        GhMode::Full => {
            let words = code.words();
            match violating_pair(words, pv, lambda, false) {
                None => GhVerdict::pass(lambda, mode),
                Some((i, j)) => {
                    GhVerdict::fail_with_witness(mode, words[i].clone(), words[j].clone())
                }
            }
        }
        GhMode::Reduced => {
            let zero_leading: Vec<Vec<u8>> = code
                .words()
                .iter()
                .filter(|w| w[0] == 0)
                .cloned()
                .collect();
            if zero_leading.len() != n {
                return GhVerdict::fail(
                    mode,
                    format!(
                        "{} codewords start with 0, a GH code of length {n} has {n}",
                        zero_leading.len()
                    ),
                );
            }
            let closure_violation = code.words().par_iter().find_map_first(|w| {
                let lead = w[0];
                if lead == 0 {
                    return None;
                }
                let shifted: Vec<u8> = w
                    .iter()
                    .map(|&s| ((usize::from(s) + pv - usize::from(lead)) % pv) as u8)
                    .collect();
                if code.contains(&shifted) {
                    None
                } else {
                    Some(w.clone())
                }
            });
            if closure_violation.is_some() {
                return GhVerdict::fail(
                    mode,
                    "code is not closed under subtracting constant vectors".into(),
                );
            }
            match violating_pair(&zero_leading, pv, lambda, true) {
                None => GhVerdict::pass(lambda, mode),
                Some((i, j)) => GhVerdict::fail_with_witness(
                    mode,
                    zero_leading[i].clone(),
                    zero_leading[j].clone(),
                ),
            }
        }
    }
}

/// First pair (in row order) whose difference is neither constant nor
/// balanced; `forbid_constant` additionally rejects constant differences
/// (used on zero-leading rows, where distinct rows can never differ by a
/// constant).
fn violating_pair(
    words: &[Vec<u8>],
    pv: usize,
    lambda: u64,
    forbid_constant: bool,
) -> Option<(usize, usize)> {
    (0..words.len())
        .into_par_iter()
        .find_map_first(|i| {
            for j in i + 1..words.len() {
                if !difference_constant_or_balanced(&words[i], &words[j], pv, lambda, forbid_constant)
                {
                    return Some((i, j));
                }
            }
            None
        })
}

#[inline]
fn difference_constant_or_balanced(
    u: &[u8],
    v: &[u8],
    pv: usize,
    lambda: u64,
    forbid_constant: bool,
) -> bool {
    // tally the difference symbols; abort as soon as a bucket overflows
    // lambda once a constant difference is no longer possible
    let mut counts = vec![0u64; pv];
    let first = (usize::from(u[0]) + pv - usize::from(v[0])) % pv;
    let mut constant_possible = !forbid_constant;
    for (&a, &b) in u.iter().zip(v) {
        let d = (usize::from(a) + pv - usize::from(b)) % pv;
        if d != first {
            constant_possible = false;
        }
        counts[d] += 1;
        if !constant_possible && counts[d] > lambda {
            return false;
        }
    }
    constant_possible || counts.iter().all(|&c| c == lambda)
}

/// The rows of the code with leading symbol zero, as an `N x N` matrix:
/// zero row first, the rest sorted lexicographically. For a generalized
/// Hadamard code these rows are exactly a normalized GH matrix.
///
/// Verifies the structural conditions (size `p*N`, constants present,
/// closure under constant subtraction, `N` zero-leading rows) and trusts the
/// caller to have run [`is_gh_code`] for the pairwise balance condition.
pub fn normalized_gh_matrix(code: &GrayCode) -> Result<Vec<Vec<u8>>> {
    let p = code.p();
    let pv = p.get() as usize;
    let n = code.length();
    let fail = |msg: String| Err(Error::NotGhCode(msg));

    if n == 0 || n % pv != 0 {
        return fail(format!("length {n} is not a positive multiple of {pv}"));
    }
    if code.size() != pv * n {
        return fail(format!(
            "code has {} words, a GH code of length {n} has {}",
            code.size(),
            pv * n
        ));
    }
    for lambda in 0..pv as u8 {
        if !code.contains(&vec![lambda; n]) {
            return fail(format!("constant vector {lambda}*1 is missing"));
        }
    }
    let mut rows: Vec<Vec<u8>> = code.words().iter().filter(|w| w[0] == 0).cloned().collect();
    if rows.len() != n {
        return fail(format!(
            "{} codewords start with 0, expected {n}",
            rows.len()
        ));
    }
    for w in code.words() {
        let lead = w[0];
        if lead != 0 {
            let shifted: Vec<u8> = w
                .iter()
                .map(|&s| ((usize::from(s) + pv - usize::from(lead)) % pv) as u8)
                .collect();
            if !code.contains(&shifted) {
                return fail("code is not closed under subtracting constant vectors".into());
            }
        }
    }
    rows.sort_unstable();
    debug_assert!(rows[0].iter().all(|&s| s == 0), "zero row sorts first");
    Ok(rows)
}

/// A code over `Z_{p^2}`: projections of mixed codewords to their second
/// block.
#[derive(Clone, Debug)]
pub struct Zp2Code {
    p: Prime,
    length: usize,
    words: Vec<Vec<u16>>,
}

impl Zp2Code {
    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn length(&self) -> usize {
        self.length
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.words.len()
    }

    #[inline]
    pub fn words(&self) -> &[Vec<u16>] {
        &self.words
    }

    /// Gray image of the projection, a code over `Z_p` of length
    /// `p * length`.
    pub fn gray_image(&self) -> GrayCode {
        let table = PhiTable::new(self.p);
        let words: Vec<Vec<u8>> = self
            .words
            .iter()
            .map(|w| {
                let mut out = Vec::with_capacity(self.p.get() as usize * w.len());
                for &y in w {
                    out.extend_from_slice(table.image(y));
                }
                out
            })
            .collect();
        GrayCode::from_words(self.p, words).expect("images are valid Z_p vectors")
    }
}

/// Projections of the code onto its two blocks: the `Z_p` part (a code over
/// `Z_p` of length `alpha1`) and the `Z_{p^2}` part (length `alpha2`).
/// Duplicate projections collapse.
pub fn punctured_parts(code: &AdditiveCode) -> (GrayCode, Zp2Code) {
    let c1 = GrayCode::from_words(
        code.p(),
        code.words().iter().map(|w| w.zp().to_vec()).collect(),
    )
    .expect("projections are valid Z_p vectors");

    let mut seen = HashSet::new();
    let mut words = Vec::new();
    for w in code.words() {
        let proj = w.zp2().to_vec();
        if seen.insert(proj.clone()) {
            words.push(proj);
        }
    }
    let length = words.first().map_or(0, |w| w.len());
    (
        c1,
        Zp2Code {
            p: code.p(),
            length,
            words,
        },
    )
}

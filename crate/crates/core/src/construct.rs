//! Recursive generator matrices for the additive generalized Hadamard codes
//! over `Z_p^alpha1 x Z_{p^2}^alpha2`, the family of alternative starting
//! matrices, and the pure-`Z_p` Sylvester generators used for comparison.

use crate::arith::{MixedWord, Prime};
use crate::error::{Error, Result};
use serde::Serialize;

/// Shape parameters of a generated code: `alpha1` columns over `Z_p`,
/// `alpha2` over `Z_{p^2}`, generated by `t1` rows of order `p^2` and `t2`
/// rows of order `p`. The Gray image has length `p^t`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeType {
    pub p: u32,
    pub alpha1: u64,
    pub alpha2: u64,
    pub t1: u32,
    pub t2: u32,
    pub t: u32,
}

impl CodeType {
    /// Number of codewords, `p^(2*t1 + t2)`.
    pub fn size(&self) -> u64 {
        u64::from(self.p).pow(2 * self.t1 + self.t2)
    }

    /// Gray-image length `alpha1 + p*alpha2 = p^t`.
    pub fn length(&self) -> u64 {
        self.alpha1 + u64::from(self.p) * self.alpha2
    }
}

impl std::fmt::Display for CodeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({},{};{},{})",
            self.alpha1, self.alpha2, self.t1, self.t2
        )
    }
}

/// Closed-form type parameters for the canonical construction.
///
/// `t1 = 0` is the Sylvester case (`alpha2 = 0`). For `t1 >= 1` the column
/// counts are computed two ways — as the geometric sum
/// `(p-1) * sum_{i=1..t1} p^(t1+t2+i-3)` and as `p^(t-1) - p^(t-t1-1)` — and
/// cross-checked.
pub fn code_type(p: Prime, t1: u32, t2: u32) -> Result<CodeType> {
    if t2 < 1 {
        return Err(Error::InvalidParameter(format!(
            "t2 must be at least 1, got {t2}"
        )));
    }
    let pv = u64::from(p.get());
    let t = 2 * t1 + t2 - 1;
    let alpha1 = pv.pow(t1 + t2 - 1);
    let alpha2 = if t1 == 0 {
        0
    } else {
        let sum: u64 = (1..=t1).map(|i| pv.pow(t1 + t2 + i - 3)).sum();
        let a2 = (pv - 1) * sum;
        let a2_closed = pv.pow(t - 1) - pv.pow(t - t1 - 1);
        debug_assert_eq!(a2, a2_closed);
        a2
    };
    debug_assert_eq!(alpha1, pv.pow(t - t1));
    Ok(CodeType {
        p: p.get(),
        alpha1,
        alpha2,
        t1,
        t2,
        t,
    })
}

/// An ordered list of generator rows over `Z_p^alpha1 x Z_{p^2}^alpha2`
/// together with their additive orders.
///
/// Rows are kept in canonical order: the all-ones/all-p row first (order p),
/// then the remaining order-p^2 rows, then the remaining order-p rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    p: Prime,
    rows: Vec<MixedWord>,
    row_orders: Vec<u32>,
}

impl GeneratorMatrix {
    fn from_rows(p: Prime, rows: Vec<MixedWord>) -> GeneratorMatrix {
        let row_orders = rows.iter().map(|r| r.order()).collect();
        GeneratorMatrix { p, rows, row_orders }
    }

    #[inline]
    pub fn p(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> &[MixedWord] {
        &self.rows
    }

    #[inline]
    pub fn row_orders(&self) -> &[u32] {
        &self.row_orders
    }

    pub fn alpha1(&self) -> usize {
        self.rows.first().map_or(0, |r| r.alpha1())
    }

    pub fn alpha2(&self) -> usize {
        self.rows.first().map_or(0, |r| r.alpha2())
    }

    /// Count of order-p^2 rows.
    pub fn t1(&self) -> u32 {
        self.row_orders
            .iter()
            .filter(|&&o| o == self.p.square())
            .count() as u32
    }

    /// Count of order-p rows.
    pub fn t2(&self) -> u32 {
        self.row_orders
            .iter()
            .filter(|&&o| o == self.p.get())
            .count() as u32
    }

    /// The type parameters this matrix declares through its shape and row
    /// orders.
    pub fn code_type(&self) -> CodeType {
        let t1 = self.t1();
        let t2 = self.t2();
        CodeType {
            p: self.p.get(),
            alpha1: self.alpha1() as u64,
            alpha2: self.alpha2() as u64,
            t1,
            t2,
            t: 2 * t1 + t2 - 1,
        }
    }

    /// Plain-text rendering: one row per line, symbols space-separated, with
    /// a `|` between the `Z_p` and `Z_{p^2}` blocks (omitted when the second
    /// block is empty).
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let zp: Vec<String> = row.zp().iter().map(|s| s.to_string()).collect();
            let zp2: Vec<String> = row.zp2().iter().map(|s| s.to_string()).collect();
            out.push_str(&zp.join(" "));
            if !zp2.is_empty() {
                if !zp.is_empty() {
                    out.push_str(" | ");
                }
                out.push_str(&zp2.join(" "));
            }
            out.push('\n');
        }
        out
    }
}

/// The two-row starting matrix: `(1...1 | p...p)` over the first `p` plus
/// `p-1` columns, and `(0,1,...,p-1 | 1,2,...,p-1)` beneath it.
/// Type `(p, p-1; 1, 1)`.
pub fn build_a11(p: Prime) -> GeneratorMatrix {
    build_a11_with(p, &default_a(p))
}

fn default_a(p: Prime) -> Vec<u16> {
    (1..p.get() as u16).collect()
}

fn build_a11_with(p: Prime, a: &[u16]) -> GeneratorMatrix {
    let pv = p.get();
    let row1 = MixedWord::new(
        p,
        vec![1; pv as usize],
        vec![pv as u16; pv as usize - 1],
    )
    .expect("all-ones starting row is in range");
    let row2 = MixedWord::new(p, (0..pv as u8).collect(), a.to_vec())
        .expect("starting row symbols are validated");
    GeneratorMatrix::from_rows(p, vec![row1, row2])
}

/// The starting matrix with the `Z_{p^2}` part of the second row replaced by
/// `a = (a_1, ..., a_{p-1})`. Requires `{p*a_i mod p^2}` to be exactly the
/// nonzero multiples of `p`, which makes the generated code a generalized
/// Hadamard code of the same type as the canonical start.
pub fn build_a11_variant(p: Prime, a: &[u16]) -> Result<GeneratorMatrix> {
    validate_a(p, a)?;
    Ok(build_a11_with(p, a))
}

fn validate_a(p: Prime, a: &[u16]) -> Result<()> {
    let pv = p.get();
    let p2 = p.square();
    if a.len() != pv as usize - 1 {
        return Err(Error::InvalidVariant(format!(
            "expected {} entries, got {}",
            pv - 1,
            a.len()
        )));
    }
    if let Some(&s) = a.iter().find(|&&s| u32::from(s) >= p2) {
        return Err(Error::InvalidVariant(format!(
            "entry {s} out of range for Z_{p2}"
        )));
    }
    // {p*a_i mod p^2} must equal {p, 2p, ..., (p-1)p} as a multiset
    let mut seen = vec![false; pv as usize];
    for &s in a {
        let m = (u32::from(s) * pv % p2) / pv;
        if m == 0 || seen[m as usize] {
            return Err(Error::InvalidVariant(format!(
                "multiples {{p*a_i}} do not cover the nonzero multiples of {pv} exactly once"
            )));
        }
        seen[m as usize] = true;
    }
    Ok(())
}

/// All valid starting vectors `a`, with entry `i` chosen so that
/// `p*a_i = i*p` (the increasing-order convention): entry `i` ranges over
/// `{i, i+p, ..., i+(p-1)p}`, giving `p^(p-1)` vectors in lexicographic
/// order.
pub fn enumerate_valid_a(p: Prime) -> Vec<Vec<u16>> {
    let pv = p.get() as u16;
    let k = pv as usize - 1;
    let mut out = Vec::with_capacity((pv as usize).pow(k as u32));
    let mut digits = vec![0u16; k];
    loop {
        out.push(
            digits
                .iter()
                .enumerate()
                .map(|(i, &x)| (i as u16 + 1) + x * pv)
                .collect(),
        );
        // odometer over the p^(p-1) choices, last position fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < pv {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// Extends a generator by one row of order `p`: each block of columns is
/// repeated `p` times and the new row labels the copies `0, 1, ..., p-1` on
/// the `Z_p` side and `0, p, ..., (p-1)p` on the `Z_{p^2}` side. The new row
/// is appended last. Column counts go from `(alpha1, alpha2)` to
/// `(p*alpha1, p*alpha2)`.
pub fn extend_order_p(a: &GeneratorMatrix) -> GeneratorMatrix {
    let p = a.p();
    let pv = p.get();
    let (a1, a2) = (a.alpha1(), a.alpha2());
    let mut rows: Vec<MixedWord> = a
        .rows()
        .iter()
        .map(|row| {
            let zp = row.zp().repeat(pv as usize);
            let zp2 = row.zp2().repeat(pv as usize);
            MixedWord::new(p, zp, zp2).expect("copied symbols stay in range")
        })
        .collect();

    let mut zp = Vec::with_capacity(pv as usize * a1);
    let mut zp2 = Vec::with_capacity(pv as usize * a2);
    for b in 0..pv {
        zp.extend(std::iter::repeat(b as u8).take(a1));
        zp2.extend(std::iter::repeat((b * pv) as u16).take(a2));
    }
    rows.push(MixedWord::new(p, zp, zp2).expect("block labels stay in range"));
    GeneratorMatrix::from_rows(p, rows)
}

/// Extends a generator by one row of order `p^2`. On the `Z_p` side the
/// columns are repeated `p` times with new-row labels `0, ..., p-1`. The
/// `Z_{p^2}` side gets `p-1` copies of the `Z_p` block lifted and scaled by
/// `p` (labels `1, ..., p-1`), followed by `p^2` copies of the old `Z_{p^2}`
/// block (labels `0, 1, ..., p^2-1`). The new row is inserted after the
/// existing order-p^2 rows. Column counts go from `(alpha1, alpha2)` to
/// `(p*alpha1, (p-1)*alpha1 + p^2*alpha2)`.
///
/// Only accepts matrices whose single order-p row is the leading all-ones
/// row (`t2 = 1`): order-p^2 rows are always added before order-p rows, so
/// the row and column layout stays canonical.
pub fn extend_order_p2(a: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    if a.t2() != 1 {
        return Err(Error::InvalidParameter(format!(
            "order-p^2 extension applies before any order-p extension; \
             matrix already has t2 = {}",
            a.t2()
        )));
    }
    let p = a.p();
    let pv = p.get();
    let p2 = p.square();
    let (a1, a2) = (a.alpha1(), a.alpha2());

    let extended_row = |row: &MixedWord| -> MixedWord {
        let zp = row.zp().repeat(pv as usize);
        let mut zp2 = Vec::with_capacity((pv as usize - 1) * a1 + p2 as usize * a2);
        let lifted: Vec<u16> = row.zp().iter().map(|&s| u16::from(s) * pv as u16).collect();
        for _ in 1..pv {
            zp2.extend_from_slice(&lifted);
        }
        for _ in 0..p2 {
            zp2.extend_from_slice(row.zp2());
        }
        MixedWord::new(p, zp, zp2).expect("lifted symbols stay in range")
    };

    let new_row = {
        let mut zp = Vec::with_capacity(pv as usize * a1);
        for b in 0..pv as u8 {
            zp.extend(std::iter::repeat(b).take(a1));
        }
        let mut zp2 = Vec::with_capacity((pv as usize - 1) * a1 + p2 as usize * a2);
        for b in 1..pv as u16 {
            zp2.extend(std::iter::repeat(b).take(a1));
        }
        for b in 0..p2 as u16 {
            zp2.extend(std::iter::repeat(b).take(a2));
        }
        MixedWord::new(p, zp, zp2).expect("block labels stay in range")
    };

    // with t2 = 1 the only order-p row is the leading one, so appending
    // keeps the canonical order: head, order-p^2 rows, order-p rows
    let mut rows: Vec<MixedWord> = a.rows().iter().map(extended_row).collect();
    rows.push(new_row);
    debug_assert_eq!(rows.last().unwrap().order(), p2);
    Ok(GeneratorMatrix::from_rows(p, rows))
}

/// Canonical generator for parameters `(t1, t2)`: the starting matrix
/// followed by `t1 - 1` order-p^2 extensions and then `t2 - 1` order-p
/// extensions.
pub fn build_a(p: Prime, t1: u32, t2: u32) -> Result<GeneratorMatrix> {
    build_a_with(p, t1, t2, &default_a(p))
}

/// Same recursion started from the variant matrix for `a`.
pub fn build_a_variant(p: Prime, t1: u32, t2: u32, a: &[u16]) -> Result<GeneratorMatrix> {
    validate_a(p, a)?;
    build_a_with(p, t1, t2, a)
}

fn build_a_with(p: Prime, t1: u32, t2: u32, a: &[u16]) -> Result<GeneratorMatrix> {
    if t1 < 1 || t2 < 1 {
        return Err(Error::InvalidParameter(format!(
            "t1 and t2 must be at least 1, got ({t1}, {t2})"
        )));
    }
    let mut m = build_a11_with(p, a);
    for _ in 1..t1 {
        m = extend_order_p2(&m)?;
    }
    for _ in 1..t2 {
        m = extend_order_p(&m);
    }
    let ct = m.code_type();
    let expect = code_type(p, t1, t2)?;
    debug_assert_eq!(ct, expect, "built matrix disagrees with closed form");
    Ok(m)
}

/// Generator of the linear comparison code of type `(p^(t2-1), 0; 0, t2)`:
/// an all-ones row over `p^(t2-1)` columns plus `t2 - 1` rows reading off the
/// coordinates of the column index written in base p (leftmost digit most
/// significant). Its Gray image is the classical linear generalized Hadamard
/// code of length `p^(t2-1)`.
pub fn build_sylvester(p: Prime, t2: u32) -> Result<GeneratorMatrix> {
    if t2 < 1 {
        return Err(Error::InvalidParameter(format!(
            "t2 must be at least 1, got {t2}"
        )));
    }
    let pv = p.get();
    let cols = (pv as usize).pow(t2 - 1);
    let mut rows = vec![MixedWord::new(p, vec![1; cols], vec![])
        .expect("all-ones row is in range")];
    for digit in 0..t2 - 1 {
        // digit 0 is the most significant (leftmost) base-p digit
        let shift = (pv as usize).pow(t2 - 2 - digit);
        let zp = (0..cols).map(|c| ((c / shift) % pv as usize) as u8).collect();
        rows.push(MixedWord::new(p, zp, vec![]).expect("digits are below p"));
    }
    Ok(GeneratorMatrix::from_rows(p, rows))
}

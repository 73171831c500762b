//! Generalized decomposition column families over 2-power roots of unity,
//! kept in exact integer coordinates.
//!
//! A column for a subsection of order 2^k lives in Z[zeta] with zeta a
//! primitive 2^k-th root of unity; its integer coefficient block stores
//! a_0..a_{2^(k-1)-1} per character, with the extension rule
//! a_{i+2^(k-1)} = -a_i implicit. The canonical families for the
//! r > s = 1 case realize the subsections of D(r,1) through the character
//! table of D itself (which meets every orthogonality, divisibility and
//! parity requirement exactly); the two extra columns at the distinguished
//! central element c follow the displayed block-walk shapes with aligned
//! supports, all plus signs, and are canonical only up to the free basis
//! choice at c — their products against other subsections are not pinned.

pub mod search;

use crate::intforms::{forms_equivalent, snf_i64, IntMatrix, QuadForm};
use crate::nf_group::{self, element_order, is_central, GroupParams, NfElement};
use crate::subsections::{canonical_c, t_set_rs1};
use crate::{Error, Result};
use serde::Serialize;

/// Which of the two Cartan shapes of the order-8 dihedral block is assumed
/// for the columns at c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColumnCase {
    First,
    Second,
}

/// Integer coefficient block of one subsection column family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloColumnFamily {
    /// subsection element (c itself for the two extra families)
    pub subsection: NfElement,
    /// 0 for the single column of a one-character subsection; 1 or 2 for
    /// the two columns at c
    pub char_index: u8,
    /// root-of-unity order is 2^k_level
    pub k_level: u32,
    pub num_chars: usize,
    /// per character: 0 for height 0, 1 for height 1
    pub heights: Vec<u8>,
    /// num_chars x 2^(k_level - 1), row-major
    coeffs: Vec<i64>,
}

impl CycloColumnFamily {
    pub fn positions(&self) -> usize {
        1 << (self.k_level - 1)
    }

    pub fn coeff(&self, chi: usize, i: usize) -> i64 {
        self.coeffs[chi * self.positions() + i]
    }

    /// Column at any integer index via the extension rule.
    pub fn column(&self, i: i64) -> Vec<i64> {
        let period = 2 * self.positions() as i64;
        let folded = i.rem_euclid(period) as usize;
        let (pos, sign) = if folded < self.positions() {
            (folded, 1)
        } else {
            (folded - self.positions(), -1)
        };
        (0..self.num_chars)
            .map(|chi| sign * self.coeff(chi, pos))
            .collect()
    }

    /// Row of coefficients for one character.
    pub fn row(&self, chi: usize) -> &[i64] {
        &self.coeffs[chi * self.positions()..(chi + 1) * self.positions()]
    }
}

/// Heights of the k(B) characters in the fixed global order: 2^(r+1)
/// height-0 rows, then 2^(r-1) height-1 rows.
pub fn heights_rs1(r: u32) -> Vec<u8> {
    let mut h = vec![0u8; 1 << (r + 1)];
    h.extend(std::iter::repeat_n(1u8, 1 << (r - 1)));
    h
}

/// Character value mag * zeta_{2^r}^exp at a group element, for the
/// character table of D(r,1): linear characters (alpha, beta) in
/// lexicographic order, then the degree-2 characters by their central
/// parameter.
fn character_value(r: u32, row: usize, g: NfElement) -> (i64, u64) {
    let xm = 1u64 << r;
    let k0 = 1usize << (r + 1);
    if row < k0 {
        let alpha = (row as u64) / 2;
        let beta = (row as u64) % 2;
        // zeta^(alpha a) * (-1)^(beta b), with -1 = zeta^(2^(r-1))
        let exp = (alpha * g.a + beta * g.b * (xm / 2)) % xm;
        (1, exp)
    } else {
        let mu = (row - k0) as u64;
        if g.a % 2 != 0 || g.b != 0 {
            return (0, 0);
        }
        // 2 * zeta_{2^(r-1)}^(mu m) * (-1)^c at x^(2m) z^c
        let m = g.a / 2;
        let exp = (2 * mu * m + g.c * (xm / 2)) % xm;
        (2, exp)
    }
}

/// Family built from character values: row chi holds chi(u) written in the
/// zeta_{2^k} basis, k = log2 |u|.
fn family_from_characters(r: u32, u: NfElement, p: GroupParams) -> CycloColumnFamily {
    let order = element_order(p, u);
    let k = order.trailing_zeros().max(1); // order 2^k, k >= 1
    let positions = 1usize << (k - 1);
    let heights = heights_rs1(r);
    let num_chars = heights.len();
    let mut coeffs = vec![0i64; num_chars * positions];
    let shift = 1u64 << (r - k); // zeta_{2^r}^e = zeta_{2^k}^(e / shift)
    for chi in 0..num_chars {
        let (mag, exp) = character_value(r, chi, u);
        if mag == 0 {
            continue;
        }
        assert_eq!(exp % shift, 0, "value is a 2^k-th root of unity");
        let e = (exp / shift) as usize; // in [0, 2^k)
        if e < positions {
            coeffs[chi * positions + e] = mag;
        } else {
            coeffs[chi * positions + (e - positions)] = -mag;
        }
    }
    CycloColumnFamily {
        subsection: u,
        char_index: 0,
        k_level: k,
        num_chars,
        heights,
        coeffs,
    }
}

/// The two column families at c, following the displayed block-walk shapes
/// with aligned supports and plus signs. The first case puts 2s on the
/// height-1 rows of the first column; the second leaves them zero.
fn families_at_c(r: u32, case: ColumnCase) -> (CycloColumnFamily, CycloColumnFamily) {
    let heights = heights_rs1(r);
    let num_chars = heights.len();
    let k0 = 1usize << (r + 1);
    let k = r - 1; // |c| = 2^(r-1)
    let positions = 1usize << (k - 1);
    let c = NfElement { a: 2, b: 0, c: 0 };
    let mut phi1 = vec![0i64; num_chars * positions];
    let mut phi2 = vec![0i64; num_chars * positions];
    for t in 0..num_chars {
        if t < k0 {
            let pos = t / 8;
            phi1[t * positions + pos] = 1;
            if t % 8 < 4 {
                phi2[t * positions + pos] = 1;
            }
        } else {
            let pos = (t - k0) / 2;
            if case == ColumnCase::First {
                phi1[t * positions + pos] = 2;
            }
            phi2[t * positions + pos] = 1;
        }
    }
    let make = |char_index, coeffs| CycloColumnFamily {
        subsection: c,
        char_index,
        k_level: k,
        num_chars,
        heights: heights.clone(),
        coeffs,
    };
    (make(1, phi1), make(2, phi2))
}

/// All canonical column families for the r > s = 1 case: one per subsection
/// outside <c>, then the two families at c. Ordered by (subsection,
/// char_index).
pub fn build_columns_rs1(r: u32, case: ColumnCase) -> Result<Vec<CycloColumnFamily>> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    let ts = t_set_rs1(r)?;
    let p = ts.params;
    let c = canonical_c(p);
    let c_cyclic = nf_group::subgroup_closure_nf(p, &[c]);
    let mut families = Vec::new();
    for entry in &ts.entries {
        if c_cyclic.contains(&entry.element) {
            continue; // 1 and the c-powers have no single canonical column
        }
        families.push(family_from_characters(r, entry.element, p));
    }
    let (phi1, phi2) = families_at_c(r, case);
    families.push(phi1);
    families.push(phi2);
    Ok(families)
}

/// Integer inner product of two stored columns (extended indices allowed).
pub fn inner_product(
    fam_u: &CycloColumnFamily,
    i: i64,
    fam_v: &CycloColumnFamily,
    j: i64,
) -> Result<i64> {
    if fam_u.num_chars != fam_v.num_chars {
        return Err(Error::SizeMismatch("families over different character sets".into()));
    }
    let a = fam_u.column(i);
    let b = fam_v.column(j);
    Ok(a.iter().zip(&b).map(|(x, y)| x * y).sum())
}

/// Expected inner product from the orthogonality relations, for subsection
/// pairs outside <c>: nonzero only when some odd gamma carries the class of
/// v^gamma onto the class of u, and then the alignment j*gamma - i decides
/// the sign of 2^(d-k) (2^(d-k+1) for central u).
pub fn lemma_orthogonal_expected(
    p: GroupParams,
    u: NfElement,
    i: i64,
    v: NfElement,
    j: i64,
) -> i64 {
    let d = p.r() + p.s() + 1;
    let ku = element_order(p, u).trailing_zeros();
    let kv = element_order(p, v).trailing_zeros();
    if ku != kv {
        return 0;
    }
    let modulus = 1i64 << ku;
    let class_rep = |g: NfElement| -> NfElement {
        if is_central(p, g) {
            g
        } else {
            NfElement { c: 0, ..g }
        }
    };
    let u_rep = class_rep(u);
    let mut gamma = 1i64;
    while gamma < modulus {
        if class_rep(nf_group::power(p, v, gamma)) == u_rep {
            let magnitude = if is_central(p, u) {
                1i64 << (d - ku + 1)
            } else {
                1i64 << (d - ku)
            };
            let offset = (j * gamma - i).rem_euclid(modulus);
            return if offset == 0 {
                magnitude
            } else if offset == modulus / 2 {
                -magnitude
            } else {
                0
            };
        }
        gamma += 2;
    }
    0
}

/// Coefficient reindexing realizing u -> u^gamma: position m picks up the
/// extended coefficient at m * gamma^(-1) mod 2^k.
pub fn galois_twist(fam: &CycloColumnFamily, gamma: i64) -> Result<CycloColumnFamily> {
    if gamma % 2 == 0 {
        return Err(Error::InvalidParams("twist needs an odd unit".into()));
    }
    let modulus = 2 * fam.positions() as i64;
    let inv = modular_inverse(gamma.rem_euclid(modulus), modulus);
    let positions = fam.positions();
    let mut coeffs = vec![0i64; fam.num_chars * positions];
    for m in 0..positions {
        let t = ((m as i64) * inv).rem_euclid(modulus);
        let col = fam.column(t);
        for (chi, &value) in col.iter().enumerate() {
            coeffs[chi * positions + m] = value;
        }
    }
    Ok(CycloColumnFamily {
        coeffs,
        ..fam.clone()
    })
}

fn modular_inverse(a: i64, modulus: i64) -> i64 {
    // power of two modulus, a odd: inverse by lifting
    let mut inv = 1i64;
    while (a * inv).rem_euclid(modulus) != 1 {
        inv = (inv * (2 - a * inv)).rem_euclid(modulus);
        if inv == 0 {
            inv = 1;
        }
    }
    inv
}

/// Both divisibility conditions per character: 2^h | a_i for every i, and
/// the coefficient sum is 2^h mod 2^(h+1).
pub fn check_divisibility_heights(fam: &CycloColumnFamily) -> bool {
    (0..fam.num_chars).all(|chi| {
        let h = fam.heights[chi] as u32;
        let row = fam.row(chi);
        let divisor = 1i64 << h;
        row.iter().all(|&v| v % divisor == 0)
            && row.iter().sum::<i64>().rem_euclid(1 << (h + 1)) == divisor
    })
}

/// Per character: does (coefficient sum odd) coincide with (height 0)?
pub fn height_parity(fam: &CycloColumnFamily) -> Vec<bool> {
    (0..fam.num_chars)
        .map(|chi| {
            let odd = fam.row(chi).iter().sum::<i64>().rem_euclid(2) == 1;
            odd == (fam.heights[chi] == 0)
        })
        .collect()
}

/// Diagonal contributions |D| m_{chi chi} at the subsection (c, b_c).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContributionDiag {
    pub case: ColumnCase,
    pub values: Vec<i64>,
}

/// Exact cyclotomic arithmetic in Z[zeta_{2^k}] as coefficient vectors of
/// length 2^(k-1) modulo zeta^(2^(k-1)) = -1.
fn cyclo_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len();
    let mut out = vec![0i64; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let k = i + j;
            if k < n {
                out[k] += x * y;
            } else {
                out[k - n] -= x * y;
            }
        }
    }
    out
}

fn cyclo_conj(a: &[i64]) -> Vec<i64> {
    // conjugation sends zeta^i to zeta^(-i) = -zeta^(n - i)
    let n = a.len();
    let mut out = vec![0i64; n];
    out[0] = a[0];
    for (i, &x) in a.iter().enumerate().skip(1) {
        out[n - i] -= x;
    }
    out
}

/// |D| m_{chi chi} for the subsection at c from the two column families,
/// using the inverse Cartan weights of the matching case: (3, -4, 8) for
/// the first, (3, -2, 4) for the second. The result must be a rational
/// integer for every character.
pub fn contributions_at_c(
    r: u32,
    case: ColumnCase,
    fam1: &CycloColumnFamily,
    fam2: &CycloColumnFamily,
) -> Result<ContributionDiag> {
    if fam1.num_chars != fam2.num_chars || fam1.k_level != fam2.k_level {
        return Err(Error::SizeMismatch("mismatched c-families".into()));
    }
    let _ = r;
    let (q11, q12, q22) = match case {
        ColumnCase::First => (3i64, -4i64, 8i64),
        ColumnCase::Second => (3, -2, 4),
    };
    let mut values = Vec::with_capacity(fam1.num_chars);
    for chi in 0..fam1.num_chars {
        let d1 = fam1.row(chi);
        let d2 = fam2.row(chi);
        let d1c = cyclo_conj(d1);
        let d2c = cyclo_conj(d2);
        let t11 = cyclo_mul(d1, &d1c);
        let t12 = cyclo_mul(d1, &d2c);
        let t21 = cyclo_mul(d2, &d1c);
        let t22 = cyclo_mul(d2, &d2c);
        let mut total = vec![0i64; d1.len()];
        for i in 0..total.len() {
            total[i] = q11 * t11[i] + q12 * (t12[i] + t21[i]) + q22 * t22[i];
        }
        if total.iter().skip(1).any(|&v| v != 0) {
            return Err(Error::InvalidParams(format!(
                "contribution at row {chi} is not a rational integer"
            )));
        }
        values.push(total[0]);
    }
    Ok(ContributionDiag { case, values })
}

/// The hypothetical diagonal residue sum under the excluded Cartan type:
/// (m1 + 2^(r+1) + 2^(r-1) + 3 (2^(r-1) - 1)) mod 4 with m1 = 1. The value
/// 2 contradicts |D| = 0 mod 4 and rules the principal form out.
pub fn contribution_sum_residue(r: u32) -> u64 {
    contribution_sum_residue_with(r, 1)
}

/// Same sum with an arbitrary residue for the ordinary term (control knob:
/// m1 = 3 yields 0 and no contradiction).
pub fn contribution_sum_residue_with(r: u32, m1_residue: u64) -> u64 {
    (m1_residue + (1 << (r + 1)) + (1 << (r - 1)) + 3 * ((1 << (r - 1)) - 1)) % 4
}

/// Ordinary decomposition matrix with canonical plus signs, its Gram
/// matrix, and the congruence of that Gram to 2^(r-1) [[3,1],[1,3]].
pub struct OrdinaryCartanCheck {
    pub q: IntMatrix,
    pub gram: IntMatrix,
    pub congruent_to_target: bool,
    pub snf: Vec<i64>,
}

/// First column supported with 1 on every height-0 row; second column 1 on
/// the first 2^r height-0 rows and on every height-1 row.
pub fn ordinary_matrix_rs1(r: u32) -> Vec<[i64; 2]> {
    let k0 = 1usize << (r + 1);
    let k1 = 1usize << (r - 1);
    let mut rows = Vec::with_capacity(k0 + k1);
    for t in 0..k0 {
        rows.push([1, if t < (1 << r) { 1 } else { 0 }]);
    }
    for _ in 0..k1 {
        rows.push([0, 1]);
    }
    rows
}

pub fn ordinary_cartan_check(r: u32) -> Result<OrdinaryCartanCheck> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    let rows = ordinary_matrix_rs1(r);
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    let q = IntMatrix::from_i64(rows.len(), 2, &flat)?;
    let gram = q.transpose().mul(&q)?;
    let gram_vals = gram.to_i64_vec();
    let gram_form = QuadForm::new(gram_vals[0], 2 * gram_vals[1], gram_vals[3]);
    let scale = 1i64 << (r - 1);
    let target = QuadForm::new(3 * scale, 2 * scale, 3 * scale);
    let congruent_to_target = forms_equivalent(&gram_form, &target)?;
    let snf = snf_i64(&gram);
    Ok(OrdinaryCartanCheck {
        q,
        gram,
        congruent_to_target,
        snf,
    })
}

/// Diagonal ordinary contributions |D| m^(1)_{chi chi} of the canonical
/// ordinary matrix, computed basis-free as |D| Q (Q^T Q)^(-1) Q^T.
pub fn ordinary_contribution_diag(r: u32) -> Result<Vec<i64>> {
    let rows = ordinary_matrix_rs1(r);
    let k0 = 1i64 << (r + 1);
    let c12 = 1i64 << r;
    let c22 = (1i64 << r) + (1i64 << (r - 1));
    // adj of [[k0, c12], [c12, c22]] and det
    let det = k0 * c22 - c12 * c12;
    let (a11, a12, a22) = (c22, -c12, k0);
    let order = 1i64 << (r + 2);
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let val = a11 * row[0] * row[0] + 2 * a12 * row[0] * row[1] + a22 * row[1] * row[1];
        let scaled = order * val;
        if scaled % det != 0 {
            return Err(Error::InvalidParams("non-integral ordinary contribution".into()));
        }
        out.push(scaled / det);
    }
    Ok(out)
}

/// All canonical subsection columns of the r > s = 1 case evaluated as
/// diagonal contributions for one character row, for the full Brauer sum
/// over subsections. Entries for subsections outside <c> use their single
/// column: |D| m = (|D| / |C_D(u)|) * |d^u_chi|^2.
pub fn full_contribution_sum(r: u32, case: ColumnCase) -> Result<Vec<i64>> {
    let p = GroupParams::new(r, 1)?;
    let families = build_columns_rs1(r, case)?;
    let num_chars = families[0].num_chars;
    let order = 1i64 << (r + 2);
    let mut sums = ordinary_contribution_diag(r)?;
    assert_eq!(sums.len(), num_chars);
    let mut phi_pair: Vec<&CycloColumnFamily> = Vec::new();
    for fam in &families {
        if fam.char_index > 0 {
            phi_pair.push(fam);
            continue;
        }
        let u = fam.subsection;
        let centralizer_order = if is_central(p, u) {
            order
        } else {
            order / 2
        };
        for chi in 0..num_chars {
            let d = fam.row(chi);
            let dc = cyclo_conj(d);
            let norm = cyclo_mul(d, &dc);
            assert!(norm.iter().skip(1).all(|&v| v == 0));
            sums[chi] += (order / centralizer_order) * norm[0];
        }
    }
    // the remaining <c> \ {1} subsections: exactly c itself when r = 2
    if r == 2 {
        let contrib = contributions_at_c(r, case, phi_pair[0], phi_pair[1])?;
        for chi in 0..num_chars {
            sums[chi] += contrib.values[chi];
        }
    } else {
        return Err(Error::InvalidParams(
            "full subsection sum is wired for r = 2 only".into(),
        ));
    }
    Ok(sums)
}

/// JSON payload for a column family dump.
#[derive(Debug, Clone, Serialize)]
pub struct ColumnFamilyDump {
    pub subsection: String,
    pub char_index: u8,
    pub k_level: u32,
    pub heights: Vec<u8>,
    pub coeffs: Vec<Vec<i64>>,
}

pub fn dump_family(fam: &CycloColumnFamily) -> ColumnFamilyDump {
    ColumnFamilyDump {
        subsection: fam.subsection.label(),
        char_index: fam.char_index,
        k_level: fam.k_level,
        heights: fam.heights.clone(),
        coeffs: (0..fam.num_chars).map(|chi| fam.row(chi).to_vec()).collect(),
    }
}

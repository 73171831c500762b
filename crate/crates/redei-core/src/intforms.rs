//! Exact integer matrices and binary quadratic forms.
//!
//! Smith normal form by elementary operations with least-absolute-value
//! pivoting, GL(n,Z) congruence transforms, Gauss reduction of positive
//! definite forms with a unimodular witness, reduced-class enumeration per
//! discriminant, and the fixed Cartan matrices used by the block checks.
//! All entries are arbitrary-precision integers.

use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::new(rows, cols, data.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix {
            rows: n,
            cols: n,
            data: vec![BigInt::zero(); n * n],
        };
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn scaled(&self, f: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * f).collect(),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        IntMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![BigInt::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let lik = &self[(i, k)];
                if lik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = lik * &other[(k, j)];
                    data[i * other.cols + j] += t;
                }
            }
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Determinant by cofactor expansion; the matrices here are tiny.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch("determinant of non-square matrix".into()));
        }
        Ok(det_rec(&self.data, self.rows))
    }

    pub fn row_major(&self) -> &[BigInt] {
        &self.data
    }

    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.data
            .iter()
            .map(|v| i64::try_from(v).expect("entry fits i64"))
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Parse the text format `rows cols` + row-major whitespace-separated entries.
pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut tokens = text.split_whitespace();
    let rows: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::SizeMismatch("missing row count".into()))?;
    let cols: usize = tokens
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::SizeMismatch("missing column count".into()))?;
    let data: Vec<BigInt> = tokens
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Error::SizeMismatch(format!("bad integer `{t}`")))
        })
        .collect::<Result<_>>()?;
    IntMatrix::new(rows, cols, data)
}

fn det_rec(data: &[BigInt], n: usize) -> BigInt {
    if n == 1 {
        return data[0].clone();
    }
    let mut acc = BigInt::zero();
    for col in 0..n {
        if data[col].is_zero() {
            continue;
        }
        let minor: Vec<BigInt> = (1..n)
            .flat_map(|i| {
                (0..n)
                    .filter(|&j| j != col)
                    .map(move |j| data[i * n + j].clone())
            })
            .collect();
        let term = &data[col] * det_rec(&minor, n - 1);
        if col % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Smith normal form divisor chain d1 | d2 | ..., nonnegative, one entry per
/// diagonal position (zeros last for rank-deficient input).
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let n = rows.min(cols);
    let mut k = 0;
    while k < n {
        // least-absolute-value pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !a[(i, j)].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[(i, j)].abs() < a[(pi, pj)].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut a, k, pi);
        swap_cols(&mut a, k, pj);
        if a[(k, k)].is_negative() {
            negate_row(&mut a, k);
        }
        // clear row and column k
        let mut dirty = false;
        for i in k + 1..rows {
            if !a[(i, k)].is_zero() {
                let q = div_nearest(&a[(i, k)], &a[(k, k)]);
                add_row_multiple(&mut a, i, k, &-q);
                if !a[(i, k)].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in k + 1..cols {
            if !a[(k, j)].is_zero() {
                let q = div_nearest(&a[(k, j)], &a[(k, k)]);
                add_col_multiple(&mut a, j, k, &-q);
                if !a[(k, j)].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue; // smaller remainders appeared; re-pivot the same corner
        }
        // divisibility pass: the pivot must divide the trailing block
        let mut fixed = true;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(&a[(i, j)] % &a[(k, k)]).is_zero() {
                    add_row_multiple(&mut a, k, i, &BigInt::one());
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            k += 1;
        }
    }
    let mut divisors: Vec<BigInt> = (0..n).map(|i| a[(i, i)].abs()).collect();
    divisors.sort_by(|x, y| match (x.is_zero(), y.is_zero()) {
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => x.cmp(y),
    });
    divisors
}

pub fn snf_i64(m: &IntMatrix) -> Vec<i64> {
    smith_normal_form(m)
        .iter()
        .map(|d| i64::try_from(d).expect("divisor fits i64"))
        .collect()
}

fn swap_rows(a: &mut IntMatrix, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    for j in 0..a.cols {
        let t = a[(r1, j)].clone();
        a[(r1, j)] = a[(r2, j)].clone();
        a[(r2, j)] = t;
    }
}

fn swap_cols(a: &mut IntMatrix, c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for i in 0..a.rows {
        let t = a[(i, c1)].clone();
        a[(i, c1)] = a[(i, c2)].clone();
        a[(i, c2)] = t;
    }
}

fn negate_row(a: &mut IntMatrix, r: usize) {
    for j in 0..a.cols {
        let t = -a[(r, j)].clone();
        a[(r, j)] = t;
    }
}

fn add_row_multiple(a: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for j in 0..a.cols {
        let t = &a[(src, j)] * f;
        a[(dst, j)] += t;
    }
}

fn add_col_multiple(a: &mut IntMatrix, dst: usize, src: usize, f: &BigInt) {
    for i in 0..a.rows {
        let t = &a[(i, src)] * f;
        a[(i, dst)] += t;
    }
}

/// Round-to-nearest integer division, so remainders satisfy |r| <= |b|/2.
fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if a.is_negative() == b.is_negative() {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// S * A * S^T for unimodular S.
pub fn congruent_transform(a: &IntMatrix, s: &IntMatrix) -> Result<IntMatrix> {
    if s.rows != s.cols || s.rows != a.rows || a.rows != a.cols {
        return Err(Error::SizeMismatch(
            "congruence needs square matching sizes".into(),
        ));
    }
    if !s.det()?.abs().is_one() {
        return Err(Error::NotUnimodular);
    }
    s.mul(a)?.mul(&s.transpose())
}

/// Binary quadratic form a x^2 + b xy + c y^2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a.is_positive() && self.discriminant().is_negative()
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c).is_one()
    }

    /// |b| <= a <= c, with b >= 0 if |b| = a or a = c.
    pub fn is_reduced(&self) -> bool {
        let ab = self.b.abs();
        ab <= self.a
            && self.a <= self.c
            && ((ab != self.a && self.a != self.c) || !self.b.is_negative())
    }

    /// Substitute variables by a GL2(Z) matrix m: q'(v) = q(m v).
    pub fn apply_gl2(&self, m: &IntMatrix) -> QuadForm {
        let (p, q, r, s) = (&m[(0, 0)], &m[(0, 1)], &m[(1, 0)], &m[(1, 1)]);
        let a = &self.a * p * p + &self.b * p * r + &self.c * r * r;
        let b = BigInt::from(2) * &self.a * p * q
            + &self.b * (p * s + q * r)
            + BigInt::from(2) * &self.c * r * s;
        let c = &self.a * q * q + &self.b * q * s + &self.c * s * s;
        QuadForm { a, b, c }
    }

    /// Gram matrix [[a, b/2], [b/2, c]]; requires an even middle coefficient.
    pub fn to_matrix(&self) -> Result<IntMatrix> {
        if self.b.is_odd() {
            return Err(Error::InvalidDiscriminant(
                "matrix form needs an even middle coefficient".into(),
            ));
        }
        let h: BigInt = &self.b / 2;
        IntMatrix::new(2, 2, vec![self.a.clone(), h.clone(), h, self.c.clone()])
    }

    pub fn from_matrix(m: &IntMatrix) -> Result<QuadForm> {
        if m.rows != 2 || m.cols != 2 || !m.is_symmetric() {
            return Err(Error::SizeMismatch("need a symmetric 2x2 matrix".into()));
        }
        Ok(QuadForm {
            a: m[(0, 0)].clone(),
            b: BigInt::from(2) * &m[(0, 1)],
            c: m[(1, 1)].clone(),
        })
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Gauss reduction; returns the reduced form and the unimodular variable
/// substitution carrying the input to it.
pub fn reduce_qf(q: &QuadForm) -> Result<(QuadForm, IntMatrix)> {
    if !q.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let mut f = q.clone();
    let mut t = IntMatrix::identity(2);
    let swap = IntMatrix::from_i64(2, 2, &[0, -1, 1, 0])?;
    loop {
        if f.b.abs() > f.a {
            // (x, y) -> (x + n y, y) normalizing b into (-a, a]
            let two_a = BigInt::from(2) * &f.a;
            let n = -div_nearest_half_open(&f.b, &two_a);
            let s = IntMatrix::new(
                2,
                2,
                vec![BigInt::one(), n.clone(), BigInt::zero(), BigInt::one()],
            )?;
            t = t.mul(&s)?;
            f = f.apply_gl2(&s);
            continue;
        }
        if f.a > f.c || (f.a == f.c && f.b.is_negative()) {
            // (x, y) -> (-y, x), swapping outer coefficients and negating b
            t = t.mul(&swap)?;
            f = QuadForm {
                a: f.c.clone(),
                b: -f.b.clone(),
                c: f.a.clone(),
            };
            continue;
        }
        if f.b.is_negative() && f.b.abs() == f.a {
            // boundary b = -a: translate once to b = +a
            let s = IntMatrix::from_i64(2, 2, &[1, 1, 0, 1])?;
            t = t.mul(&s)?;
            f = f.apply_gl2(&s);
            continue;
        }
        break;
    }
    debug_assert!(f.is_reduced());
    debug_assert_eq!(f.discriminant(), q.discriminant());
    Ok((f, t))
}

/// Quotient q with b - q*2a in (-a, a].
fn div_nearest_half_open(b: &BigInt, two_a: &BigInt) -> BigInt {
    let a: BigInt = two_a / 2;
    // floor((b + a - 1) / 2a) shifts the remainder window to (-a, a]
    let num: BigInt = b + &a - 1;
    num.div_floor(two_a)
}

/// GL2(Z)-equivalence of positive definite forms, decided by reduction
/// (improper equivalence flips the sign of b).
pub fn forms_equivalent(f: &QuadForm, g: &QuadForm) -> Result<bool> {
    let (rf, _) = reduce_qf(f)?;
    let (rg, _) = reduce_qf(g)?;
    Ok(rf.a == rg.a && rf.c == rg.c && rf.b.abs() == rg.b.abs())
}

/// All reduced positive definite forms of the given negative discriminant.
pub fn reduced_classes(disc: i64, primitive_only: bool) -> Result<Vec<QuadForm>> {
    if disc >= 0 {
        return Err(Error::InvalidDiscriminant("need disc < 0".into()));
    }
    let m = disc.rem_euclid(4);
    if m != 0 && m != 1 {
        return Err(Error::InvalidDiscriminant(format!(
            "disc = {disc} is not 0 or 1 mod 4"
        )));
    }
    let mut out = Vec::new();
    let bound = (((-disc) as f64 / 3.0).sqrt().floor()) as i64 + 1;
    for a in 1..=bound {
        for b in -a..=a {
            if (b * b - disc) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b - disc) / (4 * a);
            let f = QuadForm::new(a, b, c);
            if f.is_reduced()
                && f.discriminant() == BigInt::from(disc)
                && (!primitive_only || f.is_primitive())
            {
                out.push(f);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Cartan candidates for the r > s = 1 family: both discriminant -32 class
/// representatives scaled by 2^(r-1); the principal one is the candidate
/// ruled out by the contribution residue argument.
pub struct CartanCandidatesRs1 {
    pub matrices: Vec<IntMatrix>,
    pub excluded: IntMatrix,
    pub retained: IntMatrix,
}

pub fn cartan_candidates_rs1(r: u32) -> Result<CartanCandidatesRs1> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    let scale = BigInt::from(1i64 << (r - 1));
    let principal = IntMatrix::from_i64(2, 2, &[1, 0, 0, 8])?.scaled(&scale);
    let nonprincipal = IntMatrix::from_i64(2, 2, &[3, 1, 1, 3])?.scaled(&scale);
    Ok(CartanCandidatesRs1 {
        matrices: vec![principal.clone(), nonprincipal.clone()],
        excluded: principal,
        retained: nonprincipal,
    })
}

/// The r = s family: 3x3 matrix with diagonal (2^(2r)+2)/3 and off-diagonal
/// (2^(2r)-1)/3, its doubling, and both Smith forms.
pub struct CartanReqS {
    pub c_bar: IntMatrix,
    pub c_bz: IntMatrix,
    pub snf_bar: Vec<BigInt>,
    pub snf_bz: Vec<BigInt>,
}

pub fn cartan_req_s(r: u32) -> Result<CartanReqS> {
    if r < 2 {
        return Err(Error::InvalidParams("need r >= 2".into()));
    }
    let pow = BigInt::from(2).pow(2 * r);
    let diag_num: BigInt = &pow + 2;
    let off_num: BigInt = &pow - 1;
    let three = BigInt::from(3);
    assert!((&diag_num % &three).is_zero() && (&off_num % &three).is_zero());
    let diag: BigInt = diag_num / &three;
    let off: BigInt = off_num / &three;
    let mut data = vec![off.clone(); 9];
    for i in 0..3 {
        data[i * 3 + i] = diag.clone();
    }
    let c_bar = IntMatrix::new(3, 3, data)?;
    let c_bz = c_bar.scaled(&BigInt::from(2));
    let snf_bar = smith_normal_form(&c_bar);
    let snf_bz = smith_normal_form(&c_bz);
    Ok(CartanReqS {
        c_bar,
        c_bz,
        snf_bar,
        snf_bz,
    })
}

/// The settled 3x3 Cartan matrix for r = 2 with its Smith form.
pub struct CartanR2Final {
    pub matrix: IntMatrix,
    pub snf: Vec<BigInt>,
    pub det: BigInt,
}

pub fn cartan_r2_final() -> CartanR2Final {
    let matrix = IntMatrix::from_i64(3, 3, &[4, 2, 2, 2, 4, 2, 2, 2, 12]).unwrap();
    let snf = smith_normal_form(&matrix);
    let det = matrix.det().unwrap();
    CartanR2Final { matrix, snf, det }
}

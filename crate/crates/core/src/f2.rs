//! Linear algebra over F2 with vectors packed into a `u64` (dimension at most 64).

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 64;

#[inline]
fn mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// A vector of F2^dim; coordinate `i` is bit `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2Vector {
    dim: u8,
    bits: u64,
}

impl F2Vector {
    pub fn new(dim: usize, bits: u64) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange(dim));
        }
        Ok(F2Vector { dim: dim as u8, bits: bits & mask(dim) })
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} too large");
        F2Vector { dim: dim as u8, bits: 0 }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim && dim <= MAX_DIM);
        F2Vector { dim: dim as u8, bits: 1u64 << i }
    }

    /// Parses a string of `0`/`1` characters, coordinate 0 first.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => {
                    if i >= MAX_DIM {
                        return Err(Error::DimensionOutOfRange(s.len()));
                    }
                    bits |= 1 << i
                }
                _ => return Err(Error::Parse { line: 0, msg: format!("bad bit character {c:?}") }),
            }
        }
        F2Vector::new(s.chars().count(), bits)
    }

    pub fn from_coords(coords: &[u8]) -> Self {
        let bits = coords.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | (((c & 1) as u64) << i));
        F2Vector::new(coords.len(), bits).expect("dimension")
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        debug_assert_eq!(self.dim, other.dim);
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    pub fn add(&self, other: &F2Vector) -> F2Vector {
        debug_assert_eq!(self.dim, other.dim);
        F2Vector { dim: self.dim, bits: self.bits ^ other.bits }
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.dim()).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2[{}]", self.to_bit_string())
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Dense matrix over F2; each row is a vector with `cols` coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<u64>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_DIM);
        F2Matrix { cols, rows: vec![0; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[F2Vector]) -> Result<Self> {
        if cols > MAX_DIM {
            return Err(Error::DimensionOutOfRange(cols));
        }
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.dim() });
            }
        }
        Ok(F2Matrix { cols, rows: rows.iter().map(|r| r.bits).collect() })
    }

    /// Builds the matrix whose columns are the given vectors (all of dimension `dim`).
    pub fn from_columns(dim: usize, columns: &[F2Vector]) -> Result<Self> {
        if columns.len() > MAX_DIM {
            return Err(Error::DimensionOutOfRange(columns.len()));
        }
        let mut m = F2Matrix::zero(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: c.dim() });
            }
            for i in 0..dim {
                if c.get(i) {
                    m.set(i, j, true);
                }
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn row(&self, i: usize) -> F2Vector {
        F2Vector { dim: self.cols as u8, bits: self.rows[i] }
    }

    pub fn column(&self, j: usize) -> F2Vector {
        assert!(self.nrows() <= MAX_DIM);
        let bits = (0..self.nrows()).fold(0u64, |acc, i| acc | ((self.get(i, j) as u64) << i));
        F2Vector { dim: self.nrows() as u8, bits }
    }

    pub fn transpose(&self) -> F2Matrix {
        assert!(self.nrows() <= MAX_DIM);
        let mut t = F2Matrix::zero(self.cols, self.nrows());
        for i in 0..self.nrows() {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.nrows() {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.nrows() });
        }
        let mut out = F2Matrix::zero(self.nrows(), other.cols);
        for i in 0..self.nrows() {
            let mut acc = 0u64;
            for k in 0..self.cols {
                if self.get(i, k) {
                    acc ^= other.rows[k];
                }
            }
            out.rows[i] = acc;
        }
        Ok(out)
    }

    /// Restriction to the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> F2Matrix {
        let mut out = F2Matrix::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                if self.get(i, j) {
                    out.set(a, b, true);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for &r in &self.rows {
            e.insert(r);
        }
        e.rank()
    }
}

pub fn rank(vectors: &[F2Vector]) -> usize {
    let mut e = Echelon::new(vectors.first().map_or(0, |v| v.dim()));
    for v in vectors {
        e.insert(v.bits);
    }
    e.rank()
}

/// Incrementally maintained row-echelon basis, keyed by leading (lowest) bit.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    pivots: [u64; 64],
    present: u64,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon { dim, pivots: [0; 64], present: 0 }
    }

    /// Reduces `x` against the basis; the result is zero iff `x` lies in the span.
    pub fn reduce(&self, mut x: u64) -> u64 {
        let mut p = self.present;
        while p != 0 {
            let b = p.trailing_zeros() as usize;
            if (x >> b) & 1 == 1 {
                x ^= self.pivots[b];
            }
            p &= p - 1;
        }
        x
    }

    /// Inserts `x`; returns false if it was already in the span.
    pub fn insert(&mut self, x: u64) -> bool {
        let r = self.reduce(x);
        if r == 0 {
            return false;
        }
        let b = r.trailing_zeros() as usize;
        self.pivots[b] = r;
        self.present |= 1 << b;
        true
    }

    pub fn contains(&self, x: u64) -> bool {
        self.reduce(x) == 0
    }

    pub fn rank(&self) -> usize {
        self.present.count_ones() as usize
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

pub fn in_span(basis: &[F2Vector], x: &F2Vector) -> bool {
    let mut e = Echelon::new(x.dim());
    for b in basis {
        e.insert(b.bits);
    }
    e.contains(x.bits)
}

/// Solution set `{x : <row_i, x> = rhs_i}`; empty when `particular` is `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub dim: usize,
    pub particular: Option<F2Vector>,
    pub basis: Vec<F2Vector>,
}

impl AffineSpace {
    pub fn full(dim: usize) -> Self {
        AffineSpace {
            dim,
            particular: Some(F2Vector::zero(dim)),
            basis: (0..dim).map(|i| F2Vector::unit(dim, i)).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Number of points, saturating at `u128::MAX` only for dimension 128 (never reached).
    pub fn len(&self) -> u128 {
        if self.particular.is_none() {
            0
        } else {
            1u128 << self.basis.len()
        }
    }

    pub fn contains(&self, x: &F2Vector) -> bool {
        match self.particular {
            None => false,
            Some(p) => in_span(&self.basis, &p.add(x)),
        }
    }

    /// Points in Gray-code order: consecutive points differ by one basis vector.
    pub fn iter(&self) -> GrayIter<'_> {
        GrayIter { space: self, k: 0, current: self.particular.map_or(0, |p| p.bits) }
    }
}

pub struct GrayIter<'a> {
    space: &'a AffineSpace,
    k: u128,
    current: u64,
}

impl Iterator for GrayIter<'_> {
    type Item = F2Vector;

    fn next(&mut self) -> Option<F2Vector> {
        self.space.particular?;
        if self.k >= self.space.len() {
            return None;
        }
        if self.k > 0 {
            let flip = self.k.trailing_zeros() as usize;
            self.current ^= self.space.basis[flip].bits;
        }
        self.k += 1;
        Some(F2Vector { dim: self.space.dim as u8, bits: self.current })
    }
}

/// Solves `<rows_i, x> = rhs_i` over F2^dim by Gaussian elimination.
pub fn solve_affine(rows: &[F2Vector], rhs: &[bool], dim: usize) -> Result<AffineSpace> {
    if dim > MAX_DIM {
        return Err(Error::DimensionOutOfRange(dim));
    }
    if rows.len() != rhs.len() {
        return Err(Error::LengthMismatch { expected: rows.len(), got: rhs.len() });
    }
    // reduced rows: (pivot column, row bits, rhs)
    let mut reduced: Vec<(usize, u64, bool)> = Vec::new();
    for (r, &b) in rows.iter().zip(rhs) {
        if r.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: r.dim() });
        }
        let (mut x, mut c) = (r.bits, b);
        for &(p, rb, rc) in &reduced {
            if (x >> p) & 1 == 1 {
                x ^= rb;
                c ^= rc;
            }
        }
        if x == 0 {
            if c {
                return Ok(AffineSpace { dim, particular: None, basis: Vec::new() });
            }
            continue;
        }
        let p = x.trailing_zeros() as usize;
        for entry in reduced.iter_mut() {
            if (entry.1 >> p) & 1 == 1 {
                entry.1 ^= x;
                entry.2 ^= c;
            }
        }
        reduced.push((p, x, c));
    }
    let pivot_mask = reduced.iter().fold(0u64, |acc, &(p, _, _)| acc | (1 << p));
    let mut particular = 0u64;
    for &(p, _, c) in &reduced {
        if c {
            particular |= 1 << p;
        }
    }
    let mut basis = Vec::new();
    for f in 0..dim {
        if (pivot_mask >> f) & 1 == 1 {
            continue;
        }
        let mut v = 1u64 << f;
        for &(p, rb, _) in &reduced {
            if (rb >> f) & 1 == 1 {
                v |= 1 << p;
            }
        }
        basis.push(F2Vector { dim: dim as u8, bits: v });
    }
    Ok(AffineSpace { dim, particular: Some(F2Vector { dim: dim as u8, bits: particular }), basis })
}

/// Gram matrix `U^T U` of the given column vectors.
pub fn gram(columns: &[F2Vector]) -> Result<F2Matrix> {
    if columns.len() > MAX_DIM {
        return Err(Error::DimensionOutOfRange(columns.len()));
    }
    let n = columns.len();
    let mut g = F2Matrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            if columns[i].dot(&columns[j]) {
                g.set(i, j, true);
            }
        }
    }
    Ok(g)
}

/// The `(l+1) x (l+1)` all-ones matrix with zeros on the anti-diagonal.
pub fn j_matrix(l: usize) -> F2Matrix {
    let k = l + 1;
    let mut m = F2Matrix::zero(k, k);
    for i in 0..k {
        for j in 0..k {
            if i + j != l {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// Orthonormal basis `w_1..w_{t-1}` of the orthogonal complement of `u`, where
/// `u` has odd support of size smaller than `t`.
pub fn ortho_basis_of_complement(u: &F2Vector) -> Result<Vec<F2Vector>> {
    let t = u.dim();
    let l = u.weight();
    if l % 2 == 0 || l >= t {
        return Err(Error::BadSupport { support: l, dim: t });
    }
    // perm[k] = original coordinate placed at position k
    let mut perm: Vec<usize> = (0..t).filter(|&i| u.get(i)).collect();
    perm.extend((0..t).filter(|&i| !u.get(i)));
    let j = j_matrix(l);
    let column = |c: usize| -> F2Vector {
        let mut bits = 0u64;
        for (k, &orig) in perm.iter().enumerate() {
            let entry = if c <= l && k <= l { j.get(k, c) } else { k == c };
            if entry {
                bits |= 1 << orig;
            }
        }
        F2Vector { dim: t as u8, bits }
    };
    debug_assert_eq!(column(0), *u);
    Ok((1..t).map(column).collect())
}

//! Integer matrices, Smith normal form, and finitely generated abelian groups.
//!
//! Everything here is exact. Intermediate Smith reductions run in `i128` and
//! results are narrowed back to `i64`; a narrowing failure panics, since
//! every lattice this crate touches has tiny entries.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub type IVec = Vec<i64>;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        f.write_str("]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length.
    pub fn from_rows(rows: &[IVec]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            m.data[r * cols..(r + 1) * cols].copy_from_slice(row);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(nrows: usize, cols: &[IVec]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "ragged matrix columns");
            for (r, &x) in col.iter().enumerate() {
                m.set(r, c, x);
            }
        }
        m
    }

    pub fn permutation(perm: &[usize]) -> Self {
        // column i maps to row perm[i]
        let mut m = Self::zeros(perm.len(), perm.len());
        for (i, &p) in perm.iter().enumerate() {
            m.set(p, i, 1);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: i64) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> IVec {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> IVec {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<IVec> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> IVec {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c));
            }
        }
        m
    }

    /// Submatrix formed by the given row indices.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_rows(&idx.iter().map(|&r| self.row(r)).collect::<Vec<_>>()).with_cols(self.cols)
    }

    /// Submatrix formed by the given column indices.
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.set(r, j, self.get(r, c));
            }
        }
        m
    }

    fn with_cols(mut self, cols: usize) -> Self {
        if self.rows == 0 {
            self.cols = cols;
        }
        self
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                sign = -sign;
            }
            for r in k + 1..n {
                for c in k + 1..n {
                    a[r * n + c] = (a[r * n + c] * a[k * n + k] - a[r * n + k] * a[k * n + c]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        narrow(sign * a[n * n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs() == 1
    }

    /// Inverse of a unimodular matrix.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        if !self.is_unimodular() {
            return None;
        }
        let s = smith(self);
        // U A V = D with D = diag(±1) => A^{-1} = V D^{-1} U
        let n = self.rows;
        let mut d = Self::zeros(n, n);
        for i in 0..n {
            d.set(i, i, s.diag[i]);
        }
        Some(s.v.mul(&d).mul(&s.u))
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        smith(self).rank
    }
}

pub(crate) fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer overflow in lattice computation")
}

/// Smith normal form `U * A * V = D` with `D` diagonal, nonnegative, and
/// `d_0 | d_1 | ...`. `U` and `V` are unimodular.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Diagonal entries `D[i][i]` for `i < min(rows, cols)`.
    pub diag: Vec<i64>,
    pub rank: usize,
}

struct Work {
    rows: usize,
    cols: usize,
    a: Vec<i128>,
    u: Vec<i128>,
    v: Vec<i128>,
}

impl Work {
    fn at(&self, r: usize, c: usize) -> i128 {
        self.a[r * self.cols + c]
    }
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
        for c in 0..self.rows {
            self.u.swap(i * self.rows + c, j * self.rows + c);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.a.swap(r * self.cols + i, r * self.cols + j);
        }
        for r in 0..self.cols {
            self.v.swap(r * self.cols + i, r * self.cols + j);
        }
    }
    // row_j += k * row_i
    fn add_row(&mut self, j: usize, i: usize, k: i128) {
        for c in 0..self.cols {
            self.a[j * self.cols + c] += k * self.a[i * self.cols + c];
        }
        for c in 0..self.rows {
            self.u[j * self.rows + c] += k * self.u[i * self.rows + c];
        }
    }
    // col_j += k * col_i
    fn add_col(&mut self, j: usize, i: usize, k: i128) {
        for r in 0..self.rows {
            self.a[r * self.cols + j] += k * self.a[r * self.cols + i];
        }
        for r in 0..self.cols {
            self.v[r * self.cols + j] += k * self.v[r * self.cols + i];
        }
    }
    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            self.a[i * self.cols + c] = -self.a[i * self.cols + c];
        }
        for c in 0..self.rows {
            self.u[i * self.rows + c] = -self.u[i * self.rows + c];
        }
    }
}

/// Computes the Smith normal form of `a`.
pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut w = Work {
        rows: m,
        cols: n,
        a: a.data.iter().map(|&x| x as i128).collect(),
        u: IntMatrix::identity(m).data.iter().map(|&x| x as i128).collect(),
        v: IntMatrix::identity(n).data.iter().map(|&x| x as i128).collect(),
    };
    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for r in t..m {
            for c in t..n {
                let x = w.at(r, c);
                if x != 0 && best.is_none_or(|(br, bc)| x.abs() < w.at(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..m {
                let x = w.at(r, t);
                if x != 0 {
                    let q = x.div_euclid(w.at(t, t));
                    w.add_row(r, t, -q);
                    if w.at(r, t) != 0 {
                        w.swap_rows(t, r);
                        dirty = true;
                    }
                }
            }
            for c in t + 1..n {
                let x = w.at(t, c);
                if x != 0 {
                    let q = x.div_euclid(w.at(t, t));
                    w.add_col(c, t, -q);
                    if w.at(t, c) != 0 {
                        w.swap_cols(t, c);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let p = w.at(t, t);
            let bad = (t + 1..m).flat_map(|r| (t + 1..n).map(move |c| (r, c))).find(|&(r, c)| w.at(r, c) % p != 0);
            match bad {
                Some((r, _)) => {
                    w.add_row(t, r, 1);
                }
                None => break,
            }
        }
        if w.at(t, t) < 0 {
            w.negate_row(t);
        }
        t += 1;
    }
    let diag: Vec<i64> = (0..m.min(n)).map(|i| narrow(w.at(i, i))).collect();
    let rank = diag.iter().take_while(|&&d| d != 0).count();
    let conv = |rows: usize, cols: usize, v: &[i128]| IntMatrix { rows, cols, data: v.iter().map(|&x| narrow(x)).collect() };
    Smith { u: conv(m, m, &w.u), v: conv(n, n, &w.v), diag, rank }
}

/// Basis (as columns) of the integer kernel `{x : a x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let idx: Vec<usize> = (s.rank..a.cols).collect();
    s.v.select_cols(&idx)
}

/// A basis (as columns) of the sublattice of `Z^n` spanned by the columns of `a`.
pub fn lattice_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith(a);
    let uinv = s.u.inverse_unimodular().expect("Smith transform is unimodular");
    let mut cols = Vec::with_capacity(s.rank);
    for i in 0..s.rank {
        cols.push(uinv.col(i).into_iter().map(|x| x * s.diag[i]).collect());
    }
    IntMatrix::from_cols(a.rows, &cols)
}

/// Integer solution `x` of `a x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[i64]) -> Option<IVec> {
    let s = smith(a);
    let ub = s.u.apply(b);
    let mut y = vec![0i64; a.cols];
    for (i, &x) in ub.iter().enumerate() {
        if i < s.rank {
            if x % s.diag[i] != 0 {
                return None;
            }
            y[i] = x / s.diag[i];
        } else if x != 0 {
            return None;
        }
    }
    Some(s.v.apply(&y))
}

/// A finitely generated abelian group `Z^free ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t` with
/// `1 < d_1 | d_2 | ...`. Elements are coordinate vectors, free part first,
/// torsion coordinates reduced into `[0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FgAbelian {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl FgAbelian {
    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Modulus of coordinate `i` (0 for free coordinates).
    pub fn modulus(&self, i: usize) -> i64 {
        if i < self.free_rank {
            0
        } else {
            self.torsion[i - self.free_rank]
        }
    }

    pub fn reduce(&self, mut v: IVec) -> IVec {
        for (i, d) in self.torsion.iter().enumerate() {
            let k = self.free_rank + i;
            v[k] = v[k].rem_euclid(*d);
        }
        v
    }

    pub fn zero(&self) -> IVec {
        vec![0; self.dim()]
    }

    pub fn is_zero(&self, v: &[i64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// The relation matrix whose column span is the kernel of `Z^dim -> self`.
    pub fn relations(&self) -> IntMatrix {
        let mut cols = Vec::new();
        for (i, d) in self.torsion.iter().enumerate() {
            let mut c = vec![0; self.dim()];
            c[self.free_rank + i] = *d;
            cols.push(c);
        }
        IntMatrix::from_cols(self.dim(), &cols)
    }

    /// Reduces the entries of a homomorphism matrix into canonical form for
    /// this group as target.
    pub fn reduce_matrix(&self, m: &IntMatrix) -> IntMatrix {
        let mut out = m.clone();
        for (i, d) in self.torsion.iter().enumerate() {
            let r = self.free_rank + i;
            for c in 0..m.cols() {
                out.set(r, c, m.get(r, c).rem_euclid(*d));
            }
        }
        out
    }
}

impl fmt::Display for FgAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(alloc::format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(alloc::format!("Z/{d}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A quotient `source / relations` presented in Smith coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: FgAbelian,
    /// `group.dim() x source_dim`: sends a source vector to its class.
    pub projection: IntMatrix,
    /// `source_dim x group.dim()`: a set-theoretic section, `projection * section = 1`.
    pub section: IntMatrix,
}

impl Quotient {
    /// Presents `Z^n / <columns of relations>`.
    pub fn of(n: usize, relations: &IntMatrix) -> Self {
        assert_eq!(relations.rows(), n);
        let s = smith(relations);
        let uinv = s.u.inverse_unimodular().expect("Smith transform is unimodular");
        let mut free = Vec::new();
        let mut tors = Vec::new();
        for i in 0..n {
            let d = if i < s.rank { s.diag[i] } else { 0 };
            if d == 0 {
                free.push(i);
            } else if d > 1 {
                tors.push((i, d));
            }
        }
        let keep: Vec<usize> = free.iter().copied().chain(tors.iter().map(|t| t.0)).collect();
        let group = FgAbelian { free_rank: free.len(), torsion: tors.iter().map(|t| t.1).collect() };
        let projection = group.reduce_matrix(&s.u.select_rows(&keep));
        let section = uinv.select_cols(&keep);
        Self { group, projection, section }
    }

    /// Presents `A / <gens>` for an existing group `A`.
    pub fn of_group(a: &FgAbelian, gens: &IntMatrix) -> Self {
        Self::of(a.dim(), &a.relations().hcat(gens))
    }

    pub fn project(&self, v: &[i64]) -> IVec {
        self.group.reduce(self.projection.apply(v))
    }

    pub fn lift(&self, v: &[i64]) -> IVec {
        self.section.apply(v)
    }

    /// Matrix of the endomorphism induced by `g` (which must preserve the relations).
    pub fn induced(&self, g: &IntMatrix) -> IntMatrix {
        self.group.reduce_matrix(&self.projection.mul(g).mul(&self.section))
    }
}

/// Kernel of a homomorphism `h: a -> b` of finitely generated abelian groups,
/// returned as an abstract group together with its embedding into `a`.
pub fn kernel(a: &FgAbelian, b: &FgAbelian, h: &IntMatrix) -> (FgAbelian, IntMatrix) {
    assert_eq!((h.rows(), h.cols()), (b.dim(), a.dim()));
    let neg_rel = {
        let r = b.relations();
        let mut n = IntMatrix::zeros(r.rows(), r.cols());
        for i in 0..r.rows() {
            for j in 0..r.cols() {
                n.set(i, j, -r.get(i, j));
            }
        }
        n
    };
    let big = h.hcat(&neg_rel);
    let ker = integer_kernel(&big);
    let xs = ker.select_rows(&(0..a.dim()).collect::<Vec<_>>());
    let basis = if xs.cols() == 0 { IntMatrix::zeros(a.dim(), 0) } else { lattice_basis(&xs) };
    // relations of `a` rewritten in the kernel basis
    let rel = a.relations();
    let mut rel_cols = Vec::new();
    for c in 0..rel.cols() {
        let x = solve_integer(&basis, &rel.col(c)).expect("relations of the source lie in the kernel");
        rel_cols.push(x);
    }
    let q = Quotient::of(basis.cols(), &IntMatrix::from_cols(basis.cols(), &rel_cols));
    let embed = a.reduce_matrix(&basis.mul(&q.section));
    (q.group, embed)
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vadd(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(k: i64, a: &[i64]) -> IVec {
    a.iter().map(|x| k * x).collect()
}

pub fn vneg(a: &[i64]) -> IVec {
    a.iter().map(|x| -x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(a: &IntMatrix) {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                if r == c {
                    assert_eq!(d.get(r, c), s.diag[r]);
                } else {
                    assert_eq!(d.get(r, c), 0);
                }
            }
        }
        for w in s.diag[..s.rank].windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain {:?}", s.diag);
        }
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
    }

    #[test]
    fn smith_small_cases() {
        check_smith(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        check_smith(&IntMatrix::from_rows(&[vec![0, 0], vec![0, 0]]));
        check_smith(&IntMatrix::from_rows(&[vec![6, 4], vec![4, 6], vec![2, 2]]));
        let s = smith(&IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn quotient_by_swap_and_negation() {
        // Z^2 / (1,-1)
        let q = Quotient::of(2, &IntMatrix::from_cols(2, &[vec![1, -1]]));
        assert_eq!(q.group, FgAbelian::free(1));
        assert_eq!(q.project(&[3, 4]), q.project(&[7, 0]));
        // Z / 2Z
        let q = Quotient::of(1, &IntMatrix::from_cols(1, &[vec![2]]));
        assert_eq!(q.group, FgAbelian { free_rank: 0, torsion: vec![2] });
        assert_eq!(q.project(&[5]), vec![1]);
    }

    #[test]
    fn kernel_of_diagonal_map() {
        // ker of (x,y) -> x - y on Z^2 is the diagonal
        let a = FgAbelian::free(2);
        let b = FgAbelian::free(1);
        let (k, emb) = kernel(&a, &b, &IntMatrix::from_rows(&[vec![1, -1]]));
        assert_eq!(k, FgAbelian::free(1));
        let v = emb.col(0);
        assert!(v == vec![1, 1] || v == vec![-1, -1]);
        // ker of multiplication by 2 on Z/4 is Z/2
        let z4 = FgAbelian { free_rank: 0, torsion: vec![4] };
        let (k, emb) = kernel(&z4, &z4, &IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(k.torsion, vec![2]);
        assert_eq!(z4.reduce(emb.col(0)), vec![2]);
    }

    #[test]
    fn unimodular_inverse_and_solve() {
        let a = IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse_unimodular().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(solve_integer(&a, &[3, 2]), Some(vec![1, 1]));
        let b = IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
        assert_eq!(solve_integer(&b, &[1, 0]), None);
        assert_eq!(a.det(), 1);
        assert_eq!(b.det(), 4);
    }
}

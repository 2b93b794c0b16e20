//! Dense exact rational linear algebra. Every routine first splits the matrix
//! into the connected components of its nonzero pattern, then runs a
//! fraction-free (Bareiss) elimination on each integer-scaled block.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, int, to_f64, Rational};

pub type RationalVector = Vec<Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(RationalMatrix { rows: nrows, cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("rectangular input")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[RationalVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.len() });
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<RationalVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        RationalMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * factor).collect() }
    }

    fn zip_with(&self, other: &RationalMatrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `uᵀ M v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Result<Rational> {
        if u.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: u.len() });
        }
        let mv = self.mul_vec(v)?;
        Ok(u.iter().zip(&mv).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn quadratic_form(&self, v: &[Rational]) -> Result<Rational> {
        self.bilinear(v, v)
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| to_f64(self.get(i, j)))
    }

    /// Largest absolute entry as a float, used for tolerance scaling.
    pub fn max_abs_f64(&self) -> f64 {
        self.data.iter().map(|x| to_f64(x).abs()).fold(0.0, f64::max)
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Column-sparse matrix used to assemble large operator matrices whose
/// nonzero pattern splits into many small blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn new(rows: usize) -> Self {
        SparseMatrix { rows, columns: Vec::new() }
    }

    /// Appends a column given as `(row, value)` pairs; zeros are dropped.
    pub fn push_column(&mut self, mut entries: Vec<(usize, Rational)>) {
        entries.retain(|(r, v)| {
            assert!(*r < self.rows, "row index out of range");
            !v.is_zero()
        });
        entries.sort_by_key(|e| e.0);
        self.columns.push(entries);
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.columns[j]
    }

    pub fn from_dense(m: &RationalMatrix) -> Self {
        let mut s = SparseMatrix::new(m.rows);
        for j in 0..m.cols {
            s.push_column((0..m.rows).map(|i| (i, m.get(i, j).clone())).collect());
        }
        s
    }

    pub fn to_dense(&self) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(self.rows, self.cols());
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    /// Connected components of the bipartite row/column graph of the nonzero
    /// pattern, as `(rows, cols)` pairs with indices ascending. Zero columns
    /// form singleton components without rows; zero rows are dropped.
    pub fn components(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let n = self.rows + self.cols();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut row_used = vec![false; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, _) in c {
                row_used[*i] = true;
                union(&mut parent, *i, self.rows + j);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
        for j in 0..self.cols() {
            let r = find(&mut parent, self.rows + j);
            groups.entry(r).or_default().1.push(j);
        }
        for i in (0..self.rows).filter(|&i| row_used[i]) {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().0.push(i);
        }
        let mut out: Vec<_> = groups.into_values().collect();
        out.sort_by_key(|(_, c)| c[0]);
        out
    }

    /// Dense block on the given rows and columns, with an optional extra
    /// right-hand column, each row scaled to integers.
    fn integer_block(&self, rows: &[usize], cols: &[usize], rhs: Option<&[Rational]>) -> Vec<Vec<BigInt>> {
        let pos: std::collections::HashMap<usize, usize> = rows.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        let width = cols.len() + usize::from(rhs.is_some());
        let mut block = vec![vec![Rational::zero(); width]; rows.len()];
        for (c, &j) in cols.iter().enumerate() {
            for (i, v) in &self.columns[j] {
                block[pos[i]][c] = v.clone();
            }
        }
        if let Some(b) = rhs {
            for (a, &i) in rows.iter().enumerate() {
                block[a][cols.len()] = b[i].clone();
            }
        }
        block
            .into_iter()
            .map(|r| {
                let l = denominator_lcm(&r);
                r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect()
    }
}

/// Components of the bipartite nonzero pattern of a dense matrix.
pub fn block_components(m: &RationalMatrix) -> Vec<(Vec<usize>, Vec<usize>)> {
    SparseMatrix::from_dense(m).components()
}

/// Components of a symmetric matrix's nonzero pattern (as index sets).
pub fn symmetric_components(s: &RationalMatrix) -> Vec<Vec<usize>> {
    let n = s.rows;
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !s.get(i, j).is_zero() {
                union(&mut parent, i, j);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Fraction-free Gauss–Jordan reduction in place. Returns the pivot columns
/// (one per pivot row, in row order) and the final common pivot value; after
/// reduction row `r` reads `d·e_{pivot[r]} + (free-column entries)`.
fn fraction_free_rref(a: &mut [Vec<BigInt>], ncols: usize) -> (Vec<usize>, BigInt) {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        // smallest nonzero entry keeps the growth down
        let Some(p) = (r..nrows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].bits()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][c].clone();
        for i in 0..nrows {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..ncols {
                let v = if f.is_zero() {
                    &piv * &a[i][j]
                } else {
                    &piv * &a[i][j] - &f * &a[r][j]
                };
                debug_assert!((&v % &prev).is_zero(), "fraction-free division must be exact");
                a[i][j] = v / &prev;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    (pivots, prev)
}

fn primitive(v: Vec<BigInt>) -> Vec<Rational> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    v.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

/// Exact basis of the right null space. Vectors have integer entries with
/// content 1; one vector per free column, ordered by that column, with a
/// positive entry there.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<RationalVector> {
    kernel_basis_sparse(&SparseMatrix::from_dense(m))
}

/// [`kernel_basis`] for a column-sparse matrix.
pub fn kernel_basis_sparse(m: &SparseMatrix) -> Vec<RationalVector> {
    let mut out: Vec<(usize, RationalVector)> = Vec::new();
    for (rows, cols) in m.components() {
        let mut a = m.integer_block(&rows, &cols, None);
        let (pivots, d) = fraction_free_rref(&mut a, cols.len());
        let d_sign = if d.is_negative() { -BigInt::one() } else { BigInt::one() };
        let is_pivot: Vec<bool> = (0..cols.len()).map(|c| pivots.contains(&c)).collect();
        for f in (0..cols.len()).filter(|&c| !is_pivot[c]) {
            let mut v = vec![BigInt::zero(); m.cols()];
            v[cols[f]] = d.abs();
            for (r, &pc) in pivots.iter().enumerate() {
                v[cols[pc]] = -&a[r][f] * &d_sign;
            }
            out.push((cols[f], primitive(v)));
        }
    }
    out.sort_by_key(|(c, _)| *c);
    out.into_iter().map(|(_, v)| v).collect()
}

/// Indices of a maximal linearly independent set of columns, ascending.
pub fn independent_columns_sparse(m: &SparseMatrix) -> Vec<usize> {
    let mut out = Vec::new();
    for (rows, cols) in m.components() {
        if rows.is_empty() {
            continue;
        }
        let mut a = m.integer_block(&rows, &cols, None);
        out.extend(fraction_free_rref(&mut a, cols.len()).0.into_iter().map(|c| cols[c]));
    }
    out.sort_unstable();
    out
}

pub fn rank(m: &RationalMatrix) -> usize {
    rank_sparse(&SparseMatrix::from_dense(m))
}

pub fn rank_sparse(m: &SparseMatrix) -> usize {
    m.components()
        .into_iter()
        .map(|(rows, cols)| {
            let mut a = m.integer_block(&rows, &cols, None);
            fraction_free_rref(&mut a, cols.len()).0.len()
        })
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(RationalVector),
    Inconsistent,
}

/// Some exact solution of `M x = b` (free variables set to zero).
pub fn solve(m: &RationalMatrix, b: &[Rational]) -> Result<SolveOutcome> {
    solve_sparse(&SparseMatrix::from_dense(m), b)
}

/// [`solve`] for a column-sparse matrix.
pub fn solve_sparse(m: &SparseMatrix, b: &[Rational]) -> Result<SolveOutcome> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: b.len() });
    }
    let mut x = vec![Rational::zero(); m.cols()];
    let mut covered = vec![false; m.rows];
    for (rows, cols) in m.components() {
        if rows.is_empty() {
            continue;
        }
        for &i in &rows {
            covered[i] = true;
        }
        if rows.iter().all(|&i| b[i].is_zero()) {
            continue;
        }
        let mut a = m.integer_block(&rows, &cols, Some(b));
        let (pivots, d) = fraction_free_rref(&mut a, cols.len() + 1);
        if pivots.last() == Some(&cols.len()) {
            return Ok(SolveOutcome::Inconsistent);
        }
        for (r, &pc) in pivots.iter().enumerate() {
            x[cols[pc]] = Rational::new(a[r][cols.len()].clone(), d.clone());
        }
    }
    // rows outside every component are zero rows
    if (0..m.rows).any(|i| !covered[i] && !b[i].is_zero()) {
        return Ok(SolveOutcome::Inconsistent);
    }
    Ok(SolveOutcome::Solution(x))
}

/// Symmetric fraction-free elimination with diagonal pivoting on an integer
/// matrix. Returns whether the matrix is positive semidefinite.
fn integer_psd(mut a: Vec<Vec<BigInt>>) -> bool {
    let n = a.len();
    let mut active: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    while !active.is_empty() {
        if active.iter().any(|&i| a[i][i].is_negative()) {
            return false;
        }
        let pivot = active.iter().copied().filter(|&i| a[i][i].is_positive()).min_by_key(|&i| a[i][i].bits());
        let Some(p) = pivot else {
            // zero diagonal: semidefinite only if the whole block vanishes
            return active.iter().all(|&i| active.iter().all(|&j| a[i][j].is_zero()));
        };
        active.retain(|&i| i != p);
        let piv = a[p][p].clone();
        for (x, &i) in active.iter().enumerate() {
            let aip = a[i][p].clone();
            for &j in &active[x..] {
                let v = if aip.is_zero() || a[p][j].is_zero() {
                    &piv * &a[i][j]
                } else {
                    &piv * &a[i][j] - &aip * &a[p][j]
                };
                let v = v / &prev;
                a[j][i] = v.clone();
                a[i][j] = v;
            }
        }
        prev = piv;
        // a zero diagonal entry with a nonzero row rules out semidefiniteness
        for &i in &active {
            if a[i][i].is_zero() && active.iter().any(|&j| !a[i][j].is_zero()) {
                return false;
            }
        }
        active.retain(|&i| !a[i][i].is_zero());
    }
    true
}

/// Exact positive-semidefiniteness test via pivoted `LDLᵀ` with deflation.
pub fn psd_certify(s: &RationalMatrix) -> Result<bool> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    for block in symmetric_components(s) {
        let sub = s.submatrix(&block, &block);
        let l = denominator_lcm(sub.data.iter());
        let a: Vec<Vec<BigInt>> = (0..block.len())
            .map(|i| sub.row(i).iter().map(|x| x.numer() * (&l / x.denom())).collect())
            .collect();
        if !integer_psd(a) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateStatus {
    Certified,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenCertificate {
    pub lambda: Rational,
    pub witness: RationalVector,
    pub status: CertificateStatus,
    /// Which check failed, when refuted.
    pub failure: Option<String>,
}

impl EigenCertificate {
    pub fn is_certified(&self) -> bool {
        self.status == CertificateStatus::Certified
    }
}

/// Certifies `lambda` as the largest generalized eigenvalue of `(A, G)`:
/// `A w = λ G w` with `w ≠ 0`, and `λG − A ⪰ 0`.
pub fn certify_max_generalized_eigenvalue(
    a: &RationalMatrix,
    g: &RationalMatrix,
    lambda: &Rational,
    witness: &[Rational],
) -> Result<EigenCertificate> {
    let n = a.rows;
    for found in [a.cols, g.rows, g.cols] {
        if found != n {
            return Err(Error::DimensionMismatch { expected: n, found });
        }
    }
    if witness.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: witness.len() });
    }
    if !a.is_symmetric() || !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let refute = |why: &str| EigenCertificate {
        lambda: lambda.clone(),
        witness: witness.to_vec(),
        status: CertificateStatus::Refuted,
        failure: Some(why.to_string()),
    };
    if witness.iter().all(|x| x.is_zero()) {
        return Ok(refute("witness is zero"));
    }
    let aw = a.mul_vec(witness)?;
    let gw = g.mul_vec(witness)?;
    if aw.iter().zip(&gw).any(|(x, y)| x != &(y * lambda)) {
        return Ok(refute("witness is not an eigenvector for lambda"));
    }
    if !psd_certify(&g.scale(lambda).sub(a)?)? {
        return Ok(refute("lambda*G - A is not positive semidefinite"));
    }
    Ok(EigenCertificate {
        lambda: lambda.clone(),
        witness: witness.to_vec(),
        status: CertificateStatus::Certified,
        failure: None,
    })
}

/// Floating-point estimate of the largest generalized eigenvalue of `(A, G)`
/// by Cholesky reduction and a symmetric eigensolve. Advisory only: exact
/// claims always go through [`certify_max_generalized_eigenvalue`]. Returns
/// NaN when `G` is not numerically positive definite.
pub fn float_max_eigenvalue(a: &RationalMatrix, g: &RationalMatrix) -> f64 {
    let mut best = f64::NEG_INFINITY;
    // the pencil decouples over the components of the joint pattern
    let joint = a.add(g).expect("same dimensions");
    for block in symmetric_components(&joint) {
        let ab = a.submatrix(&block, &block).to_f64();
        let gb = g.submatrix(&block, &block).to_f64();
        let Some(chol) = gb.cholesky() else {
            return f64::NAN;
        };
        let l = chol.l();
        let Some(linv) = l.clone().try_inverse() else {
            return f64::NAN;
        };
        let c = &linv * ab * linv.transpose();
        let c = (&c + c.transpose()) * 0.5;
        let eig = c.symmetric_eigenvalues();
        best = best.max(eig.iter().copied().fold(f64::NEG_INFINITY, f64::max));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn kernel_examples() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        assert_eq!(kernel_basis(&m), vec![vec![int(-1), int(1)]]);
        assert!(kernel_basis(&RationalMatrix::identity(3)).is_empty());
        let z = RationalMatrix::zeros(2, 2);
        assert_eq!(kernel_basis(&z).len(), 2);
    }

    #[test]
    fn kernel_vectors_are_primitive_integers() {
        let m = RationalMatrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), int(0), int(1)],
            vec![int(0), rat(2, 3), int(4), int(0)],
        ])
        .unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
            assert!(v.iter().all(|x| x.is_integer()));
            let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()));
            assert_eq!(g, BigInt::one());
        }
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn independent_columns_example() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 2, 0, 1], &[0, 0, 0, 1], &[1, 2, 0, 0]]);
        assert_eq!(independent_columns_sparse(&SparseMatrix::from_dense(&m)), vec![0, 3]);
    }

    #[test]
    fn solve_examples() {
        let b = vec![rat(1, 2), int(3), int(-1)];
        assert_eq!(solve(&RationalMatrix::identity(3), &b).unwrap(), SolveOutcome::Solution(b.clone()));
        let m = RationalMatrix::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&m, &[int(1), int(3)]).unwrap(), SolveOutcome::Inconsistent);
        let z = RationalMatrix::zeros(2, 1);
        assert_eq!(solve(&z, &[int(0), int(1)]).unwrap(), SolveOutcome::Inconsistent);
        assert!(solve(&m, &[int(1)]).is_err());
        match solve(&m, &[int(1), int(2)]).unwrap() {
            SolveOutcome::Solution(x) => assert_eq!(m.mul_vec(&x).unwrap(), vec![int(1), int(2)]),
            SolveOutcome::Inconsistent => panic!("consistent system"),
        }
    }

    #[test]
    fn psd_examples() {
        assert!(psd_certify(&RationalMatrix::identity(3)).unwrap());
        assert!(!psd_certify(&RationalMatrix::diagonal(&[int(1), int(-1)])).unwrap());
        // singular semidefinite: [[1,1],[1,1]]
        assert!(psd_certify(&RationalMatrix::from_i64_rows(&[&[1, 1], &[1, 1]])).unwrap());
        // zero diagonal with off-diagonal mass
        assert!(!psd_certify(&RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(!psd_certify(&RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 1]])).unwrap());
        assert!(psd_certify(&RationalMatrix::zeros(2, 2)).unwrap());
        assert_eq!(psd_certify(&RationalMatrix::from_i64_rows(&[&[1, 2], &[0, 1]])), Err(Error::NotSymmetric));
    }

    #[test]
    fn psd_after_deflation() {
        // rank one block followed by a negative direction hidden behind it
        let m = RationalMatrix::from_i64_rows(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 0]]);
        assert!(!psd_certify(&m).unwrap());
        let m = RationalMatrix::from_i64_rows(&[&[4, 2, 2], &[2, 1, 1], &[2, 1, 1]]);
        assert!(psd_certify(&m).unwrap());
    }

    #[test]
    fn certificate_examples() {
        let a = RationalMatrix::diagonal(&[int(1), int(2)]);
        let g = RationalMatrix::identity(2);
        let c = certify_max_generalized_eigenvalue(&a, &g, &int(2), &[int(0), int(1)]).unwrap();
        assert!(c.is_certified());
        let c = certify_max_generalized_eigenvalue(&a, &g, &int(1), &[int(1), int(0)]).unwrap();
        assert_eq!(c.status, CertificateStatus::Refuted);
        assert!(c.failure.unwrap().contains("semidefinite"));
        let c = certify_max_generalized_eigenvalue(&a, &g, &int(2), &[int(1), int(0)]).unwrap();
        assert!(c.failure.unwrap().contains("eigenvector"));
        assert!(certify_max_generalized_eigenvalue(&a, &g, &int(2), &[int(1)]).is_err());
    }

    #[test]
    fn float_eigenvalue() {
        let a = RationalMatrix::diagonal(&[int(1), int(2)]);
        let g = RationalMatrix::identity(2);
        assert!((float_max_eigenvalue(&a, &g) - 2.0).abs() < 1e-12);
        let g2 = RationalMatrix::diagonal(&[int(1), int(4)]);
        assert!((float_max_eigenvalue(&a, &g2) - 1.0).abs() < 1e-12);
    }
}

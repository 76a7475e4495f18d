//! Exact dense linear algebra over the coefficient field: row reduction,
//! nullspaces, and canonical subspaces.
//!
//! Everything is deterministic: pivots are chosen as the first nonzero
//! entry in column order, and reduced row echelon form is the canonical
//! representative of a row space, so two subspaces are equal exactly when
//! their representations are equal.



use crate::scalar::FieldScalar;

/// A dense matrix over the field, stored as rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F: FieldScalar> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<F>>,
}

impl<F: FieldScalar> Matrix<F> {
    pub fn from_rows(cols: usize, data: Vec<Vec<F>>) -> Self {
        for r in &data {
            assert_eq!(r.len(), cols, "ragged matrix row");
        }
        Matrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![vec![F::zero(); cols]; rows],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i]
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i][j] = v;
    }

    /// Append the rows of `other` below.
    pub fn stack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols, "column count mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::from_rows(self.cols, data)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut acc = F::zero();
                for (a, b) in row.iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot
    /// columns in ascending order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = self.data[r][c].inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.data[r][j].clone() * inv.clone();
                self.data[r][j] = v;
            }
            for i in 0..self.rows {
                if i != r && !self.data[i][c].is_zero() {
                    let factor = self.data[i][c].clone();
                    for j in c..self.cols {
                        let v = self.data[i][j].clone()
                            - factor.clone() * self.data[r][j].clone();
                        self.data[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// A canonical basis of the right nullspace `{v : A v = 0}`: one vector
    /// per free column, ascending, with a 1 in its free position.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                if p < f {
                    v[p] = -m.data[i][f].clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// A linear subspace of `k^n` in canonical form: the reduced row echelon
/// basis of its span, with zero rows dropped. Structural equality is
/// subspace equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F: FieldScalar> {
    ambient: usize,
    rows: Vec<Vec<F>>,
}

impl<F: FieldScalar> Subspace<F> {
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        for v in &vectors {
            assert_eq!(v.len(), ambient, "vector length mismatch");
        }
        let mut m = Matrix::from_rows(ambient, vectors);
        let pivots = m.rref_in_place();
        let rows = m.data.into_iter().take(pivots.len()).collect();
        Subspace { ambient, rows }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let mut rows = Vec::new();
        for i in 0..ambient {
            let mut v = vec![F::zero(); ambient];
            v[i] = F::one();
            rows.push(v);
        }
        Subspace { ambient, rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    /// Reduce `v` against the echelon basis; the zero vector means
    /// membership.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut v = v.to_vec();
        for row in &self.rows {
            let pivot = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("no zero rows in canonical basis");
            if !v[pivot].is_zero() {
                let factor = v[pivot].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    let u = vi.clone() - factor.clone() * ri.clone();
                    *vi = u;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace<F>) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let mut vectors = self.rows.clone();
        vectors.extend(other.rows.iter().cloned());
        Subspace::from_spanning(self.ambient, vectors)
    }
}

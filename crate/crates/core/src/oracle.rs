//! Finite-dimensional view of an Artinian quotient: multiplication
//! tables over the standard monomial basis, and annihilator, Hom, and
//! trace computations done purely by k-linear algebra.
//!
//! Normal forms are used once, to build the tables; everything after is
//! rank and nullspace work, independent of the Groebner-side ideal
//! calculus it cross-checks.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::groebner::normal_form;
use crate::linalg::{Matrix, Subspace};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::quotient::QuotientRing;
use crate::scalar::FieldScalar;

/// A finite-dimensional algebra `R = S/J` presented by its standard
/// monomial basis and the structure constants of multiplication.
/// `basis[0]` is the monomial 1, the least monomial in any global order.
#[derive(Debug)]
pub struct FiniteAlgebra<F: FieldScalar> {
    ring: PolyRing<F>,
    basis: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    /// `table[i][j]` = coordinates of `basis[i] * basis[j]`; symmetric.
    table: Vec<Vec<Vec<F>>>,
    reducer: Vec<Polynomial<F>>,
}

impl<F: FieldScalar> FiniteAlgebra<F> {
    pub fn build(q: &QuotientRing<F>) -> Result<Self> {
        let basis = match q.standard_monomials()?.finite() {
            Some(m) => m.to_vec(),
            None => return Err(Error::InfiniteDimensional),
        };
        let ring = q.ambient().clone();
        let reducer = q.defining().groebner_basis().to_vec();
        let index: BTreeMap<Monomial, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let d = basis.len();
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in i..d {
                let product = ring.monomial_poly(basis[i].mul(&basis[j]), F::one());
                let nf = normal_form(&product, &reducer);
                let coords = coords_in(&nf, &index, d);
                table[i][j] = coords.clone();
                if i != j {
                    table[j][i] = coords;
                }
            }
        }
        Ok(FiniteAlgebra {
            ring,
            basis,
            index,
            table,
            reducer,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_poly(&self, i: usize) -> Polynomial<F> {
        self.ring.monomial_poly(self.basis[i].clone(), F::one())
    }

    /// Coordinates of the residue of `f` in the standard basis.
    pub fn element_coords(&self, f: &Polynomial<F>) -> Vec<F> {
        let nf = normal_form(f, &self.reducer);
        coords_in(&nf, &self.index, self.dim())
    }

    pub fn coords_to_element(&self, v: &[F]) -> Polynomial<F> {
        let terms: Vec<(Monomial, F)> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.basis[i].clone(), c.clone()))
            .collect();
        self.ring.from_terms(terms)
    }

    /// The matrix of multiplication by `f` acting on the basis, assembled
    /// from the structure constants.
    pub fn mult_matrix(&self, f: &Polynomial<F>) -> Matrix<F> {
        self.mult_matrix_from_coords(&self.element_coords(f))
    }

    fn mult_matrix_from_coords(&self, coords: &[F]) -> Matrix<F> {
        let d = self.dim();
        let mut data = vec![vec![F::zero(); d]; d];
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for l in 0..d {
                for r in 0..d {
                    let add = c.clone() * self.table[i][l][r].clone();
                    if !add.is_zero() {
                        data[r][l] = data[r][l].clone() + add;
                    }
                }
            }
        }
        Matrix::from_rows(d, data)
    }

    /// `Ann(I)` for `I = (gens)` as a subspace: the joint nullspace of the
    /// multiplication matrices. No generators means `I = (0)`, so the full
    /// space; a unit generator forces the zero subspace.
    pub fn ann_linear(&self, gens: &[Polynomial<F>]) -> Subspace<F> {
        let d = self.dim();
        let mut stacked = Matrix::zero(0, d);
        for g in gens {
            stacked = stacked.stack(&self.mult_matrix(g));
        }
        Subspace::from_spanning(d, stacked.nullspace())
    }

    /// A k-basis of `Hom_R(I, R)` for `I = (gens)`, each hom given by its
    /// tuple of generator images. A hom is a choice of images respecting
    /// every relation among the generators, and the relations form the
    /// nullspace of the map sending a coefficient tuple to its
    /// combination of the generators.
    pub fn hom_module(&self, gens: &[Polynomial<F>]) -> Vec<Vec<Polynomial<F>>> {
        let d = self.dim();
        let m = gens.len();
        if m == 0 {
            return Vec::new();
        }
        let mult: Vec<Matrix<F>> = gens.iter().map(|g| self.mult_matrix(g)).collect();
        // combination map R^m -> R, (a_i) |-> sum a_i f_i, as a D x mD matrix
        let mut comb_rows = Vec::with_capacity(d);
        for r in 0..d {
            let mut row = Vec::with_capacity(m * d);
            for mm in &mult {
                row.extend(mm.row(r).iter().cloned());
            }
            comb_rows.push(row);
        }
        let relations = Matrix::from_rows(m * d, comb_rows).nullspace();
        // each relation (a_i) imposes sum a_i r_i = 0 on the images
        let mut constraint = Matrix::zero(0, m * d);
        for rel in &relations {
            let mut rows = vec![Vec::with_capacity(m * d); d];
            for i in 0..m {
                let block = self.mult_matrix_from_coords(&rel[i * d..(i + 1) * d]);
                for (r, row) in rows.iter_mut().enumerate() {
                    row.extend(block.row(r).iter().cloned());
                }
            }
            constraint = constraint.stack(&Matrix::from_rows(m * d, rows));
        }
        constraint
            .nullspace()
            .into_iter()
            .map(|v| {
                (0..m)
                    .map(|i| self.coords_to_element(&v[i * d..(i + 1) * d]))
                    .collect()
            })
            .collect()
    }

    /// The trace of `I = (gens)`: the span of all generator images over
    /// all homs `I -> R`. The hom space is an R-module, so this span is
    /// already an ideal; its basis polynomials generate it.
    pub fn trace_linear(&self, gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        let d = self.dim();
        let mut vectors = Vec::new();
        for hom in self.hom_module(gens) {
            for component in &hom {
                vectors.push(self.element_coords(component));
            }
        }
        let span = Subspace::from_spanning(d, vectors);
        span.basis()
            .iter()
            .map(|v| self.coords_to_element(v))
            .collect()
    }

    /// The subspace of `R` spanned by the ideal `(gens)`: all columns of
    /// the multiplication matrices.
    pub fn ideal_subspace(&self, gens: &[Polynomial<F>]) -> Subspace<F> {
        let d = self.dim();
        let mut vectors = Vec::new();
        for g in gens {
            let mm = self.mult_matrix(g);
            for j in 0..d {
                vectors.push((0..d).map(|r| mm.get(r, j).clone()).collect());
            }
        }
        Subspace::from_spanning(d, vectors)
    }

    /// The subspace spanned by explicit elements (not the ideal they
    /// generate).
    pub fn span_of(&self, elems: &[Polynomial<F>]) -> Subspace<F> {
        let vectors = elems.iter().map(|e| self.element_coords(e)).collect();
        Subspace::from_spanning(self.dim(), vectors)
    }
}

fn coords_in<F: FieldScalar>(
    nf: &Polynomial<F>,
    index: &BTreeMap<Monomial, usize>,
    d: usize,
) -> Vec<F> {
    let mut coords = vec![F::zero(); d];
    for (m, c) in nf.terms() {
        let i = *index
            .get(m)
            .expect("normal form lies in the standard monomial span");
        coords[i] = c.clone();
    }
    coords
}

//! Syzygies of polynomial matrices, kernels of matrices over quotient
//! rings, and presentation matrices of ideals.
//!
//! Module elements are polynomials with a component tag on each term. The
//! module order is position-over-term: lower component index dominates,
//! ties broken by the ring's monomial order. Kernels over a quotient `S/J`
//! reduce to syzygies over `S` by adjoining the columns `g e_i` for each
//! generator `g` of `J`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::normal_form;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::quotient::QuotientRing;
use crate::scalar::FieldScalar;

/// A dense matrix of polynomials over one ring, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix<F: FieldScalar> {
    ring: PolyRing<F>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: FieldScalar> PolyMatrix<F> {
    pub fn new(
        ring: PolyRing<F>,
        rows: usize,
        cols: usize,
        entries: Vec<Polynomial<F>>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::MatrixShape {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for e in &entries {
            if e.ring() != &ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(PolyMatrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: PolyRing<F>, rows: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        for r in &rows {
            if r.len() != ncols {
                return Err(Error::MatrixShape {
                    expected: ncols,
                    got: r.len(),
                });
            }
        }
        Self::new(ring, nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(
        ring: PolyRing<F>,
        nrows: usize,
        cols: Vec<Vec<Polynomial<F>>>,
    ) -> Result<Self> {
        let ncols = cols.len();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for i in 0..nrows {
            for col in &cols {
                if col.len() != nrows {
                    return Err(Error::MatrixShape {
                        expected: nrows,
                        got: col.len(),
                    });
                }
                entries.push(col[i].clone());
            }
        }
        Self::new(ring, nrows, ncols, entries)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<F>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> PolyMatrix<F> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &PolyMatrix<F>) -> Result<PolyMatrix<F>> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::MatrixShape {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                entries.push(acc);
            }
        }
        PolyMatrix::new(self.ring.clone(), self.rows, other.cols, entries)
    }

    pub fn map_entries(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> PolyMatrix<F> {
        PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

impl<F: FieldScalar> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A free-module element: terms `(component, monomial, coefficient)` kept
/// strictly descending under position-over-term order.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ModPoly<F: FieldScalar> {
    terms: Vec<(usize, Monomial, F)>,
}

fn pot_cmp<F: FieldScalar>(
    ring: &PolyRing<F>,
    a: &(usize, Monomial, F),
    b: &(usize, Monomial, F),
) -> Ordering {
    // lower component dominates
    match a.0.cmp(&b.0) {
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
        Ordering::Equal => ring.cmp_monomials(&a.1, &b.1),
    }
}

impl<F: FieldScalar> ModPoly<F> {
    fn from_vector(ring: &PolyRing<F>, comps: &[Polynomial<F>]) -> Self {
        let mut terms: Vec<(usize, Monomial, F)> = Vec::new();
        for (i, p) in comps.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((i, m.clone(), c.clone()));
            }
        }
        terms.sort_by(|a, b| pot_cmp(ring, b, a));
        ModPoly { terms }
    }

    fn to_vector(&self, ring: &PolyRing<F>, ncomps: usize) -> Vec<Polynomial<F>> {
        let mut comps: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); ncomps];
        for (i, m, c) in &self.terms {
            comps[*i].push((m.clone(), c.clone()));
        }
        comps
            .into_iter()
            .map(|terms| ring.from_terms(terms))
            .collect()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> Option<&(usize, Monomial, F)> {
        self.terms.first()
    }

    fn sub(&self, ring: &PolyRing<F>, other: &ModPoly<F>) -> ModPoly<F> {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => terms.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (i, m, c) = b.next().unwrap();
                    terms.push((*i, m.clone(), -c.clone()));
                }
                (Some(ta), Some(tb)) => match pot_cmp(ring, ta, tb) {
                    Ordering::Greater => terms.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (i, m, c) = b.next().unwrap();
                        terms.push((*i, m.clone(), -c.clone()));
                    }
                    Ordering::Equal => {
                        let (i, m, ca) = a.next().unwrap();
                        let (_, _, cb) = b.next().unwrap();
                        let d = ca.clone() - cb.clone();
                        if !d.is_zero() {
                            terms.push((*i, m.clone(), d));
                        }
                    }
                },
            }
        }
        ModPoly { terms }
    }

    /// Multiply by the scalar term `c * m` (component-preserving).
    fn mul_term(&self, m: &Monomial, c: &F) -> ModPoly<F> {
        ModPoly {
            terms: self
                .terms
                .iter()
                .map(|(i, t, k)| (*i, t.mul(m), k.clone() * c.clone()))
                .collect(),
        }
    }

    fn monic(&self) -> ModPoly<F> {
        match self.leading() {
            None => self.clone(),
            Some((_, _, lc)) if lc.is_one() => self.clone(),
            Some((_, _, lc)) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                ModPoly {
                    terms: self
                        .terms
                        .iter()
                        .map(|(i, m, c)| (*i, m.clone(), c.clone() * inv.clone()))
                        .collect(),
                }
            }
        }
    }
}

fn mod_normal_form<F: FieldScalar>(
    ring: &PolyRing<F>,
    f: &ModPoly<F>,
    basis: &[ModPoly<F>],
) -> ModPoly<F> {
    let mut p = f.clone();
    let mut remainder: Vec<(usize, Monomial, F)> = Vec::new();
    'strip: while let Some((comp, lm, lc)) = p.leading().cloned() {
        for g in basis {
            let Some((gcomp, glm, glc)) = g.leading() else {
                continue;
            };
            if *gcomp == comp && glm.divides(&lm) {
                let q = glm.div_into(&lm).expect("checked divisibility");
                let c = lc.div_exact(glc);
                p = p.sub(ring, &g.mul_term(&q, &c));
                continue 'strip;
            }
        }
        remainder.push((comp, lm, lc));
        p.terms.remove(0);
    }
    ModPoly { terms: remainder }
}

/// Module Buchberger under position-over-term order. S-pairs form only
/// between elements whose leading terms share a component; the coprime-lead
/// shortcut is unsound for modules and is not used. The chain criterion
/// (a third element's lead dividing the pair's lcm, with both side pairs
/// settled) remains valid and is applied.
fn mod_buchberger<F: FieldScalar>(ring: &PolyRing<F>, gens: Vec<ModPoly<F>>) -> Vec<ModPoly<F>> {
    let mut basis: Vec<ModPoly<F>> = gens
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();

    let mut queue: std::collections::BTreeSet<(u64, usize, Vec<u32>, usize, usize)> =
        std::collections::BTreeSet::new();
    let mut pending: std::collections::BTreeSet<(usize, usize)> = std::collections::BTreeSet::new();
    let push_pairs = |queue: &mut std::collections::BTreeSet<(u64, usize, Vec<u32>, usize, usize)>,
                      pending: &mut std::collections::BTreeSet<(usize, usize)>,
                      basis: &[ModPoly<F>],
                      j: usize| {
        let (cj, lmj, _) = basis[j].leading().expect("nonzero basis element");
        for i in 0..j {
            let (ci, lmi, _) = basis[i].leading().expect("nonzero basis element");
            if ci != cj {
                continue;
            }
            let l = lmi.lcm(lmj);
            queue.insert((l.total_degree(), *ci, l.exps().to_vec(), i, j));
            pending.insert((i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &mut pending, &basis, j);
    }

    while let Some(entry) = queue.pop_first() {
        let (_, comp, lcm_exps, i, j) = entry;
        pending.remove(&(i, j));
        let lcm = Monomial::new(lcm_exps);
        let chain = (0..basis.len()).any(|k| {
            if k == i || k == j {
                return false;
            }
            let (ck, lmk, _) = basis[k].leading().expect("nonzero");
            *ck == comp
                && lmk.divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let (_, lmi, lci) = basis[i].leading().expect("nonzero").clone();
        let (_, lmj, lcj) = basis[j].leading().expect("nonzero").clone();
        let ui = lmi.div_into(&lcm).expect("lcm divisible");
        let uj = lmj.div_into(&lcm).expect("lcm divisible");
        let a = basis[i].mul_term(&ui, &lci.inv().expect("nonzero"));
        let b = basis[j].mul_term(&uj, &lcj.inv().expect("nonzero"));
        let s = a.sub(ring, &b);
        let r = mod_normal_form(ring, &s, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
            push_pairs(&mut queue, &mut pending, &basis, basis.len() - 1);
        }
    }
    basis
}

/// Canonicalize a generating set of a submodule of `S^ncomps` that is
/// already a Groebner basis: drop elements whose lead is divisible by
/// another's, reduce tails, sort ascending by leading term.
fn minimalize_columns<F: FieldScalar>(
    ring: &PolyRing<F>,
    mut cols: Vec<ModPoly<F>>,
) -> Vec<ModPoly<F>> {
    cols.retain(|c| !c.is_zero());
    cols.sort_by(|a, b| {
        pot_cmp(
            ring,
            a.leading().expect("nonzero"),
            b.leading().expect("nonzero"),
        )
    });
    let mut minimal: Vec<ModPoly<F>> = Vec::new();
    for c in cols {
        let (comp, lm, _) = c.leading().expect("nonzero");
        let redundant = minimal.iter().any(|h| {
            let (hc, hm, _) = h.leading().expect("nonzero");
            hc == comp && hm.divides(lm)
        });
        if !redundant {
            minimal.push(c);
        }
    }
    let snapshot = minimal.clone();
    minimal
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let others: Vec<ModPoly<F>> = snapshot
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let lead = c.leading().expect("nonzero").clone();
            let mut tail = c.clone();
            tail.terms.remove(0);
            let reduced_tail = mod_normal_form(ring, &tail, &others);
            let mut terms = vec![lead];
            terms.extend(reduced_tail.terms);
            ModPoly { terms }.monic()
        })
        .collect()
}

/// Columns generating the syzygy module `{v : M v = 0}` of the columns of
/// `M`, over the polynomial ring itself.
///
/// Works in `S^(r+c)`: the generators `[column_j ; e_j]` are closed under
/// the module Groebner computation, and basis elements supported entirely
/// in the last `c` components are exactly the syzygies.
pub fn syzygies<F: FieldScalar>(m: &PolyMatrix<F>) -> PolyMatrix<F> {
    let ring = m.ring().clone();
    let r = m.nrows();
    let c = m.ncols();
    let mut gens = Vec::with_capacity(c);
    for j in 0..c {
        let mut comps = vec![ring.zero(); r + c];
        for i in 0..r {
            comps[i] = m.get(i, j).clone();
        }
        comps[r + j] = ring.one();
        gens.push(ModPoly::from_vector(&ring, &comps));
    }
    let gb = mod_buchberger(&ring, gens);
    let bottom: Vec<ModPoly<F>> = gb
        .into_iter()
        .filter(|g| g.leading().map_or(false, |(i, _, _)| *i >= r))
        .map(|g| ModPoly {
            terms: g
                .terms
                .into_iter()
                .map(|(i, mo, co)| {
                    debug_assert!(i >= r);
                    (i - r, mo, co)
                })
                .collect(),
        })
        .collect();
    let cols = minimalize_columns(&ring, bottom)
        .into_iter()
        .map(|g| g.to_vector(&ring, c))
        .collect();
    PolyMatrix::from_columns(ring, c, cols).expect("columns have uniform length")
}

/// Replace the rows of `M` by a reduced basis of the module they generate
/// together with `J * S^cols`, entries in normal form mod `J`, rows that
/// vanish mod `J` dropped. A vector is orthogonal to every row exactly
/// when it is orthogonal to that module, so the kernel over `S/J` is
/// unchanged; the payoff is that the row count afterwards reflects the
/// constraint module itself, not how redundantly it was handed in.
fn canonical_constraint_rows<F: FieldScalar>(
    m: &PolyMatrix<F>,
    j: &crate::groebner::Ideal<F>,
) -> Vec<Vec<Polynomial<F>>> {
    let ring = m.ring().clone();
    let c = m.ncols();
    let mut gens = Vec::new();
    for i in 0..m.nrows() {
        let row: Vec<Polynomial<F>> = (0..c).map(|k| m.get(i, k).clone()).collect();
        gens.push(ModPoly::from_vector(&ring, &row));
    }
    for g in j.gens() {
        for k in 0..c {
            let mut row = vec![ring.zero(); c];
            row[k] = g.clone();
            gens.push(ModPoly::from_vector(&ring, &row));
        }
    }
    let basis = minimalize_columns(&ring, mod_buchberger(&ring, gens));
    let jgb = j.groebner_basis();
    let mut rows: Vec<Vec<Polynomial<F>>> = Vec::new();
    for b in basis {
        let reduced: Vec<Polynomial<F>> = b
            .to_vector(&ring, c)
            .iter()
            .map(|p| normal_form(p, jgb))
            .collect();
        if reduced.iter().all(|p| p.is_zero()) {
            continue;
        }
        if !rows.contains(&reduced) {
            rows.push(reduced);
        }
    }
    rows
}

/// Columns generating the kernel of the map `R^cols -> R^rows` given by
/// `M` over `R = S/J`: canonicalize the constraint rows, adjoin the
/// columns `g e_i` for each generator `g` of `J`, take syzygies over `S`,
/// project to the first `cols` coordinates, and reduce mod `J`. Zero and
/// duplicate columns are dropped.
pub fn kernel_over_quotient<F: FieldScalar>(
    m: &PolyMatrix<F>,
    j: &crate::groebner::Ideal<F>,
) -> Result<PolyMatrix<F>> {
    if j.ring() != m.ring() {
        return Err(Error::RingMismatch);
    }
    let ring = m.ring().clone();
    let c = m.ncols();
    let rows = canonical_constraint_rows(m, j);
    let r = rows.len();
    let jgens = j.gens();
    let mut aug_cols: Vec<Vec<Polynomial<F>>> = Vec::new();
    for jj in 0..c {
        aug_cols.push((0..r).map(|i| rows[i][jj].clone()).collect());
    }
    for g in jgens {
        for i in 0..r {
            let mut col = vec![ring.zero(); r];
            col[i] = g.clone();
            aug_cols.push(col);
        }
    }
    let aug = PolyMatrix::from_columns(ring.clone(), r, aug_cols)?;
    let syz = syzygies(&aug);
    let gb = j.groebner_basis();
    let mut seen: Vec<Vec<Polynomial<F>>> = Vec::new();
    for col_idx in 0..syz.ncols() {
        let projected: Vec<Polynomial<F>> = (0..c)
            .map(|i| normal_form(syz.get(i, col_idx), gb))
            .collect();
        if projected.iter().all(|p| p.is_zero()) {
            continue;
        }
        if seen.contains(&projected) {
            continue;
        }
        seen.push(projected);
    }
    PolyMatrix::from_columns(ring, c, seen)
}

/// A finitely presented module over a quotient ring: the cokernel of
/// `presentation : R^cols -> R^gens`. Entries are stored in normal form
/// mod the defining ideal.
#[derive(Debug, Clone)]
pub struct PresentedModule<F: FieldScalar> {
    ring: QuotientRing<F>,
    gens: usize,
    presentation: PolyMatrix<F>,
}

impl<F: FieldScalar> PresentedModule<F> {
    pub fn new(ring: QuotientRing<F>, presentation: PolyMatrix<F>) -> Result<Self> {
        if presentation.ring() != ring.ambient() {
            return Err(Error::RingMismatch);
        }
        let reduced = presentation.map_entries(|e| ring.reduce(e));
        Ok(PresentedModule {
            gens: reduced.nrows(),
            ring,
            presentation: reduced,
        })
    }

    /// The free module `R^n` (empty presentation).
    pub fn free(ring: QuotientRing<F>, n: usize) -> Self {
        let presentation =
            PolyMatrix::new(ring.ambient().clone(), n, 0, Vec::new()).expect("empty matrix");
        PresentedModule {
            ring,
            gens: n,
            presentation,
        }
    }

    pub fn ring(&self) -> &QuotientRing<F> {
        &self.ring
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn presentation(&self) -> &PolyMatrix<F> {
        &self.presentation
    }
}

/// Present the ideal generated by `gens` as an `R`-module: generators map
/// to the free basis of `R^m`, and the presentation columns generate their
/// syzygies over `R`. Generators that vanish mod `J` are dropped; if all
/// vanish the zero ideal has no presentation and an error is returned.
pub fn presentation_of_ideal<F: FieldScalar>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F>],
) -> Result<PresentedModule<F>> {
    let ambient = ring.ambient().clone();
    let reduced: Vec<Polynomial<F>> = gens
        .iter()
        .map(|g| ring.reduce(g))
        .filter(|g| !g.is_zero())
        .collect();
    if reduced.is_empty() {
        return Err(Error::ZeroPresentation);
    }
    let row = PolyMatrix::new(ambient.clone(), 1, reduced.len(), reduced)?;
    let kernel = kernel_over_quotient(&row, ring.defining())?;
    PresentedModule::new(ring.clone(), kernel)
}

//! Quotient rings `R = S/J`, ideals of `R`, annihilators, standard
//! monomials, Artinian-local detection, and socles.
//!
//! Elements of `R` are represented by normal forms mod `J`. An ideal of
//! `R` is canonicalized by the reduced Groebner basis of its lift
//! (generators plus `J`) in the ambient ring, which makes ideal equality a
//! plain sequence comparison.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::oracle::FiniteAlgebra;
use crate::poly::{PolyRing, Polynomial};
use crate::scalar::FieldScalar;

/// Guard against enumerating astronomically large monomial boxes; desk
/// scale stays far below this.
const MAX_BASIS_SIZE: u128 = 1 << 22;

/// The monomials of the ambient ring surviving in a quotient basis, or the
/// statement that infinitely many do.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite,
}

impl StandardMonomials {
    pub fn finite(&self) -> Option<&[Monomial]> {
        match self {
            StandardMonomials::Finite(m) => Some(m),
            StandardMonomials::Infinite => None,
        }
    }
}

#[derive(Debug)]
struct QuotientInner<F: FieldScalar> {
    ambient: PolyRing<F>,
    defining: Ideal<F>,
    std_monos: OnceLock<Result<StandardMonomials>>,
    algebra: OnceLock<Result<FiniteAlgebra<F>>>,
}

/// A quotient ring `R = S/J` with `J` a proper ideal (`J = (0)` allowed,
/// giving the polynomial ring itself). Cheap to clone; derived data
/// (standard monomials, the finite-algebra tables) is memoized and shared.
#[derive(Debug, Clone)]
pub struct QuotientRing<F: FieldScalar> {
    inner: Arc<QuotientInner<F>>,
}

impl<F: FieldScalar> QuotientRing<F> {
    pub fn new(ambient: PolyRing<F>, defining: Ideal<F>) -> Result<Self> {
        if defining.ring() != &ambient {
            return Err(Error::RingMismatch);
        }
        if defining.is_unit() {
            return Err(Error::UnitQuotient);
        }
        Ok(QuotientRing {
            inner: Arc::new(QuotientInner {
                ambient,
                defining,
                std_monos: OnceLock::new(),
                algebra: OnceLock::new(),
            }),
        })
    }

    pub fn ambient(&self) -> &PolyRing<F> {
        &self.inner.ambient
    }

    /// The defining ideal `J`.
    pub fn defining(&self) -> &Ideal<F> {
        &self.inner.defining
    }

    /// Normal form mod `J`: the canonical representative of an element.
    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        self.inner.defining.normal_form(p)
    }

    /// The maximal ideal generated by all variable residues.
    pub fn maximal_ideal(&self) -> RIdeal<F> {
        let vars: Vec<Polynomial<F>> = (0..self.inner.ambient.nvars())
            .map(|i| self.inner.ambient.var(i))
            .collect();
        RIdeal::new(self.clone(), vars)
    }

    /// Monomials not divisible by any leading monomial of `J`'s reduced
    /// basis, ascending in the ring's order. Finite exactly when every
    /// variable has a pure power among those leading monomials.
    pub fn standard_monomials(&self) -> Result<&StandardMonomials> {
        self.inner
            .std_monos
            .get_or_init(|| self.compute_standard_monomials())
            .as_ref()
            .map_err(|e| e.clone())
    }

    fn compute_standard_monomials(&self) -> Result<StandardMonomials> {
        let ring = &self.inner.ambient;
        let n = ring.nvars();
        let lms: Vec<&Monomial> = self
            .inner
            .defining
            .groebner_basis()
            .iter()
            .map(|g| g.leading_monomial().expect("basis elements are nonzero"))
            .collect();
        // bound for each variable: the least pure power x_i^d among the lms
        let mut bounds = vec![0u32; n];
        for i in 0..n {
            let mut best: Option<u32> = None;
            for lm in &lms {
                let e = lm.exps();
                if e.iter().enumerate().all(|(j, &v)| j == i || v == 0) && e[i] > 0 {
                    best = Some(best.map_or(e[i], |b: u32| b.min(e[i])));
                }
            }
            match best {
                Some(d) => bounds[i] = d,
                None => return Ok(StandardMonomials::Infinite),
            }
        }
        let size: u128 = bounds.iter().map(|&d| d as u128).product();
        if size > MAX_BASIS_SIZE {
            return Err(Error::Internal(
                "standard monomial basis exceeds the supported size".into(),
            ));
        }
        let mut monos = Vec::new();
        let mut exps = vec![0u32; n];
        loop {
            let m = Monomial::new(exps.clone());
            if !lms.iter().any(|lm| lm.divides(&m)) {
                monos.push(m);
            }
            // odometer over the box
            let mut i = 0;
            loop {
                if i == n {
                    let order = ring.order();
                    monos.sort_by(|a, b| order.cmp(a, b));
                    return Ok(StandardMonomials::Finite(monos));
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// The k-dimension of `R`, or `None` when infinite.
    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.standard_monomials()?.finite().map(|m| m.len()))
    }

    /// True iff `R` is a finite-dimensional algebra in which every
    /// variable residue is nilpotent; that makes the variable ideal the
    /// unique maximal ideal, so `R` is Artinian local.
    pub fn is_artinian_local(&self) -> Result<bool> {
        let d = match self.standard_monomials()?.finite() {
            Some(m) => m.len() as u32,
            None => return Ok(false),
        };
        let ring = &self.inner.ambient;
        // nilpotency index is at most the length D, so x_i^D ∈ J decides
        for i in 0..ring.nvars() {
            let power = ring.monomial_poly(
                Monomial::variable(i, ring.nvars()).pow(d),
                F::one(),
            );
            if !self.inner.defining.contains(&power) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The multiplication-table view of `R`, built on first use.
    /// Requires finite dimension.
    pub fn finite_algebra(&self) -> Result<&FiniteAlgebra<F>> {
        self.inner
            .algebra
            .get_or_init(|| FiniteAlgebra::build(self))
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// The socle `Ann(m)` together with its k-dimension, the number of
    /// independent elements killed by every variable. Dimension comes from
    /// the linear-algebra side as a cross-check on the colon computation.
    pub fn socle(&self) -> Result<(RIdeal<F>, usize)> {
        if !self.is_artinian_local()? {
            return Err(Error::NotArtinianLocal);
        }
        let ideal = self.annihilator(&self.maximal_ideal());
        let algebra = self.finite_algebra()?;
        let vars: Vec<Polynomial<F>> = (0..self.inner.ambient.nvars())
            .map(|i| self.inner.ambient.var(i))
            .collect();
        let dim = algebra.ann_linear(&vars).dim();
        Ok((ideal, dim))
    }

    /// `Ann_R(I) = {r : r I = 0}`, via the ambient colon `(J : lift I)`.
    pub fn annihilator(&self, i: &RIdeal<F>) -> RIdeal<F> {
        if i.is_zero() {
            return RIdeal::unit(self.clone());
        }
        let colon = self
            .inner
            .defining
            .colon(i.lifted())
            .expect("lift of a nonzero ideal is nonzero");
        RIdeal::new(self.clone(), colon.groebner_basis().to_vec())
    }

    pub fn double_annihilator(&self, i: &RIdeal<F>) -> RIdeal<F> {
        self.annihilator(&self.annihilator(i))
    }

    pub fn equals(&self, other: &QuotientRing<F>) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.ambient == other.inner.ambient
                && self.inner.defining.equals(&other.inner.defining))
    }
}

impl<F: FieldScalar> PartialEq for QuotientRing<F> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<F: FieldScalar> Eq for QuotientRing<F> {}

impl<F: FieldScalar> fmt::Display for QuotientRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.ambient)?;
        if !self.inner.defining.is_zero() {
            write!(f, "/{}", self.inner.defining)?;
        }
        Ok(())
    }
}

/// An ideal of a quotient ring. The canonical form is the reduced
/// Groebner basis of the lifted ideal (generators + `J`) in the ambient
/// ring; printing drops the elements that are literally `J`'s own basis
/// polynomials, since they are zero in `R`.
#[derive(Debug, Clone)]
pub struct RIdeal<F: FieldScalar> {
    ring: QuotientRing<F>,
    gens: Vec<Polynomial<F>>,
    lifted: Ideal<F>,
}

impl<F: FieldScalar> RIdeal<F> {
    pub fn new(ring: QuotientRing<F>, gens: Vec<Polynomial<F>>) -> Self {
        let reduced: Vec<Polynomial<F>> = gens
            .iter()
            .map(|g| ring.reduce(g))
            .filter(|g| !g.is_zero())
            .collect();
        let mut lift = reduced.clone();
        lift.extend(ring.defining().gens().iter().cloned());
        let lifted = Ideal::new(ring.ambient().clone(), lift);
        RIdeal {
            ring,
            gens: reduced,
            lifted,
        }
    }

    pub fn parse(
        ring: &QuotientRing<F>,
        gens: &[&str],
    ) -> std::result::Result<Self, crate::parse::ParseError> {
        let polys = gens
            .iter()
            .map(|s| ring.ambient().parse(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(RIdeal::new(ring.clone(), polys))
    }

    pub fn zero(ring: QuotientRing<F>) -> Self {
        RIdeal::new(ring, Vec::new())
    }

    pub fn unit(ring: QuotientRing<F>) -> Self {
        let one = ring.ambient().one();
        RIdeal::new(ring, vec![one])
    }

    pub fn ring(&self) -> &QuotientRing<F> {
        &self.ring
    }

    /// The given generators, reduced mod `J`, zeros dropped.
    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    /// The lifted ideal (generators + `J`) in the ambient ring.
    pub fn lifted(&self) -> &Ideal<F> {
        &self.lifted
    }

    pub fn is_zero(&self) -> bool {
        self.lifted.groebner_basis() == self.ring.defining().groebner_basis()
    }

    pub fn is_unit(&self) -> bool {
        self.lifted.is_unit()
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.lifted.contains(f)
    }

    /// Equality as ideals of `R`: identical lifted reduced bases.
    pub fn equals(&self, other: &RIdeal<F>) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.lifted.groebner_basis() == other.lifted.groebner_basis())
    }

    /// Containment as ideals of `R`.
    pub fn contains_ideal(&self, other: &RIdeal<F>) -> Result<bool> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(other
            .lifted
            .groebner_basis()
            .iter()
            .all(|g| self.lifted.contains(g)))
    }

    /// The canonical printed generators: the lifted reduced basis minus
    /// the polynomials that are literally `J`'s basis elements, ordered
    /// by leading monomial degree with earlier variables first.
    pub fn print_gens(&self) -> Vec<Polynomial<F>> {
        let jgb = self.ring.defining().groebner_basis();
        let mut gens: Vec<Polynomial<F>> = self
            .lifted
            .groebner_basis()
            .iter()
            .filter(|g| !jgb.contains(g))
            .cloned()
            .collect();
        gens.sort_by(crate::poly::cmp_for_display);
        gens
    }

    /// The sum `I + K` inside `R`.
    pub fn sum(&self, other: &RIdeal<F>) -> Result<RIdeal<F>> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(RIdeal::new(self.ring.clone(), gens))
    }
}

impl<F: FieldScalar> fmt::Display for RIdeal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.print_gens();
        if gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ")")
    }
}

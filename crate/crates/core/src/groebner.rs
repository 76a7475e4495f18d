//! Buchberger's algorithm, normal forms, and the derived ideal calculus:
//! membership, elimination, intersection, and colon ideals.
//!
//! Reduced Groebner bases are the canonical form for ideals: monic, no term
//! of any element divisible by the leading monomial of another, sorted
//! ascending by leading monomial. Every routine here iterates only over
//! explicitly ordered structures, so results are bit-for-bit reproducible.

use std::collections::BTreeSet;
use std::sync::OnceLock;



use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{cmp_by_leading_monomial, PolyRing, Polynomial};
use crate::scalar::FieldScalar;

/// Remainder of `f` on division by `divisors`, tried in sequence order.
/// No term of the result is divisible by any divisor's leading monomial,
/// and `f - result` lies in the ideal the divisors generate.
pub fn normal_form<F: FieldScalar>(
    f: &Polynomial<F>,
    divisors: &[Polynomial<F>],
) -> Polynomial<F> {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut remainder: Vec<(Monomial, F)> = Vec::new();
    'strip: while let Some(((lm, lc), tail)) = p.split_leading() {
        for g in divisors {
            let (glm, glc) = match g.leading() {
                Some(t) => t,
                None => continue,
            };
            if glm.divides(&lm) {
                let q = glm.div_into(&lm).expect("checked divisibility");
                let c = lc.div_exact(glc);
                // p - (c q) g; the leading terms cancel by construction
                p = tail.sub(&g.split_leading().expect("nonzero divisor").1.mul_term(&q, &c));
                continue 'strip;
            }
        }
        remainder.push((lm, lc));
        p = tail;
    }
    ring.from_sorted_terms(remainder)
}

fn s_polynomial<F: FieldScalar>(f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (fm, fc) = f.leading().expect("nonzero");
    let (gm, gc) = g.leading().expect("nonzero");
    let l = fm.lcm(gm);
    let uf = fm.div_into(&l).expect("lcm divisible");
    let ug = gm.div_into(&l).expect("lcm divisible");
    let a = f.mul_term(&uf, &fc.inv().expect("nonzero leading coefficient"));
    let b = g.mul_term(&ug, &gc.inv().expect("nonzero leading coefficient"));
    a.sub(&b)
}

/// Reduced Groebner basis of the ideal generated by `gens`, under the
/// ring's monomial order. Zero generators are ignored; the zero ideal
/// yields an empty basis.
///
/// Pair selection follows the normal strategy (smallest lcm first), with
/// the coprime-lead and chain criteria discarding predictably redundant
/// pairs.
pub fn buchberger<F: FieldScalar>(gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let mut basis: Vec<Polynomial<F>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.monic())
        .collect();
    if basis.is_empty() {
        return Vec::new();
    }
    for w in basis.windows(2) {
        assert!(w[0].ring() == w[1].ring(), "generators from different rings");
    }

    // Pending pairs keyed for deterministic normal-strategy selection:
    // (lcm degree, lcm exponents, i, j). A parallel index set supports the
    // chain criterion's membership tests.
    let mut queue: BTreeSet<(u64, Vec<u32>, usize, usize)> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push_pairs = |queue: &mut BTreeSet<(u64, Vec<u32>, usize, usize)>,
                          pending: &mut BTreeSet<(usize, usize)>,
                          basis: &[Polynomial<F>],
                          j: usize| {
        let lmj = basis[j].leading_monomial().expect("nonzero basis element");
        for i in 0..j {
            let lmi = basis[i].leading_monomial().expect("nonzero basis element");
            let l = lmi.lcm(lmj);
            queue.insert((l.total_degree(), l.exps().to_vec(), i, j));
            pending.insert((i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &mut pending, &basis, j);
    }

    while let Some(entry) = queue.iter().next().cloned() {
        queue.remove(&entry);
        let (_, lcm_exps, i, j) = entry;
        pending.remove(&(i, j));
        let lcm = Monomial::new(lcm_exps);
        let lmi = basis[i].leading_monomial().expect("nonzero");
        let lmj = basis[j].leading_monomial().expect("nonzero");
        // coprime leads: S-polynomial reduces to zero
        if lmi.mul(lmj) == lcm {
            continue;
        }
        // chain criterion: an element k dividing the lcm whose pairs with
        // both i and j are already settled makes this pair redundant
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k]
                    .leading_monomial()
                    .expect("nonzero")
                    .divides(&lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
            push_pairs(&mut queue, &mut pending, &basis, basis.len() - 1);
        }
    }

    reduce_basis(basis)
}

/// Turn a Groebner basis into the reduced one: minimal leading monomials,
/// fully reduced tails, monic, ascending by leading monomial.
fn reduce_basis<F: FieldScalar>(mut basis: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    basis.sort_by(cmp_by_leading_monomial);
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().expect("nonzero basis element");
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().expect("nonzero").divides(lm))
        {
            minimal.push(g);
        }
    }
    let snapshot = minimal.clone();
    let mut reduced: Vec<Polynomial<F>> = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.into_iter().enumerate() {
        let others: Vec<Polynomial<F>> = snapshot
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        reduced.push(normal_form(&g, &others).monic());
    }
    reduced.sort_by(cmp_by_leading_monomial);
    reduced
}

/// An ideal of a polynomial ring, canonicalized on demand by its reduced
/// Groebner basis. The basis is memoized: computed at most once, then
/// shared by all clones made after that point.
#[derive(Debug, Clone)]
pub struct Ideal<F: FieldScalar> {
    ring: PolyRing<F>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: FieldScalar> Ideal<F> {
    /// The ideal generated by `gens`; zero generators are dropped.
    pub fn new(ring: PolyRing<F>, gens: Vec<Polynomial<F>>) -> Self {
        for g in &gens {
            assert!(g.ring() == &ring, "generator from a different ring");
        }
        Ideal {
            ring,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        }
    }

    pub fn zero(ring: PolyRing<F>) -> Self {
        Ideal::new(ring, Vec::new())
    }

    pub fn principal(f: Polynomial<F>) -> Self {
        Ideal::new(f.ring().clone(), vec![f])
    }

    /// Parse comma-free generator strings in `ring`'s variables.
    pub fn parse(ring: &PolyRing<F>, gens: &[&str]) -> std::result::Result<Self, crate::parse::ParseError> {
        let polys = gens
            .iter()
            .map(|s| ring.parse(s))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Ideal::new(ring.clone(), polys))
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    /// The reduced Groebner basis, computed on first use.
    pub fn groebner_basis(&self) -> &[Polynomial<F>] {
        self.gb.get_or_init(|| buchberger(&self.gens))
    }

    pub fn is_zero(&self) -> bool {
        self.groebner_basis().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        let gb = self.groebner_basis();
        gb.len() == 1 && gb[0].is_one()
    }

    /// Membership test: true iff the normal form of `f` vanishes.
    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        assert!(f.ring() == &self.ring, "element from a different ring");
        normal_form(f, self.groebner_basis()).is_zero()
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        assert!(f.ring() == &self.ring, "element from a different ring");
        normal_form(f, self.groebner_basis())
    }

    /// Equality as ideals: identical reduced Groebner bases.
    pub fn equals(&self, other: &Ideal<F>) -> bool {
        self.ring == other.ring && self.groebner_basis() == other.groebner_basis()
    }

    /// The contraction `I ∩ k[x_{b+1}, ..., x_n]`, as an ideal of the ring
    /// on the last `n - b` variables.
    pub fn eliminate(&self, b: usize) -> Result<Ideal<F>> {
        let n = self.ring.nvars();
        if b >= n {
            return Err(Error::BadEliminationBlock { block: b, nvars: n });
        }
        if b == 0 {
            return Ok(self.clone());
        }
        let elim_ring = self
            .ring
            .with_order(crate::monomial::MonomialOrder::Elimination { block: b });
        let lifted: Vec<Polynomial<F>> = self
            .gens
            .iter()
            .map(|g| elim_ring.from_terms(g.terms().to_vec()))
            .collect();
        let gb = buchberger(&lifted);
        let target = self.ring.drop_first_vars(b, self.ring.order());
        let kept: Vec<Polynomial<F>> = gb
            .iter()
            .filter(|g| {
                g.terms().iter().all(|(m, _)| m.free_of_first(b))
            })
            .map(|g| g.transfer(&target, b))
            .collect();
        Ok(Ideal::new(target, kept))
    }

    /// Intersection via the tag-variable method: eliminate `t` from
    /// `t I + (1 - t) K`.
    pub fn intersection(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let tagged = self.ring.with_tag_variable();
        let t = tagged.var(0);
        let one_minus_t = tagged.one().sub(&t);
        let mut gens: Vec<Polynomial<F>> = Vec::new();
        for g in &self.gens {
            gens.push(t.mul(&g.prepend_vars(&tagged, 1)));
        }
        for g in &other.gens {
            gens.push(one_minus_t.mul(&g.prepend_vars(&tagged, 1)));
        }
        let gb = buchberger(&gens);
        let kept: Vec<Polynomial<F>> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.free_of_first(1)))
            .map(|g| g.transfer(&self.ring, 1))
            .collect();
        Ok(Ideal::new(self.ring.clone(), kept))
    }

    /// The colon ideal `(I : K) = {f : f K ⊆ I}`, computed generator-wise:
    /// `(I : g) = (I ∩ (g)) / g`, intersected over the generators of `K`.
    pub fn colon(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if other.gens.is_empty() {
            return Err(Error::ColonByZeroIdeal);
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &other.gens {
            let meet = self.intersection(&Ideal::principal(g.clone()))?;
            let quotient: Vec<Polynomial<F>> = meet
                .groebner_basis()
                .iter()
                .map(|h| {
                    exact_quotient(h, g)
                        .expect("element of I ∩ (g) is a multiple of g")
                })
                .collect();
            let colon_g = Ideal::new(self.ring.clone(), quotient);
            acc = Some(match acc {
                None => colon_g,
                Some(prev) => prev.intersection(&colon_g)?,
            });
        }
        Ok(acc.expect("at least one generator"))
    }
}

impl<F: FieldScalar> PartialEq for Ideal<F> {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl<F: FieldScalar> Eq for Ideal<F> {}

impl<F: FieldScalar> std::fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut gb = self.groebner_basis().to_vec();
        if gb.is_empty() {
            return write!(f, "(0)");
        }
        gb.sort_by(crate::poly::cmp_for_display);
        write!(f, "(")?;
        for (i, g) in gb.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// The quotient `p / g` when `g` divides `p` exactly; `None` otherwise.
pub fn exact_quotient<F: FieldScalar>(
    p: &Polynomial<F>,
    g: &Polynomial<F>,
) -> Option<Polynomial<F>> {
    assert!(p.ring() == g.ring(), "polynomials from different rings");
    let (glm, glc) = g.leading()?;
    let glm = glm.clone();
    let glc = glc.clone();
    let mut rest = p.clone();
    let mut quotient: Vec<(Monomial, F)> = Vec::new();
    while let Some((lm, lc)) = rest.leading() {
        let q = glm.div_into(lm)?;
        let c = lc.div_exact(&glc);
        rest = rest.sub(&g.mul_term(&q, &c));
        quotient.push((q, c));
    }
    Some(p.ring().from_terms(quotient))
}

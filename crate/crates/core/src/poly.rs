//! Polynomial rings and sparse multivariate polynomials.
//!
//! A [`PolyRing`] is an immutable description (field, variable names,
//! monomial order) shared by reference. A [`Polynomial`] is a list of
//! `(monomial, coefficient)` terms kept in strictly descending monomial
//! order with no zero coefficients, so equality and hashing are structural.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;



use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{FieldDescriptor, FieldScalar};

#[derive(Debug)]
struct RingData {
    field: FieldDescriptor,
    vars: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial ring `k[x_1, ..., x_n]` with a fixed monomial order.
///
/// Cheap to clone (shared interior). Two rings are equal when field,
/// variable names and order all agree.
#[derive(Debug)]
pub struct PolyRing<F: FieldScalar> {
    data: Arc<RingData>,
    _scalar: PhantomData<fn() -> F>,
}

impl<F: FieldScalar> Clone for PolyRing<F> {
    fn clone(&self) -> Self {
        PolyRing {
            data: Arc::clone(&self.data),
            _scalar: PhantomData,
        }
    }
}

impl<F: FieldScalar> PartialEq for PolyRing<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.field == other.data.field
                && self.data.vars == other.data.vars
                && self.data.order == other.data.order)
    }
}

impl<F: FieldScalar> Eq for PolyRing<F> {}

fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: FieldScalar> PolyRing<F> {
    pub fn new(field: FieldDescriptor, vars: &[&str], order: MonomialOrder) -> Result<Self> {
        if !F::accepts(&field) {
            return Err(Error::FieldMismatch(field.to_string()));
        }
        if vars.is_empty() {
            return Err(Error::NoVariables);
        }
        let mut seen: Vec<&str> = Vec::new();
        for v in vars {
            if !valid_var_name(v) {
                return Err(Error::DuplicateVariable(format!("invalid name `{v}`")));
            }
            if seen.contains(v) {
                return Err(Error::DuplicateVariable((*v).to_string()));
            }
            seen.push(v);
        }
        Ok(Self::new_unchecked(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            order,
        ))
    }

    /// Internal constructor that skips name validation, used for derived
    /// rings with reserved variable names (elimination tags).
    pub(crate) fn new_unchecked(
        field: FieldDescriptor,
        vars: Vec<String>,
        order: MonomialOrder,
    ) -> Self {
        PolyRing {
            data: Arc::new(RingData { field, vars, order }),
            _scalar: PhantomData,
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.data.field
    }

    pub fn vars(&self) -> &[String] {
        &self.data.vars
    }

    pub fn nvars(&self) -> usize {
        self.data.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.data.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.data.vars.iter().position(|v| v == name)
    }

    /// The same ring under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self::new_unchecked(self.data.field.clone(), self.data.vars.clone(), order)
    }

    /// Extend by a fresh tag variable `@t` in front, ordered to eliminate it.
    /// `@t` is not a legal source-level identifier, so it cannot collide.
    pub(crate) fn with_tag_variable(&self) -> Self {
        let mut vars = Vec::with_capacity(self.nvars() + 1);
        vars.push("@t".to_string());
        vars.extend(self.data.vars.iter().cloned());
        Self::new_unchecked(
            self.data.field.clone(),
            vars,
            MonomialOrder::Elimination { block: 1 },
        )
    }

    /// The ring on the last `n - k` variables, used after eliminating the
    /// first `k`.
    pub(crate) fn drop_first_vars(&self, k: usize, order: MonomialOrder) -> Self {
        Self::new_unchecked(
            self.data.field.clone(),
            self.data.vars[k..].to_vec(),
            order,
        )
    }

    pub fn zero(&self) -> Polynomial<F> {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial<F> {
        self.constant(F::one())
    }

    pub fn constant(&self, c: F) -> Polynomial<F> {
        let c = c.bind(&self.data.field);
        if c.is_zero() {
            return self.zero();
        }
        Polynomial {
            ring: self.clone(),
            terms: vec![(Monomial::one(self.nvars()), c)],
        }
    }

    pub fn integer(&self, n: i64) -> Polynomial<F> {
        self.constant(F::from_integer(n, &self.data.field))
    }

    pub fn var(&self, i: usize) -> Polynomial<F> {
        assert!(i < self.nvars(), "variable index out of range");
        Polynomial {
            ring: self.clone(),
            terms: vec![(Monomial::variable(i, self.nvars()), F::one().bind(&self.data.field))],
        }
    }

    pub fn var_by_name(&self, name: &str) -> Option<Polynomial<F>> {
        self.var_index(name).map(|i| self.var(i))
    }

    pub fn monomial_poly(&self, m: Monomial, c: F) -> Polynomial<F> {
        assert_eq!(m.nvars(), self.nvars(), "monomial arity mismatch");
        let c = c.bind(&self.data.field);
        if c.is_zero() {
            return self.zero();
        }
        Polynomial {
            ring: self.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Build a polynomial from unordered, possibly repeated terms.
    pub fn from_terms(&self, terms: Vec<(Monomial, F)>) -> Polynomial<F> {
        let mut map: BTreeMap<Monomial, F> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), self.nvars(), "monomial arity mismatch");
            let c = c.bind(&self.data.field);
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        self.from_map(map)
    }

    /// Build from terms already strictly descending in this ring's order.
    pub(crate) fn from_sorted_terms(&self, terms: Vec<(Monomial, F)>) -> Polynomial<F> {
        debug_assert!(terms
            .windows(2)
            .all(|w| self.data.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub(crate) fn from_map(&self, map: BTreeMap<Monomial, F>) -> Polynomial<F> {
        let order = self.data.order;
        let mut terms: Vec<(Monomial, F)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    /// Compare monomials under this ring's order.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.data.order.cmp(a, b)
    }
}

impl<F: FieldScalar> fmt::Display for PolyRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.data.field, self.data.vars.join(","))
    }
}

/// A sparse multivariate polynomial in canonical form: terms strictly
/// descending in the ring's monomial order, all coefficients nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<F: FieldScalar> {
    ring: PolyRing<F>,
    terms: Vec<(Monomial, F)>,
}

impl<F: FieldScalar> Polynomial<F> {
    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Largest total degree over the support; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Option<&F> {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c)
    }

    /// Split off the leading term, leaving the (still canonical) tail.
    pub(crate) fn split_leading(&self) -> Option<((Monomial, F), Polynomial<F>)> {
        let (head, tail) = self.terms.split_first()?;
        Some((
            head.clone(),
            Polynomial {
                ring: self.ring.clone(),
                terms: tail.to_vec(),
            },
        ))
    }

    fn assert_same_ring(&self, other: &Self) {
        assert!(
            self.ring == other.ring,
            "polynomials from different rings: {} vs {}",
            self.ring,
            other.ring
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        let order = self.ring.order();
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => terms.push(a.next().unwrap().clone()),
                (None, Some(_)) => terms.push(b.next().unwrap().clone()),
                (Some((ma, _)), Some((mb, _))) => match order.cmp(ma, mb) {
                    Ordering::Greater => terms.push(a.next().unwrap().clone()),
                    Ordering::Less => terms.push(b.next().unwrap().clone()),
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let sum = ca.clone() + cb.clone();
                        if !sum.is_zero() {
                            terms.push((m.clone(), sum));
                        }
                    }
                },
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        let c = c.clone().bind(&self.ring.data.field);
        if c.is_zero() {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiply by the single term `c * m`. Preserves term order, so no
    /// re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return self.ring.zero();
        }
        let c = c.clone().bind(&self.ring.data.field);
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(m), k.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_ring(other);
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let mut map: BTreeMap<Monomial, F> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let prod = ca.clone() * cb.clone();
                match map.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().clone() + prod;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        self.ring.from_map(map)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scale so the leading coefficient is 1. No-op on zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Reinterpret in `target`, mapping variables by position with an
    /// index offset. Used for elimination-ring transfers; the caller
    /// guarantees every term fits the target arity.
    pub(crate) fn transfer(&self, target: &PolyRing<F>, drop_first: usize) -> Polynomial<F> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert!(m.free_of_first(drop_first));
                (
                    Monomial::new(m.exps()[drop_first..].to_vec()),
                    c.clone(),
                )
            })
            .collect();
        target.from_terms(terms)
    }

    /// Reinterpret in `target`, which has `extra` variables prepended.
    pub(crate) fn prepend_vars(&self, target: &PolyRing<F>, extra: usize) -> Polynomial<F> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u32; extra];
                exps.extend_from_slice(m.exps());
                (Monomial::new(exps), c.clone())
            })
            .collect();
        target.from_terms(terms)
    }
}

impl<F: FieldScalar> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        Polynomial::add(self, rhs)
    }
}

impl<F: FieldScalar> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        Polynomial::sub(self, rhs)
    }
}

impl<F: FieldScalar> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        Polynomial::mul(self, rhs)
    }
}

impl<F: FieldScalar> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

fn monomial_string(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 1 {
            parts.push(vars[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", vars[i], e));
        }
    }
    parts.join("*")
}

impl<F: FieldScalar> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (negative, magnitude) = c.display_parts();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude == "1" {
                write!(f, "{}", monomial_string(m, vars))?;
            } else {
                write!(f, "{}*{}", magnitude, monomial_string(m, vars))?;
            }
        }
        Ok(())
    }
}

/// Sort polynomials ascending by leading monomial under their ring's
/// order, the canonical presentation for generator lists. Zero sorts first.
pub fn sort_by_leading_monomial<F: FieldScalar>(polys: &mut [Polynomial<F>]) {
    polys.sort_by(|a, b| cmp_by_leading_monomial(a, b));
}

pub fn cmp_by_leading_monomial<F: FieldScalar>(
    a: &Polynomial<F>,
    b: &Polynomial<F>,
) -> Ordering {
    match (a.leading_monomial(), b.leading_monomial()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(ma), Some(mb)) => a.ring().cmp_monomials(ma, mb),
    }
}

/// Display order for generator lists: ascending leading-monomial degree,
/// earlier variables first within a degree. Independent of the ring's
/// monomial order, so printed ideals read the same under any order.
pub fn cmp_for_display<F: FieldScalar>(a: &Polynomial<F>, b: &Polynomial<F>) -> Ordering {
    match (a.leading_monomial(), b.leading_monomial()) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(ma), Some(mb)) => ma
            .total_degree()
            .cmp(&mb.total_degree())
            .then_with(|| mb.exps().cmp(ma.exps())),
    }
}

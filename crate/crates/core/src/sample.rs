//! Seeded pseudorandom elements, ideals, and presented modules over an
//! Artinian quotient, used by the sampling-based Gorenstein test and the
//! randomized cross-checks. Everything is a pure function of the seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quotient::{QuotientRing, RIdeal};
use crate::scalar::{FieldDescriptor, FieldScalar};
use crate::syzygy::{PolyMatrix, PresentedModule};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero coefficient: uniform on {-3..3}\{0} over the rationals, on
/// the full nonzero field over a prime field.
pub fn random_coeff<F: FieldScalar>(field: &FieldDescriptor, rng: &mut ChaCha8Rng) -> F {
    match field {
        FieldDescriptor::Rationals => {
            let mut v = 0i64;
            while v == 0 {
                v = rng.gen_range(-3..=3);
            }
            F::from_integer(v, field)
        }
        FieldDescriptor::PrimeField(p) => {
            let v = rng.gen_range(1..*p) as i64;
            F::from_integer(v, field)
        }
    }
}

/// A random k-combination of the standard monomials excluding 1, each
/// included with probability 1/(1+deg). Units are excluded because a unit
/// generates the whole ring and checks nothing. Zero draws are retried a
/// bounded number of times and then accepted; over a ring with no
/// non-unit monomials the only non-unit element is zero anyway.
pub fn random_element<F: FieldScalar>(
    q: &QuotientRing<F>,
    rng: &mut ChaCha8Rng,
) -> Result<Polynomial<F>> {
    let basis = q
        .standard_monomials()?
        .finite()
        .ok_or(Error::InfiniteDimensional)?
        .to_vec();
    let field = q.ambient().field().clone();
    for _ in 0..64 {
        let mut terms = Vec::new();
        for m in &basis {
            let deg = m.total_degree();
            if deg == 0 {
                continue;
            }
            if rng.gen_range(0..=deg) == 0 {
                terms.push((m.clone(), random_coeff::<F>(&field, rng)));
            }
        }
        let p = q.ambient().from_terms(terms);
        if !p.is_zero() {
            return Ok(p);
        }
    }
    Ok(q.ambient().zero())
}

/// An ideal on one to three random generators.
pub fn random_ideal<F: FieldScalar>(
    q: &QuotientRing<F>,
    rng: &mut ChaCha8Rng,
) -> Result<RIdeal<F>> {
    let count = rng.gen_range(1..=3);
    let gens = (0..count)
        .map(|_| random_element(q, rng))
        .collect::<Result<Vec<_>>>()?;
    Ok(RIdeal::new(q.clone(), gens))
}

/// A module on one or two generators with up to two random relations;
/// entries may be zero.
pub fn random_presented_module<F: FieldScalar>(
    q: &QuotientRing<F>,
    rng: &mut ChaCha8Rng,
) -> Result<PresentedModule<F>> {
    let rows = rng.gen_range(1..=2);
    let cols = rng.gen_range(0..=2);
    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        if rng.gen_range(0..3) == 0 {
            entries.push(q.ambient().zero());
        } else {
            entries.push(random_element(q, rng)?);
        }
    }
    let matrix = PolyMatrix::new(q.ambient().clone(), rows, cols, entries)?;
    PresentedModule::new(q.clone(), matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Ideal;
    use crate::monomial::MonomialOrder;
    use crate::poly::PolyRing;
    use crate::scalar::{Fp, Rational};
    use num::Signed;
    use num_traits::Zero;

    fn quotient(vars: &[&str], gens: &[&str]) -> QuotientRing<Rational> {
        let ring =
            PolyRing::new(FieldDescriptor::Rationals, vars, MonomialOrder::DegRevLex).unwrap();
        let defining = Ideal::parse(&ring, gens).unwrap();
        QuotientRing::new(ring, defining).unwrap()
    }

    #[test]
    fn same_seed_reproduces_the_stream() {
        let q = quotient(&["x", "y"], &["x^3", "y^3"]);
        let a: Vec<String> = {
            let mut rng = seeded_rng(7);
            (0..5)
                .map(|_| random_element(&q, &mut rng).unwrap().to_string())
                .collect()
        };
        let b: Vec<String> = {
            let mut rng = seeded_rng(7);
            (0..5)
                .map(|_| random_element(&q, &mut rng).unwrap().to_string())
                .collect()
        };
        assert_eq!(a, b);
        let mut rng = seeded_rng(8);
        let c = random_element(&q, &mut rng).unwrap().to_string();
        assert!(a[0] != c || a[1] != random_element(&q, &mut rng).unwrap().to_string());
    }

    #[test]
    fn rational_draws_use_small_nonzero_coefficients_without_units() {
        let q = quotient(&["x", "y"], &["x^3", "y^3"]);
        let mut rng = seeded_rng(0);
        for _ in 0..50 {
            let p = random_element(&q, &mut rng).unwrap();
            for (m, c) in p.terms() {
                assert!(m.total_degree() >= 1, "unit monomial drawn");
                assert!(!c.is_zero());
                assert!(c.denom().abs() == 1.into());
                assert!(c.numer().abs() <= 3.into());
            }
        }
    }

    #[test]
    fn prime_field_draws_cover_nonzero_residues() {
        let ring =
            PolyRing::<Fp>::new(FieldDescriptor::prime_field(7).unwrap(), &["x"], MonomialOrder::DegRevLex)
                .unwrap();
        let defining = Ideal::parse(&ring, &["x^4"]).unwrap();
        let q = QuotientRing::new(ring, defining).unwrap();
        let mut rng = seeded_rng(3);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..200 {
            let p = random_element(&q, &mut rng).unwrap();
            for (_, c) in p.terms() {
                assert!(!c.is_zero());
                seen.insert(c.value());
            }
        }
        assert!(seen.len() >= 5, "draws should spread over the field");
    }

    #[test]
    fn trivial_ring_yields_zero() {
        let q = quotient(&["x"], &["x"]);
        let mut rng = seeded_rng(1);
        assert!(random_element(&q, &mut rng).unwrap().is_zero());
    }

    #[test]
    fn random_ideals_and_modules_are_well_formed() {
        let q = quotient(&["x", "y"], &["x^3", "y^3"]);
        let mut rng = seeded_rng(11);
        for _ in 0..10 {
            let i = random_ideal(&q, &mut rng).unwrap();
            assert!(i.gens().len() <= 3);
            let m = random_presented_module(&q, &mut rng).unwrap();
            assert!(m.gens() >= 1 && m.gens() <= 2);
            assert!(m.presentation().ncols() <= 2);
        }
    }
}

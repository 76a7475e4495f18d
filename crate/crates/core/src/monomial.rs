//! Monomials and monomial orders.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// An exponent vector. The length is fixed by the ambient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// The variable `x_i` as a monomial.
    pub fn variable(i: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e * k).collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, defined only when `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// True when the exponents of the first `block` variables are all zero.
    pub fn free_of_first(&self, block: usize) -> bool {
        self.exps[..block].iter().all(|&e| e == 0)
    }
}

/// A total order on monomials compatible with multiplication; 1 is minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Total degree first, ties broken by the reversed exponent vector
    /// (smaller exponent in the last differing position wins).
    DegRevLex,
    /// Exponents compared left to right.
    Lex,
    /// Block order eliminating the first `block` variables: compare the
    /// leading block degrevlex, then the remaining variables degrevlex.
    Elimination { block: usize },
}

impl MonomialOrder {
    /// Compare `a` and `b`. Internal callers guarantee equal lengths.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.exps.len(), b.exps.len());
        match *self {
            MonomialOrder::DegRevLex => degrevlex(&a.exps, &b.exps),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination { block } => degrevlex(&a.exps[..block], &b.exps[..block])
                .then_with(|| degrevlex(&a.exps[block..], &b.exps[block..])),
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        c => return c,
    }
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            // smaller exponent in the latest differing position wins
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

/// Compare two monomials under `order`, checking that the exponent vectors
/// have the same length.
pub fn compare_monomials(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if a.exps.len() != b.exps.len() {
        return Err(Error::ExponentLength(a.exps.len(), b.exps.len()));
    }
    Ok(order.cmp(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn lex_first_variable_wins() {
        // x vs y with x declared first
        let x = m(&[1, 0]);
        let y = m(&[0, 1]);
        assert_eq!(
            compare_monomials(&x, &y, MonomialOrder::Lex).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn degrevlex_tie_break() {
        // x^2 vs x*y: equal degree, smaller last exponent wins
        let x2 = m(&[2, 0]);
        let xy = m(&[1, 1]);
        assert_eq!(
            compare_monomials(&x2, &xy, MonomialOrder::DegRevLex).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn reflexive() {
        let a = m(&[3, 1, 2]);
        for order in [
            MonomialOrder::DegRevLex,
            MonomialOrder::Lex,
            MonomialOrder::Elimination { block: 1 },
        ] {
            assert_eq!(compare_monomials(&a, &a, order).unwrap(), Ordering::Equal);
        }
    }

    #[test]
    fn one_is_minimal() {
        let one = Monomial::one(2);
        for mono in [m(&[1, 0]), m(&[0, 1]), m(&[2, 3])] {
            for order in [
                MonomialOrder::DegRevLex,
                MonomialOrder::Lex,
                MonomialOrder::Elimination { block: 1 },
            ] {
                assert_eq!(order.cmp(&one, &mono), Ordering::Less);
            }
        }
    }

    #[test]
    fn elimination_blocks_dominate() {
        // any monomial containing t (var 0) beats any t-free monomial
        let t = m(&[1, 0, 0]);
        let big = m(&[0, 9, 9]);
        let ord = MonomialOrder::Elimination { block: 1 };
        assert_eq!(ord.cmp(&t, &big), Ordering::Greater);
    }

    #[test]
    fn length_mismatch_rejected() {
        let a = m(&[1]);
        let b = m(&[1, 0]);
        assert_eq!(
            compare_monomials(&a, &b, MonomialOrder::Lex),
            Err(Error::ExponentLength(1, 2))
        );
    }

    #[test]
    fn divisibility() {
        let xy = m(&[1, 1]);
        let x2y = m(&[2, 1]);
        assert!(xy.divides(&x2y));
        assert!(!x2y.divides(&xy));
        assert_eq!(xy.div_into(&x2y), Some(m(&[1, 0])));
        assert_eq!(x2y.div_into(&xy), None);
        assert_eq!(m(&[2, 0]).lcm(&m(&[1, 1])), m(&[2, 1]));
    }
}

use std::cmp::Ordering;
use std::sync::Arc;

use super::monomial::{exponents_of_degree, Monomial};
use super::{Polynomial, PrimeField};
use crate::{Error, Result};

/// Monomial orders supported by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted graded reverse lexicographic.
    Grevlex,
    /// Pure lexicographic, `x1 > x2 > ... > xn`.
    Lex,
    /// Block order: the first `k` variables compared by weighted grevlex,
    /// ties broken by weighted grevlex on the remaining variables. Any
    /// monomial involving the first block beats every monomial free of it.
    Elimination(usize),
}

/// The ambient of a polynomial: field, variable count, weights, order and
/// variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    field: PrimeField,
    weights: Vec<u32>,
    order: MonomialOrder,
    names: Vec<String>,
}

impl Ring {
    /// Standard graded ring `F_p[x1..xn]` with grevlex.
    pub fn standard(field: PrimeField, n: usize) -> Arc<Ring> {
        Arc::new(Ring {
            field,
            weights: vec![1; n],
            order: MonomialOrder::Grevlex,
            names: (1..=n).map(|i| format!("x{i}")).collect(),
        })
    }

    pub fn new(
        field: PrimeField,
        weights: Vec<u32>,
        order: MonomialOrder,
        names: Vec<String>,
    ) -> Result<Arc<Ring>> {
        if weights.len() != names.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for {} variables",
                weights.len(),
                names.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::DimensionMismatch("weights must be positive".into()));
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > weights.len() {
                return Err(Error::DimensionMismatch(format!(
                    "cannot eliminate {k} of {} variables",
                    weights.len()
                )));
            }
        }
        Ok(Arc::new(Ring {
            field,
            weights,
            order,
            names,
        }))
    }

    /// Same ring with variables named `{prefix}1..{prefix}n`.
    pub fn weighted(field: PrimeField, weights: Vec<u32>, prefix: &str) -> Result<Arc<Ring>> {
        let names = (1..=weights.len()).map(|i| format!("{prefix}{i}")).collect();
        Ring::new(field, weights, MonomialOrder::Grevlex, names)
    }

    /// A copy of this ring carrying a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Ring>> {
        Ring::new(self.field, self.weights.clone(), order, self.names.clone())
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Same field, weights and names.
    pub fn same_ambient(&self, other: &Ring) -> bool {
        self.field == other.field && self.weights == other.weights && self.names == other.names
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn variable_monomial(&self, i: usize) -> Monomial {
        let mut e = vec![0u16; self.nvars()];
        e[i] = 1;
        self.monomial(&e)
    }

    /// All monomials of weighted degree `d`, descending in this ring's order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = exponents_of_degree(&self.weights, d)
            .into_iter()
            .map(|e| Monomial::from_parts(e, d))
            .collect();
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.order {
            MonomialOrder::Grevlex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex(ea, eb)),
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::Elimination(k) => {
                let w = &self.weights[..k];
                let da: u32 = ea[..k].iter().zip(w).map(|(&e, &w)| e as u32 * w).sum();
                let db: u32 = eb[..k].iter().zip(w).map(|(&e, &w)| e as u32 * w).sum();
                da.cmp(&db)
                    .then_with(|| revlex(&ea[..k], &eb[..k]))
                    .then_with(|| a.degree().cmp(&b.degree()))
                    .then_with(|| revlex(&ea[k..], &eb[k..]))
            }
        }
    }

    /// Compares `a * b` with `c * d` without materialising the products.
    pub(crate) fn cmp_products(
        &self,
        a: &Monomial,
        b: &Monomial,
        c: &Monomial,
        d: &Monomial,
    ) -> Ordering {
        if self.order == MonomialOrder::Grevlex {
            let deg = (a.degree() + b.degree()).cmp(&(c.degree() + d.degree()));
            if deg != Ordering::Equal {
                return deg;
            }
            let (ea, eb, ec, ed) = (a.exponents(), b.exponents(), c.exponents(), d.exponents());
            for i in (0..ea.len()).rev() {
                let l = ea[i] + eb[i];
                let r = ec[i] + ed[i];
                if l != r {
                    return r.cmp(&l);
                }
            }
            return Ordering::Equal;
        }
        self.cmp(&a.mul(b), &c.mul(d))
    }

    /// The polynomial `x_i`.
    pub fn variable(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::monomial(self, self.variable_monomial(i), 1)
    }

    pub fn variables(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.variable(i)).collect()
    }
}

/// Reverse lexicographic tie-break: the monomial with the smaller exponent
/// in the last differing variable is larger.
fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

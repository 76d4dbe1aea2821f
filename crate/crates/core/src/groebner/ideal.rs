use std::sync::Arc;

use super::engine::{buchberger_module, reduce};
use super::hilbert::{krull_dimension_of_leads, HilbertSeries};
use super::module::{FreeModule, Vector};
use crate::algebra::{Monomial, MonomialOrder, Polynomial, Ring};
use crate::{Error, Limits, Result};

/// Generators of a homogeneous ideal in a weighted polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
}

impl IdealSpec {
    /// Rejects inhomogeneous or foreign generators; zero generators are
    /// dropped.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        for (index, g) in generators.iter().enumerate() {
            if !g.ring().same_ambient(ring) {
                return Err(Error::AmbientMismatch(format!("generator {index}")));
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous { index });
            }
        }
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.reorder(ring).expect("same ambient"))
            .collect();
        Ok(IdealSpec {
            ring: ring.clone(),
            generators,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }
}

/// A reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    elements: Vec<Polynomial>,
    module: Arc<FreeModule>,
    vectors: Vec<Vector>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|g| g.is_constant())
    }

    pub fn as_ideal(&self) -> IdealSpec {
        IdealSpec {
            ring: self.ring.clone(),
            generators: self.elements.clone(),
        }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }
}

fn to_vector(module: &Arc<FreeModule>, f: &Polynomial) -> Vector {
    Vector::from_sorted(
        module,
        f.terms().iter().map(|(m, c)| (0u32, m.clone(), *c)).collect(),
    )
}

fn from_vector(ring: &Arc<Ring>, v: Vector) -> Polynomial {
    Polynomial::from_sorted(ring, v.into_terms().into_iter().map(|(_, m, c)| (m, c)).collect())
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &IdealSpec, order: MonomialOrder, limits: &Limits) -> Result<GroebnerBasis> {
    let ring = if ideal.ring.order() == order {
        ideal.ring.clone()
    } else {
        ideal.ring.with_order(order)?
    };
    let module = FreeModule::pot(&ring, vec![0]);
    let gens: Vec<Vector> = ideal
        .generators
        .iter()
        .map(|g| to_vector(&module, &g.reorder(&ring).expect("same ambient")))
        .collect();
    let vectors = buchberger_module(&module, &gens, limits)?;
    let elements = vectors.iter().map(|v| from_vector(&ring, v.clone())).collect();
    Ok(GroebnerBasis {
        ring,
        elements,
        module,
        vectors,
    })
}

/// Remainder of `f` on division by `basis`; zero iff `f` is in the ideal.
pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    if !f.ring().same_ambient(&basis.ring) {
        return Err(Error::AmbientMismatch("normal form in another ring".into()));
    }
    let f = f.reorder(&basis.ring)?;
    let r = reduce(&to_vector(&basis.module, &f), &basis.vectors);
    Ok(from_vector(&basis.ring, r))
}

/// Generators of `I ∩ F_p[x_{k+1}, ..., x_n]`, as an ideal of the same
/// ambient ring (with its original order).
pub fn eliminate(ideal: &IdealSpec, first_k: usize, limits: &Limits) -> Result<IdealSpec> {
    let gb = buchberger(ideal, MonomialOrder::Elimination(first_k), limits)?;
    let kept = gb
        .elements
        .iter()
        .filter(|g| !g.involves_any(0..first_k))
        .map(|g| g.reorder(&ideal.ring).expect("same ambient"))
        .collect();
    IdealSpec::new(&ideal.ring, kept)
}

/// Hilbert series of `ring / ideal` read off the leading monomials.
pub fn hilbert_series(basis: &GroebnerBasis) -> HilbertSeries {
    HilbertSeries::of_monomial_ideal(&basis.leading_monomials(), basis.ring.weights())
}

/// Krull dimension of `ring / ideal` by the independent-set method;
/// `None` for the unit ideal.
pub fn krull_dimension(basis: &GroebnerBasis) -> Option<usize> {
    krull_dimension_of_leads(&basis.leading_monomials(), basis.ring.nvars())
}

use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::{Monomial, Polynomial, Ring};
use crate::{Error, Result};

/// Term order on a free module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Compare the component first (lower index is larger), then the
    /// monomial in the ring order.
    PositionOverTerm,
    /// Compare the total degree (monomial plus component shift), then the
    /// monomial in the ring order, then the component (lower is larger).
    TermOverPosition,
    /// Order induced by a map to a lower free module: the term `a e_k` is
    /// compared through `a * lead[k]` in the ring order, ties broken by
    /// `path[k]` lexicographically with smaller indices larger.
    Schreyer {
        lead: Vec<Monomial>,
        path: Vec<Vec<u32>>,
    },
}

/// A graded free module `⊕ S(-degrees[i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    ring: Arc<Ring>,
    degrees: Vec<i32>,
    order: ModuleOrder,
}

pub type Term = (u32, Monomial, u32);

impl FreeModule {
    pub fn new(ring: &Arc<Ring>, degrees: Vec<i32>, order: ModuleOrder) -> Arc<FreeModule> {
        if let ModuleOrder::Schreyer { lead, path } = &order {
            assert_eq!(lead.len(), degrees.len());
            assert_eq!(path.len(), degrees.len());
        }
        Arc::new(FreeModule {
            ring: ring.clone(),
            degrees,
            order,
        })
    }

    /// Degree-compatible term-over-position module.
    pub fn top(ring: &Arc<Ring>, degrees: Vec<i32>) -> Arc<FreeModule> {
        Self::new(ring, degrees, ModuleOrder::TermOverPosition)
    }

    /// Position-over-term module of the given rank and degrees.
    pub fn pot(ring: &Arc<Ring>, degrees: Vec<i32>) -> Arc<FreeModule> {
        Self::new(ring, degrees, ModuleOrder::PositionOverTerm)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.order
    }

    #[inline]
    pub fn term_degree(&self, comp: u32, m: &Monomial) -> i32 {
        m.degree() as i32 + self.degrees[comp as usize]
    }

    /// Compares `ma * a e_ca` with `mb * b e_cb`, where `ma`, `mb` are
    /// optional extra multipliers.
    #[inline]
    pub(crate) fn cmp_scaled(
        &self,
        ca: u32,
        a: &Monomial,
        ma: Option<&Monomial>,
        cb: u32,
        b: &Monomial,
        mb: Option<&Monomial>,
    ) -> Ordering {
        match &self.order {
            ModuleOrder::PositionOverTerm => cb.cmp(&ca).then_with(|| match (ma, mb) {
                (None, None) => self.ring.cmp(a, b),
                _ => {
                    let one = self.ring.one_monomial();
                    self.ring
                        .cmp_products(a, ma.unwrap_or(&one), b, mb.unwrap_or(&one))
                }
            }),
            ModuleOrder::TermOverPosition => {
                let one = self.ring.one_monomial();
                let (ma, mb) = (ma.unwrap_or(&one), mb.unwrap_or(&one));
                let da = a.degree() as i32 + ma.degree() as i32 + self.degrees[ca as usize];
                let db = b.degree() as i32 + mb.degree() as i32 + self.degrees[cb as usize];
                da.cmp(&db)
                    .then_with(|| self.ring.cmp_products(a, ma, b, mb))
                    .then_with(|| cb.cmp(&ca))
            }
            ModuleOrder::Schreyer { lead, path } => {
                let (la, lb) = (&lead[ca as usize], &lead[cb as usize]);
                let first = match (ma, mb) {
                    (None, None) => self.ring.cmp_products(a, la, b, lb),
                    _ => self.ring.cmp(
                        &scale3(a, la, ma),
                        &scale3(b, lb, mb),
                    ),
                };
                first.then_with(|| {
                    let (pa, pb) = (&path[ca as usize], &path[cb as usize]);
                    for (x, y) in pa.iter().zip(pb) {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    #[inline]
    pub fn cmp_terms(&self, ca: u32, a: &Monomial, cb: u32, b: &Monomial) -> Ordering {
        self.cmp_scaled(ca, a, None, cb, b, None)
    }
}

fn scale3(a: &Monomial, b: &Monomial, c: Option<&Monomial>) -> Monomial {
    let ab = a.mul(b);
    match c {
        Some(c) => ab.mul(c),
        None => ab,
    }
}

/// An element of a free module: terms `(component, monomial, coefficient)`
/// sorted descending in the module order, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector {
    module: Arc<FreeModule>,
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero(module: &Arc<FreeModule>) -> Vector {
        Vector {
            module: module.clone(),
            terms: Vec::new(),
        }
    }

    /// Normalizes arbitrary terms (merge, drop zeros, sort).
    pub fn from_terms(module: &Arc<FreeModule>, terms: Vec<Term>) -> Vector {
        let f = module.ring.field();
        let p = f.characteristic();
        let mut terms: Vec<Term> = terms
            .into_iter()
            .map(|(c, m, a)| (c, m, a % p))
            .filter(|t| t.2 != 0)
            .collect();
        terms.sort_by(|x, y| module.cmp_terms(y.0, &y.1, x.0, &x.1));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.0 == t.0 && last.1 == t.1 => {
                    last.2 = f.add(last.2, t.2);
                    if last.2 == 0 {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        Vector {
            module: module.clone(),
            terms: out,
        }
    }

    pub(crate) fn from_sorted(module: &Arc<FreeModule>, terms: Vec<Term>) -> Vector {
        Vector {
            module: module.clone(),
            terms,
        }
    }

    /// The vector with entry `entries[i]` in component `i`.
    pub fn from_polynomials(module: &Arc<FreeModule>, entries: &[Polynomial]) -> Result<Vector> {
        if entries.len() != module.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for rank {}",
                entries.len(),
                module.rank()
            )));
        }
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            if !p.ring().same_ambient(&module.ring) {
                return Err(Error::AmbientMismatch("vector entry ring".into()));
            }
            terms.extend(p.terms().iter().map(|(m, c)| (i as u32, m.clone(), *c)));
        }
        Ok(Vector::from_terms(module, terms))
    }

    /// `e_i`.
    pub fn unit(module: &Arc<FreeModule>, i: usize) -> Vector {
        Vector {
            module: module.clone(),
            terms: vec![(i as u32, module.ring.one_monomial(), 1)],
        }
    }

    pub fn module(&self) -> &Arc<FreeModule> {
        &self.module
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Degree of the leading term; all terms share it for homogeneous input.
    pub fn degree(&self) -> Option<i32> {
        self.terms
            .first()
            .map(|(c, m, _)| self.module.term_degree(*c, m))
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|(c, m, _)| self.module.term_degree(*c, m) == d),
        }
    }

    /// Entry in component `i` as a polynomial.
    pub fn component(&self, i: usize) -> Polynomial {
        let ring = &self.module.ring;
        Polynomial::from_terms(
            ring,
            self.terms
                .iter()
                .filter(|t| t.0 as usize == i)
                .map(|(_, m, c)| (m.clone(), *c)),
        )
    }

    pub fn to_polynomials(&self) -> Vec<Polynomial> {
        let ring = &self.module.ring;
        let mut buckets: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); self.module.rank()];
        for (c, m, a) in &self.terms {
            buckets[*c as usize].push((m.clone(), *a));
        }
        buckets
            .into_iter()
            .map(|b| Polynomial::from_terms(ring, b))
            .collect()
    }

    /// Re-expresses the vector in another module of the same rank and ring.
    pub fn in_module(&self, module: &Arc<FreeModule>) -> Vector {
        Vector::from_terms(module, self.terms.clone())
    }

    pub fn scale(&self, c: u32) -> Vector {
        let f = self.module.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Vector::zero(&self.module);
        }
        Vector {
            module: self.module.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, m, a)| (*k, m.clone(), f.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Vector {
        let f = self.module.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Vector::zero(&self.module);
        }
        Vector {
            module: self.module.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, t, a)| (*k, t.mul(m), f.mul(*a, c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Vector {
        let mut acc = Vector::zero(&self.module);
        for (m, c) in p.terms() {
            acc = acc.add_scaled(self, *c, Some(m));
        }
        acc
    }

    pub fn monic(&self) -> Vector {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, _, 1)) => self.clone(),
            Some(&(_, _, c)) => self.scale(self.module.ring.field().inv_nonzero(c)),
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        self.add_scaled(other, 1, None)
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let f = self.module.ring.field();
        self.add_scaled(other, f.neg(1 % f.characteristic()), None)
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, other: &Vector, c: u32, m: Option<&Monomial>) -> Vector {
        Vector {
            module: self.module.clone(),
            terms: axpy(&self.module, &self.terms, other.terms(), c, m),
        }
    }
}

/// Sorted merge computing `a + c * m * b`.
pub(crate) fn axpy(
    module: &FreeModule,
    a: &[Term],
    b: &[Term],
    c: u32,
    m: Option<&Monomial>,
) -> Vec<Term> {
    let f = module.ring.field();
    if c == 0 || b.is_empty() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ca, ma, xa) = &a[i];
        let (cb, mb, xb) = &b[j];
        match module.cmp_scaled(*ca, ma, None, *cb, mb, m) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let mono = match m {
                    Some(m) => mb.mul(m),
                    None => mb.clone(),
                };
                out.push((*cb, mono, f.mul(*xb, c)));
                j += 1;
            }
            Ordering::Equal => {
                let s = f.add(*xa, f.mul(*xb, c));
                if s != 0 {
                    out.push((*ca, ma.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (cb, mb, xb) in &b[j..] {
        let mono = match m {
            Some(m) => mb.mul(m),
            None => mb.clone(),
        };
        out.push((*cb, mono, f.mul(*xb, c)));
    }
    out
}

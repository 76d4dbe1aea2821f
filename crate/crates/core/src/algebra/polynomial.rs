use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Matrix, Monomial, Ring};
use crate::{Error, Result};

/// A sparse polynomial over `F_p`.
///
/// Terms are kept sorted descending in the ring's monomial order with no
/// zero coefficients; the zero polynomial has no terms.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, u32)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ambient(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, ring.one_monomial(), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: u32) -> Self {
        let c = c % ring.field().characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: duplicates are merged,
    /// zeros dropped and the result sorted.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let f = ring.field();
        let p = f.characteristic();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, c % p);
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<Ring>, acc: HashMap<Monomial, u32>) -> Self {
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Assumes `terms` is already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, u32)>) -> Self {
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].0, &w[1].0) == std::cmp::Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, u32)> {
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

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<u32> {
        self.terms.first().map(|t| t.1)
    }

    /// Maximum weighted degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0.is_one())
    }

    /// Coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Whether any term involves a variable with index in `vars`.
    pub fn involves_any(&self, vars: std::ops::Range<usize>) -> bool {
        self.terms
            .iter()
            .any(|(m, _)| m.exponents()[vars.clone()].iter().any(|&e| e > 0))
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same_ambient(&other.ring) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!(
                "{:?} vs {:?}",
                self.ring.names(),
                other.ring.names()
            )))
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.add_scaled(other, 1, None))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let f = self.ring.field();
        Ok(self.add_scaled(other, f.neg(1 % f.characteristic()), None))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self.mul_impl(other))
    }

    /// `self + c * m * other` (with `m = 1` when `None`), by sorted merge.
    pub fn add_scaled(&self, other: &Polynomial, c: u32, m: Option<&Monomial>) -> Polynomial {
        let f = self.ring.field();
        if c == 0 || other.is_zero() {
            return self.clone();
        }
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(bm, bc)| {
            (
                match m {
                    Some(m) => bm.mul(m),
                    None => bm.clone(),
                },
                f.mul(*bc, c),
            )
        });
        let mut nb = b.next();
        loop {
            match (a.peek(), &nb) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    out.push(nb.take().unwrap());
                    nb = b.next();
                }
                (Some((am, ac)), Some((bm, bc))) => match ring.cmp(am, bm) {
                    std::cmp::Ordering::Greater => out.push(a.next().unwrap().clone()),
                    std::cmp::Ordering::Less => {
                        out.push(nb.take().unwrap());
                        nb = b.next();
                    }
                    std::cmp::Ordering::Equal => {
                        let s = f.add(*ac, *bc);
                        if s != 0 {
                            out.push((am.clone(), s));
                        }
                        a.next();
                        nb = b.next();
                    }
                },
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), f.mul(*a, c)))
                .collect(),
        }
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.ring.field().inv_nonzero(c)),
        }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, self.terms[0].1);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, other.terms[0].1);
        }
        let f = self.ring.field();
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = acc.entry(a.mul(b)).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring homomorphism `x_i -> images[i]`; the result lives in the ring of
    /// the images.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "substitution of {} images into {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => self.ring.clone(),
        };
        for img in images {
            if !img.ring.same_ambient(&target) {
                return Err(Error::AmbientMismatch("substitution images differ".into()));
            }
        }
        let mut powers: HashMap<(usize, u16), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        let f = target.field();
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(&target, *c as i64);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u32));
                prod = &prod * pw;
                if prod.is_zero() {
                    break;
                }
            }
            for (t, a) in prod.terms {
                let s = acc.entry(t).or_insert(0);
                *s = f.add(*s, a);
            }
        }
        Ok(Polynomial::from_map(&target, acc))
    }

    /// The linear substitution `x_i -> sum_j m[i][j] x_j`.
    pub fn apply_matrix(&self, m: &Matrix) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix acting on {n} variables",
                m.nrows(),
                m.ncols()
            )));
        }
        if m.field() != self.ring.field() {
            return Err(Error::AmbientMismatch("matrix over a different field".into()));
        }
        if m.rank() < n {
            return Err(Error::SingularMatrix(m.field().characteristic()));
        }
        Ok(self.apply_linear_unchecked(m))
    }

    /// `apply_matrix` without the invertibility check.
    pub(crate) fn apply_linear_unchecked(&self, m: &Matrix) -> Polynomial {
        let images = linear_images(&self.ring, m);
        self.substitute(&images).expect("images share the ambient")
    }

    /// The same polynomial in a ring with identical variables but another
    /// monomial order.
    pub fn reorder(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if !self.ring.same_ambient(ring) {
            return Err(Error::AmbientMismatch("reorder between different ambients".into()));
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    /// Relabels variables: variable `i` of `self` becomes variable
    /// `positions[i]` of `target`. Weights are recomputed in `target`.
    pub fn embed(&self, target: &Arc<Ring>, positions: &[usize]) -> Polynomial {
        let nt = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u16; nt];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[positions[i]] += x;
            }
            (target.monomial(&e), *c)
        });
        Polynomial::from_terms(target, terms)
    }

    /// Coordinates with respect to `basis` (a descending list of monomials).
    pub fn coordinates(&self, basis: &[Monomial], index: &HashMap<Monomial, usize>) -> Vec<u32> {
        let mut v = vec![0u32; basis.len()];
        for (m, c) in &self.terms {
            v[index[m]] = *c;
        }
        v
    }

    pub fn from_coordinates(ring: &Arc<Ring>, basis: &[Monomial], coords: &[u32]) -> Polynomial {
        let terms = basis
            .iter()
            .zip(coords)
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m.clone(), c));
        Polynomial::from_terms(ring, terms)
    }

    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(ring, text)
    }
}

/// Images of the variables under `x_i -> sum_j m[i][j] x_j`.
pub(crate) fn linear_images(ring: &Arc<Ring>, m: &Matrix) -> Vec<Polynomial> {
    (0..ring.nvars())
        .map(|i| {
            let terms = (0..ring.nvars())
                .filter(|&j| m.get(i, j) != 0)
                .map(|j| (ring.variable_monomial(j), m.get(i, j)));
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

impl fmt::Display for Polynomial {
    /// Canonical rendering: descending terms, unit coefficients omitted,
    /// e.g. `x1^2*x3 + x2*x4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names()[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names()[i], e)),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ambient mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ambient mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ambient mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = self.ring.field();
        self.scale(f.neg(1 % f.characteristic()))
    }
}

//! Fundamental invariants, presentations `F_p[V]^G = S'/I`, rewriting in
//! generator coordinates, and the Hilbert-series completeness check.

use std::collections::HashMap;
use std::sync::Arc;

use log::{debug, warn};

use crate::action::{invariant_bases, InvariantBasis, MatrixGroup};
use crate::algebra::{Echelon, Monomial, MonomialOrder, Polynomial, Ring};
use crate::groebner::{buchberger, hilbert_series, normal_form, GroebnerBasis, IdealSpec};
use crate::{par, Error, Limits, Result};

/// A generation bound valid for every finite group: `max(|G|, n(|G| - 1))`.
pub fn default_bound(group: &MatrixGroup) -> u32 {
    let g = group.order() as u32;
    let n = group.n() as u32;
    (n * (g - 1)).max(g).max(1)
}

/// Homogeneous invariants generating the invariant ring up to `bound`,
/// sorted by degree.
#[derive(Debug, Clone)]
pub struct FundamentalSet {
    group: MatrixGroup,
    generators: Vec<Polynomial>,
    bound: u32,
    complete: bool,
    invariant_dims: Vec<usize>,
}

impl FundamentalSet {
    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|f| f.degree().unwrap()).collect()
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Whether the generators are known to generate the whole invariant
    /// ring, as opposed to the part of degree at most `bound`.
    pub fn complete(&self) -> bool {
        self.complete
    }

    /// Marks the set complete on the caller's authority.
    pub fn assert_complete(mut self) -> Self {
        self.complete = true;
        self
    }

    /// `dim F_p[V]^G_d` for `d = 0..=bound`.
    pub fn invariant_dims(&self) -> &[usize] {
        &self.invariant_dims
    }
}

/// Products of the chosen generators, memoized by exponent vector with
/// trailing zeros removed.
struct Products<'a> {
    ring: &'a Arc<Ring>,
    cache: HashMap<Vec<u16>, Polynomial>,
}

fn trim(e: &[u16]) -> Vec<u16> {
    let len = e.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    e[..len].to_vec()
}

impl<'a> Products<'a> {
    fn new(ring: &'a Arc<Ring>) -> Self {
        Products {
            ring,
            cache: HashMap::from([(Vec::new(), Polynomial::one(ring))]),
        }
    }

    /// Coordinates of every degree-`d` product of `gens` over `monos`.
    fn slice(&mut self, gens: &[Polynomial], degrees: &[u32], d: u32, monos: &[Monomial]) -> Vec<Vec<u32>> {
        if gens.is_empty() {
            return Vec::new();
        }
        let yring = Ring::weighted(self.ring.field(), degrees.to_vec(), "y").expect("positive degrees");
        let exps: Vec<Vec<u16>> = yring
            .monomials_of_degree(d)
            .iter()
            .map(|m| trim(m.exponents()))
            .collect();
        let cache = &self.cache;
        let products = par::map(&exps, |e| {
            if let Some(p) = cache.get(e) {
                return p.clone();
            }
            let i = e.iter().position(|&x| x != 0).expect("positive degree");
            let mut parent = e.clone();
            parent[i] -= 1;
            &cache[&trim(&parent)] * &gens[i]
        });
        let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let rows = products.iter().map(|p| p.coordinates(monos, &index)).collect();
        self.cache.extend(exps.into_iter().zip(products));
        rows
    }

    fn add_generator(&mut self, k: usize, f: &Polynomial) {
        let mut e = vec![0u16; k + 1];
        e[k] = 1;
        self.cache.insert(e, f.clone());
    }
}

/// Sweeps degrees `1..=bound`, adding at each degree the echelonized
/// invariants not already in the subalgebra generated so far.
pub fn fundamental_invariants(group: &MatrixGroup, bound: u32) -> Result<FundamentalSet> {
    let bound = bound.max(1);
    let ring = group.ring();
    let bases: Vec<InvariantBasis> = invariant_bases(group, bound);
    let mut generators: Vec<Polynomial> = Vec::new();
    let mut degrees: Vec<u32> = Vec::new();
    let mut products = Products::new(ring);
    for d in 1..=bound {
        let basis = &bases[d as usize];
        let monos = ring.monomials_of_degree(d);
        let mut span = Echelon::new(ring.field());
        for row in products.slice(&generators, &degrees, d, &monos) {
            span.insert(row);
            if span.rank() == basis.dim() {
                break;
            }
        }
        if span.rank() == basis.dim() {
            continue;
        }
        let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        for f in basis.basis() {
            if span.insert(f.coordinates(&monos, &index)) {
                products.add_generator(generators.len(), f);
                generators.push(f.clone());
                degrees.push(d);
            }
        }
        debug!("degree {d}: {} invariants, {} generators so far", basis.dim(), generators.len());
    }
    let complete = bound >= default_bound(group);
    if !complete {
        warn!(
            "degree bound {bound} is below the general bound {}; completeness is not certified",
            default_bound(group)
        );
    }
    Ok(FundamentalSet {
        group: group.clone(),
        generators,
        bound,
        complete,
        invariant_dims: bases.iter().map(InvariantBasis::dim).collect(),
    })
}

/// The invariant ring as `S'/I` with `S' = F_p[y_1, ..., y_m]`,
/// `deg y_i = deg f_i`.
#[derive(Debug, Clone)]
pub struct Presentation {
    fundamental: FundamentalSet,
    ring: Arc<Ring>,
    relations: GroebnerBasis,
    combined: Arc<Ring>,
    elimination: GroebnerBasis,
    certified: bool,
}

impl Presentation {
    pub fn m(&self) -> usize {
        self.ring.nvars()
    }

    pub fn weights(&self) -> &[u32] {
        self.ring.weights()
    }

    /// `S'`, graded by the generator degrees, with grevlex.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Reduced Gröbner basis of `I` in `S'`.
    pub fn relations(&self) -> &GroebnerBasis {
        &self.relations
    }

    /// `y_i -> f_i`.
    pub fn lift_map(&self) -> &[Polynomial] {
        self.fundamental.generators()
    }

    pub fn source_group(&self) -> &MatrixGroup {
        self.fundamental.group()
    }

    pub fn fundamental(&self) -> &FundamentalSet {
        &self.fundamental
    }

    pub fn bound(&self) -> u32 {
        self.fundamental.bound()
    }

    /// Whether the Hilbert certificate passed up to the extraction bound.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Checks the certificate recorded at construction.
    pub fn require_certified(&self) -> Result<()> {
        if self.certified {
            return Ok(());
        }
        let hs = hilbert_series(&self.relations).coefficients(self.bound() as i32);
        let dims = self.fundamental.invariant_dims();
        let d = (0..dims.len()).find(|&d| hs[d] != dims[d] as i64).unwrap_or(0);
        Err(Error::CertificateFailed {
            degree: d as u32,
            presented: hs[d].max(0) as u64,
            expected: dims[d] as u64,
        })
    }

    /// Maps `q(y)` to `q(f_1, ..., f_m)`.
    pub fn lift(&self, q: &Polynomial) -> Result<Polynomial> {
        if !q.ring().same_ambient(&self.ring) {
            return Err(Error::AmbientMismatch("expected a polynomial in S'".into()));
        }
        if self.m() == 0 {
            return Ok(Polynomial::constant(self.source_group().ring(), q.coefficient(&self.ring.one_monomial()) as i64));
        }
        q.substitute(self.lift_map())
    }
}

fn restrict_to_y(f: &Polynomial, n: usize, ring: &Arc<Ring>) -> Polynomial {
    let terms = f
        .terms()
        .iter()
        .map(|(mono, c)| (ring.monomial(&mono.exponents()[n..]), *c));
    Polynomial::from_terms(ring, terms)
}

/// Eliminates the `x`-block from `(y_i - f_i)` to find the relations.
pub fn presentation(fundamental: &FundamentalSet, limits: &Limits) -> Result<Presentation> {
    let group = fundamental.group();
    let field = group.field();
    let n = group.n();
    let degrees = fundamental.degrees();
    let m = degrees.len();
    let ring = Ring::weighted(field, degrees.clone(), "y")?;
    let mut weights = vec![1u32; n];
    weights.extend(&degrees);
    let names = group
        .ring()
        .names()
        .iter()
        .cloned()
        .chain(ring.names().iter().cloned())
        .collect();
    let combined = Ring::new(field, weights, MonomialOrder::Elimination(n), names)?;
    let x_positions: Vec<usize> = (0..n).collect();
    let gens = fundamental
        .generators()
        .iter()
        .enumerate()
        .map(|(i, f)| &combined.variable(n + i) - &f.embed(&combined, &x_positions))
        .collect();
    let elimination = buchberger(&IdealSpec::new(&combined, gens)?, MonomialOrder::Elimination(n), limits)?;
    let relations: Vec<Polynomial> = elimination
        .elements()
        .iter()
        .filter(|g| !g.involves_any(0..n))
        .map(|g| restrict_to_y(g, n, &ring))
        .collect();
    debug!("{m} generators, {} relations", relations.len());
    let relations = buchberger(&IdealSpec::new(&ring, relations)?, MonomialOrder::Grevlex, limits)?;
    let mut p = Presentation {
        fundamental: fundamental.clone(),
        ring,
        relations,
        combined,
        elimination,
        certified: false,
    };
    let hs = hilbert_series(&p.relations).coefficients(p.bound() as i32);
    p.certified = hs
        .iter()
        .zip(fundamental.invariant_dims())
        .all(|(&a, &b)| a == b as i64);
    if !p.certified {
        warn!("hilbert certificate failed up to degree {}", p.bound());
    }
    Ok(p)
}

/// Rewrites an invariant `f(x)` as `q(y)` with `q(f_1, ..., f_m) = f`,
/// reduced modulo the relations.
pub fn express_in_generators(f: &Polynomial, p: &Presentation) -> Result<Polynomial> {
    let group = p.source_group();
    if !f.ring().same_ambient(group.ring()) {
        return Err(Error::AmbientMismatch("expected a polynomial in the x-variables".into()));
    }
    let n = group.n();
    let positions: Vec<usize> = (0..n).collect();
    let r = normal_form(&f.embed(&p.combined, &positions), &p.elimination)?;
    if r.involves_any(0..n) {
        return Err(Error::NotInSubalgebra);
    }
    normal_form(&restrict_to_y(&r, n, &p.ring), &p.relations)
}

/// Whether the Hilbert function of `S'/I` matches the invariant dimensions
/// in every degree up to `bound`.
pub fn hilbert_certificate(p: &Presentation, bound: u32) -> bool {
    let hs = hilbert_series(&p.relations).coefficients(bound as i32);
    let known = p.fundamental.invariant_dims();
    let dims: Vec<usize> = if (bound as usize) < known.len() {
        known[..=bound as usize].to_vec()
    } else {
        invariant_bases(p.source_group(), bound).iter().map(InvariantBasis::dim).collect()
    };
    hs.iter().zip(&dims).all(|(&a, &b)| a == b as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{reynolds, MatrixGroup};
    use crate::algebra::{Matrix, PrimeField};
    use proptest::prelude::*;

    fn perm_group(p: u64, n: usize, perms: &[Vec<usize>]) -> MatrixGroup {
        let f = PrimeField::new(p).unwrap();
        let mats: Vec<Matrix> = perms.iter().map(|q| Matrix::permutation(f, q)).collect();
        let gens = if mats.is_empty() { vec![Matrix::identity(f, n)] } else { mats };
        MatrixGroup::closure(f, n, &gens, 10_000).unwrap()
    }

    fn strings(ps: &[Polynomial]) -> Vec<String> {
        ps.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn fundamental_examples() {
        let triv = perm_group(2, 2, &[]);
        let fs = fundamental_invariants(&triv, 1).unwrap();
        assert_eq!(strings(fs.generators()), vec!["x1", "x2"]);
        assert!(fs.complete());

        let swap = perm_group(2, 2, &[vec![1, 0]]);
        let fs = fundamental_invariants(&swap, 2).unwrap();
        assert_eq!(strings(fs.generators()), vec!["x1 + x2", "x1*x2"]);
        assert!(fs.complete());
        let fs1 = fundamental_invariants(&swap, 1).unwrap();
        assert!(!fs1.complete());
        assert!(fs1.assert_complete().complete());
    }

    #[test]
    fn presentation_examples() {
        let lim = Limits::default();
        let swap = perm_group(2, 2, &[vec![1, 0]]);
        let p = presentation(&fundamental_invariants(&swap, 2).unwrap(), &lim).unwrap();
        assert!(p.relations().is_empty());
        assert_eq!(p.weights(), &[1, 2]);
        assert!(p.is_certified());
        assert!(hilbert_certificate(&p, 6));

        let triv = perm_group(3, 2, &[]);
        let p = presentation(&fundamental_invariants(&triv, 1).unwrap(), &lim).unwrap();
        assert!(p.relations().is_empty());
        assert!(hilbert_certificate(&p, 7));
    }

    #[test]
    fn express_examples() {
        let lim = Limits::default();
        let swap = perm_group(2, 2, &[vec![1, 0]]);
        let p = presentation(&fundamental_invariants(&swap, 2).unwrap(), &lim).unwrap();
        let f = Polynomial::parse(swap.ring(), "x1 + x2").unwrap();
        assert_eq!(express_in_generators(&f, &p).unwrap().to_string(), "y1");
        let f = Polynomial::parse(swap.ring(), "(x1 + x2)*x1*x2").unwrap();
        assert_eq!(express_in_generators(&f, &p).unwrap().to_string(), "y1*y2");
        let x = Polynomial::parse(swap.ring(), "x1").unwrap();
        assert_eq!(express_in_generators(&x, &p), Err(Error::NotInSubalgebra));
    }

    #[test]
    fn bertin_presentation() {
        let g = perm_group(2, 4, &[vec![1, 2, 3, 0]]);
        let fs = fundamental_invariants(&g, default_bound(&g)).unwrap();
        assert_eq!(fs.bound(), 12);
        assert!(fs.complete());
        assert_eq!(fs.degrees(), vec![1, 2, 2, 3, 3, 4, 4, 5]);
        assert_eq!(&fs.invariant_dims()[..6], &[1, 1, 3, 5, 10, 14]);
        let p = presentation(&fs, &Limits::default()).unwrap();
        assert!(p.is_certified());
        assert!(!p.relations().is_empty());
        for r in p.relations().elements() {
            assert!(p.lift(r).unwrap().is_zero());
        }
        let f = Polynomial::parse(g.ring(), "x1*x3 + x2*x4").unwrap();
        let q = express_in_generators(&f, &p).unwrap();
        assert_eq!(q.degree(), Some(2));
        assert_eq!(p.lift(&q).unwrap(), f);
    }

    fn relabel(perms: &[Vec<usize>], sigma: &[usize]) -> Vec<Vec<usize>> {
        // conjugate each permutation by sigma
        let n = sigma.len();
        let mut inv = vec![0; n];
        for (i, &s) in sigma.iter().enumerate() {
            inv[s] = i;
        }
        perms
            .iter()
            .map(|q| (0..n).map(|i| sigma[q[inv[i]]]).collect())
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn round_trip(which in 0usize..3, coeffs in proptest::collection::vec(0u32..2, 12)) {
            let g = match which {
                0 => perm_group(2, 3, &[vec![1, 0, 2], vec![0, 2, 1]]),
                1 => perm_group(3, 3, &[vec![1, 2, 0]]),
                _ => perm_group(2, 3, &[vec![1, 2, 0]]),
            };
            let fs = fundamental_invariants(&g, default_bound(&g)).unwrap();
            let p = presentation(&fs, &Limits::default()).unwrap();
            prop_assert!(p.is_certified());
            for r in p.relations().elements() {
                prop_assert!(p.lift(r).unwrap().is_zero());
            }
            let monos = p.ring().monomials_of_degree(4);
            let q = Polynomial::from_terms(p.ring(), monos.into_iter().zip(coeffs));
            let back = express_in_generators(&p.lift(&q).unwrap(), &p).unwrap();
            prop_assert_eq!(back, normal_form(&q, p.relations()).unwrap());
        }

        #[test]
        fn generator_degrees_are_relabeling_invariant(sigma in Just(vec![0usize, 1, 2, 3]).prop_shuffle(), which in 0usize..2) {
            let perms = if which == 0 { vec![vec![1, 2, 3, 0]] } else { vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]] };
            let a = perm_group(2, 4, &perms);
            let b = perm_group(2, 4, &relabel(&perms, &sigma));
            prop_assert_eq!(a.order(), b.order());
            let da = fundamental_invariants(&a, default_bound(&a)).unwrap().degrees();
            let db = fundamental_invariants(&b, default_bound(&b)).unwrap().degrees();
            prop_assert_eq!(da, db);
        }
    }

    #[test]
    fn nonmodular_dims_match_reynolds_images() {
        let g = perm_group(2, 3, &[vec![1, 2, 0]]);
        let fs = fundamental_invariants(&g, default_bound(&g)).unwrap();
        for d in 0..=fs.bound() {
            let ring = g.ring();
            let monos = ring.monomials_of_degree(d);
            let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut span = Echelon::new(ring.field());
            for m in &monos {
                let r = reynolds(&Polynomial::monomial(ring, m.clone(), 1), &g).unwrap();
                span.insert(r.coordinates(&monos, &index));
            }
            assert_eq!(span.rank(), fs.invariant_dims()[d as usize]);
        }
    }
}

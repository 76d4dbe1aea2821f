use std::sync::Arc;

use log::debug;

use crate::algebra::{Monomial, Polynomial, Ring};
use crate::groebner::{
    buchberger_extended, reduce, FreeModule, GroebnerBasis, HilbertSeries, Vector,
};
use crate::homology::schreyer::{prune, schreyer_frame};
use crate::{Error, Limits, Result};

/// A graded free module `⊕ S'(-d_i)` described by its generator degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFreeModule {
    column_degrees: Vec<i32>,
}

impl GradedFreeModule {
    pub fn new(column_degrees: Vec<i32>) -> Self {
        GradedFreeModule { column_degrees }
    }

    pub fn rank(&self) -> usize {
        self.column_degrees.len()
    }

    pub fn column_degrees(&self) -> &[i32] {
        &self.column_degrees
    }

    /// The module over `ring` with position-over-term order.
    pub fn over(&self, ring: &Arc<Ring>) -> Arc<FreeModule> {
        FreeModule::pot(ring, self.column_degrees.clone())
    }
}

/// A homogeneous map of graded free modules, stored by columns: column `j`
/// is the image of the `j`-th generator of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: Arc<FreeModule>,
    target: Arc<FreeModule>,
    columns: Vec<Vector>,
}

impl GradedMap {
    pub fn new(source: &Arc<FreeModule>, target: &Arc<FreeModule>, columns: Vec<Vector>) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns for a source of rank {}",
                columns.len(),
                source.rank()
            )));
        }
        for (j, c) in columns.iter().enumerate() {
            if c.module().as_ref() != target.as_ref() {
                return Err(Error::AmbientMismatch(format!("column {j} is not in the target")));
            }
            if !c.is_zero() && (!c.is_homogeneous() || c.degree() != Some(source.degrees()[j])) {
                return Err(Error::Inhomogeneous { index: j });
            }
        }
        Ok(GradedMap {
            source: source.clone(),
            target: target.clone(),
            columns,
        })
    }

    pub fn source(&self) -> &Arc<FreeModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeModule> {
        &self.target
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.columns[j].component(i)
    }

    /// The image of `v` (an element of the source).
    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero(&self.target);
        for (c, m, a) in v.terms() {
            out = out.add_scaled(&self.columns[*c as usize], *a, Some(m));
        }
        out
    }

    /// `Hom(-, S')` of the map: `target* -> source*`, degrees negated.
    pub fn transpose(&self) -> GradedMap {
        let ring = self.source.ring();
        let dual = |m: &FreeModule| FreeModule::pot(ring, m.degrees().iter().map(|d| -d).collect());
        let (src, tgt) = (dual(&self.target), dual(&self.source));
        let mut rows: Vec<Vec<(u32, Monomial, u32)>> = vec![Vec::new(); self.target.rank()];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, m, a) in col.terms() {
                rows[*i as usize].push((j as u32, m.clone(), *a));
            }
        }
        let columns = rows.into_iter().map(|r| Vector::from_terms(&tgt, r)).collect();
        GradedMap {
            source: src,
            target: tgt,
            columns,
        }
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.columns
            .iter()
            .any(|c| c.terms().iter().any(|(_, m, _)| m.is_one()))
    }
}

/// A reduced Gröbner basis of a submodule of a free module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleBasis {
    module: Arc<FreeModule>,
    elements: Vec<Vector>,
}

impl ModuleBasis {
    pub(crate) fn empty(module: &Arc<FreeModule>) -> Self {
        ModuleBasis {
            module: module.clone(),
            elements: Vec::new(),
        }
    }

    pub fn module(&self) -> &Arc<FreeModule> {
        &self.module
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elements
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn normal_form(&self, v: &Vector) -> Vector {
        reduce(v, &self.elements)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Hilbert series of `F / M`.
    pub fn quotient_series(&self) -> HilbertSeries {
        let leads: Vec<(u32, Monomial)> = self
            .elements
            .iter()
            .map(|g| {
                let (c, m, _) = g.lead().unwrap();
                (*c, m.clone())
            })
            .collect();
        HilbertSeries::of_monomial_module(self.module.degrees(), &leads, self.module.ring().weights())
    }
}

/// Reduced Gröbner basis, position over term, of the submodule generated by
/// `generators`.
pub fn module_groebner(module: &Arc<FreeModule>, generators: &[Vector], limits: &Limits) -> Result<ModuleBasis> {
    let run = buchberger_extended(module, &[], generators, limits)?;
    Ok(ModuleBasis {
        module: module.clone(),
        elements: run.basis,
    })
}

/// `I * e_c` for every component `c` of `module`, a Gröbner basis of `I F`.
pub(crate) fn ideal_times_module(module: &Arc<FreeModule>, ideal: &GroebnerBasis) -> Vec<Vector> {
    (0..module.rank())
        .flat_map(|c| {
            ideal.elements().iter().map(move |h| {
                let terms = h.terms().iter().map(|(m, a)| (c as u32, m.clone(), *a)).collect();
                Vector::from_terms(module, terms)
            })
        })
        .collect()
}

/// Gröbner basis of the submodule generated by `generators` plus `I F`.
pub(crate) fn submodule_modulo(
    module: &Arc<FreeModule>,
    generators: &[Vector],
    modulo: Option<&GroebnerBasis>,
    limits: &Limits,
) -> Result<ModuleBasis> {
    let base = modulo.map(|i| ideal_times_module(module, i)).unwrap_or_default();
    let run = buchberger_extended(module, &base, generators, limits)?;
    Ok(ModuleBasis {
        module: module.clone(),
        elements: run.basis,
    })
}

/// Gröbner basis of `{v : map(v) ∈ I * target}` (with `I = 0` when
/// `modulo` is `None`), computed from the augmented module
/// `target ⊕ source` whose target block is eliminated first.
pub fn kernel(map: &GradedMap, modulo: Option<&GroebnerBasis>, limits: &Limits) -> Result<ModuleBasis> {
    let ring = map.source.ring();
    let t = map.target.rank();
    let mut degrees = map.target.degrees().to_vec();
    degrees.extend(map.source.degrees());
    let aug = FreeModule::pot(ring, degrees);
    let gens: Vec<Vector> = map
        .columns
        .iter()
        .enumerate()
        .map(|(j, col)| {
            let mut terms: Vec<(u32, Monomial, u32)> = col.terms().to_vec();
            terms.push(((t + j) as u32, ring.one_monomial(), 1));
            Vector::from_terms(&aug, terms)
        })
        .collect();
    let base: Vec<Vector> = modulo
        .map(|i| {
            let target_block = FreeModule::pot(ring, map.target.degrees().to_vec());
            ideal_times_module(&target_block, i)
                .into_iter()
                .map(|v| Vector::from_terms(&aug, v.into_terms()))
                .collect()
        })
        .unwrap_or_default();
    let run = buchberger_extended(&aug, &base, &gens, limits)?;
    let elements = run
        .basis
        .into_iter()
        .filter(|g| g.lead().unwrap().0 as usize >= t)
        .map(|g| {
            let terms = g
                .into_terms()
                .into_iter()
                .map(|(c, m, a)| (c - t as u32, m, a))
                .collect();
            Vector::from_terms(&map.source, terms)
        })
        .collect();
    Ok(ModuleBasis {
        module: map.source.clone(),
        elements,
    })
}

/// A minimal homogeneous generating set of `<generators> + <base>` modulo
/// `<base>`, chosen greedily by degree and then input order; `base` must be
/// a Gröbner basis.
pub fn minimal_generators(
    module: &Arc<FreeModule>,
    base: &[Vector],
    generators: &[Vector],
    limits: &Limits,
) -> Result<Vec<Vector>> {
    let run = buchberger_extended(module, base, generators, limits)?;
    let mut keep = run.minimal_inputs;
    keep.sort_by_key(|&k| (generators[k].degree(), k));
    Ok(keep.into_iter().map(|k| generators[k].clone()).collect())
}

/// A minimal generating set of the first syzygy module of the elements of
/// `basis`, as vectors over a free module with one generator per element.
pub fn syzygies(basis: &ModuleBasis, limits: &Limits) -> Result<Vec<Vector>> {
    let ring = basis.module.ring();
    let degrees = basis.elements.iter().map(|g| g.degree().unwrap()).collect();
    let source = FreeModule::pot(ring, degrees);
    let map = GradedMap::new(&source, &basis.module, basis.elements.clone())?;
    let k = kernel(&map, None, limits)?;
    minimal_generators(&source, &[], &k.elements, limits)
}

/// A graded free resolution `0 <- F_0 <- F_1 <- ... <- F_l <- 0`.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    ring: Arc<Ring>,
    modules: Vec<Arc<FreeModule>>,
    differentials: Vec<GradedMap>,
    minimal: bool,
    complete: bool,
}

impl FreeResolution {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    /// `F_i`.
    pub fn module(&self, i: usize) -> &Arc<FreeModule> {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[Arc<FreeModule>] {
        &self.modules
    }

    /// `D_i : F_i -> F_{i-1}` for `i >= 1`.
    pub fn differential(&self, i: usize) -> &GradedMap {
        &self.differentials[i - 1]
    }

    pub fn differentials(&self) -> &[GradedMap] {
        &self.differentials
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// False when the resolution was cut off at a length cap; the last
    /// module may then be larger than in the full minimal resolution.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// `(i, degree, count)` for the graded Betti numbers.
    pub fn graded_betti_numbers(&self) -> Vec<(usize, i32, usize)> {
        let mut out = Vec::new();
        for (i, m) in self.modules.iter().enumerate() {
            let mut degrees = m.degrees().to_vec();
            degrees.sort_unstable();
            let mut k = 0;
            while k < degrees.len() {
                let run = degrees[k..].iter().take_while(|&&d| d == degrees[k]).count();
                out.push((i, degrees[k], run));
                k += run;
            }
        }
        out
    }

    /// `D_i D_{i+1} = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| {
            w[1].columns().iter().all(|c| w[0].apply(c).is_zero())
        })
    }

    /// `sum_i (-1)^i sum_j t^{d_ij} / prod (1 - t^{w})`, the Hilbert series
    /// of the resolved module.
    pub fn euler_series(&self) -> HilbertSeries {
        let weights = self.ring.weights().to_vec();
        let mut acc = HilbertSeries::zero(weights.clone());
        for (i, m) in self.modules.iter().enumerate() {
            for &d in m.degrees() {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                acc = acc.add(&HilbertSeries::new(vec![sign], d, weights.clone()));
            }
        }
        acc
    }
}

/// Minimal graded free resolution of `S'/J`, stopping early after
/// `max_length` differentials when given.
pub fn resolve_quotient(ideal: &GroebnerBasis, max_length: Option<usize>, limits: &Limits) -> Result<FreeResolution> {
    let ring = ideal.ring().clone();
    if ring.order() != crate::algebra::MonomialOrder::Grevlex {
        return Err(Error::AmbientMismatch("resolutions are computed in grevlex".into()));
    }
    let f0 = FreeModule::pot(&ring, vec![0]);
    let gens: Vec<Vector> = ideal
        .elements()
        .iter()
        .map(|h| Vector::from_terms(&f0, h.terms().iter().map(|(m, a)| (0, m.clone(), *a)).collect()))
        .collect();
    let frame = schreyer_frame(&f0, gens, max_length.unwrap_or(usize::MAX), limits)?;
    let complete = frame.complete;
    debug!("frame ranks {:?}", frame.modules.iter().map(|m| m.rank()).collect::<Vec<_>>());
    let (modules, columns) = prune(&ring, frame);
    let differentials = columns
        .into_iter()
        .enumerate()
        .map(|(k, cs)| GradedMap::new(&modules[k + 1], &modules[k], cs))
        .collect::<Result<Vec<_>>>()?;
    let minimal = differentials.iter().all(|d| !d.has_unit_entry());
    Ok(FreeResolution {
        ring,
        modules,
        differentials,
        minimal,
        complete,
    })
}

/// The Koszul complex on the variables of `ring`, a minimal resolution of
/// the residue field.
pub fn koszul_complex(ring: &Arc<Ring>) -> FreeResolution {
    let vars: Vec<Polynomial> = (0..ring.nvars())
        .map(|i| Polynomial::from_terms(ring, [(ring.variable_monomial(i), 1)]))
        .collect();
    koszul_complex_on(ring, &vars).expect("variables are homogeneous")
}

/// The Koszul complex `K(a_1, ..., a_r)` of homogeneous elements of positive
/// degree. It is a resolution only when the elements form a regular sequence.
pub fn koszul_complex_on(ring: &Arc<Ring>, elements: &[Polynomial]) -> Result<FreeResolution> {
    let r = elements.len();
    let mut degrees = Vec::with_capacity(r);
    for (index, a) in elements.iter().enumerate() {
        match a.degree() {
            Some(d) if d > 0 && a.is_homogeneous() => degrees.push(d as i32),
            _ => return Err(Error::Inhomogeneous { index }),
        }
    }
    // subsets of {0..r} of each size, in lexicographic order
    let subsets: Vec<Vec<Vec<usize>>> = (0..=r).map(|k| combinations(r, k)).collect();
    let modules: Vec<Arc<FreeModule>> = subsets
        .iter()
        .map(|ss| FreeModule::pot(ring, ss.iter().map(|s| s.iter().map(|&i| degrees[i]).sum()).collect()))
        .collect();
    let field = ring.field();
    let mut differentials = Vec::new();
    for k in 1..=r {
        let index: std::collections::HashMap<&Vec<usize>, usize> =
            subsets[k - 1].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let columns = subsets[k]
            .iter()
            .map(|s| {
                let mut terms = Vec::new();
                for (pos, &i) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(pos);
                    let row = index[&rest] as u32;
                    for (m, c) in elements[i].terms() {
                        let c = if pos % 2 == 0 { *c } else { field.neg(*c) };
                        terms.push((row, m.clone(), c));
                    }
                }
                Vector::from_terms(&modules[k - 1], terms)
            })
            .collect();
        differentials.push(GradedMap::new(&modules[k], &modules[k - 1], columns)?);
    }
    Ok(FreeResolution {
        ring: ring.clone(),
        modules,
        differentials,
        minimal: true,
        complete: true,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MonomialOrder, PrimeField};
    use crate::groebner::{buchberger, hilbert_series, IdealSpec};
    use proptest::prelude::*;

    fn ring(p: u64, n: usize) -> Arc<Ring> {
        Ring::standard(PrimeField::new(p).unwrap(), n)
    }

    fn gb(r: &Arc<Ring>, gens: &[&str]) -> GroebnerBasis {
        let gens = gens.iter().map(|g| Polynomial::parse(r, g).unwrap()).collect();
        buchberger(&IdealSpec::new(r, gens).unwrap(), MonomialOrder::Grevlex, &Limits::default()).unwrap()
    }

    fn vec_of(module: &Arc<FreeModule>, entries: &[&str]) -> Vector {
        let ps: Vec<Polynomial> = entries.iter().map(|e| Polynomial::parse(module.ring(), e).unwrap()).collect();
        Vector::from_polynomials(module, &ps).unwrap()
    }

    #[test]
    fn module_groebner_examples() {
        let r = ring(2, 2);
        let f = FreeModule::pot(&r, vec![0]);
        let y1 = vec_of(&f, &["x1"]);
        let b = module_groebner(&f, std::slice::from_ref(&y1), &Limits::default()).unwrap();
        assert_eq!(b.elements(), &[y1]);
        assert!(module_groebner(&f, &[], &Limits::default()).unwrap().is_empty());

        let f2 = FreeModule::pot(&r, vec![0, 0]);
        let k = vec_of(&f2, &["x2", "x1"]);
        let b = module_groebner(&f2, &[k.clone(), vec_of(&f2, &["x1", "0"])], &Limits::default()).unwrap();
        // every S-pair of the output reduces to zero
        for g in b.elements() {
            assert!(b.contains(g));
        }
        assert!(b.contains(&k.mul_term(&r.variable_monomial(0), 1)));
    }

    #[test]
    fn syzygy_examples() {
        let r = ring(3, 3);
        let f = FreeModule::pot(&r, vec![0]);
        let lim = Limits::default();
        let two = module_groebner(&f, &[vec_of(&f, &["x1"]), vec_of(&f, &["x2"])], &lim).unwrap();
        let s = syzygies(&two, &lim).unwrap();
        assert_eq!(s.len(), 1);
        let map = GradedMap::new(s[0].module(), &f, two.elements().to_vec()).unwrap();
        assert!(map.apply(&s[0]).is_zero());
        assert_eq!(s[0].degree(), Some(2));

        let three = module_groebner(&f, &[vec_of(&f, &["x1"]), vec_of(&f, &["x2"]), vec_of(&f, &["x3"])], &lim).unwrap();
        let s = syzygies(&three, &lim).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|v| v.degree() == Some(2)));

        let one = module_groebner(&f, &[vec_of(&f, &["x1^2 + x2*x3"])], &lim).unwrap();
        assert!(syzygies(&one, &lim).unwrap().is_empty());
    }

    #[test]
    fn kernel_modulo_an_ideal() {
        let r = ring(2, 2);
        let lim = Limits::default();
        let f = FreeModule::pot(&r, vec![0]);
        let g = FreeModule::pot(&r, vec![1]);
        // multiplication by x1 is injective on S, but kills x2 modulo (x1*x2)
        let times_x1 = GradedMap::new(&g, &f, vec![vec_of(&f, &["x1"])]).unwrap();
        assert!(kernel(&times_x1, None, &lim).unwrap().elements().is_empty());
        let k = kernel(&times_x1, Some(&gb(&r, &["x1*x2"])), &lim).unwrap();
        assert_eq!(k.elements().len(), 1);
        assert_eq!(k.elements()[0], vec_of(&g, &["x2"]));
    }

    #[test]
    fn resolution_examples() {
        let lim = Limits::default();
        let r = ring(2, 2);
        let zero = gb(&r, &[]);
        let res = resolve_quotient(&zero, None, &lim).unwrap();
        assert_eq!(res.length(), 0);
        let hyp = gb(&r, &["x1*x2"]);
        let res = resolve_quotient(&hyp, None, &lim).unwrap();
        assert_eq!(res.length(), 1);
        assert_eq!(res.betti_numbers(), vec![1, 1]);
        assert!(res.is_minimal());

        // twisted cubic: Betti numbers 1, 3, 2
        let r4 = ring(5, 4);
        let cubic = gb(&r4, &["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]);
        let res = resolve_quotient(&cubic, None, &lim).unwrap();
        assert_eq!(res.betti_numbers(), vec![1, 3, 2]);
        assert!(res.is_complex());
        assert_eq!(res.euler_series(), hilbert_series(&cubic));
    }

    #[test]
    fn koszul_is_exact() {
        let r = Ring::weighted(PrimeField::new(2).unwrap(), vec![1, 2, 3], "y").unwrap();
        let k = koszul_complex(&r);
        assert_eq!(k.betti_numbers(), vec![1, 3, 3, 1]);
        assert!(k.is_complex());
        let m = gb(&r, &["y1", "y2", "y3"]);
        assert_eq!(k.euler_series(), hilbert_series(&m));
        let computed = resolve_quotient(&m, None, &Limits::default()).unwrap();
        assert_eq!(computed.graded_betti_numbers(), k.graded_betti_numbers());
    }

    #[test]
    fn transpose_is_involutive() {
        let r = ring(3, 2);
        let f = FreeModule::pot(&r, vec![0, 1]);
        let g = FreeModule::pot(&r, vec![2]);
        let cols = vec![vec_of(&f, &["x1^2", "x2"])];
        let map = GradedMap::new(&g, &f, cols).unwrap();
        let t = map.transpose();
        assert_eq!(t.source().degrees(), &[0, -1]);
        assert_eq!(t.entry(0, 1), map.entry(1, 0));
        assert_eq!(t.transpose(), map);
    }

    fn ideal_strategy() -> impl Strategy<Value = Vec<(u32, Vec<u32>)>> {
        proptest::collection::vec((2u32..=3, proptest::collection::vec(0u32..3, 10)), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn resolutions_are_minimal_exact_complexes(seed in ideal_strategy()) {
            let r = ring(3, 3);
            let gens: Vec<Polynomial> = seed
                .iter()
                .map(|(d, c)| Polynomial::from_terms(&r, r.monomials_of_degree(*d).into_iter().zip(c.iter().copied())))
                .filter(|p| !p.is_zero())
                .collect();
            let i = buchberger(&IdealSpec::new(&r, gens).unwrap(), MonomialOrder::Grevlex, &Limits::default()).unwrap();
            let res = resolve_quotient(&i, None, &Limits::default()).unwrap();
            prop_assert!(res.length() <= 3);
            prop_assert!(res.is_complex());
            prop_assert!(res.is_minimal());
            prop_assert_eq!(res.euler_series(), hilbert_series(&i));
        }
    }
}

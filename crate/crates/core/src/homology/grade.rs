use std::collections::HashSet;

use log::debug;

use crate::action::{is_modular, transfer};
use crate::algebra::{MonomialOrder, Polynomial};
use crate::groebner::{buchberger, krull_dimension, GroebnerBasis, HilbertSeries, IdealSpec};
use crate::homology::ext::{dual_boundaries, dual_module};
use crate::homology::resolution::{koszul_complex, koszul_complex_on, submodule_modulo, FreeResolution};
use crate::invariants::{express_in_generators, Presentation};
use crate::{Error, Limits, Result};

/// `HS(F_j^* / (I F_j^* + im D_j^T))`, the cokernel of the `j`-th map of
/// `Hom(F, S'/I)`.
fn cokernel_series(res: &FreeResolution, j: usize, ideal: &GroebnerBasis, limits: &Limits) -> Result<HilbertSeries> {
    let dual = dual_module(res, j);
    let boundaries = dual_boundaries(res, j, &dual);
    Ok(submodule_modulo(&dual, &boundaries, Some(ideal), limits)?.quotient_series())
}

/// `min { j <= max_j : H^j(Hom(F, S'/I)) != 0 }` for a complex `F` of free
/// modules, using
/// `HS(Ext^j) = HS(coker_j) - HS(R ⊗ F_{j+1}^*) + HS(coker_{j+1})`.
pub fn grade_from_resolution(
    res: &FreeResolution,
    ideal: &GroebnerBasis,
    max_j: usize,
    limits: &Limits,
) -> Result<Option<usize>> {
    let last = if res.is_complete() { res.length() } else { res.length().saturating_sub(1) };
    let mut current = cokernel_series(res, 0, ideal, limits)?;
    for j in 0..=max_j.min(last) {
        let mut series = current.clone();
        if j < res.length() {
            let next = cokernel_series(res, j + 1, ideal, limits)?;
            let free = submodule_modulo(&dual_module(res, j + 1), &[], Some(ideal), limits)?.quotient_series();
            series = series.sub(&free).add(&next);
            current = next;
        }
        if series.dimension().is_some() {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// `depth R` as the least `j` with `Ext^j(S'/m, R) != 0`, computed from the
/// Koszul resolution of the residue field; independent of the minimal
/// resolution of `R`.
pub fn depth_oracle_of_quotient(ideal: &GroebnerBasis, limits: &Limits) -> Result<usize> {
    let ring = ideal.ring();
    let k = koszul_complex(ring);
    grade_from_resolution(&k, ideal, ring.nvars(), limits)?
        .ok_or_else(|| Error::Inconsistent("no nonvanishing Ext against the residue field".into()))
}

pub fn depth_oracle(p: &Presentation, limits: &Limits) -> Result<usize> {
    depth_oracle_of_quotient(p.relations(), limits)
}

fn sum_ideal(a: &IdealSpec, ideal: &GroebnerBasis, limits: &Limits) -> Result<GroebnerBasis> {
    if !a.ring().same_ambient(ideal.ring()) {
        return Err(Error::AmbientMismatch("ideal must live in S'".into()));
    }
    let gens = a
        .generators()
        .iter()
        .chain(ideal.elements())
        .cloned()
        .collect();
    let j = buchberger(&IdealSpec::new(ideal.ring(), gens)?, MonomialOrder::Grevlex, limits)?;
    if j.is_unit_ideal() {
        return Err(Error::UnitIdeal);
    }
    Ok(j)
}

/// `Ht(a) = dim R - dim S'/(a + I)`.
pub fn height_of_ideal_in(a: &IdealSpec, ideal: &GroebnerBasis, limits: &Limits) -> Result<usize> {
    let j = sum_ideal(a, ideal, limits)?;
    let dim = krull_dimension(ideal).ok_or(Error::UnitIdeal)?;
    Ok(dim - krull_dimension(&j).unwrap_or(0))
}

/// `grade(a, R)` as the least `j` with `H^j(a; R) != 0`, the Koszul
/// cohomology of the given generators of `a` with coefficients in `R`.
pub fn grade_of_ideal_in(a: &IdealSpec, ideal: &GroebnerBasis, limits: &Limits) -> Result<usize> {
    let j = sum_ideal(a, ideal, limits)?;
    let dim = krull_dimension(ideal).ok_or(Error::UnitIdeal)?;
    let height = dim - krull_dimension(&j).unwrap_or(0);
    let gens: Vec<Polynomial> = a.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    let k = koszul_complex_on(ideal.ring(), &gens)?;
    debug!("grade: Koszul complex on {} elements", gens.len());
    grade_from_resolution(&k, ideal, height, limits)?
        .ok_or_else(|| Error::Inconsistent(format!("grade exceeds height {height}")))
}

pub fn height_of_ideal(a: &IdealSpec, p: &Presentation, limits: &Limits) -> Result<usize> {
    height_of_ideal_in(a, p.relations(), limits)
}

pub fn grade_of_ideal(a: &IdealSpec, p: &Presentation, limits: &Limits) -> Result<usize> {
    grade_of_ideal_in(a, p.relations(), limits)
}

/// A statement about local cohomology that follows from computed numbers
/// by a cited theorem rather than by direct computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inference {
    pub statement: String,
    pub citation: String,
}

impl std::fmt::Display for Inference {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ({})", self.statement, self.citation)
    }
}

fn inference(statement: String, citation: &str) -> Inference {
    Inference {
        statement,
        citation: citation.to_string(),
    }
}

/// `3 -> "³"`.
pub fn superscript(n: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

/// Grade, height and the local cohomology facts they license for an ideal
/// `a` of `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeReport {
    pub generators: Vec<Polynomial>,
    pub grade: usize,
    pub height: usize,
    pub dim: usize,
    pub depth: usize,
    /// `cd(a)` is only known to lie in this interval unless `a` is
    /// `m`-primary.
    pub cd_bounds: (usize, usize),
    pub inferences: Vec<Inference>,
}

/// The consequences of `grade`, `height` and `depth` for local cohomology
/// of an invariant ring of dimension `dim`.
pub fn lc_inference(grade: usize, height: usize, dim: usize, depth: usize) -> (Vec<Inference>, (usize, usize)) {
    let mut out = Vec::new();
    if grade > 0 {
        out.push(inference(format!("H^i_𝔞(R) = 0 for i < {grade}"), "§2.A"));
    }
    if grade == height {
        out.push(inference("H^i_𝔞(R) = 0 for all i < Ht".into(), "Prop 3.6"));
    } else if dim != 4 {
        out.push(inference("ℓ(H^i_𝔞(R)) = ∞ for some i < cd(𝔞)".into(), "Prop 3.6"));
    }
    // H^grade is nonzero, and in dimension four a nonzero H^i has infinite length
    if dim == 4 {
        out.push(inference(format!("ℓ(H{}_𝔞(R)) = ∞", superscript(grade)), "Cor 3.8"));
    }
    let cd = if height == dim {
        out.push(inference(format!("cd(𝔞) = {dim}"), "Fact 2.1(i)"));
        (dim, dim)
    } else {
        out.push(inference(format!("{height} ≤ cd(𝔞) ≤ {dim}"), "§2.A"));
        (height, dim)
    };
    if dim == 4 && depth < dim {
        out.push(inference(format!("ℓ(H{}_𝔪(R)) = ∞", superscript(depth)), "Example 3.9"));
    }
    (out, cd)
}

/// Rewrites an ideal of invariants given in the `x`-variables into `S'`.
pub fn ideal_in_generators(gens: &[Polynomial], p: &Presentation) -> Result<IdealSpec> {
    let ys = gens
        .iter()
        .map(|f| express_in_generators(f, p))
        .collect::<Result<Vec<_>>>()?;
    IdealSpec::new(p.ring(), ys)
}

/// Grade and height of `a` (in `S'`) with the inferred local cohomology
/// statements; `depth` is `depth R`.
pub fn grade_report(a: &IdealSpec, p: &Presentation, depth: usize, limits: &Limits) -> Result<GradeReport> {
    let dim = krull_dimension(p.relations()).ok_or(Error::UnitIdeal)?;
    let height = height_of_ideal(a, p, limits)?;
    let grade = grade_of_ideal(a, p, limits)?;
    if grade > height {
        return Err(Error::Inconsistent(format!("grade {grade} exceeds height {height}")));
    }
    let (inferences, cd_bounds) = lc_inference(grade, height, dim, depth);
    Ok(GradeReport {
        generators: a.generators().to_vec(),
        grade,
        height,
        dim,
        depth,
        cd_bounds,
        inferences,
    })
}

/// The image of the transfer, written in the generators, and its height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferHeight {
    pub generators: Vec<Polynomial>,
    pub height: usize,
    pub dim: usize,
    /// `height < dim R`, which must hold for modular representations.
    pub strict_bound_holds: bool,
}

/// Transfers of all `x`-monomials of degree at most `bound`, expressed in
/// the generators of `R`, and the height of the ideal they generate.
pub fn transfer_ideal_height(p: &Presentation, bound: u32, limits: &Limits) -> Result<TransferHeight> {
    let group = p.source_group();
    if !is_modular(group) {
        return Err(Error::NonModular { order: group.order() });
    }
    let ring = group.ring();
    let mut seen = HashSet::new();
    let mut images = Vec::new();
    for d in 1..=bound {
        for mono in ring.monomials_of_degree(d) {
            let t = transfer(&Polynomial::from_terms(ring, [(mono, 1)]), group)?;
            if t.is_zero() {
                continue;
            }
            let t = t.monic();
            if seen.insert(t.terms().to_vec()) {
                images.push(t);
            }
        }
    }
    let ys = images
        .iter()
        .map(|f| express_in_generators(f, p))
        .collect::<Result<Vec<_>>>()?;
    let a = IdealSpec::new(p.ring(), ys)?;
    let t = buchberger(&a, MonomialOrder::Grevlex, limits)?;
    let dim = krull_dimension(p.relations()).ok_or(Error::UnitIdeal)?;
    let height = height_of_ideal(&a, p, limits)?;
    Ok(TransferHeight {
        generators: t.elements().to_vec(),
        height,
        dim,
        strict_bound_holds: height < dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Ring};
    use crate::homology::resolution::resolve_quotient;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> GroebnerBasis {
        let gens = gens.iter().map(|g| Polynomial::parse(r, g).unwrap()).collect();
        buchberger(&IdealSpec::new(r, gens).unwrap(), MonomialOrder::Grevlex, &Limits::default()).unwrap()
    }

    fn spec(r: &Arc<Ring>, gens: &[&str]) -> IdealSpec {
        IdealSpec::new(r, gens.iter().map(|g| Polynomial::parse(r, g).unwrap()).collect()).unwrap()
    }

    fn depth_by_resolution(i: &GroebnerBasis) -> usize {
        let res = resolve_quotient(i, None, &Limits::default()).unwrap();
        i.ring().nvars() - res.length()
    }

    #[test]
    fn oracle_matches_auslander_buchsbaum_on_toys() {
        let r = Ring::standard(PrimeField::new(2).unwrap(), 3);
        for gens in [&[][..], &["x1*x2", "x1*x3"], &["x1^2"], &["x1", "x2", "x3"], &["x1*x2*x3"]] {
            let i = ideal(&r, gens);
            assert_eq!(depth_oracle_of_quotient(&i, &Limits::default()).unwrap(), depth_by_resolution(&i));
        }
        assert_eq!(depth_oracle_of_quotient(&ideal(&r, &["x1*x2", "x1*x3"]), &Limits::default()).unwrap(), 1);
    }

    #[test]
    fn grade_and_height_examples() {
        let lim = Limits::default();
        let r = Ring::standard(PrimeField::new(3).unwrap(), 3);
        let zero = ideal(&r, &[]);
        assert_eq!(grade_of_ideal_in(&spec(&r, &["x1^2 + x2*x3"]), &zero, &lim).unwrap(), 1);
        assert_eq!(height_of_ideal_in(&spec(&r, &[]), &zero, &lim).unwrap(), 0);
        assert_eq!(grade_of_ideal_in(&spec(&r, &[]), &zero, &lim).unwrap(), 0);
        let m = spec(&r, &["x1", "x2", "x3"]);
        assert_eq!(grade_of_ideal_in(&m, &zero, &lim).unwrap(), 3);
        assert_eq!(height_of_ideal_in(&m, &zero, &lim).unwrap(), 3);
        assert_eq!(grade_of_ideal_in(&spec(&r, &["x1", "x2"]), &ideal(&r, &["x1 - x2"]), &lim).unwrap(), 1);

        // R = k[x1,x2,x3]/(x1x2, x1x3): grade of the maximal ideal is the depth
        let i = ideal(&r, &["x1*x2", "x1*x3"]);
        assert_eq!(grade_of_ideal_in(&m, &i, &lim).unwrap(), 1);
        // (x2, x3) has height 1 here (it contains the component (x2, x3)) and grade 0
        assert_eq!(height_of_ideal_in(&spec(&r, &["x2", "x3"]), &i, &lim).unwrap(), 1);
        assert_eq!(grade_of_ideal_in(&spec(&r, &["x2", "x3"]), &i, &lim).unwrap(), 0);
    }

    #[test]
    fn unit_ideal_is_rejected() {
        let r = Ring::standard(PrimeField::new(2).unwrap(), 2);
        let i = ideal(&r, &["x1"]);
        let lim = Limits::default();
        assert_eq!(height_of_ideal_in(&spec(&r, &["1"]), &i, &lim), Err(Error::UnitIdeal));
    }

    #[test]
    fn inference_lines() {
        let (lines, cd) = lc_inference(2, 3, 4, 3);
        let text: Vec<String> = lines.iter().map(|l| l.to_string()).collect();
        assert!(text.contains(&"ℓ(H²_𝔞(R)) = ∞ (Cor 3.8)".to_string()));
        assert!(text.contains(&"ℓ(H³_𝔪(R)) = ∞ (Example 3.9)".to_string()));
        assert_eq!(cd, (3, 4));
        let (lines, cd) = lc_inference(2, 2, 2, 2);
        assert!(lines.iter().any(|l| l.statement == "H^i_𝔞(R) = 0 for all i < Ht"));
        assert!(lines.iter().any(|l| l.statement == "cd(𝔞) = 2"));
        assert_eq!(cd, (2, 2));
        assert_eq!(superscript(12), "¹²");
    }

    fn random_ideal(r: &Arc<Ring>, seed: &[(u32, Vec<u32>)]) -> IdealSpec {
        let gens = seed
            .iter()
            .map(|(d, c)| Polynomial::from_terms(r, r.monomials_of_degree(*d).into_iter().zip(c.iter().copied())))
            .filter(|p| !p.is_zero())
            .collect();
        IdealSpec::new(r, gens).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn grade_is_at_most_height(
            rel in proptest::collection::vec((2u32..=2, proptest::collection::vec(0u32..2, 6)), 0..2),
            a in proptest::collection::vec((1u32..=2, proptest::collection::vec(0u32..2, 6)), 1..3),
        ) {
            let r = Ring::standard(PrimeField::new(2).unwrap(), 3);
            let lim = Limits::default();
            let i = buchberger(&random_ideal(&r, &rel), MonomialOrder::Grevlex, &lim).unwrap();
            let a = random_ideal(&r, &a);
            match (grade_of_ideal_in(&a, &i, &lim), height_of_ideal_in(&a, &i, &lim)) {
                (Ok(g), Ok(h)) => prop_assert!(g <= h),
                (Err(Error::UnitIdeal), Err(Error::UnitIdeal)) => {}
                other => prop_assert!(false, "{:?}", other),
            }
        }

        #[test]
        fn koszul_grade_matches_ext_grade(
            rel in proptest::collection::vec((2u32..=2, proptest::collection::vec(0u32..2, 6)), 0..2),
            a in proptest::collection::vec((1u32..=2, proptest::collection::vec(0u32..2, 6)), 1..3),
        ) {
            let r = Ring::standard(PrimeField::new(2).unwrap(), 3);
            let lim = Limits::default();
            let i = buchberger(&random_ideal(&r, &rel), MonomialOrder::Grevlex, &lim).unwrap();
            let a = random_ideal(&r, &a);
            prop_assume!(!i.is_unit_ideal());
            let Ok(j) = sum_ideal(&a, &i, &lim) else { return Ok(()) };
            let h = height_of_ideal_in(&a, &i, &lim).unwrap();
            let res = resolve_quotient(&j, None, &lim).unwrap();
            let by_ext = grade_from_resolution(&res, &i, h, &lim).unwrap();
            prop_assert_eq!(Some(grade_of_ideal_in(&a, &i, &lim).unwrap()), by_ext);
        }

        #[test]
        fn depth_oracle_agrees(rel in proptest::collection::vec((2u32..=3, proptest::collection::vec(0u32..2, 10)), 0..3)) {
            let r = Ring::standard(PrimeField::new(2).unwrap(), 3);
            let lim = Limits::default();
            let i = buchberger(&random_ideal(&r, &rel), MonomialOrder::Grevlex, &lim).unwrap();
            prop_assume!(!i.is_unit_ideal());
            prop_assert_eq!(depth_oracle_of_quotient(&i, &lim).unwrap(), depth_by_resolution(&i));
        }
    }
}

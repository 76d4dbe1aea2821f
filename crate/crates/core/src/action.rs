//! Finite matrix groups acting linearly on polynomial rings, the classical
//! orbit operators, degree-wise fixed spaces, and cohomology of cyclic
//! groups acting on finite-dimensional modules.
//!
//! A matrix `M` acts on `F_p[x_1, ..., x_n]` by `x_i -> sum_j M[i][j] x_j`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use crate::algebra::{Echelon, Matrix, Monomial, Polynomial, PrimeField, Ring};
use crate::{par, Error, Result};

/// Groups up to this order get an exhaustive product/inverse check at
/// construction; larger ones rely on the closure argument alone.
const EXHAUSTIVE_CHECK_MAX: usize = 512;

/// A finite subgroup of `GL(n, F_p)` with its elements enumerated.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    ring: Arc<Ring>,
    elements: Vec<Matrix>,
    generator_indices: Vec<usize>,
}

impl MatrixGroup {
    /// Breadth-first closure of `generators` inside `GL(n, F_p)`. The
    /// identity is always element 0.
    pub fn closure(field: PrimeField, n: usize, generators: &[Matrix], cap: usize) -> Result<Self> {
        for g in generators {
            if g.nrows() != n || g.ncols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} generator for n = {n}",
                    g.nrows(),
                    g.ncols()
                )));
            }
            if g.field() != field {
                return Err(Error::AmbientMismatch("generator over a different field".into()));
            }
            if g.rank() < n {
                return Err(Error::SingularMatrix(field.characteristic()));
            }
        }
        let cap = cap.max(1);
        let id = Matrix::identity(field, n);
        let mut elements = vec![id.clone()];
        let mut seen: HashSet<Matrix> = HashSet::from([id]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for g in generators {
                let h = elements[k].mul(g);
                if seen.insert(h.clone()) {
                    if elements.len() == cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    elements.push(h);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let index: HashMap<&Matrix, usize> = elements.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let generator_indices = generators.iter().map(|g| index[g]).collect();
        let group = MatrixGroup {
            ring: Ring::standard(field, n),
            elements,
            generator_indices,
        };
        if group.order() <= EXHAUSTIVE_CHECK_MAX {
            group.check_closed()?;
        }
        Ok(group)
    }

    fn check_closed(&self) -> Result<()> {
        let set: HashSet<&Matrix> = self.elements.iter().collect();
        let ok = par::map(&self.elements, |a| {
            self.elements.iter().all(|b| set.contains(&a.mul(b)))
                && a.inverse().is_ok_and(|inv| set.contains(&inv))
        });
        if ok.into_iter().all(|x| x) {
            Ok(())
        } else {
            Err(Error::Inconsistent("group closure is not closed".into()))
        }
    }

    pub fn field(&self) -> PrimeField {
        self.ring.field()
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.field().characteristic()
    }

    pub fn n(&self) -> usize {
        self.ring.nvars()
    }

    /// The polynomial ring `F_p[x_1, ..., x_n]` the group acts on.
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn generators(&self) -> impl Iterator<Item = &Matrix> {
        self.generator_indices.iter().map(|&i| &self.elements[i])
    }

    /// Whether `p` divides `|G|`.
    pub fn is_modular(&self) -> bool {
        self.order().is_multiple_of(self.characteristic() as usize)
    }

    fn check_ambient(&self, f: &Polynomial) -> Result<()> {
        if f.ring().same_ambient(&self.ring) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch("polynomial is not over the group's ring".into()))
        }
    }

    /// Whether `g f = f` for every generator `g`.
    pub fn fixes(&self, f: &Polynomial) -> bool {
        self.generators().all(|g| &f.apply_linear_unchecked(g) == f)
    }
}

pub fn group_closure(field: PrimeField, n: usize, generators: &[Matrix], cap: usize) -> Result<MatrixGroup> {
    MatrixGroup::closure(field, n, generators, cap)
}

pub fn is_modular(group: &MatrixGroup) -> bool {
    group.is_modular()
}

/// The orbit sum `sum_g g f`.
pub fn transfer(f: &Polynomial, group: &MatrixGroup) -> Result<Polynomial> {
    group.check_ambient(f)?;
    let images = par::map(group.elements(), |g| f.apply_linear_unchecked(g));
    Ok(images
        .iter()
        .fold(Polynomial::zero(f.ring()), |acc, h| acc.add_scaled(h, 1, None)))
}

/// The orbit product `prod_g g f`.
pub fn norm(f: &Polynomial, group: &MatrixGroup) -> Result<Polynomial> {
    group.check_ambient(f)?;
    if !f.is_homogeneous() {
        return Err(Error::Inhomogeneous { index: 0 });
    }
    let images = par::map(group.elements(), |g| f.apply_linear_unchecked(g));
    Ok(images.iter().fold(Polynomial::one(f.ring()), |acc, h| &acc * h))
}

/// The averaging projection `|G|^{-1} tr(f)`; only defined when the action
/// is non-modular.
pub fn reynolds(f: &Polynomial, group: &MatrixGroup) -> Result<Polynomial> {
    if group.is_modular() {
        return Err(Error::ModularAction { order: group.order() });
    }
    let field = group.field();
    let inv = field.inv(field.from_i64(group.order() as i64))?;
    Ok(transfer(f, group)?.scale(inv))
}

/// A basis of the degree-`d` invariants, echelonized over the descending
/// monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantBasis {
    degree: u32,
    basis: Vec<Polynomial>,
    ambient_dim: usize,
}

impl InvariantBasis {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
}

/// Matrix (rows indexed by `monos`) of `v -> g v - v` on the span of
/// `monos`, one block of rows per matrix.
fn fixed_space_system(ring: &Arc<Ring>, monos: &[Monomial], matrices: &[&Matrix]) -> Matrix {
    let field = ring.field();
    let index: HashMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let size = monos.len();
    let mut rows = vec![vec![0u32; size]; size * matrices.len()];
    for (b, g) in matrices.iter().enumerate() {
        let columns = par::map(monos, |m| {
            Polynomial::monomial(ring, m.clone(), 1)
                .apply_linear_unchecked(g)
                .coordinates(monos, &index)
        });
        for (j, col) in columns.into_iter().enumerate() {
            for (i, c) in col.into_iter().enumerate() {
                let c = if i == j { field.sub(c, 1) } else { c };
                rows[b * size + i][j] = c;
            }
        }
    }
    Matrix::from_rows(field, rows).expect("canonical entries")
}

pub fn invariant_basis(group: &MatrixGroup, d: u32) -> InvariantBasis {
    let ring = group.ring();
    let monos = ring.monomials_of_degree(d);
    let gens: Vec<&Matrix> = group.generators().filter(|g| !g.is_identity()).collect();
    let kernel = if gens.is_empty() {
        Matrix::identity(ring.field(), monos.len())
    } else {
        fixed_space_system(ring, &monos, &gens).nullspace()
    };
    let basis = kernel
        .rows()
        .map(|row| Polynomial::from_coordinates(ring, &monos, row))
        .collect();
    InvariantBasis {
        degree: d,
        basis,
        ambient_dim: monos.len(),
    }
}

/// [`invariant_basis`] for every degree in `0..=max_degree`.
pub fn invariant_bases(group: &MatrixGroup, max_degree: u32) -> Vec<InvariantBasis> {
    par::map_range(max_degree as usize + 1, |d| invariant_basis(group, d as u32))
}

/// Invariant dimension in degree `d` computed from all group elements rather
/// than the generators.
pub fn invariant_dim_from_elements(group: &MatrixGroup, d: u32) -> usize {
    let ring = group.ring();
    let monos = ring.monomials_of_degree(d);
    let all: Vec<&Matrix> = group.elements().iter().collect();
    monos.len() - fixed_space_system(ring, &monos, &all).rank()
}

/// A cyclic group acting on `F_p^k` through the powers of one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicModule {
    generator_matrix: Matrix,
    order: u64,
}

/// Upper bound on the multiplicative order searched for.
const MAX_MATRIX_ORDER: u64 = 1 << 24;

fn matrix_order(m: &Matrix) -> Result<u64> {
    if m.rank() < m.nrows() {
        return Err(Error::SingularMatrix(m.field().characteristic()));
    }
    let mut power = m.clone();
    let mut k = 1;
    while !power.is_identity() {
        if k == MAX_MATRIX_ORDER {
            return Err(Error::ResourceLimit(format!("matrix order exceeds {MAX_MATRIX_ORDER}")));
        }
        power = power.mul(m);
        k += 1;
    }
    Ok(k)
}

impl CyclicModule {
    /// The group is the one generated by `matrix`, of order its
    /// multiplicative order.
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::InvalidModule("generator matrix is not square".into()));
        }
        let order = matrix_order(&matrix)?;
        Ok(CyclicModule {
            generator_matrix: matrix,
            order,
        })
    }

    /// A cyclic group of the declared `order` acting through `matrix`; the
    /// matrix order must divide it.
    pub fn with_order(matrix: Matrix, order: u64) -> Result<Self> {
        let m = Self::new(matrix)?;
        if order == 0 || !order.is_multiple_of(m.order) {
            return Err(Error::InvalidModule(format!(
                "declared order {order} is not a multiple of the matrix order {}",
                m.order
            )));
        }
        Ok(CyclicModule { order, ..m })
    }

    pub fn dim(&self) -> usize {
        self.generator_matrix.nrows()
    }

    pub fn generator_matrix(&self) -> &Matrix {
        &self.generator_matrix
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `sum_{j < order} g^j`.
    pub fn trace_matrix(&self) -> Matrix {
        let g = &self.generator_matrix;
        let field = g.field();
        // the powers repeat with the matrix period
        let period = matrix_order(g).expect("validated at construction");
        let mut sum = Matrix::zeros(field, self.dim(), self.dim());
        let mut power = Matrix::identity(field, self.dim());
        for _ in 0..period {
            sum = sum.add(&power);
            power = power.mul(g);
        }
        let copies = field.from_i64(((self.order / period) % field.characteristic() as u64) as i64);
        let mut out = Matrix::zeros(field, self.dim(), self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                out.set(i, j, field.mul(sum.get(i, j), copies));
            }
        }
        out
    }

    /// `g - 1`.
    pub fn difference_matrix(&self) -> Matrix {
        let field = self.generator_matrix.field();
        self.generator_matrix.sub(&Matrix::identity(field, self.dim()))
    }
}

/// Vectors of `kernel` (rows) completing a basis of `image` (rows) to one
/// of their joint span.
fn quotient_representatives(kernel: &Matrix, image: &Matrix) -> Vec<Vec<u32>> {
    let mut span = Echelon::new(kernel.field());
    for row in image.rows() {
        span.insert(row.to_vec());
    }
    kernel.rows().filter(|row| span.insert(row.to_vec())).map(<[u32]>::to_vec).collect()
}

/// Column space of `m` as the rows of an echelon matrix.
fn column_space(m: &Matrix) -> Matrix {
    m.transpose().rref().0
}

/// `H^i` of the cyclic group on `M`: its dimension and representatives of
/// a basis.
pub fn cyclic_cohomology(module: &CyclicModule, i: u32) -> (usize, Vec<Vec<u32>>) {
    let diff = module.difference_matrix();
    let field = diff.field();
    let k = module.dim();
    let (kernel, image) = match i {
        0 => (diff.nullspace(), Matrix::zeros(field, 0, k)),
        _ if i % 2 == 1 => (module.trace_matrix().nullspace(), column_space(&diff)),
        _ => (diff.nullspace(), column_space(&module.trace_matrix())),
    };
    let reps = quotient_representatives(&kernel, &image);
    (reps.len(), reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn shift(p: u64, n: usize) -> MatrixGroup {
        let perm: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let f = field(p);
        MatrixGroup::closure(f, n, &[Matrix::permutation(f, &perm)], 10_000).unwrap()
    }

    fn parse(g: &MatrixGroup, s: &str) -> Polynomial {
        Polynomial::parse(g.ring(), s).unwrap()
    }

    #[test]
    fn closure_examples() {
        let f2 = field(2);
        let triv = MatrixGroup::closure(f2, 3, &[Matrix::identity(f2, 3)], 10).unwrap();
        assert_eq!(triv.order(), 1);
        assert!(!triv.is_modular());
        let bertin = shift(2, 4);
        assert_eq!(bertin.order(), 4);
        assert!(bertin.is_modular());
        let s3 = MatrixGroup::closure(
            f2,
            3,
            &[Matrix::permutation(f2, &[1, 0, 2]), Matrix::permutation(f2, &[0, 2, 1])],
            10,
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!shift(2, 3).is_modular());
        assert!(shift(3, 3).is_modular());
    }

    #[test]
    fn closure_errors() {
        let f3 = field(3);
        let singular = Matrix::from_rows(f3, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(MatrixGroup::closure(f3, 2, &[singular], 10).unwrap_err(), Error::SingularMatrix(3));
        let f2 = field(2);
        let gl = [Matrix::permutation(f2, &[1, 2, 3, 0]), Matrix::permutation(f2, &[1, 0, 2, 3])];
        assert_eq!(MatrixGroup::closure(f2, 4, &gl, 5).unwrap_err(), Error::GroupTooLarge { cap: 5 });
    }

    #[test]
    fn transfer_and_norm_examples() {
        let swap = shift(2, 2);
        assert_eq!(transfer(&parse(&swap, "x1"), &swap).unwrap().to_string(), "x1 + x2");
        assert!(transfer(&parse(&swap, "x1*x2"), &swap).unwrap().is_zero());
        assert_eq!(norm(&parse(&swap, "x1"), &swap).unwrap().to_string(), "x1*x2");

        let bertin = shift(2, 4);
        assert_eq!(
            transfer(&parse(&bertin, "x1*x2"), &bertin).unwrap(),
            parse(&bertin, "x1*x2 + x2*x3 + x3*x4 + x4*x1")
        );
        assert_eq!(norm(&parse(&bertin, "x1"), &bertin).unwrap().to_string(), "x1*x2*x3*x4");

        let f5 = field(5);
        let triv = MatrixGroup::closure(f5, 2, &[Matrix::identity(f5, 2)], 10).unwrap();
        let f = parse(&triv, "x1^2 + 3*x1*x2");
        assert_eq!(norm(&f, &triv).unwrap(), f);
    }

    #[test]
    fn reynolds_examples() {
        let g = shift(2, 3);
        let x = parse(&g, "x1");
        assert_eq!(reynolds(&x, &g).unwrap(), parse(&g, "x1 + x2 + x3"));
        let inv = parse(&g, "x1*x2*x3");
        assert_eq!(reynolds(&inv, &g).unwrap(), inv);
        let b = shift(2, 4);
        assert_eq!(reynolds(&parse(&b, "x1"), &b), Err(Error::ModularAction { order: 4 }));
    }

    #[test]
    fn invariant_basis_examples() {
        let b = shift(2, 4);
        let d1 = invariant_basis(&b, 1);
        assert_eq!(d1.dim(), 1);
        assert_eq!(d1.basis()[0], parse(&b, "x1 + x2 + x3 + x4"));
        assert_eq!(invariant_basis(&b, 2).dim(), 3);
        let d0 = invariant_basis(&b, 0);
        assert_eq!(d0.dim(), 1);
        assert!(d0.basis()[0].is_constant());
        let dims: Vec<usize> = invariant_bases(&b, 6).iter().map(|ib| ib.dim()).collect();
        assert_eq!(dims, vec![1, 1, 3, 5, 10, 14, 22]);
    }

    /// Number of orbits of a permutation group on degree-`d` monomials.
    fn orbit_count(perms: &[Vec<usize>], n: usize, d: u32) -> usize {
        let ring = Ring::standard(field(2), n);
        let monos = ring.monomials_of_degree(d);
        let mut seen: HashSet<Vec<u16>> = HashSet::new();
        let mut orbits = 0;
        for m in monos {
            let start = m.exponents().to_vec();
            if seen.contains(&start) {
                continue;
            }
            orbits += 1;
            let mut stack = vec![start.clone()];
            seen.insert(start);
            while let Some(e) = stack.pop() {
                for p in perms {
                    // x_i -> x_{p[i]} moves exponent e_i to slot p[i]
                    let mut img = vec![0u16; n];
                    for i in 0..n {
                        img[p[i]] = e[i];
                    }
                    if seen.insert(img.clone()) {
                        stack.push(img);
                    }
                }
            }
        }
        orbits
    }

    fn module_strategy() -> impl Strategy<Value = (u64, Vec<Vec<u32>>)> {
        (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..=6).prop_flat_map(|(p, k)| {
            (Just(p), proptest::collection::vec(proptest::collection::vec(0u32..p as u32, k), k))
        })
    }

    #[test]
    fn cyclic_cohomology_examples() {
        let f2 = field(2);
        let id = CyclicModule::new(Matrix::identity(f2, 2)).unwrap();
        assert_eq!(cyclic_cohomology(&id, 0).0, 2);
        assert_eq!(cyclic_cohomology(&id, 1).0, 0);
        assert_eq!(cyclic_cohomology(&id, 2).0, 0);

        let swap = CyclicModule::new(Matrix::permutation(f2, &[1, 0])).unwrap();
        assert_eq!(swap.order(), 2);
        assert_eq!(swap.trace_matrix().to_rows(), vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(cyclic_cohomology(&swap, 1).0, 0);
        assert_eq!(cyclic_cohomology(&swap, 2).0, 0);

        let trivial = CyclicModule::with_order(Matrix::identity(f2, 1), 2).unwrap();
        assert!(trivial.trace_matrix().is_zero());
        assert_eq!(cyclic_cohomology(&trivial, 1), (1, vec![vec![1]]));
        assert_eq!(cyclic_cohomology(&trivial, 2).0, 1);
        assert!(CyclicModule::with_order(Matrix::permutation(f2, &[1, 0]), 3).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn orbit_operators_are_invariant(p in prop_oneof![Just(2u64), Just(3)],
                                        coeffs in proptest::collection::vec(0u32..2, 10),
                                        r_coeffs in proptest::collection::vec(0u32..2, 3)) {
            let g = shift(p, 3);
            let ring = g.ring().clone();
            let f = Polynomial::from_terms(&ring, ring.monomials_of_degree(2).into_iter().zip(coeffs));
            let t = transfer(&f, &g).unwrap();
            let nr = norm(&f, &g).unwrap();
            for h in g.elements() {
                prop_assert_eq!(&t.apply_matrix(h).unwrap(), &t);
                prop_assert_eq!(&nr.apply_matrix(h).unwrap(), &nr);
            }
            // r invariant of degree 1 or 3
            let inv = [parse(&g, "x1 + x2 + x3"), parse(&g, "x1*x2 + x2*x3 + x3*x1"), parse(&g, "x1*x2*x3")];
            let r = inv.iter().zip(&r_coeffs).fold(Polynomial::zero(&ring), |acc, (q, &c)| {
                if c == 0 { acc } else { &acc + &q.pow(6 / q.degree().unwrap()) }
            });
            prop_assert_eq!(transfer(&(&r * &f), &g).unwrap(), &r * &t);
            if f.is_homogeneous() && !f.is_zero() {
                let h = parse(&g, "x1 + 2*x2");
                prop_assert_eq!(norm(&(&f * &h), &g).unwrap(), &nr * &norm(&h, &g).unwrap());
            }
        }

        #[test]
        fn reynolds_is_a_projection(coeffs in proptest::collection::vec(0u32..2, 10)) {
            let g = shift(2, 3);
            let ring = g.ring().clone();
            let f = Polynomial::from_terms(&ring, ring.monomials_of_degree(3).into_iter().zip(coeffs));
            let r = reynolds(&f, &g).unwrap();
            prop_assert!(g.fixes(&r));
            prop_assert_eq!(reynolds(&r, &g).unwrap(), r);
        }

        #[test]
        fn permutation_invariants_count_orbits(p in prop_oneof![Just(2u64), Just(3), Just(5)], d in 0u32..6, which in 0usize..3) {
            let f = field(p);
            let perms: Vec<Vec<usize>> = match which {
                0 => vec![vec![1, 2, 3, 0]],
                1 => vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]],
                _ => vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]],
            };
            let mats: Vec<Matrix> = perms.iter().map(|q| Matrix::permutation(f, q)).collect();
            let g = MatrixGroup::closure(f, 4, &mats, 100).unwrap();
            let ib = invariant_basis(&g, d);
            prop_assert_eq!(ib.dim(), orbit_count(&perms, 4, d));
            prop_assert_eq!(ib.dim(), invariant_dim_from_elements(&g, d));
            for b in ib.basis() {
                for h in g.elements() {
                    prop_assert_eq!(&b.apply_matrix(h).unwrap(), b);
                }
            }
        }

        #[test]
        fn herbrand_quotient_is_trivial((p, rows) in module_strategy()) {
            let m = Matrix::from_rows(field(p), rows).unwrap();
            prop_assume!(m.rank() == m.nrows());
            let module = CyclicModule::new(m).unwrap();
            let (h1, reps1) = cyclic_cohomology(&module, 1);
            let (h2, _) = cyclic_cohomology(&module, 2);
            prop_assert_eq!(h1, h2);
            prop_assert_eq!(cyclic_cohomology(&module, 3).0, h1);
            let tr = module.trace_matrix();
            prop_assert_eq!(tr.rank() + tr.nullspace().nrows(), module.dim());
            // representatives of H^1 lie in ker(tr)
            for v in reps1 {
                let col = Matrix::from_rows(field(p), v.iter().map(|&x| vec![x]).collect()).unwrap();
                prop_assert!(tr.mul(&col).is_zero());
            }
        }

        #[test]
        fn cohomology_matches_brute_force((p, rows) in module_strategy()) {
            // enumerate the module when it is small enough
            let m = Matrix::from_rows(field(p), rows).unwrap();
            prop_assume!(m.rank() == m.nrows() && (p as usize).pow(m.nrows() as u32) <= 729);
            let module = CyclicModule::new(m.clone()).unwrap();
            let f = field(p);
            let k = m.nrows();
            let vectors: Vec<Vec<u32>> = (0..(p as usize).pow(k as u32))
                .map(|mut x| (0..k).map(|_| { let d = (x % p as usize) as u32; x /= p as usize; d }).collect())
                .collect();
            let apply = |a: &Matrix, v: &Vec<u32>| -> Vec<u32> {
                (0..k).map(|i| (0..k).fold(0, |s, j| f.add(s, f.mul(a.get(i, j), v[j])))).collect()
            };
            let diff = module.difference_matrix();
            let tr = module.trace_matrix();
            let count = |pred: &dyn Fn(&Vec<u32>) -> bool| vectors.iter().filter(|v| pred(v)).count();
            let zero = vec![0u32; k];
            let ker_diff = count(&|v| apply(&diff, v) == zero);
            let ker_tr = count(&|v| apply(&tr, v) == zero);
            let im_diff: HashSet<Vec<u32>> = vectors.iter().map(|v| apply(&diff, v)).collect();
            let im_tr: HashSet<Vec<u32>> = vectors.iter().map(|v| apply(&tr, v)).collect();
            let log = |x: usize| { let mut e = 0; let mut y = 1; while y < x { y *= p as usize; e += 1; } e };
            prop_assert_eq!(cyclic_cohomology(&module, 0).0, log(ker_diff));
            prop_assert_eq!(cyclic_cohomology(&module, 1).0, log(ker_tr) - log(im_diff.len()));
            prop_assert_eq!(cyclic_cohomology(&module, 2).0, log(ker_diff) - log(im_tr.len()));
        }
    }
}

use std::sync::Arc;

use crate::groebner::{FreeModule, HilbertSeries, Vector};
use crate::homology::resolution::{kernel, module_groebner, FreeResolution, ModuleBasis};
use crate::{par, Limits, Result};

/// `E_j = Ext^j_{S'}(S'/I, S')`, the homology of the dual resolution at
/// `F_j^*`.
#[derive(Debug, Clone)]
pub struct ExtModule {
    index: usize,
    series: HilbertSeries,
    dimension: Option<usize>,
    annihilated: bool,
}

impl ExtModule {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        &self.series
    }

    /// Krull dimension, `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        self.dimension
    }

    /// Krull dimension with `-1` standing for the zero module.
    pub fn dimension_or_neg(&self) -> i64 {
        self.dimension.map_or(-1, |d| d as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.dimension.is_none()
    }

    pub fn is_finite_length(&self) -> bool {
        self.dimension.is_none_or(|d| d == 0)
    }

    /// Whether every variable kills every element.
    pub fn is_annihilated_by_irrelevant(&self) -> bool {
        self.annihilated
    }
}

/// Flags of `H^i_m(R)`, read from its graded dual `E_{m-i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LcEntry {
    pub zero: bool,
    pub finite_length: bool,
    pub irrelevant_annihilated: bool,
}

/// `E_0, ..., E_m` for `R = S'/I`.
#[derive(Debug, Clone)]
pub struct ExtTable {
    nvars: usize,
    dim: usize,
    entries: Vec<ExtModule>,
}

impl ExtTable {
    /// Number of variables of `S'`.
    pub fn m(&self) -> usize {
        self.nvars
    }

    /// `dim R`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[ExtModule] {
        &self.entries
    }

    pub fn entry(&self, j: usize) -> &ExtModule {
        &self.entries[j]
    }

    /// `c = m - dim R`.
    pub fn codimension(&self) -> usize {
        self.nvars - self.dim
    }

    /// `H^i_m(R)` for `i = 0..=dim`.
    pub fn lc_table(&self) -> Vec<LcEntry> {
        (0..=self.dim)
            .map(|i| {
                let e = &self.entries[self.nvars - i];
                LcEntry {
                    zero: e.is_zero(),
                    finite_length: e.is_finite_length(),
                    irrelevant_annihilated: e.is_annihilated_by_irrelevant(),
                }
            })
            .collect()
    }
}

/// `sum_i t^{d_i} / prod (1 - t^w)`.
pub(crate) fn free_series(module: &FreeModule) -> HilbertSeries {
    HilbertSeries::of_monomial_module(module.degrees(), &[], module.ring().weights())
}

/// The dual of `F_j`, with a degree-compatible order: only Hilbert series
/// and membership are needed there, never elimination.
pub(crate) fn dual_module(res: &FreeResolution, j: usize) -> Arc<FreeModule> {
    let m = res.module(j);
    FreeModule::top(res.ring(), m.degrees().iter().map(|d| -d).collect())
}

/// Columns of `D_j^T` as elements of [`dual_module`]`(res, j)`.
pub(crate) fn dual_boundaries(res: &FreeResolution, j: usize, dual: &Arc<FreeModule>) -> Vec<Vector> {
    if j == 0 {
        return Vec::new();
    }
    res.differential(j)
        .transpose()
        .columns()
        .iter()
        .map(|c| c.in_module(dual))
        .collect()
}

/// `E_j = N / L` with `L = im D_j^T` and `N = ker D_{j+1}^T`. Since
/// `F_j^* / N ≅ im D_{j+1}^T`, the Hilbert series only needs the images:
/// `HS(E_j) = HS(F_j^*/L_j) - HS(F_{j+1}^*) + HS(F_{j+1}^*/L_{j+1})`.
/// Generators of `N` are computed only when the annihilation flag is not
/// already decided by the dimension.
fn ext_module(res: &FreeResolution, j: usize, images: &[ModuleBasis], limits: &Limits) -> Result<ExtModule> {
    let ring = res.ring();
    let mut series = images[j].quotient_series();
    if j < res.length() {
        series = series
            .sub(&free_series(&dual_module(res, j + 1)))
            .add(&images[j + 1].quotient_series());
    }
    let dimension = series.dimension();
    let annihilated = match dimension {
        None => true,
        Some(d) if d > 0 => false,
        Some(_) => {
            let cycles = if j < res.length() {
                let dual = dual_module(res, j);
                kernel(&res.differential(j + 1).transpose(), None, limits)?
                    .elements()
                    .iter()
                    .map(|v| v.in_module(&dual))
                    .collect()
            } else {
                let dual = dual_module(res, j);
                (0..dual.rank()).map(|c| Vector::unit(&dual, c)).collect::<Vec<_>>()
            };
            cycles.iter().all(|g| {
                (0..ring.nvars()).all(|i| images[j].contains(&g.mul_term(&ring.variable_monomial(i), 1)))
            })
        }
    };
    Ok(ExtModule {
        index: j,
        series,
        dimension,
        annihilated,
    })
}

fn zero_ext(ring: &Arc<crate::algebra::Ring>, j: usize) -> ExtModule {
    ExtModule {
        index: j,
        series: HilbertSeries::zero(ring.weights().to_vec()),
        dimension: None,
        annihilated: true,
    }
}

/// The Ext table of `R = S'/I` from a minimal resolution of `S'/I`. The
/// image bases and the modules at different `j` are computed concurrently.
///
/// `E_j` vanishes for `j < c = m - dim R` because `S'` is Cohen-Macaulay,
/// so `grade(I, S') = ht I = c`; those entries are not computed.
pub fn ext_table_of(res: &FreeResolution, dim: usize, limits: &Limits) -> Result<ExtTable> {
    let ring = res.ring();
    let m = ring.nvars();
    let c = m - dim;
    let len = res.length();
    let mut images: Vec<Option<ModuleBasis>> = par::map_range(len + 1, |j| {
        (j >= c).then(|| {
            let dual = dual_module(res, j);
            module_groebner(&dual, &dual_boundaries(res, j, &dual), limits)
        })
        .transpose()
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let images: Vec<ModuleBasis> = images
        .iter_mut()
        .map(|b| b.take().unwrap_or_else(|| ModuleBasis::empty(&FreeModule::top(ring, Vec::new()))))
        .collect();
    let computed: Vec<ExtModule> = par::map_range(len + 1, |j| {
        if j < c {
            Ok(zero_ext(ring, j))
        } else {
            ext_module(res, j, &images, limits)
        }
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut entries = computed;
    for j in entries.len()..=m {
        entries.push(zero_ext(ring, j));
    }
    Ok(ExtTable {
        nvars: m,
        dim,
        entries,
    })
}

/// Serre's `S(k)` via the Ext-codimension criterion: `dim E_j <= m - j - k`
/// for every `j > m - dim R`.
pub fn serre_condition(table: &ExtTable, k: usize) -> bool {
    let m = table.m() as i64;
    (table.codimension() + 1..=table.m()).all(|j| match table.entry(j).dimension() {
        None => true,
        Some(d) => d as i64 <= m - j as i64 - k as i64,
    })
}

/// `dim loc(cmdef > t) = max { dim E_j : j > c + t }`, `-1` when empty.
pub fn cm_defect_locus_dim(table: &ExtTable, t: usize) -> i64 {
    (table.codimension() + t + 1..=table.m())
        .map(|j| table.entry(j).dimension_or_neg())
        .max()
        .unwrap_or(-1)
}

/// Verdicts read off the local cohomology flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcVerdicts {
    pub is_generalized_cm: bool,
    pub is_quasi_buchsbaum: bool,
    /// Quasi-Buchsbaum with `H^i_m(R) = 0` outside `{depth, dim}`, which
    /// suffices for Buchsbaum.
    pub buchsbaum_criterion: bool,
    /// Least `i` with `H^i_m(R)` not of finite length.
    pub f_irrelevant: usize,
    /// `(grade(m), f_m, Ht(m), cd(m), dim)`.
    pub chain: [usize; 5],
}

pub fn lc_verdicts(table: &ExtTable) -> LcVerdicts {
    let lc = table.lc_table();
    let dim = table.dim();
    let below = &lc[..dim];
    let depth = lc.iter().position(|e| !e.zero).unwrap_or(dim);
    let is_generalized_cm = below.iter().all(|e| e.finite_length);
    let is_quasi_buchsbaum = below.iter().all(|e| e.irrelevant_annihilated);
    let buchsbaum_criterion = is_quasi_buchsbaum
        && lc
            .iter()
            .enumerate()
            .all(|(i, e)| e.zero || i == depth || i == dim);
    let f_irrelevant = lc.iter().position(|e| !e.finite_length).unwrap_or(dim);
    LcVerdicts {
        is_generalized_cm,
        is_quasi_buchsbaum,
        buchsbaum_criterion,
        f_irrelevant,
        chain: [depth, f_irrelevant, dim, dim, dim],
    }
}

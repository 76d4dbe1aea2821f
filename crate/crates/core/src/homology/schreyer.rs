//! Schreyer resolutions: syzygies read off from S-pair reductions of a
//! Gröbner basis, which are again a Gröbner basis for the induced order,
//! followed by cancellation of unit entries.

use std::sync::Arc;

use log::debug;

use crate::algebra::{Monomial, Ring};
use crate::groebner::{reduce_with_quotients, FreeModule, ModuleOrder, Term, Vector};
use crate::{par, Error, Limits, Result};

/// A (typically non-minimal) free resolution: `columns[k]` holds the images
/// of the generators of `modules[k + 1]` in `modules[k]`.
pub(crate) struct Frame {
    pub modules: Vec<Arc<FreeModule>>,
    pub columns: Vec<Vec<Vector>>,
    /// False when the construction stopped at the length cap.
    pub complete: bool,
}

/// Per-generator data of a Schreyer module needed to induce the next order.
struct Level {
    module: Arc<FreeModule>,
    totals: Vec<Monomial>,
    paths: Vec<Vec<u32>>,
}

/// Sorts a Gröbner basis so that within each component the leading
/// monomials decrease lexicographically; this makes the frame terminate
/// within `nvars` steps.
fn sort_for_frame(basis: &mut [Vector]) {
    basis.sort_by(|a, b| {
        let (ca, ma, _) = a.lead().unwrap();
        let (cb, mb, _) = b.lead().unwrap();
        ca.cmp(cb).then_with(|| mb.exponents().cmp(ma.exponents()))
    });
}

fn next_level(ring: &Arc<Ring>, below: &Level, basis: &[Vector]) -> Level {
    let mut totals = Vec::with_capacity(basis.len());
    let mut paths = Vec::with_capacity(basis.len());
    for (i, g) in basis.iter().enumerate() {
        let (c, m, _) = g.lead().unwrap();
        totals.push(m.mul(&below.totals[*c as usize]));
        let mut path = below.paths[*c as usize].clone();
        path.push(i as u32);
        paths.push(path);
    }
    let degrees = basis.iter().map(|g| g.degree().unwrap()).collect();
    let module = FreeModule::new(
        ring,
        degrees,
        ModuleOrder::Schreyer {
            lead: totals.clone(),
            path: paths.clone(),
        },
    );
    Level { module, totals, paths }
}

/// Syzygies of the sorted Gröbner basis `basis` (elements of the module one
/// level down), as elements of `level.module`.
fn schreyer_syzygies(ring: &Arc<Ring>, level: &Level, basis: &[Vector]) -> Result<Vec<Vector>> {
    let weights = ring.weights();
    let leads: Vec<(u32, &Monomial)> = basis
        .iter()
        .map(|g| {
            let (c, m, _) = g.lead().unwrap();
            (*c, m)
        })
        .collect();
    // for each i, the minimal generators of (lcm(n_i, n_j) / n_i : j > i)
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();
    for i in 0..basis.len() {
        let (ci, ni) = leads[i];
        let mut cands: Vec<(usize, Monomial)> = (i + 1..basis.len())
            .take_while(|&j| leads[j].0 == ci)
            .map(|j| (j, ni.quotient_of(&ni.lcm(leads[j].1, weights))))
            .collect();
        cands.sort_by_key(|(j, q)| (q.degree(), *j));
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (j, q) in cands {
            if !kept.iter().any(|(_, k)| k.divides(&q)) {
                kept.push((j, q));
            }
        }
        pairs.extend(kept.into_iter().map(|(j, q)| (i, j, q)));
    }
    let field = ring.field();
    par::try_map(&pairs, |(i, j, q)| {
        let (gi, gj) = (&basis[*i], &basis[*j]);
        let qj = leads[*j].1.quotient_of(&leads[*i].1.mul(q));
        let s = gi.mul_term(q, 1).add_scaled(gj, field.neg(1), Some(&qj));
        let (rem, quotients) = reduce_with_quotients(&s, basis);
        if !rem.is_zero() {
            return Err(Error::Inconsistent("S-vector of a Gröbner basis did not reduce to zero".into()));
        }
        let mut terms: Vec<Term> = vec![(*i as u32, q.clone(), 1), (*j as u32, qj, field.neg(1))];
        terms.extend(
            quotients
                .into_iter()
                .map(|qt| (qt.index as u32, qt.mono, field.neg(qt.coef))),
        );
        Ok(Vector::from_terms(&level.module, terms))
    })
}

/// The Schreyer frame of `S'/J` for the Gröbner basis `generators` of `J`
/// (given as elements of the rank one module `f0`), with at most `cap`
/// differentials.
pub(crate) fn schreyer_frame(
    f0: &Arc<FreeModule>,
    generators: Vec<Vector>,
    cap: usize,
    limits: &Limits,
) -> Result<Frame> {
    let ring = f0.ring().clone();
    let mut level = Level {
        module: f0.clone(),
        totals: vec![ring.one_monomial()],
        paths: vec![Vec::new()],
    };
    let mut modules = vec![f0.clone()];
    let mut columns: Vec<Vec<Vector>> = Vec::new();
    let mut basis = generators;
    while !basis.is_empty() {
        if columns.len() == cap {
            return Ok(Frame {
                modules,
                columns,
                complete: false,
            });
        }
        if basis.len() > limits.max_basis {
            return Err(Error::ResourceLimit(format!(
                "resolution rank {} exceeds {}",
                basis.len(),
                limits.max_basis
            )));
        }
        sort_for_frame(&mut basis);
        let next = next_level(&ring, &level, &basis);
        debug!("frame level {}: rank {}", columns.len() + 1, basis.len());
        let syz = schreyer_syzygies(&ring, &next, &basis)?;
        modules.push(next.module.clone());
        columns.push(basis);
        level = next;
        basis = syz;
    }
    Ok(Frame {
        modules,
        columns,
        complete: true,
    })
}

/// Cancels unit entries of a frame until none remain. Returns the degrees
/// of the surviving generators and the differentials over position-over-term
/// modules.
pub(crate) fn prune(ring: &Arc<Ring>, frame: Frame) -> (Vec<Arc<FreeModule>>, Vec<Vec<Vector>>) {
    let field = ring.field();
    let len = frame.columns.len();
    let degrees: Vec<Vec<i32>> = frame.modules.iter().map(|m| m.degrees().to_vec()).collect();
    let pot: Vec<Arc<FreeModule>> = degrees.iter().map(|d| FreeModule::pot(ring, d.clone())).collect();
    let mut alive: Vec<Vec<bool>> = degrees.iter().map(|d| vec![true; d.len()]).collect();
    let mut cols: Vec<Vec<Option<Vector>>> = frame
        .columns
        .into_iter()
        .enumerate()
        .map(|(k, cs)| {
            cs.into_iter()
                .map(|c| Some(Vector::from_terms(&pot[k], c.into_terms())))
                .collect()
        })
        .collect();

    for k in 0..len {
        // rows killed while pruning the previous differential
        for c in cols[k].iter_mut().flatten() {
            if c.terms().iter().any(|t| !alive[k][t.0 as usize]) {
                let terms = c.terms().iter().filter(|t| alive[k][t.0 as usize]).cloned().collect();
                *c = Vector::from_terms(&pot[k], terms);
            }
        }
        let mut changed = true;
        while changed {
            changed = false;
            for c in 0..cols[k].len() {
                let Some(col) = &cols[k][c] else { continue };
                let Some(&(r, _, u)) = col.terms().iter().find(|t| t.1.is_one()) else {
                    continue;
                };
                let col = cols[k][c].take().unwrap();
                let uinv = field.inv_nonzero(u);
                for other in cols[k].iter_mut().flatten() {
                    let a = other.component(r as usize);
                    if !a.is_zero() {
                        *other = other.add_scaled(&col.mul_poly(&a), field.neg(uinv), None);
                    }
                }
                alive[k + 1][c] = false;
                alive[k][r as usize] = false;
                changed = true;
            }
        }
    }

    // renumber the survivors
    let index: Vec<Vec<Option<u32>>> = alive
        .iter()
        .map(|a| {
            let mut next = 0u32;
            a.iter()
                .map(|&x| {
                    x.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let modules: Vec<Arc<FreeModule>> = degrees
        .iter()
        .zip(&alive)
        .map(|(d, a)| FreeModule::pot(ring, d.iter().zip(a).filter(|(_, &x)| x).map(|(d, _)| *d).collect()))
        .collect();
    let mut differentials = Vec::with_capacity(len);
    for k in 0..len {
        let cs: Vec<Vector> = cols[k]
            .iter()
            .enumerate()
            .filter(|(c, _)| alive[k + 1][*c])
            .filter_map(|(_, c)| c.as_ref())
            .map(|c| {
                let terms = c
                    .terms()
                    .iter()
                    .filter_map(|(r, m, a)| index[k][*r as usize].map(|r| (r, m.clone(), *a)))
                    .collect();
                Vector::from_terms(&modules[k], terms)
            })
            .collect();
        differentials.push(cs);
    }
    // trailing zero modules carry no information
    let mut modules = modules;
    while differentials.last().is_some_and(|d| d.is_empty()) {
        differentials.pop();
        modules.pop();
    }
    (modules, differentials)
}

//! Division and Buchberger's algorithm on free-module elements.

use std::cmp::Ordering;
use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use super::module::{axpy, FreeModule, Term, Vector};
use crate::algebra::Monomial;
use crate::{Error, Limits, Result};

/// One step `coef * mono * basis[index]` of a division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub index: usize,
    pub mono: Monomial,
    pub coef: u32,
}

/// Lead-term lookup over a list of divisors.
pub(crate) struct Divisors<'a> {
    basis: &'a [Vector],
    by_comp: Vec<Vec<usize>>,
}

impl<'a> Divisors<'a> {
    pub(crate) fn new(module: &FreeModule, basis: &'a [Vector]) -> Self {
        let mut by_comp = vec![Vec::new(); module.rank()];
        for (i, g) in basis.iter().enumerate() {
            if let Some((c, _, _)) = g.lead() {
                by_comp[*c as usize].push(i);
            }
        }
        Divisors { basis, by_comp }
    }

    #[inline]
    fn find(&self, comp: u32, m: &Monomial) -> Option<usize> {
        self.by_comp[comp as usize]
            .iter()
            .copied()
            .find(|&i| self.basis[i].lead().unwrap().1.divides(m))
    }

    /// Reduces `f`. With `full` every term is reduced, otherwise only the
    /// leading term chain. Quotients are recorded when requested.
    pub(crate) fn reduce_terms(
        &self,
        module: &FreeModule,
        f: Vec<Term>,
        full: bool,
        mut quotients: Option<&mut Vec<Quotient>>,
    ) -> Vec<Term> {
        let field = module.ring().field();
        let mut acc = Geobucket::new(module);
        acc.add(f.into_iter().rev().collect());
        let mut rem: Vec<Term> = Vec::new();
        while let Some((c, m, a)) = acc.pop_lead() {
            match self.find(c, &m) {
                Some(k) => {
                    let g = &self.basis[k];
                    let (_, gm, ga) = g.lead().unwrap();
                    let q = gm.quotient_of(&m);
                    let coef = field.mul(a, field.inv_nonzero(*ga));
                    let neg = field.neg(coef);
                    let tail = g.terms()[1..]
                        .iter()
                        .rev()
                        .map(|(gc, gm, x)| (*gc, gm.mul(&q), field.mul(*x, neg)))
                        .collect();
                    acc.add(tail);
                    if let Some(qs) = quotients.as_deref_mut() {
                        qs.push(Quotient {
                            index: k,
                            mono: q,
                            coef,
                        });
                    }
                }
                None => {
                    rem.push((c, m, a));
                    if !full {
                        rem.extend(acc.into_descending());
                        break;
                    }
                }
            }
        }
        rem
    }
}

/// Sum of sparse vectors kept as buckets of geometrically growing size;
/// each bucket is sorted ascending so the leading term sits at the end.
struct Geobucket<'a> {
    module: &'a FreeModule,
    buckets: Vec<Vec<Term>>,
}

const BUCKET_BASE: usize = 8;

fn bucket_capacity(i: usize) -> usize {
    BUCKET_BASE << (2 * i)
}

impl<'a> Geobucket<'a> {
    fn new(module: &'a FreeModule) -> Self {
        Geobucket {
            module,
            buckets: Vec::new(),
        }
    }

    /// Adds an ascending list of terms.
    fn add(&mut self, mut p: Vec<Term>) {
        if p.is_empty() {
            return;
        }
        let mut i = 0;
        while bucket_capacity(i) < p.len() {
            i += 1;
        }
        loop {
            if self.buckets.len() <= i {
                self.buckets.resize_with(i + 1, Vec::new);
            }
            if !self.buckets[i].is_empty() {
                let b = std::mem::take(&mut self.buckets[i]);
                p = merge_ascending(self.module, b, p);
            }
            if p.len() <= bucket_capacity(i) {
                self.buckets[i] = p;
                return;
            }
            i += 1;
        }
    }

    fn pop_lead(&mut self) -> Option<Term> {
        let field = self.module.ring().field();
        loop {
            let mut best: Option<usize> = None;
            for i in 0..self.buckets.len() {
                let Some(t) = self.buckets[i].last() else {
                    continue;
                };
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        let h = self.buckets[b].last().unwrap();
                        match self.module.cmp_terms(t.0, &t.1, h.0, &h.1) {
                            Ordering::Greater => best = Some(i),
                            Ordering::Equal => {
                                let (_, _, x) = self.buckets[i].pop().unwrap();
                                let h = self.buckets[b].last_mut().unwrap();
                                h.2 = field.add(h.2, x);
                            }
                            Ordering::Less => {}
                        }
                    }
                }
            }
            let t = self.buckets[best?].pop().unwrap();
            if t.2 != 0 {
                return Some(t);
            }
        }
    }

    fn into_descending(mut self) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        for b in std::mem::take(&mut self.buckets) {
            out = merge_ascending(self.module, out, b);
        }
        out.reverse();
        out
    }
}

/// Sum of two ascending term lists.
fn merge_ascending(module: &FreeModule, a: Vec<Term>, b: Vec<Term>) -> Vec<Term> {
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    let field = module.ring().field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut a = a.into_iter().peekable();
    let mut b = b.into_iter().peekable();
    while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
        match module.cmp_terms(x.0, &x.1, y.0, &y.1) {
            Ordering::Less => out.push(a.next().unwrap()),
            Ordering::Greater => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (c, m, xa) = a.next().unwrap();
                let (_, _, xb) = b.next().unwrap();
                let s = field.add(xa, xb);
                if s != 0 {
                    out.push((c, m, s));
                }
            }
        }
    }
    out.extend(a);
    out.extend(b);
    out
}

/// Full normal form of `f` modulo `basis`.
pub fn reduce(f: &Vector, basis: &[Vector]) -> Vector {
    let module = f.module().clone();
    let div = Divisors::new(&module, basis);
    let terms = div.reduce_terms(&module, f.terms().to_vec(), true, None);
    Vector::from_sorted(&module, terms)
}

/// Full normal form together with the division quotients, so that
/// `f = sum coef * mono * basis[index] + remainder`.
pub fn reduce_with_quotients(f: &Vector, basis: &[Vector]) -> (Vector, Vec<Quotient>) {
    let module = f.module().clone();
    let div = Divisors::new(&module, basis);
    let mut qs = Vec::new();
    let terms = div.reduce_terms(&module, f.terms().to_vec(), true, Some(&mut qs));
    (Vector::from_sorted(&module, terms), qs)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
}

enum Item {
    Pair(Pair),
    Input(usize),
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
///
/// Work is processed by increasing degree; within a degree, S-pairs are
/// taken in increasing order of their lcm term (normal strategy), so the
/// output is deterministic. Redundant pairs are discarded with the
/// Gebauer–Möller criteria; the coprime-lead criterion is only used for
/// rank-one modules.
pub fn buchberger_module(
    module: &Arc<FreeModule>,
    gens: &[Vector],
    limits: &Limits,
) -> Result<Vec<Vector>> {
    Ok(buchberger_extended(module, &[], gens, limits)?.basis)
}

/// Output of [`buchberger_extended`].
#[derive(Debug, Clone)]
pub struct GroebnerRun {
    /// Reduced Gröbner basis of `base + <gens>`.
    pub basis: Vec<Vector>,
    /// Indices of the inputs that were not in the submodule generated by
    /// `base`, the inputs of lower degree and the earlier inputs of the
    /// same degree: a minimal generating set modulo `base`.
    pub minimal_inputs: Vec<usize>,
}

/// Buchberger's algorithm seeded with `base`, which must already be a
/// Gröbner basis (no pairs among its elements are formed).
pub fn buchberger_extended(
    module: &Arc<FreeModule>,
    base: &[Vector],
    gens: &[Vector],
    limits: &Limits,
) -> Result<GroebnerRun> {
    for (index, g) in base.iter().chain(gens).enumerate() {
        if g.module().as_ref() != module.as_ref() {
            return Err(Error::AmbientMismatch("generator in another module".into()));
        }
        if !g.is_homogeneous() {
            return Err(Error::Inhomogeneous { index });
        }
    }
    let rank_one = module.rank() == 1;
    let weights = module.ring().weights().to_vec();
    let base_degree = module.degrees().iter().copied().min().unwrap_or(0);

    let mut basis: Vec<Vector> = base.iter().filter(|b| !b.is_zero()).map(Vector::monic).collect();
    let mut minimal_inputs = Vec::new();
    let mut queue: BTreeMap<i32, Vec<Item>> = BTreeMap::new();
    for (k, g) in gens.iter().enumerate() {
        if let Some(d) = g.degree() {
            queue.entry(d).or_default().push(Item::Input(k));
        }
    }

    while let Some((&deg, _)) = queue.iter().next() {
        if (deg - base_degree) as i64 > limits.max_degree as i64 {
            return Err(Error::ResourceLimit(format!(
                "S-pair degree {} exceeds {}",
                deg - base_degree,
                limits.max_degree
            )));
        }
        let mut batch = queue.remove(&deg).unwrap();
        // pairs first, by lcm term; then inputs in the given order
        let key = |it: &Item| -> (bool, u32, Monomial, usize, usize) {
            match it {
                Item::Pair(p) => (false, p.comp, p.lcm.clone(), p.i, p.j),
                Item::Input(k) => (true, 0, module.ring().one_monomial(), 0, *k),
            }
        };
        batch.sort_by(|a, b| {
            let (ia, ca, ma, xa, ya) = key(a);
            let (ib, cb, mb, xb, yb) = key(b);
            ia.cmp(&ib)
                .then_with(|| {
                    if ia {
                        std::cmp::Ordering::Equal
                    } else {
                        module.cmp_terms(ca, &ma, cb, &mb)
                    }
                })
                .then_with(|| (xa, ya).cmp(&(xb, yb)))
        });
        let mut batch: VecDeque<Item> = batch.into();
        while let Some(item) = batch.pop_front() {
            let s = match &item {
                Item::Input(k) => gens[*k].terms().to_vec(),
                Item::Pair(p) => spair(module, &basis[p.i], &basis[p.j], &p.lcm),
            };
            let div = Divisors::new(module, &basis);
            let h = div.reduce_terms(module, s, true, None);
            if h.is_empty() {
                continue;
            }
            if let Item::Input(k) = item {
                minimal_inputs.push(k);
            }
            let h = Vector::from_sorted(module, h).monic();
            if basis.len() + 1 > limits.max_basis {
                return Err(Error::ResourceLimit(format!(
                    "Gröbner basis exceeds {} elements",
                    limits.max_basis
                )));
            }
            basis.push(h);
            let t = basis.len() - 1;
            update_pairs(&basis, t, rank_one, &weights, module, &mut queue, &mut batch);
        }
    }

    Ok(GroebnerRun {
        basis: interreduce(module, basis),
        minimal_inputs,
    })
}

fn spair(module: &FreeModule, g: &Vector, h: &Vector, lcm: &Monomial) -> Vec<Term> {
    let field = module.ring().field();
    let (_, gm, _) = g.lead().unwrap();
    let (_, hm, _) = h.lead().unwrap();
    let qg = gm.quotient_of(lcm);
    let qh = hm.quotient_of(lcm);
    let a = g.mul_term(&qg, 1);
    axpy(module, a.terms(), h.terms(), field.neg(1), Some(&qh))
}

/// Gebauer–Möller update after `basis[t]` was added.
fn update_pairs(
    basis: &[Vector],
    t: usize,
    rank_one: bool,
    weights: &[u32],
    module: &FreeModule,
    queue: &mut BTreeMap<i32, Vec<Item>>,
    batch: &mut VecDeque<Item>,
) {
    let (hc, hm, _) = basis[t].lead().unwrap().clone();
    let candidates: Vec<(usize, Monomial, bool)> = (0..t)
        .filter(|&i| basis[i].lead().unwrap().0 == hc)
        .map(|i| {
            let gm = &basis[i].lead().unwrap().1;
            (i, gm.lcm(&hm, weights), rank_one && gm.is_coprime(&hm))
        })
        .collect();

    // Keep a new pair unless another new pair's lcm divides its lcm; among
    // equal lcms keep one, preferring a coprime one so it can be dropped.
    let mut kept: Vec<usize> = Vec::new();
    for (idx, (_, l, coprime)) in candidates.iter().enumerate() {
        let dominated = !coprime
            && (candidates[idx + 1..]
                .iter()
                .any(|(_, l2, _)| l2.divides(l))
                || kept.iter().any(|&k| candidates[k].1.divides(l)));
        if !dominated {
            kept.push(idx);
        }
    }

    let lcm_with_h = |i: usize| -> Option<Monomial> {
        let (c, m, _) = basis[i].lead().unwrap();
        (*c == hc).then(|| m.lcm(&hm, weights))
    };
    let survives = |p: &Pair| -> bool {
        if p.comp != hc || !hm.divides(&p.lcm) {
            return true;
        }
        lcm_with_h(p.i).as_ref() == Some(&p.lcm) || lcm_with_h(p.j).as_ref() == Some(&p.lcm)
    };
    for items in queue.values_mut() {
        items.retain(|it| match it {
            Item::Pair(p) => survives(p),
            Item::Input(_) => true,
        });
    }
    batch.retain(|it| match it {
        Item::Pair(p) => survives(p),
        Item::Input(_) => true,
    });

    for idx in kept {
        let (i, lcm, coprime) = &candidates[idx];
        if *coprime {
            continue;
        }
        let deg = module.term_degree(hc, lcm);
        queue.entry(deg).or_default().push(Item::Pair(Pair {
            i: *i,
            j: t,
            comp: hc,
            lcm: lcm.clone(),
        }));
    }
}

/// Minimalizes and tail-reduces a Gröbner basis; output sorted by
/// increasing leading term.
fn interreduce(module: &Arc<FreeModule>, mut basis: Vec<Vector>) -> Vec<Vector> {
    basis.sort_by(|a, b| {
        let (ca, ma, _) = a.lead().unwrap();
        let (cb, mb, _) = b.lead().unwrap();
        module.cmp_terms(*ca, ma, *cb, mb)
    });
    let mut minimal: Vec<Vector> = Vec::new();
    for g in basis {
        let (c, m, _) = g.lead().unwrap();
        let redundant = minimal.iter().any(|h| {
            let (hc, hm, _) = h.lead().unwrap();
            hc == c && hm.divides(m)
        });
        if !redundant {
            minimal.push(g);
        }
    }
    // Inputs are homogeneous, so no lead divides a tail term of its own
    // element and tails can be reduced against the whole list.
    let div = Divisors::new(module, &minimal);
    let mut out = Vec::with_capacity(minimal.len());
    for g in &minimal {
        let lead = g.terms()[0].clone();
        let tail = div.reduce_terms(module, g.terms()[1..].to_vec(), true, None);
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(lead);
        terms.extend(tail);
        out.push(Vector::from_sorted(module, terms).monic());
    }
    out
}


use std::fmt;

use crate::algebra::Monomial;

/// `t^shift * numerator(t) / prod_i (1 - t^{weights[i]})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    shift: i32,
    weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn new(mut numerator: Vec<i64>, mut shift: i32, weights: Vec<u32>) -> Self {
        let lead_zeros = numerator.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == numerator.len() {
            return HilbertSeries {
                numerator: Vec::new(),
                shift: 0,
                weights,
            };
        }
        numerator.drain(..lead_zeros);
        shift += lead_zeros as i32;
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        HilbertSeries {
            numerator,
            shift,
            weights,
        }
    }

    pub fn zero(weights: Vec<u32>) -> Self {
        Self::new(Vec::new(), 0, weights)
    }

    /// Series of `S / L` for the monomial ideal `L` generated by `gens`.
    pub fn of_monomial_ideal(gens: &[Monomial], weights: &[u32]) -> Self {
        Self::new(monomial_ideal_numerator(gens, weights), 0, weights.to_vec())
    }

    /// Series of `⊕_c S(-degrees[c]) / L_c` where `leads` lists the
    /// generators `(c, m)` of the monomial submodule.
    pub fn of_monomial_module(degrees: &[i32], leads: &[(u32, Monomial)], weights: &[u32]) -> Self {
        let mut acc = HilbertSeries::zero(weights.to_vec());
        for (c, &d) in degrees.iter().enumerate() {
            let gens: Vec<Monomial> = leads
                .iter()
                .filter(|(k, _)| *k as usize == c)
                .map(|(_, m)| m.clone())
                .collect();
            let term = HilbertSeries::new(monomial_ideal_numerator(&gens, weights), d, weights.to_vec());
            acc = acc.add(&term);
        }
        acc
    }

    /// Numerator coefficients, starting at `t^shift`.
    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn denominator_weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    fn combine(&self, other: &HilbertSeries, sign: i64) -> HilbertSeries {
        assert_eq!(self.weights, other.weights, "series over different denominators");
        if self.is_zero() {
            let mut o = other.clone();
            o.numerator.iter_mut().for_each(|c| *c *= sign);
            return o;
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(other.shift);
        let hi = (self.shift + self.numerator.len() as i32).max(other.shift + other.numerator.len() as i32);
        let mut num = vec![0i64; (hi - lo) as usize];
        for (i, c) in self.numerator.iter().enumerate() {
            num[(self.shift - lo) as usize + i] += c;
        }
        for (i, c) in other.numerator.iter().enumerate() {
            num[(other.shift - lo) as usize + i] += sign * c;
        }
        HilbertSeries::new(num, lo, self.weights.clone())
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        self.combine(other, -1)
    }

    /// Power-series coefficients for degrees `0..=upto`.
    pub fn coefficients(&self, upto: i32) -> Vec<i64> {
        if upto < 0 {
            return Vec::new();
        }
        let len = upto as usize + 1;
        // 1 / prod (1 - t^w), long enough for negatively shifted numerators
        let span = (upto - self.shift.min(0)) as usize + 1;
        let mut denom = vec![0i64; span];
        denom[0] = 1;
        for &w in &self.weights {
            let w = w as usize;
            for d in w..span {
                denom[d] += denom[d - w];
            }
        }
        let mut out = vec![0i64; len];
        for (i, &c) in self.numerator.iter().enumerate() {
            let start = self.shift + i as i32;
            for d in start.max(0)..=upto {
                out[d as usize] += c * denom[(d - start) as usize];
            }
        }
        out
    }

    pub fn coefficient(&self, d: i32) -> i64 {
        if d < 0 {
            // only reachable for negatively shifted modules
            let shifted = HilbertSeries::new(self.numerator.clone(), self.shift - d, self.weights.clone());
            return shifted.coefficients(0)[0];
        }
        self.coefficients(d)[d as usize]
    }

    /// For a standard-graded denominator `(1 - t)^n`, the reduced form
    /// `q(t) / (1 - t)^d` with `q(1) != 0`, returned as `(q, d)`.
    pub fn reduced(&self) -> Option<(Vec<i64>, usize)> {
        if self.is_zero() || self.weights.iter().any(|&w| w != 1) || self.shift < 0 {
            return None;
        }
        let mut n = vec![0i64; self.shift as usize];
        n.extend_from_slice(&self.numerator);
        let mut d = self.weights.len();
        while n.iter().sum::<i64>() == 0 {
            let mut acc = 0;
            n = n[..n.len() - 1]
                .iter()
                .map(|&c| {
                    acc += c;
                    acc
                })
                .collect();
            d -= 1;
        }
        Some((n, d))
    }

    /// Order of the pole at `t = 1`, i.e. the Krull dimension of the module;
    /// `None` for the zero series.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut n = self.numerator.clone();
        let mut order = 0usize;
        // divide by (1 - t) while t = 1 is a root
        while n.iter().sum::<i64>() == 0 {
            // n(t) = (1 - t) q(t): q_k = sum_{i<=k} n_i
            let mut q = Vec::with_capacity(n.len() - 1);
            let mut acc = 0i64;
            for &c in &n[..n.len() - 1] {
                acc += c;
                q.push(acc);
            }
            n = q;
            order += 1;
        }
        Some(self.weights.len().saturating_sub(order))
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.shift + i as i32;
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            let coef = if c.abs() == 1 && !mono.is_empty() {
                String::new()
            } else {
                c.abs().to_string()
            };
            let sep = if mono.is_empty() || coef.is_empty() { "" } else { "*" };
            let sign = if c < 0 { "-" } else { "+" };
            parts.push((sign, format!("{coef}{sep}{mono}")));
        }
        let mut num = String::new();
        for (k, (sign, body)) in parts.iter().enumerate() {
            if k == 0 {
                if *sign == "-" {
                    num.push('-');
                }
            } else {
                num.push_str(&format!(" {sign} "));
            }
            num.push_str(body);
        }
        if num.is_empty() {
            num.push('0');
        }
        let den: Vec<String> = self
            .weights
            .iter()
            .map(|&w| if w == 1 { "(1 - t)".to_string() } else { format!("(1 - t^{w})") })
            .collect();
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "({num}) / ({})", den.join("*"))
        }
    }
}

/// Numerator `N` with `HS(S/L) = N / prod (1 - t^w)` for the monomial ideal
/// `L`, by Bigatti-style pivoting `N(L) = N(L + p) + t^deg(p) N(L : p)`.
pub fn monomial_ideal_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i64> {
    let gens: Vec<Vec<u16>> = gens.iter().map(|m| m.exponents().to_vec()).collect();
    numerator_rec(minimalize(gens), weights)
}

fn degree_of(e: &[u16], weights: &[u32]) -> usize {
    e.iter().zip(weights).map(|(&a, &w)| a as usize * w as usize).sum()
}

fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Vec<u16>>) -> Vec<Vec<u16>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u16>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| divides(h, &g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul_binomial(p: &[i64], deg: usize) -> Vec<i64> {
    // p * (1 - t^deg)
    let mut out = vec![0i64; p.len() + deg];
    for (i, &c) in p.iter().enumerate() {
        out[i] += c;
        out[i + deg] -= c;
    }
    out
}

fn numerator_rec(gens: Vec<Vec<u16>>, weights: &[u32]) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![0];
    }
    let n = weights.len();
    let pairwise_coprime = {
        let mut used = vec![false; n];
        let mut ok = true;
        'outer: for g in &gens {
            for (i, &e) in g.iter().enumerate() {
                if e > 0 {
                    if used[i] {
                        ok = false;
                        break 'outer;
                    }
                    used[i] = true;
                }
            }
        }
        ok
    };
    if pairwise_coprime {
        let mut acc = vec![1i64];
        for g in &gens {
            acc = poly_mul_binomial(&acc, degree_of(g, weights));
        }
        return acc;
    }
    // pivot on the variable occurring most often among non-pure-power gens
    let is_pure = |g: &Vec<u16>| g.iter().filter(|&&e| e > 0).count() == 1;
    let mut counts = vec![0usize; n];
    for g in gens.iter().filter(|g| !is_pure(g)) {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|g| !is_pure(g) && g[var] > 0)
        .map(|g| g[var])
        .collect();
    exps.sort_unstable();
    let e = exps[0];

    let mut pivot = vec![0u16; n];
    pivot[var] = e;
    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[var] = h[var].saturating_sub(e);
            h
        })
        .collect();
    let a = numerator_rec(minimalize(plus), weights);
    let b = numerator_rec(minimalize(colon), weights);
    let shift = degree_of(&pivot, weights);
    let mut out = vec![0i64; a.len().max(b.len() + shift)];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i + shift] += c;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Krull dimension of `S / L` for the monomial ideal with the given
/// generators: the largest set of variables containing no generator's
/// support. `None` when `L` is the unit ideal.
pub fn krull_dimension_of_leads(leads: &[Monomial], nvars: usize) -> Option<usize> {
    let mut supports: Vec<Vec<usize>> = leads.iter().map(|m| m.support().collect()).collect();
    if supports.iter().any(|s| s.is_empty()) {
        return None;
    }
    supports.sort_by_key(|s| s.len());
    supports.dedup();
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|t| t.iter().all(|v| s.contains(v))) {
            minimal.push(s);
        }
    }
    let mut chosen = vec![false; nvars];
    let mut best = 0usize;
    independent_search(&minimal, &mut chosen, 0, 0, &mut best);
    Some(best)
}

fn independent_search(
    edges: &[Vec<usize>],
    chosen: &mut Vec<bool>,
    next: usize,
    size: usize,
    best: &mut usize,
) {
    let n = chosen.len();
    if size + (n - next) <= *best {
        return;
    }
    if next == n {
        *best = size;
        return;
    }
    chosen[next] = true;
    let ok = edges
        .iter()
        .filter(|e| e.contains(&next))
        .all(|e| !e.iter().all(|&v| chosen[v]));
    if ok {
        independent_search(edges, chosen, next + 1, size + 1, best);
    }
    chosen[next] = false;
    independent_search(edges, chosen, next + 1, size, best);
}

use smallvec::SmallVec;

pub(crate) type Exponents = SmallVec<[u16; 12]>;

/// A monomial `x^a` with its weighted total degree cached.
///
/// The degree is fixed by the weight vector of the ring the monomial was
/// built in; monomials from differently weighted rings must not be mixed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: &[u16], weights: &[u32]) -> Self {
        debug_assert_eq!(exps.len(), weights.len());
        let degree = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial {
            exps: exps.into(),
            degree,
        }
    }

    pub fn one(n: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, n),
            degree: 0,
        }
    }

    pub(crate) fn from_parts(exps: Exponents, degree: u32) -> Self {
        Monomial { exps, degree }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Monomial {
            exps,
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        let degree = exps.iter().zip(weights).map(|(&e, &w)| e as u32 * w).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Bitmask of the support (variables beyond 64 are ignored).
    pub fn support_mask(&self) -> u64 {
        self.support()
            .filter(|&i| i < 64)
            .fold(0u64, |m, i| m | (1 << i))
    }
}

/// All exponent vectors of weighted degree `d`, in lexicographically
/// descending order.
pub(crate) fn exponents_of_degree(weights: &[u32], d: u32) -> Vec<Exponents> {
    fn rec(weights: &[u32], d: u32, i: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i + 1 == weights.len() {
            if d.is_multiple_of(weights[i]) {
                cur[i] = (d / weights[i]) as u16;
                out.push(cur.clone());
                cur[i] = 0;
            }
            return;
        }
        let mut e = d / weights[i];
        loop {
            cur[i] = e as u16;
            rec(weights, d - e * weights[i], i + 1, cur, out);
            if e == 0 {
                break;
            }
            e -= 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if weights.is_empty() {
        if d == 0 {
            out.push(Exponents::new());
        }
        return out;
    }
    let mut cur = SmallVec::from_elem(0, weights.len());
    rec(weights, d, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_is_weighted() {
        let m = Monomial::new(&[1, 2, 0], &[1, 2, 3]);
        assert_eq!(m.degree(), 5);
        let l = m.lcm(&Monomial::new(&[0, 1, 1], &[1, 2, 3]), &[1, 2, 3]);
        assert_eq!(l.exponents(), &[1, 2, 1]);
        assert_eq!(l.degree(), 8);
    }

    #[test]
    fn enumerates_degree_slices() {
        assert_eq!(exponents_of_degree(&[1, 1, 1, 1], 12).len(), 455);
        assert_eq!(exponents_of_degree(&[1, 2], 4).len(), 3);
        assert_eq!(exponents_of_degree(&[2, 2], 3).len(), 0);
        assert_eq!(exponents_of_degree(&[1, 1], 0).len(), 1);
    }
}

//! Sparse exact-rational polynomials in the deformation parameters `u_j`.
//!
//! Exponent vectors are indexed by the entries of `J` (0-based). All
//! arithmetic is arbitrary-precision rational; there is no fixed-width
//! integer path anywhere in a coefficient computation.

use crate::ratio::{fmt_rat, Rat};
use num::{One, Zero};
use std::collections::BTreeMap;

/// Exponent vector over the deformation parameters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The single variable `u_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn mul_var(&self, var: usize) -> Self {
        let mut e = self.0.clone();
        e[var] += 1;
        Monomial(e)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total degree in the usual sense.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Weighted degree against scaled weights, as a scaled integer.
    pub fn weighted_degree(&self, gamma_scaled: &[i64]) -> i64 {
        self.0
            .iter()
            .zip(gamma_scaled)
            .map(|(&e, &g)| e as i64 * g)
            .sum()
    }

    /// True when the monomial is a bare `u_var`.
    pub fn as_linear(&self) -> Option<usize> {
        let mut var = None;
        for (i, &e) in self.0.iter().enumerate() {
            match (e, var) {
                (0, _) => {}
                (1, None) => var = Some(i),
                _ => return None,
            }
        }
        var
    }
}

/// Sparse polynomial with nonzero exact-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamPolynomial {
    pub terms: BTreeMap<Monomial, Rat>,
}

impl ParamPolynomial {
    pub fn zero() -> Self {
        ParamPolynomial {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(nvars), c);
        p
    }

    /// The polynomial `c * u_var`.
    pub fn linear(nvars: usize, var: usize, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(nvars, var), c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &ParamPolynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Self {
        ParamPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Multiply every term by `c * u_var`.
    pub fn scale_and_shift(&self, c: &Rat, var: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.mul_var(var), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &ParamPolynomial) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = m1
                    .0
                    .iter()
                    .zip(&m2.0)
                    .map(|(a, b)| a + b)
                    .collect::<Vec<_>>();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, nvars: usize, mut e: u32) -> Self {
        let mut out = Self::constant(nvars, Rat::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Replace `u_var` by `repl` everywhere.
    pub fn substitute(&self, nvars: usize, var: usize, repl: &ParamPolynomial) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            let mut rest = m.0.clone();
            rest[var] = 0;
            let mut part = repl.pow(nvars, e);
            part = ParamPolynomial {
                terms: part
                    .terms
                    .into_iter()
                    .map(|(pm, pc)| {
                        let merged = pm
                            .0
                            .iter()
                            .zip(&rest)
                            .map(|(a, b)| a + b)
                            .collect::<Vec<_>>();
                        (Monomial(merged), pc)
                    })
                    .collect(),
            };
            for (pm, pc) in part.terms {
                out.add_term(pm, pc * c);
            }
        }
        out
    }

    pub fn evaluate(&self, point: &[Rat]) -> Rat {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            total += v;
        }
        total
    }

    /// Common weighted degree when the polynomial is weighted homogeneous,
    /// `None` for the zero polynomial or a mixed one.
    pub fn homogeneous_degree(&self, gamma_scaled: &[i64]) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.weighted_degree(gamma_scaled);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// Render with `names(j)` for the variable of index `j`. Terms are ordered
    /// the way the worked examples print them: highest-index variables first.
    pub fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let ra = a.0.iter().rev().collect::<Vec<_>>();
            let rb = b.0.iter().rev().collect::<Vec<_>>();
            rb.cmp(&ra)
        });
        let mut out = String::new();
        for (i, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let neg = c < &Rat::zero();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(fmt_rat(&abs));
            }
            for (j, &e) in m.0.iter().enumerate() {
                if e == 1 {
                    factors.push(names(j));
                } else if e > 1 {
                    factors.push(format!("{}^{}", names(j), e));
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    fn names(j: usize) -> String {
        format!("u_{}", j + 1)
    }

    #[test]
    fn arithmetic_and_render() {
        let mut p = ParamPolynomial::zero();
        p.add_term(Monomial(vec![0, 0, 1]), rat(-1, 1));
        p.add_term(Monomial(vec![2, 0, 0]), rat(1, 3));
        assert_eq!(p.render(&names), "-u_3 + 1/3*u_1^2");
        let q = p.scale_and_shift(&rat(-2, 1), 1);
        assert_eq!(q.render(&names), "2*u_2*u_3 - 2/3*u_1^2*u_2");
        let mut sum = p.clone();
        sum.add_assign(&p.neg());
        assert!(sum.is_zero());
    }

    #[test]
    fn substitute_square() {
        // u_2 -> 1/3 u_1^2 in  u_2^2 + u_2  gives 1/9 u_1^4 + 1/3 u_1^2.
        let mut p = ParamPolynomial::zero();
        p.add_term(Monomial(vec![0, 2]), rat(1, 1));
        p.add_term(Monomial(vec![0, 1]), rat(1, 1));
        let repl = ParamPolynomial {
            terms: [(Monomial(vec![2, 0]), rat(1, 3))].into_iter().collect(),
        };
        let s = p.substitute(2, 1, &repl);
        assert_eq!(s.coeff(&Monomial(vec![4, 0])), rat(1, 9));
        assert_eq!(s.coeff(&Monomial(vec![2, 0])), rat(1, 3));
        assert_eq!(s.terms.len(), 2);
    }

    #[test]
    fn evaluate_matches_substitution() {
        let mut p = ParamPolynomial::zero();
        p.add_term(Monomial(vec![1, 1]), rat(3, 2));
        p.add_term(Monomial(vec![0, 3]), rat(-1, 5));
        let v = p.evaluate(&[rat(2, 1), rat(-1, 2)]);
        assert_eq!(v, rat(-3, 2) - rat(-1, 40));
    }
}

//! Independent combinatorial recomputation of the order-one coefficients for
//! two-variable Brieskorn-Pham classes.
//!
//! A parameter monomial contributes through sequences `(j₁,…,j_r)`: each
//! sequence carries the differential-operator factor
//! `(−1)^r ∏ᵢ (Σ_{t≥i} γ_{j_t})⁻¹ ∏ᵢ γ_{jᵢ}` and the whole multiset carries
//! one reduction factor computed from the accumulated monomial `x^p y^q`:
//! `∏_{s=1}^{⌊(p+1)/a⌋} (p+1−sa)/a · ∏_{s=1}^{⌊(q+1)/b⌋} (q+1−sb)/b`
//! (divisions by `a`, `b` omitted in reciprocal normalization), which vanishes
//! when `p+1 ∈ aℤ` or `q+1 ∈ bℤ`. Sequences are grouped by multiset; the sum
//! over orderings of the operator factors is evaluated by the suffix-sum
//! recursion. Nothing here touches the Gauss-Manin engine.

use crate::poly::{Monomial, ParamPolynomial};
use crate::ratio::Rat;
use crate::singularity::{Kind, Normalization, SingularityClass};
use crate::{Error, Result};
use num::{BigInt, One, Zero};
use std::collections::{BTreeMap, HashMap};

fn check_class(s: &SingularityClass) -> Result<(u32, u32)> {
    let Kind::Bp(es) = &s.kind else {
        return Err(Error::UnsupportedArity(
            "the path-sum oracle handles Brieskorn-Pham classes only".into(),
        ));
    };
    if es.len() != 2 {
        return Err(Error::UnsupportedArity(
            "the path-sum oracle handles two variables only".into(),
        ));
    }
    if es[0] + es[1] > 15 {
        return Err(Error::SizeLimit(format!(
            "a + b = {} exceeds 15",
            es[0] + es[1]
        )));
    }
    Ok((es[0], es[1]))
}

/// Reduction factor of an accumulated monomial `x^p y^q`.
fn reduction_factor(a: u32, b: u32, unit: bool, p: u32, q: u32) -> Rat {
    let mut out = Rat::one();
    for (e, v) in [(a as i64, p as i64), (b as i64, q as i64)] {
        for step in 1..=((v + 1) / e) {
            let num = v + 1 - step * e;
            if num == 0 {
                return Rat::zero();
            }
            out *= if unit {
                Rat::new(BigInt::from(num), BigInt::from(e))
            } else {
                Rat::from_integer(BigInt::from(num))
            };
        }
    }
    out
}

/// Contribution of a single sequence of J indices (1-based) from the form of
/// a source basis element `ν`. Zero is a legitimate value.
pub fn path_weight(s: &SingularityClass, source_nu: &[u32], seq: &[usize]) -> Result<Rat> {
    let (a, b) = check_class(s)?;
    let unit = s.normalization == Normalization::Unit;
    let js = s.deformation_monomials();
    let r = seq.len();
    // (1.2.2): suffix sums of the γ's along the sequence.
    let mut op = Rat::one();
    for i in 0..r {
        let suffix: i64 = seq[i..].iter().map(|&j| js[j - 1].gamma_scaled).sum();
        let g = js[seq[i] - 1].gamma_scaled;
        op *= Rat::new(BigInt::from(g), BigInt::from(suffix));
    }
    if r % 2 == 1 {
        op = -op;
    }
    // Accumulated monomial: source monomial ν−𝟏 times the h's.
    let mut p = source_nu[0] - 1;
    let mut q = source_nu[1] - 1;
    for &j in seq {
        p += js[j - 1].exponent[0];
        q += js[j - 1].exponent[1];
    }
    Ok(op * reduction_factor(a, b, unit, p, q))
}

/// Memoized sum over all orderings of a multiset of the suffix-sum inverse
/// products, in scaled weights.
fn perm_sum(
    counts: &mut Vec<u32>,
    total_scaled: i64,
    gammas: &[i64],
    memo: &mut HashMap<Vec<u32>, Rat>,
) -> Rat {
    if total_scaled == 0 {
        return Rat::one();
    }
    if let Some(v) = memo.get(counts) {
        return v.clone();
    }
    let mut sum = Rat::zero();
    for j in 0..counts.len() {
        if counts[j] == 0 {
            continue;
        }
        counts[j] -= 1;
        sum += perm_sum(counts, total_scaled - gammas[j], gammas, memo);
        counts[j] += 1;
    }
    let out = sum / Rat::from_integer(BigInt::from(total_scaled));
    memo.insert(counts.clone(), out.clone());
    out
}

struct OracleCtx {
    a: u32,
    b: u32,
    unit: bool,
    gammas: Vec<i64>,
    memo: HashMap<Vec<u32>, Rat>,
}

impl OracleCtx {
    fn new(s: &SingularityClass) -> Result<Self> {
        let (a, b) = check_class(s)?;
        Ok(OracleCtx {
            a,
            b,
            unit: s.normalization == Normalization::Unit,
            gammas: s
                .deformation_monomials()
                .iter()
                .map(|e| e.gamma_scaled)
                .collect(),
            memo: HashMap::new(),
        })
    }

    /// Total coefficient of the multiset `counts` from source monomial
    /// `(p, q)`: (−1)^r ∏γ^{count} · perm_sum · reduction factor.
    fn coefficient(&mut self, s: &SingularityClass, counts: &mut Vec<u32>, p: u32, q: u32) -> Rat {
        let total: i64 = counts
            .iter()
            .zip(&self.gammas)
            .map(|(&c, &g)| c as i64 * g)
            .sum();
        let factor = reduction_factor(self.a, self.b, self.unit, p, q);
        if factor.is_zero() {
            return Rat::zero();
        }
        let mut coeff = perm_sum(counts, total, &self.gammas, &mut self.memo) * factor;
        let mut r = 0u32;
        for (jdx, &c) in counts.iter().enumerate() {
            r += c;
            for _ in 0..c {
                coeff *= Rat::from_integer(BigInt::from(self.gammas[jdx]));
            }
        }
        let _ = s;
        if r % 2 == 1 {
            -coeff
        } else {
            coeff
        }
    }
}

/// Oracle value of `g¹` between two basis ranks.
pub fn g1_oracle(s: &SingularityClass, k: usize, l: usize) -> Result<ParamPolynomial> {
    let full = g1_full_matrix(s)?;
    Ok(full.get(&(k, l)).cloned().unwrap_or_else(ParamPolynomial::zero))
}

/// Oracle recomputation of the whole order-one matrix.
pub fn g1_full_matrix(
    s: &SingularityClass,
) -> Result<BTreeMap<(usize, usize), ParamPolynomial>> {
    let mut ctx = OracleCtx::new(s)?;
    let js = s.deformation_monomials();
    let budget = s.gamma_budget_scaled().max(0);
    let m = s.weights.m;
    let alpha = s.spectrum_scaled();
    let mut out: BTreeMap<(usize, usize), ParamPolynomial> = BTreeMap::new();

    // All multisets within the budget, with accumulated exponent offsets.
    let mut multisets: Vec<(Vec<u32>, (u32, u32), i64)> = Vec::new();
    fn rec(
        js: &[crate::singularity::JEntry],
        from: usize,
        counts: &mut Vec<u32>,
        off: (u32, u32),
        deg: i64,
        budget: i64,
        out: &mut Vec<(Vec<u32>, (u32, u32), i64)>,
    ) {
        if deg > 0 {
            out.push((counts.clone(), off, deg));
        }
        for idx in from..js.len() {
            let g = js[idx].gamma_scaled;
            if deg + g > budget {
                continue;
            }
            counts[idx] += 1;
            rec(
                js,
                idx,
                counts,
                (off.0 + js[idx].exponent[0], off.1 + js[idx].exponent[1]),
                deg + g,
                budget,
                out,
            );
            counts[idx] -= 1;
        }
    }
    let mut counts = vec![0u32; js.len()];
    rec(js, 0, &mut counts, (0, 0), 0, budget, &mut multisets);

    let (a, b) = (ctx.a, ctx.b);
    for src in s.jacobian_basis() {
        for (counts, off, deg) in &multisets {
            let p = src.nu[0] - 1 + off.0;
            let q = src.nu[1] - 1 + off.1;
            // Reduced target coordinates; the factor vanishes on lattice walls.
            if (p + 1) % a == 0 || (q + 1) % b == 0 {
                continue;
            }
            let target = vec![p % a + 1, q % b + 1];
            let l = s.rank_of_nu(&target).expect("reduced point is in the basis");
            // Order-one contributions sit at degree α_l − α_k − 1.
            if alpha[l - 1] - src.alpha_scaled - m != *deg {
                continue;
            }
            let mut c = counts.clone();
            let coeff = ctx.coefficient(s, &mut c, p, q);
            if coeff.is_zero() {
                continue;
            }
            out.entry((src.rank, l))
                .or_insert_with(ParamPolynomial::zero)
                .add_term(Monomial(counts.clone()), coeff);
        }
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn path_weight_examples() {
        let s = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        // Sequence (1,1) from the source (1,1)-form: accumulated x^14 y^2.
        let w = path_weight(&s, &[1, 1], &[1, 1]).unwrap();
        assert_eq!(w, rat(1, 3));
        // Single step of lowest degree: the linear law gives −1.
        let w = path_weight(&s, &[1, 1], &[2]).unwrap();
        assert_eq!(w, rat(-1, 1));
        // Accumulated p+1 divisible by a vanishes.
        let w = path_weight(&s, &[2, 1], &[1]).unwrap();
        assert_eq!(w, rat(0, 1));
    }

    #[test]
    fn oracle_bp94_entry() {
        let s = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        let delta = s.delta();
        let p = g1_oracle(&s, 1, delta + 2).unwrap();
        assert_eq!(p.coeff(&Monomial(vec![0, 1, 0, 0])), rat(-1, 1));
        assert_eq!(p.coeff(&Monomial(vec![2, 0, 0, 0])), rat(1, 3));
        assert_eq!(p.terms.len(), 2);
    }

    #[test]
    fn oracle_bp75_entry() {
        let s = SingularityClass::bp(&[7, 5], Normalization::Unit).unwrap();
        let delta = s.delta();
        let p = g1_oracle(&s, 1, delta + 2).unwrap();
        assert_eq!(p.coeff(&Monomial(vec![0, 1, 0, 0])), rat(-1, 1));
        assert_eq!(p.coeff(&Monomial(vec![4, 0, 0, 0])), rat(6, 175));
        assert_eq!(p.terms.len(), 2);
    }

    #[test]
    fn oracle_rejects_big_and_foreign_classes() {
        let s = SingularityClass::bp(&[9, 7], Normalization::Unit).unwrap();
        assert!(matches!(g1_full_matrix(&s), Err(Error::SizeLimit(_))));
        let s = SingularityClass::loop2(6, 5, Normalization::Unit).unwrap();
        assert!(matches!(
            g1_full_matrix(&s),
            Err(Error::UnsupportedArity(_))
        ));
        let s = SingularityClass::bp(&[7, 5, 3], Normalization::Unit).unwrap();
        assert!(matches!(
            g1_full_matrix(&s),
            Err(Error::UnsupportedArity(_))
        ));
    }

    #[test]
    fn sequence_sum_matches_multiset_grouping() {
        // Order-independence of the operator factors: explicit sequences
        // summed over all orderings agree with the grouped coefficient.
        let s = SingularityClass::bp(&[8, 7], Normalization::Unit).unwrap();
        let js = s.deformation_monomials();
        let mut ctx = OracleCtx::new(&s).unwrap();
        let source = vec![1u32, 1u32];
        // Multisets of size ≤ 4 over the first few indices.
        let pools: Vec<Vec<usize>> = vec![
            vec![1],
            vec![1, 1],
            vec![1, 2],
            vec![1, 1, 2],
            vec![1, 2, 3],
            vec![2, 2, 5],
            vec![1, 1, 1, 2],
            vec![1, 2, 3, 4],
        ];
        for pool in pools {
            let mut counts = vec![0u32; js.len()];
            for &j in &pool {
                counts[j - 1] += 1;
            }
            let mut p = source[0] - 1;
            let mut q = source[1] - 1;
            for &j in &pool {
                p += js[j - 1].exponent[0];
                q += js[j - 1].exponent[1];
            }
            let grouped = ctx.coefficient(&s, &mut counts.clone(), p, q);
            // Enumerate distinct orderings.
            let mut perms: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..pool.len() {
                let mut next = Vec::new();
                for prefix in &perms {
                    let mut remaining = pool.clone();
                    for x in prefix {
                        let pos = remaining.iter().position(|y| y == x).unwrap();
                        remaining.remove(pos);
                    }
                    let mut used = std::collections::BTreeSet::new();
                    for x in remaining {
                        if used.insert(x) {
                            let mut p2 = prefix.clone();
                            p2.push(x);
                            next.push(p2);
                        }
                    }
                }
                perms = next;
            }
            let mut total = rat(0, 1);
            for seq in &perms {
                total += path_weight(&s, &source, seq).unwrap();
            }
            assert_eq!(total, grouped, "multiset {:?}", pool);
        }
    }
}

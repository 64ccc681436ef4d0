//! Singularity classes, weight systems, Milnor bases, spectral numbers, and
//! the deformation monomial set `J`.
//!
//! A class fixes the weighted-homogeneous part `f₁` (Brieskorn-Pham
//! `Σ xᵢ^{eᵢ}`, two-variable chain `x^a + x y^b`, two-variable loop
//! `x^a y + x y^b`, or three-variable loop `x^a y + y^b z + z^c x`) together
//! with a coefficient normalization: `unit` keeps all coefficients 1,
//! `reciprocal` uses `1/eᵢ` (resp. `1/a`, `1/b`, `1/c`).

use crate::ratio::Rat;
use crate::{Error, Result};
use num::BigInt;
use num::Integer;
use std::collections::HashMap;
use std::fmt;

/// Shape of the weighted-homogeneous part `f₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Bp(Vec<u32>),
    Chain2(u32, u32),
    Loop2(u32, u32),
    Loop3(u32, u32, u32),
}

/// Coefficient normalization of `f₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Unit,
    Reciprocal,
}

/// Variable weights with a common scaling denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    pub w: Vec<Rat>,
    /// All `wᵢ·M` and all `γⱼ·M` are integers.
    pub m: i64,
    /// `wᵢ·M`.
    pub scaled: Vec<i64>,
}

/// Milnor-algebra basis form `ω^ν = [x^{ν−𝟏}dx]` with its spectral data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub nu: Vec<u32>,
    pub alpha: Rat,
    pub alpha_scaled: i64,
    /// 1-based position in the (α ascending, ν lex ascending) order.
    pub rank: usize,
}

/// Deformation monomial `h_j = x^{ν⁽ʲ⁾}` with parameter weight `γ_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JEntry {
    /// 1-based index in `J`.
    pub j: usize,
    pub exponent: Vec<u32>,
    pub gamma: Rat,
    pub gamma_scaled: i64,
    /// Rank of the spectral number `γ_j + α̃_f + 1`, equal to `j + δ_f`.
    pub spectral_rank: usize,
}

/// Componentwise comparison of exponent vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Over,
    Under,
    Equal,
    Incomparable,
}

/// Componentwise partial order ("over" means `≥` in every coordinate).
pub fn partial_order(a: &[u32], b: &[u32]) -> Comparison {
    assert_eq!(a.len(), b.len());
    let ge = a.iter().zip(b).all(|(x, y)| x >= y);
    let le = a.iter().zip(b).all(|(x, y)| x <= y);
    match (ge, le) {
        (true, true) => Comparison::Equal,
        (true, false) => Comparison::Over,
        (false, true) => Comparison::Under,
        (false, false) => Comparison::Incomparable,
    }
}

/// `a` is over-or-equal `b`.
pub fn is_over_eq(a: &[u32], b: &[u32]) -> bool {
    matches!(partial_order(a, b), Comparison::Over | Comparison::Equal)
}

/// Multiplicity report for the spectral numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M1Report {
    pub holds: bool,
    /// Repeated spectral values with their multiplicities.
    pub violations: Vec<(Rat, usize)>,
}

/// A validated singularity class with all derived combinatorial data.
#[derive(Debug, Clone)]
pub struct SingularityClass {
    pub kind: Kind,
    pub normalization: Normalization,
    pub n: usize,
    pub weights: WeightSystem,
    basis: Vec<BasisElement>,
    rank_of: HashMap<Vec<u32>, usize>,
    j_entries: Vec<JEntry>,
    mu: usize,
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match &self.kind {
            Kind::Bp(es) => format!(
                "bp:{}",
                es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
            ),
            Kind::Chain2(a, b) => format!("chain:{},{}", a, b),
            Kind::Loop2(a, b) => format!("loop:{},{}", a, b),
            Kind::Loop3(a, b, c) => format!("loop3:{},{},{}", a, b, c),
        };
        let norm = match self.normalization {
            Normalization::Unit => "unit",
            Normalization::Reciprocal => "reciprocal",
        };
        write!(f, "{} ({})", body, norm)
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    a / a.gcd(&b) * b
}

fn weight_system(kind: &Kind) -> WeightSystem {
    let w: Vec<Rat> = match kind {
        Kind::Bp(es) => es
            .iter()
            .map(|&e| Rat::new(BigInt::from(1), BigInt::from(e)))
            .collect(),
        Kind::Chain2(a, b) => {
            let (a, b) = (*a as i64, *b as i64);
            vec![
                Rat::new(BigInt::from(1), BigInt::from(a)),
                Rat::new(BigInt::from(a - 1), BigInt::from(a * b)),
            ]
        }
        Kind::Loop2(a, b) => {
            let (a, b) = (*a as i64, *b as i64);
            let d = a * b - 1;
            vec![
                Rat::new(BigInt::from(b - 1), BigInt::from(d)),
                Rat::new(BigInt::from(a - 1), BigInt::from(d)),
            ]
        }
        Kind::Loop3(a, b, c) => {
            let (a, b, c) = (*a as i64, *b as i64, *c as i64);
            let d = a * b * c + 1;
            vec![
                Rat::new(BigInt::from((b - 1) * c + 1), BigInt::from(d)),
                Rat::new(BigInt::from((c - 1) * a + 1), BigInt::from(d)),
                Rat::new(BigInt::from((a - 1) * b + 1), BigInt::from(d)),
            ]
        }
    };
    let m = w.iter().fold(1i64, |acc, wi| {
        lcm(acc, i64::try_from(wi.denom()).expect("weight denominator fits i64"))
    });
    let scaled = w
        .iter()
        .map(|wi| {
            let s = wi * Rat::from_integer(BigInt::from(m));
            i64::try_from(s.numer()).expect("scaled weight fits i64")
        })
        .collect();
    WeightSystem { w, m, scaled }
}

fn basis_lattice(kind: &Kind) -> Vec<Vec<u32>> {
    fn product(ranges: &[(u32, u32)]) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &(lo, hi) in ranges {
            let mut next = Vec::new();
            for v in &out {
                for x in lo..=hi {
                    let mut v2 = v.clone();
                    v2.push(x);
                    next.push(v2);
                }
            }
            out = next;
        }
        out
    }
    match kind {
        Kind::Bp(es) => product(&es.iter().map(|&e| (1, e - 1)).collect::<Vec<_>>()),
        Kind::Chain2(a, b) => {
            let mut v = product(&[(1, *a), (1, *b - 1)]);
            v.push(vec![1, *b]);
            v
        }
        Kind::Loop2(a, b) => product(&[(1, *a), (1, *b)]),
        Kind::Loop3(a, b, c) => product(&[(1, *a), (1, *b), (1, *c)]),
    }
}

impl SingularityClass {
    /// Validate and build a class from its kind tag and exponent list.
    pub fn make(kind: &str, exps: &[u32], normalization: Normalization) -> Result<Self> {
        let kind = match kind {
            "bp" => {
                if exps.len() < 2 {
                    return Err(Error::UnsupportedArity(
                        "bp needs at least two exponents".into(),
                    ));
                }
                Kind::Bp(exps.to_vec())
            }
            "chain" => {
                if exps.len() != 2 {
                    return Err(Error::UnsupportedArity(format!(
                        "chain type is supported for n=2 only, got {} exponents",
                        exps.len()
                    )));
                }
                Kind::Chain2(exps[0], exps[1])
            }
            "loop" => {
                if exps.len() != 2 {
                    return Err(Error::UnsupportedArity(format!(
                        "loop type needs exactly two exponents, got {}",
                        exps.len()
                    )));
                }
                Kind::Loop2(exps[0], exps[1])
            }
            "loop3" => {
                if exps.len() != 3 {
                    return Err(Error::UnsupportedArity(format!(
                        "loop3 type needs exactly three exponents, got {}",
                        exps.len()
                    )));
                }
                Kind::Loop3(exps[0], exps[1], exps[2])
            }
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown singularity kind `{}`",
                    other
                )))
            }
        };
        Self::new(kind, normalization)
    }

    pub fn bp(exps: &[u32], normalization: Normalization) -> Result<Self> {
        Self::make("bp", exps, normalization)
    }

    pub fn chain2(a: u32, b: u32, normalization: Normalization) -> Result<Self> {
        Self::new(Kind::Chain2(a, b), normalization)
    }

    pub fn loop2(a: u32, b: u32, normalization: Normalization) -> Result<Self> {
        Self::new(Kind::Loop2(a, b), normalization)
    }

    pub fn loop3(a: u32, b: u32, c: u32, normalization: Normalization) -> Result<Self> {
        Self::new(Kind::Loop3(a, b, c), normalization)
    }

    pub fn new(kind: Kind, normalization: Normalization) -> Result<Self> {
        match &kind {
            Kind::Bp(es) => {
                if es.len() < 2 {
                    return Err(Error::UnsupportedArity(
                        "bp needs at least two exponents".into(),
                    ));
                }
                if let Some(e) = es.iter().find(|&&e| e < 3) {
                    return Err(Error::ExponentTooSmall(format!(
                        "bp exponent {} < 3",
                        e
                    )));
                }
            }
            Kind::Chain2(a, b) | Kind::Loop2(a, b) => {
                if *a < 2 || *b < 2 {
                    return Err(Error::ExponentTooSmall(format!(
                        "chain/loop exponents must be >= 2, got ({},{})",
                        a, b
                    )));
                }
            }
            Kind::Loop3(a, b, c) => {
                if *a < 2 || *b < 2 || *c < 2 {
                    return Err(Error::ExponentTooSmall(format!(
                        "loop3 exponents must be >= 2, got ({},{},{})",
                        a, b, c
                    )));
                }
            }
        }
        let n = match &kind {
            Kind::Bp(es) => es.len(),
            Kind::Chain2(..) | Kind::Loop2(..) => 2,
            Kind::Loop3(..) => 3,
        };
        let weights = weight_system(&kind);
        for s in &weights.scaled {
            assert!(*s > 0 && 2 * *s <= weights.m, "weight outside (0, 1/2]");
        }

        let mut basis: Vec<BasisElement> = basis_lattice(&kind)
            .into_iter()
            .map(|nu| {
                let alpha_scaled = nu
                    .iter()
                    .zip(&weights.scaled)
                    .map(|(&v, &w)| v as i64 * w)
                    .sum::<i64>();
                BasisElement {
                    nu,
                    alpha: Rat::new(BigInt::from(alpha_scaled), BigInt::from(weights.m)),
                    alpha_scaled,
                    rank: 0,
                }
            })
            .collect();
        basis.sort_by(|a, b| (a.alpha_scaled, &a.nu).cmp(&(b.alpha_scaled, &b.nu)));
        for (i, b) in basis.iter_mut().enumerate() {
            b.rank = i + 1;
        }
        let mu = basis.len();
        let rank_of: HashMap<Vec<u32>, usize> =
            basis.iter().map(|b| (b.nu.clone(), b.rank)).collect();

        let mut cls = SingularityClass {
            kind,
            normalization,
            n,
            weights,
            basis,
            rank_of,
            j_entries: Vec::new(),
            mu,
        };
        assert_eq!(cls.mu, cls.milnor_number(), "Milnor number mismatch");

        // J: exponents ν with ν+𝟏 in the basis lattice and weighted degree > 1.
        let m = cls.weights.m;
        let mut entries: Vec<JEntry> = cls
            .basis
            .iter()
            .filter(|b| b.nu.iter().all(|&v| v >= 1))
            .filter_map(|b| {
                let exponent: Vec<u32> = b.nu.iter().map(|&v| v - 1).collect();
                let deg = cls.alpha_w_scaled(&exponent);
                if deg > m {
                    Some(JEntry {
                        j: 0,
                        exponent,
                        gamma: Rat::new(BigInt::from(deg - m), BigInt::from(m)),
                        gamma_scaled: deg - m,
                        spectral_rank: 0,
                    })
                } else {
                    None
                }
            })
            .collect();
        entries.sort_by(|a, b| {
            (a.gamma_scaled, &a.exponent).cmp(&(b.gamma_scaled, &b.exponent))
        });
        let delta = mu - entries.len();
        for (i, e) in entries.iter_mut().enumerate() {
            e.j = i + 1;
            e.spectral_rank = e.j + delta;
        }
        for e in &entries {
            // rank identity γ_j = α_{f, j+δ} − α̃_f − 1
            let at_rank = cls.basis[e.spectral_rank - 1].alpha_scaled;
            assert_eq!(
                e.gamma_scaled,
                at_rank - cls.alpha_min_scaled() - m,
                "rank identity failed for J entry {:?}",
                e.exponent
            );
        }
        cls.j_entries = entries;
        Ok(cls)
    }

    /// Milnor number from the closed formula of the class.
    pub fn milnor_number(&self) -> usize {
        match &self.kind {
            Kind::Bp(es) => es.iter().map(|&e| (e - 1) as usize).product(),
            Kind::Chain2(a, b) => (*a as usize) * (*b as usize - 1) + 1,
            Kind::Loop2(a, b) => (*a as usize) * (*b as usize),
            Kind::Loop3(a, b, c) => (*a as usize) * (*b as usize) * (*c as usize),
        }
    }

    pub fn mu(&self) -> usize {
        self.mu
    }

    /// Basis forms ordered by (α ascending, ν lex ascending); rank is 1-based.
    pub fn jacobian_basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn basis_element(&self, rank: usize) -> &BasisElement {
        &self.basis[rank - 1]
    }

    pub fn rank_of_nu(&self, nu: &[u32]) -> Option<usize> {
        self.rank_of.get(nu).copied()
    }

    pub fn is_basis_nu(&self, nu: &[u32]) -> bool {
        self.rank_of.contains_key(nu)
    }

    /// Scaled weighted degree `α_𝐰(ν)·M` of an exponent vector.
    pub fn alpha_w_scaled(&self, nu: &[u32]) -> i64 {
        nu.iter()
            .zip(&self.weights.scaled)
            .map(|(&v, &w)| v as i64 * w)
            .sum()
    }

    pub fn alpha_from_scaled(&self, scaled: i64) -> Rat {
        Rat::new(BigInt::from(scaled), BigInt::from(self.weights.m))
    }

    /// Minimal spectral number `α̃_f`, scaled by `M`.
    pub fn alpha_min_scaled(&self) -> i64 {
        self.weights.scaled.iter().sum()
    }

    pub fn alpha_min(&self) -> Rat {
        self.alpha_from_scaled(self.alpha_min_scaled())
    }

    /// Weakly increasing spectral numbers.
    pub fn spectrum(&self) -> Vec<Rat> {
        self.basis.iter().map(|b| b.alpha.clone()).collect()
    }

    pub fn spectrum_scaled(&self) -> Vec<i64> {
        self.basis.iter().map(|b| b.alpha_scaled).collect()
    }

    /// Count of spectral numbers per residue class `α mod 1`.
    pub fn eigenvalue_multiplicities(&self) -> std::collections::BTreeMap<Rat, usize> {
        let mut out = std::collections::BTreeMap::new();
        for b in &self.basis {
            let r = b.alpha_scaled.rem_euclid(self.weights.m);
            *out.entry(self.alpha_from_scaled(r)).or_insert(0) += 1;
        }
        out
    }

    /// Check condition (M1); `restricted` ignores ties at integer values.
    pub fn check_m1(&self, restricted: bool) -> M1Report {
        let mut counts: std::collections::BTreeMap<i64, usize> = Default::default();
        for b in &self.basis {
            *counts.entry(b.alpha_scaled).or_insert(0) += 1;
        }
        let violations: Vec<(Rat, usize)> = counts
            .into_iter()
            .filter(|&(s, c)| c > 1 && !(restricted && s % self.weights.m == 0))
            .map(|(s, c)| (self.alpha_from_scaled(s), c))
            .collect();
        M1Report {
            holds: violations.is_empty(),
            violations,
        }
    }

    /// Deformation monomials ordered by (γ ascending, exponent lex ascending).
    pub fn deformation_monomials(&self) -> &[JEntry] {
        &self.j_entries
    }

    pub fn delta(&self) -> usize {
        self.mu - self.j_entries.len()
    }

    /// Theorem 2 regime: `α̃_f ≥ n/2 − 1`.
    pub fn regime_check(&self) -> bool {
        2 * self.alpha_min_scaled() >= (self.n as i64 - 2) * self.weights.m
    }

    /// Scaled weighted-degree budget `(n − 2α̃_f − 1)·M` relevant to both the
    /// recursion truncation and semigroup stability.
    pub fn gamma_budget_scaled(&self) -> i64 {
        (self.n as i64 - 1) * self.weights.m - 2 * self.alpha_min_scaled()
    }

    /// J entry by 1-based index.
    pub fn j_entry(&self, j: usize) -> &JEntry {
        &self.j_entries[j - 1]
    }

    /// Find a J entry by its monomial exponent vector.
    pub fn j_by_exponent(&self, exponent: &[u32]) -> Option<&JEntry> {
        self.j_entries.iter().find(|e| e.exponent == exponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn make_validates_exponents_and_arity() {
        let s = SingularityClass::bp(&[8, 7], Normalization::Unit).unwrap();
        assert_eq!(s.weights.m, 56);
        assert_eq!(s.weights.w, vec![rat(1, 8), rat(1, 7)]);
        let s = SingularityClass::loop2(6, 5, Normalization::Reciprocal).unwrap();
        assert_eq!(s.weights.m, 29);
        assert_eq!(s.weights.w, vec![rat(4, 29), rat(5, 29)]);
        assert!(matches!(
            SingularityClass::bp(&[2, 3], Normalization::Unit),
            Err(Error::ExponentTooSmall(_))
        ));
        assert!(matches!(
            SingularityClass::make("chain", &[7, 5, 3], Normalization::Unit),
            Err(Error::UnsupportedArity(_))
        ));
        assert!(matches!(
            SingularityClass::make("bp", &[9], Normalization::Unit),
            Err(Error::UnsupportedArity(_))
        ));
    }

    #[test]
    fn milnor_numbers() {
        let bp = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        assert_eq!(bp.milnor_number(), 24);
        let lp = SingularityClass::loop2(6, 5, Normalization::Unit).unwrap();
        assert_eq!(lp.milnor_number(), 30);
        let bp33 = SingularityClass::bp(&[3, 3], Normalization::Unit).unwrap();
        assert_eq!(bp33.milnor_number(), 4);
        let ch = SingularityClass::chain2(7, 5, Normalization::Unit).unwrap();
        assert_eq!(ch.milnor_number(), 29);
        let l3 = SingularityClass::loop3(4, 4, 3, Normalization::Unit).unwrap();
        assert_eq!(l3.milnor_number(), 48);
    }

    #[test]
    fn bp94_basis_head() {
        let s = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        let b = s.jacobian_basis();
        assert_eq!(b.len(), 24);
        assert_eq!(b[0].nu, vec![1, 1]);
        assert_eq!(b[0].alpha, rat(13, 36));
        assert_eq!(b[1].nu, vec![2, 1]);
        assert_eq!(b[1].alpha, rat(17, 36));
        // 3/9 + 1/4 = 21/36 precedes 1/9 + 2/4 = 22/36.
        assert_eq!(b[2].nu, vec![3, 1]);
        assert_eq!(b[2].alpha, rat(21, 36));
        assert_eq!(b[3].nu, vec![1, 2]);
        assert_eq!(b[3].alpha, rat(22, 36));
    }

    #[test]
    fn bp33_spectrum_and_symmetry() {
        let s = SingularityClass::bp(&[3, 3], Normalization::Unit).unwrap();
        let sp = s.spectrum();
        assert_eq!(sp, vec![rat(2, 3), rat(1, 1), rat(1, 1), rat(4, 3)]);
        let ranked: Vec<(Vec<u32>, Rat)> = s
            .jacobian_basis()
            .iter()
            .map(|b| (b.nu.clone(), b.alpha.clone()))
            .collect();
        assert_eq!(
            ranked,
            vec![
                (vec![1, 1], rat(2, 3)),
                (vec![1, 2], rat(1, 1)),
                (vec![2, 1], rat(1, 1)),
                (vec![2, 2], rat(4, 3)),
            ]
        );
    }

    #[test]
    fn loop3_spectrum_extremes() {
        let s = SingularityClass::loop3(4, 4, 3, Normalization::Unit).unwrap();
        let sp = s.spectrum_scaled();
        assert_eq!(s.weights.m, 49);
        assert_eq!(sp[0], 32);
        assert_eq!(sp[sp.len() - 1], 115);
        assert_eq!(sp[sp.len() - 2], 106);
        assert_eq!(s.deformation_monomials().len(), 17);
        let first = s.j_entry(1);
        assert_eq!(first.gamma, rat(1, 49));
        assert_eq!(first.exponent, vec![1, 3, 1]);
    }

    #[test]
    fn loop2_extreme_spectral_numbers() {
        // (1.1.16) with a = b+1.
        let s = SingularityClass::loop2(6, 5, Normalization::Unit).unwrap();
        let sp = s.spectrum_scaled();
        let (a, b) = (6i64, 5i64);
        assert_eq!(sp[0], 2 * b - 1);
        assert_eq!(sp[sp.len() - 1], 2 * b * b - 1);
        assert_eq!(sp[sp.len() - 2], 2 * b * b - b);
        assert_eq!(s.weights.m, a * b - 1);
    }

    #[test]
    fn eigenvalue_multiplicities_examples() {
        let s = SingularityClass::loop2(6, 5, Normalization::Unit).unwrap();
        let em = s.eigenvalue_multiplicities();
        assert_eq!(em[&rat(0, 1)], 2);
        for k in 1..29 {
            assert_eq!(em[&rat(k, 29)], 1, "residue {}/29", k);
        }
        let s = SingularityClass::bp(&[10, 10], Normalization::Unit).unwrap();
        let em = s.eigenvalue_multiplicities();
        // i + j ≡ 2 mod 10 over [1,9]²: i+j = 2 once, i+j = 12 seven times.
        assert_eq!(em[&rat(2, 10)], 8);
        assert_eq!(em[&rat(0, 1)], 9);
        let s = SingularityClass::bp(&[3, 3], Normalization::Unit).unwrap();
        let em = s.eigenvalue_multiplicities();
        assert_eq!(em[&rat(0, 1)], 2);
        assert_eq!(em[&rat(1, 3)], 1);
        assert_eq!(em[&rat(2, 3)], 1);
    }

    #[test]
    fn m1_checks() {
        assert!(SingularityClass::bp(&[8, 7], Normalization::Unit)
            .unwrap()
            .check_m1(true)
            .holds);
        assert!(!SingularityClass::bp(&[10, 10], Normalization::Unit)
            .unwrap()
            .check_m1(true)
            .holds);
        let lp = SingularityClass::loop2(6, 5, Normalization::Unit).unwrap();
        assert!(lp.check_m1(true).holds);
        assert!(!lp.check_m1(false).holds);
    }

    #[test]
    fn deformation_monomial_tables() {
        let s = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        let tab: Vec<(i64, Vec<u32>)> = s
            .deformation_monomials()
            .iter()
            .map(|e| (e.gamma_scaled, e.exponent.clone()))
            .collect();
        assert_eq!(
            tab,
            vec![
                (1, vec![7, 1]),
                (2, vec![5, 2]),
                (6, vec![6, 2]),
                (10, vec![7, 2]),
            ]
        );
        let s = SingularityClass::bp(&[8, 7], Normalization::Unit).unwrap();
        let gammas: Vec<i64> = s
            .deformation_monomials()
            .iter()
            .map(|e| e.gamma_scaled)
            .collect();
        assert_eq!(gammas, vec![2, 3, 4, 5, 10, 11, 12, 18, 19, 26]);
        assert_eq!(s.delta(), 32);
    }

    #[test]
    fn regime_examples() {
        assert!(SingularityClass::bp(&[9, 4], Normalization::Unit)
            .unwrap()
            .regime_check());
        assert!(SingularityClass::bp(&[7, 5, 3], Normalization::Unit)
            .unwrap()
            .regime_check());
        assert!(!SingularityClass::bp(&[9, 9, 9], Normalization::Unit)
            .unwrap()
            .regime_check());
    }

    #[test]
    fn partial_order_examples() {
        assert_eq!(partial_order(&[4, 5], &[4, 4]), Comparison::Over);
        assert_eq!(partial_order(&[5, 2], &[2, 5]), Comparison::Incomparable);
        assert_eq!(partial_order(&[3, 3], &[3, 3]), Comparison::Equal);
    }
}

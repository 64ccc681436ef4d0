//! Semigroup combinatorics of the parameter weights: bistable subsets,
//! removable elements, minimal generators, and the first affine
//! stratification.

use crate::engine::{self};
use crate::ratio::Rat;
use crate::singularity::{is_over_eq, SingularityClass};
use crate::{Error, Result};
use num::{BigInt, Zero};
use std::collections::{BTreeSet, HashSet};

/// Scaled parameter weights with the relevant degree bound.
#[derive(Debug, Clone)]
pub struct ScaledWeights {
    pub g: Vec<i64>,
    pub bound: i64,
}

impl ScaledWeights {
    pub fn of(s: &SingularityClass) -> Self {
        ScaledWeights {
            g: s.deformation_monomials()
                .iter()
                .map(|e| e.gamma_scaled)
                .collect(),
            bound: s.gamma_budget_scaled().max(0),
        }
    }
}

/// Reachable sums (with at least one summand) of the selected scaled weights,
/// as a table up to `bound`.
fn sg_table(weights: &[i64], selected: &BTreeSet<usize>, bound: i64) -> Vec<bool> {
    let bound = bound.max(0) as usize;
    let mut dp = vec![false; bound + 1];
    dp[0] = true;
    for &j in selected {
        let g = weights[j - 1] as usize;
        for t in g..=bound {
            if dp[t - g] {
                dp[t] = true;
            }
        }
    }
    dp[0] = false;
    dp
}

/// Membership of a rational target in the additive semigroup `SG(K)`.
pub fn sg_membership(s: &SingularityClass, k: &BTreeSet<usize>, target: &Rat) -> bool {
    let scaled = target * Rat::from_integer(BigInt::from(s.weights.m));
    assert!(
        scaled.denom() == &BigInt::from(1),
        "target must be integral against M"
    );
    let t = i64::try_from(scaled.numer()).expect("scaled target fits i64");
    if t <= 0 {
        return false;
    }
    let w = ScaledWeights::of(s);
    let table = sg_table(&w.g, k, t.max(w.bound));
    table[t as usize]
}

/// Upper and semigroup stability of `K ⊆ J`.
pub fn is_bistable(s: &SingularityClass, k: &BTreeSet<usize>) -> bool {
    let js = s.deformation_monomials();
    for j in 1..=js.len() {
        if k.contains(&j) {
            continue;
        }
        for &kk in k {
            if is_over_eq(&js[j - 1].exponent, &js[kk - 1].exponent) {
                return false;
            }
        }
    }
    let w = ScaledWeights::of(s);
    let table = sg_table(&w.g, k, w.bound);
    for j in 1..=js.len() {
        if k.contains(&j) {
            continue;
        }
        let g = js[j - 1].gamma_scaled;
        if g <= w.bound && table[g as usize] {
            return false;
        }
    }
    true
}

/// One bistable subset with its removability data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BistableSet {
    pub set: BTreeSet<usize>,
    /// Elements whose removal leaves a bistable subset.
    pub removable: BTreeSet<usize>,
    pub is_proper: bool,
}

/// All bistable subsets of `J`, including `J` and the empty set, found by
/// decreasing induction on the cardinality. Ordered by (size descending,
/// set ascending).
pub fn enumerate_bistable(s: &SingularityClass) -> Vec<BistableSet> {
    let njs = s.deformation_monomials().len();
    let full: BTreeSet<usize> = (1..=njs).collect();
    debug_assert!(is_bistable(s, &full));
    let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut level = vec![full.clone()];
    seen.insert(full);
    let mut all: Vec<BTreeSet<usize>> = Vec::new();
    while let Some(current) = level.pop() {
        for &j in &current {
            let mut smaller = current.clone();
            smaller.remove(&j);
            if !seen.contains(&smaller) && is_bistable(s, &smaller) {
                seen.insert(smaller.clone());
                level.push(smaller);
            }
        }
        all.push(current);
    }
    all.sort_by(|a, b| (std::cmp::Reverse(a.len()), a).cmp(&(std::cmp::Reverse(b.len()), b)));
    all.into_iter()
        .map(|set| {
            let removable: BTreeSet<usize> = set
                .iter()
                .filter(|&&j| {
                    let mut smaller = set.clone();
                    smaller.remove(&j);
                    is_bistable(s, &smaller)
                })
                .copied()
                .collect();
            let is_proper = set.len() != njs;
            BistableSet {
                set,
                removable,
                is_proper,
            }
        })
        .collect()
}

/// Exhaustive bistability scan over all subsets, usable for small `J`.
pub fn enumerate_bistable_brute(s: &SingularityClass) -> Vec<BTreeSet<usize>> {
    let njs = s.deformation_monomials().len();
    assert!(njs <= 20, "brute force only for small J");
    let mut out = Vec::new();
    for mask in 0u32..(1 << njs) {
        let set: BTreeSet<usize> = (1..=njs).filter(|j| mask >> (j - 1) & 1 == 1).collect();
        if is_bistable(s, &set) {
            out.push(set);
        }
    }
    out
}

/// The unique minimal generating subset of `SG(J)`, by increasing-weight
/// induction.
pub fn minimal_generators(s: &SingularityClass) -> BTreeSet<usize> {
    let js = s.deformation_monomials();
    let w = ScaledWeights::of(s);
    let mut mg: BTreeSet<usize> = BTreeSet::new();
    for j in 1..=js.len() {
        let g = js[j - 1].gamma_scaled;
        let table = sg_table(&w.g, &mg, g.max(w.bound));
        if !table[g as usize] {
            mg.insert(j);
        }
    }
    mg
}

/// Proposition-2 case tag for `j ∈ K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prop2Case {
    /// `γ_j ∉ SG(K∖{j})`: on `V_K` with `u_j ≠ 0` every root over `j` shifts.
    ForcedShiftOverJ,
    /// `γ_j ∈ SG(K∖{j})`: roots over `j` shift at generic points of `V_K`.
    GenericShift,
    /// Additionally `j` is `≺`-minimal in `K`: some point of `V_K` with
    /// `u_j ≠ 0` leaves the root of `j` unshifted.
    UnshiftWitnessExists,
}

pub fn proposition2_classify(
    s: &SingularityClass,
    k: &BTreeSet<usize>,
    j: usize,
) -> Result<Prop2Case> {
    if !k.contains(&j) {
        return Err(Error::InvalidInput(format!("{} is not in K", j)));
    }
    let js = s.deformation_monomials();
    let mut without = k.clone();
    without.remove(&j);
    let in_sg = sg_membership(s, &without, &js[j - 1].gamma);
    if !in_sg {
        return Ok(Prop2Case::ForcedShiftOverJ);
    }
    let minimal = k.iter().all(|&kk| {
        kk == j || !is_over_eq(&js[j - 1].exponent, &js[kk - 1].exponent)
    });
    Ok(if minimal {
        Prop2Case::UnshiftWitnessExists
    } else {
        Prop2Case::GenericShift
    })
}

/// Predicted shift pattern at a sufficiently general point of `V_K`:
/// `r_{j+δ} = 1` exactly for `j ∈ K`.
pub fn corollary3_expected_shifts(
    s: &SingularityClass,
    k: &BTreeSet<usize>,
) -> Result<Vec<bool>> {
    if !is_bistable(s, k) {
        return Err(Error::NotBistable(format!("{:?}", k)));
    }
    Ok((1..=s.deformation_monomials().len())
        .map(|j| k.contains(&j))
        .collect())
}

/// Sample a rational point of `V_K` with numerators in `[−9,9]∖{0}` and
/// denominators in `[1,9]`, driven by a caller-provided integer source.
pub fn sample_point_in_vk(
    s: &SingularityClass,
    k: &BTreeSet<usize>,
    mut draw: impl FnMut(i64, i64) -> i64,
) -> Vec<Rat> {
    (1..=s.deformation_monomials().len())
        .map(|j| {
            if k.contains(&j) {
                let mut num = draw(-9, 9);
                if num == 0 {
                    num = 1;
                }
                let den = draw(1, 9);
                Rat::new(BigInt::from(num), BigInt::from(den))
            } else {
                Rat::zero()
            }
        })
        .collect()
}

/// Cross-validate the Corollary-3 prediction for one bistable `K` against the
/// engine at random points of `V_K`; Zariski-openness makes persistent
/// disagreement a bug, so a bounded number of retries is allowed.
pub fn validate_corollary3(
    s: &SingularityClass,
    k: &BTreeSet<usize>,
    retries: usize,
    mut draw: impl FnMut(i64, i64) -> i64,
) -> Result<bool> {
    let expected = corollary3_expected_shifts(s, k)?;
    let delta = s.delta();
    let prep = engine::prepare(s, &engine::shift_config(s))?;
    for _ in 0..retries {
        let point = sample_point_in_vk(s, k, &mut draw);
        let r = prep.shift_vector_at(&point)?;
        let got: Vec<bool> = (1..=expected.len())
            .map(|j| r[delta + j - 1] == 1)
            .collect();
        if got == expected {
            return Ok(true);
        }
        // `r = 1` outside K would contradict upper/semigroup stability; only
        // coincidental vanishing inside K warrants a retry.
        for j in 1..=expected.len() {
            if got[j - 1] && !expected[j - 1] {
                return Ok(false);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use crate::singularity::Normalization;

    fn set(js: &[usize]) -> BTreeSet<usize> {
        js.iter().copied().collect()
    }

    #[test]
    fn sg_membership_examples() {
        let s = SingularityClass::bp(&[7, 6], Normalization::Unit).unwrap();
        // weights/42: u1=2,(5,2) u2=3,(4,3) u3=4,(3,4) u4=9,(5,3) u5=10,(4,4) u6=16,(5,4)
        let all: BTreeSet<usize> = (1..=6).collect();
        let mut without2 = all.clone();
        without2.remove(&2);
        assert!(!sg_membership(&s, &without2, &rat(3, 42)));
        assert!(sg_membership(&s, &set(&[2]), &rat(3, 42)));
        assert!(sg_membership(&s, &set(&[1, 3]), &rat(10, 42)));
        assert!(!sg_membership(&s, &set(&[]), &rat(2, 42)));
    }

    #[test]
    fn bistable_basics() {
        let s = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        let all: BTreeSet<usize> = (1..=4).collect();
        assert!(is_bistable(&s, &all));
        assert!(is_bistable(&s, &set(&[])));
        // J entries: 1 ↔ (7,1), 2 ↔ (5,2), 3 ↔ (6,2), 4 ↔ (7,2).
        assert!(is_bistable(&s, &set(&[3, 4])));
        assert!(!is_bistable(&s, &set(&[2])));
    }

    #[test]
    fn bistable_counts_match_brute_force() {
        for (cls, nonempty) in [
            (SingularityClass::bp(&[7, 5], Normalization::Unit).unwrap(), 5),
            (SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap(), 4),
            (SingularityClass::bp(&[7, 6], Normalization::Unit).unwrap(), 10),
        ] {
            let fast = enumerate_bistable(&cls);
            let brute = enumerate_bistable_brute(&cls);
            let fast_sets: BTreeSet<BTreeSet<usize>> =
                fast.iter().map(|b| b.set.clone()).collect();
            let brute_sets: BTreeSet<BTreeSet<usize>> = brute.into_iter().collect();
            assert_eq!(fast_sets, brute_sets);
            let n = fast.iter().filter(|b| !b.set.is_empty()).count();
            assert_eq!(n, nonempty, "{}", cls);
        }
    }

    #[test]
    fn removable_always_exists_and_covers_proper_subsets() {
        let s = SingularityClass::bp(&[8, 7], Normalization::Unit).unwrap();
        let all = enumerate_bistable(&s);
        for b in &all {
            if !b.set.is_empty() {
                assert!(!b.removable.is_empty(), "no removable element in {:?}", b.set);
            }
            for other in &all {
                if other.set.len() < b.set.len() && other.set.is_subset(&b.set) {
                    assert!(
                        b.removable.iter().any(|j| !other.set.contains(j)),
                        "{:?} misses no removable element of {:?}",
                        other.set,
                        b.set
                    );
                }
            }
        }
    }

    #[test]
    fn minimal_generator_examples() {
        let s = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        assert_eq!(minimal_generators(&s), set(&[1]));
        let s = SingularityClass::bp(&[7, 6], Normalization::Unit).unwrap();
        assert_eq!(minimal_generators(&s), set(&[1, 2]));
        let s = SingularityClass::bp(&[7, 5], Normalization::Unit).unwrap();
        // weights/35: 1, 4, 6, 11 — 4 and 6 need the generator 1 plus itself.
        assert_eq!(minimal_generators(&s), set(&[1]));
    }

    #[test]
    fn prop2_cases() {
        let s = SingularityClass::bp(&[7, 6], Normalization::Unit).unwrap();
        let all: BTreeSet<usize> = (1..=6).collect();
        assert_eq!(
            proposition2_classify(&s, &all, 2).unwrap(),
            Prop2Case::ForcedShiftOverJ
        );
        // γ₃ = 4/42 = 2·(2/42) ∈ SG(J∖{3}); (3,4) is ≺-minimal in J.
        assert_eq!(
            proposition2_classify(&s, &all, 3).unwrap(),
            Prop2Case::UnshiftWitnessExists
        );
        assert_eq!(
            proposition2_classify(&s, &all, 5).unwrap(),
            Prop2Case::GenericShift
        );
        assert_eq!(
            proposition2_classify(&s, &set(&[2]), 2).unwrap(),
            Prop2Case::ForcedShiftOverJ
        );
    }
}

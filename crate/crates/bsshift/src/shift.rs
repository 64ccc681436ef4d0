//! Shift vectors, Bernstein-Sato root sets up to sign, unshift subspaces, and
//! solitude statistics.

use crate::engine::{self, EngineConfig, ParamMode};
use crate::poly::{Monomial, ParamPolynomial};
use crate::ratio::{fmt_rat, Rat};
use crate::singularity::{is_over_eq, SingularityClass};
use crate::{Error, Result};
use num::{BigInt, One, Zero};
use std::collections::BTreeSet;

/// Shift data at one parameter point.
#[derive(Debug, Clone)]
pub struct ShiftReport {
    /// Shift exponent per spectral rank (0-based storage for 1-based ranks).
    pub r: Vec<u8>,
    /// Root set of the reduced Bernstein-Sato polynomial up to sign:
    /// `{α_k − r_k}` with set semantics.
    pub roots: BTreeSet<Rat>,
    /// Spectral numbers strictly above `α̃_f + 1`.
    pub shiftable: BTreeSet<Rat>,
    /// Spectral numbers that are shifted (not roots unless hit again).
    pub shifted: BTreeSet<Rat>,
    /// The parameter point, one value per J entry.
    pub point: Vec<Rat>,
}

/// Defining equations of the subspace on which the root attached to `j` is
/// unshifted.
#[derive(Debug, Clone)]
pub struct SubspaceSystem {
    /// Target J index (1-based).
    pub j: usize,
    /// Target spectral rank `j + δ_f`.
    pub target_rank: usize,
    /// Triangular equations `u_{j'} = p_{j'}`, ascending in `γ_{j'}`; each
    /// right side only involves parameters of strictly lower weight.
    pub equations: Vec<(usize, ParamPolynomial)>,
    /// Fully substituted form: right sides only involve free parameters.
    pub solved: Vec<(usize, ParamPolynomial)>,
}

impl SubspaceSystem {
    pub fn codimension(&self) -> usize {
        self.equations.len()
    }

    /// Evaluate the triangular system at given values of the free parameters
    /// (constrained positions in `values` are ignored and overwritten).
    pub fn specialize(&self, values: &[Rat]) -> Vec<Rat> {
        let mut point = values.to_vec();
        for (j, p) in &self.equations {
            point[*j - 1] = p.evaluate(&point);
        }
        point
    }
}

fn gate_regime(s: &SingularityClass) -> Result<()> {
    if !s.regime_check() {
        return Err(Error::RegimeViolation(format!(
            "α̃ = {} < n/2 − 1",
            fmt_rat(&s.alpha_min())
        )));
    }
    Ok(())
}

fn gate_m1(s: &SingularityClass) -> Result<()> {
    let m1 = s.check_m1(true);
    if !m1.holds {
        return Err(Error::M1Violation(format!(
            "repeated non-integer spectral numbers, e.g. {}",
            fmt_rat(&m1.violations[0].0)
        )));
    }
    Ok(())
}

fn gate_integer_shiftable(s: &SingularityClass) -> Result<()> {
    let m = s.weights.m;
    let bound = s.alpha_min_scaled() + m;
    for &a in &s.spectrum_scaled() {
        if a > bound && a % m == 0 {
            return Err(Error::IntegerShiftableRoot(fmt_rat(
                &s.alpha_from_scaled(a),
            )));
        }
    }
    Ok(())
}

fn gate_all(s: &SingularityClass) -> Result<()> {
    gate_regime(s)?;
    gate_m1(s)?;
    gate_integer_shiftable(s)
}

/// Spectral numbers strictly greater than `α̃_f + 1`, as a set.
pub fn shiftable_roots(s: &SingularityClass) -> Result<BTreeSet<Rat>> {
    gate_m1(s)?;
    let m = s.weights.m;
    let bound = s.alpha_min_scaled() + m;
    Ok(s.spectrum_scaled()
        .iter()
        .filter(|&&a| a > bound)
        .map(|&a| s.alpha_from_scaled(a))
        .collect())
}

/// Shift vector and root set at a rational parameter point.
pub fn shifts_at_point(s: &SingularityClass, u: &[Rat]) -> Result<ShiftReport> {
    gate_all(s)?;
    let r = engine::point_shift_vector(s, u)?;
    Ok(report_from_shifts(s, r, u))
}

/// Reusable evaluator for shift vectors at many parameter points of one
/// class; the recursion skeleton is prepared once.
pub struct ShiftContext {
    class: SingularityClass,
    prep: engine::Prepared,
}

impl ShiftContext {
    pub fn new(s: &SingularityClass) -> Result<Self> {
        gate_all(s)?;
        Ok(ShiftContext {
            class: s.clone(),
            prep: engine::prepare(s, &engine::shift_config(s))?,
        })
    }

    pub fn shifts(&self, u: &[Rat]) -> Result<ShiftReport> {
        let r = self.prep.shift_vector_at(u)?;
        Ok(report_from_shifts(&self.class, r, u))
    }
}

/// Evaluator for the single question "is the maximal spectral number
/// shifted?", restricted to the deepest column.
pub struct MaxRootContext {
    class: SingularityClass,
    prep: engine::Prepared,
}

impl MaxRootContext {
    pub fn new(s: &SingularityClass) -> Result<Self> {
        gate_all(s)?;
        let cfg = EngineConfig {
            target_ranks: Some(vec![s.mu()]),
            order1_only: true,
            ..Default::default()
        };
        Ok(MaxRootContext {
            class: s.clone(),
            prep: engine::prepare(s, &cfg)?,
        })
    }

    pub fn shifted(&self, u: &[Rat]) -> Result<bool> {
        let r = self.prep.shift_vector_at(u)?;
        Ok(r[self.class.mu() - 1] == 1)
    }
}

fn report_from_shifts(s: &SingularityClass, r: Vec<u8>, u: &[Rat]) -> ShiftReport {
    let m = s.weights.m;
    let spectrum = s.spectrum_scaled();
    let mut roots = BTreeSet::new();
    let mut shifted = BTreeSet::new();
    for (idx, &a) in spectrum.iter().enumerate() {
        if r[idx] == 1 {
            roots.insert(s.alpha_from_scaled(a - m));
            shifted.insert(s.alpha_from_scaled(a));
        } else {
            roots.insert(s.alpha_from_scaled(a));
        }
    }
    let bound = s.alpha_min_scaled() + m;
    let shiftable = spectrum
        .iter()
        .filter(|&&a| a > bound)
        .map(|&a| s.alpha_from_scaled(a))
        .collect();
    ShiftReport {
        r,
        roots,
        shiftable,
        shifted,
        point: u.to_vec(),
    }
}

/// Raw order-one entries keyed by (source ν, target ν) for classes where the
/// restricted multiplicity condition fails and no automatic shift vector is
/// emitted.
pub fn manual_g1_entries(
    s: &SingularityClass,
    modes: &[ParamMode],
) -> Result<Vec<((Vec<u32>, Vec<u32>), ParamPolynomial)>> {
    gate_regime(s)?;
    let table = engine::build_gm_table(s, modes, &EngineConfig::default())?;
    let mut out = Vec::new();
    for src in s.jacobian_basis() {
        for tgt in s.jacobian_basis() {
            let p = table.g1_by_monomial(&src.nu, &tgt.nu);
            if !p.is_zero() {
                out.push(((src.nu.clone(), tgt.nu.clone()), p));
            }
        }
    }
    Ok(out)
}

/// Defining equations of the unshift subspace `V⁽ʲ⁾`.
pub fn unshift_subspace(s: &SingularityClass, j: usize) -> Result<SubspaceSystem> {
    gate_all(s)?;
    let js = s.deformation_monomials();
    if j == 0 || j > js.len() {
        return Err(Error::InvalidInput(format!("no J entry with index {}", j)));
    }
    let target = &js[j - 1];
    let l = target.spectral_rank;
    let nvars = js.len();
    // Columns are independent; only the target column is needed here.
    let cfg = EngineConfig {
        target_ranks: Some(vec![l]),
        order1_only: true,
        ..Default::default()
    };
    let table = engine::build_gm_table(s, &engine::all_formal(s), &cfg)?;

    let mut equations = Vec::new();
    for (idx, je) in js.iter().enumerate() {
        if !is_over_eq(&target.exponent, &je.exponent) {
            continue;
        }
        let src_nu: Vec<u32> = target
            .exponent
            .iter()
            .zip(&je.exponent)
            .map(|(t, e)| t - e + 1)
            .collect();
        let k = s
            .rank_of_nu(&src_nu)
            .expect("difference plus one lies in the basis lattice");
        let g = table.g1(k, l);
        let linear = g.coeff(&Monomial::var(nvars, idx));
        assert!(
            linear == -Rat::one(),
            "expected coefficient -1 of u_{} in g1[{},{}], got {}",
            idx + 1,
            k,
            l,
            fmt_rat(&linear)
        );
        let mut p = g.clone();
        p.add_term(Monomial::var(nvars, idx), Rat::one());
        equations.push((idx + 1, p));
    }
    equations.sort_by_key(|(j2, _)| js[*j2 - 1].gamma_scaled);

    let mut solved: Vec<(usize, ParamPolynomial)> = Vec::new();
    for (j2, p) in &equations {
        let mut q = p.clone();
        for (j3, repl) in &solved {
            q = q.substitute(nvars, *j3 - 1, repl);
        }
        solved.push((*j2, q));
    }
    Ok(SubspaceSystem {
        j,
        target_rank: l,
        equations,
        solved,
    })
}

/// Solitude ratio and solitude distance of `alpha` within a root set.
pub fn solitude(
    s: &SingularityClass,
    roots: &BTreeSet<Rat>,
    alpha: &Rat,
) -> Result<(Rat, Rat)> {
    let shiftable = shiftable_roots(s)?;
    if !roots.contains(alpha) {
        return Err(Error::NotSolitary(format!(
            "{} is not a root",
            fmt_rat(alpha)
        )));
    }
    let unshifted: Vec<&Rat> = shiftable.intersection(roots).collect();
    if unshifted.len() != 1 || unshifted[0] != alpha {
        return Err(Error::NotSolitary(format!(
            "{} is not the unique unshifted shiftable root",
            fmt_rat(alpha)
        )));
    }
    let below = shiftable.iter().filter(|x| *x < alpha).count();
    let sr = Rat::new(BigInt::from(below as i64), BigInt::from(shiftable.len() as i64));
    let sd = roots
        .iter()
        .filter(|x| *x != alpha)
        .map(|x| {
            let d = x - alpha;
            if d < Rat::zero() {
                -d
            } else {
                d
            }
        })
        .min()
        .ok_or_else(|| Error::NotSolitary("no other root".into()))?;
    Ok((sr, sd))
}

/// Remark: with any nonzero parameter the maximal spectral number is shifted.
pub fn max_root_shift_check(s: &SingularityClass, u: &[Rat]) -> Result<bool> {
    if u.iter().all(|v| v.is_zero()) {
        return Ok(true);
    }
    let report = shifts_at_point(s, u)?;
    Ok(report.r[s.mu() - 1] == 1)
}

/// One-line picture of the root distribution: `●` marks roots of the reduced
/// Bernstein-Sato polynomial up to sign, `○` marks shifted spectral numbers.
pub fn root_distribution_text(s: &SingularityClass, report: &ShiftReport) -> String {
    let m = s.weights.m;
    let to_scaled = |r: &Rat| -> i64 {
        let v = r * Rat::from_integer(BigInt::from(m));
        i64::try_from(v.numer()).expect("scaled root fits i64")
    };
    let roots: BTreeSet<i64> = report.roots.iter().map(to_scaled).collect();
    let shifted: BTreeSet<i64> = report.shifted.iter().map(to_scaled).collect();
    let lo = *roots.iter().min().unwrap();
    let hi = *roots
        .iter()
        .chain(shifted.iter())
        .max()
        .unwrap();
    let mut line = String::new();
    for p in lo..=hi {
        if roots.contains(&p) {
            line.push('●');
        } else if shifted.contains(&p) {
            line.push('○');
        } else {
            line.push('·');
        }
    }
    format!(
        "{}  {}  {}",
        fmt_rat(&s.alpha_from_scaled(lo)),
        line,
        fmt_rat(&s.alpha_from_scaled(hi))
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use crate::singularity::Normalization;

    #[test]
    fn zero_point_echoes_spectrum() {
        let s = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        let u = vec![rat(0, 1); 4];
        let rep = shifts_at_point(&s, &u).unwrap();
        assert!(rep.r.iter().all(|&x| x == 0));
        let spectrum: BTreeSet<Rat> = s.spectrum().into_iter().collect();
        assert_eq!(rep.roots, spectrum);
        assert!(rep.shifted.is_empty());
    }

    #[test]
    fn shiftable_root_sets() {
        let s = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        let r = shiftable_roots(&s).unwrap();
        let want: BTreeSet<Rat> =
            [rat(50, 36), rat(51, 36), rat(55, 36), rat(59, 36)].into();
        assert_eq!(r, want);
        let s = SingularityClass::bp(&[3, 3], Normalization::Unit).unwrap();
        assert!(shiftable_roots(&s).unwrap().is_empty());
        let s = SingularityClass::bp(&[7, 5, 3], Normalization::Unit).unwrap();
        assert_eq!(shiftable_roots(&s).unwrap().len(), 16);
    }

    #[test]
    fn m1_gate_refuses_homogeneous_classes() {
        let s = SingularityClass::bp(&[10, 10], Normalization::Reciprocal).unwrap();
        let u = vec![rat(0, 1); s.deformation_monomials().len()];
        assert!(matches!(
            shifts_at_point(&s, &u),
            Err(Error::M1Violation(_))
        ));
    }

    #[test]
    fn minimal_root_is_preserved() {
        let s = SingularityClass::bp(&[9, 4], Normalization::Unit).unwrap();
        let mut u = vec![rat(0, 1); 4];
        u[0] = rat(1, 1);
        let rep = shifts_at_point(&s, &u).unwrap();
        assert_eq!(rep.roots.iter().next().unwrap(), &s.alpha_min());
        assert!(max_root_shift_check(&s, &u).unwrap());
    }
}

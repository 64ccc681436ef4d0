//! Gröbner-free Gauss-Manin recursion.
//!
//! Monomial forms `ω^ν` are expanded in the elementary sections `v_l` attached
//! to the Milnor basis. Working by decreasing induction on the weighted degree
//! `α_𝐰(ν)`, each form first receives its weighted-homogeneous base term from
//! the graded `∂t` rules, then folds in the deformation contributions: a term
//! of order `o` at `(ν+ν⁽ʲ⁾, l)` contributes at order `o+1` to `(ν, l)` with
//! coefficient `−γ_j/D`, where `D = α_{f,l} − (o+1) − α_𝐰(ν)` equals the
//! weighted degree of the resulting parameter monomial. Per `(ν, l)` only the
//! maximal-order term is retained: equal orders are summed, lower orders are
//! dropped, higher orders replace. Terms whose weighted parameter degree
//! exceeds the truncation budget are irrelevant to every order-one entry and
//! are discarded.

use crate::poly::{Monomial, ParamPolynomial};
use crate::ratio::Rat;
use crate::singularity::{Kind, Normalization, SingularityClass};
use crate::{Error, Result};
use num::{BigInt, One, Zero};
use std::collections::{BTreeMap, HashMap};

/// Per-parameter mode for a table build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamMode {
    Formal,
    Zero,
    Value(Rat),
}

impl ParamMode {
    fn normalize(self) -> ParamMode {
        match self {
            ParamMode::Value(v) if v.is_zero() => ParamMode::Zero,
            other => other,
        }
    }
}

/// All parameters formal.
pub fn all_formal(s: &SingularityClass) -> Vec<ParamMode> {
    vec![ParamMode::Formal; s.deformation_monomials().len()]
}

/// All parameters set to rational values (missing entries are zero).
pub fn point_modes(s: &SingularityClass, values: &[Rat]) -> Vec<ParamMode> {
    assert_eq!(values.len(), s.deformation_monomials().len());
    values
        .iter()
        .map(|v| ParamMode::Value(v.clone()).normalize())
        .collect()
}

/// Build options.
#[derive(Debug, Clone, Default)]
pub struct EngineConfig {
    /// Scaled override of the weighted-degree truncation budget; the default
    /// is `(n − 2α̃_f − 1)·M`.
    pub budget_scaled: Option<i64>,
    /// Restrict the computation to these target ranks. Columns are
    /// independent, so this is an exact restriction of the table.
    pub target_ranks: Option<Vec<usize>>,
    /// Keep only terms that can still reach order one at some basis entry.
    /// Order-one data and shift vectors are unchanged; entries of lower
    /// leading order may be missing from the table.
    pub order1_only: bool,
}

impl EngineConfig {
    /// Configuration for extracting order-one data only.
    pub fn order1() -> Self {
        EngineConfig {
            order1_only: true,
            ..Default::default()
        }
    }
}

/// Leading asymptotic term of one expansion coefficient: the `∂t`-order and
/// the parameter polynomial in front of `∂t^order v_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingTerm {
    pub order: i32,
    pub poly: ParamPolynomial,
}

/// One step of the graded reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// Rank of the basis element reached.
    pub rank: usize,
    pub nu: Vec<u32>,
    pub steps: u32,
    pub coeff: Rat,
}

/// Graded `∂t` image of `ω^ν` along one axis rule.
///
/// For Brieskorn-Pham the axis is the variable index; for the chain and loop
/// types axis 0 is the `i > a` rule and axis 1 the `j > b` rule. Returns the
/// target `ν'` and the rule coefficient, `Ok(None)` when the coefficient
/// vanishes, and `PreconditionFailed` when the rule does not apply.
pub fn graded_dt_step(
    s: &SingularityClass,
    nu: &[u32],
    axis: usize,
) -> Result<Option<(Vec<u32>, Rat)>> {
    let fail = |msg: String| Err(Error::PreconditionFailed(msg));
    let unit = s.normalization == Normalization::Unit;
    match &s.kind {
        Kind::Bp(es) => {
            if axis >= es.len() {
                return fail(format!("axis {} out of range", axis));
            }
            let e = es[axis] as i64;
            let v = nu[axis] as i64;
            if v <= e {
                return fail(format!("bp axis {} needs exponent > {}", axis, e));
            }
            let mut target = nu.to_vec();
            target[axis] -= es[axis];
            let num = BigInt::from(v - e);
            let coeff = if unit {
                Rat::new(num, BigInt::from(e))
            } else {
                Rat::from_integer(num)
            };
            Ok(Some((target, coeff)))
        }
        Kind::Chain2(a, b) => {
            let (a, b) = (*a as i64, *b as i64);
            let (i, j) = (nu[0] as i64, nu[1] as i64);
            match axis {
                0 => {
                    if i <= a {
                        return fail(format!("chain x-rule needs i > {}", a));
                    }
                    // coefficient a⁻¹(i − a − j/b) = (b(i−a) − j)/(ab)
                    let num = b * (i - a) - j;
                    if num < 0 {
                        return fail("chain x-rule coefficient negative".into());
                    }
                    if num == 0 {
                        return Ok(None);
                    }
                    let den = if unit { a * b } else { b };
                    Ok(Some((
                        vec![(i - a) as u32, j as u32],
                        Rat::new(BigInt::from(num), BigInt::from(den)),
                    )))
                }
                1 => {
                    if j <= b {
                        return fail(format!("chain y-rule needs j > {}", b));
                    }
                    let num = j - b;
                    let coeff = if unit {
                        Rat::new(BigInt::from(num), BigInt::from(b))
                    } else {
                        Rat::from_integer(BigInt::from(num))
                    };
                    Ok(Some((vec![(i - 1) as u32, (j - b) as u32], coeff)))
                }
                _ => fail(format!("axis {} out of range", axis)),
            }
        }
        Kind::Loop2(a, b) => {
            let (a, b) = (*a as i64, *b as i64);
            let (i, j) = (nu[0] as i64, nu[1] as i64);
            let d = a * b - 1;
            match axis {
                0 => {
                    if i <= a {
                        return fail(format!("loop x-rule needs i > {}", a));
                    }
                    if a * j - i <= 0 {
                        return fail("loop x-rule needs positive (1,b)-component".into());
                    }
                    let num = b * (i - a) - j + 1;
                    if num < 0 {
                        return fail("loop x-rule coefficient negative".into());
                    }
                    if num == 0 {
                        return Ok(None);
                    }
                    let coeff = if unit {
                        Rat::new(BigInt::from(num), BigInt::from(d))
                    } else {
                        Rat::new(BigInt::from(a * num), BigInt::from(d))
                    };
                    Ok(Some((vec![(i - a) as u32, (j - 1) as u32], coeff)))
                }
                1 => {
                    if j <= b {
                        return fail(format!("loop y-rule needs j > {}", b));
                    }
                    if b * i - j <= 0 {
                        return fail("loop y-rule needs positive (a,1)-component".into());
                    }
                    let num = a * (j - b) - i + 1;
                    if num < 0 {
                        return fail("loop y-rule coefficient negative".into());
                    }
                    if num == 0 {
                        return Ok(None);
                    }
                    let coeff = if unit {
                        Rat::new(BigInt::from(num), BigInt::from(d))
                    } else {
                        Rat::new(BigInt::from(b * num), BigInt::from(d))
                    };
                    Ok(Some((vec![(i - 1) as u32, (j - b) as u32], coeff)))
                }
                _ => fail(format!("axis {} out of range", axis)),
            }
        }
        Kind::Loop3(..) => fail("graded rules are not implemented for loop3".into()),
    }
}

/// Iterate graded steps until `ν` lands in the basis lattice.
///
/// Returns `Ok(None)` when the graded class vanishes: a step coefficient is
/// zero, or no rule applies at a non-basis point.
pub fn graded_reduce(s: &SingularityClass, nu: &[u32]) -> Result<Option<Reduction>> {
    if matches!(s.kind, Kind::Loop3(..)) {
        return Err(Error::UnsupportedArity(
            "the Gauss-Manin engine does not handle loop3 classes".into(),
        ));
    }
    assert!(nu.iter().all(|&v| v >= 1), "reduce needs positive entries");
    let mut cur = nu.to_vec();
    let mut coeff = Rat::one();
    let mut steps = 0u32;
    let fuel = cur.iter().map(|&v| v as u64).sum::<u64>() + 4;
    for _ in 0..fuel {
        if let Some(rank) = s.rank_of_nu(&cur) {
            return Ok(Some(Reduction {
                rank,
                nu: cur,
                steps,
                coeff,
            }));
        }
        let mut applied = false;
        for axis in 0..s.n {
            match graded_dt_step(s, &cur, axis) {
                Ok(Some((next, c))) => {
                    cur = next;
                    coeff *= c;
                    steps += 1;
                    applied = true;
                    break;
                }
                Ok(None) => return Ok(None),
                Err(Error::PreconditionFailed(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        if !applied {
            // Stuck off the lattice: the graded class is zero.
            return Ok(None);
        }
    }
    Err(Error::NonTerminating(format!("{:?}", nu)))
}

/// The computed table of leading asymptotic terms.
#[derive(Debug, Clone)]
pub struct GmTable {
    pub class: SingularityClass,
    pub modes: Vec<ParamMode>,
    pub budget_scaled: i64,
    pub regime: bool,
    entries: HashMap<(Vec<u32>, usize), LeadingTerm>,
}

impl GmTable {
    pub fn entry(&self, nu: &[u32], l: usize) -> Option<&LeadingTerm> {
        self.entries.get(&(nu.to_vec(), l))
    }

    /// Order-one polynomial at `(ν_k, l)`; zero when the leading order is
    /// below one.
    pub fn g1(&self, source_rank: usize, l: usize) -> ParamPolynomial {
        let nu = &self.class.basis_element(source_rank).nu;
        match self.entries.get(&(nu.clone(), l)) {
            Some(t) if t.order == 1 => t.poly.clone(),
            _ => ParamPolynomial::zero(),
        }
    }

    /// Order-one polynomial addressed by source and target basis monomials
    /// (`ν` vectors). Used by the manual mode for classes with spectral ties.
    pub fn g1_by_monomial(&self, source_nu: &[u32], target_nu: &[u32]) -> ParamPolynomial {
        match self.class.rank_of_nu(target_nu) {
            Some(l) => match self.entries.get(&(source_nu.to_vec(), l)) {
                Some(t) if t.order == 1 => t.poly.clone(),
                _ => ParamPolynomial::zero(),
            },
            None => ParamPolynomial::zero(),
        }
    }

    /// Shift exponents: `r_l = 1` iff some source has an order-one leading
    /// term at target `l`.
    pub fn shift_vector(&self) -> Vec<u8> {
        let mu = self.class.mu();
        let mut r = vec![0u8; mu + 1];
        for b in self.class.jacobian_basis() {
            for l in 1..=mu {
                if let Some(t) = self.entries.get(&(b.nu.clone(), l)) {
                    if t.order == 1 && !t.poly.is_zero() {
                        r[l] = 1;
                    }
                }
            }
        }
        r.remove(0);
        r
    }

    pub fn entries(&self) -> &HashMap<(Vec<u32>, usize), LeadingTerm> {
        &self.entries
    }
}

/// Reachable monomials: all `ν_base + Σ ν⁽ʲ⁾` over active multisets within
/// the budget and an optional weighted-degree cap. Dijkstra over the
/// translation graph, keyed by the least budget needed to reach each point.
fn reachable_set(
    s: &SingularityClass,
    active: &[bool],
    budget: i64,
    aw_cap: Option<i64>,
) -> Vec<(Vec<u32>, i64)> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let js = s.deformation_monomials();
    let mut best: HashMap<Vec<u32>, i64> = HashMap::new();
    let mut heap: BinaryHeap<Reverse<(i64, Vec<u32>)>> = BinaryHeap::new();
    for b in s.jacobian_basis() {
        best.insert(b.nu.clone(), 0);
        heap.push(Reverse((0, b.nu.clone())));
    }
    while let Some(Reverse((cost, nu))) = heap.pop() {
        if best.get(&nu) != Some(&cost) {
            continue;
        }
        let aw = s.alpha_w_scaled(&nu);
        for (jidx, je) in js.iter().enumerate() {
            if !active[jidx] {
                continue;
            }
            let next_cost = cost + je.gamma_scaled;
            if next_cost > budget {
                continue;
            }
            if let Some(cap) = aw_cap {
                if aw + je.gamma_scaled + s.weights.m > cap {
                    continue;
                }
            }
            let next: Vec<u32> = nu.iter().zip(&je.exponent).map(|(x, y)| x + y).collect();
            if best.get(&next).map_or(true, |&c| next_cost < c) {
                best.insert(next.clone(), next_cost);
                heap.push(Reverse((next_cost, next)));
            }
        }
    }
    best.into_iter().collect()
}

/// Precomputed recursion skeleton: the reachable node set in processing
/// order, base reductions, and fold edges. Reusable across many parameter
/// points with the same configuration.
pub struct Prepared {
    class: SingularityClass,
    budget: i64,
    order1_only: bool,
    active: Vec<bool>,
    wanted_rank: Option<Vec<bool>>,
    gamma_min_active: Option<i64>,
    nus: Vec<Vec<u32>>,
    aws: Vec<i64>,
    bases: Vec<Option<Reduction>>,
    /// Per node: (J index, source node index) for each in-set translate.
    edges: Vec<Vec<(u32, u32)>>,
}

/// Prepare the recursion skeleton with all parameters active.
pub fn prepare(s: &SingularityClass, cfg: &EngineConfig) -> Result<Prepared> {
    prepare_with_active(s, cfg, &vec![true; s.deformation_monomials().len()])
}

fn prepare_with_active(
    s: &SingularityClass,
    cfg: &EngineConfig,
    active: &[bool],
) -> Result<Prepared> {
    let js = s.deformation_monomials();
    let budget = cfg.budget_scaled.unwrap_or_else(|| s.gamma_budget_scaled());
    let m_scaled = s.weights.m;
    let alpha_min = s.alpha_min_scaled();
    let wanted_rank: Option<Vec<bool>> = cfg.target_ranks.as_ref().map(|ranks| {
        let mut w = vec![false; s.mu() + 1];
        for &l in ranks {
            w[l] = true;
        }
        w
    });
    let gamma_min_active: Option<i64> = js
        .iter()
        .enumerate()
        .filter(|(i, _)| active[*i])
        .map(|(_, e)| e.gamma_scaled)
        .min();
    // Nodes above this weighted degree cannot host any order-one-relevant
    // term: a base term there sits at order −q and needs q+1 descent steps,
    // each dropping α_𝐰 by at least M + γ_min.
    let aw_cap: Option<i64> = if cfg.order1_only {
        gamma_min_active.map(|g| {
            (1..=s.mu())
                .filter(|l| wanted_rank.as_ref().map_or(true, |w| w[*l]))
                .map(|l| {
                    let al = s.basis_element(l).alpha_scaled;
                    let q_max = ((al - alpha_min - m_scaled - g) / g).max(0);
                    al + q_max * m_scaled
                })
                .max()
                .unwrap_or(alpha_min)
        })
    } else {
        None
    };

    let mut keyed: Vec<(i64, Vec<u32>)> = reachable_set(s, active, budget.max(0), aw_cap)
        .into_iter()
        .map(|(nu, _)| (s.alpha_w_scaled(&nu), nu))
        .collect();
    keyed.sort_by(|a, b| (std::cmp::Reverse(a.0), &a.1).cmp(&(std::cmp::Reverse(b.0), &b.1)));
    let index: HashMap<&[u32], usize> = keyed
        .iter()
        .enumerate()
        .map(|(i, (_, nu))| (nu.as_slice(), i))
        .collect();

    let mut bases = Vec::with_capacity(keyed.len());
    let mut edges = Vec::with_capacity(keyed.len());
    for (idx, (_, nu)) in keyed.iter().enumerate() {
        bases.push(graded_reduce(s, nu)?);
        let mut out = Vec::new();
        for (jidx, je) in js.iter().enumerate() {
            if !active[jidx] {
                continue;
            }
            let up: Vec<u32> = nu.iter().zip(&je.exponent).map(|(x, y)| x + y).collect();
            if let Some(&src_idx) = index.get(up.as_slice()) {
                debug_assert!(src_idx < idx, "sources must precede users");
                out.push((jidx as u32, src_idx as u32));
            }
        }
        edges.push(out);
    }
    let (aws, nus): (Vec<i64>, Vec<Vec<u32>>) = keyed.into_iter().unzip();
    Ok(Prepared {
        class: s.clone(),
        budget,
        order1_only: cfg.order1_only,
        active: active.to_vec(),
        wanted_rank,
        gamma_min_active,
        nus,
        aws,
        bases,
        edges,
    })
}

/// Coefficient algebra used by the recursion: full parameter polynomials for
/// symbolic builds, plain rationals for point evaluation.
trait FoldCoeff: Clone {
    fn base(nvars: usize, c: &Rat) -> Self;
    /// Apply one fold step: multiply by `factor` and by `u_j` (formal) or by
    /// its value. Returns `None` when the result vanishes.
    fn fold(&self, factor: &Rat, mode: &ParamMode, jidx: usize) -> Option<Self>;
    fn accumulate(&mut self, other: &Self);
    fn vanished(&self) -> bool;
}

impl FoldCoeff for ParamPolynomial {
    fn base(nvars: usize, c: &Rat) -> Self {
        ParamPolynomial::constant(nvars, c.clone())
    }
    fn fold(&self, factor: &Rat, mode: &ParamMode, jidx: usize) -> Option<Self> {
        let out = match mode {
            ParamMode::Formal => self.scale_and_shift(factor, jidx),
            ParamMode::Value(v) => self.scale(&(factor * v)),
            ParamMode::Zero => unreachable!(),
        };
        if out.is_zero() {
            None
        } else {
            Some(out)
        }
    }
    fn accumulate(&mut self, other: &Self) {
        self.add_assign(other);
    }
    fn vanished(&self) -> bool {
        self.is_zero()
    }
}

impl FoldCoeff for Rat {
    fn base(_nvars: usize, c: &Rat) -> Self {
        c.clone()
    }
    fn fold(&self, factor: &Rat, mode: &ParamMode, _jidx: usize) -> Option<Self> {
        let out = match mode {
            ParamMode::Value(v) => self * factor * v,
            _ => panic!("rational folding needs point values"),
        };
        if out.is_zero() {
            None
        } else {
            Some(out)
        }
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
    fn vanished(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl Prepared {
    fn run<C: FoldCoeff>(&self, modes: &[ParamMode]) -> Result<Vec<BTreeMap<usize, (i32, C)>>> {
        let s = &self.class;
        let js = s.deformation_monomials();
        assert_eq!(modes.len(), js.len(), "one mode per J entry");
        for (i, m) in modes.iter().enumerate() {
            assert!(
                self.active[i] || *m == ParamMode::Zero,
                "parameter u_{} was inactive at preparation time",
                i + 1
            );
        }
        let nvars = js.len();
        let m_scaled = s.weights.m;
        let alpha_min = s.alpha_min_scaled();
        let budget = self.budget;
        // A term of order o at a node of weighted degree a with parameter
        // degree w can gain one order per fold step; the steps are bounded by
        // the remaining budget (each adds ≥ γ_min) and by the descent to the
        // basis (each drops α_𝐰 by at least M + γ_min). Below order one by
        // both bounds the term is irrelevant to every order-one entry.
        let prunable = |order: i32, wdeg_scaled: i64, aw_scaled: i64| -> bool {
            if !self.order1_only {
                return false;
            }
            match self.gamma_min_active {
                Some(g) => {
                    let climb = ((budget - wdeg_scaled) / g)
                        .min((aw_scaled - alpha_min) / (m_scaled + g));
                    (order as i64) + climb < 1
                }
                None => false,
            }
        };
        let alpha_of_rank: Vec<i64> = s.spectrum_scaled();
        let mut terms: Vec<BTreeMap<usize, (i32, C)>> = vec![BTreeMap::new(); self.nus.len()];

        for idx in 0..self.nus.len() {
            let aw = self.aws[idx];
            if let Some(red) = &self.bases[idx] {
                let order = -(red.steps as i32);
                let wanted = self.wanted_rank.as_ref().map_or(true, |w| w[red.rank]);
                if wanted && !prunable(order, 0, aw) {
                    terms[idx].insert(red.rank, (order, C::base(nvars, &red.coeff)));
                }
            }
            for &(jidx, src_idx) in &self.edges[idx] {
                let jidx = jidx as usize;
                if modes[jidx] == ParamMode::Zero {
                    continue;
                }
                let (done, rest) = terms.split_at_mut(idx);
                let cur = &mut rest[0];
                let src = &done[src_idx as usize];
                let gamma = js[jidx].gamma_scaled;
                for (&l, (order, coeff)) in src {
                    let order_new = order + 1;
                    // D = α_{f,l} − (o+1) − α_𝐰(ν), the new weighted degree.
                    let d_scaled = alpha_of_rank[l - 1] - order_new as i64 * m_scaled - aw;
                    if d_scaled > budget || prunable(order_new, d_scaled, aw) {
                        continue;
                    }
                    if d_scaled <= 0 {
                        return Err(Error::ResonantDenominator(format!(
                            "D = {}/{} at nu {:?}, target {}",
                            d_scaled, m_scaled, self.nus[idx], l
                        )));
                    }
                    // −γ_j/D in scaled integers.
                    let factor = Rat::new(BigInt::from(-gamma), BigInt::from(d_scaled));
                    let Some(contrib) = coeff.fold(&factor, &modes[jidx], jidx) else {
                        continue;
                    };
                    use std::collections::btree_map::Entry;
                    match cur.entry(l) {
                        Entry::Vacant(v) => {
                            v.insert((order_new, contrib));
                        }
                        Entry::Occupied(mut o) => {
                            let t = o.get_mut();
                            if order_new == t.0 {
                                t.1.accumulate(&contrib);
                                if t.1.vanished() {
                                    o.remove();
                                }
                            } else if order_new > t.0 {
                                *t = (order_new, contrib);
                            }
                        }
                    }
                }
            }
            if let Some(rank) = s.rank_of_nu(&self.nus[idx]) {
                for (&l, (order, _)) in &terms[idx] {
                    if *order > 1 {
                        return Err(Error::RegimeViolation(format!(
                            "basis entry (rank {}, target {}) reached order {}",
                            rank, l, order
                        )));
                    }
                }
            }
        }
        Ok(terms)
    }

    /// Run the recursion at the given parameter modes; every active mode must
    /// have been active at preparation time.
    pub fn build(&self, modes: &[ParamMode]) -> Result<GmTable> {
        let modes: Vec<ParamMode> = modes.iter().cloned().map(ParamMode::normalize).collect();
        let terms = self.run::<ParamPolynomial>(&modes)?;
        let mut entries = HashMap::new();
        for (idx, node_terms) in terms.into_iter().enumerate() {
            for (l, (order, poly)) in node_terms {
                entries.insert((self.nus[idx].clone(), l), LeadingTerm { order, poly });
            }
        }
        Ok(GmTable {
            class: self.class.clone(),
            modes,
            budget_scaled: self.budget,
            regime: self.class.regime_check(),
            entries,
        })
    }

    /// Shift exponents at a parameter point, over plain rationals.
    pub fn shift_vector_at(&self, values: &[Rat]) -> Result<Vec<u8>> {
        let s = &self.class;
        let modes = point_modes(s, values);
        let terms = self.run::<Rat>(&modes)?;
        let index: HashMap<&[u32], usize> = self
            .nus
            .iter()
            .enumerate()
            .map(|(i, nu)| (nu.as_slice(), i))
            .collect();
        let mu = s.mu();
        let mut r = vec![0u8; mu];
        for b in s.jacobian_basis() {
            if let Some(&idx) = index.get(b.nu.as_slice()) {
                for (&l, (order, coeff)) in &terms[idx] {
                    if *order == 1 && !Zero::is_zero(coeff) {
                        r[l - 1] = 1;
                    }
                }
            }
        }
        Ok(r)
    }
}

/// Build the table of leading asymptotic terms for `f = f₁ + Σ uⱼhⱼ`.
pub fn build_gm_table(
    s: &SingularityClass,
    modes: &[ParamMode],
    cfg: &EngineConfig,
) -> Result<GmTable> {
    let modes: Vec<ParamMode> = modes.iter().cloned().map(ParamMode::normalize).collect();
    let active: Vec<bool> = modes.iter().map(|m| *m != ParamMode::Zero).collect();
    prepare_with_active(s, cfg, &active)?.build(&modes)
}

/// Configuration for shift extraction: order-one data on the shiftable
/// columns (the only ones a shift vector can touch).
pub fn shift_config(s: &SingularityClass) -> EngineConfig {
    EngineConfig {
        target_ranks: Some(((s.delta() + 1)..=s.mu()).collect()),
        order1_only: true,
        ..Default::default()
    }
}

/// One-shot shift vector at a rational parameter point, over plain rationals;
/// the recursion skeleton is restricted to the nonzero parameters.
pub fn point_shift_vector(s: &SingularityClass, values: &[Rat]) -> Result<Vec<u8>> {
    let active: Vec<bool> = values.iter().map(|v| !v.is_zero()).collect();
    prepare_with_active(s, &shift_config(s), &active)?.shift_vector_at(values)
}

/// The symbolic order-one matrix: nonzero `g¹_{k,l}` keyed by
/// (source rank, target rank).
pub fn g1_matrix(table: &GmTable) -> BTreeMap<(usize, usize), ParamPolynomial> {
    let mu = table.class.mu();
    let mut out = BTreeMap::new();
    for b in table.class.jacobian_basis() {
        for l in 1..=mu {
            if let Some(t) = table.entry(&b.nu, l) {
                if t.order == 1 && !t.poly.is_zero() {
                    out.insert((b.rank, l), t.poly.clone());
                }
            }
        }
    }
    out
}

/// Audit report for the structural laws of the order-one matrix.
#[derive(Debug, Clone, Default)]
pub struct Theorem2Report {
    pub entries_checked: usize,
    pub monomials_checked: usize,
    pub violations: Vec<String>,
}

impl Theorem2Report {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify the degree, sign, linear-coefficient, and fullness laws on a
/// symbolic order-one matrix.
pub fn theorem2_audit(
    s: &SingularityClass,
    g1: &BTreeMap<(usize, usize), ParamPolynomial>,
) -> Theorem2Report {
    let js = s.deformation_monomials();
    let gammas: Vec<i64> = js.iter().map(|e| e.gamma_scaled).collect();
    let alpha: Vec<i64> = s.spectrum_scaled();
    let m = s.weights.m;
    let budget = s.gamma_budget_scaled();
    let mut report = Theorem2Report::default();

    // Realizable monomials per (source rank, target rank): parameter
    // multisets whose accumulated monomial reduces to the target at order
    // one. The walk is capped like the engine: an order-one contribution of
    // size r has accumulated weighted degree α_k + deg + r·M ≤ α_l + (r−1)·M,
    // so α_k + deg + M ≤ max α_l.
    let mut realizable: HashMap<(usize, usize), Vec<Monomial>> = HashMap::new();
    let alpha_max = *alpha.last().unwrap();
    {
        struct Walk<'a> {
            s: &'a SingularityClass,
            js: &'a [crate::singularity::JEntry],
            budget: i64,
            m: i64,
            alpha: &'a [i64],
            alpha_max: i64,
        }
        impl Walk<'_> {
            #[allow(clippy::too_many_arguments)]
            fn rec(
                &self,
                src: &crate::singularity::BasisElement,
                from: usize,
                expo: &mut Vec<u32>,
                nu: &mut Vec<u32>,
                deg: i64,
                out: &mut HashMap<(usize, usize), Vec<Monomial>>,
            ) {
                if deg > 0 {
                    if let Ok(Some(red)) = graded_reduce(self.s, nu) {
                        if self.alpha[red.rank - 1] - src.alpha_scaled - self.m == deg {
                            out.entry((src.rank, red.rank))
                                .or_default()
                                .push(Monomial(expo.clone()));
                        }
                    }
                }
                for idx in from..self.js.len() {
                    let g = self.js[idx].gamma_scaled;
                    if deg + g > self.budget
                        || src.alpha_scaled + deg + g + self.m > self.alpha_max
                    {
                        continue;
                    }
                    expo[idx] += 1;
                    for (k, &e) in self.js[idx].exponent.iter().enumerate() {
                        nu[k] += e;
                    }
                    self.rec(src, idx, expo, nu, deg + g, out);
                    expo[idx] -= 1;
                    for (k, &e) in self.js[idx].exponent.iter().enumerate() {
                        nu[k] -= e;
                    }
                }
            }
        }
        let walk = Walk {
            s,
            js,
            budget: budget.max(0),
            m,
            alpha: &alpha,
            alpha_max,
        };
        for b in s.jacobian_basis() {
            let mut expo = vec![0u32; js.len()];
            let mut nu = b.nu.clone();
            walk.rec(b, 0, &mut expo, &mut nu, 0, &mut realizable);
        }
    }

    for ((k, l), poly) in g1 {
        report.entries_checked += 1;
        let want = alpha[l - 1] - alpha[k - 1] - m;
        for (mono, coeff) in &poly.terms {
            report.monomials_checked += 1;
            let deg = mono.weighted_degree(&gammas);
            if deg != want {
                report.violations.push(format!(
                    "degree law: g1[{},{}] monomial {:?} has degree {}/{} != {}/{}",
                    k, l, mono.0, deg, m, want, m
                ));
            }
            let expect_sign = if mono.total_degree() % 2 == 0 { 1 } else { -1 };
            if crate::ratio::sign(coeff) != expect_sign {
                report.violations.push(format!(
                    "sign law: g1[{},{}] monomial {:?} has coefficient {}",
                    k,
                    l,
                    mono.0,
                    crate::ratio::fmt_rat(coeff)
                ));
            }
            if mono.as_linear().is_some() && coeff != &-Rat::one() {
                report.violations.push(format!(
                    "linear law: g1[{},{}] monomial {:?} has coefficient {} != -1",
                    k,
                    l,
                    mono.0,
                    crate::ratio::fmt_rat(coeff)
                ));
            }
        }
    }

    // Fullness in both directions.
    for (key, monos) in &realizable {
        let poly = g1.get(key);
        for mono in monos {
            let present = poly.map_or(false, |p| !p.coeff(mono).is_zero());
            if !present {
                report.violations.push(format!(
                    "fullness: realizable monomial {:?} missing from g1[{},{}]",
                    mono.0, key.0, key.1
                ));
            }
        }
    }
    for ((k, l), poly) in g1 {
        let monos = realizable.get(&(*k, *l));
        for mono in poly.terms.keys() {
            let listed = monos.map_or(false, |ms| ms.contains(mono));
            if !listed {
                report.violations.push(format!(
                    "fullness: g1[{},{}] monomial {:?} is not realizable",
                    k, l, mono.0
                ));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;
    use crate::singularity::Normalization;

    fn bp94(norm: Normalization) -> SingularityClass {
        SingularityClass::bp(&[9, 4], norm).unwrap()
    }

    #[test]
    fn bp_step_examples() {
        let s = bp94(Normalization::Unit);
        let (target, c) = graded_dt_step(&s, &[11, 2], 0).unwrap().unwrap();
        assert_eq!(target, vec![2, 2]);
        assert_eq!(c, rat(2, 9));
        let s = bp94(Normalization::Reciprocal);
        let (target, c) = graded_dt_step(&s, &[11, 2], 0).unwrap().unwrap();
        assert_eq!(target, vec![2, 2]);
        assert_eq!(c, rat(2, 1));
        assert!(matches!(
            graded_dt_step(&s, &[5, 2], 0),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn loop_step_example() {
        // (1.1.13) first line at ν = (8,3): coefficient (5·2 − 3 + 1)/29.
        let s = SingularityClass::loop2(6, 5, Normalization::Unit).unwrap();
        let (target, c) = graded_dt_step(&s, &[8, 3], 0).unwrap().unwrap();
        assert_eq!(target, vec![2, 2]);
        assert_eq!(c, rat(8, 29));
        let s = SingularityClass::loop2(6, 5, Normalization::Reciprocal).unwrap();
        let (_, c) = graded_dt_step(&s, &[8, 3], 0).unwrap().unwrap();
        assert_eq!(c, rat(48, 29));
    }

    #[test]
    fn reduce_examples() {
        let s = bp94(Normalization::Unit);
        let red = graded_reduce(&s, &[15, 3]).unwrap().unwrap();
        assert_eq!(red.nu, vec![6, 3]);
        assert_eq!(red.steps, 1);
        assert_eq!(red.coeff, rat(6, 9));
        let red = graded_reduce(&s, &[4, 2]).unwrap().unwrap();
        assert_eq!((red.rank, red.steps, red.coeff), (s.rank_of_nu(&[4, 2]).unwrap(), 0, rat(1, 1)));
        assert!(graded_reduce(&s, &[18, 2]).unwrap().is_none());
    }

    #[test]
    fn bp_axis_order_is_irrelevant() {
        let s = SingularityClass::bp(&[8, 7], Normalization::Unit).unwrap();
        for i in 1..30u32 {
            for j in 1..30u32 {
                let via_reduce = graded_reduce(&s, &[i, j]).unwrap();
                // Manual y-then-x reduction.
                let mut cur = vec![i, j];
                let mut coeff = rat(1, 1);
                let mut steps = 0;
                let mut dead = false;
                for axis in [1usize, 0] {
                    loop {
                        match graded_dt_step(&s, &cur, axis) {
                            Ok(Some((next, c))) => {
                                cur = next;
                                coeff *= c;
                                steps += 1;
                            }
                            Ok(None) => {
                                dead = true;
                                break;
                            }
                            Err(_) => break,
                        }
                    }
                }
                let manual = if dead || !s.is_basis_nu(&cur) {
                    None
                } else {
                    Some((s.rank_of_nu(&cur).unwrap(), steps, coeff))
                };
                let auto = via_reduce.map(|r| (r.rank, r.steps, r.coeff));
                assert_eq!(auto, manual, "nu = ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn zero_parameters_give_diagonal_table() {
        let s = bp94(Normalization::Unit);
        let modes = vec![ParamMode::Zero; 4];
        let table = build_gm_table(&s, &modes, &EngineConfig::default()).unwrap();
        for b in s.jacobian_basis() {
            let t = table.entry(&b.nu, b.rank).unwrap();
            assert_eq!(t.order, 0);
            assert_eq!(t.poly, ParamPolynomial::constant(4, rat(1, 1)));
            for l in 1..=s.mu() {
                if l != b.rank {
                    assert!(table.entry(&b.nu, l).is_none());
                }
            }
        }
        assert!(g1_matrix(&table).is_empty());
    }

    #[test]
    fn bp94_first_golden_entries() {
        let s = bp94(Normalization::Unit);
        let table = build_gm_table(&s, &all_formal(&s), &EngineConfig::default()).unwrap();
        let delta = s.delta();
        // g¹_{1,δ+2} = −u₂ + (1/3)u₁²
        let p = table.g1(1, delta + 2);
        assert_eq!(p.coeff(&Monomial(vec![0, 1, 0, 0])), rat(-1, 1));
        assert_eq!(p.coeff(&Monomial(vec![2, 0, 0, 0])), rat(1, 3));
        assert_eq!(p.terms.len(), 2);
        // g¹_{2,δ+3} = −u₂ + (7/18)u₁²
        let p = table.g1(2, delta + 3);
        assert_eq!(p.coeff(&Monomial(vec![0, 1, 0, 0])), rat(-1, 1));
        assert_eq!(p.coeff(&Monomial(vec![2, 0, 0, 0])), rat(7, 18));
        assert_eq!(p.terms.len(), 2);
    }

    #[test]
    fn degree_bookkeeping_invariant() {
        let s = SingularityClass::bp(&[7, 5], Normalization::Unit).unwrap();
        let table = build_gm_table(&s, &all_formal(&s), &EngineConfig::default()).unwrap();
        let gammas: Vec<i64> = s
            .deformation_monomials()
            .iter()
            .map(|e| e.gamma_scaled)
            .collect();
        let alpha = s.spectrum_scaled();
        for ((nu, l), term) in table.entries() {
            let aw = s.alpha_w_scaled(nu);
            for mono in term.poly.terms.keys() {
                assert_eq!(
                    mono.weighted_degree(&gammas),
                    alpha[l - 1] - term.order as i64 * s.weights.m - aw,
                    "bookkeeping at nu {:?}, l {}",
                    nu,
                    l
                );
            }
        }
    }
}

//! Exhaustive verification of codegree tail and codegree sum bounds.
//!
//! Each check enumerates every r-set (or vertex pair) in scope, counts the
//! ones in the stated tail, and compares against the bound — nothing is
//! sampled. Thresholds are exact: the rational cut value is floored or
//! ceiled once, so the hot loop compares integers. Every check is
//! deterministic given its inputs; randomness exists only in instance
//! generation (see [`crate::instances`]).
//!
//! The uniformity hypothesis of a checked pair is *recorded* (via the
//! one-sided certificate) but not enforced: the certificate can be
//! undecided on instances where the conclusion still holds, and a violation
//! under a vacuous hypothesis is not a failure. Reports carry both.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::ratio::{ceil_i64, decimal_sig, floor_i64, rat_from_f64, rat_u, Rat};
use crate::regularity::{certify_uniformity, PairStatus, RegularityError};
use crate::util::Fnv1a;

/// Largest supported r for r-set enumeration.
pub const MAX_TAIL_R: u64 = 3;
/// Largest supported |A| for r-set enumeration.
pub const MAX_TAIL_SIDE: usize = 300;
/// Largest supported |A1| * |A2| for pair enumeration.
pub const MAX_PAIR_PRODUCT: usize = 1_000_000;
/// phi is tabulated up to this argument (the last value fitting in u64).
pub const MAX_PHI_ARG: u64 = 20;

#[derive(Debug, Error)]
pub enum CountingError {
    #[error("r must lie in 1..={MAX_TAIL_R}, got {0}")]
    BadR(u64),
    #[error("phi is defined here for 0..={MAX_PHI_ARG}, got {0}")]
    PhiOutOfRange(u64),
    #[error("enumeration budget exceeded: |A| = {0} > {MAX_TAIL_SIDE}")]
    SideTooLarge(usize),
    #[error("enumeration budget exceeded: |A1| * |A2| = {0} > {MAX_PAIR_PRODUCT}")]
    PairBudgetExceeded(usize),
    #[error("Y must be a subset of B")]
    YNotWithinB,
    #[error("classes must all have size {expected}, found one of size {got}")]
    UnequalBlockSizes { expected: usize, got: usize },
    #[error("classes must be pairwise disjoint")]
    OverlappingBlocks,
    #[error("pair set entries must be distinct vertices of the stated classes, without repeats")]
    BadPairSet,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Regularity(#[from] RegularityError),
}

/// `phi(r) = r! * sum_{i=0}^{r-1} 1/i!`, always an integer; `phi(0) = 0`.
pub fn phi(r: u64) -> Result<u64, CountingError> {
    if r > MAX_PHI_ARG {
        return Err(CountingError::PhiOutOfRange(r));
    }
    let mut total = 0u64;
    for i in 0..r {
        let term: u64 = ((i + 1)..=r).product(); // r!/i!
        total += term;
    }
    Ok(total)
}

/// Table of `phi(0..=r_max)` built from the recurrence
/// `phi(r) = r * phi(r-1) + r`.
pub struct PhiTable {
    values: Vec<u64>,
}

impl PhiTable {
    pub fn new(r_max: u64) -> Result<Self, CountingError> {
        if r_max > MAX_PHI_ARG {
            return Err(CountingError::PhiOutOfRange(r_max));
        }
        let mut values = vec![0u64];
        for r in 1..=r_max {
            values.push(r * values[(r - 1) as usize] + r);
        }
        Ok(PhiTable { values })
    }

    pub fn get(&self, r: u64) -> u64 {
        self.values[r as usize]
    }
}

fn binom(n: u64, r: u64) -> u64 {
    match r {
        1 => n,
        2 => n * n.saturating_sub(1) / 2,
        3 => n * n.saturating_sub(1) * n.saturating_sub(2) / 6,
        _ => unreachable!("r is validated to 1..=3"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaId {
    /// Lower codegree tail over r-sets (check id `xsec`).
    LowerTail,
    /// Upper codegree tail over r-sets (check id `xsec1`).
    UpperTail,
    /// Codegree concentration, lower side (check id `xsec2(i)`).
    ConcentrationLower,
    /// Codegree concentration, upper side (check id `xsec2(ii)`).
    ConcentrationUpper,
    /// Cross-pair codegree concentration, lower side (check id `xple2(i)`).
    PairConcentrationLower,
    /// Cross-pair codegree concentration, upper side (check id `xple2(ii)`).
    PairConcentrationUpper,
    /// Codegree sums over a family of 2-sets (check id `dle`).
    CodegreeSum,
    /// Codegree sums over ordered cross pairs (check id `lebs`).
    CrossCodegreeSum,
}

impl LemmaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            LemmaId::LowerTail => "xsec",
            LemmaId::UpperTail => "xsec1",
            LemmaId::ConcentrationLower => "xsec2(i)",
            LemmaId::ConcentrationUpper => "xsec2(ii)",
            LemmaId::PairConcentrationLower => "xple2(i)",
            LemmaId::PairConcentrationUpper => "xple2(ii)",
            LemmaId::CodegreeSum => "dle",
            LemmaId::CrossCodegreeSum => "lebs",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    Met,
    Vacuous(String),
}

impl Hypothesis {
    pub fn is_met(&self) -> bool {
        matches!(self, Hypothesis::Met)
    }
}

/// Recorded certificate status of one pair entering a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairUniformity {
    pub label: String,
    pub certified: bool,
}

/// Which tail of the codegree distribution a tail check counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Lower,
    Upper,
}

/// Averaged form of a sum bound, normalized by `|S|`.
#[derive(Debug, Clone, PartialEq)]
pub struct AveragedBound {
    /// `|S| / t^2`.
    pub alpha: Rat,
    pub measured: Rat,
    pub bound: Rat,
}

/// Outcome of one lemma check.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    /// Whether the check's numeric hypothesis held; a violated conclusion
    /// under a vacuous hypothesis is not a lemma failure.
    pub hypothesis: Hypothesis,
    /// Certificate status of the pairs entering the check (recorded, not
    /// enforced).
    pub uniformity: Vec<PairUniformity>,
    /// The measured count or absolute sum deviation.
    pub measured: Rat,
    pub bound: Rat,
    /// Margin by which the inequality holds, oriented so that `holds`
    /// means `slack > 0` for strict bounds and `slack >= 0` otherwise:
    /// `bound - measured` for upper bounds, `measured - bound` for lower
    /// bounds.
    pub slack: Rat,
    pub strict: bool,
    pub holds: bool,
    pub averaged: Option<AveragedBound>,
    /// FNV-1a digest of the check inputs.
    pub inputs_digest: u64,
}

impl LemmaReport {
    pub fn verdict_label(&self) -> &'static str {
        if self.holds {
            "holds"
        } else {
            "violated"
        }
    }
}

fn digest_inputs(g: &Graph, sets: &[&VertexSet], eps: f64, r: u64, lemma: LemmaId) -> u64 {
    let mut h = Fnv1a::new();
    h.write_u64(g.vertex_count() as u64);
    for u in 0..g.vertex_count() {
        h.write_slice(g.row(u));
    }
    for s in sets {
        h.write_u64(s.len() as u64);
        h.write_slice(s.words());
    }
    h.write_u64(eps.to_bits());
    h.write_u64(r);
    h.write_u64(lemma.as_str().len() as u64);
    h.finish()
}

fn record_uniformity(
    g: &Graph,
    pairs: &[(&str, &VertexSet, &VertexSet)],
    eps: f64,
) -> Result<Vec<PairUniformity>, CountingError> {
    let mut out = Vec::with_capacity(pairs.len());
    for (label, a, b) in pairs {
        let verdict = certify_uniformity(g, a, b, eps)?;
        out.push(PairUniformity {
            label: label.to_string(),
            certified: matches!(verdict.status, PairStatus::Certified),
        });
    }
    Ok(out)
}

/// Enumerates every r-set of `members` and feeds its codegree within the
/// mask to `f`.
fn for_each_rset_codegree(
    g: &Graph,
    members: &[u32],
    mask: &[u64],
    r: u64,
    mut f: impl FnMut(u64),
) {
    match r {
        1 => {
            for &u in members {
                f(g
                    .row(u as usize)
                    .iter()
                    .zip(mask)
                    .map(|(w, m)| (w & m).count_ones() as u64)
                    .sum());
            }
        }
        2 => {
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    f(g.codegree_pair_in_words(u as usize, v as usize, mask));
                }
            }
        }
        3 => {
            let words = mask.len();
            let mut scratch = vec![0u64; words];
            for (i, &u) in members.iter().enumerate() {
                for (jo, &v) in members[i + 1..].iter().enumerate() {
                    let j = i + 1 + jo;
                    for ((s, a), b) in
                        scratch.iter_mut().zip(g.row(u as usize)).zip(g.row(v as usize))
                    {
                        *s = a & b;
                    }
                    for &w in &members[j + 1..] {
                        f(scratch
                            .iter()
                            .zip(g.row(w as usize))
                            .zip(mask)
                            .map(|((s, c), m)| (s & c & m).count_ones() as u64)
                            .sum());
                    }
                }
            }
        }
        _ => unreachable!("r is validated to 1..=3"),
    }
}

fn validate_tail_inputs(a: &VertexSet, r: u64) -> Result<(), CountingError> {
    if !(1..=MAX_TAIL_R).contains(&r) {
        return Err(CountingError::BadR(r));
    }
    if a.len() > MAX_TAIL_SIDE {
        return Err(CountingError::SideTooLarge(a.len()));
    }
    Ok(())
}

/// Counts the r-sets `R` of `A` whose restricted degree into `Y` falls in
/// the stated tail:
///
/// - `Tail::Lower`: `d_Y(R) <= (d - eps)^r |Y|`, checked against the bound
///   `count < eps phi(r) C(|A|, r)` (strict), valid under the hypothesis
///   `(d - eps)^(r-1) |Y| > eps |B|`;
/// - `Tail::Upper`: `d_Y(R) >= (d + eps)^r |Y|`, same bound, hypothesis
///   with `d + eps`.
pub fn codegree_tail_check(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    y: &VertexSet,
    eps: f64,
    r: u64,
    tail: Tail,
) -> Result<LemmaReport, CountingError> {
    validate_tail_inputs(a, r)?;
    if !y.is_subset(b) {
        return Err(CountingError::YNotWithinB);
    }
    let d = g.density(a, b)?;
    let eps_rat = rat_from_f64(eps).expect("finite epsilon");
    let y_len = rat_u(y.len() as u64);
    let b_len = rat_u(b.len() as u64);

    let base = match tail {
        Tail::Lower => &d - &eps_rat,
        Tail::Upper => &d + &eps_rat,
    };
    let mut base_pow = Rat::from_integer(1.into());
    for _ in 0..r {
        base_pow *= &base;
    }
    let mut hyp_pow = Rat::from_integer(1.into());
    for _ in 0..(r - 1) {
        hyp_pow *= &base;
    }
    let hypothesis = if hyp_pow * &y_len > eps_rat.clone() * &b_len {
        Hypothesis::Met
    } else {
        Hypothesis::Vacuous(format!(
            "(d {} eps)^(r-1) |Y| > eps |B| fails",
            if tail == Tail::Lower { "-" } else { "+" }
        ))
    };

    let threshold = base_pow * &y_len;
    let mut count = 0u64;
    let members = a.to_vec();
    match tail {
        Tail::Lower => {
            let cut = floor_i64(&threshold);
            for_each_rset_codegree(g, &members, y.words(), r, |c| {
                if (c as i64) <= cut {
                    count += 1;
                }
            });
        }
        Tail::Upper => {
            let cut = ceil_i64(&threshold);
            for_each_rset_codegree(g, &members, y.words(), r, |c| {
                if (c as i64) >= cut {
                    count += 1;
                }
            });
        }
    }

    let bound = eps_rat * rat_u(phi(r)?) * rat_u(binom(a.len() as u64, r));
    let measured = rat_u(count);
    let slack = &bound - &measured;
    let lemma = match tail {
        Tail::Lower => LemmaId::LowerTail,
        Tail::Upper => LemmaId::UpperTail,
    };
    Ok(LemmaReport {
        lemma,
        hypothesis,
        uniformity: record_uniformity(g, &[("(A,B)", a, b)], eps)?,
        holds: slack > Rat::zero(),
        measured,
        bound,
        slack,
        strict: true,
        averaged: None,
        inputs_digest: digest_inputs(g, &[a, b, y], eps, r, lemma),
    })
}

/// Counts the r-sets `R` of `A` with codegree into `B` concentrated around
/// `d^r |B|`:
///
/// - part (i): `codeg_B(R) - d^r |B| > -eps r |B|`;
/// - part (ii): `codeg_B(R) - d^r |B| < eps r |B|`;
///
/// each holding for at least `(1 - eps phi(r)) C(|A|, r)` r-sets.
pub fn codegree_concentration_check(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    eps: f64,
    r: u64,
) -> Result<(LemmaReport, LemmaReport), CountingError> {
    validate_tail_inputs(a, r)?;
    let d = g.density(a, b)?;
    let eps_rat = rat_from_f64(eps).expect("finite epsilon");
    let b_len = rat_u(b.len() as u64);
    let mut d_pow = Rat::from_integer(1.into());
    for _ in 0..r {
        d_pow *= &d;
    }
    let center = d_pow * &b_len;
    let margin = eps_rat.clone() * rat_u(r) * &b_len;

    // (i): codeg > center - margin; (ii): codeg < center + margin
    let lower_cut = floor_i64(&(&center - &margin)) + 1;
    let upper_cut = ceil_i64(&(&center + &margin)) - 1;
    let mut count_lower = 0u64;
    let mut count_upper = 0u64;
    let members = a.to_vec();
    for_each_rset_codegree(g, &members, b.words(), r, |c| {
        if (c as i64) >= lower_cut {
            count_lower += 1;
        }
        if (c as i64) <= upper_cut {
            count_upper += 1;
        }
    });

    let bound = (Rat::from_integer(1.into()) - eps_rat * rat_u(phi(r)?))
        * rat_u(binom(a.len() as u64, r));
    let uniformity = record_uniformity(g, &[("(A,B)", a, b)], eps)?;
    let make = |lemma: LemmaId, count: u64| {
        let measured = rat_u(count);
        let slack = &measured - &bound;
        LemmaReport {
            lemma,
            hypothesis: Hypothesis::Met,
            uniformity: uniformity.clone(),
            holds: slack >= Rat::zero(),
            measured,
            bound: bound.clone(),
            slack,
            strict: false,
            averaged: None,
            inputs_digest: digest_inputs(g, &[a, b], eps, r, lemma),
        }
    };
    Ok((
        make(LemmaId::ConcentrationLower, count_lower),
        make(LemmaId::ConcentrationUpper, count_upper),
    ))
}

/// Counts ordered pairs `(u, v)` in `A1 x A2` with pair codegree into `B`
/// concentrated around `d1 d2 |B|` within `2 eps |B|`; each side must hold
/// for at least `(1 - 2 eps) |A1||A2|` pairs.
pub fn pair_codegree_concentration_check(
    g: &Graph,
    a1: &VertexSet,
    a2: &VertexSet,
    b: &VertexSet,
    eps: f64,
) -> Result<(LemmaReport, LemmaReport), CountingError> {
    if !a1.is_disjoint(a2) {
        return Err(CountingError::OverlappingBlocks);
    }
    let product = a1.len() * a2.len();
    if product > MAX_PAIR_PRODUCT {
        return Err(CountingError::PairBudgetExceeded(product));
    }
    let d1 = g.density(a1, b)?;
    let d2 = g.density(a2, b)?;
    let eps_rat = rat_from_f64(eps).expect("finite epsilon");
    let b_len = rat_u(b.len() as u64);
    let center = d1 * d2 * &b_len;
    let margin = rat_u(2) * eps_rat.clone() * &b_len;
    let lower_cut = floor_i64(&(&center - &margin)) + 1;
    let upper_cut = ceil_i64(&(&center + &margin)) - 1;

    let mut count_lower = 0u64;
    let mut count_upper = 0u64;
    for u in a1.iter() {
        for v in a2.iter() {
            let c = g.codegree_pair_in_words(u as usize, v as usize, b.words()) as i64;
            if c >= lower_cut {
                count_lower += 1;
            }
            if c <= upper_cut {
                count_upper += 1;
            }
        }
    }

    let bound =
        (Rat::from_integer(1.into()) - rat_u(2) * eps_rat) * rat_u(product as u64);
    let uniformity =
        record_uniformity(g, &[("(A1,B)", a1, b), ("(A2,B)", a2, b)], eps)?;
    let make = |lemma: LemmaId, count: u64| {
        let measured = rat_u(count);
        let slack = &measured - &bound;
        LemmaReport {
            lemma,
            hypothesis: Hypothesis::Met,
            uniformity: uniformity.clone(),
            holds: slack >= Rat::zero(),
            measured,
            bound: bound.clone(),
            slack,
            strict: false,
            averaged: None,
            inputs_digest: digest_inputs(g, &[a1, a2, b], eps, 2, lemma),
        }
    };
    Ok((
        make(LemmaId::PairConcentrationLower, count_lower),
        make(LemmaId::PairConcentrationUpper, count_upper),
    ))
}

fn validate_blocks(
    center_sets: &[&VertexSet],
    blocks: &[VertexSet],
) -> Result<usize, CountingError> {
    let t = center_sets[0].len();
    for s in center_sets.iter().copied().chain(blocks.iter()) {
        if s.len() != t {
            return Err(CountingError::UnequalBlockSizes { expected: t, got: s.len() });
        }
    }
    let mut all: Vec<&VertexSet> = center_sets.to_vec();
    all.extend(blocks.iter());
    for (i, s) in all.iter().enumerate() {
        for other in &all[i + 1..] {
            if !s.is_disjoint(other) {
                return Err(CountingError::OverlappingBlocks);
            }
        }
    }
    Ok(t)
}

fn sum_pair_codegrees(
    g: &Graph,
    pairs: &[(u32, u32)],
    blocks: &[VertexSet],
) -> u64 {
    let words = blocks.first().map(|b| b.words().len()).unwrap_or(0);
    let mut scratch = vec![0u64; words];
    let mut total = 0u64;
    for &(u, v) in pairs {
        for ((s, a), b) in scratch.iter_mut().zip(g.row(u as usize)).zip(g.row(v as usize)) {
            *s = a & b;
        }
        for block in blocks {
            total += scratch
                .iter()
                .zip(block.words())
                .map(|(s, m)| (s & m).count_ones() as u64)
                .sum::<u64>();
        }
    }
    total
}

fn averaged_form(measured: &Rat, bound: &Rat, s_len: usize, t: usize) -> Option<AveragedBound> {
    if s_len == 0 {
        return None;
    }
    let s = rat_u(s_len as u64);
    Some(AveragedBound {
        alpha: s.clone() / rat_u((t * t) as u64),
        measured: measured / &s,
        bound: bound / &s,
    })
}

/// Checks `|sum_{{u,v} in S} sum_i codeg_{Bi}(uv) - t|S| sum_i d_i^2| < 5 p eps t^3`
/// for a family `S` of 2-sets of `A`, where `|A| = |B1| = ... = |Bp| = t`.
/// The averaged form (divide by `|S|`, bound `(5 p eps / alpha) t` with
/// `alpha = |S|/t^2`) is exposed alongside.
pub fn codegree_sum_check(
    g: &Graph,
    a: &VertexSet,
    blocks: &[VertexSet],
    s: &[(u32, u32)],
    eps: f64,
) -> Result<LemmaReport, CountingError> {
    let t = validate_blocks(&[a], blocks)?;
    let mut seen = BTreeSet::new();
    for &(u, v) in s {
        if u == v || !a.contains(u) || !a.contains(v) {
            return Err(CountingError::BadPairSet);
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(CountingError::BadPairSet);
        }
    }

    let total = sum_pair_codegrees(g, s, blocks);
    let mut edge_sq_sum: i128 = 0;
    for block in blocks {
        let e = g.edges_between(a, block)? as i128;
        edge_sq_sum += e * e;
    }
    // t|S| sum d_i^2 = |S| sum e_i^2 / t^3
    let t3 = (t as i128).pow(3);
    let num = (total as i128) * t3 - (s.len() as i128) * edge_sq_sum;
    let measured = Rat::new(num.abs().into(), t3.into());

    let p = blocks.len();
    let eps_rat = rat_from_f64(eps).expect("finite epsilon");
    let bound = rat_u(5) * rat_u(p as u64) * eps_rat * rat_u(t as u64).pow(3);
    let slack = &bound - &measured;
    let pairs: Vec<(String, &VertexSet, &VertexSet)> = blocks
        .iter()
        .enumerate()
        .map(|(i, block)| (format!("(A,B{})", i + 1), a, block))
        .collect();
    let pair_refs: Vec<(&str, &VertexSet, &VertexSet)> =
        pairs.iter().map(|(l, x, y)| (l.as_str(), *x, *y)).collect();
    let mut digest_sets: Vec<&VertexSet> = vec![a];
    digest_sets.extend(blocks.iter());
    Ok(LemmaReport {
        lemma: LemmaId::CodegreeSum,
        hypothesis: Hypothesis::Met,
        uniformity: record_uniformity(g, &pair_refs, eps)?,
        holds: slack > Rat::zero(),
        averaged: averaged_form(&measured, &bound, s.len(), t),
        measured,
        bound,
        slack,
        strict: true,
        inputs_digest: digest_inputs(g, &digest_sets, eps, s.len() as u64, LemmaId::CodegreeSum),
    })
}

/// Checks
/// `|sum_{(u,v) in S} sum_i codeg_{Bi}(uv) - t|S| sum_i d_{1i} d_{2i}| < 6 eps p t^3`
/// for `S` a set of ordered pairs of `A1 x A2`, all classes of size `t`.
pub fn cross_codegree_sum_check(
    g: &Graph,
    a1: &VertexSet,
    a2: &VertexSet,
    blocks: &[VertexSet],
    s: &[(u32, u32)],
    eps: f64,
) -> Result<LemmaReport, CountingError> {
    let t = validate_blocks(&[a1, a2], blocks)?;
    let mut seen = BTreeSet::new();
    for &(u, v) in s {
        if !a1.contains(u) || !a2.contains(v) {
            return Err(CountingError::BadPairSet);
        }
        if !seen.insert((u, v)) {
            return Err(CountingError::BadPairSet);
        }
    }

    let total = sum_pair_codegrees(g, s, blocks);
    let mut edge_prod_sum: i128 = 0;
    for block in blocks {
        let e1 = g.edges_between(a1, block)? as i128;
        let e2 = g.edges_between(a2, block)? as i128;
        edge_prod_sum += e1 * e2;
    }
    let t3 = (t as i128).pow(3);
    let num = (total as i128) * t3 - (s.len() as i128) * edge_prod_sum;
    let measured = Rat::new(num.abs().into(), t3.into());

    let p = blocks.len();
    let eps_rat = rat_from_f64(eps).expect("finite epsilon");
    let bound = rat_u(6) * eps_rat * rat_u(p as u64) * rat_u(t as u64).pow(3);
    let slack = &bound - &measured;
    let mut pairs: Vec<(String, &VertexSet, &VertexSet)> = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        pairs.push((format!("(A1,B{})", i + 1), a1, block));
        pairs.push((format!("(A2,B{})", i + 1), a2, block));
    }
    let pair_refs: Vec<(&str, &VertexSet, &VertexSet)> =
        pairs.iter().map(|(l, x, y)| (l.as_str(), *x, *y)).collect();
    let mut digest_sets: Vec<&VertexSet> = vec![a1, a2];
    digest_sets.extend(blocks.iter());
    Ok(LemmaReport {
        lemma: LemmaId::CrossCodegreeSum,
        hypothesis: Hypothesis::Met,
        uniformity: record_uniformity(g, &pair_refs, eps)?,
        holds: slack > Rat::zero(),
        averaged: averaged_form(&measured, &bound, s.len(), t),
        measured,
        bound,
        slack,
        strict: true,
        inputs_digest: digest_inputs(
            g,
            &digest_sets,
            eps,
            s.len() as u64,
            LemmaId::CrossCodegreeSum,
        ),
    })
}

/// Renders a report as a deterministic key-value document with exact
/// rationals rendered to decimal.
pub fn format_lemma_report(report: &LemmaReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("lemma: {}\n", report.lemma));
    out.push_str(&format!("inputs-digest: {:016x}\n", report.inputs_digest));
    match &report.hypothesis {
        Hypothesis::Met => out.push_str("hypothesis: met\n"),
        Hypothesis::Vacuous(reason) => {
            out.push_str(&format!("hypothesis: vacuous ({reason})\n"));
        }
    }
    for u in &report.uniformity {
        out.push_str(&format!(
            "uniformity: {} {}\n",
            u.label,
            if u.certified { "certified" } else { "unknown" }
        ));
    }
    out.push_str(&format!("measured: {}\n", decimal_sig(&report.measured, 12)));
    out.push_str(&format!("bound: {}\n", decimal_sig(&report.bound, 12)));
    out.push_str(&format!("slack: {}\n", decimal_sig(&report.slack, 12)));
    if let Some(avg) = &report.averaged {
        out.push_str(&format!("averaged-alpha: {}\n", decimal_sig(&avg.alpha, 12)));
        out.push_str(&format!("averaged-measured: {}\n", decimal_sig(&avg.measured, 12)));
        out.push_str(&format!("averaged-bound: {}\n", decimal_sig(&avg.bound, 12)));
    }
    out.push_str(&format!("verdict: {}\n", report.verdict_label()));
    out
}

//! Limit algebra for parameter sequences and exact deviation sweeps.
//!
//! A parameter sequence with `k/n -> d`, `lambda/n -> a`, `mu/n -> c` is
//! summarized by the triple [`CsrLimits`]. The deviations
//! `|lambda - k^2/n|` and `|mu - k^2/n|` are tiny differences of large
//! squares, so every quantity here is exact rational arithmetic — floating
//! point would mask regressions.
//!
//! [`proof_constants`] documents why a full contradiction-replay is out of
//! scope: already at `delta = 0.1` the schedule demands `eps = 2.5e-5` and
//! 40000 classes, far beyond any dense representation. The per-family
//! sweeps verify the finite shadows instead.

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::Graph;
use crate::ratio::{decimal_sig, rat, rat_u, Rat};
use crate::srg::{
    primes_one_mod_four_upto, verify_srg, Family, FamilyError, FamilySpec, SrgParams, SrgVerdict,
};

#[derive(Debug, Error)]
pub enum AsymptoticsError {
    #[error("limits must satisfy 0 <= a, c <= d <= 1 ({0} violated)")]
    InvalidLimits(&'static str),
    #[error("complement limit component {0} falls outside [0, 1]")]
    ComplementOutOfRange(&'static str),
    #[error("proof hypothesis violated: {0} vanishes")]
    DegenerateLimits(&'static str),
    #[error("graph is not regular (vertex {0} deviates from the average degree)")]
    NotRegular(u32),
    #[error("sweep size {size} rejected: {source}")]
    BadSweepSize { size: u64, source: FamilyError },
    #[error("sweep size {size} did not produce a strongly regular graph: {verdict}")]
    NotStronglyRegular { size: u64, verdict: String },
    #[error(
        "invalid sweep family '{0}': expected paley | triangular | lattice | cliques-m:M | \
         cliques-r:R, optionally prefixed with '~'"
    )]
    InvalidSweepFamily(String),
}

/// Limits `(d, a, c)` of `k/n`, `lambda/n`, `mu/n` along a parameter
/// sequence. Exact rationals; `0 <= a, c <= d <= 1` is enforced (the
/// standard parameter inequalities in the limit).
#[derive(Debug, Clone, PartialEq)]
pub struct CsrLimits {
    d: Rat,
    a: Rat,
    c: Rat,
}

impl CsrLimits {
    pub fn new(d: Rat, a: Rat, c: Rat) -> Result<Self, AsymptoticsError> {
        let zero = Rat::zero();
        let one = rat(1, 1);
        if d < zero || d > one {
            return Err(AsymptoticsError::InvalidLimits("0 <= d <= 1"));
        }
        if a < zero || a > d {
            return Err(AsymptoticsError::InvalidLimits("0 <= a <= d"));
        }
        if c < zero || c > d {
            return Err(AsymptoticsError::InvalidLimits("0 <= c <= d"));
        }
        Ok(CsrLimits { d, a, c })
    }

    /// Convenience constructor from small fractions.
    pub fn from_fractions(
        d: (i64, i64),
        a: (i64, i64),
        c: (i64, i64),
    ) -> Result<Self, AsymptoticsError> {
        CsrLimits::new(rat(d.0, d.1), rat(a.0, a.1), rat(c.0, c.1))
    }

    pub fn d(&self) -> &Rat {
        &self.d
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }
}

/// `d^2 - (a - c) d - c`: zero for the limits of any parameter sequence
/// satisfying the standard identity.
pub fn eq1_residual(lim: &CsrLimits) -> Rat {
    &lim.d * &lim.d - (&lim.a - &lim.c) * &lim.d - &lim.c
}

/// Limits of the complement sequence: `(1-d, 1-2d+c, 1-2d+a)`.
pub fn complement_limits(lim: &CsrLimits) -> Result<CsrLimits, AsymptoticsError> {
    let one = rat(1, 1);
    let two = rat(2, 1);
    let d = &one - &lim.d;
    let a = &one - &two * &lim.d + &lim.c;
    let c = &one - &two * &lim.d + &lim.a;
    let in_range = |v: &Rat| *v >= Rat::zero() && *v <= one;
    if !in_range(&d) {
        return Err(AsymptoticsError::ComplementOutOfRange("d"));
    }
    if !in_range(&a) {
        return Err(AsymptoticsError::ComplementOutOfRange("a"));
    }
    if !in_range(&c) {
        return Err(AsymptoticsError::ComplementOutOfRange("c"));
    }
    CsrLimits::new(d, a, c)
}

/// Whether `a = c = d^2` holds within 1e-12. Inputs are exact rationals for
/// every implemented family, so in practice the comparison is exact.
pub fn main_theorem_target(lim: &CsrLimits) -> bool {
    let d2 = &lim.d * &lim.d;
    let tol = rat(1, 1_000_000_000_000);
    (&lim.a - &d2).abs() <= tol && (&lim.c - &d2).abs() <= tol
}

/// The constant schedule of the contradiction argument.
#[derive(Debug, Clone, PartialEq)]
pub struct ProofConstants {
    /// `min(|a-c|, |d-a|, |d-c|, 1/10)`.
    pub delta: Rat,
    /// `(delta/20)^2`.
    pub epsilon: Rat,
    /// `ceil(1/epsilon)`, the lower bound on the class count. Saturates at
    /// `u128::MAX` for absurdly small deltas.
    pub l: u128,
}

/// Evaluates the constant schedule. Errors when any of `|a-c|`, `|d-a|`,
/// `|d-c|` vanishes — those are the degenerate configurations the argument
/// excludes before choosing constants.
pub fn proof_constants(lim: &CsrLimits) -> Result<ProofConstants, AsymptoticsError> {
    let ac = (&lim.a - &lim.c).abs();
    let da = (&lim.d - &lim.a).abs();
    let dc = (&lim.d - &lim.c).abs();
    if ac.is_zero() {
        return Err(AsymptoticsError::DegenerateLimits("|a - c|"));
    }
    if da.is_zero() {
        return Err(AsymptoticsError::DegenerateLimits("|d - a|"));
    }
    if dc.is_zero() {
        return Err(AsymptoticsError::DegenerateLimits("|d - c|"));
    }
    let mut delta = rat(1, 10);
    for v in [ac, da, dc] {
        if v < delta {
            delta = v;
        }
    }
    let epsilon = &delta * &delta / rat(400, 1);
    let l = (rat(1, 1) / &epsilon).ceil().to_integer().to_u128().unwrap_or(u128::MAX);
    Ok(ProofConstants { delta, epsilon, l })
}

/// One sweep row: exact parameters of a family member and the deviations of
/// `lambda` and `mu` from `k^2/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationRow {
    pub family: String,
    pub param: u64,
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    pub k_over_n: Rat,
    pub lambda_over_n: Rat,
    pub mu_over_n: Rat,
    /// `|lambda - k^2/n|`.
    pub dev_lambda: Rat,
    /// `|mu - k^2/n|`.
    pub dev_mu: Rat,
    pub dev_lambda_over_n: Rat,
    pub dev_mu_over_n: Rat,
}

impl DeviationRow {
    pub fn from_params(family: &str, param: u64, p: SrgParams) -> Self {
        let n = rat_u(p.n);
        let k2_over_n = rat_u(p.k) * rat_u(p.k) / &n;
        let dev_lambda = (rat_u(p.lambda) - &k2_over_n).abs();
        let dev_mu = (rat_u(p.mu) - &k2_over_n).abs();
        DeviationRow {
            family: family.to_string(),
            param,
            n: p.n,
            k: p.k,
            lambda: p.lambda,
            mu: p.mu,
            k_over_n: rat_u(p.k) / &n,
            lambda_over_n: rat_u(p.lambda) / &n,
            mu_over_n: rat_u(p.mu) / &n,
            dev_lambda_over_n: &dev_lambda / &n,
            dev_mu_over_n: &dev_mu / &n,
            dev_lambda,
            dev_mu,
        }
    }
}

/// A one-parameter family to sweep: the base generators, or cliques with
/// one of the two shape parameters pinned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepFamily {
    pub base: SweepBase,
    pub complement: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepBase {
    Paley,
    Triangular,
    Lattice,
    /// `cliques:RxM` with `m` fixed; the sweep parameter is `r`.
    CliquesFixedM(u64),
    /// `cliques:RxM` with `r` fixed; the sweep parameter is `m`.
    CliquesFixedR(u64),
}

impl SweepFamily {
    pub fn parse(s: &str) -> Result<Self, AsymptoticsError> {
        let invalid = || AsymptoticsError::InvalidSweepFamily(s.to_string());
        let (complement, rest) = match s.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let base = match rest {
            "paley" => SweepBase::Paley,
            "triangular" => SweepBase::Triangular,
            "lattice" => SweepBase::Lattice,
            _ => {
                let (name, arg) = rest.split_once(':').ok_or_else(invalid)?;
                let value: u64 = arg.parse().map_err(|_| invalid())?;
                match name {
                    "cliques-m" => SweepBase::CliquesFixedM(value),
                    "cliques-r" => SweepBase::CliquesFixedR(value),
                    _ => return Err(invalid()),
                }
            }
        };
        Ok(SweepFamily { base, complement })
    }

    pub fn name(&self) -> String {
        let base = match self.base {
            SweepBase::Paley => "paley".to_string(),
            SweepBase::Triangular => "triangular".to_string(),
            SweepBase::Lattice => "lattice".to_string(),
            SweepBase::CliquesFixedM(m) => format!("cliques-m:{m}"),
            SweepBase::CliquesFixedR(r) => format!("cliques-r:{r}"),
        };
        if self.complement {
            format!("~{base}")
        } else {
            base
        }
    }

    /// The generator instance for one sweep size.
    pub fn spec_for(&self, size: u64) -> FamilySpec {
        let family = match self.base {
            SweepBase::Paley => Family::Paley(size),
            SweepBase::Triangular => Family::Triangular(size),
            SweepBase::Lattice => Family::Lattice(size),
            SweepBase::CliquesFixedM(m) => Family::Cliques { r: size, m },
            SweepBase::CliquesFixedR(r) => Family::Cliques { r, m: size },
        };
        FamilySpec { family, complement: self.complement }
    }

    /// All sweep sizes up to `limit` whose generated order stays within the
    /// dense-representation cap. For cliques, sizes start at 2 so that both
    /// an edge and a non-edge exist.
    pub fn valid_sizes_upto(&self, limit: u64) -> Vec<u64> {
        let max_n = crate::graph::MAX_VERTICES as u64;
        match self.base {
            SweepBase::Paley => primes_one_mod_four_upto(limit.min(max_n)),
            SweepBase::Triangular => {
                (4..=limit).filter(|m| m * (m - 1) / 2 <= max_n).collect()
            }
            SweepBase::Lattice => (2..=limit).filter(|m| m * m <= max_n).collect(),
            SweepBase::CliquesFixedM(m) => {
                (2..=limit).filter(|r| r * m <= max_n).collect()
            }
            SweepBase::CliquesFixedR(r) => {
                (2..=limit).filter(|m| r * m <= max_n).collect()
            }
        }
    }
}

/// Generates each family member, verifies it, and assembles the deviation
/// rows, ordered by `n`. Rows are built in parallel; the first offending
/// size (in input order) aborts the sweep.
pub fn family_sweep(
    family: &SweepFamily,
    sizes: &[u64],
) -> Result<Vec<DeviationRow>, AsymptoticsError> {
    let name = family.name();
    let results: Vec<Result<DeviationRow, AsymptoticsError>> = sizes
        .par_iter()
        .map(|&size| {
            let spec = family.spec_for(size);
            let g = spec
                .generate()
                .map_err(|source| AsymptoticsError::BadSweepSize { size, source })?;
            match verify_srg(&g) {
                SrgVerdict::Srg(p) => Ok(DeviationRow::from_params(&name, size, p)),
                other => Err(AsymptoticsError::NotStronglyRegular {
                    size,
                    verdict: other.to_string(),
                }),
            }
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    for r in results {
        rows.push(r?);
    }
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

/// The codegree-deviation statistic
/// `(1/n^2) sum_{u < v} |codeg(u, v) - k^2/n|`, exact. Defined for regular
/// graphs; small values witness quasi-randomness.
pub fn codegree_deviation(g: &Graph) -> Result<Rat, AsymptoticsError> {
    let n = g.vertex_count();
    let m = g.edge_count();
    for u in 0..n as u32 {
        if g.degree(u) as u128 * n as u128 != 2 * m as u128 {
            return Err(AsymptoticsError::NotRegular(u));
        }
    }
    let k = (2 * m / n as u64) as i128;
    let n_i = n as i128;
    // sum |codeg - k^2/n| = sum |codeg*n - k^2| / n
    let mut num: i128 = 0;
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            num += (g.codegree_pair(u, v) as i128 * n_i - k * k).abs();
        }
    }
    Ok(Rat::new(num.into(), (n_i * n_i * n_i).into()))
}

pub const SWEEP_CSV_HEADER: &str =
    "family,param,n,k,lambda,mu,k_over_n,dev_lambda,dev_mu,dev_lambda_over_n,dev_mu_over_n";

/// Renders sweep rows as CSV with exact rationals to 12 significant
/// decimals.
pub fn sweep_to_csv(rows: &[DeviationRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.family,
            r.param,
            r.n,
            r.k,
            r.lambda,
            r.mu,
            decimal_sig(&r.k_over_n, 12),
            decimal_sig(&r.dev_lambda, 12),
            decimal_sig(&r.dev_mu, 12),
            decimal_sig(&r.dev_lambda_over_n, 12),
            decimal_sig(&r.dev_mu_over_n, 12),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srg::{disjoint_cliques, paley};

    fn limits(d: (i64, i64), a: (i64, i64), c: (i64, i64)) -> CsrLimits {
        CsrLimits::from_fractions(d, a, c).unwrap()
    }

    #[test]
    fn residuals_vanish_on_family_limits() {
        assert!(eq1_residual(&limits((1, 2), (1, 4), (1, 4))).is_zero());
        assert!(eq1_residual(&limits((0, 1), (0, 1), (0, 1))).is_zero());
        assert!(eq1_residual(&limits((1, 3), (1, 3), (0, 1))).is_zero());
        // perturbed limits do not satisfy the identity
        assert!(!eq1_residual(&limits((1, 2), (1, 4), (1, 5))).is_zero());
    }

    #[test]
    fn complement_map_is_involutive() {
        let paley_lim = limits((1, 2), (1, 4), (1, 4));
        assert_eq!(complement_limits(&paley_lim).unwrap(), paley_lim);

        let zero = limits((0, 1), (0, 1), (0, 1));
        let one = complement_limits(&zero).unwrap();
        assert_eq!(one, limits((1, 1), (1, 1), (1, 1)));
        assert_eq!(complement_limits(&one).unwrap(), zero);

        for lim in [
            limits((1, 2), (3, 10), (1, 5)),
            limits((1, 3), (1, 3), (0, 1)),
            limits((2, 5), (1, 5), (4, 25)),
        ] {
            let back = complement_limits(&complement_limits(&lim).unwrap()).unwrap();
            assert_eq!(back, lim);
        }

        // 1 - 2d + c < 0 for d close to 1 with small c
        let steep = limits((9, 10), (1, 10), (1, 10));
        assert!(matches!(
            complement_limits(&steep),
            Err(AsymptoticsError::ComplementOutOfRange("a"))
        ));
    }

    #[test]
    fn target_dichotomy() {
        assert!(main_theorem_target(&limits((1, 2), (1, 4), (1, 4))));
        assert!(main_theorem_target(&limits((1, 1), (1, 1), (1, 1))));
        assert!(main_theorem_target(&limits((0, 1), (0, 1), (0, 1))));
        assert!(!main_theorem_target(&limits((1, 3), (1, 3), (0, 1))));
        assert!(!main_theorem_target(&limits((1, 2), (1, 2), (0, 1))));
    }

    #[test]
    fn proof_constant_schedule() {
        let pc = proof_constants(&limits((1, 2), (3, 10), (1, 5))).unwrap();
        assert_eq!(pc.delta, rat(1, 10));
        assert_eq!(pc.epsilon, rat(1, 40_000));
        assert_eq!(pc.l, 40_000);

        assert!(matches!(
            proof_constants(&limits((1, 2), (1, 4), (1, 4))),
            Err(AsymptoticsError::DegenerateLimits("|a - c|"))
        ));
        assert!(matches!(
            proof_constants(&limits((3, 5), (3, 5), (1, 10))),
            Err(AsymptoticsError::DegenerateLimits("|d - a|"))
        ));
        assert!(matches!(
            proof_constants(&limits((3, 5), (1, 10), (3, 5))),
            Err(AsymptoticsError::DegenerateLimits("|d - c|"))
        ));
    }

    #[test]
    fn paley_sweep_closed_forms() {
        let family = SweepFamily::parse("paley").unwrap();
        let sizes = [5u64, 13, 17, 29, 37, 41];
        let rows = family_sweep(&family, &sizes).unwrap();
        assert_eq!(rows.len(), sizes.len());
        for row in &rows {
            let q = row.param as i64;
            assert_eq!(row.dev_lambda, rat(3 * q + 1, 4 * q), "q={q}");
            assert_eq!(row.dev_mu, rat(q - 1, 4 * q), "q={q}");
            assert!(row.dev_lambda_over_n <= rat(1, q));
            assert!(row.dev_mu_over_n <= rat(1, 4 * q));
        }
        // deviations over n strictly decrease along the sweep
        for w in rows.windows(2) {
            assert!(w[1].dev_lambda_over_n < w[0].dev_lambda_over_n);
            assert!(w[1].dev_mu_over_n < w[0].dev_mu_over_n);
        }
    }

    #[test]
    fn triangular_sweep_bound() {
        let family = SweepFamily::parse("triangular").unwrap();
        let rows = family_sweep(&family, &[10, 20, 40, 60]).unwrap();
        for row in &rows {
            let m = row.param as i64;
            let max_dev = row.dev_lambda_over_n.clone().max(row.dev_mu_over_n.clone());
            assert!(max_dev <= rat(3, m - 1), "m={m}");
        }
        // the measured deviation is unimodal with its peak near m=15; it
        // decreases along the tail of the sweep
        for w in rows.windows(2).skip(1) {
            assert!(w[1].dev_lambda_over_n < w[0].dev_lambda_over_n);
        }
    }

    #[test]
    fn cliques_sweep_fixed_m() {
        let family = SweepFamily::parse("cliques-m:5").unwrap();
        let rows = family_sweep(&family, &[2, 4, 8]).unwrap();
        for row in &rows {
            let r = row.param as i64;
            assert_eq!(row.lambda_over_n, rat(3, 5 * r), "r={r}");
        }
    }

    #[test]
    fn sweep_rejects_bad_sizes() {
        let family = SweepFamily::parse("paley").unwrap();
        assert!(matches!(
            family_sweep(&family, &[5, 12]),
            Err(AsymptoticsError::BadSweepSize { size: 12, .. })
        ));
        let cliques = SweepFamily::parse("cliques-m:5").unwrap();
        assert!(matches!(
            family_sweep(&cliques, &[1]),
            Err(AsymptoticsError::NotStronglyRegular { size: 1, .. })
        ));
    }

    #[test]
    fn sweep_family_parsing() {
        for s in ["paley", "~paley", "triangular", "lattice", "cliques-m:5", "~cliques-r:3"] {
            assert_eq!(SweepFamily::parse(s).unwrap().name(), s);
        }
        assert!(SweepFamily::parse("paley:5").is_err());
        assert!(SweepFamily::parse("cliques-m:x").is_err());
        assert_eq!(SweepFamily::parse("paley").unwrap().valid_sizes_upto(41), vec![
            5, 13, 17, 29, 37, 41
        ]);
        assert_eq!(SweepFamily::parse("lattice").unwrap().valid_sizes_upto(4), vec![2, 3, 4]);
    }

    #[test]
    fn codegree_deviation_values() {
        // K6: every pair has codegree n-2 = 4, |4 - 25/6| = 1/6 per pair
        let mut edges = Vec::new();
        for u in 0..6u32 {
            for v in (u + 1)..6 {
                edges.push((u, v));
            }
        }
        let k6 = Graph::from_edges(6, &edges).unwrap();
        assert_eq!(codegree_deviation(&k6).unwrap(), rat(5, 72));

        // paley(13): codegrees in {2, 3}, statistic 3/13 by enumeration
        assert_eq!(codegree_deviation(&paley(13).unwrap()).unwrap(), rat(3, 13));

        // two cliques: bounded away from zero and growing with m
        let g5 = disjoint_cliques(2, 5).unwrap();
        assert_eq!(codegree_deviation(&g5).unwrap(), rat(17, 25));
        let g10 = disjoint_cliques(2, 10).unwrap();
        assert!(codegree_deviation(&g10).unwrap() > codegree_deviation(&g5).unwrap());

        // non-regular input is rejected
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(codegree_deviation(&path), Err(AsymptoticsError::NotRegular(0))));
    }

    #[test]
    fn csv_rendering() {
        let family = SweepFamily::parse("paley").unwrap();
        let rows = family_sweep(&family, &[5]).unwrap();
        let csv = sweep_to_csv(&rows);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_CSV_HEADER);
        assert_eq!(lines.next().unwrap(), "paley,5,5,2,0,1,0.4,0.8,0.2,0.16,0.04");
        assert!(lines.next().is_none());
    }
}

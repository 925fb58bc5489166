//! Strongly regular graph families, brute-force verification, and exact
//! parameter algebra.
//!
//! [`verify_srg`] is the ground-truth oracle for the whole crate: it checks
//! regularity and scans every vertex pair's codegree, favoring transparency
//! over speed. Everything else (generators, complements, sweeps) is checked
//! against it.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("paley order must be a prime congruent to 1 mod 4, got {0}")]
    InvalidPaleyOrder(u64),
    #[error("triangular family needs m >= 4, got {0}")]
    InvalidTriangularOrder(u64),
    #[error("lattice family needs m >= 2, got {0}")]
    InvalidLatticeOrder(u64),
    #[error("disjoint cliques need r >= 1 and m >= 2, got r={0} m={1}")]
    InvalidCliqueShape(u64, u64),
    #[error("complement parameter {0} would be negative")]
    NegativeComplementParam(&'static str),
    #[error(
        "invalid family spec '{0}': expected paley:Q | triangular:M | lattice:M | cliques:RxM, \
         optionally prefixed with '~' for the complement"
    )]
    InvalidSpec(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The parameter quadruple `(n, k, lambda, mu)`.
///
/// Plain data: arbitrary (even infeasible) quadruples are representable so
/// that perturbed parameters can be fed to [`SrgParams::identity_residual`].
/// Quadruples produced by [`verify_srg`] always satisfy `k < n`, `lambda < k`,
/// `mu <= k` and the identity `k(k-lambda-1) = (n-k-1)mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SrgParams {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    pub fn new(n: u64, k: u64, lambda: u64, mu: u64) -> Self {
        SrgParams { n, k, lambda, mu }
    }

    /// `k(k - lambda - 1) - (n - k - 1) mu`, exactly; zero iff the standard
    /// parameter identity holds.
    pub fn identity_residual(&self) -> i128 {
        let (n, k, l, m) = (self.n as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        k * (k - l - 1) - (n - k - 1) * m
    }

    /// Parameters of the complement graph: `(n, n-1-k, n-2-2k+mu, n-2k+lambda)`.
    pub fn complement_params(&self) -> Result<SrgParams, FamilyError> {
        let (n, k, l, m) = (self.n as i128, self.k as i128, self.lambda as i128, self.mu as i128);
        let kc = n - 1 - k;
        let lc = n - 2 - 2 * k + m;
        let mc = n - 2 * k + l;
        if kc < 0 {
            return Err(FamilyError::NegativeComplementParam("k"));
        }
        if lc < 0 {
            return Err(FamilyError::NegativeComplementParam("lambda"));
        }
        if mc < 0 {
            return Err(FamilyError::NegativeComplementParam("mu"));
        }
        Ok(SrgParams::new(self.n, kc as u64, lc as u64, mc as u64))
    }

    /// Whether the parameters belong to a disjoint union of equal cliques or
    /// the complement of one: `mu = 0` on the clique side, `n - 2k + lambda = 0`
    /// on the complement side (its `mu` vanishes).
    pub fn is_trivial(&self) -> bool {
        self.mu == 0 || self.n as i128 - 2 * self.k as i128 + self.lambda as i128 == 0
    }

    /// Non-principal eigenvalues, their multiplicities, and whether the
    /// multiplicities are non-negative integers.
    pub fn eigen_feasibility(&self) -> EigenFeasibility {
        eigen_feasibility(self)
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SR({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

/// Outcome of the exhaustive strongly-regular check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SrgVerdict {
    Srg(SrgParams),
    /// `vertex` is the least vertex whose degree differs from the average
    /// degree `2m/n`.
    NotRegular { vertex: u32, degree: u64 },
    /// First pair (lexicographic) whose codegree disagrees with the value
    /// established by the first pair of its kind.
    CodegreeMismatch { u: u32, v: u32, adjacent: bool, expected: u64, found: u64 },
    /// The definition needs at least one edge and one non-edge.
    Degenerate(DegenerateReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateReason {
    NoEdge,
    NoNonEdge,
}

impl fmt::Display for SrgVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrgVerdict::Srg(p) => write!(f, "{p}"),
            SrgVerdict::NotRegular { vertex, degree } => {
                write!(f, "NotRegular vertex={vertex} degree={degree}")
            }
            SrgVerdict::CodegreeMismatch { u, v, adjacent, expected, found } => write!(
                f,
                "CodegreeMismatch pair=({u},{v}) {} expected={expected} found={found}",
                if *adjacent { "edge" } else { "non-edge" }
            ),
            SrgVerdict::Degenerate(DegenerateReason::NoEdge) => {
                write!(f, "Degenerate no-edge")
            }
            SrgVerdict::Degenerate(DegenerateReason::NoNonEdge) => {
                write!(f, "Degenerate no-non-edge")
            }
        }
    }
}

/// Exhaustively checks regularity and constancy of adjacent / non-adjacent
/// pair codegrees. O(n^2) codegree computations via row intersection.
pub fn verify_srg(g: &Graph) -> SrgVerdict {
    let n = g.vertex_count();
    let m = g.edge_count();
    if m == 0 {
        return SrgVerdict::Degenerate(DegenerateReason::NoEdge);
    }
    if m == (n as u64) * (n as u64 - 1) / 2 {
        return SrgVerdict::Degenerate(DegenerateReason::NoNonEdge);
    }
    for u in 0..n as u32 {
        let d = g.degree(u);
        if d as u128 * n as u128 != 2 * m as u128 {
            return SrgVerdict::NotRegular { vertex: u, degree: d };
        }
    }
    let k = 2 * m / n as u64;

    let mut lambda: Option<u64> = None;
    let mut mu: Option<u64> = None;
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            let c = g.codegree_pair(u, v);
            let adjacent = g.has_edge(u, v);
            let slot = if adjacent { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(expected) if expected != c => {
                    return SrgVerdict::CodegreeMismatch { u, v, adjacent, expected, found: c };
                }
                Some(_) => {}
            }
        }
    }
    // both are present: the graph has an edge and a non-edge
    SrgVerdict::Srg(SrgParams::new(n as u64, k, lambda.unwrap(), mu.unwrap()))
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// All primes `p <= limit` with `p = 1 (mod 4)`, ascending.
pub fn primes_one_mod_four_upto(limit: u64) -> Vec<u64> {
    (5..=limit).filter(|&q| q % 4 == 1 && is_prime(q)).collect()
}

/// Paley graph on a prime `q = 1 (mod 4)`: `u ~ v` iff `u - v` is a nonzero
/// quadratic residue mod `q`. Strongly regular with parameters
/// `(q, (q-1)/2, (q-5)/4, (q-1)/4)`.
pub fn paley(q: u64) -> Result<Graph, FamilyError> {
    if q % 4 != 1 || !is_prime(q) {
        return Err(FamilyError::InvalidPaleyOrder(q));
    }
    let mut g = Graph::empty(q as usize)?;
    let mut residue = vec![false; q as usize];
    for x in 1..q {
        residue[((x * x) % q) as usize] = true;
    }
    // q = 1 (mod 4) makes -1 a residue, so the relation is symmetric
    for u in 0..q as usize {
        for v in (u + 1)..q as usize {
            if residue[v - u] {
                g.set_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Triangular graph: vertices are the 2-subsets of `{0..m-1}`, adjacent iff
/// they intersect. Strongly regular with parameters
/// `(m(m-1)/2, 2(m-2), m-2, 4)`.
pub fn triangular(m: u64) -> Result<Graph, FamilyError> {
    if m < 4 {
        return Err(FamilyError::InvalidTriangularOrder(m));
    }
    let n = (m * (m - 1) / 2) as usize;
    let mut g = Graph::empty(n)?;
    // pairs {a, b}, a < b, in lexicographic order
    let mut index = vec![vec![0usize; m as usize]; m as usize];
    let mut next = 0usize;
    for (a, row) in index.iter_mut().enumerate() {
        for slot in row.iter_mut().skip(a + 1) {
            *slot = next;
            next += 1;
        }
    }
    // pairs sharing the element a form a clique
    for a in 0..m as usize {
        let members: Vec<usize> = (0..m as usize)
            .filter(|&b| b != a)
            .map(|b| if a < b { index[a][b] } else { index[b][a] })
            .collect();
        for i in 0..members.len() {
            for j in (i + 1)..members.len() {
                g.set_edge(members[i], members[j]);
            }
        }
    }
    Ok(g)
}

/// Rook's graph on an `m x m` grid: vertices `(i, j)`, adjacent iff same row
/// or same column. Strongly regular with parameters `(m^2, 2(m-1), m-2, 2)`.
pub fn lattice(m: u64) -> Result<Graph, FamilyError> {
    if m < 2 {
        return Err(FamilyError::InvalidLatticeOrder(m));
    }
    let m = m as usize;
    let mut g = Graph::empty(m * m)?;
    for i in 0..m {
        for a in 0..m {
            for b in (a + 1)..m {
                g.set_edge(i * m + a, i * m + b); // same row
                g.set_edge(a * m + i, b * m + i); // same column
            }
        }
    }
    Ok(g)
}

/// `r` disjoint complete graphs on `m` vertices each; parameters
/// `(mr, m-1, m-2, 0)`. With `r = 1` there is no non-adjacent pair and
/// [`verify_srg`] reports `Degenerate`.
pub fn disjoint_cliques(r: u64, m: u64) -> Result<Graph, FamilyError> {
    if r < 1 || m < 2 {
        return Err(FamilyError::InvalidCliqueShape(r, m));
    }
    let n = (r * m) as usize;
    let mut g = Graph::empty(n)?;
    let m = m as usize;
    for c in 0..r as usize {
        let base = c * m;
        for a in 0..m {
            for b in (a + 1)..m {
                g.set_edge(base + a, base + b);
            }
        }
    }
    Ok(g)
}

/// A named generator instance, e.g. `paley:13`, `cliques:3x4`, `~triangular:5`
/// (`~` takes the complement).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub complement: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Paley(u64),
    Triangular(u64),
    Lattice(u64),
    Cliques { r: u64, m: u64 },
}

impl FamilySpec {
    pub fn parse(spec: &str) -> Result<Self, FamilyError> {
        let invalid = || FamilyError::InvalidSpec(spec.to_string());
        let (complement, rest) = match spec.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, spec),
        };
        let (name, arg) = rest.split_once(':').ok_or_else(invalid)?;
        let family = match name {
            "paley" => Family::Paley(arg.parse().map_err(|_| invalid())?),
            "triangular" => Family::Triangular(arg.parse().map_err(|_| invalid())?),
            "lattice" => Family::Lattice(arg.parse().map_err(|_| invalid())?),
            "cliques" => {
                let (r, m) = arg.split_once('x').ok_or_else(invalid)?;
                Family::Cliques {
                    r: r.parse().map_err(|_| invalid())?,
                    m: m.parse().map_err(|_| invalid())?,
                }
            }
            _ => return Err(invalid()),
        };
        Ok(FamilySpec { family, complement })
    }

    pub fn generate(&self) -> Result<Graph, FamilyError> {
        let g = match self.family {
            Family::Paley(q) => paley(q)?,
            Family::Triangular(m) => triangular(m)?,
            Family::Lattice(m) => lattice(m)?,
            Family::Cliques { r, m } => disjoint_cliques(r, m)?,
        };
        Ok(if self.complement { g.complement() } else { g })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.complement {
            write!(f, "~")?;
        }
        match self.family {
            Family::Paley(q) => write!(f, "paley:{q}"),
            Family::Triangular(m) => write!(f, "triangular:{m}"),
            Family::Lattice(m) => write!(f, "lattice:{m}"),
            Family::Cliques { r, m } => write!(f, "cliques:{r}x{m}"),
        }
    }
}

/// Feasibility of the parameter quadruple by eigenvalue multiplicity
/// integrality.
///
/// The non-principal eigenvalues are
/// `r, s = ((lambda - mu) +- sqrt(D)) / 2` with
/// `D = (lambda - mu)^2 + 4(k - mu)`, and their multiplicities are
/// `((n-1) -+ (2k + (n-1)(lambda-mu)) / sqrt(D)) / 2`. In the conference
/// case `2k + (n-1)(lambda-mu) = 0` both multiplicities are `(n-1)/2` and
/// `D` need not be a perfect square.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenFeasibility {
    pub feasible: bool,
    pub conference: bool,
    pub eigenvalue_r: f64,
    pub eigenvalue_s: f64,
    /// Exact eigenvalues when `D` is a perfect square.
    pub integer_eigenvalues: Option<(i64, i64)>,
    /// Multiplicities of `(r, s)` when they are non-negative integers.
    pub multiplicities: Option<(u64, u64)>,
    /// Why the quadruple is infeasible, when it is.
    pub reason: Option<String>,
}

fn isqrt_u128(v: u128) -> u128 {
    if v == 0 {
        return 0;
    }
    let mut x = (v as f64).sqrt() as u128 + 2;
    while x * x > v {
        x -= 1;
    }
    x
}

fn eigen_feasibility(p: &SrgParams) -> EigenFeasibility {
    let (n, k, l, m) = (p.n as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    let lm = l - m;
    let disc = lm * lm + 4 * (k - m);
    debug_assert!(disc >= 0, "k >= mu makes the discriminant non-negative");
    let sqrt_disc_f = (disc as f64).sqrt();
    let eigenvalue_r = (lm as f64 + sqrt_disc_f) / 2.0;
    let eigenvalue_s = (lm as f64 - sqrt_disc_f) / 2.0;
    let trace_term = 2 * k + (n - 1) * lm;

    let sigma = isqrt_u128(disc as u128) as i128;
    let square = sigma * sigma == disc;
    let integer_eigenvalues = if square {
        // sigma and lambda-mu always share parity when D is a square
        Some((((lm + sigma) / 2) as i64, ((lm - sigma) / 2) as i64))
    } else {
        None
    };

    if trace_term == 0 {
        // conference case: equal multiplicities (n-1)/2
        if (n - 1) % 2 == 0 {
            let half = ((n - 1) / 2) as u64;
            return EigenFeasibility {
                feasible: true,
                conference: true,
                eigenvalue_r,
                eigenvalue_s,
                integer_eigenvalues,
                multiplicities: Some((half, half)),
                reason: None,
            };
        }
        return EigenFeasibility {
            feasible: false,
            conference: true,
            eigenvalue_r,
            eigenvalue_s,
            integer_eigenvalues,
            multiplicities: None,
            reason: Some("conference multiplicity (n-1)/2 is not an integer".to_string()),
        };
    }

    let fail = |reason: &str| EigenFeasibility {
        feasible: false,
        conference: false,
        eigenvalue_r,
        eigenvalue_s,
        integer_eigenvalues,
        multiplicities: None,
        reason: Some(reason.to_string()),
    };

    if !square || sigma == 0 {
        return fail("discriminant is not a positive perfect square");
    }
    if trace_term % sigma != 0 {
        return fail("sqrt(D) does not divide 2k + (n-1)(lambda - mu)");
    }
    let q = trace_term / sigma;
    if (n - 1 - q) % 2 != 0 {
        return fail("multiplicities are not integers");
    }
    let mult_r = (n - 1 - q) / 2;
    let mult_s = (n - 1 + q) / 2;
    if mult_r < 0 || mult_s < 0 {
        return fail("a multiplicity is negative");
    }
    EigenFeasibility {
        feasible: true,
        conference: false,
        eigenvalue_r,
        eigenvalue_s,
        integer_eigenvalues,
        multiplicities: Some((mult_r as u64, mult_s as u64)),
        reason: None,
    }
}

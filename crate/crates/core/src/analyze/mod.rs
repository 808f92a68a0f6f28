//! Lattice invariants: determinant, parity, minimum, kissing number, theta
//! coefficients, centre density, root system, and classification.

pub mod enumerate;
pub mod reduce;

use std::time::{Duration, Instant};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::ExactGram;
use crate::linalg;
pub use enumerate::{brute_force_min, Enumerator};
pub use reduce::{lll_gram, Reduction};

pub const DEFAULT_THETA_BOUND: u32 = 8;
pub const MAX_THETA_BOUND: u32 = 12;
pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    E8,
    E8xE8,
    D16plus,
    BarnesWall16,
    EvenUnimodularOther,
    Other,
}

/// `delta = lambda_1^{n/2} / (2^n sqrt det)`, exact when rational.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CenterDensity {
    Exact(String),
    Approximate(f64),
}

impl CenterDensity {
    pub fn to_f64(&self) -> f64 {
        match self {
            CenterDensity::Exact(s) => s.parse::<BigRational>().ok().and_then(|q| q.to_f64()).unwrap_or(f64::NAN),
            CenterDensity::Approximate(x) => *x,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootComponent {
    pub rank: usize,
    pub roots: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub dimension: usize,
    /// Exact determinant as a reduced fraction.
    pub det: String,
    pub integral: bool,
    pub even: bool,
    pub min_norm: Option<i64>,
    pub kissing: Option<u64>,
    /// `theta[k]` is the number of vectors of norm `k`, `0 <= k <= bound`.
    pub theta: Vec<u64>,
    pub center_density: Option<CenterDensity>,
    pub root_components: Option<Vec<RootComponent>>,
    pub classification: Classification,
    pub extremal: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct AnalysisOptions {
    pub theta_bound: u32,
    pub time_budget: Duration,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { theta_bound: DEFAULT_THETA_BOUND, time_budget: DEFAULT_TIME_BUDGET }
    }
}

pub fn exact_det(g: &ExactGram) -> BigRational {
    g.det()
}

pub fn is_integral(g: &ExactGram) -> bool {
    g.is_integral()
}

pub fn is_even(g: &ExactGram) -> bool {
    g.is_even()
}

/// `2 + 2 floor(n/24)`.
pub fn extremal_bound(n: usize) -> i64 {
    2 + 2 * (n / 24) as i64
}

/// LLL-reduced integral Gram matrix of `g`, in machine integers.
pub fn reduced_gram(g: &ExactGram) -> Result<Vec<Vec<i64>>> {
    let ints = g.integer_entries().ok_or(Error::NotIntegral)?;
    if !g.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let red = lll_gram(&ints)?;
    red.gram
        .iter()
        .map(|r| r.iter().map(|x| x.to_i64().ok_or_else(|| Error::Overflow("reduced Gram entry".into()))).collect())
        .collect()
}

fn deadline(budget: Duration) -> Option<Instant> {
    Instant::now().checked_add(budget)
}

fn min_and_kissing_reduced(red: &[Vec<i64>], dl: Option<Instant>) -> Result<(i64, u64)> {
    let bound = (0..red.len()).map(|i| red[i][i]).min().ok_or(Error::InvalidParameter("empty Gram".into()))?;
    let counts = Enumerator::new(red)?.count_pairs(bound, dl)?;
    let (norm, pairs) =
        counts.iter().enumerate().skip(1).find(|(_, &c)| c > 0).expect("a basis vector attains the bound");
    Ok((norm as i64, 2 * pairs))
}

/// Exact minimum and number of minimal vectors (both signs).
pub fn minimum_and_kissing(g: &ExactGram) -> Result<(i64, u64)> {
    min_and_kissing_reduced(&reduced_gram(g)?, deadline(DEFAULT_TIME_BUDGET))
}

fn theta_reduced(red: &[Vec<i64>], bound: u32, dl: Option<Instant>) -> Result<Vec<u64>> {
    if bound > MAX_THETA_BOUND {
        return Err(Error::BudgetExceeded(format!("theta bound {bound} exceeds {MAX_THETA_BOUND}")));
    }
    let mut counts = Enumerator::new(red)?.count_pairs(i64::from(bound), dl)?;
    for c in counts.iter_mut() {
        *c *= 2;
    }
    counts[0] = 1;
    Ok(counts)
}

/// Number of lattice vectors of each norm `0..=bound`.
pub fn theta_coeffs(g: &ExactGram, bound: u32) -> Result<Vec<u64>> {
    theta_reduced(&reduced_gram(g)?, bound, deadline(DEFAULT_TIME_BUDGET))
}

fn is_square_rational(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// Centre density from the minimum, dimension and determinant.
pub fn center_density(min_norm: i64, dim: usize, det: &BigRational) -> CenterDensity {
    // delta^2 = lambda^n / (4^n det)
    let lambda = BigRational::from_integer(min_norm.into());
    let sq = num::pow(lambda, dim) / (BigRational::from_integer(BigInt::from(4).pow(dim as u32)) * det);
    match is_square_rational(&sq) {
        Some(r) => CenterDensity::Exact(r.to_string()),
        None => CenterDensity::Approximate(sq.to_f64().unwrap_or(f64::NAN).sqrt()),
    }
}

fn root_components_reduced(red: &[Vec<i64>], dl: Option<Instant>) -> Result<Vec<RootComponent>> {
    let mut roots: Vec<Vec<i64>> = Vec::new();
    Enumerator::new(red)?.for_each(2, dl, |x, norm| {
        if norm == 2 {
            roots.push(x.to_vec());
        }
    })?;
    let n = red.len();
    let gx: Vec<Vec<i64>> =
        roots.iter().map(|x| (0..n).map(|a| (0..n).map(|b| red[a][b] * x[b]).sum()).collect()).collect();
    let mut uf = UnionFind::<usize>::new(roots.len());
    for a in 0..roots.len() {
        for b in a + 1..roots.len() {
            let ip: i64 = gx[a].iter().zip(&roots[b]).map(|(u, v)| u * v).sum();
            if ip != 0 {
                uf.union(a, b);
            }
        }
    }
    let labels = uf.into_labeling();
    let mut reps: Vec<usize> = labels.clone();
    reps.sort_unstable();
    reps.dedup();
    let mut out: Vec<RootComponent> = reps
        .iter()
        .map(|&r| {
            let members: Vec<Vec<i64>> =
                roots.iter().zip(&labels).filter(|(_, &l)| l == r).map(|(x, _)| x.clone()).collect();
            RootComponent { rank: linalg::rank_int(&members), roots: 2 * members.len() as u64 }
        })
        .collect();
    out.sort_by(|a, b| b.rank.cmp(&a.rank).then(b.roots.cmp(&a.roots)));
    Ok(out)
}

/// Connected components of the norm-2 vectors under non-orthogonality.
pub fn root_components(g: &ExactGram) -> Result<Vec<RootComponent>> {
    if !g.is_even() {
        return Err(Error::InvalidParameter("root components need an even lattice".into()));
    }
    let red = reduced_gram(g)?;
    let (min, _) = min_and_kissing_reduced(&red, deadline(DEFAULT_TIME_BUDGET))?;
    if min != 2 {
        return Err(Error::InvalidParameter(format!("minimum is {min}, root components need 2")));
    }
    root_components_reduced(&red, deadline(DEFAULT_TIME_BUDGET))
}

/// Full report: determinant, parity, minimum, theta series, density, roots,
/// and named class.
pub fn classify(g: &ExactGram, opts: &AnalysisOptions) -> Result<LatticeReport> {
    let n = g.dim();
    let det = g.det();
    let integral = g.is_integral();
    let even = g.is_even();
    let unimodular = det.is_one();
    if even && unimodular {
        assert!(n.is_multiple_of(8), "even unimodular lattice in dimension {n}");
    }
    let mut report = LatticeReport {
        dimension: n,
        det: det.to_string(),
        integral,
        even,
        min_norm: None,
        kissing: None,
        theta: Vec::new(),
        center_density: None,
        root_components: None,
        classification: Classification::Other,
        extremal: false,
    };
    if !g.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    if !integral {
        return Ok(report);
    }
    let dl = deadline(opts.time_budget);
    let red = reduced_gram(g)?;
    let (min, kissing) = min_and_kissing_reduced(&red, dl)?;
    report.min_norm = Some(min);
    report.kissing = Some(kissing);
    report.theta = theta_reduced(&red, opts.theta_bound, dl)?;
    report.center_density = Some(center_density(min, n, &det));
    if even && min == 2 {
        report.root_components = Some(root_components_reduced(&red, dl)?);
    }
    report.extremal = even && unimodular && min == extremal_bound(n);
    let bw_det = BigRational::from_integer(256.into());
    report.classification = if even && unimodular && n == 8 {
        assert_eq!(min, 2, "even unimodular rank 8 lattice must have minimum 2");
        Classification::E8
    } else if even && unimodular && n == 16 && min == 2 {
        let comps = report.root_components.as_deref().unwrap_or_default();
        let ranks: Vec<usize> = comps.iter().map(|c| c.rank).collect();
        match ranks.as_slice() {
            [8, 8] => Classification::E8xE8,
            [16] => Classification::D16plus,
            _ => Classification::EvenUnimodularOther,
        }
    } else if even && n == 16 && det == bw_det && min == 4 {
        Classification::BarnesWall16
    } else if even && unimodular {
        Classification::EvenUnimodularOther
    } else {
        Classification::Other
    };
    Ok(report)
}

/// Vectors of `g` (in its own coordinates) attaining the minimum, one per sign pair.
pub fn minimal_vectors(g: &ExactGram) -> Result<Vec<Vec<BigInt>>> {
    let ints = g.integer_entries().ok_or(Error::NotIntegral)?;
    let red = lll_gram(&ints)?;
    let red64 = reduced_gram(g)?;
    let (min, _) = min_and_kissing_reduced(&red64, deadline(DEFAULT_TIME_BUDGET))?;
    let mut out = Vec::new();
    Enumerator::new(&red64)?.for_each(min, deadline(DEFAULT_TIME_BUDGET), |x, norm| {
        if norm == min {
            let n = x.len();
            let v: Vec<BigInt> =
                (0..n).map(|j| (0..n).fold(BigInt::zero(), |acc, i| acc + &red.transform[i][j] * x[i])).collect();
            out.push(v);
        }
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(n: usize, v: i64) -> ExactGram {
        ExactGram::from_integers(
            &(0..n).map(|i| (0..n).map(|j| if i == j { v } else { 0 }).collect()).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    /// Gram of the E8 root lattice in the standard Dynkin basis.
    pub(crate) fn e8_dynkin() -> ExactGram {
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
        let mut g = vec![vec![0i64; 8]; 8];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in edges {
            g[a][b] = -1;
            g[b][a] = -1;
        }
        ExactGram::from_integers(&g).unwrap()
    }

    #[test]
    fn diagonal_examples() {
        let g = diag(8, 2);
        assert_eq!(minimum_and_kissing(&g).unwrap(), (2, 16));
        let r = classify(&diag(8, 1), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.min_norm, Some(1));
        assert!(!r.even);
        assert_eq!(r.classification, Classification::Other);
        let comps = root_components(&diag(2, 2)).unwrap();
        assert_eq!(comps, vec![RootComponent { rank: 1, roots: 2 }; 2]);
    }

    #[test]
    fn e8_dynkin_report() {
        let r = classify(&e8_dynkin(), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.det, "1");
        assert_eq!(r.kissing, Some(240));
        assert_eq!(&r.theta[..7], &[1, 0, 240, 0, 2160, 0, 6720]);
        assert_eq!(r.center_density, Some(CenterDensity::Exact("1/16".into())));
        assert_eq!(r.classification, Classification::E8);
        assert!(r.extremal);
        assert_eq!(r.root_components, Some(vec![RootComponent { rank: 8, roots: 240 }]));
        assert_eq!(minimal_vectors(&e8_dynkin()).unwrap().len(), 120);
    }

    #[test]
    fn density_cases() {
        assert_eq!(center_density(4, 16, &BigRational::from_integer(256.into())), CenterDensity::Exact("1/16".into()));
        // Z^2: 1 / (4 * 1)
        assert_eq!(center_density(1, 2, &BigRational::one()), CenterDensity::Exact("1/4".into()));
        // A2 scaled to norm 2: det 3, delta = 2 / (4 sqrt 3)
        match center_density(2, 2, &BigRational::from_integer(3.into())) {
            CenterDensity::Approximate(x) => assert!((x - 0.5 / 3f64.sqrt()).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn non_integral_and_indefinite() {
        let g = e8_dynkin().scaled(&BigRational::new(1.into(), 2.into()));
        assert!(!is_integral(&g));
        let r = classify(&g, &AnalysisOptions::default()).unwrap();
        assert_eq!(r.min_norm, None);
        let bad = ExactGram::from_integers(&[vec![1, 2], vec![2, 1]]).unwrap();
        assert!(matches!(classify(&bad, &AnalysisOptions::default()), Err(Error::NotPositiveDefinite)));
        assert!(theta_coeffs(&e8_dynkin(), 14).is_err());
    }

    #[test]
    fn extremal_bounds() {
        assert_eq!(extremal_bound(8), 2);
        assert_eq!(extremal_bound(16), 2);
        assert_eq!(extremal_bound(24), 4);
    }
}

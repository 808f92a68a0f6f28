//! Parameter scans over the explicit families, the negative Pell census, and
//! the density constants.

use std::f64::consts::PI;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analyze::{classify, AnalysisOptions, Classification, LatticeReport};
use crate::error::{Error, Result};
use crate::field::pell::negative_pell_solvable;
use crate::lattice::{construct_quadratic_family, construct_quartic, Construction};
use crate::numtheory::{primes_up_to, smallest_square_factor, v2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `D = s^2 + 4`.
    E8Quadratic,
    /// `D = s^2 + 1`.
    E8QuadraticPlusOne,
    Dim16Quartic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SkipReason {
    NotSquarefree { value: u64, square_factor: u64 },
    WrongCongruence { detail: String },
    ExcludedParameter,
    ExceptionalMonogenic,
    TwistSearchFailed { candidates: usize },
    VerificationFailed { detail: String },
    Error { detail: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub family: Family,
    /// `s` for quadratic families, `m` for quartic.
    pub parameter: u64,
    /// Field discriminant.
    pub d_f: String,
    pub alpha: Vec<String>,
    pub twist_label: String,
    pub det: String,
    pub even: bool,
    pub min_norm: Option<i64>,
    pub kissing: Option<u64>,
    pub classification: Classification,
    pub build_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Skip {
    pub family: Family,
    pub parameter: u64,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanItem {
    Entry(CatalogEntry),
    Skipped(Skip),
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub analysis: AnalysisOptions,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub timing: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { analysis: AnalysisOptions::default(), jobs: 0, timing: true }
    }
}

fn run_parallel<T: Send, F: Fn(u64) -> T + Sync + Send>(params: Vec<u64>, jobs: usize, f: F) -> Vec<T> {
    let work = || params.par_iter().map(|&p| f(p)).collect();
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

fn skip(family: Family, parameter: u64, reason: SkipReason) -> ScanItem {
    ScanItem::Skipped(Skip { family, parameter, reason })
}

fn from_error(family: Family, parameter: u64, e: Error) -> ScanItem {
    let reason = match e {
        Error::NotSquarefree { value, square_factor } => SkipReason::NotSquarefree { value, square_factor },
        Error::TwistValidation { candidates } => SkipReason::TwistSearchFailed { candidates: candidates.len() },
        other => SkipReason::Error { detail: other.to_string() },
    };
    skip(family, parameter, reason)
}

/// Verification predicate per family; `Err` carries the failed property.
fn verify(family: Family, r: &LatticeReport) -> std::result::Result<(), String> {
    let ok = match family {
        Family::E8Quadratic | Family::E8QuadraticPlusOne => {
            r.det == "1"
                && r.even
                && r.min_norm == Some(2)
                && r.kissing == Some(240)
                && r.classification == Classification::E8
        }
        Family::Dim16Quartic => match r.classification {
            Classification::E8xE8 => {
                r.det == "1"
                    && r.kissing == Some(480)
                    && r.root_components.as_ref().is_some_and(|c| c.len() == 2 && c.iter().all(|x| x.rank == 8))
            }
            Classification::BarnesWall16 => r.det == "256" && r.min_norm == Some(4) && r.kissing == Some(4320),
            _ => false,
        },
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "det {} even {} min {:?} kissing {:?} class {:?}",
            r.det, r.even, r.min_norm, r.kissing, r.classification
        ))
    }
}

fn build_entry(
    family: Family,
    parameter: u64,
    construct: impl FnOnce() -> Result<Construction>,
    opts: &ScanOptions,
) -> ScanItem {
    let start = Instant::now();
    let c = match construct() {
        Ok(c) => c,
        Err(e) => return from_error(family, parameter, e),
    };
    let report = match classify(&c.lattice.gram(), &opts.analysis) {
        Ok(r) => r,
        Err(e) => return from_error(family, parameter, e),
    };
    if let Err(detail) = verify(family, &report) {
        return skip(family, parameter, SkipReason::VerificationFailed { detail });
    }
    ScanItem::Entry(CatalogEntry {
        family,
        parameter,
        d_f: c.lattice.field().discriminant().to_string(),
        alpha: c.selection.alpha.coord_strings(),
        twist_label: c.selection.label.clone(),
        det: report.det.clone(),
        even: report.even,
        min_norm: report.min_norm,
        kissing: report.kissing,
        classification: report.classification,
        build_ms: opts.timing.then(|| start.elapsed().as_millis() as u64),
    })
}

fn quadratic_item(s: u64, plus_one: bool, opts: &ScanOptions) -> ScanItem {
    let (family, shift) = if plus_one { (Family::E8QuadraticPlusOne, 1) } else { (Family::E8Quadratic, 4) };
    if s.is_multiple_of(2) {
        return skip(family, s, SkipReason::WrongCongruence { detail: "s is even".into() });
    }
    let d = s * s + shift;
    if let Some(p) = smallest_square_factor(d) {
        return skip(family, s, SkipReason::NotSquarefree { value: d, square_factor: p });
    }
    if d % 8 == 1 {
        return skip(family, s, SkipReason::WrongCongruence { detail: format!("D = {d} = 1 (mod 8)") });
    }
    build_entry(family, s, || construct_quadratic_family(s, plus_one), opts)
}

/// E8 lattices over `Q(sqrt(s^2 + 4))` for `s <= s_max`, and over
/// `Q(sqrt(s^2 + 1))` when `include_plus_one` is set. Results are in
/// parameter order regardless of parallelism.
pub fn scan_quadratic(s_max: u64, include_plus_one: bool, opts: &ScanOptions) -> Result<Vec<ScanItem>> {
    if s_max < 1 {
        return Err(Error::InvalidParameter("s_max must be at least 1".into()));
    }
    if s_max > 1 << 20 {
        return Err(Error::Overflow(format!("s_max = {s_max}")));
    }
    let params: Vec<u64> = (1..=s_max).collect();
    let mut items = run_parallel(params.clone(), opts.jobs, |s| quadratic_item(s, false, opts));
    if include_plus_one {
        items.extend(run_parallel(params, opts.jobs, |s| quadratic_item(s, true, opts)));
    }
    Ok(items)
}

fn quartic_item(m: u64, opts: &ScanOptions) -> ScanItem {
    let family = Family::Dim16Quartic;
    if m == 3 {
        return skip(family, m, SkipReason::ExcludedParameter);
    }
    match v2(m) {
        0 => return skip(family, m, SkipReason::WrongCongruence { detail: "m is odd".into() }),
        1 | 2 => {}
        v => return skip(family, m, SkipReason::WrongCongruence { detail: format!("v2(m) = {v}") }),
    }
    if m == 2 || m == 4 {
        return skip(family, m, SkipReason::ExceptionalMonogenic);
    }
    let (k, shift) = if v2(m) == 1 { (m / 2, 4) } else { (m / 4, 1) };
    let val = k * k + shift;
    if let Some(p) = smallest_square_factor(val) {
        return skip(family, m, SkipReason::NotSquarefree { value: val, square_factor: p });
    }
    build_entry(family, m, || construct_quartic(m), opts)
}

/// E8 x E8 (`m = 2k`) and determinant-256 (`m = 4k`) lattices for `m <= m_max`.
pub fn scan_quartic(m_max: u64, opts: &ScanOptions) -> Result<Vec<ScanItem>> {
    if m_max < 2 {
        return Err(Error::InvalidParameter("m_max must be at least 2".into()));
    }
    if m_max > 1 << 16 {
        return Err(Error::Overflow(format!("m_max = {m_max}")));
    }
    Ok(run_parallel((1..=m_max).collect(), opts.jobs, |m| quartic_item(m, opts)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityConstants {
    pub p_bound: u64,
    pub c1: f64,
    pub tau: f64,
    pub beta: f64,
}

/// `c1 = 9/(8 pi) prod_{p = 1 (4), p <= P} (1 - p^-2)^(1/2)`,
/// `tau = (1/9) prod_{j odd} (1 - 2^-j)` over 60 factors, `beta = 9 tau`.
pub fn constants(p_bound: u64) -> Result<DensityConstants> {
    if p_bound < 100 {
        return Err(Error::InvalidParameter("truncation bound P must be at least 100".into()));
    }
    let limit = usize::try_from(p_bound).map_err(|_| Error::Overflow("P".into()))?;
    if limit > 100_000_000 {
        return Err(Error::Overflow(format!("P = {p_bound}")));
    }
    let log_prod: f64 = primes_up_to(limit)
        .into_iter()
        .filter(|p| p % 4 == 1)
        .map(|p| 0.5 * (1.0 - 1.0 / (p as f64 * p as f64)).ln())
        .sum();
    let c1 = 9.0 / (8.0 * PI) * log_prod.exp();
    let beta: f64 = (0..60).map(|i| 1.0 - 0.5f64.powi(2 * i + 1)).product();
    Ok(DensityConstants { p_bound, c1, tau: beta / 9.0, beta })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub x: u64,
    /// Fundamental discriminants `1 < d <= X` with no prime factor `= 3 (mod 4)`.
    pub d2: u64,
    pub d_even: u64,
    pub d_odd: u64,
    /// Members of `d_even` whose radicand `d/4` has a solvable negative Pell equation.
    pub d_even_pell: u64,
    pub d_even_pell_fraction: f64,
    pub d_odd_pell: u64,
    pub d_odd_pell_fraction: f64,
    /// `c1 X / sqrt(log X)` with `c1` truncated at `c1_p_bound`.
    pub reference_curve: f64,
    pub c1_p_bound: u64,
    pub note: String,
}

/// Smallest-prime-factor sieve.
fn spf_sieve(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Squarefree odd `n` whose primes are all `1 (mod 4)`.
fn odd_part_ok(mut n: usize, spf: &[u32]) -> bool {
    while n > 1 {
        let p = spf[n] as usize;
        if p % 4 != 1 {
            return false;
        }
        n /= p;
        if n.is_multiple_of(p) {
            return false;
        }
    }
    true
}

/// Census of `D_2`, `D_even` and `D_odd` up to `X` with negative Pell solvability.
pub fn pell_census(x: u64) -> Result<CensusReport> {
    if x > 10_000_000 {
        return Err(Error::Overflow(format!("X = {x} exceeds 10^7")));
    }
    let limit = x as usize;
    let spf = spf_sieve(limit.max(2));
    let (mut d_even, mut d_odd, mut even_pell, mut odd_pell) = (0u64, 0u64, 0u64, 0u64);
    for d in 2..=limit {
        if d % 8 == 0 {
            // d = 8 m', m' odd squarefree with primes = 1 (mod 4)
            let m = d / 8;
            if m % 2 == 1 && odd_part_ok(m, &spf) {
                d_even += 1;
                if negative_pell_solvable((d / 4) as u64)? {
                    even_pell += 1;
                }
            }
        } else if d % 4 == 1 && odd_part_ok(d, &spf) {
            d_odd += 1;
            if negative_pell_solvable(d as u64)? {
                odd_pell += 1;
            }
        }
    }
    let c = constants(100_000)?;
    let xf = x as f64;
    let reference_curve = if x > 1 { c.c1 * xf / xf.ln().sqrt() } else { 0.0 };
    let frac = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    Ok(CensusReport {
        x,
        d2: d_even + d_odd,
        d_even,
        d_odd,
        d_even_pell: even_pell,
        d_even_pell_fraction: frac(even_pell, d_even),
        d_odd_pell: odd_pell,
        d_odd_pell_fraction: frac(odd_pell, d_odd),
        reference_curve,
        c1_p_bound: c.p_bound,
        note: "solvability uses the integral equation x^2 - D y^2 = -1; for d = 1 (mod 4) a half-integral \
               unit of norm -1 exists exactly when an integral one does (its cube is integral)"
            .into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fundamental_d2_oracle(x: u64) -> (Vec<u64>, Vec<u64>) {
        // direct definition via trial-division factorization
        let ok = |n: u64| crate::numtheory::prime_factors(n).iter().all(|&p| p % 4 != 3);
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for d in 2..=x {
            let fundamental = if d % 4 == 1 {
                crate::numtheory::is_squarefree(d)
            } else if d % 4 == 0 {
                let m = d / 4;
                (m % 4 == 2 || m % 4 == 3) && crate::numtheory::is_squarefree(m)
            } else {
                false
            };
            if fundamental && ok(d) {
                if d % 8 == 0 {
                    even.push(d);
                } else if d % 2 == 1 {
                    odd.push(d);
                }
            }
        }
        (even, odd)
    }

    #[test]
    fn census_small() {
        let r = pell_census(100).unwrap();
        assert_eq!(r.d_even, 2);
        let (even, odd) = fundamental_d2_oracle(100);
        assert_eq!(even, vec![8, 40]);
        assert_eq!(r.d_odd as usize, odd.len());
        assert!(odd.contains(&5));
        let r = pell_census(5000).unwrap();
        let (even, odd) = fundamental_d2_oracle(5000);
        assert_eq!((r.d_even as usize, r.d_odd as usize), (even.len(), odd.len()));
        assert!(r.d_even_pell_fraction > 0.0 && r.d_even_pell_fraction < 1.0);
    }

    #[test]
    fn tau_value() {
        let c = constants(100_000).unwrap();
        assert!((c.tau - 0.046602493).abs() < 1e-9);
        assert!((c.beta - 9.0 * c.tau).abs() < 1e-12);
        assert!(constants(10).is_err());
    }

    #[test]
    fn c1_converges() {
        let a = constants(100_000).unwrap().c1;
        let b = constants(1_000_000).unwrap().c1;
        assert!((a - b).abs() < 1e-4);
    }

    #[test]
    fn quadratic_skips() {
        let opts = ScanOptions { timing: false, ..Default::default() };
        let items = scan_quadratic(12, false, &opts).unwrap();
        let s11 = items.iter().find_map(|i| match i {
            ScanItem::Skipped(s) if s.parameter == 11 => Some(s.reason.clone()),
            _ => None,
        });
        // 11^2 + 4 = 125 = 5^3
        assert_eq!(s11, Some(SkipReason::NotSquarefree { value: 125, square_factor: 5 }));
        let entries: Vec<u64> = items
            .iter()
            .filter_map(|i| match i {
                ScanItem::Entry(e) => Some(e.parameter),
                _ => None,
            })
            .collect();
        assert_eq!(entries, vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn quartic_skip_reasons() {
        let opts = ScanOptions::default();
        assert_eq!(quartic_item(3, &opts), skip(Family::Dim16Quartic, 3, SkipReason::ExcludedParameter));
        assert_eq!(quartic_item(2, &opts), skip(Family::Dim16Quartic, 2, SkipReason::ExceptionalMonogenic));
        assert!(matches!(
            quartic_item(28, &opts),
            ScanItem::Skipped(Skip { reason: SkipReason::NotSquarefree { value: 50, square_factor: 5 }, .. })
        ));
        assert!(matches!(
            quartic_item(8, &opts),
            ScanItem::Skipped(Skip { reason: SkipReason::WrongCongruence { .. }, .. })
        ));
    }
}

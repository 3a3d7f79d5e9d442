//! End-to-end verification over a range of `(n, k)`.
//!
//! Each cell checks the dimension identity, constant pullbacks of the Whitney
//! basis, `R ∘ W = id`, agreement of the characterization solve with `W`,
//! triviality of the homogeneous kernel and completeness of the elimination
//! replay. Cells are independent and run in parallel; results keep their
//! `(n, k)` order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::characterize::{self, kernel_is_trivial, lambda_e_dimension, proof_trace, UnknownLayout};
use crate::derham::derham;
use crate::error::{Error, Result};
use crate::forms::{is_constant, pullback};
use crate::rational::Rational;
use crate::simplicial::{binomial, enumerate_faces, Cochain};
use crate::whitney::{whitney, whitney_basis_form};

pub const DEFAULT_CEILING: usize = 5;
pub const DEFAULT_SAMPLES: usize = 20;

/// Small random rational: numerator in `-10..=10`, denominator in `1..=10`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-10..=10), rng.gen_range(1..=10))
}

pub fn random_cochain<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<Cochain> {
    let values: Vec<Rational> = (0..binomial(n + 1, k + 1)).map(|_| random_rational(rng)).collect();
    Cochain::from_values(n, k, &values)
}

/// Generator for the random cochains of one `(n, k)` cell.
pub fn cell_rng(seed: u64, n: usize, k: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((n as u64) << 32) ^ ((k as u64) << 16))
}

/// Basis cochains of every canonical face followed by `samples` random ones.
pub fn test_cochains(n: usize, k: usize, samples: usize, seed: u64) -> Result<Vec<Cochain>> {
    let mut out: Vec<Cochain> = enumerate_faces(n, k)?.iter().map(Cochain::basis).collect();
    let mut rng = cell_rng(seed, n, k);
    for _ in 0..samples {
        out.push(random_cochain(n, k, &mut rng)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
}

impl CheckResult {
    fn pass(name: &'static str) -> Self {
        CheckResult { name, passed: true, skipped: None, counterexample: None }
    }

    fn skip(name: &'static str, why: &'static str) -> Self {
        CheckResult { name, passed: true, skipped: Some(why), counterexample: None }
    }

    fn fail(name: &'static str, counterexample: serde_json::Value) -> Self {
        CheckResult { name, passed: false, skipped: None, counterexample: Some(counterexample) }
    }

    fn from_outcome(name: &'static str, outcome: Result<Option<serde_json::Value>>) -> Self {
        match outcome {
            Ok(None) => CheckResult::pass(name),
            Ok(Some(cx)) => CheckResult::fail(name, cx),
            Err(e) => CheckResult::fail(name, serde_json::json!({ "error": e.to_string() })),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellReport {
    pub n: usize,
    pub k: usize,
    pub faces: usize,
    pub lambda_e_dimension: Option<usize>,
    pub checks: Vec<CheckResult>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub passed: bool,
    pub cells: Vec<CellReport>,
}

impl VerifyReport {
    /// The first failing check in `(n, k)` order.
    pub fn first_failure(&self) -> Option<(&CellReport, &CheckResult)> {
        self.cells.iter().find_map(|cell| cell.checks.iter().find(|c| !c.passed).map(|c| (cell, c)))
    }

    pub fn to_table(&self) -> String {
        let names: Vec<&str> = self.cells.first().map(|c| c.checks.iter().map(|x| x.name).collect()).unwrap_or_default();
        let mut out = format!("{:>2} {:>2} {:>6} {:>6}", "n", "k", "faces", "dim");
        for name in &names {
            out.push_str(&format!(" {name:>17}"));
        }
        out.push('\n');
        for cell in &self.cells {
            let dim = cell.lambda_e_dimension.map_or("-".to_string(), |d| d.to_string());
            out.push_str(&format!("{:>2} {:>2} {:>6} {:>6}", cell.n, cell.k, cell.faces, dim));
            for check in &cell.checks {
                let mark = match (check.passed, check.skipped) {
                    (true, Some(_)) => "n/a",
                    (true, None) => "pass",
                    (false, _) => "FAIL",
                };
                out.push_str(&format!(" {mark:>17}"));
            }
            out.push('\n');
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "verification FAILED\n" });
        out
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub k: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub ceiling: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { n_max: DEFAULT_CEILING, k: None, samples: DEFAULT_SAMPLES, seed: 0, ceiling: DEFAULT_CEILING }
    }
}

fn cochain_json(c: &Cochain) -> serde_json::Value {
    serde_json::to_value(c).expect("cochain serializes")
}

fn check_constant_pullbacks(n: usize, k: usize) -> Result<Option<serde_json::Value>> {
    let faces = enumerate_faces(n, k)?;
    for face in &faces {
        let w = whitney_basis_form(face);
        for other in &faces {
            if !is_constant(&pullback(&w, other)?) {
                return Ok(Some(serde_json::json!({ "basis_face": face.vertices(), "pullback_face": other.vertices() })));
            }
        }
    }
    Ok(None)
}

fn check_round_trip(cochains: &[Cochain]) -> Result<Option<serde_json::Value>> {
    for c in cochains {
        let back = derham(&whitney(c)?)?;
        if &back != c {
            return Ok(Some(serde_json::json!({ "cochain": cochain_json(c), "derham_of_whitney": cochain_json(&back) })));
        }
    }
    Ok(None)
}

fn check_uniqueness(n: usize, k: usize, cochains: &[Cochain]) -> Result<Option<serde_json::Value>> {
    let solved = characterize::solve_characterization_batch(n, k, cochains)?;
    for (c, solved) in cochains.iter().zip(&solved) {
        let expected = whitney(c)?;
        if solved != &expected {
            return Ok(Some(serde_json::json!({
                "cochain": cochain_json(c),
                "whitney": serde_json::to_value(&expected).expect("form serializes"),
                "solved": serde_json::to_value(solved).expect("form serializes"),
            })));
        }
    }
    let cert = kernel_is_trivial(n, k)?;
    if !cert.trivial {
        let kernel: Vec<_> = cert.kernel.iter().map(|f| serde_json::to_value(f).expect("form serializes")).collect();
        return Ok(Some(serde_json::json!({ "kernel": kernel })));
    }
    Ok(None)
}

fn check_trace(n: usize, k: usize) -> Result<Option<serde_json::Value>> {
    let trace = proof_trace(n, k)?;
    let layout = UnknownLayout::new(n, k)?;
    let mut killed: Vec<String> = trace.killed().map(str::to_owned).collect();
    let total = killed.len();
    killed.sort();
    killed.dedup();
    let mut all: Vec<String> = layout.unknowns().map(|u| u.to_string()).collect();
    all.sort();
    if total != killed.len() || killed != all || !trace.complete {
        return Ok(Some(serde_json::to_value(&trace).expect("trace serializes")));
    }
    Ok(None)
}

pub fn verify_cell(n: usize, k: usize, samples: usize, seed: u64) -> CellReport {
    let faces = binomial(n + 1, k + 1);
    let dim = lambda_e_dimension(n, k);
    let dim_check = match &dim {
        Ok(d) if *d == faces && characterize::expected_dimension(n, k) == faces => CheckResult::pass("dimension"),
        Ok(d) => CheckResult::fail("dimension", serde_json::json!({ "lambda_e_dimension": d, "faces": faces })),
        Err(e) => CheckResult::fail("dimension", serde_json::json!({ "error": e.to_string() })),
    };
    let mut checks = vec![dim_check, CheckResult::from_outcome("constant_pullback", check_constant_pullbacks(n, k))];
    match test_cochains(n, k, samples, seed) {
        Ok(cochains) => {
            checks.push(CheckResult::from_outcome("derham_round_trip", check_round_trip(&cochains)));
            checks.push(CheckResult::from_outcome("uniqueness", check_uniqueness(n, k, &cochains)));
        }
        Err(e) => {
            let cx = serde_json::json!({ "error": e.to_string() });
            checks.push(CheckResult::fail("derham_round_trip", cx.clone()));
            checks.push(CheckResult::fail("uniqueness", cx));
        }
    }
    if (1..n).contains(&k) {
        checks.push(CheckResult::from_outcome("proof_trace", check_trace(n, k)));
    } else {
        checks.push(CheckResult::skip("proof_trace", "k is 0 or n"));
    }
    CellReport { n, k, faces, lambda_e_dimension: dim.ok(), checks }
}

pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.n_max == 0 || config.n_max > config.ceiling {
        return Err(Error::BadDegree { n: config.n_max, k: config.ceiling });
    }
    if let Some(k) = config.k {
        if k > config.n_max {
            return Err(Error::BadDegree { n: config.n_max, k });
        }
    }
    let cells: Vec<(usize, usize)> = (1..=config.n_max)
        .flat_map(|n| (0..=n).map(move |k| (n, k)))
        .filter(|&(_, k)| config.k.is_none_or(|want| want == k))
        .collect();
    let cells: Vec<CellReport> =
        cells.into_par_iter().map(|(n, k)| verify_cell(n, k, config.samples, config.seed)).collect();
    let passed = cells.iter().all(CellReport::passed);
    Ok(VerifyReport { n_max: config.n_max, samples: config.samples, seed: config.seed, passed, cells })
}

/// One row of the dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub k: usize,
    pub unknowns: usize,
    pub constancy_conditions: usize,
    pub faces: usize,
    pub lambda_e_dimension: usize,
}

impl DimensionRow {
    pub fn consistent(&self) -> bool {
        self.lambda_e_dimension == self.faces && self.unknowns - self.constancy_conditions == self.faces
    }
}

pub fn dimension_table(n: usize) -> Result<Vec<DimensionRow>> {
    if n == 0 {
        return Err(Error::BadDegree { n, k: 0 });
    }
    (0..=n)
        .map(|k| {
            Ok(DimensionRow {
                k,
                unknowns: binomial(n, k) * (n + 1),
                constancy_conditions: k * binomial(n + 1, k + 1),
                faces: binomial(n + 1, k + 1),
                lambda_e_dimension: lambda_e_dimension(n, k)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_cochains_are_reproducible_and_small() {
        let a = test_cochains(3, 1, 5, 7).unwrap();
        let b = test_cochains(3, 1, 5, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6 + 5);
        assert_ne!(test_cochains(3, 1, 5, 8).unwrap(), a);
        for c in &a {
            for (_, v) in c.terms() {
                assert!(v.numer().magnitude() <= &10u32.into() && v.denom() <= &10.into());
            }
        }
    }

    #[test]
    fn small_verification_passes() {
        let report = verify(&VerifyConfig { n_max: 3, samples: 3, ..VerifyConfig::default() }).unwrap();
        assert!(report.passed, "{}", report.to_table());
        assert_eq!(report.cells.len(), 2 + 3 + 4);
        assert!(report.first_failure().is_none());
    }

    #[test]
    fn n_max_one_has_two_cells() {
        let report = verify(&VerifyConfig { n_max: 1, ..VerifyConfig::default() }).unwrap();
        assert!(report.passed);
        assert_eq!(report.cells.iter().map(|c| c.k).collect::<Vec<_>>(), [0, 1]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(verify(&VerifyConfig { n_max: 6, ..VerifyConfig::default() }).is_err());
        assert!(verify(&VerifyConfig { n_max: 2, k: Some(3), ..VerifyConfig::default() }).is_err());
    }

    #[test]
    fn dimension_table_n3() {
        let rows = dimension_table(3).unwrap();
        let dims: Vec<usize> = rows.iter().map(|r| r.lambda_e_dimension).collect();
        assert_eq!(dims, [4, 6, 4, 1]);
        assert_eq!(
            rows[1],
            DimensionRow { k: 1, unknowns: 12, constancy_conditions: 6, faces: 6, lambda_e_dimension: 6 }
        );
        assert!(rows.iter().all(DimensionRow::consistent));
    }

}

//! Whitney forms as the unique solution of a linear system.
//!
//! Unknowns are the coefficients of a general affine-coefficient k-form,
//! `Σ_I (b_I + Σ_j a_{I,j} x^j) dx^I`. Each k-face contributes `k` rows
//! forcing the pulled-back coefficient to have zero gradient, and one row
//! fixing its integral. [`solve_characterization`] solves the system and
//! [`kernel_is_trivial`] certifies uniqueness; [`proof_trace`] replays the
//! coordinate-face / inclined-face elimination that shows a form with
//! vanishing pullbacks is zero.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::derham::integrate_over_face;
use crate::error::{Error, Result};
use crate::forms::{pullback, AffineForm, MultiIndex};
use crate::linalg::{self, Matrix};
use crate::rational::Rational;
use crate::simplicial::{binomial, enumerate_faces, AffineFunction, Cochain, Face};
use crate::whitney::whitney;

/// One scalar unknown of a general affine-coefficient form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unknown {
    /// `b_I`, the constant part of the coefficient of `dx^I`.
    Constant(MultiIndex),
    /// `a_{I,j}`, the `x^j` slope of the coefficient of `dx^I`.
    Slope(MultiIndex, usize),
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unknown::Constant(i) => write!(f, "b_{i}"),
            Unknown::Slope(i, j) => write!(f, "a_{i},{j}"),
        }
    }
}

/// Column order of the constraint system: for each multi-index `I` in
/// lexicographic order, `b_I` followed by `a_{I,1}, …, a_{I,n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownLayout {
    n: usize,
    k: usize,
    indices: Vec<MultiIndex>,
}

impl UnknownLayout {
    pub fn new(n: usize, k: usize) -> Result<UnknownLayout> {
        if k > n {
            return Err(Error::BadDegree { n, k });
        }
        Ok(UnknownLayout { n, k, indices: MultiIndex::all(n, k) })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.indices.len() * (self.n + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn unknown(&self, column: usize) -> Unknown {
        let index = self.indices[column / (self.n + 1)].clone();
        match column % (self.n + 1) {
            0 => Unknown::Constant(index),
            j => Unknown::Slope(index, j),
        }
    }

    pub fn column(&self, unknown: &Unknown) -> Option<usize> {
        let (index, offset) = match unknown {
            Unknown::Constant(i) => (i, 0),
            Unknown::Slope(i, j) if (1..=self.n).contains(j) => (i, *j),
            Unknown::Slope(..) => return None,
        };
        let pos = self.indices.binary_search(index).ok()?;
        Some(pos * (self.n + 1) + offset)
    }

    pub fn unknowns(&self) -> impl Iterator<Item = Unknown> + '_ {
        (0..self.len()).map(|c| self.unknown(c))
    }

    /// The form with a single unit unknown.
    pub fn basis_form(&self, column: usize) -> AffineForm {
        let mut values = vec![Rational::zero(); self.len()];
        values[column] = Rational::one();
        self.assemble(&values)
    }

    /// The form whose unknowns take the given values.
    pub fn assemble(&self, values: &[Rational]) -> AffineForm {
        assert_eq!(values.len(), self.len(), "value count");
        let mut form = AffineForm::zero(self.n, self.k).expect("valid layout");
        for (p, index) in self.indices.iter().enumerate() {
            let chunk = &values[p * (self.n + 1)..(p + 1) * (self.n + 1)];
            let f = AffineFunction::new(chunk[0].clone(), chunk[1..].to_vec());
            form.add_term(index.clone(), &f).expect("index matches layout");
        }
        form
    }

    /// Inverse of [`UnknownLayout::assemble`].
    pub fn flatten(&self, form: &AffineForm) -> Vec<Rational> {
        assert_eq!((form.n(), form.degree()), (self.n, self.k), "form shape");
        self.indices
            .iter()
            .flat_map(|index| {
                let f = form.coeff(index);
                std::iter::once(f.constant).chain(f.gradient)
            })
            .collect()
    }
}

/// Pulled-back density `(c + Σ_s g_s t^s) dt^1 ∧ … ∧ dt^k` of the general form
/// on a face, as linear functionals of the unknowns: entry 0 is `c`, entry
/// `s` is `g_s`.
fn density_functionals(layout: &UnknownLayout, face: &Face) -> Result<Vec<Vec<Rational>>> {
    let k = layout.k;
    let top = MultiIndex::full(k);
    let mut rows = vec![vec![Rational::zero(); layout.len()]; k + 1];
    for (column, form) in (0..layout.len()).map(|c| (c, layout.basis_form(c))) {
        let density = pullback(&form, face)?.coeff(&top);
        rows[0][column] = density.constant;
        for (s, g) in density.gradient.into_iter().enumerate() {
            rows[s + 1][column] = g;
        }
    }
    Ok(rows)
}

/// Exact encoding of: affine coefficients (implicit in the layout), constant
/// pullback to every k-face, and prescribed face integrals.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub layout: UnknownLayout,
    pub constancy_rows: Matrix,
    pub integral_rows: Matrix,
    pub rhs: Vec<Rational>,
}

impl ConstraintSystem {
    pub fn matrix(&self) -> Matrix {
        self.constancy_rows.vstack(&self.integral_rows)
    }
}

fn check_cochain(n: usize, k: usize, c: &Cochain) -> Result<()> {
    if k > n {
        return Err(Error::BadDegree { n, k });
    }
    if c.n() != n {
        return Err(Error::DimensionMismatch(format!("cochain lives in n={}, expected n={n}", c.n())));
    }
    if c.k() != k {
        return Err(Error::DegreeMismatch { expected: k, found: c.k() });
    }
    Ok(())
}

/// Constancy and integral rows without a right-hand side.
fn build_rows(layout: &UnknownLayout) -> Result<(Matrix, Matrix)> {
    let faces = enumerate_faces(layout.n, layout.k)?;
    let mut constancy = Vec::with_capacity(layout.k * faces.len());
    let mut integral = Vec::with_capacity(faces.len());
    for face in &faces {
        let mut rows = density_functionals(layout, face)?;
        constancy.extend(rows.drain(1..));
        integral.push(
            (0..layout.len())
                .map(|column| integrate_over_face(&layout.basis_form(column), face))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok((Matrix::from_rows(layout.len(), constancy), Matrix::from_rows(layout.len(), integral)))
}

/// Builds the system for degree `k` with integrals prescribed by `c`.
/// Degree 0 is accepted (it has no constancy rows).
pub fn build_system(n: usize, k: usize, c: &Cochain) -> Result<ConstraintSystem> {
    check_cochain(n, k, c)?;
    let layout = UnknownLayout::new(n, k)?;
    let (constancy_rows, integral_rows) = build_rows(&layout)?;
    let mut rhs = vec![Rational::zero(); constancy_rows.rows()];
    rhs.extend(c.values());
    Ok(ConstraintSystem { layout, constancy_rows, integral_rows, rhs })
}

/// `dim Λ^k_e`: the number of unknowns minus the rank of the constancy block.
pub fn lambda_e_dimension(n: usize, k: usize) -> Result<usize> {
    let layout = UnknownLayout::new(n, k)?;
    let (constancy, _) = build_rows(&layout)?;
    Ok(layout.len() - linalg::rank(&constancy))
}

fn closed_form(n: usize, k: usize, c: &Cochain) -> Option<AffineForm> {
    if k == 0 {
        // a_0 + Σ_i (a_i − a_0) x^i
        let a = c.values();
        let gradient = a[1..].iter().map(|ai| ai - &a[0]).collect();
        Some(AffineForm::function(AffineFunction::new(a[0].clone(), gradient)))
    } else if k == n {
        let value = c.eval(&Face::top(n)).expect("degree n");
        let mut form = AffineForm::zero(n, n).expect("k = n");
        form.add_term(MultiIndex::full(n), &AffineFunction::constant(n, value * Rational::factorial(n)))
            .expect("top index");
        Some(form)
    } else {
        None
    }
}

/// The characterization system for one `(n, k)`, assembled once and solved
/// for any number of prescribed integrals.
pub struct Characterizer {
    n: usize,
    k: usize,
    layout: UnknownLayout,
    matrix: Matrix,
    constancy_rows: usize,
}

impl Characterizer {
    pub fn new(n: usize, k: usize) -> Result<Characterizer> {
        let layout = UnknownLayout::new(n, k)?;
        let (constancy, integral) = build_rows(&layout)?;
        Ok(Characterizer { n, k, constancy_rows: constancy.rows(), matrix: constancy.vstack(&integral), layout })
    }

    pub fn layout(&self) -> &UnknownLayout {
        &self.layout
    }

    /// Solves the general system for every cochain with one elimination.
    pub fn solve_all(&self, cochains: &[Cochain]) -> Result<Vec<AffineForm>> {
        let mut rhs = Vec::with_capacity(cochains.len());
        for c in cochains {
            check_cochain(self.n, self.k, c)?;
            let mut b = vec![Rational::zero(); self.constancy_rows];
            b.extend(c.values());
            rhs.push(b);
        }
        let (n, k) = (self.n, self.k);
        let solutions = linalg::solve_many(&self.matrix, &rhs).map_err(|e| match e {
            Error::NotUnique { .. } => Error::NonUnique { n, k },
            Error::NoSolution => Error::Inconsistent { n, k },
            other => other,
        })?;
        Ok(solutions.iter().map(|x| self.layout.assemble(x)).collect())
    }
}

/// [`solve_characterization`] for many cochains of the same `(n, k)`.
pub fn solve_characterization_batch(n: usize, k: usize, cochains: &[Cochain]) -> Result<Vec<AffineForm>> {
    let general = Characterizer::new(n, k)?.solve_all(cochains)?;
    cochains
        .iter()
        .zip(general)
        .map(|(c, general)| match closed_form(n, k, c) {
            Some(form) if form != general => Err(Error::PathDisagreement { n, k }),
            Some(form) => Ok(form),
            None => Ok(general),
        })
        .collect()
}

/// The unique form satisfying the constraints for `c`, recovered without
/// reference to the Whitney map. For `k = 0` and `k = n` the closed form is
/// returned after checking it against the general solve.
pub fn solve_characterization(n: usize, k: usize, c: &Cochain) -> Result<AffineForm> {
    check_cochain(n, k, c)?;
    Ok(solve_characterization_batch(n, k, std::slice::from_ref(c))?.pop().expect("one cochain"))
}

/// Outcome of the homogeneous uniqueness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCertificate {
    pub trivial: bool,
    /// Basis of the forms with constant, zero-integral pullbacks; empty when trivial.
    pub kernel: Vec<AffineForm>,
}

/// Whether the only form with constant pullbacks and zero face integrals is zero.
pub fn kernel_is_trivial(n: usize, k: usize) -> Result<KernelCertificate> {
    let layout = UnknownLayout::new(n, k)?;
    let (constancy, integral) = build_rows(&layout)?;
    let kernel: Vec<AffineForm> =
        linalg::nullspace(&constancy.vstack(&integral)).iter().map(|v| layout.assemble(v)).collect();
    Ok(KernelCertificate { trivial: kernel.is_empty(), kernel })
}

/// Whether `solve_characterization` reproduces the Whitney form of `c`.
pub fn matches_whitney(n: usize, k: usize, c: &Cochain) -> Result<bool> {
    Ok(solve_characterization(n, k, c)? == whitney(c)?)
}

/// A coordinate face `[0, e_{j_1}, …, e_{j_k}]` and the unknowns its vanishing pullback kills.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateStep {
    pub face: Vec<usize>,
    pub killed: Vec<String>,
}

/// An inclined face `[e_m, e_{l_1}, …, e_{l_k}]` and the unknown `a_{L,m}` it kills.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclinedStep {
    #[serde(rename = "L")]
    pub l: Vec<usize>,
    pub m: usize,
    pub face: Vec<usize>,
    /// Constant term of the pulled-back coefficient of `dx^L`, as a combination of unknowns.
    pub constant_term: String,
    pub killed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofTrace {
    pub n: usize,
    pub k: usize,
    pub stage1: Vec<CoordinateStep>,
    pub stage2: Vec<InclinedStep>,
    pub complete: bool,
}

impl ProofTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    pub fn killed(&self) -> impl Iterator<Item = &str> {
        self.stage1
            .iter()
            .flat_map(|s| s.killed.iter().map(String::as_str))
            .chain(self.stage2.iter().map(|s| s.killed.as_str()))
    }
}

fn render_functional(layout: &UnknownLayout, row: &[Rational]) -> String {
    let mut out = String::new();
    for (column, coeff) in row.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let label = layout.unknown(column).to_string();
        let magnitude = coeff.abs();
        let body = if magnitude.is_one() { label } else { format!("{magnitude}*{label}") };
        match (out.is_empty(), coeff.is_negative()) {
            (true, false) => out.push_str(&body),
            (true, true) => out.push_str(&format!("-{body}")),
            (false, false) => out.push_str(&format!(" + {body}")),
            (false, true) => out.push_str(&format!(" - {body}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The single live unknown a functional depends on, if there is exactly one.
fn sole_unknown(row: &[Rational], alive: &BTreeSet<usize>) -> Option<usize> {
    let mut support = alive.iter().copied().filter(|&c| !row[c].is_zero());
    let first = support.next()?;
    support.next().is_none().then_some(first)
}

fn restrict(row: &[Rational], alive: &BTreeSet<usize>) -> Vec<Rational> {
    row.iter()
        .enumerate()
        .map(|(c, v)| if alive.contains(&c) { v.clone() } else { Rational::zero() })
        .collect()
}

/// Replays the elimination showing that a form in `Λ^k_e` with vanishing
/// pullbacks on all k-faces is zero, for `1 ≤ k ≤ n − 1`.
///
/// Stage 1 pulls the general form back to each coordinate face `τ_J`; every
/// coefficient of the pulled-back density is a single unknown, killing `b_J`
/// and `a_{J,t}` for `t ∈ J`. Stage 2 pulls the survivors back to each
/// inclined face `[e_m, e_{l_1}, …, e_{l_k}]`, `m ∉ L`, where the constant
/// term of the `dx^L` coefficient is exactly `a_{L,m}`.
pub fn proof_trace(n: usize, k: usize) -> Result<ProofTrace> {
    if k == 0 || k >= n {
        return Err(Error::BadDegree { n, k });
    }
    let layout = UnknownLayout::new(n, k)?;
    let mut alive: BTreeSet<usize> = (0..layout.len()).collect();

    let mut stage1 = Vec::new();
    for index in MultiIndex::all(n, k) {
        let mut vertices = vec![0];
        vertices.extend_from_slice(index.indices());
        let face = Face::new(n, vertices.clone())?;
        let rows = density_functionals(&layout, &face)?;
        let mut killed = Vec::new();
        for row in &rows {
            if let Some(column) = sole_unknown(row, &alive) {
                alive.remove(&column);
                killed.push(layout.unknown(column).to_string());
            }
        }
        stage1.push(CoordinateStep { face: vertices, killed });
    }

    let survivors = alive.clone();
    let mut stage2 = Vec::new();
    for index in MultiIndex::all(n, k) {
        for m in (1..=n).filter(|&m| !index.contains(m)) {
            let mut vertices = vec![m];
            vertices.extend_from_slice(index.indices());
            let face = Face::new(n, vertices.clone())?;
            let constant = restrict(&density_functionals(&layout, &face)?[0], &survivors);
            let target = layout.column(&Unknown::Slope(index.clone(), m)).expect("slope in layout");
            let constant_term = render_functional(&layout, &constant);
            if sole_unknown(&constant, &survivors) == Some(target) && alive.remove(&target) {
                stage2.push(InclinedStep {
                    l: index.indices().to_vec(),
                    m,
                    face: vertices,
                    constant_term,
                    killed: layout.unknown(target).to_string(),
                });
            }
        }
    }

    if !alive.is_empty() {
        return Err(Error::TraceIncomplete(alive.iter().map(|&c| layout.unknown(c).to_string()).collect()));
    }
    Ok(ProofTrace { n, k, stage1, stage2, complete: true })
}

/// `binom(n,k)(n+1) − k·binom(n+1,k+1)`, the expected `dim Λ^k_e`.
pub fn expected_dimension(n: usize, k: usize) -> usize {
    binomial(n, k) * (n + 1) - k * binomial(n + 1, k + 1)
}

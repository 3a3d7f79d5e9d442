//! Differential k-forms on R^n with constant or affine coefficients.
//!
//! A form is a sum `Σ_I f_I dx^I` over strictly increasing multi-indices
//! `I = (i_1 < … < i_k)` with `1 ≤ i_j ≤ n`. Coefficients are kept per
//! multi-index with zero terms dropped, so `==` compares forms exactly.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;
use crate::simplicial::{combinations, sort_with_sign, AffineFunction, AffineMap, Face, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(n: usize, indices: Vec<usize>) -> Result<MultiIndex> {
        if indices.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::InvalidMultiIndex(format!("{indices:?} has entries outside 1..={n}")));
        }
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidMultiIndex(format!("{indices:?} is not strictly increasing")));
        }
        Ok(MultiIndex(indices))
    }

    pub fn empty() -> MultiIndex {
        MultiIndex(Vec::new())
    }

    /// Sorts an arbitrary index list. Returns `Ok(None)` when an index repeats,
    /// since the corresponding wedge monomial vanishes.
    pub fn from_unsorted(n: usize, mut indices: Vec<usize>) -> Result<Option<(MultiIndex, Sign)>> {
        if indices.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::InvalidMultiIndex(format!("{indices:?} has entries outside 1..={n}")));
        }
        Ok(sort_with_sign(&mut indices).map(|sign| (MultiIndex(indices), sign)))
    }

    /// `(1, 2, …, n)`.
    pub fn full(n: usize) -> MultiIndex {
        MultiIndex((1..=n).collect())
    }

    /// Every multi-index of length `k` over `1..=n`, lexicographically.
    pub fn all(n: usize, k: usize) -> Vec<MultiIndex> {
        let pool: Vec<usize> = (1..=n).collect();
        combinations(&pool, k).into_iter().map(MultiIndex).collect()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn check_degree(n: usize, k: usize) -> Result<()> {
    if k > n {
        Err(Error::BadDegree { n, k })
    } else {
        Ok(())
    }
}

/// A k-form with constant coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantForm {
    n: usize,
    k: usize,
    coeffs: BTreeMap<MultiIndex, Rational>,
}

impl ConstantForm {
    pub fn zero(n: usize, k: usize) -> Result<ConstantForm> {
        check_degree(n, k)?;
        Ok(ConstantForm { n, k, coeffs: BTreeMap::new() })
    }

    /// The 0-form `1`.
    pub fn one(n: usize) -> ConstantForm {
        let mut w = ConstantForm { n, k: 0, coeffs: BTreeMap::new() };
        w.coeffs.insert(MultiIndex::empty(), Rational::one());
        w
    }

    /// `dx^i`.
    pub fn dx(n: usize, i: usize) -> Result<ConstantForm> {
        let mut w = ConstantForm::zero(n, 1)?;
        w.add_term(MultiIndex::new(n, vec![i])?, Rational::one())?;
        Ok(w)
    }

    /// A 1-form `Σ_i a_i dx^i` from its coefficient vector.
    pub fn one_form(coefficients: &[Rational]) -> ConstantForm {
        let n = coefficients.len();
        let mut w = ConstantForm { n, k: 1, coeffs: BTreeMap::new() };
        for (i, a) in coefficients.iter().enumerate() {
            w.add_term(MultiIndex(vec![i + 1]), a.clone()).expect("valid index");
        }
        w
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeff(&self, index: &MultiIndex) -> Rational {
        self.coeffs.get(index).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, index: MultiIndex, value: Rational) -> Result<()> {
        if index.len() != self.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: index.len() });
        }
        let entry = self.coeffs.entry(index.clone()).or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
        Ok(())
    }

    pub fn add(&self, other: &ConstantForm) -> Result<ConstantForm> {
        same_shape((self.n, self.k), (other.n, other.k))?;
        let mut out = self.clone();
        for (i, c) in &other.coeffs {
            out.add_term(i.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> ConstantForm {
        let mut out = ConstantForm { n: self.n, k: self.k, coeffs: BTreeMap::new() };
        if !s.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(i, c)| (i.clone(), c * s)).collect();
        }
        out
    }
}

fn same_shape(a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a.0 != b.0 {
        return Err(Error::DimensionMismatch(format!("forms live in n={} and n={}", a.0, b.0)));
    }
    if a.1 != b.1 {
        return Err(Error::DegreeMismatch { expected: a.1, found: b.1 });
    }
    Ok(())
}

/// Exterior product of constant forms.
pub fn wedge(a: &ConstantForm, b: &ConstantForm) -> Result<ConstantForm> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(format!("forms live in n={} and n={}", a.n, b.n)));
    }
    let k = a.k + b.k;
    if k > a.n {
        return Err(Error::DegreeOverflow(k, a.n));
    }
    let mut out = ConstantForm::zero(a.n, k)?;
    for (ia, ca) in &a.coeffs {
        for (ib, cb) in &b.coeffs {
            let joined: Vec<usize> = ia.0.iter().chain(&ib.0).copied().collect();
            if let Some((index, sign)) = MultiIndex::from_unsorted(a.n, joined)? {
                out.add_term(index, sign.apply(ca * cb))?;
            }
        }
    }
    Ok(out)
}

/// A k-form with affine coefficients, `Σ_I (b_I + Σ_j a_{I,j} x^j) dx^I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::AffineFormJson", into = "crate::io::AffineFormJson")]
pub struct AffineForm {
    n: usize,
    k: usize,
    coeffs: BTreeMap<MultiIndex, AffineFunction>,
}

impl AffineForm {
    pub fn zero(n: usize, k: usize) -> Result<AffineForm> {
        check_degree(n, k)?;
        Ok(AffineForm { n, k, coeffs: BTreeMap::new() })
    }

    pub fn from_constant(w: &ConstantForm) -> AffineForm {
        AffineForm {
            n: w.n,
            k: w.k,
            coeffs: w
                .coeffs
                .iter()
                .map(|(i, c)| (i.clone(), AffineFunction::constant(w.n, c.clone())))
                .collect(),
        }
    }

    /// A 0-form given by an affine function.
    pub fn function(f: AffineFunction) -> AffineForm {
        let mut out = AffineForm { n: f.n(), k: 0, coeffs: BTreeMap::new() };
        out.add_term(MultiIndex::empty(), &f).expect("degree 0");
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeff(&self, index: &MultiIndex) -> AffineFunction {
        self.coeffs.get(index).cloned().unwrap_or_else(|| AffineFunction::zero(self.n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &AffineFunction)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `f · dx^index`.
    pub fn add_term(&mut self, index: MultiIndex, f: &AffineFunction) -> Result<()> {
        self.add_scaled_term(index, f, &Rational::one())
    }

    fn add_scaled_term(&mut self, index: MultiIndex, f: &AffineFunction, s: &Rational) -> Result<()> {
        if index.len() != self.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: index.len() });
        }
        if f.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "coefficient in n={} for a form in n={}",
                f.n(),
                self.n
            )));
        }
        if index.indices().iter().any(|&i| i == 0 || i > self.n) {
            return Err(Error::InvalidMultiIndex(format!("{index} outside 1..={}", self.n)));
        }
        let entry = self.coeffs.entry(index.clone()).or_insert_with(|| AffineFunction::zero(self.n));
        entry.add_assign_scaled(f, s);
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
        Ok(())
    }

    pub fn add(&self, other: &AffineForm) -> Result<AffineForm> {
        self.add_scaled(other, &Rational::one())
    }

    /// `self + s · other`.
    pub fn add_scaled(&self, other: &AffineForm, s: &Rational) -> Result<AffineForm> {
        same_shape((self.n, self.k), (other.n, other.k))?;
        let mut out = self.clone();
        for (i, f) in &other.coeffs {
            out.add_scaled_term(i.clone(), f, s)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Rational) -> AffineForm {
        let mut out = AffineForm { n: self.n, k: self.k, coeffs: BTreeMap::new() };
        if !s.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(i, f)| (i.clone(), f.scale(s))).collect();
        }
        out
    }

    pub fn neg(&self) -> AffineForm {
        self.scale(&Rational::from(-1))
    }

    /// Coefficient of `dx^1 ∧ … ∧ dx^n` for a top-degree form.
    pub fn top_coefficient(&self) -> Result<AffineFunction> {
        if self.k != self.n {
            return Err(Error::DegreeMismatch { expected: self.n, found: self.k });
        }
        Ok(self.coeff(&MultiIndex::full(self.n)))
    }
}

/// `f · w` for an affine function `f` and a constant form `w`.
pub fn scale_by_affine(f: &AffineFunction, w: &ConstantForm) -> Result<AffineForm> {
    if f.n() != w.n {
        return Err(Error::DimensionMismatch(format!("function in n={}, form in n={}", f.n(), w.n)));
    }
    let mut out = AffineForm::zero(w.n, w.k)?;
    for (i, c) in &w.coeffs {
        out.add_scaled_term(i.clone(), f, c)?;
    }
    Ok(out)
}

/// Pulls `form` back along an affine map `t ↦ x(t)`; the result lives in the
/// map's parameter space.
pub fn pullback_by_map(form: &AffineForm, map: &AffineMap) -> Result<AffineForm> {
    if map.ambient_dim() != form.n {
        return Err(Error::DimensionMismatch(format!(
            "map targets n={}, form lives in n={}",
            map.ambient_dim(),
            form.n
        )));
    }
    let dim = map.param_dim();
    if dim < form.k {
        return Err(Error::DimensionMismatch(format!(
            "cannot pull a {}-form back to a {}-dimensional face",
            form.k, dim
        )));
    }
    let targets = MultiIndex::all(dim, form.k);
    let mut out = AffineForm::zero(dim, form.k)?;
    for (index, f) in &form.coeffs {
        let composed = f.compose(map);
        // dx^I ↦ Σ_S det(∂x^I/∂t^S) dt^S.
        for target in &targets {
            let minor = Matrix::from_rows(
                form.k,
                index
                    .indices()
                    .iter()
                    .map(|&i| target.indices().iter().map(|&s| map.directions[s - 1][i - 1].clone()).collect())
                    .collect(),
            );
            let det = minor.determinant();
            if !det.is_zero() {
                out.add_scaled_term(target.clone(), &composed, &det)?;
            }
        }
    }
    Ok(out)
}

/// Pullback to a face through its parametrization. The face's sign is ignored;
/// orientation is accounted for at integration time.
pub fn pullback(form: &AffineForm, face: &Face) -> Result<AffineForm> {
    if face.n() != form.n {
        return Err(Error::DimensionMismatch(format!(
            "face lives in n={}, form in n={}",
            face.n(),
            form.n
        )));
    }
    pullback_by_map(form, &face.parametrization())
}

pub fn is_constant(form: &AffineForm) -> bool {
    form.coeffs.values().all(AffineFunction::is_constant)
}

/// `ω_p(v_1, …, v_k)`.
pub fn evaluate(form: &AffineForm, point: &[Rational], vectors: &[Vec<Rational>]) -> Result<Rational> {
    if point.len() != form.n {
        return Err(Error::DimensionMismatch(format!("point has {} coordinates, expected {}", point.len(), form.n)));
    }
    if vectors.len() != form.k {
        return Err(Error::DimensionMismatch(format!("{} vectors for a {}-form", vectors.len(), form.k)));
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != form.n) {
        return Err(Error::DimensionMismatch(format!("vector of length {} in n={}", v.len(), form.n)));
    }
    Ok(form
        .coeffs
        .iter()
        .map(|(index, f)| {
            let minor = Matrix::from_rows(
                form.k,
                index.indices().iter().map(|&i| vectors.iter().map(|v| v[i - 1].clone()).collect()).collect(),
            );
            f.eval(point) * minor.determinant()
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::barycentric_functions;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn mi(n: usize, v: &[usize]) -> MultiIndex {
        MultiIndex::new(n, v.to_vec()).unwrap()
    }

    fn dx(n: usize, i: usize) -> ConstantForm {
        ConstantForm::dx(n, i).unwrap()
    }

    /// `x^1 dx^2 − x^2 dx^1` in n = 2.
    fn rotation_form() -> AffineForm {
        let a = scale_by_affine(&AffineFunction::coordinate(2, 1), &dx(2, 2)).unwrap();
        let b = scale_by_affine(&AffineFunction::coordinate(2, 2), &dx(2, 1)).unwrap();
        a.add_scaled(&b, &q(-1, 1)).unwrap()
    }

    #[test]
    fn multi_index_validation() {
        assert!(MultiIndex::new(3, vec![1, 3]).is_ok());
        assert!(MultiIndex::new(3, vec![3, 1]).is_err());
        assert!(MultiIndex::new(3, vec![0]).is_err());
        assert!(MultiIndex::new(3, vec![4]).is_err());
        assert_eq!(MultiIndex::from_unsorted(3, vec![3, 1]).unwrap(), Some((mi(3, &[1, 3]), Sign::Negative)));
        assert_eq!(MultiIndex::from_unsorted(3, vec![2, 2]).unwrap(), None);
        assert_eq!(MultiIndex::all(4, 2).len(), 6);
    }

    #[test]
    fn wedge_examples() {
        assert!(wedge(&dx(2, 1), &dx(2, 1)).unwrap().is_zero());

        let w = wedge(&dx(2, 2), &dx(2, 1)).unwrap();
        assert_eq!(w.coeff(&mi(2, &[1, 2])), q(-1, 1));

        // (dx1 + dx2) ∧ dx3 = dx1∧dx3 + dx2∧dx3 by bilinearity.
        let s = dx(3, 1).add(&dx(3, 2)).unwrap();
        let w = wedge(&s, &dx(3, 3)).unwrap();
        let mut expected = ConstantForm::zero(3, 2).unwrap();
        expected.add_term(mi(3, &[1, 3]), q(1, 1)).unwrap();
        expected.add_term(mi(3, &[2, 3]), q(1, 1)).unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn wedge_overflow() {
        let a = wedge(&dx(2, 1), &dx(2, 2)).unwrap();
        assert_eq!(wedge(&a, &dx(2, 1)), Err(Error::DegreeOverflow(3, 2)));
    }

    #[test]
    fn scale_by_affine_examples() {
        let one = AffineFunction::constant(2, q(1, 1));
        assert_eq!(scale_by_affine(&one, &dx(2, 1)).unwrap(), AffineForm::from_constant(&dx(2, 1)));

        let f = scale_by_affine(&AffineFunction::coordinate(2, 1), &dx(2, 2)).unwrap();
        assert_eq!(f.coeff(&mi(2, &[2])), AffineFunction::coordinate(2, 1));
        assert_eq!(f.terms().count(), 1);

        let nu0 = &barycentric_functions(2)[0];
        let f = scale_by_affine(nu0, &dx(2, 1)).unwrap();
        assert_eq!(f.coeff(&mi(2, &[1])), AffineFunction::new(q(1, 1), vec![q(-1, 1), q(-1, 1)]));
    }

    #[test]
    fn pullback_rotation_to_hypotenuse() {
        // x1 = 1 − t, x2 = t: (1−t)·1 − t·(−1) = 1.
        let face = Face::new(2, vec![1, 2]).unwrap();
        let p = pullback(&rotation_form(), &face).unwrap();
        assert_eq!(p, AffineForm::from_constant(&ConstantForm::dx(1, 1).unwrap()));
    }

    #[test]
    fn pullback_to_coordinate_face_kills_outside_variables() {
        // ω = (1 + x1 + 2 x2 + 3 x3) dx1∧dx3 + x2 dx1∧dx2 on face [0, 1, 3].
        let n = 3;
        let mut w = AffineForm::zero(n, 2).unwrap();
        w.add_term(mi(n, &[1, 3]), &AffineFunction::new(q(1, 1), vec![q(1, 1), q(2, 1), q(3, 1)])).unwrap();
        w.add_term(mi(n, &[1, 2]), &AffineFunction::coordinate(n, 2)).unwrap();
        let p = pullback(&w, &Face::new(n, vec![0, 1, 3]).unwrap()).unwrap();
        let mut expected = AffineForm::zero(2, 2).unwrap();
        expected.add_term(mi(2, &[1, 2]), &AffineFunction::new(q(1, 1), vec![q(1, 1), q(3, 1)])).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn pullback_of_zero_and_bad_dimensions() {
        let zero = AffineForm::zero(3, 1).unwrap();
        for face in crate::simplicial::enumerate_faces(3, 1).unwrap() {
            assert!(pullback(&zero, &face).unwrap().is_zero());
        }
        let two_form = AffineForm::from_constant(&wedge(&dx(3, 1), &dx(3, 2)).unwrap());
        assert!(matches!(
            pullback(&two_form, &Face::new(3, vec![0, 1]).unwrap()),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            pullback(&two_form, &Face::new(2, vec![0, 1, 2]).unwrap()),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn zero_form_pullback_to_vertex_is_evaluation() {
        let f = AffineFunction::new(q(2, 1), vec![q(3, 1), q(-1, 2)]);
        let p = pullback(&AffineForm::function(f), &Face::new(2, vec![2]).unwrap()).unwrap();
        assert_eq!(p.coeff(&MultiIndex::empty()).constant, q(3, 2));
    }

    #[test]
    fn is_constant_examples() {
        let w = AffineForm::from_constant(&wedge(&dx(2, 1), &dx(2, 2)).unwrap().scale(&q(5, 1)));
        assert!(is_constant(&w));

        let w = scale_by_affine(&AffineFunction::coordinate(2, 1), &dx(2, 2)).unwrap();
        assert!(!is_constant(&w));

        let nu = barycentric_functions(2);
        let w = scale_by_affine(&nu[0], &dx(2, 1))
            .unwrap()
            .add(&scale_by_affine(&nu[1], &dx(2, 1)).unwrap())
            .unwrap()
            .add(&scale_by_affine(&nu[2], &dx(2, 1)).unwrap())
            .unwrap();
        assert!(is_constant(&w));
        assert_eq!(w, AffineForm::from_constant(&dx(2, 1)));
    }

    #[test]
    fn evaluate_examples() {
        let e1 = vec![q(1, 1), q(0, 1)];
        let e2 = vec![q(0, 1), q(1, 1)];
        let p = vec![q(1, 3), q(2, 7)];
        assert_eq!(evaluate(&AffineForm::from_constant(&dx(2, 1)), &p, std::slice::from_ref(&e1)).unwrap(), q(1, 1));

        let area = AffineForm::from_constant(&wedge(&dx(2, 1), &dx(2, 2)).unwrap());
        assert_eq!(evaluate(&area, &p, &[e2.clone(), e1.clone()]).unwrap(), q(-1, 1));

        let w = scale_by_affine(&AffineFunction::coordinate(2, 1), &dx(2, 2)).unwrap();
        assert_eq!(evaluate(&w, &[q(1, 2), q(0, 1)], std::slice::from_ref(&e2)).unwrap(), q(1, 2));

        assert!(evaluate(&w, &p, &[]).is_err());
        assert!(evaluate(&w, &[q(1, 1)], &[e2]).is_err());
    }
}

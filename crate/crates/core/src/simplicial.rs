//! The standard n-simplex `[0, e_1, …, e_n]`, its oriented faces, barycentric
//! coordinates and simplicial cochains.
//!
//! Vertex label `0` is the origin and label `i ≥ 1` is the unit point `e_i`.
//! Faces are oriented by vertex order: a face and any even permutation of its
//! vertices are the same oriented simplex, an odd permutation reverses it.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn to_rational(self) -> Rational {
        Rational::from(self.to_i32())
    }

    /// Applies the sign to a value.
    pub fn apply(self, value: Rational) -> Rational {
        match self {
            Sign::Positive => value,
            Sign::Negative => -value,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

/// Sorts `items` in place and returns the sign of the sorting permutation.
/// Returns `None` if two items are equal.
pub(crate) fn sort_with_sign<T: Ord>(items: &mut [T]) -> Option<Sign> {
    let mut odd = false;
    // Insertion sort: every adjacent swap is one transposition.
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1] > items[j] {
            items.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if items.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(Sign::from_parity(odd))
    }
}

/// All strictly increasing `size`-subsets of `pool` (assumed increasing), in lexicographic order.
pub(crate) fn combinations(pool: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn go(pool: &[usize], size: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        let needed = size - current.len();
        for i in start..pool.len() {
            if pool.len() - i < needed {
                break;
            }
            current.push(pool[i]);
            go(pool, size, i + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if size <= pool.len() {
        go(pool, size, 0, &mut Vec::with_capacity(size), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// An oriented face of the standard n-simplex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    n: usize,
    vertices: Vec<usize>,
    sign: Sign,
}

impl Face {
    pub fn new(n: usize, vertices: Vec<usize>) -> Result<Face> {
        Face::with_sign(n, vertices, Sign::Positive)
    }

    pub fn with_sign(n: usize, vertices: Vec<usize>, sign: Sign) -> Result<Face> {
        if vertices.is_empty() {
            return Err(Error::InvalidFace("a face needs at least one vertex".into()));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v > n) {
            return Err(Error::InvalidFace(format!("vertex {v} is outside 0..={n}")));
        }
        let mut sorted = vertices.clone();
        if sort_with_sign(&mut sorted).is_none() {
            return Err(Error::InvalidFace(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Face { n, vertices, sign })
    }

    /// The whole simplex `[0, 1, …, n]`.
    pub fn top(n: usize) -> Face {
        Face { n, vertices: (0..=n).collect(), sign: Sign::Positive }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_canonical(&self) -> bool {
        self.sign == Sign::Positive && self.vertices.windows(2).all(|w| w[0] < w[1])
    }

    /// The same face with the opposite orientation.
    pub fn reversed(&self) -> Face {
        Face { n: self.n, vertices: self.vertices.clone(), sign: self.sign * Sign::Negative }
    }

    /// Sorts the vertices increasingly and folds the permutation sign into `sign`.
    pub fn canonicalize(&self) -> Face {
        let mut vertices = self.vertices.clone();
        let perm = sort_with_sign(&mut vertices).expect("face vertices are distinct");
        Face { n: self.n, vertices, sign: self.sign * perm }
    }

    /// Affine map from the standard k-simplex onto this face, sending the
    /// reference vertices `0, e_1, …, e_k` to the face's vertices in tuple order.
    /// The sign is not part of the map.
    pub fn parametrization(&self) -> AffineMap {
        let origin = vertex_point(self.n, self.vertices[0]);
        let directions = self.vertices[1..]
            .iter()
            .map(|&v| {
                vertex_point(self.n, v)
                    .into_iter()
                    .zip(&origin)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        AffineMap { origin, directions }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Negative {
            f.write_str("-")?;
        }
        let labels: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", labels.join(","))
    }
}

/// Coordinates of a vertex label in R^n.
pub fn vertex_point(n: usize, label: usize) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); n];
    if label > 0 {
        p[label - 1] = Rational::one();
    }
    p
}

/// Canonical k-faces of the standard n-simplex in lexicographic order.
pub fn enumerate_faces(n: usize, k: usize) -> Result<Vec<Face>> {
    if k > n {
        return Err(Error::BadDegree { n, k });
    }
    let labels: Vec<usize> = (0..=n).collect();
    Ok(combinations(&labels, k + 1)
        .into_iter()
        .map(|vertices| Face { n, vertices, sign: Sign::Positive })
        .collect())
}

/// `b + Σ_i a_i x^i` on R^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineFunction {
    pub constant: Rational,
    pub gradient: Vec<Rational>,
}

impl AffineFunction {
    pub fn new(constant: Rational, gradient: Vec<Rational>) -> Self {
        AffineFunction { constant, gradient }
    }

    pub fn zero(n: usize) -> Self {
        AffineFunction::constant(n, Rational::zero())
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        AffineFunction { constant: value, gradient: vec![Rational::zero(); n] }
    }

    /// The coordinate function `x^i`, `1 ≤ i ≤ n`.
    pub fn coordinate(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "coordinate index {i} outside 1..={n}");
        let mut f = AffineFunction::zero(n);
        f.gradient[i - 1] = Rational::one();
        f
    }

    pub fn n(&self) -> usize {
        self.gradient.len()
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.is_constant()
    }

    pub fn is_constant(&self) -> bool {
        self.gradient.iter().all(Rational::is_zero)
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.n(), "point dimension");
        &self.constant + self.gradient.iter().zip(point).map(|(a, x)| a * x).sum::<Rational>()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        AffineFunction {
            constant: &self.constant * s,
            gradient: self.gradient.iter().map(|a| a * s).collect(),
        }
    }

    pub fn add(&self, other: &AffineFunction) -> Self {
        assert_eq!(self.n(), other.n(), "affine function dimension");
        AffineFunction {
            constant: &self.constant + &other.constant,
            gradient: self.gradient.iter().zip(&other.gradient).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &AffineFunction, s: &Rational) {
        assert_eq!(self.n(), other.n(), "affine function dimension");
        self.constant += &other.constant * s;
        for (a, b) in self.gradient.iter_mut().zip(&other.gradient) {
            *a += b * s;
        }
    }

    /// `self ∘ map`, an affine function of the map's parameters.
    pub fn compose(&self, map: &AffineMap) -> AffineFunction {
        assert_eq!(map.ambient_dim(), self.n(), "map target dimension");
        AffineFunction {
            constant: self.eval(&map.origin),
            gradient: map
                .directions
                .iter()
                .map(|d| self.gradient.iter().zip(d).map(|(a, x)| a * x).sum())
                .collect(),
        }
    }
}

/// `t ↦ origin + Σ_s t^s · directions[s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub origin: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

impl AffineMap {
    pub fn ambient_dim(&self) -> usize {
        self.origin.len()
    }

    pub fn param_dim(&self) -> usize {
        self.directions.len()
    }

    pub fn apply(&self, t: &[Rational]) -> Vec<Rational> {
        assert_eq!(t.len(), self.param_dim(), "parameter dimension");
        let mut x = self.origin.clone();
        for (ts, d) in t.iter().zip(&self.directions) {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += ts * di;
            }
        }
        x
    }
}

/// `ν_0 = 1 − Σ x^i`, `ν_i = x^i`.
pub fn barycentric_functions(n: usize) -> Vec<AffineFunction> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(AffineFunction::new(Rational::one(), vec![Rational::from(-1); n]));
    out.extend((1..=n).map(|i| AffineFunction::coordinate(n, i)));
    out
}

/// A rational k-cochain, stored once per unoriented face under its increasing
/// vertex tuple. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "crate::io::CochainJson", into = "crate::io::CochainJson")]
pub struct Cochain {
    n: usize,
    k: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl Cochain {
    pub fn zero(n: usize, k: usize) -> Result<Cochain> {
        if k > n {
            return Err(Error::BadDegree { n, k });
        }
        Ok(Cochain { n, k, terms: BTreeMap::new() })
    }

    /// The dual `τ*` of a face, with the face's orientation folded in.
    pub fn basis(face: &Face) -> Cochain {
        let mut c = Cochain { n: face.n(), k: face.degree(), terms: BTreeMap::new() };
        c.add_term(face, Rational::one()).expect("degree matches");
        c
    }

    /// Cochain from one value per canonical face in [`enumerate_faces`] order.
    pub fn from_values(n: usize, k: usize, values: &[Rational]) -> Result<Cochain> {
        let faces = enumerate_faces(n, k)?;
        if values.len() != faces.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} faces",
                values.len(),
                faces.len()
            )));
        }
        let mut c = Cochain::zero(n, k)?;
        for (face, v) in faces.iter().zip(values) {
            c.add_term(face, v.clone())?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Nonzero terms keyed by increasing vertex tuple.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.terms.iter().map(|(v, c)| (v.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · face*`; a negatively oriented face contributes with flipped sign.
    pub fn add_term(&mut self, face: &Face, coeff: Rational) -> Result<()> {
        self.check_face(face)?;
        let canon = face.canonicalize();
        let value = canon.sign().apply(coeff);
        let entry = self.terms.entry(canon.vertices.clone()).or_insert_with(Rational::zero);
        *entry += value;
        if entry.is_zero() {
            self.terms.remove(&canon.vertices);
        }
        Ok(())
    }

    fn check_face(&self, face: &Face) -> Result<()> {
        if face.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "face lives in n={}, cochain in n={}",
                face.n(),
                self.n
            )));
        }
        if face.degree() != self.k {
            return Err(Error::DegreeMismatch { expected: self.k, found: face.degree() });
        }
        Ok(())
    }

    /// The pairing `⟨c, τ⟩`.
    pub fn eval(&self, face: &Face) -> Result<Rational> {
        self.check_face(face)?;
        let canon = face.canonicalize();
        let stored = self.terms.get(&canon.vertices).cloned().unwrap_or_else(Rational::zero);
        Ok(canon.sign().apply(stored))
    }

    /// Values on every canonical face, in [`enumerate_faces`] order.
    pub fn values(&self) -> Vec<Rational> {
        enumerate_faces(self.n, self.k)
            .expect("valid degree")
            .iter()
            .map(|f| self.terms.get(f.vertices()).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    pub fn scale(&self, s: &Rational) -> Cochain {
        if s.is_zero() {
            return Cochain { n: self.n, k: self.k, terms: BTreeMap::new() };
        }
        Cochain {
            n: self.n,
            k: self.k,
            terms: self.terms.iter().map(|(f, c)| (f.clone(), c * s)).collect(),
        }
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if (self.n, self.k) != (other.n, other.k) {
            return Err(Error::DimensionMismatch(format!(
                "cannot add cochains of (n, k) = ({}, {}) and ({}, {})",
                self.n, self.k, other.n, other.k
            )));
        }
        let mut out = self.clone();
        for (vertices, c) in &other.terms {
            let face = Face { n: self.n, vertices: vertices.clone(), sign: Sign::Positive };
            out.add_term(&face, c.clone())?;
        }
        Ok(out)
    }
}

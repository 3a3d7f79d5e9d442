//! JSON wire formats for cochains and affine forms.
//!
//! ```json
//! {"n": 2, "k": 1, "terms": [{"face": [0, 1], "coeff": "3/2"}]}
//! {"n": 2, "k": 1, "terms": [{"dx": [1], "const": "1", "grad": ["0", "-1"]}]}
//! ```
//!
//! Faces and multi-indices may be given in any order; they are canonicalized on
//! read with the permutation sign folded into the coefficient, and duplicates
//! are summed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{AffineForm, MultiIndex};
use crate::rational::Rational;
use crate::simplicial::{AffineFunction, Cochain, Face};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<CochainTermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainTermJson {
    pub face: Vec<usize>,
    pub coeff: Rational,
}

impl TryFrom<CochainJson> for Cochain {
    type Error = Error;

    fn try_from(raw: CochainJson) -> Result<Cochain> {
        let mut c = Cochain::zero(raw.n, raw.k)?;
        for term in raw.terms {
            let face = Face::new(raw.n, term.face)?;
            c.add_term(&face, term.coeff)?;
        }
        Ok(c)
    }
}

impl From<Cochain> for CochainJson {
    fn from(c: Cochain) -> CochainJson {
        CochainJson {
            n: c.n(),
            k: c.k(),
            terms: c
                .terms()
                .map(|(face, coeff)| CochainTermJson { face: face.to_vec(), coeff: coeff.clone() })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineFormJson {
    pub n: usize,
    pub k: usize,
    pub terms: Vec<AffineTermJson>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineTermJson {
    pub dx: Vec<usize>,
    #[serde(rename = "const")]
    pub constant: Rational,
    pub grad: Vec<Rational>,
}

impl TryFrom<AffineFormJson> for AffineForm {
    type Error = Error;

    fn try_from(raw: AffineFormJson) -> Result<AffineForm> {
        let mut form = AffineForm::zero(raw.n, raw.k)?;
        for term in raw.terms {
            if term.grad.len() != raw.n {
                return Err(Error::DimensionMismatch(format!(
                    "gradient of length {} in n={}",
                    term.grad.len(),
                    raw.n
                )));
            }
            if term.dx.len() != raw.k {
                return Err(Error::DegreeMismatch { expected: raw.k, found: term.dx.len() });
            }
            let f = AffineFunction::new(term.constant, term.grad);
            // A repeated index makes the monomial vanish.
            if let Some((index, sign)) = MultiIndex::from_unsorted(raw.n, term.dx)? {
                form.add_term(index, &f.scale(&sign.to_rational()))?;
            }
        }
        Ok(form)
    }
}

impl From<AffineForm> for AffineFormJson {
    fn from(form: AffineForm) -> AffineFormJson {
        AffineFormJson {
            n: form.n(),
            k: form.degree(),
            terms: form
                .terms()
                .map(|(index, f)| AffineTermJson {
                    dx: index.indices().to_vec(),
                    constant: f.constant.clone(),
                    grad: f.gradient.clone(),
                })
                .collect(),
        }
    }
}

pub fn cochain_from_json(text: &str) -> Result<Cochain> {
    Ok(serde_json::from_str(text)?)
}

pub fn cochain_to_json(c: &Cochain) -> String {
    serde_json::to_string(c).expect("cochain serializes")
}

pub fn form_from_json(text: &str) -> Result<AffineForm> {
    Ok(serde_json::from_str(text)?)
}

pub fn form_to_json(form: &AffineForm) -> String {
    serde_json::to_string(form).expect("form serializes")
}

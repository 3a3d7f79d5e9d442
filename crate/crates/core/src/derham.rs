//! The de Rham map: exact integration of affine-coefficient forms over oriented faces.

use crate::error::{Error, Result};
use crate::forms::{pullback, AffineForm, MultiIndex};
use crate::rational::Rational;
use crate::simplicial::{enumerate_faces, Cochain, Face};

/// `∫_τ ω` for a k-form over an oriented k-face.
///
/// After pulling back to `(c + Σ_s a_s t^s) dt^1 ∧ … ∧ dt^k` the standard
/// simplex moments give `c / k! + (Σ_s a_s) / (k+1)!`.
pub fn integrate_over_face(form: &AffineForm, face: &Face) -> Result<Rational> {
    if face.degree() != form.degree() {
        return Err(Error::DegreeMismatch { expected: form.degree(), found: face.degree() });
    }
    let k = form.degree();
    let pulled = pullback(form, face)?;
    let density = pulled.coeff(&MultiIndex::full(k));
    let gradient_sum: Rational = density.gradient.iter().sum();
    let value = &density.constant / Rational::factorial(k) + gradient_sum / Rational::factorial(k + 1);
    Ok(face.sign().apply(value))
}

/// `R ω`: the cochain of integrals over every canonical face.
pub fn derham(form: &AffineForm) -> Result<Cochain> {
    let n = form.n();
    let k = form.degree();
    let faces = enumerate_faces(n, k)?;
    let values = faces.iter().map(|f| integrate_over_face(form, f)).collect::<Result<Vec<_>>>()?;
    Cochain::from_values(n, k, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{scale_by_affine, ConstantForm};
    use crate::simplicial::AffineFunction;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn volume_form(n: usize) -> AffineForm {
        let mut w = AffineForm::zero(n, n).unwrap();
        w.add_term(MultiIndex::full(n), &AffineFunction::constant(n, Rational::factorial(n))).unwrap();
        w
    }

    #[test]
    fn factorial_volume_integrates_to_one() {
        for n in 1..=5 {
            assert_eq!(integrate_over_face(&volume_form(n), &Face::top(n)).unwrap(), q(1, 1));
            assert_eq!(derham(&volume_form(n)).unwrap(), Cochain::basis(&Face::top(n)));
        }
    }

    #[test]
    fn zero_form_at_vertex_is_evaluation() {
        let one = AffineForm::function(AffineFunction::constant(2, q(1, 1)));
        assert_eq!(integrate_over_face(&one, &Face::new(2, vec![2]).unwrap()).unwrap(), q(1, 1));
        let f = AffineForm::function(AffineFunction::new(q(1, 2), vec![q(3, 1), q(5, 1)]));
        assert_eq!(integrate_over_face(&f, &Face::new(2, vec![1]).unwrap()).unwrap(), q(7, 2));
    }

    #[test]
    fn rotation_form_on_edges() {
        let dx1 = ConstantForm::dx(2, 1).unwrap();
        let dx2 = ConstantForm::dx(2, 2).unwrap();
        let w = scale_by_affine(&AffineFunction::coordinate(2, 1), &dx2)
            .unwrap()
            .add_scaled(&scale_by_affine(&AffineFunction::coordinate(2, 2), &dx1).unwrap(), &q(-1, 1))
            .unwrap();
        let c = derham(&w).unwrap();
        assert_eq!(c, Cochain::basis(&Face::new(2, vec![1, 2]).unwrap()));
        assert_eq!(integrate_over_face(&w, &Face::new(2, vec![2, 1]).unwrap()).unwrap(), q(-1, 1));
    }

    #[test]
    fn linear_density_uses_second_moment() {
        // ∫_0^1 x dx = 1/2 on the unit interval.
        let w = scale_by_affine(&AffineFunction::coordinate(1, 1), &ConstantForm::dx(1, 1).unwrap()).unwrap();
        assert_eq!(integrate_over_face(&w, &Face::top(1)).unwrap(), q(1, 2));
        // ∫_σ x1 dx1∧dx2 = 1/6 on the triangle.
        let mut w = AffineForm::zero(2, 2).unwrap();
        w.add_term(MultiIndex::full(2), &AffineFunction::coordinate(2, 1)).unwrap();
        assert_eq!(integrate_over_face(&w, &Face::top(2)).unwrap(), q(1, 6));
    }

    #[test]
    fn degree_mismatch() {
        assert_eq!(
            integrate_over_face(&volume_form(2), &Face::new(2, vec![0, 1]).unwrap()),
            Err(Error::DegreeMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn zero_form_gives_zero_cochain() {
        assert!(derham(&AffineForm::zero(3, 2).unwrap()).unwrap().is_zero());
    }
}

//! The Whitney map from k-cochains to affine-coefficient k-forms.
//!
//! For a face `[p_{i_0}, …, p_{i_k}]` the basis form is
//! `k! Σ_j (−1)^j ν_{i_j} dν_{i_0} ∧ … ∧ (dν_{i_j} omitted) ∧ … ∧ dν_{i_k}`.

use crate::error::Result;
use crate::forms::{scale_by_affine, wedge, AffineForm, ConstantForm};
use crate::rational::Rational;
use crate::simplicial::{barycentric_functions, Cochain, Face};

/// `dν_0 = −(dx^1 + … + dx^n)`, `dν_i = dx^i`.
pub fn barycentric_differentials(n: usize) -> Vec<ConstantForm> {
    barycentric_functions(n).iter().map(|nu| ConstantForm::one_form(&nu.gradient)).collect()
}

/// Whitney form of a single oriented face; the face's sign is multiplied in.
pub fn whitney_basis_form(face: &Face) -> AffineForm {
    let n = face.n();
    let k = face.degree();
    let nu = barycentric_functions(n);
    let dnu = barycentric_differentials(n);
    let vertices = face.vertices();

    let mut out = AffineForm::zero(n, k).expect("face degree ≤ n");
    for (j, &vj) in vertices.iter().enumerate() {
        let mut product = ConstantForm::one(n);
        for (s, &vs) in vertices.iter().enumerate() {
            if s != j {
                product = wedge(&product, &dnu[vs]).expect("at most k ≤ n factors");
            }
        }
        let term = scale_by_affine(&nu[vj], &product).expect("same ambient dimension");
        let sign = if j % 2 == 0 { Rational::one() } else { Rational::from(-1) };
        out = out.add_scaled(&term, &sign).expect("same shape");
    }
    let normalization = face.sign().apply(Rational::factorial(k));
    out.scale(&normalization)
}

/// `W c = Σ_τ ⟨c, τ⟩ W τ*` over canonical faces.
pub fn whitney(c: &Cochain) -> Result<AffineForm> {
    let mut out = AffineForm::zero(c.n(), c.k())?;
    for (vertices, coeff) in c.terms() {
        let face = Face::new(c.n(), vertices.to_vec())?;
        out = out.add_scaled(&whitney_basis_form(&face), coeff)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{MultiIndex, is_constant, pullback};
    use crate::simplicial::{enumerate_faces, AffineFunction};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn hypotenuse_edge_in_triangle() {
        // ν1 dν2 − ν2 dν1 = x1 dx2 − x2 dx1.
        let w = whitney_basis_form(&Face::new(2, vec![1, 2]).unwrap());
        let mut expected = AffineForm::zero(2, 1).unwrap();
        expected.add_term(MultiIndex::new(2, vec![2]).unwrap(), &AffineFunction::coordinate(2, 1)).unwrap();
        expected
            .add_term(MultiIndex::new(2, vec![1]).unwrap(), &AffineFunction::coordinate(2, 2).scale(&q(-1, 1)))
            .unwrap();
        assert_eq!(w, expected);
    }

    #[test]
    fn origin_edge_in_triangle() {
        // ν0 dν1 − ν1 dν0 = (1 − x2) dx1 + x1 dx2.
        let w = whitney_basis_form(&Face::new(2, vec![0, 1]).unwrap());
        assert_eq!(w.coeff(&MultiIndex::new(2, vec![1]).unwrap()), AffineFunction::new(q(1, 1), vec![q(0, 1), q(-1, 1)]));
        assert_eq!(w.coeff(&MultiIndex::new(2, vec![2]).unwrap()), AffineFunction::coordinate(2, 1));
    }

    #[test]
    fn top_degree_is_factorial_volume_form() {
        for n in 1..=5 {
            let w = whitney_basis_form(&Face::top(n));
            let mut expected = AffineForm::zero(n, n).unwrap();
            expected
                .add_term(MultiIndex::full(n), &AffineFunction::constant(n, Rational::factorial(n)))
                .unwrap();
            assert_eq!(w, expected, "n={n}");
        }
    }

    #[test]
    fn degree_zero_is_barycentric() {
        let nu = barycentric_functions(3);
        for (i, nu_i) in nu.iter().enumerate() {
            let w = whitney_basis_form(&Face::new(3, vec![i]).unwrap());
            assert_eq!(w, AffineForm::function(nu_i.clone()));
        }
    }

    #[test]
    fn alternating_under_transposition() {
        let a = whitney_basis_form(&Face::new(3, vec![0, 2, 3]).unwrap());
        let b = whitney_basis_form(&Face::new(3, vec![2, 0, 3]).unwrap());
        assert_eq!(a, b.neg());
        let c = whitney_basis_form(&Face::new(3, vec![0, 2, 3]).unwrap().reversed());
        assert_eq!(a, c.neg());
    }

    #[test]
    fn zero_cochain_maps_to_zero() {
        assert!(whitney(&Cochain::zero(3, 2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn basis_forms_have_constant_pullbacks() {
        for n in 1..=4 {
            for k in 0..=n {
                let faces = enumerate_faces(n, k).unwrap();
                for face in &faces {
                    let w = whitney_basis_form(face);
                    for other in &faces {
                        assert!(is_constant(&pullback(&w, other).unwrap()), "n={n} k={k} {face} on {other}");
                    }
                }
            }
        }
    }
}

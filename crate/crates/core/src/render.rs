//! Human-readable renderings of forms and cochains.
//!
//! Forms are expanded into monomials `c · x^j · dx^I` and ordered by the
//! `x`-variable (constant terms first), then by multi-index, so
//! `x^1 dx^2 − x^2 dx^1` renders as `x1 dx2 - x2 dx1`.

use crate::forms::{AffineForm, MultiIndex};
use crate::rational::Rational;
use crate::simplicial::Cochain;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

/// `(variable, multi-index, coefficient)`; variable 0 is the constant monomial.
fn monomials(form: &AffineForm) -> Vec<(usize, &MultiIndex, Rational)> {
    let mut out = Vec::new();
    for (index, f) in form.terms() {
        if !f.constant.is_zero() {
            out.push((0, index, f.constant.clone()));
        }
        for (j, a) in f.gradient.iter().enumerate() {
            if !a.is_zero() {
                out.push((j + 1, index, a.clone()));
            }
        }
    }
    out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
    out
}

fn number(value: &Rational, style: Style) -> String {
    match style {
        Style::Latex if !value.is_integer() => format!("\\frac{{{}}}{{{}}}", value.numer(), value.denom()),
        _ => value.to_string(),
    }
}

fn variable(j: usize, style: Style) -> String {
    match style {
        Style::Text => format!("x{j}"),
        Style::Latex => format!("x^{{{j}}}"),
    }
}

fn differential(index: &MultiIndex, style: Style) -> String {
    let parts: Vec<String> = index
        .indices()
        .iter()
        .map(|i| match style {
            Style::Text => format!("dx{i}"),
            Style::Latex => format!("dx^{{{i}}}"),
        })
        .collect();
    match style {
        Style::Text => parts.join("^"),
        Style::Latex => parts.join(" \\wedge "),
    }
}

/// Joins signed terms as `a - b + c`; each body is rendered for a positive magnitude.
fn join_signed(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (negative, body) in terms {
        match (out.is_empty(), negative) {
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

pub fn render_form(form: &AffineForm, style: Style) -> String {
    let sep = match style {
        Style::Text => " ",
        Style::Latex => "\\,",
    };
    join_signed(monomials(form).into_iter().map(|(j, index, coeff)| {
        let magnitude = coeff.abs();
        let mut factors = Vec::new();
        if j > 0 {
            factors.push(variable(j, style));
        }
        if !index.is_empty() {
            factors.push(differential(index, style));
        }
        if !magnitude.is_one() || factors.is_empty() {
            factors.insert(0, number(&magnitude, style));
        }
        (coeff.is_negative(), factors.join(sep))
    }))
}

pub fn render_cochain(c: &Cochain, style: Style) -> String {
    join_signed(c.terms().map(|(face, coeff)| {
        let labels: Vec<String> = face.iter().map(|v| v.to_string()).collect();
        let dual = match style {
            Style::Text => format!("[{}]*", labels.join(",")),
            Style::Latex => format!("[{}]^*", labels.join(",")),
        };
        let magnitude = coeff.abs();
        let body = if magnitude.is_one() {
            dual
        } else {
            let sep = if style == Style::Latex { "\\," } else { " " };
            format!("{}{sep}{dual}", number(&magnitude, style))
        };
        (coeff.is_negative(), body)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{AffineFunction, Face};
    use crate::whitney::{whitney, whitney_basis_form};

    #[test]
    fn text_examples() {
        let w = whitney_basis_form(&Face::new(2, vec![1, 2]).unwrap());
        assert_eq!(render_form(&w, Style::Text), "x1 dx2 - x2 dx1");
        assert_eq!(render_form(&whitney_basis_form(&Face::top(3)), Style::Text), "6 dx1^dx2^dx3");

        let ones = Cochain::from_values(2, 0, &[Rational::one(), Rational::one(), Rational::one()]).unwrap();
        assert_eq!(render_form(&whitney(&ones).unwrap(), Style::Text), "1");

        assert_eq!(render_form(&AffineForm::zero(2, 1).unwrap(), Style::Text), "0");

        let f = AffineForm::function(AffineFunction::new(Rational::new(-1, 2), vec![Rational::new(3, 2), Rational::from(-1)]));
        assert_eq!(render_form(&f, Style::Text), "-1/2 + 3/2 x1 - x2");
    }

    #[test]
    fn latex_examples() {
        let w = whitney_basis_form(&Face::new(2, vec![1, 2]).unwrap());
        assert_eq!(render_form(&w, Style::Latex), "x^{1}\\,dx^{2} - x^{2}\\,dx^{1}");
        assert_eq!(render_form(&whitney_basis_form(&Face::top(2)), Style::Latex), "2\\,dx^{1} \\wedge dx^{2}");
        let f = AffineForm::function(AffineFunction::constant(1, Rational::new(1, 3)));
        assert_eq!(render_form(&f, Style::Latex), "\\frac{1}{3}");
    }

    #[test]
    fn cochain_text() {
        let mut c = Cochain::zero(2, 1).unwrap();
        c.add_term(&Face::new(2, vec![1, 2]).unwrap(), Rational::new(3, 2)).unwrap();
        c.add_term(&Face::new(2, vec![2, 0]).unwrap(), Rational::from(5)).unwrap();
        assert_eq!(render_cochain(&c, Style::Text), "-5 [0,2]* + 3/2 [1,2]*");
    }
}

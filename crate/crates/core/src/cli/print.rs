use crate::ordinal::{Ordinal, Term};

/// Canonical text: terms joined by `" + "`, each written as `w^E*k` with the
/// `^E` dropped for `E = 1` and the `*k` dropped for `k = 1`; a finite term is
/// a bare number. Exponents other than naturals and `w` are parenthesized and
/// printed without spaces.
pub fn print_canonical(x: &Ordinal) -> String {
    render(x, " + ")
}

fn render(x: &Ordinal, joiner: &str) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.terms()
        .iter()
        .map(render_term)
        .collect::<Vec<_>>()
        .join(joiner)
}

fn render_term(term: &Term) -> String {
    let exponent = term.exponent();
    let k = term.coefficient();
    if exponent.is_zero() {
        return k.to_string();
    }
    let mut out = String::from("w");
    if *exponent != Ordinal::one() {
        out.push('^');
        if exponent.is_finite() || *exponent == Ordinal::omega() {
            out.push_str(&render(exponent, "+"));
        } else {
            out.push('(');
            out.push_str(&render(exponent, "+"));
            out.push(')');
        }
    }
    if *k != 1u32.into() {
        out.push('*');
        out.push_str(&k.to_string());
    }
    out
}

use num_traits::{One, Signed};

use crate::algebra::{fmt_rational, GaussianRational, LaurentPolynomial, PolySystem};

/// Canonical text form of a system: a `vars:` header and one line per
/// polynomial.
pub fn serialize_system(sys: &PolySystem) -> String {
    let mut out = format!("vars: {}\n", sys.vars().join(" "));
    for p in sys.polys() {
        out.push_str(&format_polynomial(p, sys.vars()));
        out.push('\n');
    }
    out
}

/// Formats `f` with terms in descending graded-lexicographic order.
pub fn format_polynomial(f: &LaurentPolynomial, names: &[String]) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in f.terms_grlex().into_iter().enumerate() {
        let mono = format_monomial(e, names);
        let (negative, body) = format_coefficient(c, mono.is_empty());
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        match (body.is_empty(), mono.is_empty()) {
            (true, _) => out.push_str(&mono),
            (false, true) => out.push_str(&body),
            (false, false) => {
                out.push_str(&body);
                out.push('*');
                out.push_str(&mono);
            }
        }
    }
    out
}

fn format_monomial(e: &[i64], names: &[String]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(&k, _)| k != 0)
        .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
        .collect();
    parts.join("*")
}

/// Splits a coefficient into a sign and a magnitude text; the text is empty
/// for a unit coefficient in front of a non-constant monomial.
fn format_coefficient(c: &GaussianRational, constant: bool) -> (bool, String) {
    if c.is_real() {
        let neg = c.re().is_negative();
        let abs = c.re().abs();
        if abs.is_one() && !constant {
            return (neg, String::new());
        }
        return (neg, fmt_rational(&abs));
    }
    if num_traits::Zero::is_zero(c.re()) {
        let neg = c.im().is_negative();
        let abs = c.im().abs();
        let body = if abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rational(&abs))
        };
        return (neg, body);
    }
    let im_abs = c.im().abs();
    let im = if im_abs.is_one() {
        "i".to_string()
    } else {
        format!("{}*i", fmt_rational(&im_abs))
    };
    let sign = if c.im().is_negative() { '-' } else { '+' };
    (false, format!("({} {sign} {im})", fmt_rational(c.re())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sysio::parse_system;

    #[test]
    fn example_one_canonical() {
        let s = parse_system("vars: x1 x2\n(1 - x1^2)*x2 + 2\n(1 - x1)^2*x2 + 3").unwrap();
        let text = serialize_system(&s);
        assert_eq!(text, "vars: x1 x2\n-x1^2*x2 + x2 + 2\nx1^2*x2 - 2*x1*x2 + x2 + 3\n");
        assert_eq!(parse_system(&text).unwrap(), s);
    }

    #[test]
    fn complex_and_laurent_terms() {
        let s = parse_system("vars: x y\n(1/2 + 3i)*x*y^-2 - i*x + (-2/3 - i)").unwrap();
        let text = serialize_system(&s);
        assert_eq!(text, "vars: x y\n-i*x + (-2/3 - i) + (1/2 + 3*i)*x*y^-2\n");
        assert_eq!(parse_system(&text).unwrap(), s);
    }

    #[test]
    fn header_only() {
        let s = PolySystem::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(serialize_system(&s), "vars: a b\n");
        assert_eq!(parse_system("vars: a b\n").unwrap(), s);
    }
}

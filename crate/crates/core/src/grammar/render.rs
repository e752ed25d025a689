//! Text rendering of canonical expressions.
//!
//! The output re-parses to the same canonical tree.

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::expr::Expr;

#[derive(Clone, Copy)]
struct Style {
    spaced: bool,
}

/// Human-readable rendering with spaces around `+` and `-`.
pub fn render(e: &Expr) -> String {
    let mut s = String::new();
    write_sum(&mut s, e, Style { spaced: true });
    s
}

/// Rendering without spaces, used in one-line summaries.
pub fn render_compact(e: &Expr) -> String {
    let mut s = String::new();
    write_sum(&mut s, e, Style { spaced: false });
    s
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// For a term with a negative leading coefficient, the term with the sign removed.
fn split_sign(e: &Expr) -> Option<Expr> {
    match e {
        Expr::Rational(q) if q.is_negative() => Some(Expr::Rational(-q.clone())),
        Expr::Mul(xs) => match xs.first() {
            Some(Expr::Rational(q)) if q.is_negative() => {
                let c = -q.clone();
                let mut rest: Vec<Expr> = xs[1..].to_vec();
                if !c.is_one() {
                    rest.insert(0, Expr::Rational(c));
                }
                Some(if rest.len() == 1 {
                    rest.pop().unwrap()
                } else {
                    Expr::Mul(rest)
                })
            }
            _ => None,
        },
        _ => None,
    }
}

fn write_sum(out: &mut String, e: &Expr, st: Style) {
    match e {
        Expr::Add(terms) => {
            for (k, t) in terms.iter().enumerate() {
                if k == 0 {
                    write_product(out, t, st);
                    continue;
                }
                match split_sign(t) {
                    Some(pos) => {
                        out.push_str(if st.spaced { " - " } else { "-" });
                        write_product(out, &pos, st);
                    }
                    None => {
                        out.push_str(if st.spaced { " + " } else { "+" });
                        write_product(out, t, st);
                    }
                }
            }
        }
        _ => write_product(out, e, st),
    }
}

/// Base of a reciprocal factor `x^-1`, shown as a denominator.
fn denominator_part(e: &Expr) -> Option<(Expr, BigRational)> {
    if let Expr::Pow(b, x) = e {
        if let Expr::Rational(q) = x.as_ref() {
            if *q == -BigRational::one() {
                return Some(((**b).clone(), BigRational::one()));
            }
        }
    }
    None
}

fn write_product(out: &mut String, e: &Expr, st: Style) {
    match e {
        Expr::Add(_) => {
            out.push('(');
            write_sum(out, e, st);
            out.push(')');
        }
        Expr::Mul(xs) => {
            let mut coeff: Option<&BigRational> = None;
            let mut num: Vec<&Expr> = Vec::new();
            let mut den: Vec<(Expr, BigRational)> = Vec::new();
            for x in xs {
                match x {
                    Expr::Rational(q) => coeff = Some(q),
                    other => match denominator_part(other) {
                        Some(d) => den.push(d),
                        None => num.push(other),
                    },
                }
            }
            let mut first = true;
            if let Some(q) = coeff {
                if *q == -BigRational::one() && !num.is_empty() {
                    out.push('-');
                } else {
                    out.push_str(&rational_text(q));
                    first = false;
                }
            }
            if num.is_empty() && coeff.is_none() {
                out.push('1');
                first = false;
            }
            for f in num {
                if !first {
                    out.push('*');
                }
                write_factor(out, f, st);
                first = false;
            }
            for (b, q) in den {
                out.push('/');
                write_power(out, &b, &Expr::Rational(q), st);
            }
        }
        Expr::Rational(q) => out.push_str(&rational_text(q)),
        other => {
            if let Some((b, q)) = denominator_part(other) {
                out.push_str("1/");
                write_power(out, &b, &Expr::Rational(q), st);
            } else {
                write_factor(out, other, st);
            }
        }
    }
}

fn write_power(out: &mut String, base: &Expr, exponent: &Expr, st: Style) {
    if exponent.is_one() {
        write_atom(out, base, st);
        return;
    }
    write_atom(out, base, st);
    out.push('^');
    write_atom(out, exponent, st);
}

fn write_factor(out: &mut String, e: &Expr, st: Style) {
    match e {
        Expr::Pow(b, x) => write_power(out, b, x, st),
        Expr::Add(_) | Expr::Mul(_) => {
            out.push('(');
            write_sum(out, e, st);
            out.push(')');
        }
        other => write_atom(out, other, st),
    }
}

fn write_call(out: &mut String, name: &str, arg: &Expr, st: Style) {
    out.push_str(name);
    out.push('(');
    write_sum(out, arg, st);
    out.push(')');
}

/// Writes `e` so that it parses as a single atom.
fn write_atom(out: &mut String, e: &Expr, st: Style) {
    match e {
        Expr::Rational(q) if q.is_integer() && !q.is_negative() => {
            out.push_str(&q.numer().to_string())
        }
        Expr::Rational(q) => {
            out.push('(');
            out.push_str(&rational_text(q));
            out.push(')');
        }
        Expr::Const(c) => out.push_str(c.name()),
        Expr::Exp(a) => write_call(out, "exp", a, st),
        Expr::Ln(a) => write_call(out, "ln", a, st),
        Expr::Sqrt(a) => write_call(out, "sqrt", a, st),
        Expr::Trig(k, a) => write_call(out, k.name(), a, st),
        Expr::ArcTrig(k, a) => write_call(out, k.arc_name(), a, st),
        Expr::Hyp(k, a) => write_call(out, k.name(), a, st),
        other => {
            out.push('(');
            write_sum(out, other, st);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::parse;

    #[test]
    fn renders_power() {
        let e = Expr::Pow(
            Box::new(Expr::int(2)),
            Box::new(Expr::Sqrt(Box::new(Expr::int(2)))),
        );
        assert_eq!(render(&e), "2^sqrt(2)");
    }

    #[test]
    fn renders_sum_of_constants() {
        assert_eq!(render(&Expr::Add(vec![Expr::pi(), Expr::e()])), "pi + e");
        assert_eq!(render_compact(&Expr::Add(vec![Expr::pi(), Expr::e()])), "pi+e");
    }

    #[test]
    fn folds_sign_for_display() {
        assert_eq!(render(&Expr::Mul(vec![Expr::int(-1), Expr::e()])), "-e");
    }

    #[test]
    fn quotients_and_differences() {
        for text in [
            "arctan(1/2)/pi",
            "ln(2)/ln(3)",
            "(1 + ln(2))/pi",
            "ln(2) + ln(3) - ln(5)",
            "ln(pi) - 3/2*sqrt(2)*pi",
            "(-2)^(1/3)",
            "1/pi^2",
            "-1/pi",
            "2^(-sqrt(2))",
            "(1/2)^pi",
            "-(pi^2)",
            "i^(-2*i)",
        ] {
            let e = parse(text).unwrap();
            let shown = render(&e);
            assert_eq!(parse(&shown).unwrap(), e, "{text} rendered as {shown}");
        }
        assert_eq!(render(&parse("arctan(1/2)/pi").unwrap()), "atan(1/2)/pi");
    }
}

use crate::logic::formula::Formula;

/// Concrete syntax of a formula; `parse_formula` reads it back.
///
/// A binary connective nested inside another is always parenthesized, `~`
/// parenthesizes any compound operand, and a quantifier is parenthesized
/// unless it is the whole formula or the body of another quantifier.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write(f, Ctx::Top, &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    Top,
    QuantBody,
    Operand,
}

fn is_binary(f: &Formula) -> bool {
    matches!(
        f,
        Formula::And(_) | Formula::Or(_) | Formula::Implies(..) | Formula::Equiv(..)
    )
}

fn write(f: &Formula, ctx: Ctx, out: &mut String) {
    let wrap = match f {
        _ if is_binary(f) => ctx == Ctx::Operand,
        Formula::Exists(..) | Formula::Forall(..) => ctx == Ctx::Operand,
        _ => false,
    };
    if wrap {
        out.push('(');
    }
    match f {
        Formula::Atom(a) => out.push_str(&a.to_string()),
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Not(x) => {
            out.push('~');
            match **x {
                Formula::Atom(_) | Formula::True | Formula::False | Formula::Not(_) => {
                    write(x, Ctx::Operand, out)
                }
                _ => {
                    out.push('(');
                    write(x, Ctx::Top, out);
                    out.push(')');
                }
            }
        }
        Formula::And(cs) | Formula::Or(cs) => {
            let sep = if matches!(f, Formula::And(_)) {
                " & "
            } else {
                " | "
            };
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push_str(sep);
                }
                write(c, Ctx::Operand, out);
            }
        }
        Formula::Implies(a, b) | Formula::Equiv(a, b) => {
            write(a, Ctx::Operand, out);
            out.push_str(if matches!(f, Formula::Implies(..)) {
                " -> "
            } else {
                " <-> "
            });
            write(b, Ctx::Operand, out);
        }
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            out.push_str(if matches!(f, Formula::Exists(..)) {
                "exists "
            } else {
                "forall "
            });
            out.push_str(v);
            out.push_str(". ");
            write(body, Ctx::QuantBody, out);
        }
    }
    if wrap {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::formula::Term;

    fn p(s: &str) -> Formula {
        Formula::prop(s)
    }

    #[test]
    fn nested_binary_connectives_are_parenthesized() {
        let f = Formula::implies(
            p("fcar"),
            Formula::or([
                Formula::and([p("car"), p("fast")]),
                Formula::and([p("car"), p("reliable")]),
            ]),
        );
        assert_eq!(render(&f), "fcar -> ((car & fast) | (car & reliable))");
    }

    #[test]
    fn negation() {
        assert_eq!(render(&Formula::not(p("p"))), "~p");
        assert_eq!(render(&Formula::not(Formula::not(p("p")))), "~~p");
        assert_eq!(
            render(&Formula::not(Formula::and([p("a"), p("b")]))),
            "~(a & b)"
        );
    }

    #[test]
    fn quantifier_chain() {
        let body = Formula::and([
            Formula::pred(
                "s",
                vec![Term::var("X"), Term::var("Y"), Term::constant("a")],
            ),
            Formula::pred("t", vec![Term::var("Y"), Term::constant("b")]),
        ]);
        let f = Formula::forall("X", Formula::exists("Y", body));
        assert_eq!(render(&f), "forall X. exists Y. s(X,Y,a) & t(Y,b)");
        let g = Formula::and([f.clone(), p("q")]);
        assert_eq!(render(&g), "(forall X. exists Y. s(X,Y,a) & t(Y,b)) & q");
        assert_eq!(
            render(&Formula::not(f)),
            "~(forall X. exists Y. s(X,Y,a) & t(Y,b))"
        );
    }
}

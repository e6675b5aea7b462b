//! Auxiliary atom names: `r_` + readable prefix + `_` + content hash.

use sha2::{Digest, Sha256};

use crate::logic::{Formula, Term};
use crate::textio::render;

/// Longest readable part of a name.
pub const PREFIX_LEN: usize = 24;

fn tokens(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Atom(a) => {
            out.push(a.predicate.clone());
            for t in &a.args {
                out.push(match t {
                    Term::Var(v) => v.to_lowercase(),
                    Term::Const(c) => c.clone(),
                });
            }
        }
        Formula::True => out.push("true".into()),
        Formula::False => out.push("false".into()),
        Formula::Not(x) => {
            out.push("not".into());
            tokens(x, out);
        }
        Formula::And(cs) | Formula::Or(cs) => {
            let sep = if matches!(f, Formula::And(_)) {
                "and"
            } else {
                "or"
            };
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    out.push(sep.into());
                }
                tokens(c, out);
            }
        }
        Formula::Implies(a, b) | Formula::Equiv(a, b) => {
            tokens(a, out);
            out.push(
                if matches!(f, Formula::Implies(..)) {
                    "impl"
                } else {
                    "equiv"
                }
                .into(),
            );
            tokens(b, out);
        }
        Formula::Exists(v, x) | Formula::Forall(v, x) => {
            out.push(
                if matches!(f, Formula::Exists(..)) {
                    "exists"
                } else {
                    "forall"
                }
                .into(),
            );
            out.push(v.to_lowercase());
            tokens(x, out);
        }
    }
}

/// Readable part: sanitized tokens joined by `_`, cut at a token boundary
/// within [`PREFIX_LEN`] characters.
pub fn readable_prefix(f: &Formula) -> String {
    let mut toks = Vec::new();
    tokens(f, &mut toks);
    let mut out = String::new();
    for t in toks {
        let t: String = t
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        let extra = if out.is_empty() { t.len() } else { t.len() + 1 };
        if out.len() + extra > PREFIX_LEN {
            if out.is_empty() {
                out = t[..PREFIX_LEN].to_string();
            }
            break;
        }
        if !out.is_empty() {
            out.push('_');
        }
        out.push_str(&t);
    }
    out
}

/// Hex digest of the canonical rendering, `len` hex digits (at most 64).
pub fn content_hash(f: &Formula, len: usize) -> String {
    let digest = Sha256::digest(render(f).as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    hex[..len.min(hex.len())].to_string()
}

/// Name with a hash of `len` hex digits.
pub fn aux_name(f: &Formula, len: usize) -> String {
    format!("r_{}_{}", readable_prefix(f), content_hash(f, len))
}

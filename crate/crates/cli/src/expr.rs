//! Functor and class expressions as typed on the command line.
//!
//! Functors compose like maps and apply right to left: `T[1] theta[2]`
//! applies `theta_2` first. Classes are sums of terms such as
//! `L[121]`, `-delta[e]<2>` or `3 nabla[w0]`, where `<k>` shifts by `v^k`.

use heckecat_core::{BasisTag, CharacterVector, CoxeterGroup, Element, FunctorKind, LaurentPoly};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExprError {
    #[error("malformed expression {0:?}: {1}")]
    Syntax(String, &'static str),
    #[error("unknown functor {0:?} (expected T, C, theta, Z1 or Z2)")]
    UnknownFunctor(String),
    #[error("unknown class {0:?} (expected L, delta, nabla, P, T or I)")]
    UnknownClass(String),
    #[error(transparent)]
    Core(#[from] heckecat_core::Error),
}

/// One bracketed token: a name, its argument and an optional `<k>` shift.
struct Token<'a> {
    sign: i64,
    multiplier: i64,
    name: &'a str,
    arg: &'a str,
    shift: i32,
}

/// Splits `text` into `name[arg]<k>` tokens, keeping any sign or integer
/// multiplier written before each one.
fn tokens(text: &str) -> Result<Vec<Token<'_>>, ExprError> {
    let err = |why| ExprError::Syntax(text.to_string(), why);
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let mut sign = 1;
        loop {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == '\u{2218}' || c == '*');
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r;
            } else {
                break;
            }
        }
        if rest.is_empty() {
            return Err(err("dangling operator"));
        }
        let digits = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let multiplier = if digits == 0 {
            1
        } else {
            rest[..digits].parse().map_err(|_| err("bad multiplier"))?
        };
        rest = rest[digits..].trim_start_matches(|c: char| c.is_whitespace() || c == '\u{b7}' || c == '*');
        let open = rest.find('[').ok_or_else(|| err("missing '['"))?;
        let close = rest.find(']').ok_or_else(|| err("missing ']'"))?;
        if close < open {
            return Err(err("']' before '['"));
        }
        let name = rest[..open].trim();
        let arg = rest[open + 1..close].trim();
        rest = &rest[close + 1..];
        let mut shift = 0;
        if let Some(r) = rest.strip_prefix('<') {
            let end = r.find('>').ok_or_else(|| err("missing '>'"))?;
            shift = r[..end].trim().parse().map_err(|_| err("bad grading shift"))?;
            rest = &r[end + 1..];
        }
        out.push(Token { sign, multiplier, name, arg, shift });
    }
    if out.is_empty() {
        return Err(err("empty"));
    }
    Ok(out)
}

fn generator(g: &CoxeterGroup, arg: &str) -> Result<usize, ExprError> {
    let s: usize = arg
        .parse()
        .map_err(|_| ExprError::Syntax(arg.to_string(), "expected a generator index"))?;
    if s == 0 || s > g.rank() {
        return Err(heckecat_core::Error::BadGeneratorIndex { index: s, rank: g.rank() }.into());
    }
    Ok(s)
}

/// Parses a functor word into the order of application.
pub fn parse_functors(g: &CoxeterGroup, text: &str) -> Result<Vec<FunctorKind>, ExprError> {
    let mut out = Vec::new();
    for tok in tokens(text)? {
        if tok.sign != 1 || tok.multiplier != 1 || tok.shift != 0 {
            return Err(ExprError::Syntax(text.to_string(), "functors take no coefficients or shifts"));
        }
        let kind = match tok.name {
            "T" | "LT" => FunctorKind::DerivedTwist(g.parse_element(tok.arg)?),
            "C" | "LC" => FunctorKind::DerivedShuffle(g.parse_element(tok.arg)?),
            "theta" | "\u{3b8}" => FunctorKind::Projective(g.parse_element(tok.arg)?),
            "Z1" | "L1Z" => FunctorKind::ZuckermanL1(generator(g, tok.arg)?),
            "Z2" | "L2Z" => FunctorKind::ZuckermanL2(generator(g, tok.arg)?),
            other => return Err(ExprError::UnknownFunctor(other.to_string())),
        };
        out.push(kind);
    }
    out.reverse();
    Ok(out)
}

fn class_basis(name: &str) -> Result<BasisTag, ExprError> {
    name.parse().map_err(|_| ExprError::UnknownClass(name.to_string()))
}

/// A parsed class: its terms, each in its own basis.
pub struct ClassExpr {
    pub terms: Vec<(BasisTag, Element, LaurentPoly)>,
}

impl ClassExpr {
    /// Basis of the first term, used as the default output basis.
    pub fn leading_basis(&self) -> BasisTag {
        self.terms[0].0
    }

    /// `Some((basis, w))` when the expression is a single unshifted class.
    pub fn single(&self) -> Option<(BasisTag, Element)> {
        match self.terms.as_slice() {
            [(b, w, c)] if c.is_one() => Some((*b, *w)),
            _ => None,
        }
    }
}

pub fn parse_class(g: &CoxeterGroup, text: &str) -> Result<ClassExpr, ExprError> {
    let mut terms = Vec::new();
    for tok in tokens(text)? {
        let basis = class_basis(tok.name)?;
        let w = g.parse_element(tok.arg)?;
        let c = LaurentPoly::monomial(tok.sign * tok.multiplier, tok.shift);
        terms.push((basis, w, c));
    }
    Ok(ClassExpr { terms })
}

/// Evaluates a class expression as a vector in `target`.
pub fn class_vector(
    kg: &heckecat_core::KGroup<'_>,
    expr: &ClassExpr,
    target: BasisTag,
) -> Result<CharacterVector, ExprError> {
    let g = kg.group();
    let mut out = CharacterVector::zero(g, target);
    for (basis, w, c) in &expr.terms {
        out.add_scaled(&kg.class_in(*basis, *w, target)?, c)?;
    }
    Ok(out)
}

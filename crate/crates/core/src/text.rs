//! Expression syntax: a small recursive-descent parser and the canonical
//! printers (plain text and JSON).
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := power ('*'? power)*
//! power  := atom ('^' '-'? INT)?
//! atom   := NAME | INT ('/' INT)? | '(' expr ')'
//! ```
//!
//! Names are `theta phi Theta Phi d_theta d_phi p q`; the Unicode spellings
//! `θ φ Θ Φ ∂θ ∂φ` are accepted as well.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::{Expr, FreeAlgebra, Generator, Letter, Word};
use crate::error::{Error, Result};
use crate::laurent::LaurentCoeff;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("'{n}'"),
            Tok::Int(i) => format!("'{i}'"),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>, expected: &[&str]) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

const MAX_EXPONENT: u32 = 64;

const ATOM_START: &[&str] = &[
    "theta", "phi", "Theta", "Phi", "d_theta", "d_phi", "p", "q", "integer", "'('",
];

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut pos = Pos { line: 1, column: 1 };
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let start = pos;
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' | '−' => Some(Tok::Minus),
            '*' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'θ' | 'φ' | 'Θ' | 'Φ' => Some(Tok::Name(ch.to_string())),
            _ => None,
        };
        if ch == '\n' {
            pos.line += 1;
            pos.column = 1;
            i += 1;
            continue;
        }
        if ch.is_whitespace() {
            pos.column += 1;
            i += 1;
            continue;
        }
        if let Some(t) = single {
            out.push((t, start));
            pos.column += 1;
            i += 1;
            continue;
        }
        if ch == '∂' {
            match chars.get(i + 1) {
                Some(&c @ ('θ' | 'φ')) => {
                    out.push((Tok::Name(format!("∂{c}")), start));
                    pos.column += 2;
                    i += 2;
                    continue;
                }
                _ => {
                    let after = Pos {
                        line: pos.line,
                        column: pos.column + 1,
                    };
                    return Err(syntax(after, "'∂' must be followed by θ or φ", &["θ", "φ"]));
                }
            }
        }
        if ch.is_ascii_digit() {
            let j = (i..chars.len())
                .find(|&j| !chars[j].is_ascii_digit())
                .unwrap_or(chars.len());
            let s: String = chars[i..j].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), start));
            pos.column += j - i;
            i = j;
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let j = (i..chars.len())
                .find(|&j| !(chars[j].is_ascii_alphanumeric() || chars[j] == '_'))
                .unwrap_or(chars.len());
            let s: String = chars[i..j].iter().collect();
            out.push((Tok::Name(s), start));
            pos.column += j - i;
            i = j;
            continue;
        }
        return Err(syntax(start, format!("unexpected character '{ch}'"), ATOM_START));
    }
    out.push((Tok::End, pos));
    Ok(out)
}

enum Atom {
    Generator,
    Parameter,
    Number,
    Group,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        syntax(self.pos(), format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                -self.term()?
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Tok::Name(_) | Tok::Int(_) | Tok::LParen)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.power()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                acc = &acc * &self.power()?;
            } else if self.starts_atom() {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let (base, kind) = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp_pos = self.pos();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let n = match self.bump() {
            (Tok::Int(n), _) => n,
            (t, pos) => {
                return Err(syntax(pos, format!("unexpected {}", t.describe()), &["integer"]));
            }
        };
        let n: u32 = n
            .to_u32()
            .filter(|&n| n <= MAX_EXPONENT)
            .ok_or_else(|| syntax(exp_pos, "exponent too large", &["integer"]))?;
        if !negative {
            return Ok(base.pow(n));
        }
        let scalar_unit = base
            .terms()
            .next()
            .filter(|_| base.len() == 1)
            .filter(|(w, c)| w.is_empty() && c.is_unit())
            .map(|(_, c)| c.clone());
        match (kind, scalar_unit) {
            (Atom::Parameter | Atom::Number | Atom::Group, Some(c)) => {
                let inv = c.unit_inverse().expect("unit");
                Ok(Expr::scalar(inv).pow(n))
            }
            _ => Err(Error::NegativeExponent {
                line: exp_pos.line,
                column: exp_pos.column,
            }),
        }
    }

    fn atom(&mut self) -> Result<(Expr, Atom)> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Name(n) => {
                let g = match n.as_str() {
                    "p" => return Ok((Expr::scalar(LaurentCoeff::p()), Atom::Parameter)),
                    "q" => return Ok((Expr::scalar(LaurentCoeff::q()), Atom::Parameter)),
                    "Theta" | "Θ" => Generator::BIG_THETA,
                    "Phi" | "Φ" => Generator::BIG_PHI,
                    "theta" | "θ" => Generator::THETA,
                    "phi" | "φ" => Generator::PHI,
                    "d_theta" | "∂θ" => Generator::PARTIAL_THETA,
                    "d_phi" | "∂φ" => Generator::PARTIAL_PHI,
                    other => return Err(syntax(pos, format!("unknown name '{other}'"), ATOM_START)),
                };
                Ok((Expr::letter(g), Atom::Generator))
            }
            Tok::Int(n) => {
                let mut value = BigRational::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        (Tok::Int(d), dpos) => {
                            if d.is_zero() {
                                return Err(syntax(dpos, "zero denominator", &["nonzero integer"]));
                            }
                            value /= BigRational::from_integer(d);
                        }
                        (t, p) => return Err(syntax(p, format!("unexpected {}", t.describe()), &["integer"])),
                    }
                }
                Ok((Expr::scalar(LaurentCoeff::from_terms([((0, 0), value)])), Atom::Number))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected(&["'+'", "'-'", "'*'", "')'"]));
                }
                self.bump();
                Ok((inner, Atom::Group))
            }
            t => Err(syntax(pos, format!("unexpected {}", t.describe()), ATOM_START)),
        }
    }
}

/// Parses an expression into the free algebra; no relations are applied.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    if *p.peek() == Tok::End {
        return Err(p.unexpected(ATOM_START));
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok(e)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Style {
    pub unicode: bool,
}

fn write_word<L: Letter>(w: &Word<L>, style: Style) -> String {
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let j = (i..letters.len())
            .find(|&j| letters[j] != letters[i])
            .unwrap_or(letters.len());
        let name = if style.unicode {
            letters[i].unicode()
        } else {
            letters[i].ascii()
        };
        if j - i == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

/// One signed term: returns whether it is negative and its unsigned text.
fn write_term(c: &LaurentCoeff, word: &str) -> (bool, String) {
    let terms = c.ordered_terms();
    if terms.len() == 1 {
        let (_, r) = terms[0];
        let neg = r.is_negative();
        let mag = if neg { -c.clone() } else { c.clone() };
        let text = match (mag.is_one(), word.is_empty()) {
            (true, false) => word.to_string(),
            (_, true) => mag.to_string(),
            (false, false) => format!("{mag}*{word}"),
        };
        (neg, text)
    } else if word.is_empty() {
        (false, format!("({c})"))
    } else {
        (false, format!("({c})*{word}"))
    }
}

/// Canonical text: terms in ascending word order, joined by `+`/`-`.
pub fn format_with<L: Letter>(e: &FreeAlgebra<L>, style: Style) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in e.terms().enumerate() {
        let (neg, text) = write_term(c, &write_word(w, style));
        let text = if i == 0 && !neg && c.len() > 1 && w.is_empty() {
            c.to_string()
        } else {
            text
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&text);
    }
    out
}

pub fn format_expr(e: &Expr) -> String {
    format_with(e, Style::default())
}

fn big_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// `{"terms": [{"p_exp", "q_exp", "num", "den"}]}` in canonical monomial order.
pub fn coeff_to_json(c: &LaurentCoeff) -> Value {
    let terms: Vec<Value> = c
        .ordered_terms()
        .into_iter()
        .map(|((a, b), r)| {
            json!({
                "p_exp": a,
                "q_exp": b,
                "num": big_to_json(r.numer()),
                "den": big_to_json(r.denom()),
            })
        })
        .collect();
    json!({ "terms": terms })
}

/// `{"terms": [{"coeff": ..., "word": [...]}]}` with ASCII letter names.
pub fn expr_to_json<L: Letter>(e: &FreeAlgebra<L>) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .map(|(w, c)| {
            json!({
                "coeff": coeff_to_json(c),
                "word": w.letters().iter().map(|l| l.ascii()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "terms": terms })
}

fn json_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn coeff_from_json(v: &Value) -> Option<LaurentCoeff> {
    let mut terms = Vec::new();
    for t in v.get("terms")?.as_array()? {
        let a = i32::try_from(t.get("p_exp")?.as_i64()?).ok()?;
        let b = i32::try_from(t.get("q_exp")?.as_i64()?).ok()?;
        let den = json_int(t.get("den")?)?;
        if den.is_zero() {
            return None;
        }
        terms.push(((a, b), BigRational::new(json_int(t.get("num")?)?, den)));
    }
    Some(LaurentCoeff::from_terms(terms))
}

/// Inverse of [`expr_to_json`] for calculus expressions.
pub fn expr_from_json(v: &Value) -> Option<Expr> {
    let mut out = Expr::zero();
    for t in v.get("terms")?.as_array()? {
        let c = coeff_from_json(t.get("coeff")?)?;
        let word = t
            .get("word")?
            .as_array()?
            .iter()
            .map(|n| Generator::ALL.iter().copied().find(|g| Some(g.ascii()) == n.as_str()))
            .collect::<Option<Vec<_>>>()?;
        out.add_term(Word(word), c);
    }
    Some(out)
}

/// Text of a coefficient matrix entry or scalar, always parseable.
pub fn format_coeff(c: &LaurentCoeff) -> String {
    c.to_string()
}

/// Parses a scalar expression (no generators) into a Laurent coefficient.
pub fn parse_coeff(src: &str) -> Result<LaurentCoeff> {
    let e = parse_expr(src)?;
    let mut out = LaurentCoeff::zero();
    for (w, c) in e.terms() {
        if !w.is_empty() {
            return Err(syntax(
                Pos { line: 1, column: 1 },
                "expected a scalar",
                &["p", "q", "integer"],
            ));
        }
        out = &out + c;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{build_ruleset, CalculusType};
    use Generator as G;

    #[test]
    fn plane_relation_parses() {
        let e = parse_expr("theta*phi + p^-1 * phi*theta").unwrap();
        let expected =
            Expr::word(&[G::THETA, G::PHI]) + Expr::term(LaurentCoeff::pq_pow(-1, 0), Word(vec![G::PHI, G::THETA]));
        assert_eq!(e, expected);
    }

    #[test]
    fn parenthesized_coefficient() {
        let e = parse_expr("(1 - p*q) * Phi * theta").unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(
            e.coeff(&Word(vec![G::BIG_PHI, G::THETA])),
            &LaurentCoeff::one() - &LaurentCoeff::pq_pow(1, 1)
        );
    }

    #[test]
    fn powers_of_generators_are_words() {
        assert_eq!(parse_expr("theta^2").unwrap(), Expr::word(&[G::THETA, G::THETA]));
        assert_eq!(parse_expr("theta^0").unwrap(), Expr::one());
    }

    #[test]
    fn negative_exponent_on_a_generator() {
        let err = parse_expr("theta^-1").unwrap_err();
        assert_eq!(err, Error::NegativeExponent { line: 1, column: 7 });
        assert_eq!(
            err.to_string(),
            "nilpotent generators admit only exponents 0 and 1 via ^; negative exponents are parameter-only"
        );
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_expr("theta +\n  * phi") {
            Err(Error::Syntax {
                line, column, expected, ..
            }) => {
                assert_eq!((line, column), (2, 3));
                assert!(expected.contains(&"theta".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("theta psi"), Err(Error::Syntax { column: 7, .. })));
        assert!(matches!(parse_expr("(theta"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_expr("1/0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn canonical_text() {
        let rs = build_ruleset(CalculusType::TypeI);
        let e = rs.normalize(&parse_expr("phi*Theta").unwrap());
        assert_eq!(format_expr(&e), "p*Theta*phi + (1 - p*q)*Phi*theta");
        assert_eq!(format_expr(&Expr::zero()), "0");
        let e = rs.normalize(&parse_expr("d_theta*theta").unwrap());
        assert_eq!(format_expr(&e), "1 - theta*d_theta");
        assert_eq!(
            format_expr(&parse_expr("-1/2*q*Theta*Theta*phi").unwrap()),
            "-1/2*q*Theta^2*phi"
        );
        assert_eq!(format_expr(&parse_expr("1 - p*q").unwrap()), "1 - p*q");
        assert_eq!(
            format_with(&parse_expr("p*Theta*phi").unwrap(), Style { unicode: true }),
            "p*Θ*φ"
        );
    }

    #[test]
    fn round_trips() {
        for src in [
            "p*Theta*phi + (1 - p*q)*Phi*theta",
            "-theta - 2/3*p^-2*q*d_phi^2 + (p + q)",
            "(1 - p*q) + Theta^3*Phi",
            "-(p + q)*theta",
            "Θ*Φ - ∂θ*∂φ",
        ] {
            let e = parse_expr(src).unwrap();
            assert_eq!(parse_expr(&format_expr(&e)).unwrap(), e, "{src}");
            let u = format_with(&e, Style { unicode: true });
            assert_eq!(parse_expr(&u).unwrap(), e, "{u}");
            assert_eq!(expr_from_json(&expr_to_json(&e)).unwrap(), e);
        }
    }

    #[test]
    fn json_shape() {
        let e = parse_expr("-1/2*p^-1*theta").unwrap();
        assert_eq!(
            expr_to_json(&e),
            json!({"terms": [{"coeff": {"terms": [{"p_exp": -1, "q_exp": 0, "num": -1, "den": 2}]}, "word": ["theta"]}]})
        );
    }
}

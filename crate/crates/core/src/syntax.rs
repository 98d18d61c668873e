//! Text form of scalars and elements.
//!
//! ```text
//! q*x(x)y + (q^2 - 1)*y(x)x
//! ```
//!
//! `(x)` separates tensor factors, `*` multiplies, `^n` raises to an integer
//! power (negative only for `q`, units and invertible generators). Rationals
//! are written `3/2`. The name `q` is reserved.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ncpoly::{AlgebraTag, Gen, NcElement, Signature, TensorWord, Word};
use crate::scalar::{format_scalar, Scalar};

/// Generator names of one tensor slot.
pub trait Alphabet {
    fn tag(&self) -> &AlgebraTag;
    fn lookup(&self, name: &str) -> Option<Gen>;
    /// The generator inverse to `g`, when one is adjoined.
    fn inverse_of_gen(&self, g: Gen) -> Option<Gen>;
    fn gen_name(&self, g: Gen) -> &str;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Tensor,
}

fn syntax(message: impl Into<String>, column: usize) -> Error {
    Error::Syntax { message: message.into(), column }
}

/// Add `offset` to the column of a positioned error.
pub fn shift_column(e: Error, offset: usize) -> Error {
    match e {
        Error::Syntax { message, column } => Error::Syntax { message, column: column + offset },
        Error::UnknownGenerator { name, column } => Error::UnknownGenerator { name, column: column + offset },
        other => other,
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '(' && chars.get(i + 1) == Some(&'x') && chars.get(i + 2) == Some(&')') {
            out.push((Tok::Tensor, col));
            i += 3;
            continue;
        }
        match c {
            '+' => out.push((Tok::Plus, col)),
            '-' => out.push((Tok::Minus, col)),
            '*' => out.push((Tok::Star, col)),
            '^' => out.push((Tok::Caret, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                let mut value = BigRational::from_integer(num.parse::<BigInt>().expect("digits"));
                if chars.get(i) == Some(&'/') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                    i += 1;
                    let ds = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let den: String = chars[ds..i].iter().collect();
                    let den = den.parse::<BigInt>().expect("digits");
                    if den.is_zero() {
                        return Err(syntax("division by zero", ds + 1));
                    }
                    value /= BigRational::from_integer(den);
                }
                out.push((Tok::Num(value), col));
                continue;
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                continue;
            }
            _ => return Err(syntax(alloc::format!("unexpected character `{c}`"), col)),
        }
        i += 1;
    }
    Ok(out)
}

/// A parsed fragment occupying slots `start..start + degree` (degree 0 = scalar).
struct Frag {
    start: usize,
    value: NcElement,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    slots: &'a [&'a dyn Alphabet],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn signature(&self, start: usize, degree: usize, col: usize) -> Result<Signature> {
        if start + degree > self.slots.len() {
            return Err(syntax(
                alloc::format!("expected at most {} tensor factors", self.slots.len()),
                col,
            ));
        }
        Ok(Signature::new(self.slots[start..start + degree].iter().map(|a| a.tag().clone()).collect()))
    }

    fn lift(&self, f: Frag, start: usize, degree: usize, col: usize) -> Result<NcElement> {
        if f.value.degree() == degree {
            if degree > 0 && f.start != start {
                return Err(syntax("tensor factors out of place", col));
            }
            return Ok(f.value);
        }
        match f.value.as_scalar() {
            Some(c) => Ok(NcElement::one(self.signature(start, degree, col)?).scale(&c)),
            None => Err(syntax("terms have different numbers of tensor factors", col)),
        }
    }

    fn expr(&mut self, start: usize) -> Result<Frag> {
        let mut terms: Vec<(bool, Frag, usize)> = Vec::new();
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        loop {
            let col = self.col();
            let t = self.tensor_term(start)?;
            terms.push((negate, t, col));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    negate = true;
                }
                _ => break,
            }
        }
        let degree = terms.iter().map(|(_, f, _)| f.value.degree()).max().unwrap_or(0);
        let sig = self.signature(start, degree, self.col())?;
        let mut acc = NcElement::zero(sig);
        for (neg, f, col) in terms {
            let v = self.lift(f, start, degree, col)?;
            if neg {
                acc.add_scaled(&v, &-Scalar::one())
            } else {
                acc.add_scaled(&v, &Scalar::one())
            }
            .map_err(|_| syntax("terms have different tensor signatures", col))?;
        }
        Ok(Frag { start, value: acc })
    }

    fn tensor_term(&mut self, start: usize) -> Result<Frag> {
        let mut parts: Vec<(Frag, usize)> = Vec::new();
        let mut slot = start;
        loop {
            let col = self.col();
            let p = self.product(slot)?;
            slot += p.value.degree().max(1);
            parts.push((p, col));
            if self.peek() == Some(&Tok::Tensor) {
                self.bump();
            } else {
                break;
            }
        }
        if parts.len() == 1 {
            return Ok(parts.pop().expect("one part").0);
        }
        let mut acc = NcElement::scalar(Scalar::one());
        for (p, col) in parts {
            let s = p.start;
            let d = p.value.degree().max(1);
            let v = self.lift(p, s, d, col)?;
            acc = acc.tensor(&v);
        }
        Ok(Frag { start, value: acc })
    }

    fn product(&mut self, start: usize) -> Result<Frag> {
        let mut acc = self.power(start)?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let c = self.col();
            let f = self.power(start)?;
            acc = multiply(acc, f, c)?;
        }
        Ok(acc)
    }

    fn power(&mut self, start: usize) -> Result<Frag> {
        let col = self.col();
        let base = self.atom(start)?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let mut neg = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            neg = true;
        }
        let ecol = self.col();
        let n = match self.bump() {
            Some(Tok::Num(n)) if n.is_integer() => n.to_integer(),
            _ => return Err(syntax("expected an integer exponent", ecol)),
        };
        let n: u32 = n.try_into().map_err(|_| syntax("exponent too large", ecol))?;
        let base = if neg { self.invert(base, start, col)? } else { base };
        let mut acc = Frag { start, value: match base.value.degree() {
            0 => NcElement::scalar(Scalar::one()),
            d => NcElement::one(self.signature(base.start, d, col)?),
        } };
        acc.start = base.start;
        for _ in 0..n {
            acc = multiply(acc, Frag { start: base.start, value: base.value.clone() }, col)?;
        }
        Ok(acc)
    }

    fn invert(&self, f: Frag, start: usize, col: usize) -> Result<Frag> {
        if let Some(c) = f.value.as_scalar() {
            let inv = c.inv().map_err(|_| syntax(alloc::format!("cannot invert `{c}`"), col))?;
            return Ok(Frag { start, value: NcElement::scalar(inv) });
        }
        if f.value.degree() == 1 && f.value.len() == 1 {
            let (tw, c) = f.value.terms().next().expect("one term");
            let letters = tw.slot(0).letters();
            if c.is_one() && letters.len() == 1 {
                let alpha = self.slots[f.start];
                if let Some(gi) = alpha.inverse_of_gen(letters[0]) {
                    return Ok(Frag { start, value: NcElement::generator(alpha.tag(), gi) });
                }
            }
        }
        Err(syntax("only q, units and invertible generators take negative powers", col))
    }

    fn atom(&mut self, start: usize) -> Result<Frag> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Frag { start, value: NcElement::scalar(Scalar::monomial(n, 0)) }),
            Some(Tok::Ident(name)) if name == "q" => Ok(Frag { start, value: NcElement::scalar(Scalar::q()) }),
            Some(Tok::Ident(name)) => {
                let alpha = self.slots.get(start).ok_or_else(|| {
                    syntax(alloc::format!("expected at most {} tensor factors", self.slots.len()), col)
                })?;
                let g = alpha.lookup(&name).ok_or(Error::UnknownGenerator { name, column: col })?;
                Ok(Frag { start, value: NcElement::generator(alpha.tag(), g) })
            }
            Some(Tok::LParen) => {
                let inner = self.expr(start)?;
                let c = self.col();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax("expected `)`", c)),
                }
            }
            None => Err(syntax("unexpected end of input", col)),
            Some(t) => Err(syntax(alloc::format!("unexpected {}", describe(&t)), col)),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Num(_) => "number",
        Tok::Ident(_) => "name",
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::Tensor => "`(x)`",
    }
}

fn multiply(a: Frag, b: Frag, col: usize) -> Result<Frag> {
    if let Some(c) = a.value.as_scalar() {
        return Ok(Frag { start: b.start, value: b.value.scale(&c) });
    }
    if let Some(c) = b.value.as_scalar() {
        return Ok(Frag { start: a.start, value: a.value.scale(&c) });
    }
    let value = a
        .value
        .tensor_mul(&b.value)
        .map_err(|_| syntax("factors live in different tensor slots", col))?;
    Ok(Frag { start: a.start, value })
}

/// Parse an element whose `i`-th tensor factor is written over `slots[i]`.
pub fn parse_element(text: &str, slots: &[&dyn Alphabet]) -> Result<NcElement> {
    let toks = lex(text)?;
    let end_col = text.chars().count() + 1;
    if toks.is_empty() {
        return Err(syntax("empty expression", 1));
    }
    let mut p = Parser { toks, pos: 0, end_col, slots };
    let f = p.expr(0)?;
    if p.pos < p.toks.len() {
        let col = p.col();
        let t = p.bump().expect("token");
        return Err(syntax(alloc::format!("unexpected {}", describe(&t)), col));
    }
    let degree = slots.len();
    let v = f.value;
    if v.degree() == degree {
        return Ok(v);
    }
    match v.as_scalar() {
        Some(c) => Ok(NcElement::one(Signature::new(slots.iter().map(|a| a.tag().clone()).collect())).scale(&c)),
        None => Err(syntax(
            alloc::format!("expected {} tensor factors, found {}", degree, v.degree()),
            end_col,
        )),
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let e = parse_element(text, &[])?;
    Ok(e.as_scalar().expect("degree 0"))
}

/// `x^2*y`, or `1` for the empty word.
pub fn format_word(alpha: &dyn Alphabet, w: &Word) -> String {
    if w.is_empty() {
        return String::from("1");
    }
    let mut parts: Vec<String> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = alpha.gen_name(letters[i]);
        if j - i == 1 {
            parts.push(name.to_string());
        } else {
            parts.push(alloc::format!("{name}^{}", j - i));
        }
        i = j;
    }
    parts.join("*")
}

fn format_tensor_word(tw: &TensorWord, slots: &[&dyn Alphabet]) -> String {
    let parts: Vec<String> = tw.slots().iter().zip(slots).map(|(w, a)| format_word(*a, w)).collect();
    parts.join("(x)")
}

/// Canonical text of an element; terms in ascending word order.
pub fn format_element(e: &NcElement, slots: &[&dyn Alphabet]) -> String {
    if e.degree() == 0 {
        return format_scalar(&e.as_scalar().unwrap_or_else(Scalar::zero));
    }
    if e.is_zero() {
        return String::from("0");
    }
    let mut out = String::new();
    for (i, (tw, c)) in e.terms().enumerate() {
        let word = format_tensor_word(tw, slots);
        let is_unit = tw.slots().iter().all(Word::is_empty);
        let (neg, body) = match c.as_monomial() {
            Some((r, n)) => {
                let mag = Scalar::monomial(r.abs(), n);
                let body = if is_unit && e.degree() == 1 {
                    format_scalar(&mag)
                } else if mag.is_one() {
                    word
                } else {
                    alloc::format!("{}*{}", format_scalar(&mag), word)
                };
                (r.is_negative(), body)
            }
            None => {
                let body = if is_unit && e.degree() == 1 {
                    alloc::format!("({})", format_scalar(c))
                } else {
                    alloc::format!("({})*{}", format_scalar(c), word)
                };
                (false, body)
            }
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Boxed alphabet list helper for callers holding owned alphabets.
pub fn alphabets<'a, A: Alphabet>(items: &'a [&'a A]) -> Vec<&'a dyn Alphabet> {
    items.iter().map(|a| *a as &dyn Alphabet).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::sync::Arc;

    struct Letters {
        tag: AlgebraTag,
        names: Vec<&'static str>,
    }

    impl Alphabet for Letters {
        fn tag(&self) -> &AlgebraTag {
            &self.tag
        }
        fn lookup(&self, name: &str) -> Option<Gen> {
            self.names.iter().position(|n| *n == name).map(|i| i as Gen)
        }
        fn inverse_of_gen(&self, g: Gen) -> Option<Gen> {
            match self.names[g as usize] {
                "g" => self.lookup("ginv"),
                "ginv" => self.lookup("g"),
                _ => None,
            }
        }
        fn gen_name(&self, g: Gen) -> &str {
            self.names[g as usize]
        }
    }

    fn plane() -> Letters {
        Letters { tag: Arc::from("aq2"), names: alloc::vec!["x", "y", "g", "ginv"] }
    }

    #[test]
    fn scalar_round_trip() {
        for s in ["q^2 - 1", "-q", "3/2*q^-1", "0", "q^2 - 1 - 3/2*q^-1"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(parse_scalar("(q - q^-1)*q").unwrap(), parse_scalar("q^2 - 1").unwrap());
        assert_eq!(parse_scalar("q^-2*q^2").unwrap(), Scalar::one());
    }

    #[test]
    fn tensor_expression_round_trip() {
        let p = plane();
        let slots: [&dyn Alphabet; 2] = [&p, &p];
        let e = parse_element("q*x(x)y + (q^2 - 1)*y(x)x", &slots).unwrap();
        assert_eq!(format_element(&e, &slots), "q*x(x)y + (q^2 - 1)*y(x)x");
        let f = parse_element("x*x(x)1 - 1(x)y", &slots).unwrap();
        assert_eq!(format_element(&f, &slots), "-1(x)y + x^2(x)1");
    }

    #[test]
    fn negative_power_of_generator() {
        let p = plane();
        let slots: [&dyn Alphabet; 1] = [&p];
        let e = parse_element("g^-2", &slots).unwrap();
        assert_eq!(format_element(&e, &slots), "ginv^2");
        assert!(parse_element("x^-1", &slots).is_err());
    }

    #[test]
    fn errors_carry_columns() {
        let p = plane();
        let slots: [&dyn Alphabet; 1] = [&p];
        assert_eq!(
            parse_element("x*zz", &slots).unwrap_err(),
            Error::UnknownGenerator { name: "zz".into(), column: 3 }
        );
        assert!(matches!(parse_element("x +", &slots), Err(Error::Syntax { column: 4, .. })));
        assert!(matches!(parse_element("x(x)y", &slots), Err(Error::Syntax { .. })));
    }
}

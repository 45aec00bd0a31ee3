//! Coderivations of the tensor coalgebra `T(W)`.
//!
//! A coderivation is stored as a sparse sum of basis cochains `φ^I_i`
//! (`φ^I_i(v_J) = δ^I_J v_i`). Composition follows the insertion rule
//!
//! ```text
//! φ^I_i ∘ φ^J_j = Σ_k (-1)^{(|v_{i_1}|+…+|v_{i_{k-1}}|)|φ^J_j|} δ^{i_k}_j φ^{(I,J,k)}_i
//! ```
//!
//! and the bracket is the graded commutator. [`Coderivation::evaluate`]
//! applies the coderivation extension to a tensor word directly and is
//! kept independent of `compose` so the two can check each other.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::scalar::{Coeff, Rational};
use crate::space::{GradedSpace, Parity, Word};

/// Basis cochain label `(I, i)`: input word and 1-based target index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub word: Word,
    pub target: u8,
}

impl Term {
    pub fn new(word: impl Into<Word>, target: usize) -> Self {
        Term {
            word: word.into(),
            target: target as u8,
        }
    }

    pub fn arity(&self) -> usize {
        self.word.len()
    }

    pub fn target(&self) -> usize {
        self.target as usize
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: arity, then word, then target.
impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .cmp(&other.word)
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.word.iter().map(|i| i.to_string()).collect();
        write!(f, "φ({};{})", idx.join(","), self.target)
    }
}

/// `|φ^I_i| = |I| + |v_i|`.
pub fn term_parity(space: &GradedSpace, word: &Word, target: usize) -> Result<Parity> {
    Ok(space.word_parity(word)? + space.parity(target)?)
}

/// All basis cochains of arity `n` and the given parity, canonical order.
pub fn basis_terms(space: &GradedSpace, n: usize, parity: Parity) -> Vec<Term> {
    let mut out = Vec::new();
    for w in space.enumerate_words(n) {
        let wp = space.word_parity_unchecked(&w);
        for t in 1..=space.dim() {
            if wp + space.parity_unchecked(t) == parity {
                out.push(Term::new(w.clone(), t));
            }
        }
    }
    out
}

/// A formal linear combination of tensor words.
pub type TensorSum<S> = BTreeMap<Word, S>;

fn accumulate<K: Ord, S: Coeff>(map: &mut BTreeMap<K, S>, key: K, value: S) {
    if value.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(value);
        }
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign_ref(&value);
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct Coderivation<S> {
    space: GradedSpace,
    terms: BTreeMap<Term, S>,
}

impl<S: Coeff> Coderivation<S> {
    pub fn zero(space: GradedSpace) -> Self {
        Coderivation {
            space,
            terms: BTreeMap::new(),
        }
    }

    /// The basis cochain `φ^I_i` with coefficient one.
    pub fn basis(space: GradedSpace, word: impl Into<Word>, target: usize) -> Result<Self> {
        let mut c = Coderivation::zero(space);
        c.add_term(word.into(), target, S::from_rational(Rational::one()))?;
        Ok(c)
    }

    pub fn from_terms(
        space: GradedSpace,
        terms: impl IntoIterator<Item = (Word, usize, S)>,
    ) -> Result<Self> {
        let mut c = Coderivation::zero(space);
        for (w, t, s) in terms {
            c.add_term(w, t, s)?;
        }
        Ok(c)
    }

    /// Adds `coeff * φ^word_target`, validating the indices.
    pub fn add_term(&mut self, word: Word, target: usize, coeff: S) -> Result<()> {
        self.space.check_word(&word)?;
        self.space.check_index(target)?;
        accumulate(&mut self.terms, Term::new(word, target), coeff);
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, term: Term, coeff: S) {
        accumulate(&mut self.terms, term, coeff);
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word, target: usize) -> Option<&S> {
        self.terms.get(&Term::new(word.clone(), target))
    }

    pub fn get(&self, term: &Term) -> Option<&S> {
        self.terms.get(term)
    }

    fn term_parity(&self, t: &Term) -> Parity {
        self.space.word_parity_unchecked(&t.word) + self.space.parity_unchecked(t.target())
    }

    /// The common parity of all terms; `None` for the zero coderivation.
    pub fn parity(&self) -> Result<Option<Parity>> {
        let mut found = None;
        for t in self.terms.keys() {
            let p = self.term_parity(t);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
        Ok(found)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.parity().is_ok()
    }

    /// `(even part, odd part)`.
    pub fn split_parity(&self) -> (Self, Self) {
        let mut even = Coderivation::zero(self.space);
        let mut odd = Coderivation::zero(self.space);
        for (t, c) in &self.terms {
            match self.term_parity(t) {
                Parity::Even => even.terms.insert(t.clone(), c.clone()),
                Parity::Odd => odd.terms.insert(t.clone(), c.clone()),
            };
        }
        (even, odd)
    }

    pub fn max_arity(&self) -> Option<usize> {
        self.terms.keys().map(Term::arity).max()
    }

    /// Whether every term has arity `n`.
    pub fn is_arity(&self, n: usize) -> bool {
        self.terms.keys().all(|t| t.arity() == n)
    }

    pub fn arity_component(&self, n: usize) -> Self {
        self.filter(|t, _| t.arity() == n)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Term, &S) -> bool) -> Self {
        Coderivation {
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(t, c)| keep(t, c))
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let mut out = self.clone();
        for (t, c) in &other.terms {
            accumulate(&mut out.terms, t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg_ref())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map_coeffs(|c| c.scale(r))
    }

    pub fn mul_coeff(&self, s: &S) -> Self {
        self.map_coeffs(|c| c.mul_ref(s))
    }

    pub fn map_coeffs<T: Coeff>(&self, mut f: impl FnMut(&S) -> T) -> Coderivation<T> {
        let mut out = Coderivation::zero(self.space);
        for (t, c) in &self.terms {
            accumulate(&mut out.terms, t.clone(), f(c));
        }
        out
    }

    /// Re-types the coefficients, e.g. rational to constant polynomials.
    pub fn lift<T: Coeff>(&self) -> Coderivation<T>
    where
        S: Into<T>,
        S: Clone,
    {
        self.map_coeffs(|c| c.clone().into())
    }

    /// Insertion composition `self ∘ other`. Both sides must be
    /// parity-homogeneous.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let (Some(_), Some(pg)) = (self.parity()?, other.parity()?) else {
            return Ok(Coderivation::zero(self.space));
        };
        let mut by_target: BTreeMap<usize, Vec<(&Word, &S)>> = BTreeMap::new();
        for (t, c) in &other.terms {
            by_target.entry(t.target()).or_default().push((&t.word, c));
        }
        let mut out = Coderivation::zero(self.space);
        for (t, a) in &self.terms {
            let mut prefix = Parity::Even;
            for k in 0..t.word.len() {
                let letter = t.word.get(k);
                if let Some(inner) = by_target.get(&letter) {
                    let negative = prefix.koszul(pg);
                    for (j_word, b) in inner {
                        let prod = a.mul_ref(b);
                        let prod = if negative { prod.neg_ref() } else { prod };
                        accumulate(
                            &mut out.terms,
                            Term {
                                word: t.word.insert_at(k, j_word),
                                target: t.target,
                            },
                            prod,
                        );
                    }
                }
                prefix = prefix + self.space.parity_unchecked(letter);
            }
        }
        Ok(out)
    }

    /// Graded commutator `[f, g] = f∘g - (-1)^{|f||g|} g∘f`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let (Some(pf), Some(pg)) = (self.parity()?, other.parity()?) else {
            return Ok(Coderivation::zero(self.space));
        };
        let fg = self.compose(other)?;
        let gf = other.compose(self)?;
        if pf.koszul(pg) {
            fg.add(&gf)
        } else {
            fg.sub(&gf)
        }
    }

    /// Applies the coderivation extension of `self` to the tensor `v_w`:
    /// `Σ (-1)^{|prefix||φ|} prefix · φ(segment) · suffix`.
    pub fn evaluate(&self, w: &Word) -> Result<TensorSum<S>> {
        self.space.check_word(w)?;
        let mut out = TensorSum::new();
        for (t, c) in &self.terms {
            let p = self.term_parity(t);
            let k = t.arity();
            if k > w.len() {
                continue;
            }
            let mut prefix = Parity::Even;
            for pos in 0..=(w.len() - k) {
                if w.as_slice()[pos..pos + k] == *t.word.as_slice() {
                    let mut v = w.as_slice()[..pos].to_vec();
                    v.push(t.target);
                    v.extend_from_slice(&w.as_slice()[pos + k..]);
                    let coeff = if prefix.koszul(p) {
                        c.neg_ref()
                    } else {
                        c.clone()
                    };
                    accumulate(&mut out, Word::new(v), coeff);
                }
                if pos < w.len() {
                    prefix = prefix + self.space.parity_unchecked(w.get(pos));
                }
            }
        }
        Ok(out)
    }

    /// Linear extension of [`evaluate`](Self::evaluate) to a tensor sum.
    pub fn evaluate_sum(&self, input: &TensorSum<S>) -> Result<TensorSum<S>> {
        let mut out = TensorSum::new();
        for (w, a) in input {
            for (u, b) in self.evaluate(w)? {
                accumulate(&mut out, u, a.mul_ref(&b));
            }
        }
        Ok(out)
    }

    /// The coefficient-wise image under `f`, dropping zeros.
    pub fn try_map_coeffs<T: Coeff>(
        &self,
        mut f: impl FnMut(&S) -> Result<T>,
    ) -> Result<Coderivation<T>> {
        let mut out = Coderivation::zero(self.space);
        for (t, c) in &self.terms {
            accumulate(&mut out.terms, t.clone(), f(c)?);
        }
        Ok(out)
    }
}

impl From<Rational> for Polynomial {
    fn from(r: Rational) -> Self {
        Polynomial::constant(r)
    }
}

impl Coderivation<Polynomial> {
    /// Specializes every coefficient at the given parameter values.
    pub fn evaluate_params(&self, values: &[Rational]) -> Coderivation<Rational> {
        self.map_coeffs(|p| {
            if p.nvars() == 0 {
                p.constant_term()
            } else {
                p.evaluate_at(values)
            }
        })
    }

    pub fn truncate(&self, max_degree: u32) -> Self {
        self.map_coeffs(|p| p.truncate(max_degree))
    }

    /// Rational coefficients if no parameters occur.
    pub fn to_rational(&self) -> Option<Coderivation<Rational>> {
        self.try_map_coeffs(|p| p.to_constant().ok_or(Error::Inhomogeneous))
            .ok()
    }

    /// Lifts constant coefficients onto the variable list `vars`.
    pub fn with_vars(&self, vars: &Arc<[String]>) -> Result<Self> {
        self.try_map_coeffs(|p| p.lift_to(vars))
    }
}

impl Coderivation<Rational> {
    pub fn to_poly(&self) -> Coderivation<Polynomial> {
        self.map_coeffs(|c| Polynomial::constant(c.clone()))
    }
}

/// `D_d(f) = [d, f]`; `d` must be odd.
pub fn coboundary<S: Coeff>(d: &Coderivation<S>, f: &Coderivation<S>) -> Result<Coderivation<S>> {
    if let Some(Parity::Even) = d.parity()? {
        return Err(Error::NotOdd(Parity::Even));
    }
    d.bracket(f)
}

/// Outcome of [`is_codifferential`]: `holds` iff `[d,d] = 0`, with the
/// surviving terms of `[d,d]` as certificate.
#[derive(Clone, Debug)]
pub struct CodifferentialCheck<S: Coeff> {
    pub holds: bool,
    pub defect: Coderivation<S>,
}

pub fn is_codifferential<S: Coeff>(d: &Coderivation<S>) -> Result<CodifferentialCheck<S>> {
    if let Some(Parity::Even) = d.parity()? {
        return Err(Error::NotOdd(Parity::Even));
    }
    let defect = d.bracket(d)?;
    Ok(CodifferentialCheck {
        holds: defect.is_zero(),
        defect,
    })
}

impl<S: Coeff> fmt::Display for Coderivation<S> {
    /// Index notation: `psi(2,3;2) - psi(3,2;2) + 2*phi(1;1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let (neg, body) = coeff_factor(c);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if let Some(b) = body {
                write!(f, "{b}*")?;
            }
            let name = match self.term_parity(t) {
                Parity::Odd => "psi",
                Parity::Even => "phi",
            };
            let idx: Vec<String> = t.word.iter().map(|i| i.to_string()).collect();
            write!(f, "{name}({};{})", idx.join(","), t.target)?;
        }
        Ok(())
    }
}

impl<S: Coeff> fmt::Debug for Coderivation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coderivation[{}]({})", self.space, self)
    }
}

/// Splits a coefficient into a sign and an optional printed factor
/// (`None` for a unit).
fn coeff_factor<S: Coeff>(c: &S) -> (bool, Option<String>) {
    if let Some(r) = c.as_rational() {
        let neg = r.is_negative();
        let a = r.abs();
        return (neg, (!a.is_one()).then(|| a.to_string()));
    }
    let s = c.to_string();
    if s.contains(" + ") || s.contains(" - ") {
        (false, Some(format!("({s})")))
    } else if let Some(rest) = s.strip_prefix('-') {
        (true, Some(rest.to_string()))
    } else {
        (false, Some(s))
    }
}

// ---------------------------------------------------------------------------
// Text syntax

/// Parses sums of basis cochains, e.g.
/// `psi(2,3;2) - psi(3,2;2) + 1/2*psi(2,2;3)*t1 + (t1 + t2^2)*psi(1,1;3)`.
///
/// `psi` must name an odd cochain and `phi` an even one. Identifiers other
/// than `psi`/`phi` are parameters; they are collected into the variable
/// list in natural order (`t2` before `t10`) unless `vars` is supplied.
pub fn parse_coderivation(
    space: GradedSpace,
    text: &str,
    vars: Option<&Arc<[String]>>,
) -> Result<Coderivation<Polynomial>> {
    let tokens = lex(text)?;
    let mut names: Vec<String> = tokens
        .iter()
        .filter_map(|t| match &t.kind {
            Tok::Ident(s) if s != "psi" && s != "phi" => Some(s.clone()),
            _ => None,
        })
        .collect();
    let vars: Arc<[String]> = match vars {
        Some(v) => {
            if let Some(bad) = names.iter().find(|n| !v.contains(n)) {
                let pos = tokens
                    .iter()
                    .find(|t| matches!(&t.kind, Tok::Ident(s) if s == bad))
                    .map(|t| t.pos)
                    .unwrap_or(0);
                return Err(Error::Parse {
                    pos,
                    msg: format!("unknown parameter `{bad}`"),
                });
            }
            v.clone()
        }
        None => {
            names.sort_by_key(|a| natural_key(a));
            names.dedup();
            names.into()
        }
    };
    let mut p = Parser {
        tokens,
        pos: 0,
        space,
        vars,
        text_len: text.len(),
    };
    let out = p.expr()?;
    if p.pos < p.tokens.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses a parameter-free coderivation.
pub fn parse_rational_coderivation(
    space: GradedSpace,
    text: &str,
) -> Result<Coderivation<Rational>> {
    let c = parse_coderivation(space, text, None)?;
    c.to_rational().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: "parameters are not allowed here".into(),
    })
}

fn natural_key(s: &str) -> (String, u64) {
    let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
    let (head, tail) = s.split_at(split);
    (head.to_string(), tail.parse().unwrap_or(0))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    kind: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push(Token {
                kind: Tok::Num(text[start..i].to_string()),
                pos: start,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            out.push(Token {
                kind: Tok::Ident(text[start..i].to_string()),
                pos: start,
            });
        } else if "+-*/^(),;".contains(c) {
            out.push(Token {
                kind: Tok::Sym(c),
                pos: i,
            });
            i += 1;
        } else {
            return Err(Error::Parse {
                pos: i,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    space: GradedSpace,
    vars: Arc<[String]>,
    text_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn error(&self, msg: &str) -> Error {
        let pos = self
            .tokens
            .get(self.pos)
            .map(|t| t.pos)
            .unwrap_or(self.text_len);
        let found = match self.tokens.get(self.pos).map(|t| &t.kind) {
            Some(Tok::Num(s)) | Some(Tok::Ident(s)) => format!(" (found `{s}`)"),
            Some(Tok::Sym(c)) => format!(" (found `{c}`)"),
            None => " (found end of input)".to_string(),
        };
        Error::Parse {
            pos,
            msg: format!("{msg}{found}"),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn integer(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let v = s.parse().map_err(|_| self.error("integer too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error("expected an integer")),
        }
    }

    fn expr(&mut self) -> Result<Coderivation<Polynomial>> {
        let mut out = Coderivation::zero(self.space);
        if self.peek().is_none() {
            return Err(self.error("empty expression"));
        }
        if self.peek() == Some(&Tok::Num("0".into())) && self.tokens.len() == 1 {
            self.pos += 1;
            return Ok(out);
        }
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let (term, coeff) = self.term()?;
            let coeff = if negative { coeff.neg() } else { coeff };
            out.add_term_unchecked(term, coeff);
            if self.peek().is_none() {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Term, Polynomial)> {
        let mut coeff = Polynomial::constant(Rational::one()).lift_to(&self.vars)?;
        let mut basis: Option<Term> = None;
        loop {
            match self.peek().cloned() {
                Some(Tok::Ident(name)) if name == "psi" || name == "phi" => {
                    let start = self.pos;
                    let t = self.basis_symbol(&name)?;
                    if basis.is_some() {
                        self.pos = start;
                        return Err(self.error("two basis symbols in one term"));
                    }
                    basis = Some(t);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) => {
                    let f = self.factor()?;
                    coeff = coeff.mul(&f);
                }
                _ => return Err(self.error("expected a factor")),
            }
            if self.eat('*') {
                continue;
            }
            match self.peek() {
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')) => continue,
                _ => break,
            }
        }
        match basis {
            Some(t) => Ok((t, coeff)),
            None => Err(self.error("term has no psi(...) or phi(...) symbol")),
        }
    }

    fn basis_symbol(&mut self, name: &str) -> Result<Term> {
        let start = self.pos;
        self.pos += 1;
        self.expect('(')?;
        let mut word = Vec::new();
        if !self.eat(';') {
            loop {
                let i = self.integer()?;
                self.space.check_index(i).map_err(|e| self.at(start, e))?;
                word.push(i as u8);
                if self.eat(';') {
                    break;
                }
                self.expect(',')?;
            }
        }
        let target = self.integer()?;
        self.space
            .check_index(target)
            .map_err(|e| self.at(start, e))?;
        self.expect(')')?;
        let word = Word::new(word);
        let p = term_parity(&self.space, &word, target)?;
        let want = if name == "psi" {
            Parity::Odd
        } else {
            Parity::Even
        };
        if p != want {
            self.pos = start;
            return Err(self.error(&format!(
                "`{name}` needs an {} cochain but {}{} is {}",
                if want == Parity::Odd { "odd" } else { "even" },
                word,
                target,
                if p == Parity::Odd { "odd" } else { "even" }
            )));
        }
        Ok(Term::new(word, target))
    }

    fn at(&self, start: usize, e: Error) -> Error {
        Error::Parse {
            pos: self.tokens[start].pos,
            msg: e.to_string(),
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut r: Rational = n.parse()?;
                if self.eat('/') {
                    let d = self.integer()?;
                    r = Rational::new(r.numer().clone(), d)
                        .map_err(|_| self.error("zero denominator"))?;
                }
                Ok(Polynomial::constant(r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .vars
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| self.error("unknown parameter"))?;
                let mut p = Polynomial::var(&self.vars, i);
                if self.eat('^') {
                    let k = self.integer()?;
                    p = p.pow(k as u32);
                }
                Ok(p)
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let p = self.poly_sum()?;
                self.expect(')')?;
                Ok(p)
            }
            _ => Err(self.error("expected a number, parameter or `(`")),
        }
    }

    fn poly_sum(&mut self) -> Result<Polynomial> {
        let mut acc = Polynomial::zero();
        let mut first = true;
        loop {
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let mut t = self.factor()?;
            while self.eat('*') || matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_))) {
                t = t.mul(&self.factor()?);
            }
            acc = if negative { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const S: GradedSpace = GradedSpace::standard();

    fn c(text: &str) -> Coderivation<Rational> {
        parse_rational_coderivation(S, text).unwrap()
    }

    #[test]
    fn term_parity_examples() {
        assert_eq!(
            term_parity(&S, &Word::from([2, 2]), 3).unwrap(),
            Parity::Odd
        );
        assert_eq!(
            term_parity(&S, &Word::from([3, 3]), 3).unwrap(),
            Parity::Odd
        );
        assert_eq!(term_parity(&S, &Word::from([1]), 1).unwrap(), Parity::Even);
        assert!(term_parity(&S, &Word::from([1]), 4).is_err());
    }

    #[test]
    fn compose_examples() {
        let a = c("psi(3,3;3)");
        let b = c("psi(2,2;3)");
        assert!(a.compose(&a).unwrap().is_zero());
        assert_eq!(a.compose(&b).unwrap(), c("phi(2,2,3;3) - phi(3,2,2;3)"));
        assert!(b.compose(&b).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let a = c("psi(3,3;3)");
        let b = c("psi(2,2;3)");
        assert!(a.bracket(&a).unwrap().is_zero());
        assert!(b.bracket(&b).unwrap().is_zero());
    }

    #[test]
    fn coboundary_examples() {
        let d = c("psi(2,2;3)");
        assert!(coboundary(&d, &c("phi(1;1)")).unwrap().is_zero());
        assert_eq!(coboundary(&d, &c("phi(2;2)")).unwrap(), c("2*psi(2,2;3)"));
        assert_eq!(coboundary(&d, &c("phi(3;3)")).unwrap(), c("-psi(2,2;3)"));
        assert!(matches!(
            coboundary(&c("phi(1;1)"), &d),
            Err(Error::NotOdd(Parity::Even))
        ));
    }

    #[test]
    fn evaluate_examples() {
        let f = c("psi(2,2;3)");
        let one = |w: &[u8], x: i64| -> TensorSum<Rational> {
            [(Word::from(w), Rational::from(x))].into_iter().collect()
        };
        assert_eq!(f.evaluate(&Word::from([2, 2])).unwrap(), one(&[3], 1));
        assert_eq!(
            f.evaluate(&Word::from([3, 2, 2])).unwrap(),
            one(&[3, 3], -1)
        );
        assert!(f.evaluate(&Word::from([1, 1])).unwrap().is_empty());
    }

    #[test]
    fn arity_zero_terms_insert_everywhere() {
        // v3 is odd, so inserting it after an odd prefix flips the sign.
        let f = c("psi(;3)");
        let out = f.evaluate(&Word::from([3])).unwrap();
        assert!(out.is_empty(), "v3 v3 - v3 v3 cancels: {out:?}");
        let out = f.evaluate(&Word::from([1])).unwrap();
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn codifferential_checks() {
        let d1 = c("psi(2,3;2) - psi(3,2;2) + psi(2,2;3) - psi(3,3;3)");
        assert!(is_codifferential(&d1).unwrap().holds);
        assert!(
            is_codifferential(&Coderivation::<Rational>::zero(S))
                .unwrap()
                .holds
        );
        let bad = c("psi(3;1) + psi(1;3)");
        let chk = is_codifferential(&bad).unwrap();
        assert!(!chk.holds);
        assert_eq!(chk.defect, c("2*phi(1;1) + 2*phi(3;3)"));
        assert!(parse_rational_coderivation(S, "psi(2,3;3)").is_err());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let mixed = c("psi(2,2;3) + phi(1;1)");
        assert_eq!(mixed.compose(&mixed).unwrap_err(), Error::Inhomogeneous);
        let (e, o) = mixed.split_parity();
        assert_eq!(e, c("phi(1;1)"));
        assert_eq!(o, c("psi(2,2;3)"));
    }

    #[test]
    fn display_round_trips() {
        let text = "psi(2,2;3) + 2*psi(2,3;2) - 1/2*psi(3,2;2) - psi(3,3;3)";
        let d = c(text);
        assert_eq!(d.to_string(), text);
        assert_eq!(c(&d.to_string()), d);
        let p = parse_coderivation(
            S,
            "psi(2,2;3) + psi(2,1;3)*t1 - (t1 + t2^2)*psi(1,1;3)",
            None,
        )
        .unwrap();
        let back = parse_coderivation(S, &p.to_string(), Some(p.terms().next().unwrap().1.vars()))
            .unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn parse_errors_are_located() {
        let e = parse_rational_coderivation(S, "psi(2,2;3) + phi(2,2;3)").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 13, .. }), "{e:?}");
        let e = parse_rational_coderivation(S, "psi(2,2;3) + psi(2,4;3)").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 13, .. }), "{e:?}");
        let e = parse_rational_coderivation(S, "psi(2,2;3) +").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 12, .. }), "{e:?}");
        assert!(parse_rational_coderivation(S, "psi(2,2;3) $").is_err());
        assert!(parse_rational_coderivation(S, "psi(2,2;3)*t1").is_err());
    }
}

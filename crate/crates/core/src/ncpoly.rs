//! Tensor-graded noncommutative polynomials.
//!
//! An [`NcElement`] is a finite linear combination of [`TensorWord`]s, one word
//! per tensor slot. Each slot is tagged with the algebra its letters belong to,
//! so `B⊗B`, `H⊗B` and four-fold spaces are all the same type with different
//! [`Signature`]s. Products here are plain slotwise concatenation; reduction
//! modulo relations lives in [`crate::rewrite`].

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Index of a generator inside its presentation; the index is also its precedence.
pub type Gen = u16;

/// Name of the presentation that owns a tensor slot.
pub type AlgebraTag = Arc<str>;

/// A word in the generators of one algebra. Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn from_letters(letters: Vec<Gen>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `prefix · self · suffix`.
    pub fn wrap(prefix: &[Gen], middle: &[Gen], suffix: &[Gen]) -> Word {
        let mut v = Vec::with_capacity(prefix.len() + middle.len() + suffix.len());
        v.extend_from_slice(prefix);
        v.extend_from_slice(middle);
        v.extend_from_slice(suffix);
        Word(v)
    }

    /// Leftmost position at which `pattern` occurs as a subword.
    pub fn find(&self, pattern: &Word) -> Option<usize> {
        let (h, n) = (&self.0, pattern.0.len());
        if n == 0 || n > h.len() {
            return None;
        }
        (0..=h.len() - n).find(|&i| h[i..i + n] == pattern.0[..])
    }

    /// Rightmost occurrence of `pattern`.
    pub fn rfind(&self, pattern: &Word) -> Option<usize> {
        let (h, n) = (&self.0, pattern.0.len());
        if n == 0 || n > h.len() {
            return None;
        }
        (0..=h.len() - n).rev().find(|&i| h[i..i + n] == pattern.0[..])
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        self.find(pattern).is_some()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<&[Gen]> for Word {
    fn from(s: &[Gen]) -> Self {
        Word(s.to_vec())
    }
}

/// One word per tensor slot. Ordered slot by slot.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TensorWord(Vec<Word>);

impl TensorWord {
    pub fn unit(slots: usize) -> Self {
        TensorWord(vec![Word::empty(); slots])
    }

    pub fn new(slots: Vec<Word>) -> Self {
        TensorWord(slots)
    }

    pub fn slots(&self) -> &[Word] {
        &self.0
    }

    pub fn slot(&self, i: usize) -> &Word {
        &self.0[i]
    }

    pub fn into_slots(self) -> Vec<Word> {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &TensorWord) -> TensorWord {
        TensorWord(self.0.iter().zip(&other.0).map(|(a, b)| a.concat(b)).collect())
    }

    fn join(&self, other: &TensorWord) -> TensorWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        TensorWord(v)
    }
}

impl fmt::Debug for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// The algebra tag of each tensor slot.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature(Vec<AlgebraTag>);

impl Signature {
    pub fn new(tags: Vec<AlgebraTag>) -> Self {
        Signature(tags)
    }

    pub fn scalar() -> Self {
        Signature(Vec::new())
    }

    pub fn single(tag: &AlgebraTag) -> Self {
        Signature(vec![tag.clone()])
    }

    pub fn pair(a: &AlgebraTag, b: &AlgebraTag) -> Self {
        Signature(vec![a.clone(), b.clone()])
    }

    pub fn tags(&self) -> &[AlgebraTag] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn join(&self, other: &Signature) -> Signature {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Signature(v)
    }

    pub fn permute(&self, order: &[usize]) -> Signature {
        Signature(order.iter().map(|&i| self.0[i].clone()).collect())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(|t| &**t).collect();
        write!(f, "{}", names.join("⊗"))
    }
}

/// A finite linear combination of tensor words; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct NcElement {
    signature: Signature,
    terms: BTreeMap<TensorWord, Scalar>,
}

impl NcElement {
    pub fn zero(signature: Signature) -> Self {
        NcElement { signature, terms: BTreeMap::new() }
    }

    pub fn one(signature: Signature) -> Self {
        let slots = signature.degree();
        Self::term(signature, TensorWord::unit(slots), Scalar::one())
    }

    /// A 0-slot element, i.e. a scalar.
    pub fn scalar(c: Scalar) -> Self {
        Self::term(Signature::scalar(), TensorWord::unit(0), c)
    }

    pub fn term(signature: Signature, word: TensorWord, c: Scalar) -> Self {
        let mut e = Self::zero(signature);
        e.add_term(word, &c);
        e
    }

    /// A single word in a single-slot signature.
    pub fn word(tag: &AlgebraTag, w: Word) -> Self {
        Self::term(Signature::single(tag), TensorWord(vec![w]), Scalar::one())
    }

    pub fn generator(tag: &AlgebraTag, g: Gen) -> Self {
        Self::word(tag, Word::letter(g))
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn degree(&self) -> usize {
        self.signature.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TensorWord, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (TensorWord, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, w: &TensorWord) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The scalar value of a 0-slot element.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.degree() != 0 {
            return None;
        }
        Some(self.coeff(&TensorWord::unit(0)))
    }

    pub fn add_term(&mut self, w: TensorWord, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(w.degree(), self.degree());
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    fn check_same(&self, other: &NcElement, op: &str) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::SignatureMismatch(alloc::format!(
                "{op}: {:?} vs {:?}",
                self.signature,
                other.signature
            )));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &NcElement, c: &Scalar) -> Result<()> {
        self.check_same(other, "add")?;
        if c.is_zero() {
            return Ok(());
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), &(a * c));
        }
        Ok(())
    }

    pub fn add(&self, other: &NcElement) -> Result<NcElement> {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &NcElement) -> Result<NcElement> {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one())?;
        Ok(out)
    }

    pub fn neg(&self) -> NcElement {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> NcElement {
        if c.is_zero() {
            return NcElement::zero(self.signature.clone());
        }
        NcElement {
            signature: self.signature.clone(),
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Product in the ordinary tensor product algebra: slotwise concatenation.
    pub fn tensor_mul(&self, other: &NcElement) -> Result<NcElement> {
        self.check_same(other, "tensor_mul")?;
        let mut out = NcElement::zero(self.signature.clone());
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.mul(v), &(a * b));
            }
        }
        Ok(out)
    }

    /// `self ⊗ other`, concatenating signatures.
    pub fn tensor(&self, other: &NcElement) -> NcElement {
        let mut out = NcElement::zero(self.signature.join(&other.signature));
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.join(v), &(a * b));
            }
        }
        out
    }

    /// Reorder slots: output slot `i` is input slot `order[i]`.
    pub fn permute(&self, order: &[usize]) -> Result<NcElement> {
        let mut seen = vec![false; self.degree()];
        if order.len() != self.degree() {
            return Err(Error::BadGrouping(alloc::format!("permutation of length {}", order.len())));
        }
        for &i in order {
            if i >= seen.len() || seen[i] {
                return Err(Error::BadGrouping(alloc::format!("{order:?} is not a permutation")));
            }
            seen[i] = true;
        }
        let mut out = NcElement::zero(self.signature.permute(order));
        for (w, c) in &self.terms {
            let slots = order.iter().map(|&i| w.0[i].clone()).collect();
            out.add_term(TensorWord(slots), c);
        }
        Ok(out)
    }

    /// Place `self` into a larger signature: slot `i` of `self` goes to
    /// `slots[i]` of the target, unit words elsewhere.
    pub fn embed(&self, target: &Signature, slots: &[usize]) -> Result<NcElement> {
        if slots.len() != self.degree() {
            return Err(Error::SignatureMismatch(alloc::format!(
                "embedding {} slots with {} assignments",
                self.degree(),
                slots.len()
            )));
        }
        let mut used = vec![false; target.degree()];
        for (i, &t) in slots.iter().enumerate() {
            if t >= target.degree() || used[t] || target.0[t] != self.signature.0[i] {
                return Err(Error::SignatureMismatch(alloc::format!(
                    "cannot place slot {i} ({}) at target slot {t}",
                    self.signature.0[i]
                )));
            }
            used[t] = true;
        }
        let mut out = NcElement::zero(target.clone());
        for (w, c) in &self.terms {
            let mut tw = TensorWord::unit(target.degree());
            for (i, &t) in slots.iter().enumerate() {
                tw.0[t] = w.0[i].clone();
            }
            out.add_term(tw, c);
        }
        Ok(out)
    }

    /// Read the slots as consecutive blocks of the given sizes. Each term comes
    /// back as its coefficient and one single-term element per block.
    pub fn split(&self, grouping: &[usize]) -> Result<Vec<(Scalar, Vec<NcElement>)>> {
        if grouping.iter().sum::<usize>() != self.degree() {
            return Err(Error::BadGrouping(alloc::format!(
                "{grouping:?} does not partition {} slots",
                self.degree()
            )));
        }
        let mut sigs = Vec::with_capacity(grouping.len());
        let mut start = 0;
        for &n in grouping {
            sigs.push(Signature(self.signature.0[start..start + n].to_vec()));
            start += n;
        }
        let mut out = Vec::with_capacity(self.terms.len());
        for (w, c) in &self.terms {
            let mut blocks = Vec::with_capacity(grouping.len());
            let mut start = 0;
            for (sig, &n) in sigs.iter().zip(grouping) {
                let tw = TensorWord(w.0[start..start + n].to_vec());
                blocks.push(NcElement::term(sig.clone(), tw, Scalar::one()));
                start += n;
            }
            out.push((c.clone(), blocks));
        }
        Ok(out)
    }

    /// Tensor product of consecutive blocks; inverse of [`NcElement::split`].
    pub fn flatten(blocks: &[NcElement]) -> NcElement {
        let mut acc = NcElement::scalar(Scalar::one());
        for b in blocks {
            acc = acc.tensor(b);
        }
        acc
    }

    /// Apply `f` to every term and sum the results into `signature`.
    pub fn flat_map_terms<F>(&self, signature: Signature, mut f: F) -> Result<NcElement>
    where
        F: FnMut(&TensorWord) -> Result<NcElement>,
    {
        let mut out = NcElement::zero(signature);
        for (w, c) in &self.terms {
            let img = f(w)?;
            out.add_scaled(&img, c)?;
        }
        Ok(out)
    }

    pub fn with_signature(mut self, signature: Signature) -> Result<NcElement> {
        if signature.degree() != self.degree() {
            return Err(Error::SignatureMismatch(alloc::format!(
                "{:?} vs {:?}",
                self.signature,
                signature
            )));
        }
        self.signature = signature;
        Ok(self)
    }

    /// Largest word length occurring in any slot.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().flat_map(|w| w.0.iter().map(Word::len)).max().unwrap_or(0)
    }
}

impl fmt::Debug for NcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (w, c) in &self.terms {
            parts.push(alloc::format!("({}){:?}", c, w));
        }
        write!(f, "NcElement[{:?}]{{{}}}", self.signature, parts.join(" + "))
    }
}

//! Braided tensor products of comodule algebras and Hopf algebras living in
//! the comodule category.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::error::{Error, Result};
use crate::ncpoly::{Gen, NcElement, Signature, TensorWord, Word};
use crate::scalar::Scalar;
use crate::structuremap::{crossed_braid_words, map_slots, Comodule, Memo};

/// `F₀ ⊗ … ⊗ F_{n-1}` with the product `(·⊗…⊗·)` twisted by the braiding
/// between the inner factors.
#[derive(Clone)]
pub struct BraidedTensorAlgebra {
    factors: Vec<Rc<dyn Comodule>>,
    braid_memo: Memo<(usize, usize, Word, Word), NcElement>,
}

impl core::fmt::Debug for BraidedTensorAlgebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BraidedTensorAlgebra").field("signature", &self.signature()).finish()
    }
}

impl BraidedTensorAlgebra {
    pub fn new(factors: Vec<Rc<dyn Comodule>>) -> Result<Self> {
        if let Some(first) = factors.first() {
            let tag = first.hopf().tag();
            if factors.iter().any(|f| f.hopf().tag() != tag) {
                return Err(Error::SignatureMismatch(String::from("factors are comodules over different Hopf algebras")));
            }
        }
        Ok(BraidedTensorAlgebra { factors, braid_memo: RefCell::new(BTreeMap::new()) })
    }

    pub fn factors(&self) -> &[Rc<dyn Comodule>] {
        &self.factors
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.factors.iter().map(|f| f.carrier().tag().clone()).collect())
    }

    pub fn one(&self) -> NcElement {
        NcElement::one(self.signature())
    }

    /// `Ψ(a ⊗ b)` for `a` in factor `i`, `b` in factor `j`; lands in `F_j ⊗ F_i`.
    pub fn braid_words(&self, i: usize, j: usize, a: &Word, b: &Word) -> Result<NcElement> {
        if a.is_empty() || b.is_empty() {
            let sig = Signature::pair(self.factors[j].carrier().tag(), self.factors[i].carrier().tag());
            return Ok(NcElement::term(sig, TensorWord::new(alloc::vec![b.clone(), a.clone()]), Scalar::one()));
        }
        let key = (i, j, a.clone(), b.clone());
        if let Some(v) = self.braid_memo.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = crossed_braid_words(&*self.factors[i], &*self.factors[j], a, b)?;
        self.braid_memo.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    fn product_words(&self, u: &TensorWord, v: &TensorWord) -> Result<NcElement> {
        let n = self.factors.len();
        let mut slots: Vec<Word> = u.slots().to_vec();
        slots.extend(v.slots().iter().cloned());
        let mut tags: Vec<_> = self.signature().tags().to_vec();
        tags.extend(self.signature().tags().iter().cloned());
        // Factor index of each slot, tracked as slots get braided around.
        let mut owner: Vec<usize> = (0..n).chain(0..n).collect();
        let mut acc = NcElement::term(Signature::new(tags), TensorWord::new(slots), Scalar::one());
        for j in 0..n {
            // Slots: j merged ones, then u_j..u_{n-1}, then v_j..v_{n-1}.
            let base = j;
            let mut pos = base + (n - j);
            while pos > base + 1 {
                let (fi, fj) = (owner[pos - 1], owner[pos]);
                let out = Signature::pair(self.factors[fj].carrier().tag(), self.factors[fi].carrier().tag());
                acc = map_slots(&acc, pos - 1, 2, &out, |ws| self.braid_words(fi, fj, &ws[0], &ws[1]))?;
                owner.swap(pos - 1, pos);
                pos -= 1;
            }
            let f = &self.factors[j];
            let out = Signature::single(f.carrier().tag());
            let tag = f.carrier().tag().clone();
            acc = map_slots(&acc, base, 2, &out, |ws| {
                if ws[0].is_empty() || ws[1].is_empty() {
                    return f.carrier().normal_form(&NcElement::word(&tag, ws[0].concat(&ws[1])));
                }
                f.multiply(&NcElement::word(&tag, ws[0].clone()), &NcElement::word(&tag, ws[1].clone()))
            })?;
            owner.remove(base);
        }
        Ok(acc)
    }

    /// The braided tensor product of two elements of this signature.
    pub fn product(&self, u: &NcElement, v: &NcElement) -> Result<NcElement> {
        let sig = self.signature();
        if u.signature() != &sig || v.signature() != &sig {
            return Err(Error::SignatureMismatch(String::from("braided product outside its signature")));
        }
        let mut out = NcElement::zero(sig);
        for (a, x) in u.terms() {
            for (b, y) in v.terms() {
                out.add_scaled(&self.product_words(a, b)?, &(x * y))?;
            }
        }
        Ok(out)
    }
}

/// A Hopf algebra in the category of right H-comodules: Δ_B multiplicative
/// into the braided tensor square, S_B braided-antimultiplicative.
#[derive(Clone)]
pub struct BraidedHopf {
    carrier: Rc<dyn Comodule>,
    coproduct: Vec<NcElement>,
    counit: Vec<Scalar>,
    antipode: Vec<NcElement>,
    square: BraidedTensorAlgebra,
    delta_memo: Memo<Word, NcElement>,
    antipode_memo: Memo<Word, NcElement>,
}

impl core::fmt::Debug for BraidedHopf {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BraidedHopf").field("carrier", self.carrier.carrier().tag()).finish()
    }
}

impl BraidedHopf {
    pub fn new(
        carrier: Rc<dyn Comodule>,
        coproduct: Vec<NcElement>,
        counit: Vec<Scalar>,
        antipode: Vec<NcElement>,
    ) -> Result<Self> {
        let pres = carrier.carrier();
        let n = pres.num_generators();
        for (name, len) in [("coproduct", coproduct.len()), ("counit", counit.len()), ("antipode", antipode.len())] {
            if len != n {
                return Err(Error::MissingEntry(alloc::format!("{name} table has {len} entries for {n} generators")));
            }
        }
        let two = Signature::pair(pres.tag(), pres.tag());
        let one = Signature::single(pres.tag());
        let mut co = Vec::with_capacity(n);
        for e in coproduct {
            if e.signature() != &two {
                return Err(Error::SignatureMismatch(String::from("braided coproduct entries live in B(x)B")));
            }
            co.push(crate::rewrite::normalize(&e, &[pres, pres])?);
        }
        let mut an = Vec::with_capacity(n);
        for e in antipode {
            if e.signature() != &one {
                return Err(Error::SignatureMismatch(String::from("braided antipode entries live in B")));
            }
            an.push(pres.normal_form(&e)?);
        }
        let square = BraidedTensorAlgebra::new(alloc::vec![carrier.clone(), carrier.clone()])?;
        Ok(BraidedHopf {
            carrier,
            coproduct: co,
            counit,
            antipode: an,
            square,
            delta_memo: RefCell::new(BTreeMap::new()),
            antipode_memo: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn carrier(&self) -> &Rc<dyn Comodule> {
        &self.carrier
    }

    pub fn comodule(&self) -> &dyn Comodule {
        &*self.carrier
    }

    pub fn square(&self) -> &BraidedTensorAlgebra {
        &self.square
    }

    pub fn coproduct_table(&self) -> &[NcElement] {
        &self.coproduct
    }

    pub fn counit_table(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode_table(&self) -> &[NcElement] {
        &self.antipode
    }

    pub fn sig(&self, n: usize) -> Signature {
        Signature::new(alloc::vec![self.carrier.carrier().tag().clone(); n])
    }

    /// Same tables over a different carrier (used by mutation tests).
    pub fn with_carrier(&self, carrier: Rc<dyn Comodule>) -> Result<Self> {
        BraidedHopf::new(carrier, self.coproduct.clone(), self.counit.clone(), self.antipode.clone())
    }

    pub fn with_coproduct_entry(&self, g: Gen, value: NcElement) -> Result<Self> {
        let mut t = self.coproduct.clone();
        t[g as usize] = value;
        BraidedHopf::new(self.carrier.clone(), t, self.counit.clone(), self.antipode.clone())
    }

    pub fn with_counit_entry(&self, g: Gen, value: Scalar) -> Result<Self> {
        let mut t = self.counit.clone();
        t[g as usize] = value;
        BraidedHopf::new(self.carrier.clone(), self.coproduct.clone(), t, self.antipode.clone())
    }

    pub fn with_antipode_entry(&self, g: Gen, value: NcElement) -> Result<Self> {
        let mut t = self.antipode.clone();
        t[g as usize] = value;
        BraidedHopf::new(self.carrier.clone(), self.coproduct.clone(), self.counit.clone(), t)
    }

    pub fn multiply(&self, a: &NcElement, b: &NcElement) -> Result<NcElement> {
        self.carrier.multiply(a, b)
    }

    fn word_element(&self, w: &Word) -> NcElement {
        NcElement::word(self.carrier.carrier().tag(), w.clone())
    }

    /// Δ_B on a word (not necessarily normal), as a product in the braided square.
    pub fn coproduct_word(&self, w: &Word) -> Result<NcElement> {
        if let Some(v) = self.delta_memo.borrow().get(w) {
            return Ok(v.clone());
        }
        let value = match w.letters() {
            [] => NcElement::one(self.sig(2)),
            [g] => self.coproduct[*g as usize].clone(),
            letters => {
                let n = letters.len();
                let head = self.coproduct_word(&Word::from(&letters[..n - 1]))?;
                self.square.product(&head, &self.coproduct[letters[n - 1] as usize])?
            }
        };
        self.delta_memo.borrow_mut().insert(w.clone(), value.clone());
        Ok(value)
    }

    pub fn coproduct(&self, u: &NcElement) -> Result<NcElement> {
        self.coproduct_at(u, 0)
    }

    pub fn coproduct_at(&self, u: &NcElement, slot: usize) -> Result<NcElement> {
        map_slots(u, slot, 1, &self.sig(2), |ws| self.coproduct_word(&ws[0]))
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        let mut acc = Scalar::one();
        for g in w.letters() {
            acc = &acc * &self.counit[*g as usize];
        }
        acc
    }

    pub fn counit(&self, u: &NcElement) -> Result<Scalar> {
        let e = self.counit_at(u, 0)?;
        Ok(e.as_scalar().unwrap_or_else(Scalar::zero))
    }

    pub fn counit_at(&self, u: &NcElement, slot: usize) -> Result<NcElement> {
        map_slots(u, slot, 1, &Signature::scalar(), |ws| Ok(NcElement::scalar(self.counit_word(&ws[0]))))
    }

    /// S_B on a word via `S(g·w) = ·Ψ(S g ⊗ S w)`.
    pub fn antipode_word(&self, w: &Word) -> Result<NcElement> {
        if let Some(v) = self.antipode_memo.borrow().get(w) {
            return Ok(v.clone());
        }
        let value = match w.letters() {
            [] => NcElement::one(self.sig(1)),
            [g] => self.antipode[*g as usize].clone(),
            letters => {
                let sg = &self.antipode[letters[0] as usize];
                let srest = self.antipode_word(&Word::from(&letters[1..]))?;
                self.multiply_after_braid(&sg.tensor(&srest))?
            }
        };
        self.antipode_memo.borrow_mut().insert(w.clone(), value.clone());
        Ok(value)
    }

    pub fn antipode(&self, u: &NcElement) -> Result<NcElement> {
        self.antipode_at(u, 0)
    }

    pub fn antipode_at(&self, u: &NcElement, slot: usize) -> Result<NcElement> {
        map_slots(u, slot, 1, &self.sig(1), |ws| self.antipode_word(&ws[0]))
    }

    /// `·∘Ψ` on B ⊗ B.
    pub fn multiply_after_braid(&self, u: &NcElement) -> Result<NcElement> {
        let braided = map_slots(u, 0, 2, &self.sig(2), |ws| self.square.braid_words(0, 0, &ws[0], &ws[1]))?;
        self.multiply_slots(&braided, 0)
    }

    /// Multiply slots `slot`, `slot + 1` with the carrier product.
    pub fn multiply_slots(&self, u: &NcElement, slot: usize) -> Result<NcElement> {
        map_slots(u, slot, 2, &self.sig(1), |ws| self.multiply(&self.word_element(&ws[0]), &self.word_element(&ws[1])))
    }

    /// `Σ (S c^(1̄))(S b^(1̄)) R(b^(2̄) ⊗ c^(2̄))`: the antipode of `bc` written
    /// through the coaction and R instead of the braiding.
    pub fn antipode_product_law(&self, b: &Word, c: &Word) -> Result<NcElement> {
        let com = self.comodule();
        let h = com.hopf();
        let cb = com.coact_word(b)?;
        let cc = com.coact_word(c)?;
        let mut out = NcElement::zero(self.sig(1));
        for (tb, x) in cb.terms() {
            for (tc, y) in cc.terms() {
                let r = h.eval_r_words(tb.slot(1), tc.slot(1))?;
                if r.is_zero() {
                    continue;
                }
                let sc = self.antipode_word(tc.slot(0))?;
                let sb = self.antipode_word(tb.slot(0))?;
                out.add_scaled(&self.multiply(&sc, &sb)?, &(&(x * y) * &r))?;
            }
        }
        Ok(out)
    }
}

/// Solve `·(S⊗id)Δ = ε = ·(id⊗S)Δ` on generators for the values `S(g)`,
/// spanned by normal words of length ≤ `degree`. Needs every coproduct term of
/// a generator to carry at most one letter in each slot. Returns the solution
/// and whether it is unique.
pub fn solve_antipode(
    carrier: &dyn Comodule,
    coproduct: &[NcElement],
    counit: &[Scalar],
    degree: usize,
) -> Result<(Vec<NcElement>, bool)> {
    let pres = carrier.carrier();
    let tag = pres.tag().clone();
    let sig = Signature::single(&tag);
    let basis = pres.normal_words(degree);
    let nb = basis.len();
    let ngen = pres.num_generators();
    let mut sys = crate::linsolve::LinearSystem::new(ngen * nb);
    let word = |w: &Word| NcElement::word(&tag, w.clone());
    for x in pres.generators() {
        let target = NcElement::one(sig.clone()).scale(&counit[x as usize]);
        for side in 0..2 {
            let mut cols: BTreeMap<TensorWord, BTreeMap<usize, Scalar>> = BTreeMap::new();
            let mut constant = NcElement::zero(sig.clone());
            for (tw, c) in coproduct[x as usize].terms() {
                let (unknown, known) = if side == 0 { (tw.slot(0), tw.slot(1)) } else { (tw.slot(1), tw.slot(0)) };
                match unknown.letters() {
                    [] => constant.add_scaled(&carrier.multiply(&word(tw.slot(0)), &word(tw.slot(1)))?, c)?,
                    [k] => {
                        for (j, b) in basis.iter().enumerate() {
                            let v = if side == 0 {
                                carrier.multiply(&word(b), &word(known))?
                            } else {
                                carrier.multiply(&word(known), &word(b))?
                            };
                            for (t, a) in v.terms() {
                                let e: &mut Scalar = cols
                                    .entry(t.clone())
                                    .or_default()
                                    .entry(*k as usize * nb + j)
                                    .or_insert_with(Scalar::zero);
                                *e += &(a * c);
                            }
                        }
                    }
                    _ => {
                        return Err(Error::Unsolvable(String::from(
                            "antipode solve needs coproducts with at most one letter per slot",
                        )))
                    }
                }
            }
            let rhs = target.sub(&constant)?;
            let keys: alloc::collections::BTreeSet<TensorWord> =
                cols.keys().cloned().chain(rhs.terms().map(|(t, _)| t.clone())).collect();
            for t in keys {
                sys.add_row(cols.remove(&t).unwrap_or_default(), rhs.coeff(&t));
            }
        }
    }
    let sol = sys.solve()?;
    let mut out = Vec::with_capacity(ngen);
    for k in 0..ngen {
        let mut e = NcElement::zero(sig.clone());
        for (j, b) in basis.iter().enumerate() {
            e.add_term(TensorWord::new(alloc::vec![b.clone()]), &sol.values[k * nb + j]);
        }
        out.push(e);
    }
    Ok((out, sol.is_unique()))
}

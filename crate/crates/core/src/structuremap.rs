//! Structure tables on generators and their extensions to words: Hopf
//! structure maps, the dual quasitriangular functional `R`, coactions, the
//! braiding they induce, and the induced right action.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::ops::Deref;

use crate::error::{Error, Result};
use crate::linsolve::LinearSystem;
use crate::ncpoly::{AlgebraTag, Gen, NcElement, Signature, TensorWord, Word};
use crate::rewrite::{normalize, Presentation};
use crate::scalar::Scalar;

pub(crate) type Memo<K, V> = RefCell<BTreeMap<K, V>>;

/// Replace slots `start..start + count` of every term by `f` applied to those
/// words. `f` must return elements of signature `out`.
pub fn map_slots<F>(u: &NcElement, start: usize, count: usize, out: &Signature, mut f: F) -> Result<NcElement>
where
    F: FnMut(&[Word]) -> Result<NcElement>,
{
    let tags = u.signature().tags();
    if start + count > tags.len() {
        return Err(Error::BadGrouping(alloc::format!(
            "slots {start}..{} of a {}-slot element",
            start + count,
            tags.len()
        )));
    }
    let mut sig = tags[..start].to_vec();
    sig.extend(out.tags().iter().cloned());
    sig.extend(tags[start + count..].iter().cloned());
    let mut result = NcElement::zero(Signature::new(sig));
    let mut memo: BTreeMap<Vec<Word>, NcElement> = BTreeMap::new();
    for (tw, c) in u.terms() {
        let key = tw.slots()[start..start + count].to_vec();
        if !memo.contains_key(&key) {
            let img = f(&key)?;
            if img.signature() != out {
                return Err(Error::SignatureMismatch(alloc::format!(
                    "slot map produced {:?}, expected {:?}",
                    img.signature(),
                    out
                )));
            }
            memo.insert(key.clone(), img);
        }
        for (iw, ic) in memo[&key].terms() {
            let mut slots = tw.slots()[..start].to_vec();
            slots.extend(iw.slots().iter().cloned());
            slots.extend(tw.slots()[start + count..].iter().cloned());
            result.add_term(TensorWord::new(slots), &(c * ic));
        }
    }
    Ok(result)
}

fn repeat_sig(tag: &AlgebraTag, n: usize) -> Signature {
    Signature::new(alloc::vec![tag.clone(); n])
}

fn single_slot_word(u: &NcElement) -> Result<()> {
    if u.degree() != 1 {
        return Err(Error::SignatureMismatch(alloc::format!("expected one tensor factor, got {}", u.degree())));
    }
    Ok(())
}

/// Kind of generator-indexed table, used in messages and reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Coproduct,
    Counit,
    Antipode,
    RightCoaction,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Coproduct => "coproduct",
            TableKind::Counit => "counit",
            TableKind::Antipode => "antipode",
            TableKind::RightCoaction => "coaction",
        }
    }
}

/// A Hopf algebra given by images of generators; Δ and ε extend
/// multiplicatively, S anti-multiplicatively.
#[derive(Clone, Debug)]
pub struct HopfAlgebra {
    pres: Arc<Presentation>,
    coproduct: Vec<NcElement>,
    counit: Vec<Scalar>,
    antipode: Vec<NcElement>,
    delta_memo: Memo<Word, NcElement>,
    antipode_memo: Memo<Word, NcElement>,
}

impl HopfAlgebra {
    pub fn new(
        pres: Arc<Presentation>,
        coproduct: Vec<NcElement>,
        counit: Vec<Scalar>,
        antipode: Vec<NcElement>,
    ) -> Result<Self> {
        let n = pres.num_generators();
        for (kind, len) in [
            (TableKind::Coproduct, coproduct.len()),
            (TableKind::Counit, counit.len()),
            (TableKind::Antipode, antipode.len()),
        ] {
            if len != n {
                return Err(Error::MissingEntry(alloc::format!(
                    "{} table has {len} entries for {n} generators",
                    kind.name()
                )));
            }
        }
        let two = repeat_sig(pres.tag(), 2);
        let one = repeat_sig(pres.tag(), 1);
        let mut co = Vec::with_capacity(n);
        for e in coproduct {
            if e.signature() != &two {
                return Err(Error::SignatureMismatch(String::from("coproduct entries live in H(x)H")));
            }
            co.push(pres.normal_form(&e)?);
        }
        let mut an = Vec::with_capacity(n);
        for e in antipode {
            if e.signature() != &one {
                return Err(Error::SignatureMismatch(String::from("antipode entries live in H")));
            }
            an.push(pres.normal_form(&e)?);
        }
        Ok(HopfAlgebra {
            pres,
            coproduct: co,
            counit,
            antipode: an,
            delta_memo: RefCell::new(BTreeMap::new()),
            antipode_memo: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn presentation_arc(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn tag(&self) -> &AlgebraTag {
        self.pres.tag()
    }

    /// `H^{⊗n}`.
    pub fn sig(&self, n: usize) -> Signature {
        repeat_sig(self.pres.tag(), n)
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

    fn reset(mut self) -> Self {
        self.delta_memo = RefCell::new(BTreeMap::new());
        self.antipode_memo = RefCell::new(BTreeMap::new());
        self
    }

    pub fn with_coproduct_entry(&self, g: Gen, value: NcElement) -> Result<Self> {
        let mut h = self.clone();
        h.coproduct[g as usize] = self.pres.normal_form(&value)?;
        Ok(h.reset())
    }

    pub fn with_counit_entry(&self, g: Gen, value: Scalar) -> Self {
        let mut h = self.clone();
        h.counit[g as usize] = value;
        h.reset()
    }

    pub fn with_antipode_entry(&self, g: Gen, value: NcElement) -> Result<Self> {
        let mut h = self.clone();
        h.antipode[g as usize] = self.pres.normal_form(&value)?;
        Ok(h.reset())
    }

    pub fn normal_form(&self, u: &NcElement) -> Result<NcElement> {
        let p: Vec<&Presentation> = alloc::vec![&*self.pres; u.degree()];
        normalize(u, &p)
    }

    pub fn multiply(&self, a: &NcElement, b: &NcElement) -> Result<NcElement> {
        self.normal_form(&a.tensor_mul(b)?)
    }

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
                self.normal_form(&head.tensor_mul(&self.coproduct[letters[n - 1] as usize])?)?
            }
        };
        self.delta_memo.borrow_mut().insert(w.clone(), value.clone());
        Ok(value)
    }

    pub fn coproduct(&self, u: &NcElement) -> Result<NcElement> {
        single_slot_word(u)?;
        self.coproduct_at(u, 0)
    }

    /// Apply Δ to slot `slot` of a multi-slot element.
    pub fn coproduct_at(&self, u: &NcElement, slot: usize) -> Result<NcElement> {
        map_slots(u, slot, 1, &self.sig(2), |ws| self.coproduct_word(&ws[0]))
    }

    /// `Δ^{n-1}`: the element spread over `n` slots.
    pub fn iterated_coproduct(&self, u: &NcElement, n: usize) -> Result<NcElement> {
        single_slot_word(u)?;
        let mut acc = u.clone();
        for i in 1..n {
            acc = self.coproduct_at(&acc, i - 1)?;
        }
        Ok(acc)
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        let mut acc = Scalar::one();
        for g in w.letters() {
            acc = &acc * &self.counit[*g as usize];
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    pub fn counit(&self, u: &NcElement) -> Result<Scalar> {
        single_slot_word(u)?;
        let mut acc = Scalar::zero();
        for (tw, c) in u.terms() {
            acc += &(c * &self.counit_word(tw.slot(0)));
        }
        Ok(acc)
    }

    /// Apply ε to slot `slot`, removing it.
    pub fn counit_at(&self, u: &NcElement, slot: usize) -> Result<NcElement> {
        map_slots(u, slot, 1, &Signature::scalar(), |ws| Ok(NcElement::scalar(self.counit_word(&ws[0]))))
    }

    pub fn antipode_word(&self, w: &Word) -> Result<NcElement> {
        if let Some(v) = self.antipode_memo.borrow().get(w) {
            return Ok(v.clone());
        }
        let value = match w.letters() {
            [] => NcElement::one(self.sig(1)),
            [g] => self.antipode[*g as usize].clone(),
            letters => {
                let n = letters.len();
                let tail = self.antipode_word(&Word::from(&letters[..n - 1]))?;
                self.multiply(&self.antipode[letters[n - 1] as usize], &tail)?
            }
        };
        self.antipode_memo.borrow_mut().insert(w.clone(), value.clone());
        Ok(value)
    }

    pub fn antipode(&self, u: &NcElement) -> Result<NcElement> {
        single_slot_word(u)?;
        self.antipode_at(u, 0)
    }

    pub fn antipode_at(&self, u: &NcElement, slot: usize) -> Result<NcElement> {
        map_slots(u, slot, 1, &self.sig(1), |ws| self.antipode_word(&ws[0]))
    }

    /// Multiply slots `slot` and `slot + 1` together.
    pub fn multiply_at(&self, u: &NcElement, slot: usize) -> Result<NcElement> {
        let tag = self.tag().clone();
        map_slots(u, slot, 2, &self.sig(1), |ws| {
            self.pres.normal_form(&NcElement::word(&tag, ws[0].concat(&ws[1])))
        })
    }

    /// Δ on a word without normalizing: the product of generator images.
    fn free_coproduct_word(&self, w: &Word) -> NcElement {
        let mut acc = NcElement::one(self.sig(2));
        for g in w.letters() {
            acc = acc.tensor_mul(&self.coproduct[*g as usize]).expect("same signature");
        }
        acc
    }

    pub fn gen_element(&self, g: Gen) -> NcElement {
        self.pres.gen_element(g)
    }
}

/// A Hopf algebra with a dual quasitriangular functional `R`, tabled on
/// generator pairs and extended to words by the bialgebra-pairing laws.
#[derive(Clone, Debug)]
pub struct DqtHopf {
    hopf: HopfAlgebra,
    base: BTreeMap<(Gen, Gen), Scalar>,
    table: Vec<Vec<Option<Scalar>>>,
    memo: Memo<(Word, Word), Scalar>,
    free_delta: Memo<Word, NcElement>,
}

impl Deref for DqtHopf {
    type Target = HopfAlgebra;
    fn deref(&self) -> &HopfAlgebra {
        &self.hopf
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum GenClass {
    Base,
    Defined,
    Inverse,
}

impl DqtHopf {
    /// `base` must give R on every pair of generators that are neither
    /// adjoined inverses nor defined by a relation `g = expression`.
    /// Entries involving those are derived.
    pub fn new(hopf: HopfAlgebra, base: BTreeMap<(Gen, Gen), Scalar>) -> Result<Self> {
        let pres = hopf.presentation();
        let n = pres.num_generators();
        let class: Vec<GenClass> = pres
            .generators()
            .map(|g| {
                if pres.is_inverse_generator(g) {
                    GenClass::Inverse
                } else if pres.definitions().contains_key(&g) {
                    GenClass::Defined
                } else {
                    GenClass::Base
                }
            })
            .collect();
        let mut table = alloc::vec![alloc::vec![None; n]; n];
        for (&(g, h), v) in &base {
            if (g as usize) >= n || (h as usize) >= n {
                return Err(Error::Invalid(String::from("R entry for an unknown generator")));
            }
            if class[g as usize] != GenClass::Base || class[h as usize] != GenClass::Base {
                return Err(Error::Invalid(alloc::format!(
                    "R({},{}) is derived, not tabled",
                    pres.name(g),
                    pres.name(h)
                )));
            }
            table[g as usize][h as usize] = Some(v.clone());
        }
        for g in pres.generators() {
            for h in pres.generators() {
                if class[g as usize] == GenClass::Base
                    && class[h as usize] == GenClass::Base
                    && table[g as usize][h as usize].is_none()
                {
                    return Err(Error::MissingEntry(alloc::format!("R({},{})", pres.name(g), pres.name(h))));
                }
            }
        }
        let mut r = DqtHopf {
            hopf,
            base,
            table,
            memo: RefCell::new(BTreeMap::new()),
            free_delta: RefCell::new(BTreeMap::new()),
        };
        r.derive_defined(&class)?;
        r.derive_inverses(&class)?;
        r.memo = RefCell::new(BTreeMap::new());
        Ok(r)
    }

    fn expand(&self, g: Gen) -> Vec<(Word, Scalar)> {
        match self.presentation().definitions().get(&g) {
            Some(p) => p.iter().map(|(w, c)| (w.clone(), c.clone())).collect(),
            None => alloc::vec![(Word::letter(g), Scalar::one())],
        }
    }

    fn derive_defined(&mut self, class: &[GenClass]) -> Result<()> {
        let gens: Vec<Gen> = self.presentation().generators().collect();
        let mut found = Vec::new();
        for &g in &gens {
            for &h in &gens {
                let (cg, ch) = (class[g as usize], class[h as usize]);
                if cg == GenClass::Inverse || ch == GenClass::Inverse {
                    continue;
                }
                if cg == GenClass::Defined || ch == GenClass::Defined {
                    let mut v = Scalar::zero();
                    for (u, a) in self.expand(g) {
                        for (w, b) in self.expand(h) {
                            let r = self.eval_r_words(&u, &w)?;
                            v += &(&(&a * &b) * &r);
                        }
                    }
                    found.push((g, h, v));
                }
            }
        }
        for (g, h, v) in found {
            self.table[g as usize][h as usize] = Some(v);
        }
        Ok(())
    }

    fn generator_terms(&self, h: Gen) -> Result<Vec<(Gen, Gen, Scalar)>> {
        let mut out = Vec::new();
        for (tw, c) in self.hopf.coproduct[h as usize].terms() {
            match (tw.slot(0).letters(), tw.slot(1).letters()) {
                ([a], [b]) => out.push((*a, *b, c.clone())),
                _ => {
                    return Err(Error::Invalid(alloc::format!(
                        "R on inverse generators needs the coproduct of {} to be a sum of generator pairs",
                        self.presentation().name(h)
                    )))
                }
            }
        }
        Ok(out)
    }

    fn entry(&self, g: Gen, h: Gen) -> Result<Scalar> {
        self.table[g as usize][h as usize].clone().ok_or_else(|| {
            Error::MissingEntry(alloc::format!(
                "R({},{})",
                self.presentation().name(g),
                self.presentation().name(h)
            ))
        })
    }

    /// R on adjoined inverses from `R(g⁻¹g ⊗ h) = ε(h) = R(h ⊗ g g⁻¹)`.
    fn derive_inverses(&mut self, class: &[GenClass]) -> Result<()> {
        let pres = self.hopf.pres.clone();
        let gens: Vec<Gen> = pres.generators().collect();
        let inverses: Vec<(Gen, Gen)> =
            gens.iter().filter_map(|&gi| pres.inverse_of(gi).map(|g| (gi, g))).collect();
        if inverses.is_empty() {
            return Ok(());
        }
        let plain: Vec<Gen> = gens.iter().copied().filter(|&g| class[g as usize] != GenClass::Inverse).collect();
        let col = |k: Gen, set: &[Gen]| set.iter().position(|&x| x == k);
        // R(k ⊗ g⁻¹) for non-inverse k: Σ R(h₁ ⊗ g⁻¹) R(h₂ ⊗ g) = ε(h).
        for &(gi, g) in &inverses {
            let mut sys = LinearSystem::new(plain.len());
            for &h in &plain {
                let mut row = BTreeMap::new();
                for (h1, h2, c) in self.generator_terms(h)? {
                    let j = col(h1, &plain).ok_or_else(|| {
                        Error::Invalid(String::from("coproduct of a generator mixes in inverse generators"))
                    })?;
                    let v = &c * &self.entry(h2, g)?;
                    let e: &mut Scalar = row.entry(j).or_insert_with(Scalar::zero);
                    *e += &v;
                }
                sys.add_row(row, self.hopf.counit[h as usize].clone());
            }
            let sol = sys.solve()?;
            if !sol.is_unique() {
                return Err(Error::Unsolvable(alloc::format!("R(-,{}) is not determined", pres.name(gi))));
            }
            for (j, &k) in plain.iter().enumerate() {
                self.table[k as usize][gi as usize] = Some(sol.values[j].clone());
            }
        }
        // R(g⁻¹ ⊗ k) for every k: Σ R(g⁻¹ ⊗ h₁) R(g ⊗ h₂) = ε(h).
        let mut solved = Vec::new();
        for &(gi, g) in &inverses {
            let mut sys = LinearSystem::new(gens.len());
            for &h in &gens {
                let mut row = BTreeMap::new();
                for (h1, h2, c) in self.generator_terms(h)? {
                    let v = &c * &self.entry(g, h2)?;
                    let e: &mut Scalar = row.entry(h1 as usize).or_insert_with(Scalar::zero);
                    *e += &v;
                }
                sys.add_row(row, self.hopf.counit[h as usize].clone());
            }
            let sol = sys.solve()?;
            if !sol.is_unique() {
                return Err(Error::Unsolvable(alloc::format!("R({},-) is not determined", pres.name(gi))));
            }
            solved.push((gi, sol.values));
        }
        for (gi, values) in solved {
            for (k, v) in values.into_iter().enumerate() {
                self.table[gi as usize][k] = Some(v);
            }
        }
        Ok(())
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    /// The tabled (not derived) entries.
    pub fn base_entries(&self) -> &BTreeMap<(Gen, Gen), Scalar> {
        &self.base
    }

    /// R on a generator pair, tabled or derived.
    pub fn table_entry(&self, g: Gen, h: Gen) -> Scalar {
        self.table[g as usize][h as usize].clone().expect("complete after construction")
    }

    /// Copy with one tabled entry replaced; derived entries are recomputed.
    pub fn with_base_entry(&self, g: Gen, h: Gen, value: Scalar) -> Result<Self> {
        let mut base = self.base.clone();
        base.insert((g, h), value);
        DqtHopf::new(self.hopf.clone().reset(), base)
    }

    /// Copy with a different underlying Hopf algebra (same presentation).
    pub fn with_hopf(&self, hopf: HopfAlgebra) -> Result<Self> {
        DqtHopf::new(hopf, self.base.clone())
    }

    fn free_delta(&self, w: &Word) -> NcElement {
        if let Some(v) = self.free_delta.borrow().get(w) {
            return v.clone();
        }
        let v = self.hopf.free_coproduct_word(w);
        self.free_delta.borrow_mut().insert(w.clone(), v.clone());
        v
    }

    /// `R(u ⊗ v)` on words. The second argument is split first by
    /// `R(h⊗gf) = Σ R(h₁⊗f) R(h₂⊗g)`, the first by `R(hg⊗f) = Σ R(h⊗f₁) R(g⊗f₂)`.
    pub fn eval_r_words(&self, u: &Word, v: &Word) -> Result<Scalar> {
        if u.is_empty() {
            return Ok(self.hopf.counit_word(v));
        }
        if v.is_empty() {
            return Ok(self.hopf.counit_word(u));
        }
        let key = (u.clone(), v.clone());
        if let Some(s) = self.memo.borrow().get(&key) {
            return Ok(s.clone());
        }
        let value = if u.len() == 1 && v.len() == 1 {
            self.entry(u.letters()[0], v.letters()[0])?
        } else if v.len() > 1 {
            let (rest, last) = v.letters().split_at(v.len() - 1);
            let (rest, last) = (Word::from(rest), Word::from(last));
            let mut acc = Scalar::zero();
            for (tw, c) in self.free_delta(u).terms() {
                let a = self.eval_r_words(tw.slot(0), &last)?;
                if a.is_zero() {
                    continue;
                }
                let b = self.eval_r_words(tw.slot(1), &rest)?;
                acc += &(&(c * &a) * &b);
            }
            acc
        } else {
            let (rest, last) = u.letters().split_at(u.len() - 1);
            let (rest, last) = (Word::from(rest), Word::from(last));
            let mut acc = Scalar::zero();
            for (tw, c) in self.free_delta(v).terms() {
                let a = self.eval_r_words(&rest, tw.slot(0))?;
                if a.is_zero() {
                    continue;
                }
                let b = self.eval_r_words(&last, tw.slot(1))?;
                acc += &(&(c * &a) * &b);
            }
            acc
        };
        self.memo.borrow_mut().insert(key, value.clone());
        Ok(value)
    }

    /// `R(u ⊗ v)`, bilinear in single-slot elements of H.
    pub fn eval_r(&self, u: &NcElement, v: &NcElement) -> Result<Scalar> {
        single_slot_word(u)?;
        single_slot_word(v)?;
        let mut acc = Scalar::zero();
        for (a, x) in u.terms() {
            for (b, y) in v.terms() {
                acc += &(&(x * y) * &self.eval_r_words(a.slot(0), b.slot(0))?);
            }
        }
        Ok(acc)
    }

    /// Convolution inverse `R̄(u ⊗ v) = R(S u ⊗ v)` on words.
    pub fn eval_r_inverse_words(&self, u: &Word, v: &Word) -> Result<Scalar> {
        let su = self.hopf.antipode_word(u)?;
        let mut acc = Scalar::zero();
        for (a, x) in su.terms() {
            acc += &(x * &self.eval_r_words(a.slot(0), v)?);
        }
        Ok(acc)
    }

    pub fn eval_r_inverse(&self, u: &NcElement, v: &NcElement) -> Result<Scalar> {
        single_slot_word(u)?;
        single_slot_word(v)?;
        let mut acc = Scalar::zero();
        for (a, x) in u.terms() {
            for (b, y) in v.terms() {
                acc += &(&(x * y) * &self.eval_r_inverse_words(a.slot(0), b.slot(0))?);
            }
        }
        Ok(acc)
    }

    /// Contract two H-slots of `u` through `R`, removing them.
    pub fn contract_r(&self, u: &NcElement, i: usize, j: usize) -> Result<NcElement> {
        let sig: Vec<AlgebraTag> = u
            .signature()
            .tags()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i && *k != j)
            .map(|(_, t)| t.clone())
            .collect();
        let mut out = NcElement::zero(Signature::new(sig));
        for (tw, c) in u.terms() {
            let r = self.eval_r_words(tw.slot(i), tw.slot(j))?;
            if r.is_zero() {
                continue;
            }
            let slots: Vec<Word> = tw
                .slots()
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i && *k != j)
                .map(|(_, w)| w.clone())
                .collect();
            out.add_term(TensorWord::new(slots), &(c * &r));
        }
        Ok(out)
    }
}

/// An algebra in the category of right H-comodules over a dual quasitriangular H.
pub trait Comodule {
    fn carrier(&self) -> &Presentation;
    fn hopf(&self) -> &DqtHopf;
    /// `β(w)` in carrier ⊗ H, normalized.
    fn coact_word(&self, w: &Word) -> Result<NcElement>;
    /// Product of the carrier algebra, normalized.
    fn multiply(&self, a: &NcElement, b: &NcElement) -> Result<NcElement>;
    /// Right action of H used by the crossed-module braiding. Defaults to the
    /// induced action `v ◁ h = Σ v^(1̄) R(v^(2̄) ⊗ h)`.
    fn act_word(&self, v: &Word, h: &Word) -> Result<NcElement> {
        let cv = self.coact_word(v)?;
        let mut out = NcElement::zero(Signature::single(self.carrier().tag()));
        for (tw, c) in cv.terms() {
            let r = self.hopf().eval_r_words(tw.slot(1), h)?;
            if !r.is_zero() {
                out.add_term(TensorWord::new(alloc::vec![tw.slot(0).clone()]), &(c * &r));
            }
        }
        Ok(out)
    }
}

/// Carrier ⊗ H signature of a comodule.
pub fn coaction_sig(c: &(impl Comodule + ?Sized)) -> Signature {
    Signature::pair(c.carrier().tag(), c.hopf().tag())
}

/// `β(u)` for a single-slot element.
pub fn coact(c: &(impl Comodule + ?Sized), u: &NcElement) -> Result<NcElement> {
    single_slot_word(u)?;
    coact_at(c, u, 0)
}

/// Apply β to slot `slot`.
pub fn coact_at(c: &(impl Comodule + ?Sized), u: &NcElement, slot: usize) -> Result<NcElement> {
    map_slots(u, slot, 1, &coaction_sig(c), |ws| c.coact_word(&ws[0]))
}

/// `v ◁ h` for single-slot `v` in the carrier and `h` in H, using the comodule's action.
pub fn act(c: &(impl Comodule + ?Sized), v: &NcElement, h: &NcElement) -> Result<NcElement> {
    single_slot_word(v)?;
    single_slot_word(h)?;
    let mut out = NcElement::zero(Signature::single(c.carrier().tag()));
    for (a, x) in v.terms() {
        for (b, y) in h.terms() {
            out.add_scaled(&c.act_word(a.slot(0), b.slot(0))?, &(x * y))?;
        }
    }
    Ok(out)
}

/// The induced right action `b ◁ h = Σ b^(1̄) R(b^(2̄) ⊗ h)`, regardless of any
/// action the comodule carries.
pub fn induced_action(c: &(impl Comodule + ?Sized), v: &NcElement, h: &NcElement) -> Result<NcElement> {
    let cv = coact(c, v)?;
    single_slot_word(h)?;
    let mut out = NcElement::zero(Signature::single(c.carrier().tag()));
    for (tw, x) in cv.terms() {
        let r = c.hopf().eval_r(&NcElement::word(c.hopf().tag(), tw.slot(1).clone()), h)?;
        if !r.is_zero() {
            out.add_term(TensorWord::new(alloc::vec![tw.slot(0).clone()]), &(x * &r));
        }
    }
    Ok(out)
}

fn same_hopf(v: &dyn Comodule, w: &dyn Comodule) -> Result<()> {
    if v.hopf().tag() != w.hopf().tag() {
        return Err(Error::SignatureMismatch(alloc::format!(
            "comodules over {} and {}",
            v.hopf().tag(),
            w.hopf().tag()
        )));
    }
    Ok(())
}

/// `Ψ(a ⊗ b) = Σ b^(1̄) ⊗ a^(1̄) R(a^(2̄) ⊗ b^(2̄))` on words.
pub fn braid_words(v: &dyn Comodule, w: &dyn Comodule, a: &Word, b: &Word) -> Result<NcElement> {
    let h = v.hopf();
    let ca = v.coact_word(a)?;
    let cb = w.coact_word(b)?;
    let mut out = NcElement::zero(Signature::pair(w.carrier().tag(), v.carrier().tag()));
    for (ta, x) in ca.terms() {
        for (tb, y) in cb.terms() {
            let r = h.eval_r_words(ta.slot(1), tb.slot(1))?;
            if !r.is_zero() {
                out.add_term(
                    TensorWord::new(alloc::vec![tb.slot(0).clone(), ta.slot(0).clone()]),
                    &(&(x * y) * &r),
                );
            }
        }
    }
    Ok(out)
}

/// The braiding `Ψ_{V,W}: V ⊗ W → W ⊗ V` of right comodules.
pub fn braiding(v: &dyn Comodule, w: &dyn Comodule, u: &NcElement) -> Result<NcElement> {
    same_hopf(v, w)?;
    check_pair(u, v, w)?;
    let out = Signature::pair(w.carrier().tag(), v.carrier().tag());
    map_slots(u, 0, 2, &out, |ws| braid_words(v, w, &ws[0], &ws[1]))
}

/// `Ψ⁻¹: W ⊗ V → V ⊗ W`, `Ψ⁻¹(b ⊗ a) = Σ a^(1̄) ⊗ b^(1̄) R̄(a^(2̄) ⊗ b^(2̄))`.
pub fn braiding_inverse(v: &dyn Comodule, w: &dyn Comodule, u: &NcElement) -> Result<NcElement> {
    same_hopf(v, w)?;
    check_pair(u, w, v)?;
    let h = v.hopf();
    let out = Signature::pair(v.carrier().tag(), w.carrier().tag());
    map_slots(u, 0, 2, &out, |ws| {
        let cb = w.coact_word(&ws[0])?;
        let ca = v.coact_word(&ws[1])?;
        let mut r_out = NcElement::zero(out.clone());
        for (ta, x) in ca.terms() {
            for (tb, y) in cb.terms() {
                let r = h.eval_r_inverse_words(ta.slot(1), tb.slot(1))?;
                if !r.is_zero() {
                    r_out.add_term(
                        TensorWord::new(alloc::vec![ta.slot(0).clone(), tb.slot(0).clone()]),
                        &(&(x * y) * &r),
                    );
                }
            }
        }
        Ok(r_out)
    })
}

/// Crossed-module braiding `Ψ(a ⊗ b) = Σ b^(1̄) ⊗ a ◁ b^(2̄)`, using the action
/// carried by `v`.
pub fn crossed_braid_words(v: &dyn Comodule, w: &dyn Comodule, a: &Word, b: &Word) -> Result<NcElement> {
    let cb = w.coact_word(b)?;
    let mut out = NcElement::zero(Signature::pair(w.carrier().tag(), v.carrier().tag()));
    for (tb, y) in cb.terms() {
        let acted = v.act_word(a, tb.slot(1))?;
        for (ta, x) in acted.terms() {
            out.add_term(TensorWord::new(alloc::vec![tb.slot(0).clone(), ta.slot(0).clone()]), &(x * y));
        }
    }
    Ok(out)
}

pub fn crossed_braiding(v: &dyn Comodule, w: &dyn Comodule, u: &NcElement) -> Result<NcElement> {
    same_hopf(v, w)?;
    check_pair(u, v, w)?;
    let out = Signature::pair(w.carrier().tag(), v.carrier().tag());
    map_slots(u, 0, 2, &out, |ws| crossed_braid_words(v, w, &ws[0], &ws[1]))
}

fn check_pair(u: &NcElement, a: &dyn Comodule, b: &dyn Comodule) -> Result<()> {
    let expected = Signature::pair(a.carrier().tag(), b.carrier().tag());
    if u.signature() != &expected {
        return Err(Error::SignatureMismatch(alloc::format!("{:?} vs {:?}", u.signature(), expected)));
    }
    Ok(())
}

/// An algebra B with a right coaction B → B ⊗ H extended multiplicatively.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    pres: Arc<Presentation>,
    hopf: Rc<DqtHopf>,
    coaction: Vec<NcElement>,
    memo: Memo<Word, NcElement>,
    act_memo: Memo<(Word, Word), NcElement>,
}

impl ComoduleAlgebra {
    pub fn new(pres: Arc<Presentation>, hopf: Rc<DqtHopf>, coaction: Vec<NcElement>) -> Result<Self> {
        if coaction.len() != pres.num_generators() {
            return Err(Error::MissingEntry(alloc::format!(
                "coaction table has {} entries for {} generators",
                coaction.len(),
                pres.num_generators()
            )));
        }
        let sig = Signature::pair(pres.tag(), hopf.tag());
        let ps = [&*pres, hopf.presentation()];
        let mut table = Vec::with_capacity(coaction.len());
        for e in coaction {
            if e.signature() != &sig {
                return Err(Error::SignatureMismatch(String::from("coaction entries live in B(x)H")));
            }
            table.push(normalize(&e, &ps)?);
        }
        Ok(ComoduleAlgebra {
            pres,
            hopf,
            coaction: table,
            memo: RefCell::new(BTreeMap::new()),
            act_memo: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn presentation_arc(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn hopf_rc(&self) -> &Rc<DqtHopf> {
        &self.hopf
    }

    pub fn coaction_table(&self) -> &[NcElement] {
        &self.coaction
    }

    pub fn tag(&self) -> &AlgebraTag {
        self.pres.tag()
    }

    pub fn with_coaction_entry(&self, g: Gen, value: NcElement) -> Result<Self> {
        let mut t = self.coaction.clone();
        t[g as usize] = value;
        ComoduleAlgebra::new(self.pres.clone(), self.hopf.clone(), t)
    }

    /// Same data over a different copy of H (for mutation tests).
    pub fn with_hopf(&self, hopf: Rc<DqtHopf>) -> Result<Self> {
        ComoduleAlgebra::new(self.pres.clone(), hopf, self.coaction.clone())
    }

    pub fn normal_form(&self, u: &NcElement) -> Result<NcElement> {
        self.pres.normal_form(u)
    }
}

impl Comodule for ComoduleAlgebra {
    fn carrier(&self) -> &Presentation {
        &self.pres
    }

    fn hopf(&self) -> &DqtHopf {
        &self.hopf
    }

    fn coact_word(&self, w: &Word) -> Result<NcElement> {
        if let Some(v) = self.memo.borrow().get(w) {
            return Ok(v.clone());
        }
        let ps = [&*self.pres, self.hopf.presentation()];
        let value = match w.letters() {
            [] => NcElement::one(Signature::pair(self.pres.tag(), self.hopf.tag())),
            [g] => self.coaction[*g as usize].clone(),
            letters => {
                let n = letters.len();
                let head = self.coact_word(&Word::from(&letters[..n - 1]))?;
                normalize(&head.tensor_mul(&self.coaction[letters[n - 1] as usize])?, &ps)?
            }
        };
        self.memo.borrow_mut().insert(w.clone(), value.clone());
        Ok(value)
    }

    fn multiply(&self, a: &NcElement, b: &NcElement) -> Result<NcElement> {
        self.pres.multiply(a, b)
    }

    fn act_word(&self, v: &Word, h: &Word) -> Result<NcElement> {
        let key = (v.clone(), h.clone());
        if let Some(x) = self.act_memo.borrow().get(&key) {
            return Ok(x.clone());
        }
        let cv = self.coact_word(v)?;
        let mut out = NcElement::zero(Signature::single(self.pres.tag()));
        for (tw, c) in cv.terms() {
            let r = self.hopf.eval_r_words(tw.slot(1), h)?;
            if !r.is_zero() {
                out.add_term(TensorWord::new(alloc::vec![tw.slot(0).clone()]), &(c * &r));
            }
        }
        self.act_memo.borrow_mut().insert(key, out.clone());
        Ok(out)
    }
}

impl Comodule for DqtHopf {
    fn carrier(&self) -> &Presentation {
        self.presentation()
    }

    fn hopf(&self) -> &DqtHopf {
        self
    }

    /// H as a comodule over itself by the coproduct.
    fn coact_word(&self, w: &Word) -> Result<NcElement> {
        self.coproduct_word(w)
    }

    fn multiply(&self, a: &NcElement, b: &NcElement) -> Result<NcElement> {
        HopfAlgebra::multiply(self, a, b)
    }
}

//! Axiom and property suites. Every check is an exact identity whose
//! residual (left side minus right side, normalized) must be zero.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::braided::BraidedHopf;
use crate::catalog::{self, Bundle, Loaded};
use crate::constructions::{crossed_module_residual, BosonisedHopf, SmashCoproduct};
use crate::error::{Error, Result};
use crate::ncpoly::{NcElement, Signature, TensorWord, Word};
use crate::rewrite::{normalize, Presentation};
use crate::scalar::Scalar;
use crate::structuremap::{braiding, braiding_inverse, coact_at, Comodule, DqtHopf, HopfAlgebra};
use crate::syntax::{format_element, Alphabet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The check could not be evaluated (missing entry, budget, ...).
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub suite: String,
    pub id: String,
    pub status: Status,
    /// Printed residual; `0` on pass, the error message on error.
    pub residual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status != Status::Pass)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Checks of one suite whose id starts with `prefix`.
    pub fn select<'a>(&'a self, suite: &'a str, prefix: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.suite == suite && c.id.starts_with(prefix))
    }

    /// One line per check: `suite id status residual`, tab separated.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("{}\t{}\t{}\t{}\n", c.suite, c.id, c.status.as_str(), c.residual));
        }
        s
    }

    pub fn summary(&self) -> String {
        format!(
            "{} checks: {} pass, {} fail, {} error",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Error)
        )
    }
}

/// Word-length bounds: pairings use words up to `pairing`, convolution
/// identities (antipode axioms) words up to `antipode`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub pairing: usize,
    pub antipode: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { pairing: 2, antipode: 3 }
    }
}

impl Bounds {
    /// `degree` bounds the antipode axioms; pairings go one lower.
    pub fn with_degree(degree: usize) -> Bounds {
        Bounds { pairing: degree.saturating_sub(1).max(1), antipode: degree }
    }
}

struct Suite<'a> {
    name: &'a str,
    report: Report,
}

impl<'a> Suite<'a> {
    fn new(name: &'a str) -> Self {
        Suite { name, report: Report::new() }
    }

    fn push(&mut self, id: String, status: Status, residual: String) {
        self.report.checks.push(Check { suite: self.name.to_string(), id, status, residual });
    }

    /// Record a check whose residual must vanish.
    fn zero(&mut self, id: String, alphabets: &[&dyn Alphabet], residual: Result<NcElement>) {
        match residual {
            Ok(r) if r.is_zero() => self.push(id, Status::Pass, "0".to_string()),
            Ok(r) => {
                let text = if alphabets.len() == r.degree() { format_element(&r, alphabets) } else { format!("{r:?}") };
                self.push(id, Status::Fail, text)
            }
            Err(e) => self.push(id, Status::Error, e.to_string()),
        }
    }

    fn scalar_zero(&mut self, id: String, residual: Result<Scalar>) {
        match residual {
            Ok(r) if r.is_zero() => self.push(id, Status::Pass, "0".to_string()),
            Ok(r) => self.push(id, Status::Fail, r.to_string()),
            Err(e) => self.push(id, Status::Error, e.to_string()),
        }
    }
}

fn words(pres: &Presentation, max: usize) -> Vec<Word> {
    pres.normal_words(max)
}

fn elem(pres: &Presentation, w: &Word) -> NcElement {
    NcElement::word(pres.tag(), w.clone())
}

fn rep(n: usize, a: &dyn Alphabet) -> Vec<&dyn Alphabet> {
    alloc::vec![a; n]
}

fn relation_label(pres: &Presentation, r: &NcElement) -> String {
    format_element(r, &[pres as &dyn Alphabet])
}

/// The ordinary Hopf algebra axioms.
pub fn verify_hopf(h: &HopfAlgebra, bounds: Bounds) -> Report {
    let mut s = Suite::new("hopf");
    let p = h.presentation();
    let a: &dyn Alphabet = p;
    for r in p.relation_elements() {
        let label = relation_label(p, &r);
        s.zero(format!("delta-kills:{label}"), &rep(2, a), h.coproduct(&r).and_then(|d| h.normal_form(&d)));
        s.scalar_zero(format!("counit-kills:{label}"), h.counit(&r));
        s.zero(format!("antipode-kills:{label}"), &rep(1, a), h.antipode(&r));
    }
    for g in p.generators() {
        let name = p.name(g);
        let x = p.gen_element(g);
        s.zero(
            format!("coassoc:{name}"),
            &rep(3, a),
            (|| {
                let d = h.coproduct(&x)?;
                h.coproduct_at(&d, 0)?.sub(&h.coproduct_at(&d, 1)?)
            })(),
        );
        s.zero(
            format!("counit-left:{name}"),
            &rep(1, a),
            (|| h.counit_at(&h.coproduct(&x)?, 0)?.sub(&x))(),
        );
        s.zero(
            format!("counit-right:{name}"),
            &rep(1, a),
            (|| h.counit_at(&h.coproduct(&x)?, 1)?.sub(&x))(),
        );
    }
    for w in words(p, bounds.antipode) {
        let label = p.word_text(&w);
        let x = elem(p, &w);
        let eps = || -> Result<NcElement> { Ok(NcElement::one(h.sig(1)).scale(&h.counit(&x)?)) };
        s.zero(
            format!("antipode-left:{label}"),
            &rep(1, a),
            (|| h.multiply_at(&h.antipode_at(&h.coproduct(&x)?, 0)?, 0)?.sub(&eps()?))(),
        );
        s.zero(
            format!("antipode-right:{label}"),
            &rep(1, a),
            (|| h.multiply_at(&h.antipode_at(&h.coproduct(&x)?, 1)?, 0)?.sub(&eps()?))(),
        );
    }
    for g in p.generators() {
        for k in p.generators() {
            let id = format!("antipode-antimult:{},{}", p.name(g), p.name(k));
            s.zero(
                id,
                &rep(1, a),
                (|| {
                    let prod = h.multiply(&p.gen_element(g), &p.gen_element(k))?;
                    let rev = h.multiply(&h.antipode_word(&Word::letter(k))?, &h.antipode_word(&Word::letter(g))?)?;
                    h.antipode(&prod)?.sub(&rev)
                })(),
            );
        }
    }
    s.report
}

fn sum_r(u: &NcElement, f: impl Fn(&Word, &Word) -> Result<Scalar>) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (tw, c) in u.terms() {
        acc += &(c * &f(tw.slot(0), tw.slot(1))?);
    }
    Ok(acc)
}

/// The dual quasitriangular axioms, relation compatibility of R and the
/// convolution inverse.
pub fn verify_dqt(h: &DqtHopf, bounds: Bounds) -> Report {
    let mut s = Suite::new("dqt");
    let p = h.presentation();
    let a: &dyn Alphabet = p;
    let gens: Vec<Word> = p.generators().map(Word::letter).collect();
    let short = words(p, bounds.pairing);
    let r_elem = |u: &NcElement, v: &NcElement| h.eval_r(u, v);
    // R(h ⊗ gf) = Σ R(h₁ ⊗ f) R(h₂ ⊗ g)
    for w in &short {
        for g in &gens {
            for f in &gens {
                let id = format!("law1:{};{},{}", p.word_text(w), p.word_text(g), p.word_text(f));
                s.scalar_zero(
                    id,
                    (|| {
                        let gf = h.normal_form(&elem(p, &g.concat(f)))?;
                        let lhs = r_elem(&elem(p, w), &gf)?;
                        let d = h.coproduct_word(w)?;
                        let rhs = sum_r(&d, |x, y| Ok(&h.eval_r_words(x, f)? * &h.eval_r_words(y, g)?))?;
                        Ok(&lhs - &rhs)
                    })(),
                );
            }
        }
    }
    // R(hg ⊗ f) = Σ R(h ⊗ f₁) R(g ⊗ f₂)
    for w in &short {
        for g in &gens {
            for k in &gens {
                let id = format!("law2:{},{};{}", p.word_text(g), p.word_text(k), p.word_text(w));
                s.scalar_zero(
                    id,
                    (|| {
                        let gk = h.normal_form(&elem(p, &g.concat(k)))?;
                        let lhs = r_elem(&gk, &elem(p, w))?;
                        let d = h.coproduct_word(w)?;
                        let rhs = sum_r(&d, |x, y| Ok(&h.eval_r_words(g, x)? * &h.eval_r_words(k, y)?))?;
                        Ok(&lhs - &rhs)
                    })(),
                );
            }
        }
    }
    // Σ g₁h₁ R(h₂ ⊗ g₂) = Σ R(h₁ ⊗ g₁) h₂g₂
    for x in &short {
        for y in &short {
            let id = format!("law3:{},{}", p.word_text(x), p.word_text(y));
            s.zero(
                id,
                &rep(1, a),
                (|| {
                    let dh = h.coproduct_word(x)?;
                    let dg = h.coproduct_word(y)?;
                    let mut acc = NcElement::zero(h.sig(1));
                    for (th, c) in dh.terms() {
                        for (tg, d) in dg.terms() {
                            let cd = c * d;
                            let l = h.eval_r_words(th.slot(1), tg.slot(1))?;
                            if !l.is_zero() {
                                acc.add_term(TensorWord::new(alloc::vec![tg.slot(0).concat(th.slot(0))]), &(&cd * &l));
                            }
                            let r = h.eval_r_words(th.slot(0), tg.slot(0))?;
                            if !r.is_zero() {
                                acc.add_term(TensorWord::new(alloc::vec![th.slot(1).concat(tg.slot(1))]), &-(&cd * &r));
                            }
                        }
                    }
                    h.normal_form(&acc)
                })(),
            );
        }
    }
    for r in p.relation_elements() {
        let label = relation_label(p, &r);
        for w in &short {
            let we = elem(p, w);
            s.scalar_zero(format!("r-kills-left:{label};{}", p.word_text(w)), h.eval_r(&r, &we));
            s.scalar_zero(format!("r-kills-right:{};{label}", p.word_text(w)), h.eval_r(&we, &r));
        }
    }
    for g in &gens {
        for k in &gens {
            let label = format!("{},{}", p.word_text(g), p.word_text(k));
            let conv = |inverse_first: bool| -> Result<Scalar> {
                let dg = h.coproduct_word(g)?;
                let dk = h.coproduct_word(k)?;
                let mut acc = Scalar::zero();
                for (tg, c) in dg.terms() {
                    for (tk, d) in dk.terms() {
                        let (first, second) = if inverse_first {
                            (h.eval_r_inverse_words(tg.slot(0), tk.slot(0))?, h.eval_r_words(tg.slot(1), tk.slot(1))?)
                        } else {
                            (h.eval_r_words(tg.slot(0), tk.slot(0))?, h.eval_r_inverse_words(tg.slot(1), tk.slot(1))?)
                        };
                        acc += &(&(c * d) * &(&first * &second));
                    }
                }
                Ok(&acc - &(&h.counit_word(g) * &h.counit_word(k)))
            };
            s.scalar_zero(format!("convolution-inverse-left:{label}"), conv(true));
            s.scalar_zero(format!("convolution-inverse-right:{label}"), conv(false));
        }
    }
    s.report
}

/// Coaction axioms and relation compatibility for a comodule algebra.
pub fn verify_comodule(c: &dyn Comodule) -> Report {
    let mut s = Suite::new("comodule");
    let b = c.carrier();
    let h = c.hopf();
    let ab: &dyn Alphabet = b;
    let ah: &dyn Alphabet = h.presentation();
    for r in b.relation_elements() {
        let label = relation_label(b, &r);
        s.zero(format!("coaction-kills:{label}"), &[ab, ah], coact_at(c, &r, 0).and_then(|x| normalize(&x, &[b, h.presentation()])));
    }
    for g in b.generators() {
        let name = b.name(g);
        let x = b.gen_element(g);
        s.zero(
            format!("coaction-counit:{name}"),
            &[ab],
            (|| {
                let bx = coact_at(c, &x, 0)?;
                h.counit_at(&bx, 1)?.sub(&x)
            })(),
        );
        s.zero(
            format!("coaction-coassoc:{name}"),
            &[ab, ah, ah],
            (|| {
                let bx = coact_at(c, &x, 0)?;
                let l = normalize(&coact_at(c, &bx, 0)?, &[b, h.presentation(), h.presentation()])?;
                let r = h.coproduct_at(&bx, 1)?;
                l.sub(&r)
            })(),
        );
    }
    s.report
}

/// Braided Hopf axioms for B together with the braiding it lives in.
pub fn verify_braided_hopf(bh: &BraidedHopf, bounds: Bounds) -> Report {
    let mut report = verify_comodule(bh.comodule());
    let mut s = Suite::new("braided");
    let c = bh.comodule();
    let b = c.carrier();
    let h = c.hopf();
    let ab: &dyn Alphabet = b;
    let ah: &dyn Alphabet = h.presentation();
    for r in b.relation_elements() {
        let label = relation_label(b, &r);
        s.zero(format!("delta-kills:{label}"), &rep(2, ab), bh.coproduct(&r));
        s.scalar_zero(format!("counit-kills:{label}"), bh.counit(&r));
        s.zero(format!("antipode-kills:{label}"), &rep(1, ab), bh.antipode(&r));
    }
    let gens: Vec<Word> = b.generators().map(Word::letter).collect();
    for g in &gens {
        let name = b.word_text(g);
        let x = elem(b, g);
        s.zero(
            format!("coassoc:{name}"),
            &rep(3, ab),
            (|| {
                let d = bh.coproduct(&x)?;
                bh.coproduct_at(&d, 0)?.sub(&bh.coproduct_at(&d, 1)?)
            })(),
        );
        s.zero(format!("counit-left:{name}"), &rep(1, ab), (|| bh.counit_at(&bh.coproduct(&x)?, 0)?.sub(&x))());
        s.zero(format!("counit-right:{name}"), &rep(1, ab), (|| bh.counit_at(&bh.coproduct(&x)?, 1)?.sub(&x))());
        // Δ_B is a comodule map: β_{B⊗B} Δ_B = (Δ_B ⊗ id) β.
        s.zero(
            format!("delta-covariant:{name}"),
            &[ab, ab, ah],
            (|| {
                let d = bh.coproduct(&x)?;
                let two = coact_at(c, &coact_at(c, &d, 0)?, 2)?;
                let merged = h.multiply_at(&two.permute(&[0, 2, 1, 3])?, 2)?;
                let rhs = bh.coproduct_at(&coact_at(c, &x, 0)?, 0)?;
                normalize(&merged.sub(&rhs)?, &[b, b, h.presentation()])
            })(),
        );
    }
    for w in words(b, bounds.antipode) {
        let label = b.word_text(&w);
        let x = elem(b, &w);
        let eps = || -> Result<NcElement> { Ok(NcElement::one(bh.sig(1)).scale(&bh.counit(&x)?)) };
        s.zero(
            format!("antipode-left:{label}"),
            &rep(1, ab),
            (|| bh.multiply_slots(&bh.antipode_at(&bh.coproduct(&x)?, 0)?, 0)?.sub(&eps()?))(),
        );
        s.zero(
            format!("antipode-right:{label}"),
            &rep(1, ab),
            (|| bh.multiply_slots(&bh.antipode_at(&bh.coproduct(&x)?, 1)?, 0)?.sub(&eps()?))(),
        );
    }
    for g in &gens {
        for k in &gens {
            let label = format!("{},{}", b.word_text(g), b.word_text(k));
            s.zero(
                format!("antipode-product-law:{label}"),
                &rep(1, ab),
                (|| bh.antipode_word(&g.concat(k))?.sub(&bh.antipode_product_law(g, k)?))(),
            );
            s.zero(
                format!("braiding-inverse:{label}"),
                &rep(2, ab),
                (|| {
                    let u = elem(b, g).tensor(&elem(b, k));
                    braiding_inverse(c, c, &braiding(c, c, &u)?)?.sub(&u)
                })(),
            );
            for m in &gens {
                let label = format!("{},{},{}", b.word_text(g), b.word_text(k), b.word_text(m));
                s.zero(
                    format!("braid-relation:{label}"),
                    &rep(3, ab),
                    (|| {
                        let u = elem(b, g).tensor(&elem(b, k)).tensor(&elem(b, m));
                        let psi = |x: &NcElement, slot: usize| -> Result<NcElement> {
                            crate::structuremap::map_slots(x, slot, 2, &bh.sig(2), |ws| {
                                braiding(c, c, &elem(b, &ws[0]).tensor(&elem(b, &ws[1])))
                            })
                        };
                        let l = psi(&psi(&psi(&u, 0)?, 1)?, 0)?;
                        let r = psi(&psi(&psi(&u, 1)?, 0)?, 1)?;
                        l.sub(&r)
                    })(),
                );
            }
        }
    }
    report.extend(s.report);
    report
}

/// The crossed-module condition on all generator pairs, plus compatibility
/// of the action with the relations of both algebras.
pub fn verify_crossed_module(c: &dyn Comodule) -> Report {
    let mut s = Suite::new("crossed");
    let b = c.carrier();
    let h = c.hopf();
    let hp = h.presentation();
    let ab: &dyn Alphabet = b;
    let ah: &dyn Alphabet = hp;
    for v in b.generators() {
        for k in hp.generators() {
            s.zero(
                format!("rcrossmod:{},{}", b.name(v), hp.name(k)),
                &[ab, ah],
                crossed_module_residual(c, &Word::letter(v), &Word::letter(k)),
            );
        }
    }
    let act_elem = |u: &NcElement, w: &Word| -> Result<NcElement> {
        let mut out = NcElement::zero(Signature::single(b.tag()));
        for (tw, x) in u.terms() {
            out.add_scaled(&c.act_word(tw.slot(0), w)?, x)?;
        }
        Ok(out)
    };
    for r in b.relation_elements() {
        let label = relation_label(b, &r);
        for k in hp.generators() {
            s.zero(format!("action-kills:{label}◁{}", hp.name(k)), &[ab], act_elem(&r, &Word::letter(k)));
        }
    }
    for r in hp.relation_elements() {
        let label = relation_label(hp, &r);
        for v in b.generators() {
            s.zero(
                format!("action-respects:{}◁{label}", b.name(v)),
                &[ab],
                (|| {
                    let mut out = NcElement::zero(Signature::single(b.tag()));
                    for (tw, x) in r.terms() {
                        out.add_scaled(&c.act_word(&Word::letter(v), tw.slot(0))?, x)?;
                    }
                    Ok(out)
                })(),
            );
        }
    }
    s.report
}

/// Bialgebra and antipode axioms of a bosonisation or biproduct on generators.
pub fn verify_bosonised(bo: &BosonisedHopf) -> Report {
    let mut s = Suite::new("bosonise");
    let h = bo.hopf();
    let bp = bo.braided().comodule().carrier();
    let ah: &dyn Alphabet = h.presentation();
    let ab: &dyn Alphabet = bp;
    let gens = bo.generators();
    let names = bo.generator_names();
    let four = [ah, ab, ah, ab];
    for (i, u) in gens.iter().enumerate() {
        for (j, v) in gens.iter().enumerate() {
            let label = format!("{},{}", names[i], names[j]);
            s.zero(
                format!("delta-mult:{label}"),
                &four,
                (|| {
                    let l = bo.coproduct(&bo.product(u, v)?)?;
                    let du = bo.coproduct(u)?;
                    let dv = bo.coproduct(v)?;
                    let mut r = NcElement::zero(l.signature().clone());
                    for (a, x) in du.terms() {
                        for (b, y) in dv.terms() {
                            let left = bo.product(&sub2(bo, a, 0), &sub2(bo, b, 0))?;
                            let right = bo.product(&sub2(bo, a, 2), &sub2(bo, b, 2))?;
                            r.add_scaled(&left.tensor(&right), &(x * y))?;
                        }
                    }
                    l.sub(&r)
                })(),
            );
            s.scalar_zero(
                format!("counit-mult:{label}"),
                (|| Ok(&bo.counit(&bo.product(u, v)?)? - &(&bo.counit(u)? * &bo.counit(v)?)))(),
            );
            s.zero(
                format!("projection-mult:{label}"),
                &[ah],
                (|| {
                    let l = project(bo, &bo.product(u, v)?)?;
                    let r = h.multiply(&project(bo, u)?, &project(bo, v)?)?;
                    l.sub(&r)
                })(),
            );
        }
    }
    for (i, u) in gens.iter().enumerate() {
        let name = &names[i];
        s.zero(
            format!("coassoc:{name}"),
            &[ah, ab, ah, ab, ah, ab],
            (|| {
                let d = bo.coproduct(u)?;
                let l = blockwise(bo, &d, 0)?;
                let r = blockwise(bo, &d, 2)?;
                l.sub(&r)
            })(),
        );
        s.zero(
            format!("counit:{name}"),
            &[ah, ab],
            (|| {
                let d = bo.coproduct(u)?;
                bo.counit_at(&d, 0)?.sub(u)?.add(&bo.counit_at(&d, 2)?.sub(u)?)
            })(),
        );
        s.zero(
            format!("antipode-left:{name}"),
            &[ah, ab],
            (|| bo.multiply_at(&bo.antipode_at(&bo.coproduct(u)?, 0)?, 0)?.sub(&bo.one().scale(&bo.counit(u)?)))(),
        );
        s.zero(
            format!("antipode-right:{name}"),
            &[ah, ab],
            (|| bo.multiply_at(&bo.antipode_at(&bo.coproduct(u)?, 2)?, 0)?.sub(&bo.one().scale(&bo.counit(u)?)))(),
        );
        s.zero(
            format!("projection-comult:{name}"),
            &[ah, ah],
            (|| {
                let d = bo.coproduct(u)?;
                let pd = map_project(bo, &d)?;
                pd.sub(&h.coproduct(&project(bo, u)?)?)
            })(),
        );
    }
    s.report
}

fn sub2(bo: &BosonisedHopf, t: &TensorWord, start: usize) -> NcElement {
    NcElement::term(
        bo.signature(),
        TensorWord::new(alloc::vec![t.slot(start).clone(), t.slot(start + 1).clone()]),
        Scalar::one(),
    )
}

/// `π = id ⊗ ε_B`.
fn project(bo: &BosonisedHopf, u: &NcElement) -> Result<NcElement> {
    let mut out = NcElement::zero(bo.hopf().sig(1));
    for (tw, c) in u.terms() {
        let e = bo.braided().counit_word(tw.slot(1));
        out.add_term(TensorWord::new(alloc::vec![tw.slot(0).clone()]), &(c * &e));
    }
    Ok(out)
}

fn map_project(bo: &BosonisedHopf, d: &NcElement) -> Result<NcElement> {
    let mut out = NcElement::zero(bo.hopf().sig(2));
    for (tw, c) in d.terms() {
        let e = &bo.braided().counit_word(tw.slot(1)) * &bo.braided().counit_word(tw.slot(3));
        out.add_term(TensorWord::new(alloc::vec![tw.slot(0).clone(), tw.slot(2).clone()]), &(c * &e));
    }
    Ok(out)
}

/// Apply the coproduct to the H ⊗ B block starting at `slot`.
fn blockwise(bo: &BosonisedHopf, d: &NcElement, slot: usize) -> Result<NcElement> {
    let sig = Signature::new(
        [bo.signature().tags(), bo.signature().tags()].concat(),
    );
    crate::structuremap::map_slots(d, slot, 2, &sig, |ws| {
        bo.coproduct(&NcElement::term(bo.signature(), TensorWord::new(ws.to_vec()), Scalar::one()))
    })
}

/// Both printed forms of the product and coproduct of `B(H,H) ⋉ B` agree on
/// generator pairs, and the coproduct matches the bosonisation.
pub fn verify_smash(sm: &SmashCoproduct, bo: Option<&BosonisedHopf>) -> Report {
    let mut s = Suite::new("smash");
    let ah: &dyn Alphabet = sm.hopf().presentation();
    let ab: &dyn Alphabet = sm.braided().comodule().carrier();
    let gens = sm.generators();
    for u in &gens {
        for v in &gens {
            let label = label_of(&[ah, ab], u, v);
            s.zero(
                format!("product-forms:{label}"),
                &[ah, ab],
                (|| sm.product(u, v)?.sub(&sm.product_evaluated(u, v)?))(),
            );
        }
    }
    for u in &gens {
        let label = format_element(u, &[ah, ab]);
        s.zero(
            format!("coproduct-forms:{label}"),
            &[ah, ab, ah, ab],
            (|| sm.coproduct(u)?.sub(&sm.coproduct_evaluated(u)?))(),
        );
        if let Some(bo) = bo {
            s.zero(
                format!("cobos:{label}"),
                &[ah, ab, ah, ab],
                (|| sm.coproduct(u)?.sub(&bo.coproduct(u)?))(),
            );
        }
    }
    s.report
}

fn label_of(alpha: &[&dyn Alphabet], u: &NcElement, v: &NcElement) -> String {
    format!("({})*({})", format_element(u, alpha), format_element(v, alpha))
}

/// Run every suite that applies to a loaded entry.
pub fn verify_loaded(l: &Loaded, bounds: Bounds) -> Report {
    let mut report = Report::new();
    match &l.bundle {
        Bundle::Hopf(h) => {
            report.extend(verify_hopf(h, bounds));
            report.extend(verify_dqt(h, bounds));
        }
        Bundle::Braided { bundle, .. } => {
            report.extend(verify_braided_hopf(&bundle.braided, bounds));
        }
    }
    report
}

/// Load a catalog entry and require every suite to pass, including those of
/// the Hopf algebra it lives over.
pub fn load_verified(name: &str, bounds: Bounds) -> Result<(Loaded, Report)> {
    let l = catalog::load(name)?;
    let mut report = Report::new();
    if let Bundle::Braided { hopf, .. } = &l.bundle {
        report.extend(verify_hopf(hopf, bounds));
        report.extend(verify_dqt(hopf, bounds));
    }
    report.extend(verify_loaded(&l, bounds));
    if !report.passed() {
        let first = report.failures().next().map(|c| format!("{} {}", c.suite, c.id)).unwrap_or_default();
        return Err(Error::VerificationFailed(format!("{name}: {}; first: {first}", report.summary())));
    }
    Ok((l, report))
}

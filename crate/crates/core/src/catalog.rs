//! Definition data and the built-in algebras.
//!
//! A [`Definition`] is the textual form of an algebra: generators, relations
//! and generator tables, each entry an expression string. Built-in entries are
//! written this way, and the file format parses into the same structures.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::braided::BraidedHopf;
use crate::error::{Error, Result};
use crate::ncpoly::{Gen, NcElement, Signature};
use crate::rewrite::{ConfluenceReport, Presentation, PresentationBuilder};
use crate::scalar::Scalar;
use crate::structuremap::{ComoduleAlgebra, DqtHopf, HopfAlgebra};
use crate::syntax::{parse_element, parse_scalar, Alphabet};

/// An expression string with its position in a source file (line 0: none).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub text: String,
    pub line: usize,
    pub column: usize,
}

impl Expr {
    pub fn new(text: &str) -> Expr {
        Expr { text: text.to_string(), line: 0, column: 1 }
    }

    pub fn at(text: &str, line: usize, column: usize) -> Expr {
        Expr { text: text.to_string(), line, column }
    }

    fn locate<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| e.at(self.line, self.column))
    }
}

/// `key = value` in a generator table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub key: Expr,
    pub value: Expr,
}

/// `g,h = value` in the R table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEntry {
    pub left: Expr,
    pub right: Expr,
    pub value: Expr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    DqtHopf,
    BraidedHopf,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::DqtHopf => "dqt_hopf",
            Kind::BraidedHopf => "braided_hopf",
        }
    }
}

/// One algebra in textual form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Definition {
    pub name: String,
    pub kind: Kind,
    /// Names; `g^-1` declares `g` invertible with inverse `ginv`.
    pub generators: Vec<Expr>,
    pub relations: Vec<Expr>,
    pub degree_bound: Option<usize>,
    /// Dqt Hopf algebra this one is a comodule over (braided kind only).
    pub over: Option<String>,
    pub coaction: Vec<TableEntry>,
    pub coproduct: Vec<TableEntry>,
    pub counit: Vec<TableEntry>,
    pub antipode: Vec<TableEntry>,
    pub r: Vec<PairEntry>,
    /// Free-form provenance lines, exported as comments.
    pub notes: Vec<String>,
}

impl Definition {
    pub fn new(name: &str, kind: Kind) -> Definition {
        Definition {
            name: name.to_string(),
            kind,
            generators: Vec::new(),
            relations: Vec::new(),
            degree_bound: None,
            over: None,
            coaction: Vec::new(),
            coproduct: Vec::new(),
            counit: Vec::new(),
            antipode: Vec::new(),
            r: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn presentation(&self) -> Result<(Presentation, ConfluenceReport)> {
        let mut names: Vec<&str> = Vec::new();
        let mut inverses: Vec<(&str, &Expr)> = Vec::new();
        for g in &self.generators {
            let t = g.text.trim();
            match t.strip_suffix("^-1") {
                Some(base) => inverses.push((base.trim(), g)),
                None => names.push(t),
            }
        }
        let first = self.generators.first().cloned().unwrap_or_else(|| Expr::new(""));
        let mut b = first.locate(PresentationBuilder::new(&self.name, &names))?;
        for (base, e) in inverses {
            e.locate(b.invertible(base).map(|_| ()))?;
        }
        if let Some(d) = self.degree_bound {
            b.degree_bound(d);
        }
        for r in &self.relations {
            r.locate(b.relation_str(&r.text).map(|_| ()))?;
        }
        b.build()
    }
}

fn lookup_key(pres: &Presentation, key: &Expr) -> Result<Gen> {
    let name = key.text.trim();
    let g = pres.lookup(name).or_else(|| {
        name.strip_suffix("^-1").and_then(|b| pres.lookup(b.trim())).and_then(|g| pres.inverse(g))
    });
    g.ok_or_else(|| Error::UnknownGenerator { name: name.to_string(), column: 1 }).map_err(|e| e.at(key.line, key.column))
}

/// Table indexed by generator; every generator must appear exactly once.
fn table<T>(
    pres: &Presentation,
    entries: &[TableEntry],
    what: &str,
    mut parse: impl FnMut(&Expr) -> Result<T>,
) -> Result<Vec<T>> {
    let mut slots: Vec<Option<T>> = (0..pres.num_generators()).map(|_| None).collect();
    for e in entries {
        let g = lookup_key(pres, &e.key)?;
        if slots[g as usize].is_some() {
            return Err(Error::Invalid(alloc::format!("duplicate {what} entry for {}", pres.name(g))).at(e.key.line, e.key.column));
        }
        slots[g as usize] = Some(e.value.locate(parse(&e.value))?);
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(g, v)| v.ok_or_else(|| Error::MissingEntry(alloc::format!("{what} of {}", pres.name(g as Gen)))))
        .collect()
}

fn parse_in(text: &str, slots: &[&dyn Alphabet]) -> Result<NcElement> {
    parse_element(text, slots)
}

/// Build a dual quasitriangular Hopf algebra from its definition.
pub fn build_hopf(def: &Definition) -> Result<(Rc<DqtHopf>, ConfluenceReport)> {
    let (pres, report) = def.presentation()?;
    let pres = Arc::new(pres);
    let a: &dyn Alphabet = &*pres;
    let coproduct = table(&pres, &def.coproduct, "coproduct", |e| parse_in(&e.text, &[a, a]))?;
    let counit = table(&pres, &def.counit, "counit", |e| parse_scalar(&e.text))?;
    let antipode = table(&pres, &def.antipode, "antipode", |e| parse_in(&e.text, &[a]))?;
    let hopf = HopfAlgebra::new(pres.clone(), coproduct, counit, antipode)?;
    let mut base = BTreeMap::new();
    for e in &def.r {
        let g = lookup_key(&pres, &e.left)?;
        let h = lookup_key(&pres, &e.right)?;
        let v = e.value.locate(parse_scalar(&e.value.text))?;
        if base.insert((g, h), v).is_some() {
            return Err(Error::Invalid(alloc::format!("duplicate R entry {},{}", pres.name(g), pres.name(h)))
                .at(e.left.line, e.left.column));
        }
    }
    Ok((Rc::new(DqtHopf::new(hopf, base)?), report))
}

/// A braided Hopf algebra with its comodule-algebra carrier.
#[derive(Clone, Debug)]
pub struct BraidedBundle {
    pub comodule: Rc<ComoduleAlgebra>,
    pub braided: Rc<BraidedHopf>,
}

/// Build a braided Hopf algebra in the comodules of `over`.
pub fn build_braided(def: &Definition, over: Rc<DqtHopf>) -> Result<(BraidedBundle, ConfluenceReport)> {
    let (pres, report) = def.presentation()?;
    let pres = Arc::new(pres);
    let b: &dyn Alphabet = &*pres;
    let h: &dyn Alphabet = over.presentation();
    let coaction = table(&pres, &def.coaction, "coaction", |e| parse_in(&e.text, &[b, h]))?;
    let comodule = Rc::new(ComoduleAlgebra::new(pres.clone(), over, coaction)?);
    let coproduct = table(&pres, &def.coproduct, "coproduct", |e| parse_in(&e.text, &[b, b]))?;
    let counit = table(&pres, &def.counit, "counit", |e| parse_scalar(&e.text))?;
    let antipode = table(&pres, &def.antipode, "antipode", |e| parse_in(&e.text, &[b]))?;
    let braided = Rc::new(BraidedHopf::new(comodule.clone(), coproduct, counit, antipode)?);
    Ok((BraidedBundle { comodule, braided }, report))
}

/// A loaded catalog or file entry.
#[derive(Clone, Debug)]
pub enum Bundle {
    Hopf(Rc<DqtHopf>),
    Braided { hopf: Rc<DqtHopf>, bundle: BraidedBundle },
}

impl Bundle {
    pub fn hopf(&self) -> &Rc<DqtHopf> {
        match self {
            Bundle::Hopf(h) => h,
            Bundle::Braided { hopf, .. } => hopf,
        }
    }

    pub fn braided(&self) -> Option<&BraidedBundle> {
        match self {
            Bundle::Hopf(_) => None,
            Bundle::Braided { bundle, .. } => Some(bundle),
        }
    }

    /// Presentation of the algebra itself (B for braided entries).
    pub fn presentation(&self) -> &Presentation {
        match self {
            Bundle::Hopf(h) => h.presentation(),
            Bundle::Braided { bundle, .. } => bundle.comodule.presentation(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub definition: Definition,
    pub bundle: Bundle,
    /// Completion reports, the algebra's own last.
    pub reports: Vec<ConfluenceReport>,
}

/// Build a definition; `resolve` supplies the Hopf algebra named by `over`.
pub fn build(def: &Definition, resolve: &mut dyn FnMut(&str) -> Result<Loaded>) -> Result<Loaded> {
    match def.kind {
        Kind::DqtHopf => {
            let (h, rep) = build_hopf(def)?;
            Ok(Loaded { definition: def.clone(), bundle: Bundle::Hopf(h), reports: alloc::vec![rep] })
        }
        Kind::BraidedHopf => {
            let over = def.over.as_deref().ok_or_else(|| Error::MissingEntry(String::from("coaction needs over=NAME")))?;
            let base = resolve(over)?;
            let hopf = match &base.bundle {
                Bundle::Hopf(h) => h.clone(),
                Bundle::Braided { .. } => {
                    return Err(Error::Invalid(alloc::format!("`{over}` is not a dual quasitriangular Hopf algebra")))
                }
            };
            let (bundle, rep) = build_braided(def, hopf.clone())?;
            let mut reports = base.reports;
            reports.push(rep);
            Ok(Loaded { definition: def.clone(), bundle: Bundle::Braided { hopf, bundle }, reports })
        }
    }
}

/// Names accepted by [`load`].
pub const NAMES: [&str; 6] = ["glq2", "bglq2", "aq2", "z2prime", "superline", "braidedline"];

/// Letter identification of BGL_q(2) with GL_q(2) used for transmutation.
pub const BGL_TO_GL: [(&str, &str); 6] =
    [("a", "alpha"), ("b", "beta"), ("c", "gamma"), ("d", "delta"), ("D", "C"), ("Dinv", "Cinv")];

/// Construct a catalog entry (tables checked for shape, not verified).
pub fn load(name: &str) -> Result<Loaded> {
    let def = definition(name)?;
    build(&def, &mut |n| load(n))
}

fn entries(pairs: &[(&str, &str)]) -> Vec<TableEntry> {
    pairs.iter().map(|(k, v)| TableEntry { key: Expr::new(k), value: Expr::new(v) }).collect()
}

fn exprs(items: &[&str]) -> Vec<Expr> {
    items.iter().map(|s| Expr::new(s)).collect()
}

fn notes(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// The textual definition of a catalog entry.
pub fn definition(name: &str) -> Result<Definition> {
    match name {
        "glq2" => Ok(glq2()),
        "bglq2" => Ok(bglq2()),
        "aq2" => Ok(aq2()),
        "z2prime" => Ok(z2prime()),
        "superline" => Ok(superline()),
        "braidedline" => Ok(braidedline()),
        "zgrade" => Ok(zgrade()),
        other => Err(Error::UnknownEntry(other.to_string())),
    }
}

fn glq2() -> Definition {
    let mut d = Definition::new("glq2", Kind::DqtHopf);
    d.notes = notes(&[
        "GL_q(2): quantum matrices with the determinant C inverted.",
        "R: generator table solved from the quantum-plane braidings, normalised by R(C,C) = q^6.",
        "Antipode: q-matrix inverse through C^-1; checked by verify, not assumed.",
    ]);
    d.generators = exprs(&["alpha", "beta", "gamma", "delta", "C", "C^-1"]);
    d.relations = exprs(&[
        "alpha*beta = q^-1*beta*alpha",
        "alpha*gamma = q^-1*gamma*alpha",
        "beta*delta = q^-1*delta*beta",
        "gamma*delta = q^-1*delta*gamma",
        "beta*gamma = gamma*beta",
        "alpha*delta - delta*alpha = (q^-1 - q)*beta*gamma",
        "C = alpha*delta - q^-1*beta*gamma",
    ]);
    d.coproduct = entries(&[
        ("alpha", "alpha(x)alpha + beta(x)gamma"),
        ("beta", "alpha(x)beta + beta(x)delta"),
        ("gamma", "gamma(x)alpha + delta(x)gamma"),
        ("delta", "gamma(x)beta + delta(x)delta"),
        ("C", "C(x)C"),
        ("Cinv", "Cinv(x)Cinv"),
    ]);
    d.counit = entries(&[("alpha", "1"), ("beta", "0"), ("gamma", "0"), ("delta", "1"), ("C", "1"), ("Cinv", "1")]);
    d.antipode = entries(&[
        ("alpha", "Cinv*delta"),
        ("beta", "-q*Cinv*beta"),
        ("gamma", "-q^-1*Cinv*gamma"),
        ("delta", "Cinv*alpha"),
        ("C", "Cinv"),
        ("Cinv", "C"),
    ]);
    let gens = ["alpha", "beta", "gamma", "delta"];
    for g in gens {
        for h in gens {
            let v = match (g, h) {
                ("alpha", "alpha") | ("delta", "delta") => "q^2",
                ("alpha", "delta") | ("delta", "alpha") => "q",
                ("beta", "gamma") => "q^2 - 1",
                _ => "0",
            };
            d.r.push(PairEntry { left: Expr::new(g), right: Expr::new(h), value: Expr::new(v) });
        }
    }
    d
}

fn bglq2() -> Definition {
    let mut d = Definition::new("bglq2", Kind::BraidedHopf);
    d.notes = notes(&[
        "BGL_q(2): braided matrices with the braided determinant D inverted.",
        "Coaction: right adjoint coaction of GL_q(2) read through a=alpha, b=beta, c=gamma, d=delta, D=C.",
        "Antipode: solved from the braided antipode axioms; regenerated by a test.",
    ]);
    d.over = Some(String::from("glq2"));
    d.generators = exprs(&["a", "b", "c", "d", "D", "D^-1"]);
    d.relations = exprs(&[
        "b*a = q^2*a*b",
        "c*a = q^-2*a*c",
        "d*a = a*d",
        "b*c = c*b + (1 - q^-2)*a*(d - a)",
        "d*b = b*d + (1 - q^-2)*a*b",
        "c*d = d*c + (1 - q^-2)*c*a",
        "D = a*d - q^2*c*b",
    ]);
    d.coaction = entries(&BGL_COACTION);
    d.coproduct = entries(&[
        ("a", "a(x)a + b(x)c"),
        ("b", "a(x)b + b(x)d"),
        ("c", "c(x)a + d(x)c"),
        ("d", "c(x)b + d(x)d"),
        ("D", "D(x)D"),
        ("Dinv", "Dinv(x)Dinv"),
    ]);
    d.counit = entries(&[("a", "1"), ("b", "0"), ("c", "0"), ("d", "1"), ("D", "1"), ("Dinv", "1")]);
    d.antipode = entries(&BGL_ANTIPODE);
    d
}

/// Adjoint coaction of GL_q(2) on its generators, letters renamed.
pub const BGL_COACTION: [(&str, &str); 6] = [
    ("a", "(-q^2 + 1)*a(x)1 + q^2*a(x)alpha*delta*Cinv + q*b(x)gamma*delta*Cinv - q^2*c(x)alpha*beta*Cinv + q^2*d(x)1 - q^2*d(x)alpha*delta*Cinv"),
    ("b", "q*a(x)beta*delta*Cinv + b(x)delta^2*Cinv - q*c(x)beta^2*Cinv - q*d(x)beta*delta*Cinv"),
    ("c", "-a(x)alpha*gamma*Cinv - q^-1*b(x)gamma^2*Cinv + c(x)alpha^2*Cinv + d(x)alpha*gamma*Cinv"),
    ("d", "a(x)1 - a(x)alpha*delta*Cinv - q^-1*b(x)gamma*delta*Cinv + c(x)alpha*beta*Cinv + d(x)alpha*delta*Cinv"),
    ("D", "D(x)1"),
    ("Dinv", "Dinv(x)1"),
];

/// Solved braided antipode of BGL_q(2).
pub const BGL_ANTIPODE: [(&str, &str); 6] = [
    ("a", "(-q^2 + 1)*a*Dinv + q^2*d*Dinv"),
    ("b", "-q^2*b*Dinv"),
    ("c", "-q^2*c*Dinv"),
    ("d", "a*Dinv"),
    ("D", "Dinv"),
    ("Dinv", "D"),
];

fn aq2() -> Definition {
    let mut d = Definition::new("aq2", Kind::BraidedHopf);
    d.notes = notes(&["Quantum plane with linear coaddition; (x,y) transforms as a row vector under GL_q(2)."]);
    d.over = Some(String::from("glq2"));
    d.generators = exprs(&["x", "y"]);
    d.relations = exprs(&["y*x = q*x*y"]);
    d.coaction = entries(&[("x", "x(x)alpha + y(x)gamma"), ("y", "x(x)beta + y(x)delta")]);
    d.coproduct = entries(&[("x", "x(x)1 + 1(x)x"), ("y", "y(x)1 + 1(x)y")]);
    d.counit = entries(&[("x", "0"), ("y", "0")]);
    d.antipode = entries(&[("x", "-x"), ("y", "-y")]);
    d
}

fn z2prime() -> Definition {
    let mut d = Definition::new("z2prime", Kind::DqtHopf);
    d.notes = notes(&["Group algebra of Z_2 with R(g,g) = -1: comodules are super vector spaces."]);
    d.generators = exprs(&["g"]);
    d.relations = exprs(&["g*g = 1"]);
    d.coproduct = entries(&[("g", "g(x)g")]);
    d.counit = entries(&[("g", "1")]);
    d.antipode = entries(&[("g", "g")]);
    d.r = alloc::vec![PairEntry { left: Expr::new("g"), right: Expr::new("g"), value: Expr::new("-1") }];
    d
}

fn superline() -> Definition {
    let mut d = Definition::new("superline", Kind::BraidedHopf);
    d.notes = notes(&["One odd generator with theta^2 = 0; the relation survives the coproduct because the cross terms theta(x)theta cancel under the odd braiding."]);
    d.over = Some(String::from("z2prime"));
    d.generators = exprs(&["theta"]);
    d.relations = exprs(&["theta*theta = 0"]);
    d.coaction = entries(&[("theta", "theta(x)g")]);
    d.coproduct = entries(&[("theta", "theta(x)1 + 1(x)theta")]);
    d.counit = entries(&[("theta", "0")]);
    d.antipode = entries(&[("theta", "-theta")]);
    d
}

fn zgrade() -> Definition {
    let mut d = Definition::new("zgrade", Kind::DqtHopf);
    d.notes = notes(&["Group algebra of Z with R(g,g) = q: comodules are Z-graded spaces."]);
    d.generators = exprs(&["g", "g^-1"]);
    d.coproduct = entries(&[("g", "g(x)g"), ("ginv", "ginv(x)ginv")]);
    d.counit = entries(&[("g", "1"), ("ginv", "1")]);
    d.antipode = entries(&[("g", "ginv"), ("ginv", "g")]);
    d.r = alloc::vec![PairEntry { left: Expr::new("g"), right: Expr::new("g"), value: Expr::new("q") }];
    d
}

fn braidedline() -> Definition {
    let mut d = Definition::new("braidedline", Kind::BraidedHopf);
    d.notes = notes(&["k[x] with x of degree 1, so Psi(x(x)x) = q*x(x)x."]);
    d.over = Some(String::from("zgrade"));
    d.generators = exprs(&["x"]);
    d.coaction = entries(&[("x", "x(x)g")]);
    d.coproduct = entries(&[("x", "x(x)1 + 1(x)x")]);
    d.counit = entries(&[("x", "0")]);
    d.antipode = entries(&[("x", "-x")]);
    d
}

/// Generator map for [`BGL_TO_GL`] between the two presentations.
pub fn identification(bgl: &Presentation, gl: &Presentation) -> Result<Vec<Gen>> {
    bgl.generators()
        .map(|g| {
            let name = bgl.name(g);
            let target = BGL_TO_GL
                .iter()
                .find(|(b, _)| *b == name)
                .ok_or_else(|| Error::MissingEntry(alloc::format!("identification of {name}")))?
                .1;
            gl.generator(target)
        })
        .collect()
}

/// Rename the letters of single-slot elements of H by the inverse of `map`.
pub fn rename_back(map: &[Gen], target: &Presentation, u: &NcElement) -> Result<NcElement> {
    let mut inv: BTreeMap<Gen, Gen> = BTreeMap::new();
    for (b, &h) in map.iter().enumerate() {
        inv.insert(h, b as Gen);
    }
    let mut out = NcElement::zero(Signature::single(target.tag()));
    for (tw, c) in u.terms() {
        let mut slots = Vec::new();
        for w in tw.slots() {
            let letters: Option<Vec<Gen>> = w.letters().iter().map(|g| inv.get(g).copied()).collect();
            slots.push(crate::ncpoly::Word::from_letters(
                letters.ok_or_else(|| Error::MissingEntry(String::from("letter outside the identification")))?,
            ));
        }
        if slots.len() != 1 {
            return Err(Error::SignatureMismatch(String::from("rename_back expects one slot")));
        }
        out.add_term(crate::ncpoly::TensorWord::new(slots), c);
    }
    target.normal_form(&out)
}

/// Scalar parsed from catalog text; convenience for tests.
pub fn scalar(text: &str) -> Scalar {
    parse_scalar(text).expect("valid scalar")
}

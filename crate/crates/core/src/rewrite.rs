//! Presented algebras as rewriting systems.
//!
//! Relations are oriented under the degree-lexicographic order (generator
//! precedence = declaration order) and completed by resolving overlaps of
//! left-hand sides up to a degree bound. Normal forms computed after
//! completion are unique for every element whose reductions stay inside the
//! certified degree range.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ncpoly::{AlgebraTag, Gen, NcElement, Signature, TensorWord, Word};
use crate::scalar::Scalar;
use crate::syntax::{self, Alphabet};

/// A single-slot polynomial keyed by word.
pub type Poly = BTreeMap<Word, Scalar>;

pub const DEFAULT_DEGREE_BOUND: usize = 4;
pub const DEFAULT_STEP_BUDGET: usize = 1_000_000;
const DEFAULT_PAIR_BUDGET: usize = 200_000;
const MAX_RULES: usize = 2_000;

fn poly_add(p: &mut Poly, w: Word, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(e) => {
            *e += c;
            if e.is_zero() {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c.clone());
        }
    }
}

/// `lhs → rhs` with every word of `rhs` strictly below `lhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Poly,
}

/// A relation as declared, `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Poly,
    pub rhs: Poly,
}

impl Relation {
    /// `lhs - rhs`.
    pub fn difference(&self) -> Poly {
        let mut p = self.lhs.clone();
        for (w, c) in &self.rhs {
            poly_add(&mut p, w.clone(), &-c);
        }
        p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Rewrite the leftmost redex first.
    #[default]
    Leftmost,
    /// Rewrite the rightmost redex first.
    Rightmost,
}

fn find_redex(rules: &[RewriteRule], w: &Word, strategy: Strategy) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, r) in rules.iter().enumerate() {
        let pos = match strategy {
            Strategy::Leftmost => w.find(&r.lhs),
            Strategy::Rightmost => w.rfind(&r.lhs),
        };
        if let Some(p) = pos {
            let better = match (best, strategy) {
                (None, _) => true,
                (Some((_, bp)), Strategy::Leftmost) => p < bp,
                (Some((_, bp)), Strategy::Rightmost) => p > bp,
            };
            if better {
                best = Some((i, p));
            }
        }
    }
    best
}

fn reduce_with(rules: &[RewriteRule], p: Poly, strategy: Strategy, budget: usize) -> Result<Poly> {
    let mut pending = p;
    let mut done = Poly::new();
    let mut steps = 0usize;
    // Rewriting only produces smaller words, so taking the largest pending word
    // each time visits every word at most once.
    while let Some((w, c)) = pending.pop_last() {
        match find_redex(rules, &w, strategy) {
            None => poly_add(&mut done, w, &c),
            Some((ri, pos)) => {
                steps += 1;
                if steps > budget {
                    return Err(Error::NonTerminating { steps: budget });
                }
                let rule = &rules[ri];
                let letters = w.letters();
                let prefix = &letters[..pos];
                let suffix = &letters[pos + rule.lhs.len()..];
                for (rw, rc) in &rule.rhs {
                    poly_add(&mut pending, Word::wrap(prefix, rw.letters(), suffix), &(&c * rc));
                }
            }
        }
    }
    Ok(done)
}

/// Outcome of one overlap during completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairOutcome {
    Resolved,
    /// The overlap produced a new rule with this left-hand side.
    Added(Word),
    /// Overlap word longer than the degree bound; not examined.
    BeyondBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPair {
    pub left: Word,
    pub right: Word,
    pub overlap: Word,
    pub outcome: PairOutcome,
}

/// What completion did: every overlap it looked at and every rule it adjoined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub algebra: AlgebraTag,
    pub degree_bound: usize,
    pub pairs: Vec<CriticalPair>,
    pub added: Vec<RewriteRule>,
    pub final_rules: Vec<RewriteRule>,
    /// Overlaps of the final rules within the bound whose two reductions differ.
    pub unjoinable: usize,
}

impl ConfluenceReport {
    /// Pairs within the bound that did not reduce to a common form and were not repaired.
    pub fn unresolved(&self) -> usize {
        self.unjoinable
    }

    pub fn beyond_bound(&self) -> usize {
        self.pairs.iter().filter(|p| p.outcome == PairOutcome::BeyondBound).count()
    }

    pub fn checked(&self) -> usize {
        self.pairs.len() - self.beyond_bound()
    }

    /// Stable text rendering, used for golden files.
    pub fn render(&self, pres: &Presentation) -> String {
        let mut out = String::new();
        out.push_str(&alloc::format!("algebra {}\n", self.algebra));
        out.push_str(&alloc::format!("degree_bound {}\n", self.degree_bound));
        out.push_str(&alloc::format!(
            "pairs_checked {}\npairs_beyond_bound {}\nrules_added {}\nunresolved {}\n",
            self.checked(),
            self.beyond_bound(),
            self.added.len(),
            self.unresolved()
        ));
        out.push_str("[pairs]\n");
        for p in &self.pairs {
            let outcome = match &p.outcome {
                PairOutcome::Resolved => String::from("resolved"),
                PairOutcome::Added(w) => alloc::format!("added {}", pres.word_text(w)),
                PairOutcome::BeyondBound => String::from("beyond-bound"),
            };
            out.push_str(&alloc::format!(
                "{} | {} | {} | {}\n",
                pres.word_text(&p.left),
                pres.word_text(&p.right),
                pres.word_text(&p.overlap),
                outcome
            ));
        }
        out.push_str("[added]\n");
        for r in &self.added {
            out.push_str(&pres.rule_text(r));
            out.push('\n');
        }
        out.push_str("[rules]\n");
        for r in &self.final_rules {
            out.push_str(&pres.rule_text(r));
            out.push('\n');
        }
        out
    }
}

/// Generators, declared relations and the completed rewriting system of an
/// associative unital algebra.
#[derive(Clone, Debug)]
pub struct Presentation {
    tag: AlgebraTag,
    names: Vec<String>,
    /// For an adjoined inverse generator, the generator it inverts.
    inverse_of: Vec<Option<Gen>>,
    /// For an invertible generator, its adjoined inverse.
    inverse: Vec<Option<Gen>>,
    relations: Vec<Relation>,
    definitions: BTreeMap<Gen, Poly>,
    rules: Vec<RewriteRule>,
    degree_bound: usize,
    step_budget: usize,
}

impl Alphabet for Presentation {
    fn tag(&self) -> &AlgebraTag {
        &self.tag
    }

    fn lookup(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| i as Gen)
    }

    fn inverse_of_gen(&self, g: Gen) -> Option<Gen> {
        self.inverse.get(g as usize).copied().flatten().or_else(|| self.inverse_of.get(g as usize).copied().flatten())
    }

    fn gen_name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }
}

impl Presentation {
    pub fn tag(&self) -> &AlgebraTag {
        &self.tag
    }

    pub fn signature(&self) -> Signature {
        Signature::single(&self.tag)
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> {
        0..self.names.len() as Gen
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }

    pub fn generator(&self, name: &str) -> Result<Gen> {
        self.lookup(name)
            .ok_or_else(|| Error::UnknownGenerator { name: name.to_string(), column: 0 })
    }

    /// Generator `g` as a single-slot element.
    pub fn gen_element(&self, g: Gen) -> NcElement {
        NcElement::generator(&self.tag, g)
    }

    pub fn one(&self) -> NcElement {
        NcElement::one(self.signature())
    }

    pub fn is_inverse_generator(&self, g: Gen) -> bool {
        self.inverse_of[g as usize].is_some()
    }

    pub fn inverse_of(&self, g: Gen) -> Option<Gen> {
        self.inverse_of[g as usize]
    }

    pub fn inverse(&self, g: Gen) -> Option<Gen> {
        self.inverse[g as usize]
    }

    /// Generators declared invertible, in declaration order.
    pub fn invertible(&self) -> Vec<Gen> {
        self.generators().filter(|&g| self.inverse(g).is_some()).collect()
    }

    /// Number of generators declared by the user (adjoined inverses excluded).
    pub fn declared_generators(&self) -> Vec<Gen> {
        self.generators().filter(|&g| !self.is_inverse_generator(g)).collect()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Generators introduced by a relation of the form `g = expression in other generators`.
    pub fn definitions(&self) -> &BTreeMap<Gen, Poly> {
        &self.definitions
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn step_budget(&self) -> usize {
        self.step_budget
    }

    /// All relations the algebra must kill: declared relations plus inverse rules,
    /// each as a single-slot element `lhs - rhs`.
    pub fn relation_elements(&self) -> Vec<NcElement> {
        let mut out: Vec<NcElement> = self.relations.iter().map(|r| self.poly_element(&r.difference())).collect();
        for g in self.generators() {
            if let Some(gi) = self.inverse(g) {
                for w in [Word::from_letters(alloc::vec![g, gi]), Word::from_letters(alloc::vec![gi, g])] {
                    let mut p = Poly::new();
                    p.insert(w, Scalar::one());
                    p.insert(Word::empty(), -Scalar::one());
                    out.push(self.poly_element(&p));
                }
            }
        }
        out
    }

    /// Rule differences `lhs - rhs` of the completed system.
    pub fn rule_elements(&self) -> Vec<NcElement> {
        self.rules
            .iter()
            .map(|r| {
                let mut p = r.rhs.iter().map(|(w, c)| (w.clone(), -c)).collect::<Poly>();
                poly_add(&mut p, r.lhs.clone(), &Scalar::one());
                self.poly_element(&p)
            })
            .collect()
    }

    pub fn poly_element(&self, p: &Poly) -> NcElement {
        let mut e = NcElement::zero(self.signature());
        for (w, c) in p {
            e.add_term(TensorWord::new(alloc::vec![w.clone()]), c);
        }
        e
    }

    pub fn reduce_poly(&self, p: Poly, strategy: Strategy) -> Result<Poly> {
        reduce_with(&self.rules, p, strategy, self.step_budget)
    }

    pub fn normal_word(&self, w: &Word) -> Result<Poly> {
        let mut p = Poly::new();
        p.insert(w.clone(), Scalar::one());
        self.reduce_poly(p, Strategy::Leftmost)
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.rules.iter().all(|r| !w.contains(&r.lhs))
    }

    /// Normal form of an element all of whose slots belong to this algebra.
    pub fn normal_form(&self, u: &NcElement) -> Result<NcElement> {
        self.normal_form_with(u, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, u: &NcElement, strategy: Strategy) -> Result<NcElement> {
        let pres: Vec<&Presentation> = alloc::vec![self; u.degree()];
        normalize_with(u, &pres, strategy)
    }

    pub fn is_zero(&self, u: &NcElement) -> Result<bool> {
        Ok(self.normal_form(u)?.is_zero())
    }

    /// Product in the algebra of two single-slot elements, normalized.
    pub fn multiply(&self, u: &NcElement, v: &NcElement) -> Result<NcElement> {
        self.normal_form(&u.tensor_mul(v)?)
    }

    /// Irreducible words of length at most `max_len`, in term order.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        let mut out = alloc::vec![Word::empty()];
        let mut frontier = alloc::vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in self.generators() {
                    let ext = w.concat(&Word::letter(g));
                    if self.is_irreducible(&ext) {
                        next.push(ext);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    pub fn word_text(&self, w: &Word) -> String {
        syntax::format_word(self, w)
    }

    pub fn poly_text(&self, p: &Poly) -> String {
        syntax::format_element(&self.poly_element(p), &[self as &dyn Alphabet])
    }

    pub fn rule_text(&self, r: &RewriteRule) -> String {
        alloc::format!("{} -> {}", self.word_text(&r.lhs), self.poly_text(&r.rhs))
    }

    /// Parse a single-slot element over this alphabet.
    pub fn parse(&self, text: &str) -> Result<NcElement> {
        let e = syntax::parse_element(text, &[self as &dyn Alphabet])?;
        self.normal_form(&e)
    }

    /// Rebuild with a different degree bound (re-running completion).
    pub fn rebuild(&self, degree_bound: usize) -> Result<(Presentation, ConfluenceReport)> {
        let mut b = PresentationBuilder::new(&self.tag, &self.declared_names())?;
        for g in self.invertible() {
            b.invertible(self.name(g))?;
        }
        for r in &self.relations {
            b.relation(r.lhs.clone(), r.rhs.clone());
        }
        b.degree_bound(degree_bound).step_budget(self.step_budget).build()
    }

    fn declared_names(&self) -> Vec<&str> {
        self.declared_generators().into_iter().map(|g| self.name(g)).collect()
    }
}

/// Normalize each slot of `u` by the presentation assigned to that slot.
pub fn normalize(u: &NcElement, pres: &[&Presentation]) -> Result<NcElement> {
    normalize_with(u, pres, Strategy::Leftmost)
}

pub fn normalize_with(u: &NcElement, pres: &[&Presentation], strategy: Strategy) -> Result<NcElement> {
    if pres.len() != u.degree() {
        return Err(Error::SignatureMismatch(alloc::format!(
            "{} presentations for {} slots",
            pres.len(),
            u.degree()
        )));
    }
    for (p, t) in pres.iter().zip(u.signature().tags()) {
        if p.tag() != t {
            return Err(Error::SignatureMismatch(alloc::format!("slot tagged {t} normalized by {}", p.tag())));
        }
    }
    if u.is_zero() {
        return Ok(u.clone());
    }
    let mut caches: Vec<BTreeMap<Word, Poly>> = alloc::vec![BTreeMap::new(); pres.len()];
    let mut out = NcElement::zero(u.signature().clone());
    for (tw, c) in u.terms() {
        // Expand the product of the per-slot normal forms.
        let mut partial: Vec<(Vec<Word>, Scalar)> = alloc::vec![(Vec::new(), c.clone())];
        for (i, w) in tw.slots().iter().enumerate() {
            if !caches[i].contains_key(w) {
                let mut p = Poly::new();
                p.insert(w.clone(), Scalar::one());
                let nf = reduce_with(&pres[i].rules, p, strategy, pres[i].step_budget)?;
                caches[i].insert(w.clone(), nf);
            }
            let nf = &caches[i][w];
            let mut next = Vec::with_capacity(partial.len() * nf.len());
            for (ws, a) in &partial {
                for (nw, b) in nf {
                    let mut ws2 = ws.clone();
                    ws2.push(nw.clone());
                    next.push((ws2, a * b));
                }
            }
            partial = next;
        }
        for (ws, a) in partial {
            out.add_term(TensorWord::new(ws), &a);
        }
    }
    Ok(out)
}

/// Collects generators and relations, then orients and completes them.
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    tag: AlgebraTag,
    names: Vec<String>,
    declared: usize,
    inverse_of: Vec<Option<Gen>>,
    inverse: Vec<Option<Gen>>,
    relations: Vec<Relation>,
    degree_bound: usize,
    step_budget: usize,
    pair_budget: usize,
}

impl Alphabet for PresentationBuilder {
    fn tag(&self) -> &AlgebraTag {
        &self.tag
    }

    fn lookup(&self, name: &str) -> Option<Gen> {
        self.names.iter().position(|n| n == name).map(|i| i as Gen)
    }

    fn inverse_of_gen(&self, g: Gen) -> Option<Gen> {
        self.inverse.get(g as usize).copied().flatten().or_else(|| self.inverse_of.get(g as usize).copied().flatten())
    }

    fn gen_name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && name != "q"
}

impl PresentationBuilder {
    pub fn new(tag: &str, generators: &[&str]) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        for g in generators {
            if !valid_name(g) {
                return Err(Error::Invalid(alloc::format!("invalid generator name `{g}`")));
            }
            if names.iter().any(|n| n == g) {
                return Err(Error::Invalid(alloc::format!("duplicate generator `{g}`")));
            }
            names.push(g.to_string());
        }
        let n = names.len();
        Ok(PresentationBuilder {
            tag: Arc::from(tag),
            names,
            declared: n,
            inverse_of: alloc::vec![None; n],
            inverse: alloc::vec![None; n],
            relations: Vec::new(),
            degree_bound: DEFAULT_DEGREE_BOUND,
            step_budget: DEFAULT_STEP_BUDGET,
            pair_budget: DEFAULT_PAIR_BUDGET,
        })
    }

    /// Adjoin `{name}inv` with rules `g·ginv → 1`, `ginv·g → 1`.
    pub fn invertible(&mut self, name: &str) -> Result<&mut Self> {
        let g = self
            .lookup(name)
            .filter(|&g| (g as usize) < self.declared)
            .ok_or_else(|| Error::UnknownGenerator { name: name.to_string(), column: 0 })?;
        if self.inverse[g as usize].is_some() {
            return Ok(self);
        }
        let inv_name = alloc::format!("{name}inv");
        if self.lookup(&inv_name).is_some() {
            return Err(Error::Invalid(alloc::format!("generator `{inv_name}` already declared")));
        }
        let gi = self.names.len() as Gen;
        self.names.push(inv_name);
        self.inverse_of.push(Some(g));
        self.inverse.push(None);
        self.inverse[g as usize] = Some(gi);
        Ok(self)
    }

    pub fn relation(&mut self, lhs: Poly, rhs: Poly) -> &mut Self {
        self.relations.push(Relation { lhs, rhs });
        self
    }

    /// Parse `lhs = rhs`.
    pub fn relation_str(&mut self, text: &str) -> Result<&mut Self> {
        let (l, r) = text.split_once('=').ok_or_else(|| Error::Syntax {
            message: String::from("relation needs `=`"),
            column: text.len(),
        })?;
        let lhs = syntax::parse_element(l, &[self as &dyn Alphabet])?;
        let rhs = syntax::parse_element(r, &[self as &dyn Alphabet]).map_err(|e| syntax::shift_column(e, l.len() + 1))?;
        let to_poly = |e: NcElement| -> Poly { e.into_terms().map(|(tw, c)| (tw.slot(0).clone(), c)).collect() };
        self.relations.push(Relation { lhs: to_poly(lhs), rhs: to_poly(rhs) });
        Ok(self)
    }

    pub fn degree_bound(&mut self, d: usize) -> &mut Self {
        self.degree_bound = d;
        self
    }

    pub fn step_budget(&mut self, s: usize) -> &mut Self {
        self.step_budget = s;
        self
    }

    pub fn pair_budget(&mut self, s: usize) -> &mut Self {
        self.pair_budget = s;
        self
    }

    pub fn build(&self) -> Result<(Presentation, ConfluenceReport)> {
        let mut definitions = BTreeMap::new();
        for rel in &self.relations {
            if rel.lhs.len() == 1 {
                let (w, c) = rel.lhs.iter().next().expect("one term");
                if w.len() == 1 && c.is_one() {
                    let g = w.letters()[0];
                    if !rel.rhs.keys().any(|rw| rw.letters().contains(&g)) {
                        definitions.insert(g, rel.rhs.clone());
                    }
                }
            }
        }
        let mut initial: Vec<Poly> = self.relations.iter().map(Relation::difference).collect();
        for (g, gi) in self.inverse.iter().enumerate() {
            if let Some(gi) = gi {
                for w in [
                    Word::from_letters(alloc::vec![g as Gen, *gi]),
                    Word::from_letters(alloc::vec![*gi, g as Gen]),
                ] {
                    let mut p = Poly::new();
                    p.insert(w, Scalar::one());
                    p.insert(Word::empty(), -Scalar::one());
                    initial.push(p);
                }
            }
        }
        let mut completion = Completion {
            rules: Vec::new(),
            step_budget: self.step_budget,
        };
        for p in initial {
            completion.insert(p)?;
        }
        let report = completion.run(&self.tag, self.degree_bound, self.pair_budget)?;
        let pres = Presentation {
            tag: self.tag.clone(),
            names: self.names.clone(),
            inverse_of: self.inverse_of.clone(),
            inverse: self.inverse.clone(),
            relations: self.relations.clone(),
            definitions,
            rules: completion.rules,
            degree_bound: self.degree_bound,
            step_budget: self.step_budget,
        };
        Ok((pres, report))
    }
}

struct Completion {
    rules: Vec<RewriteRule>,
    step_budget: usize,
}

impl Completion {
    fn reduce(&self, p: Poly) -> Result<Poly> {
        reduce_with(&self.rules, p, Strategy::Leftmost, self.step_budget)
    }

    /// Turn a nonzero reduced polynomial into a rule with a monic leading word.
    fn orient(&self, p: Poly) -> Result<RewriteRule> {
        let (lead, c) = p.iter().next_back().map(|(w, c)| (w.clone(), c.clone())).expect("nonzero");
        if lead.is_empty() {
            return Err(Error::UnorientablePair(alloc::format!("derived relation {} = 0 collapses the algebra", c)));
        }
        let mut rhs = Poly::new();
        for (w, a) in p.iter() {
            if *w == lead {
                continue;
            }
            let q = a.div_exact(&c).ok_or_else(|| {
                Error::UnorientablePair(alloc::format!("leading coefficient {c} does not divide {a}"))
            })?;
            rhs.insert(w.clone(), -q);
        }
        Ok(RewriteRule { lhs: lead, rhs })
    }

    /// Adjoin the relation `p = 0`, keeping the rule set inter-reduced.
    /// Returns the left-hand sides of rules created.
    fn insert(&mut self, p: Poly) -> Result<Vec<Word>> {
        let mut queue = alloc::vec![p];
        let mut created = Vec::new();
        while let Some(p) = queue.pop() {
            let p = self.reduce(p)?;
            if p.is_empty() {
                continue;
            }
            let rule = self.orient(p)?;
            let mut kept = Vec::with_capacity(self.rules.len());
            for r in core::mem::take(&mut self.rules) {
                if r.lhs.contains(&rule.lhs) {
                    let mut diff = r.rhs.iter().map(|(w, c)| (w.clone(), -c)).collect::<Poly>();
                    poly_add(&mut diff, r.lhs.clone(), &Scalar::one());
                    queue.push(diff);
                } else {
                    kept.push(r);
                }
            }
            created.push(rule.lhs.clone());
            kept.push(rule);
            kept.sort_by(|a, b| a.lhs.cmp(&b.lhs));
            self.rules = kept;
            if self.rules.len() > MAX_RULES {
                return Err(Error::CompletionBudgetExceeded(alloc::format!("more than {MAX_RULES} rules")));
            }
            // Right-hand sides stay in normal form.
            for i in 0..self.rules.len() {
                let rhs = core::mem::take(&mut self.rules[i].rhs);
                self.rules[i].rhs = self.reduce(rhs)?;
            }
        }
        created.retain(|w| self.rules.iter().any(|r| &r.lhs == w));
        Ok(created)
    }

    fn run(&mut self, tag: &AlgebraTag, degree_bound: usize, pair_budget: usize) -> Result<ConfluenceReport> {
        let mut processed: BTreeSet<(Word, Word, usize)> = BTreeSet::new();
        let mut pairs = Vec::new();
        let mut added = Vec::new();
        loop {
            let mut batch: Vec<(Word, Word, usize, Word)> = Vec::new();
            for r1 in &self.rules {
                for r2 in &self.rules {
                    let (a, b) = (r1.lhs.letters(), r2.lhs.letters());
                    for k in 1..a.len().min(b.len()) {
                        if a[a.len() - k..] == b[..k] {
                            let key = (r1.lhs.clone(), r2.lhs.clone(), k);
                            if !processed.contains(&key) {
                                let overlap = Word::wrap(a, &b[k..], &[]);
                                batch.push((r1.lhs.clone(), r2.lhs.clone(), k, overlap));
                            }
                        }
                    }
                }
            }
            if batch.is_empty() {
                break;
            }
            batch.sort_by(|x, y| x.3.cmp(&y.3).then_with(|| (&x.0, &x.1, x.2).cmp(&(&y.0, &y.1, y.2))));
            for (l1, l2, k, overlap) in batch {
                if processed.len() >= pair_budget {
                    return Err(Error::CompletionBudgetExceeded(alloc::format!("more than {pair_budget} overlaps")));
                }
                processed.insert((l1.clone(), l2.clone(), k));
                let r1 = self.rules.iter().find(|r| r.lhs == l1).cloned();
                let r2 = self.rules.iter().find(|r| r.lhs == l2).cloned();
                let (Some(r1), Some(r2)) = (r1, r2) else {
                    // One side was inter-reduced away; its replacement gets its own pairs.
                    continue;
                };
                if overlap.len() > degree_bound {
                    pairs.push(CriticalPair { left: l1, right: l2, overlap, outcome: PairOutcome::BeyondBound });
                    continue;
                }
                let a = l1.letters();
                let b = l2.letters();
                let mut s = Poly::new();
                for (w, c) in &r1.rhs {
                    poly_add(&mut s, Word::wrap(w.letters(), &b[k..], &[]), c);
                }
                for (w, c) in &r2.rhs {
                    poly_add(&mut s, Word::wrap(&a[..a.len() - k], w.letters(), &[]), &-c);
                }
                let s = self.reduce(s)?;
                let outcome = if s.is_empty() {
                    PairOutcome::Resolved
                } else {
                    let created = self.insert(s)?;
                    for w in &created {
                        if let Some(r) = self.rules.iter().find(|r| &r.lhs == w) {
                            added.push(r.clone());
                        }
                    }
                    match created.last() {
                        Some(w) => PairOutcome::Added(w.clone()),
                        None => PairOutcome::Resolved,
                    }
                };
                pairs.push(CriticalPair { left: l1, right: l2, overlap, outcome });
            }
        }
        let unjoinable = self.recheck(degree_bound)?;
        Ok(ConfluenceReport {
            algebra: tag.clone(),
            degree_bound,
            pairs,
            added,
            final_rules: self.rules.clone(),
            unjoinable,
        })
    }

    /// Recompute every overlap of the final rule set within the bound and
    /// count those whose S-polynomial does not reduce to zero.
    fn recheck(&self, degree_bound: usize) -> Result<usize> {
        let mut bad = 0;
        for r1 in &self.rules {
            for r2 in &self.rules {
                let (a, b) = (r1.lhs.letters(), r2.lhs.letters());
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] != b[..k] || a.len() + b.len() - k > degree_bound {
                        continue;
                    }
                    let mut s = Poly::new();
                    for (w, c) in &r1.rhs {
                        poly_add(&mut s, Word::wrap(w.letters(), &b[k..], &[]), c);
                    }
                    for (w, c) in &r2.rhs {
                        poly_add(&mut s, Word::wrap(&a[..a.len() - k], w.letters(), &[]), &-c);
                    }
                    if !self.reduce(s)?.is_empty() {
                        bad += 1;
                    }
                }
            }
        }
        Ok(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quantum_plane() -> Presentation {
        let mut b = PresentationBuilder::new("aq2", &["x", "y"]).unwrap();
        b.relation_str("y*x = q*x*y").unwrap();
        b.build().unwrap().0
    }

    #[test]
    fn quantum_plane_orients_yx() {
        let p = quantum_plane();
        assert_eq!(p.rules().len(), 1);
        assert_eq!(p.rule_text(&p.rules()[0]), "y*x -> q*x*y");
        let e = syntax::parse_element("y*x - q*x*y", &[&p as &dyn Alphabet]).unwrap();
        assert!(p.is_zero(&e).unwrap());
        assert!(!p.is_zero(&p.gen_element(0)).unwrap());
    }

    #[test]
    fn empty_word_is_unit() {
        let p = quantum_plane();
        assert_eq!(p.normal_form(&p.one()).unwrap(), p.one());
        let z = NcElement::zero(p.signature());
        assert_eq!(p.normal_form(&z).unwrap(), z);
    }

    #[test]
    fn free_line_has_no_rules() {
        let (p, report) = PresentationBuilder::new("line", &["x"]).unwrap().build().unwrap();
        assert!(p.rules().is_empty());
        assert!(report.pairs.is_empty());
    }

    #[test]
    fn inverse_rules_collapse_products() {
        let mut b = PresentationBuilder::new("z", &["g"]).unwrap();
        b.invertible("g").unwrap();
        let (p, _) = b.build().unwrap();
        let e = syntax::parse_element("g*g*ginv*g*ginv*ginv", &[&p as &dyn Alphabet]).unwrap();
        assert_eq!(p.normal_form(&e).unwrap(), p.one());
    }

    #[test]
    fn budget_violation_is_reported() {
        let mut b = PresentationBuilder::new("aq2", &["x", "y"]).unwrap();
        b.relation_str("y*x = q*x*y").unwrap().step_budget(3);
        let (p, _) = b.build().unwrap();
        let e = syntax::parse_element("y*y*y*x*x*x", &[&p as &dyn Alphabet]).unwrap();
        assert!(matches!(p.normal_form(&e), Err(Error::NonTerminating { .. })));
    }

    #[test]
    fn completion_adds_missing_rule() {
        // ab = c and bc = a force the overlap abc to yield cc = aa.
        let mut b = PresentationBuilder::new("t", &["a", "b", "c"]).unwrap();
        b.relation_str("a*b = c").unwrap().relation_str("b*c = a").unwrap();
        let (p, report) = b.build().unwrap();
        assert!(report.added.iter().any(|r| p.rule_text(r) == "c^2 -> a^2"));
        let e = syntax::parse_element("c*c - a*a", &[&p as &dyn Alphabet]).unwrap();
        assert!(p.is_zero(&e).unwrap());
    }

    #[test]
    fn collapsing_relations_are_unorientable() {
        let mut b = PresentationBuilder::new("t", &["x"]).unwrap();
        b.relation_str("x = x + 1").unwrap();
        assert!(matches!(b.build(), Err(Error::UnorientablePair(_))));
    }

    #[test]
    fn normal_words_skip_reducible() {
        let p = quantum_plane();
        let ws: Vec<String> = p.normal_words(2).iter().map(|w| p.word_text(w)).collect();
        assert_eq!(ws, ["1", "x", "y", "x^2", "x*y", "y^2"]);
    }
}

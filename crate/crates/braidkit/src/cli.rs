//! Subcommands. Each one maps onto a single engine operation; `run` writes
//! the result to the given sink and returns the exit code.

use std::io::Write;
use std::rc::Rc;

use braidkit_core::catalog::{self, Bundle, Loaded, NAMES};
use braidkit_core::constructions::{
    biproduct, bosonise_with_degree, braided_smash_coproduct, induced_action_table, BiproductInput, BosonisedHopf,
    TransmutedAlgebra, ANTIPODE_DEGREE,
};
use braidkit_core::ncpoly::{NcElement, Signature, TensorWord, Word};
use braidkit_core::structuremap::{braiding, Comodule, DqtHopf};
use braidkit_core::syntax::{format_element, parse_element, Alphabet};
use braidkit_core::verify::{self, Bounds, Report, Status};
use braidkit_core::{Error, Presentation};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{exit, CliError};
use crate::format::export;
use crate::load;

#[derive(Debug, Parser)]
#[command(name = "braidkit", version, about = "Exact computations with braided groups and dual quasitriangular Hopf algebras")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Word-length bound for antipode axioms; pairings use one less.
    #[arg(long, global = true, env = "BRAIDKIT_DEGREE")]
    pub degree: Option<usize>,
    /// Build without running the axiom suites first.
    #[arg(long, global = true)]
    pub no_verify: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an element (use `(x)` between tensor factors).
    Nf { algebra: String, expr: String },
    /// Run every axiom suite that applies and print the report.
    Verify { algebra: String },
    /// Braiding Psi(left (x) right).
    Braid {
        algebra: String,
        left: String,
        right: String,
        /// Comodule the right factor lives in (default: the same algebra).
        #[arg(long)]
        with: Option<String>,
    },
    /// Value of the dual quasitriangular pairing R(left (x) right).
    #[command(name = "R")]
    R {
        algebra: String,
        left: String,
        right: String,
        /// Evaluate the convolution inverse instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Evaluate products in the transmuted algebra B(H,H).
    Transmute {
        algebra: String,
        expr: Option<String>,
        /// Read the expression (or relations) in this algebra's letters.
        #[arg(long)]
        from: Option<String>,
        /// Transmute every relation of `--from` and require zero.
        #[arg(long)]
        relations: bool,
    },
    /// Bosonisation H .x B of a braided Hopf algebra.
    Bosonise { algebra: String },
    /// Biproduct built from the induced crossed-module action.
    Biproduct { algebra: String },
    /// Cross relations and coproduct of B(H,H) x B.
    Smashcop { algebra: String },
    /// Print the definition in file format.
    Export { algebra: String },
    /// List the built-in algebras.
    Catalog,
}

struct Ctx<'a> {
    json: bool,
    bounds: Bounds,
    verify: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn line(&mut self, s: &str) -> Result<(), CliError> {
        writeln!(self.out, "{s}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })
    }

    fn value(&mut self, v: Value) -> Result<(), CliError> {
        let s = serde_json::to_string_pretty(&v).expect("json value");
        self.line(&s)
    }

    fn load(&self, spec: &str) -> Result<Loaded, CliError> {
        let l = load::load(spec)?;
        if self.verify {
            let mut rep = Report::new();
            if let Bundle::Braided { hopf, .. } = &l.bundle {
                rep.extend(verify::verify_hopf(hopf, self.bounds));
                rep.extend(verify::verify_dqt(hopf, self.bounds));
            }
            rep.extend(verify::verify_loaded(&l, self.bounds));
            if !rep.passed() {
                let first = rep.failures().next().map(|c| format!("{} {}", c.suite, c.id)).unwrap_or_default();
                return Err(Error::VerificationFailed(format!("{spec}: {}; first: {first}", rep.summary())).into());
            }
        }
        Ok(l)
    }

    /// Print a report; exit code 1 unless every check passed.
    fn report(&mut self, rep: &Report) -> Result<i32, CliError> {
        if self.json {
            self.value(report_json(rep))?;
        } else {
            let text = rep.render();
            write!(self.out, "{text}").map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
            self.line(&rep.summary())?;
        }
        Ok(if rep.passed() { exit::OK } else { exit::VERIFY })
    }
}

pub fn report_json(rep: &Report) -> Value {
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| json!({"suite": c.suite, "id": c.id, "status": c.status.as_str(), "residual": c.residual}))
        .collect();
    json!({
        "passed": rep.passed(),
        "pass": rep.count(Status::Pass),
        "fail": rep.count(Status::Fail),
        "error": rep.count(Status::Error),
        "checks": checks,
    })
}

fn alphabets(p: &Presentation, n: usize) -> Vec<&dyn Alphabet> {
    vec![p as &dyn Alphabet; n]
}

fn slots_in(text: &str) -> usize {
    text.matches("(x)").count() + 1
}

fn parse_in(p: &Presentation, text: &str) -> Result<NcElement, CliError> {
    Ok(parse_element(text, &alphabets(p, slots_in(text)))?)
}

fn braided_of<'a>(l: &'a Loaded, spec: &str) -> Result<&'a catalog::BraidedBundle, CliError> {
    l.bundle.braided().ok_or_else(|| CliError::Usage(format!("`{spec}` is not a braided Hopf algebra")))
}

/// The comodule an algebra name stands for: B itself, or H under its coproduct.
fn comodule_of(l: &Loaded) -> Rc<dyn Comodule> {
    match &l.bundle {
        Bundle::Hopf(h) => h.clone() as Rc<dyn Comodule>,
        Bundle::Braided { bundle, .. } => bundle.comodule.clone() as Rc<dyn Comodule>,
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let bounds = match cli.degree {
        Some(0) => return Err(CliError::Usage("--degree must be at least 1".into())),
        Some(d) => Bounds::with_degree(d),
        None => Bounds::default(),
    };
    let antipode_degree = cli.degree.map_or(ANTIPODE_DEGREE, |d| d.max(ANTIPODE_DEGREE));
    let mut ctx = Ctx { json: cli.json, bounds, verify: !cli.no_verify, out };
    match cli.command {
        Command::Nf { algebra, expr } => {
            let l = ctx.load(&algebra)?;
            let p = l.bundle.presentation();
            let u = parse_in(p, &expr)?;
            let n = u.degree();
            let nf = braidkit_core::rewrite::normalize(&u, &vec![p; n])?;
            let text = format_element(&nf, &alphabets(p, n));
            emit(&mut ctx, "nf", &algebra, &text)
        }
        Command::Verify { algebra } => {
            let l = load::load(&algebra)?;
            let mut rep = Report::new();
            match &l.bundle {
                Bundle::Hopf(h) => {
                    rep.extend(verify::verify_hopf(h, bounds));
                    rep.extend(verify::verify_dqt(h, bounds));
                }
                Bundle::Braided { hopf, bundle } => {
                    rep.extend(verify::verify_hopf(hopf, bounds));
                    rep.extend(verify::verify_dqt(hopf, bounds));
                    rep.extend(verify::verify_braided_hopf(&bundle.braided, bounds));
                    rep.extend(verify::verify_crossed_module(&*bundle.comodule));
                }
            }
            ctx.report(&rep)
        }
        Command::Braid { algebra, left, right, with } => {
            let l = ctx.load(&algebra)?;
            let r = match &with {
                Some(w) => ctx.load(w)?,
                None => l.clone(),
            };
            let (v, w) = (comodule_of(&l), comodule_of(&r));
            let (pv, pw) = (v.carrier(), w.carrier());
            let u = parse_element(&left, &[pv as &dyn Alphabet])?.tensor(&parse_element(&right, &[pw as &dyn Alphabet])?);
            let psi = braiding(&*v, &*w, &u)?;
            let text = format_element(&psi, &[pw as &dyn Alphabet, pv as &dyn Alphabet]);
            emit(&mut ctx, "braid", &algebra, &text)
        }
        Command::R { algebra, left, right, inverse } => {
            let l = ctx.load(&algebra)?;
            let h: &DqtHopf = l.bundle.hopf();
            let a: &dyn Alphabet = h.presentation();
            let (u, v) = (parse_element(&left, &[a])?, parse_element(&right, &[a])?);
            let value = if inverse { h.eval_r_inverse(&u, &v)? } else { h.eval_r(&u, &v)? };
            emit(&mut ctx, "R", &algebra, &value.to_string())
        }
        Command::Transmute { algebra, expr, from, relations } => {
            let l = ctx.load(&algebra)?;
            let Bundle::Hopf(h) = &l.bundle else {
                return Err(CliError::Usage(format!("`{algebra}` is not a dual quasitriangular Hopf algebra")));
            };
            let hp = h.presentation();
            let tr = TransmutedAlgebra::new(h.clone());
            let source = match &from {
                Some(b) => Some(load::load(b)?),
                None => None,
            };
            let (sp, map): (&Presentation, Vec<_>) = match &source {
                Some(s) => (s.bundle.presentation(), catalog::identification(s.bundle.presentation(), hp)?),
                None => (hp, hp.generators().collect()),
            };
            if relations {
                let mut rep = Report::new();
                for rel in sp.relations() {
                    let mut diff = NcElement::zero(Signature::single(sp.tag()));
                    for (w, c) in rel.difference() {
                        diff.add_term(TensorWord::new(vec![w]), &c);
                    }
                    let residual = h.normal_form(&tr.transmute(&map, &diff)?)?;
                    let (status, text) = if residual.is_zero() {
                        (Status::Pass, "0".to_string())
                    } else {
                        (Status::Fail, format_element(&residual, &[hp as &dyn Alphabet]))
                    };
                    rep.checks.push(verify::Check {
                        suite: "transmute".into(),
                        id: sp.poly_text(&rel.difference()),
                        status,
                        residual: text,
                    });
                }
                return ctx.report(&rep);
            }
            let expr = expr.ok_or_else(|| CliError::Usage("transmute needs an expression or --relations".into()))?;
            let u = parse_element(&expr, &[sp as &dyn Alphabet])?;
            let value = h.normal_form(&tr.transmute(&map, &u)?)?;
            emit(&mut ctx, "transmute", &algebra, &format_element(&value, &[hp as &dyn Alphabet]))
        }
        Command::Bosonise { algebra } => {
            let l = ctx.load(&algebra)?;
            let b = braided_of(&l, &algebra)?;
            let bo = bosonise_with_degree(b.braided.clone(), antipode_degree)?;
            let lines = bosonised_lines(&bo)?;
            let rep = verify::verify_bosonised(&bo);
            tables_and_report(&mut ctx, "bosonise", lines, &rep)
        }
        Command::Biproduct { algebra } => {
            let l = ctx.load(&algebra)?;
            let b = braided_of(&l, &algebra)?;
            let table = induced_action_table(&b.comodule)?;
            let bp = b.comodule.presentation();
            let hp = b.comodule.hopf_rc().presentation();
            let mut lines = Vec::new();
            for (i, row) in table.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    lines.push(format!(
                        "{}<{} = {}",
                        bp.name(i as _),
                        hp.name(j as _),
                        format_element(v, &[bp as &dyn Alphabet])
                    ));
                }
            }
            let inp = BiproductInput { braided: b.braided.clone(), comodule: b.comodule.clone(), action: table };
            let bi = biproduct(&inp)?;
            lines.extend(bosonised_lines(&bi)?);
            let mut rep = verify::verify_crossed_module(&*b.comodule);
            rep.extend(verify::verify_bosonised(&bi));
            tables_and_report(&mut ctx, "biproduct", lines, &rep)
        }
        Command::Smashcop { algebra } => {
            let l = ctx.load(&algebra)?;
            let b = braided_of(&l, &algebra)?;
            let sm = braided_smash_coproduct(b.braided.clone())?;
            let hp = sm.hopf().presentation();
            let bp = b.comodule.presentation();
            let s = [hp as &dyn Alphabet, bp as &dyn Alphabet];
            let four = [s[0], s[1], s[0], s[1]];
            let sig = sm.signature();
            let elem = |h: Word, v: Word| NcElement::term(sig.clone(), TensorWord::new(vec![h, v]), 1.into());
            let mut lines = Vec::new();
            for v in bp.generators() {
                for g in hp.generators() {
                    let p = sm.product(&elem(Word::empty(), Word::letter(v)), &elem(Word::letter(g), Word::empty()))?;
                    lines.push(format!("{}*{} = {}", bp.name(v), hp.name(g), format_element(&p, &s)));
                }
            }
            for u in sm.generators() {
                lines.push(format!("Delta({}) = {}", format_element(&u, &s), format_element(&sm.coproduct(&u)?, &four)));
            }
            let bo = bosonise_with_degree(b.braided.clone(), antipode_degree)?;
            let rep = verify::verify_smash(&sm, Some(&bo));
            tables_and_report(&mut ctx, "smashcop", lines, &rep)
        }
        Command::Export { algebra } => {
            let def = load::definition(&algebra)?;
            if ctx.json {
                ctx.value(json!({"command": "export", "algebra": algebra, "result": export(&def)}))?;
            } else {
                write!(ctx.out, "{}", export(&def)).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
            }
            Ok(exit::OK)
        }
        Command::Catalog => {
            let mut rows = Vec::new();
            for name in NAMES {
                let def = catalog::definition(name)?;
                let over = def.over.clone().unwrap_or_default();
                let note = def.notes.first().cloned().unwrap_or_default();
                rows.push((name, def.kind.name(), over, note));
            }
            if ctx.json {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|(n, k, o, note)| json!({"name": n, "kind": k, "over": o, "note": note}))
                    .collect();
                ctx.value(Value::Array(v))?;
            } else {
                for (n, k, o, note) in rows {
                    let over = if o.is_empty() { String::new() } else { format!(" over {o}") };
                    ctx.line(&format!("{n}\t{k}{over}\t{note}"))?;
                }
            }
            Ok(exit::OK)
        }
    }
}

fn emit(ctx: &mut Ctx, command: &str, algebra: &str, text: &str) -> Result<i32, CliError> {
    if ctx.json {
        ctx.value(json!({"command": command, "algebra": algebra, "result": text}))?;
    } else {
        ctx.line(text)?;
    }
    Ok(exit::OK)
}

fn bosonised_lines(bo: &BosonisedHopf) -> Result<Vec<String>, CliError> {
    let hp = bo.hopf().presentation();
    let bp = bo.braided().comodule().carrier();
    let s = [hp as &dyn Alphabet, bp as &dyn Alphabet];
    let four = [s[0], s[1], s[0], s[1]];
    let mut lines = Vec::new();
    for u in bo.generators() {
        let name = format_element(&u, &s);
        lines.push(format!("Delta({name}) = {}", format_element(&bo.coproduct(&u)?, &four)));
        lines.push(format!("S({name}) = {}", format_element(&bo.antipode(&u)?, &s)));
    }
    Ok(lines)
}

fn tables_and_report(ctx: &mut Ctx, command: &str, lines: Vec<String>, rep: &Report) -> Result<i32, CliError> {
    if ctx.json {
        ctx.value(json!({"command": command, "result": lines, "report": report_json(rep)}))?;
        return Ok(if rep.passed() { exit::OK } else { exit::VERIFY });
    }
    for l in &lines {
        ctx.line(l)?;
    }
    ctx.report(rep)
}

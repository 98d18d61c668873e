//! The definition-file format: a header of `key = value` lines followed by
//! sections. See FORMAT.md for the grammar.

use braidkit_core::catalog::{Definition, Expr, Kind, PairEntry, TableEntry};
use braidkit_core::Error;

fn syntax_at(message: impl Into<String>, line: usize, column: usize) -> Error {
    Error::Syntax { message: message.into(), column: 1 }.at(line, column)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Generators,
    Relations,
    Coaction,
    Coproduct,
    Counit,
    Antipode,
    R,
}

/// Split off leading whitespace; returns the rest and its 1-based column.
fn trim_start_col(s: &str, col: usize) -> (&str, usize) {
    let t = s.trim_start();
    (t, col + s[..s.len() - t.len()].chars().count())
}

/// Trimmed text with the 1-based column where it starts.
type Located = (String, usize);

/// `left = right` at the first `=`; both sides trimmed, with columns.
fn split_eq(text: &str, line: usize, col: usize) -> Result<(Located, Located), Error> {
    let Some(i) = text.find('=') else {
        return Err(syntax_at("expected `=`", line, col + text.chars().count()));
    };
    let (l, lc) = trim_start_col(&text[..i], col);
    let (r, rc) = trim_start_col(&text[i + 1..], col + text[..=i].chars().count());
    let (l, r) = (l.trim_end(), r.trim_end());
    if l.is_empty() {
        return Err(syntax_at("missing left-hand side", line, lc));
    }
    if r.is_empty() {
        return Err(syntax_at("missing right-hand side", line, rc));
    }
    Ok(((l.to_string(), lc), (r.to_string(), rc)))
}

fn parse_section(text: &str, line: usize, col: usize, def: &mut Definition) -> Result<Section, Error> {
    let inner = text[1..].strip_suffix(']').ok_or_else(|| syntax_at("unclosed section header", line, col))?;
    let mut parts = inner.split_whitespace();
    let name = parts.next().unwrap_or("");
    let section = match name {
        "generators" => Section::Generators,
        "relations" => Section::Relations,
        "coaction" => Section::Coaction,
        "coproduct" => Section::Coproduct,
        "counit" => Section::Counit,
        "antipode" => Section::Antipode,
        "R" => Section::R,
        other => return Err(syntax_at(format!("unknown section `{other}`"), line, col + 1)),
    };
    for attr in parts {
        match (section, attr.strip_prefix("over=")) {
            (Section::Coaction, Some(over)) if !over.is_empty() => def.over = Some(over.to_string()),
            _ => return Err(syntax_at(format!("unexpected attribute `{attr}`"), line, col)),
        }
    }
    if section == Section::Coaction && def.over.is_none() {
        return Err(syntax_at("coaction section needs over=NAME", line, col));
    }
    Ok(section)
}

/// Parse a definition file. Positions in errors are 1-based.
pub fn parse_definition(src: &str) -> Result<Definition, Error> {
    let mut def = Definition::new("", Kind::DqtHopf);
    let mut name = None;
    let mut kind = None;
    let mut section = Section::Header;
    let mut in_notes = true;
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let (text, col) = trim_start_col(raw, 1);
        if let Some(comment) = text.strip_prefix('#') {
            if in_notes {
                def.notes.push(comment.strip_prefix(' ').unwrap_or(comment).trim_end().to_string());
            }
            continue;
        }
        // a comment may also end a line
        let text = match text.find('#') {
            Some(k) => &text[..k],
            None => text,
        }
        .trim_end();
        if text.is_empty() {
            continue;
        }
        in_notes = false;
        if text.starts_with('[') {
            section = parse_section(text, line, col, &mut def)?;
            continue;
        }
        match section {
            Section::Header => {
                let ((key, kc), (value, vc)) = split_eq(text, line, col)?;
                match key.as_str() {
                    "name" => name = Some(value),
                    "kind" => {
                        kind = Some(match value.as_str() {
                            "dqt_hopf" => Kind::DqtHopf,
                            "braided_hopf" => Kind::BraidedHopf,
                            other => return Err(syntax_at(format!("unknown kind `{other}`"), line, vc)),
                        })
                    }
                    "degree_bound" => {
                        let d = value.parse().map_err(|_| syntax_at("expected a positive integer", line, vc))?;
                        def.degree_bound = Some(d);
                    }
                    other => return Err(syntax_at(format!("unknown header key `{other}`"), line, kc)),
                }
            }
            Section::Generators => {
                let mut offset = 0;
                for part in text.split(',') {
                    let (g, gc) = trim_start_col(part, col + offset);
                    let g = g.trim_end();
                    if g.is_empty() {
                        return Err(syntax_at("empty generator name", line, gc));
                    }
                    def.generators.push(Expr::at(g, line, gc));
                    offset += part.chars().count() + 1;
                }
            }
            Section::Relations => def.relations.push(Expr::at(text, line, col)),
            Section::Coaction | Section::Coproduct | Section::Counit | Section::Antipode => {
                let ((k, kc), (v, vc)) = split_eq(text, line, col)?;
                let entry = TableEntry { key: Expr::at(&k, line, kc), value: Expr::at(&v, line, vc) };
                match section {
                    Section::Coaction => def.coaction.push(entry),
                    Section::Coproduct => def.coproduct.push(entry),
                    Section::Counit => def.counit.push(entry),
                    _ => def.antipode.push(entry),
                }
            }
            Section::R => {
                let ((pair, pc), (v, vc)) = split_eq(text, line, col)?;
                let Some(comma) = pair.find(',') else {
                    return Err(syntax_at("expected `g, h = value`", line, pc));
                };
                let (l, lc) = trim_start_col(&pair[..comma], pc);
                let (r, rc) = trim_start_col(&pair[comma + 1..], pc + pair[..=comma].chars().count());
                def.r.push(PairEntry {
                    left: Expr::at(l.trim_end(), line, lc),
                    right: Expr::at(r.trim_end(), line, rc),
                    value: Expr::at(&v, line, vc),
                });
            }
        }
    }
    def.name = name.ok_or_else(|| Error::MissingEntry("header `name`".into()))?;
    def.kind = kind.ok_or_else(|| Error::MissingEntry("header `kind`".into()))?;
    match def.kind {
        Kind::BraidedHopf if def.over.is_none() => {
            return Err(Error::MissingEntry("braided_hopf needs a [coaction over=NAME] section".into()))
        }
        Kind::DqtHopf if def.over.is_some() => {
            return Err(Error::Invalid("dqt_hopf definitions take no coaction".into()))
        }
        _ => {}
    }
    Ok(def)
}

fn table(out: &mut String, header: &str, entries: &[TableEntry]) {
    out.push_str(&format!("\n[{header}]\n"));
    for e in entries {
        out.push_str(&format!("{} = {}\n", e.key.text, e.value.text));
    }
}

/// Canonical text of a definition; parsing it gives back the same definition
/// up to source positions.
pub fn export(def: &Definition) -> String {
    let mut out = String::new();
    for n in &def.notes {
        if n.is_empty() {
            out.push_str("#\n");
        } else {
            out.push_str(&format!("# {n}\n"));
        }
    }
    out.push_str(&format!("name = {}\nkind = {}\n", def.name, def.kind.name()));
    if let Some(d) = def.degree_bound {
        out.push_str(&format!("degree_bound = {d}\n"));
    }
    out.push_str("\n[generators]\n");
    let names: Vec<&str> = def.generators.iter().map(|g| g.text.as_str()).collect();
    out.push_str(&names.join(", "));
    out.push('\n');
    if !def.relations.is_empty() {
        out.push_str("\n[relations]\n");
        for r in &def.relations {
            out.push_str(&r.text);
            out.push('\n');
        }
    }
    if let Some(over) = &def.over {
        table(&mut out, &format!("coaction over={over}"), &def.coaction);
    }
    table(&mut out, "coproduct", &def.coproduct);
    table(&mut out, "counit", &def.counit);
    table(&mut out, "antipode", &def.antipode);
    if !def.r.is_empty() {
        out.push_str("\n[R]\n");
        for e in &def.r {
            out.push_str(&format!("{}, {} = {}\n", e.left.text, e.right.text, e.value.text));
        }
    }
    out
}

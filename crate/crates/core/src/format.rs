//! Plain-text block format for algebras and semimodules.
//!
//! ```text
//! algebra NAME
//! size N
//! elements n0 n1 ...        # optional
//! join                      # N rows of N indices
//! mult                      # N rows of N indices
//! one I
//! zero I                    # optional
//! lneg i0 ... iN-1          # optional
//! rneg i0 ... iN-1          # optional
//! end
//!
//! semimodule NAME over ALGNAME
//! size M
//! elements m0 m1 ...        # optional
//! join                      # M rows of M indices
//! zero I
//! action                    # |A| rows of M indices, row a column x = a·x
//! end
//! ```
//!
//! `#` starts a comment. Element identity is the index; names are cosmetic.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::semimodule::SemimoduleTable;
use crate::table::{AlgebraTable, Table};

#[derive(Clone, Debug, Default)]
pub struct Document {
    pub algebras: Vec<AlgebraTable>,
    pub semimodules: Vec<SemimoduleTable>,
}

impl Document {
    pub fn algebra(&self, name: &str) -> Option<&AlgebraTable> {
        self.algebras.iter().find(|a| a.name() == name)
    }

    pub fn semimodule(&self, name: &str) -> Option<&SemimoduleTable> {
        self.semimodules.iter().find(|m| m.name() == name)
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, l)| {
                let body = l.split('#').next().unwrap_or("");
                let toks: Vec<&str> = body.split_whitespace().collect();
                (!toks.is_empty()).then_some((i + 1, toks))
            })
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.pos).cloned();
        self.pos += 1;
        item
    }

    fn last_line(&self) -> usize {
        self.items.last().map_or(0, |(l, _)| *l)
    }
}

fn index(line: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| perr(line, format!("expected an index, found `{tok}`")))
}

fn indices(line: usize, toks: &[&str]) -> Result<Vec<usize>> {
    toks.iter().map(|t| index(line, t)).collect()
}

fn single(line: usize, key: &str, args: &[&str]) -> Result<usize> {
    match args {
        [v] => index(line, v),
        _ => Err(perr(line, format!("`{key}` takes exactly one index"))),
    }
}

fn rows(
    lines: &mut Lines,
    header: usize,
    key: &str,
    count: usize,
    width: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::with_capacity(count);
    for r in 0..count {
        let (line, toks) = lines
            .next()
            .ok_or_else(|| perr(header, format!("`{key}` needs {count} rows, found {r}")))?;
        if toks.len() != width || toks[0].parse::<usize>().is_err() {
            if toks[0].parse::<usize>().is_err() {
                return Err(perr(line, format!("`{key}` needs {count} rows, found {r}")));
            }
            return Err(perr(
                line,
                format!(
                    "`{key}` row {r} has {} entries, expected {width}",
                    toks.len()
                ),
            ));
        }
        out.push(indices(line, &toks)?);
    }
    Ok(out)
}

fn table_error(line: usize, e: Error) -> Error {
    match e {
        Error::Input(msg) => perr(line, msg),
        other => other,
    }
}

struct PendingModule {
    line: usize,
    name: String,
    over: String,
    join: Vec<Vec<usize>>,
    zero: usize,
    action: Vec<Vec<usize>>,
    elements: Option<Vec<String>>,
}

/// Parses every block of `text`. A document without any block is rejected.
pub fn parse(text: &str) -> Result<Document> {
    let mut lines = Lines::new(text);
    let mut doc = Document::default();
    let mut pending = Vec::new();
    while let Some((line, toks)) = lines.next() {
        match toks[0] {
            "algebra" => {
                let name = match &toks[1..] {
                    [n] => n.to_string(),
                    _ => return Err(perr(line, "expected `algebra NAME`")),
                };
                if doc.algebra(&name).is_some() {
                    return Err(perr(line, format!("algebra `{name}` defined twice")));
                }
                doc.algebras.push(parse_algebra(&mut lines, line, name)?);
            }
            "semimodule" => {
                let (name, over) = match &toks[1..] {
                    [n, "over", a] => (n.to_string(), a.to_string()),
                    _ => return Err(perr(line, "expected `semimodule NAME over ALGEBRA`")),
                };
                pending.push(parse_semimodule(&mut lines, line, name, over)?);
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
    if doc.algebras.is_empty() {
        return Err(perr(lines.last_line().max(1), "no algebra"));
    }
    for p in pending {
        let over = doc.algebra(&p.over).ok_or_else(|| {
            perr(
                p.line,
                format!(
                    "semimodule `{}` is over unknown algebra `{}`",
                    p.name, p.over
                ),
            )
        })?;
        let mut m = SemimoduleTable::new(p.name, Arc::new(over.clone()), p.join, p.zero, p.action)
            .map_err(|e| table_error(p.line, e))?;
        if let Some(names) = p.elements {
            m = m.with_display(names).map_err(|e| table_error(p.line, e))?;
        }
        doc.semimodules.push(m);
    }
    Ok(doc)
}

fn parse_algebra(lines: &mut Lines, header: usize, name: String) -> Result<AlgebraTable> {
    let mut size = None;
    let mut elements = None;
    let (mut join, mut mult) = (None, None);
    let (mut one, mut zero, mut lneg, mut rneg) = (None, None, None, None);
    loop {
        let (line, toks) = lines
            .next()
            .ok_or_else(|| perr(header, format!("algebra `{name}` has no `end`")))?;
        let need_size = || size.ok_or_else(|| perr(line, "`size` must come first"));
        match toks[0] {
            "size" => {
                let n = single(line, "size", &toks[1..])?;
                if n == 0 {
                    return Err(perr(line, "size must be positive"));
                }
                size = Some(n);
            }
            "elements" => {
                let n = need_size()?;
                if toks.len() - 1 != n {
                    return Err(perr(
                        line,
                        format!("{} element names for size {n}", toks.len() - 1),
                    ));
                }
                elements = Some(toks[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>());
            }
            "join" | "mult" => {
                let n = need_size()?;
                if toks.len() != 1 {
                    return Err(perr(
                        line,
                        format!("`{}` rows start on the next line", toks[0]),
                    ));
                }
                let r = rows(lines, line, toks[0], n, n)?;
                if toks[0] == "join" {
                    join = Some((line, r));
                } else {
                    mult = Some((line, r));
                }
            }
            "one" => one = Some(single(line, "one", &toks[1..])?),
            "zero" => zero = Some((line, single(line, "zero", &toks[1..])?)),
            "lneg" | "rneg" => {
                let n = need_size()?;
                if toks.len() - 1 != n {
                    return Err(perr(
                        line,
                        format!("`{}` has {} entries, expected {n}", toks[0], toks.len() - 1),
                    ));
                }
                let v = (line, indices(line, &toks[1..])?);
                if toks[0] == "lneg" {
                    lneg = Some(v);
                } else {
                    rneg = Some(v);
                }
            }
            "end" => {
                let n =
                    size.ok_or_else(|| perr(line, format!("algebra `{name}` is missing `size`")))?;
                let (jl, join) =
                    join.ok_or_else(|| perr(line, format!("algebra `{name}` is missing `join`")))?;
                let (ml, mult) =
                    mult.ok_or_else(|| perr(line, format!("algebra `{name}` is missing `mult`")))?;
                let one =
                    one.ok_or_else(|| perr(line, format!("algebra `{name}` is missing `one`")))?;
                let join = Table::from_rows(join).map_err(|e| table_error(jl, e))?;
                join.check_range(n).map_err(|e| table_error(jl, e))?;
                let mult = Table::from_rows(mult).map_err(|e| table_error(ml, e))?;
                mult.check_range(n).map_err(|e| table_error(ml, e))?;
                let mut a = AlgebraTable::from_tables(name, join, mult, one)
                    .map_err(|e| table_error(line, e))?;
                if let Some((zl, z)) = zero {
                    a = a.with_zero(z).map_err(|e| table_error(zl, e))?;
                }
                if let Some((l, t)) = lneg {
                    a = a.with_lneg(t).map_err(|e| table_error(l, e))?;
                }
                if let Some((l, t)) = rneg {
                    a = a.with_rneg(t).map_err(|e| table_error(l, e))?;
                }
                if let Some(names) = elements {
                    a = a.with_display(names).map_err(|e| table_error(line, e))?;
                }
                return Ok(a);
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
}

fn parse_semimodule(
    lines: &mut Lines,
    header: usize,
    name: String,
    over: String,
) -> Result<PendingModule> {
    let mut size = None;
    let (mut join, mut zero, mut action, mut elements) = (None, None, None, None);
    loop {
        let (line, toks) = lines
            .next()
            .ok_or_else(|| perr(header, format!("semimodule `{name}` has no `end`")))?;
        let need_size = || size.ok_or_else(|| perr(line, "`size` must come first"));
        match toks[0] {
            "size" => {
                let m = single(line, "size", &toks[1..])?;
                if m == 0 {
                    return Err(perr(line, "size must be positive"));
                }
                size = Some(m);
            }
            "elements" => {
                let m = need_size()?;
                if toks.len() - 1 != m {
                    return Err(perr(
                        line,
                        format!("{} element names for size {m}", toks.len() - 1),
                    ));
                }
                elements = Some(toks[1..].iter().map(|s| s.to_string()).collect());
            }
            "join" => {
                let m = need_size()?;
                join = Some(rows(lines, line, "join", m, m)?);
            }
            "zero" => zero = Some(single(line, "zero", &toks[1..])?),
            "action" => {
                let m = need_size()?;
                // the row count is the algebra's size, known only after resolution
                let mut r = Vec::new();
                while let Some((l, t)) = lines.items.get(lines.pos).cloned() {
                    if t[0].parse::<usize>().is_err() {
                        break;
                    }
                    if t.len() != m {
                        return Err(perr(
                            l,
                            format!(
                                "`action` row {} has {} entries, expected {m}",
                                r.len(),
                                t.len()
                            ),
                        ));
                    }
                    r.push(indices(l, &t)?);
                    lines.pos += 1;
                }
                action = Some(r);
            }
            "end" => {
                let join = join
                    .ok_or_else(|| perr(line, format!("semimodule `{name}` is missing `join`")))?;
                let zero = zero
                    .ok_or_else(|| perr(line, format!("semimodule `{name}` is missing `zero`")))?;
                let action = action.ok_or_else(|| {
                    perr(line, format!("semimodule `{name}` is missing `action`"))
                })?;
                return Ok(PendingModule {
                    line: header,
                    name,
                    over,
                    join,
                    zero,
                    action,
                    elements,
                });
            }
            other => return Err(perr(line, format!("unknown keyword `{other}`"))),
        }
    }
}

/// Parses a document holding exactly the algebra to be used.
pub fn parse_algebra_text(text: &str) -> Result<AlgebraTable> {
    let doc = parse(text)?;
    doc.algebras
        .into_iter()
        .next()
        .ok_or_else(|| Error::input("no algebra"))
}

fn push_rows(out: &mut String, rows: impl Iterator<Item = Vec<usize>>) {
    for r in rows {
        let cells: Vec<String> = r.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
}

fn join_idx(xs: &[usize]) -> String {
    xs.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn emit(a: &AlgebraTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "algebra {}", a.name());
    let _ = writeln!(out, "size {}", a.size());
    if let Some(names) = a.display() {
        let _ = writeln!(out, "elements {}", names.join(" "));
    }
    out.push_str("join\n");
    push_rows(&mut out, a.join_table().rows().map(<[usize]>::to_vec));
    out.push_str("mult\n");
    push_rows(&mut out, a.mult_table().rows().map(<[usize]>::to_vec));
    let _ = writeln!(out, "one {}", a.one());
    if let Some(z) = a.zero() {
        let _ = writeln!(out, "zero {z}");
    }
    if let Some(t) = a.lneg() {
        let _ = writeln!(out, "lneg {}", join_idx(t));
    }
    if let Some(t) = a.rneg() {
        let _ = writeln!(out, "rneg {}", join_idx(t));
    }
    out.push_str("end\n");
    out
}

pub fn emit_semimodule(m: &SemimoduleTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "semimodule {} over {}", m.name(), m.over().name());
    let _ = writeln!(out, "size {}", m.size());
    if let Some(names) = m.display() {
        let _ = writeln!(out, "elements {}", names.join(" "));
    }
    out.push_str("join\n");
    push_rows(&mut out, m.join_table().rows().map(<[usize]>::to_vec));
    let _ = writeln!(out, "zero {}", m.zero());
    out.push_str("action\n");
    push_rows(
        &mut out,
        m.action_cells().chunks(m.size()).map(<[usize]>::to_vec),
    );
    out.push_str("end\n");
    out
}

/// The algebras followed by the semimodules, blank-line separated.
pub fn emit_document(doc: &Document) -> String {
    let blocks: Vec<String> = doc
        .algebras
        .iter()
        .map(emit)
        .chain(doc.semimodules.iter().map(emit_semimodule))
        .collect();
    blocks.join("\n")
}

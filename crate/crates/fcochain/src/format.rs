//! The declarative workspace format: named sections describing algebras,
//! bimodules, functors, modules, complexes, morphisms and natural
//! transformations, with rational entries written `p/q`.
//!
//! ```text
//! # comment
//! [algebra A]
//! builtin dual_numbers
//!
//! [bimodule D]
//! algebra A
//! builtin dual
//!
//! [functor F]
//! kind tensor
//! bimodule D
//!
//! [complex C]
//! functor F
//! flavor left
//! window 0 1
//! term 0 M
//! diff 0
//! 1 0
//! 0 1
//! ```
//!
//! A line whose first token parses as a rational is a matrix row attached to
//! the preceding key; everything else is a key line. Omitted matrix blocks
//! (differentials, components, actions) default to zero. Every entity is
//! validated on load and errors carry the file and line of the declaration.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num::Zero;

use crate::algebra::{
    dual_bimodule, dual_numbers, ground_field, path_algebra_an, simple_an, truncated_poly,
    Algebra, Bimodule, Module,
};
use crate::complex::{ChainMap, LeftComplex, RightChainMap, RightComplex};
use crate::error::{Error, Result};
use crate::functor::{HomEndofunctor, NatTrans, RepEndofunctor};
use crate::linalg::{ExactMatrix, Rat};

#[derive(Debug, Clone)]
pub struct Provenance {
    pub file: String,
    pub line: usize,
}

#[derive(Clone)]
pub enum FunctorEntry {
    Tensor(Arc<RepEndofunctor>),
    Hom(Arc<HomEndofunctor>),
}

impl FunctorEntry {
    pub fn bimodule(&self) -> &Arc<Bimodule> {
        match self {
            FunctorEntry::Tensor(f) => f.bimodule(),
            FunctorEntry::Hom(g) => g.bimodule(),
        }
    }
}

#[derive(Clone)]
pub enum ComplexEntry {
    Left(Arc<LeftComplex>),
    Right(Arc<RightComplex>),
}

#[derive(Clone)]
pub enum MorphismEntry {
    Left(ChainMap),
    Right(RightChainMap),
}

/// All named entities loaded from a set of workspace files.
#[derive(Default)]
pub struct Workspace {
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub bimodules: BTreeMap<String, Arc<Bimodule>>,
    pub functors: BTreeMap<String, FunctorEntry>,
    pub modules: BTreeMap<String, Arc<Module>>,
    pub complexes: BTreeMap<String, ComplexEntry>,
    pub morphisms: BTreeMap<String, MorphismEntry>,
    pub nattrans: BTreeMap<String, NatTrans>,
    pub provenance: BTreeMap<String, Provenance>,
}

impl std::fmt::Debug for Workspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Workspace(algebras={}, bimodules={}, functors={}, modules={}, complexes={}, morphisms={}, nattrans={})",
            self.algebras.len(),
            self.bimodules.len(),
            self.functors.len(),
            self.modules.len(),
            self.complexes.len(),
            self.morphisms.len(),
            self.nattrans.len()
        )
    }
}

struct RawItem {
    line: usize,
    key: String,
    args: Vec<String>,
    rows: Vec<Vec<Rat>>,
    row_lines: Vec<usize>,
}

struct RawSection {
    kind: String,
    name: String,
    file: String,
    line: usize,
    items: Vec<RawItem>,
}

fn parse_rat(tok: &str) -> Option<Rat> {
    Rat::from_str(tok).ok()
}

fn lex_file(file: &str, text: &str) -> Result<Vec<RawSection>> {
    let mut sections: Vec<RawSection> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw_line.find('#') {
            Some(p) => &raw_line[..p],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            if !line.ends_with(']') {
                return Err(Error::Parse {
                    file: file.into(),
                    line: lineno,
                    msg: "unterminated section header".into(),
                });
            }
            let inner = &line[1..line.len() - 1];
            let mut parts = inner.split_whitespace();
            let kind = parts.next().unwrap_or("").to_string();
            let name = parts.next().unwrap_or("").to_string();
            if kind.is_empty() || name.is_empty() || parts.next().is_some() {
                return Err(Error::Parse {
                    file: file.into(),
                    line: lineno,
                    msg: "section header must be `[kind name]`".into(),
                });
            }
            sections.push(RawSection {
                kind,
                name,
                file: file.into(),
                line: lineno,
                items: Vec::new(),
            });
            continue;
        }
        let Some(section) = sections.last_mut() else {
            return Err(Error::Parse {
                file: file.into(),
                line: lineno,
                msg: "content before the first section header".into(),
            });
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if parse_rat(toks[0]).is_some() {
            // matrix row attached to the most recent item
            let Some(item) = section.items.last_mut() else {
                return Err(Error::Parse {
                    file: file.into(),
                    line: lineno,
                    msg: "matrix row without a preceding key".into(),
                });
            };
            let mut row = Vec::new();
            for t in &toks {
                let Some(r) = parse_rat(t) else {
                    return Err(Error::Parse {
                        file: file.into(),
                        line: lineno,
                        msg: format!("bad rational `{t}`"),
                    });
                };
                row.push(r);
            }
            item.rows.push(row);
            item.row_lines.push(lineno);
        } else {
            section.items.push(RawItem {
                line: lineno,
                key: toks[0].to_string(),
                args: toks[1..].iter().map(|s| s.to_string()).collect(),
                rows: Vec::new(),
                row_lines: Vec::new(),
            });
        }
    }
    Ok(sections)
}

fn verr(sec: &RawSection, law: &str, msg: impl Into<String>) -> Error {
    Error::Validation {
        entity: format!("{} {}", sec.kind, sec.name),
        law: law.into(),
        file: sec.file.clone(),
        line: sec.line,
        msg: msg.into(),
    }
}

fn item_matrix(sec: &RawSection, item: &RawItem, rows: usize, cols: usize) -> Result<ExactMatrix> {
    if item.rows.len() != rows {
        return Err(verr(
            sec,
            "matrix shape",
            format!(
                "`{}` at line {} needs {} rows, got {}",
                item.key,
                item.line,
                rows,
                item.rows.len()
            ),
        ));
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (ri, row) in item.rows.iter().enumerate() {
        if row.len() != cols {
            return Err(verr(
                sec,
                "matrix shape",
                format!(
                    "row at line {} needs {} entries, got {}",
                    item.row_lines[ri],
                    cols,
                    row.len()
                ),
            ));
        }
        entries.extend(row.iter().cloned());
    }
    ExactMatrix::new(rows, cols, entries)
}

fn get_arg<'a>(sec: &RawSection, item: &'a RawItem, idx: usize) -> Result<&'a str> {
    item.args
        .get(idx)
        .map(String::as_str)
        .ok_or_else(|| verr(sec, "arguments", format!("`{}` needs more arguments", item.key)))
}

fn parse_usize(sec: &RawSection, item: &RawItem, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| {
        verr(
            sec,
            "arguments",
            format!("`{}` at line {}: bad count `{tok}`", item.key, item.line),
        )
    })
}

fn parse_i64(sec: &RawSection, item: &RawItem, tok: &str) -> Result<i64> {
    tok.parse().map_err(|_| {
        verr(
            sec,
            "arguments",
            format!("`{}` at line {}: bad integer `{tok}`", item.key, item.line),
        )
    })
}

fn build_algebra(sec: &RawSection) -> Result<Arc<Algebra>> {
    let mut builtin = None;
    let mut dim = None;
    let mut unit = None;
    let mut mults: Vec<(usize, usize, Vec<Rat>, usize)> = Vec::new();
    for item in &sec.items {
        match item.key.as_str() {
            "builtin" => {
                let which = get_arg(sec, item, 0)?;
                builtin = Some(match which {
                    "ground_field" => ground_field(),
                    "dual_numbers" => dual_numbers(),
                    "truncated_poly" => {
                        let n = parse_usize(sec, item, get_arg(sec, item, 1)?)?;
                        truncated_poly(n)
                    }
                    "path_algebra_an" => {
                        let n = parse_usize(sec, item, get_arg(sec, item, 1)?)?;
                        path_algebra_an(n)
                    }
                    other => {
                        return Err(verr(sec, "builtin", format!("unknown builtin `{other}`")))
                    }
                });
            }
            "dim" => dim = Some(parse_usize(sec, item, get_arg(sec, item, 0)?)?),
            "unit" => {
                let mut v = Vec::new();
                for t in &item.args {
                    v.push(parse_rat(t).ok_or_else(|| {
                        verr(sec, "unit", format!("bad rational `{t}` at line {}", item.line))
                    })?);
                }
                unit = Some(v);
            }
            "mult" => {
                let i = parse_usize(sec, item, get_arg(sec, item, 0)?)?;
                let j = parse_usize(sec, item, get_arg(sec, item, 1)?)?;
                let mut v = Vec::new();
                for t in &item.args[2..] {
                    v.push(parse_rat(t).ok_or_else(|| {
                        verr(sec, "mult", format!("bad rational `{t}` at line {}", item.line))
                    })?);
                }
                mults.push((i, j, v, item.line));
            }
            other => return Err(verr(sec, "keys", format!("unknown key `{other}`"))),
        }
    }
    if let Some(a) = builtin {
        return Ok(a);
    }
    let dim = dim.ok_or_else(|| verr(sec, "dim", "missing `dim`"))?;
    let unit = unit.ok_or_else(|| verr(sec, "unit", "missing `unit`"))?;
    if unit.len() != dim {
        return Err(verr(sec, "unit", "unit length must equal dim"));
    }
    let mut mult = vec![Rat::zero(); dim * dim * dim];
    for (i, j, v, line) in mults {
        if i >= dim || j >= dim || v.len() != dim {
            return Err(verr(
                sec,
                "mult",
                format!("bad product declaration at line {line}"),
            ));
        }
        for (k, c) in v.into_iter().enumerate() {
            mult[(i * dim + j) * dim + k] = c;
        }
    }
    Algebra::new(dim, mult, unit).map_err(|e| verr(sec, "algebra laws", e.to_string()))
}

fn build_bimodule(sec: &RawSection, ws: &Workspace) -> Result<Arc<Bimodule>> {
    let mut algebra = None;
    let mut builtin = None;
    let mut dim = None;
    let mut left: BTreeMap<usize, (usize, ExactMatrix)> = BTreeMap::new();
    let mut right: BTreeMap<usize, (usize, ExactMatrix)> = BTreeMap::new();
    for item in &sec.items {
        match item.key.as_str() {
            "algebra" => {
                let name = get_arg(sec, item, 0)?;
                algebra = Some(ws.algebras.get(name).cloned().ok_or_else(|| {
                    verr(sec, "references", format!("unknown algebra `{name}`"))
                })?);
            }
            "builtin" => builtin = Some(get_arg(sec, item, 0)?.to_string()),
            "dim" => dim = Some(parse_usize(sec, item, get_arg(sec, item, 0)?)?),
            "left" | "right" => {
                let i = parse_usize(sec, item, get_arg(sec, item, 0)?)?;
                let d = dim.ok_or_else(|| verr(sec, "dim", "`dim` must come before actions"))?;
                let m = item_matrix(sec, item, d, d)?;
                if item.key == "left" {
                    left.insert(i, (item.line, m));
                } else {
                    right.insert(i, (item.line, m));
                }
            }
            other => return Err(verr(sec, "keys", format!("unknown key `{other}`"))),
        }
    }
    let algebra = algebra.ok_or_else(|| verr(sec, "algebra", "missing `algebra`"))?;
    match builtin.as_deref() {
        Some("regular") => return Ok(Bimodule::regular(algebra)),
        Some("dual") => return Ok(dual_bimodule(&algebra)),
        Some(other) => return Err(verr(sec, "builtin", format!("unknown builtin `{other}`"))),
        None => {}
    }
    let dim = dim.ok_or_else(|| verr(sec, "dim", "missing `dim`"))?;
    let collect = |table: BTreeMap<usize, (usize, ExactMatrix)>| -> Result<Vec<ExactMatrix>> {
        let mut out = Vec::new();
        for i in 0..algebra.dim() {
            out.push(match table.get(&i) {
                Some((_, m)) => m.clone(),
                None => ExactMatrix::zero(dim, dim),
            });
        }
        Ok(out)
    };
    Bimodule::new(algebra.clone(), dim, collect(left)?, collect(right)?)
        .map_err(|e| verr(sec, "bimodule laws", e.to_string()))
}

fn build_functor(sec: &RawSection, ws: &Workspace) -> Result<FunctorEntry> {
    let mut kind = None;
    let mut bimodule = None;
    for item in &sec.items {
        match item.key.as_str() {
            "kind" => kind = Some(get_arg(sec, item, 0)?.to_string()),
            "bimodule" => {
                let name = get_arg(sec, item, 0)?;
                bimodule = Some(ws.bimodules.get(name).cloned().ok_or_else(|| {
                    verr(sec, "references", format!("unknown bimodule `{name}`"))
                })?);
            }
            other => return Err(verr(sec, "keys", format!("unknown key `{other}`"))),
        }
    }
    let bimodule = bimodule.ok_or_else(|| verr(sec, "bimodule", "missing `bimodule`"))?;
    match kind.as_deref() {
        Some("tensor") | None => Ok(FunctorEntry::Tensor(
            RepEndofunctor::new(bimodule).map_err(|e| verr(sec, "functor laws", e.to_string()))?,
        )),
        Some("hom") => Ok(FunctorEntry::Hom(HomEndofunctor::new(bimodule))),
        Some(other) => Err(verr(sec, "kind", format!("unknown kind `{other}`"))),
    }
}

fn build_module(sec: &RawSection, ws: &Workspace) -> Result<Arc<Module>> {
    let mut algebra = None;
    let mut builtin: Option<Vec<String>> = None;
    let mut dim = None;
    let mut actions: BTreeMap<usize, ExactMatrix> = BTreeMap::new();
    for item in &sec.items {
        match item.key.as_str() {
            "algebra" => {
                let name = get_arg(sec, item, 0)?;
                algebra = Some(ws.algebras.get(name).cloned().ok_or_else(|| {
                    verr(sec, "references", format!("unknown algebra `{name}`"))
                })?);
            }
            "builtin" => builtin = Some(item.args.clone()),
            "dim" => dim = Some(parse_usize(sec, item, get_arg(sec, item, 0)?)?),
            "action" => {
                let i = parse_usize(sec, item, get_arg(sec, item, 0)?)?;
                let d = dim.ok_or_else(|| verr(sec, "dim", "`dim` must come before actions"))?;
                actions.insert(i, item_matrix(sec, item, d, d)?);
            }
            other => return Err(verr(sec, "keys", format!("unknown key `{other}`"))),
        }
    }
    let algebra = algebra.ok_or_else(|| verr(sec, "algebra", "missing `algebra`"))?;
    if let Some(args) = builtin {
        let which = args.first().map(String::as_str).unwrap_or("");
        return match which {
            "regular" => Ok(Module::regular(algebra)),
            "zero" => Ok(Module::zero(algebra)),
            "simple" => {
                let v: usize = args
                    .get(1)
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| verr(sec, "builtin", "`simple` needs a vertex"))?;
                Ok(simple_an(&algebra, v))
            }
            other => Err(verr(sec, "builtin", format!("unknown builtin `{other}`"))),
        };
    }
    let dim = dim.ok_or_else(|| verr(sec, "dim", "missing `dim`"))?;
    let action: Vec<ExactMatrix> = (0..algebra.dim())
        .map(|i| actions.get(&i).cloned().unwrap_or_else(|| ExactMatrix::zero(dim, dim)))
        .collect();
    Module::new(algebra, dim, action).map_err(|e| verr(sec, "module laws", e.to_string()))
}

fn build_complex(sec: &RawSection, ws: &Workspace) -> Result<ComplexEntry> {
    let mut functor = None;
    let mut flavor = "left".to_string();
    let mut window = None;
    let mut terms: BTreeMap<i64, Arc<Module>> = BTreeMap::new();
    let mut diffs: Vec<(i64, &RawItem)> = Vec::new();
    for item in &sec.items {
        match item.key.as_str() {
            "functor" => {
                let name = get_arg(sec, item, 0)?;
                functor = Some(ws.functors.get(name).cloned().ok_or_else(|| {
                    verr(sec, "references", format!("unknown functor `{name}`"))
                })?);
            }
            "flavor" => flavor = get_arg(sec, item, 0)?.to_string(),
            "window" => {
                let lo = parse_i64(sec, item, get_arg(sec, item, 0)?)?;
                let hi = parse_i64(sec, item, get_arg(sec, item, 1)?)?;
                if hi < lo {
                    return Err(verr(sec, "window", "window must satisfy lo <= hi"));
                }
                window = Some((lo, hi));
            }
            "term" => {
                let n = parse_i64(sec, item, get_arg(sec, item, 0)?)?;
                let name = get_arg(sec, item, 1)?;
                let m = ws.modules.get(name).cloned().ok_or_else(|| {
                    verr(sec, "references", format!("unknown module `{name}`"))
                })?;
                terms.insert(n, m);
            }
            "diff" => {
                let n = parse_i64(sec, item, get_arg(sec, item, 0)?)?;
                diffs.push((n, item));
            }
            other => return Err(verr(sec, "keys", format!("unknown key `{other}`"))),
        }
    }
    let functor = functor.ok_or_else(|| verr(sec, "functor", "missing `functor`"))?;
    let (lo, hi) = window.ok_or_else(|| verr(sec, "window", "missing `window`"))?;
    let algebra = functor.bimodule().algebra().clone();
    let term_vec: Vec<Arc<Module>> = (lo..=hi)
        .map(|n| terms.get(&n).cloned().unwrap_or_else(|| Module::zero(algebra.clone())))
        .collect();
    match (flavor.as_str(), functor) {
        ("left", FunctorEntry::Tensor(f)) => {
            let mut mats = Vec::new();
            for n in lo..hi {
                let src_dim = f.apply(&term_vec[(n - lo) as usize]).module.dim();
                let tgt_dim = term_vec[(n + 1 - lo) as usize].dim();
                let item = diffs.iter().find(|(d, _)| *d == n);
                mats.push(match item {
                    Some((_, it)) => item_matrix(sec, it, tgt_dim, src_dim)?,
                    None => ExactMatrix::zero(tgt_dim, src_dim),
                });
            }
            for (d, it) in &diffs {
                if *d < lo || *d >= hi {
                    return Err(verr(
                        sec,
                        "window",
                        format!("`diff {d}` at line {} is outside the window", it.line),
                    ));
                }
            }
            let c = LeftComplex::new(f, lo, term_vec, mats)
                .map_err(|e| verr(sec, "complex condition", e.to_string()))?;
            Ok(ComplexEntry::Left(c))
        }
        ("right", FunctorEntry::Hom(g)) => {
            let mut mats = Vec::new();
            for n in lo..hi {
                let src_dim = term_vec[(n - lo) as usize].dim();
                let tgt_dim = g.apply(&term_vec[(n + 1 - lo) as usize]).module.dim();
                let item = diffs.iter().find(|(d, _)| *d == n);
                mats.push(match item {
                    Some((_, it)) => item_matrix(sec, it, tgt_dim, src_dim)?,
                    None => ExactMatrix::zero(tgt_dim, src_dim),
                });
            }
            let c = RightComplex::new(g, lo, term_vec, mats)
                .map_err(|e| verr(sec, "complex condition", e.to_string()))?;
            Ok(ComplexEntry::Right(c))
        }
        (fl, _) => Err(verr(
            sec,
            "flavor",
            format!("flavor `{fl}` does not match the functor kind"),
        )),
    }
}

fn build_morphism(sec: &RawSection, ws: &Workspace) -> Result<MorphismEntry> {
    let mut source = None;
    let mut target = None;
    let mut comps: Vec<(i64, &RawItem)> = Vec::new();
    for item in &sec.items {
        match item.key.as_str() {
            "source" => {
                let name = get_arg(sec, item, 0)?;
                source = Some(ws.complexes.get(name).cloned().ok_or_else(|| {
                    verr(sec, "references", format!("unknown complex `{name}`"))
                })?);
            }
            "target" => {
                let name = get_arg(sec, item, 0)?;
                target = Some(ws.complexes.get(name).cloned().ok_or_else(|| {
                    verr(sec, "references", format!("unknown complex `{name}`"))
                })?);
            }
            "component" => {
                let n = parse_i64(sec, item, get_arg(sec, item, 0)?)?;
                comps.push((n, item));
            }
            other => return Err(verr(sec, "keys", format!("unknown key `{other}`"))),
        }
    }
    let source = source.ok_or_else(|| verr(sec, "source", "missing `source`"))?;
    let target = target.ok_or_else(|| verr(sec, "target", "missing `target`"))?;
    match (source, target) {
        (ComplexEntry::Left(s), ComplexEntry::Left(t)) => {
            let range = s.joint_degrees(&t);
            let lo = *range.start();
            let mut mats = Vec::new();
            for n in range.clone() {
                let item = comps.iter().find(|(d, _)| *d == n);
                let rows = t.term(n).dim();
                let cols = s.term(n).dim();
                mats.push(match item {
                    Some((_, it)) => item_matrix(sec, it, rows, cols)?,
                    None => ExactMatrix::zero(rows, cols),
                });
            }
            let m = ChainMap::new(s, t, lo, mats)
                .map_err(|e| verr(sec, "chain squares", e.to_string()))?;
            Ok(MorphismEntry::Left(m))
        }
        (ComplexEntry::Right(s), ComplexEntry::Right(t)) => {
            let range = s.joint_degrees(&t);
            let lo = *range.start();
            let mut mats = Vec::new();
            for n in range.clone() {
                let item = comps.iter().find(|(d, _)| *d == n);
                let rows = t.term(n).dim();
                let cols = s.term(n).dim();
                mats.push(match item {
                    Some((_, it)) => item_matrix(sec, it, rows, cols)?,
                    None => ExactMatrix::zero(rows, cols),
                });
            }
            let m = RightChainMap::new(s, t, lo, mats)
                .map_err(|e| verr(sec, "chain squares", e.to_string()))?;
            Ok(MorphismEntry::Right(m))
        }
        _ => Err(verr(sec, "flavor", "morphism endpoints have mixed flavors")),
    }
}

fn build_nattrans(sec: &RawSection, ws: &Workspace) -> Result<NatTrans> {
    let mut source = None;
    let mut target = None;
    let mut matrix = None;
    for item in &sec.items {
        match item.key.as_str() {
            "source" | "target" => {
                let name = get_arg(sec, item, 0)?;
                let f = ws.functors.get(name).ok_or_else(|| {
                    verr(sec, "references", format!("unknown functor `{name}`"))
                })?;
                let FunctorEntry::Tensor(f) = f else {
                    return Err(verr(sec, "kind", "natural transformations connect tensor functors"));
                };
                if item.key == "source" {
                    source = Some(f.clone());
                } else {
                    target = Some(f.clone());
                }
            }
            "matrix" => matrix = Some(item),
            other => return Err(verr(sec, "keys", format!("unknown key `{other}`"))),
        }
    }
    let source = source.ok_or_else(|| verr(sec, "source", "missing `source`"))?;
    let target = target.ok_or_else(|| verr(sec, "target", "missing `target`"))?;
    let item = matrix.ok_or_else(|| verr(sec, "matrix", "missing `matrix`"))?;
    let m = item_matrix(sec, item, target.bimodule().dim(), source.bimodule().dim())?;
    NatTrans::new(source, target, m).map_err(|e| verr(sec, "bimodule hom laws", e.to_string()))
}

/// Loads and validates a set of workspace files. Entities may reference each
/// other across files; building happens kind by kind so declaration order
/// does not matter.
pub fn load_workspace(files: &[(String, String)]) -> Result<Workspace> {
    let mut sections = Vec::new();
    for (name, text) in files {
        sections.extend(lex_file(name, text)?);
    }
    let mut ws = Workspace::default();
    let insert_prov = |ws: &mut Workspace, kind: &str, sec: &RawSection| {
        ws.provenance.insert(
            format!("{kind}:{}", sec.name),
            Provenance {
                file: sec.file.clone(),
                line: sec.line,
            },
        );
    };
    for kind in ["algebra", "bimodule", "functor", "module", "complex", "morphism", "nattrans"] {
        for sec in sections.iter().filter(|s| s.kind == kind) {
            let duplicate = match kind {
                "algebra" => ws.algebras.contains_key(&sec.name),
                "bimodule" => ws.bimodules.contains_key(&sec.name),
                "functor" => ws.functors.contains_key(&sec.name),
                "module" => ws.modules.contains_key(&sec.name),
                "complex" => ws.complexes.contains_key(&sec.name),
                "morphism" => ws.morphisms.contains_key(&sec.name),
                _ => ws.nattrans.contains_key(&sec.name),
            };
            if duplicate {
                return Err(verr(sec, "names", "duplicate entity name"));
            }
            match kind {
                "algebra" => {
                    let a = build_algebra(sec)?;
                    ws.algebras.insert(sec.name.clone(), a);
                }
                "bimodule" => {
                    let b = build_bimodule(sec, &ws)?;
                    ws.bimodules.insert(sec.name.clone(), b);
                }
                "functor" => {
                    let f = build_functor(sec, &ws)?;
                    ws.functors.insert(sec.name.clone(), f);
                }
                "module" => {
                    let m = build_module(sec, &ws)?;
                    ws.modules.insert(sec.name.clone(), m);
                }
                "complex" => {
                    let c = build_complex(sec, &ws)?;
                    ws.complexes.insert(sec.name.clone(), c);
                }
                "morphism" => {
                    let m = build_morphism(sec, &ws)?;
                    ws.morphisms.insert(sec.name.clone(), m);
                }
                _ => {
                    let t = build_nattrans(sec, &ws)?;
                    ws.nattrans.insert(sec.name.clone(), t);
                }
            }
            insert_prov(&mut ws, kind, sec);
        }
    }
    for sec in &sections {
        if ![
            "algebra",
            "bimodule",
            "functor",
            "module",
            "complex",
            "morphism",
            "nattrans",
        ]
        .contains(&sec.kind.as_str())
        {
            return Err(verr(sec, "kinds", format!("unknown section kind `{}`", sec.kind)));
        }
    }
    Ok(ws)
}

fn emit_matrix(out: &mut String, m: &ExactMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.at(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

/// Serializes an algebra explicitly (not as a builtin) in the input grammar.
pub fn emit_algebra(name: &str, a: &Algebra) -> String {
    let mut out = format!("[algebra {name}]\ndim {}\n", a.dim());
    let unit: Vec<String> = a.unit().iter().map(ToString::to_string).collect();
    out.push_str(&format!("unit {}\n", unit.join(" ")));
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let coeffs: Vec<Rat> = (0..a.dim()).map(|k| a.c(i, j, k).clone()).collect();
            if coeffs.iter().any(|c| !c.is_zero()) {
                let toks: Vec<String> = coeffs.iter().map(ToString::to_string).collect();
                out.push_str(&format!("mult {i} {j} {}\n", toks.join(" ")));
            }
        }
    }
    out
}

pub fn emit_bimodule(name: &str, algebra_name: &str, b: &Bimodule) -> String {
    let mut out = format!("[bimodule {name}]\nalgebra {algebra_name}\ndim {}\n", b.dim());
    for i in 0..b.algebra().dim() {
        out.push_str(&format!("left {i}\n"));
        emit_matrix(&mut out, b.left(i));
    }
    for i in 0..b.algebra().dim() {
        out.push_str(&format!("right {i}\n"));
        emit_matrix(&mut out, b.right(i));
    }
    out
}

pub fn emit_module(name: &str, algebra_name: &str, m: &Module) -> String {
    let mut out = format!("[module {name}]\nalgebra {algebra_name}\ndim {}\n", m.dim());
    for i in 0..m.algebra().dim() {
        out.push_str(&format!("action {i}\n"));
        emit_matrix(&mut out, m.action(i));
    }
    out
}

/// Serializes a left complex, together with synthetic sections for its
/// algebra, bimodule, functor and terms, producing a self-contained file.
pub fn emit_left_complex(name: &str, c: &LeftComplex) -> String {
    let algebra_name = format!("{name}.algebra");
    let bim_name = format!("{name}.bimodule");
    let fun_name = format!("{name}.functor");
    let mut out = String::new();
    out.push_str(&emit_algebra(&algebra_name, c.functor().bimodule().algebra()));
    out.push('\n');
    out.push_str(&emit_bimodule(&bim_name, &algebra_name, c.functor().bimodule()));
    out.push('\n');
    out.push_str(&format!(
        "[functor {fun_name}]\nkind tensor\nbimodule {bim_name}\n\n"
    ));
    let Some((lo, hi)) = c.window() else {
        out.push_str(&format!(
            "[complex {name}]\nfunctor {fun_name}\nflavor left\nwindow 0 0\n"
        ));
        return out;
    };
    for n in lo..=hi {
        out.push_str(&emit_module(
            &format!("{name}.term{n}"),
            &algebra_name,
            &c.term(n),
        ));
        out.push('\n');
    }
    out.push_str(&format!(
        "[complex {name}]\nfunctor {fun_name}\nflavor left\nwindow {lo} {hi}\n"
    ));
    for n in lo..=hi {
        out.push_str(&format!("term {n} {name}.term{n}\n"));
    }
    for n in lo..hi {
        let d = c.diff(n);
        if !d.is_zero() {
            out.push_str(&format!("diff {n}\n"));
            emit_matrix(&mut out, d.matrix());
        }
    }
    out
}

/// Serializes a right complex the same way.
pub fn emit_right_complex(name: &str, c: &RightComplex) -> String {
    let algebra_name = format!("{name}.algebra");
    let bim_name = format!("{name}.bimodule");
    let fun_name = format!("{name}.functor");
    let mut out = String::new();
    out.push_str(&emit_algebra(&algebra_name, c.functor().bimodule().algebra()));
    out.push('\n');
    out.push_str(&emit_bimodule(&bim_name, &algebra_name, c.functor().bimodule()));
    out.push('\n');
    out.push_str(&format!(
        "[functor {fun_name}]\nkind hom\nbimodule {bim_name}\n\n"
    ));
    let Some((lo, hi)) = c.window() else {
        out.push_str(&format!(
            "[complex {name}]\nfunctor {fun_name}\nflavor right\nwindow 0 0\n"
        ));
        return out;
    };
    for n in lo..=hi {
        out.push_str(&emit_module(
            &format!("{name}.term{n}"),
            &algebra_name,
            &c.term(n),
        ));
        out.push('\n');
    }
    out.push_str(&format!(
        "[complex {name}]\nfunctor {fun_name}\nflavor right\nwindow {lo} {hi}\n"
    ));
    for n in lo..=hi {
        out.push_str(&format!("term {n} {name}.term{n}\n"));
    }
    for n in lo..hi {
        let d = c.diff(n);
        if !d.is_zero() {
            out.push_str(&format!("diff {n}\n"));
            emit_matrix(&mut out, d.matrix());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_set_gives_empty_workspace() {
        let ws = load_workspace(&[]).unwrap();
        assert!(ws.algebras.is_empty());
    }

    #[test]
    fn builtin_expansion() {
        let text = "\
[algebra A]
builtin dual_numbers

[bimodule D]
algebra A
builtin dual

[functor F]
kind tensor
bimodule D
";
        let ws = load_workspace(&[("test.fc".into(), text.into())]).unwrap();
        assert_eq!(ws.algebras["A"].dim(), 2);
        assert_eq!(ws.bimodules["D"].dim(), 2);
        assert!(matches!(ws.functors["F"], FunctorEntry::Tensor(_)));
    }

    #[test]
    fn broken_complex_names_the_degree() {
        let text = "\
[algebra K]
builtin ground_field

[bimodule R]
algebra K
builtin regular

[functor F]
kind tensor
bimodule R

[module M]
algebra K
builtin regular

[complex C]
functor F
flavor left
window 0 2
term 0 M
term 1 M
term 2 M
diff 0
1
diff 1
1
";
        let err = load_workspace(&[("bad.fc".into(), text.into())]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("degree 0"), "got: {msg}");
        assert!(msg.contains("bad.fc"), "got: {msg}");
    }

    #[test]
    fn parse_errors_carry_file_and_line() {
        let text = "[algebra A\nbuiltin dual_numbers\n";
        let err = load_workspace(&[("p.fc".into(), text.into())]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("p.fc:1"), "got: {msg}");

        let text = "stray line\n";
        let err = load_workspace(&[("q.fc".into(), text.into())]).unwrap_err();
        assert!(err.to_string().contains("q.fc:1"));
    }

    #[test]
    fn dangling_reference_is_a_load_error() {
        let text = "\
[bimodule D]
algebra NOPE
builtin dual
";
        let err = load_workspace(&[("x.fc".into(), text.into())]).unwrap_err();
        assert!(err.to_string().contains("NOPE"));
    }

    #[test]
    fn emitted_complex_reloads_identically() {
        use crate::algebra::{dual_bimodule, dual_numbers};
        use crate::sample::{module_pool, Sampler};
        let a = dual_numbers();
        let f = RepEndofunctor::new(dual_bimodule(&a)).unwrap();
        let pool = module_pool(&a, 4);
        let mut s = Sampler::new(1);
        for _ in 0..5 {
            let c = s.random_complex(&f, &pool, -2, 2, 3, 4);
            let text = emit_left_complex("c", &c);
            let ws = load_workspace(&[("emitted.fc".into(), text)]).unwrap();
            let ComplexEntry::Left(back) = &ws.complexes["c"] else {
                panic!("expected a left complex");
            };
            assert_eq!(back.as_ref(), c.as_ref());
        }
    }
}

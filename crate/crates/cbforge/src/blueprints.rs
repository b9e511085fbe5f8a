//! Commutator blueprints: the sets `M^G_{α,β}` prescribing
//! `[u_α, u_β] = ∏_{γ ∈ M} u_γ`, their sources, file format and validators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterMatrix, CoxeterSystem, Gen, Label, Word};
use crate::galleries::{min_gal, min_gal_s, shift, shift_index, Gallery, GalleryError};
use crate::report::{show_indices, Limits, Report, Violation};
use crate::roots::{PairOrder, RootError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlueprintError {
    #[error("indices ({0}, {1}) out of range for a gallery of length {2}")]
    IndexOutOfRange(usize, usize, usize),
    #[error("no entry for gallery {0} pair ({1}, {2}) and the table is strict")]
    Missing(Word, usize, usize),
    #[error("pair ({1}, {2}) of gallery {0} has infinite order; the rank-2 tables cannot answer it")]
    NotRank2(Word, usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown built-in blueprint {0:?}")]
    UnknownBuiltin(String),
    #[error("internal consistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// Positions (1-based, in table order) of the commutator of `β_p` and `β_q`, `p < q`,
/// in the rank-2 Moufang tables over F₂.
pub fn moufang_table(m: u32, p: usize, q: usize) -> &'static [usize] {
    match (m, p, q) {
        (3, 1, 3) => &[2],
        (4, 1, 4) => &[2, 3],
        (6, 1, 3) => &[2],
        (6, 3, 5) => &[4],
        (6, 1, 5) => &[2, 4],
        (6, 2, 6) => &[4],
        (6, 1, 6) => &[2, 3, 4, 5],
        _ => &[],
    }
}

/// What to answer for a triple a file does not list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefaultMode {
    Empty,
    Strict,
    Rank2,
}

/// Explicit entries keyed by gallery type and 0-based index pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FileTable {
    entries: BTreeMap<(Word, usize, usize), Vec<usize>>,
    strict: bool,
}

impl FileTable {
    /// The entry stored at the longest prefix of `g` that lists the pair.
    fn lookup(&self, g: &Gallery, i: usize, j: usize) -> Option<&Vec<usize>> {
        (j + 1..=g.len()).rev().find_map(|len| self.entries.get(&(g.word().prefix(len), i, j)))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Where the commutation data comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// Rank-2 Moufang tables on every finite-order pair.
    Rank2Table,
    /// All sets empty.
    AllEmpty,
    /// Explicit file entries.
    File(FileTable),
    /// Rank-2 tables for finite-order pairs, the inner source for the rest.
    Composite(Box<Source>),
}

/// A commutator blueprint on a Coxeter system.
#[derive(Clone, Debug)]
pub struct Blueprint {
    name: String,
    sys: CoxeterSystem,
    source: Source,
    warnings: Vec<String>,
}

impl Blueprint {
    pub fn new(name: impl Into<String>, matrix: CoxeterMatrix, source: Source) -> Self {
        Blueprint { name: name.into(), sys: CoxeterSystem::new(matrix), source, warnings: Vec::new() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.sys
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    /// Conflicts noticed while ingesting (file values overridden by rank-2 tables).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `M^G_{α_i, α_j}` as increasing 0-based indices strictly between `i` and `j`.
    pub fn query(&self, g: &Gallery, i: usize, j: usize) -> Result<Vec<usize>, BlueprintError> {
        if i > j || j >= g.len() {
            return Err(BlueprintError::IndexOutOfRange(i, j, g.len()));
        }
        if i == j {
            return Ok(Vec::new());
        }
        let out = answer(&self.source, &self.sys, g, i, j)?;
        if cfg!(debug_assertions) {
            let open = self.sys.open_interval(g, i, j);
            if out.windows(2).any(|p| p[0] >= p[1]) || out.iter().any(|k| !open.contains(k)) {
                return Err(BlueprintError::Internal(format!(
                    "answer {} for {} ({}, {}) leaves the open interval",
                    show_indices(&out),
                    g.word(),
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(out)
    }

    /// Built-in blueprints: `rank2:m2`, `rank2:m3`, `rank2:m4`, `rank2:m6lr`
    /// (edge directed from 1 to 2), `rank2:m6rl`, and `allempty:universalN`.
    pub fn builtin(name: &str) -> Result<Blueprint, BlueprintError> {
        let unknown = || BlueprintError::UnknownBuiltin(name.to_string());
        if let Some(kind) = name.strip_prefix("rank2:") {
            let (label, lead) = match kind {
                "m2" => (Label::Two, 0),
                "m3" => (Label::Three, 0),
                "m4" => (Label::Four, 0),
                "m6lr" => (Label::Six, 1),
                "m6rl" => (Label::Six, 0),
                _ => return Err(unknown()),
            };
            return Ok(Blueprint::new(name, CoxeterMatrix::dihedral(label, lead)?, Source::Rank2Table));
        }
        if let Some(n) = name.strip_prefix("allempty:universal") {
            let n: usize = n.parse().map_err(|_| unknown())?;
            if n == 0 {
                return Err(unknown());
            }
            return Ok(Blueprint::new(name, CoxeterMatrix::universal(n)?, Source::AllEmpty));
        }
        Err(unknown())
    }

    pub fn builtin_names() -> Vec<&'static str> {
        vec!["rank2:m2", "rank2:m3", "rank2:m4", "rank2:m6lr", "rank2:m6rl", "allempty:universal3"]
    }

    /// Parse the line-oriented blueprint format.
    pub fn ingest(name: impl Into<String>, text: &str) -> Result<Blueprint, BlueprintError> {
        ingest_text(name.into(), text)
    }

    /// Write every triple of every gallery of `ball(r)` as a strict file.
    pub fn serialize(&self, r: usize, limits: &Limits) -> Result<String, BlueprintError> {
        let n = self.sys.rank();
        let m = self.sys.matrix();
        let mut out = String::new();
        writeln!(out, "# {}", self.name).unwrap();
        writeln!(out, "rank {n}").unwrap();
        for s in 0..n {
            for t in s + 1..n {
                writeln!(out, "m {} {} {}", s + 1, t + 1, m.label(s, t)).unwrap();
            }
        }
        for &(t, s) in m.directed6() {
            writeln!(out, "dir6 {} {}", t + 1, s + 1).unwrap();
        }
        writeln!(out, "default strict").unwrap();
        for w in self.sys.ball(r)? {
            for g in min_gal(&self.sys, &w, limits.galleries)? {
                for j in 0..g.len() {
                    for i in 0..j {
                        let ks = self.query(&g, i, j)?;
                        let ks: Vec<String> = ks.iter().map(|k| (k + 1).to_string()).collect();
                        writeln!(out, "rel {} {} {} : {}", g.word(), i + 1, j + 1, ks.join(" ")).unwrap();
                    }
                }
            }
        }
        Ok(out)
    }
}

fn answer(src: &Source, sys: &CoxeterSystem, g: &Gallery, i: usize, j: usize) -> Result<Vec<usize>, BlueprintError> {
    match src {
        Source::AllEmpty => Ok(Vec::new()),
        Source::Rank2Table => rank2_answer(sys, g, i, j)?.ok_or_else(|| BlueprintError::NotRank2(g.word().clone(), i + 1, j + 1)),
        Source::File(ft) => match ft.lookup(g, i, j) {
            Some(v) => Ok(v.clone()),
            None if ft.strict => Err(BlueprintError::Missing(g.word().clone(), i + 1, j + 1)),
            None => Ok(Vec::new()),
        },
        Source::Composite(inner) => match rank2_answer(sys, g, i, j)? {
            Some(v) => Ok(v),
            None => answer(inner, sys, g, i, j),
        },
    }
}

/// Rank-2 table value for a finite-order pair, `None` for infinite order.
fn rank2_answer(sys: &CoxeterSystem, g: &Gallery, i: usize, j: usize) -> Result<Option<Vec<usize>>, BlueprintError> {
    let roots = g.roots();
    if let PairOrder::Infinite = sys.pair_order(&roots[i], &roots[j])? {
        return Ok(None);
    }
    let frame = sys.dihedral_frame(&roots[i], &roots[j])?;
    let m = frame.roots.len() as u32;
    let (Some(p), Some(q)) = (frame.position(&roots[i]), frame.position(&roots[j])) else {
        return Err(BlueprintError::Internal("pair missing from its dihedral frame".into()));
    };
    let (p, q) = (p.min(q) + 1, p.max(q) + 1);
    let mut out = Vec::new();
    for &pos in moufang_table(m, p, q) {
        let idx = g
            .index_of(&frame.roots[pos - 1])
            .ok_or_else(|| BlueprintError::Internal(format!("table root {pos} not crossed by {}", g.word())))?;
        out.push(idx);
    }
    out.sort_unstable();
    Ok(Some(out))
}

fn ingest_text(name: String, text: &str) -> Result<Blueprint, BlueprintError> {
    let perr = |line: usize, msg: &str| BlueprintError::Parse { line, msg: msg.to_string() };
    let mut rank: Option<usize> = None;
    let mut labels: BTreeMap<(Gen, Gen), Label> = BTreeMap::new();
    let mut dirs: Vec<(Gen, Gen)> = Vec::new();
    let mut default: Option<DefaultMode> = None;
    let mut rels: Vec<(usize, Word, usize, usize, Vec<usize>)> = Vec::new();

    for (no, raw) in text.lines().enumerate() {
        let line = no + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let gen = |tok: &str| -> Result<Gen, BlueprintError> {
            let r = rank.ok_or_else(|| perr(line, "`rank` must come first"))?;
            match tok.parse::<usize>() {
                Ok(k) if (1..=r).contains(&k) => Ok(k - 1),
                _ => Err(perr(line, &format!("bad generator {tok:?}"))),
            }
        };
        match toks[0] {
            "rank" => {
                if rank.is_some() || toks.len() != 2 {
                    return Err(perr(line, "expected a single `rank N`"));
                }
                match toks[1].parse::<usize>() {
                    Ok(n) if n > 0 => rank = Some(n),
                    _ => return Err(perr(line, "rank must be a positive integer")),
                }
            }
            "m" => {
                if toks.len() != 4 {
                    return Err(perr(line, "expected `m i j v`"));
                }
                let (s, t) = (gen(toks[1])?, gen(toks[2])?);
                if s == t {
                    return Err(perr(line, "diagonal entries are fixed"));
                }
                let label: Label = toks[3].parse().map_err(|_| perr(line, "label must be 2, 3, 4, 6 or inf"))?;
                if labels.insert((s.min(t), s.max(t)), label).is_some() {
                    return Err(perr(line, "duplicate `m` entry"));
                }
            }
            "dir6" => {
                if toks.len() != 3 {
                    return Err(perr(line, "expected `dir6 t s`"));
                }
                dirs.push((gen(toks[1])?, gen(toks[2])?));
            }
            "default" => {
                if default.is_some() || toks.len() != 2 {
                    return Err(perr(line, "expected a single `default empty|strict|rank2`"));
                }
                default = Some(match toks[1] {
                    "empty" => DefaultMode::Empty,
                    "strict" => DefaultMode::Strict,
                    "rank2" => DefaultMode::Rank2,
                    _ => return Err(perr(line, "default must be empty, strict or rank2")),
                });
            }
            "rel" => {
                let colon = toks.iter().position(|t| *t == ":").ok_or_else(|| perr(line, "missing `:`"))?;
                if colon != 4 {
                    return Err(perr(line, "expected `rel w i j : k...`"));
                }
                let word = Word::parse_dotted(toks[1]).map_err(|e| perr(line, &e.to_string()))?;
                for &g in word.letters() {
                    gen(&(g + 1).to_string())?;
                }
                let idx = |tok: &str| -> Result<usize, BlueprintError> {
                    match tok.parse::<usize>() {
                        Ok(k) if k >= 1 => Ok(k - 1),
                        _ => Err(perr(line, &format!("bad index {tok:?}"))),
                    }
                };
                let (i, j) = (idx(toks[2])?, idx(toks[3])?);
                let ks = toks[5..].iter().map(|t| idx(t)).collect::<Result<Vec<_>, _>>()?;
                rels.push((line, word, i, j, ks));
            }
            other => return Err(perr(line, &format!("unknown directive {other:?}"))),
        }
    }

    let n = rank.ok_or_else(|| perr(0, "missing `rank`"))?;
    let mut matrix = vec![vec![Label::Two; n]; n];
    for s in 0..n {
        for t in s + 1..n {
            let l = *labels
                .get(&(s, t))
                .ok_or_else(|| perr(0, &format!("missing `m {} {} v`", s + 1, t + 1)))?;
            matrix[s][t] = l;
            matrix[t][s] = l;
        }
    }
    let matrix = CoxeterMatrix::new(matrix, dirs).map_err(|e| perr(0, &e.to_string()))?;
    let sys = CoxeterSystem::new(matrix.clone());
    let mode = default.unwrap_or(DefaultMode::Empty);

    let mut table = FileTable { entries: BTreeMap::new(), strict: mode == DefaultMode::Strict };
    let mut warnings = Vec::new();
    for (line, word, i, j, ks) in rels {
        let g = Gallery::new(&sys, word.clone()).map_err(|e| perr(line, &e.to_string()))?;
        if i >= j || j >= g.len() {
            return Err(perr(line, "need 1 <= i < j <= length of the gallery"));
        }
        if ks.windows(2).any(|p| p[0] >= p[1]) {
            return Err(perr(line, "entries must be strictly increasing"));
        }
        let open = sys.open_interval(&g, i, j);
        if let Some(k) = ks.iter().find(|k| !open.contains(k)) {
            return Err(perr(line, &format!("index {} is not inside the open interval ({}, {})", k + 1, i + 1, j + 1)));
        }
        if mode == DefaultMode::Rank2 {
            if let Some(forced) = rank2_answer(&sys, &g, i, j).map_err(|e| perr(line, &e.to_string()))? {
                if forced != ks {
                    warnings.push(format!(
                        "line {line}: rel {word} {} {} : {} overridden by the rank-2 table value {}",
                        i + 1,
                        j + 1,
                        show_indices(&ks),
                        show_indices(&forced)
                    ));
                }
            }
        }
        if table.entries.insert((word, i, j), ks).is_some() {
            return Err(perr(line, "duplicate `rel` entry"));
        }
    }
    let source = match mode {
        DefaultMode::Rank2 => Source::Composite(Box::new(Source::File(table))),
        _ => Source::File(table),
    };
    Ok(Blueprint { name, sys, source, warnings })
}

fn query_text(bp: &Blueprint, g: &Gallery, i: usize, j: usize) -> Result<Vec<usize>, String> {
    bp.query(g, i, j).map_err(|e| e.to_string())
}

fn show(r: &Result<Vec<usize>, String>) -> String {
    match r {
        Ok(v) => show_indices(v),
        Err(e) => format!("error({e})"),
    }
}

/// Prefix stability: answers for a gallery agree with those of its extensions.
/// Witness records carry the prefix `H` as `gallery` and the extension as `w`.
pub fn validate_cb1(bp: &Blueprint, r: usize, limits: &Limits) -> Result<Report, BlueprintError> {
    let sys = bp.system();
    let mut rep = Report::new(format!("CB1 {} r={r}", bp.name()));
    for w in sys.ball(r)? {
        for g in min_gal(sys, &w, limits.galleries)? {
            for len in 2..g.len() {
                let h = g.prefix(len);
                for j in 0..len {
                    for i in 0..j {
                        let (a, b) = (query_text(bp, &h, i, j), query_text(bp, &g, i, j));
                        rep.check(a == b, || {
                            Violation::new("CB1").w(g.word()).gallery(h.word()).pair(i, j).expected(show(&a)).found(show(&b))
                        });
                    }
                }
            }
        }
    }
    Ok(rep.finish())
}

/// The values forced on `Min(r_J)` for every spherical pair.
pub fn validate_cb2(bp: &Blueprint, limits: &Limits) -> Result<Report, BlueprintError> {
    let sys = bp.system();
    let mat = sys.matrix();
    let mut rep = Report::new(format!("CB2 {}", bp.name()));
    for s in 0..sys.rank() {
        for t in s + 1..sys.rank() {
            let Some(m) = mat.order(s, t) else { continue };
            let m = m as usize;
            let longest = sys.longest_element(&[s, t])?;
            let lead = mat.leading(s, t);
            for g in min_gal(sys, &longest, limits.galleries)? {
                if m == 6 && g.first_letter() != Some(lead) {
                    continue;
                }
                for j in 0..m {
                    for i in 0..j {
                        let expected: Vec<usize> = if m == 6 {
                            moufang_table(6, i + 1, j + 1).iter().map(|p| p - 1).collect()
                        } else if (i, j) == (0, m - 1) {
                            (1..m - 1).collect()
                        } else {
                            Vec::new()
                        };
                        let found = query_text(bp, &g, i, j);
                        let ok = matches!(&found, Ok(v) if *v == expected);
                        rep.check(ok, || {
                            Violation::new("CB2")
                                .w(&longest)
                                .gallery(g.word())
                                .pair(i, j)
                                .expected(show_indices(&expected))
                                .found(show(&found))
                        });
                    }
                }
            }
        }
    }
    Ok(rep.finish())
}

/// `M^{sG}_{sα,sβ} = s·M^G_{α,β}` for all `w ∈ ball(r)`, `s`, `G ∈ Min_s(w)`.
pub fn validate_weyl(bp: &Blueprint, r: usize, limits: &Limits) -> Result<Report, BlueprintError> {
    let sys = bp.system();
    let mut rep = Report::new(format!("Weyl {} r={r}", bp.name()));
    for w in sys.ball(r)? {
        for s in 0..sys.rank() {
            for g in min_gal_s(sys, &w, s, limits.galleries)? {
                let sg = shift(sys, &g, s)?;
                let map = |k: usize| shift_index(sys, &g, s, k);
                for j in 0..g.len() {
                    let Some(j2) = map(j) else { continue };
                    for i in 0..j {
                        let Some(i2) = map(i) else { continue };
                        let image = query_text(bp, &g, i, j).map(|v| v.into_iter().filter_map(map).collect::<Vec<_>>());
                        let found = query_text(bp, &sg, i2, j2);
                        rep.check(image.is_ok() && image == found, || {
                            Violation::new("Weyl").w(&w).s(s).gallery(g.word()).pair(i, j).expected(show(&image)).found(show(&found))
                        });
                    }
                }
            }
        }
    }
    Ok(rep.finish())
}

//! Coxeter systems with labels in {2, 3, 4, 6, ∞}: the geometric
//! representation, reduced words, descents, normal forms and balls.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::qf24::Qf24;

/// Index of a simple reflection, `0..rank`.
pub type Gen = usize;

/// A vector in the geometric representation, coordinates in the simple-root basis.
pub type Vector = Vec<Qf24>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("generator {0} out of range for rank {1}")]
    GeneratorOutOfRange(Gen, usize),
    #[error("label for ({0}, {1}) must be 2, 3, 4, 6 or inf")]
    BadLabel(Gen, Gen),
    #[error("edge ({0}, {1}) labelled 6 needs exactly one direction")]
    MissingDirection(Gen, Gen),
    #[error("direction given for ({0}, {1}) which is not labelled 6")]
    StrayDirection(Gen, Gen),
    #[error("subset {0:?} does not generate a finite rank <= 2 parabolic")]
    NotSpherical(Vec<Gen>),
    #[error("ball of radius {radius} exceeds the cap of {cap} elements")]
    BallCap { radius: usize, cap: usize },
    #[error("cannot parse word {0:?}")]
    BadWord(String),
}

/// Off-diagonal Coxeter label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Two,
    Three,
    Four,
    Six,
    Infinite,
}

impl Label {
    pub fn from_order(m: Option<u32>) -> Option<Label> {
        match m {
            Some(2) => Some(Label::Two),
            Some(3) => Some(Label::Three),
            Some(4) => Some(Label::Four),
            Some(6) => Some(Label::Six),
            None => Some(Label::Infinite),
            _ => None,
        }
    }

    pub fn order(self) -> Option<u32> {
        match self {
            Label::Two => Some(2),
            Label::Three => Some(3),
            Label::Four => Some(4),
            Label::Six => Some(6),
            Label::Infinite => None,
        }
    }

    /// `2B(e_s, e_t) = -2cos(π/m)`, with `-2` for ∞.
    pub fn doubled_form(self) -> Qf24 {
        match self {
            Label::Two => Qf24::ZERO,
            Label::Three => Qf24::int(-1),
            Label::Four => -Qf24::sqrt2(),
            Label::Six => -Qf24::sqrt3(),
            Label::Infinite => Qf24::int(-2),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.order() {
            Some(m) => write!(f, "{m}"),
            None => write!(f, "inf"),
        }
    }
}

impl FromStr for Label {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "inf" | "∞" => Ok(Label::Infinite),
            _ => s.parse::<u32>().ok().and_then(|m| Label::from_order(Some(m))).ok_or(()),
        }
    }
}

/// Coxeter matrix together with the orientation of every 6-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    rank: usize,
    labels: Vec<Vec<Label>>,
    /// `(t, s)` pairs: the simple root of `s` starts the oriented rank-2 table.
    directed6: BTreeSet<(Gen, Gen)>,
}

impl CoxeterMatrix {
    /// `labels[i][j]` for `i != j`; the diagonal is ignored.
    pub fn new(
        labels: Vec<Vec<Label>>,
        directed6: impl IntoIterator<Item = (Gen, Gen)>,
    ) -> Result<Self, CoxeterError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(CoxeterError::ZeroRank);
        }
        for (i, row) in labels.iter().enumerate() {
            if row.len() != rank {
                return Err(CoxeterError::GeneratorOutOfRange(row.len(), rank));
            }
            for j in 0..rank {
                if i != j && labels[j][i] != row[j] {
                    return Err(CoxeterError::BadLabel(i, j));
                }
            }
        }
        let directed6: BTreeSet<(Gen, Gen)> = directed6.into_iter().collect();
        for &(t, s) in &directed6 {
            if t >= rank || s >= rank {
                return Err(CoxeterError::GeneratorOutOfRange(t.max(s), rank));
            }
            if t == s || labels[t][s] != Label::Six {
                return Err(CoxeterError::StrayDirection(t, s));
            }
        }
        for s in 0..rank {
            for t in s + 1..rank {
                if labels[s][t] == Label::Six {
                    let n = directed6.contains(&(s, t)) as u8 + directed6.contains(&(t, s)) as u8;
                    if n != 1 {
                        return Err(CoxeterError::MissingDirection(s, t));
                    }
                }
            }
        }
        Ok(CoxeterMatrix { rank, labels, directed6 })
    }

    /// All off-diagonal labels ∞.
    pub fn universal(rank: usize) -> Result<Self, CoxeterError> {
        Self::new(vec![vec![Label::Infinite; rank]; rank], [])
    }

    /// Rank 2 with label `m`; `first` is the generator whose simple root
    /// starts the oriented table when `m = 6`.
    pub fn dihedral(m: Label, first: Gen) -> Result<Self, CoxeterError> {
        let labels = vec![vec![m; 2]; 2];
        let dir = if m == Label::Six { vec![(1 - first, first)] } else { vec![] };
        Self::new(labels, dir)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, s: Gen, t: Gen) -> Label {
        self.labels[s][t]
    }

    /// `m_st`, `None` for ∞; `Some(1)` on the diagonal.
    pub fn order(&self, s: Gen, t: Gen) -> Option<u32> {
        if s == t {
            Some(1)
        } else {
            self.labels[s][t].order()
        }
    }

    pub fn directed6(&self) -> &BTreeSet<(Gen, Gen)> {
        &self.directed6
    }

    /// For a spherical pair, the generator whose simple root is listed first
    /// in the rank-2 table: the oriented end of a 6-edge, otherwise the smaller.
    pub fn leading(&self, s: Gen, t: Gen) -> Gen {
        if self.directed6.contains(&(t, s)) {
            s
        } else if self.directed6.contains(&(s, t)) {
            t
        } else {
            s.min(t)
        }
    }
}

/// A word in the generators; acts on the left, last letter first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Parse a dot-separated list of 1-based generators; `e` or empty is the identity.
    pub fn parse_dotted(text: &str) -> Result<Word, CoxeterError> {
        let t = text.trim();
        if t.is_empty() || t == "e" {
            return Ok(Word::empty());
        }
        t.split('.')
            .map(|p| match p.trim().parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k - 1),
                _ => Err(CoxeterError::BadWord(text.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// Dot-separated, 1-based; the identity prints as `e`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.0.iter().map(|g| (g + 1).to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl From<Vec<Gen>> for Word {
    fn from(v: Vec<Gen>) -> Self {
        Word(v)
    }
}

/// Sign of a root vector: the sign of its first nonzero coordinate.
pub fn vector_sign(v: &[Qf24]) -> i8 {
    v.iter().map(|x| x.signum()).find(|&s| s != 0).unwrap_or(0)
}

pub fn negate(v: &[Qf24]) -> Vector {
    v.iter().map(|x| -*x).collect()
}

/// A Coxeter system with its (doubled) standard bilinear form.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    form2: Vec<Vec<Qf24>>,
    ball_cap: usize,
}

pub const DEFAULT_BALL_CAP: usize = 200_000;

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        let n = matrix.rank();
        let form2 = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| if s == t { Qf24::int(2) } else { matrix.label(s, t).doubled_form() })
                    .collect()
            })
            .collect();
        CoxeterSystem { matrix, form2, ball_cap: DEFAULT_BALL_CAP }
    }

    pub fn with_ball_cap(mut self, cap: usize) -> Self {
        self.ball_cap = cap;
        self
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// `2B(e_s, e_t)`.
    pub fn form2(&self, s: Gen, t: Gen) -> Qf24 {
        self.form2[s][t]
    }

    /// `2B(u, v)` for arbitrary vectors.
    pub fn pairing2(&self, u: &[Qf24], v: &[Qf24]) -> Qf24 {
        let mut acc = Qf24::ZERO;
        for (s, us) in u.iter().enumerate() {
            if us.is_zero() {
                continue;
            }
            for (t, vt) in v.iter().enumerate() {
                if !vt.is_zero() && !self.form2[s][t].is_zero() {
                    acc += *us * self.form2[s][t] * *vt;
                }
            }
        }
        acc
    }

    pub fn simple_root(&self, s: Gen) -> Vector {
        let mut v = vec![Qf24::ZERO; self.rank()];
        v[s] = Qf24::ONE;
        v
    }

    /// `σ_s(v) = v - 2B(e_s, v) e_s`, in place.
    pub fn reflect_in_place(&self, s: Gen, v: &mut [Qf24]) {
        let mut c = Qf24::ZERO;
        for (t, x) in v.iter().enumerate() {
            if !x.is_zero() && !self.form2[s][t].is_zero() {
                c += self.form2[s][t] * *x;
            }
        }
        v[s] -= c;
    }

    pub fn reflect(&self, s: Gen, v: &[Qf24]) -> Vector {
        let mut out = v.to_vec();
        self.reflect_in_place(s, &mut out);
        out
    }

    /// `w·v` for `w = s1⋯sk`: the last letter acts first.
    pub fn apply_word(&self, w: &Word, v: &[Qf24]) -> Vector {
        let mut out = v.to_vec();
        for &s in w.0.iter().rev() {
            self.reflect_in_place(s, &mut out);
        }
        out
    }

    /// `w⁻¹·v`: the first letter acts first.
    pub fn apply_inverse(&self, w: &Word, v: &[Qf24]) -> Vector {
        let mut out = v.to_vec();
        for &s in &w.0 {
            self.reflect_in_place(s, &mut out);
        }
        out
    }

    fn check_word(&self, w: &Word) {
        for &g in &w.0 {
            assert!(g < self.rank(), "generator {g} out of range for rank {}", self.rank());
        }
    }

    /// Prefix roots `s1⋯s_{i-1}·e_{s_i}` of a word, computed in one pass.
    pub fn prefix_roots(&self, w: &Word) -> Vec<Vector> {
        let n = self.rank();
        // columns of the running product s1⋯s_{i-1}
        let mut cols: Vec<Vector> = (0..n).map(|s| self.simple_root(s)).collect();
        let mut out = Vec::with_capacity(w.len());
        for &s in &w.0 {
            let col_s = cols[s].clone();
            out.push(col_s.clone());
            // (P σ_s) e_t = P e_t - 2B(e_s, e_t) P e_s
            for t in 0..n {
                let k = if t == s { Qf24::int(2) } else { self.form2[s][t] };
                if k.is_zero() {
                    continue;
                }
                for (x, y) in cols[t].iter_mut().zip(&col_s) {
                    *x -= k * *y;
                }
            }
        }
        out
    }

    pub fn is_left_descent(&self, s: Gen, w: &Word) -> bool {
        vector_sign(&self.apply_inverse(w, &self.simple_root(s))) < 0
    }

    pub fn is_right_descent(&self, s: Gen, w: &Word) -> bool {
        vector_sign(&self.apply_word(w, &self.simple_root(s))) < 0
    }

    pub fn left_descents(&self, w: &Word) -> Vec<Gen> {
        (0..self.rank()).filter(|&s| self.is_left_descent(s, w)).collect()
    }

    pub fn right_descents(&self, w: &Word) -> Vec<Gen> {
        (0..self.rank()).filter(|&s| self.is_right_descent(s, w)).collect()
    }

    /// A reduced word for the same element, by the exchange condition.
    pub fn reduce(&self, w: &Word) -> Word {
        self.check_word(w);
        let mut letters: Vec<Gen> = Vec::with_capacity(w.len());
        let mut roots: Vec<Vector> = Vec::with_capacity(w.len());
        for &s in &w.0 {
            let current = Word(letters);
            let image = self.apply_word(&current, &self.simple_root(s));
            letters = current.0;
            if vector_sign(&image) > 0 {
                letters.push(s);
                roots.push(image);
            } else {
                let target = negate(&image);
                let i = roots
                    .iter()
                    .position(|r| *r == target)
                    .expect("descent root must be a crossed root");
                letters.remove(i);
                roots = self.prefix_roots(&Word(letters.clone()));
            }
        }
        Word(letters)
    }

    pub fn length(&self, w: &Word) -> usize {
        self.reduce(w).len()
    }

    fn simple_index(&self, v: &[Qf24]) -> Option<Gen> {
        let mut found = None;
        for (s, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if *x != Qf24::ONE || found.is_some() {
                return None;
            }
            found = Some(s);
        }
        found
    }

    /// Lexicographically least reduced word: repeatedly strip the smallest
    /// left descent, tracking the inversion set.
    pub fn normal_form(&self, w: &Word) -> Word {
        let reduced = self.reduce(w);
        let mut inversions = self.prefix_roots(&reduced);
        let mut out = Vec::with_capacity(reduced.len());
        while !inversions.is_empty() {
            let s = inversions
                .iter()
                .filter_map(|r| self.simple_index(r))
                .min()
                .expect("a nontrivial element has a left descent");
            out.push(s);
            inversions = inversions
                .into_iter()
                .filter(|r| self.simple_index(r) != Some(s))
                .map(|r| self.reflect(s, &r))
                .collect();
        }
        Word(out)
    }

    /// Normal form of the product.
    pub fn mul(&self, u: &Word, v: &Word) -> Word {
        self.normal_form(&u.concat(v))
    }

    pub fn inverse(&self, w: &Word) -> Word {
        self.normal_form(&w.reversed())
    }

    pub fn same_element(&self, u: &Word, v: &Word) -> bool {
        self.normal_form(u) == self.normal_form(v)
    }

    /// All elements of length at most `r`, as normal forms, ordered by
    /// length and then lexicographically.
    pub fn ball(&self, r: usize) -> Result<Vec<Word>, CoxeterError> {
        let mut all = vec![Word::empty()];
        let mut seen: HashSet<Word> = all.iter().cloned().collect();
        let mut layer = all.clone();
        for _ in 0..r {
            let mut next: BTreeSet<Word> = BTreeSet::new();
            for w in &layer {
                for s in 0..self.rank() {
                    if self.is_right_descent(s, w) {
                        continue;
                    }
                    let nf = self.normal_form(&w.concat(&Word(vec![s])));
                    if !seen.contains(&nf) {
                        next.insert(nf);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            layer = next.into_iter().collect();
            for w in &layer {
                seen.insert(w.clone());
            }
            all.extend(layer.iter().cloned());
            if all.len() > self.ball_cap {
                return Err(CoxeterError::BallCap { radius: r, cap: self.ball_cap });
            }
        }
        Ok(all)
    }

    /// Longest element of `⟨J⟩` for `|J| ≤ 2`, as the alternating word starting with `J[0]`.
    pub fn longest_element(&self, j: &[Gen]) -> Result<Word, CoxeterError> {
        match *j {
            [s] => Ok(Word(vec![s])),
            [s, t] if s != t => match self.matrix.order(s, t) {
                Some(m) => Ok(alternating(s, t, m as usize)),
                None => Err(CoxeterError::NotSpherical(j.to_vec())),
            },
            _ => Err(CoxeterError::NotSpherical(j.to_vec())),
        }
    }
}

/// `s t s t …` of the given length.
pub fn alternating(s: Gen, t: Gen, len: usize) -> Word {
    Word((0..len).map(|i| if i % 2 == 0 { s } else { t }).collect())
}

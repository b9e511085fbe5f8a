//! Roots as half-spaces of W, realized as vectors of the geometric
//! representation.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::coxeter::{negate, vector_sign, CoxeterError, CoxeterSystem, Gen, Vector, Word};
use crate::galleries::Gallery;
use crate::qf24::Qf24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("roots are equal or opposite")]
    Degenerate,
    #[error("unexpected value {0} of the bilinear form between two roots")]
    UnexpectedForm(String),
    #[error("root {0} is not crossed by gallery {1}")]
    NotCrossed(String, Word),
    #[error("vector {0} is not a real root")]
    NotARoot(String),
    #[error("no spherical rank-2 residue found for the pair within {0} steps")]
    ResidueSearch(usize),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A root: canonical vector plus an optional expression `w·α_s`.
#[derive(Clone, Debug)]
pub struct Root {
    vec: Vector,
    expr: Option<(Word, Gen)>,
}

impl PartialEq for Root {
    fn eq(&self, other: &Self) -> bool {
        self.vec == other.vec
    }
}

impl Eq for Root {}

impl Hash for Root {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vec.hash(state);
    }
}

impl Root {
    pub fn simple(sys: &CoxeterSystem, s: Gen) -> Root {
        Root { vec: sys.simple_root(s), expr: Some((Word::empty(), s)) }
    }

    /// `w·α_s`, with `w` normalized.
    pub fn from_expr(sys: &CoxeterSystem, w: &Word, s: Gen) -> Root {
        let w = sys.normal_form(w);
        Root { vec: sys.apply_word(&w, &sys.simple_root(s)), expr: Some((w, s)) }
    }

    /// Wrap a vector without an expression.
    pub fn from_vector(vec: Vector) -> Root {
        Root { vec, expr: None }
    }

    pub fn vector(&self) -> &[Qf24] {
        &self.vec
    }

    pub fn expr(&self) -> Option<&(Word, Gen)> {
        self.expr.as_ref()
    }

    pub fn is_positive(&self) -> bool {
        vector_sign(&self.vec) > 0
    }

    pub fn opposite(&self) -> Root {
        Root { vec: negate(&self.vec), expr: None }
    }

    pub fn simple_index(&self) -> Option<Gen> {
        let nonzero: Vec<usize> = (0..self.vec.len()).filter(|&i| !self.vec[i].is_zero()).collect();
        match nonzero[..] {
            [s] if self.vec[s] == Qf24::ONE => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.vec.iter().map(|x| x.to_string()).collect();
        match &self.expr {
            Some((w, s)) => write!(f, "({}, {}) [{}]", w, s + 1, coords.join(", ")),
            None => write!(f, "[{}]", coords.join(", ")),
        }
    }
}

/// Order of `r_α r_β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairOrder {
    Finite(u32),
    Infinite,
}

/// A spherical rank-2 residue `base·⟨s,t⟩` with `base` its minimal chamber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue2 {
    pub base: Word,
    pub pair: (Gen, Gen),
}

/// A rank-2 dihedral subsystem through a pair of roots: the residue and its
/// positive roots `β_1, …, β_m` in table order.
#[derive(Clone, Debug)]
pub struct DihedralFrame {
    pub residue: Residue2,
    /// Generator whose simple root (moved by `base`) is `β_1`.
    pub leading: Gen,
    pub roots: Vec<Root>,
}

impl DihedralFrame {
    pub fn position(&self, r: &Root) -> Option<usize> {
        self.roots.iter().position(|x| x == r)
    }
}

const FRAME_SEARCH_CAP: usize = 100_000;

impl CoxeterSystem {
    /// `w·α`.
    pub fn apply_to_root(&self, w: &Word, alpha: &Root) -> Root {
        let vec = self.apply_word(w, alpha.vector());
        let expr = alpha.expr().map(|(u, s)| (self.normal_form(&w.concat(u)), *s));
        Root { vec, expr }
    }

    /// Chamber `w` lies in the half-space `α` iff `w⁻¹α` is positive.
    pub fn member(&self, w: &Word, alpha: &Root) -> bool {
        vector_sign(&self.apply_inverse(w, alpha.vector())) > 0
    }

    /// Expression `w·α_s` for a root vector, by depth reduction.
    pub fn root_expression(&self, v: &[Qf24]) -> Result<(Word, Gen), RootError> {
        let sign = vector_sign(v);
        if sign == 0 {
            return Err(RootError::NotARoot(format!("{v:?}")));
        }
        let mut cur: Vector = if sign > 0 { v.to_vec() } else { negate(v) };
        let mut path = Vec::new();
        for _ in 0..10_000 {
            if let Some(s) = Root::from_vector(cur.clone()).simple_index() {
                // v = ±(path)·α_s; a negative root is (path·s)·α_s
                if sign < 0 {
                    path.push(s);
                }
                return Ok((self.normal_form(&Word(path)), s));
            }
            let s = (0..self.rank())
                .find(|&s| self.pairing2(&cur, &self.simple_root(s)).is_positive())
                .ok_or_else(|| RootError::NotARoot(format!("{v:?}")))?;
            cur = self.reflect(s, &cur);
            if vector_sign(&cur) <= 0 {
                return Err(RootError::NotARoot(format!("{v:?}")));
            }
            path.push(s);
        }
        Err(RootError::NotARoot(format!("{v:?}")))
    }

    /// Attach an expression if missing.
    pub fn with_expression(&self, alpha: &Root) -> Result<Root, RootError> {
        if alpha.expr.is_some() {
            return Ok(alpha.clone());
        }
        let (w, s) = self.root_expression(alpha.vector())?;
        Ok(Root { vec: alpha.vec.clone(), expr: Some((w, s)) })
    }

    /// Normal form of the reflection `r_α = w s w⁻¹`.
    pub fn reflection_word(&self, alpha: &Root) -> Result<Word, RootError> {
        let (w, s) = match alpha.expr() {
            Some(e) => e.clone(),
            None => self.root_expression(alpha.vector())?,
        };
        Ok(self.normal_form(&w.concat(&Word(vec![s])).concat(&w.reversed())))
    }

    /// Crossed roots of a reduced word, in crossing order.
    pub fn phi_w(&self, w: &Word) -> Vec<Root> {
        self.prefix_roots(w)
            .into_iter()
            .enumerate()
            .map(|(i, vec)| Root { vec, expr: Some((self.normal_form(&w.prefix(i)), w.0[i])) })
            .collect()
    }

    /// Order of `r_α r_β` from `|B(α, β)|`.
    pub fn pair_order(&self, alpha: &Root, beta: &Root) -> Result<PairOrder, RootError> {
        if alpha.vec == beta.vec || alpha.vec == negate(&beta.vec) {
            return Err(RootError::Degenerate);
        }
        let b2 = self.pairing2(alpha.vector(), beta.vector()).abs();
        if b2.is_zero() {
            return Ok(PairOrder::Finite(2));
        }
        if b2 == Qf24::ONE {
            return Ok(PairOrder::Finite(3));
        }
        if b2 == Qf24::sqrt2() {
            return Ok(PairOrder::Finite(4));
        }
        if b2 == Qf24::sqrt3() {
            return Ok(PairOrder::Finite(6));
        }
        if !(b2 - Qf24::int(2)).is_negative() {
            return Ok(PairOrder::Infinite);
        }
        Err(RootError::UnexpectedForm(b2.to_string()))
    }

    /// Radius used to look for a chamber in `(−α)∩(−β)`.
    pub fn prenilpotency_radius(&self, alpha: &Root, beta: &Root) -> Result<usize, RootError> {
        let dp = |r: &Root| -> Result<usize, RootError> {
            Ok(self.reflection_word(r)?.len().div_ceil(2))
        };
        Ok(dp(alpha)? + dp(beta)? + 2)
    }

    /// Whether two positive roots form a prenilpotent pair.
    pub fn prenilpotent(&self, alpha: &Root, beta: &Root) -> Result<bool, RootError> {
        let radius = self.prenilpotency_radius(alpha, beta)?;
        self.prenilpotent_within(alpha, beta, radius)
    }

    /// As [`Self::prenilpotent`] with an explicit search radius for infinite-order pairs.
    pub fn prenilpotent_within(&self, alpha: &Root, beta: &Root, radius: usize) -> Result<bool, RootError> {
        if alpha == beta {
            return Ok(true);
        }
        if let PairOrder::Finite(_) = self.pair_order(alpha, beta)? {
            return Ok(true);
        }
        // the chamber `ws` just outside `w·α_s` settles nested pairs at once
        for root in [alpha, beta] {
            if let Some((w, s)) = root.expr() {
                let c = self.normal_form(&w.concat(&Word(vec![*s])));
                if c.len() <= radius && !self.member(&c, alpha) && !self.member(&c, beta) {
                    return Ok(true);
                }
            }
        }
        Ok(self
            .ball(radius)?
            .iter()
            .any(|w| !self.member(w, alpha) && !self.member(w, beta)))
    }

    /// `γ` lies in the closed cone spanned by `α` and `β` (linearly independent).
    pub fn in_cone(&self, alpha: &Root, beta: &Root, gamma: &Root) -> bool {
        let (a, b, g) = (alpha.vector(), beta.vector(), gamma.vector());
        let n = a.len();
        let mut minor = None;
        'outer: for p in 0..n {
            for q in p + 1..n {
                let det = a[p] * b[q] - a[q] * b[p];
                if !det.is_zero() {
                    minor = Some((p, q, det));
                    break 'outer;
                }
            }
        }
        let Some((p, q, det)) = minor else { return false };
        // γ = (x α + y β) / det
        let x = g[p] * b[q] - g[q] * b[p];
        let y = a[p] * g[q] - a[q] * g[p];
        let ds = det.signum();
        if x.signum() * ds < 0 || y.signum() * ds < 0 {
            return false;
        }
        (0..n).all(|i| g[i] * det == x * a[i] + y * b[i])
    }

    /// Closed interval `[α_i, α_j]` of a gallery, as indices in crossing order.
    ///
    /// When the walls meet, the interval lives in the dihedral subsystem and is
    /// the cone spanned by the two roots. When they are disjoint the roots are
    /// nested, the earlier one inside the later, and the interval is every
    /// crossed root squeezed between them.
    pub fn interval(&self, g: &Gallery, i: usize, j: usize) -> Vec<usize> {
        let (i, j) = (i.min(j), i.max(j));
        if i == j {
            return vec![i];
        }
        let roots = g.roots();
        let disjoint = |a: usize, b: usize| matches!(self.pair_order(&roots[a], &roots[b]), Ok(PairOrder::Infinite));
        let mut out = vec![i];
        if disjoint(i, j) {
            out.extend((i + 1..j).filter(|&k| disjoint(i, k) && disjoint(k, j)));
        } else {
            out.extend((i + 1..j).filter(|&k| self.in_cone(&roots[i], &roots[j], &roots[k])));
        }
        out.push(j);
        out
    }

    /// Open interval `(α_i, α_j)`.
    pub fn open_interval(&self, g: &Gallery, i: usize, j: usize) -> Vec<usize> {
        let mut v = self.interval(g, i, j);
        if v.len() >= 2 {
            v.remove(0);
            v.pop();
        } else {
            v.clear();
        }
        v
    }

    /// Closed interval of two roots of a gallery, checked against the half-space
    /// definition at the given radius.
    pub fn checked_interval(&self, g: &Gallery, i: usize, j: usize, radius: usize) -> Result<Vec<usize>, IntervalMismatch> {
        let fast = self.interval(g, i, j);
        let table = HalfSpaceTable::new(self, radius).map_err(|e| IntervalMismatch { detail: e.to_string() })?;
        let oracle: HashSet<Root> = table.interval(&g.roots()[i], &g.roots()[j]).into_iter().collect();
        let fast_set: HashSet<Root> = fast.iter().map(|&k| g.roots()[k].clone()).collect();
        if oracle == fast_set {
            Ok(fast)
        } else {
            Err(IntervalMismatch { detail: format!("cone gives {} roots, half-space test gives {}", fast_set.len(), oracle.len()) })
        }
    }

    /// Interval by the half-space definition over `ball(r)`.
    pub fn interval_oracle(&self, alpha: &Root, beta: &Root, r: usize) -> Result<Vec<Root>, RootError> {
        Ok(HalfSpaceTable::new(self, r)?.interval(alpha, beta))
    }

    /// The dihedral subsystem containing a finite-order pair of positive roots.
    pub fn dihedral_frame(&self, alpha: &Root, beta: &Root) -> Result<DihedralFrame, RootError> {
        if let PairOrder::Infinite = self.pair_order(alpha, beta)? {
            return Err(RootError::ResidueSearch(0));
        }
        let n = self.rank();
        let support = |v: &Vector| -> Vec<Gen> { (0..n).filter(|&i| !v[i].is_zero()).collect() };
        // breadth-first over v, tracking (v⁻¹α, v⁻¹β)
        let start = (alpha.vec.clone(), beta.vec.clone());
        let mut seen: HashSet<(Vector, Vector)> = HashSet::new();
        seen.insert(start.clone());
        let mut layer = vec![(Vec::<Gen>::new(), start)];
        while !layer.is_empty() {
            for (path, (a, b)) in &layer {
                let mut sup = support(a);
                sup.extend(support(b));
                sup.sort_unstable();
                sup.dedup();
                if sup.len() == 2 && self.matrix().order(sup[0], sup[1]).is_some() {
                    let base = self.normal_form(&Word(path.clone()));
                    return Ok(self.frame_at(base, sup[0], sup[1]));
                }
            }
            let mut next = Vec::new();
            for (path, (a, b)) in &layer {
                for s in 0..n {
                    let state = (self.reflect(s, a), self.reflect(s, b));
                    if seen.insert(state.clone()) {
                        let mut p = path.clone();
                        p.push(s);
                        next.push((p, state));
                    }
                }
            }
            if seen.len() > FRAME_SEARCH_CAP {
                return Err(RootError::ResidueSearch(FRAME_SEARCH_CAP));
            }
            layer = next;
        }
        Err(RootError::ResidueSearch(seen.len()))
    }

    /// Frame of the residue `base·⟨s,t⟩` (`base` minimal in its coset).
    pub fn frame_at(&self, base: Word, s: Gen, t: Gen) -> DihedralFrame {
        let m = self.matrix().order(s, t).expect("spherical pair") as usize;
        let lead = self.matrix().leading(s, t);
        let other = if lead == s { t } else { s };
        let word = crate::coxeter::alternating(lead, other, m);
        let roots = self.phi_w(&word).iter().map(|r| self.apply_to_root(&base, r)).collect();
        let pair = (s.min(t), s.max(t));
        DihedralFrame { residue: Residue2 { base, pair }, leading: lead, roots }
    }

    /// Spherical rank-2 residues with minimal chamber in `ball(r)` whose
    /// chamber set is stabilized by `r_α`.
    pub fn residues_on_wall(&self, alpha: &Root, r: usize) -> Result<Vec<Residue2>, RootError> {
        let mut out = Vec::new();
        for v in self.ball(r)? {
            let image = self.apply_inverse(&v, alpha.vector());
            for s in 0..self.rank() {
                for t in s + 1..self.rank() {
                    if self.matrix().order(s, t).is_none() {
                        continue;
                    }
                    if self.is_right_descent(s, &v) || self.is_right_descent(t, &v) {
                        continue;
                    }
                    let on_pair = image.iter().enumerate().all(|(i, x)| x.is_zero() || i == s || i == t);
                    if on_pair {
                        out.push(Residue2 { base: v.clone(), pair: (s, t) });
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Whether `w` maps the residue onto itself, by comparing chamber sets.
    pub fn stabilizes(&self, w: &Word, res: &Residue2) -> bool {
        let (s, t) = res.pair;
        let m = self.matrix().order(s, t).expect("spherical pair") as usize;
        let mut chambers: HashSet<Word> = HashSet::new();
        for len in 0..=m {
            for start in [s, t] {
                let x = crate::coxeter::alternating(start, if start == s { t } else { s }, len);
                chambers.insert(self.mul(&res.base, &x));
            }
        }
        chambers.iter().all(|c| chambers.contains(&self.mul(w, c)))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("interval cross-check failed: {detail}")]
pub struct IntervalMismatch {
    pub detail: String,
}

/// Membership bitsets of candidate positive roots over the chambers of a ball.
pub struct HalfSpaceTable {
    chambers: Vec<Word>,
    roots: Vec<Root>,
    bits: HashMap<Root, Vec<u64>>,
}

impl HalfSpaceTable {
    /// Candidates are all roots crossed by some element of `ball(r)`.
    pub fn new(sys: &CoxeterSystem, r: usize) -> Result<Self, CoxeterError> {
        let chambers = sys.ball(r)?;
        let mut roots = Vec::new();
        let mut seen = HashSet::new();
        for w in &chambers {
            for root in sys.phi_w(w) {
                if seen.insert(root.clone()) {
                    roots.push(root);
                }
            }
        }
        let words = chambers.len().div_ceil(64);
        let mut bits = HashMap::new();
        for root in &roots {
            let mut b = vec![0u64; words];
            for (k, w) in chambers.iter().enumerate() {
                if sys.member(w, root) {
                    b[k / 64] |= 1 << (k % 64);
                }
            }
            bits.insert(root.clone(), b);
        }
        Ok(HalfSpaceTable { chambers, roots, bits })
    }

    pub fn chambers(&self) -> &[Word] {
        &self.chambers
    }

    pub fn candidates(&self) -> &[Root] {
        &self.roots
    }

    fn membership(&self, sys_free: &Root) -> Option<&Vec<u64>> {
        self.bits.get(sys_free)
    }

    /// `γ` with `α∩β ⊆ γ` and `(−α)∩(−β) ⊆ −γ` on the sampled chambers.
    pub fn interval(&self, alpha: &Root, beta: &Root) -> Vec<Root> {
        let (Some(a), Some(b)) = (self.membership(alpha), self.membership(beta)) else {
            return Vec::new();
        };
        let total = self.chambers.len();
        let mask = |k: usize| -> u64 {
            let lo = k * 64;
            if lo + 64 <= total { u64::MAX } else { (1u64 << (total - lo)) - 1 }
        };
        self.roots
            .iter()
            .filter(|g| {
                let c = &self.bits[*g];
                (0..a.len()).all(|k| {
                    let both = a[k] & b[k];
                    let neither = !a[k] & !b[k] & mask(k);
                    both & !c[k] == 0 && neither & c[k] == 0
                })
            })
            .cloned()
            .collect()
    }
}

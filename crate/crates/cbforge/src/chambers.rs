//! The rank-2 chamber systems `C_J`: cosets `uU_w` with `u ∈ U_{s,t}` and
//! `w ∈ ⟨s,t⟩`, their building structure, the action of `U_{s,t}` and
//! `τ_s, τ_t`, and the braid relation `(τ_sτ_t)^m = id`.
//!
//! Group elements are normal forms over the `s`-first gallery of `r_J`
//! (the base basis). `τ_t` works in the `t`-first basis and converts back.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::blueprints::{Blueprint, BlueprintError};
use crate::coxeter::{alternating, CoxeterError, Gen, Word};
use crate::galleries::{first_gal_s, GalleryError};
use crate::groupforge::{GroupElem, GroupError, TruncatedGroup};
use crate::parabolics::{render, Ambient, ParabolicError};
use crate::report::{Limits, Report, Violation};
use crate::roots::Root;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChamberError {
    #[error("generators {0} and {1} have infinite order product")]
    NotSpherical(usize, usize),
    #[error("generators must be distinct")]
    SameGenerator,
    #[error("{0} is not a normal form in the parabolic subgroup")]
    NotInJ(String),
    #[error("the chamber system needs rank at least 3 here")]
    RankTooSmall,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Blueprint(#[from] BlueprintError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error(transparent)]
    Parabolic(#[from] ParabolicError),
}

/// A chamber `uU_w` by canonical representative: `u` is the least bit mask
/// in its coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChamberJ {
    pub w: usize,
    pub u: GroupElem,
}

/// A permutation of the chamber list.
pub type Perm = Vec<usize>;

/// `C_J` for `J = {s, t}`.
#[derive(Clone, Debug)]
pub struct ChamberSystemJ {
    name: String,
    pair: [Gen; 2],
    m: usize,
    /// `U_{s,t}` over the `s`-first and `t`-first galleries of `r_J`.
    bases: [TruncatedGroup; 2],
    /// `tau_idx[x][i]`: index of `x·β_i` in basis `x`.
    tau_idx: [Vec<usize>; 2],
    elements: Vec<Word>,
    element_index: HashMap<Word, usize>,
    right_mult: Vec<[usize; 2]>,
    left_mult: Vec<[usize; 2]>,
    /// `U_w` in the base basis.
    subgroups: Vec<HashSet<GroupElem>>,
    chambers: Vec<ChamberJ>,
    index: HashMap<ChamberJ, usize>,
    /// Adjacency by the coset definition, per generator, including the chamber itself.
    adjacent: [Vec<Vec<usize>>; 2],
}

impl fmt::Display for ChamberJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, #{})", self.u, self.w)
    }
}

pub fn build_cj(bp: &Blueprint, s: Gen, t: Gen, limits: &Limits) -> Result<ChamberSystemJ, ChamberError> {
    let sys = bp.system();
    if s == t {
        return Err(ChamberError::SameGenerator);
    }
    let m = sys.matrix().order(s, t).ok_or(ChamberError::NotSpherical(s + 1, t + 1))? as usize;
    let r_j = sys.longest_element(&[s, t])?;
    let pair = [s, t];
    let base_s = TruncatedGroup::on_gallery(bp, first_gal_s(sys, &r_j, s))?;
    let base_t = TruncatedGroup::on_gallery(bp, first_gal_s(sys, &r_j, t))?;
    let mut tau_idx: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (x, base) in [&base_s, &base_t].into_iter().enumerate() {
        let xw = Word(vec![pair[x]]);
        tau_idx[x] = base
            .roots()
            .iter()
            .map(|r| base.index_of(&sys.apply_to_root(&xw, r)).unwrap_or(usize::MAX))
            .collect();
    }

    let mut elements: Vec<Word> = Vec::new();
    for len in 0..=m {
        for (a, b) in [(s, t), (t, s)] {
            let w = sys.normal_form(&alternating(a, b, len));
            if !elements.contains(&w) {
                elements.push(w);
            }
        }
    }
    elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let element_index: HashMap<Word, usize> = elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let table = |left: bool| -> Vec<[usize; 2]> {
        elements
            .iter()
            .map(|w| {
                pair.map(|g| {
                    let x = Word(vec![g]);
                    let p = if left { x.concat(w) } else { w.concat(&x) };
                    element_index[&sys.normal_form(&p)]
                })
            })
            .collect()
    };
    let (right_mult, left_mult) = (table(false), table(true));

    let mut subgroups = Vec::with_capacity(elements.len());
    for w in &elements {
        let gens = sys.phi_w(w).iter().map(|r| base_s.root_elem(r)).collect::<Result<Vec<_>, _>>()?;
        let set = base_s.presentation().subgroup_closure(&gens, limits.group_bits)?;
        subgroups.push(set.into_iter().collect::<HashSet<_>>());
    }

    let mut cs = ChamberSystemJ {
        name: bp.name().to_string(),
        pair,
        m,
        bases: [base_s, base_t],
        tau_idx,
        elements,
        element_index,
        right_mult,
        left_mult,
        subgroups,
        chambers: Vec::new(),
        index: HashMap::new(),
        adjacent: [Vec::new(), Vec::new()],
    };
    let mut all: BTreeSet<ChamberJ> = BTreeSet::new();
    for w in 0..cs.elements.len() {
        for x in 0..1u128 << m {
            all.insert(cs.canonical(GroupElem(x), w)?);
        }
    }
    cs.chambers = all.into_iter().collect();
    cs.index = cs.chambers.iter().copied().enumerate().map(|(i, c)| (c, i)).collect();
    for x in 0..2 {
        cs.adjacent[x] = cs.adjacency(x)?;
    }
    Ok(cs)
}

impl ChamberSystemJ {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pair(&self) -> [Gen; 2] {
        self.pair
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.chambers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chambers.is_empty()
    }

    pub fn chambers(&self) -> &[ChamberJ] {
        &self.chambers
    }

    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn base(&self) -> &TruncatedGroup {
        &self.bases[0]
    }

    /// `Σ_{w ∈ ⟨J⟩} 2^{m − ℓ(w)}`.
    pub fn expected_count(&self) -> usize {
        self.elements.iter().map(|w| 1usize << (self.m - w.len())).sum()
    }

    fn pres(&self) -> &crate::groupforge::PcPresentation {
        self.bases[0].presentation()
    }

    pub fn canonical(&self, u: GroupElem, w: usize) -> Result<ChamberJ, ChamberError> {
        let mut best = None;
        for &h in &self.subgroups[w] {
            let x = self.pres().mul(u, h)?;
            if best.is_none_or(|b| x < b) {
                best = Some(x);
            }
        }
        Ok(ChamberJ { w, u: best.expect("U_w contains 1") })
    }

    pub fn position(&self, c: &ChamberJ) -> Option<usize> {
        self.index.get(c).copied()
    }

    /// The chamber `uU_w`; `w` must be a stored normal form.
    pub fn chamber(&self, u: GroupElem, w: &Word) -> Result<usize, ChamberError> {
        let wi = *self.element_index.get(w).ok_or_else(|| ChamberError::NotInJ(w.to_string()))?;
        let c = self.canonical(u, wi)?;
        Ok(self.index[&c])
    }

    /// Index of `w·x` (or `x·w` when `left`) for generator side `x`.
    fn times(&self, w: usize, x: usize, left: bool) -> usize {
        if left {
            self.left_mult[w][x]
        } else {
            self.right_mult[w][x]
        }
    }

    fn is_left_descent(&self, x: usize, w: usize) -> bool {
        self.elements[self.times(w, x, true)].len() < self.elements[w].len()
    }

    /// `gU_w ∼_x hU_{w'}` iff `w' ∈ {w, wx}` and `g⁻¹h ∈ U_w ∪ U_{wx}`.
    fn adjacency(&self, x: usize) -> Result<Vec<Vec<usize>>, ChamberError> {
        let p = self.pres();
        let mut out = vec![Vec::new(); self.len()];
        for (i, c) in self.chambers.iter().enumerate() {
            let wx = self.times(c.w, x, false);
            let ginv = p.inv(c.u)?;
            for (j, d) in self.chambers.iter().enumerate() {
                if d.w != c.w && d.w != wx {
                    continue;
                }
                let q = p.mul(ginv, d.u)?;
                if self.subgroups[c.w].contains(&q) || self.subgroups[wx].contains(&q) {
                    out[i].push(j);
                }
            }
        }
        Ok(out)
    }

    /// Panels of type `x` as sorted chamber lists.
    pub fn panels(&self, x: usize) -> Vec<Vec<usize>> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for adj in &self.adjacent[x] {
            set.insert(adj.clone());
        }
        set.into_iter().collect()
    }

    pub fn adjacent(&self, x: usize, c: usize) -> &[usize] {
        &self.adjacent[x][c]
    }

    /// Edge list `x i j` for `i < j` adjacent via generator side `x`.
    pub fn adjacency_dump(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.chambers.iter().enumerate() {
            out.push_str(&format!("chamber {} u={} w={}\n", i, c.u, self.elements[c.w]));
        }
        for x in 0..2 {
            for i in 0..self.len() {
                for &j in &self.adjacent[x][i] {
                    if i < j {
                        out.push_str(&format!("edge {} {} {}\n", self.pair[x] + 1, i, j));
                    }
                }
            }
        }
        out
    }

    pub fn describe(&self, c: usize) -> String {
        let ch = self.chambers[c];
        format!("{}U_{}", ch.u, self.elements[ch.w])
    }

    fn to_basis(&self, x: usize, e: GroupElem, from: usize) -> Result<GroupElem, ChamberError> {
        if x == from {
            return Ok(e);
        }
        let roots = self.bases[from].roots_of(e);
        Ok(self.bases[x].product_of_roots(&roots)?)
    }

    /// `W`-distance from every chamber, by breadth-first search over galleries.
    /// Returns `None` entries where two minimal galleries disagree.
    pub fn distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.len()).map(|c| self.distances_from(c)).collect()
    }

    fn distances_from(&self, c: usize) -> Vec<Option<usize>> {
        let n = self.len();
        let mut dist = vec![usize::MAX; n];
        let mut delta: Vec<Option<usize>> = vec![None; n];
        let mut broken = vec![false; n];
        dist[c] = 0;
        delta[c] = Some(self.element_index[&Word::empty()]);
        let mut queue = VecDeque::from([c]);
        while let Some(d) = queue.pop_front() {
            for x in 0..2 {
                for &e in &self.adjacent[x][d] {
                    if e == d {
                        continue;
                    }
                    let cand = match delta[d] {
                        Some(w) if !broken[d] => Some(self.times(w, x, false)),
                        _ => None,
                    };
                    if dist[e] == usize::MAX {
                        dist[e] = dist[d] + 1;
                        delta[e] = cand;
                        broken[e] = cand.is_none_or(|w| self.elements[w].len() != dist[e]);
                        queue.push_back(e);
                    } else if dist[e] == dist[d] + 1 && cand != delta[e] {
                        broken[e] = true;
                    }
                }
            }
        }
        (0..n).map(|e| if broken[e] || dist[e] == usize::MAX { None } else { delta[e] }).collect()
    }

    /// Left multiplication by an element of `U_{s,t}` (base basis).
    pub fn act_group(&self, g: GroupElem) -> Result<Perm, ChamberError> {
        let mut out = Vec::with_capacity(self.len());
        for c in &self.chambers {
            let u = self.pres().mul(g, c.u)?;
            out.push(self.index[&self.canonical(u, c.w)?]);
        }
        Ok(out)
    }

    fn sys_root(&self, x: usize) -> Root {
        // the first root crossed by the x-first gallery is α_x
        self.bases[x].roots()[0].clone()
    }

    /// `τ_x.c` evaluated on one representative `g` of `c = gU_w`.
    fn tau_on_rep(&self, x: usize, g: GroupElem, w: usize) -> Result<(GroupElem, usize), ChamberError> {
        let bx = &self.bases[x];
        let px = bx.presentation();
        let gx = self.to_basis(x, g, 0)?;
        let eps = gx.has(0);
        let us = px.gen(0);
        // g = n u with u = u_x^ε, so n = g u
        let n = if eps { px.mul(gx, us)? } else { gx };
        if n.has(0) {
            return Err(ParabolicError::NotInN(n.to_string(), self.pair[x] + 1).into());
        }
        let word: Vec<usize> = n.support().into_iter().map(|i| self.tau_idx[x][i]).collect();
        let tn = px.collect(&word)?;
        let (img, wi) = if self.is_left_descent(x, w) || !eps {
            (tn, self.times(w, x, true))
        } else {
            (px.mul(tn, us)?, w)
        };
        Ok((self.to_basis(0, img, x)?, wi))
    }

    /// `τ_x` as a permutation, with every coset representative checked to give
    /// the same image.
    pub fn act_tau(&self, x: usize, rep: &mut Report) -> Result<Perm, ChamberError> {
        let mut out = Vec::with_capacity(self.len());
        for c in &self.chambers {
            let mut image = None;
            let mut reps: Vec<GroupElem> = self.subgroups[c.w].iter().map(|&h| self.pres().mul(c.u, h)).collect::<Result<_, _>>()?;
            reps.sort();
            for g in reps {
                let (u, w) = self.tau_on_rep(x, g, c.w)?;
                let img = self.index[&self.canonical(u, w)?];
                match image {
                    None => image = Some(img),
                    Some(i) => rep.check(i == img, || {
                        Violation::new("well-defined")
                            .s(self.pair[x])
                            .w(&self.elements[c.w])
                            .expected(self.describe(i))
                            .found(format!("{} from representative {g}", self.describe(img)))
                    }),
                }
            }
            out.push(image.expect("cosets are non-empty"));
        }
        Ok(out)
    }
}

pub fn compose(outer: &Perm, inner: &Perm) -> Perm {
    inner.iter().map(|&i| outer[i]).collect()
}

pub fn is_identity(p: &Perm) -> bool {
    p.iter().enumerate().all(|(i, &j)| i == j)
}

fn is_bijection(p: &Perm) -> bool {
    let mut seen = vec![false; p.len()];
    for &j in p {
        if j >= p.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

/// Chamber counts, panels of size 3, a well-defined `W`-distance, and (Bu1)–(Bu3).
pub fn verify_building(cs: &ChamberSystemJ) -> Report {
    let mut rep = Report::new(format!("building {} J={{{},{}}}", cs.name, cs.pair[0] + 1, cs.pair[1] + 1));
    let v = |axiom: &str| Violation::new(axiom);
    rep.check(cs.len() == cs.expected_count(), || v("count").expected(cs.expected_count().to_string()).found(cs.len().to_string()));
    for (w, sub) in cs.subgroups.iter().enumerate() {
        let want = 1usize << cs.elements[w].len();
        rep.check(sub.len() == want, || v("U_w").w(&cs.elements[w]).expected(want.to_string()).found(sub.len().to_string()));
    }
    for x in 0..2 {
        let adj = &cs.adjacent[x];
        for i in 0..cs.len() {
            rep.check(adj[i].contains(&i), || v("panel").s(cs.pair[x]).expected(format!("{} ~ itself", cs.describe(i))).found("not adjacent"));
            rep.check(adj[i].len() == 3, || {
                v("panel").s(cs.pair[x]).expected(format!("3 chambers around {}", cs.describe(i))).found(adj[i].len().to_string())
            });
            for &j in &adj[i] {
                rep.check(adj[j].contains(&i), || v("panel").s(cs.pair[x]).expected("symmetric").found(format!("{i} ~ {j} only one way")));
                rep.check(adj[j] == adj[i], || v("panel").s(cs.pair[x]).expected("transitive").found(format!("classes of {i} and {j} differ")));
            }
        }
    }
    let delta = cs.distances();
    let e = cs.element_index[&Word::empty()];
    let n = cs.len();
    for x in 0..n {
        for y in 0..n {
            let Some(w) = delta[x][y] else {
                rep.push(v("delta").expected(format!("W-distance {} -> {}", cs.describe(x), cs.describe(y))).found("galleries disagree"));
                continue;
            };
            // Bu1
            rep.check((w == e) == (x == y), || v("Bu1").w(&cs.elements[w]).found(format!("{} -> {}", cs.describe(x), cs.describe(y))));
            for side in 0..2 {
                let ws = cs.times(w, side, false);
                let longer = cs.elements[ws].len() > cs.elements[w].len();
                let mut bu3 = false;
                for &z in &cs.adjacent[side][y] {
                    if z == y {
                        continue;
                    }
                    let Some(d) = delta[x][z] else { continue };
                    // Bu2
                    let ok = if longer { d == ws } else { d == w || d == ws };
                    rep.check(ok, || {
                        v("Bu2").w(&cs.elements[w]).s(cs.pair[side]).expected(cs.elements[ws].to_string()).found(cs.elements[d].to_string())
                    });
                    bu3 |= d == ws;
                }
                rep.check(bu3, || v("Bu3").w(&cs.elements[w]).s(cs.pair[side]).found(format!("{} -> {}", cs.describe(x), cs.describe(y))));
            }
        }
    }
    rep.note(format!(
        "{} chambers, {} + {} panels",
        cs.len(),
        cs.panels(0).len(),
        cs.panels(1).len()
    ));
    rep.finish()
}

/// Type-preserving automorphism check for a permutation.
fn preserves_structure(cs: &ChamberSystemJ, p: &Perm, delta: &[Vec<Option<usize>>]) -> bool {
    for x in 0..cs.len() {
        for y in 0..cs.len() {
            if delta[p[x]][p[y]] != delta[x][y] {
                return false;
            }
        }
    }
    true
}

/// The action of `U_{s,t}` and `τ_x` for side `x` (0 for `s`, 1 for `t`).
pub fn verify_action(cs: &ChamberSystemJ, x: usize) -> Result<Report, ChamberError> {
    let g = cs.pair[x];
    let mut rep = Report::new(format!("action {} s={}", cs.name, g + 1));
    let v = |what: &str| Violation::new("action").s(g).expected(what.to_string());
    let delta = cs.distances();
    let tau = cs.act_tau(x, &mut rep)?;
    let us_el = cs.base().root_elem(&cs.sys_root(x))?;
    let us = cs.act_group(us_el)?;
    for (k, r) in cs.base().roots().iter().enumerate() {
        let p = cs.act_group(cs.base().root_elem(r)?)?;
        rep.check(is_bijection(&p) && preserves_structure(cs, &p, &delta), || v("automorphism").found(format!("u{}", k + 1)));
    }
    rep.check(is_bijection(&tau) && preserves_structure(cs, &tau, &delta), || v("automorphism").found("tau"));
    rep.check(is_identity(&compose(&tau, &tau)), || v("tau^2 = id").found("moves chambers"));
    let ut = compose(&us, &tau);
    rep.check(is_identity(&compose(&ut, &compose(&ut, &ut))), || v("(u_s tau_s)^3 = id").found("moves chambers"));

    let one = GroupElem::IDENTITY;
    let e = Word::empty();
    let xw = Word(vec![g]);
    let u1 = cs.chamber(one, &e)?;
    let us_c = cs.chamber(one, &xw)?;
    let usu1 = cs.chamber(us_el, &e)?;
    let utu = compose(&ut, &us);
    let tu = compose(&tau, &us);
    let witnesses = [
        ("u_s.U_1 = u_sU_1", us[u1], usu1),
        ("u_s tau_s.U_1 = U_s", ut[u1], us_c),
        ("u_s tau_s u_s.U_s = u_sU_1", utu[us_c], usu1),
        ("tau_s u_s.U_s = U_1", tu[us_c], u1),
        ("tau_s.U_1 = U_s", tau[u1], us_c),
    ];
    for (what, got, want) in witnesses {
        rep.check(got == want, || v(what).found(cs.describe(got)));
    }
    let id: Perm = (0..cs.len()).collect();
    let sym3 = [&id, &us, &ut, &utu, &tu, &tau];
    for a in 0..6 {
        for b in a + 1..6 {
            rep.check(sym3[a] != sym3[b], || v("Sym(3) acts faithfully").found(format!("elements {a} and {b} agree")));
        }
    }
    Ok(rep.finish())
}

/// `(τ_sτ_t)^m = id` on every chamber.
pub fn braid_check(cs: &ChamberSystemJ) -> Result<Report, ChamberError> {
    let mut rep = Report::new(format!("braid {} m={}", cs.name, cs.m));
    let ts = cs.act_tau(0, &mut rep)?;
    let tt = cs.act_tau(1, &mut rep)?;
    let step = compose(&ts, &tt);
    let mut p: Perm = (0..cs.len()).collect();
    for _ in 0..cs.m {
        p = compose(&step, &p);
    }
    for (i, &j) in p.iter().enumerate() {
        rep.check(i == j, || {
            Violation::new("braid")
                .w(&cs.elements[cs.chambers[i].w])
                .expected(cs.describe(i))
                .found(cs.describe(j))
        });
    }
    Ok(rep.finish())
}

/// `(τ_sτ_t)^m` fixes every generator `n = u⁻¹u_αu` of `N_{s,t}` with
/// `u ∈ U_{s,t}` and `α ∈ Φ(v) \ Φ^J_+` for `v` in `ball(r)`, evaluated by
/// root words in the groups `U_v` of `ball(ambient)`.
pub fn appendix_conjugation_check(
    bp: &Blueprint,
    s: Gen,
    t: Gen,
    r: usize,
    ambient: usize,
    limits: &Limits,
) -> Result<Report, ChamberError> {
    let sys = bp.system();
    if sys.rank() < 3 {
        return Err(ChamberError::RankTooSmall);
    }
    let m = sys.matrix().order(s, t).ok_or(ChamberError::NotSpherical(s + 1, t + 1))? as usize;
    let r_j = sys.longest_element(&[s, t])?;
    let ust = TruncatedGroup::on_gallery(bp, first_gal_s(sys, &r_j, s))?;
    let phi_j: HashSet<Root> = ust.roots().iter().cloned().collect();
    let mut alphas: Vec<Root> = Vec::new();
    for v in sys.ball(r)? {
        for a in sys.phi_w(&v) {
            if !phi_j.contains(&a) && !alphas.contains(&a) {
                alphas.push(a);
            }
        }
    }
    let amb = Ambient::new(bp, ambient)?;
    let tw = TauWords::new(&amb);
    let mut rep = Report::new(format!("appendix {} s={} t={} r={r}", bp.name(), s + 1, t + 1));
    let (mut verified, mut unrepresentable) = (0usize, 0usize);
    let _ = limits;
    for alpha in &alphas {
        for x in 0..1u128 << m {
            let u = ust.roots_of(GroupElem(x));
            let mut n: Vec<Root> = u.iter().rev().cloned().collect();
            n.push(alpha.clone());
            n.extend(u.iter().cloned());
            match classify(&tw, s, t, m, &n)? {
                Instance::Verified => {
                    verified += 1;
                    rep.checks += 1;
                }
                Instance::Unrepresentable => unrepresentable += 1,
                Instance::Failed(image) => {
                    verified += 1;
                    rep.push(Violation::new("appendix").s(s).expected(render(&n)).found(render(&image)));
                }
            }
        }
    }
    rep.note(format!(
        "{} roots, {verified} instances verified, {unrepresentable} unverifiable at radius {ambient}",
        alphas.len()
    ));
    Ok(rep.finish())
}

/// Cancels adjacent equal letters; every root element is an involution.
fn free_reduce(word: &[Root]) -> Vec<Root> {
    let mut out: Vec<Root> = Vec::with_capacity(word.len());
    for r in word {
        if out.last() == Some(r) {
            out.pop();
        } else {
            out.push(r.clone());
        }
    }
    out
}

/// Cached `τ_g(v_α)`; `None` when no container was found.
type Image = Option<Vec<Root>>;

/// `τ_g` on root words of `N_g`, letter by letter over the generators
/// `u_α` and `v_α = u_g u_α u_g` (`α ≠ α_g`). The image of `v_α` is read off
/// a container of `{α_g, α}` when the pair is prenilpotent, and otherwise
/// (`−α_g ⊆ α`) as `u_g τ_g(v_{gα}) u_g`.
pub struct TauWords<'a, 'b> {
    amb: &'b Ambient<'a>,
    images: RefCell<HashMap<(Gen, Root), Image>>,
}

impl<'a, 'b> TauWords<'a, 'b> {
    pub fn new(amb: &'b Ambient<'a>) -> Self {
        TauWords { amb, images: RefCell::new(HashMap::new()) }
    }

    pub fn ambient(&self) -> &Ambient<'a> {
        self.amb
    }

    fn v_image(&self, g: Gen, alpha: &Root) -> Result<Option<Vec<Root>>, ChamberError> {
        if let Some(hit) = self.images.borrow().get(&(g, alpha.clone())) {
            return Ok(hit.clone());
        }
        let sys = self.amb.blueprint().system();
        let ag = Root::simple(sys, g);
        let image = match self.amb.tau(g, &[ag.clone(), alpha.clone(), ag.clone()])? {
            Some(y) => Some(y),
            None if !sys.prenilpotent(&ag, alpha).map_err(ParabolicError::from)? => {
                let beta = sys.apply_to_root(&Word(vec![g]), alpha);
                self.amb.tau(g, &[ag.clone(), beta, ag.clone()])?.map(|y| {
                    let mut out = vec![ag.clone()];
                    out.extend(y);
                    out.push(ag.clone());
                    out
                })
            }
            None => None,
        };
        self.images.borrow_mut().insert((g, alpha.clone()), image.clone());
        Ok(image)
    }

    /// `None` when some `v_α` needs a container beyond the ambient ball.
    pub fn tau(&self, g: Gen, word: &[Root]) -> Result<Option<Vec<Root>>, ChamberError> {
        let sys = self.amb.blueprint().system();
        let ag = Root::simple(sys, g);
        let gw = Word(vec![g]);
        let mut conjugated = false;
        let mut out = Vec::with_capacity(word.len());
        for x in word {
            if *x == ag {
                conjugated = !conjugated;
            } else if conjugated {
                match self.v_image(g, x)? {
                    Some(y) => out.extend(y),
                    None => return Ok(None),
                }
            } else {
                out.push(sys.apply_to_root(&gw, x));
            }
        }
        if conjugated {
            return Err(ParabolicError::NotInN(render(word), g + 1).into());
        }
        Ok(Some(free_reduce(&out)))
    }
}

/// `(τ_sτ_t)^m` applied to a root word, `τ_t` first.
pub fn braid_on_word(tw: &TauWords<'_, '_>, s: Gen, t: Gen, m: usize, n: &[Root]) -> Result<Option<Vec<Root>>, ChamberError> {
    let mut x = free_reduce(n);
    for _ in 0..m {
        for g in [t, s] {
            match tw.tau(g, &x)? {
                Some(y) => x = y,
                None => return Ok(None),
            }
        }
    }
    Ok(Some(x))
}

/// Outcome of one `(τ_sτ_t)^m.n = n` instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Verified,
    /// The image differs from `n`.
    Failed(Vec<Root>),
    /// Some intermediate word is neither in a `U_v` of the ambient ball nor
    /// free of the simple root being moved.
    Unrepresentable,
}

/// Rewrites windows that fit in one `U_v` to their normal forms until the
/// word stops shrinking. Every step is an equality in `U₊`.
pub fn shorten(amb: &Ambient<'_>, word: &[Root]) -> Result<Vec<Root>, ChamberError> {
    let mut x = free_reduce(word);
    'outer: loop {
        for i in 0..x.len() {
            let mut j = x.len();
            while j > i + 1 {
                if amb.container(&x[i..j]).is_some() {
                    break;
                }
                j -= 1;
            }
            if j <= i + 1 {
                continue;
            }
            let normal = amb.normalize(&x[i..j])?.expect("window has a container");
            if normal.len() < j - i {
                let mut y = x[..i].to_vec();
                y.extend(normal);
                y.extend_from_slice(&x[j..]);
                x = free_reduce(&y);
                continue 'outer;
            }
        }
        return Ok(x);
    }
}

pub fn classify(tw: &TauWords<'_, '_>, s: Gen, t: Gen, m: usize, n: &[Root]) -> Result<Instance, ChamberError> {
    let amb = tw.ambient();
    let Some(image) = braid_on_word(tw, s, t, m, n)? else { return Ok(Instance::Unrepresentable) };
    let mut quotient = image.clone();
    quotient.extend(n.iter().rev().cloned());
    let rest = shorten(amb, &quotient)?;
    if rest.is_empty() {
        return Ok(Instance::Verified);
    }
    Ok(match amb.container(&rest) {
        Some(_) => Instance::Failed(image),
        None => Instance::Unrepresentable,
    })
}

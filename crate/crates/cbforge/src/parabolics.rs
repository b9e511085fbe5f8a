//! Residue groups `U_R = U_s ⋉ N_R`, the automorphism `τ_s` and its
//! finite restrictions to the groups `U_w`.
//!
//! Elements of `U₊` that do not live in one fixed `U_w` are handled as root
//! words: ordered products `∏ u_γ`, evaluated in the first `U_v` of a ball
//! whose crossed roots contain every letter. This is sound because each `U_v`
//! embeds in `U₊` for a faithful blueprint.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use thiserror::Error;

use crate::blueprints::{Blueprint, BlueprintError};
use crate::coxeter::{CoxeterError, Gen, Word};
use crate::galleries::{first_gal_s, min_gal_s, Gallery, GalleryError};
use crate::groupforge::{build_uw, GroupElem, GroupError, PcPresentation, TruncatedGroup};
use crate::report::{show_indices, Limits, Report, Violation};
use crate::roots::{Residue2, Root, RootError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParabolicError {
    #[error("residue {0} is not stabilized by the reflection of generator {1}")]
    NotOnWall(String, usize),
    #[error("residue {0} is not spherical")]
    NotSpherical(String),
    #[error("root {0} of the residue is not crossed by gallery {1}")]
    MissingRoot(String, Word),
    #[error("commutator set of ({0}, {1}) on gallery {2} leaves the residue")]
    LeavesResidue(usize, usize, Word),
    #[error("{0} involves u_s for generator {1}")]
    NotInN(String, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Blueprint(#[from] BlueprintError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Root(#[from] RootError),
}

pub fn show_residue(r: &Residue2) -> String {
    format!("{}<{},{}>", r.base, r.pair.0 + 1, r.pair.1 + 1)
}

/// `U_R` presented over `Φ(R)` in the order of a gallery `G ∈ Min_s(v·r_J)`,
/// so `α_s` has index 0.
#[derive(Clone, Debug)]
pub struct ResidueGroup {
    residue: Residue2,
    s: Gen,
    gallery: Gallery,
    roots: Vec<Root>,
    pres: PcPresentation,
    n_pres: PcPresentation,
    /// `tau[i]` is the index of `sβ_i`; `tau[0]` is unused.
    tau: Vec<usize>,
    /// Position (1-based) of each root in the rank-2 table of the residue.
    frame_pos: Vec<usize>,
}

pub fn build_residue_group(bp: &Blueprint, residue: &Residue2, s: Gen) -> Result<ResidueGroup, ParabolicError> {
    let sys = bp.system();
    let s_word = Word(vec![s]);
    if sys.matrix().order(residue.pair.0, residue.pair.1).is_none() {
        return Err(ParabolicError::NotSpherical(show_residue(residue)));
    }
    if !sys.stabilizes(&s_word, residue) {
        return Err(ParabolicError::NotOnWall(show_residue(residue), s + 1));
    }
    let (p, q) = residue.pair;
    let frame = sys.frame_at(residue.base.clone(), p, q);
    let top = sys.normal_form(&residue.base.concat(&sys.longest_element(&[p, q])?));
    let gallery = first_gal_s(sys, &top, s);
    let mut at: Vec<usize> = Vec::with_capacity(frame.roots.len());
    for r in &frame.roots {
        at.push(gallery.index_of(r).ok_or_else(|| ParabolicError::MissingRoot(r.to_string(), gallery.word().clone()))?);
    }
    let mut order: Vec<usize> = (0..at.len()).collect();
    order.sort_by_key(|&k| at[k]);
    let roots: Vec<Root> = order.iter().map(|&k| frame.roots[k].clone()).collect();
    let frame_pos: Vec<usize> = order.iter().map(|&k| k + 1).collect();
    if roots[0] != Root::simple(sys, s) {
        return Err(ParabolicError::MissingRoot(Root::simple(sys, s).to_string(), gallery.word().clone()));
    }
    let m = roots.len();
    let g_idx: Vec<usize> = order.iter().map(|&k| at[k]).collect();
    let mut rel = vec![vec![Vec::new(); m]; m];
    for b in 0..m {
        for a in 0..b {
            let entry = bp.query(&gallery, g_idx[a], g_idx[b])?;
            let mut mapped = Vec::with_capacity(entry.len());
            for k in entry {
                let pos = g_idx.iter().position(|&x| x == k).ok_or_else(|| {
                    ParabolicError::LeavesResidue(g_idx[a] + 1, g_idx[b] + 1, gallery.word().clone())
                })?;
                mapped.push(pos);
            }
            rel[a][b] = mapped;
        }
    }
    let pres = PcPresentation::new(m, rel)?;
    pres.consistency_check()?;
    let n_pres = pres.delete_generator(0).map_err(ParabolicError::Group)?;
    let mut tau = vec![0; m];
    for i in 1..m {
        let image = sys.apply_to_root(&s_word, &roots[i]);
        tau[i] = roots
            .iter()
            .position(|r| *r == image)
            .ok_or_else(|| ParabolicError::MissingRoot(image.to_string(), gallery.word().clone()))?;
    }
    Ok(ResidueGroup { residue: residue.clone(), s, gallery, roots, pres, n_pres, tau, frame_pos })
}

impl ResidueGroup {
    pub fn residue(&self) -> &Residue2 {
        &self.residue
    }

    pub fn s(&self) -> Gen {
        self.s
    }

    pub fn gallery(&self) -> &Gallery {
        &self.gallery
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn m(&self) -> usize {
        self.roots.len()
    }

    /// `U_R`.
    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    /// `Ñ_R`: the presentation with `u_{α_s}` deleted.
    pub fn n_presentation(&self) -> &PcPresentation {
        &self.n_pres
    }

    pub fn tau_index(&self, i: usize) -> usize {
        self.tau[i]
    }

    /// Table position (1-based) of the root with index `i`.
    pub fn frame_position(&self, i: usize) -> usize {
        self.frame_pos[i]
    }

    /// Collect `u_{β_{p_1}} ⋯ u_{β_{p_k}}` with table positions `p`.
    pub fn from_frame(&self, positions: &[usize]) -> Result<GroupElem, ParabolicError> {
        let mut word = Vec::with_capacity(positions.len());
        for &p in positions {
            let i = self.frame_pos.iter().position(|&x| x == p).ok_or(GroupError::BadGenerator(p))?;
            word.push(i);
        }
        Ok(self.pres.collect(&word)?)
    }

    /// Table positions of the normal form of `x`.
    pub fn frame_labels(&self, x: GroupElem) -> Vec<usize> {
        x.support().into_iter().map(|i| self.frame_pos[i]).collect()
    }

    /// All of `N_R` as normal forms.
    pub fn n_elements(&self) -> Vec<GroupElem> {
        (0..1u128 << (self.m() - 1)).map(|x| GroupElem(x << 1)).collect()
    }

    /// `τ_s` on `N_R`.
    pub fn tau(&self, x: GroupElem) -> Result<GroupElem, ParabolicError> {
        if x.has(0) {
            return Err(ParabolicError::NotInN(x.to_string(), self.s + 1));
        }
        let word: Vec<usize> = x.support().into_iter().map(|i| self.tau[i]).collect();
        Ok(self.pres.collect(&word)?)
    }

    /// `u_s x u_s`.
    pub fn conj_s(&self, x: GroupElem) -> Result<GroupElem, ParabolicError> {
        let us = self.pres.gen(0);
        Ok(self.pres.mul(self.pres.mul(us, x)?, us)?)
    }

    /// `(u_sτ_s).x`.
    pub fn us_tau(&self, x: GroupElem) -> Result<GroupElem, ParabolicError> {
        self.conj_s(self.tau(x)?)
    }

    /// `(u_sτ_s)^k.u_i` for `k = 1, 2, 3`.
    pub fn orbit(&self, i: usize) -> Result<[GroupElem; 3], ParabolicError> {
        let a = self.us_tau(self.pres.gen(i))?;
        let b = self.us_tau(a)?;
        let c = self.us_tau(b)?;
        Ok([a, b, c])
    }

    fn product(&self, idx: &[usize]) -> Result<GroupElem, ParabolicError> {
        Ok(self.pres.collect(idx)?)
    }

    fn viol(&self, axiom: &str) -> Violation {
        Violation::new(axiom).w(&self.residue.base).s(self.s).gallery(self.gallery.word())
    }

    fn title(&self, what: &str, bp: &Blueprint) -> String {
        format!("{what} {} R={} s={}", bp.name(), show_residue(&self.residue), self.s + 1)
    }
}

/// Checks on one residue, grouped the way the `residue` command prints them.
#[derive(Clone, Debug)]
pub struct ResidueAudit {
    pub residue: Residue2,
    pub s: Gen,
    pub order_bits: usize,
    /// `U_R = U_s ⋉ N_R`.
    pub semidirect: Report,
    /// `u_α ↦ u_{sα}` respects every relation of `N_R`.
    pub homomorphism: Report,
    /// `τ_s² = 1`.
    pub involution: Report,
    /// `(u_sτ_s)³ = 1`.
    pub cube: Report,
    /// The `τ_s u_s τ_s = u_s τ_s u_s` instances on generators.
    pub ustaus: Report,
}

impl ResidueAudit {
    pub fn passed(&self) -> bool {
        [&self.semidirect, &self.homomorphism, &self.involution, &self.cube, &self.ustaus].iter().all(|r| r.passed())
    }

    pub fn reports(&self) -> [&Report; 5] {
        [&self.semidirect, &self.homomorphism, &self.involution, &self.cube, &self.ustaus]
    }
}

fn semidirect_check(rg: &ResidueGroup, bp: &Blueprint, limits: &Limits) -> Result<Report, ParabolicError> {
    let mut rep = Report::new(rg.title("semidirect", bp));
    let p = &rg.pres;
    for j in 0..rg.m() {
        for i in 0..j {
            let entry = p.relation(i, j);
            rep.check(!entry.contains(&0), || {
                rg.viol("Us").pair(i, j).expected("no u1").found(show_indices(entry))
            });
        }
    }
    let gens: Vec<GroupElem> = (1..rg.m()).map(GroupElem::generator).collect();
    let (closure, _) = p.normal_closure(&gens, limits.group_bits)?;
    let expected: std::collections::BTreeSet<GroupElem> = rg.n_elements().into_iter().collect();
    rep.check(closure == expected, || {
        rg.viol("Us").expected(format!("|N_R| = {}", expected.len())).found(closure.len().to_string())
    });
    match rg.n_pres.consistency_check() {
        Ok(()) => rep.check(true, || rg.viol("Us")),
        Err(GroupError::Inconsistent(o)) => rep.push(rg.viol("Us").expected("consistent N_R").found(o.to_string())),
        Err(e) => return Err(e.into()),
    }
    Ok(rep.finish())
}

/// `τ_s ∈ Aut(N_R)`: homomorphism on all relations and all pairs, never
/// involving `u_{α_s}`.
fn homomorphism_check(rg: &ResidueGroup, bp: &Blueprint) -> Result<Report, ParabolicError> {
    let mut rep = Report::new(rg.title("tau homomorphism", bp));
    let p = &rg.pres;
    for j in 1..rg.m() {
        for i in 1..j {
            let lhs = p.comm(p.gen(rg.tau[i]), p.gen(rg.tau[j]))?;
            let word: Vec<usize> = p.relation(i, j).iter().map(|&k| rg.tau[k]).collect();
            let rhs = rg.product(&word)?;
            rep.check(lhs == rhs, || {
                rg.viol("tau-hom").pair(i, j).expected(rhs.to_string()).found(lhs.to_string())
            });
        }
    }
    let elems = rg.n_elements();
    let mut images = HashSet::new();
    for &x in &elems {
        let tx = rg.tau(x)?;
        images.insert(tx);
        rep.check(!tx.has(0), || rg.viol("tau-hom").expected("image in N_R").found(format!("tau({x}) = {tx}")));
        for &y in &elems {
            let lhs = rg.tau(p.mul(x, y)?)?;
            let rhs = p.mul(tx, rg.tau(y)?)?;
            if lhs != rhs {
                rep.push(rg.viol("tau-hom").expected(format!("tau({x}*{y}) = {rhs}")).found(lhs.to_string()));
            }
        }
    }
    rep.check(images.len() == elems.len(), || {
        rg.viol("tau-hom").expected("bijective").found(format!("{} images", images.len()))
    });
    Ok(rep.finish())
}

/// `τ_s²` and `(u_sτ_s)³` on every element of `N_R`.
fn order_checks(rg: &ResidueGroup, bp: &Blueprint) -> Result<(Report, Report), ParabolicError> {
    let mut inv = Report::new(rg.title("tau^2", bp));
    let mut cube = Report::new(rg.title("(u_s tau_s)^3", bp));
    for x in rg.n_elements() {
        let tt = rg.tau(rg.tau(x)?)?;
        inv.check(tt == x, || rg.viol("tau^2").expected(x.to_string()).found(tt.to_string()));
        let c = rg.us_tau(rg.us_tau(rg.us_tau(x)?)?)?;
        cube.check(c == x, || rg.viol("(u_s tau_s)^3").expected(x.to_string()).found(c.to_string()));
    }
    Ok((inv.finish(), cube.finish()))
}

/// Both sides of the `τ_s u_s τ_s = u_s τ_s u_s` identity on `u_{β_i}`,
/// written with commutator sets of the residue gallery.
pub fn ustaus_v_sides(rg: &ResidueGroup, i: usize) -> Result<(GroupElem, GroupElem), ParabolicError> {
    let p = &rg.pres;
    let t = &rg.tau;
    let m_sa = p.relation(0, t[i]).to_vec();
    let m_a = p.relation(0, i).to_vec();
    let mut lhs: Vec<usize> = m_sa.iter().map(|&g| t[g]).collect();
    lhs.push(i);
    let mut rhs = Vec::new();
    for &g in &m_a {
        rhs.extend_from_slice(p.relation(0, t[g]));
        rhs.push(t[g]);
    }
    rhs.extend_from_slice(&m_sa);
    rhs.push(t[i]);
    Ok((rg.product(&lhs)?, rg.product(&rhs)?))
}

pub fn ustaus_v_identity_check(rg: &ResidueGroup, i: usize) -> Result<bool, ParabolicError> {
    let (lhs, rhs) = ustaus_v_sides(rg, i)?;
    Ok(lhs == rhs)
}

fn ustaus_report(rg: &ResidueGroup, bp: &Blueprint) -> Result<Report, ParabolicError> {
    let mut rep = Report::new(rg.title("ustausV", bp));
    for i in 1..rg.m() {
        let (lhs, rhs) = ustaus_v_sides(rg, i)?;
        rep.check(lhs == rhs, || rg.viol("ustausV").pair(i, i).expected(lhs.to_string()).found(rhs.to_string()));
        // the sides are τ u τ (u_i) and u τ u (u_i)
        let x = rg.pres.gen(i);
        let tut = rg.tau(rg.conj_s(rg.tau(x)?)?)?;
        let utu = rg.conj_s(rg.tau(rg.conj_s(x)?)?)?;
        rep.check(tut == lhs && utu == rhs, || {
            rg.viol("ustausV").pair(i, i).expected(format!("{lhs} / {rhs}")).found(format!("{tut} / {utu}"))
        });
    }
    Ok(rep.finish())
}

/// All residue checks for `τ_s` on `N_R`.
pub fn tau_on_residue(bp: &Blueprint, rg: &ResidueGroup, limits: &Limits) -> Result<ResidueAudit, ParabolicError> {
    let semidirect = semidirect_check(rg, bp, limits)?;
    let homomorphism = homomorphism_check(rg, bp)?;
    let (involution, cube) = order_checks(rg, bp)?;
    let ustaus = ustaus_report(rg, bp)?;
    Ok(ResidueAudit {
        residue: rg.residue.clone(),
        s: rg.s,
        order_bits: rg.m(),
        semidirect,
        homomorphism,
        involution,
        cube,
        ustaus,
    })
}

/// Audits for every residue on the wall of `α_s` with minimal chamber in `ball(r)`.
pub fn audit_residues(bp: &Blueprint, s: Gen, r: usize, limits: &Limits) -> Result<Vec<ResidueAudit>, ParabolicError> {
    let sys = bp.system();
    let alpha = Root::simple(sys, s);
    let mut out = Vec::new();
    for res in sys.residues_on_wall(&alpha, r)? {
        let rg = build_residue_group(bp, &res, s)?;
        out.push(tau_on_residue(bp, &rg, limits)?);
    }
    Ok(out)
}

/// Evaluates root words inside the groups `U_v` of a ball.
pub struct Ambient<'a> {
    bp: &'a Blueprint,
    ball: Vec<(Word, HashSet<Root>)>,
    groups: RefCell<HashMap<Word, Rc<TruncatedGroup>>>,
}

impl<'a> Ambient<'a> {
    pub fn new(bp: &'a Blueprint, radius: usize) -> Result<Self, ParabolicError> {
        let sys = bp.system();
        let ball = sys
            .ball(radius)?
            .into_iter()
            .map(|v| {
                let roots = sys.phi_w(&v).into_iter().collect();
                (v, roots)
            })
            .collect();
        Ok(Ambient { bp, ball, groups: RefCell::new(HashMap::new()) })
    }

    pub fn blueprint(&self) -> &Blueprint {
        self.bp
    }

    /// Shortest `v` of the ball with every root in `Φ(v)`.
    pub fn container(&self, roots: &[Root]) -> Option<&Word> {
        self.ball.iter().find(|(_, phi)| roots.iter().all(|r| phi.contains(r))).map(|(v, _)| v)
    }

    pub fn group_on(&self, gallery: Gallery) -> Result<Rc<TruncatedGroup>, ParabolicError> {
        if let Some(g) = self.groups.borrow().get(gallery.word()) {
            return Ok(Rc::clone(g));
        }
        let key = gallery.word().clone();
        let g = Rc::new(TruncatedGroup::on_gallery(self.bp, gallery)?);
        self.groups.borrow_mut().insert(key, Rc::clone(&g));
        Ok(g)
    }

    fn group_for(&self, v: &Word) -> Result<Rc<TruncatedGroup>, ParabolicError> {
        self.group_on(Gallery::new(self.bp.system(), v.clone())?)
    }

    /// Normal form of a root word, as the crossed roots in gallery order.
    pub fn normalize(&self, word: &[Root]) -> Result<Option<Vec<Root>>, ParabolicError> {
        let Some(v) = self.container(word) else { return Ok(None) };
        let g = self.group_for(v)?;
        let x = g.product_of_roots(word)?;
        Ok(Some(g.roots_of(x)))
    }

    /// Equality in `U₊`, when some `U_v` holds both words.
    pub fn equal(&self, a: &[Root], b: &[Root]) -> Result<Option<bool>, ParabolicError> {
        let mut all = a.to_vec();
        all.extend_from_slice(b);
        let Some(v) = self.container(&all) else { return Ok(None) };
        let g = self.group_for(v)?;
        Ok(Some(g.product_of_roots(a)? == g.product_of_roots(b)?))
    }

    /// `τ_s` on an element of `N_s`: rewrite over a gallery of `Min_s(v)` and
    /// move every letter by `s`.
    pub fn tau(&self, s: Gen, word: &[Root]) -> Result<Option<Vec<Root>>, ParabolicError> {
        let sys = self.bp.system();
        let Some(v) = self.container(word) else { return Ok(None) };
        let g = self.group_on(first_gal_s(sys, v, s))?;
        let x = g.product_of_roots(word)?;
        let alpha_s = Root::simple(sys, s);
        if g.index_of(&alpha_s).is_some_and(|d| x.has(d)) {
            return Err(ParabolicError::NotInN(render(word), s + 1));
        }
        let s_word = Word(vec![s]);
        Ok(Some(g.roots_of(x).iter().map(|r| sys.apply_to_root(&s_word, r)).collect()))
    }
}

/// Root word rendered by root expressions.
pub fn render(word: &[Root]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = word
        .iter()
        .map(|r| match r.expr() {
            Some((w, s)) if w.is_empty() => format!("u({})", s + 1),
            Some((w, s)) => format!("u({}:{})", w, s + 1),
            None => format!("u{r}"),
        })
        .collect();
    parts.join(" ")
}

/// `∏_{γ ∈ M^G_{α_s,α}} u_{sγ}` does not depend on `G ∈ Min_s(w)` or on `w`.
pub fn gallery_independence_check(
    bp: &Blueprint,
    w: &Word,
    w2: &Word,
    s: Gen,
    alpha: &Root,
    limits: &Limits,
) -> Result<Report, ParabolicError> {
    let sys = bp.system();
    let s_word = Word(vec![s]);
    let mut rep = Report::new(format!("gallery independence {} w={} w'={} s={}", bp.name(), w, w2, s + 1));
    for x in [w, w2] {
        if !sys.is_left_descent(s, x) {
            return Err(GroupError::NotDescent { w: x.clone(), s: s + 1 }.into());
        }
    }
    let mut entries: Vec<(Word, Gallery, Vec<Root>)> = Vec::new();
    for x in [w, w2] {
        for g in min_gal_s(sys, x, s, limits.galleries)? {
            let Some(j) = g.index_of(alpha) else { continue };
            if j == 0 {
                continue;
            }
            let m: Vec<Root> = bp.query(&g, 0, j)?.iter().map(|&k| g.roots()[k].clone()).collect();
            entries.push((sys.normal_form(x), g, m));
        }
    }
    if entries.len() < 2 {
        rep.note("fewer than two galleries cross the root; nothing to compare");
        return Ok(rep);
    }
    // compare inside U_{sx} for each x: the shifted products lie there
    for x in [w, w2] {
        let sx = sys.reduce(&s_word.concat(x));
        let (target, _) = build_uw(bp, &sx, limits)?;
        let (source, _) = build_uw(bp, x, limits)?;
        let (_, g0, m0) = &entries[0];
        let img0: Vec<Root> = m0.iter().map(|r| sys.apply_to_root(&s_word, r)).collect();
        for (xv, g, m) in &entries[1..] {
            let img: Vec<Root> = m.iter().map(|r| sys.apply_to_root(&s_word, r)).collect();
            let (Ok(a), Ok(b)) = (target.product_of_roots(&img0), target.product_of_roots(&img)) else {
                rep.note(format!("products for {} and {} not both in U_{}", g0.word(), g.word(), sx));
                continue;
            };
            rep.check(a == b, || {
                Violation::new("gallery-independence")
                    .w(xv)
                    .s(s)
                    .gallery(g.word())
                    .expected(format!("{} (from {})", render(&target.roots_of(a)), g0.word()))
                    .found(render(&target.roots_of(b)))
            });
            if let (Ok(a), Ok(b)) = (source.product_of_roots(m0), source.product_of_roots(m)) {
                rep.check(a == b, || {
                    Violation::new("gallery-independence")
                        .w(xv)
                        .s(s)
                        .gallery(g.word())
                        .expected(render(&source.roots_of(a)))
                        .found(render(&source.roots_of(b)))
                });
            }
        }
    }
    Ok(rep.finish())
}

/// `τ_s` restricted to `U_w` for an ascent `s`: the generator map into
/// `U_{sw}` is an injective homomorphism whose image avoids `u_{α_s}`, and the
/// conjugation formula holds wherever `U_v` for `v` in `ball(radius)` can
/// hold both sides.
pub fn tau_on_truncation(bp: &Blueprint, w: &Word, s: Gen, radius: usize, limits: &Limits) -> Result<Report, ParabolicError> {
    let sys = bp.system();
    let w = sys.normal_form(w);
    if sys.is_left_descent(s, &w) {
        return Err(GroupError::NotAscent { w, s: s + 1 }.into());
    }
    let s_word = Word(vec![s]);
    let mut rep = Report::new(format!("tau on U_w {} w={w} s={}", bp.name(), s + 1));
    let viol = || Violation::new("tau-trunc").w(&w).s(s);
    let (source, cross) = build_uw(bp, &w, limits)?;
    rep.absorb(cross);
    let sw = sys.reduce(&s_word.concat(&w));
    let target = TruncatedGroup::on_gallery(bp, first_gal_s(sys, &sw, s))?;
    let alpha_s = Root::simple(sys, s);
    let k = source.order_bits();
    let mut image = Vec::with_capacity(k);
    for r in source.roots() {
        let sr = sys.apply_to_root(&s_word, r);
        rep.check(sys.apply_to_root(&s_word, &sr) == *r, || viol().expected(r.to_string()).found("s(s a) differs"));
        image.push(target.root_elem(&sr)?);
    }
    let tp = target.presentation();
    let phi = |x: GroupElem| -> Result<GroupElem, GroupError> {
        let mut acc = GroupElem::IDENTITY;
        for i in x.support() {
            acc = tp.mul(acc, image[i])?;
        }
        Ok(acc)
    };
    let sp = source.presentation();
    for j in 0..k {
        for i in 0..j {
            let lhs = tp.comm(image[i], image[j])?;
            let rhs = phi(sp.collect(sp.relation(i, j))?)?;
            rep.check(lhs == rhs, || viol().pair(i, j).expected(rhs.to_string()).found(format!("{lhs} in U_sw")));
            // index 0 of the target basis is α_s
            rep.check(!rhs.has(0), || viol().pair(i, j).expected("image in N_s").found(rhs.to_string()));
        }
    }
    if k as u32 <= limits.group_bits {
        let mut seen = HashSet::new();
        for x in 0..1u128 << k {
            let y = phi(GroupElem(x))?;
            rep.check(!y.has(0), || viol().expected("image in N_s").found(y.to_string()));
            seen.insert(y);
        }
        rep.check(seen.len() == 1 << k, || viol().expected("injective").found(format!("{} images", seen.len())));
    } else {
        rep.note(format!("injectivity not enumerated above 2^{}", limits.group_bits));
    }

    // τ_s(u_s u_β u_s) = u_s (∏_{γ ∈ M^{sG}_{α_s, sβ}} u_{sγ}) u_β u_s
    let amb = Ambient::new(bp, radius)?;
    let (mut verified, mut skipped) = (0, 0);
    for beta in source.roots() {
        let sb = sys.apply_to_root(&s_word, beta);
        let j = target.index_of(&sb).expect("sβ crosses sG");
        let m: Vec<Root> = bp.query(target.gallery(), 0, j)?.iter().map(|&x| target.roots()[x].clone()).collect();
        let v_beta = vec![alpha_s.clone(), beta.clone(), alpha_s.clone()];
        let Some(lhs) = amb.tau(s, &v_beta)? else {
            skipped += 1;
            continue;
        };
        let mut rhs = vec![alpha_s.clone()];
        rhs.extend(m.iter().map(|g| sys.apply_to_root(&s_word, g)));
        rhs.push(beta.clone());
        rhs.push(alpha_s.clone());
        match amb.equal(&lhs, &rhs)? {
            Some(ok) => {
                verified += 1;
                rep.check(ok, || viol().expected(render(&rhs)).found(render(&lhs)));
            }
            None => skipped += 1,
        }
    }
    rep.note(format!("conjugation formula: {verified} verified, {skipped} not representable within radius {radius}"));
    Ok(rep.finish())
}

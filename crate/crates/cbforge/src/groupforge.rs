//! Power-commutator presentations over F₂ and the groups `U_w`.
//!
//! Every generator is an involution and for `i < j` the presentation stores
//! `[u_i, u_j] = u_{k_1} ⋯ u_{k_r}` with `i < k_1 < ⋯ < k_r < j`. Elements are
//! bit masks of normal forms `∏ u_i^{ε_i}` in increasing index order.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::blueprints::{Blueprint, BlueprintError};
use crate::coxeter::{CoxeterError, Gen, Word};
use crate::galleries::{first_gal_s, min_gal, Gallery, GalleryError};
use crate::report::{show_indices, Limits, Report, Violation};
use crate::roots::Root;

/// Maximum number of generators a presentation may have.
pub const MAX_GENERATORS: usize = 128;

/// Rewriting steps allowed for a single collection.
pub const DEFAULT_STEP_CAP: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("{0} generators exceed the limit of {MAX_GENERATORS}")]
    TooManyGenerators(usize),
    #[error("relation ({i}, {j}): {msg}")]
    BadRelation { i: usize, j: usize, msg: String },
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("collection exceeded {0} steps; the relation table is malformed")]
    StepCap(usize),
    #[error("inconsistent presentation: {0}")]
    Inconsistent(Box<Overlap>),
    #[error("explicit enumeration would exceed 2^{0} elements")]
    Cap(u32),
    #[error("generator {s} is not a left descent of {w}")]
    NotDescent { w: Word, s: usize },
    #[error("generator {s} is a left descent of {w}")]
    NotAscent { w: Word, s: usize },
    #[error("root {0} is not in the basis")]
    UnknownRoot(String),
    #[error(transparent)]
    Blueprint(#[from] BlueprintError),
    #[error(transparent)]
    Gallery(#[from] GalleryError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

/// A failed overlap: two ways of collecting the same word that disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    /// Generator indices of the overlapping word, 0-based.
    pub word: Vec<usize>,
    pub left: GroupElem,
    pub right: GroupElem,
}

impl fmt::Display for Overlap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.word.iter().map(|i| format!("u{}", i + 1)).collect();
        write!(f, "{} collects to {} and to {}", w.join(""), self.left, self.right)
    }
}

/// Normal form `∏ u_i^{ε_i}` as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem(pub u128);

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem(0);

    pub fn generator(i: usize) -> GroupElem {
        GroupElem(1u128 << i)
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    pub fn has(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    /// Indices of the normal form, increasing.
    pub fn support(self) -> Vec<usize> {
        (0..MAX_GENERATORS).filter(|&i| self.has(i)).collect()
    }

    pub fn weight(self) -> u32 {
        self.0.count_ones()
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        for i in self.support() {
            write!(f, "u{}", i + 1)?;
        }
        Ok(())
    }
}

/// A power-commutator presentation with exponent 2 throughout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    k: usize,
    rel: Vec<Vec<Vec<usize>>>,
    step_cap: usize,
}

impl PcPresentation {
    /// `rel[i][j]` for `i < j`; other entries are ignored and may be empty.
    pub fn new(k: usize, rel: Vec<Vec<Vec<usize>>>) -> Result<Self, GroupError> {
        if k > MAX_GENERATORS {
            return Err(GroupError::TooManyGenerators(k));
        }
        let mut table = vec![vec![Vec::new(); k]; k];
        for (i, row) in rel.into_iter().enumerate().take(k) {
            for (j, entry) in row.into_iter().enumerate().take(k) {
                if j <= i {
                    continue;
                }
                if entry.windows(2).any(|p| p[0] >= p[1]) {
                    return Err(GroupError::BadRelation { i, j, msg: "not strictly increasing".into() });
                }
                if entry.iter().any(|&x| x <= i || x >= j) {
                    return Err(GroupError::BadRelation { i, j, msg: "entry outside the open interval".into() });
                }
                table[i][j] = entry;
            }
        }
        Ok(PcPresentation { k, rel: table, step_cap: DEFAULT_STEP_CAP })
    }

    /// Presentation with all commutators trivial.
    pub fn abelian(k: usize) -> Result<Self, GroupError> {
        PcPresentation::new(k, Vec::new())
    }

    pub fn with_step_cap(mut self, cap: usize) -> Self {
        self.step_cap = cap;
        self
    }

    pub fn generators(&self) -> usize {
        self.k
    }

    /// `[u_i, u_j]` for `i < j`, as increasing indices.
    pub fn relation(&self, i: usize, j: usize) -> &[usize] {
        &self.rel[i][j]
    }

    pub fn gen(&self, i: usize) -> GroupElem {
        GroupElem::generator(i)
    }

    fn check_index(&self, i: usize) -> Result<(), GroupError> {
        if i < self.k {
            Ok(())
        } else {
            Err(GroupError::BadGenerator(i))
        }
    }

    /// Collect `x · u_{word[0]} ⋯ u_{word[n-1]}` to normal form.
    ///
    /// Collection from the left: the next letter `u_g` is moved past the
    /// highest letter `u_h` of the collected prefix with `h > g` using
    /// `u_h u_g = u_g u_h [u_h, u_g]`, and `[u_h, u_g]` is the reversed
    /// stored product of `[u_g, u_h]`.
    pub fn collect_onto(&self, x: GroupElem, word: &[usize]) -> Result<GroupElem, GroupError> {
        let mut acc = x.0;
        let mut stack: Vec<usize> = Vec::with_capacity(word.len() * 2);
        for &g in word.iter().rev() {
            self.check_index(g)?;
            stack.push(g);
        }
        let mut steps = 0usize;
        while let Some(g) = stack.pop() {
            steps += 1;
            if steps > self.step_cap {
                return Err(GroupError::StepCap(self.step_cap));
            }
            let above = acc >> g;
            if above <= 1 {
                acc ^= 1u128 << g;
                continue;
            }
            let h = 127 - acc.leading_zeros() as usize;
            acc &= !(1u128 << h);
            // pops in order: g, h, then the stored product reversed
            stack.extend(self.rel[g][h].iter().copied());
            stack.push(h);
            stack.push(g);
        }
        Ok(GroupElem(acc))
    }

    pub fn collect(&self, word: &[usize]) -> Result<GroupElem, GroupError> {
        self.collect_onto(GroupElem::IDENTITY, word)
    }

    pub fn mul(&self, x: GroupElem, y: GroupElem) -> Result<GroupElem, GroupError> {
        self.collect_onto(x, &y.support())
    }

    pub fn inv(&self, x: GroupElem) -> Result<GroupElem, GroupError> {
        let mut w = x.support();
        w.reverse();
        self.collect(&w)
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn comm(&self, x: GroupElem, y: GroupElem) -> Result<GroupElem, GroupError> {
        let a = self.mul(self.inv(x)?, self.inv(y)?)?;
        let b = self.mul(a, x)?;
        self.mul(b, y)
    }

    /// `y⁻¹ x y`.
    pub fn conj(&self, x: GroupElem, y: GroupElem) -> Result<GroupElem, GroupError> {
        let a = self.mul(self.inv(y)?, x)?;
        self.mul(a, y)
    }

    /// Element with the given generator indices multiplied in the given order.
    pub fn product(&self, gens: &[usize]) -> Result<GroupElem, GroupError> {
        self.collect(gens)
    }

    /// Overlap test; `Ok` certifies that the bit masks are a transversal of
    /// the presented group, i.e. its order is `2^k`.
    pub fn consistency_check(&self) -> Result<(), GroupError> {
        let k = self.k;
        let fail = |word: Vec<usize>, left: GroupElem, right: GroupElem| {
            Err(GroupError::Inconsistent(Box::new(Overlap { word, left, right })))
        };
        for i in 0..k {
            for j in i + 1..k {
                let ji = self.collect(&[j, i])?;
                // (u_j u_j) u_i = u_j (u_j u_i)
                let left = self.gen(i);
                let right = self.collect_onto(self.gen(j), &ji.support())?;
                if left != right {
                    return fail(vec![j, j, i], left, right);
                }
                // (u_j u_i) u_i = u_j (u_i u_i)
                let left = self.collect_onto(ji, &[i])?;
                if left != self.gen(j) {
                    return fail(vec![j, i, i], left, self.gen(j));
                }
                for l in j + 1..k {
                    // (u_l u_j) u_i = u_l (u_j u_i)
                    let left = self.collect(&[l, j, i])?;
                    let right = self.collect_onto(self.gen(l), &ji.support())?;
                    if left != right {
                        return fail(vec![l, j, i], left, right);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_consistent(&self) -> bool {
        self.consistency_check().is_ok()
    }

    /// Drop generator `d` and every relation that mentions it.
    pub fn delete_generator(&self, d: usize) -> Result<PcPresentation, GroupError> {
        self.check_index(d)?;
        let k = self.k - 1;
        let old = |i: usize| if i < d { i } else { i + 1 };
        let new = |i: usize| if i < d { i } else { i - 1 };
        let mut rel = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let entry = &self.rel[old(i)][old(j)];
                if entry.contains(&d) {
                    return Err(GroupError::BadRelation { i: old(i), j: old(j), msg: "mentions the deleted generator".into() });
                }
                rel[i][j] = entry.iter().map(|&x| new(x)).collect();
            }
        }
        PcPresentation::new(k, rel)
    }

    pub fn order_bits(&self) -> usize {
        self.k
    }

    fn size_guard(&self, cap_bits: u32) -> Result<(), GroupError> {
        if self.k as u32 > cap_bits {
            Err(GroupError::Cap(cap_bits))
        } else {
            Ok(())
        }
    }

    /// All elements of the group (requires consistency).
    pub fn elements(&self, cap_bits: u32) -> Result<Vec<GroupElem>, GroupError> {
        self.size_guard(cap_bits)?;
        Ok((0..1u128 << self.k).map(GroupElem).collect())
    }

    /// The subgroup generated by `gens`, as an explicit set.
    pub fn subgroup_closure(&self, gens: &[GroupElem], cap_bits: u32) -> Result<BTreeSet<GroupElem>, GroupError> {
        let cap = 1usize << cap_bits.min(62);
        let mut seen: HashSet<GroupElem> = HashSet::new();
        seen.insert(GroupElem::IDENTITY);
        let mut queue = vec![GroupElem::IDENTITY];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g)?;
                if seen.insert(y) {
                    if seen.len() > cap {
                        return Err(GroupError::Cap(cap_bits));
                    }
                    queue.push(y);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Normal closure of `gens`; returns the subgroup and a generating set.
    pub fn normal_closure(
        &self,
        gens: &[GroupElem],
        cap_bits: u32,
    ) -> Result<(BTreeSet<GroupElem>, Vec<GroupElem>), GroupError> {
        let mut gens: Vec<GroupElem> = gens.iter().copied().filter(|g| !g.is_identity()).collect();
        loop {
            let sub = self.subgroup_closure(&gens, cap_bits)?;
            let mut extra = Vec::new();
            for &g in &gens {
                for i in 0..self.k {
                    let c = self.conj(g, self.gen(i))?;
                    if !sub.contains(&c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return Ok((sub, gens));
            }
            gens.extend(extra);
        }
    }

    /// `γ_1 = U ⊇ γ_2 = [γ_1, U] ⊇ ⋯` down to the trivial group.
    pub fn lower_central_series(&self, cap_bits: u32) -> Result<Vec<BTreeSet<GroupElem>>, GroupError> {
        self.size_guard(cap_bits)?;
        let all: Vec<GroupElem> = (0..self.k).map(|i| self.gen(i)).collect();
        let mut series = Vec::new();
        let mut current: BTreeSet<GroupElem> = self.elements(cap_bits)?.into_iter().collect();
        let mut current_gens = all.clone();
        loop {
            let done = current.len() == 1;
            series.push(current.clone());
            if done {
                return Ok(series);
            }
            let mut comms = Vec::new();
            for &x in &current_gens {
                for &g in &all {
                    let c = self.comm(x, g)?;
                    if !c.is_identity() && !comms.contains(&c) {
                        comms.push(c);
                    }
                }
            }
            let (next, gens) = self.normal_closure(&comms, cap_bits)?;
            if next.len() == current.len() {
                // not nilpotent; cannot happen for a consistent presentation of this shape
                return Err(GroupError::BadRelation { i: 0, j: 0, msg: "lower central series stalls".into() });
            }
            current = next;
            current_gens = gens;
        }
    }

    /// Least `c` with `γ_{c+1} = 1`.
    pub fn nilpotency_class(&self, cap_bits: u32) -> Result<usize, GroupError> {
        Ok(self.lower_central_series(cap_bits)?.len() - 1)
    }
}

/// `U_w` presented over the roots of a chosen minimal gallery.
#[derive(Clone, Debug)]
pub struct TruncatedGroup {
    gallery: Gallery,
    pres: PcPresentation,
    index: HashMap<Root, usize>,
}

impl TruncatedGroup {
    /// Presentation `U_G` read off the blueprint along `gallery`; must be consistent.
    pub fn on_gallery(bp: &Blueprint, gallery: Gallery) -> Result<TruncatedGroup, GroupError> {
        let k = gallery.len();
        if k > MAX_GENERATORS {
            return Err(GroupError::TooManyGenerators(k));
        }
        let mut rel = vec![vec![Vec::new(); k]; k];
        for j in 0..k {
            for i in 0..j {
                rel[i][j] = bp.query(&gallery, i, j)?;
            }
        }
        let pres = PcPresentation::new(k, rel)?;
        pres.consistency_check()?;
        let index = gallery.roots().iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(TruncatedGroup { gallery, pres, index })
    }

    pub fn gallery(&self) -> &Gallery {
        &self.gallery
    }

    pub fn presentation(&self) -> &PcPresentation {
        &self.pres
    }

    pub fn order_bits(&self) -> usize {
        self.pres.k
    }

    pub fn roots(&self) -> &[Root] {
        self.gallery.roots()
    }

    pub fn index_of(&self, r: &Root) -> Option<usize> {
        self.index.get(r).copied()
    }

    pub fn root_elem(&self, r: &Root) -> Result<GroupElem, GroupError> {
        self.index_of(r).map(GroupElem::generator).ok_or_else(|| GroupError::UnknownRoot(r.to_string()))
    }

    /// `∏ u_{γ}` over `roots` in the given order.
    pub fn product_of_roots(&self, roots: &[Root]) -> Result<GroupElem, GroupError> {
        let idx = roots
            .iter()
            .map(|r| self.index_of(r).ok_or_else(|| GroupError::UnknownRoot(r.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        self.pres.collect(&idx)
    }

    /// Roots of a normal form, in basis order.
    pub fn roots_of(&self, x: GroupElem) -> Vec<Root> {
        x.support().into_iter().map(|i| self.gallery.roots()[i].clone()).collect()
    }

    /// Check that every relation of `other ∈ Min(w)` holds here.
    pub fn cross_check(&self, bp: &Blueprint, other: &Gallery, w: &Word, rep: &mut Report) -> Result<(), GroupError> {
        let roots = other.roots();
        for j in 0..other.len() {
            for i in 0..j {
                let lhs = self.pres.comm(self.root_elem(&roots[i])?, self.root_elem(&roots[j])?)?;
                let m = bp.query(other, i, j)?;
                let rhs_roots: Vec<Root> = m.iter().map(|&k| roots[k].clone()).collect();
                let rhs = self.product_of_roots(&rhs_roots)?;
                rep.check(lhs == rhs, || {
                    Violation::new("CB3")
                        .w(w)
                        .gallery(other.word())
                        .pair(i, j)
                        .expected(format!("{}={}", show_indices(&m), self.relabel(rhs, other)))
                        .found(self.relabel(lhs, other))
                });
            }
        }
        Ok(())
    }

    /// Render `x` in the crossing indices of `other` (unordered product).
    fn relabel(&self, x: GroupElem, other: &Gallery) -> String {
        let idx: Vec<usize> = self.roots_of(x).iter().filter_map(|r| other.index_of(r)).collect();
        show_indices(&idx)
    }
}

/// Build `U_w` over the lex-least gallery of `Min(w)` and cross-check all
/// other galleries. An inconsistent base presentation is an error carrying the
/// overlap witness.
pub fn build_uw(bp: &Blueprint, w: &Word, limits: &Limits) -> Result<(TruncatedGroup, Report), GroupError> {
    let sys = bp.system();
    let w = sys.normal_form(w);
    let galleries = min_gal(sys, &w, limits.galleries)?;
    let mut rep = Report::new(format!("U_w {} w={w}", bp.name()));
    let mut iter = galleries.into_iter();
    let base = iter.next().expect("Min(w) is never empty");
    let group = TruncatedGroup::on_gallery(bp, base)?;
    for other in iter {
        group.cross_check(bp, &other, &w, &mut rep)?;
    }
    Ok((group, rep.finish()))
}

/// CB3 over a ball: every `U_w` consistent and all galleries agree.
pub fn validate_cb3(bp: &Blueprint, r: usize, limits: &Limits) -> Result<Report, GroupError> {
    let mut rep = Report::new(format!("CB3 {} r={r}", bp.name()));
    for w in bp.system().ball(r)? {
        match build_uw(bp, &w, limits) {
            Ok((_, sub)) => {
                // the consistency of the base presentation is one check
                rep.checks += 1;
                rep.absorb(sub);
            }
            Err(GroupError::Inconsistent(o)) => rep.push(
                Violation::new("CB3")
                    .w(&w)
                    .gallery(min_gal(bp.system(), &w, limits.galleries)?[0].word())
                    .expected(o.left.to_string())
                    .found(format!("{} (overlap {})", o.right, overlap_word(&o))),
            ),
            Err(e) => return Err(e),
        }
    }
    Ok(rep.finish())
}

fn overlap_word(o: &Overlap) -> String {
    o.word.iter().map(|i| format!("u{}", i + 1)).collect()
}

/// Summary of `U_w` for reports.
#[derive(Clone, Debug)]
pub struct GroupSummary {
    pub w: Word,
    pub base: Word,
    pub order_bits: usize,
    pub cross_check: Report,
    /// `log₂ |γ_i|` for the lower central series, when within the size cap.
    pub series_bits: Option<Vec<u32>>,
}

impl GroupSummary {
    pub fn class(&self) -> Option<usize> {
        self.series_bits.as_ref().map(|s| s.len() - 1)
    }
}

pub fn summarize(bp: &Blueprint, w: &Word, limits: &Limits) -> Result<GroupSummary, GroupError> {
    let (g, rep) = build_uw(bp, w, limits)?;
    let series_bits = match g.presentation().lower_central_series(limits.group_bits) {
        Ok(s) => Some(s.iter().map(|x| x.len().trailing_zeros()).collect()),
        Err(GroupError::Cap(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(GroupSummary {
        w: bp.system().normal_form(w),
        base: g.gallery().word().clone(),
        order_bits: g.order_bits(),
        cross_check: rep,
        series_bits,
    })
}

/// `V_{w,s}` and its presentation `V_G` for `G ∈ Min_s(w)`.
#[derive(Clone, Debug)]
pub struct Vws {
    /// `U_w` over the `s`-first gallery, so `α_s` has index 0.
    pub group: TruncatedGroup,
    /// `V_G`: the presentation with `u_{α_s}` deleted.
    pub v_pres: PcPresentation,
    /// Explicit `V_{w,s}` when within the size cap.
    pub elements: Option<BTreeSet<GroupElem>>,
}

pub fn build_vws(bp: &Blueprint, w: &Word, s: Gen, limits: &Limits) -> Result<Vws, GroupError> {
    let sys = bp.system();
    if !sys.is_left_descent(s, w) {
        return Err(GroupError::NotDescent { w: w.clone(), s: s + 1 });
    }
    let group = TruncatedGroup::on_gallery(bp, first_gal_s(sys, w, s))?;
    let v_pres = group.presentation().delete_generator(0)?;
    let gens: Vec<GroupElem> = (1..group.order_bits()).map(GroupElem::generator).collect();
    let elements = match group.presentation().normal_closure(&gens, limits.group_bits) {
        Ok((set, _)) => Some(set),
        Err(GroupError::Cap(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Vws { group, v_pres, elements })
}

/// Pairs `(x, y)` are checked exhaustively for `φ(xy) = φ(x)φ(y)` up to this many bits of `V`.
const EXHAUSTIVE_HOM_BITS: usize = 8;

/// `V_G ≅ V_{w,s}` and `u_α ↦ u_{sα}` from `V_{w,s}` onto `U_{sw}`.
pub fn vws_iso_check(bp: &Blueprint, w: &Word, s: Gen, limits: &Limits) -> Result<Report, GroupError> {
    let sys = bp.system();
    let w = sys.normal_form(w);
    let mut rep = Report::new(format!("V_ws {} w={w} s={}", bp.name(), s + 1));
    let vws = build_vws(bp, &w, s, limits)?;
    let k = vws.group.order_bits();
    let viol = || Violation::new("Vws").w(&w).s(s).gallery(vws.group.gallery().word());

    match vws.v_pres.consistency_check() {
        Ok(()) => rep.check(true, viol),
        Err(GroupError::Inconsistent(o)) => rep.push(viol().expected("consistent V_G").found(o.to_string())),
        Err(e) => return Err(e),
    }
    if let Some(set) = &vws.elements {
        let expected: BTreeSet<GroupElem> = (0..1u128 << (k - 1)).map(|x| GroupElem(x << 1)).collect();
        rep.check(*set == expected, || viol().expected(format!("order 2^{}", k - 1)).found(format!("order {}", set.len())));
    } else {
        rep.note(format!("V_ws of order 2^{} not enumerated", k - 1));
    }

    let sw = sys.reduce(&Word(vec![s]).concat(&w));
    let (target, cross) = build_uw(bp, &sw, limits)?;
    rep.absorb(cross);
    rep.check(target.order_bits() == k - 1, || viol().expected(format!("|U_sw| = 2^{}", k - 1)).found(format!("2^{}", target.order_bits())));
    let s_word = Word(vec![s]);
    let mut image = Vec::with_capacity(k - 1);
    for r in &vws.group.roots()[1..] {
        image.push(target.root_elem(&sys.apply_to_root(&s_word, r))?);
    }
    let tp = target.presentation();
    let phi = |x: GroupElem| -> Result<GroupElem, GroupError> {
        let mut acc = GroupElem::IDENTITY;
        for i in x.support() {
            acc = tp.mul(acc, image[i])?;
        }
        Ok(acc)
    };
    // relations of V_G
    for j in 0..k - 1 {
        for i in 0..j {
            let lhs = tp.comm(image[i], image[j])?;
            let rhs = phi(tp_word(vws.v_pres.relation(i, j)))?;
            rep.check(lhs == rhs, || {
                viol().pair(i + 1, j + 1).expected(rhs.to_string()).found(format!("{lhs} in U_sw"))
            });
        }
    }
    // bijectivity on normal forms
    if (k - 1) as u32 <= limits.group_bits {
        let mut seen = HashSet::new();
        for x in 0..1u128 << (k - 1) {
            seen.insert(phi(GroupElem(x))?);
        }
        rep.check(seen.len() == 1 << (k - 1), || viol().expected("injective").found(format!("{} images", seen.len())));
    }
    if k - 1 <= EXHAUSTIVE_HOM_BITS {
        let vp = &vws.v_pres;
        'outer: for x in 0..1u128 << (k - 1) {
            for y in 0..1u128 << (k - 1) {
                let (x, y) = (GroupElem(x), GroupElem(y));
                let lhs = phi(vp.mul(x, y)?)?;
                let rhs = tp.mul(phi(x)?, phi(y)?)?;
                if lhs != rhs {
                    rep.push(viol().expected(format!("phi({x}*{y}) = {rhs}")).found(lhs.to_string()));
                    break 'outer;
                }
            }
        }
    }
    Ok(rep.finish())
}

fn tp_word(idx: &[usize]) -> GroupElem {
    // relation entries are increasing, hence already a normal form
    GroupElem(idx.iter().fold(0u128, |acc, &i| acc | 1u128 << i))
}

/// The map killing every generator except `u_{α_s}` respects all relations
/// iff `α_s` never occurs in a commutator set.
pub fn project_to_us(group: &TruncatedGroup, alpha_s: &Root) -> Report {
    let mut rep = Report::new("projection to U_s");
    let Some(d) = group.index_of(alpha_s) else {
        rep.note("α_s not in the basis; the projection is trivial");
        return rep;
    };
    let p = group.presentation();
    for j in 0..p.generators() {
        for i in 0..j {
            let entry = p.relation(i, j);
            rep.check(!entry.contains(&d), || {
                Violation::new("Us")
                    .gallery(group.gallery().word())
                    .pair(i, j)
                    .expected(format!("no u{}", d + 1))
                    .found(show_indices(entry))
            });
        }
    }
    rep.finish()
}

//! Rewriting chains inside `U_{s,t}` and their verification by collection.
//!
//! A chain is a list of terms separated by `=`. A term is `[ops .] product`:
//!
//! * a product is a sequence of factors `uN` (the root `β_N` of the rank-2
//!   table), `1`, or commutators `[X,Y] = X⁻¹Y⁻¹XY` of products;
//! * ops act right to left: `TN` is `τ` for the simple root `β_N`, `CN` is
//!   conjugation `x ↦ u_N x u_N`, and `(ops)^k` repeats a group of ops.
//!
//! So `C1 T1 . u6` is `u_1 τ_1(u_6) u_1`.

use std::fmt;

use thiserror::Error;

use crate::blueprints::Blueprint;
use crate::coxeter::{Gen, Word};
use crate::galleries::Gallery;
use crate::groupforge::{GroupElem, GroupError, TruncatedGroup};
use crate::report::{Report, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("parse error at byte {pos} of {text:?}: {msg}")]
    Parse { text: String, pos: usize, msg: String },
    #[error("u{0} is not a root of the rank-2 table")]
    BadIndex(usize),
    #[error("T{0} is only defined for the simple roots")]
    NotSimple(usize),
    #[error("T{idx} applied to {elem}, which involves u{idx}")]
    OutsideDomain { idx: usize, elem: String },
    #[error("generators {0} and {1} have infinite order product")]
    Infinite(usize, usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Op {
    Tau(usize),
    Conj(usize),
    Repeat(Vec<Op>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Factor {
    Gen(usize),
    Comm(Vec<Factor>, Vec<Factor>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    ops: Vec<Op>,
    product: Vec<Factor>,
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, bytes: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: &str) -> Result<T, IdentityError> {
        Err(IdentityError::Parse { text: self.text.to_string(), pos: self.pos, msg: msg.to_string() })
    }

    fn skip(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize, IdentityError> {
        self.skip();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        Ok(self.text[start..self.pos].parse().expect("digits"))
    }

    fn ops(&mut self) -> Result<Vec<Op>, IdentityError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(b'T') => {
                    self.pos += 1;
                    out.push(Op::Tau(self.number()?));
                }
                Some(b'C') => {
                    self.pos += 1;
                    out.push(Op::Conj(self.number()?));
                }
                Some(b'(') => {
                    self.pos += 1;
                    let inner = self.ops()?;
                    if !self.eat(b')') || !self.eat(b'^') {
                        return self.err("expected `)^k`");
                    }
                    out.push(Op::Repeat(inner, self.number()? as u32));
                }
                _ => return Ok(out),
            }
        }
    }

    fn product(&mut self) -> Result<Vec<Factor>, IdentityError> {
        let mut out = Vec::new();
        loop {
            match self.peek() {
                Some(b'u') => {
                    self.pos += 1;
                    out.push(Factor::Gen(self.number()?));
                }
                Some(b'1') => {
                    self.pos += 1;
                }
                Some(b'[') => {
                    self.pos += 1;
                    let x = self.product()?;
                    if !self.eat(b',') {
                        return self.err("expected `,`");
                    }
                    let y = self.product()?;
                    if !self.eat(b']') {
                        return self.err("expected `]`");
                    }
                    out.push(Factor::Comm(x, y));
                }
                _ => return Ok(out),
            }
        }
    }

    fn term(&mut self) -> Result<Term, IdentityError> {
        let save = self.pos;
        let ops = self.ops()?;
        let ops = if self.eat(b'.') {
            ops
        } else {
            self.pos = save;
            Vec::new()
        };
        let product = self.product()?;
        if product.is_empty() && self.peek() != Some(b'=') && self.peek().is_some() {
            return self.err("expected a product");
        }
        Ok(Term { ops, product })
    }

    fn chain(mut self) -> Result<Vec<Term>, IdentityError> {
        let mut terms = vec![self.term()?];
        while self.eat(b'=') {
            terms.push(self.term()?);
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(terms)
    }
}

/// `U_{s,t}` over the rank-2 table order `β_1, …, β_m` with the two `τ` maps.
#[derive(Clone, Debug)]
pub struct Rank2Context {
    pub group: TruncatedGroup,
    /// Generators with simple roots `β_1` and `β_m`.
    pub simple: (Gen, Gen),
    /// `tau[0][i]` is the index of `s_1 β_i`, `tau[1][i]` that of `s_m β_i`.
    tau: [Vec<Option<usize>>; 2],
}

impl Rank2Context {
    pub fn new(bp: &Blueprint, s: Gen, t: Gen) -> Result<Self, IdentityError> {
        let sys = bp.system();
        let m = sys.matrix().order(s, t).ok_or(IdentityError::Infinite(s + 1, t + 1))? as usize;
        let lead = sys.matrix().leading(s, t);
        let other = if lead == s { t } else { s };
        let word = crate::coxeter::alternating(lead, other, m);
        let gallery = Gallery::new(sys, word).map_err(GroupError::from)?;
        let group = TruncatedGroup::on_gallery(bp, gallery)?;
        let roots = group.roots().to_vec();
        let tau_for = |g: Gen| -> Vec<Option<usize>> {
            roots.iter().map(|r| group.index_of(&sys.apply_to_root(&Word(vec![g]), r))).collect()
        };
        let tau = [tau_for(lead), tau_for(other)];
        Ok(Rank2Context { group, simple: (lead, other), tau })
    }

    pub fn m(&self) -> usize {
        self.group.order_bits()
    }

    /// `τ` for `β_1` (`side = 0`) or `β_m` (`side = 1`) on an element avoiding that root.
    pub fn tau(&self, side: usize, x: GroupElem) -> Result<GroupElem, IdentityError> {
        let own = if side == 0 { 0 } else { self.m() - 1 };
        if x.has(own) {
            return Err(IdentityError::OutsideDomain { idx: own + 1, elem: x.to_string() });
        }
        let p = self.group.presentation();
        let mut acc = GroupElem::IDENTITY;
        for i in x.support() {
            let j = self.tau[side][i].expect("reflections permute the non-simple positive roots");
            acc = p.mul(acc, GroupElem::generator(j))?;
        }
        Ok(acc)
    }

    fn index(&self, n: usize) -> Result<usize, IdentityError> {
        if n >= 1 && n <= self.m() {
            Ok(n - 1)
        } else {
            Err(IdentityError::BadIndex(n))
        }
    }

    fn side(&self, n: usize) -> Result<usize, IdentityError> {
        let i = self.index(n)?;
        if i == 0 {
            Ok(0)
        } else if i == self.m() - 1 {
            Ok(1)
        } else {
            Err(IdentityError::NotSimple(n))
        }
    }

    fn eval_product(&self, fs: &[Factor]) -> Result<GroupElem, IdentityError> {
        let p = self.group.presentation();
        let mut acc = GroupElem::IDENTITY;
        for f in fs {
            let x = match f {
                Factor::Gen(n) => GroupElem::generator(self.index(*n)?),
                Factor::Comm(a, b) => p.comm(self.eval_product(a)?, self.eval_product(b)?)?,
            };
            acc = p.mul(acc, x)?;
        }
        Ok(acc)
    }

    fn apply_ops(&self, ops: &[Op], mut x: GroupElem) -> Result<GroupElem, IdentityError> {
        let p = self.group.presentation();
        for op in ops.iter().rev() {
            x = match op {
                Op::Tau(n) => self.tau(self.side(*n)?, x)?,
                Op::Conj(n) => {
                    let u = GroupElem::generator(self.index(*n)?);
                    p.conj(x, u)?
                }
                Op::Repeat(inner, k) => {
                    for _ in 0..*k {
                        x = self.apply_ops(inner, x)?;
                    }
                    x
                }
            };
        }
        Ok(x)
    }

    /// Values of every term of a chain.
    pub fn evaluate(&self, chain: &str) -> Result<Vec<GroupElem>, IdentityError> {
        let terms = Parser::new(chain).chain()?;
        terms.iter().map(|t| self.apply_ops(&t.ops, self.eval_product(&t.product)?)).collect()
    }
}

/// A displayed identity in a rank-2 group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: &'static str,
    /// Order `m_{st}` of the residue the chain lives in.
    pub m: u32,
    pub chain: &'static str,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[m={}] {}: {}", self.m, self.name, self.chain)
    }
}

const fn id(name: &'static str, m: u32, chain: &'static str) -> Identity {
    Identity { name, m, chain }
}

/// Identities in the rank-2 groups used by the braid computations.
///
/// For `m = 3, 4` the indices follow the gallery starting with `s`:
/// `u1 = u_s`, `u2 = u_{sα_t}`, `u3 = u_{stα_s}` (`= u_{tα_s}` for `m = 4`),
/// and `u_m = u_t`. For `m = 6` the edge is directed so that `β_1 = α_s`.
pub const CATALOG: &[Identity] = &[
    // rank-one automorphisms on residues
    id("tau A1xA1 u2", 2, "(C1 T1)^3 . u2 = (C1 T1)^2 . [u1,u2] u2 = (C1 T1)^2 . u2 = u2"),
    id("tau A1xA1 fixes", 2, "T1 . u2 = u2"),
    id("tau A1xA1 fixes t", 2, "T2 . u1 = u1"),
    id("tau A2 epsilon", 3, "(C1 T1)^3 . u3 = (C1 T1)^2 . u2 = C1 T1 . u2 u3 = u3"),
    id("tau A2 delta", 3, "(C1 T1)^3 . u2 = C1 T1 . u3 = u2"),
    id("tau B2 gamma", 4, "(C1 T1)^3 . u3 = (C1 T1)^2 . u3 = u3"),
    id("tau B2 epsilon", 4, "(C1 T1)^3 . u4 = (C1 T1)^2 . u2 = C1 T1 . u2 u3 u4 = u4"),
    id("tau B2 delta", 4, "(C1 T1)^3 . u2 = C1 T1 . u4 = u2"),
    id("tau G2 s=1 u4", 6, "(C1 T1)^3 . u4 = (C1 T1)^2 . u4 = u4"),
    id(
        "tau G2 s=1 u6",
        6,
        "(C1 T1)^3 . u6 = (C1 T1)^2 . u2 = C1 T1 . [u1,u6] u6 = C1 T1 . u2 u3 u4 u5 u6 \
         = [u1,u6] u6 [u1,u5] u5 [u1,u4] u4 [u1,u3] u3 [u1,u2] u2 \
         = u2 u3 u4 u5 u6 u2 u4 u5 u4 u2 u3 u2 = u2 u3 u4 u6 u3 u2 = u6",
    ),
    id("tau G2 s=1 u2", 6, "(C1 T1)^3 . u2 = C1 T1 . u6 = u2"),
    id(
        "tau G2 s=1 u5",
        6,
        "(C1 T1)^3 . u5 = (C1 T1)^2 . [u1,u3] u3 = (C1 T1)^2 . u2 u3 \
         = C1 T1 . [u1,u6] u6 [u1,u5] u5 = C1 T1 . u2 u3 u4 u5 u6 u2 u4 u5 = C1 T1 . u3 u4 u6 \
         = [u1,u5] u5 [u1,u4] u4 [u1,u2] u2 = u2 u4 u5 u4 u2 = u5",
    ),
    id(
        "tau G2 s=1 u3",
        6,
        "(C1 T1)^3 . u3 = (C1 T1)^2 . [u1,u5] u5 = (C1 T1)^2 . u2 u4 u5 = u6 u4 u3 u4 u6 = u3",
    ),
    id("tau G2 s=6 u3", 6, "(C6 T6)^3 . u3 = (C6 T6)^2 . u3 = u3"),
    id(
        "tau G2 s=6 u1",
        6,
        "(C6 T6)^3 . u1 = (C6 T6)^2 . u5 = C6 T6 . u1 [u1,u6] = C6 T6 . u1 u2 u3 u4 u5 \
         = u5 [u5,u6] u4 [u4,u6] u3 [u3,u6] u2 [u2,u6] u1 [u1,u6] \
         = u5 u4 u3 u2 u4 u1 u2 u3 u4 u5 = u5 u4 u1 u2 u5 = u4 u1 [u1,u5] u2 = u1",
    ),
    id("tau G2 s=6 u5", 6, "(C6 T6)^3 . u5 = C6 T6 . u1 = u5"),
    id(
        "tau G2 s=6 u2",
        6,
        "(C6 T6)^3 . u2 = (C6 T6)^2 . u4 [u4,u6] = (C6 T6)^2 . u4 = C6 T6 . u2 [u2,u6] \
         = C6 T6 . u2 u4 = u4 [u4,u6] u2 [u2,u6] = u4 u2 u4 = u2",
    ),
    id("tau G2 s=6 u4", 6, "(C6 T6)^3 . u4 = C6 T6 . u2 = u4 [u4,u6] = u4"),
    // m = 2
    id("m2 commuting", 2, "u2 u1 = u1 u2"),
    id("m2 tau conj", 2, "C1 T1 . u2 = T1 C1 . u2 = u2"),
    // m = 3
    id("m3 u=utusts", 3, "u3 u2 u1 = u1 u3"),
    id("m3 u=ust", 3, "T3 . u2 = u1"),
    id("m3 u=utus", 3, "T3 . u1 = u2"),
    id("m3 u=utus step", 3, "u3 u2 = u2 u3"),
    id("m3 u=ustus (a)", 3, "T1 . u2 = u3"),
    id("m3 u=ustus (a) step", 3, "u1 u3 = u3 u2 u1"),
    id("m3 u=ustus (b)", 3, "T3 . u1 u2 = u2 u1"),
    // m = 4
    id("m4 tau pair", 4, "T4 T1 . u4 u3 = T4 . u2 u3 = u2 u1"),
    id("m4 u=ututsustus", 4, "u4 u3 u2 u1 = u1 u4"),
    id("m4 u=ustus (a)", 4, "T1 . u2 = u4"),
    id("m4 u=ustus (a) step", 4, "u1 u4 = u4 u3 u2 u1"),
    id("m4 u=ustus (b) tau", 4, "T4 . u3 = u1"),
    id("m4 u=ustus (b) step", 4, "u4 u1 = u1 u2 u3 u4 = u2 u1 u3 u4"),
    id("m4 u=utsus", 4, "T1 . u3 = u3"),
    id("m4 u=utsus step", 4, "u1 u3 = u3 u1"),
    id("m4 u=utus", 4, "T4 . u1 = u3"),
    id("m4 u=utus step", 4, "u4 u3 = u3 u4"),
    id("m4 u=utustus", 4, "T4 . u2 u1 = u2 u3"),
    id("m4 u=utustus step", 4, "u4 u2 u3 = u2 u3 u4"),
    id("m4 u=ututsus", 4, "T4 . u3 u1 = u1 u3"),
    id("m4 u=ututsus step", 4, "u4 u1 u3 = u2 u1 u4"),
    id("m4 u=utsustus", 4, "T1 . u3 u2 = u3 u4"),
    id("m4 u=utsustus step", 4, "u1 u3 u4 = u4 u2 u1"),
    id("m4 u=usut", 4, "T1 . u4 = u2"),
    id("m4 u=usut step", 4, "u1 u2 = u2 u1"),
    // m = 6, edge directed so that β_1 = α_s
    id("m6 (1)", 6, "u1 u5 u6 = u1 u6 [u6,u1] u2 u3 u4 = u6 u1 [u1,u3] u3 u4 = u6 u4 u3 u1"),
    id("m6 (2)", 6, "u1 u3 u5 = u3 u2 u1 u5 = u3 u2 u5 u4 u2 u1 = u5 u3 u1"),
    id("m6 u=u2u1 (a) tau", 6, "T1 . u2 = u6"),
    id("m6 u=u2u1 (a)", 6, "u1 u6 = u6 u5 u4 u3 u2 u1"),
    id("m6 u=u2u1 (b) tau", 6, "T6 . u5 = u1"),
    id("m6 u=u2u1 (b)", 6, "u6 u1 = u1 u2 u3 u4 u5 u6"),
    id("m6 u=u2u1 (d) tau", 6, "T1 . u2 u3 = u6 u5"),
    id("m6 u=u2u1 (d)", 6, "u1 u6 u5 = u6 u4 u3 u1"),
    id("m6 u=u2u1 (d) braid", 6, "T6 T1 T6 . u2 u3 = u2 u1"),
    id("m6 u in {u3u2,..,u6u5}", 6, "(T1 T6)^2 . u2 u1 = T1 T6 T1 . u4 u5 = T1 T6 . u4 u3 = T1 . u2 u3 = u6 u5"),
    id("m6 u=u6u4 (a) tau", 6, "T6 . u4 = u2"),
    id("m6 u=u6u4 (a)", 6, "u6 u2 = u2 [u2,u6] u6 = u2 u4 u6"),
    id("m6 u=u6u4 (b)", 6, "T1 T6 T1 . u4 u6 = u6 u4"),
    id("m6 u=u4u2", 6, "T1 . u4 u2 = u4 u6 = u6 u4"),
    id("m6 u=u6u2", 6, "T6 . u2 = u4"),
    id("m6 u=u6u2 step", 6, "u6 u4 = u4 u6"),
    id("m6 u=u6u4u2", 6, "T1 . u6 u4 u2 = u2 u4 u6 = u6 u2"),
    id("m6 u=u3u1", 6, "u3 u1 = u1 u3 u2"),
    id("m6 u=u3u1 (a) tau", 6, "T1 . u3 u2 = u5 u6"),
    id("m6 u=u3u1 (b) tau", 6, "T1 . u3 = u5"),
    id("m6 u=u3u1 (b)", 6, "u1 u5 = u5 u4 u2 u1"),
    id("m6 u=u3u1 (b) braid", 6, "T6 T1 T6 . u1 u3 = u3 u1"),
    id("m6 u=u3u2u1", 6, "T6 T1 T6 . u3 u2 u1 = T6 T1 . u3 u4 u5 = T6 . u5 u4 u3 = u1 u2 u3"),
    id("m6 u=u3u2u1 steps", 6, "u3 u4 u5 = u5 u3"),
    id("m6 u=u3u2u1 steps'", 6, "u1 u2 u3 = u3 u1"),
    id("m6 u=u4u1", 6, "T1 . u4 = u4"),
    id("m6 u=u4u1 step", 6, "u1 u4 = u4 u1"),
    id("m6 u=u6u3", 6, "T6 T1 . u6 u3 = T6 . u2 u5 = u4 u1"),
    id("m6 u=u1u5", 6, "u5 u4 u2 u1 = u1 u5"),
    id("m6 u=u1u5 tau", 6, "T1 . u5 = u3"),
    id("m6 u=u1u5 step", 6, "u1 u3 = u3 u2 u1"),
    id("m6 u=u5u1", 6, "T6 . u5 u1 = u1 u5 = u5 u4 u2 u1"),
    id("m6 u=u6u1", 6, "T6 . u1 = u5"),
    id("m6 u=u6u1 step", 6, "u6 u5 = u5 u6"),
    id("m6 u=u5u3u1", 6, "u5 u3 u1 = u1 u3 u5 = u1 u5 u4 u3"),
    id("m6 u=u5u3u1 tau", 6, "T1 . u5 u4 u3 = u3 u4 u5"),
    id("m6 u=u5u3u1 steps", 6, "u1 u3 u4 u5 = u2 u1 [u1,u6] = u2 [u6,u1] u1 = u5 u4 u3 u1"),
    id("m6 u=u6u5u4 tau", 6, "T6 . u5 u4 = u1 u2"),
    id("m6 u=u6u5u4 steps", 6, "u6 u1 u2 = u2 [u2,u6] u6 u1 = u2 u4 [u6,u1] u1 u6 = u5 u3 u1 u6"),
    id("m6 u=u4u3u2", 6, "T1 . u4 u3 u2 = u4 u5 u6 = u6 u5 u4"),
    id("m6 u=u4u3u1", 6, "u4 u3 u1 = u1 u4 u3 u2"),
    id("m6 u=u4u3u1 steps", 6, "u1 u4 u5 u6 = u4 u1 u5 u6 = u4 u6 u4 u3 u1 = u6 u3 u1"),
    id("m6 u=u6u5u3", 6, "T6 T1 . u6 u5 u3 = T6 . u2 u3 u5 = u4 u3 u1"),
    id("m6 u=u6u5u3 step", 6, "u2 u3 u5 = u5 u4 u3 u2"),
    id("m6 u=u6u4u3 tau", 6, "T6 . u4 u3 = u2 u3"),
    id("m6 u=u6u4u3 steps", 6, "u6 u2 u3 = u2 [u2,u6] u6 u3 = u4 u3 u2 u6"),
    id("m6 u=u4u2u1", 6, "T1 T6 . u4 u2 u1 = T1 . u2 u4 u5 = u6 u4 u3"),
    id("m6 u=u4u2u1 step", 6, "u2 u4 u5 = u5 u4 u2"),
    id("m6 u=u5u2u1", 6, "u5 u2 u1 = u1 u5 u4"),
    id("m6 u=u5u2u1 tau", 6, "T1 . u5 u4 = u3 u4"),
    id("m6 u=u5u2u1 step", 6, "u1 u3 u4 = u4 u3 u2 u1"),
    id("m6 u=u6u2u1 tau", 6, "T6 . u2 u1 = u4 u5"),
    id("m6 u=u6u2u1 step", 6, "u6 u4 u5 = u5 u4 u6"),
    id("m6 u=u6u3u1 tau", 6, "T6 . u3 u1 = u3 u5"),
    id("m6 u=u6u3u1 step", 6, "u6 u3 u5 = u5 u4 u3 u6"),
    id("m6 u=u5u4u1", 6, "u5 u4 u1 = u1 u5 u2"),
    id("m6 u=u5u4u1 tau", 6, "T1 . u5 u2 = u3 u6"),
    id("m6 u=u5u4u1 steps", 6, "u1 u3 u6 = u3 [u3,u1] [u1,u6] u6 u1 = u4 u5 u6 u1 = u6 u5 u4 u1"),
    id("m6 u=u6u4u1 tau", 6, "T6 . u4 u1 = u2 u5"),
    id("m6 u=u6u4u1 steps", 6, "u6 u2 u5 = u2 [u2,u6] u6 u5 = u5 u4 u2 u6"),
    id("m6 u=u6u5u1", 6, "u6 u5 u1 = u6 u5 u4 u3 [u3,u1] u1 u3 u4 = u6 [u6,u1] u1 u3 u4 = u1 u6 u4 u3"),
    id("m6 u=u6u5u1 tau", 6, "T1 . u6 u4 u3 = u2 u4 u5"),
    id("m6 u=u6u5u1 steps", 6, "u1 u2 u4 u5 = u1 [u1,u5] u5 = u5 u1"),
    id("m6 u=u6u3u2 tau", 6, "T6 . u3 u2 = u3 u4"),
    id("m6 u=u6u3u2 step", 6, "u6 u3 u4 = u4 u3 u6"),
    id("m6 u=u6u5u4u2", 6, "u6 u5 u4 u2 = u2 u5 u6"),
    id("m6 u=u6u5u4u2 tau", 6, "T1 . u2 u5 u6 = u6 u3 u2"),
    id("m6 u=u5u4u3u1", 6, "u5 u4 u3 u1 = u1 u3 u5 u4 = u1 u5 u3"),
    id("m6 u=u5u4u3u1 tau", 6, "T1 . u5 u3 = u3 u5"),
    id("m6 u=u5u4u3u1 steps", 6, "u1 u3 u5 = u3 [u3,u1] [u1,u5] u5 u1 = u3 u2 u2 u4 u5 u1 = u5 u3 u1"),
    id("m6 u=u5u3u2u1", 6, "T6 . u5 u3 u2 u1 = u1 u3 u4 u5 = u5 u4 u3 u1"),
    id("m6 u=u4u3u2u1", 6, "u4 u3 u2 u1 = u1 u4 u3"),
    id("m6 u=u4u3u2u1 tau", 6, "T1 . u4 u3 = u4 u5"),
    id("m6 u=u4u3u2u1 steps", 6, "u1 u4 u5 = u4 u5 [u5,u1] u1 = u5 u2 u1"),
    id("m6 u=u6u5u4u3", 6, "T6 T1 . u6 u5 u4 u3 = T6 . u2 u3 u4 u5 = u4 u3 u2 u1"),
    id("m6 u=u6u5u4u3 step", 6, "u2 u3 u4 u5 = u5 u3 u2"),
    id("m6 u=u6u5u2 tau", 6, "T6 . u5 u2 = u1 u4"),
    id("m6 u=u6u5u2 steps", 6, "u6 u1 u4 = u4 [u6,u1] u1 u6 = u5 u3 u2 u1 u6"),
    id("m6 u=u6u4u3u2", 6, "T1 . u6 u4 u3 u2 = u2 u4 u5 u6 = u6 [u6,u2] u2 u4 u5 = u6 u5 u2"),
    id("m6 u=u6u3u2u1 tau", 6, "T6 . u3 u2 u1 = u3 u4 u5"),
    id("m6 u=u6u3u2u1 step", 6, "u6 u3 u4 u5 = u5 u3 u6"),
    id("m6 u=u6u4u2u1 tau", 6, "T6 . u4 u2 u1 = u2 u4 u5"),
    id("m6 u=u6u4u2u1 steps", 6, "u6 u2 u4 u5 = u6 u2 [u2,u6] u5 = u5 u2 u6"),
    id("m6 u=u6u5u2u1 tau", 6, "T6 . u5 u2 u1 = u1 u4 u5"),
    id("m6 u=u6u5u2u1 steps", 6, "u6 u1 u4 u5 = u1 [u1,u6] u6 u4 u5 = u1 u2 u3 u6 = u3 u1 u6"),
    id("m6 u=u6u4u3u1", 6, "u6 u4 u3 u1 = u5 u6 [u6,u1] u1 u2 = u5 u1 u6 u2 = u1 u6 u5"),
    id("m6 u=u6u4u3u1 tau", 6, "T1 . u6 u5 = u2 u3"),
    id("m6 u=u6u4u3u1 steps", 6, "u1 u2 u3 = u1 [u1,u3] u3 = u3 u1"),
    id("m6 u=u6u5u3u1", 6, "u6 u5 u3 u1 = u6 [u6,u1] u1 u4 u2 = u1 u6 u4 u2"),
    id("m6 u=u6u5u3u1 tau", 6, "T1 . u6 u4 u2 = u2 u4 u6"),
    id("m6 u=u6u5u3u1 steps", 6, "u1 u2 u4 u6 = u6 [u6,u1] u1 u2 = u6 u5 u4 u3 u1"),
    id("m6 u=u6u5u4u1", 6, "u6 u5 u4 u1 = u6 [u6,u1] u1 u3 = u1 u6 u3"),
    id("m6 u=u6u5u4u1 tau", 6, "T1 . u6 u3 = u2 u5"),
    id("m6 u=u6u5u4u1 steps", 6, "u1 u2 u5 = u5 [u5,u1] u1 u2 = u5 u4 u1"),
    id("m6 u=u6u5u3u2 tau", 6, "T6 . u5 u3 u2 = u1 u3 u4"),
    id("m6 u=u6u5u3u2 steps", 6, "u6 u1 u3 u4 = u5 u6 u5 u4 u3 u2 u1 = u5 u6 [u6,u1] u1 = u5 u1 u6"),
    id("m6 u=u5..u1", 6, "u5 u4 u3 u2 u1 = [u6,u1] u1 = u1 [u1,u6] = u1 u2 u3 u4 u5 = u1 u5 u3 u2"),
    id("m6 u=u5..u1 step", 6, "u5 u3 u2 = u2 u3 u4 u5"),
    id("m6 u=u5..u1 tau", 6, "T1 . u2 u3 u4 u5 = u6 u5 u4 u3"),
    id("m6 u=u5..u1 steps", 6, "u1 u6 u5 u4 u3 = u1 u6 [u6,u1] u2 = u6 u2 u1"),
    id("m6 u=u6u4u3u2u1 tau", 6, "T6 . u4 u3 u2 u1 = u2 u3 u4 u5"),
    id("m6 u=u6u4u3u2u1 steps", 6, "u6 u2 u3 u4 u5 = u6 [u1,u6] = [u6,u1] u6 = u5 u4 u3 u2 u6"),
    id("m6 u=u6u5u3u2u1", 6, "u6 u5 u3 u2 u1 = u6 [u6,u1] u1 u4 = u1 u6 u4"),
    id("m6 u=u6u5u3u2u1 tau", 6, "T1 . u6 u4 = u2 u4"),
    id("m6 u=u6u5u3u2u1 step", 6, "u1 u2 u4 = u4 u2 u1"),
    id("m6 u=u6u5u4u2u1", 6, "u6 u5 u4 u2 u1 = u6 [u6,u1] u1 u3 u2 = u1 u6 u3 u2"),
    id("m6 u=u6u5u4u2u1 tau", 6, "T1 . u6 u3 u2 = u2 u5 u6"),
    id(
        "m6 u=u6u5u4u2u1 steps",
        6,
        "u1 u2 u5 u6 = u2 u5 [u5,u1] u1 u6 = u4 u5 u6 [u6,u1] u1 = u6 u3 u2 u1",
    ),
    id("m6 u=u6u5u4u3u1", 6, "u6 u5 u4 u3 u1 = u6 [u6,u1] u1 u2 = u1 u6 u2"),
    id("m6 u=u6u5u4u3u1 tau", 6, "T1 . u6 u2 = u2 u6"),
    id("m6 u=u6u5u4u3u1 steps", 6, "u1 u2 u6 = u1 u6 u4 u2 = u6 [u6,u1] u4 u2 u1 = u6 u5 u3 u1"),
    id("m6 u=u6u5u4u3u2 tau", 6, "T6 . u5 u4 u3 u2 = u1 u2 u3 u4"),
    id("m6 u=u6u5u4u3u2 steps", 6, "u6 u1 u2 u3 u4 = u6 u1 [u1,u6] u5 = u1 u6 u5 = u5 u4 u2 u1 u6"),
    id("m6 u=u6..u1", 6, "u6 u5 u4 u3 u2 u1 = u6 [u6,u1] u1 = u1 u6"),
    id("m6 u=u6..u1 tau", 6, "T1 . u6 = u2"),
    id("m6 u=u6..u1 step", 6, "u1 u2 = u2 u1"),
];

/// Outcome of one catalog entry.
#[derive(Clone, Debug)]
pub struct IdentityOutcome {
    pub identity: Identity,
    pub values: Vec<GroupElem>,
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        self.values.windows(2).all(|p| p[0] == p[1])
    }

    /// 0-based index of the first term that differs from its predecessor.
    pub fn first_break(&self) -> Option<usize> {
        self.values.windows(2).position(|p| p[0] != p[1]).map(|i| i + 1)
    }
}

pub fn verify(ctx: &Rank2Context, identity: &Identity) -> Result<IdentityOutcome, IdentityError> {
    Ok(IdentityOutcome { identity: *identity, values: ctx.evaluate(identity.chain)? })
}

/// Run every catalog entry whose `m` matches the pair `(s, t)`.
pub fn verify_catalog(bp: &Blueprint, s: Gen, t: Gen) -> Result<(Report, Vec<IdentityOutcome>), IdentityError> {
    let ctx = Rank2Context::new(bp, s, t)?;
    let m = ctx.m() as u32;
    let mut rep = Report::new(format!("identities {} s={} t={} m={m}", bp.name(), s + 1, t + 1));
    let mut outcomes = Vec::new();
    for identity in CATALOG.iter().filter(|i| i.m == m) {
        let out = match verify(&ctx, identity) {
            Ok(out) => out,
            Err(e) => {
                rep.push(Violation::new("identity").expected(identity.name).found(e.to_string()));
                continue;
            }
        };
        rep.check(out.holds(), || {
            let k = out.first_break().unwrap_or(1);
            Violation::new("identity")
                .expected(format!("{}: term {} = {}", identity.name, k, out.values[k - 1]))
                .found(format!("term {} = {}", k + 1, out.values[k]))
        });
        outcomes.push(out);
    }
    Ok((rep.finish(), outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(name: &str) -> Rank2Context {
        Rank2Context::new(&Blueprint::builtin(name).unwrap(), 0, 1).unwrap()
    }

    #[test]
    fn parsing() {
        let c = ctx("rank2:m3");
        let v = c.evaluate("u1 u3 = u3 u1 [u1,u3] = u3 u1 u2").unwrap();
        assert_eq!(v.len(), 3);
        assert!(c.evaluate("u1 u4").is_err());
        assert!(c.evaluate("T2 . u1").is_err());
        assert!(c.evaluate("T1 . u1").is_err());
        assert!(c.evaluate("u1 =").unwrap().len() == 2);
        assert!(c.evaluate("(T1 . u2").is_err());
        assert_eq!(c.evaluate("1").unwrap(), vec![GroupElem::IDENTITY]);
    }

    #[test]
    fn tau_maps_of_a2() {
        let c = ctx("rank2:m3");
        let v = c.evaluate("T1 . u2 = u3").unwrap();
        assert_eq!(v[0], v[1]);
        let v = c.evaluate("C1 T1 . u3 = u1 u2 u1").unwrap();
        assert_eq!(v[0], v[1]);
    }

    #[test]
    fn g2_sizes() {
        assert!(CATALOG.iter().filter(|i| i.m == 6).count() >= 40);
        for i in CATALOG {
            assert!(Parser::new(i.chain).chain().is_ok(), "{i}");
        }
    }
}

//! Coset enumeration and permutation-group computations.

use std::collections::{BTreeSet, HashSet, VecDeque};

use cbforge::groupforge::PcPresentation;

const NONE: usize = usize::MAX;

/// Relators of the group on involutions `x_0, …, x_{k-1}` in which
/// `x_h x_g = x_g x_h ∏ rev(rel[g][h])` for `g < h`.
pub fn relators(p: &PcPresentation) -> Vec<Vec<usize>> {
    let k = p.generators();
    let mut out: Vec<Vec<usize>> = (0..k).map(|i| vec![i, i]).collect();
    for g in 0..k {
        for h in g + 1..k {
            let mut r = vec![h, g];
            r.extend_from_slice(p.relation(g, h));
            r.extend([h, g]);
            out.push(r);
        }
    }
    out
}

/// Todd–Coxeter enumeration of the cosets of the trivial subgroup in a group
/// generated by involutions. Returns the regular permutation action.
pub struct CosetTable {
    gens: usize,
    table: Vec<Vec<usize>>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    cap: usize,
}

impl CosetTable {
    pub fn enumerate(gens: usize, rels: &[Vec<usize>], cap: usize) -> Vec<Vec<usize>> {
        let mut t = CosetTable { gens, table: vec![vec![NONE; gens]], parent: vec![0], queue: Vec::new(), cap };
        let mut c = 0;
        while c < t.table.len() {
            for r in rels {
                if t.parent[c] != c {
                    break;
                }
                t.scan_and_fill(c, r);
            }
            if t.parent[c] == c {
                for x in 0..gens {
                    if t.table[c][x] == NONE {
                        t.define(c, x);
                    }
                }
            }
            c += 1;
        }
        t.compact()
    }

    fn define(&mut self, c: usize, x: usize) {
        assert!(self.table.len() < self.cap, "coset cap {} reached", self.cap);
        let n = self.table.len();
        self.table.push(vec![NONE; self.gens]);
        self.parent.push(n);
        self.table[c][x] = n;
        self.table[n][x] = c;
    }

    fn scan_and_fill(&mut self, c: usize, r: &[usize]) {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, r.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][r[i]] != NONE {
                f = self.table[f][r[i]];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize && self.table[b][r[j as usize]] != NONE {
                b = self.table[b][r[j as usize]];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                self.table[f][r[i]] = b;
                self.table[b][r[i]] = f;
                return;
            }
            self.define(f, r[i]);
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = c;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.gens {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                self.table[d][x] = NONE;
                let (mu, nu) = (self.rep(g), self.rep(d));
                if self.table[mu][x] != NONE {
                    let e = self.table[mu][x];
                    self.merge(nu, e);
                } else if self.table[nu][x] != NONE {
                    let e = self.table[nu][x];
                    self.merge(mu, e);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][x] = mu;
                }
            }
        }
    }

    fn compact(mut self) -> Vec<Vec<usize>> {
        let live: Vec<usize> = (0..self.table.len()).filter(|&c| self.parent[c] == c).collect();
        let mut renum = vec![NONE; self.table.len()];
        for (n, &c) in live.iter().enumerate() {
            renum[c] = n;
        }
        let mut perms = vec![vec![0; live.len()]; self.gens];
        for (n, &c) in live.iter().enumerate() {
            for (x, perm) in perms.iter_mut().enumerate() {
                let d = self.rep(self.table[c][x]);
                perm[n] = renum[d];
            }
        }
        perms
    }
}

/// Order of the group presented by `p`, by coset enumeration.
pub fn presented_order(p: &PcPresentation) -> usize {
    let perms = CosetTable::enumerate(p.generators(), &relators(p), 1 << 16);
    perms.first().map_or(1, |g| g.len())
}

pub type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply a, then b
    a.iter().map(|&x| b[x]).collect()
}

fn invert(a: &Perm) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

pub fn closure(gens: &[Perm], degree: usize) -> BTreeSet<Perm> {
    let id: Perm = (0..degree).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Orders of `γ_1 ⊇ γ_2 ⊇ ⋯ ⊇ 1` for the permutation group on `gens`.
pub fn lcs_orders(gens: &[Perm]) -> Vec<usize> {
    let degree = gens.first().map_or(1, |g| g.len());
    let group: Vec<Perm> = closure(gens, degree).into_iter().collect();
    let mut current = group.clone();
    let mut out = vec![current.len()];
    while current.len() > 1 {
        let mut comms: BTreeSet<Perm> = BTreeSet::new();
        for x in &current {
            for g in &group {
                let c = compose(&compose(&compose(&invert(x), &invert(g)), x), g);
                comms.insert(c);
            }
        }
        let comms: Vec<Perm> = comms.into_iter().collect();
        let next: Vec<Perm> = closure(&comms, degree).into_iter().collect();
        assert!(next.len() < current.len(), "not nilpotent");
        current = next;
        out.push(current.len());
    }
    out
}

/// Every table `rel[i][j] ⊆ {i+1, …, j-1}` on `k` generators.
pub fn all_tables(k: usize) -> Vec<PcPresentation> {
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 2..k).map(move |j| (i, j))).collect();
    let mut tables = vec![vec![vec![Vec::new(); k]; k]];
    for &(i, j) in &slots {
        let width = j - i - 1;
        let mut next = Vec::new();
        for t in &tables {
            for mask in 0..1usize << width {
                let mut t = t.clone();
                t[i][j] = (0..width).filter(|b| mask >> b & 1 == 1).map(|b| i + 1 + b).collect();
                next.push(t);
            }
        }
        tables = next;
    }
    tables.into_iter().map(|t| PcPresentation::new(k, t).unwrap()).collect()
}

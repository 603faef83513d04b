//! Torsion-free nilpotent groups given by Mal'cev bases (class at most three),
//! collection to normal form, involutions, and free-group words.
//!
//! Convention: `[g, h] = g⁻¹h⁻¹gh`, so with `z = [y, x]` one has `yx = xyz`.

mod eigen;
mod extract;
mod freeword;
mod involution;

pub use eigen::{pm_eigenbasis, EigenVector};
pub use extract::{check as check_postconditions, star_invariant_heisenberg, Extraction, Postconditions};
pub use freeword::FreeWord;
pub use involution::{center_quotient, involution_matrix, GroupInvolution};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("presentation is inconsistent: {0}")]
    Inconsistent(String),
    #[error("nilpotency class {0} exceeds the supported bound 3")]
    ClassTooLarge(usize),
    #[error("upper central series markers are inconsistent: {0}")]
    BadMarkers(String),
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("group is abelian")]
    Abelian,
    #[error("no noncommuting pair among eigenvector lifts")]
    NoPair,
    #[error("class {0} is out of scope for this operation")]
    ClassOutOfScope(usize),
    #[error("element length does not match the group rank")]
    RankMismatch,
}

pub const MAX_CLASS: usize = 3;

/// Normal form `g_1^{e_1} ⋯ g_r^{e_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElem {
    pub exps: Vec<i64>,
}

impl GroupElem {
    pub fn identity(rank: usize) -> Self {
        GroupElem { exps: vec![0; rank] }
    }

    pub fn generator(rank: usize, k: usize) -> Self {
        let mut e = Self::identity(rank);
        e.exps[k] = 1;
        e
    }

    pub fn from_exps(exps: Vec<i64>) -> Self {
        GroupElem { exps }
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn rank(&self) -> usize {
        self.exps.len()
    }
}

/// A consistent polycyclic presentation with infinite relative orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcGroup {
    names: Vec<String>,
    /// `comm[s][t]` for `s > t` is `[g_s, g_t]`, supported on indices `> s`.
    comm: Vec<Vec<GroupElem>>,
    /// Start indices of `Z_1 ⊂ Z_2 ⊂ …`, strictly decreasing, ending at 0.
    markers: Vec<usize>,
    /// `conj_pos[k][l] = g_k⁻¹ g_l g_k`, `conj_neg[k][l] = g_k g_l g_k⁻¹` for `l > k`.
    conj_pos: Vec<Vec<GroupElem>>,
    conj_neg: Vec<Vec<GroupElem>>,
}

impl PcGroup {
    /// Builds and validates a presentation. `comms` lists `(s, t, [g_s, g_t])`
    /// for `s > t`; omitted pairs commute.
    pub fn new(
        names: Vec<String>,
        comms: &[(usize, usize, GroupElem)],
        markers: Vec<usize>,
    ) -> Result<Self, NilError> {
        let r = names.len();
        let mut comm = vec![vec![GroupElem::identity(r); r]; r];
        for (s, t, w) in comms {
            if *s >= r || *t >= *s {
                return Err(NilError::Inconsistent(format!("commutator index ({}, {}) out of order", s, t)));
            }
            if w.rank() != r {
                return Err(NilError::RankMismatch);
            }
            if w.exps[..=*s].iter().any(|&e| e != 0) {
                return Err(NilError::Inconsistent(format!(
                    "[{}, {}] must lie in the span of later generators",
                    names[*s], names[*t]
                )));
            }
            comm[*s][*t] = w.clone();
        }
        if markers.is_empty() || *markers.last().unwrap() != 0 {
            return Err(NilError::BadMarkers("last marker must be 0".into()));
        }
        if markers.windows(2).any(|w| w[0] <= w[1]) || markers[0] > r || (r > 0 && markers[0] == r) {
            return Err(NilError::BadMarkers("markers must strictly decrease within the rank".into()));
        }
        if markers.len() > MAX_CLASS {
            return Err(NilError::ClassTooLarge(markers.len()));
        }
        let mut g = PcGroup {
            names,
            comm,
            markers,
            conj_pos: vec![vec![]; r],
            conj_neg: vec![vec![]; r],
        };
        g.build_tables();
        g.check_consistency()?;
        g.check_markers()?;
        Ok(g)
    }

    fn build_tables(&mut self) {
        let r = self.rank();
        for k in (0..r).rev() {
            let mut pos = vec![GroupElem::identity(r); r];
            let mut neg = vec![GroupElem::identity(r); r];
            for l in (k + 1..r).rev() {
                // g_k⁻¹ g_l g_k = g_l [g_l, g_k]
                let w = self.comm[l][k].clone();
                let mut e = GroupElem::generator(r, l);
                self.mul_into(&mut e, &w);
                pos[l] = e;
                // g_k g_l g_k⁻¹ = g_l · (g_k w g_k⁻¹)⁻¹
                let mut psi = GroupElem::identity(r);
                for (m, &c) in w.exps.iter().enumerate() {
                    if c != 0 {
                        let p = self.pow(&neg[m], c);
                        self.mul_into(&mut psi, &p);
                    }
                }
                let mut e = GroupElem::generator(r, l);
                let pinv = self.inverse(&psi);
                self.mul_into(&mut e, &pinv);
                neg[l] = e;
            }
            self.conj_pos[k] = pos;
            self.conj_neg[k] = neg;
        }
    }

    /// `e ← e · g_k^{±1}`.
    fn mul_gen(&self, e: &mut GroupElem, k: usize, positive: bool) {
        let r = self.rank();
        let tail: Vec<i64> = e.exps[k + 1..].to_vec();
        for x in e.exps[k + 1..].iter_mut() {
            *x = 0;
        }
        e.exps[k] += if positive { 1 } else { -1 };
        if tail.iter().all(|&x| x == 0) {
            return;
        }
        let table = if positive { &self.conj_pos[k] } else { &self.conj_neg[k] };
        for (off, &n) in tail.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let l = k + 1 + off;
            let c = &table[l];
            if c.exps.iter().enumerate().all(|(m, &x)| if m == l { x == 1 } else { x == 0 }) {
                // plain generator: append directly when nothing follows
                if e.exps[l + 1..r].iter().all(|&x| x == 0) {
                    e.exps[l] += n;
                    continue;
                }
            }
            let p = self.pow(c, n);
            self.mul_into(e, &p);
        }
    }

    fn mul_into(&self, e: &mut GroupElem, v: &GroupElem) {
        for (k, &n) in v.exps.iter().enumerate() {
            if n == 0 {
                continue;
            }
            // appending g_k^n when e has no later coordinates is a plain addition
            if e.exps[k + 1..].iter().all(|&x| x == 0) {
                e.exps[k] += n;
                continue;
            }
            for _ in 0..n.unsigned_abs() {
                self.mul_gen(e, k, n > 0);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn markers(&self) -> &[usize] {
        &self.markers
    }

    pub fn class(&self) -> usize {
        self.markers.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Stored commutator `[g_s, g_t]` for `s > t`.
    pub fn comm_entry(&self, s: usize, t: usize) -> &GroupElem {
        &self.comm[s][t]
    }

    pub fn identity(&self) -> GroupElem {
        GroupElem::identity(self.rank())
    }

    pub fn generator(&self, k: usize) -> GroupElem {
        GroupElem::generator(self.rank(), k)
    }

    pub fn mul(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        let mut e = a.clone();
        self.mul_into(&mut e, b);
        e
    }

    pub fn inverse(&self, u: &GroupElem) -> GroupElem {
        let mut e = self.identity();
        for k in (0..self.rank()).rev() {
            let n = u.exps[k];
            if n != 0 {
                let mut g = self.identity();
                g.exps[k] = -n;
                self.mul_into(&mut e, &g);
            }
        }
        e
    }

    pub fn pow(&self, u: &GroupElem, n: i64) -> GroupElem {
        let base = if n < 0 { self.inverse(u) } else { u.clone() };
        let mut acc = self.identity();
        let mut b = base;
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// `[g, h] = g⁻¹h⁻¹gh`.
    pub fn commutator(&self, g: &GroupElem, h: &GroupElem) -> GroupElem {
        let gi = self.inverse(g);
        let hi = self.inverse(h);
        self.mul(&self.mul(&gi, &hi), &self.mul(g, h))
    }

    /// `h⁻¹ g h`.
    pub fn conjugate(&self, g: &GroupElem, h: &GroupElem) -> GroupElem {
        self.mul(&self.mul(&self.inverse(h), g), h)
    }

    /// Normal form of a word given as `(generator, exponent)` syllables.
    pub fn collect(&self, word: &[(usize, i64)]) -> GroupElem {
        let mut e = self.identity();
        for &(k, n) in word {
            let mut g = self.identity();
            g.exps[k] = n;
            self.mul_into(&mut e, &g);
        }
        e
    }

    pub fn commute(&self, g: &GroupElem, h: &GroupElem) -> bool {
        self.commutator(g, h).is_identity()
    }

    pub fn is_abelian(&self) -> bool {
        self.markers[0] == 0
    }

    fn check_consistency(&self) -> Result<(), NilError> {
        let r = self.rank();
        let gens: Vec<GroupElem> = (0..r)
            .flat_map(|k| {
                let mut p = self.generator(k);
                let mut n = self.generator(k);
                n.exps[k] = -1;
                p.exps[k] = 1;
                [p, n]
            })
            .collect();
        for a in &gens {
            for b in &gens {
                for c in &gens {
                    let l = self.mul(&self.mul(a, b), c);
                    let rr = self.mul(a, &self.mul(b, c));
                    if l != rr {
                        return Err(NilError::Inconsistent(format!(
                            "associativity fails on {:?}·{:?}·{:?}",
                            a.exps, b.exps, c.exps
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_markers(&self) -> Result<(), NilError> {
        let r = self.rank();
        // generators from markers[i] onwards lie in Z_{i+1}
        for (level, &start) in self.markers.iter().enumerate() {
            let below = if level == 0 { r } else { self.markers[level - 1] };
            for l in start..r {
                for k in 0..r {
                    let c = self.commutator(&self.generator(l), &self.generator(k));
                    if c.exps[..below].iter().any(|&x| x != 0) {
                        return Err(NilError::BadMarkers(format!(
                            "[{}, {}] leaves Z_{}",
                            self.names[l], self.names[k], level
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Quotient by the center: drops the trailing central coordinates.
    pub fn central_quotient(&self) -> Result<PcGroup, NilError> {
        let n = self.markers[0];
        let names = self.names[..n].to_vec();
        let mut comms = Vec::new();
        for s in 0..n {
            for t in 0..s {
                let w = GroupElem::from_exps(self.comm[s][t].exps[..n].to_vec());
                if !w.is_identity() {
                    comms.push((s, t, w));
                }
            }
        }
        let markers = if self.markers.len() > 1 { self.markers[1..].to_vec() } else { vec![0] };
        PcGroup::new(names, &comms, markers)
    }

    pub fn render(&self, g: &GroupElem) -> String {
        let parts: Vec<String> = g
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| if e == 1 { self.names[k].clone() } else { format!("{}^{}", self.names[k], e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Parses `x*y^-2*z` style words over the basis names.
    pub fn parse_word(&self, s: &str) -> Option<GroupElem> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Some(self.identity());
        }
        let mut syl = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (name, e) = match part.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().trim_start_matches('(').trim_end_matches(')').parse::<i64>().ok()?),
                None => (part, 1),
            };
            syl.push((self.index_of(name)?, e));
        }
        Some(self.collect(&syl))
    }

    /// The Heisenberg group on `x, y` with `z = [y, x]` central.
    pub fn heisenberg() -> Self {
        let names = vec!["x".into(), "y".into(), "z".into()];
        let z = GroupElem::from_exps(vec![0, 0, 1]);
        PcGroup::new(names, &[(1, 0, z)], vec![2, 0]).expect("valid presentation")
    }

    /// Free nilpotent group of class two on `n` generators `x1, …, xn` with
    /// basic commutators `c{s}{t} = [x_s, x_t]`, `s > t`.
    pub fn free_nilpotent_class2(n: usize) -> Self {
        let mut names: Vec<String> = (1..=n).map(|k| format!("x{}", k)).collect();
        let mut pairs = Vec::new();
        for s in 0..n {
            for t in 0..s {
                pairs.push((s, t));
            }
        }
        for (s, t) in &pairs {
            names.push(format!("c{}{}", s + 1, t + 1));
        }
        let r = names.len();
        let comms: Vec<(usize, usize, GroupElem)> = pairs
            .iter()
            .enumerate()
            .map(|(k, (s, t))| (*s, *t, GroupElem::generator(r, n + k)))
            .collect();
        let markers = if pairs.is_empty() { vec![0] } else { vec![n, 0] };
        PcGroup::new(names, &comms, markers).expect("valid presentation")
    }

    /// Free nilpotent group of class three on `x, y`: `z = [y, x]`,
    /// `u = [z, x]`, `w = [z, y]`.
    pub fn free_nilpotent_rank2_class3() -> Self {
        let names: Vec<String> = ["x", "y", "z", "u", "w"].iter().map(|s| s.to_string()).collect();
        let g = |k| GroupElem::generator(5, k);
        PcGroup::new(names, &[(1, 0, g(2)), (2, 0, g(3)), (2, 1, g(4))], vec![3, 2, 0]).expect("valid presentation")
    }
}

impl fmt::Display for PcGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.names.join(", "))
    }
}

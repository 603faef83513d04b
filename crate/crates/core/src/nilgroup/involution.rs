//! Anti-automorphisms of order two and their action on `G/C`.

use std::collections::BTreeMap;

use super::{GroupElem, NilError, PcGroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvolution {
    images: Vec<GroupElem>,
}

impl GroupInvolution {
    /// Checks order two on generators and `(g_s g_t)* = (g_t g_s [g_s, g_t])*`.
    pub fn new(g: &PcGroup, images: Vec<GroupElem>) -> Result<Self, NilError> {
        if images.len() != g.rank() || images.iter().any(|e| e.rank() != g.rank()) {
            return Err(NilError::RankMismatch);
        }
        let inv = GroupInvolution { images };
        for k in 0..g.rank() {
            let back = inv.apply(g, &inv.images[k]);
            if back != g.generator(k) {
                return Err(NilError::InvalidInvolution(format!("({})** ≠ {}", g.names()[k], g.names()[k])));
            }
        }
        for s in 0..g.rank() {
            for t in 0..s {
                // g_s g_t = g_t g_s w  ⟹  g_t* g_s* = w* g_s* g_t*
                let w = inv.apply(g, g.comm_entry(s, t));
                let lhs = g.mul(&inv.images[t], &inv.images[s]);
                let rhs = g.mul(&w, &g.mul(&inv.images[s], &inv.images[t]));
                if lhs != rhs {
                    return Err(NilError::InvalidInvolution(format!(
                        "relation between {} and {} is not respected",
                        g.names()[s],
                        g.names()[t]
                    )));
                }
            }
        }
        Ok(inv)
    }

    /// Fills in images of generators that are stored commutators of two
    /// others, then validates.
    pub fn from_partial(g: &PcGroup, given: &BTreeMap<usize, GroupElem>) -> Result<Self, NilError> {
        let r = g.rank();
        let mut images: Vec<Option<GroupElem>> = (0..r).map(|k| given.get(&k).cloned()).collect();
        loop {
            let mut progress = false;
            for s in 0..r {
                for t in 0..s {
                    let w = g.comm_entry(s, t);
                    let Some(k) = single_generator(w) else { continue };
                    if images[k].is_some() {
                        continue;
                    }
                    if let (Some(is), Some(it)) = (&images[s], &images[t]) {
                        // [g_s, g_t]* = g_t* g_s* (g_t*)⁻¹ (g_s*)⁻¹
                        let v = g.mul(&g.mul(it, is), &g.mul(&g.inverse(it), &g.inverse(is)));
                        images[k] = Some(v);
                        progress = true;
                    }
                }
            }
            if !progress {
                break;
            }
        }
        let images: Option<Vec<GroupElem>> = images.into_iter().collect();
        let images = images.ok_or_else(|| NilError::InvalidInvolution("some generator images are undetermined".into()))?;
        Self::new(g, images)
    }

    pub fn images(&self) -> &[GroupElem] {
        &self.images
    }

    /// `(g_1^{e_1} ⋯ g_r^{e_r})* = (g_r*)^{e_r} ⋯ (g_1*)^{e_1}`.
    pub fn apply(&self, g: &PcGroup, u: &GroupElem) -> GroupElem {
        let mut out = g.identity();
        for k in (0..g.rank()).rev() {
            let e = u.exps[k];
            if e != 0 {
                out = g.mul(&out, &g.pow(&self.images[k], e));
            }
        }
        out
    }

    /// `g ↦ g⁻¹`.
    pub fn inversion(g: &PcGroup) -> Self {
        let images = (0..g.rank()).map(|k| g.inverse(&g.generator(k))).collect();
        GroupInvolution { images }
    }
}

fn single_generator(w: &GroupElem) -> Option<usize> {
    let nz: Vec<usize> = (0..w.rank()).filter(|&k| w.exps[k] != 0).collect();
    (nz.len() == 1 && w.exps[nz[0]] == 1).then(|| nz[0])
}

/// Rank of `G/C` and the coordinate projection onto it.
pub fn center_quotient(g: &PcGroup) -> (usize, impl Fn(&GroupElem) -> Vec<i64>) {
    let n = g.markers()[0];
    (n, move |e: &GroupElem| e.exps[..n].to_vec())
}

/// Matrix of the induced map on `G/C ≅ Zⁿ`; column `t` is the image of `g_t`.
pub fn involution_matrix(g: &PcGroup, inv: &GroupInvolution) -> Result<Vec<Vec<i64>>, NilError> {
    if g.class() > 2 {
        return Err(NilError::ClassOutOfScope(g.class()));
    }
    let (n, proj) = center_quotient(g);
    for k in n..g.rank() {
        if proj(&inv.images()[k]).iter().any(|&x| x != 0) {
            return Err(NilError::InvalidInvolution("center is not preserved".into()));
        }
    }
    let mut a = vec![vec![0i64; n]; n];
    for t in 0..n {
        let col = proj(&inv.images()[t]);
        for s in 0..n {
            a[s][t] = col[s];
        }
    }
    let sq = mat_mul(&a, &a);
    if (0..n).any(|s| (0..n).any(|t| sq[s][t] != i64::from(s == t))) {
        return Err(NilError::InvalidInvolution("induced matrix does not square to I".into()));
    }
    Ok(a)
}

pub(crate) fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heis_inv(h: &PcGroup, x: &str, y: &str) -> GroupInvolution {
        let mut m = BTreeMap::new();
        m.insert(0, h.parse_word(x).unwrap());
        m.insert(1, h.parse_word(y).unwrap());
        GroupInvolution::from_partial(h, &m).unwrap()
    }

    #[test]
    fn heisenberg_involutions() {
        let h = PcGroup::heisenberg();
        let t = heis_inv(&h, "x", "y");
        assert_eq!(t.images()[2].exps, vec![0, 0, -1]);
        assert_eq!(involution_matrix(&h, &t).unwrap(), vec![vec![1, 0], vec![0, 1]]);
        let s = heis_inv(&h, "y", "x");
        assert_eq!(involution_matrix(&h, &s).unwrap(), vec![vec![0, 1], vec![1, 0]]);
        let i = heis_inv(&h, "x^-1", "y^-1");
        assert_eq!(i, GroupInvolution::inversion(&h));
        assert_eq!(involution_matrix(&h, &i).unwrap(), vec![vec![-1, 0], vec![0, -1]]);
    }

    #[test]
    fn anti_multiplicative_on_samples() {
        let h = PcGroup::heisenberg();
        let s = heis_inv(&h, "y", "x");
        let u = h.parse_word("x^2*y^-1*z^3").unwrap();
        let v = h.parse_word("y^3*x*z^-1").unwrap();
        assert_eq!(s.apply(&h, &h.mul(&u, &v)), h.mul(&s.apply(&h, &v), &s.apply(&h, &u)));
        assert_eq!(s.apply(&h, &s.apply(&h, &u)), u);
    }

    #[test]
    fn rejects_non_involutions() {
        let h = PcGroup::heisenberg();
        let mut m = BTreeMap::new();
        m.insert(0, h.parse_word("x*y").unwrap());
        m.insert(1, h.parse_word("y").unwrap());
        assert!(GroupInvolution::from_partial(&h, &m).is_err());
        let imgs = vec![h.generator(0), h.generator(1), h.generator(2)];
        assert!(GroupInvolution::new(&h, imgs).is_err());
    }

    #[test]
    fn quotient_ranks() {
        assert_eq!(center_quotient(&PcGroup::heisenberg()).0, 2);
        assert_eq!(center_quotient(&PcGroup::free_nilpotent_class2(3)).0, 3);
        assert_eq!(center_quotient(&PcGroup::free_nilpotent_class2(1)).0, 0);
        let (_, p) = center_quotient(&PcGroup::heisenberg());
        assert_eq!(p(&GroupElem::from_exps(vec![3, -1, 7])), vec![3, -1]);
    }
}

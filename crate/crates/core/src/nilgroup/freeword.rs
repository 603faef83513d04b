//! Reduced words in a free group. Letter `k > 0` is the `k`-th generator,
//! `-k` its inverse.

use std::fmt;

use super::{GroupElem, PcGroup};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    pub fn letter(k: i32) -> Self {
        assert!(k != 0, "letter 0 is not a generator");
        FreeWord(vec![k])
    }

    /// Freely reduces the given letters.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not a generator");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `c · w · c⁻¹`.
    pub fn conjugate_by(&self, c: &FreeWord) -> FreeWord {
        c.mul(self).mul(&c.inverse())
    }

    /// `w⁻¹ v⁻¹ w v`.
    pub fn commutator(&self, v: &FreeWord) -> FreeWord {
        self.inverse().mul(&v.inverse()).mul(self).mul(v)
    }

    /// Image under the homomorphism sending letter `k` to `images[k-1]`.
    pub fn image(&self, g: &PcGroup, images: &[GroupElem]) -> GroupElem {
        let mut e = g.identity();
        for &l in &self.0 {
            let im = &images[(l.unsigned_abs() - 1) as usize];
            e = if l > 0 { g.mul(&e, im) } else { g.mul(&e, &g.inverse(im)) };
        }
        e
    }

    /// Mal'cev coordinates `(e_x, e_y, e_z)` in the Heisenberg quotient of the
    /// free group on two letters.
    pub fn nilpotent_image(&self) -> [i64; 3] {
        let h = PcGroup::heisenberg();
        let e = self.image(&h, &[h.generator(0), h.generator(1)]);
        [e.exps[0], e.exps[1], e.exps[2]]
    }

    /// Renders with the given generator names, e.g. `x*y^-1`.
    pub fn render(&self, names: &[&str]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut n = 1;
            while i + n < self.0.len() && self.0[i + n] == l {
                n += 1;
            }
            let name = names
                .get((l.unsigned_abs() - 1) as usize)
                .map(|s| s.to_string())
                .unwrap_or_else(|| format!("g{}", l.unsigned_abs()));
            let e = if l > 0 { n as i64 } else { -(n as i64) };
            parts.push(if e == 1 { name } else { format!("{}^{}", name, e) });
            i += n;
        }
        parts.join("*")
    }

    /// Parses the output of [`FreeWord::render`].
    pub fn parse(s: &str, names: &[&str]) -> Option<FreeWord> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Some(FreeWord::empty());
        }
        let mut letters = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (name, e) = match part.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().trim_start_matches('(').trim_end_matches(')').parse::<i64>().ok()?),
                None => (part, 1),
            };
            let k = names.iter().position(|n| *n == name)? as i32 + 1;
            for _ in 0..e.unsigned_abs() {
                letters.push(if e > 0 { k } else { -k });
            }
        }
        Some(FreeWord::new(letters))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&["x", "y", "w"]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        assert_eq!(FreeWord::new([1, 2, -2, 1]), FreeWord::new([1, 1]));
        assert!(FreeWord::new([1, 2, -2, -1]).is_empty());
        let w = FreeWord::new([1, -2, 1]);
        assert!(w.mul(&w.inverse()).is_empty());
    }

    #[test]
    fn heisenberg_images() {
        let x = FreeWord::letter(1);
        let y = FreeWord::letter(2);
        assert_eq!(x.commutator(&y).nilpotent_image(), [0, 0, -1]);
        assert_eq!(y.commutator(&x).nilpotent_image(), [0, 0, 1]);
        assert_eq!(x.mul(&y).nilpotent_image(), [1, 1, 0]);
        assert_eq!(y.mul(&x).nilpotent_image(), [1, 1, 1]);
    }

    #[test]
    fn conjugation_and_render() {
        let x = FreeWord::letter(1);
        let y = FreeWord::letter(2);
        let c = y.conjugate_by(&x);
        assert_eq!(c.letters(), &[1, 2, -1]);
        assert_eq!(c.render(&["x", "y"]), "x*y*x^-1");
        assert_eq!(FreeWord::parse("x*y*x^-1", &["x", "y"]).unwrap(), c);
        assert_eq!(x.pow(3).render(&["x", "y"]), "x^3");
        assert_eq!(FreeWord::parse("x^2*x^-2", &["x", "y"]).unwrap(), FreeWord::empty());
    }
}

//! Permutations of `[n]` in one-line notation, with the rotation and
//! reflection conjugations and anti-exceedance sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{1, ..., n}` stored in one-line notation.
///
/// `image()[i - 1]` is the image of `i`. Values are immutable and compare
/// structurally, so they can be used as map keys.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.image
    }
}

/// Reduce an integer to the residue class representative in `1..=n`.
pub(crate) fn wrap(x: i64, n: usize) -> usize {
    let n = n as i64;
    ((x - 1).rem_euclid(n) + 1) as usize
}

impl Permutation {
    /// Build a permutation from its one-line notation, checking bijectivity.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::Permutation("empty image".into()));
        }
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Permutation(format!("{image:?} is not a bijection of 1..{n}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { image: (1..=n).collect() }
    }

    /// The long cycle `i -> i + 1 (mod n)`.
    pub fn long_cycle(n: usize) -> Self {
        Permutation { image: (1..=n).map(|i| i % n + 1).collect() }
    }

    /// The order-reversing involution `i -> n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        Permutation { image: (1..=n).rev().collect() }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// The image of `i` (1-indexed).
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// `compose(q)(i) = self(q(i))`.
    pub fn compose(&self, q: &Permutation) -> Result<Permutation> {
        if self.n() != q.n() {
            return Err(Error::DegreeMismatch(self.n(), q.n()));
        }
        Ok(Permutation { image: q.image.iter().map(|&j| self.apply(j)).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { image: inv }
    }

    /// Conjugation by the long cycle: `i -> self(i + 1) - 1 (mod n)`.
    pub fn rot(&self) -> Permutation {
        let n = self.n();
        Permutation {
            image: (1..=n).map(|i| wrap(self.apply(i % n + 1) as i64 - 1, n)).collect(),
        }
    }

    /// Conjugation by the order-reversing involution.
    pub fn refl(&self) -> Permutation {
        let n = self.n();
        Permutation { image: (1..=n).map(|i| n + 1 - self.apply(n + 1 - i)).collect() }
    }

    /// The anti-exceedance set `{ i : self^{-1}(i) > i }`.
    pub fn aexc(&self) -> BTreeSet<usize> {
        let inv = self.inverse();
        (1..=self.n()).filter(|&i| inv.apply(i) > i).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.apply(i) == i).collect()
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, comma-separated integers otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.image {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.image.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let image: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Permutation(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Permutation(format!("bad digit {c:?}"))))
                .collect::<Result<_>>()?
        };
        Permutation::new(image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Independent pointwise inverse: search for the preimage of each value.
    fn inverse_by_search(q: &Permutation) -> Permutation {
        let n = q.n();
        Permutation::new((1..=n).map(|j| (1..=n).find(|&i| q.apply(i) == j).unwrap()).collect()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let pi = p("23756184");
        assert_eq!(Permutation::identity(8).compose(&pi).unwrap(), pi);
        assert!(pi.compose(&pi.inverse()).unwrap().is_identity());
        let c = Permutation::long_cycle(8);
        assert!(c.compose(&c.inverse()).unwrap().is_identity());
        assert!(matches!(c.compose(&Permutation::identity(3)), Err(Error::DegreeMismatch(8, 3))));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Permutation::identity(8).inverse(), Permutation::identity(8));
        assert_eq!(p("23756184").inverse(), inverse_by_search(&p("23756184")));
        assert_eq!(p("23756184").inverse(), p("61284537"));
        assert_eq!(p("37168425").inverse(), inverse_by_search(&p("37168425")));
        assert_eq!(p("37168425").inverse(), p("37168425"));
    }

    #[test]
    fn rot_examples() {
        assert_eq!(Permutation::identity(8).rot(), Permutation::identity(8));
        // rot = c^{-1} . pi . c computed with explicit composition.
        let pi = p("23756184");
        let c = Permutation::long_cycle(8);
        let conj = c.inverse().compose(&pi).unwrap().compose(&c).unwrap();
        assert_eq!(pi.rot(), conj);
        assert_eq!(pi.rot(), p("26458731"));
        let mut q = pi.clone();
        for _ in 0..8 {
            q = q.rot();
        }
        assert_eq!(q, pi);
    }

    #[test]
    fn refl_examples() {
        assert_eq!(Permutation::identity(8).refl(), Permutation::identity(8));
        let pi = p("23756184");
        let w0 = Permutation::longest(8);
        assert_eq!(pi.refl(), w0.compose(&pi).unwrap().compose(&w0).unwrap());
        assert_eq!(pi.refl(), p("51834267"));
        assert_eq!(pi.refl().refl(), pi);
    }

    #[test]
    fn aexc_examples() {
        assert_eq!(p("23756184").aexc(), BTreeSet::from([1, 4]));
        assert_eq!(p("37168425").aexc(), BTreeSet::from([1, 2, 4, 5]));
        assert!(Permutation::identity(8).aexc().is_empty());
    }

    #[test]
    fn text_encoding_roundtrip() {
        let big = Permutation::long_cycle(12);
        assert_eq!(big.to_string(), "2,3,4,5,6,7,8,9,10,11,12,1");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert!("1123".parse::<Permutation>().is_err());
        assert!("0".parse::<Permutation>().is_err());
    }

    /// All permutations of 1..n in lexicographic order.
    fn all_perms(n: usize) -> Vec<Permutation> {
        fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            let n = used.len();
            if cur.len() == n {
                out.push(Permutation::new(cur.clone()).unwrap());
                return;
            }
            for v in 1..=n {
                if !used[v - 1] {
                    used[v - 1] = true;
                    cur.push(v);
                    rec(cur, used, out);
                    cur.pop();
                    used[v - 1] = false;
                }
            }
        }
        let mut out = vec![];
        rec(&mut vec![], &mut vec![false; n], &mut out);
        out
    }

    #[test]
    fn aexc_size_rotation_invariant_on_derangements() {
        for n in 1..=6 {
            for q in all_perms(n) {
                if q.fixed_points().is_empty() {
                    assert_eq!(q.aexc().len(), q.rot().aexc().len(), "{q}");
                }
            }
        }
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        (1usize..=12).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_is_involution(q in arb_perm()) {
            prop_assert_eq!(q.inverse().inverse(), q);
        }

        #[test]
        fn compose_is_associative(v in (1usize..=9).prop_flat_map(|n| {
            let s = Just((1..=n).collect::<Vec<_>>());
            (s.clone().prop_shuffle(), s.clone().prop_shuffle(), s.prop_shuffle())
        })) {
            let (a, b, c) = (Permutation::new(v.0).unwrap(), Permutation::new(v.1).unwrap(), Permutation::new(v.2).unwrap());
            prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
        }

        #[test]
        fn dihedral_relations(q in arb_perm()) {
            let n = q.n();
            let mut r = q.clone();
            for _ in 0..n { r = r.rot(); }
            prop_assert_eq!(&r, &q);
            prop_assert_eq!(q.refl().refl(), q.clone());
            // refl . rot = rot^{-1} . refl
            let mut rot_inv = q.refl();
            for _ in 0..n - 1 { rot_inv = rot_inv.rot(); }
            prop_assert_eq!(q.rot().refl(), rot_inv);
        }
    }
}

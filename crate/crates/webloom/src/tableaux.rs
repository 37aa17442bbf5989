//! Rectangular standard and semistandard Young tableaux: promotion,
//! evacuation, standardization, lattice words, promotion permutations and
//! hook-length counting.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perms::{wrap, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableauKind {
    Standard,
    Semistandard,
}

/// An `a x b` rectangular tableau stored dense and row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct RectTableau {
    rows: usize,
    cols: usize,
    entries: Vec<usize>,
    kind: TableauKind,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    shape: [usize; 2],
    rows: Vec<Vec<usize>>,
    kind: TableauKind,
}

impl TryFrom<TableauJson> for RectTableau {
    type Error = Error;
    fn try_from(j: TableauJson) -> Result<Self> {
        if j.rows.len() != j.shape[0] || j.rows.iter().any(|r| r.len() != j.shape[1]) {
            return Err(Error::Tableau(format!("rows do not match shape {:?}", j.shape)));
        }
        RectTableau::new(j.rows, j.kind)
    }
}

impl From<RectTableau> for TableauJson {
    fn from(t: RectTableau) -> Self {
        TableauJson { shape: [t.rows, t.cols], rows: t.to_rows(), kind: t.kind }
    }
}

/// The letters of a lattice word: letter `v` is the multiset of row indices
/// (1-based, sorted) of the boxes labelled `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeWord {
    pub letters: Vec<Vec<usize>>,
}

impl LatticeWord {
    /// Flatten into one row index per box, splitting multisets in weakly
    /// increasing order.
    pub fn split(&self) -> Vec<usize> {
        self.letters.iter().flatten().copied().collect()
    }
}

impl fmt::Display for LatticeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|l| l.len() == 1) {
            for l in &self.letters {
                write!(f, "{}", l[0])?;
            }
            return Ok(());
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| {
                if l.len() == 1 {
                    l[0].to_string()
                } else {
                    let inner: Vec<String> = l.iter().map(|x| x.to_string()).collect();
                    format!("{{{}}}", inner.join(","))
                }
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl RectTableau {
    /// Build and validate a tableau of the given kind from its rows.
    pub fn new(rows: Vec<Vec<usize>>, kind: TableauKind) -> Result<Self> {
        let a = rows.len();
        if a == 0 || rows[0].is_empty() {
            return Err(Error::Tableau("empty shape".into()));
        }
        let b = rows[0].len();
        if rows.iter().any(|r| r.len() != b) {
            return Err(Error::Tableau("rows of unequal length".into()));
        }
        let t = RectTableau { rows: a, cols: b, entries: rows.into_iter().flatten().collect(), kind };
        t.validate()?;
        Ok(t)
    }

    /// Build a tableau, classifying it as standard when its entries are
    /// exactly `1..=ab`.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let mut flat: Vec<usize> = rows.iter().flatten().copied().collect();
        flat.sort_unstable();
        let standard = flat.iter().enumerate().all(|(i, &v)| v == i + 1);
        RectTableau::new(rows, if standard { TableauKind::Standard } else { TableauKind::Semistandard })
    }

    /// Parse the compact row notation `"14,25,37,68"` (digits only).
    pub fn parse_short(s: &str) -> Result<Self> {
        let rows = s
            .split(',')
            .map(|r| {
                r.trim()
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Tableau(format!("bad entry {c:?}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        RectTableau::from_rows(rows)
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = (self.rows, self.cols);
        if self.entries.contains(&0) {
            return Err(Error::Tableau("entries must be positive".into()));
        }
        for r in 0..a {
            for c in 0..b {
                let v = self.get(r, c);
                if r + 1 < a && self.get(r + 1, c) <= v {
                    return Err(Error::Tableau(format!("column {} not strictly increasing", c + 1)));
                }
                if c + 1 < b {
                    let w = self.get(r, c + 1);
                    let bad = match self.kind {
                        TableauKind::Standard => w <= v,
                        TableauKind::Semistandard => w < v,
                    };
                    if bad {
                        return Err(Error::Tableau(format!("row {} not increasing", r + 1)));
                    }
                }
            }
        }
        if self.kind == TableauKind::Standard {
            let mut flat = self.entries.clone();
            flat.sort_unstable();
            if flat.iter().enumerate().any(|(i, &v)| v != i + 1) {
                return Err(Error::Tableau(format!("standard tableau must contain 1..{} once each", a * b)));
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn kind(&self) -> TableauKind {
        self.kind
    }

    pub fn is_standard(&self) -> bool {
        self.kind == TableauKind::Standard
    }

    /// Entry at 0-based row `r` and column `c`.
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<usize>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Largest entry; the number of letters of the tableau's content.
    pub fn max_entry(&self) -> usize {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Multiplicity of each letter `1..=n` (the boundary condition).
    pub fn content(&self, n: usize) -> Vec<usize> {
        let mut lam = vec![0; n.max(self.max_entry())];
        for &v in &self.entries {
            lam[v - 1] += 1;
        }
        lam
    }

    /// Set of entries in the first `i` rows.
    pub fn first_rows(&self, i: usize) -> std::collections::BTreeSet<usize> {
        self.entries[..i * self.cols].iter().copied().collect()
    }

    fn require_standard(&self) -> Result<()> {
        if self.is_standard() {
            Ok(())
        } else {
            Err(Error::Tableau("operation requires a standard tableau".into()))
        }
    }

    /// One promotion step, also reporting for each row boundary `i` (index
    /// `i - 1`) the entry that slid from row `i + 1` into row `i`.
    fn promote_tracked(&self) -> (RectTableau, Vec<usize>) {
        let (a, b) = (self.rows, self.cols);
        let mut e = self.entries.clone();
        let mut up = vec![0; a.saturating_sub(1)];
        let (mut r, mut c) = (0, 0);
        loop {
            let right = (c + 1 < b).then(|| e[r * b + c + 1]);
            let below = (r + 1 < a).then(|| e[(r + 1) * b + c]);
            let go_down = match (right, below) {
                (None, None) => break,
                (Some(_), None) => false,
                (None, Some(_)) => true,
                (Some(x), Some(y)) => y < x,
            };
            if go_down {
                e[r * b + c] = e[(r + 1) * b + c];
                up[r] = e[r * b + c];
                r += 1;
            } else {
                e[r * b + c] = e[r * b + c + 1];
                c += 1;
            }
        }
        e[r * b + c] = a * b + 1;
        for x in e.iter_mut() {
            *x -= 1;
        }
        (RectTableau { rows: a, cols: b, entries: e, kind: TableauKind::Standard }, up)
    }

    /// Schützenberger promotion of a standard tableau.
    pub fn promotion(&self) -> Result<RectTableau> {
        self.require_standard()?;
        Ok(self.promote_tracked().0)
    }

    /// Evacuation of a rectangular standard tableau: rotate by 180 degrees
    /// and complement entries.
    pub fn evacuation(&self) -> Result<RectTableau> {
        self.require_standard()?;
        let ab = self.rows * self.cols;
        let entries = self.entries.iter().rev().map(|&v| ab + 1 - v).collect();
        Ok(RectTableau { entries, ..self.clone() })
    }

    /// Relabel equal entries left to right by consecutive integers.
    pub fn standardize(&self) -> RectTableau {
        if self.is_standard() {
            return self.clone();
        }
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        // Equal values form a horizontal strip, so reading them by column
        // is left to right.
        order.sort_by_key(|&k| (self.entries[k], k % self.cols));
        let mut entries = vec![0; self.entries.len()];
        for (label, &k) in order.iter().enumerate() {
            entries[k] = label + 1;
        }
        RectTableau { entries, kind: TableauKind::Standard, ..self.clone() }
    }

    /// Inverse of standardization for the given content `lambda`: the first
    /// `lambda[0]` labels become letter 1, the next `lambda[1]` letter 2, etc.
    pub fn destandardize(&self, lambda: &[usize]) -> Result<RectTableau> {
        self.require_standard()?;
        let total: usize = lambda.iter().sum();
        if total != self.entries.len() {
            return Err(Error::Tableau(format!("content {lambda:?} does not sum to {}", self.entries.len())));
        }
        let mut letter_of = Vec::with_capacity(total);
        for (v, &m) in lambda.iter().enumerate() {
            letter_of.extend(std::iter::repeat_n(v + 1, m));
        }
        let rows: Vec<Vec<usize>> = (0..self.rows).map(|r| self.row(r).iter().map(|&x| letter_of[x - 1]).collect()).collect();
        RectTableau::new(rows, TableauKind::Semistandard).map(|t| {
            if lambda.iter().all(|&m| m == 1) {
                RectTableau { kind: TableauKind::Standard, ..t }
            } else {
                t
            }
        })
    }

    /// Promotion of a semistandard tableau with letters `1..=max_entry`:
    /// standardize, promote `lambda_1` times, and destandardize with the
    /// content rotated by one position.
    pub fn ssyt_promotion(&self) -> Result<RectTableau> {
        if self.is_standard() {
            return self.promotion();
        }
        let lam = self.content(self.max_entry());
        let mut t = self.standardize();
        for _ in 0..lam[0] {
            t = t.promotion()?;
        }
        let mut rotated = lam[1..].to_vec();
        rotated.push(lam[0]);
        t.destandardize(&rotated)
    }

    /// Letter `v` is the multiset of row indices of boxes labelled `v`.
    pub fn lattice_word(&self) -> LatticeWord {
        let mut letters = vec![Vec::new(); self.max_entry()];
        for r in 0..self.rows {
            for &v in self.row(r) {
                letters[v - 1].push(r + 1);
            }
        }
        for l in letters.iter_mut() {
            l.sort_unstable();
        }
        LatticeWord { letters }
    }

    /// All `a - 1` promotion permutations, sharing one promotion orbit.
    pub fn prom_perms(&self) -> Result<Vec<Permutation>> {
        self.require_standard()?;
        let (a, b) = (self.rows, self.cols);
        let ab = a * b;
        let mut images = vec![vec![0; ab]; a.saturating_sub(1)];
        let mut t = self.clone();
        for j in 1..=ab {
            let (next, up) = t.promote_tracked();
            for (i, &p) in up.iter().enumerate() {
                images[i][j - 1] = wrap((p + j - 1) as i64, ab);
            }
            t = next;
        }
        images.into_iter().map(Permutation::new).collect()
    }

    /// The `i`-th promotion permutation, `1 <= i <= a - 1`.
    pub fn prom_perm(&self, i: usize) -> Result<Permutation> {
        if i == 0 || i >= self.rows {
            return Err(Error::RowIndex(i, self.rows.saturating_sub(1)));
        }
        Ok(self.prom_perms()?.swap_remove(i - 1))
    }

    /// Compact row notation, e.g. `14,25,37,68`; entries above 9 are
    /// bracketed.
    pub fn short(&self) -> String {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&v| if v < 10 { v.to_string() } else { format!("[{v}]") }).collect::<String>())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Canonical compact JSON encoding.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tableau serializes")
    }
}

impl fmt::Display for RectTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.short())
    }
}

/// Number of standard Young tableaux of rectangular shape `a x b`, by the
/// hook-length formula.
pub fn count_syt(a: usize, b: usize) -> BigUint {
    let mut num = BigUint::one();
    for k in 1..=(a * b) {
        num *= k;
    }
    let mut den = BigUint::one();
    for r in 0..a {
        for c in 0..b {
            den *= (a - r) + (b - c) - 1;
        }
    }
    num / den
}

/// `count_syt` as a machine integer, for shapes where it fits.
pub fn count_syt_u64(a: usize, b: usize) -> u64 {
    count_syt(a, b).to_u64().expect("count fits in u64")
}

/// Every standard tableau of shape `a x b`, in the order generated by
/// placing `1, 2, ...` into the lowest-indexed admissible row first.
pub fn all_standard(a: usize, b: usize) -> Vec<RectTableau> {
    fn rec(k: usize, a: usize, b: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<RectTableau>) {
        if k > a * b {
            out.push(RectTableau::new(rows.clone(), TableauKind::Standard).expect("valid by construction"));
            return;
        }
        for r in 0..a {
            let len = rows[r].len();
            if len < b && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(k);
                rec(k + 1, a, b, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = vec![];
    rec(1, a, b, &mut vec![Vec::new(); a], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn t(s: &str) -> RectTableau {
        RectTableau::parse_short(s).unwrap()
    }

    #[test]
    fn promotion_example() {
        assert_eq!(t("14,25,37,68").promotion().unwrap(), t("13,24,56,78"));
        let col = RectTableau::new(vec![vec![1], vec![2], vec![3], vec![4]], TableauKind::Standard).unwrap();
        assert_eq!(col.promotion().unwrap(), col);
        let mut x = t("14,25,37,68");
        for _ in 0..8 {
            x = x.promotion().unwrap();
        }
        assert_eq!(x, t("14,25,37,68"));
        assert!(t("11,24,36,57").promotion().is_err());
    }

    #[test]
    fn evacuation_example() {
        let e = t("14,25,37,68").evacuation().unwrap();
        assert_eq!(e, t("13,26,47,58"));
        assert_eq!(e.evacuation().unwrap(), t("14,25,37,68"));
        let col = RectTableau::new(vec![vec![1], vec![2], vec![3], vec![4]], TableauKind::Standard).unwrap();
        assert_eq!(col.evacuation().unwrap(), col);
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(t("11,24,36,57").standardize(), t("12,35,47,68"));
        assert_eq!(t("14,25,37,68").standardize(), t("14,25,37,68"));
        assert_eq!(t("11,22").standardize(), t("12,34"));
        assert_eq!(t("12,35,47,68").destandardize(&[2, 1, 1, 1, 1, 1, 1]).unwrap(), t("11,24,36,57"));
    }

    #[test]
    fn ssyt_promotion_example() {
        let s = t("11,24,36,57");
        let mut twice = s.standardize();
        for _ in 0..2 {
            twice = twice.promotion().unwrap();
        }
        assert_eq!(twice, t("13,25,46,78"));
        let p = s.ssyt_promotion().unwrap();
        assert_eq!(p, t("13,25,46,77"));
        assert_eq!(p.content(7), vec![1, 1, 1, 1, 1, 1, 2]);
        assert_eq!(t("14,25,37,68").ssyt_promotion().unwrap(), t("14,25,37,68").promotion().unwrap());
    }

    #[test]
    fn lattice_word_examples() {
        assert_eq!(t("14,25,37,68").lattice_word().to_string(), "12312434");
        let col = RectTableau::new(vec![vec![1], vec![2], vec![3], vec![4]], TableauKind::Standard).unwrap();
        assert_eq!(col.lattice_word().to_string(), "1234");
        let w = t("11,24,36,57").lattice_word();
        assert_eq!(w.letters, vec![vec![1, 1], vec![2], vec![3], vec![2], vec![4], vec![3], vec![4]]);
    }

    #[test]
    fn prom_perm_examples() {
        let x = t("14,25,37,68");
        assert_eq!(x.prom_perm(1).unwrap().to_string(), "23756184");
        assert_eq!(x.prom_perm(2).unwrap().to_string(), "37168425");
        assert_eq!(x.prom_perm(3).unwrap(), x.prom_perm(1).unwrap().inverse());
        assert_eq!(x.prom_perm(3).unwrap().to_string(), "61284537");
        assert_eq!(x.prom_perm(3).unwrap().aexc(), BTreeSet::from([1, 2, 3, 4, 5, 7]));
        assert!(matches!(x.prom_perm(4), Err(Error::RowIndex(4, 3))));
        assert!(x.prom_perm(0).is_err());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_syt_u64(4, 3), 462);
        assert_eq!(count_syt_u64(1, 1), 1);
        assert_eq!(count_syt_u64(4, 2), 14);
        for a in 1..=5 {
            for b in 1..=5 {
                if a * b <= 10 {
                    assert_eq!(all_standard(a, b).len() as u64, count_syt_u64(a, b), "{a}x{b}");
                }
            }
        }
    }

    #[test]
    fn promotion_order_and_evacuation_involution() {
        for a in 1..=4 {
            for b in 1..=4 {
                if a * b > 12 {
                    continue;
                }
                for x in all_standard(a, b) {
                    let mut y = x.clone();
                    for _ in 0..a * b {
                        y = y.promotion().unwrap();
                    }
                    assert_eq!(y, x);
                    assert_eq!(x.evacuation().unwrap().evacuation().unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn promotion_permutation_identities_small_shapes() {
        for a in 2..=3 {
            for b in 1..=3 {
                for x in all_standard(a, b) {
                    let perms = x.prom_perms().unwrap();
                    let p = x.promotion().unwrap().prom_perms().unwrap();
                    let e = x.evacuation().unwrap().prom_perms().unwrap();
                    for i in 1..a {
                        assert_eq!(perms[i - 1].rot(), p[i - 1]);
                        assert_eq!(perms[i - 1].refl(), e[a - i - 1]);
                        assert_eq!(perms[i - 1], perms[a - i - 1].inverse());
                        assert_eq!(perms[i - 1].aexc(), x.first_rows(i));
                        assert!(perms[i - 1].fixed_points().is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn json_roundtrip_is_bit_exact() {
        let s = r#"{"shape":[4,2],"rows":[[1,4],[2,5],[3,7],[6,8]],"kind":"standard"}"#;
        let x: RectTableau = serde_json::from_str(s).unwrap();
        assert_eq!(x.to_json(), s);
        let bad = r#"{"shape":[2,2],"rows":[[1,4],[2,3]],"kind":"standard"}"#;
        assert!(serde_json::from_str::<RectTableau>(bad).is_err());
    }
}

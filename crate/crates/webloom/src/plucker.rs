//! Plücker monomials and polynomials: text format, boundary-condition
//! grading, dihedral relabeling and exact evaluation on rational matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::planar_map::Dihedral;

/// A `k`-subset of `{1..n}`, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KSubset {
    pub n: usize,
    pub elems: Vec<usize>,
}

impl KSubset {
    pub fn new(n: usize, mut elems: Vec<usize>) -> Result<KSubset> {
        elems.sort_unstable();
        if elems.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Polynomial(format!("repeated index in {elems:?}")));
        }
        if elems.iter().any(|&i| i == 0 || i > n) {
            return Err(Error::Polynomial(format!("index out of range 1..{n} in {elems:?}")));
        }
        Ok(KSubset { n, elems })
    }

    pub fn k(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elems.binary_search(&i).is_ok()
    }

    pub fn relabel(&self, g: Dihedral) -> KSubset {
        KSubset::new(self.n, self.elems.iter().map(|&i| g.apply(i, self.n)).collect()).expect("relabeling is a bijection")
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n > 9 { "," } else { "" };
        let parts: Vec<String> = self.elems.iter().map(|i| i.to_string()).collect();
        write!(f, "P[{}]", parts.join(sep))
    }
}

/// A signed product of Plücker coordinates; factors are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PluckerMonomial {
    pub sign: i64,
    pub factors: Vec<KSubset>,
}

impl PluckerMonomial {
    pub fn new(sign: i64, mut factors: Vec<KSubset>) -> PluckerMonomial {
        factors.sort();
        PluckerMonomial { sign, factors }
    }

    /// Multiplicity of each index `1..=n` among the factors.
    pub fn lambda(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for f in &self.factors {
            for &i in &f.elems {
                out[i - 1] += 1;
            }
        }
        out
    }

    fn unsigned(&self) -> String {
        self.factors.iter().map(|f| f.to_string()).collect()
    }
}

/// A signed sum of Plücker monomials on `Gr(k, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PluckerPolynomial {
    pub k: usize,
    pub n: usize,
    pub terms: Vec<PluckerMonomial>,
}

impl PluckerPolynomial {
    pub fn new(k: usize, n: usize, terms: Vec<PluckerMonomial>) -> Result<PluckerPolynomial> {
        for t in &terms {
            if t.sign != 1 && t.sign != -1 {
                return Err(Error::Polynomial(format!("sign {} is not +1 or -1", t.sign)));
            }
            if let Some(f) = t.factors.iter().find(|f| f.k() != k || f.n != n) {
                return Err(Error::Polynomial(format!("factor {f} is not a {k}-subset of 1..{n}")));
            }
        }
        Ok(PluckerPolynomial { k, n, terms })
    }

    /// Parse the text format, inferring `k` from the first factor.
    pub fn parse(s: &str, n: usize) -> Result<PluckerPolynomial> {
        let mut terms = Vec::new();
        // A sign written apart from its term applies to the next token.
        let mut pending: Option<i64> = None;
        for tok in s.split_whitespace() {
            if tok == "+" || tok == "-" {
                if pending.replace(if tok == "-" { -1 } else { 1 }).is_some() {
                    return Err(Error::Polynomial("two signs in a row".into()));
                }
                continue;
            }
            let outer = pending.take().unwrap_or(1);
            let (sign, rest) = match tok.as_bytes()[0] {
                b'+' => (outer, &tok[1..]),
                b'-' => (-outer, &tok[1..]),
                _ => (outer, tok),
            };
            let mut factors = Vec::new();
            for part in rest.split("P[").skip(1) {
                let body = part.strip_suffix(']').ok_or_else(|| Error::Polynomial(format!("unclosed factor in {tok:?}")))?;
                let elems: Vec<usize> = if body.contains(',') {
                    body.split(',').map(|x| x.trim().parse().map_err(|_| Error::Polynomial(format!("bad index in {tok:?}")))).collect::<Result<_>>()?
                } else {
                    body.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Polynomial(format!("bad index in {tok:?}")))).collect::<Result<_>>()?
                };
                factors.push(KSubset::new(n, elems)?);
            }
            if factors.is_empty() || !rest.starts_with("P[") {
                return Err(Error::Polynomial(format!("term {tok:?} has no factors")));
            }
            terms.push(PluckerMonomial::new(sign, factors));
        }
        if pending.is_some() {
            return Err(Error::Polynomial("trailing sign".into()));
        }
        let k = terms.first().map_or(0, |t| t.factors[0].k());
        PluckerPolynomial::new(k, n, terms)
    }

    /// Number of factors per term (the degree `r`).
    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |t| t.factors.len())
    }

    /// The common boundary condition of all terms.
    pub fn boundary_condition(&self) -> Result<Vec<usize>> {
        let Some(first) = self.terms.first() else { return Ok(vec![0; self.n]) };
        let lam = first.lambda(self.n);
        let bad: Vec<String> = self.terms.iter().filter(|t| t.lambda(self.n) != lam).map(|t| t.unsigned()).collect();
        if !bad.is_empty() {
            return Err(Error::Inhomogeneous(format!("{} differs from {} in boundary condition", bad.join(", "), first.unsigned())));
        }
        Ok(lam)
    }

    pub fn dihedral_translate(&self, g: Dihedral) -> PluckerPolynomial {
        let terms = self.terms.iter().map(|t| PluckerMonomial::new(t.sign, t.factors.iter().map(|f| f.relabel(g)).collect())).collect();
        PluckerPolynomial { k: self.k, n: self.n, terms }
    }

    /// Exact value on a `k x n` matrix.
    pub fn evaluate(&self, m: &[Vec<BigRational>]) -> Result<BigRational> {
        if m.len() != self.k || m.iter().any(|r| r.len() != self.n) {
            return Err(Error::MatrixShape(self.k, self.n, m.len(), m.first().map_or(0, |r| r.len())));
        }
        let mut total = BigRational::zero();
        for t in &self.terms {
            let mut prod = BigRational::from_integer(BigInt::from(t.sign));
            for f in &t.factors {
                prod *= minor(m, &f.elems);
            }
            total += prod;
        }
        Ok(total)
    }

    pub fn negated(&self) -> PluckerPolynomial {
        let terms = self.terms.iter().map(|t| PluckerMonomial { sign: -t.sign, factors: t.factors.clone() }).collect();
        PluckerPolynomial { terms, ..self.clone() }
    }
}

impl fmt::Display for PluckerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|t| format!("{}{}", if t.sign < 0 { '-' } else { '+' }, t.unsigned())).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for PluckerPolynomial {
    type Err = Error;
    /// Parse with `n` taken as the largest index that appears.
    fn from_str(s: &str) -> Result<Self> {
        let max = s
            .split(|c: char| !c.is_ascii_digit() && c != ',')
            .flat_map(|chunk| {
                if chunk.contains(',') {
                    chunk.split(',').filter_map(|x| x.parse::<usize>().ok()).collect::<Vec<_>>()
                } else {
                    chunk.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect()
                }
            })
            .max()
            .unwrap_or(0);
        PluckerPolynomial::parse(s, max)
    }
}

/// Determinant of the square submatrix on the given (1-based) columns, by
/// Gaussian elimination over the rationals.
pub fn minor(m: &[Vec<BigRational>], cols: &[usize]) -> BigRational {
    let k = m.len();
    let mut a: Vec<Vec<BigRational>> = (0..k).map(|r| cols.iter().map(|&c| m[r][c - 1].clone()).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c].clone();
        det *= &pivot;
        for r in c + 1..k {
            if a[r][c].is_zero() {
                continue;
            }
            let factor = &a[r][c] / &pivot;
            for j in c..k {
                let delta = &factor * &a[c][j];
                a[r][j] -= delta;
            }
        }
    }
    det
}

/// Parse a matrix given as CSV rows of rationals `p` or `p/q`.
pub fn parse_matrix_csv(s: &str) -> Result<Vec<Vec<BigRational>>> {
    s.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            line.split(',')
                .map(|cell| {
                    let cell = cell.trim();
                    cell.parse::<BigRational>().map_err(|_| Error::Polynomial(format!("bad matrix entry {cell:?}")))
                })
                .collect()
        })
        .collect()
}

/// Integer matrix with entries drawn uniformly from `[-bound, bound]`.
pub fn random_matrix(k: usize, n: usize, bound: i64, seed: u64) -> Vec<Vec<BigRational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k).map(|_| (0..n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound)))).collect()).collect()
}

/// The three quadratic expressions of the same `Gr(3,6)` cluster variable.
pub fn gr36_expressions() -> [PluckerPolynomial; 3] {
    ["+P[134]P[256] -P[156]P[234]", "+P[124]P[356] -P[123]P[456]", "+P[125]P[346] -P[126]P[345]"]
        .map(|s| PluckerPolynomial::parse(s, 6).expect("fixed expression parses"))
}

/// Cyclically shift matrix columns so that column `j` moves to `j - k`.
pub fn shift_columns(m: &[Vec<BigRational>], k: usize) -> Vec<Vec<BigRational>> {
    let n = m.first().map_or(0, |r| r.len());
    m.iter().map(|r| (0..n).map(|j| r[(j + k) % n].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    const TYPE1: &str = "+P[1238]P[1234]P[4567] -P[1238]P[1456]P[2347] -P[1248]P[1234]P[3567] +P[1248]P[1356]P[2347]";

    #[test]
    fn parse_and_format() {
        let p = PluckerPolynomial::parse(TYPE1, 8).unwrap();
        assert_eq!((p.k, p.n, p.degree(), p.terms.len()), (4, 8, 3, 4));
        let again: PluckerPolynomial = p.to_string().parse().unwrap();
        assert_eq!(again, p);
        assert!(PluckerPolynomial::parse("+P[1123]", 8).is_err());
        assert!(PluckerPolynomial::parse("+P[1239", 9).is_err());
        let big = PluckerPolynomial::parse("+P[1,10,11]", 12).unwrap();
        assert_eq!(big.to_string(), "+P[1,10,11]");
        let spaced = PluckerPolynomial::parse("P[1357]P[2468] - P[1358]P[2467] + -P[1234]P[5678]", 8).unwrap();
        assert_eq!(spaced.to_string(), "+P[1357]P[2468] -P[1358]P[2467] -P[1234]P[5678]");
        assert!(PluckerPolynomial::parse("P[1234]P[5678] -", 8).is_err());
        assert!(PluckerPolynomial::parse("- - P[1234]P[5678]", 8).is_err());
    }

    #[test]
    fn boundary_conditions() {
        let p = PluckerPolynomial::parse(TYPE1, 8).unwrap();
        assert_eq!(p.boundary_condition().unwrap(), vec![2, 2, 2, 2, 1, 1, 1, 1]);
        assert_eq!(p.terms[0].lambda(8), vec![2, 2, 2, 2, 1, 1, 1, 1]);
        let quad = PluckerPolynomial::parse("+P[1235]P[1467] -P[1234]P[1567]", 8).unwrap();
        assert_eq!(quad.boundary_condition().unwrap(), vec![2, 1, 1, 1, 1, 1, 1, 0]);
        let one = PluckerPolynomial::parse("+P[1234]P[5678]", 8).unwrap();
        assert_eq!(one.boundary_condition().unwrap(), vec![1; 8]);
        let bad = PluckerPolynomial::parse("+P[1234]P[5678] -P[1235]P[1678]", 8).unwrap();
        assert!(matches!(bad.boundary_condition(), Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn evaluation_on_coordinate_matrix() {
        let mut rows = vec![vec![0i64; 8]; 4];
        for i in 0..4 {
            rows[i][i] = 1;
        }
        let m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let p1234 = PluckerPolynomial::parse("+P[1234]", 8).unwrap();
        assert_eq!(p1234.evaluate(&m).unwrap(), q(1));
        assert_eq!(PluckerPolynomial::parse(TYPE1, 8).unwrap().evaluate(&m).unwrap(), q(0));
        assert!(matches!(p1234.evaluate(&m[..3]), Err(Error::MatrixShape(..))));
    }

    #[test]
    fn gr36_identities() {
        let m = int_matrix(&[&[1, 0, 0, 1, 1, 1], &[0, 1, 0, 1, 2, 3], &[0, 0, 1, 1, 4, 9]]);
        let [a, b, c] = gr36_expressions();
        let va = a.evaluate(&m).unwrap();
        assert_eq!(va, b.evaluate(&m).unwrap());
        assert_eq!(va, c.evaluate(&m).unwrap());
        for seed in 0..20 {
            let m = random_matrix(3, 6, 9, seed);
            let va = a.evaluate(&m).unwrap();
            assert_eq!(va, b.evaluate(&m).unwrap());
            assert_eq!(va, c.evaluate(&m).unwrap());
        }
    }

    #[test]
    fn minor_matches_cofactor_expansion() {
        fn cofactor(a: &[Vec<BigRational>]) -> BigRational {
            if a.len() == 1 {
                return a[0][0].clone();
            }
            let mut s = BigRational::zero();
            for j in 0..a.len() {
                let sub: Vec<Vec<BigRational>> = a[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
                let term = &a[0][j] * cofactor(&sub);
                if j % 2 == 0 {
                    s += term;
                } else {
                    s -= term;
                }
            }
            s
        }
        for seed in 0..30 {
            let m = random_matrix(4, 4, 5, seed);
            assert_eq!(minor(&m, &[1, 2, 3, 4]), cofactor(&m));
        }
    }

    #[test]
    fn dihedral_translation() {
        let p = PluckerPolynomial::parse(TYPE1, 8).unwrap();
        assert_eq!(p.dihedral_translate(Dihedral::IDENTITY), p);
        let mut t = p.clone();
        for _ in 0..8 {
            t = t.dihedral_translate(Dihedral::rotation(1));
        }
        assert_eq!(t, p);
        let g = Dihedral { shift: 3, reflect: true };
        let lam = p.boundary_condition().unwrap();
        let mut expected = vec![0; 8];
        for i in 1..=8 {
            expected[g.apply(i, 8) - 1] = lam[i - 1];
        }
        assert_eq!(p.dihedral_translate(g).boundary_condition().unwrap(), expected);
        for seed in 0..5 {
            let m = random_matrix(4, 8, 7, seed);
            let lhs = p.dihedral_translate(Dihedral::rotation(1)).evaluate(&m).unwrap();
            let rhs = p.evaluate(&shift_columns(&m, 7)).unwrap();
            assert_eq!(lhs.abs(), rhs.abs());
        }
    }

    #[test]
    fn csv_matrix() {
        let m = parse_matrix_csv("1, 1/2\n-3/4, 2\n").unwrap();
        assert_eq!(minor(&m, &[1, 2]), BigRational::new(BigInt::from(19), BigInt::from(8)));
        assert!(parse_matrix_csv("1, x").is_err());
    }
}

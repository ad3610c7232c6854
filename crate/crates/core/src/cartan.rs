//! Cartan data for the untwisted affine types A, B, C and D.
//!
//! The invariant form is normalized so that long roots have squared length 2.
//! Internally all form values are stored doubled (`gram2 = 2 (x|y)`), which
//! keeps every table integral: the short roots of B and C have `(a|a) = 1`
//! and the short-short pairing in C is `-1/2`.
//!
//! Node 0 is never a coordinate of the finite lattice: `alpha_0 = delta - theta`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::A, Family::B, Family::C, Family::D];

    /// Smallest rank accepted by [`CartanData::new`].
    ///
    /// `B2` is accepted: it is built from the same finite recipe as `Bn` and is
    /// needed as the bottom of the `B2 -> B3` stability checks.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A | Family::B | Family::C => 2,
            Family::D => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            other => Err(Error::Parse { pos: 0, msg: format!("unknown family `{other}`") }),
        }
    }
}

/// Immutable Cartan datum of an affine type, with the finite root system cached.
#[derive(Debug, Clone)]
pub struct CartanData {
    family: Family,
    n: usize,
    /// `a_ij = <alpha_i^vee, alpha_j>`, indices over `I_af = {0..n}`.
    cartan: Vec<Vec<i64>>,
    /// `2 (alpha_i | alpha_j)`.
    gram2: Vec<Vec<i64>>,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    /// Highest root in simple-root coordinates (length n, index k means alpha_{k+1}).
    theta: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
}

/// A real affine root `finite + k delta`; `finite` is in coordinates `alpha_1..alpha_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub finite: Vec<i64>,
    pub delta: i64,
}

/// `finite + k K` with `finite` in coordinates `alpha_1^vee..alpha_n^vee`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineCoroot {
    pub finite: Vec<Rational>,
    pub k: Rational,
}

/// A vector of the realization space, in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoweightVector(pub Vec<Rational>);

fn finite_gram2(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0i64; n]; n];
    let link = |g: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match family {
        Family::A => {
            for i in 0..n {
                g[i][i] = 4;
                if i + 1 < n {
                    link(&mut g, i, i + 1, -2);
                }
            }
        }
        Family::B => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 2 } else { 4 };
                if i + 1 < n {
                    link(&mut g, i, i + 1, -2);
                }
            }
        }
        Family::C => {
            for i in 0..n {
                g[i][i] = if i + 1 == n { 4 } else { 2 };
                if i + 2 < n {
                    link(&mut g, i, i + 1, -1);
                } else if i + 2 == n {
                    link(&mut g, i, i + 1, -2);
                }
            }
        }
        Family::D => {
            for i in 0..n {
                g[i][i] = 4;
            }
            // chain 1 - 2 - ... - (n-1), and n attached to n-2 (1-based)
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, -2);
            }
            link(&mut g, n - 3, n - 1, -2);
        }
    }
    g
}

impl CartanData {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < family.min_rank() {
            return Err(Error::RankTooSmall { family, min: family.min_rank(), got: n });
        }
        let fg = finite_gram2(family, n);
        let fcartan = |i: usize, j: usize| 2 * fg[i][j] / fg[i][i];

        // finite roots by closure under simple reflections
        let mut roots: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mut seen: std::collections::HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut idx = 0;
        while idx < roots.len() {
            let beta = roots[idx].clone();
            idx += 1;
            for j in 0..n {
                let pair: i64 = (0..n).map(|k| beta[k] * fcartan(j, k)).sum();
                let mut img = beta.clone();
                img[j] -= pair;
                if seen.insert(img.clone()) {
                    roots.push(img);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> =
            roots.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let theta = positive.last().expect("nonempty root system").clone();

        let g2 = |x: &[i64], y: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += x[i] * fg[i][j] * y[j];
                }
            }
            s
        };

        let dim = n + 1;
        let mut gram2 = vec![vec![0i64; dim]; dim];
        gram2[0][0] = g2(&theta, &theta);
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let v = -g2(&theta, &e);
            gram2[0][j + 1] = v;
            gram2[j + 1][0] = v;
            for k in 0..n {
                gram2[j + 1][k + 1] = fg[j][k];
            }
        }
        let cartan: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| 2 * gram2[i][j] / gram2[i][i]).collect())
            .collect();

        let mut marks = vec![1i64];
        marks.extend(theta.iter().copied());
        let theta_norm2 = gram2[0][0];
        let mut comarks = vec![1i64];
        for (i, &t) in theta.iter().enumerate() {
            let num = t * gram2[i + 1][i + 1];
            debug_assert_eq!(num % theta_norm2, 0);
            comarks.push(num / theta_norm2);
        }

        let cd = CartanData { family, n, cartan, gram2, marks, comarks, theta, positive_roots: positive };
        cd.validate()?;
        Ok(cd)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.n + 1;
        for i in 0..dim {
            if self.cartan[i][i] != 2 {
                return Err(Error::Inconsistent(format!("diagonal entry {i} is not 2")));
            }
            for j in 0..dim {
                if i != j && self.cartan[i][j] > 0 {
                    return Err(Error::Inconsistent(format!("positive off-diagonal entry ({i},{j})")));
                }
            }
            let row: i64 = (0..dim).map(|j| self.cartan[i][j] * self.marks[j]).sum();
            let col: i64 = (0..dim).map(|j| self.comarks[j] * self.cartan[j][i]).sum();
            if row != 0 || col != 0 {
                return Err(Error::Inconsistent("marks are not null vectors".into()));
            }
        }
        Ok(())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Number of affine nodes, `n + 1`.
    pub fn num_nodes(&self) -> usize {
        self.n + 1
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn gram2(&self) -> &[Vec<i64>] {
        &self.gram2
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Coxeter exponent `m(i,j)`; `None` stands for infinity.
    pub fn coxeter_m(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(1);
        }
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => Some(2),
            1 => Some(3),
            2 => Some(4),
            3 => Some(6),
            _ => None,
        }
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i > self.n {
            Err(Error::IndexOutOfRange { index: i, max: self.n })
        } else {
            Ok(())
        }
    }

    /// `2 (x|y)` for finite vectors in simple-root coordinates.
    pub fn finite_form2(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                s += x[i] * self.gram2[i + 1][j + 1] * y[j];
            }
        }
        s
    }

    /// `(x|y)` for rational finite vectors.
    pub fn finite_form(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..self.n {
            for j in 0..self.n {
                s += &x[i] * &y[j] * Rational::from_integer(BigInt::from(self.gram2[i + 1][j + 1]));
            }
        }
        s / Rational::from_integer(BigInt::from(2))
    }

    pub fn is_finite_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        self.positive_roots.iter().any(|r| r.as_slice() == v || *r == neg)
    }

    /// Splits affine simple-root coordinates `c_0..c_n` into `finite + k delta`.
    pub fn root_from_affine_coords(&self, c: &[i64]) -> AffineRoot {
        let k = c[0];
        let finite = (0..self.n).map(|i| c[i + 1] - k * self.theta[i]).collect();
        AffineRoot { finite, delta: k }
    }

    pub fn root_to_affine_coords(&self, r: &AffineRoot) -> Vec<i64> {
        let mut c = vec![r.delta];
        c.extend((0..self.n).map(|i| r.finite[i] + r.delta * self.theta[i]));
        c
    }

    /// The simple root `alpha_i`; `alpha_0 = delta - theta`.
    pub fn simple_root(&self, i: usize) -> AffineRoot {
        let mut c = vec![0; self.n + 1];
        c[i] = 1;
        self.root_from_affine_coords(&c)
    }

    /// Coroot of a real affine root `a + k delta`: `a^vee + (2k/(a|a)) K`.
    pub fn coroot_of(&self, root: &AffineRoot) -> Result<AffineCoroot> {
        if root.finite.iter().all(|&c| c == 0) {
            return Err(Error::NotReal);
        }
        if !self.is_finite_root(&root.finite) {
            return Err(Error::NotReal);
        }
        let norm2 = self.finite_form2(&root.finite, &root.finite);
        let finite = (0..self.n)
            .map(|i| {
                Rational::new(
                    BigInt::from(root.finite[i] * self.gram2[i + 1][i + 1]),
                    BigInt::from(norm2),
                )
            })
            .collect();
        let k = Rational::new(BigInt::from(4 * root.delta), BigInt::from(norm2));
        Ok(AffineCoroot { finite, k })
    }

    /// The simple coroot `alpha_i^vee`, with `alpha_0^vee = K - theta^vee`.
    pub fn simple_coroot(&self, i: usize) -> AffineCoroot {
        self.coroot_of(&self.simple_root(i)).expect("simple roots are real")
    }

    /// `nu(omega_i^vee)` in simple-root coordinates, `1 <= i <= n`.
    pub fn nu_fundamental_coweight(&self, i: usize) -> Result<CoweightVector> {
        if i == 0 || i > self.n {
            return Err(Error::OutOfRange { index: i, lo: 1, hi: self.n });
        }
        // solve G x = e_i with G_jk = (alpha_j|alpha_k)
        let n = self.n;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let mut row: Vec<Rational> = (0..n)
                    .map(|k| Rational::new(BigInt::from(self.gram2[j + 1][k + 1]), BigInt::from(2)))
                    .collect();
                row.push(if j + 1 == i { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("form is nondegenerate");
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Ok(CoweightVector(m.into_iter().map(|row| row[n].clone()).collect()))
    }

    /// Coordinates `c_j = (alpha_j | mu)`; integral exactly when `mu` lies in `nu(P^vee)`.
    pub fn coweight_coords(&self, mu: &CoweightVector) -> Result<Vec<i64>> {
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            let v = self.finite_form(&e, &mu.0);
            if !v.is_integer() {
                return Err(Error::NotCoweight);
            }
            out.push(i64::try_from(v.to_integer()).map_err(|_| Error::NotCoweight)?);
        }
        Ok(out)
    }

    /// Inverse of [`coweight_coords`](Self::coweight_coords).
    pub fn coweight_from_coords(&self, c: &[i64]) -> CoweightVector {
        let mut acc = vec![Rational::zero(); self.n];
        for (i, &ci) in c.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            let w = self.nu_fundamental_coweight(i + 1).expect("index in range");
            for (a, b) in acc.iter_mut().zip(w.0.iter()) {
                *a += b * Rational::from_integer(BigInt::from(ci));
            }
        }
        CoweightVector(acc)
    }

    /// All permutations of `I_af` preserving the affine Cartan matrix.
    pub fn diagram_automorphisms(&self) -> Vec<Vec<usize>> {
        let dim = self.n + 1;
        let mut out = Vec::new();
        let mut perm = vec![usize::MAX; dim];
        let mut used = vec![false; dim];
        self.extend_automorphism(0, &mut perm, &mut used, &mut out);
        out.sort();
        out
    }

    fn extend_automorphism(
        &self,
        pos: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let dim = self.n + 1;
        if pos == dim {
            out.push(perm.clone());
            return;
        }
        for img in 0..dim {
            if used[img] {
                continue;
            }
            let ok = (0..pos).all(|q| {
                self.cartan[pos][q] == self.cartan[img][perm[q]]
                    && self.cartan[q][pos] == self.cartan[perm[q]][img]
            });
            if ok {
                perm[pos] = img;
                used[img] = true;
                self.extend_automorphism(pos + 1, perm, used, out);
                used[img] = false;
                perm[pos] = usize::MAX;
            }
        }
    }
}

impl AffineRoot {
    pub fn is_positive(&self) -> bool {
        if self.delta != 0 {
            return self.delta > 0;
        }
        self.finite.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> AffineRoot {
        AffineRoot { finite: self.finite.iter().map(|c| -c).collect(), delta: -self.delta }
    }
}

impl AffineCoroot {
    pub fn zero(n: usize) -> Self {
        AffineCoroot { finite: vec![Rational::zero(); n], k: Rational::zero() }
    }

    pub fn add_scaled(&mut self, other: &AffineCoroot, c: &Rational) {
        for (a, b) in self.finite.iter_mut().zip(other.finite.iter()) {
            *a += b * c;
        }
        self.k += &other.k * c;
    }

    pub fn neg(&self) -> AffineCoroot {
        AffineCoroot { finite: self.finite.iter().map(|c| -c).collect(), k: -self.k.clone() }
    }

    /// `Some(m)` when the coroot equals `m K` with `m` an integer.
    pub fn is_multiple_of_k(&self) -> Option<BigInt> {
        if self.finite.iter().all(|c| c.is_zero()) && self.k.is_integer() {
            Some(self.k.to_integer())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> Rational {
        Rational::from_integer(BigInt::from(a))
    }

    #[test]
    fn b3_comarks() {
        let cd = CartanData::new(Family::B, 3).unwrap();
        assert_eq!(cd.comarks(), &[1, 1, 2, 1]);
        assert_eq!(cd.marks(), &[1, 1, 2, 2]);
        assert_eq!(cd.theta(), &[1, 2, 2]);
    }

    #[test]
    fn a2_marks_all_one() {
        let cd = CartanData::new(Family::A, 2).unwrap();
        assert_eq!(cd.marks(), &[1, 1, 1]);
        assert_eq!(cd.comarks(), &[1, 1, 1]);
    }

    #[test]
    fn d4_diagram() {
        let cd = CartanData::new(Family::D, 4).unwrap();
        let a = cd.cartan_matrix();
        // nodes 0,1,3,4 are leaves attached to node 2
        for leaf in [0, 1, 3, 4] {
            assert_eq!(a[leaf][2], -1);
            for other in [0, 1, 3, 4] {
                if other != leaf {
                    assert_eq!(a[leaf][other], 0);
                }
            }
        }
        assert_eq!(cd.marks(), &[1, 1, 2, 1, 1]);
    }

    #[test]
    fn rank_too_small() {
        let e = CartanData::new(Family::D, 3).unwrap_err();
        assert_eq!(e, Error::RankTooSmall { family: Family::D, min: 4, got: 3 });
        assert!(CartanData::new(Family::A, 1).is_err());
    }

    #[test]
    fn coroot_examples_b3() {
        let cd = CartanData::new(Family::B, 3).unwrap();
        // alpha_0 = delta - theta
        let a0 = cd.simple_root(0);
        assert_eq!(a0, AffineRoot { finite: vec![-1, -2, -2], delta: 1 });
        let c0 = cd.coroot_of(&a0).unwrap();
        // theta^vee = a1^vee + 2 a2^vee + a3^vee
        assert_eq!(c0.finite, vec![q(-1), q(-2), q(-1)]);
        assert_eq!(c0.k, q(1));
        // simple alpha_2
        let c2 = cd.coroot_of(&cd.simple_root(2)).unwrap();
        assert_eq!(c2.finite, vec![q(0), q(1), q(0)]);
        assert_eq!(c2.k, q(0));
        // short root alpha_3 + delta
        let r = AffineRoot { finite: vec![0, 0, 1], delta: 1 };
        assert_eq!(cd.coroot_of(&r).unwrap().k, q(2));
        assert_eq!(cd.coroot_of(&AffineRoot { finite: vec![0, 0, 0], delta: 1 }), Err(Error::NotReal));
    }

    #[test]
    fn multiple_of_k() {
        let cd = CartanData::new(Family::B, 3).unwrap();
        let mut c = AffineCoroot::zero(3);
        c.k = q(2);
        assert_eq!(c.is_multiple_of_k(), Some(BigInt::from(2)));
        assert_eq!(cd.simple_coroot(1).is_multiple_of_k(), None);
        // a0^vee + a1^vee + 2 a2^vee + a3^vee = K
        let mut s = AffineCoroot::zero(3);
        for (i, &m) in cd.comarks().iter().enumerate() {
            s.add_scaled(&cd.simple_coroot(i), &q(m));
        }
        assert_eq!(s.is_multiple_of_k(), Some(BigInt::from(1)));
    }

    #[test]
    fn null_vectors_all_families() {
        for fam in Family::ALL {
            for n in fam.min_rank()..=7 {
                let cd = CartanData::new(fam, n).unwrap();
                let dim = n + 1;
                for i in 0..dim {
                    let r: i64 = (0..dim).map(|j| cd.a(i, j) * cd.marks()[j]).sum();
                    let c: i64 = (0..dim).map(|j| cd.comarks()[j] * cd.a(j, i)).sum();
                    assert_eq!((r, c), (0, 0), "{fam}{n}");
                }
            }
        }
    }

    #[test]
    fn root_counts() {
        let count = |f, n| CartanData::new(f, n).unwrap().positive_roots().len();
        assert_eq!(count(Family::A, 4), 10);
        assert_eq!(count(Family::B, 3), 9);
        assert_eq!(count(Family::C, 3), 9);
        assert_eq!(count(Family::D, 4), 12);
    }

    #[test]
    fn fundamental_coweights_are_dual() {
        for fam in Family::ALL {
            for n in fam.min_rank()..=6 {
                let cd = CartanData::new(fam, n).unwrap();
                for i in 1..=n {
                    let w = cd.nu_fundamental_coweight(i).unwrap();
                    let c = cd.coweight_coords(&w).unwrap();
                    for (j, &cj) in c.iter().enumerate() {
                        assert_eq!(cj, i64::from(j + 1 == i));
                    }
                }
            }
        }
    }

    #[test]
    fn coroot_is_odd_under_negation() {
        for fam in Family::ALL {
            let cd = CartanData::new(fam, fam.min_rank().max(3)).unwrap();
            for r in cd.positive_roots() {
                for k in -3..=3 {
                    let beta = AffineRoot { finite: r.clone(), delta: k };
                    let c = cd.coroot_of(&beta).unwrap();
                    assert_eq!(cd.coroot_of(&beta.neg()).unwrap(), c.neg());
                }
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        let count = |f, n| CartanData::new(f, n).unwrap().diagram_automorphisms().len();
        assert_eq!(count(Family::B, 3), 2);
        assert_eq!(count(Family::C, 3), 2);
        assert_eq!(count(Family::A, 3), 8);
        assert_eq!(count(Family::D, 5), 8);
        assert_eq!(count(Family::D, 4), 24);
    }
}

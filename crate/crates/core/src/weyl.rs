//! Affine Weyl group elements and the extended affine Weyl group.
//!
//! An element is stored as its integer matrix on the affine root lattice
//! `Q^ = Z alpha_0 + ... + Z alpha_n` (column `j` holds `w(alpha_j)`), together
//! with the inverse matrix. The level-zero action of `W_af` on `Q^` is faithful,
//! so equality and hashing are exact and need no word normalization. The
//! finite linear part and the translation vector are derived on demand.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::Path;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::cartan::{AffineRoot, CartanData, CoweightVector, Family};
use crate::error::{Error, Result};
use crate::Rational;

pub type Word = Vec<usize>;

/// Element of `W_af`.
#[derive(Clone)]
pub struct WeylElement {
    cd: Arc<CartanData>,
    fwd: Box<[i64]>,
    inv: Box<[i64]>,
    word: OnceLock<Arc<[usize]>>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.fwd == other.fwd
    }
}
impl Eq for WeylElement {}

impl Hash for WeylElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fwd.hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic order on canonical words.
impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.length()
            .cmp(&other.length())
            .then_with(|| self.canonical_word().cmp(other.canonical_word()))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElement({self})")
    }
}

/// `s3s2s0`, or `e` for the identity.
impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.canonical_word();
        if w.is_empty() {
            return f.write_str("e");
        }
        for i in w {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

fn identity_matrix(dim: usize) -> Box<[i64]> {
    let mut m = vec![0i64; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m.into_boxed_slice()
}

fn matmul(a: &[i64], b: &[i64], dim: usize) -> Box<[i64]> {
    let mut out = vec![0i64; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let x = a[i * dim + k];
            if x == 0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] += x * b[k * dim + j];
            }
        }
    }
    out.into_boxed_slice()
}

/// `M <- s_i M`: row i becomes `row_i - sum_j a_ij row_j`.
fn left_mul_simple(cd: &CartanData, m: &mut [i64], i: usize) {
    let dim = cd.num_nodes();
    let mut row = vec![0i64; dim];
    for j in 0..dim {
        let a = cd.a(i, j);
        if a == 0 {
            continue;
        }
        for c in 0..dim {
            row[c] += a * m[j * dim + c];
        }
    }
    for c in 0..dim {
        m[i * dim + c] -= row[c];
    }
}

/// `M <- M s_i`: column j becomes `col_j - a_ij col_i`.
fn right_mul_simple(cd: &CartanData, m: &mut [i64], i: usize) {
    let dim = cd.num_nodes();
    let col_i = column(m, dim, i);
    for j in 0..dim {
        let a = cd.a(i, j);
        if a == 0 {
            continue;
        }
        for r in 0..dim {
            m[r * dim + j] -= a * col_i[r];
        }
    }
}

fn column(m: &[i64], dim: usize, j: usize) -> Vec<i64> {
    (0..dim).map(|r| m[r * dim + j]).collect()
}

fn column_negative(m: &[i64], dim: usize, j: usize) -> bool {
    (0..dim).any(|r| m[r * dim + j] < 0)
}

fn apply(m: &[i64], dim: usize, v: &[i64]) -> Vec<i64> {
    (0..dim).map(|r| (0..dim).map(|c| m[r * dim + c] * v[c]).sum()).collect()
}

/// Sign of a real root in affine simple-root coordinates.
fn root_is_positive(c: &[i64]) -> bool {
    c.iter().all(|&x| x >= 0)
}

impl WeylElement {
    pub fn identity(cd: Arc<CartanData>) -> Self {
        let dim = cd.num_nodes();
        WeylElement {
            cd,
            fwd: identity_matrix(dim),
            inv: identity_matrix(dim),
            word: OnceLock::from(Arc::<[usize]>::from(Vec::new())),
        }
    }

    pub fn simple(cd: Arc<CartanData>, i: usize) -> Result<Self> {
        cd.check_node(i)?;
        let mut w = Self::identity(cd);
        w.left_mul_in_place(i);
        Ok(w)
    }

    /// Product `s_{w_1} s_{w_2} ... s_{w_k}`; the word need not be reduced.
    pub fn from_word(cd: Arc<CartanData>, word: &[usize]) -> Result<Self> {
        for &i in word {
            cd.check_node(i)?;
        }
        let mut w = Self::identity(cd);
        for &i in word.iter().rev() {
            w.left_mul_in_place(i);
        }
        Ok(w)
    }

    fn left_mul_in_place(&mut self, i: usize) {
        left_mul_simple(&self.cd, &mut self.fwd, i);
        right_mul_simple(&self.cd, &mut self.inv, i);
        self.word = OnceLock::new();
    }

    fn right_mul_in_place(&mut self, i: usize) {
        right_mul_simple(&self.cd, &mut self.fwd, i);
        left_mul_simple(&self.cd, &mut self.inv, i);
        self.word = OnceLock::new();
    }

    pub fn cartan(&self) -> &Arc<CartanData> {
        &self.cd
    }

    fn dim(&self) -> usize {
        self.cd.num_nodes()
    }

    /// `s_i w`.
    pub fn left_mul(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.left_mul_in_place(i);
        w
    }

    /// `w s_i`.
    pub fn right_mul(&self, i: usize) -> Self {
        let mut w = self.clone();
        w.right_mul_in_place(i);
        w
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let dim = self.dim();
        WeylElement {
            cd: self.cd.clone(),
            fwd: matmul(&self.fwd, &other.fwd, dim),
            inv: matmul(&other.inv, &self.inv, dim),
            word: OnceLock::new(),
        }
    }

    pub fn inverse(&self) -> Self {
        WeylElement {
            cd: self.cd.clone(),
            fwd: self.inv.clone(),
            inv: self.fwd.clone(),
            word: OnceLock::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self.fwd == *identity_matrix(self.dim())
    }

    pub fn has_left_descent(&self, i: usize) -> bool {
        column_negative(&self.inv, self.dim(), i)
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        column_negative(&self.fwd, self.dim(), i)
    }

    pub fn left_descents(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.has_left_descent(i)).collect()
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.has_right_descent(i)).collect()
    }

    /// Right descents contained in `{0}`.
    pub fn is_grassmannian(&self) -> bool {
        (1..self.dim()).all(|i| !self.has_right_descent(i))
    }

    /// Lexicographically smallest reduced word.
    pub fn canonical_word(&self) -> &[usize] {
        self.word.get_or_init(|| {
            let dim = self.dim();
            let mut cur = self.clone();
            let mut out = Vec::new();
            while let Some(i) = (0..dim).find(|&i| cur.has_left_descent(i)) {
                out.push(i);
                cur.left_mul_in_place(i);
            }
            debug_assert!(cur.is_identity());
            Arc::from(out)
        })
    }

    pub fn length(&self) -> usize {
        self.canonical_word().len()
    }

    /// Image of a vector of `Q^` in affine simple-root coordinates.
    pub fn act_on_coords(&self, c: &[i64]) -> Vec<i64> {
        apply(&self.fwd, self.dim(), c)
    }

    pub fn act_on_root(&self, r: &AffineRoot) -> AffineRoot {
        let c = self.cd.root_to_affine_coords(r);
        self.cd.root_from_affine_coords(&self.act_on_coords(&c))
    }

    /// The matrix of `w` on `Q^`, row-major.
    pub fn matrix(&self) -> &[i64] {
        &self.fwd
    }

    /// Finite part `w-bar` as an `n x n` matrix on the finite root lattice.
    pub fn linear_part(&self) -> Vec<Vec<i64>> {
        let n = self.cd.rank();
        let cols: Vec<AffineRoot> = (1..=n).map(|j| self.act_on_root(&self.cd.simple_root(j))).collect();
        (0..n).map(|r| (0..n).map(|c| cols[c].finite[r]).collect()).collect()
    }

    /// `mu` with `w = t_mu w-bar`, as a vector of the realization space.
    pub fn translation_part(&self) -> CoweightVector {
        let n = self.cd.rank();
        // w(alpha_j) = wbar(alpha_j) - (wbar alpha_j | mu) delta; pull back by wbar.
        let ks: Vec<i64> = (1..=n).map(|j| -self.act_on_root(&self.cd.simple_root(j)).delta).collect();
        let pulled = self.cd.coweight_from_coords(&ks);
        let lin = self.linear_part();
        let out = (0..n)
            .map(|r| {
                (0..n).fold(Rational::zero(), |acc, c| {
                    acc + &pulled.0[c] * Rational::from_integer(BigInt::from(lin[r][c]))
                })
            })
            .collect();
        CoweightVector(out)
    }

    /// Lifting-property test for `self <= w` in Bruhat order.
    pub fn bruhat_leq(&self, w: &WeylElement) -> bool {
        let mut v = self.clone();
        let mut w = w.clone();
        loop {
            let (lv, lw) = (v.length(), w.length());
            if lv > lw {
                return false;
            }
            if lw == 0 {
                return lv == 0;
            }
            if lv == 0 {
                return true;
            }
            let s = w.canonical_word()[0];
            if v.has_left_descent(s) {
                v = v.left_mul(s);
            }
            w = w.left_mul(s);
        }
    }

    /// All `v` covered by `self`, sorted.
    pub fn lower_covers(&self) -> Vec<WeylElement> {
        let word = self.canonical_word().to_vec();
        let l = word.len();
        let mut seen = HashSet::new();
        for k in 0..l {
            let mut sub = word.clone();
            sub.remove(k);
            let v = WeylElement::from_word(self.cd.clone(), &sub).expect("valid nodes");
            if v.length() + 1 == l {
                seen.insert(v);
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }
}

/// A reflection `t = s_beta` with its positive real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reflection {
    pub element: WeylElement,
    pub root: AffineRoot,
}

/// `t = v^{-1} w` for a Bruhat cover `v < w`, with its positive root.
pub fn cover_root(v: &WeylElement, w: &WeylElement) -> Result<Reflection> {
    if v.length() + 1 != w.length() || !v.bruhat_leq(w) {
        return Err(Error::NotCover(format!("{v} is not covered by {w}")));
    }
    let t = v.inverse().multiply(w);
    reflection_root(&t).map(|root| Reflection { element: t, root })
}

/// Positive root of a reflection, read off as the primitive generator of `im(t - 1)`.
pub fn reflection_root(t: &WeylElement) -> Result<AffineRoot> {
    let cd = t.cartan().clone();
    let dim = cd.num_nodes();
    let m = t.matrix();
    let mut beta: Option<Vec<i64>> = None;
    for j in 0..dim {
        let mut col = column(m, dim, j);
        col[j] -= 1;
        if col.iter().any(|&x| x != 0) {
            beta = Some(col);
            break;
        }
    }
    let mut beta = beta.ok_or_else(|| Error::Inconsistent("identity is not a reflection".into()))?;
    let g = beta.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    for x in beta.iter_mut() {
        *x /= g;
    }
    if !root_is_positive(&beta) {
        for x in beta.iter_mut() {
            *x = -*x;
        }
    }
    if !root_is_positive(&beta) {
        return Err(Error::Inconsistent("reflection vector has mixed signs".into()));
    }
    let root = cd.root_from_affine_coords(&beta);
    if !cd.is_finite_root(&root.finite) {
        return Err(Error::Inconsistent(format!("{root:?} is not a real root")));
    }
    // s_beta(alpha_j) = alpha_j - <beta^vee, alpha_j> beta must reproduce t
    let g2 = cd.gram2();
    let form = |x: &[i64], y: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..dim {
            for k in 0..dim {
                s += x[i] * g2[i][k] * y[k];
            }
        }
        s
    };
    let norm = form(&beta, &beta);
    for j in 0..dim {
        let mut e = vec![0; dim];
        e[j] = 1;
        let num = 2 * form(&beta, &e);
        if num % norm != 0 {
            return Err(Error::Inconsistent("non-integral reflection".into()));
        }
        let pair = num / norm;
        let expect: Vec<i64> = (0..dim).map(|r| e[r] - pair * beta[r]).collect();
        if expect != column(m, dim, j) {
            return Err(Error::Inconsistent(format!("t is not the reflection in {root:?}")));
        }
    }
    Ok(root)
}

/// An element `w tau` of the extended affine Weyl group, `w` in `W_af` and
/// `tau` a diagram automorphism (so `tau s_i tau^{-1} = s_{tau(i)}`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedElement {
    /// `tau(j)` is the image of node `j`.
    pub tau: Vec<usize>,
    pub body: WeylElement,
}

impl ExtendedElement {
    /// Factors an invertible matrix on `Q^` that permutes the affine roots.
    pub fn from_matrix(cd: Arc<CartanData>, m: &[i64]) -> Result<Self> {
        let dim = cd.num_nodes();
        let mut cur = m.to_vec();
        let mut stripped = Vec::new();
        let bound = 4 * dim * dim * 64;
        while let Some(j) = (0..dim).find(|&j| column_negative(&cur, dim, j)) {
            right_mul_simple(&cd, &mut cur, j);
            stripped.push(j);
            if stripped.len() > bound {
                return Err(Error::Inconsistent("descent stripping did not terminate".into()));
            }
        }
        // what remains sends simple roots to simple roots
        let mut tau = vec![usize::MAX; dim];
        for j in 0..dim {
            let col = column(&cur, dim, j);
            let hits: Vec<usize> = (0..dim).filter(|&r| col[r] != 0).collect();
            if hits.len() != 1 || col[hits[0]] != 1 {
                return Err(Error::Inconsistent("residual map is not a diagram automorphism".into()));
            }
            tau[j] = hits[0];
        }
        for i in 0..dim {
            for j in 0..dim {
                if cd.a(i, j) != cd.a(tau[i], tau[j]) {
                    return Err(Error::Inconsistent("residual permutation does not preserve the Cartan matrix".into()));
                }
            }
        }
        // m s_{j1} ... s_{jk} = tau, so m = tau s_{jk} ... s_{j1} = s_{tau(jk)} ... s_{tau(j1)} tau
        let body_word: Vec<usize> = stripped.iter().rev().map(|&j| tau[j]).collect();
        let body = WeylElement::from_word(cd, &body_word)?;
        Ok(ExtendedElement { tau, body })
    }

    pub fn matrix(&self) -> Vec<i64> {
        let dim = self.tau.len();
        let mut p = vec![0i64; dim * dim];
        for j in 0..dim {
            p[self.tau[j] * dim + j] = 1;
        }
        matmul(self.body.matrix(), &p, dim).into_vec()
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let dim = self.tau.len();
        let m = matmul(&self.matrix(), &other.matrix(), dim);
        ExtendedElement::from_matrix(self.body.cartan().clone(), &m)
    }

    pub fn tau_is_identity(&self) -> bool {
        self.tau.iter().enumerate().all(|(i, &t)| i == t)
    }
}

/// Matrix of `t_mu` on `Q^` given `c_j = (alpha_j | mu)`:
/// `alpha + k delta -> alpha + (k - (alpha|mu)) delta`.
fn translation_matrix(cd: &CartanData, c: &[i64]) -> Vec<i64> {
    let dim = cd.num_nodes();
    let marks = cd.marks();
    let theta = cd.theta();
    let mut m = identity_matrix(dim).into_vec();
    // alpha_j -> alpha_j - c_j delta, j >= 1
    for j in 1..dim {
        for r in 0..dim {
            m[r * dim + j] -= c[j - 1] * marks[r];
        }
    }
    // alpha_0 -> alpha_0 + (theta|mu) delta
    let th: i64 = theta.iter().zip(c).map(|(a, b)| a * b).sum();
    for r in 0..dim {
        m[r * dim] += th * marks[r];
    }
    m
}

/// Factor the translation by `mu` as `w tau`.
pub fn translation(cd: &Arc<CartanData>, mu: &CoweightVector) -> Result<ExtendedElement> {
    let c = cd.coweight_coords(mu)?;
    translation_from_coords(cd, &c)
}

/// Like [`translation`] with `mu` given by `c_j = (alpha_j | mu)`.
pub fn translation_from_coords(cd: &Arc<CartanData>, c: &[i64]) -> Result<ExtendedElement> {
    ExtendedElement::from_matrix(cd.clone(), &translation_matrix(cd, c))
}

/// Orbit of a coweight (in `c_j` coordinates) under the finite Weyl group.
pub fn finite_orbit(cd: &CartanData, c: &[i64]) -> Vec<Vec<i64>> {
    let n = cd.rank();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = vec![c.to_vec()];
    seen.insert(c.to_vec());
    let mut idx = 0;
    while idx < queue.len() {
        let cur = queue[idx].clone();
        idx += 1;
        for j in 1..=n {
            let cj = cur[j - 1];
            if cj == 0 {
                continue;
            }
            // (alpha_k | s_j mu) = (s_j alpha_k | mu) = c_k - a_jk c_j
            let img: Vec<i64> = (1..=n).map(|k| cur[k - 1] - cd.a(j, k) * cj).collect();
            if seen.insert(img.clone()) {
                queue.push(img);
            }
        }
    }
    queue.sort();
    queue
}

/// Group context: shared Cartan data plus caches of generated elements.
pub struct WeylGroup {
    cd: Arc<CartanData>,
    grassmannian: Mutex<Vec<Vec<WeylElement>>>,
    by_length: Mutex<Vec<Vec<WeylElement>>>,
}

impl fmt::Debug for WeylGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylGroup({}{})", self.cd.family(), self.cd.rank())
    }
}

impl WeylGroup {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        Ok(Self::from_cartan(Arc::new(CartanData::new(family, n)?)))
    }

    pub fn from_cartan(cd: Arc<CartanData>) -> Self {
        let e = WeylElement::identity(cd.clone());
        WeylGroup {
            cd,
            grassmannian: Mutex::new(vec![vec![e.clone()]]),
            by_length: Mutex::new(vec![vec![e]]),
        }
    }

    pub fn cartan(&self) -> &Arc<CartanData> {
        &self.cd
    }

    pub fn family(&self) -> Family {
        self.cd.family()
    }

    pub fn rank(&self) -> usize {
        self.cd.rank()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.cd.clone())
    }

    pub fn simple(&self, i: usize) -> Result<WeylElement> {
        WeylElement::simple(self.cd.clone(), i)
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        WeylElement::from_word(self.cd.clone(), word)
    }

    /// Parses `3 2 0`, `3,2,0`, `s3s2s0` or (for rank below 10) `320`.
    pub fn parse(&self, s: &str) -> Result<WeylElement> {
        let w = parse_word(s)?;
        self.from_word(&w)
    }

    /// Like [`parse`](Self::parse) but rejects words that are not reduced.
    pub fn parse_reduced(&self, s: &str) -> Result<WeylElement> {
        let w = parse_word(s)?;
        let e = self.from_word(&w)?;
        if e.length() != w.len() {
            return Err(Error::Parse { pos: 0, msg: format!("word `{s}` is not reduced") });
        }
        Ok(e)
    }

    pub fn translation(&self, mu: &CoweightVector) -> Result<ExtendedElement> {
        translation(&self.cd, mu)
    }

    /// Grassmannian elements graded by length, `0..=max_length`.
    pub fn grassmannian_elements(&self, max_length: usize) -> Vec<Vec<WeylElement>> {
        let mut levels = self.grassmannian.lock().expect("cache lock");
        while levels.len() <= max_length {
            let prev = levels.last().expect("level 0 present");
            let mut next: HashSet<WeylElement> = HashSet::new();
            for w in prev {
                for i in 0..self.cd.num_nodes() {
                    if w.has_left_descent(i) {
                        continue;
                    }
                    let u = w.left_mul(i);
                    if u.is_grassmannian() {
                        next.insert(u);
                    }
                }
            }
            let mut next: Vec<_> = next.into_iter().collect();
            next.sort();
            levels.push(next);
        }
        levels[..=max_length].to_vec()
    }

    /// All elements of length exactly `l`.
    pub fn elements_of_length(&self, l: usize) -> Vec<WeylElement> {
        let mut levels = self.by_length.lock().expect("cache lock");
        while levels.len() <= l {
            let prev = levels.last().expect("level 0 present");
            let mut next: HashSet<WeylElement> = HashSet::new();
            for w in prev {
                for i in 0..self.cd.num_nodes() {
                    if !w.has_left_descent(i) {
                        next.insert(w.left_mul(i));
                    }
                }
            }
            let mut next: Vec<_> = next.into_iter().collect();
            next.sort();
            levels.push(next);
        }
        levels[l].clone()
    }

    /// Writes the graded Grassmannian list: header `family n max_length`, then one word per line.
    pub fn save_grassmannian_cache(&self, path: &Path, max_length: usize) -> std::io::Result<()> {
        let mut s = format!("{} {} {}\n", self.cd.family(), self.cd.rank(), max_length);
        for level in self.grassmannian_elements(max_length) {
            for w in level {
                let words: Vec<String> = w.canonical_word().iter().map(|i| i.to_string()).collect();
                s.push_str(&words.join(" "));
                s.push('\n');
            }
        }
        std::fs::write(path, s)
    }

    /// Loads a cache written by [`save_grassmannian_cache`](Self::save_grassmannian_cache).
    /// Returns `None` when the header does not match this group or covers fewer lengths.
    /// A successful load also fills the in-memory cache.
    pub fn load_grassmannian_cache(&self, path: &Path, max_length: usize) -> Result<Option<Vec<Vec<WeylElement>>>> {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(_) => return Ok(None),
        };
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap_or("").split_whitespace().collect();
        if header.len() != 3
            || header[0] != self.cd.family().to_string()
            || header[1] != self.cd.rank().to_string()
        {
            return Ok(None);
        }
        let stored: usize = header[2].parse().map_err(|_| Error::Parse { pos: 0, msg: "bad cache header".into() })?;
        if stored < max_length {
            return Ok(None);
        }
        let mut levels = vec![Vec::new(); max_length + 1];
        for line in lines {
            let w = self.parse_reduced(line)?;
            if !w.is_grassmannian() {
                return Err(Error::NotGrassmannian(w.to_string()));
            }
            if w.length() <= max_length {
                levels[w.length()].push(w);
            }
        }
        for l in levels.iter_mut() {
            l.sort();
        }
        let mut cached = self.grassmannian.lock().expect("cache lock");
        if cached.len() < levels.len() {
            *cached = levels.clone();
        }
        Ok(Some(levels))
    }
}

/// Parses a word over `I_af`. The empty string is the identity.
pub fn parse_word(s: &str) -> Result<Word> {
    let t = s.trim();
    if t.is_empty() || t == "e" || t == "id" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    const SEPARATORS: [char; 4] = [' ', ',', 's', '\t'];
    if t.contains(SEPARATORS) {
        for (pos, tok) in t.split(SEPARATORS).enumerate() {
            if tok.is_empty() {
                continue;
            }
            let v = tok
                .parse::<usize>()
                .map_err(|_| Error::Parse { pos, msg: format!("bad letter `{tok}`") })?;
            out.push(v);
        }
    } else {
        for (pos, ch) in t.chars().enumerate() {
            let d = ch.to_digit(10).ok_or_else(|| Error::Parse { pos, msg: format!("bad letter `{ch}`") })?;
            out.push(d as usize);
        }
    }
    Ok(out)
}

/// Formats a word with single spaces.
pub fn format_word(w: &[usize]) -> String {
    w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

/// Every element obtained as a product of a subword of `word`.
pub fn subword_products(cd: &Arc<CartanData>, word: &[usize]) -> HashSet<WeylElement> {
    // forward DP over prefixes: reachable set after each letter
    let mut reach: HashSet<WeylElement> = HashSet::new();
    reach.insert(WeylElement::identity(cd.clone()));
    for &i in word {
        let mut next = reach.clone();
        for w in &reach {
            next.insert(w.right_mul(i));
        }
        reach = next;
    }
    reach
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b3() -> WeylGroup {
        WeylGroup::new(Family::B, 3).unwrap()
    }

    #[test]
    fn coxeter_relations_b3() {
        let g = b3();
        let e = g.identity();
        let s0 = g.simple(0).unwrap();
        let s1 = g.simple(1).unwrap();
        let s2 = g.simple(2).unwrap();
        assert_eq!(s0.multiply(&s1), s1.multiply(&s0));
        assert_eq!(s0.multiply(&s0), e);
        let s02 = s0.multiply(&s2);
        assert_eq!(s02.multiply(&s02).multiply(&s02), e);
        assert_ne!(s02.multiply(&s02), e);
        assert!(g.simple(4).is_err());
    }

    #[test]
    fn relations_match_m_table() {
        for fam in Family::ALL {
            let g = WeylGroup::new(fam, fam.min_rank().max(3)).unwrap();
            let cd = g.cartan();
            for i in 0..cd.num_nodes() {
                for j in 0..cd.num_nodes() {
                    let Some(m) = cd.coxeter_m(i, j) else { continue };
                    let p = g.from_word(&[i, j]).unwrap();
                    let mut acc = g.identity();
                    for k in 1..=m {
                        acc = acc.multiply(&p);
                        assert_eq!(acc.is_identity(), k == m, "{fam} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn lengths_and_words() {
        let g = b3();
        assert_eq!(g.identity().length(), 0);
        assert!(g.identity().canonical_word().is_empty());
        let rho = g.from_word(&[0, 2, 3, 2, 0]).unwrap();
        assert_eq!(rho.length(), 5);
        let w = g.from_word(&[3, 0]).unwrap();
        assert_eq!(w.canonical_word(), &[0, 3]);
        for n in 3..=5 {
            let g = WeylGroup::new(Family::B, n).unwrap();
            let mut word = vec![0];
            word.extend(2..=n);
            word.extend((2..n).rev());
            word.push(0);
            assert_eq!(g.from_word(&word).unwrap().length(), 2 * n - 1);
        }
    }

    #[test]
    fn descents() {
        let g = b3();
        assert!(g.identity().left_descents().is_empty());
        let s0 = g.simple(0).unwrap();
        assert_eq!(s0.left_descents(), vec![0]);
        assert_eq!(s0.right_descents(), vec![0]);
        let w = g.from_word(&[2, 0]).unwrap();
        assert_eq!(w.right_descents(), vec![0]);
        assert_eq!(w.left_descents(), vec![2]);
    }

    #[test]
    fn covers_b3() {
        let g = b3();
        let w = g.from_word(&[2, 0]).unwrap();
        let covers = w.lower_covers();
        let s0 = g.simple(0).unwrap();
        let s2 = g.simple(2).unwrap();
        assert_eq!(covers, {
            let mut v = vec![s0.clone(), s2.clone()];
            v.sort();
            v
        });
        assert!(!g.simple(1).unwrap().bruhat_leq(&s0));
        assert!(g.identity().bruhat_leq(&w));

        let r = cover_root(&g.identity(), &s2).unwrap();
        assert_eq!(r.root, g.cartan().simple_root(2));
        let r = cover_root(&s2, &w).unwrap();
        assert_eq!(r.root, g.cartan().simple_root(0));
        assert_eq!(r.element, s0);
        let r = cover_root(&s0, &w).unwrap();
        // s0(alpha_2) = alpha_2 + alpha_0
        assert_eq!(g.cartan().root_to_affine_coords(&r.root), vec![1, 0, 1, 0]);
        assert_eq!(r.root.delta, 1);
        assert!(cover_root(&g.simple(1).unwrap(), &w).is_err());
    }

    #[test]
    fn grassmannian_counts_b3() {
        let g = b3();
        let levels = g.grassmannian_elements(5);
        let counts: Vec<usize> = levels.iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 2, 3]);
        let l3: Vec<String> = levels[3].iter().map(|w| w.to_string()).collect();
        assert_eq!(l3, vec!["s1s2s0", "s3s2s0"]);
        assert_eq!(g.grassmannian_elements(0), vec![vec![g.identity()]]);
    }

    #[test]
    fn translation_type_b() {
        for n in 3..=5 {
            let g = WeylGroup::new(Family::B, n).unwrap();
            let mu = g.cartan().nu_fundamental_coweight(1).unwrap();
            let t = g.translation(&mu).unwrap();
            let mut tau: Vec<usize> = (0..=n).collect();
            tau.swap(0, 1);
            assert_eq!(t.tau, tau);
            let mut word = vec![0];
            word.extend(2..=n);
            word.extend((2..n).rev());
            word.push(0);
            assert_eq!(t.body, g.from_word(&word).unwrap());
            let zero = g.translation(&g.cartan().coweight_from_coords(&vec![0; n])).unwrap();
            assert!(zero.tau_is_identity() && zero.body.is_identity());
        }
    }

    #[test]
    fn translation_type_a() {
        // nodes 0..n, so the SL(n) word s_{n-1} ... s_2 becomes s_n ... s_2 here
        for n in 2..=5 {
            let g = WeylGroup::new(Family::A, n).unwrap();
            let mu = g.cartan().nu_fundamental_coweight(1).unwrap();
            let t = g.translation(&mu).unwrap();
            let mut word = vec![0];
            word.extend((2..=n).rev());
            assert_eq!(t.body, g.from_word(&word).unwrap(), "A{n}");
        }
    }

    #[test]
    fn translation_additive() {
        let g = b3();
        let cd = g.cartan();
        let a = translation_from_coords(cd, &[1, -1, 2]).unwrap();
        let b = translation_from_coords(cd, &[0, 2, -2]).unwrap();
        let ab = translation_from_coords(cd, &[1, 1, 0]).unwrap();
        assert_eq!(a.multiply(&b).unwrap(), ab);
    }

    #[test]
    fn linear_and_translation_parts() {
        let g = b3();
        let cd = g.cartan();
        let mu = cd.coweight_from_coords(&[0, 1, 0]);
        let t = g.translation(&mu).unwrap();
        assert!(t.tau_is_identity());
        assert_eq!(t.body.translation_part(), mu);
        let lin = t.body.linear_part();
        for (i, row) in lin.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, i64::from(i == j));
            }
        }
        // s_0 = t_{theta^vee} s_theta
        let s0 = g.simple(0).unwrap();
        let th = s0.translation_part();
        let th_coords = cd.coweight_coords(&th).unwrap();
        // (alpha_j | theta^vee) for theta = a1 + 2a2 + 2a3
        assert_eq!(th_coords, vec![0, 1, 0]);
    }

    #[test]
    fn parse_words() {
        assert_eq!(parse_word("3 2 0").unwrap(), vec![3, 2, 0]);
        assert_eq!(parse_word("3,2,0").unwrap(), vec![3, 2, 0]);
        assert_eq!(parse_word("s3s2s0").unwrap(), vec![3, 2, 0]);
        assert_eq!(parse_word("320").unwrap(), vec![3, 2, 0]);
        assert_eq!(parse_word("").unwrap(), Vec::<usize>::new());
        assert!(parse_word("3x").is_err());
        let g = b3();
        assert!(g.parse_reduced("0 0").is_err());
    }

    #[test]
    fn cache_round_trip() {
        let g = b3();
        let dir = std::env::temp_dir().join(format!("assf-cache-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("b3.txt");
        g.save_grassmannian_cache(&path, 6).unwrap();
        let loaded = g.load_grassmannian_cache(&path, 5).unwrap().unwrap();
        assert_eq!(loaded, g.grassmannian_elements(5));
        assert!(g.load_grassmannian_cache(&path, 7).unwrap().is_none());
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn orbit_sizes() {
        let cd = CartanData::new(Family::B, 3).unwrap();
        assert_eq!(finite_orbit(&cd, &[1, 0, 0]).len(), 6);
        let cd = CartanData::new(Family::A, 4).unwrap();
        assert_eq!(finite_orbit(&cd, &[1, 0, 0, 0]).len(), 5);
        let cd = CartanData::new(Family::D, 4).unwrap();
        assert_eq!(finite_orbit(&cd, &[1, 0, 0, 0]).len(), 8);
    }
}

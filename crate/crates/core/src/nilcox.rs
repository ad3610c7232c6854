//! The nilCoxeter algebra over the rationals, Pieri elements, the type D
//! element `epsilon`, the membership test for the affine Fomin-Stanley
//! subalgebra and a linear solver for noncommutative k-Schur elements.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cartan::{AffineCoroot, Family};
use crate::error::{Error, Result};
use crate::linalg::{RowStatus, SparseRow, SparseSystem};
use crate::pieri::{pieri_factors, rho, support_profile, PieriFactorSet};
use crate::weyl::{cover_root, format_word, Word, WeylElement, WeylGroup};
use crate::Rational;

pub(crate) fn q(a: i64) -> Rational {
    Rational::from_integer(BigInt::from(a))
}

pub(crate) fn pow2(e: i64) -> Rational {
    let p = Rational::from_integer(BigInt::one() << e.unsigned_abs());
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

/// `s_w s_v` when lengths add, by pushing the letters of `v` one at a time.
pub fn length_additive_product(w: &WeylElement, v: &WeylElement) -> Option<WeylElement> {
    let mut u = w.clone();
    for &i in v.canonical_word() {
        if u.has_right_descent(i) {
            return None;
        }
        u = u.right_mul(i);
    }
    Some(u)
}

/// A finite combination `sum c_w A_w` with no stored zeros.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct NilCoxElement {
    terms: BTreeMap<WeylElement, Rational>,
}

impl NilCoxElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `A_identity`.
    pub fn one(group: &WeylGroup) -> Self {
        Self::basis(group.identity())
    }

    pub fn basis(w: WeylElement) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Rational::one());
        NilCoxElement { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (WeylElement, Rational)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in it {
            out.add_term(w, &c);
        }
        out
    }

    pub fn add_term(&mut self, w: WeylElement, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    pub fn coeff(&self, w: &WeylElement) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> &BTreeMap<WeylElement, Rational> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeylElement, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common length of all keys, `None` if mixed. Zero is homogeneous of degree 0.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.length());
        let d = it.next().unwrap_or(0);
        it.all(|l| l == d).then_some(d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NilCoxElement { terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    /// Keys with coefficient, as `(coefficient, word)` TSV lines.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for (w, c) in &self.terms {
            s.push_str(&format!("{}\t{}\n", c, format_word(w.canonical_word())));
        }
        s
    }

    /// Whether all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Keeps the terms whose key satisfies `f`.
    pub fn filter(&self, f: impl Fn(&WeylElement) -> bool) -> Self {
        NilCoxElement { terms: self.terms.iter().filter(|(w, _)| f(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }
}

impl fmt::Debug for NilCoxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NilCoxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "A[{}]", format_word(w.canonical_word()))?;
        }
        Ok(())
    }
}

impl Add for &NilCoxElement {
    type Output = NilCoxElement;
    fn add(self, rhs: &NilCoxElement) -> NilCoxElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &NilCoxElement {
    type Output = NilCoxElement;
    fn sub(self, rhs: &NilCoxElement) -> NilCoxElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), &-c);
        }
        out
    }
}

impl Neg for &NilCoxElement {
    type Output = NilCoxElement;
    fn neg(self) -> NilCoxElement {
        self.scale(&q(-1))
    }
}

impl Mul for &NilCoxElement {
    type Output = NilCoxElement;
    fn mul(self, rhs: &NilCoxElement) -> NilCoxElement {
        let mut acc: HashMap<WeylElement, Rational> = HashMap::new();
        for (w, a) in &self.terms {
            for (v, b) in &rhs.terms {
                if let Some(u) = length_additive_product(w, v) {
                    *acc.entry(u).or_insert_with(Rational::zero) += a * b;
                }
            }
        }
        NilCoxElement { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

/// Outcome of the membership test.
#[derive(Debug, Clone, Serialize)]
pub struct Membership {
    pub passed: bool,
    /// First `v` (in the canonical order) whose cover sum is not in `Z K`.
    pub witness: Option<String>,
    /// The offending cover-coroot sum: finite part in simple coroot coordinates, then the `K` coefficient.
    pub coroot_sum: Option<Vec<String>>,
}

/// The noncommutative k-Schur element of a Grassmannian index.
#[derive(Debug, Clone)]
pub struct KSchurElement {
    pub index: WeylElement,
    pub value: NilCoxElement,
    pub integral: bool,
}

/// One evaluated relation.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub name: String,
    pub m: usize,
    pub vanishes: bool,
    pub nonzero_terms: usize,
}

/// One instance of a cover identity.
#[derive(Debug, Clone, Serialize)]
pub struct CoverCheck {
    pub v: String,
    pub holds: bool,
}

type CoverList = Arc<Vec<(WeylElement, AffineCoroot)>>;

/// Shared state for one affine type: the group, its Pieri factors and caches
/// for cover coroots and solved k-Schur elements.
pub struct NilCoxContext {
    group: WeylGroup,
    pf: PieriFactorSet,
    covers: Mutex<HashMap<WeylElement, CoverList>>,
    kschur: Mutex<HashMap<WeylElement, KSchurElement>>,
    upper_in_z: Mutex<Option<HashMap<WeylElement, Vec<WeylElement>>>>,
}

impl fmt::Debug for NilCoxContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NilCoxContext({}{})", self.group.family(), self.group.rank())
    }
}

impl NilCoxContext {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        Self::from_group(WeylGroup::new(family, n)?)
    }

    pub fn from_group(group: WeylGroup) -> Result<Self> {
        let pf = pieri_factors(&group)?;
        Ok(NilCoxContext {
            group,
            pf,
            covers: Mutex::new(HashMap::new()),
            kschur: Mutex::new(HashMap::new()),
            upper_in_z: Mutex::new(None),
        })
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn factors(&self) -> &PieriFactorSet {
        &self.pf
    }

    pub fn family(&self) -> Family {
        self.group.family()
    }

    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// Lower covers of `w` with their cover coroots.
    pub fn lower_covers_with_coroots(&self, w: &WeylElement) -> CoverList {
        if let Some(c) = self.covers.lock().expect("cache lock").get(w) {
            return c.clone();
        }
        let cd = self.group.cartan();
        let list: Vec<(WeylElement, AffineCoroot)> = w
            .lower_covers()
            .into_iter()
            .map(|v| {
                let r = cover_root(&v, w).expect("lower covers are covers");
                let c = cd.coroot_of(&r.root).expect("cover roots are real");
                (v, c)
            })
            .collect();
        let list = Arc::new(list);
        self.covers.lock().expect("cache lock").insert(w.clone(), list.clone());
        list
    }

    /// `sum_{w covers v} c_w alpha_vw^vee` for every `v` below the support.
    pub fn cover_sums(&self, a: &NilCoxElement) -> BTreeMap<WeylElement, AffineCoroot> {
        let n = self.rank();
        let mut sums: BTreeMap<WeylElement, AffineCoroot> = BTreeMap::new();
        for (w, c) in a.iter() {
            for (v, cor) in self.lower_covers_with_coroots(w).iter() {
                sums.entry(v.clone()).or_insert_with(|| AffineCoroot::zero(n)).add_scaled(cor, c);
            }
        }
        sums
    }

    /// Membership in the affine Fomin-Stanley subalgebra, by the cover coroot criterion.
    pub fn verify_in_b(&self, a: &NilCoxElement) -> Result<Membership> {
        if a.degree().is_none() {
            return Err(Error::NonHomogeneous);
        }
        for (v, s) in self.cover_sums(a) {
            if s.is_multiple_of_k().is_none() {
                let mut parts: Vec<String> = s.finite.iter().map(|x| x.to_string()).collect();
                parts.push(s.k.to_string());
                return Ok(Membership { passed: false, witness: Some(v.to_string()), coroot_sum: Some(parts) });
            }
        }
        Ok(Membership { passed: true, witness: None, coroot_sum: None })
    }

    /// The unique element of the subalgebra of the form `A_w + sum_u c_u A_u`
    /// with `u` non-Grassmannian.
    pub fn kschur_solver(&self, w: &WeylElement) -> Result<KSchurElement> {
        if !w.is_grassmannian() {
            return Err(Error::NotGrassmannian(w.to_string()));
        }
        if let Some(k) = self.kschur.lock().expect("cache lock").get(w) {
            return Ok(k.clone());
        }
        let res = self.solve_uncached(w)?;
        self.kschur.lock().expect("cache lock").insert(w.clone(), res.clone());
        Ok(res)
    }

    fn solve_uncached(&self, w: &WeylElement) -> Result<KSchurElement> {
        let d = w.length();
        if d == 0 {
            return Ok(KSchurElement { index: w.clone(), value: NilCoxElement::basis(w.clone()), integral: true });
        }
        let n = self.rank();
        let level = self.group.elements_of_length(d);
        // v -> upper covers among level
        let mut up: HashMap<WeylElement, Vec<usize>> = HashMap::new();
        let lists: Vec<CoverList> = level.iter().map(|u| self.lower_covers_with_coroots(u)).collect();
        for (k, l) in lists.iter().enumerate() {
            for (v, _) in l.iter() {
                up.entry(v.clone()).or_default().push(k);
            }
        }
        let w_idx = level.iter().position(|u| u == w).expect("w has length d");
        // connected component of w through shared lower covers, restricted to unknowns
        let mut in_comp = vec![false; level.len()];
        let mut vs: BTreeSet<WeylElement> = BTreeSet::new();
        let mut queue = VecDeque::from([w_idx]);
        in_comp[w_idx] = true;
        while let Some(k) = queue.pop_front() {
            for (v, _) in lists[k].iter() {
                if !vs.insert(v.clone()) {
                    continue;
                }
                for &j in &up[v] {
                    if !in_comp[j] && !level[j].is_grassmannian() {
                        in_comp[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
        let unknowns: Vec<usize> = (0..level.len()).filter(|&k| in_comp[k] && k != w_idx).collect();
        let col: HashMap<usize, usize> = unknowns.iter().enumerate().map(|(c, &k)| (k, c)).collect();
        let mut sys = SparseSystem::new(unknowns.len());
        for v in &vs {
            let mut rows: Vec<SparseRow> = vec![SparseRow::new(); n];
            let mut rhs: Vec<Rational> = vec![Rational::zero(); n];
            for &k in &up[v] {
                let cor = &lists[k].iter().find(|(x, _)| x == v).expect("cover recorded").1;
                if k == w_idx {
                    for i in 0..n {
                        rhs[i] -= &cor.finite[i];
                    }
                } else if let Some(&c) = col.get(&k) {
                    for i in 0..n {
                        if !cor.finite[i].is_zero() {
                            *rows[i].entry(c).or_insert_with(Rational::zero) += &cor.finite[i];
                        }
                    }
                }
            }
            for (row, r) in rows.into_iter().zip(rhs) {
                if sys.add_equation(row, r) == RowStatus::Inconsistent {
                    return Err(Error::Inconsistent(format!("no k-Schur element for {w}")));
                }
            }
        }
        let x = sys
            .unique_solution()
            .ok_or_else(|| Error::Inconsistent(format!("k-Schur element for {w} is not unique")))?;
        let mut value = NilCoxElement::basis(w.clone());
        for (c, &k) in unknowns.iter().enumerate() {
            value.add_term(level[k].clone(), &x[c]);
        }
        let check = self.verify_in_b(&value)?;
        if !check.passed {
            return Err(Error::Inconsistent(format!("solved element for {w} fails membership")));
        }
        let integral = value.is_integral();
        Ok(KSchurElement { index: w.clone(), value, integral })
    }

    /// Largest `r` with a Pieri element.
    pub fn max_pieri_index(&self) -> usize {
        self.pf.max_length()
    }

    /// The weight of `A_w` in the displayed Pieri sum.
    fn pieri_weight(&self, w: &WeylElement, r: usize) -> Rational {
        let n = self.rank() as i64;
        let p = support_profile(w);
        let below = i64::from((r as i64) < n);
        match self.family() {
            Family::A => Rational::one(),
            Family::C => pow2(p.c as i64 - 1),
            Family::B | Family::D => pow2(p.cc as i64 - below),
        }
    }

    /// The displayed sum `sum_{w in Z_r} weight(w) A_w`, with `Z_0 = {1}`.
    pub fn pieri_formula(&self, r: usize) -> Result<NilCoxElement> {
        if r == 0 {
            return Ok(NilCoxElement::one(&self.group));
        }
        if r > self.max_pieri_index() {
            return Err(Error::OutOfRange { index: r, lo: 0, hi: self.max_pieri_index() });
        }
        Ok(NilCoxElement::from_terms(self.pf.level(r).iter().map(|w| (w.clone(), self.pieri_weight(w, r)))))
    }

    /// The Pieri element `P_r`. In type D at `r = n-1` it is the average of the
    /// k-Schur elements of the two Grassmannian elements of `Z_{n-1}`.
    pub fn pieri_element(&self, r: usize) -> Result<NilCoxElement> {
        if self.family() == Family::D && r + 1 == self.rank() {
            let (a, b) = self.rho_pair()?;
            return Ok((&a + &b).scale(&Rational::new(BigInt::one(), BigInt::from(2))));
        }
        self.pieri_formula(r)
    }

    /// The Grassmannian element(s) of `Z_r`.
    pub fn rho(&self, r: usize) -> Result<Vec<WeylElement>> {
        if r == 0 {
            return Ok(vec![self.group.identity()]);
        }
        rho(&self.pf, &self.group, r)
    }

    /// Solver outputs for `rho^(1)_{n-1}` and `rho^(2)_{n-1}` in type D.
    pub fn rho_pair(&self) -> Result<(NilCoxElement, NilCoxElement)> {
        if self.family() != Family::D {
            return Err(Error::Unsupported("the rho pair exists only in type D".into()));
        }
        let g = self.rho(self.rank() - 1)?;
        if g.len() != 2 {
            return Err(Error::Inconsistent(format!("expected two Grassmannian elements, got {}", g.len())));
        }
        Ok((self.kschur_solver(&g[0])?.value, self.kschur_solver(&g[1])?.value))
    }

    /// The solver side of `P_r`: the k-Schur element of `rho_r`.
    pub fn pieri_via_solver(&self, r: usize) -> Result<NilCoxElement> {
        let g = self.rho(r)?;
        let mut acc = NilCoxElement::zero();
        for w in &g {
            acc = &acc + &self.kschur_solver(w)?.value;
        }
        Ok(acc.scale(&Rational::new(BigInt::one(), BigInt::from(g.len() as i64))))
    }

    /// `epsilon` by closure of the sign rules from the two anchors.
    pub fn epsilon(&self) -> Result<NilCoxElement> {
        if self.family() != Family::D {
            return Err(Error::Unsupported("epsilon exists only in type D".into()));
        }
        let signs = epsilon_closure(&self.group, &self.pf)?;
        Ok(NilCoxElement::from_terms(signs.into_iter().map(|(w, s)| (w, q(s)))))
    }

    /// `(P^(1) - P^(2)) / 2` from the solver. This is half of [`epsilon`](Self::epsilon),
    /// and is the normalization under which the quadratic relation and the
    /// coproduct formula hold.
    pub fn epsilon_via_solver(&self) -> Result<NilCoxElement> {
        let (a, b) = self.rho_pair()?;
        Ok((&a - &b).scale(&Rational::new(BigInt::one(), BigInt::from(2))))
    }

    /// `x * sum_y ... = sum_y c_y xi_{yz}` over `y` with `yz` Grassmannian and lengths adding.
    pub fn homology_product_with(&self, jx: &NilCoxElement, z: &WeylElement) -> Result<BTreeMap<WeylElement, Rational>> {
        if !z.is_grassmannian() {
            return Err(Error::NotGrassmannian(z.to_string()));
        }
        let mut out: BTreeMap<WeylElement, Rational> = BTreeMap::new();
        for (y, c) in jx.iter() {
            if let Some(yz) = length_additive_product(y, z) {
                if yz.is_grassmannian() {
                    *out.entry(yz).or_insert_with(Rational::zero) += c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `xi_x xi_z` in the Schubert basis.
    pub fn homology_product(&self, x: &WeylElement, z: &WeylElement) -> Result<BTreeMap<WeylElement, Rational>> {
        let jx = self.kschur_solver(x)?.value;
        self.homology_product_with(&jx, z)
    }

    /// Evaluates the quadratic relations among Pieri elements: the even sums for
    /// every `m` up to the top index, and in type D the product relation at
    /// `m = n-1`. The even sums vanish for `m < n` in type B and `m < n-1` in
    /// type D; past that they would force `Q_{2m} = 0`.
    pub fn check_relations(&self) -> Result<Vec<RelationCheck>> {
        let n = self.rank();
        let top = match self.family() {
            Family::B => 2 * n - 1,
            Family::D => 2 * n - 2,
            f => return Err(Error::Unsupported(format!("relations are stated for types B and D, not {f}"))),
        };
        let p: Vec<NilCoxElement> = (0..=top).map(|r| self.pieri_element(r)).collect::<Result<_>>()?;
        let get = |r: usize| -> Option<&NilCoxElement> { p.get(r) };
        let mut out = Vec::new();
        for m in 1..=top {
            let mut acc = NilCoxElement::zero();
            for r in 0..=2 * m {
                let s = 2 * m - r;
                let (Some(a), Some(b)) = (get(r), get(s)) else { continue };
                let e = -(i64::from(r >= n) + i64::from(s >= n));
                let sign = if r % 2 == 0 { 1 } else { -1 };
                acc = &acc + &(a * b).scale(&(pow2(e) * q(sign)));
            }
            out.push(RelationCheck { name: "even sum".into(), m, vanishes: acc.is_zero(), nonzero_terms: acc.len() });
        }
        if self.family() == Family::D {
            let eps = self.epsilon_via_solver()?;
            let mid = &p[n - 1];
            let mut acc = &(mid + &eps) * &(mid - &eps);
            for j in 1..n {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc = &acc + &(&p[n - 1 - j] * &p[n - 1 + j]).scale(&q(sign));
            }
            out.push(RelationCheck {
                name: "epsilon product".into(),
                m: n - 1,
                vanishes: acc.is_zero(),
                nonzero_terms: acc.len(),
            });
        }
        Ok(out)
    }

    /// Upper covers inside `Z`, for each member of `Z`.
    fn upper_covers_in_z(&self) -> HashMap<WeylElement, Vec<WeylElement>> {
        let mut guard = self.upper_in_z.lock().expect("cache lock");
        if let Some(m) = guard.as_ref() {
            return m.clone();
        }
        let mut m: HashMap<WeylElement, Vec<WeylElement>> = HashMap::new();
        for w in self.pf.iter() {
            m.entry(w.clone()).or_default();
            for (v, _) in self.lower_covers_with_coroots(w).iter() {
                if self.pf.contains(v) {
                    m.entry(v.clone()).or_default().push(w.clone());
                }
            }
        }
        for l in m.values_mut() {
            l.sort();
        }
        *guard = Some(m.clone());
        m
    }

    /// `sum_{w in C_v} 2^{cc(w)} alpha_vw^vee = 2^{cc(v)} K` for `v` in `Z`
    /// below the top length.
    pub fn check_cover_coroot_sums(&self) -> Result<Vec<CoverCheck>> {
        let n = self.rank();
        let top = match self.family() {
            Family::B => 2 * n - 1,
            Family::D => 2 * n - 2,
            f => return Err(Error::Unsupported(format!("the cover sum identity is stated for types B and D, not {f}"))),
        };
        let up = self.upper_covers_in_z();
        let mut out = Vec::new();
        for v in self.pf.iter().filter(|v| v.length() < top) {
            let mut sum = AffineCoroot::zero(n);
            for w in &up[v] {
                let covers = self.lower_covers_with_coroots(w);
                let cor = &covers.iter().find(|(x, _)| x == v).expect("cover").1;
                sum.add_scaled(cor, &pow2(support_profile(w).cc as i64));
            }
            let want = pow2(support_profile(v).cc as i64);
            let holds = sum.finite.iter().all(|x| x.is_zero()) && sum.k == want;
            out.push(CoverCheck { v: v.to_string(), holds });
        }
        Ok(out)
    }

    /// `sum_{w in C_v} c_w(epsilon) = 0` for `v` in `Z` of length `n-2`.
    pub fn check_epsilon_covers(&self) -> Result<Vec<CoverCheck>> {
        let eps = self.epsilon()?;
        let up = self.upper_covers_in_z();
        let n = self.rank();
        let mut out = Vec::new();
        for v in self.pf.level(n - 2) {
            let s: Rational = up[v].iter().map(|w| eps.coeff(w)).fold(Rational::zero(), |a, b| a + b);
            out.push(CoverCheck { v: v.to_string(), holds: s.is_zero() });
        }
        Ok(out)
    }
}

/// All reduced words of `w`.
pub fn reduced_words(w: &WeylElement) -> Vec<Word> {
    fn go(w: &WeylElement, memo: &mut HashMap<WeylElement, Vec<Word>>) -> Vec<Word> {
        if w.is_identity() {
            return vec![Vec::new()];
        }
        if let Some(r) = memo.get(w) {
            return r.clone();
        }
        let mut out = Vec::new();
        for i in w.left_descents() {
            for mut tail in go(&w.left_mul(i), memo) {
                tail.insert(0, i);
                out.push(tail);
            }
        }
        out.sort();
        memo.insert(w.clone(), out.clone());
        out
    }
    go(w, &mut HashMap::new())
}

/// Words related to `u` by the sign rules, each with the relative sign.
fn epsilon_moves(u: &[usize], n: usize) -> Vec<(Word, i64)> {
    let mut out = Vec::new();
    for j in 2..=n - 2 {
        let Some(p) = u.iter().position(|&x| x == j) else { continue };
        if u.iter().filter(|&&x| x == j).count() != 1 {
            continue;
        }
        let (pre, post) = (&u[..p], &u[p + 1..]);
        let lt = |s: &[usize]| s.iter().all(|&x| x < j);
        let gt = |s: &[usize]| s.iter().all(|&x| x > j);
        // v_- j v_+  <->  v_+ j v_-
        if lt(pre) && gt(post) {
            out.push(([post, &[j], pre].concat(), 1));
        }
        if gt(pre) && lt(post) {
            out.push(([post, &[j], pre].concat(), 1));
        }
        // v_- v_+ j  <->  j v_- v_+
        if post.is_empty() {
            let k = pre.iter().take_while(|&&x| x < j).count();
            if gt(&pre[k..]) {
                out.push(([&[j], pre].concat(), 1));
            }
        }
        if pre.is_empty() {
            let k = post.iter().take_while(|&&x| x < j).count();
            if gt(&post[k..]) {
                out.push(([post, &[j]].concat(), 1));
            }
        }
    }
    let swap = |a: usize, b: usize| -> Word {
        u.iter().map(|&x| if x == a { b } else if x == b { a } else { x }).collect()
    };
    out.push((swap(n - 1, n), -1));
    out.push((swap(0, 1), -1));
    for t in [n, n - 1] {
        if u.first() == Some(&t) {
            out.push(([&u[1..], &[t]].concat(), -1));
        }
        if u.last() == Some(&t) {
            out.push(([&[t], &u[..u.len() - 1]].concat(), -1));
        }
    }
    out
}

/// Signs of `epsilon` by breadth-first closure from the two anchors. Every
/// derived sign is checked against any earlier assignment.
pub fn epsilon_closure(group: &WeylGroup, pf: &PieriFactorSet) -> Result<BTreeMap<WeylElement, i64>> {
    let n = group.rank();
    let anchors = rho(pf, group, n - 1)?;
    let (a1, a2) = (anchors[0].clone(), anchors[1].clone());
    let mut sign: HashMap<WeylElement, i64> = HashMap::new();
    sign.insert(a1.clone(), 1);
    sign.insert(a2.clone(), -1);
    let mut queue = VecDeque::from([a1, a2]);
    while let Some(w) = queue.pop_front() {
        let s = sign[&w];
        for u in reduced_words(&w) {
            for (u2, rel) in epsilon_moves(&u, n) {
                let x = group.from_word(&u2)?;
                if x.length() != u2.len() {
                    continue;
                }
                if !pf.contains(&x) {
                    return Err(Error::Inconsistent(format!("sign rule leaves the Pieri factors: {x}")));
                }
                match sign.get(&x) {
                    Some(&t) if t != s * rel => {
                        return Err(Error::Inconsistent(format!("conflicting signs for {x}")));
                    }
                    Some(_) => {}
                    None => {
                        sign.insert(x.clone(), s * rel);
                        queue.push_back(x);
                    }
                }
            }
        }
    }
    Ok(sign.into_iter().collect())
}

/// Elements of `Z_{n-1}` whose support is all of `I_af`.
pub fn full_support_level(pf: &PieriFactorSet) -> BTreeSet<WeylElement> {
    let n = pf.rank();
    pf.level(n - 1).iter().filter(|w| support_profile(w).support.len() == n + 1).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(f: Family, n: usize) -> NilCoxContext {
        NilCoxContext::new(f, n).unwrap()
    }

    #[test]
    fn products() {
        let c = ctx(Family::B, 3);
        let g = c.group();
        let a = |s: &str| NilCoxElement::basis(g.parse(s).unwrap());
        assert!((&a("0") * &a("0")).is_zero());
        assert_eq!(&a("2") * &a("0"), a("2 0"));
        let lhs = &(&a("0") + &a("1")) * &a("2");
        assert_eq!(lhs, &a("0 2") + &a("1 2"));
    }

    #[test]
    fn b3_first_pieri() {
        let c = ctx(Family::B, 3);
        let p1 = c.pieri_element(1).unwrap();
        assert_eq!(p1.to_string(), "A[0] + A[1] + 2*A[2] + A[3]");
        let s0 = c.group().parse("0").unwrap();
        assert_eq!(c.kschur_solver(&s0).unwrap().value, p1);
    }

    #[test]
    fn bare_generator_fails() {
        let c = ctx(Family::B, 3);
        let a = NilCoxElement::basis(c.group().parse("2").unwrap());
        let m = c.verify_in_b(&a).unwrap();
        assert!(!m.passed);
        assert_eq!(m.witness.as_deref(), Some("e"));
    }

    #[test]
    fn homology_square() {
        let c = ctx(Family::B, 3);
        let s0 = c.group().parse("0").unwrap();
        let prod = c.homology_product(&s0, &s0).unwrap();
        let got: Vec<(String, String)> = prod.iter().map(|(w, c)| (w.to_string(), c.to_string())).collect();
        assert_eq!(got, vec![("s2s0".to_string(), "2".to_string())]);
    }

    #[test]
    fn epsilon_d4() {
        let c = ctx(Family::D, 4);
        let e = c.epsilon().unwrap();
        let g = c.group();
        assert_eq!(e.coeff(&g.parse("4 2 0").unwrap()), q(1));
        assert_eq!(e.coeff(&g.parse("3 2 0").unwrap()), q(-1));
        let (p1, p2) = c.rho_pair().unwrap();
        assert_eq!(e, &p1 - &p2);
        let keys: BTreeSet<WeylElement> = e.terms().keys().cloned().collect();
        assert_eq!(keys, full_support_level(c.factors()));
    }

    #[test]
    fn relations_b3() {
        let c = ctx(Family::B, 3);
        for r in c.check_relations().unwrap() {
            assert_eq!(r.vanishes, r.m < 3, "m = {}", r.m);
        }
        let p1 = c.pieri_element(1).unwrap();
        let p2 = c.pieri_element(2).unwrap();
        assert!(!(&(&p1 * &p1) - &p2).is_zero());
    }
}

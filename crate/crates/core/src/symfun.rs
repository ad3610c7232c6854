//! Symmetric functions over the rationals, graded and stored sparsely by
//! partition in one of several bases. Everything is reduced to monomial
//! coefficients for arithmetic; Schur `Q` coefficients are counted on marked
//! shifted tableaux.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cartan::Family;
use crate::error::{Error, Result};
use crate::linalg::{RowStatus, SparseRow, SparseSystem};
use crate::nilcox::{pow2, q};
use crate::partition::{format_partition, is_strict, odd_partitions, partitions, partitions_bounded, sort_parts, Partition};
use crate::pieri::{homology_partitions, AffinePartition};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// Monomial `m_lambda`.
    #[serde(rename = "m")]
    Monomial,
    /// Products `q_lambda = Q_{lambda_1} Q_{lambda_2} ...`.
    #[serde(rename = "q")]
    QProduct,
    /// Schur `Q_lambda`, strict `lambda`.
    #[serde(rename = "Q")]
    SchurQ,
    /// Schur `P_lambda`, strict `lambda`.
    #[serde(rename = "P")]
    SchurP,
    /// Complete homogeneous `h_lambda`.
    #[serde(rename = "h")]
    Complete,
}

impl Basis {
    fn symbol(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::QProduct => "q",
            Basis::SchurQ => "Q",
            Basis::SchurP => "P",
            Basis::Complete => "h",
        }
    }
}

/// A symmetric function as a sparse combination of basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, Rational>,
}

/// JSON form: `{basis, degree, terms: [{partition, numerator, denominator}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymFuncJson {
    pub basis: Basis,
    pub degree: Option<usize>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub partition: Vec<usize>,
    pub numerator: String,
    pub denominator: String,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc { basis, terms: BTreeMap::new() }
    }

    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Vec::new())
    }

    pub fn basis_element(basis: Basis, lambda: Partition) -> Self {
        let mut f = Self::zero(basis);
        f.add_term(lambda, &Rational::one());
        f
    }

    pub fn from_terms(basis: Basis, it: impl IntoIterator<Item = (Partition, Rational)>) -> Self {
        let mut f = Self::zero(basis);
        for (l, c) in it {
            f.add_term(l, &c);
        }
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &[usize]) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, lambda: Partition, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let lambda = sort_parts(&lambda);
        match self.terms.entry(lambda) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms; zero counts as degree 0.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|l| l.iter().sum::<usize>());
        let d = it.next().unwrap_or(0);
        it.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SymFunc::from_terms(self.basis, self.terms.iter().map(|(l, a)| (l.clone(), a * c)))
    }

    /// Sum in a common basis; mismatched bases are an error.
    pub fn add(&self, other: &SymFunc) -> Result<SymFunc> {
        if self.basis != other.basis {
            return Err(Error::Unsupported(format!(
                "cannot add {} and {} expansions",
                self.basis.symbol(),
                other.basis.symbol()
            )));
        }
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SymFunc) -> Result<SymFunc> {
        self.add(&other.scale(&q(-1)))
    }

    /// Drops monomials `m_lambda` with `lambda_1 > k`: the quotient by `I^(k)`.
    pub fn truncate_first_part(&self, k: usize) -> SymFunc {
        SymFunc {
            basis: self.basis,
            terms: self.terms.iter().filter(|(l, _)| l.first().is_none_or(|&p| p <= k)).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }

    /// Whether all coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn to_json(&self) -> SymFuncJson {
        SymFuncJson {
            basis: self.basis,
            degree: self.degree(),
            terms: self
                .terms
                .iter()
                .map(|(l, c)| TermJson { partition: l.clone(), numerator: c.numer().to_string(), denominator: c.denom().to_string() })
                .collect(),
        }
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (l, c) in &self.terms {
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
            if l.is_empty() {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "{}[{}]", self.basis.symbol(), format_partition(l))?;
        }
        Ok(())
    }
}

/// Compositions `alpha <= bound` componentwise with `|alpha| = total`.
fn sub_compositions(bound: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn go(bound: &[usize], k: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == bound.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let tail: usize = bound[k + 1..].iter().sum();
        let lo = rem.saturating_sub(tail);
        for a in lo..=bound[k].min(rem) {
            cur.push(a);
            go(bound, k + 1, rem - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(bound, 0, total, &mut Vec::new(), &mut out);
    out
}

/// Product of two monomial expansions.
pub fn m_multiply(f: &SymFunc, g: &SymFunc) -> SymFunc {
    assert!(f.basis == Basis::Monomial && g.basis == Basis::Monomial, "m_multiply needs monomial expansions");
    let mut out = SymFunc::zero(Basis::Monomial);
    // group by degree so mixed-degree inputs still work
    let mut fd: BTreeMap<usize, Vec<(&Partition, &Rational)>> = BTreeMap::new();
    for (l, c) in &f.terms {
        fd.entry(l.iter().sum()).or_default().push((l, c));
    }
    let mut gd: BTreeMap<usize, Vec<(&Partition, &Rational)>> = BTreeMap::new();
    for (l, c) in &g.terms {
        gd.entry(l.iter().sum()).or_default().push((l, c));
    }
    for (&a, fs) in &fd {
        let fmap: HashMap<&Partition, &Rational> = fs.iter().copied().collect();
        for (&b, gs) in &gd {
            let gmap: HashMap<&Partition, &Rational> = gs.iter().copied().collect();
            for nu in partitions(a + b) {
                let mut c = Rational::zero();
                for alpha in sub_compositions(&nu, a) {
                    let beta: Vec<usize> = nu.iter().zip(&alpha).map(|(x, y)| x - y).collect();
                    let (pa, pb) = (sort_parts(&alpha), sort_parts(&beta));
                    if let (Some(x), Some(y)) = (fmap.get(&pa), gmap.get(&pb)) {
                        c += *x * *y;
                    }
                }
                out.add_term(nu, &c);
            }
        }
    }
    out
}

/// A letter of a marked shifted tableau: `value` with a prime when `marked`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub value: usize,
    pub marked: bool,
}

impl Letter {
    /// Position in the order `1' < 1 < 2' < 2 < ...`.
    fn rank(self) -> usize {
        2 * self.value - usize::from(self.marked)
    }
}

/// A filling of a shifted diagram; row `i` starts in column `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftedTableau {
    pub rows: Vec<Vec<Letter>>,
}

impl ShiftedTableau {
    /// Parses rows like `1 2' 3' 3 3 4`.
    pub fn parse(rows: &[&str]) -> Result<Self> {
        let mut out = Vec::new();
        for (pos, r) in rows.iter().enumerate() {
            let mut row = Vec::new();
            for tok in r.split_whitespace() {
                let marked = tok.ends_with('\'');
                let v = tok.trim_end_matches('\'');
                let value = v.parse::<usize>().map_err(|_| Error::Parse { pos, msg: format!("bad letter `{tok}`") })?;
                if value == 0 {
                    return Err(Error::Parse { pos, msg: "letters start at 1".into() });
                }
                row.push(Letter { value, marked });
            }
            out.push(row);
        }
        Ok(ShiftedTableau { rows: out })
    }

    pub fn shape(&self) -> Partition {
        self.rows.iter().map(|r| r.len()).collect()
    }

    fn at(&self, i: usize, col: usize) -> Option<Letter> {
        let r = self.rows.get(i)?;
        if col < i {
            return None;
        }
        r.get(col - i).copied()
    }

    /// Strict shape, weakly increasing rows and columns, no repeated unmarked
    /// letter in a column and no repeated marked letter in a row.
    pub fn is_valid(&self) -> bool {
        if !is_strict(&self.shape()) || self.rows.iter().any(|r| r.is_empty()) {
            return false;
        }
        for (i, r) in self.rows.iter().enumerate() {
            for k in 0..r.len() {
                let col = i + k;
                let x = r[k];
                if let Some(y) = self.at(i, col + 1) {
                    if y.rank() < x.rank() || (y == x && x.marked) {
                        return false;
                    }
                }
                if let Some(y) = self.at(i + 1, col) {
                    if y.rank() < x.rank() || (y == x && !x.marked) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Multiplicity of each value, marked or not, indexed from 1.
    pub fn content(&self) -> Vec<usize> {
        let max = self.rows.iter().flatten().map(|l| l.value).max().unwrap_or(0);
        let mut c = vec![0; max];
        for l in self.rows.iter().flatten() {
            c[l.value - 1] += 1;
        }
        c
    }
}

/// Every marked shifted tableau of a strict shape with letters up to `max_letter`.
pub fn shifted_tableaux(shape: &[usize], max_letter: usize) -> Vec<ShiftedTableau> {
    let cells: Vec<(usize, usize)> =
        shape.iter().enumerate().flat_map(|(i, &len)| (0..len).map(move |k| (i, i + k))).collect();
    let letters: Vec<Letter> = (1..=max_letter)
        .flat_map(|v| [Letter { value: v, marked: true }, Letter { value: v, marked: false }])
        .collect();
    let mut rows: Vec<Vec<Letter>> = shape.iter().map(|&l| Vec::with_capacity(l)).collect();
    let mut out = Vec::new();
    fn go(
        k: usize,
        cells: &[(usize, usize)],
        letters: &[Letter],
        rows: &mut Vec<Vec<Letter>>,
        out: &mut Vec<ShiftedTableau>,
    ) {
        if k == cells.len() {
            out.push(ShiftedTableau { rows: rows.clone() });
            return;
        }
        let (i, col) = cells[k];
        for &x in letters {
            if col > i {
                let left = rows[i][col - i - 1];
                if x.rank() < left.rank() || (x == left && x.marked) {
                    continue;
                }
            }
            if i > 0 && col >= i && col - (i - 1) < rows[i - 1].len() {
                let up = rows[i - 1][col - (i - 1)];
                if x.rank() < up.rank() || (x == up && !x.marked) {
                    continue;
                }
            }
            rows[i].push(x);
            go(k + 1, cells, letters, rows, out);
            rows[i].pop();
        }
    }
    go(0, &cells, &letters, &mut rows, &mut out);
    out
}

/// Number of markings of the skew shifted shape `outer / inner` by a single
/// value: zero unless every cell is first in its row or last in its column,
/// otherwise two choices for each cell that is both.
fn strip_markings(outer: &[usize], inner: &[usize]) -> usize {
    let part = |p: &[usize], i: usize| p.get(i).copied().unwrap_or(0);
    let inside = |i: usize, col: usize| col >= i + part(inner, i) && col < i + part(outer, i);
    let mut free = 0;
    for i in 0..outer.len() {
        for col in i + part(inner, i)..i + part(outer, i) {
            let first = col == i + part(inner, i);
            let last = !inside(i + 1, col);
            if !first && !last {
                return 0;
            }
            if first && last {
                free += 1;
            }
        }
    }
    1 << free
}

/// Strict partitions `kappa` inside `lambda` with `|lambda| - |kappa| = r`.
fn strict_subshapes(lambda: &[usize], r: usize) -> Vec<Partition> {
    fn go(lambda: &[usize], k: usize, rem: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if k == lambda.len() {
            if rem == 0 {
                let p: Partition = cur.iter().copied().filter(|&x| x > 0).collect();
                out.push(p);
            }
            return;
        }
        let prev = if k == 0 { usize::MAX } else { cur[k - 1] };
        for kp in 0..=lambda[k] {
            let taken = lambda[k] - kp;
            if taken > rem {
                continue;
            }
            // nonzero parts strictly decrease; zeros only at the end
            if k > 0 && kp > 0 && kp >= prev {
                continue;
            }
            if k > 0 && prev == 0 && kp > 0 {
                continue;
            }
            cur.push(kp);
            go(lambda, k + 1, rem - taken, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, r, &mut Vec::new(), &mut out);
    out
}

/// Number of marked shifted tableaux of shape `lambda` with content `content`
/// (a composition), by peeling off the largest letter.
pub fn shifted_kostka(lambda: &[usize], content: &[usize]) -> usize {
    fn go(lambda: &Partition, content: &[usize], memo: &mut HashMap<(Partition, usize), usize>) -> usize {
        if content.is_empty() {
            return usize::from(lambda.is_empty());
        }
        let key = (lambda.clone(), content.len());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let r = *content.last().expect("nonempty");
        let mut total = 0;
        for kappa in strict_subshapes(lambda, r) {
            let m = strip_markings(lambda, &kappa);
            if m > 0 {
                total += m * go(&kappa, &content[..content.len() - 1], memo);
            }
        }
        memo.insert(key, total);
        total
    }
    go(&lambda.to_vec(), content, &mut HashMap::new())
}

/// Caches of basis expansions, keyed by partition.
#[derive(Debug, Default)]
pub struct SymEngine {
    q_products: Mutex<HashMap<Partition, SymFunc>>,
    schur_q: Mutex<HashMap<Partition, SymFunc>>,
}

impl SymEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// `q_r = sum_{mu |- r} 2^{l(mu)} m_mu`, with `q_0 = 1`.
    pub fn q_single(&self, r: usize) -> SymFunc {
        SymFunc::from_terms(Basis::Monomial, partitions(r).into_iter().map(|mu| {
            let c = pow2(mu.len() as i64);
            (mu, c)
        }))
    }

    /// `q_lambda = q_{lambda_1} q_{lambda_2} ...` in monomials.
    pub fn q_product(&self, lambda: &[usize]) -> SymFunc {
        let lambda = sort_parts(lambda);
        if let Some(f) = self.q_products.lock().expect("cache lock").get(&lambda) {
            return f.clone();
        }
        let f = match lambda.len() {
            0 => SymFunc::one(Basis::Monomial),
            1 => self.q_single(lambda[0]),
            k => m_multiply(&self.q_product(&lambda[..k - 1]), &self.q_single(lambda[k - 1])),
        };
        self.q_products.lock().expect("cache lock").insert(lambda, f.clone());
        f
    }

    /// Schur `Q_lambda` in monomials.
    pub fn schur_q(&self, lambda: &[usize]) -> Result<SymFunc> {
        let lambda = sort_parts(lambda);
        if !is_strict(&lambda) {
            return Err(Error::NotStrict(format_partition(&lambda)));
        }
        if let Some(f) = self.schur_q.lock().expect("cache lock").get(&lambda) {
            return Ok(f.clone());
        }
        let d: usize = lambda.iter().sum();
        let f = SymFunc::from_terms(
            Basis::Monomial,
            partitions(d).into_iter().map(|mu| {
                let c = q(shifted_kostka(&lambda, &mu) as i64);
                (mu, c)
            }),
        );
        self.schur_q.lock().expect("cache lock").insert(lambda, f.clone());
        Ok(f)
    }

    /// Schur `P_lambda = 2^{-l(lambda)} Q_lambda` in monomials.
    pub fn schur_p(&self, lambda: &[usize]) -> Result<SymFunc> {
        Ok(self.schur_q(lambda)?.scale(&pow2(-(sort_parts(lambda).len() as i64))))
    }

    /// `h_lambda` in monomials.
    pub fn h_product(&self, lambda: &[usize]) -> SymFunc {
        let mut f = SymFunc::one(Basis::Monomial);
        for &r in lambda {
            let hr = SymFunc::from_terms(Basis::Monomial, partitions(r).into_iter().map(|mu| (mu, Rational::one())));
            f = m_multiply(&f, &hr);
        }
        f
    }

    /// Monomial expansion of `f` from any basis.
    pub fn to_monomial(&self, f: &SymFunc) -> Result<SymFunc> {
        let mut out = SymFunc::zero(Basis::Monomial);
        for (l, c) in &f.terms {
            let b = match f.basis {
                Basis::Monomial => SymFunc::basis_element(Basis::Monomial, l.clone()),
                Basis::QProduct => self.q_product(l),
                Basis::SchurQ => self.schur_q(l)?,
                Basis::SchurP => self.schur_p(l)?,
                Basis::Complete => self.h_product(l),
            };
            out = out.add(&b.scale(c))?;
        }
        Ok(out)
    }

    /// Expansion in Schur `Q` functions, peeling off the lexicographically
    /// largest monomial. Fails if `f` is not in the span.
    pub fn expand_schur_q(&self, f: &SymFunc) -> Result<SymFunc> {
        let mut rest = self.to_monomial(f)?;
        let mut out = SymFunc::zero(Basis::SchurQ);
        while let Some((top, c)) = rest.terms.iter().next_back().map(|(l, c)| (l.clone(), c.clone())) {
            if !is_strict(&top) {
                return Err(Error::Inconsistent(format!("not in the span of Schur Q functions: leading m[{}]", format_partition(&top))));
            }
            let qt = self.schur_q(&top)?;
            let lead = qt.coeff(&top);
            let a = c / lead;
            rest = rest.sub(&qt.scale(&a))?;
            out.add_term(top, &a);
        }
        Ok(out)
    }

    /// Expansion in Schur `P` functions.
    pub fn expand_schur_p(&self, f: &SymFunc) -> Result<SymFunc> {
        let qexp = self.expand_schur_q(f)?;
        Ok(SymFunc::from_terms(Basis::SchurP, qexp.terms.iter().map(|(l, c)| (l.clone(), c * pow2(l.len() as i64)))))
    }

    /// Expansion of a homogeneous `f` in `q_lambda` over odd partitions.
    pub fn expand_q_odd(&self, f: &SymFunc) -> Result<SymFunc> {
        let fm = self.to_monomial(f)?;
        let d = fm.degree().ok_or(Error::NonHomogeneous)?;
        let odd = odd_partitions(d);
        let cols: Vec<SymFunc> = odd.iter().map(|l| self.q_product(l)).collect();
        let mut sys = SparseSystem::new(odd.len());
        for mu in partitions(d) {
            let row: SparseRow =
                cols.iter().enumerate().map(|(j, c)| (j, c.coeff(&mu))).filter(|(_, v)| !v.is_zero()).collect();
            if sys.add_equation(row, fm.coeff(&mu)) == RowStatus::Inconsistent {
                return Err(Error::Inconsistent("not in the span of the q functions".into()));
            }
        }
        let x = sys.unique_solution().ok_or_else(|| Error::Inconsistent("q functions over odd partitions are not a basis".into()))?;
        Ok(SymFunc::from_terms(Basis::QProduct, odd.into_iter().zip(x)))
    }

    /// `[f, g]` with `[q_lambda, g] = coefficient of m_lambda in g`. `f` in any
    /// basis; `g` is read through its monomial coefficients.
    pub fn hl_pairing(&self, f: &SymFunc, g: &SymFunc) -> Result<Rational> {
        let gm = self.to_monomial(g)?;
        let fq = match f.basis {
            Basis::QProduct => f.clone(),
            _ => {
                if f.is_zero() {
                    return Ok(Rational::zero());
                }
                let fm = self.to_monomial(f)?;
                let mut total = Rational::zero();
                // pair degree by degree
                let mut by_deg: BTreeMap<usize, SymFunc> = BTreeMap::new();
                for (l, c) in fm.terms() {
                    by_deg.entry(l.iter().sum()).or_insert_with(|| SymFunc::zero(Basis::Monomial)).add_term(l.clone(), c);
                }
                for part in by_deg.values() {
                    let e = self.expand_q_odd(part)?;
                    for (l, c) in e.terms() {
                        total += c * gm.coeff(l);
                    }
                }
                return Ok(total);
            }
        };
        Ok(fq.terms.iter().map(|(l, c)| c * gm.coeff(l)).fold(Rational::zero(), |a, b| a + b))
    }

    /// `theta(h_lambda) = q_lambda`, returned in monomials.
    pub fn theta(&self, f: &SymFunc) -> Result<SymFunc> {
        if f.basis != Basis::Complete {
            return Err(Error::Unsupported("theta takes an h expansion".into()));
        }
        self.to_monomial(&SymFunc { basis: Basis::QProduct, terms: f.terms.clone() })
    }

    /// Hall pairing `<h_lambda, m_mu> = delta`, with `f` in `h` and `g` in any basis.
    pub fn hall_pairing(&self, f: &SymFunc, g: &SymFunc) -> Result<Rational> {
        if f.basis != Basis::Complete {
            return Err(Error::Unsupported("hall_pairing takes an h expansion on the left".into()));
        }
        let gm = self.to_monomial(g)?;
        Ok(f.terms.iter().map(|(l, c)| c * gm.coeff(l)).fold(Rational::zero(), |a, b| a + b))
    }

    /// Expansion of a homogeneous `f` in `h_lambda` with `lambda_1 <= k`.
    pub fn expand_h_bounded(&self, f: &SymFunc, k: usize) -> Result<SymFunc> {
        let fm = self.to_monomial(f)?;
        let d = fm.degree().ok_or(Error::NonHomogeneous)?;
        let idx = partitions_bounded(d, k);
        let cols: Vec<SymFunc> = idx.iter().map(|l| self.h_product(l)).collect();
        let mut sys = SparseSystem::new(idx.len());
        for mu in partitions(d) {
            let row: SparseRow =
                cols.iter().enumerate().map(|(j, c)| (j, c.coeff(&mu))).filter(|(_, v)| !v.is_zero()).collect();
            if sys.add_equation(row, fm.coeff(&mu)) == RowStatus::Inconsistent {
                return Err(Error::Inconsistent(format!("not in the span of h_1..h_{k}")));
            }
        }
        let x = sys.unique_solution().ok_or_else(|| Error::Inconsistent("bounded h functions are dependent".into()))?;
        Ok(SymFunc::from_terms(Basis::Complete, idx.into_iter().zip(x)))
    }

    /// `q'_lambda = 2^{p_{>=n}(lambda)} q_lambda` for the affine partitions of
    /// degree `d` (color b with distinct parts below `n` in type D), in monomials.
    pub fn gamma_basis(&self, family: Family, n: usize, d: usize) -> Vec<(AffinePartition, SymFunc)> {
        homology_partitions(family, n, d)
            .into_iter()
            .map(|l| {
                let f = self.q_product(&l.parts).scale(&pow2(l.p_geq(n) as i64));
                (l, f)
            })
            .collect()
    }

    /// Bound on first parts for the quotient of the dual side.
    pub fn quotient_bound(family: Family, n: usize) -> Result<usize> {
        match family {
            Family::B => Ok(2 * n - 1),
            Family::D => Ok(2 * n - 2),
            f => Err(Error::Unsupported(format!("no affine partitions for type {f}"))),
        }
    }

    /// The basis `R_lambda` of the dual side, dual to `q'_lambda` under the
    /// pairing, as monomial expansions modulo `m_mu` with `mu_1` above the bound.
    pub fn dual_q_basis(&self, family: Family, n: usize, d: usize) -> Result<Vec<(AffinePartition, SymFunc)>> {
        let k = Self::quotient_bound(family, n)?;
        let basis = self.gamma_basis(family, n, d);
        // spanning set: truncated P_lambda
        let mut chosen: Vec<SymFunc> = Vec::new();
        let mons = partitions_bounded(d, k);
        let col_of: HashMap<&Partition, usize> = mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut span = SparseSystem::new(mons.len());
        for lam in partitions(d).into_iter().filter(|l| is_strict(l)) {
            let p = self.schur_p(&lam)?.truncate_first_part(k);
            let row: SparseRow = p.terms.iter().map(|(m, c)| (col_of[m], c.clone())).collect();
            if span.add_equation(row, Rational::zero()) == RowStatus::NewPivot {
                chosen.push(p);
            }
        }
        if chosen.len() != basis.len() {
            return Err(Error::Inconsistent(format!(
                "dual side has dimension {} but there are {} affine partitions in degree {d}",
                chosen.len(),
                basis.len()
            )));
        }
        // M[i][j] = [q'_i, P_j] = 2^p [m_{lambda_i}] P_j
        let m: Vec<Vec<Rational>> = basis
            .iter()
            .map(|(l, _)| chosen.iter().map(|p| p.coeff(&l.parts) * pow2(l.p_geq(n) as i64)).collect())
            .collect();
        let inv = crate::linalg::invert(&m).ok_or_else(|| Error::Inconsistent("pairing matrix is singular".into()))?;
        let mut out = Vec::new();
        for (mu_idx, (mu, _)) in basis.iter().enumerate() {
            let mut r = SymFunc::zero(Basis::Monomial);
            for (j, p) in chosen.iter().enumerate() {
                r = r.add(&p.scale(&inv[j][mu_idx]))?;
            }
            out.push((mu.clone(), r));
        }
        Ok(out)
    }

    /// `sum_lambda q'_lambda[X] R_lambda[Y] = sum_{nu_1 <= k} q_nu[X] m_nu[Y]` in degree `d`,
    /// compared coefficientwise in `m[X] (x) m[Y]`.
    pub fn kernel_pairs(&self, family: Family, n: usize, d: usize) -> Result<bool> {
        let k = Self::quotient_bound(family, n)?;
        let qb = self.gamma_basis(family, n, d);
        let rb = self.dual_q_basis(family, n, d)?;
        for nu in partitions_bounded(d, k) {
            let mut lhs = SymFunc::zero(Basis::Monomial);
            for ((_, ql), (_, rl)) in qb.iter().zip(&rb) {
                lhs = lhs.add(&ql.scale(&rl.coeff(&nu)))?;
            }
            if lhs != self.q_product(&nu) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Q_i^2 - 2(Q_{i-1}Q_{i+1} - Q_{i-2}Q_{i+2} + ... +- Q_0 Q_{2i})`.
    pub fn q_relation(&self, i: usize) -> Result<SymFunc> {
        let mut f = self.q_product(&[i, i]);
        for j in 1..=i {
            let sign = if j % 2 == 1 { -2 } else { 2 };
            f = f.add(&self.q_product(&[i - j, i + j]).scale(&q(sign)))?;
        }
        Ok(f)
    }

    /// `Q_r[X+Y]` against `sum_s Q_s[X] Q_{r-s}[Y]`, in `m[X] (x) m[Y]`.
    pub fn coproduct_holds(&self, r: usize) -> bool {
        let qr = self.q_single(r);
        for s in 0..=r {
            let (qs, qt) = (self.q_single(s), self.q_single(r - s));
            for alpha in partitions(s) {
                for beta in partitions(r - s) {
                    let mut joined = alpha.clone();
                    joined.extend(&beta);
                    if qr.coeff(&sort_parts(&joined)) != qs.coeff(&alpha) * qt.coeff(&beta) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

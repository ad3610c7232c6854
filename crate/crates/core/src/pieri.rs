//! Pieri factors: the Bruhat order ideal generated by the alcoves of the
//! translations by the finite Weyl orbit of the first fundamental coweight.
//!
//! Two constructions are provided. [`pieri_factors`] starts from explicit
//! reduced words for the maximal elements; [`pieri_factors_typefree`] starts
//! from the translation orbit. They are checked to agree in the tests.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::Family;
use crate::error::{Error, Result};
use crate::weyl::{finite_orbit, subword_products, translation_from_coords, Word, WeylElement, WeylGroup};

/// The graded ideal `Z = Z_0 u Z_1 u ...`.
#[derive(Debug, Clone)]
pub struct PieriFactorSet {
    family: Family,
    n: usize,
    generators: Vec<WeylElement>,
    levels: Vec<Vec<WeylElement>>,
    members: HashSet<WeylElement>,
}

impl PieriFactorSet {
    fn from_generators(group: &WeylGroup, generators: Vec<WeylElement>) -> Self {
        let mut generators: Vec<WeylElement> =
            generators.into_iter().collect::<HashSet<_>>().into_iter().collect();
        generators.sort();
        let mut members = HashSet::new();
        for g in &generators {
            members.extend(subword_products(group.cartan(), g.canonical_word()));
        }
        let max = members.iter().map(|w| w.length()).max().unwrap_or(0);
        let mut levels = vec![Vec::new(); max + 1];
        for w in &members {
            levels[w.length()].push(w.clone());
        }
        for l in levels.iter_mut() {
            l.sort();
        }
        PieriFactorSet { family: group.family(), n: group.rank(), generators, levels, members }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[WeylElement] {
        &self.generators
    }

    pub fn max_length(&self) -> usize {
        self.levels.len() - 1
    }

    /// `Z_r`; empty above the maximal length.
    pub fn level(&self, r: usize) -> &[WeylElement] {
        self.levels.get(r).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.members.contains(w)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &WeylElement> {
        self.levels.iter().flatten()
    }

    pub fn same_elements(&self, other: &PieriFactorSet) -> bool {
        self.members == other.members
    }

    /// Grassmannian elements of `Z_r`, sorted.
    pub fn grassmannian_at(&self, r: usize) -> Vec<WeylElement> {
        self.level(r).iter().filter(|w| w.is_grassmannian()).cloned().collect()
    }
}

fn rotations(cyc: &[usize]) -> Vec<Word> {
    (0..cyc.len()).map(|k| cyc[k..].iter().chain(&cyc[..k]).copied().collect()).collect()
}

fn adjacent(w: &[usize], a: usize, b: usize) -> bool {
    w.windows(2).any(|p| (p[0] == a && p[1] == b) || (p[0] == b && p[1] == a))
}

/// Reduced words of the maximal Pieri factors.
///
/// Types A, B and D come from explicit word lists; type C has no such list and
/// is read off the translation orbit.
pub fn pieri_generators_words(group: &WeylGroup) -> Result<Vec<Word>> {
    let n = group.rank();
    let mut words: Vec<Word> = match group.family() {
        Family::A => (0..=n)
            .map(|r| (0..n).map(|k| (r + (n + 1) * n - k) % (n + 1)).collect())
            .collect(),
        Family::B => {
            let up: Vec<usize> = (2..=n).collect();
            let down: Vec<usize> = (2..n).rev().collect();
            let sandwich = |e: usize| -> Word {
                let mut w = vec![e];
                w.extend(&up);
                w.extend(&down);
                w.push(e);
                w
            };
            let mut out = vec![sandwich(0), sandwich(1)];
            let mut cyc: Word = up.clone();
            cyc.extend(&down);
            cyc.extend([1, 0]);
            out.extend(rotations(&cyc).into_iter().filter(|w| adjacent(w, 0, 1)));
            out
        }
        Family::D => {
            let mid: Vec<usize> = (2..=n - 2).collect();
            let back: Vec<usize> = (2..=n - 2).rev().collect();
            let mut first = vec![0];
            first.extend(&mid);
            first.extend([n, n - 1]);
            first.extend(&back);
            first.push(0);
            let mut cyc = vec![0, 1];
            cyc.extend(&mid);
            cyc.extend([n, n - 1]);
            cyc.extend(&back);
            let mut base = vec![first];
            base.extend(
                rotations(&cyc).into_iter().filter(|w| adjacent(w, 0, 1) && adjacent(w, n - 1, n)),
            );
            let mut out = Vec::new();
            for sigma in d_automorphisms(n) {
                for w in &base {
                    out.push(w.iter().map(|&i| sigma[i]).collect());
                }
            }
            out
        }
        Family::C => {
            let tf = typefree_generators(group)?;
            tf.iter().map(|w| w.canonical_word().to_vec()).collect()
        }
    };
    words.sort();
    words.dedup();
    Ok(words)
}

/// The automorphisms of the affine D diagram present for every `n`: generated by
/// `0 <-> 1`, `n-1 <-> n` and the flip `i -> n - i`. For `n = 4` this excludes triality.
fn d_automorphisms(n: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..=n).collect();
    let mut swap01 = id.clone();
    swap01.swap(0, 1);
    let mut swap_top = id.clone();
    swap_top.swap(n - 1, n);
    let flip: Vec<usize> = (0..=n).map(|i| n - i).collect();
    let gens = [swap01, swap_top, flip];
    let mut group = vec![id];
    let mut idx = 0;
    while idx < group.len() {
        let g = group[idx].clone();
        idx += 1;
        for h in &gens {
            let gh: Vec<usize> = (0..=n).map(|i| g[h[i]]).collect();
            if !group.contains(&gh) {
                group.push(gh);
            }
        }
    }
    group
}

/// Pieri factors from the explicit generator words.
pub fn pieri_factors(group: &WeylGroup) -> Result<PieriFactorSet> {
    let words = pieri_generators_words(group)?;
    let mut gens = Vec::with_capacity(words.len());
    for w in &words {
        let e = group.from_word(w)?;
        if e.length() != w.len() {
            return Err(Error::Inconsistent(format!("generator word {w:?} is not reduced")));
        }
        gens.push(e);
    }
    Ok(PieriFactorSet::from_generators(group, gens))
}

fn typefree_generators(group: &WeylGroup) -> Result<Vec<WeylElement>> {
    let cd = group.cartan();
    let mut e1 = vec![0i64; cd.rank()];
    e1[0] = 1;
    let mut out = Vec::new();
    for c in finite_orbit(cd, &e1) {
        out.push(translation_from_coords(cd, &c)?.body);
    }
    Ok(out)
}

/// Pieri factors from the translations of the fundamental alcove by the orbit of `nu(omega_1^vee)`.
pub fn pieri_factors_typefree(group: &WeylGroup) -> Result<PieriFactorSet> {
    Ok(PieriFactorSet::from_generators(group, typefree_generators(group)?))
}

/// Position of each node in the order used for intervals; `cyclic` for type A.
struct Levels {
    of: Vec<usize>,
    count: usize,
    cyclic: bool,
}

fn levels(family: Family, n: usize) -> Levels {
    match family {
        Family::A => Levels { of: (0..=n).collect(), count: n + 1, cyclic: true },
        Family::C => Levels { of: (0..=n).collect(), count: n + 1, cyclic: false },
        // 0,1 < 2 < ... < n, levels 0..n-1
        Family::B => Levels { of: (0..=n).map(|i| i.max(1) - 1).collect(), count: n, cyclic: false },
        // 0,1 < 2 < ... < n-2 < n-1,n, levels 0..n-2
        Family::D => Levels {
            of: (0..=n).map(|i| i.clamp(1, n - 1) - 1).collect(),
            count: n - 1,
            cyclic: false,
        },
    }
}

/// Maximal runs of `true` in `mask`, as lists of level indices.
fn runs(mask: &[bool], cyclic: bool) -> Vec<Vec<usize>> {
    let k = mask.len();
    if mask.iter().all(|&b| b) {
        return vec![(0..k).collect()];
    }
    let mut out = Vec::new();
    // start scanning just after a `false` so cyclic runs are not split
    let start = if cyclic { mask.iter().position(|&b| !b).expect("some false") + 1 } else { 0 };
    let mut cur: Vec<usize> = Vec::new();
    for step in 0..k {
        let i = (start + step) % k;
        if mask[i] {
            cur.push(i);
        } else if !cur.is_empty() {
            out.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// Pre-support, support and component counts of an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportProfile {
    pub supp: BTreeSet<usize>,
    pub support: BTreeSet<usize>,
    /// Components of the support, as node sets.
    pub components: Vec<BTreeSet<usize>>,
    /// Components of the complement, as node sets.
    pub complement: Vec<BTreeSet<usize>>,
    pub c: usize,
    pub cc: usize,
}

fn format_nodes(s: &BTreeSet<usize>) -> String {
    if s.len() == 1 {
        format!("{{{}}}", s.iter().next().unwrap())
    } else {
        format!("[{},{}]", s.iter().next().unwrap(), s.iter().next_back().unwrap())
    }
}

impl SupportProfile {
    /// The support as intervals, e.g. `[0,3] u {6}`.
    pub fn support_string(&self) -> String {
        self.components.iter().map(format_nodes).collect::<Vec<_>>().join(" u ")
    }

    pub fn complement_string(&self) -> String {
        self.complement.iter().map(format_nodes).collect::<Vec<_>>().join(" u ")
    }
}

pub fn support_profile_of_word(family: Family, n: usize, word: &[usize]) -> SupportProfile {
    let lv = levels(family, n);
    let supp: BTreeSet<usize> = word.iter().copied().collect();
    let mut touched = vec![false; lv.count];
    for &i in &supp {
        touched[lv.of[i]] = true;
    }
    let untouched: Vec<bool> = touched.iter().map(|b| !b).collect();
    let nodes_at = |ls: &[usize]| -> BTreeSet<usize> {
        (0..=n).filter(|&i| ls.contains(&lv.of[i])).collect()
    };
    let comps: Vec<BTreeSet<usize>> = runs(&touched, lv.cyclic).iter().map(|r| nodes_at(r)).collect();
    let comp: Vec<BTreeSet<usize>> = runs(&untouched, lv.cyclic).iter().map(|r| nodes_at(r)).collect();
    let support = comps.iter().flatten().copied().collect();
    SupportProfile { supp, support, c: comps.len(), cc: comp.len(), components: comps, complement: comp }
}

pub fn support_profile(w: &WeylElement) -> SupportProfile {
    let cd = w.cartan();
    support_profile_of_word(cd.family(), cd.rank(), w.canonical_word())
}

/// `stat(w)` of the generating-function weight `2^{stat - 1}`: 1 in type A,
/// `c(w)` in type C, `cc(w)` in types B and D.
pub fn stat(w: &WeylElement) -> usize {
    match w.cartan().family() {
        Family::A => 1,
        Family::C => support_profile(w).c,
        Family::B | Family::D => support_profile(w).cc,
    }
}

/// Color of a length `n-1` segment in type D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    B,
    C,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::B => "b",
            Color::C => "c",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// 0 or 1.
    pub kind: u8,
    pub length: usize,
    pub color: Option<Color>,
    pub element: WeylElement,
}

fn one_segment_word(family: Family, n: usize, j: usize, color: Option<Color>) -> Option<Word> {
    match family {
        Family::B => {
            if j == 0 || j > 2 * n - 1 || color.is_some() {
                return None;
            }
            if j <= n {
                Some((1..=j).rev().collect())
            } else {
                let mut w: Word = (2 * n - j..n).collect();
                w.extend((1..=n).rev());
                Some(w)
            }
        }
        Family::D => {
            if j == 0 || j > 2 * n - 2 {
                return None;
            }
            if j == n - 1 {
                let top = match color? {
                    Color::B => n - 1,
                    Color::C => n,
                };
                let mut w = vec![top];
                w.extend((1..=n - 2).rev());
                return Some(w);
            }
            if color.is_some() {
                return None;
            }
            if j < n - 1 {
                Some((1..=j).rev().collect())
            } else {
                let mut w: Word = (2 * n - j - 1..=n - 2).collect();
                w.extend([n, n - 1]);
                w.extend((1..=n - 2).rev());
                Some(w)
            }
        }
        Family::A | Family::C => None,
    }
}

fn swap_word(family: Family, n: usize, w: &[usize]) -> Word {
    w.iter()
        .map(|&i| match (family, i) {
            (_, 0) => 1,
            (_, 1) => 0,
            (Family::D, x) if x == n => n - 1,
            (Family::D, x) if x == n - 1 => n,
            (_, x) => x,
        })
        .collect()
}

/// `Sigma_kind^color(j)` for types B and D.
pub fn segment(group: &WeylGroup, kind: u8, j: usize, color: Option<Color>) -> Result<Segment> {
    let (family, n) = (group.family(), group.rank());
    let w1 = one_segment_word(family, n, j, color).ok_or_else(|| {
        Error::Unsupported(format!("no segment of length {j} (color {color:?}) in {family}{n}"))
    })?;
    let word = if kind == 0 { swap_word(family, n, &w1) } else { w1 };
    let element = group.from_word(&word)?;
    debug_assert_eq!(element.length(), j);
    Ok(Segment { kind, length: j, color, element })
}

/// All segments of both kinds.
pub fn segments(group: &WeylGroup) -> Result<Vec<Segment>> {
    let (family, n) = (group.family(), group.rank());
    let max = match family {
        Family::B => 2 * n - 1,
        Family::D => 2 * n - 2,
        _ => return Err(Error::Unsupported(format!("segments are defined for B and D, not {family}"))),
    };
    let mut out = Vec::new();
    for kind in [0u8, 1] {
        for j in 1..=max {
            if family == Family::D && j == n - 1 {
                out.push(segment(group, kind, j, Some(Color::B))?);
                out.push(segment(group, kind, j, Some(Color::C))?);
            } else {
                out.push(segment(group, kind, j, None)?);
            }
        }
    }
    Ok(out)
}

/// Length-decreasing factorization `r(w) = ... Sigma_1(l2) Sigma_0(l1)`,
/// returned right to left (`l1` first).
pub fn segment_factorization(w: &WeylElement, group: &WeylGroup) -> Result<Vec<Segment>> {
    if !w.is_grassmannian() {
        return Err(Error::NotGrassmannian(w.to_string()));
    }
    let segs = segments(group)?;
    let mut rest = w.clone();
    let mut kind = 0u8;
    let mut bound = usize::MAX;
    let mut out = Vec::new();
    while !rest.is_identity() {
        let l = rest.length();
        let pick = segs
            .iter()
            .filter(|s| s.kind == kind && s.length <= bound && s.length <= l)
            .filter(|s| rest.multiply(&s.element.inverse()).length() + s.length == l)
            .max_by(|a, b| a.length.cmp(&b.length).then(b.color.cmp(&a.color)));
        let Some(s) = pick else {
            return Err(Error::Inconsistent(format!("{w} has no segment factorization")));
        };
        rest = rest.multiply(&s.element.inverse());
        bound = s.length;
        out.push(s.clone());
        kind = 1 - kind;
    }
    Ok(out)
}

/// A partition with the per-type constraints of affine B and D partitions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffinePartition {
    pub parts: Vec<usize>,
    /// Type D only.
    pub color: Option<Color>,
}

impl AffinePartition {
    pub fn new(family: Family, n: usize, mut parts: Vec<usize>, color: Option<Color>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let bad = |reason: String| Error::InvalidPartition { family, n, reason };
        let max = match family {
            Family::B => 2 * n - 1,
            Family::D => 2 * n - 2,
            _ => return Err(bad("affine partitions are defined for B and D".into())),
        };
        if parts.first().is_some_and(|&p| p > max) {
            return Err(bad(format!("part exceeds {max}")));
        }
        if parts.windows(2).any(|w| w[0] == w[1] && !may_repeat(family, n, w[0])) {
            return Err(bad(format!("parts below {} must be distinct", repeat_floor(family, n))));
        }
        let color = match family {
            Family::D => Some(color.unwrap_or(Color::B)),
            _ if color.is_some() => return Err(bad("color is only used in type D".into())),
            _ => None,
        };
        Ok(AffinePartition { parts, color })
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts `>= n`.
    pub fn p_geq(&self, n: usize) -> usize {
        p_geq(&self.parts, n)
    }
}

impl fmt::Display for AffinePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", p.join(","))?;
        if let Some(c) = self.color {
            if c == Color::C {
                write!(f, "^{c}")?;
            }
        }
        Ok(())
    }
}

/// Smallest part size that may repeat. In type D two segments of length
/// `n-1` can follow each other, so that size repeats as well.
fn repeat_floor(family: Family, n: usize) -> usize {
    if family == Family::D {
        n - 1
    } else {
        n
    }
}

fn may_repeat(family: Family, n: usize, part: usize) -> bool {
    part >= repeat_floor(family, n)
}

pub fn p_geq(parts: &[usize], n: usize) -> usize {
    parts.iter().filter(|&&p| p >= n).count()
}

/// `lambda(w)` read off the segment factorization.
pub fn partition_of(w: &WeylElement, group: &WeylGroup) -> Result<AffinePartition> {
    let segs = segment_factorization(w, group)?;
    let parts: Vec<usize> = segs.iter().map(|s| s.length).collect();
    let color = segs.iter().find_map(|s| s.color);
    AffinePartition::new(group.family(), group.rank(), parts, color)
}

/// Inverse of [`partition_of`].
pub fn element_of(lambda: &AffinePartition, group: &WeylGroup) -> Result<WeylElement> {
    let (family, n) = (group.family(), group.rank());
    let checked = AffinePartition::new(family, n, lambda.parts.clone(), lambda.color)?;
    let mut w = group.identity();
    for (k, &p) in checked.parts.iter().enumerate() {
        let kind = (k % 2) as u8;
        let color = if family == Family::D && p == n - 1 { checked.color } else { None };
        // parts are listed largest first, and the largest is the rightmost factor
        w = segment(group, kind, p, color)?.element.multiply(&w);
    }
    if w.length() != checked.size() || !w.is_grassmannian() {
        return Err(Error::InvalidPartition {
            family,
            n,
            reason: format!("{checked} does not give a reduced Grassmannian product"),
        });
    }
    Ok(w)
}

/// All affine partitions of `size` for the group's type; in type D every
/// partition with a part `n-1` appears in both colors, others in color b.
pub fn affine_partitions(family: Family, n: usize, size: usize) -> Vec<AffinePartition> {
    let max = match family {
        Family::B => 2 * n - 1,
        Family::D => 2 * n - 2,
        _ => return Vec::new(),
    };
    let mut out = Vec::new();
    for parts in crate::partition::partitions_bounded(size, max) {
        if parts.windows(2).any(|w| w[0] == w[1] && !may_repeat(family, n, w[0])) {
            continue;
        }
        if family == Family::D && parts.contains(&(n - 1)) {
            out.push(AffinePartition { parts: parts.clone(), color: Some(Color::B) });
            out.push(AffinePartition { parts, color: Some(Color::C) });
        } else {
            let color = (family == Family::D).then_some(Color::B);
            out.push(AffinePartition { parts, color });
        }
    }
    out
}

/// Partitions indexing the `q'` basis of the homology ring: in type B the
/// affine partitions, in type D those of color b whose parts below `n` are
/// distinct. A repeated part `n-1` is allowed for Grassmannian elements but
/// `q_{n-1}^2` is a combination of the other products.
pub fn homology_partitions(family: Family, n: usize, size: usize) -> Vec<AffinePartition> {
    affine_partitions(family, n, size)
        .into_iter()
        .filter(|l| l.color != Some(Color::C) && !l.parts.windows(2).any(|w| w[0] == w[1] && w[0] < n))
        .collect()
}

fn split_even(p: usize, keep: Option<usize>, out: &mut Vec<usize>) {
    if p % 2 == 1 || Some(p) == keep {
        out.push(p);
    } else {
        split_even(p / 2, keep, out);
        split_even(p / 2, keep, out);
    }
}

/// Splits even parts in half until all parts are odd.
pub fn bijection_b(lambda: &AffinePartition) -> Vec<usize> {
    let mut out = Vec::new();
    for &p in &lambda.parts {
        split_even(p, None, &mut out);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Type D analog: color c leaves parts of size `n-1` alone.
pub fn bijection_d(lambda: &AffinePartition, n: usize) -> Vec<usize> {
    let keep = (lambda.color == Some(Color::C)).then_some(n - 1);
    let mut out = Vec::new();
    for &p in &lambda.parts {
        split_even(p, keep, &mut out);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Grassmannian elements `rho` of `Z_r`: one in type B, and in type D one
/// except at `r = n-1` where `rho^(1)` comes first.
pub fn rho(pf: &PieriFactorSet, group: &WeylGroup, r: usize) -> Result<Vec<WeylElement>> {
    let mut g = pf.grassmannian_at(r);
    if g.is_empty() {
        return Err(Error::OutOfRange { index: r, lo: 1, hi: pf.max_length() });
    }
    if group.family() == Family::D && r + 1 == group.rank() {
        let n = group.rank();
        let mut w1 = vec![n];
        w1.extend((2..=n - 2).rev());
        w1.push(0);
        let r1 = group.from_word(&w1)?;
        g.sort_by_key(|w| *w != r1);
    }
    Ok(g)
}

/// Per-element statistics for dumps: `(length, word, cc, c)`.
pub fn factor_table(pf: &PieriFactorSet) -> Vec<(usize, Word, usize, usize)> {
    pf.iter()
        .map(|w| {
            let p = support_profile(w);
            (w.length(), w.canonical_word().to_vec(), p.cc, p.c)
        })
        .collect()
}

/// Memoized support statistics for a fixed factor set.
#[derive(Debug, Default)]
pub struct StatCache {
    map: HashMap<WeylElement, usize>,
}

impl StatCache {
    pub fn stat(&mut self, w: &WeylElement) -> usize {
        if let Some(&s) = self.map.get(w) {
            return s;
        }
        let s = stat(w);
        self.map.insert(w.clone(), s);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words_of(v: &[WeylElement]) -> Vec<String> {
        v.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn b3_generators() {
        let g = WeylGroup::new(Family::B, 3).unwrap();
        let mut got: Vec<String> = pieri_generators_words(&g)
            .unwrap()
            .iter()
            .map(|w| w.iter().map(|i| i.to_string()).collect())
            .collect();
        got.sort();
        let mut want: Vec<String> =
            ["02320", "12321", "23210", "32102", "21023", "10232"].iter().map(|s| s.to_string()).collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn a2_generators_cyclically_decreasing() {
        let g = WeylGroup::new(Family::A, 2).unwrap();
        let got = pieri_generators_words(&g).unwrap();
        assert_eq!(got, vec![vec![0, 2], vec![1, 0], vec![2, 1]]);
    }

    #[test]
    fn d4_generators_include_first_word() {
        let g = WeylGroup::new(Family::D, 4).unwrap();
        assert!(pieri_generators_words(&g).unwrap().contains(&vec![0, 2, 4, 3, 2, 0]));
    }

    #[test]
    fn b3_levels() {
        let g = WeylGroup::new(Family::B, 3).unwrap();
        let pf = pieri_factors(&g).unwrap();
        assert_eq!(words_of(pf.level(1)), vec!["s0", "s1", "s2", "s3"]);
        assert_eq!(pf.level(0), &[g.identity()]);
        assert_eq!(pf.max_length(), 5);
        let rho5 = g.from_word(&[0, 2, 3, 2, 0]).unwrap();
        assert_eq!(pf.grassmannian_at(5), vec![rho5]);
    }

    #[test]
    fn max_lengths() {
        let ml = |f, n| pieri_factors(&WeylGroup::new(f, n).unwrap()).unwrap().max_length();
        assert_eq!(ml(Family::B, 4), 7);
        assert_eq!(ml(Family::D, 4), 6);
        assert_eq!(ml(Family::C, 3), 6);
        assert_eq!(ml(Family::A, 4), 4);
    }

    #[test]
    fn typefree_small() {
        for (f, n) in [(Family::A, 3), (Family::B, 3), (Family::C, 2), (Family::D, 4)] {
            let g = WeylGroup::new(f, n).unwrap();
            assert!(pieri_factors(&g).unwrap().same_elements(&pieri_factors_typefree(&g).unwrap()), "{f}{n}");
        }
    }

    #[test]
    fn type_c_contains_lss_word() {
        for n in 2..=4 {
            let g = WeylGroup::new(Family::C, n).unwrap();
            let mut w: Word = (1..=n).collect();
            w.extend((1..n).rev());
            w.push(0);
            let e = g.from_word(&w).unwrap();
            assert_eq!(e.length(), 2 * n);
            assert!(pieri_factors(&g).unwrap().generators().contains(&e));
        }
    }

    #[test]
    fn support_fixture_b7() {
        let p = support_profile_of_word(Family::B, 7, &[3, 6, 2, 1]);
        assert_eq!(p.support_string(), "[0,3] u {6}");
        assert_eq!(p.complement_string(), "[4,5] u {7}");
        assert_eq!(p.cc, 2);
        assert_eq!(p.c, 2);
    }

    #[test]
    fn support_small_cases() {
        let id = support_profile_of_word(Family::B, 3, &[]);
        assert_eq!((id.c, id.cc), (0, 1));
        let s2 = support_profile_of_word(Family::B, 3, &[2]);
        assert_eq!(s2.support_string(), "{2}");
        assert_eq!(s2.complement_string(), "[0,1] u {3}");
        assert_eq!(s2.cc, 2);
        let full = support_profile_of_word(Family::B, 3, &[0, 2, 3, 2, 0]);
        assert_eq!(full.cc, 0);
        // in D the top pair is coupled
        let d = support_profile_of_word(Family::D, 5, &[4]);
        assert_eq!(d.support_string(), "[4,5]");
        assert_eq!(d.cc, 1);
        // cyclic type A
        let a = support_profile_of_word(Family::A, 3, &[0, 3]);
        assert_eq!((a.c, a.cc), (1, 1));
    }

    #[test]
    fn segments_and_partitions_b3() {
        let g = WeylGroup::new(Family::B, 3).unwrap();
        assert_eq!(segment(&g, 0, 5, None).unwrap().element, g.from_word(&[0, 2, 3, 2, 0]).unwrap());
        let cases: [(&[usize], &[usize]); 5] = [
            (&[2, 0], &[2]),
            (&[], &[]),
            (&[0, 2, 3, 2, 0], &[5]),
            (&[1, 2, 3, 2, 0], &[4, 1]),
            (&[2, 1, 3, 2, 0], &[3, 2]),
        ];
        for (w, parts) in cases {
            let e = g.from_word(w).unwrap();
            let p = partition_of(&e, &g).unwrap();
            assert_eq!(p.parts, parts, "{e}");
            assert_eq!(element_of(&p, &g).unwrap(), e);
        }
        assert!(partition_of(&g.simple(1).unwrap(), &g).is_err());
    }

    #[test]
    fn d4_length3_segments() {
        let g = WeylGroup::new(Family::D, 4).unwrap();
        let b = segment(&g, 1, 3, Some(Color::B)).unwrap();
        let c = segment(&g, 1, 3, Some(Color::C)).unwrap();
        assert_eq!(b.element.to_string(), "s3s2s1");
        assert_eq!(c.element.to_string(), "s4s2s1");
    }

    #[test]
    fn bijections() {
        let p = AffinePartition::new(Family::B, 3, vec![4], None).unwrap();
        assert_eq!(bijection_b(&p), vec![1, 1, 1, 1]);
        let p = AffinePartition::new(Family::B, 3, vec![3, 1], None).unwrap();
        assert_eq!(bijection_b(&p), vec![3, 1]);
        let p = AffinePartition::new(Family::D, 5, vec![4], Some(Color::C)).unwrap();
        assert_eq!(bijection_d(&p, 5), vec![4]);
        let p = AffinePartition::new(Family::D, 5, vec![4], Some(Color::B)).unwrap();
        assert_eq!(bijection_d(&p, 5), vec![1, 1, 1, 1]);
        assert!(AffinePartition::new(Family::B, 3, vec![1, 1], None).is_err());
        assert!(AffinePartition::new(Family::B, 3, vec![6], None).is_err());
    }

    #[test]
    fn rho_type_b_matches_formula() {
        for n in 3..=4 {
            let g = WeylGroup::new(Family::B, n).unwrap();
            let pf = pieri_factors(&g).unwrap();
            for i in 1..=2 * n - 1 {
                let word: Word = if i == 1 {
                    vec![0]
                } else if i <= n {
                    let mut w: Word = (2..=i).rev().collect();
                    w.push(0);
                    w
                } else if i <= 2 * n - 2 {
                    let mut w: Word = (2 * n - i..n).collect();
                    w.extend((2..=n).rev());
                    w.push(0);
                    w
                } else {
                    let mut w = vec![0];
                    w.extend(2..=n);
                    w.extend((2..n).rev());
                    w.push(0);
                    w
                };
                assert_eq!(rho(&pf, &g, i).unwrap(), vec![g.from_word(&word).unwrap()], "B{n} rho_{i}");
            }
        }
    }

    #[test]
    fn rho_type_d_two_at_n_minus_1() {
        let g = WeylGroup::new(Family::D, 4).unwrap();
        let pf = pieri_factors(&g).unwrap();
        let r = rho(&pf, &g, 3).unwrap();
        assert_eq!(words_of(&r), vec!["s4s2s0", "s3s2s0"]);
        for i in [1, 2, 4, 5, 6] {
            assert_eq!(rho(&pf, &g, i).unwrap().len(), 1);
        }
    }
}

//! Finite groups given by Cayley tables.
//!
//! Elements are the dense indices `0..n`. Every canonical constructor puts the
//! identity at index 0; tables loaded from files may place it anywhere, so all
//! algorithms go through [`FiniteGroup::identity`].

use std::collections::VecDeque;
use std::fmt;

use crate::error::{check, Error, Property, Result, Violation};
use crate::map::{invert, Permutation, SelfMap};
use crate::par;

/// Largest group for which [`automorphisms`] runs by default.
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 16;

/// Largest symmetric group degree accepted by [`FiniteGroup::symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 5;

/// How to print elements of a group built by a named constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Labels {
    Plain,
    Cyclic,
    Dihedral { half: usize },
    Symmetric { perms: Vec<Vec<usize>> },
    Product { left: Box<Labels>, right: Box<Labels>, right_order: usize },
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Labels,
}

impl PartialEq for FiniteGroup {
    /// Two groups are equal when their Cayley tables coincide; names and
    /// element labels are presentation only.
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// `C_m`, with `k` encoding `g^k`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::input("cyclic group order must be positive"));
        }
        let table = (0..m * m).map(|ij| (ij / m + ij % m) % m).collect();
        Ok(Self::from_trusted(format!("C{m}"), m, table, Labels::Cyclic))
    }

    /// Dihedral group of order `2l`. Element `f*l + k` encodes `r^k s^f`.
    pub fn dihedral(l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::input("dihedral parameter must be positive"));
        }
        let n = 2 * l;
        let mut table = vec![0; n * n];
        for x in 0..n {
            let (f1, k1) = (x / l, x % l);
            for y in 0..n {
                let (f2, k2) = (y / l, y % l);
                let k = if f1 == 0 { (k1 + k2) % l } else { (k1 + l - k2) % l };
                table[x * n + y] = (f1 ^ f2) * l + k;
            }
        }
        Ok(Self::from_trusted(
            format!("D{l}"),
            n,
            table,
            Labels::Dihedral { half: l },
        ))
    }

    /// `S_n` over lexicographically ordered permutations of `0..n`, with
    /// `p * q = p ∘ q` (apply `q` first).
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("symmetric group degree must be positive"));
        }
        if n > MAX_SYMMETRIC_DEGREE {
            return Err(Error::Bound {
                what: "symmetric group degree",
                size: n,
                limit: MAX_SYMMETRIC_DEGREE,
            });
        }
        let perms = lexicographic_permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let order = perms.len();
        let mut table = vec![0; order * order];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let pq: Vec<usize> = q.iter().map(|&x| p[x]).collect();
                table[i * order + j] = index(&pq);
            }
        }
        Ok(Self::from_trusted(
            format!("S{n}"),
            order,
            table,
            Labels::Symmetric { perms },
        ))
    }

    /// `G × H` with the pair `(a, b)` stored at `a * |H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (ng, nh) = (g.order, h.order);
        let n = ng * nh;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = g.op(x / nh, y / nh) * nh + h.op(x % nh, y % nh);
            }
        }
        let labels = Labels::Product {
            left: Box::new(g.labels.clone()),
            right: Box::new(h.labels.clone()),
            right_order: nh,
        };
        Self::from_trusted(format!("{}x{}", g.name, h.name), n, table, labels)
    }

    /// Validates a candidate Cayley table. Checks run in the order identity,
    /// inverses, associativity and the first failure is reported with its
    /// witness.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::input("a group needs at least one element"));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::input(format!(
                "row {i} has {} entries, expected {n}",
                rows[i].len()
            )));
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        if let Some(pos) = table.iter().position(|&x| x >= n) {
            return Err(Error::input(format!(
                "entry ({}, {}) = {} is outside 0..{n}",
                pos / n,
                pos % n,
                table[pos]
            )));
        }
        let at = |a: usize, b: usize| table[a * n + b];

        let is_identity = |e: usize| (0..n).all(|x| at(e, x) == x && at(x, e) == x);
        let identity = match (0..n).find(|&e| is_identity(e)) {
            Some(e) => e,
            None => {
                let x = (0..n).find(|&x| at(0, x) != x || at(x, 0) != x).unwrap_or(0);
                return Err(Violation::new(Property::GroupIdentity, vec![x]).into());
            }
        };

        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| at(a, b) == identity && at(b, a) == identity) {
                Some(b) => inverse[a] = b,
                None => return Err(Violation::new(Property::GroupInverse, vec![a]).into()),
            }
        }

        let witness = par::first_witness(n, |a| {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Some(vec![a, b, c]);
                    }
                }
            }
            None
        });
        check(Property::GroupAssociativity, witness)?;

        Ok(FiniteGroup {
            name: name.into(),
            order: n,
            table,
            identity,
            inverse,
            labels: Labels::Plain,
        })
    }

    /// Builds a group from a table the caller already knows to be a group.
    fn from_trusted(name: String, order: usize, table: Vec<usize>, labels: Labels) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .expect("constructor produced a table without identity");
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| table[a * order + b] == identity)
                    .expect("constructor produced a table without inverses")
            })
            .collect();
        FiniteGroup {
            name,
            order,
            table,
            identity,
            inverse,
            labels,
        }
    }

    /// Builds a group from a table produced by an internal construction,
    /// re-verifying every axiom.
    pub(crate) fn from_flat_verified(name: String, order: usize, table: Vec<usize>) -> Result<Self> {
        let rows: Vec<Vec<usize>> = table.chunks(order).map(<[usize]>::to_vec).collect();
        Self::from_table(name, &rows)
    }

    /// Parses names like `cyclic:6`, `dihedral:4`, `symmetric:3`, the short
    /// forms `C6`, `D4`, `S3`, and products joined by `*`.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let parts: Vec<&str> = spec.split('*').map(str::trim).collect();
        if parts.len() > 1 {
            let mut acc = Self::from_spec(parts[0])?;
            for p in &parts[1..] {
                acc = Self::direct_product(&acc, &Self::from_spec(p)?);
            }
            return Ok(acc);
        }
        let spec = spec.trim();
        let (kind, arg) = match spec.split_once(':') {
            Some((k, a)) => (k.to_ascii_lowercase(), a),
            None if spec.len() > 1 => {
                let (k, a) = spec.split_at(1);
                let kind = match k {
                    "C" | "c" => "cyclic",
                    "D" | "d" => "dihedral",
                    "S" | "s" => "symmetric",
                    _ => return Err(Error::input(format!("unknown group '{spec}'"))),
                };
                (kind.to_string(), a)
            }
            None => return Err(Error::input(format!("unknown group '{spec}'"))),
        };
        let arg: usize = arg
            .parse()
            .map_err(|_| Error::input(format!("bad group parameter in '{spec}'")))?;
        match kind.as_str() {
            "cyclic" => Self::cyclic(arg),
            "dihedral" => Self::dihedral(arg),
            "symmetric" => Self::symmetric(arg),
            _ => Err(Error::input(format!("unknown group family '{kind}'"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// First pair `(a, b)` with `a∘b ≠ b∘a`.
    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.op(a, b) != self.op(b, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        p.sort_unstable();
        p
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, |acc, k| acc / gcd(acc, k) * k)
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&a| self.elements().all(|b| self.op(a, b) == self.op(b, a)))
            .collect()
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.op(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    /// A small generating set chosen greedily: repeatedly add the element of
    /// largest order (smallest index on ties) outside the current subgroup.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut member = self.closure(&gens);
        while let Some(next) = self
            .elements()
            .filter(|&x| !member[x])
            .max_by_key(|&x| (self.element_order(x), std::cmp::Reverse(x)))
        {
            gens.push(next);
            member = self.closure(&gens);
        }
        gens
    }

    /// Copy of the group with element `a` renamed to `perm[a]`.
    pub fn relabel(&self, perm: &Permutation) -> Result<FiniteGroup> {
        if perm.len() != self.order {
            return Err(Error::input("relabeling has the wrong size"));
        }
        let n = self.order;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm.apply(a) * n + perm.apply(b)] = perm.apply(self.op(a, b));
            }
        }
        Ok(Self::from_trusted(
            format!("{}'", self.name),
            n,
            table,
            Labels::Plain,
        ))
    }

    /// Symbolic rendering of an element for named constructors, the index
    /// otherwise.
    pub fn label(&self, a: usize) -> String {
        render(&self.labels, a)
    }

    /// `x ↦ a⁻ ∘ x ∘ a`.
    pub fn conjugation_map(&self, a: usize) -> Permutation {
        let ai = self.inv(a);
        Permutation::from_vec_unchecked(self.elements().map(|x| self.op(self.op(ai, x), a)).collect())
    }

    pub fn is_endomorphism(&self, f: &SelfMap) -> bool {
        f.len() == self.order
            && par::all_hold(self.order, |a| {
                self.elements()
                    .all(|b| f.apply(self.op(a, b)) == self.op(f.apply(a), f.apply(b)))
            })
    }

    /// `f ∘ f = f` and `f(a∘b) = f(a)∘f(b)`.
    pub fn is_idempotent_endomorphism(&self, f: &SelfMap) -> bool {
        f.is_idempotent() && self.is_endomorphism(f)
    }

    pub fn is_automorphism(&self, f: &SelfMap) -> bool {
        f.is_bijective() && self.is_endomorphism(f)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

fn render(labels: &Labels, a: usize) -> String {
    match labels {
        Labels::Plain => a.to_string(),
        Labels::Cyclic => power("g", a),
        Labels::Dihedral { half } => {
            let (f, k) = (a / half, a % half);
            match (k, f) {
                (0, 0) => "1".to_string(),
                (0, _) => "s".to_string(),
                (_, 0) => power("r", k),
                _ => format!("{}s", power("r", k)),
            }
        }
        Labels::Symmetric { perms } => cycle_notation(&perms[a]),
        Labels::Product {
            left,
            right,
            right_order,
        } => format!(
            "({}, {})",
            render(left, a / right_order),
            render(right, a % right_order)
        ),
    }
}

fn power(symbol: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => symbol.to_string(),
        _ => format!("{symbol}^{k}"),
    }
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "id".to_string()
    } else {
        out
    }
}

fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next permutation in lexicographic order
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A homomorphism between two finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FiniteGroup,
    target: FiniteGroup,
    images: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() {
            return Err(Error::input(format!(
                "homomorphism has {} images, source has order {}",
                images.len(),
                source.order()
            )));
        }
        if let Some(&y) = images.iter().find(|&&y| y >= target.order()) {
            return Err(Error::input(format!("image {y} is outside the target group")));
        }
        let witness = par::first_witness(source.order(), |a| {
            source
                .elements()
                .find(|&b| images[source.op(a, b)] != target.op(images[a], images[b]))
                .map(|b| vec![a, b])
        });
        check(Property::Homomorphism, witness)?;
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        GroupHom {
            source: g.clone(),
            target: g.clone(),
            images: g.elements().collect(),
        }
    }

    /// The map sending everything to the identity of `target`.
    pub fn trivial(source: &FiniteGroup, target: &FiniteGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![target.identity(); source.order()],
        }
    }

    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && crate::map::is_permutation(&self.images)
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        self.is_bijective().then(|| GroupHom {
            source: self.target.clone(),
            target: self.source.clone(),
            images: invert(&self.images),
        })
    }
}

/// Visits every isomorphism `g -> h` (as an image array) until `visit`
/// returns `false`.
///
/// Generators of `g` are assigned images of equal element order; each partial
/// assignment is extended along the Cayley graph of the generated subgroup and
/// abandoned on the first inconsistency or collision.
pub fn search_isomorphisms<F>(g: &FiniteGroup, h: &FiniteGroup, mut visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return;
    }
    let gens = g.generators();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let k = g.element_order(x);
            h.elements().filter(|&y| h.element_order(y) == k).collect()
        })
        .collect();
    let mut images = vec![0; gens.len()];
    iso_backtrack(g, h, &gens, &candidates, &mut images, 0, &mut visit);
}

fn iso_backtrack<F>(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    depth: usize,
    visit: &mut F,
) -> bool
where
    F: FnMut(&[usize]) -> bool,
{
    if depth == gens.len() {
        let map = extend_on_generators(g, h, gens, images).expect("checked at previous depth");
        let full: Vec<usize> = map.into_iter().map(|y| y.unwrap()).collect();
        return visit(&full);
    }
    for &y in &candidates[depth] {
        images[depth] = y;
        if extend_on_generators(g, h, &gens[..=depth], &images[..=depth]).is_some()
            && !iso_backtrack(g, h, gens, candidates, images, depth + 1, visit)
        {
            return false;
        }
    }
    true
}

/// Extends `gens[i] ↦ images[i]` to the generated subgroup, requiring the
/// extension to be well defined and injective.
fn extend_on_generators(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = Some(h.identity());
    used[h.identity()] = true;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].unwrap();
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.op(x, s);
            let fy = h.op(fx, t);
            match map[y] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}

pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    let mut found = None;
    search_isomorphisms(g, h, |f| {
        found = Some(f.to_vec());
        false
    });
    found
}

pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_isomorphism(g, h).is_some()
}

/// All automorphisms of `g`, sorted by image array.
pub fn automorphisms(g: &FiniteGroup) -> Result<Vec<Permutation>> {
    automorphisms_bounded(g, DEFAULT_AUTOMORPHISM_BOUND)
}

pub fn automorphisms_bounded(g: &FiniteGroup, bound: usize) -> Result<Vec<Permutation>> {
    if g.order() > bound {
        return Err(Error::Bound {
            what: "group order for automorphism search",
            size: g.order(),
            limit: bound,
        });
    }
    let mut out = Vec::new();
    search_isomorphisms(g, g, |f| {
        out.push(Permutation::from_vec_unchecked(f.to_vec()));
        true
    });
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_automorphism_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut count = 0;
        let mut perm: Vec<usize> = (0..n).collect();
        heap_permutations(&mut perm, n, &mut |p| {
            if g.is_automorphism(&SelfMap::new(p.to_vec()).unwrap()) {
                count += 1;
            }
        });
        count
    }

    fn heap_permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(p);
            return;
        }
        for i in 0..k {
            heap_permutations(p, k - 1, f);
            let j = if k % 2 == 0 { i } else { 0 };
            p.swap(j, k - 1);
        }
    }

    #[test]
    fn cyclic_small_cases() {
        assert_eq!(FiniteGroup::cyclic(1).unwrap().rows(), vec![vec![0]]);
        assert_eq!(FiniteGroup::cyclic(2).unwrap().rows(), vec![vec![0, 1], vec![1, 0]]);
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(c6.order(), 6);
        assert_eq!(c6.inv(2), 4);
        assert!(matches!(FiniteGroup::cyclic(0), Err(Error::Input(_))));
    }

    #[test]
    fn dihedral_small_cases() {
        let d1 = FiniteGroup::dihedral(1).unwrap();
        assert!(are_isomorphic(&d1, &FiniteGroup::cyclic(2).unwrap()));
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(!d3.is_abelian());
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.center().len(), 2);
        assert!(FiniteGroup::dihedral(0).is_err());
    }

    #[test]
    fn symmetric_small_cases() {
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert!(are_isomorphic(&s3, &FiniteGroup::dihedral(3).unwrap()));
        assert!(matches!(FiniteGroup::symmetric(6), Err(Error::Bound { .. })));
        assert_eq!(s3.label(0), "id");
        assert_eq!(s3.label(2), "(1 2)");
        assert_eq!(s3.label(3), "(1 2 3)");
    }

    #[test]
    fn direct_products() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let c1 = FiniteGroup::cyclic(1).unwrap();
        assert!(are_isomorphic(&FiniteGroup::direct_product(&c1, &s3), &s3));
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let g = FiniteGroup::direct_product(&c2, &s3);
        assert_eq!(g.order(), 12);
        assert!(are_isomorphic(&g, &FiniteGroup::dihedral(6).unwrap()));
        let v4 = FiniteGroup::direct_product(&c2, &c2);
        assert_eq!(v4.exponent(), 2);
        assert_eq!(g.label(8), "(g, (1 2))");
    }

    #[test]
    fn verify_group_reports_first_failure() {
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(FiniteGroup::from_table("c4", &c4.rows()).is_ok());

        let err = FiniteGroup::from_table("bad", &[vec![1, 1], vec![1, 0]]).unwrap_err();
        assert_eq!(err.violation().unwrap(), &Violation::new(Property::GroupIdentity, vec![0]));

        let left_zero = FiniteGroup::from_table("lz", &[vec![0, 0], vec![1, 1]]).unwrap_err();
        assert_eq!(left_zero.violation().unwrap().property, Property::GroupIdentity);

        // identity 0, but 1 has no inverse
        let no_inv = FiniteGroup::from_table("ni", &[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert_eq!(no_inv.violation().unwrap(), &Violation::new(Property::GroupInverse, vec![1]));

        // a unital loop of order 5 that is not associative
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", &loop5).unwrap_err();
        assert_eq!(err.violation().unwrap().property, Property::GroupAssociativity);
        assert_eq!(err.violation().unwrap().witness.len(), 3);
    }

    #[test]
    fn shape_errors_are_input_errors() {
        assert!(matches!(
            FiniteGroup::from_table("x", &[vec![0, 1], vec![1]]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            FiniteGroup::from_table("x", &[vec![0, 2], vec![1, 0]]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn automorphism_counts_match_brute_force() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(automorphisms(&c2).unwrap(), vec![Permutation::identity(2)]);

        let c6 = FiniteGroup::cyclic(6).unwrap();
        let auts = automorphisms(&c6).unwrap();
        assert_eq!(auts.len(), brute_force_automorphism_count(&c6));
        assert_eq!(auts.len(), 2);
        assert_eq!(auts[1].images(), &[0, 5, 4, 3, 2, 1]);

        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(automorphisms(&s3).unwrap().len(), brute_force_automorphism_count(&s3));
        assert_eq!(automorphisms(&s3).unwrap().len(), 6);

        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(automorphisms(&d4).unwrap().len(), brute_force_automorphism_count(&d4));
    }

    #[test]
    fn automorphisms_form_a_group() {
        for spec in ["C6", "S3", "D4", "C2*C2", "C2*C6", "C2*S3", "C3*C3"] {
            let g = FiniteGroup::from_spec(spec).unwrap();
            let auts = automorphisms(&g).unwrap();
            for f in &auts {
                assert!(auts.binary_search(&f.inverse()).is_ok(), "{spec}");
                for h in &auts {
                    assert!(auts.binary_search(&f.compose(h).unwrap()).is_ok(), "{spec}");
                }
            }
        }
    }

    #[test]
    fn automorphism_bound_enforced() {
        let g = FiniteGroup::cyclic(17).unwrap();
        assert!(matches!(automorphisms(&g), Err(Error::Bound { .. })));
    }

    #[test]
    fn idempotent_endomorphism_on_c2_times_s3() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let g = FiniteGroup::direct_product(&c2, &s3);
        // (x^i, π) ↦ (x^{parity π}, π); odd permutations of S3 sit at 1, 2, 5
        let parity = [0, 1, 1, 0, 0, 1];
        let f = SelfMap::new(g.elements().map(|a| parity[a % 6] * 6 + a % 6).collect()).unwrap();
        assert!(g.is_idempotent_endomorphism(&f));
        let zero = SelfMap::constant(12, g.identity());
        assert!(g.is_idempotent_endomorphism(&zero));
    }

    #[test]
    fn relabeling_preserves_structure() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let p = Permutation::new(vec![3, 0, 5, 1, 2, 4]).unwrap();
        let h = g.relabel(&p).unwrap();
        assert_eq!(h.identity(), 3);
        assert_eq!(find_isomorphism(&g, &h).map(|_| ()), Some(()));
        assert!(GroupHom::new(&g, &h, p.images().to_vec()).is_ok());
    }

    #[test]
    fn spec_strings() {
        assert_eq!(FiniteGroup::from_spec("cyclic:6").unwrap().order(), 6);
        assert_eq!(FiniteGroup::from_spec("D4").unwrap().order(), 8);
        assert_eq!(FiniteGroup::from_spec("C2*S3").unwrap().order(), 12);
        assert!(FiniteGroup::from_spec("quaternion:8").is_err());
    }
}

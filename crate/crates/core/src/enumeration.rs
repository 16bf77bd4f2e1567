//! Exhaustive enumeration of affine structures on small groups.
//!
//! Every affine structure factors as `σ_a = ψ_a ∘ e` where `e = σ_0` is an
//! idempotent map fixing the identity, and `ψ` is an anti-homomorphism from
//! the group into the permutations of `im e`. Taking `a = 0` in the affine
//! identity shows `b∘im e ⊆ im e` for `b ∈ im e`, so `im e` is a subgroup.
//! The search runs over such `e`, then over images of a generating set under
//! `ψ`, extends along the Cayley graph, and keeps the candidates passing full
//! verification.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use sha2::{Digest, Sha256};

use crate::affine::{equivalence_classes, AffineFlags, AffineStructure};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::semibrace::{AdditiveReport, SemiBrace, SemiBraceFlags};
use crate::ybe::{SetSolution, SolutionReport};

/// Largest group handled by [`enumerate_naive`].
pub const NAIVE_BOUND: usize = 4;
/// Largest group handled by [`enumerate`].
pub const ENUMERATE_BOUND: usize = 8;
/// Environment variable naming the default census cache directory.
pub const CACHE_ENV: &str = "AFFINE_LAB_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    All,
    Cancellative,
    Groupal,
    Abelian,
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::All, Kind::Cancellative, Kind::Groupal, Kind::Abelian];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::All => "all",
            Kind::Cancellative => "cancellative",
            Kind::Groupal => "groupal",
            Kind::Abelian => "abelian",
        }
    }

    pub fn admits(self, flags: &AffineFlags) -> bool {
        flags.valid()
            && match self {
                Kind::All => true,
                Kind::Cancellative => flags.cancellative,
                Kind::Groupal => flags.groupal,
                Kind::Abelian => flags.abelian,
            }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::input(format!("unknown kind '{s}'")))
    }
}

fn bound(g: &FiniteGroup, limit: usize, what: &'static str) -> Result<()> {
    if g.order() > limit {
        return Err(Error::Bound {
            what,
            size: g.order(),
            limit,
        });
    }
    Ok(())
}

/// Every valid affine structure, by backtracking over whole rows `σ_a`
/// (each one of the `n^n` self-maps) with pruning on fully assigned
/// constraints. Sorted by flattened table.
pub fn enumerate_naive(g: &FiniteGroup) -> Result<Vec<AffineStructure>> {
    bound(g, NAIVE_BOUND, "group order for naive enumeration")?;
    let n = g.order();
    let maps: Vec<Vec<usize>> = all_maps(n);
    let mut rows: Vec<&[usize]> = Vec::with_capacity(n);
    let mut out = Vec::new();
    naive_step(g, &maps, &mut rows, &mut out);
    out.sort_by(|x: &AffineStructure, y| x.flat().cmp(y.flat()));
    Ok(out)
}

fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut m = vec![0; n];
            for slot in m.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            m
        })
        .collect()
}

fn naive_step<'a>(
    g: &FiniteGroup,
    maps: &'a [Vec<usize>],
    rows: &mut Vec<&'a [usize]>,
    out: &mut Vec<AffineStructure>,
) {
    let n = g.order();
    let k = rows.len();
    if k == n {
        let sigma = AffineStructure::from_fn(g.clone(), |a, b| rows[a][b]);
        if sigma.is_valid() {
            out.push(sigma);
        }
        return;
    }
    for m in maps {
        rows.push(m);
        if naive_consistent(g, rows) {
            naive_step(g, maps, rows, out);
        }
        rows.pop();
    }
}

/// Checks the constraints touching the newest row whose rows are all known.
fn naive_consistent(g: &FiniteGroup, rows: &[&[usize]]) -> bool {
    let n = g.order();
    let k = rows.len() - 1;
    let known = |x: usize| x <= k;
    for a in 0..=k {
        for b in 0..=k {
            let ab = g.op(a, b);
            if (a == k || b == k || ab == k)
                && known(ab)
                && (0..n).any(|x| rows[ab][x] != rows[b][rows[a][x]])
            {
                return false;
            }
            let sab = rows[a][b];
            if (a == k || b == k || sab == k) && known(sab) {
                for c in 0..n {
                    let lhs = rows[a][g.op(b, rows[b][c])];
                    let rhs = g.op(sab, rows[sab][rows[a][c]]);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Every affine structure of the given kind, sorted by flattened table.
pub fn enumerate(g: &FiniteGroup, kind: Kind) -> Result<Vec<AffineStructure>> {
    enumerate_seeded(g, kind, None)
}

/// [`enumerate`] with the work items visited in a seeded random order. The
/// output does not depend on the seed.
pub fn enumerate_seeded(g: &FiniteGroup, kind: Kind, seed: Option<u64>) -> Result<Vec<AffineStructure>> {
    bound(g, ENUMERATE_BOUND, "group order for enumeration")?;
    let mut idempotents = if kind == Kind::All {
        idempotents_onto_subgroups(g)
    } else {
        vec![(0..g.order()).collect()]
    };
    if let Some(seed) = seed {
        idempotents.shuffle(&mut StdRng::seed_from_u64(seed));
    }
    let gens = g.generators();
    let mut out: Vec<AffineStructure> = idempotents
        .par_iter()
        .flat_map_iter(|e| structures_over(g, &gens, e, kind))
        .collect();
    out.sort_by(|x, y| x.flat().cmp(y.flat()));
    out.dedup();
    Ok(out)
}

/// Idempotent maps whose image is a subgroup, grouped by image.
fn idempotents_onto_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let fixed = g.identity();
    let others: Vec<usize> = (0..n).filter(|&x| x != fixed).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << others.len()) {
        let image: Vec<usize> = std::iter::once(fixed)
            .chain(others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x))
            .collect();
        let mut member = vec![false; n];
        image.iter().for_each(|&x| member[x] = true);
        if !image.iter().all(|&x| image.iter().all(|&y| member[g.op(x, y)])) {
            continue;
        }
        let free: Vec<usize> = (0..n).filter(|x| !image.contains(x)).collect();
        let combos = image.len().pow(free.len() as u32);
        for mut code in 0..combos {
            let mut e: Vec<usize> = (0..n).collect();
            for &x in &free {
                e[x] = image[code % image.len()];
                code /= image.len();
            }
            out.push(e);
        }
    }
    out
}

fn structures_over(g: &FiniteGroup, gens: &[usize], e: &[usize], kind: Kind) -> Vec<AffineStructure> {
    let image: Vec<usize> = (0..e.len()).filter(|&x| e[x] == x).collect();
    let mut slot = vec![usize::MAX; e.len()];
    for (i, &x) in image.iter().enumerate() {
        slot[x] = i;
    }
    let ctx = Search {
        g,
        gens,
        k: image.len(),
        e,
        image: &image,
        slot: &slot,
    };
    let zero = slot[g.identity()];
    let perms = permutations(ctx.k);
    let candidates: Vec<Vec<&Vec<usize>>> = gens
        .iter()
        .map(|&x| {
            let ord = g.element_order(x);
            perms
                .iter()
                .filter(|p| ord % perm_order(p) == 0)
                .filter(|p| !matches!(kind, Kind::Groupal | Kind::Abelian) || p[zero] == zero)
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<&Vec<usize>> = Vec::with_capacity(gens.len());
    let mut visit = |psi: &[Option<Vec<usize>>]| {
        let sigma = AffineStructure::from_fn(g.clone(), |a, x| ctx.sigma(psi, a, x));
        if sigma.check_affine_identity().is_ok() && kind.admits(&sigma.classify()) {
            out.push(sigma);
        }
    };
    ctx.search(&candidates, &mut chosen, &mut visit);
    out
}

/// Fixed data for the search over one idempotent `e`.
struct Search<'a> {
    g: &'a FiniteGroup,
    gens: &'a [usize],
    /// `|im e|`.
    k: usize,
    e: &'a [usize],
    /// Elements of `im e`, ascending.
    image: &'a [usize],
    /// Position of an element in `image`, for elements of `im e`.
    slot: &'a [usize],
}

impl Search<'_> {
    /// `σ_a(x) = ψ_a(e(x))`, for `a` with known `ψ_a`.
    fn sigma(&self, psi: &[Option<Vec<usize>>], a: usize, x: usize) -> usize {
        self.image[psi[a].as_ref().unwrap()[self.slot[self.e[x]]]]
    }

    fn search<'p>(
        &self,
        candidates: &[Vec<&'p Vec<usize>>],
        chosen: &mut Vec<&'p Vec<usize>>,
        visit: &mut dyn FnMut(&[Option<Vec<usize>>]),
    ) {
        let depth = chosen.len();
        if self.gens.is_empty() {
            if let Some(psi) = self.extend(&[], &[]) {
                visit(&psi);
            }
            return;
        }
        for &p in &candidates[depth] {
            chosen.push(p);
            if let Some(psi) = self.extend(&self.gens[..=depth], chosen) {
                if depth + 1 == self.gens.len() {
                    visit(&psi);
                } else if self.partial_affine_ok(&psi) {
                    self.search(candidates, chosen, visit);
                }
            }
            chosen.pop();
        }
    }

    /// Extends `gens[i] ↦ images[i]` to the generated subgroup with
    /// `ψ_{x∘s} = ψ_s ∘ ψ_x`, or `None` if that is not well defined.
    fn extend(&self, gens: &[usize], images: &[&Vec<usize>]) -> Option<Vec<Option<Vec<usize>>>> {
        let g = self.g;
        let mut psi: Vec<Option<Vec<usize>>> = vec![None; g.order()];
        psi[g.identity()] = Some((0..self.k).collect());
        let mut queue = std::collections::VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            let px = psi[x].clone().unwrap();
            for (&s, ps) in gens.iter().zip(images) {
                let y = g.op(x, s);
                let py: Vec<usize> = px.iter().map(|&i| ps[i]).collect();
                match &psi[y] {
                    Some(existing) if *existing != py => return None,
                    Some(_) => {}
                    None => {
                        psi[y] = Some(py);
                        queue.push_back(y);
                    }
                }
            }
        }
        Some(psi)
    }

    /// The affine identity on every triple whose three `σ` rows are known.
    fn partial_affine_ok(&self, psi: &[Option<Vec<usize>>]) -> bool {
        let g = self.g;
        let n = g.order();
        let known: Vec<usize> = (0..n).filter(|&a| psi[a].is_some()).collect();
        known.iter().all(|&a| {
            known.iter().all(|&b| {
                let sab = self.sigma(psi, a, b);
                psi[sab].is_none()
                    || (0..n).all(|c| {
                        self.sigma(psi, a, g.op(b, self.sigma(psi, b, c)))
                            == g.op(sab, self.sigma(psi, sab, self.sigma(psi, a, c)))
                    })
            })
        })
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn perm_order(p: &[usize]) -> usize {
    let mut q: Vec<usize> = p.to_vec();
    let mut k = 1;
    while q.iter().enumerate().any(|(i, &x)| i != x) {
        q = q.iter().map(|&x| p[x]).collect();
        k += 1;
    }
    k
}

/// Summary of one equivalence class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    pub representative: Vec<Vec<usize>>,
    pub size: usize,
    pub flags: AffineFlags,
    pub semibrace: SemiBraceFlags,
    pub additive: AdditiveReport,
    pub solution: SolutionReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub group: String,
    pub kind: Kind,
    pub version: String,
    pub structures: usize,
    pub classes: Vec<CensusClass>,
}

impl Census {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Enumerates, splits into equivalence classes and summarises each class.
pub fn census(g: &FiniteGroup, kind: Kind) -> Result<Census> {
    let all = enumerate(g, kind)?;
    let classes = equivalence_classes(&all)?;
    let classes = classes
        .into_iter()
        .map(|c| {
            let rep = c.representative;
            let b = SemiBrace::from_affine(&rep)?;
            Ok(CensusClass {
                representative: rep.rows(),
                size: c.members.len(),
                flags: rep.classify(),
                semibrace: b.classify(),
                additive: b.additive_report(),
                solution: SetSolution::from_semibrace(&b).report(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Census {
        group: g.name().to_string(),
        kind,
        version: env!("CARGO_PKG_VERSION").to_string(),
        structures: all.len(),
        classes,
    })
}

/// Cache key over the group table, the kind and the crate version.
pub fn cache_key(g: &FiniteGroup, kind: Kind) -> String {
    let mut h = Sha256::new();
    h.update((g.order() as u64).to_le_bytes());
    for &x in g.flat_table() {
        h.update((x as u64).to_le_bytes());
    }
    h.update(kind.as_str().as_bytes());
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Explicit directory, else the `AFFINE_LAB_CACHE` environment variable.
pub fn cache_dir(explicit: Option<&Path>) -> Option<PathBuf> {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
}

/// [`census`] with an on-disk cache. Returns the census and whether it came
/// from the cache.
pub fn census_cached(g: &FiniteGroup, kind: Kind, dir: Option<&Path>) -> Result<(Census, bool)> {
    let Some(dir) = dir else {
        return Ok((census(g, kind)?, false));
    };
    let path = dir.join(format!("census-{}.json", cache_key(g, kind)));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(c) = serde_json::from_str::<Census>(&text) {
            return Ok((c, true));
        }
    }
    let c = census(g, kind)?;
    std::fs::create_dir_all(dir)?;
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, serde_json::to_string_pretty(&c)?)?;
    std::fs::rename(&tmp, &path)?;
    Ok((c, false))
}

/// Tables of a list as a set, for order-insensitive comparison.
pub fn table_set(list: &[AffineStructure]) -> BTreeSet<Vec<usize>> {
    list.iter().map(|s| s.flat().to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn g(spec: &str) -> FiniteGroup {
        FiniteGroup::from_spec(spec).unwrap()
    }

    #[test]
    fn naive_counts() {
        assert_eq!(enumerate_naive(&g("C1")).unwrap().len(), 1);
        assert_eq!(enumerate_naive(&g("C2")).unwrap().len(), 3);
        assert_eq!(enumerate_naive(&g("C3")).unwrap().len(), 3);
        assert!(matches!(enumerate_naive(&g("C5")), Err(Error::Bound { .. })));
    }

    #[test]
    fn oracle_agreement_small() {
        for spec in ["C1", "C2", "C3"] {
            let gr = g(spec);
            let naive = enumerate_naive(&gr).unwrap();
            for kind in Kind::ALL {
                let filtered: Vec<_> = naive.iter().filter(|s| kind.admits(&s.classify())).cloned().collect();
                assert_eq!(table_set(&enumerate(&gr, kind).unwrap()), table_set(&filtered), "{spec} {kind}");
            }
        }
    }

    #[test]
    fn cyclic_counts() {
        for (m, canc, groupal) in [(2, 2, 1), (3, 2, 1), (4, 3, 2), (6, 6, 3)] {
            let c = g(&format!("C{m}"));
            assert_eq!(enumerate(&c, Kind::Cancellative).unwrap().len(), canc, "C{m}");
            assert_eq!(enumerate(&c, Kind::Groupal).unwrap().len(), groupal, "C{m}");
        }
    }

    #[test]
    fn c6_groupal_contains_known_families() {
        let c6 = g("C6");
        let set = table_set(&enumerate(&c6, Kind::Groupal).unwrap());
        assert!(set.contains(families::trivial(&c6).flat()));
        assert!(set.contains(families::sign_flip(6).unwrap().flat()));
        assert!(set.contains(families::parity_twist(6).unwrap().flat()));
        let conj = families::conjugation(&c6, &crate::map::SelfMap::identity(6)).unwrap();
        assert!(set.contains(conj.flat()));
    }

    #[test]
    fn c4_abelian_contains_sign_flip() {
        let c4 = g("C4");
        let set = table_set(&enumerate(&c4, Kind::Abelian).unwrap());
        assert!(set.contains(families::sign_flip(4).unwrap().flat()));
    }

    #[test]
    fn seed_does_not_change_output() {
        let g = g("S3");
        let base = enumerate(&g, Kind::All).unwrap();
        for seed in [1, 7, 42] {
            assert_eq!(enumerate_seeded(&g, Kind::All, Some(seed)).unwrap(), base);
        }
    }

    #[test]
    fn bound_guard() {
        assert!(matches!(enumerate(&g("C9"), Kind::All), Err(Error::Bound { .. })));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("groupal".parse::<Kind>().unwrap(), Kind::Groupal);
        assert!("weird".parse::<Kind>().is_err());
    }

    #[test]
    fn census_small() {
        let c = census(&g("C1"), Kind::All).unwrap();
        assert_eq!(c.class_count(), 1);
        let c6 = census(&g("C6"), Kind::Groupal).unwrap();
        let names: Vec<_> = c6
            .classes
            .iter()
            .map(|c| c.additive.iso_type.as_ref().unwrap().name.clone())
            .collect();
        assert!(names.contains(&"C6".to_string()) && names.contains(&"D3".to_string()));
    }

    #[test]
    fn census_cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c2 = g("C2");
        let (first, hit) = census_cached(&c2, Kind::All, Some(dir.path())).unwrap();
        assert!(!hit);
        let (second, hit) = census_cached(&c2, Kind::All, Some(dir.path())).unwrap();
        assert!(hit);
        assert_eq!(first, second);
        assert_ne!(cache_key(&c2, Kind::All), cache_key(&c2, Kind::Groupal));
    }
}

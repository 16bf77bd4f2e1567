//! Affine structures `σ: B -> B^B` on a finite group.
//!
//! Maps compose as `(f ∘ g)(x) = f(g(x))`, and `σ` is an anti-homomorphism:
//! `σ_{a∘b} = σ_b ∘ σ_a`, i.e. `σ_{a∘b}(x) = σ_b(σ_a(x))`.

use serde::{Deserialize, Serialize};

use crate::error::{check, Error, Property, Result, Violation};
use crate::group::{automorphisms_bounded, FiniteGroup, GroupHom, DEFAULT_AUTOMORPHISM_BOUND};
use crate::map::{invert, Permutation, SelfMap};
use crate::par;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineStructure {
    group: FiniteGroup,
    sigma: Vec<usize>,
}

/// Classification of a table. `cancellative`, `groupal` and `abelian` are
/// only meaningful when `anti_hom` and `affine` hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFlags {
    pub anti_hom: bool,
    pub affine: bool,
    pub cancellative: bool,
    pub groupal: bool,
    pub abelian: bool,
}

impl AffineFlags {
    pub fn valid(&self) -> bool {
        self.anti_hom && self.affine
    }
}

impl AffineStructure {
    /// Wraps a table after checking its shape. The affine axioms are not
    /// checked; use [`AffineStructure::verified`] for that.
    pub fn new(group: FiniteGroup, rows: &[Vec<usize>]) -> Result<Self> {
        let n = group.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::input(format!(
                "sigma table must be {n}x{n} to match group {}",
                group.name()
            )));
        }
        let sigma: Vec<usize> = rows.iter().flatten().copied().collect();
        if let Some(pos) = sigma.iter().position(|&x| x >= n) {
            return Err(Error::input(format!(
                "sigma[{}][{}] = {} is outside 0..{n}",
                pos / n,
                pos % n,
                sigma[pos]
            )));
        }
        Ok(AffineStructure { group, sigma })
    }

    /// Like [`AffineStructure::new`] but also requires a valid affine
    /// structure.
    pub fn verified(group: FiniteGroup, rows: &[Vec<usize>]) -> Result<Self> {
        let a = Self::new(group, rows)?;
        a.verify()?;
        Ok(a)
    }

    /// Builds `σ_a(b) = f(a, b)`; `f` must return in-range indices.
    pub fn from_fn(group: FiniteGroup, f: impl Fn(usize, usize) -> usize) -> Self {
        let n = group.order();
        let sigma = (0..n * n).map(|ab| f(ab / n, ab % n)).collect::<Vec<_>>();
        assert!(sigma.iter().all(|&x| x < n), "sigma entry out of range");
        AffineStructure { group, sigma }
    }

    pub(crate) fn from_flat_unchecked(group: FiniteGroup, sigma: Vec<usize>) -> Self {
        debug_assert_eq!(sigma.len(), group.order() * group.order());
        AffineStructure { group, sigma }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `σ_a(b)`.
    #[inline]
    pub fn apply(&self, a: usize, b: usize) -> usize {
        self.sigma[a * self.group.order() + b]
    }

    pub fn map(&self, a: usize) -> SelfMap {
        let n = self.order();
        SelfMap::from_vec_unchecked(self.sigma[a * n..(a + 1) * n].to_vec())
    }

    pub fn flat(&self) -> &[usize] {
        &self.sigma
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.sigma.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    /// `σ_{a∘b}(x) = σ_b(σ_a(x))`; witness `(a, b, x)`.
    pub fn check_anti_hom(&self) -> Result<(), Violation> {
        let g = &self.group;
        let n = g.order();
        let w = par::first_witness(n, |a| {
            for b in 0..n {
                let ab = g.op(a, b);
                for x in 0..n {
                    if self.apply(ab, x) != self.apply(b, self.apply(a, x)) {
                        return Some(vec![a, b, x]);
                    }
                }
            }
            None
        });
        check(Property::AntiHomomorphism, w)
    }

    /// `σ_a(b∘σ_b(c)) = σ_a(b)∘σ_{σ_a(b)}(σ_a(c))`; witness `(a, b, c)`.
    pub fn check_affine_identity(&self) -> Result<(), Violation> {
        let g = &self.group;
        let n = g.order();
        let w = par::first_witness(n, |a| {
            for b in 0..n {
                let sab = self.apply(a, b);
                for c in 0..n {
                    let lhs = self.apply(a, g.op(b, self.apply(b, c)));
                    let rhs = g.op(sab, self.apply(sab, self.apply(a, c)));
                    if lhs != rhs {
                        return Some(vec![a, b, c]);
                    }
                }
            }
            None
        });
        check(Property::AffineIdentity, w)
    }

    pub fn verify(&self) -> Result<(), Violation> {
        self.check_anti_hom()?;
        self.check_affine_identity()
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    pub fn is_cancellative(&self) -> bool {
        (0..self.order()).all(|a| self.map(a).is_bijective())
    }

    /// First `a` with `σ_a` not bijective.
    pub fn check_cancellative(&self) -> Result<(), Violation> {
        let w = (0..self.order())
            .find(|&a| !self.map(a).is_bijective())
            .map(|a| vec![a]);
        check(Property::Bijective, w)
    }

    pub fn is_groupal(&self) -> bool {
        let e = self.group.identity();
        self.is_cancellative() && (0..self.order()).all(|a| self.apply(a, e) == e)
    }

    /// `a∘σ_a(b) = b∘σ_b(a)`; witness `(a, b)`.
    pub fn check_abelian_identity(&self) -> Result<(), Violation> {
        let g = &self.group;
        let n = g.order();
        let w = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| g.op(a, self.apply(a, b)) != g.op(b, self.apply(b, a)))
            .map(|(a, b)| vec![a, b]);
        check(Property::AbelianIdentity, w)
    }

    pub fn classify(&self) -> AffineFlags {
        let cancellative = self.is_cancellative();
        AffineFlags {
            anti_hom: self.check_anti_hom().is_ok(),
            affine: self.check_affine_identity().is_ok(),
            cancellative,
            groupal: self.is_groupal(),
            abelian: cancellative && self.check_abelian_identity().is_ok(),
        }
    }

    pub fn sigma0_fixes_zero(&self) -> bool {
        let e = self.group.identity();
        self.apply(e, e) == e
    }

    /// `φ_u = f ∘ σ_{f⁻¹(u)} ∘ f⁻¹` on the target of the isomorphism `f`.
    pub fn transport(&self, f: &GroupHom) -> Result<AffineStructure> {
        if f.source() != &self.group {
            return Err(Error::input("transport map does not start at the structure's group"));
        }
        if !f.is_bijective() {
            return Err(Error::input("transport needs a bijective homomorphism"));
        }
        let finv = invert(f.images());
        let h = f.target().clone();
        Ok(AffineStructure::from_fn(h, |u, y| {
            f.apply(self.apply(finv[u], finv[y]))
        }))
    }

    /// Transport along an automorphism of the structure's own group.
    pub fn transport_by(&self, p: &Permutation) -> Result<AffineStructure> {
        let f = GroupHom::new(&self.group, &self.group, p.images().to_vec())?;
        self.transport(&f)
    }

    /// `φ_{f(a)}(f(x)) = f(σ_a(x))` for all `a, x`; witness `(a, x)`.
    pub fn check_homomorphic_via(&self, other: &AffineStructure, f: &GroupHom) -> Result<()> {
        if f.source() != &self.group || f.target() != &other.group {
            return Err(Error::input("homomorphism does not match the two structures"));
        }
        let n = self.order();
        let w = (0..n)
            .flat_map(|a| (0..n).map(move |x| (a, x)))
            .find(|&(a, x)| other.apply(f.apply(a), f.apply(x)) != f.apply(self.apply(a, x)))
            .map(|(a, x)| vec![a, x]);
        Ok(check(Property::Homomorphic, w)?)
    }

    pub fn is_homomorphic_via(&self, other: &AffineStructure, f: &GroupHom) -> bool {
        self.check_homomorphic_via(other, f).is_ok()
    }

    /// Lexicographically smallest flattened table in the orbit under `auts`.
    pub fn canonical_table(&self, auts: &[Permutation]) -> Vec<usize> {
        auts.iter()
            .map(|p| self.transport_by(p).expect("automorphism").sigma)
            .min()
            .unwrap_or_else(|| self.sigma.clone())
    }
}

/// One orbit of affine structures under `Aut(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Lexicographically minimal table of the orbit.
    pub representative: AffineStructure,
    /// Indices into the input list, ascending.
    pub members: Vec<usize>,
}

/// Partitions structures on a common group by transport along automorphisms.
/// Classes are sorted by representative table.
pub fn equivalence_classes(structures: &[AffineStructure]) -> Result<Vec<EquivalenceClass>> {
    equivalence_classes_bounded(structures, DEFAULT_AUTOMORPHISM_BOUND)
}

pub fn equivalence_classes_bounded(
    structures: &[AffineStructure],
    bound: usize,
) -> Result<Vec<EquivalenceClass>> {
    let Some(first) = structures.first() else {
        return Ok(Vec::new());
    };
    if structures.iter().any(|s| s.group != first.group) {
        return Err(Error::input("equivalence classes need structures on one group"));
    }
    let auts = automorphisms_bounded(&first.group, bound)?;
    let keys: Vec<Vec<usize>> = structures.iter().map(|s| s.canonical_table(&auts)).collect();
    let mut classes: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
    for (i, k) in keys.into_iter().enumerate() {
        classes.entry(k).or_default().push(i);
    }
    Ok(classes
        .into_iter()
        .map(|(table, members)| EquivalenceClass {
            representative: AffineStructure::from_flat_unchecked(first.group.clone(), table),
            members,
        })
        .collect())
}

/// Pairwise evaluation of the composition conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompositionReport {
    /// First failing `(a, b)` of `φ_a ω_b = ω_b φ_a`.
    pub c1: Option<Vec<usize>>,
    pub c1_failures: usize,
    /// First failing `(a, b)` of `φ_{b∘ω_a(b)^-} = ω_{φ_a ω_a(b)∘ω_a(b)^-}`.
    pub c2: Option<Vec<usize>>,
    pub c2_failures: usize,
    /// Evaluated only when both inputs are cancellative.
    pub c2_prime: Option<Vec<usize>>,
    pub c2_prime_failures: usize,
    pub both_cancellative: bool,
}

impl CompositionReport {
    pub fn holds(&self) -> bool {
        self.c1.is_none() && self.c2.is_none() && self.c2_prime.is_none()
    }

    /// The first failing condition, preferring (c1), then (c2′) in the
    /// cancellative case, then (c2).
    pub fn first_violation(&self) -> Option<Violation> {
        if let Some(w) = &self.c1 {
            return Some(Violation::new(Property::ConditionC1, w.clone()));
        }
        if self.both_cancellative {
            if let Some(w) = &self.c2_prime {
                return Some(Violation::new(Property::ConditionC2Prime, w.clone()));
            }
        }
        self.c2
            .as_ref()
            .map(|w| Violation::new(Property::ConditionC2, w.clone()))
    }
}

fn maps_equal(s: &AffineStructure, a: usize, t: &AffineStructure, b: usize) -> bool {
    let n = s.order();
    s.sigma[a * n..(a + 1) * n] == t.sigma[b * n..(b + 1) * n]
}

/// Evaluates (c1), (c2) and, for cancellative inputs, (c2′) on every pair.
/// In the cancellative case (c2) at `(a, b)` and (c2′) at `(a, ω_a(b))` must
/// agree; a disagreement is an [`Error::Inconsistent`].
pub fn composition_conditions(
    phi: &AffineStructure,
    omega: &AffineStructure,
) -> Result<CompositionReport> {
    if phi.group != omega.group {
        return Err(Error::input("composition needs structures on the same group"));
    }
    let g = &phi.group;
    let n = g.order();
    let pairs = || (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));

    let c1_fails = |(a, b): (usize, usize)| {
        (0..n).any(|x| phi.apply(a, omega.apply(b, x)) != omega.apply(b, phi.apply(a, x)))
    };
    let c2_fails = |(a, b): (usize, usize)| {
        let w = omega.apply(a, b);
        let wi = g.inv(w);
        let left = g.op(b, wi);
        let right = g.op(phi.apply(a, w), wi);
        !maps_equal(phi, left, omega, right)
    };
    let c2p_fails = |(a, b): (usize, usize)| {
        let bi = g.inv(b);
        let left = g.op(omega.apply(g.inv(a), b), bi);
        let right = g.op(phi.apply(a, b), bi);
        !maps_equal(phi, left, omega, right)
    };

    let c1: Vec<(usize, usize)> = pairs().filter(|&p| c1_fails(p)).collect();
    let c2: Vec<(usize, usize)> = pairs().filter(|&p| c2_fails(p)).collect();
    let both_cancellative = phi.is_cancellative() && omega.is_cancellative();
    let c2p: Vec<(usize, usize)> = if both_cancellative {
        pairs().filter(|&p| c2p_fails(p)).collect()
    } else {
        Vec::new()
    };

    if both_cancellative {
        for (a, b) in pairs() {
            if c2_fails((a, b)) != c2p_fails((a, omega.apply(a, b))) {
                return Err(Error::Inconsistent(format!(
                    "(c2) at ({a}, {b}) and (c2') at ({a}, {}) disagree",
                    omega.apply(a, b)
                )));
            }
        }
    }

    let first = |v: &[(usize, usize)]| v.first().map(|&(a, b)| vec![a, b]);
    Ok(CompositionReport {
        c1: first(&c1),
        c1_failures: c1.len(),
        c2: first(&c2),
        c2_failures: c2.len(),
        c2_prime: first(&c2p),
        c2_prime_failures: c2p.len(),
        both_cancellative,
    })
}

/// `σ_a = φ_a ∘ ω_a`, provided (c1) and (c2) hold. The result is verified
/// in full before it is returned.
pub fn compose_affine(phi: &AffineStructure, omega: &AffineStructure) -> Result<AffineStructure> {
    phi.verify()?;
    omega.verify()?;
    let report = composition_conditions(phi, omega)?;
    if let Some(v) = report.first_violation() {
        return Err(v.into());
    }
    let sigma = compose_tables(phi, omega);
    sigma
        .verify()
        .map_err(|v| Error::Inconsistent(format!("composite failed re-verification: {v}")))?;
    if phi.is_groupal() && omega.is_groupal() && !sigma.is_groupal() {
        return Err(Error::Inconsistent(
            "composite of groupal structures is not groupal".into(),
        ));
    }
    Ok(sigma)
}

/// The pointwise composite `a ↦ φ_a ∘ ω_a`, without any checks.
pub fn compose_tables(phi: &AffineStructure, omega: &AffineStructure) -> AffineStructure {
    AffineStructure::from_fn(phi.group.clone(), |a, x| phi.apply(a, omega.apply(a, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn c(m: usize) -> FiniteGroup {
        FiniteGroup::cyclic(m).unwrap()
    }

    #[test]
    fn trivial_structure_is_valid_everywhere() {
        for spec in ["C1", "C4", "S3", "D4", "C2*C2"] {
            let g = FiniteGroup::from_spec(spec).unwrap();
            let t = families::trivial(&g);
            let flags = t.classify();
            assert!(flags.valid() && flags.groupal, "{spec}");
            assert_eq!(flags.abelian, g.is_abelian(), "{spec}");
        }
    }

    #[test]
    fn c1_has_all_flags() {
        let t = families::trivial(&c(1));
        let f = t.classify();
        assert!(f.anti_hom && f.affine && f.cancellative && f.groupal && f.abelian);
    }

    #[test]
    fn anti_hom_failure_on_c4() {
        // σ_g a 3-cycle, everything else the identity
        let mut rows: Vec<Vec<usize>> = vec![vec![0, 1, 2, 3]; 4];
        rows[1] = vec![1, 2, 0, 3];
        let a = AffineStructure::new(c(4), &rows).unwrap();
        let v = a.check_anti_hom().unwrap_err();
        // σ_{1∘1} = σ_2 = id but σ_1 σ_1 sends 0 to 2
        assert_eq!(v, Violation::new(Property::AntiHomomorphism, vec![1, 1, 0]));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            AffineStructure::new(c(2), &[vec![0, 1]]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            AffineStructure::new(c(2), &[vec![0, 1], vec![0, 5]]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn classification_examples() {
        let it = families::inverse_translation(&c(2)).classify();
        assert!(it.valid() && it.cancellative && !it.groupal);

        let sf6 = families::sign_flip(6).unwrap().classify();
        assert!(sf6.valid() && sf6.groupal && !sf6.abelian);

        let sf4 = families::sign_flip(4).unwrap().classify();
        assert!(sf4.valid() && sf4.groupal && sf4.abelian);

        let pt8 = families::parity_twist(8).unwrap().classify();
        assert!(pt8.valid() && pt8.groupal && !pt8.abelian);

        let it4 = families::inverse_translation(&c(4));
        assert!(it4.verify().is_ok());
    }

    #[test]
    fn sigma0_fixes_zero_guard() {
        assert!(families::trivial(&c(3)).sigma0_fixes_zero());
        let bad = AffineStructure::new(c(2), &[vec![1, 0], vec![1, 0]]).unwrap();
        assert!(!bad.sigma0_fixes_zero());
        assert!(!bad.is_valid());
    }

    #[test]
    fn transport_round_trip() {
        let g = c(6);
        let sf = families::sign_flip(6).unwrap();
        let neg = GroupHom::new(&g, &g, vec![0, 5, 4, 3, 2, 1]).unwrap();
        let t = sf.transport(&neg).unwrap();
        assert!(t.is_valid() && t.is_groupal());
        assert!(sf.is_homomorphic_via(&t, &neg));
        let back = t.transport(&neg.inverse().unwrap()).unwrap();
        assert_eq!(back, sf);
        assert_eq!(sf.transport(&GroupHom::identity(&g)).unwrap(), sf);

        let zero = GroupHom::trivial(&g, &g);
        assert!(zero.is_bijective() == false);
        assert!(matches!(sf.transport(&zero), Err(Error::Input(_))));
    }

    #[test]
    fn homomorphic_via_examples() {
        let g = c(6);
        let sf = families::sign_flip(6).unwrap();
        let triv = families::trivial(&g);
        let id = GroupHom::identity(&g);
        assert!(sf.is_homomorphic_via(&sf, &id));
        let zero = GroupHom::trivial(&g, &g);
        assert!(sf.is_homomorphic_via(&triv, &zero));
        let err = sf.check_homomorphic_via(&triv, &id).unwrap_err();
        assert_eq!(
            err.violation().unwrap(),
            &Violation::new(Property::Homomorphic, vec![1, 1])
        );
    }

    #[test]
    fn equivalence_class_examples() {
        let g = c(6);
        let sf = families::sign_flip(6).unwrap();
        let neg = GroupHom::new(&g, &g, vec![0, 5, 4, 3, 2, 1]).unwrap();
        let t = sf.transport(&neg).unwrap();
        let triv = families::trivial(&g);

        let one = equivalence_classes(&[triv.clone()]).unwrap();
        assert_eq!(one.len(), 1);

        let classes = equivalence_classes(&[sf.clone(), t, triv]).unwrap();
        assert_eq!(classes.len(), 2);
        let sizes: Vec<_> = classes.iter().map(|c| c.members.clone()).collect();
        assert!(sizes.contains(&vec![0, 1]) && sizes.contains(&vec![2]));
    }

    #[test]
    fn composition_on_c8() {
        let pt = families::parity_twist(8).unwrap();
        let sf = families::sign_flip(8).unwrap();

        let report = composition_conditions(&pt, &pt).unwrap();
        assert!(report.holds());
        let sq = compose_affine(&pt, &pt).unwrap();
        let f = sq.classify();
        assert!(f.valid() && f.groupal && f.abelian);

        for (p, o) in [(&sf, &pt), (&pt, &sf)] {
            let r = composition_conditions(p, o).unwrap();
            assert_eq!(r.c1, Some(vec![1, 1]));
            assert_eq!(r.c1_failures, 16);
            assert_eq!(r.c2_failures, 16);
            assert_eq!(r.c2_prime_failures, 16);
            assert!(matches!(
                compose_affine(p, o).unwrap_err().violation().unwrap().property,
                Property::ConditionC1
            ));
            assert!(!compose_tables(p, o).is_valid());
        }

        let triv = families::trivial(&c(8));
        assert_eq!(compose_affine(&triv, &triv).unwrap(), triv);
    }
}

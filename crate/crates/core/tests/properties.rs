use std::sync::OnceLock;

use affine_lab::enumeration::{census, enumerate, Kind};
use affine_lab::group::{are_isomorphic, automorphisms};
use affine_lab::io::AffineFile;
use affine_lab::{AffineStructure, FiniteGroup, GroupHom, Permutation, SemiBrace, SetSolution};
use proptest::prelude::*;
use proptest::sample::Index;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// Every affine structure on a handful of small groups.
fn pool() -> &'static [AffineStructure] {
    static POOL: OnceLock<Vec<AffineStructure>> = OnceLock::new();
    POOL.get_or_init(|| {
        ["C2", "C3", "C4", "C2*C2", "C6", "S3"]
            .iter()
            .flat_map(|s| enumerate(&FiniteGroup::from_spec(s).unwrap(), Kind::All).unwrap())
            .collect()
    })
}

fn skew_pool() -> &'static [SemiBrace] {
    static POOL: OnceLock<Vec<SemiBrace>> = OnceLock::new();
    POOL.get_or_init(|| {
        pool()
            .iter()
            .filter(|s| s.is_groupal())
            .map(|s| SemiBrace::from_affine(s).unwrap())
            .collect()
    })
}

/// A permutation of `0..n` fixing 0, from a seed.
fn perm_fixing_zero(n: usize, seed: u64) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images[1..].shuffle(&mut StdRng::seed_from_u64(seed));
    Permutation::new(images).unwrap()
}

const GROUPS: [&str; 7] = ["C4", "C2*C2", "C5", "C6", "S3", "D4", "C8"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn affine_semibrace_round_trip(i in any::<Index>()) {
        let sigma = i.get(pool());
        let b = SemiBrace::from_affine(sigma).unwrap();
        prop_assert_eq!(&b.to_affine(), sigma);
        prop_assert_eq!(SemiBrace::from_affine(&b.to_affine()).unwrap(), b);
    }

    #[test]
    fn sigma_is_additive_endomorphism(i in any::<Index>()) {
        let sigma = i.get(pool());
        let b = SemiBrace::from_affine(sigma).unwrap();
        let n = sigma.order();
        for a in 0..n {
            for x in 0..n {
                for y in 0..n {
                    prop_assert_eq!(sigma.apply(a, b.add(x, y)), b.add(sigma.apply(a, x), sigma.apply(a, y)));
                }
            }
        }
    }

    #[test]
    fn classification_implications(i in any::<Index>()) {
        let sigma = i.get(pool());
        let f = sigma.classify();
        let b = SemiBrace::from_affine(sigma).unwrap();
        prop_assert!(f.valid());
        prop_assert!(!f.groupal || f.cancellative);
        prop_assert_eq!(f.cancellative, b.is_left_cancellative());
        prop_assert_eq!(f.groupal, b.is_skew());
        if f.abelian {
            prop_assert!(f.cancellative);
        }
    }

    #[test]
    fn transport_and_back(i in any::<Index>(), seed in any::<u64>()) {
        let sigma = i.get(pool());
        let g = sigma.group();
        let p = perm_fixing_zero(sigma.order(), seed);
        let h = g.relabel(&p).unwrap();
        let f = GroupHom::new(g, &h, p.images().to_vec()).unwrap();
        let moved = sigma.transport(&f).unwrap();
        prop_assert!(moved.is_valid());
        prop_assert_eq!(moved.classify(), sigma.classify());
        prop_assert!(sigma.is_homomorphic_via(&moved, &f));
        prop_assert_eq!(&moved.transport(&f.inverse().unwrap()).unwrap(), sigma);
    }

    #[test]
    fn star_iff_double_star_under_additive_relabeling(i in any::<Index>(), seed in any::<u64>()) {
        let b = i.get(skew_pool());
        let n = b.order();
        let p = perm_fixing_zero(n, seed);
        let q = p.inverse();
        // Same multiplication; addition moved along p, so still a group.
        let add: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| p.apply(b.add(q.apply(x), q.apply(y)))).collect())
            .collect();
        let moved = SemiBrace::new(b.mul().clone(), &add).unwrap();
        prop_assert!(moved.check_additive_group().is_ok());
        prop_assert_eq!(moved.check_semibrace_identity().is_ok(), moved.check_skew_identity().is_ok());
    }

    #[test]
    fn left_cancellative_solutions_satisfy_ybe(i in any::<Index>()) {
        let sigma = i.get(pool());
        let b = SemiBrace::from_affine(sigma).unwrap();
        prop_assume!(b.is_left_cancellative());
        let r = SetSolution::from_semibrace(&b);
        prop_assert!(r.check_ybe().is_ok());
        prop_assert!(r.is_left_nondegenerate());
    }

    #[test]
    fn json_round_trip(i in any::<Index>()) {
        let sigma = i.get(pool());
        let text = serde_json::to_string(&AffineFile::from_affine(sigma)).unwrap();
        let back: AffineFile = serde_json::from_str(&text).unwrap();
        let loaded = back.to_affine().unwrap();
        prop_assert_eq!(&loaded, sigma);
        prop_assert_eq!(loaded.classify(), sigma.classify());
    }

    #[test]
    fn relabeled_group_is_isomorphic(g in 0..GROUPS.len(), seed in any::<u64>()) {
        let gr = FiniteGroup::from_spec(GROUPS[g]).unwrap();
        let moved = gr.relabel(&perm_fixing_zero(gr.order(), seed)).unwrap();
        prop_assert!(are_isomorphic(&gr, &moved));
        prop_assert_eq!(automorphisms(&gr).unwrap().len(), automorphisms(&moved).unwrap().len());
        prop_assert_eq!(gr.order_profile(), moved.order_profile());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn census_counts_invariant_under_relabeling(g in 0..4usize, k in 0..4usize, seed in any::<u64>()) {
        let gr = FiniteGroup::from_spec(["C4", "C2*C2", "C6", "S3"][g]).unwrap();
        let kind = Kind::ALL[k];
        let moved = gr.relabel(&perm_fixing_zero(gr.order(), seed)).unwrap();
        let a = census(&gr, kind).unwrap();
        let b = census(&moved, kind).unwrap();
        prop_assert_eq!(a.structures, b.structures);
        prop_assert_eq!(a.class_count(), b.class_count());
    }
}

#[test]
fn non_cancellative_semibrace_can_break_ybe() {
    // σ_a = f for an idempotent f of C4 that is not an endomorphism.
    let c4 = FiniteGroup::from_spec("C4").unwrap();
    let sigma = AffineStructure::verified(c4, &vec![vec![0, 0, 2, 2]; 4]).unwrap();
    let b = SemiBrace::from_affine(&sigma).unwrap();
    assert!(!b.is_left_cancellative());
    let v = SetSolution::from_semibrace(&b).check_ybe().unwrap_err();
    assert_eq!(v.witness, vec![0, 1, 1]);
}

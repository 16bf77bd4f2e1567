//! Standard affine structures used throughout the examples.

use crate::affine::AffineStructure;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::map::SelfMap;

/// `σ_a = id`.
pub fn trivial(g: &FiniteGroup) -> AffineStructure {
    AffineStructure::from_fn(g.clone(), |_, b| b)
}

/// `σ_a(b) = a^- ∘ b`.
pub fn inverse_translation(g: &FiniteGroup) -> AffineStructure {
    AffineStructure::from_fn(g.clone(), |a, b| g.op(g.inv(a), b))
}

/// `σ_a = f` for every `a`.
pub fn constant(g: &FiniteGroup, f: &SelfMap) -> Result<AffineStructure> {
    check_size(g, f)?;
    Ok(AffineStructure::from_fn(g.clone(), |_, b| f.apply(b)))
}

/// `σ_a(b) = f(a)^- ∘ b ∘ f(a)`.
pub fn conjugation(g: &FiniteGroup, f: &SelfMap) -> Result<AffineStructure> {
    check_size(g, f)?;
    Ok(AffineStructure::from_fn(g.clone(), |a, b| {
        let fa = f.apply(a);
        g.op(g.op(g.inv(fa), b), fa)
    }))
}

/// On `C_m` with `m` even: `σ_{g^k}(g^l) = g^{(-1)^k l}`.
pub fn sign_flip(m: usize) -> Result<AffineStructure> {
    let g = even_cyclic(m)?;
    Ok(AffineStructure::from_fn(g, |k, l| {
        if k % 2 == 0 {
            l
        } else {
            (m - l) % m
        }
    }))
}

/// On `C_m` with `m` even: `σ_{g^k}(g^l) = g^{k(-1 + (-1)^l) + l}`.
pub fn parity_twist(m: usize) -> Result<AffineStructure> {
    let g = even_cyclic(m)?;
    Ok(AffineStructure::from_fn(g, |k, l| {
        if l % 2 == 0 {
            l
        } else {
            (l + 2 * (m - k)) % m
        }
    }))
}

fn even_cyclic(m: usize) -> Result<FiniteGroup> {
    if m == 0 || m % 2 == 1 {
        return Err(Error::input(format!(
            "this family needs an even cyclic order, got {m}"
        )));
    }
    FiniteGroup::cyclic(m)
}

fn check_size(g: &FiniteGroup, f: &SelfMap) -> Result<()> {
    if f.len() != g.order() {
        return Err(Error::input(format!(
            "map has {} images but the group has order {}",
            f.len(),
            g.order()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_flip_and_parity_twist_tables() {
        let sf = sign_flip(4).unwrap();
        assert_eq!(sf.rows()[1], vec![0, 3, 2, 1]);
        let pt = parity_twist(8).unwrap();
        // g^3 ↦ g^{3 - 2} under σ_g
        assert_eq!(pt.apply(1, 3), 1);
        assert_eq!(pt.apply(1, 2), 2);
        assert!(sign_flip(5).is_err());
        assert!(parity_twist(0).is_err());
    }

    #[test]
    fn constant_idempotent_is_affine_not_cancellative() {
        let g = FiniteGroup::from_spec("C2*S3").unwrap();
        let parity = [0, 1, 1, 0, 0, 1];
        let f = SelfMap::new(g.elements().map(|a| parity[a % 6] * 6 + a % 6).collect()).unwrap();
        let s = constant(&g, &f).unwrap();
        let flags = s.classify();
        assert!(flags.valid() && !flags.cancellative);
        let id = constant(&g, &SelfMap::identity(12)).unwrap();
        assert!(id.classify().cancellative);
    }

    #[test]
    fn conjugation_is_groupal() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let s = conjugation(&g, &SelfMap::identity(6)).unwrap();
        let flags = s.classify();
        assert!(flags.valid() && flags.groupal);
        assert!(conjugation(&g, &SelfMap::identity(4)).is_err());
    }
}

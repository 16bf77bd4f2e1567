//! Semi-braces `(B, +, ∘)`: a group `(B, ∘)` and a semigroup `(B, +)` with
//! `a∘(b+c) = a∘b + a∘(a^- + c)`.

use serde::{Deserialize, Serialize};

use crate::affine::AffineStructure;
use crate::error::{check, Error, Property, Result, Violation};
use crate::group::{search_isomorphisms, FiniteGroup};
use crate::identify::{identify, IsoType};
use crate::par;

/// Default order limit for [`isomorphic`].
pub const DEFAULT_ISOMORPHISM_BOUND: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiBrace {
    mul: FiniteGroup,
    add: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiBraceFlags {
    pub semibrace: bool,
    pub left_cancellative: bool,
    pub skew: bool,
    pub brace: bool,
    pub biskew: bool,
    pub lambda_homomorphic: bool,
}

/// `lambda[a][b] = λ_a(b) = a∘(a^- + b)` and `rho[b][a] = ρ_b(a) = (a^- + b)^-∘b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaRho {
    pub lambda: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
}

/// The five standard facts about `λ` and `ρ`, each evaluated exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LambdaRhoReport {
    /// `λ_a(b + c) = λ_a(b) + λ_a(c)`.
    pub lambda_additive_endomorphism: bool,
    /// `λ_{a∘b} = λ_a ∘ λ_b`.
    pub lambda_homomorphism: bool,
    pub lambda_bijective: bool,
    /// `ρ_{a∘b} = ρ_b ∘ ρ_a`.
    pub rho_anti_homomorphism: bool,
    pub rho_bijective: bool,
}

/// Independent evaluations of the bi-skew property for a skew brace; each
/// field is the first failing tuple, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BiskewReport {
    /// `λ_a(b∘c) = λ_a(b)∘λ_a(c)`, witness `(a, b, c)`.
    pub lambda_automorphism: Option<Vec<usize>>,
    /// `a + b∘c = (a+b)∘a^-∘(a+c)`, witness `(a, b, c)`.
    pub star_prime: Option<Vec<usize>>,
    /// `a + b∘c = (a+b)∘(a + (-a)∘c)`, witness `(a, b, c)`.
    pub star_double_prime: Option<Vec<usize>>,
    /// `σ_{a∘σ_a(b)} = σ_{b∘a}` for the associated affine structure,
    /// witness `(a, b)`.
    pub sigma_sum_identity: Option<Vec<usize>>,
}

impl BiskewReport {
    fn verdicts(&self) -> [bool; 4] {
        [
            self.lambda_automorphism.is_none(),
            self.star_prime.is_none(),
            self.star_double_prime.is_none(),
            self.sigma_sum_identity.is_none(),
        ]
    }

    pub fn agree(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|&x| x == v[0])
    }

    pub fn biskew(&self) -> bool {
        self.verdicts()[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveReport {
    pub is_group: bool,
    pub commutative: bool,
    /// Present when `+` is a group.
    pub iso_type: Option<IsoType>,
}

impl SemiBrace {
    /// Wraps tables after checking their shape only.
    pub fn new(mul: FiniteGroup, add: &[Vec<usize>]) -> Result<Self> {
        let n = mul.order();
        if add.len() != n || add.iter().any(|r| r.len() != n) {
            return Err(Error::input(format!("addition table must be {n}x{n}")));
        }
        let add: Vec<usize> = add.iter().flatten().copied().collect();
        if let Some(pos) = add.iter().position(|&x| x >= n) {
            return Err(Error::input(format!(
                "add[{}][{}] = {} is outside 0..{n}",
                pos / n,
                pos % n,
                add[pos]
            )));
        }
        Ok(SemiBrace { mul, add })
    }

    pub fn verified(mul: FiniteGroup, add: &[Vec<usize>]) -> Result<Self> {
        let s = Self::new(mul, add)?;
        s.verify()?;
        Ok(s)
    }

    pub(crate) fn from_fn(mul: FiniteGroup, f: impl Fn(usize, usize) -> usize) -> Self {
        let n = mul.order();
        let add = (0..n * n).map(|ab| f(ab / n, ab % n)).collect();
        SemiBrace { mul, add }
    }

    /// `a + b = a∘b`.
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_fn(g.clone(), |a, b| g.op(a, b))
    }

    /// `a + b = b∘a`.
    pub fn almost_trivial(g: &FiniteGroup) -> Self {
        Self::from_fn(g.clone(), |a, b| g.op(b, a))
    }

    pub fn mul(&self) -> &FiniteGroup {
        &self.mul
    }

    pub fn order(&self) -> usize {
        self.mul.order()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order() + b]
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn add_flat(&self) -> &[usize] {
        &self.add
    }

    pub fn check_additive_associativity(&self) -> Result<(), Violation> {
        let n = self.order();
        let w = par::first_witness(n, |a| {
            for b in 0..n {
                let ab = self.add(a, b);
                for c in 0..n {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return Some(vec![a, b, c]);
                    }
                }
            }
            None
        });
        check(Property::AdditiveAssociativity, w)
    }

    /// `a∘(b+c) = a∘b + a∘(a^- + c)`, witness `(a, b, c)`.
    pub fn check_semibrace_identity(&self) -> Result<(), Violation> {
        let g = &self.mul;
        let n = self.order();
        let w = par::first_witness(n, |a| {
            let ai = g.inv(a);
            for b in 0..n {
                let ab = g.op(a, b);
                for c in 0..n {
                    let lhs = g.op(a, self.add(b, c));
                    let rhs = self.add(ab, g.op(a, self.add(ai, c)));
                    if lhs != rhs {
                        return Some(vec![a, b, c]);
                    }
                }
            }
            None
        });
        check(Property::SemiBraceIdentity, w)
    }

    pub fn verify(&self) -> Result<(), Violation> {
        self.check_additive_associativity()?;
        self.check_semibrace_identity()
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    /// `0 + 0 = 0` for the multiplicative identity.
    pub fn zero_is_additive_idempotent(&self) -> bool {
        let e = self.mul.identity();
        self.add(e, e) == e
    }

    pub fn zero_is_left_additive_identity(&self) -> bool {
        let e = self.mul.identity();
        (0..self.order()).all(|b| self.add(e, b) == b)
    }

    /// Every row `b ↦ a + b` is injective.
    pub fn is_left_cancellative(&self) -> bool {
        let n = self.order();
        self.add.chunks(n).all(crate::map::is_permutation)
    }

    /// `(B, +)` is a group with identity the multiplicative identity;
    /// witness `(a)` for a missing identity or inverse.
    pub fn check_additive_group(&self) -> Result<(), Violation> {
        self.check_additive_associativity()
            .map_err(|v| Violation::new(Property::AdditiveGroup, v.witness))?;
        let e = self.mul.identity();
        let n = self.order();
        if let Some(a) = (0..n).find(|&a| self.add(e, a) != a || self.add(a, e) != a) {
            return Err(Violation::new(Property::AdditiveGroup, vec![a]));
        }
        if let Some(a) = (0..n).find(|&a| self.additive_inverse(a).is_none()) {
            return Err(Violation::new(Property::AdditiveGroup, vec![a]));
        }
        Ok(())
    }

    fn additive_inverse(&self, a: usize) -> Option<usize> {
        let e = self.mul.identity();
        (0..self.order()).find(|&b| self.add(a, b) == e && self.add(b, a) == e)
    }

    pub fn is_skew(&self) -> bool {
        self.is_valid() && self.check_additive_group().is_ok()
    }

    /// `-a`; requires a skew brace.
    pub fn neg(&self, a: usize) -> Result<usize> {
        self.additive_inverse(a)
            .ok_or_else(|| Error::input(format!("{a} has no additive inverse")))
    }

    fn negation_table(&self) -> Result<Vec<usize>> {
        (0..self.order()).map(|a| self.neg(a)).collect()
    }

    /// `a∘(b+c) = a∘b - a + a∘c`, witness `(a, b, c)`; requires `(B, +)` to
    /// be a group.
    pub fn check_skew_identity(&self) -> Result<(), Violation> {
        let neg = self
            .negation_table()
            .map_err(|_| Violation::new(Property::AdditiveGroup, vec![]))?;
        let g = &self.mul;
        let n = self.order();
        let w = par::first_witness(n, |a| {
            for b in 0..n {
                let left = self.add(g.op(a, b), neg[a]);
                for c in 0..n {
                    if g.op(a, self.add(b, c)) != self.add(left, g.op(a, c)) {
                        return Some(vec![a, b, c]);
                    }
                }
            }
            None
        });
        check(Property::SkewBraceIdentity, w)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.add(a, b) == self.add(b, a)))
    }

    pub fn is_brace(&self) -> bool {
        self.is_skew() && self.is_commutative()
    }

    pub fn classify(&self) -> SemiBraceFlags {
        let semibrace = self.is_valid();
        let skew = semibrace && self.check_additive_group().is_ok();
        SemiBraceFlags {
            semibrace,
            left_cancellative: semibrace && self.is_left_cancellative(),
            skew,
            brace: skew && self.is_commutative(),
            biskew: skew && self.biskew_report().map(|r| r.biskew()).unwrap_or(false),
            lambda_homomorphic: skew && self.check_lambda_homomorphic().map(|r| r.is_ok()).unwrap_or(false),
        }
    }

    /// Semi-brace with `a + b = a∘σ_a(b)`. Fails if `σ` is not a valid
    /// affine structure.
    pub fn from_affine(sigma: &AffineStructure) -> Result<Self> {
        sigma.verify()?;
        let g = sigma.group();
        let s = Self::from_fn(g.clone(), |a, b| g.op(a, sigma.apply(a, b)));
        s.verify()
            .map_err(|v| Error::Inconsistent(format!("associated semi-brace fails: {v}")))?;
        let flags = sigma.classify();
        if flags.cancellative && !s.is_left_cancellative() {
            return Err(Error::Inconsistent(
                "cancellative structure gave a non left-cancellative semi-brace".into(),
            ));
        }
        if flags.groupal {
            if s.check_additive_group().is_err() {
                return Err(Error::Inconsistent(
                    "groupal structure gave a non-skew semi-brace".into(),
                ));
            }
            for a in g.elements() {
                let ai = g.inv(a);
                if s.neg(a)? != sigma.apply(ai, ai) {
                    return Err(Error::Inconsistent(format!(
                        "additive inverse of {a} differs from sigma_(a^-)(a^-)"
                    )));
                }
            }
        }
        Ok(s)
    }

    /// `σ_a = λ_{a^-}`, i.e. `σ_a(b) = a^-∘(a + b)`.
    pub fn to_affine(&self) -> AffineStructure {
        let g = &self.mul;
        AffineStructure::from_fn(g.clone(), |a, b| g.op(g.inv(a), self.add(a, b)))
    }

    /// `λ_a(b)`.
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        let g = &self.mul;
        g.op(a, self.add(g.inv(a), b))
    }

    /// `ρ_b(a)`.
    pub fn rho(&self, b: usize, a: usize) -> usize {
        let g = &self.mul;
        g.op(g.inv(self.add(g.inv(a), b)), b)
    }

    pub fn lambda_rho(&self) -> LambdaRho {
        let n = self.order();
        LambdaRho {
            lambda: (0..n).map(|a| (0..n).map(|b| self.lambda(a, b)).collect()).collect(),
            rho: (0..n).map(|b| (0..n).map(|a| self.rho(b, a)).collect()).collect(),
        }
    }

    pub fn lambda_rho_report(&self) -> LambdaRhoReport {
        let LambdaRho { lambda, rho } = self.lambda_rho();
        let g = &self.mul;
        let n = self.order();
        let all = |f: &dyn Fn(usize, usize, usize) -> bool| {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| f(a, b, c))))
        };
        LambdaRhoReport {
            lambda_additive_endomorphism: all(&|a, b, c| {
                lambda[a][self.add(b, c)] == self.add(lambda[a][b], lambda[a][c])
            }),
            lambda_homomorphism: all(&|a, b, c| lambda[g.op(a, b)][c] == lambda[a][lambda[b][c]]),
            lambda_bijective: lambda.iter().all(|r| crate::map::is_permutation(r)),
            rho_anti_homomorphism: all(&|a, b, c| rho[g.op(a, b)][c] == rho[b][rho[a][c]]),
            rho_bijective: rho.iter().all(|r| crate::map::is_permutation(r)),
        }
    }

    fn require_skew(&self, what: &str) -> Result<()> {
        if self.is_skew() {
            Ok(())
        } else {
            Err(Error::input(format!("{what} needs a skew brace")))
        }
    }

    /// Evaluates every bi-skew criterion independently.
    pub fn biskew_report(&self) -> Result<BiskewReport> {
        self.require_skew("bi-skew check")?;
        let g = &self.mul;
        let n = self.order();
        let neg = self.negation_table()?;
        let sigma = self.to_affine();
        let triples = |f: &(dyn Fn(usize, usize, usize) -> bool + Sync)| {
            par::first_witness(n, |a| {
                (0..n)
                    .flat_map(|b| (0..n).map(move |c| (b, c)))
                    .find(|&(b, c)| !f(a, b, c))
                    .map(|(b, c)| vec![a, b, c])
            })
        };
        let lambda_automorphism =
            triples(&|a, b, c| self.lambda(a, g.op(b, c)) == g.op(self.lambda(a, b), self.lambda(a, c)));
        let star_prime = triples(&|a, b, c| {
            self.add(a, g.op(b, c)) == g.op(g.op(self.add(a, b), g.inv(a)), self.add(a, c))
        });
        let star_double_prime = triples(&|a, b, c| {
            self.add(a, g.op(b, c)) == g.op(self.add(a, b), self.add(a, g.op(neg[a], c)))
        });
        let sigma_sum_identity = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| {
                let x = g.op(a, sigma.apply(a, b));
                let y = g.op(b, a);
                (0..n).any(|c| sigma.apply(x, c) != sigma.apply(y, c))
            })
            .map(|(a, b)| vec![a, b]);
        Ok(BiskewReport {
            lambda_automorphism,
            star_prime,
            star_double_prime,
            sigma_sum_identity,
        })
    }

    /// Whether every `λ_a` is an automorphism of `(B, ∘)`. All criteria in
    /// [`BiskewReport`] must agree, otherwise this is an
    /// [`Error::Inconsistent`].
    pub fn is_biskew(&self) -> Result<bool> {
        let r = self.biskew_report()?;
        if !r.agree() {
            return Err(Error::Inconsistent(format!("bi-skew criteria disagree: {r:?}")));
        }
        Ok(r.biskew())
    }

    pub fn check_biskew(&self) -> Result<()> {
        let r = self.biskew_report()?;
        if !r.agree() {
            return Err(Error::Inconsistent(format!("bi-skew criteria disagree: {r:?}")));
        }
        match r.lambda_automorphism {
            None => Ok(()),
            Some(w) => Err(Violation::new(Property::Biskew, w).into()),
        }
    }

    /// `(B, +)` as a group; fails unless `+` is a group operation.
    pub fn additive_group(&self) -> Result<FiniteGroup> {
        let g = FiniteGroup::from_flat_verified(
            format!("({}, +)", self.mul.name()),
            self.order(),
            self.add.clone(),
        )
        .map_err(|e| match e {
            Error::Violation(v) => Error::Violation(Violation::new(Property::AdditiveGroup, v.witness)),
            other => other,
        })?;
        if g.identity() != self.mul.identity() {
            return Err(Violation::new(Property::AdditiveGroup, vec![g.identity()]).into());
        }
        Ok(g)
    }

    /// The structure with the two operations exchanged. Only checked for
    /// shape; call [`SemiBrace::verify`] on the result.
    pub fn swapped(&self) -> Result<SemiBrace> {
        let add_group = self.additive_group()?;
        Ok(SemiBrace {
            mul: add_group,
            add: self.mul.flat_table().to_vec(),
        })
    }

    /// `ψ_a = λ_a` as an affine structure on `(B, +)`. Its semi-brace is the
    /// swapped structure `(B, +, ∘)`, which is checked to be a skew brace.
    pub fn biskew_dual_affine(&self) -> Result<AffineStructure> {
        if !self.is_biskew()? {
            return Err(Error::input("dual affine structure needs a bi-skew brace"));
        }
        let swapped = self.swapped()?;
        let psi = AffineStructure::from_fn(swapped.mul.clone(), |a, b| self.lambda(a, b));
        psi.verify()
            .map_err(|v| Error::Inconsistent(format!("dual structure fails: {v}")))?;
        if !psi.is_groupal() {
            return Err(Error::Inconsistent("dual structure is not groupal".into()));
        }
        let rebuilt = SemiBrace::from_affine(&psi)?;
        if rebuilt != swapped || !rebuilt.is_skew() {
            return Err(Error::Inconsistent(
                "dual structure does not rebuild the swapped skew brace".into(),
            ));
        }
        Ok(psi)
    }

    /// `λ_{a+b} = λ_a ∘ λ_b`; witness `(a, b, c)` with
    /// `λ_{a+b}(c) ≠ λ_a(λ_b(c))`.
    pub fn check_lambda_homomorphic(&self) -> Result<Result<(), Violation>> {
        self.require_skew("lambda-homomorphic check")?;
        let n = self.order();
        let w = par::first_witness(n, |a| {
            for b in 0..n {
                let s = self.add(a, b);
                for c in 0..n {
                    if self.lambda(s, c) != self.lambda(a, self.lambda(b, c)) {
                        return Some(vec![a, b, c]);
                    }
                }
            }
            None
        });
        Ok(check(Property::LambdaHomomorphic, w))
    }

    pub fn is_lambda_homomorphic(&self) -> Result<bool> {
        Ok(self.check_lambda_homomorphic()?.is_ok())
    }

    /// Same multiplication, `a +' b = b + a`.
    pub fn opposite(&self) -> Result<SemiBrace> {
        self.require_skew("opposite")?;
        let op = Self::from_fn(self.mul.clone(), |a, b| self.add(b, a));
        if !op.is_skew() {
            return Err(Error::Inconsistent("opposite is not a skew brace".into()));
        }
        Ok(op)
    }

    pub fn additive_report(&self) -> AdditiveReport {
        let group = self.additive_group().ok();
        AdditiveReport {
            is_group: group.is_some(),
            commutative: self.is_commutative(),
            iso_type: group.map(|g| identify(&g)),
        }
    }
}

/// A bijection preserving both operations, if one exists.
pub fn isomorphic(s: &SemiBrace, t: &SemiBrace) -> Result<Option<Vec<usize>>> {
    isomorphic_bounded(s, t, DEFAULT_ISOMORPHISM_BOUND)
}

pub fn isomorphic_bounded(s: &SemiBrace, t: &SemiBrace, bound: usize) -> Result<Option<Vec<usize>>> {
    if s.order() > bound || t.order() > bound {
        return Err(Error::Bound {
            what: "semi-brace order for isomorphism search",
            size: s.order().max(t.order()),
            limit: bound,
        });
    }
    if s.order() != t.order() {
        return Ok(None);
    }
    let n = s.order();
    let mut found = None;
    search_isomorphisms(&s.mul, &t.mul, |f| {
        let preserves_add =
            (0..n).all(|a| (0..n).all(|b| f[s.add(a, b)] == t.add(f[a], f[b])));
        if preserves_add {
            found = Some(f.to_vec());
        }
        found.is_none()
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::map::SelfMap;

    fn g(spec: &str) -> FiniteGroup {
        FiniteGroup::from_spec(spec).unwrap()
    }

    #[test]
    fn trivial_and_almost_trivial() {
        let s3 = g("S3");
        let t = SemiBrace::trivial(&s3);
        let f = t.classify();
        assert!(f.skew && !f.brace && f.biskew && f.lambda_homomorphic);
        let at = SemiBrace::almost_trivial(&s3);
        let f = at.classify();
        assert!(f.skew && !f.brace && f.biskew);
        assert_eq!(t.opposite().unwrap(), at);
        assert_eq!(at.opposite().unwrap().opposite().unwrap(), at);
    }

    #[test]
    fn right_projection_on_c2() {
        let s = SemiBrace::new(g("C2"), &[vec![0, 1], vec![0, 1]]).unwrap();
        let f = s.classify();
        assert!(f.semibrace && f.left_cancellative && !f.skew);
        assert_eq!(s.add(1, 0), 0);
        assert!(s.zero_is_left_additive_identity());
        assert!(matches!(s.opposite(), Err(Error::Input(_))));
    }

    #[test]
    fn sign_flip_sum_formula() {
        let s = SemiBrace::from_affine(&families::sign_flip(6).unwrap()).unwrap();
        for k in 0..6 {
            for l in 0..6 {
                let expect = if k % 2 == 0 { (k + l) % 6 } else { (k + 6 - l) % 6 };
                assert_eq!(s.add(k, l), expect);
            }
        }
        assert_eq!(s.add(1, 2), 5);
        let rep = s.additive_report();
        assert_eq!(rep.iso_type.unwrap().name, "D3");
    }

    #[test]
    fn to_affine_examples() {
        let c4 = g("C4");
        assert_eq!(SemiBrace::trivial(&c4).to_affine(), families::trivial(&c4));
        let s3 = g("S3");
        let sigma = SemiBrace::almost_trivial(&s3).to_affine();
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(sigma.apply(a, b), s3.op(s3.op(s3.inv(a), b), a));
            }
        }
    }

    #[test]
    fn lambda_rho_trivial() {
        let c2 = g("C2");
        let lr = SemiBrace::trivial(&c2).lambda_rho();
        assert_eq!(lr.lambda, vec![vec![0, 1], vec![0, 1]]);
        let s3 = g("S3");
        let t = SemiBrace::trivial(&s3);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(t.rho(b, a), s3.op(s3.op(s3.inv(b), a), b));
            }
        }
    }

    #[test]
    fn lambda_rho_reports() {
        let s = SemiBrace::from_affine(&families::sign_flip(6).unwrap()).unwrap();
        let r = s.lambda_rho_report();
        assert!(
            r.lambda_additive_endomorphism
                && r.lambda_homomorphism
                && r.lambda_bijective
                && r.rho_anti_homomorphism
                && r.rho_bijective
        );
        let gg = g("C2*S3");
        let parity = [0, 1, 1, 0, 0, 1];
        let f = SelfMap::new(gg.elements().map(|a| parity[a % 6] * 6 + a % 6).collect()).unwrap();
        let s = SemiBrace::from_affine(&families::constant(&gg, &f).unwrap()).unwrap();
        assert!(!s.lambda_rho_report().lambda_bijective);
    }

    #[test]
    fn biskew_examples() {
        let sf6 = SemiBrace::from_affine(&families::sign_flip(6).unwrap()).unwrap();
        assert!(sf6.is_biskew().unwrap());
        let pt8 = SemiBrace::from_affine(&families::parity_twist(8).unwrap()).unwrap();
        assert!(!pt8.is_biskew().unwrap());
        let sigma = families::parity_twist(8).unwrap();
        assert_eq!(sigma.apply(1, 2), 2);
        assert_eq!(sigma.apply(1, 1), 7);
        assert_eq!(pt8.mul().op(7, 7), 6);
        let rs = SemiBrace::new(g("C2"), &[vec![0, 1], vec![0, 1]]).unwrap();
        assert!(matches!(rs.is_biskew(), Err(Error::Input(_))));
    }

    #[test]
    fn biskew_dual() {
        let sf6 = SemiBrace::from_affine(&families::sign_flip(6).unwrap()).unwrap();
        let psi = sf6.biskew_dual_affine().unwrap();
        assert_eq!(identify(psi.group()).name, "D3");
        let t = SemiBrace::trivial(&g("C4"));
        assert_eq!(t.biskew_dual_affine().unwrap(), families::trivial(&g("C4")));
        let pt8 = SemiBrace::from_affine(&families::parity_twist(8).unwrap()).unwrap();
        assert!(matches!(pt8.biskew_dual_affine(), Err(Error::Input(_))));
    }

    #[test]
    fn opposite_of_sign_flip_is_parity_twist_on_c8() {
        let sf = SemiBrace::from_affine(&families::sign_flip(8).unwrap()).unwrap();
        let pt = SemiBrace::from_affine(&families::parity_twist(8).unwrap()).unwrap();
        assert_eq!(sf.opposite().unwrap(), pt);
    }

    #[test]
    fn isomorphism_examples() {
        let c6 = g("C6");
        let t = SemiBrace::trivial(&c6);
        let sf = SemiBrace::from_affine(&families::sign_flip(6).unwrap()).unwrap();
        assert_eq!(isomorphic(&t, &t).unwrap(), Some((0..6).collect()));
        assert_eq!(isomorphic(&t, &sf).unwrap(), None);
        let neg = crate::group::GroupHom::new(&c6, &c6, vec![0, 5, 4, 3, 2, 1]).unwrap();
        let moved = SemiBrace::from_affine(&families::sign_flip(6).unwrap().transport(&neg).unwrap()).unwrap();
        assert!(isomorphic(&sf, &moved).unwrap().is_some());
    }

    #[test]
    fn star_and_double_star_agree_on_skew_braces() {
        for m in [2, 4, 6, 8] {
            for s in [families::sign_flip(m).unwrap(), families::parity_twist(m).unwrap()] {
                let b = SemiBrace::from_affine(&s).unwrap();
                assert!(b.check_semibrace_identity().is_ok());
                assert!(b.check_skew_identity().is_ok());
            }
        }
    }
}

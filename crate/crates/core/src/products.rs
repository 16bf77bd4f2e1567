//! Zappa–Szép products, matched product systems of groups and the two ways
//! of putting an affine structure on the resulting group.
//!
//! Pairs `(a, u)` with `a ∈ S`, `u ∈ T` are encoded as `a * |T| + u`, the same
//! as [`FiniteGroup::direct_product`].

use serde::Serialize;

use crate::affine::AffineStructure;
use crate::error::{check, Error, Property, Result, Violation};
use crate::group::FiniteGroup;
use crate::map::{invert, is_permutation};
use crate::par;
use crate::semibrace::{isomorphic, SemiBrace};

/// Two groups acting on each other: `eta[u][a] = ^u a` and
/// `delta[a][u] = u^a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZappaSystem {
    s: FiniteGroup,
    t: FiniteGroup,
    eta: Vec<Vec<usize>>,
    delta: Vec<Vec<usize>>,
}

impl ZappaSystem {
    pub fn new(
        s: FiniteGroup,
        t: FiniteGroup,
        eta: Vec<Vec<usize>>,
        delta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_table("eta", &eta, t.order(), s.order())?;
        check_table("delta", &delta, s.order(), t.order())?;
        Ok(ZappaSystem { s, t, eta, delta })
    }

    /// `^u a = a`, `u^a = u`.
    pub fn trivial(s: &FiniteGroup, t: &FiniteGroup) -> Self {
        ZappaSystem {
            eta: vec![s.elements().collect(); t.order()],
            delta: vec![t.elements().collect(); s.order()],
            s: s.clone(),
            t: t.clone(),
        }
    }

    pub fn s(&self) -> &FiniteGroup {
        &self.s
    }

    pub fn t(&self) -> &FiniteGroup {
        &self.t
    }

    /// `^u a`.
    pub fn eta(&self, u: usize, a: usize) -> usize {
        self.eta[u][a]
    }

    /// `u^a`.
    pub fn delta(&self, a: usize, u: usize) -> usize {
        self.delta[a][u]
    }

    pub fn eta_rows(&self) -> &[Vec<usize>] {
        &self.eta
    }

    pub fn delta_rows(&self) -> &[Vec<usize>] {
        &self.delta
    }

    /// Checks, in order:
    /// `^u(a∘b) = ^u a ∘ ^{u^a} b` (witness `(u, a, b)`),
    /// `^{u∘v} a = ^u(^v a)` (witness `(u, v, a)`),
    /// `(u∘v)^a = u^{^v a} ∘ v^a` (witness `(u, v, a)`),
    /// `u^{a∘b} = (u^a)^b` (witness `(u, a, b)`).
    pub fn verify(&self) -> Result<(), Violation> {
        let (s, t) = (&self.s, &self.t);
        let (ns, nt) = (s.order(), t.order());
        let w = first3(nt, ns, ns, |u, a, b| {
            self.eta(u, s.op(a, b)) == s.op(self.eta(u, a), self.eta(self.delta(a, u), b))
        });
        check(Property::ZappaActionProduct, w)?;
        let w = first3(nt, nt, ns, |u, v, a| {
            self.eta(t.op(u, v), a) == self.eta(u, self.eta(v, a))
        });
        check(Property::ZappaActionComposition, w)?;
        let w = first3(nt, nt, ns, |u, v, a| {
            self.delta(a, t.op(u, v)) == t.op(self.delta(self.eta(v, a), u), self.delta(a, v))
        });
        check(Property::ZappaCoactionProduct, w)?;
        let w = first3(nt, ns, ns, |u, a, b| {
            self.delta(s.op(a, b), u) == self.delta(b, self.delta(a, u))
        });
        check(Property::ZappaCoactionComposition, w)
    }

    /// `(a, u)(b, v) = (a∘^u b, u^b∘v)`.
    pub fn product_table(&self) -> Vec<usize> {
        let (s, t) = (&self.s, &self.t);
        let nt = t.order();
        let n = s.order() * nt;
        (0..n * n)
            .map(|xy| {
                let (x, y) = (xy / n, xy % n);
                let (a, u, b, v) = (x / nt, x % nt, y / nt, y % nt);
                s.op(a, self.eta(u, b)) * nt + t.op(self.delta(b, u), v)
            })
            .collect()
    }

    /// The product group, re-verified from its table.
    pub fn product_group(&self) -> Result<FiniteGroup> {
        self.verify()?;
        FiniteGroup::from_flat_verified(
            format!("{}.{}", self.s.name(), self.t.name()),
            self.s.order() * self.t.order(),
            self.product_table(),
        )
    }

    /// `u∘a = ^u a ∘ u^a` for a system with `S = T`; witness `(u, a)`.
    pub fn check_compatibility(&self) -> Result<()> {
        if self.s != self.t {
            return Err(Error::input("compatibility needs S = T"));
        }
        let g = &self.s;
        let n = g.order();
        let w = (0..n)
            .flat_map(|u| (0..n).map(move |a| (u, a)))
            .find(|&(u, a)| g.op(u, a) != g.op(self.eta(u, a), self.delta(a, u)))
            .map(|(u, a)| vec![u, a]);
        Ok(check(Property::ZappaCompatibility, w)?)
    }

    /// `^u a = σ_{u^-}(a)` and `u^a = (^u a)^-∘u∘a`.
    pub fn from_affine(sigma: &AffineStructure) -> Result<Self> {
        sigma.verify()?;
        if !sigma.is_cancellative() {
            return Err(Error::input("Zappa system needs a cancellative affine structure"));
        }
        let g = sigma.group();
        let n = g.order();
        let eta: Vec<Vec<usize>> = (0..n)
            .map(|u| (0..n).map(|a| sigma.apply(g.inv(u), a)).collect())
            .collect();
        let delta = (0..n)
            .map(|a| {
                (0..n)
                    .map(|u| g.op(g.op(g.inv(eta[u][a]), u), a))
                    .collect()
            })
            .collect();
        let z = ZappaSystem {
            s: g.clone(),
            t: g.clone(),
            eta,
            delta,
        };
        z.check_compatibility()
            .map_err(|e| Error::Inconsistent(format!("compatibility fails by construction: {e}")))?;
        Ok(z)
    }

    /// `σ_u(a) = ^{u^-} a`, after checking compatibility; the result is
    /// verified in full.
    pub fn to_affine(&self) -> Result<AffineStructure> {
        self.check_compatibility()?;
        let g = &self.s;
        let sigma = AffineStructure::from_fn(g.clone(), |u, a| self.eta(g.inv(u), a));
        sigma.verify()?;
        Ok(sigma)
    }
}

fn check_table(name: &str, rows: &[Vec<usize>], len: usize, width: usize) -> Result<()> {
    if rows.len() != len || rows.iter().any(|r| r.len() != width) {
        return Err(Error::input(format!("{name} table must be {len}x{width}")));
    }
    if rows.iter().flatten().any(|&x| x >= width) {
        return Err(Error::input(format!("{name} table has an entry outside 0..{width}")));
    }
    Ok(())
}

fn first3(
    n1: usize,
    n2: usize,
    n3: usize,
    holds: impl Fn(usize, usize, usize) -> bool + Sync + Send,
) -> Option<Vec<usize>> {
    par::first_witness(n1, |x| {
        (0..n2)
            .flat_map(|y| (0..n3).map(move |z| (y, z)))
            .find(|&(y, z)| !holds(x, y, z))
            .map(|(y, z)| vec![x, y, z])
    })
}

fn first4(
    n1: usize,
    n2: usize,
    n3: usize,
    n4: usize,
    holds: impl Fn(usize, usize, usize, usize) -> bool + Sync + Send,
) -> Option<Vec<usize>> {
    par::first_witness(n1, |x| {
        for y in 0..n2 {
            for z in 0..n3 {
                for w in 0..n4 {
                    if !holds(x, y, z, w) {
                        return Some(vec![x, y, z, w]);
                    }
                }
            }
        }
        None
    })
}

/// Groups `S`, `T` with `alpha[u]` a permutation of `S` for each `u ∈ T` and
/// `beta[a]` a permutation of `T` for each `a ∈ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedSystem {
    s: FiniteGroup,
    t: FiniteGroup,
    alpha: Vec<Vec<usize>>,
    beta: Vec<Vec<usize>>,
    alpha_inv: Vec<Vec<usize>>,
    beta_inv: Vec<Vec<usize>>,
}

/// Outcome of a two-sided condition: the first failing tuple on the `S`
/// side (involving `α`) and on the `T` side (involving `β`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SidedWitness {
    pub alpha: Option<Vec<usize>>,
    pub beta: Option<Vec<usize>>,
}

impl SidedWitness {
    pub fn holds(&self) -> bool {
        self.alpha.is_none() && self.beta.is_none()
    }

    fn violation(&self, property: Property) -> Option<Violation> {
        self.alpha
            .as_ref()
            .or(self.beta.as_ref())
            .map(|w| Violation::new(property, w.clone()))
    }
}

/// The three conditions under which `σ^S × σ^T` is an affine structure on the
/// bowtie group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductConditions {
    /// `σ_0 α_u = α_u σ_0`, witness `(u)`; `σ_0 β_a = β_a σ_0`, witness `(a)`.
    pub condition_i: SidedWitness,
    /// `σ_{α_u(a)} = σ_a`, witness `(u, a)`; `σ_{β_a(u)} = σ_u`, witness `(a, u)`.
    pub condition_ii: SidedWitness,
    /// Witness `(a, b, u, v)` on both sides.
    pub condition_iii: SidedWitness,
}

impl ProductConditions {
    pub fn holds(&self) -> bool {
        self.condition_i.holds() && self.condition_ii.holds() && self.condition_iii.holds()
    }

    pub fn first_violation(&self) -> Option<Violation> {
        self.condition_i
            .violation(Property::ConditionI)
            .or_else(|| self.condition_ii.violation(Property::ConditionII))
            .or_else(|| self.condition_iii.violation(Property::ConditionIII))
    }
}

impl MatchedSystem {
    pub fn new(
        s: FiniteGroup,
        t: FiniteGroup,
        alpha: Vec<Vec<usize>>,
        beta: Vec<Vec<usize>>,
    ) -> Result<Self> {
        check_table("alpha", &alpha, t.order(), s.order())?;
        check_table("beta", &beta, s.order(), t.order())?;
        if let Some(u) = alpha.iter().position(|p| !is_permutation(p)) {
            return Err(Error::input(format!("alpha[{u}] is not a permutation")));
        }
        if let Some(a) = beta.iter().position(|p| !is_permutation(p)) {
            return Err(Error::input(format!("beta[{a}] is not a permutation")));
        }
        let alpha_inv = alpha.iter().map(|p| invert(p)).collect();
        let beta_inv = beta.iter().map(|p| invert(p)).collect();
        Ok(MatchedSystem {
            s,
            t,
            alpha,
            beta,
            alpha_inv,
            beta_inv,
        })
    }

    pub fn trivial(s: &FiniteGroup, t: &FiniteGroup) -> Self {
        Self::new(
            s.clone(),
            t.clone(),
            vec![s.elements().collect(); t.order()],
            vec![t.elements().collect(); s.order()],
        )
        .expect("identity actions")
    }

    /// `α_u = ^u(-)` and `β_b^{-1}(u) = u^{α_u^{-1}(b)}`, undoing
    /// [`MatchedSystem::to_zappa`].
    pub fn from_zappa(z: &ZappaSystem) -> Result<Self> {
        let (s, t) = (z.s(), z.t());
        let alpha: Vec<Vec<usize>> = z.eta_rows().to_vec();
        if let Some(u) = alpha.iter().position(|p| !is_permutation(p)) {
            return Err(Error::input(format!("^{u}(-) is not a permutation")));
        }
        let alpha_inv: Vec<Vec<usize>> = alpha.iter().map(|p| invert(p)).collect();
        let beta_inv: Vec<Vec<usize>> = s
            .elements()
            .map(|b| t.elements().map(|u| z.delta(alpha_inv[u][b], u)).collect())
            .collect();
        if let Some(b) = beta_inv.iter().position(|p| !is_permutation(p)) {
            return Err(Error::input(format!("derived beta[{b}] is not a permutation")));
        }
        let beta = beta_inv.iter().map(|p| invert(p)).collect();
        Self::new(s.clone(), t.clone(), alpha, beta)
    }

    pub fn s(&self) -> &FiniteGroup {
        &self.s
    }

    pub fn t(&self) -> &FiniteGroup {
        &self.t
    }

    pub fn alpha_rows(&self) -> &[Vec<usize>] {
        &self.alpha
    }

    pub fn beta_rows(&self) -> &[Vec<usize>] {
        &self.beta
    }

    /// `α_u(a)`.
    #[inline]
    pub fn alpha(&self, u: usize, a: usize) -> usize {
        self.alpha[u][a]
    }

    #[inline]
    pub fn alpha_inv(&self, u: usize, a: usize) -> usize {
        self.alpha_inv[u][a]
    }

    /// `β_a(u)`.
    #[inline]
    pub fn beta(&self, a: usize, u: usize) -> usize {
        self.beta[a][u]
    }

    #[inline]
    pub fn beta_inv(&self, a: usize, u: usize) -> usize {
        self.beta_inv[a][u]
    }

    /// Pair encoding.
    pub fn pair(&self, a: usize, u: usize) -> usize {
        a * self.t.order() + u
    }

    pub fn unpair(&self, x: usize) -> (usize, usize) {
        (x / self.t.order(), x % self.t.order())
    }

    /// `α_{u∘v} = α_u α_v`, witness `(u, v)`, then the same for `β`.
    pub fn check_homomorphisms(&self) -> Result<(), Violation> {
        let (s, t) = (&self.s, &self.t);
        let w = t
            .elements()
            .flat_map(|u| t.elements().map(move |v| (u, v)))
            .find(|&(u, v)| s.elements().any(|x| self.alpha(t.op(u, v), x) != self.alpha(u, self.alpha(v, x))))
            .map(|(u, v)| vec![u, v]);
        check(Property::AlphaHomomorphism, w)?;
        let w = s
            .elements()
            .flat_map(|a| s.elements().map(move |b| (a, b)))
            .find(|&(a, b)| t.elements().any(|x| self.beta(s.op(a, b), x) != self.beta(a, self.beta(b, x))))
            .map(|(a, b)| vec![a, b]);
        check(Property::BetaHomomorphism, w)
    }

    /// Homomorphisms, then
    /// `α_u(α_u^{-1}(a)∘b) = a∘α_{β_a^{-1}(u)}(b)` (witness `(a, b, u)`) and
    /// `β_a(β_a^{-1}(u)∘v) = u∘β_{α_u^{-1}(a)}(v)` (witness `(a, u, v)`).
    pub fn verify(&self) -> Result<(), Violation> {
        self.check_homomorphisms()?;
        let (s, t) = (&self.s, &self.t);
        let (ns, nt) = (s.order(), t.order());
        let w = first3(ns, ns, nt, |a, b, u| {
            self.alpha(u, s.op(self.alpha_inv(u, a), b)) == s.op(a, self.alpha(self.beta_inv(a, u), b))
        });
        check(Property::MatchedAlpha, w)?;
        let w = first3(ns, nt, nt, |a, u, v| {
            self.beta(a, t.op(self.beta_inv(a, u), v)) == t.op(u, self.beta(self.alpha_inv(u, a), v))
        });
        check(Property::MatchedBeta, w)
    }

    /// `(a,u)∘(b,v) = (a∘α_{β_a^{-1}(u)}(b), u∘β_{α_u^{-1}(a)}(v))`.
    pub fn bowtie_op(&self, x: usize, y: usize) -> usize {
        let (s, t) = (&self.s, &self.t);
        let (a, u) = self.unpair(x);
        let (b, v) = self.unpair(y);
        self.pair(
            s.op(a, self.alpha(self.beta_inv(a, u), b)),
            t.op(u, self.beta(self.alpha_inv(u, a), v)),
        )
    }

    /// The bowtie group, verified from its table. Its inverses are checked
    /// against `(a,u)^- = (α_u^{-1}(a)^-, β_a^{-1}(u)^-)`.
    pub fn bowtie_group(&self) -> Result<FiniteGroup> {
        self.verify()?;
        let n = self.s.order() * self.t.order();
        let table = (0..n * n).map(|xy| self.bowtie_op(xy / n, xy % n)).collect();
        let g = FiniteGroup::from_flat_verified(
            format!("{}|x|{}", self.s.name(), self.t.name()),
            n,
            table,
        )
        .map_err(|e| Error::Inconsistent(format!("bowtie product is not a group: {e}")))?;
        for x in 0..n {
            let (a, u) = self.unpair(x);
            let expected = self.pair(
                self.s.inv(self.alpha_inv(u, a)),
                self.t.inv(self.beta_inv(a, u)),
            );
            if g.inv(x) != expected {
                return Err(Error::Inconsistent(format!("inverse formula fails at {x}")));
            }
        }
        Ok(g)
    }

    /// `^u a = α_u(a)`, `u^a = β^{-1}_{α_u(a)}(u)`.
    pub fn to_zappa(&self) -> ZappaSystem {
        let eta = self.alpha.clone();
        let delta = self
            .s
            .elements()
            .map(|a| {
                self.t
                    .elements()
                    .map(|u| self.beta_inv(self.alpha(u, a), u))
                    .collect()
            })
            .collect();
        ZappaSystem {
            s: self.s.clone(),
            t: self.t.clone(),
            eta,
            delta,
        }
    }

    /// `(a, u) ↦ (a, β_a^{-1}(u))` as an image array.
    pub fn zappa_map(&self) -> Vec<usize> {
        let n = self.s.order() * self.t.order();
        (0..n)
            .map(|x| {
                let (a, u) = self.unpair(x);
                self.pair(a, self.beta_inv(a, u))
            })
            .collect()
    }

    /// Checks that [`MatchedSystem::zappa_map`] is an isomorphism from the
    /// bowtie group onto the product of [`MatchedSystem::to_zappa`].
    pub fn check_zappa_isomorphism(&self) -> Result<()> {
        let bowtie = self.bowtie_group()?;
        let zappa = self.to_zappa().product_group()?;
        crate::group::GroupHom::new(&bowtie, &zappa, self.zappa_map())?;
        Ok(())
    }

    fn check_factors(&self, sigma_s: &AffineStructure, sigma_t: &AffineStructure) -> Result<()> {
        if sigma_s.group() != &self.s || sigma_t.group() != &self.t {
            return Err(Error::input("affine structures do not live on S and T"));
        }
        Ok(())
    }

    /// Evaluates (I), (II) and (III) exhaustively. In (III), with
    /// `ρ = ρ_b(a^-)` taken from the semi-brace of `σ^S`,
    /// `v̄ = β_b^{-1}(v)` and `V̄ = β^{-1}_{σ_a(b)}(σ_u(v))`, the `S` side is
    /// `α_{v̄} σ_ρ = σ_ρ α_{V̄}`; the `T` side is symmetric with
    /// `b̄ = α_v^{-1}(b)` and `B̄ = α^{-1}_{σ_u(v)}(σ_a(b))`.
    pub fn product_conditions(
        &self,
        sigma_s: &AffineStructure,
        sigma_t: &AffineStructure,
    ) -> Result<ProductConditions> {
        self.verify()?;
        sigma_s.verify()?;
        sigma_t.verify()?;
        self.check_factors(sigma_s, sigma_t)?;
        let (s, t) = (&self.s, &self.t);
        let (ns, nt) = (s.order(), t.order());
        let (es, et) = (s.identity(), t.identity());

        let condition_i = SidedWitness {
            alpha: t
                .elements()
                .find(|&u| {
                    s.elements()
                        .any(|x| sigma_s.apply(es, self.alpha(u, x)) != self.alpha(u, sigma_s.apply(es, x)))
                })
                .map(|u| vec![u]),
            beta: s
                .elements()
                .find(|&a| {
                    t.elements()
                        .any(|x| sigma_t.apply(et, self.beta(a, x)) != self.beta(a, sigma_t.apply(et, x)))
                })
                .map(|a| vec![a]),
        };

        let same_row = |sig: &AffineStructure, p: usize, q: usize| sig.map(p) == sig.map(q);
        let condition_ii = SidedWitness {
            alpha: t
                .elements()
                .flat_map(|u| s.elements().map(move |a| (u, a)))
                .find(|&(u, a)| !same_row(sigma_s, self.alpha(u, a), a))
                .map(|(u, a)| vec![u, a]),
            beta: s
                .elements()
                .flat_map(|a| t.elements().map(move |u| (a, u)))
                .find(|&(a, u)| !same_row(sigma_t, self.beta(a, u), u))
                .map(|(a, u)| vec![a, u]),
        };

        let bs = SemiBrace::from_affine(sigma_s)?;
        let bt = SemiBrace::from_affine(sigma_t)?;
        let alpha_side = first4(ns, ns, nt, nt, |a, b, u, v| {
            let rho = bs.rho(b, s.inv(a));
            let v_bar = self.beta_inv(b, v);
            let big_v = self.beta_inv(sigma_s.apply(a, b), sigma_t.apply(u, v));
            s.elements().all(|x| {
                self.alpha(v_bar, sigma_s.apply(rho, x)) == sigma_s.apply(rho, self.alpha(big_v, x))
            })
        });
        let beta_side = first4(ns, ns, nt, nt, |a, b, u, v| {
            let rho = bt.rho(v, t.inv(u));
            let b_bar = self.alpha_inv(v, b);
            let big_b = self.alpha_inv(sigma_t.apply(u, v), sigma_s.apply(a, b));
            t.elements().all(|y| {
                self.beta(b_bar, sigma_t.apply(rho, y)) == sigma_t.apply(rho, self.beta(big_b, y))
            })
        });
        Ok(ProductConditions {
            condition_i,
            condition_ii,
            condition_iii: SidedWitness {
                alpha: alpha_side,
                beta: beta_side,
            },
        })
    }

    /// `σ_{(a,u)}(b,v) = (σ_a(b), σ_u(v))` on the bowtie group, unchecked.
    pub fn product_sigma(
        &self,
        sigma_s: &AffineStructure,
        sigma_t: &AffineStructure,
    ) -> Result<AffineStructure> {
        self.check_factors(sigma_s, sigma_t)?;
        let g = self.bowtie_group()?;
        Ok(AffineStructure::from_fn(g, |x, y| {
            let (a, u) = self.unpair(x);
            let (b, v) = self.unpair(y);
            self.pair(sigma_s.apply(a, b), sigma_t.apply(u, v))
        }))
    }

    /// The product structure, built only when (I), (II), (III) hold and then
    /// verified in full.
    pub fn product_affine(
        &self,
        sigma_s: &AffineStructure,
        sigma_t: &AffineStructure,
    ) -> Result<AffineStructure> {
        let conditions = self.product_conditions(sigma_s, sigma_t)?;
        if let Some(v) = conditions.first_violation() {
            return Err(v.into());
        }
        let sigma = self.product_sigma(sigma_s, sigma_t)?;
        sigma
            .verify()
            .map_err(|v| Error::Inconsistent(format!("product structure fails: {v}")))?;
        let fs = sigma_s.classify();
        let ft = sigma_t.classify();
        let f = sigma.classify();
        if (fs.cancellative && ft.cancellative && !f.cancellative)
            || (fs.groupal && ft.groupal && !f.groupal)
        {
            return Err(Error::Inconsistent("product lost cancellative/groupal".into()));
        }
        Ok(sigma)
    }

    /// Whether the conditions hold and whether the product table is a valid
    /// affine structure, evaluated independently.
    pub fn construction_iff(
        &self,
        sigma_s: &AffineStructure,
        sigma_t: &AffineStructure,
    ) -> Result<(bool, bool)> {
        let conditions = self.product_conditions(sigma_s, sigma_t)?.holds();
        let valid = self.product_sigma(sigma_s, sigma_t)?.is_valid();
        Ok((conditions, valid))
    }

    /// `α_u ∈ Aut(S, +)` (witness `(u, x, y)`), then `β_a ∈ Aut(T, +)`
    /// (witness `(a, x, y)`).
    pub fn check_additive_automorphisms(&self, bs: &SemiBrace, bt: &SemiBrace) -> Result<(), Violation> {
        let (s, t) = (&self.s, &self.t);
        let w = first3(t.order(), s.order(), s.order(), |u, x, y| {
            self.alpha(u, bs.add(x, y)) == bs.add(self.alpha(u, x), self.alpha(u, y))
        });
        check(Property::AlphaAdditiveAutomorphism, w)?;
        let w = first3(s.order(), t.order(), t.order(), |a, x, y| {
            self.beta(a, bt.add(x, y)) == bt.add(self.beta(a, x), self.beta(a, y))
        });
        check(Property::BetaAdditiveAutomorphism, w)
    }

    /// `λ_a α_{β_a^{-1}(u)} = α_u λ_{α_u^{-1}(a)}` (witness `(a, u)`) and
    /// `λ_u β_{α_u^{-1}(a)} = β_a λ_{β_a^{-1}(u)}` (witness `(a, u)`).
    pub fn check_lambda_compatibility(&self, bs: &SemiBrace, bt: &SemiBrace) -> Result<(), Violation> {
        let (s, t) = (&self.s, &self.t);
        let pairs = || s.elements().flat_map(|a| t.elements().map(move |u| (a, u)));
        let w = pairs()
            .find(|&(a, u)| {
                let ub = self.beta_inv(a, u);
                let ab = self.alpha_inv(u, a);
                s.elements()
                    .any(|x| bs.lambda(a, self.alpha(ub, x)) != self.alpha(u, bs.lambda(ab, x)))
            })
            .map(|(a, u)| vec![a, u]);
        check(Property::LambdaAlphaCompatibility, w)?;
        let w = pairs()
            .find(|&(a, u)| {
                let ub = self.beta_inv(a, u);
                let ab = self.alpha_inv(u, a);
                t.elements()
                    .any(|y| bt.lambda(u, self.beta(ab, y)) != self.beta(a, bt.lambda(ub, y)))
            })
            .map(|(a, u)| vec![a, u]);
        check(Property::LambdaBetaCompatibility, w)
    }

    fn check_braces(&self, bs: &SemiBrace, bt: &SemiBrace) -> Result<()> {
        if bs.mul() != &self.s || bt.mul() != &self.t {
            return Err(Error::input("semi-braces do not live on S and T"));
        }
        bs.verify()?;
        bt.verify()?;
        Ok(())
    }

    /// Componentwise sum with the bowtie multiplication. Requires the matched
    /// identities, additive automorphisms and the λ compatibility; the
    /// result is verified as a semi-brace and its affine structure is
    /// compared with `σ̄_{(a,u)}(b,v) = (α^{-1}_{ū}σ_a(b), β^{-1}_{ā}σ_u(v))`.
    pub fn matched_product_semibrace(&self, bs: &SemiBrace, bt: &SemiBrace) -> Result<MatchedProduct> {
        self.verify()?;
        self.check_braces(bs, bt)?;
        self.check_additive_automorphisms(bs, bt)?;
        self.check_lambda_compatibility(bs, bt)?;
        let g = self.bowtie_group()?;
        let nt = self.t.order();
        let n = g.order();
        let add: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| bs.add(x / nt, y / nt) * nt + bt.add(x % nt, y % nt))
                    .collect()
            })
            .collect();
        let semibrace = SemiBrace::new(g.clone(), &add)?;
        semibrace
            .verify()
            .map_err(|v| Error::Inconsistent(format!("matched product fails: {v}")))?;
        let sigma_s = bs.to_affine();
        let sigma_t = bt.to_affine();
        let sigma_bar = AffineStructure::from_fn(g, |x, y| {
            let (a, u) = self.unpair(x);
            let (b, v) = self.unpair(y);
            let a_bar = self.alpha_inv(u, a);
            let u_bar = self.beta_inv(a, u);
            self.pair(
                self.alpha_inv(u_bar, sigma_s.apply(a, b)),
                self.beta_inv(a_bar, sigma_t.apply(u, v)),
            )
        });
        let sigma_bar_matches = sigma_bar == semibrace.to_affine();
        Ok(MatchedProduct {
            semibrace,
            sigma_bar,
            sigma_bar_matches,
        })
    }

    /// Both sides of: the λ compatibility holds iff every `α_u` and `β_a`
    /// is an additive automorphism. A disagreement is an
    /// [`Error::Inconsistent`].
    pub fn confronto_check(&self, bs: &SemiBrace, bt: &SemiBrace) -> Result<ConfrontoReport> {
        self.verify()?;
        self.check_braces(bs, bt)?;
        let report = ConfrontoReport {
            lambda_compatibility: self.check_lambda_compatibility(bs, bt).is_ok(),
            additive_automorphisms: self.check_additive_automorphisms(bs, bt).is_ok(),
        };
        if report.lambda_compatibility != report.additive_automorphisms {
            return Err(Error::Inconsistent(format!(
                "lambda compatibility is {} but additive automorphisms is {}",
                report.lambda_compatibility, report.additive_automorphisms
            )));
        }
        Ok(report)
    }

    /// Runs the product construction on `σ^S`, `σ^T` and the matched product
    /// on their semi-braces, then compares the two semi-braces.
    pub fn compare_constructions(
        &self,
        sigma_s: &AffineStructure,
        sigma_t: &AffineStructure,
    ) -> Result<Comparison> {
        let product = SemiBrace::from_affine(&self.product_affine(sigma_s, sigma_t)?)?;
        let bs = SemiBrace::from_affine(sigma_s)?;
        let bt = SemiBrace::from_affine(sigma_t)?;
        let matched = self.matched_product_semibrace(&bs, &bt)?.semibrace;
        compare_semibraces(product, matched)
    }
}

/// The matched product of two semi-braces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedProduct {
    pub semibrace: SemiBrace,
    /// The affine structure given by the closed formula.
    pub sigma_bar: AffineStructure,
    /// Whether the formula agrees with the structure read off the tables.
    pub sigma_bar_matches: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfrontoReport {
    pub lambda_compatibility: bool,
    pub additive_automorphisms: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub product: SemiBrace,
    pub matched: SemiBrace,
    pub sums_coincide: bool,
    pub isomorphism: Option<Vec<usize>>,
}

pub fn compare_semibraces(product: SemiBrace, matched: SemiBrace) -> Result<Comparison> {
    let isomorphism = isomorphic(&product, &matched)?;
    Ok(Comparison {
        sums_coincide: product == matched,
        product,
        matched,
        isomorphism,
    })
}

/// `S = C_{2k}`, `T = C_2`, `α_{u^t}(a^l) = a^{(-1)^t l}`, `β` trivial.
pub fn negation_system(m: usize) -> Result<MatchedSystem> {
    let s = FiniteGroup::cyclic(m)?;
    let t = FiniteGroup::cyclic(2)?;
    let alpha = vec![(0..m).collect(), (0..m).map(|l| (m - l) % m).collect()];
    let beta = vec![vec![0, 1]; m];
    MatchedSystem::new(s, t, alpha, beta)
}

/// `S = T = G`, `α = id`, `β_a(u) = f(a)∘u∘f(a)^-`.
pub fn conjugation_system(g: &FiniteGroup, f: &crate::map::SelfMap) -> Result<MatchedSystem> {
    if f.len() != g.order() {
        return Err(Error::input("map size does not match the group"));
    }
    let alpha = vec![g.elements().collect(); g.order()];
    let beta = g
        .elements()
        .map(|a| {
            let fa = f.apply(a);
            g.elements().map(|u| g.op(g.op(fa, u), g.inv(fa))).collect()
        })
        .collect();
    MatchedSystem::new(g.clone(), g.clone(), alpha, beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::group::are_isomorphic;
    use crate::identify::identify;
    use crate::map::SelfMap;

    fn g(spec: &str) -> FiniteGroup {
        FiniteGroup::from_spec(spec).unwrap()
    }

    #[test]
    fn trivial_zappa_is_direct_product() {
        let (s, t) = (g("S3"), g("C4"));
        let z = ZappaSystem::trivial(&s, &t);
        assert!(z.verify().is_ok());
        assert_eq!(z.product_group().unwrap(), FiniteGroup::direct_product(&s, &t));
        let m = MatchedSystem::trivial(&s, &t);
        assert_eq!(m.bowtie_group().unwrap(), FiniteGroup::direct_product(&s, &t));
    }

    #[test]
    fn zappa_from_affine() {
        let c4 = g("C4");
        let z = ZappaSystem::from_affine(&families::trivial(&c4)).unwrap();
        for u in 0..4 {
            for a in 0..4 {
                assert_eq!(z.eta(u, a), a);
                assert_eq!(z.delta(a, u), c4.op(c4.op(c4.inv(a), u), a));
            }
        }
        let sf = families::sign_flip(6).unwrap();
        let z = ZappaSystem::from_affine(&sf).unwrap();
        assert!(z.verify().is_ok());
        let b = SemiBrace::from_affine(&sf).unwrap();
        for u in 0..6 {
            for a in 0..6 {
                assert_eq!(z.eta(u, a), b.lambda(u, a));
                assert_eq!(z.delta(a, u), b.rho(a, u));
            }
        }
        assert_eq!(z.to_affine().unwrap(), sf);
        let it = families::constant(&c4, &SelfMap::constant(4, 0)).unwrap();
        assert!(matches!(ZappaSystem::from_affine(&it), Err(Error::Input(_))));
    }

    #[test]
    fn corrupted_eta_fails_z1() {
        let z = ZappaSystem::from_affine(&families::sign_flip(6).unwrap()).unwrap();
        let mut eta = z.eta_rows().to_vec();
        eta[1].swap(1, 2);
        let bad = ZappaSystem::new(z.s().clone(), z.t().clone(), eta, z.delta_rows().to_vec()).unwrap();
        let v = bad.verify().unwrap_err();
        assert_eq!(v.property, Property::ZappaActionProduct);
    }

    #[test]
    fn compatibility_with_trivial_actions() {
        let c4 = g("C4");
        assert_eq!(ZappaSystem::trivial(&c4, &c4).to_affine().unwrap(), families::trivial(&c4));
        let s3 = g("S3");
        let err = ZappaSystem::trivial(&s3, &s3).to_affine().unwrap_err();
        let v = err.violation().unwrap();
        assert_eq!(v.property, Property::ZappaCompatibility);
        let (u, a) = (v.witness[0], v.witness[1]);
        assert_ne!(s3.op(u, a), s3.op(a, u));
    }

    #[test]
    fn negation_system_gives_dihedral_group() {
        let m = negation_system(6).unwrap();
        assert!(m.verify().is_ok());
        let b = m.bowtie_group().unwrap();
        assert_eq!(identify(&b).name, "D6");
        assert!(m.check_zappa_isomorphism().is_ok());
    }

    #[test]
    fn conjugation_system_on_s3() {
        let s3 = g("S3");
        for f in [SelfMap::identity(6), SelfMap::constant(6, 0)] {
            let m = conjugation_system(&s3, &f).unwrap();
            assert!(m.verify().is_ok());
            assert!(m.check_zappa_isomorphism().is_ok());
        }
    }

    #[test]
    fn final_example_conditions_and_sum() {
        let m = negation_system(6).unwrap();
        let ss = families::sign_flip(6).unwrap();
        let st = families::trivial(&g("C2"));
        assert!(m.product_conditions(&ss, &st).unwrap().holds());
        let p = m.product_affine(&ss, &st).unwrap();
        assert!(p.is_groupal());
        let b = SemiBrace::from_affine(&p).unwrap();
        for (k, t, l, s) in (0..6).flat_map(|k| {
            (0..2).flat_map(move |t| (0..6).flat_map(move |l| (0..2).map(move |s| (k, t, l, s))))
        }) {
            let sign_odd = (t + k) % 2 == 1;
            let first = if sign_odd { (k + 6 - l) % 6 } else { (k + l) % 6 };
            assert_eq!(b.add(k * 2 + t, l * 2 + s), first * 2 + (t + s) % 2);
        }
        assert!(!b.is_commutative());
    }

    #[test]
    fn restriction_to_factor_is_componentwise() {
        let m = negation_system(6).unwrap();
        let ss = families::sign_flip(6).unwrap();
        let st = families::trivial(&g("C2"));
        let b = SemiBrace::from_affine(&m.product_affine(&ss, &st).unwrap()).unwrap();
        let bs = SemiBrace::from_affine(&ss).unwrap();
        let bt = SemiBrace::from_affine(&st).unwrap();
        for a in 0..6 {
            for c in 0..6 {
                let (x, y) = (m.pair(a, 0), m.pair(c, 0));
                assert_eq!(b.add(x, y), m.pair(bs.add(a, c), 0));
                assert_eq!(b.mul().op(x, y), m.pair(g("C6").op(a, c), 0));
            }
        }
        for u in 0..2 {
            for v in 0..2 {
                assert_eq!(b.add(m.pair(0, u), m.pair(0, v)), m.pair(0, bt.add(u, v)));
            }
        }
    }

    #[test]
    fn matched_product_with_trivial_braces() {
        let m = negation_system(6).unwrap();
        let bs = SemiBrace::trivial(&g("C6"));
        let bt = SemiBrace::trivial(&g("C2"));
        let mp = m.matched_product_semibrace(&bs, &bt).unwrap();
        assert!(mp.sigma_bar_matches);
        let add = mp.semibrace.additive_group().unwrap();
        assert_eq!(identify(&add).name, "C6xC2");
        assert!(mp.semibrace.is_skew());
    }

    #[test]
    fn matched_product_sigma_bar_with_sign_flip() {
        let m = negation_system(6).unwrap();
        let bs = SemiBrace::from_affine(&families::sign_flip(6).unwrap()).unwrap();
        let bt = SemiBrace::trivial(&g("C2"));
        let mp = m.matched_product_semibrace(&bs, &bt).unwrap();
        assert!(mp.sigma_bar_matches);
        assert!(are_isomorphic(&mp.semibrace.additive_group().unwrap(), &g("D6")));
    }

    #[test]
    fn confronto_on_final_example() {
        let m = negation_system(6).unwrap();
        let bs = SemiBrace::from_affine(&families::sign_flip(6).unwrap()).unwrap();
        let bt = SemiBrace::trivial(&g("C2"));
        let r = m.confronto_check(&bs, &bt).unwrap();
        assert!(r.lambda_compatibility && r.additive_automorphisms);
    }

    #[test]
    fn conjugation_example_sums() {
        let s3 = g("S3");
        for (f, coincide) in [(SelfMap::identity(6), false), (SelfMap::constant(6, 0), true)] {
            let m = conjugation_system(&s3, &f).unwrap();
            let sigma = families::constant(&s3, &f).unwrap();
            let c = m.compare_constructions(&sigma, &sigma).unwrap();
            assert_eq!(c.sums_coincide, coincide);
            assert_eq!(c.isomorphism.is_some(), coincide);
        }
    }
}

//! Named worked examples with their expected properties.
//!
//! Each entry builds its structures, evaluates a fixed list of properties and
//! diffs them against the recorded expectations. Every expectation carries an
//! anchor label naming the example it comes from; values that are computed
//! regression data rather than stated results are anchored as `regression`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::affine::{compose_affine, composition_conditions, AffineStructure};
use crate::error::{Error, Result};
use crate::families;
use crate::group::{are_isomorphic, FiniteGroup};
use crate::identify::identify;
use crate::map::SelfMap;
use crate::products::{conjugation_system, negation_system, MatchedSystem};
use crate::semibrace::{isomorphic, SemiBrace};
use crate::ybe::SetSolution;

pub const REPORT_SCHEMA: &str = "affine-lab/catalog-report/1";

/// A tunable integer parameter of an entry.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Param {
    pub name: &'static str,
    pub default: usize,
}

pub struct Entry {
    pub id: &'static str,
    pub title: &'static str,
    pub anchor: &'static str,
    pub param: Option<Param>,
    build: fn(&mut Checks, Option<usize>) -> Result<()>,
}

impl Entry {
    pub fn run(&self, param: Option<usize>) -> Result<EntryReport> {
        if param.is_some() && self.param.is_none() {
            return Err(Error::input(format!("{} takes no parameter", self.id)));
        }
        let value = param.or(self.param.map(|p| p.default));
        let mut checks = Checks {
            anchor: self.anchor,
            items: Vec::new(),
        };
        (self.build)(&mut checks, value)?;
        let pass = checks.items.iter().all(|c| c.pass);
        Ok(EntryReport {
            id: self.id.to_string(),
            title: self.title.to_string(),
            anchor: self.anchor.to_string(),
            param: self.param.zip(value).map(|(p, v)| (p.name.to_string(), v)),
            checks: checks.items,
            pass,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub property: String,
    pub expected: Value,
    pub actual: Value,
    pub anchor: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryReport {
    pub id: String,
    pub title: String,
    pub anchor: String,
    pub param: Option<(String, usize)>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl EntryReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogReport {
    pub schema: String,
    pub version: String,
    pub entries: Vec<EntryReport>,
    pub pass: bool,
}

impl CatalogReport {
    pub fn new(entries: Vec<EntryReport>) -> Self {
        CatalogReport {
            schema: REPORT_SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            pass: entries.iter().all(|e| e.pass),
            entries,
        }
    }
}

/// Collects expectation diffs for one entry.
pub struct Checks {
    anchor: &'static str,
    items: Vec<Check>,
}

impl Checks {
    fn expect(&mut self, property: impl Into<String>, expected: impl Serialize, actual: impl Serialize) {
        let anchor = self.anchor;
        self.expect_at(property, expected, actual, anchor);
    }

    fn expect_at(
        &mut self,
        property: impl Into<String>,
        expected: impl Serialize,
        actual: impl Serialize,
        anchor: &str,
    ) {
        let expected = json!(expected);
        let actual = json!(actual);
        self.items.push(Check {
            property: property.into(),
            pass: expected == actual,
            expected,
            actual,
            anchor: anchor.to_string(),
        });
    }
}

pub fn entries() -> &'static [Entry] {
    &ENTRIES
}

pub fn find(id: &str) -> Result<&'static Entry> {
    ENTRIES
        .iter()
        .find(|e| e.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::input(format!("unknown catalog id {id:?}")))
}

pub fn run(id: &str, param: Option<usize>) -> Result<EntryReport> {
    find(id)?.run(param)
}

/// Runs every entry with its default parameter, in parallel.
pub fn run_all() -> Result<CatalogReport> {
    let entries = ENTRIES
        .par_iter()
        .map(|e| e.run(None))
        .collect::<Result<Vec<_>>>()?;
    Ok(CatalogReport::new(entries))
}

static ENTRIES: [Entry; 10] = [
    Entry {
        id: "E1",
        title: "inverse translation on C_m",
        anchor: "example:inverse-translation",
        param: Some(Param { name: "m", default: 6 }),
        build: e1,
    },
    Entry {
        id: "E2",
        title: "constant idempotent endomorphism on S3",
        anchor: "example:constant-idempotent",
        param: None,
        build: e2,
    },
    Entry {
        id: "E3",
        title: "conjugation by an idempotent endomorphism on S3",
        anchor: "example:conjugation",
        param: None,
        build: e3,
    },
    Entry {
        id: "E4",
        title: "sign flip on C_m",
        anchor: "example:sign-flip",
        param: Some(Param { name: "m", default: 6 }),
        build: e4,
    },
    Entry {
        id: "E5",
        title: "parity twist on C_m",
        anchor: "example:parity-twist",
        param: Some(Param { name: "m", default: 8 }),
        build: e5,
    },
    Entry {
        id: "E6",
        title: "square of the parity twist on C8",
        anchor: "example:composition-c8",
        param: None,
        build: e6,
    },
    Entry {
        id: "E7",
        title: "conjugation by the parity map on C2xS3",
        anchor: "example:not-lambda-homomorphic",
        param: None,
        build: e7,
    },
    Entry {
        id: "E8",
        title: "product structure on C6 bowtie C2",
        anchor: "example:product-c6-c2",
        param: None,
        build: e8,
    },
    Entry {
        id: "E9",
        title: "matched product of trivial braces on C6 bowtie C2",
        anchor: "example:matched-product-c6-c2",
        param: None,
        build: e9,
    },
    Entry {
        id: "E10",
        title: "S3 with conjugation action by an idempotent endomorphism",
        anchor: "example:conjugation-action-s3",
        param: None,
        build: e10,
    },
];

const REGRESSION: &str = "regression";

fn param(p: Option<usize>) -> usize {
    p.expect("entries with a parameter always receive a value")
}

fn e1(c: &mut Checks, p: Option<usize>) -> Result<()> {
    let m = param(p);
    if m < 2 {
        return Err(Error::input("E1 needs m >= 2"));
    }
    let g = FiniteGroup::cyclic(m)?;
    let sigma = families::inverse_translation(&g);
    let flags = sigma.classify();
    c.expect("valid", true, flags.valid());
    c.expect("cancellative", true, flags.cancellative);
    c.expect("groupal", false, flags.groupal);
    let b = SemiBrace::from_affine(&sigma)?;
    let right_projection = g.elements().all(|x| g.elements().all(|y| b.add(x, y) == y));
    c.expect("sum is a+b=b", true, right_projection);
    c.expect("left_cancellative", true, b.is_left_cancellative());
    c.expect("skew", false, b.is_skew());
    Ok(())
}

/// `S3 → {id, (1 2)}`, sending odd permutations to the transposition.
fn s3_parity_retraction(s3: &FiniteGroup) -> SelfMap {
    let t = s3
        .elements()
        .find(|&x| s3.label(x) == "(1 2)")
        .expect("S3 contains (1 2)");
    SelfMap::new(
        s3.elements()
            .map(|x| if s3.element_order(x) == 2 { t } else { s3.identity() })
            .collect(),
    )
    .expect("images lie in S3")
}

fn e2(c: &mut Checks, _: Option<usize>) -> Result<()> {
    let s3 = FiniteGroup::symmetric(3)?;
    let f = s3_parity_retraction(&s3);
    c.expect_at("f idempotent endomorphism", true, s3.is_idempotent_endomorphism(&f), REGRESSION);
    let sigma = families::constant(&s3, &f)?;
    let flags = sigma.classify();
    c.expect("valid", true, flags.valid());
    c.expect("cancellative", false, flags.cancellative);
    let b = SemiBrace::from_affine(&sigma)?;
    c.expect("left_cancellative", false, b.is_left_cancellative());
    c.expect("lambda bijective", false, b.lambda_rho_report().lambda_bijective);

    let id = families::constant(&s3, &SelfMap::identity(6))?;
    c.expect("f = id cancellative", true, id.is_cancellative());
    Ok(())
}

fn e3(c: &mut Checks, _: Option<usize>) -> Result<()> {
    let s3 = FiniteGroup::symmetric(3)?;
    for (name, f) in [("id", SelfMap::identity(6)), ("retraction", s3_parity_retraction(&s3))] {
        let sigma = families::conjugation(&s3, &f)?;
        let flags = sigma.classify();
        c.expect(format!("f = {name}: valid"), true, flags.valid());
        c.expect(format!("f = {name}: groupal"), true, flags.groupal);
        let b = SemiBrace::from_affine(&sigma)?;
        c.expect(format!("f = {name}: biskew"), true, b.is_biskew()?);
        psi_equals_lambda(c, &format!("f = {name}: "), &b)?;
    }
    Ok(())
}

/// The dual structure `ψ_a = σ_{a^-}` coincides with `λ_a` and is groupal on
/// the additive group.
fn psi_equals_lambda(c: &mut Checks, prefix: &str, b: &SemiBrace) -> Result<()> {
    let psi = b.biskew_dual_affine()?;
    let mul = b.mul();
    let tablewise = mul
        .elements()
        .all(|a| mul.elements().all(|x| psi.apply(a, x) == b.lambda(a, x)));
    c.expect(format!("{prefix}psi = lambda"), true, tablewise);
    Ok(())
}

fn e4(c: &mut Checks, p: Option<usize>) -> Result<()> {
    let m = param(p);
    let sigma = families::sign_flip(m)?;
    let flags = sigma.classify();
    c.expect("groupal", true, flags.groupal);
    let abelian_anchor = if 4 % m == 0 { REGRESSION } else { c.anchor };
    c.expect_at("abelian", 4 % m == 0, flags.abelian, abelian_anchor);
    let b = SemiBrace::from_affine(&sigma)?;
    c.expect("skew", true, b.is_skew());
    c.expect("biskew", true, b.is_biskew()?);
    let formula = (0..m).all(|k| {
        (0..m).all(|l| {
            let e = if k % 2 == 0 { k + l } else { k + m - l };
            b.add(k, l) == e % m
        })
    });
    c.expect("sum g^k + g^l = g^(k+(-1)^k l)", true, formula);
    let add = b.additive_group()?;
    let dihedral = FiniteGroup::dihedral(m / 2)?;
    c.expect(
        format!("additive isomorphic to {}", dihedral.name()),
        true,
        are_isomorphic(&add, &dihedral),
    );
    if m >= 4 {
        let g = sigma.group();
        let lhs = g.op(1, sigma.apply(1, 2));
        let rhs = g.op(2, sigma.apply(2, 1));
        c.expect("g o sigma_g(g^2)", g.label(m - 1), g.label(lhs));
        c.expect("g^2 o sigma_{g^2}(g)", g.label(3 % m), g.label(rhs));
    }
    psi_equals_lambda(c, "", &b)?;
    Ok(())
}

fn e5(c: &mut Checks, p: Option<usize>) -> Result<()> {
    let m = param(p);
    let sigma = families::parity_twist(m)?;
    let g = sigma.group().clone();
    c.expect("groupal", true, sigma.is_groupal());
    let automorphisms = g.elements().all(|a| g.is_automorphism(&sigma.map(a)));
    c.expect("every sigma_a an automorphism", 4 % m == 0, automorphisms);
    let b = SemiBrace::from_affine(&sigma)?;
    c.expect("skew", true, b.is_skew());
    let is_biskew = b.is_biskew()?;
    c.expect("biskew", 4 % m == 0, is_biskew);
    let sign = SemiBrace::from_affine(&families::sign_flip(m)?)?;
    c.expect("opposite of the sign-flip brace", true, sign.opposite()? == b);
    if m >= 4 {
        let lhs = g.op(1, sigma.apply(1, 2));
        let rhs = g.op(2, sigma.apply(2, 1));
        c.expect("g o sigma_g(g^2)", g.label(3 % m), g.label(lhs));
        c.expect("g^2 o sigma_{g^2}(g)", g.label(m - 1), g.label(rhs));
    }
    if m == 8 {
        let gg = g.op(1, 1);
        let lhs = sigma.apply(1, gg);
        let rhs = g.op(sigma.apply(1, 1), sigma.apply(1, 1));
        c.expect_at("sigma_g(g o g)", "g^2", g.label(lhs), REGRESSION);
        c.expect_at("sigma_g(g) o sigma_g(g)", "g^6", g.label(rhs), REGRESSION);
    }
    if is_biskew {
        psi_equals_lambda(c, "", &b)?;
    }
    Ok(())
}

/// `σ_a = ω_a ∘ ω_a` evaluated pointwise.
pub fn omega_squared_direct(omega: &AffineStructure) -> AffineStructure {
    AffineStructure::from_fn(omega.group().clone(), |a, b| omega.apply(a, omega.apply(a, b)))
}

fn e6(c: &mut Checks, _: Option<usize>) -> Result<()> {
    let omega = families::parity_twist(8)?;
    let conditions = composition_conditions(&omega, &omega)?;
    c.expect("c1", true, conditions.c1.is_none());
    c.expect("c2'", true, conditions.both_cancellative && conditions.c2_prime.is_none());
    let composed = compose_affine(&omega, &omega)?;
    let direct = omega_squared_direct(&omega);
    c.expect("composition equals pointwise square", true, composed == direct);
    let flags = composed.classify();
    c.expect("valid", true, flags.valid());
    c.expect("abelian", true, flags.abelian);
    c.expect("omega abelian", false, omega.classify().abelian);
    let g = composed.group().clone();
    c.expect("non-trivial", true, composed != families::trivial(&g));
    let b = SemiBrace::from_affine(&composed)?;
    c.expect("brace", true, b.is_brace());
    c.expect("additive", "C8", identify(&b.additive_group()?).name);
    let r = SetSolution::from_semibrace(&b);
    c.expect("solution involutive", true, r.is_involutive());
    c.expect_at("lambda homomorphic", true, b.is_lambda_homomorphic()?, REGRESSION);
    Ok(())
}

/// `f(x^i, π) = (x^{parity(π)}, π)` on `C2 × S3`.
pub fn c2_s3_parity_map(g: &FiniteGroup) -> SelfMap {
    let s3 = FiniteGroup::symmetric(3).expect("S3");
    SelfMap::new(
        g.elements()
            .map(|x| {
                let pi = x % 6;
                let parity = usize::from(s3.element_order(pi) == 2);
                parity * 6 + pi
            })
            .collect(),
    )
    .expect("images lie in C2 x S3")
}

/// The group `C2 × S3` used by E7.
pub fn c2_s3() -> FiniteGroup {
    FiniteGroup::direct_product(
        &FiniteGroup::cyclic(2).expect("C2"),
        &FiniteGroup::symmetric(3).expect("S3"),
    )
}

fn e7(c: &mut Checks, _: Option<usize>) -> Result<()> {
    let g = c2_s3();
    let f = c2_s3_parity_map(&g);
    c.expect_at("f idempotent endomorphism", true, g.is_idempotent_endomorphism(&f), REGRESSION);
    let sigma = families::conjugation(&g, &f)?;
    c.expect("groupal", true, sigma.is_groupal());
    let b = SemiBrace::from_affine(&sigma)?;
    c.expect("biskew", true, b.is_biskew()?);
    c.expect("lambda homomorphic", false, b.is_lambda_homomorphic()?);

    let find = |label: &str| {
        g.elements()
            .find(|&x| g.label(x) == label)
            .ok_or_else(|| Error::Inconsistent(format!("no element {label}")))
    };
    let a = find("(g, (1 2))")?;
    let bb = find("(1, (1 2 3))")?;
    let lhs = b.lambda(b.add(a, bb), a);
    let rhs = b.lambda(a, b.lambda(bb, a));
    c.expect(
        "lambda_{a+b}(c) = lambda_a lambda_b(c) at a=c=(g, (1 2)), b=(1, (1 2 3))",
        false,
        lhs == rhs,
    );
    psi_equals_lambda(c, "", &b)?;
    Ok(())
}

/// The matched system and factor structures shared by E8 and E9.
pub fn final_example() -> Result<(MatchedSystem, AffineStructure, AffineStructure)> {
    let m = negation_system(6)?;
    let ss = families::sign_flip(6)?;
    let st = families::trivial(m.t());
    Ok((m, ss, st))
}

/// The E8 semi-brace.
pub fn e8_semibrace() -> Result<SemiBrace> {
    let (m, ss, st) = final_example()?;
    SemiBrace::from_affine(&m.product_affine(&ss, &st)?)
}

/// The E9 semi-brace.
pub fn e9_semibrace() -> Result<SemiBrace> {
    let (m, _, _) = final_example()?;
    let bs = SemiBrace::trivial(m.s());
    let bt = SemiBrace::trivial(m.t());
    Ok(m.matched_product_semibrace(&bs, &bt)?.semibrace)
}

fn e8(c: &mut Checks, _: Option<usize>) -> Result<()> {
    let (m, ss, st) = final_example()?;
    c.expect("matched system", true, m.verify().is_ok());
    let conditions = m.product_conditions(&ss, &st)?;
    c.expect("conditions I, II, III", true, conditions.holds());
    let sigma = m.product_affine(&ss, &st)?;
    c.expect("groupal", true, sigma.is_groupal());
    let b = SemiBrace::from_affine(&sigma)?;
    c.expect("skew", true, b.is_skew());
    let twelve = FiniteGroup::dihedral(6)?;
    c.expect("multiplicative isomorphic to D6", true, are_isomorphic(b.mul(), &twelve));
    let add = b.additive_group()?;
    c.expect("additive abelian", false, add.is_abelian());
    let pair = add.non_commuting_pair().map(|(x, y)| vec![x, y]);
    c.expect_at("additive non-commuting pair", json!([1, 2]), pair, REGRESSION);
    Ok(())
}

fn e9(c: &mut Checks, _: Option<usize>) -> Result<()> {
    let (m, _, _) = final_example()?;
    let bs = SemiBrace::trivial(m.s());
    let bt = SemiBrace::trivial(m.t());
    let mp = m.matched_product_semibrace(&bs, &bt)?;
    c.expect("closed formula matches", true, mp.sigma_bar_matches);
    c.expect("skew", true, mp.semibrace.is_skew());
    c.expect("additive", "C6xC2", identify(&mp.semibrace.additive_group()?).name);
    let e8 = e8_semibrace()?;
    c.expect("isomorphic to E8", false, isomorphic(&mp.semibrace, &e8)?.is_some());
    Ok(())
}

fn e10(c: &mut Checks, _: Option<usize>) -> Result<()> {
    let s3 = FiniteGroup::symmetric(3)?;
    for (name, f, abelian_image) in [
        ("id", SelfMap::identity(6), false),
        ("zero", SelfMap::constant(6, 0), true),
    ] {
        let m = conjugation_system(&s3, &f)?;
        c.expect(format!("f = {name}: matched system"), true, m.verify().is_ok());
        let sigma = families::constant(&s3, &f)?;
        let cmp = m.compare_constructions(&sigma, &sigma)?;
        c.expect(format!("f = {name}: sums coincide"), abelian_image, cmp.sums_coincide);
        c.expect_at(
            format!("f = {name}: isomorphic"),
            abelian_image,
            cmp.isomorphism.is_some(),
            REGRESSION,
        );
    }
    Ok(())
}

/// Every cancellative matched system in the catalog with its factor
/// structures.
pub fn cancellative_systems() -> Result<Vec<(&'static str, MatchedSystem, AffineStructure, AffineStructure)>> {
    let (m, ss, st) = final_example()?;
    let s3 = FiniteGroup::symmetric(3)?;
    let id = SelfMap::identity(6);
    let trivial = families::constant(&s3, &id)?;
    Ok(vec![
        ("E8", m, ss, st),
        ("E10", conjugation_system(&s3, &id)?, trivial.clone(), trivial),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_entries_pass() {
        let report = run_all().unwrap();
        for e in &report.entries {
            for f in e.failures() {
                eprintln!("{} {}: expected {} got {}", e.id, f.property, f.expected, f.actual);
            }
        }
        assert!(report.pass);
        assert_eq!(report.entries.len(), 10);
    }

    #[test]
    fn parameterized_boundaries() {
        for m in [2, 4, 6, 8] {
            assert!(run("E4", Some(m)).unwrap().pass, "E4 m={m}");
            assert!(run("E5", Some(m)).unwrap().pass, "E5 m={m}");
        }
        assert!(run("E1", Some(3)).unwrap().pass);
        assert!(matches!(run("E4", Some(5)), Err(Error::Input(_))));
        assert!(matches!(run("E6", Some(5)), Err(Error::Input(_))));
        assert!(matches!(run("E11", None), Err(Error::Input(_))));
    }

    #[test]
    fn lookup_is_case_insensitive() {
        assert_eq!(find("e6").unwrap().id, "E6");
    }
}

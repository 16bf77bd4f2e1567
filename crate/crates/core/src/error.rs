use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A named, exhaustively checkable property.
///
/// Every check in the crate reports failure as a [`Violation`] carrying one of
/// these plus the lexicographically first failing tuple of element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    GroupIdentity,
    GroupInverse,
    GroupAssociativity,
    Homomorphism,
    Bijective,
    AntiHomomorphism,
    AffineIdentity,
    AbelianIdentity,
    Homomorphic,
    ConditionC1,
    ConditionC2,
    ConditionC2Prime,
    AdditiveAssociativity,
    SemiBraceIdentity,
    SkewBraceIdentity,
    AdditiveGroup,
    Biskew,
    LambdaHomomorphic,
    YangBaxter,
    ZappaActionProduct,
    ZappaActionComposition,
    ZappaCoactionProduct,
    ZappaCoactionComposition,
    ZappaCompatibility,
    AlphaHomomorphism,
    BetaHomomorphism,
    MatchedAlpha,
    MatchedBeta,
    ConditionI,
    ConditionII,
    ConditionIII,
    AlphaAdditiveAutomorphism,
    BetaAdditiveAutomorphism,
    LambdaAlphaCompatibility,
    LambdaBetaCompatibility,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::GroupIdentity => "group identity",
            Property::GroupInverse => "group inverse",
            Property::GroupAssociativity => "associativity",
            Property::Homomorphism => "homomorphism",
            Property::Bijective => "bijectivity",
            Property::AntiHomomorphism => "anti-homomorphism",
            Property::AffineIdentity => "affine identity",
            Property::AbelianIdentity => "abelian identity",
            Property::Homomorphic => "homomorphic via map",
            Property::ConditionC1 => "composition condition (c1)",
            Property::ConditionC2 => "composition condition (c2)",
            Property::ConditionC2Prime => "composition condition (c2')",
            Property::AdditiveAssociativity => "additive associativity",
            Property::SemiBraceIdentity => "semi-brace identity (*)",
            Property::SkewBraceIdentity => "skew brace identity (**)",
            Property::AdditiveGroup => "additive group",
            Property::Biskew => "bi-skew",
            Property::LambdaHomomorphic => "lambda-homomorphic",
            Property::YangBaxter => "Yang-Baxter equation",
            Property::ZappaActionProduct => "zappa (Z1) action on products",
            Property::ZappaActionComposition => "zappa (Z1) action composition",
            Property::ZappaCoactionProduct => "zappa (Z2) coaction on products",
            Property::ZappaCoactionComposition => "zappa (Z2) coaction composition",
            Property::ZappaCompatibility => "zappa compatibility u*a = (u.a)*(u^a)",
            Property::AlphaHomomorphism => "alpha homomorphism",
            Property::BetaHomomorphism => "beta homomorphism",
            Property::MatchedAlpha => "matched system identity (alpha)",
            Property::MatchedBeta => "matched system identity (beta)",
            Property::ConditionI => "product condition (I)",
            Property::ConditionII => "product condition (II)",
            Property::ConditionIII => "product condition (III)",
            Property::AlphaAdditiveAutomorphism => "alpha in Aut(S,+)",
            Property::BetaAdditiveAutomorphism => "beta in Aut(T,+)",
            Property::LambdaAlphaCompatibility => "lambda/alpha compatibility",
            Property::LambdaBetaCompatibility => "lambda/beta compatibility",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed property together with its witness tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub property: Property,
    pub witness: Vec<usize>,
}

impl Violation {
    pub fn new(property: Property, witness: impl Into<Vec<usize>>) -> Self {
        Violation {
            property,
            witness: witness.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.property, self.witness)
    }
}

impl std::error::Error for Violation {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("{what} has size {size}, above the limit of {limit}")]
    Bound {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error(transparent)]
    Violation(#[from] Violation),

    /// Two independent evaluations of the same mathematical fact disagree.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Error::Violation(v) => Some(v),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Turns a check outcome into `Ok(())` or the matching violation.
pub(crate) fn check(property: Property, witness: Option<Vec<usize>>) -> Result<(), Violation> {
    match witness {
        None => Ok(()),
        Some(w) => Err(Violation::new(property, w)),
    }
}

//! JSON interchange. Every document carries a `"schema"` tag; on input the
//! tag is optional but must match when present.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::affine::AffineStructure;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::products::MatchedSystem;
use crate::semibrace::SemiBrace;
use crate::ybe::SetSolution;

pub const GROUP_SCHEMA: &str = "affine-lab/group/1";
pub const AFFINE_SCHEMA: &str = "affine-lab/affine/1";
pub const SEMIBRACE_SCHEMA: &str = "affine-lab/semibrace/1";
pub const MATCHED_SCHEMA: &str = "affine-lab/matched/1";
pub const SOLUTION_SCHEMA: &str = "affine-lab/solution/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(default)]
    pub name: Option<String>,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// A group given by constructor spec (`"cyclic:6"`, `"S3"`) or inline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Spec(String),
    Inline(GroupFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AffineFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub group: GroupRef,
    pub sigma: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemiBraceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub order: usize,
    pub mul: GroupRef,
    pub add: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchedFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    #[serde(rename = "S")]
    pub s: GroupRef,
    #[serde(rename = "T")]
    pub t: GroupRef,
    /// `alpha[u][a] = α_u(a)`.
    pub alpha: Vec<Vec<usize>>,
    /// `beta[a][u] = β_a(u)`.
    pub beta: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub size: usize,
    /// `r[a·size + b] = r(a, b)`.
    pub r: Vec<(usize, usize)>,
}

fn check_schema(found: &Option<String>, expected: &str) -> Result<()> {
    match found {
        Some(s) if s != expected => Err(Error::input(format!(
            "schema mismatch: expected {expected}, found {s}"
        ))),
        _ => Ok(()),
    }
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            schema: Some(GROUP_SCHEMA.to_string()),
            name: Some(g.name().to_string()),
            order: g.order(),
            table: g.rows(),
        }
    }

    pub fn to_group(&self) -> Result<FiniteGroup> {
        check_schema(&self.schema, GROUP_SCHEMA)?;
        if self.table.len() != self.order {
            return Err(Error::input(format!(
                "group table has {} rows, order is {}",
                self.table.len(),
                self.order
            )));
        }
        let name = self.name.clone().unwrap_or_else(|| format!("G{}", self.order));
        let g = FiniteGroup::from_table(name.as_str(), &self.table)?;
        // Keep symbolic labels when the name is a constructor for this table.
        match FiniteGroup::from_spec(&name) {
            Ok(named) if named == g => Ok(named.with_name(name)),
            _ => Ok(g),
        }
    }
}

impl GroupRef {
    pub fn resolve(&self) -> Result<FiniteGroup> {
        match self {
            GroupRef::Spec(s) => FiniteGroup::from_spec(s),
            GroupRef::Inline(f) => f.to_group(),
        }
    }

    pub fn inline(g: &FiniteGroup) -> Self {
        GroupRef::Inline(GroupFile::from_group(g))
    }
}

impl AffineFile {
    pub fn from_affine(sigma: &AffineStructure) -> Self {
        AffineFile {
            schema: Some(AFFINE_SCHEMA.to_string()),
            group: GroupRef::inline(sigma.group()),
            sigma: sigma.rows(),
        }
    }

    /// Builds the structure with shape checks only; the axioms are left to
    /// the caller.
    pub fn to_affine(&self) -> Result<AffineStructure> {
        check_schema(&self.schema, AFFINE_SCHEMA)?;
        AffineStructure::new(self.group.resolve()?, &self.sigma)
    }
}

impl SemiBraceFile {
    pub fn from_semibrace(b: &SemiBrace) -> Self {
        SemiBraceFile {
            schema: Some(SEMIBRACE_SCHEMA.to_string()),
            order: b.order(),
            mul: GroupRef::inline(b.mul()),
            add: b.add_rows(),
        }
    }

    pub fn to_semibrace(&self) -> Result<SemiBrace> {
        check_schema(&self.schema, SEMIBRACE_SCHEMA)?;
        let mul = self.mul.resolve()?;
        if mul.order() != self.order {
            return Err(Error::input(format!(
                "multiplicative group has order {}, file says {}",
                mul.order(),
                self.order
            )));
        }
        SemiBrace::new(mul, &self.add)
    }
}

impl MatchedFile {
    pub fn from_system(m: &MatchedSystem) -> Self {
        MatchedFile {
            schema: Some(MATCHED_SCHEMA.to_string()),
            s: GroupRef::inline(m.s()),
            t: GroupRef::inline(m.t()),
            alpha: m.alpha_rows().to_vec(),
            beta: m.beta_rows().to_vec(),
        }
    }

    pub fn to_system(&self) -> Result<MatchedSystem> {
        check_schema(&self.schema, MATCHED_SCHEMA)?;
        MatchedSystem::new(
            self.s.resolve()?,
            self.t.resolve()?,
            self.alpha.clone(),
            self.beta.clone(),
        )
    }
}

impl SolutionFile {
    pub fn from_solution(r: &SetSolution) -> Self {
        SolutionFile {
            schema: Some(SOLUTION_SCHEMA.to_string()),
            size: r.size(),
            r: r.pairs(),
        }
    }

    pub fn to_solution(&self) -> Result<SetSolution> {
        check_schema(&self.schema, SOLUTION_SCHEMA)?;
        SetSolution::from_pairs(self.size, &self.r)
            .ok_or_else(|| Error::input(format!("solution needs {} in-range pairs", self.size * self.size)))
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json_string(value)?)?;
    Ok(())
}

/// A group argument: an existing JSON file, or a constructor spec.
pub fn load_group(arg: &str) -> Result<FiniteGroup> {
    let path = Path::new(arg);
    if path.is_file() {
        read_json::<GroupFile>(path)?.to_group()
    } else {
        FiniteGroup::from_spec(arg)
    }
}

pub fn load_affine(path: &Path) -> Result<AffineStructure> {
    read_json::<AffineFile>(path)?.to_affine()
}

pub fn load_semibrace(path: &Path) -> Result<SemiBrace> {
    read_json::<SemiBraceFile>(path)?.to_semibrace()
}

pub fn load_matched(path: &Path) -> Result<MatchedSystem> {
    read_json::<MatchedFile>(path)?.to_system()
}

pub fn load_solution(path: &Path) -> Result<SetSolution> {
    read_json::<SolutionFile>(path)?.to_solution()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::products::negation_system;

    #[test]
    fn group_round_trip() {
        let g = FiniteGroup::from_spec("D4").unwrap();
        let f = GroupFile::from_group(&g);
        let text = to_json_string(&f).unwrap();
        let back: GroupFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_group().unwrap(), g);
    }

    #[test]
    fn named_group_file_keeps_labels() {
        let g = FiniteGroup::from_spec("C4").unwrap();
        let back = GroupFile::from_group(&g).to_group().unwrap();
        assert_eq!(back.label(3), "g^3");
        let mut f = GroupFile::from_group(&g);
        f.name = Some("mine".into());
        assert_eq!(f.to_group().unwrap().label(3), "3");
    }

    #[test]
    fn affine_accepts_group_name() {
        let text = r#"{"group": "cyclic:2", "sigma": [[0, 1], [1, 0]]}"#;
        let f: AffineFile = serde_json::from_str(text).unwrap();
        let sigma = f.to_affine().unwrap();
        assert_eq!(sigma.order(), 2);
        assert!(sigma.is_valid());
    }

    #[test]
    fn schema_mismatch_is_input_error() {
        let text = r#"{"schema": "affine-lab/group/1", "group": "C2", "sigma": [[0, 1], [0, 1]]}"#;
        let f: AffineFile = serde_json::from_str(text).unwrap();
        assert!(matches!(f.to_affine(), Err(Error::Input(_))));
    }

    #[test]
    fn structure_round_trips() {
        let sigma = families::sign_flip(6).unwrap();
        let af: AffineFile = serde_json::from_str(&to_json_string(&AffineFile::from_affine(&sigma)).unwrap()).unwrap();
        assert_eq!(af.to_affine().unwrap(), sigma);

        let b = SemiBrace::from_affine(&sigma).unwrap();
        let sf: SemiBraceFile =
            serde_json::from_str(&to_json_string(&SemiBraceFile::from_semibrace(&b)).unwrap()).unwrap();
        assert_eq!(sf.to_semibrace().unwrap(), b);

        let m = negation_system(4).unwrap();
        let mf: MatchedFile = serde_json::from_str(&to_json_string(&MatchedFile::from_system(&m)).unwrap()).unwrap();
        assert_eq!(mf.to_system().unwrap().alpha_rows(), m.alpha_rows());

        let r = SetSolution::from_semibrace(&b);
        let rf: SolutionFile =
            serde_json::from_str(&to_json_string(&SolutionFile::from_solution(&r)).unwrap()).unwrap();
        assert_eq!(rf.to_solution().unwrap(), r);
    }

    #[test]
    fn ragged_group_table_rejected() {
        let f = GroupFile {
            schema: None,
            name: None,
            order: 2,
            table: vec![vec![0, 1]],
        };
        assert!(matches!(f.to_group(), Err(Error::Input(_))));
    }
}

//! JSON descriptions of groups and fusion systems, and their resolution into
//! [`FusionData`] plus the ambient character basis.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::CyclotomicInt;
use crate::character::{dixon_character_table, CharacterError, ClassFunction};
use crate::constructions::{build_group, ConstructionError, ConstructionParams, GammaVariant, GroupKind};
use crate::corpus::builtin_group;
use crate::fusion::{FusionColumn, FusionData, FusionError, Provenance};
use crate::group::{sylow_subgroup, FiniteGroup, GroupElement, GroupError};
use crate::stable::Ambient;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("malformed JSON at line {line}, column {column} (byte {offset}): {message}")]
    Json {
        line: usize,
        column: usize,
        offset: usize,
        message: String,
    },
    #[error("generator {index}: {reason}")]
    Generator { index: usize, reason: String },
    #[error("word {word:?} does not resolve: {reason}")]
    Word { word: String, reason: String },
    #[error("invalid specification: {0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Permutations of `0..degree`, given as image lists.
    Permutation {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
        generators: Vec<Vec<usize>>,
    },
    /// Square matrices over `F_p`, acting on row vectors.
    Matrix { p: u64, generators: Vec<Vec<Vec<i64>>> },
    Builtin { name: String },
    /// A group from the constructions on quadratic forms.
    Construction {
        p: u64,
        group: GroupKind,
        #[serde(default)]
        variant: GammaVariant,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FusionMode {
    #[default]
    Group,
    Table,
}

/// A rational integer, or `Σ coeffs[i] ζ_order^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CyclotomicValue {
    Int(i64),
    Coeffs { order: u32, coeffs: Vec<i64> },
}

impl CyclotomicValue {
    pub fn to_cyclotomic(&self) -> CyclotomicInt {
        match self {
            CyclotomicValue::Int(n) => CyclotomicInt::from_int(1, *n),
            CyclotomicValue::Coeffs { order, coeffs } => CyclotomicInt::from_coeffs(*order, coeffs.iter().copied()),
        }
    }

    pub fn from_cyclotomic(x: &CyclotomicInt) -> Option<Self> {
        if let Some(n) = x.as_i64() {
            return Some(CyclotomicValue::Int(n));
        }
        let coeffs: Option<Vec<i64>> = x.coeffs().iter().map(|c| i64::try_from(c).ok()).collect();
        Some(CyclotomicValue::Coeffs {
            order: x.order(),
            coeffs: coeffs?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableColumnSpec {
    pub label: String,
    /// Number of elements of `S` in the column.
    pub size: u64,
    /// `|C_S(s)|` for the column representative.
    #[serde(rename = "cS")]
    pub cs_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep_order: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCharacterSpec {
    pub label: String,
    pub values: Vec<CyclotomicValue>,
}

/// Table mode: the columns are the classes of an overgroup meeting `S` and
/// the characters span the base lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableModeSpec {
    pub columns: Vec<TableColumnSpec>,
    pub characters: Vec<TableCharacterSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub p: u64,
    #[serde(default)]
    pub mode: FusionMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    /// Generator words of `S` inside the group; the Sylow subgroup by default.
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<String>>,
    #[serde(default)]
    pub merges: Vec<(String, String)>,
    /// Fuse every non-identity element.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub transitive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableModeSpec>,
}

/// Everything needed to run the determinant check.
pub struct ResolvedFusion {
    pub label: String,
    pub group: Option<FiniteGroup>,
    /// `F_S(G)` (or the table-mode base) before merges.
    pub base: FusionData,
    pub fusion: FusionData,
    pub ambient: Ambient,
}

fn json_error(text: &str, e: serde_json::Error) -> SpecError {
    let (line, column) = (e.line(), e.column());
    // Errors inside tagged enums are raised after buffering and carry no position.
    if line == 0 {
        return SpecError::Invalid(e.to_string());
    }
    let offset = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum::<usize>()
        + column.saturating_sub(1);
    SpecError::Json {
        line,
        column,
        offset,
        message: e.to_string(),
    }
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    serde_json::from_str(text).map_err(|e| json_error(text, e))
}

pub fn parse_fusion_spec(text: &str) -> Result<FusionSpec, SpecError> {
    serde_json::from_str(text).map_err(|e| json_error(text, e))
}

/// A group spec, or a fusion spec recognised by its `p` field.
pub enum ParsedSpec {
    Group(GroupSpec),
    Fusion(FusionSpec),
}

pub fn parse_spec(text: &str) -> Result<ParsedSpec, SpecError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| json_error(text, e))?;
    if value.get("kind").is_some() {
        Ok(ParsedSpec::Group(parse_group_spec(text)?))
    } else {
        Ok(ParsedSpec::Fusion(parse_fusion_spec(text)?))
    }
}

/// Builds the group; for constructions also returns the designated `S`.
pub fn build_group_spec(spec: &GroupSpec) -> Result<(FiniteGroup, Option<Arc<FiniteGroup>>), SpecError> {
    match spec {
        GroupSpec::Permutation { degree, generators } => {
            if generators.is_empty() {
                return Err(SpecError::Invalid("a permutation group needs at least one generator".into()));
            }
            let n = degree.unwrap_or_else(|| generators.iter().map(Vec::len).max().unwrap_or(1));
            let gens = generators
                .iter()
                .enumerate()
                .map(|(index, images)| {
                    if images.len() > n {
                        return Err(SpecError::Generator {
                            index,
                            reason: format!("has {} images but the degree is {n}", images.len()),
                        });
                    }
                    let mut full = images.clone();
                    full.extend(images.len()..n);
                    GroupElement::permutation(&full).map_err(|e| SpecError::Generator {
                        index,
                        reason: e.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((FiniteGroup::generate(gens[0].kind(), gens)?, None))
        }
        GroupSpec::Matrix { p, generators } => {
            if generators.is_empty() {
                return Err(SpecError::Invalid("a matrix group needs at least one generator".into()));
            }
            if !crate::algebra::arith::is_prime(*p) {
                return Err(SpecError::Invalid(format!("{p} is not prime")));
            }
            let gens = generators
                .iter()
                .enumerate()
                .map(|(index, rows)| {
                    GroupElement::matrix(*p, rows).map_err(|e| SpecError::Generator {
                        index,
                        reason: e.to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            if gens.iter().any(|g| g.kind() != gens[0].kind()) {
                return Err(SpecError::Invalid("matrix generators differ in dimension".into()));
            }
            Ok((FiniteGroup::generate(gens[0].kind(), gens)?, None))
        }
        GroupSpec::Builtin { name } => Ok((builtin_group(name)?, None)),
        GroupSpec::Construction { p, group, variant } => {
            let params = ConstructionParams::with_variant(*p, *variant)?;
            let (g, s) = build_group(&params, *group)?;
            Ok((g, Some(s)))
        }
    }
}

fn resolve_words(g: &FiniteGroup, words: &[String]) -> Result<Vec<GroupElement>, SpecError> {
    words
        .iter()
        .map(|w| {
            g.eval_word(w).map_err(|e| SpecError::Word {
                word: w.clone(),
                reason: e.to_string(),
            })
        })
        .collect()
}

fn spec_label(spec: &FusionSpec) -> String {
    if let Some(name) = &spec.name {
        return name.clone();
    }
    match &spec.group {
        Some(GroupSpec::Builtin { name }) => name.clone(),
        Some(GroupSpec::Construction { group, variant, .. }) => format!("{group:?} ({variant:?})"),
        Some(GroupSpec::Permutation { .. }) => "permutation group".into(),
        Some(GroupSpec::Matrix { .. }) => "matrix group".into(),
        None => "table".into(),
    }
}

fn finish(spec: &FusionSpec, base: &FusionData) -> Result<FusionData, SpecError> {
    let mut fusion = base.clone();
    if !spec.merges.is_empty() {
        for (a, b) in &spec.merges {
            for w in [a, b] {
                base.column_of_word(w).map_err(|e| SpecError::Word {
                    word: w.clone(),
                    reason: e.to_string(),
                })?;
            }
        }
        fusion = fusion.apply_merges(&spec.merges)?.0;
    }
    if spec.transitive {
        fusion = fusion.transitive()?;
    }
    Ok(fusion)
}

pub fn resolve_fusion(spec: &FusionSpec) -> Result<ResolvedFusion, SpecError> {
    if !crate::algebra::arith::is_prime(spec.p) {
        return Err(SpecError::Invalid(format!("{} is not prime", spec.p)));
    }
    let label = spec_label(spec);
    match spec.mode {
        FusionMode::Group => {
            let gspec = spec
                .group
                .as_ref()
                .ok_or_else(|| SpecError::Invalid("group mode needs a \"group\"".into()))?;
            let (g, designated) = build_group_spec(gspec)?;
            let s = match (&spec.s, designated) {
                (Some(words), _) => {
                    let gens = resolve_words(&g, words)?;
                    if gens.is_empty() {
                        return Err(SpecError::Invalid("\"S\" lists no generators".into()));
                    }
                    let mut s = g.subgroup(gens)?;
                    for (name, x) in g.names() {
                        if s.contains(x) {
                            s.set_name(name, x.clone())?;
                        }
                    }
                    Arc::new(s)
                }
                (None, Some(s)) => s,
                (None, None) => Arc::new(sylow_subgroup(&g, spec.p)?),
            };
            let base = FusionData::from_group(&g, s.clone(), spec.p)?;
            let fusion = finish(spec, &base)?;
            let ambient = Ambient::from_table(&dixon_character_table(&s)?);
            Ok(ResolvedFusion {
                label,
                group: Some(g),
                base,
                fusion,
                ambient,
            })
        }
        FusionMode::Table => {
            let table = spec
                .table
                .as_ref()
                .ok_or_else(|| SpecError::Invalid("table mode needs a \"table\"".into()))?;
            let (base, ambient) = table_base(spec.p, &label, table)?;
            let fusion = finish(spec, &base)?;
            Ok(ResolvedFusion {
                label,
                group: None,
                base,
                fusion,
                ambient,
            })
        }
    }
}

/// The table-mode base system and its ambient basis.
pub fn table_base(p: u64, label: &str, table: &TableModeSpec) -> Result<(FusionData, Ambient), SpecError> {
    let n = table.columns.len();
    if n == 0 {
        return Err(SpecError::Invalid("table has no columns".into()));
    }
    for c in &table.characters {
        if c.values.len() != n {
            return Err(SpecError::Invalid(format!(
                "character {} has {} values for {n} columns",
                c.label,
                c.values.len()
            )));
        }
    }
    let columns: Vec<FusionColumn> = table
        .columns
        .iter()
        .enumerate()
        .map(|(i, c)| FusionColumn {
            label: c.label.clone(),
            size: c.size,
            cs_order: c.cs_order,
            rep_order: c.rep_order,
            key: i as u64,
        })
        .collect();
    let s_order: u64 = columns.iter().map(|c| c.size).sum();
    if columns.iter().any(|c| c.cs_order == 0 || !s_order.is_multiple_of(c.cs_order)) {
        return Err(SpecError::Invalid("every |C_S| must divide |S|".into()));
    }
    let base = FusionData::from_partition(
        p,
        s_order,
        None,
        columns,
        (0..n).map(|c| vec![c]).collect(),
        Provenance::Table { label: label.to_string() },
        true,
    )?;
    let chars: Vec<ClassFunction> = table
        .characters
        .iter()
        .map(|c| ClassFunction::new(c.values.iter().map(CyclotomicValue::to_cyclotomic).collect()))
        .collect();
    let ambient = Ambient::new(table.characters.iter().map(|c| c.label.clone()).collect(), chars);
    Ok((base, ambient))
}

impl TableModeSpec {
    /// Builds a table-mode spec from exact values.
    pub fn from_values(
        columns: Vec<TableColumnSpec>,
        labels: Vec<String>,
        values: &[Vec<CyclotomicInt>],
    ) -> Option<Self> {
        let characters = labels
            .into_iter()
            .zip(values)
            .map(|(label, vals)| {
                Some(TableCharacterSpec {
                    label,
                    values: vals.iter().map(CyclotomicValue::from_cyclotomic).collect::<Option<_>>()?,
                })
            })
            .collect::<Option<_>>()?;
        Some(TableModeSpec { columns, characters })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c8_spec_parses() {
        let g = parse_group_spec(r#"{"kind":"permutation","degree":8,"generators":[[1,2,3,4,5,6,7,0]]}"#).unwrap();
        assert_eq!(build_group_spec(&g).unwrap().0.order(), 8);
    }

    #[test]
    fn non_bijective_generator_named() {
        let g = parse_group_spec(r#"{"kind":"permutation","generators":[[1,0,2],[0,0,1]]}"#).unwrap();
        match build_group_spec(&g) {
            Err(SpecError::Generator { index, .. }) => assert_eq!(index, 1),
            Err(e) => panic!("unexpected error {e}"),
            Ok(_) => panic!("accepted a non-bijective generator"),
        }
    }

    #[test]
    fn json_errors_carry_offsets() {
        let text = "{\n  \"kind\": \"permutation\",\n  \"generators\": [[1,0]\n}";
        match parse_group_spec(text) {
            Err(SpecError::Json { line, offset, .. }) => {
                assert_eq!(line, 4);
                assert!(offset >= text.find("\n}").unwrap());
            }
            other => panic!("unexpected {:?}", other.err()),
        }
    }

    #[test]
    fn bad_variant_is_invalid_not_malformed() {
        let err = parse_group_spec(r#"{"kind":"construction","p":5,"group":"n_b"}"#).unwrap_err();
        assert!(matches!(err, SpecError::Invalid(ref m) if m.contains("N_b")), "{err}");
    }

    #[test]
    fn unknown_kind_rejected() {
        assert!(matches!(
            parse_group_spec(r#"{"kind":"lie","generators":[]}"#),
            Err(SpecError::Json { .. })
        ));
    }

    #[test]
    fn example_merge_resolves() {
        let spec = parse_fusion_spec(
            r#"{"group":{"kind":"permutation","generators":[[1,2,3,4,5,6,7,0]]},"p":2,"merges":[["g0^2","g0^6"]]}"#,
        )
        .unwrap();
        let r = resolve_fusion(&spec).unwrap();
        assert_eq!((r.base.k(), r.fusion.k()), (8, 7));
        assert!(!r.fusion.saturation_certified);
    }

    #[test]
    fn bad_merge_word_reported() {
        let spec = parse_fusion_spec(
            r#"{"group":{"kind":"builtin","name":"C8"},"p":2,"merges":[["g0^2","q"]]}"#,
        )
        .unwrap();
        assert!(matches!(resolve_fusion(&spec), Err(SpecError::Word { .. })));
    }

    #[test]
    fn spec_roundtrip() {
        let spec = FusionSpec {
            name: Some("x".into()),
            p: 5,
            mode: FusionMode::Group,
            group: Some(GroupSpec::Construction {
                p: 5,
                group: GroupKind::NB,
                variant: GammaVariant::Full,
            }),
            s: None,
            merges: vec![("z".into(), "u".into())],
            transitive: false,
            table: None,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"N_b\""));
        assert_eq!(parse_fusion_spec(&text).unwrap(), spec);
    }
}

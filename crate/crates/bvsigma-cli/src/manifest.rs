//! JSON manifest schema. Unknown fields are rejected everywhere; rationals
//! travel as `p/q` strings and complex values as tagged `[re, im]` pairs.

use bvsigma::csets::{
    classify_finite, classify_spec, kray_set, parabola_set, real_cset, spiral_set, truncate,
    CSetSpec, DecayRule, FiniteSet, RayPartition,
};
use bvsigma::geometry::PlanarPoint;
use bvsigma::membership::{FunctionRule, Poly2};
use bvsigma::scalar::{parse_q, CScalar};
use bvsigma::variation::{FunctionOnSet, SearchConfig};
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub set: SetDescription,
    #[serde(default)]
    pub function: Option<FunctionDescription>,
    #[serde(default)]
    pub list: Option<Vec<[String; 2]>>,
    #[serde(default)]
    pub isolated_point: Option<[String; 2]>,
    #[serde(default)]
    pub config: Option<ConfigOverrides>,
    #[serde(default)]
    pub map: Option<MapDescription>,
    #[serde(default)]
    pub family_size: Option<usize>,
    #[serde(default)]
    pub norm: Option<NormChoice>,
    #[serde(default)]
    pub schedule: Option<Vec<u64>>,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum SetDescription {
    /// Inline point list (also the ordered list for curve-variation tasks).
    Points(Vec<[String; 2]>),
    Builder(BuilderDescription),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuilderDescription {
    /// One of: real, kray, parabola, spiral.
    pub name: String,
    #[serde(default)]
    pub directions: Option<Vec<[String; 2]>>,
    #[serde(default)]
    pub rule: Option<DecayRule>,
    #[serde(default)]
    pub extras: Option<Vec<[String; 2]>>,
    #[serde(default)]
    pub precision: Option<u32>,
    #[serde(default)]
    pub truncation: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum FunctionDescription {
    Table(Vec<TableEntry>),
    Rule(RuleDescription),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub point: [String; 2],
    pub value: CScalar,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum RuleDescription {
    Identity {},
    Indicator { points: Vec<[String; 2]> },
    Poly { terms: Vec<PolyTerm> },
    HarmonicAlternating {},
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyTerm {
    pub x_power: u32,
    pub y_power: u32,
    pub coeff: CScalar,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    #[serde(default)]
    pub max_list_length: Option<usize>,
    #[serde(default)]
    pub stabilization_window: Option<usize>,
    #[serde(default)]
    pub exhaustive_threshold: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum MapDescription {
    /// Swap the origin and the point 1 on {0} ∪ {1/n}.
    Swap01 {},
    MovePoint { from: [String; 2], to: [String; 2] },
    /// Order-matching homeomorphism onto another builder set.
    OrderMatch { target: BuilderDescription },
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormChoice {
    Bv,
    Spoke,
}

pub fn parse_point(raw: &[String; 2]) -> Result<PlanarPoint, String> {
    Ok(PlanarPoint::new(parse_q(&raw[0])?, parse_q(&raw[1])?))
}

pub fn parse_points(raw: &[[String; 2]]) -> Result<Vec<PlanarPoint>, String> {
    raw.iter().map(parse_point).collect()
}

impl BuilderDescription {
    pub fn to_spec(&self) -> Result<CSetSpec, String> {
        let rule = self.rule.clone().unwrap_or(DecayRule::Harmonic);
        let extras = match &self.extras {
            None => Default::default(),
            Some(raw) => parse_points(raw)?.into_iter().collect(),
        };
        match self.name.as_str() {
            "real" => real_cset(rule).map_err(|e| e.to_string()),
            "kray" => {
                let raw = self
                    .directions
                    .as_ref()
                    .ok_or("kray builder needs directions")?;
                let dirs: Vec<_> = parse_points(raw)?
                    .into_iter()
                    .map(|p| (p.x, p.y))
                    .collect();
                kray_set(&dirs, rule, extras).map_err(|e| e.to_string())
            }
            "parabola" => Ok(parabola_set()),
            "spiral" => spiral_set(self.precision.unwrap_or(6)).map_err(|e| e.to_string()),
            other => Err(format!("unknown builder {other:?}")),
        }
    }

    pub fn to_finite(&self) -> Result<FiniteSet, String> {
        let spec = self.to_spec()?;
        let n = self.truncation.ok_or("builder needs a truncation")?;
        truncate(&spec, n).map_err(|e| e.to_string())
    }
}

impl SetDescription {
    pub fn to_finite(&self) -> Result<FiniteSet, String> {
        match self {
            SetDescription::Points(raw) => {
                FiniteSet::new(parse_points(raw)?).map_err(|e| e.to_string())
            }
            SetDescription::Builder(b) => b.to_finite(),
        }
    }

    /// Classification: structural on finite data, spec-level when the
    /// builder carries no truncation.
    pub fn classify(&self) -> Result<(RayPartition, &'static str), String> {
        match self {
            SetDescription::Points(_) => {
                let set = self.to_finite()?;
                Ok((
                    classify_finite(&set).map_err(|e| e.to_string())?,
                    "structural",
                ))
            }
            SetDescription::Builder(b) => {
                if b.truncation.is_some() {
                    let set = b.to_finite()?;
                    Ok((
                        classify_finite(&set).map_err(|e| e.to_string())?,
                        "structural",
                    ))
                } else {
                    let spec = b.to_spec()?;
                    Ok((classify_spec(&spec).map_err(|e| e.to_string())?, "spec"))
                }
            }
        }
    }
}

impl FunctionDescription {
    pub fn to_table(&self, set: &FiniteSet) -> Result<FunctionOnSet, String> {
        match self {
            FunctionDescription::Table(entries) => {
                let mut values: BTreeMap<PlanarPoint, CScalar> = BTreeMap::new();
                for e in entries {
                    values.insert(parse_point(&e.point)?, e.value.clone());
                }
                let f = FunctionOnSet::new(values).map_err(|e| e.to_string())?;
                if f.domain() != set {
                    return Err("table domain does not match the set".into());
                }
                Ok(f)
            }
            FunctionDescription::Rule(rule) => {
                let rule = rule.to_rule()?;
                let pairs = set
                    .iter()
                    .map(|p| Ok((p.clone(), rule.eval(p, None).map_err(|e| e.to_string())?)))
                    .collect::<Result<Vec<_>, String>>()?;
                FunctionOnSet::from_pairs(pairs).map_err(|e| e.to_string())
            }
        }
    }
}

impl RuleDescription {
    pub fn to_rule(&self) -> Result<FunctionRule, String> {
        match self {
            RuleDescription::Identity {} => Ok(FunctionRule::identity()),
            RuleDescription::Indicator { points } => Ok(FunctionRule::Indicator(
                parse_points(points)?.into_iter().collect(),
            )),
            RuleDescription::Poly { terms } => Ok(FunctionRule::Poly2(Poly2::new(
                terms
                    .iter()
                    .map(|t| ((t.x_power, t.y_power), t.coeff.clone())),
            ))),
            RuleDescription::HarmonicAlternating {} => Ok(FunctionRule::harmonic_alternating()),
        }
    }
}

impl ConfigOverrides {
    pub fn to_config(&self, base: SearchConfig) -> SearchConfig {
        SearchConfig {
            max_list_length: self.max_list_length.unwrap_or(base.max_list_length),
            stabilization_window: self
                .stabilization_window
                .unwrap_or(base.stabilization_window),
            exhaustive_threshold: self
                .exhaustive_threshold
                .unwrap_or(base.exhaustive_threshold),
        }
    }
}

//! Preset documents: a presentation, its line modules, an optional metric rescaling
//! and an optional differential calculus, all in one JSON file.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diffcalc::Dga;
use crate::error::{Error, Result};
use crate::gralg::{AlgebraElement, Factor, GradingGroup, Presentation, PresentationSpec};
use crate::hermet::HermitianMetric;
use crate::linemod::LineModule;

pub const SLQ2_JSON: &str = include_str!("../presets/slq2.json");
pub const CIRCLE_JSON: &str = include_str!("../presets/circle.json");
pub const TRIVIAL_JSON: &str = include_str!("../presets/trivial.json");

/// A degree written either as a single integer or as one integer per factor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeValue {
    One(i64),
    Many(Vec<i64>),
}

impl DegreeValue {
    pub fn to_vec(&self) -> Vec<i64> {
        match self {
            DegreeValue::One(x) => vec![*x],
            DegreeValue::Many(xs) => xs.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingDesc {
    pub factors: Vec<Factor>,
    pub degrees: BTreeMap<String, DegreeValue>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDesc {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineModuleDesc {
    pub name: String,
    pub g: DegreeValue,
    pub v: Vec<String>,
    pub w: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cc: Option<Vec<[String; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ccc: Option<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisDesc {
    pub name: String,
    pub degree: DegreeValue,
    pub horizontal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalculusDesc {
    pub basis: Vec<BasisDesc>,
    /// `commute[e][x] = s` means `e·x = s x·e` for a generator `x`.
    pub commute: BTreeMap<String, BTreeMap<String, String>>,
    pub d: BTreeMap<String, String>,
    pub d_basis: BTreeMap<String, String>,
    /// `[later, earlier, s]`: `later ∧ earlier = s earlier ∧ later`.
    pub wedge: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form_star: Option<BTreeMap<String, String>>,
    /// Name of the line module the calculus examples use.
    pub module: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresetFile {
    pub name: String,
    pub generators: Vec<String>,
    pub grading: GradingDesc,
    #[serde(default)]
    pub rules: Vec<RuleDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub star: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub line_modules: Vec<LineModuleDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rescale: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub calculus: Option<CalculusDesc>,
}

impl PresetFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("preset JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("preset serializes")
    }

    fn table(&self, t: &Option<BTreeMap<String, String>>, what: &str) -> Result<Option<Vec<String>>> {
        let Some(t) = t else { return Ok(None) };
        if let Some(k) = t.keys().find(|k| !self.generators.contains(k)) {
            return Err(Error::UnknownGenerator(format!("{k} in {what} table")));
        }
        self.generators
            .iter()
            .map(|g| t.get(g).cloned().ok_or_else(|| Error::BadPresentation(format!("{what} of `{g}` missing"))))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn presentation_spec(&self) -> Result<PresentationSpec> {
        if let Some(k) = self.grading.degrees.keys().find(|k| !self.generators.contains(k)) {
            return Err(Error::UnknownGenerator(format!("{k} in degree table")));
        }
        let degrees = self
            .generators
            .iter()
            .map(|g| {
                self.grading
                    .degrees
                    .get(g)
                    .map(DegreeValue::to_vec)
                    .ok_or_else(|| Error::BadDegrees(format!("no degree for `{g}`")))
            })
            .collect::<Result<_>>()?;
        Ok(PresentationSpec {
            name: self.name.clone(),
            generators: self.generators.clone(),
            grading: GradingGroup::new(self.grading.factors.clone()),
            degrees,
            rules: self.rules.iter().map(|r| (r.lhs.clone(), r.rhs.clone())).collect(),
            star: self.table(&self.star, "star")?,
            antipode: self.table(&self.antipode, "antipode")?,
        })
    }
}

/// A loaded preset.
#[derive(Debug)]
pub struct Preset {
    pub file: PresetFile,
    pub pres: Arc<Presentation>,
    pub modules: Vec<Arc<LineModule>>,
    /// Central Hermitian factor for the metric (1 unless the file says otherwise).
    pub rescale: AlgebraElement,
    pub calculus: Option<Arc<Dga>>,
}

fn pairs(p: &Arc<Presentation>, xs: &Option<Vec<[String; 2]>>) -> Result<Option<Vec<(AlgebraElement, AlgebraElement)>>> {
    xs.as_ref()
        .map(|v| {
            v.iter()
                .map(|[a, b]| Ok((AlgebraElement::parse(p, a)?, AlgebraElement::parse(p, b)?)))
                .collect()
        })
        .transpose()
}

impl Preset {
    pub fn from_file(file: PresetFile) -> Result<Self> {
        let pres = Presentation::new(&file.presentation_spec()?)?;
        let mut modules = Vec::new();
        for m in &file.line_modules {
            let parse_all = |xs: &[String]| xs.iter().map(|s| AlgebraElement::parse(&pres, s)).collect::<Result<Vec<_>>>();
            let g = pres.grading().element(&m.g.to_vec())?;
            let lm = LineModule::new(
                &m.name,
                &pres,
                g,
                parse_all(&m.v)?,
                parse_all(&m.w)?,
                pairs(&pres, &m.cc)?,
                pairs(&pres, &m.ccc)?,
            )?;
            modules.push(Arc::new(lm));
        }
        let rescale = match &file.rescale {
            Some(s) => AlgebraElement::parse(&pres, s)?,
            None => AlgebraElement::one(&pres),
        };
        let calculus = match &file.calculus {
            Some(c) => {
                if !modules.iter().any(|m| m.name() == c.module) {
                    return Err(Error::BadPresentation(format!("calculus module `{}` not defined", c.module)));
                }
                Some(Arc::new(Dga::new(&pres, c)?))
            }
            None => None,
        };
        Ok(Preset { file, pres, modules, rescale, calculus })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Preset::from_file(PresetFile::from_json(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Preset::from_json(&text)
    }

    /// A built-in preset by name.
    pub fn builtin(name: &str) -> Result<Self> {
        match name {
            "slq2" => Preset::from_json(SLQ2_JSON),
            "circle" => Preset::from_json(CIRCLE_JSON),
            "trivial" => Preset::from_json(TRIVIAL_JSON),
            _ => Err(Error::UnknownPreset(name.to_string())),
        }
    }

    pub fn slq2() -> Self {
        Preset::builtin("slq2").expect("built-in preset")
    }

    pub fn circle() -> Self {
        Preset::builtin("circle").expect("built-in preset")
    }

    pub fn trivial() -> Self {
        Preset::builtin("trivial").expect("built-in preset")
    }

    pub fn module(&self, name: &str) -> Result<&Arc<LineModule>> {
        self.modules
            .iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| Error::BadPresentation(format!("no line module `{name}`")))
    }

    /// The first line module of the file.
    pub fn line_module(&self) -> Result<&Arc<LineModule>> {
        self.modules.first().ok_or_else(|| Error::BadPresentation("preset has no line module".into()))
    }

    /// The line module the calculus is attached to.
    pub fn calculus_module(&self) -> Option<&Arc<LineModule>> {
        let c = self.file.calculus.as_ref()?;
        self.module(&c.module).ok()
    }

    /// The metric on the first line module, rescaled as the file says.
    pub fn metric(&self) -> Result<HermitianMetric> {
        let m = HermitianMetric::new(self.line_module()?)?;
        if self.rescale.is_one() {
            Ok(m)
        } else {
            m.rescale(&self.rescale)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load_and_round_trip() {
        for (name, text) in [("slq2", SLQ2_JSON), ("circle", CIRCLE_JSON), ("trivial", TRIVIAL_JSON)] {
            let f = PresetFile::from_json(text).unwrap();
            let again = PresetFile::from_json(&f.to_json()).unwrap();
            assert_eq!(f, again, "{name}");
            let p = Preset::from_file(again).unwrap();
            assert_eq!(p.pres.name(), name);
            assert!(p.calculus.is_some());
        }
    }

    #[test]
    fn unknown_preset() {
        assert!(matches!(Preset::builtin("torus"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = SLQ2_JSON.replacen("\"name\"", "\"nmae\"", 1);
        assert!(PresetFile::from_json(&text).is_err());
    }
}

//! Scenario file format: a TOML document describing the source, the
//! broadcast channel, the auxiliary choice, and the deterministic
//! channel-input map, plus optional sections for the specialized
//! evaluators. All probability arrays are row-major in the documented
//! index order; every value is parsed bit-exactly as written.

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use corrbc::measures::{Conditional, FiniteVariable, JointPmf, XMap};
use corrbc::regions::{AuxiliarySpec, ScenarioSpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub alphabets: Alphabets,
    /// p(s1, s2), row-major over (s1, s2).
    pub source: Vec<f64>,
    /// p(y1, y2 | x), row-major over (x, y1, y2).
    pub channel: Vec<f64>,
    /// p(u0, u1, u2 | s1, s2), row-major over (s1, s2, u0, u1, u2).
    pub aux: Vec<f64>,
    /// x(s1, s2, u0, u1, u2), row-major over the same order.
    pub x_map: Vec<usize>,
    pub marton: Option<MartonSection>,
    pub gray_wyner: Option<GrayWynerSection>,
    pub degraded: Option<DegradedSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Alphabets {
    pub s1: usize,
    pub s2: usize,
    pub u0: usize,
    pub u1: usize,
    pub u2: usize,
    pub x: usize,
    pub y1: usize,
    pub y2: usize,
}

/// Channel-only auxiliary choice for the private-message evaluator:
/// p(u0, u1, u2) with no source conditioning, and x(u0, u1, u2).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MartonSection {
    pub u0: usize,
    pub u1: usize,
    pub u2: usize,
    /// Row-major over (u0, u1, u2).
    pub aux: Vec<f64>,
    pub x_map: Vec<usize>,
}

/// Auxiliary description variable V for the common-plus-refinements
/// source network: p(v | s1, s2), row-major over (s1, s2, v).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrayWynerSection {
    pub v: usize,
    pub cond: Vec<f64>,
}

/// Source-independent (U, X) input distribution for the degraded
/// specialization: p(u, x), row-major over (u, x).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegradedSection {
    pub u: usize,
    pub ux: Vec<f64>,
}

impl ScenarioFile {
    pub fn load(path: &std::path::Path) -> Result<(Self, String)> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let file: ScenarioFile =
            toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        Ok((file, text))
    }

    pub fn scenario(&self) -> Result<ScenarioSpec> {
        let a = &self.alphabets;
        let source = JointPmf::new(
            vec![
                FiniteVariable::new("S1", a.s1),
                FiniteVariable::new("S2", a.s2),
            ],
            self.source.clone(),
        )?;
        let channel = Conditional::new(vec![a.x], vec![a.y1, a.y2], self.channel.clone())?;
        Ok(ScenarioSpec { source, channel })
    }

    pub fn auxiliary(&self) -> Result<AuxiliarySpec> {
        let a = &self.alphabets;
        let aux = Conditional::new(
            vec![a.s1, a.s2],
            vec![a.u0, a.u1, a.u2],
            self.aux.clone(),
        )?;
        let x_map = XMap::new(
            vec![a.s1, a.s2, a.u0, a.u1, a.u2],
            a.x,
            self.x_map.clone(),
        )?;
        Ok(AuxiliarySpec { aux, x_map })
    }

    pub fn marton(&self) -> Result<(Conditional, XMap)> {
        let Some(m) = &self.marton else {
            bail!("scenario file has no [marton] section");
        };
        let aux = Conditional::new(vec![1], vec![m.u0, m.u1, m.u2], m.aux.clone())?;
        let x_map = XMap::new(
            vec![m.u0, m.u1, m.u2],
            self.alphabets.x,
            m.x_map.clone(),
        )?;
        Ok((aux, x_map))
    }

    pub fn gray_wyner(&self) -> Result<Conditional> {
        let Some(g) = &self.gray_wyner else {
            bail!("scenario file has no [gray_wyner] section");
        };
        let a = &self.alphabets;
        Ok(Conditional::new(vec![a.s1, a.s2], vec![g.v], g.cond.clone())?)
    }

    pub fn degraded(&self) -> Result<Conditional> {
        let Some(d) = &self.degraded else {
            bail!("scenario file has no [degraded] section");
        };
        Ok(Conditional::new(
            vec![1],
            vec![d.u, self.alphabets.x],
            d.ux.clone(),
        )?)
    }
}

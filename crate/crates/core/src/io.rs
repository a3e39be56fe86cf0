//! JSON documents for groups, matroids, constructor requests and match reports.
//!
//! A group is `{"kind":"free","rank":k}` or `{"kind":"finite","moduli":[..]}`,
//! an element is an integer array (a bare integer is accepted for rank-1
//! groups). A matroid is either explicit,
//! `{"ctx":..,"ground":[[..],..],"bases":[[indices],..]}`, or a constructor:
//! `{"uniform":{..}}`, `{"panhandle":{..}}`, `{"schubert":{..}}`,
//! `{"from_bases":{..}}`, `{"dual":<matroid>}`, `{"direct_sum":[<m>,<m>]}`.
//! A `"ctx"` key next to the constructor key applies to the constructor.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{GroupCtx, GroupElement};
use crate::matching::MatchReport;
use crate::matroid::{indices_of, Matroid, PanhandleParams, SchubertParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CtxDoc {
    Free { rank: usize },
    Finite { moduli: Vec<i64> },
}

impl CtxDoc {
    pub fn build(&self) -> Result<GroupCtx> {
        match self {
            CtxDoc::Free { rank } => GroupCtx::free(*rank),
            CtxDoc::Finite { moduli } => GroupCtx::finite(moduli.clone()),
        }
    }

    pub fn from_ctx(ctx: &GroupCtx) -> Self {
        match ctx {
            GroupCtx::FreeAbelian { rank } => CtxDoc::Free { rank: *rank },
            GroupCtx::FiniteProduct { moduli } => CtxDoc::Finite {
                moduli: moduli.clone(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementDoc {
    Scalar(i64),
    Vector(Vec<i64>),
}

impl ElementDoc {
    fn coords(&self) -> Vec<i64> {
        match self {
            ElementDoc::Scalar(x) => vec![*x],
            ElementDoc::Vector(v) => v.clone(),
        }
    }

    pub fn build(&self, ctx: &GroupCtx) -> Result<GroupElement> {
        ctx.element(self.coords())
    }

    pub fn from_element(x: &GroupElement) -> Self {
        ElementDoc::Vector(x.coords().to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidDoc {
    pub ctx: CtxDoc,
    pub ground: Vec<ElementDoc>,
    pub bases: Vec<Vec<usize>>,
}

impl MatroidDoc {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidDoc {
            ctx: CtxDoc::from_ctx(m.ctx()),
            ground: m.ground().iter().map(ElementDoc::from_element).collect(),
            bases: m.bases().iter().map(|&b| indices_of(b)).collect(),
        }
    }

    pub fn build(&self) -> Result<Matroid> {
        let ctx = self.ctx.build()?;
        let ground = build_elements(&ctx, &self.ground)?;
        Matroid::from_bases(&ctx, ground, &self.bases)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ctx: Option<CtxDoc>,
    pub n: usize,
    pub ground: Vec<ElementDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PanhandleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ctx: Option<CtxDoc>,
    pub n: usize,
    pub s: usize,
    pub m: usize,
    pub a: ElementDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ctx: Option<CtxDoc>,
    pub m: usize,
    pub a: ElementDoc,
    #[serde(rename = "S")]
    pub s_set: Vec<ElementDoc>,
}

/// Anything that builds a matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatroidSpec {
    Uniform(UniformDoc),
    Panhandle(PanhandleDoc),
    Schubert(SchubertDoc),
    FromBases(MatroidDoc),
    Dual(Box<MatroidSpec>),
    DirectSum(Box<MatroidSpec>, Box<MatroidSpec>),
}

const CONSTRUCTOR_KEYS: [&str; 6] = [
    "uniform",
    "panhandle",
    "schubert",
    "from_bases",
    "dual",
    "direct_sum",
];

impl MatroidSpec {
    /// Parses any accepted matroid document, normalizing the shorthand forms.
    pub fn from_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("a matroid document must be a JSON object".into()))?;
        if obj.contains_key("ground") && obj.contains_key("bases") && obj.contains_key("ctx") {
            let doc: MatroidDoc = parse_as(value)?;
            return Ok(MatroidSpec::FromBases(doc));
        }
        let keys: Vec<&str> = CONSTRUCTOR_KEYS
            .iter()
            .copied()
            .filter(|k| obj.contains_key(*k))
            .collect();
        let [key] = keys.as_slice() else {
            return Err(Error::Parse(format!(
                "expected exactly one of {CONSTRUCTOR_KEYS:?} (or an explicit ground/bases document)"
            )));
        };
        let outer_ctx = obj.get("ctx");
        if let Some(extra) = obj.keys().find(|k| *k != key && *k != "ctx") {
            return Err(Error::Parse(format!("unexpected key '{extra}'")));
        }
        let body = &obj[*key];
        let with_ctx = |body: &Value| -> Value {
            let mut body = body.clone();
            if let (Some(ctx), Some(map)) = (outer_ctx, body.as_object_mut()) {
                map.entry("ctx").or_insert_with(|| ctx.clone());
            }
            body
        };
        let nested = |v: &Value| -> Result<MatroidSpec> {
            let mut v = v.clone();
            if let (Some(ctx), Some(map)) = (outer_ctx, v.as_object_mut()) {
                map.entry("ctx").or_insert_with(|| ctx.clone());
            }
            MatroidSpec::from_value(&v)
        };
        Ok(match *key {
            "uniform" => MatroidSpec::Uniform(parse_as(&with_ctx(body))?),
            "panhandle" => MatroidSpec::Panhandle(parse_as(&with_ctx(body))?),
            "schubert" => MatroidSpec::Schubert(parse_as(&with_ctx(body))?),
            "from_bases" => MatroidSpec::FromBases(parse_as(&with_ctx(body))?),
            "dual" => MatroidSpec::Dual(Box::new(nested(body)?)),
            "direct_sum" => {
                let parts = body
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| Error::Parse("direct_sum takes a two-element array".into()))?;
                MatroidSpec::DirectSum(Box::new(nested(&parts[0])?), Box::new(nested(&parts[1])?))
            }
            _ => unreachable!(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_value(&value)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("matroid specs always serialize")
    }

    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Uniform(d) => {
                let ctx = resolve_ctx(d.ctx.as_ref(), &d.ground)?;
                Matroid::uniform(&ctx, build_elements(&ctx, &d.ground)?, d.n)
            }
            MatroidSpec::Panhandle(d) => {
                let ctx = resolve_ctx(d.ctx.as_ref(), std::slice::from_ref(&d.a))?;
                let params = PanhandleParams {
                    n: d.n,
                    s: d.s,
                    m: d.m,
                    a: d.a.build(&ctx)?,
                };
                Matroid::panhandle(&ctx, &params)
            }
            MatroidSpec::Schubert(d) => {
                let ctx = resolve_ctx(d.ctx.as_ref(), std::slice::from_ref(&d.a))?;
                Matroid::schubert(&ctx, &d.params(&ctx)?)
            }
            MatroidSpec::FromBases(d) => d.build(),
            MatroidSpec::Dual(inner) => Ok(inner.build()?.dual()),
            MatroidSpec::DirectSum(a, b) => a.build()?.direct_sum(&b.build()?),
        }
    }

    pub fn panhandle(ctx: &GroupCtx, n: usize, s: usize, m: usize, a: &GroupElement) -> Self {
        MatroidSpec::Panhandle(PanhandleDoc {
            ctx: Some(CtxDoc::from_ctx(ctx)),
            n,
            s,
            m,
            a: ElementDoc::from_element(a),
        })
    }

    pub fn schubert(ctx: &GroupCtx, p: &SchubertParams) -> Self {
        MatroidSpec::Schubert(SchubertDoc {
            ctx: Some(CtxDoc::from_ctx(ctx)),
            m: p.m,
            a: ElementDoc::from_element(&p.a),
            s_set: p.s_set.iter().map(ElementDoc::from_element).collect(),
        })
    }

    pub fn explicit(m: &Matroid) -> Self {
        MatroidSpec::FromBases(MatroidDoc::from_matroid(m))
    }
}

impl SchubertDoc {
    pub fn params(&self, ctx: &GroupCtx) -> Result<SchubertParams> {
        Ok(SchubertParams {
            m: self.m,
            a: self.a.build(ctx)?,
            s_set: build_elements(ctx, &self.s_set)?,
        })
    }
}

fn parse_as<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Parse(e.to_string()))
}

fn build_elements(ctx: &GroupCtx, docs: &[ElementDoc]) -> Result<Vec<GroupElement>> {
    docs.iter().map(|d| d.build(ctx)).collect()
}

/// The stated group, or `Z^k` with `k` taken from the elements.
fn resolve_ctx(ctx: Option<&CtxDoc>, elements: &[ElementDoc]) -> Result<GroupCtx> {
    if let Some(c) = ctx {
        return c.build();
    }
    let dim = elements.first().map_or(1, |e| e.coords().len());
    if elements.iter().any(|e| e.coords().len() != dim) {
        return Err(Error::Structural(
            "elements have differing dimensions".into(),
        ));
    }
    GroupCtx::free(dim)
}

pub fn matroid_to_value(m: &Matroid) -> Value {
    serde_json::to_value(MatroidDoc::from_matroid(m)).expect("matroid documents always serialize")
}

pub fn report_to_value(report: &MatchReport) -> Value {
    let witnesses: Vec<Value> = report
        .witnesses()
        .map(|w| {
            json!({
                "source": indices_of(w.source),
                "target": indices_of(w.target),
                "pairs": w.pairs.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "matched": report.matched,
        "counterexample": report.counterexample.map(indices_of),
        "witnesses": witnesses,
    })
}

//! Tabulated reference values, loaded from JSON files.
//!
//! Each file holds an array of records `{id, kind, provenance, payload, ...}`.
//! Kinds: `sym`, `tensor`, `tensor_perp`, `nabla_hook`, `hook_poly`, `kpoly`.
//! A record with `base` stores an increment over the value of another record.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::qt::QTPoly;
use crate::symfunc::{e_perp, SymExpr};
use crate::tensor::{HookPoly, RightBasis, TensorExpr};

pub const ENV_VAR: &str = "TRIHARM_FIXTURES";

const BUILTIN: &[(&str, &str)] = &[
    ("alternants.json", include_str!("../../fixtures/alternants.json")),
    ("e5.json", include_str!("../../fixtures/e5.json")),
    ("ftau.json", include_str!("../../fixtures/ftau.json")),
    ("hooks.json", include_str!("../../fixtures/hooks.json")),
    ("nabla.json", include_str!("../../fixtures/nabla.json")),
    ("principal.json", include_str!("../../fixtures/principal.json")),
    ("stable.json", include_str!("../../fixtures/stable.json")),
];

/// `Σ_i num_i k^i / den` multiplying `e_{(n−|ν|, ν)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPolyTerm {
    pub nu: Partition,
    pub num: Vec<i64>,
    pub den: i64,
}

impl KPolyTerm {
    /// Value at an integer `k`; `None` when not integral.
    pub fn eval(&self, k: i64) -> Option<i64> {
        let v = self.num.iter().rev().fold(0i64, |acc, c| acc * k + c);
        (v % self.den == 0).then_some(v / self.den)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Sym(SymExpr<i64>),
    SymQT(SymExpr<QTPoly>),
    Tensor(TensorExpr),
    /// `T + Σ (e_k^⊥ A) ⊗ b_ν`; `A` from another record or from the `s_{1^n}` coefficient of `T`.
    TensorPerp { tensor: TensorExpr, perp: Vec<(usize, Partition)>, alternant: Option<String> },
    /// `∇(ŝ_{(a|ℓ)})` plus explicit terms of length at least 3.
    NablaHook { arm: usize, leg: usize, extra: TensorExpr },
    HookPoly(HookPoly),
    KPoly(Vec<KPolyTerm>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fixture {
    pub id: String,
    pub kind: String,
    pub provenance: String,
    pub annotation: Option<String>,
    pub tau: Option<Partition>,
    pub n: Option<usize>,
    pub base: Option<String>,
    pub payload: Payload,
    /// The record exactly as read.
    pub raw: Value,
}

fn parse_err(id: &str, what: &str) -> Error {
    Error::Parse(format!("fixture {id}: {what}"))
}

fn partition_field(v: &Value, key: &str, id: &str) -> Result<Option<Partition>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(p) => {
            let parts: Vec<usize> = serde_json::from_value(p.clone()).map_err(|e| parse_err(id, &e.to_string()))?;
            Ok(Some(Partition::new(parts)?))
        }
    }
}

fn parse_payload(id: &str, kind: &str, p: &Value) -> Result<Payload> {
    Ok(match kind {
        "sym" => match SymExpr::<i64>::from_json(p) {
            Ok(s) => Payload::Sym(s),
            Err(_) => Payload::SymQT(SymExpr::from_json(p)?),
        },
        "tensor" => Payload::Tensor(TensorExpr::from_json(p)?),
        "tensor_perp" => {
            let tensor = TensorExpr::from_json(p.get("tensor").ok_or_else(|| parse_err(id, "tensor"))?)?;
            let perp: Vec<(usize, Vec<usize>)> = serde_json::from_value(p.get("perp").cloned().unwrap_or(Value::Null))
                .map_err(|e| parse_err(id, &e.to_string()))?;
            let perp = perp.into_iter().map(|(k, nu)| Ok((k, Partition::new(nu)?))).collect::<Result<_>>()?;
            let alternant = p.get("alternant").and_then(|a| a.as_str()).map(String::from);
            Payload::TensorPerp { tensor, perp, alternant }
        }
        "nabla_hook" => {
            let hook: (usize, usize) = serde_json::from_value(p.get("hook").cloned().unwrap_or(Value::Null))
                .map_err(|e| parse_err(id, &e.to_string()))?;
            let extra = TensorExpr::from_json(p.get("extra").ok_or_else(|| parse_err(id, "extra"))?)?;
            Payload::NablaHook { arm: hook.0, leg: hook.1, extra }
        }
        "hook_poly" => {
            let terms: Vec<(usize, usize, i64)> = serde_json::from_value(p.get("terms").cloned().unwrap_or(Value::Null))
                .map_err(|e| parse_err(id, &e.to_string()))?;
            Payload::HookPoly(HookPoly::from_terms(terms.into_iter().map(|(a, l, c)| ((a, l), c))))
        }
        "kpoly" => {
            #[derive(serde::Deserialize)]
            struct Raw {
                nu: Vec<usize>,
                num: Vec<i64>,
                den: i64,
            }
            let terms: Vec<Raw> = serde_json::from_value(p.get("terms").cloned().unwrap_or(Value::Null))
                .map_err(|e| parse_err(id, &e.to_string()))?;
            Payload::KPoly(
                terms
                    .into_iter()
                    .map(|r| Ok(KPolyTerm { nu: Partition::new(r.nu)?, num: r.num, den: r.den }))
                    .collect::<Result<_>>()?,
            )
        }
        other => return Err(parse_err(id, &format!("unknown kind {other:?}"))),
    })
}

impl Fixture {
    pub fn from_json(v: &Value) -> Result<Fixture> {
        let id = v.get("id").and_then(|x| x.as_str()).ok_or_else(|| Error::Parse("fixture without id".into()))?;
        let field = |k: &str| v.get(k).and_then(|x| x.as_str()).map(String::from);
        let kind = field("kind").ok_or_else(|| parse_err(id, "kind"))?;
        let payload = parse_payload(id, &kind, v.get("payload").ok_or_else(|| parse_err(id, "payload"))?)?;
        Ok(Fixture {
            id: id.to_string(),
            provenance: field("provenance").unwrap_or_default(),
            annotation: field("annotation"),
            tau: partition_field(v, "tau", id)?,
            n: v.get("n").and_then(|x| x.as_u64()).map(|x| x as usize),
            base: field("base"),
            kind,
            payload,
            raw: v.clone(),
        })
    }

    pub fn to_json(&self) -> Value {
        self.raw.clone()
    }
}

#[derive(Clone, Debug, Default)]
pub struct FixtureSet {
    fixtures: BTreeMap<String, Fixture>,
    /// Where each file came from, for reports.
    pub sources: Vec<String>,
}

impl FixtureSet {
    fn add_file(&mut self, name: &str, text: &str) -> Result<()> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("{name}: {e}")))?;
        let items = v.as_array().ok_or_else(|| Error::Parse(format!("{name}: expected an array")))?;
        for item in items {
            let f = Fixture::from_json(item)?;
            if self.fixtures.contains_key(&f.id) {
                return Err(Error::Parse(format!("{name}: duplicate fixture id {}", f.id)));
            }
            self.fixtures.insert(f.id.clone(), f);
        }
        self.sources.push(name.to_string());
        Ok(())
    }

    /// The fixtures compiled into the library.
    pub fn builtin() -> Result<FixtureSet> {
        let mut set = FixtureSet::default();
        for (name, text) in BUILTIN {
            set.add_file(&format!("builtin:{name}"), text)?;
        }
        Ok(set)
    }

    /// Every `*.json` file in `dir`, in name order.
    pub fn load_dir(dir: &Path) -> Result<FixtureSet> {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        let mut set = FixtureSet::default();
        for f in files {
            let text = std::fs::read_to_string(&f).map_err(|e| Error::Parse(format!("{}: {e}", f.display())))?;
            set.add_file(&f.display().to_string(), &text)?;
        }
        Ok(set)
    }

    /// The directory named by `TRIHARM_FIXTURES`, or the builtin set.
    pub fn from_env() -> Result<FixtureSet> {
        match std::env::var_os(ENV_VAR) {
            Some(dir) if !dir.is_empty() => FixtureSet::load_dir(Path::new(&dir)),
            _ => FixtureSet::builtin(),
        }
    }

    pub fn get(&self, id: &str) -> Option<&Fixture> {
        self.fixtures.get(id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.fixtures.keys().map(|s| s.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Fixture> {
        self.fixtures.values()
    }

    pub fn len(&self) -> usize {
        self.fixtures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixtures.is_empty()
    }

    fn missing(id: &str) -> Error {
        Error::Unsupported(format!("missing fixture {id}"))
    }

    /// A plain symmetric function with integer coefficients.
    pub fn sym(&self, id: &str) -> Result<SymExpr<i64>> {
        let f = self.get(id).ok_or_else(|| Self::missing(id))?;
        let own = match &f.payload {
            Payload::Sym(s) => s.to_schur(),
            _ => return Err(Error::Unsupported(format!("fixture {id} is not an integer symmetric function"))),
        };
        match &f.base {
            Some(b) => Ok(self.sym(b)? + own),
            None => Ok(own),
        }
    }

    pub fn sym_qt(&self, id: &str) -> Result<SymExpr<QTPoly>> {
        let f = self.get(id).ok_or_else(|| Self::missing(id))?;
        match &f.payload {
            Payload::SymQT(s) => Ok(s.clone()),
            Payload::Sym(s) => Ok(s.map_coeffs(|c| QTPoly::constant(*c))),
            _ => Err(Error::Unsupported(format!("fixture {id} is not a symmetric function"))),
        }
    }

    /// The full tensor value: increments summed along `base`, `e_k^⊥ A` terms expanded.
    pub fn tensor(&self, id: &str) -> Result<TensorExpr> {
        let f = self.get(id).ok_or_else(|| Self::missing(id))?;
        let own = match &f.payload {
            Payload::Tensor(t) => t.clone(),
            Payload::TensorPerp { tensor, perp, alternant } => {
                let a = match alternant {
                    Some(aid) => self.sym(aid)?,
                    None => {
                        let n = f.n.ok_or_else(|| parse_err(id, "tensor_perp without n or alternant"))?;
                        tensor.with_right_basis(RightBasis::Schur).left_coefficient(&Partition::column(n))
                    }
                };
                let mut out = tensor.clone();
                for (k, nu) in perp {
                    out = &out + &TensorExpr::tensor(&e_perp(*k, &a), tensor.right_basis(), nu);
                }
                out
            }
            _ => return Err(Error::Unsupported(format!("fixture {id} is not a tensor"))),
        };
        match &f.base {
            Some(b) => Ok(&self.tensor(b)? + &own),
            None => Ok(own),
        }
    }

    /// Record ids of a given kind whose id starts with `prefix`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Fixture> + 'a {
        self.fixtures.values().filter(move |f| f.id.starts_with(prefix))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::p;

    #[test]
    fn builtin_parses_and_round_trips() {
        let set = FixtureSet::builtin().unwrap();
        assert!(set.len() > 60);
        for f in set.iter() {
            assert_eq!(Fixture::from_json(&f.to_json()).unwrap(), *f, "{}", f.id);
        }
        for f in set.iter() {
            if let Some(b) = &f.base {
                assert!(set.get(b).is_some(), "{} refers to {b}", f.id);
            }
        }
    }

    #[test]
    fn resolution() {
        let set = FixtureSet::builtin().unwrap();
        assert_eq!(set.sym("A.42").unwrap(), SymExpr::s(&[6]) + SymExpr::s(&[4, 1]) + SymExpr::s(&[2, 2]));
        let e = set.tensor("Ebar.211").unwrap();
        assert_eq!(e.coeff(&p(&[1]), &p(&[1, 1, 1])), 1);
        assert_eq!(e.coeff(&p(&[4]), &p(&[])), 1);
        let e5 = set.tensor("E.321.n5").unwrap();
        // A = s6 + s41 + s31 + s111, so e_3^⊥ A = 1 and e_1^⊥ A = s5 + s4 + s31 + s3 + s21 + s11.
        assert_eq!(e5.left_coefficient(&p(&[4, 1])), SymExpr::one());
        assert_eq!(e5.left_coefficient(&p(&[2, 1, 1, 1])), SymExpr::parse("s[5] + s[4] + s[3,1] + s[3] + s[2,1] + s[1,1]").unwrap());
        let f = set.tensor("F.4321").unwrap();
        assert_eq!(f.right_basis(), RightBasis::Elementary);
        assert_eq!(f.left_coefficient(&p(&[1, 1, 1, 1])), SymExpr::one());
        let w = set.sym_qt("W.411").unwrap();
        assert_eq!(w.coeff(&p(&[2, 2, 2])), QTPoly::parse("q^3").unwrap());
        let Payload::KPoly(terms) = &set.get("principal.321").unwrap().payload else { panic!() };
        assert_eq!(terms[0].eval(2), Some(14));
        assert_eq!(terms[1].eval(2), Some(21));
        assert_eq!(terms.iter().map(|t| t.eval(1).unwrap()).sum::<i64>(), 14);
        assert_eq!(set.sym("A.0").unwrap(), SymExpr::one());
        assert_eq!(set.tensor("nabla.s21").unwrap().coeff(&p(&[2, 1]), &p(&[2, 1])), -1);
        assert_eq!(crate::symfunc::Basis::Schur, set.sym("A.1").unwrap().basis());
    }
}

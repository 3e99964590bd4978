//! JSON file formats: `family.json`, `chain.json`, `gridfn.json`, grid sets
//! and counterexample bundles.

use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::{Construction, CounterexampleBundle, Measured, RademacherBundle};
use crate::dyadic::{parse_rational, DyadicRational};
use crate::error::{Error, Result};
use crate::grid::{GridFunction, GridSet, GridSpec};
use crate::limits::Limits;
use crate::rect::{DyadicRectangle, RectangleFamily, StrictChain};

/// Index convention for Rademacher products, recorded in every bundle.
pub const RADEMACHER_CONVENTION: &str = "theta digits j = 0..k on every axis";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFile {
    pub dim: usize,
    pub rects: Vec<Vec<u32>>,
}

impl FamilyFile {
    pub fn from_family(f: &RectangleFamily) -> Self {
        Self { dim: f.dim(), rects: f.iter().map(|r| r.exponents().to_vec()).collect() }
    }

    pub fn to_family(&self, limits: &Limits) -> Result<RectangleFamily> {
        let rects = self
            .rects
            .iter()
            .map(|e| {
                if e.len() != self.dim {
                    return Err(Error::DimensionMismatch { expected: self.dim, found: e.len() });
                }
                DyadicRectangle::with_limits(e.clone(), limits)
            })
            .collect::<Result<Vec<_>>>()?;
        RectangleFamily::new(self.dim, rects)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFile {
    pub dim: usize,
    pub chain: Vec<Vec<u32>>,
}

impl ChainFile {
    pub fn from_chain(c: &StrictChain) -> Self {
        Self { dim: c.dim(), chain: c.rects().iter().map(|r| r.exponents().to_vec()).collect() }
    }

    /// Strictness is validated here.
    pub fn to_chain(&self, limits: &Limits) -> Result<StrictChain> {
        let rects = self
            .chain
            .iter()
            .map(|e| {
                if e.len() != self.dim {
                    return Err(Error::DimensionMismatch { expected: self.dim, found: e.len() });
                }
                DyadicRectangle::with_limits(e.clone(), limits)
            })
            .collect::<Result<Vec<_>>>()?;
        StrictChain::new(rects)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridFunctionFile {
    pub q: Vec<u32>,
    pub values: Vec<DyadicRational>,
}

impl GridFunctionFile {
    pub fn from_function(f: &GridFunction) -> Self {
        Self { q: f.spec().resolutions().to_vec(), values: f.values() }
    }

    pub fn to_function(&self, limits: &Limits) -> Result<GridFunction> {
        let spec = GridSpec::with_limits(self.q.clone(), limits)?;
        GridFunction::from_values(&spec, &self.values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSetFile {
    pub q: Vec<u32>,
    /// Little-endian bitset, base64.
    pub bits: String,
}

impl GridSetFile {
    pub fn from_set(s: &GridSet) -> Self {
        Self { q: s.spec().resolutions().to_vec(), bits: s.to_base64() }
    }

    pub fn to_set(&self, limits: &Limits) -> Result<GridSet> {
        GridSet::from_base64(&GridSpec::with_limits(self.q.clone(), limits)?, &self.bits)
    }
}

/// Measured constants as stored; rationals are `a/b` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasuredFile {
    pub theta: DyadicRational,
    pub y: DyadicRational,
    pub min_m: DyadicRational,
    pub witness: usize,
    pub a: Option<String>,
    pub c_prime: DyadicRational,
}

impl MeasuredFile {
    pub fn from_measured(m: &Measured) -> Self {
        Self {
            theta: m.theta.clone(),
            y: m.y.clone(),
            min_m: m.min_m.clone(),
            witness: m.witness,
            a: m.a.as_ref().map(ToString::to_string),
            c_prime: m.c_prime.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleFile {
    pub construction: Construction,
    pub convention: String,
    pub n: usize,
    pub k: u32,
    pub d: u32,
    pub params: BTreeMap<String, Value>,
    pub family: FamilyFile,
    pub q: Vec<u32>,
    pub theta: String,
    pub y: String,
    pub claimed_c: String,
    pub claimed_c_prime: String,
    pub measured: MeasuredFile,
}

impl BundleFile {
    pub fn new(bundle: &CounterexampleBundle, measured: &Measured) -> Self {
        let convention = match bundle.construction {
            Construction::Rademacher => RADEMACHER_CONVENTION,
            Construction::Lemma1 => "theta = intersection, Y = union of the hyperbolic family",
            Construction::Cylinder => "lemma1 bundle in dimension n-1 times [0,1]",
        };
        Self {
            construction: bundle.construction,
            convention: convention.into(),
            n: bundle.n,
            k: bundle.k,
            d: bundle.d,
            params: BTreeMap::new(),
            family: FamilyFile::from_family(&bundle.family),
            q: bundle.spec.resolutions().to_vec(),
            theta: bundle.theta.to_base64(),
            y: bundle.y.to_base64(),
            claimed_c: bundle.claimed_c.to_string(),
            claimed_c_prime: bundle.claimed_c_prime.to_string(),
            measured: MeasuredFile::from_measured(measured),
        }
    }

    pub fn from_rademacher(rb: &RademacherBundle, measured: &Measured) -> Self {
        let mut file = Self::new(&rb.bundle, measured);
        file.params.insert("p".into(), rb.p.into());
        file.params.insert("chain".into(), serde_json::to_value(ChainFile::from_chain(&rb.chain)).expect("plain data"));
        file
    }

    pub fn to_bundle(&self, limits: &Limits) -> Result<CounterexampleBundle> {
        let spec = GridSpec::with_limits(self.q.clone(), limits)?;
        let family = self.family.to_family(limits)?;
        Ok(CounterexampleBundle {
            construction: self.construction,
            family,
            theta: GridSet::from_base64(&spec, &self.theta)?,
            y: GridSet::from_base64(&spec, &self.y)?,
            spec,
            n: self.n,
            k: self.k,
            d: self.d,
            claimed_c: rational(&self.claimed_c)?,
            claimed_c_prime: rational(&self.claimed_c_prime)?,
        })
    }
}

fn rational(s: &str) -> Result<BigRational> {
    parse_rational(s)
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// `family.json`, `chain.json` (validated, then read as a family), or any
/// object with a `family` field holding one (a bundle).
pub fn read_family(path: &Path, limits: &Limits) -> Result<RectangleFamily> {
    let v: Value = read_json(path)?;
    if let Some(f) = v.get("family") {
        return serde_json::from_value::<FamilyFile>(f.clone())?.to_family(limits);
    }
    if v.get("rects").is_none() && v.get("chain").is_some() {
        return Ok(serde_json::from_value::<ChainFile>(v)?.to_chain(limits)?.to_family());
    }
    serde_json::from_value::<FamilyFile>(v)?.to_family(limits)
}

pub fn read_chain(path: &Path, limits: &Limits) -> Result<StrictChain> {
    read_json::<ChainFile>(path)?.to_chain(limits)
}

pub fn read_function(path: &Path, limits: &Limits) -> Result<GridFunction> {
    read_json::<GridFunctionFile>(path)?.to_function(limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::lemma1_bundle;

    #[test]
    fn family_round_trip() {
        let f = RectangleFamily::from_exponents(2, &[vec![0, 1], vec![1, 0]]).unwrap();
        let text = to_json_string(&FamilyFile::from_family(&f));
        let back: FamilyFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_family(&Limits::default()).unwrap(), f);
        let bad = FamilyFile { dim: 2, rects: vec![vec![1]] };
        assert!(bad.to_family(&Limits::default()).is_err());
    }

    #[test]
    fn chain_strictness_on_load() {
        let ok = ChainFile { dim: 2, chain: vec![vec![3, 3], vec![2, 2], vec![1, 1]] };
        assert_eq!(ok.to_chain(&Limits::default()).unwrap().len(), 3);
        let loose = ChainFile { dim: 2, chain: vec![vec![3, 3], vec![2, 3]] };
        assert!(matches!(loose.to_chain(&Limits::default()), Err(Error::NotStrictChain(_))));
    }

    #[test]
    fn function_text_form() {
        let text = r#"{"q":[1],"values":["3/2^2","-1/2^0"]}"#;
        let f = serde_json::from_str::<GridFunctionFile>(text).unwrap().to_function(&Limits::default()).unwrap();
        assert_eq!(f.value(0), "3/4".parse().unwrap());
        assert_eq!(serde_json::to_string(&GridFunctionFile::from_function(&f)).unwrap(), r#"{"q":[1],"values":["3/2^2","-1/2^0"]}"#);
    }

    #[test]
    fn bundle_round_trip() {
        let b = lemma1_bundle(2, 2, &Limits::default()).unwrap();
        let m = b.measure().unwrap();
        let file = BundleFile::new(&b, &m);
        let back: BundleFile = serde_json::from_str(&to_json_string(&file)).unwrap();
        let b2 = back.to_bundle(&Limits::default()).unwrap();
        assert_eq!(b2.theta, b.theta);
        assert_eq!(b2.y, b.y);
        assert_eq!(b2.family, b.family);
        assert_eq!(b2.claimed_c, b.claimed_c);
        assert_eq!(b2.measure().unwrap(), m);
    }
}

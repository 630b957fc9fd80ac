use std::path::Path;

use num_rational::BigRational;
use rootlift::abelian::IntMatrix;
use rootlift::cmdata::{CMEmbeddingData, CmJson};
use rootlift::qforms::QForm;
use rootlift::rootdata::{self, BasedRootDatum, CentralQuotientData};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

/// Reads a file, or parses the argument itself when it looks like inline JSON.
pub fn json<T: DeserializeOwned>(arg: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with(['[', '{']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Json(format!("{arg}: {e}")))
}

pub fn group(name: &str) -> Result<BasedRootDatum, CliError> {
    if name.ends_with(".json") || name.trim_start().starts_with('{') {
        let rd: BasedRootDatum = json(name)?;
        rd.validate().map_err(|e| CliError::Input(e.to_string()))?;
        return Ok(rd);
    }
    rootdata::builtin(name).map_err(|e| CliError::Input(e.to_string()))
}

/// `gm` is the minimal extension; anything else is a JSON matrix X•(Z̃) → X•(Z_G) generators.
pub fn extension(rd: &BasedRootDatum, tilde: &str) -> Result<CentralQuotientData, CliError> {
    let cqd = if tilde == "gm" {
        rootdata::minimal_torus_extension(rd)
    } else {
        let m: IntMatrix = json(tilde)?;
        rootdata::central_quotient_data(rd, &m)
    };
    cqd.map_err(|e| CliError::Input(e.to_string()))
}

/// `cm:P`, `totally-real:D`, `imaginary:PxF` or a JSON file.
pub fn label_data(arg: &str) -> Result<CMEmbeddingData, CliError> {
    let bad = || CliError::Input(format!("cannot read label data {arg:?}"));
    let count = |s: &str| s.parse::<usize>().map_err(|_| bad());
    if let Some(p) = arg.strip_prefix("cm:") {
        return Ok(CMEmbeddingData::cm(count(p)?));
    }
    if let Some(d) = arg.strip_prefix("totally-real:") {
        return Ok(CMEmbeddingData::totally_real(count(d)?));
    }
    if let Some(rest) = arg.strip_prefix("imaginary:") {
        let (p, f) = rest.split_once('x').ok_or_else(bad)?;
        return Ok(CMEmbeddingData::general_imaginary(count(p)?, count(f)?));
    }
    let j: CmJson = json(arg)?;
    CMEmbeddingData::try_from(j).map_err(|e| CliError::Input(e.to_string()))
}

#[derive(Deserialize)]
struct Rationals(#[serde(with = "rootlift::serde_util::rat_vec")] Vec<BigRational>);

pub fn rationals(arg: &str) -> Result<Vec<BigRational>, CliError> {
    json::<Rationals>(arg).map(|r| r.0)
}

pub fn integers(arg: &str) -> Result<Vec<i64>, CliError> {
    json(arg)
}

pub fn qform(path: Option<&str>, builtin: Option<&str>, q_eta: i64) -> Result<QForm, CliError> {
    match (path, builtin) {
        (Some(p), _) => json(p),
        (None, Some("k3")) => Ok(QForm::k3_primitive(q_eta)),
        (None, Some("e8")) => Ok(QForm::e8()),
        (None, Some("u")) => Ok(QForm::hyperbolic()),
        (None, Some(other)) => Err(CliError::Input(format!("unknown built-in form {other:?} (k3, e8, u)"))),
        (None, None) => Err(CliError::Input("give a Gram matrix file or --builtin".into())),
    }
}

use std::path::Path;

use finlat_core::congruence::FiniteAlgebra;
use finlat_core::constructions::standard_lattice_with;
use finlat_core::format::{family_from_doc, parse_doc, JsonFormat};
use finlat_core::representation::{m3_base_rep, pairs_b2_rep, power_rep};
use finlat_core::{Budget, Error, FiniteLattice, Representation};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub source: String,
    pub sha256: String,
}

/// Raw text of an input plus its digest. `std:` names hash their own text.
pub struct Loaded {
    pub name: String,
    pub text: Option<String>,
    pub digest: InputDigest,
}

pub fn load(source: &str) -> CliResult<Loaded> {
    let (text, bytes) = if source.starts_with("std:") {
        (None, source.as_bytes().to_vec())
    } else {
        let bytes = std::fs::read(source).map_err(|e| CliError::Io {
            path: source.into(),
            source: e,
        })?;
        let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Input {
            input: source.into(),
            source: Error::Malformed("not UTF-8".into()),
        })?;
        (Some(text), bytes)
    };
    let name = Path::new(source.trim_start_matches("std:"))
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| source.to_string());
    Ok(Loaded {
        name,
        text,
        digest: InputDigest {
            source: source.to_string(),
            sha256: hex::encode(Sha256::digest(&bytes)),
        },
    })
}

fn tag(source: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| CliError::Input {
        input: source.to_string(),
        source: e,
    }
}

/// `name(arg)` -> `(name, Some(arg))`.
fn call(spec: &str) -> (&str, Option<&str>) {
    match spec.split_once('(') {
        Some((name, rest)) => (name, rest.strip_suffix(')')),
        None => (spec, None),
    }
}

fn number(source: &str, arg: Option<&str>) -> CliResult<usize> {
    arg.and_then(|a| a.trim().parse().ok())
        .ok_or_else(|| tag(source)(Error::InvalidParameter(format!("`{source}` needs a numeric argument"))))
}

pub fn lattice(loaded: &Loaded, budget: &Budget) -> CliResult<FiniteLattice> {
    let source = &loaded.digest.source;
    match &loaded.text {
        Some(text) => FiniteLattice::from_json(text).map_err(tag(source)),
        None => {
            let kind = source["std:".len()..].parse().map_err(tag(source))?;
            standard_lattice_with(kind, budget).map_err(tag(source))
        }
    }
}

pub fn representation(loaded: &Loaded, budget: &Budget) -> CliResult<Representation> {
    let source = &loaded.digest.source;
    match &loaded.text {
        Some(text) => Representation::from_json(text).map_err(tag(source)),
        None => match call(&source["std:".len()..]) {
            ("pairs", arg) => pairs_b2_rep(number(source, arg)?).map_err(tag(source)),
            ("m3-base", None) => Ok(m3_base_rep()),
            ("m3-power", arg) => power_rep(&m3_base_rep(), number(source, arg)?, budget).map_err(tag(source)),
            _ => Err(tag(source)(Error::InvalidParameter(format!(
                "unknown representation `{source}`"
            )))),
        },
    }
}

pub fn family(loaded: &Loaded) -> CliResult<Vec<Representation>> {
    let source = &loaded.digest.source;
    let text = loaded
        .text
        .as_deref()
        .ok_or_else(|| tag(source)(Error::InvalidParameter("families must be given as files".into())))?;
    family_from_doc(parse_doc(text).map_err(tag(source))?).map_err(tag(source))
}

pub fn algebra(loaded: &Loaded) -> CliResult<FiniteAlgebra> {
    let source = &loaded.digest.source;
    match &loaded.text {
        Some(text) => FiniteAlgebra::from_json(text).map_err(tag(source)),
        None => match call(&source["std:".len()..]) {
            ("z", arg) => match number(source, arg)? {
                0 => Err(tag(source)(Error::InvalidParameter("z(n) needs n >= 1".into()))),
                n => Ok(FiniteAlgebra::cyclic_group(n)),
            },
            ("klein", None) => FiniteAlgebra::cyclic_group(2)
                .product(&FiniteAlgebra::cyclic_group(2))
                .map_err(tag(source)),
            _ => Err(tag(source)(Error::InvalidParameter(format!(
                "unknown algebra `{source}`"
            )))),
        },
    }
}

pub fn parse<T: JsonFormat>(loaded: &Loaded) -> CliResult<T> {
    let source = &loaded.digest.source;
    let text = loaded
        .text
        .as_deref()
        .ok_or_else(|| tag(source)(Error::InvalidParameter(format!("no built-in named `{source}`"))))?;
    T::from_json(text).map_err(tag(source))
}

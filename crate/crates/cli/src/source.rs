//! Model specs and input files.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use polycompat::linalg::rational::parse_rational;
use polycompat::models;
use polycompat::tuples::ExactTuple;
use polycompat::{Polytope, Rational};
use serde_json::Value;

/// A model given as `name` or `name:args`, e.g. `birkhoff:3` or `polysimplex:2,3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSpec {
    Birkhoff(usize),
    Hypercube(usize),
    Simplex(usize),
    Polysimplex(Vec<usize>),
    Pyramid,
}

pub fn parse_usizes(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>().with_context(|| format!("not a nonnegative integer: {t:?}")))
        .collect()
}

pub fn parse_rationals(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .map(|t| parse_rational(t).ok_or_else(|| anyhow!("not a rational number: {t:?}")))
        .collect()
}

impl ModelSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let (name, args) = match text.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (text, None),
        };
        let one = || -> Result<usize> {
            let args = args.ok_or_else(|| anyhow!("model {name} needs a parameter, e.g. {name}:3"))?;
            match parse_usizes(args)?.as_slice() {
                [x] => Ok(*x),
                _ => bail!("model {name} takes exactly one parameter"),
            }
        };
        Ok(match name {
            "birkhoff" => ModelSpec::Birkhoff(one()?),
            "hypercube" => ModelSpec::Hypercube(one()?),
            "simplex" => ModelSpec::Simplex(one()?),
            "polysimplex" => {
                let args = args.ok_or_else(|| anyhow!("polysimplex needs factor sizes, e.g. polysimplex:2,3"))?;
                ModelSpec::Polysimplex(parse_usizes(args)?)
            }
            "pyramid" if args.is_none() => ModelSpec::Pyramid,
            "pyramid" => bail!("pyramid takes no parameter"),
            other => bail!("unknown model {other:?}; expected birkhoff, hypercube, simplex, polysimplex or pyramid"),
        })
    }

    pub fn build(&self) -> Result<Polytope> {
        Ok(match self {
            ModelSpec::Birkhoff(n) => models::birkhoff_body(*n)?,
            ModelSpec::Hypercube(g) => models::hypercube(*g)?,
            ModelSpec::Simplex(k) => models::simplex_pk(*k)?,
            ModelSpec::Polysimplex(ks) => models::polysimplex(ks)?,
            ModelSpec::Pyramid => models::pyramid()?,
        })
    }
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("{} is not valid JSON", path.display()))
}

/// Reads a polytope from an existing file, otherwise parses the text as a model spec.
/// Returns the polytope with both representations and a description of the source.
pub fn load_polytope(source: &str) -> Result<(Polytope, Value)> {
    let path = Path::new(source);
    let (p, origin) = if path.is_file() {
        let v = read_json(path)?;
        // Accept both a bare polytope and a report written by `build`.
        let body = v.pointer("/result/polytope").unwrap_or(&v);
        let p = Polytope::from_json(body).with_context(|| format!("invalid polytope in {source}"))?;
        (p, serde_json::json!({ "file": source }))
    } else {
        (ModelSpec::parse(source)?.build()?, serde_json::json!({ "model": source }))
    };
    let p = p.complete().context("cannot complete the polytope description")?;
    let hash = p.content_hash();
    let mut origin = origin;
    origin["label"] = Value::String(p.label().to_string());
    origin["content_hash"] = Value::String(hash);
    Ok((p, origin))
}

/// Reads a tuple file, or a built-in tuple fixture given as `fixture:NAME`.
pub fn load_tuple(source: &str) -> Result<(ExactTuple, Value)> {
    if let Some(name) = source.strip_prefix("fixture:") {
        let t = match models::fixture(name)? {
            models::Fixture::Pauli3(t) | models::Fixture::BlockPauli(t) => t,
            _ => bail!("fixture {name} is not a tuple"),
        };
        return Ok((t, serde_json::json!({ "fixture": name })));
    }
    let v = read_json(Path::new(source))?;
    let t = ExactTuple::from_json(&v).with_context(|| format!("invalid tuple in {source}"))?;
    let digest = polycompat::linalg::json::json_digest(&t.to_json());
    Ok((t, serde_json::json!({ "file": source, "content_hash": digest })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_parse() {
        assert_eq!(ModelSpec::parse("birkhoff:3").unwrap(), ModelSpec::Birkhoff(3));
        assert_eq!(ModelSpec::parse("polysimplex:2,3").unwrap(), ModelSpec::Polysimplex(vec![2, 3]));
        assert_eq!(ModelSpec::parse("pyramid").unwrap(), ModelSpec::Pyramid);
        assert!(ModelSpec::parse("birkhoff").is_err());
        assert!(ModelSpec::parse("pyramid:2").is_err());
        assert!(ModelSpec::parse("cube:2").is_err());
        assert!(ModelSpec::parse("hypercube:2,3").is_err());
    }

    #[test]
    fn rational_lists_parse() {
        let s = parse_rationals("2/5, 1/3,0.5").unwrap();
        assert_eq!(s, vec![polycompat::rat(2, 5), polycompat::rat(1, 3), polycompat::rat(1, 2)]);
        assert!(parse_rationals("x").is_err());
    }

    #[test]
    fn models_load_complete() {
        let (p, origin) = load_polytope("birkhoff:3").unwrap();
        assert_eq!(p.num_vertices(), Some(6));
        assert_eq!(p.num_facets(), Some(9));
        assert_eq!(origin["content_hash"], Value::String(p.content_hash()));
    }
}

//! Argument payloads. Every payload may be given inline, as `@path`, or as
//! `-` for stdin; JSON is recognized by a leading `{` or `[`.

use std::io::Read;

use anyhow::{bail, Context, Result};
use seqring::algebra::parse_rat;
use seqring::json::{
    EquationJson, GeneratorJson, OrbitStateJson, RegularFunctionJson, SubvarietyJson, SystemJson,
};
use seqring::{Equation, LinSystem, OrbitState, Rat, RegularFunction, Subvariety};

pub fn load(arg: &str) -> Result<String> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else if let Some(path) = arg.strip_prefix('@') {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    } else {
        Ok(arg.to_string())
    }
}

fn is_json(s: &str) -> bool {
    s.starts_with('{') || s.starts_with('[')
}

/// `{"order": n, "coeffs": [..]}`, a JSON array of coefficients, or
/// coefficients `h0;h1;...` separated by semicolons.
pub fn equation(arg: &str) -> Result<Equation> {
    let text = load(arg)?;
    let s = text.trim();
    Ok(if s.starts_with('{') {
        serde_json::from_str::<EquationJson>(s)?.to_equation()?
    } else if s.starts_with('[') {
        Equation::parse(&serde_json::from_str::<Vec<String>>(s)?)?
    } else {
        Equation::parse(&s.split(';').map(str::trim).collect::<Vec<_>>())?
    })
}

/// `{"n": n, "entries": [[..]]}`, a JSON array of rows, or rows separated by
/// `;` with entries separated by `,`.
pub fn system(arg: &str) -> Result<LinSystem> {
    let text = load(arg)?;
    let s = text.trim();
    Ok(if s.starts_with('{') {
        serde_json::from_str::<SystemJson>(s)?.to_system()?
    } else if s.starts_with('[') {
        LinSystem::parse(&serde_json::from_str::<Vec<Vec<String>>>(s)?)?
    } else {
        let rows: Vec<Vec<&str>> = s
            .split(';')
            .map(|r| r.split(',').map(str::trim).collect())
            .collect();
        LinSystem::parse(&rows)?
    })
}

/// The system given by exactly one of `--system` or `--equation` (as its
/// companion matrix).
pub fn system_or_equation(system_arg: Option<&str>, equation_arg: Option<&str>) -> Result<LinSystem> {
    match (system_arg, equation_arg) {
        (Some(s), None) => system(s),
        (None, Some(e)) => Ok(equation(e)?.companion_matrix()),
        _ => bail!("give exactly one of --system or --equation"),
    }
}

/// A JSON array of strings or integers, or rationals separated by commas or
/// whitespace.
pub fn rationals(arg: &str) -> Result<Vec<Rat>> {
    let text = load(arg)?;
    let s = text.trim();
    if s.starts_with('[') {
        let items: Vec<serde_json::Value> = serde_json::from_str(s)?;
        items
            .iter()
            .map(|v| match v {
                serde_json::Value::String(x) => Ok(parse_rat(x)?),
                serde_json::Value::Number(x) => Ok(parse_rat(&x.to_string())?),
                other => bail!("expected a rational, found {other}"),
            })
            .collect()
    } else {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| Ok(parse_rat(t)?))
            .collect()
    }
}

pub fn state(arg: &str) -> Result<OrbitState> {
    let text = load(arg)?;
    let s = text.trim();
    if !s.starts_with('{') {
        bail!("orbit state must be JSON: {{\"b\": b, \"B\": [[..]]}}");
    }
    Ok(serde_json::from_str::<OrbitStateJson>(s)?.to_state()?)
}

/// `{"generators": [..]}`, a JSON array of generators, or generators
/// separated by `;`.
pub fn subvariety(arg: &str, n: usize) -> Result<Subvariety> {
    let text = load(arg)?;
    let s = text.trim();
    Ok(if s.starts_with('{') {
        serde_json::from_str::<SubvarietyJson>(s)?.to_subvariety(n)?
    } else if s.starts_with('[') {
        let gens: Vec<GeneratorJson> = serde_json::from_str(s)?;
        Subvariety::new(gens.iter().map(|g| g.to_function(n)).collect::<Result<_, _>>()?)?
    } else {
        Subvariety::parse(&s.split(';').map(str::trim).collect::<Vec<_>>(), n)?
    })
}

/// `{"poly": .., "detPower": m}` or grammar text.
pub fn function(arg: &str, n: usize) -> Result<RegularFunction> {
    let text = load(arg)?;
    let s = text.trim();
    Ok(if is_json(s) {
        serde_json::from_str::<RegularFunctionJson>(s)?.to_function(n)?
    } else {
        RegularFunction::parse(s, n)?
    })
}

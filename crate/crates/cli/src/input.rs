//! Reading command arguments: inline JSON, files and shorthands.

use std::path::Path;

use mackeylab::cyclic::{free_module, permutation_module, trivial_module};
use mackeylab::group::{Group, Subgroup};
use mackeylab::gset::GSet;
use mackeylab::json::{parse_group, parse_mackey, parse_zmackey, GSetSpec, MapSpec};
use mackeylab::mackey::{burnside_mackey, fixed_point_mackey, MackeyFunctor};
use mackeylab::zhat::{burnside_truncation, inflate_to_zhat, ZMackeyTrunc};
use mackeylab::{CoeffRing, Error, ModuleMap, Result, Scalar};

/// The text of an argument: the file it names if one exists, else the argument itself.
pub fn text_of(arg: &str) -> Result<String> {
    let t = arg.trim();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(t.to_string());
    }
    if Path::new(t).is_file() {
        return std::fs::read_to_string(t).map_err(|e| Error::Parse(format!("{t}: {e}")));
    }
    Ok(t.to_string())
}

pub fn group(arg: &str) -> Result<Group> {
    parse_group(&text_of(arg)?)
}

pub fn ring(arg: &str) -> Result<CoeffRing> {
    arg.parse()
}

/// `burnside:<group>`, `fixed:<class>:<group>` or a Mackey functor in JSON.
pub fn mackey(arg: &str, ring: CoeffRing) -> Result<MackeyFunctor> {
    if let Some(g) = arg.strip_prefix("burnside:") {
        return Ok(burnside_mackey(&group(g)?, ring));
    }
    if let Some(rest) = arg.strip_prefix("fixed:") {
        let (h, g) = rest
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected fixed:<class>:<group>, got {arg:?}")))?;
        let g = group(g)?;
        let h = class_index(&g, h)?;
        return fixed_point_mackey(&g, h, ring);
    }
    parse_mackey(&text_of(arg)?)
}

/// `burnside`, `inflated:<group>` or a truncated profunctor in JSON.
pub fn zmackey(arg: &str, ring: CoeffRing, bound: u64) -> Result<ZMackeyTrunc> {
    if arg == "burnside" {
        return burnside_truncation(bound, ring);
    }
    if let Some(g) = arg.strip_prefix("inflated:") {
        return inflate_to_zhat(&burnside_mackey(&group(g)?, ring), bound);
    }
    parse_zmackey(&text_of(arg)?)
}

/// A class by label (`C2`), by index, or as the class of an element list (`0,2`).
pub fn class_index(g: &Group, arg: &str) -> Result<usize> {
    let t = arg.trim();
    if let Some(c) = g.class_labels().iter().position(|l| l == t) {
        return Ok(c);
    }
    if !t.contains(',') {
        if let Ok(c) = t.parse::<usize>() {
            if c < g.num_classes() {
                return Ok(c);
            }
        }
    }
    Ok(g.class_of(&subgroup(g, t)?))
}

/// A subgroup by class label (its representative) or by generating elements.
pub fn subgroup(g: &Group, arg: &str) -> Result<Subgroup> {
    let t = arg.trim().trim_start_matches('[').trim_end_matches(']');
    if let Some(c) = g.class_labels().iter().position(|l| l == t) {
        return Ok(g.class(c).rep.clone());
    }
    let elems = t
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad subgroup {arg:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if let Some(&x) = elems.iter().find(|&&x| x >= g.order()) {
        return Err(Error::Parse(format!("element {x} is not in {}", g.name())));
    }
    Ok(g.generate(&elems))
}

/// A G-set as a comma list of class labels (`G/C2` or `C2`, with `k*` multiplicities)
/// or as orbit-form JSON.
pub fn gset(g: &Group, arg: &str) -> Result<GSet> {
    let t = text_of(arg)?;
    if t.starts_with('{') {
        let spec: GSetSpec = serde_json::from_str(&t).map_err(|e| Error::Parse(e.to_string()))?;
        return spec.build(g);
    }
    let mut form = Vec::new();
    for part in t.split(['+', ',']).map(str::trim).filter(|s| !s.is_empty()) {
        let (k, name) = match part.split_once('*') {
            Some((k, n)) => (k.trim().parse().map_err(|_| Error::Parse(format!("bad multiplicity in {part:?}")))?, n),
            None => (1, part),
        };
        let name = name.trim();
        form.push((class_index(g, name.strip_prefix("G/").unwrap_or(name))?, k));
    }
    GSet::from_orbit_form(g, &form)
}

/// An element of the Burnside ring as class coefficients: `2*G/C2 - G/e` or `1,0,2`.
pub fn burnside_coeffs(g: &Group, arg: &str) -> Result<Vec<i64>> {
    let t = arg.trim();
    let k = g.num_classes();
    if t.chars().all(|c| c.is_ascii_digit() || c == ',' || c == '-' || c.is_whitespace()) && t.contains(',') {
        let v = t
            .split(',')
            .map(|s| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient in {arg:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if v.len() != k {
            return Err(Error::Parse(format!("expected {k} coefficients, found {}", v.len())));
        }
        return Ok(v);
    }
    let mut out = vec![0; k];
    let spaced = t.replace('-', "+-");
    for term in spaced.split('+').map(str::trim).filter(|s| !s.is_empty()) {
        let (neg, term) = match term.strip_prefix('-') {
            Some(r) => (true, r.trim()),
            None => (false, term),
        };
        let (c, name) = match term.split_once('*') {
            Some((c, n)) => (c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?, n.trim()),
            None => match term.parse::<i64>() {
                Ok(c) => (c, "G/G"),
                Err(_) => (1, term),
            },
        };
        let name = name.strip_prefix("G/").unwrap_or(name);
        let cls = class_index(g, name)?;
        out[cls] += if neg { -c } else { c };
    }
    Ok(out)
}

/// A `Z/n`-module given by its generator: `trivZ`, `sign`, `regular`, `free:<copies>`,
/// `perm:<image list>` or a map in JSON.
pub fn cyclic_module(arg: &str, n: u64, ring: CoeffRing) -> Result<ModuleMap> {
    let t = arg.trim();
    match t {
        "trivZ" | "trivial" => return Ok(trivial_module(ring)),
        "sign" => return Ok(trivial_module(ring).scale(Scalar::from(-1i64))),
        "regular" => return Ok(free_module(ring, n as usize, 1)),
        _ => {}
    }
    if let Some(k) = t.strip_prefix("free:") {
        let k = k.parse().map_err(|_| Error::Parse(format!("bad copy count in {t:?}")))?;
        return Ok(free_module(ring, n as usize, k));
    }
    if let Some(p) = t.strip_prefix("perm:") {
        let perm = p
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad permutation {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            if i >= perm.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parse(format!("{t:?} is not a permutation")));
            }
        }
        return Ok(permutation_module(ring, &perm));
    }
    let text = text_of(t)?;
    let spec: MapSpec = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    spec.build(ring)
}

/// Level lists such as `1` or `1,2,2`.
pub fn levels(arg: &str) -> Result<Vec<u64>> {
    arg.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad level list {arg:?}"))))
        .collect()
}

//! JSON schemas for groups, G-sets, modules, Mackey functors and truncated
//! Ẑ-Mackey profunctors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Group};
use crate::gset::GSet;
use crate::mackey::{MackeyFunctor, OrbitCategory, OrbitMap};
use crate::matrix::Matrix;
use crate::module::{FpModule, ModuleMap};
use crate::ring::CoeffRing;
use crate::scalar::Scalar;
use crate::zhat::{burnside_truncation, inflate_to_zhat, Tail, ZMackeyParts, ZMackeyTrunc};

fn parse_err<E: std::fmt::Display>(e: E) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    Table {
        mul: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Perm {
        degree: usize,
        gens: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<Group> {
        match self {
            GroupSpec::Cyclic { n } => FiniteGroup::cyclic(*n),
            GroupSpec::Table { mul, name } => FiniteGroup::from_table(name.as_deref().unwrap_or("G"), mul),
            GroupSpec::Perm { degree, gens, name } => {
                FiniteGroup::from_permutations(name.as_deref().unwrap_or("G"), *degree, gens)
            }
        }
    }

    pub fn of(group: &Group) -> GroupSpec {
        GroupSpec::Table { mul: group.table(), name: Some(group.name().to_string()) }
    }
}

/// A group from shorthand (`cyclic:4`, `S3`, `D8`, `Q8`, `V4`) or a JSON spec.
pub fn parse_group(s: &str) -> Result<Group> {
    let t = s.trim();
    if t.starts_with('{') {
        let spec: GroupSpec = serde_json::from_str(t).map_err(parse_err)?;
        return spec.build();
    }
    if let Some(n) = t.strip_prefix("cyclic:").or_else(|| t.strip_prefix("Z/")) {
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad cyclic order in {t:?}")))?;
        return FiniteGroup::cyclic(n);
    }
    match t {
        "trivial" | "e" => FiniteGroup::cyclic(1),
        "S3" => Ok(FiniteGroup::symmetric3()),
        "Q8" => Ok(FiniteGroup::quaternion8()),
        "V4" | "Z2xZ2" => Ok(FiniteGroup::klein4()),
        _ => {
            if let Some(k) = t.strip_prefix('D') {
                let k: usize = k.parse().map_err(|_| Error::Parse(format!("unknown group {t:?}")))?;
                if k < 2 || k % 2 == 1 {
                    return Err(Error::Parse(format!("dihedral groups have even order, got {t:?}")));
                }
                return FiniteGroup::dihedral(k / 2);
            }
            Err(Error::Parse(format!("unknown group {t:?}")))
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OrbitEntry {
    pub stabilizer: usize,
    pub count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GSetSpec {
    pub orbits: Vec<OrbitEntry>,
}

impl GSetSpec {
    pub fn build(&self, group: &Group) -> Result<GSet> {
        let form: Vec<(usize, usize)> = self.orbits.iter().map(|o| (o.stabilizer, o.count)).collect();
        GSet::from_orbit_form(group, &form)
    }

    pub fn of(s: &GSet) -> GSetSpec {
        GSetSpec {
            orbits: s.orbit_form().into_iter().map(|(stabilizer, count)| OrbitEntry { stabilizer, count }).collect(),
        }
    }
}

fn matrix_of(rows: &[Vec<Scalar>], nrows: usize, what: &str) -> Result<Matrix> {
    if rows.len() != nrows {
        return Err(Error::Parse(format!("{what}: expected {nrows} rows, found {}", rows.len())));
    }
    if nrows == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse(format!("{what}: ragged rows")));
    }
    Ok(Matrix::from_rows(rows))
}

fn sized(m: Matrix, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    if m.rows() == 0 && rows == 0 {
        return Ok(Matrix::zeros(0, cols));
    }
    if m.rows() != rows || m.cols() != cols {
        return Err(Error::Dimension(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    Ok(m)
}

/// `{"ring":"Z","gens":2,"relations":[[2,0],[0,3]]}`; relations are rows of the
/// generator-by-relation matrix.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<CoeffRing>,
    pub gens: usize,
    #[serde(default)]
    pub relations: Vec<Vec<Scalar>>,
}

impl ModuleSpec {
    pub fn build(&self, default_ring: CoeffRing) -> Result<FpModule> {
        let ring = self.ring.unwrap_or(default_ring);
        let rel = if self.relations.is_empty() {
            Matrix::zeros(self.gens, 0)
        } else {
            matrix_of(&self.relations, self.gens, "relations")?
        };
        FpModule::new(ring, self.gens, rel)
    }

    pub fn of(m: &FpModule, with_ring: bool) -> ModuleSpec {
        let rel = m.relations();
        ModuleSpec {
            ring: with_ring.then(|| m.ring()),
            gens: m.gens(),
            relations: if rel.cols() == 0 { vec![] } else { rel.to_rows() },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MapSpec {
    pub source: ModuleSpec,
    pub target: ModuleSpec,
    pub matrix: Vec<Vec<Scalar>>,
}

impl MapSpec {
    pub fn build(&self, default_ring: CoeffRing) -> Result<ModuleMap> {
        let s = self.source.build(default_ring)?;
        let t = self.target.build(default_ring)?;
        let m = sized(matrix_of(&self.matrix, t.gens(), "matrix")?, t.gens(), s.gens(), "matrix")?;
        ModuleMap::new(s, t, m)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct WeylEntry {
    pub element: usize,
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassEntry {
    pub module: ModuleSpec,
    #[serde(default)]
    pub weyl: Vec<WeylEntry>,
}

/// A restriction or transfer along `G/K_from → G/K_to`, `eK ↦ witness·K_to`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EdgeEntry {
    pub from: usize,
    pub to: usize,
    #[serde(default)]
    pub witness: usize,
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MackeySpec {
    pub group: GroupSpec,
    pub ring: CoeffRing,
    pub classes: Vec<ClassEntry>,
    #[serde(default)]
    pub res: Vec<EdgeEntry>,
    #[serde(default)]
    pub tr: Vec<EdgeEntry>,
}

impl MackeySpec {
    /// Builds the functor, filling the remaining maps by composition.
    pub fn build(&self) -> Result<MackeyFunctor> {
        let group = self.group.build()?;
        let oc = OrbitCategory::of(&group);
        let k = group.num_classes();
        if self.classes.len() != k {
            return Err(Error::Dimension(format!("{} class entries for {k} subgroup classes", self.classes.len())));
        }
        let values: Vec<FpModule> =
            self.classes.iter().map(|c| c.module.build(self.ring)).collect::<Result<_>>()?;
        let mut push: Vec<Option<Matrix>> = vec![None; oc.len()];
        let mut pull: Vec<Option<Matrix>> = vec![None; oc.len()];
        let edge = |from: usize, to: usize, g: usize| -> Result<usize> {
            if from >= k || to >= k || g >= group.order() {
                return Err(Error::Parse(format!("edge ({from}, {to}, {g}) is out of range")));
            }
            let point = group.cosets(to).coset_of[g];
            oc.id_of(&OrbitMap { src: from, dst: to, point }).ok_or_else(|| {
                Error::Precondition(format!("no map G/K{from} -> G/K{to} through element {g}"))
            })
        };
        for c in 0..k {
            let id = oc.identity(c);
            push[id] = Some(Matrix::identity(values[c].gens()));
            pull[id] = Some(Matrix::identity(values[c].gens()));
            let n = values[c].gens();
            for w in &self.classes[c].weyl {
                let a = edge(c, c, w.element)?;
                let m = sized(matrix_of(&w.matrix, n, "weyl matrix")?, n, n, "weyl matrix")?;
                let inv = edge(c, c, group.inv(w.element))?;
                pull[inv] = Some(m.clone());
                push[a] = Some(m);
            }
        }
        for (entries, is_push) in [(&self.res, false), (&self.tr, true)] {
            for e in entries {
                let id = edge(e.from, e.to, e.witness)?;
                let (s, t) = (values[e.from].gens(), values[e.to].gens());
                let (r, c) = if is_push { (t, s) } else { (s, t) };
                let m = sized(matrix_of(&e.matrix, r, "edge matrix")?, r, c, "edge matrix")?;
                if is_push {
                    push[id] = Some(m);
                } else {
                    pull[id] = Some(m);
                }
            }
        }
        loop {
            let mut changed = false;
            for a in 0..oc.len() {
                for b in 0..oc.len() {
                    if oc.map(b).src != oc.map(a).dst {
                        continue;
                    }
                    let ab = oc.compose(&group, a, b);
                    if push[ab].is_none() {
                        if let (Some(x), Some(y)) = (&push[a], &push[b]) {
                            push[ab] = Some(y.mul(x));
                            changed = true;
                        }
                    }
                    if pull[ab].is_none() {
                        if let (Some(x), Some(y)) = (&pull[a], &pull[b]) {
                            pull[ab] = Some(x.mul(y));
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let missing: Vec<String> = (0..oc.len())
            .filter(|&i| push[i].is_none() || pull[i].is_none())
            .map(|i| format!("{:?}", oc.map(i)))
            .collect();
        if !missing.is_empty() {
            return Err(Error::Precondition(format!("data does not determine the maps {}", missing.join(", "))));
        }
        MackeyFunctor::from_parts(
            &group,
            self.ring,
            values,
            push.into_iter().map(Option::unwrap).collect(),
            pull.into_iter().map(Option::unwrap).collect(),
        )
    }

    /// Every map of the orbit category, as conjugations, restrictions and transfers.
    pub fn of(m: &MackeyFunctor) -> MackeySpec {
        let group = m.group();
        let oc = OrbitCategory::of(group);
        let mut classes: Vec<ClassEntry> = m
            .values()
            .iter()
            .map(|v| ClassEntry { module: ModuleSpec::of(v, false), weyl: vec![] })
            .collect();
        let (mut res, mut tr) = (Vec::new(), Vec::new());
        for id in 0..oc.len() {
            let om = oc.map(id);
            let witness = group.cosets(om.dst).reps[om.point];
            if om.src == om.dst {
                if om.point != 0 {
                    classes[om.src].weyl.push(WeylEntry { element: witness, matrix: m.push_matrix(id).to_rows() });
                }
                continue;
            }
            res.push(EdgeEntry { from: om.src, to: om.dst, witness, matrix: m.pull_matrix(id).to_rows() });
            tr.push(EdgeEntry { from: om.src, to: om.dst, witness, matrix: m.push_matrix(id).to_rows() });
        }
        MackeySpec { group: GroupSpec::of(group), ring: m.ring(), classes, res, tr }
    }
}

pub fn parse_mackey(s: &str) -> Result<MackeyFunctor> {
    let spec: MackeySpec = serde_json::from_str(s).map_err(parse_err)?;
    spec.build()
}

pub fn parse_module(s: &str) -> Result<FpModule> {
    let spec: ModuleSpec = serde_json::from_str(s).map_err(parse_err)?;
    spec.build(CoeffRing::Integers)
}

pub fn parse_map(s: &str) -> Result<ModuleMap> {
    let spec: MapSpec = serde_json::from_str(s).map_err(parse_err)?;
    spec.build(CoeffRing::Integers)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LevelEntry {
    pub level: u64,
    pub module: ModuleSpec,
    /// Matrix of `σ_l`; the identity when omitted.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sigma: Vec<Vec<Scalar>>,
}

/// `v_{from,to}` or `f_{from,to}` for `to | from`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct LevelEdge {
    pub from: u64,
    pub to: u64,
    pub matrix: Vec<Vec<Scalar>>,
}

/// A truncated Ẑ-Mackey profunctor: the Burnside truncation, the inflation
/// of a Mackey functor over a cyclic group, or explicit level data.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ZMackeySpec {
    Burnside {
        bound: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ring: Option<CoeffRing>,
    },
    Inflated {
        bound: u64,
        mackey: MackeySpec,
    },
    Explicit {
        ring: CoeffRing,
        tail: Tail,
        levels: Vec<LevelEntry>,
        #[serde(default)]
        v: Vec<LevelEdge>,
        #[serde(default)]
        f: Vec<LevelEdge>,
    },
}

impl ZMackeySpec {
    pub fn build(&self) -> Result<ZMackeyTrunc> {
        match self {
            ZMackeySpec::Burnside { bound, ring } => burnside_truncation(*bound, ring.unwrap_or(CoeffRing::Integers)),
            ZMackeySpec::Inflated { bound, mackey } => inflate_to_zhat(&mackey.build()?, *bound),
            ZMackeySpec::Explicit { ring, tail, levels, v, f } => {
                let mut parts = ZMackeyParts {
                    ring: *ring,
                    levels: levels.iter().map(|e| e.level).collect(),
                    tail: *tail,
                    values: Default::default(),
                    sigma: Default::default(),
                    v: Default::default(),
                    f: Default::default(),
                };
                for e in levels {
                    let m = e.module.build(*ring)?;
                    if !e.sigma.is_empty() {
                        let s = matrix_of(&e.sigma, m.gens(), "sigma")?;
                        parts.sigma.insert(e.level, sized(s, m.gens(), m.gens(), "sigma")?);
                    }
                    parts.values.insert(e.level, m);
                }
                let gens = |l: u64| -> Result<usize> {
                    parts.values.get(&l).map(FpModule::gens).ok_or(Error::OutsideTruncation(l))
                };
                let mut vs = Vec::new();
                let mut fs = Vec::new();
                for e in v {
                    let (a, b) = (gens(e.from)?, gens(e.to)?);
                    vs.push(((e.from, e.to), sized(matrix_of(&e.matrix, b, "v")?, b, a, "v")?));
                }
                for e in f {
                    let (a, b) = (gens(e.from)?, gens(e.to)?);
                    fs.push(((e.from, e.to), sized(matrix_of(&e.matrix, a, "f")?, a, b, "f")?));
                }
                parts.v.extend(vs);
                parts.f.extend(fs);
                ZMackeyTrunc::from_parts(parts)
            }
        }
    }

    /// Explicit data listing every map.
    pub fn of(m: &ZMackeyTrunc) -> ZMackeySpec {
        let p = m.to_parts();
        let edges = |maps: &std::collections::BTreeMap<(u64, u64), Matrix>| {
            maps.iter().map(|(&(from, to), x)| LevelEdge { from, to, matrix: x.to_rows() }).collect()
        };
        ZMackeySpec::Explicit {
            ring: p.ring,
            tail: p.tail,
            levels: p
                .levels
                .iter()
                .map(|l| LevelEntry {
                    level: *l,
                    module: ModuleSpec::of(&p.values[l], false),
                    sigma: p.sigma[l].to_rows(),
                })
                .collect(),
            v: edges(&p.v),
            f: edges(&p.f),
        }
    }
}

pub fn parse_zmackey(s: &str) -> Result<ZMackeyTrunc> {
    let spec: ZMackeySpec = serde_json::from_str(s).map_err(parse_err)?;
    spec.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::burnside_mackey;

    #[test]
    fn group_shorthands() {
        assert_eq!(parse_group("cyclic:4").unwrap().order(), 4);
        assert_eq!(parse_group("D8").unwrap().order(), 8);
        assert_eq!(parse_group("S3").unwrap().order(), 6);
        assert_eq!(parse_group(r#"{"kind":"perm","degree":3,"gens":[[1,0,2],[1,2,0]]}"#).unwrap().order(), 6);
        assert_eq!(parse_group(r#"{"kind":"perm","degree":3,"gens":[]}"#).unwrap().order(), 1);
        assert!(matches!(parse_group("D7"), Err(Error::Parse(_))));
        assert!(matches!(parse_group("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn module_specs() {
        let m = parse_module(r#"{"ring":"Z","gens":2,"relations":[[2,0],[0,3]]}"#).unwrap();
        assert_eq!(m.to_string(), "Z/6");
        let f = parse_map(r#"{"source":{"gens":1},"target":{"gens":1},"matrix":[[2]]}"#).unwrap();
        assert_eq!(f.cokernel().0.to_string(), "Z/2");
    }

    #[test]
    fn mackey_round_trip() {
        for g in ["cyclic:4", "S3"] {
            let a = burnside_mackey(&parse_group(g).unwrap(), CoeffRing::Integers);
            let text = serde_json::to_string(&MackeySpec::of(&a)).unwrap();
            let b = parse_mackey(&text).unwrap();
            for id in 0..OrbitCategory::of(a.group()).len() {
                assert_eq!(a.push_matrix(id), b.push_matrix(id));
                assert_eq!(a.pull_matrix(id), b.pull_matrix(id));
            }
        }
    }

    #[test]
    fn generating_data_is_closed_under_composition() {
        // A for Z/2: only res and tr between e and G are given.
        let text = r#"{"group":{"kind":"cyclic","n":2},"ring":"Z",
            "classes":[{"module":{"gens":1},"weyl":[{"element":1,"matrix":[[1]]}]},{"module":{"gens":2}}],
            "res":[{"from":0,"to":1,"matrix":[[2,1]]}],
            "tr":[{"from":0,"to":1,"matrix":[[1],[0]]}]}"#;
        let m = parse_mackey(text).unwrap();
        assert!(m.check_axioms().unwrap().passed());
        let missing = r#"{"group":{"kind":"cyclic","n":2},"ring":"Z",
            "classes":[{"module":{"gens":1}},{"module":{"gens":1}}]}"#;
        assert!(matches!(parse_mackey(missing), Err(Error::Precondition(_))));
    }

    #[test]
    fn zmackey_round_trip() {
        let a = burnside_truncation(6, CoeffRing::Integers).unwrap();
        let text = serde_json::to_string(&ZMackeySpec::of(&a)).unwrap();
        let b = parse_zmackey(&text).unwrap();
        assert_eq!(a.levels(), b.levels());
        for (x, y) in a.pairs() {
            assert_eq!(a.v(x, y).unwrap().matrix(), b.v(x, y).unwrap().matrix());
            assert_eq!(a.f(x, y).unwrap().matrix(), b.f(x, y).unwrap().matrix());
        }
        let short = parse_zmackey(r#"{"kind":"burnside","bound":4}"#).unwrap();
        assert!(short.check().passed());
    }
}

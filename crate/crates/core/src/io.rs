//! JSON file formats for systems, representations, deformations,
//! Nijenhuis candidates and trilinear maps. Emission is deterministic:
//! entries are sorted and only nonzero coefficients are written.

use std::fmt;
use std::path::{Path, PathBuf};

use num_traits::Zero;
use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::Representation;
use crate::deformation::FormalDeformation;
use crate::error::{Error, Result};
use crate::hom::HomMap;
use crate::linalg::rational::{format, parse};
use crate::linalg::{Matrix, Rational};
use crate::system::{Delta, SuperSpace, TripleSystem};
use crate::tensor::MultiLinearMap;

/// `{"l": "p/q", …}` keyed by output index (or basis name), kept in file
/// order so duplicate keys can be rejected.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Coefficients(pub Vec<(String, String)>);

impl Serialize for Coefficients {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Coefficients {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Coefficients;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from output index to rational string")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Coefficients, A::Error> {
                let mut out: Vec<(String, String)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, RationalLiteral>()? {
                    if out.iter().any(|(q, _)| *q == k) {
                        return Err(serde::de::Error::custom(format!("duplicate output key {k:?}")));
                    }
                    out.push((k, v.0));
                }
                Ok(Coefficients(out))
            }
        }
        d.deserialize_map(V)
    }
}

/// Accepts `"p/q"` strings and bare integers.
struct RationalLiteral(String);

impl<'de> Deserialize<'de> for RationalLiteral {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Lit {
            S(String),
            I(i64),
        }
        Ok(RationalLiteral(match Lit::deserialize(d)? {
            Lit::S(s) => s,
            Lit::I(i) => i.to_string(),
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrilinearEntry {
    pub args: [usize; 3],
    pub value: Coefficients,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub name: String,
    pub delta: i64,
    pub parity: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<TrilinearEntry>,
}

fn output_index(key: &str, n: usize, names: Option<&[String]>) -> Result<usize> {
    if let Ok(i) = key.trim().parse::<usize>() {
        return if i < n { Ok(i) } else { Err(Error::IndexOutOfRange { index: i, dim: n }) };
    }
    names
        .and_then(|ns| ns.iter().position(|s| s == key))
        .ok_or_else(|| Error::Malformed(format!("unknown output key {key:?}")))
}

/// Assembles a dense trilinear tensor, rejecting duplicate `(i,j,k,l)`.
pub fn assemble_trilinear(n: usize, entries: &[TrilinearEntry], names: Option<&[String]>) -> Result<MultiLinearMap> {
    let mut map = MultiLinearMap::zeros(3, n, n);
    let mut seen = vec![false; n.pow(4)];
    for e in entries {
        for &i in &e.args {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, dim: n });
            }
        }
        for (k, v) in &e.value.0 {
            let l = output_index(k, n, names)?;
            let slot = ((e.args[0] * n + e.args[1]) * n + e.args[2]) * n + l;
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::DuplicateEntry(format!("args {:?}, output {l}", e.args)));
            }
            map.value_mut(&e.args)[l] = parse(v)?;
        }
    }
    Ok(map)
}

/// Sparse entries of a trilinear tensor, sorted by arguments then output.
pub fn trilinear_entries(map: &MultiLinearMap) -> Vec<TrilinearEntry> {
    let n = map.in_dim();
    let mut out = Vec::new();
    for ti in 0..map.num_tuples() {
        let v = map.value_at(ti);
        let value: Vec<(String, String)> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(l, c)| (l.to_string(), format(c))).collect();
        if !value.is_empty() {
            let args = crate::tensor::decode_tuple(ti, 3, n);
            out.push(TrilinearEntry { args: [args[0], args[1], args[2]], value: Coefficients(value) });
        }
    }
    out
}

impl SystemFile {
    pub fn into_system(self) -> Result<TripleSystem> {
        let delta = match self.delta {
            1 => Delta::Plus,
            -1 => Delta::Minus,
            d => return Err(Error::InvalidDelta(d)),
        };
        let space = SuperSpace::new(self.parity)?;
        let n = space.dim();
        if let Some(b) = &self.basis {
            if b.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: b.len() });
            }
        }
        let bracket = assemble_trilinear(n, &self.brackets, self.basis.as_deref())?;
        let t = TripleSystem::new(self.name, space, delta, bracket)?;
        match self.basis {
            Some(b) => t.with_basis_names(b),
            None => Ok(t),
        }
    }

    pub fn from_system(t: &TripleSystem) -> Self {
        Self {
            name: t.name().to_string(),
            delta: t.delta().as_i64(),
            parity: t.space().parities().to_vec(),
            basis: t.basis_names().map(<[String]>::to_vec),
            brackets: trilinear_entries(t.structure_constants()),
        }
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn system_from_json(s: &str) -> Result<TripleSystem> {
    from_json::<SystemFile>(s)?.into_system()
}

pub fn system_to_json(t: &TripleSystem) -> String {
    to_json(&SystemFile::from_system(t))
}

pub fn load_system(path: impl AsRef<Path>) -> Result<TripleSystem> {
    system_from_json(&read(path.as_ref())?)
}

pub fn save_system(t: &TripleSystem, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, system_to_json(t)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

type MatrixLiteral = Vec<Vec<String>>;

fn matrix_from_literal(rows: &MatrixLiteral, n: usize) -> Result<Matrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, found: rows.len() });
    }
    let data = rows.iter().flatten().map(|s| parse(s)).collect::<Result<Vec<_>>>()?;
    Matrix::from_vec(n, n, data)
}

fn matrix_to_literal(m: &Matrix) -> MatrixLiteral {
    m.iter_rows().map(|r| r.iter().map(format).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaEntry {
    pub args: [usize; 2],
    /// Row-major; column `j` is the image of the module basis vector `j`.
    pub matrix: MatrixLiteral,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub module_parity: Vec<u8>,
    #[serde(default)]
    pub theta: Vec<ThetaEntry>,
}

pub fn representation_from_json(t: &TripleSystem, s: &str) -> Result<Representation> {
    let file: RepresentationFile = from_json(s)?;
    let module = SuperSpace::new(file.module_parity)?;
    let (n, m) = (t.dim(), module.dim());
    let mut theta: Vec<Option<Matrix>> = vec![None; n * n];
    for e in &file.theta {
        for &i in &e.args {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, dim: n });
            }
        }
        let slot = &mut theta[e.args[0] * n + e.args[1]];
        if slot.is_some() {
            return Err(Error::DuplicateEntry(format!("theta{:?}", e.args)));
        }
        *slot = Some(matrix_from_literal(&e.matrix, m)?);
    }
    let theta = theta.into_iter().map(|o| o.unwrap_or_else(|| Matrix::zeros(m, m))).collect();
    Representation::new(t, module, theta)
}

pub fn representation_to_json(rep: &Representation) -> String {
    let n = rep.t_dim();
    let theta = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !rep.theta(i, j).is_zero())
        .map(|(i, j)| ThetaEntry { args: [i, j], matrix: matrix_to_literal(rep.theta(i, j)) })
        .collect();
    to_json(&RepresentationFile { module_parity: rep.module().parities().to_vec(), theta })
}

pub fn load_representation(t: &TripleSystem, path: impl AsRef<Path>) -> Result<Representation> {
    representation_from_json(t, &read(path.as_ref())?)
}

/// A system given inline or as a path relative to the referring file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemRef {
    Path(String),
    Inline(SystemFile),
}

impl SystemRef {
    fn resolve(self, base: Option<&Path>) -> Result<TripleSystem> {
        match self {
            SystemRef::Inline(f) => f.into_system(),
            SystemRef::Path(p) => {
                let p = PathBuf::from(p);
                let full = match base {
                    Some(b) if p.is_relative() => b.join(p),
                    _ => p,
                };
                load_system(full)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationTerm {
    pub order: usize,
    #[serde(default)]
    pub values: Vec<TrilinearEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    pub system: SystemRef,
    #[serde(default)]
    pub terms: Vec<DeformationTerm>,
}

/// Orders must be ≥ 1 and distinct; missing orders up to the largest one
/// are zero.
pub fn deformation_from_json(s: &str, base_dir: Option<&Path>) -> Result<FormalDeformation> {
    let file: DeformationFile = from_json(s)?;
    let t = file.system.resolve(base_dir)?;
    let n = t.dim();
    let top = file.terms.iter().map(|e| e.order).max().unwrap_or(0);
    let mut terms: Vec<Option<MultiLinearMap>> = vec![None; top];
    for e in &file.terms {
        if e.order == 0 {
            return Err(Error::Malformed("order 0 is the bracket itself and cannot be given".into()));
        }
        let slot = &mut terms[e.order - 1];
        if slot.is_some() {
            return Err(Error::DuplicateEntry(format!("order {}", e.order)));
        }
        *slot = Some(assemble_trilinear(n, &e.values, t.basis_names())?);
    }
    let terms = terms.into_iter().map(|o| o.unwrap_or_else(|| MultiLinearMap::zeros(3, n, n))).collect();
    FormalDeformation::new(t, terms)
}

pub fn deformation_to_json(fd: &FormalDeformation) -> String {
    let terms = fd.terms.iter().enumerate().map(|(i, f)| DeformationTerm { order: i + 1, values: trilinear_entries(f) }).collect();
    to_json(&DeformationFile { system: SystemRef::Inline(SystemFile::from_system(&fd.base)), terms })
}

pub fn load_deformation(path: impl AsRef<Path>) -> Result<FormalDeformation> {
    let path = path.as_ref();
    deformation_from_json(&read(path)?, path.parent())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NijenhuisFile {
    pub system: SystemRef,
    /// Row-major; column `j` is `N eⱼ`.
    #[serde(rename = "N")]
    pub n: MatrixLiteral,
}

/// The system and `N`; `N` must be homogeneous (its degree is inferred,
/// zero counting as even).
pub fn nijenhuis_from_json(s: &str, base_dir: Option<&Path>) -> Result<(TripleSystem, HomMap)> {
    let file: NijenhuisFile = from_json(s)?;
    let t = file.system.resolve(base_dir)?;
    let m = matrix_from_literal(&file.n, t.dim())?;
    let (even, odd) = HomMap::split(t.space(), &m)?;
    let map = if odd.is_zero() {
        even
    } else if even.is_zero() {
        odd
    } else {
        return Err(Error::Malformed("N mixes even and odd parts".into()));
    };
    Ok((t, map))
}

pub fn nijenhuis_to_json(t: &TripleSystem, n_map: &HomMap) -> String {
    to_json(&NijenhuisFile { system: SystemRef::Inline(SystemFile::from_system(t)), n: matrix_to_literal(n_map.matrix()) })
}

pub fn load_nijenhuis(path: impl AsRef<Path>) -> Result<(TripleSystem, HomMap)> {
    let path = path.as_ref();
    nijenhuis_from_json(&read(path)?, path.parent())
}

/// `{"values": [{"args": [i,j,k], "value": {"l": "p/q"}}, …]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrilinearFile {
    #[serde(default)]
    pub values: Vec<TrilinearEntry>,
}

pub fn trilinear_from_json(t: &TripleSystem, s: &str) -> Result<MultiLinearMap> {
    let file: TrilinearFile = from_json(s)?;
    assemble_trilinear(t.dim(), &file.values, t.basis_names())
}

pub fn trilinear_to_json(map: &MultiLinearMap) -> String {
    to_json(&TrilinearFile { values: trilinear_entries(map) })
}

pub fn load_trilinear(t: &TripleSystem, path: impl AsRef<Path>) -> Result<MultiLinearMap> {
    trilinear_from_json(t, &read(path.as_ref())?)
}

/// Rationals as `"p/q"` strings, for report payloads.
pub fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format).collect()
}

//! File formats: algebras, actions, crossed modules, cat1 data, morphisms
//! and vector lists, all as JSON with exact scalar strings.
//!
//! Scalars never appear as JSON numbers: rationals are `"p"` or `"p/q"`,
//! prime-field residues are decimal strings. Serialization is canonical, so
//! a canonical file survives a parse/serialize round trip byte for byte.

use crate::algebra::{AwbMorphism, FiniteAwb, Tensor3};
use crate::action::{AwbAction, MutualActions};
use crate::error::AwbError;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Subspace};
use crate::xmod::{Cat1Awb, CrossedModule};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const FORMAT_VERSION: u32 = 1;

/// Errors attributable to the input files themselves (exit code 2).
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{path}: {message}")]
    Malformed { path: PathBuf, message: String },
}

fn malformed(path: &Path, message: impl Into<String>) -> IoError {
    IoError::Malformed {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

#[derive(Serialize, Deserialize, Clone)]
pub struct AlgebraFile {
    pub format_version: u32,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: String,
    pub dim: usize,
    pub product: Vec<Vec<Vec<String>>>,
    pub bracket: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Clone)]
pub struct ActionTensors {
    pub ldot: Vec<Vec<Vec<String>>>,
    pub rdot: Vec<Vec<Vec<String>>>,
    pub lstar: Vec<Vec<Vec<String>>>,
    pub rstar: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Clone)]
pub struct ActionFile {
    pub format_version: u32,
    pub kind: String,
    /// Path to the actor algebra, relative to this file.
    pub actor: String,
    /// Path to the actee algebra, relative to this file.
    pub actee: String,
    #[serde(flatten)]
    pub tensors: ActionTensors,
}

#[derive(Serialize, Deserialize, Clone)]
pub struct MutualActionsFile {
    pub format_version: u32,
    pub kind: String,
    pub first_on_second: ActionTensors,
    pub second_on_first: ActionTensors,
}

#[derive(Serialize, Deserialize, Clone)]
pub struct XModFile {
    pub format_version: u32,
    pub kind: String,
    /// Path to the action file (actor = base, actee = module).
    pub action: String,
    /// Matrix of `mu : module -> base`, (base dim) x (module dim).
    pub matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone)]
pub struct Cat1File {
    pub format_version: u32,
    pub kind: String,
    pub algebra: String,
    /// Rows spanning the subalgebra.
    pub subalgebra: Vec<Vec<String>>,
    pub s: Vec<Vec<String>>,
    pub t: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone)]
pub struct MorphismFile {
    pub format_version: u32,
    pub kind: String,
    pub source: String,
    pub target: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Clone)]
pub struct VectorsFile {
    pub format_version: u32,
    pub kind: String,
    pub vectors: Vec<Vec<String>>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IoError::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn expect_kind(path: &Path, kind: &str, expected: &str) -> Result<(), IoError> {
    if kind != expected {
        return Err(malformed(
            path,
            format!("expected kind `{expected}`, found `{kind}`"),
        ));
    }
    Ok(())
}

fn parse_tensor(
    path: &Path,
    field: FieldSpec,
    data: &[Vec<Vec<String>>],
    shape: (usize, usize, usize),
    what: &str,
) -> Result<Tensor3, IoError> {
    let (d0, d1, d2) = shape;
    if data.len() != d0 {
        return Err(malformed(path, format!("{what}: expected {d0} outer entries")));
    }
    let mut t = Tensor3::zero(field, d0, d1, d2);
    for (i, plane) in data.iter().enumerate() {
        if plane.len() != d1 {
            return Err(malformed(path, format!("{what}[{i}]: expected {d1} rows")));
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != d2 {
                return Err(malformed(
                    path,
                    format!("{what}[{i}][{j}]: expected {d2} entries"),
                ));
            }
            for (k, s) in row.iter().enumerate() {
                let v = field
                    .parse(s)
                    .map_err(|e| malformed(path, format!("{what}[{i}][{j}][{k}]: {e}")))?;
                t.set(i, j, k, v);
            }
        }
    }
    Ok(t)
}

fn parse_matrix(
    path: &Path,
    field: FieldSpec,
    data: &[Vec<String>],
    rows: usize,
    cols: usize,
    what: &str,
) -> Result<Matrix, IoError> {
    if data.len() != rows {
        return Err(malformed(path, format!("{what}: expected {rows} rows")));
    }
    let mut m = Matrix::zero(field, rows, cols);
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(malformed(
                path,
                format!("{what}[{i}]: expected {cols} entries"),
            ));
        }
        for (j, s) in row.iter().enumerate() {
            let v = field
                .parse(s)
                .map_err(|e| malformed(path, format!("{what}[{i}][{j}]: {e}")))?;
            m.set(i, j, v);
        }
    }
    Ok(m)
}

fn format_tensor(field: FieldSpec, t: &Tensor3) -> Vec<Vec<Vec<String>>> {
    (0..t.d0)
        .map(|i| {
            (0..t.d1)
                .map(|j| (0..t.d2).map(|k| field.format(t.at(i, j, k))).collect())
                .collect()
        })
        .collect()
}

fn format_matrix(field: FieldSpec, m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| field.format(m.at(i, j))).collect())
        .collect()
}

/// Loads an algebra without validating the axioms (the caller decides).
pub fn load_algebra_unchecked(path: &Path) -> Result<FiniteAwb, IoError> {
    let file: AlgebraFile = read_json(path)?;
    expect_kind(path, &file.kind, "algebra")?;
    let field = FieldSpec::parse_name(&file.field).map_err(|e| malformed(path, e.to_string()))?;
    let n = file.dim;
    let product = parse_tensor(path, field, &file.product, (n, n, n), "product")?;
    let bracket = parse_tensor(path, field, &file.bracket, (n, n, n), "bracket")?;
    let name = file.name.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "algebra".into())
    });
    Ok(FiniteAwb::new_unchecked(field, n, product, bracket, &name))
}

/// Loads an algebra and enforces its axioms.
pub fn load_algebra(path: &Path) -> Result<FiniteAwb, AwbError> {
    let a = load_algebra_unchecked(path).map_err(|e| AwbError::Precondition(e.to_string()))?;
    a.validate()
        .into_result(&format!("algebra `{}`", a.name))?;
    Ok(a)
}

fn resolve(base: &Path, relative: &str) -> PathBuf {
    base.parent().unwrap_or(Path::new(".")).join(relative)
}

fn action_from_tensors(
    path: &Path,
    actor: FiniteAwb,
    actee: FiniteAwb,
    tensors: &ActionTensors,
) -> Result<AwbAction, IoError> {
    let (a, m) = (actor.dim, actee.dim);
    let f = actor.field;
    if actor.field != actee.field {
        return Err(malformed(path, "actor and actee field mismatch"));
    }
    Ok(AwbAction::new(
        actor,
        actee,
        parse_tensor(path, f, &tensors.ldot, (a, m, m), "ldot")?,
        parse_tensor(path, f, &tensors.rdot, (m, a, m), "rdot")?,
        parse_tensor(path, f, &tensors.lstar, (a, m, m), "lstar")?,
        parse_tensor(path, f, &tensors.rstar, (m, a, m), "rstar")?,
    ))
}

/// Loads an action file; referenced algebras are validated.
pub fn load_action(path: &Path) -> Result<AwbAction, AwbError> {
    let file: ActionFile =
        read_json(path).map_err(|e| AwbError::Precondition(e.to_string()))?;
    expect_kind(path, &file.kind, "action").map_err(|e| AwbError::Precondition(e.to_string()))?;
    let actor = load_algebra(&resolve(path, &file.actor))?;
    let actee = load_algebra(&resolve(path, &file.actee))?;
    action_from_tensors(path, actor, actee, &file.tensors)
        .map_err(|e| AwbError::Precondition(e.to_string()))
}

/// Loads the mutual actions of two already-loaded algebras.
pub fn load_mutual_actions(
    path: &Path,
    m: &FiniteAwb,
    n: &FiniteAwb,
) -> Result<MutualActions, AwbError> {
    let file: MutualActionsFile =
        read_json(path).map_err(|e| AwbError::Precondition(e.to_string()))?;
    expect_kind(path, &file.kind, "mutual_actions")
        .map_err(|e| AwbError::Precondition(e.to_string()))?;
    let m_on_n = action_from_tensors(path, m.clone(), n.clone(), &file.first_on_second)
        .map_err(|e| AwbError::Precondition(e.to_string()))?;
    let n_on_m = action_from_tensors(path, n.clone(), m.clone(), &file.second_on_first)
        .map_err(|e| AwbError::Precondition(e.to_string()))?;
    Ok(MutualActions::new(m_on_n, n_on_m))
}

/// Loads a crossed module: an action file plus the structure map.
pub fn load_xmod(path: &Path) -> Result<CrossedModule, AwbError> {
    let file: XModFile = read_json(path).map_err(|e| AwbError::Precondition(e.to_string()))?;
    expect_kind(path, &file.kind, "crossed_module")
        .map_err(|e| AwbError::Precondition(e.to_string()))?;
    let act = load_action(&resolve(path, &file.action))?;
    let matrix = parse_matrix(
        path,
        act.actor.field,
        &file.matrix,
        act.actor.dim,
        act.actee.dim,
        "matrix",
    )
    .map_err(|e| AwbError::Precondition(e.to_string()))?;
    let mu = AwbMorphism::new(act.actee.clone(), act.actor.clone(), matrix);
    Ok(CrossedModule::new(mu, act))
}

/// Loads a cat1 structure.
pub fn load_cat1(path: &Path) -> Result<Cat1Awb, AwbError> {
    let file: Cat1File = read_json(path).map_err(|e| AwbError::Precondition(e.to_string()))?;
    expect_kind(path, &file.kind, "cat1").map_err(|e| AwbError::Precondition(e.to_string()))?;
    let r = load_algebra(&resolve(path, &file.algebra))?;
    let rows: Result<Vec<Vec<Scalar>>, AwbError> = file
        .subalgebra
        .iter()
        .map(|row| {
            if row.len() != r.dim {
                return Err(AwbError::Precondition(format!(
                    "{}: subalgebra row of length {} in dimension {}",
                    path.display(),
                    row.len(),
                    r.dim
                )));
            }
            row.iter()
                .map(|s| {
                    r.field
                        .parse(s)
                        .map_err(|e| AwbError::Precondition(e.to_string()))
                })
                .collect()
        })
        .collect();
    let p = Subspace::span(r.field, r.dim, &rows?);
    let s = parse_matrix(path, r.field, &file.s, r.dim, r.dim, "s")
        .map_err(|e| AwbError::Precondition(e.to_string()))?;
    let t = parse_matrix(path, r.field, &file.t, r.dim, r.dim, "t")
        .map_err(|e| AwbError::Precondition(e.to_string()))?;
    Ok(Cat1Awb::new(r, p, s, t))
}

/// Loads a morphism between two referenced algebras.
pub fn load_morphism(path: &Path) -> Result<AwbMorphism, AwbError> {
    let file: MorphismFile =
        read_json(path).map_err(|e| AwbError::Precondition(e.to_string()))?;
    expect_kind(path, &file.kind, "morphism")
        .map_err(|e| AwbError::Precondition(e.to_string()))?;
    let source = load_algebra(&resolve(path, &file.source))?;
    let target = load_algebra(&resolve(path, &file.target))?;
    let matrix = parse_matrix(
        path,
        source.field,
        &file.matrix,
        target.dim,
        source.dim,
        "matrix",
    )
    .map_err(|e| AwbError::Precondition(e.to_string()))?;
    Ok(AwbMorphism::new(source, target, matrix))
}

/// Loads a list of vectors over the ambient algebra's field.
pub fn load_vectors(path: &Path, field: FieldSpec, dim: usize) -> Result<Vec<Vec<Scalar>>, AwbError> {
    let file: VectorsFile =
        read_json(path).map_err(|e| AwbError::Precondition(e.to_string()))?;
    expect_kind(path, &file.kind, "vectors")
        .map_err(|e| AwbError::Precondition(e.to_string()))?;
    file.vectors
        .iter()
        .map(|row| {
            if row.len() != dim {
                return Err(AwbError::Precondition(format!(
                    "{}: vector of length {} in dimension {dim}",
                    path.display(),
                    row.len()
                )));
            }
            row.iter()
                .map(|s| {
                    field
                        .parse(s)
                        .map_err(|e| AwbError::Precondition(e.to_string()))
                })
                .collect()
        })
        .collect()
}

/// Canonical JSON text (pretty, trailing newline).
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn algebra_to_file(a: &FiniteAwb) -> AlgebraFile {
    AlgebraFile {
        format_version: FORMAT_VERSION,
        kind: "algebra".into(),
        name: Some(a.name.clone()),
        field: a.field.to_string(),
        dim: a.dim,
        product: format_tensor(a.field, &a.product),
        bracket: format_tensor(a.field, &a.bracket),
    }
}

pub fn action_tensors_to_file(act: &AwbAction) -> ActionTensors {
    let f = act.actor.field;
    ActionTensors {
        ldot: format_tensor(f, &act.ldot),
        rdot: format_tensor(f, &act.rdot),
        lstar: format_tensor(f, &act.lstar),
        rstar: format_tensor(f, &act.rstar),
    }
}

pub fn action_to_file(act: &AwbAction, actor_path: &str, actee_path: &str) -> ActionFile {
    ActionFile {
        format_version: FORMAT_VERSION,
        kind: "action".into(),
        actor: actor_path.into(),
        actee: actee_path.into(),
        tensors: action_tensors_to_file(act),
    }
}

pub fn mutual_actions_to_file(mutual: &MutualActions) -> MutualActionsFile {
    MutualActionsFile {
        format_version: FORMAT_VERSION,
        kind: "mutual_actions".into(),
        first_on_second: action_tensors_to_file(&mutual.m_on_n),
        second_on_first: action_tensors_to_file(&mutual.n_on_m),
    }
}

pub fn xmod_to_file(xm: &CrossedModule, action_path: &str) -> XModFile {
    XModFile {
        format_version: FORMAT_VERSION,
        kind: "crossed_module".into(),
        action: action_path.into(),
        matrix: format_matrix(xm.mu.source.field, &xm.mu.matrix),
    }
}

pub fn cat1_to_file(c: &Cat1Awb, algebra_path: &str) -> Cat1File {
    Cat1File {
        format_version: FORMAT_VERSION,
        kind: "cat1".into(),
        algebra: algebra_path.into(),
        subalgebra: format_matrix(c.r.field, c.p.basis()),
        s: format_matrix(c.r.field, &c.s),
        t: format_matrix(c.r.field, &c.t),
    }
}

pub fn morphism_to_file(m: &AwbMorphism, source_path: &str, target_path: &str) -> MorphismFile {
    MorphismFile {
        format_version: FORMAT_VERSION,
        kind: "morphism".into(),
        source: source_path.into(),
        target: target_path.into(),
        matrix: format_matrix(m.source.field, &m.matrix),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn algebra_round_trip_is_canonical() {
        let dir = std::env::temp_dir().join("awb_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let a = fixtures::t_m2(FieldSpec::Rationals);
        let text = to_canonical_json(&algebra_to_file(&a));
        let path = dir.join("t_m2.json");
        std::fs::write(&path, &text).unwrap();
        let loaded = load_algebra(&path).unwrap();
        assert!(loaded.same_structure(&a));
        // parse -> serialize is the identity on canonical files
        let again = to_canonical_json(&algebra_to_file(&loaded));
        assert_eq!(text, again);
    }

    #[test]
    fn malformed_files_are_input_errors() {
        let dir = std::env::temp_dir().join("awb_io_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("broken.json");
        std::fs::write(&path, "{ not json").unwrap();
        assert!(load_algebra_unchecked(&path).is_err());
        // wrong scalar for the field
        std::fs::write(
            &path,
            r#"{"format_version":1,"kind":"algebra","field":"GF(5)","dim":1,"product":[[["1/2"]]],"bracket":[[["0"]]]}"#,
        )
        .unwrap();
        assert!(load_algebra_unchecked(&path).is_err());
        // wrong shape
        std::fs::write(
            &path,
            r#"{"format_version":1,"kind":"algebra","field":"Q","dim":2,"product":[[["0"]]],"bracket":[[["0"]]]}"#,
        )
        .unwrap();
        assert!(load_algebra_unchecked(&path).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn scalar_strings_round_trip(n in -40i64..40, d in 1i64..12) {
                let f = FieldSpec::Rationals;
                let v = f.div(&f.from_i64(n), &f.from_i64(d)).unwrap();
                let s = f.format(&v);
                prop_assert_eq!(f.parse(&s).unwrap(), v);
                let g = FieldSpec::prime_field(5).unwrap();
                let w = g.from_i64(n);
                prop_assert_eq!(g.parse(&g.format(&w)).unwrap(), w);
            }
        }
    }
}

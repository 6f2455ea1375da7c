//! JSON documents: fixtures (`crossprod/fixture-v1`), composites
//! (`crossprod/composite-v1`) and self-contained witness files
//! (`crossprod/witness-v1`).
//!
//! Scalars are `"p/q"` strings (`"p"` for integers); a field element is the
//! list of its coordinates in the presentation's basis; a matrix is a list of
//! rows, and an automorphism matrix has the image of basis element `j` in
//! column `j`. `structure[i][j]` holds the coordinates of `e_i e_j`.

use std::path::{Path, PathBuf};

use crossprod_core::graded::HomogeneousElement;
use crossprod_core::scalar;
use crossprod_core::{
    CocycleData, CompositeExtension, DegeneracyPairWitness, FieldElement, FieldPresentation,
    GaloisExtension, GroupExponent, Matrix, StrongDegeneracyWitness,
};
use serde::{Deserialize, Serialize};

pub const FIXTURE_SCHEMA: &str = "crossprod/fixture-v1";
pub const COMPOSITE_SCHEMA: &str = "crossprod/composite-v1";
pub const WITNESS_SCHEMA: &str = "crossprod/witness-v1";

pub type Coords = Vec<String>;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}: {source}")]
    Json { origin: String, source: serde_json::Error },
    #[error("{origin}: {message}")]
    Format { origin: String, message: String },
}

fn format_err(origin: &str, message: impl ToString) -> LoadError {
    LoadError::Format { origin: origin.to_string(), message: message.to_string() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub labels: Vec<String>,
    pub structure: Vec<Vec<Coords>>,
    pub unit: Coords,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisDoc {
    pub labels: Vec<String>,
    pub structure: Vec<Vec<Coords>>,
    pub unit: Coords,
    pub orders: Vec<usize>,
    pub sigma: Vec<Vec<Coords>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    pub u: Vec<Vec<Coords>>,
    pub b: Vec<Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrongDoc {
    pub m: Vec<usize>,
    pub l: Coords,
    pub x: Vec<Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub m: Vec<usize>,
    pub n: Vec<usize>,
    pub a: Coords,
    pub b: Coords,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessesDoc {
    #[serde(default)]
    pub strong: Vec<StrongDoc>,
    #[serde(default)]
    pub pair: Vec<PairDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomogeneousDoc {
    pub coeff: Coords,
    pub m: Vec<usize>,
    pub w: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedDoc {
    #[serde(default)]
    pub elements: Vec<HomogeneousDoc>,
    #[serde(default)]
    pub pairs: Vec<[HomogeneousDoc; 2]>,
}

/// The fixture is `fixture` rewritten through `z_i -> images[i] w_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RescaledDoc {
    pub fixture: String,
    pub images: Vec<Coords>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureDoc {
    pub schema: String,
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub field: GaloisDoc,
    pub cocycle: CocycleDoc,
    #[serde(default)]
    pub witnesses: WitnessesDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graded: Option<GradedDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rescaled_from: Option<RescaledDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeDoc {
    pub labels: Vec<String>,
    pub structure: Vec<Vec<Coords>>,
    pub unit: Coords,
    pub sigma: Vec<Vec<Coords>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeDoc {
    pub schema: String,
    pub name: String,
    #[serde(default)]
    pub description: String,
    /// Name of the fixture whose `K` this composite contains.
    pub base: String,
    pub e: FieldDoc,
    pub ke: KeDoc,
    pub embed_k: Vec<Coords>,
    pub embed_e: Vec<Coords>,
    #[serde(default)]
    pub rel_gal: Vec<Vec<Coords>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Over {
    K,
    KE,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub schema: String,
    pub over: Over,
    pub fixture: FixtureDoc,
    #[serde(default)]
    pub composite: Option<CompositeDoc>,
    pub strong: StrongDoc,
}

/// A fixture with every element parsed. Nothing mathematical is checked
/// beyond shapes; that is the `validate` command's job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    pub ext: GaloisExtension,
    pub data: CocycleData,
    pub strong: Vec<StrongDegeneracyWitness>,
    pub pair: Vec<DegeneracyPairWitness>,
    pub graded_elements: Vec<HomogeneousElement>,
    pub graded_pairs: Vec<(HomogeneousElement, HomogeneousElement)>,
    pub rescaled_from: Option<(String, Vec<FieldElement>)>,
}

/// A composite as written in the file; `build` runs the verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeSpec {
    pub name: String,
    pub description: String,
    pub base: String,
    pub e: FieldPresentation,
    pub ke: FieldPresentation,
    pub ke_sigma: Vec<Matrix>,
    pub embed_k: Matrix,
    pub embed_e: Matrix,
    pub rel_gal: Vec<Matrix>,
}

impl CompositeSpec {
    pub fn build(&self, k: &GaloisExtension) -> crossprod_core::Result<CompositeExtension> {
        CompositeExtension::build(
            k,
            self.e.clone(),
            self.ke.clone(),
            self.ke_sigma.clone(),
            self.embed_k.clone(),
            self.embed_e.clone(),
            self.rel_gal.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessFile {
    pub over: Over,
    pub fixture: Fixture,
    pub composite: Option<CompositeSpec>,
    pub strong: StrongDegeneracyWitness,
}

// ---- parsing ---------------------------------------------------------------

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.to_path_buf(), source })
}

fn json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T, LoadError> {
    serde_json::from_str(text).map_err(|source| LoadError::Json { origin: origin.to_string(), source })
}

fn check_schema(found: &str, expected: &str, origin: &str) -> Result<(), LoadError> {
    if found != expected {
        return Err(format_err(origin, format!("schema {found:?}, expected {expected:?}")));
    }
    Ok(())
}

struct Parser<'a> {
    origin: &'a str,
}

impl Parser<'_> {
    fn scalars(&self, v: &[String]) -> Result<Vec<crossprod_core::Scalar>, LoadError> {
        v.iter().map(|s| scalar::parse(s).map_err(|e| format_err(self.origin, e))).collect()
    }

    fn element(&self, dim: usize, v: &[String], what: &str) -> Result<FieldElement, LoadError> {
        if v.len() != dim {
            return Err(format_err(self.origin, format!("{what} has {} coordinates, expected {dim}", v.len())));
        }
        Ok(FieldElement::new(self.scalars(v)?))
    }

    fn matrix(&self, rows: &[Coords], what: &str) -> Result<Matrix, LoadError> {
        let rows = rows.iter().map(|r| self.scalars(r)).collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(rows).ok_or_else(|| format_err(self.origin, format!("{what} has ragged rows")))
    }

    fn field(&self, labels: &[String], structure: &[Vec<Coords>], unit: &[String]) -> Result<FieldPresentation, LoadError> {
        let structure = structure
            .iter()
            .map(|row| row.iter().map(|c| self.scalars(c)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        FieldPresentation::new(labels.to_vec(), structure, self.scalars(unit)?).map_err(|e| format_err(self.origin, e))
    }

    fn exponent(&self, ext: &GaloisExtension, m: &[usize], what: &str) -> Result<GroupExponent, LoadError> {
        let g = GroupExponent(m.to_vec());
        ext.group().check(&g).map_err(|e| format_err(self.origin, format!("{what}: {e}")))?;
        Ok(g)
    }

    fn strong(&self, ext: &GaloisExtension, dim: usize, w: &StrongDoc) -> Result<StrongDegeneracyWitness, LoadError> {
        if w.x.len() != ext.rank() {
            return Err(format_err(self.origin, format!("witness has {} x_i, expected {}", w.x.len(), ext.rank())));
        }
        Ok(StrongDegeneracyWitness {
            m: self.exponent(ext, &w.m, "witness m")?,
            l: self.element(dim, &w.l, "witness l")?,
            x: w.x.iter().map(|x| self.element(dim, x, "witness x_i")).collect::<Result<_, _>>()?,
        })
    }

    fn homogeneous(&self, ext: &GaloisExtension, h: &HomogeneousDoc) -> Result<HomogeneousElement, LoadError> {
        if h.w.len() != ext.rank() {
            return Err(format_err(self.origin, "homogeneous element: w has the wrong length"));
        }
        Ok(HomogeneousElement {
            coeff: self.element(ext.dim(), &h.coeff, "homogeneous coefficient")?,
            m: self.exponent(ext, &h.m, "homogeneous m")?,
            w: h.w.clone(),
        })
    }
}

impl Fixture {
    pub fn load(path: &Path) -> Result<Fixture, LoadError> {
        Self::parse(&read(path)?, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Fixture, LoadError> {
        Self::from_doc(&json(text, origin)?, origin)
    }

    pub fn from_doc(doc: &FixtureDoc, origin: &str) -> Result<Fixture, LoadError> {
        check_schema(&doc.schema, FIXTURE_SCHEMA, origin)?;
        let p = Parser { origin };
        let f = &doc.field;
        let field = p.field(&f.labels, &f.structure, &f.unit)?;
        let sigma = f
            .sigma
            .iter()
            .enumerate()
            .map(|(i, s)| p.matrix(s, &format!("sigma_{}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let ext = GaloisExtension::new(field, f.orders.clone(), sigma).map_err(|e| format_err(origin, e))?;
        let dim = ext.dim();
        let r = ext.rank();
        let c = &doc.cocycle;
        if c.u.len() != r || c.u.iter().any(|row| row.len() != r) || c.b.len() != r {
            return Err(format_err(origin, format!("cocycle must have a {r}x{r} u and {r} entries in b")));
        }
        let data = CocycleData {
            u: c.u
                .iter()
                .map(|row| row.iter().map(|x| p.element(dim, x, "u_ij")).collect::<Result<_, _>>())
                .collect::<Result<_, _>>()?,
            b: c.b.iter().map(|x| p.element(dim, x, "b_i")).collect::<Result<_, _>>()?,
        };
        let strong = doc.witnesses.strong.iter().map(|w| p.strong(&ext, dim, w)).collect::<Result<_, _>>()?;
        let pair = doc
            .witnesses
            .pair
            .iter()
            .map(|w| {
                Ok(DegeneracyPairWitness {
                    m: p.exponent(&ext, &w.m, "pair m")?,
                    n: p.exponent(&ext, &w.n, "pair n")?,
                    a: p.element(dim, &w.a, "pair a")?,
                    b: p.element(dim, &w.b, "pair b")?,
                })
            })
            .collect::<Result<_, LoadError>>()?;
        let graded = doc.graded.clone().unwrap_or_default();
        let graded_elements = graded.elements.iter().map(|h| p.homogeneous(&ext, h)).collect::<Result<_, _>>()?;
        let graded_pairs = graded
            .pairs
            .iter()
            .map(|[a, b]| Ok((p.homogeneous(&ext, a)?, p.homogeneous(&ext, b)?)))
            .collect::<Result<_, LoadError>>()?;
        let rescaled_from = match &doc.rescaled_from {
            Some(rs) => {
                let images = rs.images.iter().map(|a| p.element(dim, a, "image")).collect::<Result<_, _>>()?;
                Some((rs.fixture.clone(), images))
            }
            None => None,
        };
        Ok(Fixture {
            name: doc.name.clone(),
            description: doc.description.clone(),
            ext,
            data,
            strong,
            pair,
            graded_elements,
            graded_pairs,
            rescaled_from,
        })
    }

    /// Same presentation and cocycle (witness lists may differ).
    pub fn same_algebra(&self, other: &Fixture) -> bool {
        self.ext == other.ext && self.data == other.data
    }
}

impl CompositeSpec {
    pub fn load(path: &Path) -> Result<CompositeSpec, LoadError> {
        Self::parse(&read(path)?, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<CompositeSpec, LoadError> {
        Self::from_doc(&json(text, origin)?, origin)
    }

    pub fn from_doc(doc: &CompositeDoc, origin: &str) -> Result<CompositeSpec, LoadError> {
        check_schema(&doc.schema, COMPOSITE_SCHEMA, origin)?;
        let p = Parser { origin };
        Ok(CompositeSpec {
            name: doc.name.clone(),
            description: doc.description.clone(),
            base: doc.base.clone(),
            e: p.field(&doc.e.labels, &doc.e.structure, &doc.e.unit)?,
            ke: p.field(&doc.ke.labels, &doc.ke.structure, &doc.ke.unit)?,
            ke_sigma: doc.ke.sigma.iter().map(|s| p.matrix(s, "KE sigma")).collect::<Result<_, _>>()?,
            embed_k: p.matrix(&doc.embed_k, "embed_k")?,
            embed_e: p.matrix(&doc.embed_e, "embed_e")?,
            rel_gal: doc.rel_gal.iter().map(|s| p.matrix(s, "rel_gal")).collect::<Result<_, _>>()?,
        })
    }
}

impl WitnessFile {
    pub fn load(path: &Path) -> Result<WitnessFile, LoadError> {
        Self::parse(&read(path)?, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<WitnessFile, LoadError> {
        let doc: WitnessDoc = json(text, origin)?;
        check_schema(&doc.schema, WITNESS_SCHEMA, origin)?;
        let fixture = Fixture::from_doc(&doc.fixture, origin)?;
        let composite = doc.composite.as_ref().map(|c| CompositeSpec::from_doc(c, origin)).transpose()?;
        let dim = match (doc.over, &composite) {
            (Over::K, _) => fixture.ext.dim(),
            (Over::KE, Some(c)) => c.ke.dim(),
            (Over::KE, None) => return Err(format_err(origin, "a witness over KE needs its composite")),
        };
        let strong = Parser { origin }.strong(&fixture.ext, dim, &doc.strong)?;
        Ok(WitnessFile { over: doc.over, fixture, composite, strong })
    }
}

// ---- writing ---------------------------------------------------------------

pub fn coords_doc(x: &FieldElement) -> Coords {
    x.coords().iter().map(scalar::format).collect()
}

pub fn matrix_doc(m: &Matrix) -> Vec<Coords> {
    (0..m.rows()).map(|i| m.row(i).iter().map(scalar::format).collect()).collect()
}

pub fn strong_doc(w: &StrongDegeneracyWitness) -> StrongDoc {
    StrongDoc { m: w.m.0.clone(), l: coords_doc(&w.l), x: w.x.iter().map(coords_doc).collect() }
}

pub fn pair_doc(w: &DegeneracyPairWitness) -> PairDoc {
    PairDoc { m: w.m.0.clone(), n: w.n.0.clone(), a: coords_doc(&w.a), b: coords_doc(&w.b) }
}

pub fn galois_doc(ext: &GaloisExtension) -> GaloisDoc {
    let n = ext.dim();
    GaloisDoc {
        labels: ext.labels().to_vec(),
        structure: (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| scalar::format(ext.structure_constant(i, j, k))).collect()).collect())
            .collect(),
        unit: ext.unit_coords().iter().map(scalar::format).collect(),
        orders: ext.orders().to_vec(),
        sigma: ext.sigma().iter().map(matrix_doc).collect(),
    }
}

pub fn cocycle_doc(data: &CocycleData) -> CocycleDoc {
    CocycleDoc {
        u: data.u.iter().map(|row| row.iter().map(coords_doc).collect()).collect(),
        b: data.b.iter().map(coords_doc).collect(),
    }
}

/// A minimal fixture document for a presentation, e.g. to write a perturbed copy.
pub fn fixture_doc(name: &str, ext: &GaloisExtension, data: &CocycleData) -> FixtureDoc {
    FixtureDoc {
        schema: FIXTURE_SCHEMA.into(),
        name: name.into(),
        description: String::new(),
        field: galois_doc(ext),
        cocycle: cocycle_doc(data),
        witnesses: WitnessesDoc::default(),
        graded: None,
        rescaled_from: None,
    }
}

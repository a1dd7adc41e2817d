//! Checked-in worked examples: diagrams, their reduced presentations, and
//! the test coefficient crossed modules.
//!
//! Every entry is embedded in the binary; setting `CROSSMOD_CORPUS` to a
//! directory makes file lookups go there first, falling back to the
//! embedded copies.

use crate::algebra::{parse_crossed_module, FiniteCrossedModule};
use crate::kwb::{parse_diagram, KwbDiagram};
use crate::presentation::{parse_presentation, CrossedModulePresentation};
use crate::scan::ParseError;
use thiserror::Error;

/// Environment variable overriding the corpus directory.
pub const CORPUS_ENV: &str = "CROSSMOD_CORPUS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleKind {
    /// A `.kwb` diagram with a companion `.cmp` reduced presentation.
    Diagram,
    /// A `.cm` coefficient crossed module.
    Coefficient,
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: ExampleKind,
    pub description: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown example `{0}`")]
    UnknownName(String),
    #[error("`{name}` is a {kind}, not what was requested")]
    WrongKind { name: String, kind: &'static str },
    #[error("failed to read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("failed to parse {path}: {source}")]
    Parse { path: String, source: ParseError },
}

macro_rules! diagram_files {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../../corpus/", $name, ".kwb")),
             include_str!(concat!("../../../corpus/", $name, ".cmp")))),*]
    };
}

/// `(name, .kwb text, .cmp text)` triples.
static DIAGRAMS: &[(&str, &str, &str)] = diagram_files![
    "trivial_sphere_K1",
    "trivial_sphere_K2",
    "trivial_sphere_K3",
    "spun_trefoil",
    "spun_hopf",
    "sigma_prime",
    "trivial_torus",
    "trivial_torus_pair",
];

static COEFFICIENTS: &[(&str, &str)] = &[
    ("A", include_str!("../../../corpus/A.cm")),
    ("conj_S3", include_str!("../../../corpus/conj_S3.cm")),
    ("z2_z4_sign", include_str!("../../../corpus/z2_z4_sign.cm")),
    ("trivial", include_str!("../../../corpus/trivial.cm")),
];

static CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "trivial_sphere_K1",
        kind: ExampleKind::Diagram,
        description: "trivial 2-sphere; one band dipping under its circle",
    },
    CatalogEntry {
        name: "trivial_sphere_K2",
        kind: ExampleKind::Diagram,
        description: "trivial 2-sphere; one trivial-boundary band killed by a maximal circle",
    },
    CatalogEntry {
        name: "trivial_sphere_K3",
        kind: ExampleKind::Diagram,
        description: "trivial 2-sphere; one band merging two circles, no 2-relations",
    },
    CatalogEntry {
        name: "spun_trefoil",
        kind: ExampleKind::Diagram,
        description: "spun trefoil knotted sphere; invariant 4/3 against A",
    },
    CatalogEntry {
        name: "spun_hopf",
        kind: ExampleKind::Diagram,
        description: "spun Hopf link (two tori); invariant 18 against A",
    },
    CatalogEntry {
        name: "sigma_prime",
        kind: ExampleKind::Diagram,
        description: "two tori with the spun Hopf fundamental group; invariant 24 against A",
    },
    CatalogEntry {
        name: "trivial_torus",
        kind: ExampleKind::Diagram,
        description: "trivially embedded torus; invariant #G·(#ker d)^2/#E",
    },
    CatalogEntry {
        name: "trivial_torus_pair",
        kind: ExampleKind::Diagram,
        description: "two disjoint trivial tori; invariant (#G·(#ker d)^2/#E)^2",
    },
    CatalogEntry {
        name: "A",
        kind: ExampleKind::Coefficient,
        description: "(Z2, Z3, trivial boundary, sign action)",
    },
    CatalogEntry {
        name: "conj_S3",
        kind: ExampleKind::Coefficient,
        description: "(S3, S3, identity, conjugation)",
    },
    CatalogEntry {
        name: "z2_z4_sign",
        kind: ExampleKind::Coefficient,
        description: "(Z2, Z4, trivial boundary, sign action)",
    },
    CatalogEntry {
        name: "trivial",
        kind: ExampleKind::Coefficient,
        description: "the trivial crossed module",
    },
];

/// The fixed example catalog.
pub fn list_examples() -> &'static [CatalogEntry] {
    CATALOG
}

fn entry(name: &str) -> Result<&'static CatalogEntry, CorpusError> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CorpusError::UnknownName(name.to_string()))
}

/// Returns the text of `<name>.<ext>`, preferring `CROSSMOD_CORPUS`.
fn file_text(name: &str, ext: &str, embedded: &'static str) -> Result<String, CorpusError> {
    if let Ok(dir) = std::env::var(CORPUS_ENV) {
        let path = std::path::Path::new(&dir).join(format!("{name}.{ext}"));
        if path.exists() {
            return std::fs::read_to_string(&path).map_err(|e| CorpusError::Io {
                path: path.display().to_string(),
                reason: e.to_string(),
            });
        }
    }
    Ok(embedded.to_string())
}

#[derive(Debug, Clone)]
pub enum Loaded {
    Diagram(KwbDiagram),
    Presentation(CrossedModulePresentation),
    Coefficient(FiniteCrossedModule),
}

/// Loads a catalog entry by name: the diagram for diagram entries, the
/// crossed module for coefficient entries. `<name>.cmp` loads the reduced
/// presentation of a diagram entry.
pub fn load_example(name: &str) -> Result<Loaded, CorpusError> {
    if let Some(base) = name.strip_suffix(".cmp") {
        return presentation(base).map(Loaded::Presentation);
    }
    match entry(name)?.kind {
        ExampleKind::Diagram => diagram(name).map(Loaded::Diagram),
        ExampleKind::Coefficient => coefficient(name).map(Loaded::Coefficient),
    }
}

/// The `.kwb` diagram of a diagram entry, parsed and validated.
pub fn diagram(name: &str) -> Result<KwbDiagram, CorpusError> {
    let e = entry(name)?;
    if e.kind != ExampleKind::Diagram {
        return Err(CorpusError::WrongKind { name: name.to_string(), kind: "coefficient" });
    }
    let (_, kwb, _) = DIAGRAMS.iter().find(|(n, _, _)| *n == name).unwrap();
    let text = file_text(name, "kwb", kwb)?;
    parse_diagram(&text)
        .map_err(|source| CorpusError::Parse { path: format!("{name}.kwb"), source })
}

/// The checked-in reduced presentation of a diagram entry.
pub fn presentation(name: &str) -> Result<CrossedModulePresentation, CorpusError> {
    let e = entry(name)?;
    if e.kind != ExampleKind::Diagram {
        return Err(CorpusError::WrongKind { name: name.to_string(), kind: "coefficient" });
    }
    let (_, _, cmp) = DIAGRAMS.iter().find(|(n, _, _)| *n == name).unwrap();
    let text = file_text(name, "cmp", cmp)?;
    parse_presentation(&text)
        .map_err(|source| CorpusError::Parse { path: format!("{name}.cmp"), source })
}

/// A coefficient crossed module by name.
pub fn coefficient(name: &str) -> Result<FiniteCrossedModule, CorpusError> {
    let e = entry(name)?;
    if e.kind != ExampleKind::Coefficient {
        return Err(CorpusError::WrongKind { name: name.to_string(), kind: "diagram" });
    }
    let (_, cm) = COEFFICIENTS.iter().find(|(n, _)| *n == name).unwrap();
    let text = file_text(name, "cm", cm)?;
    parse_crossed_module(&text)
        .map_err(|source| CorpusError::Parse { path: format!("{name}.cm"), source })
}

/// Names of all diagram entries, in catalog order.
pub fn diagram_names() -> Vec<&'static str> {
    CATALOG.iter().filter(|e| e.kind == ExampleKind::Diagram).map(|e| e.name).collect()
}

/// Names of all coefficient entries, in catalog order.
pub fn coefficient_names() -> Vec<&'static str> {
    CATALOG.iter().filter(|e| e.kind == ExampleKind::Coefficient).map(|e| e.name).collect()
}

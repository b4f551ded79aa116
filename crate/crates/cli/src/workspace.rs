use std::collections::BTreeMap;
use std::path::Path;

use liesym_core::error::{Error, Result};
use liesym_core::expr::Context;
use liesym_core::field::VectorField;
use liesym_core::fixtures::{self, FixtureSet};
use liesym_core::lie_algebra::LieAlgebra;
use liesym_core::optimal::OptimalSystem;
use serde::Deserialize;

pub const BUNDLED: &str = include_str!("../workspaces/burgers.json");

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymbolDeclKind {
    Constant,
    Function,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SymbolDecl {
    pub name: String,
    pub kind: SymbolDeclKind,
    #[serde(default)]
    pub params: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub coefficients: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkspaceFile {
    #[serde(default)]
    pub name: Option<String>,
    pub coordinates: Vec<String>,
    #[serde(default)]
    pub symbols: Vec<SymbolDecl>,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub fixtures: Option<String>,
    #[serde(default, rename = "labeling-permutation")]
    pub labeling_permutation: Option<Vec<usize>>,
}

/// A parsed workspace: declarations, basis fields and the optional fixture set.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub file: WorkspaceFile,
    context: Context,
    fields: Vec<VectorField>,
}

impl Workspace {
    pub fn bundled() -> Result<Self> {
        Self::from_json(BUNDLED)
    }

    pub fn load(path: &Path) -> std::result::Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(LoadError::Workspace)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: WorkspaceFile =
            serde_json::from_str(text).map_err(|e| Error::Invalid(format!("workspace: {e}")))?;
        let mut context = Context::new();
        for c in &file.coordinates {
            context = context.coordinate(c)?;
        }
        for s in &file.symbols {
            context = match s.kind {
                SymbolDeclKind::Constant => context.constant(&s.name)?,
                SymbolDeclKind::Function => {
                    let params: Vec<&str> = s.params.iter().map(String::as_str).collect();
                    context.function(&s.name, &params)?
                }
            };
        }
        let coords: Vec<&str> = file.coordinates.iter().map(String::as_str).collect();
        let mut fields = Vec::with_capacity(file.basis.len());
        for (i, b) in file.basis.iter().enumerate() {
            if file.basis[..i].iter().any(|p| p.name == b.name) {
                return Err(Error::Invalid(format!("basis name `{}` is repeated", b.name)));
            }
            fields.push(VectorField::parse(&context, &coords, &b.coefficients)?);
        }
        Ok(Workspace { file, context, fields })
    }

    pub fn context(&self) -> &Context {
        &self.context
    }

    pub fn names(&self) -> Vec<String> {
        self.file.basis.iter().map(|b| b.name.clone()).collect()
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn field(&self, name: &str) -> Option<&VectorField> {
        self.file
            .basis
            .iter()
            .position(|b| b.name == name)
            .map(|i| &self.fields[i])
    }

    pub fn algebra(&self) -> Result<LieAlgebra> {
        LieAlgebra::new(self.names(), self.fields.clone())
    }

    pub fn fixtures(&self) -> Result<Option<FixtureSet>> {
        self.file.fixtures.as_deref().map(fixtures::lookup).transpose()
    }

    pub fn permutation(&self) -> Vec<usize> {
        self.file
            .labeling_permutation
            .clone()
            .unwrap_or_else(|| (1..=self.fields.len()).collect())
    }

    pub fn optimal_system(&self) -> Result<OptimalSystem> {
        let fx = self
            .fixtures()?
            .ok_or_else(|| Error::Invalid("the optimal-system stage needs a fixture set with representatives".into()))?;
        OptimalSystem::from_fixtures(self.algebra()?, &self.permutation(), &fx)
    }
}

#[derive(Debug)]
pub enum LoadError {
    Io(String),
    Workspace(Error),
}

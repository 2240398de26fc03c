//! The declarative workspace file: one field, an optional algebra, named
//! mixed elements, and named polarizations.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use wittq_core::error::Error;
use wittq_core::json::{MixedJson, PolarizationJson, PolyJson, SymbolJson};
use wittq_core::mixed::MixedElement;
use wittq_core::numberfield::NumberField;
use wittq_core::quat::QuaternionAlgebra;
use wittq_core::signpol::PolarizationMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WorkspaceJson {
    pub field: PolyJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<SymbolJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub forms: BTreeMap<String, MixedJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub polarizations: BTreeMap<String, PolarizationJson>,
}

pub struct Workspace {
    pub field: Arc<NumberField>,
    pub algebra: Option<Arc<QuaternionAlgebra>>,
    pub forms: BTreeMap<String, MixedElement>,
    pub polarizations: BTreeMap<String, PolarizationMap>,
}

impl Workspace {
    pub fn load(path: &Path) -> Result<Self, crate::CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            crate::CliError::Validation(format!("cannot read {}: {e}", path.display()))
        })?;
        let json: WorkspaceJson = serde_json::from_str(&text)
            .map_err(|e| crate::CliError::Parse(format!("workspace JSON: {e}")))?;
        let field = NumberField::new(json.field.to_polynomial()?)?;
        let algebra = match &json.algebra {
            Some(sym) => Some(sym.to_algebra(&field)?),
            None => None,
        };
        let mut forms = BTreeMap::new();
        if !json.forms.is_empty() {
            let algebra = algebra
                .as_ref()
                .ok_or_else(|| crate::CliError::Validation("forms need an algebra".into()))?;
            for (name, mj) in &json.forms {
                forms.insert(name.clone(), mj.to_mixed(algebra)?);
            }
        }
        let mut polarizations = BTreeMap::new();
        for (name, pj) in &json.polarizations {
            polarizations.insert(name.clone(), pj.to_polarization()?);
        }
        Ok(Workspace {
            field,
            algebra,
            forms,
            polarizations,
        })
    }

    pub fn algebra(&self) -> Result<&Arc<QuaternionAlgebra>, crate::CliError> {
        self.algebra
            .as_ref()
            .ok_or_else(|| crate::CliError::Validation("workspace has no algebra".into()))
    }

    pub fn form(&self, name: &str) -> Result<&MixedElement, crate::CliError> {
        self.forms
            .get(name)
            .ok_or_else(|| crate::CliError::Validation(format!("no form named '{name}'")))
    }

    pub fn polarization(&self, name: &str) -> Result<&PolarizationMap, crate::CliError> {
        self.polarizations
            .get(name)
            .ok_or_else(|| crate::CliError::Validation(format!("no polarization named '{name}'")))
    }
}

impl From<Error> for crate::CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => crate::CliError::Parse(e.to_string()),
            Error::SearchBudgetExceeded { .. } => crate::CliError::Budget(e.to_string()),
            other => crate::CliError::Validation(other.to_string()),
        }
    }
}

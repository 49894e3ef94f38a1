//! JSON descriptions of right-angled presentations.
//!
//! A presentation file declares the generators, the commuting pairs (all
//! other pairs are free), and optionally a chamber count `q_g ≥ 2` per
//! generator. Omitted counts default to 2, which is the thin case where
//! the building is the Coxeter group itself.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coxeter::{CoxeterError, CoxeterSystem};
use crate::graph_product::{GraphProduct, GroupError};

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("presentation JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("orders entry `{0}` is not a declared generator")]
    UnknownOrderKey(String),
    #[error("order for `{name}` must be at least 2, got {order}")]
    OrderTooSmall { name: String, order: u16 },
}

/// JSON shape for a right-angled presentation:
///
/// ```json
/// {
///   "generators": ["r", "s", "t"],
///   "commuting": [["r", "s"]],
///   "orders": { "t": 3 }
/// }
/// ```
///
/// `commuting` lists the unordered pairs with `m_st = 2`; any pair not
/// listed is free (`m_st = ∞`). `orders` gives the number of chambers on
/// each generator's panels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default)]
    pub commuting: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub orders: BTreeMap<String, u16>,
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<PresentationFile, PresentationError> {
        Ok(serde_json::from_str(text)?)
    }

    /// The right-angled Coxeter system over these generators.
    pub fn coxeter_system(&self) -> Result<CoxeterSystem, PresentationError> {
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let pairs: Vec<(&str, &str)> = self
            .commuting
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        Ok(CoxeterSystem::new(&names, &pairs)?)
    }

    /// The graph product of cyclic groups of the declared orders, whose
    /// Cayley structure is the building.
    pub fn graph_product(&self) -> Result<GraphProduct, PresentationError> {
        let sys = self.coxeter_system()?;
        for name in self.orders.keys() {
            if sys.gen_by_name(name).is_none() {
                return Err(PresentationError::UnknownOrderKey(name.clone()));
            }
        }
        let mut orders = Vec::with_capacity(self.generators.len());
        for name in &self.generators {
            let q = self.orders.get(name).copied().unwrap_or(2);
            if q < 2 {
                return Err(PresentationError::OrderTooSmall { name: name.clone(), order: q });
            }
            orders.push(q);
        }
        Ok(GraphProduct::cyclic(sys, &orders)?)
    }
}

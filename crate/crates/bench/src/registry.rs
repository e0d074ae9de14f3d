//! Optimizer lookup by name.

use std::collections::BTreeMap;
use std::sync::Arc;

use arrde::de::{De, DeConfig};
use arrde::engine::{Arrde, ArrdeConfig};
use arrde::shade::{Jso, JsoConfig, Lshade, LshadeConfig};
use arrde::Optimizer;
use serde::de::DeserializeOwned;

use crate::error::{BenchError, Result};

type Factory = Box<dyn Fn(&toml::Table) -> Result<Arc<dyn Optimizer>> + Send + Sync>;

/// Named optimizer factories. Each factory turns a table of overrides into
/// a configured optimizer; external optimizers can be added with
/// [`Registry::register`].
pub struct Registry {
    factories: BTreeMap<String, Factory>,
}

fn overrides<T: DeserializeOwned>(name: &str, table: &toml::Table) -> Result<T> {
    toml::Value::Table(table.clone())
        .try_into()
        .map_err(|e| BenchError::Config(format!("algorithm '{name}': {e}")))
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    /// Registry holding `de`, `lshade`, `jso` and `arrde`.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register("de", |t| Ok(Arc::new(De { config: overrides::<DeConfig>("de", t)? })));
        r.register("lshade", |t| {
            Ok(Arc::new(Lshade {
                config: overrides::<LshadeConfig>("lshade", t)?,
            }))
        });
        r.register("jso", |t| Ok(Arc::new(Jso { config: overrides::<JsoConfig>("jso", t)? })));
        r.register("arrde", |t| {
            Ok(Arc::new(Arrde {
                config: overrides::<ArrdeConfig>("arrde", t)?,
            }))
        });
        r
    }

    pub fn register(
        &mut self,
        name: &str,
        factory: impl Fn(&toml::Table) -> Result<Arc<dyn Optimizer>> + Send + Sync + 'static,
    ) {
        self.factories.insert(name.to_string(), Box::new(factory));
    }

    pub fn names(&self) -> Vec<&str> {
        self.factories.keys().map(String::as_str).collect()
    }

    /// Builds the optimizer of a `[algorithms.<label>]` table. The optional
    /// `kind` key names the factory; otherwise `label` does.
    pub fn build(&self, label: &str, table: &toml::Table) -> Result<Arc<dyn Optimizer>> {
        let mut table = table.clone();
        let kind = match table.remove("kind") {
            Some(toml::Value::String(k)) => k,
            Some(other) => {
                return Err(BenchError::Config(format!(
                    "algorithm '{label}': kind must be a string, got {other}"
                )))
            }
            None => label.to_string(),
        };
        let factory = self.factories.get(&kind).ok_or_else(|| {
            BenchError::Config(format!(
                "unknown algorithm '{kind}' (known: {})",
                self.names().join(", ")
            ))
        })?;
        factory(&table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_builtins_with_overrides() {
        let r = Registry::builtin();
        assert_eq!(r.names(), vec!["arrde", "de", "jso", "lshade"]);
        let t: toml::Table = toml::from_str("kind = \"arrde\"\ns_tol = 0.001").unwrap();
        assert_eq!(r.build("tight", &t).unwrap().name(), "arrde");
        let bad: toml::Table = toml::from_str("s_tol = 0.001").unwrap();
        assert!(matches!(r.build("lshade", &bad), Err(BenchError::Config(_))));
        assert!(matches!(r.build("cmaes", &toml::Table::new()), Err(BenchError::Config(_))));
    }
}

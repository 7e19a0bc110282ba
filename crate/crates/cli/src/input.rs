use std::fmt;
use std::fs;
use std::path::Path;

use bott_core::json::{RawBundle, RawTower};
use bott_core::tower::validate_tower;
use bott_core::{LineBundleSum, TowerSpec};
use serde::de::DeserializeOwned;

/// A malformed or unreadable input file.
#[derive(Debug)]
pub struct InputError {
    pub path: String,
    pub position: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some((line, column)) => write!(f, "{}:{line}:{column}: {}", self.path, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| InputError {
        path: name.clone(),
        position: None,
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| {
        let message = e.to_string();
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        InputError {
            path: name,
            position: Some((e.line(), e.column())),
            message,
        }
    })
}

pub fn load_tower(path: &Path) -> Result<TowerSpec, InputError> {
    let raw: RawTower = read_json(path)?;
    validate_tower(&raw).map_err(|e| InputError {
        path: path.display().to_string(),
        position: None,
        message: e.to_string(),
    })
}

pub fn load_bundle(path: &Path) -> Result<LineBundleSum, InputError> {
    let raw: RawBundle = read_json(path)?;
    LineBundleSum::from_raw(&raw).map_err(|e| InputError {
        path: path.display().to_string(),
        position: None,
        message: e.to_string(),
    })
}

use std::io::Read;
use std::path::{Path, PathBuf};

use infoeval_core::{fixtures, parse_records, InputFormat, InputRecord};

use crate::error::CliError;

pub const FIXTURE_PREFIX: &str = "fixture:";
pub const FIXTURE_ENV: &str = "INFOEVAL_FIXTURES";

/// A parsed matrix with its display name.
pub struct Model {
    pub name: String,
    pub record: InputRecord,
}

/// Reads every input in order. Unnamed matrices are called `M1`, `M2`, ...
/// by their position across all inputs.
pub fn load(paths: &[String], forced: Option<InputFormat>) -> Result<Vec<Model>, CliError> {
    let mut models = Vec::new();
    for source in paths {
        let (text, format) = read_source(source, forced)?;
        let records = parse_records(&text, format).map_err(|e| CliError::input(format!("{source}: {e}")))?;
        for record in records {
            let position = models.len() + 1;
            let name = record.matrix.name().map_or_else(|| format!("M{position}"), str::to_string);
            models.push(Model { name, record });
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    for m in &models {
        if !seen.insert(m.name.as_str()) {
            return Err(CliError::input(format!("duplicate model name `{}`", m.name)));
        }
    }
    Ok(models)
}

fn read_source(source: &str, forced: Option<InputFormat>) -> Result<(String, InputFormat), CliError> {
    if let Some(name) = source.strip_prefix(FIXTURE_PREFIX) {
        return read_fixture(source, name, forced);
    }
    if source == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text).map_err(|e| CliError::input(format!("stdin: {e}")))?;
        return Ok((text, forced.unwrap_or(InputFormat::Json)));
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{source}: {e}")))?;
    Ok((text, forced.unwrap_or_else(|| format_of(path))))
}

fn read_fixture(source: &str, name: &str, forced: Option<InputFormat>) -> Result<(String, InputFormat), CliError> {
    if let Some(dir) = std::env::var_os(FIXTURE_ENV) {
        let mut path = PathBuf::from(dir).join(name);
        if path.extension().is_none() {
            path.set_extension("json");
        }
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::input(format!("{source}: {}: {e}", path.display())))?;
        return Ok((text, forced.unwrap_or_else(|| format_of(&path))));
    }
    let text = fixtures::raw(name).ok_or_else(|| {
        let known: Vec<&str> = fixtures::names().collect();
        CliError::input(format!("{source}: unknown fixture (bundled: {})", known.join(", ")))
    })?;
    Ok((text.to_string(), InputFormat::Json))
}

fn format_of(path: &Path) -> InputFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("csv") => InputFormat::Csv,
        _ => InputFormat::Json,
    }
}

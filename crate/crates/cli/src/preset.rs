//! Preset strings for `ghom gen` and groupoid file loading.

use std::fs;
use std::path::Path;

use groupoid_homology::{Error, FiniteGroupoid, GroupoidFile};

use crate::CliError;

/// Reads and validates a groupoid file.
pub fn load(path: &Path) -> Result<FiniteGroupoid, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let file: GroupoidFile =
        serde_json::from_str(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })?;
    Ok(FiniteGroupoid::from_file(&file)?)
}

fn number(field: &str, raw: &str, preset: &str) -> Result<usize, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| Error::InvalidPreset(format!("{preset}: field {field} = {raw:?} is not a nonnegative integer")).into())
}

/// `units:k`, `cyclic:m`, `pair:k`, `action:m:p0,p1,...` or `union:a.json,b.json`.
pub fn build(preset: &str) -> Result<FiniteGroupoid, CliError> {
    let (kind, rest) = preset
        .split_once(':')
        .ok_or_else(|| Error::InvalidPreset(format!("{preset}: expected kind:arguments")))?;
    match kind {
        "units" => Ok(FiniteGroupoid::units(number("k", rest, preset)?)),
        "cyclic" => {
            let m = number("m", rest, preset)?;
            if m == 0 {
                return Err(Error::InvalidPreset(format!("{preset}: cyclic order must be positive")).into());
            }
            Ok(FiniteGroupoid::one_object_cyclic(m)?)
        }
        "pair" => Ok(FiniteGroupoid::pair(number("k", rest, preset)?)),
        "action" => {
            let (m, perm) = rest
                .split_once(':')
                .ok_or_else(|| Error::InvalidPreset(format!("{preset}: expected action:m:perm")))?;
            let m = number("m", m, preset)?;
            let perm = perm
                .split(',')
                .enumerate()
                .map(|(i, x)| number(&format!("perm[{i}]"), x, preset))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FiniteGroupoid::action(m, &perm)?)
        }
        "union" => {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| Error::InvalidPreset(format!("{preset}: expected union:file1,file2")))?;
            Ok(FiniteGroupoid::disjoint_union(&load(Path::new(a))?, &load(Path::new(b))?))
        }
        other => Err(Error::InvalidPreset(format!("{preset}: unknown kind {other:?}")).into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        assert_eq!(build("units:3").unwrap().arrow_count(), 3);
        assert_eq!(build("cyclic:6").unwrap().arrow_count(), 6);
        assert_eq!(build("pair:2").unwrap().arrow_count(), 4);
        assert_eq!(build("action:2:1,0,2").unwrap().arrow_count(), 6);
    }

    #[test]
    fn bad_presets_name_the_field() {
        let e = build("action:2:1,x").unwrap_err().to_string();
        assert!(e.contains("perm[1]"), "{e}");
        assert!(build("cyclic:0").is_err());
        assert!(build("torus:2").is_err());
        assert!(build("action:3:1,0").is_err());
        assert!(build("union:/nonexistent/a.json,/nonexistent/b.json").is_err());
    }
}

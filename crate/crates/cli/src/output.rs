//! Deterministic file output: 17-significant-digit floats, LF endings,
//! atomic writes (temp file + rename).

use std::path::Path;

use crate::CliError;

/// 17 significant digits, enough to round-trip any f64.
pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    std::fs::write(&tmp, contents)
        .and_then(|_| std::fs::rename(&tmp, path))
        .map_err(|err| CliError::Io(format!("writing {}: {err}", path.display())))
}

pub fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid json"));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_is_fixed_width_scientific() {
        assert_eq!(float(0.6), "5.9999999999999998e-1");
        assert_eq!(float(0.0), "0.0000000000000000e0");
        assert_eq!(float(-1.0), "-1.0000000000000000e0");
    }
}

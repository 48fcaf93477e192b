use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const MANIFEST_NAME: &str = "manifest.txt";

/// Hex SHA-256 of `bytes`.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Run description written next to the outputs as `manifest.txt`.
#[derive(Clone, Debug, Default)]
pub struct Manifest {
    pub command: String,
    /// Parameters in `key = value` form.
    pub parameters: String,
    pub wall_time: Duration,
    /// Output files relative to the output directory.
    pub files: Vec<PathBuf>,
}

impl Manifest {
    /// Renders the manifest, hashing every listed file under `dir`.
    pub fn render(&self, dir: &Path) -> Result<String> {
        let mut out = String::new();
        let _ = writeln!(out, "version = {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "command = {}", self.command);
        let _ = writeln!(out, "wall_time_s = {:.3}", self.wall_time.as_secs_f64());
        let _ = writeln!(out, "[parameters]");
        out.push_str(&self.parameters);
        let _ = writeln!(out, "[files]");
        for f in &self.files {
            let path = dir.join(f);
            let bytes = std::fs::read(&path).map_err(|e| Error::io(&path, e))?;
            let _ = writeln!(out, "{} sha256={}", f.display(), sha256_hex(&bytes));
        }
        Ok(out)
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let text = self.render(dir)?;
        let path = dir.join(MANIFEST_NAME);
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }
}

/// Writes `contents` to `dir/name`, creating `dir`, and returns `name`.
pub fn write_output(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(PathBuf::from(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn lists_files_with_checksums() {
        let dir = tempfile::tempdir().unwrap();
        let name = write_output(dir.path(), "a.csv", "x,u\n").unwrap();
        let m = Manifest {
            command: "simulate".into(),
            parameters: "cfl = 0.9\n".into(),
            wall_time: Duration::from_millis(1500),
            files: vec![name],
        };
        let path = m.write(dir.path()).unwrap();
        let text = std::fs::read_to_string(path).unwrap();
        assert!(text.contains("wall_time_s = 1.500"));
        assert!(text.contains(&format!("a.csv sha256={}", sha256_hex(b"x,u\n"))));
        assert!(text.contains("cfl = 0.9"));
    }
}

use std::fs;
use std::io::Write;
use std::path::Path;

use super::IntSet;
use crate::error::{Error, Result};

/// Reads one decimal integer per line. Lines starting with `#` and blank
/// lines are skipped; duplicates are merged.
pub fn read_set_file(path: impl AsRef<Path>) -> Result<IntSet> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut v = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let x: i64 = t.parse().map_err(|_| Error::FileFormat {
            path: path.to_path_buf(),
            line: i + 1,
            message: format!("expected a decimal integer, found {t:?}"),
        })?;
        v.push(x);
    }
    IntSet::new(v).map_err(|e| Error::FileFormat {
        path: path.to_path_buf(),
        line: 0,
        message: e.to_string(),
    })
}

pub fn write_set_file(path: impl AsRef<Path>, set: &IntSet) -> Result<()> {
    let path = path.as_ref();
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut buf = String::with_capacity(set.len() * 8);
    for x in set.iter() {
        buf.push_str(&x.to_string());
        buf.push('\n');
    }
    f.write_all(buf.as_bytes()).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_duplicates() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.txt");
        fs::write(&p, "# header\n5\n3\n\n5\n-2\n").unwrap();
        assert_eq!(read_set_file(&p).unwrap().as_slice(), &[-2, 3, 5]);
        fs::write(&p, "1\nabc\n").unwrap();
        match read_set_file(&p).unwrap_err() {
            Error::FileFormat { line, .. } => assert_eq!(line, 2),
            e => panic!("{e}"),
        }
        assert!(matches!(
            read_set_file(dir.path().join("missing")),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn write_then_read() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.txt");
        let s = IntSet::new([9, -4, 0]).unwrap();
        write_set_file(&p, &s).unwrap();
        assert_eq!(read_set_file(&p).unwrap(), s);
    }
}

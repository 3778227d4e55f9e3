use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypercube::Word;

use super::{Code, ExplicitCode, LinearCode};

/// Parses the line-oriented code format: a header `linear n k` or
/// `explicit n m` followed by one `{0,1}^n` row per line. Blank lines and
/// `#` comments are ignored.
pub fn parse_code(text: &str) -> Result<Code> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty code file".into() })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad = |msg: &str| Error::Parse { line: hline, msg: msg.to_string() };
    if fields.len() != 3 {
        return Err(bad("header must be `linear n k` or `explicit n m`"));
    }
    let n: usize = fields[1].parse().map_err(|_| bad("bad length"))?;
    let count: usize = fields[2].parse().map_err(|_| bad("bad row count"))?;
    let mut rows = Vec::with_capacity(count);
    for (lineno, line) in lines {
        let w = Word::parse(line).map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })?;
        if w.n() != n {
            return Err(Error::Parse { line: lineno, msg: format!("row has length {}, expected {n}", w.n()) });
        }
        rows.push(w.bits());
    }
    if rows.len() != count {
        return Err(bad(&format!("header announces {count} rows, found {}", rows.len())));
    }
    match fields[0] {
        "linear" => Ok(Code::Linear(LinearCode::from_independent_rows(n, rows)?)),
        "explicit" => Ok(Code::Explicit(ExplicitCode::new(n, rows)?)),
        _ => Err(bad("header must start with `linear` or `explicit`")),
    }
}

pub fn read_code(path: &Path) -> Result<Code> {
    parse_code(&std::fs::read_to_string(path)?)
}

pub fn format_code(code: &Code) -> String {
    let mut out = String::new();
    let n = code.n();
    let rows: Vec<u32> = match code {
        Code::Linear(c) => {
            let _ = writeln!(out, "linear {n} {}", c.k());
            c.rows().to_vec()
        }
        Code::Explicit(c) => {
            let _ = writeln!(out, "explicit {n} {}", c.words().len());
            c.words().to_vec()
        }
    };
    for r in rows {
        let _ = writeln!(out, "{}", Word::new(r, n).expect("row fits"));
    }
    out
}

pub fn write_code(code: &Code, path: &Path) -> Result<()> {
    std::fs::write(path, format_code(code))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::hamming;

    #[test]
    fn roundtrip() {
        let c = Code::Linear(hamming(3).unwrap());
        let text = format_code(&c);
        assert!(text.starts_with("linear 7 4\n"));
        assert_eq!(parse_code(&text).unwrap(), c);
        let e = Code::Explicit(ExplicitCode::new(4, [0, 5, 15]).unwrap());
        assert_eq!(parse_code(&format_code(&e)).unwrap(), e);
    }

    #[test]
    fn parse_errors_carry_lines() {
        match parse_code("linear 3 1\n10\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_code("linear 3 2\n100\n").is_err());
        assert!(parse_code("affine 3 1\n100\n").is_err());
        assert!(parse_code("").is_err());
    }
}

//! Plain-text ideal files:
//!
//! ```text
//! p 3
//! vars x,y,z
//! x^2 + y
//! x*z - 1
//! ```
//! Blank lines and lines starting with `#` are ignored; every other line
//! after the header is one generator.

use super::Ideal;
use crate::error::{Error, Result};
use crate::poly::{parse_polynomial, RingSpec};

pub fn parse_ideal_file(text: &str) -> Result<Ideal> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (header_line, header) = lines.next().ok_or(Error::IdealFile {
        line: 1,
        msg: "missing `p <prime>` header".into(),
    })?;
    let p = header
        .strip_prefix('p')
        .filter(|rest| rest.starts_with(char::is_whitespace))
        .and_then(|rest| rest.trim().parse::<u64>().ok())
        .ok_or_else(|| Error::IdealFile {
            line: header_line,
            msg: format!("expected `p <prime>`, found `{header}`"),
        })?;
    let (line, vars_line) = lines.next().ok_or(Error::IdealFile {
        line: header_line + 1,
        msg: "missing `vars` line".into(),
    })?;
    let vars: Vec<&str> = vars_line
        .strip_prefix("vars")
        .filter(|rest| rest.is_empty() || rest.starts_with(char::is_whitespace))
        .map(|rest| rest.split(',').map(str::trim).filter(|v| !v.is_empty()).collect())
        .ok_or_else(|| Error::IdealFile {
            line,
            msg: format!("expected `vars a,b,...`, found `{vars_line}`"),
        })?;
    let ring = RingSpec::new(p, &vars).map_err(|e| Error::IdealFile {
        line: if matches!(e, Error::NotPrime(_)) { header_line } else { line },
        msg: e.to_string(),
    })?;
    let mut gens = Vec::new();
    for (line, src) in lines {
        let f = parse_polynomial(src, &ring).map_err(|e| Error::IdealFile {
            line,
            msg: e.to_string(),
        })?;
        gens.push(f);
    }
    Ideal::new(&ring, gens)
}

pub fn render_ideal_file(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    let mut out = format!("p {}\nvars {}\n", ring.characteristic(), ring.variables().join(","));
    for g in ideal.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "# sample\np 3\nvars x,y\n\nx^2 + 2*x*y - y\n# comment\n3*x\ny\n";
        let i = parse_ideal_file(text).unwrap();
        assert_eq!(i.generators().len(), 2);
        let again = parse_ideal_file(&render_ideal_file(&i)).unwrap();
        assert_eq!(again.generators(), i.generators());
        assert_eq!(render_ideal_file(&i), "p 3\nvars x,y\nx^2 + 2*x*y + 2*y\ny\n");
    }

    #[test]
    fn header_errors_carry_line_numbers() {
        assert!(matches!(parse_ideal_file(""), Err(Error::IdealFile { line: 1, .. })));
        assert!(matches!(parse_ideal_file("p 4\nvars x"), Err(Error::IdealFile { line: 1, .. })));
        assert!(matches!(parse_ideal_file("p 5\nvars x,x"), Err(Error::IdealFile { line: 2, .. })));
        assert!(matches!(parse_ideal_file("q 3\nvars x"), Err(Error::IdealFile { line: 1, .. })));
        assert!(matches!(
            parse_ideal_file("p 3\nvars x\nx + z"),
            Err(Error::IdealFile { line: 3, .. })
        ));
    }
}

use crate::error::{Error, Result};
use crate::presentations::{Factor, Presentation, Word, NATIVE_HEADER};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Parses the native presentation format.
///
/// The version header is optional, blank lines and lines starting with `#`
/// are skipped, and a bare generator name stands for exponent 1.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut gens: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed == NATIVE_HEADER {
            if gens.is_some() || !relators.is_empty() {
                return Err(syntax(lineno, 1, "header after the generator line"));
            }
            continue;
        }
        match &gens {
            None => gens = Some(parse_gens(raw, lineno)?),
            Some(g) => relators.push(parse_word(raw, lineno, g)?),
        }
    }
    let gens = gens.ok_or_else(|| syntax(1, 1, "missing `gens:` line"))?;
    Presentation::new(gens, relators)
}

fn parse_gens(raw: &str, lineno: usize) -> Result<Vec<String>> {
    let indent = raw.len() - raw.trim_start().len();
    let rest = raw
        .trim_start()
        .strip_prefix("gens:")
        .ok_or_else(|| syntax(lineno, indent + 1, "expected `gens:`"))?;
    let mut out: Vec<String> = Vec::new();
    let base = indent + "gens:".len();
    let mut col = base;
    for tok in rest.split(' ') {
        let start = col + 1;
        col += tok.len() + 1;
        if tok.is_empty() {
            continue;
        }
        if let Some(off) = tok.find(|c: char| !is_name_char(c)) {
            return Err(syntax(lineno, start + off, format!("invalid character in generator name `{tok}`")));
        }
        if out.iter().any(|g| g == tok) {
            return Err(syntax(lineno, start, format!("duplicate generator `{tok}`")));
        }
        out.push(tok.to_string());
    }
    Ok(out)
}

fn parse_word(raw: &str, lineno: usize, gens: &[String]) -> Result<Word> {
    let chars: Vec<char> = raw.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut factors = Vec::new();
    loop {
        skip_ws(&mut pos);
        let start = pos;
        while pos < chars.len() && is_name_char(chars[pos]) {
            pos += 1;
        }
        if start == pos {
            let msg = match chars.get(pos) {
                Some(c) => format!("expected generator name, found `{c}`"),
                None => "expected generator name".to_string(),
            };
            return Err(syntax(lineno, pos + 1, msg));
        }
        let name: String = chars[start..pos].iter().collect();
        let generator = gens
            .iter()
            .position(|g| *g == name)
            .ok_or_else(|| syntax(lineno, start + 1, format!("unknown generator `{name}`")))?;
        let mut exponent = 1i64;
        if chars.get(pos) == Some(&'^') {
            pos += 1;
            let num_start = pos;
            if chars.get(pos) == Some(&'-') {
                pos += 1;
            }
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[num_start..pos].iter().collect();
            exponent = digits
                .parse()
                .map_err(|_| syntax(lineno, num_start + 1, "expected integer exponent"))?;
            if exponent == 0 {
                return Err(syntax(lineno, num_start + 1, "zero exponent"));
            }
        }
        factors.push(Factor { generator, exponent });
        skip_ws(&mut pos);
        match chars.get(pos) {
            None => break,
            Some('*') => pos += 1,
            Some(c) => return Err(syntax(lineno, pos + 1, format!("expected `*`, found `{c}`"))),
        }
    }
    Word::from_factors(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal() {
        let p = parse_presentation("gens: x\nx^5").unwrap();
        assert_eq!(p.generators(), &["x"]);
        assert_eq!(p.relators().len(), 1);
        assert_eq!(p.relators()[0].factors(), &[Factor { generator: 0, exponent: 5 }]);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_presentation("gens: x\nx^") {
            Err(Error::Syntax { line: 2, column: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        match parse_presentation("gens: x y\nx^2 * q^1") {
            Err(Error::Syntax { line: 2, column: 7, message }) => assert!(message.contains("unknown")),
            other => panic!("{other:?}"),
        }
        match parse_presentation("gens: x\nx^0") {
            Err(Error::Syntax { line: 2, message, .. }) => assert!(message.contains("zero")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_presentation("x^2"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_presentation(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("gens: x x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_presentation("gens: x\nx^2 x^3"), Err(Error::Syntax { column: 5, .. })));
    }

    #[test]
    fn header_is_optional() {
        let a = parse_presentation("tensq-pres v1\ngens: a b\na^2\nb^-3 * a^1\n").unwrap();
        let b = parse_presentation("gens: a b\na^2\nb^-3*a\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_native(), "tensq-pres v1\ngens: a b\na^2\nb^-3 * a^1\n");
    }
}

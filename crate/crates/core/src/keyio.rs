//! Line-based text formats for keys and ciphertexts.
//!
//! ```text
//! POLYRSA PUBLIC v1        POLYRSA PRIVATE v1       POLYRSA CIPHERTEXT v1
//! p=<decimal>              p=<decimal>              p=<decimal>
//! e=<decimal>              e=<decimal>              n=<decimal>
//! f=<poly>                 d=<decimal>              blocks=<decimal>
//!                          b=<decimal>              <poly>
//!                          factor=<poly>            ...
//!                          ...
//! ```
//!
//! `<poly>` is comma-separated decimal coefficients, low-to-high, with `0`
//! for the zero polynomial. Lines end in LF and the final newline is
//! required. Loading re-validates the key invariants.

use num_bigint::BigUint;

use crate::cipher::Ciphertext;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::keygen::{PrivateKey, PublicKey};
use crate::poly::Poly;

const VERSION: &str = "v1";
const MAGIC: &str = "POLYRSA";

pub fn save_public(key: &PublicKey) -> String {
    format!(
        "{MAGIC} PUBLIC {VERSION}\np={}\ne={}\nf={}\n",
        key.field().p(),
        key.e(),
        key.modulus().to_text()
    )
}

pub fn save_private(key: &PrivateKey) -> String {
    let mut out = format!(
        "{MAGIC} PRIVATE {VERSION}\np={}\ne={}\nd={}\nb={}\n",
        key.field().p(),
        key.public().e(),
        key.d(),
        key.factors().len()
    );
    for f in key.factors() {
        out.push_str("factor=");
        out.push_str(&f.to_text());
        out.push('\n');
    }
    out
}

pub fn save_ciphertext(ct: &Ciphertext) -> String {
    let mut out = format!(
        "{MAGIC} CIPHERTEXT {VERSION}\np={}\nn={}\nblocks={}\n",
        ct.field.p(),
        ct.degree,
        ct.blocks.len()
    );
    for block in &ct.blocks {
        out.push_str(&block.to_text());
        out.push('\n');
    }
    out
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    next: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Result<Self> {
        if let Some(pos) = text.find('\r') {
            let line = text[..pos].matches('\n').count() + 1;
            return Err(parse_err(
                line,
                "carriage return in input; LF line endings required",
            ));
        }
        let body = text
            .strip_suffix('\n')
            .ok_or_else(|| parse_err(text.matches('\n').count() + 1, "missing trailing newline"))?;
        Ok(Self {
            lines: body.split('\n').collect(),
            next: 0,
        })
    }

    /// 1-based number of the line most recently returned.
    fn line_no(&self) -> usize {
        self.next
    }

    fn take(&mut self) -> Result<&'a str> {
        let line = self
            .lines
            .get(self.next)
            .copied()
            .ok_or_else(|| parse_err(self.next + 1, "unexpected end of file"))?;
        self.next += 1;
        Ok(line)
    }

    fn header(&mut self, kind: &str) -> Result<()> {
        let line = self.take()?;
        let parts: Vec<&str> = line.split(' ').collect();
        match parts.as_slice() {
            [MAGIC, k, VERSION] if *k == kind => Ok(()),
            [MAGIC, k, version] if *k == kind => Err(Error::Version(version.to_string())),
            _ => Err(parse_err(
                1,
                &format!("expected header \"{MAGIC} {kind} {VERSION}\", found {line:?}"),
            )),
        }
    }

    fn value(&mut self, key: &str) -> Result<&'a str> {
        let line = self.take()?;
        line.strip_prefix(key)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| {
                parse_err(
                    self.line_no(),
                    &format!("expected \"{key}=\", found {line:?}"),
                )
            })
    }

    fn decimal(&mut self, key: &str) -> Result<BigUint> {
        let raw = self.value(key)?;
        parse_decimal(raw).map_err(|m| parse_err(self.line_no(), &format!("{key}: {m}")))
    }

    fn small(&mut self, key: &str) -> Result<u64> {
        let v = self.decimal(key)?;
        u64::try_from(&v).map_err(|_| parse_err(self.line_no(), &format!("{key}={v} is too large")))
    }

    fn field(&mut self) -> Result<FieldSpec> {
        let p = self.small("p")?;
        FieldSpec::new(p).map_err(|e| parse_err(self.line_no(), &e.to_string()))
    }

    fn poly(&mut self, key: Option<&str>, field: FieldSpec) -> Result<Poly> {
        let raw = match key {
            Some(k) => self.value(k)?,
            None => self.take()?,
        };
        Poly::parse_text(field, raw).map_err(|m| parse_err(self.line_no(), &m))
    }

    fn finish(&self) -> Result<()> {
        if self.next < self.lines.len() {
            return Err(parse_err(self.next + 1, "unexpected trailing content"));
        }
        Ok(())
    }
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

/// Plain ASCII decimal without sign or leading zeros.
fn parse_decimal(s: &str) -> std::result::Result<BigUint, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("{s:?} is not a decimal integer"));
    }
    if s.len() > 1 && s.starts_with('0') {
        return Err(format!("{s:?} has leading zeros"));
    }
    BigUint::parse_bytes(s.as_bytes(), 10).ok_or_else(|| format!("{s:?} is not a decimal integer"))
}

fn invariant(e: Error) -> Error {
    match e {
        Error::InvariantViolation(_) => e,
        other => Error::InvariantViolation(other.to_string()),
    }
}

pub fn load_public(text: &str) -> Result<PublicKey> {
    let mut lines = Lines::new(text)?;
    lines.header("PUBLIC")?;
    let field = lines.field()?;
    let e = lines.decimal("e")?;
    let f = lines.poly(Some("f"), field)?;
    lines.finish()?;
    PublicKey::new(f, e)
}

pub fn load_private(text: &str) -> Result<PrivateKey> {
    let mut lines = Lines::new(text)?;
    lines.header("PRIVATE")?;
    let field = lines.field()?;
    let e = lines.decimal("e")?;
    let d = lines.decimal("d")?;
    let b = lines.small("b")?;
    if b == 0 {
        return Err(parse_err(lines.line_no(), "b must be at least 1"));
    }
    let factors = (0..b)
        .map(|_| lines.poly(Some("factor"), field))
        .collect::<Result<Vec<_>>>()?;
    lines.finish()?;
    PrivateKey::from_factors(field, factors, e, d).map_err(invariant)
}

pub fn load_ciphertext(text: &str) -> Result<Ciphertext> {
    let mut lines = Lines::new(text)?;
    lines.header("CIPHERTEXT")?;
    let field = lines.field()?;
    let degree = lines.small("n")? as usize;
    if degree < 1 {
        return Err(parse_err(lines.line_no(), "n must be at least 1"));
    }
    let count = lines.small("blocks")?;
    let blocks = (0..count)
        .map(|_| {
            let block = lines.poly(None, field)?;
            if block.degree() >= degree as isize {
                return Err(parse_err(
                    lines.line_no(),
                    &format!("block degree {} is not below n = {degree}", block.degree()),
                ));
            }
            Ok(block)
        })
        .collect::<Result<Vec<_>>>()?;
    lines.finish()?;
    Ok(Ciphertext {
        field,
        degree,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_PRIVATE: &str = "POLYRSA PRIVATE v1\np=2\ne=34\nd=13\nb=3\n\
factor=1,1,0,1\nfactor=1,0,1,1\nfactor=1,1,1\n";

    #[test]
    fn private_key_golden() {
        let key = load_private(EXAMPLE_PRIVATE).unwrap();
        assert_eq!(key.d(), &BigUint::from(13u32));
        assert_eq!(save_private(&key), EXAMPLE_PRIVATE);
        assert_eq!(
            save_public(key.public()),
            "POLYRSA PUBLIC v1\np=2\ne=34\nf=1,0,1,1,1,1,1,0,1\n"
        );
        let public = load_public(&save_public(key.public())).unwrap();
        assert_eq!(&public, key.public());
    }

    #[test]
    fn tampered_private_exponent() {
        let tampered = EXAMPLE_PRIVATE.replace("d=13", "d=14");
        assert!(matches!(
            load_private(&tampered),
            Err(Error::InvariantViolation(_))
        ));
        let reducible = EXAMPLE_PRIVATE.replace("factor=1,1,1", "factor=1,0,1");
        assert!(matches!(
            load_private(&reducible),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn version_and_syntax_errors() {
        let v9 = EXAMPLE_PRIVATE.replace("v1", "v9");
        assert_eq!(load_private(&v9), Err(Error::Version("v9".into())));
        assert!(matches!(
            load_public(EXAMPLE_PRIVATE),
            Err(Error::Parse { line: 1, .. })
        ));
        let no_newline = EXAMPLE_PRIVATE.trim_end();
        assert!(matches!(load_private(no_newline), Err(Error::Parse { .. })));
        let crlf = EXAMPLE_PRIVATE.replace('\n', "\r\n");
        assert!(matches!(
            load_private(&crlf),
            Err(Error::Parse { line: 1, .. })
        ));
        let bad_d = EXAMPLE_PRIVATE.replace("d=13", "d=1x");
        assert!(matches!(
            load_private(&bad_d),
            Err(Error::Parse { line: 4, .. })
        ));
        let padded = EXAMPLE_PRIVATE.replace("d=13", "d=013");
        assert!(matches!(
            load_private(&padded),
            Err(Error::Parse { line: 4, .. })
        ));
        let missing = EXAMPLE_PRIVATE.replace("b=3", "b=4");
        assert!(matches!(
            load_private(&missing),
            Err(Error::Parse { line: 9, .. })
        ));
        let extra = format!("{EXAMPLE_PRIVATE}factor=1,1\n");
        assert!(matches!(
            load_private(&extra),
            Err(Error::Parse { line: 9, .. })
        ));
        let composite = EXAMPLE_PRIVATE.replace("p=2", "p=4");
        assert!(matches!(
            load_private(&composite),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn ciphertext_format() {
        let field = FieldSpec::gf2();
        let ct = Ciphertext {
            field,
            degree: 8,
            blocks: vec![
                Poly::parse_text(field, "1,0,1,1,1,1").unwrap(),
                Poly::zero(field),
            ],
        };
        let text = save_ciphertext(&ct);
        assert_eq!(
            text,
            "POLYRSA CIPHERTEXT v1\np=2\nn=8\nblocks=2\n1,0,1,1,1,1\n0\n"
        );
        assert_eq!(load_ciphertext(&text).unwrap(), ct);
        let oversized = text.replace("1,0,1,1,1,1\n", "1,0,1,1,1,1,0,0,1\n");
        assert!(matches!(
            load_ciphertext(&oversized),
            Err(Error::Parse { line: 5, .. })
        ));
        let short = text.replace("blocks=2", "blocks=3");
        assert!(matches!(load_ciphertext(&short), Err(Error::Parse { .. })));
    }
}

//! Ideal text format: a `ring:` header line followed by one generator per line.
//!
//! ```text
//! ring: QQ[x,y,t] order=block(1)
//! x - t
//! y - t^2
//! ```

use std::sync::Arc;

use super::Ideal;
use crate::algebra::{Field, MonomialOrder, Ring};
use crate::error::{Error, Result};

pub(crate) fn format_ideal(i: &Ideal) -> String {
    let r = i.ring();
    let mut out = format!(
        "ring: {}[{}] order={}\n",
        r.field(),
        r.vars().join(","),
        r.order()
    );
    for g in i.gens() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

fn parse_order(s: &str) -> Result<MonomialOrder> {
    match s {
        "grevlex" => Ok(MonomialOrder::GrevLex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => s
            .strip_prefix("block(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|k| k.parse().ok())
            .map(MonomialOrder::Block)
            .ok_or_else(|| Error::Parse(format!("unknown monomial order `{s}`"))),
    }
}

fn parse_header(line: &str) -> Result<Arc<Ring>> {
    let body = line
        .strip_prefix("ring:")
        .ok_or_else(|| Error::Parse("missing `ring:` header".into()))?
        .trim();
    let open = body
        .find('[')
        .ok_or_else(|| Error::Parse("expected `[` in ring header".into()))?;
    let close = body
        .find(']')
        .ok_or_else(|| Error::Parse("expected `]` in ring header".into()))?;
    let field = match body[..open].trim() {
        "QQ" => Field::Rational,
        f => {
            let p = f
                .strip_prefix("GF(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|p| p.parse().ok())
                .ok_or_else(|| Error::Parse(format!("unknown field `{f}`")))?;
            Field::prime(p)?
        }
    };
    let vars: Vec<&str> = body[open + 1..close]
        .split(',')
        .map(str::trim)
        .filter(|v| !v.is_empty())
        .collect();
    if vars.is_empty() {
        return Err(Error::Parse("ring without variables".into()));
    }
    let rest = body[close + 1..].trim();
    let order = match rest.strip_prefix("order=") {
        Some(o) => parse_order(o.trim())?,
        None if rest.is_empty() => MonomialOrder::GrevLex,
        None => return Err(Error::Parse(format!("unexpected `{rest}` in header"))),
    };
    Ok(Ring::new(&vars, field, order))
}

/// Parses the ideal text format; blank lines and lines starting with `#` are skipped.
pub fn parse_ideal(text: &str) -> Result<Ideal> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let ring = parse_header(lines.next().ok_or_else(|| Error::Parse("empty input".into()))?)?;
    let gens = lines.map(|l| ring.parse(l)).collect::<Result<Vec<_>>>()?;
    Ideal::new(&ring, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let txt = "ring: GF(7)[x,y,t] order=block(1)\nx + 6*t\n6*t^2 + y\n";
        let i = parse_ideal(txt).unwrap();
        assert_eq!(i.ring().field(), Field::Prime(7));
        assert_eq!(i.ring().order(), MonomialOrder::Block(1));
        assert_eq!(format_ideal(&i), txt);
        let j = parse_ideal(&format_ideal(&i)).unwrap();
        assert_eq!(j.gens(), i.gens());
    }

    #[test]
    fn header_errors() {
        assert!(parse_ideal("x + y").is_err());
        assert!(parse_ideal("ring: GF(4)[x]").is_err());
        assert!(parse_ideal("ring: QQ[x] order=weird\nx").is_err());
        let i = parse_ideal("ring: QQ[x, y]\n# comment\nx*y").unwrap();
        assert_eq!(i.ring().order(), MonomialOrder::GrevLex);
    }
}

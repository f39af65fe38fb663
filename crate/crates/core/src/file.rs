//! Plain-text variety files.
//!
//! ```text
//! ring x0 .. x3 over Fp:1000003
//! param s0 s1
//! gen: x0*x2 - x1^2
//! par: s0^3
//! meta: name=twisted d=3 g=0 n=1
//! ```
//!
//! The `ring` line comes first and lists the coordinates either one by one
//! or as a range `x0 .. xr`. `par:` lines, if present, give the `r + 1`
//! coordinates of a parametrization in the variables of the `param` line.
//! A file without `gen:` lines is implicitized in degrees `≤ d`, so it
//! needs `d` in its `meta:` line. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use entloc_algebra::{parse_polynomial, Budget, Field, FieldDescriptor, Ideal, MonomialOrder, PolyRing};

use crate::error::{GeomError, Result};
use crate::geometry::implicitize;
use crate::variety::{Parametrization, ProjectiveVariety, VarietyMeta};

/// Header of a variety file: its field and coordinate names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub field: FieldDescriptor,
    pub vars: Vec<String>,
}

fn format_err(line: usize, msg: impl Into<String>) -> GeomError {
    GeomError::Format { line, msg: msg.into() }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Expands `x0 .. x3` into `x0 x1 x2 x3`; other names pass through.
fn expand_names(tokens: &[&str], line: usize) -> Result<Vec<String>> {
    if let [first, "..", last] = tokens {
        let split = |s: &str| {
            let digits = s.trim_start_matches(|c: char| !c.is_ascii_digit());
            let prefix = &s[..s.len() - digits.len()];
            digits.parse::<usize>().ok().map(|n| (prefix.to_string(), n))
        };
        let ((p, a), (q, b)) = split(first)
            .zip(split(last))
            .ok_or_else(|| format_err(line, "range ends must be name + index"))?;
        if p != q || a > b {
            return Err(format_err(line, "malformed variable range"));
        }
        return Ok((a..=b).map(|i| format!("{p}{i}")).collect());
    }
    if tokens.contains(&"..") {
        return Err(format_err(line, "a range is written `x0 .. xr`"));
    }
    Ok(tokens.iter().map(|s| s.to_string()).collect())
}

pub fn parse_field(text: &str) -> Result<FieldDescriptor> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(FieldDescriptor::Rational);
    }
    let p = t
        .strip_prefix("Fp:")
        .or_else(|| t.strip_prefix("fp:"))
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| format_err(1, format!("unknown field `{t}`")))?;
    Ok(FieldDescriptor::Prime(p))
}

/// Reads the `ring` line.
pub fn read_header(text: &str) -> Result<Header> {
    let (line, first) = content_lines(text)
        .next()
        .ok_or_else(|| format_err(1, "empty file"))?;
    let rest = first
        .strip_prefix("ring ")
        .ok_or_else(|| format_err(line, "first line must start with `ring`"))?;
    let (names, field) = rest
        .rsplit_once(" over ")
        .ok_or_else(|| format_err(line, "missing `over <field>`"))?;
    let tokens: Vec<&str> = names.split_whitespace().collect();
    let vars = expand_names(&tokens, line)?;
    if vars.is_empty() {
        return Err(format_err(line, "no coordinates"));
    }
    Ok(Header {
        field: parse_field(field).map_err(|_| format_err(line, format!("unknown field `{}`", field.trim())))?,
        vars,
    })
}

/// Parses a variety file over `field`, which must match the header.
pub fn parse_variety<F: Field>(text: &str, field: &F, budget: &Budget) -> Result<ProjectiveVariety<F>> {
    let header = read_header(text)?;
    if header.field != field.descriptor() {
        return Err(format_err(1, format!("file is over {}, not {}", header.field, field.descriptor())));
    }
    let ring = PolyRing::new(field.clone(), &header.vars, MonomialOrder::Grevlex)?;
    let mut param_ring = None;
    let mut gens = Vec::new();
    let mut pars = Vec::new();
    let mut meta = VarietyMeta::default();
    for (line, l) in content_lines(text).skip(1) {
        if let Some(rest) = l.strip_prefix("param ") {
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            let names = expand_names(&tokens, line)?;
            param_ring = Some(PolyRing::new(field.clone(), &names, MonomialOrder::Grevlex)?);
        } else if let Some(rest) = l.strip_prefix("gen:") {
            let g = parse_polynomial(rest, &ring).map_err(|e| format_err(line, e.to_string()))?;
            gens.push(g);
        } else if let Some(rest) = l.strip_prefix("par:") {
            let pr = param_ring
                .as_ref()
                .ok_or_else(|| format_err(line, "`par:` before the `param` line"))?;
            let p = parse_polynomial(rest, pr).map_err(|e| format_err(line, e.to_string()))?;
            pars.push(p);
        } else if let Some(rest) = l.strip_prefix("meta:") {
            for kv in rest.split_whitespace() {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| format_err(line, format!("expected key=value, got `{kv}`")))?;
                let bad = || format_err(line, format!("bad value for `{k}`"));
                match k {
                    "name" => meta.name = v.to_string(),
                    "d" => meta.d = Some(v.parse().map_err(|_| bad())?),
                    "g" => meta.g = Some(v.parse().map_err(|_| bad())?),
                    "n" => meta.n = Some(v.parse().map_err(|_| bad())?),
                    "seed" => meta.seed = Some(v.parse().map_err(|_| bad())?),
                    _ => return Err(format_err(line, format!("unknown meta key `{k}`"))),
                }
            }
        } else {
            return Err(format_err(line, format!("unrecognized line `{l}`")));
        }
    }
    if gens.is_empty() && pars.is_empty() {
        return Err(format_err(1, "no `gen:` or `par:` lines"));
    }
    let param = match param_ring {
        Some(pr) if !pars.is_empty() => {
            if pars.len() != header.vars.len() {
                return Err(format_err(1, format!("{} `par:` lines for {} coordinates", pars.len(), header.vars.len())));
            }
            Some(Parametrization::new(&pr, pars)?)
        }
        _ => None,
    };
    let ideal = if !gens.is_empty() {
        Ideal::new(&ring, gens)
    } else {
        let (Some(p), Some(d)) = (&param, meta.d) else {
            return Err(format_err(1, "a file without `gen:` lines needs `par:` lines and `d` in `meta:`"));
        };
        let ideal = implicitize(p, &ring, d as u32, budget)?;
        let h = entloc_algebra::hilbert_invariants(&ideal, budget)?;
        if h.degree != d {
            return Err(format_err(1, format!("equations of degree <= {d} cut out degree {}", h.degree)));
        }
        ideal
    };
    ProjectiveVariety::new(ideal, param, meta)
}

/// The `gen:` lines of a variety file as an ideal, homogeneous or not;
/// every other line after the header is ignored.
pub fn parse_ideal<F: Field>(text: &str, field: &F) -> Result<Ideal<F>> {
    let header = read_header(text)?;
    if header.field != field.descriptor() {
        return Err(format_err(1, format!("file is over {}, not {}", header.field, field.descriptor())));
    }
    let ring = PolyRing::new(field.clone(), &header.vars, MonomialOrder::Grevlex)?;
    let mut gens = Vec::new();
    for (line, l) in content_lines(text).skip(1) {
        if let Some(rest) = l.strip_prefix("gen:") {
            gens.push(parse_polynomial(rest, &ring).map_err(|e| format_err(line, e.to_string()))?);
        }
    }
    Ok(Ideal::new(&ring, gens))
}

/// Writes `x` in the format read by [`parse_variety`].
pub fn format_variety<F: Field>(x: &ProjectiveVariety<F>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ring {} over {}", x.ring().vars().join(" "), x.field().descriptor());
    if let Some(p) = x.parametrization() {
        let _ = writeln!(out, "param {}", p.ring().vars().join(" "));
    }
    for g in x.ideal().generators() {
        let _ = writeln!(out, "gen: {g}");
    }
    if let Some(p) = x.parametrization() {
        for f in p.forms() {
            let _ = writeln!(out, "par: {f}");
        }
    }
    let m = &x.meta;
    let mut fields = Vec::new();
    if !m.name.is_empty() {
        fields.push(format!("name={}", m.name));
    }
    if let Some(d) = m.d {
        fields.push(format!("d={d}"));
    }
    if let Some(g) = m.g {
        fields.push(format!("g={g}"));
    }
    if let Some(n) = m.n {
        fields.push(format!("n={n}"));
    }
    if let Some(s) = m.seed {
        fields.push(format!("seed={s}"));
    }
    if !fields.is_empty() {
        let _ = writeln!(out, "meta: {}", fields.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use entloc_algebra::{PrimeField, Rationals};

    const CUBIC: &str = "ring x0 .. x3 over Q\nparam s t\ngen: x0*x2 - x1^2\ngen: x1*x3 - x2^2\ngen: x0*x3 - x1*x2\npar: s^3\npar: s^2*t\npar: s*t^2\npar: t^3\nmeta: name=cubic d=3 g=0 n=1\n";

    #[test]
    fn reads_ranges_and_meta() {
        let x = parse_variety(CUBIC, &Rationals, &Budget::default()).unwrap();
        assert_eq!(x.ambient(), 3);
        assert_eq!(x.meta.d, Some(3));
        assert!(x.parametrization_consistent());
    }

    #[test]
    fn round_trip() {
        let x = parse_variety(CUBIC, &Rationals, &Budget::default()).unwrap();
        let again = parse_variety(&format_variety(&x), &Rationals, &Budget::default()).unwrap();
        assert_eq!(x.ideal().generators(), again.ideal().generators());
        assert_eq!(x.meta, again.meta);
    }

    #[test]
    fn field_mismatch_and_bad_lines() {
        let f = PrimeField::new(101).unwrap();
        assert!(matches!(parse_variety(CUBIC, &f, &Budget::default()), Err(GeomError::Format { line: 1, .. })));
        let bad = "ring x y z over Q\ngen: x*y\nfoo\n";
        assert!(matches!(parse_variety(bad, &Rationals, &Budget::default()), Err(GeomError::Format { line: 3, .. })));
        let par_only: String = CUBIC.lines().filter(|l| !l.starts_with("gen:")).collect::<Vec<_>>().join("\n");
        let x = parse_variety(&par_only, &Rationals, &Budget::default()).unwrap();
        assert_eq!(x.ideal().generators().len(), 3);
        assert_eq!(read_header("ring a b over Fp:7").unwrap().field, FieldDescriptor::Prime(7));
    }
}

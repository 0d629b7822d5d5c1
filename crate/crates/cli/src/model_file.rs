//! Line-oriented text format for Hamiltonian models.
//!
//! ```text
//! # comment
//! n=3
//! p=2
//! q=1
//! order=10
//! omega 1 753.834
//! dunham 1:2 -7.123
//! coupling 1 1:1 -0.24939
//! coupling 2 - 0
//! extra 3:1 2:3 0.19520
//! ```
//!
//! Mode indices are 1-based. `coupling <a> <spec>` is the `a`-th power of the
//! resonant pair times the number operators of `<spec>`; `extra <raise>
//! <lower>` is `Π a⁺^raise Π a^lower` plus its adjoint.

use std::fmt::Write as _;

use polyad::quantum::{HamiltonianModel, TermKind};
use polyad::ResonanceSpec;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub term: TermKind,
    /// Coefficient exactly as written.
    pub text: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelFile {
    pub n: usize,
    pub p: u32,
    pub q: u32,
    pub order: u32,
    pub entries: Vec<Entry>,
}

const HEADER_KEYS: [&str; 4] = ["n", "p", "q", "order"];

fn parse_exps(spec: &str, n: usize, line: usize) -> Result<Vec<u32>, ParseError> {
    let mut exps = vec![0; n];
    if spec == "-" {
        return Ok(exps);
    }
    for part in spec.split(',') {
        let Some((k, r)) = part.split_once(':') else {
            return fail(line, format!("expected <mode>:<power>, got {part:?}"));
        };
        let k: usize = k
            .parse()
            .or_else(|_| fail(line, format!("bad mode index {k:?}")))?;
        let r: u32 = r
            .parse()
            .or_else(|_| fail(line, format!("bad power {r:?}")))?;
        if k == 0 || k > n {
            return fail(line, format!("mode {k} outside 1..={n}"));
        }
        if r == 0 {
            return fail(line, format!("mode {k} has power 0"));
        }
        if exps[k - 1] != 0 {
            return fail(line, format!("mode {k} listed twice"));
        }
        exps[k - 1] = r;
    }
    Ok(exps)
}

fn format_exps(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, r)| **r > 0)
        .map(|(k, r)| format!("{}:{r}", k + 1))
        .collect();
    if parts.is_empty() {
        "-".into()
    } else {
        parts.join(",")
    }
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut header: [Option<u64>; 4] = [None; 4];
        let mut model: Option<HamiltonianModel> = None;
        let mut entries = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some((key, value)) = content.split_once('=') {
                let key = key.trim();
                let Some(slot) = HEADER_KEYS.iter().position(|k| *k == key) else {
                    return fail(line, format!("unknown header key {key:?}"));
                };
                if model.is_some() {
                    return fail(line, "header lines must precede terms");
                }
                if header[slot].is_some() {
                    return fail(line, format!("header key {key:?} given twice"));
                }
                let v = value
                    .trim()
                    .parse()
                    .or_else(|_| fail(line, format!("bad value for {key}: {:?}", value.trim())))?;
                header[slot] = Some(v);
                continue;
            }
            let m = match &mut model {
                Some(m) => m,
                None => {
                    let missing: Vec<&str> = HEADER_KEYS
                        .iter()
                        .zip(&header)
                        .filter(|(_, v)| v.is_none())
                        .map(|(k, _)| *k)
                        .collect();
                    if !missing.is_empty() {
                        return fail(
                            line,
                            format!("missing header keys before terms: {}", missing.join(", ")),
                        );
                    }
                    let [n, p, q, order] = header.map(Option::unwrap);
                    let spec = ResonanceSpec::new(n as usize, p as u32, q as u32)
                        .or_else(|e| fail(line, e.to_string()))?;
                    model.insert(HamiltonianModel::new(spec, order as u32))
                }
            };
            let n = m.n();
            let fields: Vec<&str> = content.split_whitespace().collect();
            let (term, text) = match fields.as_slice() {
                ["omega", k, v] => {
                    let k: usize = k
                        .parse()
                        .or_else(|_| fail(line, format!("bad mode index {k:?}")))?;
                    if k == 0 || k > n {
                        return fail(line, format!("mode {k} outside 1..={n}"));
                    }
                    let mut exps = vec![0; n];
                    exps[k - 1] = 1;
                    (TermKind::Dunham { exps }, *v)
                }
                ["dunham", spec, v] => {
                    if *spec == "-" {
                        return fail(line, "dunham term without number operators");
                    }
                    (
                        TermKind::Dunham {
                            exps: parse_exps(spec, n, line)?,
                        },
                        *v,
                    )
                }
                ["coupling", a, spec, v] => {
                    let power: u32 = a
                        .parse()
                        .or_else(|_| fail(line, format!("bad power {a:?}")))?;
                    (
                        TermKind::ResonanceCoupling {
                            power,
                            num_exps: parse_exps(spec, n, line)?,
                        },
                        *v,
                    )
                }
                ["extra", raise, lower, v] => {
                    let raise = parse_exps(raise, n, line)?;
                    let lower = parse_exps(lower, n, line)?;
                    (TermKind::ExtraCoupling { raise, lower }, *v)
                }
                [kw, ..] if ["omega", "dunham", "coupling", "extra"].contains(kw) => {
                    return fail(line, format!("wrong number of fields for {kw}"));
                }
                [kw, ..] => return fail(line, format!("unknown term keyword {kw:?}")),
                [] => unreachable!("blank lines are skipped"),
            };
            let value: f64 = text
                .parse()
                .or_else(|_| fail(line, format!("bad coefficient {text:?}")))?;
            m.insert(term.clone(), value)
                .or_else(|e| fail(line, e.to_string()))?;
            entries.push(Entry {
                term,
                text: text.to_string(),
                value,
            });
        }
        if model.is_none() && header.iter().any(Option::is_none) {
            return fail(text.lines().count().max(1), "incomplete header");
        }
        let [n, p, q, order] = header.map(Option::unwrap);
        if model.is_none() {
            ResonanceSpec::new(n as usize, p as u32, q as u32)
                .or_else(|e| fail(1, e.to_string()))?;
        }
        Ok(Self {
            n: n as usize,
            p: p as u32,
            q: q as u32,
            order: order as u32,
            entries,
        })
    }

    pub fn to_model(&self) -> polyad::Result<HamiltonianModel> {
        let spec = ResonanceSpec::new(self.n, self.p, self.q)?;
        let mut model = HamiltonianModel::new(spec, self.order);
        for e in &self.entries {
            model.insert(e.term.clone(), e.value)?;
        }
        Ok(model)
    }

    /// Every slot of `model`, coefficients in shortest round-trip form.
    pub fn from_model(model: &HamiltonianModel) -> Self {
        let spec = model.spec();
        let entries = model
            .terms()
            .map(|(t, v)| Entry {
                term: t.clone(),
                text: format!("{v}"),
                value: v,
            })
            .collect();
        Self {
            n: spec.n(),
            p: spec.p(),
            q: spec.q(),
            order: model.order(),
            entries,
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "n={}\np={}\nq={}\norder={}",
            self.n, self.p, self.q, self.order
        );
        for e in &self.entries {
            let _ = match &e.term {
                TermKind::Dunham { exps } if exps.iter().sum::<u32>() == 1 => {
                    let k = exps
                        .iter()
                        .position(|r| *r == 1)
                        .expect("one unit exponent")
                        + 1;
                    writeln!(out, "omega {k} {}", e.text)
                }
                TermKind::Dunham { exps } => {
                    writeln!(out, "dunham {} {}", format_exps(exps), e.text)
                }
                TermKind::ResonanceCoupling { power, num_exps } => {
                    writeln!(out, "coupling {power} {} {}", format_exps(num_exps), e.text)
                }
                TermKind::ExtraCoupling { raise, lower } => {
                    writeln!(
                        out,
                        "extra {} {} {}",
                        format_exps(raise),
                        format_exps(lower),
                        e.text
                    )
                }
            };
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "# test\nn=3\np=2\nq=1\norder=10\nomega 1 753.834\ndunham 1:2 -7.123\ncoupling 1 1:1 -0.24939\ncoupling 2 - 0\nextra 3:1 2:3 0.19520 # 3:1\n";

    #[test]
    fn parses_every_line_kind() {
        let f = ModelFile::parse(SMALL).unwrap();
        assert_eq!((f.n, f.p, f.q, f.order), (3, 2, 1, 10));
        assert_eq!(f.entries.len(), 5);
        assert_eq!(
            f.entries[0].term,
            TermKind::Dunham {
                exps: vec![1, 0, 0]
            }
        );
        assert_eq!(
            f.entries[2].term,
            TermKind::ResonanceCoupling {
                power: 1,
                num_exps: vec![1, 0, 0]
            }
        );
        assert_eq!(
            f.entries[3].term,
            TermKind::ResonanceCoupling {
                power: 2,
                num_exps: vec![0, 0, 0]
            }
        );
        assert_eq!(
            f.entries[4].term,
            TermKind::ExtraCoupling {
                raise: vec![0, 0, 1],
                lower: vec![0, 3, 0]
            }
        );
        assert_eq!(f.entries[4].text, "0.19520");
        assert_eq!(f.to_model().unwrap().slot_count(), 5);
    }

    #[test]
    fn serializer_preserves_coefficient_text() {
        let f = ModelFile::parse(SMALL).unwrap();
        let text = f.serialize();
        assert!(text.contains("extra 3:1 2:3 0.19520\n"));
        assert!(text.contains("omega 1 753.834\n"));
        assert_eq!(ModelFile::parse(&text).unwrap(), f);
    }

    fn err_line(text: &str) -> usize {
        ModelFile::parse(text).unwrap_err().line
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(err_line("n=3\np=2\nq=1\norder=10\nfoo 1 2\n"), 5);
        assert_eq!(err_line("n=3\nwidth=2\n"), 2);
        assert_eq!(
            err_line("n=3\np=2\nq=1\norder=10\nomega 1 1\nomega 1 2\n"),
            6
        );
        assert_eq!(
            err_line("n=3\np=2\nq=1\norder=10\nomega 1 1\ndunham 1:1 2\n"),
            6
        );
        assert_eq!(err_line("n=3\np=2\nq=1\norder=10\ndunham 1:6 1\n"), 5);
        assert_eq!(err_line("n=3\np=2\nq=1\norder=10\ncoupling 3 1:1 1\n"), 5);
        assert_eq!(err_line("n=3\np=2\nq=1\norder=10\ndunham 4:1 1\n"), 5);
        assert_eq!(err_line("n=3\np=2\nq=1\norder=10\ndunham 1:1,1:2 1\n"), 5);
        assert_eq!(err_line("n=3\np=2\nq=1\norder=10\ndunham 1:1 abc\n"), 5);
        assert_eq!(err_line("n=3\np=2\nq=1\nomega 1 1\n"), 4);
        assert_eq!(err_line("n=3\np=2\nq=1\norder=10\nomega 1 1\nq=2\n"), 6);
        assert_eq!(err_line("n=3\np=2\np=1\n"), 3);
        assert_eq!(err_line("n=3\np=2\nq=2\norder=10\nomega 1 1\n"), 5);
        assert_eq!(err_line("n=3\np=2\nq=1\norder=10\nextra 2:1 2:1 1\n"), 5);
        assert_eq!(err_line("n=3\np=2\nq=1\norder=10\nextra 2:1 1\n"), 5);
    }

    #[test]
    fn header_only_file_is_an_empty_model() {
        let f = ModelFile::parse("n=2\np=1\nq=1\norder=4\n").unwrap();
        assert!(f.entries.is_empty());
        assert!(ModelFile::parse("n=2\np=1\n").is_err());
    }
}

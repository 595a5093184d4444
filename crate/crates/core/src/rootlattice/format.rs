//! Plain-text root-datum files.
//!
//! ```text
//! # comment
//! [meta]
//! name = sl2
//! rank = 1
//! [gram]          # rank rows of rank rationals
//! 1
//! [roots]         # coords..., kind (k|n), multiplicity, sign (+|-)
//! 1  n 1 +
//! -1 n 1 -
//! [simple]        # 0-based indices into [roots]
//! 0
//! [sigma_plus]    # optional, one vector per line
//! 1
//! ```

use num_traits::Zero;

use super::{LatticeError, Q, Root, RootDatum, RootKind, WeightVector};

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Meta,
    Gram,
    Roots,
    Simple,
    SigmaPlus,
}

struct Parser<'a> {
    path: &'a str,
}

impl Parser<'_> {
    fn err(&self, line: usize, message: impl Into<String>) -> LatticeError {
        LatticeError::Parse {
            path: self.path.to_string(),
            line,
            message: message.into(),
        }
    }

    fn rational(&self, line: usize, tok: &str) -> Result<Q, LatticeError> {
        let parse_int = |s: &str| {
            s.parse::<num_bigint::BigInt>()
                .map_err(|_| self.err(line, format!("invalid rational {tok:?}")))
        };
        match tok.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(self.err(line, format!("zero denominator in {tok:?}")));
                }
                Ok(Q::new(parse_int(n)?, d))
            }
            None => Ok(Q::from_integer(parse_int(tok)?)),
        }
    }

    fn vector(&self, line: usize, toks: &[&str], rank: usize) -> Result<WeightVector, LatticeError> {
        if toks.len() != rank {
            return Err(self.err(line, format!("expected {rank} coordinates, found {}", toks.len())));
        }
        toks.iter()
            .map(|t| self.rational(line, t))
            .collect::<Result<Vec<_>, _>>()
            .map(WeightVector)
    }
}

/// Parses and validates a datum; `path` only labels diagnostics.
pub fn parse_datum(text: &str, path: &str) -> Result<RootDatum, LatticeError> {
    let p = Parser { path };
    let mut section = Section::None;
    let mut seen = Vec::new();
    let mut name: Option<String> = None;
    let mut rank: Option<usize> = None;
    let mut gram: Vec<Vec<Q>> = Vec::new();
    let mut roots: Vec<Root> = Vec::new();
    let mut simple: Vec<usize> = Vec::new();
    let mut sigma: Option<Vec<WeightVector>> = None;

    let need_rank = |rank: Option<usize>, line: usize| rank.ok_or_else(|| p.err(line, "[meta] rank must come first"));

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(header) = content.strip_prefix('[') {
            let header = header
                .strip_suffix(']')
                .ok_or_else(|| p.err(line, "unterminated section header"))?;
            section = match header.trim() {
                "meta" => Section::Meta,
                "gram" => Section::Gram,
                "roots" => Section::Roots,
                "simple" => Section::Simple,
                "sigma_plus" => {
                    sigma = Some(Vec::new());
                    Section::SigmaPlus
                }
                other => return Err(p.err(line, format!("unknown section [{other}]"))),
            };
            if seen.contains(&header.trim().to_string()) {
                return Err(p.err(line, format!("duplicate section [{}]", header.trim())));
            }
            seen.push(header.trim().to_string());
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match section {
            Section::None => return Err(p.err(line, "content before the first section")),
            Section::Meta => {
                let (key, value) = content
                    .split_once('=')
                    .ok_or_else(|| p.err(line, "expected key = value"))?;
                match key.trim() {
                    "name" => name = Some(value.trim().to_string()),
                    "rank" => {
                        let r: usize = value
                            .trim()
                            .parse()
                            .map_err(|_| p.err(line, format!("invalid rank {:?}", value.trim())))?;
                        if r == 0 {
                            return Err(p.err(line, "rank must be positive"));
                        }
                        rank = Some(r);
                    }
                    other => return Err(p.err(line, format!("unknown key {other:?} in [meta]"))),
                }
            }
            Section::Gram => {
                let r = need_rank(rank, line)?;
                gram.push(p.vector(line, &toks, r)?.0);
            }
            Section::Roots => {
                let r = need_rank(rank, line)?;
                if toks.len() != r + 3 {
                    return Err(p.err(
                        line,
                        format!("root line needs {r} coordinates, kind, multiplicity and sign"),
                    ));
                }
                let coords = p.vector(line, &toks[..r], r)?;
                let kind = match toks[r] {
                    "k" => RootKind::Compact,
                    "n" => RootKind::Noncompact,
                    other => return Err(p.err(line, format!("root kind must be k or n, found {other:?}"))),
                };
                let multiplicity: u32 = toks[r + 1]
                    .parse()
                    .map_err(|_| p.err(line, format!("invalid multiplicity {:?}", toks[r + 1])))?;
                let positive = match toks[r + 2] {
                    "+" => true,
                    "-" | "\u{2212}" => false,
                    other => return Err(p.err(line, format!("sign must be + or -, found {other:?}"))),
                };
                roots.push(Root {
                    coords,
                    kind,
                    multiplicity,
                    positive,
                });
            }
            Section::Simple => {
                for t in toks {
                    simple.push(t.parse().map_err(|_| p.err(line, format!("invalid index {t:?}")))?);
                }
            }
            Section::SigmaPlus => {
                let r = need_rank(rank, line)?;
                let v = p.vector(line, &toks, r)?;
                sigma.as_mut().expect("section opened").push(v);
            }
        }
    }

    let rank = rank.ok_or_else(|| p.err(0, "missing [meta] rank"))?;
    let name = name.unwrap_or_else(|| "unnamed".to_string());
    if gram.len() != rank {
        return Err(p.err(0, format!("[gram] needs {rank} rows, found {}", gram.len())));
    }
    RootDatum::new(name, gram, roots, simple, sigma)
}

/// Renders a datum in the file format accepted by [`parse_datum`].
pub fn render_datum(d: &RootDatum) -> String {
    let vec = |v: &[Q]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    let mut out = String::new();
    out.push_str(&format!("[meta]\nname = {}\nrank = {}\n[gram]\n", d.name(), d.rank()));
    for row in d.gram() {
        out.push_str(&vec(row));
        out.push('\n');
    }
    out.push_str("[roots]\n");
    for r in d.roots() {
        let kind = match r.kind {
            RootKind::Compact => "k",
            RootKind::Noncompact => "n",
        };
        let sign = if r.positive { "+" } else { "-" };
        out.push_str(&format!("{} {kind} {} {sign}\n", vec(&r.coords.0), r.multiplicity));
    }
    out.push_str("[simple]\n");
    out.push_str(&d.simple_indices().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
    out.push('\n');
    if let Some(sigma) = d.sigma_plus() {
        out.push_str("[sigma_plus]\n");
        for s in sigma {
            out.push_str(&vec(&s.0));
            out.push('\n');
        }
    }
    out
}

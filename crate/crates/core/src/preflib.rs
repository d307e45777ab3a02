//! PrefLib ingestion: strict complete orders and pairwise-count files.
//!
//! Two layouts are accepted. The current one has `# KEY: value` headers
//! (`NUMBER ALTERNATIVES` is required) followed by `count: a,b,c` lines. The
//! legacy one starts with the alternative count, one `id,name` line per
//! alternative, a `voters,sum,unique` line, then `count,a,b,c` lines.
//! Pairwise files use the same framing with `count: a,b` or `count,a,b`
//! meaning `count` voters prefer a to b. Ids are 1-based in files and
//! 0-based in memory.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::WeightedDigraph;
use crate::profile::{LinearOrder, Profile};

/// Upper bound on expanded voter multiplicities.
pub const MAX_VOTERS: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrefLibData {
    Profile(Profile),
    Weighted(WeightedDigraph),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Orders,
    Pairwise,
}

fn kind_from_tag(tag: &str) -> Option<Kind> {
    match tag.trim().to_ascii_lowercase().as_str() {
        "soc" | "soi" | "toc" | "toi" => Some(Kind::Orders),
        "wmg" | "pwg" | "tog" | "mjg" => Some(Kind::Pairwise),
        _ => None,
    }
}

pub fn parse_preflib(path: &Path) -> Result<PrefLibData> {
    let text = std::fs::read_to_string(path)?;
    let hint = path.extension().and_then(|e| e.to_str()).and_then(kind_from_tag);
    parse_preflib_str(&text, hint)
}

/// Parses file contents; `hint` overrides the `DATA TYPE` header.
pub fn parse_preflib_str(text: &str, hint: Option<Kind>) -> Result<PrefLibData> {
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect();
    if lines.is_empty() {
        return Err(Error::parse(1, "empty file"));
    }
    let (n, header_kind, data) =
        if lines[0].1.starts_with('#') { parse_modern_header(&lines)? } else { parse_legacy_header(&lines)? };
    let kind = hint.or(header_kind).unwrap_or(Kind::Orders);
    match kind {
        Kind::Orders => parse_orders(n, data).map(PrefLibData::Profile),
        Kind::Pairwise => parse_pairwise(n, data).map(PrefLibData::Weighted),
    }
}

type Lines<'a> = [(usize, &'a str)];

fn parse_modern_header<'a, 'b>(lines: &'b Lines<'a>) -> Result<(usize, Option<Kind>, &'b Lines<'a>)> {
    let mut n = None;
    let mut kind = None;
    let mut i = 0;
    while i < lines.len() && lines[i].1.starts_with('#') {
        let (no, l) = lines[i];
        let body = l.trim_start_matches('#').trim();
        if let Some((key, value)) = body.split_once(':') {
            match key.trim().to_ascii_uppercase().as_str() {
                "NUMBER ALTERNATIVES" => {
                    n = Some(value.trim().parse::<usize>().map_err(|_| Error::parse(no, "bad alternative count"))?)
                }
                "DATA TYPE" => kind = kind_from_tag(value),
                _ => {}
            }
        }
        i += 1;
    }
    let n = n.ok_or_else(|| Error::parse(lines[0].0, "missing NUMBER ALTERNATIVES header"))?;
    Ok((n, kind, &lines[i..]))
}

fn parse_legacy_header<'a, 'b>(lines: &'b Lines<'a>) -> Result<(usize, Option<Kind>, &'b Lines<'a>)> {
    let (no, first) = lines[0];
    let n: usize = first.parse().map_err(|_| Error::parse(no, "expected the alternative count"))?;
    if lines.len() < n + 2 {
        return Err(Error::parse(lines.last().map_or(no, |l| l.0), "truncated header"));
    }
    for (k, &(no, l)) in lines[1..=n].iter().enumerate() {
        let id = l.split(',').next().unwrap_or("").trim();
        if id.parse::<usize>().ok() != Some(k + 1) {
            return Err(Error::parse(no, format!("expected alternative {} name line", k + 1)));
        }
    }
    let (no, summary) = lines[n + 1];
    let fields: Vec<&str> = summary.split(',').map(str::trim).collect();
    if fields.len() != 3 || fields.iter().any(|f| f.parse::<u64>().is_err()) {
        return Err(Error::parse(no, "expected 'voters,sum,unique' summary line"));
    }
    Ok((n, None, &lines[n + 2..]))
}

/// Splits `count: a,b,...` or `count,a,b,...` into count and 0-based ids.
fn split_record(no: usize, line: &str, n: usize) -> Result<(u64, Vec<usize>)> {
    if line.contains('{') || line.contains('}') {
        return Err(Error::parse(no, "ties are not supported"));
    }
    let (count, rest) = match line.split_once(':') {
        Some((c, r)) => (c, r),
        None => line.split_once(',').ok_or_else(|| Error::parse(no, "expected 'count: ids'"))?,
    };
    let count: u64 = count.trim().parse().map_err(|_| Error::parse(no, "bad multiplicity"))?;
    let ids = rest
        .split(',')
        .map(|t| {
            let id: usize =
                t.trim().parse().map_err(|_| Error::parse(no, format!("bad alternative id '{}'", t.trim())))?;
            if id == 0 || id > n {
                return Err(Error::parse(no, format!("alternative {id} outside 1..={n}")));
            }
            Ok(id - 1)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((count, ids))
}

fn parse_orders(n: usize, data: &Lines) -> Result<Profile> {
    let mut voters = Vec::new();
    let mut total = 0u64;
    for &(no, line) in data {
        if line.starts_with('#') {
            continue;
        }
        let (count, ids) = split_record(no, line, n)?;
        if ids.len() != n {
            return Err(Error::parse(no, format!("incomplete order: {} of {n} alternatives", ids.len())));
        }
        let order = LinearOrder::new(ids).map_err(|_| Error::parse(no, "repeated alternative"))?;
        total += count;
        if total > MAX_VOTERS {
            return Err(Error::Cap(format!("more than {MAX_VOTERS} voters")));
        }
        voters.extend(std::iter::repeat_n(order, count as usize));
    }
    if voters.is_empty() {
        return Err(Error::parse(data.last().map_or(1, |l| l.0), "no voters"));
    }
    Profile::new(n, voters)
}

fn parse_pairwise(n: usize, data: &Lines) -> Result<WeightedDigraph> {
    let mut w = WeightedDigraph::new(n);
    for &(no, line) in data {
        if line.starts_with('#') {
            continue;
        }
        let (count, ids) = split_record(no, line, n)?;
        if ids.len() != 2 || ids[0] == ids[1] {
            return Err(Error::parse(no, "expected a pair of distinct alternatives"));
        }
        w.add(ids[0], ids[1], count as i64);
    }
    Ok(w)
}

/// Current-format serialization; consecutive equal voters are merged.
pub fn profile_to_preflib(p: &Profile) -> String {
    let mut s = format!("# DATA TYPE: soc\n# NUMBER ALTERNATIVES: {}\n# NUMBER VOTERS: {}\n", p.n(), p.k());
    let vs = p.voters();
    let mut i = 0;
    while i < vs.len() {
        let mut j = i;
        while j < vs.len() && vs[j] == vs[i] {
            j += 1;
        }
        let ids: Vec<String> = vs[i].ranking().iter().map(|a| (a + 1).to_string()).collect();
        s.push_str(&format!("{}: {}\n", j - i, ids.join(",")));
        i = j;
    }
    s
}

/// Positive margins as pairwise counts.
pub fn weighted_to_preflib(w: &WeightedDigraph) -> String {
    let mut s = format!("# DATA TYPE: wmg\n# NUMBER ALTERNATIVES: {}\n", w.n());
    for (a, b, m) in w.positive_arcs() {
        s.push_str(&format!("{m}: {},{}\n", a + 1, b + 1));
    }
    s
}

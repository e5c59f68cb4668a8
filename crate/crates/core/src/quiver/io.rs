//! Text and JSON formats for ice quivers.
//!
//! Text: first non-comment line `n m`, then one line `i j b_ij` per nonzero
//! entry (1-based, `j` mutable). Lines starting with `#` are comments; a
//! `# symmetrizer d_1 ... d_n` comment sets the symmetrizer and
//! `# names a b c ...` sets vertex labels.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::IceQuiver;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub m: usize,
    /// `[i, j, b_ij]`, 1-based.
    pub entries: Vec<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetrizer: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl From<IceQuiver> for QuiverJson {
    fn from(q: IceQuiver) -> Self {
        let mut entries = Vec::new();
        for i in 0..q.m() {
            for j in 0..q.n() {
                let b = q.b(i, j);
                if b != 0 {
                    entries.push([i as i64 + 1, j as i64 + 1, b as i64]);
                }
            }
        }
        QuiverJson {
            n: q.n(),
            m: q.m(),
            entries,
            symmetrizer: Some(q.symmetrizer().to_vec()),
            names: q.names().map(|n| n.to_vec()),
        }
    }
}

impl TryFrom<QuiverJson> for IceQuiver {
    type Error = Error;

    fn try_from(j: QuiverJson) -> Result<Self> {
        if j.m < j.n {
            return Err(Error::domain("bad_shape", "m must be at least n"));
        }
        if j.m > 4096 {
            return Err(Error::domain("too_large", "at most 4096 vertices are supported"));
        }
        let mut b = vec![0i32; j.m * j.n];
        for &[i, k, v] in &j.entries {
            if i < 1 || i as usize > j.m || k < 1 || k as usize > j.n {
                return Err(Error::domain(
                    "vertex_out_of_range",
                    format!("entry ({i}, {k}) outside the {} x {} matrix", j.m, j.n),
                ));
            }
            let v = i32::try_from(v)
                .map_err(|_| Error::domain("entry_too_large", format!("entry {v} out of range")))?;
            b[(i as usize - 1) * j.n + (k as usize - 1)] = v;
        }
        let q = IceQuiver::from_flat(j.n, j.m, b, j.symmetrizer)?;
        match j.names {
            Some(names) => q.with_names(names),
            None => Ok(q),
        }
    }
}

pub(super) fn to_text(q: &IceQuiver) -> String {
    let mut out = String::new();
    if !q.is_skew_symmetric() {
        let d: Vec<String> = q.symmetrizer().iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("# symmetrizer {}\n", d.join(" ")));
    }
    if let Some(names) = q.names() {
        out.push_str(&format!("# names {}\n", names.join(" ")));
    }
    out.push_str(&format!("{} {}\n", q.n(), q.m()));
    for i in 0..q.m() {
        for j in 0..q.n() {
            let b = q.b(i, j);
            if b != 0 {
                out.push_str(&format!("{} {} {}\n", i + 1, j + 1, b));
            }
        }
    }
    out
}

fn parse_text(s: &str) -> Result<IceQuiver> {
    let bad = |line: usize, msg: &str| Error::domain("parse", format!("line {line}: {msg}"));
    let mut shape = None;
    let mut entries = Vec::new();
    let mut symmetrizer = None;
    let mut names = None;
    for (idx, raw) in s.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            match words.next() {
                Some("symmetrizer") => {
                    let d: std::result::Result<Vec<u32>, _> = words.map(u32::from_str).collect();
                    symmetrizer = Some(d.map_err(|_| bad(idx + 1, "bad symmetrizer"))?);
                }
                Some("names") => names = Some(words.map(str::to_string).collect()),
                _ => {}
            }
            continue;
        }
        let nums: std::result::Result<Vec<i64>, _> =
            line.split_whitespace().map(i64::from_str).collect();
        let nums = nums.map_err(|_| bad(idx + 1, "expected integers"))?;
        match (shape, nums.as_slice()) {
            (None, &[n, m]) if n >= 0 && m >= 0 => shape = Some((n as usize, m as usize)),
            (None, _) => return Err(bad(idx + 1, "expected `n m`")),
            (Some(_), &[i, j, b]) => entries.push([i, j, b]),
            (Some(_), _) => return Err(bad(idx + 1, "expected `i j b`")),
        }
    }
    let (n, m) = shape.ok_or_else(|| Error::domain("parse", "missing `n m` header"))?;
    IceQuiver::try_from(QuiverJson {
        n,
        m,
        entries,
        symmetrizer,
        names,
    })
}

impl FromStr for IceQuiver {
    type Err = Error;

    /// Accepts either the text format or JSON.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            let raw: QuiverJson =
                serde_json::from_str(s).map_err(|e| Error::domain("parse", e.to_string()))?;
            IceQuiver::try_from(raw)
        } else {
            parse_text(s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let q = IceQuiver::ice_from_arrows(2, 3, &[(0, 1), (2, 0)]).unwrap();
        let text = q.to_string();
        assert_eq!(text, "2 3\n1 2 1\n2 1 -1\n3 1 1\n");
        assert_eq!(text.parse::<IceQuiver>().unwrap(), q);
    }

    #[test]
    fn json_round_trip_with_symmetrizer() {
        let g2 = IceQuiver::new(2, vec![vec![0, 3], vec![-1, 0]], None).unwrap();
        let json = serde_json::to_string(&g2).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"m":2,"entries":[[1,2,3],[2,1,-1]],"symmetrizer":[1,3]}"#
        );
        assert_eq!(json.parse::<IceQuiver>().unwrap(), g2);
        assert_eq!(g2.to_string().parse::<IceQuiver>().unwrap(), g2);
    }

    #[test]
    fn malformed_input_is_a_domain_error() {
        assert!("2\n".parse::<IceQuiver>().is_err());
        assert!("2 2\n1 2 1\n".parse::<IceQuiver>().is_err()); // not skew-symmetrizable
        assert!("2 2\n3 1 1\n".parse::<IceQuiver>().is_err());
        let e = r#"{"n":1,"m":1,"entries":[[1,1,1]]}"#.parse::<IceQuiver>().unwrap_err();
        assert_eq!(e.code(), "loop");
    }
}

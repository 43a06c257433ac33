use crate::error::{Error, Result};

/// Longest list a range may expand to.
pub const MAX_LAMBDAS: usize = 4096;

/// Parses `"1..4"`, `"1,2,8"` or a mix such as `"1..3,8"`. Ranges are
/// inclusive; the result is sorted and deduplicated.
pub fn parse_lambda_list(s: &str) -> Result<Vec<u32>> {
    let bad = |why: &str| Error::Parse(format!("lambda list {s:?}: {why}"));
    let num = |t: &str| -> Result<u32> {
        let v: u32 = t.trim().parse().map_err(|_| bad("expected a positive integer"))?;
        if v == 0 {
            return Err(bad("lambda must be positive"));
        }
        Ok(v)
    };
    let mut out = Vec::new();
    for part in s.split(',') {
        if let Some((lo, hi)) = part.split_once("..") {
            let (lo, hi) = (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?);
            if lo > hi {
                return Err(bad("empty range"));
            }
            if (hi - lo) as usize >= MAX_LAMBDAS || out.len() + (hi - lo) as usize >= MAX_LAMBDAS {
                return Err(bad("too many values"));
            }
            out.extend(lo..=hi);
        } else {
            out.push(num(part)?);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_lambda_list("1..4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_lambda_list("8,1,2").unwrap(), vec![1, 2, 8]);
        assert_eq!(parse_lambda_list("1..=2, 8").unwrap(), vec![1, 2, 8]);
        assert_eq!(parse_lambda_list("3").unwrap(), vec![3]);
    }

    #[test]
    fn rejects() {
        for s in ["", "0", "4..1", "a", "1..", "..3", "1,,2", "1..999999", "-1"] {
            assert!(parse_lambda_list(s).is_err(), "{s:?}");
        }
    }
}

//! The plain-text instance file format.
//!
//! ```text
//! ip 1
//! rows <m> cols <n>
//! b <b_1> ... <b_m>
//! row <a_1> ... <a_n>        (m lines)
//! order <p_1> ... <p_n>      (optional, a permutation of 1..n)
//! meta construction=... c=... ell=... L=...   (optional)
//! ```
//!
//! Entries are decimal integers. Text keeps the files diffable and lets
//! golden outputs be compared byte for byte; writing then parsing is the
//! identity on matrix, target, ordering and meta.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use ipwidth_core::matroid::PathOrdering;
use ipwidth_core::reductions::{IpInstance, ReductionMeta};

/// Serialises an instance in the file format above.
pub fn write_instance(inst: &IpInstance) -> String {
    let mut out = String::new();
    out.push_str("ip 1\n");
    let _ = writeln!(out, "rows {} cols {}", inst.rows(), inst.cols());
    out.push('b');
    for v in inst.b() {
        let _ = write!(out, " {v}");
    }
    out.push('\n');
    for r in 0..inst.rows() {
        out.push_str("row");
        for v in inst.row(r) {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    if let Some(ord) = inst.ordering() {
        out.push_str("order");
        for &p in ord.as_slice() {
            let _ = write!(out, " {}", p + 1);
        }
        out.push('\n');
    }
    if let Some(meta) = inst.meta() {
        match meta {
            ReductionMeta::Pathwidth { blocks, bits, levels } => {
                let _ = writeln!(out, "meta construction=pathwidth c={blocks} ell={bits} L={levels}");
            }
            ReductionMeta::Binary { blocks, bits, levels } => {
                let _ = writeln!(out, "meta construction=binary c={blocks} ell={bits} L={levels}");
            }
            ReductionMeta::Eth => {
                out.push_str("meta construction=eth\n");
            }
        }
    }
    out
}

/// Parses the file format; errors carry the offending line number.
pub fn parse_instance(text: &str) -> Result<IpInstance> {
    let mut lines = text.lines().enumerate();
    let mut next_line = || -> Result<(usize, &str)> {
        lines
            .next()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .ok_or_else(|| anyhow!("unexpected end of file"))
    };

    let (ln, header) = next_line()?;
    if header.trim() != "ip 1" {
        bail!("line {ln}: expected header `ip 1`");
    }

    let (ln, dims) = next_line()?;
    let parts: Vec<&str> = dims.split_whitespace().collect();
    let (rows, cols) = match parts.as_slice() {
        ["rows", m, "cols", n] => (
            m.parse::<usize>().with_context(|| format!("line {ln}: bad row count"))?,
            n.parse::<usize>().with_context(|| format!("line {ln}: bad column count"))?,
        ),
        _ => bail!("line {ln}: expected `rows <m> cols <n>`"),
    };

    let (ln, bline) = next_line()?;
    let b = parse_values(bline, "b", rows, ln)?;

    let mut a = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (ln, rline) = next_line()?;
        a.extend(parse_values(rline, "row", cols, ln)?);
    }

    let mut inst = IpInstance::new(rows, cols, a, b)
        .map_err(|e| anyhow!("inconsistent dimensions: {e}"))?;

    for (idx, raw) in lines {
        let ln = idx + 1;
        let line = raw.trim_end();
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("order") {
            let values: Vec<usize> = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>().with_context(|| format!("line {ln}: bad order entry")))
                .collect::<Result<_>>()?;
            if values.len() != cols || values.contains(&0) {
                bail!("line {ln}: order must list all of 1..{cols}");
            }
            let perm: Vec<usize> = values.iter().map(|&v| v - 1).collect();
            let ordering = PathOrdering::new(perm)
                .map_err(|e| anyhow!("line {ln}: {e}"))?;
            inst = inst.with_ordering(ordering).map_err(|e| anyhow!("line {ln}: {e}"))?;
        } else if let Some(rest) = line.strip_prefix("meta") {
            inst = inst.with_meta(parse_meta(rest, ln)?);
        } else {
            bail!("line {ln}: unexpected line {line:?}");
        }
    }
    Ok(inst)
}

fn parse_values(line: &str, tag: &str, count: usize, ln: usize) -> Result<Vec<i64>> {
    let mut tokens = line.split_whitespace();
    if tokens.next() != Some(tag) {
        bail!("line {ln}: expected a `{tag}` line");
    }
    let values: Vec<i64> = tokens
        .map(|t| t.parse::<i64>().with_context(|| format!("line {ln}: bad integer {t:?}")))
        .collect::<Result<_>>()?;
    if values.len() != count {
        bail!("line {ln}: expected {count} entries on `{tag}` line, found {}", values.len());
    }
    Ok(values)
}

fn parse_meta(rest: &str, ln: usize) -> Result<ReductionMeta> {
    let mut construction = None;
    let mut c = None;
    let mut ell = None;
    let mut levels = None;
    for token in rest.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| anyhow!("line {ln}: meta entries are key=value, got {token:?}"))?;
        match key {
            "construction" => construction = Some(value.to_string()),
            "c" => c = Some(value.parse::<usize>().with_context(|| format!("line {ln}: bad c"))?),
            "ell" => ell = Some(value.parse::<u32>().with_context(|| format!("line {ln}: bad ell"))?),
            "L" => levels = Some(value.parse::<u64>().with_context(|| format!("line {ln}: bad L"))?),
            _ => bail!("line {ln}: unknown meta key {key:?}"),
        }
    }
    match construction.as_deref() {
        Some("pathwidth") | Some("binary") => {
            let (Some(blocks), Some(bits), Some(levels)) = (c, ell, levels) else {
                bail!("line {ln}: blocked construction meta needs c, ell and L");
            };
            if levels != 1u64 << bits {
                bail!("line {ln}: L must equal 2^ell");
            }
            Ok(if construction.as_deref() == Some("pathwidth") {
                ReductionMeta::Pathwidth { blocks, bits, levels }
            } else {
                ReductionMeta::Binary { blocks, bits, levels }
            })
        }
        Some("eth") => Ok(ReductionMeta::Eth),
        Some(other) => bail!("line {ln}: unknown construction {other:?}"),
        None => bail!("line {ln}: meta line without construction"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ipwidth_core::cnf::CnfFormula;
    use ipwidth_core::reductions::reduce_pathwidth;

    #[test]
    fn round_trip_plain() {
        let inst = IpInstance::from_rows(
            &[vec![1, 0, 2], vec![0, 3, 1]],
            vec![5, 4],
        )
        .unwrap();
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(inst, back);
    }

    #[test]
    fn round_trip_reduction_output() {
        let phi = CnfFormula::new(3, vec![vec![1, -2], vec![2, 3]]).unwrap();
        let inst = reduce_pathwidth(&phi, 2).unwrap();
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(inst, back);
        assert!(text.starts_with("ip 1\n"));
        assert!(text.contains("meta construction=pathwidth c=2 ell=2 L=4"));
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(parse_instance("").is_err());
        assert!(parse_instance("ip 2\n").is_err());
        assert!(parse_instance("ip 1\nrows 1 cols 1\nb 1 2\nrow 1\n").is_err());
        assert!(parse_instance("ip 1\nrows 1 cols 2\nb 1\nrow 1 2\norder 1 1\n").is_err());
        assert!(parse_instance("ip 1\nrows 1 cols 1\nb 1\nrow x\n").is_err());
        assert!(parse_instance("ip 1\nrows 1 cols 1\nb 1\nrow 1\nmeta construction=pathwidth c=2 ell=1 L=3\n").is_err());
    }

    #[test]
    fn negative_entries_survive_round_trip() {
        let inst = IpInstance::from_rows(&[vec![-1, 2]], vec![-3]).unwrap();
        let back = parse_instance(&write_instance(&inst)).unwrap();
        assert_eq!(inst, back);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(128))]

        #[test]
        fn prop_write_parse_identity(
            rows in 1usize..=5,
            cols in 1usize..=6,
            entries in proptest::collection::vec(-1_000_000i64..=1_000_000, 30),
            b in proptest::collection::vec(-1_000_000i64..=1_000_000, 5),
            with_order in proptest::bool::ANY,
            rotate in 0usize..6,
        ) {
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|r| (0..cols).map(|c| entries[r * cols + c]).collect())
                .collect();
            let mut inst = IpInstance::from_rows(&data, b[..rows].to_vec()).unwrap();
            if with_order {
                let mut perm: Vec<usize> = (0..cols).collect();
                perm.rotate_left(rotate % cols.max(1));
                inst = inst.with_ordering(PathOrdering::new(perm).unwrap()).unwrap();
            }
            let text = write_instance(&inst);
            let back = parse_instance(&text).unwrap();
            proptest::prop_assert_eq!(&inst, &back);
            proptest::prop_assert_eq!(write_instance(&back), text);
        }
    }
}

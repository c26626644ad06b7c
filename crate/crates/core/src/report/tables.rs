//! Renderable documents: the kernel-size table and the maximal-quotient
//! tables, in Markdown, CSV (RFC 4180) and JSON. Output is byte-stable.

use serde::Serialize;

use crate::algebra::jennings::phi_kernel_size;
use crate::algebra::Algebra;
use crate::error::Result;
use crate::gf::FieldSpec;
use crate::group::iso;
use crate::group::{Family, Group, GroupParams, FAMILIES};
use std::sync::Arc;

/// A titled grid with one label column.
#[derive(Clone, Debug, Serialize)]
pub struct TableDoc {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub label: String,
    pub cells: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Format> {
        match s.to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(crate::error::Error::Unsupported(format!(
                "unknown format {other:?} (expected md, csv or json)"
            ))),
        }
    }
}

impl TableDoc {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.to_markdown(),
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("serializable");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("### {}\n\n", self.title));
        out.push_str(&format!("| group | {} |\n", self.columns.join(" | ")));
        out.push_str(&format!(
            "|---|{}\n",
            "---|".repeat(self.columns.len())
        ));
        for row in &self.rows {
            out.push_str(&format!(
                "| {} | {} |\n",
                row.label,
                row.cells.join(" | ")
            ));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let esc = |s: &str| -> String {
            if s.contains([',', '"', '\r', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        let mut header = vec!["group".to_string()];
        header.extend(self.columns.iter().map(|c| esc(c)));
        out.push_str(&header.join(","));
        out.push_str("\r\n");
        for row in &self.rows {
            let mut line = vec![esc(&row.label)];
            line.extend(row.cells.iter().map(|c| esc(c)));
            out.push_str(&line.join(","));
            out.push_str("\r\n");
        }
        out
    }
}

/// |K(G)| for every family at each (n, m, l) triple over GF(2^k).
/// Rows are the six families; non-canonical cells (D2/D4 at n = m) are "-".
pub fn kernel_table(triples: &[(u32, u32, u32)], k: u8) -> Result<TableDoc> {
    let field = FieldSpec::new(k)?;
    let columns: Vec<String> = triples
        .iter()
        .map(|&(n, m, l)| {
            let rel = match m.cmp(&l) {
                std::cmp::Ordering::Greater => "m > l",
                std::cmp::Ordering::Equal => "m = l",
                std::cmp::Ordering::Less => "m < l",
            };
            format!("({n},{m},{l}) [{rel}]")
        })
        .collect();
    let mut rows = Vec::new();
    for f in FAMILIES {
        let mut cells = Vec::new();
        for &(n, m, l) in triples {
            if !f.canonical_at(n, m) {
                cells.push("-".to_string());
                continue;
            }
            let group = Arc::new(Group::new(GroupParams::family(f, n, m, l)?)?);
            let alg = Algebra::new(group, field);
            cells.push(phi_kernel_size(&alg)?.to_string());
        }
        rows.push(TableRow {
            label: f.to_string(),
            cells,
        });
    }
    Ok(TableDoc {
        title: format!("Kernel sizes |K(G)| over GF(2^{k})"),
        columns,
        rows,
    })
}

/// The maximal-quotient table at (n, m, l): one row per canonical family,
/// columns (n-1, m, l), (n, m-1, l), (n, m, l-1), cells listing the
/// recognized family labels.
pub fn quotient_table(n: u32, m: u32, l: u32, budget: u64) -> Result<TableDoc> {
    let columns = vec![
        format!("({},{},{})", n.wrapping_sub(1), m, l),
        format!("({},{},{})", n, m.wrapping_sub(1), l),
        format!("({},{},{})", n, m, l.wrapping_sub(1)),
    ];
    let triples = [
        (n.wrapping_sub(1), m, l),
        (n, m.wrapping_sub(1), l),
        (n, m, l.wrapping_sub(1)),
    ];
    let mut rows = Vec::new();
    for f in FAMILIES {
        if !f.canonical_at(n, m) {
            continue;
        }
        let group = Group::new(GroupParams::family(f, n, m, l)?)?;
        let table = iso::maximal_quotient_table(&group, budget)?;
        let cells: Vec<String> = triples
            .iter()
            .map(|t| {
                table
                    .get(t)
                    .map(|fams| {
                        fams.iter()
                            .map(|f| f.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_default()
            })
            .collect();
        rows.push(TableRow {
            label: format!("{f}({n},{m},{l})"),
            cells,
        });
    }
    Ok(TableDoc {
        title: format!("Maximal quotients of the groups at ({n},{m},{l})"),
        columns,
        rows,
    })
}

/// Typed kernel-size cells for programmatic use: family -> sizes per triple.
pub fn kernel_table_values(
    triples: &[(u32, u32, u32)],
    k: u8,
) -> Result<Vec<(Family, Vec<Option<u64>>)>> {
    let field = FieldSpec::new(k)?;
    let mut out = Vec::new();
    for f in FAMILIES {
        let mut sizes = Vec::new();
        for &(n, m, l) in triples {
            if !f.canonical_at(n, m) {
                sizes.push(None);
                continue;
            }
            let group = Arc::new(Group::new(GroupParams::family(f, n, m, l)?)?);
            let alg = Algebra::new(group, field);
            sizes.push(Some(phi_kernel_size(&alg)?));
        }
        out.push((f, sizes));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_table_renders_all_formats() {
        let doc = kernel_table(&[(4, 3, 2)], 1).unwrap();
        let md = doc.render(Format::Markdown);
        assert!(md.contains("| D1 | 2 |"));
        assert!(md.contains("| D3 | 1 |"));
        let csv = doc.render(Format::Csv);
        assert!(csv.starts_with("group,"));
        assert!(csv.contains("D1,2\r\n"));
        let json = doc.render(Format::Json);
        assert!(json.contains("\"title\""));
        // Byte stability.
        assert_eq!(md, kernel_table(&[(4, 3, 2)], 1).unwrap().render(Format::Markdown));
    }

    #[test]
    fn quotient_table_d5_312_row() {
        let doc = quotient_table(3, 1, 2, 1024).unwrap();
        let row = doc.rows.iter().find(|r| r.label == "D5(3,1,2)").unwrap();
        assert_eq!(row.cells[0], "");
        assert_eq!(row.cells[1], "");
        assert!(row.cells[2].contains("D1"));
    }

    #[test]
    fn csv_escaping() {
        let doc = TableDoc {
            title: "t".into(),
            columns: vec!["a,b".into()],
            rows: vec![TableRow {
                label: "quoted \"x\"".into(),
                cells: vec!["line\nbreak".into()],
            }],
        };
        let csv = doc.to_csv();
        assert!(csv.contains("\"a,b\""));
        assert!(csv.contains("\"quoted \"\"x\"\"\""));
        assert!(csv.contains("\"line\nbreak\""));
    }
}

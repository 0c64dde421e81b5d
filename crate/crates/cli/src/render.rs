//! Flat tables for the `tsv` and `pretty` output formats.

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

fn cell(text: &str) -> String {
    text.replace(['\t', '\n'], " ")
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn tsv(&self) -> String {
        std::iter::once(&self.columns)
            .chain(&self.rows)
            .map(|r| r.iter().map(|c| cell(c)).collect::<Vec<_>>().join("\t") + "\n")
            .collect()
    }

    /// Space-padded columns for reading in a terminal.
    pub fn aligned(&self) -> String {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &self.rows {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        std::iter::once(&self.columns)
            .chain(&self.rows)
            .map(|r| {
                let padded: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{:<w$}", cell(c))).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tsv_and_aligned() {
        let mut t = Table::new(&["a", "long"]);
        t.push(vec!["xyz".into(), "1\t2".into()]);
        assert_eq!(t.tsv(), "a\tlong\nxyz\t1 2\n");
        assert_eq!(t.aligned(), "a    long\nxyz  1 2\n");
    }
}

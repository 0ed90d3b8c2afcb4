//! Sectioned result files.
//!
//! A file is a sequence of sections. Each starts with a `# section: <name>`
//! line followed by a flat CSV table whose first row is the header.

use std::collections::BTreeMap;

pub type Table = Vec<Vec<String>>;

#[derive(Debug, Default)]
pub struct SectionWriter {
    out: Vec<u8>,
}

impl SectionWriter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn section<H, R, C>(&mut self, name: &str, header: H, rows: R)
    where
        H: IntoIterator,
        H::Item: AsRef<[u8]>,
        R: IntoIterator<Item = C>,
        C: IntoIterator,
        C::Item: AsRef<[u8]>,
    {
        self.out
            .extend_from_slice(format!("# section: {name}\n").as_bytes());
        let mut w = csv::WriterBuilder::new()
            .flexible(false)
            .from_writer(&mut self.out);
        w.write_record(header).expect("in-memory write");
        for row in rows {
            w.write_record(row).expect("in-memory write");
        }
        w.flush().expect("in-memory write");
    }

    pub fn finish(self) -> String {
        String::from_utf8(self.out).expect("fields are UTF-8")
    }
}

/// Splits a sectioned file into its tables (header row included).
pub fn parse_sections(text: &str) -> BTreeMap<String, Table> {
    let mut sections = BTreeMap::new();
    let mut current: Option<(String, String)> = None;
    let flush = |cur: Option<(String, String)>, sections: &mut BTreeMap<String, Table>| {
        if let Some((name, body)) = cur {
            let rows = csv::ReaderBuilder::new()
                .has_headers(false)
                .from_reader(body.as_bytes())
                .records()
                .filter_map(Result::ok)
                .map(|r| r.iter().map(str::to_owned).collect())
                .collect();
            sections.insert(name, rows);
        }
    };
    for line in text.lines() {
        if let Some(name) = line.strip_prefix("# section: ") {
            flush(current.take(), &mut sections);
            current = Some((name.trim().to_owned(), String::new()));
        } else if let Some((_, body)) = current.as_mut() {
            body.push_str(line);
            body.push('\n');
        }
    }
    flush(current, &mut sections);
    sections
}

/// Key/value lookup in a two-column `meta` table.
pub fn meta_value<'a>(table: &'a Table, key: &str) -> Option<&'a str> {
    table
        .iter()
        .skip(1)
        .find(|row| row.first().map(String::as_str) == Some(key))
        .and_then(|row| row.get(1))
        .map(String::as_str)
}

pub fn pct(fraction: f64) -> String {
    format!("{:.2}", fraction * 100.0)
}

pub fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(f64::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

pub fn split_joined(s: &str) -> Vec<f64> {
    s.split(';').filter_map(|v| v.parse().ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_round_trip() {
        let mut w = SectionWriter::new();
        w.section("meta", ["key", "value"], [["a", "1"], ["b", "x,y"]]);
        w.section("results", ["m", "v"], Vec::<[&str; 2]>::new());
        let text = w.finish();
        assert!(text.starts_with("# section: meta\nkey,value\na,1\n"));
        let s = parse_sections(&text);
        assert_eq!(meta_value(&s["meta"], "b"), Some("x,y"));
        assert_eq!(s["results"], vec![vec!["m".to_string(), "v".to_string()]]);
    }

    #[test]
    fn formatting() {
        assert_eq!(pct(0.036533), "3.65");
        assert_eq!(join(&[1.5, 0.1]), "1.5;0.1");
        assert_eq!(split_joined("1.5;0.1"), vec![1.5, 0.1]);
    }
}

use super::FinitePoset;
use crate::error::{Error, Result};

impl FinitePoset {
    /// Parses the `.poset` text format.
    ///
    /// ```text
    /// # comment
    /// elements: a b c
    /// a < b
    /// b < c
    /// ```
    ///
    /// Statements may also be separated by `;`, and a relation may chain
    /// several elements (`a < b < c`). Labels may contain `,` (the boolean
    /// generator writes `{1,2}`) but not `;`, `<` or whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let mut labels: Option<Vec<String>> = None;
        let mut relations = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            for stmt in line.split(';').map(str::trim).filter(|s| !s.is_empty()) {
                let err = |message: String| Error::Parse {
                    line: lineno + 1,
                    message,
                };
                if let Some(rest) = stmt.strip_prefix("elements:") {
                    if labels.is_some() {
                        return Err(err("second `elements:` line".into()));
                    }
                    labels = Some(rest.split_whitespace().map(String::from).collect());
                    continue;
                }
                if labels.is_none() {
                    return Err(err("relation before `elements:` line".into()));
                }
                let chain: Vec<&str> = stmt.split('<').map(str::trim).collect();
                if chain.len() < 2 || chain.iter().any(|s| s.is_empty() || s.contains(char::is_whitespace)) {
                    return Err(err(format!("malformed relation `{stmt}`")));
                }
                for w in chain.windows(2) {
                    relations.push((w[0].to_string(), w[1].to_string()));
                }
            }
        }
        let labels = labels.ok_or(Error::Parse {
            line: 0,
            message: "missing `elements:` line".into(),
        })?;
        FinitePoset::from_relations(labels, relations)
    }
}

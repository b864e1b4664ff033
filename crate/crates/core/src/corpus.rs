//! Dataset rows, normalization, placeholder substitution and splitting.
//!
//! Datasets are header-rowed, tab-separated UTF-8 files. The recipient and
//! the sender are written as the placeholder tokens `@CN@` and `@SCN@`;
//! they are matched case-insensitively on read and kept uppercase
//! internally.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use log::warn;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classifier::MessageType;
use crate::error::{Error, Result};

/// Placeholder for the contact (the recipient of the message).
pub const CONTACT_PLACEHOLDER: &str = "@CN@";
/// Placeholder for the source contact (the sender of the message).
pub const SOURCE_PLACEHOLDER: &str = "@SCN@";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Validation,
    Test,
}

impl Split {
    pub fn as_str(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Validation => "validation",
            Split::Test => "test",
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Split {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "train" | "training" => Ok(Split::Train),
            "validation" | "valid" | "val" | "dev" => Ok(Split::Validation),
            "test" => Ok(Split::Test),
            other => Err(format!("unknown split `{other}`")),
        }
    }
}

/// One dataset row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    /// Utterance as spoken to the assistant.
    pub input: String,
    /// Ground-truth converted utterance.
    pub output: String,
    pub message_type: Option<MessageType>,
    pub split: Option<Split>,
    /// Columns not mapped to a field, in file order.
    pub extra: Vec<(String, String)>,
}

impl Sample {
    pub fn new(input: impl AsRef<str>, output: impl AsRef<str>) -> Self {
        Sample {
            input: normalize(input.as_ref()),
            output: normalize(output.as_ref()),
            message_type: None,
            split: None,
            extra: Vec::new(),
        }
    }

    pub fn with_type(mut self, message_type: MessageType) -> Self {
        self.message_type = Some(message_type);
        self
    }
}

/// Maps header names to [`Sample`] fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct FormatConfig {
    pub input: String,
    pub output: String,
    pub message_type: String,
    pub split: String,
    pub delimiter: char,
}

impl Default for FormatConfig {
    fn default() -> Self {
        FormatConfig {
            input: "input".into(),
            output: "output".into(),
            message_type: "type".into(),
            split: "split".into(),
            delimiter: '\t',
        }
    }
}

/// Lowercase, canonicalize placeholders, strip terminal `.?!` and collapse
/// whitespace.
pub fn normalize(text: &str) -> String {
    let lowered = text.replace('\u{2019}', "'").to_lowercase();
    let trimmed = lowered.trim_end_matches(|c: char| matches!(c, '.' | '?' | '!') || c.is_whitespace());
    let collapsed = trimmed.split_whitespace().collect::<Vec<_>>().join(" ");
    collapsed
        .replace("@scn@", SOURCE_PLACEHOLDER)
        .replace("@cn@", CONTACT_PLACEHOLDER)
}

/// Replace every `@CN@` with `contact` and every `@SCN@` with `source`.
pub fn substitute_placeholders(text: &str, contact: &str, source: &str) -> String {
    if !text.contains('@') {
        return text.to_string();
    }
    text.replace(SOURCE_PLACEHOLDER, source)
        .replace(CONTACT_PLACEHOLDER, contact)
}

/// A small hand-labelled corpus bundled with the crate (input, reference
/// output and message type), usable when no dataset is at hand.
pub const SEED_CORPUS: &str = include_str!("../data/seed_messages.tsv");

pub fn seed_corpus() -> Vec<Sample> {
    parse_dataset(SEED_CORPUS, Path::new("seed_messages.tsv"), &FormatConfig::default())
        .expect("bundled seed corpus is well-formed")
}

pub fn load_dataset(path: impl AsRef<Path>, format: &FormatConfig) -> Result<Vec<Sample>> {
    let path = path.as_ref();
    let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_dataset(&content, path, format)
}

/// Parse dataset text already in memory.
pub fn parse_dataset_str(content: &str, format: &FormatConfig) -> Result<Vec<Sample>> {
    parse_dataset(content, Path::new("<memory>"), format)
}

fn parse_dataset(content: &str, path: &Path, format: &FormatConfig) -> Result<Vec<Sample>> {
    let mut lines = content.lines().enumerate();
    let header: Vec<&str> = match lines.next() {
        Some((_, line)) => line.split(format.delimiter).map(str::trim).collect(),
        None => {
            return Err(Error::MissingColumn {
                path: path.to_path_buf(),
                column: format.input.clone(),
            })
        }
    };
    let column = |name: &str| header.iter().position(|h| *h == name);
    let missing = |name: &str| Error::MissingColumn {
        path: path.to_path_buf(),
        column: name.to_string(),
    };
    let input_col = column(&format.input).ok_or_else(|| missing(&format.input))?;
    let output_col = column(&format.output).ok_or_else(|| missing(&format.output))?;
    let type_col = column(&format.message_type);
    let split_col = column(&format.split);

    let mut samples = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(format.delimiter).collect();
        if fields.len() != header.len() {
            return Err(Error::FieldCount {
                path: path.to_path_buf(),
                line: line_no,
                expected: header.len(),
                found: fields.len(),
            });
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: line_no,
            message,
        };
        let input = normalize(fields[input_col]);
        if input.is_empty() {
            return Err(parse_err("empty input".into()));
        }
        let message_type = match type_col.map(|c| fields[c].trim()) {
            Some(t) if !t.is_empty() => Some(t.parse().map_err(|e: Error| parse_err(e.to_string()))?),
            _ => None,
        };
        let split = match split_col.map(|c| fields[c].trim()) {
            Some(s) if !s.is_empty() => Some(s.parse().map_err(parse_err)?),
            _ => None,
        };
        let extra = header
            .iter()
            .enumerate()
            .filter(|(c, _)| ![Some(input_col), Some(output_col), type_col, split_col].contains(&Some(*c)))
            .map(|(c, h)| (h.to_string(), fields[c].to_string()))
            .collect();
        samples.push(Sample {
            input,
            output: normalize(fields[output_col]),
            message_type,
            split,
            extra,
        });
    }
    Ok(samples)
}

/// Write samples as TSV with the default column names.
pub fn write_dataset(path: impl AsRef<Path>, samples: &[Sample]) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    render_dataset(&mut buf, samples)?;
    fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn render_dataset(out: &mut impl Write, samples: &[Sample]) -> Result<()> {
    let defaults = FormatConfig::default();
    let mut extra_cols: Vec<&str> = Vec::new();
    for sample in samples {
        for (k, _) in &sample.extra {
            if !extra_cols.contains(&k.as_str()) {
                extra_cols.push(k);
            }
        }
    }
    let mut header = vec![
        defaults.input.as_str(),
        defaults.output.as_str(),
        defaults.message_type.as_str(),
        defaults.split.as_str(),
    ];
    header.extend(&extra_cols);

    let io_err = |e| Error::io("<output>", e);
    writeln!(out, "{}", header.join("\t")).map_err(io_err)?;
    for sample in samples {
        let mut fields = vec![
            sample.input.as_str(),
            sample.output.as_str(),
            sample.message_type.map_or("", MessageType::as_str),
            sample.split.map_or("", Split::as_str),
        ];
        for col in &extra_cols {
            let value = sample.extra.iter().find(|(k, _)| k == col).map_or("", |(_, v)| v);
            fields.push(value);
        }
        if let Some(bad) = fields.iter().find(|f| f.contains(['\t', '\n', '\r'])) {
            return Err(Error::UnwritableField(bad.to_string()));
        }
        writeln!(out, "{}", fields.join("\t")).map_err(io_err)?;
    }
    Ok(())
}

/// Train / validation / test partition of a dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetSplit {
    pub train: Vec<Sample>,
    pub validation: Vec<Sample>,
    pub test: Vec<Sample>,
    pub seed: u64,
}

impl DatasetSplit {
    pub fn sizes(&self) -> [usize; 3] {
        [self.train.len(), self.validation.len(), self.test.len()]
    }
}

/// Partition sizes for a 70/15/15 split: train and validation are rounded
/// down, test takes the remainder.
pub fn split_sizes(n: usize) -> [usize; 3] {
    let train = n * 70 / 100;
    let validation = n * 15 / 100;
    [train, validation, n - train - validation]
}

/// Split 70/15/15 with a seeded shuffle, or by the samples' own split tags
/// when every sample carries one.
pub fn split_dataset(samples: &[Sample], seed: u64) -> Result<DatasetSplit> {
    if samples.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: samples.len(),
        });
    }
    let tagged = samples.iter().filter(|s| s.split.is_some()).count();
    if tagged == samples.len() {
        let group = |split| samples.iter().filter(|s| s.split == Some(split)).cloned().collect();
        return Ok(DatasetSplit {
            train: group(Split::Train),
            validation: group(Split::Validation),
            test: group(Split::Test),
            seed,
        });
    }
    if tagged > 0 {
        warn!(
            "{tagged} of {} samples carry split tags; ignoring them and shuffling",
            samples.len()
        );
    }

    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let [train, validation, _] = split_sizes(samples.len());
    let take = |range: &[usize]| range.iter().map(|&i| samples[i].clone()).collect();
    Ok(DatasetSplit {
        train: take(&order[..train]),
        validation: take(&order[train..train + validation]),
        test: take(&order[train + validation..]),
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        assert_eq!(
            normalize("Ask Haley can I borrow your juicer?"),
            "ask haley can i borrow your juicer"
        );
        assert_eq!(normalize("  Tell  @cn@   HI "), "tell @CN@ hi");
        assert_eq!(normalize(""), "");
        assert_eq!(normalize("hi @Scn@, ok ?!"), "hi @SCN@, ok");
        assert_eq!(normalize("it\u{2019}s fine"), "it's fine");
    }

    #[test]
    fn substitution_examples() {
        assert_eq!(
            substitute_placeholders("hi @CN@, @SCN@ says hi", "bob", "john"),
            "hi bob, john says hi"
        );
        assert_eq!(substitute_placeholders("@SCN@ @SCN@", "bob", "john"), "john john");
        assert_eq!(substitute_placeholders("no names here", "bob", "john"), "no names here");
    }

    fn parse(content: &str) -> Result<Vec<Sample>> {
        parse_dataset(content, Path::new("mem.tsv"), &FormatConfig::default())
    }

    #[test]
    fn loads_rows() {
        let rows =
            parse("input\toutput\ttype\ntell @cn@ i'm running late\t@SCN@ says he's running late\tStmt\n").unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].input, "tell @CN@ i'm running late");
        assert_eq!(rows[0].output, "@SCN@ says he's running late");
        assert_eq!(rows[0].message_type, Some(MessageType::Stmt));
        assert!(rows[0].extra.is_empty());
    }

    #[test]
    fn keeps_unmapped_columns() {
        let rows = parse("id\tinput\toutput\tjudge\n7\thi\tyo\tok\n").unwrap();
        assert_eq!(
            rows[0].extra,
            vec![("id".to_string(), "7".to_string()), ("judge".into(), "ok".into())]
        );
    }

    #[test]
    fn reports_bad_rows() {
        match parse("input\toutput\na\tb\nc\n") {
            Err(Error::FieldCount {
                line, expected, found, ..
            }) => {
                assert_eq!((line, expected, found), (3, 2, 1));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("input\tx\na\tb\n"), Err(Error::MissingColumn { .. })));
        assert!(matches!(
            parse("input\toutput\ttype\na\tb\tquestion\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn missing_file_is_an_error() {
        let err = load_dataset("/nonexistent/data.tsv", &FormatConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }

    fn untagged(n: usize) -> Vec<Sample> {
        (0..n).map(|i| Sample::new(format!("tell bob {i}"), "x")).collect()
    }

    #[test]
    fn split_ratios() {
        let split = split_dataset(&untagged(100), 7).unwrap();
        assert_eq!(split.sizes(), [70, 15, 15]);
        assert_eq!(split, split_dataset(&untagged(100), 7).unwrap());
        assert_ne!(split.train, split_dataset(&untagged(100), 8).unwrap().train);
        assert_eq!(split_sizes(46_565), [32_595, 6_984, 6_986]);
    }

    #[test]
    fn split_honors_tags() {
        let mut samples = untagged(10);
        for (i, s) in samples.iter_mut().enumerate() {
            s.split = Some([Split::Train, Split::Test][i % 2]);
        }
        let a = split_dataset(&samples, 1).unwrap();
        let b = split_dataset(&samples, 99).unwrap();
        assert_eq!(a.sizes(), [5, 0, 5]);
        assert_eq!(a.train, b.train);

        samples[0].split = None;
        assert_eq!(split_dataset(&samples, 1).unwrap().sizes(), [7, 1, 2]);
    }

    #[test]
    fn split_needs_three_samples() {
        assert!(matches!(
            split_dataset(&untagged(2), 0),
            Err(Error::TooFewSamples { .. })
        ));
    }
}

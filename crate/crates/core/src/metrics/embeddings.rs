use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// Word vectors in the plain text format: `token v1 v2 ...` per line, with
/// an optional `<count> <dim>` header.
#[derive(Clone, Debug, Default)]
pub struct Embeddings {
    dim: usize,
    vectors: HashMap<String, Vec<f64>>,
}

impl Embeddings {
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f64>)>,
        S: Into<String>,
    {
        let mut out = Embeddings::default();
        for (word, vector) in pairs {
            out.insert(word.into(), vector).map_err(Error::InvalidArgument)?;
        }
        Ok(out)
    }

    fn insert(&mut self, word: String, vector: Vec<f64>) -> std::result::Result<(), String> {
        if vector.is_empty() {
            return Err(format!("vector for `{word}` is empty"));
        }
        if self.dim == 0 {
            self.dim = vector.len();
        } else if vector.len() != self.dim {
            return Err(format!(
                "vector for `{word}` has {} components, expected {}",
                vector.len(),
                self.dim
            ));
        }
        self.vectors.insert(word, vector);
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Embeddings::parse_from(text, Path::new("<embeddings>"))
    }

    fn parse_from(text: &str, path: &Path) -> Result<Self> {
        let mut out = Embeddings::default();
        let err = |line: usize, message: String| Error::Parse {
            path: PathBuf::from(path),
            line,
            message,
        };
        for (i, line) in text.lines().enumerate() {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            if i == 0 && fields.len() == 2 && fields.iter().all(|f| f.parse::<usize>().is_ok()) {
                continue;
            }
            let (word, rest) = fields.split_first().expect("non-empty");
            let vector = rest
                .iter()
                .map(|f| f.parse::<f64>().map_err(|_| err(i + 1, format!("bad component `{f}`"))))
                .collect::<Result<Vec<f64>>>()?;
            out.insert(word.to_string(), vector).map_err(|m| err(i + 1, m))?;
        }
        if out.vectors.is_empty() {
            return Err(Error::Empty(format!("no vectors in {}", path.display())));
        }
        Ok(out)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Embeddings::parse_from(&text, path)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(word).map(Vec::as_slice)
    }

    /// Mean of the in-vocabulary token vectors.
    pub fn sentence_vector(&self, text: &str) -> Result<Vec<f64>> {
        let mut sum = vec![0.0; self.dim];
        let mut n = 0usize;
        for v in text.split_whitespace().filter_map(|w| self.get(w)) {
            sum.iter_mut().zip(v).for_each(|(s, x)| *s += x);
            n += 1;
        }
        if n == 0 {
            return Err(Error::NoCoverage(text.to_string()));
        }
        sum.iter_mut().for_each(|s| *s /= n as f64);
        Ok(sum)
    }
}

/// Cosine similarity of the mean word vectors of two sentences.
pub fn cosine_similarity(hypothesis: &str, reference: &str, embeddings: &Embeddings) -> Result<f64> {
    let a = embeddings.sentence_vector(hypothesis)?;
    let b = embeddings.sentence_vector(reference)?;
    let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let denom = norm(&a) * norm(&b);
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok((dot / denom).clamp(-1.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_and_without_header() {
        let e = Embeddings::parse("2 3\na 1 0 0\nb 0 1 0\n").unwrap();
        assert_eq!((e.len(), e.dim()), (2, 3));
        let e = Embeddings::parse("a 1 0\nb 0 1\n").unwrap();
        assert_eq!(e.get("b"), Some(&[0.0, 1.0][..]));
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(matches!(
            Embeddings::parse("a 1 x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Embeddings::parse("a 1 0\nb 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Embeddings::parse("\n").is_err());
    }

    #[test]
    fn zero_coverage_is_an_error() {
        let e = Embeddings::parse("a 1 0\n").unwrap();
        assert!(matches!(cosine_similarity("zzz", "a", &e), Err(Error::NoCoverage(_))));
    }
}

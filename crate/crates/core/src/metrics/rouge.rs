use crate::error::{Error, Result};

fn lcs_len(a: &[&str], b: &[&str]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for x in a {
        for (j, y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { cur[j].max(prev[j + 1]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// ROUGE-L F1 from the longest common subsequence of whitespace tokens.
pub fn rouge_l_f1(hypothesis: &str, reference: &str) -> Result<f64> {
    let hyp: Vec<&str> = hypothesis.split_whitespace().collect();
    let reference: Vec<&str> = reference.split_whitespace().collect();
    if hyp.is_empty() || reference.is_empty() {
        return Err(Error::Empty(
            "ROUGE-L needs a non-empty hypothesis and reference".into(),
        ));
    }
    let lcs = lcs_len(&hyp, &reference);
    if lcs == 0 {
        return Ok(0.0);
    }
    let precision = lcs as f64 / hyp.len() as f64;
    let recall = lcs as f64 / reference.len() as f64;
    Ok(2.0 * precision * recall / (precision + recall))
}

use rust_stemmers::{Algorithm, Stemmer};

use crate::error::{Error, Result};

const ALPHA: f64 = 0.9;
const BETA: f64 = 3.0;
const GAMMA: f64 = 0.5;
/// Search nodes per stage before settling for the best alignment so far.
const SEARCH_BUDGET: usize = 200_000;

/// A way of deciding that two unigrams match.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchStage {
    Exact,
    /// Porter (English Snowball) stems are equal.
    Stem,
}

pub const DEFAULT_STAGES: [MatchStage; 2] = [MatchStage::Exact, MatchStage::Stem];

/// Number of chunks in an alignment given as `(hyp, ref)` index pairs.
fn chunks(alignment: &[(usize, usize)]) -> usize {
    let mut sorted = alignment.to_vec();
    sorted.sort_unstable();
    let mut count = 0;
    for (k, &(h, r)) in sorted.iter().enumerate() {
        if k == 0 || sorted[k - 1] != (h - 1, r.wrapping_sub(1)) {
            count += 1;
        }
    }
    count
}

struct Search<'a> {
    /// Candidate ref positions per free hyp position.
    options: &'a [(usize, Vec<usize>)],
    used: Vec<bool>,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
    best_chunks: usize,
    nodes: usize,
}

impl Search<'_> {
    fn better(&self) -> bool {
        let m = self.current.len();
        m > self.best.len() || (m == self.best.len() && chunks(&self.current) < self.best_chunks)
    }

    fn run(&mut self, k: usize) {
        self.nodes += 1;
        if self.nodes > SEARCH_BUDGET {
            return;
        }
        let remaining = self.options.len() - k;
        if self.current.len() + remaining < self.best.len() {
            return;
        }
        if k == self.options.len() {
            if self.better() {
                self.best_chunks = chunks(&self.current);
                self.best = self.current.clone();
            }
            return;
        }
        let (h, refs) = &self.options[k];
        // Prefer continuing the previous match diagonally.
        let mut order: Vec<usize> = refs.iter().copied().filter(|&r| !self.used[r]).collect();
        if let Some(&(ph, pr)) = self.current.last() {
            if ph + 1 == *h {
                order.sort_by_key(|&r| (r != pr + 1, r));
            }
        }
        for r in order {
            self.used[r] = true;
            self.current.push((*h, r));
            self.run(k + 1);
            self.current.pop();
            self.used[r] = false;
        }
        self.run(k + 1);
    }
}

/// Extend `fixed` with matches of `stage` among unmatched words, maximizing
/// the number of matches and then minimizing chunks over the whole
/// alignment.
fn align_stage(hyp: &[String], reference: &[String], fixed: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let hyp_free: Vec<usize> = (0..hyp.len())
        .filter(|h| !fixed.iter().any(|&(fh, _)| fh == *h))
        .collect();
    let ref_used: Vec<bool> = (0..reference.len())
        .map(|r| fixed.iter().any(|&(_, fr)| fr == r))
        .collect();
    let options: Vec<(usize, Vec<usize>)> = hyp_free
        .into_iter()
        .map(|h| {
            let refs: Vec<usize> = (0..reference.len())
                .filter(|&r| !ref_used[r] && reference[r] == hyp[h])
                .collect();
            (h, refs)
        })
        .filter(|(_, refs)| !refs.is_empty())
        .collect();
    let mut search = Search {
        options: &options,
        used: ref_used,
        current: fixed.to_vec(),
        best: fixed.to_vec(),
        best_chunks: usize::MAX,
        nodes: 0,
    };
    search.run(0);
    search.best
}

/// Final alignment over all stages, as `(hyp, ref)` index pairs.
pub fn align(hypothesis: &[&str], reference: &[&str], stages: &[MatchStage]) -> Vec<(usize, usize)> {
    let stemmer = Stemmer::create(Algorithm::English);
    let mut alignment = Vec::new();
    for stage in stages {
        let view = |words: &[&str]| -> Vec<String> {
            words
                .iter()
                .map(|w| match stage {
                    MatchStage::Exact => w.to_string(),
                    MatchStage::Stem => stemmer.stem(w).into_owned(),
                })
                .collect()
        };
        alignment = align_stage(&view(hypothesis), &view(reference), &alignment);
    }
    alignment
}

/// METEOR with exact and stem matching stages.
pub fn meteor(hypothesis: &str, reference: &str) -> Result<f64> {
    meteor_with(hypothesis, reference, &DEFAULT_STAGES)
}

pub fn meteor_with(hypothesis: &str, reference: &str, stages: &[MatchStage]) -> Result<f64> {
    let hyp: Vec<&str> = hypothesis.split_whitespace().collect();
    let reference: Vec<&str> = reference.split_whitespace().collect();
    if hyp.is_empty() || reference.is_empty() {
        return Err(Error::Empty("METEOR needs a non-empty hypothesis and reference".into()));
    }
    let alignment = align(&hyp, &reference, stages);
    let m = alignment.len() as f64;
    if m == 0.0 {
        return Ok(0.0);
    }
    let precision = m / hyp.len() as f64;
    let recall = m / reference.len() as f64;
    let f_mean = precision * recall / (ALPHA * precision + (1.0 - ALPHA) * recall);
    let penalty = GAMMA * (chunks(&alignment) as f64 / m).powf(BETA);
    Ok(f_mean * (1.0 - penalty))
}

use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::lexicon::{self, Lexicon};
use super::tagger::{is_participle, Tag, TaggedToken};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuestionForm {
    /// Subject-auxiliary inversion or do-support: *are you coming*.
    DirectQuestion,
    /// Embedded order: *(if) he is coming*, *what he is doing*.
    IndirectQuestion,
    Declarative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseAnalysis {
    pub tokens: Vec<TaggedToken>,
    pub question_form: QuestionForm,
    pub subject_span: Option<Range<usize>>,
    pub aux_index: Option<usize>,
    pub wh_index: Option<usize>,
    /// Index of a leading `if`/`whether`.
    pub complementizer: Option<usize>,
}

impl ClauseAnalysis {
    pub fn words(&self) -> Vec<&str> {
        self.tokens.iter().map(|t| t.text.as_str()).collect()
    }
}

pub fn is_direct_question(analysis: &ClauseAnalysis) -> bool {
    analysis.question_form == QuestionForm::DirectQuestion
}

struct Clause<'a> {
    words: Vec<String>,
    tags: Vec<Tag>,
    lex: &'a Lexicon,
}

impl Clause<'_> {
    fn len(&self) -> usize {
        self.words.len()
    }

    fn word(&self, i: usize) -> &str {
        &self.words[i]
    }

    fn is_aux(&self, i: usize) -> bool {
        i < self.len() && self.lex.auxiliary(self.word(i)).is_some() && self.tags[i] != Tag::PRPS
    }

    /// Start of the noun phrase beginning at `i`, if one does.
    fn subject_at(&self, i: usize) -> Option<Range<usize>> {
        if i >= self.len() {
            return None;
        }
        let w = self.word(i);
        match self.tags[i] {
            Tag::PRP if lexicon::is_nominative(w) => Some(i..i + 1),
            Tag::NNP => {
                let mut end = i + 1;
                while end < self.len() && self.tags[end] == Tag::NNP {
                    end += 1;
                }
                Some(i..end)
            }
            Tag::DT | Tag::PRPS if i + 1 < self.len() && matches!(self.tags[i + 1], Tag::NN | Tag::NNP) => {
                Some(i..i + 2)
            }
            Tag::NN if !is_participle(w) && !lexicon::is_adverb(w) && w != "n't" => Some(i..i + 1),
            _ => None,
        }
    }

    /// Index past a negation clitic at `i`, if there is one.
    fn skip_negation(&self, i: usize) -> usize {
        if i < self.len() && self.word(i) == "n't" {
            i + 1
        } else {
            i
        }
    }

    /// First auxiliary after `from`, skipping adverbs.
    fn aux_after(&self, from: usize) -> Option<usize> {
        let mut j = from;
        while j < self.len() && lexicon::is_adverb(self.word(j)) {
            j += 1;
        }
        self.is_aux(j).then_some(j)
    }

    /// End of a wh-phrase starting at `wh`: `what type of wine`, `how many
    /// people`, `which restaurant`. Adverbial wh-words stand alone.
    fn wh_phrase_end(&self, wh: usize) -> usize {
        let mut j = wh + 1;
        match self.word(wh) {
            "what" | "which" | "whose" => {
                while j < self.len()
                    && !self.is_aux(j)
                    && (self.tags[j] == Tag::NN || self.word(j) == "of")
                    && !is_participle(self.word(j))
                {
                    j += 1;
                }
            }
            "how"
                if j < self.len()
                    && matches!(
                        self.word(j),
                        "many" | "much" | "long" | "far" | "often" | "old" | "soon"
                    ) =>
            {
                j += 1;
                if j < self.len() && self.tags[j] == Tag::NN && !self.is_aux(j) {
                    j += 1;
                }
            }
            _ => {}
        }
        j
    }
}

/// Classify the clause and locate its subject, auxiliary and wh-word.
///
/// * auxiliary/modal + subject at clause start: direct question
/// * wh-phrase + auxiliary + subject: direct question
/// * wh-phrase + subject: indirect question (likewise when the wh-phrase is
///   itself the subject: *who is coming*)
/// * `if`/`whether` + subject: indirect question
/// * anything else: declarative
pub fn analyze_clause(tagged: &[TaggedToken], lex: &Lexicon) -> ClauseAnalysis {
    let clause = Clause {
        words: tagged.iter().map(|t| t.text.to_lowercase()).collect(),
        tags: tagged.iter().map(|t| t.tag).collect(),
        lex,
    };
    let mut analysis = ClauseAnalysis {
        tokens: tagged.to_vec(),
        question_form: QuestionForm::Declarative,
        subject_span: None,
        aux_index: None,
        wh_index: None,
        complementizer: None,
    };
    if clause.len() == 0 {
        return analysis;
    }

    let mut start = 0;
    if matches!(clause.word(0), "if" | "whether") {
        analysis.complementizer = Some(0);
        start = 1;
    }
    if start >= clause.len() {
        return analysis;
    }

    if clause.tags[start] == Tag::WRB {
        analysis.wh_index = Some(start);
        let after = clause.wh_phrase_end(start);
        if clause.is_aux(after) {
            if let Some(subject) = clause.subject_at(clause.skip_negation(after + 1)) {
                analysis.question_form = QuestionForm::DirectQuestion;
                analysis.aux_index = Some(after);
                analysis.subject_span = Some(subject);
            } else {
                analysis.question_form = QuestionForm::IndirectQuestion;
                analysis.aux_index = Some(after);
                analysis.subject_span = Some(start..after);
            }
        } else if let Some(subject) = clause.subject_at(after) {
            analysis.question_form = QuestionForm::IndirectQuestion;
            analysis.aux_index = clause.aux_after(subject.end);
            analysis.subject_span = Some(subject);
        }
        return analysis;
    }

    if analysis.complementizer.is_none() && clause.is_aux(start) {
        if let Some(subject) = clause.subject_at(clause.skip_negation(start + 1)) {
            analysis.question_form = QuestionForm::DirectQuestion;
            analysis.aux_index = Some(start);
            analysis.subject_span = Some(subject);
            return analysis;
        }
    }

    if let Some(subject) = clause.subject_at(start) {
        if analysis.complementizer.is_some() {
            analysis.question_form = QuestionForm::IndirectQuestion;
        }
        analysis.aux_index = clause.aux_after(subject.end);
        analysis.subject_span = Some(subject);
    }
    analysis
}

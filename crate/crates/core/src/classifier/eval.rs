use std::fmt;

use serde::Serialize;

use super::model::LinearModel;
use super::MessageType;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

/// Per-class metrics; a class with no gold examples has `None`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub per_class: Vec<(MessageType, Option<ClassMetrics>)>,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub accuracy: f64,
    pub n_samples: usize,
}

impl ClassificationReport {
    pub fn from_predictions(pairs: &[(MessageType, MessageType)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Empty("evaluation set".into()));
        }
        let mut per_class = Vec::new();
        for class in MessageType::ALL {
            let support = pairs.iter().filter(|(gold, _)| *gold == class).count();
            if support == 0 {
                per_class.push((class, None));
                continue;
            }
            let predicted = pairs.iter().filter(|(_, pred)| *pred == class).count();
            let hits = pairs.iter().filter(|(g, p)| *g == class && *p == class).count() as f64;
            let precision = if predicted == 0 { 0.0 } else { hits / predicted as f64 };
            let recall = hits / support as f64;
            let f1 = if precision + recall == 0.0 {
                0.0
            } else {
                2.0 * precision * recall / (precision + recall)
            };
            per_class.push((
                class,
                Some(ClassMetrics {
                    precision,
                    recall,
                    f1,
                    support,
                }),
            ));
        }
        let present: Vec<&ClassMetrics> = per_class.iter().filter_map(|(_, m)| m.as_ref()).collect();
        let mean = |f: fn(&ClassMetrics) -> f64| present.iter().map(|m| f(m)).sum::<f64>() / present.len() as f64;
        let correct = pairs.iter().filter(|(g, p)| g == p).count();
        Ok(ClassificationReport {
            macro_precision: mean(|m| m.precision),
            macro_recall: mean(|m| m.recall),
            macro_f1: mean(|m| m.f1),
            accuracy: correct as f64 / pairs.len() as f64,
            n_samples: pairs.len(),
            per_class,
        })
    }

    pub fn get(&self, class: MessageType) -> Option<&ClassMetrics> {
        self.per_class
            .iter()
            .find(|(c, _)| *c == class)
            .and_then(|(_, m)| m.as_ref())
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<8}{:>10}{:>10}{:>10}{:>10}",
            "", "precision", "recall", "f1", "support"
        )?;
        for (class, metrics) in &self.per_class {
            match metrics {
                Some(m) => writeln!(
                    f,
                    "{:<8}{:>10.3}{:>10.3}{:>10.3}{:>10}",
                    class.as_str(),
                    m.precision,
                    m.recall,
                    m.f1,
                    m.support
                )?,
                None => writeln!(f, "{:<8}{:>10}{:>10}{:>10}{:>10}", class.as_str(), "-", "-", "-", 0)?,
            }
        }
        writeln!(
            f,
            "{:<8}{:>10.3}{:>10.3}{:>10.3}{:>10}",
            "macro", self.macro_precision, self.macro_recall, self.macro_f1, self.n_samples
        )?;
        write!(f, "accuracy {:.3}", self.accuracy)
    }
}

pub fn evaluate_classifier(model: &LinearModel, eval: &[(String, MessageType)]) -> Result<ClassificationReport> {
    let pairs: Vec<(MessageType, MessageType)> = eval.iter().map(|(t, gold)| (*gold, model.predict(t))).collect();
    ClassificationReport::from_predictions(&pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use MessageType::*;

    #[test]
    fn perfect_and_hopeless() {
        let perfect: Vec<_> = MessageType::ALL.iter().map(|&c| (c, c)).collect();
        let r = ClassificationReport::from_predictions(&perfect).unwrap();
        assert!(r.per_class.iter().all(|(_, m)| m.unwrap().f1 == 1.0));

        let wrong = [(Stmt, Req), (Req, AskYN), (AskYN, AskWH), (AskWH, Stmt)];
        let r = ClassificationReport::from_predictions(&wrong).unwrap();
        assert!(r.per_class.iter().all(|(_, m)| m.unwrap().f1 == 0.0));
        assert_eq!(r.accuracy, 0.0);
    }

    /// Ten samples; confusion counted by hand:
    /// Stmt: gold 4, predicted 4, hits 3 -> P 3/4, R 3/4, F1 3/4
    /// AskYN: gold 3, predicted 3, hits 2 -> P 2/3, R 2/3, F1 2/3
    /// AskWH: gold 3, predicted 2, hits 2 -> P 1, R 2/3, F1 4/5
    /// Req: gold 0 -> reported as absent
    #[test]
    fn hand_confusion() {
        let pairs = [
            (Stmt, Stmt),
            (Stmt, Stmt),
            (Stmt, Stmt),
            (Stmt, Req),
            (AskYN, AskYN),
            (AskYN, AskYN),
            (AskYN, Stmt),
            (AskWH, AskWH),
            (AskWH, AskWH),
            (AskWH, AskYN),
        ];
        let r = ClassificationReport::from_predictions(&pairs).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
        let stmt = r.get(Stmt).unwrap();
        assert!(close(stmt.precision, 0.75) && close(stmt.recall, 0.75) && close(stmt.f1, 0.75));
        let yn = r.get(AskYN).unwrap();
        assert!(close(yn.precision, 2.0 / 3.0) && close(yn.recall, 2.0 / 3.0) && close(yn.f1, 2.0 / 3.0));
        let wh = r.get(AskWH).unwrap();
        assert!(close(wh.precision, 1.0) && close(wh.recall, 2.0 / 3.0) && close(wh.f1, 0.8));
        assert!(r.get(Req).is_none());
        assert!(close(r.accuracy, 0.7));
        assert!(close(r.macro_f1, (0.75 + 2.0 / 3.0 + 0.8) / 3.0));
    }

    #[test]
    fn empty_eval_set_is_an_error() {
        assert!(ClassificationReport::from_predictions(&[]).is_err());
    }
}

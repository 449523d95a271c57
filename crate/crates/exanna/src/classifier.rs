//! Decision rules (classifiers) and their snapshot line format.

use std::fmt;

use thiserror::Error;

use crate::context::{Action, ContextParseError, ContextVector};

/// An if-then decision rule with its learning statistics.
///
/// The premise is a partial context; absent attributes are wildcards. The
/// statistics are mutated only by the rule-learning engine that owns the
/// population the classifier lives in.
#[derive(Clone, Debug, PartialEq)]
pub struct Classifier {
    pub premise: ContextVector,
    pub action: Action,
    /// Expected reward `p`.
    pub prediction: f64,
    /// Prediction error `ε`, non-negative.
    pub error: f64,
    /// Relative-accuracy-driven quality `F` in `[0, 1]`.
    pub fitness: f64,
    /// Cached accuracy `κ` in `(0, 1]`, derived from `error`.
    pub accuracy: f64,
    /// Virtual copies this macro rule represents, at least 1.
    pub numerosity: u32,
    /// Times this rule participated in an update.
    pub experience: u64,
    /// Owner-local event counter at the last genetic-discovery pass over a
    /// set containing this rule.
    pub ga_timestamp: u64,
}

impl Classifier {
    pub fn matches(&self, ctx: &ContextVector) -> bool {
        self.premise.matches(ctx)
    }

    /// True iff this rule proposes the same action as `other` and its premise
    /// binds a strict subset of `other`'s attributes with equal bindings.
    pub fn is_more_general(&self, other: &Classifier) -> bool {
        self.action == other.action && self.premise.is_strictly_more_general(&other.premise)
    }

    /// One-line snapshot: `Attr=VAL;… => ACTION | p | eps | F | num | exp`.
    pub fn to_line(&self) -> String {
        format!(
            "{} => {} | {} | {} | {} | {} | {}",
            self.premise,
            self.action,
            self.prediction,
            self.error,
            self.fitness,
            self.numerosity,
            self.experience
        )
    }

    /// Parse a [`Classifier::to_line`] rendering. The cached accuracy is
    /// recomputed by the learning engine on demand; here it is restored as 0
    /// and the GA timestamp as 0.
    pub fn parse_line(line: &str) -> Result<Classifier, LineParseError> {
        let (head, stats) = line
            .split_once(" | ")
            .ok_or_else(|| LineParseError::Malformed(line.to_string()))?;
        let (premise_text, action_text) = head
            .split_once(" => ")
            .ok_or_else(|| LineParseError::Malformed(line.to_string()))?;
        let premise = ContextVector::parse(premise_text.trim())?;
        let action = Action::parse(action_text.trim())
            .ok_or_else(|| LineParseError::BadAction(action_text.trim().to_string()))?;
        let fields: Vec<&str> = stats.split(" | ").map(str::trim).collect();
        if fields.len() != 5 {
            return Err(LineParseError::Malformed(line.to_string()));
        }
        let num = |s: &str| -> Result<f64, LineParseError> {
            s.parse()
                .map_err(|_| LineParseError::BadNumber(s.to_string()))
        };
        Ok(Classifier {
            premise,
            action,
            prediction: num(fields[0])?,
            error: num(fields[1])?,
            fitness: num(fields[2])?,
            accuracy: 0.0,
            numerosity: fields[3]
                .parse()
                .map_err(|_| LineParseError::BadNumber(fields[3].to_string()))?,
            experience: fields[4]
                .parse()
                .map_err(|_| LineParseError::BadNumber(fields[4].to_string()))?,
            ga_timestamp: 0,
        })
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line())
    }
}

#[derive(Debug, Error)]
pub enum LineParseError {
    #[error("malformed classifier line `{0}`")]
    Malformed(String),
    #[error("unknown action `{0}`")]
    BadAction(String),
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error(transparent)]
    Context(#[from] ContextParseError),
}

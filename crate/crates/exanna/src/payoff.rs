//! Values, value importances, payoff tables, and reward composition.
//!
//! Payoffs are value-indexed: each value has a small matrix keyed by the
//! action taken and a condition column resolved from the context (the
//! agent's own preference for freedom, the believed risk for health). The
//! aggregated payoff is the importance-weighted sum over values.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::context::{Action, Attribute, ContextVector, PlaceKind, RiskLevel, SocialCircle};

/// Abstract values agents care about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Value {
    Health,
    Freedom,
}

impl Value {
    pub const ALL: [Value; 2] = [Value::Health, Value::Freedom];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Value::Health => "health",
            Value::Freedom => "freedom",
        }
    }
}

/// Context classes a value importance can be attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContextKind {
    Pandemic,
    Normal,
}

#[derive(Debug, Error, PartialEq)]
pub enum PayoffError {
    #[error("value weights must sum to 1 (got {0})")]
    WeightsSum(f64),
    #[error("value weight for {value:?} out of [0,1]: {weight}")]
    WeightRange { value: Value, weight: f64 },
    #[error("cannot resolve payoff condition for {value:?}: context lacks {missing:?}")]
    UnresolvableCondition { value: Value, missing: Attribute },
    #[error("context lacks a location")]
    MissingLocation,
    #[error("no value importance defined for context class {0:?}")]
    MissingContextClass(ContextKind),
}

/// Per-context weights over values, summing to 1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ValueImportanceRepr", into = "ValueImportanceRepr")]
pub struct ValueImportance {
    weights: [f64; 2],
}

impl ValueImportance {
    const SUM_TOLERANCE: f64 = 1e-9;

    /// Builds a weight vector; rejects weights outside `[0,1]` or sums away
    /// from 1 by more than 1e-9.
    pub fn new(health: f64, freedom: f64) -> Result<Self, PayoffError> {
        for (value, weight) in [(Value::Health, health), (Value::Freedom, freedom)] {
            if !(0.0..=1.0).contains(&weight) || !weight.is_finite() {
                return Err(PayoffError::WeightRange { value, weight });
            }
        }
        let sum = health + freedom;
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(PayoffError::WeightsSum(sum));
        }
        Ok(Self {
            weights: [health, freedom],
        })
    }

    pub fn get(&self, value: Value) -> f64 {
        self.weights[value.index()]
    }

    pub fn values_with_positive_weight(&self) -> impl Iterator<Item = Value> + '_ {
        Value::ALL.into_iter().filter(|v| self.get(*v) > 0.0)
    }
}

#[derive(Serialize, Deserialize)]
struct ValueImportanceRepr {
    health: f64,
    freedom: f64,
}

impl TryFrom<ValueImportanceRepr> for ValueImportance {
    type Error = PayoffError;
    fn try_from(r: ValueImportanceRepr) -> Result<Self, Self::Error> {
        ValueImportance::new(r.health, r.freedom)
    }
}

impl From<ValueImportance> for ValueImportanceRepr {
    fn from(v: ValueImportance) -> Self {
        ValueImportanceRepr {
            health: v.get(Value::Health),
            freedom: v.get(Value::Freedom),
        }
    }
}

/// Actor payoff by place, rows `[Wear, NotWear]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlacePayoffTable {
    home: [f64; 2],
    office: [f64; 2],
    party: [f64; 2],
    park: [f64; 2],
    hospital: [f64; 2],
}

impl Default for PlacePayoffTable {
    fn default() -> Self {
        Self {
            home: [-0.25, 0.25],
            office: [0.25, -0.25],
            party: [-0.25, 0.25],
            park: [-0.50, 0.50],
            hospital: [0.50, -0.50],
        }
    }
}

impl PlacePayoffTable {
    pub fn payoff(&self, place: PlaceKind, action: Action) -> f64 {
        let row = match place {
            PlaceKind::Home => self.home,
            PlaceKind::Office => self.office,
            PlaceKind::Party => self.party,
            PlaceKind::Park => self.park,
            PlaceKind::Hospital => self.hospital,
        };
        row[action.ordinal()]
    }
}

/// Payoff matrices for both values plus the place table.
///
/// `health` is keyed by believed risk, `freedom` by the agent's own
/// preference; each row is `[Wear, NotWear]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PayoffTables {
    /// `[risk == None, risk == Risk]` by `[Wear, NotWear]`.
    pub health: [[f64; 2]; 2],
    /// `[prefers Wear, prefers NotWear]` by `[Wear, NotWear]`.
    pub freedom: [[f64; 2]; 2],
    pub place: PlacePayoffTable,
}

impl Default for PayoffTables {
    fn default() -> Self {
        Self {
            health: [[0.0, 0.0], [1.0, -1.0]],
            freedom: [[1.0, -1.0], [-1.0, 1.0]],
            place: PlacePayoffTable::default(),
        }
    }
}

impl PayoffTables {
    /// Payoff of one value for `action`, with the condition column resolved
    /// from `ctx`.
    pub fn value_payoff(
        &self,
        value: Value,
        ctx: &ContextVector,
        action: Action,
    ) -> Result<f64, PayoffError> {
        match value {
            Value::Health => {
                let risk = ctx.risk().ok_or(PayoffError::UnresolvableCondition {
                    value,
                    missing: Attribute::Risk,
                })?;
                let row = match risk {
                    RiskLevel::None => self.health[0],
                    RiskLevel::Risk => self.health[1],
                };
                Ok(row[action.ordinal()])
            }
            Value::Freedom => {
                let pref = ctx
                    .preference()
                    .ok_or(PayoffError::UnresolvableCondition {
                        value,
                        missing: Attribute::Preference,
                    })?;
                Ok(self.freedom[pref.ordinal()][action.ordinal()])
            }
        }
    }

    pub fn place_payoff(&self, place: PlaceKind, action: Action) -> f64 {
        self.place.payoff(place, action)
    }
}

/// Importance-weighted sum of value payoffs for `action` in `ctx`.
///
/// Only values with positive weight must be resolvable from the context.
pub fn aggregate_value_payoff(
    weights: &ValueImportance,
    tables: &PayoffTables,
    ctx: &ContextVector,
    action: Action,
) -> Result<f64, PayoffError> {
    let mut total = 0.0;
    for value in Value::ALL {
        let w = weights.get(value);
        if w > 0.0 {
            total += w * tables.value_payoff(value, ctx, action)?;
        }
    }
    Ok(total)
}

/// Value payoff plus the location payoff: the reward an actor gives itself.
pub fn composite_actor_reward(
    weights: &ValueImportance,
    tables: &PayoffTables,
    ctx: &ContextVector,
    action: Action,
) -> Result<f64, PayoffError> {
    let place = ctx.location().ok_or(PayoffError::MissingLocation)?;
    Ok(aggregate_value_payoff(weights, tables, ctx, action)? + tables.place_payoff(place, action))
}

/// The action the agent's values alone favor; place payoff is excluded so the
/// goal reflects values, not situational pressure. Ties go to `Wear`.
pub fn goal_action(
    weights: &ValueImportance,
    tables: &PayoffTables,
    ctx: &ContextVector,
) -> Result<Action, PayoffError> {
    let wear = aggregate_value_payoff(weights, tables, ctx, Action::Wear)?;
    let not_wear = aggregate_value_payoff(weights, tables, ctx, Action::NotWear)?;
    Ok(if not_wear > wear {
        Action::NotWear
    } else {
        Action::Wear
    })
}

/// Accept or reject verdict an observer renders on a rationale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Accept,
    Reject,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Accept => "accept",
            Decision::Reject => "reject",
        })
    }
}

/// Sanction magnitude by social circle: Family 1.00, Friend 0.75, Coworker
/// 0.50, Stranger 0.25; positive iff the observer accepts.
pub fn sanction_magnitude(circle: SocialCircle, decision: Decision) -> f64 {
    let magnitude = match circle {
        SocialCircle::Family => 1.00,
        SocialCircle::Friend => 0.75,
        SocialCircle::Colleague => 0.50,
        SocialCircle::Stranger => 0.25,
    };
    match decision {
        Decision::Accept => magnitude,
        Decision::Reject => -magnitude,
    }
}

/// A sanction passed from observer to actor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SanctionRecord {
    pub from: u32,
    pub to: u32,
    pub decision: Decision,
    pub magnitude: f64,
    pub circle: SocialCircle,
}

impl SanctionRecord {
    pub fn new(from: u32, to: u32, circle: SocialCircle, decision: Decision) -> Self {
        Self {
            from,
            to,
            decision,
            magnitude: sanction_magnitude(circle, decision),
            circle,
        }
    }
}

/// Which value a contextual factor speaks to, used by rationale filtering.
///
/// Defaults: `Risk` and `RiskFromAnother` relate to health, `Preference` to
/// freedom; public factors carry no association.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValueFactorTable {
    assoc: [Option<Value>; crate::context::ATTRIBUTE_COUNT],
}

impl Default for ValueFactorTable {
    fn default() -> Self {
        let mut assoc = [None; crate::context::ATTRIBUTE_COUNT];
        assoc[Attribute::Risk.index()] = Some(Value::Health);
        assoc[Attribute::RiskFromAnother.index()] = Some(Value::Health);
        assoc[Attribute::Preference.index()] = Some(Value::Freedom);
        Self { assoc }
    }
}

impl ValueFactorTable {
    pub fn set(&mut self, attribute: Attribute, value: Option<Value>) {
        self.assoc[attribute.index()] = value;
    }

    pub fn value_of(&self, attribute: Attribute) -> Option<Value> {
        self.assoc[attribute.index()]
    }
}

//! Contexts as attribute-binding sets with wildcard semantics.
//!
//! A context describes a situation as bindings over a closed attribute set.
//! Rule premises reuse the same representation: an absent attribute is a
//! wildcard. Attribute domains are closed enumerations so matching is
//! exhaustive and cheap.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The two actions available in the mask scenario.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Action {
    Wear,
    NotWear,
}

impl Action {
    pub const ALL: [Action; 2] = [Action::Wear, Action::NotWear];

    /// Stable ordinal used for deterministic tie-breaking (Wear first).
    pub fn ordinal(self) -> usize {
        match self {
            Action::Wear => 0,
            Action::NotWear => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Wear => "WEAR",
            Action::NotWear => "NOT_WEAR",
        }
    }

    pub fn parse(s: &str) -> Option<Action> {
        match s {
            "WEAR" => Some(Action::Wear),
            "NOT_WEAR" => Some(Action::NotWear),
            _ => None,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Believed infection risk of the current place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RiskLevel {
    None,
    Risk,
}

impl RiskLevel {
    pub fn name(self) -> &'static str {
        match self {
            RiskLevel::None => "NONE",
            RiskLevel::Risk => "RISK",
        }
    }
}

/// Relationship between two agents, derived from shared places.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SocialCircle {
    Family,
    Friend,
    Colleague,
    Stranger,
}

impl SocialCircle {
    pub const ALL: [SocialCircle; 4] = [
        SocialCircle::Family,
        SocialCircle::Friend,
        SocialCircle::Colleague,
        SocialCircle::Stranger,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SocialCircle::Family => "FAMILY",
            SocialCircle::Friend => "FRIEND",
            SocialCircle::Colleague => "COLLEAGUE",
            SocialCircle::Stranger => "STRANGER",
        }
    }
}

/// Which value an agent leans toward; observable by interaction partners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentType {
    Health,
    Freedom,
}

impl AgentType {
    pub fn name(self) -> &'static str {
        match self {
            AgentType::Health => "HEALTH",
            AgentType::Freedom => "FREEDOM",
        }
    }
}

/// Category of place an interaction happens at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceKind {
    Home,
    Office,
    Party,
    Park,
    Hospital,
}

impl PlaceKind {
    pub const ALL: [PlaceKind; 5] = [
        PlaceKind::Home,
        PlaceKind::Office,
        PlaceKind::Party,
        PlaceKind::Park,
        PlaceKind::Hospital,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PlaceKind::Home => "HOME",
            PlaceKind::Office => "OFFICE",
            PlaceKind::Party => "PARTY",
            PlaceKind::Park => "PARK",
            PlaceKind::Hospital => "HOSPITAL",
        }
    }
}

/// The closed attribute set of the scenario, in canonical (alphabetical) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Attribute {
    InteractWith,
    Location,
    ObserverAgentType,
    Preference,
    Risk,
    RiskFromAnother,
}

pub const ATTRIBUTE_COUNT: usize = 6;

impl Attribute {
    pub const ALL: [Attribute; ATTRIBUTE_COUNT] = [
        Attribute::InteractWith,
        Attribute::Location,
        Attribute::ObserverAgentType,
        Attribute::Preference,
        Attribute::Risk,
        Attribute::RiskFromAnother,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Attribute::InteractWith => "InteractWith",
            Attribute::Location => "Location",
            Attribute::ObserverAgentType => "ObserverAgentType",
            Attribute::Preference => "Preference",
            Attribute::Risk => "Risk",
            Attribute::RiskFromAnother => "RiskFromAnother",
        }
    }

    pub fn parse(s: &str) -> Option<Attribute> {
        Attribute::ALL.iter().copied().find(|a| a.name() == s)
    }
}

/// One attribute bound to a value from its domain.
///
/// The variant ties each attribute to its declared domain, so an
/// out-of-domain binding is unrepresentable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttributeBinding {
    InteractWith(SocialCircle),
    Location(PlaceKind),
    ObserverAgentType(AgentType),
    Preference(Action),
    Risk(RiskLevel),
    RiskFromAnother(RiskLevel),
}

impl AttributeBinding {
    pub fn attribute(self) -> Attribute {
        match self {
            AttributeBinding::InteractWith(_) => Attribute::InteractWith,
            AttributeBinding::Location(_) => Attribute::Location,
            AttributeBinding::ObserverAgentType(_) => Attribute::ObserverAgentType,
            AttributeBinding::Preference(_) => Attribute::Preference,
            AttributeBinding::Risk(_) => Attribute::Risk,
            AttributeBinding::RiskFromAnother(_) => Attribute::RiskFromAnother,
        }
    }

    pub fn value_name(self) -> &'static str {
        match self {
            AttributeBinding::InteractWith(v) => v.name(),
            AttributeBinding::Location(v) => v.name(),
            AttributeBinding::ObserverAgentType(v) => v.name(),
            AttributeBinding::Preference(v) => v.name(),
            AttributeBinding::Risk(v) => v.name(),
            AttributeBinding::RiskFromAnother(v) => v.name(),
        }
    }

    /// Parse `attr` and `value` names back into a binding.
    pub fn parse(attr: &str, value: &str) -> Result<AttributeBinding, ContextParseError> {
        let attribute = Attribute::parse(attr)
            .ok_or_else(|| ContextParseError::UnknownAttribute(attr.to_string()))?;
        let bad = || ContextParseError::BadBinding {
            attribute: attr.to_string(),
            value: value.to_string(),
        };
        let binding = match attribute {
            Attribute::InteractWith => AttributeBinding::InteractWith(
                SocialCircle::ALL
                    .into_iter()
                    .find(|c| c.name() == value)
                    .ok_or_else(bad)?,
            ),
            Attribute::Location => AttributeBinding::Location(
                PlaceKind::ALL
                    .into_iter()
                    .find(|p| p.name() == value)
                    .ok_or_else(bad)?,
            ),
            Attribute::ObserverAgentType => AttributeBinding::ObserverAgentType(match value {
                "HEALTH" => AgentType::Health,
                "FREEDOM" => AgentType::Freedom,
                _ => return Err(bad()),
            }),
            Attribute::Preference => {
                AttributeBinding::Preference(Action::parse(value).ok_or_else(bad)?)
            }
            Attribute::Risk => AttributeBinding::Risk(match value {
                "NONE" => RiskLevel::None,
                "RISK" => RiskLevel::Risk,
                _ => return Err(bad()),
            }),
            Attribute::RiskFromAnother => AttributeBinding::RiskFromAnother(match value {
                "NONE" => RiskLevel::None,
                "RISK" => RiskLevel::Risk,
                _ => return Err(bad()),
            }),
        };
        Ok(binding)
    }
}

impl fmt::Display for AttributeBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.attribute().name(), self.value_name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContextParseError {
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("attribute `{attribute}` has no value `{value}`")]
    BadBinding { attribute: String, value: String },
    #[error("malformed binding `{0}`, expected `Attr=VALUE`")]
    MalformedPair(String),
}

/// A set of attribute bindings, at most one per attribute.
///
/// Used both for full situation contexts and for rule premises, where an
/// unbound attribute acts as a wildcard.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContextVector {
    slots: [Option<AttributeBinding>; ATTRIBUTE_COUNT],
}

impl ContextVector {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builder-style insertion; replaces any previous binding of the attribute.
    pub fn with(mut self, binding: AttributeBinding) -> Self {
        self.set(binding);
        self
    }

    pub fn set(&mut self, binding: AttributeBinding) {
        self.slots[binding.attribute().index()] = Some(binding);
    }

    pub fn clear(&mut self, attribute: Attribute) {
        self.slots[attribute.index()] = None;
    }

    pub fn get(&self, attribute: Attribute) -> Option<AttributeBinding> {
        self.slots[attribute.index()]
    }

    pub fn is_bound(&self, attribute: Attribute) -> bool {
        self.slots[attribute.index()].is_some()
    }

    pub fn len(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.iter().all(|s| s.is_none())
    }

    /// Bindings in canonical attribute order.
    pub fn bindings(&self) -> impl Iterator<Item = AttributeBinding> + '_ {
        self.slots.iter().filter_map(|s| *s)
    }

    /// True iff every binding of `self` (a premise) has an equal binding in
    /// `ctx`. An empty premise matches everything. Total over partial
    /// contexts: a premise binding an attribute `ctx` leaves unbound does not
    /// match.
    pub fn matches(&self, ctx: &ContextVector) -> bool {
        self.slots
            .iter()
            .zip(ctx.slots.iter())
            .all(|(p, c)| match p {
                None => true,
                Some(b) => c.as_ref() == Some(b),
            })
    }

    /// True iff `self` binds a strict subset of `other`'s attributes and every
    /// shared binding is equal.
    pub fn is_strictly_more_general(&self, other: &ContextVector) -> bool {
        let mut strict = false;
        for (s, o) in self.slots.iter().zip(other.slots.iter()) {
            match (s, o) {
                (Some(a), Some(b)) if a != b => return false,
                (Some(_), None) => return false,
                (None, Some(_)) => strict = true,
                _ => {}
            }
        }
        strict
    }

    /// Overlay `other`'s bindings onto `self`, keeping the rest. Idempotent.
    pub fn overlaid_with<I: IntoIterator<Item = AttributeBinding>>(mut self, other: I) -> Self {
        for b in other {
            self.set(b);
        }
        self
    }

    // Typed accessors for the attributes the payoff machinery resolves.

    pub fn risk(&self) -> Option<RiskLevel> {
        match self.get(Attribute::Risk) {
            Some(AttributeBinding::Risk(r)) => Some(r),
            _ => None,
        }
    }

    pub fn preference(&self) -> Option<Action> {
        match self.get(Attribute::Preference) {
            Some(AttributeBinding::Preference(a)) => Some(a),
            _ => None,
        }
    }

    pub fn location(&self) -> Option<PlaceKind> {
        match self.get(Attribute::Location) {
            Some(AttributeBinding::Location(p)) => Some(p),
            _ => None,
        }
    }

    pub fn interact_with(&self) -> Option<SocialCircle> {
        match self.get(Attribute::InteractWith) {
            Some(AttributeBinding::InteractWith(c)) => Some(c),
            _ => None,
        }
    }

    /// Parse the canonical `Attr=VAL;Attr=VAL` rendering (empty string for the
    /// all-wildcard context).
    pub fn parse(s: &str) -> Result<ContextVector, ContextParseError> {
        let mut ctx = ContextVector::empty();
        for pair in s.split(';').filter(|p| !p.is_empty()) {
            let (attr, value) = pair
                .split_once('=')
                .ok_or_else(|| ContextParseError::MalformedPair(pair.to_string()))?;
            ctx.set(AttributeBinding::parse(attr.trim(), value.trim())?);
        }
        Ok(ctx)
    }
}

impl fmt::Display for ContextVector {
    /// Renders `Attr=VAL;Attr=VAL` in canonical attribute order; the empty
    /// context renders as the empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in self.bindings() {
            if !first {
                f.write_str(";")?;
            }
            write!(f, "{b}")?;
            first = false;
        }
        Ok(())
    }
}

/// Whether an attribute is observable by interaction partners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Visibility {
    Public,
    Private,
}

/// Per-attribute visibility, fixed per scenario.
///
/// Defaults: `Location`, `InteractWith`, and `ObserverAgentType` are public;
/// `Risk`, `Preference`, and `RiskFromAnother` are private.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrivacyTags {
    tags: [Visibility; ATTRIBUTE_COUNT],
}

impl Default for PrivacyTags {
    fn default() -> Self {
        let mut tags = [Visibility::Public; ATTRIBUTE_COUNT];
        tags[Attribute::Risk.index()] = Visibility::Private;
        tags[Attribute::Preference.index()] = Visibility::Private;
        tags[Attribute::RiskFromAnother.index()] = Visibility::Private;
        Self { tags }
    }
}

impl PrivacyTags {
    pub fn new(tags: [Visibility; ATTRIBUTE_COUNT]) -> Self {
        Self { tags }
    }

    pub fn set(&mut self, attribute: Attribute, visibility: Visibility) {
        self.tags[attribute.index()] = visibility;
    }

    pub fn is_private(&self, attribute: Attribute) -> bool {
        self.tags[attribute.index()] == Visibility::Private
    }

    pub fn private_count(&self, ctx: &ContextVector) -> u32 {
        ctx.bindings()
            .filter(|b| self.is_private(b.attribute()))
            .count() as u32
    }
}

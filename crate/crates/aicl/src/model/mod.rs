//! Core data model: message types, the recursive value grammar, metadata,
//! and the classification rules every other module builds on.

mod diag;
mod path;

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use chrono::{DateTime, SecondsFormat, Utc};
use thiserror::Error;

pub use diag::{rules, Diagnostic, Locus, RuleInfo, Severity};
pub use path::{FieldPath, PathRoot};

/// Construction-time validation failures for model values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid identifier `{0}`: both parts must be non-empty tokens of [A-Za-z0-9_-]")]
    Identifier(String),
    #[error("invalid timestamp `{0}`: expected RFC 3339 date-time")]
    Timestamp(String),
    #[error("non-finite float is not representable")]
    NonFiniteFloat,
    #[error("invalid map key `{0}`: keys are bare words [A-Za-z_][A-Za-z0-9_]*")]
    MapKey(String),
    #[error("invalid call token `{0}`: expected a token of [A-Za-z0-9_-]")]
    CallToken(String),
    #[error("invalid field path `{0}`: {1}")]
    Path(String, String),
}

fn is_word_token(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

/// Bare-word map keys: `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_map_key(s: &str) -> bool {
    let mut bytes = s.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A namespaced identifier, rendered as `<namespace>!<local>` (e.g. `u!q1`).
///
/// Namespaces are opaque tags; any single token is legal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Identifier {
    namespace: String,
    local: String,
}

impl Identifier {
    pub fn new(namespace: impl Into<String>, local: impl Into<String>) -> Result<Self, ModelError> {
        let namespace = namespace.into();
        let local = local.into();
        if !is_word_token(&namespace) || !is_word_token(&local) {
            return Err(ModelError::Identifier(format!("{namespace}!{local}")));
        }
        Ok(Identifier { namespace, local })
    }

    /// Parse the `ns!local` text form.
    pub fn parse(s: &str) -> Result<Self, ModelError> {
        match s.split_once('!') {
            Some((ns, local)) => Identifier::new(ns, local),
            None => Err(ModelError::Identifier(s.to_string())),
        }
    }

    pub fn namespace(&self) -> &str {
        &self.namespace
    }

    pub fn local(&self) -> &str {
        &self.local
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}!{}", self.namespace, self.local)
    }
}

/// A UTC instant with nanosecond precision, rendered as RFC 3339 inside a
/// `t(...)` literal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Timestamp(DateTime<Utc>);

impl Timestamp {
    pub fn new(instant: DateTime<Utc>) -> Self {
        Timestamp(instant)
    }

    /// Parse an RFC 3339 date-time; offsets are normalized to UTC.
    pub fn parse_rfc3339(s: &str) -> Result<Self, ModelError> {
        // More than nine fractional digits cannot round-trip through the
        // nanosecond representation.
        if let Some(dot) = s.find('.') {
            let frac = s[dot + 1..]
                .bytes()
                .take_while(|b| b.is_ascii_digit())
                .count();
            if frac > 9 {
                return Err(ModelError::Timestamp(s.to_string()));
            }
        }
        DateTime::parse_from_rfc3339(s)
            .map(|dt| Timestamp(dt.with_timezone(&Utc)))
            .map_err(|_| ModelError::Timestamp(s.to_string()))
    }

    /// Canonical RFC 3339 rendering: `Z` suffix, fractional seconds only
    /// when non-zero.
    pub fn to_rfc3339(&self) -> String {
        if self.0.timestamp_subsec_nanos() == 0 {
            self.0.to_rfc3339_opts(SecondsFormat::Secs, true)
        } else {
            self.0.to_rfc3339_opts(SecondsFormat::AutoSi, true)
        }
    }

    pub fn instant(&self) -> DateTime<Utc> {
        self.0
    }

    pub fn plus_secs(&self, secs: i64) -> Self {
        Timestamp(self.0 + chrono::Duration::seconds(secs))
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_rfc3339())
    }
}

/// A finite binary64 number. NaN and infinities are rejected at
/// construction so equality, ordering, and canonical encoding stay total.
///
/// Equality is bit equality: `0.0` and `-0.0` are distinct, matching their
/// distinct canonical encodings.
#[derive(Debug, Clone, Copy)]
pub struct Real(f64);

impl Real {
    pub fn new(v: f64) -> Result<Self, ModelError> {
        if v.is_finite() {
            Ok(Real(v))
        } else {
            Err(ModelError::NonFiniteFloat)
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits()
    }
}

impl Eq for Real {}

impl Hash for Real {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // `{:?}` is the shortest decimal that round-trips and always keeps
        // a `.` or exponent, so the text form never collapses into an int.
        write!(f, "{:?}", self.0)
    }
}

impl TryFrom<f64> for Real {
    type Error = ModelError;

    fn try_from(v: f64) -> Result<Self, ModelError> {
        Real::new(v)
    }
}

/// Ordered map underlying `Value::Map`; keys must be bare words.
pub type ValueMap = BTreeMap<String, Value>;

/// A namespaced call expression, rendered as `<namespace>:<name>{<args>}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CallExpr {
    pub namespace: String,
    pub name: String,
    pub args: ValueMap,
}

impl CallExpr {
    pub fn new(
        namespace: impl Into<String>,
        name: impl Into<String>,
        args: ValueMap,
    ) -> Result<Self, ModelError> {
        let namespace = namespace.into();
        let name = name.into();
        if !is_word_token(&namespace) {
            return Err(ModelError::CallToken(namespace));
        }
        if !is_word_token(&name) {
            return Err(ModelError::CallToken(name));
        }
        Ok(CallExpr {
            namespace,
            name,
            args,
        })
    }
}

/// The recursive data model shared by the text and binary forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Text(String),
    Int(i64),
    Float(Real),
    Bool(bool),
    Ident(Identifier),
    Time(Timestamp),
    List(Vec<Value>),
    Map(ValueMap),
    Call(CallExpr),
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    pub fn float(v: f64) -> Result<Self, ModelError> {
        Ok(Value::Float(Real::new(v)?))
    }

    pub fn as_text(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_float(&self) -> Option<f64> {
        match self {
            Value::Float(r) => Some(r.get()),
            _ => None,
        }
    }

    pub fn as_map(&self) -> Option<&ValueMap> {
        match self {
            Value::Map(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Value]> {
        match self {
            Value::List(items) => Some(items),
            _ => None,
        }
    }

    pub fn as_call(&self) -> Option<&CallExpr> {
        match self {
            Value::Call(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_ident(&self) -> Option<&Identifier> {
        match self {
            Value::Ident(id) => Some(id),
            _ => None,
        }
    }

    /// Look up a key in a map value.
    pub fn get(&self, key: &str) -> Option<&Value> {
        self.as_map().and_then(|m| m.get(key))
    }

    fn well_formed(&self) -> Result<(), ModelError> {
        match self {
            Value::Text(_) | Value::Int(_) | Value::Float(_) | Value::Bool(_) => Ok(()),
            Value::Ident(_) | Value::Time(_) => Ok(()),
            Value::List(items) => items.iter().try_for_each(Value::well_formed),
            Value::Map(m) => check_map(m),
            Value::Call(c) => {
                if !is_word_token(&c.namespace) {
                    return Err(ModelError::CallToken(c.namespace.clone()));
                }
                if !is_word_token(&c.name) {
                    return Err(ModelError::CallToken(c.name.clone()));
                }
                check_map(&c.args)
            }
        }
    }
}

fn check_map(m: &ValueMap) -> Result<(), ModelError> {
    for (k, v) in m {
        if !is_map_key(k) {
            return Err(ModelError::MapKey(k.clone()));
        }
        v.well_formed()?;
    }
    Ok(())
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<Identifier> for Value {
    fn from(id: Identifier) -> Self {
        Value::Ident(id)
    }
}

/// The thirteen message types, rendered as dotted uppercase names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MessageType {
    Hello,
    Query,
    Plan,
    Fact,
    Facts,
    Result,
    Error,
    MemoryStore,
    MemoryRecall,
    CoordDelegate,
    ReasoningStart,
    ReasoningStep,
    ReasoningComplete,
}

/// Behavioral classification of a message type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MessageClass {
    Lifecycle,
    Request,
    Assertion,
    Response,
    Memory,
    Coordination,
    ReasoningMark,
}

impl MessageType {
    pub const ALL: [MessageType; 13] = [
        MessageType::Hello,
        MessageType::Query,
        MessageType::Plan,
        MessageType::Fact,
        MessageType::Facts,
        MessageType::Result,
        MessageType::Error,
        MessageType::MemoryStore,
        MessageType::MemoryRecall,
        MessageType::CoordDelegate,
        MessageType::ReasoningStart,
        MessageType::ReasoningStep,
        MessageType::ReasoningComplete,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MessageType::Hello => "HELLO",
            MessageType::Query => "QUERY",
            MessageType::Plan => "PLAN",
            MessageType::Fact => "FACT",
            MessageType::Facts => "FACTS",
            MessageType::Result => "RESULT",
            MessageType::Error => "ERROR",
            MessageType::MemoryStore => "MEMORY.STORE",
            MessageType::MemoryRecall => "MEMORY.RECALL",
            MessageType::CoordDelegate => "COORD.DELEGATE",
            MessageType::ReasoningStart => "REASONING.START",
            MessageType::ReasoningStep => "REASONING.STEP",
            MessageType::ReasoningComplete => "REASONING.COMPLETE",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        MessageType::ALL.into_iter().find(|t| t.as_str() == s)
    }

    /// Total classification of every message type.
    pub fn classify(self) -> MessageClass {
        match self {
            MessageType::Hello => MessageClass::Lifecycle,
            MessageType::Query | MessageType::Plan => MessageClass::Request,
            MessageType::Fact | MessageType::Facts => MessageClass::Assertion,
            MessageType::Result | MessageType::Error => MessageClass::Response,
            MessageType::MemoryStore | MessageType::MemoryRecall => MessageClass::Memory,
            MessageType::CoordDelegate => MessageClass::Coordination,
            MessageType::ReasoningStart
            | MessageType::ReasoningStep
            | MessageType::ReasoningComplete => MessageClass::ReasoningMark,
        }
    }

    /// Whether `meta.of` is mandatory: responses, plus the reasoning
    /// continuation marks that link back to their REASONING.START.
    pub fn requires_of(self) -> bool {
        matches!(
            self,
            MessageType::Result
                | MessageType::Error
                | MessageType::ReasoningStep
                | MessageType::ReasoningComplete
        )
    }
}

impl fmt::Display for MessageType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The metadata record carried by every message.
///
/// `id` and `ts` are mandatory at construction; the remaining core fields
/// are optional here so that partial inputs can be represented, with
/// absences reported by [`check_metadata`] rather than at parse time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metadata {
    pub id: Identifier,
    pub ts: Timestamp,
    pub ver: Option<String>,
    pub cid: Option<Identifier>,
    pub ctx: Option<Vec<Identifier>>,
    pub model_version: Option<String>,
    pub conf: Option<Real>,
    pub priors: Option<BTreeMap<String, Real>>,
    pub space: Option<String>,
    pub of: Option<Identifier>,
    pub reasoning_trace: Option<Identifier>,
    pub cost: Option<BTreeMap<String, i64>>,
    pub latency: Option<i64>,
    pub sig: Option<Vec<u8>>,
    pub cap: Option<Vec<String>>,
}

impl Metadata {
    /// Canonical text-form key order.
    pub const FIELD_ORDER: [&'static str; 15] = [
        "id",
        "ts",
        "ver",
        "cid",
        "ctx",
        "model_version",
        "conf",
        "priors",
        "space",
        "of",
        "reasoning_trace",
        "cost",
        "latency",
        "sig",
        "cap",
    ];

    pub fn new(id: Identifier, ts: Timestamp) -> Self {
        Metadata {
            id,
            ts,
            ver: None,
            cid: None,
            ctx: None,
            model_version: None,
            conf: None,
            priors: None,
            space: None,
            of: None,
            reasoning_trace: None,
            cost: None,
            latency: None,
            sig: None,
            cap: None,
        }
    }

    pub fn with_ver(mut self, ver: impl Into<String>) -> Self {
        self.ver = Some(ver.into());
        self
    }

    pub fn with_cid(mut self, cid: Identifier) -> Self {
        self.cid = Some(cid);
        self
    }

    pub fn with_ctx(mut self, ctx: Vec<Identifier>) -> Self {
        self.ctx = Some(ctx);
        self
    }

    pub fn with_model_version(mut self, mv: impl Into<String>) -> Self {
        self.model_version = Some(mv.into());
        self
    }

    pub fn with_conf(mut self, conf: Real) -> Self {
        self.conf = Some(conf);
        self
    }

    pub fn with_priors(mut self, priors: BTreeMap<String, Real>) -> Self {
        self.priors = Some(priors);
        self
    }

    pub fn with_space(mut self, space: impl Into<String>) -> Self {
        self.space = Some(space.into());
        self
    }

    pub fn with_of(mut self, of: Identifier) -> Self {
        self.of = Some(of);
        self
    }

    pub fn with_reasoning_trace(mut self, rt: Identifier) -> Self {
        self.reasoning_trace = Some(rt);
        self
    }

    pub fn with_cost(mut self, cost: BTreeMap<String, i64>) -> Self {
        self.cost = Some(cost);
        self
    }

    pub fn with_latency(mut self, ms: i64) -> Self {
        self.latency = Some(ms);
        self
    }

    pub fn with_sig(mut self, sig: Vec<u8>) -> Self {
        self.sig = Some(sig);
        self
    }

    pub fn with_cap(mut self, cap: Vec<String>) -> Self {
        self.cap = Some(cap);
        self
    }
}

/// One AICL envelope: `[TYPE: CONTENT | METADATA]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message {
    pub mtype: MessageType,
    pub content: Value,
    pub meta: Metadata,
}

impl Message {
    pub fn new(mtype: MessageType, content: Value, meta: Metadata) -> Self {
        Message {
            mtype,
            content,
            meta,
        }
    }

    /// Structural well-formedness beyond what construction enforces:
    /// every map key in the content (and in call arguments) is a bare word,
    /// and priors/cost keys are bare words too.
    pub fn well_formed(&self) -> Result<(), ModelError> {
        self.content.well_formed()?;
        if let Some(priors) = &self.meta.priors {
            for k in priors.keys() {
                if !is_map_key(k) {
                    return Err(ModelError::MapKey(k.clone()));
                }
            }
        }
        if let Some(cost) = &self.meta.cost {
            for k in cost.keys() {
                if !is_map_key(k) {
                    return Err(ModelError::MapKey(k.clone()));
                }
            }
        }
        Ok(())
    }
}

fn is_numeric_semver(s: &str) -> bool {
    let parts: Vec<&str> = s.split('.').collect();
    parts.len() == 3
        && parts.iter().all(|p| {
            !p.is_empty()
                && p.bytes().all(|b| b.is_ascii_digit())
                && (p.len() == 1 || !p.starts_with('0'))
        })
}

/// Field-level metadata validation. Findings are returned, never thrown;
/// an empty list means every required field is present, every range and
/// format invariant holds, and the `of` requirement for `mtype` is met.
pub fn check_metadata(meta: &Metadata, mtype: MessageType) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let mut push = |severity: Severity, rule: &'static str, field: &str, detail: String| {
        out.push(Diagnostic {
            severity,
            rule,
            locus: Locus::field(format!("meta.{field}")),
            detail,
        });
    };

    match &meta.ver {
        None => push(
            Severity::Error,
            rules::META_VER_REQUIRED,
            "ver",
            "required field `ver` is missing".into(),
        ),
        Some(v) if !is_numeric_semver(v) => push(
            Severity::Error,
            rules::META_VER_FORMAT,
            "ver",
            format!("`ver` must be numeric MAJOR.MINOR.PATCH, got \"{v}\""),
        ),
        _ => {}
    }

    if meta.cid.is_none() {
        push(
            Severity::Error,
            rules::META_CID_REQUIRED,
            "cid",
            "required field `cid` is missing".into(),
        );
    }

    match &meta.ctx {
        None => push(
            Severity::Error,
            rules::META_CTX_REQUIRED,
            "ctx",
            "required field `ctx` is missing".into(),
        ),
        Some(ctx) if ctx.is_empty() => push(
            Severity::Error,
            rules::META_CTX_EMPTY,
            "ctx",
            "`ctx` must list at least one scope identifier".into(),
        ),
        _ => {}
    }

    if meta.model_version.is_none() {
        push(
            Severity::Error,
            rules::META_MODEL_VERSION_REQUIRED,
            "model_version",
            "required field `model_version` is missing".into(),
        );
    }

    match meta.conf {
        None => {
            // The paper reports confidence on model outputs; its absence is
            // an error only where outputs are being asserted.
            let severity = match mtype {
                MessageType::Result | MessageType::Fact | MessageType::Facts => Severity::Error,
                _ => Severity::Warning,
            };
            push(
                severity,
                rules::META_CONF_REQUIRED,
                "conf",
                "field `conf` is missing".into(),
            );
        }
        Some(c) if !(0.0..=1.0).contains(&c.get()) => push(
            Severity::Error,
            rules::META_CONF_RANGE,
            "conf",
            format!("`conf` must lie in [0,1], got {c}"),
        ),
        _ => {}
    }

    match &meta.priors {
        None => push(
            Severity::Error,
            rules::META_PRIORS_REQUIRED,
            "priors",
            "required field `priors` is missing".into(),
        ),
        Some(priors) => {
            for (name, p) in priors {
                if !(0.0..=1.0).contains(&p.get()) {
                    push(
                        Severity::Error,
                        rules::META_PRIORS_RANGE,
                        &format!("priors.{name}"),
                        format!("prior `{name}` must lie in [0,1], got {p}"),
                    );
                }
            }
        }
    }

    if meta.space.is_none() {
        push(
            Severity::Error,
            rules::META_SPACE_REQUIRED,
            "space",
            "required field `space` is missing".into(),
        );
    }

    if mtype.requires_of() && meta.of.is_none() {
        push(
            Severity::Error,
            rules::META_OF_REQUIRED,
            "of",
            format!("`of` is required on {mtype}"),
        );
    }

    if let Some(cost) = &meta.cost {
        for (name, n) in cost {
            if *n < 0 {
                push(
                    Severity::Error,
                    rules::META_COST_RANGE,
                    &format!("cost.{name}"),
                    format!("cost entry `{name}` must be non-negative, got {n}"),
                );
            }
        }
    }

    if let Some(ms) = meta.latency {
        if ms < 0 {
            push(
                Severity::Error,
                rules::META_LATENCY_RANGE,
                "latency",
                format!("`latency` must be non-negative, got {ms}"),
            );
        }
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ident(s: &str) -> Identifier {
        Identifier::parse(s).unwrap()
    }

    fn ts(s: &str) -> Timestamp {
        Timestamp::parse_rfc3339(s).unwrap()
    }

    #[test]
    fn classify_is_total_and_matches_the_table() {
        use MessageClass::*;
        let expected = [
            (MessageType::Hello, Lifecycle),
            (MessageType::Query, Request),
            (MessageType::Plan, Request),
            (MessageType::Fact, Assertion),
            (MessageType::Facts, Assertion),
            (MessageType::Result, Response),
            (MessageType::Error, Response),
            (MessageType::MemoryStore, Memory),
            (MessageType::MemoryRecall, Memory),
            (MessageType::CoordDelegate, Coordination),
            (MessageType::ReasoningStart, ReasoningMark),
            (MessageType::ReasoningStep, ReasoningMark),
            (MessageType::ReasoningComplete, ReasoningMark),
        ];
        for (mtype, class) in expected {
            assert_eq!(mtype.classify(), class, "{mtype}");
        }
    }

    #[test]
    fn requires_of_exactly_for_responses_and_reasoning_continuations() {
        for mtype in MessageType::ALL {
            let expected = matches!(
                mtype,
                MessageType::Result
                    | MessageType::Error
                    | MessageType::ReasoningStep
                    | MessageType::ReasoningComplete
            );
            assert_eq!(mtype.requires_of(), expected, "{mtype}");
            if mtype.requires_of() {
                assert!(
                    matches!(
                        mtype.classify(),
                        MessageClass::Response | MessageClass::ReasoningMark
                    ),
                    "requires_of implies Response or ReasoningMark"
                );
            }
        }
    }

    #[test]
    fn type_names_round_trip() {
        for mtype in MessageType::ALL {
            assert_eq!(MessageType::from_name(mtype.as_str()), Some(mtype));
        }
        assert_eq!(MessageType::from_name("MEMORY.DROP"), None);
    }

    #[test]
    fn identifier_rejects_bad_tokens() {
        assert!(Identifier::new("u", "q1").is_ok());
        assert!(Identifier::new("agent-2", "step_3").is_ok());
        assert!(Identifier::new("", "q1").is_err());
        assert!(Identifier::new("u", "").is_err());
        assert!(Identifier::new("u", "a b").is_err());
        assert!(Identifier::new("u", "a.b").is_err());
        assert_eq!(ident("u!q1").to_string(), "u!q1");
    }

    #[test]
    fn timestamp_round_trips_and_normalizes_to_utc() {
        let t = ts("2025-08-15T02:00:00Z");
        assert_eq!(t.to_rfc3339(), "2025-08-15T02:00:00Z");

        let offset = ts("2025-08-15T04:30:00+02:30");
        assert_eq!(offset.to_rfc3339(), "2025-08-15T02:00:00Z");
        assert_eq!(offset, t);

        let frac = ts("2025-08-15T02:00:00.120Z");
        assert_eq!(frac.to_rfc3339(), "2025-08-15T02:00:00.120Z");
        assert_eq!(Timestamp::parse_rfc3339(&frac.to_rfc3339()).unwrap(), frac);

        assert!(Timestamp::parse_rfc3339("2025-08-15T02:00:00.1234567891Z").is_err());
        assert!(Timestamp::parse_rfc3339("2025-13-40T99:00:00Z").is_err());
        assert!(Timestamp::parse_rfc3339("not a time").is_err());
    }

    #[test]
    fn real_rejects_non_finite_and_compares_by_bits() {
        assert!(Real::new(f64::NAN).is_err());
        assert!(Real::new(f64::INFINITY).is_err());
        assert!(Real::new(f64::NEG_INFINITY).is_err());
        assert_ne!(Real::new(0.0).unwrap(), Real::new(-0.0).unwrap());
        assert_eq!(Real::new(0.93).unwrap().to_string(), "0.93");
        assert_eq!(Real::new(29.0).unwrap().to_string(), "29.0");
    }

    fn full_meta(mtype: MessageType) -> Metadata {
        let mut m = Metadata::new(ident("u!r1"), ts("2025-08-15T02:00:03Z"))
            .with_ver("1.2.0")
            .with_cid(ident("u!conv123"))
            .with_ctx(vec![ident("u!conv123")])
            .with_model_version("gpt-5-20250801")
            .with_conf(Real::new(0.93).unwrap())
            .with_priors(BTreeMap::new())
            .with_space("weather");
        if mtype.requires_of() {
            m = m.with_of(ident("u!q1"));
        }
        m
    }

    #[test]
    fn complete_result_metadata_is_clean() {
        let meta = full_meta(MessageType::Result);
        assert_eq!(check_metadata(&meta, MessageType::Result), vec![]);
    }

    #[test]
    fn conf_out_of_range_is_one_error() {
        let mut meta = full_meta(MessageType::Result);
        meta.conf = Some(Real::new(1.5).unwrap());
        let diags = check_metadata(&meta, MessageType::Result);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].rule, rules::META_CONF_RANGE);
        assert_eq!(diags[0].severity, Severity::Error);
    }

    #[test]
    fn missing_of_on_result_is_an_error() {
        let mut meta = full_meta(MessageType::Result);
        meta.of = None;
        let diags = check_metadata(&meta, MessageType::Result);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].rule, rules::META_OF_REQUIRED);
    }

    #[test]
    fn conf_absence_severity_depends_on_type() {
        let mut meta = full_meta(MessageType::Result);
        meta.conf = None;
        let on_result = check_metadata(&meta, MessageType::Result);
        assert_eq!(on_result[0].rule, rules::META_CONF_REQUIRED);
        assert_eq!(on_result[0].severity, Severity::Error);

        let mut meta = full_meta(MessageType::Query);
        meta.conf = None;
        let on_query = check_metadata(&meta, MessageType::Query);
        assert_eq!(on_query[0].rule, rules::META_CONF_REQUIRED);
        assert_eq!(on_query[0].severity, Severity::Warning);
    }

    #[test]
    fn range_and_format_rules_fire() {
        let mut meta = full_meta(MessageType::Query);
        meta.ver = Some("1.2".into());
        meta.ctx = Some(vec![]);
        meta.priors = Some(BTreeMap::from([
            ("sunny".to_string(), Real::new(1.25).unwrap()),
            ("rain".to_string(), Real::new(0.5).unwrap()),
        ]));
        meta.cost = Some(BTreeMap::from([("tokens_in".to_string(), -3)]));
        meta.latency = Some(-1);
        let diags = check_metadata(&meta, MessageType::Query);
        let rules_fired: Vec<&str> = diags.iter().map(|d| d.rule).collect();
        assert_eq!(
            rules_fired,
            vec![
                rules::META_VER_FORMAT,
                rules::META_CTX_EMPTY,
                rules::META_PRIORS_RANGE,
                rules::META_COST_RANGE,
                rules::META_LATENCY_RANGE,
            ]
        );
    }

    #[test]
    fn semver_must_be_numeric_without_leading_zeros() {
        assert!(is_numeric_semver("1.2.0"));
        assert!(is_numeric_semver("0.0.0"));
        assert!(is_numeric_semver("10.20.30"));
        assert!(!is_numeric_semver("1.2"));
        assert!(!is_numeric_semver("1.2.0.4"));
        assert!(!is_numeric_semver("1.02.0"));
        assert!(!is_numeric_semver("v1.2.0"));
        assert!(!is_numeric_semver("1.2.x"));
    }

    #[test]
    fn check_metadata_is_deterministic() {
        let mut meta = full_meta(MessageType::Result);
        meta.conf = Some(Real::new(2.0).unwrap());
        meta.ver = Some("nope".into());
        let a = check_metadata(&meta, MessageType::Result);
        let b = check_metadata(&meta, MessageType::Result);
        assert_eq!(a, b);
    }

    #[test]
    fn well_formed_rejects_bad_map_keys() {
        let meta = full_meta(MessageType::Fact);
        let mut bad = ValueMap::new();
        bad.insert("not a key".to_string(), Value::Int(1));
        let msg = Message::new(MessageType::Fact, Value::Map(bad), meta.clone());
        assert!(matches!(msg.well_formed(), Err(ModelError::MapKey(_))));

        let good = Message::new(
            MessageType::Fact,
            Value::Map(ValueMap::from([("temp_c".to_string(), Value::Int(29))])),
            meta,
        );
        assert!(good.well_formed().is_ok());
    }

    #[test]
    fn message_equality_is_structural() {
        let meta = full_meta(MessageType::Result);
        let content = Value::Map(ValueMap::from([
            ("data".to_string(), Value::Int(1)),
            ("schema".to_string(), Value::text("s/1")),
        ]));
        let a = Message::new(MessageType::Result, content.clone(), meta.clone());
        let b = Message::new(MessageType::Result, content, meta);
        assert_eq!(a, b);
    }
}

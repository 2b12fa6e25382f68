//! Diagnostics and the fixed rule registry.

use std::fmt;

/// Finding severity. Ordered so that `Info < Warning < Error`, which makes
/// severity-floor comparisons direct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Info,
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Info => "info",
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "info" => Some(Severity::Info),
            "warning" | "warn" => Some(Severity::Warning),
            "error" => Some(Severity::Error),
            _ => None,
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a finding points: a message index within the checked sequence and
/// an optional field path inside that message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Locus {
    pub seq: usize,
    pub path: Option<String>,
}

impl Locus {
    pub fn message(seq: usize) -> Self {
        Locus { seq, path: None }
    }

    pub fn field(path: impl Into<String>) -> Self {
        Locus {
            seq: 0,
            path: Some(path.into()),
        }
    }

    pub fn at(seq: usize, path: impl Into<String>) -> Self {
        Locus {
            seq,
            path: Some(path.into()),
        }
    }
}

/// A validation finding with a stable rule id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub rule: &'static str,
    pub locus: Locus,
    pub detail: String,
}

impl Diagnostic {
    /// Re-anchor a finding at a message index (used when per-message checks
    /// are folded into a conversation-level report).
    pub fn at_seq(mut self, seq: usize) -> Self {
        self.locus.seq = seq;
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} seq={}", self.severity, self.rule, self.locus.seq)?;
        if let Some(path) = &self.locus.path {
            write!(f, " {path}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

/// One registry entry: stable id, default severity, description.
#[derive(Debug, Clone, Copy)]
pub struct RuleInfo {
    pub id: &'static str,
    pub default_severity: Severity,
    pub description: &'static str,
}

/// Stable rule ids and the published registry.
pub mod rules {
    use super::{RuleInfo, Severity};

    pub const META_VER_REQUIRED: &str = "META.VER.REQUIRED";
    pub const META_VER_FORMAT: &str = "META.VER.FORMAT";
    pub const META_CID_REQUIRED: &str = "META.CID.REQUIRED";
    pub const META_CTX_REQUIRED: &str = "META.CTX.REQUIRED";
    pub const META_CTX_EMPTY: &str = "META.CTX.EMPTY";
    pub const META_MODEL_VERSION_REQUIRED: &str = "META.MODEL_VERSION.REQUIRED";
    pub const META_CONF_REQUIRED: &str = "META.CONF.REQUIRED";
    pub const META_CONF_RANGE: &str = "META.CONF.RANGE";
    pub const META_PRIORS_REQUIRED: &str = "META.PRIORS.REQUIRED";
    pub const META_PRIORS_RANGE: &str = "META.PRIORS.RANGE";
    pub const META_SPACE_REQUIRED: &str = "META.SPACE.REQUIRED";
    pub const META_OF_REQUIRED: &str = "META.OF.REQUIRED";
    pub const META_COST_RANGE: &str = "META.COST.RANGE";
    pub const META_LATENCY_RANGE: &str = "META.LATENCY.RANGE";

    pub const PAYLOAD_QUERY_CALL: &str = "PAYLOAD.QUERY.CALL";
    pub const PAYLOAD_RESULT_MAP: &str = "PAYLOAD.RESULT.MAP";
    pub const PAYLOAD_RESULT_DATA: &str = "PAYLOAD.RESULT.DATA";
    pub const PAYLOAD_RESULT_SCHEMA: &str = "PAYLOAD.RESULT.SCHEMA";
    pub const PAYLOAD_ERROR_MAP: &str = "PAYLOAD.ERROR.MAP";
    pub const PAYLOAD_ERROR_CODE: &str = "PAYLOAD.ERROR.CODE";
    pub const PAYLOAD_PLAN_LIST: &str = "PAYLOAD.PLAN.LIST";
    pub const PAYLOAD_PLAN_STEP: &str = "PAYLOAD.PLAN.STEP";
    pub const PAYLOAD_PLAN_DEP: &str = "PAYLOAD.PLAN.DEP";
    pub const PAYLOAD_FACT_MAP: &str = "PAYLOAD.FACT.MAP";
    pub const PAYLOAD_FACTS_LIST: &str = "PAYLOAD.FACTS.LIST";
    pub const PAYLOAD_FACT_CONF: &str = "PAYLOAD.FACT.CONF";
    pub const PAYLOAD_STORE_MAP: &str = "PAYLOAD.STORE.MAP";
    pub const PAYLOAD_STORE_KEY: &str = "PAYLOAD.STORE.KEY";
    pub const PAYLOAD_STORE_VALUE: &str = "PAYLOAD.STORE.VALUE";
    pub const PAYLOAD_STORE_SCOPE: &str = "PAYLOAD.STORE.SCOPE";
    pub const PAYLOAD_RECALL_MAP: &str = "PAYLOAD.RECALL.MAP";
    pub const PAYLOAD_RECALL_KEY: &str = "PAYLOAD.RECALL.KEY";
    pub const PAYLOAD_DELEGATE_MAP: &str = "PAYLOAD.DELEGATE.MAP";
    pub const PAYLOAD_DELEGATE_TASK: &str = "PAYLOAD.DELEGATE.TASK";
    pub const PAYLOAD_DELEGATE_TARGET: &str = "PAYLOAD.DELEGATE.TARGET";
    pub const PAYLOAD_HELLO_MAP: &str = "PAYLOAD.HELLO.MAP";
    pub const PAYLOAD_HELLO_AGENT: &str = "PAYLOAD.HELLO.AGENT";
    pub const PAYLOAD_HELLO_CAPS: &str = "PAYLOAD.HELLO.CAPS";
    pub const PAYLOAD_HELLO_VERSION: &str = "PAYLOAD.HELLO.VERSION";

    pub const HELLO_FIRST: &str = "HELLO.FIRST";
    pub const OF_DANGLING: &str = "OF.DANGLING";
    pub const OF_TARGET: &str = "OF.TARGET";
    pub const OF_DELEGATE: &str = "OF.DELEGATE";
    pub const REASONING_TARGET: &str = "REASONING.TARGET";
    pub const REASONING_OPEN: &str = "REASONING.OPEN";
    pub const TS_ORDER: &str = "TS.ORDER";
    pub const ID_DUP: &str = "ID.DUP";
    pub const REQ_OPEN: &str = "REQ.OPEN";
    pub const MEM_MISS: &str = "MEM.MISS";
    pub const MEM_OVERWRITE: &str = "MEM.OVERWRITE";
    pub const CTX_ISOLATION: &str = "CTX.ISOLATION";

    /// The fixed registry behind `docs/rules.md`.
    pub static REGISTRY: &[RuleInfo] = &[
        RuleInfo { id: META_VER_REQUIRED, default_severity: Severity::Error, description: "required metadata field `ver` is missing" },
        RuleInfo { id: META_VER_FORMAT, default_severity: Severity::Error, description: "`ver` is not numeric MAJOR.MINOR.PATCH" },
        RuleInfo { id: META_CID_REQUIRED, default_severity: Severity::Error, description: "required metadata field `cid` is missing" },
        RuleInfo { id: META_CTX_REQUIRED, default_severity: Severity::Error, description: "required metadata field `ctx` is missing" },
        RuleInfo { id: META_CTX_EMPTY, default_severity: Severity::Error, description: "`ctx` must be a non-empty list of scope identifiers" },
        RuleInfo { id: META_MODEL_VERSION_REQUIRED, default_severity: Severity::Error, description: "required metadata field `model_version` is missing" },
        RuleInfo { id: META_CONF_REQUIRED, default_severity: Severity::Warning, description: "`conf` is missing (error on RESULT/FACT/FACTS, warning elsewhere)" },
        RuleInfo { id: META_CONF_RANGE, default_severity: Severity::Error, description: "`conf` lies outside [0,1]" },
        RuleInfo { id: META_PRIORS_REQUIRED, default_severity: Severity::Error, description: "required metadata field `priors` is missing" },
        RuleInfo { id: META_PRIORS_RANGE, default_severity: Severity::Error, description: "a priors entry lies outside [0,1]" },
        RuleInfo { id: META_SPACE_REQUIRED, default_severity: Severity::Error, description: "required metadata field `space` is missing" },
        RuleInfo { id: META_OF_REQUIRED, default_severity: Severity::Error, description: "`of` is required on response-type messages" },
        RuleInfo { id: META_COST_RANGE, default_severity: Severity::Error, description: "a cost entry is negative" },
        RuleInfo { id: META_LATENCY_RANGE, default_severity: Severity::Error, description: "`latency` is negative" },
        RuleInfo { id: PAYLOAD_QUERY_CALL, default_severity: Severity::Error, description: "QUERY content must be a call expression" },
        RuleInfo { id: PAYLOAD_RESULT_MAP, default_severity: Severity::Error, description: "RESULT content must be a map" },
        RuleInfo { id: PAYLOAD_RESULT_DATA, default_severity: Severity::Error, description: "RESULT content must carry `data`" },
        RuleInfo { id: PAYLOAD_RESULT_SCHEMA, default_severity: Severity::Error, description: "RESULT content must carry a text `schema`" },
        RuleInfo { id: PAYLOAD_ERROR_MAP, default_severity: Severity::Error, description: "ERROR content must be a map" },
        RuleInfo { id: PAYLOAD_ERROR_CODE, default_severity: Severity::Error, description: "ERROR content must carry a text `code`" },
        RuleInfo { id: PAYLOAD_PLAN_LIST, default_severity: Severity::Error, description: "PLAN content must be a list of step maps" },
        RuleInfo { id: PAYLOAD_PLAN_STEP, default_severity: Severity::Error, description: "a PLAN step must be a map with `step_id`, `action`, `depends_on` list" },
        RuleInfo { id: PAYLOAD_PLAN_DEP, default_severity: Severity::Error, description: "a PLAN step depends on an undeclared step_id" },
        RuleInfo { id: PAYLOAD_FACT_MAP, default_severity: Severity::Error, description: "FACT content must be a single assertion map" },
        RuleInfo { id: PAYLOAD_FACTS_LIST, default_severity: Severity::Error, description: "FACTS content must be a list of assertion maps" },
        RuleInfo { id: PAYLOAD_FACT_CONF, default_severity: Severity::Error, description: "an assertion `conf` annotation must be a float in [0,1]" },
        RuleInfo { id: PAYLOAD_STORE_MAP, default_severity: Severity::Error, description: "MEMORY.STORE content must be a map" },
        RuleInfo { id: PAYLOAD_STORE_KEY, default_severity: Severity::Error, description: "MEMORY.STORE content must carry a text `key`" },
        RuleInfo { id: PAYLOAD_STORE_VALUE, default_severity: Severity::Error, description: "MEMORY.STORE content must carry `value`" },
        RuleInfo { id: PAYLOAD_STORE_SCOPE, default_severity: Severity::Error, description: "MEMORY.STORE content must carry a text `scope`" },
        RuleInfo { id: PAYLOAD_RECALL_MAP, default_severity: Severity::Error, description: "MEMORY.RECALL content must be a map" },
        RuleInfo { id: PAYLOAD_RECALL_KEY, default_severity: Severity::Error, description: "MEMORY.RECALL content must carry a text `key`" },
        RuleInfo { id: PAYLOAD_DELEGATE_MAP, default_severity: Severity::Error, description: "COORD.DELEGATE content must be a map" },
        RuleInfo { id: PAYLOAD_DELEGATE_TASK, default_severity: Severity::Error, description: "COORD.DELEGATE content must carry a call `task`" },
        RuleInfo { id: PAYLOAD_DELEGATE_TARGET, default_severity: Severity::Error, description: "COORD.DELEGATE content must carry an identifier `delegate`" },
        RuleInfo { id: PAYLOAD_HELLO_MAP, default_severity: Severity::Error, description: "HELLO content must be a map" },
        RuleInfo { id: PAYLOAD_HELLO_AGENT, default_severity: Severity::Error, description: "HELLO content must carry `agent`" },
        RuleInfo { id: PAYLOAD_HELLO_CAPS, default_severity: Severity::Error, description: "HELLO content must carry a `capabilities` list" },
        RuleInfo { id: PAYLOAD_HELLO_VERSION, default_severity: Severity::Error, description: "HELLO content must carry `version`" },
        RuleInfo { id: HELLO_FIRST, default_severity: Severity::Warning, description: "the first message from a sender within a conversation should be HELLO" },
        RuleInfo { id: OF_DANGLING, default_severity: Severity::Error, description: "`of` does not resolve to an earlier message in the same conversation" },
        RuleInfo { id: OF_TARGET, default_severity: Severity::Error, description: "a RESULT/ERROR `of` must target a request or delegation" },
        RuleInfo { id: OF_DELEGATE, default_severity: Severity::Info, description: "a RESULT/ERROR answers a COORD.DELEGATE directly" },
        RuleInfo { id: REASONING_TARGET, default_severity: Severity::Error, description: "REASONING.STEP/COMPLETE must target an open REASONING.START" },
        RuleInfo { id: REASONING_OPEN, default_severity: Severity::Warning, description: "a REASONING.START is never completed" },
        RuleInfo { id: TS_ORDER, default_severity: Severity::Warning, description: "`ts` decreases within a conversation" },
        RuleInfo { id: ID_DUP, default_severity: Severity::Error, description: "duplicate message id within a trace" },
        RuleInfo { id: REQ_OPEN, default_severity: Severity::Info, description: "a request has no response by end of conversation" },
        RuleInfo { id: MEM_MISS, default_severity: Severity::Warning, description: "MEMORY.RECALL of a key never stored in this conversation" },
        RuleInfo { id: MEM_OVERWRITE, default_severity: Severity::Info, description: "MEMORY.STORE overwrites an existing key" },
        RuleInfo { id: CTX_ISOLATION, default_severity: Severity::Error, description: "MEMORY.RECALL resolves only to stores with disjoint ctx" },
    ];

    /// Look up a rule's registry entry.
    pub fn lookup(id: &str) -> Option<&'static RuleInfo> {
        REGISTRY.iter().find(|r| r.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn severity_orders_for_floor_comparison() {
        assert!(Severity::Info < Severity::Warning);
        assert!(Severity::Warning < Severity::Error);
        assert_eq!(Severity::parse("WARN"), Some(Severity::Warning));
        assert_eq!(Severity::parse("bogus"), None);
    }

    #[test]
    fn registry_ids_are_unique() {
        let mut seen = std::collections::BTreeSet::new();
        for rule in rules::REGISTRY {
            assert!(seen.insert(rule.id), "duplicate rule id {}", rule.id);
        }
    }

    #[test]
    fn lookup_finds_known_rules() {
        let info = rules::lookup("META.CONF.RANGE").unwrap();
        assert_eq!(info.default_severity, Severity::Error);
        assert!(rules::lookup("NO.SUCH.RULE").is_none());
    }
}

//! AICL: a transport-independent inter-agent protocol toolkit.
//!
//! The crate covers the full record-to-regression workflow: typed messages
//! ([`model`]), a compact text form ([`text`]) and a canonical binary form
//! ([`binary`]), conformance validation ([`validate`]), trace persistence
//! with deterministic replay and structural diffing ([`trace`]), scripted
//! multi-agent scenarios ([`harness`]), and a seeded message generator
//! ([`testgen`]).

pub mod binary;
pub mod harness;
pub mod model;
pub mod testgen;
pub mod text;
pub mod trace;
pub mod validate;

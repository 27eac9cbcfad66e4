//! Attribute exploration.
//!
//! A session walks the attribute sets closed under the implications accepted
//! so far, in lectic order. Whenever the current set is not closed in the
//! working context, the expert is asked whether it implies its closure.
//! Accepting records the implication; rejecting requires a counterexample
//! object, which is appended to the context, and the same set is examined
//! again. The session finishes when no set is left; the accepted
//! implications then form the Duquenne-Guigues base of the grown context.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::bitset::AttributeSet;
use crate::context::FormalContext;
use crate::error::{Error, ExplorationError, Result};
use crate::implication::{implication_closure, Implication, ImplicationBase, NamedImplication, Provenance};
use crate::lattice::next_closure;

pub const SESSION_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SessionStatus {
    AwaitingAnswer,
    Idle,
    Finished,
    Stopped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum SessionEvent {
    QuestionPosed { seq: u64, implication: NamedImplication },
    Accepted { seq: u64 },
    CounterexampleAdded { seq: u64, object: String, attributes: Vec<String> },
    Stopped,
    Finished,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    /// Milliseconds since the Unix epoch.
    pub at: u64,
    #[serde(flatten)]
    pub event: SessionEvent,
}

/// A new object offered against the pending question.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub name: String,
    pub attributes: AttributeSet,
}

impl Counterexample {
    pub fn named<S: AsRef<str>>(ctx: &FormalContext, name: impl Into<String>, attributes: &[S]) -> Result<Self> {
        Ok(Counterexample { name: name.into(), attributes: ctx.attributes_named(attributes)? })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplorationSession {
    context: FormalContext,
    accepted: ImplicationBase,
    /// Next set to examine; `None` once every set was visited.
    cursor: Option<AttributeSet>,
    status: SessionStatus,
    pending: Option<Implication>,
    seq: u64,
    log: Vec<LogEntry>,
}

fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis() as u64).unwrap_or(0)
}

/// Opens a session on `ctx` with nothing accepted yet.
pub fn start_session(ctx: FormalContext) -> ExplorationSession {
    let finished = ctx.attribute_count() == 0;
    ExplorationSession {
        cursor: if finished { None } else { Some(ctx.empty_attributes()) },
        context: ctx,
        accepted: ImplicationBase::new(Provenance::ExplorationAccepted),
        status: if finished { SessionStatus::Finished } else { SessionStatus::Idle },
        pending: None,
        seq: 0,
        log: Vec::new(),
    }
}

impl ExplorationSession {
    pub fn working_context(&self) -> &FormalContext {
        &self.context
    }

    pub fn accepted(&self) -> &ImplicationBase {
        &self.accepted
    }

    pub fn status(&self) -> SessionStatus {
        self.status
    }

    pub fn cursor(&self) -> Option<&AttributeSet> {
        self.cursor.as_ref()
    }

    /// The question awaiting an answer, if any.
    pub fn pending(&self) -> Option<&Implication> {
        self.pending.as_ref()
    }

    /// Number of questions posed so far; the pending question carries this number.
    pub fn seq(&self) -> u64 {
        self.seq
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    fn record(&mut self, event: SessionEvent) {
        self.log.push(LogEntry { at: now_ms(), event });
    }

    fn terminal_error(&self) -> Option<ExplorationError> {
        match self.status {
            SessionStatus::Finished => Some(ExplorationError::Finished),
            SessionStatus::Stopped => Some(ExplorationError::Stopped),
            _ => None,
        }
    }

    fn advance_cursor(&mut self) {
        if let Some(current) = &self.cursor {
            let accepted = &self.accepted.implications;
            self.cursor = next_closure(current, |x| implication_closure(accepted, x));
        }
    }

    /// Poses the next question, or returns `None` once the exploration is
    /// complete (the session is then finished).
    pub fn next_question(&mut self) -> Result<Option<Implication>, ExplorationError> {
        match self.status {
            SessionStatus::AwaitingAnswer => return Err(ExplorationError::AwaitingAnswer),
            SessionStatus::Finished => return Ok(None),
            SessionStatus::Stopped => return Err(ExplorationError::Stopped),
            SessionStatus::Idle => {}
        }
        loop {
            let Some(current) = self.cursor.clone() else {
                self.status = SessionStatus::Finished;
                self.record(SessionEvent::Finished);
                return Ok(None);
            };
            let closed = self.context.attribute_closure(&current);
            if closed != current {
                let question =
                    Implication::new(current, closed).with_support(&self.context).expect("cursor in context universe");
                self.seq += 1;
                self.status = SessionStatus::AwaitingAnswer;
                self.pending = Some(question.clone());
                let implication = question.named(&self.context);
                self.record(SessionEvent::QuestionPosed { seq: self.seq, implication });
                return Ok(Some(question));
            }
            self.advance_cursor();
        }
    }

    /// Confirms the pending implication.
    pub fn accept(&mut self) -> Result<(), ExplorationError> {
        if let Some(e) = self.terminal_error() {
            return Err(e);
        }
        let question = self.pending.take().ok_or(ExplorationError::NoPendingQuestion)?;
        self.accepted.implications.push(question);
        self.advance_cursor();
        self.status = SessionStatus::Idle;
        self.record(SessionEvent::Accepted { seq: self.seq });
        Ok(())
    }

    /// Checks a counterexample against the pending question and the accepted
    /// implications without changing anything.
    pub fn validate_counterexample(&self, candidate: &Counterexample) -> Result<(), ExplorationError> {
        if let Some(e) = self.terminal_error() {
            return Err(e);
        }
        let question = self.pending.as_ref().ok_or(ExplorationError::NoPendingQuestion)?;
        let ctx = &self.context;
        if candidate.attributes.universe() != ctx.attribute_count() {
            return Err(ExplorationError::NotViolating("attribute set belongs to another context".into()));
        }
        if ctx.objects().contains(&candidate.name) {
            return Err(ExplorationError::NameCollision(candidate.name.clone()));
        }
        let missing_premise = question.premise().difference(&candidate.attributes);
        if !missing_premise.is_empty() {
            return Err(ExplorationError::NotViolating(format!(
                "it lacks premise attributes {{{}}}",
                ctx.attribute_names(&missing_premise).join(", ")
            )));
        }
        if question.conclusion().is_subset(&candidate.attributes) {
            return Err(ExplorationError::NotViolating(format!(
                "it has every conclusion attribute {{{}}}",
                ctx.attribute_names(question.conclusion()).join(", ")
            )));
        }
        for imp in self.accepted.iter() {
            if imp.premise().is_subset(&candidate.attributes) && !imp.conclusion().is_subset(&candidate.attributes) {
                return Err(ExplorationError::ContradictsAccepted(imp.render(ctx)));
            }
        }
        Ok(())
    }

    /// Rejects the pending question by adding a counterexample object. The
    /// same attribute set is examined again against the grown context. An
    /// invalid counterexample leaves the session unchanged.
    pub fn reject(&mut self, counterexample: Counterexample) -> Result<(), ExplorationError> {
        self.validate_counterexample(&counterexample)?;
        let Counterexample { name, attributes } = counterexample;
        let names = self.context.attribute_names(&attributes);
        self.context = self.context.with_object(name.clone(), attributes).expect("validated counterexample");
        self.pending = None;
        self.status = SessionStatus::Idle;
        self.record(SessionEvent::CounterexampleAdded { seq: self.seq, object: name, attributes: names });
        Ok(())
    }

    /// Ends the session early. The accepted implications and the working
    /// context stay available.
    pub fn stop(&mut self) -> Result<(), ExplorationError> {
        if let Some(e) = self.terminal_error() {
            return Err(e);
        }
        self.pending = None;
        self.status = SessionStatus::Stopped;
        self.record(SessionEvent::Stopped);
        Ok(())
    }

    pub fn is_done(&self) -> bool {
        matches!(self.status, SessionStatus::Finished | SessionStatus::Stopped)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SessionRepr::from(self)).expect("session serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Session(e.to_string()))?;
        match value.get("version").and_then(serde_json::Value::as_u64) {
            Some(v) if v == SESSION_FORMAT_VERSION as u64 => {}
            Some(v) => return Err(Error::Session(format!("unsupported version {v}"))),
            None => return Err(Error::Session("missing version".into())),
        }
        let repr: SessionRepr = serde_json::from_value(value).map_err(|e| Error::Session(e.to_string()))?;
        repr.into_session()
    }
}

/// Simulates an expert who knows `hidden`: questions are answered by
/// checking them there, and refuted with the first hidden object that
/// violates them.
pub fn run_with_oracle(ctx: &FormalContext, hidden: &FormalContext) -> Result<ExplorationSession> {
    if ctx.attributes() != hidden.attributes() {
        return Err(ExplorationError::InconsistentOracle("attribute lists differ".into()).into());
    }
    for (g, name) in ctx.objects().iter().enumerate() {
        let h = hidden
            .object_index(name)
            .map_err(|_| ExplorationError::InconsistentOracle(format!("object {name:?} is not in the hidden context")))?;
        if hidden.object_intent(h) != ctx.object_intent(g) {
            return Err(ExplorationError::InconsistentOracle(format!("rows for {name:?} differ")).into());
        }
    }

    let mut session = start_session(ctx.clone());
    while let Some(question) = session.next_question()? {
        if question.holds_in(hidden)? {
            session.accept()?;
            continue;
        }
        let witness = (0..hidden.object_count())
            .find(|&h| {
                let row = hidden.object_intent(h);
                question.premise().is_subset(row) && !question.conclusion().is_subset(row)
            })
            .expect("a failing implication has a violating object");
        session.reject(Counterexample {
            name: hidden.objects()[witness].clone(),
            attributes: hidden.object_intent(witness).clone(),
        })?;
    }
    Ok(session)
}

/// The rendered question shown to the expert.
pub fn question_text(ctx: &FormalContext, question: &Implication) -> String {
    let list = |set: &AttributeSet| {
        let names = ctx.attribute_names(set);
        let noun = if names.len() == 1 { "attribute" } else { "attributes" };
        let quoted: Vec<String> = names.iter().map(|n| format!("\"{n}\"")).collect();
        if quoted.is_empty() {
            format!("no particular {noun}")
        } else {
            format!("{noun} {}", quoted.join(", "))
        }
    };
    format!(
        "Is it true, that when an object has {}, that it also has {}?",
        list(question.premise()),
        list(question.conclusion())
    )
}

#[derive(Serialize, Deserialize)]
struct SessionRepr {
    version: u32,
    context: FormalContext,
    accepted: Vec<NamedImplication>,
    cursor: Option<Vec<String>>,
    status: SessionStatus,
    pending: Option<NamedImplication>,
    seq: u64,
    log: Vec<LogEntry>,
}

impl From<&ExplorationSession> for SessionRepr {
    fn from(s: &ExplorationSession) -> Self {
        let ctx = &s.context;
        SessionRepr {
            version: SESSION_FORMAT_VERSION,
            context: ctx.clone(),
            accepted: s.accepted.iter().map(|i| i.named(ctx)).collect(),
            cursor: s.cursor.as_ref().map(|c| ctx.attribute_names(c)),
            status: s.status,
            pending: s.pending.as_ref().map(|i| i.named(ctx)),
            seq: s.seq,
            log: s.log.clone(),
        }
    }
}

impl SessionRepr {
    fn into_session(self) -> Result<ExplorationSession> {
        let ctx = self.context;
        let accepted = self.accepted.iter().map(|i| i.resolve(&ctx)).collect::<Result<Vec<_>>>()?;
        let cursor = self.cursor.map(|c| ctx.attributes_named(&c)).transpose()?;
        let pending = self.pending.map(|p| p.resolve(&ctx)).transpose()?;
        if (self.status == SessionStatus::AwaitingAnswer) != pending.is_some() {
            return Err(Error::Session("pending question does not match status".into()));
        }
        Ok(ExplorationSession {
            context: ctx,
            accepted: ImplicationBase { implications: accepted, provenance: Provenance::ExplorationAccepted },
            cursor,
            status: self.status,
            pending,
            seq: self.seq,
            log: self.log,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::fca_related_biclustering;
    use crate::implication::{duquenne_guigues_base, verify_base, BaseReport};

    #[test]
    fn fresh_session() {
        let s = start_session(fca_related_biclustering());
        assert_eq!(s.working_context().object_count(), 7);
        assert!(s.accepted().is_empty());
        assert_eq!(s.status(), SessionStatus::Idle);
        assert!(s.cursor().unwrap().is_empty());
    }

    #[test]
    fn no_attributes_finishes_immediately() {
        let ctx = FormalContext::from_rows("e", vec!["g".into()], vec![], vec![AttributeSet::empty(0)]).unwrap();
        let mut s = start_session(ctx);
        assert_eq!(s.status(), SessionStatus::Finished);
        assert_eq!(s.next_question().unwrap(), None);
    }

    #[test]
    fn full_incidence_first_question() {
        let ctx = FormalContext::from_row_strings("f", &["a"], &["x", "y"], &["XX"]).unwrap();
        let mut s = start_session(ctx);
        let q = s.next_question().unwrap().unwrap();
        assert!(q.premise().is_empty());
        assert!(q.conclusion().is_full());
    }

    #[test]
    fn first_bundled_question_has_empty_premise() {
        let mut s = start_session(fca_related_biclustering());
        let q = s.next_question().unwrap().unwrap();
        assert!(q.premise().is_empty());
        assert_eq!(s.status(), SessionStatus::AwaitingAnswer);
        assert_eq!(s.next_question(), Err(ExplorationError::AwaitingAnswer));
        let text = question_text(s.working_context(), &q);
        assert!(text.starts_with("Is it true, that when an object has"));
        assert!(text.contains("that it also has attributes \"Type:const\""));
    }

    #[test]
    fn accept_all_yields_dg_base() {
        let ctx = fca_related_biclustering();
        let mut s = start_session(ctx.clone());
        let mut last: Option<AttributeSet> = None;
        while let Some(q) = s.next_question().unwrap() {
            if let Some(prev) = &last {
                assert_eq!(prev.lectic_cmp(q.premise()), std::cmp::Ordering::Less);
            }
            last = Some(q.premise().clone());
            s.accept().unwrap();
        }
        assert_eq!(s.status(), SessionStatus::Finished);
        assert!(s.accepted().same_implications(&duquenne_guigues_base(&ctx)));
        assert_eq!(verify_base(&ctx, s.accepted()).unwrap(), BaseReport { sound: true, complete: true, minimal: true });
        assert_eq!(s.accept(), Err(ExplorationError::Finished));
        assert_eq!(s.stop(), Err(ExplorationError::Finished));
    }

    #[test]
    fn valid_counterexample_grows_context() {
        let mut s = start_session(fca_related_biclustering());
        s.next_question().unwrap().unwrap();
        let ce = Counterexample::named(s.working_context(), "SpectralBiclust", &["Val.type:numeric"]).unwrap();
        s.reject(ce).unwrap();
        assert_eq!(s.working_context().object_count(), 8);
        assert_eq!(s.status(), SessionStatus::Idle);
        assert!(s.cursor().unwrap().is_empty(), "cursor stays on the same premise");
        // with the new object, ∅ is closed; the next question moves on
        let q = s.next_question().unwrap().unwrap();
        assert!(!q.premise().is_empty());
    }

    #[test]
    fn invalid_counterexamples_leave_state_untouched() {
        let mut s = start_session(fca_related_biclustering());
        s.next_question().unwrap();
        let before = s.clone();
        let ctx = s.working_context().clone();

        let full = Counterexample::named(&ctx, "Full", &["Type:const", "Struct:Arbitr. overl.", "Value type:binary"]).unwrap();
        assert!(matches!(s.reject(full), Err(ExplorationError::NotViolating(m)) if m.contains("every conclusion")));
        let clash = Counterexample::named(&ctx, "BiMax", &["Val.type:numeric"]).unwrap();
        assert_eq!(s.reject(clash), Err(ExplorationError::NameCollision("BiMax".into())));
        assert_eq!(s, before);
    }

    #[test]
    fn counterexample_must_respect_accepted() {
        let mut s = start_session(fca_related_biclustering());
        s.next_question().unwrap();
        s.accept().unwrap(); // ∅ -> {const, struct, binary}
        let q = s.next_question().unwrap().unwrap();
        let ctx = s.working_context().clone();
        let mut attrs: Vec<String> = ctx.attribute_names(q.premise());
        attrs.retain(|a| a != "Type:const");
        // keep the premise but drop an attribute the first implication forces
        let premise_names = ctx.attribute_names(q.premise());
        let ce = Counterexample::named(&ctx, "Odd", &premise_names).unwrap();
        let mut bad = ce.clone();
        bad.attributes.remove(ctx.attribute_index("Type:const").unwrap());
        let err = s.reject(bad).unwrap_err();
        // dropping Type:const breaks either the premise or the accepted rule
        assert!(matches!(err, ExplorationError::ContradictsAccepted(_) | ExplorationError::NotViolating(_)));

        let missing = Counterexample { name: "Nothing".into(), attributes: ctx.empty_attributes() };
        if !q.premise().is_empty() {
            assert!(matches!(s.reject(missing), Err(ExplorationError::NotViolating(m)) if m.contains("lacks premise")));
        }
    }

    #[test]
    fn contradicting_accepted_is_named() {
        let ctx = FormalContext::from_row_strings("t", &["g1", "g2"], &["a", "b", "c", "d"], &["..XX", "XX.."]).unwrap();
        let mut s = start_session(ctx.clone());
        let a_only = ctx.attributes_named(&["a"]).unwrap();
        loop {
            let q = s.next_question().unwrap().expect("{a} -> {b} is asked");
            if q.premise() == &a_only {
                break;
            }
            s.accept().unwrap();
        }
        // has a but not b, and has d without c although {d} -> {c} was accepted
        let ce = Counterexample::named(&ctx, "x", &["a", "d"]).unwrap();
        let before = s.clone();
        match s.reject(ce) {
            Err(ExplorationError::ContradictsAccepted(rule)) => assert!(rule.starts_with("{d} -> {c}"), "{rule}"),
            other => panic!("{other:?}"),
        }
        assert_eq!(s, before);
    }

    #[test]
    fn stop_is_terminal() {
        let ctx = fca_related_biclustering();
        let mut s = start_session(ctx.clone());
        s.stop().unwrap();
        assert_eq!(s.status(), SessionStatus::Stopped);
        assert!(s.accepted().is_empty());
        assert_eq!(s.working_context(), &ctx);
        assert_eq!(s.next_question(), Err(ExplorationError::Stopped));
        assert_eq!(s.stop(), Err(ExplorationError::Stopped));
        assert!(matches!(s.log().last().unwrap().event, SessionEvent::Stopped));
    }

    #[test]
    fn stop_midway_keeps_a_sound_base() {
        let ctx = fca_related_biclustering();
        let mut s = start_session(ctx);
        for _ in 0..2 {
            s.next_question().unwrap();
            s.accept().unwrap();
        }
        s.next_question().unwrap();
        s.stop().unwrap();
        assert!(s.pending().is_none());
        assert!(verify_base(s.working_context(), s.accepted()).unwrap().sound);
    }

    #[test]
    fn oracle_from_two_rows() {
        let hidden = fca_related_biclustering();
        let start = hidden.restrict_objects(&hidden.objects_named(&["BiMax", "FCA"]).unwrap()).unwrap();
        let s = run_with_oracle(&start, &hidden).unwrap();
        assert_eq!(s.status(), SessionStatus::Finished);
        let report = verify_base(&hidden, s.accepted()).unwrap();
        assert!(report.sound && report.complete);
        assert!(s.accepted().same_implications(&duquenne_guigues_base(s.working_context())));
    }

    #[test]
    fn oracle_equal_to_start_accepts_everything() {
        let ctx = fca_related_biclustering();
        let s = run_with_oracle(&ctx, &ctx).unwrap();
        assert_eq!(s.working_context(), &ctx);
        assert!(s.accepted().same_implications(&duquenne_guigues_base(&ctx)));
    }

    #[test]
    fn oracle_with_extra_column_rejected() {
        let ctx = fca_related_biclustering();
        let extra = FormalContext::from_rows("x", ctx.objects().to_vec(), vec!["extra".into()], vec![AttributeSet::empty(1); 7]).unwrap();
        let hidden = crate::context::appose(&ctx.clone().with_name("k"), &extra).unwrap();
        let err = run_with_oracle(&ctx, &hidden).unwrap_err();
        assert!(matches!(err, Error::Exploration(ExplorationError::InconsistentOracle(_))));
    }

    #[test]
    fn save_load_round_trips() {
        let ctx = fca_related_biclustering();
        let mut s = start_session(ctx);
        let copy = ExplorationSession::from_json(&s.to_json()).unwrap();
        assert_eq!(copy, s);

        s.next_question().unwrap();
        s.accept().unwrap();
        s.next_question().unwrap();
        let premise = s.working_context().attribute_names(s.pending().unwrap().premise());
        let mut ce = Counterexample::named(s.working_context(), "New method", &premise).unwrap();
        // drop the first conclusion attribute so it violates the question
        let drop = s.pending().unwrap().conclusion().first().unwrap();
        ce.attributes.remove(drop);
        s.reject(ce).unwrap();

        let mut copy = ExplorationSession::from_json(&s.to_json()).unwrap();
        assert_eq!(copy, s);
        assert_eq!(copy.next_question().unwrap(), s.next_question().unwrap());
    }

    #[test]
    fn load_rejects_bad_payloads() {
        let s = start_session(fca_related_biclustering());
        let text = s.to_json();
        assert!(ExplorationSession::from_json(&text[..text.len() / 2]).is_err());
        let bumped = text.replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(matches!(ExplorationSession::from_json(&bumped), Err(Error::Session(m)) if m.contains("version")));
    }
}

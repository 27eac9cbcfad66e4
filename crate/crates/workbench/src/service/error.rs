use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use lattice_tax::{Error, ExplorationError};
use serde::Serialize;
use serde_json::{json, Value};

/// Error body of every failing API call.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, code, message: message.into(), detail: None }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad-request", message)
    }

    pub fn context_not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "context-not-found", format!("no context with id {id:?}"))
    }

    pub fn session_not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "session-not-found", format!("no session with id {id:?}"))
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }

    /// Errors raised while reading an uploaded table.
    pub fn invalid_context(err: Error) -> Self {
        let detail = match &err {
            Error::Parse { line, .. } => Some(json!({ "line": line })),
            Error::ObjectMismatch { symmetric_difference } => Some(json!({ "symmetric_difference": symmetric_difference })),
            _ => None,
        };
        ApiError { detail, ..Self::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid-context", err.to_string()) }
    }
}

impl From<Error> for ApiError {
    fn from(err: Error) -> Self {
        match err {
            Error::Exploration(e) => e.into(),
            Error::ConceptLimit { limit, .. } => {
                Self::new(StatusCode::UNPROCESSABLE_ENTITY, "concept-limit", format!("more than {limit} concepts"))
            }
            Error::UnknownName { kind: "attribute", ref name } => {
                let name = name.clone();
                Self::new(StatusCode::UNPROCESSABLE_ENTITY, "unknown-attribute", err.to_string())
                    .with_detail(json!({ "name": name }))
            }
            Error::ThresholdOutOfRange(_) => Self::new(StatusCode::BAD_REQUEST, "invalid-parameter", err.to_string()),
            other => Self::invalid_context(other),
        }
    }
}

impl From<ExplorationError> for ApiError {
    fn from(err: ExplorationError) -> Self {
        let message = err.to_string();
        let (status, code) = match &err {
            ExplorationError::NotViolating(_) => (StatusCode::UNPROCESSABLE_ENTITY, "counterexample-not-violating"),
            ExplorationError::ContradictsAccepted(_) => {
                (StatusCode::UNPROCESSABLE_ENTITY, "counterexample-contradicts-accepted")
            }
            ExplorationError::NameCollision(_) => (StatusCode::UNPROCESSABLE_ENTITY, "counterexample-name-collision"),
            ExplorationError::Finished | ExplorationError::Stopped => (StatusCode::CONFLICT, "session-closed"),
            ExplorationError::AwaitingAnswer | ExplorationError::NoPendingQuestion => {
                (StatusCode::CONFLICT, "no-pending-question")
            }
            ExplorationError::InconsistentOracle(_) => (StatusCode::UNPROCESSABLE_ENTITY, "inconsistent-oracle"),
        };
        Self::new(status, code, message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self)).into_response()
    }
}

//! HTTP/JSON API over contexts and exploration sessions.
//!
//! Contexts are uploaded once and never modified; a session copies its
//! context and grows the copy with counterexamples. Every response to a
//! session mutation already carries the next question, so `GET` endpoints
//! only read.

mod error;
mod state;

use std::collections::HashMap;
use std::path::PathBuf;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::IntoResponse;
use axum::routing::{any, get, post};
use axum::{Json, Router};
use lattice_tax::datasets::DatasetRegistry;
use lattice_tax::exploration::{start_session, Counterexample, ExplorationSession, SessionStatus};
use lattice_tax::formats::{parse_csv, parse_cxt, serialize_cxt, HeaderMode, ParseWarning};
use lattice_tax::lattice::{build_lattice, LineDiagram};
use lattice_tax::FormalContext;
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::services::ServeDir;

pub use error::ApiError;
pub use state::{AppState, StoredContext, StoredSession};

use crate::views::{biclusters_view, concepts_view, implications_view, QuestionView, SessionView};

type ApiResult<T> = Result<T, ApiError>;

/// All API routes; with `static_dir`, any other path is served from there.
pub fn router(state: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/datasets", get(list_datasets))
        .route("/api/contexts", post(create_context).get(list_contexts))
        .route("/api/contexts/{id}", get(get_context))
        .route("/api/contexts/{id}/concepts", get(context_concepts))
        .route("/api/contexts/{id}/lattice", get(context_lattice))
        .route("/api/contexts/{id}/implications", get(context_implications))
        .route("/api/contexts/{id}/biclusters", get(context_biclusters))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_session))
        .route("/api/sessions/{id}/question", get(session_question))
        .route("/api/sessions/{id}/answer", post(answer))
        .route("/api/sessions/{id}/stop", post(stop))
        .route("/api/sessions/{id}/result", get(session_result))
        .route("/api", any(unknown_route))
        .route("/api/{*rest}", any(unknown_route))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

async fn unknown_route() -> ApiError {
    ApiError::new(StatusCode::NOT_FOUND, "route-not-found", "no such API endpoint")
}

fn json_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid JSON body: {e}")))
}

fn lookup_context(state: &AppState, id: &str) -> ApiResult<std::sync::Arc<StoredContext>> {
    state.context(id).ok_or_else(|| ApiError::context_not_found(id))
}

fn snapshot_error(e: std::io::Error) -> ApiError {
    ApiError::internal(format!("writing snapshot failed: {e}"))
}

async fn list_datasets() -> Json<Value> {
    let registry = DatasetRegistry::default();
    let entries: Vec<Value> = registry
        .iter()
        .map(|d| {
            json!({
                "name": d.name,
                "provenance": d.provenance,
                "objects": d.context.object_count(),
                "attributes": d.context.attributes(),
                "attribute_descriptions": d.attribute_descriptions,
            })
        })
        .collect();
    Json(json!({ "datasets": entries }))
}

/// Body of `POST /api/contexts` when sent as JSON. Exactly one source.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct NewContext {
    name: Option<String>,
    cxt: Option<String>,
    csv: Option<String>,
    /// CSV only: whether the first row names the attributes (default true).
    header: Option<bool>,
    builtin: Option<String>,
    context: Option<FormalContext>,
}

fn context_summary(stored: &StoredContext) -> Value {
    json!({
        "id": stored.id,
        "name": stored.context.name(),
        "objects": stored.context.objects(),
        "attributes": stored.context.attributes(),
        "warnings": stored.warnings,
    })
}

fn read_new_context(headers: &HeaderMap, body: &Bytes) -> ApiResult<(FormalContext, Vec<ParseWarning>)> {
    let content_type = headers.get(header::CONTENT_TYPE).and_then(|v| v.to_str().ok()).unwrap_or("").to_ascii_lowercase();
    let text = || std::str::from_utf8(body).map_err(|_| ApiError::bad_request("body is not UTF-8"));
    if content_type.starts_with("text/csv") {
        let (ctx, report) = parse_csv(text()?, HeaderMode::Present).map_err(ApiError::invalid_context)?;
        return Ok((ctx, report.warnings));
    }
    if !content_type.starts_with("application/json") {
        let (ctx, report) = parse_cxt(text()?).map_err(ApiError::invalid_context)?;
        return Ok((ctx, report.warnings));
    }

    let req: NewContext = json_body(body)?;
    let sources = [req.cxt.is_some(), req.csv.is_some(), req.builtin.is_some(), req.context.is_some()];
    if sources.iter().filter(|s| **s).count() != 1 {
        return Err(ApiError::bad_request("give exactly one of \"cxt\", \"csv\", \"builtin\" or \"context\""));
    }
    let (ctx, warnings) = if let Some(text) = &req.cxt {
        let (ctx, report) = parse_cxt(text).map_err(ApiError::invalid_context)?;
        (ctx, report.warnings)
    } else if let Some(text) = &req.csv {
        let mode = if req.header.unwrap_or(true) { HeaderMode::Present } else { HeaderMode::Absent };
        let (ctx, report) = parse_csv(text, mode).map_err(ApiError::invalid_context)?;
        (ctx, report.warnings)
    } else if let Some(name) = &req.builtin {
        let registry = DatasetRegistry::default();
        let dataset = registry.get(name).ok_or_else(|| {
            ApiError::new(StatusCode::NOT_FOUND, "unknown-dataset", format!("no bundled dataset {name:?}"))
                .with_detail(json!({ "available": registry.names().collect::<Vec<_>>() }))
        })?;
        (dataset.context.clone(), Vec::new())
    } else {
        (req.context.unwrap(), Vec::new())
    };
    Ok(match req.name {
        Some(name) => (ctx.with_name(name), warnings),
        None => (ctx, warnings),
    })
}

async fn create_context(State(state): State<AppState>, headers: HeaderMap, body: Bytes) -> ApiResult<impl IntoResponse> {
    let (ctx, warnings) = read_new_context(&headers, &body)?;
    let stored = state.add_context(ctx, warnings).map_err(snapshot_error)?;
    Ok((StatusCode::CREATED, Json(context_summary(&stored))))
}

async fn list_contexts(State(state): State<AppState>) -> Json<Value> {
    let list: Vec<Value> = state.context_ids().iter().filter_map(|id| state.context(id)).map(|c| context_summary(&c)).collect();
    Json(json!({ "contexts": list }))
}

async fn get_context(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let stored = lookup_context(&state, &id)?;
    Ok(Json(json!({
        "id": stored.id,
        "context": stored.context,
        "cxt": serialize_cxt(&stored.context),
        "warnings": stored.warnings,
    })))
}

async fn context_concepts(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let stored = lookup_context(&state, &id)?;
    let view = concepts_view(&stored.context)?;
    Ok(Json(serde_json::to_value(view).unwrap()))
}

async fn context_lattice(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<LineDiagram>> {
    let stored = lookup_context(&state, &id)?;
    let lattice = build_lattice(&stored.context)?;
    Ok(Json(LineDiagram::new(&stored.context, &lattice)))
}

async fn context_implications(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let stored = lookup_context(&state, &id)?;
    Ok(Json(serde_json::to_value(implications_view(&stored.context)).unwrap()))
}

async fn context_biclusters(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(query): Query<HashMap<String, String>>,
) -> ApiResult<Json<Value>> {
    let stored = lookup_context(&state, &id)?;
    let min_density = match query.get("min_density") {
        None => 0.0,
        Some(raw) => raw.parse::<f64>().ok().filter(|r| (0.0..=1.0).contains(r)).ok_or_else(|| {
            ApiError::new(StatusCode::BAD_REQUEST, "invalid-parameter", format!("min_density must be a number in [0, 1], got {raw:?}"))
        })?,
    };
    Ok(Json(serde_json::to_value(biclusters_view(&stored.context, min_density)?).unwrap()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NewSession {
    context_id: String,
}

/// Poses the next question if the session is waiting for one.
fn advance(session: &mut ExplorationSession) -> ApiResult<()> {
    if session.status() == SessionStatus::Idle {
        session.next_question()?;
    }
    Ok(())
}

async fn create_session(State(state): State<AppState>, body: Bytes) -> ApiResult<impl IntoResponse> {
    let req: NewSession = json_body(&body)?;
    let stored = lookup_context(&state, &req.context_id)?;
    let mut session = start_session(stored.context.clone());
    advance(&mut session)?;
    let entry = state.add_session(&stored.id, session).map_err(snapshot_error)?;
    let s = entry.lock().unwrap();
    Ok((StatusCode::CREATED, Json(SessionView::new(&s.id, &s.context_id, &s.session))))
}

fn lookup_session(state: &AppState, id: &str) -> ApiResult<std::sync::Arc<std::sync::Mutex<StoredSession>>> {
    state.session(id).ok_or_else(|| ApiError::session_not_found(id))
}

async fn get_session(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<SessionView>> {
    let entry = lookup_session(&state, &id)?;
    let s = entry.lock().unwrap();
    Ok(Json(SessionView::new(&s.id, &s.context_id, &s.session)))
}

async fn session_question(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let entry = lookup_session(&state, &id)?;
    let s = entry.lock().unwrap();
    let ctx = s.session.working_context();
    let question = s.session.pending().map(|q| QuestionView::new(ctx, s.session.seq(), q));
    Ok(Json(json!({ "status": s.session.status(), "seq": s.session.seq(), "question": question })))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Answer {
    seq: u64,
    accept: bool,
    counterexample: Option<CounterexampleBody>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CounterexampleBody {
    name: String,
    attributes: Vec<String>,
}

fn closed(status: SessionStatus) -> ApiError {
    ApiError::new(StatusCode::CONFLICT, "session-closed", format!("session is {}", status_name(status)))
        .with_detail(json!({ "status": status }))
}

fn status_name(status: SessionStatus) -> &'static str {
    match status {
        SessionStatus::AwaitingAnswer => "awaiting an answer",
        SessionStatus::Idle => "idle",
        SessionStatus::Finished => "finished",
        SessionStatus::Stopped => "stopped",
    }
}

async fn answer(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> ApiResult<Json<SessionView>> {
    let req: Answer = json_body(&body)?;
    let entry = lookup_session(&state, &id)?;
    let mut s = entry.lock().unwrap();
    let status = s.session.status();
    if matches!(status, SessionStatus::Finished | SessionStatus::Stopped) {
        return Err(closed(status));
    }
    if req.seq != s.session.seq() || s.session.pending().is_none() {
        return Err(ApiError::new(
            StatusCode::CONFLICT,
            "stale-sequence",
            format!("question {} is no longer open; the current question is {}", req.seq, s.session.seq()),
        )
        .with_detail(json!({ "expected": s.session.seq() })));
    }

    match (req.accept, req.counterexample) {
        (true, None) => s.session.accept()?,
        (true, Some(_)) => return Err(ApiError::bad_request("an accepted question takes no counterexample")),
        (false, None) => {
            return Err(ApiError::new(
                StatusCode::BAD_REQUEST,
                "missing-counterexample",
                "rejecting a question requires a counterexample {name, attributes}",
            ))
        }
        (false, Some(ce)) => {
            let attributes = s.session.working_context().attributes_named(&ce.attributes)?;
            s.session.reject(Counterexample { name: ce.name, attributes })?;
        }
    }
    advance(&mut s.session)?;
    state.save_session(&s).map_err(snapshot_error)?;
    Ok(Json(SessionView::new(&s.id, &s.context_id, &s.session)))
}

async fn stop(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<SessionView>> {
    let entry = lookup_session(&state, &id)?;
    let mut s = entry.lock().unwrap();
    let status = s.session.status();
    if matches!(status, SessionStatus::Finished | SessionStatus::Stopped) {
        return Err(closed(status));
    }
    s.session.stop()?;
    state.save_session(&s).map_err(snapshot_error)?;
    Ok(Json(SessionView::new(&s.id, &s.context_id, &s.session)))
}

async fn session_result(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let entry = lookup_session(&state, &id)?;
    let s = entry.lock().unwrap();
    let ctx = s.session.working_context();
    let session: Value = serde_json::from_str(&s.session.to_json()).unwrap();
    Ok(Json(json!({
        "id": s.id,
        "context_id": s.context_id,
        "status": s.session.status(),
        "accepted": s.session.accepted().iter().map(|i| i.named(ctx)).collect::<Vec<_>>(),
        "context": ctx,
        "cxt": serialize_cxt(ctx),
        "session": session,
    })))
}

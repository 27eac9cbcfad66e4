use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use lattice_tax::exploration::ExplorationSession;
use lattice_tax::formats::{parse_cxt, serialize_cxt, ParseWarning};
use lattice_tax::FormalContext;
use serde::{Deserialize, Serialize};

/// A context as uploaded. Never changed after creation.
#[derive(Debug)]
pub struct StoredContext {
    pub id: String,
    pub context: FormalContext,
    pub warnings: Vec<ParseWarning>,
}

#[derive(Debug)]
pub struct StoredSession {
    pub id: String,
    pub context_id: String,
    pub session: ExplorationSession,
}

/// Shared service state: an append-only context store and the exploration
/// sessions, each behind its own lock so mutations of one session are
/// serialized without blocking the others.
#[derive(Clone, Default)]
pub struct AppState {
    inner: Arc<Inner>,
}

#[derive(Default)]
struct Inner {
    contexts: RwLock<BTreeMap<String, Arc<StoredContext>>>,
    sessions: RwLock<BTreeMap<String, Arc<Mutex<StoredSession>>>>,
    next_context: AtomicU64,
    next_session: AtomicU64,
    snapshot_dir: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct SessionSnapshot {
    context_id: String,
    session: serde_json::Value,
}

fn numeric_suffix(id: &str) -> u64 {
    id.rsplit('-').next().and_then(|n| n.parse().ok()).unwrap_or(0)
}

impl AppState {
    /// In-memory state only.
    pub fn new() -> Self {
        Self::default()
    }

    /// State that writes every context and session change below `dir` and
    /// reloads what an earlier run left there.
    pub fn with_snapshots(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(dir.join("contexts"))?;
        fs::create_dir_all(dir.join("sessions"))?;
        let probe = dir.join(".write-test");
        fs::write(&probe, b"")?;
        fs::remove_file(probe)?;

        let state = AppState {
            inner: Arc::new(Inner { snapshot_dir: Some(dir.clone()), ..Inner::default() }),
        };
        state.reload(&dir)?;
        Ok(state)
    }

    fn reload(&self, dir: &Path) -> io::Result<()> {
        let invalid = |path: &Path, e: String| io::Error::new(io::ErrorKind::InvalidData, format!("{}: {e}", path.display()));
        for entry in fs::read_dir(dir.join("contexts"))? {
            let path = entry?.path();
            if path.extension().is_none_or(|e| e != "cxt") {
                continue;
            }
            let Some(id) = path.file_stem().and_then(|s| s.to_str()).map(str::to_string) else { continue };
            let (context, report) = parse_cxt(&fs::read_to_string(&path)?).map_err(|e| invalid(&path, e.to_string()))?;
            self.bump(&self.inner.next_context, &id);
            let stored = StoredContext { id: id.clone(), context, warnings: report.warnings };
            self.inner.contexts.write().unwrap().insert(id, Arc::new(stored));
        }
        for entry in fs::read_dir(dir.join("sessions"))? {
            let path = entry?.path();
            if path.extension().is_none_or(|e| e != "json") {
                continue;
            }
            let Some(id) = path.file_stem().and_then(|s| s.to_str()).map(str::to_string) else { continue };
            let snap: SessionSnapshot =
                serde_json::from_str(&fs::read_to_string(&path)?).map_err(|e| invalid(&path, e.to_string()))?;
            let session = ExplorationSession::from_json(&snap.session.to_string()).map_err(|e| invalid(&path, e.to_string()))?;
            self.bump(&self.inner.next_session, &id);
            let stored = StoredSession { id: id.clone(), context_id: snap.context_id, session };
            self.inner.sessions.write().unwrap().insert(id, Arc::new(Mutex::new(stored)));
        }
        Ok(())
    }

    fn bump(&self, counter: &AtomicU64, id: &str) {
        counter.fetch_max(numeric_suffix(id), Ordering::SeqCst);
    }

    pub fn snapshot_dir(&self) -> Option<&Path> {
        self.inner.snapshot_dir.as_deref()
    }

    pub fn add_context(&self, context: FormalContext, warnings: Vec<ParseWarning>) -> io::Result<Arc<StoredContext>> {
        let id = format!("ctx-{}", self.inner.next_context.fetch_add(1, Ordering::SeqCst) + 1);
        if let Some(dir) = self.snapshot_dir() {
            fs::write(dir.join("contexts").join(format!("{id}.cxt")), serialize_cxt(&context))?;
        }
        let stored = Arc::new(StoredContext { id: id.clone(), context, warnings });
        self.inner.contexts.write().unwrap().insert(id, stored.clone());
        Ok(stored)
    }

    pub fn context(&self, id: &str) -> Option<Arc<StoredContext>> {
        self.inner.contexts.read().unwrap().get(id).cloned()
    }

    pub fn context_ids(&self) -> Vec<String> {
        self.inner.contexts.read().unwrap().keys().cloned().collect()
    }

    pub fn add_session(&self, context_id: &str, session: ExplorationSession) -> io::Result<Arc<Mutex<StoredSession>>> {
        let id = format!("session-{}", self.inner.next_session.fetch_add(1, Ordering::SeqCst) + 1);
        let stored = StoredSession { id: id.clone(), context_id: context_id.to_string(), session };
        self.save_session(&stored)?;
        let entry = Arc::new(Mutex::new(stored));
        self.inner.sessions.write().unwrap().insert(id, entry.clone());
        Ok(entry)
    }

    pub fn session(&self, id: &str) -> Option<Arc<Mutex<StoredSession>>> {
        self.inner.sessions.read().unwrap().get(id).cloned()
    }

    /// Writes the session snapshot, if snapshots are enabled.
    pub fn save_session(&self, stored: &StoredSession) -> io::Result<()> {
        let Some(dir) = self.snapshot_dir() else { return Ok(()) };
        let session: serde_json::Value = serde_json::from_str(&stored.session.to_json()).expect("session json");
        let snap = SessionSnapshot { context_id: stored.context_id.clone(), session };
        let path = dir.join("sessions").join(format!("{}.json", stored.id));
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&snap).expect("snapshot json"))?;
        fs::rename(tmp, path)
    }
}

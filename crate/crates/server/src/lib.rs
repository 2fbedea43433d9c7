//! HTTP/JSON service: an in-memory cabinet repository with versioned component
//! edits, and a bounded worker queue running optimization jobs.
//!
//! | method | path | |
//! |---|---|---|
//! | `POST` | `/cabinets` | store a cabinet document, `201 {cabinetId}` |
//! | `GET` | `/cabinets/{id}` | latest version |
//! | `PUT` | `/cabinets/{id}/components/{index}` | edit one component, new version |
//! | `POST` | `/cabinets/{id}/optimize` | enqueue a (warm) run, `202 {jobId}` |
//! | `GET` | `/jobs/{id}` | job snapshot |

mod api;
mod jobs;
mod repo;

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use tokio::sync::Semaphore;

pub use api::router;
pub use jobs::{Job, JobResult, JobState};
pub use repo::{CabinetVersions, Repository};

pub const DEFAULT_PORT: u16 = 8099;
pub const DEFAULT_WORKERS: usize = 2;

pub struct AppState {
    repo: Mutex<Repository>,
    jobs: Mutex<HashMap<String, Job>>,
    workers: Arc<Semaphore>,
    next_job: AtomicU64,
}

impl AppState {
    pub fn new(workers: usize) -> Arc<Self> {
        Self::with_repository(Repository::default(), workers)
    }

    pub fn with_repository(repo: Repository, workers: usize) -> Arc<Self> {
        Arc::new(Self {
            repo: Mutex::new(repo),
            jobs: Mutex::new(HashMap::new()),
            workers: Arc::new(Semaphore::new(workers.max(1))),
            next_job: AtomicU64::new(1),
        })
    }

    fn new_job_id(&self) -> String {
        format!("job-{}", self.next_job.fetch_add(1, Ordering::Relaxed))
    }

    pub fn job(&self, id: &str) -> Option<Job> {
        self.jobs.lock().unwrap().get(id).cloned()
    }

    /// All stored cabinets and their versions, as pretty JSON.
    pub fn snapshot_json(&self) -> String {
        serde_json::to_string_pretty(&*self.repo.lock().unwrap()).expect("repository serializes")
    }
}

/// Serves until ctrl-c, then optionally writes a repository snapshot.
pub async fn serve(port: u16, workers: usize, snapshot: Option<std::path::PathBuf>) -> std::io::Result<()> {
    let repo = match &snapshot {
        Some(path) if path.exists() => serde_json::from_str(&std::fs::read_to_string(path)?)
            .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?,
        _ => Repository::default(),
    };
    let state = AppState::with_repository(repo, workers);
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    axum::serve(listener, router(state.clone()))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    if let Some(path) = snapshot {
        std::fs::write(path, state.snapshot_json())?;
    }
    Ok(())
}

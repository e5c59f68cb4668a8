use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde_json::{json, Value};
use tokio::sync::oneshot;

use crate::error::ApiError;

const MAX_FINISHED: usize = 256;

enum Status {
    Running,
    Done(Value),
    Failed(ApiError),
}

struct Job {
    kind: &'static str,
    started: Instant,
    finished: Option<Instant>,
    status: Status,
}

/// The only shared mutable state of the service. All access goes through one
/// mutex.
#[derive(Default)]
pub struct JobStore {
    jobs: Mutex<HashMap<String, Job>>,
}

impl JobStore {
    fn insert(&self, kind: &'static str) -> String {
        let token = uuid::Uuid::new_v4().simple().to_string();
        let job = Job {
            kind,
            started: Instant::now(),
            finished: None,
            status: Status::Running,
        };
        self.jobs.lock().unwrap().insert(token.clone(), job);
        token
    }

    fn finish(&self, token: &str, result: Result<Value, ApiError>) {
        let mut jobs = self.jobs.lock().unwrap();
        if let Some(job) = jobs.get_mut(token) {
            job.finished = Some(Instant::now());
            job.status = match result {
                Ok(v) => Status::Done(v),
                Err(e) => Status::Failed(e),
            };
        }
        let mut done: Vec<(Instant, String)> = jobs
            .iter()
            .filter_map(|(t, j)| j.finished.map(|f| (f, t.clone())))
            .collect();
        if done.len() > MAX_FINISHED {
            done.sort();
            for (_, t) in &done[..done.len() - MAX_FINISHED] {
                jobs.remove(t);
            }
        }
    }

    fn remove(&self, token: &str) {
        self.jobs.lock().unwrap().remove(token);
    }

    /// The poll body for `token`, or `None` if unknown.
    pub fn poll(&self, token: &str) -> Option<Value> {
        let jobs = self.jobs.lock().unwrap();
        let job = jobs.get(token)?;
        let elapsed = job.finished.unwrap_or_else(Instant::now) - job.started;
        let mut body = json!({
            "token": token,
            "kind": job.kind,
            "elapsed_ms": elapsed.as_millis() as u64,
        });
        match &job.status {
            Status::Running => body["status"] = json!("running"),
            Status::Done(v) => {
                body["status"] = json!("done");
                body["result"] = v.clone();
            }
            Status::Failed(e) => {
                body["status"] = json!("failed");
                body["error"] = e.body()["error"].clone();
            }
        }
        Some(body)
    }
}

/// Runs `f` on the blocking pool. Answers directly if it finishes within
/// `threshold`, otherwise returns `202` with a token for `/v1/jobs/{token}`.
/// A zero threshold always answers `202`.
pub async fn run<F>(store: Arc<JobStore>, kind: &'static str, threshold: Duration, f: F) -> Response
where
    F: FnOnce() -> Result<Value, ApiError> + Send + 'static,
{
    let token = store.insert(kind);
    let (tx, rx) = oneshot::channel();
    {
        let store = store.clone();
        let token = token.clone();
        tokio::task::spawn_blocking(move || {
            let result = catch_unwind(AssertUnwindSafe(f))
                .unwrap_or_else(|_| Err(ApiError::integrity(format!("{kind} job panicked"))));
            store.finish(&token, result.clone());
            let _ = tx.send(result);
        });
    }
    if threshold.is_zero() {
        return accepted(&token);
    }
    match tokio::time::timeout(threshold, rx).await {
        Ok(Ok(result)) => {
            store.remove(&token);
            match result {
                Ok(v) => Json(v).into_response(),
                Err(e) => e.into_response(),
            }
        }
        Ok(Err(_)) => ApiError::integrity("job worker vanished").into_response(),
        Err(_) => accepted(&token),
    }
}

fn accepted(token: &str) -> Response {
    let body = json!({
        "token": token,
        "status": "running",
        "poll": format!("/v1/jobs/{token}"),
    });
    (StatusCode::ACCEPTED, Json(body)).into_response()
}

use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use cabinet_psa::edit::{apply_edits, ComponentEdit, FieldEdit};
use cabinet_psa::io::{parse_components_json, CabinetDocument};
use cabinet_psa::psa::{run, run_warm, PsaConfig};
use cabinet_psa::Error;
use serde::Serialize;
use serde_json::{json, Map, Value};
use tower_http::cors::CorsLayer;

use crate::jobs::{Job, JobResult, JobState};
use crate::AppState;

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/cabinets", post(create_cabinet))
        .route("/cabinets/{id}", get(get_cabinet))
        .route("/cabinets/{id}/components/{index}", put(edit_component))
        .route("/cabinets/{id}/optimize", post(optimize))
        .route("/jobs/{id}", get(get_job))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

#[derive(Debug)]
struct ApiError(StatusCode, String);

impl ApiError {
    fn bad_request(msg: impl Into<String>) -> Self {
        Self(StatusCode::BAD_REQUEST, msg.into())
    }

    fn not_found(msg: impl Into<String>) -> Self {
        Self(StatusCode::NOT_FOUND, msg.into())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

fn json_body(body: &Bytes) -> ApiResult<Map<String, Value>> {
    if body.iter().all(u8::is_ascii_whitespace) {
        return Ok(Map::new());
    }
    match serde_json::from_slice::<Value>(body) {
        Ok(Value::Object(map)) => Ok(map),
        Ok(_) => Err(ApiError::bad_request("body must be a JSON object")),
        Err(e) => Err(ApiError::bad_request(format!("malformed JSON: {e}"))),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct VersionedDocument<'a> {
    cabinet_id: &'a str,
    version: usize,
    #[serde(flatten)]
    document: &'a CabinetDocument,
}

async fn create_cabinet(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult<impl IntoResponse> {
    let text = std::str::from_utf8(&body).map_err(|_| ApiError::bad_request("body must be UTF-8"))?;
    let doc = parse_components_json(text).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let id = state.repo.lock().unwrap().insert(doc);
    Ok((StatusCode::CREATED, Json(json!({ "cabinetId": id }))))
}

async fn get_cabinet(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Response> {
    let repo = state.repo.lock().unwrap();
    let entry = repo.get(&id).ok_or_else(|| ApiError::not_found(format!("unknown cabinet {id}")))?;
    let (version, document) = entry.current();
    Ok(Json(VersionedDocument {
        cabinet_id: &id,
        version,
        document,
    })
    .into_response())
}

const EDITABLE: [&str; 5] = ["widthMm", "heightMm", "depthMm", "isHot", "connectsTo"];

fn field_edit(key: &str, value: &Value) -> ApiResult<FieldEdit> {
    let bad = |what: &str| ApiError::bad_request(format!("{key}: {what}"));
    let length = || match value.as_f64() {
        Some(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(bad("expected a positive number")),
    };
    match key {
        "widthMm" => Ok(FieldEdit::Width(length()?)),
        "heightMm" => Ok(FieldEdit::Height(length()?)),
        "depthMm" => Ok(FieldEdit::Depth(length()?)),
        "isHot" => match value {
            Value::Bool(b) => Ok(FieldEdit::Hot(*b)),
            Value::Number(n) if n.as_u64() == Some(0) => Ok(FieldEdit::Hot(false)),
            Value::Number(n) if n.as_u64() == Some(1) => Ok(FieldEdit::Hot(true)),
            _ => Err(bad("expected a boolean or 0/1")),
        },
        "connectsTo" => value
            .as_array()
            .ok_or_else(|| bad("expected an array of indices"))?
            .iter()
            .map(|t| t.as_u64().map(|t| t as usize).ok_or_else(|| bad("expected an array of indices")))
            .collect::<ApiResult<Vec<_>>>()
            .map(FieldEdit::ConnectsTo),
        other => Err(ApiError::bad_request(format!(
            "`{other}` is not editable (allowed: {})",
            EDITABLE.join(", ")
        ))),
    }
}

async fn edit_component(
    State(state): State<Arc<AppState>>,
    Path((id, index)): Path<(String, usize)>,
    body: Bytes,
) -> ApiResult<Response> {
    let body = json_body(&body)?;
    let edits = body
        .iter()
        .map(|(k, v)| field_edit(k, v).map(|edit| ComponentEdit { index, edit }))
        .collect::<ApiResult<Vec<_>>>()?;

    let mut repo = state.repo.lock().unwrap();
    let entry = repo.get(&id).ok_or_else(|| ApiError::not_found(format!("unknown cabinet {id}")))?;
    let (_, current) = entry.current();
    let components = apply_edits(&current.components, &edits).map_err(|e| match e {
        Error::UnknownComponent(i) => ApiError::not_found(format!("unknown component {i}")),
        other => ApiError::bad_request(other.to_string()),
    })?;
    let doc = CabinetDocument::new(current.cabinet.clone(), components);
    let version = repo.push_version(&id, doc.clone()).expect("cabinet exists");
    Ok(Json(VersionedDocument {
        cabinet_id: &id,
        version,
        document: &doc,
    })
    .into_response())
}

/// Overlays request fields onto the default configuration.
fn config_from(body: &Map<String, Value>) -> ApiResult<PsaConfig> {
    let mut merged = serde_json::to_value(PsaConfig::default()).expect("config serializes");
    let target = merged.as_object_mut().expect("config is an object");
    for (k, v) in body {
        if k == "warmFrom" {
            continue;
        }
        if !target.contains_key(k) {
            return Err(ApiError::bad_request(format!("unknown configuration field `{k}`")));
        }
        target.insert(k.clone(), v.clone());
    }
    let config: PsaConfig = serde_json::from_value(merged).map_err(|e| ApiError::bad_request(e.to_string()))?;
    config.validate().map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(config)
}

async fn optimize(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    body: Bytes,
) -> ApiResult<impl IntoResponse> {
    let body = json_body(&body)?;
    let config = config_from(&body)?;

    let warm_from = match body.get("warmFrom") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.clone()),
        Some(_) => return Err(ApiError::bad_request("warmFrom must be a job id")),
    };
    let previous = match &warm_from {
        None => None,
        Some(job_id) => {
            let job = state
                .job(job_id)
                .ok_or_else(|| ApiError::not_found(format!("unknown job {job_id}")))?;
            match (job.state, job.result) {
                (JobState::Done, Some(r)) => Some(r.document.recommended.order),
                _ => return Err(ApiError::bad_request(format!("job {job_id} has not finished"))),
            }
        }
    };

    let (version, doc) = {
        let repo = state.repo.lock().unwrap();
        let entry = repo.get(&id).ok_or_else(|| ApiError::not_found(format!("unknown cabinet {id}")))?;
        let (v, d) = entry.current();
        (v, d.clone())
    };

    let job_id = state.new_job_id();
    state.jobs.lock().unwrap().insert(
        job_id.clone(),
        Job {
            job_id: job_id.clone(),
            state: JobState::Queued,
            cabinet_id: id,
            cabinet_version: version,
            warm_from,
            config: config.clone(),
            result: None,
            error: None,
        },
    );

    let worker_state = state.clone();
    let worker_job = job_id.clone();
    tokio::spawn(async move {
        let _permit = worker_state.workers.clone().acquire_owned().await.expect("semaphore open");
        update(&worker_state, &worker_job, |j| j.advance(JobState::Running));
        let outcome = tokio::task::spawn_blocking(move || {
            let r = match previous {
                Some(prev) => run_warm(&config, &doc.components, &doc.cabinet, &prev),
                None => run(&config, &doc.components, &doc.cabinet),
            }?;
            Ok::<_, Error>(JobResult::new(&r, &doc.components))
        })
        .await;
        update(&worker_state, &worker_job, |j| match outcome {
            Ok(Ok(result)) => {
                j.result = Some(result);
                j.advance(JobState::Done);
            }
            Ok(Err(e)) => {
                j.error = Some(e.to_string());
                j.advance(JobState::Failed);
            }
            Err(e) => {
                j.error = Some(format!("worker panicked: {e}"));
                j.advance(JobState::Failed);
            }
        });
    });

    Ok((StatusCode::ACCEPTED, Json(json!({ "jobId": job_id }))))
}

fn update(state: &AppState, job_id: &str, f: impl FnOnce(&mut Job)) {
    if let Some(job) = state.jobs.lock().unwrap().get_mut(job_id) {
        f(job);
    }
}

async fn get_job(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult<Json<Job>> {
    state
        .job(&id)
        .map(Json)
        .ok_or_else(|| ApiError::not_found(format!("unknown job {id}")))
}


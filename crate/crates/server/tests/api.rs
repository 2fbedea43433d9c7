use std::time::Duration;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use cabinet_psa::datasets;
use cabinet_psa::io::{write_components_json, ResultDocument};
use cabinet_psa::psa::{run, run_warm, PsaConfig};
use cabinet_psa::{dominates, ObjectiveVector};
use cabinet_psa_server::{router, AppState};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(AppState::new(2))
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<String>) -> (StatusCode, Value, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let text = String::from_utf8(bytes.to_vec()).unwrap();
    let value = serde_json::from_str(&text).unwrap_or(Value::Null);
    (status, value, text)
}

async fn upload_sample(app: &Router) -> String {
    let (status, body, _) = call(app, Method::POST, "/cabinets", Some(write_components_json(&datasets::sample15()))).await;
    assert_eq!(status, StatusCode::CREATED);
    body["cabinetId"].as_str().unwrap().to_string()
}

async fn wait_done(app: &Router, job: &str) -> (Value, String) {
    for _ in 0..600 {
        let (status, body, text) = call(app, Method::GET, &format!("/jobs/{job}"), None).await;
        assert_eq!(status, StatusCode::OK);
        match body["state"].as_str().unwrap() {
            "done" | "failed" => return (body, text),
            _ => tokio::time::sleep(Duration::from_millis(20)).await,
        }
    }
    panic!("job {job} did not finish");
}

async fn optimize(app: &Router, cabinet: &str, body: Value) -> (StatusCode, Value) {
    let (s, b, _) = call(app, Method::POST, &format!("/cabinets/{cabinet}/optimize"), Some(body.to_string())).await;
    (s, b)
}

fn quick(seed: u64) -> Value {
    json!({ "initialTemperature": 200.0, "coolingRate": 0.995, "rngSeed": seed })
}

#[tokio::test]
async fn upload_contract() {
    let app = app();
    let a = upload_sample(&app).await;
    let b = upload_sample(&app).await;
    assert_ne!(a, b);

    let (status, _, _) = call(&app, Method::POST, "/cabinets", Some(r#"{"formatVersion":1,"cabinet":{"usableWidthMm":600,"rowGapMm":40}}"#.into())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _, _) = call(&app, Method::POST, "/cabinets", Some("not json".into())).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (status, body, _) = call(&app, Method::GET, &format!("/cabinets/{a}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["version"], 1);
    assert_eq!(body["components"].as_array().unwrap().len(), 15);
}

#[tokio::test]
async fn optimize_job_lifecycle() {
    let app = app();
    let cab = upload_sample(&app).await;
    let (status, body) = optimize(&app, &cab, json!({})).await;
    assert_eq!(status, StatusCode::ACCEPTED);
    let job = body["jobId"].as_str().unwrap().to_string();
    let (done, first_text) = wait_done(&app, &job).await;
    assert_eq!(done["state"], "done");

    let result = &done["result"];
    assert!(result["svg"].as_str().unwrap().starts_with("<svg"));
    // Same schema as the CLI result file, plus `svg`.
    let mut doc_json = result.clone();
    doc_json.as_object_mut().unwrap().remove("svg");
    let doc: ResultDocument = serde_json::from_value(doc_json).unwrap();
    let archive: Vec<ObjectiveVector> = doc.archive.iter().map(|e| e.objectives).collect();
    for a in &archive {
        for b in &archive {
            assert!(!dominates(a, b));
        }
    }
    assert!(doc.archive.iter().any(|e| e.order == doc.recommended.order));

    let (_, second_text) = wait_done(&app, &job).await;
    assert_eq!(first_text, second_text);

    let (status, _, _) = call(&app, Method::GET, "/jobs/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn optimize_errors() {
    let app = app();
    let cab = upload_sample(&app).await;
    assert_eq!(optimize(&app, "cab-999", json!({})).await.0, StatusCode::NOT_FOUND);
    assert_eq!(optimize(&app, &cab, json!({ "coolingRate": 1.5 })).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(optimize(&app, &cab, json!({ "colour": 1 })).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(optimize(&app, &cab, json!({ "warmFrom": "job-404" })).await.0, StatusCode::NOT_FOUND);

    // A long job is still queued or running when the warm request arrives.
    let (_, body) = optimize(&app, &cab, json!({ "initialTemperature": 1e4, "coolingRate": 0.9999 })).await;
    let slow = body["jobId"].as_str().unwrap();
    assert_eq!(optimize(&app, &cab, json!({ "warmFrom": slow })).await.0, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn seeded_job_matches_library_run() {
    let app = app();
    let cab = upload_sample(&app).await;
    let (_, body) = optimize(&app, &cab, quick(7)).await;
    let (done, _) = wait_done(&app, body["jobId"].as_str().unwrap()).await;

    let config: PsaConfig = serde_json::from_value(done["config"].clone()).unwrap();
    let doc = datasets::sample15();
    let direct = run(&config, &doc.components, &doc.cabinet).unwrap();
    let api: ObjectiveVector = serde_json::from_value(done["result"]["recommended"]["objectives"].clone()).unwrap();
    assert_eq!(api, direct.recommended.objectives);
    let api_doc: ResultDocument = serde_json::from_value({
        let mut v = done["result"].clone();
        v.as_object_mut().unwrap().remove("svg");
        v
    })
    .unwrap();
    assert_eq!(api_doc.without_timing(), ResultDocument::from_psa(&direct).without_timing());
}

#[tokio::test]
async fn component_edits_and_warm_start() {
    let app = app();
    let cab = upload_sample(&app).await;
    let (_, body) = optimize(&app, &cab, quick(3)).await;
    let first = body["jobId"].as_str().unwrap().to_string();
    let (first_done, _) = wait_done(&app, &first).await;

    let put = |index: usize, body: Value| {
        let app = app.clone();
        let cab = cab.clone();
        async move { call(&app, Method::PUT, &format!("/cabinets/{cab}/components/{index}"), Some(body.to_string())).await }
    };

    let (status, body, _) = put(8, json!({ "widthMm": 200.0 })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["version"], 2);
    assert_eq!(body["components"][7]["widthMm"], 200.0);

    let (status, body, _) = put(14, json!({ "widthMm": 130.0, "connectsTo": [12, 15] })).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["components"][13]["connectsTo"], json!([12, 15]));

    assert_eq!(put(14, json!({ "connectsTo": [16] })).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(put(6, json!({ "isHot": 3 })).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(put(6, json!({ "widthMm": -5 })).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(put(6, json!({ "id": "x" })).await.0, StatusCode::BAD_REQUEST);
    assert_eq!(put(99, json!({ "widthMm": 10 })).await.0, StatusCode::NOT_FOUND);
    let (status, _, _) = call(&app, Method::PUT, "/cabinets/cab-999/components/1", Some("{}".into())).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let mut warm_body = quick(3);
    warm_body["warmFrom"] = json!(first);
    let (status, body) = optimize(&app, &cab, warm_body).await;
    assert_eq!(status, StatusCode::ACCEPTED);
    let (warm, _) = wait_done(&app, body["jobId"].as_str().unwrap()).await;
    assert_eq!(warm["state"], "done");
    assert_eq!(warm["cabinetVersion"], 3);
    assert_eq!(warm["result"]["warmStart"], true);

    // The warm job is the library's warm run on the edited cabinet.
    let (_, current, _) = call(&app, Method::GET, &format!("/cabinets/{cab}"), None).await;
    let components: Vec<cabinet_psa::Component> = serde_json::from_value(current["components"].clone()).unwrap();
    let previous: Vec<usize> = serde_json::from_value(first_done["result"]["recommended"]["order"].clone()).unwrap();
    let config: PsaConfig = serde_json::from_value(quick_config(3)).unwrap();
    let direct = run_warm(&config, &components, &datasets::sample15().cabinet, &previous).unwrap();
    let api: ObjectiveVector = serde_json::from_value(warm["result"]["recommended"]["objectives"].clone()).unwrap();
    assert_eq!(api, direct.recommended.objectives);
}

fn quick_config(seed: u64) -> Value {
    let mut v = serde_json::to_value(PsaConfig::default()).unwrap();
    for (k, x) in quick(seed).as_object().unwrap() {
        v[k] = x.clone();
    }
    v
}

#[tokio::test]
async fn cors_headers_present() {
    let app = app();
    let req = Request::builder()
        .method(Method::OPTIONS)
        .uri("/cabinets")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .body(Body::empty())
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert!(resp.headers().contains_key("access-control-allow-origin"));
}

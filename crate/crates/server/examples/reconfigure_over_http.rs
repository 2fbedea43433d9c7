//! Drives the HTTP API in-process: upload sample-15, optimize, widen #8,
//! then warm re-optimize from the first job.
//!
//!     cargo run --release -p cabinet-psa-server --example reconfigure_over_http

use std::time::Duration;

use axum::body::Body;
use axum::http::{Method, Request};
use axum::Router;
use cabinet_psa::datasets;
use cabinet_psa::io::write_components_json;
use cabinet_psa_server::{router, AppState};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> Value {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(|b| Body::from(b.to_string())).unwrap_or_else(Body::empty))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    serde_json::from_slice(&bytes).unwrap()
}

async fn finished(app: &Router, job: &str) -> Value {
    loop {
        let body = call(app, Method::GET, &format!("/jobs/{job}"), None).await;
        if matches!(body["state"].as_str(), Some("done" | "failed")) {
            return body;
        }
        tokio::time::sleep(Duration::from_millis(20)).await;
    }
}

fn report(label: &str, job: &Value) {
    let r = &job["result"]["recommended"];
    println!(
        "{label}: heat {:.3}, wire {:.1} mm, archive {} entries, {:.3} s",
        r["objectives"]["heat"].as_f64().unwrap(),
        r["objectives"]["wireMm"].as_f64().unwrap(),
        job["result"]["archive"].as_array().map_or(0, Vec::len),
        job["result"]["wallTimeSeconds"].as_f64().unwrap_or(0.0),
    );
}

#[tokio::main]
async fn main() {
    let app = router(AppState::new(2));
    let doc: Value = serde_json::from_str(&write_components_json(&datasets::sample15())).unwrap();
    let cabinet = call(&app, Method::POST, "/cabinets", Some(doc)).await["cabinetId"].as_str().unwrap().to_string();

    let first = call(&app, Method::POST, &format!("/cabinets/{cabinet}/optimize"), Some(json!({ "initialTemperature": 10000.0 }))).await;
    let first = finished(&app, first["jobId"].as_str().unwrap()).await;
    report("initial", &first);

    call(&app, Method::PUT, &format!("/cabinets/{cabinet}/components/8"), Some(json!({ "widthMm": 200.0 }))).await;
    let warm = json!({ "initialTemperature": 10000.0, "warmFrom": first["jobId"] });
    let second = call(&app, Method::POST, &format!("/cabinets/{cabinet}/optimize"), Some(warm)).await;
    let second = finished(&app, second["jobId"].as_str().unwrap()).await;
    report("after widening #8", &second);
}

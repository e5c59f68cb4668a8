use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use cluster_service::{router, ApiError, Config, SCHEMA};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn preset(name: &str) -> Value {
    let path = format!("{}/../../data/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn app() -> Router {
    router(Config::default())
}

fn app_with_threshold(ms: u64) -> Router {
    router(Config {
        job_threshold: Duration::from_millis(ms),
        ..Config::default()
    })
}

async fn send(app: &Router, req: Request<Body>) -> (StatusCode, Value) {
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    let body = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, body)
}

async fn get(app: &Router, path: &str) -> (StatusCode, Value) {
    send(app, Request::get(path).body(Body::empty()).unwrap()).await
}

async fn post(app: &Router, path: &str, body: Value) -> (StatusCode, Value) {
    post_raw(app, path, body.to_string()).await
}

async fn post_raw(app: &Router, path: &str, body: String) -> (StatusCode, Value) {
    let req = Request::post(path)
        .header("content-type", "application/json")
        .body(Body::from(body))
        .unwrap();
    send(app, req).await
}

/// Validates `value` against the response schema published for `endpoint`.
fn assert_schema(endpoint: &str, part: &str, value: &Value) {
    let root: Value = serde_json::from_str(SCHEMA).unwrap();
    let mut schema = root["endpoints"][endpoint][part].clone();
    assert!(!schema.is_null(), "no {part} schema for {endpoint}");
    schema["$defs"] = root["$defs"].clone();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{endpoint} {part}: {errors:?}\n{value}");
}

fn assert_error(endpoint: &str, body: &Value, code: &str) {
    let root: Value = serde_json::from_str(SCHEMA).unwrap();
    let mut schema = root["$defs"]["Error"].clone();
    schema["$defs"] = root["$defs"].clone();
    assert!(jsonschema::validator_for(&schema).unwrap().is_valid(body), "{endpoint}: {body}");
    assert_eq!(body["error"]["code"], code, "{endpoint}: {body}");
}

async fn poll_until_done(app: &Router, accepted: &Value) -> Value {
    let path = accepted["poll"].as_str().unwrap().to_string();
    for _ in 0..3000 {
        let (status, body) = get(app, &path).await;
        assert_eq!(status, StatusCode::OK);
        assert_schema("GET /v1/jobs/{token}", "response", &body);
        if body["status"] != "running" {
            return body;
        }
        tokio::time::sleep(Duration::from_millis(100)).await;
    }
    panic!("job did not finish");
}

#[tokio::test]
async fn health_and_schema() {
    let app = app();
    let (status, body) = get(&app, "/v1/health").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({ "ok": true }));
    assert_schema("GET /v1/health", "response", &body);

    let (status, body) = get(&app, "/v1/schema").await;
    assert_eq!(status, StatusCode::OK);
    assert!(body["endpoints"]["POST /v1/seed/mutate"].is_object());
    assert!(jsonschema::validator_for(&json!({ "$defs": body["$defs"], "$ref": "#/$defs/SeedState" })).is_ok());
}

#[tokio::test]
async fn unknown_paths_are_404() {
    let (status, body) = get(&app(), "/v1/nothing").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_error("fallback", &body, "not_found");
}

#[tokio::test]
async fn quiver_mutation_twice_restores_the_quiver() {
    let app = app();
    let req = json!({ "quiver": preset("a3"), "k": 2 });
    assert_schema("POST /v1/quiver/mutate", "request", &req);
    let (status, once) = post(&app, "/v1/quiver/mutate", req).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/quiver/mutate", "response", &once);
    assert_ne!(once["quiver"], preset("a3"));
    let (_, twice) = post(&app, "/v1/quiver/mutate", json!({ "quiver": once["quiver"], "k": 2 })).await;
    assert_eq!(twice["quiver"], preset("a3"));
}

#[tokio::test]
async fn seed_mutation_on_a2() {
    let app = app();
    let (status, init) = post(&app, "/v1/seed/initial", json!({ "quiver": preset("a2") })).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/seed/initial", "response", &init);
    assert_eq!(init["state"]["cluster"], json!(["x1", "x2"]));

    let req = json!({ "state": init["state"], "k": 1 });
    assert_schema("POST /v1/seed/mutate", "request", &req);
    let (status, once) = post(&app, "/v1/seed/mutate", req.clone()).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/seed/mutate", "response", &once);
    let cluster: Vec<&str> = once["state"]["cluster"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(cluster.contains(&"(1+x2)/x1"), "{cluster:?}");
    assert_eq!(once["state"]["history"], json!([1]));

    // Identical requests give identical responses.
    let (_, again) = post(&app, "/v1/seed/mutate", req).await;
    assert_eq!(again, once);

    let (_, twice) = post(&app, "/v1/seed/mutate", json!({ "state": once["state"], "k": 1 })).await;
    assert_eq!(twice["state"]["cluster"], init["state"]["cluster"]);
    assert_eq!(twice["state"]["quiver"], init["state"]["quiver"]);
    assert_eq!(twice["state"]["history"], json!([1, 1]));
}

#[tokio::test]
async fn pentagon_walk_replays() {
    let app = app();
    let (_, mut body) = post(&app, "/v1/seed/initial", json!({ "quiver": preset("a2") })).await;
    for k in [1, 2, 1, 2, 1] {
        let (status, next) = post(&app, "/v1/seed/mutate", json!({ "state": body["state"], "k": k })).await;
        assert_eq!(status, StatusCode::OK);
        body = next;
    }
    assert_eq!(body["state"]["cluster"], json!(["x2", "x1"]));
    let (status, ok) = post(&app, "/v1/seed/verify", json!({ "state": body["state"] })).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/seed/verify", "response", &ok);
}

#[tokio::test]
async fn tampered_states_fail_replay() {
    let app = app();
    let (_, init) = post(&app, "/v1/seed/initial", json!({ "quiver": preset("a3") })).await;
    let (_, once) = post(&app, "/v1/seed/mutate", json!({ "state": init["state"], "k": 2 })).await;

    let mut bad = once["state"].clone();
    bad["history"] = json!([3]);
    let (status, body) = post(&app, "/v1/seed/verify", json!({ "state": bad })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_error("POST /v1/seed/verify", &body, "state_mismatch");

    let mut bad = once["state"].clone();
    bad["cluster"][0] = json!("x7");
    let (status, body) = post(&app, "/v1/seed/mutate", json!({ "state": bad, "k": 1 })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_error("POST /v1/seed/mutate", &body, "state_mismatch");
}

#[tokio::test]
async fn frozen_vertices_are_domain_errors() {
    let app = app();
    let (_, init) = post(&app, "/v1/seed/initial", json!({ "quiver": preset("hexagon") })).await;
    assert_eq!(init["state"]["cluster"].as_array().unwrap().len(), 3);
    let (status, body) = post(&app, "/v1/seed/mutate", json!({ "state": init["state"], "k": 4 })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_error("POST /v1/seed/mutate", &body, "vertex_out_of_range");

    let (status, body) = post(&app, "/v1/quiver/mutate", json!({ "quiver": preset("a2"), "k": 0 })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_error("POST /v1/quiver/mutate", &body, "vertex_out_of_range");
}

#[tokio::test]
async fn malformed_bodies_are_400() {
    let app = app();
    let (status, body) = post_raw(&app, "/v1/quiver/mutate", "{not json".into()).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_error("POST /v1/quiver/mutate", &body, "malformed_request");

    let (status, body) = post(&app, "/v1/quiver/mutate", json!({ "quiver": preset("a2") })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_error("POST /v1/quiver/mutate", &body, "malformed_request");

    let (status, _) = post(&app, "/v1/periodicity", json!({ "pair": "A2,A1", "mode": "fast" })).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn invalid_quivers_are_422() {
    let app = app();
    let q = json!({ "n": 2, "m": 2, "entries": [[1, 2, 1], [2, 1, 1]] });
    let (status, body) = post(&app, "/v1/quiver/mutate", json!({ "quiver": q, "k": 1 })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"]["code"].is_string());

    let (status, body) = post(&app, "/v1/periodicity", json!({ "pair": "B2,A1", "mode": "exact" })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_error("POST /v1/periodicity", &body, "not_simply_laced");

    let (status, body) = post(&app, "/v1/class", json!({ "quiver": preset("a2"), "cap": 0 })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_error("POST /v1/class", &body, "bad_cap");
}

#[test]
fn integrity_errors_are_500() {
    let e = ApiError::from(cluster_core::Error::integrity("remainder"));
    assert_eq!(e.status, StatusCode::INTERNAL_SERVER_ERROR);
    assert_eq!(e.code, "integrity");
}

#[tokio::test]
async fn class_answers_directly_when_fast() {
    let app = app();
    let req = json!({ "quiver": preset("a3") });
    assert_schema("POST /v1/class", "request", &req);
    let (status, body) = post(&app, "/v1/class", req).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/class", "response", &body);
    assert_eq!(body["class_size"], 4);
}

#[tokio::test(flavor = "multi_thread")]
async fn quiver3_class_through_the_job_path() {
    let app = app_with_threshold(0);
    let (status, accepted) = post(&app, "/v1/class", json!({ "quiver": preset("quiver3"), "representatives": 0 })).await;
    assert_eq!(status, StatusCode::ACCEPTED);
    assert_schema("POST /v1/class", "response", &accepted);
    let done = poll_until_done(&app, &accepted).await;
    assert_eq!(done["status"], "done");
    assert_eq!(done["kind"], "class");
    assert_eq!(done["result"]["class_size"], 5739);
    assert_eq!(done["result"]["double_arrow_count"], 84);
    assert_eq!(done["result"]["high_multiplicity_count"], 0);
    let mut report = done["result"].clone();
    report["representatives"] = json!([]);
    assert_schema("POST /v1/class", "response", &report);
}

#[tokio::test(flavor = "multi_thread")]
async fn failed_jobs_report_errors() {
    let app = app_with_threshold(0);
    let q = json!({ "n": 2, "m": 2, "entries": [[1, 2, 1], [2, 1, -1]] });
    let (status, accepted) = post(&app, "/v1/classify", json!({ "quiver": q, "cap": 10 })).await;
    assert_eq!(status, StatusCode::ACCEPTED);
    let done = poll_until_done(&app, &accepted).await;
    assert_eq!(done["status"], "done");
    assert_eq!(done["result"]["result"], "finite");

    let two = json!({ "n": 2, "m": 2, "entries": [] });
    let (status, accepted) = post(&app, "/v1/classify", json!({ "quiver": two })).await;
    assert_eq!(status, StatusCode::ACCEPTED);
    let done = poll_until_done(&app, &accepted).await;
    assert_eq!(done["status"], "failed");
    assert_eq!(done["error"]["code"], "disconnected");
}

#[tokio::test]
async fn unknown_jobs_are_404() {
    let (status, body) = get(&app(), "/v1/jobs/0123").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_error("GET /v1/jobs/{token}", &body, "unknown_job");
}

#[tokio::test]
async fn classify_triangle_strip() {
    let q = json!({ "n": 5, "m": 5, "entries": [
        [1, 2, 1], [2, 1, -1], [2, 3, 1], [3, 2, -1], [3, 4, 1], [4, 3, -1], [4, 5, 1], [5, 4, -1],
        [3, 1, 1], [1, 3, -1], [4, 2, 1], [2, 4, -1], [5, 3, 1], [3, 5, -1]
    ] });
    let (status, body) = post(&app(), "/v1/classify", json!({ "quiver": q })).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/classify", "response", &body);
    assert_eq!(body["dynkin"], "D5");
}

#[tokio::test]
async fn yseed_round_trip() {
    let app = app();
    let (status, init) = post(&app, "/v1/yseed/initial", json!({ "quiver": preset("a3") })).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/yseed/initial", "response", &init);
    assert_eq!(init["y"], json!(["y1", "y2", "y3"]));

    let req = json!({ "yseed": init["yseed"], "k": 2 });
    assert_schema("POST /v1/yseed/mutate", "request", &req);
    let (status, once) = post(&app, "/v1/yseed/mutate", req).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/yseed/mutate", "response", &once);
    assert_eq!(once["yseed"]["c_matrix"][1], json!([0, -1, 1]));
    assert_eq!(once["y"][1], "1/y2");

    let (_, twice) = post(&app, "/v1/yseed/mutate", json!({ "yseed": once["yseed"], "k": 2 })).await;
    assert_eq!(twice["y"], init["y"]);
    assert_eq!(twice["yseed"]["c_matrix"], init["yseed"]["c_matrix"]);

    let (status, body) = post(&app, "/v1/yseed/initial", json!({ "quiver": preset("hexagon") })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_error("POST /v1/yseed/initial", &body, "frozen_vertices");
}

#[tokio::test]
async fn knitting_view() {
    let (status, body) = post(&app(), "/v1/knit", json!({ "quiver": preset("a2") })).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/knit", "response", &body);
    assert_eq!(body["variables"].as_array().unwrap().len(), 5);
    assert!(body["variables"].as_array().unwrap().contains(&json!("(1+x2)/x1")));
}

#[tokio::test(flavor = "multi_thread")]
async fn periodicity_certificates() {
    let app = app();
    let req = json!({ "pair": "A2,A1", "mode": "exact" });
    assert_schema("POST /v1/periodicity", "request", &req);
    let (status, body) = post(&app, "/v1/periodicity", req).await;
    assert_eq!(status, StatusCode::OK);
    assert_schema("POST /v1/periodicity", "response", &body);
    assert_eq!(body["divides"], true);
    assert_eq!(body["h"], 3);
    assert_eq!(body["h'"], 2);

    let slow = app_with_threshold(0);
    let (status, accepted) = post(&slow, "/v1/periodicity", json!({ "pair": "A3,A3", "mode": "modular", "seed": 5 })).await;
    assert_eq!(status, StatusCode::ACCEPTED);
    let done = poll_until_done(&slow, &accepted).await;
    assert_eq!(done["result"]["divides"], true);
    assert_eq!(done["result"]["primes"].as_array().unwrap().len(), 3);
    assert_schema("POST /v1/periodicity", "response", &done["result"]);
}

#[tokio::test]
async fn cors_headers_are_sent() {
    let req = Request::get("/v1/health")
        .header("origin", "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let res = app().oneshot(req).await.unwrap();
    assert_eq!(res.headers()["access-control-allow-origin"], "*");

    let fixed = router(Config {
        cors_origin: Some("http://localhost:5173".into()),
        ..Config::default()
    });
    let req = Request::options("/v1/seed/mutate")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .body(Body::empty())
        .unwrap();
    let res = fixed.oneshot(req).await.unwrap();
    assert_eq!(res.headers()["access-control-allow-origin"], "http://localhost:5173");
}

#[tokio::test]
async fn serves_over_tcp() {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(cluster_service::serve(listener, Config::default()));
    let mut stream = tokio::net::TcpStream::connect(addr).await.unwrap();
    use tokio::io::{AsyncReadExt, AsyncWriteExt};
    stream
        .write_all(b"GET /v1/health HTTP/1.1\r\nhost: x\r\nconnection: close\r\n\r\n")
        .await
        .unwrap();
    let mut out = String::new();
    stream.read_to_string(&mut out).await.unwrap();
    assert!(out.starts_with("HTTP/1.1 200"), "{out}");
    assert!(out.ends_with("{\"ok\":true}"), "{out}");
}

//! HTTP/JSON facade over `cluster-core`.
//!
//! Handlers are pure functions of their request bodies. The job store behind
//! `/v1/jobs/{token}` is the only shared state. Vertices are 1-based.

mod error;
mod jobs;
mod state;

use std::sync::{Arc, OnceLock};
use std::time::Duration;

use axum::extract::{Path, State};
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use cluster_core::knitting::knit_one_period;
use cluster_core::periodicity::{parse_pair, verify_restricted_periodicity, Mode, PeriodicityOptions};
use cluster_core::quiver::{classify, mutation_class, ClassOptions, QuiverJson, DEFAULT_CLASS_CAP};
use cluster_core::ydyn::YSeed;
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

pub use error::ApiError;
pub use jobs::JobStore;
pub use state::ApiSeedState;

use error::JsonBody;
use state::{parse_quiver, vertex};

/// The published request and response schemas.
pub const SCHEMA: &str = include_str!("schema.json");

#[derive(Clone, Debug)]
pub struct Config {
    /// Requests running longer than this answer `202` with a job token.
    pub job_threshold: Duration,
    /// Largest `cap` accepted by `/v1/class` and `/v1/classify`.
    pub max_cap: usize,
    /// `None` allows any origin.
    pub cors_origin: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            job_threshold: Duration::from_secs(2),
            max_cap: 1_000_000,
            cors_origin: None,
        }
    }
}

#[derive(Clone)]
struct AppState {
    config: Arc<Config>,
    jobs: Arc<JobStore>,
}

pub fn router(config: Config) -> Router {
    let cors = CorsLayer::new().allow_methods(Any).allow_headers(Any);
    let cors = match config.cors_origin.as_deref().map(HeaderValue::from_str) {
        Some(Ok(origin)) => cors.allow_origin(AllowOrigin::exact(origin)),
        _ => cors.allow_origin(Any),
    };
    let state = AppState {
        config: Arc::new(config),
        jobs: Arc::new(JobStore::default()),
    };
    Router::new()
        .route("/v1/health", get(health))
        .route("/v1/schema", get(schema))
        .route("/v1/quiver/mutate", post(quiver_mutate))
        .route("/v1/seed/initial", post(seed_initial))
        .route("/v1/seed/mutate", post(seed_mutate))
        .route("/v1/seed/verify", post(seed_verify))
        .route("/v1/class", post(class))
        .route("/v1/classify", post(classify_handler))
        .route("/v1/yseed/initial", post(yseed_initial))
        .route("/v1/yseed/mutate", post(yseed_mutate))
        .route("/v1/knit", post(knit))
        .route("/v1/periodicity", post(periodicity))
        .route("/v1/jobs/{token}", get(job))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint") })
        .layer(cors)
        .with_state(state)
}

/// Serves until the listener fails.
pub async fn serve(listener: tokio::net::TcpListener, config: Config) -> std::io::Result<()> {
    axum::serve(listener, router(config)).await
}

type ApiResult = Result<Json<Value>, ApiError>;

async fn health() -> Json<Value> {
    Json(json!({ "ok": true }))
}

async fn schema() -> Json<Value> {
    static PARSED: OnceLock<Value> = OnceLock::new();
    Json(PARSED.get_or_init(|| serde_json::from_str(SCHEMA).expect("valid schema")).clone())
}

#[derive(Deserialize)]
struct QuiverK {
    quiver: QuiverJson,
    k: usize,
}

async fn quiver_mutate(JsonBody(req): JsonBody<QuiverK>) -> ApiResult {
    let q = parse_quiver(req.quiver)?;
    let q = q.mutate(vertex(&q, req.k)?)?;
    Ok(Json(json!({ "quiver": QuiverJson::from(q) })))
}

#[derive(Deserialize)]
struct QuiverOnly {
    quiver: QuiverJson,
}

async fn seed_initial(JsonBody(req): JsonBody<QuiverOnly>) -> ApiResult {
    let state = ApiSeedState::initial_state(parse_quiver(req.quiver)?);
    Ok(Json(json!({ "state": state })))
}

#[derive(Deserialize)]
struct SeedK {
    state: ApiSeedState,
    k: usize,
}

async fn seed_mutate(JsonBody(req): JsonBody<SeedK>) -> ApiResult {
    let state = tokio::task::spawn_blocking(move || req.state.mutate(req.k))
        .await
        .map_err(|_| ApiError::integrity("mutation panicked"))??;
    Ok(Json(json!({ "state": state })))
}

#[derive(Deserialize)]
struct SeedOnly {
    state: ApiSeedState,
}

async fn seed_verify(JsonBody(req): JsonBody<SeedOnly>) -> ApiResult {
    req.state.replay()?;
    Ok(Json(json!({ "ok": true })))
}

#[derive(Deserialize)]
struct ClassRequest {
    quiver: QuiverJson,
    cap: Option<usize>,
    representatives: Option<usize>,
}

fn check_cap(config: &Config, cap: Option<usize>) -> Result<usize, ApiError> {
    let cap = cap.unwrap_or(DEFAULT_CLASS_CAP.min(config.max_cap));
    if cap == 0 || cap > config.max_cap {
        return Err(ApiError::domain(
            "bad_cap",
            format!("cap must be between 1 and {}", config.max_cap),
        ));
    }
    Ok(cap)
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, ApiError> {
    serde_json::to_value(v).map_err(|e| ApiError::integrity(e.to_string()))
}

async fn class(State(app): State<AppState>, JsonBody(req): JsonBody<ClassRequest>) -> Response {
    let prepared = (|| {
        let q = parse_quiver(req.quiver)?;
        let cap = check_cap(&app.config, req.cap)?;
        Ok::<_, ApiError>((q, cap))
    })();
    let (q, cap) = match prepared {
        Ok(p) => p,
        Err(e) => return e.into_response(),
    };
    let options = ClassOptions {
        cap,
        max_representatives: req.representatives.unwrap_or(100),
    };
    jobs::run(app.jobs.clone(), "class", app.config.job_threshold, move || {
        to_value(&mutation_class(&q, &options))
    })
    .await
}

#[derive(Deserialize)]
struct ClassifyRequest {
    quiver: QuiverJson,
    cap: Option<usize>,
}

async fn classify_handler(State(app): State<AppState>, JsonBody(req): JsonBody<ClassifyRequest>) -> Response {
    let prepared = (|| {
        let q = parse_quiver(req.quiver)?;
        let cap = check_cap(&app.config, req.cap)?;
        Ok::<_, ApiError>((q, cap))
    })();
    let (q, cap) = match prepared {
        Ok(p) => p,
        Err(e) => return e.into_response(),
    };
    jobs::run(app.jobs.clone(), "classify", app.config.job_threshold, move || {
        to_value(&classify(&q, cap)?)
    })
    .await
}

fn yseed_body(s: &YSeed) -> ApiResult {
    let y: Vec<String> = s.y_variables().iter().map(|r| r.display_with("y")).collect();
    Ok(Json(json!({ "yseed": to_value(s)?, "y": y })))
}

async fn yseed_initial(JsonBody(req): JsonBody<QuiverOnly>) -> ApiResult {
    yseed_body(&YSeed::initial(parse_quiver(req.quiver)?)?)
}

#[derive(Deserialize)]
struct YSeedK {
    yseed: YSeed,
    k: usize,
}

async fn yseed_mutate(JsonBody(req): JsonBody<YSeedK>) -> ApiResult {
    let k = vertex(req.yseed.quiver(), req.k)?;
    let next = tokio::task::spawn_blocking(move || req.yseed.mutate(k))
        .await
        .map_err(|_| ApiError::integrity("mutation panicked"))??;
    yseed_body(&next)
}

async fn knit(JsonBody(req): JsonBody<QuiverOnly>) -> ApiResult {
    let frame = knit_one_period(&parse_quiver(req.quiver)?)?;
    let slices: Vec<Vec<String>> = frame
        .slices
        .iter()
        .map(|s| s.iter().map(|p| p.to_string()).collect())
        .collect();
    let variables: Vec<String> = frame.variables().iter().map(|p| p.to_string()).collect();
    Ok(Json(json!({
        "first": frame.first,
        "period": frame.period,
        "slices": slices,
        "variables": variables,
        "render": frame.render(),
    })))
}

#[derive(Deserialize)]
struct PeriodicityRequest {
    pair: String,
    mode: Mode,
    #[serde(default)]
    seed: u64,
}

async fn periodicity(State(app): State<AppState>, JsonBody(req): JsonBody<PeriodicityRequest>) -> Response {
    let (t, t2) = match parse_pair(&req.pair) {
        Ok(p) => p,
        Err(e) => return ApiError::from(e).into_response(),
    };
    let mut options = PeriodicityOptions::new(req.mode);
    options.seed = req.seed;
    jobs::run(app.jobs.clone(), "periodicity", app.config.job_threshold, move || {
        to_value(&verify_restricted_periodicity(t, t2, &options)?)
    })
    .await
}

async fn job(State(app): State<AppState>, Path(token): Path<String>) -> ApiResult {
    app.jobs
        .poll(&token)
        .map(Json)
        .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_job", format!("no job {token}")))
}

//! Stateless JSON-over-HTTP facade.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use fcprofile::{ParseOptions, Profile};
use serde::{Deserialize, Serialize};
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

use crate::fixtures;
use crate::report::{self, ErrorJson};

pub const DEFAULT_MAX_POINTS: usize = 1_000_000;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Larger profiles are answered with 413.
    pub max_points: usize,
    /// Allowed CORS origin; any origin when `None`.
    pub cors_origin: Option<String>,
    /// Directory served for all other paths, e.g. a built UI.
    pub static_dir: Option<PathBuf>,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            max_points: DEFAULT_MAX_POINTS,
            cors_origin: None,
            static_dir: None,
        }
    }
}

/// The six FC fields without the `FC` prefix.
#[derive(Debug, Clone, Deserialize)]
pub struct FcFields {
    pub feature_type: String,
    pub pruning: String,
    pub significance: String,
    pub attribute: String,
    pub statistic: String,
}

impl FcFields {
    pub fn to_spec(&self) -> String {
        format!(
            "FC;{};{};{};{};{}",
            self.feature_type, self.pruning, self.significance, self.attribute, self.statistic
        )
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct CharacterizeRequest {
    pub z: Vec<f64>,
    pub dx: f64,
    /// FC string; takes precedence over `fields`.
    pub spec: Option<String>,
    pub fields: Option<FcFields>,
    /// Match keywords ignoring ASCII case.
    #[serde(default)]
    pub lenient: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExampleJson {
    pub name: &'static str,
    pub description: &'static str,
    pub spec: &'static str,
    pub dx: f64,
    pub n: usize,
    pub z: Vec<f64>,
}

struct AppState {
    config: ServiceConfig,
    examples: Vec<ExampleJson>,
}

fn error(status: StatusCode, body: ErrorJson) -> Response {
    (status, Json(body)).into_response()
}

async fn characterize(State(state): State<Arc<AppState>>, body: Bytes) -> Response {
    let request: CharacterizeRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, ErrorJson::new("INVALID_JSON", e)),
    };
    if request.z.len() > state.config.max_points {
        let msg = format!(
            "profile has {} points, the limit is {}",
            request.z.len(),
            state.config.max_points
        );
        return error(StatusCode::PAYLOAD_TOO_LARGE, ErrorJson::new("TOO_MANY_POINTS", msg));
    }
    let Some(spec) = request.spec.clone().or_else(|| request.fields.as_ref().map(FcFields::to_spec)) else {
        return error(
            StatusCode::BAD_REQUEST,
            ErrorJson::new("MISSING_SPEC", "request needs `spec` or `fields`"),
        );
    };
    let profile = match Profile::new(request.z, request.dx) {
        Ok(p) => p,
        Err(e) => return error(StatusCode::BAD_REQUEST, ErrorJson::new("INVALID_PROFILE", e)),
    };
    let options = if request.lenient {
        ParseOptions::lenient()
    } else {
        ParseOptions::default()
    };
    let result = tokio::task::spawn_blocking(move || report::evaluate(&profile, &spec, options)).await;
    match result {
        Ok(Ok((_, response))) => Json(response).into_response(),
        Ok(Err(e)) => error(StatusCode::BAD_REQUEST, ErrorJson::from(&e)),
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, ErrorJson::new("INTERNAL", e)),
    }
}

async fn list_examples(State(state): State<Arc<AppState>>) -> Json<Vec<ExampleJson>> {
    Json(state.examples.clone())
}

pub fn router(config: ServiceConfig) -> Router {
    let examples = fixtures::examples()
        .into_iter()
        .map(|e| ExampleJson {
            name: e.name,
            description: e.description,
            spec: e.spec,
            dx: e.profile.dx(),
            n: e.profile.len(),
            z: e.profile.z().to_vec(),
        })
        .collect();
    let origin = match &config.cors_origin {
        Some(o) => match HeaderValue::from_str(o) {
            Ok(v) => AllowOrigin::exact(v),
            Err(_) => AllowOrigin::any(),
        },
        None => AllowOrigin::any(),
    };
    let cors = CorsLayer::new()
        .allow_origin(origin)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    // about 25 bytes per ordinate in JSON
    let body_limit = (config.max_points.saturating_mul(32)).max(2 << 20);
    let static_dir = config.static_dir.clone();
    let state = Arc::new(AppState { config, examples });

    let api = Router::new()
        .route("/api/characterize", post(characterize))
        .route("/api/examples", get(list_examples))
        .layer(DefaultBodyLimit::max(body_limit))
        .layer(cors)
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(config)).await
}

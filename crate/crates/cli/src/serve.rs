//! `fea2vr serve`: a read-only HTTP server over one vrmesh document.
//!
//! | path          | response                                   |
//! |---------------|--------------------------------------------|
//! | `/health`     | `ok`                                       |
//! | `/api/model`  | the document, `application/json`           |
//! | `/api/report` | its provenance counts, `application/json`  |
//! | `/`, other    | viewer assets from `--assets`, else 404    |
//!
//! Without an assets directory `/` answers with a small built-in page.

use std::path::{Component, Path, PathBuf};
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, Method, StatusCode, Uri};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;

use crate::{load_document, Failure};

const INDEX_HTML: &str = include_str!("index.html");

/// Immutable state shared by all requests.
#[derive(Debug, Clone)]
pub struct Served {
    pub model: Bytes,
    pub report: Option<Bytes>,
    pub assets: Option<PathBuf>,
}

impl Served {
    /// Load and check a vrmesh file. The document is served byte for byte.
    pub fn load(path: &Path, assets: Option<PathBuf>) -> Result<Self, Failure> {
        let loaded = load_document(path, false)?;
        let model = std::fs::read(path).map_err(|e| Failure::cannot_read("mesh", path, e))?;
        let report = loaded
            .report
            .map(|r| serde_json::to_vec(&r).map(Bytes::from))
            .transpose()
            .map_err(|e| Failure::failed(format!("cannot encode report: {e}")))?;
        Ok(Served {
            model: Bytes::from(model),
            report,
            assets,
        })
    }
}

pub fn router(served: Served) -> Router {
    Router::new()
        .route("/health", get(|| async { "ok" }))
        .route("/api/model", get(model))
        .route("/api/report", get(report))
        .fallback(static_asset)
        .with_state(Arc::new(served))
}

fn json(body: Bytes) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn not_found() -> Response {
    (StatusCode::NOT_FOUND, "not found").into_response()
}

async fn model(State(served): State<Arc<Served>>) -> Response {
    json(served.model.clone())
}

async fn report(State(served): State<Arc<Served>>) -> Response {
    match &served.report {
        Some(r) => json(r.clone()),
        None => (StatusCode::NOT_FOUND, "no provenance recorded").into_response(),
    }
}

async fn static_asset(State(served): State<Arc<Served>>, method: Method, uri: Uri) -> Response {
    if method != Method::GET && method != Method::HEAD {
        return StatusCode::METHOD_NOT_ALLOWED.into_response();
    }
    let Some(relative) = asset_path(uri.path()) else {
        return not_found();
    };
    let Some(root) = &served.assets else {
        if relative.as_os_str().is_empty() || relative == Path::new("index.html") {
            return ([(header::CONTENT_TYPE, "text/html; charset=utf-8")], INDEX_HTML).into_response();
        }
        return not_found();
    };

    let mut file = root.join(&relative);
    if tokio::fs::metadata(&file).await.is_ok_and(|m| m.is_dir()) {
        file.push("index.html");
    }
    match tokio::fs::read(&file).await {
        Ok(body) => ([(header::CONTENT_TYPE, content_type(&file))], body).into_response(),
        Err(_) => not_found(),
    }
}

/// Map a request path onto a relative file path. Anything that could step
/// outside the assets root is refused.
fn asset_path(path: &str) -> Option<PathBuf> {
    let mut out = PathBuf::new();
    for part in path.split('/').filter(|p| !p.is_empty()) {
        let mut components = Path::new(part).components();
        match (components.next(), components.next()) {
            (Some(Component::Normal(c)), None) if !part.contains('\\') => out.push(c),
            _ => return None,
        }
    }
    Some(out)
}

fn content_type(path: &Path) -> &'static str {
    match path.extension().and_then(|e| e.to_str()).unwrap_or("") {
        "html" | "htm" => "text/html; charset=utf-8",
        "js" | "mjs" => "text/javascript; charset=utf-8",
        "css" => "text/css; charset=utf-8",
        "json" => "application/json",
        "svg" => "image/svg+xml",
        "png" => "image/png",
        "jpg" | "jpeg" => "image/jpeg",
        "ico" => "image/x-icon",
        "wasm" => "application/wasm",
        "txt" => "text/plain; charset=utf-8",
        _ => "application/octet-stream",
    }
}

/// Bind and serve until interrupted.
pub fn run(served: Served, host: &str, port: u16) -> Result<(), Failure> {
    let runtime = tokio::runtime::Runtime::new()
        .map_err(|e| Failure::failed(format!("cannot start runtime: {e}")))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| Failure::failed(format!("cannot bind {host}:{port}: {e}")))?;
        let addr = listener
            .local_addr()
            .map_err(|e| Failure::failed(format!("cannot bind {host}:{port}: {e}")))?;
        println!("listening on http://{addr}");
        axum::serve(listener, router(served))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(|e| Failure::failed(format!("server error: {e}")))
    })
}

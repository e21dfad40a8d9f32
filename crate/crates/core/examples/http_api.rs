//! Drives the chat HTTP API in-process, without opening a socket.
//!
//! `cargo run --example http_api`

use std::sync::Arc;

use axum::body::Body;
use axum::http::Request;
use http_body_util::BodyExt;
use ontodm::service::{router, Engine, SessionStore};
use serde_json::Value;
use tower::ServiceExt;

async fn call(app: &axum::Router, method: &str, uri: &str, body: Option<String>) -> Result<Value, Box<dyn std::error::Error>> {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, Body::from))?;
    let resp = app.clone().oneshot(req).await?;
    let status = resp.status();
    let bytes = resp.into_body().collect().await?.to_bytes();
    println!("{method} {uri} -> {status}");
    Ok(serde_json::from_slice(&bytes)?)
}

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let store = Arc::new(SessionStore::new(Arc::new(Engine::bundled()?)));
    let app = router(store);
    let created = call(&app, "POST", "/api/sessions", None).await?;
    let id = created["session_id"].as_str().ok_or("no session id")?.to_owned();
    for text in ["Ich brauche einen Kredit.", "Was ist die Laufzeit?"] {
        let body = serde_json::json!({ "text": text }).to_string();
        let reply = call(&app, "POST", &format!("/api/sessions/{id}/messages"), Some(body)).await?;
        println!("  {}", reply["answer"]);
    }
    let state = call(&app, "GET", &format!("/api/sessions/{id}/state"), None).await?;
    println!("  {state}");
    Ok(())
}

use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use ontodm::service::{router, Engine, SessionStore};
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> (Router, Arc<SessionStore>) {
    let store = Arc::new(SessionStore::new(Arc::new(Engine::bundled().unwrap())));
    (router(store.clone()), store)
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<&str>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    if body.is_some() {
        req = req.header("content-type", "application/json");
    }
    let req = req.body(body.map_or_else(Body::empty, |b| Body::from(b.to_owned()))).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn new_session(app: &Router) -> String {
    let (status, body) = call(app, Method::POST, "/api/sessions", None).await;
    assert_eq!(status, StatusCode::CREATED);
    body["session_id"].as_str().unwrap().to_owned()
}

#[tokio::test]
async fn health_reports_ok() {
    let (app, _) = app();
    let (status, body) = call(&app, Method::GET, "/api/health", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body, json!({"status": "ok"}));
}

#[tokio::test]
async fn message_round_trip_matches_library() {
    let (app, store) = app();
    let id = new_session(&app).await;
    let uri = format!("/api/sessions/{id}/messages");
    let (status, body) = call(&app, Method::POST, &uri, Some(r#"{"text":"Was ist der Zinssatz bei 4Kredit?"}"#)).await;
    assert_eq!(status, StatusCode::OK);
    assert!(body["answer"].as_str().unwrap().contains("0.23"));
    assert_eq!(body["outcome"]["kind"], "attribute_value");
    assert_eq!(body["outcome"]["fired_rule"], "a");
    assert_eq!(body["state"]["curr_prod"], "Kredit");
    assert_eq!(body["state"]["curr_prod_indiv"], "4Kredit");

    let lib = SessionStore::new(Arc::new(Engine::bundled().unwrap()));
    let lib_id = lib.create();
    let envelope = lib.post_message(&lib_id, "Was ist der Zinssatz bei 4Kredit?").unwrap();
    assert_eq!(body, serde_json::to_value(&envelope).unwrap());

    let (status, state) = call(&app, Method::GET, &format!("/api/sessions/{id}/state"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(state, body["state"]);
    assert_eq!(state, serde_json::to_value(store.state(&id).unwrap()).unwrap());
}

#[tokio::test]
async fn transcript_lists_turns_in_order() {
    let (app, _) = app();
    let id = new_session(&app).await;
    let uri = format!("/api/sessions/{id}/messages");
    for text in ["Ich brauche einen Kredit.", "Was ist die Laufzeit?"] {
        let body = json!({ "text": text }).to_string();
        assert_eq!(call(&app, Method::POST, &uri, Some(&body)).await.0, StatusCode::OK);
    }
    let (status, turns) = call(&app, Method::GET, &format!("/api/sessions/{id}/transcript"), None).await;
    assert_eq!(status, StatusCode::OK);
    let turns = turns.as_array().unwrap();
    assert_eq!(turns.len(), 2);
    assert_eq!(turns[0]["user"], "Ich brauche einen Kredit.");
    assert_eq!(turns[1]["message_index"], 2);
    assert!(turns[1]["answer"].as_str().unwrap().contains("12 bis 84"));
}

#[tokio::test]
async fn unknown_session_is_404() {
    let (app, _) = app();
    for (method, uri, body) in [
        (Method::POST, "/api/sessions/nope/messages", Some(r#"{"text":"Hallo"}"#)),
        (Method::GET, "/api/sessions/nope/state", None),
        (Method::GET, "/api/sessions/nope/transcript", None),
    ] {
        let (status, body) = call(&app, method, uri, body).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{uri}");
        assert!(body["error"].is_string());
    }
}

#[tokio::test]
async fn bad_bodies_are_400_and_leave_state_alone() {
    let (app, store) = app();
    let id = new_session(&app).await;
    let uri = format!("/api/sessions/{id}/messages");
    for body in [r#"{"text":""}"#, r#"{"text":"   "}"#, r#"{"message":"Hallo"}"#, "not json"] {
        let (status, _) = call(&app, Method::POST, &uri, Some(body)).await;
        assert_eq!(status, StatusCode::BAD_REQUEST, "{body}");
    }
    assert_eq!(store.state(&id).unwrap().message_index, 0);
    assert!(store.transcript(&id).unwrap().is_empty());
}

//! Black-box tests of the qosbroker binary.

use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(store: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qosbroker"))
        .arg("--store")
        .arg(store)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn seeded_store(dir: &tempfile::TempDir) -> PathBuf {
    let store = dir.path().join("registry.qos");
    let output = run(&store, &["register", fixture("weather-registry.json").to_str().unwrap()]);
    assert!(output.status.success(), "{output:?}");
    store
}

#[test]
fn register_reports_count() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("registry.qos");
    let output = run(&store, &["register", fixture("weather-registry.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("registered 4"));
    assert!(store.exists());
}

#[test]
fn duplicate_batch_is_atomic() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let before = std::fs::read_to_string(&store).unwrap();
    // Same four services again: every id already exists, nothing may land.
    let output = run(&store, &["register", fixture("weather-registry.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("duplicate-id"));
    assert_eq!(std::fs::read_to_string(&store).unwrap(), before);
}

#[test]
fn register_empty_document() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("registry.qos");
    let doc = dir.path().join("empty.json");
    let registry = std::fs::read_to_string(fixture("weather-registry.json")).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&registry).unwrap();
    value["services"] = serde_json::json!([]);
    std::fs::write(&doc, value.to_string()).unwrap();
    let output = run(&store, &["register", doc.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("registered 0"));
}

#[test]
fn match_case1_table_output() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let output = run(&store, &["match", fixture("case1-request.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let first = text.lines().nth(1).unwrap();
    assert!(first.contains("ws_4"), "{text}");
    assert!(first.contains("0.6572"), "{text}");
}

#[test]
fn match_document_output_is_machine_readable() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let output = run(
        &store,
        &[
            "--output",
            "document",
            "match",
            fixture("case2-request.json").to_str().unwrap(),
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let parsed: qos_broker_service::wire::MatchResponse =
        serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(parsed.ranking[0].id, "ws_3");
    assert!((parsed.ranking[0].distance_raw - 0.7222).abs() <= 0.005);
}

#[test]
fn match_top_flag_caps_results() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let output = run(
        &store,
        &["match", fixture("case1-request.json").to_str().unwrap(), "--top", "1"],
    );
    let text = stdout(&output);
    assert!(text.contains("ws_4"));
    assert!(!text.contains("ws_1"), "{text}");
}

#[test]
fn match_explain_prints_contributions() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let output = run(
        &store,
        &["match", fixture("case1-request.json").to_str().unwrap(), "--explain"],
    );
    let text = stdout(&output);
    assert!(text.contains("contributions:"), "{text}");
    assert!(text.contains("response_time"), "{text}");
}

#[test]
fn match_on_empty_registry_gives_feedback() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("registry.qos");
    let doc = dir.path().join("empty.json");
    let registry = std::fs::read_to_string(fixture("weather-registry.json")).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&registry).unwrap();
    value["services"] = serde_json::json!([]);
    std::fs::write(&doc, value.to_string()).unwrap();
    run(&store, &["register", doc.to_str().unwrap()]);

    let output = run(&store, &["match", fixture("case1-request.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("no service matches"));
}

#[test]
fn missing_store_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("nope.qos");
    let output = run(&store, &["match", fixture("case1-request.json").to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn invalid_request_is_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let bad = dir.path().join("bad.json");
    let request = std::fs::read_to_string(fixture("case1-request.json")).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&request).unwrap();
    value["weights"]["cost"] = serde_json::json!(1.3);
    std::fs::write(&bad, value.to_string()).unwrap();
    let output = run(&store, &["match", bad.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&output.stderr).contains("out-of-range-weight"));
}

#[test]
fn compare_highlights_winner_flip() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let output = run(
        &store,
        &[
            "compare",
            fixture("case1-request.json").to_str().unwrap(),
            "--weights",
            fixture("schemes.json").to_str().unwrap(),
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    let winner_line = text.lines().find(|l| l.starts_with("winner")).unwrap();
    assert!(winner_line.contains("ws_4"), "{text}");
    assert!(winner_line.contains("ws_3 *"), "{text}");
}

#[test]
fn compare_scaled_scheme_halves_distances() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    // case1 and case1 scaled by 0.25: identical ranking, distances halved.
    let schemes = dir.path().join("scaled.json");
    let base: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("schemes.json")).unwrap()).unwrap();
    let case1 = base[0]["weights"].as_object().unwrap().clone();
    let scaled: serde_json::Map<String, serde_json::Value> = case1
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::json!(v.as_f64().unwrap() * 0.25)))
        .collect();
    std::fs::write(
        &schemes,
        serde_json::json!([
            {"name": "case1", "weights": case1},
            {"name": "case1-quarter", "weights": scaled},
        ])
        .to_string(),
    )
    .unwrap();

    let output = run(
        &store,
        &[
            "--output",
            "document",
            "compare",
            fixture("case1-request.json").to_str().unwrap(),
            "--weights",
            schemes.to_str().unwrap(),
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    let rankings: Vec<qos_broker_core::SchemeRanking> =
        serde_json::from_str(&stdout(&output)).unwrap();
    assert!(!rankings[1].winner_differs);
    for (a, b) in rankings[0].ranked.iter().zip(&rankings[1].ranked) {
        assert_eq!(a.id, b.id);
        assert!((b.distance - a.distance * 0.5).abs() <= 1e-9);
    }
}

#[test]
fn single_scheme_comparison() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let schemes = dir.path().join("one.json");
    let base: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("schemes.json")).unwrap()).unwrap();
    std::fs::write(&schemes, serde_json::json!([base[0]]).to_string()).unwrap();
    let output = run(
        &store,
        &[
            "compare",
            fixture("case1-request.json").to_str().unwrap(),
            "--weights",
            schemes.to_str().unwrap(),
        ],
    );
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("ws_4"));
}

#[test]
fn env_var_selects_store() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let output = Command::new(env!("CARGO_BIN_EXE_qosbroker"))
        .env("QOS_STORE", &store)
        .args(["match", fixture("case1-request.json").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("ws_4"));
}

struct ServeGuard(std::process::Child);

impl Drop for ServeGuard {
    fn drop(&mut self) {
        let _ = self.0.kill();
        let _ = self.0.wait();
    }
}

fn spawn_serve(store: &Path) -> (ServeGuard, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qosbroker"))
        .arg("--store")
        .arg(store)
        .args(["serve", "--addr", "127.0.0.1:0"])
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let mut line = String::new();
    std::io::BufReader::new(child.stdout.take().unwrap())
        .read_line(&mut line)
        .unwrap();
    let base = line.trim().strip_prefix("listening on ").unwrap().to_string();
    (ServeGuard(child), base)
}

#[test]
fn serve_end_to_end_case2() {
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let (_guard, base) = spawn_serve(&store);

    let runtime = tokio::runtime::Runtime::new().unwrap();
    runtime.block_on(async {
        let client = qos_broker_client::BrokerClient::new(&base);
        let health = client.health().await.unwrap();
        assert_eq!(health.services, 4);

        let request: qos_broker_core::MatchRequest = serde_json::from_str(
            &std::fs::read_to_string(fixture("case2-request.json")).unwrap(),
        )
        .unwrap();
        let response = client.find_match(&request).await.unwrap();
        assert_eq!(response.ranking[0].id, "ws_3");
    });
}

#[test]
fn serve_registrations_survive_a_kill() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("registry.qos");
    // Fresh store: serve creates it with the default schema.
    let (guard, base) = spawn_serve(&store);

    let runtime = tokio::runtime::Runtime::new().unwrap();
    runtime.block_on(async {
        let client = qos_broker_client::BrokerClient::new(&base);
        let registry: serde_json::Value = serde_json::from_str(
            &std::fs::read_to_string(fixture("weather-registry.json")).unwrap(),
        )
        .unwrap();
        for record in registry["services"].as_array().unwrap() {
            let record: qos_broker_core::ServiceRecord =
                serde_json::from_value(record.clone()).unwrap();
            client.register(&record).await.unwrap();
        }
    });
    drop(guard);

    let reloaded = qos_broker_core::RegistryStore::load(&store).unwrap();
    assert_eq!(reloaded.len(), 4);
}

#[test]
fn serve_on_occupied_port_is_exit_2() {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap().to_string();
    let dir = tempfile::tempdir().unwrap();
    let store = seeded_store(&dir);
    let output = run(&store, &["serve", "--addr", &addr]);
    assert_eq!(output.status.code(), Some(2));
}

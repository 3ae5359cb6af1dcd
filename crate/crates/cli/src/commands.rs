use std::path::Path;

use qos_broker_core::{
    compare_schemes, match_services, Direction, Error, MatchRequest, QosPropertyDef, QosSchema,
    RegistryStore, SchemeRanking, ServiceRecord, WeightScheme,
};
use qos_broker_service::wire::MatchResponse;
use qos_broker_service::AppState;

use crate::{CliError, OutputFormat};

/// Schema used when `serve` has to create a brand-new store file.
fn default_schema() -> QosSchema {
    QosSchema::new(vec![
        QosPropertyDef::new("scalability", Direction::Maximize, "ratio"),
        QosPropertyDef::new("response_time", Direction::Minimize, "ms"),
        QosPropertyDef::new("throughput", Direction::Maximize, "requests/s"),
        QosPropertyDef::new("availability", Direction::Maximize, "ratio"),
        QosPropertyDef::new("accessibility", Direction::Maximize, "ratio"),
        QosPropertyDef::new("cost", Direction::Minimize, "currency units"),
    ])
    .expect("static schema is valid")
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn load_store(path: &Path) -> Result<RegistryStore, CliError> {
    RegistryStore::load(path)
        .map_err(|e| CliError::Io(format!("cannot load store {}: {e}", path.display())))
}

fn save_store(store: &RegistryStore, path: &Path) -> Result<(), CliError> {
    store
        .save(path)
        .map_err(|e| CliError::Io(format!("cannot write store {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Validation(format!("invalid {what}: {e}")))
}

fn validation(err: Error) -> CliError {
    CliError::Validation(format!("[{}] {err}", err.code()))
}

/// Registers every service in `file` (a store document) atomically: either
/// all records land in the store or none do.
pub fn register(store_path: &Path, file: &Path) -> Result<(), CliError> {
    let text = read_file(file)?;
    let incoming =
        RegistryStore::from_document_str(&text).map_err(|e| CliError::Validation(e.to_string()))?;

    let mut store = if store_path.exists() {
        let store = load_store(store_path)?;
        store.check_schema(incoming.schema()).map_err(validation)?;
        store
    } else {
        RegistryStore::new(incoming.schema().clone())
    };

    for record in incoming.services() {
        store.register(record.clone()).map_err(validation)?;
    }
    save_store(&store, store_path)?;
    println!("registered {}", incoming.len());
    Ok(())
}

fn candidates_of(store: &RegistryStore, request: &MatchRequest) -> Vec<ServiceRecord> {
    store
        .find_by_function(&request.functional_tags)
        .into_iter()
        .cloned()
        .collect()
}

pub fn run_match(
    store_path: &Path,
    file: &Path,
    top: Option<usize>,
    explain: bool,
    output: OutputFormat,
) -> Result<(), CliError> {
    let store = load_store(store_path)?;
    let mut request: MatchRequest = parse_json(&read_file(file)?, "match request")?;
    if let Some(top) = top {
        request.top_k = top;
    }
    request.validate(store.schema()).map_err(validation)?;

    let candidates = candidates_of(&store, &request);
    if candidates.is_empty() {
        println!("no service matches the functional query; register services or relax the tags");
        return Ok(());
    }
    let result = match_services(&request, &candidates, store.schema()).map_err(validation)?;
    let response = MatchResponse::from_result(&result);

    match output {
        OutputFormat::Document => {
            println!("{}", serde_json::to_string_pretty(&response).unwrap());
        }
        OutputFormat::Table => {
            if result.unranked {
                println!("request carried no QoS requirements; candidates are unranked");
            }
            println!("{:<20} {:>10}", "service", "distance");
            for entry in &response.ranking {
                println!("{:<20} {:>10}", entry.id, entry.distance);
            }
            if explain {
                for entry in &response.ranking {
                    println!();
                    println!("{} contributions:", entry.id);
                    println!(
                        "  {:<20} {:>8} {:>8} {:>8} {:>12}",
                        "property", "request", "service", "weight", "contribution"
                    );
                    for c in &entry.contributions {
                        println!(
                            "  {:<20} {:>8.4} {:>8.4} {:>8.4} {:>12.4}",
                            c.property, c.request_norm, c.service_norm, c.weight, c.contribution
                        );
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn compare(
    store_path: &Path,
    request_file: &Path,
    weights_file: &Path,
    output: OutputFormat,
) -> Result<(), CliError> {
    let store = load_store(store_path)?;
    let request: MatchRequest = parse_json(&read_file(request_file)?, "match request")?;
    let schemes: Vec<WeightScheme> = parse_json(&read_file(weights_file)?, "weight schemes")?;
    if schemes.is_empty() {
        return Err(CliError::Validation("weights file lists no schemes".into()));
    }

    let candidates = candidates_of(&store, &request);
    if candidates.is_empty() {
        println!("no service matches the functional query; register services or relax the tags");
        return Ok(());
    }
    let rankings =
        compare_schemes(&request, &schemes, &candidates, store.schema()).map_err(validation)?;

    match output {
        OutputFormat::Document => {
            println!("{}", serde_json::to_string_pretty(&rankings).unwrap());
        }
        OutputFormat::Table => print_comparison(&rankings),
    }
    Ok(())
}

fn print_comparison(rankings: &[SchemeRanking]) {
    let width = 26;
    let header: Vec<String> = rankings.iter().map(|r| r.name.clone()).collect();
    println!(
        "{:<6} {}",
        "rank",
        header
            .iter()
            .map(|h| format!("{h:<width$}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let depth = rankings.iter().map(|r| r.ranked.len()).max().unwrap_or(0);
    for row in 0..depth {
        let cells: Vec<String> = rankings
            .iter()
            .map(|r| match r.ranked.get(row) {
                Some(entry) => format!("{} ({:.4})", entry.id, entry.distance),
                None => String::new(),
            })
            .map(|c| format!("{c:<width$}"))
            .collect();
        println!("{:<6} {}", row + 1, cells.join(" "));
    }
    let winners: Vec<String> = rankings
        .iter()
        .map(|r| {
            let mark = if r.winner_differs { " *" } else { "" };
            format!("{}{mark}", r.winner)
        })
        .map(|c| format!("{c:<width$}"))
        .collect();
    println!("{:<6} {}", "winner", winners.join(" "));
    if rankings.iter().any(|r| r.winner_differs) {
        println!("* winner differs from scheme {:?}", rankings[0].name);
    }
}

pub fn serve(store_path: &Path, addr: &str) -> Result<(), CliError> {
    let store = if store_path.exists() {
        load_store(store_path)?
    } else {
        let store = RegistryStore::new(default_schema());
        save_store(&store, store_path)?;
        store
    };

    let runtime = tokio::runtime::Runtime::new()
        .map_err(|e| CliError::Io(format!("cannot start runtime: {e}")))?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| CliError::Io(format!("cannot bind {addr}: {e}")))?;
        let local = listener
            .local_addr()
            .map_err(|e| CliError::Io(e.to_string()))?;
        println!("listening on http://{local}");
        let state = AppState::with_path(store, store_path.to_path_buf());
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
        };
        qos_broker_service::serve(listener, state, shutdown)
            .await
            .map_err(|e| CliError::Io(format!("server failed: {e}")))
    })
}

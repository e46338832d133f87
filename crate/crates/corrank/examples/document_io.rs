//! The JSON wire format: build a document by hand, ingest it (with
//! renormalization of hand-authored round-off) and emit the expanded form,
//! exactly as the `corrank` binary does.
//!
//! Run with: cargo run --example document_io

use corrank::document::{NamedState, StateDocument};
use corrank::mixed::{is_genuine, Method};
use corrank::Tolerances;

fn main() -> corrank::Result<()> {
    // a named document, the shortest way to address catalog states
    let named = serde_json::json!({
        "kind": "named",
        "name": "ghz_w_mixture",
        "parameters": { "n": 3, "p": 0.4 }
    });
    let doc: StateDocument = serde_json::from_value(named)?;
    let (state, _) = doc.ingest()?;
    let report = is_genuine(&state, &Tolerances::default(), Method::Both)?;
    println!("ghz_w_mixture(3, 0.4) genuine: {}", report.genuine);

    // a hand-authored pure document with 6-digit amplitudes gets
    // renormalized on ingestion and the adjustment reported
    #[allow(clippy::approx_constant)]
    let handmade = StateDocument::Pure {
        n: 2,
        amplitudes: vec![[0.707107, 0.0], [0.0, 0.0], [0.0, 0.0], [0.707107, 0.0]],
    };
    let (state, warning) = handmade.ingest()?;
    println!(
        "hand-authored Bell pair: renormalization adjustment {:?}",
        warning
    );

    // expanded documents round-trip byte for byte
    let expanded = StateDocument::from_state(&state);
    let text = serde_json::to_string_pretty(&expanded)?;
    let reparsed: StateDocument = serde_json::from_str(&text)?;
    println!(
        "byte-identical round trip: {}",
        serde_json::to_string_pretty(&reparsed)? == text
    );

    // catalog constructors live one call away
    let doc = StateDocument::Named {
        which: NamedState::Dicke { n: 4, ell: 2 },
    };
    let (dicke, _) = doc.ingest()?;
    println!("dicke(4,2) has {} amplitudes", 1 << dicke.n());
    Ok(())
}

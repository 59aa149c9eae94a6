//! Loads the JSON instances under `examples/data` and solves them in both
//! arithmetic modes.

use branching_ot::lexot::{Instance, Mode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    for name in ["square_linf.json", "line_euclidean.json"] {
        let instance: Instance = serde_json::from_str(&std::fs::read_to_string(dir.join(name))?)?;
        for mode in [Mode::Float, Mode::Rational] {
            match instance.solve(mode) {
                Ok(s) => {
                    let r = s.to_repr();
                    println!("{name} {mode:?}: primary {:?} secondary {:?}", r.primary_value, r.secondary_value);
                }
                Err(e) => println!("{name} {mode:?}: {e}"),
            }
        }
    }
    Ok(())
}

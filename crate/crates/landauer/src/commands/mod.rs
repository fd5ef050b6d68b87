pub mod capacity;
pub mod erase;
pub mod limits;
pub mod mc;
pub mod sweep;

use landauer_core::meanfield::{EntropyValue, ModelSpec, SpinModel};

pub(crate) fn parse_model(text: &str) -> Result<ModelSpec, String> {
    text.parse::<ModelSpec>().map_err(|e| e.to_string())
}

/// Closed forms of the entropy limits at `t_c` and `t -> 0` and of their
/// difference, printed next to the values. `None` where the value is
/// divergent.
pub(crate) fn limit_labels(model: &ModelSpec) -> [Option<String>; 3] {
    match model.kind {
        SpinModel::DiscreteZq { q } => [Some(format!("ln {q}")), Some("0".into()), Some(format!("ln {q}"))],
        SpinModel::ClassicalOn { n } => [Some(sphere_label(n)), None, None],
        SpinModel::QuantumSpin { s } => {
            let count = format!("ln {}", s.twice() + 1);
            [Some(count.clone()), Some("0".into()), Some(count)]
        }
        SpinModel::RegularizedSpin { s_max } => {
            let zero = if s_max.twice() == 1 {
                "ln 2π".to_string()
            } else {
                format!("ln(4π/{})", s_max.twice() + 1)
            };
            [Some("ln 4π".into()), Some(zero), Some(format!("ln {}", s_max.twice() + 1))]
        }
    }
}

/// `value (label)`, or just the value when there is no closed form to show.
pub(crate) fn labelled(value: String, label: &Option<String>) -> String {
    match label {
        Some(l) => format!("{value} ({l})"),
        None => value,
    }
}

fn sphere_label(n: u32) -> String {
    match n {
        2 => "ln 2π".into(),
        3 => "ln 4π".into(),
        _ => format!("ln S_{}", n - 1),
    }
}

pub(crate) fn entropy_text(value: EntropyValue) -> String {
    match value {
        EntropyValue::Finite(v) => crate::output::fixed(v),
        EntropyValue::Divergent => "divergent".into(),
    }
}

pub(crate) fn entropy_cell(value: EntropyValue) -> String {
    match value {
        EntropyValue::Finite(v) => crate::output::num(v),
        EntropyValue::Divergent => "divergent".into(),
    }
}

pub(crate) fn entropy_json(value: EntropyValue) -> serde_json::Value {
    match value {
        EntropyValue::Finite(v) => serde_json::json!(v),
        EntropyValue::Divergent => serde_json::json!("divergent"),
    }
}

use crate::linalg::PureState;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub label: String,
    pub state: PureState,
}

/// Labeled states in execution order. Labels are unique.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Trajectory {
    snapshots: Vec<Snapshot>,
}

impl Trajectory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, label: impl Into<String>, state: PureState) -> Result<()> {
        let label = label.into();
        if self.get(&label).is_some() {
            return Err(Error::InvalidParameter(format!("duplicate snapshot label {label}")));
        }
        if let Some(first) = self.snapshots.first() {
            if first.state.num_qubits() != state.num_qubits() {
                return Err(Error::WidthMismatch {
                    expected: first.state.num_qubits(),
                    found: state.num_qubits(),
                });
            }
        }
        self.snapshots.push(Snapshot { label, state });
        Ok(())
    }

    pub fn get(&self, label: &str) -> Option<&PureState> {
        self.snapshots
            .iter()
            .find(|s| s.label == label)
            .map(|s| &s.state)
    }

    pub fn snapshots(&self) -> &[Snapshot] {
        &self.snapshots
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.snapshots.iter().map(|s| s.label.as_str())
    }

    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    pub fn last(&self) -> Option<&Snapshot> {
        self.snapshots.last()
    }
}

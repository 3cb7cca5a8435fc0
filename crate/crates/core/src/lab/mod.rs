//! Falsification harness: validity schemas swept over every small model,
//! and the checks behind the named formulas.

mod named;
mod schema;
mod sweep;

use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::checker::Semantics;
use crate::formula::ParseError;
use crate::kripke::ModelError;

pub use named::{definability_cross_check, verify_phi_infinity_unsat, verify_reflexivity_forcing};
pub use schema::{Expectation, Instance, Language, Schema};
pub use sweep::{Bounds, Counterexample, Sampling, SweepOptions};

use schema::SchemaProbe;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("bounds: {0}")]
    Bounds(String),
    #[error("worker pool: {0}")]
    Threads(String),
}

/// A named side condition checked alongside a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub id: String,
    pub description: String,
    pub semantics: Semantics,
    pub instances: Vec<String>,
    pub bounds: Bounds,
    pub expect: Expectation,
    pub models_checked: u64,
    pub points_checked: u64,
    /// Points (or point and instance pairs) where the probed formula held.
    pub satisfied: u64,
    pub failures: u64,
    /// The first failures in sweep order; empty exactly when `failures` is 0.
    pub counterexamples: Vec<Counterexample>,
    pub checks: Vec<NamedCheck>,
}

impl SweepReport {
    pub fn held(&self) -> bool {
        self.failures == 0
    }

    /// Whether the outcome matches the expectation and every side check.
    pub fn passed(&self) -> bool {
        let outcome = match self.expect {
            Expectation::Valid => self.held(),
            Expectation::Refuted => !self.held(),
        };
        outcome && self.checks.iter().all(|c| c.passed)
    }

    pub fn render_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut head = format!("{verdict} {}", self.id);
        if !self.description.is_empty() {
            let _ = write!(head, ": {}", self.description);
        }
        writeln!(f, "{head}")?;
        let space = match self.bounds.sample {
            Some(s) => format!(
                "{} sampled models of {} worlds, seed {}",
                s.budget, self.bounds.max_worlds, s.seed
            ),
            None => format!("all models up to {} worlds", self.bounds.max_worlds),
        };
        let atoms = &self.bounds.atoms;
        writeln!(
            f,
            "  space: {space}, atoms {{{}}}, {} semantics",
            atoms.join(","),
            self.semantics
        )?;
        writeln!(
            f,
            "  instances {}, models {}, points {}, satisfied {}, failures {} (expected {})",
            self.instances.len(),
            self.models_checked,
            self.points_checked,
            self.satisfied,
            self.failures,
            match self.expect {
                Expectation::Valid => "none",
                Expectation::Refuted => "some",
            }
        )?;
        for c in &self.checks {
            writeln!(f, "  check {}: {}", c.name, if c.passed { "ok" } else { "failed" })?;
        }
        for c in &self.counterexamples {
            let edges: Vec<String> = c.model.edges.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            let val: Vec<String> = c
                .model
                .val
                .iter()
                .map(|(a, ws)| format!("{a}={{{}}}", ws.join(",")))
                .collect();
            write!(f, "  at {} in [{}] {}", c.world, edges.join(" "), val.join(" "))?;
            for (x, w) in &c.assignment {
                write!(f, " {x}={w}")?;
            }
            writeln!(f, ": {}", c.instance)?;
        }
        Ok(())
    }
}

/// Evaluate every instance of `schema` at every pointed model of `bounds`.
pub fn sweep_validity(schema: &Schema, bounds: &Bounds, opts: &SweepOptions) -> Result<SweepReport, LabError> {
    let instances = schema.instances()?;
    let texts: Vec<String> = instances.iter().map(|(t, _)| t.clone()).collect();
    let probe = SchemaProbe {
        texts: texts.clone(),
        instances: instances.into_iter().map(|(_, f)| f).collect(),
        semantics: schema.semantics,
    };
    let tally = sweep::run(&probe, bounds, opts)?;
    Ok(SweepReport {
        id: schema.id.clone(),
        description: schema.description.clone(),
        semantics: schema.semantics,
        counterexamples: tally.counterexamples(&probe),
        instances: texts,
        bounds: bounds.clone(),
        expect: schema.expect,
        models_checked: tally.models,
        points_checked: tally.points,
        satisfied: tally.satisfied,
        failures: tally.failures,
        checks: Vec::new(),
    })
}

/// Sweep `schema` with its own bounds.
pub fn sweep_schema(schema: &Schema, opts: &SweepOptions) -> Result<SweepReport, LabError> {
    let instances = schema.instances()?;
    let bounds = Bounds::exhaustive(schema.max_worlds, &schema.sweep_atoms(&instances));
    sweep_validity(schema, &bounds, opts)
}

/// Smallest failing point of `schema` under the local semantics, searching
/// model sizes upwards to the schema's bound.
pub fn find_local_counterexample(schema: &Schema, opts: &SweepOptions) -> Result<Option<Counterexample>, LabError> {
    let local = Schema {
        semantics: Semantics::Local,
        ..schema.clone()
    };
    let opts = SweepOptions {
        keep: 1,
        stop_at_first_size: true,
        ..*opts
    };
    let report = sweep_schema(&local, &opts)?;
    Ok(report.counterexamples.into_iter().next())
}

macro_rules! builtin {
    ($($file:literal),* $(,)?) => {
        &[$(include_str!(concat!("../../fixtures/schemas/", $file))),*]
    };
}

const BUILTIN: &[&str] = builtin!(
    "del-distribution.json",
    "del-self-dual.json",
    "del-boolean.json",
    "del-diamond.json",
    "del-commute.json",
    "del-commute-modal.json",
    "hybrid-del-del.json",
    "hybrid-del-box.json",
    "hybrid-del-at-atom.json",
    "hybrid-del-at-not.json",
    "hybrid-del-at-and.json",
    "hybrid-del-at-box.json",
    "box-recursion-local.json",
    "box-recursion-global.json",
);

/// The bundled schemas, in a fixed order.
pub fn builtin_schemas() -> Vec<Schema> {
    BUILTIN
        .iter()
        .map(|text| Schema::from_json(text).expect("bundled schema"))
        .collect()
}

pub fn builtin_schema(id: &str) -> Option<Schema> {
    builtin_schemas().into_iter().find(|s| s.id == id)
}

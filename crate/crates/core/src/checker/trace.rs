use std::fmt::Write as _;

use serde::Serialize;

use super::{deletion_step, eval_direct, CheckError, Semantics};
use crate::formula::LdFormula;
use crate::kripke::ModelState;
use crate::worldset::World;

/// One deletion performed while evaluating a formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    /// World at which the deletion operator was evaluated.
    pub world: String,
    pub guard: String,
    /// Guard extension among the worlds the deletion can affect.
    pub extension: Vec<String>,
    /// Edges removed by this step.
    pub removed: Vec<(String, String)>,
    /// Truth of the whole `[-guard]body` subformula at `world`.
    pub value: bool,
    pub children: Vec<TraceNode>,
}

/// Evaluate `f` at `w`, recording every deletion step on the way.
///
/// Returns the truth value and the top-level deletion steps; each step
/// lists the deletions performed while evaluating its body.
pub fn trace(
    state: &ModelState,
    w: World,
    f: &LdFormula,
    semantics: Semantics,
) -> Result<(bool, Vec<TraceNode>), CheckError> {
    let mut out = Vec::new();
    let value = walk(state, w, f, semantics, &mut out)?;
    Ok((value, out))
}

fn walk(
    state: &ModelState,
    w: World,
    f: &LdFormula,
    semantics: Semantics,
    out: &mut Vec<TraceNode>,
) -> Result<bool, CheckError> {
    Ok(match f {
        LdFormula::Atom(_) | LdFormula::Top => eval_direct(state, w, f, semantics, false)?,
        LdFormula::Not(a) => !walk(state, w, a, semantics, out)?,
        LdFormula::And(a, b) => walk(state, w, a, semantics, out)? && walk(state, w, b, semantics, out)?,
        LdFormula::Box(a) => {
            let mut all = true;
            for v in state.successors(w) {
                if !walk(state, v, a, semantics, out)? {
                    all = false;
                    break;
                }
            }
            all
        }
        LdFormula::Del(g, b) => {
            let (next, ext) = deletion_step(state, w, g, semantics, false)?;
            let m = state.base();
            let before = state.removed();
            let removed = next
                .removed()
                .into_iter()
                .filter(|e| !before.contains(e))
                .map(|(a, b)| (m.name(a).to_string(), m.name(b).to_string()))
                .collect();
            let mut children = Vec::new();
            let value = walk(&next, w, b, semantics, &mut children)?;
            out.push(TraceNode {
                world: m.name(w).to_string(),
                guard: g.to_string(),
                extension: ext.iter().map(|v| m.name(v).to_string()).collect(),
                removed,
                value,
                children,
            });
            value
        }
    })
}

impl TraceNode {
    /// Indented text rendering, one line per deletion.
    pub fn render(nodes: &[TraceNode]) -> String {
        let mut out = String::new();
        for n in nodes {
            n.render_into(0, &mut out);
        }
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let removed: Vec<String> = self.removed.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        let _ = writeln!(
            out,
            "{}[-{}] at {}: extension {{{}}}, removed [{}], {}",
            "  ".repeat(depth),
            self.guard,
            self.world,
            self.extension.join(", "),
            removed.join(", "),
            self.value
        );
        for c in &self.children {
            c.render_into(depth + 1, out);
        }
    }
}

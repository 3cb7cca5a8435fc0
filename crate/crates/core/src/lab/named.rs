use std::sync::Arc;

use super::sweep::{self, Bounds, Hit, Probe, SweepOptions};
use super::{Expectation, LabError, NamedCheck, SweepReport};
use crate::checker::{Checker, Semantics};
use crate::fixtures;
use crate::formula::{FolFormula, LdFormula};
use crate::kripke::KripkeModel;
use crate::translate::FolEvaluator;
use crate::worldset::WorldSet;

/// Reuse a checker across the models of one worker.
fn checker_for<'a>(slot: &'a mut Option<Checker>, m: &Arc<KripkeModel>) -> &'a mut Checker {
    match slot {
        Some(c) => {
            c.set_model(m.clone());
            c
        }
        None => slot.insert(Checker::new(m.clone(), Semantics::Local)),
    }
}

/// Points where `formula` holds but `ok` does not.
struct Forcing {
    text: String,
    formula: LdFormula,
    ok: fn(&KripkeModel, crate::worldset::World) -> bool,
}

impl Probe for Forcing {
    type Worker = Option<Checker>;

    fn worker(&self) -> Option<Checker> {
        None
    }

    fn probe(&self, worker: &mut Option<Checker>, m: &Arc<KripkeModel>, out: &mut Vec<Hit>) -> u64 {
        let ext = checker_for(worker, m)
            .extension_at_base(&self.formula)
            .expect("non-strict checking");
        out.extend(ext.iter().filter(|&w| !(self.ok)(m, w)).map(|world| Hit {
            world,
            instance: 0,
            assignment: Vec::new(),
        }));
        ext.len() as u64
    }

    fn instance_text(&self, _: usize) -> String {
        self.text.clone()
    }
}

fn report(
    id: &str,
    description: &str,
    instance: String,
    bounds: Bounds,
    tally: sweep::Tally,
    counterexamples: Vec<super::Counterexample>,
    checks: Vec<NamedCheck>,
) -> SweepReport {
    SweepReport {
        id: id.to_string(),
        description: description.to_string(),
        semantics: Semantics::Local,
        instances: vec![instance],
        bounds,
        expect: Expectation::Valid,
        models_checked: tally.models,
        points_checked: tally.points,
        satisfied: tally.satisfied,
        failures: tally.failures,
        counterexamples,
        checks,
    }
}

/// Wherever the reflexivity formula holds, the point sees itself and is
/// its own only `p`-successor. Also checks that the formula is satisfiable
/// on the reflexive bisimulation fixture.
pub fn verify_reflexivity_forcing(max_worlds: usize, opts: &SweepOptions) -> Result<SweepReport, LabError> {
    let formula = fixtures::phi_r().conjunction();
    let probe = Forcing {
        text: formula.to_string(),
        formula,
        ok: |m, w| m.succ(w).contains(w) && m.succ(w).intersection(m.valuation("p")) == WorldSet::singleton(w),
    };
    let bounds = Bounds::exhaustive(max_worlds, &["p"]);
    let tally = sweep::run(&probe, &bounds, opts)?;
    let m2 = fixtures::bisim_m2();
    let v1 = m2.world("v1")?;
    let mut c = Checker::new(m2.clone(), Semantics::Local);
    let holds = c.holds(v1, &probe.formula).expect("non-strict checking");
    let checks = vec![
        NamedCheck {
            name: "holds at v1 of the reflexive bisimulation fixture".into(),
            passed: holds,
        },
        NamedCheck {
            name: "v1 is reflexive".into(),
            passed: m2.succ(v1).contains(v1),
        },
    ];
    let ces = tally.counterexamples(&probe);
    Ok(report(
        "reflexivity-forcing",
        "the reflexivity formula forces a loop at the evaluation point",
        probe.text.clone(),
        bounds,
        tally,
        ces,
        checks,
    ))
}

/// No point of a model in `bounds` satisfies the infinity formula; also
/// checks that it fails on the truncated spy-point fixture.
pub fn verify_phi_infinity_unsat(bounds: &Bounds, opts: &SweepOptions) -> Result<SweepReport, LabError> {
    let formula = fixtures::phi_infinity().conjunction();
    let probe = Forcing {
        text: formula.to_string(),
        formula,
        ok: |_, _| false,
    };
    let tally = sweep::run(&probe, bounds, opts)?;
    let spy = fixtures::spy_truncated();
    let w = spy.world("w")?;
    let mut c = Checker::new(spy.clone(), Semantics::Local);
    let fails = !c.holds(w, &probe.formula).expect("non-strict checking");
    let checks = vec![NamedCheck {
        name: "false at w of the truncated spy-point fixture".into(),
        passed: fails,
    }];
    let ces = tally.counterexamples(&probe);
    Ok(report(
        "phi-infinity",
        "the infinity formula has no finite model",
        probe.text.clone(),
        bounds.clone(),
        tally,
        ces,
        checks,
    ))
}

struct Agreement {
    text: String,
    modal: LdFormula,
    fol: FolFormula,
}

impl Probe for Agreement {
    type Worker = (Option<Checker>, FolEvaluator);

    fn worker(&self) -> Self::Worker {
        (None, FolEvaluator::new(&self.fol))
    }

    fn probe(&self, worker: &mut Self::Worker, m: &Arc<KripkeModel>, out: &mut Vec<Hit>) -> u64 {
        let modal = checker_for(&mut worker.0, m)
            .extension_at_base(&self.modal)
            .expect("non-strict checking");
        let fol = worker.1.extension(m, "x").expect("single free variable x");
        let differ = modal.union(fol).difference(modal.intersection(fol));
        out.extend(differ.iter().map(|world| Hit {
            world,
            instance: 0,
            assignment: Vec::new(),
        }));
        modal.len() as u64
    }

    fn instance_text(&self, _: usize) -> String {
        self.text.clone()
    }
}

/// The modal and first-order definitions of the dead-end property agree at
/// every point of every model in the space.
pub fn definability_cross_check(max_worlds: usize, opts: &SweepOptions) -> Result<SweepReport, LabError> {
    let modal = fixtures::phi1_plus().conjunction();
    let fol = fixtures::alpha1_plus().conjunction();
    let probe = Agreement {
        text: format!("{modal} <=> {fol}"),
        modal,
        fol,
    };
    let bounds = Bounds::exhaustive(max_worlds, &["p"]);
    let tally = sweep::run(&probe, &bounds, opts)?;
    let ces = tally.counterexamples(&probe);
    Ok(report(
        "definability",
        "modal and first-order definitions agree",
        probe.text.clone(),
        bounds,
        tally,
        ces,
        Vec::new(),
    ))
}

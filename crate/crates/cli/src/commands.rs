use std::fmt::Write as _;
use std::io;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use sdml::checker::trace;
use sdml::equivalence::{bounded_ld_equiv, set_d_bisim, standard_bisim, FormulaBounds, SetGameBounds};
use sdml::formula::Symbol;
use sdml::game::{self, GameConfig, GameSpec, DEFAULT_ARENA_CAP};
use sdml::gen::{random_formula, random_model, FormulaShape};
use sdml::kripke::{load_model, save_model, ModelFile, ModelSpace};
use sdml::lab::{self, Bounds, Schema, SweepOptions, SweepReport};
use sdml::translate::{
    hybrid_translate, simplify_fol, simplify_hybrid, standard_translate, Assignment, FolEvaluator, HybridEvaluator,
    DESIGNATED,
};
use sdml::{parse_ld, Checker, KripkeModel, LdFormula, PointedModel, Semantics, WorldSet};

use crate::output::{emit, usage, CliError, Format};
use crate::{
    CheckArgs, Command, EquivArgs, GameArgs, GameCommand, GenCommand, LabCommand, Method, Target, TranslateArgs,
    VerifyArgs,
};

type Status = Result<u8, CliError>;

pub fn run(command: Command, format: Format) -> Status {
    match command {
        Command::Check(a) => check(a, format),
        Command::Translate(a) => translate(a, format),
        Command::VerifyTranslation(a) => verify(a, format),
        Command::Equiv(a) => equiv(a, format),
        Command::Game(g) => game_cmd(g, format),
        Command::Lab(l) => lab_cmd(l, format),
        Command::Gen(g) => gen_cmd(g, format),
    }
}

fn model(path: &str) -> Result<Arc<KripkeModel>, CliError> {
    load_model(path).map(Arc::new).map_err(usage)
}

fn formula(text: &str) -> Result<LdFormula, CliError> {
    parse_ld(text).map_err(|e| CliError::Usage(format!("formula: {e}")))
}

fn check(a: CheckArgs, format: Format) -> Status {
    let m = model(&a.model)?;
    let w = m.world(&a.world).map_err(usage)?;
    let f = formula(&a.formula)?;
    let value = Checker::new(m.clone(), a.semantics)
        .strict(a.strict)
        .holds(w, &f)
        .map_err(usage)?;
    let steps = if a.trace {
        Some(trace(&m.initial_state(), w, &f, a.semantics).map_err(usage)?.1)
    } else {
        None
    };
    let mut text = format!("{value}\n");
    if let Some(s) = &steps {
        text.push_str(&sdml::checker::TraceNode::render(s));
    }
    let out = json!({
        "formula": f.to_string(),
        "world": a.world,
        "semantics": a.semantics,
        "value": value,
        "trace": steps,
    });
    emit(format, &out, &text)?;
    Ok(0)
}

fn translate(a: TranslateArgs, format: Format) -> Status {
    let f = formula(&a.formula)?;
    let target = match a.to {
        Target::Fol => {
            let t = standard_translate(&f);
            if a.simplify { simplify_fol(&t) } else { t }.to_string()
        }
        Target::Hybrid => {
            let t = hybrid_translate(&f);
            if a.simplify { simplify_hybrid(&t) } else { t }.to_string()
        }
    };
    let out = json!({
        "formula": f.to_string(),
        "target": target_name(a.to),
        "translation": target,
    });
    emit(format, &out, &target)?;
    Ok(0)
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Fol => "fol",
        Target::Hybrid => "hybrid",
    }
}

#[derive(Serialize)]
struct Disagreement {
    model: ModelFile,
    formula: String,
    world: String,
    direct: bool,
    translated: bool,
}

fn verify(a: VerifyArgs, format: Format) -> Status {
    if a.max_worlds == 0 || a.max_size == 0 {
        return Err(CliError::Usage("--max-worlds and --max-size must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut agree = 0;
    let mut failures: Vec<Disagreement> = Vec::new();
    for _ in 0..a.random {
        let m = Arc::new(random_model(&mut rng, a.max_worlds, &a.atoms).map_err(usage)?);
        let size = rng.gen_range(1..=a.max_size);
        let f = random_formula(&mut rng, &FormulaShape::new(&a.atoms, size, a.max_del));
        let direct = Checker::new(m.clone(), Semantics::Local)
            .extension_at_base(&f)
            .map_err(usage)?;
        let translated: WorldSet = match a.to {
            Target::Fol => FolEvaluator::new(&standard_translate(&f))
                .extension(&m, DESIGNATED)
                .map_err(usage)?,
            Target::Hybrid => {
                let h = hybrid_translate(&f);
                HybridEvaluator::new(m.clone())
                    .extension(&m.initial_state(), &Assignment::new(), &h)
                    .map_err(usage)?
            }
        };
        if direct == translated {
            agree += 1;
        } else if let Some(w) = direct
            .union(translated)
            .difference(direct.intersection(translated))
            .iter()
            .next()
        {
            failures.push(Disagreement {
                model: ModelFile::from_model(&m),
                formula: f.to_string(),
                world: m.name(w).to_string(),
                direct: direct.contains(w),
                translated: translated.contains(w),
            });
        }
    }
    let mut text = format!("seed {}\nagreement {agree}/{}\n", a.seed, a.random);
    for d in &failures {
        let _ = writeln!(
            text,
            "disagreement at {}: {} (direct {}, translated {})\n  model {}",
            d.world,
            d.formula,
            d.direct,
            d.translated,
            serde_json::to_string(&d.model).unwrap_or_default()
        );
    }
    let out = json!({
        "target": target_name(a.to),
        "seed": a.seed,
        "instances": a.random,
        "agreement": agree,
        "disagreements": failures,
    });
    emit(format, &out, &text)?;
    Ok(if failures.is_empty() { 0 } else { 1 })
}

fn equiv(a: EquivArgs, format: Format) -> Status {
    let left = PointedModel::named(model(&a.model1)?, &a.w1).map_err(usage)?;
    let right = PointedModel::named(model(&a.model2)?, &a.w2).map_err(usage)?;
    let (out, text) = match a.method {
        Method::Standard => {
            let r = standard_bisim(&left, &right);
            let verdict = if r.bisimilar { "bisimilar" } else { "not-bisimilar" };
            (
                json!({"method": "standard", "outcome": verdict, "relation": r.relation}),
                verdict.to_string(),
            )
        }
        Method::Formulas | Method::Setgame => {
            let v = match a.method {
                Method::Formulas => {
                    let atoms: Vec<String> = match &a.atoms {
                        Some(list) => list.clone(),
                        None => {
                            let mut all: Vec<String> = left
                                .model
                                .atoms()
                                .iter()
                                .chain(right.model.atoms())
                                .map(|s| s.to_string())
                                .collect();
                            all.sort();
                            all.dedup();
                            all
                        }
                    };
                    let bounds = FormulaBounds {
                        max_size: a.max_size,
                        max_del_depth: a.max_del,
                        ..FormulaBounds::default()
                    };
                    bounded_ld_equiv(&left, &right, &atoms, &bounds).map_err(usage)?
                }
                _ => set_d_bisim(&left, &right, &SetGameBounds::default()).map_err(usage)?,
            };
            let mut text = v.outcome.to_string();
            if let Some(w) = &v.witness {
                let _ = write!(text, "\nwitness {w}");
            }
            if let Some(d) = &v.detail {
                let _ = write!(text, "\n{d}");
            }
            let method = if matches!(a.method, Method::Formulas) {
                "formulas"
            } else {
                "setgame"
            };
            (
                json!({
                    "method": method,
                    "outcome": v.outcome,
                    "witness": v.witness.as_ref().map(|w| w.to_string()),
                    "detail": v.detail,
                    "explored": v.explored,
                }),
                text,
            )
        }
    };
    emit(format, &out, &text)?;
    Ok(0)
}

fn spec(g: &GameArgs) -> Result<GameSpec, CliError> {
    let m = model(&g.model)?;
    let atoms: Vec<String> = match &g.atoms {
        Some(a) => a.clone(),
        None => m.atoms().iter().map(|a| a.to_string()).collect(),
    };
    GameSpec::named(m, &g.start, &g.goals, g.variant, &atoms, g.rounds).map_err(usage)
}

fn describe_config(spec: &GameSpec, c: &GameConfig) -> (String, Vec<String>) {
    let removed: Vec<String> = spec
        .state(c)
        .removed()
        .iter()
        .map(|&(a, b)| format!("{}->{}", spec.model.name(a), spec.model.name(b)))
        .collect();
    (spec.model.name(c.position).to_string(), removed)
}

fn game_cmd(g: GameCommand, format: Format) -> Status {
    match g {
        GameCommand::Solve(args) => {
            let spec = spec(&args)?;
            let sol = game::solve(&spec, DEFAULT_ARENA_CAP).map_err(usage)?;
            let mut text = format!("winner {}\n", sol.winner);
            let mut steps = Vec::new();
            for (c, m) in &sol.strategy {
                let (at, removed) = describe_config(&spec, c);
                let mv = spec.describe(m);
                let cut = if removed.is_empty() {
                    "none".to_string()
                } else {
                    removed.join(" ")
                };
                let _ = writeln!(text, "  at {at} (cut so far: {cut}): {mv}");
                steps.push(json!({
                    "position": at,
                    "removed": removed,
                    "turn": c.turn,
                    "rounds_left": c.rounds_left,
                    "move": mv,
                }));
            }
            let out = json!({
                "winner": sol.winner,
                "variant": spec.variant,
                "arena_size": sol.arena_size,
                "strategy": steps,
            });
            emit(format, &out, &text)?;
            Ok(0)
        }
        GameCommand::Play { game: args, human } => {
            let spec = spec(&args)?;
            let stdin = io::stdin();
            let mut input = stdin.lock();
            let mut out = io::stdout().lock();
            match game::play_interactive(&spec, human, &mut input, &mut out) {
                Ok(_) => Ok(0),
                Err(game::PlayError::Aborted) => {
                    eprintln!("sdml: input ended, play aborted");
                    Ok(0)
                }
                Err(e) => Err(usage(e)),
            }
        }
        GameCommand::Formula {
            rounds,
            goal_atom,
            atoms,
        } => {
            let alphabet: Vec<Symbol> = atoms.iter().map(|a| Symbol::from(a.as_str())).collect();
            let f = game::win_formula_a(&alphabet, rounds, &goal_atom);
            let out = json!({"rounds": rounds, "goal_atom": goal_atom, "atoms": atoms, "formula": f.to_string()});
            emit(format, &out, &f.to_string())?;
            Ok(0)
        }
    }
}

fn options(jobs: usize) -> SweepOptions {
    SweepOptions {
        jobs,
        ..SweepOptions::default()
    }
}

fn emit_reports(format: Format, reports: &[SweepReport]) -> Status {
    let text: String = reports.iter().map(|r| r.to_string()).collect();
    emit(format, &reports, &text)?;
    Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
}

fn lab_cmd(l: LabCommand, format: Format) -> Status {
    match l {
        LabCommand::Validities {
            max_worlds,
            atoms,
            schema,
            jobs,
        } => {
            let schemas = if schema.is_empty() {
                lab::builtin_schemas()
            } else {
                schema
                    .iter()
                    .map(Schema::load)
                    .collect::<Result<_, _>>()
                    .map_err(usage)?
            };
            let mut reports = Vec::new();
            for s in &schemas {
                let instances = s.instances().map_err(usage)?;
                let atoms = atoms.clone().unwrap_or_else(|| s.sweep_atoms(&instances));
                let bounds = Bounds::exhaustive(max_worlds.unwrap_or(s.max_worlds), &atoms);
                reports.push(lab::sweep_validity(s, &bounds, &options(jobs.jobs)).map_err(usage)?);
            }
            emit_reports(format, &reports)
        }
        LabCommand::Reflexive { max_worlds, jobs } => {
            let r = lab::verify_reflexivity_forcing(max_worlds, &options(jobs.jobs)).map_err(usage)?;
            emit_reports(format, &[r])
        }
        LabCommand::PhiInfinity {
            max_worlds,
            budget,
            seed,
            jobs,
        } => {
            let atoms = ["s", "p"];
            let bounds = match budget {
                Some(b) => Bounds::sampled(max_worlds, &atoms, b, seed),
                None => Bounds::exhaustive(max_worlds, &atoms),
            };
            let r = lab::verify_phi_infinity_unsat(&bounds, &options(jobs.jobs)).map_err(usage)?;
            if format == Format::Text && budget.is_some() {
                println!("seed {seed}");
            }
            emit_reports(format, &[r])
        }
        LabCommand::Definability { max_worlds, jobs } => {
            let r = lab::definability_cross_check(max_worlds, &options(jobs.jobs)).map_err(usage)?;
            emit_reports(format, &[r])
        }
        LabCommand::Search {
            schema,
            max_worlds,
            jobs,
        } => {
            let mut s = Schema::load(&schema).map_err(usage)?;
            if let Some(n) = max_worlds {
                s.max_worlds = n;
            }
            let found = lab::find_local_counterexample(&s, &options(jobs.jobs)).map_err(usage)?;
            let text = match &found {
                Some(c) => {
                    let mut t = format!("counterexample at {} for {}\n", c.world, c.instance);
                    t.push_str(&serde_json::to_string(&c.model).unwrap_or_default());
                    t
                }
                None => format!("no local counterexample up to {} worlds", s.max_worlds),
            };
            let out = json!({"schema": s.id, "max_worlds": s.max_worlds, "counterexample": found});
            emit(format, &out, &text)?;
            Ok(0)
        }
    }
}

fn gen_cmd(g: GenCommand, format: Format) -> Status {
    match g {
        GenCommand::Model {
            worlds,
            atoms,
            seed,
            out,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = ModelSpace::new(worlds, &atoms).map_err(usage)?.sample(&mut rng);
            if let Some(path) = out {
                save_model(&m, &path).map_err(usage)?;
                let value = json!({"seed": seed, "path": path});
                emit(format, &value, &format!("seed {seed}\nwrote {path}"))?;
            } else {
                let value = json!({"seed": seed, "model": ModelFile::from_model(&m)});
                emit(format, &value, &format!("seed {seed}\n{}", m.to_json_pretty()))?;
            }
            Ok(0)
        }
        GenCommand::Formula {
            size,
            count,
            atoms,
            max_del,
            seed,
        } => {
            if size == 0 {
                return Err(CliError::Usage("--size must be positive".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let shape = FormulaShape::new(&atoms, size, max_del);
            let formulas: Vec<String> = (0..count)
                .map(|_| random_formula(&mut rng, &shape).to_string())
                .collect();
            let value = json!({"seed": seed, "formulas": formulas});
            emit(format, &value, &format!("seed {seed}\n{}", formulas.join("\n")))?;
            Ok(0)
        }
    }
}

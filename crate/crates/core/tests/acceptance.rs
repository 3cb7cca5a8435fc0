//! End-to-end acceptance run: one line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdml::equivalence::{
    bounded_ld_equiv, set_d_bisim, standard_bisim, EquivVerdict, FormulaBounds, Outcome, SetGameBounds,
};
use sdml::game::{self, GameSpec, Player, Variant, DEFAULT_ARENA_CAP};
use sdml::gen::{random_formula, random_model, FormulaShape};
use sdml::kripke::{EdgeIndex, ModelSpace};
use sdml::lab::{self, Bounds, SweepOptions};
use sdml::translate::{
    eval_fol, eval_hybrid, hybrid_translate, reduce_global, standard_translate, Assignment, FolEvaluator, DESIGNATED,
};
use sdml::{fixtures, parse_ld, Checker, PointedModel, Semantics};

type Finding = Result<String, String>;
type Criterion = (&'static str, fn() -> Finding);

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn intro_reproduction() -> Finding {
    let m = fixtures::intro_graph();
    let mut c = Checker::new(m.clone(), Semantics::Local);
    let v = m.world("v").unwrap();
    let i = m.world("i").unwrap();
    ensure(c.holds(v, &parse_ld("[-p]<>q").unwrap()).unwrap(), "[-p]<>q at v")?;
    ensure(
        c.holds(i, &parse_ld("[-p][][-q][]false").unwrap()).unwrap(),
        "[-p][][-q][]false at i",
    )?;
    let single = GameSpec::named(m.clone(), "i", &["t", "g"], Variant::SingleEdge, &["p", "q"], None).unwrap();
    ensure(
        game::solve(&single, DEFAULT_ARENA_CAP).unwrap().winner == Player::E,
        "single-edge winner",
    )?;
    let definable = GameSpec::named(m.clone(), "i", &["t", "g"], Variant::Definable, &["p", "q"], None).unwrap();
    let sol = game::solve(&definable, DEFAULT_ARENA_CAP).unwrap();
    let lines: Vec<String> = sol
        .strategy
        .iter()
        .map(|(c, mv)| format!("{} at {}", definable.describe(mv), m.name(c.position)))
        .collect();
    ensure(
        sol.winner == Player::A && lines == ["A cut p at i", "A cut q at s"],
        format!("definable: {lines:?}"),
    )?;
    Ok("formulas and both games reproduced".into())
}

fn deletion_order() -> Finding {
    let m = fixtures::swap_model();
    let mut c = Checker::new(m.clone(), Semantics::Local);
    let w = m.world("w").unwrap();
    ensure(
        c.holds(w, &parse_ld("[-p][-<><>p]<>q").unwrap()).unwrap(),
        "[-p][-<><>p]<>q should hold",
    )?;
    ensure(
        !c.holds(w, &parse_ld("[-<><>p][-p]<>q").unwrap()).unwrap(),
        "[-<><>p][-p]<>q should fail",
    )?;
    Ok("order of modal deletions matters at w".into())
}

fn translation_agreement() -> Finding {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let n = 600;
    let (mut fol_ok, mut hyb_ok) = (0, 0);
    for k in 0..n {
        let m = Arc::new(random_model(&mut rng, 5, &["p", "q"]).unwrap());
        let size = rng.gen_range(1..=14);
        let f = random_formula(&mut rng, &FormulaShape::new(&["p", "q"], size, 3));
        let direct = Checker::new(m.clone(), Semantics::Local).extension_at_base(&f).unwrap();
        let st = FolEvaluator::new(&standard_translate(&f))
            .extension(&m, DESIGNATED)
            .unwrap();
        let h = hybrid_translate(&f);
        let state = m.initial_state();
        let hybrid: sdml::WorldSet = m
            .worlds()
            .filter(|&w| eval_hybrid(&state, w, &Assignment::new(), &h).unwrap())
            .collect();
        if st == direct {
            fol_ok += 1;
        } else {
            return Err(format!("first-order disagreement on instance {k}: {f}"));
        }
        if hybrid == direct {
            hyb_ok += 1;
        } else {
            return Err(format!("hybrid disagreement on instance {k}: {f}"));
        }
    }
    Ok(format!("first-order {fol_ok}/{n}, hybrid {hyb_ok}/{n}"))
}

fn example_translation() -> Finding {
    let st = FolEvaluator::new(&standard_translate(&parse_ld("<>[-<>p1][]p2").unwrap()));
    let simplified = FolEvaluator::new(&fixtures::diamond_del_box_simplified());
    let mut models = 0u64;
    for n in 1..=4 {
        let space = ModelSpace::new(n, &["p1", "p2"]).unwrap();
        for i in 0..space.count() {
            let m = space.decode(i);
            if st.extension(&m, DESIGNATED).unwrap() != simplified.extension(&m, DESIGNATED).unwrap() {
                return Err(format!("differ on model {n}/{i}: {}", m.to_json()));
            }
            models += 1;
        }
    }
    let sample = fixtures::swap_model();
    let mut a = Assignment::new();
    a.insert(DESIGNATED.into(), sample.world("w").unwrap());
    ensure(
        eval_fol(&sample, &a, &fixtures::diamond_del_box_simplified()).is_ok(),
        "simplified formula evaluates",
    )?;
    Ok(format!("agreement on all {models} models up to 4 worlds"))
}

fn verdict(v: &EquivVerdict) -> String {
    format!("{:?}", v.outcome)
}

fn equivalence_examples() -> Finding {
    let pm = |m, w: &str| PointedModel::named(m, w).unwrap();
    let (l, r) = (pm(fixtures::bisim_m1(), "w1"), pm(fixtures::bisim_m2(), "v1"));
    ensure(standard_bisim(&l, &r).bisimilar, "pair should be bisimilar")?;
    let v = bounded_ld_equiv(&l, &r, &["p", "q"], &FormulaBounds::default()).map_err(|e| e.to_string())?;
    let w = v.witness.clone().ok_or("no witness")?;
    let target = parse_ld("[-q]<><>q").unwrap();
    let closure = [fixtures::bisim_m1(), fixtures::bisim_m2()];
    ensure(
        v.outcome == Outcome::Distinguished
            && sdml::equivalence::equivalent_on_closure(&closure, &w, &target, Semantics::Local).unwrap(),
        format!("witness {w} not equivalent to {target}"),
    )?;
    let bounds = FormulaBounds {
        max_size: 10,
        ..FormulaBounds::default()
    };
    let none: [&str; 0] = [];
    for (a, b) in [
        (pm(fixtures::two_cycle(), "w1"), pm(fixtures::reflexive_point(), "v")),
        (pm(fixtures::two_cycle(), "w2"), pm(fixtures::reflexive_point(), "v")),
        (pm(fixtures::fork(), "w"), pm(fixtures::stick(), "v")),
    ] {
        let e = bounded_ld_equiv(&a, &b, &none, &bounds).map_err(|e| e.to_string())?;
        ensure(
            e.outcome == Outcome::EquivalentUpToBound,
            format!("bounded: {}", verdict(&e)),
        )?;
        let g = set_d_bisim(&a, &b, &SetGameBounds::default()).map_err(|e| e.to_string())?;
        ensure(g.outcome == Outcome::SetBisimilar, format!("set game: {}", verdict(&g)))?;
    }
    Ok(format!(
        "witness {w}; three pairs equivalent up to size 10 and set-bisimilar"
    ))
}

fn definability() -> Finding {
    let r = lab::definability_cross_check(4, &SweepOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.passed(), r.to_string())?;
    Ok(format!(
        "{} models, {} points agree",
        r.models_checked, r.points_checked
    ))
}

fn validity_sweeps() -> Finding {
    let mut summary = Vec::new();
    for id in [
        "del-distribution",
        "del-self-dual",
        "del-boolean",
        "del-diamond",
        "del-commute",
        "del-commute-modal",
        "hybrid-del-del",
        "hybrid-del-box",
        "hybrid-del-at-atom",
        "hybrid-del-at-not",
        "hybrid-del-at-and",
        "hybrid-del-at-box",
    ] {
        let s = lab::builtin_schema(id).ok_or(format!("missing schema {id}"))?;
        let r = lab::sweep_schema(&s, &SweepOptions::default()).map_err(|e| e.to_string())?;
        ensure(r.passed(), r.to_string())?;
        summary.push(format!("{id}:{}", if r.held() { "valid" } else { "refuted" }));
    }
    Ok(summary.join(" "))
}

fn reflexivity() -> Finding {
    let r = lab::verify_reflexivity_forcing(3, &SweepOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.passed(), r.to_string())?;
    Ok(format!("{} satisfying points, no violations", r.satisfied))
}

fn infinity() -> Finding {
    let exhaustive = lab::verify_phi_infinity_unsat(&Bounds::exhaustive(3, &["s", "p"]), &SweepOptions::default())
        .map_err(|e| e.to_string())?;
    ensure(exhaustive.passed(), exhaustive.to_string())?;
    let sampled = lab::verify_phi_infinity_unsat(
        &Bounds::sampled(4, &["s", "p"], 1_000_000, 20),
        &SweepOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    ensure(sampled.passed(), sampled.to_string())?;
    Ok(format!(
        "unsatisfied on {} models up to 3 worlds and {} sampled 4-world models",
        exhaustive.models_checked, sampled.models_checked
    ))
}

fn semantics_split() -> Finding {
    let pool = fixtures::global_pool();
    let mut checked = 0;
    for n in 1..=3 {
        let space = ModelSpace::new(n, &["p", "q"]).unwrap();
        for i in 0..space.count() {
            let m = Arc::new(space.decode(i));
            let _ = EdgeIndex::new(&m).unwrap();
            let mut c = Checker::new(m.clone(), Semantics::Global);
            for (label, f) in &pool.entries {
                let g = reduce_global(f);
                if !g.is_del_free() || c.extension_at_base(f).unwrap() != c.extension_at_base(&g).unwrap() {
                    return Err(format!("{label} differs from its reduction on {}", m.to_json()));
                }
            }
            checked += 1;
        }
    }
    let s = lab::builtin_schema("box-recursion-global").unwrap();
    let global = lab::sweep_schema(&s, &SweepOptions::default()).map_err(|e| e.to_string())?;
    ensure(global.held(), global.to_string())?;
    let ce = lab::find_local_counterexample(&s, &SweepOptions::default())
        .map_err(|e| e.to_string())?
        .ok_or("no local counterexample")?;
    Ok(format!(
        "{} formulas reduced on {checked} models; local counterexample at {} with {} worlds",
        pool.entries.len(),
        ce.world,
        ce.model.worlds.len()
    ))
}

fn game_coherence() -> Finding {
    let fixed = common::fixture_specs();
    let random = common::random_specs(2024, 50);
    for spec in fixed.iter().chain(&random) {
        ensure(common::formula_agrees(spec), format!("disagreement at {:?}", spec))?;
    }
    Ok(format!(
        "{} fixture games and {} random games agree",
        fixed.len(),
        random.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("intro graph", intro_reproduction),
        ("deletion order", deletion_order),
        ("translation differential", translation_agreement),
        ("example translation", example_translation),
        ("equivalence examples", equivalence_examples),
        ("definability cross-check", definability),
        ("validity sweeps", validity_sweeps),
        ("reflexivity forcing", reflexivity),
        ("infinity formula", infinity),
        ("semantics split", semantics_split),
        ("game coherence", game_coherence),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

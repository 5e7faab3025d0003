//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use meshkit::cover::{ball_isomorphic, build_covering_ball, check_covering, default_slack, emit_covering, parse_covering, HomotopyKind};
use meshkit::crit::{depth_certificate, fiber_sum, radical_verdict, Verdict};
use meshkit::exla::{row_reduce, VectorInBasis};
use meshkit::gen::{self, TreeSpec};
use meshkit::meshcat::MeshCategory;
use meshkit::oracle::{oracle_depth_search, oracle_hom_dim, oracle_path_is_zero};
use meshkit::qcore::{collapse, emit_quiver, is_sectional, mesh_at, parse_quiver, paths_from, validate, Path, TranslationQuiver};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
const SAMPLE_SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// The generator grid shared by the first two criteria.
fn generator_grid() -> Vec<TranslationQuiver> {
    let mut grid = Vec::new();
    for tree in [TreeSpec::a_n(2), TreeSpec::a_n(3), TreeSpec::d4()] {
        for len in 1..=6i64 {
            for i0 in [-2i64, 0] {
                grid.push(gen::ztree(&tree, i0, i0 + len - 1).unwrap());
            }
        }
    }
    for p in 1..=3 {
        for h in 2..=6 {
            grid.push(gen::tube(p, h).unwrap());
        }
    }
    for n in 1..=6 {
        grid.push(gen::triangle_an(n).unwrap());
    }
    for m in 2..=6 {
        grid.push(gen::kronecker(m).unwrap());
    }
    grid
}

fn generator_validity() -> Outcome {
    let grid = generator_grid();
    let bad: Vec<String> = grid
        .iter()
        .filter(|q| !validate(q).is_valid())
        .map(|q| q.name().to_owned())
        .collect();
    outcome(bad.is_empty(), format!("{} quivers, invalid: {:?}", grid.len(), bad))
}

fn mesh_vanishing() -> Outcome {
    let mut checked = 0;
    let mut nonzero = Vec::new();
    for q in generator_grid() {
        let cat = MeshCategory::new(&q);
        for z in q.vertex_indices() {
            if q.is_projective(z) || q.is_frontier(z) {
                continue;
            }
            let mesh = mesh_at(&q, z).unwrap();
            let h = cat.hom_space(mesh.translate, z, 2);
            let mut sum = VectorInBasis::zero(h.handle());
            for s in &mesh.spokes {
                let p = Path { start: mesh.translate, arrows: vec![s.partner, s.arrow] };
                sum = sum.add(&h.path_vector(&p).unwrap()).unwrap();
            }
            checked += 1;
            if !MeshCategory::class_in(h.clone(), sum).is_zero() {
                nonzero.push(format!("{}:{}", q.name(), q.vertex_id(z)));
            }
        }
    }
    outcome(nonzero.is_empty() && checked > 0, format!("{checked} meshes, nonzero: {nonzero:?}"))
}

fn sectional_nonvanishing() -> Outcome {
    let quivers = [
        gen::triangle_an(5).unwrap(),
        gen::tube(3, 6).unwrap(),
        gen::ztree(&TreeSpec::a_n(3), -2, 3).unwrap(),
        gen::ztree(&TreeSpec::a_n(3), 0, 5).unwrap(),
    ];
    let (mut checked, mut undecided) = (0, 0);
    let mut failures = Vec::new();
    for q in &quivers {
        let cat = MeshCategory::new(q);
        for x in q.vertex_indices() {
            for n in 0..=6 {
                for p in paths_from(q, x, n) {
                    // τ is unknown at some frontier vertices.
                    let Ok(sectional) = is_sectional(q, &p) else {
                        undecided += 1;
                        continue;
                    };
                    if !sectional || !cat.is_exact(p.start, p.end(q), n) {
                        continue;
                    }
                    checked += 1;
                    if cat.class_of_path(&p).unwrap().is_zero() {
                        failures.push(format!("{}:{}", q.name(), p.label(q)));
                    }
                }
            }
        }
    }
    outcome(
        failures.is_empty() && checked > 0,
        format!("{checked} exact sectional paths, {undecided} undecidable at the frontier, zero: {failures:?}"),
    )
}

fn verdict_coherence() -> Outcome {
    let q = gen::triangle_an(4).unwrap();
    let cat = MeshCategory::new(&q);
    let (mut checked, mut mismatches) = (0, Vec::new());
    for x in q.vertex_indices() {
        for n in 0..=5 {
            for p in paths_from(&q, x, n) {
                let y = p.end(&q);
                let h = cat.hom_space(x, y, n);
                let zero = cat.class_of_path(&p).unwrap().is_zero();
                let v = h.path_vector(&p).unwrap();
                let span = row_reduce(h.handle(), h.generators()).unwrap();
                let mut with = h.generators().to_vec();
                with.push(v);
                let inside = row_reduce(h.handle(), &with).unwrap().rank() == span.rank();
                let verdict = radical_verdict(&cat, &p).unwrap().verdict == Verdict::InRadNPlus1;
                let oracle_zero = oracle_path_is_zero(&q, &p).unwrap();
                let dims_agree = oracle_hom_dim(&q, x, y, n).unwrap() == h.quotient_dim();
                checked += 1;
                if !(zero == inside && inside == verdict && verdict == oracle_zero && dims_agree) {
                    mismatches.push(p.label(&q));
                }
            }
        }
    }
    outcome(mismatches.is_empty(), format!("{checked} paths, mismatches: {mismatches:?}"))
}

fn covering_axioms() -> Outcome {
    let bases = [gen::tube(2, 4).unwrap(), gen::tube(1, 3).unwrap(), gen::kronecker(4).unwrap()];
    let (mut balls, mut failures) = (0, Vec::new());
    for q in &bases {
        for x in q.vertex_indices() {
            for kind in [HomotopyKind::Universal, HomotopyKind::Generic] {
                for r in 0..=5 {
                    let b = build_covering_ball(q, x, r, kind, default_slack(r)).unwrap();
                    balls += 1;
                    if !b.stable || !check_covering(&b, q).is_valid() {
                        failures.push(format!("{} {} {} r={r} stable={}", q.name(), q.vertex_id(x), kind.name(), b.stable));
                    }
                }
            }
        }
    }
    outcome(failures.is_empty(), format!("{balls} balls, failing: {failures:?}"))
}

fn collapse_identity() -> Outcome {
    let q = gen::kronecker(6).unwrap();
    let c = collapse(&q);
    let mut notes = Vec::new();
    let mut pass = true;
    for base in ["v0", "v2"] {
        let x = q.find_vertex(base).unwrap();
        let generic = build_covering_ball(&q, x, 4, HomotopyKind::Generic, default_slack(4)).unwrap();
        let universal_c = build_covering_ball(&c.quiver, x, 4, HomotopyKind::Universal, default_slack(4)).unwrap();
        let same = ball_isomorphic(&generic.collapse(&c), &universal_c);
        let u3 = build_covering_ball(&q, x, 3, HomotopyKind::Universal, default_slack(3)).unwrap();
        let g3 = build_covering_ball(&q, x, 3, HomotopyKind::Generic, default_slack(3)).unwrap();
        let differ = !ball_isomorphic(&u3, &g3);
        pass &= same && differ;
        notes.push(format!(
            "base {base}: collapsed generic ≅ universal of collapse = {same}; r=3 universal ({}) vs generic ({}) distinct = {differ}",
            u3.delta.vertex_count(),
            g3.delta.vertex_count()
        ));
    }
    outcome(pass, notes.join("; "))
}

fn fiber_sum_identity() -> Outcome {
    let (mut checks, mut mismatches, mut fiber_groups) = (0, Vec::new(), 0);
    for (p, h) in [(1, 8), (2, 8)] {
        let q = gen::tube(p, h).unwrap();
        let base_cat = MeshCategory::new(&q);
        let radius = 9;
        let ball = build_covering_ball(&q, q.find_vertex("(0,1)").unwrap(), radius, HomotopyKind::Universal, default_slack(radius)).unwrap();
        let cat = MeshCategory::new(&ball.delta);
        for n in 0..=6 {
            for y in q.vertex_indices() {
                // One total per base source vertex; every fiber representative must agree.
                let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
                for x in ball.delta.vertex_indices() {
                    let base = base_cat.hom_space(ball.pi(x), y, n);
                    if !base.is_exact() {
                        continue;
                    }
                    let Ok(sum) = fiber_sum(&cat, &ball, x, y, n) else { continue };
                    checks += 1;
                    if sum.total != base.quotient_dim() {
                        mismatches.push(format!("tube({p},{h}) x={} Y={} n={n}: {} vs {}", ball.delta.vertex_id(x), q.vertex_id(y), sum.total, base.quotient_dim()));
                    }
                    match seen.get(&ball.pi(x).ix()) {
                        Some(&t) if t != sum.total => mismatches.push(format!("fiber dependence at {}", ball.delta.vertex_id(x))),
                        Some(_) => {}
                        None => {
                            seen.insert(ball.pi(x).ix(), sum.total);
                        }
                    }
                }
                fiber_groups += seen.len();
            }
        }
    }
    outcome(
        mismatches.is_empty() && checks > 0,
        format!("{checks} (x, Y, n) checks over {fiber_groups} fiber groups, mismatches: {mismatches:?}"),
    )
}

fn depth_soundness() -> Outcome {
    let q = gen::tube(2, 6).unwrap();
    let cat = MeshCategory::new(&q);
    let cap = 4;
    // Zero-class paths of length ≤ 4 with an exact class.
    let mut pool = Vec::new();
    for x in q.vertex_indices() {
        for n in 1..=4 {
            for p in paths_from(&q, x, n) {
                let y = p.end(&q);
                if !cat.is_exact(x, y, n) || !cat.class_of_path(&p).unwrap().is_zero() {
                    continue;
                }
                // Largest m whose window is exact; m = 0 admits no certificate.
                let m = (0..=4).rev().find(|&m| cat.is_exact(x, y, n + m)).unwrap();
                pool.push((p, m));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let sample: Vec<_> = pool.choose_multiple(&mut rng, 50).cloned().collect();
    let (mut found, mut mismatches) = (0, Vec::new());
    let searched = sample.iter().filter(|(_, m)| *m > 0).count();
    for (p, m) in &sample {
        let ours = depth_certificate(&cat, p, *m, cap).unwrap();
        let theirs = oracle_depth_search(&q, p, *m, cap).unwrap();
        if let Some(c) = &ours {
            found += 1;
            let extra: usize = c.substitutions.iter().map(|s| s.degree - 1).sum();
            if !c.replay(&cat).unwrap() || c.total_degree != p.len() + extra || c.witness.degree() != c.total_degree {
                mismatches.push(format!("{} does not replay", p.label(&q)));
            }
        }
        if ours.as_ref().map(|c| c.total_degree) != theirs.as_ref().map(|c| c.total_degree) {
            mismatches.push(format!("{} m={m}", p.label(&q)));
        }
    }
    outcome(
        mismatches.is_empty() && sample.len() == 50.min(pool.len()) && !sample.is_empty(),
        format!(
            "{} of {} zero-class paths sampled (seed {SAMPLE_SEED}), {searched} with m ≥ 1, {found} certificates, mismatches: {mismatches:?}",
            sample.len(),
            pool.len()
        ),
    )
}

fn derived_values() -> Outcome {
    let za3 = gen::ztree(&TreeSpec::a_n(3), -1, 4).unwrap();
    let za2 = gen::ztree(&TreeSpec::a_n(2), -1, 3).unwrap();
    let tri = gen::triangle_an(3).unwrap();
    let v = |q: &TranslationQuiver, s: &str| q.find_vertex(s).unwrap();
    let check = |q: &TranslationQuiver, x: &str, y: &str, n: usize, want: usize| {
        let h = MeshCategory::new(q).hom_space(v(q, x), v(q, y), n);
        let oracle = oracle_hom_dim(q, v(q, x), v(q, y), n).unwrap();
        (h.quotient_dim(), oracle, h.is_exact() && h.quotient_dim() == want && oracle == want)
    };
    let a = check(&za3, "(0,2)", "(1,2)", 2, 1);
    let b = check(&za2, "(0,1)", "(1,1)", 2, 0);
    let c = check(&tri, "(2,3)", "(1,1)", 3, 0);
    outcome(
        a.2 && b.2 && c.2,
        format!(
            "ZA_3 k_2((0,2),(1,2)) = {} (oracle {}); ZA_2 k_2((0,1),(1,1)) = {} (oracle {}); triangle A_3 k_3((2,3),(1,1)) = {} (oracle {})",
            a.0, a.1, b.0, b.1, c.0, c.1
        ),
    )
}

fn cli_battery() -> Vec<String> {
    let f = |name: &str| format!("{FIXTURES}/{name}");
    let runs: Vec<Vec<String>> = vec![
        vec!["validate", "--quiver", &f("za3.quiver")],
        vec!["validate", "--quiver", &f("corrupted.quiver")],
        vec!["collapse", "--quiver", &f("kronecker4.quiver")],
        vec!["cover", "--quiver", &f("tube2x4.quiver"), "--base", "(0,1)", "--radius", "3", "--kind", "generic"],
        vec!["check-cover", "--quiver", &f("tube2x4.quiver"), "--cover", &f("tube2x4-r3.cover")],
        vec!["lift", "--quiver", &f("tube2x4.quiver"), "--cover", &f("tube2x4-r3.cover"), "--path", "u0_1,d0_2"],
        vec!["mesh-dim", "--quiver", &f("za3.quiver"), "--from", "(0,2)", "--to", "(1,2)", "--deg", "2"],
        vec!["compose", "--quiver", &f("triangle3.quiver"), "--path", "r2_3,l2_2"],
        vec!["verdict", "--quiver", &f("za2.quiver"), "--path", "a0,b0"],
        vec!["depth", "--quiver", &f("za2.quiver"), "--path", "a0,b0", "--max-extra", "2", "--cap", "3"],
        vec!["fiber-sum", "--quiver", &f("tube2x4.quiver"), "--cover", &f("tube2x4-r3.cover"), "--x", "(0,1)", "--Y", "(0,2)", "--deg", "1"],
        vec!["mesh2", "--quiver", &f("triangle3.quiver"), "--vertex", "(1,2)", "--cap", "6"],
        vec!["dims-table", "--quiver", &f("triangle3.quiver"), "--from", "(2,3)", "--to", "(1,1)", "--max-deg", "4"],
    ]
    .into_iter()
    .map(|args| args.into_iter().map(String::from).collect())
    .collect();
    runs.into_iter()
        .map(|args| {
            let mut full = vec!["meshkit".to_owned(), "--json".to_owned()];
            full.extend(args);
            let out = meshkit::cli::run(&full);
            format!("{} => {}\n{}", full[2..].join(" "), out.code, out.stdout)
        })
        .collect()
}

fn round_trip_and_determinism() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut entries: Vec<_> = std::fs::read_dir(FIXTURES).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    let mut quivers = BTreeMap::new();
    let mut files = 0;
    for path in &entries {
        let text = std::fs::read_to_string(path).unwrap();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if name.ends_with(".quiver") {
            // Parse failures are fixtures for the error paths.
            let Ok(q) = parse_quiver(&text) else { continue };
            files += 1;
            let emitted = emit_quiver(&q);
            let ok = parse_quiver(&emitted).as_ref() == Ok(&q) && emitted == text;
            if !ok {
                notes.push(format!("{name} does not round-trip"));
            }
            pass &= ok;
            quivers.insert(name, q);
        }
    }
    for path in &entries {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if let Some(stem) = name.strip_suffix(".cover") {
            let base = stem.rsplit_once('-').map(|(b, _)| format!("{b}.quiver")).unwrap();
            let q = &quivers[&base];
            let text = std::fs::read_to_string(path).unwrap();
            let ball = parse_covering(&text, q).unwrap();
            files += 1;
            let ok = emit_covering(&ball, q) == text;
            if !ok {
                notes.push(format!("{name} does not round-trip"));
            }
            pass &= ok;
        }
    }
    let first = cli_battery();
    let second = cli_battery();
    let identical = first == second;
    pass &= identical && files > 0;
    notes.push(format!("{files} fixture files round-trip; {} CLI JSON reports byte-identical across two runs = {identical}", first.len()));
    outcome(pass, notes.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("generator validity", generator_validity, Duration::from_secs(5)),
        ("mesh vanishing", mesh_vanishing, Duration::from_secs(30)),
        ("sectional nonvanishing", sectional_nonvanishing, Duration::from_secs(120)),
        ("class, span, verdict and oracle coherence", verdict_coherence, Duration::from_secs(600)),
        ("covering axioms", covering_axioms, Duration::from_secs(60)),
        ("collapse of the generic covering", collapse_identity, Duration::from_secs(10)),
        ("fiber-sum dimension identity", fiber_sum_identity, Duration::from_secs(120)),
        ("depth-certificate soundness", depth_soundness, Duration::from_secs(600)),
        ("derived values", derived_values, Duration::from_secs(600)),
        ("round trip and determinism", round_trip_and_determinism, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let took = t.elapsed();
        let on_time = took <= *budget;
        let pass = o.pass && on_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({:.2}s of {}s) {}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            budget.as_secs(),
            o.detail
        );
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

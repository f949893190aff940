//! End-to-end acceptance run: one PASS/FAIL line per criterion. A criterion that
//! cannot be reproduced here reports SUBSTITUTED; its substitute checks can still fail.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use kh_cli::ComparisonReport;
use kh_core::algebra::{BigradedDims, DeltaGradedDims, ExactField, GradedChainComplex, LaurentPoly, Rational, SparseMatrix, F2};
use kh_core::diagram::{braid_closure, generate_family, parse_pd, FamilySpec, PlanarDiagram};
use kh_core::gridhfk::{self, GridDiagram, HfkTable, StateSpace};
use kh_core::khovanov::{self, complex, Flavor, KhOptions, SmallComplex};
use kh_core::lee::s_invariant;
use kh_core::skein::{closed_form_table, les_consistency, Family, LESInstance};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const Q: ExactField = ExactField::Rationals;
const SEED: u64 = 0x6b68_2d61_6363;

// Reference tables, transcribed term by term.
const KH_K0: &str =
    "1^{-7}_{-13} 1^{-6}_{-9} 1^{-4}_{-7} 1^{-3}_{-7} 1^{-3}_{-3} 1^{-2}_{-5} 1^{-2}_{-3} 1^{-1}_{-3} 1^{-1}_{-1} \
                     1^0_{-3} 2^0_{-1} 2^0_1 2^1_1 1^1_3 1^2_1 1^2_3 1^2_5 1^3_3 1^3_5 1^3_7 1^4_7 1^5_7 1^6_{11}";
const KH_K0TAU: &str = "1^{-7}_{-13} 1^{-6}_{-9} 1^{-5}_{-9} 1^{-4}_{-9} 1^{-4}_{-7} 1^{-4}_{-5} 1^{-3}_{-7} 1^{-3}_{-5} 1^{-3}_{-3} \
                        1^{-2}_{-5} 2^{-2}_{-3} 1^{-1}_{-3} 1^{-1}_{-1} 1^{-1}_1 2^0_{-1} 2^0_1 1^1_1 1^1_3 1^2_1 1^2_5 1^3_5 1^5_7 1^6_{11}";

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(root().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn pd(name: &str) -> PlanarDiagram {
    parse_pd(&read(name)).unwrap()
}

fn grid(name: &str) -> GridDiagram {
    GridDiagram::from_json(&read(&format!("grids/{name}.json"))).unwrap()
}

fn family(base: &PlanarDiagram, n: usize) -> PlanarDiagram {
    generate_family(&FamilySpec { base: base.clone(), twists: n }).unwrap()
}

fn delta(entries: &[(i32, u64)]) -> DeltaGradedDims {
    DeltaGradedDims::from_entries(entries.iter().copied())
}

fn ensure(ok: bool, why: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why.into())
    }
}

/// Named braid closures up to ten crossings.
fn corpus() -> Vec<(String, PlanarDiagram)> {
    let v: serde_json::Value = serde_json::from_str(&read("corpus.json")).unwrap();
    let mut out: Vec<(String, PlanarDiagram)> = v["diagrams"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            let word: Vec<i32> = e["braid"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap() as i32).collect();
            let d = braid_closure(&word, e["strands"].as_u64().unwrap() as usize).unwrap();
            (e["name"].as_str().unwrap().to_string(), d)
        })
        .collect();
    for name in ["trefoil.json", "figure8.json", "unknot.json"] {
        out.push((name.to_string(), pd(name)));
    }
    out
}

fn random_braid(rng: &mut StdRng) -> PlanarDiagram {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(2..=7);
    let word: Vec<i32> = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands) as i32;
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    braid_closure(&word, strands).unwrap()
}

fn c1() -> Result<String, String> {
    let start = Instant::now();
    let k = khovanov::kh(&pd("k0.json"), Q).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let want = BigradedDims::parse_text(KH_K0).unwrap();
    ensure(k == want, format!("got {k}"))?;
    ensure(k.total() == 26, "dimension is not 26")?;
    ensure(t < Duration::from_secs(60), format!("took {t:?}"))?;
    Ok(format!("26 generators, exact match, {:.2} s (limit 60 s)", t.as_secs_f64()))
}

fn c2() -> Result<String, String> {
    let (a, b) = (pd("k0.json"), pd("k0tau.json"));
    let r = ComparisonReport::compute(("k0", &a), ("k0tau", &b), Q).map_err(|e| e.to_string())?;
    ensure(r.tables[1] == BigradedDims::parse_text(KH_K0TAU).unwrap(), format!("got {}", r.tables[1]))?;
    let [da, db] = r.deltas();
    ensure(da == delta(&[(-3, 4), (-1, 11), (1, 9), (3, 2)]), "delta(K0) differs")?;
    ensure(db == delta(&[(-3, 2), (-1, 9), (1, 11), (3, 4)]), "delta(K0tau) differs")?;
    ensure(r.delta_swap(), "delta-swap flag is false")?;
    Ok("exact match; delta tables {-3:4,-1:11,1:9,3:2} / {-3:2,-1:9,1:11,3:4}; delta-swap true".into())
}

fn c3(cache: &mut BTreeMap<(usize, bool), BigradedDims>) -> Result<String, String> {
    let start = Instant::now();
    for (file, fam, tau) in [("k0.json", Family::K, false), ("k0tau.json", Family::Tau, true)] {
        let base = pd(file);
        for n in 8..=10 {
            let k = khovanov::kh(&family(&base, n), Q).map_err(|e| e.to_string())?;
            ensure(k == closed_form_table(fam, n as i32), format!("{} n={n}: {k}", fam.name()))?;
            ensure(k.total() == 26, format!("{} n={n}: total {}", fam.name(), k.total()))?;
            cache.insert((n, tau), k);
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(600), format!("took {t:?}"))?;
    Ok(format!("6 diagrams (22-24 crossings) equal the closed forms, 26 each, {:.1} s (limit 600 s)", t.as_secs_f64()))
}

fn c4() -> Result<String, String> {
    for file in ["k0.json", "k0tau.json"] {
        let base = pd(file);
        for n in 0..=2 {
            let s = s_invariant(&family(&base, n)).map_err(|e| e.to_string())?;
            ensure(s == 0, format!("{file} n={n}: s = {s}"))?;
        }
    }
    let su = s_invariant(&pd("unknot.json")).map_err(|e| e.to_string())?;
    ensure(su == 0, format!("unknot: s = {su}"))?;
    let st = s_invariant(&pd("trefoil.json")).map_err(|e| e.to_string())?;
    ensure(st.abs() == 2, format!("trefoil: s = {st}"))?;
    let sm = s_invariant(&pd("trefoil.json").mirror()).map_err(|e| e.to_string())?;
    ensure(sm == -st, "mirror trefoil does not flip s")?;
    Ok(format!("s = 0 on K_n and K_n^tau for n = 0,1,2; s(unknot) = 0; s(trefoil) = {st}, mirror {sm}"))
}

fn c5(cache: &mut BTreeMap<(usize, bool), BigradedDims>) -> Result<String, String> {
    let (a, b) = (pd("k0.json"), pd("k0tau.json"));
    for n in 0..=2 {
        for (tau, base) in [(false, &a), (true, &b)] {
            let k = khovanov::kh(&family(base, n), Q).map_err(|e| e.to_string())?;
            cache.insert((n, tau), k);
        }
    }
    let mut pairs = 0;
    let ns: Vec<usize> = cache.keys().filter(|k| !k.1).map(|k| k.0).collect();
    for n in ns {
        let (x, y) = (&cache[&(n, false)], &cache[&(n, true)]);
        let (ex, ey) = (khovanov::graded_euler_characteristic(x), khovanov::graded_euler_characteristic(y));
        ensure(ex == ey, format!("n={n}: Euler characteristics differ"))?;
        ensure(x != y, format!("n={n}: pair not distinguished"))?;
        pairs += 1;
    }
    Ok(format!("{pairs} mutant pairs (n = 0,1,2,8,9,10): identical graded Euler characteristic, distinct bigraded tables"))
}

fn c6() -> Result<String, String> {
    let a = khovanov::reduced_kh(&pd("k0.json"), ExactField::F2).map_err(|e| e.to_string())?;
    let b = khovanov::reduced_kh(&pd("k0tau.json"), ExactField::F2).map_err(|e| e.to_string())?;
    ensure(a == b, "reduced F2 tables differ")?;
    Ok(format!("identical, {} generators each", a.total()))
}

fn c7() -> Result<String, String> {
    let opts = KhOptions::default();
    let mut family_triples = 0;
    for file in ["k0.json", "k0tau.json"] {
        let base = pd(file);
        for n in 1..=4 {
            let d = family(&base, n);
            let inst = LESInstance::compute(&d, d.crossing_count() - 1, Q, &opts).map_err(|e| e.to_string())?;
            ensure(inst.triple.d0.component_count() == 2, "smoothing is not a two-component link")?;
            let r = les_consistency(&inst).map_err(|e| e.to_string())?;
            ensure(r.pass, format!("{file} n={n}: {:?}", r.violations))?;
            family_triples += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    let (mut random, mut detected) = (0, 0);
    while random < 25 {
        let mut d = random_braid(&mut rng);
        if d.crossing_count() == 0 {
            continue;
        }
        // triples are taken at positive crossings
        if d.n_plus() == 0 {
            d = d.mirror();
        }
        let positive: Vec<usize> = (0..d.crossing_count()).filter(|&c| d.sign(c) > 0).collect();
        let c = positive[rng.gen_range(0..positive.len())];
        let ring = if rng.gen_bool(0.5) { Q } else { ExactField::F2 };
        let mut inst = LESInstance::compute(&d, c, ring, &opts).map_err(|e| e.to_string())?;
        let r = les_consistency(&inst).map_err(|e| e.to_string())?;
        ensure(r.pass, format!("random triple {d} at {c}: {:?}", r.violations))?;
        random += 1;
        // fault injection: one extra generator in a random member
        let member = rng.gen_range(0..3);
        let cells: Vec<(i32, i32, u64)> = inst.dims[member].iter().collect();
        let (i, q, n) = if cells.is_empty() { (0, 0, 0) } else { cells[rng.gen_range(0..cells.len())] };
        inst.dims[member].set(i, q, n + 1);
        if !les_consistency(&inst).map_err(|e| e.to_string())?.pass {
            detected += 1;
        }
    }
    ensure(detected == random, format!("fault injection caught {detected}/{random}"))?;
    Ok(format!("{family_triples} twist triples (n = 1..4, both families) and {random} random triples pass; {detected}/{random} injected faults detected"))
}

/// `dims ⊗ W^k`, `W` having generators in `(0, 0)` and `(−1, −1)`.
fn times_w(h: &BigradedDims, k: usize) -> BigradedDims {
    let mut cur = h.clone();
    for _ in 0..k {
        let mut next = cur.clone();
        for (m, a, d) in cur.iter() {
            next.add(m - 1, a - 1, d);
        }
        cur = next;
    }
    cur
}

/// Tilde homology from matrix ranks, independent of the elimination code.
fn tilde_by_rank(g: &GridDiagram) -> BigradedDims {
    let space = StateSpace::new(g);
    let mut gens: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
    let pos: Vec<usize> = space
        .gradings
        .iter()
        .map(|&(m, a)| {
            let v = gens.entry(-m).or_default();
            v.push(a);
            v.len() - 1
        })
        .collect();
    let mut trip: BTreeMap<i32, Vec<(usize, usize, F2)>> = BTreeMap::new();
    for (s, t, _) in space.rectangles(g, true) {
        let (s, t) = (s as usize, t as usize);
        trip.entry(-space.gradings[s].0).or_default().push((pos[t], pos[s], F2(true)));
    }
    let diffs = trip
        .into_iter()
        .map(|(i, t)| (i, SparseMatrix::from_triplets(gens.get(&(i + 1)).map_or(0, Vec::len), gens[&i].len(), t)))
        .collect();
    let c = GradedChainComplex::new(gens, diffs).unwrap();
    c.check_d_squared().unwrap();
    let h = c.homology_dims();
    BigradedDims::from_entries(h.iter().map(|(i, a, d)| ((-i, a), d)))
}

fn c8() -> Result<String, String> {
    let hat = |g: &GridDiagram| gridhfk::hat_hfk(g).map_err(|e| e.to_string());
    let dims = |e: &[((i32, i32), u64)]| BigradedDims::from_entries(e.iter().copied());
    ensure(hat(&grid("unknot"))? == dims(&[((0, 0), 1)]), "unknot")?;
    ensure(hat(&grid("unlink2"))? == dims(&[((0, 0), 1), ((-1, 0), 1)]), "2-component unlink")?;
    for name in ["unknot", "unlink2", "trefoil", "trefoil_alt", "figure8"] {
        let g = grid(name);
        let h = hat(&g)?;
        let k = g.size - g.components();
        ensure(times_w(&h, k) == tilde_by_rank(&g), format!("{name}: hat x W^{k} differs from rank computation"))?;
        if g.components() == 1 {
            ensure(
                gridhfk::hfk_euler(&h) == gridhfk::alexander_polynomial(&g).unwrap(),
                format!("{name}: Euler characteristic"),
            )?;
            ensure(gridhfk::conjugation_symmetric(&h), format!("{name}: not symmetric"))?;
        }
    }
    let trefoil = |e: &[(i32, i64)]| LaurentPoly::from_terms(e.iter().copied());
    ensure(
        gridhfk::alexander_polynomial(&grid("trefoil")).unwrap() == trefoil(&[(-1, 1), (0, -1), (1, 1)]),
        "trefoil Alexander",
    )?;
    ensure(
        gridhfk::alexander_polynomial(&grid("figure8")).unwrap() == trefoil(&[(-1, -1), (0, 3), (1, -1)]),
        "figure-eight Alexander",
    )?;
    for t in ["hfk_k0.json", "hfk_k0tau.json"] {
        ensure(gridhfk::conjugation_symmetric(&HfkTable::from_json(&read(t)).unwrap().dims), format!("{t} not symmetric"))?;
    }
    let tau = |name: &str| gridhfk::tau(&grid(name)).map_err(|e| e.to_string());
    ensure(tau("unknot")? == 0, "tau(unknot)")?;
    let tt = tau("trefoil")?;
    ensure(tt.abs() == 1, format!("tau(trefoil) = {tt}"))?;
    ensure(tau("figure8")? == 0, "tau(figure-eight)")?;
    Ok(format!("unknot and unlink exact; trefoil, figure-eight match rank and Alexander oracles; symmetric; tau(unknot) = 0, tau(trefoil) = {tt}"))
}

const NOT_REPRODUCIBLE: &str = "NOT REPRODUCIBLE";

fn c9() -> Result<String, String> {
    let a = HfkTable::from_json(&read("hfk_k0.json")).unwrap().dims;
    let b = HfkTable::from_json(&read("hfk_k0tau.json")).unwrap().dims;
    let (da, db) = (gridhfk::hfk_delta_collapse(&a), gridhfk::hfk_delta_collapse(&b));
    ensure(da == delta(&[(-1, 8), (0, 9)]), "delta(K0) data")?;
    ensure(db == delta(&[(0, 9), (1, 8)]), "delta(K0tau) data")?;
    ensure(da.reflected() == db, "no delta swap in the data")?;
    ensure(a.total() == 17 && b.total() == 17, "totals")?;
    ensure(gridhfk::conjugation_symmetric(&a) && gridhfk::conjugation_symmetric(&b), "data not symmetric")?;
    Ok(format!(
        "{NOT_REPRODUCIBLE} at desk scale: 14-crossing HFK is not computed; substitute checks on the shipped HFK data \
        (delta {{-1:8,0:9}} / {{0:9,1:8}}, delta swap, symmetry, 17 each) pass, small knots are covered by [8]"
    ))
}

fn random_cube(rng: &mut StdRng) -> SmallComplex<Rational> {
    loop {
        let d = random_braid(rng);
        if d.crossing_count() > 0 {
            return complex(&d, Flavor::Unreduced, &KhOptions::naive()).unwrap();
        }
    }
}

fn c10() -> Result<String, String> {
    let naive = KhOptions::naive();
    let mut compared = 0;
    let mut squares = 0;
    for (name, d) in corpus() {
        if d.crossing_count() > 10 {
            continue;
        }
        for ring in [Q, ExactField::F2] {
            let a = khovanov::kh(&d, ring).map_err(|e| e.to_string())?;
            let b = khovanov::kh_with(&d, ring, &naive).map_err(|e| e.to_string())?;
            ensure(a == b, format!("{name} over {}: scan {a} vs cube {b}", ring.name()))?;
            compared += 1;
        }
        let m = khovanov::kh(&d.mirror(), Q).map_err(|e| e.to_string())?;
        ensure(m == khovanov::kh(&d, Q).unwrap().negated(), format!("{name}: mirror duality"))?;
        for flavor in [Flavor::Unreduced] {
            let cq: SmallComplex<Rational> = complex(&d, flavor, &naive).unwrap();
            let cf: SmallComplex<F2> = complex(&d, flavor, &naive).unwrap();
            let sq: SmallComplex<Rational> = complex(&d, flavor, &KhOptions::default()).unwrap();
            for ok in [
                cq.to_graded().map(|g| g.check_d_squared().is_ok()),
                cf.to_graded().map(|g| g.check_d_squared().is_ok()),
                sq.to_graded().map(|g| g.check_d_squared().is_ok()),
            ] {
                ensure(ok == Ok(true), format!("{name}: d^2 != 0"))?;
                squares += 1;
            }
        }
    }
    for name in ["unknot", "unlink2", "trefoil", "trefoil_alt", "figure8"] {
        ensure(gridhfk::grid_complexes_are_complexes(&grid(name)).unwrap(), format!("grid {name}: d^2 != 0"))?;
        squares += 2;
    }
    let mut rng = StdRng::seed_from_u64(SEED ^ 1);
    let mut trials = 0;
    while trials < 100 {
        let c = random_cube(&mut rng).to_graded().unwrap();
        let units: Vec<(i32, usize, usize)> = c
            .degrees()
            .flat_map(|i| c.differential(i).entries().map(move |(r, col, _)| (i, r, col)).collect::<Vec<_>>())
            .collect();
        if units.is_empty() {
            continue;
        }
        let (i, r, col) = units[rng.gen_range(0..units.len())];
        let e = c.gaussian_eliminate(i, r, col).map_err(|e| e.to_string())?;
        ensure(e.check_d_squared().is_ok(), "elimination broke d^2 = 0")?;
        ensure(e.homology_dims() == c.homology_dims(), "elimination changed homology")?;
        ensure(e.total_rank() + 2 == c.total_rank(), "elimination did not remove a pair")?;
        trials += 1;
    }
    Ok(format!(
        "scan = cube on {compared} (diagram, ring) cases up to 10 crossings; {squares} complexes with d^2 = 0; \
         {trials} random eliminations preserve homology; mirror duality on the corpus"
    ))
}

fn main() {
    let mut cache = BTreeMap::new();
    let mut results: Vec<(u8, &str, Result<String, String>)> = Vec::new();
    let mut run = |id: u8, title: &'static str, f: &mut dyn FnMut() -> Result<String, String>| {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let tag = match &r {
            Ok(s) if s.starts_with(NOT_REPRODUCIBLE) => "SUBSTITUTED",
            Ok(_) => "PASS",
            Err(_) => "FAIL",
        };
        let text = match &r {
            Ok(s) | Err(s) => s,
        };
        println!("[{id:>2}] {tag}  {title}: {text}");
        results.push((id, title, r));
    };
    run(1, "Kh(K0; Q) reference table", &mut c1);
    run(2, "Kh(K0tau; Q) table and delta swap", &mut c2);
    run(3, "closed forms for n = 8, 9, 10", &mut || c3(&mut cache));
    run(4, "Rasmussen invariants", &mut c4);
    run(5, "Euler characteristic of mutant pairs", &mut || c5(&mut cache));
    run(6, "reduced F2 Khovanov homology of the pair", &mut c6);
    run(7, "skein exact sequence consistency", &mut c7);
    run(8, "grid knot Floer homology", &mut c8);
    run(9, "14-crossing knot Floer homology", &mut c9);
    run(10, "property suite", &mut c10);
    let failed = results.iter().filter(|r| r.2.is_err()).count();
    let substituted = results.iter().filter(|r| matches!(&r.2, Ok(s) if s.starts_with(NOT_REPRODUCIBLE))).count();
    println!("acceptance: {} passed, {substituted} substituted, {failed} failed", results.len() - failed - substituted);
    if failed > 0 {
        std::process::exit(1);
    }
}

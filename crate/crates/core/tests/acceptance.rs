//! Acceptance criteria. Each criterion prints one PASS/FAIL line and the
//! process exits nonzero if any of them fails.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::*;
use unisecant::chowring::{self, CycleClass};
use unisecant::degeneration::{self, ComponentKind};
use unisecant::dualgraph;
use unisecant::numerics::{self, MinimalFamily};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        ensure(elapsed < limit, || format!("took {elapsed:?}, limit {limit:?}"))
    });
    match &outcome {
        Ok(()) => println!("AC{id} PASS  {name} ({:.3}s)", elapsed.as_secs_f64()),
        Err(why) => println!("AC{id} FAIL  {name}: {why}"),
    }
    outcome.is_ok()
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = unisecant::cli::run(std::iter::once("unisecant").chain(args.iter().copied()));
    if out.code != 0 {
        return Err(format!("{args:?} exited {}: {}", out.code, out.stderr));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn ac1_genus() -> Check {
    let v = cli_json(&["genus", "2", "--via-graph"])?;
    let r = &v["result"];
    ensure(r["formula"] == "5", || format!("formula {}", r["formula"]))?;
    ensure(r["graph"]["arithmetic_genus"] == 5, || format!("graph genus {}", r["graph"]))?;
    ensure(r["graph"]["vertex_count"] == 8 && r["graph"]["edge_count"] == 12, || format!("{}", r["graph"]))?;
    ensure(r["graph"]["euler_char"] == -4, || format!("chi {}", r["graph"]["euler_char"]))?;
    ensure(r["agree"] == true, || "paths disagree".into())
}

fn ac2_closed_forms() -> Check {
    for g in 1..=12u32 {
        let graph = dualgraph::build_limit_graph(g).map_err(|e| e.to_string())?;
        let p = 1i64 << (g - 1);
        let (v, e) = (graph.vertex_count() as i64, graph.edge_count() as i64);
        ensure(v == p * (g as i64 + 2), || format!("g={g}: v = {v}"))?;
        ensure(e == 3 * g as i64 * p, || format!("g={g}: e = {e}"))?;
        let chi = dualgraph::euler_char(&graph);
        ensure(chi == (1i64 << g) * (1 - g as i64), || format!("g={g}: chi = {chi}"))?;
    }
    Ok(())
}

fn ac3_three_way() -> Check {
    for g in 1..=10i64 {
        let bound = numerics::degree_bound(g).unwrap();
        let d = if (bound + g) % 2 == 1 { bound } else { bound + 1 };
        let enumerated = degeneration::limit_unisecants_odd(d, g).map_err(|e| e.to_string())?.labelings.len();
        let product = chowring::product_h(g as u32).map_err(|e| e.to_string())?;
        let terms = product.len();
        let pairing = chowring::pair_with_v0(&product).map_err(|e| e.to_string())?;
        // any m with d_m > 0
        let index = numerics::index(d, g, (d + g) / 2 + 1).map_err(|e| e.to_string())?;
        let two_g = 1usize << g;
        ensure(enumerated == two_g, || format!("g={g}: enumerated {enumerated}"))?;
        ensure(terms == two_g, || format!("g={g}: terms {terms}"))?;
        ensure(pairing == two_g as i64, || format!("g={g}: pairing {pairing}"))?;
        ensure(index == BigUint::from(two_g), || format!("g={g}: index {index}"))?;
        let min = numerics::min_unisecant_degree(d, g).map_err(|e| e.to_string())?;
        ensure(min.family == MinimalFamily::FiniteCount(BigUint::from(two_g)), || format!("g={g}: {:?}", min.family))?;
    }
    Ok(())
}

fn ac4_monodromy() -> Check {
    for g in 1..=16u32 {
        let t = dualgraph::monodromy_transpositions(g).map_err(|e| e.to_string())?;
        ensure(dualgraph::is_full_symmetric(&t), || format!("g={g}: not connected"))?;
        ensure(t.swaps().len() == g as usize * (1 << (g - 1)), || format!("g={g}: {} swaps", t.swaps().len()))?;
    }
    for (g, expected) in [(2u32, 24u64), (3, 40320)] {
        let t = dualgraph::monodromy_transpositions(g).unwrap();
        let lib = dualgraph::brute_force_group_order(&t).map_err(|e| e.to_string())?;
        let oracle = closure_order(t.symbols().len(), t.swaps()) as u64;
        ensure(lib == expected && oracle == expected, || format!("g={g}: orders {lib}, {oracle}"))?;
    }
    Ok(())
}

fn ac5_chow_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..1000 {
        let g = rng.gen_range(1..=6);
        let (a, b) = (random_class(&mut rng, g), random_class(&mut rng, g));
        let fast = a.mul(&b).map_err(|e| e.to_string())?;
        let oracle = dense_mul(&to_dense(&a), &to_dense(&b));
        ensure(to_dense(&fast) == oracle, || format!("trial {trial}: {a} * {b} = {fast}"))?;
    }
    for trial in 0..300 {
        let g = rng.gen_range(1..=6);
        let (a, b, c) = (random_class(&mut rng, g), random_class(&mut rng, g), random_class(&mut rng, g));
        let ab = a.mul(&b).unwrap();
        ensure(ab == b.mul(&a).unwrap(), || format!("trial {trial}: commutativity"))?;
        ensure(ab.mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap(), || format!("trial {trial}: associativity"))?;
        ensure(
            a.mul(&b.add(&c).unwrap()).unwrap() == ab.add(&a.mul(&c).unwrap()).unwrap(),
            || format!("trial {trial}: distributivity"),
        )?;
    }
    for g in 1..=6 {
        for i in 1..=g {
            for j in 1..=2 {
                let r = CycleClass::generator(g, j, i).unwrap();
                ensure(r.mul(&r).unwrap().is_zero(), || format!("r[{j},{i}]^2 != 0"))?;
            }
        }
    }
    Ok(())
}

fn ac6_projection() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut n = 0;
    while n < 10_000 {
        let g = rng.gen_range(0..=10i64);
        let d = rng.gen_range(numerics::degree_bound(g).unwrap()..=100);
        // d_m > 0 and a projected degree d' = d - d_m >= 1
        let (lo, hi) = ((d + g) / 2 + 1, (2 * d + g - 2) / 2);
        if lo > hi {
            continue;
        }
        let m = rng.gen_range(lo..=hi);
        n += 1;
        match numerics::projection_reduction(d, g, m) {
            Ok(img) => {
                let odd = (img.params.d + g) % 2 == 1;
                let dm = numerics::expected_dim(img.params.d, g, img.params.m.unwrap()).unwrap();
                if !odd || dm != 0 {
                    failures.push((d, g, m));
                }
            }
            Err(_) => failures.push((d, g, m)),
        }
    }
    ensure(failures.is_empty(), || format!("{} failures, first {:?}", failures.len(), failures[0]))
}

fn ac7_dimensions() -> Check {
    for g in 1..=10i64 {
        for d in numerics::degree_bound(g).unwrap()..=100 {
            let h = numerics::hilbert_dim(d, g).map_err(|e| e.to_string())?;
            let sum: i64 = numerics::parameter_count(d, g).map_err(|e| e.to_string())?.iter().map(|b| b.count).sum();
            ensure(h == sum, || format!("({d}, {g}): {h} != {sum}"))?;

            let m_first = (d + g) / 2;
            for m in m_first..m_first + 8 {
                let dm = numerics::expected_dim(d, g, m).unwrap();
                if dm < 0 {
                    continue;
                }
                let s = degeneration::splitting_range(d, g, m).map_err(|e| e.to_string())?;
                let low = (d + g - 3).div_euclid(2);
                ensure(s.entries.len() as i64 == m - low, || format!("({d}, {g}, {m}): {} entries", s.entries.len()))?;
                for e in &s.entries {
                    let glued = if m - e.m_x > 1 {
                        e.dim_on_x + 2 * (m - e.m_x) - 1 - 2
                    } else {
                        e.dim_on_x - 1
                    };
                    ensure(e.dim_component == dm && glued == dm, || format!("({d}, {g}, {m}): {e:?}"))?;
                    ensure(e.dim_on_x >= 0, || format!("({d}, {g}, {m}): empty X side {e:?}"))?;
                }
            }
        }
    }
    Ok(())
}

fn ac8_degree_profile() -> Check {
    for g in 1..=12u32 {
        let graph = dualgraph::build_limit_graph(g).map_err(|e| e.to_string())?;
        let deg = graph.degrees();
        for (v, kind) in graph.vertices().iter().enumerate() {
            let want = match kind {
                ComponentKind::PencilXi { .. } => 2 * g as usize,
                ComponentKind::ConicXiPrime { .. } => 2,
            };
            ensure(deg[v] == want, || format!("g={g}: {} has degree {}", kind.id(), deg[v]))?;
        }
        ensure(deg.iter().sum::<usize>() == 2 * graph.edge_count(), || format!("g={g}: handshake"))?;
        ensure(graph.is_connected(), || format!("g={g}: disconnected"))?;
        let genus = dualgraph::arithmetic_genus(&graph).map_err(|e| e.to_string())?;
        ensure(BigInt::from(genus) == dualgraph::genus_formula(g), || format!("g={g}: genus {genus}"))?;
    }
    Ok(())
}

const CLI_MATRIX: &[&[&str]] = &[
    &["dims", "10", "2", "7"],
    &["dims", "9", "0", "6"],
    &["min-sections", "9", "2"],
    &["min-sections", "8", "2", "--table"],
    &["index", "10", "2", "7"],
    &["index", "9", "2", "5"],
    &["chow-product", "3", "--terms"],
    &["chow-product", "25"],
    &["limit-graph", "2"],
    &["limit-graph", "1", "--dot"],
    &["limit-graph", "3", "--table"],
    &["genus", "2", "--via-graph"],
    &["monodromy", "3", "--brute-force"],
    &["stability", "6", "5"],
    &["validate", "7", "2"],
    &["validate", "7", "2", "--strict"],
    &["bogus"],
];

fn ac9_determinism() -> Check {
    let exe = env!("CARGO_BIN_EXE_unisecant");
    for args in CLI_MATRIX {
        let runs: Vec<_> = (0..3)
            .map(|_| Command::new(exe).args(*args).output().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        for r in &runs[1..] {
            ensure(
                r.stdout == runs[0].stdout && r.stderr == runs[0].stderr && r.status.code() == runs[0].status.code(),
                || format!("{args:?} output differs between runs"),
            )?;
        }
        let lib = unisecant::cli::run(std::iter::once("unisecant").chain(args.iter().copied()));
        ensure(lib.stdout.as_bytes() == runs[0].stdout.as_slice(), || format!("{args:?}: binary and library differ"))?;
        ensure(Some(lib.code) == runs[0].status.code(), || format!("{args:?}: exit code differs"))?;
    }
    Ok(())
}

fn main() {
    let results = [
        criterion(1, "genus 2 --via-graph gives 5 by both paths", Duration::from_secs(1), ac1_genus),
        criterion(2, "graph closed forms v, e, chi for 1 <= g <= 12", Duration::from_secs(30), ac2_closed_forms),
        criterion(3, "three-way 2^g agreement for 1 <= g <= 10", Duration::from_secs(10), ac3_three_way),
        criterion(4, "full symmetric monodromy g <= 16, orders 24 and 40320", Duration::from_secs(60), ac4_monodromy),
        criterion(5, "Chow ring vs dense subset convolution, ring laws", Duration::from_secs(120), ac5_chow_oracle),
        criterion(6, "projection postconditions on 10^4 random triples", Duration::from_secs(60), ac6_projection),
        criterion(7, "hilbert_dim = parameter sum, splitting identities", Duration::from_secs(60), ac7_dimensions),
        criterion(8, "degree profile, handshake, connectivity g <= 12", Duration::from_secs(60), ac8_degree_profile),
        criterion(9, "byte-identical CLI output", Duration::from_secs(60), ac9_determinism),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

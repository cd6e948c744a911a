//! Acceptance criteria 1–11, one PASS/FAIL line each.

use std::process::ExitCode;
use std::time::Instant;

use topvertex::identities::{battery, hook_product, IdentityReport};
use topvertex::localflop::{
    check_flop_identity, conifold_factor, hook_product_sides, z0_closed, z0_normalized, z0_plus_closed,
    z0_plus_normalized, Side,
};
use topvertex::nekrasov;
use topvertex::partfun::{check_blowup, check_flop_global, gw_extract, rational, z_fan, z_from_graph};
use topvertex::partitions::{enumerate, Partition};
use topvertex::toricgeom::{Fan, SurfaceFan, ToricGraph};

type Outcome = Result<String, String>;

fn fan(name: &str) -> Fan {
    let path = format!("{}/../../fans/{name}.json", env!("CARGO_MANIFEST_DIR"));
    Fan::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn surface(name: &str) -> SurfaceFan {
    let path = format!("{}/../../fans/{name}.json", env!("CARGO_MANIFEST_DIR"));
    SurfaceFan::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

/// All `(λ1, …, λ4)` with `Σ|λi| ≤ n`.
fn tuples(n: u32) -> Vec<[Partition; 4]> {
    let ps = enumerate(n);
    let mut out = Vec::new();
    for a in &ps {
        for b in &ps {
            for c in &ps {
                for d in &ps {
                    if a.size() + b.size() + c.size() + d.size() <= n {
                        out.push([a.clone(), b.clone(), c.clone(), d.clone()]);
                    }
                }
            }
        }
    }
    out
}

fn show(l: &[Partition; 4]) -> String {
    let v: Vec<String> = l.iter().map(|p| p.to_string()).collect();
    format!("({})", v.join(", "))
}

fn summarize(reports: &[IdentityReport]) -> Outcome {
    let cases: usize = reports.iter().map(|r| r.cases).sum();
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(format!("{} identities, {cases} cases", reports.len())),
        Some(r) => Err(format!("{} fails at {:?}", r.name, r.failures.iter().take(3).collect::<Vec<_>>())),
    }
}

fn c1() -> Outcome {
    summarize(&battery(5, 3).map_err(err)?)
}

fn c2() -> Outcome {
    let e = Partition::empty();
    let (lhs, rhs) = hook_product_sides(&e, &e, 4).map_err(err)?;
    let coni = conifold_factor(4);
    if lhs.terms() != coni.terms() || rhs.terms() != coni.terms() {
        return Err("(∅, ∅) canary differs from the conifold factor".into());
    }
    summarize(&[hook_product(3, 4).map_err(err)?])
}

fn c3() -> Outcome {
    let ts = tuples(4);
    for l in &ts {
        if z0_normalized(l).map_err(err)?.series != z0_closed(l).map_err(err)?.series {
            return Err(format!("z0 at {}", show(l)));
        }
        if z0_plus_normalized(l).map_err(err)?.series != z0_plus_closed(l).map_err(err)?.series {
            return Err(format!("z0_plus at {}", show(l)));
        }
    }
    Ok(format!("{} tuples", ts.len()))
}

fn c4() -> Outcome {
    let ts = tuples(4);
    let mut exact = 0;
    for l in &ts {
        let n: u32 = l.iter().map(Partition::size).sum();
        for amp in [z0_normalized(l).map_err(err)?, z0_plus_normalized(l).map_err(err)?] {
            let d = amp.degree().unwrap_or(0);
            if d > n {
                return Err(format!("degree {d} > {n} at {}", show(l)));
            }
            if l[2].is_empty() && l[3].is_empty() && amp.side == Side::Original {
                if d != l[0].size() + l[1].size() {
                    return Err(format!("degree {d} at {}", show(l)));
                }
                exact += 1;
            }
        }
    }
    Ok(format!("{} tuples, {exact} exact-degree cases", ts.len()))
}

fn c5() -> Outcome {
    let ts = tuples(4);
    for l in &ts {
        let r = check_flop_identity(l).map_err(err)?;
        if !r.holds {
            return Err(format!("{}: {:?}", show(l), r.witness));
        }
    }
    Ok(format!("{} tuples", ts.len()))
}

fn c6() -> Outcome {
    let t = gw_extract(&z_fan(&fan("conifold"), 3, false).map_err(err)?, 2).map_err(err)?;
    for d in 1..=3i64 {
        let want = [rational(1, d * d * d), rational(1, 12 * d), rational(d, 240)];
        for (g, w) in want.iter().enumerate() {
            if t.get(g as u32, &[d]) != Some(w) {
                return Err(format!("N_{{{g},{d}}} = {:?}", t.get(g as u32, &[d])));
            }
        }
    }
    Ok("N_{g,d} for g ≤ 2, d ≤ 3".into())
}

fn c7() -> Outcome {
    let t = gw_extract(&z_fan(&fan("local_p2"), 3, true).map_err(err)?, 0).map_err(err)?;
    let want = [rational(3, 1), rational(-45, 8), rational(244, 9)];
    for (d, w) in want.iter().enumerate() {
        let d = d as i64 + 1;
        if t.get(0, &[d]) != Some(w) {
            return Err(format!("N_{{0,{d}}} = {:?}", t.get(0, &[d])));
        }
    }
    Ok("N_{0,1..3} = 3, -45/8, 244/9".into())
}

fn c8() -> Outcome {
    let f1 = fan("local_f1");
    let f5 = fan("figure5");
    let mut notes = Vec::new();
    for (name, f, e) in [("local F1 at E", &f1, f1.edge_by_name("E").map_err(err)?), ("two-square geometry at Q0", &f5, [1, 2])] {
        let r = check_flop_global(f, e, 3).map_err(err)?;
        if !r.holds() {
            return Err(format!("{name}: violations {:?}, witness {:?}", r.vanishing_violations, r.witness));
        }
        notes.push(format!("{name}: {} terms", r.compared_terms));
    }
    Ok(notes.join("; "))
}

fn c9() -> Outcome {
    let r = check_blowup(&surface("p2_surface"), (0, 1), 6, 2).map_err(err)?;
    if !r.holds() {
        return Err(format!(
            "negative {:?}, orthogonal {:?}, exceptional {:?}",
            r.negative_failures, r.orthogonal_failures, r.exceptional_failures
        ));
    }
    let degrees: Vec<i64> = r.orthogonal_compared.iter().filter_map(|(_, o)| o.first().copied()).collect();
    if r.negative_checked.is_empty() || !(1..=3u32).all(|d| r.exceptional_degrees.contains(&d)) {
        return Err("coverage too small".into());
    }
    if !(1..=3).all(|d| degrees.contains(&d)) {
        return Err(format!("orthogonal classes compared: {:?}", r.orthogonal_compared));
    }
    Ok(format!(
        "{} negative, {} orthogonal, {} exceptional classes",
        r.negative_checked.len(),
        r.orthogonal_compared.len(),
        r.exceptional_degrees.len()
    ))
}

fn c10() -> Outcome {
    for cap in 0..=2 {
        let r = nekrasov::compare(cap, 2).map_err(err)?;
        if !r.holds() {
            return Err(format!("cap {cap}: {} differing terms", r.difference.len()));
        }
    }
    Ok("caps 0, 1, 2 (fiber degrees ≤ 2)".into())
}

fn c11() -> Outcome {
    for (name, by_class) in [("conifold", false), ("local_p2", false), ("figure5", true)] {
        let g = ToricGraph::build(&fan(name)).map_err(err)?;
        let a = z_from_graph(g.clone(), 2, by_class);
        let b = z_from_graph(g.reversed(), 2, by_class);
        if a.series != b.series {
            return Err(format!("direction reversal on {name}"));
        }
    }
    for (name, e) in [("conifold", "Q0"), ("local_f1", "E"), ("figure5", "Q0")] {
        let f = fan(name);
        let once = f.flop(f.edge_by_name(e).map_err(err)?).map_err(err)?;
        let twice = once.fan.flop(once.new_edge).map_err(err)?;
        let norm = |f: &Fan| {
            let mut t: Vec<[usize; 3]> = f.triangles.iter().map(|t| { let mut s = *t; s.sort(); s }).collect();
            t.sort();
            t
        };
        if norm(&twice.fan) != norm(&f) || twice.new_edge != once.old_edge {
            return Err(format!("flop of {name} at {e} is not an involution"));
        }
        let z0 = z_fan(&f, 2, true).map_err(err)?;
        let z2 = z_fan(&twice.fan, 2, true).map_err(err)?;
        if z0.series.terms() != z2.series.terms() {
            return Err(format!("double flop of {name} changes Z"));
        }
    }
    let mut classes = 0;
    for (name, cap) in [("conifold", 4), ("local_p2", 3), ("local_p1xp1", 3), ("local_f1", 3)] {
        let t = gw_extract(&z_fan(&fan(name), cap, true).map_err(err)?, 3).map_err(|e| format!("{name}: {e}"))?;
        classes += t.classes.len();
    }
    Ok(format!("reversal, involution, no odd powers in {classes} classes"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("identity battery, sizes ≤ 5 (pairs ≤ 4)", c1),
        ("hook product identity up to Q^4, |μ|,|ν| ≤ 3", c2),
        ("closed forms of the local amplitudes, Σ|λ| ≤ 4", c3),
        ("degree bounds of the normalized amplitudes", c4),
        ("local flop identity, Σ|λ| ≤ 4", c5),
        ("conifold invariants", c6),
        ("local P2 genus-zero invariants", c7),
        ("global flop invariance, cap 3", c8),
        ("blowup comparison for P2", c9),
        ("instanton sum equals the geometric partition function, cap ≤ 2", c10),
        ("structural properties", c11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {:>2}: PASS  {name} [{note}] ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

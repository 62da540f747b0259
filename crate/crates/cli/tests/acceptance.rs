//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use redgroups_core::affine::{self, classify, factorization_report, solvable_variety_signature};
use redgroups_core::finab::{homomorphisms, orbit_partition, subgroups, FinAbHom};
use redgroups_core::intlinalg::{hermite_normal_form, smith_normal_form};
use redgroups_core::reductive::{
    enumerate_rank, fundamental_group, invariants, isomorphic, lie_algebra_invariant, torus_split,
    variety_determines_group, GluingAmbient,
};
use redgroups_core::semisimple::{extended_out_generators, isomorphic_quotients};
use redgroups_core::varieties::{find_twin_pairs, power, power_center, sigma_hat};
use redgroups_core::{
    AffineDatum, EnumerationConfig, FinAb, FinAbSubgroup, GluingDatum, IntMatrix, SCSemisimple,
    SimpleType,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ty(s: &str) -> SimpleType {
    s.parse().unwrap()
}

fn center_table() -> Check {
    let mut expected: Vec<(String, Vec<u64>)> = Vec::new();
    for d in 2..=9u64 {
        expected.push((format!("A{}", d - 1), vec![d]));
    }
    for l in 4..=9usize {
        let factors = if l % 2 == 0 { vec![2, 2] } else { vec![4] };
        expected.push((format!("D{l}"), factors));
    }
    for l in 2..=8 {
        expected.push((format!("B{l}"), vec![2]));
    }
    for l in 3..=8 {
        expected.push((format!("C{l}"), vec![2]));
    }
    for (t, f) in [
        ("E6", vec![3]),
        ("E7", vec![2]),
        ("E8", vec![]),
        ("F4", vec![]),
        ("G2", vec![]),
    ] {
        expected.push((t.to_string(), f));
    }
    for (t, factors) in expected {
        let got = ty(&t).center().invariant_factors();
        ensure!(got == factors, "{t}: {got:?} != {factors:?}");
    }
    Ok(())
}

fn order_two_orbits(t: &str) -> Result<usize, String> {
    let s = SCSemisimple::new(vec![ty(t)]);
    let a = s.center_of().group;
    let subs: Vec<FinAbSubgroup> = subgroups(&a, 10_000)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|c| c.order() == 2)
        .collect();
    let maps: Vec<FinAbHom> = extended_out_generators(&s)
        .into_iter()
        .map(|g| g.map)
        .collect();
    Ok(orbit_partition(&subs, &maps)
        .map_err(|e| e.to_string())?
        .len())
}

fn order_two_orbit_counts() -> Check {
    for (t, want) in [("D4", 1), ("D6", 2), ("D8", 2)] {
        let got = order_two_orbits(t)?;
        ensure!(got == want, "{t}: {got} orbits, expected {want}");
    }
    Ok(())
}

fn cli_json(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_redgroups"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "{args:?} failed");
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn twin_pair() -> Check {
    let certs = cli_json(&["twins", "A1", "2", "--json"])?;
    let certs = certs.as_array().ok_or("expected a list")?;
    ensure!(certs.len() == 1, "{} certificates", certs.len());
    let names: BTreeSet<&str> = [&certs[0]["group1"], &certs[0]["group2"]]
        .iter()
        .filter_map(|v| v.as_str())
        .collect();
    ensure!(
        names == BTreeSet::from(["SO4", "PGL2×SL2"]),
        "names {names:?}"
    );
    let rows: Vec<Vec<i64>> =
        serde_json::from_value(certs[0]["witness"].clone()).map_err(|e| e.to_string())?;
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    let m = IntMatrix::from_i64(&refs);
    ensure!(m.is_unimodular(), "witness not unimodular");
    let a1 = ty("A1");
    let a = power_center(a1, 2);
    let diagonal = FinAbSubgroup::generated(&a, &[vec![1, 1]]);
    let first = FinAbSubgroup::generated(&a, &[vec![1, 0]]);
    ensure!(
        sigma_hat(a1, &m, &diagonal).unwrap() == first,
        "witness misses <(-I,e)>"
    );
    ensure!(
        isomorphic_quotients(&power(a1, 2), &diagonal, &first)
            .unwrap()
            .is_none(),
        "SO4 and PGL2×SL2 reported isomorphic"
    );

    let certs = cli_json(&["twins", "A2", "2", "--json"])?;
    let found = certs.as_array().ok_or("expected a list")?.iter().any(|c| {
        let pair = BTreeSet::from([c["group1"].as_str(), c["group2"].as_str()]);
        pair == BTreeSet::from([Some("(SL3×SL3)/<(1,1)>"), Some("PGL3×SL3")])
    });
    ensure!(found, "A2^2 pair missing");
    for cert in find_twin_pairs(ty("A2"), 2, 10_000).unwrap() {
        ensure!(cert.verify().unwrap(), "certificate fails verification");
    }
    Ok(())
}

fn all_simple_types() -> Vec<SimpleType> {
    (1..=8)
        .flat_map(|r| {
            SCSemisimple::all_of_rank(r)
                .into_iter()
                .filter(|s| s.factors().len() == 1)
                .map(|s| s.factors()[0])
                .collect::<Vec<_>>()
        })
        .collect()
}

fn atlas() -> Vec<GluingDatum> {
    (0..=3)
        .flat_map(|r| enumerate_rank(r, &EnumerationConfig::default()).unwrap())
        .collect()
}

fn uniqueness() -> Check {
    let mut bases = 0;
    for t in all_simple_types()
        .into_iter()
        .filter(|t| t.center().order() <= 4)
    {
        let pairs = find_twin_pairs(t, 1, 10_000).map_err(|e| e.to_string())?;
        ensure!(pairs.is_empty(), "{t}: twins with n = 1");
        bases += 1;
    }
    ensure!(bases >= 20, "only {bases} bases checked");
    for d in atlas() {
        let s = d.semisimple_part();
        let torus = s.is_trivial();
        let sc = d.torus_rank() == 0 && d.gluing().is_trivial();
        let simple = d.torus_rank() == 0 && s.factors().len() == 1;
        if torus || sc || simple {
            ensure!(variety_determines_group(&d).0, "{d}");
        }
    }
    Ok(())
}

/// All subgroups of `(ℤ/E)ⁿ ⊕ 𝒞(S)` meeting the torus trivially, one
/// representative per class under pairwise isomorphism search.
fn oracle(r: usize) -> Vec<GluingDatum> {
    let mut reps: Vec<GluingDatum> = Vec::new();
    for srank in 0..=r {
        let n = r - srank;
        for s in SCSemisimple::all_of_rank(srank) {
            let amb = GluingAmbient::new(n, &s);
            for f in subgroups(&amb.group, 100_000).unwrap() {
                let meets_torus = f.elements().iter().any(|x| {
                    x.iter().any(|&c| c != 0) && amb.center_part(x).iter().all(|&c| c == 0)
                });
                if meets_torus {
                    continue;
                }
                let d = GluingDatum::new_raw(n, s.clone(), f).unwrap();
                if !reps.iter().any(|c| isomorphic(c, &d).unwrap().is_some()) {
                    reps.push(d);
                }
            }
        }
    }
    reps
}

fn rank_enumeration() -> Check {
    let config = EnumerationConfig::default();
    let one: Vec<String> = enumerate_rank(1, &config)
        .unwrap()
        .iter()
        .map(|d| d.name())
        .collect();
    ensure!(one == ["Gm", "SL2", "PGL2"], "rank 1: {one:?}");
    let two = enumerate_rank(2, &config).unwrap();
    let reps = oracle(2);
    ensure!(
        two.len() == reps.len(),
        "{} listed, {} from the oracle",
        two.len(),
        reps.len()
    );
    for rep in &reps {
        let hits = two
            .iter()
            .filter(|d| isomorphic(d, rep).unwrap().is_some())
            .count();
        ensure!(hits == 1, "{rep} matched {hits} entries");
    }
    ensure!(two.len() == 13, "N2 = {}", two.len());
    Ok(())
}

fn general_linear_chain() -> Check {
    let gl2 = GluingDatum::general_linear(2).unwrap();
    let sl2_gm = GluingDatum::simply_connected(1, SCSemisimple::new(vec![ty("A1")]));
    ensure!(isomorphic(&gl2, &sl2_gm).unwrap().is_none(), "GL2 ≅ SL2×Gm");
    ensure!(
        lie_algebra_invariant(&gl2) == lie_algebra_invariant(&sl2_gm),
        "Lie algebras differ"
    );
    for n in 2..=4usize {
        let d = GluingDatum::general_linear(n).unwrap();
        let split = torus_split(&d);
        let mut diag = vec![BigInt::from(1)];
        diag.push(BigInt::from(1));
        diag.extend(std::iter::repeat_n(BigInt::from(0), n - 2));
        ensure!(
            split.complement == vec![diag],
            "GL{n} complement {:?}",
            split.complement
        );
        let r = invariants(&d);
        ensure!(r.dim == n * n && r.mh == n * n, "GL{n} dim/mh");
        ensure!(r.units == 1 && r.dim_radical == 1, "GL{n} units/radical");
        let (free, torsion) = fundamental_group(&d);
        ensure!(free == 1 && torsion.is_trivial(), "GL{n} π₁");
    }
    Ok(())
}

fn formula_suite() -> Check {
    let mut count = 0;
    for d in atlas() {
        let n = d.torus_rank();
        for u in 0..=3 {
            let a = AffineDatum::new(d.clone(), u);
            let r = affine::invariants(&a);
            ensure!(
                r.dim_unipotent_radical == r.dim - r.mh && r.dim_unipotent_radical == u,
                "ddm {d}"
            );
            ensure!(
                r.dim_radical == r.dim - r.mh + r.units && r.dim_radical == u + n,
                "rddm {d}"
            );
            ensure!(r.units <= r.dim, "units > dim for {d}");
            ensure!(
                (r.units == r.dim) == (d.semisimple_part().is_trivial() && u == 0),
                "equality case for {d}, u = {u}"
            );
            let c = classify(&a).map_err(|e| format!("{d}, u = {u}: {e}"))?;
            ensure!(!c.torus || (c.reductive && c.solvable), "torus flags {d}");
            ensure!(!c.unipotent || c.solvable, "unipotent flags {d}");
            ensure!(!c.semisimple || c.reductive, "semisimple flags {d}");
            if let Ok((t, rest)) = solvable_variety_signature(&a) {
                ensure!(t == r.units && t + rest == r.dim, "signature {d}");
            }
            count += 1;
        }
        if n == 0 {
            let o = factorization_report(&d)
                .obstructions
                .ok_or("missing obstructions")?;
            ensure!(
                o.no_units && o.no_curve_factor && o.no_surface_factor && o.no_contractible_factor,
                "obstruction flags {d}"
            );
        }
    }
    ensure!(count == 4 * (1 + 3 + 13 + 45), "corpus size {count}");
    Ok(())
}

fn random_matrix(rng: &mut StdRng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
        .collect();
    IntMatrix::from_rows(c, &rows)
}

fn random_unimodular(rng: &mut StdRng, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..10 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut e = IntMatrix::identity(n);
        if i == j {
            e[(i, i)] = BigInt::from(-1);
        } else {
            e[(i, j)] = BigInt::from(rng.gen_range(-3..=3));
        }
        m = e.mul(&m);
    }
    m
}

fn closure_subgroup_count(a: &FinAb) -> usize {
    let elems: Vec<Vec<u64>> = a.elements().collect();
    let size = elems.len();
    let mut trivial = vec![false; size];
    trivial[0] = true;
    let mut seen = BTreeSet::from([trivial.clone()]);
    let mut stack = vec![trivial];
    while let Some(s) = stack.pop() {
        for g in 0..size {
            if s[g] {
                continue;
            }
            let mut next = s.clone();
            let mut frontier: Vec<usize> = (0..size).filter(|&i| s[i]).collect();
            while let Some(x) = frontier.pop() {
                let y = a.index_of(&a.add(&elems[x], &elems[g]));
                if !next[y] {
                    next[y] = true;
                    frontier.push(y);
                }
            }
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    seen.len()
}

fn integer_algebra() -> Check {
    let mut rng = StdRng::seed_from_u64(20261018);
    for _ in 0..1000 {
        let m = random_matrix(&mut rng);
        let s = smith_normal_form(&m);
        ensure!(s.u.mul(&m).mul(&s.v) == s.d, "UMV != D for {m}");
        ensure!(
            s.u.is_unimodular() && s.v.is_unimodular(),
            "transforms for {m}"
        );
        let d = s.diagonal();
        for w in d.windows(2) {
            let ok = if w[0] == BigInt::from(0) {
                w[1] == BigInt::from(0)
            } else {
                &w[1] % &w[0] == BigInt::from(0)
            };
            ensure!(ok, "divisibility for {m}");
        }
        let w = random_unimodular(&mut rng, m.rows());
        ensure!(
            hermite_normal_form(&w.mul(&m)) == hermite_normal_form(&m),
            "HNF span for {m}"
        );
    }
    let groups: [&[u64]; 10] = [
        &[2, 2, 2],
        &[4, 4],
        &[2, 4, 8],
        &[16, 16],
        &[256],
        &[2, 2, 2, 2],
        &[3, 9],
        &[4, 4, 4],
        &[2, 6, 12],
        &[4, 8, 8],
    ];
    for m in groups {
        let a = FinAb::new(m.to_vec()).unwrap();
        let ours = subgroups(&a, 10_000).unwrap().len();
        let brute = closure_subgroup_count(&a);
        ensure!(
            ours == brute,
            "{m:?}: {ours} subgroups, brute force {brute}"
        );
    }
    let small: [&[u64]; 6] = [&[2], &[4], &[2, 2], &[6], &[2, 4], &[3, 3]];
    for h in small {
        for k in small {
            let (h, k) = (
                FinAb::new(h.to_vec()).unwrap(),
                FinAb::new(k.to_vec()).unwrap(),
            );
            let ours = homomorphisms(&h, &k, false, 10_000).unwrap().len();
            let brute: usize = h
                .moduli()
                .iter()
                .map(|&m| {
                    k.elements()
                        .filter(|x| k.scale(m, x).iter().all(|&c| c == 0))
                        .count()
                })
                .product();
            ensure!(ours == brute, "Hom({h}, {k}): {ours} vs {brute}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("centers from Cartan matrices", center_table),
        (
            "order-2 central subgroup orbits of D4, D6, D8",
            order_two_orbit_counts,
        ),
        ("SO4 / PGL2×SL2 twin certificate", twin_pair),
        (
            "varieties of simple, simply connected and torus groups",
            uniqueness,
        ),
        (
            "rank 1 and rank 2 enumeration against the oracle",
            rank_enumeration,
        ),
        ("GL_n chain", general_linear_chain),
        (
            "invariant formulas and criteria over the corpus",
            formula_suite,
        ),
        ("integer and finite abelian algebra", integer_algebra),
    ];
    let mut failed = 0;
    for (i, (label, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {label} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {label}: {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

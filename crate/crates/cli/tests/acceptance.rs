//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use veronese_core::algebra::{binomial, BiRationalFn, GaussianRational, WeightedMatrix};
use veronese_core::geometry::{
    closed_form_curvature, closed_form_kahler_angle, closed_form_metric_density, coincidence_check, gauss_bonnet,
    gauss_curvature, immersion, kahler_angle, metric_density, radius, total_action,
};
use veronese_core::krawtchouk::{kraw_rational, three_term_recurrence};
use veronese_core::model::{
    closed_form_fk, closed_form_projector, el_residual_projector, el_residual_vector, higher_rank_projector,
    iterated_raise, projector_from_vector, raise_projector, Ladder, ModelInstance, ProjectorField, RankProfile,
};
use veronese_core::quadrature::QuadConfig;
use veronese_core::spin::{
    eigencheck, lowering_recurrence_holds, projector_recurrence_spin, projector_sum_sz, raising_recurrence_holds,
    sigma_matrices, spin_matrices, tridiagonal_sz, Direction,
};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn inst(n: usize) -> ModelInstance {
    ModelInstance::new(n).expect("valid order")
}

fn el_exactness() -> Verdict {
    let mut count = 0;
    for n in 1..=5 {
        for k in 0..=n {
            let p = closed_form_projector(inst(n), k).map_err(|e| e.to_string())?;
            ensure(el_residual_projector(&p.mat).is_zero(), || format!("projector residual N={n} k={k}"))?;
            let f = closed_form_fk(inst(n), k).map_err(|e| e.to_string())?;
            let r = el_residual_vector(&f).map_err(|e| e.to_string())?;
            ensure(r.is_zero(), || format!("vector residual N={n} k={k}"))?;
            count += 2;
        }
    }
    Ok(format!("{count} residuals identically zero, N ≤ 5"))
}

fn projector_ok(p: &ProjectorField, rank: i64) -> bool {
    &p.mat * &p.mat == p.mat && p.mat.adjoint() == p.mat && p.mat.trace() == BiRationalFn::from_int(rank)
}

fn projector_algebra() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20_251_015);
    let mut profiles_checked = 0;
    for n in 1..=5 {
        let i = inst(n);
        let ps: Vec<_> = i.levels().map(|k| closed_form_projector(i, k).unwrap()).collect();
        let mut sum = WeightedMatrix::zeros(n);
        for (k, pk) in ps.iter().enumerate() {
            ensure(projector_ok(pk, 1), || format!("P_{k} at N={n}"))?;
            for (l, pl) in ps.iter().enumerate() {
                let expected = if k == l { pk.mat.clone() } else { WeightedMatrix::zeros(n) };
                ensure(&pk.mat * &pl.mat == expected, || format!("P_{k} P_{l} at N={n}"))?;
            }
            sum = &sum + &pk.mat;
        }
        ensure(sum == WeightedMatrix::identity(n), || format!("completeness at N={n}"))?;
        let masks: Vec<u64> = if n <= 3 {
            (0..1u64 << (n + 1)).collect()
        } else {
            (0..10).map(|_| rng.gen_range(0..1u64 << (n + 1))).collect()
        };
        for mask in masks {
            let profile = RankProfile::from_mask(mask, n + 1);
            let p = higher_rank_projector(i, &profile).unwrap();
            ensure(projector_ok(&p, profile.rank() as i64), || format!("profile {mask:#b} at N={n}"))?;
            profiles_checked += 1;
        }
    }
    Ok(format!("orthogonality, completeness, traces; {profiles_checked} rank profiles"))
}

fn iterate(
    mut p: ProjectorField,
    steps: usize,
    f: impl Fn(&ProjectorField) -> Ladder<ProjectorField>,
) -> Option<ProjectorField> {
    for _ in 0..steps {
        p = f(&p).value()?;
    }
    Some(p)
}

fn route_equivalence() -> Verdict {
    for n in 1..=4 {
        let i = inst(n);
        let s = spin_matrices(i);
        let p0 = closed_form_projector(i, 0).unwrap();
        for k in 0..=n {
            let closed_f = closed_form_fk(i, k).unwrap();
            let iter_f = iterated_raise(i, k).value().ok_or("iterated raise annihilated early")?;
            ensure(iter_f.vec == closed_f.vec, || format!("vector route N={n} k={k}"))?;
            let closed_p = closed_form_projector(i, k).unwrap();
            ensure(projector_from_vector(&closed_f).unwrap().mat == closed_p.mat, || format!("f⊗f† N={n} k={k}"))?;
            let analytic = iterate(p0.clone(), k, raise_projector).ok_or("analytic route annihilated")?;
            let algebraic = iterate(p0.clone(), k, |p| projector_recurrence_spin(&s, p, Direction::Raise))
                .ok_or("spin route annihilated")?;
            ensure(analytic.mat == closed_p.mat, || format!("analytic projector route N={n} k={k}"))?;
            ensure(algebraic.mat == closed_p.mat, || format!("spin projector route N={n} k={k}"))?;
            ensure(raising_recurrence_holds(&s, k).unwrap(), || format!("S+ recurrence N={n} k={k}"))?;
            ensure(lowering_recurrence_holds(&s, k).unwrap(), || format!("S- recurrence N={n} k={k}"))?;
        }
    }
    Ok("closed forms = derivative routes = spin routes, N ≤ 4".into())
}

fn su2(z: &WeightedMatrix, plus: &WeightedMatrix, minus: &WeightedMatrix) -> bool {
    z.commutator(plus).unwrap() == *plus
        && z.commutator(minus).unwrap() == -minus
        && plus.commutator(minus).unwrap() == z.scale_const(&GaussianRational::from_int(2))
}

fn spin_structure() -> Verdict {
    for n in 1..=6 {
        let sigma = sigma_matrices(inst(n));
        ensure(su2(&sigma.z, &sigma.plus, &sigma.minus), || format!("σ relations N={n}"))?;
        let s = spin_matrices(inst(n));
        ensure(su2(&s.sz, &s.splus, &s.sminus), || format!("S relations N={n}"))?;
    }
    for n in 1..=5 {
        let i = inst(n);
        let s = spin_matrices(i);
        ensure(s.sz == tridiagonal_sz(i), || format!("tridiagonal S^z N={n}"))?;
        ensure(s.sz == projector_sum_sz(i).unwrap(), || format!("Σ(k−s)P_k N={n}"))?;
        for k in 0..=n {
            ensure(eigencheck(&s, &closed_form_fk(i, k).unwrap()).unwrap(), || format!("eigenvalue N={n} k={k}"))?;
        }
    }
    Ok("commutators N ≤ 6; three S^z forms agree and spectrum {k−s}, N ≤ 5".into())
}

fn geometry_closed_forms() -> Verdict {
    for n in 1..=5 {
        let i = inst(n);
        for k in 0..=n {
            ensure(metric_density(i, k).unwrap() == closed_form_metric_density(i, k), || format!("metric N={n} k={k}"))?;
            ensure(gauss_curvature(i, k).unwrap() == Some(closed_form_curvature(i, k)), || format!("K N={n} k={k}"))?;
            ensure(kahler_angle(i, k).unwrap() == Some(closed_form_kahler_angle(i, k)), || format!("cos θ N={n} k={k}"))?;
        }
    }
    Ok("metric density, curvature and Kähler cosine exact, N ≤ 5".into())
}

fn sphere_property() -> Verdict {
    let quarter = BigRational::new(1.into(), 4.into());
    let mut flagged = Vec::new();
    for n in 1..=5 {
        let i = inst(n);
        for k in 0..=n {
            let x = immersion(i, k).unwrap();
            ensure(x.is_anti_hermitian() && x.is_traceless(), || format!("X_{k} ∉ su at N={n}"))?;
            let r = radius(i, k).unwrap();
            let r2 = r.radius_squared.clone().ok_or_else(|| format!("(X_{k},X_{k}) not constant at N={n}"))?;
            ensure(r2 > BigRational::zero(), || format!("R² ≤ 0 at N={n} k={k}"))?;
            if n == 1 {
                ensure(r2 == quarter, || format!("R_{k}² = {r2} at N=1"))?;
            }
            if !r.agrees {
                flagged.push(format!("({n},{k})"));
            }
        }
        let pairs = coincidence_check(i).unwrap().coinciding;
        let expected: Vec<(usize, usize)> = if n == 1 { vec![(0, 1)] } else { vec![] };
        ensure(pairs == expected, || format!("coincidences {pairs:?} at N={n}"))?;
    }
    ensure(flagged.contains(&"(1,1)".to_string()), || "printed radius mismatch at N=1, k=1 not detected".into())?;
    Ok(format!(
        "(X_k,X_k) constant, N=1 radii 1/4 and X_0 = X_1, no other coincidences; printed radius formula flagged at (N,k) = {}",
        flagged.join(" ")
    ))
}

fn quadratures() -> Verdict {
    let cfg = QuadConfig::default();
    let limit = Duration::from_secs(10);
    let mut slowest = Duration::ZERO;
    let mut worst_rel = 0.0f64;
    let mut worst_gb = 0.0f64;
    for n in 1..=4 {
        let i = inst(n);
        for k in 0..=n {
            let t = Instant::now();
            let action = total_action(i, k, &cfg).map_err(|e| e.to_string())?.value;
            let ta = t.elapsed();
            // 2π(2sk + s − k²) with s = n/2
            let expected = std::f64::consts::PI * (2 * n * k + n - 2 * k * k) as f64;
            let rel = (action - expected).abs() / expected;
            ensure(rel < 1e-6, || format!("action N={n} k={k}: {action} vs {expected}"))?;
            let t = Instant::now();
            let gb = gauss_bonnet(i, k, &cfg).map_err(|e| e.to_string())?.value;
            let tg = t.elapsed();
            ensure((gb - 2.0).abs() < 1e-6, || format!("Gauss–Bonnet N={n} k={k}: {gb}"))?;
            ensure(ta < limit && tg < limit, || format!("integral too slow at N={n} k={k}"))?;
            slowest = slowest.max(ta).max(tg);
            worst_rel = worst_rel.max(rel);
            worst_gb = worst_gb.max((gb - 2.0).abs());
        }
    }
    Ok(format!(
        "max action rel. error {worst_rel:.1e}, max |χ−2| {worst_gb:.1e}, slowest integral {:.3} s",
        slowest.as_secs_f64()
    ))
}

fn choose(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(n, k))
}

fn krawtchouk_layer() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let params: Vec<BigRational> = (0..5)
        .map(|_| {
            let d: i64 = rng.gen_range(2..=101);
            BigRational::new(rng.gen_range(1..d).into(), d.into())
        })
        .collect();
    for p in &params {
        let q = BigRational::one() - p;
        for n in 1..=8 {
            let table: Vec<Vec<BigRational>> = (0..=n).map(|j| (0..=n).map(|x| kraw_rational(j, x, n, p)).collect()).collect();
            for j in 0..=n {
                for x in 0..=n {
                    ensure(table[j][x] == table[x][j], || format!("duality N={n} p={p} ({j},{x})"))?;
                    ensure(table[j][x] == three_term_recurrence(j, x, n, p), || format!("recurrence N={n} p={p}"))?;
                }
            }
            for j in 0..=n {
                for l in 0..=n {
                    let sum: BigRational = (0..=n)
                        .map(|x| choose(n, x) * num_traits::pow(p.clone(), x) * num_traits::pow(q.clone(), n - x) * &table[j][x] * &table[l][x])
                        .sum();
                    let expected = if j == l { num_traits::pow(&q / p, j) / choose(n, j) } else { BigRational::zero() };
                    ensure(sum == expected, || format!("orthogonality N={n} p={p} ({j},{l})"))?;
                }
            }
        }
    }
    let list: Vec<String> = params.iter().map(|p| p.to_string()).collect();
    Ok(format!("N ≤ 8 at p ∈ {{{}}}", list.join(", ")))
}

fn cli_contract() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_veronese");
    let status = Command::new(bin).args(["verify", "--two-s", "3"]).output().map_err(|e| e.to_string())?;
    ensure(status.status.code() == Some(0), || format!("verify --two-s 3 exited {:?}", status.status.code()))?;
    let export = || {
        Command::new(bin)
            .args(["surface", "--two-s", "1", "--k", "0", "--grid", "11", "--radius", "3", "--format", "csv"])
            .output()
            .map(|o| o.stdout)
            .map_err(|e| e.to_string())
    };
    let (a, b) = (export()?, export()?);
    ensure(a == b, || "surface export differs between runs".into())?;
    let text = String::from_utf8(a).map_err(|e| e.to_string())?;
    let rows: Vec<&str> = text.lines().skip(2).collect();
    ensure(rows.len() == 121, || format!("{} rows", rows.len()))?;
    let mut worst = 0.0f64;
    for row in rows {
        let v: Vec<f64> = row.split(',').map(|x| x.parse().unwrap()).collect();
        let norm = v[2..v.len() - 1].iter().map(|c| c * c).sum::<f64>().sqrt();
        worst = worst.max((norm - 0.5).abs());
    }
    ensure(worst <= 1e-10, || format!("norm deviation {worst:e}"))?;
    Ok(format!("verify exit 0; 121 identical rows, max |‖X‖ − 1/2| = {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("EL exactness", el_exactness),
        ("projector algebra", projector_algebra),
        ("route equivalence", route_equivalence),
        ("spin structure", spin_structure),
        ("geometry closed forms", geometry_closed_forms),
        ("sphere property", sphere_property),
        ("quadratures", quadratures),
        ("Krawtchouk layer", krawtchouk_layer),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS criterion {}: {name} ({secs:.1} s): {detail}", idx + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({secs:.1} s): {detail}", idx + 1);
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

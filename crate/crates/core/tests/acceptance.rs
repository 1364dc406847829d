//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use meshwork::cluster::{self, RelationKind};
use meshwork::grassmann::PoincareTable;
use meshwork::oracle::{self, ExplicitRep, FieldSpec, DEFAULT_BUDGET};
use meshwork::{ArQuiver, DimVector, DynkinType, FTable, Integer, LaurentPolynomial, ModuleExpr, OneVarPolynomial, Quiver};
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const LIMIT_COUNTS: Duration = Duration::from_secs(1);
const LIMIT_EXCHANGE: Duration = Duration::from_secs(60);
const LIMIT_D4_EXAMPLE: Duration = Duration::from_secs(10);
const LIMIT_PARITY: Duration = Duration::from_secs(120);
const LIMIT_ORACLE: Duration = Duration::from_secs(120);
const PRIMES: [u64; 4] = [2, 3, 5, 7];
const SEED: u64 = 0x6d65_7368;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Up to `limit` orientations of the standard diagram, all distinct.
fn orientations(ty: DynkinType, limit: usize) -> Vec<Quiver> {
    let edges = ty.standard_edges().len();
    (0..1u64 << edges).take(limit).map(|mask| Quiver::with_orientation(ty, mask)).collect()
}

fn knit(q: &Quiver) -> Result<ArQuiver, String> {
    ArQuiver::knit(q).map_err(|e| format!("{}: {e}", q.to_text().trim()))
}

fn subspace_d4() -> Quiver {
    Quiver::dynkin(DynkinType::d(4), &[(1, 4), (2, 4), (3, 4)]).expect("valid D4")
}

fn tested_types() -> Vec<DynkinType> {
    vec![
        DynkinType::a(2),
        DynkinType::a(3),
        DynkinType::a(4),
        DynkinType::a(5),
        DynkinType::d(4),
        DynkinType::d(5),
        DynkinType::e(6),
    ]
}

fn criterion_1() -> Outcome {
    let expected = [(DynkinType::a(2), 3), (DynkinType::a(3), 6), (DynkinType::a(4), 10), (DynkinType::a(5), 15),
        (DynkinType::d(4), 12), (DynkinType::d(5), 20), (DynkinType::e(6), 36)];
    let mut runs = 0;
    for (ty, count) in expected {
        for q in orientations(ty, 4) {
            let ar = knit(&q)?;
            ensure(ar.len() == count, || format!("{ty}: {} indecomposables, expected {count}", ar.len()))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} quivers"))
}

fn criterion_2() -> Outcome {
    let q = Quiver::dynkin(DynkinType::a(2), &[(1, 2)]).expect("valid A2");
    let ar = knit(&q)?;
    let ft = FTable::build(&ar).map_err(|e| e.to_string())?;
    let vars = cluster::cluster_variables(&ar, &ft).map_err(|e| e.to_string())?;
    let laurent = |terms: &[[i64; 2]]| LaurentPolynomial::from_terms(2, terms.iter().map(|e| (e.to_vec(), Integer::one())));
    let mut expected = vec![
        laurent(&[[-1, 1], [-1, 0]]),
        laurent(&[[0, -1], [-1, 0], [-1, -1]]),
        laurent(&[[1, -1], [0, -1]]),
    ];
    let mut got: Vec<LaurentPolynomial> = vars[2..].to_vec();
    let key = |p: &LaurentPolynomial| p.display_with("x");
    expected.sort_by_key(key);
    got.sort_by_key(key);
    ensure(got == expected, || format!("got {:?}", got.iter().map(key).collect::<Vec<_>>()))?;
    Ok("3 non-initial variables".into())
}

fn criterion_3() -> Outcome {
    let (mut meshes, mut injective, mut gvec) = (0, 0, 0);
    for ty in tested_types() {
        for q in orientations(ty, 2) {
            let ar = knit(&q)?;
            let ft = FTable::build(&ar).map_err(|e| e.to_string())?;
            let report = cluster::verify_exchange(&ar, &ft);
            if let Some(bad) = report.failures().next() {
                return Err(format!("{ty}: {:?} relation for {} fails", bad.kind, bad.subject));
            }
            meshes += report.count(RelationKind::Mesh);
            injective += report.count(RelationKind::Injective);
            gvec += report.count(RelationKind::GVector);
        }
    }
    Ok(format!("{meshes} mesh, {injective} injective, {gvec} g-vector relations"))
}

fn criterion_4() -> Outcome {
    let mut divisions = 0;
    for ty in tested_types() {
        for q in orientations(ty, 3) {
            let ar = knit(&q)?;
            let ft = FTable::build(&ar).map_err(|e| format!("{ty}: {e}"))?;
            let n = q.vertex_count();
            for mesh in ar.meshes() {
                let middle = mesh.middle.iter().fold(meshwork::IntPolynomial::one(n), |acc, m| &acc * ft.get(*m));
                let mut rhs = middle;
                rhs.add_term(ar.dim(mesh.head).entries().iter().map(|&x| x as u32).collect(), Integer::one());
                ensure(&(ft.get(mesh.head) * ft.get(mesh.tail)) == &rhs, || {
                    format!("{ty}: F-relation fails at {}", ar.vertex(mesh.head).label())
                })?;
                divisions += 1;
            }
        }
    }
    Ok(format!("{divisions} exact divisions"))
}

fn criterion_5() -> Outcome {
    let q = subspace_d4();
    let ar = knit(&q)?;
    let ft = FTable::build(&ar).map_err(|e| e.to_string())?;
    let pt = PoincareTable::build(&ar).map_err(|e| e.to_string())?;
    let e = DimVector::from([1, 1, 1, 2]);
    let d = DimVector::from([2, 2, 2, 3]);
    let by_dim = |v: [i64; 4]| ar.vertex_by_dim(&v.into()).map_err(|e| e.to_string());
    let middle = ModuleExpr::from_vertices([by_dim([1, 1, 0, 1])?, by_dim([1, 0, 1, 1])?, by_dim([0, 1, 1, 1])?]);
    let blow_up = OneVarPolynomial::from_coeffs([1, 0, 4, 0, 1].map(Integer::from));

    let p = pt.poincare(&ar, &middle, &e).map_err(|e| e.to_string())?;
    ensure(p == blow_up, || format!("P = {p}"))?;
    let chi = ft.euler_char(&ar, &middle, &e).map_err(|e| e.to_string())?;
    ensure(chi == Integer::from(6), || format!("χ = {chi}"))?;
    let min_dim = q.euler_form(&e, &(&d - &e)).map_err(|e| e.to_string())?;
    ensure(min_dim == 2 && p.degree() == Some(2 * min_dim), || format!("⟨e,d−e⟩ = {min_dim}, deg P = {:?}", p.degree()))?;
    let split = pt.poincare_split(&ar, by_dim([1, 1, 1, 1])?, &e).map_err(|e| e.to_string())?;
    ensure(split == blow_up, || format!("split route gives {split}"))?;

    let target = OneVarPolynomial::from_coeffs([1, 4, 1].map(Integer::from));
    for (name, text) in [("E", oracle::D4_BLOWUP_E), ("F", oracle::D4_BLOWUP_F)] {
        let rep = ExplicitRep::from_json(text).map_err(|e| e.to_string())?;
        let counts = oracle::counts_over(&rep, &e, &[2, 3, 5], DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let t = oracle::interpolate_count(&counts, 2).map_err(|e| e.to_string())?;
        ensure(t == target, || format!("fixture {name}: counts interpolate to {}", t.display_with("t")))?;
    }
    Ok("P = 1 + 4*q^2 + q^4, χ = 6, both fixtures count 1 + 4t + t^2".into())
}

fn criterion_6() -> Outcome {
    let mut checked = 0usize;
    for q in [Quiver::linear(DynkinType::a(4)), subspace_d4(), Quiver::linear(DynkinType::e(6))] {
        let ar = knit(&q)?;
        let ft = FTable::build(&ar).map_err(|e| e.to_string())?;
        // the build rejects odd exponents, negative coefficients and Laurent tails
        let pt = PoincareTable::build(&ar).map_err(|e| e.to_string())?;
        for v in ar.ids() {
            let m = ModuleExpr::indecomposable(v);
            for e in ar.dim(v).box_below() {
                let p = pt.get(v, &e);
                ensure(p.is_polynomial() && p.has_only_even_exponents() && p.has_nonnegative_coeffs(), || {
                    format!("{}: P_{e} = {p}", ar.vertex(v).label())
                })?;
                let chi = ft.euler_char(&ar, &m, &e).map_err(|e| e.to_string())?;
                ensure(p.value_at_one() == chi, || format!("{}: P_{e}(1) = {} ≠ χ = {chi}", ar.vertex(v).label(), p.value_at_one()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} Grassmannians"))
}

fn rigid_sweep(mut visit: impl FnMut(&ArQuiver, &FTable, &PoincareTable, &DimVector, &ModuleExpr) -> Result<usize, String>) -> Outcome {
    let mut checked = 0;
    for q in [Quiver::linear(DynkinType::a(4)), Quiver::with_orientation(DynkinType::a(4), 0b101), subspace_d4(), Quiver::linear(DynkinType::d(4))] {
        let ar = knit(&q)?;
        let ft = FTable::build(&ar).map_err(|e| e.to_string())?;
        let pt = PoincareTable::build(&ar).map_err(|e| e.to_string())?;
        for d in DimVector::new(vec![2; q.vertex_count()]).box_below() {
            let m = ar.generic_decomposition(&d).map_err(|e| e.to_string())?;
            checked += visit(&ar, &ft, &pt, &d, &m)?;
        }
    }
    Ok(format!("{checked} pairs (e, d)"))
}

fn criterion_7() -> Outcome {
    rigid_sweep(|ar, _, pt, d, m| {
        let mut count = 0;
        for e in d.box_below() {
            let p = pt.poincare(ar, m, &e).map_err(|e| e.to_string())?;
            if p.is_zero() {
                continue;
            }
            let dim = ar.quiver().euler_form(&e, &(d - &e)).map_err(|e| e.to_string())?;
            ensure(p.degree() == Some(2 * dim) && p.reflect(2 * dim) == p, || format!("d = {d}, e = {e}: P = {p}, ⟨e,d−e⟩ = {dim}"))?;
            count += 1;
        }
        Ok(count)
    })
}

fn criterion_8() -> Outcome {
    rigid_sweep(|ar, ft, _, d, m| {
        for e in d.box_below() {
            let nonempty = ar.grassmannian_nonempty(&e, d).map_err(|e| e.to_string())?;
            let chi = ft.euler_char(ar, m, &e).map_err(|e| e.to_string())?;
            ensure(nonempty == (chi >= Integer::one()), || format!("d = {d}, e = {e}: criterion {nonempty}, χ = {chi}"))?;
        }
        Ok(d.box_below().len())
    })
}

fn explicit_module(ar: &ArQuiver, m: &ModuleExpr) -> Result<ExplicitRep, String> {
    let q = ar.quiver();
    let mut rep = ExplicitRep::new(q.clone(), FieldSpec::Rational, DimVector::zeros(q.vertex_count()), q.arrows().iter().map(|_| Vec::new()).collect())
        .map_err(|e| e.to_string())?;
    for v in m.expanded() {
        let support: Vec<usize> = (0..q.vertex_count()).filter(|&i| ar.dim(v)[i] > 0).collect();
        let summand = ExplicitRep::thin(q, FieldSpec::Rational, &support).map_err(|e| e.to_string())?;
        rep = rep.direct_sum(&summand).map_err(|e| e.to_string())?;
    }
    Ok(rep)
}

fn criterion_9() -> Outcome {
    let mut pairs = 0;
    let mut counted = 0;
    for n in 2..=4 {
        for q in orientations(DynkinType::a(n), 3) {
            let ar = knit(&q)?;
            let ft = FTable::build(&ar).map_err(|e| e.to_string())?;
            let pt = PoincareTable::build(&ar).map_err(|e| e.to_string())?;
            let intervals: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
            for &(a, b) in &intervals {
                for &(c, d) in &intervals {
                    let x = ExplicitRep::interval(&q, FieldSpec::Rational, a, b).map_err(|e| e.to_string())?;
                    let y = ExplicitRep::interval(&q, FieldSpec::Rational, c, d).map_err(|e| e.to_string())?;
                    let explicit = oracle::hom_space_dim(&x, &y).map_err(|e| e.to_string())? as i64;
                    let vx = ar.vertex_by_dim(x.dims()).map_err(|e| e.to_string())?;
                    let vy = ar.vertex_by_dim(y.dims()).map_err(|e| e.to_string())?;
                    let knitted = ar.hom_ind(vx, vy);
                    ensure(explicit == knitted, || format!("A{n}: hom({}, {}) = {explicit} vs {knitted}", x.dims(), y.dims()))?;
                    pairs += 1;
                }
            }
            for d in DimVector::new(vec![2; n]).box_below() {
                let m = ar.generic_decomposition(&d).map_err(|e| e.to_string())?;
                let rep = explicit_module(&ar, &m)?;
                for e in d.box_below() {
                    let counts = oracle::counts_over(&rep, &e, &PRIMES, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
                    let t = oracle::interpolate_count(&counts, PRIMES.len() - 1).map_err(|err| format!("d = {d}, e = {e}: {err}"))?;
                    let chi = ft.euler_char(&ar, &m, &e).map_err(|e| e.to_string())?;
                    ensure(oracle::euler_estimate(&t) == chi, || format!("A{n} d = {d}, e = {e}: counts {} vs χ = {chi}", t.display_with("t")))?;
                    let p = pt.poincare(&ar, &m, &e).map_err(|e| e.to_string())?;
                    ensure(p.halve_exponents().as_ref() == Some(&t), || format!("A{n} d = {d}, e = {e}: counts {} vs P = {p}", t.display_with("t")))?;
                    counted += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} interval pairs, {counted} counted Grassmannians"))
}

/// A random decomposition of `d` into positive roots.
fn random_decomposition(ar: &ArQuiver, d: &DimVector, rng: &mut ChaCha8Rng) -> ModuleExpr {
    let mut rest = d.clone();
    let mut m = ModuleExpr::zero();
    while !rest.is_zero() {
        let fitting: Vec<_> = ar.ids().filter(|&v| ar.dim(v).le(&rest)).collect();
        let v = *fitting.choose(rng).expect("a simple root always fits");
        rest = &rest - ar.dim(v);
        m = m.plus(v, 1);
    }
    m
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut compared = 0;
    for q in [Quiver::linear(DynkinType::a(4)), subspace_d4(), Quiver::with_orientation(DynkinType::d(5), 0b0110), Quiver::linear(DynkinType::e(6))] {
        let ar = knit(&q)?;
        for _ in 0..20 {
            let d = DimVector::new((0..q.vertex_count()).map(|_| rng.gen_range(0..=3)).collect());
            let generic = ar.generic_decomposition(&d).map_err(|e| e.to_string())?;
            let summands = generic.expanded();
            for &a in &summands {
                for &b in &summands {
                    ensure(ar.ext_ind(a, b) == 0, || format!("d = {d}: Ext({}, {}) ≠ 0", ar.vertex(a).label(), ar.vertex(b).label()))?;
                }
            }
            for _ in 0..100 {
                let other = random_decomposition(&ar, &d, &mut rng);
                let below = ar.degeneration_leq(&generic, &other).map_err(|e| e.to_string())?;
                ensure(below, || format!("d = {d}: {} does not degenerate to {}", generic.display(&ar), other.display(&ar)))?;
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} comparisons"))
}

fn criterion_11() -> Outcome {
    let mut checked = 0;
    for q in [Quiver::linear(DynkinType::a(3)), Quiver::with_orientation(DynkinType::a(3), 0b10), subspace_d4(), Quiver::with_orientation(DynkinType::d(4), 0b011)] {
        let op = q.opposite();
        let (ar, ar_op) = (knit(&q)?, knit(&op)?);
        let (ft, ft_op) = (FTable::build(&ar).map_err(|e| e.to_string())?, FTable::build(&ar_op).map_err(|e| e.to_string())?);
        for v in ar.ids() {
            let m = ModuleExpr::indecomposable(v);
            for e in ar.dim(v).box_below() {
                let ok = meshwork::grassmann::check_duality(&ar, &ft, &ar_op, &ft_op, &m, &e).map_err(|e| e.to_string())?;
                ensure(ok, || format!("{}: e = {e}", ar.vertex(v).label()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} pairs"))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome, Option<Duration>); 11] = [
        (1, criterion_1, Some(LIMIT_COUNTS)),
        (2, criterion_2, None),
        (3, criterion_3, Some(LIMIT_EXCHANGE)),
        (4, criterion_4, None),
        (5, criterion_5, Some(LIMIT_D4_EXAMPLE)),
        (6, criterion_6, Some(LIMIT_PARITY)),
        (7, criterion_7, None),
        (8, criterion_8, None),
        (9, criterion_9, Some(LIMIT_ORACLE)),
        (10, criterion_10, None),
        (11, criterion_11, None),
    ];
    let mut failed = 0;
    for (n, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {n}: PASS ({detail}; {elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

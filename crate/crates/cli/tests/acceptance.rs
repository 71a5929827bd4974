//! The acceptance gate: one test per shipping criterion. Each test ends by
//! printing a single `criterion N: PASS` line (visible with --nocapture);
//! a failed assertion marks the criterion failed.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use zeroloc::sample::{random_point, random_poly};
use zeroloc::{
    chart_base_ring, oracle_equivalence_run, parse_poly, quadric_example_checks, Cell,
    ChartConnection, ConstructibleSet, GaussianRational, Ideal, ModulePresentation, Poly,
    PolyMatrix, PolyRing,
};

fn grid_points(radius: i64) -> Vec<Vec<GaussianRational>> {
    let mut points = Vec::new();
    for a in -radius..=radius {
        for b in -radius..=radius {
            points.push(vec![
                GaussianRational::from_integer(a),
                GaussianRational::from_integer(b),
            ]);
        }
    }
    points
}

fn axis_presentation() -> ModulePresentation {
    let ring = PolyRing::new(vec!["x", "y"]).unwrap();
    let x = Poly::variable(&ring, 0);
    let y = Poly::variable(&ring, 1);
    let a = PolyMatrix::new(&ring, 2, 1, vec![-&y, x]).unwrap();
    ModulePresentation::new(a, vec![Poly::one(&ring), Poly::zero(&ring)]).unwrap()
}

/// Criterion 1: the worked example. The pruned locus of the section with
/// lift (1, 0) against the column (-y, x) is the y-axis minus the origin:
/// exact grid membership on {-5..5}^2 and exact symbolic cells, under 1 s.
#[test]
fn criterion_1_worked_example_reproduction() {
    let start = Instant::now();
    let pres = axis_presentation();
    let locus = pres.zero_locus(true);

    let mut checked = 0;
    for point in grid_points(5) {
        let expected = point[0].is_zero() && !point[1].is_zero();
        assert_eq!(
            locus.contains_point(&point).unwrap(),
            expected,
            "grid point ({}, {})",
            point[0],
            point[1]
        );
        checked += 1;
    }
    assert_eq!(checked, 121);

    let ring = pres.ring();
    let x = Poly::variable(ring, 0);
    let y = Poly::variable(ring, 1);
    let expected_cell = Cell::new(-&y, Ideal::new(ring, vec![-&x]).unwrap()).unwrap();
    assert_eq!(locus.cells().len(), 1);
    assert_eq!(locus.cells()[0].open_part(), expected_cell.open_part());
    assert_eq!(locus.cells()[0].ideal(), expected_cell.ideal());

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("criterion 1: PASS — punctured-axis example, exact grid and cells ({elapsed:?})");
}

/// Criterion 2: membership through the constructible set agrees with the
/// direct linear-algebra rank oracle on 200 random presentations x 25
/// random points, pruned and unpruned, within five minutes.
#[test]
fn criterion_2_oracle_equivalence_at_scale() {
    let start = Instant::now();
    let report = oracle_equivalence_run(20260814, 200, 25);
    assert_eq!(report.checks, 5000);
    assert_eq!(report.mismatches, 0, "report: {report:?}");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!("criterion 2: PASS — 5000/5000 oracle agreements ({elapsed:?})");
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Criterion 3: with generic data (entries and section components all
/// distinct indeterminates, so no stratum determinant collapses) the
/// unpruned locus has exactly sum_l C(p,l)C(q,l) cells, and the level-0
/// cell is D(1) ∩ V(entries of A, components of y).
#[test]
fn criterion_3_stratification_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    for trial in 0..20 {
        let p = rng.gen_range(1..=3);
        let q = rng.gen_range(0..=3);
        let mut names = Vec::new();
        for i in 0..p {
            for j in 0..q {
                names.push(format!("a{i}{j}"));
            }
        }
        for i in 0..p {
            names.push(format!("b{i}"));
        }
        let ring = PolyRing::new(names).unwrap();
        let entries: Vec<Poly> = (0..p * q).map(|t| Poly::variable(&ring, t)).collect();
        let a = PolyMatrix::new(&ring, p, q, entries.clone()).unwrap();
        let y: Vec<Poly> = (0..p).map(|i| Poly::variable(&ring, p * q + i)).collect();
        let pres = ModulePresentation::new(a, y.clone()).unwrap();

        let locus = pres.zero_locus(false);
        let expected: usize = (0..=p.min(q)).map(|l| binomial(p, l) * binomial(q, l)).sum();
        assert_eq!(
            locus.cells().len(),
            expected,
            "trial {trial}: p = {p}, q = {q}"
        );

        let level0 = &locus.cells()[0];
        assert!(level0.open_part().is_one(), "trial {trial}");
        let mut gens = entries;
        gens.extend(y);
        let expected_ideal = Ideal::new(&ring, gens).unwrap();
        assert_eq!(level0.ideal(), &expected_ideal, "trial {trial}");
    }
    println!("criterion 3: PASS — generic cell counts and level-0 cells on 20 shapes");
}

/// Criterion 4: pruning drops exactly the cells that are empty over the
/// complex numbers and never changes membership.
#[test]
fn criterion_4_pruning_soundness() {
    let ring = PolyRing::new(vec!["x", "y"]).unwrap();
    let x = Poly::variable(&ring, 0);
    let y = Poly::variable(&ring, 1);
    let cell = |f: &Poly, gens: Vec<Poly>| {
        Cell::new(f.clone(), Ideal::new(&ring, gens).unwrap()).unwrap()
    };

    let vanishing_open = cell(&x, vec![&x * &x]); // D(x) ∩ V(x^2)
    let contradictory = cell(&Poly::one(&ring), vec![Poly::one(&ring)]); // D(1) ∩ V(1)
    let genuine = cell(&y, vec![x.clone()]); // D(y) ∩ V(x)
    let diagonal = cell(&(&x + &y), vec![&x - &y]);

    assert!(ConstructibleSet::new(&ring, vec![vanishing_open.clone()])
        .unwrap()
        .prune()
        .is_empty());
    assert!(ConstructibleSet::new(&ring, vec![contradictory.clone()])
        .unwrap()
        .prune()
        .is_empty());
    let kept = ConstructibleSet::new(&ring, vec![genuine.clone()])
        .unwrap()
        .prune();
    assert_eq!(kept.cells().len(), 1);
    assert_eq!(kept.cells()[0].open_part(), genuine.open_part());
    assert_eq!(kept.cells()[0].ideal(), genuine.ideal());

    let mixed = ConstructibleSet::new(
        &ring,
        vec![vanishing_open, genuine.clone(), contradictory, diagonal.clone()],
    )
    .unwrap();
    let pruned = mixed.prune();
    assert_eq!(pruned.cells().len(), 2);
    assert_eq!(pruned.cells()[0].open_part(), genuine.open_part());
    assert_eq!(pruned.cells()[1].open_part(), diagonal.open_part());

    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut sampled = 0;
    for point in grid_points(5) {
        assert_eq!(
            mixed.contains_point(&point).unwrap(),
            pruned.contains_point(&point).unwrap()
        );
        sampled += 1;
    }
    for _ in 0..500 {
        let point = random_point(&mut rng, 2);
        assert_eq!(
            mixed.contains_point(&point).unwrap(),
            pruned.contains_point(&point).unwrap(),
            "at ({}, {})",
            point[0],
            point[1]
        );
        sampled += 1;
    }
    assert!(sampled >= 500);
    println!("criterion 4: PASS — pruning exact on fixtures, membership stable at {sampled} points");
}

/// Criterion 5: the basis engine. Reduced bases are invariant under
/// generator shuffles, every S-polynomial of an output basis reduces to
/// zero, and x^3 lies in (x^2 + y^2, x*y) with explicit cofactors.
#[test]
fn criterion_5_groebner_engine() {
    let ring = PolyRing::new(vec!["x", "y"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    for trial in 0..50 {
        let gens: Vec<Poly> = (0..rng.gen_range(2..=3))
            .map(|_| random_poly(&mut rng, &ring, 2, 3, 2))
            .collect();
        let mut shuffled = gens.clone();
        shuffled.shuffle(&mut rng);
        let a = Ideal::new(&ring, gens).unwrap();
        let b = Ideal::new(&ring, shuffled).unwrap();
        assert_eq!(a.groebner_basis(), b.groebner_basis(), "trial {trial}");

        let basis = a.groebner_basis();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let (mi, ci) = basis[i].leading().unwrap();
                let (mj, cj) = basis[j].leading().unwrap();
                let lcm = mi.lcm(mj);
                let s = &basis[i].mul_term(&mi.div_into(&lcm), &ci.inverse().unwrap())
                    - &basis[j].mul_term(&mj.div_into(&lcm), &cj.inverse().unwrap());
                assert!(a.normal_form(&s).is_zero(), "S({i},{j}) in trial {trial}");
            }
        }
    }

    let x = Poly::variable(&ring, 0);
    let y = Poly::variable(&ring, 1);
    let g1 = &(&x * &x) + &(&y * &y);
    let g2 = &x * &y;
    let x_cubed = x.pow(3);
    // Cofactor identity: x*(x^2 + y^2) - y*(x*y) = x^3.
    assert_eq!(&(&x * &g1) - &(&y * &g2), x_cubed);
    let ideal = Ideal::new(&ring, vec![g1, g2]).unwrap();
    assert!(ideal.normal_form(&x_cubed).is_zero());
    assert!(ideal.contains(&x_cubed));
    println!("criterion 5: PASS — shuffle-stable bases, vanishing S-polynomials, cofactor check");
}

/// Criterion 6: the tangent-system front end. A flat chart (f ≡ 0) covers
/// the whole tangent space; a q = 0 chart is membership ⟺ vanishing of
/// every sum_k xi_k f[k][j]; shapes are p x q(n+1); (x, 0) always belongs.
#[test]
fn criterion_6_infinitesimal_front_end() {
    let base2 = chart_base_ring(2);
    let zero2 = Poly::zero(&base2);

    // Flat chart: nontrivial connection, identically zero invariant data.
    let a_flat = vec![
        vec![vec![parse_poly("x1", &base2).unwrap(), parse_poly("x2 + 1", &base2).unwrap()]],
        vec![vec![parse_poly("x1*x2", &base2).unwrap(), parse_poly("3", &base2).unwrap()]],
    ];
    let f_flat = vec![vec![zero2.clone(), zero2.clone()], vec![zero2.clone(), zero2.clone()]];
    let flat = ChartConnection::new(2, 2, 1, a_flat, f_flat).unwrap();
    let flat_locus = flat.infinitesimal_locus(true);
    let mut rng = ChaCha8Rng::seed_from_u64(1111);
    for _ in 0..100 {
        let point = random_point(&mut rng, 4);
        assert!(flat_locus.contains_point(&point).unwrap());
    }

    // q = 0 chart: the locus is cut out by the p linear forms in xi alone.
    let f_data = vec![
        vec![parse_poly("x1", &base2).unwrap(), parse_poly("x2 - 1", &base2).unwrap()],
        vec![parse_poly("x2", &base2).unwrap(), parse_poly("x1*x1", &base2).unwrap()],
    ];
    let free = ChartConnection::new(2, 2, 0, vec![vec![], vec![]], f_data.clone()).unwrap();
    let free_locus = free.infinitesimal_locus(false);
    for _ in 0..100 {
        let point = random_point(&mut rng, 4);
        let (base_pt, xi) = point.split_at(2);
        let expected = (0..2).all(|j| {
            let mut acc = GaussianRational::zero();
            for (k, xi_k) in xi.iter().enumerate() {
                acc = &acc + &(xi_k * &f_data[k][j].evaluate(base_pt).unwrap());
            }
            acc.is_zero()
        });
        assert_eq!(free_locus.contains_point(&point).unwrap(), expected);
    }

    // Shape contract for the assembled system.
    for (n, p, q) in [(1, 1, 1), (2, 3, 2), (3, 2, 0), (2, 2, 2)] {
        let base = chart_base_ring(n);
        let zero = Poly::zero(&base);
        let a = vec![vec![vec![zero.clone(); p]; q]; n];
        let f = vec![vec![zero.clone(); p]; n];
        let sys = ChartConnection::new(n, p, q, a, f).unwrap().build_tangent_system();
        assert_eq!(sys.rows(), p, "n={n}, p={p}, q={q}");
        assert_eq!(sys.cols(), q * (n + 1), "n={n}, p={p}, q={q}");
    }

    // Zero tangent vectors always solve the system.
    let base1 = chart_base_ring(1);
    let curved = ChartConnection::new(
        1,
        2,
        1,
        vec![vec![vec![parse_poly("x1", &base1).unwrap(), parse_poly("1", &base1).unwrap()]]],
        vec![vec![parse_poly("x1*x1", &base1).unwrap(), parse_poly("x1 - 2", &base1).unwrap()]],
    )
    .unwrap();
    let curved_locus = curved.infinitesimal_locus(false);
    for _ in 0..50 {
        let mut point = random_point(&mut rng, 2);
        point[1] = GaussianRational::zero();
        assert!(curved_locus.contains_point(&point).unwrap());
        let mut free_point = random_point(&mut rng, 4);
        free_point[2] = GaussianRational::zero();
        free_point[3] = GaussianRational::zero();
        assert!(free_locus.contains_point(&free_point).unwrap());
    }
    println!("criterion 6: PASS — flat chart, q = 0 chart, shape contract, zero-vector membership");
}

/// Criterion 7: every named identity of the built-in quadric example holds
/// exactly, in under a second.
#[test]
fn criterion_7_quadric_symbolic_checks() {
    let start = Instant::now();
    let checks = quadric_example_checks();
    assert!(checks.len() >= 25, "only {} checks", checks.len());
    for check in &checks {
        assert!(check.passed, "check failed: {}", check.name);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!(
        "criterion 7: PASS — {} exact incidence and involution identities ({elapsed:?})",
        checks.len()
    );
}

fn run_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeroloc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("zeroloc-acc-{}-{name}", std::process::id()));
    fs::write(&path, contents).expect("temp file writable");
    path
}

/// Criterion 8: every subcommand is a pure function of its inputs — two
/// runs produce byte-identical stdout and the same exit code.
#[test]
fn criterion_8_cli_determinism() {
    let input = fixture(
        "axis.json",
        r#"{"variables": ["x", "y"], "A": [["-y"], ["x"]], "y": ["1", "0"]}"#,
    );
    let cells_text = String::from_utf8(
        run_cli(&["zero-locus", "--input", input.to_str().unwrap()]).stdout,
    )
    .unwrap();
    let cells = fixture("cells.json", &cells_text);
    let chart = fixture(
        "chart.json",
        r#"{"n": 1, "p": 2, "q": 1, "a": [[["x1", "1"]]], "f": [["x1*x1", "0"]]}"#,
    );

    let input_path = input.to_str().unwrap();
    let cells_path = cells.to_str().unwrap();
    let chart_path = chart.to_str().unwrap();
    let invocations: Vec<Vec<&str>> = vec![
        vec!["zero-locus", "--input", input_path],
        vec!["zero-locus", "--input", input_path, "--no-prune"],
        vec!["member", "--cells", cells_path, "--point", "0,2"],
        vec!["oracle", "--input", input_path, "--point", "0,2"],
        vec!["inf-locus", "--chart", chart_path],
        vec!["fuzz", "--trials", "5", "--seed", "3"],
        vec!["example", "paper-ideal"],
        vec!["example", "quadric"],
    ];
    for args in &invocations {
        let first = run_cli(args);
        let second = run_cli(args);
        assert_eq!(first.status.code(), second.status.code(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "stdout differs for {args:?}");
        assert!(!first.stdout.is_empty(), "{args:?} produced no data");
    }
    println!(
        "criterion 8: PASS — {} subcommand invocations byte-identical across runs",
        invocations.len()
    );
}

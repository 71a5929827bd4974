//! Front end for the tangent-space solvability locus of a variation.
//!
//! A chart supplies, over base coordinates x₁..x_n, the connection
//! coefficients a[k][i][j] of a frame e₁..e_p adapted to a rank-q subbundle
//! and the components f[k][j] of the derivative of a lifted section. At a
//! tangent vector (x, ξ) the section's derivative in direction ξ can be
//! cancelled by a subbundle section φ iff the linear system
//!
//!   Σ_k ξ_k f[k][j]  =  (derivative unknowns and value unknowns, see
//!                        `build_tangent_system`)
//!
//! is solvable: p equations in the q(n+1) unknowns ∂φᵢ/∂x_k and φᵢ. The
//! locus of solvable (x, ξ) is therefore a zero locus in the sense of
//! `zerolocus`, over the ring Q(i)[x₁..x_n, ξ₁..ξ_n].

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constructible::ConstructibleSet;
use crate::error::{Error, Result};
use crate::matrix::PolyMatrix;
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::ring::PolyRing;
use crate::zerolocus::ModulePresentation;

#[derive(Clone, Debug, PartialEq)]
pub struct ChartConnection {
    n: usize,
    p: usize,
    q: usize,
    /// Q(i)[x1..xn].
    base_ring: Arc<PolyRing>,
    /// Connection coefficients, shape n × q × p.
    a: Vec<Vec<Vec<Poly>>>,
    /// Derivative components of the lifted section, shape n × p.
    f: Vec<Vec<Poly>>,
}

/// The base ring Q(i)[x1..xn] a chart's coefficients live in.
pub fn chart_base_ring(n: usize) -> Arc<PolyRing> {
    let vars: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    PolyRing::new(vars).expect("generated names are valid")
}

/// The tangent ring Q(i)[x1..xn, xi1..xin]: base coordinates first, then
/// the fiber coordinates ξ.
pub fn tangent_ring(n: usize) -> Arc<PolyRing> {
    let mut vars: Vec<String> = (1..=n).map(|k| format!("x{k}")).collect();
    vars.extend((1..=n).map(|k| format!("xi{k}")));
    PolyRing::new(vars).expect("generated names are valid")
}

impl ChartConnection {
    /// Validates shapes (a: n × q × p, f: n × p), the rank condition
    /// q ≤ p, and that every entry lives in `chart_base_ring(n)`.
    pub fn new(
        n: usize,
        p: usize,
        q: usize,
        a: Vec<Vec<Vec<Poly>>>,
        f: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("chart rank p must be positive".to_string()));
        }
        if q > p {
            return Err(Error::InvalidInput(format!(
                "subbundle rank q = {q} exceeds total rank p = {p}"
            )));
        }
        let base_ring = chart_base_ring(n);
        let check = |poly: &Poly| -> Result<()> {
            if **poly.ring() != *base_ring {
                return Err(Error::RingMismatch(format!(
                    "chart entry in {} but chart base ring is {}",
                    poly.ring(),
                    base_ring
                )));
            }
            Ok(())
        };
        if a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: a.len() });
        }
        for slice in &a {
            if slice.len() != q {
                return Err(Error::DimensionMismatch { expected: q, got: slice.len() });
            }
            for row in slice {
                if row.len() != p {
                    return Err(Error::DimensionMismatch { expected: p, got: row.len() });
                }
                for entry in row {
                    check(entry)?;
                }
            }
        }
        if f.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: f.len() });
        }
        for row in &f {
            if row.len() != p {
                return Err(Error::DimensionMismatch { expected: p, got: row.len() });
            }
            for entry in row {
                check(entry)?;
            }
        }
        Ok(Self { n, p, q, base_ring, a, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn base_ring(&self) -> &Arc<PolyRing> {
        &self.base_ring
    }

    /// Assembles the p × q(n+1) system over the tangent ring.
    ///
    /// Unknown order: first the derivative unknowns ∂φᵢ/∂x_k with i
    /// ascending and k ascending inside each i, then the q value unknowns
    /// φᵢ. The column of ∂φᵢ/∂x_k has ξ_k in row i and zeros elsewhere;
    /// the column of φᵢ has Σ_k ξ_k·a[k][i][j] in row j. The right-hand
    /// side is y[j] = Σ_k ξ_k·f[k][j].
    pub fn build_tangent_system(&self) -> ModulePresentation {
        let tangent = tangent_ring(self.n);
        let base_to_tangent: Vec<usize> = (0..self.n).collect();
        let lift = |p: &Poly| p.map_to_ring(&tangent, &base_to_tangent);
        let xi = |k: usize| Poly::variable(&tangent, self.n + k);

        let cols = self.q * (self.n + 1);
        let mut sys = PolyMatrix::zero(&tangent, self.p, cols);
        for i in 0..self.q {
            for k in 0..self.n {
                *sys.at_mut(i, i * self.n + k) = xi(k);
            }
        }
        for i in 0..self.q {
            let col = self.q * self.n + i;
            for j in 0..self.p {
                let mut acc = Poly::zero(&tangent);
                for k in 0..self.n {
                    acc = &acc + &(&xi(k) * &lift(&self.a[k][i][j]));
                }
                *sys.at_mut(j, col) = acc;
            }
        }
        let y: Vec<Poly> = (0..self.p)
            .map(|j| {
                let mut acc = Poly::zero(&tangent);
                for k in 0..self.n {
                    acc = &acc + &(&xi(k) * &lift(&self.f[k][j]));
                }
                acc
            })
            .collect();
        ModulePresentation::new(sys, y).expect("assembled shapes are consistent")
    }

    /// The solvability locus as a constructible subset of (x, ξ)-space.
    pub fn infinitesimal_locus(&self, prune: bool) -> ConstructibleSet {
        self.build_tangent_system().zero_locus(prune)
    }

    pub fn to_json_string(&self) -> String {
        let wire = ChartWire {
            n: self.n,
            p: self.p,
            q: self.q,
            a: self
                .a
                .iter()
                .map(|s| s.iter().map(|r| r.iter().map(Poly::to_string).collect()).collect())
                .collect(),
            f: self
                .f
                .iter()
                .map(|r| r.iter().map(Poly::to_string).collect())
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&wire).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json_str(text: &str) -> Result<ChartConnection> {
        let wire: ChartWire = serde_json::from_str(text)?;
        let ring = chart_base_ring(wire.n);
        let a = wire
            .a
            .iter()
            .map(|s| {
                s.iter()
                    .map(|r| r.iter().map(|e| parse_poly(e, &ring)).collect())
                    .collect::<Result<Vec<Vec<Poly>>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let f = wire
            .f
            .iter()
            .map(|r| r.iter().map(|e| parse_poly(e, &ring)).collect())
            .collect::<Result<Vec<Vec<Poly>>>>()?;
        ChartConnection::new(wire.n, wire.p, wire.q, a, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ChartWire {
    n: usize,
    p: usize,
    q: usize,
    a: Vec<Vec<Vec<String>>>,
    f: Vec<Vec<String>>,
}

/// One verified identity in the built-in quadric-surface example.
#[derive(Clone, Debug)]
pub struct NamedCheck {
    pub name: &'static str,
    pub passed: bool,
}

/// Is `u` a nonzero constant multiple of `v`?
fn scalar_multiple(u: &Poly, v: &Poly) -> bool {
    match (u.leading(), v.leading()) {
        (None, None) => true,
        (None, _) | (_, None) => false,
        (Some((_, uc)), Some((_, vc))) => u.scale(vc) == v.scale(uc),
    }
}

/// Projective equality of coordinate vectors over the fraction field:
/// all 2×2 cross-multiplication minors vanish.
fn projectively_equal(u: &[Poly], v: &[Poly]) -> bool {
    assert_eq!(u.len(), v.len());
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if !(&(&u[i] * &v[j]) - &(&u[j] * &v[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Symbolic verification of the incidence geometry of two rulings and a
/// pencil member on the quadric surface x₀² + x₁² + x₂² + x₃² = 0: lines
/// on the quadric, six marked points on both quadrics, three planes
/// through prescribed triples/quadruples of those points, and an
/// involution preserving the whole configuration. Every check is an exact
/// polynomial identity in Q(i)[t] or Q(i)[s].
pub fn quadric_example_checks() -> Vec<NamedCheck> {
    let ring_t = PolyRing::new(vec!["t"]).expect("valid");
    let ring_s = PolyRing::new(vec!["s"]).expect("valid");
    let ring_x = PolyRing::new(vec!["x0", "x1", "x2", "x3"]).expect("valid");
    let ring_sx = PolyRing::new(vec!["s", "x0", "x1", "x2", "x3"]).expect("valid");

    let px = |text: &str| parse_poly(text, &ring_x).expect("valid");
    let psx = |text: &str| parse_poly(text, &ring_sx).expect("valid");
    let pt = |text: &str| parse_poly(text, &ring_t).expect("valid");
    let ps = |text: &str| parse_poly(text, &ring_s).expect("valid");

    let quadric = px("x0^2 + x1^2 + x2^2 + x3^2");
    let pencil = psx("s^2*x0^2 + x1^2 - x2^2 - s^2*x3^2");
    let plane1 = psx("s*x0 + i*x1 - x2 + i*s*x3");
    let plane2 = psx("s*x0 - i*x1 + x2 + i*s*x3");
    let plane3 = psx("i*x1 + x2");

    let line_alpha: Vec<Poly> = ["1", "t", "i*t", "i"].iter().map(|s| pt(s)).collect();
    let line_beta: Vec<Poly> = ["1", "t", "-1*i*t", "i"].iter().map(|s| pt(s)).collect();
    let line_gamma: Vec<Poly> = ["1", "t", "-1*i*t", "-i"].iter().map(|s| pt(s)).collect();

    let alpha1: Vec<Poly> = ["1", "i*s", "-s", "i"].iter().map(|s| ps(s)).collect();
    let alpha2: Vec<Poly> = ["1", "-1*i*s", "s", "i"].iter().map(|s| ps(s)).collect();
    let beta1: Vec<Poly> = ["1", "i*s", "s", "i"].iter().map(|s| ps(s)).collect();
    let beta2: Vec<Poly> = ["1", "-1*i*s", "-s", "i"].iter().map(|s| ps(s)).collect();
    let gamma1: Vec<Poly> = ["1", "i*s", "s", "-i"].iter().map(|s| ps(s)).collect();
    let gamma2: Vec<Poly> = ["1", "-1*i*s", "-s", "-i"].iter().map(|s| ps(s)).collect();

    // Evaluate an x-polynomial along a parametrized point of P³.
    let on_line = |surface: &Poly, coords: &[Poly]| -> bool {
        surface
            .symbolic_evaluate(coords, &ring_t)
            .expect("four coordinates")
            .is_zero()
    };
    let quadric_at = |point: &[Poly]| -> bool {
        quadric
            .symbolic_evaluate(point, &ring_s)
            .expect("four coordinates")
            .is_zero()
    };
    // s-dependent surfaces take the substitution (s, point coordinates).
    let with_s = |point: &[Poly]| -> Vec<Poly> {
        let mut subs = vec![Poly::variable(&ring_s, 0)];
        subs.extend_from_slice(point);
        subs
    };
    let sx_at = |surface: &Poly, point: &[Poly]| -> bool {
        surface
            .symbolic_evaluate(&with_s(point), &ring_s)
            .expect("five coordinates")
            .is_zero()
    };

    // The involution (c0, c1, c2, c3) ↦ (−c3, −c2, c1, c0).
    let theta = |v: &[Poly]| -> Vec<Poly> {
        vec![-&v[3], -&v[2], v[1].clone(), v[0].clone()]
    };
    let theta_x: Vec<Poly> = ["-x3", "-x2", "x1", "x0"].iter().map(|s| px(s)).collect();
    let theta_sx: Vec<Poly> = ["s", "-x3", "-x2", "x1", "x0"]
        .iter()
        .map(|s| psx(s))
        .collect();

    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool| checks.push(NamedCheck { name, passed });

    push("line_alpha_on_quadric", on_line(&quadric, &line_alpha));
    push("line_beta_on_quadric", on_line(&quadric, &line_beta));
    push("line_gamma_on_quadric", on_line(&quadric, &line_gamma));

    for (name_q, name_p, point) in [
        ("alpha1_on_quadric", "alpha1_on_pencil_quadric", &alpha1),
        ("alpha2_on_quadric", "alpha2_on_pencil_quadric", &alpha2),
        ("beta1_on_quadric", "beta1_on_pencil_quadric", &beta1),
        ("beta2_on_quadric", "beta2_on_pencil_quadric", &beta2),
        ("gamma1_on_quadric", "gamma1_on_pencil_quadric", &gamma1),
        ("gamma2_on_quadric", "gamma2_on_pencil_quadric", &gamma2),
    ] {
        push(name_q, quadric_at(point));
        push(name_p, sx_at(&pencil, point));
    }

    push("plane1_through_alpha1", sx_at(&plane1, &alpha1));
    push("plane1_through_alpha2", sx_at(&plane1, &alpha2));
    push("plane1_through_gamma1", sx_at(&plane1, &gamma1));
    push("plane2_through_alpha1", sx_at(&plane2, &alpha1));
    push("plane2_through_alpha2", sx_at(&plane2, &alpha2));
    push("plane2_through_gamma2", sx_at(&plane2, &gamma2));
    push("plane3_through_beta1", sx_at(&plane3, &beta1));
    push("plane3_through_beta2", sx_at(&plane3, &beta2));
    push("plane3_through_gamma1", sx_at(&plane3, &gamma1));
    push("plane3_through_gamma2", sx_at(&plane3, &gamma2));

    push(
        "involution_preserves_quadric",
        scalar_multiple(
            &quadric
                .symbolic_evaluate(&theta_x, &ring_x)
                .expect("four coordinates"),
            &quadric,
        ),
    );
    push(
        "involution_preserves_pencil_quadric",
        scalar_multiple(
            &pencil
                .symbolic_evaluate(&theta_sx, &ring_sx)
                .expect("five coordinates"),
            &pencil,
        ),
    );
    push(
        "involution_fixes_line_alpha_pointwise",
        projectively_equal(&theta(&line_alpha), &line_alpha),
    );
    push(
        "involution_fixes_line_gamma_pointwise",
        projectively_equal(&theta(&line_gamma), &line_gamma),
    );
    push(
        "involution_swaps_beta1_beta2",
        projectively_equal(&theta(&beta1), &beta2) && projectively_equal(&theta(&beta2), &beta1),
    );

    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::GaussianRational;

    fn constant(ring: &Arc<PolyRing>, c: i64) -> Poly {
        Poly::constant(ring, GaussianRational::from_integer(c))
    }

    /// n=1, p=2, q=1 chart with degree-1 data.
    fn small_chart() -> ChartConnection {
        let ring = chart_base_ring(1);
        let x = Poly::variable(&ring, 0);
        let a = vec![vec![vec![x.clone(), constant(&ring, 1)]]];
        let f = vec![vec![constant(&ring, 2), x.clone()]];
        ChartConnection::new(1, 2, 1, a, f).unwrap()
    }

    fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<GaussianRational>> {
        let mut points = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &points {
                for v in lo..=hi {
                    let mut q = p.clone();
                    q.push(GaussianRational::from_integer(v));
                    next.push(q);
                }
            }
            points = next;
        }
        points
    }

    #[test]
    fn shape_validation() {
        let ring = chart_base_ring(1);
        let x = Poly::variable(&ring, 0);
        // q > p is rejected.
        assert!(ChartConnection::new(
            1,
            1,
            2,
            vec![vec![vec![x.clone()], vec![x.clone()]]],
            vec![vec![x.clone()]]
        )
        .is_err());
        // Wrong inner length.
        assert!(ChartConnection::new(1, 2, 1, vec![vec![vec![x.clone()]]], vec![
            vec![x.clone(), x.clone()]
        ])
        .is_err());
    }

    #[test]
    fn system_shape_and_xi_linearity() {
        let chart = small_chart();
        let sys = chart.build_tangent_system();
        assert_eq!(sys.rows(), chart.p());
        assert_eq!(sys.cols(), chart.q() * (chart.n() + 1));
        let n = chart.n();
        for i in 0..sys.rows() {
            for j in 0..sys.cols() {
                let entry = sys.matrix().at(i, j);
                for (mono, _) in entry.terms() {
                    let xi_degree: u32 = mono.0[n..].iter().sum();
                    assert_eq!(xi_degree, 1, "entry ({i},{j}) must be linear in the fiber");
                }
            }
        }
        for y in sys.section() {
            for (mono, _) in y.terms() {
                let xi_degree: u32 = mono.0[n..].iter().sum();
                assert_eq!(xi_degree, 1);
            }
        }
    }

    #[test]
    fn column_layout_matches_contract() {
        // n=2, p=2, q=1: columns are ∂φ₁/∂x₁, ∂φ₁/∂x₂, then φ₁.
        let ring = chart_base_ring(2);
        let one = constant(&ring, 1);
        let zero = Poly::zero(&ring);
        let a = vec![
            vec![vec![one.clone(), zero.clone()]],
            vec![vec![zero.clone(), one.clone()]],
        ];
        let f = vec![
            vec![zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone()],
        ];
        let chart = ChartConnection::new(2, 2, 1, a, f).unwrap();
        let sys = chart.build_tangent_system();
        let tangent = tangent_ring(2);
        let xi1 = Poly::variable(&tangent, 2);
        let xi2 = Poly::variable(&tangent, 3);
        assert_eq!(sys.matrix().at(0, 0), &xi1);
        assert_eq!(sys.matrix().at(0, 1), &xi2);
        assert!(sys.matrix().at(1, 0).is_zero());
        assert!(sys.matrix().at(1, 1).is_zero());
        // Value column: row j gets Σ_k ξ_k·a[k][1][j].
        assert_eq!(sys.matrix().at(0, 2), &xi1);
        assert_eq!(sys.matrix().at(1, 2), &xi2);
    }

    #[test]
    fn flat_section_covers_whole_tangent_space() {
        let ring = chart_base_ring(1);
        let x = Poly::variable(&ring, 0);
        let a = vec![vec![vec![x.clone(), constant(&ring, 3)]]];
        let f = vec![vec![Poly::zero(&ring), Poly::zero(&ring)]];
        let chart = ChartConnection::new(1, 2, 1, a, f).unwrap();
        let sys = chart.build_tangent_system();
        assert!(sys.section().iter().all(Poly::is_zero));
        let locus = chart.infinitesimal_locus(true);
        for point in grid(2, -2, 2) {
            assert!(locus.contains_point(&point).unwrap());
        }
    }

    #[test]
    fn no_subbundle_gives_literal_vanishing() {
        // q = 0: solvability means Σ_k ξ_k f[k][j] = 0 for every j.
        let ring = chart_base_ring(1);
        let x = Poly::variable(&ring, 0);
        let f = vec![vec![x.clone(), constant(&ring, 1)]];
        let chart = ChartConnection::new(1, 2, 0, vec![vec![]], f).unwrap();
        let sys = chart.build_tangent_system();
        assert_eq!(sys.cols(), 0);
        let locus = chart.infinitesimal_locus(false);
        assert_eq!(locus.cells().len(), 1);
        for point in grid(2, -2, 2) {
            // ξ·x = 0 and ξ·1 = 0 simultaneously ⟺ ξ = 0.
            let expect = point[1].is_zero();
            assert_eq!(locus.contains_point(&point).unwrap(), expect);
        }
    }

    #[test]
    fn derivative_unknown_absorbs_everything() {
        // n = p = q = 1 with a = 0, f = x: the equation ξ·x = ξ·(φ′),
        // always solvable by φ′ = x.
        let ring = chart_base_ring(1);
        let x = Poly::variable(&ring, 0);
        let chart =
            ChartConnection::new(1, 1, 1, vec![vec![vec![Poly::zero(&ring)]]], vec![vec![x]])
                .unwrap();
        let locus = chart.infinitesimal_locus(true);
        let sys = chart.build_tangent_system();
        for point in grid(2, -2, 2) {
            assert!(locus.contains_point(&point).unwrap());
            assert!(sys.solvable_at_point(&point).unwrap());
        }
    }

    #[test]
    fn zero_fiber_vector_is_always_member() {
        let chart = small_chart();
        let locus = chart.infinitesimal_locus(false);
        for x in -3..=3 {
            let point = vec![
                GaussianRational::from_integer(x),
                GaussianRational::zero(),
            ];
            assert!(locus.contains_point(&point).unwrap());
        }
    }

    #[test]
    fn membership_is_invariant_under_fiber_scaling() {
        let chart = small_chart();
        let locus = chart.infinitesimal_locus(false);
        let sys = chart.build_tangent_system();
        for point in grid(2, -2, 2) {
            let member = locus.contains_point(&point).unwrap();
            assert_eq!(member, sys.solvable_at_point(&point).unwrap());
            for lambda in [2i64, -1, 3] {
                let scaled = vec![
                    point[0].clone(),
                    &point[1] * &GaussianRational::from_integer(lambda),
                ];
                assert_eq!(locus.contains_point(&scaled).unwrap(), member);
            }
        }
    }

    #[test]
    fn json_round_trip_is_fixed_point() {
        let chart = small_chart();
        let text = chart.to_json_string();
        let back = ChartConnection::from_json_str(&text).unwrap();
        assert_eq!(back, chart);
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn quadric_checks_all_pass() {
        let checks = quadric_example_checks();
        assert!(checks.len() >= 20);
        for check in &checks {
            assert!(check.passed, "failed identity: {}", check.name);
        }
    }

    #[test]
    fn involution_action_is_what_it_claims() {
        // The fixed lines are fixed with explicit scalars ∓i; spot-check
        // that the projective test is not vacuous.
        let ring_t = PolyRing::new(vec!["t"]).unwrap();
        let pt = |s: &str| parse_poly(s, &ring_t).unwrap();
        let la: Vec<Poly> = ["1", "t", "i*t", "i"].iter().map(|s| pt(s)).collect();
        let lb: Vec<Poly> = ["1", "t", "-1*i*t", "i"].iter().map(|s| pt(s)).collect();
        let theta_la = vec![-&la[3], -&la[2], la[1].clone(), la[0].clone()];
        assert!(projectively_equal(&theta_la, &la));
        // The beta ruling line is NOT fixed pointwise by the involution.
        let theta_lb = vec![-&lb[3], -&lb[2], lb[1].clone(), lb[0].clone()];
        assert!(!projectively_equal(&theta_lb, &lb));
    }
}

//! Regularity tests and the aggregated classification report.
//!
//! Among the classes computed here the inclusions are
//! distance-regular ⊂ pattern polynomial ⊂ distance polynomial ⊂ connected
//! regular, and every pattern polynomial graph is also walk-regular and
//! super-regular. [`classification_report`] checks all of these on every
//! graph it sees and refuses to emit a report that contradicts them.

use std::collections::HashMap;

use serde::Serialize;

use crate::closure::{coherent_closure, CoherentBasis};
use crate::exactmat::solve_in_span;
use crate::graphs::{basic_props, distance_structure, BasicProps, DistanceStructure, Graph};
use crate::pattern::{pattern_basis, PatternBasis};
use crate::{Error, Result};

/// Everything computed once per graph and shared by the individual tests.
pub struct Analysis {
    pub graph: Graph,
    pub props: BasicProps,
    pub distances: DistanceStructure,
    pub basis: PatternBasis,
}

impl Analysis {
    pub fn new(g: &Graph) -> Self {
        Analysis {
            graph: g.clone(),
            props: basic_props(g),
            distances: distance_structure(g),
            basis: pattern_basis(g),
        }
    }

    /// Diagonal of `A^s` constant for all `s`.
    ///
    /// Only `s < ℓ` is checked: the minimal polynomial writes every higher
    /// power as a combination of `I, …, A^(ℓ-1)`, and combinations of
    /// matrices with constant diagonal have constant diagonal.
    pub fn walk_regular(&self) -> bool {
        self.basis.powers().iter().all(|p| {
            let d = p.diagonal();
            d.windows(2).all(|w| w[0] == w[1])
        })
    }

    pub fn distance_polynomial(&self) -> Result<bool> {
        let classes = self.distances.classes().ok_or(Error::Disconnected)?;
        for c in &classes {
            if solve_in_span(self.basis.powers(), c)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Counts `|{w : d(u,w) = i, d(w,v) = j}|` for every pair and checks
    /// they depend only on `d(u, v)`.
    pub fn distance_regular_combinatorial(&self) -> Result<bool> {
        let d = self
            .distances
            .diameter()
            .finite()
            .ok_or(Error::Disconnected)?;
        let n = self.graph.n();
        let width = d + 1;
        let mut by_distance: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut table = vec![0usize; width * width];
        for u in 0..n {
            for v in 0..n {
                table.iter_mut().for_each(|x| *x = 0);
                for w in 0..n {
                    let i = self.distances.distance(u, w).expect("connected");
                    let j = self.distances.distance(w, v).expect("connected");
                    table[i * width + j] += 1;
                }
                let k = self.distances.distance(u, v).expect("connected");
                match by_distance.get(&k) {
                    None => {
                        by_distance.insert(k, table.clone());
                    }
                    Some(t) if *t == table => {}
                    Some(_) => return Ok(false),
                }
            }
        }
        Ok(true)
    }

    /// `ℓ = d + 1` and every distance matrix in `𝒜(X)`.
    ///
    /// The `d + 1` distance matrices are disjoint, hence independent, so
    /// they then form a basis of `𝒜(X)` closed under multiplication.
    pub fn distance_regular_algebraic(&self) -> Result<bool> {
        let d = self
            .distances
            .diameter()
            .finite()
            .ok_or(Error::Disconnected)?;
        Ok(self.basis.ell() == d + 1 && self.distance_polynomial()?)
    }

    /// Both criteria; a disagreement is reported as an inconsistency.
    pub fn distance_regular(&self) -> Result<bool> {
        let combinatorial = self.distance_regular_combinatorial()?;
        let algebraic = self.distance_regular_algebraic()?;
        if combinatorial != algebraic {
            return Err(Error::Inconsistent(format!(
                "distance-regularity of {:?}: combinatorial {combinatorial}, algebraic {algebraic}",
                self.graph
            )));
        }
        Ok(combinatorial)
    }

    pub fn super_regular(&self) -> Result<bool> {
        let d = self
            .distances
            .diameter()
            .finite()
            .ok_or(Error::Disconnected)?;
        let n = self.graph.n();
        let profile = |u: usize| -> Vec<usize> {
            (1..=d).map(|k| self.distances.sphere_size(u, k)).collect()
        };
        let first = profile(0);
        Ok((1..n).all(|u| profile(u) == first))
    }

    pub fn edge_regular(&self) -> Option<usize> {
        edge_regular_count(&self.graph)
    }

    /// `A` itself is a single pattern class.
    pub fn adjacency_is_pattern_class(&self) -> bool {
        self.basis.adjacency_classes().len() == 1
    }
}

fn edge_regular_count(g: &Graph) -> Option<usize> {
    let mut common = None;
    for (u, v) in g.edges() {
        let c = g.common_neighbors(u, v);
        match common {
            None => common = Some(c),
            Some(x) if x == c => {}
            Some(_) => return None,
        }
    }
    Some(common.unwrap_or(0))
}

pub fn is_walk_regular(g: &Graph) -> bool {
    Analysis::new(g).walk_regular()
}

pub fn is_distance_polynomial(g: &Graph) -> Result<bool> {
    Analysis::new(g).distance_polynomial()
}

pub fn is_distance_regular(g: &Graph) -> Result<bool> {
    Analysis::new(g).distance_regular()
}

pub fn is_super_regular(g: &Graph) -> Result<bool> {
    Analysis::new(g).super_regular()
}

/// Common-neighbour count of adjacent pairs, if it is the same for all of
/// them. Edgeless graphs give `Some(0)`.
pub fn is_edge_regular(g: &Graph) -> Option<usize> {
    edge_regular_count(g)
}

/// Inequalities checked for the report. `None` where a check does not apply.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsCheck {
    /// `ℓ ≤ r`.
    pub ell_le_r: bool,
    /// `r ≤ dim 𝒞𝒞`.
    pub r_le_cc_dim: bool,
    /// `d + 1 ≤ ℓ ≤ n`, for connected graphs.
    pub diameter_bound: Option<bool>,
    /// `ℓ ≤ n - 1`, for pattern polynomial graphs with `n > 2`.
    pub multiple_eigenvalue: Option<bool>,
    /// `ℓ ≤ (n + 1) / 2`, for pattern polynomial graphs of odd order.
    pub odd_order: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub edge_count: usize,
    pub connected: bool,
    pub regular: Option<usize>,
    pub diameter: Option<usize>,
    pub ell: usize,
    pub r: usize,
    pub cc_dim: usize,
    pub pattern_polynomial: bool,
    pub distance_polynomial: Option<bool>,
    pub distance_regular: Option<bool>,
    pub walk_regular: bool,
    pub super_regular: Option<bool>,
    pub edge_regular: Option<usize>,
    pub bounds_ok: BoundsCheck,
}

impl ClassificationReport {
    pub fn connected_regular(&self) -> bool {
        self.connected && self.regular.is_some()
    }
}

fn implies(name: &str, premise: bool, conclusion: bool, g: &Graph) -> Result<()> {
    if premise && !conclusion {
        return Err(Error::Inconsistent(format!("{name} fails for {g:?}")));
    }
    Ok(())
}

fn check_implications(
    report: &ClassificationReport,
    analysis: &Analysis,
    closure: &CoherentBasis,
) -> Result<()> {
    let g = &analysis.graph;
    let pp = report.pattern_polynomial;
    let dr = report.distance_regular == Some(true);
    let dp = report.distance_polynomial == Some(true);
    let b = &report.bounds_ok;

    implies("ell <= r", true, b.ell_le_r, g)?;
    implies("r <= dim CC", true, b.r_le_cc_dim, g)?;
    implies("ell = r => r = dim CC", pp, report.r == closure.m(), g)?;
    implies("distance-regular => pattern polynomial", dr, pp, g)?;
    implies("pattern polynomial => distance polynomial", pp, dp, g)?;
    implies(
        "distance polynomial => connected regular",
        dp,
        report.connected_regular(),
        g,
    )?;
    implies(
        "pattern polynomial => connected regular",
        pp,
        report.connected_regular(),
        g,
    )?;
    implies(
        "pattern polynomial => walk-regular",
        pp,
        report.walk_regular,
        g,
    )?;
    implies(
        "pattern polynomial => super-regular",
        pp,
        report.super_regular == Some(true),
        g,
    )?;
    implies(
        "pattern polynomial with A a pattern class => edge-regular",
        pp && analysis.adjacency_is_pattern_class(),
        report.edge_regular.is_some(),
        g,
    )?;
    implies(
        "d + 1 <= ell <= n",
        true,
        b.diameter_bound != Some(false),
        g,
    )?;
    implies(
        "ell <= n - 1",
        true,
        b.multiple_eigenvalue != Some(false),
        g,
    )?;
    implies("ell <= (n + 1) / 2", true, b.odd_order != Some(false), g)?;
    if let (true, Some(d)) = (dr, report.diameter) {
        implies(
            "distance-regular => ell = d + 1",
            true,
            report.ell == d + 1,
            g,
        )?;
        if d >= 3 {
            let complement = Analysis::new(&g.complement());
            let complement_dr =
                complement.distances.is_connected() && complement.distance_regular()?;
            implies(
                "distance-regular, d >= 3 => complement not distance-regular",
                true,
                !complement_dr,
                g,
            )?;
        }
    }
    Ok(())
}

/// Runs every test on `g`. Disconnected graphs get `None` for the fields
/// that need distances.
pub fn classification_report(g: &Graph) -> Result<ClassificationReport> {
    let analysis = Analysis::new(g);
    let closure = coherent_closure(g);
    report_from(&analysis, &closure)
}

pub fn report_from(analysis: &Analysis, closure: &CoherentBasis) -> Result<ClassificationReport> {
    let g = &analysis.graph;
    let n = g.n();
    let connected = analysis.props.connected;
    let diameter = analysis.distances.diameter().finite();
    let (ell, r, cc_dim) = (analysis.basis.ell(), analysis.basis.r(), closure.m());
    let pattern_polynomial = ell == r;

    let (distance_polynomial, distance_regular, super_regular) = if connected {
        (
            Some(analysis.distance_polynomial()?),
            Some(analysis.distance_regular()?),
            Some(analysis.super_regular()?),
        )
    } else {
        (None, None, None)
    };

    let bounds_ok = BoundsCheck {
        ell_le_r: ell <= r,
        r_le_cc_dim: r <= cc_dim,
        diameter_bound: diameter.map(|d| d < ell && ell <= n),
        multiple_eigenvalue: (pattern_polynomial && n > 2).then_some(ell < n),
        odd_order: (pattern_polynomial && n % 2 == 1).then_some(ell <= n.div_ceil(2)),
    };

    let report = ClassificationReport {
        n,
        edge_count: g.edge_count(),
        connected,
        regular: analysis.props.regular,
        diameter,
        ell,
        r,
        cc_dim,
        pattern_polynomial,
        distance_polynomial,
        distance_regular,
        walk_regular: analysis.walk_regular(),
        super_regular,
        edge_regular: analysis.edge_regular(),
        bounds_ok,
    };
    check_implications(&report, analysis, closure)?;
    Ok(report)
}

/// Intersection array `{b_0, …, b_(d-1); c_1, …, c_d}` of a distance-regular
/// graph, read off from vertex 0.
pub fn intersection_array(g: &Graph) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    let analysis = Analysis::new(g);
    if !analysis.distance_regular()? {
        return Ok(None);
    }
    let d = analysis.distances.diameter().finite().expect("connected");
    let dist = &analysis.distances;
    let mut b = Vec::new();
    let mut c = Vec::new();
    for i in 0..=d {
        let v = (0..g.n())
            .find(|&v| dist.distance(0, v) == Some(i))
            .expect("sphere nonempty");
        let count = |target: usize| {
            g.neighbors(v)
                .filter(|&w| dist.distance(0, w) == Some(target))
                .count()
        };
        if i < d {
            b.push(count(i + 1));
        }
        if i > 0 {
            c.push(count(i - 1));
        }
    }
    Ok(Some((b, c)))
}

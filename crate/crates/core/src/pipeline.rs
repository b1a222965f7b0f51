//! End-to-end driver: curve -> discriminant -> certified roots -> loops ->
//! monodromy braids -> presentation, and the verification reports built
//! on top.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{self, CatalogError, GroupId};
use crate::geometry::{self, BoundingBox, LoopSystem, PlanarGraph};
use crate::group::{
    abelianization, is_central, presentations_match, tietze_simplify, todd_coxeter, vankampen,
    Abelianization, FreeWord, GroupError, Presentation, DEFAULT_MAX_COSETS,
};
use crate::monodromy::{
    segment_braid, vertex_configuration, BraidWord, FollowOptions, MonodromyError, Point,
};
use crate::numeric::GaussianRational;
use crate::poly::{discriminant, squarefree_part, BivariatePoly, MultiPoly, UniPoly};
use crate::roots::{certify_roots, CertifiedConfiguration, RootOptions};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    /// Fiber variable; by default the variable in which the curve is monic.
    pub fiber_var: Option<String>,
    pub seed: u64,
    pub guard_digits: u32,
    pub max_cosets: usize,
    pub simplify_budget: usize,
    /// Worker threads for segment braids; `None` uses every core.
    pub jobs: Option<usize>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            fiber_var: None,
            seed: 0,
            guard_digits: 2,
            max_cosets: DEFAULT_MAX_COSETS,
            simplify_budget: 2000,
            jobs: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    /// The input does not satisfy a precondition.
    #[error("{stage}: {reason}")]
    Precondition { stage: &'static str, reason: String },
    /// A resource limit was hit.
    #[error("{stage}: {reason}")]
    Resource { stage: &'static str, reason: String },
    /// An internal check failed.
    #[error("{stage}: {reason}")]
    Internal { stage: &'static str, reason: String },
}

impl PipelineError {
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Precondition { .. } => 2,
            PipelineError::Resource { .. } => 3,
            PipelineError::Internal { .. } => 4,
        }
    }

    fn pre(stage: &'static str, reason: impl ToString) -> Self {
        PipelineError::Precondition {
            stage,
            reason: reason.to_string(),
        }
    }

    fn internal(stage: &'static str, reason: impl ToString) -> Self {
        PipelineError::Internal {
            stage,
            reason: reason.to_string(),
        }
    }
}

impl From<CatalogError> for PipelineError {
    fn from(e: CatalogError) -> Self {
        PipelineError::pre("catalog", e)
    }
}

fn group_error(stage: &'static str, e: GroupError) -> PipelineError {
    match e {
        GroupError::Overflow { .. } => PipelineError::Resource {
            stage,
            reason: e.to_string(),
        },
        GroupError::Parse { .. } => PipelineError::pre(stage, e),
        _ => PipelineError::internal(stage, e),
    }
}

fn monodromy_error(e: MonodromyError) -> PipelineError {
    match e {
        MonodromyError::Budget { .. } => PipelineError::Resource {
            stage: "monodromy",
            reason: e.to_string(),
        },
        _ => PipelineError::internal("monodromy", e),
    }
}

/// Every intermediate object of a Van Kampen run.
#[derive(Clone, Debug)]
pub struct VkRun {
    pub fiber: String,
    pub base: String,
    /// Number of strings: the degree of the curve in the fiber variable.
    pub strands: usize,
    /// Squarefree part of the discriminant, in the base variable.
    pub discriminant: UniPoly,
    pub roots: Option<CertifiedConfiguration>,
    pub graph: Option<PlanarGraph>,
    pub loops: Option<LoopSystem>,
    /// One braid per loop, in loop order.
    pub braids: Vec<BraidWord>,
    pub raw: Presentation,
    pub presentation: Presentation,
}

/// Variables of `curve` in which its leading coefficient is a nonzero
/// constant.
pub fn monic_variables(curve: &MultiPoly) -> Vec<String> {
    curve
        .used_vars()
        .into_iter()
        .filter(|v| {
            curve
                .leading_coefficient_in(v)
                .is_ok_and(|c| c.is_constant() && !c.is_zero())
        })
        .collect()
}

/// Default fiber variable: among the variables in which the curve is
/// monic, the one of least degree, ties broken by name.
pub fn default_fiber_var(curve: &MultiPoly) -> Option<String> {
    monic_variables(curve)
        .into_iter()
        .min_by_key(|v| (curve.degree_in(v).unwrap_or(0), v.clone()))
}

/// Fiber and base variable names for a curve.
pub fn fiber_and_base(
    curve: &MultiPoly,
    fiber_var: Option<&str>,
) -> Result<(String, String), PipelineError> {
    let used = curve.used_vars();
    if used.len() > 2 {
        return Err(PipelineError::pre(
            "input",
            format!("curve involves {} variables, expected 2", used.len()),
        ));
    }
    let fiber = match fiber_var {
        Some(v) => v.to_string(),
        None => default_fiber_var(curve).ok_or_else(|| {
            let lcs: Vec<String> = used
                .iter()
                .map(|v| format!("in {}: {} = 0", v, curve.leading_coefficient_in(v).unwrap()))
                .collect();
            PipelineError::pre(
                "input",
                format!(
                    "curve is monic in no variable; leading coefficients vanish {}",
                    lcs.join(", ")
                ),
            )
        })?,
    };
    if !used.contains(&fiber) {
        return Err(PipelineError::pre(
            "input",
            format!("curve does not involve `{}`", fiber),
        ));
    }
    let lc = curve.leading_coefficient_in(&fiber).unwrap();
    if !lc.is_constant() {
        return Err(PipelineError::pre(
            "input",
            format!(
                "curve is not monic in `{}`: leading coefficient vanishes on {} = 0",
                fiber, lc
            ),
        ));
    }
    let base = match used.iter().find(|v| **v != fiber) {
        Some(b) => b.clone(),
        None => ["y", "x", "t"]
            .into_iter()
            .find(|v| *v != fiber)
            .unwrap()
            .to_string(),
    };
    Ok((fiber, base))
}

/// Discriminant of the curve in the fiber variable and its squarefree
/// part, both as polynomials in the base variable.
pub fn curve_discriminant(
    curve: &MultiPoly,
    fiber: &str,
    base: &str,
) -> Result<(UniPoly, UniPoly), PipelineError> {
    let d = discriminant(curve, fiber).map_err(|e| PipelineError::pre("discriminant", e))?;
    if d.is_zero() {
        return Err(PipelineError::pre(
            "discriminant",
            format!(
                "curve is not squarefree in `{}`; reduce it with its squarefree part first",
                fiber
            ),
        ));
    }
    let d = d.trim_vars();
    let sq = if d.is_constant() {
        d.clone()
    } else {
        squarefree_part(&d, base).map_err(|e| PipelineError::internal("discriminant", e))?
    };
    let uni = |p: &MultiPoly| {
        UniPoly::from_multi(p, base).map_err(|e| PipelineError::internal("discriminant", e))
    };
    Ok((uni(&d)?, uni(&sq)?.monic()))
}

/// Runs the whole Van Kampen computation on a plane curve.
pub fn run_vk(curve: &MultiPoly, cfg: &PipelineConfig) -> Result<VkRun, PipelineError> {
    let (fiber, base) = fiber_and_base(curve, cfg.fiber_var.as_deref())?;
    let strands = curve.degree_in(&fiber).unwrap_or(0) as usize;
    let (_, disc) = curve_discriminant(curve, &fiber, &base)?;
    let bivariate = if curve.used_vars().contains(&base) {
        BivariatePoly::from_multi(curve, &fiber, &base)
    } else {
        BivariatePoly::from_multi(curve, &fiber, "")
    }
    .map_err(|e| PipelineError::internal("input", e))?;
    log::info!(
        "{} strings, discriminant of degree {:?}",
        strands,
        disc.degree()
    );

    let mut run = VkRun {
        fiber,
        base,
        strands,
        discriminant: disc.clone(),
        roots: None,
        graph: None,
        loops: None,
        braids: Vec::new(),
        raw: Presentation::free((1..=strands).map(|i| format!("x{}", i)).collect()),
        presentation: Presentation::free(Vec::new()),
    };
    if disc.degree().unwrap_or(0) > 0 {
        let opts = RootOptions {
            seed: cfg.seed,
            guard: cfg.guard_digits,
        };
        let roots = certify_roots(&disc, &opts).map_err(|e| PipelineError::internal("roots", e))?;
        let sites: Vec<Point> = roots.sorted().points().to_vec();
        let graph = geometry::voronoi(&sites, &BoundingBox::around(&sites))
            .map_err(|e| PipelineError::internal("voronoi", e))?;
        let loops = geometry::loop_system(&graph, &sites, None)
            .map_err(|e| PipelineError::internal("loops", e))?;
        log::info!("{} sites, {} loops", sites.len(), loops.loops.len());
        run.braids = loop_braids(&bivariate, &graph, &loops, cfg)?;
        run.raw = vankampen(strands, &run.braids).map_err(|e| group_error("presentation", e))?;
        run.roots = Some(roots);
        run.graph = Some(graph);
        run.loops = Some(loops);
    }
    run.presentation = tietze_simplify(&run.raw, cfg.seed, cfg.simplify_budget);
    Ok(run)
}

fn with_pool<T: Send>(
    jobs: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, PipelineError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        b = b.num_threads(j.max(1));
    }
    let pool = b
        .build()
        .map_err(|e| PipelineError::internal("threads", e))?;
    Ok(pool.install(f))
}

/// Braid of every loop: configurations at the loop vertices, one braid
/// per undirected edge (computed concurrently), then products along the
/// loops.
pub fn loop_braids(
    curve: &BivariatePoly,
    graph: &PlanarGraph,
    loops: &LoopSystem,
    cfg: &PipelineConfig,
) -> Result<Vec<BraidWord>, PipelineError> {
    let vertices: BTreeSet<usize> = loops
        .loops
        .iter()
        .flat_map(|l| l.vertices.iter().copied())
        .collect();
    let edges: BTreeSet<(usize, usize)> = loops
        .loops
        .iter()
        .flat_map(|l| l.steps().map(|(a, b)| (a.min(b), a.max(b))))
        .collect();
    let vertices: Vec<usize> = vertices.into_iter().collect();
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    let pts = graph.vertices();
    let follow = FollowOptions {
        guard: cfg.guard_digits,
        ..FollowOptions::default()
    };
    let (configs, braids) = with_pool(cfg.jobs, || {
        let configs: Result<BTreeMap<usize, CertifiedConfiguration>, MonodromyError> = vertices
            .par_iter()
            .map(|&v| {
                vertex_configuration(curve, &pts[v], cfg.seed, cfg.guard_digits).map(|c| (v, c))
            })
            .collect();
        let configs = match configs {
            Ok(c) => c,
            Err(e) => return (Err(e), Vec::new()),
        };
        let braids: Vec<Result<BraidWord, MonodromyError>> = edges
            .par_iter()
            .map(|&(a, b)| {
                let start = std::time::Instant::now();
                let w = segment_braid(curve, &pts[a], &pts[b], &configs[&a], &configs[&b], &follow);
                log::debug!("edge {} -> {}: {:.2?}", a, b, start.elapsed());
                w
            })
            .collect();
        (Ok(configs), braids)
    })?;
    configs.map_err(monodromy_error)?;
    let mut by_edge = BTreeMap::new();
    for (e, b) in edges.iter().zip(braids) {
        by_edge.insert(*e, b.map_err(monodromy_error)?);
    }
    let n = curve.fiber_degree();
    Ok(loops
        .loops
        .iter()
        .map(|l| {
            let mut w = BraidWord::identity(n.max(1));
            for (a, b) in l.steps() {
                if a < b {
                    w.append(&by_edge[&(a, b)]);
                } else {
                    w.append(&by_edge[&(b, a)].inverse());
                }
            }
            w
        })
        .collect())
}

/// Outcome of a coset enumeration inside a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Enumeration {
    Complete { cosets: usize },
    Overflow { limit: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub generators: usize,
    pub relators: usize,
    pub total_length: usize,
    pub abelianization: String,
    pub abelianization_is_z: bool,
    /// Quotient by the squares of the generators, when requested.
    pub quotient: Option<Enumeration>,
    /// Whether the central word has central image in the quotient.
    pub central: Option<bool>,
}

impl VerificationReport {
    pub fn quotient_order(&self) -> Option<usize> {
        match self.quotient {
            Some(Enumeration::Complete { cosets }) => Some(cosets),
            _ => None,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "generators: {}\nrelators: {}\ntotal length: {}\nabelianization: {}\n",
            self.generators, self.relators, self.total_length, self.abelianization
        );
        match &self.quotient {
            Some(Enumeration::Complete { cosets }) => s += &format!("quotient order: {}\n", cosets),
            Some(Enumeration::Overflow { limit }) => {
                s += &format!("quotient order: overflow beyond {} cosets\n", limit)
            }
            None => {}
        }
        if let Some(c) = self.central {
            s += &format!("central: {}\n", c);
        }
        s
    }
}

/// Abelianization, optionally the order of the quotient by the squares of
/// the generators, and optionally whether `central` is central there.
pub fn verify_presentation(
    p: &Presentation,
    quadratic: bool,
    central: Option<&FreeWord>,
    max_cosets: usize,
) -> VerificationReport {
    let ab: Abelianization = abelianization(p);
    let mut report = VerificationReport {
        generators: p.num_gens(),
        relators: p.relators().len(),
        total_length: p.total_length(),
        abelianization: ab.to_string(),
        abelianization_is_z: ab.is_infinite_cyclic(),
        quotient: None,
        central: None,
    };
    if quadratic || central.is_some() {
        let q = if quadratic {
            p.with_quadratics()
        } else {
            p.clone()
        };
        match todd_coxeter(&q, &[], max_cosets) {
            Ok(t) => {
                report.quotient = Some(Enumeration::Complete { cosets: t.count() });
                report.central = central.map(|w| is_central(&t, w));
            }
            Err(GroupError::Overflow { limit }) => {
                report.quotient = Some(Enumeration::Overflow { limit })
            }
            Err(e) => unreachable!("coset enumeration only fails by overflow: {}", e),
        }
    }
    report
}

#[derive(Clone, Debug)]
pub struct CatalogRun {
    pub id: GroupId,
    pub curve: MultiPoly,
    pub run: VkRun,
    pub report: VerificationReport,
    pub expected_order: u64,
    /// Generator bijection under which the catalog central word is
    /// central in the computed quotient, if any.
    pub central_under: Option<Vec<usize>>,
    /// Index of a catalog presentation matched by the computed one.
    pub matches_target: Option<usize>,
}

impl CatalogRun {
    pub fn order_ok(&self) -> bool {
        self.report.quotient_order() == Some(self.expected_order as usize)
    }
}

/// Van Kampen on the catalog plane curve of `id`, then verification of
/// the computed presentation against the catalog expectations.
pub fn run_catalog(id: GroupId, cfg: &PipelineConfig) -> Result<CatalogRun, PipelineError> {
    let entry = catalog::get_entry(id);
    let plane = entry.plane.clone().ok_or(CatalogError::NoPlane(id))?;
    let curve = catalog::plane_curve(id)?;
    let cfg = PipelineConfig {
        fiber_var: Some(
            cfg.fiber_var
                .clone()
                .unwrap_or_else(|| plane.fiber.to_string()),
        ),
        ..cfg.clone()
    };
    let run = run_vk(&curve, &cfg)?;
    let p = &run.presentation;
    let report = verify_presentation(p, true, None, cfg.max_cosets);
    let mut central_under = None;
    let target_gens = entry.presentation().num_gens();
    if report.quotient_order().is_some() && p.num_gens() == target_gens {
        let t = todd_coxeter(&p.with_quadratics(), &[], cfg.max_cosets)
            .map_err(|e| group_error("verify", e))?;
        central_under = permutations(target_gens)
            .into_iter()
            .find(|perm| is_central(&t, &entry.central_word().relabel(perm, false)));
    }
    let report = VerificationReport {
        central: report.quotient_order().map(|_| central_under.is_some()),
        ..report
    };
    let matches_target = entry
        .presentations
        .iter()
        .position(|q| presentations_match(p, q));
    Ok(CatalogRun {
        id,
        curve,
        run,
        report,
        expected_order: entry.order,
        central_under,
        matches_target,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Text rendering of a point for loop and braid dumps.
pub fn point_text(p: &GaussianRational) -> String {
    format!("{} {}", p.re, p.im)
}

use std::fmt::Write as _;
use std::time::Instant;

use lefforge::artinian::{lefschetz_verdict, LefschetzVerdict, Property, Ring, VerdictConfig};
use lefforge::betti::{
    hochster_betti, omega_lower_bound, BettiKind, BettiResult, DEFAULT_SUBSET_BUDGET,
};
use lefforge::criteria::{classify, classify_of, f_value, f_value_of, failure_certificate_of};
use lefforge::grid::{
    delta_dimension, enumerate_facets, facet_count_lgv, initial_ideal_generators, vertex_region,
    GridShape, DEFAULT_FACET_BUDGET,
};
use lefforge::simplicial::{reduced_homology_dim, GridSubcomplex, DEFAULT_FACE_BUDGET};
use lefforge::{with_field, Error, FieldKind, VertexSet};
use serde::Serialize;

use crate::report::{self, cell_text, cells, join, Config, Format};
use crate::{CliError, Command, GlobalArgs};

const DEFAULT_BETTI_BUDGET: u64 = 200_000;

pub fn dispatch(command: &Command, g: &GlobalArgs) -> Result<String, CliError> {
    let config = Config {
        field: g.field().to_string(),
        characteristic: g.field().characteristic(),
        seed: g.seed,
        trials: g.trials,
        budget: g.budget,
    };
    if g.format == Format::Csv && !matches!(command, Command::Survey { .. }) {
        return Err(CliError::Usage(
            "csv output is only available for survey".into(),
        ));
    }
    let out = |name: &str, result: &dyn erased::Report| -> String {
        match g.format {
            Format::Json => result.json(name, &config),
            _ => result.human(),
        }
    };
    Ok(match command {
        Command::Ideal { shape } => out("ideal", &ideal(shape.shape()?)),
        Command::Facets { shape, count_only } => {
            out("facets", &facets(shape.shape()?, *count_only, g.budget)?)
        }
        Command::Omega { shape, a } => out("omega", &omega(shape.shape()?, *a, g)?),
        Command::Homology {
            shape,
            cells,
            omega,
        } => out(
            "homology",
            &homology(shape.shape()?, cells.as_deref(), *omega, g)?,
        ),
        Command::Betti { shape, i, j, full } => {
            out("betti", &betti(shape.shape()?, *i, *j, *full, g)?)
        }
        Command::Criteria { shape } => out("criteria", &criteria(shape.t, shape.m, shape.n)?),
        Command::Check {
            shape,
            ring,
            property,
        } => {
            let v = lefschetz_verdict(
                shape.shape()?,
                (*ring).into(),
                (*property).into(),
                &verdict_config(g),
            )?;
            out("check", &CheckReport(v))
        }
        Command::Survey {
            t,
            max_m,
            max_n,
            max_height,
        } => {
            let rows = survey(*t, *max_m, *max_n, *max_height, g)?;
            match g.format {
                Format::Json => report::json("survey", &config, &rows),
                Format::Csv => rows.csv()?,
                Format::Human => rows.human(),
            }
        }
    })
}

fn verdict_config(g: &GlobalArgs) -> VerdictConfig {
    VerdictConfig {
        field: g.field(),
        seed: g.seed,
        trials: g.trials,
        betti_budget: g.budget.unwrap_or(DEFAULT_BETTI_BUDGET),
        ..VerdictConfig::default()
    }
}

mod erased {
    use super::*;

    pub trait Report {
        fn json(&self, name: &str, config: &Config) -> String;
        fn human(&self) -> String;
    }

    pub trait Human {
        fn human(&self) -> String;
    }

    impl<T: Serialize + Human> Report for T {
        fn json(&self, name: &str, config: &Config) -> String {
            report::json(name, config, self)
        }

        fn human(&self) -> String {
            Human::human(self)
        }
    }
}

use erased::Human;

#[derive(Serialize)]
struct IdealReport {
    shape: GridShape,
    height: usize,
    generators: Vec<Vec<[usize; 2]>>,
}

fn ideal(shape: GridShape) -> IdealReport {
    let gens = initial_ideal_generators(shape);
    IdealReport {
        shape,
        height: shape.height(),
        generators: gens.generators.iter().map(|&g| cells(shape, g)).collect(),
    }
}

impl Human for IdealReport {
    fn human(&self) -> String {
        let mut s = format!(
            "in(I_{}) for a {}x{} matrix: {} generators, height {}\n",
            self.shape.t(),
            self.shape.m(),
            self.shape.n(),
            self.generators.len(),
            self.height
        );
        for g in &self.generators {
            let vars: Vec<String> = g.iter().map(|[r, c]| format!("x{r}{c}")).collect();
            let _ = writeln!(s, "  {}", vars.join("*"));
        }
        s
    }
}

#[derive(Serialize)]
struct FacetsReport {
    shape: GridShape,
    dimension: usize,
    facet_count: usize,
    /// Decimal string; the determinant count can exceed 64 bits in principle.
    lgv_count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<Vec<[usize; 2]>>>,
}

fn facets(
    shape: GridShape,
    count_only: bool,
    budget: Option<u64>,
) -> Result<FacetsReport, CliError> {
    let list = enumerate_facets(shape, budget.unwrap_or(DEFAULT_FACET_BUDGET))?;
    Ok(FacetsReport {
        shape,
        dimension: delta_dimension(shape),
        facet_count: list.len(),
        lgv_count: facet_count_lgv(shape).to_string(),
        facets: (!count_only).then(|| list.iter().map(|&f| cells(shape, f)).collect()),
    })
}

impl Human for FacetsReport {
    fn human(&self) -> String {
        let mut s = format!(
            "dimension {}, {} facets (determinant count {})\n",
            self.dimension, self.facet_count, self.lgv_count
        );
        for f in self.facets.iter().flatten() {
            let parts: Vec<String> = f.iter().map(|[r, c]| format!("({r},{c})")).collect();
            let _ = writeln!(s, "  {{{}}}", parts.join(" "));
        }
        s
    }
}

/// Reduced homology dims `H̃_{-1}, H̃_0, ...` of `Δ` restricted to `support`,
/// stopping at the top dimension of the restriction.
fn homology_dims(
    shape: GridShape,
    support: VertexSet,
    field: FieldKind,
    budget: u64,
) -> Result<Vec<usize>, Error> {
    let complex = GridSubcomplex::new(shape, support);
    let top = delta_dimension(shape) as isize;
    let mut dims = Vec::new();
    for k in -1..=top {
        let d = with_field!(field, F => reduced_homology_dim::<F, _>(&complex, k, budget))?;
        dims.push(d);
        let next =
            lefforge::simplicial::FaceSource::faces_of_size(&complex, (k + 2) as usize, budget)?;
        if next.is_empty() {
            break;
        }
    }
    Ok(dims)
}

#[derive(Serialize)]
struct Region {
    a: usize,
    cells: Vec<[usize; 2]>,
    #[serde(skip)]
    text: String,
    /// `dim H̃_k` for `k = -1, 0, ...`.
    reduced_homology: Vec<usize>,
}

#[derive(Serialize)]
struct OmegaReport {
    shape: GridShape,
    field: FieldKind,
    regions: Vec<Region>,
    /// `Σ_a dim H̃_{t-2}(Ω_a)`, present when every region was computed.
    betti_lower_bound: Option<u64>,
}

fn omega(shape: GridShape, only: Option<usize>, g: &GlobalArgs) -> Result<OmegaReport, CliError> {
    let t = shape.t();
    let field = g.field();
    let budget = g.budget.unwrap_or(DEFAULT_FACE_BUDGET);
    let which: Vec<usize> = match only {
        Some(a) => vec![a],
        None => (0..t).collect(),
    };
    let mut regions = Vec::new();
    for a in which {
        let v = vertex_region(shape, a)?;
        regions.push(Region {
            a,
            cells: cells(shape, v),
            text: cell_text(shape, v),
            reduced_homology: homology_dims(shape, v, field, budget)?,
        });
    }
    let betti_lower_bound = only.is_none().then(|| {
        regions
            .iter()
            .map(|r| r.reduced_homology.get(t - 1).copied().unwrap_or(0) as u64)
            .sum()
    });
    Ok(OmegaReport {
        shape,
        field,
        regions,
        betti_lower_bound,
    })
}

impl Human for OmegaReport {
    fn human(&self) -> String {
        let mut s = String::new();
        for r in &self.regions {
            let _ = writeln!(s, "V_{} = {}", r.a, r.text);
            let _ = writeln!(
                s,
                "  reduced homology from degree -1: [{}]",
                join(&r.reduced_homology)
            );
        }
        if let Some(b) = self.betti_lower_bound {
            let h = self.shape.height();
            let _ = writeln!(
                s,
                "beta_{{{},{}}} >= {} over {}",
                h,
                h + self.shape.t() - 1,
                b,
                self.field
            );
        }
        s
    }
}

#[derive(Serialize)]
struct HomologyReport {
    shape: GridShape,
    field: FieldKind,
    support: Vec<[usize; 2]>,
    /// `dim H̃_k` for `k = -1, 0, ...`.
    reduced_homology: Vec<usize>,
}

fn homology(
    shape: GridShape,
    cell_list: Option<&str>,
    region: Option<usize>,
    g: &GlobalArgs,
) -> Result<HomologyReport, CliError> {
    let support = match (cell_list, region) {
        (Some(text), _) => {
            let parsed = report::parse_cells(text).map_err(CliError::Usage)?;
            shape.set_from_cells(&parsed)?
        }
        (None, Some(a)) => vertex_region(shape, a)?,
        (None, None) => shape.all_vertices(),
    };
    let field = g.field();
    Ok(HomologyReport {
        shape,
        field,
        support: cells(shape, support),
        reduced_homology: homology_dims(
            shape,
            support,
            field,
            g.budget.unwrap_or(DEFAULT_FACE_BUDGET),
        )?,
    })
}

impl Human for HomologyReport {
    fn human(&self) -> String {
        let mut s = format!("{} vertices, over {}\n", self.support.len(), self.field);
        for (k, d) in self.reduced_homology.iter().enumerate() {
            let _ = writeln!(s, "  H~_{} = {}", k as isize - 1, d);
        }
        s
    }
}

#[derive(Serialize)]
struct BettiReport {
    shape: GridShape,
    #[serde(flatten)]
    result: BettiResult,
    #[serde(skip)]
    texts: Vec<String>,
    witness_cells: Vec<Vec<[usize; 2]>>,
}

fn betti(
    shape: GridShape,
    i: Option<usize>,
    j: Option<usize>,
    full: bool,
    g: &GlobalArgs,
) -> Result<BettiReport, CliError> {
    let h = shape.height();
    let (i, j) = (i.unwrap_or(h), j.unwrap_or(h + shape.t() - 1));
    let result = if full {
        hochster_betti(
            shape,
            i,
            j,
            g.field(),
            g.budget.unwrap_or(DEFAULT_SUBSET_BUDGET),
        )?
    } else {
        if (i, j) != (h, h + shape.t() - 1) {
            return Err(CliError::Usage(format!(
                "the region bound only covers beta_{{{h},{}}}; pass --full for other degrees",
                h + shape.t() - 1
            )));
        }
        omega_lower_bound(shape, g.field())?
    };
    Ok(BettiReport {
        shape,
        texts: result
            .witnesses
            .iter()
            .map(|w| cell_text(shape, w.subset))
            .collect(),
        witness_cells: result
            .witnesses
            .iter()
            .map(|w| cells(shape, w.subset))
            .collect(),
        result,
    })
}

impl Human for BettiReport {
    fn human(&self) -> String {
        let r = &self.result;
        let rel = match r.kind {
            BettiKind::Exact => "=",
            BettiKind::LowerBound => ">=",
        };
        let mut s = format!(
            "beta_{{{},{}}} {} {} over {} ({} subsets examined)\n",
            r.i, r.j, rel, r.value, r.field, r.subsets_examined
        );
        for (w, text) in r.witnesses.iter().zip(&self.texts) {
            let _ = writeln!(s, "  {} {}", w.dim, text);
        }
        s
    }
}

#[derive(Serialize)]
struct Params {
    t: usize,
    m: usize,
    n: usize,
}

#[derive(Serialize)]
struct CriteriaReport {
    /// Plain parameters, since the arithmetic has no vertex limit.
    shape: Params,
    f_value: String,
    f_nonnegative: bool,
    /// Absent when `t = min(m, n)`.
    certifies_wlp_failure: Option<bool>,
    main_theorem_case: &'static str,
    betti_floor: usize,
}

fn criteria(t: usize, m: usize, n: usize) -> Result<CriteriaReport, CliError> {
    let f = f_value_of(t, m, n)?;
    Ok(CriteriaReport {
        shape: Params { t, m, n },
        f_nonnegative: f >= 0.into(),
        f_value: f.to_string(),
        certifies_wlp_failure: failure_certificate_of(t, m, n)
            .ok()
            .map(|c| c.certifies_wlp_failure),
        main_theorem_case: classify_of(t, m, n)?.name(),
        betti_floor: t,
    })
}

impl Human for CriteriaReport {
    fn human(&self) -> String {
        let cert = match self.certifies_wlp_failure {
            Some(true) => "WLP failure certified",
            Some(false) => "no certificate (F < 0)",
            None => "not applicable (t = min(m, n))",
        };
        format!(
            "F_{}({},{}) = {}\ncertificate: {}\ncase: {}\nbetti floor: {}\n",
            self.shape.t,
            self.shape.m,
            self.shape.n,
            self.f_value,
            cert,
            self.main_theorem_case,
            self.betti_floor
        )
    }
}

#[derive(Serialize)]
#[serde(transparent)]
struct CheckReport(LefschetzVerdict);

impl Human for CheckReport {
    fn human(&self) -> String {
        let v = &self.0;
        let mut s = format!(
            "{} of R/{} for t={} m={} n={}: {}\n",
            v.property.name(),
            match v.ring {
                Ring::Initial => "in(I_t)",
                Ring::Minors => "I_t",
            },
            v.shape.t(),
            v.shape.m(),
            v.shape.n(),
            v.outcome.name()
        );
        for t in &v.trials {
            let status = if t.all_maximal() {
                "maximal rank everywhere".to_string()
            } else {
                let pos: Vec<String> = t
                    .deficient
                    .iter()
                    .map(|(j, s)| format!("(j={j},s={s})"))
                    .collect();
                format!("deficient at {}", pos.join(" "))
            };
            let field = match t.modulus {
                Some(p) => format!("{} (integer draw mod {p})", t.field),
                None => t.field.to_string(),
            };
            let _ = writeln!(
                s,
                "  trial {} over {} seed {}: {}",
                t.index, field, t.seed, status
            );
        }
        if let Some(t) = v.trials.first() {
            let _ = writeln!(s, "  hilbert function: [{}]", join(&t.hilbert_function));
        }
        if let Some(c) = &v.certificate {
            let _ = writeln!(
                s,
                "  certificate: degree {} {:?}, beta >= {} ({:?}), dims {} -> {}, F = {}",
                c.degree,
                c.obstruction,
                c.betti_lower_bound,
                c.betti_source,
                c.dim_j,
                c.dim_j1,
                c.f_value
            );
        }
        s
    }
}

const SKIPPED: &str = "skipped(budget)";

#[derive(Serialize)]
struct SurveyRow {
    t: usize,
    m: usize,
    n: usize,
    f_value: String,
    classify_case: &'static str,
    betti_corner: String,
    betti_kind: &'static str,
    wlp_initial: String,
    slp_initial: String,
    wlp_minors: String,
    slp_minors: String,
    #[serde(skip)]
    wall_time_ms: u128,
}

/// Frozen CSV column order.
const SURVEY_COLUMNS: [&str; 12] = [
    "t",
    "m",
    "n",
    "F_value",
    "classify_case",
    "betti_corner",
    "betti_kind",
    "wlp_initial",
    "slp_initial",
    "wlp_minors",
    "slp_minors",
    "wall_time_ms",
];

#[derive(Serialize)]
#[serde(transparent)]
struct Survey(Vec<SurveyRow>);

fn skip_on_budget<T>(
    r: lefforge::Result<T>,
    f: impl FnOnce(T) -> String,
) -> Result<String, CliError> {
    match r {
        Ok(v) => Ok(f(v)),
        Err(Error::Budget { .. }) => Ok(SKIPPED.to_string()),
        Err(e) => Err(e.into()),
    }
}

fn survey(
    t: usize,
    max_m: usize,
    max_n: usize,
    max_height: usize,
    g: &GlobalArgs,
) -> Result<Survey, CliError> {
    if t < 2 {
        return Err(CliError::Usage("t must be at least 2".into()));
    }
    let cfg = verdict_config(g);
    let mut rows = Vec::new();
    for m in t..=max_m {
        for n in t..=max_n {
            let Ok(shape) = GridShape::new(t, m, n) else {
                continue;
            };
            let start = Instant::now();
            let h = shape.height();
            let (betti_corner, betti_kind) =
                match hochster_betti(shape, h, h + t - 1, FieldKind::Rational, cfg.betti_budget) {
                    Ok(b) => (b.value.to_string(), "exact"),
                    Err(Error::Budget { .. }) => {
                        match omega_lower_bound(shape, FieldKind::Rational) {
                            Ok(b) => (b.value.to_string(), "lower_bound"),
                            Err(Error::Budget { .. }) => (SKIPPED.to_string(), "none"),
                            Err(e) => return Err(e.into()),
                        }
                    }
                    Err(e) => return Err(e.into()),
                };
            let verdict = |ring: Ring, p: Property| -> Result<String, CliError> {
                if h > max_height {
                    return Ok(SKIPPED.to_string());
                }
                skip_on_budget(lefschetz_verdict(shape, ring, p, &cfg), |v| {
                    v.outcome.name().to_string()
                })
            };
            let wlp_initial = verdict(Ring::Initial, Property::Wlp)?;
            let slp_initial = verdict(Ring::Initial, Property::Slp)?;
            let wlp_minors = verdict(Ring::Minors, Property::Wlp)?;
            let slp_minors = verdict(Ring::Minors, Property::Slp)?;
            rows.push(SurveyRow {
                t,
                m,
                n,
                f_value: f_value(shape).to_string(),
                classify_case: classify(shape).name(),
                betti_corner,
                betti_kind,
                wlp_initial,
                slp_initial,
                wlp_minors,
                slp_minors,
                wall_time_ms: start.elapsed().as_millis(),
            });
        }
    }
    Ok(Survey(rows))
}

impl Survey {
    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(SURVEY_COLUMNS).map_err(csv_error)?;
        for r in &self.0 {
            w.write_record([
                r.t.to_string(),
                r.m.to_string(),
                r.n.to_string(),
                r.f_value.clone(),
                r.classify_case.to_string(),
                r.betti_corner.clone(),
                r.betti_kind.to_string(),
                r.wlp_initial.clone(),
                r.slp_initial.clone(),
                r.wlp_minors.clone(),
                r.slp_minors.clone(),
                r.wall_time_ms.to_string(),
            ])
            .map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv fields are ascii"))
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

impl Human for Survey {
    fn human(&self) -> String {
        let mut s = format!(
            "{:>2} {:>2} {:>2} {:>8} {:>16} {:>10} {:>20} {:>20} {:>20} {:>20}\n",
            "t",
            "m",
            "n",
            "F",
            "case",
            "betti",
            "wlp_initial",
            "slp_initial",
            "wlp_minors",
            "slp_minors"
        );
        for r in &self.0 {
            let betti = match r.betti_kind {
                "lower_bound" => format!(">={}", r.betti_corner),
                _ => r.betti_corner.clone(),
            };
            let _ = writeln!(
                s,
                "{:>2} {:>2} {:>2} {:>8} {:>16} {:>10} {:>20} {:>20} {:>20} {:>20}",
                r.t,
                r.m,
                r.n,
                r.f_value,
                r.classify_case,
                betti,
                r.wlp_initial,
                r.slp_initial,
                r.wlp_minors,
                r.slp_minors
            );
        }
        s
    }
}
